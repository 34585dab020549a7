"""Exact computations with biHecke monoids of finite Coxeter groups."""

from .coxeter import CoxeterGroup, GroupDescriptor, build_group, parse_descriptor

__all__ = ["CoxeterGroup", "GroupDescriptor", "build_group", "parse_descriptor"]
__version__ = "0.1.0"
