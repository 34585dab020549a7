"""Representations of biHecke monoids: modules, Cartan and decomposition matrices."""

from .borel import decomposition_matrix, decomposition_matrix_linear
from .cartan import GradedMatrix, cartan_m1, cartan_mw0, graded_cartan, quiver_m1, radical_filtration
from .modules import SimpleModule, TranslationModule, dim_simple, dim_simple_linear, simple_modules, translation_module
from .tables import MatrixTable, Table1Row, cartan_table, decomposition_table, qcartan_table, table1_row

__all__ = [
    "GradedMatrix",
    "MatrixTable",
    "SimpleModule",
    "Table1Row",
    "TranslationModule",
    "cartan_m1",
    "cartan_mw0",
    "cartan_table",
    "decomposition_matrix",
    "decomposition_matrix_linear",
    "decomposition_table",
    "dim_simple",
    "dim_simple_linear",
    "graded_cartan",
    "qcartan_table",
    "quiver_m1",
    "radical_filtration",
    "simple_modules",
    "table1_row",
    "translation_module",
]
