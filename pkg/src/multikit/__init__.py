"""Signed-multiplicity multiset algebra for msets and sampled functions."""

from .errors import AlignmentError, ExprSyntaxError, MultikitError
from .mfunction import Field2D, Grid1D, Grid2D, IndexMap, MFunction, from_vector, integral, sample_builtin
from .mset import Mset, from_elements
from .similarity import common_product, cosine, jaccard, jaccard_multi, mproduct, sup_product

__version__ = "0.1.0"

__all__ = [
    "AlignmentError", "ExprSyntaxError", "MultikitError",
    "Field2D", "Grid1D", "Grid2D", "IndexMap", "MFunction", "from_vector", "integral", "sample_builtin",
    "Mset", "from_elements",
    "common_product", "cosine", "jaccard", "jaccard_multi", "mproduct", "sup_product",
]
