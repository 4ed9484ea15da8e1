"""grouplab: exhaustive finite permutation-group computation.

Desk-scale groups are fully enumerated; subgroup lattices, characteristic
subgroups, permutability predicates, and a statement-verification harness
are built on top of a small set of product/closure kernels (compiled when
available, numpy otherwise).
"""

from .kernels import BACKEND
from .permcore import (
    ElementSubset,
    FiniteGroup,
    Permutation,
    SubgroupHandle,
    closure,
    compose,
    conjugate_subgroup,
    direct_product,
    permutes,
    set_product,
    subgroup_from_generators,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ElementSubset",
    "FiniteGroup",
    "Permutation",
    "SubgroupHandle",
    "closure",
    "compose",
    "conjugate_subgroup",
    "direct_product",
    "permutes",
    "set_product",
    "subgroup_from_generators",
    "__version__",
]
