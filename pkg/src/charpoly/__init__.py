"""Exact computation of normalized-character polynomials of the symmetric
group, coloured top factorizations, and the bicoloured plane-tree bijection
connecting them.

All arithmetic is exact (arbitrary-precision integers and rationals); the
polynomial inner loops run on a compiled kernel when available, with a pure
Python fallback selected at import (see :mod:`charpoly.kernel`).
"""

from .kernel import BACKEND as KERNEL_BACKEND
from .perm import (
    Partition,
    Permutation,
    all_permutations,
    class_representative,
    compose,
    format_cycles,
    full_cycle,
    identity,
    parse_cycles,
    partitions_of,
)
from .colours import (
    ColouredPermutation,
    colour_counts,
    coloured_permutations,
    coloured_product,
    induced_colouring,
)
from .charlib import NormalizedValue, character, dimension, normalized_character
from .polyring import (
    MultiPoly,
    PolyContext,
    PowerSeries,
    compositional_inverse,
    expand_at_infinity,
    pq_context,
)
from .stanley import (
    Shape,
    class_polynomial,
    cycle_polynomial,
    functional_equation_residual,
    shape_character,
    top_part,
    top_series,
)
from .factor import (
    conjecture_sum,
    cycle_subadditivity_holds,
    decompose_top_product,
    is_top_pair,
    top_factorization_series,
    top_factorization_sum,
)
from .trees import (
    PlaneTree,
    factorization_to_tree,
    planted_series,
    propagate_colours,
    tree_series,
    tree_to_factorization,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "Partition",
    "Permutation",
    "all_permutations",
    "class_representative",
    "compose",
    "format_cycles",
    "full_cycle",
    "identity",
    "parse_cycles",
    "partitions_of",
    "ColouredPermutation",
    "colour_counts",
    "coloured_permutations",
    "coloured_product",
    "induced_colouring",
    "NormalizedValue",
    "character",
    "dimension",
    "normalized_character",
    "MultiPoly",
    "PolyContext",
    "PowerSeries",
    "compositional_inverse",
    "expand_at_infinity",
    "pq_context",
    "Shape",
    "class_polynomial",
    "cycle_polynomial",
    "functional_equation_residual",
    "shape_character",
    "top_part",
    "top_series",
    "conjecture_sum",
    "cycle_subadditivity_holds",
    "decompose_top_product",
    "is_top_pair",
    "top_factorization_series",
    "top_factorization_sum",
    "PlaneTree",
    "factorization_to_tree",
    "planted_series",
    "propagate_colours",
    "tree_series",
    "tree_to_factorization",
    "__version__",
]
