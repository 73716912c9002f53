"""Exact computations with finite-dimensional n-Lie (Filippov) algebras over Q and GF(p)."""

__version__ = "0.1.0"

from .catalog import abelian, aff, catalog, corpus, corpus_members, cross, heis
from .conjugacy import (
    a_inner_automorphism,
    complement_intersection_zero,
    conjugate_complements,
    primitive_split,
)
from .core import (
    DerivationMatrix,
    NLieAlgebra,
    center,
    centralizer,
    derivation_span,
    direct_sum,
    dot,
    inner_derivation,
    is_abelian_embedded,
    is_ideal,
    is_subalgebra,
    normalizer,
    product_subspaces,
    quotient,
    reduce_fix_element,
    restrict,
    validate_jacobi,
)
from .engel import (
    cartan_subalgebra,
    engel_set,
    intravariance_check,
    is_cartan,
    is_engel_subalgebra,
    minimal_engel_descent,
)
from .errors import DescentError, FilippovError, PreconditionError, UnsupportedError, VerificationError
from .fileio import dumps, load, loads, save
from .lattice import (
    LatticeBudget,
    enumerate_ideals,
    enumerate_subalgebras,
    frattini,
    maximal_subalgebras,
)
from .linalg import FieldSpec, Subspace, fitting_split, image, kernel, rref
from .repmod import LModule, components, split_extension, validate_representation
from .series import (
    all_string_derivations_nilpotent,
    derived_series,
    is_k_nilpotently_embedded,
    is_k_solubly_embedded,
    is_nilpotent,
    is_soluble,
    k_radical,
    lower_central_series,
)
from .theorems import theorem_suite
