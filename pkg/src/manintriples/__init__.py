"""Manin triples of reductive Lie algebras from generalized Belavin-Drinfeld data."""

from .bddata import (GeneralizedBDData, Skeleton, complete_skeleton, diagonal_setting,
                     enumerate_skeletons,
                     identity_pairing, make_data, sigma_sets, validate)
from .forms import COMPLEX, REAL, InvariantForm, make_form, split_plus_minus
from .liealg import ChevalleyAlgebra, bracket, build_algebra, killing_form
from .linalg import Subspace
from .realforms import (make_context, normalize_twist, realify, reality_conditions)
from .scalars import Scalar, format_scalar, parse_scalar
from .triples import (ManinTriple, WeylTwist, construct_triple, descent_chain, extract_bd,
                      verify_triple)

__all__ = [
    "COMPLEX", "REAL", "ChevalleyAlgebra", "GeneralizedBDData", "InvariantForm",
    "ManinTriple", "Scalar", "Skeleton", "Subspace", "WeylTwist", "bracket",
    "build_algebra", "complete_skeleton", "construct_triple", "descent_chain",
    "diagonal_setting", "enumerate_skeletons", "extract_bd", "format_scalar", "identity_pairing",
    "killing_form", "make_context", "make_data", "make_form", "normalize_twist",
    "parse_scalar", "realify", "reality_conditions", "sigma_sets", "split_plus_minus",
    "validate", "verify_triple",
]
