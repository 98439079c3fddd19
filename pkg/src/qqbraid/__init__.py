"""Exact verification engine for the quantum queer superalgebra's braided
tensor products and polynomial invariants.

Everything is computed over Q(q) with zero tolerance: the S-matrix calculus
(`supertensor`), the tensor-leg expression evaluator (`texpr`), the four
presented superalgebra families as rewriting systems (`presentations`), the
Hopf actions (`actions`), braidings and structural isomorphisms
(`braidiso`), and the invariant elements of the four-fold tensor
supermodule (`invariants`).  `suites` wires the verification batteries that
the `qqbraid` CLI exposes.
"""

from .qscalar import Scalar, xi_const
from .supertensor import (
    TensorOperator,
    build_D,
    build_J,
    build_R_minus,
    build_R_plus,
    build_S,
    build_S_inv,
    build_S_J,
    build_S_tilde,
    check_ybe,
    embed_legs,
    op_mul,
    phi_exp,
)
from .presentations import make_presentation
from .texpr import check_identity, evaluate, parse, render

__all__ = [
    "Scalar",
    "xi_const",
    "TensorOperator",
    "build_S",
    "build_S_inv",
    "build_S_J",
    "build_J",
    "build_R_plus",
    "build_R_minus",
    "build_D",
    "build_S_tilde",
    "check_ybe",
    "embed_legs",
    "op_mul",
    "phi_exp",
    "make_presentation",
    "parse",
    "render",
    "evaluate",
    "check_identity",
]

__version__ = "0.1.0"
