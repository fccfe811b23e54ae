"""Exact arithmetic for affine wreath product algebras, Frobenius Hecke
algebras and their higher-level diagrammatic categories, over Q.

Modules, from the bottom up:

``frobenius``  Frobenius superalgebras: dual bases, Nakayama automorphism, builtins.
``polyalg``    Pol_n(A) and P_n(A): signs, teleporters, Demazure operators, pin labels.
``wreath``     PBW normal forms in W_n^aff(A) and H_n^aff(A, z); cyclotomic reduction.
``category``   Shuffle objects, morphisms via Phi-transport, path algebras.
``rewrite``    Independent normal forms of diagram words by local rewriting.
``oracle``     Polynomial representations and relation catalogs.
``verify``     The self-verification suites behind ``frobhecke verify``.
"""

from .category import (
    Gen,
    Morphism,
    PathElement,
    Session,
    canonical_diagram,
    center_membership_path,
    compose,
    cyclotomic_iso,
    path_multiply,
    phi,
    phi_basis,
    shuffles,
)
from .errors import FrobHeckeError, InputError, VerificationError
from .frobenius import (
    FrobeniusAlgebra,
    builtin,
    change_trace,
    dual_basis,
    load_algebra,
    nakayama,
    validate,
)
from .polyalg import (
    PinLabel,
    PolyElement,
    delta,
    demazure,
    exact_divide,
    is_pin_label,
    is_symmetric_central,
    poly_ring,
    superpermute,
    teleporter,
)
from .rewrite import normalize_diagram
from .wreath import (
    WreathElement,
    center_membership,
    cyclotomic_reduce,
    quotient_dim_oracle,
    wreath_ring,
)

__version__ = "0.1.0"

__all__ = [
    "FrobeniusAlgebra", "builtin", "validate", "load_algebra", "dual_basis", "nakayama", "change_trace",
    "PolyElement", "PinLabel", "poly_ring", "superpermute", "teleporter", "demazure", "delta",
    "exact_divide", "is_pin_label", "is_symmetric_central",
    "WreathElement", "wreath_ring", "center_membership", "cyclotomic_reduce", "quotient_dim_oracle",
    "Session", "Gen", "Morphism", "PathElement", "shuffles", "canonical_diagram", "phi", "phi_basis",
    "compose", "path_multiply", "center_membership_path", "cyclotomic_iso", "normalize_diagram",
    "FrobHeckeError", "InputError", "VerificationError",
]
