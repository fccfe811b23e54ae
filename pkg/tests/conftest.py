import os
from fractions import Fraction

import pytest
import sympy
from hypothesis import HealthCheck, settings

from frobhecke.frobenius import FrobeniusAlgebra, builtin
from frobhecke import _linalg

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.register_profile("thorough", parent=settings.get_profile("default"), max_examples=300)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

BUILTIN_NAMES = ["ground", "clifford_even", "clifford_odd", "grassmann", "group"]
QUANTUM_OK = ["ground", "group"]  # symmetric with an even trace


@pytest.fixture(params=BUILTIN_NAMES)
def algebra(request):
    return builtin(request.param)


def rebased(A: FrobeniusAlgebra, P, trace_twist=None, name="rebased") -> FrobeniusAlgebra:
    """The same algebra in the basis ``b'_i = sum_j P[i][j] b_j``.

    ``P`` must be invertible and map each parity block to itself.  With
    ``trace_twist = u`` the trace becomes ``tr(a u)``.
    """
    m = A.dim
    Pinv = _linalg.inverse([list(map(Fraction, r)) for r in P])
    rows = [tuple(Fraction(x) for x in r) for r in P]
    table = []
    for i in range(m):
        row = []
        for j in range(m):
            prod = A.mul(rows[i], rows[j])
            # coordinates in the new basis: prod = sum_k y_k b'_k, y = prod P^{-1}
            y = [sum(prod[a] * Pinv[a][k] for a in range(m)) for k in range(m)]
            row.append({k: c for k, c in enumerate(y) if c})
        table.append(row)
    unit = [sum(A.unit[a] * Pinv[a][k] for a in range(m)) for k in range(m)]
    u = trace_twist
    trace = []
    for i in range(m):
        b = rows[i] if u is None else A.mul(rows[i], u)
        trace.append(A.tr(b))
    labels = [f"e{i}" for i in range(m)]
    return FrobeniusAlgebra(name, labels, A.parity, table, unit, trace)


SYMS = sympy.symbols("x1 x2 x3")


def to_sympy(f):
    """Ground-ring element as a sympy Laurent polynomial."""
    out = sympy.Integer(0)
    for (_, exps), c in f.terms.items():
        mono = sympy.Integer(1)
        for s, e in zip(SYMS, exps):
            mono *= s ** e
        c = Fraction(c)
        out += sympy.Rational(c.numerator, c.denominator) * mono
    return sympy.expand(out)


# acceptance lines, filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
