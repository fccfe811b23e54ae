import json
from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, strategies as st

from frobhecke.errors import (
    BadCayleyTable,
    DegenerateTrace,
    InhomogeneousTrace,
    InputError,
    MalformedAlgebra,
    NoSolution,
    NoUnit,
    NotAssociative,
    ParityViolation,
)
from frobhecke.frobenius import (
    algebra_to_json,
    builtin,
    change_trace,
    dual_basis,
    load_algebra,
    nakayama,
    validate,
)

from conftest import BUILTIN_NAMES, rebased

F = Fraction


def clifford_raw(trace):
    return {
        "name": "cl", "dim": 2, "labels": ["1", "c"], "parity": [0, 1], "unit": ["1", "0"],
        "mult": [[[[0, "1"]], [[1, "1"]]], [[[1, "1"]], [[0, "1"]]]], "trace": trace,
    }


def sympy_dual(A):
    """Dual basis from a sympy inverse of the Gram matrix: tr(b_i^v b_j) = delta."""
    m = A.dim
    G = sympy.Matrix(m, m, lambda i, j: sympy.Rational(A.tr(A.mul_basis(i, j)).numerator,
                                                       A.tr(A.mul_basis(i, j)).denominator))
    # b_i^v = sum_k D[i][k] b_k with sum_k D[i][k] G[k][j] = delta_ij
    D = G.inv()
    return [tuple(F(int(sympy.fraction(D[i, k])[0]), int(sympy.fraction(D[i, k])[1]))
                  for k in range(m)) for i in range(m)]


# builtins

def test_ground_is_trivial():
    A = builtin("ground")
    assert A.dim == 1 and A.eps == 0 and A.is_symmetric
    assert nakayama(A)[0] == ((F(1),),)


def test_clifford_even_nakayama_negates_c():
    A = builtin("clifford_even")
    assert A.eps == 0
    assert A.show(A.psi(A.basis(1))) == "-c"
    assert nakayama(A)[0] == ((1, 0), (0, -1))


def test_grassmann():
    A = builtin("grassmann")
    assert A.labels == ("1", "x") and A.parity == (0, 1)
    assert A.mul_basis(1, 1) == (0, 0)
    assert A.trace == (0, 1) and A.eps == 1 and A.is_symmetric


def test_group_z3():
    A = builtin("group", 3)
    assert A.dim == 3 and A.is_symmetric and A.eps == 0


@pytest.mark.parametrize("name", ["group", "grassmann", "clifford_odd"])
def test_symmetric_builtins_have_identity_nakayama(name):
    A = builtin(name)
    psi, psi_inv = nakayama(A)
    assert psi == psi_inv == tuple(A.basis(i) for i in range(A.dim))


def test_mixed_parity_trace_rejected():
    with pytest.raises(InhomogeneousTrace):
        validate(clifford_raw(["1", "1"]))


# dual bases: frozen values, checked against a sympy inverse of the Gram matrix

DUALS = {
    "clifford_even": ["1", "c"],
    "clifford_odd": ["c", "1"],
    "group": ["e", "g"],
    "grassmann": ["x", "1"],
    "ground": ["1"],
}


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_dual_basis_frozen(name):
    A = builtin(name)
    D = dual_basis(A)
    assert [A.show(v) for v in D] == DUALS[name]
    assert list(D) == sympy_dual(A)


def test_dual_parity_shift(algebra):
    A = algebra
    for i in range(A.dim):
        assert A.parity_of(A.dual(i)) == (A.parity[i] + A.eps) % 2


def test_double_dual_law(algebra):
    A = algebra
    m = A.dim
    dual = [A.dual(i) for i in range(m)]
    # left dual of the dual basis, solved with sympy
    G = sympy.Matrix(m, m, lambda j, k: sympy.nsimplify(str(A.tr(A.mul(A.basis(k), dual[j])))))
    X = G.inv()
    for i in range(m):
        dd = tuple(F(str(X[k, i])) for k in range(m))
        sign = -1 if (A.parity[i] + A.eps * A.parity[i]) % 2 else 1
        assert dd == A.scale(sign, A.psi(A.basis(i), -1))


# change of trace

def test_change_trace_clifford_gives_c():
    A = builtin("clifford_even")
    tc = change_trace(A, [0, 1])
    assert A.show(tc.u) == "c"
    assert tc.eps == 1


def test_change_trace_identity_and_scaling():
    A = builtin("clifford_even")
    assert A.show(change_trace(A, [1, 0]).u) == "1"
    assert A.show(change_trace(A, [2, 0]).u) == "2*1"


def test_change_trace_round_trip(algebra):
    A = algebra
    # twist by an invertible homogeneous element and come back
    u = A.basis(A.dim - 1) if A.name == "clifford_even" else A.unit
    t2 = [A.tr(A.mul(A.basis(i), u)) for i in range(A.dim)]
    tc = change_trace(A, t2)
    assert A.mul(tc.u, tc.u_inv) == A.unit


def test_change_trace_rejects_degenerate():
    A = builtin("grassmann")
    with pytest.raises((DegenerateTrace, NoSolution)):
        change_trace(A, [1, 0])


# malformed algebras

def test_not_associative(tmp_path):
    with pytest.raises(NotAssociative):
        load_algebra("tests/fixtures/corrupted_table.json")


def test_no_unit():
    raw = clifford_raw(["1", "0"])
    raw["unit"] = ["0", "0"]
    with pytest.raises(NoUnit):
        validate(raw)


def test_parity_violation():
    raw = clifford_raw(["1", "0"])
    raw["mult"][1][1] = [[1, "1"]]
    with pytest.raises((ParityViolation, NotAssociative)):
        validate(raw)


def test_degenerate_trace():
    raw = {"name": "dual numbers", "dim": 2, "labels": ["1", "e"], "parity": [0, 0], "unit": ["1", "0"],
           "mult": [[[[0, "1"]], [[1, "1"]]], [[[1, "1"]], []]], "trace": ["1", "0"]}
    with pytest.raises(DegenerateTrace):
        validate(raw)


def test_bad_cayley_table():
    with pytest.raises(BadCayleyTable):
        builtin("group", [[0, 1], [0, 1]])


def test_malformed_shape():
    raw = clifford_raw(["1", "0"])
    raw["mult"] = [[]]
    with pytest.raises(MalformedAlgebra):
        validate(raw)


def test_missing_field():
    raw = clifford_raw(["1", "0"])
    del raw["trace"]
    with pytest.raises(InputError):
        validate(raw)


def test_unknown_builtin():
    with pytest.raises(InputError):
        load_algebra("octonions")


def test_json_round_trip(algebra, tmp_path):
    path = tmp_path / "a.json"
    path.write_text(json.dumps(algebra_to_json(algebra)))
    B = load_algebra(str(path))
    assert (B.table, B.unit, B.trace, B.parity) == (algebra.table, algebra.unit, algebra.trace, algebra.parity)


def test_shipped_data_matches_builtins():
    for name in ["ground", "clifford_even", "clifford_odd", "grassmann"]:
        assert algebra_to_json(load_algebra(f"data/{name}.json")) == algebra_to_json(builtin(name))
    assert algebra_to_json(load_algebra("data/group3.json")) == algebra_to_json(builtin("group", 3))


# properties on rebased algebras

coeff = st.integers(-3, 3)


@st.composite
def rebased_algebras(draw):
    name = draw(st.sampled_from(BUILTIN_NAMES))
    A = builtin(name)
    m = A.dim
    # triangular with a nonzero diagonal, so invertible by construction
    P = [[0] * m for _ in range(m)]
    for i in range(m):
        P[i][i] = draw(st.sampled_from([1, -1, 2, 3]))
        for j in range(i):
            if A.parity[i] == A.parity[j]:
                P[i][j] = draw(coeff)
    twist = None
    if draw(st.booleans()):
        twist = A.scale(F(draw(st.sampled_from([1, 2, -3]))), A.unit)
    return rebased(A, P, twist)


@given(rebased_algebras())
def test_expansion_identity(A):
    m = A.dim
    for i in range(m):
        a = A.basis(i)
        left = A.zero()
        right = A.zero()
        for k in range(m):
            left = A.add(left, A.scale(A.tr(A.mul(A.dual(k), a)), A.basis(k)))
            right = A.add(right, A.scale(A.tr(A.mul(a, A.basis(k))), A.dual(k)))
        assert left == a == right


@given(rebased_algebras())
def test_nakayama_condition_and_multiplicativity(A):
    m = A.dim
    for i, j in product(range(m), repeat=2):
        bi, bj = A.basis(i), A.basis(j)
        sign = -1 if A.parity[i] and A.parity[j] else 1
        assert A.tr(A.mul(bi, bj)) == sign * A.tr(A.mul(bj, A.psi(bi)))
        assert A.psi(A.mul(bi, bj)) == A.mul(A.psi(bi), A.psi(bj))


@given(rebased_algebras())
def test_dual_basis_duality(A):
    for i, j in product(range(A.dim), repeat=2):
        assert A.tr(A.mul(A.dual(i), A.basis(j))) == (1 if i == j else 0)
