from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

import frobhecke.oracle as O
from frobhecke import perms as P
from frobhecke.category import (
    Gen,
    PathElement,
    Session,
    canonical_diagram,
    center_membership_path,
    compose,
    cyclotomic_iso,
    phi,
    phi_basis,
    shuffles,
)
from frobhecke.errors import IllTypedWord, IncompatibleObjects, LevelNotOne, NotPinLabel
from frobhecke.frobenius import builtin
from frobhecke.grammar import format_morphism, parse_diagram, parse_label, parse_morphism, parse_object
from frobhecke.polyalg import QUANTUM, demazure, is_pin_label, uncertified_pin
from frobhecke.rewrite import normalize_diagram
from frobhecke.sampling import random_morphism, random_poly


def session(name="ground", labels=("x",), variant="degenerate", z=0):
    A = builtin(name)
    return Session(A, [is_pin_label(parse_label(t, A, variant)) for t in labels], variant, z)


@pytest.fixture(scope="module")
def S1():
    return session()


@pytest.fixture(scope="module")
def S_green():
    return session(labels=("x^2",))


# objects and basis diagrams

def test_shuffle_counts():
    assert shuffles(1, 1) == [(0, 1), (1, 0)]
    assert len(shuffles(2, 2)) == 6
    assert shuffles(0, 2) == [(1, 2)]
    assert len(shuffles(3, 1)) == 4


def test_canonical_diagrams(S1):
    assert canonical_diagram(S1, (0, 1), (0, 1), (0,)) == ()
    assert canonical_diagram(S1, (1, 0), (0, 1), (0,)) == (Gen("xBR", 0),)
    S0 = session(labels=())
    assert canonical_diagram(S0, (0, 0), (0, 0), (1, 0)) == (Gen("cross", 0),)


def test_phi_of_generators(S1):
    W = S1.wreath(1)
    assert phi(((1, 0), [Gen("xBR", 0)]), S1) == 1
    assert phi(((0, 1), [Gen("xRB", 0)]), S1) == W.x(1)
    assert phi(S1.identity((0, 1))) == 1


def test_phi_basis_examples(S1):
    S0 = session(labels=())
    for w, col in phi_basis(S0, (0, 0), (0, 0)).items():
        assert col[w] == 1
    assert phi_basis(S1, (0, 1), (0, 1))[(0,)][(0,)] == 1
    # red on the far left: every black strand has passed right of the pin
    table = phi_basis(S1, (0, 1), (1, 0))
    assert table[(0,)][(0,)] == S1.pol(1).x(1)


def test_phi_basis_triangular_everywhere():
    S = session(labels=("x", "x+1"))
    for src, tgt in product(S.objects(2), repeat=2):
        table = phi_basis(S, src, tgt)
        for w, col in table.items():
            assert all(P.length(u) <= P.length(w) for u in col)


# composition

def test_double_crossing_is_the_pin(S1):
    down = S1.from_word((1, 0), [Gen("xBR", 0)])
    up = S1.from_word((0, 1), [Gen("xRB", 0)])
    got = compose(up, down)
    assert got.terms == {((0,), (1,), (0,)): 1}
    assert got == normalize_diagram(S1, (1, 0), [Gen("xBR", 0), Gen("xRB", 0)])


def test_compose_with_identity(S1):
    g = S1.from_word((0, 1), [Gen("xRB", 0), Gen("dot", 1)])
    assert compose(g, S1.identity((0, 1))) == g
    assert compose(S1.identity((1, 0)), g) == g


def test_black_double_crossing():
    S0 = session(labels=())
    s = S0.basis_morphism((0, 0), (0, 0), (1, 0))
    assert compose(s, s) == S0.identity((0, 0))


def test_compose_errors(S1):
    f = S1.identity((0, 1))
    g = S1.identity((1, 0))
    with pytest.raises(IncompatibleObjects):
        compose(g, f)
    with pytest.raises(IncompatibleObjects):
        compose(S1.identity((0, 0, 1)), f)
    with pytest.raises(IllTypedWord):
        S1.from_word((0, 1), [Gen("xBR", 0)])


def test_uncertified_labels_are_refused():
    A = builtin("clifford_even")
    with pytest.raises(NotPinLabel):
        Session(A, [uncertified_pin(parse_label("x", A))])


# rewriting

def test_normalize_empty_word(S1):
    assert normalize_diagram(S1, (1, 0), []) == S1.identity((1, 0))


def test_green_relation(S_green):
    S = S_green
    src = (0, 1, 0)
    lhs = parse_diagram("xRB@1; s@2; xBR@1", S.A)
    rhs = parse_diagram("xBR@2; s@1; xRB@2", S.A)
    pol = S.pol(2)
    corr = demazure(1, S.pins[0].place(pol, 1))
    assert corr == pol.x(1) + pol.x(2)
    want = normalize_diagram(S, src, rhs) - S.basis_morphism(src, src, (0, 1), corr)
    assert normalize_diagram(S, src, lhs) == want
    assert S.from_word(src, lhs) == S.from_word(src, rhs) - S.basis_morphism(src, src, (0, 1), corr)


@pytest.mark.parametrize("name,labels,variant,z", [
    ("ground", ("x",), "degenerate", 0),
    ("ground", ("x^2",), "degenerate", 0),
    ("clifford_even", ("x^2+1",), "degenerate", 0),
    ("group", ("x", "x^2"), "degenerate", 0),
    ("grassmann", ("x^2",), "degenerate", 0),
    ("ground", ("X-1",), QUANTUM, 1),
    ("group", ("X+2",), QUANTUM, Fraction(1, 2)),
])
def test_relation_catalog(name, labels, variant, z):
    rep = O.relation_catalog(session(name, labels, variant, z))
    assert rep.ok, rep.failures()
    tags = {r[0] for r in rep.rows}
    assert tags


@settings(max_examples=25)
@given(st.randoms(use_true_random=False), st.sampled_from([("ground", ("x",)), ("group", ("x^2",)),
                                                            ("clifford_even", ("x^2+1",)), ("ground", ("x", "x"))]))
def test_functoriality(rng, cfg):
    S = session(*cfg)
    d = rng.choice([1, 2])
    objs = S.objects(d)
    a, b, c = (rng.choice(objs) for _ in range(3))
    f = random_morphism(S, a, b, rng)
    g = random_morphism(S, b, c, rng)
    assert phi(compose(g, f)) == phi(g) * phi(f)


@settings(max_examples=25)
@given(st.randoms(use_true_random=False))
def test_compose_agrees_with_rewriting(rng):
    S = session(labels=("x^2",))
    objs = S.objects(2)
    a, b, c = (rng.choice(objs) for _ in range(3))
    u, v = rng.choice(P.all_perms(2)), rng.choice(P.all_perms(2))
    f = S.basis_morphism(a, b, u, random_poly(S.pol(2), rng, 1, 1))
    # basis morphisms carry their polynomial above the crossings
    word = list(S.canonical(a, b, u)) + [Gen("poly", -1, f.parts.get(u, S.pol(2).zero()))]
    word += list(S.canonical(b, c, v))
    assert normalize_diagram(S, a, word) == compose(S.basis_morphism(b, c, v), f)


@settings(max_examples=15)
@given(st.randoms(use_true_random=False))
def test_quantum_functoriality(rng):
    S = session(labels=("X-1",), variant=QUANTUM, z=1)
    objs = S.objects(2)
    a, b, c = (rng.choice(objs) for _ in range(3))
    f = random_morphism(S, a, b, rng)
    g = random_morphism(S, b, c, rng)
    assert phi(compose(g, f)) == phi(g) * phi(f)


# morphism syntax

def test_morphism_round_trip(S1):
    m = parse_morphism("[. Q1] -> [Q1 .] : 2*(1) x1 - 1/2*(1)", S1)
    assert parse_morphism(format_morphism(m), S1) == m
    assert parse_object("[Q1 .]") == (1, 0)


# path algebra

def test_orthogonal_idempotents(S1):
    e = {i: PathElement.idempotent(S1, i) for i in S1.objects(1)}
    for i, j in product(e, repeat=2):
        prod = e[i] * e[j]
        assert prod == (e[i] if i == j else PathElement(S1, 1, []))


def test_incompatible_middles(S1):
    D2 = PathElement(S1, 1, [S1.from_word((1, 0), [Gen("xBR", 0)])])
    D1 = PathElement(S1, 1, [S1.from_word((0, 1), [Gen("dot", 0)])])
    assert not (D1 * D2).is_zero()
    assert (D2 * D1).is_zero()


@settings(max_examples=15)
@given(st.randoms(use_true_random=False))
def test_path_product_is_block_matrix_product(rng):
    S = session(labels=("x",))
    d = 2
    objs = S.objects(d)
    U = PathElement(S, d, [random_morphism(S, rng.choice(objs), rng.choice(objs), rng) for _ in range(2)])
    V = PathElement(S, d, [random_morphism(S, rng.choice(objs), rng.choice(objs), rng) for _ in range(2)])
    one = PathElement.identity(S, d)
    assert one * U == U == U * one
    MU, MV, MUV = U.matrix(), V.matrix(), (U * V).matrix()
    W = S.wreath(d)
    for t, s in product(objs, repeat=2):
        want = W.zero()
        for j in objs:
            if (t, j) in MU and (j, s) in MV:
                want = want + MU[(t, j)] * MV[(j, s)]
        assert MUV.get((t, s), W.zero()) == want


@settings(max_examples=15)
@given(st.randoms(use_true_random=False))
def test_corner_is_the_wreath_algebra(rng):
    from frobhecke.sampling import random_wreath
    S = session(labels=("x",))
    omega = (1, 0, 0)
    W = S.wreath(2)
    u, v = random_wreath(W, rng, 2, 1), random_wreath(W, rng, 2, 1)
    mu, mv = S.transport(omega, omega, u), S.transport(omega, omega, v)
    assert phi(mu) == u
    assert compose(mu, mv) == S.transport(omega, omega, u * v)


def test_path_center_examples():
    S = session(labels=("x",))
    objs = S.objects(2)
    pol = S.pol(2)
    e1 = pol.x(1) + pol.x(2)
    assert center_membership_path(PathElement(S, 2, [S.basis_morphism(i, i, (0, 1), e1) for i in objs]))
    assert center_membership_path(PathElement.identity(S, 2))
    assert not center_membership_path(PathElement.idempotent(S, objs[0]))
    assert not center_membership_path(PathElement(S, 2, [S.basis_morphism(i, i, (0, 1), pol.x(1)) for i in objs]))
    # symmetric but not the same on every idempotent
    blocks = [S.basis_morphism(i, i, (0, 1), e1 if k else e1 * 2) for k, i in enumerate(objs)]
    assert not center_membership_path(PathElement(S, 2, blocks))


def test_path_center_pin_products():
    S = session("clifford_even", ("x^2+1",))
    pol = S.pol(2)
    Q = S.pins[0]
    f = Q.place(pol, 1) * Q.place(pol, 2)
    assert center_membership_path(PathElement(S, 2, [S.basis_morphism(i, i, (0, 1), f) for i in S.objects(2)]))


# cyclotomic isomorphism

@pytest.mark.parametrize("label,d,expected", [("x", 1, 1), ("x^2", 1, 2), ("x", 2, 2)])
def test_cyclotomic_iso(label, d, expected):
    rep = cyclotomic_iso(session(labels=(label,)), d, bound=3)
    assert rep.ok, rep.details
    assert rep.dim_level_zero == rep.dim_level_one == expected


def test_cyclotomic_iso_quantum():
    rep = cyclotomic_iso(session(labels=("X-1",), variant=QUANTUM, z=1), 1, bound=2)
    assert rep.ok and rep.dim_expected == 1


def test_black_first_idempotent_dies():
    S = session(labels=("x",))
    from frobhecke.wreath import cyclotomic_reduce
    # 1_{go Q} factors as xRB then xBR back through omega; its image vanishes
    e = phi(S.from_word((1, 0), [Gen("xBR", 0), Gen("xRB", 0)]))
    assert cyclotomic_reduce(e, S.pins[0]).is_zero()


def test_cyclotomic_iso_needs_level_one():
    with pytest.raises(LevelNotOne):
        cyclotomic_iso(session(labels=("x", "x")), 1)
