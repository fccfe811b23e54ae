"""Polynomial representations and relation catalogs used as oracles.

``P`` lets W_n^aff(A) act on Pol_n(A): polynomials multiply on the left and
``sigma_i`` acts by ``s_i - d_i``.  The divided difference used here is
recomputed from its values on generators and the twisted Leibniz rule,
factor by factor, so it shares no code path with the multiplication engine.
``P'`` does the same for diagrams of the higher-level category, reading
the generators of a canonical diagram one at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

from . import perms as P
from .category import BLACK, Gen, Morphism, Session, black_index
from .errors import VariantMismatch
from .polyalg import PolyElement, PolyRing
from .wreath import WreathElement, WreathRing

__all__ = [
    "leibniz_demazure",
    "poly_rep_apply",
    "higher_rep_apply",
    "product_oracle_check",
    "OracleResult",
    "Relation",
    "RelationReport",
    "wreath_relations",
    "category_relations",
    "wreath_relation_catalog",
    "relation_catalog",
]


# Demazure operators from generators

def _blocks(ring: PolyRing, key) -> list[PolyElement]:
    """A monomial ``a x^alpha`` as the product ``a * x_1^a1 * ... * x_n^an``."""
    word, exps = key
    return [ring.monomial(word, (0,) * ring.n)] + [ring.x(j + 1, e) for j, e in enumerate(exps)]


_POW_CACHE: dict = {}


def _dem_power(ring: PolyRing, i0: int, j: int, e: int) -> PolyElement:
    """``d(x_j^e)`` by the twisted Leibniz rule, one factor at a time."""
    ck = (id(ring), i0, j, e)
    hit = _POW_CACHE.get(ck)
    if hit is not None and hit.ring is ring:
        return hit
    if e == 0 or j not in (i0, i0 + 1):
        out = ring.zero()
    else:
        gen = ring.tele(i0, i0 + 1) if j == i0 else -ring.tele(i0 + 1, i0)
        other = i0 + 1 if j == i0 else i0
        out = gen * ring.x(j + 1, e - 1) + ring.x(other + 1) * _dem_power(ring, i0, j, e - 1)
    _POW_CACHE[ck] = out
    return out


def leibniz_demazure(i0: int, f: PolyElement) -> PolyElement:
    """``d_{i0+1}(f)`` by expanding each monomial factor by factor."""
    ring = f.ring
    if ring.quantum:
        raise VariantMismatch("the polynomial oracle covers the degenerate variant")
    acc: dict = {}
    for key, c in f.terms.items():
        for k, v in _dem_monomial(ring, i0, key).terms.items():
            acc[k] = acc.get(k, 0) + c * v
    return ring.element(acc)


_DEM_CACHE: dict = {}


def _dem_monomial(ring: PolyRing, i0: int, key) -> PolyElement:
    ck = (id(ring), i0, key)
    hit = _DEM_CACHE.get(ck)
    if hit is not None and hit.ring is ring:
        return hit
    blocks = _blocks(ring, key)
    exps = key[1]
    out = ring.zero()
    # tokens are killed by d, and only the blocks of strands i0, i0+1 contribute
    for j in (i0, i0 + 1):
        b = j + 1
        if not exps[j]:
            continue
        left = ring.swap(i0, blocks[0])
        for jj in range(j):
            k = i0 + 1 if jj == i0 else jj
            left = left * ring.x(k + 1, exps[jj])
        right = ring.one()
        for h in blocks[b + 1:]:
            right = right * h
        out = out + left * _dem_power(ring, i0, j, exps[j]) * right
    _DEM_CACHE[ck] = out
    return out


_SIGMA_CACHE: dict = {}


def _sigma(i0: int, v: PolyElement) -> PolyElement:
    """``s_i(v) - d_i(v)``, memoised monomial by monomial."""
    ring = v.ring
    acc: dict = {}
    for key, c in v.terms.items():
        ck = (id(ring), i0, key)
        img = _SIGMA_CACHE.get(ck)
        if img is None or img.ring is not ring:
            mono = ring.element({key: 1})
            img = _SIGMA_CACHE[ck] = ring.swap(i0, mono) - leibniz_demazure(i0, mono)
        for k, a in img.terms.items():
            acc[k] = acc.get(k, 0) + c * a
    return ring.element(acc)


def poly_rep_apply(u: WreathElement, v: PolyElement) -> PolyElement:
    """Action of ``u`` in W_n^aff(A) on ``v`` in Pol_n(A).

    >>> from frobhecke.frobenius import builtin
    >>> from frobhecke.wreath import wreath_ring
    >>> W = wreath_ring(builtin("ground"), 2)
    >>> str(poly_rep_apply(W.crossing(1), W.pol.x(1)))
    '-1*(1|1) + 1*(1|1) x2'
    """
    if u.ring.quantum or v.ring.quantum:
        raise VariantMismatch("the polynomial representation is only defined for the degenerate variant")
    if u.ring.pol is not v.ring:
        raise VariantMismatch("element and test vector live on different rings")
    out = v.ring.zero()
    for w, f in u.parts.items():
        g = v
        for i0 in reversed(P.reduced_word(w)):
            g = _sigma(i0, g)
        out = out + f * g
    return out


def higher_rep_apply(f: Morphism, v: PolyElement) -> PolyElement:
    """``P'`` evaluated on the canonical diagrams of ``f``, generator by generator."""
    S = f.session
    if S.quantum:
        raise VariantMismatch("the polynomial representation is only defined for the degenerate variant")
    pol = S.pol(f.d)
    if v.ring is not pol:
        raise VariantMismatch("test vector lives on a different ring")
    out = pol.zero()
    for w, coeff in f.parts.items():
        g = v
        cur = f.src
        for gen in S.canonical(f.src, f.tgt, w):
            g = _apply_gen(S, cur, gen, g)
            cur = S.apply(cur, gen)
        out = out + coeff * g
    return out


def _apply_gen(S: Session, cur, gen: Gen, g: PolyElement) -> PolyElement:
    pol = g.ring
    if gen.kind == "xBR":
        return g
    if gen.kind == "xRB":
        return S.pins[cur[gen.slot + 1] - 1].place(pol, black_index(cur, gen.slot)) * g
    if gen.kind == "cross":
        return _sigma(black_index(cur, gen.slot) - 1, g)
    if gen.kind == "dot":
        return pol.x(black_index(cur, gen.slot)) * g
    if gen.kind == "tok":
        return pol.token(black_index(cur, gen.slot), gen.arg) * g
    if gen.kind == "poly":
        return gen.arg * g
    raise VariantMismatch(f"{gen.kind} has no degenerate polynomial action")


@dataclass
class OracleResult:
    ok: bool
    checked: int
    counterexample: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _dot_degree(u: WreathElement) -> int:
    return max((max(e) for _, e, _ in u.terms), default=0)


def test_vectors(ring: PolyRing, N: int) -> list[PolyElement]:
    exps = tuple(N * (k + 1) for k in range(ring.n))
    return [ring.monomial(word, exps) for word in product(range(ring.A.dim), repeat=ring.n)]


def product_oracle_check(u: WreathElement, v: WreathElement, N: int | None = None,
                         product_fn: Callable[[WreathElement, WreathElement], WreathElement] | None = None
                         ) -> OracleResult:
    """Does ``P(uv) = P(u) P(v)`` on the vectors ``b x_1^N x_2^{2N} ...``?

    ``product_fn`` replaces the engine product (used for negative controls).
    """
    uv = product_fn(u, v) if product_fn else u * v
    if N is None:
        N = max(_dot_degree(u), _dot_degree(v), _dot_degree(uv)) + 1
    vecs = test_vectors(u.ring.pol, N)
    for t in vecs:
        lhs = poly_rep_apply(uv, t)
        rhs = poly_rep_apply(u, poly_rep_apply(v, t))
        if lhs != rhs:
            diff = lhs - rhs
            key, c = sorted(diff.terms.items())[0]
            return OracleResult(False, len(vecs), f"on {t}: term {key} off by {c}")
    return OracleResult(True, len(vecs))


# relation catalogs

@dataclass
class Relation:
    """``lhs = rhs`` with each side a list of ``(coeff, generator word)``."""

    tag: str
    src: tuple
    lhs: list
    rhs: list
    note: str = ""


@dataclass
class RelationReport:
    rows: list[tuple[str, str, bool, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(a and b for _, _, a, b in self.rows)

    def failures(self) -> list[str]:
        return [f"{tag} {note}".strip() for tag, note, a, b in self.rows if not (a and b)]

    def lines(self) -> list[str]:
        out = []
        for tag, note, a, b in self.rows:
            status = "pass" if a and b else "FAIL"
            out.append(f"{status}  {tag:<14} {note}  [phi:{'ok' if a else 'x'} rewrite:{'ok' if b else 'x'}]")
        return out


def _poly(f: PolyElement) -> Gen:
    return Gen("poly", -1, f)


def _pad(obj: tuple, level: int, used: int) -> tuple:
    return obj + tuple(range(used + 1, level + 1))


def category_relations(S: Session) -> list[Relation]:
    """Every displayed relation of the session's category, instantiated on
    small objects (spare red strands are parked on the right)."""
    A = S.A
    q = S.quantum
    L = S.level
    B2 = _pad((BLACK, BLACK), L, 0)
    B3 = _pad((BLACK,) * 3, L, 0)
    B1 = _pad((BLACK,), L, 0)
    pol1, pol2 = S.pol(1), S.pol(2)
    X = "cross"
    rels: list[Relation] = []
    for a in range(A.dim):
        for b in range(A.dim):
            ba = A.mul(A.basis(b), A.basis(a))
            rels.append(Relation("tokrel1", B1, [(1, [Gen("tok", 0, a), Gen("tok", 0, b)])],
                                 [(1, [_poly(pol1.token(1, ba))])], f"{A.labels[a]},{A.labels[b]}"))
    rels.append(Relation("tokunit", B1, [(1, [_poly(pol1.token(1, A.unit))])], [(1, [])]))
    for a in range(A.dim):
        lab = A.labels[a]
        rels.append(Relation("tokencross", B2, [(1, [Gen("tok", 0, a), Gen(X, 0)])],
                             [(1, [Gen(X, 0), Gen("tok", 1, a)])], lab))
        rels.append(Relation("tokencross", B2, [(1, [Gen("tok", 1, a), Gen(X, 0)])],
                             [(1, [Gen(X, 0), Gen("tok", 0, a)])], lab))
        if q:
            rels.append(Relation("verma_2", B1, [(1, [Gen("tok", 0, a), Gen("dot", 0)])],
                                 [(1, [Gen("dot", 0), Gen("tok", 0, a)])], lab))
        else:
            sign = -1 if (A.eps and A.parity[a]) else 1
            psi_a = pol1.token(1, A.psi_power(1)[a])
            rels.append(Relation("dottoken", B1, [(1, [Gen("dot", 0), Gen("tok", 0, a)])],
                                 [(sign, [_poly(psi_a), Gen("dot", 0)])], lab))
    if not q:
        sgn = -1 if A.eps else 1
        rels.append(Relation("dotdot", B2, [(1, [Gen("dot", 1), Gen("dot", 0)])],
                             [(sgn, [Gen("dot", 0), Gen("dot", 1)])]))
        rels.append(Relation("crosssq", B2, [(1, [Gen(X, 0), Gen(X, 0)])], [(1, [])]))
        rels.append(Relation("dotcross", B2, [(1, [Gen("dot", 0), Gen(X, 0)])],
                             [(1, [Gen(X, 0), Gen("dot", 1)]), (-1, [_poly(pol2.tele(0, 1))])]))
        rels.append(Relation("dotcross", B2, [(1, [Gen(X, 0), Gen("dot", 0)])],
                             [(1, [Gen("dot", 1), Gen(X, 0)]), (-1, [_poly(pol2.tele(1, 0))])]))
    else:
        rels.append(Relation("dotinv", B1, [(1, [Gen("dot", 0), Gen("idot", 0)])], [(1, [])]))
        rels.append(Relation("dotinv", B1, [(1, [Gen("idot", 0), Gen("dot", 0)])], [(1, [])]))
        rels.append(Relation("braid", B2, [(1, [Gen(X, 0), Gen("cross-", 0)])], [(1, [])]))
        rels.append(Relation("braid", B2, [(1, [Gen("cross-", 0), Gen(X, 0)])], [(1, [])]))
        t = pol2.tele(0, 1)
        rels.append(Relation("preskein", B2, [(1, [Gen(X, 0)]), (-1, [Gen("cross-", 0)])],
                             [(S.z, [_poly(t)])]))
        rels.append(Relation("saturn4", B2, [(1, [Gen(X, 0), Gen(X, 0)])],
                             [(S.z, [Gen(X, 0), _poly(t)]), (1, [])]))
        rels.append(Relation("TXT", B2, [(1, [Gen(X, 0), Gen("dot", 0), Gen(X, 0)])],
                             [(1, [Gen("dot", 1)])]))
        rels.append(Relation("TX-commute", B3, [(1, [Gen(X, 0), Gen("dot", 2)])],
                             [(1, [Gen("dot", 2), Gen(X, 0)])]))
    rels.append(Relation("braid3", B3, [(1, [Gen(X, 0), Gen(X, 1), Gen(X, 0)])],
                         [(1, [Gen(X, 1), Gen(X, 0), Gen(X, 1)])]))
    if not q:
        rels.append(Relation("dotfar", B3, [(1, [Gen(X, 0), Gen("dot", 2)])],
                             [(1, [Gen("dot", 2), Gen(X, 0)])]))
    if L == 0:
        return rels
    # one red strand (the first), other reds parked on the right
    BR = _pad((BLACK, 1), L, 1)
    RB = _pad((1, BLACK), L, 1)
    RBB = _pad((1, BLACK, BLACK), L, 1)
    BBR = _pad((BLACK, BLACK, 1), L, 1)
    BRB = _pad((BLACK, 1, BLACK), L, 1)
    Q = S.pins[0]
    for a in range(A.dim):
        lab = A.labels[a]
        rels.append(Relation("hw1", BR, [(1, [Gen("tok", 0, a), Gen("xRB", 0)])],
                             [(1, [Gen("xRB", 0), Gen("tok", 1, a)])], lab))
        rels.append(Relation("hw1", RB, [(1, [Gen("tok", 1, a), Gen("xBR", 0)])],
                             [(1, [Gen("xBR", 0), Gen("tok", 0, a)])], lab))
    dots = ["dot", "idot"] if q else ["dot"]
    for dk in dots:
        rels.append(Relation("hw2", BR, [(1, [Gen(dk, 0), Gen("xRB", 0)])],
                             [(1, [Gen("xRB", 0), Gen(dk, 1)])], dk))
        rels.append(Relation("hw2", RB, [(1, [Gen(dk, 1), Gen("xBR", 0)])],
                             [(1, [Gen("xBR", 0), Gen(dk, 0)])], dk))
    rels.append(Relation("hw3", BR, [(1, [Gen("xRB", 0), Gen("xBR", 0)])],
                         [(1, [_poly(Q.place(pol1, 1))])]))
    rels.append(Relation("hw4", RB, [(1, [Gen("xBR", 0), Gen("xRB", 0)])],
                         [(1, [_poly(Q.place(pol1, 1))])]))
    rels.append(Relation("hw5", RBB, [(1, [Gen("xBR", 0), Gen("xBR", 1), Gen(X, 0)])],
                         [(1, [Gen(X, 1), Gen("xBR", 0), Gen("xBR", 1)])]))
    rels.append(Relation("hw6", BBR, [(1, [Gen(X, 0), Gen("xRB", 1), Gen("xRB", 0)])],
                         [(1, [Gen("xRB", 1), Gen("xRB", 0), Gen(X, 1)])]))
    Q1 = Q.place(pol2, 1)
    if q:
        corr = pol2.delta0(0, Q1) * S.z
        tag = "green1"
    else:
        corr = -pol2.demazure0(0, Q1)
        tag = "green"
    rels.append(Relation(tag, BRB, [(1, [Gen("xRB", 0), Gen(X, 1), Gen("xBR", 0)])],
                         [(1, [Gen("xBR", 1), Gen(X, 0), Gen("xRB", 1)]), (1, [_poly(corr)])]))
    if not q:
        # the same correction written with the pin on the second strand
        alt = pol2.demazure0(0, Q.place(pol2, 2))
        rels.append(Relation("green-alt", BRB, [(1, [Gen("xRB", 0), Gen(X, 1), Gen("xBR", 0)])],
                             [(1, [Gen("xBR", 1), Gen(X, 0), Gen("xRB", 1)]), (1, [_poly(alt)])]))
    return rels


def _side(S: Session, src, terms, route) -> Morphism | None:
    total = None
    for c, gens in terms:
        m = route(src, gens) * Fraction(c)
        total = m if total is None else total + m
    return total


def _equal(a: Morphism | None, b: Morphism | None) -> bool:
    if a is None or a.is_zero():
        return b is None or b.is_zero()
    if b is None:
        return a.is_zero()
    return a.tgt == b.tgt and a == b


def relation_catalog(S: Session) -> RelationReport:
    """Evaluate every relation through Phi-transport and through rewriting."""
    from .rewrite import normalize_diagram
    report = RelationReport()
    for rel in category_relations(S):
        ok = []
        for route in (S.from_word, lambda src, gens: normalize_diagram(S, src, gens)):
            lhs = _side(S, rel.src, rel.lhs, route)
            rhs = _side(S, rel.src, rel.rhs, route) if rel.rhs else None
            ok.append(_equal(lhs, rhs))
        report.rows.append((rel.tag, rel.note, ok[0], ok[1]))
    return report


def wreath_relations(W: WreathRing) -> list[tuple[str, str, WreathElement, WreathElement]]:
    """Defining relations of W_n^aff(A) or H_n^aff(A, z) as ``(tag, note, lhs, rhs)``."""
    A, n, pol = W.A, W.n, W.pol
    one = W.one()
    out = []
    toks = [(i, a) for i in range(1, n + 1) for a in range(A.dim)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                sgn = -1 if (A.eps and not W.quantum) else 1
                out.append(("F1_1", f"x{i} x{j}", W.x(i) * W.x(j), W.x(j) * W.x(i) * sgn))
    for i, a in toks:
        tok = W.token(i, a)
        if W.quantum:
            out.append(("verma_2", f"{A.labels[a]}@{i}", tok * W.x(i), W.x(i) * tok))
            out.append(("inverse", f"X{i}", W.x(i) * W.x(i, -1), one))
        else:
            sign = -1 if (A.eps and A.parity[a]) else 1
            psi = W.from_poly(pol.token(i, A.psi_power(1)[a]))
            out.append(("F1_2", f"{A.labels[a]}@{i}", tok * W.x(i), W.x(i) * psi * sign))
    for k in range(1, n):
        s = W.crossing(k)
        for i, a in toks:
            j = k + 1 if i == k else k if i == k + 1 else i
            tag = "saturn5" if W.quantum else "mars4"
            out.append((tag, f"s{k} {A.labels[a]}@{i}", s * W.token(i, a), W.token(j, a) * s))
        t = W.from_poly(pol.tele(k - 1, k))
        if W.quantum:
            out.append(("saturn4", f"T{k}", s * s, t * s * W.z + one))
            out.append(("TXT", f"T{k}", s * W.x(k) * s, W.x(k + 1)))
            out.append(("inverse", f"T{k}", s * W.crossing_inv(k), one))
        else:
            out.append(("mars3", f"s{k}", s * s, one))
            out.append(("ruler4", f"s{k}", s * W.x(k), W.x(k + 1) * s - t))
        for j in range(1, n + 1):
            if j not in (k, k + 1):
                out.append(("TX-commute" if W.quantum else "ruler3", f"s{k} x{j}", W.x(j) * s, s * W.x(j)))
        for m in range(1, n):
            if abs(m - k) > 1:
                out.append(("saturn1" if W.quantum else "mars1", f"s{k} s{m}",
                            s * W.crossing(m), W.crossing(m) * s))
            if m == k + 1:
                u = W.crossing(m)
                out.append(("saturn2" if W.quantum else "mars2", f"s{k} s{m}", s * u * s, u * s * u))
    return out


def wreath_relation_catalog(W: WreathRing) -> RelationReport:
    report = RelationReport()
    for tag, note, lhs, rhs in wreath_relations(W):
        ok = (lhs - rhs).is_zero()
        report.rows.append((tag, note, ok, ok))
    return report
