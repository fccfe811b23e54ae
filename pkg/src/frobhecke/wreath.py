"""Affine wreath product algebras W_n^aff(A) and affine Frobenius Hecke
algebras H_n^aff(A, z) in PBW normal form ``sum a x^alpha sigma_w``.

An element is stored as ``{w: f_w}`` with ``f_w`` in Pol_n(A) (resp. P_n(A)).
Products are computed by pushing crossings leftwards through polynomials:

* degenerate: ``sigma_i f = s_i(f) sigma_i - d_i(f)`` and ``sigma_i^2 = 1``;
* quantum: ``T_i f = s_i(f) T_i + z Delta_i(f)`` and
  ``T_i^2 = z t_{i,i+1} T_i + 1``.

>>> from frobhecke.frobenius import builtin
>>> W = wreath_ring(builtin("ground"), 2)
>>> str(W.crossing(1) * W.x(1))
'-1*(1|1) + 1*(1|1) x2 s1'
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from . import _linalg
from . import perms as P
from .errors import (
    IndexOutOfRange,
    InternalInconsistency,
    InverseDotInDegenerate,
    NonTermination,
    NotMonic,
    VariantMismatch,
)
from .frobenius import FrobeniusAlgebra
from .polyalg import DEGENERATE, QUANTUM, PinLabel, PolyElement, PolyRing, poly_ring

__all__ = [
    "WreathRing",
    "WreathElement",
    "wreath_ring",
    "multiply",
    "mul_generator_right",
    "center_membership",
    "cyclotomic_reduce",
    "quotient_dim_oracle",
    "ideal_contains",
    "BoundTooSmall",
]

Perm = P.Perm
ZERO = Fraction(0)


class BoundTooSmall(UserWarning):
    """The truncated quotient dimension has not stabilised."""


class WreathRing:
    def __init__(self, algebra: FrobeniusAlgebra, n: int, variant: str = DEGENERATE, z=0):
        self.pol: PolyRing = poly_ring(algebra, n, variant)
        self.A = algebra
        self.n = n
        self.variant = variant
        self.z = Fraction(z) if variant == QUANTUM else ZERO
        self.e = P.identity(n)

    @property
    def quantum(self) -> bool:
        return self.variant == QUANTUM

    def __repr__(self) -> str:
        z = f", z={self.z}" if self.quantum else ""
        return f"WreathRing({self.A.name}, n={self.n}, {self.variant}{z})"

    # constructors

    def element(self, parts: Mapping[Perm, PolyElement]) -> "WreathElement":
        return WreathElement(self, parts)

    def from_terms(self, terms: Iterable[tuple[tuple, Fraction]]) -> "WreathElement":
        """Build from ``((word, exps, perm), coeff)`` pairs."""
        parts: dict[Perm, dict] = {}
        for (word, exps, w), c in terms:
            parts.setdefault(tuple(w), {})[(tuple(word), tuple(exps))] = Fraction(c)
        return WreathElement(self, {w: self.pol.element(t) for w, t in parts.items()})

    def zero(self) -> "WreathElement":
        return WreathElement(self, {})

    def one(self) -> "WreathElement":
        return self.from_poly(self.pol.one())

    def from_poly(self, f: PolyElement, w: Perm | None = None) -> "WreathElement":
        return WreathElement(self, {w or self.e: f})

    def token(self, i: int, a) -> "WreathElement":
        return self.from_poly(self.pol.token(i, a))

    def x(self, i: int, power: int = 1) -> "WreathElement":
        return self.from_poly(self.pol.x(i, power))

    def perm(self, w: Perm) -> "WreathElement":
        return self.from_poly(self.pol.one(), tuple(w))

    def crossing(self, i: int) -> "WreathElement":
        """sigma_i (degenerate) or T_i (quantum), 1-based."""
        if not 1 <= i < self.n:
            raise IndexOutOfRange(f"crossing {i} outside 1..{self.n - 1}")
        return self.perm(P.s(i - 1, self.n))

    def crossing_inv(self, i: int) -> "WreathElement":
        """sigma_i^{-1} = sigma_i, or T_i^{-1} = T_i - z t_{i,i+1}."""
        c = self.crossing(i)
        if not self.quantum:
            return c
        return c - self.from_poly(self.pol.tele(i - 1, i) * self.z)

    def generator(self, gen) -> "WreathElement":
        """``("token", i, a)``, ``("dot", i, power)``, ``("cross", i)`` or
        ``("cross_inv", i)``."""
        kind = gen[0]
        if kind == "token":
            return self.token(gen[1], gen[2])
        if kind == "dot":
            p = gen[2] if len(gen) > 2 else 1
            if p < 0 and not self.quantum:
                raise InverseDotInDegenerate("inverse dots exist only in the quantum variant")
            return self.x(gen[1], p)
        if kind == "cross":
            return self.crossing(gen[1])
        if kind == "cross_inv":
            return self.crossing_inv(gen[1])
        raise ValueError(f"unknown generator {gen!r}")

    # products

    def lmul_poly(self, f: PolyElement, u: "WreathElement") -> "WreathElement":
        return WreathElement(self, {w: f * g for w, g in u.parts.items()})

    def lmul_crossing(self, i0: int, u: "WreathElement") -> "WreathElement":
        """sigma_{i+1} u (resp. T_{i+1} u) for 0-based i."""
        pol = self.pol
        out: dict[Perm, PolyElement] = {}

        def add(w, f):
            if not f.is_zero():
                out[w] = out[w] + f if w in out else f

        for w, f in u.parts.items():
            sf = pol.swap(i0, f)
            sw = P.times_s_left(i0, w)
            add(sw, sf)
            if self.quantum:
                if P.left_descent(w, i0):
                    add(w, sf * pol.tele(i0, i0 + 1) * self.z)
                add(w, pol.delta0(i0, f) * self.z)
            else:
                add(w, -pol.demazure0(i0, f))
        return WreathElement(self, out)

    def lmul_perm(self, w: Perm, u: "WreathElement") -> "WreathElement":
        for i0 in reversed(P.reduced_word(w)):
            u = self.lmul_crossing(i0, u)
        return u

    def multiply(self, u: "WreathElement", v: "WreathElement") -> "WreathElement":
        _check(u.ring, v.ring)
        out = self.zero()
        for w, f in u.parts.items():
            out = out + self.lmul_poly(f, self.lmul_perm(w, v))
        return out


@lru_cache(maxsize=None)
def wreath_ring(algebra: FrobeniusAlgebra, n: int, variant: str = DEGENERATE, z=0) -> WreathRing:
    return WreathRing(algebra, n, variant, z)


def _check(r1: WreathRing, r2: WreathRing) -> None:
    if r1 is r2:
        return
    if r1.variant != r2.variant or r1.z != r2.z:
        raise VariantMismatch("elements belong to different variants or z")
    if r1.n != r2.n or r1.A is not r2.A:
        raise VariantMismatch("elements belong to different algebras")


class WreathElement:
    """Immutable element ``sum_w f_w sigma_w``."""

    __slots__ = ("ring", "parts")

    def __init__(self, ring: WreathRing, parts: Mapping[Perm, PolyElement]):
        self.ring = ring
        self.parts = {tuple(w): f for w, f in parts.items() if not f.is_zero()}

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def terms(self) -> dict[tuple, Fraction]:
        return {(word, exps, w): c for w, f in self.parts.items() for (word, exps), c in f.terms.items()}

    def is_zero(self) -> bool:
        return not self.parts

    def poly_part(self, w: Perm | None = None) -> PolyElement:
        return self.parts.get(w or self.ring.e, self.ring.pol.zero())

    def _coerce(self, other) -> "WreathElement":
        if isinstance(other, WreathElement):
            _check(self.ring, other.ring)
            return other
        if isinstance(other, PolyElement):
            return self.ring.from_poly(other)
        return self.ring.one() * Fraction(other)

    def __add__(self, other) -> "WreathElement":
        other = self._coerce(other)
        out = dict(self.parts)
        for w, f in other.parts.items():
            out[w] = out[w] + f if w in out else f
        return WreathElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "WreathElement":
        return WreathElement(self.ring, {w: -f for w, f in self.parts.items()})

    def __sub__(self, other) -> "WreathElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "WreathElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "WreathElement":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return WreathElement(self.ring, {w: f * c for w, f in self.parts.items()})
        if isinstance(other, (WreathElement, PolyElement)):
            return self.ring.multiply(self, self._coerce(other))
        return NotImplemented

    def __rmul__(self, other) -> "WreathElement":
        if isinstance(other, (int, Fraction)):
            return self * other
        if isinstance(other, PolyElement):
            return self.ring.lmul_poly(other, self)
        return NotImplemented

    def __pow__(self, k: int) -> "WreathElement":
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, PolyElement)):
            other = self._coerce(other)
        if not isinstance(other, WreathElement):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def max_degree(self) -> int:
        return max((sum(abs(e) for e in exps) for _, exps, _ in self.terms), default=0)

    def __str__(self) -> str:
        from .grammar import format_wreath
        return format_wreath(self)

    def __repr__(self) -> str:
        return f"WreathElement({self})"


def multiply(u: WreathElement, v: WreathElement) -> WreathElement:
    return u * v


def mul_generator_right(u: WreathElement, gen) -> WreathElement:
    """``u * g`` for a generator tuple (see :meth:`WreathRing.generator`)."""
    return u * u.ring.generator(gen)


def center_membership(u: WreathElement) -> bool:
    from .polyalg import is_symmetric_central
    if any(w != u.ring.e for w in u.parts):
        return False
    return is_symmetric_central(u.poly_part())


# cyclotomic quotients

class _Cyclo:
    """Congruences ``x_j^l = S_j`` (and ``X_j^{-1} = N_j``) modulo the ideal (Q_1)."""

    def __init__(self, ring: WreathRing, Q: PinLabel):
        if Q.element.ring.A is not ring.A or Q.element.ring.variant != ring.variant:
            raise VariantMismatch("pin label belongs to a different algebra or variant")
        coeffs = Q.coefficients()
        self.l = Q.top
        if coeffs[Q.top] != ring.A.unit or Q.bottom < 0 or self.l < 1:
            raise NotMonic("cyclotomic reduction needs a polynomial Q with leading coefficient 1")
        self.ring = ring
        self.Q = Q
        pol = ring.pol
        n = ring.n
        self.pins = [Q.place(pol, j) for j in range(1, n + 1)]
        lower = [ring.from_poly(q - pol.x(j + 1, self.l)) for j, q in enumerate(self.pins)]
        self.S: list[WreathElement] = []
        R = ring.zero()
        for j in range(n):
            if j > 0:
                R = self._next(j - 1, R)
            self.S.append(R - lower[j])
            R = self.S[j] + lower[j]
        self.N: list[WreathElement] = []
        if ring.quantum:
            q0 = ring.A.inverse(coeffs.get(0, ring.A.zero()))
            if q0 is None:
                raise NotMonic("quantum cyclotomic reduction needs an invertible constant term")
            rest = pol.zero()
            for e, vec in coeffs.items():
                if e > 0:
                    rest = rest + pol.token(1, vec) * pol.x(1, e - 1)
            N = ring.from_poly(-(pol.token(1, q0) * rest))
            self.N.append(N)
            for j in range(1, n):
                Ti = ring.crossing_inv(j)
                N = Ti * N * Ti
                self.N.append(N)

    def _next(self, j0: int, R: WreathElement) -> WreathElement:
        ring = self.ring
        pol = ring.pol
        T = ring.crossing(j0 + 1)
        if not ring.quantum:
            return T * R * T + ring.from_poly(pol.demazure0(j0, self.pins[j0])) * T
        Tinv = ring.crossing_inv(j0 + 1)
        R1 = T * R * Tinv - ring.from_poly(pol.delta0(j0, self.pins[j0]) * ring.z) * Tinv
        top = ring.from_terms((k, c) for k, c in R1.terms.items() if k[1][j0 + 1] >= self.l)
        expect = ring.from_poly(pol.tele(j0, j0 + 1) * pol.x(j0 + 2, self.l) * ring.z) * Tinv
        if top != expect:
            raise InternalInconsistency("unexpected leading term in the quantum cyclotomic recursion")
        lower = ring.from_poly(self.pins[j0 + 1] - pol.x(j0 + 2, self.l))
        S = (R1 - top - lower) * T * T
        return S + lower

    def reduce(self, u: WreathElement) -> WreathElement:
        ring = self.ring
        pol = ring.pol
        l = self.l
        done: dict = {}
        todo = dict(u.terms)
        for _ in range(1_000_000):
            if not todo:
                return ring.from_terms(done.items())
            key = max(todo, key=lambda k: tuple(reversed(k[1])))
            c = todo.pop(key)
            if not c:
                continue
            word, exps, w = key
            neg = next((j for j in range(ring.n) if exps[j] < 0), None)
            big = next((j for j in reversed(range(ring.n)) if exps[j] >= l), None)
            if neg is None and big is None:
                done[key] = done.get(key, ZERO) + c
                if not done[key]:
                    del done[key]
                continue
            if neg is not None:
                j, step, sub = neg, -1, self.N[neg]
            else:
                j, step, sub = big, l, self.S[big]
            e = list(exps)
            e[j] -= step
            head = pol.monomial(word, tuple(e))
            # sign of x^exps relative to x^e x_j^step
            prod = head * pol.x(j + 1, step)
            sg = prod.terms.get((word, exps))
            if sg is None or len(prod.terms) != 1:
                raise InternalInconsistency(f"dot split of {key} is not a monomial")
            repl = ring.lmul_poly(head, sub) * ring.perm(w) * (Fraction(c) / sg)
            for k, v in repl.terms.items():
                todo[k] = todo.get(k, ZERO) + v
        raise NonTermination("cyclotomic reduction did not terminate")


def cyclotomic_reduce(u: WreathElement, Q: PinLabel) -> WreathElement:
    """Representative of ``u + (Q_1)`` with every exponent in ``[0, l)``.

    >>> from frobhecke.frobenius import builtin
    >>> from frobhecke.polyalg import is_pin_label, poly_ring
    >>> A = builtin("ground")
    >>> Q = is_pin_label(poly_ring(A, 1).x(1) ** 2)
    >>> cyclotomic_reduce(wreath_ring(A, 1).x(1, 3), Q).is_zero()
    True
    """
    return _cyclo(u.ring, Q).reduce(u)


_CYCLO_CACHE: dict = {}


def _cyclo(ring: WreathRing, Q: PinLabel) -> _Cyclo:
    key = (id(ring), Q.element)
    hit = _CYCLO_CACHE.get(key)
    if hit is None or hit.ring is not ring:
        hit = _CYCLO_CACHE[key] = _Cyclo(ring, Q)
    return hit


# brute-force quotient dimensions

def _window_basis(ring: WreathRing, bound: int) -> list[tuple]:
    from itertools import product
    n, m = ring.n, ring.A.dim
    lo = -(bound - 1) if ring.quantum else 0
    exps = [e for e in product(range(lo, bound), repeat=n) if sum(abs(a) for a in e) < bound]
    words = list(product(range(m), repeat=n))
    return [(w, e, p) for p in P.all_perms(n) for e in exps for w in words]


def _ideal_rows(ring: WreathRing, Q: PinLabel, bound: int):
    basis = _window_basis(ring, bound)
    index = {k: i for i, k in enumerate(basis)}
    gen = ring.from_poly(Q.place(ring.pol, 1))
    elems = [ring.from_terms([(k, 1)]) for k in basis]
    left = [p * gen for p in elems]
    rows = []
    for pg in left:
        for q in elems:
            prod = pg * q
            row = {}
            for k, c in prod.terms.items():
                i = index.get(k)
                if i is None:
                    break
                row[i] = c
            else:
                if row:
                    rows.append(row)
    return basis, index, rows


def quotient_dim_oracle(ring: WreathRing, Q: PinLabel, bound: int, warn: bool = True) -> int:
    """dim span{basis elements of degree < bound} / (window part of the ideal (Q_1))."""
    def dim_at(b):
        basis, _, rows = _ideal_rows(ring, Q, b)
        return len(basis) - _linalg.sparse_rank(rows, len(basis))

    d = dim_at(bound)
    if warn and dim_at(bound + 1) != d:
        warnings.warn(f"quotient dimension not stable at bound {bound}", BoundTooSmall, stacklevel=2)
    return d


def ideal_contains(u: WreathElement, Q: PinLabel, bound: int) -> bool:
    """Is ``u`` in the span of the window generators ``p Q_1 q``?"""
    ring = u.ring
    basis, index, rows = _ideal_rows(ring, Q, bound)
    vec = {}
    for k, c in u.terms.items():
        if k not in index:
            return False
        vec[index[k]] = c
    if not vec:
        return True
    r = _linalg.sparse_rank(rows, len(basis))
    return _linalg.sparse_rank(rows + [vec], len(basis)) == r
