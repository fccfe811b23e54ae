"""The polynomial superalgebras Pol_n(A) and P_n(A).

Elements are finite sums of basis monomials ``a x^alpha`` where ``a`` is a
word of basis indices of A (one letter per strand) and ``alpha`` an exponent
vector.  Tokens sit to the left of all dots.  In the degenerate variant dots
have the trace parity ``eps`` and pass tokens through the inverse Nakayama
twist; in the quantum variant (``A`` symmetric, ``eps = 0``) dots are
invertible, even and commute with tokens.

Strand indices in the public functions are 1-based, as in the diagrams.

>>> from frobhecke.frobenius import builtin
>>> R = poly_ring(builtin("ground"), 2)
>>> x1, x2 = R.x(1), R.x(2)
>>> demazure(1, x1 * x1) == x1 + x2
True
>>> demazure(1, x1 * x2).is_zero()
True
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Mapping

from . import _linalg
from .errors import (
    IndexOutOfRange,
    InverseDotInDegenerate,
    MixedVariant,
    NotDivisible,
    NotPinLabel,
    RegularityInconclusive,
    WrongVariant,
)
from .frobenius import FrobeniusAlgebra, Vector
from .perms import Perm

__all__ = [
    "DEGENERATE",
    "QUANTUM",
    "PolyRing",
    "PolyElement",
    "poly_ring",
    "PinLabel",
    "multiply",
    "superpermute",
    "teleporter",
    "demazure",
    "delta",
    "is_pin_label",
    "uncertified_pin",
    "exact_divide",
    "divide_by_pin",
    "is_symmetric_central",
]

DEGENERATE = "degenerate"
QUANTUM = "quantum"

Word = tuple[int, ...]
Exps = tuple[int, ...]
Key = tuple[Word, Exps]
ZERO = 0
ONE = 1


def _q(c):
    """Integral rationals are kept as ``int``; it is much faster."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _clean(terms: dict) -> dict:
    return {k: _q(c) for k, c in terms.items() if c}


def _sign(bit: int) -> int:
    return -1 if bit & 1 else 1


class PolyRing:
    """Pol_n(A) (degenerate) or P_n(A) (quantum) for a fixed algebra and n.

    The ring owns the caches for token products, Nakayama twists,
    teleporters and Demazure values, so build one per (A, n, variant) and
    reuse it.
    """

    def __init__(self, algebra: FrobeniusAlgebra, n: int, variant: str = DEGENERATE):
        if variant not in (DEGENERATE, QUANTUM):
            raise WrongVariant(f"unknown variant {variant!r}")
        if n < 0:
            raise IndexOutOfRange("strand count must be nonnegative")
        if variant == QUANTUM and (algebra.eps != 0 or not algebra.is_symmetric):
            raise WrongVariant("the quantum variant needs a symmetric algebra with an even trace")
        self.A = algebra
        self.n = n
        self.variant = variant
        self.eps = algebra.eps if variant == DEGENERATE else 0
        self.twisted = variant == DEGENERATE and not algebra.is_symmetric
        self._tok_cache: dict[tuple[Word, Word], dict[Word, Fraction]] = {}
        self._twist_cache: dict[tuple[Word, Exps], dict[Word, Fraction]] = {}
        self._mul_cache: dict = {}
        self._tele: dict[tuple[int, int], PolyElement] = {}
        self._dem: dict[tuple[int, Exps], PolyElement] = {}
        self._unit_words = self._expand_letters([algebra.unit] * n)

    @property
    def quantum(self) -> bool:
        return self.variant == QUANTUM

    def __repr__(self) -> str:
        return f"PolyRing({self.A.name}, n={self.n}, {self.variant})"

    # construction

    def element(self, terms: Mapping[Key, Fraction] | Iterable[tuple[Key, Fraction]]) -> "PolyElement":
        return PolyElement(self, terms)

    def zero(self) -> "PolyElement":
        return PolyElement(self, {})

    def one(self) -> "PolyElement":
        z = (0,) * self.n
        return PolyElement(self, {(w, z): c for w, c in self._unit_words.items()})

    def scalar(self, c) -> "PolyElement":
        return self.one() * Fraction(c)

    def _expand_letters(self, vecs: list[Vector]) -> dict[Word, Fraction]:
        out: dict[Word, Fraction] = {}
        supports = [[(k, v) for k, v in enumerate(vec) if v] for vec in vecs]
        for combo in product(*supports):
            word = tuple(k for k, _ in combo)
            c = ONE
            for _, v in combo:
                c *= v
            out[word] = out.get(word, ZERO) + c
        return _clean(out)

    def token(self, i: int, a: Vector | int | str) -> "PolyElement":
        """The token ``a`` on strand ``i`` (1-based); ``a`` may be a vector,
        a basis index or a basis label."""
        self._check_strand(i)
        vec = self._vector(a)
        vecs = [self.A.unit] * self.n
        vecs[i - 1] = vec
        z = (0,) * self.n
        return PolyElement(self, {(w, z): c for w, c in self._expand_letters(vecs).items()})

    def tokens(self, letters: Iterable[Vector | int | str]) -> "PolyElement":
        """The pure tensor ``a_1 (x) ... (x) a_n``."""
        vecs = [self._vector(a) for a in letters]
        if len(vecs) != self.n:
            raise IndexOutOfRange(f"need {self.n} tensor factors, got {len(vecs)}")
        z = (0,) * self.n
        return PolyElement(self, {(w, z): c for w, c in self._expand_letters(vecs).items()})

    def _vector(self, a) -> Vector:
        if isinstance(a, str):
            try:
                a = self.A.labels.index(a)
            except ValueError:
                from .errors import UnknownLabel
                raise UnknownLabel(f"no basis element labelled {a!r}") from None
        if isinstance(a, int):
            return self.A.basis(a)
        return tuple(Fraction(v) for v in a)

    def x(self, i: int, power: int = 1) -> "PolyElement":
        """The dot ``x_i^power`` (``X_i^power`` in the quantum variant)."""
        self._check_strand(i)
        if power < 0 and not self.quantum:
            raise InverseDotInDegenerate("inverse dots exist only in the quantum variant")
        e = tuple(power if k == i - 1 else 0 for k in range(self.n))
        return PolyElement(self, {(w, e): c for w, c in self._unit_words.items()})

    def monomial(self, word: Word, exps: Exps, coeff=1) -> "PolyElement":
        return PolyElement(self, {(tuple(word), tuple(exps)): Fraction(coeff)})

    def _check_strand(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexOutOfRange(f"strand {i} outside 1..{self.n}")

    # parity

    def word_parity(self, word: Word) -> int:
        p = self.A.parity
        return sum(p[k] for k in word) & 1

    def term_parity(self, key: Key) -> int:
        word, exps = key
        return (self.word_parity(word) + self.eps * sum(exps)) & 1

    # multiplication

    def token_product(self, a: Word, b: Word) -> dict[Word, Fraction]:
        """(a_1 (x) ... (x) a_n)(b_1 (x) ... (x) b_n) with the Koszul sign."""
        key = (a, b)
        hit = self._tok_cache.get(key)
        if hit is not None:
            return hit
        p = self.A.parity
        bits = 0
        seen_b = 0
        for i in range(self.n):
            # b_j (j < i) passes a_i
            bits += p[a[i]] * seen_b
            seen_b += p[b[i]]
        sgn = _sign(bits)
        cells = [self.A.table[a[i]][b[i]] for i in range(self.n)]
        out: dict[Word, Fraction] = {}
        for combo in product(*cells):
            word = tuple(k for k, _ in combo)
            c = sgn
            for _, v in combo:
                c *= v
            out[word] = out.get(word, ZERO) + c
        out = _clean(out)
        self._tok_cache[key] = out
        return out

    def twist(self, exps: Exps, b: Word) -> dict[Word, Fraction]:
        """``x^exps b = sum c * b' x^exps``: returns {b': c}."""
        if not self.twisted and not self.eps:
            return {b: ONE}
        key = (exps, b)
        hit = self._twist_cache.get(key)
        if hit is not None:
            return hit
        sgn = _sign(self.eps * sum(exps) * self.word_parity(b))
        if self.twisted:
            vecs = [self.A.psi_power(-exps[i])[b[i]] for i in range(self.n)]
            words = self._expand_letters(vecs)
        else:
            words = {b: ONE}
        out = {w: _q(c * sgn) for w, c in words.items()}
        self._twist_cache[key] = out
        return out

    def mul_terms(self, ka: Key, kb: Key) -> dict[Key, Fraction]:
        a, al = ka
        b, be = kb
        n = self.n
        if self.eps:
            bits = 0
            acc = 0
            for i in range(n):
                # x_j^{be_j} (j < i) passes x_i^{al_i}
                bits += al[i] * acc
                acc += be[i]
            dsgn = _sign(bits)
        else:
            dsgn = 1
        exps = tuple(al[i] + be[i] for i in range(n))
        out: dict[Key, Fraction] = {}
        if any(al):
            tw = self.twist(al, b)
        else:
            tw = {b: ONE}
        for b2, c2 in tw.items():
            for w, c3 in self.token_product(a, b2).items():
                k = (w, exps)
                out[k] = out.get(k, ZERO) + c2 * c3 * dsgn
        return _clean(out)

    def multiply(self, f: "PolyElement", g: "PolyElement") -> "PolyElement":
        if f.ring is not g.ring:
            _check_compatible(f.ring, g.ring)
        out: dict[Key, Fraction] = {}
        cache = self._mul_cache
        if len(cache) > 500_000:
            cache.clear()
        for ka, ca in f.terms.items():
            for kb, cb in g.terms.items():
                prod = cache.get((ka, kb))
                if prod is None:
                    prod = cache[(ka, kb)] = self.mul_terms(ka, kb)
                cab = ca * cb
                for k, c in prod.items():
                    out[k] = out.get(k, ZERO) + cab * c
        return PolyElement._trusted(self, out)

    # symmetric group

    def permute_key(self, w: Perm, key: Key) -> tuple[Key, int]:
        word, exps = key
        n = self.n
        new_word = [0] * n
        new_exps = [0] * n
        for k in range(n):
            new_word[w[k]] = word[k]
            new_exps[w[k]] = exps[k]
        p = self.A.parity
        bits = 0
        for k in range(n):
            for l in range(k + 1, n):
                if w[k] > w[l]:
                    bits += p[word[k]] * p[word[l]] + self.eps * exps[k] * exps[l]
        return (tuple(new_word), tuple(new_exps)), _sign(bits)

    def superpermute(self, w: Perm, f: "PolyElement") -> "PolyElement":
        out: dict[Key, Fraction] = {}
        for key, c in f.terms.items():
            k2, sg = self.permute_key(w, key)
            out[k2] = out.get(k2, ZERO) + (c if sg > 0 else -c)
        return PolyElement._trusted(self, out)

    def swap(self, i0: int, f: "PolyElement") -> "PolyElement":
        """s_i for 0-based i."""
        w = list(range(self.n))
        w[i0], w[i0 + 1] = w[i0 + 1], w[i0]
        return self.superpermute(tuple(w), f)

    # teleporters and Demazure operators (0-based internals)

    def tele(self, i0: int, j0: int) -> "PolyElement":
        key = (i0, j0)
        if key not in self._tele:
            A = self.A
            acc = self.zero()
            for b in range(A.dim):
                term = self.token(i0 + 1, b) * self.token(j0 + 1, A.dual(b))
                acc = acc + term * _sign(self.eps * A.parity[b])
            self._tele[key] = acc
        return self._tele[key]

    def _dots(self, exps: Exps) -> "PolyElement":
        return PolyElement(self, {(w, exps): c for w, c in self._unit_words.items()})

    def dem_dots(self, i0: int, exps: Exps) -> "PolyElement":
        """d_i(x^exps) by the twisted Leibniz rule along x_1^{a_1} ... x_n^{a_n}."""
        key = (i0, exps)
        hit = self._dem.get(key)
        if hit is not None:
            return hit
        j = next((k for k, e in enumerate(exps) if e > 0), None)
        if j is None:
            res = self.zero()
        else:
            rest = tuple(e - (k == j) for k, e in enumerate(exps))
            res = self.zero()
            if j == i0:
                res = self.tele(i0, i0 + 1) * self._dots(rest)
            elif j == i0 + 1:
                res = -(self.tele(i0 + 1, i0) * self._dots(rest))
            sj = i0 + 1 if j == i0 else i0 if j == i0 + 1 else j
            tail = self.dem_dots(i0, rest)
            if not tail.is_zero():
                res = res + self._dots(tuple(int(k == sj) for k in range(self.n))) * tail
        self._dem[key] = res
        return res

    def demazure0(self, i0: int, f: "PolyElement") -> "PolyElement":
        out = self.zero()
        sw = list(range(self.n))
        sw[i0], sw[i0 + 1] = sw[i0 + 1], sw[i0]
        sw = tuple(sw)
        for (word, exps), c in f.terms.items():
            if exps[i0] == 0 and exps[i0 + 1] == 0:
                continue
            (w2, _), sg = self.permute_key(sw, (word, (0,) * self.n))
            tok = PolyElement(self, {(w2, (0,) * self.n): c * sg})
            out = out + tok * self.dem_dots(i0, exps)
        return out

    def delta0(self, i0: int, f: "PolyElement") -> "PolyElement":
        t = self.tele(i0, i0 + 1)
        acc: dict[Key, Fraction] = {}
        for (word, exps), c in f.terms.items():
            a, b = exps[i0], exps[i0 + 1]
            if a == b:
                continue
            quot: dict[Exps, Fraction] = {}
            if b > a:
                for k in range(b - a):
                    e = list(exps)
                    e[i0], e[i0 + 1] = a + k, b - 1 - k + 1
                    quot[tuple(e)] = c
            else:
                for k in range(a - b):
                    e = list(exps)
                    e[i0], e[i0 + 1] = b + k, a - 1 - k + 1
                    quot[tuple(e)] = -c
            tw = t * PolyElement(self, {(word, (0,) * self.n): ONE})
            for (w2, _), c2 in tw.terms.items():
                for e, c3 in quot.items():
                    key = (w2, e)
                    acc[key] = acc.get(key, ZERO) + c2 * c3
        return PolyElement(self, acc)


@lru_cache(maxsize=None)
def poly_ring(algebra: FrobeniusAlgebra, n: int, variant: str = DEGENERATE) -> PolyRing:
    """Shared ring for (algebra, n, variant), so that caches are reused."""
    return PolyRing(algebra, n, variant)


def _check_compatible(r1: PolyRing, r2: PolyRing) -> None:
    if r1.variant != r2.variant:
        raise MixedVariant("cannot combine degenerate and quantum elements")
    if r1.n != r2.n or r1.A is not r2.A:
        raise MixedVariant("elements live in different polynomial algebras")


class PolyElement:
    """An element of Pol_n(A) or P_n(A); immutable."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms):
        self.ring = ring
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Key, Fraction] = {}
        for (w, e), c in items:
            c = _q(Fraction(c))
            if c:
                if ring.variant == DEGENERATE and any(x < 0 for x in e):
                    raise InverseDotInDegenerate("negative exponent in the degenerate variant")
                k = (tuple(w), tuple(e))
                clean[k] = clean.get(k, ZERO) + c
        self.terms = _clean(clean)

    @classmethod
    def _trusted(cls, ring: PolyRing, terms: dict) -> "PolyElement":
        """Build from well-formed keys and rational coefficients (internal)."""
        self = object.__new__(cls)
        self.ring = ring
        self.terms = _clean(terms)
        return self

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def variant(self) -> str:
        return self.ring.variant

    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other) -> "PolyElement":
        if isinstance(other, PolyElement):
            if other.ring is not self.ring:
                _check_compatible(self.ring, other.ring)
            return other
        return self.ring.scalar(other)

    def __add__(self, other) -> "PolyElement":
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return PolyElement._trusted(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "PolyElement":
        return PolyElement._trusted(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "PolyElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PolyElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "PolyElement":
        if isinstance(other, PolyElement):
            return self.ring.multiply(self, other)
        if isinstance(other, (int, Fraction)):
            c = _q(Fraction(other))
            return PolyElement._trusted(self.ring, {k: v * c for k, v in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other) -> "PolyElement":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "PolyElement":
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.scalar(other)
        if not isinstance(other, PolyElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __iter__(self) -> Iterator[tuple[Key, Fraction]]:
        return iter(sorted(self.terms.items()))

    def parts_by_parity(self) -> dict[int, "PolyElement"]:
        out: dict[int, dict[Key, Fraction]] = {}
        for k, c in self.terms.items():
            out.setdefault(self.ring.term_parity(k), {})[k] = c
        return {p: PolyElement(self.ring, t) for p, t in out.items()}

    def parity(self) -> int | None:
        ps = {self.ring.term_parity(k) for k in self.terms}
        return ps.pop() if len(ps) == 1 else (0 if not ps else None)

    def degree(self, strand: int | None = None) -> int:
        """Largest exponent sum (or exponent on one 1-based strand)."""
        if not self.terms:
            return 0
        if strand is None:
            return max(sum(e) for _, e in self.terms)
        return max(e[strand - 1] for _, e in self.terms)

    def __str__(self) -> str:
        from .grammar import format_poly
        return format_poly(self)

    def __repr__(self) -> str:
        return f"PolyElement({self})"


def multiply(f: PolyElement, g: PolyElement) -> PolyElement:
    return f * g


def superpermute(w: Perm, f: PolyElement) -> PolyElement:
    """Apply ``w`` (0-based one-line notation) with Koszul signs."""
    if sorted(w) != list(range(f.n)):
        raise IndexOutOfRange(f"{w} is not a permutation of {f.n} strands")
    return f.ring.superpermute(tuple(w), f)


def teleporter(ring: PolyRing, i: int, j: int) -> PolyElement:
    """``t_{i,j} = sum_b (-1)^{eps |b|} b_i b_j^v`` (1-based, i != j)."""
    if i == j or not (1 <= i <= ring.n and 1 <= j <= ring.n):
        raise IndexOutOfRange(f"teleporter needs distinct strands in 1..{ring.n}")
    return ring.tele(i - 1, j - 1)


def demazure(i: int, f: PolyElement) -> PolyElement:
    ring = f.ring
    if ring.quantum:
        raise WrongVariant("demazure acts on the degenerate variant; use delta")
    if not 1 <= i < ring.n:
        raise IndexOutOfRange(f"demazure index {i} outside 1..{ring.n - 1}")
    return ring.demazure0(i - 1, f)


def delta(i: int, f: PolyElement) -> PolyElement:
    ring = f.ring
    if not ring.quantum:
        raise WrongVariant("delta acts on the quantum variant; use demazure")
    if not 1 <= i < ring.n:
        raise IndexOutOfRange(f"delta index {i} outside 1..{ring.n - 1}")
    return ring.delta0(i - 1, f)


# pin labels

@dataclass(frozen=True)
class PinLabel:
    """An even, central, regular element of Pol_1(A) or P_1(A)."""

    element: PolyElement
    certified: bool
    top: int
    bottom: int

    def coefficients(self) -> dict[int, Vector]:
        """Exponent -> coefficient vector in A."""
        A = self.element.ring.A
        out: dict[int, list[Fraction]] = {}
        for (word, exps), c in self.element.terms.items():
            out.setdefault(exps[0], [ZERO] * A.dim)[word[0]] += c
        return {e: tuple(v) for e, v in out.items()}

    def is_monic(self) -> bool:
        return self.coefficients()[self.top] == self.element.ring.A.unit

    def place(self, ring: PolyRing, k: int) -> PolyElement:
        """The pin on strand ``k`` (1-based) of an n-strand ring."""
        out = ring.zero()
        for e, vec in self.coefficients().items():
            out = out + ring.token(k, vec) * ring.x(k, e)
        return out

    def __str__(self) -> str:
        return str(self.element)


def is_pin_label(f: PolyElement) -> PinLabel:
    """Certify ``f`` as a pin label, or raise :class:`NotPinLabel`."""
    ring = f.ring
    if ring.n != 1:
        raise NotPinLabel("pin labels live on a single strand")
    if f.is_zero():
        raise NotPinLabel("zero is not regular")
    if f.parity() != 0:
        raise NotPinLabel("pin label must be even")
    A = ring.A
    for b in range(A.dim):
        tok = ring.token(1, b)
        if f * tok != tok * f:
            raise NotPinLabel(f"pin label does not commute with the token {A.labels[b]}")
    x = ring.x(1)
    if f * x != x * f:
        raise NotPinLabel("pin label does not commute with the dot")
    coeffs: dict[int, list[Fraction]] = {}
    for (word, exps), c in f.terms.items():
        coeffs.setdefault(exps[0], [ZERO] * A.dim)[word[0]] += c
    top, bottom = max(coeffs), min(coeffs)
    if not A.is_regular(tuple(coeffs[top])):
        raise RegularityInconclusive("leading coefficient is not regular in A")
    if ring.quantum and not A.is_regular(tuple(coeffs[bottom])):
        raise RegularityInconclusive("trailing coefficient is not regular in A")
    return PinLabel(f, True, top, bottom)


def uncertified_pin(f: PolyElement) -> PinLabel:
    """Wrap a one-strand element as a label without the membership checks.

    Only meant for level-0 quotients by a non-central element (for instance
    ``x`` over the even-trace Clifford algebra at ``n = 1``); categories refuse
    uncertified labels.
    """
    if f.ring.n != 1 or f.is_zero():
        raise NotPinLabel("a label is a nonzero element on a single strand")
    exps = [e[0] for _, e in f.terms]
    return PinLabel(f, False, max(exps), min(exps))


def is_symmetric_central(f: PolyElement) -> bool:
    """Central in Pol_n(A) (resp. P_n(A)) and fixed by every s_i."""
    ring = f.ring
    for i0 in range(ring.n - 1):
        if ring.swap(i0, f) != f:
            return False
    gens = [ring.token(i, b) for i in range(1, ring.n + 1) for b in range(ring.A.dim)]
    gens += [ring.x(i) for i in range(1, ring.n + 1)]
    for part in f.parts_by_parity().items():
        p, g0 = part
        for g in gens:
            sg = _sign(p * (g.parity() or 0))
            if g0 * g != (g * g0) * sg:
                return False
    return True


# division

def _window(f: PolyElement, h: PolyElement) -> list[range]:
    n = f.n
    ranges = []
    for s in range(n):
        fe = [e[s] for _, e in f.terms]
        he = [e[s] for _, e in h.terms]
        lo, hi = min(fe) - max(he), max(fe) - min(he)
        if not f.ring.quantum:
            lo = max(lo, 0)
        ranges.append(range(lo, hi + 1))
    return ranges


def exact_divide(f: PolyElement, h: PolyElement) -> PolyElement:
    """The g with ``h g = f``, by a linear solve over the support window.

    The window is derived from degrees, so it is complete only when ``h`` is
    not a zero divisor (products of placed pin labels, for instance).
    """
    ring = f.ring
    if f.is_zero():
        return ring.zero()
    if h.is_zero():
        raise NotDivisible("division by zero")
    words = list(product(range(ring.A.dim), repeat=ring.n))
    unknowns = [(w, e) for e in product(*_window(f, h)) for w in words]
    if not unknowns:
        raise NotDivisible("empty support window")
    rows_index: dict[Key, int] = {}
    cols: list[dict[int, Fraction]] = []
    for key in unknowns:
        img = h * PolyElement(ring, {key: ONE})
        col = {}
        for k, c in img.terms.items():
            col[rows_index.setdefault(k, len(rows_index))] = c
        cols.append(col)
    for k in f.terms:
        rows_index.setdefault(k, len(rows_index))
    rows: list[dict[int, Fraction]] = [dict() for _ in range(len(rows_index))]
    for j, col in enumerate(cols):
        for i, c in col.items():
            rows[i][j] = c
    rhs = {rows_index[k]: c for k, c in f.terms.items()}
    sol = _linalg.sparse_solve(rows, len(unknowns), rhs)
    if sol is None:
        raise NotDivisible("no quotient in the support window")
    g = PolyElement(ring, {unknowns[j]: c for j, c in enumerate(sol) if c})
    if h * g != f:
        raise NotDivisible("solver returned a non-quotient")
    return g


def divide_by_pin(f: PolyElement, Q: PinLabel, k: int) -> PolyElement:
    """The g with ``Q_k g = f`` by long division in ``x_k`` (k 1-based).

    The leading coefficient of a pin label is regular in A, hence invertible.
    """
    ring = f.ring
    A = ring.A
    coeffs = Q.coefficients()
    lead_inv = A.inverse(coeffs[Q.top])
    if lead_inv is None:
        raise NotDivisible("leading coefficient of the pin is not invertible")
    Qk = Q.place(ring, k)
    left = ring.token(k, lead_inv)
    k0 = k - 1
    L = Q.top
    floor = 0
    if ring.quantum and f.terms:
        floor = min(e[k0] for _, e in f.terms) - Q.bottom
    r = f
    g = ring.zero()
    for _ in range(10_000):
        if r.is_zero():
            return g
        D = max(e[k0] for _, e in r.terms)
        if D - L < floor:
            raise NotDivisible(f"{f} is not divisible by the pin on strand {k}")
        top = PolyElement(ring, {key: c for key, c in r.terms.items() if key[1][k0] == D})
        u = left * top  # = x_k^L g_top
        g_top = _strip_dots(ring, u, k0, L)
        g = g + g_top
        r = r - Qk * g_top
    raise NotDivisible("long division did not terminate")


def _strip_dots(ring: PolyRing, u: PolyElement, k0: int, L: int) -> PolyElement:
    """Solve ``x_k^L g = u`` term by term (every term of u has degree >= L in x_k)."""
    A = ring.A
    xL = ring.x(k0 + 1, L)
    g = ring.zero()
    for (word, exps), c in u.terms.items():
        e = list(exps)
        e[k0] -= L
        vecs = [A.basis(a) for a in word]
        if ring.twisted:
            vecs[k0] = A.psi_power(L)[word[k0]]
        cand = PolyElement(ring, {(w, tuple(e)): cw for w, cw in ring._expand_letters(vecs).items()})
        img = xL * cand
        s = img.terms.get((word, exps))
        if s is None or len(img.terms) != 1:
            raise NotDivisible("internal: dot stripping is not monomial")
        g = g + cand * (Fraction(c) / s)
    return g
