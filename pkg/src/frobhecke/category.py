"""Higher-level categories LAW(A) and LAH(A, z).

Objects are shuffle words: ``0`` is a black strand and ``r >= 1`` the red
strand carrying the r-th pin label of the session.  A morphism ``i -> j`` is
stored in the basis ``a x^alpha sigma_{j,w,i}`` (tokens and dots on top of a
fixed crossing diagram) as ``{w: f_w}`` with ``f_w`` in Pol_d(A) or P_d(A).

The fixed diagrams ``sigma_{j,w,i}`` are straight-line wirings.  Composition
goes through the faithful functor Phi (Omega in the quantum case): both sides
are multiplied in the affine wreath (Hecke) algebra and the coefficients are
recovered by dividing out the pins sitting on the diagonal.

Crossings are named by the colours they produce, reading the top of the
crossing: ``xRB`` turns ``(black, red)`` into ``(red, black)``, so the black
strand moves right over the red one, and Phi sends it to the pin of that red
strand; ``xBR`` turns ``(red, black)`` into ``(black, red)`` and Phi sends it
to the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Iterable, Mapping, Sequence

from . import _linalg
from . import perms as P
from .errors import (
    IllTypedWord,
    IncompatibleObjects,
    DivisionFailure,
    LevelNotOne,
    NotPinLabel,
    RegularityFailure,
    VariantMismatch,
)
from .frobenius import FrobeniusAlgebra
from .polyalg import (
    DEGENERATE,
    QUANTUM,
    PinLabel,
    PolyElement,
    divide_by_pin,
    is_pin_label,
    is_symmetric_central,
    poly_ring,
)
from .wreath import WreathElement, cyclotomic_reduce, quotient_dim_oracle, wreath_ring

__all__ = [
    "BLACK",
    "Session",
    "ObjectWord",
    "Gen",
    "Morphism",
    "PathElement",
    "shuffles",
    "canonical_diagram",
    "phi",
    "phi_basis",
    "compose",
    "path_multiply",
    "center_membership_path",
    "cyclotomic_iso",
]

BLACK = 0
ObjectWord = tuple[int, ...]
Perm = P.Perm


@dataclass(frozen=True)
class Gen:
    """One elementary piece of a diagram, read bottom to top.

    ``kind`` is ``tok``, ``dot``, ``idot``, ``cross`` (sigma or a positive
    crossing), ``cross-`` (negative black crossing, quantum), ``xRB``,
    ``xBR`` or ``poly`` (an element of Pol_d placed across all black strands).
    ``slot`` is 0-based; a crossing at ``slot`` acts on slots ``slot`` and
    ``slot + 1``.
    """

    kind: str
    slot: int = -1
    arg: object = None


CROSSINGS = ("cross", "cross-", "xRB", "xBR")


def black_count(word: ObjectWord) -> int:
    return sum(1 for c in word if c == BLACK)


def black_index(word: ObjectWord, slot: int) -> int:
    """1-based index of the black strand at ``slot``."""
    if word[slot] != BLACK:
        raise IllTypedWord(f"slot {slot + 1} of {format_object(word)} is not black")
    return sum(1 for c in word[:slot + 1] if c == BLACK)


def format_object(word: ObjectWord) -> str:
    return "[" + " ".join("." if c == BLACK else f"Q{c}" for c in word) + "]"


def shuffles(d: int, level: int) -> list[ObjectWord]:
    """All (black^d, Q)-shuffles, black before red in lexicographic order.

    >>> [format_object(w) for w in shuffles(1, 1)]
    ['[. Q1]', '[Q1 .]']
    """
    size = d + level
    out = []
    for blacks in combinations(range(size), d):
        word, r = [], 0
        for k in range(size):
            if k in blacks:
                word.append(BLACK)
            else:
                r += 1
                word.append(r)
        out.append(tuple(word))
    out.sort()
    assert len(out) == comb(size, d)
    return out


def _check_object(word: ObjectWord, level: int) -> None:
    reds = [c for c in word if c != BLACK]
    if reds != list(range(1, level + 1)):
        raise IncompatibleObjects(f"{format_object(word)} is not a shuffle of the red word")


class Session:
    """Algebra, pin labels, variant and z; immutable after construction."""

    def __init__(self, algebra: FrobeniusAlgebra, pins: Sequence[PinLabel | PolyElement] = (),
                 variant: str = DEGENERATE, z=0):
        self.A = algebra
        self.variant = variant
        self.z = Fraction(z) if variant == QUANTUM else Fraction(0)
        labels = []
        for q in pins:
            if isinstance(q, PolyElement):
                q = is_pin_label(q)
            if not q.certified:
                raise NotPinLabel("red strands need certified pin labels")
            if q.element.ring.A is not algebra or q.element.ring.variant != variant:
                raise VariantMismatch("pin label belongs to a different algebra or variant")
            labels.append(q)
        self.pins: tuple[PinLabel, ...] = tuple(labels)
        self.level = len(self.pins)
        self._canon: dict = {}
        self._phi_canon: dict = {}
        self._factors: dict = {}

    @property
    def quantum(self) -> bool:
        return self.variant == QUANTUM

    def __repr__(self) -> str:
        z = f", z={self.z}" if self.quantum else ""
        return f"Session({self.A.name}, level={self.level}, {self.variant}{z})"

    def pol(self, d: int):
        return poly_ring(self.A, d, self.variant)

    def wreath(self, d: int):
        return wreath_ring(self.A, d, self.variant, self.z)

    def objects(self, d: int) -> list[ObjectWord]:
        return shuffles(d, self.level)

    def check(self, word: ObjectWord) -> None:
        _check_object(word, self.level)

    # diagram words

    def apply(self, word: ObjectWord, g: Gen) -> ObjectWord:
        """Object at the top of ``g`` placed on ``word`` (type check)."""
        p = g.slot
        if g.kind == "poly":
            return word
        if not 0 <= p < len(word):
            raise IllTypedWord(f"slot {p + 1} outside {format_object(word)}")
        if g.kind in ("tok", "dot", "idot"):
            black_index(word, p)
            if g.kind == "idot" and not self.quantum:
                raise IllTypedWord("inverse dots exist only in the quantum variant")
            return word
        if p + 1 >= len(word):
            raise IllTypedWord(f"crossing at slot {p + 1} runs off {format_object(word)}")
        a, b = word[p], word[p + 1]
        kind = crossing_kind(a, b)
        want = g.kind if g.kind in ("xRB", "xBR") else "s"
        if kind != want:
            raise IllTypedWord(f"{g.kind} does not fit slots {p + 1},{p + 2} of {format_object(word)}")
        if g.kind == "cross-" and not self.quantum:
            raise IllTypedWord("negative crossings exist only in the quantum variant")
        out = list(word)
        out[p], out[p + 1] = b, a
        return tuple(out)

    def target(self, src: ObjectWord, gens: Iterable[Gen]) -> ObjectWord:
        cur = src
        for g in gens:
            cur = self.apply(cur, g)
        return cur

    def canonical(self, src: ObjectWord, tgt: ObjectWord, w: Perm) -> tuple[Gen, ...]:
        key = (src, tgt, w)
        hit = self._canon.get(key)
        if hit is None:
            hit = self._canon[key] = _straight_wiring(src, tgt, w)
        return hit

    # Phi / Omega

    def phi_word(self, src: ObjectWord, gens: Sequence[Gen]) -> WreathElement:
        d = black_count(src)
        W = self.wreath(d)
        pol = W.pol
        E = W.one()
        cur = src
        for g in gens:
            nxt = self.apply(cur, g)
            if g.kind == "poly":
                E = W.lmul_poly(g.arg, E)
            elif g.kind == "tok":
                E = W.lmul_poly(pol.token(black_index(cur, g.slot), g.arg), E)
            elif g.kind in ("dot", "idot"):
                E = W.lmul_poly(pol.x(black_index(cur, g.slot), 1 if g.kind == "dot" else -1), E)
            elif g.kind == "cross":
                E = W.lmul_crossing(black_index(cur, g.slot) - 1, E)
            elif g.kind == "cross-":
                E = W.crossing_inv(black_index(cur, g.slot)) * E
            elif g.kind == "xRB":
                k = black_index(cur, g.slot)
                E = W.lmul_poly(self.pins[cur[g.slot + 1] - 1].place(pol, k), E)
            cur = nxt
        return E

    def phi_canonical(self, src: ObjectWord, tgt: ObjectWord, w: Perm) -> WreathElement:
        key = (src, tgt, w)
        hit = self._phi_canon.get(key)
        if hit is None:
            hit = self._phi_canon[key] = self.phi_word(src, self.canonical(src, tgt, w))
        return hit

    def pin_factors(self, src: ObjectWord, tgt: ObjectWord, w: Perm) -> tuple[tuple[int, int], ...]:
        """Pins ``(r, k)`` whose product is the diagonal entry h_{w,w}: the pin of
        red strand r ends up on black strand k once slid to the top."""
        key = (src, tgt, w)
        hit = self._factors.get(key)
        if hit is not None:
            return hit
        gens = self.canonical(src, tgt, w)
        d = black_count(src)
        raw = []
        cur = src
        for h, g in enumerate(gens):
            if g.kind == "xRB":
                raw.append((h, cur[g.slot + 1], black_index(cur, g.slot)))
            cur = self.apply(cur, g)
        out = []
        for h, r, k in raw:
            perm = list(range(d))
            cur2 = src
            for h2, g in enumerate(gens):
                if h2 > h and g.kind in ("cross", "cross-"):
                    j = black_index(cur2, g.slot) - 1
                    perm = [j + 1 if v == j else j if v == j + 1 else v for v in perm]
                cur2 = self.apply(cur2, g)
            out.append((r, perm[k - 1] + 1))
        hit = self._factors[key] = tuple(sorted(out))
        return hit

    def diagonal(self, src: ObjectWord, tgt: ObjectWord, w: Perm) -> PolyElement:
        pol = self.pol(black_count(src))
        h = pol.one()
        for r, k in self.pin_factors(src, tgt, w):
            h = h * self.pins[r - 1].place(pol, k)
        return h

    # morphisms

    def morphism(self, src: ObjectWord, tgt: ObjectWord,
                 parts: Mapping[Perm, PolyElement] | None = None) -> "Morphism":
        return Morphism(self, src, tgt, parts or {})

    def identity(self, obj: ObjectWord) -> "Morphism":
        d = black_count(obj)
        return Morphism(self, obj, obj, {P.identity(d): self.pol(d).one()})

    def basis_morphism(self, src: ObjectWord, tgt: ObjectWord, w: Perm,
                       f: PolyElement | None = None) -> "Morphism":
        d = black_count(src)
        return Morphism(self, src, tgt, {tuple(w): f if f is not None else self.pol(d).one()})

    def from_word(self, src: ObjectWord, gens: Sequence[Gen]) -> "Morphism":
        """The morphism of a diagram word, via Phi-transport."""
        tgt = self.target(src, gens)
        return self.transport(src, tgt, self.phi_word(src, gens))

    def transport(self, src: ObjectWord, tgt: ObjectWord, E: WreathElement) -> "Morphism":
        """The unique morphism ``src -> tgt`` whose Phi-image is ``E``."""
        d = black_count(src)
        residual = E
        parts: dict[Perm, PolyElement] = {}
        for w in sorted(P.all_perms(d), key=lambda u: (-P.length(u), u)):
            r = residual.poly_part(w)
            if r.is_zero():
                continue
            f = r
            try:
                for rr, k in self.pin_factors(src, tgt, w):
                    f = divide_by_pin(f, self.pins[rr - 1], k)
            except Exception as exc:
                raise DivisionFailure(f"coefficient of {w} is not divisible by its diagonal: {exc}") from exc
            parts[w] = f
            residual = residual - self.wreath(d).lmul_poly(f, self.phi_canonical(src, tgt, w))
        if not residual.is_zero():
            raise DivisionFailure("Phi-image is not in the span of the basis diagrams")
        return Morphism(self, src, tgt, parts)


def crossing_kind(a: int, b: int) -> str:
    if a == BLACK and b == BLACK:
        return "s"
    if a == BLACK:
        return "xRB"
    if b == BLACK:
        return "xBR"
    raise IllTypedWord("red strands do not cross each other")


def _straight_wiring(src: ObjectWord, tgt: ObjectWord, w: Perm) -> tuple[Gen, ...]:
    if sorted(src) != sorted(tgt) or [c for c in src if c] != [c for c in tgt if c]:
        raise IncompatibleObjects(f"{format_object(src)} and {format_object(tgt)} are different shuffles")
    d = black_count(src)
    if sorted(w) != list(range(d)):
        raise IncompatibleObjects(f"{w} is not a permutation of {d} black strands")
    sb = [k for k, c in enumerate(src) if c == BLACK]
    tb = [k for k, c in enumerate(tgt) if c == BLACK]
    end = {}
    for k, a in enumerate(sb):
        end[a] = tb[w[k]]
    for r in set(c for c in src if c):
        end[src.index(r)] = tgt.index(r)
    cur = list(range(len(src)))  # strand (by source slot) at each slot
    out = []
    while True:
        best = None
        for p in range(len(cur) - 1):
            a1, a2 = cur[p], cur[p + 1]
            b1, b2 = end[a1], end[a2]
            if b1 > b2:
                t = Fraction(a2 - a1, (b1 - a1) - (b2 - a2))
                if best is None or (t, p) < best:
                    best = (t, p)
        if best is None:
            break
        p = best[1]
        kind = crossing_kind(src[cur[p]], src[cur[p + 1]])
        out.append(Gen("cross" if kind == "s" else kind, p))
        cur[p], cur[p + 1] = cur[p + 1], cur[p]
    return tuple(out)


def canonical_diagram(session: Session, src: ObjectWord, tgt: ObjectWord, w: Perm) -> tuple[Gen, ...]:
    """Bottom-to-top straight-line wiring realising ``sigma_{tgt,w,src}``."""
    session.check(src)
    session.check(tgt)
    return session.canonical(tuple(src), tuple(tgt), tuple(w))


class Morphism:
    """``sum_w f_w sigma_{tgt,w,src}``; immutable."""

    __slots__ = ("session", "src", "tgt", "parts")

    def __init__(self, session: Session, src: ObjectWord, tgt: ObjectWord,
                 parts: Mapping[Perm, PolyElement]):
        session.check(src)
        session.check(tgt)
        if black_count(src) != black_count(tgt):
            raise IncompatibleObjects("source and target have different numbers of black strands")
        self.session = session
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.parts = {tuple(w): f for w, f in parts.items() if not f.is_zero()}

    @property
    def d(self) -> int:
        return black_count(self.src)

    @property
    def terms(self) -> dict[tuple, Fraction]:
        return {(word, exps, w): c for w, f in self.parts.items() for (word, exps), c in f.terms.items()}

    def is_zero(self) -> bool:
        return not self.parts

    def _same_hom(self, other: "Morphism") -> None:
        if other.session is not self.session:
            raise VariantMismatch("morphisms from different sessions")
        if (other.src, other.tgt) != (self.src, self.tgt):
            raise IncompatibleObjects("cannot add morphisms between different objects")

    def __add__(self, other: "Morphism") -> "Morphism":
        self._same_hom(other)
        parts = dict(self.parts)
        for w, f in other.parts.items():
            parts[w] = parts[w] + f if w in parts else f
        return Morphism(self.session, self.src, self.tgt, parts)

    def __neg__(self) -> "Morphism":
        return Morphism(self.session, self.src, self.tgt, {w: -f for w, f in self.parts.items()})

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-other)

    def __mul__(self, other):
        """``g * f`` is the composite g after f (g on top)."""
        if isinstance(other, (int, Fraction)):
            return Morphism(self.session, self.src, self.tgt,
                            {w: f * Fraction(other) for w, f in self.parts.items()})
        if isinstance(other, Morphism):
            return compose(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        if isinstance(other, PolyElement):
            return Morphism(self.session, self.src, self.tgt, {w: other * f for w, f in self.parts.items()})
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.src, self.tgt, self.parts) == (other.src, other.tgt, other.parts)

    def __hash__(self) -> int:
        return hash((self.src, self.tgt, frozenset(self.terms.items())))

    def __str__(self) -> str:
        from .grammar import format_morphism
        return format_morphism(self)

    def __repr__(self) -> str:
        return f"Morphism({self})"


def phi(f: Morphism | tuple[ObjectWord, Sequence[Gen]], session: Session | None = None) -> WreathElement:
    """Image under Phi (Omega) of a morphism or of ``(src, diagram word)``."""
    if isinstance(f, Morphism):
        S = f.session
        W = S.wreath(f.d)
        out = W.zero()
        for w, g in f.parts.items():
            out = out + W.lmul_poly(g, S.phi_canonical(f.src, f.tgt, w))
        return out
    src, gens = f
    return session.phi_word(tuple(src), list(gens))


def phi_basis(session: Session, src: ObjectWord, tgt: ObjectWord) -> dict[Perm, dict[Perm, PolyElement]]:
    """``{w: {u: h_{u,w}}}`` with the diagonal certified as a product of pins."""
    d = black_count(src)
    out = {}
    for w in P.all_perms(d):
        E = session.phi_canonical(src, tgt, w)
        for u in E.parts:
            if P.length(u) > P.length(w) or (P.length(u) == P.length(w) and u != w):
                raise RegularityFailure(f"Phi of the basis diagram for {w} has a term at {u}")
        h = E.poly_part(w)
        if h != session.diagonal(src, tgt, w):
            raise RegularityFailure(f"diagonal entry for {w} is not the expected product of pins")
        out[w] = dict(E.parts)
    return out


def compose(g: Morphism, f: Morphism) -> Morphism:
    """``g`` after ``f`` by Phi-transport."""
    if g.session is not f.session:
        raise VariantMismatch("morphisms from different sessions")
    if g.src != f.tgt:
        raise IncompatibleObjects(f"cannot compose: {format_object(f.tgt)} != {format_object(g.src)}")
    S = g.session
    return S.transport(f.src, g.tgt, phi(g) * phi(f))


class PathElement:
    """Element of W_{d,Q}^aff(A) (or H_{d,Q}^aff): blocks ``(src, tgt) -> Morphism``."""

    __slots__ = ("session", "d", "blocks")

    def __init__(self, session: Session, d: int, blocks: Mapping[tuple, Morphism] | Iterable[Morphism]):
        self.session = session
        self.d = d
        items = blocks.values() if isinstance(blocks, Mapping) else blocks
        out: dict[tuple, Morphism] = {}
        for m in items:
            if m.d != d:
                raise IncompatibleObjects("block has the wrong number of black strands")
            key = (m.src, m.tgt)
            out[key] = out[key] + m if key in out else m
        self.blocks = {k: m for k, m in out.items() if not m.is_zero()}

    @classmethod
    def identity(cls, session: Session, d: int) -> "PathElement":
        return cls(session, d, [session.identity(i) for i in session.objects(d)])

    @classmethod
    def idempotent(cls, session: Session, obj: ObjectWord) -> "PathElement":
        return cls(session, black_count(obj), [session.identity(obj)])

    def __add__(self, other: "PathElement") -> "PathElement":
        return PathElement(self.session, self.d, list(self.blocks.values()) + list(other.blocks.values()))

    def __sub__(self, other: "PathElement") -> "PathElement":
        return self + other * -1

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PathElement(self.session, self.d, [m * other for m in self.blocks.values()])
        if isinstance(other, PathElement):
            return path_multiply(self, other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, PathElement):
            return NotImplemented
        return self.blocks == other.blocks

    def is_zero(self) -> bool:
        return not self.blocks

    def matrix(self) -> dict[tuple, WreathElement]:
        """Block matrix of Phi-images, keyed by (row = target, column = source)."""
        return {(t, s): phi(m) for (s, t), m in self.blocks.items()}

    def __str__(self) -> str:
        from .grammar import format_morphism
        return "\n".join(format_morphism(m) for _, m in sorted(self.blocks.items())) or "0"


def path_multiply(U: PathElement, V: PathElement) -> PathElement:
    """``(UV)_{k,i} = sum_j U_{j->k} V_{i->j}``; mismatched middles give zero."""
    out = []
    for (j1, k), u in U.blocks.items():
        for (i, j2), v in V.blocks.items():
            if j1 == j2:
                out.append(compose(u, v))
    return PathElement(U.session, U.d, out)


def center_membership_path(U: PathElement) -> bool:
    """Is ``U = sum_i f 1_i`` for a single symmetric central ``f``?"""
    S = U.session
    objs = S.objects(U.d)
    e = P.identity(U.d)
    f = None
    for i in objs:
        m = U.blocks.get((i, i))
        if m is None:
            g = S.pol(U.d).zero()
        else:
            if set(m.parts) - {e}:
                return False
            g = m.parts.get(e, S.pol(U.d).zero())
        if f is None:
            f = g
        elif g != f:
            return False
    if any(s != t for s, t in U.blocks):
        return False
    return f is not None and is_symmetric_central(f)


# cyclotomic isomorphism at level one

@dataclass
class CycloIsoReport:
    d: int
    pin: str
    corner_pin_in_ideal: bool
    black_first_in_kernel: bool
    samples: int
    dim_level_zero: int
    dim_level_one: int
    dim_expected: int
    details: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.corner_pin_in_ideal and self.black_first_in_kernel
                and self.dim_level_zero == self.dim_level_one == self.dim_expected)


def _window_morphisms(S: Session, src, tgt, bound: int) -> list[Morphism]:
    d = black_count(src)
    lo = -(bound - 1) if S.quantum else 0
    exps = [e for e in product(range(lo, bound), repeat=d) if sum(abs(a) for a in e) < bound]
    words = list(product(range(S.A.dim), repeat=d))
    pol = S.pol(d)
    return [S.basis_morphism(src, tgt, w, pol.monomial(a, e))
            for w in P.all_perms(d) for e in exps for a in words]


def _window_rank_dim(S: Session, d: int, gens: list[WreathElement], bound: int) -> int:
    from .wreath import _window_basis
    W = S.wreath(d)
    basis = _window_basis(W, bound)
    index = {k: i for i, k in enumerate(basis)}
    rows = []
    for g in gens:
        row = {}
        for k, c in g.terms.items():
            if k not in index:
                break
            row[index[k]] = c
        else:
            if row:
                rows.append(row)
    return len(basis) - _linalg.sparse_rank(rows, len(basis))


def cyclotomic_iso(session: Session, d: int, bound: int = 3, max_samples: int = 400) -> CycloIsoReport:
    """Check the level-one cyclotomic isomorphism at desk scale.

    The corner at ``omega = Q black^d`` is identified with W_d^aff(A) through
    Phi.  (i) The pin ``Q_1 1_omega`` factors through a black-first object;
    (ii) every composite ``omega -> j -> omega`` with ``j`` black-first lies in
    the ideal ``(Q_1)``; (iii) both quotients have the expected dimension.
    """
    if session.level != 1:
        raise LevelNotOne(f"the cyclotomic isomorphism needs exactly one red strand, got {session.level}")
    Q = session.pins[0]
    omega = (1,) + (BLACK,) * d
    W = session.wreath(d)
    details = []
    # (i) the hw4 double crossing on the first black strand
    loop = [Gen("xBR", 0), Gen("xRB", 0)]
    from .rewrite import normalize_diagram
    got = normalize_diagram(session, omega, loop)
    want = session.basis_morphism(omega, omega, P.identity(d), Q.place(session.pol(d), 1))
    corner_ok = got == want
    if not corner_ok:
        details.append(f"double crossing gave {got}")
    # (ii) composites through black-first objects
    black_first = [j for j in session.objects(d) if j[0] == BLACK]
    samples = 0
    kernel_ok = True
    ideal_gens = []
    for j in black_first:
        downs = _window_morphisms(session, omega, j, bound)
        ups = _window_morphisms(session, j, omega, bound)
        for y in downs:
            py = phi(y)
            for x in ups:
                prod = phi(x) * py
                ideal_gens.append(prod)
                if samples < max_samples:
                    samples += 1
                    if not cyclotomic_reduce(prod, Q).is_zero():
                        kernel_ok = False
                        details.append(f"composite through {format_object(j)} survives: {prod}")
    dim1 = _window_rank_dim(session, d, ideal_gens, bound)
    dim0 = quotient_dim_oracle(W, Q, bound, warn=False)
    span = Q.top - Q.bottom if session.quantum else Q.top
    expected = (session.A.dim ** d) * (span ** d) * len(P.all_perms(d))
    return CycloIsoReport(d, str(Q), corner_ok, kernel_ok, samples, dim0, dim1, expected, details)
