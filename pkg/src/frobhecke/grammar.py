"""Text syntax for elements, object words, diagram words and morphisms.

Elements::

    element := "0" | term (("+" | "-") term)*
    term    := rational "*" "(" label ("|" label)* ")" dot* crossing*
    dot     := ("x" | "X") index ("^" int)?
    crossing:= ("s" | "T") index

``x`` is the degenerate dot, ``X`` the quantum one; crossings ``s_i`` and
``T_i`` only occur in wreath elements.  Serialisation is canonical: terms are
sorted by (tensor word, exponents, permutation) and crossings are written as
the reduced word chosen by :func:`frobhecke.perms.reduced_word`.

>>> from frobhecke.frobenius import builtin
>>> A = builtin("clifford_even")
>>> f = parse_poly("3/2*(1|c) x1^2 x2 - 1*(c|c)", A)
>>> format_poly(f)
'3/2*(1|c) x1^2 x2 - 1*(c|c)'
"""

from __future__ import annotations

import re
from fractions import Fraction

from . import perms as P
from .errors import GrammarError, InverseDotInDegenerate, UnknownLabel, VariantMismatch
from .frobenius import FrobeniusAlgebra, format_rational
from .polyalg import DEGENERATE, QUANTUM, PolyElement, poly_ring

__all__ = [
    "parse_poly",
    "parse_wreath",
    "format_poly",
    "format_wreath",
    "parse_terms",
    "format_term_body",
    "parse_object",
    "parse_diagram",
    "format_diagram",
    "parse_morphism",
    "format_morphism",
    "parse_label",
]


_LEX = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<dot>[xX])(?P<di>\d+)(?:\^(?P<de>-?\d+))?
  | (?P<cross>[sT])(?P<ci>\d+)
  | (?P<punct>[*()|+-])
""", re.VERBOSE)


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            self.fail(f"expected {ch!r}")
        self.pos += 1

    def fail(self, msg: str):
        raise GrammarError(msg, self.text, self.pos)

    def match(self):
        self.skip_ws()
        m = _LEX.match(self.text, self.pos)
        return m

    def rational(self) -> Fraction:
        m = self.match()
        if not m or not m.group("num"):
            self.fail("expected a rational coefficient")
        self.pos = m.end()
        return Fraction(m.group("num"))

    def labels(self) -> list[tuple[str, int]]:
        self.expect("(")
        out = []
        while True:
            self.skip_ws()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos] not in "|()":
                self.pos += 1
            label = self.text[start:self.pos].strip()
            if not label:
                self.fail("empty basis label")
            out.append((label, start))
            ch = self.peek()
            if ch == "|":
                self.pos += 1
                continue
            if ch == ")":
                self.pos += 1
                return out
            self.fail("expected '|' or ')'")


def parse_terms(text: str, allow_crossings: bool):
    """Yield raw ``(coeff, [(label, pos)], [(var, index, exp)], [(kind, index)])``."""
    sc = _Scanner(text)
    if sc.peek() == "0":
        save = sc.pos
        sc.pos += 1
        if sc.at_end():
            return []
        sc.pos = save
    out = []
    sign = 1
    first = True
    while True:
        ch = sc.peek()
        if ch in "+-":
            sign = -1 if ch == "-" else 1
            sc.pos += 1
        elif not first:
            sc.fail("expected '+' or '-'")
        coeff = sc.rational() * sign
        sc.expect("*")
        labels = sc.labels()
        dots, crosses = [], []
        while True:
            m = sc.match()
            if not m or not (m.group("dot") or m.group("cross")):
                break
            if m.group("dot"):
                if crosses:
                    sc.fail("dots must precede crossings")
                dots.append((m.group("dot"), int(m.group("di")), int(m.group("de") or 1), sc.pos))
            else:
                if not allow_crossings:
                    sc.fail("crossings are not allowed in a polynomial")
                crosses.append((m.group("cross"), int(m.group("ci")), sc.pos))
            sc.pos = m.end()
        out.append((coeff, labels, dots, crosses))
        first = False
        sign = 1
        if sc.at_end():
            return out


def _label_index(A: FrobeniusAlgebra, label: str) -> int:
    try:
        return A.labels.index(label)
    except ValueError:
        raise UnknownLabel(f"no basis element labelled {label!r} in {A.name}") from None


def _infer_n(text: str, raw, n: int | None) -> int:
    counts = {len(t[1]) for t in raw}
    if n is not None:
        counts.add(n)
    if len(counts) > 1:
        raise GrammarError("terms have different numbers of tensor factors", text, 0)
    return counts.pop() if counts else (n or 0)


def _term_poly(ring, text, coeff, labels, dots, variant) -> PolyElement:
    A = ring.A
    word = tuple(_label_index(A, lab) for lab, _ in labels)
    f = ring.monomial(word, (0,) * ring.n, coeff)
    for var, i, e, pos in dots:
        if (var == "X") != (variant == QUANTUM):
            raise VariantMismatch(f"dot variable {var!r} does not match the {variant} variant")
        if not 1 <= i <= ring.n:
            raise GrammarError(f"strand {i} outside 1..{ring.n}", text, pos)
        if e < 0 and variant != QUANTUM:
            raise InverseDotInDegenerate("inverse dots exist only in the quantum variant")
        f = f * ring.x(i, e)
    return f


def parse_poly(text: str, algebra: FrobeniusAlgebra, variant: str = DEGENERATE,
               n: int | None = None) -> PolyElement:
    raw = parse_terms(text, allow_crossings=False)
    ring = poly_ring(algebra, _infer_n(text, raw, n), variant)
    out = ring.zero()
    for coeff, labels, dots, _ in raw:
        out = out + _term_poly(ring, text, coeff, labels, dots, variant)
    return out


def parse_wreath(text: str, algebra: FrobeniusAlgebra, variant: str = DEGENERATE, z=0,
                 n: int | None = None):
    from .wreath import wreath_ring
    raw = parse_terms(text, allow_crossings=True)
    W = wreath_ring(algebra, _infer_n(text, raw, n), variant, Fraction(z) if variant == QUANTUM else 0)
    out = W.zero()
    for coeff, labels, dots, crosses in raw:
        u = W.from_poly(_term_poly(W.pol, text, coeff, labels, dots, variant))
        for kind, i, pos in crosses:
            if (kind == "T") != (variant == QUANTUM):
                raise VariantMismatch(f"crossing {kind}{i} does not match the {variant} variant")
            if not 1 <= i < W.n:
                raise GrammarError(f"crossing {i} outside 1..{W.n - 1}", text, pos)
            u = u * W.crossing(i)
        out = out + u
    return out


def format_term_body(A: FrobeniusAlgebra, word, exps, quantum: bool) -> str:
    var = "X" if quantum else "x"
    s = "(" + "|".join(A.labels[k] for k in word) + ")"
    for i, e in enumerate(exps):
        if e == 1:
            s += f" {var}{i + 1}"
        elif e:
            s += f" {var}{i + 1}^{e}"
    return s


def _join(pieces: list[tuple[Fraction, str]]) -> str:
    if not pieces:
        return "0"
    out = ""
    for k, (c, body) in enumerate(pieces):
        mag = format_rational(abs(c))
        if k == 0:
            out = ("-" if c < 0 else "") + f"{mag}*{body}"
        else:
            out += (" - " if c < 0 else " + ") + f"{mag}*{body}"
    return out


def format_poly(f: PolyElement) -> str:
    ring = f.ring
    return _join([(c, format_term_body(ring.A, w, e, ring.quantum))
                  for (w, e), c in sorted(f.terms.items())])


def format_wreath(u) -> str:
    ring = u.ring
    letter = "T" if ring.quantum else "s"
    pieces = []
    for (w, e, p), c in sorted(u.terms.items()):
        body = format_term_body(ring.A, w, e, ring.quantum)
        for i0 in P.reduced_word(p):
            body += f" {letter}{i0 + 1}"
        pieces.append((c, body))
    return _join(pieces)


# object words, diagram words, morphisms

_GEN = re.compile(r"\s*(?P<kind>xRB|xBR|s\+|s-|s|dot|idot|tok\((?P<lab>[^()]+)\))\s*@\s*(?P<slot>\d+)\s*$")


def parse_object(text: str) -> tuple[int, ...]:
    """``[. Q1 . Q2]`` -> ``(0, 1, 0, 2)``; ``.`` is a black strand.

    >>> parse_object("[. Q1 .]")
    (0, 1, 0)
    """
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise GrammarError("object words are written in brackets", text, 0)
    out = []
    for item in body[1:-1].split():
        if item == ".":
            out.append(0)
        elif re.fullmatch(r"Q[1-9]\d*", item):
            out.append(int(item[1:]))
        else:
            raise GrammarError(f"unknown strand {item!r}", text, text.find(item))
    return tuple(out)


def parse_diagram(text: str, algebra: FrobeniusAlgebra, quantum: bool = False):
    """Bottom-to-top, ``;``-separated generators with 1-based slots.

    >>> from frobhecke.frobenius import builtin
    >>> [(g.kind, g.slot) for g in parse_diagram("xBR@1; s@2; dot@1", builtin("ground"))]
    [('xBR', 0), ('cross', 1), ('dot', 0)]
    """
    from .category import Gen
    out = []
    offset = 0
    for piece in text.split(";"):
        if not piece.strip():
            offset += len(piece) + 1
            continue
        m = _GEN.match(piece)
        if not m:
            raise GrammarError(f"cannot read generator {piece.strip()!r}", text, offset)
        kind, slot = m.group("kind"), int(m.group("slot")) - 1
        if slot < 0:
            raise GrammarError("slots start at 1", text, offset)
        if kind.startswith("tok("):
            out.append(Gen("tok", slot, _label_index(algebra, m.group("lab").strip())))
        elif kind in ("s", "s+"):
            if kind == "s+" and not quantum:
                raise VariantMismatch("signed crossings belong to the quantum variant")
            out.append(Gen("cross", slot))
        elif kind == "s-":
            if not quantum:
                raise VariantMismatch("negative crossings belong to the quantum variant")
            out.append(Gen("cross-", slot))
        elif kind == "idot" and not quantum:
            raise InverseDotInDegenerate("inverse dots exist only in the quantum variant")
        else:
            out.append(Gen(kind, slot))
        offset += len(piece) + 1
    return out


def format_diagram(gens, algebra: FrobeniusAlgebra, quantum: bool = False) -> str:
    names = {"cross": "s+" if quantum else "s", "cross-": "s-"}
    parts = []
    for g in gens:
        if g.kind == "tok":
            parts.append(f"tok({algebra.labels[g.arg]})@{g.slot + 1}")
        else:
            parts.append(f"{names.get(g.kind, g.kind)}@{g.slot + 1}")
    return "; ".join(parts)


def parse_morphism(text: str, session):
    """``<src> -> <tgt> : element``; the crossings of a term name the
    permutation w of the basis diagram sigma_{tgt,w,src}."""
    head, sep, body = text.partition(":")
    if not sep or "->" not in head:
        raise GrammarError("expected '<src> -> <tgt> : element'", text, 0)
    s_txt, _, t_txt = head.partition("->")
    src, tgt = parse_object(s_txt), parse_object(t_txt)
    d = sum(1 for c in src if c == 0)
    raw = parse_terms(body, allow_crossings=True)
    n = _infer_n(body, raw, d)
    if n != d:
        raise GrammarError("terms must have one tensor factor per black strand", text, 0)
    pol = session.pol(d)
    parts: dict = {}
    for coeff, labels, dots, crosses in raw:
        f = _term_poly(pol, body, coeff, labels, dots, session.variant)
        w = P.identity(d)
        for kind, i, pos in crosses:
            if (kind == "T") != session.quantum:
                raise VariantMismatch(f"crossing {kind}{i} does not match the {session.variant} variant")
            if not 1 <= i < d:
                raise GrammarError(f"crossing {i} outside 1..{d - 1}", body, pos)
            w = P.times_s_right(w, i - 1)
        parts[w] = parts[w] + f if w in parts else f
    return session.morphism(src, tgt, parts)


def format_morphism(m) -> str:
    from .category import format_object
    quantum = m.session.quantum
    letter = "T" if quantum else "s"
    pieces = []
    for (word, exps, w), c in sorted(m.terms.items()):
        body = format_term_body(m.session.A, word, exps, quantum)
        for i0 in P.reduced_word(w):
            body += f" {letter}{i0 + 1}"
        pieces.append((c, body))
    return f"{format_object(m.src)} -> {format_object(m.tgt)} : {_join(pieces)}"


_SHORT = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(?:([xX])(?:\^(-?\d+))?)?\s*")


def parse_label(text: str, algebra: FrobeniusAlgebra, variant: str = DEGENERATE) -> PolyElement:
    """A one-strand element, in full syntax or as a shorthand polynomial in
    the dot with scalar coefficients (``x^2+1``, ``X-1``, ``X+X^-1+2``).

    >>> from frobhecke.frobenius import builtin
    >>> str(parse_label("x^2 - 3/2", builtin("ground")))
    '-3/2*(1) + 1*(1) x1^2'
    """
    if "(" in text:
        return parse_poly(text, algebra, variant, n=1)
    ring = poly_ring(algebra, 1, variant)
    out = ring.zero()
    pos = 0
    body = text.strip()
    if not body:
        raise GrammarError("empty label", text, 0)
    while pos < len(body):
        m = _SHORT.match(body, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise GrammarError("cannot read label term", text, pos)
        if pos > 0 and not m.group(1):
            raise GrammarError("expected '+' or '-'", text, pos)
        coeff = Fraction(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
        term = ring.scalar(coeff)
        if m.group(3):
            if (m.group(3) == "X") != (variant == QUANTUM):
                raise VariantMismatch(f"dot variable {m.group(3)!r} does not match the {variant} variant")
            e = int(m.group(4) or 1)
            if e < 0 and variant != QUANTUM:
                raise InverseDotInDegenerate("inverse dots exist only in the quantum variant")
            term = term * ring.x(1, e)
        out = out + term
        pos = m.end()
    return out
