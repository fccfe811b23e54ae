"""Normal forms of diagram words by local rewriting.

This is the second route to the hom spaces: it never touches Phi.  Tokens and
dots are pushed to the top with the local sliding rules; crossing words are
brought to the fixed straight-line wiring by commutation and braid moves,
with the pin correction of the triangle move whose red strand sits in the
middle, and double crossings are removed (two black strands untangle, or
pick up the teleporter in the quantum case; a red and a black strand leave
the pin behind).  Negative crossings are first rewritten as ``T - z t``.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from . import perms as P
from .category import (
    BLACK,
    Gen,
    Morphism,
    ObjectWord,
    Session,
    black_count,
    black_index,
)
from .errors import IllTypedWord, NonTermination
from .polyalg import PolyElement

__all__ = ["normalize_diagram", "Normalizer"]

Word = tuple[tuple[int, int], ...]  # (slot, sign) from bottom to top
Form = dict  # perm -> PolyElement


def _swap(obj: ObjectWord, p: int) -> ObjectWord:
    out = list(obj)
    out[p], out[p + 1] = out[p + 1], out[p]
    return tuple(out)


def _add(acc: Form, w, f: PolyElement) -> None:
    if f.is_zero():
        return
    if w in acc:
        g = acc[w] + f
        if g.is_zero():
            del acc[w]
        else:
            acc[w] = g
    else:
        acc[w] = f


class Normalizer:
    """Memoised rewriting engine for one session."""

    def __init__(self, session: Session, max_states: int = 200_000):
        self.S = session
        self.max_states = max_states
        self._cache: dict[tuple[ObjectWord, Word], Form] = {}

    # bookkeeping

    def _walk(self, src: ObjectWord, word: Sequence[tuple[int, int]]):
        """Target object and black permutation of a crossing word."""
        obj = src
        d = black_count(src)
        pos = list(range(len(src)))  # current slot -> source slot
        for p, _ in word:
            if p + 1 >= len(obj) or (obj[p] != BLACK and obj[p + 1] != BLACK):
                raise IllTypedWord("crossing does not fit the object")
            obj = _swap(obj, p)
            pos[p], pos[p + 1] = pos[p + 1], pos[p]
        src_black = {s: k for k, s in enumerate(k for k, c in enumerate(src) if c == BLACK)}
        w = [0] * d
        t = 0
        for slot, s in enumerate(pos):
            if src[s] == BLACK:
                w[src_black[s]] = t
                t += 1
        return obj, tuple(w), pos

    def _canon_word(self, src: ObjectWord, tgt: ObjectWord, w) -> Word:
        return tuple((g.slot, 1) for g in self.S.canonical(src, tgt, w))

    # public

    def normalize(self, src: ObjectWord, gens: Sequence[Gen]) -> Morphism:
        S = self.S
        S.check(src)
        d = black_count(src)
        pol = S.pol(d)
        form: Form = {P.identity(d): pol.one()}
        cur = src
        for g in gens:
            nxt = S.apply(cur, g)
            if g.kind in CROSS_SIGN:
                form = self._apply_crossing(src, cur, form, g.slot, CROSS_SIGN[g.kind])
            else:
                form = self._apply_poly(form, self._atomic(cur, g))
            cur = nxt
        return Morphism(S, src, cur, form)

    # atomic pieces

    def _atomic(self, cur: ObjectWord, g: Gen) -> PolyElement:
        pol = self.S.pol(black_count(cur))
        if g.kind == "poly":
            return g.arg
        k = black_index(cur, g.slot)
        if g.kind == "tok":
            return pol.token(k, g.arg)
        return pol.x(k, 1 if g.kind == "dot" else -1)

    @staticmethod
    def _apply_poly(form: Form, h: PolyElement) -> Form:
        out: Form = {}
        for w, f in form.items():
            _add(out, w, h * f)
        return out

    def _apply_crossing(self, src: ObjectWord, cur: ObjectWord, form: Form, p: int, sign: int) -> Form:
        S = self.S
        d = black_count(src)
        pol = S.pol(d)
        both_black = cur[p] == BLACK and cur[p + 1] == BLACK
        if sign < 0:
            out = self._apply_crossing(src, cur, form, p, 1)
            k = black_index(cur, p)
            t = pol.tele(k - 1, k) * (-S.z)
            for w, f in self._apply_poly(form, t).items():
                _add(out, w, f)
            return out
        out: Form = {}
        for u, f in form.items():
            cw = self._canon_word(src, cur, u)
            h = self.nf(src, cw + ((p, 1),))
            if both_black:
                k0 = black_index(cur, p) - 1
                moved = pol.swap(k0, f)
                for v, hv in h.items():
                    _add(out, v, moved * hv)
                if S.quantum:
                    _add(out, u, pol.delta0(k0, f) * S.z)
                else:
                    _add(out, u, -pol.demazure0(k0, f))
            else:
                for v, hv in h.items():
                    _add(out, v, f * hv)
        return out

    def _eval(self, src: ObjectWord, pre: Word, mid: PolyElement, post: Word) -> Form:
        """Value of ``pre``, then ``mid`` (in the black strands), then ``post``."""
        form = dict(self.nf(src, pre))
        cur, _, _ = self._walk(src, pre)
        form = self._apply_poly(form, mid)
        for p, sgn in post:
            form = self._apply_crossing(src, cur, form, p, sgn)
            cur = _swap(cur, p)
        return form

    # crossing words

    def nf(self, src: ObjectWord, word: Word) -> Form:
        key = (src, word)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache[key] = self._nf(src, word)
        return hit

    def _nf(self, src: ObjectWord, word: Word) -> Form:
        S = self.S
        d = black_count(src)
        pol = S.pol(d)
        neg = next((h for h, (_, s) in enumerate(word) if s < 0), None)
        if neg is not None:
            p = word[neg][0]
            out = dict(self.nf(src, word[:neg] + ((p, 1),) + word[neg + 1:]))
            below, _, _ = self._walk(src, word[:neg])
            k = black_index(below, p)
            corr = self._eval(src, word[:neg], pol.tele(k - 1, k) * (-S.z), word[neg + 1:])
            for w, f in corr.items():
                _add(out, w, f)
            return out
        tgt, w, pos = self._walk(src, word)
        slots = tuple(p for p, _ in word)
        inversions = sum(1 for a in range(len(pos)) for b in range(a + 1, len(pos)) if pos[a] > pos[b])
        reduced = inversions == len(slots)
        goal = tuple(p for p, _ in self._canon_word(src, tgt, w)) if reduced else None

        def done(ws):
            if reduced:
                return ws == goal
            return any(ws[h] == ws[h + 1] for h in range(len(ws) - 1))

        path = self._search(slots, done)
        out: Form = {}
        current = slots
        for h, new in path:
            corr = None if h is None else self._triangle(src, current, h)
            if corr is not None:
                pin_poly, lhs_first = corr
                c = 1 if lhs_first else -1
                pre = tuple((q, 1) for q in current[:h])
                post = tuple((q, 1) for q in current[h + 3:])
                for v, f in self._eval(src, pre, pin_poly * c, post).items():
                    _add(out, v, f)
            current = new
        if reduced:
            _add(out, w, pol.one())
            return out
        h = next(h for h in range(len(current) - 1) if current[h] == current[h + 1])
        p = current[h]
        pre = tuple((q, 1) for q in current[:h])
        post = tuple((q, 1) for q in current[h + 2:])
        below, _, _ = self._walk(src, pre)
        if below[p] == BLACK and below[p + 1] == BLACK:
            for v, f in self._eval(src, pre, pol.one(), post).items():
                _add(out, v, f)
            if S.quantum:
                k = black_index(below, p)
                inner = pre + ((p, 1),)
                for v, f in self._eval(src, inner, pol.tele(k - 1, k) * S.z, post).items():
                    _add(out, v, f)
        else:
            bslot = p if below[p] == BLACK else p + 1
            red = below[p + 1] if bslot == p else below[p]
            pin = S.pins[red - 1].place(pol, black_index(below, bslot))
            for v, f in self._eval(src, pre, pin, post).items():
                _add(out, v, f)
        return out

    def _triangle(self, src: ObjectWord, slots: tuple[int, ...], h: int):
        """Correction for the braid move at height h, or None if exact.

        Returns ``(poly, lhs_first)`` where ``lhs_first`` says the move goes
        from ``(p, p+1, p)`` to ``(p+1, p, p+1)``; then the old word equals the
        new word plus ``poly`` at that height.
        """
        pre = tuple((q, 1) for q in slots[:h])
        below, _, _ = self._walk(src, pre)
        p = min(slots[h:h + 3])
        a, m, b = below[p:p + 3]
        if not (a == BLACK and b == BLACK and m != BLACK):
            return None
        S = self.S
        pol = S.pol(black_count(src))
        k0 = black_index(below, p) - 1
        Qk = S.pins[m - 1].place(pol, k0 + 1)
        if S.quantum:
            poly = pol.delta0(k0, Qk) * S.z
        else:
            poly = -pol.demazure0(k0, Qk)
        return poly, slots[h] == p

    def _search(self, start: tuple[int, ...], done) -> list[tuple[int, tuple[int, ...]]]:
        """Shortest sequence of commutation/braid moves reaching ``done``.

        Each step is ``(height, new_word)``; height is None for commutations.
        """
        if done(start):
            return []
        parent: dict[tuple, tuple] = {start: None}
        queue = deque([start])
        while queue:
            ws = queue.popleft()
            for h, nw, braid in _moves(ws):
                if nw in parent:
                    continue
                parent[nw] = (ws, h if braid else -1)
                if done(nw):
                    steps = []
                    cur = nw
                    while parent[cur] is not None:
                        prev, hh = parent[cur]
                        steps.append((hh, prev, cur))
                        cur = prev
                    steps.reverse()
                    return [(hh if hh >= 0 else None, new) for hh, _, new in steps]
                if len(parent) > self.max_states:
                    raise NonTermination("braid search exceeded its state budget")
                queue.append(nw)
        raise NonTermination("no sequence of braid moves reaches a normal form")


def _moves(ws: tuple[int, ...]):
    n = len(ws)
    for h in range(n - 1):
        if abs(ws[h] - ws[h + 1]) >= 2:
            yield h, ws[:h] + (ws[h + 1], ws[h]) + ws[h + 2:], False
    for h in range(n - 2):
        a, b, c = ws[h:h + 3]
        if a == c and abs(a - b) == 1:
            yield h, ws[:h] + (b, a, b) + ws[h + 3:], True


CROSS_SIGN = {"cross": 1, "cross-": -1, "xRB": 1, "xBR": 1}

_ENGINES: dict[int, Normalizer] = {}


def normalize_diagram(session: Session, src: ObjectWord, gens: Sequence[Gen]) -> Morphism:
    """Normal form of a diagram word by local rewriting (no Phi involved)."""
    eng = _ENGINES.get(id(session))
    if eng is None or eng.S is not session:
        eng = _ENGINES[id(session)] = Normalizer(session)
    return eng.normalize(tuple(src), list(gens))
