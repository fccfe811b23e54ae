"""Permutations of {0, ..., n-1} in one-line notation.

``w[k]`` is the image of ``k``; products compose right to left, so
``compose(u, v)[k] == u[v[k]]``.  Simple transpositions are indexed from 0:
``s(i)`` swaps ``i`` and ``i + 1``.

>>> reduced_word((2, 1, 0))
(0, 1, 0)
>>> length((1, 2, 0))
2
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def s(i: int, n: int) -> Perm:
    w = list(range(n))
    w[i], w[i + 1] = w[i + 1], w[i]
    return tuple(w)


def compose(u: Perm, v: Perm) -> Perm:
    return tuple(u[k] for k in v)


def inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for k, wk in enumerate(w):
        out[wk] = k
    return tuple(out)


def length(w: Perm) -> int:
    n = len(w)
    return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])


def right_descent(w: Perm, i: int) -> bool:
    """True when l(w s_i) < l(w)."""
    return w[i] > w[i + 1]


def left_descent(w: Perm, i: int) -> bool:
    """True when l(s_i w) < l(w)."""
    inv = inverse(w)
    return inv[i] > inv[i + 1]


def times_s_right(w: Perm, i: int) -> Perm:
    out = list(w)
    out[i], out[i + 1] = out[i + 1], out[i]
    return tuple(out)


def times_s_left(i: int, w: Perm) -> Perm:
    return tuple(i + 1 if x == i else i if x == i + 1 else x for x in w)


@lru_cache(maxsize=None)
def reduced_word(w: Perm) -> tuple[int, ...]:
    """Reduced word ``(i1, ..., ik)`` with ``w = s_i1 ... s_ik``; at each step the
    smallest right descent is peeled off the right end."""
    for i in range(len(w) - 1):
        if w[i] > w[i + 1]:
            return reduced_word(times_s_right(w, i)) + (i,)
    return ()


def from_word(word, n: int) -> Perm:
    w = identity(n)
    for i in word:
        w = times_s_right(w, i)
    return w


def all_perms(n: int) -> list[Perm]:
    return [tuple(p) for p in permutations(range(n))]
