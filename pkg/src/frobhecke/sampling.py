"""Seeded random elements for property checks and verification reports."""

from __future__ import annotations

import random
from fractions import Fraction

from . import perms as P
from .category import Morphism, Session, black_count
from .polyalg import PolyElement, PolyRing
from .wreath import WreathElement, WreathRing

__all__ = ["rng_for", "random_coeff", "random_poly", "random_wreath", "random_morphism"]


def rng_for(seed: int, tag: str) -> random.Random:
    """Independent stream per named check, so adding a check never shifts another."""
    return random.Random(f"{seed}:{tag}")


def random_coeff(rng: random.Random) -> Fraction:
    num = rng.choice([-3, -2, -1, 1, 1, 2, 3])
    return Fraction(num, rng.choice([1, 1, 1, 2]))


def _exps(rng: random.Random, n: int, deg: int, laurent: bool) -> tuple[int, ...]:
    lo = -deg if laurent else 0
    return tuple(rng.randint(lo, deg) for _ in range(n))


def random_poly(ring: PolyRing, rng: random.Random, terms: int = 2, deg: int = 2) -> PolyElement:
    out = {}
    for _ in range(terms):
        word = tuple(rng.randrange(ring.A.dim) for _ in range(ring.n))
        key = (word, _exps(rng, ring.n, deg, ring.quantum))
        out[key] = out.get(key, 0) + random_coeff(rng)
    return ring.element(out)


def random_wreath(ring: WreathRing, rng: random.Random, terms: int = 2, deg: int = 2) -> WreathElement:
    perms = P.all_perms(ring.n)
    out = []
    for _ in range(terms):
        word = tuple(rng.randrange(ring.A.dim) for _ in range(ring.n))
        key = (word, _exps(rng, ring.n, deg, ring.variant == "quantum"), rng.choice(perms))
        out.append((key, random_coeff(rng)))
    return ring.from_terms(out)


def random_morphism(S: Session, src, tgt, rng: random.Random, terms: int = 2, deg: int = 1) -> Morphism:
    d = black_count(src)
    pol = S.pol(d)
    perms = P.all_perms(d)
    parts: dict = {}
    for _ in range(terms):
        w = rng.choice(perms)
        f = random_poly(pol, rng, 1, deg)
        parts[w] = parts[w] + f if w in parts else f
    return Morphism(S, src, tgt, parts)
