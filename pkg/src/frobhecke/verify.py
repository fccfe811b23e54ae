"""Self-verification suites behind ``frobhecke verify``.

Each suite returns :class:`Check` rows.  A suite never raises: engine errors
become failing rows, and configurations a suite cannot handle become skips
with the reason spelled out.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

from . import perms as P
from .category import (
    BLACK,
    PathElement,
    Session,
    center_membership_path,
    compose,
    cyclotomic_iso,
    phi,
    phi_basis,
)
from .errors import FrobHeckeError
from .frobenius import FrobeniusAlgebra, algebra_to_json
from .grammar import format_poly
from .oracle import (
    higher_rep_apply,
    poly_rep_apply,
    product_oracle_check,
    relation_catalog,
    wreath_relation_catalog,
)
from .polyalg import (
    DEGENERATE,
    QUANTUM,
    PinLabel,
    PolyElement,
    delta,
    demazure,
    is_pin_label,
    poly_ring,
    uncertified_pin,
)
from .rewrite import normalize_diagram
from .sampling import random_morphism, random_poly, random_wreath, rng_for
from .wreath import (
    center_membership,
    cyclotomic_reduce,
    quotient_dim_oracle,
    wreath_ring,
)

__all__ = ["Check", "VerifyConfig", "VerifyReport", "run_verify", "SUITES"]

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    status: str
    detail: str = ""


@dataclass
class VerifyConfig:
    algebra: FrobeniusAlgebra
    variant: str = DEGENERATE
    z: Fraction = Fraction(0)
    d: int = 2
    labels: Sequence[PolyElement] = ()
    seed: int = 0
    samples: int = 20

    @property
    def quantum(self) -> bool:
        return self.variant == QUANTUM

    def describe(self) -> dict:
        return {
            "algebra": algebra_to_json(self.algebra),
            "variant": self.variant,
            "z": str(self.z),
            "d": self.d,
            "labels": [format_poly(q) for q in self.labels],
            "seed": self.seed,
            "samples": self.samples,
        }

    def digest(self) -> str:
        blob = json.dumps(self.describe(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass
class VerifyReport:
    config: VerifyConfig
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, SKIP: 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def to_json(self) -> dict:
        cfg = self.config.describe()
        return {
            "algebra": cfg["algebra"]["name"],
            "variant": cfg["variant"],
            "z": cfg["z"],
            "d": cfg["d"],
            "labels": cfg["labels"],
            "seed": cfg["seed"],
            "samples": cfg["samples"],
            "config_hash": self.config.digest(),
            "checks": [asdict(c) for c in self.checks],
            "summary": self.counts(),
            "ok": self.ok,
        }

    def to_text(self) -> str:
        cfg = self.config
        A = cfg.algebra
        lines = [
            f"algebra   {A.name} (dim {A.dim}, trace parity {A.eps}, symmetric {'yes' if A.is_symmetric else 'no'})",
            f"variant   {cfg.variant}" + (f" z={cfg.z}" if cfg.quantum else ""),
            f"d         {cfg.d}",
            f"pins      {', '.join(format_poly(q) for q in cfg.labels) or '-'}",
            f"seed      {cfg.seed}",
            f"samples   {cfg.samples}",
            f"config    {cfg.digest()}",
            "",
        ]
        for c in self.checks:
            tail = f"  {c.detail}" if c.detail else ""
            lines.append(f"[{c.status}] {c.suite}/{c.name}{tail}")
        n = self.counts()
        lines.append("")
        lines.append(f"{n[PASS]} passed, {n[FAIL]} failed, {n[SKIP]} skipped")
        return "\n".join(lines)


def _guard(suite: str, name: str, fn: Callable[[], tuple[bool, str] | bool]) -> Check:
    try:
        res = fn()
    except FrobHeckeError as exc:
        return Check(suite, name, FAIL, f"{type(exc).__name__}: {exc}")
    ok, detail = res if isinstance(res, tuple) else (res, "")
    return Check(suite, name, PASS if ok else FAIL, detail)


# algebra

def frobenius_suite(cfg: VerifyConfig) -> list[Check]:
    A = cfg.algebra
    m = A.dim
    B = [A.basis(i) for i in range(m)]
    dual = [A.dual(i) for i in range(m)]

    def duality():
        bad = [(i, j) for i in range(m) for j in range(m)
               if A.tr(A.mul(dual[i], B[j])) != (1 if i == j else 0)]
        return not bad, f"off at {bad[:3]}" if bad else ""

    def expansion():
        for a in B:
            left = A.zero()
            right = A.zero()
            for i in range(m):
                left = A.add(left, A.scale(A.tr(A.mul(dual[i], a)), B[i]))
                right = A.add(right, A.scale(A.tr(A.mul(a, B[i])), dual[i]))
            if left != a or right != a:
                return False
        return True

    def nakayama():
        for i, j in product(range(m), repeat=2):
            sign = -1 if A.parity[i] and A.parity[j] else 1
            if A.tr(A.mul(B[i], B[j])) != sign * A.tr(A.mul(B[j], A.psi(B[i]))):
                return False, f"fails at ({A.labels[i]}, {A.labels[j]})"
        return True

    def multiplicative():
        return all(A.psi(A.mul(B[i], B[j])) == A.mul(A.psi(B[i]), A.psi(B[j]))
                   for i, j in product(range(m), repeat=2))

    def double_dual():
        # left dual basis of the dual basis, solved from tr(e_i dual_j) = delta
        from . import _linalg
        G = [[A.tr(A.mul(B[k], dual[j])) for k in range(m)] for j in range(m)]
        for i in range(m):
            rhs = [Fraction(int(i == j)) for j in range(m)]
            coeffs = _linalg.solve(G, rhs)
            dd = tuple(coeffs)
            sign = -1 if (A.parity[i] + A.eps * A.parity[i]) % 2 else 1
            want = A.scale(sign, A.psi(B[i], -1))
            if dd != want:
                return False, f"fails at {A.labels[i]}"
        return True

    def dual_parity():
        return all(A.parity_of(dual[i]) == (A.parity[i] + A.eps) % 2 for i in range(m))

    return [
        _guard("frobenius", "dual-basis", duality),
        _guard("frobenius", "dual-parity", dual_parity),
        _guard("frobenius", "expansion", expansion),
        _guard("frobenius", "nakayama", nakayama),
        _guard("frobenius", "nakayama-multiplicative", multiplicative),
        _guard("frobenius", "double-dual", double_dual),
    ]


def teleporter_suite(cfg: VerifyConfig) -> list[Check]:
    A = cfg.algebra
    R = poly_ring(A, 2, cfg.variant)
    t12, t21 = R.tele(0, 1), R.tele(1, 0)

    def run():
        for a in range(A.dim):
            s = -1 if A.eps and A.parity[a] else 1
            a1, a2 = R.token(1, a), R.token(2, a)
            psi_a = A.psi(A.basis(a))
            pa1, pa2 = R.token(1, psi_a), R.token(2, psi_a)
            rows = {
                "upper-left": a1 * t12 == t12 * a2 * s,
                "upper-right": t12 * pa1 == a2 * t12 * s,
                "lower-left": t21 * a1 == a2 * t21 * s,
                "lower-right": a1 * t21 == t21 * pa2 * s,
            }
            bad = [k for k, v in rows.items() if not v]
            if bad:
                return False, f"{A.labels[a]}: {', '.join(bad)}"
        return True

    return [_guard("teleporter", "teleportation", run)]


# polynomial operators

def demazure_suite(cfg: VerifyConfig) -> list[Check]:
    A = cfg.algebra
    n = max(2, min(cfg.d, 3))
    R = poly_ring(A, n, cfg.variant)
    out = []
    if cfg.quantum:
        def geometric():
            rng = rng_for(cfg.seed, "delta")
            for _ in range(cfg.samples):
                i0 = rng.randrange(n - 1)
                word = tuple(rng.randrange(A.dim) for _ in range(n))
                exps = tuple(rng.randint(-4, 4) for _ in range(n))
                a = R.monomial(word, (0,) * n)
                p = R.element({(w, exps): c for (w, _), c in R.one().terms.items()})
                lhs = (R.x(i0 + 1) - R.x(i0 + 2)) * delta(i0 + 1, a * p)
                rhs = R.tele(i0, i0 + 1) * a * R.x(i0 + 2) * (R.swap(i0, p) - p)
                if lhs != rhs:
                    return False, f"i={i0 + 1}, word={word}, exps={exps}"
            return True

        out.append(_guard("demazure", "delta-geometric-sum", geometric))
        out.append(_guard("demazure", "delta-kills-tokens",
                          lambda: all(delta(1, R.token(1, a)).is_zero() for a in range(A.dim))))
        return out

    def generators():
        for i in range(1, n):
            for j in range(1, n + 1):
                want = R.tele(i - 1, i) if j == i else -R.tele(i, i - 1) if j == i + 1 else R.zero()
                if demazure(i, R.x(j)) != want:
                    return False, f"d_{i}(x_{j})"
            if any(not demazure(i, R.token(1, a)).is_zero() for a in range(A.dim)):
                return False, f"d_{i} on a token"
        return True

    def leibniz():
        rng = rng_for(cfg.seed, "leibniz")
        for _ in range(cfg.samples * 5):
            i = rng.randrange(1, n)
            f = random_poly(R, rng, 1, 2)
            g = random_poly(R, rng, 1, 2)
            if demazure(i, f * g) != demazure(i, f) * g + R.swap(i - 1, f) * demazure(i, g):
                return False, f"i={i}, f={f}, g={g}"
        return True

    def kernel():
        samples = _symmetric_central_samples(cfg, R)
        for tag, f in samples:
            for i in range(1, n):
                if not demazure(i, f).is_zero():
                    return False, f"d_{i}({tag}) != 0"
        return True, f"{len(samples)} samples"

    out.append(_guard("demazure", "generator-values", generators))
    out.append(_guard("demazure", "leibniz-split", leibniz))
    out.append(_guard("demazure", "symmetric-central-kernel", kernel))
    for q in _certified(cfg):
        def opposite(q=q):
            Q1, Q2 = q.place(R, 1), q.place(R, 2)
            return demazure(1, Q1) == -demazure(1, Q2)
        out.append(_guard("demazure", f"opposite-pins[{format_poly(q.element)}]", opposite))
    return out


def _symmetric_central_samples(cfg: VerifyConfig, R) -> list[tuple[str, PolyElement]]:
    """Candidate symmetric elements, kept when they are central."""
    from .polyalg import is_symmetric_central
    n = R.n
    cands = []
    for k in (1, 2):
        cands.append((f"p_{k}", sum((R.x(i, k) for i in range(1, n + 1)), R.zero())))
    cands.append(("e_n", _prod(R.x(i) for i in range(1, n + 1))))
    for q in _certified(cfg):
        lab = format_poly(q.element)
        cands.append((f"sum Q_i [{lab}]", sum((q.place(R, i) for i in range(1, n + 1)), R.zero())))
        cands.append((f"prod Q_i [{lab}]", _prod(q.place(R, i) for i in range(1, n + 1))))
    return [(t, f) for t, f in cands if is_symmetric_central(f)]


def _prod(items):
    it = iter(items)
    out = next(it)
    for f in it:
        out = out * f
    return out


def _certified(cfg: VerifyConfig) -> list[PinLabel]:
    out = []
    for q in cfg.labels:
        try:
            out.append(is_pin_label(q))
        except FrobHeckeError:
            pass
    return out


# wreath products

def wreath_suite(cfg: VerifyConfig) -> list[Check]:
    A = cfg.algebra
    out = []
    for n in range(1, max(2, min(cfg.d, 3)) + 1):
        W = wreath_ring(A, n, cfg.variant, cfg.z)

        def catalog(W=W):
            rep = wreath_relation_catalog(W)
            return rep.ok, "; ".join(rep.failures()[:3]) or f"{len(rep.rows)} relations"
        out.append(_guard("wreath", f"relations[n={n}]", catalog))

    n = max(2, min(cfg.d, 3))
    W = wreath_ring(A, n, cfg.variant, cfg.z)

    def assoc():
        rng = rng_for(cfg.seed, "assoc")
        for _ in range(cfg.samples):
            u, v, w = (random_wreath(W, rng, 1, 1) for _ in range(3))
            if (u * v) * w != u * (v * w):
                return False, f"u={u}; v={v}; w={w}"
        return True
    out.append(_guard("wreath", "associativity", assoc))

    if cfg.quantum:
        def txt():
            T, X1, X2 = W.crossing(1), W.x(1), W.x(2)
            return T * X1 * T == X2
        out.append(_guard("wreath", "T1 X1 T1 = X2", txt))

    def center():
        G = wreath_ring(A, 2, cfg.variant, cfg.z)
        gens = [G.token(i, a) for i in (1, 2) for a in range(A.dim)]
        gens += [G.x(1), G.x(2), G.crossing(1)]
        cands = [G.from_poly(f) for _, f in _symmetric_central_samples(cfg, G.pol)]
        for u in cands:
            if not center_membership(u):
                return False, f"rejected {u}"
            if any(u * g != g * u for g in gens):
                return False, f"{u} accepted but does not commute"
        if center_membership(G.crossing(1)):
            return False, "accepted the crossing"
        if center_membership(G.x(1)):
            return False, "accepted x_1"
        return True, f"{len(cands)} central samples"
    out.append(_guard("wreath", "center", center))
    return out


# oracle

def oracle_suite(cfg: VerifyConfig) -> list[Check]:
    if cfg.quantum:
        return [Check("oracle", "polynomial-representation", SKIP,
                      "no polynomial representation is available for the quantum variant")]
    A = cfg.algebra

    def products():
        rng = rng_for(cfg.seed, "oracle")
        checked = 0
        for _ in range(cfg.samples):
            n = rng.choice([1, 2, 2, 3]) if cfg.d >= 3 else rng.choice([1, 2])
            W = wreath_ring(A, n)
            terms, deg = (1, 1) if n == 3 else (2, 2)
            u, v = random_wreath(W, rng, terms, deg), random_wreath(W, rng, terms, deg)
            res = product_oracle_check(u, v)
            checked += res.checked
            if not res:
                return False, res.counterexample or ""
        return True, f"{checked} test vectors"
    out = [_guard("oracle", "product", products)]

    pins = _certified(cfg)
    if len(pins) != len(cfg.labels):
        out.append(Check("oracle", "higher-representation", SKIP, "some labels are not pin labels"))
        return out
    S = Session(A, pins)
    d = max(1, min(cfg.d, 2))

    def higher():
        rng = rng_for(cfg.seed, "higher")
        objs = S.objects(d)
        pol = S.pol(d)
        from .oracle import test_vectors as vectors
        for _ in range(cfg.samples):
            src, tgt = rng.choice(objs), rng.choice(objs)
            f = random_morphism(S, src, tgt, rng)
            for v in vectors(pol, 2)[:2] + [random_poly(pol, rng)]:
                if higher_rep_apply(f, v) != poly_rep_apply(phi(f), v):
                    return False, f"f={f}"
        return True
    out.append(_guard("oracle", "higher-representation", higher))
    return out


# categories

def category_suite(cfg: VerifyConfig) -> list[Check]:
    A = cfg.algebra
    pins = _certified(cfg)
    if len(pins) != len(cfg.labels):
        bad = [format_poly(q) for q in cfg.labels if not any(p.element == q for p in pins)]
        return [Check("category", "all", SKIP, f"not pin labels over {A.name}: {', '.join(bad)}")]
    S = Session(A, pins, cfg.variant, cfg.z)
    d = max(1, min(cfg.d, 2))
    objs = S.objects(d)
    out = []

    def relations():
        rep = relation_catalog(S)
        return rep.ok, "; ".join(rep.failures()[:3]) or f"{len(rep.rows)} relations"
    out.append(_guard("category", "relations", relations))

    def triangular():
        for src, tgt in product(objs, repeat=2):
            phi_basis(S, src, tgt)
        return True, f"{len(objs) ** 2} hom spaces"
    out.append(_guard("category", "phi-basis", triangular))

    def functorial():
        rng = rng_for(cfg.seed, "functor")
        for _ in range(cfg.samples):
            a, b, c = (rng.choice(objs) for _ in range(3))
            f = random_morphism(S, a, b, rng)
            g = random_morphism(S, b, c, rng)
            if phi(compose(g, f)) != phi(g) * phi(f):
                return False, f"g={g}; f={f}"
        return True
    out.append(_guard("category", "functoriality", functorial))

    def agreement():
        rng = rng_for(cfg.seed, "agree")
        perms = P.all_perms(d)
        for _ in range(cfg.samples):
            a, b, c = (rng.choice(objs) for _ in range(3))
            u, v = rng.choice(perms), rng.choice(perms)
            word = list(S.canonical(a, b, u)) + list(S.canonical(b, c, v))
            via_phi = compose(S.basis_morphism(b, c, v), S.basis_morphism(a, b, u))
            if normalize_diagram(S, a, word) != via_phi:
                return False, f"{a} -> {b} -> {c} with {u}, {v}"
        return True
    out.append(_guard("category", "compose-vs-rewrite", agreement))

    def path():
        rng = rng_for(cfg.seed, "path")
        one = PathElement.identity(S, d)
        for _ in range(max(3, cfg.samples // 4)):
            U = PathElement(S, d, [random_morphism(S, rng.choice(objs), rng.choice(objs), rng) for _ in range(2)])
            V = PathElement(S, d, [random_morphism(S, rng.choice(objs), rng.choice(objs), rng) for _ in range(2)])
            if one * U != U or U * one != U:
                return False, "sum of idempotents is not the identity"
            MU, MV, MUV = U.matrix(), V.matrix(), (U * V).matrix()
            W = S.wreath(d)
            for t, s in product(objs, repeat=2):
                want = W.zero()
                for j in objs:
                    if (t, j) in MU and (j, s) in MV:
                        want = want + MU[(t, j)] * MV[(j, s)]
                if MUV.get((t, s), W.zero()) != want:
                    return False, f"block ({s} -> {t})"
        return True
    out.append(_guard("category", "path-matrix", path))

    def corner():
        rng = rng_for(cfg.seed, "corner")
        omega = tuple(range(1, S.level + 1)) + (BLACK,) * d
        W = S.wreath(d)
        for _ in range(cfg.samples):
            u, v = random_wreath(W, rng, 2, 1), random_wreath(W, rng, 2, 1)
            mu, mv = S.transport(omega, omega, u), S.transport(omega, omega, v)
            if compose(mu, mv) != S.transport(omega, omega, u * v):
                return False, f"u={u}; v={v}"
        return True
    out.append(_guard("category", "corner", corner))

    def higher_center():
        pol = S.pol(d)
        cands = [f for _, f in _symmetric_central_samples(cfg, pol)]
        for f in cands:
            U = PathElement(S, d, [S.identity(i) for i in objs]) if f == pol.one() else \
                PathElement(S, d, [S.basis_morphism(i, i, P.identity(d), f) for i in objs])
            if not center_membership_path(U):
                return False, f"rejected {format_poly(f)}"
        if len(objs) > 1 and center_membership_path(PathElement.idempotent(S, objs[0])):
            return False, "accepted a single idempotent"
        return True, f"{len(cands)} central samples"
    out.append(_guard("category", "center", higher_center))
    return out


# cyclotomic quotients

def cyclotomic_suite(cfg: VerifyConfig) -> list[Check]:
    A = cfg.algebra
    if len(cfg.labels) != 1:
        return [Check("cyclotomic", "all", SKIP, "needs exactly one label")]
    raw = cfg.labels[0]
    try:
        Q = is_pin_label(raw)
    except FrobHeckeError:
        Q = uncertified_pin(raw)
    if not Q.is_monic():
        return [Check("cyclotomic", "all", SKIP, "label is not monic")]
    d = max(1, min(cfg.d, 2))
    W = wreath_ring(A, d, cfg.variant, cfg.z)
    out = []

    def idempotent():
        rng = rng_for(cfg.seed, "cyclo")
        for _ in range(cfg.samples):
            u = random_wreath(W, rng, 2, 3)
            r = cyclotomic_reduce(u, Q)
            if cyclotomic_reduce(r, Q) != r:
                return False, f"u={u}"
        return True
    out.append(_guard("cyclotomic", "reduce-idempotent", idempotent))

    span = Q.top - Q.bottom if cfg.quantum else Q.top
    expected = A.dim ** d * span ** d * len(P.all_perms(d))

    def dims():
        b = span + 1
        lo = quotient_dim_oracle(W, Q, b, warn=False)
        hi = quotient_dim_oracle(W, Q, b + 1, warn=False)
        return lo == hi == expected, f"oracle {lo} at bound {b}, {hi} at bound {b + 1}; expected {expected}"
    out.append(_guard("cyclotomic", "quotient-dimension", dims))

    if not Q.certified:
        out.append(Check("cyclotomic", "level-one-iso", SKIP, "label is not a pin label"))
        return out
    S = Session(A, [Q], cfg.variant, cfg.z)

    def iso():
        rep = cyclotomic_iso(S, d, bound=span + 1, max_samples=4 * cfg.samples)
        return rep.ok, (f"dims {rep.dim_level_zero}/{rep.dim_level_one}/{rep.dim_expected}, "
                        f"{rep.samples} composites") + ("; " + rep.details[0] if rep.details else "")
    out.append(_guard("cyclotomic", "level-one-iso", iso))
    return out


SUITES = {
    "frobenius": frobenius_suite,
    "teleporter": teleporter_suite,
    "demazure": demazure_suite,
    "wreath": wreath_suite,
    "oracle": oracle_suite,
    "category": category_suite,
    "cyclotomic": cyclotomic_suite,
}


def run_verify(cfg: VerifyConfig, suites: Sequence[str] | None = None) -> VerifyReport:
    report = VerifyReport(cfg)
    for name in suites or SUITES:
        report.checks.extend(SUITES[name](cfg))
    return report
