"""Command line: ``frobhecke <group> <command> [options]``.

Exit status is 0 on success, 1 when a verification fails (or the input
describes no valid algebra), and 2 for malformed input.  Errors are printed
as ``error[<module>.<Code>]: message`` on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from .category import (
    PathElement,
    Session,
    center_membership_path,
    compose,
    cyclotomic_iso,
    format_object,
    phi,
    shuffles,
)
from .errors import FrobHeckeError, InputError
from .frobenius import (
    FrobeniusAlgebra,
    change_trace,
    dual_basis,
    format_rational,
    load_algebra,
    nakayama,
    parse_rational,
)
from .grammar import (
    format_diagram,
    format_poly,
    format_wreath,
    parse_diagram,
    parse_label,
    parse_morphism,
    parse_object,
    parse_poly,
    parse_wreath,
)
from .polyalg import (
    DEGENERATE,
    QUANTUM,
    PinLabel,
    delta,
    demazure,
    is_pin_label,
    poly_ring,
    teleporter,
    uncertified_pin,
)
from .rewrite import normalize_diagram
from .verify import SUITES, VerifyConfig, run_verify
from .wreath import center_membership, cyclotomic_reduce, quotient_dim_oracle, wreath_ring


class Result:
    """What a command produced: a JSON-able payload, its text rendering and
    the exit status (1 when the command reports a failed check)."""

    def __init__(self, payload: dict, text: str, status: int = 0):
        self.payload = payload
        self.text = text
        self.status = status


# context

class Context:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        self._algebra: FrobeniusAlgebra | None = None

    @property
    def algebra(self) -> FrobeniusAlgebra:
        if self._algebra is None:
            src = getattr(self.args, "file", None) or self.args.algebra
            self._algebra = load_algebra(src)
        return self._algebra

    @property
    def variant(self) -> str:
        return QUANTUM if self.args.quantum else DEGENERATE

    @property
    def z(self) -> Fraction:
        if self.args.z is not None and not self.args.quantum:
            raise InputError("--z only makes sense with --quantum")
        return parse_rational(self.args.z) if self.args.z is not None else Fraction(0)

    def label_texts(self) -> list[str]:
        out = []
        for item in self.args.Q or []:
            out.extend(s.strip() for s in item.split(";") if s.strip())
        return out

    def labels(self):
        return [parse_label(t, self.algebra, self.variant) for t in self.label_texts()]

    def pins(self) -> list[PinLabel]:
        return [is_pin_label(q) for q in self.labels()]

    def session(self) -> Session:
        return Session(self.algebra, self.pins(), self.variant, self.z)

    def single_label(self, certify: bool) -> PinLabel:
        labels = self.labels()
        if len(labels) != 1:
            raise InputError("this command needs exactly one --Q")
        return is_pin_label(labels[0]) if certify else _lenient(labels[0])


def _lenient(q) -> PinLabel:
    try:
        return is_pin_label(q)
    except FrobHeckeError:
        return uncertified_pin(q)


def _vec(A: FrobeniusAlgebra, v) -> str:
    return A.show(v)


def _header(ctx: Context) -> dict:
    out = {"algebra": ctx.algebra.name, "variant": ctx.variant}
    if ctx.args.quantum:
        out["z"] = str(ctx.z)
    return out


# algebra

def cmd_algebra_validate(ctx: Context) -> Result:
    A = ctx.algebra
    info = {
        "name": A.name,
        "dim": A.dim,
        "labels": list(A.labels),
        "parity": list(A.parity),
        "trace_parity": A.eps,
        "symmetric": A.is_symmetric,
        "valid": True,
    }
    text = "\n".join([
        f"{A.name}: valid Frobenius superalgebra",
        f"dim          {A.dim}",
        f"basis        {' '.join(A.labels)}",
        f"parity       {' '.join(map(str, A.parity))}",
        f"trace parity {A.eps}",
        f"symmetric    {'yes' if A.is_symmetric else 'no'}",
    ])
    return Result(info, text)


def cmd_algebra_dual(ctx: Context) -> Result:
    A = ctx.algebra
    D = dual_basis(A)
    rows = {A.labels[i]: _vec(A, D[i]) for i in range(A.dim)}
    text = "\n".join(f"{lab}^v = {v}" for lab, v in rows.items())
    return Result({"algebra": A.name, "dual": rows}, text)


def cmd_algebra_nakayama(ctx: Context) -> Result:
    A = ctx.algebra
    psi, psi_inv = nakayama(A)
    mat = [[format_rational(c) for c in row] for row in psi]
    images = {A.labels[i]: _vec(A, psi[i]) for i in range(A.dim)}
    inverse = {A.labels[i]: _vec(A, psi_inv[i]) for i in range(A.dim)}
    text = "\n".join([f"psi({lab}) = {v}" for lab, v in images.items()]
                     + [f"psi^-1({lab}) = {v}" for lab, v in inverse.items()]
                     + [f"symmetric: {'yes' if A.is_symmetric else 'no'}"])
    return Result({"algebra": A.name, "psi": images, "psi_inverse": inverse, "matrix": mat,
                   "symmetric": A.is_symmetric}, text)


def cmd_algebra_change_trace(ctx: Context) -> Result:
    A = ctx.algebra
    values = [s.strip() for s in ctx.args.trace.split(",")]
    tc = change_trace(A, values)
    payload = {"algebra": A.name, "u": _vec(A, tc.u), "u_inverse": _vec(A, tc.u_inv), "new_trace_parity": tc.eps}
    text = f"u = {payload['u']}\nu^-1 = {payload['u_inverse']}\nnew trace parity {tc.eps}"
    return Result(payload, text)


# polynomials

def _poly(ctx: Context, text: str, n: int | None = None):
    return parse_poly(text, ctx.algebra, ctx.variant, n=n or ctx.args.n)


def cmd_pol_mul(ctx: Context) -> Result:
    f = _poly(ctx, ctx.args.lhs)
    g = _poly(ctx, ctx.args.rhs, f.n)
    out = format_poly(f * g)
    return Result({**_header(ctx), "n": f.n, "product": out}, out)


def cmd_pol_demazure(ctx: Context) -> Result:
    f = _poly(ctx, ctx.args.expr)
    out = format_poly(demazure(ctx.args.i, f))
    return Result({**_header(ctx), "i": ctx.args.i, "result": out}, out)


def cmd_pol_delta(ctx: Context) -> Result:
    f = _poly(ctx, ctx.args.expr)
    out = format_poly(delta(ctx.args.i, f))
    return Result({**_header(ctx), "i": ctx.args.i, "result": out}, out)


def cmd_pol_teleporter(ctx: Context) -> Result:
    n = ctx.args.n or 2
    t = teleporter(poly_ring(ctx.algebra, n, ctx.variant), ctx.args.i, ctx.args.j)
    out = format_poly(t)
    return Result({**_header(ctx), "n": n, "i": ctx.args.i, "j": ctx.args.j, "teleporter": out}, out)


# wreath products

def _wreath(ctx: Context, text: str, n: int | None = None):
    return parse_wreath(text, ctx.algebra, ctx.variant, ctx.z, n=n or ctx.args.n)


def cmd_wreath_mul(ctx: Context) -> Result:
    u = _wreath(ctx, ctx.args.lhs)
    v = _wreath(ctx, ctx.args.rhs, u.ring.n)
    out = format_wreath(u * v)
    return Result({**_header(ctx), "n": u.ring.n, "product": out}, out)


def cmd_wreath_center(ctx: Context) -> Result:
    u = _wreath(ctx, ctx.args.expr)
    ok = center_membership(u)
    return Result({**_header(ctx), "element": format_wreath(u), "central": ok},
                  "central" if ok else "not central")


def cmd_wreath_cyclo(ctx: Context) -> Result:
    u = _wreath(ctx, ctx.args.expr)
    Q = ctx.single_label(certify=False)
    out = format_wreath(cyclotomic_reduce(u, Q))
    return Result({**_header(ctx), "label": format_poly(Q.element), "certified": Q.certified,
                   "reduced": out}, out)


def cmd_wreath_dim_oracle(ctx: Context) -> Result:
    n = ctx.args.n or ctx.args.d or 1
    Q = ctx.single_label(certify=False)
    W = wreath_ring(ctx.algebra, n, ctx.variant, ctx.z)
    bound = ctx.args.bound
    dims = {b: quotient_dim_oracle(W, Q, b, warn=False) for b in (bound, bound + 1)}
    stable = dims[bound] == dims[bound + 1]
    payload = {**_header(ctx), "n": n, "label": format_poly(Q.element), "bound": bound,
               "dimension": dims[bound], "next_bound_dimension": dims[bound + 1], "stable": stable}
    text = f"dimension {dims[bound]} at bound {bound}, {dims[bound + 1]} at bound {bound + 1}"
    if not stable:
        text += " (not stabilised; raise --bound)"
    return Result(payload, text)


# categories

def cmd_cat_shuffles(ctx: Context) -> Result:
    level = len(ctx.label_texts())
    objs = [format_object(o) for o in shuffles(ctx.args.d or 0, level)]
    return Result({"d": ctx.args.d or 0, "level": level, "objects": objs}, "\n".join(objs))


def cmd_cat_compose(ctx: Context) -> Result:
    S = ctx.session()
    g = parse_morphism(ctx.args.g, S)
    f = parse_morphism(ctx.args.f, S)
    out = str(compose(g, f))
    return Result({**_header(ctx), "composite": out}, out)


def _diagram_or_morphism(ctx: Context, S: Session, text: str):
    if "->" in text:
        return parse_morphism(text, S)
    if not ctx.args.src:
        raise InputError("diagram words need --src <object>")
    return (parse_object(ctx.args.src), parse_diagram(text, S.A, S.quantum))


def cmd_cat_phi(ctx: Context) -> Result:
    S = ctx.session()
    item = _diagram_or_morphism(ctx, S, ctx.args.expr)
    if isinstance(item, tuple):
        image = phi(item, S)
    else:
        image = phi(item)
    out = format_wreath(image)
    return Result({**_header(ctx), "phi": out}, out)


def cmd_cat_normalize(ctx: Context) -> Result:
    S = ctx.session()
    if not ctx.args.src:
        raise InputError("normalize needs --src <object>")
    src = parse_object(ctx.args.src)
    gens = parse_diagram(ctx.args.expr, S.A, S.quantum)
    by_rewrite = normalize_diagram(S, src, gens)
    by_phi = S.from_word(src, gens)
    agree = by_rewrite == by_phi
    text = str(by_rewrite)
    if not agree:
        text += f"\nmismatch: Phi-transport gives {by_phi}"
    return Result({**_header(ctx), "diagram": format_diagram(gens, S.A, S.quantum),
                   "normal_form": str(by_rewrite), "phi_transport": str(by_phi), "agree": agree},
                  text, 0 if agree else 1)


def _path(ctx: Context, S: Session, texts: Sequence[str]) -> PathElement:
    ms = [parse_morphism(t, S) for t in texts]
    if not ms:
        raise InputError("a path element needs at least one block")
    return PathElement(S, ms[0].d, ms)


def cmd_cat_path_mul(ctx: Context) -> Result:
    S = ctx.session()
    U = _path(ctx, S, ctx.args.u or [])
    V = _path(ctx, S, ctx.args.v or [])
    W = U * V
    blocks = [str(m) for _, m in sorted(W.blocks.items())]
    return Result({**_header(ctx), "blocks": blocks}, "\n".join(blocks) or "0")


def cmd_cat_center(ctx: Context) -> Result:
    S = ctx.session()
    U = _path(ctx, S, ctx.args.u or [])
    ok = center_membership_path(U)
    return Result({**_header(ctx), "central": ok}, "central" if ok else "not central")


def cmd_cat_cyclo_iso(ctx: Context) -> Result:
    S = ctx.session()
    rep = cyclotomic_iso(S, ctx.args.d or 1, bound=ctx.args.bound)
    payload = {**_header(ctx), "d": rep.d, "label": rep.pin,
               "corner_pin_in_ideal": rep.corner_pin_in_ideal,
               "black_first_in_kernel": rep.black_first_in_kernel, "samples": rep.samples,
               "dim_level_zero": rep.dim_level_zero, "dim_level_one": rep.dim_level_one,
               "dim_expected": rep.dim_expected, "ok": rep.ok, "details": rep.details}
    text = "\n".join([
        f"pin on the corner lies in the ideal: {'yes' if rep.corner_pin_in_ideal else 'no'}",
        f"black-first composites reduce to 0:  {'yes' if rep.black_first_in_kernel else 'no'} ({rep.samples} samples)",
        f"quotient dimensions: level 0 {rep.dim_level_zero}, level 1 {rep.dim_level_one}, expected {rep.dim_expected}",
        "isomorphism verified" if rep.ok else "isomorphism NOT verified",
    ] + rep.details)
    return Result(payload, text, 0 if rep.ok else 1)


# verification

def cmd_verify(ctx: Context) -> Result:
    cfg = VerifyConfig(ctx.algebra, ctx.variant, ctx.z, ctx.args.d or 2, ctx.labels(),
                       ctx.args.seed, ctx.args.samples)
    report = run_verify(cfg, ctx.args.suite or None)
    return Result(report.to_json(), report.to_text(), 0 if report.ok else 1)


# parser

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--algebra", default="ground",
                   help="builtin name (ground, clifford_even, clifford_odd, grassmann, group[:n]) or a JSON file")
    p.add_argument("--quantum", action="store_true", help="work in the quantum (Hecke) variant")
    p.add_argument("--z", help="quantum parameter, a rational p/q")
    p.add_argument("--d", type=int, help="number of black strands")
    p.add_argument("--n", type=int, help="number of strands of polynomial and wreath elements")
    p.add_argument("--Q", action="append", help="pin label (repeatable, or ';'-separated)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    return p


def _cmd(sub, name: str, fn, common, help: str, extra: Callable | None = None):
    p = sub.add_parser(name, parents=[common], help=help)
    if extra:
        extra(p)
    p.set_defaults(_fn=fn)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="frobhecke", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    alg = groups.add_parser("algebra", help="Frobenius superalgebras").add_subparsers(dest="cmd", required=True)
    file_arg = lambda p: p.add_argument("file", nargs="?", help="algebra JSON file or builtin name")
    _cmd(alg, "validate", cmd_algebra_validate, common, "check all axioms", file_arg)
    _cmd(alg, "dual", cmd_algebra_dual, common, "left dual basis", file_arg)
    _cmd(alg, "nakayama", cmd_algebra_nakayama, common, "Nakayama automorphism", file_arg)

    def trace_args(p):
        file_arg(p)
        p.add_argument("--trace", required=True, help="new trace values, comma separated")
    _cmd(alg, "change-trace", cmd_algebra_change_trace, common, "u with tr'(a) = tr(au)", trace_args)

    pol = groups.add_parser("pol", help="polynomial algebras").add_subparsers(dest="cmd", required=True)
    two = lambda p: (p.add_argument("lhs"), p.add_argument("rhs"))

    def one_i(p):
        p.add_argument("expr")
        p.add_argument("--i", type=int, default=1, help="operator index (1-based)")
    _cmd(pol, "mul", cmd_pol_mul, common, "product of two elements", two)
    _cmd(pol, "demazure", cmd_pol_demazure, common, "Demazure operator", one_i)
    _cmd(pol, "delta", cmd_pol_delta, common, "quantum Demazure operator", one_i)

    def tele_args(p):
        p.add_argument("--i", type=int, default=1)
        p.add_argument("--j", type=int, default=2)
    _cmd(pol, "teleporter", cmd_pol_teleporter, common, "teleporter t_{i,j}", tele_args)

    wr = groups.add_parser("wreath", help="affine wreath product and Hecke algebras").add_subparsers(dest="cmd", required=True)
    one = lambda p: p.add_argument("expr")
    _cmd(wr, "mul", cmd_wreath_mul, common, "product in normal form", two)
    _cmd(wr, "center", cmd_wreath_center, common, "center membership", one)
    _cmd(wr, "cyclo", cmd_wreath_cyclo, common, "cyclotomic reduction by --Q", one)
    _cmd(wr, "dim-oracle", cmd_wreath_dim_oracle, common, "brute-force quotient dimension",
         lambda p: p.add_argument("--bound", type=int, default=3))

    cat = groups.add_parser("cat", help="higher-level categories").add_subparsers(dest="cmd", required=True)
    _cmd(cat, "shuffles", cmd_cat_shuffles, common, "objects for d black strands and the --Q labels")
    _cmd(cat, "compose", cmd_cat_compose, common, "g after f",
         lambda p: (p.add_argument("g"), p.add_argument("f")))
    src = lambda p: (p.add_argument("expr"), p.add_argument("--src", help="source object, e.g. '[. Q1]'"))
    _cmd(cat, "phi", cmd_cat_phi, common, "image in the wreath algebra", src)
    _cmd(cat, "normalize", cmd_cat_normalize, common, "normal form of a diagram word", src)
    uv = lambda p: (p.add_argument("--u", action="append", help="block of the left factor"),
                    p.add_argument("--v", action="append", help="block of the right factor"))
    _cmd(cat, "path-mul", cmd_cat_path_mul, common, "product of path algebra elements", uv)
    _cmd(cat, "center", cmd_cat_center, common, "center membership of a path element",
         lambda p: p.add_argument("--u", action="append", help="block"))
    _cmd(cat, "cyclo-iso", cmd_cat_cyclo_iso, common, "check the level-one cyclotomic isomorphism",
         lambda p: p.add_argument("--bound", type=int, default=3))

    def verify_args(p):
        p.add_argument("--samples", type=int, default=20, help="random samples per check")
        p.add_argument("--suite", action="append", choices=sorted(SUITES), help="restrict to a suite")
    v = groups.add_parser("verify", parents=[common], help="run the self-verification suites")
    verify_args(v)
    v.set_defaults(_fn=cmd_verify)
    return parser


def _origin(exc: BaseException) -> str:
    """Module of the innermost package frame that raised ``exc``."""
    tb = exc.__traceback__
    mod = "cli"
    while tb is not None:
        name = tb.tb_frame.f_globals.get("__name__", "")
        if name.startswith("frobhecke."):
            mod = name.split(".", 1)[1]
        tb = tb.tb_next
    return mod


def _render(res: Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(res.payload, indent=2, sort_keys=True)
    return res.text


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    ctx = Context(args)
    try:
        res = args._fn(ctx)
    except FrobHeckeError as exc:
        where = f"{_origin(exc)}.{exc.code}"
        if args.format == "json":
            print(json.dumps({"error": exc.code, "module": _origin(exc), "message": str(exc)}, sort_keys=True))
        print(f"error[{where}]: {exc}", file=sys.stderr)
        return exc.exit_code
    print(_render(res, args.format))
    return res.status


if __name__ == "__main__":
    sys.exit(main())
