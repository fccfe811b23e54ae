"""Finite-dimensional Frobenius superalgebras over Q.

An algebra is given by a homogeneous basis ``b_0, ..., b_{m-1}``, structure
constants ``b_i b_j = sum_k c[i][j][k] b_k``, a unit vector and the values
``t_i = tr(b_i)`` of a homogeneous nondegenerate trace.  Validation derives
and caches everything downstream code needs: the Gram matrix, the left dual
basis, the Nakayama automorphism and the trace parity.

>>> A = builtin("clifford_even")
>>> A.eps, A.is_symmetric
(0, False)
>>> A.psi_matrix[1]
(Fraction(0, 1), Fraction(-1, 1))
>>> [A.show(A.dual(i)) for i in range(2)]
['1', 'c']
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Any, Mapping, Sequence

from . import _linalg
from .errors import (
    BadCayleyTable,
    MalformedAlgebra,
    DegenerateTrace,
    InhomogeneousTrace,
    InputError,
    InternalInconsistency,
    NoSolution,
    NoUnit,
    NotAssociative,
    ParityViolation,
)

__all__ = [
    "FrobeniusAlgebra",
    "TraceChange",
    "validate",
    "dual_basis",
    "nakayama",
    "builtin",
    "BUILTINS",
    "change_trace",
    "load_algebra",
    "algebra_to_json",
    "parse_rational",
    "format_rational",
]

Vector = tuple[Fraction, ...]
ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(x: Any) -> Fraction:
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise InputError(f"not a rational: {x!r}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class FrobeniusAlgebra:
    """A validated Frobenius superalgebra.  Build one with :func:`validate`."""

    def __init__(self, name: str, labels: Sequence[str], parity: Sequence[int],
                 table: Sequence[Sequence[Mapping[int, Fraction]]], unit: Sequence[Fraction],
                 trace: Sequence[Fraction]):
        self.name = name
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.parity = tuple(int(p) % 2 for p in parity)
        # table[i][j] = ((k, c), ...) with zero entries dropped
        self.table = tuple(tuple(tuple(sorted((k, v) for k, v in cell.items() if v))
                                 for cell in row) for row in table)
        self.unit: Vector = tuple(Fraction(u) for u in unit)
        self.trace: Vector = tuple(Fraction(t) for t in trace)
        self._check_structure()
        self.eps = self._trace_parity()
        m = self.dim
        self.gram = tuple(tuple(self.tr(self.mul_basis(i, j)) for j in range(m)) for i in range(m))
        D = _linalg.inverse([list(r) for r in self.gram])
        if D is None:
            raise DegenerateTrace(f"Gram matrix of {name!r} is singular")
        self.dual_matrix = tuple(tuple(r) for r in D)
        self.psi_matrix, self.psi_inv_matrix = self._nakayama()
        self.is_symmetric = all(self.psi_matrix[i][j] == int(i == j)
                                for i in range(m) for j in range(m))
        self._psi_pow: dict[int, tuple[Vector, ...]] = {0: tuple(self.basis(i) for i in range(m)),
                                                         1: self.psi_matrix,
                                                         -1: self.psi_inv_matrix}
        self._check_nakayama()

    # vectors

    def basis(self, i: int) -> Vector:
        return tuple(ONE if k == i else ZERO for k in range(self.dim))

    def zero(self) -> Vector:
        return (ZERO,) * self.dim

    def add(self, u: Vector, v: Vector) -> Vector:
        return tuple(a + b for a, b in zip(u, v))

    def scale(self, c: Fraction, u: Vector) -> Vector:
        return tuple(c * a for a in u)

    def mul_basis(self, i: int, j: int) -> Vector:
        out = [ZERO] * self.dim
        for k, c in self.table[i][j]:
            out[k] += c
        return tuple(out)

    def mul(self, u: Vector, v: Vector) -> Vector:
        out = [ZERO] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, c in self.table[i][j]:
                    out[k] += a * b * c
        return tuple(out)

    def tr(self, u: Vector) -> Fraction:
        return sum((a * t for a, t in zip(u, self.trace)), ZERO)

    def parity_of(self, u: Vector) -> int | None:
        """Parity of a homogeneous vector; None if zero or inhomogeneous."""
        ps = {self.parity[i] for i, a in enumerate(u) if a}
        return ps.pop() if len(ps) == 1 else None

    def dual(self, i: int) -> Vector:
        return self.dual_matrix[i]

    def psi(self, u: Vector, power: int = 1) -> Vector:
        rows = self.psi_power(power)
        out = self.zero()
        for i, a in enumerate(u):
            if a:
                out = self.add(out, self.scale(a, rows[i]))
        return out

    def psi_power(self, k: int) -> tuple[Vector, ...]:
        """Rows of the matrix of psi^k (k may be negative)."""
        if k not in self._psi_pow:
            step = 1 if k > 0 else -1
            prev = self.psi_power(k - step)
            base = self._psi_pow[step]
            rows = []
            for i in range(self.dim):
                acc = self.zero()
                for j, a in enumerate(prev[i]):
                    if a:
                        acc = self.add(acc, self.scale(a, base[j]))
                rows.append(acc)
            self._psi_pow[k] = tuple(rows)
        return self._psi_pow[k]

    def left_matrix(self, u: Vector) -> list[list[Fraction]]:
        """Row j is u * b_j."""
        return [list(self.mul(u, self.basis(j))) for j in range(self.dim)]

    def right_matrix(self, u: Vector) -> list[list[Fraction]]:
        return [list(self.mul(self.basis(j), u)) for j in range(self.dim)]

    def is_regular(self, u: Vector) -> bool:
        """Neither a left nor a right zero divisor (exact rank test)."""
        m = self.dim
        return _linalg.rank(self.left_matrix(u)) == m and _linalg.rank(self.right_matrix(u)) == m

    def inverse(self, u: Vector) -> Vector | None:
        """Two-sided inverse of u, or None."""
        cols = self.left_matrix(u)  # row j: u b_j, so u x = sum_j x_j (u b_j)
        x = _linalg.solve(_linalg.transpose(cols), list(self.unit))
        if x is None:
            return None
        x = tuple(x)
        return x if self.mul(x, u) == self.unit else None

    def is_central(self, u: Vector) -> bool:
        """Supercommutes with every basis element (u homogeneous or zero)."""
        p = self.parity_of(u)
        if p is None:
            return not any(u)
        for j in range(self.dim):
            s = -1 if (p and self.parity[j]) else 1
            b = self.basis(j)
            if self.mul(u, b) != self.scale(Fraction(s), self.mul(b, u)):
                return False
        return True

    def show(self, u: Vector) -> str:
        parts = []
        for i, a in enumerate(u):
            if not a:
                continue
            if a == 1:
                parts.append(self.labels[i])
            elif a == -1:
                parts.append("-" + self.labels[i])
            else:
                parts.append(f"{format_rational(a)}*{self.labels[i]}")
        return " + ".join(parts).replace("+ -", "- ") or "0"

    def __repr__(self) -> str:
        return f"FrobeniusAlgebra({self.name!r}, dim={self.dim}, eps={self.eps})"

    # validation

    def _check_structure(self) -> None:
        m = self.dim
        if m < 1:
            raise MalformedAlgebra("algebra must have positive dimension")
        if len(set(self.labels)) != m:
            raise MalformedAlgebra("basis labels must be distinct")
        if len(self.parity) != m or len(self.unit) != m or len(self.trace) != m:
            raise MalformedAlgebra("parity, unit and trace must have length dim")
        if len(self.table) != m or any(len(r) != m for r in self.table):
            raise MalformedAlgebra("multiplication table must be dim x dim")
        for i, j in product(range(m), repeat=2):
            for k, c in self.table[i][j]:
                if not 0 <= k < m:
                    raise MalformedAlgebra(f"product b{i}*b{j} refers to index {k}")
                if self.parity[k] != (self.parity[i] + self.parity[j]) % 2:
                    raise ParityViolation(f"b{i}*b{j} has a component on b{k} of the wrong parity")
        for i, j, k in product(range(m), repeat=3):
            lhs = self.mul(self.mul_basis(i, j), self.basis(k))
            rhs = self.mul(self.basis(i), self.mul_basis(j, k))
            if lhs != rhs:
                raise NotAssociative(f"(b{i}b{j})b{k} != b{i}(b{j}b{k})")
        if self.parity_of(self.unit) != 0:
            raise NoUnit("unit vector must be a nonzero even element")
        for i in range(m):
            b = self.basis(i)
            if self.mul(self.unit, b) != b or self.mul(b, self.unit) != b:
                raise NoUnit(f"unit vector does not act as identity on b{i}")

    def _trace_parity(self) -> int:
        support = [i for i, t in enumerate(self.trace) if t]
        if not support:
            raise DegenerateTrace("trace is identically zero")
        ps = {self.parity[i] for i in support}
        if len(ps) > 1:
            even = [i for i in support if self.parity[i] == 0]
            odd = [i for i in support if self.parity[i] == 1]
            raise InhomogeneousTrace(f"trace is nonzero on even b{even} and odd b{odd}")
        return ps.pop()

    def _nakayama(self) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
        # tr(b_i b_j) = (-1)^{p_i p_j} tr(b_j psi(b_i)) = (-1)^{p_i p_j} sum_k Psi_ik G_jk
        m = self.dim
        G = [list(r) for r in self.gram]
        S = [[G[i][j] * (-1 if self.parity[i] and self.parity[j] else 1) for j in range(m)]
             for i in range(m)]
        GTinv = _linalg.inverse(_linalg.transpose(G))
        Psi = _linalg.matmul(S, GTinv)
        Psi_inv = _linalg.inverse(Psi)
        if Psi_inv is None:
            raise InternalInconsistency("Nakayama matrix is singular")
        return tuple(tuple(r) for r in Psi), tuple(tuple(r) for r in Psi_inv)

    def _check_nakayama(self) -> None:
        m = self.dim
        for i in range(m):
            if self.parity_of(self.psi_matrix[i]) not in (None, self.parity[i]) or not any(self.psi_matrix[i]):
                raise InternalInconsistency(f"psi(b{i}) is not of the parity of b{i}")
        for i, j in product(range(m), repeat=2):
            sign = -1 if self.parity[i] and self.parity[j] else 1
            lhs = self.gram[i][j]
            rhs = sign * self.tr(self.mul(self.basis(j), self.psi_matrix[i]))
            if lhs != rhs:
                raise InternalInconsistency(f"Nakayama condition fails on (b{i}, b{j})")
            if self.psi(self.mul_basis(i, j)) != self.mul(self.psi_matrix[i], self.psi_matrix[j]):
                raise InternalInconsistency(f"psi is not multiplicative on (b{i}, b{j})")
        for i in range(m):
            if self.tr(self.mul(self.dual(i), self.basis(i))) != 1:
                raise InternalInconsistency("dual basis check failed")


def _table_from_json(mult: Any, m: int) -> list[list[dict[int, Fraction]]]:
    if not isinstance(mult, list) or len(mult) != m:
        raise MalformedAlgebra("mult must be a dim x dim list")
    out = []
    for i, row in enumerate(mult):
        if not isinstance(row, list) or len(row) != m:
            raise MalformedAlgebra(f"mult row {i} must have length {m}")
        out_row = []
        for j, cell in enumerate(row):
            if not isinstance(cell, list):
                raise MalformedAlgebra(f"mult[{i}][{j}] must be a list of [k, coeff] pairs")
            acc: dict[int, Fraction] = {}
            for pair in cell:
                if not isinstance(pair, list) or len(pair) != 2 or not isinstance(pair[0], int):
                    raise MalformedAlgebra(f"mult[{i}][{j}] entry {pair!r} is not [k, coeff]")
                k = pair[0]
                acc[k] = acc.get(k, ZERO) + parse_rational(pair[1])
            out_row.append(acc)
        out.append(out_row)
    return out


def validate(raw: Mapping[str, Any]) -> FrobeniusAlgebra:
    """Validate raw structure data (the JSON schema) into an algebra."""
    if not isinstance(raw, Mapping):
        raise InputError("algebra data must be a JSON object")
    try:
        m = int(raw["dim"])
        labels = [str(x) for x in raw.get("labels") or [f"b{i}" for i in range(m)]]
        parity = [int(p) for p in raw["parity"]]
        unit = [parse_rational(u) for u in raw["unit"]]
        trace = [parse_rational(t) for t in raw["trace"]]
    except KeyError as exc:
        raise InputError(f"algebra data is missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed algebra data: {exc}") from None
    if any(p not in (0, 1) for p in parity):
        raise InputError("parities must be 0 or 1")
    table = _table_from_json(raw.get("mult"), m)
    return FrobeniusAlgebra(str(raw.get("name", "A")), labels, parity, table, unit, trace)


def algebra_to_json(A: FrobeniusAlgebra) -> dict[str, Any]:
    return {
        "name": A.name,
        "dim": A.dim,
        "labels": list(A.labels),
        "parity": list(A.parity),
        "unit": [format_rational(u) for u in A.unit],
        "mult": [[[[k, format_rational(c)] for k, c in cell] for cell in row] for row in A.table],
        "trace": [format_rational(t) for t in A.trace],
    }


def load_algebra(source: str | Path | Mapping[str, Any]) -> FrobeniusAlgebra:
    """Load from a mapping, a builtin name, or a JSON file path."""
    if isinstance(source, Mapping):
        return validate(source)
    text = str(source)
    name, _, arg = text.partition(":")
    if name in BUILTINS and not Path(text).exists():
        return builtin(name, arg or None)
    try:
        raw = json.loads(Path(text).read_text())
    except FileNotFoundError:
        raise InputError(f"no such algebra file or builtin: {text}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {text}: {exc}") from None
    return validate(raw)


def dual_basis(A: FrobeniusAlgebra) -> tuple[Vector, ...]:
    """Rows ``D[i]`` with ``b_i^v = sum_j D[i][j] b_j``."""
    return A.dual_matrix


def nakayama(A: FrobeniusAlgebra) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
    """``(Psi, Psi^{-1})`` with ``psi(b_i) = sum_j Psi[i][j] b_j``."""
    return A.psi_matrix, A.psi_inv_matrix


# builtins

def _make(name, labels, parity, products, unit, trace) -> FrobeniusAlgebra:
    m = len(labels)
    table = [[dict() for _ in range(m)] for _ in range(m)]
    for (i, j), cell in products.items():
        table[i][j] = {k: Fraction(c) for k, c in cell.items()}
    return FrobeniusAlgebra(name, labels, parity, table,
                            [Fraction(u) for u in unit], [Fraction(t) for t in trace])


def _ground() -> FrobeniusAlgebra:
    return _make("ground", ["1"], [0], {(0, 0): {0: 1}}, [1], [1])


def _clifford(trace_parity: int) -> FrobeniusAlgebra:
    prods = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 1}}
    tr = [1, 0] if trace_parity == 0 else [0, 1]
    name = "clifford_even" if trace_parity == 0 else "clifford_odd"
    return _make(name, ["1", "c"], [0, 1], prods, [1, 0], tr)


def _grassmann() -> FrobeniusAlgebra:
    prods = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}
    return _make("grassmann", ["1", "x"], [0, 1], prods, [1, 0], [0, 1])


def _group(param: Any) -> FrobeniusAlgebra:
    if param is None:
        param = 2
    if isinstance(param, str):
        param = json.loads(param) if param.strip().startswith("[") else int(param)
    if isinstance(param, int):
        n = param
        if n < 1:
            raise BadCayleyTable("cyclic group order must be positive")
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        labels = ["e"] + ["g"] + [f"g{k}" for k in range(2, n)]
        labels = labels[:n]
    else:
        table = [list(r) for r in param]
        n = len(table)
        labels = ["e"] + [f"g{k}" for k in range(1, n)]
    _check_cayley(table)
    e = next(i for i in range(n) if all(table[i][j] == j for j in range(n)))
    prods = {(i, j): {table[i][j]: 1} for i in range(n) for j in range(n)}
    unit = [int(i == e) for i in range(n)]
    return _make(f"group{n}", labels, [0] * n, prods, unit, unit)


def _check_cayley(table: list[list[int]]) -> None:
    n = len(table)
    if n == 0 or any(len(r) != n for r in table):
        raise BadCayleyTable("Cayley table must be square and nonempty")
    for r in table:
        if sorted(r) != list(range(n)):
            raise BadCayleyTable("each row of a Cayley table must be a permutation")
    for j in range(n):
        if sorted(table[i][j] for i in range(n)) != list(range(n)):
            raise BadCayleyTable("each column of a Cayley table must be a permutation")
    ids = [i for i in range(n) if all(table[i][j] == j and table[j][i] == j for j in range(n))]
    if not ids:
        raise BadCayleyTable("Cayley table has no identity")
    for a, b, c in product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise BadCayleyTable(f"Cayley table is not associative at ({a},{b},{c})")


BUILTINS = {
    "ground": lambda p: _ground(),
    "clifford_even": lambda p: _clifford(0),
    "clifford_odd": lambda p: _clifford(1),
    "grassmann": lambda p: _grassmann(),
    "group": _group,
}


def builtin(name: str, params: Any = None) -> FrobeniusAlgebra:
    """One of ``ground``, ``clifford_even``, ``clifford_odd``, ``grassmann``,
    ``group`` (params: cyclic order or a Cayley table)."""
    try:
        make = BUILTINS[name]
    except KeyError:
        raise InputError(f"unknown builtin algebra {name!r}") from None
    return make(params)


# trace change

@dataclass(frozen=True)
class TraceChange:
    u: Vector
    u_inv: Vector
    eps: int
    algebra: FrobeniusAlgebra


def change_trace(A: FrobeniusAlgebra, new_trace: Sequence[Any]) -> TraceChange:
    """Find u with tr'(a) = tr(a u) for a second trace tr' on the same algebra."""
    t2 = [parse_rational(t) for t in new_trace]
    if len(t2) != A.dim:
        raise InputError("new trace must have one value per basis element")
    B = FrobeniusAlgebra(A.name + "'", A.labels, A.parity,
                         [[dict(cell) for cell in row] for row in A.table], A.unit, t2)
    # tr(b_i u) = sum_k u_k G_ik
    x = _linalg.solve([list(r) for r in A.gram], t2)
    if x is None:
        raise NoSolution("no u with tr'(a) = tr(a u)")
    u = tuple(x)
    pu = A.parity_of(u)
    if pu is None:
        raise NoSolution(f"u = {A.show(u)} is not homogeneous")
    u_inv = A.inverse(u)
    if u_inv is None:
        raise NoSolution(f"u = {A.show(u)} is not invertible")
    if B.eps != (A.eps + pu) % 2:
        raise InternalInconsistency("parity of the new trace is not eps + parity(u)")
    for i in range(A.dim):
        b = A.basis(i)
        sign = Fraction(-1 if pu and A.parity[i] else 1)
        rhs = A.scale(sign, A.mul(A.mul(u, A.psi(b)), u_inv))
        if B.psi(b) != rhs:
            raise InternalInconsistency(f"Nakayama automorphisms disagree on b{i}")
    return TraceChange(u, u_inv, B.eps, B)
