"""RAQ quadrics ``Im W = Z . Zbar`` over real commutative unital algebras.

An algebra of dimension n is given by structure constants ``c[i][j][l]`` with
``E_i E_j = sum_l c[i][j][l] E_l``.  Elements of the complexification are
coordinate tuples of GaussianRational; conjugation acts on coordinates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import QuadricFormatError
from .exact import ONE, ZERO, GaussianRational, as_gr, format_rational, parse_rational, solve
from .quadric import Quadric

OK = "ok"
NOT_COMMUTATIVE = "not_commutative"
NOT_ASSOCIATIVE = "not_associative"
NO_UNIT = "no_unit"

Table = tuple[tuple[tuple[Fraction, ...], ...], ...]


@dataclass(frozen=True)
class CommAlgebra:
    n: int
    table: Table
    name: str = ""

    def __post_init__(self):
        n = self.n
        if not isinstance(n, int) or n < 1:
            raise QuadricFormatError("algebra dimension must be a positive integer")
        t = self.table
        if len(t) != n or any(len(row) != n or any(len(cell) != n for cell in row) for row in t):
            raise QuadricFormatError(f"structure table must have shape {n}x{n}x{n}")
        object.__setattr__(
            self, "table", tuple(tuple(tuple(Fraction(x) for x in cell) for cell in row) for row in t)
        )

    def c(self, i: int, j: int, l: int) -> Fraction:
        return self.table[i][j][l]

    def mul(self, x, y) -> tuple:
        """Product of coordinate tuples (rational or Gaussian)."""
        n = self.n
        out = [ZERO] * n
        for i in range(n):
            if not x[i]:
                continue
            for j in range(n):
                if not y[j]:
                    continue
                xy = x[i] * y[j]
                for l, c in enumerate(self.table[i][j]):
                    if c:
                        out[l] = out[l] + xy * c
        return tuple(out)

    def basis(self, i: int) -> tuple:
        return tuple(ONE if l == i else ZERO for l in range(self.n))

    # -- file format ---------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "table": [[[format_rational(x) for x in cell] for cell in row] for row in self.table],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())

    @classmethod
    def from_dict(cls, data) -> "CommAlgebra":
        if not isinstance(data, dict):
            raise QuadricFormatError("algebra document must be a JSON object")
        if "n" not in data or "table" not in data:
            raise QuadricFormatError("algebra document needs fields 'n' and 'table'")
        n, table = data["n"], data["table"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise QuadricFormatError("field 'n' must be an integer")
        if not isinstance(table, list):
            raise QuadricFormatError("field 'table' must be a list")
        parsed = []
        for i, row in enumerate(table):
            if not isinstance(row, list):
                raise QuadricFormatError(f"table[{i}] must be a list")
            prow = []
            for j, cell in enumerate(row):
                if not isinstance(cell, list):
                    raise QuadricFormatError(f"table[{i}][{j}] must be a list")
                vals = []
                for l, x in enumerate(cell):
                    try:
                        vals.append(parse_rational(x))
                    except (ValueError, TypeError) as exc:
                        raise QuadricFormatError(f"table[{i}][{j}][{l}]: {exc}") from None
                prow.append(tuple(vals))
            parsed.append(tuple(prow))
        return cls(n, tuple(parsed))

    @classmethod
    def loads(cls, text: str) -> "CommAlgebra":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise QuadricFormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        return cls.from_dict(data)

    @classmethod
    def load(cls, path) -> "CommAlgebra":
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())


@dataclass(frozen=True)
class AlgebraVerdict:
    status: str
    unit: tuple | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == OK


def validate_algebra(A: CommAlgebra) -> AlgebraVerdict:
    n, c = A.n, A.table
    for i in range(n):
        for j in range(i + 1, n):
            if c[i][j] != c[j][i]:
                return AlgebraVerdict(NOT_COMMUTATIVE, detail=f"E{i + 1}E{j + 1} != E{j + 1}E{i + 1}")
    for i in range(n):
        for j in range(n):
            for l in range(n):
                for p in range(n):
                    lhs = sum(c[i][j][m] * c[m][l][p] for m in range(n))
                    rhs = sum(c[j][l][m] * c[i][m][p] for m in range(n))
                    if lhs != rhs:
                        return AlgebraVerdict(
                            NOT_ASSOCIATIVE, detail=f"(E{i + 1}E{j + 1})E{l + 1} != E{i + 1}(E{j + 1}E{l + 1})"
                        )
    # e . E_j = E_j: unknowns e_i, equations indexed by (j, l)
    M = [[c[i][j][l] for i in range(n)] for j in range(n) for l in range(n)]
    b = [Fraction(int(j == l)) for j in range(n) for l in range(n)]
    e = solve(M, b)
    if e is None:
        return AlgebraVerdict(NO_UNIT)
    return AlgebraVerdict(OK, unit=tuple(Fraction(x) for x in e))


def require_valid(A: CommAlgebra) -> tuple:
    v = validate_algebra(A)
    if not v.ok:
        raise QuadricFormatError(f"invalid algebra: {v.status}" + (f" ({v.detail})" if v.detail else ""))
    return v.unit


# -- constructions ---------------------------------------------------------------
def _from_products(n: int, products: dict, name: str = "") -> CommAlgebra:
    t = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j), vec in products.items():
        for l, x in vec.items():
            t[i][j][l] = t[j][i][l] = Fraction(x)
    return CommAlgebra(n, tuple(tuple(tuple(cell) for cell in row) for row in t), name)


def reals() -> CommAlgebra:
    return _from_products(1, {(0, 0): {0: 1}}, "R")


def truncated_poly(m: int) -> CommAlgebra:
    """R[t]/(t^m) in the basis 1, t, ..., t^(m-1)."""
    prods = {(i, j): {i + j: 1} for i in range(m) for j in range(i, m) if i + j < m}
    return _from_products(m, prods, f"R[t]/(t^{m})")


def dual_numbers() -> CommAlgebra:
    return CommAlgebra(2, truncated_poly(2).table, "dual")


def split_algebra() -> CommAlgebra:
    """R x R in the basis 1, e with e^2 = 1."""
    return _from_products(2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 1): {0: 1}}, "split")


def direct_sum(A: CommAlgebra, B: CommAlgebra) -> CommAlgebra:
    n = A.n + B.n
    prods = {}
    for i in range(A.n):
        for j in range(i, A.n):
            prods[(i, j)] = {l: x for l, x in enumerate(A.table[i][j]) if x}
    for i in range(B.n):
        for j in range(i, B.n):
            prods[(A.n + i, A.n + j)] = {A.n + l: x for l, x in enumerate(B.table[i][j]) if x}
    return _from_products(n, prods, f"{A.name or 'A'}+{B.name or 'B'}")


def random_algebra(rng, max_n: int = 3) -> CommAlgebra:
    """Direct sum of truncated polynomial algebras with total dimension <= max_n."""
    parts = []
    left = rng.randint(1, max_n)
    while left:
        m = rng.randint(1, left)
        parts.append(truncated_poly(m))
        left -= m
    A = parts[0]
    for B in parts[1:]:
        A = direct_sum(A, B)
    return A


# -- quadric and automorphisms ---------------------------------------------------
def raq_quadric(A: CommAlgebra) -> Quadric:
    require_valid(A)
    n = A.n
    forms = tuple(
        tuple(tuple(as_gr(A.table[i][j][l]) for i in range(n)) for j in range(n)) for l in range(n)
    )
    return Quadric(n, n, forms)


def conj(x) -> tuple:
    return tuple(as_gr(v).conj() for v in x)


def alg_inverse(A: CommAlgebra, x, unit=None):
    """Inverse in the complexification, or None if x is not invertible."""
    if unit is None:
        unit = require_valid(A)
    n = A.n
    x = tuple(as_gr(v) for v in x)
    # (x y)_l = sum_j (sum_i c[i][j][l] x_i) y_j
    L = [[sum((x[i] * A.table[i][j][l] for i in range(n)), ZERO) for j in range(n)] for l in range(n)]
    y = solve(L, [as_gr(e) for e in unit])
    if y is None:
        return None
    y = tuple(as_gr(v) for v in y)
    if A.mul(x, y) != tuple(as_gr(e) for e in unit):
        return None
    return y


def _scale(x, s) -> tuple:
    return tuple(v * s for v in x)


def _add(*xs) -> tuple:
    return tuple(sum(parts, ZERO) for parts in zip(*xs))


def poincare_map(A: CommAlgebra, a, r, Z, W):
    """Image of (Z, W) under the positive-weight automorphism with parameters a, r.

    ``Delta = 1 - 2i abar Z - (r + i a abar) W``; returns None if Delta is not
    invertible.
    """
    unit = require_valid(A)
    one = tuple(as_gr(e) for e in unit)
    a = tuple(as_gr(v) for v in a)
    r = tuple(as_gr(v) for v in r)
    Z = tuple(as_gr(v) for v in Z)
    W = tuple(as_gr(v) for v in W)
    i = GaussianRational(0, 1)
    inner = _add(r, _scale(A.mul(a, conj(a)), i))
    delta = _add(one, _scale(A.mul(conj(a), Z), -2 * i), _scale(A.mul(inner, W), -1))
    dinv = alg_inverse(A, delta, unit)
    if dinv is None:
        return None
    Zs = A.mul(_add(Z, A.mul(a, W)), dinv)
    Ws = A.mul(W, dinv)
    return Zs, Ws


def on_quadric(A: CommAlgebra, Z, W) -> bool:
    """Exact test of ``Im W = Z . Zbar``."""
    Z = tuple(as_gr(v) for v in Z)
    return all(as_gr(w).im == v.re and v.im == 0 for w, v in zip(W, A.mul(Z, conj(Z))))


def lift_to_quadric(A: CommAlgebra, Z, u) -> tuple:
    """W = u + i Z Zbar for real u."""
    Z = tuple(as_gr(v) for v in Z)
    i = GaussianRational(0, 1)
    return _add(tuple(as_gr(x) for x in u), _scale(A.mul(Z, conj(Z)), i))
