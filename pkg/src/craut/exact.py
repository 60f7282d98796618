"""Exact scalars and exact linear algebra over Q and Q(i).

Rationals are :class:`fractions.Fraction`.  Gaussian rationals are stored as
three integers ``(re_num, im_num, den)`` with a shared positive denominator,
which keeps arithmetic on small Gaussian integers close to plain ``int`` speed.

Matrices are plain sequences of rows.  Elimination is fraction-free: rows are
cleared of denominators, combined with integer (or Gaussian-integer)
multipliers and divided by their content after each step; entries only become
fractions in the final normalisation to reduced row-echelon form.  Pivot
columns are taken strictly left to right, so the reduced form and the
nullspace basis derived from it are canonical for a given column order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from numbers import Rational as _RationalABC

__all__ = [
    "GaussianRational",
    "GR",
    "I",
    "as_gr",
    "parse_rational",
    "parse_complex",
    "format_rational",
    "format_complex",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "sparse_rref",
    "sparse_nullspace",
]


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        self._a = re.numerator * (d // re.denominator)
        self._b = im.numerator * (d // im.denominator)
        self._d = d

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GaussianRational":
        # d > 0 is assumed; reduce by the common content.
        if d != 1:
            g = gcd(gcd(a, b), d)
            if g != 1:
                a //= g
                b //= g
                d //= g
        obj = object.__new__(cls)
        obj._a = a
        obj._b = b
        obj._d = d
        return obj

    # -- accessors -------------------------------------------------------
    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    @property
    def parts(self) -> tuple[int, int, int]:
        """``(re_num, im_num, den)`` with ``gcd`` of all three equal to 1."""
        return self._a, self._b, self._d

    def is_real(self) -> bool:
        return self._b == 0

    def conj(self) -> "GaussianRational":
        return GaussianRational._raw(self._a, -self._b, self._d)

    def abs2(self) -> Fraction:
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        a, b, d = self._a, self._b, self._d
        c, e, f = other._a, other._b, other._d
        if d == f:
            return GaussianRational._raw(a + c, b + e, d)
        return GaussianRational._raw(a * f + c * d, b * f + e * d, d * f)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        a, b, d = self._a, self._b, self._d
        c, e, f = other._a, other._b, other._d
        return GaussianRational._raw(a * c - b * e, a * e + b * c, d * f)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        a, b, d = self._a, self._b, self._d
        n = a * a + b * b
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        # d / (a + bi) = d (a - bi) / n
        return GaussianRational._raw(d * a, -d * b, n)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison / hashing ---------------------------------------------
    def __bool__(self):
        return self._a != 0 or self._b != 0

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self._a == other._a and self._b == other._b and self._d == other._d
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self == other

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __repr__(self):
        return f"GR({format_complex(self)!r})"

    def __str__(self):
        return format_complex(self)

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, int):
        return GaussianRational._raw(x, 0, 1)
    if isinstance(x, _RationalABC):
        return GaussianRational._raw(x.numerator, 0, x.denominator)
    if isinstance(x, complex):
        raise TypeError("floating-point complex values are not exact")
    return None


def as_gr(x) -> GaussianRational:
    """Coerce ``int``, ``Fraction``, COMPLEX string or GaussianRational."""
    if isinstance(x, str):
        return parse_complex(x)
    value = _coerce(x)
    if value is None:
        raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational")
    return value


GR = GaussianRational
ZERO = GaussianRational._raw(0, 0, 1)
ONE = GaussianRational._raw(1, 0, 1)
I = GaussianRational._raw(0, 1, 1)


# -- text grammar ----------------------------------------------------------
_RAT = r"-?\d+(?:/\d+)?"
_RAT_RE = re.compile(rf"^{_RAT}$")
_COMPLEX_RE = re.compile(
    rf"^(?:(?P<re>{_RAT})(?:(?P<sign>[+-])(?P<im>{_RAT})i)?"
    rf"|(?P<imonly>{_RAT})i"
    rf"|(?P<unit>-?)i)$"
)


def parse_rational(text: str) -> Fraction:
    """Parse ``'-'? digits ('/' digits)?``."""
    if not isinstance(text, str) or not _RAT_RE.match(text):
        raise ValueError(f"malformed RATIONAL {text!r}")
    return _frac(text)


def _frac(text: str) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_complex(text: str) -> GaussianRational:
    """Parse the COMPLEX grammar (``3``, ``-1/2+2i``, ``5i``, ``-i`` ...)."""
    if not isinstance(text, str):
        raise ValueError(f"COMPLEX must be a string, got {text!r}")
    m = _COMPLEX_RE.match(text)
    if m is None:
        raise ValueError(f"malformed COMPLEX {text!r}")
    if m.group("unit") is not None:
        return GaussianRational(0, -1 if m.group("unit") == "-" else 1)
    if m.group("imonly") is not None:
        return GaussianRational(0, _frac(m.group("imonly")))
    real = _frac(m.group("re"))
    if m.group("im") is None:
        return GaussianRational(real, 0)
    imag = _frac(m.group("im"))
    if m.group("sign") == "-":
        imag = -imag
    return GaussianRational(real, imag)


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_complex(x) -> str:
    x = as_gr(x)
    re_, im_ = x.re, x.im
    if im_ == 0:
        return format_rational(re_)
    if re_ == 0:
        if im_ == 1:
            return "i"
        if im_ == -1:
            return "-i"
        return format_rational(im_) + "i"
    sign = "+" if im_ > 0 else "-"
    return f"{format_rational(re_)}{sign}{format_rational(abs(im_))}i"


# -- fraction-free sparse elimination --------------------------------------
def _int_content(values) -> int:
    return gcd(*values)


def _ggcd(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    """Euclid on Gaussian integers ``(re, im)``."""
    while y != (0, 0):
        a, b = x
        c, d = y
        n = c * c + d * d
        # x / y rounded to the nearest Gaussian integer
        qr = a * c + b * d
        qi = b * c - a * d
        q = ((2 * qr + n) // (2 * n), (2 * qi + n) // (2 * n))
        x, y = y, (a - (q[0] * c - q[1] * d), b - (q[0] * d + q[1] * c))
    return x


def _gauss_content(values):
    """Gaussian-integer gcd of the entries, or 1 when it is a unit."""
    g = (0, 0)
    for v in values:
        g = _ggcd(g, (v._a, v._b))
        if g[0] * g[0] + g[1] * g[1] == 1:
            return 1
    if g == (0, 0):
        return 1
    return g


def _int_scale(v: int, g: int) -> int:
    return v // g


def _gauss_scale(v: GaussianRational, g) -> GaussianRational:
    if isinstance(g, int):
        return GaussianRational._raw(v._a // g, v._b // g, 1)
    c, d = g
    n = c * c + d * d
    return GaussianRational._raw((v._a * c + v._b * d) // n, (v._b * c - v._a * d) // n, 1)


def _integerise(row: dict, gaussian: bool) -> dict:
    """Clear denominators of one sparse row (scales the row by a positive integer)."""
    if gaussian:
        lcm = 1
        for v in row.values():
            d = v._d
            lcm = lcm * d // gcd(lcm, d)
        out = {}
        for c, v in row.items():
            m = lcm // v._d
            out[c] = GaussianRational._raw(v._a * m, v._b * m, 1)
        return out
    lcm = 1
    for v in row.values():
        d = v.denominator if not isinstance(v, int) else 1
        lcm = lcm * d // gcd(lcm, d)
    return {c: int(v * lcm) for c, v in row.items()}


def _combine(a, prow: dict, b, rrow: dict, content, scale) -> dict:
    """Return ``a*rrow - b*prow`` divided by its content (zero entries dropped)."""
    new = {c: a * v for c, v in rrow.items()}
    for c, v in prow.items():
        x = new.get(c)
        y = b * v
        if x is None:
            new[c] = -y
        else:
            x = x - y
            if x:
                new[c] = x
            else:
                del new[c]
    if new:
        g = content(new.values())
        if g != 1 and g != 0 and g != (0, 0):
            new = {c: scale(v, g) for c, v in new.items()}
    return new


def _ff_rref(rows: list[dict], ncols: int, gaussian: bool):
    """Fraction-free reduction to RREF; returns ``[(pivot_col, row)]``.

    Returned rows are normalised so that the pivot entry is exactly 1 and
    carry Fraction (or GaussianRational) values.
    """
    content = _gauss_content if gaussian else _int_content
    scale = _gauss_scale if gaussian else _int_scale
    work = []
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        if row:
            work.append(_integerise(row, gaussian))
    colmap: dict[int, set] = {}
    for idx, row in enumerate(work):
        for c in row:
            colmap.setdefault(c, set()).add(idx)
    used = [False] * len(work)
    pivots: list[tuple[int, int]] = []
    for c in sorted(colmap):
        cand = [r for r in colmap.get(c, ()) if not used[r]]
        if not cand:
            continue
        p = min(cand, key=lambda r: (len(work[r]), r))
        used[p] = True
        pivots.append((c, p))
        prow = work[p]
        a = prow[c]
        for r in cand:
            if r == p:
                continue
            old = work[r]
            new = _combine(a, prow, old[c], old, content, scale)
            for col in old.keys() - new.keys():
                colmap[col].discard(r)
            for col in new.keys() - old.keys():
                colmap.setdefault(col, set()).add(r)
            work[r] = new
    # back substitution, last pivot first
    for i in range(len(pivots) - 1, -1, -1):
        c, p = pivots[i]
        prow = work[p]
        a = prow[c]
        for j in range(i):
            q = pivots[j][1]
            qrow = work[q]
            b = qrow.get(c)
            if b is None:
                continue
            work[q] = _combine(a, prow, b, qrow, content, scale)
    result = []
    for c, p in pivots:
        row = work[p]
        piv = row[c]
        if gaussian:
            inv = piv.inverse()
            result.append((c, {col: v * inv for col, v in row.items()}))
        else:
            result.append((c, {col: Fraction(v, piv) for col, v in row.items()}))
    return result


def _is_gaussian(rows) -> bool:
    for row in rows:
        for v in (row.values() if isinstance(row, dict) else row):
            if isinstance(v, GaussianRational):
                return True
    return False


def _prep_sparse(rows, gaussian: bool) -> list[dict]:
    if gaussian:
        return [{c: as_gr(v) for c, v in row.items()} for row in rows]
    out = []
    for row in rows:
        clean = {}
        for c, v in row.items():
            if isinstance(v, float):
                raise TypeError("floating-point entries are not exact")
            clean[c] = v if isinstance(v, int) else Fraction(v)
        out.append(clean)
    return out


def sparse_rref(rows: list[dict], ncols: int, gaussian: bool | None = None):
    """RREF of a sparse matrix given as ``{col: value}`` dicts.

    Returns the list of ``(pivot_col, row)`` in increasing pivot order.
    """
    if gaussian is None:
        gaussian = _is_gaussian(rows)
    return _ff_rref(_prep_sparse(rows, gaussian), ncols, gaussian)


def sparse_nullspace(rows: list[dict], ncols: int, gaussian: bool | None = None) -> list[dict]:
    """Canonical nullspace basis of a sparse matrix, as sparse vectors.

    One vector per free column ``f`` (increasing), with entry 1 at ``f``, and
    ``-R[p][f]`` at each pivot column ``p``.
    """
    if gaussian is None:
        gaussian = _is_gaussian(rows)
    red = _ff_rref(_prep_sparse(rows, gaussian), ncols, gaussian)
    one = ONE if gaussian else Fraction(1)
    pivot_cols = {c for c, _ in red}
    basis = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        vec = {f: one}
        for c, row in red:
            v = row.get(f)
            if v:
                vec[c] = -v
        basis.append(vec)
    return basis


# -- dense front ends --------------------------------------------------------
def _dense_to_sparse(M) -> tuple[list[dict], int]:
    rows = [list(r) for r in M]
    ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    return [{c: v for c, v in enumerate(r) if v} for r in rows], ncols


def _dense(vec: dict, n: int, zero):
    return [vec.get(i, zero) for i in range(n)]


def rref(M, ncols: int | None = None):
    """Reduced row-echelon form of a dense matrix; returns ``(R, pivot_cols)``."""
    sparse, nc = _dense_to_sparse(M)
    if ncols is not None:
        nc = ncols
    gaussian = _is_gaussian(sparse)
    zero = ZERO if gaussian else Fraction(0)
    red = sparse_rref(sparse, nc, gaussian)
    return [_dense(row, nc, zero) for _, row in red], [c for c, _ in red]


def rank(M) -> int:
    """Rank over the fraction field (Q or Q(i))."""
    sparse, nc = _dense_to_sparse(M)
    return len(sparse_rref(sparse, nc))


def nullspace(M, ncols: int | None = None) -> list[list]:
    """Canonical basis of ``{v : M v = 0}`` (see :func:`sparse_nullspace`)."""
    sparse, nc = _dense_to_sparse(M)
    if ncols is not None:
        nc = ncols
    gaussian = _is_gaussian(sparse)
    zero = ZERO if gaussian else Fraction(0)
    return [_dense(v, nc, zero) for v in sparse_nullspace(sparse, nc, gaussian)]


def solve(M, b):
    """Some ``x`` with ``M x = b`` exactly, or ``None`` if inconsistent.

    Free variables are set to zero, so the answer is the unique solution
    whenever the nullspace is trivial.
    """
    sparse, nc = _dense_to_sparse(M)
    b = list(b)
    if len(b) != len(sparse):
        raise ValueError("dimension mismatch between matrix and right-hand side")
    for row, bi in zip(sparse, b):
        if bi:
            row[nc] = bi
    gaussian = _is_gaussian(sparse) or any(isinstance(v, GaussianRational) for v in b)
    zero = ZERO if gaussian else Fraction(0)
    red = sparse_rref(sparse, nc + 1, gaussian)
    x = [zero] * nc
    for c, row in red:
        if c == nc:
            return None
        x[c] = row.get(nc, zero)
    return x
