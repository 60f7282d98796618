"""Model quadrics ``Im w = <z, zb>`` given by k Hermitian forms on C^n."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateQuadricError, QuadricFormatError
from .exact import ONE, ZERO, GaussianRational, as_gr, format_complex, parse_complex, rank, solve

Matrix = tuple[tuple[GaussianRational, ...], ...]


def as_matrix(rows) -> Matrix:
    return tuple(tuple(as_gr(x) for x in row) for row in rows)


def is_hermitian(H) -> bool:
    n = len(H)
    return all(len(row) == n for row in H) and all(
        H[a][b] == H[b][a].conj() for a in range(n) for b in range(a, n)
    )


def conj_transpose(M) -> Matrix:
    rows, cols = len(M), len(M[0])
    return tuple(tuple(M[r][c].conj() for r in range(rows)) for c in range(cols))


def matmul(A, B) -> Matrix:
    inner = len(B)
    return tuple(
        tuple(sum((A[r][t] * B[t][c] for t in range(inner)), ZERO) for c in range(len(B[0])))
        for r in range(len(A))
    )


def matvec(A, x) -> tuple[GaussianRational, ...]:
    return tuple(sum((a * v for a, v in zip(row, x)), ZERO) for row in A)


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if r == c else ZERO for c in range(n)) for r in range(n))


def hermitian_value(H, z, zb=None) -> GaussianRational:
    """``(H z . zb)`` = sum_b (H z)_b * zb_b; ``zb`` defaults to conj(z)."""
    if zb is None:
        zb = [v.conj() for v in z]
    return sum((hz * c for hz, c in zip(matvec(H, z), zb)), ZERO)


@dataclass(frozen=True)
class Quadric:
    """Quadric of CR type (n, k).  ``forms[j]`` is the Hermitian matrix H_j.

    The j-th form is ``<z, zb>_j = (H_j z . zb) = sum_{a,b} H_j[b][a] z_a zb_b``.
    """

    n: int
    k: int
    forms: tuple[Matrix, ...]

    def __post_init__(self):
        forms = tuple(as_matrix(H) for H in self.forms)
        object.__setattr__(self, "forms", forms)
        if self.n < 1 or self.k < 1:
            raise QuadricFormatError("need n >= 1 and k >= 1")
        if len(forms) != self.k:
            raise QuadricFormatError(f"expected {self.k} forms, got {len(forms)}")
        for j, H in enumerate(forms):
            if len(H) != self.n or any(len(row) != self.n for row in H):
                raise QuadricFormatError(f"form {j} is not {self.n}x{self.n}")
            for a in range(self.n):
                for b in range(a, self.n):
                    if H[a][b] != H[b][a].conj():
                        raise QuadricFormatError(
                            f"form {j} is not Hermitian at entry ({a},{b})"
                        )

    @classmethod
    def from_forms(cls, forms) -> "Quadric":
        forms = [as_matrix(H) for H in forms]
        if not forms:
            raise QuadricFormatError("a quadric needs at least one form")
        return cls(len(forms[0]), len(forms), tuple(forms))

    def form_value(self, z, zb=None) -> tuple[GaussianRational, ...]:
        return tuple(hermitian_value(H, z, zb) for H in self.forms)

    def nu(self, x) -> tuple[tuple[GaussianRational, ...], ...]:
        """``nu(x) = (H_1 x, ..., H_k x)``."""
        return tuple(matvec(H, x) for H in self.forms)

    # -- serialisation -------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "forms": [[[format_complex(x) for x in row] for row in H] for H in self.forms],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())

    @classmethod
    def from_dict(cls, data) -> "Quadric":
        if not isinstance(data, dict):
            raise QuadricFormatError("quadric document must be a JSON object")
        for key in ("n", "k", "forms"):
            if key not in data:
                raise QuadricFormatError(f"missing field {key!r}")
        n, k, forms = data["n"], data["k"], data["forms"]
        if not isinstance(n, int) or not isinstance(k, int) or isinstance(n, bool) or isinstance(k, bool):
            raise QuadricFormatError("fields 'n' and 'k' must be integers")
        if not isinstance(forms, list):
            raise QuadricFormatError("field 'forms' must be a list")
        mats = []
        for j, H in enumerate(forms):
            if not isinstance(H, list):
                raise QuadricFormatError(f"forms[{j}] must be a list of rows")
            rows = []
            for a, row in enumerate(H):
                if not isinstance(row, list):
                    raise QuadricFormatError(f"forms[{j}][{a}] must be a list")
                vals = []
                for b, x in enumerate(row):
                    try:
                        vals.append(parse_complex(x))
                    except ValueError as exc:
                        raise QuadricFormatError(f"forms[{j}][{a}][{b}]: {exc}") from None
                rows.append(tuple(vals))
            mats.append(tuple(rows))
        return cls(n, k, tuple(mats))

    @classmethod
    def loads(cls, text: str) -> "Quadric":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise QuadricFormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        return cls.from_dict(data)

    @classmethod
    def load(cls, path) -> "Quadric":
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())


@dataclass(frozen=True)
class NondegeneracyReport:
    common_kernel_trivial: bool
    forms_independent: bool

    @property
    def nondegenerate(self) -> bool:
        return self.common_kernel_trivial and self.forms_independent


def hermitian_coordinates(H) -> list[Fraction]:
    """Real coordinates of a Hermitian matrix: diagonal, then Re/Im above it."""
    n = len(H)
    coords = [H[a][a].re for a in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            coords.append(H[a][b].re)
            coords.append(H[a][b].im)
    return coords


def validate(Q: Quadric) -> NondegeneracyReport:
    stacked = [row for H in Q.forms for row in H]
    kernel_trivial = rank(stacked) == Q.n
    independent = rank([hermitian_coordinates(H) for H in Q.forms]) == Q.k
    return NondegeneracyReport(kernel_trivial, independent)


def require_nondegenerate(Q: Quadric) -> None:
    report = validate(Q)
    if not report.nondegenerate:
        what = []
        if not report.common_kernel_trivial:
            what.append("forms have a common kernel")
        if not report.forms_independent:
            what.append("forms are linearly dependent")
        raise DegenerateQuadricError("degenerate quadric: " + ", ".join(what))


# -- catalog -------------------------------------------------------------------
def _e(n, entries) -> Matrix:
    M = [[ZERO] * n for _ in range(n)]
    for (r, c), v in entries.items():
        M[r][c] = as_gr(v)
    return as_matrix(M)


def heisenberg(n: int = 1) -> Quadric:
    """Hyperquadric ``v = |z_1|^2 + ... + |z_n|^2``."""
    return Quadric(n, 1, (identity(n),))


def last_quadric(n: int) -> Quadric:
    """The codimension n^2 quadric given by a basis of Hermitian forms on C^n.

    Order: ``z_a zb_a`` for each a, then for each a > b the pair
    ``2 Re z_a zb_b`` and ``2 Im z_a zb_b``.
    """
    forms = [_e(n, {(a, a): 1}) for a in range(n)]
    for a in range(n):
        for b in range(a):
            # coefficient of z_a zb_b sits at H[b][a]
            forms.append(_e(n, {(b, a): 1, (a, b): 1}))
            forms.append(_e(n, {(b, a): "-i", (a, b): "i"}))
    return Quadric(n, n * n, tuple(forms))


def palinchak_q5() -> Quadric:
    """Forms ``2 Re z1 zb3, 2 Re z2 zb3, 2 Im z1 zb3`` (stored as printed)."""
    return Quadric(
        3,
        3,
        (
            _e(3, {(0, 2): 1, (2, 0): 1}),
            _e(3, {(1, 2): 1, (2, 1): 1}),
            _e(3, {(0, 2): "i", (2, 0): "-i"}),
        ),
    )


def catalog(name: str, n: int | None = None) -> Quadric:
    """Named quadrics: heisenberg(n), last(n), palinchak-q5, raq-dual, raq-split."""
    if name == "heisenberg":
        return heisenberg(1 if n is None else n)
    if name == "last":
        if n is None:
            raise ValueError("last(n) needs n")
        return last_quadric(n)
    if name == "palinchak-q5":
        return palinchak_q5()
    if name in ("raq-dual", "raq-split"):
        from . import raq

        alg = raq.dual_numbers() if name == "raq-dual" else raq.split_algebra()
        return raq.raq_quadric(alg)
    raise KeyError(f"unknown catalog quadric {name!r}")


CATALOG_NAMES = ("heisenberg", "last", "palinchak-q5", "raq-dual", "raq-split")


def parse_catalog_spec(text: str) -> Quadric:
    """Parse ``name`` or ``name(n)``, e.g. ``last(2)``."""
    text = text.strip()
    if text.endswith(")") and "(" in text:
        name, arg = text[:-1].split("(", 1)
        return catalog(name.strip(), int(arg))
    return catalog(text)


# -- random generation -----------------------------------------------------------
def _rand_gauss(rng: random.Random, bound: int) -> GaussianRational:
    return GaussianRational(rng.randint(-bound, bound), rng.randint(-bound, bound))


def random_nondegenerate(n: int, k: int, seed: int, *, bound: int = 3, retries: int = 100) -> Quadric:
    """Seeded random nondegenerate quadric; each form is ``N + N*``."""
    if not (n >= 1 and 1 <= k <= n * n):
        raise ValueError(f"need 1 <= k <= n^2, got n={n}, k={k}")
    rng = random.Random(seed)
    for _ in range(retries):
        forms = []
        for _ in range(k):
            N = [[_rand_gauss(rng, bound) for _ in range(n)] for _ in range(n)]
            forms.append(tuple(tuple(N[a][b] + N[b][a].conj() for b in range(n)) for a in range(n)))
        Q = Quadric(n, k, tuple(forms))
        if validate(Q).nondegenerate:
            return Q
    raise RuntimeError(f"no nondegenerate quadric found in {retries} draws")


def random_invertible(n: int, rng: random.Random, *, real: bool = False, bound: int = 2) -> Matrix:
    while True:
        if real:
            M = [[GaussianRational(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
        else:
            M = [[_rand_gauss(rng, bound) for _ in range(n)] for _ in range(n)]
        if rank(M) == n:
            return as_matrix(M)


# -- linear action and the Hermitian solve ------------------------------------------
def equivalent_transform(Q: Quadric, S, rho) -> Quadric:
    """Forms ``H'_j = sum_l rho[j][l] S* H_l S`` for invertible S (complex), rho (real)."""
    S = as_matrix(S)
    rho = as_matrix(rho)
    if len(S) != Q.n or rank(S) != Q.n:
        raise ValueError("S must be an invertible n x n matrix")
    if len(rho) != Q.k or rank(rho) != Q.k:
        raise ValueError("rho must be an invertible k x k matrix")
    if any(not x.is_real() for row in rho for x in row):
        raise ValueError("rho must be real")
    Sh = conj_transpose(S)
    pulled = [matmul(matmul(Sh, H), S) for H in Q.forms]
    forms = []
    for j in range(Q.k):
        M = [[ZERO] * Q.n for _ in range(Q.n)]
        for l in range(Q.k):
            c = rho[j][l]
            if c:
                for a in range(Q.n):
                    for b in range(Q.n):
                        M[a][b] = M[a][b] + c * pulled[l][a][b]
        forms.append(as_matrix(M))
    return Quadric(Q.n, Q.k, tuple(forms))


def hermitian_solve(Q: Quadric, B):
    """Solve ``<x, zb> = B(zb)``, i.e. ``H_j x = B_j`` for all j; ``None`` if inconsistent."""
    require_nondegenerate(Q)
    B = [[as_gr(v) for v in Bj] for Bj in B]
    if len(B) != Q.k or any(len(Bj) != Q.n for Bj in B):
        raise ValueError("B must be k vectors of length n")
    stacked = [row for H in Q.forms for row in H]
    rhs = [v for Bj in B for v in Bj]
    x = solve(stacked, rhs)
    return None if x is None else tuple(as_gr(v) for v in x)
