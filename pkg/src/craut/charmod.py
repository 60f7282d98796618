"""Characteristic module of a quadric and the polynomial a-equation.

Symbols: ``s = (s_1, ..., s_k)``, ``h_j = <z, zb>_j``.  The module
``M ⊂ C[s]^k`` is generated by the (z, zb)-coefficient vectors of

    (s_1 h_1 + ... + s_k h_k)^2 * sum_j <phi, zb>_j e_j

for constant phi in C^n; every generator is homogeneous of degree 2 in s, so
graded slices are plain linear spans.

All dimensions in this module are complex dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .exact import sparse_nullspace, sparse_rref
from .quadric import Quadric, require_nondegenerate
from .wpoly import RESTRICTED, VarSpec, WPoly, compositions, hermitian_poly

SVec = dict  # {(j, s_exponents): coeff}


@dataclass(frozen=True)
class ModuleElement:
    """k-vector of homogeneous polynomials in s of the given degree."""

    k: int
    degree: int
    entries: tuple  # sorted ((j, s_exps), coeff)

    @classmethod
    def from_dict(cls, k: int, degree: int, d: SVec) -> "ModuleElement":
        for (j, e) in d:
            if sum(e) != degree or not 0 <= j < k:
                raise ValueError("inhomogeneous or out-of-range module entry")
        return cls(k, degree, tuple(sorted((key, v) for key, v in d.items() if v)))

    def as_dict(self) -> SVec:
        return dict(self.entries)

    def __str__(self):
        comps = []
        for j in range(self.k):
            terms = []
            for (jj, e), c in self.entries:
                if jj != j:
                    continue
                mono = "*".join(f"s{l + 1}" + (f"^{p}" if p > 1 else "") for l, p in enumerate(e) if p) or "1"
                terms.append(f"({c})*{mono}")
            comps.append(" + ".join(terms) or "0")
        return "(" + ", ".join(comps) + ")"


def _pairing_zb(Q: Quadric, spec: VarSpec, a: int, j: int) -> WPoly:
    """``<e_a, zb>_j = sum_b H_j[b][a] zb_b``."""
    H = Q.forms[j]
    out = WPoly.zero(spec)
    for b in range(Q.n):
        if H[b][a]:
            out = out + WPoly.zb(spec, b, H[b][a])
    return out


def _unit(k: int, *idx) -> tuple:
    e = [0] * k
    for i in idx:
        e[i] += 1
    return tuple(e)


def charmod_generators(Q: Quadric) -> list[ModuleElement]:
    """Coefficient vectors of the generating expression, one per (phi, z-monomial)."""
    require_nondegenerate(Q)
    n, k = Q.n, Q.k
    spec = VarSpec(n, k, RESTRICTED)
    h = [hermitian_poly(H, spec) for H in Q.forms]
    # (sum s_j h_j)^2 = sum_{j <= l} s_j s_l * (2 - [j == l]) h_j h_l
    square = []
    for j in range(k):
        for l in range(j, k):
            square.append((_unit(k, j, l), (h[j] * h[l]).scale(1 if j == l else 2)))
    out = []
    for a in range(n):
        coeffs: dict[tuple, SVec] = {}
        for m in range(k):
            p = _pairing_zb(Q, spec, a, m)
            if not p:
                continue
            for sexp, hh in square:
                for mono, c in (hh * p).items():
                    vec = coeffs.setdefault(mono, {})
                    key = (m, sexp)
                    vec[key] = vec.get(key, 0) + c
        for mono in sorted(coeffs):
            vec = {key: v for key, v in coeffs[mono].items() if v}
            if vec:
                out.append(ModuleElement.from_dict(k, 2, vec))
    return out


def _slice_columns(k: int, d: int) -> dict:
    return {(j, e): idx for idx, (j, e) in enumerate((j, e) for j in range(k) for e in compositions(d, k))}


def _span_basis(gens: list[ModuleElement], k: int) -> list[SVec]:
    cols = _slice_columns(k, 2)
    inv = {v: key for key, v in cols.items()}
    rows = [{cols[key]: v for key, v in g.entries} for g in gens]
    if not rows:
        return []
    return [{inv[c]: v for c, v in row.items()} for _, row in sparse_rref(rows, len(cols), gaussian=True)]


def slice_rank(basis: list[SVec], k: int, d: int) -> int:
    """Rank of the degree-d slice of M spanned by s^tau * generators, |tau| = d - 2."""
    if d < 2 or not basis:
        return 0
    cols = _slice_columns(k, d)
    rows = []
    for tau in compositions(d - 2, k):
        for g in basis:
            rows.append({cols[(j, tuple(x + y for x, y in zip(e, tau)))]: v for (j, e), v in g.items()})
    return len(sparse_rref(rows, len(cols), gaussian=True))


def quotient_graded_dims(Q: Quadric, D: int) -> list[int]:
    """``dim_C`` of ``(C[s]^k / M)_d`` for d = 0..D."""
    if D < 0:
        raise ValueError("D must be non-negative")
    k = Q.k
    basis = _span_basis(charmod_generators(Q), k)
    return [k * comb(d + k - 1, k - 1) - slice_rank(basis, k, d) for d in range(D + 1)]


# -- polynomial solutions a(u) ------------------------------------------------------
@dataclass(frozen=True)
class ASolutions:
    D: int
    dim: int
    basis: tuple  # tuple of n-tuples of restricted-ring polynomials in u


def _u_monomials(k: int, D: int) -> list[tuple]:
    return [e for d in range(D + 1) for e in compositions(d, k)]


def a_solution_space(Q: Quadric, D: int) -> ASolutions:
    """Polynomial a in C[u]^n, deg <= D, with ``sum d2a/du_al du_be h_al h_be`` paired to zb vanishing."""
    require_nondegenerate(Q)
    if D < 0:
        raise ValueError("D must be non-negative")
    n, k = Q.n, Q.k
    spec = VarSpec(n, k, RESTRICTED)
    h = [hermitian_poly(H, spec) for H in Q.forms]
    pair = [[_pairing_zb(Q, spec, c, j) for j in range(k)] for c in range(n)]
    umonos = _u_monomials(k, D)
    unknowns = [(c, e) for c in range(n) for e in umonos]
    rowmap: dict[tuple, dict] = {}
    for col, (c, e) in enumerate(unknowns):
        P = WPoly.monomial(spec, (0,) * (2 * n) + e)
        second = WPoly.zero(spec)
        for al in range(k):
            Pa = P.diff(2 * n + al)
            if not Pa:
                continue
            for be in range(k):
                Pab = Pa.diff(2 * n + be)
                if Pab:
                    second = second + Pab * h[al] * h[be]
        if not second:
            continue
        for j in range(k):
            if not pair[c][j]:
                continue
            for mono, v in (second * pair[c][j]).items():
                row = rowmap.setdefault((j, mono), {})
                row[col] = row.get(col, 0) + v
    rows = [r for r in (dict((c, v) for c, v in row.items() if v) for row in rowmap.values()) if r]
    null = sparse_nullspace(rows, len(unknowns), gaussian=True)
    basis = []
    for vec in null:
        comps = [WPoly.zero(spec) for _ in range(n)]
        for col, v in sorted(vec.items()):
            c, e = unknowns[col]
            comps[c] = comps[c] + WPoly.monomial(spec, (0,) * (2 * n) + e, v)
        basis.append(tuple(comps))
    return ASolutions(D, len(null), tuple(basis))


# -- reports -----------------------------------------------------------------------
@dataclass(frozen=True)
class CharmodReport:
    n: int
    k: int
    max_degree: int
    quotient_dims: tuple
    quotient_total: int
    a_dim_at_k: int
    a_dim_at_k2: int
    quotient_vanishes_beyond_k: bool
    a_stabilizes: bool

    @property
    def ok(self) -> bool:
        return self.quotient_vanishes_beyond_k and self.a_stabilizes

    def to_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "quotient_dims": list(self.quotient_dims),
            "dim_M_prime": self.quotient_total,
            "a_dim": {"D=k": self.a_dim_at_k, "D=k+2": self.a_dim_at_k2},
            "dim_L1": self.a_dim_at_k2,
            "quotient_vanishes_beyond_k": self.quotient_vanishes_beyond_k,
            "a_stabilizes": self.a_stabilizes,
        }


def charmod_report(Q: Quadric, max_degree: int | None = None) -> CharmodReport:
    """Quotient dims up to ``max(D, k + 2)`` and a-dims at ``D = k`` and ``k + 2``.

    ``dim_M_prime`` totals the quotient; ``dim_L1`` is the stabilized a-dimension.
    The two are reported side by side and are not expected to agree in general.
    """
    k = Q.k
    D = k + 2 if max_degree is None else max_degree
    dims = quotient_graded_dims(Q, max(D, k + 2))
    ak = a_solution_space(Q, k).dim
    ak2 = a_solution_space(Q, k + 2).dim
    return CharmodReport(
        Q.n,
        k,
        D,
        tuple(dims[: D + 1]),
        sum(dims),
        ak,
        ak2,
        all(x == 0 for x in dims[k + 1 :]),
        ak == ak2,
    )


def weight_one_degree_violations(Q: Quadric, fields) -> list[str]:
    """For weight-1 fields: the u-degree of A stays below that of a.

    ``a(w)`` is the z-constant part of f and ``A(w)(z, z)`` its z-quadratic part.
    """
    n, k = Q.n, Q.k
    w_idx = range(n, n + k)
    z_idx = range(n)
    out = []
    for idx, X in enumerate(fields):
        a_deg = -1
        A_deg = -1
        for fa in X.f:
            for e, _ in fa.items():
                zd = sum(e[i] for i in z_idx)
                wd = sum(e[i] for i in w_idx)
                if zd == 0:
                    a_deg = max(a_deg, wd)
                elif zd == 2:
                    A_deg = max(A_deg, wd)
        if A_deg >= 0 and A_deg > a_deg - 1:
            out.append(f"field {idx}: deg_u A = {A_deg}, deg_u a = {a_deg}")
    return out


__all__ = [
    "ModuleElement",
    "ASolutions",
    "CharmodReport",
    "charmod_generators",
    "quotient_graded_dims",
    "slice_rank",
    "a_solution_space",
    "charmod_report",
    "weight_one_degree_violations",
]

