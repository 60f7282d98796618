"""Graded components of the automorphism algebra of a model quadric.

A vector field ``X = 2 Re(f d/dz + g d/dw)`` is stored as the pair of
holomorphic coefficient vectors ``(f, g)``.  It is tangent to the quadric
exactly when, for every j,

    Phi_j + conj(Phi_j) = 0,   Phi_j = i g_j(z, u + i<z,zb>) + 2 <f(z, u + i<z,zb>), zb>_j

holds identically in ``(z, zb, u)``.  For a fixed weight m the unknown
coefficients of ``f`` (weight m+1) and ``g`` (weight m+2) enter this identity
real-linearly, so ``g_m`` is the nullspace of an exact rational system.

Dimensions reported here are real dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InternalInconsistency
from .exact import ONE, ZERO, GaussianRational, I, format_complex, solve, sparse_nullspace
from .quadric import Quadric, require_nondegenerate
from .wpoly import (
    FIELD,
    RESTRICTED,
    VarSpec,
    WPoly,
    compositions,
    field_monomials,
    hermitian_poly,
    restriction_images,
)

__all__ = [
    "VectorField",
    "GradedComponent",
    "field_monomials",
    "tangency_residual",
    "graded_component",
    "algebra_components",
    "full_algebra",
    "is_rigid",
    "is_exceptional",
    "nonrigid_via_a",
    "exceptional_via_a",
    "a_route_dimension",
    "bracket",
    "in_span",
    "structure_violations",
    "degree_bound_violations",
]


@dataclass(frozen=True)
class VectorField:
    """Holomorphic coefficients ``f`` (n entries) and ``g`` (k entries) in (z, w)."""

    f: tuple[WPoly, ...]
    g: tuple[WPoly, ...]

    @property
    def spec(self) -> VarSpec:
        return self.f[0].spec

    @classmethod
    def zero(cls, n: int, k: int) -> "VectorField":
        spec = VarSpec(n, k, FIELD)
        return cls(tuple(WPoly.zero(spec) for _ in range(n)), tuple(WPoly.zero(spec) for _ in range(k)))

    @classmethod
    def from_terms(cls, n: int, k: int, f=None, g=None) -> "VectorField":
        """Build from ``{coordinate: {exponents: coeff}}`` mappings."""
        spec = VarSpec(n, k, FIELD)
        f = f or {}
        g = g or {}
        return cls(
            tuple(WPoly(spec, f.get(a, {})) for a in range(n)),
            tuple(WPoly(spec, g.get(j, {})) for j in range(k)),
        )

    def __bool__(self):
        return any(self.f) or any(self.g)

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(
            tuple(x + y for x, y in zip(self.f, other.f)),
            tuple(x + y for x, y in zip(self.g, other.g)),
        )

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "VectorField":
        return VectorField(tuple(p.scale(c) for p in self.f), tuple(p.scale(c) for p in self.g))

    def weight(self) -> int | None:
        """Weight m with f of weight m+1 and g of weight m+2; None if mixed or zero."""
        found = set()
        for p in self.f:
            if p:
                w = p.weight_of()
                if w is None:
                    return None
                found.add(w - 1)
        for p in self.g:
            if p:
                w = p.weight_of()
                if w is None:
                    return None
                found.add(w - 2)
        return found.pop() if len(found) == 1 else None

    def apply(self, h: WPoly) -> WPoly:
        """Derivation ``sum f_a dh/dz_a + sum g_j dh/dw_j``."""
        n = len(self.f)
        out = WPoly.zero(h.spec)
        for a, fa in enumerate(self.f):
            if fa:
                out = out + fa * h.diff(a)
        for j, gj in enumerate(self.g):
            if gj:
                out = out + gj * h.diff(n + j)
        return out

    def to_dict(self) -> dict:
        return {"f": [_poly_terms(p) for p in self.f], "g": [_poly_terms(p) for p in self.g]}

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.f) + "; " + ", ".join(str(p) for p in self.g) + ")"


def _poly_terms(p: WPoly) -> list:
    return [[list(e), format_complex(c)] for e, c in p.items()]


@dataclass(frozen=True)
class GradedComponent:
    m: int
    dim: int
    basis: tuple[VectorField, ...]


# -- residual ---------------------------------------------------------------
def _zbar_pairing(Q: Quadric, rspec: VarSpec):
    """``P[j][a]`` = 2 * sum_b H_j[b][a] zb_b, so 2<f, zb>_j = sum_a f_a P[j][a]."""
    n = Q.n
    out = []
    for H in Q.forms:
        row = []
        for a in range(n):
            row.append(WPoly(rspec, {_unit(rspec, n + b): H[b][a] * 2 for b in range(n) if H[b][a]}))
        out.append(row)
    return out


def _unit(spec: VarSpec, index: int) -> tuple:
    e = [0] * spec.nvars
    e[index] = 1
    return tuple(e)


def tangency_residual(Q: Quadric, X: VectorField) -> tuple[WPoly, ...]:
    """Components ``Phi_j + conj(Phi_j)``; all zero iff X is tangent to Q."""
    if len(X.f) != Q.n or len(X.g) != Q.k:
        raise ValueError("vector field dimensions do not match the quadric")
    images = restriction_images(Q)
    rf = [p.substitute(images) for p in X.f]
    rg = [p.substitute(images) for p in X.g]
    rspec = images[0].spec
    pair = _zbar_pairing(Q, rspec)
    out = []
    for j in range(Q.k):
        phi = rg[j].scale(I)
        for a in range(Q.n):
            if rf[a]:
                phi = phi + rf[a] * pair[j][a]
        out.append(phi + phi.conj())
    return tuple(out)


# -- system assembly --------------------------------------------------------
class _Restrictor:
    """Caches restricted images of field monomials."""

    def __init__(self, Q: Quadric):
        self.n, self.k = Q.n, Q.k
        self.images = restriction_images(Q)
        self.spec = self.images[0].spec
        self._pow = {}
        self._mono = {}

    def power(self, i, e):
        key = (i, e)
        p = self._pow.get(key)
        if p is None:
            p = self.images[i] if e == 1 else self.power(i, e - 1) * self.images[i]
            self._pow[key] = p
        return p

    def monomial(self, exps: tuple) -> WPoly:
        p = self._mono.get(exps)
        if p is not None:
            return p
        n = self.n
        zpart = [0] * self.spec.nvars
        zpart[:n] = exps[:n]
        p = WPoly(self.spec, {tuple(zpart): ONE}, _trusted=True)
        for j, e in enumerate(exps[n:]):
            if e:
                p = p * self.power(n + j, e)
        self._mono[exps] = p
        return p


def _unknown_layout(n: int, k: int, m: int):
    """Complex unknown slots: ``('f', a, mono)`` then ``('g', j, mono)``."""
    slots = []
    for a in range(n):
        for mono in field_monomials(n, k, m + 1):
            slots.append(("f", a, mono))
    for j in range(k):
        for mono in field_monomials(n, k, m + 2):
            slots.append(("g", j, mono))
    return slots


def _conj_mono(e: tuple, n: int) -> tuple:
    return e[n : 2 * n] + e[:n] + e[2 * n :]


def assemble_system(Q: Quadric, m: int):
    """Rows (sparse dicts over Fraction) of the real tangency system at weight m.

    Column ``2*s`` is the real part and ``2*s + 1`` the imaginary part of
    complex slot ``s`` of :func:`_unknown_layout`.  One complex equation is
    kept per pair of conjugate restricted monomials; it is split into its real
    and imaginary parts.
    """
    n, k = Q.n, Q.k
    slots = _unknown_layout(n, k, m)
    R = _Restrictor(Q)
    pair = _zbar_pairing(Q, R.spec)
    coef: dict[tuple, dict[int, GaussianRational]] = {}

    def add(j, poly: WPoly, col_re: int):
        col_im = col_re + 1
        for mu, c in poly.terms.items():
            cmu = _conj_mono(mu, n)
            if mu <= cmu:
                _acc(coef, (j, mu), col_re, c)
                _acc(coef, (j, mu), col_im, c * I)
            if cmu <= mu:
                cc = c.conj()
                _acc(coef, (j, cmu), col_re, cc)
                _acc(coef, (j, cmu), col_im, (c * I).conj())

    for s, (kind, idx, mono) in enumerate(slots):
        rm = R.monomial(mono)
        if kind == "g":
            add(idx, rm.scale(I), 2 * s)
        else:
            for j in range(k):
                p = pair[j][idx]
                if p:
                    add(j, rm * p, 2 * s)
    rows = []
    for key in sorted(coef):
        entries = coef[key]
        re_row = {}
        im_row = {}
        for col, v in entries.items():
            a, b, d = v.parts
            if a:
                re_row[col] = Fraction(a, d)
            if b:
                im_row[col] = Fraction(b, d)
        if re_row:
            rows.append(re_row)
        if im_row:
            rows.append(im_row)
    return rows, slots


def _acc(coef, key, col, v):
    if not v:
        return
    entries = coef.get(key)
    if entries is None:
        coef[key] = {col: v}
        return
    prev = entries.get(col)
    if prev is None:
        entries[col] = v
    else:
        s = prev + v
        if s:
            entries[col] = s
        else:
            del entries[col]


def _field_from_vector(n: int, k: int, slots, vec: dict) -> VectorField:
    spec = VarSpec(n, k, FIELD)
    f = [dict() for _ in range(n)]
    g = [dict() for _ in range(k)]
    for s, (kind, idx, mono) in enumerate(slots):
        re_ = vec.get(2 * s, 0)
        im_ = vec.get(2 * s + 1, 0)
        if re_ or im_:
            (f if kind == "f" else g)[idx][mono] = GaussianRational(re_, im_)
    return VectorField(
        tuple(WPoly(spec, t, _trusted=True) for t in f),
        tuple(WPoly(spec, t, _trusted=True) for t in g),
    )


def graded_component(Q: Quadric, m: int) -> GradedComponent:
    """Exact real basis of the weight-m component ``g_m``."""
    require_nondegenerate(Q)
    if m < -2:
        raise ValueError("weights below -2 are empty by construction")
    return _graded_component(Q, m)


@lru_cache(maxsize=256)
def _graded_component(Q: Quadric, m: int) -> GradedComponent:
    rows, slots = assemble_system(Q, m)
    basis = sparse_nullspace(rows, 2 * len(slots), gaussian=False)
    fields = tuple(_field_from_vector(Q.n, Q.k, slots, v) for v in basis)
    return GradedComponent(m, len(fields), fields)


def algebra_components(Q: Quadric, max_weight: int | None = None) -> list[GradedComponent]:
    """Components from weight -2 upward.

    For m >= 1 the computation stops after the first zero component (g_- is
    fundamental, so everything above vanishes).  Weight ``2k+1`` is a hard
    cap: a nonzero component there raises :class:`InternalInconsistency`.
    """
    require_nondegenerate(Q)
    cap = 2 * Q.k + 1
    top = cap if max_weight is None else min(cap, max_weight)
    out = []
    for m in range(-2, top + 1):
        comp = _graded_component(Q, m)
        out.append(comp)
        if m == cap and comp.dim > 0:
            raise InternalInconsistency(
                f"nonzero component of weight {m} > 2k for a codimension-{Q.k} quadric"
            )
        if m >= 1 and comp.dim == 0:
            break
    return out


def full_algebra(Q: Quadric, max_weight: int | None = None) -> list[tuple[int, int]]:
    """``[(m, dim g_m)]`` following the stop rule of :func:`algebra_components`."""
    return [(c.m, c.dim) for c in algebra_components(Q, max_weight)]


def is_rigid(Q: Quadric) -> bool:
    return graded_component(Q, 1).dim == 0


def is_exceptional(Q: Quadric) -> bool:
    return graded_component(Q, 3).dim > 0


# -- second route: solve for (a, A) in the odd-part relations ----------------------
def _delta(p: WPoly, hs: list[WPoly], n: int) -> WPoly:
    """``sum_l dp/du_l * h_l``."""
    out = WPoly.zero(p.spec)
    for l, h in enumerate(hs):
        d = p.diff(2 * n + l)
        if d:
            out = out + d * h
    return out


@lru_cache(maxsize=256)
def _a_route(Q: Quadric, degree: int) -> tuple[int, int]:
    """Complex dimension of the (a, A) solution space and of its projection to a.

    Unknowns are the coefficients of ``conj(a)`` (homogeneous of the given
    degree in u, values in C^n) and of ``A(u)(z,z)`` (degree - 1 in u).
    Relations, identically in z, zb, u:

        <A(u)(z,z), zb> = 2i <z, Delta abar(u)>,     <z, Delta^2 abar(u)> = 0.
    """
    n, k = Q.n, Q.k
    spec = VarSpec(n, k, RESTRICTED)
    hs = [hermitian_poly(H, spec) for H in Q.forms]
    z = [WPoly.z(spec, a) for a in range(n)]
    zb = [WPoly.zb(spec, a) for a in range(n)]
    Hz = [[sum((z[a].scale(H[b][a]) for a in range(n) if H[b][a]), WPoly.zero(spec)) for b in range(n)] for H in Q.forms]

    def u_mono(gamma):
        return WPoly(spec, {(0,) * (2 * n) + tuple(gamma): ONE}, _trusted=True)

    columns: list[tuple[str, list[WPoly], list[WPoly]]] = []
    for b in range(n):
        for gamma in compositions(degree, k):
            mono = u_mono(gamma)
            d1 = _delta(mono, hs, n)
            d2 = _delta(d1, hs, n)
            first = [(Hz[j][b] * d1).scale(-2 * I) for j in range(k)]
            second = [Hz[j][b] * d2 for j in range(k)]
            columns.append(("a", first, second))
    for b in range(n):
        for alpha in compositions(2, n):
            for gamma in compositions(degree - 1, k):
                mono = WPoly(spec, {tuple(alpha) + (0,) * n + tuple(gamma): ONE}, _trusted=True)
                first = []
                for H in Q.forms:
                    # <A, zb>_j with A = e_b * mono
                    pairing = sum((zb[c].scale(H[c][b]) for c in range(n) if H[c][b]), WPoly.zero(spec))
                    first.append(mono * pairing)
                columns.append(("A", first, [WPoly.zero(spec)] * k))
    rows: dict[tuple, dict[int, GaussianRational]] = {}
    for col, (_, first, second) in enumerate(columns):
        for which, polys in ((0, first), (1, second)):
            for j, p in enumerate(polys):
                for mu, c in p.terms.items():
                    _acc(rows, (which, j, mu), col, c)
    basis = sparse_nullspace([rows[key] for key in sorted(rows)], len(columns), gaussian=True)
    n_a = sum(1 for c in columns if c[0] == "a")
    a_rank = len(_span_basis([{c: v for c, v in vec.items() if c < n_a} for vec in basis], n_a))
    return len(basis), a_rank


def _span_basis(vectors: list[dict], ncols: int) -> list:
    from .exact import sparse_rref

    return sparse_rref([v for v in vectors if v], ncols, gaussian=True)


def a_route_dimension(Q: Quadric, degree: int) -> int:
    """Complex dimension of the space of ``a`` (homogeneous of ``degree`` in u) admitting an A."""
    require_nondegenerate(Q)
    return _a_route(Q, degree)[1]


def nonrigid_via_a(Q: Quadric) -> bool:
    """Nonzero linear a(u) with a solvable A exists."""
    return a_route_dimension(Q, 1) > 0


def exceptional_via_a(Q: Quadric) -> bool:
    """Nonzero quadratic a(u,u) satisfying both odd-part relations exists."""
    return a_route_dimension(Q, 2) > 0


# -- brackets and spans --------------------------------------------------------
def bracket(X: VectorField, Y: VectorField) -> VectorField:
    """Holomorphic commutator ``(X f' - Y f, X g' - Y g)``."""
    if len(X.f) != len(Y.f) or len(X.g) != len(Y.g):
        raise ValueError("dimension mismatch")
    return VectorField(
        tuple(X.apply(fy) - Y.apply(fx) for fx, fy in zip(X.f, Y.f)),
        tuple(X.apply(gy) - Y.apply(gx) for gx, gy in zip(X.g, Y.g)),
    )


def _field_coordinates(X: VectorField) -> dict:
    out = {}
    for a, p in enumerate(X.f):
        for e, c in p.terms.items():
            out[("f", a, e)] = c
    for j, p in enumerate(X.g):
        for e, c in p.terms.items():
            out[("g", j, e)] = c
    return out


def in_span(Y: VectorField, basis) -> list[Fraction] | None:
    """Real coefficients expressing Y in ``basis``, or None when Y is outside the span."""
    basis = list(basis)
    coords = [_field_coordinates(X) for X in basis]
    target = _field_coordinates(Y)
    keys = sorted(set(target).union(*coords) if coords else set(target))
    if not basis:
        return [] if not target else None
    M = []
    b = []
    for key in keys:
        vals = [c.get(key, ZERO) for c in coords]
        t = target.get(key, ZERO)
        M.append([v.re for v in vals])
        b.append(t.re)
        M.append([v.im for v in vals])
        b.append(t.im)
    return solve(M, b)


# -- structural checks ---------------------------------------------------------
def structure_violations(Q: Quadric, X: VectorField, m: int | None = None) -> list[str]:
    """Shape of a tangent field: ``f = a(w) + C(w)z + A(w)(z,z)``,
    ``g = b(w) + 2i<z, abar(w)>``, plus the parity split by weight.

    Returns human-readable descriptions of every violated constraint."""
    problems = []
    n = Q.n
    for a, p in enumerate(X.f):
        if p.z_degrees() - {0, 1, 2}:
            problems.append(f"f[{a}] has z-degree > 2")
    for j, p in enumerate(X.g):
        if p.z_degrees() - {0, 1}:
            problems.append(f"g[{j}] has z-degree > 1")
    spec = X.spec
    abar = [p.z_part(0).conj_coeffs() for p in X.f]
    z = [WPoly.z(spec, a) for a in range(n)]
    for j, H in enumerate(Q.forms):
        # 2i <z, abar(w)>_j = 2i sum_b (H z)_b abar_b(w)
        expect = WPoly.zero(spec)
        for b in range(n):
            if abar[b]:
                hz = sum((z[a].scale(H[b][a]) for a in range(n) if H[b][a]), WPoly.zero(spec))
                expect = expect + hz * abar[b]
        if X.g[j].z_part(1) != expect.scale(2 * I):
            problems.append(f"z-linear part of g[{j}] differs from 2i<z, abar(w)>")
    if m is None:
        m = X.weight()
    if m is not None:
        if m % 2 == 0:
            if any(p.z_degrees() - {1} for p in X.f):
                problems.append("even weight: f is not purely z-linear")
            if any(p.z_degrees() - {0} for p in X.g):
                problems.append("even weight: g is not z-free")
        else:
            if any(p.z_degrees() - {0, 2} for p in X.f):
                problems.append("odd weight: f has z-degree outside {0, 2}")
            if any(p.z_degrees() - {1} for p in X.g):
                problems.append("odd weight: g is not purely z-linear")
    return problems


def degree_bound_violations(Q: Quadric, X: VectorField) -> list[str]:
    """Coefficients of a tangent field have ordinary total degree <= k + 1."""
    bound = Q.k + 1
    out = []
    for name, polys in (("f", X.f), ("g", X.g)):
        for i, p in enumerate(polys):
            if p.degree() > bound:
                out.append(f"{name}[{i}] has degree {p.degree()} > {bound}")
    return out
