"""Normal forms of tangent fields of weight -2 .. 3.

Each extractor reads the parameters off a zero-residual field, checks that
the field has exactly the predicted shape, and checks the defining relations
as polynomial identities.  Any deviation raises :class:`ShapeViolation`.

Notation (all forms are vector-valued, ``<x, y>_j = (H_j x . y)``):

* ``m=-2``: ``(0, q)`` with q real
* ``m=-1``: ``(p, 2i<z, pbar>)``
* ``m=0``:  ``(Cz, rho w)`` with rho real and ``2 Re<Cz, zb> = rho<z, zb>``
* ``m=1``:  ``(a w + A(z,z), 2i<z, abar w>)`` with ``<A(z,z), zb> = 2i<z, abar<z,zb>>``
* ``m=2``:  ``(B(w) z, r(w,w))`` with ``Re<B(u)z, zb> = r(<z,zb>, u)`` and
  ``Im<B(<z,zb>)z, zb> = 0``
* ``m=3``:  ``(d(w,w) + D(w)(z,z), 2i<z, dbar(w,w)>)`` with
  ``<D(u)(z,z), zb> = 4i<z, dbar(<z,zb>, u)>`` and ``<D(<z,zb>)(z,z), zb> = 0``
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ShapeViolation
from .exact import ZERO, I, format_complex
from .quadric import Quadric
from .solver import VectorField, tangency_residual
from .wpoly import FIELD, RESTRICTED, VarSpec, WPoly, hermitian_poly

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class NormalForm:
    """Tagged by weight ``m``; ``params`` holds the weight-specific data."""

    m: int
    params: dict = field(hash=False, compare=True)

    def to_dict(self) -> dict:
        return {"m": self.m, "params": _render(self.params)}


def _render(obj):
    if isinstance(obj, dict):
        return {k: _render(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_render(v) for v in obj]
    if isinstance(obj, WPoly):
        return str(obj)
    return format_complex(obj)


class _Ctx:
    def __init__(self, Q: Quadric):
        self.Q = Q
        n, k = Q.n, Q.k
        self.fspec = VarSpec(n, k, FIELD)
        self.rspec = VarSpec(n, k, RESTRICTED)
        self.h = [hermitian_poly(H, self.rspec) for H in Q.forms]
        self.zr = [WPoly.z(self.rspec, a) for a in range(n)]
        self.zbr = [WPoly.zb(self.rspec, a) for a in range(n)]
        self.ur = [WPoly.u(self.rspec, j) for j in range(k)]
        self.zf = [WPoly.z(self.fspec, a) for a in range(n)]
        self.wf = [WPoly.w(self.fspec, j) for j in range(k)]

    def to_restricted(self, p: WPoly, w_images) -> WPoly:
        return p.substitute(self.zr + list(w_images))

    def pair_zb(self, vec) -> list[WPoly]:
        """``<vec, zb>_j = sum_{a,b} H_j[b][a] vec_a zb_b`` for restricted-ring ``vec``."""
        out = []
        for H in self.Q.forms:
            acc = WPoly.zero(self.rspec)
            for a, va in enumerate(vec):
                if va:
                    for b in range(self.Q.n):
                        if H[b][a]:
                            acc = acc + va * self.zbr[b].scale(H[b][a])
            out.append(acc)
        return out

    def pair_z(self, vec, spec) -> list[WPoly]:
        """``<z, vec>_j = sum_b (H_j z)_b vec_b`` (vec sits in the conjugate slot)."""
        z = [WPoly.z(spec, a) for a in range(self.Q.n)]
        out = []
        for H in self.Q.forms:
            acc = WPoly.zero(spec)
            for b, vb in enumerate(vec):
                if vb:
                    hz = sum((z[a].scale(H[b][a]) for a in range(self.Q.n) if H[b][a]), WPoly.zero(spec))
                    acc = acc + hz * vb
            out.append(acc)
        return out


def _require(cond: bool, what: str):
    if not cond:
        raise ShapeViolation(what)


def normal_form(Q: Quadric, X: VectorField, m: int) -> NormalForm:
    """Extract and verify the weight-m normal form of a tangent field."""
    if m < -2 or m > 3:
        raise ValueError("normal forms are defined for weights -2 .. 3")
    if X and X.weight() != m:
        raise ValueError(f"field is not weighted-homogeneous of weight {m}")
    if any(tangency_residual(Q, X)):
        raise ValueError("field is not tangent to the quadric (nonzero residual)")
    return _EXTRACT[m](_Ctx(Q), X)


def _nf_m2(c: _Ctx, X: VectorField) -> NormalForm:
    n, k = c.Q.n, c.Q.k
    _require(not any(X.f), "weight -2: f must vanish")
    zero = (0,) * (n + k)
    q = []
    for j, p in enumerate(X.g):
        _require(set(p.terms) <= {zero}, f"weight -2: g[{j}] is not constant")
        v = p.coeff(zero)
        _require(v.is_real(), f"weight -2: q[{j}] is not real")
        q.append(v.re)
    return NormalForm(-2, {"q": q})


def _nf_m1(c: _Ctx, X: VectorField) -> NormalForm:
    n, k = c.Q.n, c.Q.k
    zero = (0,) * (n + k)
    p = []
    for a, fa in enumerate(X.f):
        _require(set(fa.terms) <= {zero}, f"weight -1: f[{a}] is not constant")
        p.append(fa.coeff(zero))
    pbar = [WPoly.const(c.fspec, v.conj()) for v in p]
    expect = [e.scale(2 * I) for e in c.pair_z(pbar, c.fspec)]
    _require(list(X.g) == expect, "weight -1: g differs from 2i<z, pbar>")
    return NormalForm(-1, {"p": p})


def _nf_0(c: _Ctx, X: VectorField) -> NormalForm:
    n, k = c.Q.n, c.Q.k
    C = [[ZERO] * n for _ in range(n)]
    for a, fa in enumerate(X.f):
        for e, v in fa.terms.items():
            _require(sum(e[:n]) == 1 and not any(e[n:]), f"weight 0: f[{a}] is not linear in z")
            C[a][e[:n].index(1)] = v
    rho = [[ZERO] * k for _ in range(k)]
    for j, gj in enumerate(X.g):
        for e, v in gj.terms.items():
            _require(not any(e[:n]), f"weight 0: g[{j}] has a z-dependent term")
            _require(v.is_real(), f"weight 0: rho[{j}] is not real")
            rho[j][e[n:].index(1)] = v
    Cz = [sum((c.zr[b].scale(C[a][b]) for b in range(n) if C[a][b]), WPoly.zero(c.rspec)) for a in range(n)]
    lhs = c.pair_zb(Cz)
    for j in range(k):
        rhs = sum((c.h[l].scale(rho[j][l]) for l in range(k) if rho[j][l]), WPoly.zero(c.rspec))
        _require(lhs[j] + lhs[j].conj() == rhs, f"weight 0: 2Re<Cz,zb>_{j} != (rho<z,zb>)_{j}")
    return NormalForm(0, {"C": C, "rho": rho})


def _nf_1(c: _Ctx, X: VectorField) -> NormalForm:
    n, k = c.Q.n, c.Q.k
    a_mat = [[ZERO] * k for _ in range(n)]
    A = []
    for idx, fa in enumerate(X.f):
        Apart = WPoly.zero(c.fspec)
        for e, v in fa.terms.items():
            if sum(e[:n]) == 0:
                a_mat[idx][e[n:].index(1)] = v
            elif sum(e[:n]) == 2:
                Apart = Apart + WPoly.monomial(c.fspec, e, v)
            else:
                raise ShapeViolation(f"weight 1: f[{idx}] has a z-linear term")
        A.append(Apart)
    # g = 2i <z, abar w>
    abar_w = [
        sum((c.wf[l].scale(a_mat[b][l].conj()) for l in range(k) if a_mat[b][l]), WPoly.zero(c.fspec))
        for b in range(n)
    ]
    expect = [e.scale(2 * I) for e in c.pair_z(abar_w, c.fspec)]
    _require(list(X.g) == expect, "weight 1: g differs from 2i<z, abar w>")
    # <A(z,z), zb> = 2i <z, abar <z,zb>>
    Ar = [c.to_restricted(p, c.ur) for p in A]
    lhs = c.pair_zb(Ar)
    abar_h = [
        sum((c.h[l].scale(a_mat[b][l].conj()) for l in range(k) if a_mat[b][l]), WPoly.zero(c.rspec))
        for b in range(n)
    ]
    rhs = [e.scale(2 * I) for e in c.pair_z(abar_h, c.rspec)]
    for j in range(k):
        _require(lhs[j] == rhs[j], f"weight 1: <A(z,z),zb>_{j} != 2i<z, abar<z,zb>>_{j}")
    return NormalForm(1, {"a": a_mat, "A": A})


def _nf_2(c: _Ctx, X: VectorField) -> NormalForm:
    n, k = c.Q.n, c.Q.k
    for a, fa in enumerate(X.f):
        for e in fa.terms:
            _require(sum(e[:n]) == 1, f"weight 2: f[{a}] is not of the form B(w)z")
    for j, gj in enumerate(X.g):
        for e, v in gj.terms.items():
            _require(sum(e[:n]) == 0, f"weight 2: g[{j}] has a z-dependent term")
            _require(v.is_real(), f"weight 2: r[{j}] has a non-real coefficient")
    Bu = [c.to_restricted(p, c.ur) for p in X.f]
    Bh = [c.to_restricted(p, c.h) for p in X.f]
    lhs_u = c.pair_zb(Bu)
    lhs_h = c.pair_zb(Bh)
    for j, gj in enumerate(X.g):
        ru = c.to_restricted(gj, c.ur)
        # r(<z,zb>, u) = 1/2 sum_l <z,zb>_l dr/du_l
        r_hu = sum((ru.diff(2 * n + l) * c.h[l] for l in range(k)), WPoly.zero(c.rspec)).scale(HALF)
        _require((lhs_u[j] + lhs_u[j].conj()).scale(HALF) == r_hu, f"weight 2: Re<B(u)z,zb>_{j} != r(<z,zb>,u)_{j}")
        _require(lhs_h[j] == lhs_h[j].conj(), f"weight 2: Im<B(<z,zb>)z,zb>_{j} != 0")
    return NormalForm(2, {"B": list(X.f), "r": list(X.g)})


def _split_m3(c: _Ctx, X: VectorField):
    n = c.Q.n
    d, D = [], []
    for a, fa in enumerate(X.f):
        dd = WPoly.zero(c.fspec)
        DD = WPoly.zero(c.fspec)
        for e, v in fa.terms.items():
            zdeg = sum(e[:n])
            if zdeg == 0:
                dd = dd + WPoly.monomial(c.fspec, e, v)
            elif zdeg == 2:
                DD = DD + WPoly.monomial(c.fspec, e, v)
            else:
                raise ShapeViolation(f"weight 3: f[{a}] has z-degree {zdeg}")
        d.append(dd)
        D.append(DD)
    return d, D


def _nf_3(c: _Ctx, X: VectorField) -> NormalForm:
    n, k = c.Q.n, c.Q.k
    d, D = _split_m3(c, X)
    dbar = [p.conj_coeffs() for p in d]
    expect = [e.scale(2 * I) for e in c.pair_z(dbar, c.fspec)]
    _require(list(X.g) == expect, "weight 3: g differs from 2i<z, dbar(w,w)>")
    Du = c.pair_zb([c.to_restricted(p, c.ur) for p in D])
    Dh = c.pair_zb([c.to_restricted(p, c.h) for p in D])
    dbar_u = [c.to_restricted(p, c.ur) for p in dbar]
    dbar_hu = [
        sum((p.diff(2 * n + l) * c.h[l] for l in range(k)), WPoly.zero(c.rspec)).scale(HALF) for p in dbar_u
    ]
    rhs = [e.scale(4 * I) for e in c.pair_z(dbar_hu, c.rspec)]
    for j in range(k):
        _require(Du[j] == rhs[j], f"weight 3: <D(u)(z,z),zb>_{j} != 4i<z, dbar(<z,zb>,u)>_{j}")
        _require(not Dh[j], f"weight 3: <D(<z,zb>)(z,z),zb>_{j} != 0")
    return NormalForm(3, {"d": d, "D": D})


def weight_three_residual(Q: Quadric, X: VectorField) -> list[WPoly]:
    """``D(<z, pbar>)(z, z)`` with ``pbar`` written as the zb variables.

    Zero (all entries) for every weight-3 tangent field."""
    c = _Ctx(Q)
    _, D = _split_m3(c, X)
    return [c.to_restricted(p, c.h) for p in D]


_EXTRACT = {-2: _nf_m2, -1: _nf_m1, 0: _nf_0, 1: _nf_1, 2: _nf_2, 3: _nf_3}
