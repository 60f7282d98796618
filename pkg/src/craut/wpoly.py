"""Sparse weighted polynomials over the Gaussian rationals.

Two rings are used throughout:

* the *field ring* in ``z_1..z_n, w_1..w_k`` where the holomorphic
  coefficients ``f`` and ``g`` of a vector field live;
* the *restricted ring* in ``z_1..z_n, zb_1..zb_n, u_1..u_k`` obtained by
  putting ``w = u + i<z, zb>`` on the quadric.

Weights are ``[z] = [zb] = 1`` and ``[w] = [u] = 2``.  A third ``plain`` kind
(``x_1..x_n``, all of weight 1) is used for auxiliary symbolic computations
such as determinants of matrices with polynomial entries.

Exponent vectors are tuples of small ints; total degree stays well below 64
for everything this package computes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .exact import ZERO, GaussianRational, I, as_gr, format_complex

MAX_DEGREE = 64

FIELD = "field"
RESTRICTED = "restricted"
PLAIN = "plain"


@dataclass(frozen=True)
class VarSpec:
    n: int
    k: int
    kind: str = FIELD

    def __post_init__(self):
        if self.kind not in (FIELD, RESTRICTED, PLAIN):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.n < 1 or (self.kind != PLAIN and self.k < 1):
            raise ValueError("need n >= 1 and k >= 1")

    @property
    def nvars(self) -> int:
        if self.kind == FIELD:
            return self.n + self.k
        if self.kind == RESTRICTED:
            return 2 * self.n + self.k
        return self.n

    @property
    def weights(self) -> tuple[int, ...]:
        if self.kind == FIELD:
            return (1,) * self.n + (2,) * self.k
        if self.kind == RESTRICTED:
            return (1,) * (2 * self.n) + (2,) * self.k
        return (1,) * self.n

    @property
    def names(self) -> tuple[str, ...]:
        n, k = self.n, self.k
        if self.kind == FIELD:
            return tuple(f"z{a + 1}" for a in range(n)) + tuple(f"w{j + 1}" for j in range(k))
        if self.kind == RESTRICTED:
            return (
                tuple(f"z{a + 1}" for a in range(n))
                + tuple(f"zb{a + 1}" for a in range(n))
                + tuple(f"u{j + 1}" for j in range(k))
            )
        return tuple(f"x{a + 1}" for a in range(n))

    def field(self) -> "VarSpec":
        return VarSpec(self.n, self.k, FIELD)

    def restricted(self) -> "VarSpec":
        return VarSpec(self.n, self.k, RESTRICTED)


def monomial_key(exps: tuple[int, ...]):
    """Graded order: total degree first, then lexicographically larger first.

    With variables ordered ``z < zb < u`` (resp. ``z < w``) this lists
    ``z1^2, z1 z2, z2^2`` in that order inside a degree.
    """
    return (sum(exps), tuple(-e for e in exps))


class WPoly:
    """Immutable sparse polynomial ``{exponent tuple: GaussianRational}``."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: VarSpec, terms: Mapping[tuple, object] | None = None, *, _trusted=False):
        self.spec = spec
        if _trusted:
            self.terms = terms
            return
        clean: dict[tuple, GaussianRational] = {}
        nv = spec.nvars
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nv or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {nv} variables")
            if sum(exps) > MAX_DEGREE:
                raise ValueError("total degree exceeds supported bound")
            c = as_gr(c)
            if c:
                prev = clean.get(exps)
                s = c if prev is None else prev + c
                if s:
                    clean[exps] = s
                else:
                    del clean[exps]
        self.terms = clean

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, spec: VarSpec) -> "WPoly":
        return cls(spec, {}, _trusted=True)

    @classmethod
    def const(cls, spec: VarSpec, c) -> "WPoly":
        c = as_gr(c)
        if not c:
            return cls.zero(spec)
        return cls(spec, {(0,) * spec.nvars: c}, _trusted=True)

    @classmethod
    def var(cls, spec: VarSpec, index: int, coeff=1) -> "WPoly":
        exps = [0] * spec.nvars
        exps[index] = 1
        return cls(spec, {tuple(exps): coeff})

    @classmethod
    def monomial(cls, spec: VarSpec, exps: Iterable[int], coeff=1) -> "WPoly":
        return cls(spec, {tuple(exps): coeff})

    @classmethod
    def z(cls, spec: VarSpec, a: int, coeff=1) -> "WPoly":
        return cls.var(spec, a, coeff)

    @classmethod
    def zb(cls, spec: VarSpec, a: int, coeff=1) -> "WPoly":
        if spec.kind != RESTRICTED:
            raise ValueError("zb exists only in the restricted ring")
        return cls.var(spec, spec.n + a, coeff)

    @classmethod
    def w(cls, spec: VarSpec, j: int, coeff=1) -> "WPoly":
        if spec.kind != FIELD:
            raise ValueError("w exists only in the field ring")
        return cls.var(spec, spec.n + j, coeff)

    @classmethod
    def u(cls, spec: VarSpec, j: int, coeff=1) -> "WPoly":
        if spec.kind != RESTRICTED:
            raise ValueError("u exists only in the restricted ring")
        return cls.var(spec, 2 * spec.n + j, coeff)

    # -- basic protocol --------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, WPoly):
            return self.spec == other.spec and self.terms == other.terms
        try:
            c = as_gr(other)
        except TypeError:
            return NotImplemented
        return self == WPoly.const(self.spec, c)

    def __hash__(self):
        return hash((self.spec, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def items(self):
        """Terms in the fixed monomial order."""
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]))

    def coeff(self, exps) -> GaussianRational:
        return self.terms.get(tuple(exps), ZERO)

    def _check(self, other: "WPoly"):
        if other.spec != self.spec:
            raise ValueError(f"ring mismatch: {self.spec} vs {other.spec}")

    def _lift(self, other) -> "WPoly":
        if isinstance(other, WPoly):
            self._check(other)
            return other
        return WPoly.const(self.spec, other)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            if prev is None:
                out[e] = c
            else:
                s = prev + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return WPoly(self.spec, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return WPoly(self.spec, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "WPoly":
        c = as_gr(c)
        if not c:
            return WPoly.zero(self.spec)
        return WPoly(self.spec, {e: v * c for e, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, WPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        out: dict[tuple, GaussianRational] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                prev = out.get(e)
                out[e] = c1 * c2 if prev is None else prev + c1 * c2
        return WPoly(self.spec, {e: c for e, c in out.items() if c}, _trusted=True)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = WPoly.const(self.spec, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- grading ---------------------------------------------------------
    def weight_of(self) -> int | None:
        """Common weight of all terms, ``None`` if mixed; zero is rejected."""
        if not self.terms:
            raise ValueError("the zero polynomial has no weight")
        wts = self.spec.weights
        found = {sum(w * e for w, e in zip(wts, exps)) for exps in self.terms}
        return found.pop() if len(found) == 1 else None

    def degree(self) -> int:
        """Ordinary total degree (-1 for zero)."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, indices: Iterable[int]) -> int:
        idx = tuple(indices)
        return max((sum(e[i] for i in idx) for e in self.terms), default=-1)

    def z_degrees(self) -> set[int]:
        """Set of z-degrees (holomorphic z only) occurring in the terms."""
        n = self.spec.n
        return {sum(e[:n]) for e in self.terms}

    def part(self, pred) -> "WPoly":
        """Sub-polynomial of terms whose exponent vector satisfies ``pred``."""
        return WPoly(self.spec, {e: c for e, c in self.terms.items() if pred(e)}, _trusted=True)

    def z_part(self, d: int) -> "WPoly":
        n = self.spec.n
        return self.part(lambda e: sum(e[:n]) == d)

    # -- conjugation / substitution ---------------------------------------
    def conj(self) -> "WPoly":
        """Formal conjugation in the restricted ring: swap z and zb, fix u."""
        if self.spec.kind != RESTRICTED:
            raise ValueError("conj is defined on the restricted ring only")
        n = self.spec.n
        out = {}
        for e, c in self.terms.items():
            out[e[n : 2 * n] + e[:n] + e[2 * n :]] = c.conj()
        return WPoly(self.spec, out, _trusted=True)

    def conj_coeffs(self) -> "WPoly":
        """Conjugate the coefficients only (``P -> P-bar`` as a holomorphic function)."""
        return WPoly(self.spec, {e: c.conj() for e, c in self.terms.items()}, _trusted=True)

    def diff(self, index: int) -> "WPoly":
        out = {}
        for e, c in self.terms.items():
            k = e[index]
            if k:
                e2 = e[:index] + (k - 1,) + e[index + 1 :]
                out[e2] = c * k
        return WPoly(self.spec, out, _trusted=True)

    def evaluate(self, values) -> GaussianRational:
        """Evaluate at a point given as a sequence of exact scalars."""
        vals = [as_gr(v) for v in values]
        if len(vals) != self.spec.nvars:
            raise ValueError("wrong number of values")
        total = ZERO
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = t * v**k
            total = total + t
        return total

    def substitute(self, images: list["WPoly"]) -> "WPoly":
        """Ring homomorphism sending variable ``i`` to ``images[i]``."""
        if len(images) != self.spec.nvars:
            raise ValueError("wrong number of images")
        target = images[0].spec
        cache: dict[tuple[int, int], WPoly] = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        total = WPoly.zero(target)
        for e, c in self.terms.items():
            t = WPoly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            total = total + t
        return total

    def exact_div(self, other: "WPoly") -> "WPoly":
        """Quotient ``self / other``; raises if the division is not exact."""
        self._check(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        lead_e = max(other.terms)
        lead_c = other.terms[lead_e]
        inv = lead_c.inverse()
        rem = dict(self.terms)
        quot: dict[tuple, GaussianRational] = {}
        while rem:
            e = max(rem)
            if any(x < y for x, y in zip(e, lead_e)):
                raise ArithmeticError("polynomial division is not exact")
            qe = tuple(x - y for x, y in zip(e, lead_e))
            qc = rem[e] * inv
            quot[qe] = qc
            for oe, oc in other.terms.items():
                te = tuple(x + y for x, y in zip(qe, oe))
                v = rem.get(te, ZERO) - qc * oc
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return WPoly(self.spec, quot, _trusted=True)

    # -- display -----------------------------------------------------------
    def __repr__(self):
        return f"WPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.spec.names
        parts = []
        for e, c in self.items():
            mono = "*".join(
                (nm if k == 1 else f"{nm}^{k}") for nm, k in zip(names, e) if k
            )
            cs = format_complex(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}" if ("+" in cs or "-" in cs[1:]) else f"{cs}*{mono}")
        return " + ".join(parts)


def restrict(P: WPoly, quadric) -> WPoly:
    """Substitute ``w_j := u_j + i <z, zb>_j`` (field ring -> restricted ring)."""
    spec = P.spec
    if spec.kind != FIELD:
        raise ValueError("restrict expects a field-ring polynomial")
    if (spec.n, spec.k) != (quadric.n, quadric.k):
        raise ValueError(f"dimension mismatch: ring ({spec.n},{spec.k}) vs quadric ({quadric.n},{quadric.k})")
    return P.substitute(restriction_images(quadric))


def hermitian_poly(H, spec: VarSpec) -> WPoly:
    """``(H z . zb) = sum_{a,b} H[b][a] z_a zb_b`` in the restricted ring."""
    n = spec.n
    terms = {}
    for a in range(n):
        for b in range(n):
            c = H[b][a]
            if c:
                e = [0] * spec.nvars
                e[a] += 1
                e[n + b] += 1
                terms[tuple(e)] = c
    return WPoly(spec, terms)


def restriction_images(quadric) -> list[WPoly]:
    rspec = VarSpec(quadric.n, quadric.k, RESTRICTED)
    images = [WPoly.z(rspec, a) for a in range(quadric.n)]
    for j, H in enumerate(quadric.forms):
        images.append(WPoly.u(rspec, j) + hermitian_poly(H, rspec).scale(I))
    return images


def field_monomials(n: int, k: int, weight: int) -> list[tuple[int, ...]]:
    """Exponent vectors ``(alpha, beta)`` with ``|alpha| + 2|beta| = weight``."""
    if weight < 0:
        return []
    out = []
    for wdeg in range(weight // 2 + 1):
        zdeg = weight - 2 * wdeg
        for alpha in _compositions(zdeg, n):
            for beta in _compositions(wdeg, k):
                out.append(alpha + beta)
    out.sort(key=monomial_key)
    return out


def _compositions(total: int, parts: int):
    """All tuples of ``parts`` non-negative ints summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    return list(_compositions(total, parts))


__all__ = [
    "VarSpec",
    "WPoly",
    "FIELD",
    "RESTRICTED",
    "PLAIN",
    "restrict",
    "hermitian_poly",
    "restriction_images",
    "field_monomials",
    "compositions",
    "monomial_key",
]
