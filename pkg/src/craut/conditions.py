"""Sufficient conditions for non-exceptionality.

* Condition (I): ``rank(H_1 z, ..., H_k z) = n`` for some z.
* Condition (II): the map ``(p, q) -> (<p, qbar>_1, ..., <p, qbar>_k)`` from
  C^{2n} to C^k has interior points, i.e. its real Jacobian has rank 2k
  somewhere.

Both conditions are "maximal rank somewhere" statements about matrices whose
entries are linear polynomials.  The maximal-rank locus is Zariski-open, so a
single rational point of full rank certifies ``holds``.  A failure is only
certified by showing that the rank over the field of rational functions is
too small, computed by fraction-free elimination with polynomial entries.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .exact import ZERO, GaussianRational, I, rank
from .quadric import Quadric, matvec, require_nondegenerate
from .wpoly import PLAIN, VarSpec, WPoly

HOLDS = "holds"
FAILS = "fails_certified"
INCONCLUSIVE = "inconclusive"

SYMBOLIC_MAX_N = 4


@dataclass(frozen=True)
class ConditionVerdict:
    status: str
    witness: tuple | None = None
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    def to_dict(self) -> dict:
        from .exact import format_complex

        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = [[format_complex(v) for v in part] for part in self.witness]
        if self.detail:
            out["detail"] = self.detail
        return out


# -- sampling --------------------------------------------------------------------
def _grid_points(dim: int, rng: random.Random, count: int):
    """Points with Gaussian-integer entries in [-3, 3] + [-3, 3]i."""
    yield tuple(GaussianRational(1) for _ in range(dim))
    for _ in range(count - 1):
        yield tuple(GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(dim))


def _wide_points(dim: int, rng: random.Random, count: int):
    for _ in range(count):
        yield tuple(GaussianRational(rng.randint(-50, 50), rng.randint(-50, 50)) for _ in range(dim))


def _samples(dim: int, trials: int, seed: int):
    rng = random.Random(seed)
    grid = max(1, trials // 2)
    yield from _grid_points(dim, rng, grid)
    yield from _wide_points(dim, rng, trials - grid)


# -- symbolic rank ----------------------------------------------------------------
def symbolic_rank(M: list[list[WPoly]]) -> int:
    """Rank over the fraction field of a polynomial matrix (Bareiss with pivoting)."""
    A = [list(row) for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    prev = None
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                v = p * A[i][j] - A[i][c] * A[r][j]
                A[i][j] = v.exact_div(prev) if prev is not None else v
            A[i][c] = WPoly.zero(p.spec)
        prev = p
        r += 1
        if r == rows:
            break
    return r


# -- condition (I) ------------------------------------------------------------------
def _columns_at(Q: Quadric, z) -> list[list[GaussianRational]]:
    cols = [matvec(H, z) for H in Q.forms]
    return [[cols[j][a] for j in range(Q.k)] for a in range(Q.n)]


def condition_I(Q: Quadric, trials: int = 20, seed: int = 0) -> ConditionVerdict:
    require_nondegenerate(Q)
    n, k = Q.n, Q.k
    if k < n:
        return ConditionVerdict(FAILS, detail=f"k = {k} < n = {n}: rank of an n x k matrix is at most k")
    for z in _samples(n, trials, seed):
        if rank(_columns_at(Q, z)) == n:
            return ConditionVerdict(HOLDS, witness=(z,))
    if n > SYMBOLIC_MAX_N:
        return ConditionVerdict(INCONCLUSIVE, detail="symbolic check skipped (n above size cap)")
    spec = VarSpec(n, 0, PLAIN)
    zs = [WPoly.var(spec, a) for a in range(n)]
    M = [
        [sum((zs[b].scale(H[a][b]) for b in range(n) if H[a][b]), WPoly.zero(spec)) for H in Q.forms]
        for a in range(n)
    ]
    r = symbolic_rank(M)
    if r < n:
        return ConditionVerdict(FAILS, detail=f"generic rank {r} < n = {n}")
    return ConditionVerdict(INCONCLUSIVE, detail="generic rank is n but no sampled witness")


# -- condition (II) ------------------------------------------------------------------
def real_jacobian(Q: Quadric, p, q) -> list[list]:
    """Real 2k x 4n Jacobian of ``(p, q) -> (<p, qbar>_j)``.

    Rows: Re F_1, Im F_1, ...; columns: Re p_a, Im p_a (a = 1..n), then
    Re q_b, Im q_b.
    """
    n = Q.n
    qbar = [v.conj() for v in q]
    rows = []
    for H in Q.forms:
        Hp = matvec(H, p)
        cols = []
        for a in range(n):
            d = sum((H[b][a] * qbar[b] for b in range(n)), ZERO)
            cols += [d, d * I]
        for b in range(n):
            cols += [Hp[b], -I * Hp[b]]
        rows.append([v.re for v in cols])
        rows.append([v.im for v in cols])
    return rows


def condition_II(Q: Quadric, trials: int = 20, seed: int = 0) -> ConditionVerdict:
    require_nondegenerate(Q)
    n, k = Q.n, Q.k
    if k > 2 * n:
        return ConditionVerdict(FAILS, detail=f"2k = {2 * k} exceeds the real source dimension 4n = {4 * n}")
    for pt in _samples(2 * n, trials, seed + 1):
        p, q = pt[:n], pt[n:]
        if rank(real_jacobian(Q, p, q)) == 2 * k:
            return ConditionVerdict(HOLDS, witness=(p, q))
    if n > SYMBOLIC_MAX_N:
        return ConditionVerdict(INCONCLUSIVE, detail="symbolic check skipped (n above size cap)")
    # F is holomorphic in (p, zeta) with zeta = qbar: real rank 2k iff complex rank k
    spec = VarSpec(2 * n, 0, PLAIN)
    ps = [WPoly.var(spec, a) for a in range(n)]
    zeta = [WPoly.var(spec, n + b) for b in range(n)]
    M = []
    for H in Q.forms:
        row = []
        for a in range(n):
            row.append(sum((zeta[b].scale(H[b][a]) for b in range(n) if H[b][a]), WPoly.zero(spec)))
        for b in range(n):
            row.append(sum((ps[a].scale(H[b][a]) for a in range(n) if H[b][a]), WPoly.zero(spec)))
        M.append(row)
    r = symbolic_rank(M)
    if r < k:
        return ConditionVerdict(FAILS, detail=f"generic complex rank {r} < k = {k}")
    return ConditionVerdict(INCONCLUSIVE, detail="generic rank is maximal but no sampled witness")


NONEXCEPTIONAL = "nonexceptional"


def sufficient_nonexceptional(Q: Quadric, trials: int = 20, seed: int = 0) -> str:
    """``'nonexceptional'`` when both conditions hold, else ``'inconclusive'``."""
    if condition_I(Q, trials, seed).holds and condition_II(Q, trials, seed).holds:
        return NONEXCEPTIONAL
    return INCONCLUSIVE

