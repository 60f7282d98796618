import pytest

from craut import conditions
from craut.conditions import (
    FAILS,
    HOLDS,
    INCONCLUSIVE,
    NONEXCEPTIONAL,
    condition_I,
    condition_II,
    real_jacobian,
    sufficient_nonexceptional,
    symbolic_rank,
)
from craut.errors import DegenerateQuadricError
from craut.exact import ONE, rank
from craut.quadric import Quadric, heisenberg, last_quadric, palinchak_q5, random_nondegenerate
from craut.raq import direct_sum, raq_quadric, split_algebra, truncated_poly
from craut.solver import is_exceptional
from craut.wpoly import PLAIN, VarSpec, WPoly


def test_heisenberg_conditions():
    Q = heisenberg(1)
    assert condition_I(Q).status == HOLDS
    assert rank(real_jacobian(Q, (ONE,), (ONE,))) == 2
    assert condition_II(Q).status == HOLDS
    assert sufficient_nonexceptional(Q) == NONEXCEPTIONAL


@pytest.mark.parametrize(
    "A",
    [truncated_poly(2), split_algebra(), truncated_poly(3), direct_sum(truncated_poly(2), truncated_poly(1))],
    ids=["dual", "split", "t3", "dual+R"],
)
def test_raq_quadrics_satisfy_both(A):
    Q = raq_quadric(A)
    assert condition_I(Q).holds
    assert condition_II(Q).holds
    assert sufficient_nonexceptional(Q) == NONEXCEPTIONAL


def test_raq_unit_is_a_witness():
    Q = raq_quadric(truncated_poly(3))
    unit = (ONE, 0 * ONE, 0 * ONE)
    assert rank(conditions._columns_at(Q, unit)) == 3


def test_last2():
    Q = last_quadric(2)
    assert condition_I(Q).status == HOLDS
    # (p, q) -> p q* has rank-one image: complex dimension 3 < k = 4
    v = condition_II(Q)
    assert v.status == FAILS and "generic complex rank 3" in v.detail


def test_palinchak_conditions():
    Q = palinchak_q5()
    assert condition_II(Q).holds
    # the printed forms give a generically invertible column matrix
    v = condition_I(Q)
    assert v.status == HOLDS
    (z,) = v.witness
    assert rank(conditions._columns_at(Q, z)) == 3


def test_trivial_failure_certificates():
    v = condition_I(heisenberg(2))
    assert v.status == FAILS and "k = 1 < n = 2" in v.detail
    assert sufficient_nonexceptional(heisenberg(2)) == INCONCLUSIVE
    v = condition_II(last_quadric(2 + 1))
    assert v.status == FAILS  # 2k = 18 > 4n = 12


def test_symbolic_rank():
    spec = VarSpec(2, 0, PLAIN)
    x, y = WPoly.var(spec, 0), WPoly.var(spec, 1)
    assert symbolic_rank([[x, y], [x * x, x * y]]) == 1
    assert symbolic_rank([[x, y], [y, x]]) == 2
    assert symbolic_rank([[x, y, x + y], [y, x, x + y], [x - y, y - x, WPoly.zero(spec)]]) == 2


def test_symbolic_branch_when_sampling_finds_nothing(monkeypatch):
    monkeypatch.setattr(conditions, "_samples", lambda dim, trials, seed: iter(()))
    v = condition_I(palinchak_q5())
    assert v.status == INCONCLUSIVE and "generic rank is n" in v.detail
    assert condition_II(last_quadric(2)).status == FAILS


def test_size_cap(monkeypatch):
    monkeypatch.setattr(conditions, "_samples", lambda dim, trials, seed: iter(()))
    monkeypatch.setattr(conditions, "SYMBOLIC_MAX_N", 1)
    assert condition_I(last_quadric(2)).status == INCONCLUSIVE


def test_deterministic():
    Q = random_nondegenerate(3, 4, 8)
    assert condition_I(Q, 10, 3) == condition_I(Q, 10, 3)
    assert condition_II(Q, 10, 3) == condition_II(Q, 10, 3)


def test_seed_robust_holds():
    Q = random_nondegenerate(3, 3, 6)
    for seed in range(5):
        assert condition_I(Q, 20, seed).holds
        assert condition_II(Q, 20, seed).holds


def test_degenerate_rejected():
    with pytest.raises(DegenerateQuadricError):
        condition_I(Quadric.from_forms([[[1, 0], [0, 0]]]))


@pytest.mark.parametrize("seed", range(6))
def test_sufficient_condition_is_sound(seed):
    Q = random_nondegenerate(3, 3, 200 + seed)
    if sufficient_nonexceptional(Q) == NONEXCEPTIONAL:
        assert not is_exceptional(Q)


def test_verdict_rendering():
    d = condition_I(heisenberg(1)).to_dict()
    assert d == {"status": "holds", "witness": [["1"]]}
    assert "witness" not in condition_I(heisenberg(2)).to_dict()
