from math import comb

import pytest

from craut.charmod import (
    a_solution_space,
    charmod_generators,
    charmod_report,
    quotient_graded_dims,
    weight_one_degree_violations,
)
from craut.errors import DegenerateQuadricError
from craut.quadric import Quadric, heisenberg, last_quadric, palinchak_q5, random_nondegenerate
from craut.solver import graded_component


def test_heisenberg_generator_is_s_squared():
    gens = charmod_generators(heisenberg(1))
    assert len(gens) == 1
    (g,) = gens
    assert g.degree == 2 and [key for key, _ in g.entries] == [(0, (2,))]


def test_sphere_generators_are_multiples_of_s_squared():
    for g in charmod_generators(heisenberg(2)):
        assert [key for key, _ in g.entries] == [(0, (2,))]


@pytest.mark.parametrize("Q", [heisenberg(1), heisenberg(2)], ids=["n1", "n2"])
def test_quotient_is_c_s_mod_s2(Q):
    assert quotient_graded_dims(Q, 3) == [1, 1, 0, 0]


def test_a_solution_examples():
    assert a_solution_space(heisenberg(1), 2).dim == 2
    assert a_solution_space(heisenberg(2), 2).dim == 4
    sol = a_solution_space(heisenberg(1), 3)
    for comps in sol.basis:
        assert all(p.degree() <= 1 for p in comps)


def test_degree_zero_and_one_are_free():
    Q = random_nondegenerate(2, 3, 4)
    dims = quotient_graded_dims(Q, 1)
    assert dims == [3, 3 * comb(3, 2)]


@pytest.mark.parametrize("nk, seed", [((2, 1), 0), ((2, 2), 1), ((2, 3), 2), ((3, 2), 3)])
def test_degree_bounds(nk, seed):
    n, k = nk
    Q = random_nondegenerate(n, k, seed)
    dims = quotient_graded_dims(Q, k + 2)
    assert all(d >= 0 for d in dims)
    assert dims[k + 1 :] == [0, 0]
    series = [a_solution_space(Q, D).dim for D in range(k + 3)]
    assert series == sorted(series)
    assert series[k] == series[k + 2]


def test_report_side_by_side():
    r = charmod_report(heisenberg(2))
    d = r.to_dict()
    assert d["dim_M_prime"] == 2 and d["dim_L1"] == 4
    assert r.ok


def test_report_respects_max_degree():
    r = charmod_report(heisenberg(1), max_degree=5)
    assert r.quotient_dims == (1, 1, 0, 0, 0, 0)


def test_weight_one_degree_relation():
    for Q in (heisenberg(2), last_quadric(2), palinchak_q5(), random_nondegenerate(2, 2, 5)):
        assert weight_one_degree_violations(Q, graded_component(Q, 1).basis) == []


def test_degenerate_rejected():
    with pytest.raises(DegenerateQuadricError):
        charmod_generators(Quadric.from_forms([[[1, 0], [0, 0]]]))
    with pytest.raises(ValueError):
        quotient_graded_dims(heisenberg(1), -1)
