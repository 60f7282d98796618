"""The eleven acceptance criteria, one test each.

Every test prints ``criterion N: PASS|FAIL ...`` (also collected into the
terminal summary) before asserting.
"""

import io
import json
import random
from fractions import Fraction
from functools import lru_cache

from conftest import ACCEPTANCE_LINES

from craut import cli
from craut.charmod import a_solution_space, quotient_graded_dims
from craut.conditions import condition_I
from craut.exact import GR
from craut.quadric import equivalent_transform, heisenberg, last_quadric, palinchak_q5, random_invertible, random_nondegenerate
from craut.raq import dual_numbers, lift_to_quadric, on_quadric, poincare_map, raq_quadric, split_algebra, truncated_poly
from craut.solver import (
    algebra_components,
    bracket,
    degree_bound_violations,
    exceptional_via_a,
    full_algebra,
    graded_component,
    in_span,
    is_exceptional,
    is_rigid,
    nonrigid_via_a,
    structure_violations,
    tangency_residual,
)

from test_solver import hand_heisenberg_fields

C2_TYPES = [(1, 1), (2, 1), (2, 2), (3, 2), (2, 3), (3, 3)]


def report(n, ok, detail=""):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok


def zero_residual(Q, X):
    return all(not r for r in tangency_residual(Q, X))


@lru_cache(maxsize=None)
def c2_quadrics():
    return tuple((nk, random_nondegenerate(*nk, 3000 + i)) for nk in C2_TYPES for i in range(30))


def test_criterion_1_heisenberg_baseline():
    Q = heisenberg(1)
    dims = full_algebra(Q)
    hand = hand_heisenberg_fields()
    same_span = all(
        all(zero_residual(Q, X) and in_span(X, graded_component(Q, m).basis) is not None for X in fields)
        and all(in_span(Y, fields) is not None for Y in graded_component(Q, m).basis)
        for m, fields in hand.items()
    )
    expected = [(-2, 1), (-1, 2), (0, 2), (1, 2), (2, 1), (3, 0)]
    total = sum(d for _, d in dims)
    ok = dims == expected and total == 8 and same_span
    assert report(1, ok, f"dims {dims}, total {total}, hand derivation {'matches' if same_span else 'differs'}")


def test_criterion_2_no_weight_three():
    bad = [(nk, Q) for nk, Q in c2_quadrics() if graded_component(Q, 3).dim != 0]
    assert report(2, not bad, f"{len(c2_quadrics())} quadrics over {len(C2_TYPES)} types, {len(bad)} with g_3 != 0")


def test_criterion_3_last_quadric_rigid():
    dims = {n: graded_component(last_quadric(n), 1).dim for n in (2, 3)}
    ok = all(d == 0 for d in dims.values())
    assert report(3, ok, f"dim g_1: last(2) = {dims[2]}, last(3) = {dims[3]}; expected 0 for both")


def test_criterion_4_palinchak_data_point():
    Q = palinchak_q5()
    g3 = graded_component(Q, 3).dim
    g1 = graded_component(Q, 1).dim
    cI = condition_I(Q)
    flags = []
    if g1 == 0:
        flags.append("g_1 = 0 but claimed nonzero")
    if cI.holds:
        flags.append("condition (I) holds but claimed to fail: open question")
    detail = f"dim g_3 = {g3}; dim g_1 = {g1} (claimed != 0); condition (I) {cI.status} (claimed fails)"
    if flags:
        detail += "; MISMATCH: " + ", ".join(flags)
    assert report(4, g3 == 0, detail)


def test_criterion_5_second_path_agreement():
    named = [heisenberg(1), last_quadric(2), last_quadric(3), palinchak_q5()]
    extra = [random_nondegenerate(2, 2, 500 + i) for i in range(20)]
    quadrics = named + [Q for _, Q in c2_quadrics()] + extra
    bad = 0
    for Q in quadrics:
        if exceptional_via_a(Q) != is_exceptional(Q) or nonrigid_via_a(Q) != (not is_rigid(Q)):
            bad += 1
    assert report(5, bad == 0, f"{len(quadrics)} quadrics, {bad} disagreements")


def test_criterion_6_weight_bound():
    problems = []
    count = 0
    for n, k in [(2, 1), (2, 2), (2, 3)]:
        for i in range(10):
            Q = random_nondegenerate(n, k, 600 + 10 * k + i)
            comps = algebra_components(Q)
            count += 1
            first_zero = next(c.m for c in comps if c.m >= 1 and c.dim == 0)
            if first_zero > 2 * k + 1:
                problems.append(f"({n},{k}) first vanishing weight {first_zero}")
            top = [c for c in comps if c.m == 2 * k + 1]
            if top and top[0].dim != 0:
                problems.append(f"({n},{k}) g_{2 * k + 1} != 0")
            for c in comps:
                for X in c.basis:
                    problems += degree_bound_violations(Q, X)
    assert report(6, not problems, f"{count} quadrics" + (f"; {problems[:3]}" if problems else ", all bounds hold"))


def _bracket_problems(Q):
    comps = {m: graded_component(Q, m) for m, _ in full_algebra(Q)}
    problems = []
    for i, ci in comps.items():
        for X in ci.basis:
            problems += structure_violations(Q, X, i)
        for j, cj in comps.items():
            target = comps.get(i + j)
            for X in ci.basis:
                for Y in cj.basis:
                    B = bracket(X, Y)
                    if not B:
                        continue
                    if not zero_residual(Q, B) or target is None or in_span(B, target.basis) is None:
                        problems.append(f"[g_{i}, g_{j}]")
    return problems


def test_criterion_7_brackets_and_structure():
    problems = _bracket_problems(heisenberg(1)) + _bracket_problems(random_nondegenerate(2, 2, 700))
    assert report(7, not problems, f"{len(problems)} problems")


def test_criterion_8_equivalence_invariance():
    rng = random.Random(800)
    bad = 0
    for Q in [heisenberg(1)] + [random_nondegenerate(2, 2, 800 + i) for i in range(5)]:
        base = full_algebra(Q)
        for _ in range(3):
            S = random_invertible(Q.n, rng)
            rho = random_invertible(Q.k, rng, real=True)
            if full_algebra(equivalent_transform(Q, S, rho)) != base:
                bad += 1
    assert report(8, bad == 0, f"18 transforms, {bad} dimension changes")


def _rq(rng):
    return Fraction(rng.randint(-5, 5), rng.randint(1, 4))


def test_criterion_9_raq_suite():
    rng = random.Random(900)
    notes = []
    ok = True
    for name, A in [("dual", dual_numbers()), ("split", split_algebra()), ("t^3", truncated_poly(3))]:
        Q = raq_quadric(A)
        nonzero = [m for m, d in full_algebra(Q) if d]
        exc = is_exceptional(Q)
        mapped = 0
        while mapped < 10:
            a = [GR(_rq(rng), _rq(rng)) for _ in range(A.n)]
            r = [_rq(rng) for _ in range(A.n)]
            Z = [GR(_rq(rng), _rq(rng)) for _ in range(A.n)]
            W = lift_to_quadric(A, Z, [_rq(rng) for _ in range(A.n)])
            image = poincare_map(A, a, r, Z, W)
            if image is None:
                continue
            mapped += 1
            ok &= on_quadric(A, Z, W) and on_quadric(A, *image)
        ok &= not exc and nonzero == [-2, -1, 0, 1, 2]
        notes.append(f"{name}: components {nonzero}, exceptional {exc}")
    assert report(9, ok, "; ".join(notes) + "; 10 mapped points each")


def test_criterion_10_characteristic_module():
    h = quotient_graded_dims(heisenberg(1), 3)
    problems = [] if h == [1, 1, 0, 0] else [f"heisenberg(1) quotient {h}"]
    for n, k in [(2, 1), (2, 2), (3, 3)]:
        for i in range(5):
            Q = random_nondegenerate(n, k, 1000 + 10 * k + i)
            dims = quotient_graded_dims(Q, k + 2)
            if any(dims[k + 1 :]):
                problems.append(f"({n},{k}) quotient {dims}")
            if a_solution_space(Q, k).dim != a_solution_space(Q, k + 2).dim:
                problems.append(f"({n},{k}) a-space not stable")
    assert report(10, not problems, f"heisenberg(1) quotient {h}; 15 random" + (f"; {problems}" if problems else ", all stable"))


def test_criterion_11_census():
    outs = []
    codes = []
    for jobs in (1, 4):
        buf = io.StringIO()
        codes.append(cli.main(["census", "--n", "2", "--k", "2", "--samples", "30", "--seed", "1", "--jobs", str(jobs)], stdout=buf))
        outs.append(buf.getvalue())
    res = json.loads(outs[0])["result"]
    identical = outs[0] == outs[1]
    rigid = res["counts"].get("rigid", 0)
    exceptional = res["counts"].get("exceptional", 0)
    parts = [
        ("byte-identical across jobs 1/4", identical),
        (f"{rigid}/30 rigid (need >= 20)", rigid >= 20),
        (f"{exceptional} exceptional, exit codes {codes}", exceptional == 0 and codes == [0, 0]),
    ]
    detail = "; ".join(f"{text}: {'ok' if good else 'not met'}" for text, good in parts) + f"; counts {res['counts']}"
    assert report(11, all(g for _, g in parts), detail)
