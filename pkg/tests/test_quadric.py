import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from craut.errors import DegenerateQuadricError, QuadricFormatError
from craut.exact import GR, I, ONE, ZERO
from craut.quadric import (
    Quadric,
    catalog,
    equivalent_transform,
    hermitian_solve,
    heisenberg,
    identity,
    last_quadric,
    matvec,
    palinchak_q5,
    parse_catalog_spec,
    random_invertible,
    random_nondegenerate,
    validate,
)
from craut.wpoly import RESTRICTED, VarSpec, WPoly, hermitian_poly


def _form(H, n):
    return hermitian_poly(H, VarSpec(n, 1, RESTRICTED))


def test_validate_examples():
    assert validate(heisenberg(1)).nondegenerate
    r = validate(Quadric.from_forms([[[1, 0], [0, 0]]]))
    assert not r.common_kernel_trivial and not r.nondegenerate
    r = validate(Quadric.from_forms([[[1]], [[2]]]))
    assert r.common_kernel_trivial and not r.forms_independent


def test_non_hermitian_rejected():
    with pytest.raises(QuadricFormatError):
        Quadric.from_forms([[[1, I], [I, 0]]])


def test_shape_rejected():
    with pytest.raises(QuadricFormatError):
        Quadric(2, 1, (((ONE,),),))


def test_heisenberg_catalog():
    Q = catalog("heisenberg", 1)
    assert Q.forms == ((tuple([ONE]),),)


def test_last_quadric_forms():
    Q = last_quadric(2)
    assert (Q.n, Q.k) == (2, 4)
    spec = VarSpec(2, 1, RESTRICTED)
    z = [WPoly.z(spec, a) for a in range(2)]
    zb = [WPoly.zb(spec, a) for a in range(2)]
    expected = [
        z[0] * zb[0],
        z[1] * zb[1],
        z[1] * zb[0] + z[0] * zb[1],  # 2 Re z2 zb1
        (z[1] * zb[0] - z[0] * zb[1]).scale(-I),  # 2 Im z2 zb1
    ]
    assert [_form(H, 2) for H in Q.forms] == expected


@pytest.mark.parametrize("n", [1, 2, 3])
def test_last_validates(n):
    assert validate(last_quadric(n)).nondegenerate


def test_palinchak_forms():
    Q = palinchak_q5()
    spec = VarSpec(3, 1, RESTRICTED)
    z = [WPoly.z(spec, a) for a in range(3)]
    zb = [WPoly.zb(spec, a) for a in range(3)]
    re13 = z[0] * zb[2] + z[2] * zb[0]
    re23 = z[1] * zb[2] + z[2] * zb[1]
    im13 = (z[0] * zb[2] - z[2] * zb[0]).scale(-I)  # 2 Im z1 zb3
    assert [_form(H, 3) for H in Q.forms] == [re13, re23, im13]
    assert validate(Q).nondegenerate


def test_catalog_spec_parsing():
    assert parse_catalog_spec("last(2)") == last_quadric(2)
    assert parse_catalog_spec("palinchak-q5") == palinchak_q5()
    with pytest.raises((ValueError, KeyError)):
        parse_catalog_spec("sphere(2)")


def test_raq_catalog_entries():
    assert catalog("raq-dual").forms[1] == ((ZERO, ONE), (ONE, ZERO))
    assert (catalog("raq-split").n, catalog("raq-split").k) == (2, 2)


def test_random_determinism_and_validity():
    assert random_nondegenerate(2, 2, 7) == random_nondegenerate(2, 2, 7)
    for s in range(10):
        assert validate(random_nondegenerate(3, 2, s)).nondegenerate
    with pytest.raises(ValueError):
        random_nondegenerate(1, 2, 0)


def test_equivalent_transform_examples():
    Q = random_nondegenerate(2, 2, 3)
    assert equivalent_transform(Q, identity(2), identity(2)) == Q
    Q2 = equivalent_transform(heisenberg(1), [[2]], [[1]])
    assert Q2.forms[0][0][0] == 4


def test_equivalent_transform_rejects_singular():
    with pytest.raises(ValueError):
        equivalent_transform(heisenberg(2), [[1, 1], [1, 1]], [[1]])
    with pytest.raises(ValueError):
        equivalent_transform(heisenberg(1), [[1]], [[0]])


@given(st.integers(0, 10_000))
def test_validate_invariant_under_transforms(seed):
    rng = random.Random(seed)
    n, k = rng.choice([(1, 1), (2, 1), (2, 2), (2, 3), (3, 2)])
    Q = random_nondegenerate(n, k, seed)
    Q2 = equivalent_transform(Q, random_invertible(n, rng), random_invertible(k, rng, real=True))
    assert validate(Q2) == validate(Q)


def test_hermitian_solve_examples():
    assert list(hermitian_solve(heisenberg(1), [[GR(3, -1)]])) == [GR(3, -1)]
    Q = Quadric.from_forms([[[1, 0], [0, 0]], [[0, 1], [1, 0]]])
    assert hermitian_solve(Q, [[0, 1], [0, 0]]) is None
    L = last_quadric(2)
    x0 = [ONE, I]
    assert list(hermitian_solve(L, [matvec(H, x0) for H in L.forms])) == x0


def test_hermitian_solve_rejects_degenerate():
    with pytest.raises(DegenerateQuadricError):
        hermitian_solve(Quadric.from_forms([[[1, 0], [0, 0]]]), [[1, 0]])


@given(st.integers(0, 10_000), st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_nu_injective(seed, parts):
    Q = random_nondegenerate(3, 2, seed)
    x = [GR(parts[2 * i], parts[2 * i + 1]) for i in range(3)]
    assert list(hermitian_solve(Q, [matvec(H, x) for H in Q.forms])) == x


def test_file_roundtrip(tmp_path):
    Q = random_nondegenerate(2, 3, 11)
    p = tmp_path / "q.json"
    Q.save(p)
    assert Quadric.load(p) == Q
    assert Quadric.loads(Q.dumps()).dumps() == Q.dumps()


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("{", "line 1"),
        ('{"n": 1, "k": 1}', "forms"),
        ('{"n": 1, "k": 1, "forms": [[["1.0"]]]}', "forms[0][0][0]"),
        ('{"n": 2, "k": 1, "forms": [[["1", "i"], ["i", "0"]]]}', "Hermitian"),
        ('{"n": 2, "k": 1, "forms": [[["1"]]]}', ""),
    ],
)
def test_load_errors(text, fragment):
    with pytest.raises(QuadricFormatError) as info:
        Quadric.loads(text)
    assert fragment in str(info.value)


def test_hermitian_value_is_real():
    Q = random_nondegenerate(3, 3, 5)
    z = (GR(1, 2), GR(Fraction(-1, 3), 1), GR(0, -2))
    for v in Q.form_value(z):
        assert v.is_real
