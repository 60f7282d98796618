import pickle
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from craut.exact import (
    GR,
    ONE,
    ZERO,
    GaussianRational,
    I,
    format_complex,
    format_rational,
    nullspace,
    parse_complex,
    parse_rational,
    rank,
    rref,
    solve,
    sparse_nullspace,
)
from strategies import fractions, gauss_ints, gaussians, matrices


# -- scalar arithmetic --------------------------------------------------------
def test_gaussian_basic_arithmetic():
    a = GR(1, 2)
    b = GR(Fraction(1, 2), -1)
    assert a + b == GR(Fraction(3, 2), 1)
    assert a * b == GR(Fraction(5, 2), 0)
    assert (a / b) * b == a
    assert I * I == -1
    assert a.conj() == GR(1, -2)
    assert a.abs2() == 5


def test_gaussian_equals_plain_numbers():
    assert GR(3) == 3
    assert GR(Fraction(1, 2)) == Fraction(1, 2)
    assert hash(GR(Fraction(1, 2))) == hash(Fraction(1, 2))
    assert GR(0, 1) != 0


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_pickle_roundtrip():
    x = GR(Fraction(-7, 3), Fraction(2, 9))
    assert pickle.loads(pickle.dumps(x)) == x


@given(gaussians)
def test_conj_involution_and_norm(x):
    assert x.conj().conj() == x
    assert x.abs2() >= 0
    assert (x.abs2() == 0) == (x == 0)
    assert x * x.conj() == x.abs2()


@given(gaussians, gaussians, gaussians)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if y:
        assert (x / y) * y == x


# -- grammar ------------------------------------------------------------------
@pytest.mark.parametrize(
    "text, value",
    [
        ("3", GR(3)),
        ("-1/2", GR(Fraction(-1, 2))),
        ("i", I),
        ("-i", -I),
        ("2i", GR(0, 2)),
        ("1/2-3/4i", GR(Fraction(1, 2), Fraction(-3, 4))),
        ("1+1i", GR(1, 1)),
    ],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("bad", ["", "1.5", "1/0", "i2", "1+i", "+1", "1 + 2i", "--1", "1/-2", "2/3/4"])
def test_parse_complex_rejects(bad):
    with pytest.raises(ValueError):
        parse_complex(bad)


def test_parse_rational_rejects_complex():
    with pytest.raises(ValueError):
        parse_rational("2i")
    assert parse_rational("-4/6") == Fraction(-2, 3)


def test_format_examples():
    assert format_complex(I) == "i"
    assert format_complex(-I) == "-i"
    assert format_complex(GR(0, 2)) == "2i"
    assert format_complex(GR(Fraction(1, 2), Fraction(-3, 4))) == "1/2-3/4i"
    assert format_complex(GR(1, 1)) == "1+1i"
    assert format_complex(ZERO) == "0"
    assert format_rational(Fraction(-3, 6)) == "-1/2"


@given(gaussians)
def test_format_parse_roundtrip(x):
    assert parse_complex(format_complex(x)) == x


@given(fractions)
def test_rational_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


# -- linear algebra examples ------------------------------------------------------
def test_rank_examples():
    assert rank([[1, 0], [0, 1]]) == 2
    assert rank([[0, 0], [0, 0]]) == 0
    assert rank([[1, 1], [2, 2]]) == 1


def test_nullspace_examples():
    assert nullspace([[1, 0], [0, 1]]) == []
    (v,) = nullspace([[1, 1]])
    assert v[0] + v[1] == 0 and v != [0, 0]
    assert len(nullspace([[0, 0], [0, 0]])) == 2


def test_solve_examples():
    assert solve([[1, 0], [0, 1]], [3, 4]) == [3, 4]
    assert solve([[1, 0], [0, 0]], [0, 1]) is None
    assert solve([[2]], [1]) == [Fraction(1, 2)]


def test_gaussian_systems():
    M = [[ONE, I], [I, GR(-1)]]
    assert rank(M) == 1
    (v,) = nullspace(M)
    assert all(sum((a * b for a, b in zip(row, v)), ZERO) == 0 for row in M)
    x = solve([[ONE, I], [ZERO, ONE + I]], [GR(2), GR(0, 2)])
    assert x is not None
    assert x[1] * (ONE + I) == GR(0, 2)


def test_large_integers_do_not_overflow():
    big = 10**60 + 7
    M = [[big, 1], [1, big]]
    assert rank(M) == 2
    x = solve(M, [1, 0])
    assert big * x[0] + x[1] == 1


def test_gaussian_content_removal_keeps_entries_small():
    # rows sharing a Gaussian prime factor (1+i); elimination must stay exact and fast
    p = GR(1, 1)
    rows = [[p * GR(a, b) for a, b in zip(range(i, i + 8), range(8 - i, 16 - i))] for i in range(8)]
    rows = [[GR(x.re, x.im) * GR(3, -2) ** (r % 3) for x in row] for r, row in enumerate(rows)]
    r = rank(rows)
    assert 1 <= r <= 8
    for v in nullspace(rows):
        for row in rows:
            assert sum((a * b for a, b in zip(row, v)), ZERO) == 0


def _matvec(M, v):
    zero = ZERO if any(isinstance(x, GaussianRational) for row in M for x in row) else Fraction(0)
    return [sum((a * b for a, b in zip(row, v)), zero) for row in M]


@given(matrices(fractions))
def test_rank_nullity_rational(M):
    ns = nullspace(M)
    assert rank(M) + len(ns) == len(M[0])
    for v in ns:
        assert all(x == 0 for x in _matvec(M, v))


@given(matrices(gauss_ints, 4, 4))
def test_rank_nullity_gaussian(M):
    ns = nullspace(M)
    assert rank(M) + len(ns) == len(M[0])
    for v in ns:
        assert all(x == 0 for x in _matvec(M, v))


@given(matrices(fractions), st.data())
def test_solve_iff_rank_condition(M, data):
    b = data.draw(st.lists(fractions, min_size=len(M), max_size=len(M)))
    x = solve(M, b)
    augmented = [row + [bi] for row, bi in zip(M, b)]
    consistent = rank(augmented) == rank(M)
    assert (x is not None) == consistent
    if x is not None:
        assert _matvec(M, x) == b


@given(matrices(fractions), st.randoms(use_true_random=False))
def test_rref_independent_of_row_order(M, rnd):
    shuffled = list(M)
    rnd.shuffle(shuffled)
    assert rref(M) == rref(shuffled)


def test_sparse_nullspace_canonical_shape():
    # x0 + x2 = 0, x1 - x2 = 0
    basis = sparse_nullspace([{0: 1, 2: 1}, {1: 1, 2: -1}], 3)
    assert basis == [{2: 1, 0: -1, 1: 1}]
