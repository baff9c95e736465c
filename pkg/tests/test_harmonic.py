import random
from fractions import Fraction
from math import comb

import pytest

from htutte.errors import DegreeZero
from htutte.harmonic import (
    SubsetFn,
    from_json,
    gamma_apply,
    harm_basis,
    harm_dimension,
    is_harmonic,
    level_sum,
    tilde_eval,
    tilde_table,
    to_json,
)
from htutte.subsets import lex_masks, mask_of, popcount


def _fn(n, d, assignments):
    return SubsetFn(n, d, {mask_of(s): v for s, v in assignments})


def test_gamma_worked_example():
    # degree-2 function on 4 points with a_1 = 1, the rest 0
    f = _fn(4, 2, [((1, 2), 1)])
    g = gamma_apply(f)
    assert g.values == {mask_of([1]): 1, mask_of([2]): 1}


def test_gamma_general_coefficients():
    # coefficients a_1..a_6 in lexicographic order of the 2-subsets
    a = [Fraction(k) for k in (1, 2, 3, 4, 5, 6)]
    f = SubsetFn(4, 2, dict(zip(lex_masks(4, 2), a)))
    g = gamma_apply(f)
    assert g(mask_of([1])) == a[0] + a[1] + a[2]
    assert g(mask_of([2])) == a[0] + a[3] + a[4]
    assert g(mask_of([3])) == a[1] + a[3] + a[5]
    assert g(mask_of([4])) == a[2] + a[4] + a[5]


def test_gamma_zero_and_degree_errors():
    zero = SubsetFn(4, 2, {})
    assert gamma_apply(zero).is_zero
    f = _fn(3, 1, [((1,), 1), ((3,), -1)])
    assert gamma_apply(f)(0) == 0
    with pytest.raises(DegreeZero):
        gamma_apply(SubsetFn(3, 0, {0: 1}))


def test_basis_n4_d2_matches_solved_family():
    # the solved two-parameter family: a1{12} + a2{13} - (a1+a2){14}
    # - (a1+a2){23} + a2{24} + a1{34}; basis = (a1,a2) in {(1,0),(0,1)}
    b = harm_basis(4, 2)
    assert len(b) == 2
    expect0 = _fn(4, 2, [((1, 2), 1), ((1, 4), -1), ((2, 3), -1), ((3, 4), 1)])
    expect1 = _fn(4, 2, [((1, 3), 1), ((1, 4), -1), ((2, 3), -1), ((2, 4), 1)])
    assert b[0] == expect0
    assert b[1] == expect1


def test_basis_small_cases():
    b = harm_basis(3, 0)
    assert len(b) == 1 and b[0].values == {0: Fraction(1)}
    b = harm_basis(3, 1)
    assert b[0] == _fn(3, 1, [((1,), 1), ((3,), -1)])
    assert b[1] == _fn(3, 1, [((2,), 1), ((3,), -1)])
    assert harm_basis(3, 2) == []  # C(3,2) = C(3,1)


@pytest.mark.parametrize("n", range(1, 8))
def test_basis_is_harmonic_with_expected_dimension(n):
    for d in range(n + 1):
        basis = harm_basis(n, d)
        assert len(basis) == harm_dimension(n, d)
        for f in basis:
            assert is_harmonic(f)


def test_tilde_worked_example():
    a = [Fraction(k) for k in (1, 2, 3, 4, 5, 6)]
    f = SubsetFn(4, 2, dict(zip(lex_masks(4, 2), a)))
    # subsets of {1,3,4} of size 2: {1,3}, {1,4}, {3,4} -> a2 + a3 + a6
    assert tilde_eval(f, mask_of([1, 3, 4])) == a[1] + a[2] + a[5]
    assert tilde_eval(f, mask_of([2])) == 0  # |X| < d


def test_tilde_table_matches_pointwise():
    f = harm_basis(5, 2)[0]
    table = tilde_table(f)
    for x in range(1 << 5):
        assert table[x] == tilde_eval(f, x)


@pytest.mark.parametrize("n,d", [(4, 1), (4, 2), (6, 2), (7, 3), (8, 2)])
def test_tilde_complement_sign(n, d):
    full = (1 << n) - 1
    for f in harm_basis(n, d):
        for x in range(1 << n):
            assert tilde_eval(f, x) == (-1) ** d * tilde_eval(f, full ^ x)


@pytest.mark.parametrize("n,d", [(4, 2), (6, 2), (8, 3)])
def test_superset_sums_vanish(n, d):
    # partial differentiation in any degree i < d kills harmonic functions
    for f in harm_basis(n, d):
        for i in range(d):
            for x in lex_masks(n, i):
                total = sum(v for z, v in f.values.items() if z & x == x)
                assert total == 0


@pytest.mark.parametrize("n,d", [(4, 1), (5, 2), (7, 2), (8, 4)])
def test_tilde_level_sums_vanish(n, d):
    # sum of the extension over all subsets of any fixed size t >= d is zero
    for f in harm_basis(n, d)[:2]:
        table = tilde_table(f)
        for t in range(d, n + 1):
            assert sum(table[x] for x in range(1 << n) if popcount(x) == t) == 0


def test_level_sum_examples():
    f = harm_basis(4, 2)[0]  # a1 = 1, a2 = 0
    # i = 0 at J = {1}: the three 2-sets avoiding 1 carry -1, 0, 1
    assert level_sum(f, mask_of([1]), 0) == 0
    assert level_sum(f, 0, 0) == 0  # coefficients sum to zero
    # i = d on a superset of a d-set reduces to the extension value
    assert level_sum(f, mask_of([1, 2, 3]), 2) == tilde_eval(f, mask_of([1, 2, 3]))
    with pytest.raises(ValueError):
        level_sum(f, 0, 3)


@pytest.mark.parametrize("n", range(2, 8))
def test_level_sum_identity(n):
    # f^(i)(J) = (-1)^(d-i) C(d,i) f~(J) for every basis element, J, i
    for d in range(1, n // 2 + 1):
        for f in harm_basis(n, d):
            for j in range(1 << n):
                expect_base = tilde_eval(f, j)
                for i in range(d + 1):
                    assert level_sum(f, j, i) == (-1) ** (d - i) * comb(d, i) * expect_base


def test_linearity_and_scaling():
    b = harm_basis(5, 2)
    combo = b[0].scale(Fraction(2, 3)) + b[1].scale(-2)
    assert is_harmonic(combo)
    x = mask_of([1, 2, 5])
    assert tilde_eval(combo, x) == Fraction(2, 3) * tilde_eval(b[0], x) - 2 * tilde_eval(b[1], x)


def test_json_roundtrip_and_validation():
    f = harm_basis(3, 1)[0]
    obj = to_json(f)
    assert obj == {
        "n": 3,
        "d": 1,
        "coeffs": [
            {"subset": [1], "value": "1"},
            {"subset": [3], "value": "-1"},
        ],
    }
    assert from_json(obj) == f
    bad = {"n": 3, "d": 1, "coeffs": [{"subset": [1], "value": "1"}]}
    with pytest.raises(ValueError):
        from_json(bad)
    g = from_json(bad, allow_nonharmonic=True)
    assert not is_harmonic(g)
    assert gamma_apply(g)(0) == 1  # differentiation still works on it


def test_subset_fn_validation():
    with pytest.raises(ValueError):
        SubsetFn(3, 1, {0b11: 1})  # wrong popcount
    with pytest.raises(ValueError):
        SubsetFn(3, 1, {0b1000: 1})  # outside the ground set
    with pytest.raises(ValueError):
        SubsetFn(17, 1, {})


def test_random_harmonic_combinations_stay_in_kernel():
    rng = random.Random(3)
    for n, d in [(5, 1), (6, 2), (7, 3)]:
        basis = harm_basis(n, d)
        f = SubsetFn(n, d, {})
        for b in basis:
            f = f + b.scale(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
        assert is_harmonic(f)
