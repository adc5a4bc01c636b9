import math
from fractions import Fraction

import pytest

from strataforge.curves import LPolynomial
from strataforge.errors import BudgetExceededError
from strataforge.symplectic import (
    MonteCarloEstimate,
    charpoly_mod,
    coset_charpoly_distribution,
    fixed_vector_proportion,
    group_bfs,
    identity,
    mat_mul,
    matrix_charpoly,
    multiplier,
    multiplier_coset_rep,
    random_sp,
    sp_order,
    standard_generators,
    symplectic_form,
    transvection,
    weyl_order,
)


# ---------------------------------------------------------------------------
# form and multiplier


def test_symplectic_form_is_skew_and_invertible():
    from strataforge.symplectic import det_mod, mat_transpose
    for g, l in [(1, 3), (2, 3), (2, 5)]:
        j = symplectic_form(g, l)
        assert mat_transpose(j) == tuple(tuple((-x) % l for x in row) for row in j)
        assert det_mod(j, l) != 0


def test_multiplier_identity_and_scalars():
    assert multiplier(identity(2), 3) == 1
    assert multiplier(identity(4), 5) == 1
    for l in (5, 7):
        for c in range(1, l):
            scalar = tuple(tuple(c if i == j else 0 for j in range(4)) for i in range(4))
            assert multiplier(scalar, l) == c * c % l


def test_multiplier_rejects_non_gsp():
    # upper triangular with unequal diagonal scaling of the two hyperbolic
    # pairs (2x2 matrices are all conformal, so the check needs dim >= 4)
    bad = tuple(tuple((2 if i == 3 else 1) if i == j else 0 for j in range(4))
                for i in range(4))
    with pytest.raises(ValueError):
        multiplier(bad, 5)
    with pytest.raises(ValueError):
        multiplier(((0, 0), (0, 0)), 3)
    # every invertible 2x2 matrix is conformal with multiplier det
    assert multiplier(((1, 1), (0, 2)), 5) == 2


def test_multiplier_is_multiplicative():
    for l in (3, 5):
        a = random_sp(1, l, seed=1)
        b = random_sp(1, l, seed=2)
        d2 = multiplier_coset_rep(1, l, 2)
        for x in (a, mat_mul(a, d2, l)):
            for y in (b, mat_mul(b, d2, l)):
                assert multiplier(mat_mul(x, y, l), l) == \
                    multiplier(x, l) * multiplier(y, l) % l


def test_coset_rep_has_multiplier_m():
    for g, l in [(1, 3), (2, 3), (2, 5)]:
        for m in range(1, l):
            assert multiplier(multiplier_coset_rep(g, l, m), l) == m


# ---------------------------------------------------------------------------
# orders and BFS


def test_sp_order_formula():
    assert sp_order(1, 3) == 24
    assert sp_order(1, 5) == 120
    assert sp_order(2, 3) == 51840


def test_weyl_order():
    assert [weyl_order(g) for g in (1, 2, 3)] == [2, 8, 48]


def test_group_bfs_trivial_and_cyclic():
    assert group_bfs([identity(2)], 3) == 1
    t = transvection((1, 0), 1, 7)
    assert group_bfs([t], 7) == 7


@pytest.mark.parametrize("g,l", [(1, 3), (1, 5)])
def test_group_bfs_generates_sp(g, l):
    assert group_bfs(standard_generators(g, l), l) == sp_order(g, l)


def test_group_bfs_cap():
    assert group_bfs(standard_generators(1, 5), 5, cap=10) is None


def test_group_bfs_rejects_non_symplectic_generator():
    with pytest.raises(ValueError):
        group_bfs([((1, 1), (0, 2))], 5)


# ---------------------------------------------------------------------------
# sampling


def test_random_sp_is_symplectic_and_deterministic():
    for seed in range(5):
        m = random_sp(2, 3, seed=seed)
        assert multiplier(m, 3) == 1
        assert random_sp(2, 3, seed=seed) == m


def test_random_sp_uniformity_chi_square():
    """20k walk samples over the 24 elements of SL_2(Z/3); fixed seed keeps
    the 3-sigma per-element check deterministic."""
    import random as _random
    from strataforge.symplectic import _random_sp_step

    n = 20_000
    rng = _random.Random(11)
    counts: dict = {}
    for _ in range(n):
        m = _random_sp_step(1, 3, rng, 50)
        counts[m] = counts.get(m, 0) + 1
    assert len(counts) == 24
    expected = n / 24
    sigma = math.sqrt(n * (1 / 24) * (23 / 24))
    for c in counts.values():
        assert abs(c - expected) <= 3 * sigma


# ---------------------------------------------------------------------------
# fixed-vector proportions


def test_fixed_vector_proportion_frozen_values():
    assert fixed_vector_proportion(1, 3, 1) == Fraction(3, 8)
    assert fixed_vector_proportion(1, 3, 2) == Fraction(1, 2)


@pytest.mark.parametrize("l", [3, 5, 7])
def test_fixed_vector_proportion_matches_leading_term(l):
    v = fixed_vector_proportion(1, l, 1)
    assert abs(v - Fraction(l, l * l - 1)) <= Fraction(2, l**3)
    assert v == Fraction(l, l * l - 1)  # observed to be exact at g = 1


def test_fixed_vector_proportion_m_not_one_leading_term():
    # 1/(l-1) + O(1/l^3)
    for l in (3, 5):
        v = fixed_vector_proportion(1, l, l - 1)
        assert abs(v - Fraction(1, l - 1)) <= Fraction(2, l**3)


def test_fixed_vector_proportion_cap():
    with pytest.raises(BudgetExceededError):
        fixed_vector_proportion(2, 7, 1, cap=1000)


def test_fixed_vector_proportion_montecarlo():
    est = fixed_vector_proportion(1, 3, 1, mode="montecarlo", n=4000, seed=5)
    assert isinstance(est, MonteCarloEstimate)
    assert est.n == 4000
    assert est.ci_low <= 3 / 8 <= est.ci_high


# ---------------------------------------------------------------------------
# characteristic polynomials


def test_charpoly_mod_reversal_example():
    L = LPolynomial(3, 1, (1, 2, 3))
    assert charpoly_mod(L, 5) == (3, 2, 1)  # T^2 + 2T + 3, constant first


def test_charpoly_mod_evaluation_at_one():
    L = LPolynomial(7, 1, (1, 3, 7))
    for l in (3, 5):
        assert sum(charpoly_mod(L, l)) % l == L(1) % l


def test_charpoly_mod_rejects_l_equal_p():
    L = LPolynomial(3, 1, (1, 2, 3))
    with pytest.raises(ValueError):
        charpoly_mod(L, 3)


def test_charpoly_mod_functional_equation_reduction():
    # P(T) = T^2g * P(q/T) * q^-g mod l whenever q is invertible mod l:
    # coefficientwise, P_i = P_{2g-i} * q^(g-i)
    L = LPolynomial(5, 2, (1, 2, 3, 10, 25))
    g = 2
    for l in (3, 7):
        P = charpoly_mod(L, l)
        d = len(P) - 1
        q_inv = pow(5 % l, -1, l)
        for i in range(d + 1):
            power = pow(5 % l, g - i, l) if g >= i else pow(q_inv, i - g, l)
            assert P[i] == P[d - i] * power % l


def test_matrix_charpoly_against_known():
    assert matrix_charpoly(identity(2), 5) == (1, 3, 1)  # (T-1)^2
    m = ((0, 1), (4, 0))
    assert matrix_charpoly(m, 5) == ((-4) % 5, 0, 1)  # T^2 - 4


def test_matrix_charpoly_trace_det_consistency():
    for seed in range(8):
        m = random_sp(2, 3, seed=seed)
        poly = matrix_charpoly(m, 3)
        assert len(poly) == 5 and poly[-1] == 1
        tr = sum(m[i][i] for i in range(4)) % 3
        assert poly[3] == (-tr) % 3
        from strataforge.symplectic import det_mod
        assert poly[0] == det_mod(m, 3)


def test_coset_charpoly_distribution_sl2_frozen():
    dist = coset_charpoly_distribution(1, 3, 1)
    assert dist == {
        (1, 0, 1): Fraction(1, 4),
        (1, 1, 1): Fraction(3, 8),
        (1, 2, 1): Fraction(3, 8),
    }
    assert sum(dist.values()) == 1
