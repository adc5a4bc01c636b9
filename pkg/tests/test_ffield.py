import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strataforge.ffield import (
    FieldDescriptor,
    FqElement,
    FqPoly,
    enumerate_monic,
    field_new,
    is_square,
    poly_pow,
    squarefree,
)


def poly_from_ints(field, ints):
    return FqPoly(field, tuple(c % field.p for c in ints))


# ---------------------------------------------------------------------------
# field_new


def brute_least_irreducible_quadratic(p):
    """Oracle: enumerate all monic quadratics in canonical order, keep the
    first with no root (quadratic => irreducible iff rootless)."""
    for c0 in range(p):
        for c1 in range(p):
            if all((x * x + c1 * x + c0) % p != 0 for x in range(p)):
                return (c0, c1, 1)
    raise AssertionError


def test_field_new_prime_field_modulus_is_x():
    assert field_new(3, 1).modulus == (0, 1)


def test_field_new_canonical_quadratic_over_f3():
    oracle = brute_least_irreducible_quadratic(3)
    assert field_new(3, 2).modulus == oracle == (1, 0, 1)


@pytest.mark.parametrize("p", [5, 7, 13])
def test_field_new_canonical_quadratic_matches_oracle(p):
    assert field_new(p, 2).modulus == brute_least_irreducible_quadratic(p)


def test_field_new_rejects_bad_parameters():
    with pytest.raises(ValueError):
        field_new(2, 1)
    with pytest.raises(ValueError):
        field_new(9, 1)
    with pytest.raises(ValueError):
        field_new(5, 0)
    with pytest.raises(ValueError):
        field_new(101, 1)


def test_descriptors_are_cached_and_equal():
    assert field_new(3, 2) is field_new(3, 2)
    assert field_new(3, 2) == field_new(3, 2)


# ---------------------------------------------------------------------------
# scalar arithmetic


FIELDS = [field_new(3, 1), field_new(7, 1), field_new(3, 2), field_new(5, 2), field_new(3, 3)]


@pytest.mark.parametrize("field", FIELDS, ids=repr)
def test_field_axioms_exhaustive_on_small_samples(field):
    q = field.size
    sample = range(q) if q <= 27 else range(0, q, 3)
    for a, b in itertools.product(sample, repeat=2):
        assert field.add(a, b) == field.add(b, a)
        assert field.mul(a, b) == field.mul(b, a)
        assert field.sub(field.add(a, b), b) == a
    for a, b, c in itertools.product(list(sample)[:9], repeat=3):
        assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
        assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c))


@pytest.mark.parametrize("field", FIELDS, ids=repr)
def test_inverses(field):
    for a in range(1, field.size):
        assert field.mul(a, field.inv(a)) == 1


@pytest.mark.parametrize("field", FIELDS, ids=repr)
def test_frobenius_is_additive_and_fixes_elements(field):
    p, q = field.p, field.size
    for a, b in itertools.product(range(q), repeat=2):
        assert field.pow(field.add(a, b), p) == field.add(field.pow(a, p), field.pow(b, p))
    for a in range(q):
        assert field.pow(a, q) == a  # x^q = x


@given(st.integers(min_value=0, max_value=24), st.integers(min_value=0, max_value=24))
@settings(max_examples=100, deadline=None)
def test_fqelement_operators_match_descriptor(a, b):
    field = field_new(5, 2)
    x, y = FqElement(field, a), FqElement(field, b)
    assert (x + y).value == field.add(a, b)
    assert (x * y).value == field.mul(a, b)
    assert (x - y).value == field.sub(a, b)
    if b:
        assert ((x / y) * y).value == a


# ---------------------------------------------------------------------------
# is_square


def test_is_square_f3_exhaustive():
    field = field_new(3)
    squares = {field.mul(b, b) for b in range(3)}
    assert squares == {0, 1}
    assert is_square(FqElement(field, 0))
    assert is_square(FqElement(field, 1))
    assert not is_square(FqElement(field, 2))


@pytest.mark.parametrize("field", [field_new(3, 2), field_new(5, 2), field_new(7, 1)], ids=repr)
def test_is_square_agrees_with_euler_criterion(field):
    q = field.size
    for a in range(q):
        by_table = is_square(FqElement(field, a))
        by_euler = a == 0 or field.pow(a, (q - 1) // 2) == 1
        assert by_table == by_euler
    assert sum(1 for a in range(1, q) if is_square(FqElement(field, a))) == (q - 1) // 2


# ---------------------------------------------------------------------------
# squarefree


def sylvester_resultant_nonzero(field, f, g):
    """Oracle: Res(f, g) != 0, via Gaussian elimination on the Sylvester
    matrix built from effective degrees."""
    df, dg = len(f) - 1, len(g) - 1
    if df < 0 or dg < 0:
        return False
    size = df + dg
    if size == 0:
        return True
    rows = []
    for i in range(dg):
        row = [0] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(df):
        row = [0] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    rank = 0
    for col in range(size):
        piv = next((r for r in range(rank, size) if rows[r][col] != 0), None)
        if piv is None:
            return False
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = field.inv(rows[rank][col])
        rows[rank] = [field.mul(inv, v) for v in rows[rank]]
        for r in range(size):
            if r != rank and rows[r][col]:
                coef = rows[r][col]
                rows[r] = [field.sub(v, field.mul(coef, w)) for v, w in zip(rows[r], rows[rank])]
        rank += 1
    return True


def test_squarefree_examples():
    f5, f3 = field_new(5), field_new(3)
    assert squarefree(poly_from_ints(f5, [0, -1, 0, 1]))       # x^3 - x
    assert not squarefree(poly_from_ints(f3, [0, 0, 1]))       # x^2
    assert squarefree(poly_from_ints(f3, [1, 0, 1, 1]))        # x^3 + x^2 + 1, f' = 2x


def test_squarefree_matches_resultant_on_all_monic_cubics_over_f3():
    field = field_new(3)
    for f in enumerate_monic(field, 3):
        coeffs = list(f.coeffs)
        deriv = list(f.derivative().coeffs)
        expected = sylvester_resultant_nonzero(field, coeffs, deriv) if deriv else False
        assert squarefree(f) == expected, coeffs


def test_squarefree_rejects_zero():
    with pytest.raises(ValueError):
        squarefree(FqPoly(field_new(3), ()))


# ---------------------------------------------------------------------------
# poly_pow


def test_poly_pow_edge_cases():
    field = field_new(3)
    f = poly_from_ints(field, [1, 1])  # x + 1
    assert poly_pow(f, 0).coeffs == (1,)
    assert poly_pow(f, 1) == f
    assert poly_pow(f, 2).coeffs == (1, 2, 1)


@pytest.mark.parametrize("e", [2, 3, 5])
def test_poly_pow_degree_law(e):
    field = field_new(5)
    f = poly_from_ints(field, [2, 0, 1, 3])
    assert poly_pow(f, e).degree == e * f.degree
    # repeated multiplication oracle
    acc = poly_from_ints(field, [1])
    for _ in range(e):
        acc = acc * f
    assert poly_pow(f, e) == acc


def test_zero_poly_degree_sentinel():
    z = FqPoly(field_new(3), ())
    assert z.degree == float("-inf")
    assert z.degree < 0


# ---------------------------------------------------------------------------
# enumerate_monic


def test_enumerate_monic_degree1_over_f3():
    field = field_new(3)
    polys = list(enumerate_monic(field, 1))
    assert [p.coeffs for p in polys] == [(0, 1), (1, 1), (2, 1)]


def test_enumerate_monic_counts():
    field = field_new(3)
    assert sum(1 for _ in enumerate_monic(field, 5)) == 243
    assert sum(1 for _ in enumerate_monic(field, 5, squarefree_only=True)) == 162


@pytest.mark.parametrize("field,d", [(field_new(3), 2), (field_new(5), 2), (field_new(3, 2), 2)],
                         ids=["f3d2", "f5d2", "f9d2"])
def test_enumerate_monic_squarefree_cardinality(field, d):
    q = field.size
    count = sum(1 for _ in enumerate_monic(field, d, squarefree_only=True))
    assert count == q**d - q ** (d - 1)


def test_enumerate_monic_is_deterministic_and_duplicate_free():
    field = field_new(5)
    first = [p.coeffs for p in enumerate_monic(field, 2)]
    second = [p.coeffs for p in enumerate_monic(field, 2)]
    assert first == second
    assert len(set(first)) == len(first) == 25
    # constant term varies fastest
    assert first[0] == (0, 0, 1) and first[1] == (1, 0, 1)


# ---------------------------------------------------------------------------
# embeddings


def test_embedding_preserves_arithmetic():
    base, ext = field_new(3, 1), field_new(3, 2)
    emb = base.embedding_into(ext)
    for a, b in itertools.product(range(3), repeat=2):
        assert emb[base.add(a, b)] == ext.add(emb[a], emb[b])
        assert emb[base.mul(a, b)] == ext.mul(emb[a], emb[b])


def test_embedding_of_extension_field():
    base, ext = field_new(3, 2), field_new(3, 4)
    emb = base.embedding_into(ext)
    assert len(set(int(v) for v in emb)) == 9  # injective
    for a, b in itertools.product(range(9), repeat=2):
        assert emb[base.add(a, b)] == ext.add(int(emb[a]), int(emb[b]))
        assert emb[base.mul(a, b)] == ext.mul(int(emb[a]), int(emb[b]))
