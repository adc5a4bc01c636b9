"""Hyperelliptic curves y^2 = f(x) over F_q: point counts, zeta numerator,
Jacobian group order.

Point counting walks the base set of F_{q^k} with the quadratic character;
the zeta numerator L(T) is recovered from N_1..N_g through Newton's
identities and the functional equation, then re-expanded as a series check
so that a miscount raises instead of propagating.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BudgetExceededError, ConsistencyError
from .ffield import FieldDescriptor, FqPoly, field_new, poly_squarefree

POINTCOUNT_FIELD_CAP = 2_000_000  # largest |F_{q^k}| point_count will walk


@dataclass(frozen=True)
class HyperellipticCurve:
    """Smooth projective model of y^2 = f(x), with f monic squarefree."""

    field: FieldDescriptor
    f: FqPoly

    @property
    def model_degree(self) -> int:
        return len(self.f.coeffs) - 1

    @property
    def genus(self) -> int:
        return math.ceil(self.model_degree / 2) - 1

    @property
    def q(self) -> int:
        return self.field.size


def curve_new(field: FieldDescriptor, f: FqPoly) -> HyperellipticCurve:
    """Validate and build a curve; genus comes from the model degree."""
    if f.field != field:
        raise ValueError("polynomial is over a different field")
    if not f.is_monic:
        raise ValueError("f must be monic")
    if f.degree < 3:
        raise ValueError(f"deg(f) = {f.degree} gives genus < 1")
    if not poly_squarefree(field, list(f.coeffs)):
        raise ValueError("f must be squarefree (singular model otherwise)")
    return HyperellipticCurve(field, f)


def infinity_points(ext: FieldDescriptor, lead: int, degree: int) -> int:
    """Points at infinity of the smooth model over the given field."""
    if degree % 2 == 1:
        return 1
    return 2 if ext.chi(lead) == 1 else 0


def point_count(curve: HyperellipticCurve, k: int = 1,
                field_cap: int = POINTCOUNT_FIELD_CAP) -> int:
    """N_k: number of points of the smooth model over F_{q^k}."""
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    base = curve.field
    ext_size = base.size**k
    if ext_size > field_cap:
        raise BudgetExceededError(
            f"|F_q^k| = {ext_size} exceeds the point-count budget {field_cap}")
    ext = field_new(base.p, base.n * k)
    emb = base.embedding_into(ext)
    coeffs = [int(emb[c]) for c in curve.f.coeffs]
    total = ext.size  # the "+1 per x" term
    for x in range(ext.size):
        acc = 0
        for c in reversed(coeffs):
            acc = ext.add(ext.mul(acc, x), c)
        total += ext.chi(acc)
    return total + infinity_points(ext, coeffs[-1], curve.model_degree)


@dataclass(frozen=True)
class LPolynomial:
    """Zeta numerator: degree-2g integer polynomial with a_0 = 1.

    Coefficients are plain Python integers (arbitrary precision), constant
    term first.  Construction enforces the functional equation
    a_{2g-i} = q^{g-i} a_i and positivity of L(1).
    """

    q: int
    genus: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        g = self.genus
        if len(self.coeffs) != 2 * g + 1:
            raise ValueError("L must have degree exactly 2g")
        if self.coeffs[0] != 1:
            raise ValueError("a_0 must be 1")
        for i in range(g + 1):
            if self.coeffs[2 * g - i] != self.q ** (g - i) * self.coeffs[i]:
                raise ValueError("functional equation violated")
        if sum(self.coeffs) <= 0:
            raise ValueError("L(1) must be positive")
        s1 = -self.coeffs[1]
        if s1 * s1 > 4 * g * g * self.q:
            raise ValueError("|a_1| violates the Weil bound")

    def __call__(self, t: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc


def frobenius_power_sums(L: LPolynomial, upto: int) -> list[int]:
    """p_k = sum of k-th powers of the Frobenius eigenvalues, k = 1..upto."""
    g2 = 2 * L.genus
    a = L.coeffs
    ps: list[int] = []
    for k in range(1, upto + 1):
        if k <= g2:
            s = k * a[k]
            for i in range(1, k):
                s += a[i] * ps[k - i - 1]
            ps.append(-s)
        else:
            s = 0
            for i in range(1, g2 + 1):
                s += a[i] * ps[k - i - 1]
            ps.append(-s)
    return ps


def point_counts_from(L: LPolynomial, upto: int) -> list[int]:
    """N_1..N_upto predicted by L (exact, any extension degree)."""
    return [L.q**k + 1 - p for k, p in enumerate(frobenius_power_sums(L, upto), start=1)]


def l_polynomial(curve: HyperellipticCurve,
                 field_cap: int = POINTCOUNT_FIELD_CAP) -> LPolynomial:
    """Recover L(T) from N_1..N_g via Newton's identities.

    The result is re-expanded into predicted point counts and compared with
    the inputs; any mismatch means a counting bug and raises.
    """
    counts = [point_count(curve, k, field_cap) for k in range(1, curve.genus + 1)]
    return l_polynomial_from_counts(curve.q, curve.genus, counts)


def l_polynomial_from_counts(q: int, genus: int, counts: list[int]) -> LPolynomial:
    g = genus
    s = [n_k - (q**k + 1) for k, n_k in enumerate(counts, start=1)]
    a = [1] + [0] * (2 * g)
    for k in range(1, g + 1):
        total = sum(s[i - 1] * a[k - i] for i in range(1, k + 1))
        if total % k:
            raise ConsistencyError(f"Newton identity gave a non-integer a_{k}")
        a[k] = total // k
    for i in range(g):
        a[2 * g - i] = q ** (g - i) * a[i]
    L = LPolynomial(q, g, tuple(a))
    if point_counts_from(L, g) != counts:
        raise ConsistencyError("series expansion of L disagrees with the point counts")
    return L


def picard_order(curve: HyperellipticCurve) -> int:
    """#Pic^0 over the base field: L(1)."""
    return l_polynomial(curve)(1)
