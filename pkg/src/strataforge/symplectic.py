"""Exact linear algebra over Z/l for Sp_2g and GSp_2g: membership,
multipliers, exhaustive enumeration, random sampling, and the fixed-vector /
characteristic-polynomial statistics used as equidistribution baselines.

The symplectic form is the antidiagonal split form J: J[i, 2g+1-i] = +1 for
i <= g and -1 for i > g (1-indexed).  All matrices are tuples of row tuples
with entries reduced mod l.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .curves import LPolynomial
from .errors import BudgetExceededError
from .ffield import is_prime

SP_ENUM_CAP = 10_000_000  # largest group order exact mode will enumerate
DEFAULT_WALK_LENGTH = 50  # transvections per random-sample walk

Matrix = tuple[tuple[int, ...], ...]


def _check_l(l: int) -> None:
    if l == 2 or not is_prime(l):
        raise ValueError(f"l must be an odd prime, got {l}")


def symplectic_form(g: int, l: int) -> Matrix:
    """The fixed antidiagonal form J."""
    d = 2 * g
    rows = []
    for i in range(1, d + 1):
        row = [0] * d
        row[d - i] = 1 if i <= g else l - 1
        rows.append(tuple(row))
    return tuple(rows)


def identity(d: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def mat_mul(a: Matrix, b: Matrix, l: int) -> Matrix:
    d = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % l for col in bt)
        for row in a)


def mat_sub(a: Matrix, b: Matrix, l: int) -> Matrix:
    return tuple(tuple((x - y) % l for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def det_mod(a: Matrix, l: int) -> int:
    rows = [list(r) for r in a]
    d = len(rows)
    det = 1
    for col in range(d):
        piv = next((r for r in range(col, d) if rows[r][col] % l), None)
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det = det * rows[col][col] % l
        inv = pow(rows[col][col], -1, l)
        for r in range(col + 1, d):
            if rows[r][col]:
                c = rows[r][col] * inv % l
                rows[r] = [(x - c * y) % l for x, y in zip(rows[r], rows[col])]
    return det % l


def pairing(x: tuple[int, ...], y: tuple[int, ...], g: int, l: int) -> int:
    """<x, y> = x^T J y for the fixed form."""
    d = 2 * g
    total = 0
    for i in range(g):
        total += x[i] * y[d - 1 - i] - x[d - 1 - i] * y[i]
    return total % l


def transvection(v: tuple[int, ...], g: int, l: int) -> Matrix:
    """T_v: x -> x + <x, v> v.  Always symplectic."""
    d = 2 * g
    jv = [pairing(tuple(1 if k == j else 0 for k in range(d)), v, g, l) for j in range(d)]
    return tuple(
        tuple((int(i == j) + v[i] * jv[j]) % l for j in range(d))
        for i in range(d))


def standard_generators(g: int, l: int) -> list[Matrix]:
    """Transvections along all weight-1 and weight-2 0/1 vectors."""
    d = 2 * g
    vecs = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        vecs.append(tuple(e))
    for i in range(d):
        for j in range(i + 1, d):
            e = [0] * d
            e[i] = e[j] = 1
            vecs.append(tuple(e))
    return [transvection(v, g, l) for v in vecs]


def multiplier(m: Matrix, l: int) -> int:
    """The scalar mu with m^T J m = mu J; raises if none exists."""
    _check_l(l)
    d = len(m)
    if d % 2:
        raise ValueError("matrix dimension must be even")
    g = d // 2
    j = symplectic_form(g, l)
    lhs = mat_mul(mat_mul(mat_transpose(m), j, l), m, l)
    mu = lhs[0][d - 1]  # J[0][d-1] = 1
    if mu == 0:
        raise ValueError("matrix is not in GSp (degenerate pairing image)")
    expected = tuple(tuple(mu * x % l for x in row) for row in j)
    if lhs != expected:
        raise ValueError("matrix is not in GSp (no multiplier exists)")
    return mu


def is_symplectic(m: Matrix, l: int) -> bool:
    try:
        return multiplier(m, l) == 1
    except ValueError:
        return False


def sp_order(g: int, l: int) -> int:
    """|Sp_2g(Z/l)| = l^(g^2) * prod_{i=1..g} (l^(2i) - 1)."""
    if g < 1:
        raise ValueError("g must be >= 1")
    _check_l(l)
    return l ** (g * g) * math.prod(l ** (2 * i) - 1 for i in range(1, g + 1))


def weyl_order(g: int) -> int:
    """Order of the Weyl group of Sp_2g: 2^g * g!."""
    if g < 1:
        raise ValueError("g must be >= 1")
    return 2**g * math.factorial(g)


def group_bfs(generators: list[Matrix], l: int, cap: int = SP_ENUM_CAP) -> int | None:
    """Order of the generated subgroup by breadth-first closure, or None if
    the closure grows past ``cap``.  Generators must be symplectic."""
    _check_l(l)
    for m in generators:
        if multiplier(m, l) != 1:
            raise ValueError("generator is not symplectic")
    d = len(generators[0]) if generators else 0
    seen = {identity(d)} if d else set()
    frontier = list(seen)
    while frontier:
        nxt = []
        for m in frontier:
            for gmat in generators:
                prod = mat_mul(m, gmat, l)
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
                    if len(seen) > cap:
                        return None
        frontier = nxt
    return len(seen)


@lru_cache(maxsize=8)
def _sp_elements(g: int, l: int, cap: int = SP_ENUM_CAP) -> tuple[Matrix, ...]:
    order = sp_order(g, l)
    if order > cap:
        raise BudgetExceededError(f"|Sp_{2*g}(Z/{l})| = {order} exceeds cap {cap}")
    gens = standard_generators(g, l)
    seen = {identity(2 * g)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for m in frontier:
            for gmat in gens:
                prod = mat_mul(m, gmat, l)
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
        frontier = nxt
    if len(seen) != order:
        raise AssertionError("transvection generators failed to generate Sp")
    return tuple(seen)


def multiplier_coset_rep(g: int, l: int, m: int) -> Matrix:
    """The fixed diagonal multiplier-m element: diag(m,...,m,1,...,1)."""
    d = 2 * g
    return tuple(
        tuple((m if i <= g - 1 else 1) if i == j else 0 for j in range(d))
        for i in range(d))


def random_sp(g: int, l: int, seed: int, walk_length: int = DEFAULT_WALK_LENGTH) -> Matrix:
    """Lazy transvection walk: ``walk_length`` steps, each a transvection
    T_v with v uniform over all vectors (v = 0 contributes an identity step).

    The lazy step matters: Sp_2(Z/3) is not perfect, so a fixed-length
    product of honest transvections stays inside one coset of the derived
    subgroup and can never be uniform.
    """
    rng = random.Random(seed)
    return _random_sp_step(g, l, rng, walk_length)


def _random_sp_step(g: int, l: int, rng: random.Random, walk_length: int) -> Matrix:
    d = 2 * g
    m = identity(d)
    for _ in range(walk_length):
        code = rng.randrange(l**d)
        if code == 0:
            continue
        v = []
        for _ in range(d):
            v.append(code % l)
            code //= l
        m = mat_mul(m, transvection(tuple(v), g, l), l)
    return m


def has_nonzero_fixed_vector(m: Matrix, l: int) -> bool:
    return det_mod(mat_sub(m, identity(len(m)), l), l) == 0


@dataclass(frozen=True)
class MonteCarloEstimate:
    estimate: float
    ci_low: float
    ci_high: float
    n: int


def fixed_vector_proportion(g: int, l: int, m: int, mode: str = "exact",
                            n: int = 100_000, seed: int = 0,
                            cap: int = SP_ENUM_CAP,
                            walk_length: int = DEFAULT_WALK_LENGTH):
    """Proportion of the multiplier-m coset of GSp_2g(Z/l) fixing a nonzero
    vector (equivalently det(M - 1) = 0).

    "exact" enumerates Sp * D_m and returns a Fraction; "montecarlo" returns
    a MonteCarloEstimate with a 95% normal-approximation interval.
    """
    _check_l(l)
    if not 1 <= m < l:
        raise ValueError(f"multiplier must be a unit mod {l}")
    rep = multiplier_coset_rep(g, l, m)
    if mode == "exact":
        elements = _sp_elements(g, l, cap)
        hits = sum(1 for s in elements if has_nonzero_fixed_vector(mat_mul(s, rep, l), l))
        return Fraction(hits, len(elements))
    if mode == "montecarlo":
        rng = random.Random(seed)
        hits = 0
        for _ in range(n):
            s = _random_sp_step(g, l, rng, walk_length)
            if has_nonzero_fixed_vector(mat_mul(s, rep, l), l):
                hits += 1
        p_hat = hits / n
        half = 1.96 * math.sqrt(max(p_hat * (1 - p_hat), 1e-12) / n)
        return MonteCarloEstimate(p_hat, max(p_hat - half, 0.0), min(p_hat + half, 1.0), n)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# characteristic polynomials mod l


def charpoly_mod(L: LPolynomial, l: int) -> tuple[int, ...]:
    """Frobenius characteristic polynomial mod l: the coefficient reversal
    T^2g * L(1/T), monic, constant term first."""
    _check_l(l)
    if L.q % l == 0:
        raise ValueError("l must differ from the characteristic")
    return tuple(c % l for c in reversed(L.coeffs))


def matrix_charpoly(m: Matrix, l: int) -> tuple[int, ...]:
    """det(T*1 - M) mod l by cofactor expansion, constant term first."""
    d = len(m)

    def poly_mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] = (out[i + j] + x * y) % l
        return out

    def det(rows, cols):
        if len(cols) == 1:
            i, j = rows[0], cols[0]
            return [(-m[i][j]) % l, 1] if i == j else [(-m[i][j]) % l]
        total = [0]
        i = rows[0]
        for idx, j in enumerate(cols):
            entry = [(-m[i][j]) % l, 1] if i == j else [(-m[i][j]) % l]
            if entry != [0]:
                minor = det(rows[1:], cols[:idx] + cols[idx + 1:])
                term = poly_mul(entry, minor)
                if idx % 2:
                    term = [(-x) % l for x in term]
                out = [0] * max(len(total), len(term))
                for k, x in enumerate(total):
                    out[k] = x
                for k, x in enumerate(term):
                    out[k] = (out[k] + x) % l
                total = out
        return total

    poly = det(tuple(range(d)), tuple(range(d)))
    poly = poly + [0] * (d + 1 - len(poly))
    return tuple(poly)


def coset_charpoly_distribution(g: int, l: int, m: int, mode: str = "exact",
                                n: int = 100_000, seed: int = 0,
                                cap: int = SP_ENUM_CAP) -> dict[tuple[int, ...], Fraction]:
    """Distribution of characteristic polynomials over the multiplier-m coset."""
    rep = multiplier_coset_rep(g, l, m)
    counts: dict[tuple[int, ...], int] = {}
    if mode == "exact":
        elements = _sp_elements(g, l, cap)
        for s in elements:
            key = matrix_charpoly(mat_mul(s, rep, l), l)
            counts[key] = counts.get(key, 0) + 1
        total = len(elements)
    elif mode == "montecarlo":
        rng = random.Random(seed)
        for _ in range(n):
            s = _random_sp_step(g, l, rng, DEFAULT_WALK_LENGTH)
            key = matrix_charpoly(mat_mul(s, rep, l), l)
            counts[key] = counts.get(key, 0) + 1
        total = n
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return {k: Fraction(v, total) for k, v in counts.items()}
