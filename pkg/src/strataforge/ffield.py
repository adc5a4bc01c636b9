"""Exact arithmetic in F_p and F_{p^n} (p odd) and polynomials over them.

An element of F_{p^n} is stored as the integer in [0, p^n) whose base-p
digits are its coordinates in the power basis of the field's modulus.  All
arithmetic is exact integer arithmetic; no floats anywhere.

Fields are built through :func:`field_new`, which picks the canonical
modulus (the lexicographically least monic irreducible, coefficients
compared constant term first) so that serialized elements mean the same
thing across runs and machines.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BudgetExceededError

MAX_P = 97            # supported characteristic cap; desk-scale fields only
CHI_TABLE_CAP = 10_000  # above this, quadratic characters use the Euler criterion

NEG_INF = float("-inf")  # degree of the zero polynomial; never -1


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# polynomial arithmetic over Z/p on raw digit tuples (bootstrap layer, used
# before a FieldDescriptor exists)


def _pm_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pm_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pm_trim(out)


def _pm_mod(a: list[int], m: list[int], p: int) -> list[int]:
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1]
        shift = len(a) - 1 - dm
        if lead:
            for i in range(dm + 1):
                a[shift + i] = (a[shift + i] - lead * m[i]) % p
        a.pop()
    return _pm_trim(a)


def _pm_powmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pm_mod(a, m, p)
    while e:
        if e & 1:
            result = _pm_mod(_pm_mul(result, base, p), m, p)
        base = _pm_mod(_pm_mul(base, base, p), m, p)
        e >>= 1
    return result


def _pm_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        if len(a) < len(b):
            a, b = b, a
            continue
        inv = pow(b[-1], -1, p)
        monic_b = [(c * inv) % p for c in b]
        a = _pm_mod(a, monic_b, p)
        a, b = b, a
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


def _pm_sub(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _pm_trim(out)


def _modp_irreducible(coeffs: list[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over Z/p (Rabin's test)."""
    n = len(coeffs) - 1
    if n == 1:
        return True
    x = [0, 1]
    xq = _pm_powmod(x, p**n, coeffs, p)
    if _pm_sub(xq, x, p):
        return False
    for r in _prime_factors(n):
        xqr = _pm_powmod(x, p ** (n // r), coeffs, p)
        g = _pm_gcd(_pm_sub(xqr, x, p), list(coeffs), p)
        if len(g) - 1 != 0:
            return False
    return True


# ---------------------------------------------------------------------------


class FieldDescriptor:
    """Explicit model of F_{p^n} with a fixed monic irreducible modulus.

    Immutable; safe to share across threads.  Construct with
    :func:`field_new` so that equal parameters reuse one instance (and its
    lookup tables).
    """

    def __init__(self, p: int, n: int, modulus: tuple[int, ...]):
        self.p = p
        self.n = n
        self.modulus = modulus            # length n+1, constant term first, monic
        self.size = p**n
        self._embeddings: dict[tuple[int, int], np.ndarray] = {}
        self._frob_maps: dict[int, np.ndarray] = {}
        self._exp: np.ndarray | None = None
        self._log: np.ndarray | None = None
        self._chi: np.ndarray | None = None
        self._pair: tuple[np.ndarray, np.ndarray] | None = None
        if n > 1:
            # x^(n+k) mod modulus for k in [0, n-2]; used by _raw_mul
            red = []
            cur = [(-c) % p for c in modulus[:-1]]  # x^n
            red.append(list(cur))
            for _ in range(n - 2):
                cur = [0] + cur
                lead = cur.pop()
                if lead:
                    cur = [(c + lead * r) % p for c, r in zip(cur, red[0])]
                red.append(list(cur))
            self._red = red

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.n})" if self.n > 1 else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldDescriptor)
                and (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus))

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.modulus))

    # -- digit view ---------------------------------------------------------

    def digits(self, a: int) -> tuple[int, ...]:
        """Coordinates of element ``a`` in the power basis (length n)."""
        p = self.p
        out = []
        for _ in range(self.n):
            out.append(a % p)
            a //= p
        return tuple(out)

    def from_digits(self, ds) -> int:
        v = 0
        for d in reversed(list(ds)):
            v = v * self.p + d % self.p
        return v

    # -- scalar arithmetic on element encodings ------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.n == 1:
            return (a + b) % p
        s, shift = 0, 1
        while a or b:
            s += ((a + b) % p) * shift
            a //= p
            b //= p
            shift *= p
        return s

    def neg(self, a: int) -> int:
        p = self.p
        if self.n == 1:
            return (-a) % p
        s, shift = 0, 1
        while a:
            s += ((-a) % p) * shift
            a //= p
            shift *= p
        return s

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _raw_mul(self, a: int, b: int) -> int:
        p = self.p
        if self.n == 1:
            return (a * b) % p
        da, db = self.digits(a), self.digits(b)
        conv = [0] * (2 * self.n - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    conv[i + j] = (conv[i + j] + ai * bj) % p
        out = list(conv[: self.n])
        for k in range(self.n - 1):
            c = conv[self.n + k]
            if c:
                row = self._red[k]
                for i in range(self.n):
                    out[i] = (out[i] + c * row[i]) % p
        return self.from_digits(out)

    def _ensure_exp_log(self) -> None:
        if self._exp is not None:
            return
        q = self.size
        facs = _prime_factors(q - 1)
        gen = None
        for g in range(2, q):
            if all(self._raw_pow(g, (q - 1) // r) != 1 for r in facs):
                gen = g
                break
        assert gen is not None
        exp = np.empty(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        cur = 1
        for i in range(q - 1):
            exp[i] = cur
            log[cur] = i
            cur = self._raw_mul(cur, gen)
        self._exp, self._log = exp, log

    def _raw_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return r

    def mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        self._ensure_exp_log()
        return int(self._exp[(self._log[a] + self._log[b]) % (self.size - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        if self.n == 1:
            return pow(a, -1, self.p)
        self._ensure_exp_log()
        return int(self._exp[(-self._log[a]) % (self.size - 1)])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        if self.n == 1:
            return pow(a, e, self.p)
        self._ensure_exp_log()
        return int(self._exp[(self._log[a] * e) % (self.size - 1)])

    def frobenius(self, a: int, k: int = 1) -> int:
        """a^(p^k)."""
        return self.pow(a, self.p**k)

    def chi(self, a: int) -> int:
        """Quadratic character: 0 at 0, +1 on squares, -1 on nonsquares."""
        if self.size <= CHI_TABLE_CAP:
            return int(self.chi_table[a])
        if a == 0:
            return 0
        return 1 if self.pow(a, (self.size - 1) // 2) == 1 else -1

    # -- numpy views (built lazily, used by census hot loops) ----------------

    @property
    def chi_table(self) -> np.ndarray:
        if self._chi is None:
            q = self.size
            t = np.full(q, -1, dtype=np.int8)
            t[0] = 0
            for a in range(1, q):
                t[self.mul(a, a)] = 1
            self._chi = t
        return self._chi

    def pair_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """(add_table, mul_table) as dense q-by-q int32 arrays."""
        if self._pair is not None:
            return self._pair
        q, p, n = self.size, self.p, self.n
        if n == 1:
            idx = np.arange(q, dtype=np.int64)
            add = ((idx[:, None] + idx[None, :]) % p).astype(np.int32)
            mul = ((idx[:, None] * idx[None, :]) % p).astype(np.int32)
        else:
            dig = np.empty((q, n), dtype=np.int64)
            vals = np.arange(q, dtype=np.int64)
            tmp = vals.copy()
            for i in range(n):
                dig[:, i] = tmp % p
                tmp //= p
            powers = p ** np.arange(n, dtype=np.int64)
            sums = (dig[:, None, :] + dig[None, :, :]) % p
            add = (sums @ powers).astype(np.int32)
            self._ensure_exp_log()
            lg, ex = self._log, self._exp
            mul = np.zeros((q, q), dtype=np.int32)
            nz = np.arange(1, q, dtype=np.int64)
            mul[1:, 1:] = ex[(lg[nz][:, None] + lg[nz][None, :]) % (q - 1)].astype(np.int32)
        self._pair = (add, mul)
        return self._pair

    def frob_map(self, k: int = 1) -> np.ndarray:
        """Array sending every element to its p^k-th power."""
        if k not in self._frob_maps:
            self._frob_maps[k] = np.array(
                [self.frobenius(a, k) for a in range(self.size)], dtype=np.int64)
        return self._frob_maps[k]

    def embedding_into(self, ext: "FieldDescriptor") -> np.ndarray:
        """Index map realizing the inclusion of this field into ``ext``.

        Deterministic: the power basis generator is sent to the least root
        of this field's modulus inside ``ext``.
        """
        key = (ext.p, ext.n)
        if key in self._embeddings:
            return self._embeddings[key]
        if ext.p != self.p or ext.n % self.n != 0:
            raise ValueError(f"{ext!r} is not an extension of {self!r}")
        if self.n == 1:
            table = np.arange(self.p, dtype=np.int64)  # constants encode identically
        else:
            root = None
            for cand in range(ext.size):
                acc = 0
                for c in reversed(self.modulus):
                    acc = ext.add(ext.mul(acc, cand), c)
                if acc == 0:
                    root = cand
                    break
            assert root is not None, "modulus must split in any extension of its degree"
            table = np.empty(self.size, dtype=np.int64)
            for a in range(self.size):
                acc = 0
                for d in reversed(self.digits(a)):
                    acc = ext.add(ext.mul(acc, root), d)
                table[a] = acc
        self._embeddings[key] = table
        return table

    def elements(self) -> range:
        return range(self.size)


@lru_cache(maxsize=None)
def field_new(p: int, n: int = 1) -> FieldDescriptor:
    """Build (or reuse) the descriptor of F_{p^n} with the canonical modulus."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if p == 2:
        raise ValueError("even characteristic is not supported (p must be odd)")
    if p > MAX_P:
        raise ValueError(f"p={p} exceeds the supported cap {MAX_P}")
    if n < 1:
        raise ValueError(f"extension degree must be >= 1, got {n}")
    if n == 1:
        return FieldDescriptor(p, 1, (0, 1))  # modulus x
    # least (c_0, c_1, ..., c_{n-1}) lexicographically, constant term first;
    # c_0 = 0 would make x a factor, so the search starts at c_0 = 1
    def cands():
        idx = [0] * n
        idx[0] = 1
        while True:
            yield idx
            j = n - 1
            while j >= 0 and idx[j] == p - 1:
                idx[j] = 0
                j -= 1
            if j < 0:
                return
            idx[j] += 1

    for vec in cands():
        coeffs = list(vec) + [1]
        if _modp_irreducible(coeffs, p):
            return FieldDescriptor(p, n, tuple(coeffs))
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# element and polynomial value types


@dataclass(frozen=True)
class FqElement:
    """A field element: a descriptor plus its integer encoding."""

    field: FieldDescriptor
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.size:
            raise ValueError(f"element encoding {self.value} out of range")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.digits(self.value)

    def _coerce(self, other) -> int:
        if isinstance(other, FqElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented  # pragma: no cover

    def __add__(self, other):
        return FqElement(self.field, self.field.add(self.value, self._coerce(other)))

    def __sub__(self, other):
        return FqElement(self.field, self.field.sub(self.value, self._coerce(other)))

    def __neg__(self):
        return FqElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return FqElement(self.field, self.field.mul(self.value, self._coerce(other)))

    def __truediv__(self, other):
        return FqElement(self.field, self.field.mul(self.value, self.field.inv(self._coerce(other))))

    def __pow__(self, e: int):
        return FqElement(self.field, self.field.pow(self.value, e))

    def __bool__(self):
        return self.value != 0


def is_square(a: FqElement) -> bool:
    """True iff ``a`` has a square root (0 counts as a square)."""
    return a.value == 0 or a.field.chi(a.value) == 1


# -- raw coefficient-list polynomial helpers (hot-loop friendly) -------------


def poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_add(field: FieldDescriptor, a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = field.add(out[i], x)
    return poly_trim(out)


def poly_mul(field: FieldDescriptor, a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    if field.n == 1:
        p = field.p
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = (out[i + j] + ai * bj) % p
        return poly_trim(out)
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = field.add(out[i + j], field.mul(ai, bj))
    return poly_trim(out)


def poly_divmod(field: FieldDescriptor, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv_lead = field.inv(b[-1])
    quot = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        coef = field.mul(a[-1], inv_lead)
        shift = len(a) - 1 - db
        quot[shift] = coef
        if coef:
            for i in range(db + 1):
                a[shift + i] = field.sub(a[shift + i], field.mul(coef, b[i]))
        a.pop()
    return poly_trim(quot), poly_trim(a)


def poly_gcd(field: FieldDescriptor, a: list[int], b: list[int]) -> list[int]:
    a, b = list(a), list(b)
    while b:
        _, a = poly_divmod(field, a, b)
        a, b = b, a
    if a:
        inv = field.inv(a[-1])
        a = [field.mul(c, inv) for c in a]
    return a


def poly_deriv(field: FieldDescriptor, a: list[int]) -> list[int]:
    out = [field.mul(c, k % field.p) for k, c in enumerate(a)][1:]
    return poly_trim(out)


def poly_eval(field: FieldDescriptor, a: list[int], x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = field.add(field.mul(acc, x), c)
    return acc


def poly_squarefree(field: FieldDescriptor, a: list[int]) -> bool:
    if not a:
        raise ValueError("squarefree is undefined for the zero polynomial")
    return len(poly_gcd(field, a, poly_deriv(field, a))) == 1


@dataclass(frozen=True)
class FqPoly:
    """Univariate polynomial over F_q, constant term first, trailing zeros trimmed."""

    field: FieldDescriptor
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        if c and c[-1] == 0:
            poly_trim(c)
            object.__setattr__(self, "coeffs", tuple(c))
        for x in self.coeffs:
            if not 0 <= x < self.field.size:
                raise ValueError(f"coefficient encoding {x} out of range for {self.field!r}")

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, other: "FqPoly") -> "FqPoly":
        self._check(other)
        return FqPoly(self.field, tuple(poly_add(self.field, list(self.coeffs), list(other.coeffs))))

    def __mul__(self, other: "FqPoly") -> "FqPoly":
        self._check(other)
        return FqPoly(self.field, tuple(poly_mul(self.field, list(self.coeffs), list(other.coeffs))))

    def __divmod__(self, other: "FqPoly") -> tuple["FqPoly", "FqPoly"]:
        self._check(other)
        q, r = poly_divmod(self.field, list(self.coeffs), list(other.coeffs))
        return FqPoly(self.field, tuple(q)), FqPoly(self.field, tuple(r))

    def _check(self, other: "FqPoly") -> None:
        if other.field != self.field:
            raise ValueError("polynomials over different fields")

    def derivative(self) -> "FqPoly":
        return FqPoly(self.field, tuple(poly_deriv(self.field, list(self.coeffs))))

    def gcd(self, other: "FqPoly") -> "FqPoly":
        self._check(other)
        return FqPoly(self.field, tuple(poly_gcd(self.field, list(self.coeffs), list(other.coeffs))))

    def __call__(self, x: int) -> int:
        return poly_eval(self.field, list(self.coeffs), x)


def squarefree(f: FqPoly) -> bool:
    """True iff gcd(f, f') is constant (f nonzero)."""
    return poly_squarefree(f.field, list(f.coeffs))


def poly_pow(f: FqPoly, e: int) -> FqPoly:
    """Exact e-th power of f; degree multiplies by e."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    result = [1]
    base = list(f.coeffs)
    while e:
        if e & 1:
            result = poly_mul(f.field, result, base)
        e >>= 1
        if e:
            base = poly_mul(f.field, base, base)
    return FqPoly(f.field, tuple(result))


def monic_coeff_vectors(field: FieldDescriptor, degree: int):
    """Raw enumeration behind :func:`enumerate_monic` (yields coefficient tuples).

    Order is part of the external contract: lexicographic on coefficient
    vectors with the constant term varying fastest.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    q = field.size
    total = q**degree
    for idx in range(total):
        rest, coeffs = idx, []
        for _ in range(degree):
            coeffs.append(rest % q)
            rest //= q
        coeffs.append(1)
        yield coeffs


def enumerate_monic(field: FieldDescriptor, degree: int, squarefree_only: bool = False):
    """Yield every monic degree-d polynomial over the field exactly once."""
    for coeffs in monic_coeff_vectors(field, degree):
        if squarefree_only and not poly_squarefree(field, list(coeffs)):
            continue
        yield FqPoly(field, tuple(coeffs))
