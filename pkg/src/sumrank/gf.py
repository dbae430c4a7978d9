"""Finite-field towers GF(p) < GF(q) < GF(q^m).

Elements are plain integers.  An element of an extension of degree d over a
field of order b is the polynomial c_0 + c_1 x + ... + c_{d-1} x^{d-1} with
coefficients in the smaller field and is encoded as sum(c_i * b**i).  Because
b is itself a power of p, every code is also the base-p digit string of the
element over the prime field, so addition is digit-wise mod p at every level.

All arithmetic methods accept ints or numpy integer arrays and broadcast.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from sumrank import config

# multiplication tables are materialised below this order
FULL_TABLE_LIMIT = 2**10
# discrete-log acceleration below this order; above it the digit path is used
LOG_TABLE_LIMIT = 2**16


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _scalar(x) -> bool:
    return isinstance(x, (int, np.integer))


class Field:
    """GF(order), either prime or a simple extension of another Field."""

    def __init__(self, p: int, base: Field | None = None, modulus: tuple[int, ...] | None = None):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        self.p = p
        self.base = base
        if base is None:
            self.degree = 1
            self.order = p
            self.modulus = None
        else:
            if base.p != p:
                raise ValueError("base field has a different characteristic")
            modulus = tuple(int(c) for c in modulus)
            if modulus[-1] != 1:
                raise ValueError("modulus must be monic")
            self.degree = len(modulus) - 1
            self.order = base.order**self.degree
            self.modulus = modulus
            if not is_irreducible(base, modulus):
                raise ValueError(f"modulus {modulus} is reducible over GF({base.order})")
        # number of base-p digits in a code
        self.ndigits = round(np.log(self.order) / np.log(p))
        self._pw = np.array([p**i for i in range(self.ndigits)], dtype=np.int64)

    def __repr__(self) -> str:
        return f"GF({self.order})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and self.order == other.order
            and self.modulus == other.modulus
            and self.base == other.base
        )

    def __hash__(self) -> int:
        return hash((self.order, self.modulus))

    @property
    def prime_level(self) -> bool:
        return self.base is None

    # ------------------------------------------------------------------ digits

    def digits(self, a: int) -> tuple[int, ...]:
        """Coordinates of ``a`` over the base field, low degree first."""
        if not 0 <= a < self.order:
            raise ValueError(f"{a} is not an element of {self}")
        if self.base is None:
            return (int(a),)
        b = self.base.order
        return tuple((int(a) // b**i) % b for i in range(self.degree))

    def from_digits(self, ds) -> int:
        if self.base is None:
            (d,) = ds
            if not 0 <= d < self.p:
                raise ValueError(f"digit {d} out of range")
            return int(d)
        b = self.base.order
        if len(ds) != self.degree or any(not 0 <= d < b for d in ds):
            raise ValueError(f"bad digit list {ds} for {self}")
        return sum(int(d) * b**i for i, d in enumerate(ds))

    # ----------------------------------------------------------- addition

    def _pdigits(self, a: np.ndarray) -> np.ndarray:
        return (a[..., None] // self._pw) % self.p

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if self.order == self.p:
            return (a + b) % self.p
        if _scalar(a) and _scalar(b):
            return int(((self._pdigits(np.int64(a)) + self._pdigits(np.int64(b))) % self.p) @ self._pw)
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        return ((self._pdigits(a) + self._pdigits(b)) % self.p) @ self._pw

    def neg(self, a):
        if self.p == 2:
            return a
        if self.order == self.p:
            return (-a) % self.p
        if _scalar(a):
            return int(((-self._pdigits(np.int64(a))) % self.p) @ self._pw)
        a = np.asarray(a, dtype=np.int64)
        return ((-self._pdigits(a)) % self.p) @ self._pw

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def sum(self, a, axis=-1):
        """Field sum of ``a`` along ``axis``."""
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        if self.order == self.p:
            return a.sum(axis=axis) % self.p
        d = self._pdigits(a)
        ax = axis if axis >= 0 else axis - 1
        return (d.sum(axis=ax) % self.p) @ self._pw

    # ----------------------------------------------------- multiplication

    def mul_slow(self, a: int, b: int) -> int:
        """Reference multiplication by polynomial arithmetic over the base field."""
        if self.base is None:
            return (a * b) % self.p
        B = self.base
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.degree - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        return self.from_digits(_poly_mod(B, prod, self.modulus))

    def pow_slow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul_slow(result, base)
            base = self.mul_slow(base, base)
            e >>= 1
        return result

    @cached_property
    def _logs(self) -> tuple[np.ndarray, np.ndarray]:
        """(exp, log) tables for a fixed primitive element."""
        g = self.primitive_element
        n = self.order - 1
        exp = np.zeros(2 * n, dtype=np.int64)
        x = 1
        for i in range(n):
            exp[i] = x
            x = self.mul_slow(x, g)
        exp[n:] = exp[:n]
        log = np.zeros(self.order, dtype=np.int64)
        log[exp[:n]] = np.arange(n)
        return exp, log

    @cached_property
    def primitive_element(self) -> int:
        n = self.order - 1
        if n == 1:
            return 1
        fs = _prime_factors(n)
        for g in range(2, self.order):
            if all(self.pow_slow(g, n // r) != 1 for r in fs):
                return g
        raise AssertionError("no primitive element")  # pragma: no cover

    @cached_property
    def _mul_table(self) -> np.ndarray:
        exp, log = self._logs
        a = np.arange(self.order)
        t = exp[(log[:, None] + log[None, :])]
        t[0, :] = 0
        t[:, 0] = 0
        return t.astype(np.int64)

    @cached_property
    def _inv_table(self) -> np.ndarray:
        exp, log = self._logs
        n = self.order - 1
        inv = exp[(n - log) % n]
        inv[0] = 0
        return inv

    def mul(self, a, b):
        if self.order == self.p:
            return (a * b) % self.p
        if self.order <= FULL_TABLE_LIMIT:
            r = self._mul_table[a, b]
        elif self.order <= LOG_TABLE_LIMIT:
            exp, log = self._logs
            a_, b_ = np.asarray(a), np.asarray(b)
            r = np.where((a_ == 0) | (b_ == 0), 0, exp[log[a_] + log[b_]])
        else:
            if _scalar(a) and _scalar(b):
                return self.mul_slow(int(a), int(b))
            r = np.vectorize(self.mul_slow, otypes=[np.int64])(a, b)
        return int(r) if _scalar(a) and _scalar(b) else r

    def inv(self, a):
        if _scalar(a) and a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self}")
        if self.order == self.p:
            if _scalar(a):
                return pow(int(a), -1, self.p)
            return np.asarray(pow_array(a, self.p - 2, self.p))
        if self.order <= LOG_TABLE_LIMIT:
            r = self._inv_table[a]
            return int(r) if _scalar(a) else r
        if _scalar(a):
            return self.pow_slow(int(a), self.order - 2)
        return np.vectorize(lambda x: self.pow_slow(int(x), self.order - 2), otypes=[np.int64])(a)

    def div(self, a, b):
        if _scalar(b) and b == 0:
            raise ZeroDivisionError(f"division by zero in {self}")
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        if self.order <= LOG_TABLE_LIMIT and self.order > self.p:
            exp, log = self._logs
            return int(exp[(int(log[a]) * e) % (self.order - 1)])
        return self.pow_slow(a, e % (self.order - 1) if e >= 0 else e % (self.order - 1))

    def elements(self) -> range:
        return range(self.order)

    def nonzero(self) -> range:
        return range(1, self.order)

    def random(self, rng: np.random.Generator, size=None):
        return rng.integers(0, self.order, size=size)

    def describe(self) -> dict:
        out = {"order": self.order, "p": self.p}
        if self.base is not None:
            out["modulus"] = list(self.modulus)
        return out


def pow_array(a, e: int, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64) % p
    result = np.ones_like(a)
    while e:
        if e & 1:
            result = (result * a) % p
        a = (a * a) % p
        e >>= 1
    return result


# --------------------------------------------------------------- polynomials


def _poly_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mod(B: Field, f, g) -> list[int]:
    """Remainder of f by monic-or-not g over B, padded to len(g)-1 coefficients."""
    f = _poly_trim(list(f))
    g = _poly_trim(list(g))
    dg = len(g) - 1
    lead_inv = B.inv(g[-1])
    while len(f) - 1 >= dg and f:
        c = B.mul(f[-1], lead_inv)
        shift = len(f) - 1 - dg
        for i, gi in enumerate(g):
            f[shift + i] = B.sub(f[shift + i], B.mul(c, gi))
        _poly_trim(f)
    return f + [0] * (dg - len(f))


def is_irreducible(B: Field, f) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    f = list(f)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if f[0] == 0:
        return False
    for dg in range(1, d // 2 + 1):
        for low in itertools.product(range(B.order), repeat=dg):
            g = list(low) + [1]
            if not any(_poly_mod(B, f, g)):
                return False
    return True


def lowest_irreducible(B: Field, degree: int) -> tuple[int, ...]:
    """Monic irreducible of the given degree with the smallest integer encoding."""
    b = B.order
    for code in range(b**degree):
        low = [(code // b**i) % b for i in range(degree)]
        f = tuple(low) + (1,)
        if is_irreducible(B, f):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------- the tower


class FieldTower:
    """GF(p) < GF(q = p^e) < GF(q^m) with an ordered GF(q)-basis alpha of GF(q^m)."""

    def __init__(
        self,
        p: int,
        e: int = 1,
        m: int = 1,
        modulus_q=None,
        modulus_qm=None,
        alpha=None,
    ):
        if e < 1 or m < 1:
            raise ValueError("e and m must be positive")
        config.check("field size q^m", p ** (e * m), config.LIMITS.field)
        self.p, self.e, self.m = p, e, m
        self.prime = Field(p)
        if e == 1:
            if modulus_q not in (None, (0, 1), [0, 1]):
                raise ValueError("modulus_q given for a prime field")
            self.mid = self.prime
            self.modulus_q = None
        else:
            modulus_q = tuple(modulus_q) if modulus_q is not None else lowest_irreducible(self.prime, e)
            self.mid = Field(p, self.prime, modulus_q)
            self.modulus_q = modulus_q
        self.q = self.mid.order
        modulus_qm = tuple(modulus_qm) if modulus_qm is not None else lowest_irreducible(self.mid, m)
        self.top = Field(p, self.mid, modulus_qm)
        self.modulus_qm = modulus_qm
        if alpha is None:
            alpha = tuple(self.q**i for i in range(m))
        self.alpha = tuple(int(a) for a in alpha)
        if len(self.alpha) != m:
            raise ValueError(f"alpha must have {m} elements")
        from sumrank import linalg

        A = np.array([self.top.digits(a) for a in self.alpha], dtype=np.int64)
        if linalg.rank(self.mid, A) != m:
            raise ValueError("alpha is not linearly independent over GF(q)")
        self._alpha_mat = A
        self._alpha_inv = linalg.inverse(self.mid, A)

    def __repr__(self) -> str:
        return f"FieldTower(GF({self.p}) < GF({self.q}) < GF({self.top.order}))"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldTower)
            and (self.p, self.e, self.m) == (other.p, other.e, other.m)
            and self.modulus_q == other.modulus_q
            and self.modulus_qm == other.modulus_qm
            and self.alpha == other.alpha
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.m, self.modulus_qm, self.alpha))

    def with_alpha(self, alpha) -> FieldTower:
        return FieldTower(self.p, self.e, self.m, self.modulus_q, self.modulus_qm, alpha)

    # ------------------------------------------------- relative structure

    def frobenius(self, a, k: int = 1):
        """sigma^k(a) = a^(q^k); sigma^m is the identity."""
        k %= self.m
        if k == 0:
            return a
        F = self.top
        if _scalar(a):
            return F.pow(int(a), self.q**k)
        if F.order <= LOG_TABLE_LIMIT:
            exp, log = F._logs
            a = np.asarray(a)
            return np.where(a == 0, 0, exp[(log[a] * (self.q**k)) % (F.order - 1)])
        return np.vectorize(lambda x: F.pow(int(x), self.q**k), otypes=[np.int64])(a)

    def norm(self, a: int) -> int:
        """N(a) = a^((q^m - 1)/(q - 1)), returned as a GF(q) code."""
        r = self.top.pow(a, (self.top.order - 1) // (self.q - 1))
        assert r < self.q
        return r

    def trace(self, a: int) -> int:
        t = 0
        for i in range(self.m):
            t = self.top.add(t, self.frobenius(a, i))
        assert t < self.q
        return t

    def norm_trace(self, a: int) -> tuple[int, int]:
        return self.norm(a), self.trace(a)

    def truncated_norm(self, a: int, i: int) -> int:
        """N_i(a) = a^((q^i - 1)/(q - 1))."""
        return self.top.pow(a, (self.q**i - 1) // (self.q - 1))

    # ---------------------------------------------------- coordinates

    def coords(self, c):
        """Coordinates of c (int or array) in the basis alpha, as GF(q) codes."""
        c = np.asarray(c, dtype=np.int64)
        digits = (c[..., None] // (self.q ** np.arange(self.m))) % self.q
        if self.alpha == tuple(self.q**i for i in range(self.m)):
            return digits
        from sumrank import linalg

        return linalg.matmul(self.mid, digits, self._alpha_inv)

    def from_coords(self, x):
        """Inverse of :meth:`coords` along the last axis."""
        from sumrank import linalg

        x = np.asarray(x, dtype=np.int64)
        digits = linalg.matmul(self.mid, x, self._alpha_mat)
        return digits @ (self.q ** np.arange(self.m))

    def describe(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "m": self.m,
            "modulus_q": list(self.modulus_q) if self.modulus_q else [0, 1],
            "modulus_qm": list(self.modulus_qm),
            "alpha": list(self.alpha),
        }

    @classmethod
    def from_description(cls, d: dict) -> FieldTower:
        mq = d.get("modulus_q")
        return cls(
            d["p"],
            d.get("e", 1),
            d.get("m", 1),
            None if d.get("e", 1) == 1 else mq,
            d.get("modulus_qm"),
            d.get("alpha"),
        )


def tower_for(q: int, m: int = 1, **kw) -> FieldTower:
    """Default tower for a prime power q."""
    for p in range(2, q + 1):
        if _is_prime(p):
            e, x = 0, q
            while x % p == 0:
                x //= p
                e += 1
            if x == 1 and e > 0:
                return FieldTower(p, e, m, **kw)
            if e > 0:
                break
    raise ValueError(f"{q} is not a prime power")


# ----------------------------------------------------------------- elements


@dataclass(frozen=True)
class Felem:
    """A field element tagged with its field, for checked arithmetic."""

    field: Field
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.field.order:
            raise ValueError(f"code {self.code} out of range for {self.field}")

    def _check(self, other: Felem) -> None:
        if not isinstance(other, Felem) or other.field != self.field:
            raise TypeError("operands live in different fields")

    def __add__(self, other):
        self._check(other)
        return Felem(self.field, self.field.add(self.code, other.code))

    def __sub__(self, other):
        self._check(other)
        return Felem(self.field, self.field.sub(self.code, other.code))

    def __mul__(self, other):
        self._check(other)
        return Felem(self.field, self.field.mul(self.code, other.code))

    def __truediv__(self, other):
        self._check(other)
        return Felem(self.field, self.field.div(self.code, other.code))

    def __neg__(self):
        return Felem(self.field, self.field.neg(self.code))

    def __int__(self):
        return self.code


def field_arith(a: Felem, b: Felem, op: str) -> Felem:
    ops = {"add": Felem.__add__, "sub": Felem.__sub__, "mul": Felem.__mul__, "div": Felem.__truediv__}
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op](a, b)


def elem_codec(field: Field, value, direction: str):
    """Integer <-> digit-list bijection (digits over the immediate base field)."""
    if direction == "encode":
        return field.from_digits(value)
    if direction == "decode":
        return list(field.digits(value))
    raise ValueError(f"unknown direction {direction!r}")
