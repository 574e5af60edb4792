"""Finite fields GF(p^s) in a polynomial basis.

Elements are plain ints: the element sum c_i u^i is encoded as sum c_i p^i,
where u is the class of the indeterminate modulo the defining polynomial.
``FieldElement`` wraps an int together with its field for operator syntax.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import poly
from .errors import (
    DivisionByZero,
    EvenCharacteristic,
    NonDividingDegree,
    NonPrimeCharacteristic,
    OrderNotDividing,
    ReducibleModulus,
)

DENSE_TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
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


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, s) with q = p**s, or None."""
    for p in range(2, q + 1):
        if q % p == 0:
            s = 0
            while q % p == 0:
                q //= p
                s += 1
            return (p, s) if q == 1 else None
    return None


def isqrt_exact(n: int) -> int | None:
    r = int(round(n ** 0.5))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c * c == n:
            return c
    return None


class GF:
    """The field GF(p^s) with a fixed modulus and a designated primitive element."""

    def __init__(self, p: int, s: int, modulus=None, primitive: int | None = None):
        if not is_prime(p):
            raise NonPrimeCharacteristic(f"{p} is not prime")
        if s < 1:
            raise ValueError("extension degree must be positive")
        self.p = p
        self.s = s
        self.q = p ** s
        if modulus is None:
            modulus = smallest_irreducible(p, s)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != s + 1 or modulus[-1] != 1:
            raise ReducibleModulus("modulus must be monic of degree s")
        if s > 1 and not is_irreducible(p, modulus):
            raise ReducibleModulus(f"{modulus} is reducible over GF({p})")
        self.modulus = modulus
        self.zero = 0
        self.one = 1
        self._add = None
        self._mul = None
        if primitive is None:
            primitive = self._find_primitive()
        elif not self._is_generator(primitive):
            raise ValueError("supplied primitive does not generate the multiplicative group")
        self.primitive = primitive
        self._build_log_tables()
        self._addl = None
        self._negl = None
        if self.p != 2 and self.s > 1 and self.q <= DENSE_TABLE_LIMIT:
            add, _ = self.tables()
            self._addl = add.tolist()
            self._negl = [self._slow_neg(a) for a in range(self.q)]

    # -- encoding -------------------------------------------------------
    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.s):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coeffs(self, cs) -> int:
        cs = list(cs)
        if len(cs) > self.s:
            # reduce a longer coefficient list modulo the modulus
            cs = poly_mod_p(cs, self.modulus, self.p)
        v = 0
        for c in reversed(cs):
            v = v * self.p + (int(c) % self.p)
        return v

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(p)."""
        return n % self.p

    def elements(self):
        return range(self.q)

    def __repr__(self):
        return f"GF({self.p}^{self.s})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.s, self.modulus, self.primitive) == (
            other.p, other.s, other.modulus, other.primitive)

    def __hash__(self):
        return hash((self.p, self.s, self.modulus, self.primitive))

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, (list, tuple)):
            value = self.from_coeffs(value)
        return FieldElement(self, int(value))

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "s": self.s,
            "modulus": list(self.modulus),
            "primitive": list(self.coeffs(self.primitive)),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GF":
        F = make_field(d["p"], d["s"], tuple(d["modulus"]))
        prim = F.from_coeffs(d["primitive"])
        if prim != F.primitive:
            F = GF(d["p"], d["s"], tuple(d["modulus"]), prim)
        return F

    # -- slow polynomial arithmetic (table construction only) -----------
    def _polymul(self, a: int, b: int) -> int:
        pa, pb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.s - 1)
        for i, x in enumerate(pa):
            if x:
                for j, y in enumerate(pb):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        return self.from_coeffs(poly_mod_p(prod, self.modulus, self.p))

    def _polypow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._polymul(r, a)
            a = self._polymul(a, a)
            e >>= 1
        return r

    def _is_generator(self, g: int) -> bool:
        if g == 0:
            return False
        n = self.q - 1
        if self._polypow(g, n) != 1:
            return False
        return all(self._polypow(g, n // l) != 1 for l in prime_factors(n))

    def _find_primitive(self) -> int:
        if self.q == 2:
            return 1
        for g in range(2, self.q):
            if self._is_generator(g):
                return g
        raise AssertionError("no generator found")

    def _build_log_tables(self):
        n = self.q - 1
        exp = [0] * (2 * n)
        log = [-1] * self.q
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._polymul(x, self.primitive)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self._exp = exp
        self._log = log

    # -- arithmetic on ints ---------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.s == 1:
            return (a + b) % self.p
        if self._addl is not None:
            return self._addl[a][b]
        r, m, p = 0, 1, self.p
        while a or b:
            r += ((a % p + b % p) % p) * m
            a //= p
            b //= p
            m *= p
        return r

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.s == 1:
            return (-a) % self.p
        if self._negl is not None:
            return self._negl[a]
        return self._slow_neg(a)

    def _slow_neg(self, a: int) -> int:
        r, m, p = 0, 1, self.p
        while a:
            r += ((-(a % p)) % p) * m
            a //= p
            m *= p
        return r

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("log of zero")
        return self._log[a]

    def exp(self, k: int) -> int:
        return self._exp[k % (self.q - 1)]

    def frobenius(self, a: int, k: int = 1) -> int:
        return self.pow(a, self.p ** k)

    def order(self, a: int) -> int:
        n = self.q - 1
        return n // np.gcd(self.log(a), n) if a else 0

    def sqrt(self, a: int) -> int | None:
        """Some square root of a, or None when a is a non-square."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.q // 2)
        k = self._log[a]
        if k % 2:
            return None
        return self._exp[k // 2]

    def sum(self, values) -> int:
        acc = 0
        for v in values:
            acc = self.add(acc, v)
        return acc

    # -- dense numpy tables ---------------------------------------------
    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        """(add_table, mul_table) as q x q int arrays."""
        if self._mul is None:
            if self.q > DENSE_TABLE_LIMIT:
                raise ValueError("field too large for dense tables")
            q = self.q
            idx = np.arange(q)
            if self.p == 2:
                add = idx[:, None] ^ idx[None, :]
            else:
                add = np.zeros((q, q), dtype=np.int64)
                m = 1
                a, b = idx[:, None], idx[None, :]
                for _ in range(self.s):
                    add = add + ((a // m % self.p + b // m % self.p) % self.p) * m
                    m *= self.p
            exp = np.array(self._exp, dtype=np.int64)
            log = np.array(self._log, dtype=np.int64)
            mul = exp[(log[:, None] + log[None, :]) % (q - 1)]
            mul[0, :] = 0
            mul[:, 0] = 0
            dtype = np.int16 if q < 2 ** 15 else np.int32
            self._add = add.astype(dtype)
            self._mul = mul.astype(dtype)
        return self._add, self._mul


def poly_mod_p(a, m, p):
    """Reduce the integer polynomial a modulo monic m over GF(p)."""
    a = [x % p for x in a]
    d = len(m) - 1
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            for j in range(d + 1):
                a[i - d + j] = (a[i - d + j] - c * m[j]) % p
    out = a[:d]
    return out + [0] * (d - len(out))


def is_irreducible(p: int, modulus) -> bool:
    """Rabin's test over GF(p)."""
    Fp = prime_field(p)
    f = list(modulus)
    s = len(f) - 1
    x = [0, 1]

    def xpow(k):
        return poly.powmod(Fp, x, p ** k, f)

    if poly.mod(Fp, poly.sub(Fp, xpow(s), x), f):
        return False
    for l in prime_factors(s):
        g = poly.gcd(Fp, poly.sub(Fp, xpow(s // l), x), f)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, s: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree s, ordering monic polynomials by the
    integer sum c_i p^i of their lower coefficients."""
    if s == 1:
        return (0, 1)
    for k in range(p ** s):
        cs = []
        v = k
        for _ in range(s):
            cs.append(v % p)
            v //= p
        if cs[0] == 0:
            continue
        cand = tuple(cs) + (1,)
        if is_irreducible(p, cand):
            return cand
    raise AssertionError("no irreducible polynomial found")


@lru_cache(maxsize=None)
def prime_field(p: int) -> GF:
    return GF(p, 1)


@lru_cache(maxsize=None)
def make_field(p: int, s: int, modulus: tuple | None = None) -> GF:
    """Build (and cache) GF(p^s), optionally with an explicit modulus given as
    coefficients c_0..c_s."""
    if s == 1 and modulus is None:
        return prime_field(p)
    return GF(p, s, None if modulus is None else tuple(modulus))


def field_of_order(q: int, modulus: tuple | None = None) -> GF:
    pp = prime_power(q)
    if pp is None:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    return make_field(pp[0], pp[1], None if modulus is None else tuple(modulus))


def trace_to_subfield(F: GF, x: int, c: int) -> int:
    """Relative trace from GF(p^s) down to GF(p^c)."""
    if c <= 0 or F.s % c:
        raise NonDividingDegree(f"{c} does not divide {F.s}")
    acc = 0
    y = x
    for _ in range(F.s // c):
        acc = F.add(acc, y)
        y = F.frobenius(y, c)
    return acc


def nth_roots_of_unity(F: GF, n: int) -> list[int]:
    if n <= 0 or (F.q - 1) % n:
        raise OrderNotDividing(f"{n} does not divide {F.q - 1}")
    step = (F.q - 1) // n
    return sorted(F.exp(step * k) for k in range(n))


def quadratic_nonresidue(F: GF) -> int:
    """A fixed non-square: the designated primitive element (odd exponent 1)."""
    if F.p == 2:
        raise EvenCharacteristic("every element is a square in characteristic 2")
    return F.primitive


@dataclass(frozen=True)
class FieldElement:
    field: GF
    value: int

    def _v(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        return self.field.from_int(int(other))

    def __add__(self, o):
        return FieldElement(self.field, self.field.add(self.value, self._v(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return FieldElement(self.field, self.field.sub(self.value, self._v(o)))

    def __rsub__(self, o):
        return FieldElement(self.field, self.field.sub(self._v(o), self.value))

    def __mul__(self, o):
        return FieldElement(self.field, self.field.mul(self.value, self._v(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return FieldElement(self.field, self.field.div(self.value, self._v(o)))

    def __rtruediv__(self, o):
        return FieldElement(self.field, self.field.div(self._v(o), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, o):
        if isinstance(o, FieldElement):
            return self.field == o.field and self.value == o.value
        if isinstance(o, int):
            return self.value == self.field.from_int(o)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    @property
    def coeffs(self):
        return self.field.coeffs(self.value)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
                terms.append(f"{c}{mono}" if (c != 1 or i == 0) else mono)
        return " + ".join(reversed(terms)) or "0"
