"""Univariate polynomials over a field, as coefficient lists (constant term first).

All functions take the field first and return trimmed lists; the zero
polynomial is the empty list.
"""
from __future__ import annotations


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def add(F, a, b):
    n = max(len(a), len(b))
    return trim(F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n))


def neg(F, a):
    return [F.neg(c) for c in a]


def sub(F, a, b):
    return add(F, a, neg(F, b))


def scale(F, a, c):
    return trim(F.mul(x, c) for x in a)


def mul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def divmod_(F, a, b):
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = trim(a)
    inv = F.inv(b[-1])
    qt = [0] * max(len(a) - len(b) + 1, 0)
    a = list(a)
    for i in range(len(a) - len(b), -1, -1):
        c = F.mul(a[i + len(b) - 1], inv)
        qt[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] = F.sub(a[i + j], F.mul(c, y))
    return trim(qt), trim(a[: len(b) - 1])


def mod(F, a, b):
    return divmod_(F, a, b)[1]


def monic(F, a):
    a = trim(a)
    return scale(F, a, F.inv(a[-1])) if a else []


def gcd(F, a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def deriv(F, a):
    return trim(F.mul(F.from_int(i), a[i]) for i in range(1, len(a)))


def evaluate(F, a, x):
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def powmod(F, a, e, m):
    result = [1]
    base = mod(F, a, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        base = mod(F, mul(F, base, base), m)
        e >>= 1
    return result


def shift(F, a, c):
    """The polynomial x -> a(x + c)."""
    out = []
    for coef in reversed(a):
        out = add(F, mul(F, out, [c, 1]), [coef])
    return out


def roots(F, a):
    return [x for x in F.elements() if evaluate(F, a, x) == 0]
