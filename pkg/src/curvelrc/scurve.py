"""Superelliptic curves gamma * y^M = f(x) with one place at infinity, their
rational places, standard orbit families, and genus-2 matrix automorphisms."""
from __future__ import annotations

from math import gcd

from . import poly
from .actions import INF, Orbit, close_group, orbits_of, permutation, sort_places
from .errors import (
    FieldTooLarge,
    ImageOffCurve,
    InvalidCurve,
    KernelNotClosed,
    NonSquareField,
    NotGenus2,
    NotHyperelliptic,
    TranslationNotAutomorphism,
    WrongRootCount,
)
from .gf import isqrt_exact

ENUMERATION_LIMIT = 2 ** 20


class SuperellipticCurve:
    """gamma * y^M = f(x), with gcd(M, deg f) = gcd(M, p) = 1 and f squarefree."""

    def __init__(self, field, M: int, f, gamma: int = 1):
        F = self.field = field
        f = poly.trim(f)
        self.M = M
        self.f = f
        self.gamma = gamma
        self.N = len(f) - 1
        if M < 2 or self.N < 1:
            raise InvalidCurve("need M >= 2 and deg f >= 1")
        if gcd(M, self.N) != 1:
            raise InvalidCurve(f"gcd(M, deg f) = gcd({M}, {self.N}) != 1")
        if M % F.p == 0:
            raise InvalidCurve("the characteristic divides M")
        if gamma == 0:
            raise InvalidCurve("gamma must be nonzero")
        if len(poly.gcd(F, f, poly.deriv(F, f))) > 1:
            raise InvalidCurve("f is not squarefree")
        self.pole_x = M
        self.pole_y = self.N
        self.ydeg = M
        self.genus = (M - 1) * (self.N - 1) // 2
        self.equation = {(0, M): gamma}
        for i, c in enumerate(f):
            if c:
                self.equation[(i, 0)] = F.neg(c)
        self._places = None
        self._index = None

    def __repr__(self):
        return f"SuperellipticCurve({self.field}, M={self.M}, f={self.f}, gamma={self.gamma})"

    def describe(self) -> dict:
        F = self.field
        return {"kind": "superelliptic", "M": self.M, "f": [list(F.coeffs(c)) for c in self.f],
                "gamma": list(F.coeffs(self.gamma))}

    def f_at(self, x):
        return poly.evaluate(self.field, self.f, x)

    def contains(self, P) -> bool:
        if P is INF:
            return True
        F = self.field
        x, y = P
        return F.mul(self.gamma, F.pow(y, self.M)) == self.f_at(x)

    def places(self):
        if self._places is None:
            F = self.field
            if F.q > ENUMERATION_LIMIT:
                raise FieldTooLarge(f"q = {F.q} exceeds the enumeration limit")
            roots = {}
            for y in F.elements():
                roots.setdefault(F.pow(y, self.M), []).append(y)
            ginv = F.inv(self.gamma)
            pts = [INF]
            for x in F.elements():
                v = F.mul(self.f_at(x), ginv)
                for y in roots.get(v, ()):
                    pts.append((x, y))
            self._places = sort_places(pts)
            self._index = {P: i for i, P in enumerate(self._places)}
        return self._places

    points = places

    def index(self):
        self.places()
        return self._index

    def count(self) -> int:
        return len(self.places())


def maximality_check(C) -> tuple[str, int]:
    """Classify the rational place count against the Hasse-Weil bounds.
    Returns (kind, count) where kind is 'maximal', 'minimal' or 'neither'."""
    q = C.field.q
    n = C.count()
    rq = isqrt_exact(q)
    if rq is None:
        raise NonSquareField(f"q = {q} is not a square", count=n)
    if n == q + 1 + 2 * C.genus * rq:
        return "maximal", n
    if n == q + 1 - 2 * C.genus * rq:
        return "minimal", n
    return "neither", n


def hyperelliptic_conjugate(C, P):
    if C.M != 2:
        raise NotHyperelliptic("conjugation needs M = 2")
    if P is INF:
        return INF
    return (P[0], C.field.neg(P[1]))


def is_reduced(C, places) -> bool:
    """No place in the list is the hyperelliptic conjugate of another entry."""
    places = list(places)
    for i, P in enumerate(places):
        c = hyperelliptic_conjugate(C, P)
        if any(j != i and Q == c for j, Q in enumerate(places)):
            return False
    return True


def _check_additive_kernel(F, kernel):
    ks = set(kernel)
    if 0 not in ks or any(F.add(a, b) not in ks for a in ks for b in ks):
        raise KernelNotClosed("translation set is not an additive group")


def x_translation_orbits(C, kernel):
    """Orbits of affine places under x -> x + a for a in the additive group `kernel`."""
    F = C.field
    _check_additive_kernel(F, kernel)
    for a in kernel:
        if poly.shift(F, C.f, a) != C.f:
            raise TranslationNotAutomorphism(f"f(x + {a}) != f(x)")
    return _orbits_by(C, [lambda P, a=a: (F.add(P[0], a), P[1]) for a in kernel], affine_only=True)


def y_scaling_orbits(C, roots):
    """Orbits of places with y != 0 under y -> zeta y for zeta in `roots`
    (the M-th roots of unity).  Returns (orbits, excluded_places)."""
    F = C.field
    roots = sorted(set(roots))
    if len(roots) != C.M or any(F.pow(z, C.M) != 1 for z in roots):
        raise WrongRootCount(f"need the {C.M} distinct M-th roots of unity")
    excluded = [P for P in C.places() if P is not INF and P[1] == 0]
    orbs = _orbits_by(C, [lambda P, z=z: (P[0], F.mul(z, P[1])) for z in roots],
                      affine_only=True, skip=lambda P: P[1] == 0)
    return orbs, excluded


def x_scaling_orbits(C, roots):
    """Orbits of places with x != 0 under x -> zeta x, when f(zeta x) = f(x)."""
    F = C.field
    roots = sorted(set(roots))
    for z in roots:
        scaled = [F.mul(c, F.pow(z, i)) for i, c in enumerate(C.f)]
        if scaled != C.f:
            raise TranslationNotAutomorphism(f"f({z} x) != f(x)")
    excluded = [P for P in C.places() if P is not INF and P[0] == 0]
    orbs = _orbits_by(C, [lambda P, z=z: (F.mul(z, P[0]), P[1]) for z in roots],
                      affine_only=True, skip=lambda P: P[0] == 0)
    return orbs, excluded


def _orbits_by(C, maps, affine_only=True, skip=None):
    """Orbits of a group given as a complete list of maps on affine places."""
    seen = set()
    out = []
    n = len(maps)
    for P in C.places():
        if P is INF or P in seen or (skip is not None and skip(P)):
            continue
        orb = {m(P) for m in maps}
        for Q in orb:
            if not C.contains(Q):
                raise TranslationNotAutomorphism(f"image {Q} is off the curve")
        seen |= orb
        out.append(Orbit(tuple(sort_places(orb)), n // len(orb)))
    return out


class Genus2Automorphism:
    """x -> (a x + b)/(c x + d), y -> (ad - bc) y/(c x + d)^3 on y^2 = quintic."""

    def __init__(self, C, a, b, c, d, check=True):
        if C.M != 2 or C.N != 5:
            raise NotGenus2("need a curve gamma y^2 = f(x) with deg f = 5")
        self.curve = C
        self.matrix = (a, b, c, d)
        F = C.field
        self.det = F.sub(F.mul(a, d), F.mul(b, c))
        if self.det == 0:
            raise ImageOffCurve("singular matrix")
        if check:
            pts = C.places()
            imgs = [self(P) for P in pts]
            if not all(C.contains(P) for P in imgs) or len(set(imgs)) != len(pts):
                raise ImageOffCurve("matrix does not induce an automorphism")

    def __call__(self, P):
        F = self.curve.field
        a, b, c, d = self.matrix
        if P is INF:
            if c == 0:
                return INF
            return (F.div(a, c), 0)
        x, y = P
        den = F.add(F.mul(c, x), d)
        if den == 0:
            return INF
        X = F.div(F.add(F.mul(a, x), b), den)
        Y = F.div(F.mul(self.det, y), F.pow(den, 3))
        return (X, Y)

    def __matmul__(self, other):
        """Composition self o other, given by the matrix product."""
        F = self.curve.field
        a, b, c, d = self.matrix
        e, f, g, h = other.matrix
        m = (F.add(F.mul(a, e), F.mul(b, g)), F.add(F.mul(a, f), F.mul(b, h)),
             F.add(F.mul(c, e), F.mul(d, g)), F.add(F.mul(c, f), F.mul(d, h)))
        return Genus2Automorphism(self.curve, *m, check=False)

    def permutation(self):
        return permutation(self, self.curve.places(), self.curve.index())

    def __repr__(self):
        return f"Genus2Automorphism{self.matrix}"


def hyperelliptic_involution_permutation(C):
    return permutation(lambda P: hyperelliptic_conjugate(C, P), C.places(), C.index())


def genus2_group(C, generators, cap: int = 240):
    """Permutations of the group generated by genus-2 automorphisms."""
    return close_group([g.permutation() for g in generators], len(C.places()), cap=cap)


def group_orbits(C, perms):
    return orbits_of(perms, C.places())
