"""Elliptic curves in long Weierstrass form, the chord-tangent group law, and
automorphism groups of the form T_H * A (translations by a subgroup H composed
with automorphisms fixing the point at infinity)."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb

from .actions import INF, Orbit, close_group, orbits_of, permutation, sort_places
from .errors import (
    BudgetExceeded,
    FieldTooLarge,
    NoSuchSubgroup,
    NotASubgroup,
    PointNotOnCurve,
    SingularCurve,
)
from .gf import prime_factors

ENUMERATION_LIMIT = 2 ** 20


class WeierstrassCurve:
    """y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 over a finite field."""

    pole_x = 2
    pole_y = 3
    ydeg = 2
    genus = 1

    def __init__(self, field, a1=0, a2=0, a3=0, a4=0, a6=0):
        F = self.field = field
        self.a1, self.a2, self.a3, self.a4, self.a6 = a1, a2, a3, a4, a6
        if self.discriminant() == 0:
            raise SingularCurve("discriminant vanishes")
        n = F.neg
        self.equation = {
            k: v for k, v in {
                (0, 2): 1, (1, 1): a1, (0, 1): a3,
                (3, 0): n(1), (2, 0): n(a2), (1, 0): n(a4), (0, 0): n(a6),
            }.items() if v
        }
        self._points = None
        self._index = None

    def coefficients(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __repr__(self):
        return f"WeierstrassCurve({self.field}, a={self.coefficients()})"

    def describe(self) -> dict:
        return {"kind": "weierstrass", "a": [list(self.field.coeffs(c)) for c in self.coefficients()]}

    def discriminant(self) -> int:
        F = self.field
        a1, a2, a3, a4, a6 = self.coefficients()
        c = F.from_int
        m, ad, sb = F.mul, F.add, F.sub
        b2 = ad(m(a1, a1), m(c(4), a2))
        b4 = ad(m(c(2), a4), m(a1, a3))
        b6 = ad(m(a3, a3), m(c(4), a6))
        b8 = F.sum([m(m(a1, a1), a6), m(c(4), m(a2, a6)), F.neg(m(m(a1, a3), a4)),
                    m(a2, m(a3, a3)), F.neg(m(a4, a4))])
        d = F.sum([
            F.neg(m(m(b2, b2), b8)),
            F.neg(m(c(8), m(b4, m(b4, b4)))),
            F.neg(m(c(27), m(b6, b6))),
            m(c(9), m(b2, m(b4, b6))),
        ])
        return d

    # -- points ---------------------------------------------------------
    def contains(self, P) -> bool:
        if P is INF:
            return True
        F = self.field
        x, y = P
        lhs = F.add(F.mul(y, y), F.mul(y, F.add(F.mul(self.a1, x), self.a3)))
        rhs = F.add(F.mul(F.add(F.mul(F.add(x, self.a2), x), self.a4), x), self.a6)
        return lhs == rhs

    def points(self):
        """All rational points, point at infinity first, then affine points sorted."""
        if self._points is None:
            F = self.field
            if F.q > ENUMERATION_LIMIT:
                raise FieldTooLarge(f"q = {F.q} exceeds the enumeration limit")
            pts = [INF]
            if F.p == 2:
                sq = {F.mul(y, y): y for y in F.elements()}
                art = {}
                for w in F.elements():
                    art.setdefault(F.add(F.mul(w, w), w), w)
            else:
                sq = {}
                for y in F.elements():
                    sq.setdefault(F.mul(y, y), y)
                half = F.inv(2)
            for x in F.elements():
                b = F.add(F.mul(self.a1, x), self.a3)
                c = F.add(F.mul(F.add(F.mul(F.add(x, self.a2), x), self.a4), x), self.a6)
                if F.p == 2:
                    if b == 0:
                        pts.append((x, sq[c]))
                    else:
                        w = art.get(F.div(c, F.mul(b, b)))
                        if w is not None:
                            pts.append((x, F.mul(b, w)))
                            pts.append((x, F.mul(b, F.add(w, 1))))
                else:
                    d = F.add(F.mul(b, b), F.mul(4 % F.p, c))
                    r = sq.get(d)
                    if r is not None:
                        for root in {r, F.neg(r)}:
                            pts.append((x, F.mul(F.sub(root, b), half)))
            self._points = sort_places(pts)
            self._index = {P: i for i, P in enumerate(self._points)}
        return self._points

    places = points

    def index(self):
        self.points()
        return self._index

    def count(self) -> int:
        return len(self.points())

    def _check(self, P):
        if not self.contains(P):
            raise PointNotOnCurve(f"{P} is not on {self}")

    # -- group law ------------------------------------------------------
    def neg(self, P):
        if P is INF:
            return INF
        F = self.field
        x, y = P
        return (x, F.sub(F.neg(y), F.add(F.mul(self.a1, x), self.a3)))

    def add(self, P, Q):
        if P is INF:
            return Q
        if Q is INF:
            return P
        F = self.field
        a1, a2, a3, a4, a6 = self.coefficients()
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2 and F.add(F.add(y1, y2), F.add(F.mul(a1, x2), a3)) == 0:
            return INF
        if x1 != x2:
            dx = F.sub(x2, x1)
            lam = F.div(F.sub(y2, y1), dx)
            nu = F.div(F.sub(F.mul(y1, x2), F.mul(y2, x1)), dx)
        else:
            c = F.from_int
            den = F.add(F.add(F.mul(c(2), y1), F.mul(a1, x1)), a3)
            lam = F.div(F.sum([F.mul(c(3), F.mul(x1, x1)), F.mul(c(2), F.mul(a2, x1)), a4,
                               F.neg(F.mul(a1, y1))]), den)
            nu = F.div(F.sum([F.neg(F.mul(x1, F.mul(x1, x1))), F.mul(a4, x1), F.mul(c(2), a6),
                              F.neg(F.mul(a3, y1))]), den)
        x3 = F.sum([F.mul(lam, lam), F.mul(a1, lam), F.neg(a2), F.neg(x1), F.neg(x2)])
        y3 = F.sub(F.neg(F.mul(F.add(lam, a1), x3)), F.add(nu, a3))
        return (x3, y3)

    def sub(self, P, Q):
        return self.add(P, self.neg(Q))

    def mul(self, k: int, P):
        if k < 0:
            return self.mul(-k, self.neg(P))
        R = INF
        while k:
            if k & 1:
                R = self.add(R, P)
            P = self.add(P, P)
            k >>= 1
        return R

    def sum(self, pts):
        R = INF
        for P in pts:
            R = self.add(R, P)
        return R

    def order(self, P) -> int:
        n = self.count()
        d = n
        for l in prime_factors(n):
            while d % l == 0 and self.mul(d // l, P) is INF:
                d //= l
        return d


@dataclass(frozen=True)
class ECGroupStructure:
    """E(F_q) = <gen1> x <gen2> with n1 | n2."""
    n1: int
    n2: int
    gen1: object
    gen2: object


def group_structure(E: WeierstrassCurve) -> ECGroupStructure:
    pts = E.points()
    N = len(pts)
    orders = {P: E.order(P) for P in pts}
    n2 = max(orders.values())
    gen2 = next(P for P in pts if orders[P] == n2)
    n1 = N // n2
    if n1 == 1:
        return ECGroupStructure(1, n2, INF, gen2)
    cyc2 = {E.mul(i, gen2) for i in range(n2)}
    for P in pts:
        if orders[P] != n1:
            continue
        multiples = [E.mul(i, P) for i in range(1, n1)]
        if any(M in cyc2 for M in multiples):
            continue
        struct = ECGroupStructure(n1, n2, P, gen2)
        generated = {E.add(E.mul(i, P), Q) for i in range(n1) for Q in cyc2}
        if len(generated) == N:
            return struct
    raise AssertionError("no complementary generator found")


def subgroup_of_order(E: WeierstrassCurve, struct: ECGroupStructure, h: int):
    """A subgroup of order h: the h0-torsion when h = h0^2 and h0 | n1, a cyclic
    subgroup of <gen2> when h | n2, otherwise a product of cyclic pieces."""
    N = struct.n1 * struct.n2
    if h <= 0 or N % h:
        raise NoSuchSubgroup(f"{h} does not divide {N}")
    h0 = int(round(h ** 0.5))
    if h0 * h0 == h and struct.n1 % h0 == 0:
        g1 = E.mul(struct.n1 // h0, struct.gen1)
        g2 = E.mul(struct.n2 // h0, struct.gen2)
        return _span(E, [g1, g2])
    if struct.n2 % h == 0:
        return _span(E, [E.mul(struct.n2 // h, struct.gen2)])
    for d1 in range(1, struct.n1 + 1):
        if struct.n1 % d1 == 0 and h % d1 == 0 and struct.n2 % (h // d1) == 0:
            g1 = E.mul(struct.n1 // d1, struct.gen1)
            g2 = E.mul(struct.n2 // (h // d1), struct.gen2)
            H = _span(E, [g1, g2])
            if len(H) == h:
                return H
    raise NoSuchSubgroup(f"no subgroup of order {h}")


def _span(E, gens):
    H = {INF}
    frontier = [INF]
    while frontier:
        nxt = []
        for P in frontier:
            for g in gens:
                R = E.add(P, g)
                if R not in H:
                    H.add(R)
                    nxt.append(R)
        frontier = nxt
    return sort_places(H)


# -- automorphisms ------------------------------------------------------
@dataclass(frozen=True)
class ECAutomorphism:
    """An automorphism of E as a map on points.

    kind is 'translation' (data = Q), 'fixing_o' (data = (u, r, s, t), the
    change of variables (x, y) -> (u^2 x + r, u^3 y + s u^2 x + t)) or
    'composite' (data = tuple of automorphisms, rightmost applied first).
    """
    curve: WeierstrassCurve = dc_field(compare=False, repr=False)
    kind: str
    data: object
    description: str = ""

    def __call__(self, P):
        E = self.curve
        if self.kind == "translation":
            return E.add(P, self.data)
        if self.kind == "fixing_o":
            if P is INF:
                return INF
            F = E.field
            u, r, s, t = self.data
            u2 = F.mul(u, u)
            x, y = P
            return (F.add(F.mul(u2, x), r),
                    F.add(F.add(F.mul(F.mul(u2, u), y), F.mul(F.mul(s, u2), x)), t))
        if self.kind == "composite":
            for a in reversed(self.data):
                P = a(P)
            return P
        raise ValueError(self.kind)

    def permutation(self):
        return permutation(self, self.curve.points(), self.curve.index())


def translation(E, Q) -> ECAutomorphism:
    E._check(Q)
    return ECAutomorphism(E, "translation", Q, f"translate by {Q}")


def fixing_o(E, u, r=0, s=0, t=0, description="") -> ECAutomorphism:
    a = ECAutomorphism(E, "fixing_o", (u, r, s, t), description or f"fix O, (u,r,s,t)={(u, r, s, t)}")
    pts = E.points()
    images = [a(P) for P in pts]
    if not all(E.contains(P) for P in images) or len(set(images)) != len(pts):
        raise NotASubgroup("the change of variables does not preserve the curve")
    return a


def negation(E) -> ECAutomorphism:
    F = E.field
    return fixing_o(E, F.neg(1), 0, F.neg(E.a1), F.neg(E.a3), "[-1]")


def composite(*maps) -> ECAutomorphism:
    return ECAutomorphism(maps[0].curve, "composite", tuple(maps),
                          " o ".join(m.description for m in maps))


def tau_rational_map(E, P):
    """Translation by Q = (0, 1) on y^2 + y = x^3 over characteristic 2, written
    as the rational map x -> (y + 1)/x^2, y -> (y + 1)/y.  Returns None where
    the formula is undefined (x = 0 or y = 0 or P = O)."""
    F = E.field
    if P is INF:
        return None
    x, y = P
    if x == 0 or y == 0:
        return None
    y1 = F.add(y, 1)
    return (F.div(y1, F.mul(x, x)), F.div(y1, y))


def check_TH_A_subgroup(E, H, A):
    """Verify that H is a subgroup of E(F_q) and that the group generated by the
    O-fixing automorphisms A maps H into itself, so that T_H * <A> is a group.
    Returns the permutations of <A>."""
    pts = E.points()
    index = E.index()
    Hs = set(H)
    if INF not in Hs or any(E.sub(P, Q) not in Hs for P in H for Q in H):
        raise NotASubgroup("H is not a subgroup")
    for a in A:
        if a(INF) is not INF:
            raise NotASubgroup(f"{a.description} does not fix O")
    closure = close_group([a.permutation() for a in A], len(pts), cap=10 ** 4)
    Hidx = {index[P] for P in H}
    for g in closure:
        if any(g[i] not in Hidx for i in Hidx):
            raise NotASubgroup("an element of A does not preserve H")
    return closure


def group_TH_A(E, H, A):
    """Permutations of the group T_H * <A> acting on E.points()."""
    A_closed = check_TH_A_subgroup(E, H, A)
    trans = [translation(E, Q).permutation() for Q in H]
    elems = {tuple(t[i] for i in a) for t in trans for a in A_closed}
    if len(elems) != len(H) * len(A_closed):
        raise NotASubgroup("T_H and A intersect nontrivially")
    return sorted(elems)


def orbits(E, perms):
    return orbits_of(perms, E.points())


def divisor_class_sum(E, a, b) -> bool:
    """Whether two effective divisors (point lists) of equal degree have equal sums."""
    if len(a) != len(b):
        raise ValueError("divisors of different degree")
    return E.sum(a) == E.sum(b)


def condition_tail_check(E, defining, orbit_list, r, delta, cap=10 ** 7):
    """Tail condition: P_{r+1} + ... + P_{r+delta-1} differs from the sum of
    every (delta-1)-subset of each orbit.  Returns (ok, witness)."""
    tail = E.sum(defining[r:r + delta - 1])
    return _subset_sum_avoids(E, tail, orbit_list, delta - 1, cap)


def condition_head_check(E, defining, orbit_list, r, cap=10 ** 7):
    """Head condition: P_1 + ... + P_r differs from every r-subset sum of each orbit."""
    head = E.sum(defining[:r])
    return _subset_sum_avoids(E, head, orbit_list, r, cap)


def _subset_sum_avoids(E, target, orbit_list, size, cap):
    total = sum(comb(len(o), size) for o in orbit_list)
    if total > cap:
        raise BudgetExceeded(f"{total} subsets exceed cap {cap}")
    for o in orbit_list:
        for S in combinations(tuple(o), size):
            if E.sum(S) == target:
                return False, (o, S)
    return True, None


def find_curve_with_count(F, target: int, limit: int = 20000):
    """Deterministic search for a Weierstrass curve over F with `target` points."""
    tried = 0
    if F.p == 2:
        candidates = ((0, 0, a3, a4, a6) for a3 in range(1, F.q) for a4 in F.elements()
                      for a6 in F.elements())
        ordinary = ((1, a2, 0, 0, a6) for a2 in F.elements() for a6 in range(1, F.q))
        import itertools
        candidates = itertools.chain(candidates, ordinary)
    elif F.p == 3:
        candidates = ((0, a2, 0, a4, a6) for a2 in F.elements() for a4 in F.elements()
                      for a6 in F.elements())
    else:
        candidates = ((0, 0, 0, a4, a6) for a4 in F.elements() for a6 in F.elements())
    for a in candidates:
        tried += 1
        if tried > limit:
            break
        try:
            E = WeierstrassCurve(F, *a)
        except SingularCurve:
            continue
        if E.count() == target:
            return E
    return None
