"""Code recipes: curve + automorphism group + defining list -> locally
recoverable code with evaluation groups given by group orbits.

Every recipe produces an EvaluationPlan (ladder functions w_0..w_{r-1}, an
invariant z and the evaluation groups) and then ``build_code`` evaluates
{w_i z^j : i < r, j < t} and z^t at the grouped places.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import gcd

from . import ecurve, linalg, scurve
from .actions import INF, sort_places
from .errors import (
    EvenSWithoutTwist,
    InvolutionInGroup,
    NotMaximal,
    OrientationDegenerate,
    ParameterOutOfRange,
    PoleAtEvaluationPlace,
    RankDeficient,
    SelectionFailed,
)
from .funcspace import POLE, CurveFunction, Divisor, invariant_generator_z, ladder_functions
from .gf import field_of_order, isqrt_exact, nth_roots_of_unity, prime_power, quadratic_nonresidue


@dataclass
class EvaluationPlan:
    curve: object
    r: int
    delta: int
    t: int
    m: int
    ladder: list
    z: CurveFunction
    groups: list
    recipe: str
    params: dict
    ell: int
    usable: int
    defining: list = dc_field(default_factory=list)
    d_designed: int | None = None
    optimal: bool = True
    notes: dict = dc_field(default_factory=dict)


@dataclass
class LrcCode:
    field: object
    generator: list
    groups: list
    r: int
    delta: int
    t: int
    m: int
    d_designed: int
    z_values: list
    recipe: str
    params: dict
    places: list = dc_field(default_factory=list)
    curve: dict = dc_field(default_factory=dict)
    optimal: bool = True
    notes: dict = dc_field(default_factory=dict)

    @property
    def n(self):
        return len(self.generator[0])

    @property
    def k(self):
        return len(self.generator)

    @property
    def q(self):
        return self.field.q

    def designed_parameters(self):
        return (self.n, self.k, self.d_designed)

    def __repr__(self):
        return (f"LrcCode[{self.n},{self.k},{self.d_designed}]_{self.q} "
                f"(r={self.r}, delta={self.delta}, {self.recipe})")


def _check_tm(t, m, ell):
    if not (1 <= t < m):
        raise ParameterOutOfRange(f"need 1 <= t < m, got t={t}, m={m}")
    if m > ell:
        raise ParameterOutOfRange(f"m = {m} exceeds the available {ell} groups")


def build_code(plan: EvaluationPlan) -> LrcCode:
    curve = plan.curve
    F = curve.field
    places = [P for g in plan.groups for P in g]
    wvals = []
    for w in plan.ladder:
        vals = w.evaluations(places)
        if any(v is POLE for v in vals):
            raise PoleAtEvaluationPlace("ladder function has a pole at an evaluation place")
        wvals.append(vals)
    zvals = plan.z.evaluations(places)
    if any(v is POLE for v in zvals):
        raise PoleAtEvaluationPlace("z has a pole at an evaluation place")
    rows = []
    for j in range(plan.t):
        zj = [F.pow(v, j) for v in zvals]
        for wv in wvals:
            rows.append([F.mul(a, b) for a, b in zip(wv, zj)])
    rows.append([F.pow(v, plan.t) for v in zvals])
    k = plan.t * plan.r + 1
    if linalg.rank(F, rows) != k:
        raise RankDeficient(f"generator rank {linalg.rank(F, rows)} differs from {k}")
    groups, pos, z_group = [], 0, []
    for g in plan.groups:
        groups.append(list(range(pos, pos + len(g))))
        vals = {zvals[i] for i in range(pos, pos + len(g))}
        if len(vals) != 1:
            raise SelectionFailed("z is not constant on a group")
        z_group.append(vals.pop())
        pos += len(g)
    if len(set(z_group)) != len(z_group):
        raise SelectionFailed("z does not separate the groups")
    n = len(places)
    d = plan.d_designed if plan.d_designed is not None else (plan.m - plan.t) * (plan.r + plan.delta - 1)
    return LrcCode(
        field=F, generator=rows, groups=groups, r=plan.r, delta=plan.delta, t=plan.t, m=plan.m,
        d_designed=d, z_values=z_group, recipe=plan.recipe, params=dict(plan.params),
        places=places, curve=curve.describe(), optimal=plan.optimal,
        notes=dict(plan.notes, ell=plan.ell, usable_groups=plan.usable, n=n),
    )


def _fiber_divisor(places, e):
    return Divisor.from_places([P for P in places for _ in range(e)])


# -- elliptic recipes ------------------------------------------------------
def _square_field(q):
    pp = prime_power(q)
    if pp is None:
        raise ParameterOutOfRange(f"{q} is not a prime power")
    rq = isqrt_exact(q)
    if rq is None:
        raise ParameterOutOfRange(f"q = {q} is not a square")
    return pp, rq


def eff_involution_plan(q: int, h: int, t: int, m: int, variant: str = "r3", modulus=None):
    """Elliptic curve with N = q + 2 sqrt(q) (+1 in characteristic 2),
    G = T_H <[-1]> with |H| = h; (2h-2, 3)-LRC or, reversed, (2, 2h-1)-LRC."""
    (p, e), rq = _square_field(q)
    N = q + 2 * rq + (1 if p == 2 else 0)
    if h < 3 or N % h or N % 2 == 0:
        raise ParameterOutOfRange(f"need h >= 3 dividing N = {N} (N odd)")
    ell = (N - h) // (2 * h) - 1
    _check_tm(t, m, ell)
    F = field_of_order(q, modulus)
    E = None
    if p == 2:
        E = ecurve.WeierstrassCurve(F, 0, 0, 1, 0, 0)
        if E.count() != N:
            E = None
    if E is None:
        E = ecurve.find_curve_with_count(F, N)
        if E is None:
            raise SelectionFailed(f"no curve with {N} points found")
    struct = ecurve.group_structure(E)
    H = ecurve.subgroup_of_order(E, struct, h)
    G = ecurve.group_TH_A(E, H, [ecurve.negation(E)])
    orbs = ecurve.orbits(E, G)
    full = [o for o in orbs if len(o) == 2 * h]
    if len(full) != ell + 1:
        raise SelectionFailed(f"{len(full)} full orbits, expected {ell + 1}")
    r, delta = 2 * h - 2, 3
    defining_orbit, groups = list(full[0].places), [o.places for o in full[1:]]
    P1 = defining_orbit[0]
    coset = [E.add(P1, Q) for Q in H]
    pairs = [pr for pr in combinations(defining_orbit, 2) if pr[0] in coset and pr[1] in coset]
    pairs += [pr for pr in combinations(defining_orbit, 2) if pr not in pairs]
    chosen = None
    for pr in pairs:
        head = [P for P in defining_orbit if P not in pr]
        cand = head + list(pr)
        ok, _ = ecurve.condition_tail_check(E, cand, groups, r, delta)
        if ok:
            chosen = cand
            break
    if chosen is None:
        raise SelectionFailed("no tail pair satisfies the subset-sum condition")
    if variant == "r2":
        chosen = chosen[::-1]
        r, delta = 2, 2 * h - 1
    elif variant != "r3":
        raise ParameterOutOfRange(f"unknown variant {variant}")
    ladder, _ = ladder_functions(E, chosen, r)
    z = invariant_generator_z(E, orbs, Divisor.from_places(defining_orbit))
    return EvaluationPlan(
        curve=E, r=r, delta=delta, t=t, m=m, ladder=ladder, z=z, groups=groups[:m],
        recipe="eff-involution", params={"q": q, "h": h, "t": t, "m": m, "variant": variant},
        ell=ell, usable=len(groups), defining=chosen,
        notes={"curve_points": N, "group_order": len(G)},
    )


def eff_noninvolution_plan(q: int, t: int, m: int, variant: str = "r3", modulus=None):
    """y^2 + y = x^3 over q = 4^(2s+1), G = T_H <sigma> of order 9 with
    H = <(0, 1)> and sigma: (x, y) -> (w^2 x, y); (7, 3)-LRC or (2, 8)-LRC."""
    (p, e), rq = _square_field(q)
    if p != 2 or e % 4 != 2:
        raise ParameterOutOfRange("q must be 4^(2s+1)")
    ell = (q + 2 * rq - 8) // 9
    _check_tm(t, m, ell)
    F = field_of_order(q, modulus)
    E = ecurve.WeierstrassCurve(F, 0, 0, 1, 0, 0)
    N = E.count()
    if N != q + 2 * rq + 1:
        raise NotMaximal(f"{N} points, expected {q + 2 * rq + 1}")
    Q = (0, 1)
    H = sort_places([INF, Q, E.add(Q, Q)])
    if len(set(H)) != 3 or E.mul(3, Q) is not INF:
        raise SelectionFailed("(0, 1) does not have order 3")
    w = F.exp((q - 1) // 3)
    sigma = ecurve.fixing_o(E, w, description="(x, y) -> (w^2 x, y)")
    if sigma(Q) != Q:
        raise SelectionFailed("sigma does not fix Q")
    neg = ecurve.negation(E).permutation()
    A = ecurve.check_TH_A_subgroup(E, H, [sigma])
    if neg in A:
        raise InvolutionInGroup("[-1] lies in A")
    G = ecurve.group_TH_A(E, H, [sigma])
    orbs = ecurve.orbits(E, G)
    fiber = next(o for o in orbs if INF in o.places)
    r, delta = 7, 3
    head = [INF] + [P for P in fiber.places if P is not INF for _ in range(3)]
    defining = head + [INF, INF]
    full = [o.places for o in orbs if len(o) == len(G)]
    groups = [g for g in full if ecurve.condition_tail_check(E, defining, [g], r, delta)[0]]
    if len(groups) < ell:
        raise SelectionFailed(f"only {len(groups)} usable orbits, expected {ell}")
    if variant == "r2":
        defining = defining[::-1]
        r, delta = 2, 8
    elif variant != "r3":
        raise ParameterOutOfRange(f"unknown variant {variant}")
    ladder, _ = ladder_functions(E, defining, r)
    z = invariant_generator_z(E, orbs, _fiber_divisor(fiber.places, fiber.ramification))
    return EvaluationPlan(
        curve=E, r=r, delta=delta, t=t, m=m, ladder=ladder, z=z, groups=groups[:m],
        recipe="eff-noninvolution", params={"q": q, "t": t, "m": m, "variant": variant},
        ell=ell, usable=len(groups), defining=defining,
        notes={"curve_points": N, "group_order": len(G)},
    )


# -- genus two -----------------------------------------------------------
def _genus2_generators(C, F, q):
    p, e = prime_power(q)
    if p == 5 and e % 2 == 0 and (e // 2) % 2 == 1:
        two = F.from_int(2)
        k = next(k for k in range(q - 1) if F.exp(2 * k) == two)
        alpha = F.exp(k)
        return "i", [scurve.Genus2Automorphism(C, alpha, F.neg(1), F.neg(1), 0)]
    for qbar_e in range(1, e + 1):
        if e % (2 * qbar_e):
            continue
        s = e // (2 * qbar_e)
        qbar = p ** qbar_e
        if s % 2 == 1 and qbar % 24 in (5, 15, 21, 23) and qbar != 5:
            alpha = F.exp((q - 1) // 8)
            half = F.inv(2)
            a2, a3 = F.pow(alpha, 2), F.pow(alpha, 3)
            s1 = scurve.Genus2Automorphism(C, 0, F.neg(1), F.neg(1), 0)
            s2 = scurve.Genus2Automorphism(
                C, F.mul(half, F.sub(a2, 1)), F.mul(half, F.sub(alpha, a3)),
                F.mul(half, F.sub(a3, alpha)), F.mul(half, F.neg(F.add(a2, 1))))
            return "ii", [s1, s2]
    raise ParameterOutOfRange(f"q = {q} is not covered by the genus-2 family")


def genus2_plan(q: int, t: int, m: int, modulus=None):
    """y^2 = x^5 + x with |G| = 6 and the hyperelliptic involution outside G;
    (4, 3)-LRC on full G-orbits free of conjugate pairs."""
    pp = prime_power(q)
    if pp is None:
        raise ParameterOutOfRange(f"{q} is not a prime power")
    F = field_of_order(q, modulus)
    C = scurve.SuperellipticCurve(F, 2, [0, 1, 0, 0, 0, 1])
    rq = isqrt_exact(q)
    if rq is None or C.count() != q + 4 * rq + 1:
        raise NotMaximal("y^2 = x^5 + x is not maximal here")
    case, gens = _genus2_generators(C, F, q)
    G = scurve.genus2_group(C, gens)
    N = C.count()
    if len(G) != 6:
        raise SelectionFailed(f"group of order {len(G)}, expected 6")
    if scurve.hyperelliptic_involution_permutation(C) in G:
        raise InvolutionInGroup("the hyperelliptic involution lies in G")
    if N % 6 == 0:
        raise SelectionFailed("6 divides the number of places")
    orbs = scurve.group_orbits(C, G)
    fiber = next(o for o in orbs if INF in o.places)
    e = fiber.ramification
    head = [P for P in fiber.places if P is not INF for _ in range(e)]
    defining = head + [INF] * e
    ell = 2 * (-(-(N - 4 * 6 - 2) // 12)) - 1
    groups = [o.places for o in orbs
              if len(o) == 6 and INF not in o.places and scurve.is_reduced(C, o.places)]
    _check_tm(t, m, len(groups))
    r, delta = 4, 3
    ladder, steps = ladder_functions(C, defining, r)
    z = invariant_generator_z(C, orbs, _fiber_divisor(fiber.places, e))
    return EvaluationPlan(
        curve=C, r=r, delta=delta, t=t, m=m, ladder=ladder, z=z, groups=groups[:m],
        recipe="genus2-43", params={"q": q, "t": t, "m": m}, ell=ell, usable=len(groups),
        defining=defining, notes={"case": case, "curve_points": N, "ladder_steps": steps},
    )


# -- superelliptic families --------------------------------------------------
def _monomial_plan(C, groups, r, delta, t, m, w_var, recipe, params, ell, usable, d=None,
                   optimal=True, notes=None):
    """Plan whose ladder is 1, v, ..., v^(r-1) and whose invariant is the other
    coordinate (w_var = 'x': w_i = x^i, z = y; w_var = 'y': w_i = y^i, z = x)."""
    if w_var == "x":
        ladder = [CurveFunction.monomial(C, i, 0) for i in range(r)]
        z = CurveFunction.monomial(C, 0, 1)
    else:
        ladder = [CurveFunction.monomial(C, 0, i) for i in range(r)]
        z = CurveFunction.monomial(C, 1, 0)
    return EvaluationPlan(curve=C, r=r, delta=delta, t=t, m=m, ladder=ladder, z=z,
                          groups=groups[:m], recipe=recipe, params=params, ell=ell,
                          usable=usable, d_designed=d, optimal=optimal, notes=notes or {})


def hyperell_plan(g: int, q: int, g_prime: int, t: int, m: int, modulus=None):
    """y^2 = x^(2g+1) + x (or + 1) with x-translation (or x-scaling) orbits of size
    2g+1; (g+1-g', g+1+g')-LRC."""
    if g < 1 or not (-(g - 1) <= g_prime <= g - 1):
        raise ParameterOutOfRange("need -(g-1) <= g' <= g-1")
    pp = prime_power(q)
    if pp is None:
        raise ParameterOutOfRange(f"{q} is not a prime power")
    p, e = pp
    n0 = 2 * g + 1
    case = s = None
    qb = prime_power(n0)
    if qb is not None and qb[0] == p and e % (2 * qb[1]) == 0:
        case, s = "i", e // (2 * qb[1])
    else:
        for k in range(1, e + 1):
            if e % (2 * k) == 0 and p % 2 == 1 and (p ** k + 1) % n0 == 0:
                case, s = "ii", e // (2 * k)
                break
    if case is None:
        raise ParameterOutOfRange(f"q = {q} is outside both cases for genus {g}")
    F = field_of_order(q, modulus)
    f = [0] * (n0 + 1)
    f[n0] = 1
    f[1 if case == "i" else 0] = 1
    gamma = 1 if s % 2 == 1 else quadratic_nonresidue(F)
    C = scurve.SuperellipticCurve(F, 2, f, gamma)
    rq = isqrt_exact(q)
    kind, N = scurve.maximality_check(C)
    if kind != "maximal":
        raise NotMaximal(f"curve has {N} places")
    if case == "i":
        kernel = [a for a in F.elements() if F.add(F.pow(a, n0), a) == 0]
        orbs = scurve.x_translation_orbits(C, kernel)
    else:
        orbs, _ = scurve.x_scaling_orbits(C, nth_roots_of_unity(F, n0))
    groups = [o.places for o in orbs if len(o) == n0]
    ell = (q + 2 * g * rq) // n0
    _check_tm(t, m, len(groups))
    r, delta = g + 1 - g_prime, g + 1 + g_prime
    d = (m - t) * n0 + min(0, 2 * g_prime + 1)
    return _monomial_plan(C, groups, r, delta, t, m, "x", "hyperelliptic",
                          {"g": g, "q": q, "g_prime": g_prime, "t": t, "m": m}, ell, len(groups),
                          d=d, optimal=g_prime >= 0, notes={"case": case, "curve_points": N})


def _additive_trace_poly(qbar, s, c):
    """Coefficients of Tr_{qbar^s / qbar^c}(x) = sum_i x^(qbar^(c i))."""
    f = [0] * (qbar ** (s - c) + 1)
    for i in range(s // c):
        f[qbar ** (c * i)] = 1
    return f


def normtrace_plan(qbar: int, s: int, b: int, c: int, b_prime: int, t: int, m: int, modulus=None):
    """y^M = Tr_{qbar^s/qbar^c}(x) with M = (qbar^s - 1)/(b (qbar - 1)), N = qbar^(s-c)."""
    pp = prime_power(qbar)
    if pp is None or s < 2:
        raise ParameterOutOfRange("need a prime power qbar and s >= 2")
    full = (qbar ** s - 1) // (qbar - 1)
    if b < 1 or full % b or b == full:
        raise ParameterOutOfRange(f"b must be a proper divisor of {full}")
    if c < 1 or c >= s or s % c:
        raise ParameterOutOfRange(f"c must be a proper divisor of s = {s}")
    q = qbar ** s
    M = full // b
    N = qbar ** (s - c)
    if M == N:
        raise OrientationDegenerate("M = N")
    F = field_of_order(q, modulus)
    C = scurve.SuperellipticCurve(F, M, _additive_trace_poly(qbar, s, c))
    g0 = gcd(b, (qbar ** c - 1) // (qbar - 1))
    expected = g0 * q * (q - 1) // (b * qbar ** c) + q // qbar ** c + 1
    if C.count() != expected:
        raise NotMaximal(f"{C.count()} places, expected {expected}")
    params = {"qbar": qbar, "s": s, "b": b, "c": c, "b_prime": b_prime, "t": t, "m": m}
    if M < N:
        lim = (N - 1) // M
        if not (0 <= b_prime <= lim - 1):
            raise ParameterOutOfRange(f"need 0 <= b' <= {lim - 1}")
        kernel = [a for a in F.elements() if _trace(F, a, qbar, s, c) == 0]
        orbs = scurve.x_translation_orbits(C, kernel)
        r = lim + 1 - b_prime
        delta = N + 1 - r
        ell = (g0 * (q - 1) * q // (b * qbar ** c) + q // qbar ** c) // N
        w_var = "x"
        size = N
    else:
        lim = (M - 1) // N
        if not (0 <= b_prime <= lim - 1):
            raise ParameterOutOfRange(f"need 0 <= b' <= {lim - 1}")
        orbs, _ = scurve.y_scaling_orbits(C, nth_roots_of_unity(F, M))
        r = lim + 1 - b_prime
        delta = M + 1 - r
        ell = g0 * (q - 1) * q // (b * qbar ** c) // M
        w_var = "y"
        size = M
    groups = [o.places for o in orbs if len(o) == size]
    _check_tm(t, m, len(groups))
    return _monomial_plan(C, groups, r, delta, t, m, w_var, "normtrace", params, ell,
                          len(groups), notes={"M": M, "N": N, "curve_points": C.count()})


def _trace(F, a, qbar, s, c):
    acc = 0
    for i in range(s // c):
        acc = F.add(acc, F.pow(a, qbar ** (c * i)))
    return acc


def hermitian_plan(qbar: int, s: int, b: int, b_prime: int, t: int, m: int, modulus=None):
    """Curves y^((qbar+1)/b) = x^qbar + x over q = qbar^(2s)."""
    pp = prime_power(qbar)
    if pp is None:
        raise ParameterOutOfRange(f"{qbar} is not a prime power")
    if b < 1 or (qbar + 1) % b or b == qbar + 1:
        raise ParameterOutOfRange(f"b must be a proper divisor of {qbar + 1}")
    q = qbar ** (2 * s)
    rq = qbar ** s
    F = field_of_order(q, modulus)
    M = (qbar + 1) // b
    f = [0] * (qbar + 1)
    f[qbar] = 1
    f[1] = 1
    gamma = 1
    params = {"qbar": qbar, "s": s, "b": b, "b_prime": b_prime, "t": t, "m": m}
    if b > 1:
        if not (0 <= b_prime <= b - 2):
            raise ParameterOutOfRange(f"need 0 <= b' <= {b - 2}")
        if s % 2 == 0:
            if qbar % 2 == 1 and b == (qbar + 1) // 2:
                gamma = quadratic_nonresidue(F)
            else:
                raise EvenSWithoutTwist("even s needs odd qbar and b = (qbar+1)/2")
        C = scurve.SuperellipticCurve(F, M, f, gamma)
        expected = q + (M - 1) * (qbar - 1) * rq + 1
        if C.count() != expected:
            raise NotMaximal(f"{C.count()} places, expected {expected}")
        kernel = [a for a in F.elements() if F.add(F.pow(a, qbar), a) == 0]
        orbs = scurve.x_translation_orbits(C, kernel)
        groups = [o.places for o in orbs if len(o) == qbar]
        r = b - b_prime
        delta = qbar + 1 - r
        ell = (q + (M - 1) * (qbar - 1) * rq) // qbar
        w_var = "x"
    else:
        if b_prime != 0:
            raise ParameterOutOfRange("b = 1 admits only b' = 0")
        if s % 2 == 0:
            if qbar != 2:
                raise EvenSWithoutTwist("even s with b = 1 needs qbar = 2")
            images = {F.add(F.mul(a, a), a) for a in F.elements()}
            eta = next(a for a in F.elements() if a not in images)
            f = [eta, 1, 1]
        C = scurve.SuperellipticCurve(F, M, f, gamma)
        expected = q + qbar * (qbar - 1) * rq + 1
        if C.count() != expected:
            raise NotMaximal(f"{C.count()} places, expected {expected}")
        orbs, _ = scurve.y_scaling_orbits(C, nth_roots_of_unity(F, M))
        groups = [o.places for o in orbs if len(o) == M]
        r, delta = 2, qbar
        ell = (q + qbar * (qbar - 1) * rq) // (qbar + 1)
        w_var = "y"
    _check_tm(t, m, len(groups))
    return _monomial_plan(C, groups, r, delta, t, m, w_var, "hermitian", params, ell,
                          len(groups), notes={"M": M, "curve_points": C.count()})


RECIPES = {
    "eff-involution": eff_involution_plan,
    "eff-noninvolution": eff_noninvolution_plan,
    "genus2-43": genus2_plan,
    "hyperelliptic": hyperell_plan,
    "normtrace": normtrace_plan,
    "hermitian": hermitian_plan,
}


def recipe_eff_involution(*args, **kw) -> LrcCode:
    return build_code(eff_involution_plan(*args, **kw))


def recipe_eff_noninvolution(*args, **kw) -> LrcCode:
    return build_code(eff_noninvolution_plan(*args, **kw))


def recipe_genus2_43(*args, **kw) -> LrcCode:
    return build_code(genus2_plan(*args, **kw))


def recipe_hyperell_genus_g(*args, **kw) -> LrcCode:
    return build_code(hyperell_plan(*args, **kw))


def recipe_normtrace(*args, **kw) -> LrcCode:
    return build_code(normtrace_plan(*args, **kw))


def recipe_hermitian(*args, **kw) -> LrcCode:
    return build_code(hermitian_plan(*args, **kw))
