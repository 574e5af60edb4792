"""Functions on plane curve models, local expansions and Riemann-Roch spaces.

A curve model exposes ``field``, ``equation`` (a dict {(a, b): coeff} for
F(x, y) = 0), ``pole_x``/``pole_y`` (pole orders of x and y at the single place
at infinity), ``ydeg``, ``genus`` and ``places()``.  Functions are quotients of
bivariate polynomials in normal form (y-degree below ``ydeg``).

L(D) is computed as (1/h) * {g in L(B * P_inf) : vanishing conditions}, where h is
a product of factors (x - a) chosen so that h * L(D) has no affine poles.  The
monomials x^a y^b with a*pole_x + b*pole_y <= B form a basis of L(B * P_inf).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from . import linalg, poly
from .actions import INF, place_key, sort_places
from .errors import (
    DimensionMismatch,
    LadderGapMismatch,
    NoInvariantFound,
    OrderTooLarge,
    UnsupportedPlace,
)


class _Pole:
    def __repr__(self):
        return "POLE"


POLE = _Pole()


# -- bivariate polynomials as dicts ----------------------------------------
def pdict_add(F, a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = F.add(out.get(k, 0), v)
    return {k: v for k, v in out.items() if v}


def pdict_scale(F, a, c):
    return {k: F.mul(v, c) for k, v in a.items() if F.mul(v, c)}


def pdict_mul(F, a, b):
    out = {}
    for (i, j), u in a.items():
        for (k, l), v in b.items():
            key = (i + k, j + l)
            out[key] = F.add(out.get(key, 0), F.mul(u, v))
    return {k: v for k, v in out.items() if v}


def pdict_from_xpoly(p):
    return {(i, 0): c for i, c in enumerate(p) if c}


def pdict_eval(F, a, x, y):
    acc = 0
    for (i, j), c in a.items():
        acc = F.add(acc, F.mul(c, F.mul(F.pow(x, i), F.pow(y, j))))
    return acc


def reduce_poly(curve, a):
    """Normal form modulo the curve equation (y-degree below curve.ydeg)."""
    F = curve.field
    d = curve.ydeg
    lead = curve.equation[(0, d)]
    inv = F.inv(lead)
    # y^d = -(1/lead) * (rest of the equation)
    rule = {k: F.neg(F.mul(v, inv)) for k, v in curve.equation.items() if k != (0, d)}
    a = dict(a)
    while True:
        high = [k for k in a if k[1] >= d and a[k]]
        if not high:
            return {k: v for k, v in a.items() if v}
        k = max(high, key=lambda t: t[1])
        c = a.pop(k)
        i, j = k
        for (ri, rj), rv in rule.items():
            key = (i + ri, j - d + rj)
            a[key] = F.add(a.get(key, 0), F.mul(c, rv))


def pole_weight(curve, a) -> int:
    """Pole order at infinity of a normal-form polynomial (max monomial weight)."""
    if not a:
        raise ValueError("zero polynomial")
    return max(i * curve.pole_x + j * curve.pole_y for (i, j) in a)


def leading_coefficient(curve, a):
    k = max(a, key=lambda m: m[0] * curve.pole_x + m[1] * curve.pole_y)
    return a[k]


# -- truncated power series ---------------------------------------------
def s_mul(F, a, b, prec):
    out = [0] * prec
    for i, x in enumerate(a[:prec]):
        if x:
            for j in range(min(len(b), prec - i)):
                y = b[j]
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _powers(F, s, n, prec):
    out = [[1] + [0] * (prec - 1)]
    for _ in range(n):
        out.append(s_mul(F, out[-1], s, prec))
    return out


def _eval_series(F, pdict, X, Y, sx, sy, prec):
    """Laurent series of pdict(x, y) with x = t^-sx X, y = t^-sy Y.
    Returns (shift, coeffs) meaning sum coeffs[k] t^(shift + k)."""
    W = max(i * sx + j * sy for (i, j) in pdict)
    amax = max(i for i, _ in pdict)
    bmax = max(j for _, j in pdict)
    Xp = _powers(F, X, amax, prec)
    Yp = _powers(F, Y, bmax, prec)
    out = [0] * prec
    for (i, j), c in pdict.items():
        off = W - (i * sx + j * sy)
        if off >= prec:
            continue
        term = s_mul(F, Xp[i], Yp[j], prec - off)
        for k, v in enumerate(term):
            if v:
                out[off + k] = F.add(out[off + k], F.mul(c, v))
    return -W, out


class _Parametrization:
    """x = t^-sx X(t), y = t^-sy Y(t) around a rational place."""

    def __init__(self, curve, P):
        self.curve = curve
        self.P = P
        F = curve.field
        eq = curve.equation
        self.X = None
        if P is INF:
            px, py = curve.pole_x, curve.pole_y
            j = next(j for j in range(1, px + 1) if (j * py - 1) % px == 0)
            i = (j * py - 1) // px
            self.i, self.j = i, j
            cy = eq[(0, px)]
            cx = eq[(py, 0)]
            mu = F.neg(F.div(cy, cx))
            self.sx, self.sy = px, py
            self.X = [F.pow(mu, j)]
            self.Y = [F.pow(mu, i)]
            X0, Y0 = self.X[0], self.Y[0]
            top = {k: v for k, v in eq.items() if k[0] * px + k[1] * py == px * py}
            j11 = F.sum(F.mul(F.mul(v, F.from_int(a)), F.mul(F.pow(X0, a - 1), F.pow(Y0, b)))
                        for (a, b), v in top.items() if a)
            j12 = F.sum(F.mul(F.mul(v, F.from_int(b)), F.mul(F.pow(X0, a), F.pow(Y0, b - 1)))
                        for (a, b), v in top.items() if b)
            j21 = F.mul(F.from_int(i), F.pow(X0, i - 1)) if i else 0
            j22 = F.neg(F.mul(F.from_int(j), F.pow(Y0, j - 1)))
            det = F.sub(F.mul(j11, j22), F.mul(j12, j21))
            if det == 0:
                raise UnsupportedPlace("degenerate expansion at infinity")
            self.J = (j11, j12, j21, j22, F.inv(det))
            self.E1 = {k: v for k, v in eq.items()}
            self.W = px * py
        else:
            x0, y0 = P
            if not curve.contains(P):
                raise UnsupportedPlace(f"{P} is not on the curve")
            fy = F.sum(F.mul(F.mul(v, F.from_int(b)), F.mul(F.pow(x0, a), F.pow(y0, b - 1)))
                       for (a, b), v in eq.items() if b)
            fx = F.sum(F.mul(F.mul(v, F.from_int(a)), F.mul(F.pow(x0, a - 1), F.pow(y0, b)))
                       for (a, b), v in eq.items() if a)
            self.sx = self.sy = 0
            if fy:
                self.mode = "x"  # t = x - x0
                self.X = [x0, 1]
                self.Y = [y0]
                self.D = F.inv(fy)
            elif fx:
                self.mode = "y"  # t = y - y0
                self.X = [x0]
                self.Y = [y0, 1]
                self.D = F.inv(fx)
            else:
                raise UnsupportedPlace(f"{P} is a singular point")
        self.prec = 1

    def series(self, prec):
        """X, Y truncated to `prec` coefficients."""
        F = self.curve.field
        while self.prec < prec:
            n = self.prec
            if self.P is INF:
                X = self.X + [0] * (n + 1 - len(self.X))
                Y = self.Y + [0] * (n + 1 - len(self.Y))
                r1 = self._e1_coeff(X, Y, n)
                r2 = F.sub(_eval_series(F, {(self.i, 0): 1}, X, Y, 0, 0, n + 1)[1][n],
                           _eval_series(F, {(0, self.j): 1}, X, Y, 0, 0, n + 1)[1][n])
                j11, j12, j21, j22, dinv = self.J
                # solve J (dx, dy) = -(r1, r2)
                dx = F.mul(dinv, F.sub(F.mul(j22, F.neg(r1)), F.mul(j12, F.neg(r2))))
                dy = F.mul(dinv, F.sub(F.mul(j11, F.neg(r2)), F.mul(j21, F.neg(r1))))
                self.X = X[:n] + [dx]
                self.Y = Y[:n] + [dy]
            else:
                X = self.X + [0] * (n + 1 - len(self.X))
                Y = self.Y + [0] * (n + 1 - len(self.Y))
                r = _eval_series(F, self.curve.equation, X, Y, 0, 0, n + 1)[1][n]
                c = F.neg(F.mul(r, self.D))
                if self.mode == "x":
                    Y = Y[:n] + [c]
                else:
                    X = X[:n] + [c]
                self.X, self.Y = X, Y
            self.prec = n + 1
        pad = lambda s: (s + [0] * prec)[:prec]
        return pad(self.X), pad(self.Y)

    def _e1_coeff(self, X, Y, n):
        F = self.curve.field
        sh, cs = _eval_series(F, self.E1, X, Y, self.sx, self.sy, n + 1)
        # _eval_series normalises by the top weight W, which equals px*py here
        return cs[n]


def _param(curve, P):
    cache = curve.__dict__.setdefault("_param_cache", {})
    if P not in cache:
        cache[P] = _Parametrization(curve, P)
    return cache[P]


def poly_series(curve, pdict, P, prec):
    """(shift, coeffs) of the Laurent expansion of a polynomial at P."""
    par = _param(curve, P)
    X, Y = par.series(prec)
    return _eval_series(curve.field, pdict, X, Y, par.sx, par.sy, prec)


def poly_valuation(curve, pdict, P) -> int:
    pdict = reduce_poly(curve, pdict)
    if not pdict:
        raise ValueError("valuation of zero")
    if P is INF:
        return -pole_weight(curve, pdict)
    bound = pole_weight(curve, pdict) + 1
    prec = 4
    while True:
        p = min(prec, bound)
        _, cs = poly_series(curve, pdict, P, p)
        for k, c in enumerate(cs):
            if c:
                return k
        if p == bound:
            raise AssertionError("nonzero function with too many zeros")
        prec *= 2


class CurveFunction:
    """num(x, y) / den(x, y) on a curve; equality is equality as functions."""

    def __init__(self, curve, num, den=None):
        self.curve = curve
        self.num = reduce_poly(curve, num)
        self.den = reduce_poly(curve, den if den is not None else {(0, 0): 1})
        if not self.den:
            raise ZeroDivisionError("zero denominator")

    @classmethod
    def constant(cls, curve, c):
        return cls(curve, {(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, curve, a, b, c=1):
        return cls(curve, {(a, b): c})

    def is_zero(self):
        return not self.num

    def __add__(self, other):
        F = self.curve.field
        num = pdict_add(F, pdict_mul(F, self.num, other.den), pdict_mul(F, other.num, self.den))
        return CurveFunction(self.curve, num, pdict_mul(F, self.den, other.den))

    def __sub__(self, other):
        return self + other.scale(self.curve.field.neg(1))

    def __mul__(self, other):
        F = self.curve.field
        return CurveFunction(self.curve, pdict_mul(F, self.num, other.num),
                             pdict_mul(F, self.den, other.den))

    def scale(self, c):
        return CurveFunction(self.curve, pdict_scale(self.curve.field, self.num, c), self.den)

    def valuation(self, P) -> int:
        if not self.num:
            raise ValueError("valuation of the zero function")
        return poly_valuation(self.curve, self.num, P) - poly_valuation(self.curve, self.den, P)

    def evaluate(self, P):
        """Value at a rational place, or POLE."""
        F = self.curve.field
        if not self.num:
            return 0
        if P is INF:
            wn, wd = pole_weight(self.curve, self.num), pole_weight(self.curve, self.den)
            if wn > wd:
                return POLE
            if wn < wd:
                return 0
            return F.div(leading_coefficient(self.curve, self.num),
                         leading_coefficient(self.curve, self.den))
        x, y = P
        d = pdict_eval(F, self.den, x, y)
        if d:
            return F.div(pdict_eval(F, self.num, x, y), d)
        vd = poly_valuation(self.curve, self.den, P)
        _, cn = poly_series(self.curve, self.num, P, vd + 1)
        _, cd = poly_series(self.curve, self.den, P, vd + 1)
        if any(cn[:vd]):
            return POLE
        return F.div(cn[vd], cd[vd])

    def local_expansion(self, P, order: int, max_order: int = 8):
        """(valuation, first `order` coefficients) of the Laurent expansion at P
        in the standard uniformizer (x - a or y - b affine, x^i/y^j at infinity)."""
        if order > max_order:
            raise OrderTooLarge(f"order {order} exceeds cap {max_order}")
        F = self.curve.field
        v = self.valuation(P)
        vd = poly_valuation(self.curve, self.den, P) if P is not INF else None
        prec = order + (pole_weight(self.curve, self.num) + pole_weight(self.curve, self.den)) + 2
        sn, cn = poly_series(self.curve, self.num, P, prec)
        sd, cd = poly_series(self.curve, self.den, P, prec)
        kn = next(k for k, c in enumerate(cn) if c)
        kd = next(k for k, c in enumerate(cd) if c)
        a = cn[kn:kn + order]
        b = cd[kd:kd + order]
        a += [0] * (order - len(a))
        b += [0] * (order - len(b))
        # a / b as power series
        inv0 = F.inv(b[0])
        out = []
        for n in range(order):
            acc = a[n]
            for k in range(1, n + 1):
                acc = F.sub(acc, F.mul(b[k], out[n - k]))
            out.append(F.mul(acc, inv0))
        return v, out

    def evaluations(self, places):
        return [self.evaluate(P) for P in places]

    def __repr__(self):
        return f"CurveFunction(num={self.num}, den={self.den})"


def functions_equal(f, g, places=None) -> bool:
    """Exact equality via cross-multiplication in normal form."""
    F = f.curve.field
    diff = pdict_add(F, pdict_mul(F, f.num, g.den),
                     pdict_scale(F, pdict_mul(F, g.num, f.den), F.neg(1)))
    return not reduce_poly(f.curve, diff)


# -- divisors -----------------------------------------------------------
class Divisor:
    def __init__(self, mult=None):
        self.mult = {P: n for P, n in (mult or {}).items() if n}

    @classmethod
    def from_places(cls, places):
        return cls(Counter(places))

    def degree(self) -> int:
        return sum(self.mult.values())

    def support(self):
        return sort_places(self.mult)

    def __getitem__(self, P):
        return self.mult.get(P, 0)

    def __add__(self, other):
        m = Counter(self.mult)
        m.update(other.mult)
        return Divisor(m)

    def __sub__(self, other):
        m = Counter(self.mult)
        m.subtract(other.mult)
        return Divisor(m)

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.mult == other.mult

    def is_effective(self) -> bool:
        return all(n >= 0 for n in self.mult.values())

    def __repr__(self):
        return " + ".join(f"{n}*{P}" for P, n in sorted(self.mult.items(), key=lambda t: place_key(t[0])))


def _places_over(curve, alpha):
    return [P for P in curve.places() if P is not INF and P[0] == alpha]


def auxiliary_denominator(curve, D):
    """(h as x-polynomial, list of affine places where h vanishes)."""
    F = curve.field
    need = {}
    for P, n in D.mult.items():
        if P is not INF and n > 0:
            need.setdefault(P[0], []).append((P, n))
    h = [1]
    zeros = []
    for alpha in sorted(need):
        over = _places_over(curve, alpha)
        lin = {(1, 0): 1, (0, 0): F.neg(alpha)}
        ram = {Q: poly_valuation(curve, lin, Q) for Q in over}
        if sum(ram.values()) != curve.pole_x:
            raise UnsupportedPlace(f"x = {alpha} has places of higher degree above it")
        e = max(-(-n // ram[P]) for P, n in need[alpha])
        for _ in range(e):
            h = poly.mul(F, h, [F.neg(alpha), 1])
        zeros.extend(over)
    return h, sort_places(zeros)


def _monomials(curve, bound):
    out = []
    if bound < 0:
        return out
    for b in range(curve.ydeg):
        a = 0
        while a * curve.pole_x + b * curve.pole_y <= bound:
            out.append((a, b))
            a += 1
    return sorted(out, key=lambda m: (m[0] * curve.pole_x + m[1] * curve.pole_y))


def _constraint_rows(curve, D, hdict, zeros, monomials):
    """Linear conditions on coefficient vectors g (over `monomials`) for
    g / h to lie in L(D)."""
    F = curve.field
    rows = []
    bound = D[INF] + pole_weight(curve, hdict)
    for idx, (a, b) in enumerate(monomials):
        if a * curve.pole_x + b * curve.pole_y > bound:
            r = [0] * len(monomials)
            r[idx] = 1
            rows.append(r)
    places = set(zeros) | {P for P, n in D.mult.items() if P is not INF and n < 0}
    for P in sort_places(places):
        k = poly_valuation(curve, hdict, P) - D[P]
        if k <= 0:
            continue
        cols = [poly_series(curve, {m: 1}, P, k)[1] for m in monomials]
        for i in range(k):
            rows.append([c[i] for c in cols])
    return rows


@dataclass
class FunctionBasis:
    curve: object
    divisor: Divisor
    denominator: dict
    monomials: list
    vectors: list

    @property
    def functions(self):
        return [self.function(v) for v in self.vectors]

    def function(self, vec):
        num = {m: c for m, c in zip(self.monomials, vec) if c}
        return CurveFunction(self.curve, num, self.denominator)

    def __len__(self):
        return len(self.vectors)

    def evaluation_matrix(self, places):
        return [[f.evaluate(P) for P in places] for f in self.functions]


def rr_basis(curve, D: Divisor, check_dimension: bool = True) -> FunctionBasis:
    """A basis of L(D) = {f : (f) >= -D} together with its common denominator."""
    F = curve.field
    h, zeros = auxiliary_denominator(curve, D)
    hdict = pdict_from_xpoly(h)
    bound = D[INF] + curve.pole_x * (len(h) - 1)
    monomials = _monomials(curve, bound)
    if not monomials:
        return FunctionBasis(curve, D, hdict, [], [])
    rows = _constraint_rows(curve, D, hdict, zeros, monomials)
    vecs = linalg.kernel(F, rows, len(monomials)) if rows else [
        [1 if i == j else 0 for i in range(len(monomials))] for j in range(len(monomials))]
    vecs = linalg.row_basis(F, vecs) if vecs else []
    g = curve.genus
    if check_dimension and D.degree() >= 2 * g - 1 and len(vecs) != D.degree() + 1 - g:
        raise DimensionMismatch(f"dim L(D) = {len(vecs)}, expected {D.degree() + 1 - g}")
    return FunctionBasis(curve, D, hdict, monomials, vecs)


def in_space(f: CurveFunction, D: Divisor) -> bool:
    """Whether f lies in L(D), by exact valuations at every possible pole."""
    curve = f.curve
    if f.is_zero():
        return True
    cand = set(D.support()) | {INF}
    den = f.den
    if pole_weight(curve, den) > 0:
        rational_zeros = {}
        for P in curve.places():
            if P is INF:
                continue
            if pdict_eval(curve.field, den, *P) == 0:
                rational_zeros[P] = poly_valuation(curve, den, P)
        if sum(rational_zeros.values()) != pole_weight(curve, den):
            raise UnsupportedPlace("denominator vanishes at non-rational places")
        cand |= set(rational_zeros)
    return all(f.valuation(P) >= -D[P] for P in cand)


# -- ladder and invariant -------------------------------------------------
def _flag_spaces(curve, defining, K):
    F = curve.field
    DK = Divisor.from_places(defining[:K])
    h, zeros = auxiliary_denominator(curve, DK)
    hdict = pdict_from_xpoly(h)
    monomials = _monomials(curve, DK[INF] + curve.pole_x * (len(h) - 1))
    spaces = []
    for i in range(1, K + 1):
        Di = Divisor.from_places(defining[:i])
        rows = _constraint_rows(curve, Di, hdict, zeros, monomials)
        vecs = linalg.kernel(F, rows, len(monomials)) if rows else [
            [1 if a == b else 0 for a in range(len(monomials))] for b in range(len(monomials))]
        spaces.append(linalg.row_basis(F, vecs) if vecs else [])
    return hdict, monomials, spaces


def ladder_functions(curve, defining, r: int):
    """[1, w_1, ..., w_{r-1}] with each w taken from a nonempty step
    L(P_1+..+P_{I+1}) minus L(P_1+..+P_I), I = 1..r+g-2.

    Returns (functions, steps) where steps[i] is the index I that produced w_i."""
    F = curve.field
    K = r + curve.genus - 1
    if len(defining) < K:
        raise ValueError("defining list too short")
    hdict, monomials, spaces = _flag_spaces(curve, defining, K)
    if len(spaces[0]) != 1:
        raise LadderGapMismatch("L(P_1) is not the constants")
    if len(spaces[-1]) != r:
        raise LadderGapMismatch(f"dim L(P_1+...+P_{K}) = {len(spaces[-1])}, expected {r}")
    one = {(0, 0): 1}
    funcs = [CurveFunction(curve, one)]
    steps = [0]
    for I in range(1, K):
        lower, upper = spaces[I - 1], spaces[I]
        if len(upper) == len(lower):
            continue
        base = linalg.rank(F, lower)
        for v in upper:
            if linalg.rank(F, lower + [v]) > base:
                funcs.append(CurveFunction(curve, {m: c for m, c in zip(monomials, v) if c}, hdict))
                steps.append(I)
                break
    if len(funcs) != r:
        raise LadderGapMismatch(f"found {len(funcs) - 1} ladder functions, expected {r - 1}")
    return funcs, steps


def flag_level(f: CurveFunction, defining) -> int:
    """Smallest i with f in L(P_1 + ... + P_i) (0 for constants)."""
    for i in range(0, len(defining) + 1):
        if in_space(f, Divisor.from_places(defining[:i])):
            return i
    return -1


def invariant_generator_z(curve, orbits, fiber: Divisor):
    """A nonconstant z in L(fiber) that is constant on every given orbit.

    `orbits` must cover the rational places outside the support of `fiber`;
    the invariant subspace is required to be exactly {constants, z}."""
    F = curve.field
    B = rr_basis(curve, fiber)
    funcs = B.functions
    rows = []
    support = set(fiber.support())
    for orb in orbits:
        pts = [P for P in orb if P not in support]
        vals = [[f.evaluate(P) for f in funcs] for P in pts]
        for a, b in zip(vals, vals[1:]):
            rows.append([F.sub(x, y) for x, y in zip(a, b)])
    ker = linalg.kernel(F, rows, len(funcs)) if rows else []
    ker = linalg.row_basis(F, ker) if ker else []
    if len(ker) != 2:
        raise NoInvariantFound(f"invariant subspace has dimension {len(ker)}, expected 2")
    # coordinates of the constant function 1 in the basis
    sample = [P for P in curve.places() if P not in support][: len(funcs) + curve.genus + 2]
    A = [[f.evaluate(P) for f in funcs] for P in sample]
    one = linalg.solve(F, A, [1] * len(sample))
    for v in ker:
        if linalg.rank(F, [v, one]) == 2:
            num = {}
            for c, vec in zip(v, B.vectors):
                for m, x in zip(B.monomials, vec):
                    if x and c:
                        num[m] = F.add(num.get(m, 0), F.mul(c, x))
            return CurveFunction(curve, {m: c for m, c in num.items() if c}, B.denominator)
    raise NoInvariantFound("only constants are invariant")
