from math import gcd

import pytest

from curvelrc import errors, scurve
from curvelrc.actions import INF
from curvelrc.gf import make_field, field_of_order, nth_roots_of_unity, quadratic_nonresidue
from curvelrc.recipes import _additive_trace_poly
from curvelrc.scurve import Genus2Automorphism, SuperellipticCurve

F25 = make_field(5, 2, (2, 4, 1))
QUINTIC = [0, 1, 0, 0, 0, 1]  # x^5 + x


def brute_count(C):
    F = C.field
    return 1 + sum(1 for x in range(F.q) for y in range(F.q) if C.contains((x, y)))


def test_genus_and_model():
    C = SuperellipticCurve(F25, 2, QUINTIC)
    assert C.genus == 2 and (C.pole_x, C.pole_y) == (2, 5)
    assert INF in C.places()


def test_invalid_curves():
    F = make_field(5, 1)
    with pytest.raises(errors.InvalidCurve):
        SuperellipticCurve(F, 2, [0, 0, 1])          # gcd(M, deg f) = 2
    with pytest.raises(errors.InvalidCurve):
        SuperellipticCurve(F, 5, [0, 1, 1])          # characteristic divides M
    with pytest.raises(errors.InvalidCurve):
        SuperellipticCurve(F, 2, [0, 0, 1, 1])       # x^2 (x + 1) is not squarefree


def test_hermitian_small_count():
    C = SuperellipticCurve(make_field(2, 2), 3, [0, 1, 1])
    assert C.count() == brute_count(C) == 4 + 2 * 1 * 2 + 1


def test_quintic_count_is_hasse_weil_maximal():
    C = SuperellipticCurve(F25, 2, QUINTIC)
    assert C.count() == brute_count(C) == 25 + 4 * 5 + 1
    assert scurve.maximality_check(C) == ("maximal", 46)


def test_quintic_lift_minimal_and_twist_maximal():
    F = make_field(5, 4)
    C = SuperellipticCurve(F, 2, QUINTIC)
    assert scurve.maximality_check(C) == ("minimal", 625 + 1 - 4 * 25)
    gamma = quadratic_nonresidue(F)
    T = SuperellipticCurve(F, 2, QUINTIC, gamma=gamma)
    assert scurve.maximality_check(T) == ("maximal", 625 + 1 + 4 * 25)
    # affine counts of a curve and its quadratic twist sum to 2q
    assert (C.count() - 1) + (T.count() - 1) == 2 * 625


def test_maximality_needs_square_field():
    C = SuperellipticCurve(make_field(5, 1), 2, QUINTIC)
    with pytest.raises(errors.NonSquareField) as exc:
        scurve.maximality_check(C)
    assert exc.value.count == C.count()


def _normtrace_cases():
    for qbar, s in [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3), (2, 6), (3, 4)]:
        q = qbar ** s
        if q > 81:
            continue
        total = (q - 1) // (qbar - 1)
        for b in range(1, total):
            if total % b:
                continue
            for c in range(1, s):
                if s % c:
                    continue
                M, N = total // b, qbar ** (s - c)
                if M >= 2 and gcd(M, N) == 1:
                    yield qbar, s, b, c


@pytest.mark.parametrize("qbar,s,b,c", list(_normtrace_cases()))
def test_normtrace_counts(qbar, s, b, c):
    q = qbar ** s
    F = field_of_order(q)
    M = (q - 1) // (b * (qbar - 1))
    C = SuperellipticCurve(F, M, _additive_trace_poly(qbar, s, c))
    expected = gcd(b, (qbar ** c - 1) // (qbar - 1)) * q * (q - 1) // (b * qbar ** c) + q // qbar ** c + 1
    assert C.count() == expected
    if q <= 16:
        assert brute_count(C) == expected


@pytest.mark.parametrize("qbar,s,b", [(2, 1, 1), (3, 1, 1), (3, 1, 2), (4, 1, 1), (2, 3, 1)])
def test_hermitian_counts(qbar, s, b):
    q = qbar ** (2 * s)
    F = field_of_order(q)
    M = (qbar + 1) // b
    f = [0] * (qbar + 1)
    f[1] = f[qbar] = 1
    C = SuperellipticCurve(F, M, f)
    rq = qbar ** s
    assert C.count() == q + (M - 1) * (qbar - 1) * rq + 1
    assert scurve.maximality_check(C)[0] == "maximal"


def test_conjugation_and_reduced():
    C = SuperellipticCurve(F25, 2, QUINTIC)
    for P in C.places():
        assert scurve.hyperelliptic_conjugate(C, scurve.hyperelliptic_conjugate(C, P)) == P
    W = next(P for P in C.places() if P is not INF and P[1] == 0)
    assert scurve.hyperelliptic_conjugate(C, W) == W
    P = next(P for P in C.places() if P is not INF and P[1] != 0)
    Pbar = scurve.hyperelliptic_conjugate(C, P)
    assert not scurve.is_reduced(C, [P, Pbar])
    assert scurve.is_reduced(C, [P, P])
    with pytest.raises(errors.NotHyperelliptic):
        scurve.hyperelliptic_conjugate(SuperellipticCurve(make_field(2, 2), 3, [0, 1, 1]), P)


def test_x_translation_orbits():
    C = SuperellipticCurve(F25, 2, QUINTIC)
    kernel = [a for a in range(25) if F25.add(F25.pow(a, 5), a) == 0]
    assert len(kernel) == 5
    orbs = scurve.x_translation_orbits(C, kernel)
    assert len(orbs) == (25 + 4 * 5) // 5 and all(len(o) == 5 for o in orbs)
    for o in orbs:
        assert len({P[1] for P in o}) == 1
        assert len({P[0] for P in o}) == 5
    with pytest.raises(errors.KernelNotClosed):
        scurve.x_translation_orbits(C, [0, 1])


def test_y_scaling_orbits():
    F9 = make_field(3, 2)
    C = SuperellipticCurve(F9, 4, [0, 1, 0, 1])
    orbs, excluded = scurve.y_scaling_orbits(C, nth_roots_of_unity(F9, 4))
    assert len(excluded) == 3
    assert len(orbs) == 6 and all(len(o) == 4 for o in orbs)
    assert all(len({P[0] for P in o}) == 1 for o in orbs)
    with pytest.raises(errors.WrongRootCount):
        scurve.y_scaling_orbits(C, nth_roots_of_unity(F9, 2))


def test_genus2_matrix_maps():
    C = SuperellipticCurve(F25, 2, QUINTIC)
    ident = Genus2Automorphism(C, 1, 0, 0, 1)
    assert all(ident(P) == P for P in C.places())
    m1 = F25.neg(1)
    iota = Genus2Automorphism(C, m1, 0, 0, m1)
    assert iota.permutation() == scurve.hyperelliptic_involution_permutation(C)
    with pytest.raises(errors.ImageOffCurve):
        Genus2Automorphism(C, 1, 1, 0, 1)


@pytest.mark.parametrize("k", [3, 15])
def test_genus2_sigma(k):
    C = SuperellipticCurve(F25, 2, QUINTIC)
    alpha = F25.exp(k)
    assert F25.mul(alpha, alpha) == 2
    m1 = F25.neg(1)
    sigma = Genus2Automorphism(C, alpha, m1, m1, 0)
    G = scurve.genus2_group(C, [sigma])
    assert len(G) == 6
    assert scurve.hyperelliptic_involution_permutation(C) not in G
    power = sigma
    for _ in range(5):
        power = power @ sigma
    assert all(power(P) == P for P in C.places())
    orbs = scurve.group_orbits(C, G)
    assert sum(len(o) for o in orbs) == 46
    assert sorted(len(o) for o in orbs).count(6) == 7
