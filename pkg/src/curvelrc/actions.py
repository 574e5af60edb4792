"""Rational places and finite group actions on them.

A rational place is either ``INF`` (the unique place at infinity of the
curve models used here) or an affine pair ``(x, y)`` of field ints.
Groups are handled as permutation tuples on an indexed list of places.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceeded


class _Infinity:
    __slots__ = ()

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_infinity, ())


def _infinity():
    return INF


INF = _Infinity()


def is_inf(P) -> bool:
    return P is INF


def place_key(P):
    return (0, 0, 0) if P is INF else (1, P[0], P[1])


def sort_places(places):
    return sorted(places, key=place_key)


@dataclass(frozen=True)
class Orbit:
    places: tuple
    ramification: int

    def __len__(self):
        return len(self.places)

    def __iter__(self):
        return iter(self.places)


def permutation(fn, places, index=None):
    if index is None:
        index = {P: i for i, P in enumerate(places)}
    return tuple(index[fn(P)] for P in places)


def compose(a, b):
    """The permutation 'apply b, then a'."""
    return tuple(a[i] for i in b)


def close_group(generators, n: int, cap: int = 100000):
    """All elements of the group generated by the permutations, identity first."""
    ident = tuple(range(n))
    seen = {ident: None}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in generators:
                h = compose(s, g)
                if h not in seen:
                    seen[h] = None
                    order.append(h)
                    nxt.append(h)
                    if len(order) > cap:
                        raise CapExceeded(f"group exceeds {cap} elements")
        frontier = nxt
    return order


def orbits_of(perms, places):
    """Orbits of a permutation group, sorted by their minimal place."""
    n = len(places)
    seen = [False] * n
    out = []
    for i in sorted(range(n), key=lambda k: place_key(places[k])):
        if seen[i]:
            continue
        members = {g[i] for g in perms}
        for j in members:
            seen[j] = True
        orb = tuple(sort_places(places[j] for j in members))
        out.append(Orbit(orb, len(perms) // len(orb)))
    return out
