"""Independent checks of code parameters: rank, locality, minimum distance
(exhaustive, or sandwiched between the designed bound and a certificate
codeword), Singleton-like defect and the large-distance length bound."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field as dc_field
from math import ceil, comb

import numpy as np

from . import linalg, poly
from .errors import BudgetExceeded, CertificateFailed

DEFAULT_BUDGET = 2 ** 28
_BLOCK_ROWS = 2 ** 16


def singleton_defect(n, k, d, r, delta) -> int:
    """n - k + 1 - (ceil(k/r) - 1)(delta - 1) - d; zero means optimal."""
    return n - k + 1 - (ceil(k / r) - 1) * (delta - 1) - d


def length_bound_rhs(r, delta, q) -> float:
    return ((r + delta - 1) * (r + 1) + delta * (delta - 1)) / r * q


def appendix_bound_check(n, k, d, r, delta, q):
    """(applies, holds) for d <= ((r+delta-1)(r+1) + delta(delta-1))/r * q, which is
    claimed for optimal codes with d/n <= 2/3 and vacuous otherwise."""
    applies = 3 * d <= 2 * n and singleton_defect(n, k, d, r, delta) == 0
    return applies, (not applies) or d * r <= ((r + delta - 1) * (r + 1) + delta * (delta - 1)) * q


def _combos(add, mul, offset, rows, q):
    """Yield blocks of offset + all F_q-combinations of `rows`."""
    if not rows:
        yield offset[None, :]
        return
    if q ** len(rows) <= _BLOCK_ROWS:
        acc = offset[None, :]
        for row in rows:
            mult = mul[:, row]
            acc = add[acc[:, None, :], mult[None, :, :]].reshape(-1, offset.shape[0])
        yield acc
        return
    mult = mul[:, rows[0]]
    for c in range(q):
        yield from _combos(add, mul, add[offset, mult[c]], rows[1:], q)


def min_distance_exhaustive(F, generator, budget: int = DEFAULT_BUDGET) -> int:
    """Exact minimum distance of the row space by enumerating every message with
    leading nonzero coefficient 1.  Raises BudgetExceeded if q^k > budget."""
    rows = linalg.row_basis(F, generator)
    k = len(rows)
    if k == 0:
        raise ValueError("zero code")
    if F.q ** k > budget:
        raise BudgetExceeded(f"q^k = {F.q}^{k} exceeds budget {budget}")
    add, mul = F.tables()
    G = np.array(rows, dtype=np.int64)
    best = G.shape[1]
    for lead in range(k):
        for block in _combos(add, mul, G[lead].astype(add.dtype), list(G[lead + 1:]), F.q):
            w = int(np.count_nonzero(block, axis=1).min())
            best = min(best, w)
    return best


def weight(v) -> int:
    return sum(1 for x in v if x)


def local_check(F, code, gi, budget=2 ** 22):
    """Rank and distance of the code punctured to group gi, by exhaustive search
    and by the all-r x r-minors test on a row basis."""
    cols = code.groups[gi]
    block = [[row[j] for j in cols] for row in code.generator]
    basis = linalg.row_basis(F, block)
    rank = len(basis)
    out = {"group": gi, "size": len(cols), "rank": rank}
    try:
        out["distance_exhaustive"] = min_distance_exhaustive(F, basis, budget)
    except BudgetExceeded:
        out["distance_exhaustive"] = None
    ok, bad = linalg.all_rxr_submatrices_invertible(F, basis)
    out["mds"] = ok
    out["mds_witness"] = list(bad) if bad else None
    out["distance_mds"] = len(cols) - rank + 1 if ok else None
    return out


def check_locality(code, budget=2 ** 22):
    """Per-group results and whether every group has rank <= r and distance >= delta."""
    F = code.field
    res = [local_check(F, code, i, budget) for i in range(len(code.groups))]
    ok = True
    for g in res:
        d = g["distance_exhaustive"] if g["distance_exhaustive"] is not None else g["distance_mds"]
        g["distance"] = d
        if (g["distance_exhaustive"] is not None and g["distance_mds"] is not None
                and g["distance_exhaustive"] != g["distance_mds"]):
            raise AssertionError("exhaustive and minor-based local distances disagree")
        if g["rank"] > code.r or d is None or d < code.delta:
            ok = False
    return ok, res


def certificate_message(code):
    """Message coefficients of prod_{i<t} (z - z(Q_i)) in the row layout
    [w_i z^j for j < t, i < r] + [z^t]."""
    F = code.field
    phi = [1]
    for c in code.z_values[: code.t]:
        phi = poly.mul(F, phi, [F.neg(c), 1])
    msg = [0] * code.k
    for j in range(code.t):
        msg[j * code.r] = phi[j] if j < len(phi) else 0
    msg[-1] = phi[code.t]
    return msg


def designed_weight_certificate(code):
    """(message, codeword, weight) of the certificate codeword.  Its weight equals
    (m - t)(r + delta - 1) when z separates the groups."""
    F = code.field
    msg = certificate_message(code)
    cw = linalg.vecmat(F, msg, code.generator)
    w = weight(cw)
    if w != (code.m - code.t) * max(len(g) for g in code.groups):
        raise CertificateFailed(f"certificate weight {w} differs from the designed distance")
    return msg, cw, w


def sample_min_weight(code, samples=1000, seed=0):
    """Smallest weight among random nonzero codewords (diagnostic upper bound)."""
    import random
    rng = random.Random(seed)
    F = code.field
    best = code.n
    for _ in range(samples):
        msg = [rng.randrange(F.q) for _ in range(code.k)]
        if any(msg):
            best = min(best, weight(linalg.vecmat(F, msg, code.generator)))
    return best


@dataclass
class VerificationReport:
    n: int
    k: int
    q: int
    r: int
    delta: int
    rank: int
    dimension_ok: bool
    locality_ok: bool
    groups: list
    distance_mode: str
    distance: int | None
    distance_lower: int | None
    distance_upper: int | None
    designed_distance: int
    singleton_defect: int | None
    length_bound_applies: bool
    length_bound_ok: bool
    notes: list = dc_field(default_factory=list)

    @property
    def verdict(self) -> str:
        if not (self.dimension_ok and self.locality_ok and self.length_bound_ok):
            return "failed"
        if self.distance_mode == "failed":
            return "failed"
        if self.distance_mode == "exact":
            return "verified"
        if self.distance_mode == "certified":
            return "certified"
        return "abstained"

    def to_dict(self):
        d = asdict(self)
        d["verdict"] = self.verdict
        return d

    def summary(self) -> str:
        dist = {"exact": f"d = {self.distance} (exhaustive)",
                "certified": f"d = {self.distance} (certified exact)",
                "abstained": "distance abstained",
                "failed": "distance check failed"}[self.distance_mode]
        return (f"[{self.n},{self.k}]_{self.q} (r={self.r}, delta={self.delta}): rank {self.rank}, "
                f"locality {'ok' if self.locality_ok else 'FAILED'}, {dist}, "
                f"defect {self.singleton_defect}, verdict {self.verdict}")


def verify_code(code, distance: str = "auto", budget: int = DEFAULT_BUDGET, local_budget=2 ** 22):
    F = code.field
    notes = []
    rank = linalg.rank(F, code.generator)
    dimension_ok = rank == code.k
    locality_ok, groups = check_locality(code, local_budget)
    mode, dval, lower, upper = "abstained", None, None, None
    if distance in ("auto", "exhaustive"):
        try:
            dval = min_distance_exhaustive(F, code.generator, budget)
            mode, lower, upper = "exact", dval, dval
        except BudgetExceeded:
            notes.append("exhaustive search abstained: budget exceeded")
    if mode != "exact" and distance in ("auto", "certify"):
        try:
            _, _, w = designed_weight_certificate(code)
            lower, upper = code.d_designed, w
            if lower == upper:
                mode, dval = "certified", w
            else:
                notes.append(f"certificate weight {w} above designed bound {lower}")
        except CertificateFailed as e:
            notes.append(str(e))
            mode = "failed"
    if mode == "exact":
        sing = code.n - code.k + 1 - (ceil(code.k / code.r) - 1) * (code.delta - 1)
        if not (code.d_designed <= dval <= sing):
            notes.append("exact distance outside [designed, Singleton-like bound]")
            mode = "failed"
    defect = singleton_defect(code.n, code.k, dval, code.r, code.delta) if dval is not None else None
    applies, holds = appendix_bound_check(code.n, code.k, dval if dval is not None else code.d_designed,
                                          code.r, code.delta, code.q)
    return VerificationReport(
        n=code.n, k=code.k, q=code.q, r=code.r, delta=code.delta, rank=rank,
        dimension_ok=dimension_ok, locality_ok=locality_ok, groups=groups,
        distance_mode=mode, distance=dval, distance_lower=lower, distance_upper=upper,
        designed_distance=code.d_designed, singleton_defect=defect,
        length_bound_applies=applies, length_bound_ok=holds, notes=notes)
