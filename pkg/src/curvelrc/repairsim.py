"""Encoding, local repair of erased symbols within one group, and seeded
repair campaigns."""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from . import linalg
from .errors import Inconsistent, LengthMismatch, Unrecoverable


def encode(code, message):
    if len(message) != code.k:
        raise LengthMismatch(f"message length {len(message)} != k = {code.k}")
    return linalg.vecmat(code.field, list(message), code.generator)


def local_repair(code, word, group: int, erased):
    """Fill the erased positions of `group` (absolute column indices) using only
    the surviving symbols of that group.  Returns {position: value}."""
    F = code.field
    cols = code.groups[group]
    erased = set(erased)
    if not erased <= set(cols):
        raise ValueError("erased positions outside the group")
    basis = linalg.row_basis(F, [[row[j] for j in cols] for row in code.generator])
    known = [i for i, j in enumerate(cols) if j not in erased]
    unknown = [i for i, j in enumerate(cols) if j in erased]
    A = [[b[i] for b in basis] for i in known]  # rows: known positions, cols: basis vectors
    if linalg.rank(F, A) < len(basis):
        raise Unrecoverable("surviving symbols do not determine the local codeword")
    try:
        x = linalg.solve(F, A, [word[cols[i]] for i in known])
    except Inconsistent as e:
        raise Unrecoverable("surviving symbols are not a local codeword") from e
    return {cols[i]: F.sum(F.mul(c, b[i]) for c, b in zip(x, basis)) for i in unknown}


@dataclass
class RepairScenario:
    erasures_per_group: int
    trials: int
    seed: int
    attempts: int = 0
    successes: int = 0
    symbols_read: int = 0
    failures: list = dc_field(default_factory=list)

    @property
    def rate(self):
        """Fraction of repairs that succeeded; None for an empty campaign."""
        return self.successes / self.attempts if self.attempts else None

    @property
    def average_reads(self):
        return self.symbols_read / self.attempts if self.attempts else None

    def to_dict(self):
        return {"erasures_per_group": self.erasures_per_group, "trials": self.trials,
                "seed": self.seed, "attempts": self.attempts, "successes": self.successes,
                "rate": self.rate, "average_reads": self.average_reads,
                "failures": self.failures[:20]}


def _attempt(code, cw, gi, erased, sc):
    sc.attempts += 1
    damaged = list(cw)
    for j in erased:
        damaged[j] = None
    try:
        filled = local_repair(code, damaged, gi, erased)
    except Unrecoverable:
        sc.failures.append((gi, tuple(erased)))
        return
    sc.symbols_read += len(code.groups[gi]) - len(erased)
    if all(filled[j] == cw[j] for j in erased):
        sc.successes += 1
    else:
        sc.failures.append((gi, tuple(erased)))


def run_campaign(code, erasures_per_group: int, trials: int, seed: int = 0, force=False):
    """Random codewords with random erasure patterns in every group.  Beyond
    delta - 1 erasures the run is refused unless force=True."""
    if erasures_per_group > code.delta - 1 and not force:
        raise ValueError(f"more than delta - 1 = {code.delta - 1} erasures per group")
    rng = random.Random(seed)
    sc = RepairScenario(erasures_per_group, trials, seed)
    for _ in range(trials):
        msg = [rng.randrange(code.q) for _ in range(code.k)]
        cw = encode(code, msg)
        for gi, cols in enumerate(code.groups):
            erased = rng.sample(cols, min(erasures_per_group, len(cols)))
            _attempt(code, cw, gi, erased, sc)
    return sc


def exhaustive_patterns(code, erasures_per_group: int, seed: int = 0):
    """Every erasure pattern of the given size in every group, on one random codeword."""
    rng = random.Random(seed)
    sc = RepairScenario(erasures_per_group, 1, seed)
    cw = encode(code, [rng.randrange(code.q) for _ in range(code.k)])
    for gi, cols in enumerate(code.groups):
        for erased in combinations(cols, erasures_per_group):
            _attempt(code, cw, gi, erased, sc)
    return sc
