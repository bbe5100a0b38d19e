"""Collision distributions and congruence collision counts.

For a window (M, M+N] and a rough set of shift multipliers, I(lam) counts
the pairs (n, u) with n = lam * u (mod q).  Its first moment is N times the
rough-set size, and its second moment equals the number of solutions of
n1*u1 = n2*u2 (mod q) over the same ranges (swap u1 and u2 to see the two
counts agree pair for pair).  Everything is exact integer arithmetic; the
brute-force oracle is a literal quadruple loop.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import InstanceTooLarge
from .chars import is_prime
from .sieve import RoughSet

BRUTE_FORCE_GUARD = 10_000


@dataclass
class CollisionInstance:
    """One congruence-count configuration (q, window, rough multipliers).

    The collision-bound hypotheses (U <= N, U*N <= q, 1 < z <= U^A) are
    recorded, not enforced: out-of-hypothesis instances are computed but
    labeled, since probing sharpness outside that range is a primary use of
    the tool.
    """

    q: int
    M: int
    N: int
    rough: RoughSet
    A: float = 0.1
    hypotheses: dict[str, bool] = field(init=False)

    def __post_init__(self):
        if not is_prime(self.q):
            raise ValueError(f"q={self.q} is not prime")
        if self.N < 0:
            raise ValueError("N must be >= 0")
        z, U = self.rough.z, self.rough.U
        self.hypotheses = {
            "U_le_N": U <= self.N,
            "UN_le_q": U * self.N <= self.q,
            "z_in_range": 1 < z <= U ** self.A if U >= 1 else False,
        }

    @property
    def in_hypothesis(self) -> bool:
        return all(self.hypotheses.values())


@dataclass
class CollisionDistribution:
    instance: CollisionInstance
    counts: dict[int, int]
    first_moment: int
    second_moment: int


def collision_distribution(inst: CollisionInstance) -> CollisionDistribution:
    """Bucket lam = n * u^{-1} (mod q) over the window and the rough set."""
    q, M, N = inst.q, inst.M, inst.N
    counts: Counter[int] = Counter()
    if N > 0:
        residues = (M + 1 + np.arange(N, dtype=np.int64)) % q
        for u in inst.rough:
            if u % q == 0:
                raise ValueError(f"multiplier {u} not invertible mod {q}")
            ui = pow(u, -1, q)
            lam = (residues * ui) % q
            vals, cnt = np.unique(lam, return_counts=True)
            for v, c in zip(vals.tolist(), cnt.tolist()):
                counts[v] += c
    first = sum(counts.values())
    second = sum(c * c for c in counts.values())
    return CollisionDistribution(instance=inst, counts=dict(counts),
                                 first_moment=first, second_moment=second)


@dataclass
class CongruenceReport:
    instance: CollisionInstance
    I_value: int
    diagonal: int
    bound: float
    ratio: float
    in_hypothesis: bool


def collision_count_bound(N: int, rough_count: int, U: int, z: float) -> float:
    """Shape value N * |rough| * (1 + log U / (log z)^2), implied constant 1."""
    if U < 1 or z <= 1:
        return math.inf
    return N * rough_count * (1.0 + math.log(U) / math.log(z) ** 2)


def congruence_count(inst: CollisionInstance) -> CongruenceReport:
    """Exact collision count as the second moment of the bucket distribution."""
    dist = collision_distribution(inst)
    diagonal = inst.N * inst.rough.count
    bound = collision_count_bound(inst.N, inst.rough.count,
                                  inst.rough.U, inst.rough.z)
    ratio = dist.second_moment / bound if bound not in (0, math.inf) else 0.0
    return CongruenceReport(instance=inst, I_value=dist.second_moment,
                            diagonal=diagonal, bound=bound, ratio=ratio,
                            in_hypothesis=inst.in_hypothesis)


def brute_force_congruence_count(inst: CollisionInstance) -> int:
    """Literal quadruple loop counting n1*u1 = n2*u2 (mod q); the oracle."""
    q, M, N = inst.q, inst.M, inst.N
    members = [int(u) for u in inst.rough]
    if N * len(members) > BRUTE_FORCE_GUARD:
        raise InstanceTooLarge(
            f"N*|rough| = {N * len(members)} above guard {BRUTE_FORCE_GUARD}")
    total = 0
    for n1 in range(M + 1, M + N + 1):
        for u1 in members:
            a = (n1 * u1) % q
            for n2 in range(M + 1, M + N + 1):
                for u2 in members:
                    if (n2 * u2) % q == a:
                        total += 1
    return total


def pair_collision_count(u1: int, u2: int, M: int, N: int, q: int) -> int:
    """Count pairs (n1, n2) in (M, M+N]^2 with n1*u1 = n2*u2 (mod q)."""
    if u1 < 1 or u2 < 1:
        raise ValueError("multipliers must be >= 1")
    if u1 % q == 0 or u2 % q == 0:
        raise ValueError("multipliers must be invertible mod q")
    if N <= 0:
        return 0
    k = (u1 % q) * pow(u2 % q, -1, q) % q
    n1 = M + 1 + np.arange(N, dtype=np.int64)
    c = (n1 % q) * k % q
    # integers n2 = c (mod q) with M < n2 <= M+N
    cnt = (M + N - c) // q - (M - c) // q
    return int(cnt.sum())
