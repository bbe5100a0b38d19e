"""Short-sum bound formulas, the averaging parameter choices, and the
inequality chain that turns a collision distribution plus a complete moment
into a bound on one short sum.

All bound formulas are reported with implied constant 1 ("shape values");
measured constants live in scan results and the recorded baselines, never
asserted against the literature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chars import (
    Character,
    build_modulus,
    legendre_value_array,
    window_sum,
)
from .congruence import CollisionInstance, collision_distribution
from .errors import DegenerateParams, UnknownVariant
from .moments import moment_sum
from .sieve import enumerate_rough

VARIANTS = ("polya_vinogradov", "grh", "mv_loglog", "burgess_classic",
            "ik_1r", "ik_12r", "refined_14r")

GRH_DELTA_DEFAULT = 0.05  # computable stand-in for the o(1) exponent


def iroot(n: int, k: int) -> int:
    """Largest integer x with x^k <= n (n >= 0)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 0
    x = int(round(n ** (1.0 / k)))
    while x > 0 and x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


@dataclass
class BurgessParams:
    """Averaging parameters (U, V, z) for one (N, q, r) configuration.

    source records whether the inductive-step formulas produced them
    ("derived"), or the feasibility fallback did ("fallback"), or the caller
    overrode them ("override").  in_refined_range marks N <= q^{1/2+1/4r},
    the window lengths the refined bound is stated for; longer windows are
    still computed, just labeled.
    """

    N: int
    q: int
    r: int
    U: int
    V: int
    z: float
    degenerate: bool
    in_refined_range: bool
    source: str = "derived"


def _z_from_u(U: int) -> float:
    return math.exp(math.sqrt(math.log(U))) if U >= 2 else 1.0


def derive_params(N: int, q: int, r: int) -> BurgessParams:
    """Exact floors U = floor(N / (16 r q^{1/2r})), V = floor(r q^{1/2r}).

    Floors are taken with pure integer arithmetic so boundary cases never
    depend on floating-point rounding.  U < 2 is flagged degenerate, not an
    error: sweeps over N must keep going.
    """
    if r < 2:
        raise ValueError("r must be >= 2 for the averaging parameters")
    if N < 1:
        raise ValueError("N must be >= 1")
    k = 2 * r
    V = iroot(r ** k * q, k)
    # (16 r U)^{2r} * q <= N^{2r}  <=>  U <= N / (16 r q^{1/2r})
    U = iroot(N ** k // q, k) // (16 * r)
    z = _z_from_u(U)
    return BurgessParams(
        N=N, q=q, r=r, U=U, V=V, z=z, degenerate=U < 2,
        in_refined_range=N ** (4 * r) <= q ** (2 * r + 1), source="derived")


def feasible_params(N: int, q: int, r: int) -> BurgessParams:
    """Largest U obeying U <= N and U*N <= q, with z and V as usual.

    At desk scale the derived U is below 2 for every in-range N (the 16r
    q^{1/2r} divisor only leaves room asymptotically), so verification runs
    use the largest U for which the collision-count hypotheses still hold.
    """
    if r < 2:
        raise ValueError("r must be >= 2 for the averaging parameters")
    if N < 1:
        raise ValueError("N must be >= 1")
    k = 2 * r
    V = iroot(r ** k * q, k)
    U = min(N, q // N) if N <= q else 0
    z = _z_from_u(U)
    return BurgessParams(
        N=N, q=q, r=r, U=U, V=V, z=z, degenerate=U < 2,
        in_refined_range=N ** (4 * r) <= q ** (2 * r + 1), source="fallback")


def resolve_params(N: int, q: int, r: int,
                   params: BurgessParams | None = None) -> BurgessParams:
    """Derived parameters when viable, feasibility fallback otherwise."""
    if params is not None:
        return params
    derived = derive_params(N, q, r)
    if not derived.degenerate:
        return derived
    return feasible_params(N, q, r)


@dataclass
class BoundReport:
    variant: str
    value: float
    N: int
    q: int
    r: int | None = None
    grh_delta: float | None = None


def bound_value(variant: str, N: int, q: int, r: int | None = None,
                grh_delta: float = GRH_DELTA_DEFAULT) -> BoundReport:
    """Shape value (implied constant 1) of one comparison bound."""
    if q < 3:
        raise ValueError("q must be >= 3")
    if variant not in VARIANTS:
        raise UnknownVariant(f"unknown bound variant {variant!r}")
    logq = math.log(q)
    if variant == "polya_vinogradov":
        return BoundReport(variant, math.sqrt(q) * logq, N, q)
    if variant == "mv_loglog":
        return BoundReport(variant, math.sqrt(q) * math.log(logq), N, q)
    if variant == "grh":
        return BoundReport(variant, math.sqrt(N) * q ** grh_delta, N, q,
                           grh_delta=grh_delta)
    if r is None:
        raise ValueError(f"variant {variant} needs r")
    min_r = 1 if variant == "burgess_classic" else 2
    if r < min_r:
        raise ValueError(f"variant {variant} needs r >= {min_r}")
    core = N ** (1 - 1 / r) * q ** ((r + 1) / (4 * r * r))
    power = {"burgess_classic": 1.0, "ik_1r": 1 / r,
             "ik_12r": 1 / (2 * r), "refined_14r": 1 / (4 * r)}[variant]
    return BoundReport(variant, core * logq ** power, N, q, r=r)


@dataclass
class HolderChainReport:
    """Every quantity in the one-step averaging inequality, plus the verdict.

    W is the doubly averaged absolute window sum; the chain asserts
    W^{2r} <= (sum I)^{2r-2} * (sum I^2) * (moment sum).  On the quadratic
    path all six quantities are integers and the comparison is exact.
    """

    params: BurgessParams
    char_index: int
    M: int
    N: int
    r: int
    rough_count: int
    W: int | float
    first_moment: int
    second_moment: int
    moment2r: int | float
    holder_lhs: int | float
    holder_rhs: int | float
    exact: bool
    passed: bool


def holder_chain(chi: Character, M: int, N: int, r: int,
                 params: BurgessParams | None = None,
                 A: float = 0.1) -> HolderChainReport:
    """Compute W by lambda-collection and verify the chain inequality."""
    q = chi.q
    params = resolve_params(N, q, r, params)
    if params.degenerate:
        raise DegenerateParams(
            f"U={params.U} leaves no room for averaging (N={N}, q={q}, r={r})")
    rough = enumerate_rough(params.z, params.U)
    inst = CollisionInstance(q=q, M=M, N=N, rough=rough, A=A)
    dist = collision_distribution(inst)
    table = chi.prefix
    exact = table.exact
    if exact:
        W: int | float = 0
        for lam, c in dist.counts.items():
            W += c * abs(window_sum(table, lam, params.V).exact_int)
    else:
        W = 0.0
        for lam, c in dist.counts.items():
            W += c * window_sum(table, lam, params.V).abs()
    m_report = moment_sum(chi, params.V, r, table=table)
    lhs = W ** (2 * r)
    rhs = dist.first_moment ** (2 * r - 2) * dist.second_moment * m_report.moment
    if exact:
        passed = lhs <= rhs
    else:
        passed = lhs <= rhs * (1 + 1e-9)
    return HolderChainReport(
        params=params, char_index=chi.index, M=M, N=N, r=r,
        rough_count=rough.count, W=W, first_moment=dist.first_moment,
        second_moment=dist.second_moment, moment2r=m_report.moment,
        holder_lhs=lhs, holder_rhs=rhs, exact=exact, passed=passed)


def holder_chain_direct_w(chi: Character, M: int, N: int,
                          params: BurgessParams) -> int | float:
    """W by the literal triple sum, term by term; the small-instance
    cross-check for the lambda-collected form."""
    rough = enumerate_rough(params.z, params.U)
    q = chi.q
    exact = chi.is_quadratic
    total: int | float = 0 if exact else 0.0
    for n in range(M + 1, M + N + 1):
        for u in rough:
            if exact:
                s = sum(int(chi.values_int[(n + u * v) % q])
                        for v in range(1, params.V + 1))
                total += abs(s)
            else:
                c = sum(complex(chi.values_complex[(n + u * v) % q])
                        for v in range(1, params.V + 1))
                total += abs(c)
    return total


@dataclass
class ScanResult:
    q: int
    N: int
    r: int
    char_index: int
    windows: int
    max_abs_sum: float
    argmax_M: int
    worst_ratio: dict[str, float]


def extremal_scan(q: int, char_index: int, N: int, M_values: list[int],
                  r: int = 2,
                  grh_delta: float = GRH_DELTA_DEFAULT) -> ScanResult:
    """Max |short sum| over the given window starts, with per-bound ratios.

    One prefix table serves every window, so each M costs O(1); all variant
    ratios are measured against the same scan data.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    mod = build_modulus(q)
    chi = mod.character(char_index)
    best = -1.0
    best_m = M_values[0] if M_values else 0
    for m in M_values:
        s = interval_sum_via_prefix(chi, m, N)
        if s > best:
            best, best_m = s, m
    ratios = {}
    for variant in VARIANTS:
        rv = None if variant in ("polya_vinogradov", "grh", "mv_loglog") else r
        b = bound_value(variant, N, q, r=rv, grh_delta=grh_delta).value
        ratios[variant] = best / b if b > 0 else math.inf
    return ScanResult(q=q, N=N, r=r, char_index=char_index,
                      windows=len(M_values), max_abs_sum=best,
                      argmax_M=best_m, worst_ratio=ratios)


def interval_sum_via_prefix(chi: Character, m: int, n: int) -> float:
    """|interval sum| through the prefix table (full periods drop out)."""
    q = chi.q
    rem = n % q
    if rem == 0:
        return 0.0
    return window_sum(chi.prefix, m, rem).abs()


def max_window_spread(q: int) -> float:
    """Exhaustive max |sum over (M, M+N]| for the quadratic character mod q,
    over every window start and length.

    For a real character the prefix sums are integers and the max over all
    windows is just max(S) - min(S), since any window sum is a difference of
    two prefix values once wraparound (S_q = 0) is folded in.
    """
    vals = legendre_value_array(q)
    body = np.concatenate([vals[1:], vals[:1]]).astype(np.int64)
    sums = np.concatenate([[0], np.cumsum(body)])
    return float(sums.max() - sums.min())


def pv_ratio_scan(limit: int) -> tuple[float, int, list[tuple[int, float]]]:
    """Pólya-Vinogradov sharpness over all odd primes q <= limit.

    Returns (worst ratio, argmax prime, per-prime ratios) where the ratio is
    the exhaustive max |short sum| divided by sqrt(q) log q.
    """
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p:: p] = False
    ratios = []
    worst, worst_q = -1.0, 0
    for q in np.flatnonzero(sieve).tolist():
        if q == 2:
            continue
        ratio = max_window_spread(q) / (math.sqrt(q) * math.log(q))
        ratios.append((q, ratio))
        if ratio > worst:
            worst, worst_q = ratio, q
    return worst, worst_q, ratios


def least_nonresidue(q: int) -> int:
    """Smallest n >= 2 that is a quadratic nonresidue mod the odd prime q."""
    if q < 3 or q % 2 == 0:
        raise ValueError("q must be an odd prime")
    e = (q - 1) // 2
    n = 2
    while pow(n, e, q) == 1:
        n += 1
    return n


def nonresidue_max_gap(q: int) -> tuple[int, int]:
    """Longest run of consecutive n in [1, q-1] avoiding nonresidues, and
    where it starts."""
    vals = legendre_value_array(q)
    positions = np.flatnonzero(vals[1:] == -1) + 1
    edges = np.concatenate([[0], positions, [q]])
    runs = np.diff(edges) - 1
    best = int(runs.argmax())
    return int(runs[best]), int(edges[best]) + 1


def best_r(N: int, q: int, r_values: list[int]) -> int:
    """argmin of the refined shape value over a caller-supplied r range."""
    return min(r_values,
               key=lambda r: bound_value("refined_14r", N, q, r=r).value)
