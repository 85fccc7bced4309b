"""Certified exponential-basis constructions on modified interval unions.

Each constructor validates its admissibility window exactly (rational
arithmetic wherever the data is rational), emits a ``FrameCertificate`` with
closed-form lower/upper Riesz constants, and records enough parameters to
rebuild the associated node matrix so certificates can be re-verified against
the singular-value oracle later.

The certified bounds all follow one mechanism: pairwise column coherence is a
sine ratio of the node difference, large-coherence pairs form clusters of at
most two columns whose spectra are ``L +/- |b|`` in closed form, and the small
cross-cluster coherence bounds the angle defect that squeezes those block
spectra around the true singular values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .clusters import ClusterPartition, default_threshold, partition_by_coherence
from .domains import (
    ExponentSystem,
    RationalIntervalUnion,
    as_fraction,
    fraction_from_json,
    fraction_to_json,
    lcd,
    normalize_to_integer_grid,
    residues_distinct,
)
from .errors import (
    ClusterSizeError,
    ComplementRangeError,
    DeltaWindowError,
    EmptyDeltaWindowError,
    EpsilonError,
    LatticeError,
    PreconditionError,
    ResidueClashError,
    SeparationError,
    ThresholdError,
    VerificationError,
)
from .spectral import is_singular
from .vandermonde import NodeMatrix, build_gamma, progression_matrix, sin_ratio

__all__ = [
    "BetaSolution",
    "FrameCertificate",
    "METHODS",
    "signed_sin_ratio",
    "solve_beta",
    "unit_gap_coherence_bounded",
    "shifted_sine_ratio_increasing",
    "delta_window_perturbed_union",
    "construct_perturbed_union",
    "threshold_u",
    "separation_margin",
    "certify_lattice_subset",
    "certify_lattice_subset_paired",
    "construct_interval_removal",
    "subset_basis",
    "residue_orthogonal_basis",
    "complement_certificate",
    "associated_matrix",
    "certificate_to_json",
    "certificate_from_json",
]

METHODS = (
    "perturbed_union",
    "lattice_subset",
    "lattice_subset_paired",
    "interval_removal",
    "residue_orthogonal",
    "complement",
    "oracle",
)


# --- scalar helpers -------------------------------------------------------

def signed_sin_ratio(m: int, t: float) -> float:
    """sin(pi m t) / sin(pi t), with the removable value m*(-1)^(k(m-1)) at t = k."""
    if m < 1:
        raise PreconditionError(f"m must be >= 1, got {m}")
    t = float(t)
    k = round(t)
    if t == k:
        return float(m) * (-1.0) ** (k * (m - 1))
    return math.sin(math.pi * m * t) / math.sin(math.pi * t)


@dataclass(frozen=True)
class BetaSolution:
    """Root of sin(pi M beta)/sin(pi beta) = M sin(1/M) on (0, 1/M)."""

    m: int
    beta: float
    residual: float
    iterations: int

    def __post_init__(self):
        if not 0.0 < self.beta < 1.0 / self.m:
            raise VerificationError(f"beta = {self.beta} escaped (0, 1/{self.m})")


def solve_beta(m: int) -> BetaSolution:
    """Bisect for the unique beta with sin(pi m beta)/sin(pi beta) = m sin(1/m).

    The ratio decreases from m to 0 across (0, 1/m), so the root is simple.
    Bisection runs until the residual drops below 1e-13 or the bracket is
    exhausted (at most 200 steps); the reported residual is evaluated at the
    returned double.
    """
    if m < 2:
        raise PreconditionError(f"need m >= 2 for a nondegenerate root, got {m}")
    target = m * math.sin(1.0 / m)
    lo, hi = 0.0, 1.0 / m
    beta = 0.5 * (lo + hi)
    iterations = 0
    for iterations in range(1, 201):
        beta = 0.5 * (lo + hi)
        r = signed_sin_ratio(m, beta) - target
        if abs(r) <= 1e-13 or hi - lo <= 1e-18:
            break
        if r > 0.0:
            lo = beta
        else:
            hi = beta
    residual = abs(signed_sin_ratio(m, beta) - target)
    return BetaSolution(m=m, beta=beta, residual=residual, iterations=iterations)


def unit_gap_coherence_bounded(m: int, t) -> bool:
    """Check |sin(pi m t) / sin(pi (1/m - t))| < m sin(1/m) for 0 < t <= 1/(2 m^2)."""
    tf = float(t)
    if not 0.0 < tf <= 1.0 / (2 * m * m):
        raise PreconditionError(f"t must lie in (0, 1/(2*{m}^2)], got {t}")
    lhs = abs(math.sin(math.pi * m * tf) / math.sin(math.pi * (1.0 / m - tf)))
    return lhs < m * math.sin(1.0 / m)


def shifted_sine_ratio_increasing(n: int, u: float, grid: int = 10_000) -> bool:
    """Probe that t -> sin(pi (t-u)/n) / sin(pi t/n) increases on (u, n/2)."""
    if n < 2:
        raise PreconditionError(f"n must be >= 2, got {n}")
    if not 0.0 < u < n / 2.0:
        raise PreconditionError(f"u must lie in (0, {n}/2), got {u}")
    ts = [u + (n / 2.0 - u) * (i + 0.5) / (grid + 1) for i in range(grid + 1)]
    vals = [math.sin(math.pi * (t - u) / n) / math.sin(math.pi * t / n) for t in ts]
    return all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))


# --- certificates ---------------------------------------------------------

Interval = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class FrameCertificate:
    """Certified Riesz bounds A <= ||sum a_j v_j||^2 / sum |a_j|^2 <= B.

    ``params`` keeps the construction inputs (exact rationals where the input
    was rational) so the associated node matrix can be rebuilt; ``flags``
    records conventions and vacuity warnings.
    """

    method: str
    A: float
    B: float
    system: ExponentSystem
    domain_intervals: tuple[Interval, ...]
    params: dict = field(default_factory=dict)
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        if self.method not in METHODS:
            raise PreconditionError(f"unknown method {self.method!r}")
        if not (math.isfinite(self.A) and math.isfinite(self.B)) or self.A > self.B:
            raise PreconditionError(f"invalid constants A={self.A}, B={self.B}")

    @property
    def vacuous(self) -> bool:
        return self.A <= 0.0

    def contains(self, sigma_squares: Sequence[float], scale: float = 1.0, tol: float = 0.0):
        """First (index, side) at which scaled constants miss a sigma^2, else None."""
        for j, s2 in enumerate(sigma_squares):
            if s2 < self.A * scale - tol:
                return j, "lower"
            if s2 > self.B * scale + tol:
                return j, "upper"
        return None


def _unit_intervals(endpoints: Sequence[int]) -> tuple[Interval, ...]:
    return tuple((Fraction(e), Fraction(e) + 1) for e in endpoints)


def _vacuity_flags(a: float) -> tuple[str, ...]:
    return ("vacuous_lower_bound",) if a <= 0.0 else ()


# --- perturbed unions -----------------------------------------------------

def _validated_perturbation(s: int, a: Sequence[int], eps: Sequence) -> tuple[list[int], list[Fraction]]:
    if s < 1:
        raise PreconditionError(f"s must be >= 1, got {s}")
    a = [int(v) for v in a]
    if len(a) != s:
        raise PreconditionError(f"need {s} endpoints, got {len(a)}")
    if a[0] != 0:
        raise PreconditionError("canonical position: first endpoint must be 0")
    if any(y <= x for x, y in zip(a, a[1:])):
        raise PreconditionError("endpoints must be strictly increasing")
    if not residues_distinct(a, s):
        raise ResidueClashError(f"endpoints {a} are not distinct mod {s}")
    try:
        eps = [as_fraction(e) for e in eps]
    except (TypeError, ValueError) as exc:
        raise EpsilonError(f"perturbations must be rational: {exc}") from exc
    if len(eps) != s:
        raise EpsilonError(f"need {s} perturbations, got {len(eps)}")
    if eps[0] != 0:
        raise EpsilonError("canonical form requires eps_0 = 0")
    if any(abs(e) >= Fraction(1, 2) for e in eps):
        raise EpsilonError("perturbations must satisfy |eps| < 1/2 (strict)")
    return a, eps


def delta_window_perturbed_union(s: int, a: Sequence[int], eps: Sequence):
    """Admissible |delta| window [lo, hi] plus (N, m, beta) for these inputs.

    lo = 1/(2 s^2 N^3 m) is exact (a Fraction); hi = 1/(s N^2 m) - beta/(N m)
    is a float through beta.  The window is never empty: 1/(2M^2) < 1/M - beta
    for every M = sN >= 2.
    """
    a, eps = _validated_perturbation(s, a, eps)
    n = lcd(eps)
    m_frac = n * (a[-1] + eps[-1])
    assert m_frac.denominator == 1
    m = int(m_frac)
    if m < 1:
        raise PreconditionError(f"grid position m = N*(a_last + eps_last) must be >= 1, got {m}")
    big_m = s * n
    if big_m < 2:
        raise PreconditionError("s*N >= 2 required (a single unperturbed interval needs no shift)")
    beta = solve_beta(big_m)
    lo = Fraction(1, 2 * s * s * n**3 * m)
    hi = 1.0 / (s * n * n * m) - beta.beta / (n * m)
    if float(lo) > hi:
        raise EmptyDeltaWindowError(f"window [{float(lo)}, {hi}] is empty")
    return lo, hi, n, m, beta


def construct_perturbed_union(s: int, a: Sequence[int], eps: Sequence, delta) -> FrameCertificate:
    """Certified basis on U_j [a_j + eps_j, a_j + eps_j + 1).

    The system has branch offsets ``j/s + j*delta``; the certificate's matrix
    check runs on the grid-dilated system (nodes of the N-fold dilation,
    per-step phase 1/(sN) + delta), whose oracle constants must fall in
    [N*A, N*B].
    """
    a, eps = _validated_perturbation(s, a, eps)
    lo, hi, n, m, beta = delta_window_perturbed_union(s, a, eps)
    delta = as_fraction(delta) if not isinstance(delta, float) else delta
    mag = abs(delta)
    in_window = (mag >= lo if isinstance(mag, Fraction) else mag >= float(lo)) and float(mag) <= hi
    if not in_window:
        raise DeltaWindowError(
            f"|delta| = {float(mag)} outside [{float(lo)}, {hi}] for (s={s}, N={n}, m={m})"
        )
    domain = RationalIntervalUnion([a_j + e_j for a_j, e_j in zip(a, eps)])
    big_m = s * n
    ratio = math.sin(math.pi / (2 * n * m)) / math.sin(math.pi / (2 * s * n * n * m))
    envelope = big_m * math.sin(1.0 / big_m)
    A = (1.0 - envelope) * (big_m - ratio) / n
    B = (1.0 + envelope) * (big_m + ratio) / n
    offsets = [Fraction(j, s) + j * delta if isinstance(delta, Fraction) else j / s + j * float(delta)
               for j in range(s)]
    system = ExponentSystem(offsets, domain_scale=1)
    return FrameCertificate(
        method="perturbed_union",
        A=A,
        B=B,
        system=system,
        domain_intervals=domain.intervals,
        params={
            "s": s,
            "a": list(a),
            "eps": list(eps),
            "delta": delta,
            "N": n,
            "m": m,
            "beta": beta.beta,
            "window": [lo, hi],
        },
        flags=("statement_offsets", "m_includes_grid_factor") + _vacuity_flags(A),
    )


# --- lattice subsets ------------------------------------------------------

def threshold_u(n: int, m: int) -> float:
    """Least real the integer shift u must exceed, by the parity of n."""
    v = m * math.sin(1.0 / m)
    if n % 2 == 0:
        return (n / math.pi) * math.acos(v)
    return (n / math.pi) * math.acos(v * math.cos(math.pi / (2 * n))) - 0.5


def _wrap_frac(x: Fraction) -> Fraction:
    r = x - (x.numerator // x.denominator)
    return min(r, 1 - r)


def separation_margin(d: int, n: int, m: int) -> Fraction:
    """Exact wrap-metric margin |d/n|_T - |d m / n|_T for a node difference d."""
    return _wrap_frac(Fraction(d, n)) - _wrap_frac(Fraction(d * m, n))


def _parity_cos(n: int, u: int) -> float:
    if n % 2 == 0:
        return abs(math.cos(math.pi * u / n))
    return abs(math.cos(math.pi / (2 * n) + math.pi * u / n)) / math.cos(math.pi / (2 * n))


def _validated_subset(n: int, m: int, a: Sequence[int]) -> list[int]:
    a = sorted(int(v) for v in a)
    if len(a) != m:
        raise PreconditionError(f"need {m} endpoints, got {len(a)}")
    if len(set(a)) != m:
        raise PreconditionError("endpoints must be distinct")
    if a[0] < 0 or a[-1] >= n:
        raise PreconditionError(f"endpoints must lie in [0, {n})")
    return a


def _check_lattice_subset_params(n: int, m: int, u: int):
    if not (isinstance(n, int) and isinstance(m, int) and isinstance(u, int)):
        raise PreconditionError("N, M, u must be integers")
    if not (2 < m and 2 * m <= n):
        raise PreconditionError(f"need 2 < M <= N/2, got M={m}, N={n}")
    if u < 1:
        raise ThresholdError(f"u must be a positive integer, got {u}")
    thr = threshold_u(n, m)
    if not u > thr:
        raise ThresholdError(f"u = {u} does not exceed the admissibility threshold {thr:.6f}")


def certify_lattice_subset(n: int, m: int, a: Sequence[int], u: int) -> FrameCertificate:
    """Certified basis with offsets j/N on M unit intervals inside [0, N).

    Every endpoint pair must keep wrap-metric margin > u/N (checked exactly);
    the constants are M(1 -/+ c) with c the parity cosine bound.
    """
    _check_lattice_subset_params(n, m, u)
    a = _validated_subset(n, m, a)
    for i in range(m):
        for j in range(i + 1, m):
            d = a[j] - a[i]
            if separation_margin(d, n, m) <= Fraction(u, n):
                raise SeparationError(
                    f"pair ({a[i]}, {a[j]}): margin {separation_margin(d, n, m)} <= u/N = {u}/{n}"
                )
    c = _parity_cos(n, u)
    A, B = m * (1.0 - c), m * (1.0 + c)
    system = ExponentSystem([Fraction(j, n) for j in range(m)], domain_scale=1)
    return FrameCertificate(
        method="lattice_subset",
        A=A,
        B=B,
        system=system,
        domain_intervals=_unit_intervals(a),
        params={"N": n, "M": m, "u": u, "a": list(a)},
        flags=_vacuity_flags(A),
    )


def certify_lattice_subset_paired(
    n: int,
    m: int,
    a: Sequence[int],
    u: int,
    partition: ClusterPartition | None = None,
) -> FrameCertificate:
    """Paired variant: clusters of <= 2 endpoints may violate the separation.

    Cross-cluster pairs must still satisfy it; alpha is the largest
    within-cluster sine ratio (0 when all clusters are singletons) and the
    constants widen to (M - alpha)(1 - c), (M + alpha)(1 + c).
    """
    _check_lattice_subset_params(n, m, u)
    a = _validated_subset(n, m, a)
    if partition is None:
        partition = partition_by_coherence(a, Fraction(1, n), m)
    if partition.max_cluster_size > 2:
        raise ClusterSizeError(
            f"paired certificate needs clusters of size <= 2, found {partition.max_cluster_size}"
        )
    where = {}
    for ci, cluster in enumerate(partition.clusters):
        for idx in cluster:
            where[idx] = ci
    alpha = 0.0
    for i in range(m):
        for j in range(i + 1, m):
            d = a[j] - a[i]
            if where[i] == where[j]:
                alpha = max(alpha, sin_ratio(m, Fraction(d, n)))
            elif separation_margin(d, n, m) <= Fraction(u, n):
                raise SeparationError(
                    f"cross-cluster pair ({a[i]}, {a[j]}) violates the separation margin"
                )
    c = _parity_cos(n, u)
    A, B = (m - alpha) * (1.0 - c), (m + alpha) * (1.0 + c)
    return FrameCertificate(
        method="lattice_subset_paired",
        A=A,
        B=B,
        system=ExponentSystem([Fraction(j, n) for j in range(m)], domain_scale=1),
        domain_intervals=_unit_intervals(a),
        params={"N": n, "M": m, "u": u, "a": list(a), "alpha": alpha},
        flags=_vacuity_flags(A),
    )


# --- one interval removed -------------------------------------------------

def construct_interval_removal(n: int, m: int, delta) -> FrameCertificate:
    """Certified basis on [0, N) with the interval (m, m+1) removed.

    Offsets are j/(N-1) - j*delta for a delta in the strict window
    (1/(2(N-1)^2), 1/(N-1) - beta); the constants do not depend on m.
    """
    if not isinstance(n, int) or n <= 2:
        raise PreconditionError(f"need integer N > 2, got {n}")
    if not isinstance(m, int) or not 1 <= m < n - 1:
        raise PreconditionError(f"need integer 1 <= m < N-1 = {n - 1}, got {m}")
    big_m = n - 1
    beta = solve_beta(big_m)
    lo = 1.0 / (2 * big_m * big_m)
    hi = 1.0 / big_m - beta.beta
    df = float(delta)
    if not lo < df < hi:
        raise DeltaWindowError(f"delta = {df} outside the open window ({lo}, {hi}) for N = {n}")
    envelope = big_m * math.sin(1.0 / big_m)
    spread = 1.0 / math.sin(math.pi / (2 * big_m))
    A = (1.0 - envelope) * (big_m - spread)
    B = (1.0 + envelope) * (big_m + spread)
    endpoints = [k for k in range(n) if k != m]
    if isinstance(delta, (int, Fraction)):
        delta = as_fraction(delta)
        offsets = [Fraction(j, big_m) - j * delta for j in range(big_m)]
    else:
        offsets = [j / big_m - j * df for j in range(big_m)]
    return FrameCertificate(
        method="interval_removal",
        A=A,
        B=B,
        system=ExponentSystem(offsets, domain_scale=1),
        domain_intervals=_unit_intervals(endpoints),
        params={"N": n, "m": m, "delta": delta, "beta": beta.beta, "window": [lo, hi]},
        flags=_vacuity_flags(A),
    )


# --- plain lattice subsets -------------------------------------------------

def subset_basis(n: int, m: int, a: Sequence[int]) -> tuple[ExponentSystem, NodeMatrix]:
    """Basis (no certified constants) with offsets j/N on any M < N distinct endpoints."""
    if not 1 <= m < n:
        raise PreconditionError(f"need 1 <= M < N, got M={m}, N={n}")
    a = _validated_subset(n, m, a)
    matrix = build_gamma([Fraction(j, n) for j in range(m)], a)
    if is_singular(matrix):
        raise VerificationError("distinct endpoints produced a singular matrix (unexpected)")
    return ExponentSystem([Fraction(j, n) for j in range(m)], domain_scale=1), matrix


def residue_orthogonal_basis(s: int, a: Sequence[int]) -> FrameCertificate:
    """Orthogonal basis with offsets j/s when endpoints fill all residues mod s."""
    if s < 1:
        raise PreconditionError(f"s must be >= 1, got {s}")
    a = sorted(int(v) for v in a)
    if len(a) != s:
        raise PreconditionError(f"need exactly {s} endpoints, got {len(a)}")
    if any(y - x < 1 for x, y in zip(a, a[1:])):
        raise PreconditionError("endpoints must be >= 1 apart")
    if not residues_distinct(a, s):
        raise ResidueClashError(f"endpoints {a} are not distinct mod {s}")
    return FrameCertificate(
        method="residue_orthogonal",
        A=float(s),
        B=float(s),
        system=ExponentSystem([Fraction(j, s) for j in range(s)], domain_scale=1),
        domain_intervals=_unit_intervals(a),
        params={"s": s, "a": list(a)},
    )


# --- complements ----------------------------------------------------------

def _complement_intervals(delta: Fraction, pieces: Sequence[Interval]) -> tuple[Interval, ...]:
    out = []
    cursor = Fraction(0)
    for lo, hi in sorted(pieces):
        if lo < cursor:
            raise PreconditionError("domain intervals overlap")
        if hi > delta:
            raise PreconditionError(f"domain escapes [0, {delta})")
        if lo > cursor:
            out.append((cursor, lo))
        cursor = hi
    if cursor < delta:
        out.append((cursor, delta))
    return tuple(out)


def complement_certificate(delta_total, cert: FrameCertificate) -> FrameCertificate:
    """Reflected certificate for the complement system on [0, Delta) minus the domain.

    Frequencies must form whole residue classes of (1/Delta)Z; the remaining
    classes make the complement system, with constants A' = Delta - B and
    B' = Delta - A.  These reflected bounds are carried as stated but are not
    guaranteed sound (see the ``unverified_reflection_bounds`` flag); the
    verifier will report any oracle excursion.
    """
    delta_total = as_fraction(delta_total)
    if delta_total <= 0:
        raise PreconditionError(f"Delta must be positive, got {delta_total}")
    if cert.B >= float(delta_total):
        raise ComplementRangeError(f"need B < Delta, got B = {cert.B}, Delta = {delta_total}")
    q = delta_total / cert.system.domain_scale
    if q.denominator != 1 or q < 1:
        raise LatticeError(
            f"Delta/domain_scale = {q} is not a positive integer: frequencies escape (1/Delta)Z"
        )
    q = int(q)
    residues = set()
    for phi in cert.system.branch_offsets:
        if not isinstance(phi, Fraction):
            raise LatticeError("branch offsets must be exact rationals for complements")
        r = phi * q
        if r.denominator != 1:
            raise LatticeError(f"branch offset {phi} is not a multiple of 1/{q}")
        residues.add(int(r) % q)
    remaining = [r for r in range(q) if r not in residues]
    if not remaining:
        raise ComplementRangeError("complement is empty: the system fills the whole lattice")
    comp_intervals = _complement_intervals(delta_total, cert.domain_intervals)
    if not comp_intervals:
        raise ComplementRangeError("complement domain is empty")
    a_new = float(delta_total) - cert.B
    b_new = float(delta_total) - cert.A
    return FrameCertificate(
        method="complement",
        A=a_new,
        B=b_new,
        system=ExponentSystem(
            [Fraction(r, q) for r in remaining], domain_scale=cert.system.domain_scale
        ),
        domain_intervals=comp_intervals,
        params={"Delta": delta_total, "parent_method": cert.method,
                "parent_constants": [cert.A, cert.B]},
        flags=("reflected_constants", "upper_from_delta_minus_lower",
               "unverified_reflection_bounds") + _vacuity_flags(a_new),
    )


# --- matrices for verification -------------------------------------------

def associated_matrix(cert: FrameCertificate) -> tuple[NodeMatrix, float] | None:
    """Rebuild the node matrix whose sigma^2 the certificate must bracket.

    Returns (matrix, scale) with the soundness contract
    ``scale*A <= sigma^2 <= scale*B``, or None when no exact matrix oracle
    applies (complements off the unit grid).
    """
    p = cert.params
    if cert.method == "perturbed_union":
        s, n = p["s"], p["N"]
        delta = p["delta"]
        domain = RationalIntervalUnion([lo for lo, _ in cert.domain_intervals])
        grid = normalize_to_integer_grid(domain)
        assert grid.scale == n
        spacing = (Fraction(1, s * n) + delta) if isinstance(delta, Fraction) else 1.0 / (s * n) + float(delta)
        return progression_matrix(grid.nodes, spacing), float(n)
    if cert.method in ("lattice_subset", "lattice_subset_paired"):
        return progression_matrix(p["a"], Fraction(1, p["N"]), p["M"]), 1.0
    if cert.method == "interval_removal":
        n, m = p["N"], p["m"]
        delta = p["delta"]
        big_m = n - 1
        spacing = (Fraction(1, big_m) - delta) if isinstance(delta, Fraction) else 1.0 / big_m - float(delta)
        nodes = [k for k in range(n) if k != m]
        return progression_matrix(nodes, spacing), 1.0
    if cert.method == "residue_orthogonal":
        return progression_matrix(p["a"], Fraction(1, p["s"]), p["s"]), 1.0
    if cert.method == "complement":
        if cert.system.domain_scale != 1:
            return None
        nodes: list[int] = []
        for lo, hi in cert.domain_intervals:
            if lo.denominator != 1 or hi.denominator != 1:
                return None
            nodes.extend(range(int(lo), int(hi)))
        if len(nodes) != cert.system.branches:
            return None
        return build_gamma(list(cert.system.branch_offsets), nodes), 1.0
    return None


# --- JSON -----------------------------------------------------------------

def _encode_param(v):
    if isinstance(v, Fraction):
        return fraction_to_json(v)
    if isinstance(v, (list, tuple)):
        return [_encode_param(x) for x in v]
    return v


def _decode_param(v):
    if isinstance(v, dict) and set(v) == {"num", "den"}:
        return fraction_from_json(v)
    if isinstance(v, list):
        return [_decode_param(x) for x in v]
    return v


def certificate_to_json(cert: FrameCertificate) -> dict:
    return {
        "schema": "v1",
        "method": cert.method,
        "A": cert.A,
        "B": cert.B,
        "system": cert.system.to_json(),
        "domain": {
            "intervals": [
                {"start": fraction_to_json(lo), "end": fraction_to_json(hi)}
                for lo, hi in cert.domain_intervals
            ]
        },
        "params": {k: _encode_param(v) for k, v in cert.params.items()},
        "flags": list(cert.flags),
    }


def certificate_from_json(doc: dict) -> FrameCertificate:
    if doc.get("schema") != "v1":
        raise PreconditionError(f"unsupported schema {doc.get('schema')!r}")
    intervals = tuple(
        (fraction_from_json(iv["start"]), fraction_from_json(iv["end"]))
        for iv in doc["domain"]["intervals"]
    )
    return FrameCertificate(
        method=doc["method"],
        A=float(doc["A"]),
        B=float(doc["B"]),
        system=ExponentSystem.from_json(doc["system"]),
        domain_intervals=intervals,
        params={k: _decode_param(v) for k, v in doc["params"].items()},
        flags=tuple(doc.get("flags", ())),
    )
