"""Node matrices for exponent systems on integer interval unions.

A system with branch offsets ``{delta_j}`` on a union with integer nodes
``{p_k}`` is a Riesz basis exactly when the square matrix
``Gamma[j, k] = exp(2 pi i delta_j p_k)`` is nonsingular, and its optimal
frame constants are the extreme squared singular values of Gamma.  Phases
``delta_j * p_k`` are reduced mod 1 in exact rational arithmetic whenever the
offset is rational, so entries are accurate to one rounding of the phase.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .domains import IntegerIntervalUnion
from .errors import PreconditionError

__all__ = [
    "NodeMatrix",
    "nodes_of_union",
    "build_gamma",
    "progression_matrix",
    "wrap_distance",
    "sin_ratio",
    "coherence",
    "matrix_to_json",
    "matrix_from_json",
    "matrix_to_bytes",
    "matrix_from_bytes",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class NodeMatrix:
    """Square matrix Gamma with its generating data.

    Columns follow ascending node order; rows follow the given offset order.
    ``effective_spacing`` is the per-step phase when the offsets form the
    arithmetic progression ``delta_j = j * spacing`` (None otherwise).
    """

    entries: np.ndarray
    nodes: tuple[int, ...]
    deltas: tuple[float, ...]
    effective_spacing: float | None = None

    @property
    def size(self) -> int:
        return len(self.nodes)


def nodes_of_union(union: IntegerIntervalUnion) -> tuple[int, ...]:
    """All integers covered by the union's blocks, ascending."""
    nodes = union.nodes
    if len(set(nodes)) != len(nodes):
        raise PreconditionError("blocks overlap: duplicate integer nodes")
    return nodes


def _unit_phase(delta, node: int) -> float:
    """Fractional part of delta * node, exact when delta is rational."""
    if isinstance(delta, (int, Fraction)):
        p = Fraction(delta) * node
        return float(p - (p.numerator // p.denominator))
    return math.fmod(delta * node, 1.0)


def build_gamma(deltas: Sequence, nodes: Sequence[int]) -> NodeMatrix:
    """Assemble Gamma[j, k] = exp(2 pi i deltas[j] * nodes[k]).

    ``deltas`` may mix floats and Fractions; rational offsets take the exact
    phase-reduction path.  Nodes must be distinct integers and are sorted
    ascending.
    """
    if len(deltas) != len(nodes) or not deltas:
        raise PreconditionError(
            f"need equally many offsets and nodes (L >= 1), got {len(deltas)} and {len(nodes)}"
        )
    ordered = sorted(int(n) for n in nodes)
    if len(set(ordered)) != len(ordered):
        raise PreconditionError("nodes must be pairwise distinct")
    L = len(ordered)
    entries = np.empty((L, L), dtype=np.complex128)
    for j, d in enumerate(deltas):
        for k, p in enumerate(ordered):
            entries[j, k] = cmath.exp(1j * TWO_PI * _unit_phase(d, p))
    return NodeMatrix(
        entries=entries,
        nodes=tuple(ordered),
        deltas=tuple(float(d) for d in deltas),
        effective_spacing=_detect_spacing(deltas),
    )


def _detect_spacing(deltas: Sequence) -> float | None:
    if len(deltas) < 2 or float(deltas[0]) != 0.0:
        return None
    step = deltas[1]
    exact = all(isinstance(d, (int, Fraction)) for d in deltas)
    for j, d in enumerate(deltas):
        if exact:
            if Fraction(d) != j * Fraction(step):
                return None
        elif abs(float(d) - j * float(step)) > 1e-12 * max(1.0, abs(j * float(step))):
            return None
    return float(step)


def progression_matrix(nodes: Sequence[int], spacing, size: int | None = None) -> NodeMatrix:
    """Gamma for the uniform offsets delta_j = j * spacing, j = 0..L-1."""
    L = len(nodes) if size is None else size
    if L != len(nodes):
        raise PreconditionError("progression matrix must be square: size == len(nodes)")
    deltas = [j * spacing if isinstance(spacing, (int, Fraction)) else j * float(spacing)
              for j in range(L)]
    m = build_gamma(deltas, nodes)
    return NodeMatrix(m.entries, m.nodes, m.deltas, effective_spacing=float(spacing))


def wrap_distance(t: float, s: float = 0.0) -> float:
    """Distance on the unit circle: min_n |t - s - n|, in [0, 1/2]."""
    r = abs(math.fmod(t - s, 1.0))
    return min(r, 1.0 - r)


def _wrap_value(x) -> float:
    """Wrap representative in [0, 1/2], exact for rationals."""
    if isinstance(x, (int, Fraction)):
        f = Fraction(x)
        r = f - (f.numerator // f.denominator)
        return float(min(r, 1 - r))
    return wrap_distance(float(x))


def sin_ratio(m: int, x) -> float:
    """|sin(pi m x) / sin(pi x)| with its removable limit m at integer x.

    Even and 1-periodic in x; ranges over [0, m].
    """
    if m < 1:
        raise PreconditionError(f"m must be >= 1, got {m}")
    r = _wrap_value(x)
    if r == 0.0:
        return float(m)
    # the true ratio never exceeds m; min() trims float overshoot (the raw
    # quotient of two subnormal sines can exceed m by a large margin)
    return min(abs(math.sin(math.pi * m * r) / math.sin(math.pi * r)), float(m))


def coherence(node_a: int, node_b: int, spacing, length: int) -> float:
    """|<column_a, column_b>| for the uniform matrix with ``length`` rows.

    Equals sin_ratio(length, (node_a - node_b) * spacing).
    """
    if node_a == node_b:
        raise PreconditionError("coherence needs two distinct nodes")
    d = node_a - node_b
    x = d * spacing if isinstance(spacing, (int, Fraction)) else d * float(spacing)
    return sin_ratio(length, x)


# --- serialization -------------------------------------------------------

def matrix_to_json(m: NodeMatrix) -> dict:
    return {
        "rows": m.size,
        "cols": m.size,
        "nodes": list(m.nodes),
        "deltas": list(m.deltas),
        "re": m.entries.real.tolist(),
        "im": m.entries.imag.tolist(),
    }


def matrix_from_json(doc: dict) -> NodeMatrix:
    entries = np.asarray(doc["re"], dtype=float) + 1j * np.asarray(doc["im"], dtype=float)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise PreconditionError("matrix JSON must describe a square matrix")
    nodes = tuple(int(n) for n in doc.get("nodes", range(entries.shape[0])))
    deltas = tuple(float(d) for d in doc.get("deltas", [0.0] * entries.shape[0]))
    return NodeMatrix(entries.astype(np.complex128), nodes, deltas)


def matrix_to_bytes(m: NodeMatrix) -> bytes:
    """Row-major interleaved float64 re/im pairs, little-endian, no header."""
    inter = np.empty((m.size, m.size, 2), dtype="<f8")
    inter[..., 0] = m.entries.real
    inter[..., 1] = m.entries.imag
    return inter.tobytes()


def matrix_from_bytes(buf: bytes) -> np.ndarray:
    n_values = len(buf) // 8
    if len(buf) % 16:
        raise PreconditionError("byte length is not a whole number of complex entries")
    L = math.isqrt(n_values // 2)
    if 2 * L * L != n_values:
        raise PreconditionError("byte length is not a square matrix")
    flat = np.frombuffer(buf, dtype="<f8").reshape(L, L, 2)
    return (flat[..., 0] + 1j * flat[..., 1]).astype(np.complex128)
