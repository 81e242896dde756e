"""Figures of merit combining success probability and output quality."""

from __future__ import annotations

from dataclasses import dataclass
from math import log2

from .states import DistStats, PROB_TOL


def shannon_entropy(p) -> float:
    """Entropy in bits of a probability 4-vector, with 0*log(0) = 0."""
    p = tuple(float(x) for x in p)
    if min(p) < 0:
        raise ValueError("negative probability entry")
    if abs(sum(p) - 1.0) > PROB_TOL:
        raise ValueError("probabilities do not sum to 1")
    return -sum(x * log2(x) for x in p if x > 0)


def binary_entropy(x: float) -> float:
    if x in (0.0, 1.0):
        return 0.0
    return -x * log2(x) - (1 - x) * log2(1 - x)


def hashing_yield(stats: DistStats, n: int) -> float:
    """Asymptotic maximally-entangled-pair rate of distil-then-hash.

    (1 - H(output coefficients)) * p_suc / n, clamped at zero because a
    hashing stage on a too-noisy output yields nothing.
    """
    if stats.p_suc <= 0:
        return 0.0
    return max(0.0, 1.0 - shannon_entropy(stats.output_coeffs())) * stats.p_suc / n


def ree_bell_diagonal(p) -> float:
    """Relative entropy of entanglement of a Bell-diagonal state.

    1 - h2(largest coefficient) above the separability threshold 1/2,
    zero at or below it.
    """
    p = tuple(float(x) for x in p)
    if abs(sum(p) - 1.0) > PROB_TOL:
        raise ValueError("probabilities do not sum to 1")
    fmax = max(p)
    if fmax <= 0.5:
        return 0.0
    return 1.0 - binary_entropy(fmax)


def ree_product(stats: DistStats) -> float:
    """Success probability times the relative entropy of entanglement."""
    if stats.p_suc <= 0:
        return 0.0
    return stats.p_suc * ree_bell_diagonal(stats.output_coeffs())


@dataclass(frozen=True)
class MetricPoint:
    f_in: float
    n: int
    value: float
    protocol_id: object


def target_rate(f_in: float, f_tar: float, protocol_sets: dict) -> MetricPoint:
    """Best rate reaching a threshold fidelity with at most one round.

    protocol_sets maps n to (label, polynomial-mode DistStats) pairs.  The
    rate of a qualifying n-to-1 protocol is p_suc(f_in)/n; keeping the pair
    undistilled counts as rate 1 when f_in already meets the threshold.
    """
    if not 0.5 < f_tar < 1:
        raise ValueError("threshold fidelity must lie in (1/2, 1)")
    if f_in >= f_tar:
        return MetricPoint(f_in, 1, 1.0, "none")
    best = MetricPoint(f_in, 0, 0.0, None)
    for n in sorted(protocol_sets):
        for label, st in protocol_sets[n]:
            p = st.p_suc(f_in)
            if p <= 0:
                continue
            if st.f_num(f_in) / p >= f_tar:
                rate = p / n
                if rate > best.value:
                    best = MetricPoint(f_in, n, rate, label)
    return best
