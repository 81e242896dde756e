"""Bell-diagonal states, base/pillars subspaces, and distillation statistics.

A protocol keeps pair 1 unmeasured and succeeds when every other pair's
measurement outcomes are correlated, i.e. the permuted state's string lies in
the pillars.  The statistics split the pillar mass into the base coset (the
kept pair's identity coefficient) and its three shifts by e_1, e_1+e_{n+1}
and e_{n+1} (the X, Y and Z coefficients of the kept pair).

Statistics come in two interchangeable modes: floating point for arbitrary
Bell-diagonal inputs, and exact rational polynomials in the input fidelity F
for n-fold Werner inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .gf2 import (
    SymplecticMatrix,
    identity_weight,
    is_symplectic,
    span,
)
from .ratpoly import RationalPolynomial

PROB_TOL = 1e-12

# Bell coefficients are ordered (I, X, Y, Z); a pair's bits (x, z) select the
# entry via x + 2z remapped so that (0,1) is Z and (1,1) is Y.
_BITS_TO_PAULI = (0, 1, 3, 2)


def pauli_index(x: int, z: int) -> int:
    return _BITS_TO_PAULI[(x & 1) | ((z & 1) << 1)]


def vector_paulis(v: int, n: int) -> tuple:
    """Per-pair Bell indices (I=0, X=1, Y=2, Z=3) of a packed vector."""
    return tuple(pauli_index(v >> i, v >> (n + i)) for i in range(n))


def base(n: int) -> tuple:
    """Strings acting as I on pair 1 and as I or Z on every other pair.

    A subspace of dimension n-1, returned as sorted packed vectors.
    """
    return tuple(s << (n + 1) for s in range(1 << (n - 1)))


def pillars(n: int) -> tuple:
    """Strings acting arbitrarily on pair 1 and as I or Z elsewhere.

    A subspace of dimension n+1 containing the base; equals the symplectic
    complement of the base.
    """
    out = []
    for z in range(1 << n):
        for x in (0, 1):
            out.append(x | (z << n))
    return tuple(sorted(out))


@dataclass(frozen=True)
class BellDiagonalState:
    """n Bell-diagonal pairs described by 4^n probabilities.

    probs[v] is the probability of the Pauli string packed as v.
    """

    n: int
    probs: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        object.__setattr__(self, "probs", probs)
        if probs.shape != (4**self.n,):
            raise ValueError(f"expected {4 ** self.n} probabilities")
        if probs.min() < -PROB_TOL:
            raise ValueError("negative probability entry")
        if abs(probs.sum() - 1.0) > PROB_TOL:
            raise ValueError("probabilities do not sum to 1")

    @classmethod
    def from_pairs(cls, pairs) -> "BellDiagonalState":
        """Product state from per-pair (pI, pX, pY, pZ) coefficient rows."""
        n = len(pairs)
        v = np.arange(4**n, dtype=np.int64)
        lut = np.array(_BITS_TO_PAULI, dtype=np.int64)
        probs = np.ones(4**n)
        for i, pair in enumerate(pairs):
            pair = np.asarray(pair, dtype=float)
            code = ((v >> i) & 1) | (((v >> (n + i)) & 1) << 1)
            probs *= pair[lut[code]]
        return cls(n, probs)

    @classmethod
    def werner(cls, n: int, fidelity: float) -> "BellDiagonalState":
        e = (1.0 - fidelity) / 3.0
        return cls.from_pairs([(fidelity, e, e, e)] * n)

    def renormalized(self) -> "BellDiagonalState":
        return BellDiagonalState(self.n, self.probs / self.probs.sum())


def _stat_key(x):
    if isinstance(x, RationalPolynomial):
        return x.sort_key()
    return -x


@dataclass(frozen=True)
class DistStats:
    """Distillation statistics of one protocol.

    p_suc is the success probability; f_num is p_suc * F_out; fi_nums are the
    three unnormalised X/Y/Z coefficients of the kept pair, stored in a fixed
    canonical order (polynomials: coefficient-lexicographic; numbers:
    descending) because local operations can permute them freely.
    Entries are either all floats or all RationalPolynomial.
    """

    p_suc: object
    f_num: object
    fi_nums: tuple

    @classmethod
    def from_coset_sums(cls, s0, s1, s2, s3) -> "DistStats":
        fis = tuple(sorted((s1, s2, s3), key=_stat_key))
        return cls(s0 + s1 + s2 + s3, s0, fis)

    @property
    def is_polynomial(self) -> bool:
        return isinstance(self.p_suc, RationalPolynomial)

    @property
    def f_out(self) -> float:
        if self.is_polynomial:
            raise TypeError("f_out is a number only in numeric mode")
        return self.f_num / self.p_suc if self.p_suc > 0 else 0.0

    def f_out_at(self, fidelity) -> float:
        """Output fidelity of the polynomial-mode statistics at F=fidelity."""
        p = self.p_suc(fidelity)
        return self.f_num(fidelity) / p if p > 0 else 0.0

    def output_coeffs(self):
        """Normalised (F, F1, F2, F3) of the kept pair, numeric mode."""
        p = self.p_suc
        return tuple(x / p for x in (self.f_num,) + self.fi_nums)

    def evaluate(self, fidelity) -> "DistStats":
        """Numeric statistics of polynomial-mode stats at a given F."""
        if not self.is_polynomial:
            raise TypeError("already numeric")
        s0 = self.f_num(fidelity)
        rest = [p(fidelity) for p in self.fi_nums]
        return DistStats.from_coset_sums(s0, *rest)


def coset_sums(m: SymplecticMatrix, state: BellDiagonalState):
    """Pillar mass split over the four base cosets, in (I, X, Y, Z) order.

    The preimages under m of the base and of its three shifts are summed, so
    the order of the last three entries is tied to the kept pair's X/Y/Z
    labels before any canonical sorting.
    """
    n = m.n
    if state.n != n:
        raise ValueError("state and matrix pair counts differ")
    inv = m.inverse()
    basis = [inv.apply(1 << (n + k)) for k in range(1, n)]
    t1 = inv.apply(1)
    t2 = inv.apply(1 << n)
    v0 = np.fromiter(span(basis), dtype=np.int64, count=1 << (n - 1))
    probs = state.probs
    s0 = float(probs[v0].sum())
    s1 = float(probs[v0 ^ t1].sum())
    s2 = float(probs[v0 ^ (t1 ^ t2)].sum())
    s3 = float(probs[v0 ^ t2].sum())
    return s0, s1, s2, s3


def numeric_stats(m: SymplecticMatrix, state: BellDiagonalState) -> DistStats:
    """Distillation statistics of protocol m on an arbitrary state."""
    if not is_symplectic(m):
        raise ValueError("matrix is not symplectic")
    return DistStats.from_coset_sums(*coset_sums(m, state))


def werner_counts(m: SymplecticMatrix, n: int) -> tuple:
    """Identity-weight histograms of the four preimage cosets.

    Entry [k][w] counts vectors of identity weight w in the preimage of base
    coset k (order I, X, Y, Z).  These integer histograms determine the exact
    Werner-input statistics and are the deduplication key of the enumeration.
    """
    inv = m.inverse()
    basis = [inv.apply(1 << (n + k)) for k in range(1, n)]
    t1 = inv.apply(1)
    t2 = inv.apply(1 << n)
    v0 = span(basis)
    out = []
    for t in (0, t1, t1 ^ t2, t2):
        hist = [0] * (n + 1)
        for v in v0:
            hist[identity_weight(v ^ t, n)] += 1
        out.append(tuple(hist))
    return tuple(out)


@lru_cache(maxsize=None)
def werner_term_basis(n: int) -> tuple:
    """Polynomials F^w * ((1-F)/3)^(n-w) for w = 0..n."""
    f = RationalPolynomial.variable()
    third = RationalPolynomial((Fraction(1, 3), Fraction(-1, 3)))
    out = []
    for w in range(n + 1):
        p = RationalPolynomial.constant(1)
        for _ in range(w):
            p = p * f
        for _ in range(n - w):
            p = p * third
        out.append(p)
    return tuple(out)


def counts_to_poly(hist, n: int) -> RationalPolynomial:
    basis = werner_term_basis(n)
    acc = RationalPolynomial()
    for w, c in enumerate(hist):
        if c:
            acc = acc + c * basis[w]
    return acc


def stats_from_counts(counts, n: int) -> DistStats:
    s0, s1, s2, s3 = (counts_to_poly(h, n) for h in counts)
    return DistStats.from_coset_sums(s0, s1, s2, s3)


def werner_stats(m: SymplecticMatrix, n: int) -> DistStats:
    """Exact polynomial statistics of protocol m on n identical Werner pairs."""
    if not is_symplectic(m):
        raise ValueError("matrix is not symplectic")
    return stats_from_counts(werner_counts(m, n), n)


def stats_in_epsilon(p: RationalPolynomial) -> RationalPolynomial:
    """Re-express a statistic polynomial in the infidelity eps = 1 - F."""
    return p.substitute_one_minus()


def leading_infidelity_term(stats: DistStats) -> tuple:
    """(k, c) such that F_out = 1 - c*eps^k + O(eps^(k+1)) around eps = 0.

    The series of f_num/p_suc - 1 = (f_num - p_suc)/p_suc starts exactly at
    the lowest term of f_num - p_suc because p_suc(eps=0) = 1.
    """
    if not stats.is_polynomial:
        raise TypeError("leading term requires polynomial-mode statistics")
    p_eps = stats_in_epsilon(stats.p_suc)
    f_eps = stats_in_epsilon(stats.f_num)
    if p_eps[0] != 1 or f_eps[0] != 1:
        raise ValueError("p_suc and f_num must equal 1 at F=1")
    diff = f_eps - p_eps
    low = diff.lowest_order()
    if low is None:
        raise ValueError("output fidelity is identically 1")
    k, c = low
    return k, -c


def counts_key(counts) -> tuple:
    """Canonical hashable key: base histogram plus sorted coset histograms."""
    return (counts[0], tuple(sorted(counts[1:])))
