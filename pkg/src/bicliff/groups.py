"""The distillation subgroup, the Werner symmetry group, and coset keys.

The distillation subgroup D_n consists of the symplectic matrices mapping the
base onto itself; composing a protocol with one of them permutes only the
X/Y/Z output coefficients, so protocols in the same right coset D_n M share
their (sorted) statistics.  The Werner symmetry group K_n fixes n-fold Werner
inputs, so M K and M share exact Werner statistics.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .gf2 import CNOT, H, S, SWAP, Gate, SymplecticMatrix, gate_matrix, subspace_key


@dataclass(frozen=True)
class GeneratorSet:
    label: str
    n: int
    gates: tuple

    def matrices(self) -> list:
        return [gate_matrix(g, self.n) for g in self.gates]


def dn_generators(n: int) -> GeneratorSet:
    """Generating gates of the distillation subgroup.

    H and S on the kept pair, S everywhere, CNOTs with control above target,
    and CNOTs between measured pairs with control below target.  For n=1 this
    is {H_1, S_1}, which generates all of Sp(2, F2).
    """
    gates: list[Gate] = [H(1)] + [S(i) for i in range(1, n + 1)]
    gates += [CNOT(i, j) for i in range(2, n + 1) for j in range(1, i)]
    gates += [CNOT(i, j) for i in range(2, n + 1) for j in range(i + 1, n + 1)]
    return GeneratorSet("D_n", n, tuple(gates))


def kn_generators(n: int) -> GeneratorSet:
    """Generating gates of the symmetry group of n-fold Werner inputs."""
    gates: list[Gate] = [SWAP(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    gates += [H(i) for i in range(1, n + 1)]
    gates += [S(i) for i in range(1, n + 1)]
    return GeneratorSet("K_n", n, tuple(gates))


def dn_order(n: int) -> int:
    """Order of the distillation subgroup: 6 * 2^(n^2-1) * prod (2^j - 1)."""
    if n == 1:
        return 6
    return 6 * (1 << (n * n - 1)) * prod((1 << j) - 1 for j in range(1, n))


def dn_index(n: int) -> int:
    """Number of right cosets of the distillation subgroup in Sp(2n, F2)."""
    value = ((1 << n) - 1) * prod((1 << j) + 1 for j in range(1, n + 1))
    assert value % 3 == 0
    return value // 3


def _base_mask(n: int) -> int:
    return ((1 << (n - 1)) - 1) << (n + 1)


def is_in_dn(m: SymplecticMatrix) -> bool:
    """True iff m maps the base onto the base."""
    n = m.n
    mask = _base_mask(n)
    for k in range(1, n):
        if m.apply(1 << (n + k)) & ~mask:
            return False
    return True


def coset_key(m: SymplecticMatrix) -> tuple:
    """Canonical identifier of the right coset D_n m.

    Two matrices lie in the same coset iff the same vectors are mapped into
    the base, i.e. iff their base preimages coincide; the key is the reduced
    basis of that preimage subspace.
    """
    n = m.n
    inv = m.inverse()
    return subspace_key(inv.apply(1 << (n + k)) for k in range(1, n))


def bfs_closure(matrices, limit: int | None = None) -> set:
    """Closure of a generating set under multiplication (worklist BFS).

    Intended for small groups; raises if `limit` elements are exceeded.
    """
    gens = list(matrices)
    seen = {SymplecticMatrix.identity(gens[0].n)} | set(gens)
    frontier = list(seen)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                p = g @ a
                if p not in seen:
                    seen.add(p)
                    new.append(p)
                    if limit is not None and len(seen) > limit:
                        raise RuntimeError(f"closure exceeded limit {limit}")
        frontier = new
    return seen
