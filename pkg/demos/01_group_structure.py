"""Tour of the binary-symplectic machinery behind the protocol search.

Pauli strings on n qubit pairs live in F2^(2n); bilocal Clifford operations
act on them as symplectic matrices.  Everything about a distillation protocol
is decided by where those matrices move the `base` (strings whose probability
mass forms the fidelity numerator) and the `pillars` (strings counted as
success).
"""

import numpy as np

from bicliff import (
    CNOT,
    H,
    SymplecticMatrix,
    base,
    coset_key,
    dn_generators,
    dn_index,
    dn_order,
    gate_matrix,
    is_in_dn,
    pillars,
    random_symplectic,
    sp_order,
    symplectic_inner,
)
from bicliff.groups import bfs_closure

n = 3

print("== vectors and the symplectic form ==")
x1, z1 = 1, 1 << n  # X and Z on the kept pair
print(f"X1 vs Z1 anticommute: inner product = {symplectic_inner(x1, z1, n)}")
print(f"any string commutes with itself:     {symplectic_inner(x1 ^ z1, x1 ^ z1, n)}")

print("\n== the base and the pillars ==")
print(f"base(3)    = {sorted(base(3))}  (I on pair 1, I/Z elsewhere)")
print(f"pillars(3) has {len(pillars(3))} strings; they are exactly the vectors")
print("with zero inner product against every base vector.")

print("\n== gate images ==")
m = gate_matrix(H(1), 1)
print(f"Hadamard on one pair swaps the X and Z rows:\n{m}")
cnot = gate_matrix(CNOT(2, 1), 2)
print(f"CNOT(control 2, target 1) squares to the identity: "
      f"{cnot @ cnot == SymplecticMatrix.identity(2)}")

print("\n== group sizes ==")
for k in range(1, 6):
    print(f"n={k}: |Sp| = {sp_order(k):>22}  |D_n| = {dn_order(k):>14}  "
          f"cosets = {dn_index(k):>8}")

print("\n== the statistics-preserving subgroup ==")
gens = dn_generators(2)
print(f"generators for n=2: {[str(g) for g in gens.gates]}")
closure = bfs_closure(gens.matrices())
print(f"their closure has {len(closure)} elements = predicted order {dn_order(2)}")

rng = np.random.default_rng(7)
sample = random_symplectic(3, rng)
print("\na random symplectic matrix is usually not statistics-preserving:")
print(f"is_in_dn(random) = {is_in_dn(sample)}")
print(f"its coset key (canonical basis of the base preimage): {coset_key(sample)}")
