"""Every protocol for a few non-identical Bell-diagonal pairs.

One representative per coset of the statistics-preserving subgroup is enough
to see every achievable (success probability, output fidelity) pair.  The
transversal is built by coupon-collector sampling of coset keys; the stored
representatives are canonical, so the result is the same for every seed.
"""

from bicliff import BellDiagonalState, build_transversal, enumerate_stats, pareto_envelope

pair = (0.7, 0.15, 0.10, 0.05)

for n in (2, 3):
    t = build_transversal(n, seed=0)
    print(f"n={n}: {len(t)} cosets found with {t.samples_used} samples")

    state = BellDiagonalState.from_pairs([pair] * n)
    entries = enumerate_stats(t, state)
    stats = [s for _, s in entries]
    env = pareto_envelope(stats)

    print(f"  two copies of {pair}" if n == 2 else f"  {n} copies of {pair}")
    print(f"  achievable statistics: {len(stats)} cosets, {len(env)} on the envelope")
    best_f = max(stats, key=lambda s: s.f_out)
    best_p = max(stats, key=lambda s: s.p_suc)
    print(f"  highest F_out : {best_f.f_out:.6f} at p_suc = {best_f.p_suc:.6f}")
    print(f"  highest p_suc : {best_p.p_suc:.6f} at F_out = {best_p.f_out:.6f}")
    print("  envelope (p_suc, F_out):")
    for s in env:
        print(f"    ({s.p_suc:.6f}, {s.f_out:.6f})")
    print()

print("the identity coset keeps the first pair untouched, so its row shows")
print("F_out equal to the input fidelity 0.7 and p_suc = 0.75 for n=2.")
