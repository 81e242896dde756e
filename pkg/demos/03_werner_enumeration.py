"""Exhaustive enumeration over identical Werner inputs, with exact results.

For n copies of a Werner state the search collapses to triples (a, b, E):
two short bit vectors and a small graph up to isomorphism.  Statistics are
exact rational polynomials in the input fidelity F, so protocols deduplicate
and compare without any numerical tolerance.

Pass --full to include n=7 and n=8 (about half a minute).
"""

import sys

from bicliff import (
    best_fidelity_protocol,
    count_ab_pairs,
    distinct_protocols,
    format_poly,
    graphs_up_to_iso,
    leading_infidelity_term,
    stats_in_epsilon,
)
from bicliff.werner import case_count

top = 8 if "--full" in sys.argv else 6

print("cases = (a,b) pairs x graph classes; distinct = unique exact statistics")
protocols = {}
for n in range(2, top + 1):
    m = n - 1
    protocols[n] = distinct_protocols(n)
    print(f"n={n}: {count_ab_pairs(m):>5} pairs x {len(graphs_up_to_iso(m)):>5} graphs "
          f"= {case_count(n):>8} cases -> {len(protocols[n]):>5} distinct protocols")

print("\nbest-output-fidelity protocols (exact polynomials in F):")
for n in range(2, top + 1):
    res = best_fidelity_protocol(n, protocols=protocols[n])
    st = res.protocol.stats
    k, c = leading_infidelity_term(st)
    print(f"\nn={n} (case {res.protocol.case_index}, "
          f"{len(res.tied)} protocol(s) attain the optimum)")
    print(f"  p_suc         = {format_poly(st.p_suc)}")
    print(f"  p_suc * F_out = {format_poly(st.f_num)}")
    print(f"  in eps = 1-F  : {format_poly(stats_in_epsilon(st.f_num), 'e')}")
    print(f"  F_out = 1 - {c}*eps^{k} + O(eps^{k + 1})")

print("\nnote the jump at n=5: the leading infidelity order reaches eps^3,")
print("which no scheme on fewer pairs or of the concatenated family achieves.")
