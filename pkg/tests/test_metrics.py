import numpy as np
import pytest

from bicliff.metrics import (
    MetricPoint,
    hashing_yield,
    ree_bell_diagonal,
    ree_product,
    shannon_entropy,
    target_rate,
)
from bicliff.states import DistStats
from bicliff.dejmps import concatenated_candidates
from _reference import DIQKD_THRESHOLD


def stats_of(p_suc, coeffs):
    f, f1, f2, f3 = (p_suc * c for c in coeffs)
    return DistStats.from_coset_sums(f, f1, f2, f3)


def test_entropy_values():
    assert shannon_entropy((1, 0, 0, 0)) == 0
    assert shannon_entropy((0.25, 0.25, 0.25, 0.25)) == 2
    assert np.isclose(shannon_entropy((0.75, 0.25, 0, 0)), 0.8112781244591328)
    with pytest.raises(ValueError):
        shannon_entropy((1.0, -0.1, 0.05, 0.05))
    with pytest.raises(ValueError):
        shannon_entropy((0.5, 0.2, 0.2, 0.2))


def test_hashing_yield():
    perfect = stats_of(1.0, (1, 0, 0, 0))
    assert np.isclose(hashing_yield(perfect, 4), 0.25)
    noisy = stats_of(0.9, (0.25, 0.25, 0.25, 0.25))
    assert hashing_yield(noisy, 2) == 0.0  # clamped
    zero = DistStats.from_coset_sums(0.0, 0.0, 0.0, 0.0)
    assert hashing_yield(zero, 3) == 0.0


def test_yield_is_one_over_n_at_perfect_input(best_for):
    for n in (2, 4):
        st = best_for(n).protocol.stats.evaluate(1.0)
        assert np.isclose(hashing_yield(st, n), 1.0 / n)


def test_ree_values():
    assert ree_bell_diagonal((1, 0, 0, 0)) == 1.0
    assert ree_bell_diagonal((0.5, 0.5, 0, 0)) == 0.0
    assert np.isclose(ree_bell_diagonal((0.75, 0.25, 0, 0)), 0.18872187554086717)


def test_ree_product():
    perfect = stats_of(1.0, (1, 0, 0, 0))
    assert np.isclose(ree_product(perfect), 1.0)
    zero = DistStats.from_coset_sums(0.0, 0.0, 0.0, 0.0)
    assert ree_product(zero) == 0.0


def _poly_sets(protocols_for, ns):
    return {
        n: [(p.case_index, p.stats) for p in protocols_for(n)] for n in ns
    }


def test_target_rate_above_threshold(protocols_for):
    sets = _poly_sets(protocols_for, (2, 3))
    point = target_rate(0.95, DIQKD_THRESHOLD, sets)
    assert point == MetricPoint(0.95, 1, 1.0, "none")


def test_target_rate_unreachable(protocols_for):
    sets = _poly_sets(protocols_for, (2, 3))
    point = target_rate(0.55, 0.999, sets)
    assert point.value == 0.0
    # oracle: no n<=3 protocol reaches 0.999 from 0.55
    for n in (2, 3):
        for _, st in sets[n]:
            p = st.p_suc(0.55)
            assert p <= 0 or st.f_num(0.55) / p < 0.999


def test_target_rate_monotone_in_input(protocols_for):
    sets = _poly_sets(protocols_for, (2, 3, 4))
    values = [
        target_rate(f, DIQKD_THRESHOLD, sets).value
        for f in (0.80, 0.85, 0.90, 0.94)
    ]
    assert all(a <= b + 1e-12 for a, b in zip(values, values[1:]))


def test_superset_never_worse(protocols_for):
    # the full protocol set is a superset of the concatenated family
    full = _poly_sets(protocols_for, (4,))
    dejmps = {
        4: [
            (i, DistStats.from_coset_sums(*key))
            for i, key in enumerate(concatenated_candidates(4))
        ]
    }
    for f in (0.7, 0.85):
        assert (
            target_rate(f, DIQKD_THRESHOLD, full).value
            >= target_rate(f, DIQKD_THRESHOLD, dejmps).value - 1e-12
        )
        full_best = max(
            hashing_yield(st.evaluate(f), 4) for _, st in full[4]
        )
        dj_best = max(hashing_yield(st.evaluate(f), 4) for _, st in dejmps[4])
        assert full_best >= dj_best - 1e-12
