"""Exhaustive enumeration of protocols on n identical Werner pairs.

Every double coset (distillation subgroup on the left, Werner symmetry group
on the right) contains a representative determined by a triple (a, b, E): two
(n-1)-bit vectors with a <= b <= a^b in integer order, and a symmetric
zero-diagonal matrix E taken up to simultaneous row/column permutation, i.e.
a graph on n-1 labelled nodes up to isomorphism.  Enumerating the triples,
computing each representative's exact Werner statistics and deduplicating
yields every distinct protocol.

The per-case work is a set of identity-weight histograms over the four
preimage cosets; the batch engine below evaluates them vectorised over all
graph classes at once, encoding each histogram into one 64-bit key.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .gf2 import SymplecticMatrix
from .states import DistStats, stats_from_counts, werner_counts

MAX_GRAPH_NODES = 7  # graphs on n-1 nodes for n up to 8


# ---------------------------------------------------------------------------
# Graphs on m labelled nodes up to isomorphism
# ---------------------------------------------------------------------------


def _edge_list(m: int) -> list:
    return [(i, j) for j in range(1, m) for i in range(j)]


def _permuted_mask_map(m: int, perm) -> np.ndarray:
    """Map mask -> mask with vertices relabelled by perm, for all masks."""
    edges = _edge_list(m)
    index = {e: k for k, e in enumerate(edges)}
    size = 1 << len(edges)
    arr = np.arange(size, dtype=np.int64)
    out = np.zeros(size, dtype=np.int64)
    for k, (i, j) in enumerate(edges):
        a, b = perm[i], perm[j]
        t = index[(min(a, b), max(a, b))]
        out |= ((arr >> k) & 1) << t
    return out


def graphs_up_to_iso(m: int) -> list:
    """One canonical edge-bitmask per isomorphism class of graphs on m nodes.

    The canonical form is the minimum bitmask over all vertex relabelings.
    Orbit minima are found by min-label propagation along the action of two
    generating permutations (a transposition and a full cycle) plus pointer
    jumping, which converges in a handful of vectorised passes even for the
    2^21 labelled graphs on 7 nodes.
    """
    if not 0 <= m <= MAX_GRAPH_NODES:
        raise ValueError(f"supported node counts are 0..{MAX_GRAPH_NODES}")
    if m <= 1:
        return [0]
    swap = list(range(m))
    swap[0], swap[1] = 1, 0
    cycle = [(i + 1) % m for i in range(m)]
    inv_cycle = [(i - 1) % m for i in range(m)]
    maps = [_permuted_mask_map(m, p) for p in (swap, cycle, inv_cycle)]
    rep = np.arange(1 << len(_edge_list(m)), dtype=np.int64)
    while True:
        nxt = rep
        for g in maps:
            nxt = np.minimum(nxt, rep[g])
        nxt = np.minimum(nxt, rep[nxt])
        if np.array_equal(nxt, rep):
            break
        rep = nxt
    return [int(v) for v in np.unique(rep)]


def graph_adjacency_rows(mask: int, m: int) -> list:
    """Adjacency matrix of an edge bitmask as m bit-packed rows."""
    rows = [0] * m
    for k, (i, j) in enumerate(_edge_list(m)):
        if (mask >> k) & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return rows


# ---------------------------------------------------------------------------
# (a, b) pairs with a <= b <= a^b
# ---------------------------------------------------------------------------


def ab_pairs(m: int):
    """Yield (a, b) over F2^m with a <= b <= a^b, ascending as integer pairs.

    For a != 0 the condition b <= a^b holds exactly when b is 0 at the top
    set bit of a, and a <= b then forces a nonzero prefix above that bit.
    """
    for b in range(1 << m):
        yield 0, b
    for a in range(1, 1 << m):
        h = a.bit_length() - 1
        for hi in range(1, 1 << (m - h - 1)):
            base = hi << (h + 1)
            for lo in range(1 << h):
                yield a, base | lo


def count_ab_pairs(m: int) -> int:
    """Number of (a, b) pairs with a <= b <= a^b over F2^m."""
    if m < 1:
        raise ValueError("m must be positive")
    total = 1 << m  # a = 0
    for h in range(m):
        total += (1 << h) * ((1 << (m - h - 1)) - 1) * (1 << h)
    return total


# ---------------------------------------------------------------------------
# Cases and representatives
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WernerCase:
    """A canonical triple (a, b, E) indexing one enumeration case."""

    n: int
    a: int
    b: int
    e: int  # canonical edge bitmask of the graph on n-1 nodes


def enumerate_cases(n: int):
    """All cases for n pairs, (a, b) ascending then graph mask ascending."""
    _check_enum_n(n)
    graphs = graphs_up_to_iso(n - 1)
    for a, b in ab_pairs(n - 1):
        for e in graphs:
            yield WernerCase(n, a, b, e)


def case_count(n: int) -> int:
    _check_enum_n(n)
    return count_ab_pairs(n - 1) * len(graphs_up_to_iso(n - 1))


def _check_enum_n(n: int) -> None:
    if not 2 <= n <= MAX_GRAPH_NODES + 1:
        raise ValueError(f"enumeration supports 2 <= n <= {MAX_GRAPH_NODES + 1}")


def build_representative(case: WernerCase, n: int | None = None) -> SymplecticMatrix:
    """The canonical-form representative of a case.

    Upper-left block [[1, 0], [a, I]], upper-right [[0, b^T], [b, E + b a^T]],
    lower-left zero, lower-right the transpose of the upper-left.
    """
    n = case.n if n is None else n
    m = n - 1
    erows = graph_adjacency_rows(case.e, m)
    a, b = case.a, case.b
    rows = [1 | (b << (n + 1))]
    for k in range(1, n):
        ak = (a >> (k - 1)) & 1
        bk = (b >> (k - 1)) & 1
        xrest = erows[k - 1] ^ (a if bk else 0)
        rows.append(ak | (1 << k) | (bk << n) | (xrest << (n + 1)))
    rows.append((1 | (a << 1)) << n)
    for k in range(1, n):
        rows.append(1 << (n + k))
    return SymplecticMatrix(n, rows)


@dataclass
class Protocol:
    """A distillation protocol: representative matrix plus exact statistics."""

    n: int
    rep: SymplecticMatrix
    stats: DistStats
    counts: tuple  # identity-weight histograms of the four preimage cosets
    source: object  # WernerCase or a coset key
    case_index: int | None = None
    circuit: object | None = None


# ---------------------------------------------------------------------------
# Batched statistics keys
# ---------------------------------------------------------------------------

_TABLES: dict = {}


def _tables(n: int):
    """Per-process cache of the vectorised per-graph tables for one n."""
    cached = _TABLES.get(n)
    if cached is not None:
        return cached
    m = n - 1
    graphs = graphs_up_to_iso(m)
    g_count = len(graphs)
    size = 1 << m
    marr = np.asarray(graphs, dtype=np.int64)
    erows = np.zeros((g_count, m), dtype=np.uint32)
    for k, (i, j) in enumerate(_edge_list(m)):
        bit = ((marr >> k) & 1).astype(np.uint32)
        erows[:, i] |= bit << j
        erows[:, j] |= bit << i
    subsets = np.arange(size, dtype=np.uint32)
    row_xors = np.zeros((g_count, size), dtype=np.uint32)
    for k in range(m):
        sel = ((subsets >> k) & 1) == 1
        row_xors[:, sel] ^= erows[:, k : k + 1]
    pop = np.array([int(s).bit_count() for s in range(size)], dtype=np.uint8)
    parity = (pop & 1).astype(np.uint8)
    powers = np.array([129 ** (n - i) for i in range(n + 1)], dtype=np.uint64)
    cached = (graphs, row_xors, subsets, pop, parity, powers)
    _TABLES[n] = cached
    return cached


_COSET_SHIFTS = ((0, 0), (1, 0), (1, 1), (0, 1))  # I, X, Y, Z


def _pair_keys(n: int, a: int, b: int) -> np.ndarray:
    """Per-graph dedup keys for one (a, b) pair: (G, 4) uint64.

    Column 0 encodes the base-coset histogram, columns 1..3 the sorted other
    three.  Derived from the closed form of the representative's inverse:
    a subset s of the (n-1) non-kept rows has X-rest R[s] ^ ((b.s)^alpha)*a ^
    beta*b, Z-rest s, and kept-pair bits (alpha^(b.s), beta^(a.s)).
    """
    m = n - 1
    graphs, row_xors, subsets, pop, parity, powers = _tables(n)
    g_count = row_xors.shape[0]
    b_dot = parity[np.bitwise_and(np.uint32(b), subsets)]
    a_dot = parity[np.bitwise_and(np.uint32(a), subsets)]
    garange = np.arange(g_count, dtype=np.int64)[:, None] * (n + 1)
    keys = np.empty((g_count, 4), dtype=np.uint64)
    for k, (alpha, beta) in enumerate(_COSET_SHIFTS):
        flip = (b_dot ^ alpha).astype(np.uint32)
        addx = flip * np.uint32(a)
        if beta:
            addx = addx ^ np.uint32(b)
        xrest = row_xors ^ addx[None, :]
        nonid = pop[xrest | subsets[None, :]]
        kept = (((b_dot ^ alpha) == 0) & ((a_dot ^ beta) == 0)).astype(np.uint8)
        weights = kept[None, :] + (m - nonid)
        hist = np.bincount(
            (garange + weights).ravel(), minlength=g_count * (n + 1)
        ).reshape(g_count, n + 1)
        keys[:, k] = hist.astype(np.uint64) @ powers
    keys[:, 1:] = np.sort(keys[:, 1:], axis=1)
    return keys


def _chunk_keys(n: int, pairs: list) -> np.ndarray:
    return np.vstack([_pair_keys(n, a, b) for a, b in pairs])


def counts_from_key(key: int, n: int) -> tuple:
    """Decode one base-129 histogram key back into counts."""
    out = []
    k = int(key)
    for i in range(n, -1, -1):
        out.append(k // (129**i) % 129)
    return tuple(out)


def all_case_keys(
    n: int, jobs: int = 1, progress=None, journal_dir=None
) -> np.ndarray:
    """Dedup keys of every case, in canonical case order: (cases, 4) uint64."""
    _check_enum_n(n)
    if journal_dir is not None:
        from pathlib import Path

        journal_dir = Path(journal_dir)
        journal_dir.mkdir(parents=True, exist_ok=True)
    pairs = list(ab_pairs(n - 1))
    chunk = 64
    chunks = [pairs[i : i + chunk] for i in range(0, len(pairs), chunk)]

    def finished(i: int, arr: np.ndarray):
        if journal_dir is not None:
            np.save(journal_dir / f"chunk_{i:06d}.npy", arr)
        if progress is not None:
            progress(i + 1, len(chunks))

    results: list = [None] * len(chunks)
    todo = []
    for i in range(len(chunks)):
        if journal_dir is not None:
            path = journal_dir / f"chunk_{i:06d}.npy"
            if path.exists():
                results[i] = np.load(path)
                continue
        todo.append(i)

    if jobs <= 1:
        for i in todo:
            results[i] = _chunk_keys(n, chunks[i])
            finished(i, results[i])
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {i: pool.submit(_chunk_keys, n, chunks[i]) for i in todo}
            for i in todo:
                results[i] = futures[i].result()
                finished(i, results[i])
    return np.vstack(results) if results else np.empty((0, 4), dtype=np.uint64)


def distinct_protocols(
    n: int, jobs: int = 1, progress=None, journal_dir=None
) -> list:
    """One protocol per distinct exact Werner statistics, in case order.

    Cases are scanned in the canonical order and deduplicated on the exact
    statistics key (base histogram plus sorted multiset of the other three);
    the first case producing each key supplies the stored representative.
    """
    keys = all_case_keys(n, jobs=jobs, progress=progress, journal_dir=journal_dir)
    graphs = graphs_up_to_iso(n - 1)
    g_count = len(graphs)
    _, first = np.unique(keys, axis=0, return_index=True)
    order = np.sort(first)
    pairs = list(ab_pairs(n - 1))
    protocols = []
    for idx in order:
        idx = int(idx)
        a, b = pairs[idx // g_count]
        case = WernerCase(n, a, b, graphs[idx % g_count])
        rep = build_representative(case)
        counts = werner_counts(rep, n)
        protocols.append(
            Protocol(
                n=n,
                rep=rep,
                stats=stats_from_counts(counts, n),
                counts=counts,
                source=case,
                case_index=idx,
            )
        )
    return protocols


# ---------------------------------------------------------------------------
# Best output fidelity over a grid
# ---------------------------------------------------------------------------


def default_f_grid() -> np.ndarray:
    return np.round(np.arange(0.500, 0.9995, 0.001), 6)


@dataclass
class BestFidelityResult:
    protocol: Protocol  # lowest-case-index member of the winning group
    tied: list  # every protocol sharing the winning (p_suc, f_num)
    dominant: bool  # winner maximal at every grid point
    pointwise: list  # per-grid-point winning case index (when not dominant)
    grid: np.ndarray


def _poly_values(poly, grid: np.ndarray) -> np.ndarray:
    coeffs = [float(c) for c in poly.coeffs]
    out = np.zeros_like(grid)
    for c in reversed(coeffs):
        out = out * grid + c
    return out


def best_fidelity_protocol(
    n: int, protocols: list | None = None, f_grid=None
) -> BestFidelityResult:
    """The protocol(s) maximising F_out pointwise over the fidelity grid.

    Protocols with identical (p_suc, f_num) form one curve; if a single curve
    is maximal at every grid point it is reported as dominant, otherwise the
    per-point winners are returned so crossovers are visible.
    """
    if protocols is None:
        protocols = distinct_protocols(n)
    grid = default_f_grid() if f_grid is None else np.asarray(f_grid, dtype=float)
    groups: dict = {}
    for p in protocols:
        groups.setdefault((p.stats.p_suc, p.stats.f_num), []).append(p)
    group_list = sorted(groups.values(), key=lambda g: g[0].case_index)
    values = np.empty((len(group_list), len(grid)))
    for i, grp in enumerate(group_list):
        st = grp[0].stats
        values[i] = _poly_values(st.f_num, grid) / _poly_values(st.p_suc, grid)
    best = values.max(axis=0)
    # exact ties between distinct curves (e.g. every protocol hitting
    # F_out = 1/2 at F = 1/2) evaluate a few ulps apart in float
    maximal = values >= best[None, :] - 1e-12
    dominant_rows = np.where(maximal.all(axis=1))[0]
    if len(dominant_rows):
        grp = group_list[int(dominant_rows[0])]
        return BestFidelityResult(grp[0], list(grp), True, [], grid)
    per_point = maximal.argmax(axis=0)
    winners = [group_list[int(i)][0].case_index for i in per_point]
    grp = group_list[int(per_point[-1])]
    return BestFidelityResult(grp[0], list(grp), False, winners, grid)
