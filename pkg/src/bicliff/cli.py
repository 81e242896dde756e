"""Command-line front end.

Subcommands: tables, werner, transversal, eval, compare, circuit, verify.
Every CSV is byte-deterministic given the command, flags and seed: floats are
printed with 17 significant digits, exact rationals both as num/den strings
and as decimals.  Exit codes: 0 success, 2 invalid input, 3 missing cache,
4 budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import json
import shutil
import sys
from pathlib import Path

import numpy as np

from . import cache as cachemod
from .circuits import (
    ascii_diagram,
    circuit_to_symplectic,
    depth,
    published_circuits,
    synthesize,
    two_qubit_count,
)
from .dejmps import concatenated_candidates
from .gf2 import sp_order
from .groups import dn_index, dn_order
from .metrics import target_rate
from .ratpoly import format_poly
from .states import (
    BellDiagonalState,
    DistStats,
    counts_key,
    leading_infidelity_term,
    werner_counts,
)
from .transversal import build_transversal, enumerate_stats, pareto_envelope
from .werner import best_fidelity_protocol, case_count, distinct_protocols

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_MISSING_CACHE = 3
EXIT_BUDGET = 4

F_TAR_DEFAULT = 0.930025


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def fmt(x) -> str:
    return format(float(x), ".17g")


def poly_decimal(p) -> str:
    return ";".join(fmt(c) for c in p.coeffs)


def key_str(key) -> str:
    return ":".join(str(v) for v in key)


def _out_stream(path: str):
    if path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _emit(path: str, header: list, rows) -> None:
    fh, close = _out_stream(path)
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if close:
            fh.close()


def _werner_cache_path(cache_dir: str, n: int) -> Path:
    return Path(cache_dir) / f"werner_n{n}.bcp"


def _transversal_cache_path(cache_dir: str, n: int) -> Path:
    return Path(cache_dir) / f"transversal_n{n}.bcp"


def _load_protocols(cache_dir: str, n: int):
    path = _werner_cache_path(cache_dir, n)
    if not path.exists():
        raise CliError(
            EXIT_MISSING_CACHE,
            f"no Werner cache for n={n}; run: bicliff werner --n {n} --cache {cache_dir}",
        )
    _, protocols = cachemod.load_werner_cache(path)
    return protocols


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_tables(args) -> int:
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        rows.append([n, sp_order(n), dn_order(n), dn_index(n)])
    _emit(args.out, ["n", "sp_order", "distill_subgroup_order", "coset_count"], rows)
    return EXIT_OK


def cmd_werner(args) -> int:
    n = args.n
    cache_path = _werner_cache_path(args.cache, n)
    journal = Path(str(cache_path) + ".journal")
    journal.mkdir(parents=True, exist_ok=True)
    protocols = distinct_protocols(n, jobs=args.jobs, journal_dir=journal)
    cachemod.write_werner_cache(cache_path, n, protocols, params={"jobs_independent": True})
    shutil.rmtree(journal, ignore_errors=True)

    res = best_fidelity_protocol(n, protocols=protocols)
    st = res.protocol.stats
    order, coeff = leading_infidelity_term(st)
    rows = [[
        n,
        case_count(n),
        len(protocols),
        res.protocol.case_index,
        len(res.tied),
        int(res.dominant),
        format_poly(st.p_suc),
        poly_decimal(st.p_suc),
        format_poly(st.f_num),
        poly_decimal(st.f_num),
        order,
        str(coeff),
    ]]
    _emit(args.out, [
        "n", "cases", "distinct", "best_case_index", "tie_count", "dominant",
        "p_suc_exact", "p_suc_decimal", "f_num_exact", "f_num_decimal",
        "leading_order", "leading_coeff",
    ], rows)
    return EXIT_OK


def cmd_transversal(args) -> int:
    t = build_transversal(args.n, seed=args.seed, jobs=args.jobs, max_samples=args.budget)
    cachemod.write_transversal_cache(_transversal_cache_path(args.cache, args.n), t, args.seed)
    _emit(args.out, ["n", "cosets", "target", "complete", "samples"],
          [[args.n, len(t), t.target_size, int(t.complete), t.samples_used]])
    if not t.complete:
        print(
            f"warning: transversal incomplete ({len(t)}/{t.target_size}); "
            "raise --budget", file=sys.stderr,
        )
        return EXIT_BUDGET
    return EXIT_OK


def _load_state(path: str) -> BellDiagonalState:
    try:
        with open(path) as fh:
            obj = json.load(fh)
        n = obj["n"]
        if "pairs" in obj:
            if len(obj["pairs"]) != n:
                raise ValueError("pairs length differs from n")
            return BellDiagonalState.from_pairs(obj["pairs"])
        return BellDiagonalState(n, np.asarray(obj["probs"], dtype=float))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CliError(EXIT_INVALID, f"bad state file {path}: {exc}") from exc


def cmd_eval(args) -> int:
    state = _load_state(args.state)
    n = state.n if args.n is None else args.n
    if n != state.n:
        raise CliError(EXIT_INVALID, f"--n {n} does not match the state file ({state.n})")
    path = _transversal_cache_path(args.cache, n)
    if not path.exists():
        raise CliError(
            EXIT_MISSING_CACHE,
            f"no transversal cache for n={n}; run: bicliff transversal --n {n} --cache {args.cache}",
        )
    _, t = cachemod.load_transversal_cache(path)
    entries = enumerate_stats(t, state)
    envelope = set()
    for st in pareto_envelope([s for _, s in entries]):
        envelope.add((st.p_suc, st.f_num, st.fi_nums))
    rows = []
    for key, st in entries:
        f_out = st.f_out
        if args.min_fidelity is not None and f_out < args.min_fidelity:
            continue
        f1, f2, f3 = (x / st.p_suc if st.p_suc > 0 else 0.0 for x in st.fi_nums)
        rows.append([
            key_str(key), fmt(st.p_suc), fmt(f_out), fmt(f1), fmt(f2), fmt(f3),
            int((st.p_suc, st.f_num, st.fi_nums) in envelope),
        ])
    _emit(args.out, ["coset_key", "p_suc", "f_out", "f1", "f2", "f3", "envelope"], rows)
    return EXIT_OK


def _poly_grid(poly, grid: np.ndarray) -> np.ndarray:
    out = np.zeros_like(grid)
    for c in reversed(poly.coeffs):
        out = out * grid + float(c)
    return out


class _CurveSet:
    """Vectorised per-protocol statistic curves over the fidelity grid."""

    def __init__(self, labelled_stats, grid: np.ndarray):
        self.grid = grid
        self.labels = [lab for lab, _ in labelled_stats]
        self.p = np.array([_poly_grid(st.p_suc, grid) for _, st in labelled_stats])
        self.f = np.array([_poly_grid(st.f_num, grid) for _, st in labelled_stats])
        self.fis = np.array(
            [[_poly_grid(q, grid) for q in st.fi_nums] for _, st in labelled_stats]
        )

    def best_fidelity(self) -> np.ndarray:
        return (self.f / self.p).max(axis=0)

    def best_yield(self, n: int) -> np.ndarray:
        coeffs = np.concatenate([self.f[:, None, :], self.fis], axis=1) / self.p[:, None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            logs = np.where(coeffs > 0, np.log2(coeffs, where=coeffs > 0), 0.0)
        entropy = -(coeffs * logs).sum(axis=1)
        rate = np.clip(1.0 - entropy, 0.0, None) * self.p / n
        return rate.max(axis=0)

    def best_ree(self) -> np.ndarray:
        coeffs = np.concatenate([self.f[:, None, :], self.fis], axis=1) / self.p[:, None, :]
        fmax = coeffs.max(axis=1)
        h = np.where(
            (fmax > 0) & (fmax < 1),
            -(np.where(fmax > 0, fmax, 0.5) * np.log2(np.where(fmax > 0, fmax, 0.5))
              + np.where(fmax < 1, 1 - fmax, 0.5) * np.log2(np.where((1 - fmax) > 0, 1 - fmax, 0.5))),
            0.0,
        )
        ree = np.where(fmax > 0.5, 1.0 - h, 0.0)
        return (ree * self.p).max(axis=0)


def _dejmps_stats(n: int) -> list:
    return [
        (f"plan{i}", DistStats.from_coset_sums(*key))
        for i, key in enumerate(concatenated_candidates(n))
    ]


def _full_stats(protocols) -> list:
    return [(p.case_index, p.stats) for p in protocols]


def cmd_compare(args) -> int:
    grid = np.round(np.arange(args.f_min, args.f_max + args.f_step / 2, args.f_step), 9)
    ns = range(args.n_min, args.n_max + 1)
    full = {n: _full_stats(_load_protocols(args.cache, n)) for n in ns}
    dejmps = {n: _dejmps_stats(n) for n in ns}

    rows = []
    series = []
    if args.metric in ("fidelity", "ree"):
        header = ["f_in", "n", "full", "dejmps", "difference"]
        for n in ns:
            fc = _CurveSet(full[n], grid)
            dc = _CurveSet(dejmps[n], grid)
            a = fc.best_fidelity() if args.metric == "fidelity" else fc.best_ree()
            b = dc.best_fidelity() if args.metric == "fidelity" else dc.best_ree()
            for i, f in enumerate(grid):
                rows.append([fmt(f), n, fmt(a[i]), fmt(b[i]), fmt(a[i] - b[i])])
            series.append((f"optimised n={n}", grid, a))
            series.append((f"dejmps n={n}", grid, b))
    elif args.metric == "yield":
        header = ["f_in", "full", "dejmps", "ratio"]
        a = np.max([_CurveSet(full[n], grid).best_yield(n) for n in ns], axis=0)
        b = np.max([_CurveSet(dejmps[n], grid).best_yield(n) for n in ns], axis=0)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(
                b > 0, a / np.where(b > 0, b, 1.0), np.where(a > 0, np.inf, np.nan)
            )
        for i, f in enumerate(grid):
            rows.append([fmt(f), fmt(a[i]), fmt(b[i]), fmt(ratio[i])])
        series = [("optimised", grid, a), ("dejmps", grid, b)]
    elif args.metric == "target-rate":
        header = ["f_in", "full", "dejmps"]
        a, b = [], []
        for f in grid:
            f = float(f)
            a.append(target_rate(f, args.f_tar, full).value)
            b.append(target_rate(f, args.f_tar, dejmps).value)
            rows.append([fmt(f), fmt(a[-1]), fmt(b[-1])])
        series = [("optimised", grid, np.array(a)), ("dejmps", grid, np.array(b))]
    else:  # pragma: no cover - argparse restricts choices
        raise CliError(EXIT_INVALID, f"unknown metric {args.metric}")

    _emit(args.out, header, rows)
    if args.svg:
        _svg_lineplot(args.svg, f"{args.metric} vs input fidelity", series)
    return EXIT_OK


def cmd_circuit(args) -> int:
    protocols = _load_protocols(args.cache, args.n)
    res = best_fidelity_protocol(args.n, protocols=protocols)
    target = res.protocol
    synth = synthesize(
        target,
        budget=args.budget,
        seed=args.seed,
        jobs=args.jobs,
        allow_swap=args.allow_swap,
        max_hits=args.max_hits,
    )

    def _verified(circ) -> bool:
        m = circuit_to_symplectic(circ)
        return counts_key(werner_counts(m, args.n)) == counts_key(target.counts)

    if synth.circuit is not None:
        circ = synth.circuit
        if not _verified(circ):
            raise CliError(EXIT_INVALID, "internal error: synthesized circuit failed re-verification")
        print(f"# synthesized in {synth.trials_used} trials ({synth.hits} hits)")
        _print_circuit(circ, args.out)
        return EXIT_OK

    published = published_circuits().get(args.n)
    if published is not None and _verified(published):
        print(
            f"# budget exhausted after {synth.trials_used} trials; "
            "falling back to the published circuit (verified: statistics match)"
        )
        _print_circuit(published, args.out)
        return EXIT_BUDGET
    raise CliError(
        EXIT_BUDGET,
        f"budget exhausted after {synth.trials_used} trials and no verified fallback: {synth.message}",
    )


def _print_circuit(circ, out_path) -> None:
    print(ascii_diagram(circ))
    print(f"# two_qubit_gates={two_qubit_count(circ)} depth={depth(circ)}")
    blob = json.dumps(circ.to_json_obj(), separators=(",", ":"))
    if out_path == "-":
        print(blob)
    else:
        Path(out_path).write_text(blob + "\n")


def cmd_verify(args) -> int:
    ok, checked, message = cachemod.verify_cache(args.cache_file, sample=args.sample, seed=args.seed)
    print(f"checked={checked} ok={int(ok)} {message}")
    return EXIT_OK if ok else EXIT_INVALID


# ---------------------------------------------------------------------------
# SVG plotting (no external renderer; simple polyline chart)
# ---------------------------------------------------------------------------

_SVG_COLORS = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
    "#aec7e8", "#ffbb78", "#98df8a", "#ff9896",
]


def _svg_lineplot(path: str, title: str, series) -> None:
    width, height, pad = 720, 480, 60
    xs_all = np.concatenate([np.asarray(xs, dtype=float) for _, xs, _ in series])
    ys_all = np.concatenate([np.asarray(ys, dtype=float) for _, _, ys in series])
    finite = np.isfinite(ys_all)
    x0, x1 = xs_all.min(), xs_all.max()
    y0, y1 = ys_all[finite].min(), ys_all[finite].max()
    if y1 == y0:
        y1 = y0 + 1.0

    def sx(x):
        return pad + (x - x0) / (x1 - x0) * (width - 2 * pad)

    def sy(y):
        return height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2}" y="24" text-anchor="middle" font-size="16">{title}</text>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
        f'<text x="{pad}" y="{height - pad + 20}" font-size="11">{x0:g}</text>',
        f'<text x="{width - pad}" y="{height - pad + 20}" text-anchor="end" font-size="11">{x1:g}</text>',
        f'<text x="{pad - 6}" y="{height - pad}" text-anchor="end" font-size="11">{y0:.3g}</text>',
        f'<text x="{pad - 6}" y="{pad + 4}" text-anchor="end" font-size="11">{y1:.3g}</text>',
    ]
    for i, (name, xs, ys) in enumerate(series):
        color = _SVG_COLORS[i % len(_SVG_COLORS)]
        pts = [
            f"{sx(float(x)):.2f},{sy(float(y)):.2f}"
            for x, y in zip(xs, ys)
            if np.isfinite(y)
        ]
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{" ".join(pts)}"/>'
        )
        ly = pad + 16 * i
        parts.append(f'<text x="{width - pad + 4}" y="{ly}" font-size="10" fill="{color}">{name}</text>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts))


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bicliff",
        description="Enumerate and optimise bilocal Clifford distillation protocols",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", default="-", help="output CSV path (default stdout)")
        p.add_argument("--cache", default="bicliff-cache", help="protocol cache directory")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("tables", help="group orders and coset counts")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("werner", help="enumerate all protocols on identical Werner inputs")
    p.add_argument("--n", type=int, required=True)
    add_common(p)
    p.set_defaults(func=cmd_werner)

    p = sub.add_parser("transversal", help="build a coset transversal for general inputs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=None, help="maximum samples")
    add_common(p)
    p.set_defaults(func=cmd_transversal)

    p = sub.add_parser("eval", help="evaluate every coset on a Bell-diagonal state")
    p.add_argument("state", help="state JSON: {n, pairs: [[pI,pX,pY,pZ],..]} or {n, probs}")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--min-fidelity", type=float, default=None,
                   help="drop rows with F_out below this value")
    add_common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("compare", help="optimised protocols vs concatenated baselines")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--metric", choices=["fidelity", "yield", "ree", "target-rate"],
                   default="fidelity")
    p.add_argument("--f-min", type=float, default=0.50)
    p.add_argument("--f-max", type=float, default=0.999)
    p.add_argument("--f-step", type=float, default=0.001)
    p.add_argument("--f-tar", type=float, default=F_TAR_DEFAULT)
    p.add_argument("--svg", default=None, help="also write an SVG line plot")
    add_common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("circuit", help="synthesize a low-depth circuit for the best protocol")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=10_000_000)
    p.add_argument("--max-hits", type=int, default=2000,
                   help="stop early after this many accepted candidates")
    p.add_argument("--allow-swap", action="store_true",
                   help="also search circuits ending in a SWAP of qubit 1")
    add_common(p)
    p.set_defaults(func=cmd_circuit)

    p = sub.add_parser("verify", help="re-verify sampled records of a cache file")
    p.add_argument("cache_file")
    p.add_argument("--sample", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
