"""Command-line driver: data synthesis, factorization, clustering, benchmarks.

Every subcommand writes human-diffable artifacts: tensors in the NTF1
binary format, experiment records as JSON, convergence traces as CSV,
basis images as binary PGM. Errors leave a single JSON line on stderr
and a nonzero exit code.
"""

import argparse
import csv
import json
import statistics
import sys
import time
from pathlib import Path

import numpy as np

from .evaluation import accuracy, add_gaussian_noise, kmeans, nmi, purity
from .io import read_labels, read_tensor, write_labels, write_pgm, write_tensor
from .solver import SolverConfig, factorize
from .synth import cluster_tensor, ring_tensor, tucker_tensor
from .tensor_ops import merge_cores


def _int_list(text):
    return [int(v) for v in str(text).split(",") if v != ""]


# converters applied both to flags and to config-file values
_SOLVER_KEYS = {
    "ranks": _int_list,
    "beta": float,
    "k": int,
    "graph": str,
    "variant": str,
    "tucker_ranks": _int_list,
    "inner_iters": int,
    "sweeps": int,
    "tol": float,
    "epsilon": float,
    "seed": int,
}


def load_config_file(path):
    """Parse a key=value config file; '#' starts a comment."""
    values = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"bad config line: {raw!r}")
        key, val = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _SOLVER_KEYS:
            raise ValueError(f"unknown config key: {key}")
        values[key] = _SOLVER_KEYS[key](val)
    return values


def _add_solver_flags(parser):
    parser.add_argument("--config", help="key=value file; flags override it")
    parser.add_argument("--ranks", type=_int_list, help="ring bond ranks, comma separated")
    parser.add_argument("--beta", type=float, help="graph regularization weight")
    parser.add_argument("--k", type=int, help="neighborhood size")
    parser.add_argument("--graph", choices=["hypergraph", "graph", "none"])
    parser.add_argument("--variant", choices=["exact", "lra"])
    parser.add_argument("--tucker-ranks", dest="tucker_ranks", type=_int_list,
                        help="Tucker ranks for the lra variant")
    parser.add_argument("--inner-iters", dest="inner_iters", type=int)
    parser.add_argument("--sweeps", type=int, help="maximum outer sweeps")
    parser.add_argument("--tol", type=float)
    parser.add_argument("--epsilon", type=float)
    parser.add_argument("--seed", type=int)


_SOLVER_DEFAULTS = dict(beta=0.1, k=5, graph="hypergraph", variant="exact",
                        tucker_ranks=None, inner_iters=20, sweeps=200,
                        tol=1e-6, epsilon=1e-12, seed=0)


def solver_config_from_args(args):
    merged = dict(_SOLVER_DEFAULTS)
    if args.config:
        merged.update(load_config_file(args.config))
    for key in _SOLVER_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag
    if merged.get("ranks") is None:
        raise ValueError("ranks are required (flag --ranks or config file)")
    return SolverConfig(
        ranks=merged["ranks"],
        beta=merged["beta"],
        k_neighbors=merged["k"],
        inner_iters=merged["inner_iters"],
        max_sweeps=merged["sweeps"],
        tol=merged["tol"],
        variant=merged["variant"],
        tucker_ranks=merged["tucker_ranks"],
        graph_mode=merged["graph"],
        epsilon=merged["epsilon"],
        seed=merged["seed"],
    )


def _config_echo(config):
    return {
        "ranks": config.ranks,
        "beta": config.beta,
        "k_neighbors": config.k_neighbors,
        "inner_iters": config.inner_iters,
        "max_sweeps": config.max_sweeps,
        "tol": config.tol,
        "variant": config.variant,
        "tucker_ranks": config.tucker_ranks,
        "graph_mode": config.graph_mode,
        "epsilon": config.epsilon,
        "seed": config.seed,
    }


def _write_trace_csv(path, result):
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["sweep", "objective", "relative_fit", "elapsed_seconds"])
        for i, (obj, fit, sec) in enumerate(
            zip(result.objective_trace, result.fit_trace, result.elapsed_trace)
        ):
            writer.writerow([i, repr(float(obj)), repr(float(fit)), f"{sec:.6f}"])


def _write_trace_svg(path, values):
    # single-polyline chart, no dependencies
    w, h, pad = 640, 360, 40
    lo, hi = min(values), max(values)
    span = (hi - lo) or 1.0
    pts = []
    for i, v in enumerate(values):
        px = pad + (w - 2 * pad) * (i / max(1, len(values) - 1))
        py = h - pad - (h - 2 * pad) * ((v - lo) / span)
        pts.append(f"{px:.2f},{py:.2f}")
    svg = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">\n'
        f'<rect width="{w}" height="{h}" fill="white"/>\n'
        f'<polyline fill="none" stroke="black" points="{" ".join(pts)}"/>\n'
        "</svg>\n"
    )
    Path(path).write_text(svg, encoding="utf-8")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_synth(args):
    out = Path(args.out)
    if args.kind == "tr-exact":
        if not args.ranks:
            raise ValueError("tr-exact needs --ranks")
        x = ring_tensor(args.shape, args.ranks, args.seed)
    elif args.kind == "tucker-exact":
        if not args.ranks:
            raise ValueError("tucker-exact needs --ranks")
        x = tucker_tensor(args.shape, args.ranks, args.seed)
    else:
        x, labels = cluster_tensor(args.shape, args.classes, args.per_class,
                                   args.spread, args.seed)
        labels_out = args.labels_out or out.with_suffix(".labels.txt")
        write_labels(labels_out, labels)
    write_tensor(out, x)
    print(f"wrote {out} shape={'x'.join(map(str, x.shape))}")
    return 0


def _load_input(args):
    x = read_tensor(args.input)
    if args.truncate_negatives:
        x = np.maximum(x, 0.0)
    return x


def cmd_decompose(args):
    x = _load_input(args)
    config = solver_config_from_args(args)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    result = factorize(x, config)
    for i, core in enumerate(result.cores):
        write_tensor(out_dir / f"core{i}.ntf", core)
    record = {
        "command": "decompose",
        "input": str(args.input),
        "config": _config_echo(config),
        "seed": config.seed,
        "sweeps_run": result.sweeps_run,
        "converged": result.converged,
        "wall_times": result.wall_times,
        "objective_trace": result.objective_trace,
        "fit_trace": result.fit_trace,
    }
    (out_dir / "record.json").write_text(json.dumps(record, indent=2) + "\n")
    _write_trace_csv(out_dir / "trace.csv", result)
    if args.svg:
        _write_trace_svg(out_dir / "objective.svg", result.objective_trace)
    print(f"decomposed into {out_dir} (fit {result.fit_trace[-1]:.6g}, "
          f"{result.sweeps_run} sweeps)")
    return 0


def cmd_cluster(args):
    x = _load_input(args)
    labels = read_labels(args.labels)
    if len(labels) != x.shape[-1]:
        raise ValueError(
            f"{len(labels)} labels for {x.shape[-1]} samples along the last mode"
        )
    config = solver_config_from_args(args)
    result = factorize(x, config)
    features = result.feature_matrix()
    n_clusters = len(set(labels.tolist()))
    reps = []
    t0 = time.perf_counter()
    for rep in range(args.repetitions):
        rep_seed = args.cluster_seed + rep
        best, _, per_restart = kmeans(features, n_clusters, seed=rep_seed,
                                      restarts=args.restarts, return_all=True)
        rep_record = {
            "seed": rep_seed,
            "best": {
                "acc": accuracy(labels, best),
                "nmi": nmi(labels, best),
                "pur": purity(labels, best),
            },
            "restart_mean": {
                "acc": statistics.fmean(accuracy(labels, l) for l in per_restart),
                "nmi": statistics.fmean(nmi(labels, l) for l in per_restart),
                "pur": statistics.fmean(purity(labels, l) for l in per_restart),
            },
        }
        reps.append(rep_record)
    cluster_seconds = time.perf_counter() - t0
    record = {
        "command": "cluster",
        "input": str(args.input),
        "config": _config_echo(config),
        "seed": config.seed,
        "n_clusters": n_clusters,
        "repetitions": reps,
        "wall_times": dict(result.wall_times, clustering=cluster_seconds),
        "sweeps_run": result.sweeps_run,
        "objective_trace": result.objective_trace,
        "fit_trace": result.fit_trace,
    }
    for metric in ("acc", "nmi", "pur"):
        values = [r["best"][metric] for r in reps]
        record[f"{metric}_mean"] = statistics.fmean(values)
        if len(values) >= 2:
            record[f"{metric}_std"] = statistics.stdev(values)
    Path(args.out).write_text(json.dumps(record, indent=2) + "\n")
    line = ", ".join(f"{m}={record[f'{m}_mean']:.4f}" for m in ("acc", "nmi", "pur"))
    print(f"wrote {args.out} ({line} over {args.repetitions} repetitions)")
    return 0


def cmd_noise(args):
    x = read_tensor(args.input)
    noisy = add_gaussian_noise(x, args.snr_db, seed=args.seed,
                               truncate=args.truncate)
    write_tensor(args.out, noisy)
    print(f"wrote {args.out} (snr {args.snr_db} dB)")
    return 0


def cmd_bench(args):
    sizes = sorted(args.sizes)
    rows = []
    for size in sizes:
        shape = (size,) * args.order
        x = np.random.default_rng(args.seed).random(shape)
        per_sweep = {}
        for variant in ("exact", "lra"):
            config = SolverConfig(
                ranks=[args.rank] * args.order,
                beta=args.beta,
                k_neighbors=args.k,
                inner_iters=args.inner_iters,
                max_sweeps=args.sweeps,
                tol=0.0,
                variant=variant,
                tucker_ranks=[min(args.tucker_rank, size)] * args.order
                if variant == "lra" else None,
                graph_mode="hypergraph" if args.beta > 0 else "none",
                seed=args.seed,
                compute_trace=False,
            )
            result = factorize(x, config)
            per_sweep[variant] = result.wall_times["updates"] / result.sweeps_run
        rows.append([size, per_sweep["exact"], per_sweep["lra"],
                     per_sweep["lra"] / per_sweep["exact"]])
    with open(args.out, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["size", "exact_seconds_per_sweep",
                         "lra_seconds_per_sweep", "ratio"])
        for row in rows:
            writer.writerow([row[0]] + [f"{v:.6f}" for v in row[1:]])
    print(f"wrote {args.out}")
    return 0


def cmd_export_basis(args):
    first = read_tensor(args.core_a)
    second = read_tensor(args.core_b)
    basis = merge_cores(first, second)
    w, h = args.geometry
    if w * h != basis.shape[1]:
        raise ValueError(
            f"geometry {w}x{h} does not match basis length {basis.shape[1]}"
        )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    count = 0
    for r0 in range(basis.shape[0]):
        for r1 in range(basis.shape[2]):
            image = basis[r0, :, r1].reshape(h, w)
            write_pgm(out_dir / f"basis_{r0}_{r1}.pgm", image)
            count += 1
    print(f"wrote {count} images to {out_dir}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _geometry(text):
    w, h = text.lower().split("x")
    return int(w), int(h)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hyperring",
        description="Nonnegative tensor ring factorization with hypergraph "
                    "manifold regularization",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic tensor file")
    p.add_argument("--kind", required=True,
                   choices=["tr-exact", "tucker-exact", "clusters"])
    p.add_argument("--shape", type=_int_list, required=True,
                   help="tensor extents (for clusters: the leading modes)")
    p.add_argument("--ranks", type=_int_list)
    p.add_argument("--classes", type=int, default=5)
    p.add_argument("--per-class", dest="per_class", type=int, default=20)
    p.add_argument("--spread", type=float, default=0.1,
                   help="uniform perturbation amplitude for clusters")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--labels-out", dest="labels_out")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("decompose", help="factorize a tensor file")
    p.add_argument("input")
    _add_solver_flags(p)
    p.add_argument("--truncate-negatives", action="store_true",
                   help="clamp negative input entries to zero first")
    p.add_argument("--out-dir", dest="out_dir", required=True)
    p.add_argument("--svg", action="store_true",
                   help="also write an objective-trace SVG chart")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("cluster", help="factorize, cluster features, score")
    p.add_argument("input")
    p.add_argument("labels")
    _add_solver_flags(p)
    p.add_argument("--truncate-negatives", action="store_true")
    p.add_argument("--repetitions", type=int, default=10)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--cluster-seed", dest="cluster_seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("noise", help="corrupt a tensor file at a target SNR")
    p.add_argument("input")
    p.add_argument("--snr-db", dest="snr_db", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--truncate", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_noise)

    p = sub.add_parser("bench", help="time exact vs low-rank-accelerated sweeps")
    p.add_argument("--sizes", type=_int_list, required=True,
                   help="cubic tensor extents to sweep over")
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--rank", type=int, default=4)
    p.add_argument("--tucker-rank", dest="tucker_rank", type=int, default=8)
    p.add_argument("--sweeps", type=int, default=20)
    p.add_argument("--inner-iters", dest="inner_iters", type=int, default=20)
    p.add_argument("--beta", type=float, default=0.1)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("export-basis", help="write basis columns as PGM images")
    p.add_argument("core_a", help="first core tensor file")
    p.add_argument("core_b", help="second core tensor file")
    p.add_argument("--geometry", type=_geometry, required=True,
                   help="WxH; basis vectors reshape to H rows by W columns")
    p.add_argument("--out-dir", dest="out_dir", required=True)
    p.set_defaults(func=cmd_export_basis)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # machine-readable failure line
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
