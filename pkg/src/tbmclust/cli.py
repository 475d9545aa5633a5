"""Command-line front end.

Subcommands: sample, cluster, sweep, fit-boundary, embedding-study. Every
command is driven by a single JSON config document (overridable with repeated
`--set key=value` flags using dotted paths), so runs stay archivable. All
randomness flows from seeds inside the configs.

Exit codes: 0 ok, 2 invalid config, 3 I/O failure, 4 unknown algorithm,
5 degenerate statistics.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .algorithms import ALGORITHM_NAMES, UnknownAlgorithmError, cluster_tensor
from .cluster import misclassification
from .experiments import (
    NAMED_CORES,
    ConvergenceError,
    DegenerateLabelsError,
    SweepGrid,
    embedding_study,
    fit_boundary,
    log_spaced_ints,
    read_results_csv,
    run_sweep,
    write_embeddings_tsv,
    write_results_csv,
)
from .model import TbmSpec, sample
from .validation import as_tensor

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_UNKNOWN_ALGORITHM = 4
EXIT_DEGENERATE = 5


class ConfigError(ValueError):
    pass


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as err:
        raise OSError(f"cannot read {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise ConfigError(f"invalid JSON in {path}: {err}") from err


def _write_json(doc, path):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    except OSError as err:
        raise OSError(f"cannot write {path}: {err}") from err


def _apply_overrides(doc: dict, overrides) -> dict:
    """Apply `--set a.b.c=value` overrides; values parse as JSON when possible."""
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, raw = item.split("=", 1)
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        node = doc
        parts = key.split(".")
        for part in parts[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise ConfigError(f"cannot override through non-object key {part!r}")
        node[parts[-1]] = value
    return doc


def _resolve_core(value):
    if isinstance(value, str):
        if value not in NAMED_CORES:
            raise ConfigError(
                f"unknown named core {value!r}; choose from {sorted(NAMED_CORES)}"
            )
        return NAMED_CORES[value]
    return as_tensor(value, "core")


def _values_or_range(doc, key, integer=False):
    if key in doc:
        return doc[key]
    rng = doc.get(key.replace("_values", "_range"))
    if rng is None:
        raise ConfigError(f"config needs {key} or {key.replace('_values', '_range')}")
    if integer:
        return log_spaced_ints(
            int(rng["lo"]), int(rng["hi"]), int(rng["count"]),
            multiple_of=int(rng.get("multiple_of", 2)),
        )
    return np.geomspace(float(rng["lo"]), float(rng["hi"]), int(rng["count"])).tolist()


def cmd_sample(args) -> int:
    config = _apply_overrides(_load_json(args.config), args.set)
    spec = TbmSpec.from_json(config["spec"])
    seed = int(config.get("seed", 0))
    tensor = sample(spec, seed)
    _write_json(
        {
            "dims": list(tensor.shape),
            "data": [float(v) for v in tensor.ravel()],
            "spec": spec.to_json(),
            "seed": seed,
        },
        args.out,
    )
    return EXIT_OK


def _load_tensor(path):
    doc = _load_json(path)
    dims = tuple(int(n) for n in doc["dims"])
    data = np.asarray(doc["data"], dtype=float)
    if data.size != int(np.prod(dims)):
        raise ConfigError(f"tensor file {path}: data length does not match dims")
    return data.reshape(dims), doc


def cmd_cluster(args) -> int:
    params = _apply_overrides(_load_json(args.config) if args.config else {}, args.set)
    if args.algorithm not in ALGORITHM_NAMES:
        raise UnknownAlgorithmError(args.algorithm)
    tensor, _ = _load_tensor(args.tensor)
    n_clusters = int(params.get("n_clusters", 2))
    assignment = cluster_tensor(
        tensor,
        args.algorithm,
        mode=int(params.get("mode", 1)),
        n_clusters=n_clusters,
        rho=params.get("rho"),
        trim_threshold=params.get("trim_threshold"),
        c_trim=float(params.get("c_trim", 3.0)),
        hsc_init=params.get("hsc_init", "vanilla-svd"),
        seed=int(params.get("seed", 0)),
        restarts=int(params.get("restarts", 20)),
    )
    out = {
        "labels": assignment.labels.tolist(),
        "centroids": [[float(v) for v in row] for row in assignment.centroids],
        "cost": assignment.cost,
    }
    truth = params.get("truth")
    if truth is not None:
        out["loss"] = misclassification(truth, assignment.labels, n_clusters)
    _write_json(out, args.out)
    return EXIT_OK


def _grid_from_config(config) -> SweepGrid:
    return SweepGrid(
        n_values=_values_or_range(config, "n_values", integer=True),
        rho_values=_values_or_range(config, "rho_values"),
        core=_resolve_core(config["core"]),
        algorithms=tuple(config.get("algorithms", ALGORITHM_NAMES)),
        replicates=int(config.get("replicates", 5)),
        noise=config.get("noise", "bernoulli"),
        master_seed=int(config.get("master_seed", 0)),
        accuracy_threshold=float(config.get("accuracy_threshold", 0.9)),
        restarts=int(config.get("restarts", 20)),
        c_trim=float(config.get("c_trim", 3.0)),
        hsc_init=config.get("hsc_init", "vanilla-svd"),
        measure_time=bool(config.get("measure_time", False)),
    )


def cmd_sweep(args) -> int:
    config = _apply_overrides(_load_json(args.config), args.set)
    grid = _grid_from_config(config)
    unknown = [a for a in grid.algorithms if a not in ALGORITHM_NAMES]
    if unknown:
        raise UnknownAlgorithmError(unknown[0])
    results = run_sweep(grid, jobs=max(1, args.jobs))
    write_results_csv(results, args.out)
    return EXIT_OK


def cmd_fit_boundary(args) -> int:
    results = read_results_csv(args.csv)
    if args.algorithm not in ALGORITHM_NAMES:
        raise UnknownAlgorithmError(args.algorithm)
    fit = fit_boundary(results, args.algorithm, threshold=args.threshold)
    _write_json(fit.to_json(), args.out)
    return EXIT_OK


def cmd_embedding_study(args) -> int:
    config = _apply_overrides(_load_json(args.config), args.set)
    results = embedding_study(
        n=int(config["n"]),
        rho_values=[float(r) for r in _values_or_range(config, "rho_values")],
        core=_resolve_core(config.get("core", "overlap")),
        master_seed=int(config.get("master_seed", 0)),
        noise=config.get("noise", "bernoulli"),
        c_trim=float(config.get("c_trim", 3.0)),
    )
    for algorithm in ("hollow-svd", "hsc"):
        write_embeddings_tsv(results, f"{args.out}.{algorithm}.tsv", algorithm)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tbmclust",
        description="Sparse tensor block model clustering and phase-transition sweeps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="sample a data tensor from a block model spec")
    p.add_argument("config", help="JSON config with {spec, seed}")
    p.add_argument("--out", required=True)
    p.add_argument("--set", action="append", metavar="KEY=VALUE")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("cluster", help="cluster a sampled tensor file")
    p.add_argument("tensor", help="tensor JSON file (from `sample`)")
    p.add_argument("--algorithm", required=True)
    p.add_argument("--config", help="JSON with mode/n_clusters/seed/... and optional truth")
    p.add_argument("--set", action="append", metavar="KEY=VALUE")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("sweep", help="run an (n, rho) accuracy sweep to CSV")
    p.add_argument("config", help="JSON sweep grid config")
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--set", action="append", metavar="KEY=VALUE")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fit-boundary", help="fit the log-log decision boundary from a sweep CSV")
    p.add_argument("csv")
    p.add_argument("--algorithm", required=True)
    p.add_argument("--threshold", type=float, default=0.9)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fit_boundary)

    p = sub.add_parser("embedding-study", help="emit 2-D embeddings around the transition")
    p.add_argument("config", help="JSON with {n, rho_values, core, master_seed}")
    p.add_argument("--out", required=True, help="output prefix; writes <out>.<algorithm>.tsv")
    p.add_argument("--set", action="append", metavar="KEY=VALUE")
    p.set_defaults(func=cmd_embedding_study)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnknownAlgorithmError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_UNKNOWN_ALGORITHM
    except (DegenerateLabelsError, ConvergenceError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DEGENERATE
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, ValueError, KeyError, TypeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
