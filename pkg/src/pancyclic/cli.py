"""Command-line interface.

Subcommands: gen, adversary, spectrum, sweep, check, hypergraph.  Exit code
0 means every requested check passed, 1 means a check failed, 2 means a
usage or size-guard error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .adversaries import ADVERSARY_KINDS, AdversarySpec, apply_adversary
from .experiments import (
    CHECK_NAMES,
    ExperimentConfig,
    append_hypergraph_csv,
    run_lemma_checks,
    run_spectrum,
    run_threshold_sweep,
    write_spectrum_csv,
    write_sweep_csv,
)
from .graphs import read_edge_list, read_labeling, write_edge_list, write_labeling
from .hypergraph import GuardExceeded, build_shortcut_hypergraph
from .random_graphs import plant_hamilton

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file; flags override it")
    parser.add_argument("--n", type=int)
    parser.add_argument("--p", type=float)
    parser.add_argument("--C", type=float)
    parser.add_argument("--eps", type=float)
    parser.add_argument("--delta", type=float)
    parser.add_argument("--beta", type=float)
    parser.add_argument("--eps-prime", dest="eps_prime", type=float)
    parser.add_argument("--adversary", choices=ADVERSARY_KINDS)
    parser.add_argument("--keep", help="keep fraction, or comma list for sweep")
    parser.add_argument("--trials", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--guard-n", dest="guard_n", type=int)
    parser.add_argument("--l", type=int)
    parser.add_argument("--out", help="CSV output path")
    parser.add_argument("--json", dest="json_out", help="JSON report path")
    parser.add_argument(
        "--no-plot",
        action="store_true",
        help="skip the figure normally rendered next to the CSV",
    )


def _build_config(args: argparse.Namespace) -> ExperimentConfig:
    data: dict = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            data.update(json.load(fh))
    for key in (
        "n",
        "p",
        "C",
        "eps",
        "delta",
        "beta",
        "eps_prime",
        "adversary",
        "trials",
        "seed",
        "guard_n",
        "l",
    ):
        val = getattr(args, key, None)
        if val is not None:
            data[key] = val
    keep = getattr(args, "keep", None)
    if keep is not None and "," not in keep:
        data["keep"] = float(keep)
    # an explicit flag wins over the config file; with both present, p wins
    flag_p = getattr(args, "p", None)
    flag_c = getattr(args, "C", None)
    if flag_p is not None and flag_c is None:
        data["C"] = None
    elif flag_c is not None and flag_p is None:
        data["p"] = None
    elif data.get("p") is not None:
        data["C"] = None
    return ExperimentConfig.from_dict(data)


def _keep_list(args: argparse.Namespace) -> list[float]:
    raw = getattr(args, "keep", None)
    if not raw:
        raise ValueError("sweep needs --keep with a comma-separated fraction list")
    return [float(x) for x in raw.split(",") if x.strip()]


def _figure_path(csv_path: str) -> str:
    stem, _ = os.path.splitext(csv_path)
    return stem + ".png"


def cmd_gen(args: argparse.Namespace) -> int:
    config = _build_config(args)
    graph, labeling = plant_hamilton(config.gnp(), config.trial_seed(0))
    if not args.out:
        print("gen needs --out for the edge list", file=sys.stderr)
        return EXIT_USAGE
    write_edge_list(graph, args.out)
    if args.labeling_out:
        write_labeling(labeling, args.labeling_out)
    print(f"wrote {graph.n} vertices, {graph.edge_count} edges to {args.out}")
    return EXIT_OK


def cmd_adversary(args: argparse.Namespace) -> int:
    config = _build_config(args)
    if args.graph_in:
        graph = read_edge_list(args.graph_in)
        labeling = (
            read_labeling(args.labeling_in)
            if args.labeling_in
            else None
        )
        if labeling is None:
            from .graphs import CycleLabeling

            labeling = CycleLabeling.identity(graph.n)
    else:
        graph, labeling = plant_hamilton(config.gnp(), config.trial_seed(0))
    spec = AdversarySpec(config.adversary, config.keep)
    out, record = apply_adversary(spec, graph, labeling, config.trial_seed(0).child(1))
    if args.out:
        write_edge_list(out, args.out)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            json.dump(record, fh, sort_keys=True, indent=2)
            fh.write("\n")
    print(json.dumps(record, sort_keys=True))
    return EXIT_OK


def cmd_spectrum(args: argparse.Namespace) -> int:
    config = _build_config(args)
    report = run_spectrum(config)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(report.to_json() + "\n")
    if args.out:
        write_spectrum_csv(report, args.out)
        if not args.no_plot:
            from .figures import render_spectrum_figure

            render_spectrum_figure(report, _figure_path(args.out))
    failed = report.aggregate["failed_trials"]
    print(
        f"spectrum: {report.aggregate['trials']} trials, "
        f"mean found-ratio {report.aggregate['mean_found_ratio']:.4f}, "
        f"{failed} failed"
    )
    return EXIT_OK if failed == 0 else EXIT_CHECK_FAILED


def cmd_sweep(args: argparse.Namespace) -> int:
    config = _build_config(args)
    fractions = _keep_list(args)
    report = run_threshold_sweep(config, fractions)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(report.to_json() + "\n")
    if args.out:
        write_sweep_csv(report, args.out)
        if not args.no_plot:
            from .figures import render_sweep_figure

            render_sweep_figure(report, _figure_path(args.out))
    for row in report.rows:
        print(
            f"keep={row['keep']:.3f} mean_found_ratio={row['mean_found_ratio']:.4f} "
            f"std={row['std_found_ratio']:.4f}"
        )
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    config = _build_config(args)
    report = run_lemma_checks(args.which, config)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(report.to_json() + "\n")
    state = "pass" if report.passed else "FAIL"
    failures = [inst for inst in report.instances if not inst.get("passed", True)]
    print(f"check {report.name}: {state} ({len(report.instances)} instances, "
          f"{len(failures)} failures)")
    for note in report.notes:
        print(f"  note: {note}")
    for inst in failures[:5]:
        print(f"  counterexample: {inst}")
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_hypergraph(args: argparse.Namespace) -> int:
    config = _build_config(args)
    hyper = build_shortcut_hypergraph(config.n, config.l, config.guard_n)
    stats = {
        "n": hyper.n,
        "l": hyper.l,
        "vertices": hyper.vertex_count,
        "hyperedges": hyper.edge_count,
        "c": hyper.density_constant,
    }
    if args.json_out:
        with open(args.json_out, "w") as fh:
            json.dump(stats, fh, sort_keys=True, indent=2)
            fh.write("\n")
    if args.out:
        append_hypergraph_csv(args.out, hyper.n, hyper.l, hyper.edge_count)
    print(json.dumps(stats, sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pancyclic",
        description="Cycle-spectrum certificates and resilience experiments "
        "on graphs with a planted Hamilton cycle",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="sample a planted graph to an edge list")
    _add_common(p_gen)
    p_gen.add_argument("--labeling-out", dest="labeling_out")
    p_gen.set_defaults(func=cmd_gen)

    p_adv = sub.add_parser("adversary", help="apply an edge-deletion adversary")
    _add_common(p_adv)
    p_adv.add_argument("--in", dest="graph_in", help="input edge list")
    p_adv.add_argument("--labeling", dest="labeling_in", help="labeling file")
    p_adv.set_defaults(func=cmd_adversary)

    p_spec = sub.add_parser("spectrum", help="run seeded spectrum trials")
    _add_common(p_spec)
    p_spec.set_defaults(func=cmd_spectrum)

    p_sweep = sub.add_parser("sweep", help="threshold sweep over keep fractions")
    _add_common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_check = sub.add_parser("check", help="run one verification check")
    _add_common(p_check)
    p_check.add_argument("--which", required=True, choices=CHECK_NAMES)
    p_check.set_defaults(func=cmd_check)

    p_hyp = sub.add_parser("hypergraph", help="enumerate the shortcut hypergraph")
    _add_common(p_hyp)
    p_hyp.set_defaults(func=cmd_hypergraph)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"guard error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
