"""Command-line front end: build, spectrum, verify, eigvec."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InputError, NumericalError, ParseError
from .graphs import (
    Digraph,
    WeightFunction,
    grover_weights,
    parse_edge_list,
    parse_graph_json,
    random_connected_graph,
    random_weights,
    validate_weights,
)
from .operators import (
    MODEL_FORMAT,
    WalkModel,
    build_model,
    model_from_json_dict,
    model_to_json_dict,
)
from .spectral import (
    DEFAULT_CLUSTER_TOL,
    DEFAULT_MATCH_TOL,
    DEFAULT_SPEC_TOL,
    DEFAULT_SUB_TOL,
    SpectralReport,
    _angular_distance,
    discriminant_spectrum,
    eigenbases_json_dict,
    full_report,
    report_to_csv_text,
)

ENV_TOL_OP = "QWSPEC_TOL_OP"

EXIT_OK = 0
EXIT_VERDICT_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_NUMERICAL_ERROR = 3


@dataclass
class RunConfig:
    """Resolved run options shared by the subcommands."""

    input_path: Path | None
    weights: str
    tol_norm: float
    tol_op: float | None
    rank_tol: float | None
    cluster_tol: float
    tol_match: float
    tol_sub: float
    output: Path | None
    csv: Path | None
    eigenbasis: Path | None
    embed_eigenbases: bool
    verify_lemmas: bool
    abstract: bool
    plot: bool
    figure: Path | None
    random_vertices: int | None
    seed: int


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"{text!r} is not strictly positive")
    return value


def _tol_op_from_env() -> float | None:
    raw = os.environ.get(ENV_TOL_OP)
    if raw is None:
        return None
    try:
        value = float(raw)
    except ValueError:
        raise InputError(f"{ENV_TOL_OP}={raw!r} is not a number") from None
    if not value > 0:
        raise InputError(f"{ENV_TOL_OP} must be strictly positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwspec",
        description=(
            "Build coined-walk operators from weighted graphs, compute and "
            "classify the full walk spectrum, and verify the operator "
            "identities the construction relies on."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, needs_input: bool = True):
        if needs_input:
            p.add_argument("input", type=Path, help="edge list, graph JSON, or model JSON")
        p.add_argument(
            "--weights",
            choices=("auto", "grover", "file", "random"),
            default="auto",
            help="weight scheme (auto = file weights when present, else grover)",
        )
        p.add_argument("--tol-norm", type=_positive_float, default=1e-10)
        p.add_argument("--tol-op", type=_positive_float, default=None)
        p.add_argument("--rank-tol", type=_positive_float, default=None)
        p.add_argument("--cluster-tol", type=_positive_float, default=DEFAULT_CLUSTER_TOL)
        p.add_argument("--tol-match", type=_positive_float, default=DEFAULT_MATCH_TOL)
        p.add_argument("--tol-sub", type=_positive_float, default=DEFAULT_SUB_TOL)
        p.add_argument("--seed", type=int, default=0)

    p_build = sub.add_parser("build", help="build a walk model and write it as JSON")
    add_common(p_build)
    p_build.add_argument("-o", "--output", type=Path, default=None)
    p_build.set_defaults(func=cmd_build)

    p_spec = sub.add_parser(
        "spectrum", help="compute the classified spectrum, report, CSV, and figure"
    )
    add_common(p_spec)
    p_spec.add_argument("-o", "--output", type=Path, default=None, help="report JSON path")
    p_spec.add_argument("--csv", type=Path, default=None, help="spectrum CSV path")
    p_spec.add_argument("--eigenbasis", type=Path, default=None, help="eigenbasis sidecar path")
    p_spec.add_argument("--embed-eigenbases", action="store_true")
    p_spec.add_argument("--figure", type=Path, default=None, help="figure output path")
    p_spec.add_argument("--no-plot", dest="plot", action="store_false")
    p_spec.add_argument(
        "--verify-lemmas",
        dest="verify_lemmas",
        action=argparse.BooleanOptionalAction,
        default=True,
    )
    p_spec.add_argument(
        "--abstract",
        action="store_true",
        help="treat the input as an abstract model (skip graph counting formulas)",
    )
    p_spec.set_defaults(func=cmd_spectrum, plot=True)

    p_verify = sub.add_parser("verify", help="run the identity verdict suite")
    add_common(p_verify, needs_input=False)
    p_verify.add_argument(
        "input", nargs="?", type=Path, default=None, help="graph or model input"
    )
    p_verify.add_argument(
        "--random",
        type=int,
        default=None,
        metavar="N",
        help="verify a seeded random connected graph on N vertices",
    )
    p_verify.set_defaults(func=cmd_verify)

    p_eig = sub.add_parser("eigvec", help="dump the eigenbasis of a chosen eigenvalue")
    add_common(p_eig)
    group = p_eig.add_mutually_exclusive_group(required=True)
    group.add_argument("--lam", type=str, default=None, help="walk eigenvalue as re[,im]")
    group.add_argument("--mu", type=float, default=None, help="discriminant eigenvalue")
    p_eig.add_argument("-o", "--output", type=Path, default=None)
    p_eig.set_defaults(func=cmd_eigvec)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    tol_op = getattr(args, "tol_op", None)
    if tol_op is None:
        tol_op = _tol_op_from_env()
    return RunConfig(
        input_path=getattr(args, "input", None),
        weights=getattr(args, "weights", "auto"),
        tol_norm=getattr(args, "tol_norm", 1e-10),
        tol_op=tol_op,
        rank_tol=getattr(args, "rank_tol", None),
        cluster_tol=getattr(args, "cluster_tol", DEFAULT_CLUSTER_TOL),
        tol_match=getattr(args, "tol_match", DEFAULT_MATCH_TOL),
        tol_sub=getattr(args, "tol_sub", DEFAULT_SUB_TOL),
        output=getattr(args, "output", None),
        csv=getattr(args, "csv", None),
        eigenbasis=getattr(args, "eigenbasis", None),
        embed_eigenbases=getattr(args, "embed_eigenbases", False),
        verify_lemmas=getattr(args, "verify_lemmas", True),
        abstract=getattr(args, "abstract", False),
        plot=getattr(args, "plot", False),
        figure=getattr(args, "figure", None),
        random_vertices=getattr(args, "random", None),
        seed=getattr(args, "seed", 0),
    )


# -- input resolution --------------------------------------------------------


def _load_input(config: RunConfig) -> tuple[WalkModel, Digraph | None]:
    """Resolve a path into a built model with its graph when there is one."""
    path = config.input_path
    if path is None:
        raise InputError("an input file is required")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    if str(path).endswith(".json"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {path}: {exc}") from None
        if isinstance(data, dict) and data.get("format") == MODEL_FORMAT:
            return model_from_json_dict(data), None
        graph, file_weights = parse_graph_json(text)
    else:
        graph, file_weights = parse_edge_list(text)
    model = _build_from_graph(config, graph, file_weights, str(path))
    return model, graph


def _build_from_graph(
    config: RunConfig,
    graph: Digraph,
    file_weights: WeightFunction | None,
    source: str,
) -> WalkModel:
    scheme = config.weights
    if scheme == "auto":
        scheme = "file" if file_weights is not None else "grover"
    if scheme == "file":
        if file_weights is None:
            raise InputError("input file carries no weights but --weights file was given")
        weights = file_weights
    elif scheme == "grover":
        weights = grover_weights(graph)
    elif scheme == "random":
        weights = random_weights(graph, np.random.default_rng(config.seed))
    else:
        raise InputError(f"unknown weight scheme {scheme!r}")
    check = validate_weights(graph, weights, config.tol_norm)
    if not check.passed:
        worst = float(check.vertex_defects.max(initial=0.0))
        detail = f"worst vertex defect {worst:.3e}"
        if check.zero_arcs:
            detail += f"; zero weight on arcs {list(check.zero_arcs)}"
        raise InputError(f"weights fail validation: {detail}")
    provenance = {"input": source, "weight_scheme": scheme}
    if scheme == "random":
        provenance["seed"] = config.seed
    return build_model(graph, weights, config.tol_op, provenance)


def _default_output(path: Path | None, stem_source: Path, suffix: str) -> Path:
    if path is not None:
        return path
    return stem_source.with_name(stem_source.stem + suffix)


def _write_text(path: Path, text: str) -> None:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None


def _report_json_text(report: SpectralReport, embed: bool) -> str:
    return json.dumps(report.to_json_dict(embed_eigenbases=embed), indent=2) + "\n"


# -- subcommands -------------------------------------------------------------


def cmd_build(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    model, _ = _load_input(config)
    out = _default_output(config.output, config.input_path, ".model.json")
    _write_text(out, json.dumps(model_to_json_dict(model), indent=2) + "\n")
    print(f"model written to {out}")
    return EXIT_OK


def _format_value(value: complex) -> str:
    return f"{value.real:+.12f}{value.imag:+.12f}i"


def format_report_table(report: SpectralReport, tol_match: float) -> str:
    """Human-readable table, one row per distinct eigenvalue."""
    rows: list[tuple[complex, int, list[str], list[str]]] = []
    for item in report.items:
        for row in rows:
            if _angular_distance(row[0], item.value) <= tol_match:
                rows[rows.index(row)] = (
                    row[0],
                    row[1] + item.multiplicity,
                    row[2] + [f"{item.origin}({item.multiplicity})"],
                    row[3]
                    + (
                        [f"{item.source_mu:.6g}"]
                        if item.source_mu is not None
                        else []
                    ),
                )
                break
        else:
            rows.append(
                (
                    item.value,
                    item.multiplicity,
                    [f"{item.origin}({item.multiplicity})"],
                    [f"{item.source_mu:.6g}"] if item.source_mu is not None else [],
                )
            )
    lines = [f"{'eigenvalue':>28}  {'mult':>4}  {'origin':<44} source mu"]
    for value, mult, origins, mus in rows:
        lines.append(
            f"{_format_value(value):>28}  {mult:>4}  {' + '.join(origins):<44} "
            f"{', '.join(sorted(set(mus)))}"
        )
    return "\n".join(lines)


def cmd_spectrum(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    model, graph = _load_input(config)
    if config.abstract:
        graph = None
    report = full_report(
        model,
        graph,
        cluster_tol=config.cluster_tol,
        tol_match=config.tol_match,
        tol_sub=config.tol_sub,
        rank_tol=config.rank_tol,
        verify=config.verify_lemmas,
        extra_provenance={"input": str(config.input_path)},
    )
    out = _default_output(config.output, config.input_path, ".report.json")
    _write_text(out, _report_json_text(report, config.embed_eigenbases))
    csv_path = _default_output(config.csv, config.input_path, ".spectrum.csv")
    _write_text(csv_path, report_to_csv_text(report))
    written = [str(out), str(csv_path)]
    if config.eigenbasis is not None:
        _write_text(
            config.eigenbasis, json.dumps(eigenbases_json_dict(report), indent=2) + "\n"
        )
        written.append(str(config.eigenbasis))
    if config.plot:
        from .plots import plot_spectrum

        fig_path = _default_output(config.figure, config.input_path, ".spectrum.png")
        plot_spectrum(report, fig_path)
        written.append(str(fig_path))
    print(format_report_table(report, config.tol_match))
    print(
        f"m_plus={report.m_plus} m_minus={report.m_minus} "
        f"M_plus={report.M_plus} M_minus={report.M_minus}"
    )
    failing = [name for name, v in report.verdicts.items() if not v.passed]
    if failing:
        print(f"FAILING verdicts: {', '.join(failing)}", file=sys.stderr)
    print("wrote " + ", ".join(written))
    return EXIT_OK if report.passed else EXIT_VERDICT_FAILURE


def cmd_verify(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    if config.random_vertices is not None:
        rng = np.random.default_rng(config.seed)
        graph = random_connected_graph(config.random_vertices, rng)
        scheme = config.weights if config.weights != "auto" else "random"
        if scheme == "grover":
            weights = grover_weights(graph)
        else:
            weights = random_weights(graph, rng)
        model = build_model(
            graph,
            weights,
            config.tol_op,
            {"input": f"random({config.random_vertices})", "weight_scheme": scheme,
             "seed": config.seed},
        )
    else:
        model, graph = _load_input(config)
    report = full_report(
        model,
        graph,
        cluster_tol=config.cluster_tol,
        tol_match=config.tol_match,
        tol_sub=config.tol_sub,
        rank_tol=config.rank_tol,
        verify=True,
    )
    width = max(len(name) for name in report.verdicts)
    for name, verdict in report.verdicts.items():
        status = "PASS" if verdict.passed else "FAIL"
        print(f"{name:<{width}}  {status}  residual {verdict.residual:.3e}")
    failed = sum(1 for v in report.verdicts.values() if not v.passed)
    print(f"{len(report.verdicts) - failed}/{len(report.verdicts)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_VERDICT_FAILURE


def cmd_eigvec(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    model, graph = _load_input(config)
    out = _default_output(config.output, config.input_path, ".eigvec.json")
    if args.mu is not None:
        spectrum = discriminant_spectrum(model, config.cluster_tol)
        hits = [e for e in spectrum if abs(e.value - args.mu) <= config.tol_match]
        if not hits:
            raise InputError(f"no discriminant eigenvalue within tolerance of {args.mu}")
        payload = {
            "format": "qwspec-eigvec",
            "space": "vertex",
            "mu": [e.value for e in hits],
            "bases": [e.basis.to_json_dict() for e in hits],
        }
    else:
        parts = args.lam.split(",")
        try:
            lam = complex(float(parts[0]), float(parts[1]) if len(parts) > 1 else 0.0)
        except (ValueError, IndexError):
            raise InputError(f"bad eigenvalue {args.lam!r}; expected re[,im]") from None
        report = full_report(
            model,
            graph,
            cluster_tol=config.cluster_tol,
            tol_match=config.tol_match,
            tol_sub=config.tol_sub,
            rank_tol=config.rank_tol,
            verify=False,
            oracle=False,
        )
        hits = report.items_at(lam, config.tol_match)
        if not hits:
            raise InputError(f"no walk eigenvalue within tolerance of {lam}")
        payload = {
            "format": "qwspec-eigvec",
            "space": "arc",
            "lam": [[item.value.real, item.value.imag] for item in hits],
            "origins": [item.origin for item in hits],
            "bases": [item.eigenbasis.to_json_dict() for item in hits],
        }
    _write_text(out, json.dumps(payload, indent=2) + "\n")
    print(f"eigenbasis written to {out}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except NumericalError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
