"""
opineq command line.

    opineq check --matrix A.json --map corner --function power:4
    opineq kantorovich --matrix A.json --map trace --m 2 --M 8
    opineq fuzz --seed 42 --trials 100 --dims 2..6 --out report.json
    opineq paper-examples
    opineq entropy --random 50 --p 0.5

Exit codes: 0 when every checked inequality holds, 1 on a verdict failure,
2 on usage or input errors.
"""
import argparse
import os
import sys
from typing import List, Optional, Sequence, Tuple

from src.constants import (CAMPAIGN_CONFIG_FILE_PATH, CAMPAIGN_SLACK_TABLE_FILE_NAME, DEFAULT_SEED,
                           LOEWNER_REL_TOL, SEED_ENV_KEY)
from src.entity.artifact_entity import InequalityReport
from src.entity.config_entity import CheckConfig, EntropyConfig, FuzzOutputConfig, TrialSpec
from src.exception import BadParameter, MyException, OperatorInequalityError
from src.logger import logging
from src.pipline.check_pipeline import CheckPipeline
from src.pipline.entropy_pipeline import EntropyPipeline
from src.pipline.fuzz_pipeline import FuzzPipeline
from src.pipline.reference_examples_pipeline import ReferenceExamplesPipeline
from src.utils.main_utils import dump_json, read_yaml_file

EXIT_OK = 0
EXIT_VERDICT_FAILURE = 1
EXIT_USAGE = 2

KANTOROVICH_FUNCTION = "power:-1"


class _ArgumentParser(argparse.ArgumentParser):
    """argparse exits on its own; raising lets main() own the exit code."""

    def error(self, message):
        raise BadParameter(f"{self.prog}: {message}")


def _fmt(value) -> str:
    return f"{value:.6g}"


def _describe(report) -> str:
    status = "holds" if report.holds else "FAILS"
    if isinstance(report, InequalityReport) and report.lhs.dim == 1:
        return f"  {report.label}: {_fmt(report.lhs.item())} <= {_fmt(report.rhs.item())}  [{status}]"
    verdict = report.verdict
    return (f"  {report.label}: {verdict.relation.value}, gap eigenvalues in "
            f"[{_fmt(verdict.gap_min_eig)}, {_fmt(verdict.gap_max_eig)}]  [{status}]")


def parse_dims(text: str) -> Tuple[int, int]:
    low, sep, high = text.partition("..")
    try:
        dims = (int(low), int(high)) if sep else (int(low), int(low))
    except ValueError:
        raise BadParameter(f"--dims expects lo..hi, got {text!r}") from None
    return dims


'''
Subcommands
'''


def cmd_check(args, kantorovich: bool = False) -> int:
    config = CheckConfig(
        matrix_file_path=args.matrix,
        map_spec=args.map,
        function_spec=KANTOROVICH_FUNCTION if kantorovich else args.function,
        m=args.m, M=args.M,
        tolerance=args.tol,
        as_json=args.json,
        kantorovich=kantorovich,
    )
    artifact = CheckPipeline(config).run_pipeline()
    if config.as_json:
        print(dump_json(artifact.to_dict()))
    else:
        print(f"{artifact.function} under {artifact.map_name} on [{_fmt(artifact.m)}, {_fmt(artifact.M)}], "
              f"alpha = {_fmt(artifact.alpha)}, beta = {_fmt(artifact.beta)}")
        for report in artifact.reports:
            print(_describe(report))
        for report in artifact.informational:
            print(f"  {report.label}: {report.verdict.relation.value} (informational)")
        for note in artifact.notes:
            print(f"  note: {note}")
    return EXIT_OK if artifact.holds else EXIT_VERDICT_FAILURE


def cmd_fuzz(args) -> int:
    overrides = dict(seed=args.seed, trials=args.trials, tolerance=args.tol, workers=args.workers,
                     dim_range=parse_dims(args.dims) if args.dims else None)
    content = read_yaml_file(args.config) if os.path.exists(args.config) else {}
    spec = TrialSpec.from_yaml(content, **overrides)

    output = FuzzOutputConfig(report_file_path=args.out)
    if args.csv:
        output.slack_table_file_path = args.csv if args.csv != "-" else os.path.join(
            os.path.dirname(output.report_file_path), CAMPAIGN_SLACK_TABLE_FILE_NAME)
    artifact = FuzzPipeline(spec, output).run_pipeline()

    report = artifact.report
    if args.json:
        print(dump_json(report.to_dict()))
    else:
        print(f"seed {report.seed}, {report.trials} trials, dims {report.dim_range[0]}..{report.dim_range[1]}")
        for name, summary in sorted(report.summaries.items()):
            worst = "-" if summary.worst_slack is None else _fmt(summary.worst_slack)
            print(f"  {name:<26} {summary.kind:<8} pass {summary.passed:>5}  fail {summary.failed:>4}  "
                  f"skipped {summary.skipped:>5}  worst slack {worst}")
        print(f"theorem failures: {report.theorem_failures}, probe violations: {report.probe_violations}")
        print(f"report: {artifact.report_file_path}")
        if artifact.slack_table_file_path:
            print(f"slack table: {artifact.slack_table_file_path}")
    return EXIT_OK if report.theorem_failures == 0 else EXIT_VERDICT_FAILURE


def cmd_paper_examples(args) -> int:
    artifact = ReferenceExamplesPipeline().run_pipeline()
    if args.json:
        print(dump_json(artifact.to_dict()))
    else:
        for check in artifact.checks:
            computed = _fmt(check.computed) if isinstance(check.computed, float) else check.computed
            status = "ok" if check.passed else "MISMATCH"
            print(f"  {check.section} / {check.label}: {computed} (expected {check.expected}, "
                  f"tolerance {check.tolerance:g})  [{status}]")
    return EXIT_OK if artifact.passed else EXIT_VERDICT_FAILURE


def cmd_entropy(args) -> int:
    config = EntropyConfig(rho_file_path=args.rho, random_count=args.random, p=args.p,
                           seed=args.seed if args.seed is not None else int(os.getenv(SEED_ENV_KEY, DEFAULT_SEED)),
                           as_json=args.json)
    artifact = EntropyPipeline(config).run_pipeline()
    if config.as_json:
        print(dump_json(artifact.to_dict()))
    else:
        print(f"{'#':>4} {'dim':>3} {'m':>10} {'M':>10} {'S':>10} {'S_p':>10} {'bound_p':>10} {'bound_vn':>10}")
        for row in artifact.rows:
            probes = [check.label for check in (row.corollary32, row.von_neumann) if not check.holds]
            flag = f"  VIOLATED (probe): {', '.join(probes)}" if probes else ""
            print(f"{row.index:>4} {row.dim:>3} {_fmt(row.m):>10} {_fmt(row.M):>10} {_fmt(row.entropy):>10} "
                  f"{_fmt(row.tsallis_entropy):>10} {_fmt(row.corollary32.bound):>10} "
                  f"{_fmt(row.von_neumann.bound):>10}{flag}")
    return EXIT_OK if artifact.holds else EXIT_VERDICT_FAILURE


def _add_check_arguments(parser: argparse.ArgumentParser, with_function: bool) -> None:
    parser.add_argument("--matrix", required=True, help="matrix file {\"dim\": n, \"data\": [...]}")
    parser.add_argument("--map", default="identity", help="corner[:k] | vecstate:<path> | trace | identity")
    if with_function:
        parser.add_argument("--function", default="power:2", help="catalog entry name[:params], e.g. power:3")
    parser.add_argument("--m", type=float, default=None, help="lower end of the interval (default: min eigenvalue)")
    parser.add_argument("--M", type=float, default=None, help="upper end of the interval (default: max eigenvalue)")
    parser.add_argument("--tol", type=float, default=LOEWNER_REL_TOL, help="relative Loewner tolerance")
    parser.add_argument("--json", action="store_true", help="print the JSON report")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="opineq", description="Numerical checks of non-convex Choi-Davis-Jensen bounds.")
    commands = parser.add_subparsers(dest="command", parser_class=_ArgumentParser)
    commands.required = True

    check = commands.add_parser("check", help="check the chord bounds on one (A, phi, f)")
    _add_check_arguments(check, with_function=True)

    kantorovich = commands.add_parser("kantorovich", help="check with f(t) = 1/t plus the Kantorovich bounds")
    _add_check_arguments(kantorovich, with_function=False)

    fuzz = commands.add_parser("fuzz", help="run a seeded randomized campaign")
    fuzz.add_argument("--seed", type=int, default=None, help=f"campaign seed (env {SEED_ENV_KEY} also works)")
    fuzz.add_argument("--trials", type=int, default=None)
    fuzz.add_argument("--dims", default=None, help="dimension range lo..hi")
    fuzz.add_argument("--out", default=None, help="JSON report path (default: under artifact/)")
    fuzz.add_argument("--csv", default=None, help="slack table path; '-' puts it next to the report")
    fuzz.add_argument("--tol", type=float, default=None)
    fuzz.add_argument("--workers", type=int, default=None)
    fuzz.add_argument("--config", default=CAMPAIGN_CONFIG_FILE_PATH)
    fuzz.add_argument("--json", action="store_true", help="print the JSON report as well")

    examples = commands.add_parser("paper-examples", help="reproduce the three worked examples")
    examples.add_argument("--json", action="store_true")

    entropy = commands.add_parser("entropy", help="entropies of density matrices and their lower bounds")
    source = entropy.add_mutually_exclusive_group(required=True)
    source.add_argument("--rho", default=None, help="density matrix file")
    source.add_argument("--random", type=int, default=None, help="number of seeded random density matrices")
    entropy.add_argument("--p", type=float, default=0.5)
    entropy.add_argument("--seed", type=int, default=None)
    entropy.add_argument("--json", action="store_true")
    return parser


COMMANDS = {
    "check": cmd_check,
    "kantorovich": lambda args: cmd_check(args, kantorovich=True),
    "fuzz": cmd_fuzz,
    "paper-examples": cmd_paper_examples,
    "entropy": cmd_entropy,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv: List[str] = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except OperatorInequalityError as e:
        logging.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except MyException as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
