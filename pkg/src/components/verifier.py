"""
Seeded random instances and fuzz campaigns over every registered inequality.

Trial i of a campaign draws everything from SplitMix64(derive_seed(spec.seed, i)), so
a trial can be replayed alone and parallel runs match serial ones. Each registered
inequality has a kind: "theorem" entries must hold, "probe" entries are empirical
claims whose violations are collected with reproducers without failing the campaign.
"""
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.components import cdj_bounds, perspectives_entropies as pe
from src.components.positive_maps import build_map
from src.components.scalar_functions import parse_function_spec
from src.components.spectral_core import matrix_sqrt_inv_sqrt
from src.constants import (DENSITY_EIGEN_FLOOR, ENDPOINT_FORCING_PERIOD, GIVENS_PASSES, SANDWICH_A_SCALE,
                           SANDWICH_EIGEN_FLOOR_REL)
from src.entity.artifact_entity import (CampaignReport, FailureRecord, InequalitySummary, SlackRecord)
from src.entity.config_entity import TrialSpec
from src.entity.operator_pair import DensityOperator, OperatorPair
from src.entity.symmetric_matrix import SymmetricMatrix
from src.exception import (BadParameter, NonPositiveConstant, NonPositiveFunction, NotStrictlyConvex,
                           OperatorInequalityError)
from src.logger import logging
from src.utils.splitmix import SplitMix64, derive_seed

THEOREM = "theorem"
PROBE = "probe"

REGISTRY: Dict[str, str] = {
    "lemma_i": THEOREM,
    "lemma_ii": THEOREM,
    "lemma_iii": THEOREM,
    "lemma_iv": THEOREM,
    "theorem1_upper": THEOREM,
    "theorem1_converse": THEOREM,
    "theorem2_lower": THEOREM,
    "theorem2_upper": THEOREM,
    "kversion_lower": THEOREM,
    "kversion_upper": THEOREM,
    "corollary1": THEOREM,
    "power_corollary": THEOREM,
    "improved_kantorovich": THEOREM,
    "kantorovich_improvement": THEOREM,
    "prop31_lower": THEOREM,
    "prop31_upper": THEOREM,
    "prop32_lower": THEOREM,
    "prop32_upper": THEOREM,
    "tsallis_lower": THEOREM,
    "tsallis_upper": THEOREM,
    "relentropy_lower": THEOREM,
    "relentropy_upper": THEOREM,
    "remark32_lower": THEOREM,
    "remark32_upper": THEOREM,
    "remark32_dp_bound": THEOREM,
    "fyk_relation": THEOREM,
    "corollary32": PROBE,
    "von_neumann_bound": PROBE,
}

# skip reasons: the hypotheses of the inequality do not hold on this instance
SKIPPABLE = (NonPositiveFunction, NonPositiveConstant, NotStrictlyConvex)


'''
Random instances
'''


def _spectrum(rng: SplitMix64, dim: int, m: float, M: float, force_endpoints: bool) -> np.ndarray:
    values = rng.uniform_array(dim, m, M)
    if force_endpoints:
        low, high = rng.permutation(dim)[:2]
        values[low], values[high] = m, M
    return values


def _conjugate(rng: SplitMix64, values: np.ndarray) -> SymmetricMatrix:
    Q = rng.orthogonal(values.size, GIVENS_PASSES)
    return SymmetricMatrix.from_array((Q * values) @ Q.T)


def random_symmetric_with_spectrum(seed: int, dim: int, m: float, M: float,
                                   force_endpoints: Optional[bool] = None) -> SymmetricMatrix:
    """
    Q diag(lambda) Q^T with lambda uniform in [m, M] and Q a product of Givens rotations.
    When force_endpoints is None it is decided by the seed, once in every few seeds.
    """
    if not m < M:
        raise BadParameter(f"need m < M, got m={m}, M={M}")
    if dim < 2:
        raise BadParameter(f"need dim >= 2, got {dim}")
    rng = SplitMix64(seed)
    if force_endpoints is None:
        force_endpoints = seed % ENDPOINT_FORCING_PERIOD == 0
    return _conjugate(rng, _spectrum(rng, dim, m, M, force_endpoints))


def random_density(seed: int, dim: int) -> DensityOperator:
    if dim < 2:
        raise BadParameter(f"need dim >= 2, got {dim}")
    rng = SplitMix64(seed)
    weights = rng.uniform_array(dim, 0.0, 1.0) + 1e-12
    values = DENSITY_EIGEN_FLOOR + (1.0 - dim * DENSITY_EIGEN_FLOOR) * weights / np.sum(weights)
    rho = _conjugate(rng, values)
    rho = SymmetricMatrix.from_array(rho.entries / rho.trace)
    return pe.build_density(rho)


def random_sandwich_pair(seed: int, dim: int, m: float, M: float, force_endpoints: bool = False,
                         widened: bool = False) -> OperatorPair:
    """
    A random strictly positive A and B = A^{1/2} C A^{1/2} with Sp(C) in [m, M].
    The pair carries the exact hull of Sp(C) unless `widened`, then [m, M] itself.
    """
    if not 0 < m < M:
        raise BadParameter(f"sandwich pair needs 0 < m < M, got m={m}, M={M}")
    if dim < 2:
        raise BadParameter(f"need dim >= 2, got {dim}")
    rng = SplitMix64(seed)
    A = _conjugate(rng, rng.uniform_array(dim, 1.0 / SANDWICH_A_SCALE, SANDWICH_A_SCALE))
    floor = max(m, SANDWICH_EIGEN_FLOOR_REL * M)
    C = _conjugate(rng, _spectrum(rng, dim, floor, M, force_endpoints))
    a_half, _ = matrix_sqrt_inv_sqrt(A)
    B = C.congruence(a_half)
    return pe.build_pair(A, B, m, M) if widened else pe.build_pair(A, B)


'''
Trials
'''


@dataclass
class TrialOutcome:
    index: int
    records: List[SlackRecord] = field(default_factory=list)
    failures: List[FailureRecord] = field(default_factory=list)
    statistics: Dict[str, float] = field(default_factory=dict)


class _Trial:
    def __init__(self, spec: TrialSpec, index: int):
        self.spec = spec
        self.index = index
        self.seed = derive_seed(spec.seed, index)
        self.rng = SplitMix64(self.seed)
        self.outcome = TrialOutcome(index=index)
        self.dim = 0
        self.inputs: Dict[str, object] = {}

    def sub_seed(self, stream: int) -> int:
        return derive_seed(self.seed, stream)

    def record(self, name: str, slack: float, passed: bool, tolerance: float) -> None:
        kind = REGISTRY[name]
        self.outcome.records.append(SlackRecord(name, kind, self.index, self.dim, slack, passed))
        if not passed:
            self.outcome.failures.append(FailureRecord(
                inequality=name, kind=kind, trial=self.index, trial_seed=self.seed, dim=self.dim,
                slack=slack, tolerance=tolerance, inputs=dict(self.inputs)))

    def skip(self, *names: str) -> None:
        for name in names:
            self.outcome.records.append(SlackRecord(name, REGISTRY[name], self.index, self.dim,
                                                    math.nan, True, skipped=True))

    def report(self, report) -> None:
        """Records an InequalityReport or ChainReport under its registry name."""
        tolerance = max((link.verdict.tolerance_used for link in getattr(report, "links", [report])), default=0.0)
        self.record(self._name_of(report.label), report.tightness, report.holds, tolerance)

    def scalar(self, name: str, check) -> None:
        tolerance = getattr(check, "tolerance_used", None)
        if tolerance is None:
            tolerance = check.entropy_vs_bound.tolerance_used
        self.record(name, check.tightness, check.holds, tolerance)

    @staticmethod
    def _name_of(label: str) -> str:
        return "power_corollary" if label.startswith("power_corollary") else label

    def guarded(self, names: Sequence[str], action: Callable[[], None]) -> None:
        """Runs `action`; unmet hypotheses skip `names`, other domain errors fail them."""
        try:
            action()
        except SKIPPABLE:
            self.skip(*names)
        except OperatorInequalityError as e:
            self.fail(names, e)

    def fail(self, names: Sequence[str], error: Exception) -> None:
        self.inputs["error"] = f"{type(error).__name__}: {error}"
        for name in names:
            self.record(name, math.nan, False, math.nan)
        self.inputs.pop("error")

    def stat_min(self, key: str, value: float) -> None:
        current = self.outcome.statistics.get(key)
        self.outcome.statistics[key] = value if current is None else min(current, value)

    def stat_max(self, key: str, value: float) -> None:
        current = self.outcome.statistics.get(key)
        self.outcome.statistics[key] = value if current is None else max(current, value)

    def stat_count(self, key: str, condition: bool) -> None:
        self.outcome.statistics[key] = self.outcome.statistics.get(key, 0.0) + (1.0 if condition else 0.0)

    '''
    Suites
    '''

    def run(self) -> TrialOutcome:
        spec, rng = self.spec, self.rng
        self.dim = rng.randint(*spec.dim_range)
        function_spec = rng.choice(spec.function_set)
        map_tag = rng.choice(spec.map_set)
        m = rng.uniform(spec.interval.m_low, spec.interval.m_high)
        M = m + rng.uniform(spec.interval.width_low, spec.interval.width_high)
        force = self.index % ENDPOINT_FORCING_PERIOD == 0
        widened = self.index % 2 == 1
        r = rng.choice(spec.powers)
        p = rng.choice(spec.tsallis_p)
        density_dim = rng.randint(*spec.density_dim_range)

        f = parse_function_spec(function_spec)
        phi = build_map(map_tag, self.dim, SplitMix64(self.sub_seed(1)))
        self.inputs = {"function": function_spec, "map": map_tag, "m": m, "M": M,
                       "interval": "widened" if widened else "exact_hull", "r": r, "p": p}

        A = random_symmetric_with_spectrum(self.sub_seed(2), self.dim, m, M, force)
        self.cdj_suite(A, phi, f, m, M, r, widened)

        pair = random_sandwich_pair(self.sub_seed(3), self.dim, m, M, force, widened)
        self.sandwich_suite(pair, phi, f, p)

        rho = random_density(self.sub_seed(4), density_dim)
        sigma = random_density(self.sub_seed(5), density_dim)
        self.dim = density_dim
        self.quantum_suite(rho, sigma, p)

        logging.debug(f"trial {self.index}: dim {self.dim}, {function_spec} under {map_tag}, "
                      f"{sum(not rec.passed for rec in self.outcome.records)} failing checks")
        return self.outcome

    def cdj_suite(self, A: SymmetricMatrix, phi, f, m: float, M: float, r: float, widened: bool) -> None:
        self.inputs["A"] = A.to_list()
        interval = (m, M) if widened else (None, None)
        tol = self.spec.tolerance
        all_names = ["lemma_i", "lemma_ii", "lemma_iii", "lemma_iv", "theorem1_upper", "theorem1_converse",
                     "theorem2_lower", "theorem2_upper", "kversion_lower", "kversion_upper", "corollary1"]
        try:
            ctx = cdj_bounds.build_context(A, phi, f, *interval, rel_tol=tol)
        except OperatorInequalityError as e:
            ctx = None
            self.fail(all_names, e)
        if ctx is not None:
            for report in cdj_bounds.lemma_chord_bounds(ctx):
                self.report(report)
            self.report(cdj_bounds.theorem1_upper(ctx))
            self.report(cdj_bounds.theorem1_converse(ctx))

            third = cdj_bounds.theorem1_third_term(ctx)
            self.stat_min("theorem1_third_term_min_eig", min(third["upper_min_eig"], third["converse_min_eig"]))
            self.stat_max("theorem1_third_term_max_eig", max(third["upper_max_eig"], third["converse_max_eig"]))
            self.stat_count("plain_cdj_not_holding", not cdj_bounds.plain_cdj(ctx).holds)

            self.guarded(["theorem2_lower", "theorem2_upper"],
                         lambda: [self.report(rep) for rep in cdj_bounds.theorem2_sandwich(ctx)])
            self.guarded(["kversion_lower", "kversion_upper"],
                         lambda: [self.report(rep) for rep in cdj_bounds.theorem2_k_version(ctx)])
            self.guarded(["corollary1"], lambda: self.report(cdj_bounds.corollary1_chain(ctx)))

        self.guarded(["power_corollary"],
                     lambda: self.report(cdj_bounds.power_corollary(A, phi, r, m, M, rel_tol=tol)))

        def kantorovich() -> None:
            result = cdj_bounds.improved_kantorovich(A, phi, *interval, rel_tol=tol)
            self.report(result.improved)
            self.report(result.improvement)
            self.stat_count("kantorovich_strict_improvements", result.improvement.tightness > 1e-12)
        self.guarded(["improved_kantorovich", "kantorovich_improvement"], kantorovich)
        self.inputs.pop("A")

    def sandwich_suite(self, pair: OperatorPair, phi, f, p: float) -> None:
        self.inputs.update({"pair_A": pair.A.to_list(), "pair_B": pair.B.to_list(),
                            "pair_m": pair.m, "pair_M": pair.M})
        tol = self.spec.tolerance
        self.guarded(["prop31_lower", "prop31_upper"],
                     lambda: [self.report(rep) for rep in pe.proposition31_bounds(pair, f, tol)])
        self.guarded(["prop32_lower", "prop32_upper"],
                     lambda: [self.report(rep) for rep in pe.proposition32_bounds(pair, phi, f, tol)])
        self.guarded(["tsallis_lower", "tsallis_upper"],
                     lambda: [self.report(rep) for rep in pe.tsallis_entropy_bounds(pair, p, tol)])
        self.guarded(["relentropy_lower", "relentropy_upper"],
                     lambda: [self.report(rep) for rep in pe.relative_entropy_bounds(pair, tol)])
        for key in ("pair_A", "pair_B", "pair_m", "pair_M"):
            self.inputs.pop(key)

    def quantum_suite(self, rho: DensityOperator, sigma: DensityOperator, p: float) -> None:
        self.inputs.update({"rho": rho.rho.to_list(), "sigma": sigma.rho.to_list()})

        def trace_bounds() -> None:
            bounds = pe.remark32_trace_bounds(rho, sigma, p)
            self.scalar("remark32_lower", bounds.lower)
            self.scalar("remark32_upper", bounds.upper)
            if bounds.dp_bound is None:
                self.skip("remark32_dp_bound", "fyk_relation")
            else:
                self.scalar("remark32_dp_bound", bounds.dp_bound)
                self.scalar("fyk_relation", bounds.fyk_relation)
        self.guarded(["remark32_lower", "remark32_upper", "remark32_dp_bound", "fyk_relation"], trace_bounds)
        self.guarded(["corollary32"], lambda: self.scalar("corollary32", pe.corollary32_lower_bound(rho, p)))
        self.guarded(["von_neumann_bound"], lambda: self.scalar("von_neumann_bound", pe.von_neumann_lower_bound(rho)))


def run_trial(spec: TrialSpec, index: int) -> TrialOutcome:
    return _Trial(spec, index).run()


def _run_trial_packed(args: Tuple[TrialSpec, int]) -> TrialOutcome:
    return run_trial(*args)


def replay_trial(spec: TrialSpec, index: int) -> TrialOutcome:
    """Re-runs trial `index` of the campaign described by `spec` in isolation."""
    if not 0 <= index < spec.trials:
        raise BadParameter(f"trial index {index} outside 0..{spec.trials - 1}")
    return run_trial(spec, index)


'''
Aggregation
'''


def _summarize(name: str, records: List[SlackRecord]) -> InequalitySummary:
    summary = InequalitySummary(inequality=name, kind=REGISTRY[name])
    slacks = []
    for record in records:
        if record.skipped:
            summary.skipped += 1
            continue
        if record.passed:
            summary.passed += 1
        else:
            summary.failed += 1
        if not math.isnan(record.slack):
            slacks.append(record.slack)
    if slacks:
        summary.worst_slack = float(min(slacks))
        summary.tightest_slack = float(min(slacks, key=abs))
        summary.mean_slack = float(math.fsum(slacks) / len(slacks))
    return summary


def _merge_statistics(outcomes: Iterable[TrialOutcome]) -> Dict[str, float]:
    merged: Dict[str, float] = {}
    for outcome in outcomes:
        for key, value in outcome.statistics.items():
            if key not in merged:
                merged[key] = value
            elif key.endswith("_min_eig"):
                merged[key] = min(merged[key], value)
            elif key.endswith("_max_eig"):
                merged[key] = max(merged[key], value)
            else:
                merged[key] += value
    return merged


def _execute(spec: TrialSpec) -> List[TrialOutcome]:
    if spec.workers > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            jobs = ((spec, index) for index in range(spec.trials))
            return list(pool.map(_run_trial_packed, jobs, chunksize=max(1, spec.trials // (4 * spec.workers))))
    return [run_trial(spec, index) for index in range(spec.trials)]


def run_campaign_with_slacks(spec: TrialSpec) -> Tuple[CampaignReport, List[SlackRecord]]:
    logging.info(f"Campaign: seed {spec.seed}, {spec.trials} trials, dims {spec.dim_range}, "
                 f"tolerance {spec.tolerance}, workers {spec.workers}")
    outcomes = _execute(spec)

    by_name: Dict[str, List[SlackRecord]] = {name: [] for name in REGISTRY}
    records: List[SlackRecord] = []
    failures: List[FailureRecord] = []
    for outcome in outcomes:
        records.extend(outcome.records)
        failures.extend(outcome.failures)
        for record in outcome.records:
            by_name[record.inequality].append(record)

    report = CampaignReport(
        seed=spec.seed,
        trials=spec.trials,
        dim_range=list(spec.dim_range),
        tolerance=spec.tolerance,
        summaries={name: _summarize(name, by_name[name]) for name in REGISTRY},
        failures=failures,
        statistics=_merge_statistics(outcomes),
    )
    logging.info(f"Campaign finished: {report.theorem_failures} theorem failures, "
                 f"{report.probe_violations} probe violations")
    return report, records


def run_campaign(spec: TrialSpec) -> CampaignReport:
    return run_campaign_with_slacks(spec)[0]


def slack_table_rows(records: Iterable[SlackRecord]) -> List[dict]:
    return [{"inequality": rec.inequality, "trial": rec.trial, "dim": rec.dim, "slack": rec.slack, "pass": rec.passed}
            for rec in records if not rec.skipped]
