from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import Dict, List, Optional

from src.entity.symmetric_matrix import SymmetricMatrix


class Relation(str, Enum):
    LESS_OR_EQUAL = "LessOrEqual"
    GREATER_OR_EQUAL = "GreaterOrEqual"
    EQUAL = "Equal"
    INCOMPARABLE = "Incomparable"


@dataclass(frozen=True)
class LoewnerVerdict:
    relation: Relation
    gap_min_eig: float
    gap_max_eig: float
    tolerance_used: float

    def to_dict(self) -> dict:
        return {
            "relation": self.relation.value,
            "gap_min_eig": self.gap_min_eig,
            "gap_max_eig": self.gap_max_eig,
            "tolerance_used": self.tolerance_used,
        }


@dataclass(frozen=True, eq=False)
class InequalityReport:
    """A claimed Loewner inequality lhs <= rhs and its numerical verdict."""
    label: str
    lhs: SymmetricMatrix
    rhs: SymmetricMatrix
    verdict: LoewnerVerdict

    @property
    def tightness(self) -> float:
        return self.verdict.gap_min_eig

    @property
    def holds(self) -> bool:
        return self.verdict.relation in (Relation.LESS_OR_EQUAL, Relation.EQUAL)

    def to_dict(self, include_matrices: bool = True) -> dict:
        report = {
            "label": self.label,
            "holds": self.holds,
            "tightness": self.tightness,
            "verdict": self.verdict.to_dict(),
        }
        if include_matrices:
            report["lhs"] = self.lhs.to_list()
            report["rhs"] = self.rhs.to_list()
        return report


@dataclass(frozen=True, eq=False)
class ChainReport:
    """Consecutive Loewner links terms[0] <= terms[1] <= ... plus side prerequisites."""
    label: str
    terms: List[SymmetricMatrix]
    links: List[InequalityReport]
    prerequisites: List[InequalityReport] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(link.holds for link in self.links) and all(pre.holds for pre in self.prerequisites)

    @property
    def tightness(self) -> float:
        return min(link.tightness for link in self.links)

    def to_dict(self, include_matrices: bool = True) -> dict:
        return {
            "label": self.label,
            "holds": self.holds,
            "tightness": self.tightness,
            "links": [link.to_dict(include_matrices) for link in self.links],
            "prerequisites": [pre.to_dict(include_matrices) for pre in self.prerequisites],
        }


@dataclass(frozen=True)
class ScalarCheck:
    """A claimed scalar inequality lower <= upper; the tolerance is relative to 1 + max(|lower|, |upper|)."""
    label: str
    lower: float
    upper: float
    tolerance: float

    @property
    def slack(self) -> float:
        return self.upper - self.lower

    @property
    def tolerance_used(self) -> float:
        return self.tolerance * (1.0 + max(abs(self.lower), abs(self.upper)))

    @property
    def holds(self) -> bool:
        return self.slack >= -self.tolerance_used

    @property
    def tightness(self) -> float:
        return self.slack

    def to_dict(self, include_matrices: bool = True) -> dict:
        return {
            "label": self.label,
            "holds": self.holds,
            "lower": self.lower,
            "upper": self.upper,
            "slack": self.slack,
            "tolerance": self.tolerance_used,
        }


@dataclass(frozen=True)
class EntropyBoundCheck:
    """entropy >= bound >= 0, as two scalar checks."""
    label: str
    entropy: float
    bound: float
    entropy_vs_bound: ScalarCheck
    bound_nonnegative: ScalarCheck

    @property
    def slack(self) -> float:
        return self.entropy - self.bound

    @property
    def holds(self) -> bool:
        return self.entropy_vs_bound.holds and self.bound_nonnegative.holds

    @property
    def tightness(self) -> float:
        return min(self.entropy_vs_bound.slack, self.bound_nonnegative.slack)

    def to_dict(self, include_matrices: bool = True) -> dict:
        return {
            "label": self.label,
            "holds": self.holds,
            "entropy": self.entropy,
            "bound": self.bound,
            "slack": self.slack,
            "bound_nonnegative": self.bound_nonnegative.holds,
        }


@dataclass(frozen=True, eq=False)
class ImprovedKantorovichReport:
    improved: InequalityReport
    improvement: InequalityReport
    classical: InequalityReport

    @property
    def holds(self) -> bool:
        return self.improved.holds and self.improvement.holds and self.classical.holds


@dataclass(frozen=True)
class TraceBoundsReport:
    """Two-sided bound on Tr[T_p(rho|sigma)] and the derived D_p upper bound."""
    trace_tsallis: float
    lower: ScalarCheck
    upper: ScalarCheck
    dp_bound: Optional[ScalarCheck]
    fyk_relation: Optional[ScalarCheck]

    @property
    def checks(self) -> List[ScalarCheck]:
        return [c for c in (self.lower, self.upper, self.dp_bound, self.fyk_relation) if c is not None]

    @property
    def holds(self) -> bool:
        return all(check.holds for check in self.checks)


@dataclass(frozen=True)
class MapVerificationReport:
    map_name: str
    trials: int
    unitality_error: float
    unital: bool
    worst_min_eigenvalue: float
    positive: bool
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.unital and self.positive


@dataclass(frozen=True)
class SlackRecord:
    inequality: str
    kind: str
    trial: int
    dim: int
    slack: float
    passed: bool
    skipped: bool = False


@dataclass
class FailureRecord:
    inequality: str
    kind: str
    trial: int
    trial_seed: int
    dim: int
    slack: float
    tolerance: float
    inputs: Dict[str, object]


@dataclass
class InequalitySummary:
    inequality: str
    kind: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    worst_slack: Optional[float] = None
    tightest_slack: Optional[float] = None
    mean_slack: Optional[float] = None

    @property
    def trials(self) -> int:
        return self.passed + self.failed + self.skipped


@dataclass
class CampaignReport:
    seed: int
    trials: int
    dim_range: List[int]
    tolerance: float
    summaries: Dict[str, InequalitySummary]
    failures: List[FailureRecord]
    statistics: Dict[str, float]

    @property
    def theorem_failures(self) -> int:
        return sum(s.failed for s in self.summaries.values() if s.kind == "theorem")

    @property
    def probe_violations(self) -> int:
        return sum(s.failed for s in self.summaries.values() if s.kind == "probe")

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "dim_range": list(self.dim_range),
            "tolerance": self.tolerance,
            "theorem_failures": self.theorem_failures,
            "probe_violations": self.probe_violations,
            "summaries": {name: asdict(summary) for name, summary in sorted(self.summaries.items())},
            "failures": [asdict(failure) for failure in self.failures],
            "statistics": dict(sorted(self.statistics.items())),
        }


@dataclass(frozen=True, eq=False)
class CheckArtifact:
    """Outcome of checking one (A, phi, f) instance."""
    function: str
    map_name: str
    m: float
    M: float
    alpha: float
    beta: float
    reports: List[InequalityReport]
    informational: List[InequalityReport] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    statistics: Dict[str, float] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(report.holds for report in self.reports)

    def to_dict(self) -> dict:
        return {
            "function": self.function,
            "map": self.map_name,
            "m": self.m,
            "M": self.M,
            "alpha": self.alpha,
            "beta": self.beta,
            "holds": self.holds,
            "reports": [report.to_dict() for report in self.reports],
            "informational": [report.to_dict() for report in self.informational],
            "notes": list(self.notes),
            "statistics": dict(sorted(self.statistics.items())),
        }


@dataclass(frozen=True)
class ExampleCheck:
    """A computed value of a worked example against its expected value."""
    section: str
    label: str
    computed: object
    expected: object
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ReferenceExamplesArtifact:
    checks: List[ExampleCheck]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": [check.to_dict() for check in self.checks]}


@dataclass(frozen=True)
class EntropyRow:
    index: int
    dim: int
    m: float
    M: float
    p: float
    entropy: float
    tsallis_entropy: float
    corollary32: EntropyBoundCheck
    von_neumann: EntropyBoundCheck

    @property
    def nonnegative(self) -> bool:
        return self.entropy >= -self.von_neumann.entropy_vs_bound.tolerance and \
            self.tsallis_entropy >= -self.corollary32.entropy_vs_bound.tolerance

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "dim": self.dim,
            "m": self.m,
            "M": self.M,
            "p": self.p,
            "entropy": self.entropy,
            "tsallis_entropy": self.tsallis_entropy,
            "nonnegative": self.nonnegative,
            "corollary32": self.corollary32.to_dict(),
            "von_neumann_bound": self.von_neumann.to_dict(),
        }


@dataclass(frozen=True)
class EntropyArtifact:
    rows: List[EntropyRow]

    @property
    def holds(self) -> bool:
        """Non-negativity of both entropies; the two lower bounds are probes and do not count."""
        return all(row.nonnegative for row in self.rows)

    def to_dict(self) -> dict:
        return {"holds": self.holds, "rows": [row.to_dict() for row in self.rows]}


@dataclass(frozen=True)
class FuzzArtifact:
    report: CampaignReport
    report_file_path: str
    slack_table_file_path: Optional[str] = None
