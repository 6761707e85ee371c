import os
from dataclasses import dataclass, field, replace
from datetime import datetime
from typing import List, Optional, Tuple

from src.constants import *
from src.exception import BadParameter

TIMESTAMP: str = datetime.now().strftime("%m_%d_%Y_%H_%M_%S")


@dataclass(frozen=True)
class IntervalSampling:
    m_low: float = 0.2
    m_high: float = 1.0
    width_low: float = 0.3
    width_high: float = 3.0


@dataclass(frozen=True)
class TrialSpec:
    """Everything that determines a fuzz campaign; identical specs give identical reports."""
    seed: int = DEFAULT_SEED
    dim_range: Tuple[int, int] = (2, 8)
    trials: int = 1000
    function_set: Tuple[str, ...] = ("power:3", "power:4", "power:-1", "log",
                                     "tsallis_f:0.5", "tsallis_f:-0.5", "exp")
    map_set: Tuple[str, ...] = ("corner", "vector_state", "normalized_trace", "pinching")
    tolerance: float = LOEWNER_REL_TOL
    powers: Tuple[float, ...] = (-2.0, -1.0, -0.5, 0.5, 1.5, 2.0, 3.0)
    tsallis_p: Tuple[float, ...] = (-1.0, -0.5, 0.5, 1.0)
    interval: IntervalSampling = field(default_factory=IntervalSampling)
    density_dim_range: Tuple[int, int] = (2, 6)
    workers: int = 1

    def __post_init__(self):
        lo, hi = self.dim_range
        if lo < 2 or hi < lo:
            raise BadParameter(f"dim_range must satisfy 2 <= lo <= hi, got {self.dim_range}")
        d_lo, d_hi = self.density_dim_range
        if d_lo < 2 or d_hi < d_lo:
            raise BadParameter(f"density_dim_range must satisfy 2 <= lo <= hi, got {self.density_dim_range}")
        if self.trials < 1:
            raise BadParameter(f"trials must be >= 1, got {self.trials}")
        if not self.tolerance > 0:
            raise BadParameter(f"tolerance must be > 0, got {self.tolerance}")
        if not self.function_set or not self.map_set:
            raise BadParameter("function_set and map_set must be non-empty")
        unknown = [tag for tag in self.map_set if tag not in MAP_TAGS]
        if unknown:
            raise BadParameter(f"unknown map tags {unknown}; expected a subset of {MAP_TAGS}")
        if self.workers < 1:
            raise BadParameter(f"workers must be >= 1, got {self.workers}")

    @classmethod
    def from_yaml(cls, content: dict, **overrides) -> "TrialSpec":
        interval = content.get("interval") or {}
        spec = cls(
            seed=int(os.getenv(SEED_ENV_KEY, content.get("seed", DEFAULT_SEED))),
            dim_range=tuple(content.get("dim_range", (2, 8))),
            trials=int(content.get("trials", 1000)),
            function_set=tuple(content.get("functions", cls.function_set)),
            map_set=tuple(content.get("maps", cls.map_set)),
            tolerance=float(content.get("tolerance", LOEWNER_REL_TOL)),
            powers=tuple(float(r) for r in content.get("powers", cls.powers)),
            tsallis_p=tuple(float(p) for p in content.get("tsallis_p", cls.tsallis_p)),
            interval=IntervalSampling(**interval),
            density_dim_range=tuple(content.get("density_dim_range", (2, 6))),
            workers=int(content.get("workers", 1)),
        )
        overrides = {key: value for key, value in overrides.items() if value is not None}
        return replace(spec, **overrides) if overrides else spec


@dataclass
class FuzzOutputConfig:
    output_dir: str = os.path.join(ARTIFACT_DIR, TIMESTAMP)
    report_file_path: Optional[str] = None
    slack_table_file_path: Optional[str] = None

    def __post_init__(self):
        if self.report_file_path is None:
            self.report_file_path = os.path.join(self.output_dir, CAMPAIGN_REPORT_FILE_NAME)


@dataclass
class CheckConfig:
    matrix_file_path: str
    map_spec: str = "identity"
    function_spec: str = "power:2"
    m: Optional[float] = None
    M: Optional[float] = None
    tolerance: float = LOEWNER_REL_TOL
    as_json: bool = False
    kantorovich: bool = False


@dataclass
class EntropyConfig:
    rho_file_path: Optional[str] = None
    random_count: Optional[int] = None
    p: float = 0.5
    seed: int = DEFAULT_SEED
    dim_range: Tuple[int, int] = (2, 6)
    as_json: bool = False


@dataclass
class ReferenceExamplesConfig:
    expected_values_file_path: str = REFERENCE_EXAMPLES_FILE_PATH
    fixtures_dir: str = FIXTURES_DIR
    sections: List[str] = field(default_factory=lambda: ["counterexample", "vector_state_cubic",
                                                         "kantorovich_trace"])
