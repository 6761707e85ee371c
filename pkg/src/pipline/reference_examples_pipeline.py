import os
import sys
from fractions import Fraction
from typing import List, Optional

import numpy as np

from src.components import cdj_bounds
from src.components.positive_maps import NormalizedTrace, VectorState, corner_map
from src.components.scalar_functions import power_function
from src.components.spectral_core import apply_scalar_function, loewner_compare
from src.data_access.matrix_file import MatrixFile
from src.entity.artifact_entity import ExampleCheck, ReferenceExamplesArtifact
from src.entity.config_entity import ReferenceExamplesConfig
from src.exception import BadParameter, MyException, reraise_domain_error
from src.logger import logging
from src.utils.main_utils import read_yaml_file


def _number(value) -> float:
    """Expected values are numbers or exact rationals written as strings."""
    return float(Fraction(value)) if isinstance(value, str) else float(value)


def _scalar_check(section: str, label: str, computed: float, expected, tolerance: float) -> ExampleCheck:
    target = _number(expected)
    return ExampleCheck(section=section, label=label, computed=float(computed), expected=str(expected),
                        tolerance=tolerance, passed=abs(computed - target) <= tolerance)


def _matrix_check(section: str, label: str, computed: np.ndarray, expected, tolerance: float) -> ExampleCheck:
    target = np.asarray(expected, dtype=np.float64)
    passed = computed.shape == target.shape and bool(np.max(np.abs(computed - target)) <= tolerance)
    return ExampleCheck(section=section, label=label, computed=computed.tolist(), expected=target.tolist(),
                        tolerance=tolerance, passed=passed)


class ReferenceExamplesPipeline:
    """Recomputes the three worked examples and compares them with config/reference_examples.yaml."""

    def __init__(self, reference_examples_config: Optional[ReferenceExamplesConfig] = None):
        self.config = reference_examples_config or ReferenceExamplesConfig()
        self.expected = read_yaml_file(self.config.expected_values_file_path)

    def _fixture(self, name: str) -> str:
        return os.path.join(self.config.fixtures_dir, name)

    def counterexample(self, values: dict) -> List[ExampleCheck]:
        """The corner map breaks f(phi(A)) <= phi(f(A)) for f(t) = t^4."""
        section, tol = "counterexample", float(values["tolerance"])
        A = MatrixFile(self._fixture(values["matrix_file"])).load_matrix()
        phi = corner_map(A.dim, 2)
        f = power_function(values["power"])
        f_phi_a = apply_scalar_function(phi.apply(A), f)
        phi_f_a = phi.apply(apply_scalar_function(A, f))
        verdict = loewner_compare(f_phi_a, phi_f_a)
        return [
            _matrix_check(section, "phi(A)^4", f_phi_a.entries, values["phi_a_power"], tol),
            _matrix_check(section, "phi(A^4)", phi_f_a.entries, values["phi_of_a_power"], tol),
            ExampleCheck(section=section, label="relation", computed=verdict.relation.value,
                         expected="Incomparable", tolerance=verdict.tolerance_used,
                         passed=verdict.relation.value == "Incomparable"),
        ]

    def vector_state_cubic(self, values: dict) -> List[ExampleCheck]:
        section = "vector_state_cubic"
        exact, rounded = float(values["exact_tolerance"]), float(values["rounded_tolerance"])
        A = MatrixFile(self._fixture(values["matrix_file"])).load_matrix()
        phi = VectorState(MatrixFile(self._fixture(values["vector_file"])).load_vector())
        ctx = cdj_bounds.build_context(A, phi, power_function(3), values["m"], values["M"])
        upper, converse = cdj_bounds.theorem1_upper(ctx), cdj_bounds.theorem1_converse(ctx)
        return [
            _scalar_check(section, "f(phi(A))", ctx.f_phiA.item(), values["f_phi_a"], exact),
            _scalar_check(section, "phi(f(A))", ctx.phi_fA.item(), values["phi_f_a"], exact),
            _scalar_check(section, "theorem1_upper rhs", upper.rhs.item(), values["theorem1_upper_rhs"], rounded),
            _scalar_check(section, "theorem1_converse rhs", converse.rhs.item(),
                          values["theorem1_converse_rhs"], rounded),
            ExampleCheck(section=section, label="theorem1 holds", computed=upper.holds and converse.holds,
                         expected=True, tolerance=upper.verdict.tolerance_used,
                         passed=upper.holds and converse.holds),
        ]

    def kantorovich_trace(self, values: dict) -> List[ExampleCheck]:
        section, tol = "kantorovich_trace", float(values["tolerance"])
        A = MatrixFile(self._fixture(values["matrix_file"])).load_matrix()
        report = cdj_bounds.improved_kantorovich(A, NormalizedTrace(A.dim), values["m"], values["M"])
        return [
            _scalar_check(section, "classical gap", report.classical.tightness, values["classical_gap"], tol),
            _scalar_check(section, "improved gap", report.improved.tightness, values["improved_gap"], tol),
            _scalar_check(section, "difference", report.classical.tightness - report.improved.tightness,
                          values["difference"], tol),
            ExampleCheck(section=section, label="improved rhs <= classical rhs",
                         computed=report.improvement.verdict.relation.value, expected="LessOrEqual",
                         tolerance=report.improvement.verdict.tolerance_used, passed=report.improvement.holds),
        ]

    def run_pipeline(self) -> ReferenceExamplesArtifact:
        logging.info("Entered the run_pipeline method of ReferenceExamplesPipeline class")
        try:
            checks: List[ExampleCheck] = []
            for section in self.config.sections:
                handler = getattr(self, section, None)
                if handler is None or section not in self.expected:
                    raise BadParameter(f"unknown worked example {section!r}")
                checks += handler(self.expected[section])

            artifact = ReferenceExamplesArtifact(checks=checks)
            logging.info(f"Worked examples: {sum(c.passed for c in checks)}/{len(checks)} checks match")
            logging.info("Exited the run_pipeline method of ReferenceExamplesPipeline class")
            return artifact

        except Exception as e:
            reraise_domain_error(e)
            raise MyException(e, sys) from e
