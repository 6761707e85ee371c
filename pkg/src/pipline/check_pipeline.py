import sys

from src.components import cdj_bounds
from src.components.positive_maps import (NormalizedTrace, PositiveUnitalMap, VectorState, corner_map,
                                          identity_map)
from src.components.scalar_functions import parse_function_spec
from src.data_access.matrix_file import MatrixFile
from src.entity.artifact_entity import CheckArtifact
from src.entity.config_entity import CheckConfig
from src.entity.symmetric_matrix import SymmetricMatrix
from src.exception import BadParameter, MyException, NonPositiveFunction, reraise_domain_error
from src.logger import logging


def map_from_spec(map_spec: str, dim: int) -> PositiveUnitalMap:
    """
    corner[:k] -> leading k x k block (k defaults to dim - 1), vecstate:<path> -> vector
    state of the vector file, trace -> normalized trace, identity -> identity.
    """
    name, _, argument = map_spec.partition(":")
    if name == "corner":
        try:
            k = int(argument) if argument else max(dim - 1, 1)
        except ValueError:
            raise BadParameter(f"corner map size must be an integer, got {argument!r}") from None
        return corner_map(dim, k)
    if name == "vecstate":
        if not argument:
            raise BadParameter("vecstate needs a vector file: vecstate:<path>")
        return VectorState(MatrixFile(argument).load_vector())
    if name == "trace":
        return NormalizedTrace(dim)
    if name == "identity":
        return identity_map(dim)
    raise BadParameter(f"unknown map {map_spec!r}; expected corner[:k], vecstate:<path>, trace or identity")


class CheckPipeline:
    """Runs the chord Lemma, Theorem 1 and (for positive f) Theorem 2 on one instance."""

    def __init__(self, check_config: CheckConfig):
        self.check_config = check_config

    def load_inputs(self):
        A: SymmetricMatrix = MatrixFile(self.check_config.matrix_file_path).load_matrix()
        phi = map_from_spec(self.check_config.map_spec, A.dim)
        f = parse_function_spec(self.check_config.function_spec)
        return A, phi, f

    def run_pipeline(self) -> CheckArtifact:
        logging.info("Entered the run_pipeline method of CheckPipeline class")
        try:
            config = self.check_config
            A, phi, f = self.load_inputs()
            ctx = cdj_bounds.build_context(A, phi, f, config.m, config.M, rel_tol=config.tolerance)

            reports = cdj_bounds.lemma_chord_bounds(ctx)
            reports += [cdj_bounds.theorem1_upper(ctx), cdj_bounds.theorem1_converse(ctx)]
            notes = []
            try:
                reports += cdj_bounds.theorem2_sandwich(ctx)
            except NonPositiveFunction as e:
                notes.append(f"theorem 2 skipped: {e}")

            plain = cdj_bounds.plain_cdj(ctx)
            if not plain.holds:
                notes.append(f"plain Choi-Davis-Jensen f(phi(A)) <= phi(f(A)) does not hold: "
                             f"{plain.verdict.relation.value}")
            if config.kantorovich:
                kantorovich = cdj_bounds.improved_kantorovich(A, phi, config.m, config.M, rel_tol=config.tolerance)
                reports += [kantorovich.improved, kantorovich.improvement, kantorovich.classical]

            artifact = CheckArtifact(
                function=f.label, map_name=phi.name, m=ctx.m, M=ctx.M, alpha=ctx.alpha, beta=ctx.beta,
                reports=reports, informational=[plain], notes=notes,
                statistics=cdj_bounds.theorem1_third_term(ctx),
            )
            logging.info(f"Check of {f.label} under {phi.name}: "
                         f"{sum(r.holds for r in reports)}/{len(reports)} inequalities hold")
            logging.info("Exited the run_pipeline method of CheckPipeline class")
            return artifact

        except Exception as e:
            reraise_domain_error(e)
            raise MyException(e, sys) from e
