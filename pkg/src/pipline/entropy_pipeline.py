import sys
from typing import List

from src.components import perspectives_entropies as pe
from src.components.verifier import random_density
from src.data_access.matrix_file import MatrixFile
from src.entity.artifact_entity import EntropyArtifact, EntropyRow
from src.entity.config_entity import EntropyConfig
from src.entity.operator_pair import DensityOperator
from src.exception import BadParameter, MyException, reraise_domain_error
from src.logger import logging
from src.utils.splitmix import SplitMix64, derive_seed


class EntropyPipeline:
    """Entropies of one density matrix from file, or of a batch of seeded random ones."""

    def __init__(self, entropy_config: EntropyConfig):
        self.entropy_config = entropy_config

    def densities(self) -> List[DensityOperator]:
        config = self.entropy_config
        if (config.rho_file_path is None) == (config.random_count is None):
            raise BadParameter("give exactly one of a density matrix file or a random count")
        if config.rho_file_path is not None:
            return [pe.build_density(MatrixFile(config.rho_file_path).load_matrix())]
        if config.random_count < 1:
            raise BadParameter(f"random count must be >= 1, got {config.random_count}")
        rng = SplitMix64(config.seed)
        return [random_density(derive_seed(config.seed, index), rng.randint(*config.dim_range))
                for index in range(config.random_count)]

    def row(self, index: int, rho: DensityOperator) -> EntropyRow:
        p = self.entropy_config.p
        return EntropyRow(
            index=index, dim=rho.dim, m=rho.m, M=rho.M, p=p,
            entropy=pe.von_neumann_entropy(rho),
            tsallis_entropy=pe.quantum_tsallis_entropy(rho, p),
            corollary32=pe.corollary32_lower_bound(rho, p),
            von_neumann=pe.von_neumann_lower_bound(rho),
        )

    def run_pipeline(self) -> EntropyArtifact:
        logging.info("Entered the run_pipeline method of EntropyPipeline class")
        try:
            rows = [self.row(index, rho) for index, rho in enumerate(self.densities())]
            artifact = EntropyArtifact(rows=rows)
            violated = sum(not (row.corollary32.holds and row.von_neumann.holds) for row in rows)
            logging.info(f"Entropy bounds on {len(rows)} density matrices: {violated} with a violated lower bound")
            logging.info("Exited the run_pipeline method of EntropyPipeline class")
            return artifact

        except Exception as e:
            reraise_domain_error(e)
            raise MyException(e, sys) from e
