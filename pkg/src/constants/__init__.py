import os

from from_root import from_root

PROJECT_NAME: str = "opineq"

SEED_ENV_KEY = "OPINEQ_SEED"
LOG_LEVEL_ENV_KEY = "OPINEQ_LOG_LEVEL"
DEFAULT_SEED: int = 20170429

ROOT_DIR: str = str(from_root())
CONFIG_DIR: str = os.path.join(ROOT_DIR, "config")
FIXTURES_DIR: str = os.path.join(ROOT_DIR, "fixtures")
ARTIFACT_DIR: str = os.path.join(ROOT_DIR, "artifact")
LOG_DIR: str = "logs"

CAMPAIGN_CONFIG_FILE_PATH: str = os.path.join(CONFIG_DIR, "campaign.yaml")
REFERENCE_EXAMPLES_FILE_PATH: str = os.path.join(CONFIG_DIR, "reference_examples.yaml")
CAMPAIGN_REPORT_FILE_NAME: str = "campaign_report.json"
CAMPAIGN_SLACK_TABLE_FILE_NAME: str = "campaign_slacks.csv"

'''
Spectral core
'''
JACOBI_MAX_SWEEPS: int = 100
JACOBI_OFFDIAG_REL_TOL: float = 1e-14
JACOBI_LARGE_THETA: float = 1e150
ASYMMETRY_REL_TOL: float = 1e-8
ORTHO_TOL_PER_DIM: float = 1e-12
RECONSTRUCTION_REL_TOL: float = 1e-10
LOEWNER_REL_TOL: float = 1e-8
STRICT_POS_REL_TOL: float = 1e-12

'''
Scalar functions
'''
EXTREMUM_GRID_POINTS: int = 4097
EXTREMUM_REFINE_BRACKETS: int = 3
EXTREMUM_XATOL: float = 1e-12
NONPOSITIVE_REL_TOL: float = 1e-13
KANTOROVICH_SINGULAR_TOL: float = 1e-12
TSALLIS_P_MIN: float = -1.0
TSALLIS_P_MAX: float = 1.0

'''
Positive maps
'''
UNITALITY_TOL: float = 1e-12
POSITIVITY_REL_TOL: float = 1e-10
VECTOR_NORM_TOL: float = 1e-12
MAP_TAGS = ("corner", "vector_state", "normalized_trace", "pinching", "congruence_mixture", "identity")

'''
Perspectives and entropies
'''
TRACE_TOL: float = 1e-12
ENTROPY_SLACK_TOL: float = 1e-10
DEGENERATE_INTERVAL_REL_TOL: float = 1e-12

'''
Verifier
'''
DENSITY_EIGEN_FLOOR: float = 1e-3
SANDWICH_EIGEN_FLOOR_REL: float = 1e-2
SANDWICH_A_SCALE: float = 2.0
ENDPOINT_FORCING_PERIOD: int = 4
GIVENS_PASSES: int = 2
