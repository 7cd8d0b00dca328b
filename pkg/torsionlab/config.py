"""
TorsionLab - Configuration

Settings are read from workbench.yaml, then overridden from the environment
(optionally populated from a .env file).
"""

import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from dotenv import load_dotenv
from loguru import logger
from pydantic import BaseModel, Field, ValidationError

PROJECT_ROOT = Path(__file__).parent.parent
DEFAULT_CONFIG_PATH = PROJECT_ROOT / "workbench.yaml"

LOG_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
)

# numerical defaults
CLUSTER_TOL = 1e-8
AXIS_TOL = 1e-10
BRANCH_TOL = 1e-12
AGMON_EPSILON = 1e-8
RANK_TOL = 1e-10
ASSUMPTION2_TOL = 1e-8
CHAIN_TOL = 1e-10
COMMUTE_TOL = 1e-10
PROJECTION_TOL = 1e-8
ZERO_TOL = 1e-6
N_MAX = 60
K_MAX = 60
TAIL_TOL = 1e-8

DEFAULT_SEEDS = [1, 2, 3]


@dataclass(frozen=True)
class Tolerances:
    """Tolerances read by the torsion, identity and bridge routines"""

    cluster_tol: float = CLUSTER_TOL
    axis_tol: float = AXIS_TOL
    agmon_epsilon: float = AGMON_EPSILON
    rank_tol: float = RANK_TOL
    assumption2_tol: float = ASSUMPTION2_TOL
    chain_tol: float = CHAIN_TOL
    commute_tol: float = COMMUTE_TOL
    projection_tol: float = PROJECTION_TOL
    zero_tol: float = ZERO_TOL


DEFAULT_TOLERANCES = Tolerances()


class AppSettings(BaseModel):
    name: str = "TorsionLab"
    version: str = "1.0.0"
    description: str = "Spectral invariants workbench"


class LoggingSettings(BaseModel):
    level: str = "INFO"


class SpectralSettings(BaseModel):
    cluster_tol: float = CLUSTER_TOL
    axis_tol: float = AXIS_TOL
    agmon_epsilon: float = AGMON_EPSILON


class DetLineSettings(BaseModel):
    rank_tol: float = RANK_TOL


class TorsionSettings(BaseModel):
    assumption2_tol: float = ASSUMPTION2_TOL
    chain_tol: float = CHAIN_TOL
    commute_tol: float = COMMUTE_TOL
    projection_tol: float = PROJECTION_TOL
    zero_tol: float = ZERO_TOL
    eta_tr: float = 0.0
    rank: int = 1


class ZetaSettings(BaseModel):
    n_max: int = N_MAX
    k_max: int = K_MAX
    tail_tol: float = TAIL_TOL
    l_max: float = float("inf")
    margin: float = 0.0
    abscissa_bound: str = "declared"


class FixtureSettings(BaseModel):
    max_redraws: int = 10
    l_max: float = 3.0


class SuiteSettings(BaseModel):
    seeds: List[int] = Field(default_factory=lambda: list(DEFAULT_SEEDS))
    parallel_workers: int = 4
    timings: bool = False
    cases: Dict[str, int] = Field(default_factory=dict)


class Settings(BaseModel):
    app: AppSettings = Field(default_factory=AppSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)
    spectral: SpectralSettings = Field(default_factory=SpectralSettings)
    detline: DetLineSettings = Field(default_factory=DetLineSettings)
    torsion: TorsionSettings = Field(default_factory=TorsionSettings)
    zeta: ZetaSettings = Field(default_factory=ZetaSettings)
    fixtures: FixtureSettings = Field(default_factory=FixtureSettings)
    suite: SuiteSettings = Field(default_factory=SuiteSettings)

    def tolerances(self) -> Tolerances:
        s, t = self.spectral, self.torsion
        return Tolerances(
            cluster_tol=s.cluster_tol,
            axis_tol=s.axis_tol,
            agmon_epsilon=s.agmon_epsilon,
            rank_tol=self.detline.rank_tol,
            assumption2_tol=t.assumption2_tol,
            chain_tol=t.chain_tol,
            commute_tol=t.commute_tol,
            projection_tol=t.projection_tol,
            zero_tol=t.zero_tol,
        )


def parse_seeds(raw: str) -> List[int]:
    """Parse a TORSIONLAB_SEED value: one integer or a comma list"""
    return [int(part) for part in raw.split(",") if part.strip()]


def _read_yaml(path: Path) -> Dict[str, Any]:
    try:
        with open(path, "r") as f:
            config = yaml.safe_load(f)
            logger.info(f"Loaded configuration from {path}")
            return config or {}
    except FileNotFoundError:
        logger.warning(f"Configuration file {path} not found, using defaults")
        return {}
    except yaml.YAMLError as e:
        logger.error(f"Error parsing configuration file: {e}")
        return {}


def load_settings(config_path: Optional[str] = None) -> Settings:
    """Load settings from YAML and apply environment overrides"""
    load_dotenv()
    path = Path(config_path) if config_path else DEFAULT_CONFIG_PATH
    raw = _read_yaml(path)

    try:
        settings = Settings.model_validate(raw)
    except ValidationError as e:
        logger.error(f"Invalid configuration in {path}: {e}")
        settings = Settings()

    seed_env = os.getenv("TORSIONLAB_SEED")
    if seed_env:
        try:
            settings.suite.seeds = parse_seeds(seed_env)
            logger.debug(f"Seeds overridden from environment: {settings.suite.seeds}")
        except ValueError:
            logger.warning(f"Ignoring malformed TORSIONLAB_SEED={seed_env!r}")

    level_env = os.getenv("TORSIONLAB_LOG_LEVEL")
    if level_env:
        settings.logging.level = level_env.upper()

    return settings


def setup_logging(level: str = "INFO") -> None:
    """Install the stderr sink used across the workbench"""
    logger.remove()
    logger.add(sys.stderr, level=level, format=LOG_FORMAT)
