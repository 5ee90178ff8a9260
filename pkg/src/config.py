"""
QuantumTruth Configuration Module

Centralized configuration for verification profiles, rewrite limits,
numeric defaults and report paths.
"""

import os
from enum import Enum
from fractions import Fraction
from typing import List
from dataclasses import dataclass, field
from src.utils.logger import logger

# Load environment variables from .env file
try:
    from pathlib import Path
    from dotenv import load_dotenv
    env_path = Path(__file__).parent.parent / '.env'
    load_dotenv(dotenv_path=env_path)
except ImportError:
    pass  # python-dotenv not installed, will use system env vars only


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        logger.warning(f"Ignoring non-integer value {value!r} for {name}")
        return default


# ============================================================================
# Verification Profiles
# ============================================================================

class VerificationProfile(Enum):
    """Which catalog sizes run_all covers."""
    QUICK = "quick"    # every check at N=2
    FULL = "full"      # adds N=3, and N=4 for ybe/hecke


PROFILE_SIZES = {
    VerificationProfile.QUICK: {"default": [2]},
    VerificationProfile.FULL: {"default": [2, 3], "ybe": [2, 3, 4], "hecke": [2, 3, 4]},
}


# ============================================================================
# Feature Flags
# ============================================================================

@dataclass
class FeatureFlags:
    """Availability of the numeric and reporting stack."""

    sympy_available: bool = True
    numpy_available: bool = False
    scipy_available: bool = False
    pandas_available: bool = False
    tqdm_available: bool = False

    def __post_init__(self):
        self._detect_libraries()

    def _detect_libraries(self):
        try:
            import numpy
            self.numpy_available = True
        except ImportError:
            logger.debug("numpy not installed. Spectrum checks disabled.")

        try:
            import scipy
            self.scipy_available = True
        except ImportError:
            logger.debug("scipy not installed. Spectrum checks disabled.")

        try:
            import pandas
            self.pandas_available = True
        except ImportError:
            logger.debug("pandas not installed. CSV tables disabled.")

        try:
            import tqdm
            self.tqdm_available = True
        except ImportError:
            logger.debug("tqdm not installed (optional).")


# ============================================================================
# Rewrite Limits
# ============================================================================

@dataclass
class RewriteLimits:
    """Caps for completion and normal forms."""

    # cap = 2N + slack
    degree_cap_slack: int = field(default_factory=lambda: _env_int('QT_DEGREE_CAP_SLACK', 2))
    degree_cap_override: int = field(default_factory=lambda: _env_int('QT_DEGREE_CAP', 0))
    fuel: int = field(default_factory=lambda: _env_int('QT_FUEL', 50_000_000))
    max_new_rules: int = field(default_factory=lambda: _env_int('QT_MAX_NEW_RULES', 400))
    # O_T words are longer than the Z words they come from
    triangular_cap_factor: int = field(default_factory=lambda: _env_int('QT_TRIANGULAR_CAP_FACTOR', 4))

    def degree_cap(self, n: int) -> int:
        if self.degree_cap_override > 0:
            return self.degree_cap_override
        return 2 * n + self.degree_cap_slack

    def triangular_cap(self, n: int) -> int:
        return self.degree_cap(n) * self.triangular_cap_factor


# ============================================================================
# Numeric Defaults
# ============================================================================

@dataclass
class NumericDefaults:
    """Defaults for specializations and filtration tables."""

    q0: Fraction = field(default_factory=lambda: Fraction(os.getenv('QT_Q0', '1/2')))
    tolerance: float = 1e-9
    window: int = field(default_factory=lambda: _env_int('QT_WINDOW', 10))
    thresholds: List[int] = field(default_factory=lambda: [10, 100, 1000])
    seed: int = field(default_factory=lambda: _env_int('QT_SEED', 20240601))


# ============================================================================
# Path Configuration
# ============================================================================

@dataclass
class PathConfig:
    """File path configuration."""

    project_root: str = field(default_factory=lambda: os.path.dirname(
        os.path.dirname(os.path.abspath(__file__))
    ))

    @property
    def reports_dir(self) -> str:
        return os.getenv('QT_REPORTS_DIR', os.path.join(self.project_root, "reports"))


# ============================================================================
# Global Configuration Instance
# ============================================================================

class Config:
    """Global configuration singleton."""

    def __init__(self):
        self.features = FeatureFlags()
        self.limits = RewriteLimits()
        self.numeric = NumericDefaults()
        self.paths = PathConfig()
        self.profile_sizes = PROFILE_SIZES

    @property
    def heavy_tests_enabled(self) -> bool:
        return os.getenv('QT_HEAVY_TESTS', '0') not in ('', '0', 'false', 'False')

    def sizes_for(self, profile: VerificationProfile, check_id: str) -> List[int]:
        """
        Returns the values of N a check runs at under a profile.

        Args:
            profile (VerificationProfile): quick or full.
            check_id (str): The check identifier.

        Returns:
            List[int]: Sizes in increasing order.
        """
        sizes = self.profile_sizes[profile]
        return sizes.get(check_id, sizes["default"])

    def print_status(self):
        """Print configuration status for debugging."""
        print("=" * 60)
        print("QuantumTruth Configuration Status")
        print("=" * 60)
        print("\nLibrary Availability:")
        print(f"  ✓ sympy: {self.features.sympy_available}")
        print(f"  {'✓' if self.features.numpy_available else '✗'} numpy: {self.features.numpy_available}")
        print(f"  {'✓' if self.features.scipy_available else '✗'} scipy: {self.features.scipy_available}")
        print(f"  {'✓' if self.features.pandas_available else '✗'} pandas: {self.features.pandas_available}")
        print(f"  {'✓' if self.features.tqdm_available else '✗'} tqdm: {self.features.tqdm_available}")
        print("\nRewrite limits:")
        print(f"  degree cap (N=2): {self.limits.degree_cap(2)}")
        print(f"  fuel: {self.limits.fuel}")
        print(f"  heavy tests: {self.heavy_tests_enabled}")
        print("\nPaths:")
        print(f"  Reports: {self.paths.reports_dir}")
        print("=" * 60)


config = Config()


if __name__ == "__main__":
    config.print_status()
