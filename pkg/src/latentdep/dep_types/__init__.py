# This file makes 'dep_types' a Python sub-package.

# Expose the core paired-statistics and boundary types
from .core import DetectionResult, PairedStatistics, PermutationConfig, PermutationResult, RankedPairs, TruncationConfig
from .theory import CalibrationParams, RegionVerdict
