# This file makes 'latentdep' a Python package.

# Expose the main entry points directly from the package
from .dep_types.core import PairedStatistics, PermutationConfig, TruncationConfig
from .empirical import dstat_fast, dstat_naive, dstat_oracle, preprocess
from .inference import permutation_pvalue

__version__ = "0.1.0"
