# This file makes 'inference' a Python sub-package.

# Expose the p-value and decision-rule entry points
from .asymptotic import adaptive_test, adaptive_threshold, asymptotic_pvalue
from .pairwise import pairwise_dependence
from .permutation import permutation_pvalue, replicate_permutation
