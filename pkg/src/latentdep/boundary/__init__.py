# This file makes 'boundary' a Python sub-package.

# Expose the boundary calculators at the package level
from .alpha import AlphaFunctions, alpha_normal, v_funcs
from .regions import detectable_region_check, undetectable_region_check
from .solver import boundary_beta, boundary_curve, single_seq_boundary, write_boundary_csv
from .tail import tail_approx_check
