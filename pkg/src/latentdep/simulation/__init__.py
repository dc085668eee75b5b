# This file makes 'simulation' a Python sub-package.

# Expose the data generators and baseline statistics; import the experiment
# runner from .experiment (it depends on the inference package).
from .baselines import hc_null_distribution, hc_pvalue, hc_stat, max_test_stat, spearman_test
from .calibration import calibrate
from .correlated import gen_correlated_design
from .latent import assign_latent
from .sampling import heterogeneous_alternative, sample_pairs
