"""Theta and multiple elliptic Gamma functions.

Key components:
- theta: G_0 via the Jacobi triple product
- gr_center: G_r from the center-strip exponential sum
- gr / GammaEvaluator: G_r anywhere off the real parameter locus
- gr_real_variant: G_2 with one real parameter
- bernoulli_nn / modular_check: the modular property of G_{n-2}
- gr_product / theta_product: truncated products for cross-checks
"""

from .point import GammaPoint, GammaSettings, DEFAULT_SETTINGS
from .theta import theta, theta_mpc
from .series import gr_center, center_log_sum, center_decay
from .hierarchy import GammaEvaluator, gr, reorient, is_real_parameter
from .real_variant import gr_real_variant, gr_real_variant_mpc
from .bernoulli import BernoulliEval, bernoulli_nn, bernoulli_number
from .modular import modular_check
from .oracle import estimate_factors, gr_product, gr_product_mpc, theta_product

__all__ = [
    # Arguments
    'GammaPoint',
    'GammaSettings',
    'DEFAULT_SETTINGS',

    # Evaluation
    'theta',
    'theta_mpc',
    'gr_center',
    'center_log_sum',
    'center_decay',
    'GammaEvaluator',
    'gr',
    'reorient',
    'is_real_parameter',
    'gr_real_variant',
    'gr_real_variant_mpc',

    # Modular property
    'BernoulliEval',
    'bernoulli_nn',
    'bernoulli_number',
    'modular_check',

    # Cross-checks
    'estimate_factors',
    'gr_product',
    'gr_product_mpc',
    'theta_product',
]
