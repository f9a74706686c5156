"""Exact number-field arithmetic and integer linear algebra.

Key components:
- NumberField / NumberFieldElement: Q[x]/(P) with an integral basis
- IntegerMatrix / hnf: exact matrices and Hermite normal form
- FractionalIdealHNF / different_of_form: ideals and the different of a form
- lambda_tilde / t_tilde / t_min: defect read-offs
- parallelepiped_points: residual points of a cone decomposition
"""

from .field import NumberField, NumberFieldElement, nf_arith
from .matrix import (
    IntegerMatrix,
    hnf,
    rational_det,
    rational_inverse,
    dual_lattice,
)
from .ideals import (
    FractionalIdealHNF,
    eta_products,
    det_form,
    linear_form_values,
    different_of_form,
    lambda_tilde,
    t_tilde,
    t_min,
)
from .lattice import parallelepiped_points

__all__ = [
    # Fields
    'NumberField',
    'NumberFieldElement',
    'nf_arith',

    # Matrices
    'IntegerMatrix',
    'hnf',
    'rational_det',
    'rational_inverse',
    'dual_lattice',

    # Ideals
    'FractionalIdealHNF',
    'eta_products',
    'det_form',
    'linear_form_values',
    'different_of_form',
    'lambda_tilde',
    't_tilde',
    't_min',

    # Lattices
    'parallelepiped_points',
]
