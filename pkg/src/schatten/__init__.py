"""Volumes of Schatten-class unit balls through a discrete log-energy problem."""

from .asymptotics import (Field, delta, op_norm_2_to_p, sup_J, volume_radius_asymptote,
                          volume_ratio_asymptote, volume_ratio_gamma_form)
from .energy import (AtomicMeasure, StepMeasure, J_functional, field_energy,
                     measure_log_energy, pairwise_log_energy, smooth_configuration,
                     symmetrize_sqrt, ullman_grid)
from .errors import DomainError, InputError, SchattenError
from .fekete import FeketeSolution, delta_sequence, maximize
from .matnum import schatten_norm, singular_values
from .mcvol import Estimate, singular_value_quadrature, volume_ratio_mc
from .ullman import Ullman

__all__ = [
    "AtomicMeasure", "DomainError", "Estimate", "FeketeSolution", "Field", "InputError",
    "J_functional", "SchattenError", "StepMeasure", "Ullman", "delta", "delta_sequence",
    "field_energy", "maximize", "measure_log_energy", "op_norm_2_to_p", "pairwise_log_energy",
    "schatten_norm", "singular_value_quadrature", "singular_values", "smooth_configuration",
    "sup_J", "symmetrize_sqrt", "ullman_grid", "volume_radius_asymptote",
    "volume_ratio_asymptote", "volume_ratio_gamma_form", "volume_ratio_mc",
]
__version__ = "0.1.0"
