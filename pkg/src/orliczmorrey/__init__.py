"""Generalized Orlicz-Morrey norms, fractional maximal and potential operators
and their BMO commutators on sampled 1-D and 2-D grids."""

from ._accel import HAVE_NUMBA, USE_NUMBA, backend_name
from .conditions import (CONDITION_IDS, ConditionReport, Lattice, PreconditionError, check_cianchi_frmax,
                         check_cianchi_potential, check_pair_integral, check_pair_supremal,
                         check_supremal_thm41, supremal_operator)
from .harness import (RatioStats, TestFamily, estimate_operator_norm_ratio, make_test_family,
                      verify_local_estimate)
from .operators import (OperatorSpec, ball_mean, bmo_norm, commutator_frac_maximal, commutator_riesz,
                        fractional_maximal, riesz_potential)
from .sampled import (Ball, BallFamily, GridFunction, luxemburg_norm, orlicz_morrey_norm,
                      weak_luxemburg_norm, weight_from_spec)
from .young import (YoungFunction, build_auxiliary, build_Q, classify, conjugate, dominates_globally,
                    exp_minus_linear, linfty_step, power, scaled_power, tabulated, zygmund)

__version__ = "0.1.0"
