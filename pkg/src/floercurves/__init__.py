"""Correction-term obstructions for singular plane curves, with a chain-level oracle."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .semigroups import NumericalSemigroup, CountingFunction, counting_function, torus_knot_semigroup, convolve_all  # noqa: F401
from .staircases import Staircase, staircase_from_semigroup, basic_staircase, v_s_positive  # noqa: F401
from .complexes import BigradedComplex, MonomialSum, staircase_complex, tensor, tensor_all, dualize_complex  # noqa: F401
from .homology import v_s_oracle, v_top_bot_oracle, d_invariant, reduce_complex  # noqa: F401
from .knotified import CompositeKnotSpec, SplitTowerModel, v_top_bot_composite, composite_full_model  # noqa: F401
from .obstructions import CurveConfig, check, cross_validate  # noqa: F401
