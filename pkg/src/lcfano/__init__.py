"""Exact computations for 1/q-lc Fano polytopes, their extremal simplices
and the dual volume bound 2 u_{d,q}^2 / q^(d+1)."""

from .sylvester import u, u_values, volume_bound, dual_volume_bound, approx_constant, verify_sandwich
from .geometry import Polytope, LatticePolytope, FanoPolytope, RationalSimplex, normalized_volume, dual
from .barycentric import barycentric_coords, ps_check, ps_witness, in_X
from .extremal import example43_simplex, thm13_simplex, dual_normal_form, conrad_weights
from .optimizer import minimize_candidates, grid_oracle, y_candidate
from .decomposition import decompose_minimal, section5_sweep, multinomial_bound

__version__ = "0.1.0"
