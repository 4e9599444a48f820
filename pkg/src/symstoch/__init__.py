"""Exact Ehrhart, toric and polyhedral computations for polytopes of
symmetric doubly-stochastic matrices."""

__version__ = "0.1.0"

from .errors import CapacityError, FalsificationError
from .symmat import S, SIGMA, PointList, SymIntMatrix, count_points, enumerate_points, two_count, zero_count
from .ehrhart import HStarVector, Polynomial, hstar_S, hstar_sigma, interpolate, quasipoly_sigma, reciprocity_check
from .graphfactor import decompose, euler_orient, matrix_to_graph, petersen_two_factorize
from .toric import TermOrder, compare, make_order, normal_form, toric_groebner, verify_theorem13
from .geometry import gorenstein_witness, hstar_P, interior_count, involution_count, special_simplex, v_to_h, vertices
