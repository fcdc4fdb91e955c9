"""Function field zeta values, Carlitz modules and multi-valued operators over F_r[T]."""

__version__ = "0.1.0"

from .carlitz import (
    TauMatSeries,
    bernoulli_carlitz,
    carlitz_action,
    carlitz_factorial,
    tensor_exp_log,
    tensor_power_action,
    vadic_reduce_action,
)
from .cm import cm_hecke_coeffs
from .errors import FFZetaError, FieldMismatch, InvariantError, NotInvertible, PrecisionError
from .field import FqElem, FqField, field_for, get_field
from .galois import XPoly, eisenstein_check, quartic_galois_group, resolvent_cubic, xpoly_from_zeta
from .hyperderiv import hyperderive, leibniz_check, power_formula, vadic_continuity_bound
from .lift import LiftProblem, TangentElt, liftability_check, multivalued_operator, separable_lift
from .newton import NewtonPolygon, hensel_zero_lift, newton_polygon
from .poly import FqPoly
from .ratfn import RatFn
from .series import PadicInt, Place, ValSeries
from .zeta import (
    pi_covariance_check,
    remove_trivial_zero,
    vadic_zeta_poly,
    wan_identity_check,
    zero_field_analysis,
    zeta_at_positive,
    zeta_series_row,
    zeta_special_poly,
    zeta_tilde,
)

__all__ = [
    "bernoulli_carlitz",
    "carlitz_action",
    "carlitz_factorial",
    "cm_hecke_coeffs",
    "eisenstein_check",
    "FFZetaError",
    "field_for",
    "FieldMismatch",
    "FqElem",
    "FqField",
    "FqPoly",
    "get_field",
    "hensel_zero_lift",
    "hyperderive",
    "InvariantError",
    "leibniz_check",
    "liftability_check",
    "LiftProblem",
    "multivalued_operator",
    "newton_polygon",
    "NewtonPolygon",
    "NotInvertible",
    "PadicInt",
    "pi_covariance_check",
    "Place",
    "power_formula",
    "PrecisionError",
    "quartic_galois_group",
    "RatFn",
    "remove_trivial_zero",
    "resolvent_cubic",
    "separable_lift",
    "TangentElt",
    "TauMatSeries",
    "tensor_exp_log",
    "tensor_power_action",
    "vadic_continuity_bound",
    "vadic_reduce_action",
    "vadic_zeta_poly",
    "ValSeries",
    "wan_identity_check",
    "XPoly",
    "xpoly_from_zeta",
    "zero_field_analysis",
    "zeta_at_positive",
    "zeta_series_row",
    "zeta_special_poly",
    "zeta_tilde",
]
