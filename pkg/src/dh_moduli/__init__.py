"""Rank-one Hodge and Deligne-Hitchin moduli spaces in harmonic-form coordinates."""

from .aut import (
    Aut0Element,
    GammaElement,
    HodgeAutElement,
    VPolynomial,
    aut0_apply,
    aut0_compose,
    classify_symplectic,
    fixes_theta,
    gamma_apply,
    h_map,
    iota_apply,
    pullback_theta,
    scale_apply,
    tensor_apply,
)
from .dh import DHPoint, Section, eval_section, fit_section, glue, normal_bundle_degree
from .errors import MathError
from .hodge import INFINITY, Chart, LambdaConnectionPoint, fiber, from_betti, monodromy, normal_form
from .surface import PeriodMatrix, symplectic_pairing, validate

__version__ = "0.1.0"
