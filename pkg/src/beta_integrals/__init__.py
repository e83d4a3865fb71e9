"""Numerical verification of beta integrals, Barnes integrals and Wilson polynomial systems."""

from .errors import (
    BetaIntegralsError,
    CoincidentPoleError,
    ConfigError,
    ContourCollisionError,
    DivergenceError,
    DomainError,
    GammaOverflowError,
    NonConvergenceError,
    PoleError,
)
from .identity_catalog import closed_form, lhs_numeric, list_identities, symmetry_probe, verify

__all__ = [
    "BetaIntegralsError",
    "CoincidentPoleError",
    "ConfigError",
    "ContourCollisionError",
    "DivergenceError",
    "DomainError",
    "GammaOverflowError",
    "NonConvergenceError",
    "PoleError",
    "closed_form",
    "lhs_numeric",
    "list_identities",
    "symmetry_probe",
    "verify",
]
