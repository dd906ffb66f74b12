"""Randomized certification of the inequality and convexity catalog."""
from .claims import BY_ID, CATALOG, SPEC_FLAGGED, CertResult, Claim, buzano_sides, c7b_values
from .instances import Instance, rng_for
from .runner import SuiteReport, certify, certify_suite, gen_instance, resolve_claims

__all__ = [
    "BY_ID",
    "CATALOG",
    "SPEC_FLAGGED",
    "CertResult",
    "Claim",
    "Instance",
    "SuiteReport",
    "buzano_sides",
    "c7b_values",
    "certify",
    "certify_suite",
    "gen_instance",
    "resolve_claims",
    "rng_for",
]
