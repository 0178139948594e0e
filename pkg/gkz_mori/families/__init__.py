"""Degeneration data: twisted monoids, ``H_P`` and the theta section."""

from gkz_mori.families.hp import HPMonoid, build_hp, universal_bending_check, universal_function
from gkz_mori.families.monoid import (
    MonoidP,
    QPhi,
    Specialization,
    TwistedMonoid,
    q_phi,
    specialize,
    theta_multiply,
    twist_by_affine,
)
from gkz_mori.families.theta import ThetaSection, theta_section

__all__ = [
    "HPMonoid",
    "MonoidP",
    "QPhi",
    "Specialization",
    "ThetaSection",
    "TwistedMonoid",
    "build_hp",
    "q_phi",
    "specialize",
    "theta_multiply",
    "theta_section",
    "twist_by_affine",
    "universal_bending_check",
    "universal_function",
]
