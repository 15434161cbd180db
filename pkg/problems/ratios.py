"""Exact arithmetic and classification of the side ratio tau = a/l."""

import logging
from fractions import Fraction

from .exceptions import InvalidRatioError
from .types import RatioClass, RatioValue

logger = logging.getLogger(__name__)

# Phases of the small denominator sin(pi*k*tau + phase), stored as multiples of pi.
PHASE_ZERO = Fraction(0)
PHASE_QUARTER = Fraction(1, 4)
PHASE_HALF = Fraction(1, 2)
PHASE_THREE_QUARTERS = Fraction(3, 4)
PHASES = (PHASE_ZERO, PHASE_QUARTER, PHASE_HALF, PHASE_THREE_QUARTERS)


def as_phase(value) -> Fraction:
    """Accept a phase as a multiple of pi (Fraction, '1/4', 0.25)."""
    phase = Fraction(value).limit_denominator(8) if isinstance(value, float) else Fraction(value)
    if phase not in PHASES:
        raise ValueError(f'phase {phase}*pi is not one of 0, pi/4, pi/2, 3pi/4')
    return phase


def vanishes_exactly(k: int, tau: Fraction, phase: Fraction) -> bool:
    """True when sin(pi*k*tau + pi*phase) is exactly zero, decided by residues."""
    return (k * tau + phase).denominator == 1


def attainable_residues(tau: Fraction):
    """Residues k*s mod t for k >= 1; every residue is reached since gcd(s, t) = 1."""
    return range(tau.denominator)


def classify_ratio(ratio: RatioValue, phase) -> RatioClass:
    phase = as_phase(phase)
    if float(ratio) <= 0:
        raise InvalidRatioError(f'side ratio must be positive, got {ratio}')

    if ratio.kind == RatioValue.EXACT_RATIONAL:
        tau = ratio.rational
        s, t = tau.numerator, tau.denominator
        if t == 1:
            return RatioClass(kind=RatioClass.INTEGER, s=s, t=1, phase=phase)
        resonant = any(vanishes_exactly(r, Fraction(1, t), phase) for r in attainable_residues(tau))
        kind = RatioClass.RATIONAL_RESONANT if resonant else RatioClass.RATIONAL_SEPARATED
        return RatioClass(kind=kind, s=s, t=t, phase=phase)

    if ratio.kind == RatioValue.QUADRATIC_SURD:
        return RatioClass(kind=RatioClass.ALGEBRAIC_IRRATIONAL, phase=phase, degree=2)

    logger.warning(f'ratio {ratio} given as float; rationality cannot be decided')
    return RatioClass(kind=RatioClass.FLOAT_UNKNOWN, phase=phase)
