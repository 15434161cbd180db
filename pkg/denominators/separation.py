import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from problems.exceptions import InvalidRatioError
from problems.ratios import attainable_residues, vanishes_exactly
from problems.types import RatioClass

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SeparationBound:
    """Uniform lower bound delta on |sin(pi*k*tau + phase)| over all k >= 1."""
    delta: float
    witness_k2: int
    kind: str

    EXACT_RATIONAL_MIN = 'exact-rational-min'
    INTEGER_CASE = 'integer-case'
    EMPIRICAL_SCAN = 'empirical-scan'

    @property
    def separated(self):
        return self.delta > 0.0


def _residue_value(residue: int, t: int, phase: Fraction) -> float:
    if vanishes_exactly(residue, Fraction(1, t), phase):
        return 0.0
    return abs(math.sin(math.pi * float((Fraction(residue, t) + phase) % 2)))


def separation_bound(ratio_class: RatioClass, form) -> SeparationBound:
    """Exact minimum of |sin(pi*k*s/t + phase)| over one period of residues k*s mod t."""
    if not ratio_class.is_rational:
        raise InvalidRatioError(f'separation bound needs a rational ratio, got {ratio_class.kind}')
    if not form.tabulated:
        raise ValueError('separation bound needs a tabulated denominator form')
    phase = form.phase

    if ratio_class.kind == RatioClass.INTEGER:
        delta = _residue_value(0, 1, phase)
        if delta == 0.0:
            logger.warning(f'integer ratio {ratio_class.s} with phase 0: every mode is resonant')
        return SeparationBound(delta=delta, witness_k2=0, kind=SeparationBound.INTEGER_CASE)

    t = ratio_class.t
    values = [(_residue_value(r, t, phase), r) for r in attainable_residues(Fraction(ratio_class.s, t))]
    delta, witness = min(values)
    if delta == 0.0:
        logger.warning(f'ratio {ratio_class.s}/{t} with phase {phase}*pi vanishes at residue {witness}')
    return SeparationBound(delta=delta, witness_k2=witness, kind=SeparationBound.EXACT_RATIONAL_MIN)
