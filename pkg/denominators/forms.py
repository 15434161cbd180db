"""Closed form of the small denominator sin(pi*k*a/l + phase) per equation order and schema."""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from problems.ratios import PHASE_HALF, PHASE_QUARTER, PHASE_THREE_QUARTERS, PHASE_ZERO

logger = logging.getLogger(__name__)

# (order mod 8, gamma, q mod 2) -> phase as a multiple of pi.
# Orders 0 and 4 mod 8 carry the even-order table, 2 and 6 the odd-order one.
DENOMINATOR_TABLE = {
    (4, 1, 1): PHASE_HALF,
    (4, 1, 0): PHASE_ZERO,
    (0, 1, 0): PHASE_HALF,
    (0, 1, 1): PHASE_ZERO,
    (0, 2, 0): PHASE_QUARTER,
    (0, 2, 1): PHASE_THREE_QUARTERS,
    (4, 2, 0): PHASE_QUARTER,
    (4, 2, 1): PHASE_THREE_QUARTERS,
    (2, 1, 0): PHASE_QUARTER,
    (6, 1, 1): PHASE_QUARTER,
    (6, 1, 0): PHASE_THREE_QUARTERS,
    (2, 1, 1): PHASE_THREE_QUARTERS,
    (2, 2, 0): PHASE_QUARTER,
    (6, 2, 0): PHASE_QUARTER,
    (2, 2, 1): PHASE_THREE_QUARTERS,
    (6, 2, 1): PHASE_THREE_QUARTERS,
}


@dataclass(frozen=True)
class DenominatorForm:
    """Delta_k = sin(pi*k*tau + pi*phase); phase is None when the schema is not tabulated."""
    phase: Fraction = None
    tabulated: bool = True

    def value(self, k: int, tau: float) -> float:
        if not self.tabulated:
            raise ValueError('denominator form not tabulated for this schema')
        return math.sin(math.pi * (k * tau + float(self.phase)))

    def exact_value(self, k: int, tau: Fraction) -> float:
        """Same as value(), reducing k*tau modulo 2 in exact arithmetic first."""
        if not self.tabulated:
            raise ValueError('denominator form not tabulated for this schema')
        return math.sin(math.pi * float((k * tau + self.phase) % 2))

    @property
    def label(self):
        if not self.tabulated:
            return 'untabulated'
        return f'sin(pi*k*a/l + {self.phase}*pi)' if self.phase else 'sin(pi*k*a/l)'


UNTABULATED = DenominatorForm(phase=None, tabulated=False)


def expected_denominator(order: int, schema) -> DenominatorForm:
    if schema.is_mixed:
        return UNTABULATED
    phase = DENOMINATOR_TABLE.get((order % 8, schema.gamma, schema.q % 2))
    if phase is None:
        logger.warning(f'no denominator form for order {order}, gamma={schema.gamma}, q={schema.q}')
        return UNTABULATED
    return DenominatorForm(phase=phase)
