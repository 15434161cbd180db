"""Coefficient-decay surrogates for the smoothness hypotheses on the boundary data.

The Hoelder and C^(2n+1) conditions cannot be read off samples; the decay exponent
of the sine coefficients stands in for them and is reported as such.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from problems.conf import solver_setting
from problems.types import RatioValue, SinePolynomial
from spectral.basis import nyquist_mode, sine_coefficient

logger = logging.getLogger(__name__)

SUFFICIENT_T2 = 'sufficient-T2'
SUFFICIENT_T3 = 'sufficient-T3'
INCONCLUSIVE = 'inconclusive'

# Coefficients below this fraction of the largest one are treated as zero.
NOISE_FLOOR = 1e-12


@dataclass(frozen=True)
class FunctionDecay:
    name: str
    exponent: float
    verdict: str


@dataclass
class SmoothnessReport:
    entries: list = field(default_factory=list)
    threshold: float = 0.0
    surrogate: bool = True

    @property
    def verdict(self):
        verdicts = {entry.verdict for entry in self.entries}
        if not verdicts or INCONCLUSIVE in verdicts:
            return INCONCLUSIVE
        return SUFFICIENT_T3 if SUFFICIENT_T3 in verdicts else SUFFICIENT_T2


def decay_exponent(coefficients) -> float:
    """Least-squares slope of -log|c_k| against log k over the non-increasing envelope."""
    magnitudes = np.abs(np.asarray(coefficients, dtype=float))
    if not magnitudes.size or magnitudes.max() == 0.0:
        return math.inf
    envelope = np.maximum.accumulate(magnitudes[::-1])[::-1]
    ks = np.arange(1, len(magnitudes) + 1)
    keep = envelope > NOISE_FLOOR * magnitudes.max()
    if keep.sum() < 3:
        return math.nan
    slope, _ = np.polyfit(np.log(ks[keep]), np.log(envelope[keep]), 1)
    return float(-slope)


def _function_decay(name, function, spec, irrational, epsilon):
    t2_threshold = 2 * spec.n + 2
    if isinstance(function, SinePolynomial):
        return FunctionDecay(name, math.inf, SUFFICIENT_T2)
    top = nyquist_mode(function)
    exponent = decay_exponent([sine_coefficient(function, k, spec.l) for k in range(1, top + 1)])
    if math.isnan(exponent):
        verdict = INCONCLUSIVE
    elif irrational:
        verdict = SUFFICIENT_T3 if exponent >= t2_threshold + epsilon else INCONCLUSIVE
    else:
        verdict = SUFFICIENT_T2 if exponent >= t2_threshold else INCONCLUSIVE
    return FunctionDecay(name, exponent, verdict)


def smoothness_check(spec, epsilon: float = None) -> SmoothnessReport:
    epsilon = epsilon if epsilon is not None else solver_setting('EPSILON')
    irrational = spec.ratio.kind != RatioValue.EXACT_RATIONAL
    threshold = 2 * spec.n + 2 + (epsilon if irrational else 0.0)
    report = SmoothnessReport(threshold=threshold)
    for prefix, functions in (('phi', spec.phi), ('psi', spec.psi)):
        for index, function in enumerate(functions):
            report.entries.append(_function_decay(f'{prefix}_{index}', function, spec, irrational, epsilon))
    logger.info(f'Smoothness surrogate verdict: {report.verdict} (threshold {threshold})')
    return report
