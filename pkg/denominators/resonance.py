"""Resonant-mode detection and the empirical asymptotic constant of the mode determinant.

The scaled determinant of mode k behaves like M * (Delta_k + r_k) with Delta_k
the tabulated small denominator and r_k -> 0. A mode is resonant when the
scaled matrix is numerically rank deficient, or, for exact rational a/l with
a tabulated form, when Delta_k vanishes exactly (r_k is then only
exponentially small and the matrix stays numerically regular). Irrational
and float ratios never have a vanishing Delta_k; only the rank test applies.
Schemas without a closed form fall back to |mantissa / M_hat| < resonance_tol.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from modes.parallel import map_modes
from modes.system import assemble_from_traces, scaled_determinant, singular_value_ratio
from problems.conf import solver_setting
from problems.exceptions import AsymptoticsError, ConfigurationError
from problems.ratios import vanishes_exactly
from problems.types import RatioValue
from problems.validation import validate_problem

from .forms import expected_denominator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModeDeterminant:
    k: int
    mantissa: float
    log_scale: float
    singular_ratio: float


@dataclass(frozen=True)
class DenominatorRow:
    k: int
    expected_delta4: float
    mantissa: float
    log_scale: float
    delta5_estimate: float
    resonant: bool
    predicted: bool = None


@dataclass
class DenominatorReport:
    rows: list = field(default_factory=list)
    M_hat: float = math.nan
    min_abs_delta4: float = math.nan
    disagreements: list = field(default_factory=list)

    @property
    def resonant_modes(self):
        return [row.k for row in self.rows if row.resonant]

    def summary(self):
        return {
            'M_hat': self.M_hat,
            'min_abs_delta4': self.min_abs_delta4,
            'resonant_modes': self.resonant_modes,
            'disagreements': self.disagreements,
        }


def mode_determinant(spec, k: int) -> ModeDeterminant:
    zeros = np.zeros(spec.n)
    system = assemble_from_traces(spec.n, spec.l, spec.a, spec.schema, k, zeros, zeros)
    mantissa, log_scale = scaled_determinant(system)
    return ModeDeterminant(k, mantissa, log_scale, singular_value_ratio(system))


def mode_determinants(spec, ks, workers=None):
    return map_modes(lambda k: mode_determinant(spec, k), ks, workers=workers)


def expected_values(spec, ks):
    """Tabulated Delta_k per k, or None when the schema has no closed form."""
    form = expected_denominator(spec.order, spec.schema)
    if not form.tabulated:
        return None
    if spec.ratio.kind == RatioValue.EXACT_RATIONAL:
        return [form.exact_value(k, spec.ratio.rational) for k in ks]
    return [form.value(k, spec.tau) for k in ks]


def find_degenerate_modes(determinants, degeneracy_tol: float = None):
    """Modes whose scaled matrix has sigma_min / sigma_max below degeneracy_tol."""
    tol = degeneracy_tol if degeneracy_tol is not None else solver_setting('DEGENERACY_TOL')
    return [det.k for det in determinants if det.singular_ratio < tol]


def _median_constant(determinants, deltas, admissible):
    ratios = [d.mantissa / delta for d, delta in zip(determinants, deltas) if abs(delta) >= admissible]
    if not ratios:
        return None, None
    m_hat = float(np.median(ratios))
    dispersion = max(abs(r - m_hat) for r in ratios) / abs(m_hat)
    return m_hat, dispersion


def asymptotic_constant(spec, k_range, workers=None):
    """(M_hat, dispersion) over the k in k_range with |Delta_k| >= the admissible floor."""
    ks = list(k_range)
    deltas = expected_values(spec, ks)
    if deltas is None:
        raise AsymptoticsError('denominator form not tabulated for this schema')
    admissible = solver_setting('ADMISSIBLE_DELTA4')
    if not any(abs(delta) >= admissible for delta in deltas):
        raise AsymptoticsError(f'no admissible k in {ks[0] if ks else "-"}..{ks[-1] if ks else "-"}')
    kept = [(k, delta) for k, delta in zip(ks, deltas) if abs(delta) >= admissible]
    determinants = mode_determinants(spec, [k for k, _ in kept], workers=workers)
    return _median_constant(determinants, [delta for _, delta in kept], admissible)


def _predicted_resonant(spec, k, form):
    if not form.tabulated or spec.ratio.kind != RatioValue.EXACT_RATIONAL:
        return None
    return vanishes_exactly(k, spec.ratio.rational, form.phase)


def denominator_report(spec, K: int = None, degeneracy_tol: float = None,
                       resonance_tol: float = None, workers=None) -> DenominatorReport:
    report_check = validate_problem(spec)
    if not report_check.ok:
        raise ConfigurationError('invalid problem: ' + '; '.join(report_check.violations))
    K = K or spec.K
    degeneracy_tol = degeneracy_tol if degeneracy_tol is not None else spec.tolerances.degeneracy_tol
    if resonance_tol is None:
        resonance_tol = spec.tolerances.resonance_tol
    if resonance_tol is None:
        resonance_tol = solver_setting('RESONANCE_TOL')
    ks = list(range(1, K + 1))
    form = expected_denominator(spec.order, spec.schema)
    determinants = mode_determinants(spec, ks, workers=workers)
    deltas = expected_values(spec, ks)

    report = DenominatorReport()
    if deltas is not None:
        report.min_abs_delta4 = float(min(abs(delta) for delta in deltas))
        m_hat, _ = _median_constant(determinants, deltas, solver_setting('ADMISSIBLE_DELTA4'))
    else:
        m_hat = None
    if m_hat is None:
        logger.warning('no tabulated denominator to normalise by; using the median mantissa magnitude')
        m_hat = float(np.median([abs(d.mantissa) for d in determinants]))
    report.M_hat = m_hat

    degenerate = set(find_degenerate_modes(determinants, degeneracy_tol))
    for index, det in enumerate(determinants):
        delta = deltas[index] if deltas is not None else math.nan
        normalised = det.mantissa / m_hat if m_hat else math.nan
        detected = det.k in degenerate or abs(normalised) < resonance_tol
        predicted = _predicted_resonant(spec, det.k, form)
        if predicted is not None:
            resonant = det.k in degenerate or predicted
            if predicted != detected:
                message = (f'mode {det.k}: mantissa looks {"resonant" if detected else "regular"}, '
                           f'denominator table predicts {"resonant" if predicted else "regular"}')
                logger.warning(message)
                report.disagreements.append(det.k)
        elif deltas is None:
            resonant = detected
        else:
            resonant = det.k in degenerate
            if detected and not resonant:
                logger.warning(f'mode {det.k}: small denominator {normalised:.3g} for a ratio that never vanishes')
        report.rows.append(DenominatorRow(
            k=det.k,
            expected_delta4=delta,
            mantissa=det.mantissa,
            log_scale=det.log_scale,
            delta5_estimate=normalised - delta,
            resonant=resonant,
            predicted=predicted,
        ))

    if report.resonant_modes:
        logger.info(f'Resonant modes up to K={K}: {report.resonant_modes}')
    return report


def detect_resonant_modes(spec, K: int = None, **kwargs):
    return denominator_report(spec, K, **kwargs).resonant_modes
