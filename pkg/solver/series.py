"""Truncated sine series u(x, y) = sum_k u_k(y) X_k(x) and its pointwise evaluation."""

import logging
from dataclasses import dataclass, field

import numpy as np

from denominators.forms import expected_denominator
from denominators.resonance import denominator_report
from modes.parallel import map_modes
from modes.system import assemble_mode_system, solve_mode
from problems.conf import solver_setting
from problems.exceptions import ConfigurationError, DomainError, NonorthogonalDataError
from problems.ratios import classify_ratio
from problems.validation import validate_problem
from spectral.basis import eigenfunction_derivative, mode_coefficients

logger = logging.getLogger(__name__)


@dataclass
class SeriesSolution:
    spec: object
    modes: list
    resonant_modes: list = field(default_factory=list)
    M_hat: float = None
    ratio_class: object = None
    denominator: object = None

    @property
    def K(self):
        return len(self.modes)

    @property
    def n(self):
        return self.spec.n

    def mode(self, k: int):
        return self.modes[k - 1]

    def coefficient_matrix(self):
        """Unscaled coefficients, one row per mode."""
        return np.array([mode.coefficients for mode in self.modes])


def _kernel_amplitudes(spec, k):
    amplitudes = spec.kernel_amplitudes.get(k) or spec.kernel_amplitudes.get(str(k)) or ()
    return tuple(float(a) for a in amplitudes)


def check_resonant_data(coeffs, resonant_modes, tol: float = None):
    """Data must vanish on every resonant mode; raises on the first offending k."""
    tol = tol if tol is not None else solver_setting('ORTHOGONALITY_TOL')
    bound = tol * coeffs.data_norm()
    for k in sorted(resonant_modes):
        if k > coeffs.K:
            continue
        phi_k, psi_k = coeffs.at(k)
        worst = float(max(np.abs(phi_k).max(initial=0.0), np.abs(psi_k).max(initial=0.0)))
        if worst > bound:
            raise NonorthogonalDataError(k, worst / coeffs.data_norm())


def build_solution(spec, K: int = None, resonant_modes=None, workers=None) -> SeriesSolution:
    """Solve every mode 1..K; resonant modes need data orthogonal to them.

    resonant_modes overrides detection, otherwise the denominator report decides.
    """
    report = validate_problem(spec)
    if not report.ok:
        raise ConfigurationError('invalid problem: ' + '; '.join(report.violations))
    for warning in report.warnings:
        logger.warning(warning)

    K = K or spec.K
    form = expected_denominator(spec.order, spec.schema)
    ratio_class = classify_ratio(spec.ratio, form.phase) if form.tabulated else None
    if ratio_class is not None:
        logger.info(f'Side ratio {spec.ratio} classified as {ratio_class.kind}')

    coeffs = mode_coefficients(spec, K)
    denominators = denominator_report(spec, K, workers=workers)
    resonant = sorted(resonant_modes) if resonant_modes is not None else denominators.resonant_modes
    check_resonant_data(coeffs, resonant)

    resonant_set = set(resonant)

    def solve(k):
        system = assemble_mode_system(spec, coeffs, k)
        return solve_mode(
            system,
            degeneracy_tol=spec.tolerances.degeneracy_tol,
            resonant=k in resonant_set,
            kernel_amplitudes=_kernel_amplitudes(spec, k),
        )

    modes = map_modes(solve, range(1, K + 1), workers=workers)
    worst = max(modes, key=lambda mode: mode.residual)
    if worst.residual > spec.tolerances.residual_tol:
        logger.warning(f'mode {worst.k}: relative system residual {worst.residual:.3e}')
    logger.info(f'Built series with K={K}, resonant modes {resonant}')
    return SeriesSolution(
        spec=spec,
        modes=modes,
        resonant_modes=resonant,
        M_hat=denominators.M_hat,
        ratio_class=ratio_class,
        denominator=denominators,
    )


def _check_orders(n, dx_order, dy_order):
    for name, order in (('dx_order', dx_order), ('dy_order', dy_order)):
        if not 0 <= order <= 2 * n:
            raise DomainError(f'{name}={order} outside 0..{2 * n}')


def evaluate_grid(sol: SeriesSolution, xs, ys, dx_order: int = 0, dy_order: int = 0, side: str = None):
    """Values on the tensor grid, shape (len(ys), len(xs))."""
    _check_orders(sol.n, dx_order, dy_order)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    l = sol.spec.l
    total = np.zeros((len(ys), len(xs)))
    for mode in sol.modes:
        if not np.any(mode.scaled_coeffs):
            continue
        total += np.outer(
            mode.derivative(dy_order, ys, side=side),
            eigenfunction_derivative(mode.k, xs, l, dx_order),
        )
    return total


def evaluate(sol: SeriesSolution, x: float, y: float, dx_order: int = 0, dy_order: int = 0) -> float:
    spec = sol.spec
    if not 0.0 <= x <= spec.l or not -spec.a <= y <= spec.a:
        raise DomainError(f'point ({x}, {y}) outside [0, {spec.l}] x [-{spec.a}, {spec.a}]')
    return float(evaluate_grid(sol, [x], [y], dx_order, dy_order)[0, 0])
