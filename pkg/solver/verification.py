import logging
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.integrate import simpson

from modes.geometry import LOWER, UPPER

from .series import SeriesSolution, evaluate_grid

logger = logging.getLogger(__name__)


@dataclass
class ResidualReport:
    pde_residual_sup: float = 0.0
    boundary_residual_sup: dict = field(default_factory=dict)
    gluing_residual_sup: float = 0.0
    energy_sup: float = 0.0
    solution_sup: float = 0.0

    @property
    def max_boundary_residual(self):
        return max(self.boundary_residual_sup.values(), default=0.0)

    def as_dict(self):
        data = asdict(self)
        data['max_boundary_residual'] = self.max_boundary_residual
        return data


def _sup(values) -> float:
    return float(np.abs(values).max(initial=0.0))


def _pde_residual(sol, xs, ys):
    n = sol.n
    interior = ys[(ys != 0.0) & (np.abs(ys) < sol.spec.a)]
    if interior.size == 0:
        return 0.0
    dx_part = evaluate_grid(sol, xs, interior, dx_order=2 * n)
    dy_part = evaluate_grid(sol, xs, interior, dy_order=2 * n)
    return _sup(dx_part + np.sign(interior)[:, np.newaxis] * dy_part)


def _boundary_residuals(sol, xs):
    spec = sol.spec
    residuals = {}
    for j, order in enumerate(spec.schema.lower_orders(spec.n)):
        trace = evaluate_grid(sol, xs, [-spec.a], dy_order=order)[0]
        residuals[f'phi_{j}'] = _sup(trace - spec.phi[j](xs))
    for j, order in enumerate(spec.schema.upper_orders(spec.n)):
        trace = evaluate_grid(sol, xs, [spec.a], dy_order=order)[0]
        residuals[f'psi_{j}'] = _sup(trace - spec.psi[j](xs))
    ys = np.linspace(-spec.a, spec.a, len(xs))
    lateral = evaluate_grid(sol, [0.0, spec.l], ys)
    residuals['lateral'] = _sup(lateral)
    return residuals


def _gluing_residual(sol, xs):
    worst = 0.0
    for t in range(2 * sol.n):
        upper = evaluate_grid(sol, xs, [0.0], dy_order=t, side=UPPER)
        lower = evaluate_grid(sol, xs, [0.0], dy_order=t, side=LOWER)
        worst = max(worst, _sup(upper - lower))
    return worst


def _energy_sup(sol, xs, ys):
    """sup over y of the integral of (D_y^{2n} u)^2 dx, both one-sided limits at y = 0."""
    order = 2 * sol.n
    values = evaluate_grid(sol, xs, ys, dy_order=order) ** 2
    energies = list(simpson(values, x=xs, axis=1))
    if np.any(ys == 0.0):
        below = evaluate_grid(sol, xs, [0.0], dy_order=order, side=LOWER) ** 2
        energies.append(simpson(below[0], x=xs))
    return float(max(energies))


def verify(sol: SeriesSolution, grid=(51, 51)) -> ResidualReport:
    nx, ny = grid
    if nx < 9 or ny < 9:
        raise ValueError(f'verification grid must be at least 9x9, got {nx}x{ny}')
    spec = sol.spec
    xs = np.linspace(0.0, spec.l, nx)
    ys = np.linspace(-spec.a, spec.a, ny)
    report = ResidualReport(
        pde_residual_sup=_pde_residual(sol, xs, ys),
        boundary_residual_sup=_boundary_residuals(sol, xs),
        gluing_residual_sup=_gluing_residual(sol, xs),
        energy_sup=_energy_sup(sol, xs, ys),
        solution_sup=_sup(evaluate_grid(sol, xs, ys)),
    )
    logger.info(
        f'Residuals on {nx}x{ny}: pde={report.pde_residual_sup:.3e}, '
        f'boundary={report.max_boundary_residual:.3e}, gluing={report.gluing_residual_sup:.3e}'
    )
    return report
