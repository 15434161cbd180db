"""Per-mode coupling system: assembly with exponential column scaling, determinant, solve."""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from problems.exceptions import ConfigurationError, NonorthogonalDataError
from problems.validation import validate_problem

from .geometry import LOWER, UPPER, RootGeometry, basis_derivative, compute_root_geometry

logger = logging.getLogger(__name__)

# Relative projection of the data onto the left null space above which a
# degenerate mode is declared unsolvable.
ORTHOGONALITY_PROJECTION_TOL = 1e-8


@dataclass(frozen=True)
class ScaledLinearSystem:
    """matrix @ w = rhs * exp(rhs_scale), where the unscaled unknowns are w * exp(-column_scales).

    Rows: n conditions at y=+a, n at y=-a, then 2n gluing rows at y=0.
    det(unscaled) = det(matrix) * exp(sum(column_scales)).
    """
    k: int
    matrix: np.ndarray
    column_scales: np.ndarray
    rhs: np.ndarray
    rhs_scale: float = 0.0
    geometry: RootGeometry = None
    row_labels: tuple = ()

    @property
    def size(self):
        return self.matrix.shape[0]

    @property
    def full_rhs(self):
        return self.rhs * math.exp(self.rhs_scale)

    def unscaled_matrix(self):
        """Only meaningful while exp(column_scales) stays finite (small k)."""
        return self.matrix * np.exp(self.column_scales)[np.newaxis, :]


def column_log_scales(geom: RootGeometry, a: float):
    """Largest log-magnitude each basis column reaches on its boundary row."""
    scales = [max(0.0, geom.lam * f.cos_angle * a) for f in geom.upper_basis]
    scales += [max(0.0, -geom.lam * f.cos_angle * a) for f in geom.lower_basis]
    return np.array(scales)


def _normalised(rhs: np.ndarray):
    peak = float(np.abs(rhs).max(initial=0.0))
    if peak == 0.0:
        return rhs, 0.0
    return rhs / peak, math.log(peak)


def assemble_from_traces(n: int, l: float, a: float, schema, k: int, phi_k, psi_k) -> ScaledLinearSystem:
    """Build the 4n x 4n system for mode k from the sine coefficients of the data."""
    geom = compute_root_geometry(n, k, l)
    scales = column_log_scales(geom, a)
    size = 4 * n
    matrix = np.zeros((size, size))
    rhs = np.zeros(size)
    labels = []
    upper, lower = geom.upper_basis, geom.lower_basis
    upper_scales, lower_scales = scales[:2 * n], scales[2 * n:]

    # Boundary rows carry the derivative divided by lam^order; the data picks up (l/pi k)^order.
    for j, order in enumerate(schema.upper_orders(n)):
        for col, function in enumerate(upper):
            matrix[j, col] = basis_derivative(function, geom.lam, order, a, upper_scales[col]) / geom.lam ** order
        rhs[j] = psi_k[j] / geom.lam ** order
        labels.append(f'y=+a, order {order}')

    for j, order in enumerate(schema.lower_orders(n)):
        row = n + j
        for col, function in enumerate(lower):
            matrix[row, 2 * n + col] = (
                basis_derivative(function, geom.lam, order, -a, lower_scales[col]) / geom.lam ** order
            )
        rhs[row] = phi_k[j] / geom.lam ** order
        labels.append(f'y=-a, order {order}')

    for t in range(2 * n):
        row = 2 * n + t
        for col, function in enumerate(upper):
            matrix[row, col] = basis_derivative(function, geom.lam, t, 0.0, upper_scales[col]) / geom.lam ** t
        for col, function in enumerate(lower):
            matrix[row, 2 * n + col] = (
                -basis_derivative(function, geom.lam, t, 0.0, lower_scales[col]) / geom.lam ** t
            )
        labels.append(f'gluing, order {t}')

    rhs, rhs_scale = _normalised(rhs)
    return ScaledLinearSystem(
        k=k, matrix=matrix, column_scales=scales, rhs=rhs, rhs_scale=rhs_scale,
        geometry=geom, row_labels=tuple(labels),
    )


def assemble_mode_system(spec, coeffs, k: int) -> ScaledLinearSystem:
    report = validate_problem(spec)
    if not report.ok:
        raise ConfigurationError('invalid problem: ' + '; '.join(report.violations))
    if not 1 <= k <= coeffs.K:
        raise ValueError(f'mode {k} outside the coefficient table 1..{coeffs.K}')
    phi_k, psi_k = coeffs.at(k)
    return assemble_from_traces(spec.n, spec.l, spec.a, spec.schema, k, phi_k, psi_k)


def scaled_determinant(sys: ScaledLinearSystem):
    """(mantissa, log_scale) with det(unscaled) = mantissa * exp(log_scale)."""
    lu, piv = linalg.lu_factor(sys.matrix, check_finite=True)
    swaps = np.count_nonzero(piv != np.arange(len(piv)))
    mantissa = float(np.prod(np.diag(lu))) * (-1.0) ** swaps
    return mantissa, float(np.sum(sys.column_scales))


def singular_value_ratio(sys: ScaledLinearSystem) -> float:
    s = linalg.svd(sys.matrix, compute_uv=False)
    return float(s[-1] / s[0]) if s[0] > 0 else 0.0


@dataclass(frozen=True)
class ModeSolution:
    """Coefficients of u_k on both halves, kept in the scaled coordinates of the system.

    Unscaled coefficient j equals scaled_coeffs[j] * exp(-column_scales[j]).
    Kernel vectors live in the same scaled coordinates and have unit norm there.
    """
    k: int
    geometry: RootGeometry
    scaled_coeffs: np.ndarray
    column_scales: np.ndarray
    degenerate: bool = False
    kernel_basis: tuple = ()
    kernel_amplitudes: tuple = ()
    residual: float = 0.0
    singular_ratio: float = 1.0

    @property
    def n(self):
        return self.geometry.n

    @property
    def coefficients(self):
        with np.errstate(under='ignore'):
            return self.scaled_coeffs * np.exp(-self.column_scales)

    @property
    def upper_coeffs(self):
        return self.coefficients[:2 * self.n]

    @property
    def lower_coeffs(self):
        return self.coefficients[2 * self.n:]

    def derivative(self, t: int, y, side: str = None):
        """t-th y-derivative of u_k; side defaults to the sign of y (upper at y = 0)."""
        y = np.asarray(y, dtype=float)
        if side is None:
            upper = self._side_value(UPPER, t, np.maximum(y, 0.0))
            lower = self._side_value(LOWER, t, np.minimum(y, 0.0))
            return np.where(y >= 0.0, upper, lower)
        return self._side_value(side, t, y)

    def _side_value(self, side, t, y):
        geom = self.geometry
        offset = 0 if side == UPPER else 2 * self.n
        total = np.zeros_like(y)
        for index, function in enumerate(geom.side_basis(side)):
            col = offset + index
            weight = self.scaled_coeffs[col]
            if weight == 0.0:
                continue
            total = total + weight * basis_derivative(function, geom.lam, t, y, self.column_scales[col])
        return total


def solve_mode(sys: ScaledLinearSystem, degeneracy_tol: float = 1e-8, resonant: bool = False,
               kernel_amplitudes=()) -> ModeSolution:
    """Unique solve, or minimum-norm particular solution plus kernel when degenerate.

    resonant=True forces the degenerate branch along the weakest singular direction
    even when the singular-value test alone would not fire.
    """
    b = sys.full_rhs
    u, s, vh = linalg.svd(sys.matrix)
    ratio = float(s[-1] / s[0]) if s[0] > 0 else 0.0
    weak = s < degeneracy_tol * s[0]
    if resonant and not weak.any():
        weak[-1] = True

    if not weak.any():
        w = linalg.solve(sys.matrix, b)
        kernel = ()
        amplitudes = ()
    else:
        b_norm = float(np.linalg.norm(b))
        if b_norm > 0.0:
            projection = float(np.linalg.norm(u[:, weak].T @ b)) / b_norm
            if projection > ORTHOGONALITY_PROJECTION_TOL:
                raise NonorthogonalDataError(sys.k, projection)
        strong = ~weak
        w = vh[strong].T @ ((u[:, strong].T @ b) / s[strong])
        kernel = tuple(vh[weak])
        amplitudes = tuple(kernel_amplitudes) + (0.0,) * (len(kernel) - len(kernel_amplitudes))
        amplitudes = amplitudes[:len(kernel)]
        for amplitude, vector in zip(amplitudes, kernel):
            w = w + amplitude * vector
        logger.info(f'mode {sys.k}: degenerate, kernel dimension {len(kernel)}')

    residual_vector = sys.matrix @ w - b
    b_norm = float(np.linalg.norm(b))
    residual = float(np.linalg.norm(residual_vector))
    if b_norm > 0.0:
        residual /= b_norm
    return ModeSolution(
        k=sys.k,
        geometry=sys.geometry,
        scaled_coeffs=w,
        column_scales=sys.column_scales,
        degenerate=bool(weak.any()),
        kernel_basis=kernel,
        kernel_amplitudes=amplitudes,
        residual=residual,
        singular_ratio=ratio,
    )
