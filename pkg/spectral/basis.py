"""Sine eigenbasis X_k(x) = sqrt(2/l) sin(pi k x / l) and Fourier analysis of boundary data."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from problems.exceptions import DomainError, UnderResolvedModeError
from problems.types import SampledFunction, SinePolynomial

# Fewer samples than this per period of a mode count as under-resolved.
SAMPLES_PER_PERIOD = 8


def eigenfunction_value(k: int, x: float, l: float) -> float:
    if not 0.0 <= x <= l:
        raise DomainError(f'x={x} outside [0, {l}]')
    return math.sqrt(2.0 / l) * math.sin(math.pi * k * x / l)


def eigenfunction_derivative(k: int, x, l: float, order: int = 0):
    """order-th x-derivative of X_k, vectorised over x."""
    lam = math.pi * k / l
    return math.sqrt(2.0 / l) * lam ** order * np.sin(lam * np.asarray(x, dtype=float) + order * math.pi / 2)


def nyquist_mode(function: SampledFunction) -> int:
    """Largest mode resolved with SAMPLES_PER_PERIOD samples per period."""
    return 2 * (len(function.samples) - 1) // SAMPLES_PER_PERIOD


def sine_coefficient(f, k: int, l: float) -> float:
    """Integral of f * X_k over [0, l]."""
    if isinstance(f, SinePolynomial):
        # X_k is orthonormal, sin(pi k x/l) = sqrt(l/2) X_k
        return f.coefficient(k) * math.sqrt(l / 2.0)
    if isinstance(f, SampledFunction):
        if k > nyquist_mode(f):
            raise UnderResolvedModeError(
                f'under-resolved mode {k}: {len(f.samples)} samples resolve modes up to {nyquist_mode(f)}'
            )
        nodes = f.nodes
        return float(simpson(f.values * eigenfunction_derivative(k, nodes, l), x=nodes))
    raise TypeError(f'unsupported boundary function {type(f).__name__}')


@dataclass(frozen=True)
class ModeCoefficients:
    """phi[s, k-1] and psi[s, k-1]: sine coefficients of the boundary data."""
    phi: np.ndarray
    psi: np.ndarray

    @property
    def K(self):
        return self.phi.shape[1]

    def at(self, k: int):
        return self.phi[:, k - 1], self.psi[:, k - 1]

    def data_norm(self) -> float:
        return float(max(np.abs(self.phi).max(initial=0.0), np.abs(self.psi).max(initial=0.0)))


def mode_coefficients(spec, K: int = None) -> ModeCoefficients:
    """Coefficient table for modes 1..K; sampled data beyond its resolution is an error."""
    K = K or spec.K
    phi = np.array([[sine_coefficient(f, k, spec.l) for k in range(1, K + 1)] for f in spec.phi])
    psi = np.array([[sine_coefficient(f, k, spec.l) for k in range(1, K + 1)] for f in spec.psi])
    return ModeCoefficients(phi=phi.reshape(spec.n, K), psi=psi.reshape(spec.n, K))
