"""One-mode exact solutions with chosen coefficients, and the boundary data they induce."""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import linalg

from modes.geometry import basis_derivative, compute_root_geometry
from problems.examples import EXAMPLE_A, EXAMPLE_L, TASK_SCHEMAS
from problems.types import ProblemSpec, RatioValue, SinePolynomial, Tolerances


@dataclass(frozen=True)
class ManufacturedMode:
    spec: ProblemSpec
    k: int
    coefficients: np.ndarray  # upper c then lower d, unscaled

    @property
    def upper_coeffs(self):
        return self.coefficients[:2 * self.spec.n]

    @property
    def lower_coeffs(self):
        return self.coefficients[2 * self.spec.n:]

    def u(self, x, y):
        """Exact u(x, y) of the manufactured mode."""
        geom = compute_root_geometry(self.spec.n, self.k, self.spec.l)
        y = float(y)
        if y >= 0.0:
            basis, weights = geom.upper_basis, self.upper_coeffs
        else:
            basis, weights = geom.lower_basis, self.lower_coeffs
        u_k = sum(w * float(basis_derivative(f, geom.lam, 0, y)) for f, w in zip(basis, weights))
        return u_k * math.sqrt(2.0 / self.spec.l) * np.sin(geom.lam * np.asarray(x, dtype=float))


def glued_lower_coefficients(geom, upper_coeffs):
    """Lower coefficients matching every derivative of order < 2n at y = 0."""
    orders = range(2 * geom.n)
    upper = np.array([[basis_derivative(f, geom.lam, t, 0.0) / geom.lam ** t for f in geom.upper_basis]
                      for t in orders])
    lower = np.array([[basis_derivative(f, geom.lam, t, 0.0) / geom.lam ** t for f in geom.lower_basis]
                      for t in orders])
    return linalg.solve(lower, upper @ np.asarray(upper_coeffs, dtype=float))


def manufactured_mode(k: int, upper_coeffs, schema=None, n: int = 2, l: float = EXAMPLE_L,
                      a: float = EXAMPLE_A, ratio: RatioValue = None, K: int = None) -> ManufacturedMode:
    """Problem whose exact solution is u_k(y) X_k(x) with the given upper coefficients."""
    schema = schema or TASK_SCHEMAS[2]
    geom = compute_root_geometry(n, k, l)
    upper_coeffs = np.asarray(upper_coeffs, dtype=float)
    lower_coeffs = glued_lower_coefficients(geom, upper_coeffs)

    def trace(basis, weights, order, y):
        return sum(w * float(basis_derivative(f, geom.lam, order, y)) for f, w in zip(basis, weights))

    # u_k X_k has sine coefficient trace * sqrt(2/l) on mode k
    to_sine = math.sqrt(2.0 / l)
    phi = tuple(
        SinePolynomial(terms=((k, to_sine * trace(geom.lower_basis, lower_coeffs, order, -a)),), length_l=l)
        for order in schema.lower_orders(n)
    )
    psi = tuple(
        SinePolynomial(terms=((k, to_sine * trace(geom.upper_basis, upper_coeffs, order, a)),), length_l=l)
        for order in schema.upper_orders(n)
    )
    spec = ProblemSpec(
        n=n,
        l=l,
        a=a,
        ratio=ratio or RatioValue.exact(Fraction(a / l).limit_denominator(10_000)),
        schema=schema,
        phi=phi,
        psi=psi,
        K=K or max(k, 5),
        tolerances=Tolerances(),
    )
    return ManufacturedMode(spec=spec, k=k, coefficients=np.concatenate([upper_coeffs, lower_coeffs]))
