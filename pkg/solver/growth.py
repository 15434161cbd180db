import logging
import math
from dataclasses import dataclass

import numpy as np

from modes.parallel import map_modes
from modes.system import assemble_from_traces, solve_mode
from problems.exceptions import NonorthogonalDataError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GrowthRow:
    k: int
    log_magnitude: float
    degenerate: bool = False

    @property
    def magnitude(self):
        return math.exp(self.log_magnitude) if math.isfinite(self.log_magnitude) else math.inf


def _probe(spec, k):
    ones = np.ones(spec.n)
    system = assemble_from_traces(spec.n, spec.l, spec.a, spec.schema, k, ones, ones)
    try:
        solution = solve_mode(system, degeneracy_tol=spec.tolerances.degeneracy_tol)
    except NonorthogonalDataError:
        return GrowthRow(k=k, log_magnitude=math.inf, degenerate=True)
    if solution.degenerate:
        return GrowthRow(k=k, log_magnitude=math.inf, degenerate=True)
    peak = float(np.abs(solution.scaled_coeffs).max(initial=0.0))
    return GrowthRow(k=k, log_magnitude=math.log(peak) if peak > 0.0 else -math.inf)


def growth_probe(spec, k_list, workers=None):
    """Natural log of the largest scaled mode coefficient under unit data, per k.

    A scaled coefficient is the unscaled one times the peak of its basis function
    on its half-rectangle, so the figure tracks the size of u_k itself.
    """
    rows = map_modes(lambda k: _probe(spec, k), k_list, workers=workers)
    logger.info('Growth probe: ' + ', '.join(f'k={row.k}: {row.log_magnitude:.3f}' for row in rows))
    return rows
