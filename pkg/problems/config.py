"""Load problem configuration files into ProblemSpec instances."""

import json
import logging
from pathlib import Path

from .conf import solver_setting
from .exceptions import ConfigurationError
from .serializers import ProblemConfigSerializer
from .types import (
    BoundarySchema, ProblemSpec, RatioValue, SampledFunction, SinePolynomial, Tolerances,
)

logger = logging.getLogger(__name__)


def _ratio_from(data) -> RatioValue:
    if 'num' in data:
        return RatioValue.exact(data['num'], data.get('den', 1))
    if 'surd' in data:
        surd = data['surd']
        return RatioValue.from_surd(surd['p'], surd['q'], surd['d'])
    return RatioValue.approximate(data['float'])


def _function_from(data, length_l):
    if data['type'] == 'sine':
        terms = tuple((int(mode), coeff) for mode, coeff in data['terms'])
        return SinePolynomial(terms=terms, length_l=length_l)
    return SampledFunction(samples=tuple(data['values']), length_l=length_l)


def spec_from_dict(raw: dict, overrides: dict = None) -> ProblemSpec:
    """Validate a configuration tree and build the immutable problem statement."""
    serializer = ProblemConfigSerializer(data=raw)
    if not serializer.is_valid():
        raise ConfigurationError('invalid problem configuration', errors=serializer.errors)
    data = dict(serializer.validated_data)
    data.update({key: value for key, value in (overrides or {}).items() if value is not None})

    length_l = data['l']
    tolerances = data.get('tolerances') or {}
    try:
        return ProblemSpec(
            n=data['order'] // 2,
            l=length_l,
            a=data['a'],
            ratio=_ratio_from(data['ratio']),
            schema=BoundarySchema(**data['schema']),
            phi=tuple(_function_from(item, length_l) for item in data['phi']),
            psi=tuple(_function_from(item, length_l) for item in data['psi']),
            K=data.get('K') or solver_setting('K'),
            tolerances=Tolerances(
                degeneracy_tol=tolerances.get('degeneracy_tol', solver_setting('DEGENERACY_TOL')),
                residual_tol=tolerances.get('residual_tol', solver_setting('RESIDUAL_TOL')),
                resonance_tol=tolerances.get('resonance_tol', solver_setting('RESONANCE_TOL')),
            ),
            kernel_amplitudes=data.get('kernel_amplitudes') or {},
        )
    except ValueError as e:
        raise ConfigurationError(str(e)) from e


def load_spec(path, overrides: dict = None) -> ProblemSpec:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding='utf-8'))
    except FileNotFoundError as e:
        raise ConfigurationError(f'config file not found: {path}') from e
    except json.JSONDecodeError as e:
        raise ConfigurationError(f'config file {path} is not valid JSON: {e}') from e
    logger.info(f'Loaded problem configuration from {path}')
    return spec_from_dict(raw, overrides)
