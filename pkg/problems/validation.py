"""Report-style validation of a ProblemSpec against the admissible problem set."""

import math

from .conf import solver_setting
from .types import ProblemSpec, RatioValue, ValidationReport, BoundarySchema

UNTABULATED_WARNING = 'denominator form not tabulated for mixed schema (gamma != delta)'


def validate_schema(schema: BoundarySchema, n: int, report: ValidationReport):
    if schema.gamma not in (1, 2):
        report.violations.append(f'gamma ∈ {{1,2}} required (gamma={schema.gamma})')
    if schema.delta not in (1, 2):
        report.violations.append(f'delta ∈ {{1,2}} required (delta={schema.delta})')
    if schema.q < 0 or schema.chi < 0:
        report.violations.append('q and chi must be nonnegative')
        return

    if schema.gamma == schema.delta == 1:
        if schema.q > n:
            report.violations.append(f'q ≤ n required (q={schema.q}, n={n})')
        if schema.chi > n:
            report.violations.append(f'chi ≤ n required (chi={schema.chi}, n={n})')
    elif schema.gamma == schema.delta == 2:
        if schema.q > 1:
            report.violations.append(f'q ∈ {{0,1}} required when gamma = delta = 2 (q={schema.q})')
        if schema.chi > 1:
            report.violations.append(f'chi ∈ {{0,1}} required when gamma = delta = 2 (chi={schema.chi})')
    elif schema.gamma in (1, 2) and schema.delta in (1, 2):
        report.warnings.append(UNTABULATED_WARNING)

    top = 2 * n - 1
    if schema.gamma in (1, 2) and max(schema.lower_orders(n)) > top:
        report.violations.append(
            f'derivative order q + gamma*s reaches {max(schema.lower_orders(n))} ≥ 2n = {2 * n}'
        )
    if schema.delta in (1, 2) and max(schema.upper_orders(n)) > top:
        report.violations.append(
            f'derivative order chi + delta*s reaches {max(schema.upper_orders(n))} ≥ 2n = {2 * n}'
        )


def validate_problem(spec: ProblemSpec, ratio_match_tol: float = None) -> ValidationReport:
    """Return every violation of the admissible set; never raises."""
    if ratio_match_tol is None:
        ratio_match_tol = solver_setting('RATIO_MATCH_TOL')
    report = ValidationReport()

    if spec.n < 1:
        report.violations.append(f'n must be positive (n={spec.n})')
        return report
    if not spec.l > 0 or not spec.a > 0:
        report.violations.append(f'l and a must be positive (l={spec.l}, a={spec.a})')
    if spec.K < 1:
        report.violations.append(f'truncation K must be ≥ 1 (K={spec.K})')

    validate_schema(spec.schema, spec.n, report)

    if not spec.phi or not spec.psi:
        report.violations.append('empty boundary data')
    elif len(spec.phi) != spec.n or len(spec.psi) != spec.n:
        report.violations.append(
            f'need n={spec.n} boundary functions per side (phi: {len(spec.phi)}, psi: {len(spec.psi)})'
        )
    for name, functions in (('phi', spec.phi), ('psi', spec.psi)):
        for index, function in enumerate(functions):
            if not math.isclose(function.length_l, spec.l, rel_tol=1e-12):
                report.violations.append(f'{name}[{index}] is defined on [0, {function.length_l}], not [0, {spec.l}]')

    if spec.l > 0 and spec.a > 0:
        if float(spec.ratio) <= 0:
            report.violations.append('ratio must be positive')
        elif abs(spec.a / spec.l - float(spec.ratio)) > ratio_match_tol:
            report.violations.append(
                f'a/l = {spec.a / spec.l!r} does not match ratio {spec.ratio} within {ratio_match_tol}'
            )
        if spec.ratio.kind == RatioValue.FLOAT:
            report.warnings.append('ratio given as float; Diophantine classification unavailable')

    return report
