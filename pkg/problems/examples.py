"""The two fourth-order model problems on (0,3) x (-1,1)."""

from .types import BoundarySchema, ProblemSpec, RatioValue, SinePolynomial, Tolerances

EXAMPLE_L = 3.0
EXAMPLE_A = 1.0

# Task 1: u(x,-1), u'(x,-1) prescribed; Task 2: u''(x,-1), u'(x,-1) prescribed.
# Both prescribe u(x,1), u'(x,1).
TASK_SCHEMAS = {
    1: BoundarySchema(gamma=1, delta=1, q=0, chi=0),
    2: BoundarySchema(gamma=1, delta=1, q=1, chi=0),
}


def example_spec(task: int, phi=None, psi=None, K: int = 60, tolerances: Tolerances = None) -> ProblemSpec:
    """Problem spec for task 1 or 2; boundary data defaults to zero."""
    if task not in TASK_SCHEMAS:
        raise ValueError(f'task must be 1 or 2, got {task}')
    zero = SinePolynomial(terms=(), length_l=EXAMPLE_L)
    return ProblemSpec(
        n=2,
        l=EXAMPLE_L,
        a=EXAMPLE_A,
        ratio=RatioValue.exact(1, 3),
        schema=TASK_SCHEMAS[task],
        phi=tuple(phi) if phi is not None else (zero, zero),
        psi=tuple(psi) if psi is not None else (zero, zero),
        K=K,
        tolerances=tolerances or Tolerances(),
    )


def sine_data(modes, length_l: float = EXAMPLE_L, scale: float = 1.0):
    """A sine polynomial with coefficient scale/k on each listed mode."""
    return SinePolynomial(terms=tuple((k, scale / k) for k in sorted(modes)), length_l=length_l)
