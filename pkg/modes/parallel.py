import concurrent.futures
import logging

from problems.conf import solver_setting

logger = logging.getLogger(__name__)


def map_modes(fn, ks, workers=None):
    """Apply fn to every mode index, returning results in the order of ks.

    LAPACK releases the GIL, so threads are enough for the per-mode solves.
    """
    ks = list(ks)
    workers = workers or solver_setting('WORKERS')
    if workers <= 1 or len(ks) < 2:
        return [fn(k) for k in ks]
    logger.debug(f'Dispatching {len(ks)} modes to {workers} workers')
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, ks))
