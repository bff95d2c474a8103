"""
Fan-out of independent per-point work over a billiard process pool.

Results always come back in input order, so serial and parallel runs of the
same inputs produce identical lists.
"""

import logging

from billiard import Pool
from tqdm import tqdm

from crtool import settings

logger = logging.getLogger(__name__)


def _chunksize(count, threads):
    return max(1, count // (4 * threads))


def run_tasks(func, items, threads=None, desc=None):
    """[func(item) for item in items], on `threads` worker processes."""
    items = list(items)
    threads = settings.THREADS if threads is None else threads
    if threads < 1:
        raise ValueError(f"threads must be at least 1, got {threads}")
    progress = dict(total=len(items), desc=desc, disable=not settings.SHOW_PROGRESS, leave=False)

    if threads == 1 or len(items) <= 1:
        return [func(item) for item in tqdm(items, **progress)]

    processes = min(threads, len(items))
    logger.debug("running %d tasks on %d processes", len(items), processes)
    with Pool(processes=processes) as pool:
        results = pool.imap(func, items, chunksize=_chunksize(len(items), processes))
        return list(tqdm(results, **progress))
