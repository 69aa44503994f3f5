"""
Timing Utility - Wall-clock time per pipeline phase
"""

import logging
import time
from contextlib import contextmanager

logger = logging.getLogger(__name__)

PHASES = ("parse", "cliques", "matrices", "tfidf", "clustering", "auto-k", "metrics")


class PhaseTimer:
    """Accumulates seconds per named phase"""

    def __init__(self):
        self.seconds = {}

    @contextmanager
    def phase(self, name):
        start = time.perf_counter()
        try:
            yield
        finally:
            elapsed = time.perf_counter() - start
            self.seconds[name] = self.seconds.get(name, 0.0) + elapsed
            logger.info("phase %-10s %.3fs", name, elapsed)

    def as_dict(self):
        """Known phases first in pipeline order, then any others"""
        ordered = {name: self.seconds[name] for name in PHASES if name in self.seconds}
        ordered.update({k: v for k, v in self.seconds.items() if k not in ordered})
        return ordered

    @property
    def total(self):
        return sum(self.seconds.values())
