"""
Utils Package - Logging setup, phase timing, file formats and datasets
"""

from .timing import PhaseTimer, PHASES

__all__ = ['PhaseTimer', 'PHASES']
