"""
LFR Grid Module - Parameter rows for the external LFR benchmark generator

The generator itself is an outside tool. This module only enumerates the
(n, alpha, beta, mu, replicate) combinations with the derived maximum and
average degree, and writes them as a CSV the generator can be driven from.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import pandas as pd

from core.errors import InvalidParameterError
from utils.file_formats import ensure_parent

logger = logging.getLogger(__name__)

DEFAULT_N = (100, 250, 500, 1000, 2000)
DEFAULT_ALPHA = (Fraction(1, 20), Fraction(1, 15), Fraction(1, 10), Fraction(1, 5), Fraction(1, 3))
DEFAULT_BETA = (30, 35, 40)
DEFAULT_MU = (0.1, 0.2, 0.3, 0.4, 0.5)
DEFAULT_REPLICATES = 5

GRID_COLUMNS = ("n", "d_max", "avg_degree", "mu", "replicate", "seed")


@dataclass(frozen=True)
class LfrGridRow:
    """
    One generator invocation

    Attributes:
        n (int): vertex count
        alpha (Fraction): maximum degree as a share of n
        beta (Fraction): average degree scale
        mu (float): mixing parameter
        d_max (int): alpha * n rounded half up
        avg_degree (float): beta * (alpha * n) * log10(n) / n
        replicate (int): instance index starting at 1
        seed (int): generator seed for this row
    """

    n: int
    alpha: Fraction
    beta: Fraction
    mu: float
    d_max: int
    avg_degree: float
    replicate: int
    seed: int

    def to_dict(self):
        return {
            "n": self.n,
            "d_max": self.d_max,
            "avg_degree": self.avg_degree,
            "mu": self.mu,
            "replicate": self.replicate,
            "seed": self.seed,
        }


def parse_fraction(text):
    """Accept "1/3", "0.25" or "40" and return an exact Fraction"""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise InvalidParameterError(f"not a rational number: {text!r}") from None


def max_degree(n, alpha):
    """round(alpha * n), halves rounded up"""
    return math.floor(Fraction(alpha) * n + Fraction(1, 2))


def average_degree(n, alpha, beta):
    """beta * (alpha * n) * log10(n) / n, with alpha * n left unrounded"""
    return float(Fraction(beta) * Fraction(alpha)) * math.log10(n)


def lfr_parameter_grid(
    n_set=DEFAULT_N,
    alpha_set=DEFAULT_ALPHA,
    beta_set=DEFAULT_BETA,
    mu_set=DEFAULT_MU,
    replicates=DEFAULT_REPLICATES,
    base_seed=0,
):
    """
    Full Cartesian product of the parameter sets

    Rows come out in (n, alpha, beta, mu, replicate) order; the seed of row
    i is base_seed + i.

    Raises:
        InvalidParameterError: on an empty set or an out-of-range value
    """
    sets = {"n": n_set, "alpha": alpha_set, "beta": beta_set, "mu": mu_set}
    for name, values in sets.items():
        if not values:
            raise InvalidParameterError(f"{name} set is empty")
    if replicates < 1:
        raise InvalidParameterError(f"replicates must be at least 1, got {replicates}")
    if any(int(n) < 2 for n in n_set):
        raise InvalidParameterError("every n must be at least 2")
    alphas = [parse_fraction(a) for a in alpha_set]
    betas = [parse_fraction(b) for b in beta_set]
    if any(not 0 < a <= 1 for a in alphas):
        raise InvalidParameterError("alpha values must lie in (0, 1]")
    if any(b <= 0 for b in betas):
        raise InvalidParameterError("beta values must be positive")
    if any(not 0.0 <= float(mu) <= 1.0 for mu in mu_set):
        raise InvalidParameterError("mu values must lie in [0, 1]")

    rows = []
    combos = product((int(n) for n in n_set), alphas, betas, (float(mu) for mu in mu_set), range(1, replicates + 1))
    for index, (n, alpha, beta, mu, replicate) in enumerate(combos):
        rows.append(LfrGridRow(
            n=n,
            alpha=alpha,
            beta=beta,
            mu=mu,
            d_max=max_degree(n, alpha),
            avg_degree=average_degree(n, alpha, beta),
            replicate=replicate,
            seed=base_seed + index,
        ))
    logger.info("LFR grid: %d rows", len(rows))
    return rows


def write_grid_csv(rows, path):
    """Write grid rows with the fixed column order"""
    ensure_parent(path)
    frame = pd.DataFrame([row.to_dict() for row in rows], columns=list(GRID_COLUMNS))
    frame.to_csv(path, index=False, lineterminator="\n")
    return path
