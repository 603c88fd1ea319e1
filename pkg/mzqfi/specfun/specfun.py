"""
Scalar special functions: log-gamma, modified Bessel functions of the first
kind of integer order, and the ratio I_{m+1}(x)/I_m(x).
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

from scipy.special import gammaln

from mzqfi.conf import Conf
from mzqfi.exceptions import SeriesNotConverged, SpecialFunctionDomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SeriesTolerance:
    """
    Truncation control for power series.

    Attributes
    ----------
    rel_tol : float
        Summation stops once the next term is below ``rel_tol`` times the
        partial sum. Must lie in (0, 1e-6).
    max_terms : int
        Term budget, at least 64.
    """
    rel_tol: float = 1e-14
    max_terms: int = 512

    def __post_init__(self):
        if not 0.0 < self.rel_tol < 1e-6:
            raise ValueError("rel_tol must be in (0, 1e-6)")
        if int(self.max_terms) != self.max_terms or self.max_terms < 64:
            raise ValueError("max_terms must be an integer >= 64")

    @classmethod
    def from_conf(cls) -> "SeriesTolerance":
        """Build the tolerance from the current `Conf` values."""
        conf = Conf()
        return cls(
            rel_tol=conf.tolerance("series_rel_tol"),
            max_terms=int(conf.tolerance("series_max_terms")),
        )


def _check_order(m: int) -> int:
    if isinstance(m, bool) or int(m) != m or m < 0:
        raise SpecialFunctionDomainError(f"Bessel order must be a nonnegative integer, got {m!r}")
    return int(m)


def log_gamma(x: float) -> float:
    """
    Natural logarithm of the gamma function.

    Parameters
    ----------
    x : float
        Positive argument

    Returns
    -------
    float
        ln Γ(x)

    Raises
    ------
    SpecialFunctionDomainError
        If x is not a positive finite number

    Examples
    --------
    ```
    log_gamma(0.5)  # 0.5723649429247001 == ln(sqrt(pi))
    ```
    """
    if not math.isfinite(x) or x <= 0:
        raise SpecialFunctionDomainError(f"log_gamma requires x > 0, got {x!r}")
    return float(gammaln(x))


def bessel_i(m: int, x: float, tolerance: Optional[SeriesTolerance] = None) -> float:
    """
    Modified Bessel function of the first kind I_m(x) by its power series.

    The series sum_n (x/2)^(2n+m) / (n! Γ(m+n+1)) is summed term by term with
    every term evaluated in log space, so large orders do not overflow the
    factorials.

    Parameters
    ----------
    m : int
        Nonnegative integer order
    x : float
        Nonnegative argument
    tolerance : SeriesTolerance, optional
        Truncation control; defaults to the `Conf` tolerances

    Returns
    -------
    float
        I_m(x) >= 0

    Raises
    ------
    SpecialFunctionDomainError
        If m is not a nonnegative integer or x < 0
    SeriesNotConverged
        If the term budget is exhausted
    """
    m = _check_order(m)
    if not math.isfinite(x) or x < 0:
        raise SpecialFunctionDomainError(f"bessel_i requires x >= 0, got {x!r}")
    if x == 0.0:
        return 1.0 if m == 0 else 0.0

    tol = tolerance or SeriesTolerance.from_conf()
    log_half = math.log(x / 2.0)
    total = 0.0
    for n in range(tol.max_terms):
        term = math.exp((2 * n + m) * log_half - gammaln(n + 1) - gammaln(m + n + 1))
        total += term
        if total == 0.0:
            # (x/2)^m underflows for tiny x and large m
            return 0.0
        if n > 0 and term < tol.rel_tol * total:
            return total
    logger.debug(f"I_{m}({x}) exhausted {tol.max_terms} terms")
    raise SeriesNotConverged(f"I_{m}({x}) did not converge", total, tol.max_terms)


def _normalized_series(m: int, x: float, tol: SeriesTolerance) -> float:
    """Sum_n (x²/4)^n / (n! (m+1)_n), i.e. I_m(x) m! / (x/2)^m."""
    q = x * x / 4.0
    term = 1.0
    total = 1.0
    for n in range(tol.max_terms):
        term *= q / ((n + 1) * (m + n + 1))
        total += term
        if term < tol.rel_tol * total:
            return total
    raise SeriesNotConverged(f"normalized I_{m}({x}) series did not converge", total, tol.max_terms)


def bessel_ratio(m: int, x: float, tolerance: Optional[SeriesTolerance] = None) -> float:
    """
    Ratio I_{m+1}(x) / I_m(x).

    Both functions are written as (x/2)^k / k! times a normalized series that
    starts at 1, so the ratio is (x/2)/(m+1) times a ratio of two O(1) sums.
    This stays accurate for tiny x where I_{m+1} underflows relative to I_m.

    Parameters
    ----------
    m : int
        Nonnegative integer order
    x : float
        Positive argument
    tolerance : SeriesTolerance, optional
        Truncation control; defaults to the `Conf` tolerances

    Returns
    -------
    float
        A value in (0, 1)

    Raises
    ------
    SpecialFunctionDomainError
        If x <= 0 or m is not a nonnegative integer

    Examples
    --------
    ```
    bessel_ratio(1, 2.0)  # I_2(2)/I_1(2) ~ 0.4331273695
    bessel_ratio(0, 1e-8) # ~ 5e-9
    ```
    """
    m = _check_order(m)
    if not math.isfinite(x) or x <= 0:
        raise SpecialFunctionDomainError(f"bessel_ratio requires x > 0, got {x!r}")
    tol = tolerance or SeriesTolerance.from_conf()
    return (x / 2.0) / (m + 1) * _normalized_series(m + 1, x, tol) / _normalized_series(m, x, tol)
