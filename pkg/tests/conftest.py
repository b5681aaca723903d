"""Shared independent oracles for the test suite.

These deliberately avoid the production code paths: power series are summed
in extended precision with mpmath, Bernoulli numbers come from the
Akiyama-Tanigawa triangle, and trigonometric power sums are checked against
the polylogarithm.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath as mp
import pytest


@pytest.fixture(scope="session")
def mp50():
    """mpmath context at 50 digits."""
    with mp.workdps(50):
        yield mp


def bessel_j_series_oracle(nu: float, z: float, terms: int = 60, dps: int = 50) -> float:
    """J_nu(z) by direct power-series summation in extended precision."""
    with mp.workdps(dps):
        zz = mp.mpf(z)
        nuu = mp.mpf(nu)
        acc = mp.mpf(0)
        for m in range(terms):
            acc += (-1) ** m * (zz / 2) ** (2 * m + nuu) / (
                mp.factorial(m) * mp.gamma(m + 1 + nuu)
            )
        return float(acc)


def bessel_y_oracle(n: int, z: float, dps: int = 40) -> float:
    with mp.workdps(dps):
        return float(mp.bessely(n, z))


def dj_dnu_fd_oracle(n: int, z: float, h: str = "1e-9", dps: int = 60) -> float:
    """Central finite difference of J_nu in the order, extended precision."""
    with mp.workdps(dps):
        hh = mp.mpf(h)
        return float((mp.besselj(n + hh, z) - mp.besselj(n - hh, z)) / (2 * hh))


def polylog_trig_oracle(s: float, x: float) -> tuple[float, float]:
    """(sum cos(2 pi m x)/m^s, sum sin...) = Re/Im of Li_s at e^{2 pi i x}."""
    with mp.workdps(40):
        li = mp.polylog(mp.mpf(s), mp.e ** (2j * mp.pi * x))
        return float(mp.re(li)), float(mp.im(li))


def akiyama_tanigawa_bernoulli(n: int) -> list[Fraction]:
    """B_0..B_n by the Akiyama-Tanigawa triangle, adjusted to B_1 = -1/2."""
    row = [Fraction(0)] * (n + 1)
    out: list[Fraction] = []
    for m in range(n + 1):
        row[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        out.append(row[0])
    if n >= 1:
        out[1] = -out[1]  # triangle yields +1/2; our convention is -1/2
    return out
