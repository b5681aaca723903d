"""Named identity suites: each runs a battery of checks at pinned tolerances.

The registry backs the command-line `verify` subcommand and the acceptance
tests.  Every check records the computed value, the expected value, the
absolute error and the tolerance it was held to, so failures are
self-describing.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, asdict
from fractions import Fraction
from math import pi, sqrt

import numpy as np

from . import exact_core, formulas, series_engine, specfun

__all__ = ["CheckResult", "IDENTITIES", "run_identity"]

X_GRID = (Fraction(1, 10), Fraction(1, 4), Fraction(1, 3),
          Fraction(1, 2), Fraction(2, 3), Fraction(9, 10))


@dataclass(frozen=True)
class CheckResult:
    identity: str
    case: str
    value: float
    expected: float
    abs_error: float
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


def _check(identity: str, case: str, value: float, expected: float,
           tolerance: float) -> CheckResult:
    err = abs(value - expected)
    return CheckResult(identity, case, value, expected, err, tolerance, err < tolerance)


def _suite_thm12(n_max: int = 5, tol: float = 1e-7, **_) -> list[CheckResult]:
    out = []
    for n in range(1, n_max + 1):
        for x in X_GRID:
            rep = formulas.zagier_even_formula(n, x)
            out.append(_check("thm12", f"n={n} x={x}", rep.formula_value,
                              float(rep.exact), tol))
    return out


def _suite_thm13(n_max: int = 5, tol: float = 1e-7, **_) -> list[CheckResult]:
    out = []
    for n in range(0, n_max + 1):
        for x in X_GRID:
            rep = formulas.zagier_odd_formula(n, x)
            out.append(_check("thm13", f"n={n} x={x}", rep.formula_value,
                              float(rep.exact), tol))
    return out


def _suite_zagier_sum(n_max: int = 8, tol: float = 1e-7, **_) -> list[CheckResult]:
    out = []
    for n in range(1, n_max + 1):
        rep = formulas.zagier_number_formula(n)
        out.append(_check("zagier-sum", f"n={n}", rep.formula_value,
                          float(rep.exact), tol))
    return out


def _suite_thm15(n_max: int = 5, tol: float = 1e-7, **_) -> list[CheckResult]:
    out = []
    for n in range(1, n_max + 1):
        rep = formulas.zagier_type_sum(n)
        out.append(_check("thm15", f"n={n}", rep.formula_value,
                          float(rep.exact), tol))
    return out


def _suite_lemma33(tol: float = 1e-8, **_) -> list[CheckResult]:
    out = []
    for n in (1, 2):
        for m in (1, 2):
            rep = formulas.fourier_coeff_P_check(n, m)
            out.append(_check("lemma33", f"n={n} m={m}", rep.formula_value,
                              rep.reference, tol))
            if m == 1:
                out.append(_check("lemma33", f"n={n} a0", rep.extras["a0"], 0.0, 1e-10))
    return out


def _suite_lemma34(tol: float = 1e-7, **_) -> list[CheckResult]:
    out = []
    for n in (1, 2):
        for m in (1, 2):
            rep = formulas.fourier_coeff_dJ_check(n, m)
            out.append(_check("lemma34", f"n={n} m={m}", rep.formula_value,
                              rep.reference, tol))
            if m == 1:
                out.append(_check("lemma34", f"n={n} b0", rep.extras["b0"], 0.0, 1e-9))
    return out


def _ode_residual(n: int, u: float, h: float = 1e-3) -> float:
    w = [specfun.coates_series(n, u + k * h).value for k in (-2, -1, 0, 1, 2)]
    wp = (w[0] - 8 * w[1] + 8 * w[3] - w[4]) / (12 * h)
    wpp = (-w[0] + 16 * w[1] - 30 * w[2] + 16 * w[3] - w[4]) / (12 * h * h)
    return (wpp + wp / u + w[2] * (1 - 4.0 * n * n / (u * u))
            - 2.0 * n * (-1.0) ** n * math.cos(u) / (u * u))


def _suite_integral_id(tol: float = 1e-7, **_) -> list[CheckResult]:
    out = []
    for n, u in ((1, 4 * pi), (2, 8 * pi)):
        series = specfun.coates_series(n, u).value
        quad = specfun.coates_integral(n, u).value
        out.append(_check("integral-id", f"n={n} u={u/pi:.0f}pi", quad, series, tol))
    out.append(_check("integral-id", "ode-residual n=1 u=4pi",
                      _ode_residual(1, 4 * pi), 0.0, 1e-5))
    return out


def _suite_form_s1(tol: float = 1e-9, **_) -> list[CheckResult]:
    out = []
    for n in (2, 4, 6):
        for z in (4 * pi, 8 * pi):
            lhs = specfun.schlafli_S(n, z)
            jn = specfun.bessel_J(float(n), z).value
            rhs = (-pi * specfun.bessel_Y_int(n, z).value
                   + 2.0 * (specfun.EULER_GAMMA + math.log(z / 2.0)) * jn
                   + specfun.P_func(n, z).value - 2.0 * specfun.Q_func(n, z).value)
            out.append(_check("form-s1", f"n={n} z={z/pi:.0f}pi", rhs, lhs, tol))
    return out


def _suite_poisson(tol: float = 1e-4, **_) -> list[CheckResult]:
    out = []
    rep = formulas.poisson_J_series_check(2.5, 0.3)
    out.append(_check("poisson-series", "nu=2.5 x=0.3", rep.formula_value,
                      rep.reference, tol))
    # even integer order: the algebraic tails vanish, kernels alone must match
    rep_even = formulas.poisson_J_series_check(2.0, 0.3)
    out.append(_check("poisson-series", "nu=2 x=0.3 (tails vanish)",
                      rep_even.formula_value, rep_even.reference, 1e-6))
    return out


def _series_007_rhs(x: float, m_terms: int = 10**6) -> float:
    """1/(2 sqrt x) - (x/sqrt 2) sum_m [m + sqrt(m^2-x^2)]^{-1/2} (m^2-x^2)^{-1/2},
    direct prefix plus a two-order asymptotic integral tail."""
    ms = np.arange(1, m_terms + 1, dtype=float)
    root = np.sqrt(ms * ms - x * x)
    terms = 1.0 / (np.sqrt(ms + root) * root)
    total = series_engine.chunked_fsum(terms)
    a = m_terms + 0.5
    # term(m) ~ 2^{-1/2} m^{-3/2} (1 + 5x^2/(8m^2) + ...)
    tail = sqrt(2.0) / sqrt(a) + (5.0 * x * x / 8.0) * (2.0 / 3.0) / (sqrt(2.0) * a**1.5)
    return 0.5 / sqrt(x) - (x / sqrt(2.0)) * (total + tail)


def _suite_series_007(tol: float = 1e-7, **_) -> list[CheckResult]:
    out = []
    for x in (0.3, 0.62):
        lhs = series_engine.trig_power_sums(x).sin_sum_half
        out.append(_check("series-007", f"x={x}", lhs, _series_007_rhs(x), tol))
    return out


def _suite_telescope(tol: float = 1e-10, **_) -> list[CheckResult]:
    out = []
    # termwise algebraic identity 1/(sqrt(m(m+2)) sqrt(m+1+sqrt(m(m+2))))
    #   = (1/sqrt 2)(1/sqrt m - 1/sqrt(m+2)), checked numerically on samples
    worst = 0.0
    for m in (1, 2, 3, 10, 97, 10**4):
        lhs = 1.0 / (sqrt(m * (m + 2.0)) * sqrt(m + 1.0 + sqrt(m * (m + 2.0))))
        rhs = (1.0 / sqrt(2.0)) * (1.0 / sqrt(m) - 1.0 / sqrt(m + 2.0))
        worst = max(worst, abs(lhs - rhs))
    out.append(_check("telescope", "termwise identity", worst, 0.0, 1e-15))
    m_terms = 10**5
    ms = np.arange(1, m_terms + 1, dtype=float)
    roots = np.sqrt(ms * (ms + 2.0))
    partial = series_engine.chunked_fsum(1.0 / (roots * np.sqrt(ms + 1.0 + roots)))
    tail = (1.0 / sqrt(2.0)) * (1.0 / sqrt(m_terms + 1.0) + 1.0 / sqrt(m_terms + 2.0))
    out.append(_check("telescope", "sum", partial + tail, (sqrt(2.0) + 1.0) / 2.0, tol))
    return out


def _suite_denominators(n_max: int = 60, **_) -> list[CheckResult]:
    out = []
    for n in range(1, n_max + 1):
        denom = exact_core.modified_bernoulli(n).denominator
        got = exact_core.two_adic_valuation(denom)
        want = exact_core.two_adic_valuation_prediction(n)
        out.append(_check("denominators", f"n={n}", float(got), float(want), 0.5))
    return out


def _suite_shift(n_max: int = 15, **_) -> list[CheckResult]:
    out = []
    rng = random.Random(20140401)
    for n in range(1, n_max + 1):
        for k in range(-5, 6):
            x = Fraction(rng.randrange(-12, 13), rng.randrange(1, 9))
            lhs = exact_core.zagier_shift(n, x, k)
            rhs = exact_core.zagier_eval(n, x + k)
            out.append(_check("shift", f"n={n} k={k} x={x}",
                              0.0 if lhs == rhs else 1.0, 0.0, 0.5))
    return out


def _suite_reflection(n_max: int = 20, **_) -> list[CheckResult]:
    out = []
    rng = random.Random(19980105)
    for n in range(1, n_max + 1):
        x = Fraction(rng.randrange(-40, 41), rng.randrange(1, 17))
        lhs = exact_core.zagier_eval(n, -x - 3)
        rhs = (-1) ** n * exact_core.zagier_eval(n, x)
        out.append(_check("reflection", f"n={n} x={x}",
                          0.0 if lhs == rhs else 1.0, 0.0, 0.5))
    return out


IDENTITIES = {
    "thm12": _suite_thm12,
    "thm13": _suite_thm13,
    "zagier-sum": _suite_zagier_sum,
    "thm15": _suite_thm15,
    "lemma33": _suite_lemma33,
    "lemma34": _suite_lemma34,
    "integral-id": _suite_integral_id,
    "form-s1": _suite_form_s1,
    "poisson-series": _suite_poisson,
    "series-007": _suite_series_007,
    "telescope": _suite_telescope,
    "denominators": _suite_denominators,
    "shift": _suite_shift,
    "reflection": _suite_reflection,
}


def run_identity(name: str, **options) -> list[CheckResult]:
    if name not in IDENTITIES:
        raise KeyError(f"unknown identity {name!r}; choose from {sorted(IDENTITIES)}")
    return IDENTITIES[name](**options)
