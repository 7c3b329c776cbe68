"""Evaluation of the Airy-type entire function driving kernel-size laws.

``airy_A(y, lam)`` evaluates

    A(y, lam) = exp(-lam^3/6) / 3^((y+1)/3) * sum_{k>=0} x^k / (k! Gamma((y+1-2k)/3))

with x = 3^(2/3) lam / 2.  The series is entire but wildly cancelling away
from lam = 0: intermediate terms reach exp(|lam|^3/6) times the final value,
so a fixed-precision evaluation loses roughly |lam|^3/6 * log10(e) digits.
The evaluator runs a compensated double-precision pass first and tracks the
accumulated round-off; when that noise floor cannot honour the requested
tolerance it re-runs the sum in ``mpmath`` at a working precision sized from
the measured cancellation, still returning a double.  Either way the result
carries an explicit bound on what was left out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp

__all__ = ["AiryEvalResult", "AiryEvaluationError", "reciprocal_gamma", "airy_A"]

_LOG_PI = math.log(math.pi)
_LN_MIN = -745.0  # below this, exp underflows to 0.0
_NOISE_SAFETY = 8.0  # multiplier on the eps * sum(|term|) round-off floor
_TINY = 1e-290
_MAX_DPS = 2200  # enough for the lambda = -30 edge of the envelope

LAMBDA_LIMIT = 30.0  # documented numeric envelope


class AiryEvaluationError(RuntimeError):
    """Requested tolerance could not be certified; no silent bad values."""


@dataclass(frozen=True)
class AiryEvalResult:
    """Value plus honesty metadata for one evaluation.

    ``tail_bound`` bounds the magnitude of everything left out: the first
    omitted series term plus the round-off floor of the summation, both in
    the scale of ``value``.
    """

    value: float
    terms_used: int
    tail_bound: float


def reciprocal_gamma(x: float) -> float:
    """1/Gamma(x) as a total function.

    Exactly 0.0 at the poles (non-positive integers) and when Gamma
    overflows; +-inf when the true reciprocal exceeds the double range.
    """
    if math.isnan(x):
        return math.nan
    if x <= 0.0 and x == math.floor(x):
        return 0.0
    try:
        g = math.gamma(x)
    except OverflowError:
        return 0.0
    if g == 0.0:  # Gamma underflow at very negative x: reciprocal overflows
        sign, _ = _rg_sign_ln(x)
        return math.copysign(math.inf, sign)
    return 1.0 / g


def _rg_sign_ln(a: float) -> tuple[float, float]:
    """Sign and log-magnitude of 1/Gamma(a); sign 0.0 at the poles."""
    if a > 0.0:
        return 1.0, -math.lgamma(a)
    if a == math.floor(a):
        return 0.0, -math.inf
    # reflection: 1/Gamma(a) = Gamma(1-a) sin(pi a) / pi
    m = math.floor(a)
    frac = a - m
    s = math.sin(math.pi * frac)
    sign = 1.0 if int(m) % 2 == 0 else -1.0
    return sign, math.lgamma(1.0 - a) + math.log(s) - _LOG_PI


def _sum_double(y: float, x: float, tol: float, max_terms: int, k_min: float):
    """Compensated summation of sum_k x^k/k! * rgamma((y+1-2k)/3).

    Returns (sum, sum of |terms|, terms used, first omitted |term|,
    converged flag).  Terms are assembled in log space so that huge
    reciprocal-gamma factors at late k cannot overflow intermediates.
    """
    ln_absx = math.log(abs(x)) if x != 0.0 else -math.inf
    neg = x < 0.0
    ln_xk = 0.0  # log of |x|^k / k!
    sign_xk = 1.0
    total = 0.0
    comp = 0.0
    abs_sum = 0.0
    small_run = 0
    k = 0
    t = 0.0
    while k < max_terms:
        sg, ln_rg = _rg_sign_ln((y + 1.0 - 2.0 * k) / 3.0)
        ln_t = ln_xk + ln_rg
        t = sg * sign_xk * math.exp(ln_t) if sg != 0.0 and ln_t > _LN_MIN else 0.0
        abs_sum += abs(t)
        yk = t - comp
        acc = total + yk
        comp = (acc - total) - yk
        total = acc
        k += 1
        ln_xk += ln_absx - math.log(k)
        if neg:
            sign_xk = -sign_xk
        if k >= k_min:
            if abs(t) <= tol * max(abs(total), _TINY):
                small_run += 1
                if small_run >= 2:
                    break
            else:
                small_run = 0
    else:
        return total, abs_sum, k, abs(t), False
    # estimate the first omitted term
    sg, ln_rg = _rg_sign_ln((y + 1.0 - 2.0 * k) / 3.0)
    ln_t = ln_xk + ln_rg
    nxt = math.exp(ln_t) if sg != 0.0 and ln_t > _LN_MIN else 0.0
    return total, abs_sum, k, nxt, True


def _sum_mp(y: float, lam: float, rel_target: float, max_terms: int, k_min: float, dps: int):
    """mpmath pass: returns (sum, sum |terms|, terms, next |term|, converged)."""
    with mp.workdps(dps):
        x = mp.power(3, mp.mpf(2) / 3) * mp.mpf(lam) / 2
        yy = mp.mpf(y)
        total = mp.mpf(0)
        abs_sum = mp.mpf(0)
        term_pow = mp.mpf(1)  # x^k / k!
        small_run = 0
        k = 0
        t = mp.mpf(0)
        while k < max_terms:
            t = term_pow * mp.rgamma((yy + 1 - 2 * k) / 3)
            total += t
            abs_sum += abs(t)
            k += 1
            term_pow *= x / k
            if k >= k_min:
                if abs(t) <= mp.mpf(rel_target) * abs(total):
                    small_run += 1
                    if small_run >= 2:
                        break
                else:
                    small_run = 0
        else:
            return total, abs_sum, k, abs(t), False
        nxt = abs(term_pow * mp.rgamma((yy + 1 - 2 * k) / 3))
        return total, abs_sum, k, nxt, True


def airy_A(y: float, lam: float, tol: float = 1e-12, max_terms: int = 500) -> AiryEvalResult:
    """Evaluate A(y, lam) to relative tolerance ``tol``.

    Summation stops once two consecutive terms drop below ``tol`` times the
    partial sum, after the index has passed both |x| and (y+1)/2 (the series
    has a long small preamble and a late hump when y is large; stopping
    before the hump would silently truncate).

    Raises :class:`AiryEvaluationError` when the tolerance cannot be reached
    within ``max_terms`` terms or within the supported working precision.
    """
    if not (tol > 0.0):
        raise ValueError("tol must be positive")
    if not (y > 0.0) or not math.isfinite(y):
        raise ValueError("y must be a positive finite real")
    if not math.isfinite(lam) or abs(lam) > LAMBDA_LIMIT:
        raise ValueError(f"lambda outside the supported envelope |lambda| <= {LAMBDA_LIMIT}")

    x = 3.0 ** (2.0 / 3.0) * lam / 2.0
    k_min = (y + 1.0) / 2.0 + abs(x) + 8.0
    if k_min >= max_terms:
        raise AiryEvaluationError(
            f"series needs more than max_terms={max_terms} terms for y={y}, lambda={lam}"
        )

    ln_pre = -lam**3 / 6.0 - (y + 1.0) / 3.0 * math.log(3.0)
    use_double = -700.0 < ln_pre < 700.0  # the double prefactor must not over/underflow

    if use_double:
        # stop at tol/4 and report 3x the first omitted term so the bound
        # covers the whole geometric remainder, not just its head
        total, abs_sum, terms, nxt, converged = _sum_double(y, x, tol / 4.0, max_terms, k_min)
        noise = _NOISE_SAFETY * 2.3e-16 * abs_sum
        if converged and noise <= 0.25 * tol * max(abs(total), _TINY):
            pre = math.exp(ln_pre)
            return AiryEvalResult(
                value=pre * total,
                terms_used=terms,
                tail_bound=pre * (3.0 * nxt + noise),
            )
        cancel_digits = math.log10(max(abs_sum, _TINY) / max(abs(total), noise, _TINY))
    else:
        cancel_digits = ln_pre / math.log(10.0)  # prefactor alone sets the scale

    # escalate: redo the sum at a working precision sized from the cancellation
    digits_wanted = -math.log10(tol) + 3.0
    dps = int(25 + digits_wanted + max(0.0, cancel_digits))
    for _ in range(5):
        if dps > _MAX_DPS:
            break
        s_mp, abs_mp, terms, nxt_mp, converged = _sum_mp(
            y, lam, tol / 10.0, max_terms, k_min, dps
        )
        if not converged:
            raise AiryEvaluationError(
                f"tolerance {tol} not reached within {max_terms} terms "
                f"(y={y}, lambda={lam})"
            )
        with mp.workdps(dps):
            roundoff = abs_mp * mp.mpf(10) ** (2 - dps)
            if abs(s_mp) > 0 and roundoff <= 0.25 * tol * abs(s_mp):
                pre = mp.e ** (-mp.mpf(lam) ** 3 / 6) / mp.power(3, (mp.mpf(y) + 1) / 3)
                value = float(pre * s_mp)
                tail = float(pre * (3 * nxt_mp + roundoff))
                return AiryEvalResult(value=value, terms_used=terms, tail_bound=tail)
            # not enough precision: grow dps from the measured cancellation,
            # or geometrically while the sum is still below its noise floor
            if abs(s_mp) > 0 and roundoff < abs(s_mp):
                measured = float(mp.log10(abs_mp / abs(s_mp)))
                dps = max(dps + 10, int(25 + digits_wanted + measured))
            else:
                dps = 2 * dps
    raise AiryEvaluationError(
        f"could not certify tolerance {tol} for y={y}, lambda={lam} "
        f"within {_MAX_DPS} digits of working precision"
    )
