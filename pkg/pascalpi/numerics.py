""" Arbitrary precision evaluation on top of mpmath.

Every evaluation runs inside a ``PrecisionContext`` which owns its own
``mpmath.MPContext`` at ``digits + guard`` decimal places, so concurrent
evaluations never share precision state. """
import logging
import math
from collections import namedtuple
from functools import cached_property, lru_cache

from dataclasses import dataclass

import mpmath


logger = logging.getLogger(__name__)

CONSTANTS = ('pi', 'e', 'sinh1', 'cosh1')
MAX_ESCALATIONS = 3


class PrecisionException(ArithmeticError):
    pass


class DenominatorVanishes(PrecisionException):
    pass


class UnknownConstant(PrecisionException):
    pass


@dataclass(frozen=True)
class PrecisionContext:
    digits: int = 40
    guard: int = 15

    def __post_init__(self):
        if self.digits < 10:
            raise PrecisionException("digits must be >= 10, got {}"
                                     .format(self.digits))
        if self.guard < 5:
            raise PrecisionException("guard must be >= 5, got {}"
                                     .format(self.guard))

    @property
    def working(self):
        return self.digits + self.guard

    @cached_property
    def mp(self):
        ctx = mpmath.MPContext()
        ctx.dps = self.working
        return ctx

    def widened(self):
        return PrecisionContext(self.digits, self.guard * 2)

    def mpf(self, value):
        return self.mp.mpf(value)


SeriesEvaluation = namedtuple('SeriesEvaluation', [
    'partial_sum', 'terms_used', 'tail_bound', 'monotone_tail',
    'next_term'])

RatioEvaluation = namedtuple('RatioEvaluation', [
    'value', 'numerator', 'denominator'])


# Constants
# =============================================================================
def _chudnovsky_split(a, b):
    if b - a == 1:
        if a == 0:
            return 1, 1, 13591409
        p = (6 * a - 5) * (2 * a - 1) * (6 * a - 1)
        q = a * a * a * 10939058860032000
        t = p * (13591409 + 545140134 * a)
        return p, q, -t if a % 2 else t
    m = (a + b) // 2
    p1, q1, t1 = _chudnovsky_split(a, m)
    p2, q2, t2 = _chudnovsky_split(m, b)
    return p1 * p2, q1 * q2, q2 * t1 + p1 * t2


def _exp_split(a, b):
    # p/q = sum over a < k <= b of 1/((a+1)(a+2)...k), q = (a+1)...b
    if b - a == 1:
        return 1, b
    m = (a + b) // 2
    p1, q1 = _exp_split(a, m)
    p2, q2 = _exp_split(m, b)
    return p1 * q2 + p2, q1 * q2


def _series_length(working):
    # smallest N with N! > 10^(working + 10)
    n = 2
    while math.lgamma(n + 1) / math.log(10) < working + 10:
        n += 1
    return n


def _cross_check(name, value, reference, mp):
    tolerance = mp.mpf(10) ** (-(mp.dps - 3))
    if abs(value - reference) > tolerance * max(1, abs(reference)):
        raise PrecisionException(
            "{} disagrees with its reference evaluation at {} digits"
            .format(name, mp.dps))


@lru_cache(maxsize=64)
def _pi_raw(working):
    mp = mpmath.MPContext()
    mp.dps = working + 5
    _p, q, t = _chudnovsky_split(0, working // 14 + 2)
    value = mp.mpf(q * 426880) * mp.sqrt(10005) / t
    machin = 16 * mp.atan(mp.mpf(1) / 5) - 4 * mp.atan(mp.mpf(1) / 239)
    _cross_check('pi', value, machin, mp)
    return value._mpf_


@lru_cache(maxsize=64)
def _e_raw(working):
    mp = mpmath.MPContext()
    mp.dps = working + 5
    p, q = _exp_split(0, _series_length(working))
    value = 1 + mp.mpf(p) / q
    _cross_check('e', value, mp.e, mp)
    return value._mpf_


def constant(name, ctx):
    """ pi by Chudnovsky binary splitting checked against Machin's formula, e
    by the factorial series checked against mpmath's own e; the hyperbolic
    values are derived from e. """
    mp = ctx.mp
    # unary plus rounds the cached raw value to the context precision
    if name == 'pi':
        return +mp.make_mpf(_pi_raw(ctx.working))
    if name not in CONSTANTS:
        raise UnknownConstant("Unknown constant {!r}, expected one of {}"
                              .format(name, ', '.join(CONSTANTS)))
    e = +mp.make_mpf(_e_raw(ctx.working))
    if name == 'e':
        return e
    if name == 'sinh1':
        return (e - 1 / e) / 2
    return (e + 1 / e) / 2


def e_power(n, ctx):
    """ e^n for an integer n, from the series value of e. """
    return constant('e', ctx) ** n


def fib_closed_form(k, x, ctx):
    """ (a^k - b^k)/(a - b) with a, b = (x +- sqrt(x^2 + 4))/2 """
    mp = ctx.mp
    root = mp.sqrt(mp.mpf(x) ** 2 + 4)
    a, b = (x + root) / 2, (x - root) / 2
    return (a ** k - b ** k) / root


def lucas_closed_form(k, x, ctx):
    """ a^k + b^k with a, b = (x +- sqrt(x^2 + 4))/2 """
    mp = ctx.mp
    root = mp.sqrt(mp.mpf(x) ** 2 + 4)
    return ((x + root) / 2) ** k + ((x - root) / 2) ** k


# Polynomials and terms
# =============================================================================
def eval_poly(p, at, ctx):
    if p.is_zero():
        return ctx.mp.zero
    return p(ctx.mpf(at))


def eval_term(term, ctx, pi=None):
    """ Numeric value of an exact ``Term``; the numerator polynomial is read
    in pi. """
    if term.is_zero():
        return ctx.mp.zero
    if pi is None:
        pi = constant('pi', ctx)
    value = eval_poly(term.numerator, pi, ctx) * term.scale.numerator
    value /= math.factorial(term.factorial_index) * term.scale.denominator
    if term.pi_shift:
        value *= pi ** term.pi_shift
    return -value if term.sign < 0 else value


# Series
# =============================================================================
def _alternates(a, b):
    return a != 0 and b != 0 and (a > 0) != (b > 0)


def sum_series(term, k0, K, ctx):
    """ Partial sum of term(k) for k = k0..K.

    The first omitted term is reported as a bound only while the series is
    visibly in its alternating, decreasing regime: |t_{K+1}| < |t_K| with
    opposite signs, and the next pair behaving the same way. The bound never
    drops below the rounding accumulated over the summed terms. """
    if K < k0:
        raise ValueError("Series depth {} is below its first index {}"
                         .format(K, k0))
    mp = ctx.mp
    total = magnitude = mp.zero
    last = None
    for k in range(k0, K + 1):
        last = term(k)
        total += last
        magnitude += abs(last)
    terms_used = K - k0 + 1
    rounding = 2 * (terms_used + 1) * mp.eps * magnitude
    following = term(K + 1)
    after = term(K + 2)
    monotone = (abs(following) < abs(last) and _alternates(last, following)
                and abs(after) < abs(following)
                and _alternates(following, after))
    return SeriesEvaluation(
        partial_sum=total,
        terms_used=terms_used,
        tail_bound=max(abs(following), rounding) if monotone else None,
        monotone_tail=monotone,
        next_term=following)


def ratio_evaluation(num_term, den_term, K, ctx, k0=0):
    numerator = sum_series(num_term, k0, K, ctx)
    denominator = sum_series(den_term, k0, K, ctx)
    scale = max(abs(den_term(k)) for k in range(k0, K + 1))
    if abs(denominator.partial_sum) <= ctx.mp.eps * max(1, scale) * 16:
        raise DenominatorVanishes(
            "Denominator partial sum through k={} is indistinguishable from "
            "0 at {} digits".format(K, ctx.working))
    return RatioEvaluation(
        numerator.partial_sum / denominator.partial_sum,
        numerator, denominator)


def sum_ratio(num_term, den_term, K, ctx, k0=0):
    return ratio_evaluation(num_term, den_term, K, ctx, k0).value


# Comparison
# =============================================================================
def magnitude_scale(value, ctx):
    """ The power of ten at or below max(1, |value|). """
    mp = ctx.mp
    return mp.mpf(10) ** int(mp.floor(mp.log10(max(1, abs(value)))))


def target_scale(value, ctx):
    """ The power of ten at or below |value|, for targets of any size; 1 for
    a zero target. """
    mp = ctx.mp
    if not value:
        return mp.one
    return mp.mpf(10) ** int(mp.floor(mp.log10(abs(value))))


def digits_matched(a, b, ctx, scale=None):
    """ Largest d with |a - b| < 10^-d * scale, capped at ctx.digits. The
    scale defaults to the order of magnitude of max(1, |a|). """
    mp = ctx.mp
    a, b = ctx.mpf(a), ctx.mpf(b)
    if scale is None:
        scale = magnitude_scale(a, ctx)
    diff = abs(a - b)
    if diff == 0:
        return ctx.digits
    tolerance = mp.mpf(10) ** (-(ctx.digits // 2))
    exact = -mp.log10(diff / scale)
    d = int(mp.ceil(exact - tolerance)) - 1
    return max(0, min(ctx.digits, d))


StableResult = namedtuple('StableResult', ['result', 'ctx', 'settled'])


def stable(fn, ctx, key=None):
    """ Runs ``fn(ctx)`` at growing guard widths until two successive runs
    agree inside the requested window, doubling the guard at most
    ``MAX_ESCALATIONS`` times. ``key`` extracts the number to compare. """
    key = key or (lambda r: r)
    current = ctx
    result = fn(current)
    for _ in range(MAX_ESCALATIONS):
        wider = current.widened()
        wider_result = fn(wider)
        a, b = key(result), key(wider_result)
        mp = wider.mp
        window = mp.mpf(10) ** (-ctx.digits) * magnitude_scale(b, wider)
        if abs(wider.mpf(a) - b) < window:
            return StableResult(result, current, True)
        logger.debug("guard {} disagrees with guard {}, widening"
                     .format(current.guard, wider.guard))
        current, result = wider, wider_result
    logger.warning("evaluation did not settle after guard {}"
                   .format(current.guard))
    return StableResult(result, current, False)


def format_real(value, ctx, digits=None):
    """ Decimal string with ``digits`` significant digits (ctx.digits by
    default); identical inputs give identical strings. """
    return ctx.mp.nstr(value, digits or ctx.digits)
