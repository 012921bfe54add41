""" The catalog. Every entry is a family: default parameters, an optional
scan parameter with its default range, and a builder producing the Identity
for a concrete parameter set. Catalog order follows the order in which the
results build on each other: the row-product limit, the Fibonacci-number
ratios, the Pascal-triangle series, then the Lucas-triangle ones. """
import json
import logging
import math
from collections import OrderedDict, namedtuple
from fractions import Fraction
from functools import partial
from numbers import Integral

from .exact import (SequenceKind, Term, MonomialGroup, binomial,
                    composite_transform, fib_poly, gen_lucas_term,
                    lucas_poly, lucas_triangle_entry)
from .models import (CompositeIdentity, DifferenceIdentity, InvalidParameters,
                     LimitIdentity, RatioIdentity, SeriesIdentity, Status,
                     UnknownIdentity)
from .numerics import constant, e_power
from .polynomial import IntPolynomial, imaginary_substitution


logger = logging.getLogger(__name__)

Family = namedtuple('Family', ['id', 'defaults', 'scan_param', 'scan_range',
                               'build'])


def _sign(k):
    return -1 if k % 2 else 1


def _pi_poly(monomials):
    return IntPolynomial.from_monomials(monomials)


# Term rules
# =============================================================================
def gen_lucas_numerator(x, k):
    return Term(1, IntPolynomial.constant(
        gen_lucas_term(x, k, SequenceKind.numerator)), k)


def gen_lucas_denominator(x, k, alternate=True):
    value = gen_lucas_term(x, k, SequenceKind.denominator)
    return Term(_sign(k) if alternate else 1,
                IntPolynomial.constant(value), k)


def fib_numerator(x, k):
    return Term(1, IntPolynomial.constant(fib_poly(k)(x)), k)


def fib_denominator(x, k):
    return Term(-_sign(k), IntPolynomial.constant(fib_poly(k)(x)), k)


def lucas_numerator(x, n, k):
    return Term(1, IntPolynomial.constant(lucas_poly(n * k)(x)), k)


def lucas_denominator(x, n, k):
    return Term(_sign(k), IntPolynomial.constant(lucas_poly(n * k)(x)), k)


def rotated_pascal_term(k):
    """ (-1)^(k+1) sum_{j<k} (-1)^j C(2k-j, j) pi^(2(k-j)) / (2k+1)! """
    return Term(-_sign(k), _pi_poly(
        (_sign(j) * binomial(2 * k - j, j), 2 * (k - j))
        for j in range(k)), 2 * k + 1)


def chebyshev_term(k):
    """ F_{2m}(x) at x = 2 pi i, m = k + 1: the odd part divided by t with its
    linear term dropped, read at t = 2 pi. """
    m = k + 1
    imag = imaginary_substitution(fib_poly(2 * m)).imag
    numerator = imag.drop_below(2).shift(-1) * (2 * _sign(m - 1))
    return Term(_sign(m), numerator.rescale(2), 2 * m)


def lucas_ipi_term(k):
    """ (2 - L_{2k}(i pi)) / (2k)!, stored with a positive leading
    coefficient. """
    real = imaginary_substitution(lucas_poly(2 * k)).real
    return Term(-_sign(k), (real - 2) * _sign(k), 2 * k)


def central_term(m, k):
    return Term(-_sign(k),
                IntPolynomial.monomial(binomial(2 * k + m, m), 2 * k),
                2 * (k + m) + 1)


def cosh_term(k):
    return Term(-_sign(k), _pi_poly(
        (_sign(j) * binomial(2 * k + 1, 2 * j), 2 * (k - j))
        for j in range(k)), 2 * k + 1)


def sinh_term(k):
    return Term(-_sign(k), _pi_poly(
        (_sign(j) * binomial(2 * k + 2, 2 * j + 1), 2 * (k - j))
        for j in range(k)), 2 * k + 2)


def e_pair(k):
    return cosh_term(k), sinh_term(k)


def two_pair(k):
    """ pi^2k/(2k+1)! and (2k+2) pi^2k/(2k+2)!, the leading monomials of
    the cosh and sinh terms. """
    return (Term(-_sign(k), IntPolynomial.monomial(1, 2 * k), 2 * k + 1),
            Term(-_sign(k), IntPolynomial.monomial(2 * k + 2, 2 * k),
                 2 * k + 2))


def lucas_odd_row_term(k):
    return Term(-_sign(k), _pi_poly(
        (_sign(j) * lucas_triangle_entry(2 * k + 1, 2 * j), 2 * (k - j))
        for j in range(k)), 2 * k, Fraction(1, 2))


def lucas_even_row_term(k):
    return Term(-_sign(k), _pi_poly(
        (_sign(j) * lucas_triangle_entry(2 * k + 2, 2 * j + 1), 2 * (k - j))
        for j in range(k)), 2 * k + 1, Fraction(1, 2))


def shallow_diagonal_term(k):
    """ (-1)^(k+1) sum_{j<k} (-1)^j C(2k-1-j, j) pi^(2(k-j)-1) / (2k)! """
    return Term(-_sign(k), _pi_poly(
        (_sign(j) * binomial(2 * k - 1 - j, j), 2 * (k - j) - 1)
        for j in range(k)), 2 * k)


def central_diagonal_term(k):
    """ 2 A_k / pi^(2k+1) with A_k = sum_j (-1)^j C(2k-2j, k-2j) pi^2j/(2j)!;
    put over the common denominator (2J)!, J = k // 2. """
    top = k // 2
    common = math.factorial(2 * top)
    return Term(1, _pi_poly(
        (_sign(j) * binomial(2 * k - 2 * j, k - 2 * j) * common //
         math.factorial(2 * j), 2 * j)
        for j in range(top + 1)), 2 * top, Fraction(2), -(2 * k + 1))


def composite_groups(K):
    """ The interleaved cosh/sinh series for e to depth K, rewritten onto
    composite factorials. """
    return composite_transform(
        [MonomialGroup.from_term(t) for k in range(1, K + 1)
         for t in e_pair(k)])


def composite_prefix(K):
    """ The groups of composite_groups(K) that deeper source series leave
    unchanged: a group on n! can still receive the group moved down from
    (n+1)!, so only n <= 2K+1 is final. """
    return [g for g in composite_groups(K) if g.factorial_index <= 2 * K + 1]


# Targets
# =============================================================================
def _target(name):
    return partial(constant, name)


def _e_power_target(n):
    return partial(e_power, n)


def _e_plus_inverse(ctx):
    e = constant('e', ctx)
    return e + 1 / e


def _inverse_factorial(n):
    def target(ctx):
        return ctx.mpf(1) / math.factorial(n)
    return target


def _fixed(value):
    def target(ctx):
        return ctx.mpf(value)
    return target


# Families
# =============================================================================
def _brothers(params):
    return LimitIdentity(
        id='brothers_limit', name='Pascal row-product limit',
        status=Status.theorem, target=_target('e'), target_text='e',
        anchor='Row products s_n of Pascal\'s triangle: '
               's_{n+1}s_{n-1}/s_n^2 -> e')


def _gardner(fixed, params):
    if fixed:
        return RatioIdentity(
            partial(gen_lucas_numerator, 0), partial(gen_lucas_denominator, 0),
            id='gardner_fixed', name='Fibonacci ratio for e, corrected signs',
            status=Status.theorem, target=_target('e'), target_text='e',
            anchor='Fibonacci-number ratio for e with alternating '
                   'denominator signs')
    return RatioIdentity(
        partial(gen_lucas_numerator, 0),
        partial(gen_lucas_denominator, 0, alternate=False),
        id='gardner_false', name='Fibonacci ratio for e, signs as published',
        status=Status.negative_control, target=_target('e'), target_text='e',
        anchor='Fibonacci-number ratio for e as originally stated '
               '(all denominator signs positive)')


def _thm1(params):
    x = params['x']
    return RatioIdentity(
        partial(gen_lucas_numerator, x), partial(gen_lucas_denominator, x),
        id='thm1', name='Generalized Lucas sequence ratio for e',
        status=Status.theorem, target=_target('e'), target_text='e',
        anchor='Ratio of F_{k+1}+xF_{k-1} and F_{k-1}+xF_{k+1} series',
        params=params)


def _thm2(params):
    x = params['x']
    return RatioIdentity(
        partial(fib_numerator, x), partial(fib_denominator, x),
        first_index=1,
        id='thm2', name='Fibonacci polynomial ratio for e^x',
        status=Status.theorem, target=_e_power_target(x),
        target_text='e^{}'.format(x),
        anchor='Fibonacci-polynomial ratio series for e^x', params=params)


def _thm3(params):
    return SeriesIdentity(
        rotated_pascal_term,
        id='thm3', name='Rotated Pascal triangle series for sinh(1)',
        status=Status.theorem, target=_target('sinh1'), target_text='sinh(1)',
        anchor='Fibonacci polynomials at x = i*pi, coefficients C(2k-j, j)')


def _conj1(params):
    m = params['m']
    if m < 0:
        raise InvalidParameters("m must be >= 0, got {}".format(m))
    return SeriesIdentity(
        partial(central_term, m),
        id='conj1', name='Pascal column series for 1/(2m+1)!',
        status=Status.conjecture, target=_inverse_factorial(2 * m + 1),
        target_text='1/{}!'.format(2 * m + 1),
        anchor='Column m of Pascal\'s triangle against pi^2k/(2k+2m+1)!',
        params=params)


def _conj2(params):
    return SeriesIdentity(
        e_pair,
        id='conj2', name='Pascal row series for e',
        status=Status.conjecture, target=_target('e'), target_text='e',
        anchor='Odd and even Pascal rows interleaved, alternating pi powers')


def _conj3(params):
    return SeriesIdentity(
        sinh_term,
        id='conj3', name='Even Pascal rows, odd columns, for sinh(1)',
        status=Status.conjecture, target=_target('sinh1'),
        target_text='sinh(1)',
        anchor='Rows 2k+2, entries C(2k+2, 2j+1), over (2k+2)!')


def _conj4(params):
    return SeriesIdentity(
        cosh_term,
        id='conj4', name='Odd Pascal rows, even columns, for cosh(1)',
        status=Status.conjecture, target=_target('cosh1'),
        target_text='cosh(1)',
        anchor='Rows 2k+1, entries C(2k+1, 2j), over (2k+1)!')


def _composite_two(params):
    return SeriesIdentity(
        two_pair,
        id='composite_two', name='Leading-coefficient series for 2',
        status=Status.conjecture, target=_fixed(2), target_text='2',
        anchor='2 = pi^2/3! + 4pi^2/4! - pi^4/5! - 6pi^4/6! + ...')


def _composite_e(params):
    return CompositeIdentity(
        composite_groups, composite_prefix,
        id='composite_e', name='Series for e over composite factorials',
        status=Status.conjecture, target=_target('e'), target_text='e',
        anchor='Prime-factorial terms folded with (pk)/p! = k/(p-1)!')


def _cheb(params):
    return SeriesIdentity(
        chebyshev_term,
        id='cheb_2pii', name='Fibonacci polynomials at x = 2*pi*i',
        status=Status.theorem, target=_target('sinh1'), target_text='sinh(1)',
        anchor='Fibonacci polynomials at 2*pi*i (Chebyshev polynomials of '
               'the second kind)')


def _thm4(params):
    x = params['x']
    return RatioIdentity(
        partial(lucas_numerator, x, 1), partial(lucas_denominator, x, 1),
        id='thm4', name='Lucas polynomial ratio for e^x',
        status=Status.theorem, target=_e_power_target(x),
        target_text='e^{}'.format(x),
        anchor='Lucas-polynomial ratio series for e^x', params=params)


def _lucas_ipi(params):
    return SeriesIdentity(
        lucas_ipi_term,
        id='lucas_ipi', name='Lucas polynomials at x = i*pi',
        status=Status.theorem, target=_e_plus_inverse, target_text='e + 1/e',
        anchor='Lucas polynomials at i*pi with the constant 2 removed')


def _thm5(params):
    n, x = params['n'], params['x']
    if n < 1:
        raise InvalidParameters("n must be >= 1, got {}".format(n))
    exponent = lucas_poly(n)(x)
    return RatioIdentity(
        partial(lucas_numerator, x, n), partial(lucas_denominator, x, n),
        id='thm5', name='Lucas polynomial ratio for e^{L_n(x)}',
        status=Status.theorem, target=_e_power_target(exponent),
        target_text='e^{}'.format(exponent),
        anchor='Ratio of L_{nk}(x) series for e^{L_n(x)}', params=params)


def _conj5(params):
    return SeriesIdentity(
        lucas_odd_row_term,
        id='conj5', name='Odd Lucas-triangle rows for e',
        status=Status.conjecture, target=_target('e'), target_text='e',
        anchor='Lucas triangle rows 2k+1, entries B(2k+1, 2j), over 2(2k)!')


def _conj6(params):
    return SeriesIdentity(
        lucas_even_row_term,
        id='conj6', name='Even Lucas-triangle rows for e',
        status=Status.conjecture, target=_target('e'), target_text='e',
        anchor='Lucas triangle rows 2k+2, entries B(2k+2, 2j+1), '
               'over 2(2k+1)!')


def _conj7(params):
    return DifferenceIdentity(
        shallow_diagonal_term, central_diagonal_term,
        rhs_factor=params['rhs_factor'],
        id='conj7', name='Shallow against normal diagonals',
        status=Status.conjecture, target=_fixed(0), target_text='0',
        anchor='Odd Fibonacci polynomials at pi against central binomial '
               'coefficients over pi^(2k+1)',
        params=params)


_FAMILIES = [
    Family('brothers_limit', {}, None, None, _brothers),
    Family('gardner_false', {}, None, None, partial(_gardner, False)),
    Family('gardner_fixed', {}, None, None, partial(_gardner, True)),
    Family('thm1', {'x': 1}, 'x', (0, 3), _thm1),
    Family('thm2', {'x': 1}, 'x', (0, 3), _thm2),
    Family('thm3', {}, None, None, _thm3),
    Family('conj1', {'m': 1}, 'm', (0, 8), _conj1),
    Family('conj2', {}, None, None, _conj2),
    Family('conj3', {}, None, None, _conj3),
    Family('conj4', {}, None, None, _conj4),
    Family('composite_two', {}, None, None, _composite_two),
    Family('composite_e', {}, None, None, _composite_e),
    Family('cheb_2pii', {}, None, None, _cheb),
    Family('thm4', {'x': 1}, 'x', (0, 3), _thm4),
    Family('lucas_ipi', {}, None, None, _lucas_ipi),
    Family('thm5', {'n': 2, 'x': 1}, 'n', (1, 4), _thm5),
    Family('conj5', {}, None, None, _conj5),
    Family('conj6', {}, None, None, _conj6),
    Family('conj7', {'rhs_factor': 2}, None, None, _conj7),
]
REGISTRY = OrderedDict((f.id, f) for f in _FAMILIES)


def get_family(id):
    try:
        return REGISTRY[id]
    except KeyError:
        raise UnknownIdentity("Unknown identity {!r}".format(id))


def get_identity(id, params=None):
    """ Builds the identity ``id`` with ``params`` laid over its defaults.
    Parameters the identity doesn't take are rejected; ``None`` values are
    ignored so CLI flags can be passed straight through. """
    family = get_family(id)
    merged = dict(family.defaults)
    for key, value in (params or {}).items():
        if value is None:
            continue
        if key not in family.defaults:
            raise InvalidParameters("{} takes no parameter {!r}"
                                    .format(id, key))
        if isinstance(value, bool) or not isinstance(value, Integral):
            raise InvalidParameters("{}={!r} is not an integer"
                                    .format(key, value))
        merged[key] = int(value)
    return family.build(merged)


def list_identities():
    return [get_identity(id) for id in REGISTRY]


def term_structure(id, k, params=None):
    return get_identity(id, params).term_structure(k)


def target_value(id, ctx, params=None):
    return get_identity(id, params).target_value(ctx)


def scan_parameters(id, start=None, stop=None):
    """ Parameter sets for a family scan; the family default range fills in
    whichever end is missing. """
    family = get_family(id)
    if family.scan_param is None:
        raise InvalidParameters("{} has no scan parameter".format(id))
    lo, hi = family.scan_range
    start = lo if start is None else start
    stop = hi if stop is None else stop
    if stop < start:
        raise InvalidParameters("Empty range {}..{}".format(start, stop))
    return [{family.scan_param: v} for v in range(start, stop + 1)]


def to_json():
    return json.dumps([i.to_dict() for i in list_identities()], indent=2)

