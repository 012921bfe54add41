""" Exact combinatorics: Pascal and Lucas triangles, Fibonacci and Lucas
polynomials, the generalized Lucas sequences, row products and the rewrite of
the e series onto composite factorials. Everything here is integer or
rational arithmetic; nothing touches floating point. """
import enum
import logging
import threading
from collections import namedtuple
from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt, prod

from dataclasses import dataclass, field

from .polynomial import IntPolynomial, X


logger = logging.getLogger(__name__)


class TransformException(ValueError):
    pass


# Triangles
# =============================================================================
def binomial(n, k):
    if n < 0:
        raise ValueError("binomial needs n >= 0, got {}".format(n))
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def pascal_row(n):
    if n < 0:
        raise ValueError("Pascal rows start at 0, got {}".format(n))
    return [comb(n, k) for k in range(n + 1)]


def lucas_triangle_entry(n, k):
    """ B(n, k) = C(n, k) + C(n-1, k-1); rows start at n=1 with [1, 2]. """
    if n < 1:
        raise ValueError("Lucas triangle rows start at 1, got {}".format(n))
    return binomial(n, k) + binomial(n - 1, k - 1)


def lucas_triangle_row(n):
    return [lucas_triangle_entry(n, k) for k in range(n + 1)]


# Integer sequences
# =============================================================================
def _fib_pair(n):
    # fast doubling, returns (F_n, F_{n+1}) for n >= 0
    if n == 0:
        return 0, 1
    a, b = _fib_pair(n >> 1)
    c = a * (2 * b - a)
    d = a * a + b * b
    if n & 1:
        return d, c + d
    return c, d


def fibonacci(n):
    """ F_n for any integer n, using F_{-n} = (-1)^(n+1) F_n. """
    if n >= 0:
        return _fib_pair(n)[0]
    value = _fib_pair(-n)[0]
    return value if n % 2 else -value


def lucas_number(n):
    """ L_n = F_{n-1} + F_{n+1} for any integer n. """
    return fibonacci(n - 1) + fibonacci(n + 1)


# Polynomials
# =============================================================================
class _PolySequence(object):
    """ Memoised x a_{k-1} + a_{k-2} sequence, grown under a lock. """

    def __init__(self, first, second):
        self._values = [first, second]
        self._lock = threading.Lock()

    def __getitem__(self, k):
        with self._lock:
            values = self._values
            while len(values) <= k:
                values.append(values[-1].shift(1) + values[-2])
            return values[k]


_FIB_POLYS = _PolySequence(IntPolynomial(), IntPolynomial.constant(1))
_LUCAS_POLYS = _PolySequence(IntPolynomial.constant(2), X)


def fib_poly(k):
    """ F_0 = 0, F_1 = 1, F_k = x F_{k-1} + F_{k-2} """
    if k < 0:
        raise ValueError("fib_poly needs k >= 0, got {}".format(k))
    return _FIB_POLYS[k]


def lucas_poly(k):
    """ L_0 = 2, L_1 = x, L_k = x L_{k-1} + L_{k-2} """
    if k < 0:
        raise ValueError("lucas_poly needs k >= 0, got {}".format(k))
    return _LUCAS_POLYS[k]


def fib_poly_from_diagonal(k):
    """ Reads F_k off the k-th shallow diagonal of Pascal's triangle: the
    coefficient of x^(k-1-2j) is C(k-1-j, j). """
    if k < 1:
        raise ValueError("Shallow diagonals start at k=1, got {}".format(k))
    return IntPolynomial.from_monomials(
        (binomial(k - 1 - j, j), k - 1 - 2 * j)
        for j in range((k - 1) // 2 + 1))


def lucas_poly_from_diagonal(k):
    """ Same reading on the Lucas triangle: x^(k-2j) carries B(k-j, j). """
    if k < 1:
        raise ValueError("Shallow diagonals start at k=1, got {}".format(k))
    return IntPolynomial.from_monomials(
        (lucas_triangle_entry(k - j, j), k - 2 * j)
        for j in range(k // 2 + 1))


# Generalized Lucas sequences
# =============================================================================
class SequenceKind(enum.Enum):
    numerator = 'numerator'
    denominator = 'denominator'


def gen_lucas_term(x, k, kind):
    """ numerator: G_k = F_{k+1} + x F_{k-1}
    denominator: D_k = F_{k-1} + x F_{k+1} """
    kind = SequenceKind(kind)
    if kind is SequenceKind.numerator:
        return fibonacci(k + 1) + x * fibonacci(k - 1)
    return fibonacci(k - 1) + x * fibonacci(k + 1)


class GenLucasSequence(object):
    """ The numerator or denominator sequence of the ratio for e with
    parameter x. Indexable by any integer. """

    def __init__(self, x, kind=SequenceKind.numerator):
        self.x = x
        self.kind = SequenceKind(kind)

    def __getitem__(self, k):
        return gen_lucas_term(self.x, k, self.kind)

    def terms(self, start, stop):
        """ Terms start..stop inclusive. """
        return [self[k] for k in range(start, stop + 1)]

    def __repr__(self):
        return '<GenLucasSequence x={} kind={}>'.format(self.x,
                                                        self.kind.value)


# Row products
# =============================================================================
@lru_cache(maxsize=64)
def row_product(n):
    """ s_n, the product of every entry of Pascal row n. """
    if n < 0:
        raise ValueError("Pascal rows start at 0, got {}".format(n))
    return prod(pascal_row(n))


def brothers_ratio(n):
    """ s_{n+1} s_{n-1} / s_n^2, which equals (1 + 1/n)^n. """
    if n < 1:
        raise ValueError("brothers_ratio needs n >= 1, got {}".format(n))
    s_n = row_product(n)
    return Fraction(row_product(n + 1) * row_product(n - 1), s_n * s_n)


# Exact series terms
# =============================================================================
@dataclass(frozen=True)
class Term:
    """ sign * numerator(pi) * pi^pi_shift * scale / factorial_index! """
    sign: int
    numerator: IntPolynomial
    factorial_index: int
    scale: Fraction = field(default=Fraction(1))
    pi_shift: int = 0

    def is_zero(self):
        return self.numerator.is_zero() or self.scale == 0

    def to_text(self, var='pi'):
        body = self.numerator.to_text(var)
        if len(self.numerator.monomials()) > 1:
            body = '({})'.format(body)
        denominator = []
        if self.factorial_index > 1:
            denominator.append('{}!'.format(self.factorial_index))
        if self.scale.denominator != 1:
            denominator.insert(0, str(self.scale.denominator))
        if self.pi_shift < 0:
            denominator.append('{}^{}'.format(var, -self.pi_shift))
        prefix = ''
        if self.scale.numerator != 1:
            prefix = '{}*'.format(self.scale.numerator)
        if self.pi_shift > 0:
            body = '{}{}^{}*{}'.format(prefix, var, self.pi_shift, body)
        else:
            body = prefix + body
        text = '{} {}'.format('-' if self.sign < 0 else '+', body)
        if denominator:
            text += '/' + '*'.join(denominator)
        return text


class MonomialGroup(namedtuple('MonomialGroup',
                               ['sign', 'factorial_index', 'numerator'])):
    """ sign * numerator(pi) / factorial_index!, numerator holding exact
    integer coefficients on even powers of pi. """

    @classmethod
    def from_term(cls, term):
        if term.scale != 1 or term.pi_shift:
            raise TransformException("Only unscaled terms form monomial "
                                     "groups, got {}".format(term.to_text()))
        return cls(term.sign, term.factorial_index, term.numerator)

    @property
    def monomials(self):
        return self.numerator.monomials()

    def to_term(self):
        return Term(self.sign, self.numerator, self.factorial_index)


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, isqrt(n) + 1, 2))


def _normalise(factorial_index, poly):
    if poly.is_zero():
        return None
    if poly.monomials()[0][0] < 0:
        return MonomialGroup(-1, factorial_index, -poly)
    return MonomialGroup(1, factorial_index, poly)


def composite_transform(groups):
    """ Rewrites the interleaved cosh/sinh series for e onto composite
    factorials.

    Every group loses its leading monomial (the terms of the series
    ``2 = pi^2/3! + 4pi^2/4! - pi^4/5! - 6pi^4/6! + ...``), which is paid
    back by a constant 2. A group left on a prime factorial p! has every
    coefficient divisible by p, so it moves to (p-1)! using
    ``(p c)/p! = c/(p-1)!`` and merges with the group already there. """
    merged = {}
    for group in groups:
        remainder = IntPolynomial.from_monomials(group.monomials[1:])
        if remainder.is_zero():
            continue
        index = group.factorial_index
        if is_prime(index):
            try:
                remainder = remainder.divide_exact(index)
            except ValueError:
                raise TransformException(
                    "Coefficients of {} are not multiples of {}"
                    .format(remainder.to_text('pi'), index))
            logger.debug("moved group {}! to {}!".format(index, index - 1))
            index -= 1
        merged[index] = merged.get(index, IntPolynomial()) + \
            remainder * group.sign

    out = [MonomialGroup(1, 0, IntPolynomial.constant(2))]
    for index in sorted(merged):
        group = _normalise(index, merged[index])
        if group is None:
            continue
        if is_prime(index):
            raise TransformException("Group left on prime factorial {}!"
                                     .format(index))
        out.append(group)
    return out


def format_groups(groups, var='pi'):
    """ ``2 + 2pi^2/4! - (3pi^4 - 25pi^2)/6! ...`` """
    parts = []
    for group in groups:
        body = group.numerator.to_text(var)
        if len(group.monomials) > 1:
            body = '({})'.format(body)
        if group.factorial_index > 1:
            body += '/{}!'.format(group.factorial_index)
        if not parts:
            parts.append(body if group.sign > 0 else '-' + body)
        else:
            parts.append(('+ ' if group.sign > 0 else '- ') + body)
    return ' '.join(parts) if parts else '0'
