""" Dense integer polynomials and their split under x = i*t. """
from collections import namedtuple
from itertools import zip_longest
from numbers import Integral


class IntPolynomial(object):
    """ Immutable dense polynomial with exact integer coefficients. Index j
    of ``coeffs`` is the coefficient of x^j; trailing zeros are trimmed so
    the zero polynomial has no coefficients and degree -1. """
    __slots__ = ('coeffs', '_hash')

    def __init__(self, coeffs=()):
        coeffs = list(coeffs)
        for c in coeffs:
            if not isinstance(c, Integral):
                raise TypeError("Integer coefficients only, got {!r}"
                                .format(c))
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(int(c) for c in coeffs)
        self._hash = None

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def monomial(cls, coefficient, power):
        if power < 0:
            raise ValueError("Negative power {}".format(power))
        return cls([0] * power + [coefficient])

    @classmethod
    def from_monomials(cls, monomials):
        """ Builds from (coefficient, power) pairs, summing repeats. """
        coeffs = {}
        for coefficient, power in monomials:
            coeffs[power] = coeffs.get(power, 0) + coefficient
        if not coeffs:
            return cls()
        return cls([coeffs.get(j, 0) for j in range(max(coeffs) + 1)])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, j):
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return 0

    def monomials(self):
        """ Nonzero (coefficient, power) pairs, highest power first. """
        return [(c, j) for j, c in reversed(list(enumerate(self.coeffs)))
                if c]

    def is_even(self):
        return all(c == 0 for c in self.coeffs[1::2])

    def is_odd(self):
        return all(c == 0 for c in self.coeffs[0::2])

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, Integral):
            return self.coeffs == IntPolynomial.constant(other).coeffs
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __add__(self, other):
        if isinstance(other, Integral):
            other = IntPolynomial.constant(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return IntPolynomial(a + b for a, b in
                             zip_longest(self.coeffs, other.coeffs,
                                         fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, Integral):
            other = IntPolynomial.constant(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Integral):
            return IntPolynomial(c * other for c in self.coeffs)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def shift(self, n):
        """ Multiplies by x^n. A negative n divides by x^-n and requires the
        dropped coefficients to be zero. """
        if n >= 0:
            return IntPolynomial([0] * n + list(self.coeffs))
        if any(self.coeffs[:-n]):
            raise ValueError("Cannot divide {} by x^{}".format(self, -n))
        return IntPolynomial(self.coeffs[-n:])

    def drop_below(self, n):
        """ Removes every monomial of power lower than n. """
        return IntPolynomial([0] * n + list(self.coeffs[n:]))

    def rescale(self, factor):
        """ p(factor * x) """
        return IntPolynomial(c * factor ** j
                             for j, c in enumerate(self.coeffs))

    def divide_exact(self, d):
        """ Divides every coefficient by d, which must divide them all. """
        if any(c % d for c in self.coeffs):
            raise ValueError("{} is not divisible by {}".format(self, d))
        return IntPolynomial(c // d for c in self.coeffs)

    def __call__(self, x):
        # horner; works for ints, Fractions and mpmath numbers alike
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_text(self, var='x'):
        """ Caret form in descending degree, e.g. ``x^4 + 3x^2 + 1``. """
        if self.is_zero():
            return '0'
        parts = []
        for coefficient, power in self.monomials():
            magnitude = abs(coefficient)
            if power == 0:
                body = str(magnitude)
            else:
                body = '' if magnitude == 1 else str(magnitude)
                body += var if power == 1 else '{}^{}'.format(var, power)
            if not parts:
                parts.append(body if coefficient > 0 else '-' + body)
            else:
                parts.append(('+ ' if coefficient > 0 else '- ') + body)
        return ' '.join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return 'IntPolynomial({!r})'.format(list(self.coeffs))


X = IntPolynomial([0, 1])


# real and imaginary parts, both polynomials in t, of P(i*t)
ComplexSplit = namedtuple('ComplexSplit', ['real', 'imag'])


def imaginary_substitution(p):
    """ Splits P(i*t) exactly: i^j cycles through 1, i, -1, -i so the even
    coefficients land in the real part and the odd ones in the imaginary part,
    each with sign (-1)^(j//2). """
    real = [0] * len(p.coeffs)
    imag = [0] * len(p.coeffs)
    for j, c in enumerate(p.coeffs):
        sign = -1 if (j // 2) % 2 else 1
        if j % 2:
            imag[j] = sign * c
        else:
            real[j] = sign * c
    return ComplexSplit(IntPolynomial(real), IntPolynomial(imag))

