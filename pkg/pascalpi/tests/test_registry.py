import json
import unittest

from pascalpi.exact import Term, fib_poly, lucas_poly
from pascalpi.models import (DomainException, Form, InvalidParameters, Status,
                             UnknownIdentity)
from pascalpi.numerics import (PrecisionContext, constant, digits_matched,
                               eval_poly, eval_term)
from pascalpi.polynomial import IntPolynomial, imaginary_substitution
from pascalpi.registry import (get_identity, list_identities, scan_parameters,
                               target_value, term_structure, to_json)


CATALOG = ('brothers_limit', 'gardner_false', 'gardner_fixed', 'thm1', 'thm2',
           'thm3', 'conj1', 'conj2', 'conj3', 'conj4', 'composite_two',
           'composite_e', 'cheb_2pii', 'thm4', 'lucas_ipi', 'thm5', 'conj5',
           'conj6', 'conj7')


def pi_poly(*monomials):
    return IntPolynomial.from_monomials(monomials)


def signed(id, k, params=None):
    """ (sign, numerator, factorial index) of the single primary term. """
    term, = term_structure(id, k, params).primary
    return term.sign, term.numerator, term.factorial_index


class TestCatalog(unittest.TestCase):
    def test_ids_in_order(self):
        self.assertEqual(tuple(i.id for i in list_identities()), CATALOG)
        self.assertEqual([i.id for i in list_identities()],
                         [i.id for i in list_identities()])

    def test_statuses(self):
        statuses = {i.id: i.status for i in list_identities()}
        self.assertIs(statuses['gardner_false'], Status.negative_control)
        self.assertIs(statuses['thm3'], Status.theorem)
        self.assertIs(statuses['conj5'], Status.conjecture)
        self.assertIs(get_identity('brothers_limit').form, Form.limit)
        self.assertIs(get_identity('conj7').form, Form.difference)

    def test_to_json(self):
        entries = json.loads(to_json())
        self.assertEqual(len(entries), len(CATALOG))
        for entry in entries:
            self.assertTrue({'id', 'name', 'status', 'form', 'target',
                             'anchor', 'params'} <= set(entry))
            self.assertTrue(entry['anchor'])

    def test_errors(self):
        with self.assertRaises(UnknownIdentity):
            get_identity('thm9')
        with self.assertRaises(InvalidParameters):
            get_identity('thm3', {'x': 1})
        with self.assertRaises(InvalidParameters):
            get_identity('conj1', {'m': -1})
        with self.assertRaises(InvalidParameters):
            get_identity('conj1', {'m': '2'})
        with self.assertRaises(InvalidParameters):
            get_identity('thm5', {'n': 0})
        with self.assertRaises(DomainException):
            term_structure('thm3', 0)
        with self.assertRaises(DomainException):
            get_identity('thm3').check_depth(0)

    def test_none_parameters_ignored(self):
        self.assertEqual(get_identity('conj1', {'m': None}).params, {'m': 1})

    def test_labels(self):
        self.assertEqual(get_identity('conj1', {'m': 3}).label, 'conj1_m3')
        self.assertEqual(get_identity('thm5').label, 'thm5_n2_x1')
        self.assertEqual(get_identity('thm3').label, 'thm3')

    def test_scan_parameters(self):
        self.assertEqual(scan_parameters('conj1'),
                         [{'m': m} for m in range(9)])
        self.assertEqual(scan_parameters('thm5', 2, 3),
                         [{'n': 2}, {'n': 3}])
        with self.assertRaises(InvalidParameters):
            scan_parameters('conj1', 5, 4)
        with self.assertRaises(InvalidParameters):
            scan_parameters('thm3')


class TestTermStructures(unittest.TestCase):
    def test_every_entry_yields_exact_terms(self):
        for identity in list_identities():
            k = max(identity.first_index, 1)
            structure = identity.term_structure(k)
            self.assertIsInstance(structure.primary, tuple, identity.id)
            self.assertTrue(structure.primary, identity.id)
            for term in structure.primary + structure.secondary:
                self.assertIsInstance(term, Term, identity.id)

    def test_generalized_lucas_displays(self):
        def values(id, params, side):
            return [t.sign * t.numerator.coefficient(0) for k in range(10)
                    for t in term_structure(id, k, params)[side]]
        self.assertEqual(values('thm1', {'x': 2}, 0),
                         [3, 1, 4, 5, 9, 14, 23, 37, 60, 97])
        self.assertEqual(values('thm1', {'x': 2}, 1),
                         [3, -2, 5, -7, 12, -19, 31, -50, 81, -131])
        self.assertEqual(values('thm4', {'x': 1}, 0),
                         [2, 1, 3, 4, 7, 11, 18, 29, 47, 76])

    def test_ratio_terms(self):
        num, den = term_structure('thm1', 3, {'x': 1})
        self.assertEqual(num[0].sign * num[0].numerator.coefficient(0), 4)
        self.assertEqual(den[0].sign * den[0].numerator.coefficient(0), -4)
        self.assertEqual(num[0].factorial_index, 3)

    def test_rotated_pascal(self):
        expected = [pi_poly((1, 2)),
                    pi_poly((1, 4), (-3, 2)),
                    pi_poly((1, 6), (-5, 4), (6, 2)),
                    pi_poly((1, 8), (-7, 6), (15, 4), (-10, 2))]
        for k, numerator in enumerate(expected, 1):
            self.assertEqual(signed('thm3', k),
                             ((-1) ** (k + 1), numerator, 2 * k + 1))

    def test_chebyshev(self):
        expected = [pi_poly((8, 2)),
                    pi_poly((32, 4), (-32, 2)),
                    pi_poly((128, 6), (-192, 4), (80, 2)),
                    pi_poly((512, 8), (-1024, 6), (672, 4), (-160, 2))]
        for k, numerator in enumerate(expected, 1):
            self.assertEqual(signed('cheb_2pii', k),
                             ((-1) ** (k + 1), numerator, 2 * k + 2))

    def test_lucas_ipi(self):
        expected = [pi_poly((1, 2)),
                    pi_poly((1, 4), (-4, 2)),
                    pi_poly((1, 6), (-6, 4), (9, 2)),
                    pi_poly((1, 8), (-8, 6), (20, 4), (-16, 2))]
        for k, numerator in enumerate(expected, 1):
            self.assertEqual(signed('lucas_ipi', k),
                             ((-1) ** (k + 1), numerator, 2 * k))

    def test_central_columns(self):
        for k, c in enumerate((3, 5, 7, 9), 1):
            self.assertEqual(signed('conj1', k, {'m': 1}),
                             ((-1) ** (k + 1), pi_poly((c, 2 * k)),
                              2 * k + 3))
        self.assertEqual(signed('conj1', 3, {'m': 2}),
                         (1, pi_poly((28, 6)), 11))

    def test_odd_and_even_rows(self):
        cosh = [pi_poly((1, 2)),
                pi_poly((1, 4), (-10, 2)),
                pi_poly((1, 6), (-21, 4), (35, 2)),
                pi_poly((1, 8), (-36, 6), (126, 4), (-84, 2))]
        sinh = [pi_poly((4, 2)),
                pi_poly((6, 4), (-20, 2)),
                pi_poly((8, 6), (-56, 4), (56, 2)),
                pi_poly((10, 8), (-120, 6), (252, 4), (-120, 2))]
        for k in range(1, 5):
            sign = (-1) ** (k + 1)
            self.assertEqual(signed('conj4', k),
                             (sign, cosh[k - 1], 2 * k + 1))
            self.assertEqual(signed('conj3', k),
                             (sign, sinh[k - 1], 2 * k + 2))
            pair = term_structure('conj2', k).primary
            self.assertEqual(pair, term_structure('conj4', k).primary +
                             term_structure('conj3', k).primary)

    def test_lucas_rows(self):
        odd = [pi_poly((1, 2)),
               pi_poly((1, 4), (-14, 2)),
               pi_poly((1, 6), (-27, 4), (55, 2)),
               pi_poly((1, 8), (-44, 6), (182, 4), (-140, 2))]
        even = [pi_poly((5, 2)),
                pi_poly((7, 4), (-30, 2)),
                pi_poly((9, 6), (-77, 4), (91, 2)),
                pi_poly((11, 8), (-156, 6), (378, 4), (-204, 2))]
        for k in range(1, 5):
            sign = (-1) ** (k + 1)
            term, = term_structure('conj5', k).primary
            self.assertEqual((term.sign, term.numerator, term.factorial_index,
                              term.scale), (sign, odd[k - 1], 2 * k, 0.5))
            term, = term_structure('conj6', k).primary
            self.assertEqual((term.sign, term.numerator, term.factorial_index,
                              term.scale), (sign, even[k - 1], 2 * k + 1, 0.5))

    def test_shallow_and_central_diagonals(self):
        lhs = [pi_poly((1, 1)),
               pi_poly((1, 3), (-2, 1)),
               pi_poly((1, 5), (-4, 3), (3, 1)),
               pi_poly((1, 7), (-6, 5), (10, 3), (-4, 1))]
        for k in range(1, 5):
            term, = term_structure('conj7', k).primary
            self.assertEqual((term.sign, term.numerator, term.factorial_index),
                             ((-1) ** (k + 1), lhs[k - 1], 2 * k))
        self.assertEqual(term_structure('conj7', 0).primary, ())

        rhs = [(pi_poly((1, 0)), 0),
               (pi_poly((2, 0)), 0),
               (pi_poly((12, 0), (-1, 2)), 2),
               (pi_poly((40, 0), (-4, 2)), 2),
               (pi_poly((1680, 0), (-180, 2), (1, 4)), 4)]
        for k, (numerator, index) in enumerate(rhs):
            term, = term_structure('conj7', k).secondary
            self.assertEqual((term.numerator, term.factorial_index,
                              term.scale, term.pi_shift),
                             (numerator, index, 2, -(2 * k + 1)))

    def test_composite_groups(self):
        first = term_structure('composite_e', 0).primary[0]
        self.assertEqual((first.numerator, first.factorial_index),
                         (IntPolynomial.constant(2), 0))
        self.assertEqual(signed('composite_e', 1), (1, pi_poly((2, 2)), 4))
        self.assertEqual(signed('composite_e', 2),
                         (-1, pi_poly((3, 4), (-25, 2)), 6))
        self.assertEqual(signed('composite_e', 5),
                         (-1, pi_poly((5, 8), (-150, 6), (294, 4),
                                      (-135, 2)), 10))

    def test_composite_two(self):
        first, second = term_structure('composite_two', 1).primary
        self.assertEqual((first.numerator, first.factorial_index),
                         (pi_poly((1, 2)), 3))
        self.assertEqual((second.numerator, second.factorial_index),
                         (pi_poly((4, 2)), 4))

    def test_brothers_term(self):
        term, = term_structure('brothers_limit', 1).primary
        self.assertEqual(term.numerator.coefficient(0) * term.scale, 2)


class TestEquivalentConstructions(unittest.TestCase):
    def test_rotated_pascal_from_fibonacci_at_ipi(self):
        for k in range(1, 21):
            real = imaginary_substitution(fib_poly(2 * k + 1)).real
            term, = term_structure('thm3', k).primary
            self.assertEqual(term.numerator, (real - 1) * (-1) ** k)
            self.assertEqual(term.sign, (-1) ** (k + 1))

    def test_lucas_terms_from_complex_evaluation(self):
        ctx = PrecisionContext(40)
        at = ctx.mp.mpc(0, constant('pi', ctx))
        for k in range(1, 21):
            value = lucas_poly(2 * k)(at)
            term, = term_structure('lucas_ipi', k).primary
            expected = (2 - value.real) / ctx.mp.factorial(2 * k)
            self.assertGreaterEqual(
                digits_matched(eval_term(term, ctx), expected, ctx), 30, k)
            self.assertLess(abs(value.imag), ctx.mpf(10) ** -30)

    def test_interleaved_rows_split_into_hyperbolic_parts(self):
        ctx = PrecisionContext(50)
        K = 30
        total = get_identity('conj2').evaluate(K, ctx).value
        parts = get_identity('conj3').evaluate(K, ctx).value + \
            get_identity('conj4').evaluate(K, ctx).value
        self.assertGreaterEqual(digits_matched(total, parts, ctx), 45)

    def test_polynomial_value_at_pi(self):
        ctx = PrecisionContext(30)
        pi = constant('pi', ctx)
        value = eval_poly(fib_poly(5), pi, ctx)
        self.assertEqual(digits_matched(value, pi ** 4 + 3 * pi ** 2 + 1, ctx),
                         30)


class TestTargets(unittest.TestCase):
    def test_targets(self):
        ctx = PrecisionContext(30)
        e = constant('e', ctx)
        self.assertEqual(digits_matched(target_value('thm5', ctx), e ** 3,
                                        ctx), 30)
        self.assertEqual(digits_matched(
            target_value('thm5', ctx, {'n': 3, 'x': 1}), e ** 4, ctx), 30)
        self.assertEqual(target_value('conj1', ctx, {'m': 0}), 1)
        self.assertEqual(target_value('conj7', ctx), 0)
        self.assertEqual(target_value('composite_two', ctx), 2)
        self.assertEqual(digits_matched(target_value('lucas_ipi', ctx),
                                        e + 1 / e, ctx), 30)
        self.assertTrue(str(target_value('lucas_ipi', ctx))
                        .startswith('3.0861612696'))
