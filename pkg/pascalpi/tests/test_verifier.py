import json
import unittest

from pascalpi.exact import Term
from pascalpi.models import InvalidParameters, RatioIdentity, SeriesIdentity
from pascalpi.numerics import PrecisionContext, constant
from pascalpi.polynomial import IntPolynomial
from pascalpi.registry import get_identity, rotated_pascal_term
from pascalpi import verifier
from pascalpi.verifier import (Verdict, VerificationReport, convergence_table,
                               default_threshold, judge, scan, summarize,
                               verify)


class TestThresholds(unittest.TestCase):
    def test_defaults(self):
        self.assertEqual(default_threshold('theorem', 50), 30)
        self.assertEqual(default_threshold('theorem', 40), 20)
        self.assertEqual(default_threshold('conjecture', 40), 15)
        self.assertEqual(default_threshold('conjecture', 30), 10)
        self.assertEqual(default_threshold('negative_control', 10), 1)


class TestVerify(unittest.TestCase):
    def test_fibonacci_ratio_for_e(self):
        report = verify('thm2', {'x': 1}, digits=50, K=40, threshold=40)
        self.assertEqual(report.verdict, 'pass')
        self.assertGreaterEqual(report.digits_matched, 40)
        self.assertEqual(report.terms, 40)
        self.assertTrue(report.value.startswith('2.71828182845904523536'))

    def test_theorems_pass(self):
        cases = [('thm1', {'x': 0}), ('thm1', {'x': 1}), ('thm1', {'x': 2}),
                 ('thm2', {'x': 1}), ('thm3', None), ('thm4', {'x': 1}),
                 ('thm5', {'n': 2, 'x': 1}), ('gardner_fixed', None),
                 ('cheb_2pii', None), ('lucas_ipi', None)]
        for id, params in cases:
            report = verify(id, params, digits=50, K=40, threshold=30)
            self.assertEqual(report.verdict, 'pass', (id, params))
            self.assertTrue(report.succeeded)

    def test_negative_control_fails(self):
        report = verify('gardner_false', digits=30, K=40, threshold=5)
        self.assertEqual(report.verdict, 'fail')
        self.assertLessEqual(report.digits_matched, 2)
        self.assertEqual(report.status, 'negative_control')
        self.assertTrue(report.succeeded)
        self.assertTrue(report.value.startswith('2.12'))

    def test_conjecture_passes(self):
        report = verify('conj4', digits=40, K=20, threshold=15)
        self.assertEqual(report.verdict, 'pass')
        self.assertEqual(report.status, 'conjecture')

    def test_composite_series(self):
        report = verify('composite_e', digits=30, K=12, threshold=10)
        self.assertEqual(report.verdict, 'pass')

    def test_row_product_limit(self):
        report = verify('brothers_limit', digits=30)
        self.assertEqual(report.terms, 1000)
        self.assertEqual(report.verdict, 'pass')
        self.assertEqual(report.digits_matched, 2)

    def test_truncation_dominated_ratio_is_inconclusive(self):
        report = verify('thm5', {'n': 4, 'x': 1}, digits=40, K=30)
        self.assertEqual(report.verdict, 'inconclusive')
        self.assertIn('truncation', report.diagnostic)

    def test_every_series_entry_verifies(self):
        for id in ('thm3', 'conj1', 'conj3', 'conj4', 'conj5', 'conj6',
                   'cheb_2pii', 'lucas_ipi'):
            report = verify(id, digits=20, K=10)
            self.assertIsNotNone(report.value, id)
            self.assertIn(report.verdict, ('pass', 'fail', 'inconclusive'))

    def test_imaginary_substitutions_match(self):
        for id in ('cheb_2pii', 'lucas_ipi'):
            report = verify(id, digits=40, K=30)
            self.assertEqual(report.verdict, 'pass', id)
            self.assertGreaterEqual(report.digits_matched, 20, id)

    def test_small_target_matched_relatively(self):
        report = verify('conj1', {'m': 8}, digits=40, K=1)
        self.assertEqual(report.digits_matched, 0)
        self.assertEqual(report.verdict, 'inconclusive')
        self.assertIn('truncation', report.diagnostic)

    def test_reproducible(self):
        first = verify('thm3', digits=40, K=20)
        second = verify('thm3', digits=40, K=20)
        self.assertEqual(first, second)
        self.assertEqual(json.dumps(first.to_dict()),
                         json.dumps(second.to_dict()))

    def test_report_round_trip(self):
        report = verify('conj1', {'m': 3}, digits=30, K=20)
        data = json.loads(json.dumps(report.to_dict()))
        self.assertEqual(VerificationReport.from_dict(data), report)
        self.assertEqual(report.label, 'conj1_m3')
        self.assertEqual(list(data), list(verifier.REPORT_KEYS))
        with self.assertRaises(ValueError):
            VerificationReport.from_dict({'id': 'thm3'})


class TestJudge(unittest.TestCase):
    def test_wrong_target_fails(self):
        ctx = PrecisionContext(40)
        identity = SeriesIdentity(
            rotated_pascal_term, id='wrong', name='wrong target',
            status='theorem', target=lambda c: constant('cosh1', c),
            target_text='cosh(1)', anchor='-')
        evaluation = identity.evaluate(40, ctx)
        verdict, _ = judge(identity, evaluation, 0, 20, ctx)
        self.assertIs(verdict, Verdict.failed)

    def test_vanishing_denominator_is_inconclusive(self):
        zero = IntPolynomial()
        identity = RatioIdentity(
            lambda k: Term(1, IntPolynomial.constant(1), k),
            lambda k: Term(1, zero, k),
            id='zero', name='zero denominator', status='theorem',
            target=lambda c: c.mpf(1), target_text='1', anchor='-')
        original = verifier.get_identity
        verifier.get_identity = lambda id, params=None: identity
        try:
            report = verify('zero', digits=20, K=10)
        finally:
            verifier.get_identity = original
        self.assertEqual(report.verdict, 'inconclusive')
        self.assertIsNotNone(report.diagnostic)
        self.assertIsNone(report.value)


class TestTailBound(unittest.TestCase):
    def test_bound_covers_error(self):
        ctx = PrecisionContext(40)
        for id in ('thm3', 'cheb_2pii', 'lucas_ipi'):
            identity = get_identity(id)
            evaluation = identity.evaluate(30, ctx)
            self.assertIsNotNone(evaluation.tail_bound, id)
            error = abs(evaluation.value - identity.target_value(ctx))
            self.assertLessEqual(error, evaluation.tail_bound, id)

    def test_no_bound_before_terms_shrink(self):
        ctx = PrecisionContext(40)
        evaluation = get_identity('cheb_2pii').evaluate(1, ctx)
        self.assertIsNone(evaluation.tail_bound)

    def test_matched_digits_relative_to_target(self):
        ctx = PrecisionContext(40)
        target = 1 / ctx.mp.factorial(17)
        self.assertEqual(
            verifier.matched_digits(ctx.mpf('3.65e-15'), target, ctx), 0)
        close = target * (1 + ctx.mpf('1e-20'))
        self.assertGreaterEqual(verifier.matched_digits(close, target, ctx),
                                19)


class TestConvergence(unittest.TestCase):
    def test_rotated_pascal_table(self):
        table = convergence_table('thm3', digits=50,
                                  K_list=[5, 10, 15, 20, 25])
        digits = [row.digits_matched for row in table.rows]
        self.assertEqual(len(digits), 5)
        self.assertTrue(all(b > a for a, b in zip(digits, digits[1:])))
        self.assertGreaterEqual(digits[-1], 40)

    def test_row_product_table(self):
        table = convergence_table('brothers_limit', digits=30,
                                  K_list=[10, 100, 1000])
        self.assertEqual([row.digits_matched for row in table.rows],
                         [0, 1, 2])

    def test_depths_must_increase(self):
        with self.assertRaises(InvalidParameters):
            convergence_table('thm3', K_list=[10, 5])
        with self.assertRaises(InvalidParameters):
            convergence_table('thm3', K_list=[])

    def test_diagonal_difference_shrinks(self):
        identity = get_identity('conj7')
        ctx = PrecisionContext(40)
        sizes = [abs(identity.evaluate(K, ctx).value) for K in (4, 6, 8, 10)]
        self.assertTrue(all(b < a for a, b in zip(sizes, sizes[1:])))
        self.assertLess(sizes[-1], 1e-10)


class TestScan(unittest.TestCase):
    def test_central_columns(self):
        result = scan('conj1', 0, 8, digits=40, K=25)
        self.assertEqual([r.params for r in result.reports],
                         [{'m': m} for m in range(9)])
        self.assertEqual(result.summary['pass'], 9)
        self.assertEqual(result.summary['succeeded'], 9)
        for report in result.reports:
            self.assertGreaterEqual(report.digits_matched, 15)

    def test_generalized_lucas_family(self):
        result = scan('thm1', 0, 3, digits=40, K=40)
        self.assertEqual(result.summary,
                         {'total': 4, 'pass': 4, 'fail': 0,
                          'inconclusive': 0, 'succeeded': 4})

    def test_fixed_parameters_carried(self):
        result = scan('thm5', 1, 2, params={'x': 1}, digits=30, K=30)
        self.assertEqual([r.params for r in result.reports],
                         [{'n': 1, 'x': 1}, {'n': 2, 'x': 1}])

    def test_parallel_scan_keeps_order(self):
        serial = scan('conj1', 0, 3, digits=20, K=15)
        parallel = scan('conj1', 0, 3, jobs=2, digits=20, K=15)
        self.assertEqual(serial.reports, parallel.reports)

    def test_summarize(self):
        self.assertEqual(summarize([]), {'total': 0, 'pass': 0, 'fail': 0,
                                         'inconclusive': 0, 'succeeded': 0})
