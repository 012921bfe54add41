""" Identity objects: each knows its exact term rule, its target constant
and how to evaluate itself to a truncation depth K. """
import enum
import logging
from collections import namedtuple
from fractions import Fraction

from .exact import Term, brothers_ratio, row_product
from .numerics import eval_term, ratio_evaluation, sum_series
from .polynomial import IntPolynomial


logger = logging.getLogger(__name__)


class IdentityException(LookupError):
    pass


class UnknownIdentity(IdentityException):
    pass


class InvalidParameters(IdentityException):
    pass


class DomainException(IdentityException):
    pass


class Status(enum.Enum):
    theorem = 'theorem'
    conjecture = 'conjecture'
    negative_control = 'negative_control'


class Form(enum.Enum):
    ratio = 'ratio'
    series = 'series'
    limit = 'limit'
    difference = 'difference'


# primary/secondary are tuples of exact Terms; see Identity.term_structure
TermStructure = namedtuple('TermStructure', ['primary', 'secondary'])

# value: the evaluated side (or LHS - RHS); truncation: estimated size of
# the neglected tail, None when the form gives no such estimate
Evaluation = namedtuple('Evaluation', ['value', 'terms_used', 'tail_bound',
                                       'truncation'])


def _truncation(series):
    if series.monotone_tail:
        return series.tail_bound
    return 10 * abs(series.next_term)


class Identity(object):
    """ Common metadata. Subclasses provide ``term_structure`` and
    ``evaluate``; ``target`` is a callable ctx -> value. """
    form = None
    first_index = 1
    min_terms = 1
    default_terms = None

    def __init__(self, id, name, status, target, target_text, anchor,
                 params=None):
        self.id = id
        self.name = name
        self.status = Status(status)
        self.target = target
        self.target_text = target_text
        self.anchor = anchor
        self.params = dict(params or {})

    @property
    def label(self):
        """ ``conj1_m3`` style name used for report files. """
        if not self.params:
            return self.id
        return '_'.join([self.id] + ['{}{}'.format(k, v) for k, v in
                                     sorted(self.params.items())])

    def target_value(self, ctx):
        return self.target(ctx)

    def check_depth(self, K):
        if K < self.min_terms:
            raise DomainException("{} needs at least {} terms, got {}"
                                  .format(self.id, self.min_terms, K))

    def check_index(self, k):
        if k < self.first_index:
            raise DomainException("{} terms start at k={}, got {}"
                                  .format(self.id, self.first_index, k))

    def to_dict(self):
        return {'id': self.id,
                'name': self.name,
                'status': self.status.value,
                'form': self.form.value,
                'target': self.target_text,
                'anchor': self.anchor,
                'params': dict(self.params)}

    def __repr__(self):
        return '<{} {}>'.format(self.__class__.__name__, self.label)


class SeriesIdentity(Identity):
    """ sum over k >= first_index of the terms rule(k) equals the target.
    A rule may yield several terms for one index; they are summed as one. """
    form = Form.series

    def __init__(self, rule, first_index=1, **kwargs):
        super(SeriesIdentity, self).__init__(**kwargs)
        self.rule = rule
        self.first_index = first_index

    def terms(self, k):
        """ The terms of index k as a tuple, whether the rule yields one Term
        or several. """
        terms = self.rule(k)
        if isinstance(terms, Term):
            return (terms,)
        return tuple(terms)

    def term_structure(self, k):
        self.check_index(k)
        return TermStructure(self.terms(k), ())

    def term_function(self, ctx):
        def term(k):
            return sum((eval_term(t, ctx) for t in self.terms(k)),
                       ctx.mp.zero)
        return term

    def evaluate(self, K, ctx):
        self.check_depth(K)
        series = sum_series(self.term_function(ctx), self.first_index,
                            self.first_index + K - 1, ctx)
        return Evaluation(series.partial_sum, series.terms_used,
                          series.tail_bound, _truncation(series))


class RatioIdentity(Identity):
    """ (sum of numerator(k)) / (sum of denominator(k)) equals the target. """
    form = Form.ratio

    def __init__(self, numerator, denominator, first_index=0, **kwargs):
        super(RatioIdentity, self).__init__(**kwargs)
        self.numerator = numerator
        self.denominator = denominator
        self.first_index = first_index

    def term_structure(self, k):
        self.check_index(k)
        return TermStructure((self.numerator(k),), (self.denominator(k),))

    def evaluate(self, K, ctx):
        """ Uses terms first_index..K; K is the last index, matching the
        ratio displays. """
        self.check_depth(K)
        ratio = ratio_evaluation(
            lambda k: eval_term(self.numerator(k), ctx),
            lambda k: eval_term(self.denominator(k), ctx),
            K, ctx, self.first_index)
        num, den = ratio.numerator, ratio.denominator
        relative = 0
        if num.partial_sum:
            relative += abs(num.next_term / num.partial_sum)
        relative += abs(den.next_term / den.partial_sum)
        return Evaluation(ratio.value, num.terms_used, None,
                          10 * abs(ratio.value) * relative)


class LimitIdentity(Identity):
    """ s_{n+1} s_{n-1} / s_n^2 tends to e; K plays the role of n. """
    form = Form.limit
    default_terms = 1000

    def term_structure(self, k):
        self.check_index(k)
        ratio = brothers_ratio(k)
        return TermStructure(
            (Term(1, IntPolynomial.constant(ratio.numerator), 0,
                  Fraction(1, ratio.denominator)),), ())

    def evaluate(self, K, ctx):
        self.check_depth(K)
        s_n = ctx.mpf(row_product(K))
        value = ctx.mpf(row_product(K + 1)) * ctx.mpf(row_product(K - 1))
        value /= s_n * s_n
        return Evaluation(value, K, None, None)

    def relative_error(self, value, ctx):
        target = self.target_value(ctx)
        return abs(value - target) / abs(target)


class DifferenceIdentity(Identity):
    """ Two infinite series claimed equal: LHS over k >= 1, RHS over k >= 0.
    At depth K the left side takes K terms and the right side
    ``rhs_factor * K``; the value is LHS - RHS against the target 0. """
    form = Form.difference
    first_index = 0

    def __init__(self, lhs, rhs, rhs_factor=2, **kwargs):
        super(DifferenceIdentity, self).__init__(**kwargs)
        if rhs_factor < 1:
            raise InvalidParameters("rhs_factor must be >= 1, got {}"
                                    .format(rhs_factor))
        self.lhs = lhs
        self.rhs = rhs
        self.rhs_factor = rhs_factor

    def term_structure(self, k):
        self.check_index(k)
        lhs = (self.lhs(k),) if k >= 1 else ()
        return TermStructure(lhs, (self.rhs(k),))

    def sides(self, K, ctx):
        self.check_depth(K)
        lhs = sum_series(lambda k: eval_term(self.lhs(k), ctx), 1, K, ctx)
        rhs = sum_series(lambda k: eval_term(self.rhs(k), ctx), 0,
                         self.rhs_factor * K - 1, ctx)
        return lhs, rhs

    def evaluate(self, K, ctx):
        lhs, rhs = self.sides(K, ctx)
        return Evaluation(lhs.partial_sum - rhs.partial_sum, K, None,
                          _truncation(lhs) + _truncation(rhs))


class CompositeIdentity(Identity):
    """ A series whose terms only exist after a rewrite of a whole truncated
    source series: ``groups(K)`` gives every MonomialGroup at source depth K,
    ``prefix(K)`` the ones deeper sources leave unchanged. Index 0 is the
    leading constant group. """
    form = Form.series
    first_index = 0

    def __init__(self, groups, prefix, **kwargs):
        super(CompositeIdentity, self).__init__(**kwargs)
        self.groups = groups
        self.prefix = prefix

    def settled_groups(self, k):
        """ A settled prefix holding at least k + 1 groups. """
        depth = 1
        while True:
            done = self.prefix(depth)
            if len(done) > k:
                return done
            depth += 1

    def term_structure(self, k):
        self.check_index(k)
        return TermStructure((self.settled_groups(k)[k].to_term(),), ())

    @staticmethod
    def _sum(groups, ctx):
        return sum((eval_term(g.to_term(), ctx) for g in groups), ctx.mp.zero)

    def evaluate(self, K, ctx):
        self.check_depth(K)
        groups = self.groups(K)
        value = self._sum(groups, ctx)
        truncation = 10 * abs(self._sum(self.groups(K + 1), ctx) - value)
        return Evaluation(value, len(groups), None, truncation)

