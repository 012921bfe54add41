""" Runs identities at a requested precision and depth and turns the
numbers into verdicts. """
import enum
import logging
from collections import Counter, namedtuple

from dataclasses import asdict, dataclass, field

from .models import Form, InvalidParameters, Status
from .numerics import (DenominatorVanishes, PrecisionContext, digits_matched,
                       format_real, stable, target_scale)
from .registry import get_identity, list_identities, scan_parameters
from .utils import fan_out


logger = logging.getLogger(__name__)

DEFAULT_TERMS = 40
REPORT_KEYS = ('id', 'params', 'status', 'digits', 'terms', 'value', 'target',
               'abs_error', 'digits_matched', 'tail_bound', 'verdict',
               'anchor', 'diagnostic')


class Verdict(enum.Enum):
    passed = 'pass'
    failed = 'fail'
    inconclusive = 'inconclusive'


@dataclass(frozen=True)
class VerificationReport:
    """ One verification. Numbers are kept as decimal strings rendered at
    the requested digits so a report reads and round-trips identically
    everywhere. """
    id: str
    params: dict
    status: str
    digits: int
    terms: int
    value: str
    target: str
    abs_error: str
    digits_matched: int
    tail_bound: str
    verdict: str
    anchor: str
    diagnostic: str = None
    threshold: int = field(default=None, compare=False)

    @property
    def label(self):
        if not self.params:
            return self.id
        return '_'.join([self.id] + ['{}{}'.format(k, v) for k, v in
                                     sorted(self.params.items())])

    @property
    def succeeded(self):
        """ True for a pass, and for a negative control that fails as
        asserted. """
        if self.status == Status.negative_control.value:
            return self.verdict == Verdict.failed.value
        return self.verdict == Verdict.passed.value

    def to_dict(self):
        data = asdict(self)
        return {key: data[key] for key in REPORT_KEYS}

    @classmethod
    def from_dict(cls, data):
        missing = set(REPORT_KEYS) - set(data) - {'diagnostic'}
        if missing:
            raise ValueError("Report is missing {}"
                             .format(', '.join(sorted(missing))))
        return cls(**{key: data.get(key) for key in REPORT_KEYS})


ConvergenceRow = namedtuple('ConvergenceRow', ['terms', 'digits_matched',
                                               'abs_error'])
ConvergenceTable = namedtuple('ConvergenceTable', ['id', 'params', 'digits',
                                                   'rows'])
ScanResult = namedtuple('ScanResult', ['reports', 'summary'])


def default_threshold(status, digits):
    status = Status(status)
    if status is Status.conjecture:
        return max(1, min(15, digits - 20))
    return max(1, min(30, digits - 20))


def resolve_terms(identity, terms=None, fallback=DEFAULT_TERMS,
                  limit_terms=None):
    """ Explicit depth first. Otherwise limit forms run at ``limit_terms``
    (else their own default, n = 1000) and everything else at
    ``fallback``. """
    if terms is not None:
        return terms
    if identity.form is Form.limit:
        return limit_terms or identity.default_terms
    return fallback


def matched_digits(value, target, ctx):
    """ digits_matched measured against the magnitude of the target, so a
    target like 1/17! is matched digit for digit rather than absolutely. """
    return digits_matched(value, target, ctx, target_scale(target, ctx))


def judge(identity, evaluation, matched, threshold, ctx):
    """ Verdict for a settled evaluation. Returns (verdict, diagnostic). """
    if identity.form is Form.limit:
        n = evaluation.terms_used
        relative = identity.relative_error(evaluation.value, ctx)
        if relative <= ctx.mpf(1) / n:
            return Verdict.passed, None
        return Verdict.failed, "relative error above 1/{}".format(n)

    if identity.status is Status.negative_control:
        if matched <= 2:
            return Verdict.failed, "mismatch in the leading digits"
        if matched >= threshold:
            return Verdict.passed, "negative control matched its target"
        return Verdict.inconclusive, None

    if matched >= threshold:
        return Verdict.passed, None
    truncation = evaluation.truncation
    window = ctx.mp.mpf(10) ** (-threshold) * \
        target_scale(identity.target_value(ctx), ctx)
    if truncation is not None and truncation >= window:
        return Verdict.inconclusive, "truncation error dominates at K={}" \
            .format(evaluation.terms_used)
    return Verdict.failed, None


def _report(identity, K, ctx, threshold, value=None, target=None,
            abs_error=None, matched=0, tail_bound=None,
            verdict=Verdict.inconclusive, diagnostic=None):
    def fmt(number, digits=None):
        if number is None:
            return None
        return format_real(number, ctx, digits)
    return VerificationReport(
        id=identity.id, params=dict(identity.params),
        status=identity.status.value, digits=ctx.digits, terms=K,
        value=fmt(value), target=fmt(target), abs_error=fmt(abs_error, 6),
        digits_matched=matched, tail_bound=fmt(tail_bound, 6),
        verdict=verdict.value, anchor=identity.anchor, diagnostic=diagnostic,
        threshold=threshold)


def verify(id, params=None, digits=40, K=None, threshold=None, guard=15,
           fallback_terms=DEFAULT_TERMS, limit_terms=None):
    identity = get_identity(id, params)
    K = resolve_terms(identity, K, fallback_terms, limit_terms)
    identity.check_depth(K)
    ctx = PrecisionContext(digits, guard)
    if threshold is None:
        threshold = default_threshold(identity.status, digits)

    try:
        outcome = stable(lambda c: identity.evaluate(K, c), ctx,
                         key=lambda ev: ev.value)
    except DenominatorVanishes as e:
        logger.warning("{}: {}".format(identity.label, e))
        return _report(identity, K, ctx, threshold,
                       target=identity.target_value(ctx), diagnostic=str(e))

    evaluation, ctx = outcome.result, outcome.ctx
    target = identity.target_value(ctx)
    matched = matched_digits(evaluation.value, target, ctx)
    if outcome.settled:
        verdict, diagnostic = judge(identity, evaluation, matched, threshold,
                                    ctx)
    else:
        verdict = Verdict.inconclusive
        diagnostic = "did not settle after widening the guard to {}" \
            .format(ctx.guard)

    report = _report(identity, K, ctx, threshold, value=evaluation.value,
                     target=target, abs_error=abs(evaluation.value - target),
                     matched=matched, tail_bound=evaluation.tail_bound,
                     verdict=verdict, diagnostic=diagnostic)
    logger.info("{} [{}] K={} digits={} matched={} -> {}"
                .format(identity.label, report.status, K, digits, matched,
                        report.verdict))
    return report


def _verify_job(job):
    id, params, options = job
    return verify(id, params, **options)


def summarize(reports):
    counts = Counter(r.verdict for r in reports)
    return {'total': len(reports),
            'pass': counts[Verdict.passed.value],
            'fail': counts[Verdict.failed.value],
            'inconclusive': counts[Verdict.inconclusive.value],
            'succeeded': sum(1 for r in reports if r.succeeded)}


def scan(id, start=None, stop=None, params=None, jobs=1, **options):
    """ One report per value of the family's scan parameter in start..stop
    (inclusive), in parameter order whatever the scheduling. ``options``
    go to ``verify``. """
    jobs_list = []
    for scanned in scan_parameters(id, start, stop):
        merged = dict(params or {})
        merged.update(scanned)
        jobs_list.append((id, merged, options))
    reports = fan_out(_verify_job, jobs_list, jobs)
    return ScanResult(reports, summarize(reports))


def verify_all(jobs=1, **options):
    """ Every catalog entry at its default parameters, in catalog order. """
    jobs_list = [(identity.id, None, options)
                 for identity in list_identities()]
    reports = fan_out(_verify_job, jobs_list, jobs)
    return ScanResult(reports, summarize(reports))


def convergence_table(id, params=None, digits=40, K_list=(), guard=15):
    identity = get_identity(id, params)
    K_list = list(K_list)
    if not K_list:
        raise InvalidParameters("Convergence table needs at least one depth")
    if any(b <= a for a, b in zip(K_list, K_list[1:])):
        raise InvalidParameters("Depths must be strictly increasing: {}"
                                .format(K_list))
    ctx = PrecisionContext(digits, guard)
    target = identity.target_value(ctx)
    rows = []
    for K in K_list:
        identity.check_depth(K)
        value = identity.evaluate(K, ctx).value
        error = abs(value - target)
        rows.append(ConvergenceRow(K, matched_digits(value, target, ctx),
                                   format_real(error, ctx, 6)))
        logger.debug("{} K={} matched {}".format(identity.label, K,
                                                 rows[-1].digits_matched))
    return ConvergenceTable(identity.id, dict(identity.params), digits,
                            tuple(rows))
