""" Text, JSON, Markdown and CSV renderings of reports, tables and the
catalog, plus persistence of reports to an output directory. """
import csv
import io
import json
import logging
import os

from .verifier import REPORT_KEYS, VerificationReport


logger = logging.getLogger(__name__)

FORMATS = ('text', 'json', 'markdown', 'csv')
EXTENSIONS = {'json': 'json', 'markdown': 'md', 'csv': 'csv', 'text': 'json'}
SUMMARY_FILE = 'summary.md'


def params_text(params):
    if not params:
        return '-'
    return ';'.join('{}={}'.format(k, v) for k, v in sorted(params.items()))


def _cell(value):
    if value is None:
        return ''
    if isinstance(value, dict):
        return params_text(value)
    return str(value)


def _markdown(headers, rows):
    lines = ['| ' + ' | '.join(headers) + ' |',
             '|' + '|'.join('---' for _ in headers) + '|']
    for row in rows:
        lines.append('| ' + ' | '.join(_cell(v).replace('|', '\\|')
                                        for v in row) + ' |')
    return '\n'.join(lines) + '\n'


def _csv(headers, rows):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(headers)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return out.getvalue()


def _text_table(headers, rows):
    cells = [[_cell(v) for v in row] for row in rows]
    widths = [max([len(h)] + [len(r[i]) for r in cells])
              for i, h in enumerate(headers)]
    lines = ['  '.join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for row in cells:
        lines.append('  '.join(c.ljust(w)
                               for c, w in zip(row, widths)).rstrip())
    return '\n'.join(lines) + '\n'


def render_rows(headers, rows, fmt):
    if fmt == 'markdown':
        return _markdown(headers, rows)
    if fmt == 'csv':
        return _csv(headers, rows)
    if fmt == 'json':
        return json.dumps([dict(zip(headers, row)) for row in rows],
                          indent=2) + '\n'
    return _text_table(headers, rows)


# Reports
# =============================================================================
def render_report(report, fmt='text'):
    data = report.to_dict()
    if fmt == 'json':
        return json.dumps(data, indent=2) + '\n'
    if fmt in ('markdown', 'csv'):
        return render_rows(REPORT_KEYS, [[data[k] for k in REPORT_KEYS]],
                           fmt)
    width = max(len(k) for k in REPORT_KEYS)
    return ''.join('{}  {}\n'.format(k.ljust(width), _cell(data[k]))
                   for k in REPORT_KEYS if data[k] is not None)


def load_report(text):
    return VerificationReport.from_dict(json.loads(text))


SUMMARY_KEYS = ('id', 'params', 'status', 'digits', 'terms', 'digits_matched',
                'verdict', 'anchor')


def render_reports(reports, fmt='text', summary=None):
    if fmt == 'json':
        doc = {'reports': [r.to_dict() for r in reports]}
        if summary is not None:
            doc['summary'] = summary
        return json.dumps(doc, indent=2) + '\n'
    if fmt == 'csv':
        return render_rows(REPORT_KEYS, [[r.to_dict()[k] for k in REPORT_KEYS]
                                         for r in reports], fmt)
    out = render_rows(SUMMARY_KEYS, [[r.to_dict()[k] for k in SUMMARY_KEYS]
                                     for r in reports], fmt)
    if summary is not None:
        line = '{succeeded}/{total} as expected ({pass} pass, {fail} fail, ' \
               '{inconclusive} inconclusive)'.format(**summary)
        out += '\n' + line + '\n'
    return out


def render_table(table, fmt='text'):
    rows = [[r.terms, r.digits_matched, r.abs_error] for r in table.rows]
    headers = ('K', 'digits_matched', 'abs_error')
    if fmt == 'json':
        return json.dumps({'id': table.id, 'params': table.params,
                           'digits': table.digits,
                           'rows': [dict(zip(headers, row)) for row in rows]},
                          indent=2) + '\n'
    return render_rows(headers, rows, fmt)


def render_catalog(identities, fmt='text'):
    headers = ('id', 'status', 'form', 'target', 'params', 'anchor')
    if fmt == 'json':
        return json.dumps([i.to_dict() for i in identities], indent=2) + '\n'
    return render_rows(headers, [[i.id, i.status.value, i.form.value,
                                  i.target_text, i.params, i.anchor]
                                 for i in identities], fmt)


# Persistence
# =============================================================================
def report_path(report, output_dir, fmt):
    return os.path.join(output_dir, '{}.{}'.format(report.label,
                                                   EXTENSIONS[fmt]))


def persist_report(report, output_dir, fmt='json'):
    """ Writes the report as UTF-8; text output is persisted as JSON. """
    if fmt == 'text':
        fmt = 'json'
    os.makedirs(output_dir, exist_ok=True)
    path = report_path(report, output_dir, fmt)
    with io.open(path, 'w', encoding='utf-8') as f:
        f.write(render_report(report, fmt))
    logger.info("wrote {}".format(path))
    return path


def persist_summary(reports, output_dir, summary=None):
    os.makedirs(output_dir, exist_ok=True)
    path = os.path.join(output_dir, SUMMARY_FILE)
    with io.open(path, 'w', encoding='utf-8') as f:
        f.write(render_reports(reports, 'markdown', summary))
    logger.info("wrote {}".format(path))
    return path
