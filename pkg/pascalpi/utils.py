import logging
import re
from concurrent.futures import ProcessPoolExecutor


logger = logging.getLogger(__name__)

RANGE_RE = re.compile(r'^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$')

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class CommandException(Exception):
    """ A command line problem; carries the exit code it maps to. """

    def __init__(self, message, code=EXIT_USAGE):
        super(CommandException, self).__init__(message)
        self.code = code


def parse_range(text):
    """ Inclusive ``a..b``; a single integer means ``a..a``. """
    match = RANGE_RE.match(text)
    if match:
        start, stop = int(match.group(1)), int(match.group(2))
    else:
        try:
            start = stop = int(text)
        except ValueError:
            raise CommandException("Invalid range {!r}, expected a..b"
                                   .format(text))
    if stop < start:
        raise CommandException("Empty range {}".format(text))
    return start, stop


def parse_int_list(text):
    """ ``5,10,15`` -> [5, 10, 15] """
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise CommandException("Invalid list of integers {!r}".format(text))


def fan_out(fn, items, jobs=1):
    """ Maps ``fn`` over ``items`` on ``jobs`` worker processes, keeping the
    input order in the output. ``fn`` must be a module level function. """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    logger.debug("fanning {} jobs out over {} workers"
                 .format(len(items), jobs))
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(fn, items))
