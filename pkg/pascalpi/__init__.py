import logging
import os
import sys

import yaml


root = os.path.abspath(os.path.dirname(__file__) + '/../')
logger = logging.getLogger(__name__)

DEFAULTS_PATH = os.path.join(os.path.dirname(__file__), 'defaults.yml')
OUTPUT_DIR_ENV = 'PASCALPI_OUTPUT_DIR'


class ConfigException(Exception):
    pass


def load_config(config=None, environ=None):
    """ Builds the run configuration: packaged defaults, then a user yaml file
    (explicit path, else ``config.yml`` in the working directory or the
    project root when present), then the environment. """
    environ = os.environ if environ is None else environ
    with open(DEFAULTS_PATH) as f:
        config_vars = yaml.safe_load(f)

    if config is None:
        for candidate in (os.path.join(os.getcwd(), 'config.yml'),
                          os.path.join(root, 'config.yml')):
            if os.path.isfile(candidate):
                config = candidate
                break

    if config is not None:
        try:
            with open(config) as f:
                user_vars = yaml.safe_load(f) or {}
        except (IOError, OSError) as e:
            raise ConfigException("Unable to read config {}: {}"
                                  .format(config, e))
        except yaml.YAMLError as e:
            raise ConfigException("Malformed config {}: {}".format(config, e))
        if not isinstance(user_vars, dict):
            raise ConfigException("Config {} must be a mapping".format(config))
        unknown = set(user_vars) - set(config_vars)
        if unknown:
            raise ConfigException("Unknown config keys in {}: {}"
                                  .format(config, ', '.join(sorted(unknown))))
        config_vars.update(user_vars)

    if environ.get(OUTPUT_DIR_ENV):
        config_vars['output_dir'] = environ[OUTPUT_DIR_ENV]
    return config_vars


def configure_logging(level='WARN', log_file=None):
    """ Attaches the console handler (and optionally a file handler) to the
    package logger. Safe to call repeatedly. """
    pkg_logger = logging.getLogger(__name__)
    for hdlr in list(pkg_logger.handlers):
        pkg_logger.removeHandler(hdlr)
        hdlr.close()

    ch = logging.StreamHandler(sys.stderr)
    ch.setFormatter(logging.Formatter('[%(levelname)s] %(message)s'))
    pkg_logger.addHandler(ch)

    if log_file:
        hdlr = logging.FileHandler(log_file)
        hdlr.setFormatter(
            logging.Formatter('%(asctime)s %(levelname)s %(message)s'))
        pkg_logger.addHandler(hdlr)

    pkg_logger.setLevel(getattr(logging, level))
    pkg_logger.propagate = False
    return pkg_logger
