# Copyright 2024 jacobi-tools authors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html)

import logging
import os
import sys
from contextlib import contextmanager
from functools import lru_cache

import yaml
from invoke import exceptions
from ruamel.yaml import YAML
from ruamel.yaml.comments import CommentedMap

from ..exceptions import JacobiToolsError
from ..jacobiexp import dump_json, load_json, write_csv

CONFIG_FILE_NAME = ".jacobi-tools.yml"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# exit codes
EXIT_NEGATIVE = 1
EXIT_USAGE = 2

DEFAULTS = {
    "bound": 500,
    "eigen_primes": [5, 7, 11, 13],
    "threads": 0,
    "checkpoint_every": 10000,
    "log_level": "WARNING",
}
COMMENTS = {
    "bound": "default |D| bound for eisenstein and scan",
    "eigen_primes": "primes used to compute the exceptional set",
    "threads": "scan worker processes, 0 = one per CPU",
    "checkpoint_every": "discriminants scanned between two checkpoint writes",
    "log_level": "DEBUG, INFO, WARNING or ERROR",
}


def exit_msg(message, code=EXIT_NEGATIVE):
    raise exceptions.Exit(message, code=code)


def root_path():
    """Directory holding the configuration file, searched upwards from cwd."""
    current_dir = os.getcwd()
    max_depth = 5
    while max_depth > 0:
        if CONFIG_FILE_NAME in os.listdir(current_dir):
            return current_dir
        parent_dir = os.path.dirname(current_dir)
        if current_dir == parent_dir:
            break
        current_dir = parent_dir
        max_depth -= 1
    return None


def config_path():
    root = root_path()
    return os.path.join(root, CONFIG_FILE_NAME) if root else None


def yaml_load(stream):
    return yaml.safe_load(stream)


@lru_cache(maxsize=None)
def config():
    """Effective configuration: file values over defaults; sets up logging once."""
    settings = dict(DEFAULTS)
    path = config_path()
    if path:
        try:
            with open(path) as f:
                data = yaml_load(f.read()) or {}
        except (OSError, yaml.YAMLError) as exc:
            exit_msg("Cannot read {}: {}".format(path, exc), EXIT_USAGE)
        if not isinstance(data, dict):
            exit_msg("{} must hold a mapping".format(path), EXIT_USAGE)
        unknown = sorted(set(data) - set(DEFAULTS))
        if unknown:
            exit_msg(
                "Unknown keys in {}: {}".format(path, ", ".join(unknown)), EXIT_USAGE
            )
        settings.update(data)
    level = logging.getLevelName(str(settings["log_level"]).upper())
    if not isinstance(level, int):
        exit_msg("Unknown log level {!r}".format(settings["log_level"]), EXIT_USAGE)
    logging.basicConfig(format=LOG_FORMAT, level=level)
    return settings


def update_yml_file(path, new_data):
    """Add the missing keys of ``new_data`` to a YAML file, keeping its content."""
    yaml = YAML()
    # preservation of indentation
    yaml.indent(mapping=2, sequence=4, offset=2)

    data = None
    if os.path.exists(path):
        with open(path) as f:
            data = yaml.load(f)
    if data is None:
        data = CommentedMap()
    for key, value in new_data.items():
        if key not in data:
            data[key] = value
            if key in COMMENTS:
                data.yaml_add_eol_comment(COMMENTS[key], key)

    with open(path, "w") as f:
        yaml.dump(data, f)
    return data


def dump_yml(data, stream=None):
    yaml = YAML()
    yaml.indent(mapping=2, sequence=4, offset=2)
    yaml.dump(data, stream or sys.stdout)


@contextmanager
def parse_errors():
    """Report command line parse errors with the usage exit code."""
    try:
        yield
    except exceptions.ParseError as exc:
        exit_msg(str(exc), EXIT_USAGE)


@contextmanager
def usage_errors():
    """Turn library and I/O errors into exit code 2."""
    try:
        yield
    except (JacobiToolsError, OSError, ValueError) as exc:
        exit_msg("Error: {}".format(exc), EXIT_USAGE)


def as_int(value, name):
    try:
        return int(value)
    except (TypeError, ValueError):
        exit_msg("--{} expects an integer, got {!r}".format(name, value), EXIT_USAGE)


def make_dir(path_dir):
    if not path_dir:
        return
    try:
        os.makedirs(path_dir)
    except OSError:
        if not os.path.isdir(path_dir):
            msg = ("Directory does not exist and could not be created: {}").format(
                path_dir
            )
            exit_msg(msg, EXIT_USAGE)


@contextmanager
def output_stream(out):
    """``out`` opened for writing, or stdout when no path is given."""
    if not out:
        yield sys.stdout
        return
    make_dir(os.path.dirname(out))
    with open(out, "w") as f:
        yield f


def read_expansion(path):
    with open(path) as f:
        return load_json(f)


def write_expansion(phi, out, format="json"):
    if format not in ("json", "csv"):
        exit_msg("--format must be json or csv, got {!r}".format(format), EXIT_USAGE)
    with output_stream(out) as stream:
        if format == "csv":
            write_csv(phi, stream)
        else:
            dump_json(phi, stream)
