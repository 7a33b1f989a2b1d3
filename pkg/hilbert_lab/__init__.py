"""hilbert-lab: a numerical lab for Hilbert geometries of planar convex domains."""
from __future__ import print_function

import argparse
import contextlib
import io
import json
import sys
from importlib import import_module

import yaml
from ansible.module_utils import basic
from ansible.module_utils.common.text.converters import to_bytes

__version__ = "0.1.0"

SUBCOMMANDS = ("check", "dist", "tensor", "sweep", "normalize", "verify")

RC_OK = 0
RC_INVALID = 2

message = """
usage: hilbert-lab <subcommand> [options]

subcommands:
    check      validate a domain config and report its boundary geometry
    dist       Hilbert distance between two interior points
    tensor     Funk jets and the fundamental tensor at (x, y)
    sweep      curvatures of metric circles over a radius grid (CSV)
    normalize  projective normalization at the distinguished boundary point
    verify     run the verification suite and write the report

Each subcommand runs the module hilbert_lab/modules/hilbert_<subcommand>.py.
Run "hilbert-lab <subcommand> --help" for its options.
"""


def _flag(name):
    return "--" + name.replace("_", "-")


def module_parser(subcommand, module):
    """Command line of a module, read from its DOCUMENTATION options."""
    doc = yaml.safe_load(module.DOCUMENTATION)
    parser = argparse.ArgumentParser(
        prog="hilbert-lab " + subcommand, description=doc["short_description"]
    )
    for name, option in doc["options"].items():
        flags = [_flag(name)] + [_flag(alias) for alias in option.get("aliases", [])]
        description = option["description"]
        if isinstance(description, list):
            description = " ".join(description)
        parser.add_argument(*flags, dest=name, metavar=name.upper(), help=description)
    parser.add_argument(
        "--verbosity", type=int, default=0, choices=[0, 1, 2],
        help="log level on stderr, 0 WARNING, 1 INFO, 2 DEBUG",
    )
    parser.add_argument("--check-mode", action="store_true", help="run in check mode")
    parser.add_argument(
        "--format", default="json", choices=["json", "yaml"], help="format of the result"
    )
    return parser


def run_module(subcommand, args, verbosity=0, check_mode=False):
    """Run ``hilbert_<subcommand>`` on ``args``; return its exit code and result."""
    module = import_module("hilbert_lab.modules.hilbert_" + subcommand)
    args = dict(args, _ansible_verbosity=verbosity, _ansible_check_mode=check_mode)
    basic._ANSIBLE_ARGS = to_bytes(json.dumps({"ANSIBLE_MODULE_ARGS": args}))
    stdout = io.StringIO()
    try:
        with contextlib.redirect_stdout(stdout):
            module.main()
    except SystemExit:
        pass
    finally:
        basic._ANSIBLE_ARGS = None
    result = json.loads(stdout.getvalue())
    rc = result.get("rc", RC_INVALID if result.get("failed") else RC_OK)
    return rc, result


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv or argv[0] not in SUBCOMMANDS:
        print(message.strip(), file=sys.stderr)
        return RC_OK if argv and argv[0] in ("-h", "--help") else RC_INVALID

    subcommand = argv[0]
    module = import_module("hilbert_lab.modules.hilbert_" + subcommand)
    try:
        params = vars(module_parser(subcommand, module).parse_args(argv[1:]))
    except SystemExit as e:
        return e.code

    verbosity = params.pop("verbosity")
    check_mode = params.pop("check_mode")
    output = params.pop("format")
    args = dict((k, v) for k, v in params.items() if v is not None)
    rc, result = run_module(subcommand, args, verbosity, check_mode)

    if output == "yaml":
        sys.stdout.write(yaml.safe_dump(result, default_flow_style=False))
    else:
        sys.stdout.write(json.dumps(result, sort_keys=True) + "\n")
    return rc
