#!/usr/bin/env python
# Copyright 2024 Sheaf Plethysm contributors.
#
# For a full list of individual contributors, please see the commit history.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# -*- coding: utf-8 -*-
"""Sheaf plethysm command line."""
import argparse
import json
import logging
import sys

from sheaf_plethysm.lib.combinat import adjacent_transpositions
from sheaf_plethysm.lib.qseries import (
    dump_series,
    format_series,
    load_series,
    plethystic_exp,
    plethystic_log,
)
from sheaf_plethysm.lib.run_parameters import ParameterError, RunParameters
from sheaf_plethysm.lib.runner import SUITES, SuiteRunner
from sheaf_plethysm.lib.serialization import trees_to_list
from sheaf_plethysm.lib.treecx import act_tree, dump_graph, enumerate_trees

LOGGER = logging.getLogger(__name__)

EXIT_PASSED = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
ORBIT_LIMIT = 7


class UsageError(Exception):
    """Bad command line, raised instead of argparse exiting."""


class ArgumentParser(argparse.ArgumentParser):
    """Argument parser that raises on errors."""

    def error(self, message):
        """Raise instead of printing usage and exiting."""
        raise UsageError(message)


def _common(parser, *names):
    flags = {
        "n": dict(type=int, help="Size n."),
        "n_max": dict(type=int, help="Largest n of the main pipeline."),
        "order": dict(type=int, help="Truncation order N."),
        "vars": dict(type=int, help="Number of torus variables."),
        "seed": dict(type=int, help="Seed of all random data."),
        "points": dict(type=int, help="Number of points of X."),
        "dims": dict(type=int, help="Largest fiber dimension of random data."),
        "format": dict(help="Output format: text, json or graph."),
        "workers": dict(type=int, help="Number of worker threads."),
        "cases": dict(type=int, help="Number of random cases."),
    }
    for name in names:
        parser.add_argument("--" + name.replace("_", "-"), dest=name, **flags[name])


def parser():
    """Command line parser."""
    root = ArgumentParser(prog="sheaf-plethysm", description=__doc__)
    commands = root.add_subparsers(dest="command")
    for name in ("exp", "log"):
        command = commands.add_parser(name, help="Plethystic {} of a series file.".format(name))
        command.add_argument("series", help="Series file, '-' for stdin.")
        _common(command, "order", "vars", "format")
    trees = commands.add_parser("trees", help="Index trees of order n.")
    _common(trees, "n", "format")
    trees.add_argument("--counts", action="store_true", help="Tree counts by k.")
    trees.add_argument("--orbits", action="store_true", help="One tree per S_n-orbit.")
    verify = commands.add_parser("verify", help="Run a verification suite.")
    verify.add_argument("suite", choices=SUITES + ("all",))
    verify.add_argument("--output", help="Also write the JSON report to this path.")
    _common(
        verify,
        "n",
        "n_max",
        "order",
        "vars",
        "seed",
        "points",
        "dims",
        "format",
        "workers",
        "cases",
    )
    return root


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as series_file:
            return series_file.read()
    except OSError as exception:
        raise ParameterError(
            "Cannot read {}: {}".format(path, exception), "series", path
        ) from exception


def cmd_series(args, out):
    """exp and log: print the transformed series."""
    params = RunParameters(args)
    order = 6 if params.order is None else params.order
    if params.output_format == "graph":
        raise ParameterError("Series have no graph format", "format", "graph")
    series = load_series(_read(args.series), order, params.variables)
    result = plethystic_exp(series) if args.command == "exp" else plethystic_log(series)
    if params.output_format == "json":
        out.write(json.dumps(dump_series(result), sort_keys=True) + "\n")
    else:
        out.write(format_series(result) + "\n")
    return EXIT_PASSED


def orbit_representatives(n):
    """Smallest tree of every S_n-orbit, joined along adjacent transpositions."""
    trees = enumerate_trees(n)
    parent = {tree: tree for tree in trees}

    def find(tree):
        while parent[tree] != tree:
            parent[tree] = parent[parent[tree]]
            tree = parent[tree]
        return tree

    for sigma in adjacent_transpositions(n):
        for tree in trees:
            first, second = find(tree), find(act_tree(sigma, tree))
            if first != second:
                parent[max(first, second)] = min(first, second)
    return sorted({find(tree) for tree in trees})


def cmd_trees(args, out):
    """trees: counts, orbit representatives or all trees of order n."""
    params = RunParameters(args)
    n = params.require_n(1, ORBIT_LIMIT if args.orbits else 9)
    if args.counts:
        counts = [len(enumerate_trees(n, k)) for k in range(n)]
        out.write(json.dumps(counts, separators=(",", ":")) + "\n")
        return EXIT_PASSED
    trees = orbit_representatives(n) if args.orbits else enumerate_trees(n)
    if params.output_format == "graph":
        out.write(dump_graph(trees) + "\n")
    elif params.output_format == "json":
        out.write(json.dumps({"n": n, "trees": trees_to_list(trees)}, sort_keys=True) + "\n")
    else:
        for tree in trees:
            out.write(json.dumps(tree.to_list(), separators=(",", ":")) + "\n")
    return EXIT_PASSED


def cmd_verify(args, out):
    """verify: run a suite, print its report and map the verdict to an exit code."""
    params = RunParameters(args)
    if params.output_format == "graph":
        raise ParameterError("Reports have no graph format", "format", "graph")
    handler = SuiteRunner(params).run(args.suite)
    document = handler.dumps(params.to_dict())
    if args.output:
        with open(args.output, "w", encoding="utf-8") as report_file:
            report_file.write(document + "\n")
    out.write((document if params.output_format == "json" else handler.text()) + "\n")
    return EXIT_FAILED if any(True for _ in handler.failures) else EXIT_PASSED


COMMANDS = {"exp": cmd_series, "log": cmd_series, "trees": cmd_trees, "verify": cmd_verify}


def main(argv=None, out=None):
    """Entry point allowing external calls.

    :return: Exit code, 0 passed, 1 failed, 2 bad input.
    :rtype: int
    """
    out = out or sys.stdout
    try:
        args = parser().parse_args(argv)
        if args.command is None:
            raise UsageError("A command is required: {}".format(", ".join(COMMANDS)))
        return COMMANDS[args.command](args, out)
    except (UsageError, ValueError) as exception:
        LOGGER.error("%s", exception)
        sys.stderr.write("error: {}\n".format(exception))
        return EXIT_USAGE
    except Exception:
        LOGGER.exception("Unexpected failure")
        raise


def run():
    """Entry point for console_scripts."""
    sys.exit(main())


if __name__ == "__main__":
    run()
