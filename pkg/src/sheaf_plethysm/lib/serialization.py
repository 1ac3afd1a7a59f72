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
"""JSON forms of matrices, partitions, trees and systems.

Matrices are lists of rows of rational strings such as ``"-3/2"``. A system
lists its fibers, maps and generator actions per point, and for every pair
of comparable indices the strata on which the map is defined.
"""
import json
from fractions import Fraction

from . import linalg
from .combinat import SetPartition, sim_alpha
from .graded import WeightedSpace
from .stratsys import StrictSystem, System, build_space
from .treecx import IndexTree


class SerializationError(ValueError):
    """A document does not describe the expected object."""


def matrix_to_list(mat):
    """Rows of rational strings."""
    return [[str(value) for value in row] for row in linalg.to_rows(mat)]


def matrix_from_list(rows, ncols):
    """Inverse of :func:`matrix_to_list`."""
    try:
        return linalg.matrix([[Fraction(value) for value in row] for row in rows], ncols)
    except (TypeError, ValueError, ZeroDivisionError) as exception:
        raise SerializationError("Bad matrix entry: {}".format(exception)) from exception


def partition_to_list(partition):
    """Blocks as element lists."""
    return [list(members) for members in partition.block_members()]


def partition_from_list(n, blocks):
    """Inverse of :func:`partition_to_list`."""
    return SetPartition(n, [tuple(block) for block in blocks])


def trees_to_list(trees):
    """Label families as arrays of arrays."""
    return [tree.to_list() for tree in trees]


def trees_from_list(n, document):
    """Inverse of :func:`trees_to_list`, validating every tree."""
    return [IndexTree(n, [tuple(label) for label in labels]) for labels in document]


def _domain(system, first, second):
    return [
        partition_to_list(alpha)
        for alpha in system.space.partitions
        if system.strict or sim_alpha(first, second, alpha)
    ]


def system_to_dict(system):
    """JSON-ready form of a system.

    :param system: System or strict system.
    :type system: :obj:`System`
    :rtype: dict
    """
    space = system.space
    document = {
        "n": system.n,
        "vars": system.nvars,
        "strict": system.strict,
        "labels": list(space.labels),
        "weights": {label: list(space.weights[label]) for label in space.labels},
        "fibers": [
            {
                "index": partition_to_list(index),
                "point": list(point),
                "space": fiber.to_dict(),
            }
            for (index, point), fiber in sorted(system.fibers.items(), key=repr)
        ],
        "maps": [
            {
                "source": partition_to_list(first),
                "target": partition_to_list(second),
                "point": list(point),
                "matrix": matrix_to_list(mat),
            }
            for (first, second, point), mat in sorted(system.maps.items(), key=repr)
        ],
        "domains": [
            {
                "source": partition_to_list(first),
                "target": partition_to_list(second),
                "strata": _domain(system, first, second),
            }
            for first, second in system.comparable_pairs()
        ],
        "actions": None,
    }
    if system.actions is not None:
        document["actions"] = [
            {
                "generator": index,
                "index": partition_to_list(partition),
                "point": list(point),
                "matrix": matrix_to_list(mat),
            }
            for (index, partition, point), mat in sorted(system.actions.items(), key=repr)
        ]
    return document


def system_from_dict(document):
    """Inverse of :func:`system_to_dict`.

    :raises SerializationError: If the document is malformed.
    """
    try:
        n = document["n"]
        nvars = document["vars"]
        space = build_space(
            n,
            document["labels"],
            {label: tuple(w) for label, w in document["weights"].items()},
            nvars,
        )
        fibers = {}
        for entry in document["fibers"]:
            key = (partition_from_list(n, entry["index"]), tuple(entry["point"]))
            fibers[key] = WeightedSpace.from_dict(nvars, entry["space"])

        def dim(partition, point):
            fiber = fibers.get((partition, point))
            return fiber.dim if fiber is not None else 0

        maps = {}
        for entry in document["maps"]:
            first = partition_from_list(n, entry["source"])
            second = partition_from_list(n, entry["target"])
            point = tuple(entry["point"])
            maps[first, second, point] = matrix_from_list(entry["matrix"], dim(first, point))
        actions = None
        if document.get("actions") is not None:
            actions = {}
            for entry in document["actions"]:
                partition = partition_from_list(n, entry["index"])
                point = tuple(entry["point"])
                actions[entry["generator"], partition, point] = matrix_from_list(
                    entry["matrix"], dim(partition, point)
                )
    except (KeyError, TypeError) as exception:
        raise SerializationError("Malformed system document: {!r}".format(exception)) from exception
    kind = StrictSystem if document.get("strict") else System
    return kind(space, fibers, maps, actions, nvars)


def dumps(document):
    """Deterministic JSON text."""
    return json.dumps(document, sort_keys=True, indent=2)
