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
"""Pytest configuration."""
import random

import pytest

from sheaf_plethysm.lib.graded import WeightedSpace
from sheaf_plethysm.lib.stratsys import LocalDatum


@pytest.fixture
def rng():
    """Seeded random generator."""
    return random.Random(20240101)


@pytest.fixture
def structure_datum():
    """Two points of weights t1 and t1^-1, every V_{p,m} the trivial line."""
    return LocalDatum.structure_sheaf(["a", "b"], {"a": (1,), "b": (-1,)}, 1, 4)


@pytest.fixture
def mixed_datum():
    """Two points with an odd line at m = 1 and a plane at m = 2."""
    spaces = {
        ("a", 1): WeightedSpace(1, [((0,), 1)]),
        ("a", 2): WeightedSpace(1, [((1,), 0), ((0,), 0)]),
        ("b", 1): WeightedSpace(1, [((0,), 0)]),
        ("b", 3): WeightedSpace(1, [((2,), 1)]),
    }
    return LocalDatum(["a", "b"], {"a": (1,), "b": (0,)}, spaces, 1)
