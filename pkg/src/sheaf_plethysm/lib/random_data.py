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
"""Seeded random inputs for the verification suites.

Every generator takes a :obj:`random.Random` and draws from it in a fixed
order, so a seed determines the data completely.
"""
import random

from .coeffring import LaurentPoly, RatFun
from .equirep import PresentedClassSeries, permutation_sheaf, sign_sheaf, trivial_sheaf
from .graded import WeightedSpace
from .qseries import QSeries
from .stratsys import LocalDatum, system_from_local_datum

WEIGHT_BOUND = 2


def make_rng(seed, stream=0):
    """Generator for one independent stream of a seeded run."""
    return random.Random(seed * 1000003 + stream)


def random_weight(rng, nvars, bound=WEIGHT_BOUND):
    """Weight vector with entries in [-bound, bound]."""
    return tuple(rng.randint(-bound, bound) for _ in range(nvars))


def random_space(rng, nvars, dim_max, odd=True):
    """Weighted space of dimension at most dim_max."""
    return WeightedSpace(
        nvars,
        [
            (random_weight(rng, nvars), rng.randint(0, 1) if odd else 0)
            for _ in range(rng.randint(0, dim_max))
        ],
    )


def random_local_datum(rng, points, dims, nvars, order):
    """Local datum on ``points`` points with V_{p,m} of dimension <= dims.

    :param rng: Random generator.
    :type rng: :obj:`random.Random`
    :param points: |X|.
    :type points: int
    :param dims: Largest dimension of a V_{p,m}.
    :type dims: int
    :param nvars: Number of torus variables.
    :type nvars: int
    :param order: Largest m.
    :type order: int
    :rtype: :obj:`LocalDatum`
    """
    labels = ["p{}".format(index) for index in range(1, points + 1)]
    weights = {label: random_weight(rng, nvars) for label in labels}
    spaces = {
        (label, m): random_space(rng, nvars, dims)
        for label in labels
        for m in range(1, order + 1)
    }
    return LocalDatum(labels, weights, spaces, nvars)


def random_system(rng, n, points, dims, nvars):
    """Equivariant system on X^n from a random local datum."""
    return system_from_local_datum(random_local_datum(rng, points, dims, nvars, n), n)


def random_point_sheaf(rng, n, nvars, dim_max):
    """Sum of trivial, sign and permutation representations of S_n on a point."""
    sheaf = trivial_sheaf(WeightedSpace.zero(nvars), n)
    for _ in range(rng.randint(0, dim_max)):
        kind = rng.choice(("trivial", "sign", "permutation"))
        weight = random_weight(rng, nvars)
        parity = rng.randint(0, 1)
        if kind == "trivial":
            piece = trivial_sheaf(WeightedSpace.line(nvars, weight, parity), n)
        elif kind == "sign":
            piece = sign_sheaf(n, nvars, weight, parity)
        else:
            piece = permutation_sheaf(n, nvars, weight, parity)
        sheaf = sheaf.direct_sum(piece)
    return sheaf


def random_point_sheaves(rng, order, nvars, dim_max):
    """Mapping m -> random sheaf over S_m on a point, for m = 1..order."""
    return {m: random_point_sheaf(rng, m, nvars, dim_max) for m in range(1, order + 1)}


def random_presented(rng, order, nvars, dim_max):
    """Classes [F_m]/[D] with D a sum of even lines, so every trace is a unit."""
    denominator = WeightedSpace(
        nvars, [(random_weight(rng, nvars), 0) for _ in range(rng.randint(1, 2))]
    )
    return PresentedClassSeries(
        order, denominator, random_point_sheaves(rng, order, nvars, dim_max)
    )


def random_polynomial(rng, nvars, terms=3, bound=3):
    """Laurent polynomial with at most ``terms`` monomials."""
    result = LaurentPoly.zero(nvars)
    for _ in range(terms):
        coefficient = rng.randint(-bound, bound)
        if coefficient:
            result = result + LaurentPoly.monomial(random_weight(rng, nvars), nvars, coefficient)
    return result


def random_series(rng, order, nvars, constant=1):
    """Series with the given constant term and random Laurent coefficients."""
    coefficients = [RatFun.from_int(constant, nvars)]
    coefficients += [RatFun(random_polynomial(rng, nvars)) for _ in range(order)]
    return QSeries(order, coefficients, nvars)
