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
"""Tests for truncated series and the plethystic exponential."""
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sheaf_plethysm.lib.coeffring import LaurentPoly, ParseError, RatFun, parse_ratfun
from sheaf_plethysm.lib.qseries import (
    QSeries,
    SeriesConstantError,
    dump_series,
    format_series,
    laurent_series,
    load_series,
    parse_series,
    plethystic_exp,
    plethystic_log,
)
from sheaf_plethysm.lib.random_data import make_rng, random_series

T = RatFun(LaurentPoly.variable(0, 1))
ONE = RatFun.one(1)


def molien(n):
    """1/prod_{k=1..n}(1 - t^k)."""
    value = ONE
    for k in range(1, n + 1):
        value = value / (ONE - T ** k)
    return value


class TestQSeries:
    """Series arithmetic."""

    def test_padding_and_truncation(self):
        """Missing coefficients are zero and extra ones are dropped."""
        series = QSeries(2, [ONE, T, T, T])
        assert series.coefficients == (ONE, T, T)
        assert QSeries(3, [ONE])[3].is_zero()

    def test_negative_order(self):
        """The order must be non-negative."""
        with pytest.raises(ValueError):
            QSeries(-1, [ONE])

    def test_inverse(self):
        """(1 - q) times its inverse is 1."""
        series = parse_series("1 - q", 5, 1)
        assert series * series.inverse() == QSeries.one(5, 1)
        assert all(c == ONE for c in series.inverse().coefficients)

    def test_first_difference(self):
        """The first differing index is reported."""
        first = laurent_series(3, {0: 1, 2: 1}, 1)
        second = laurent_series(3, {0: 1, 2: 2}, 1)
        assert first.first_difference(second) == 2
        assert first.first_difference(first) is None


class TestPlethysticExp:
    """Exp and Log."""

    def test_molien(self):
        """Exp(q/(1 - t)) has coefficients 1/prod(1 - t^k)."""
        result = plethystic_exp(parse_series("q/(1 - t1)", 8, 1))
        for n in range(9):
            assert result[n] == molien(n)

    def test_exp_of_q(self):
        """Exp(q) = 1/(1 - q)."""
        result = plethystic_exp(parse_series("q", 6, 1))
        assert all(c == ONE for c in result.coefficients)

    def test_exp_of_minus_q(self):
        """Exp(-q) = 1 - q: an odd line has only an exterior square of zero."""
        result = plethystic_exp(parse_series("-q", 5, 1))
        assert result == parse_series("1 - q", 5, 1)

    def test_exp_of_t_q(self):
        """Exp(t q) = sum t^n q^n."""
        result = plethystic_exp(parse_series("t1*q", 5, 1))
        assert all(result[n] == T ** n for n in range(6))

    def test_log_of_one(self):
        """Log(1) = 0."""
        assert plethystic_log(QSeries.one(4, 1)) == QSeries.zero(4, 1)

    def test_constant_terms_checked(self):
        """Exp needs constant 0 and Log constant 1."""
        with pytest.raises(SeriesConstantError):
            plethystic_exp(QSeries.one(3, 1))
        with pytest.raises(SeriesConstantError) as error:
            plethystic_log(QSeries.zero(3, 1))
        assert error.value.expected == "1"

    def test_round_trip_seeded(self):
        """Log(Exp(f)) = f for seeded random series in two variables."""
        for index in range(20):
            series = random_series(make_rng(7, index), 10, 2, constant=0)
            assert plethystic_log(plethystic_exp(series)) == series

    @given(st.integers(0, 2 ** 32), st.integers(1, 6))
    @settings(max_examples=15, deadline=None)
    def test_multiplicative(self, seed, order):
        """Exp(f + g) = Exp(f) Exp(g)."""
        first = random_series(make_rng(seed, 0), order, 1, constant=0)
        second = random_series(make_rng(seed, 1), order, 1, constant=0)
        assert plethystic_exp(first + second) == plethystic_exp(first) * plethystic_exp(second)


class TestSeriesText:
    """Series files."""

    def test_parse_and_format(self):
        """Printed series parse back to the same series."""
        series = plethystic_exp(parse_series("q/(1 - t1)", 4, 1))
        assert parse_series(format_series(series), 4, 1) == series

    def test_division_inverts(self):
        """'/' multiplies by the series inverse."""
        assert parse_series("(1 - q^2)/(1 - q)", 4, 1) == parse_series("1 + q", 4, 1)
        assert all(c == ONE for c in parse_series("1/(1 - q)", 4, 1).coefficients)

    def test_scalar_factors(self):
        """q-free factors become constant coefficients."""
        series = parse_series("t1^-1*q/(1 - t1)", 2, 1)
        assert series[1] == ONE / (T * (ONE - T))
        assert series[2].is_zero()

    @pytest.mark.parametrize("text", ["1/q", "q^(1/2)", "q^t1", "1 +", "q/0"])
    def test_not_a_series(self, text):
        """Text that is no power series in q is a parse error."""
        with pytest.raises(ParseError):
            parse_series(text, 3, 1)

    def test_zero_prints_as_zero(self):
        """The zero series prints as 0."""
        assert format_series(QSeries.zero(3, 1)) == "0"

    def test_json_form(self):
        """JSON files carry their own order and variable count."""
        series = parse_series("1 + t1*q + q^2", 3, 1)
        text = json.dumps(dump_series(series))
        assert load_series(text, 99, 7) == series

    @pytest.mark.parametrize(
        "text",
        [
            '{"order": ',
            "[1, 2]",
            '{"order": 3, "vars": 1, "coefficients": [0, "t1"]}',
            '{"order": 3, "vars": "x", "coefficients": ["1"]}',
            '{"order": -1, "vars": 1}',
            '{"order": true, "vars": 1}',
            '{"order": 2, "vars": 1, "coefficients": "1"}',
            '{"order": 2, "vars": 1, "coefficients": ["1", "t2"]}',
        ],
    )
    def test_json_errors(self, text):
        """Broken JSON, wrong field types and bad entries are parse errors."""
        with pytest.raises(ParseError):
            load_series(text, 3, 1)

    def test_json_error_position(self):
        """The error points at the offending field."""
        text = '{"order": 3, "vars": "x"}'
        with pytest.raises(ParseError) as error:
            load_series(text, 3, 1)
        assert error.value.position == text.index('"vars"')

    def test_coefficient_text(self):
        """JSON coefficients use the rational function syntax."""
        series = load_series('{"order": 1, "vars": 1, "coefficients": ["1", "1/(1 - t1)"]}', 0, 0)
        assert series[1] == parse_ratfun("1/(1 - t1)", 1)
