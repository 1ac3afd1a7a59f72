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
"""Truncated power series in q and the plethystic exponential."""
import json
import logging
import operator
from fractions import Fraction
from functools import reduce

from sympy import Symbol

from .coeffring import (
    LaurentPoly,
    ParseError,
    RatFun,
    format_ratfun,
    parse_expression,
    parse_ratfun,
    ratfun_from_expr,
)

LOGGER = logging.getLogger(__name__)


class SeriesConstantError(ValueError):
    """A series has the wrong constant term for the requested operation."""

    def __init__(self, msg, expected, found):
        """Initialize with the expected and found constant terms."""
        self.expected = expected
        self.found = found
        super().__init__(msg)


class QSeries:
    """Power series sum c_n q^n truncated after q^order."""

    __slots__ = ("order", "coefficients")

    def __init__(self, order, coefficients, nvars=None):
        """Truncated series.

        Missing coefficients are zero; coefficients beyond the order are
        dropped.

        :param order: Truncation order N.
        :type order: int
        :param coefficients: Coefficients of q^0, q^1, ...
        :type coefficients: list
        :param nvars: Variable count, needed when coefficients is empty.
        :type nvars: int
        """
        if order < 0:
            raise ValueError("Truncation order must be non-negative")
        coefficients = list(coefficients)[: order + 1]
        if nvars is None:
            if not coefficients:
                raise ValueError("Variable count needed for an empty series")
            nvars = coefficients[0].nvars
        coefficients += [RatFun.zero(nvars)] * (order + 1 - len(coefficients))
        self.order = order
        self.coefficients = tuple(coefficients)

    @property
    def nvars(self):
        """Number of torus variables."""
        return self.coefficients[0].nvars

    @classmethod
    def zero(cls, order, nvars):
        """The zero series."""
        return cls(order, [], nvars)

    @classmethod
    def one(cls, order, nvars):
        """The constant series 1."""
        return cls(order, [RatFun.one(nvars)], nvars)

    @classmethod
    def monomial(cls, order, power, coefficient):
        """coefficient * q^power."""
        coefficients = [RatFun.zero(coefficient.nvars)] * power + [coefficient]
        return cls(order, coefficients, coefficient.nvars)

    def __getitem__(self, index):
        return self.coefficients[index]

    def _check(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError("Variable count mismatch between series")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        return QSeries(
            order,
            [self[n] + other[n] for n in range(order + 1)],
            self.nvars,
        )

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        return QSeries(
            order,
            [self[n] - other[n] for n in range(order + 1)],
            self.nvars,
        )

    def __neg__(self):
        return QSeries(self.order, [-c for c in self.coefficients], self.nvars)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFun)):
            return QSeries(
                self.order, [c * other for c in self.coefficients], self.nvars
            )
        other = self._check(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        product = []
        for n in range(order + 1):
            total = RatFun.zero(self.nvars)
            for k in range(n + 1):
                if self[k].is_zero() or other[n - k].is_zero():
                    continue
                total = total + self[k] * other[n - k]
            product.append(total)
        return QSeries(order, product, self.nvars)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse to the same order.

        :raises SeriesConstantError: If the constant term is zero.
        """
        if self[0].is_zero():
            raise SeriesConstantError(
                "Series with zero constant term is not invertible", "nonzero", "0"
            )
        inverse = [RatFun.one(self.nvars) / self[0]]
        for n in range(1, self.order + 1):
            total = RatFun.zero(self.nvars)
            for k in range(1, n + 1):
                if not self[k].is_zero():
                    total = total + self[k] * inverse[n - k]
            inverse.append(-total * inverse[0])
        return QSeries(self.order, inverse, self.nvars)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, power):
        if power < 0:
            return (self ** (-power)).inverse()
        result = QSeries.one(self.order, self.nvars)
        for _ in range(power):
            result = result * self
        return result

    def adams(self, power):
        """Substitute t_i -> t_i^power and q -> q^power."""
        coefficients = [RatFun.zero(self.nvars)] * (self.order + 1)
        for n in range(self.order // power + 1):
            coefficients[n * power] = self[n].adams(power)
        return QSeries(self.order, coefficients, self.nvars)

    def truncate(self, order):
        """Drop coefficients beyond order."""
        return QSeries(min(order, self.order), self.coefficients, self.nvars)

    def first_difference(self, other):
        """Index of the first differing coefficient, or None."""
        for n in range(min(self.order, other.order) + 1):
            if self[n] != other[n]:
                return n
        return None

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.first_difference(other) is None

    def __hash__(self):
        return hash((self.order, self.coefficients))

    def __repr__(self):
        return "QSeries({}, order={})".format(format_series(self), self.order)


def plethystic_exp(series):
    """Plethystic exponential exp(sum_k f(t^k, q^k)/k) to the series order.

    Uses the Adams-summed exponent a_m = sum_{k | m} f_{m/k}(t^k)/k and the
    recurrence m g_m = sum_k k a_k g_{m-k}.

    :param series: Series with zero constant term.
    :type series: :obj:`QSeries`
    :return: Exp(series), constant term 1.
    :rtype: :obj:`QSeries`
    :raises SeriesConstantError: If the constant term is not zero.
    """
    if not series[0].is_zero():
        raise SeriesConstantError(
            "Plethystic exponential needs a zero constant term",
            "0",
            format_ratfun(series[0]),
        )
    order, nvars = series.order, series.nvars
    exponent = [RatFun.zero(nvars) for _ in range(order + 1)]
    for power in range(1, order + 1):
        for n in range(1, order // power + 1):
            if series[n].is_zero():
                continue
            exponent[n * power] += series[n].adams(power) * Fraction(1, power)
    result = [RatFun.one(nvars)]
    for m in range(1, order + 1):
        total = RatFun.zero(nvars)
        for k in range(1, m + 1):
            if exponent[k].is_zero() or result[m - k].is_zero():
                continue
            total = total + exponent[k] * result[m - k] * k
        result.append(total * Fraction(1, m))
    return QSeries(order, result, nvars)


def plethystic_log(series):
    """Inverse of :func:`plethystic_exp`, determined one order at a time.

    At order n the coefficient is g_n minus the q^n coefficient of the
    exponential of the part found so far.

    :param series: Series with constant term 1.
    :type series: :obj:`QSeries`
    :return: Log(series), constant term 0.
    :rtype: :obj:`QSeries`
    :raises SeriesConstantError: If the constant term is not 1.
    """
    if series[0] != RatFun.one(series.nvars):
        raise SeriesConstantError(
            "Plethystic logarithm needs constant term 1", "1", format_ratfun(series[0])
        )
    order, nvars = series.order, series.nvars
    logarithm = QSeries.zero(order, nvars)
    for n in range(1, order + 1):
        known = plethystic_exp(logarithm.truncate(n))
        coefficients = list(logarithm.coefficients)
        coefficients[n] = series[n] - known[n]
        logarithm = QSeries(order, coefficients, nvars)
        LOGGER.debug("Log coefficient %d determined", n)
    return logarithm


Q = Symbol("q")


def expand_in_q(expr, order, nvars):
    """Expand a parsed expression as a series in q truncated after q^order.

    Subexpressions free of q become constant series; ``/`` and negative
    powers multiply by the series inverse.

    :param expr: Expression over q and t1..t_nvars.
    :type expr: :obj:`sympy.Expr`
    :param order: Truncation order.
    :type order: int
    :param nvars: Number of torus variables.
    :type nvars: int
    :return: Truncated series.
    :rtype: :obj:`QSeries`
    :raises ValueError: If expr is not a series in q, or a divisor is not
        invertible.
    """
    if not expr.has(Q):
        return QSeries(order, [ratfun_from_expr(expr, nvars)], nvars)
    if expr == Q:
        if not order:
            return QSeries.zero(order, nvars)
        return QSeries.monomial(order, 1, RatFun.one(nvars))
    if expr.is_Add or expr.is_Mul:
        combine = operator.add if expr.is_Add else operator.mul
        return reduce(combine, (expand_in_q(arg, order, nvars) for arg in expr.args))
    if expr.is_Pow and expr.exp.is_Integer:
        return expand_in_q(expr.base, order, nvars) ** int(expr.exp)
    raise ValueError("{} is not a power series in q".format(expr))


def parse_series(text, order, nvars):
    """Parse a series expression such as ``q/(1 - t1)`` to the given order.

    :param text: Expression text.
    :type text: str
    :param order: Truncation order.
    :type order: int
    :param nvars: Number of torus variables.
    :type nvars: int
    :return: Parsed series.
    :rtype: :obj:`QSeries`
    :raises ParseError: On malformed input or a non-invertible divisor.
    """
    expr = parse_expression(text, nvars, names=("q",))
    try:
        return expand_in_q(expr, order, nvars)
    except (ValueError, ZeroDivisionError) as exception:
        raise ParseError(str(exception), text, 0) from exception


def format_series(series):
    """Print as ``c0 + (c1)*q + (c2)*q^2``, skipping zero coefficients."""
    parts = []
    for n, coefficient in enumerate(series.coefficients):
        if coefficient.is_zero():
            continue
        power = "q" if n == 1 else "q^{}".format(n)
        if n == 0:
            parts.append(format_ratfun(coefficient))
        elif coefficient == RatFun.one(series.nvars):
            parts.append(power)
        else:
            parts.append("({})*{}".format(format_ratfun(coefficient), power))
    return " + ".join(parts) or "0"


def _json_size(document, key, default, text):
    value = document.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ParseError(
            "{!r} must be a non-negative integer, got {!r}".format(key, value),
            text,
            max(text.find('"{}"'.format(key)), 0),
        )
    return value


def load_series(text, order, nvars):
    """Read a series file: plain expression text or the JSON form.

    The JSON form is ``{"order": N, "vars": d, "coefficients": [...]}``; its
    order and variable count override the arguments.

    :raises ParseError: On malformed text or a malformed JSON document.
    """
    stripped = text.strip()
    if not stripped.startswith("{"):
        return parse_series(stripped, order, nvars)
    try:
        document = json.loads(stripped)
    except json.JSONDecodeError as exception:
        raise ParseError(exception.msg, text, exception.pos) from exception
    if not isinstance(document, dict):
        raise ParseError("Expected a JSON object", stripped, 0)
    order = _json_size(document, "order", order, stripped)
    nvars = _json_size(document, "vars", nvars, stripped)
    entries = document.get("coefficients", [])
    position = max(stripped.find('"coefficients"'), 0)
    if not isinstance(entries, list):
        raise ParseError("'coefficients' must be a list", stripped, position)
    coefficients = []
    for index, entry in enumerate(entries):
        if not isinstance(entry, str):
            raise ParseError(
                "Coefficient {} must be a string, got {!r}".format(index, entry),
                stripped,
                position,
            )
        try:
            coefficients.append(parse_ratfun(entry, nvars))
        except ParseError as exception:
            raise ParseError(
                "Coefficient {}: {}".format(index, exception), stripped, position
            ) from exception
    return QSeries(order, coefficients, nvars)


def dump_series(series):
    """JSON form of a series accepted by :func:`load_series`."""
    return {
        "order": series.order,
        "vars": series.nvars,
        "coefficients": [format_ratfun(c) for c in series.coefficients],
    }


def laurent_series(order, terms, nvars):
    """Series with Laurent polynomial coefficients given as {n: poly}."""
    coefficients = [RatFun.zero(nvars)] * (order + 1)
    for n, poly in terms.items():
        if n <= order:
            if not isinstance(poly, LaurentPoly):
                poly = LaurentPoly.constant(poly, nvars)
            coefficients[n] = RatFun(poly)
    return QSeries(order, coefficients, nvars)
