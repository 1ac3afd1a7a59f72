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
"""Exact Laurent polynomials and rational functions in the torus variables."""
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from tokenize import TokenError

from sympy import Symbol, nan, zoo
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys.domains import QQ
from sympy.polys.fields import field
from sympy.polys.rings import ring


class ZeroDenominatorError(ZeroDivisionError):
    """Division by the zero rational function."""


class ParseError(ValueError):
    """Text could not be parsed as an expression."""

    def __init__(self, msg, text, position):
        """Initialize with the offending text and position."""
        self.text = text
        self.position = position
        super().__init__("{} at position {} in {!r}".format(msg, position, text))


class LaurentPoly:
    """Laurent polynomial in t1..td with rational coefficients.

    Terms are stored as a mapping from exponent tuples to non-zero
    :obj:`fractions.Fraction` coefficients.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars, terms=None):
        """Laurent polynomial.

        :param nvars: Number of torus variables.
        :type nvars: int
        :param terms: Mapping exponent vector -> coefficient.
        :type terms: dict
        """
        self.nvars = nvars
        cleaned = {}
        for exponent, coefficient in (terms or {}).items():
            exponent = tuple(int(value) for value in exponent)
            if len(exponent) != nvars:
                raise ValueError(
                    "Exponent {} does not have {} entries".format(exponent, nvars)
                )
            coefficient = Fraction(coefficient)
            if coefficient:
                cleaned[exponent] = coefficient
        self._terms = cleaned
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        """Build from an already clean term dictionary."""
        poly = cls.__new__(cls)
        poly.nvars = nvars
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def zero(cls, nvars):
        """Zero polynomial."""
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, value, nvars):
        """Constant polynomial."""
        value = Fraction(value)
        return cls._raw(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def monomial(cls, exponent, nvars, coefficient=1):
        """Single term coefficient * t^exponent."""
        return cls(nvars, {tuple(exponent): coefficient})

    @classmethod
    def variable(cls, index, nvars):
        """The variable t_{index+1}."""
        exponent = [0] * nvars
        exponent[index] = 1
        return cls._raw(nvars, {tuple(exponent): Fraction(1)})

    def items(self):
        """Terms sorted by exponent, lexicographically descending."""
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, exponent):
        """Coefficient of t^exponent."""
        return self._terms.get(tuple(exponent), Fraction(0))

    def is_zero(self):
        """Whether there are no terms."""
        return not self._terms

    def is_monomial(self):
        """Whether there is exactly one term."""
        return len(self._terms) == 1

    def is_constant(self):
        """Whether the polynomial is a (possibly zero) constant."""
        return not self._terms or set(self._terms) == {(0,) * self.nvars}

    def leading(self):
        """Lexicographically largest term as (exponent, coefficient)."""
        exponent = max(self._terms)
        return exponent, self._terms[exponent]

    def min_exponent(self):
        """Componentwise minimum exponent over all terms."""
        if not self._terms:
            return (0,) * self.nvars
        return tuple(min(column) for column in zip(*self._terms))

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError(
                "Variable count mismatch: {} != {}".format(self.nvars, other.nvars)
            )
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for exponent, coefficient in other._terms.items():
            value = terms.get(exponent, 0) + coefficient
            if value:
                terms[exponent] = value
            else:
                terms.pop(exponent, None)
        return LaurentPoly._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        terms = {}
        for left, lcoef in self._terms.items():
            for right, rcoef in other._terms.items():
                exponent = tuple(a + b for a, b in zip(left, right))
                value = terms.get(exponent, 0) + lcoef * rcoef
                if value:
                    terms[exponent] = value
                else:
                    terms.pop(exponent, None)
        return LaurentPoly._raw(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, power):
        if power < 0:
            if not self.is_monomial():
                raise ValueError("Only monomials have Laurent inverses")
            (exponent, coefficient), = self._terms.items()
            return LaurentPoly._raw(
                self.nvars,
                {tuple(power * e for e in exponent): coefficient ** power},
            )
        result = LaurentPoly.constant(1, self.nvars)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def scale(self, factor):
        """Multiply every coefficient by a rational factor."""
        factor = Fraction(factor)
        if not factor:
            return LaurentPoly.zero(self.nvars)
        return LaurentPoly._raw(
            self.nvars, {e: c * factor for e, c in self._terms.items()}
        )

    def shift(self, exponent):
        """Multiply by the monomial t^exponent."""
        return LaurentPoly._raw(
            self.nvars,
            {
                tuple(a + b for a, b in zip(e, exponent)): c
                for e, c in self._terms.items()
            },
        )

    def adams(self, power):
        """Substitute t_i -> t_i^power."""
        return LaurentPoly._raw(
            self.nvars,
            {tuple(power * a for a in e): c for e, c in self._terms.items()},
        )

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return "LaurentPoly({})".format(format_laurent(self))


@lru_cache(maxsize=None)
def _polynomial_ring(nvars):
    """Sympy polynomial ring QQ[t1..td] used for gcd cancellation."""
    names = ",".join("t{}".format(index + 1) for index in range(nvars))
    return ring(names, QQ)[0]


def _to_sympy(poly, ring_):
    return ring_.from_dict(
        {e: QQ(c.numerator, c.denominator) for e, c in poly._terms.items()}
    )


def _from_sympy(element, nvars):
    return LaurentPoly._raw(
        nvars,
        {
            tuple(monom): Fraction(int(QQ.numer(coef)), int(QQ.denom(coef)))
            for monom, coef in element.terms()
        },
    )


class RatFun:
    """Quotient of two Laurent polynomials.

    Values are kept in a reduced form: the denominator is a polynomial without
    monomial factors, coprime to the numerator, with leading coefficient 1
    under the lexicographic exponent order. Equality is still decided by
    cross-multiplication.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=None, reduce=True):
        """Rational function numerator / denominator.

        :param numerator: Numerator.
        :type numerator: :obj:`LaurentPoly`
        :param denominator: Denominator, default 1.
        :type denominator: :obj:`LaurentPoly`
        :param reduce: Cancel common factors.
        :type reduce: bool
        :raises ZeroDenominatorError: If the denominator is zero.
        """
        if denominator is None:
            denominator = LaurentPoly.constant(1, numerator.nvars)
        if numerator.nvars != denominator.nvars:
            raise ValueError("Variable count mismatch in rational function")
        if denominator.is_zero():
            raise ZeroDenominatorError("Rational function with zero denominator")
        if reduce:
            numerator, denominator = _reduce(numerator, denominator)
        self.numerator = numerator
        self.denominator = denominator

    @classmethod
    def from_int(cls, value, nvars):
        """Constant rational function."""
        return cls(LaurentPoly.constant(value, nvars), reduce=False)

    @classmethod
    def zero(cls, nvars):
        """The zero rational function."""
        return cls.from_int(0, nvars)

    @classmethod
    def one(cls, nvars):
        """The unit rational function."""
        return cls.from_int(1, nvars)

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        """coefficient * t^exponent."""
        return cls(
            LaurentPoly.monomial(exponent, len(exponent), coefficient), reduce=False
        )

    @property
    def nvars(self):
        """Number of torus variables."""
        return self.numerator.nvars

    def is_zero(self):
        """Whether this is the zero function."""
        return self.numerator.is_zero()

    def is_laurent(self):
        """Whether the denominator is a constant."""
        return self.denominator.is_constant()

    def _lift(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFun(LaurentPoly.constant(other, self.nvars), reduce=False)
        if isinstance(other, LaurentPoly):
            return RatFun(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError(
                "Variable count mismatch: {} != {}".format(self.nvars, other.nvars)
            )
        return other

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.denominator == other.denominator:
            return RatFun(self.numerator + other.numerator, self.denominator)
        return RatFun(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.numerator, self.denominator, reduce=False)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return RatFun.zero(self.nvars)
        if self.is_laurent() and other.is_laurent():
            return RatFun(
                self.numerator.scale(1 / self.denominator.leading()[1])
                * other.numerator.scale(1 / other.denominator.leading()[1]),
                reduce=False,
            )
        return RatFun(
            self.numerator * other.numerator, self.denominator * other.denominator
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDenominatorError("Division by the zero rational function")
        return RatFun(
            self.numerator * other.denominator, self.denominator * other.numerator
        )

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, power):
        if power < 0:
            return RatFun.one(self.nvars) / (self ** (-power))
        return RatFun(self.numerator ** power, self.denominator ** power)

    def adams(self, power):
        """Substitute t_i -> t_i^power in numerator and denominator.

        :param power: Positive integer.
        :type power: int
        :return: Substituted rational function.
        :rtype: :obj:`RatFun`
        """
        if power < 1:
            raise ValueError("Adams operations need a positive power")
        if power == 1:
            return self
        return RatFun(self.numerator.adams(power), self.denominator.adams(power))

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __repr__(self):
        return "RatFun({})".format(format_ratfun(self))

    def __str__(self):
        return format_ratfun(self)


def _reduce(numerator, denominator):
    """Bring a fraction into the reduced form documented on :obj:`RatFun`."""
    nvars = numerator.nvars
    if numerator.is_zero():
        return LaurentPoly.zero(nvars), LaurentPoly.constant(1, nvars)
    if denominator.is_monomial():
        (exponent, coefficient), = denominator._terms.items()
        return (
            numerator.shift(tuple(-e for e in exponent)).scale(1 / coefficient),
            LaurentPoly.constant(1, nvars),
        )
    # Clear monomial factors so both sides are honest polynomials.
    den_shift = denominator.min_exponent()
    denominator = denominator.shift(tuple(-e for e in den_shift))
    numerator = numerator.shift(tuple(-e for e in den_shift))
    num_shift = numerator.min_exponent()
    numerator = numerator.shift(tuple(-e for e in num_shift))
    if nvars:
        ring_ = _polynomial_ring(nvars)
        _, num_part, den_part = _to_sympy(numerator, ring_).cofactors(
            _to_sympy(denominator, ring_)
        )
        numerator = _from_sympy(num_part, nvars)
        denominator = _from_sympy(den_part, nvars)
    lead = denominator.leading()[1]
    return numerator.shift(num_shift).scale(1 / lead), denominator.scale(1 / lead)


def _format_coefficient_term(coefficient, exponent):
    """Format one term with an integer-or-fraction coefficient (sign excluded)."""
    factors = []
    for index, power in enumerate(exponent):
        if power == 0:
            continue
        if power == 1:
            factors.append("t{}".format(index + 1))
        else:
            factors.append("t{}^{}".format(index + 1, power))
    magnitude = abs(coefficient)
    if not factors:
        return str(magnitude)
    if magnitude == 1:
        return "*".join(factors)
    return "{}*{}".format(magnitude, "*".join(factors))


def format_laurent(poly):
    """Print a Laurent polynomial, terms in descending lexicographic order.

    :param poly: Polynomial to print.
    :type poly: :obj:`LaurentPoly`
    :return: Text in the expression syntax.
    :rtype: str
    """
    if poly.is_zero():
        return "0"
    text = ""
    for position, (exponent, coefficient) in enumerate(poly.items()):
        term = _format_coefficient_term(coefficient, exponent)
        if position == 0:
            text = ("-" if coefficient < 0 else "") + term
        else:
            text += (" - " if coefficient < 0 else " + ") + term
    return text


def _lcm(left, right):
    return left * right // gcd(left, right)


def format_ratfun(value):
    """Print a rational function with integer coefficients.

    Numerator and denominator are scaled by the least common multiple of all
    coefficient denominators; a constant denominator is omitted.

    :param value: Rational function to print.
    :type value: :obj:`RatFun`
    :return: Text such as ``(1 - t1^2)/(1 - t1)``.
    :rtype: str
    """
    numerator, denominator = value.numerator, value.denominator
    if denominator.is_constant():
        return format_laurent(numerator.scale(1 / denominator.leading()[1]))
    scale = 1
    for _, coefficient in numerator.items() + denominator.items():
        scale = _lcm(scale, coefficient.denominator)
    numerator = numerator.scale(scale)
    denominator = denominator.scale(scale)
    return "({})/({})".format(format_laurent(numerator), format_laurent(denominator))


# parse_expr evaluates its input, so only the expression alphabet gets through.
FOREIGN = re.compile(r"[^0-9tq+\-*/^()\s]")
TRANSFORMATIONS = standard_transformations + (convert_xor,)


def parse_expression(text, nvars, names=()):
    """Parse text in the ``+ - * / ^`` grammar into a sympy expression.

    :param text: Expression text over t1..t_nvars and the extra names.
    :type text: str
    :param nvars: Number of torus variables.
    :type nvars: int
    :param names: Further symbol names, such as ``q`` for series.
    :type names: tuple
    :return: Parsed expression.
    :rtype: :obj:`sympy.Expr`
    :raises ParseError: On characters outside the grammar or bad syntax.
    """
    text = text.rstrip()
    if not text.strip():
        raise ParseError("Empty expression", text, 0)
    foreign = FOREIGN.search(text)
    if foreign is not None:
        raise ParseError("Unexpected character", text, foreign.start())
    local = {name: Symbol(name) for name in _variable_names(nvars) + tuple(names)}
    try:
        return parse_expr(text, local_dict=local, transformations=TRANSFORMATIONS)
    except SyntaxError as exception:
        offset = max((exception.offset or 1) - 1, 0)
        raise ParseError("Invalid syntax", text, min(offset, len(text))) from exception
    except (TokenError, TypeError, ValueError) as exception:
        raise ParseError("Incomplete expression", text, len(text)) from exception


def _variable_names(nvars):
    return tuple("t{}".format(index + 1) for index in range(nvars))


@lru_cache(maxsize=None)
def _fraction_field(nvars):
    """Sympy field QQ(t1..td) that converts parsed expressions."""
    return field(",".join(_variable_names(nvars)), QQ)[0]


def ratfun_from_expr(expr, nvars):
    """Convert a sympy expression in t1..t_nvars to a :obj:`RatFun`.

    :raises ValueError: If the expression is not a rational function of the
        torus variables.
    :raises ZeroDenominatorError: If the expression divides by zero.
    """
    if expr.has(zoo, nan):
        raise ZeroDenominatorError("Division by zero")
    if not nvars:
        if not expr.is_Rational:
            raise ValueError("{} is not a rational number".format(expr))
        return RatFun(LaurentPoly.constant(Fraction(int(expr.p), int(expr.q)), 0))
    element = _fraction_field(nvars).from_expr(expr)
    return RatFun(_from_sympy(element.numer, nvars), _from_sympy(element.denom, nvars))


def parse_ratfun(text, nvars):
    """Parse text such as ``(1 - t1^2)/(1 - t1)``.

    :param text: Expression text.
    :type text: str
    :param nvars: Number of torus variables.
    :type nvars: int
    :return: Parsed rational function.
    :rtype: :obj:`RatFun`
    :raises ParseError: On malformed input.
    """
    expr = parse_expression(text, nvars)
    try:
        return ratfun_from_expr(expr, nvars)
    except (ValueError, ZeroDivisionError) as exception:
        raise ParseError(str(exception), text, 0) from exception


def ratfun_arith(left, right, operation):
    """Apply one of the field operations add, sub, mul, div.

    :raises ZeroDenominatorError: Division by zero.
    """
    operations = {
        "add": RatFun.__add__,
        "sub": RatFun.__sub__,
        "mul": RatFun.__mul__,
        "div": RatFun.__truediv__,
    }
    if operation not in operations:
        raise ValueError("Unknown operation {!r}".format(operation))
    return operations[operation](left, right)


def adams(value, power):
    """Substitute t_i -> t_i^power.

    :param value: Function to substitute into.
    :type value: :obj:`RatFun`
    :param power: Positive integer k.
    :type power: int
    :return: value(t^k).
    :rtype: :obj:`RatFun`
    """
    return value.adams(power)
