"""Exact scalars: polynomials in the level parameter ``t`` with rational coefficients."""
import logging
from fractions import Fraction
from typing import Union

from sympy import QQ, Symbol, Rational
from sympy.parsing.sympy_parser import parse_expr
from sympy.polys.rings import PolyElement, ring

from cdo_workbench._errors import InputError


logger = logging.getLogger(__name__)

LEVEL_RING, t = ring("t", QQ)
LEVEL_SYMBOL = Symbol("t")

Scalar = PolyElement
ScalarLike = Union[int, Fraction, str, PolyElement, Rational]


class ScalarParseError(InputError):
    pass


class NotRational(InputError):
    pass


def scalar(value: ScalarLike) -> Scalar:
    if isinstance(value, PolyElement):
        if value.ring == LEVEL_RING:
            return value
        return value.set_ring(LEVEL_RING)
    if isinstance(value, bool):
        raise ScalarParseError(f"Not a scalar: {value!r}")
    if isinstance(value, int):
        return LEVEL_RING(value)
    if isinstance(value, Fraction):
        return LEVEL_RING(QQ(value.numerator, value.denominator))
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, Rational):
        return LEVEL_RING(QQ(int(value.p), int(value.q)))
    return LEVEL_RING(QQ.convert(value))


def parse_scalar(text: str) -> Scalar:
    """Parses ``"3"``, ``"-1/2"``, ``"t"`` or a polynomial such as ``"-4*t - 4"``."""
    text = text.strip()
    if not text:
        raise ScalarParseError("Empty scalar")
    try:
        expr = parse_expr(text, local_dict={"t": LEVEL_SYMBOL}, evaluate=True)
        return LEVEL_RING.from_expr(expr)
    except Exception as e:
        raise ScalarParseError(f"Cannot read {text!r} as an exact scalar: {e}") from e


def render_scalar(value: Scalar) -> str:
    return str(value.as_expr())


def is_rational(value: Scalar) -> bool:
    return value.is_ground


def rational(value: Scalar):
    """The ``QQ`` value of a constant scalar."""
    if not value.is_ground:
        raise NotRational(f"Expected a rational number, got {render_scalar(value)}")
    return value.coeff(1)


def t_coefficients(value: Scalar) -> dict[int, object]:
    """Coefficients of ``value`` by power of ``t``, as ``QQ`` elements."""
    return {monom[0]: coeff for monom, coeff in value.terms()}


def from_t_coefficients(coefficients: dict[int, object]) -> Scalar:
    result = LEVEL_RING.zero
    for power, coeff in coefficients.items():
        if coeff:
            result += LEVEL_RING(coeff) * t ** power
    return result
