"""Exact scalars: rationals, and rational functions in two parameters k1, k2.

Rationals are ``flint.fmpq`` values. Polynomials in the parameters are
``flint.fmpq_mpoly`` values over a shared two-variable context, and a
:class:`RatFunc` is a reduced quotient of two of them.

>>> k1, k2 = RatFunc.gens()
>>> (k1**2 - k2**2) / (k1 - k2) == k1 + k2
True
>>> specialize(1 / (k1 - k2), Rational(0), Rational(3))
-1/3
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import flint

from .errors import DivisionByZero, ModeMismatch, PoleAtSpecialization

__all__ = [
    "Rational",
    "Poly2",
    "RatFunc",
    "ScalarMode",
    "GENERIC",
    "Scalar",
    "rational",
    "specialize",
    "format_scalar",
    "parse_scalar",
    "format_poly",
    "parse_poly",
]

Rational = flint.fmpq
Poly2 = flint.fmpq_mpoly

_CTX = flint.fmpq_mpoly_ctx.get(("k1", "k2"), "deglex")
_ZERO = _CTX.from_dict({})
_ONE = _CTX.from_dict({(0, 0): 1})


def rational(value) -> Rational:
    """Coerce ints, Fractions, fmpq and ``"p/q"`` strings to a Rational."""
    if isinstance(value, flint.fmpq):
        return value
    if isinstance(value, int):
        return flint.fmpq(value)
    if isinstance(value, Fraction):
        return flint.fmpq(value.numerator, value.denominator)
    if isinstance(value, flint.fmpz):
        return flint.fmpq(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            p, q = text.split("/")
            return flint.fmpq(int(p), int(q))
        return flint.fmpq(int(text))
    raise TypeError(f"cannot interpret {value!r} as a rational")


def poly_const(c) -> Poly2:
    c = rational(c)
    return _CTX.from_dict({(0, 0): c}) if c else _ZERO


class RatFunc:
    """A reduced fraction ``num / den`` of polynomials in k1, k2.

    The denominator is kept monic for the degree-lexicographic order, so two
    equal values always share the same representation.
    """

    __slots__ = ("num", "den", "_poly")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        if den is None:
            self.num, self.den, self._poly = num, _ONE, True
            return
        den = _as_poly(den)
        if den == 0:
            raise DivisionByZero("zero denominator")
        self._set_reduced(num, den)

    def _set_reduced(self, num: Poly2, den: Poly2) -> None:
        if num == 0:
            self.num, self.den, self._poly = _ZERO, _ONE, True
            return
        if not den.is_constant():
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        self.num, self.den = num, den
        self._poly = den.is_one()

    @classmethod
    def _raw(cls, num: Poly2, den: Poly2, poly: bool) -> "RatFunc":
        obj = cls.__new__(cls)
        obj.num, obj.den, obj._poly = num, den, poly
        return obj

    @classmethod
    def gens(cls) -> tuple["RatFunc", "RatFunc"]:
        a, b = _CTX.gens()
        return cls(a), cls(b)

    @property
    def is_polynomial(self) -> bool:
        return self._poly

    def is_constant(self) -> bool:
        return self._poly and self.num.is_constant()

    def constant_value(self) -> Rational:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.to_dict().get((0, 0), flint.fmpq(0)) if self.num != 0 else flint.fmpq(0)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if self._poly and o._poly:
            return RatFunc._raw(self.num + o.num, _ONE, True)
        if self.den == o.den:
            out = RatFunc.__new__(RatFunc)
            out._set_reduced(self.num + o.num, self.den)
            return out
        out = RatFunc.__new__(RatFunc)
        out._set_reduced(self.num * o.den + o.num * self.den, self.den * o.den)
        return out

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den, self._poly)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if self._poly and o._poly:
            return RatFunc._raw(self.num * o.num, _ONE, True)
        if o._poly and o.num.is_constant():
            return RatFunc._raw(self.num * o.num, self.den, self._poly) if o.num != 0 else RatFunc(_ZERO)
        if self._poly and self.num.is_constant():
            return RatFunc._raw(o.num * self.num, o.den, o._poly) if self.num != 0 else RatFunc(_ZERO)
        out = RatFunc.__new__(RatFunc)
        out._set_reduced(self.num * o.num, self.den * o.den)
        return out

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.num == 0:
            raise DivisionByZero("inverse of zero")
        out = RatFunc.__new__(RatFunc)
        out._set_reduced(self.den, self.num)
        return out

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if o.num == 0:
            raise DivisionByZero("division by zero")
        if o._poly and o.num.is_constant():
            c = o.num.leading_coefficient()
            return RatFunc._raw(self.num / c, self.den, self._poly)
        return self * o.inv()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        return RatFunc._raw(self.num ** e, self.den ** e, self._poly)

    # comparison -----------------------------------------------------------

    def __bool__(self) -> bool:
        return self.num != 0

    def __eq__(self, other) -> bool:
        o = _coerce(other)
        if o is NotImplemented:
            return False
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.constant_value())
        return hash((tuple(sorted(self.num.to_dict().items())), tuple(sorted(self.den.to_dict().items()))))

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"RatFunc({format_scalar(self)!r})"

    def evaluate(self, a: Rational, b: Rational) -> Rational:
        a, b = rational(a), rational(b)
        d = self.den(a, b)
        if d == 0:
            raise PoleAtSpecialization(f"denominator {format_poly(self.den)} vanishes at k1={a}, k2={b}")
        return self.num(a, b) / d


Scalar = Union[Rational, RatFunc]


def _as_poly(x) -> Poly2:
    if isinstance(x, flint.fmpq_mpoly):
        return x
    if isinstance(x, RatFunc):
        if not x._poly:
            raise TypeError("not a polynomial")
        return x.num
    return poly_const(x)


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, flint.fmpq, flint.fmpz, Fraction)):
        return RatFunc._raw(poly_const(x), _ONE, True)
    if isinstance(x, flint.fmpq_mpoly):
        return RatFunc._raw(x, _ONE, True)
    return NotImplemented


def scalar_sum(values):
    """Sum of many scalars; rational functions sharing a denominator are
    added numerator-wise and reduced once at the end."""
    if len(values) == 1:
        return values[0]
    if not any(isinstance(v, RatFunc) for v in values):
        return sum(values[1:], values[0])
    groups: list = []  # [num, den]; few distinct denominators in practice
    for v in values:
        v = _coerce(v)
        for g in groups:
            if g[1] == v.den:
                g[0] = g[0] + v.num
                break
        else:
            groups.append([v.num, v.den])
    num = den = None
    for n2, d2 in groups:
        if n2 == 0:
            continue
        if num is None:
            num, den = n2, d2
        elif den == d2:
            num = num + n2
        else:
            g = den.gcd(d2)
            a, b = d2 / g, den / g
            num = num * a + n2 * b
            den = den * a
    if num is None or num == 0:
        return RatFunc(_ZERO)
    if den.is_one():
        return RatFunc._raw(num, _ONE, True)
    out = RatFunc.__new__(RatFunc)
    out._set_reduced(num, den)
    return out


def specialize(f, k1, k2) -> Rational:
    """Evaluate a scalar at ``(k1, k2)``; rationals pass through unchanged."""
    if isinstance(f, RatFunc):
        return f.evaluate(k1, k2)
    return rational(f)


@dataclass(frozen=True)
class ScalarMode:
    """Either the generic parameters or a rational specialization of them.

    >>> ScalarMode.parse("k1=0,k2=7/2")
    ScalarMode(k1=0, k2=7/2)
    >>> ScalarMode.parse("generic").is_generic
    True
    """

    k1: Rational | None = None
    k2: Rational | None = None

    def __post_init__(self):
        if (self.k1 is None) != (self.k2 is None):
            raise ValueError("give both parameters or neither")
        if self.k1 is not None:
            object.__setattr__(self, "k1", rational(self.k1))
            object.__setattr__(self, "k2", rational(self.k2))

    @classmethod
    def specialized(cls, k1, k2) -> "ScalarMode":
        return cls(rational(k1), rational(k2))

    @classmethod
    def parse(cls, text: str) -> "ScalarMode":
        text = text.strip()
        if text == "generic":
            return GENERIC
        values = {}
        for part in text.split(","):
            key, _, val = part.partition("=")
            key = key.strip()
            if key not in ("k1", "k2") or not val:
                raise ValueError(f"bad mode {text!r}")
            values[key] = rational(val)
        if set(values) != {"k1", "k2"}:
            raise ValueError(f"bad mode {text!r}")
        return cls(values["k1"], values["k2"])

    @property
    def is_generic(self) -> bool:
        return self.k1 is None

    @property
    def kappa1(self) -> Scalar:
        return RatFunc.gens()[0] if self.is_generic else self.k1

    @property
    def kappa2(self) -> Scalar:
        return RatFunc.gens()[1] if self.is_generic else self.k2

    def kappa(self, b: int) -> Scalar:
        """The parameter k_b, with the index read modulo 2."""
        return self.kappa1 if b % 2 == 1 else self.kappa2

    @property
    def zero(self) -> Scalar:
        return self.coerce(0)

    @property
    def one(self) -> Scalar:
        return self.coerce(1)

    def coerce(self, x) -> Scalar:
        if self.is_generic:
            c = _coerce(x)
            if c is NotImplemented:
                raise TypeError(f"cannot use {x!r} as a scalar")
            return c
        if isinstance(x, RatFunc):
            return x.evaluate(self.k1, self.k2)
        return rational(x)

    def div(self, a, b) -> Scalar:
        if not b:
            raise DivisionByZero("division by zero")
        return self.coerce(a) / self.coerce(b)

    def check(self, other: "ScalarMode") -> None:
        if self != other:
            raise ModeMismatch(f"{self} vs {other}")

    def to_json(self):
        if self.is_generic:
            return "generic"
        return {"k1": str(self.k1), "k2": str(self.k2)}

    @classmethod
    def from_json(cls, data) -> "ScalarMode":
        if data == "generic":
            return GENERIC
        return cls(rational(data["k1"]), rational(data["k2"]))

    def __str__(self) -> str:
        return "generic" if self.is_generic else f"k1={self.k1},k2={self.k2}"

    def __repr__(self) -> str:
        return "ScalarMode(generic)" if self.is_generic else f"ScalarMode(k1={self.k1}, k2={self.k2})"


GENERIC = ScalarMode()


# text forms ---------------------------------------------------------------


def _format_monomial(exps) -> str:
    parts = []
    for name, e in zip(("k1", "k2"), exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Poly2) -> str:
    """Render as a sum of ``c*k1^a*k2^b`` terms in decreasing order.

    >>> k1, k2 = RatFunc.gens()
    >>> format_poly((k1**2 / 3 - 7 * k2 + 1).num)
    '1/3*k1^2 - 7*k2 + 1'
    """
    if p == 0:
        return "0"
    out = []
    for exps, c in zip(p.monoms(), p.coeffs()):
        mono = _format_monomial(exps)
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def format_scalar(x) -> str:
    if isinstance(x, RatFunc):
        if x._poly:
            return format_poly(x.num)
        return f"({format_poly(x.num)}) / ({format_poly(x.den)})"
    return str(rational(x))


_TERM = re.compile(r"\s*([+-])?\s*([^+\-\s][^+\-]*)")


def parse_poly(text: str) -> Poly2:
    """Inverse of :func:`format_poly`.

    >>> format_poly(parse_poly("1/3*k1^2 - 7*k2 + 1"))
    '1/3*k1^2 - 7*k2 + 1'
    """
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    terms: dict[tuple[int, int], Rational] = {}
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse polynomial {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coeff = flint.fmpq(sign)
        exps = [0, 0]
        for factor in m.group(2).strip().split("*"):
            factor = factor.strip()
            if factor.startswith("k1") or factor.startswith("k2"):
                idx = 0 if factor[1] == "1" else 1
                e = int(factor.split("^")[1]) if "^" in factor else 1
                exps[idx] += e
            else:
                coeff *= rational(factor)
        key = (exps[0], exps[1])
        terms[key] = terms.get(key, flint.fmpq(0)) + coeff
    return _CTX.from_dict({k: v for k, v in terms.items() if v != 0})


def parse_scalar(text: str, mode: ScalarMode) -> Scalar:
    """Parse a scalar written by :func:`format_scalar` into ``mode``."""
    text = text.strip()
    if mode.is_generic:
        if " / " in text:
            num, den = text.split(" / ")
            return RatFunc(parse_poly(num), parse_poly(den))
        return RatFunc(parse_poly(text))
    if "k" in text:
        return mode.coerce(parse_scalar(text, GENERIC))
    return rational(text)
