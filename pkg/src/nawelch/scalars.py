"""Fixed-precision scalars over two ultrametric valued fields.

Two truncated backends are provided:

* :class:`PadicField` -- the p-adic numbers, elements stored as
  ``p**v * u`` with the unit ``u`` known modulo ``p**N``.
* :class:`LaurentField` -- formal Laurent series over the rationals,
  elements stored as ``t**v * (c0 + c1 t + ...)`` with ``N`` known
  coefficients.

plus :class:`RationalField`, exact rationals carrying a p-adic valuation,
which is the oracle the truncated arithmetic is tested against.

Norms are never materialised as floats.  ``|x| = base**(-v)`` is handled
through the integer valuation ``v``; ``math.inf`` is the valuation of zero.

Every truncated element carries its own *effective* relative precision.
Cancellation in addition lowers it, and when nothing is left the result
is an *inexact zero*: an element indistinguishable from zero that only
knows its absolute precision ``O(p**A)``.  Asking an inexact zero for its
valuation or dividing by it raises :class:`PrecisionError`.
"""
from __future__ import annotations

import itertools
import math
import os
from fractions import Fraction
from typing import Iterable, Sequence

INF = math.inf
DEFAULT_PRECISION = int(os.environ.get("NAWELCH_PRECISION", "16"))


class PrecisionError(ArithmeticError):
    """Raised when a result would depend on digits that were never known."""


class BackendMismatch(ValueError):
    """Raised when scalars from different fields are combined."""


def ord_p(n: int, p: int) -> int | float:
    """p-adic valuation of an integer (``inf`` for 0)."""
    if n == 0:
        return INF
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def rational_valuation(q, p: int) -> int | float:
    q = Fraction(q)
    if q == 0:
        return INF
    return ord_p(q.numerator, p) - ord_p(q.denominator, p)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % k for k in range(2, math.isqrt(n) + 1))


def parse_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip())
    raise TypeError(f"cannot read {text!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def format_valuation(v):
    return "inf" if v == INF else int(v)


def parse_valuation(v):
    if v == "inf":
        return INF
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValueError(f"valuation must be an integer or 'inf', got {v!r}")
    return v


class _Scalar:
    """Operator plumbing shared by every backend."""

    __slots__ = ()

    def _coerce(self, other):
        if isinstance(other, _Scalar):
            if other.field != self.field:
                raise BackendMismatch(f"cannot combine {self.field} with {other.field}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._add(other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._add(-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other._add(-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._mul(other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._mul(other.inverse())

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other._mul(self.inverse())

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base, k = self.inverse(), -k
        result = self.field.one()
        while k:
            if k & 1:
                result = result._mul(base)
            k >>= 1
            if k:
                base = base._mul(base)
        return result

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, _Scalar) else other
        if other is NotImplemented or not isinstance(other, _Scalar):
            return NotImplemented
        if other.field != self.field:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def __bool__(self):
        return not self.is_zero()

    @property
    def valuation(self):
        """Exact valuation; ``inf`` for an exact zero."""
        v, exact = self.valuation_bound()
        if not exact:
            raise PrecisionError("valuation of an element indistinguishable from zero")
        return v

    def norm(self) -> dict:
        """The norm as a ``{base, exponent}`` pair: ``|x| = base**exponent``."""
        v = self.valuation
        return {"base": self.field.norm_base, "exponent": "-inf" if v == INF else -int(v)}


# ---------------------------------------------------------------- p-adic


class PadicField:
    """The p-adic numbers at relative precision ``precision``."""

    kind = "padic"

    def __init__(self, prime: int, precision: int = DEFAULT_PRECISION):
        if not is_prime(prime):
            raise ValueError(f"{prime} is not prime")
        if precision < 1:
            raise ValueError("precision must be at least 1")
        self.prime = prime
        self.precision = precision

    @property
    def norm_base(self) -> int:
        return self.prime

    @property
    def uniformizer(self) -> "PadicScalar":
        return self.from_rational(self.prime)

    def __eq__(self, other):
        return (
            isinstance(other, PadicField)
            and other.prime == self.prime
            and other.precision == self.precision
        )

    def __hash__(self):
        return hash(("padic", self.prime, self.precision))

    def __repr__(self):
        return f"PadicField({self.prime}, precision={self.precision})"

    def config(self) -> dict:
        return {"kind": "padic", "prime": self.prime, "precision": self.precision}

    def zero(self) -> "PadicScalar":
        return PadicScalar(self, INF, 0, INF)

    def one(self) -> "PadicScalar":
        return self.from_rational(1)

    def __call__(self, value) -> "PadicScalar":
        if isinstance(value, PadicScalar):
            if value.field != self:
                raise BackendMismatch(f"{value.field} is not {self}")
            return value
        return self.from_rational(parse_rational(value))

    def from_rational(self, q) -> "PadicScalar":
        q = Fraction(q)
        if q == 0:
            return self.zero()
        p = self.prime
        num, den = q.numerator, q.denominator
        v = 0
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        mod = p**self.precision
        return PadicScalar(self, v, num * pow(den, -1, mod) % mod, self.precision)

    def inexact_zero(self, absolute_precision: int) -> "PadicScalar":
        return PadicScalar(self, absolute_precision, 0, 0)

    def from_json(self, obj) -> "PadicScalar":
        if not isinstance(obj, dict):
            return self.from_rational(parse_rational(obj))
        if obj.get("prime", self.prime) != self.prime:
            raise BackendMismatch(f"scalar prime {obj['prime']} differs from field prime {self.prime}")
        v = parse_valuation(obj["valuation"])
        digits = list(obj["digits"])
        if v == INF:
            if digits:
                raise ValueError("zero must have empty digits")
            return self.zero()
        if not digits:
            return self.inexact_zero(v)
        if any(not (0 <= dg < self.prime) for dg in digits):
            raise ValueError(f"digits must lie in [0, {self.prime})")
        if digits[0] == 0:
            raise ValueError("leading digit of a nonzero p-adic must be nonzero")
        unit = sum(dg * self.prime**i for i, dg in enumerate(digits))
        return PadicScalar(self, v, unit, len(digits))


class PadicScalar(_Scalar):
    """``p**val * unit``, the unit known modulo ``p**prec``.

    Exact zero: ``val = prec = inf``.  Inexact zero: ``unit = 0, prec = 0``
    and ``val`` holds the absolute precision.
    """

    __slots__ = ("field", "val", "unit", "prec")

    def __init__(self, field: PadicField, val, unit: int, prec):
        self.field = field
        self.val = val
        self.unit = unit
        self.prec = prec

    @property
    def precision(self):
        return self.prec

    @property
    def absolute_precision(self):
        return self.val + self.prec

    @property
    def digits(self) -> tuple[int, ...]:
        """Base-p digits of the unit part, lowest first (``precision`` of them)."""
        if self.unit == 0:
            return ()
        p, u, out = self.field.prime, self.unit, []
        for _ in range(self.prec):
            u, r = divmod(u, p)
            out.append(r)
        return tuple(out)

    def is_zero(self) -> bool:
        return self.unit == 0

    def is_exact_zero(self) -> bool:
        return self.unit == 0 and self.val == INF

    def is_inexact_zero(self) -> bool:
        return self.unit == 0 and self.val != INF

    def valuation_bound(self):
        """``(v, exact)``; for an inexact zero ``v`` is a lower bound."""
        return self.val, not self.is_inexact_zero()

    def _add(self, other: "PadicScalar") -> "PadicScalar":
        if self.is_exact_zero():
            return other
        if other.is_exact_zero():
            return self
        p = self.field.prime
        a_abs = self.val + self.prec
        b_abs = other.val + other.prec
        top = min(a_abs, b_abs)
        low = min(self.val, other.val)
        if top <= low:
            return self.field.inexact_zero(top)
        s = self.unit * p ** (self.val - low) + other.unit * p ** (other.val - low)
        s %= p ** (top - low)
        if s == 0:
            return self.field.inexact_zero(top)
        k = 0
        while s % p == 0:
            s //= p
            k += 1
        return PadicScalar(self.field, low + k, s, top - low - k)

    def _mul(self, other: "PadicScalar") -> "PadicScalar":
        if self.is_exact_zero() or other.is_exact_zero():
            return self.field.zero()
        if self.unit == 0 or other.unit == 0:
            bound = min(self.val + other.val + other.prec, other.val + self.val + self.prec)
            return self.field.inexact_zero(bound)
        prec = min(self.prec, other.prec)
        return PadicScalar(
            self.field, self.val + other.val, self.unit * other.unit % self.field.prime**prec, prec
        )

    def __neg__(self):
        if self.unit == 0:
            return self
        return PadicScalar(self.field, self.val, -self.unit % self.field.prime**self.prec, self.prec)

    def inverse(self) -> "PadicScalar":
        if self.is_exact_zero():
            raise ZeroDivisionError("p-adic division by zero")
        if self.unit == 0:
            raise PrecisionError("division by an element indistinguishable from zero")
        mod = self.field.prime**self.prec
        return PadicScalar(self.field, -self.val, pow(self.unit, -1, mod), self.prec)

    def to_rational(self) -> Fraction | None:
        """Smallest rational congruent to this element at its precision, if any.

        Uses rational reconstruction: ``a/b`` with ``|a|, b <= sqrt(p**N / 2)``.
        """
        if self.unit == 0:
            return Fraction(0)
        p = self.field.prime
        mod = p**self.prec
        bound = math.isqrt(mod // 2)
        r0, r1, s0, s1 = mod, self.unit, 0, 1
        while r1 > bound:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
        if s1 == 0 or abs(s1) > bound or math.gcd(s1, p) != 1:
            return None
        return Fraction(r1, s1) * Fraction(p) ** self.val

    def key(self):
        return ("padic", self.val, self.unit, self.prec)

    def to_json(self) -> dict:
        return {
            "prime": self.field.prime,
            "valuation": format_valuation(self.val),
            "digits": list(self.digits),
        }

    def __repr__(self):
        if self.is_exact_zero():
            return "0"
        if self.unit == 0:
            return f"O({self.field.prime}^{self.val})"
        terms = " + ".join(f"{dg}*{self.field.prime}^{i}" for i, dg in enumerate(self.digits) if dg)
        return f"{self.field.prime}^{self.val} * ({terms})"


# ---------------------------------------------------------------- Laurent


class LaurentField:
    """Formal Laurent series Q((t)), ``precision`` coefficients per element.

    The residue field Q is formally real, so a sum of squares never
    cancels its leading term: this backend satisfies
    ``|sum l_j^2| = max |l_j|^2``.  The norm base is fixed at 2
    (``|t| = 1/2``); any base > 1 gives the same comparisons.
    """

    kind = "laurent"
    norm_base = 2

    def __init__(self, precision: int = DEFAULT_PRECISION):
        if precision < 1:
            raise ValueError("precision must be at least 1")
        self.precision = precision

    def __eq__(self, other):
        return isinstance(other, LaurentField) and other.precision == self.precision

    def __hash__(self):
        return hash(("laurent", self.precision))

    def __repr__(self):
        return f"LaurentField(precision={self.precision})"

    def config(self) -> dict:
        return {"kind": "laurent", "precision": self.precision}

    @property
    def uniformizer(self) -> "LaurentScalar":
        return self.monomial(1, 1)

    def zero(self) -> "LaurentScalar":
        return LaurentScalar(self, INF, (), INF)

    def one(self) -> "LaurentScalar":
        return self.from_rational(1)

    def __call__(self, value) -> "LaurentScalar":
        if isinstance(value, LaurentScalar):
            if value.field != self:
                raise BackendMismatch(f"{value.field} is not {self}")
            return value
        return self.from_rational(parse_rational(value))

    def from_rational(self, q) -> "LaurentScalar":
        q = Fraction(q)
        if q == 0:
            return self.zero()
        return LaurentScalar(self, 0, (q,), self.precision)

    def monomial(self, c, k: int) -> "LaurentScalar":
        """``c * t**k``."""
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return LaurentScalar(self, k, (c,), self.precision)

    def series(self, coeffs: Sequence, valuation: int = 0) -> "LaurentScalar":
        """``t**valuation * sum coeffs[i] t**i`` at full precision."""
        coeffs = [Fraction(c) for c in coeffs]
        k = next((i for i, c in enumerate(coeffs) if c != 0), None)
        if k is None:
            return self.zero()
        body = _trim(coeffs[k : k + self.precision])
        return LaurentScalar(self, valuation + k, body, self.precision)

    def inexact_zero(self, absolute_precision: int) -> "LaurentScalar":
        return LaurentScalar(self, absolute_precision, (), 0)

    def from_json(self, obj) -> "LaurentScalar":
        if not isinstance(obj, dict):
            return self.from_rational(parse_rational(obj))
        v = parse_valuation(obj["valuation"])
        coeffs = [parse_rational(c) for c in obj["coeffs"]]
        if v == INF:
            if coeffs:
                raise ValueError("zero must have empty coefficients")
            return self.zero()
        if not coeffs:
            return self.inexact_zero(v)
        if coeffs[0] == 0:
            raise ValueError("leading coefficient of a nonzero series must be nonzero")
        prec = obj.get("precision", len(coeffs))
        if prec < len(coeffs):
            raise ValueError("more coefficients than precision")
        return LaurentScalar(self, v, _trim(coeffs), prec)


def _trim(coeffs) -> tuple:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


def _integer_coeffs(coeffs) -> tuple[list, int]:
    den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


class LaurentScalar(_Scalar):
    """``t**val * sum(coeffs[i] t**i)`` known up to ``t**(val + prec)``.

    ``coeffs`` omits trailing zeros (so its length may be below ``prec``).
    """

    __slots__ = ("field", "val", "coeffs", "prec")

    def __init__(self, field: LaurentField, val, coeffs: tuple, prec):
        self.field = field
        self.val = val
        self.coeffs = coeffs
        self.prec = prec

    @property
    def precision(self):
        return self.prec

    @property
    def absolute_precision(self):
        return self.val + self.prec

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_exact_zero(self) -> bool:
        return not self.coeffs and self.val == INF

    def is_inexact_zero(self) -> bool:
        return not self.coeffs and self.val != INF

    def valuation_bound(self):
        return self.val, not self.is_inexact_zero()

    def _add(self, other: "LaurentScalar") -> "LaurentScalar":
        if self.is_exact_zero():
            return other
        if other.is_exact_zero():
            return self
        top = min(self.val + self.prec, other.val + other.prec)
        low = min(self.val, other.val)
        if top <= low:
            return self.field.inexact_zero(top)
        width = top - low
        acc = [Fraction(0)] * width
        for x in (self, other):
            shift = x.val - low
            for i, c in enumerate(x.coeffs):
                if shift + i >= width:
                    break
                acc[shift + i] += c
        k = next((i for i, c in enumerate(acc) if c != 0), None)
        if k is None:
            return self.field.inexact_zero(top)
        return LaurentScalar(self.field, low + k, _trim(acc[k:]), width - k)

    def _mul(self, other: "LaurentScalar") -> "LaurentScalar":
        if self.is_exact_zero() or other.is_exact_zero():
            return self.field.zero()
        if not self.coeffs or not other.coeffs:
            bound = min(self.val + other.val + other.prec, other.val + self.val + self.prec)
            return self.field.inexact_zero(bound)
        prec = min(self.prec, other.prec)
        n = min(prec, len(self.coeffs) + len(other.coeffs) - 1)
        # integer convolution over a common denominator; Fraction arithmetic per term is slow
        xa, da = _integer_coeffs(self.coeffs[:n])
        xb, db = _integer_coeffs(other.coeffs[:n])
        acc = [0] * n
        for i, a in enumerate(xa):
            if a:
                for j, b in enumerate(xb[: n - i]):
                    if b:
                        acc[i + j] += a * b
        den = da * db
        return LaurentScalar(self.field, self.val + other.val, _trim([Fraction(c, den) for c in acc]), prec)

    def __neg__(self):
        if not self.coeffs:
            return self
        return LaurentScalar(self.field, self.val, tuple(-c for c in self.coeffs), self.prec)

    def inverse(self) -> "LaurentScalar":
        if self.is_exact_zero():
            raise ZeroDivisionError("Laurent division by zero")
        if not self.coeffs:
            raise PrecisionError("division by an element indistinguishable from zero")
        a = self.coeffs
        inv0 = 1 / a[0]
        out = [inv0]
        for k in range(1, self.prec):
            s = sum((a[j] * out[k - j] for j in range(1, min(k, len(a) - 1) + 1)), Fraction(0))
            out.append(-inv0 * s)
        return LaurentScalar(self.field, -self.val, _trim(out), self.prec)

    def to_rational(self) -> Fraction | None:
        """The constant this series equals at working precision, if it is one."""
        if not self.coeffs:
            return Fraction(0)
        if self.val == 0 and len(self.coeffs) == 1:
            return self.coeffs[0]
        return None

    def key(self):
        return ("laurent", self.val, self.coeffs, self.prec)

    def to_json(self) -> dict:
        out = {
            "valuation": format_valuation(self.val),
            "coeffs": [format_rational(c) for c in self.coeffs],
        }
        if self.coeffs and self.prec != len(self.coeffs):
            out["precision"] = self.prec
        return out

    def __repr__(self):
        if self.is_exact_zero():
            return "0"
        if not self.coeffs:
            return f"O(t^{self.val})"
        terms = " + ".join(f"({c})*t^{self.val + i}" for i, c in enumerate(self.coeffs) if c)
        return f"{terms} + O(t^{self.val + self.prec})"


# ---------------------------------------------------------------- oracle


class RationalField:
    """Exact rationals with the p-adic valuation; the test oracle."""

    kind = "rational"
    precision = INF

    def __init__(self, prime: int):
        if not is_prime(prime):
            raise ValueError(f"{prime} is not prime")
        self.prime = prime

    @property
    def norm_base(self):
        return self.prime

    @property
    def uniformizer(self):
        return self.from_rational(self.prime)

    def __eq__(self, other):
        return isinstance(other, RationalField) and other.prime == self.prime

    def __hash__(self):
        return hash(("rational", self.prime))

    def __repr__(self):
        return f"RationalField({self.prime})"

    def config(self) -> dict:
        return {"kind": "rational", "prime": self.prime}

    def zero(self):
        return RationalScalar(self, Fraction(0))

    def one(self):
        return RationalScalar(self, Fraction(1))

    def __call__(self, value):
        if isinstance(value, RationalScalar):
            return value
        return self.from_rational(parse_rational(value))

    def from_rational(self, q):
        return RationalScalar(self, Fraction(q))

    def from_json(self, obj):
        return self.from_rational(parse_rational(obj))


class RationalScalar(_Scalar):
    __slots__ = ("field", "value")

    def __init__(self, field: RationalField, value: Fraction):
        self.field = field
        self.value = value

    precision = INF

    def is_zero(self):
        return self.value == 0

    is_exact_zero = is_zero

    def is_inexact_zero(self):
        return False

    def valuation_bound(self):
        return rational_valuation(self.value, self.field.prime), True

    def _add(self, other):
        return RationalScalar(self.field, self.value + other.value)

    def _mul(self, other):
        return RationalScalar(self.field, self.value * other.value)

    def __neg__(self):
        return RationalScalar(self.field, -self.value)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("rational division by zero")
        return RationalScalar(self.field, 1 / self.value)

    def to_rational(self):
        return self.value

    def key(self):
        return ("rational", self.value)

    def to_json(self):
        return format_rational(self.value)

    def __repr__(self):
        return str(self.value)


Field = PadicField | LaurentField | RationalField
Scalar = PadicScalar | LaurentScalar | RationalScalar


def field_from_config(cfg: dict, precision: int | None = None) -> Field:
    """Build a field from ``{kind, prime?, precision?}``."""
    kind = cfg.get("kind")
    prec = precision if precision is not None else cfg.get("precision", DEFAULT_PRECISION)
    if kind == "padic":
        if "prime" not in cfg:
            raise ValueError("padic backend needs a prime")
        return PadicField(cfg["prime"], prec)
    if kind == "laurent":
        return LaurentField(prec)
    if kind == "rational":
        return RationalField(cfg["prime"])
    raise ValueError(f"unknown backend kind {kind!r}")


def scalar_from_json(field: Field, obj) -> Scalar:
    return field.from_json(obj)


def common_field(scalars: Iterable[Scalar]) -> Field:
    fields = {s.field for s in scalars}
    if len(fields) != 1:
        raise BackendMismatch(f"expected one backend, got {sorted(map(repr, fields))}")
    return fields.pop()


# ---------------------------------------------------------------- sum-of-squares law


class FuWitness:
    """A tuple with ``|sum l_j^2| < max |l_j|^2``."""

    __slots__ = ("tuple", "lhs_valuation", "rhs_valuation")

    def __init__(self, tup, lhs_valuation, rhs_valuation):
        self.tuple = tuple(tup)
        self.lhs_valuation = lhs_valuation
        self.rhs_valuation = rhs_valuation

    def __repr__(self):
        return (
            f"FuWitness({list(self.tuple)!r}, lhs_valuation={self.lhs_valuation}, "
            f"rhs_valuation={self.rhs_valuation})"
        )

    def to_json(self) -> dict:
        return {
            "tuple": [x.to_json() for x in self.tuple],
            "lhs_valuation": format_valuation(self.lhs_valuation),
            "rhs_valuation": format_valuation(self.rhs_valuation),
        }


def check_fu_tuple(tup: Sequence[Scalar]) -> FuWitness | None:
    """Test ``|sum l_j^2| = max_j |l_j|^2`` on one tuple.

    Returns ``None`` when the identity holds, else a :class:`FuWitness`.
    """
    if not tup:
        raise ValueError("empty tuple")
    common_field(tup)
    squares = [x * x for x in tup]
    return _fu_compare(tup, squares)


def _fu_compare(tup, squares):
    total = squares[0]
    for s in squares[1:]:
        total = total + s
    rhs = min(2 * x.valuation for x in tup)
    lhs, exact = total.valuation_bound()
    if not exact and lhs <= rhs:
        raise PrecisionError("sum of squares cancelled below working precision")
    if lhs == rhs:
        return None
    return FuWitness(tup, lhs, rhs)


def fu_candidates(field: Field, digit_bound: int) -> list[Scalar]:
    """Candidate scalars for :func:`fu_search`, in enumeration order.

    p-adic: the integers ``0..digit_bound`` (single base-p digits when
    ``digit_bound < p``).  Laurent: ``c0 + c1*t`` with integer
    ``c0, c1`` in ``[-digit_bound, digit_bound]``, ordered lexicographically
    on ``(c0, c1)``.
    """
    if digit_bound < 1:
        raise ValueError("digit_bound must be >= 1")
    if isinstance(field, LaurentField):
        rng = range(-digit_bound, digit_bound + 1)
        return [field.series([c0, c1]) for c0, c1 in itertools.product(rng, rng)]
    return [field.from_rational(k) for k in range(digit_bound + 1)]


def fu_search(field: Field, digit_bound: int, tuple_length_bound: int) -> FuWitness | None:
    """Search small tuples for a violation of ``|sum l_j^2| = max |l_j|^2``.

    Tuples are visited by increasing length, lexicographically within a
    length.  Only non-decreasing tuples are tested: the sum is symmetric,
    and the sorted rearrangement of the lexicographically first witness is
    itself a witness that is no larger, so the first hit is the same.
    """
    if tuple_length_bound < 1:
        raise ValueError("tuple_length_bound must be >= 1")
    cands = fu_candidates(field, digit_bound)
    squares = [x * x for x in cands]
    for length in range(1, tuple_length_bound + 1):
        for idx in itertools.combinations_with_replacement(range(len(cands)), length):
            found = _fu_compare([cands[i] for i in idx], [squares[i] for i in idx])
            if found is not None:
                return found
    return None
