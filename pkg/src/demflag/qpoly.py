"""Exact polynomials in ``q`` over the integers, q-binomials, and truncated
power series in ``u`` whose coefficients are such polynomials.

Coefficients are Python ints, so nothing ever overflows.  Polynomials are
stored densely as a tuple indexed by degree with trailing zeros trimmed,
which makes equality and hashing plain tuple comparisons.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, ParseError

__all__ = [
    "QPolynomial",
    "USeries",
    "ZERO",
    "ONE",
    "Q",
    "monomial",
    "qbinom",
    "qint",
]


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class QPolynomial:
    """Immutable polynomial in ``q`` with integer coefficients.

    ``QPolynomial([1, 0, 2])`` is ``1 + 2*q^2``.  Use :meth:`from_dict` for a
    sparse ``{degree: coefficient}`` description.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        object.__setattr__(self, "_c", _trim(c))

    def __setattr__(self, name, value):
        raise AttributeError("QPolynomial is immutable")

    @classmethod
    def from_dict(cls, terms: Mapping[int, int]) -> "QPolynomial":
        if not terms:
            return ZERO
        degs = [int(d) for d in terms]
        if min(degs) < 0:
            raise DomainError("negative degree in polynomial")
        c = [0] * (max(degs) + 1)
        for d, v in terms.items():
            c[int(d)] += int(v)
        return cls(c)

    # -- inspection -------------------------------------------------------

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self._c) - 1

    @property
    def valuation(self) -> int:
        """Lowest degree carrying a nonzero coefficient; -1 for zero."""
        for d, v in enumerate(self._c):
            if v:
                return d
        return -1

    def terms(self) -> dict[int, int]:
        return {d: v for d, v in enumerate(self._c) if v}

    def __getitem__(self, degree: int) -> int:
        if 0 <= degree < len(self._c):
            return self._c[degree]
        return 0

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self._c)

    def eval_q1(self) -> int:
        return sum(self._c)

    def __call__(self, q):
        acc = 0
        for v in reversed(self._c):
            acc = acc * q + v
        return acc

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "QPolynomial":
        if isinstance(other, QPolynomial):
            return other
        if isinstance(other, int):
            return QPolynomial((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for d, v in enumerate(b):
            out[d] += v
        return QPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial(-v for v in self._c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative power of a polynomial")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, a: int) -> "QPolynomial":
        """Multiply by ``q**a``; this is the grading shift by ``a``."""
        if a < 0:
            raise DomainError(f"grading shift must be non-negative, got {a}")
        if not self._c or a == 0:
            return self
        return QPolynomial((0,) * a + self._c)

    def subs_q_power(self, k: int) -> "QPolynomial":
        """Substitute ``q -> q**k``."""
        if k < 1:
            raise DomainError("q-power substitution needs k >= 1")
        if k == 1 or not self._c:
            return self
        out = [0] * (k * (len(self._c) - 1) + 1)
        for d, v in enumerate(self._c):
            out[k * d] = v
        return QPolynomial(out)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, QPolynomial):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == _trim((other,))
        return NotImplemented

    def __hash__(self):
        return hash(("QPolynomial", self._c))

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict[str, int]:
        """``{"degree": coefficient}`` with ascending degree keys."""
        return {str(d): v for d, v in enumerate(self._c) if v}

    @classmethod
    def from_json(cls, obj: Mapping[str, int]) -> "QPolynomial":
        try:
            return cls.from_dict({int(k): int(v) for k, v in obj.items()})
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad polynomial JSON: {obj!r}") from exc

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for d, v in enumerate(self._c):
            if not v:
                continue
            mag = abs(v)
            if d == 0:
                body = str(mag)
            else:
                var = "q" if d == 1 else f"q^{d}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(body if v > 0 else "-" + body)
            else:
                parts.append(("+ " if v > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"QPolynomial({str(self)!r})"

    _TERM = re.compile(r"([+-])?\s*(\d+)?\s*(\*)?\s*(q(?:\^(\d+))?)?")

    @classmethod
    def parse(cls, text: str) -> "QPolynomial":
        """Inverse of ``str``: accepts sums like ``1 + 2*q - q^3``."""
        s = text.strip()
        if not s:
            raise ParseError("empty polynomial string")
        if s == "0":
            return ZERO
        terms: dict[int, int] = {}
        pos = 0
        first = True
        while pos < len(s):
            while pos < len(s) and s[pos].isspace():
                pos += 1
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ParseError(f"cannot parse polynomial at {s[pos:]!r}")
            sign, num, star, var, exp = m.groups()
            if sign is None and not first:
                raise ParseError(f"missing operator before {s[pos:]!r}")
            if num is None and var is None:
                raise ParseError(f"dangling sign in {text!r}")
            if bool(star) != (num is not None and var is not None):
                raise ParseError(f"coefficient and q must be joined by '*' in {text!r}")
            coeff = int(num) if num is not None else 1
            if sign == "-":
                coeff = -coeff
            deg = 0 if var is None else (int(exp) if exp is not None else 1)
            terms[deg] = terms.get(deg, 0) + coeff
            pos = m.end()
            first = False
        return cls.from_dict(terms)


ZERO = QPolynomial()
ONE = QPolynomial((1,))
Q = QPolynomial((0, 1))


def monomial(degree: int, coeff: int = 1) -> QPolynomial:
    if degree < 0:
        raise DomainError("negative degree")
    return QPolynomial((0,) * degree + (coeff,))


def qint(n: int) -> QPolynomial:
    """The q-integer ``[n]_q = 1 + q + ... + q^(n-1)``."""
    return QPolynomial((1,) * max(n, 0))


@lru_cache(maxsize=None)
def qbinom(m: int, l: int) -> QPolynomial:
    """Gaussian binomial coefficient, by the q-Pascal rule.

    Zero outside ``0 <= l <= m``.
    """
    if l < 0 or m < 0 or l > m:
        return ZERO
    if l == 0 or l == m:
        return ONE
    # [m, l] = [m-1, l-1] + q^l [m-1, l]
    return qbinom(m - 1, l - 1) + qbinom(m - 1, l).shift(l)


class USeries:
    """Power series in ``u`` with :class:`QPolynomial` coefficients, known
    exactly for powers ``0..order``.

    Every binary operation keeps the smaller of the two orders, so a value
    never claims more precision than its inputs had.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable[QPolynomial], order: int):
        if order < 0:
            raise DomainError("truncation order must be non-negative")
        c = list(coeffs)[: order + 1]
        c += [ZERO] * (order + 1 - len(c))
        self.order = order
        self.coeffs = tuple(QPolynomial._coerce(x) for x in c)

    @classmethod
    def from_dict(cls, terms: Mapping[int, QPolynomial], order: int) -> "USeries":
        c = [ZERO] * (order + 1)
        for n, p in terms.items():
            if 0 <= n <= order:
                c[n] = c[n] + p
        return cls(c, order)

    def __getitem__(self, n: int) -> QPolynomial:
        if n > self.order:
            raise DomainError(f"u^{n} is beyond the truncation order {self.order}")
        return self.coeffs[n] if n >= 0 else ZERO

    def truncate(self, order: int) -> "USeries":
        return USeries(self.coeffs, min(order, self.order))

    def __add__(self, other: "USeries") -> "USeries":
        n = min(self.order, other.order)
        return USeries((self.coeffs[i] + other.coeffs[i] for i in range(n + 1)), n)

    def __neg__(self) -> "USeries":
        return USeries((-c for c in self.coeffs), self.order)

    def __sub__(self, other: "USeries") -> "USeries":
        return self + (-other)

    def __mul__(self, other) -> "USeries":
        if isinstance(other, (QPolynomial, int)):
            return USeries((c * other for c in self.coeffs), self.order)
        n = min(self.order, other.order)
        out = [ZERO] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return USeries(out, n)

    __rmul__ = __mul__

    def shift_u(self, b: int) -> "USeries":
        """Multiply by ``u**b``; the result is exact one power further per step."""
        return USeries([ZERO] * b + list(self.coeffs), self.order + b)

    def scale_u(self, a: int, c: int = 1) -> "USeries":
        """Substitute ``u -> c * q**a * u``: the ``u^n`` coefficient gets ``c^n q^(a n)``."""
        return USeries(
            ((p * c**n).shift(a * n) for n, p in enumerate(self.coeffs)), self.order
        )

    def u_power(self, k: int) -> "USeries":
        """Substitute ``u -> u**k``."""
        if k < 1:
            raise DomainError("u-power substitution needs k >= 1")
        order = k * self.order + k - 1
        out = [ZERO] * (order + 1)
        for n, p in enumerate(self.coeffs):
            out[k * n] = p
        return USeries(out, order)

    def q_power(self, k: int) -> "USeries":
        """Substitute ``q -> q**k`` in every coefficient."""
        return USeries((p.subs_q_power(k) for p in self.coeffs), self.order)

    def eval_q1(self) -> list[int]:
        return [p.eval_q1() for p in self.coeffs]

    def __eq__(self, other):
        if not isinstance(other, USeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def agrees_with(self, other: "USeries", order: int | None = None) -> bool:
        """Coefficient equality up to ``order`` (default: the common order)."""
        n = min(self.order, other.order)
        if order is not None:
            if order > n:
                raise DomainError(f"cannot compare to order {order}; only {n} is exact")
            n = order
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        terms = []
        for n, p in enumerate(self.coeffs):
            if p:
                var = "" if n == 0 else ("u" if n == 1 else f"u^{n}")
                terms.append(f"({p})" + (f"*{var}" if var else ""))
        body = " + ".join(terms) if terms else "0"
        return f"USeries({body} + O(u^{self.order + 1}))"

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coefficients": {str(n): p.to_json() for n, p in enumerate(self.coeffs) if p},
        }
