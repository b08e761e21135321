"""Exact integer Laurent polynomials in one variable.

Coefficients are arbitrary-precision Python ints; exponents may be
negative.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping


@dataclass(frozen=True)
class LaurentPoly:
    """Sparse Laurent polynomial; zero coefficients are never stored."""

    coeffs: tuple[tuple[int, int], ...] = ()  # sorted (exponent, coefficient)

    @staticmethod
    def from_dict(d: Mapping[int, int]) -> "LaurentPoly":
        return LaurentPoly(tuple(sorted((e, c) for e, c in d.items() if c != 0)))

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly(((0, 1),))

    @staticmethod
    def monomial(exponent: int, coefficient: int = 1) -> "LaurentPoly":
        if coefficient == 0:
            return LaurentPoly()
        return LaurentPoly(((exponent, coefficient),))

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        d = self.as_dict()
        for e, c in other.coeffs:
            d[e] = d.get(e, 0) + c
        return LaurentPoly.from_dict(d)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.coeffs))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        d: dict[int, int] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                e = e1 + e2
                d[e] = d.get(e, 0) + c1 * c2
        return LaurentPoly.from_dict(d)

    def scale(self, coefficient: int, exponent: int = 0) -> "LaurentPoly":
        if coefficient == 0:
            return LaurentPoly()
        return LaurentPoly(tuple((e + exponent, c * coefficient)
                                 for e, c in self.coeffs))

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not defined for polynomials")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    @property
    def min_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no exponents")
        return self.coeffs[0][0]

    @property
    def max_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no exponents")
        return self.coeffs[-1][0]

    def coefficient(self, exponent: int) -> int:
        return self.as_dict().get(exponent, 0)

    def evaluate_int(self, x: int) -> int:
        """Evaluate at a nonzero integer (exact; negative exponents must clear)."""
        if any(e < 0 for e, _ in self.coeffs) and abs(x) != 1:
            raise ValueError("negative exponents only evaluate at +-1")
        return sum(c * x ** e if e >= 0 else c * x ** (-e) for e, c in self.coeffs) \
            if abs(x) == 1 else sum(c * x ** e for e, c in self.coeffs)

    def substitute_monomial(self, exponent_scale: int) -> "LaurentPoly":
        """Replace the variable v by v^exponent_scale."""
        return LaurentPoly.from_dict({e * exponent_scale: c for e, c in self.coeffs})

    def mirror(self) -> "LaurentPoly":
        """Replace v by v^-1."""
        return LaurentPoly.from_dict({-e: c for e, c in self.coeffs})

    def divide_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division in Z[v, v^-1]; raises if the division has remainder."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        rem = self.as_dict()
        den = other.coeffs
        den_lead_exp, den_lead_coeff = den[-1]
        out: dict[int, int] = {}
        while rem:
            lead_exp = max(rem)
            lead_coeff = rem[lead_exp]
            q, r = divmod(lead_coeff, den_lead_coeff)
            if r != 0:
                raise ValueError("inexact polynomial division")
            shift = lead_exp - den_lead_exp
            out[shift] = out.get(shift, 0) + q
            for e, c in den:
                e2 = e + shift
                v = rem.get(e2, 0) - q * c
                if v:
                    rem[e2] = v
                elif e2 in rem:
                    del rem[e2]
        return LaurentPoly.from_dict(out)

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly.from_dict({e - 1: c * e for e, c in self.coeffs if e != 0})

    def to_string(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in reversed(self.coeffs):
            if e == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                exp = var if e == 1 else f"{var}^{e}"
                term = f"{mag}{exp}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, term))
        first_sign, first_term = parts[0]
        text = (("-" if first_sign == "-" else "") + first_term)
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text

    def __str__(self) -> str:
        return self.to_string()


def poly_to_json(p: LaurentPoly, var: str, half_powers: bool = False) -> dict:
    """JSON form with coefficients as decimal strings (arbitrary size)."""
    return {
        "var": var,
        "halfPowers": half_powers,
        "terms": [[e, str(c)] for e, c in p.coeffs],
    }


def poly_from_json(obj: Mapping) -> LaurentPoly:
    return LaurentPoly.from_dict({int(e): int(c) for e, c in obj["terms"]})
