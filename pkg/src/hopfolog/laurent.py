"""Laurent polynomials in q^(1/2) with integer coefficients."""

from __future__ import annotations

from fractions import Fraction


class LaurentPoly:
    """Sum of c * q^(e/2), stored as ``{e: c}`` with doubled exponents.

    ``period`` (doubled) makes exponents cyclic, as for Z_n-graded modules
    where q^n = 1.
    """

    __slots__ = ("terms", "period")

    def __init__(self, terms=None, period: int | None = None):
        self.period = period
        out: dict[int, int] = {}
        for e, c in (terms or {}).items():
            if period:
                e %= period
            out[e] = out.get(e, 0) + c
        self.terms = {e: c for e, c in out.items() if c}

    @classmethod
    def monomial(cls, exponent, coeff: int = 1, period=None) -> LaurentPoly:
        e2 = Fraction(exponent) * 2
        if e2.denominator != 1:
            raise ValueError(f"exponent {exponent} is not a half-integer")
        return cls({int(e2): coeff}, period)

    def _check(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly({0: int(other)}, self.period)
        if other.period != self.period:
            raise ValueError("mixing cyclic and non-cyclic Laurent polynomials")
        return other

    def __add__(self, other):
        other = self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return LaurentPoly(t, self.period)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.period)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        t: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                t[e1 + e2] = t.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(t, self.period)

    __rmul__ = __mul__

    def shifted(self, doubled: int) -> LaurentPoly:
        return LaurentPoly({e + doubled: c for e, c in self.terms.items()}, self.period)

    def coefficient(self, exponent) -> int:
        e2 = int(Fraction(exponent) * 2)
        if self.period:
            e2 %= self.period
        return self.terms.get(e2, 0)

    def evaluate_at_one(self) -> int:
        return sum(self.terms.values())

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other}, self.period)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.period == other.period and self.terms == other.terms

    def __hash__(self):
        return hash((self.period, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                mono = ""
            elif e == 2:
                mono = "q"
            elif e % 2 == 0:
                mono = f"q^{e // 2}"
            else:
                mono = f"q^({e}/2)"
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out
