"""Exact scalar fields and dense linear algebra.

Two kinds of fields are supported: prime fields F_p and cyclotomic number
fields Q(zeta_n).  Field objects operate on *raw* values (``int`` for F_p,
``(coeffs, den)`` pairs for Q(zeta_n)) so that elimination loops stay cheap;
:class:`Scalar` wraps a raw value with its field for user-facing arithmetic.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

MAX_PRIME = 97
MAX_ROOT_ORDER = 128

_self_check = os.environ.get("HOPFOLOG_SELF_CHECK", "") not in ("", "0")


class FieldError(ValueError):
    """Bad field parameters, mixed fields, or an unparseable literal."""


class DimensionError(ValueError):
    """Matrix shapes do not fit together."""


class InconsistentSystem(ArithmeticError):
    pass


def set_self_check(flag: bool) -> None:
    """Verify every solve by back-substitution (used by the test suite)."""
    global _self_check
    _self_check = bool(flag)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


# ---------------------------------------------------------------------------
# prime fields


class PrimeField:
    """The field F_p; raw values are ints in ``range(p)``."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p > MAX_PRIME:
            raise FieldError(f"prime {p} exceeds the bound {MAX_PRIME}")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"F_{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __call__(self, value) -> Scalar:
        return Scalar(self, self.coerce(value))

    def coerce(self, value):
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldError(f"cannot coerce {value.field} element into {self}")
            return value.value
        if isinstance(value, Fraction):
            return self.div(value.numerator % self.p, value.denominator % self.p)
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, str):
            return self.parse(value)
        raise FieldError(f"cannot coerce {value!r} into {self}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a) -> bool:
        return a == 0

    def eq(self, a, b) -> bool:
        return a == b

    def from_int(self, k: int):
        return k % self.p

    def random(self, rng):
        return rng.randrange(self.p)

    def elements(self):
        return range(self.p)

    def parse(self, text: str):
        s = text.strip()
        m = re.fullmatch(r"([+-]?\d+)(?:/([+-]?\d+))?", s)
        if not m:
            raise FieldError(f"bad F_{self.p} literal {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den % self.p == 0:
            raise FieldError(f"denominator divisible by {self.p} in {text!r}")
        return self.div(num % self.p, den % self.p)

    def format(self, a) -> str:
        return str(a)


# ---------------------------------------------------------------------------
# cyclotomic fields


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials (lowest degree first) by a monic divisor."""
    num = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quot = [0] * max(len(num) - dd, 1)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            quot[k - dd] = c
            for t in range(dd + 1):
                num[k - dd + t] -= c * den[t]
    rem = num[:dd] or [0]
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Phi_n as integer coefficients, lowest degree first.

    Computed as (x^n - 1) / prod_{d | n, d < n} Phi_d.
    """
    if n < 1:
        raise FieldError("cyclotomic index must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def _normalize(coeffs, den):
    if den < 0:
        coeffs = [-c for c in coeffs]
        den = -den
    g = den
    for c in coeffs:
        if c:
            g = math.gcd(g, c)
            if g == 1:
                break
    if g != 1:
        coeffs = [c // g for c in coeffs]
        den //= g
    if not any(coeffs):
        den = 1
    return (tuple(coeffs), den)


class CyclotomicField:
    """Q(zeta_n) = Q[x]/Phi_n(x).

    A raw element is ``(coeffs, den)``: integer coefficients of
    1, zeta, ..., zeta^(phi-1) over a positive common denominator, kept in
    lowest terms.
    """

    characteristic = 0

    def __init__(self, n: int):
        if n < 1:
            raise FieldError("root order must be positive")
        if n > MAX_ROOT_ORDER:
            raise FieldError(f"root order {n} exceeds the bound {MAX_ROOT_ORDER}")
        self.n = n
        self.modulus = cyclotomic_polynomial(n)
        self.degree = len(self.modulus) - 1
        d = self.degree
        self.zero = ((0,) * d, 1)
        self.one = ((1,) + (0,) * (d - 1), 1)
        # x^k mod Phi_n for d <= k <= 2d - 2
        self._reduce = {}
        cur = [0] * d + [1]
        for k in range(d, 2 * d - 1):
            _, rem = _poly_divmod_int(cur, list(self.modulus))
            self._reduce[k] = tuple(rem + [0] * (d - len(rem)))
            cur = [0] + cur
        self._powers = [self._reduce_poly([0] * k + [1]) for k in range(n)]
        self._units = [k for k in range(2, n) if math.gcd(k, n) == 1]

    def __repr__(self):
        return f"Q(zeta_{self.n})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.n == self.n

    def __hash__(self):
        return hash(("Q", self.n))

    def __call__(self, value) -> Scalar:
        return Scalar(self, self.coerce(value))

    def _reduce_poly(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        d = self.degree
        out = list(coeffs[:d]) + [0] * max(0, d - len(coeffs))
        for k in range(d, len(coeffs)):
            c = coeffs[k]
            if c:
                if k in self._reduce:
                    red = self._reduce[k]
                else:
                    _, rem = _poly_divmod_int([0] * k + [1], list(self.modulus))
                    red = tuple(rem + [0] * (d - len(rem)))
                for t in range(d):
                    if red[t]:
                        out[t] += c * red[t]
        return tuple(out)

    def coerce(self, value):
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldError(f"cannot coerce {value.field} element into {self}")
            return value.value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return _normalize([value] + [0] * (self.degree - 1), 1)
        if isinstance(value, Fraction):
            return _normalize(
                [value.numerator] + [0] * (self.degree - 1), value.denominator
            )
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, tuple) and len(value) == 2:
            return _normalize(list(value[0]), value[1])
        raise FieldError(f"cannot coerce {value!r} into {self}")

    def zeta(self, k: int = 1):
        """Raw value of zeta^k (k may be negative)."""
        return (self._powers[k % self.n], 1)

    def add(self, a, b):
        ca, da = a
        cb, db = b
        if da == db:
            return _normalize([x + y for x, y in zip(ca, cb)], da)
        return _normalize([x * db + y * da for x, y in zip(ca, cb)], da * db)

    def sub(self, a, b):
        ca, da = a
        cb, db = b
        if da == db:
            return _normalize([x - y for x, y in zip(ca, cb)], da)
        return _normalize([x * db - y * da for x, y in zip(ca, cb)], da * db)

    def neg(self, a):
        return (tuple(-c for c in a[0]), a[1])

    def mul(self, a, b):
        ca, da = a
        cb, db = b
        d = self.degree
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    if y:
                        prod[i + j] += x * y
        if not any(prod):
            return self.zero
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                red = self._reduce[k]
                for t in range(d):
                    if red[t]:
                        out[t] += c * red[t]
        return _normalize(out, da * db)

    def conjugate(self, a, k: int):
        """Apply the Galois automorphism zeta -> zeta^k."""
        out = [0] * self.degree
        for i, c in enumerate(a[0]):
            if c:
                pw = self._powers[(i * k) % self.n]
                for t in range(self.degree):
                    if pw[t]:
                        out[t] += c * pw[t]
        return _normalize(out, a[1])

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        # a^{-1} = (product of the other conjugates) / norm(a)
        rest = self.one
        for k in self._units:
            rest = self.mul(rest, self.conjugate(a, k))
        norm = self.mul(a, rest)
        coeffs, den = norm
        if any(coeffs[1:]):
            raise ArithmeticError("norm is not rational; modulus not irreducible?")
        num = coeffs[0]
        rc, rd = rest
        return _normalize([c * den for c in rc], rd * num)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return not any(a[0])

    def eq(self, a, b) -> bool:
        return a == b

    def from_int(self, k: int):
        return self.coerce(k)

    def random(self, rng, bound: int = 3, den_bound: int = 3):
        coeffs = [rng.randint(-bound, bound) for _ in range(self.degree)]
        return _normalize(coeffs, rng.randint(1, den_bound))

    def evaluate_poly(self, coeffs: Sequence) -> tuple:
        """Raw value of sum coeffs[k] zeta^k for rational coefficients."""
        acc = self.zero
        for k, c in enumerate(coeffs):
            if c:
                c = Fraction(c)
                term = self.mul(self.zeta(k), self.coerce(c))
                acc = self.add(acc, term)
        return acc

    _TERM = re.compile(
        r"\s*([+-]?)\s*(?:(\d+)(?:/(\d+))?)?\s*(\*?\s*z(?:\s*\^\s*(-?\d+))?)?\s*"
    )

    def parse(self, text: str):
        """Parse a polynomial in ``z`` with rational coefficients, e.g. ``-1/2*z^3 + z - 4``."""
        s = text.strip()
        if not s:
            raise FieldError("empty cyclotomic literal")
        acc = self.zero
        pos = 0
        first = True
        while pos < len(s):
            m = self._TERM.match(s, pos)
            if not m or m.end() == pos:
                raise FieldError(f"bad cyclotomic literal {text!r} at column {pos + 1}")
            sign, num, den, zpart, exp = m.groups()
            if not sign and not first:
                raise FieldError(f"missing operator in {text!r} at column {pos + 1}")
            if num is None and zpart is None:
                raise FieldError(f"bad cyclotomic literal {text!r} at column {pos + 1}")
            if zpart is not None and zpart.lstrip().startswith("*") and num is None:
                raise FieldError(f"bad cyclotomic literal {text!r} at column {pos + 1}")
            coef = Fraction(int(num) if num else 1, int(den) if den else 1)
            if sign == "-":
                coef = -coef
            k = 0
            if zpart is not None:
                k = int(exp) if exp is not None else 1
            acc = self.add(acc, self.mul(self.coerce(coef), self.zeta(k)))
            pos = m.end()
            first = False
        return acc

    def format(self, a) -> str:
        coeffs, den = a
        terms = []
        for k, c in enumerate(coeffs):
            if not c:
                continue
            q = Fraction(c, den)
            mag = abs(q)
            if k == 0:
                body = str(mag)
            else:
                zz = "z" if k == 1 else f"z^{k}"
                body = zz if mag == 1 else f"{mag}*{zz}"
            terms.append(("-" if q < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sgn, body in terms[1:]:
            out += f" {sgn} {body}"
        return out


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def cyclotomic_field(n: int) -> CyclotomicField:
    return CyclotomicField(n)


Field = "PrimeField | CyclotomicField"


# ---------------------------------------------------------------------------
# scalars


class Scalar:
    """An element of a prime or cyclotomic field, with operator overloading."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldError(f"mixed fields {self.field} and {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.div(o, self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, k: int):
        base = self.value
        if k < 0:
            base = self.field.inv(base)
            k = -k
        acc = self.field.one
        while k:
            if k & 1:
                acc = self.field.mul(acc, base)
            base = self.field.mul(base, base)
            k >>= 1
        return Scalar(self.field, acc)

    def inverse(self) -> Scalar:
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"{self.field.format(self.value)} in {self.field!r}"

    def __str__(self):
        return self.field.format(self.value)


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Dense row-major matrix of raw field values.

    Treated as immutable: operations return new matrices.
    """

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, rows: int, cols: int, data: list[list] | None = None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if data is None:
            z = field.zero
            data = [[z] * cols for _ in range(rows)]
        elif len(data) != rows or any(len(r) != cols for r in data):
            raise DimensionError(f"data does not have shape {rows}x{cols}")
        self.data = data

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field, n):
        m = cls(field, n, n)
        for i in range(n):
            m.data[i][i] = field.one
        return m

    @classmethod
    def from_rows(cls, field, rows: Sequence[Sequence]) -> Matrix:
        """Build from nested sequences of ints, Fractions, strings or Scalars."""
        data = [[field.coerce(x) for x in row] for row in rows]
        ncols = len(data[0]) if data else 0
        return cls(field, len(data), ncols, data)

    @classmethod
    def from_columns(cls, field, nrows: int, columns: Sequence[Sequence]) -> Matrix:
        m = cls(field, nrows, len(columns))
        for c, col in enumerate(columns):
            for r in range(nrows):
                m.data[r][c] = col[r]
        return m

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, rc) -> Scalar:
        r, c = rc
        return Scalar(self.field, self.data[r][c])

    def raw(self, r, c):
        return self.data[r][c]

    def copy(self) -> Matrix:
        return Matrix(self.field, self.rows, self.cols, [list(r) for r in self.data])

    def column(self, c) -> list:
        return [row[c] for row in self.data]

    def columns(self) -> list[list]:
        return [self.column(c) for c in range(self.cols)]

    def _check_same(self, other: Matrix):
        if self.field != other.field:
            raise FieldError(f"mixed fields {self.field} and {other.field}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        add = self.field.add
        return Matrix(
            self.field,
            self.rows,
            self.cols,
            [[add(x, y) for x, y in zip(r, s)] for r, s in zip(self.data, other.data)],
        )

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {self.shape} and {other.shape}")
        sub = self.field.sub
        return Matrix(
            self.field,
            self.rows,
            self.cols,
            [[sub(x, y) for x, y in zip(r, s)] for r, s in zip(self.data, other.data)],
        )

    def __neg__(self) -> Matrix:
        neg = self.field.neg
        return Matrix(self.field, self.rows, self.cols, [[neg(x) for x in r] for r in self.data])

    def scale(self, c) -> Matrix:
        c = self.field.coerce(c)
        mul = self.field.mul
        return Matrix(self.field, self.rows, self.cols, [[mul(c, x) for x in r] for r in self.data])

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        F = self.field
        out = Matrix(F, self.rows, other.cols)
        if isinstance(F, PrimeField):
            p = F.p
            for i, row in enumerate(self.data):
                acc = [0] * other.cols
                for k, a in enumerate(row):
                    if a:
                        brow = other.data[k]
                        for j, b in enumerate(brow):
                            if b:
                                acc[j] += a * b
                out.data[i] = [x % p for x in acc]
            return out
        add, mul, is_zero = F.add, F.mul, F.is_zero
        for i, row in enumerate(self.data):
            acc = list(out.data[i])
            for k, a in enumerate(row):
                if is_zero(a):
                    continue
                brow = other.data[k]
                for j, b in enumerate(brow):
                    if not is_zero(b):
                        acc[j] = add(acc[j], mul(a, b))
            out.data[i] = acc
        return out

    def transpose(self) -> Matrix:
        return Matrix(self.field, self.cols, self.rows, [list(c) for c in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)])

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> Matrix:
        return Matrix(
            self.field,
            len(row_idx),
            len(col_idx),
            [[self.data[r][c] for c in col_idx] for r in row_idx],
        )

    def is_zero(self) -> bool:
        iz = self.field.is_zero
        return all(iz(x) for r in self.data for x in r)

    def nonzero_entries(self):
        iz = self.field.is_zero
        for r, row in enumerate(self.data):
            for c, x in enumerate(row):
                if not iz(x):
                    yield r, c, x

    def kron(self, other: Matrix) -> Matrix:
        self._check_same(other)
        F = self.field
        out = Matrix(F, self.rows * other.rows, self.cols * other.cols)
        mul = F.mul
        for r1, c1, a in self.nonzero_entries():
            for r2, c2, b in other.nonzero_entries():
                out.data[r1 * other.rows + r2][c1 * other.cols + c2] = mul(a, b)
        return out

    def __pow__(self, k: int) -> Matrix:
        if self.rows != self.cols:
            raise DimensionError("power of a non-square matrix")
        acc = Matrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                acc = acc @ base
            base = base @ base
            k >>= 1
        return acc

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, tuple(map(tuple, self.data))))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.data)
        return f"Matrix({self.field!r}, {self.rows}x{self.cols}, [{body}])"


def hstack(field, blocks: Sequence[Matrix], rows: int | None = None) -> Matrix:
    if not blocks:
        return Matrix(field, rows or 0, 0)
    r = blocks[0].rows
    if any(b.rows != r for b in blocks):
        raise DimensionError("hstack: row counts differ")
    data = [sum((b.data[i] for b in blocks), []) for i in range(r)]
    return Matrix(field, r, sum(b.cols for b in blocks), data)


def vstack(field, blocks: Sequence[Matrix], cols: int | None = None) -> Matrix:
    if not blocks:
        return Matrix(field, 0, cols or 0)
    c = blocks[0].cols
    if any(b.cols != c for b in blocks):
        raise DimensionError("vstack: column counts differ")
    data = [list(row) for b in blocks for row in b.data]
    return Matrix(field, len(data), c, data)


def block_diag(field, blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = Matrix(field, rows, cols)
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            out.data[r0 + i][c0 : c0 + b.cols] = list(b.data[i])
        r0 += b.rows
        c0 += b.cols
    return out


# ---------------------------------------------------------------------------
# elimination


def _rref_prime(p: int, rows: list[list[int]], ncols: int, limit: int | None = None):
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols if limit is None else limit):
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = pow(prow[c], p - 2, p)
        if inv != 1:
            prow = [x * inv % p for x in prow]
            rows[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in nz:
                        row[j] = (row[j] - f * prow[j]) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def _rref_generic(F, rows: list[list], ncols: int, limit: int | None = None):
    is_zero, mul, sub = F.is_zero, F.mul, F.sub
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols if limit is None else limit):
        piv = None
        for i in range(r, nrows):
            if not is_zero(rows[i][c]):
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        if prow[c] != F.one:
            inv = F.inv(prow[c])
            prow = [x if is_zero(x) else mul(inv, x) for x in prow]
            rows[r] = prow
        nz = [j for j in range(c, ncols) if not is_zero(prow[j])]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if not is_zero(f):
                    row = rows[i]
                    for j in nz:
                        row[j] = sub(row[j], mul(f, prow[j]))
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rref_rows(field, rows: Iterable[Sequence], ncols: int, limit: int | None = None):
    """Gauss-Jordan elimination with first-nonzero pivoting.

    Returns ``(nonzero_rows, pivot_columns)``.  With ``limit`` only the first
    ``limit`` columns are used as pivot candidates.
    """
    work, piv = _eliminate(field, rows, ncols, limit)
    return work[: len(piv)], piv


def _eliminate(field, rows, ncols, limit=None):
    work = [list(r) for r in rows]
    if isinstance(field, PrimeField):
        return _rref_prime(field.p, work, ncols, limit)
    return _rref_generic(field, work, ncols, limit)


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    rows, piv = rref_rows(A.field, A.data, A.cols)
    return Matrix(A.field, len(rows), A.cols, rows), piv


def rank(A: Matrix) -> int:
    """Exact rank over the matrix's field."""
    if A.rows == 0 or A.cols == 0:
        return 0
    if A.rows > A.cols:
        A = A.transpose()
    return len(rref_rows(A.field, A.data, A.cols)[1])


def row_space_basis(field, vectors: Iterable[Sequence], length: int) -> list[list]:
    """RREF basis of the span of ``vectors``."""
    rows, _ = rref_rows(field, vectors, length)
    return rows


def nullspace(A: Matrix) -> Matrix:
    """Columns form a basis of {x : A x = 0}."""
    F = A.field
    rows, piv = rref_rows(F, A.data, A.cols)
    free = [c for c in range(A.cols) if c not in set(piv)]
    basis = []
    for fc in free:
        v = [F.zero] * A.cols
        v[fc] = F.one
        for r, pc in enumerate(piv):
            v[pc] = F.neg(rows[r][fc])
        basis.append(v)
    return Matrix.from_columns(F, A.cols, basis)


@dataclass(frozen=True)
class Solution:
    """Result of :func:`solve_linear_system`.

    ``particular`` is ``None`` when the system is inconsistent.
    """

    particular: Matrix | None
    nullspace: Matrix
    pivots: tuple[int, ...]

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def nullity(self) -> int:
        return self.nullspace.cols


def solve_linear_system(A: Matrix, B: Matrix) -> Solution:
    """Solve ``A x = B`` exactly (``B`` may have several columns)."""
    if A.field != B.field:
        raise FieldError(f"mixed fields {A.field} and {B.field}")
    if A.rows != B.rows:
        raise DimensionError(f"row counts differ: {A.rows} vs {B.rows}")
    F = A.field
    aug = [list(a) + list(b) for a, b in zip(A.data, B.data)]
    rows, piv = _eliminate(F, aug, A.cols + B.cols, limit=A.cols)
    free = [c for c in range(A.cols) if c not in set(piv)]
    basis = []
    for fc in free:
        v = [F.zero] * A.cols
        v[fc] = F.one
        for r, pc in enumerate(piv):
            v[pc] = F.neg(rows[r][fc])
        basis.append(v)
    ns = Matrix.from_columns(F, A.cols, basis)
    # rows below the pivots have zero A-part
    if any(not F.is_zero(x) for row in rows[len(piv):] for x in row[A.cols:]):
        return Solution(None, ns, tuple(piv))
    x = Matrix(F, A.cols, B.cols)
    for r, pc in enumerate(piv):
        x.data[pc] = list(rows[r][A.cols :])
    if _self_check:
        if A @ x != B:
            raise AssertionError("back-substitution check failed")
        if not (A @ ns).is_zero():
            raise AssertionError("nullspace check failed")
    return Solution(x, ns, tuple(piv))


def inverse(A: Matrix) -> Matrix:
    if A.rows != A.cols:
        raise DimensionError("inverse of a non-square matrix")
    sol = solve_linear_system(A, Matrix.identity(A.field, A.rows))
    if not sol.consistent or sol.nullity:
        raise ZeroDivisionError("matrix is singular")
    return sol.particular
