"""Grothendieck rings: R_n = Z[q]/(1 + q + ... + q^(n-1)), split classes, fusion tables."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .exactfield import cyclotomic_polynomial
from .family import GROUP_RING, TAFT, HopfFamily, taft, truncated
from .grmod import Decomposition, GradedModule, balanced, decompose, tensor
from .laurent import LaurentPoly
from .stable import stable_decompose


class GrothError(ValueError):
    pass


def _format_poly(coeffs, var="q") -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


@dataclass(frozen=True)
class RnElem:
    """sum c_k q^k with k < n - 1; q^(n-1) is always rewritten away."""

    n: int
    coeffs: tuple

    def __post_init__(self):
        if self.n < 2:
            raise GrothError(f"R_n needs n >= 2, got {self.n}")
        object.__setattr__(self, "coeffs", _canonical(self.n, self.coeffs))

    @classmethod
    def zero(cls, n: int) -> RnElem:
        return cls(n, ())

    @classmethod
    def one(cls, n: int) -> RnElem:
        return cls(n, (1,))

    @classmethod
    def q_power(cls, n: int, k: int, coeff: int = 1) -> RnElem:
        c = [0] * n
        c[k % n] = coeff
        return cls(n, tuple(c))

    def _same(self, other: RnElem):
        if not isinstance(other, RnElem):
            raise GrothError("expected an RnElem")
        if other.n != self.n:
            raise GrothError(f"modulus mismatch: R_{self.n} vs R_{other.n}")

    def __add__(self, other: RnElem) -> RnElem:
        self._same(other)
        return RnElem(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> RnElem:
        return RnElem(self.n, tuple(-a for a in self.coeffs))

    def __sub__(self, other: RnElem) -> RnElem:
        return self + (-other)

    def __mul__(self, other: RnElem) -> RnElem:
        return rn_mul(self, other)

    def scale(self, k: int) -> RnElem:
        return RnElem(self.n, tuple(k * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        return _format_poly(self.coeffs)


def _canonical(n: int, coeffs) -> tuple:
    full = [0] * n
    for k, c in enumerate(coeffs):
        full[k % n] += c
    top = full[n - 1]
    return tuple(full[k] - top for k in range(n - 1))


def rn_mul(a: RnElem, b: RnElem) -> RnElem:
    a._same(b)
    n = a.n
    out = [0] * n
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                out[(i + j) % n] += x * y
    return RnElem(n, tuple(out))


def reduce_mod_cyclotomic(x: RnElem) -> tuple:
    """Image in Z[q]/(Phi_n), as coefficients of degree < phi(n).

    For prime n this is a bijection; for composite n it is a proper quotient.
    """
    phi = list(cyclotomic_polynomial(x.n))
    deg = len(phi) - 1
    rem = list(x.coeffs) + [0] * max(0, deg - len(x.coeffs))
    for k in range(len(rem) - 1, deg - 1, -1):
        c = rem[k]
        if c:
            for t, p in enumerate(phi):
                rem[k - deg + t] -= c * p
    return tuple(rem[:deg])


def class_of(M: GradedModule) -> RnElem:
    """Class in the stable Grothendieck ring; projective summands contribute 0."""
    if M.family.kind == GROUP_RING:
        # ungraded: q would have to be 1, and R_2 at q = 1 is Z, not Z/2
        raise GrothError("the group ring is ungraded; its stable classes do not live in R_2")
    n = M.family.n
    acc = [0] * n
    for (i, j), mult in decompose(M):
        if j.denominator != 1:
            raise GrothError(f"summand V_{i}{{{j}}} has a half-integer shift; R_n has no q^(1/2)")
        for r in range(i + 1):
            acc[(int(j) + r) % n] += mult
    return RnElem(n, tuple(acc))


# ---------------------------------------------------------------------------
# split Grothendieck ring


@dataclass(frozen=True)
class VerlindeElem:
    """sum_i P_i(q^(1/2)) [V~_i] over the balanced basis i = 0, ..., n-2."""

    n: int
    coeffs: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for i, poly in self.coeffs.items():
            if not 0 <= i <= self.n - 2:
                raise GrothError(f"basis index {i} outside [0, {self.n - 2}]")
            if poly != 0:
                clean[i] = poly
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @classmethod
    def basis(cls, n: int, i: int) -> VerlindeElem:
        return cls(n, {i: LaurentPoly({0: 1})})

    def __eq__(self, other):
        if not isinstance(other, VerlindeElem):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, tuple(self.coeffs.items())))

    def __add__(self, other: VerlindeElem) -> VerlindeElem:
        c = dict(self.coeffs)
        for i, p in other.coeffs.items():
            c[i] = c[i] + p if i in c else p
        return VerlindeElem(self.n, c)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, p in self.coeffs.items():
            if p == 1:
                parts.append(f"[V~_{i}]")
            else:
                parts.append(f"({p})[V~_{i}]")
        return " + ".join(parts)


def split_class(M: GradedModule) -> VerlindeElem:
    """Stable summands V_i{j} rewritten as q^(j + i/2) [V~_i]."""
    fam = M.family
    period = 2 * fam.modulus if fam.modulus else None
    stable, _ = stable_decompose(M)
    coeffs: dict[int, LaurentPoly] = {}
    for (i, j), mult in stable:
        e2 = int(2 * j) + i
        term = LaurentPoly({e2: mult}, period)
        coeffs[i] = coeffs[i] + term if i in coeffs else term
    return VerlindeElem(fam.n, coeffs)


def fusion_set(i: int, j: int, n: int) -> list[int]:
    for name, v in (("i", i), ("j", j)):
        if not 0 <= v <= n - 2:
            raise GrothError(f"{name}={v} outside [0, {n - 2}]")
    return list(range(abs(i - j), min(i + j, 2 * n - i - j - 4) + 1, 2))


def verlinde_oracle(i: int, j: int, level: int) -> list[int]:
    """SU(2) level-l fusion support from the path-graph recursion.

    V_1 acts on the basis 0..l by the adjacency matrix of the path A_(l+1);
    V_(k+1) = V_1 V_k - V_(k-1) then gives V_j as a polynomial in V_1.
    """
    if not (0 <= i <= level and 0 <= j <= level):
        raise GrothError(f"indices ({i}, {j}) outside [0, {level}]")
    size = level + 1

    def step(vec):
        out = [0] * size
        for k, c in enumerate(vec):
            if c:
                if k > 0:
                    out[k - 1] += c
                if k + 1 < size:
                    out[k + 1] += c
        return out

    prev = [0] * size
    cur = [0] * size
    cur[i] = 1  # V_i (x) V_0
    for _ in range(j):
        nxt = [a - b for a, b in zip(step(cur), prev)]
        prev, cur = cur, nxt
    if any(c not in (0, 1) for c in cur):
        raise AssertionError("fusion coefficients outside {0, 1}")
    return [k for k, c in enumerate(cur) if c]


# ---------------------------------------------------------------------------
# fusion tables


@dataclass
class FusionTable:
    n: int
    actual: dict = dc_field(default_factory=dict)     # (i, j) -> stable Decomposition
    predicted: dict = dc_field(default_factory=dict)  # (i, j) -> Decomposition
    mismatches: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def support(self, i: int, j: int) -> list[str]:
        out = []
        for (k, shift), m in self.actual[(i, j)]:
            label = f"{k}" if shift == 0 else f"{k}{{{shift}}}"
            out.extend([label] * m)
        return out


def fusion_family(family: HopfFamily) -> HopfFamily:
    """The family itself, widened for Taft so that balanced modules exist."""
    if family.kind == TAFT and not family.half and family.taft_n % 2 == 0:
        return taft(family.taft_n, cyclic=family.cyclic, half_shifts=True)
    return family


def predicted_product(i: int, j: int, n: int) -> Decomposition:
    return Decomposition(n, {(m, Fraction(-m, 2)): 1 for m in fusion_set(i, j, n)})


def fusion_table(family: HopfFamily) -> FusionTable:
    """Stable parts of V~_i (x) V~_j against the Verlinde prediction."""
    fam = fusion_family(family)
    n = fam.n
    mods = [balanced(fam, i) for i in range(n - 1)]
    table = FusionTable(n)
    for i in range(n - 1):
        for j in range(n - 1):
            stable, _ = stable_decompose(tensor(mods[i], mods[j]))
            pred = predicted_product(i, j, n)
            if fam.modulus:
                pred = Decomposition(n, {(k, Fraction(fam.reduce(int(2 * s)), 2)): m for (k, s), m in pred})
            # store shifts relative to the balanced position
            rel = Decomposition(n, {(k, s + Fraction(k, 2)): m for (k, s), m in stable})
            table.actual[(i, j)] = rel
            table.predicted[(i, j)] = Decomposition(n, {(k, s + Fraction(k, 2)): m for (k, s), m in pred})
            if stable != pred:
                table.mismatches.append((i, j))
    return table


@dataclass
class DeviationReport:
    p: int
    m: int
    n: int
    mismatches: list
    table: FusionTable

    def lines(self) -> list[str]:
        out = []
        for i, j in self.mismatches:
            got = self.table.actual[(i, j)]
            want = self.table.predicted[(i, j)]
            out.append(f"V~_{i} (x) V~_{j}: got {balanced_str(got)}, Verlinde predicts {balanced_str(want)}")
        return out


def balanced_str(dec: Decomposition) -> str:
    parts = []
    for (k, s), mult in dec:
        label = f"V~_{k}" if s == 0 else f"V~_{k}{{{s}}}"
        parts.append(label if mult == 1 else f"{mult}*{label}")
    return " + ".join(parts) or "0"


def hm_split_deviation(p: int, m: int) -> DeviationReport:
    """Products of balanced modules over k[X]/(X^(p^m)) that break Verlinde fusion."""
    fam = truncated(p, m)
    table = fusion_table(fam)
    return DeviationReport(p, m, fam.n, list(table.mismatches), table)


__all__ = [
    "GrothError",
    "RnElem",
    "rn_mul",
    "reduce_mod_cyclotomic",
    "class_of",
    "VerlindeElem",
    "split_class",
    "fusion_set",
    "verlinde_oracle",
    "FusionTable",
    "fusion_table",
    "predicted_product",
    "hm_split_deviation",
    "DeviationReport",
    "balanced_str",
]
