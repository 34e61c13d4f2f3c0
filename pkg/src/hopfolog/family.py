"""The three Hopf algebra families and their algebra-level structure.

Modules never store the algebra: a graded module only carries degrees and the
matrix of X, with K acting by zeta^degree for the Taft family.  The full
multiplication/comultiplication tables live in :class:`HopfAlgebra`, which is
built on demand for integral and grouplike computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .exactfield import (
    Matrix,
    cyclotomic_field,
    inverse,
    is_prime,
    nullspace,
    prime_field,
    vstack,
)

MAX_TAFT_N = 64
MAX_NILPOTENCY = 4096

TRUNCATED = "truncated"
TAFT = "taft"
GROUP_RING = "groupring"


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class HopfFamily:
    """One of k[X]/(X^(p^m)), the Taft algebra H_n, or k[Z_2] in characteristic 2.

    Degrees handed around internally are *doubled* integers so that
    half-integer shifts are exact.  ``cyclic`` selects Z_n-grading (degrees
    reduced mod the nilpotency order); the group ring is ungraded.
    """

    kind: str
    p: int = 0
    m: int = 1
    taft_n: int = 0
    cyclic: bool = False
    half: bool = False

    def __post_init__(self):
        if self.kind == TRUNCATED:
            if not is_prime(self.p):
                raise FamilyError(f"truncated family needs a prime, got p={self.p}")
            if self.p > 97:
                raise FamilyError(f"p={self.p} exceeds the bound 97")
            if self.m < 1:
                raise FamilyError("m must be at least 1")
            if self.p ** self.m > MAX_NILPOTENCY:
                raise FamilyError(f"p^m = {self.p ** self.m} exceeds {MAX_NILPOTENCY}")
        elif self.kind == TAFT:
            if not 2 <= self.taft_n <= MAX_TAFT_N:
                raise FamilyError(f"Taft n must lie in [2, {MAX_TAFT_N}], got {self.taft_n}")
        elif self.kind == GROUP_RING:
            pass
        else:
            raise FamilyError(f"unknown family kind {self.kind!r}")

    # -- parameters -------------------------------------------------------

    @property
    def n(self) -> int:
        """Nilpotency order of X."""
        if self.kind == TRUNCATED:
            return self.p**self.m
        if self.kind == TAFT:
            return self.taft_n
        return 2

    @property
    def modulus(self) -> int | None:
        """Grading modulus (None for Z-grading, 1 for the ungraded group ring)."""
        if self.kind == GROUP_RING:
            return 1
        return self.n if self.cyclic else None

    @property
    def root_order(self) -> int:
        """Order of the root of unity generating the Taft scalar field."""
        n = self.taft_n
        return 2 * n if (self.half and n % 2 == 0) else n

    @cached_property
    def field(self):
        if self.kind == TRUNCATED:
            return prime_field(self.p)
        if self.kind == GROUP_RING:
            return prime_field(2)
        return cyclotomic_field(self.root_order)

    def describe(self) -> str:
        if self.kind == TRUNCATED:
            g = f"Z_{self.n}" if self.cyclic else "Z"
            return f"k[X]/(X^{self.n}) over F_{self.p}, {g}-graded"
        if self.kind == TAFT:
            g = f"Z_{self.n}" if self.cyclic else "Z"
            return f"Taft H_{self.n} over {self.field!r}, {g}-graded"
        return "k[Z_2] over F_2, ungraded (d = g + 1)"

    # -- degree arithmetic (doubled units) ---------------------------------

    def reduce(self, d2: int) -> int:
        mod = self.modulus
        return d2 % (2 * mod) if mod else d2

    def to_doubled(self, degree) -> int:
        q = Fraction(degree)
        if q.denominator not in (1, 2):
            raise FamilyError(f"degree {degree} is not a half-integer")
        return self.reduce(int(q * 2))

    def from_doubled(self, d2: int) -> Fraction:
        return Fraction(self.reduce(d2), 2)

    def zeta_half(self, d2: int):
        """Raw field value of zeta^(d2/2) for the Taft family."""
        if self.kind != TAFT:
            raise FamilyError("zeta is only defined for the Taft family")
        n, N = self.taft_n, self.root_order
        F = self.field
        if N == 2 * n:
            return F.zeta(d2)
        if n % 2 == 1:
            # zeta^((n+1)/2) squares to zeta
            return F.zeta(d2 * (n + 1) // 2)
        if d2 % 2:
            raise FamilyError(
                "half-integer degree needs sqrt(zeta); build the Taft family with half_shifts=True"
            )
        return F.zeta(d2 // 2)

    @property
    def zeta(self):
        return self.zeta_half(2)


def truncated(p: int, m: int = 1, cyclic: bool = False) -> HopfFamily:
    return HopfFamily(TRUNCATED, p=p, m=m, cyclic=cyclic)


def taft(n: int, cyclic: bool = False, half_shifts: bool = False) -> HopfFamily:
    return HopfFamily(TAFT, taft_n=n, cyclic=cyclic, half=half_shifts)


def group_ring_z2() -> HopfFamily:
    return HopfFamily(GROUP_RING, p=2)


# ---------------------------------------------------------------------------
# algebra-level structure


class HopfAlgebra:
    """Structure constants of a family's Hopf algebra in a monomial basis.

    ``mult[i][j]`` and ``comult[i]`` are sparse dicts of raw field values;
    ``words[i]`` lists the generator letters whose product is basis element i.
    """

    def __init__(self, family: HopfFamily, labels, words, mult, comult, counit, antipode, generators):
        self.family = family
        self.field = family.field
        self.labels = labels
        self.words = words
        self.dim = len(labels)
        self.mult = mult
        self.comult = comult
        self.counit = counit
        self.antipode = antipode
        self.generators = generators
        self.unit = 0

    # vectors are lists of raw values of length dim

    def basis_vector(self, i):
        F = self.field
        v = [F.zero] * self.dim
        v[i] = F.one
        return v

    def mul(self, u, v):
        F = self.field
        out = [F.zero] * self.dim
        for i, a in enumerate(u):
            if F.is_zero(a):
                continue
            for j, b in enumerate(v):
                if F.is_zero(b):
                    continue
                ab = F.mul(a, b)
                for k, c in self.mult[i][j].items():
                    out[k] = F.add(out[k], F.mul(ab, c))
        return out

    def left_mult_matrix(self, i) -> Matrix:
        F = self.field
        M = Matrix(F, self.dim, self.dim)
        for j in range(self.dim):
            for k, c in self.mult[i][j].items():
                M.data[k][j] = F.add(M.data[k][j], c)
        return M

    def comul(self, v) -> dict:
        F = self.field
        out: dict = {}
        for i, a in enumerate(v):
            if F.is_zero(a):
                continue
            for key, c in self.comult[i].items():
                out[key] = F.add(out.get(key, F.zero), F.mul(a, c))
        return {k: c for k, c in out.items() if not F.is_zero(c)}

    def apply(self, M: Matrix, v):
        return [row[0] for row in (M @ Matrix.from_columns(self.field, self.dim, [v])).data]

    @cached_property
    def antipode_inverse(self) -> Matrix:
        return inverse(self.antipode)

    def counit_of(self, v):
        F = self.field
        acc = F.zero
        for a, e in zip(v, self.counit):
            acc = F.add(acc, F.mul(a, e))
        return acc

    @cached_property
    def left_integral(self) -> list:
        """Solve h L = eps(h) L for the generators; the solution space must be a line."""
        F = self.field
        blocks = []
        for g in self.generators:
            Lg = self.left_mult_matrix(g)
            eps = self.counit[g]
            blocks.append(Lg - Matrix.identity(F, self.dim).scale(eps))
        ns = nullspace(vstack(F, blocks))
        if ns.cols != 1:
            raise FamilyError(f"left integral space has dimension {ns.cols}, expected 1")
        v = ns.column(0)
        lead = next(x for x in v if not F.is_zero(x))
        inv = F.inv(lead)
        return [F.mul(inv, x) for x in v]

    def rep_matrices(self, gens: dict[str, Matrix], size: int) -> list[Matrix]:
        """Matrices of all basis elements given matrices for the generator letters."""
        F = self.field
        out = []
        for word in self.words:
            M = Matrix.identity(F, size)
            for letter in word:
                M = M @ gens[letter]
            out.append(M)
        return out


def _word_comult(F, mult_fn, gens_delta, word):
    """Delta of a word as a dict over basis pairs, via Delta being multiplicative."""
    acc = {(0, 0): F.one}
    for letter in word:
        nxt: dict = {}
        for (a, b), c in acc.items():
            for (x, y), d in gens_delta[letter].items():
                for k1, c1 in mult_fn(a, x).items():
                    for k2, c2 in mult_fn(b, y).items():
                        val = F.mul(F.mul(c, d), F.mul(c1, c2))
                        nxt[(k1, k2)] = F.add(nxt.get((k1, k2), F.zero), val)
        acc = {k: v for k, v in nxt.items() if not F.is_zero(v)}
    return acc


@lru_cache(maxsize=None)
def hopf_algebra(family: HopfFamily) -> HopfAlgebra:
    F = family.field
    one = F.one
    if family.kind == TRUNCATED:
        n = family.n
        labels = [f"X^{a}" for a in range(n)]
        words = [["X"] * a for a in range(n)]

        def mult_fn(i, j):
            return {i + j: one} if i + j < n else {}

        mult = [[mult_fn(i, j) for j in range(n)] for i in range(n)]
        deltas = {"X": {(1, 0): one, (0, 1): one}}
        comult = [_word_comult(F, mult_fn, deltas, w) for w in words]
        counit = [one] + [F.zero] * (n - 1)
        S = Matrix(F, n, n)
        for a in range(n):
            S.data[a][a] = F.from_int((-1) ** a)
        return HopfAlgebra(family, labels, words, mult, comult, counit, S, [1])

    if family.kind == GROUP_RING:
        labels = ["1", "g"]
        words = [[], ["g"]]

        def mult_fn(i, j):
            return {(i + j) % 2: one}

        mult = [[mult_fn(i, j) for j in range(2)] for i in range(2)]
        comult = [{(0, 0): one}, {(1, 1): one}]
        counit = [one, one]
        S = Matrix.identity(F, 2)
        return HopfAlgebra(family, labels, words, mult, comult, counit, S, [1])

    # Taft: basis X^a K^b, index a*n + b
    n = family.taft_n
    zeta = family.zeta
    zpow = [F.one]
    for _ in range(n):
        zpow.append(F.mul(zpow[-1], zeta))
    labels = [f"X^{a}K^{b}" for a in range(n) for b in range(n)]
    words = [["X"] * a + ["K"] * b for a in range(n) for b in range(n)]

    def mult_fn(i, j):
        a, b = divmod(i, n)
        c, d = divmod(j, n)
        if a + c >= n:
            return {}
        # K^b X^c = zeta^(bc) X^c K^b
        return {(a + c) * n + (b + d) % n: zpow[(b * c) % n]}

    mult = [[mult_fn(i, j) for j in range(n * n)] for i in range(n * n)]
    K, X = 1, n
    deltas = {"X": {(X, 0): one, (K, X): one}, "K": {(K, K): one}}
    comult = [_word_comult(F, mult_fn, deltas, w) for w in words]
    counit = [one if i < n else F.zero for i in range(n * n)]

    def vec_mul(u, v):
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in mult_fn(i, j).items():
                    out[k] = F.add(out.get(k, F.zero), F.mul(F.mul(a, b), c))
        return {k: c for k, c in out.items() if not F.is_zero(c)}

    Kinv = {n - 1: one}
    SX = vec_mul({n - 1: F.neg(one)}, {X: one})  # -K^{-1} X
    S = Matrix(F, n * n, n * n)
    for idx, word in enumerate(words):
        # S is an anti-homomorphism: S(w1...wr) = S(wr)...S(w1)
        acc = {0: one}
        for letter in reversed(word):
            acc = vec_mul(acc, SX if letter == "X" else Kinv)
        for k, c in acc.items():
            S.data[k][idx] = c
    return HopfAlgebra(family, labels, words, mult, comult, counit, S, [X, K])
