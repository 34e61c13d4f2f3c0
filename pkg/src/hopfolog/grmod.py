"""Graded modules over the Hopf families.

A module is a list of basis degrees plus the matrix of the nilpotent operator
X (degree +1).  Degrees are stored doubled so that the balanced modules
V_i{-i/2} are exact.  For the Taft family K acts on a basis vector of degree
r by zeta^r, so K never appears as a matrix.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .exactfield import Matrix, block_diag, nullspace, row_space_basis, rref_rows
from .family import GROUP_RING, TAFT, HopfFamily
from .laurent import LaurentPoly
from .sparse import nullspace_vectors, solve_affine

DEFAULT_MAX_DIM = 4096


class ModuleError(ValueError):
    """Invalid module data or incompatible modules."""


class FamilyMismatch(ModuleError):
    pass


def max_dim() -> int:
    raw = os.environ.get("HOPFOLOG_MAX_DIM")
    return int(raw) if raw else DEFAULT_MAX_DIM


class GradedModule:
    """Finite-dimensional graded module; X acts on column vectors."""

    def __init__(self, family: HopfFamily, degrees: Sequence[int], X: Matrix, *, check: bool = True):
        d = len(degrees)
        if d > max_dim():
            raise ModuleError(f"module dimension {d} exceeds the bound {max_dim()} (HOPFOLOG_MAX_DIM)")
        if X.shape != (d, d):
            raise ModuleError(f"X has shape {X.shape}, expected {(d, d)}")
        if X.field != family.field:
            raise ModuleError(f"X is over {X.field!r}, family needs {family.field!r}")
        self.family = family
        self.degrees = tuple(family.reduce(int(x)) for x in degrees)
        self.X = X
        if check:
            problems = validate(self)
            if problems:
                raise ModuleError("; ".join(problems))

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @property
    def field(self):
        return self.family.field

    def degree(self, k: int) -> Fraction:
        return Fraction(self.degrees[k], 2)

    @cached_property
    def blocks(self) -> dict[int, list[int]]:
        """Basis indices per (doubled) degree, in increasing degree order."""
        out: dict[int, list[int]] = {}
        for k, d in enumerate(self.degrees):
            out.setdefault(d, []).append(k)
        return dict(sorted(out.items()))

    # Structure beyond X; smash modules add B-action matrices here.

    def extra_maps(self) -> tuple[tuple[Matrix, int], ...]:
        return ()

    def structure_maps(self) -> list[tuple[Matrix, int]]:
        return [(self.X, 2), *self.extra_maps()]

    def rebuild(self, degrees, X, extra: Sequence[Matrix] = (), check: bool = False) -> GradedModule:
        return GradedModule(self.family, degrees, X, check=check)

    def k_diagonal(self) -> list:
        """Raw scalars by which K acts on each basis vector (Taft only)."""
        return [self.family.zeta_half(d) for d in self.degrees]

    def __repr__(self):
        return f"<GradedModule dim={self.dim} over {self.family.describe()}>"


# ---------------------------------------------------------------------------
# construction


def make_indecomposable(family: HopfFamily, i: int, j=0) -> GradedModule:
    """V_i{j}: basis b_j, ..., b_{j+i} with X b_r = b_{r+1}."""
    n = family.n
    if not 0 <= i <= n - 1:
        raise ModuleError(f"i={i} outside [0, {n - 1}]")
    j2 = family.to_doubled(j) if family.modulus is None else int(Fraction(j) * 2)
    F = family.field
    X = Matrix(F, i + 1, i + 1)
    for r in range(i):
        X.data[r + 1][r] = F.one
    return GradedModule(family, [j2 + 2 * r for r in range(i + 1)], X)


def balanced(family: HopfFamily, i: int) -> GradedModule:
    """V_i{-i/2}, symmetric about degree zero."""
    return shift(make_indecomposable(family, i), Fraction(-i, 2))


def zero_module(family: HopfFamily) -> GradedModule:
    return GradedModule(family, [], Matrix(family.field, 0, 0))


def validate(M: GradedModule) -> list[str]:
    """Return a list of violations (empty when M is a valid module)."""
    fam = M.family
    problems = []
    for r, c, _ in M.X.nonzero_entries():
        if M.degrees[r] != fam.reduce(M.degrees[c] + 2):
            problems.append(
                f"X not homogeneous: entry ({r},{c}) maps degree "
                f"{Fraction(M.degrees[c], 2)} to {Fraction(M.degrees[r], 2)}"
            )
    if fam.kind == TAFT:
        try:
            M.k_diagonal()
        except ValueError as exc:
            problems.append(str(exc))
    if not problems and M.dim:
        power = M.X ** fam.n
        if not power.is_zero():
            bad = sorted({c for _, c, _ in power.nonzero_entries()})
            problems.append(f"nilpotency: X^{fam.n} != 0 on basis indices {bad}")
    return problems


def direct_sum(*modules: GradedModule) -> GradedModule:
    if not modules:
        raise ModuleError("direct_sum needs at least one module")
    fam = modules[0].family
    for M in modules[1:]:
        if M.family != fam:
            raise FamilyMismatch(f"{M.family.describe()} vs {fam.describe()}")
    F = fam.field
    degrees = [d for M in modules for d in M.degrees]
    X = block_diag(F, [M.X for M in modules])
    nextra = len(modules[0].extra_maps())
    if any(len(M.extra_maps()) != nextra for M in modules):
        raise ModuleError("cannot sum modules with different extra structure")
    extra = [block_diag(F, [M.extra_maps()[k][0] for M in modules]) for k in range(nextra)]
    return modules[0].rebuild(degrees, X, extra)


def shift(M: GradedModule, j) -> GradedModule:
    """Grading shift {j}: every degree goes up by j (half-integers allowed)."""
    q = Fraction(j)
    if q.denominator not in (1, 2):
        raise ModuleError(f"illegal shift {j}: only half-integers are allowed")
    s = int(q * 2)
    if s % 2 and M.family.kind == TAFT:
        try:
            M.family.zeta_half(1)
        except ValueError as exc:
            raise ModuleError(f"illegal fractional shift {j}: {exc}") from None
    if M.family.kind == GROUP_RING:
        s = 0
    return M.rebuild([d + s for d in M.degrees], M.X, [A for A, _ in M.extra_maps()])


def _kron_identity_left(F, A: Matrix, k: int) -> Matrix:
    """I_k (x) A."""
    out = Matrix(F, k * A.rows, k * A.cols)
    entries = list(A.nonzero_entries())
    for b in range(k):
        for r, c, x in entries:
            out.data[b * A.rows + r][b * A.cols + c] = x
    return out


def tensor(M: GradedModule, N: GradedModule) -> GradedModule:
    """M (x) N with X acting through the family's comultiplication.

    The basis vector a (x) b has index a * dim N + b.  ``N`` may carry extra
    structure (a smash module); it then acts on the second factor.
    """
    fam = M.family
    if N.family != fam:
        raise FamilyMismatch(f"{M.family.describe()} vs {N.family.describe()}")
    if M.extra_maps():
        raise ModuleError("the left tensor factor must be a plain H-module")
    F = fam.field
    dm, dn = M.dim, N.dim
    degrees = [fam.reduce(a + b) for a in M.degrees for b in N.degrees]
    X = Matrix(F, dm * dn, dm * dn)
    data = X.data
    add, mul = F.add, F.mul
    # X (x) 1
    for r, c, x in M.X.nonzero_entries():
        for b in range(dn):
            data[r * dn + b][c * dn + b] = add(data[r * dn + b][c * dn + b], x)
    # 1 (x) X, twisted by K on the left factor for Taft
    kdiag = M.k_diagonal() if fam.kind == TAFT else None
    nx = list(N.X.nonzero_entries())
    for a in range(dm):
        scale = kdiag[a] if kdiag else F.one
        for r, c, x in nx:
            data[a * dn + r][a * dn + c] = add(data[a * dn + r][a * dn + c], mul(scale, x))
    if fam.kind == GROUP_RING:
        # Delta(d) = d (x) 1 + 1 (x) d + d (x) d
        for r1, c1, x in M.X.nonzero_entries():
            for r2, c2, y in nx:
                i, j = r1 * dn + r2, c1 * dn + c2
                data[i][j] = add(data[i][j], mul(x, y))
    extra = [_kron_identity_left(F, A, dm) for A, _ in N.extra_maps()]
    return N.rebuild(degrees, X, extra)


def dual(M: GradedModule) -> GradedModule:
    """Hom_k(M, k) with (h f)(m) = f(S(h) m); degrees are negated."""
    fam = M.family
    F = fam.field
    Xt = M.X.transpose()
    if fam.kind == TAFT:
        # S(X) = -K^{-1} X, so X acts on M* by -(K^{-1} X)^T = -X^T K^{-1}
        kinv = [F.inv(z) for z in M.k_diagonal()]
        Xd = Matrix(F, M.dim, M.dim)
        for r, c, x in Xt.nonzero_entries():
            Xd.data[r][c] = F.neg(F.mul(x, kinv[c]))
    elif fam.kind == GROUP_RING:
        Xd = Xt
    else:
        Xd = -Xt
    return GradedModule(fam, [-d for d in M.degrees], Xd)


# ---------------------------------------------------------------------------
# ranks and decomposition


def _image_ranks(M: GradedModule) -> dict[tuple[int, int], int]:
    """rank of X^a : M_d -> M_{d+a} for every degree d and 0 <= a < n."""
    fam = M.family
    F = fam.field
    blocks = M.blocks
    ranks: dict[tuple[int, int], int] = {}
    for d, idx in blocks.items():
        ranks[(d, 0)] = len(idx)
        vecs = [[F.one if i == k else F.zero for i in range(len(idx))] for k in range(len(idx))]
        cur = d
        for a in range(1, fam.n):
            nxt = fam.reduce(cur + 2)
            if nxt not in blocks:
                break
            Xb = M.X.submatrix(blocks[nxt], blocks[cur])
            images = (Matrix(F, len(vecs), len(blocks[cur]), vecs) @ Xb.transpose()).data
            vecs = row_space_basis(F, images, len(blocks[nxt]))
            if not vecs:
                break
            ranks[(d, a)] = len(vecs)
            cur = nxt
    return ranks


@dataclass(frozen=True)
class Decomposition:
    """Multiset of summands V_i{j}; entries with i = n - 1 are projective."""

    n: int
    counts: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        clean = {(int(i), Fraction(j)): int(m) for (i, j), m in self.counts.items() if m}
        object.__setattr__(self, "counts", dict(sorted(clean.items())))

    def __eq__(self, other):
        if isinstance(other, dict):
            return self.counts == Decomposition(self.n, other).counts
        if not isinstance(other, Decomposition):
            return NotImplemented
        return self.n == other.n and self.counts == other.counts

    def __hash__(self):
        return hash((self.n, tuple(self.counts.items())))

    def __iter__(self):
        return iter(self.counts.items())

    def __len__(self):
        return len(self.counts)

    def __add__(self, other: Decomposition) -> Decomposition:
        if other.n != self.n:
            raise ModuleError("cannot merge decompositions of different families")
        c = dict(self.counts)
        for k, m in other.counts.items():
            c[k] = c.get(k, 0) + m
        return Decomposition(self.n, c)

    @property
    def dimension(self) -> int:
        return sum(m * (i + 1) for (i, _), m in self.counts.items())

    def stable(self) -> Decomposition:
        return Decomposition(self.n, {k: m for k, m in self.counts.items() if k[0] < self.n - 1})

    def projective(self) -> Decomposition:
        return Decomposition(self.n, {k: m for k, m in self.counts.items() if k[0] == self.n - 1})

    def is_projective(self) -> bool:
        return all(i == self.n - 1 for (i, _) in self.counts)

    def shifted(self, j) -> Decomposition:
        return Decomposition(self.n, {(i, jj + Fraction(j)): m for (i, jj), m in self.counts.items()})

    def to_module(self, family: HopfFamily) -> GradedModule:
        parts = [make_indecomposable(family, i, j) for (i, j), m in self.counts.items() for _ in range(m)]
        return direct_sum(*parts) if parts else zero_module(family)

    def lines(self) -> list[str]:
        return [f"V_{i}{{{_fmt_degree(j)}}} x{m}" for (i, j), m in self.counts.items()]

    def __str__(self):
        return ", ".join(self.lines()) or "0"


def _fmt_degree(j: Fraction) -> str:
    return str(j.numerator) if j.denominator == 1 else f"{j.numerator}/{j.denominator}"


def decompose(M: GradedModule) -> Decomposition:
    """Multiplicities of V_i{j} from graded ranks of powers of X.

    mult(i, j) = dim (ker X cap im X^i)/(ker X cap im X^(i+1)) in degree j+i,
    expressed through the ranks r_a(d) of X^a : M_d -> M_{d+a}.
    """
    problems = validate(M)
    if problems:
        raise ModuleError("; ".join(problems))
    fam = M.family
    n = fam.n
    ranks = _image_ranks(M)

    def r(d, a):
        if a >= n:
            return 0
        return ranks.get((fam.reduce(d), a), 0)

    counts = {}
    for j in M.blocks:
        prev = j - 2
        for i in range(n):
            mult = (r(j, i) - r(j, i + 1)) - (r(prev, i + 1) - r(prev, i + 2))
            if mult < 0:
                raise AssertionError("negative multiplicity; rank bookkeeping is broken")
            if mult:
                counts[(i, Fraction(j, 2))] = mult
    dec = Decomposition(n, counts)
    if dec.dimension != M.dim:
        raise AssertionError(f"decomposition accounts for {dec.dimension} of {M.dim} dimensions")
    return dec


def is_isomorphic(M: GradedModule, N: GradedModule) -> bool:
    if M.family != N.family:
        raise FamilyMismatch(f"{M.family.describe()} vs {N.family.describe()}")
    return decompose(M) == decompose(N)


def slash_homology(M: GradedModule, a: int) -> dict[Fraction, int]:
    """Graded dimensions of ker(X^a) / im(X^(n-a)); zero degrees are omitted."""
    fam = M.family
    n = fam.n
    if not 1 <= a <= n - 1:
        raise ModuleError(f"a={a} outside [1, {n - 1}]")
    ranks = _image_ranks(M)
    out = {}
    for d, idx in M.blocks.items():
        ker = len(idx) - ranks.get((d, a), 0)
        im = ranks.get((fam.reduce(d - 2 * (n - a)), n - a), 0)
        if ker - im:
            out[Fraction(d, 2)] = ker - im
    return out


def poincare_polynomial(M: GradedModule) -> LaurentPoly:
    period = 2 * M.family.modulus if M.family.modulus else None
    terms: dict[int, int] = {}
    for d in M.degrees:
        terms[d] = terms.get(d, 0) + 1
    return LaurentPoly(terms, period)


# ---------------------------------------------------------------------------
# morphisms


class ModuleHom:
    """Degree-preserving equivariant map; ``mat`` sends source columns to target rows."""

    def __init__(self, source: GradedModule, target: GradedModule, mat: Matrix, *, check: bool = False):
        if source.family != target.family:
            raise FamilyMismatch("source and target families differ")
        if mat.shape != (target.dim, source.dim):
            raise ModuleError(f"map has shape {mat.shape}, expected {(target.dim, source.dim)}")
        self.source = source
        self.target = target
        self.mat = mat
        if check:
            problems = self.violations()
            if problems:
                raise ModuleError("; ".join(problems))

    @classmethod
    def identity(cls, M: GradedModule) -> ModuleHom:
        return cls(M, M, Matrix.identity(M.field, M.dim))

    @classmethod
    def zero(cls, source: GradedModule, target: GradedModule) -> ModuleHom:
        return cls(source, target, Matrix(source.field, target.dim, source.dim))

    def violations(self) -> list[str]:
        out = []
        for r, c, _ in self.mat.nonzero_entries():
            if self.target.degrees[r] != self.source.degrees[c]:
                out.append(f"map not grading-preserving at ({r},{c})")
                break
        s_maps = self.source.structure_maps()
        t_maps = self.target.structure_maps()
        if len(s_maps) != len(t_maps):
            out.append("source and target carry different structure")
            return out
        for k, ((As, _), (At, _)) in enumerate(zip(s_maps, t_maps)):
            if self.mat @ As != At @ self.mat:
                out.append("map does not commute with X" if k == 0 else f"map does not commute with action {k - 1}")
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def __matmul__(self, other: ModuleHom) -> ModuleHom:
        """Composition: (g @ f)(m) = g(f(m))."""
        if other.target.dim != self.source.dim:
            raise ModuleError("composition shapes do not match")
        return ModuleHom(other.source, self.target, self.mat @ other.mat)

    def __add__(self, other: ModuleHom) -> ModuleHom:
        return ModuleHom(self.source, self.target, self.mat + other.mat)

    def __sub__(self, other: ModuleHom) -> ModuleHom:
        return ModuleHom(self.source, self.target, self.mat - other.mat)

    def __neg__(self) -> ModuleHom:
        return ModuleHom(self.source, self.target, -self.mat)

    def scale(self, c) -> ModuleHom:
        return ModuleHom(self.source, self.target, self.mat.scale(c))

    def is_zero(self) -> bool:
        return self.mat.is_zero()

    def __repr__(self):
        return f"<ModuleHom {self.source.dim} -> {self.target.dim}>"


def _hom_variables(M: GradedModule, N: GradedModule):
    index = {}
    for d, cols in M.blocks.items():
        for r in N.blocks.get(d, ()):
            for c in cols:
                index[(r, c)] = len(index)
    return index


def _hom_equations(M: GradedModule, N: GradedModule, index):
    """Sparse rows for A_N f - f A_M = 0 over all structure maps."""
    F = M.field
    eqs = []
    s_maps = M.structure_maps()
    t_maps = N.structure_maps()
    if len(s_maps) != len(t_maps):
        raise ModuleError("source and target carry different structure")
    for (As, shift_), (At, _) in zip(s_maps, t_maps):
        at_rows: dict[int, list] = {}
        for r, k, x in At.nonzero_entries():
            at_rows.setdefault(r, []).append((k, x))
        as_cols: dict[int, list] = {}
        for k, c, x in As.nonzero_entries():
            as_cols.setdefault(c, []).append((k, x))
        fam = M.family
        for dc, cols in M.blocks.items():
            for r in N.blocks.get(fam.reduce(dc + shift_), ()):
                for c in cols:
                    eq: dict[int, object] = {}
                    for k, x in at_rows.get(r, ()):
                        v = index.get((k, c))
                        if v is not None:
                            eq[v] = F.add(eq.get(v, F.zero), x)
                    for k, x in as_cols.get(c, ()):
                        v = index.get((r, k))
                        if v is not None:
                            eq[v] = F.sub(eq.get(v, F.zero), x)
                    eq = {v: x for v, x in eq.items() if not F.is_zero(x)}
                    if eq:
                        eqs.append(eq)
    return eqs


def _vector_to_hom(M, N, index, vec) -> ModuleHom:
    mat = Matrix(M.field, N.dim, M.dim)
    for (r, c), v in index.items():
        mat.data[r][c] = vec[v]
    return ModuleHom(M, N, mat)


def hom_basis(M: GradedModule, N: GradedModule) -> list[ModuleHom]:
    """Basis of degree-zero equivariant maps M -> N."""
    if M.family != N.family:
        raise FamilyMismatch(f"{M.family.describe()} vs {N.family.describe()}")
    index = _hom_variables(M, N)
    eqs = _hom_equations(M, N, index)
    return [_vector_to_hom(M, N, index, v) for v in nullspace_vectors(M.field, eqs, len(index))]


def solve_hom(M: GradedModule, N: GradedModule, constraints) -> ModuleHom | None:
    """Some equivariant h: M -> N meeting extra linear constraints, or None.

    ``constraints`` is a list of ``(coeffs, rhs)`` where coeffs maps
    ``(row, col)`` entries of h to raw coefficients.
    """
    index = _hom_variables(M, N)
    eqs = _hom_equations(M, N, index)
    rhs = [M.field.zero] * len(eqs)
    F = M.field
    for coeffs, b in constraints:
        row = {}
        for key, c in coeffs.items():
            v = index.get(key)
            if v is None:
                continue
            row[v] = F.add(row.get(v, F.zero), c)
        eqs.append(row)
        rhs.append(b)
    vec = solve_affine(F, eqs, rhs, len(index))
    if vec is None:
        return None
    return _vector_to_hom(M, N, index, vec)


def hom_dim(M: GradedModule, N: GradedModule) -> int:
    return len(hom_basis(M, N))


# ---------------------------------------------------------------------------
# submodules and quotients


def _complement_coordinates(F, vectors: Iterable[Sequence], length: int):
    rows, piv = rref_rows(F, vectors, length)
    pivset = set(piv)
    keep = [c for c in range(length) if c not in pivset]
    return rows, piv, keep


def quotient(M: GradedModule, vectors: Iterable[Sequence]):
    """M / span(vectors), for an X-stable span of homogeneous vectors.

    Returns ``(Q, proj, section)``: the quotient module, the projection
    M -> Q and a linear (not necessarily equivariant) section Q -> M.
    """
    F = M.field
    vectors = [list(v) for v in vectors]
    by_block: dict[int, list] = {d: [] for d in M.blocks}
    for v in vectors:
        support = [k for k, x in enumerate(v) if not F.is_zero(x)]
        if not support:
            continue
        degs = {M.degrees[k] for k in support}
        if len(degs) != 1:
            raise ModuleError("quotient needs homogeneous vectors")
        d = degs.pop()
        by_block[d].append([v[k] for k in M.blocks[d]])
    keep_global = []
    reducers = []  # per block: (indices, rows, pivots)
    for d, idx in M.blocks.items():
        rows, piv, keep = _complement_coordinates(F, by_block[d], len(idx))
        reducers.append((idx, rows, piv))
        keep_global.extend(idx[k] for k in keep)
    keep_global.sort()
    pos = {g: t for t, g in enumerate(keep_global)}
    proj = Matrix(F, len(keep_global), M.dim)
    for idx, rows, piv in reducers:
        pivrow = dict(zip(piv, rows))
        for local, g in enumerate(idx):
            if local in pivrow:
                # e_g = pivot row - (other entries of that row)
                row = pivrow[local]
                for t, x in enumerate(row):
                    if t != local and not F.is_zero(x):
                        proj.data[pos[idx[t]]][g] = F.neg(x)
            else:
                proj.data[pos[g]][g] = F.one
    section = Matrix(F, M.dim, len(keep_global))
    for g, t in pos.items():
        section.data[g][t] = F.one
    degrees = [M.degrees[g] for g in keep_global]
    X = proj @ M.X @ section
    extra = [proj @ A @ section for A, _ in M.extra_maps()]
    Q = M.rebuild(degrees, X, extra)
    return Q, ModuleHom(M, Q, proj), section


def submodule(M: GradedModule, vectors: Iterable[Sequence]):
    """Submodule spanned by an X-stable set of homogeneous vectors.

    Returns ``(S, inclusion)``.
    """
    F = M.field
    by_block: dict[int, list] = {d: [] for d in M.blocks}
    for v in vectors:
        support = [k for k, x in enumerate(v) if not F.is_zero(x)]
        if not support:
            continue
        degs = {M.degrees[k] for k in support}
        if len(degs) != 1:
            raise ModuleError("submodule needs homogeneous vectors")
        d = degs.pop()
        by_block[d].append([v[k] for k in M.blocks[d]])
    cols = []
    coord = []  # (global pivot index) per basis vector
    degrees = []
    for d, idx in M.blocks.items():
        rows, piv = rref_rows(F, by_block[d], len(idx))
        for row, pc in zip(rows, piv):
            full = [F.zero] * M.dim
            for t, x in enumerate(row):
                full[idx[t]] = x
            cols.append(full)
            coord.append(idx[pc])
            degrees.append(d)
    inc = Matrix.from_columns(F, M.dim, cols)
    # coordinates of a vector in the RREF basis are its pivot entries
    read = Matrix(F, len(cols), M.dim)
    for t, g in enumerate(coord):
        read.data[t][g] = F.one
    X = read @ M.X @ inc
    if inc @ X != M.X @ inc:
        raise ModuleError("span is not X-stable")
    extra = []
    for A, _ in M.extra_maps():
        E = read @ A @ inc
        if inc @ E != A @ inc:
            raise ModuleError("span is not stable under the extra structure")
        extra.append(E)
    S = M.rebuild(degrees, X, extra)
    return S, ModuleHom(S, M, inc)


def kernel(f: ModuleHom):
    """``(K, inclusion)`` for the kernel of f."""
    F = f.source.field
    vecs = []
    M = f.source
    for d, idx in M.blocks.items():
        rows_t = [r for r in f.target.blocks.get(d, ())]
        block = f.mat.submatrix(rows_t, idx) if rows_t else Matrix(F, 0, len(idx))
        ns = nullspace(block)
        for c in range(ns.cols):
            v = [F.zero] * M.dim
            for t, g in enumerate(idx):
                v[g] = ns.data[t][c]
            vecs.append(v)
    return submodule(M, vecs)


def image_vectors(f: ModuleHom) -> list[list]:
    return f.mat.columns()
