"""Stable category: projective stripping, null-homotopies, shifts, cones, triangles.

Two shifted copies of the free rank-one module are used.  ``free_socle`` is
V_{n-1}{1-n}: its socle (the integral) sits in degree 0, so m -> Lambda (x) m
is a degree-zero embedding.  ``free_top`` is V_{n-1}{0}: its top sits in
degree 0, so the counit is a degree-zero surjection.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactfield import Matrix, hstack, inverse, nullspace, rank, vstack
from .family import GROUP_RING, TAFT, HopfFamily, hopf_algebra
from .grmod import (
    Decomposition,
    GradedModule,
    ModuleError,
    ModuleHom,
    decompose,
    direct_sum,
    hom_basis,
    make_indecomposable,
    quotient,
    solve_hom,
    tensor,
)


class NotAMorphismPair(ModuleError):
    """u' f - g u is not null-homotopic."""


# ---------------------------------------------------------------------------
# free modules and the embedding


def free_socle(family: HopfFamily) -> GradedModule:
    n = family.n
    return make_indecomposable(family, n - 1, 1 - n)


def free_top(family: HopfFamily) -> GradedModule:
    return make_indecomposable(family, family.n - 1, 0)


def embedding_matrix(M: GradedModule) -> Matrix:
    """Columns of m -> Lambda (x) m inside free_socle (x) M."""
    F = M.field
    d = M.dim
    top = (M.family.n - 1) * d
    E = Matrix(F, M.family.n * d, d)
    for b in range(d):
        E.data[top + b][b] = F.one
    return E


def h_tensor(M: GradedModule) -> tuple[GradedModule, ModuleHom]:
    """The free module over M together with the embedding m -> Lambda (x) m."""
    FM = tensor(free_socle(M.family), M)
    return FM, ModuleHom(M, FM, embedding_matrix(M))


def counit_map(M: GradedModule) -> tuple[GradedModule, ModuleHom]:
    """free_top (x) M and the surjection eps (x) Id onto M."""
    FM = tensor(free_top(M.family), M)
    F = M.field
    P = Matrix(F, M.dim, FM.dim)
    for b in range(M.dim):
        P.data[b][b] = F.one
    return FM, ModuleHom(FM, M, P)


# ---------------------------------------------------------------------------
# stable decomposition and null-homotopies


def stable_decompose(M: GradedModule) -> tuple[Decomposition, Decomposition]:
    dec = decompose(M)
    return dec.stable(), dec.projective()


def is_stably_trivial(M: GradedModule) -> bool:
    return decompose(M).is_projective()


@dataclass
class HomotopyWitness:
    """h on the free module over the source with h o embedding = f."""

    f: ModuleHom
    h: ModuleHom
    embedding: ModuleHom

    def check(self) -> bool:
        return (self.h @ self.embedding).mat == self.f.mat and self.h.is_valid()


def null_homotopy(f: ModuleHom) -> HomotopyWitness | None:
    """Witness that f factors through the projective embedding of its source, or None."""
    FM, iota = h_tensor(f.source)
    top = (f.source.family.n - 1) * f.source.dim
    F = f.source.field
    constraints = []
    for r in range(f.target.dim):
        for c in range(f.source.dim):
            if f.target.degrees[r] != f.source.degrees[c]:
                continue
            constraints.append(({(r, top + c): F.one}, f.mat.data[r][c]))
    h = solve_hom(FM, f.target, constraints)
    if h is None:
        return None
    return HomotopyWitness(f, h, iota)


def is_null_homotopic(f: ModuleHom) -> bool:
    return null_homotopy(f) is not None


def null_homotopic_subspace(M: GradedModule, N: GradedModule) -> list[Matrix]:
    """Spanning maps h o embedding for h in Hom(free (x) M, N)."""
    FM, iota = h_tensor(M)
    return [(h @ iota).mat for h in hom_basis(FM, N)]


def _span_rank(mats: list[Matrix]) -> int:
    if not mats:
        return 0
    F = mats[0].field
    rows = [[x for row in m.data for x in row] for m in mats]
    return rank(Matrix.from_rows(F, rows))


@dataclass(frozen=True)
class StableHom:
    hom: int
    null_homotopic: int

    @property
    def stable(self) -> int:
        return self.hom - self.null_homotopic

    def __str__(self):
        return f"hom: {self.hom}, null-homotopic: {self.null_homotopic}, stable: {self.stable}"


def stable_hom_dims(M: GradedModule, N: GradedModule) -> StableHom:
    total = len(hom_basis(M, N))
    null = _span_rank(null_homotopic_subspace(M, N))
    return StableHom(total, null)


def stable_hom_dim(M: GradedModule, N: GradedModule) -> int:
    return stable_hom_dims(M, N).stable


# ---------------------------------------------------------------------------
# shift functors


def socle_quotient(family: HopfFamily) -> GradedModule:
    """Free module modulo its integral: V_{n-2}{1-n}."""
    n = family.n
    return make_indecomposable(family, n - 2, 1 - n)


def augmentation_ideal(family: HopfFamily) -> GradedModule:
    """Kernel of the counit on free_top: V_{n-2}{1}."""
    return make_indecomposable(family, family.n - 2, 1)


def shift_T(M: GradedModule) -> GradedModule:
    return tensor(socle_quotient(M.family), M)


def shift_Tprime(M: GradedModule) -> GradedModule:
    return tensor(augmentation_ideal(M.family), M)


def drop_socle_matrix(M: GradedModule) -> Matrix:
    """free_socle (x) M -> shift_T(M): forget the Lambda (x) M coordinates."""
    F = M.field
    keep = (M.family.n - 1) * M.dim
    P = Matrix(F, keep, M.family.n * M.dim)
    for k in range(keep):
        P.data[k][k] = F.one
    return P


def shift_T_map(f: ModuleHom) -> ModuleHom:
    """T on morphisms: Id (x) f."""
    n1 = f.source.family.n - 1
    mat = _id_kron(f.mat, n1)
    return ModuleHom(shift_T(f.source), shift_T(f.target), mat)


def _id_kron(A: Matrix, k: int) -> Matrix:
    F = A.field
    out = Matrix(F, k * A.rows, k * A.cols)
    for b in range(k):
        for r, c, x in A.nonzero_entries():
            out.data[b * A.rows + r][b * A.cols + c] = x
    return out


# ---------------------------------------------------------------------------
# cones and triangles


@dataclass
class Triangle:
    """X -u-> Y -v-> Z -w-> TX, with the pushout data when standard."""

    X: GradedModule
    Y: GradedModule
    Z: GradedModule
    u: ModuleHom
    v: ModuleHom
    w: ModuleHom
    proj: ModuleHom | None = None  # (free (x) X) + Y -> Z
    section: Matrix | None = None

    def composites_null_homotopic(self) -> bool:
        return is_null_homotopic(self.v @ self.u) and is_null_homotopic(self.w @ self.v)


def cone(u: ModuleHom) -> tuple[GradedModule, Triangle]:
    """Pushout of the projective embedding of the source along u."""
    Xm, Ym = u.source, u.target
    FX, iota = h_tensor(Xm)
    total = direct_sum(FX, Ym)
    F = Xm.field
    rels = []
    for a in range(Xm.dim):
        vec = list(iota.mat.column(a)) + [F.neg(x) for x in u.mat.column(a)]
        rels.append(vec)
    C, proj, section = quotient(total, rels)
    nfx = FX.dim
    incY = Matrix(F, total.dim, Ym.dim)
    for b in range(Ym.dim):
        incY.data[nfx + b][b] = F.one
    v = ModuleHom(Ym, C, proj.mat @ incY)
    firstX = hstack(F, [Matrix.identity(F, nfx), Matrix(F, nfx, Ym.dim)])
    TX = shift_T(Xm)
    w = ModuleHom(C, TX, drop_socle_matrix(Xm) @ firstX @ section)
    return C, Triangle(Xm, Ym, C, u, v, w, proj, section)


def complete_triangle_morphism(t1: Triangle, t2: Triangle, f: ModuleHom, g: ModuleHom) -> ModuleHom:
    """h: Z -> Z' with h v = v' g, built from a homotopy between g u and u' f."""
    if t1.proj is None or t2.proj is None:
        raise ModuleError("triangle completion needs standard (cone) triangles")
    diff = g @ t1.u - t2.u @ f
    witness = null_homotopy(diff)
    if witness is None:
        raise NotAMorphismPair("not a morphism pair: g u - u' f is not null-homotopic")
    alpha = witness.h  # alpha o embedding = g u - u' f
    F = f.source.field
    n = f.source.family.n
    I_f = _id_kron(f.mat, n)
    nfx1 = n * t1.X.dim
    nfx2 = n * t2.X.dim
    top = hstack(F, [I_f, Matrix(F, nfx2, t1.Y.dim)])
    bottom = hstack(F, [alpha.mat, g.mat])
    phi = vstack(F, [top, bottom])
    assert phi.cols == nfx1 + t1.Y.dim
    h = ModuleHom(t1.Z, t2.Z, t2.proj.mat @ phi @ t1.section)
    return h


@dataclass
class TR3Report:
    h: ModuleHom
    commutes_with_v: bool
    w_square_null_homotopic: bool
    w_square_exact: bool


def check_triangle_morphism(t1: Triangle, t2: Triangle, f: ModuleHom, g: ModuleHom) -> TR3Report:
    h = complete_triangle_morphism(t1, t2, f, g)
    left = h @ t1.v
    right = t2.v @ g
    defect = t2.w @ h - shift_T_map(f) @ t1.w
    return TR3Report(
        h,
        left.mat == right.mat and h.is_valid(),
        is_null_homotopic(defect),
        defect.is_zero(),
    )


# ---------------------------------------------------------------------------
# algebra-level structure: grouplike, Radford identity, swap


def right_integral_of_dual(family: HopfFamily) -> list:
    """lambda with sum lambda(h_1) h_2 = lambda(h) 1 for every basis h."""
    A = hopf_algebra(family)
    F = A.field
    d = A.dim
    rows = []
    for h in range(d):
        # coefficient of basis k in sum lambda(h_1) h_2 - lambda(h) 1, as a functional of lambda
        for k in range(d):
            row = [F.zero] * d
            for (a, b), c in A.comult[h].items():
                if b == k:
                    row[a] = F.add(row[a], c)
            if k == A.unit:
                row[h] = F.sub(row[h], F.one)
            if any(not F.is_zero(x) for x in row):
                rows.append(row)
    ns = nullspace(Matrix.from_rows(F, rows))
    if ns.cols != 1:
        raise ModuleError(f"integral space of the dual has dimension {ns.cols}, expected 1")
    return ns.column(0)


def distinguished_grouplike(family: HopfFamily) -> list:
    """g with sum h_1 lambda(h_2) = lambda(h) g; verified grouplike."""
    A = hopf_algebra(family)
    F = A.field
    lam = right_integral_of_dual(family)
    h = next(i for i, x in enumerate(lam) if not F.is_zero(x))
    g = [F.zero] * A.dim
    for (a, b), c in A.comult[h].items():
        g[a] = F.add(g[a], F.mul(c, lam[b]))
    inv = F.inv(lam[h])
    g = [F.mul(inv, x) for x in g]
    # defining equation on every basis element
    for k in range(A.dim):
        lhs = [F.zero] * A.dim
        for (a, b), c in A.comult[k].items():
            lhs[a] = F.add(lhs[a], F.mul(c, lam[b]))
        rhs = [F.mul(lam[k], x) for x in g]
        if lhs != rhs:
            raise ModuleError("distinguished grouplike fails its defining equation")
    dg = A.comul(g)
    gg = {(a, b): F.mul(x, y) for a, x in enumerate(g) for b, y in enumerate(g) if not F.is_zero(F.mul(x, y))}
    if dg != gg:
        raise ModuleError("distinguished grouplike is not grouplike")
    return g


def radford_identity_holds(family: HopfFamily) -> bool:
    """sum Lambda_1 (x) Lambda_2 == sum S^2(Lambda_2) g (x) Lambda_1."""
    A = hopf_algebra(family)
    F = A.field
    lam = A.left_integral
    g = distinguished_grouplike(family)
    lhs = A.comul(lam)
    S2 = A.antipode @ A.antipode
    rhs: dict = {}
    for (a, b), c in lhs.items():
        s2b = S2.column(b)
        left = A.mul(s2b, g)
        for k, x in enumerate(left):
            if F.is_zero(x):
                continue
            key = (k, a)
            rhs[key] = F.add(rhs.get(key, F.zero), F.mul(c, x))
    rhs = {k: v for k, v in rhs.items() if not F.is_zero(v)}
    return lhs == rhs


def representation(V: GradedModule) -> list[Matrix]:
    """Matrices of every algebra basis element acting on V."""
    fam = V.family
    A = hopf_algebra(fam)
    F = V.field
    if fam.kind == TAFT:
        K = Matrix(F, V.dim, V.dim)
        for k, z in enumerate(V.k_diagonal()):
            K.data[k][k] = z
        gens = {"X": V.X, "K": K}
    elif fam.kind == GROUP_RING:
        gens = {"g": Matrix.identity(F, V.dim) + V.X}
    else:
        gens = {"X": V.X}
    return A.rep_matrices(gens, V.dim)


def _vec_rep(F, mats: list[Matrix], vec, size) -> Matrix:
    out = Matrix(F, size, size)
    for c, m in zip(vec, mats):
        if not F.is_zero(c):
            out = out + m.scale(c)
    return out


@dataclass
class SwapIso:
    """r: V (x) H -> H (x) V; index v*dimH + h on the source, h*dimV + v on the target."""

    V: GradedModule
    matrix: Matrix
    grouplike: list
    twist: object = None

    def is_invertible(self) -> bool:
        return rank(self.matrix) == self.matrix.rows

    def is_equivariant(self) -> bool:
        src, tgt = _tensor_reps(self.V)
        A = hopf_algebra(self.V.family)
        return all(self.matrix @ src[g] == tgt[g] @ self.matrix for g in A.generators)

    def sends_integral(self) -> bool:
        """r(v (x) Lambda) = Lambda (x) v for every v."""
        A = hopf_algebra(self.V.family)
        F = self.V.field
        lam = A.left_integral
        dV, dH = self.V.dim, A.dim
        for v in range(dV):
            src = [F.zero] * (dV * dH)
            for h, c in enumerate(lam):
                src[v * dH + h] = c
            expect = [F.zero] * (dV * dH)
            for h, c in enumerate(lam):
                expect[h * dV + v] = c
            got = [sum_row(F, row, src) for row in self.matrix.data]
            if got != expect:
                return False
        return True


def sum_row(F, row, vec):
    acc = F.zero
    for a, b in zip(row, vec):
        if not F.is_zero(a) and not F.is_zero(b):
            acc = F.add(acc, F.mul(a, b))
    return acc


def _tensor_reps(V: GradedModule):
    """Actions of the algebra basis on V (x) H and on H (x) V through the coproduct."""
    A = hopf_algebra(V.family)
    F = V.field
    rho = representation(V)
    regular = [A.left_mult_matrix(i) for i in range(A.dim)]
    dV, dH = V.dim, A.dim
    src, tgt = [], []
    for x in range(A.dim):
        S = Matrix(F, dV * dH, dV * dH)
        T = Matrix(F, dV * dH, dV * dH)
        for (a, b), c in A.comult[x].items():
            S = S + rho[a].kron(regular[b]).scale(c)
            T = T + regular[a].kron(rho[b]).scale(c)
        src.append(S)
        tgt.append(T)
    return src, tgt


def swap_iso(V: GradedModule) -> SwapIso:
    """r = r3 r2 r1 built from the antipode inverse, the grouplike and the coproduct."""
    fam = V.family
    A = hopf_algebra(fam)
    F = V.field
    rho = representation(V)
    dV, dH = V.dim, A.dim
    N = dV * dH
    Sinv = A.antipode_inverse
    g = distinguished_grouplike(fam)
    # r1: v (x) h -> sum S^{-1}(h_1) v (x) h_2, on V (x) H
    r1 = Matrix(F, N, N)
    for h in range(dH):
        for (a, b), c in A.comult[h].items():
            act = _vec_rep(F, rho, Sinv.column(a), dV)
            for vr, vc, x in act.nonzero_entries():
                r1.data[vr * dH + b][vc * dH + h] = F.add(r1.data[vr * dH + b][vc * dH + h], F.mul(c, x))
    # r2: v (x) h -> h g (x) v, V (x) H -> H (x) V
    r2 = Matrix(F, N, N)
    for h in range(dH):
        hg = A.mul(A.basis_vector(h), g)
        for k, x in enumerate(hg):
            if F.is_zero(x):
                continue
            for v in range(dV):
                r2.data[k * dV + v][v * dH + h] = F.add(r2.data[k * dV + v][v * dH + h], x)
    # r3: h (x) v -> sum h_1 (x) h_2 v, on H (x) V
    r3 = Matrix(F, N, N)
    for h in range(dH):
        for (a, b), c in A.comult[h].items():
            for vr, vc, x in rho[b].nonzero_entries():
                r3.data[a * dV + vr][h * dV + vc] = F.add(r3.data[a * dV + vr][h * dV + vc], F.mul(c, x))
    # Lambda g = c Lambda; c differs from 1 when H is not unimodular (Taft),
    # and rescaling by 1/c makes r carry v (x) Lambda to Lambda (x) v exactly.
    c = integral_twist(fam, g)
    return SwapIso(V, (r3 @ r2 @ r1).scale(F.inv(c)), g, c)


def integral_twist(family: HopfFamily, g) -> object:
    """Scalar c with Lambda g = c Lambda for the left integral Lambda."""
    A = hopf_algebra(family)
    F = A.field
    lam = A.left_integral
    lg = A.mul(lam, g)
    k = next(i for i, x in enumerate(lam) if not F.is_zero(x))
    c = F.div(lg[k], lam[k])
    if lg != [F.mul(c, x) for x in lam]:
        raise ModuleError("right multiplication by the grouplike does not preserve the integral line")
    return c


def swap_inverse(r: SwapIso) -> Matrix:
    return inverse(r.matrix)
