"""Modules over smash products H # B for a nilpotent derivation on B.

B is a finite-dimensional graded algebra with basis element 0 as its unit and
a derivation ``d`` of degree +1 (the action of X on B).  A module carries the
H-structure (degrees and X) plus one matrix per basis element of B, subject to

    X b = d(b) + b X              (truncated polynomial families)
    X b = d(b) + b X + d(b) X     (group ring, where X = g + 1)

Tensoring with a free H-module on the left keeps B acting on the right
factor, which is what makes the stable machinery of :mod:`stable` work here
unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .exactfield import Matrix, hstack, rank, vstack
from .family import GROUP_RING, TAFT, HopfFamily
from .grmod import (
    GradedModule,
    ModuleError,
    ModuleHom,
    decompose,
    direct_sum,
    kernel,
    slash_homology,
    tensor,
)
from .stable import (
    HomotopyWitness,
    Triangle,
    cone,
    counit_map,
    free_top,
    h_tensor,
    null_homotopy,
)


class SmashError(ModuleError):
    pass


# ---------------------------------------------------------------------------
# the algebra B


class DerivationAlgebra:
    """Graded algebra with structure constants ``mult[i][j] = {k: c}`` and derivation ``deriv``."""

    def __init__(self, family: HopfFamily, degrees, mult, deriv: Matrix, labels=None):
        if family.kind == TAFT:
            raise SmashError("smash modules are implemented for the truncated and group-ring families")
        self.family = family
        self.field = family.field
        self.degrees = tuple(int(d) for d in degrees)
        self.dim = len(self.degrees)
        self.mult = mult
        self.deriv = deriv
        self.labels = labels or [f"e{i}" for i in range(self.dim)]

    @property
    def twisted(self) -> bool:
        return self.family.kind == GROUP_RING

    def product(self, u, v) -> list:
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

    def basis_vector(self, i) -> list:
        F = self.field
        v = [F.zero] * self.dim
        v[i] = F.one
        return v

    def d(self, v) -> list:
        F = self.field
        return [
            _dot(F, self.deriv.data[r], v) for r in range(self.dim)
        ]

    def __repr__(self):
        return f"<DerivationAlgebra dim={self.dim} over {self.family.describe()}>"


def _dot(F, row, vec):
    acc = F.zero
    for a, b in zip(row, vec):
        if not F.is_zero(a) and not F.is_zero(b):
            acc = F.add(acc, F.mul(a, b))
    return acc


def ground_algebra(family: HopfFamily) -> DerivationAlgebra:
    """B = k with zero derivation."""
    F = family.field
    return DerivationAlgebra(family, [0], [[{0: F.one}]], Matrix(F, 1, 1), ["1"])


def truncated_algebra(family: HopfFamily, length: int, t_degree: int = -1, d_of_t=1) -> DerivationAlgebra:
    """k[t]/(t^length) with d(t) = d_of_t (0 or 1 in practice)."""
    F = family.field
    mult = [[({i + j: F.one} if i + j < length else {}) for j in range(length)] for i in range(length)]
    c = F.coerce(d_of_t)
    if not F.is_zero(c) and length % family.p:
        # d(t^length) = length t^(length-1) d(t) must vanish
        raise SmashError(f"d(t) != 0 needs the characteristic to divide the length, got length {length}")
    D = Matrix(F, length, length)
    if not F.is_zero(c):
        # d(t^k) = k t^(k-1) d(t), valid when d(t) is a scalar
        for k in range(1, length):
            D.data[k - 1][k] = F.mul(F.from_int(k), c)
    labels = ["1"] + [f"t^{k}" if k > 1 else "t" for k in range(1, length)]
    return DerivationAlgebra(family, [k * t_degree for k in range(length)], mult, D, labels)


def validate_derivation_algebra(B: DerivationAlgebra) -> list[str]:
    F = B.field
    fam = B.family
    out = []
    e = [B.basis_vector(i) for i in range(B.dim)]
    for i in range(B.dim):
        if B.product(e[0], e[i]) != e[i] or B.product(e[i], e[0]) != e[i]:
            out.append(f"unit: e0 is not a two-sided unit on e{i}")
    for i in range(B.dim):
        for j in range(B.dim):
            for k, c in B.mult[i][j].items():
                if not F.is_zero(c) and fam.reduce(2 * B.degrees[k]) != fam.reduce(2 * (B.degrees[i] + B.degrees[j])):
                    out.append(f"degree: e{i}*e{j} has a component e{k} of the wrong degree")
    for i in range(B.dim):
        for j in range(B.dim):
            ij = B.product(e[i], e[j])
            for k in range(B.dim):
                if B.product(ij, e[k]) != B.product(e[i], B.product(e[j], e[k])):
                    out.append(f"associativity fails on (e{i}, e{j}, e{k})")
    for r, c, _ in B.deriv.nonzero_entries():
        if fam.reduce(2 * B.degrees[r]) != fam.reduce(2 * B.degrees[c] + 2):
            out.append(f"derivation not of degree +1 at e{c} -> e{r}")
    if any(not F.is_zero(x) for x in B.d(e[0])):
        out.append("d(1) != 0")
    for i in range(B.dim):
        for j in range(B.dim):
            lhs = B.d(B.product(e[i], e[j]))
            di, dj = B.d(e[i]), B.d(e[j])
            rhs = _vadd(F, B.product(di, e[j]), B.product(e[i], dj))
            if B.twisted:
                rhs = _vadd(F, rhs, B.product(di, dj))
            if lhs != rhs:
                out.append(f"Leibniz fails on the pair (e{i}, e{j})")
    if B.dim and not (B.deriv ** fam.n).is_zero():
        out.append(f"nilpotency: d^{fam.n} != 0")
    return out


def _vadd(F, u, v):
    return [F.add(a, b) for a, b in zip(u, v)]


# ---------------------------------------------------------------------------
# modules


class SmashModule(GradedModule):
    """GradedModule with B acting through ``actions[k]`` (matrix of basis element k)."""

    def __init__(self, family, degrees, X, algebra: DerivationAlgebra, actions, *, check: bool = True):
        if algebra.family != family:
            raise SmashError("algebra and module families differ")
        self.algebra = algebra
        self.actions = tuple(actions)
        if len(self.actions) != algebra.dim:
            raise SmashError(f"expected {algebra.dim} action matrices, got {len(self.actions)}")
        super().__init__(family, degrees, X, check=False)
        if check:
            problems = validate_smash_module(self)
            if problems:
                raise SmashError("; ".join(problems))

    def extra_maps(self):
        return tuple((A, 2 * d) for A, d in zip(self.actions, self.algebra.degrees))

    def rebuild(self, degrees, X, extra=(), check=False):
        return SmashModule(self.family, degrees, X, self.algebra, extra, check=check)

    def __repr__(self):
        return f"<SmashModule dim={self.dim} over {self.algebra!r}>"


def validate_smash_module(M: SmashModule) -> list[str]:
    from .grmod import validate

    out = validate(GradedModule(M.family, M.degrees, M.X, check=False))
    B = M.algebra
    F = M.field
    fam = M.family
    ident = Matrix.identity(F, M.dim)
    if M.actions[0] != ident:
        out.append("unit of B does not act as the identity")
    for k, (A, shift2) in enumerate(M.extra_maps()):
        for r, c, _ in A.nonzero_entries():
            if M.degrees[r] != fam.reduce(M.degrees[c] + shift2):
                out.append(f"action of e{k} not homogeneous at ({r},{c})")
                break
    for i in range(B.dim):
        for j in range(B.dim):
            prod = Matrix(F, M.dim, M.dim)
            for k, c in B.mult[i][j].items():
                prod = prod + M.actions[k].scale(c)
            if M.actions[i] @ M.actions[j] != prod:
                out.append(f"action is not multiplicative on (e{i}, e{j})")
    for i in range(B.dim):
        dv = B.d(B.basis_vector(i))
        rho_d = _act(M, dv)
        rhs = rho_d + M.actions[i] @ M.X
        if B.twisted:
            rhs = rhs + rho_d @ M.X
        if M.X @ M.actions[i] != rhs:
            out.append(f"module Leibniz law fails for e{i}")
    return out


def _act(M: SmashModule, vec) -> Matrix:
    F = M.field
    out = Matrix(F, M.dim, M.dim)
    for c, A in zip(vec, M.actions):
        if not F.is_zero(c):
            out = out + A.scale(c)
    return out


def induced_module(B: DerivationAlgebra, W: GradedModule) -> SmashModule:
    """B (x) W with B acting on the left factor and X = d (x) 1 + 1 (x) X (+ d (x) X)."""
    F = B.field
    fam = B.family
    if W.family != fam:
        raise SmashError("family mismatch")
    dB, dW = B.dim, W.dim
    degrees = [2 * B.degrees[b] + w for b in range(dB) for w in W.degrees]
    Ib = Matrix.identity(F, dB)
    Iw = Matrix.identity(F, dW)
    X = B.deriv.kron(Iw) + Ib.kron(W.X)
    if B.twisted:
        X = X + B.deriv.kron(W.X)
    actions = []
    for i in range(dB):
        L = Matrix(F, dB, dB)
        for j in range(dB):
            for k, c in B.mult[i][j].items():
                L.data[k][j] = F.add(L.data[k][j], c)
        actions.append(L.kron(Iw))
    return SmashModule(fam, degrees, X, B, actions)


def trivial_action_module(B: DerivationAlgebra, W: GradedModule, augmentation) -> SmashModule:
    """W with B acting through a character ``augmentation`` (raw scalars per basis element).

    Only valid when d vanishes on B: the Leibniz law then forces nothing more.
    """
    F = B.field
    actions = [Matrix.identity(F, W.dim).scale(a) for a in augmentation]
    return SmashModule(W.family, W.degrees, W.X, B, actions)


def restrict_to_H(M: GradedModule) -> GradedModule:
    return GradedModule(M.family, M.degrees, M.X, check=False)


def restrict_map(f: ModuleHom) -> ModuleHom:
    return ModuleHom(restrict_to_H(f.source), restrict_to_H(f.target), f.mat)


def _require_map(f: ModuleHom):
    problems = f.violations()
    if problems:
        raise SmashError("not an A-module map: " + "; ".join(problems))


# ---------------------------------------------------------------------------
# homotopy category


def a_null_homotopy(f: ModuleHom) -> HomotopyWitness | None:
    """A-linear h on the free module over the source with h o (Lambda (x) Id) = f."""
    _require_map(f)
    return null_homotopy(f)


def is_homotopy_trivial(M: GradedModule) -> bool:
    return null_homotopy(ModuleHom.identity(M)) is not None


def a_cone(u: ModuleHom) -> tuple[GradedModule, Triangle]:
    _require_map(u)
    return cone(u)


@dataclass
class QuasiIsoReport:
    verdict: bool
    slash: dict = dc_field(default_factory=dict)  # a -> {degree: dim}
    cone_dim: int = 0

    def __str__(self):
        return f"quasi-iso: {'yes' if self.verdict else 'no'}"


def is_quasi_iso(f: ModuleHom) -> QuasiIsoReport:
    C, _ = a_cone(f)
    R = restrict_to_H(C)
    n = R.family.n
    slash = {a: slash_homology(R, a) for a in range(1, n)}
    verdict = all(not s for s in slash.values())
    if verdict != decompose(R).is_projective():
        raise AssertionError("slash homology and decomposition disagree on projectivity")
    return QuasiIsoReport(verdict, slash, C.dim)


# ---------------------------------------------------------------------------
# Ore conditions


def _block_map(sources, targets, blocks) -> ModuleHom:
    """Map between direct sums from a dict {(target_idx, source_idx): Matrix}."""
    F = sources[0].field
    rows = []
    for ti, T in enumerate(targets):
        row = [blocks.get((ti, si), Matrix(F, T.dim, S.dim)) for si, S in enumerate(sources)]
        rows.append(hstack(F, row))
    mat = vstack(F, rows)
    return ModuleHom(direct_sum(*sources), direct_sum(*targets), mat)


def _component(total: GradedModule, parts, k, inclusion: ModuleHom) -> ModuleHom:
    """Projection of a submodule of a direct sum onto its k-th summand."""
    F = total.field
    start = sum(p.dim for p in parts[:k])
    P = Matrix(F, parts[k].dim, total.dim)
    for t in range(parts[k].dim):
        P.data[t][start + t] = F.one
    return ModuleHom(inclusion.source, parts[k], P @ inclusion.mat)


@dataclass
class OrePullback:
    C: GradedModule
    h_X: ModuleHom
    h_Z: ModuleHom
    square_witness: HomotopyWitness | None
    h_Z_quasi_iso: bool


def ore_pullback(s: ModuleHom, f: ModuleHom, *, check_s: bool = True) -> OrePullback:
    """C = ker(X + Z + (free (x) Y) -> Y), (x, z, a) -> s x - f z - (eps (x) 1) a.

    s h_X - f h_Z = (eps (x) 1) h_a factors through a free module.
    """
    _require_map(s)
    _require_map(f)
    if s.target.dim != f.target.dim or s.target.degrees != f.target.degrees:
        raise SmashError("s and f must share their target")
    if check_s and not is_quasi_iso(s).verdict:
        raise SmashError("s is not a quasi-isomorphism")
    Xm, Zm, Ym = s.source, f.source, s.target
    FY, eps = counit_map(Ym)
    parts = [Xm, Zm, FY]
    g = _block_map(parts, [Ym], {(0, 0): s.mat, (0, 1): -f.mat, (0, 2): -eps.mat})
    C, inc = kernel(g)
    hX = _component(g.source, parts, 0, inc)
    hZ = _component(g.source, parts, 1, inc)
    witness = null_homotopy(s @ hX - f @ hZ)
    return OrePullback(C, hX, hZ, witness, is_quasi_iso(hZ).verdict)


@dataclass
class OreKill:
    W: GradedModule
    t: ModuleHom
    repaired: bool
    t_quasi_iso: bool
    ft_witness: HomotopyWitness | None


def ore_kill(f: ModuleHom, s: ModuleHom, *, check_s: bool = True) -> OreKill:
    """A quasi-isomorphism t: W -> X with f t null-homotopic, given s f null-homotopic.

    When s f is only null-homotopic, Y is enlarged by the free module carrying
    the homotopy so that the composite vanishes on the nose.  W is the kernel
    of g: X + (F (x) Y) + (F (x) F (x) Z) -> Y + (F (x) Z) + (F (x) Z), and t
    is the projection onto X.
    """
    _require_map(f)
    _require_map(s)
    if check_s and not is_quasi_iso(s).verdict:
        raise SmashError("s is not a quasi-isomorphism")
    Xm, Ym, Zm = f.source, f.target, s.target
    F = Xm.field
    repaired = False
    sf = s @ f
    if sf.is_zero():
        Y1, f1, s1 = Ym, f.mat, s.mat
    else:
        w = null_homotopy(sf)
        if w is None:
            raise SmashError("precondition: s f is not null-homotopic")
        repaired = True
        FX, iota = h_tensor(Xm)
        Y1 = direct_sum(Ym, FX)
        f1 = vstack(F, [f.mat, -iota.mat])
        s1 = hstack(F, [s.mat, w.h.mat])
    n = Xm.family.n
    FY, epsY = counit_map(Y1)
    FZ, epsZ = counit_map(Zm)
    FFZ, epsFZ = counit_map(FZ)  # eps (x) 1 (x) 1
    # Id (x) eps (x) 1 and Id (x) s1 on the outer free factor
    id_eps = Matrix(F, FZ.dim, FFZ.dim)
    dz = Zm.dim
    for a in range(n):
        for z in range(dz):
            id_eps.data[a * dz + z][a * n * dz + z] = F.one
    id_s = Matrix.identity(F, n).kron(s1)
    sources = [Xm, FY, FFZ]
    targets = [Y1, FZ, FZ]
    blocks = {
        (0, 0): f1,
        (0, 1): -epsY.mat,
        (1, 2): -epsFZ.mat,
        (2, 1): id_s,
        (2, 2): id_eps,
    }
    g = _block_map(sources, targets, blocks)
    W, inc = kernel(g)
    t = _component(g.source, sources, 0, inc)
    return OreKill(W, t, repaired, is_quasi_iso(t).verdict, null_homotopy(f @ t))


# ---------------------------------------------------------------------------
# characteristic 2: the group ring and complexes


@dataclass
class DG2Report:
    dim: int
    rank_d: int
    dim_ker: int
    dim_im: int
    derived_trivial: bool
    homotopy_trivial: bool

    @property
    def consistent(self) -> bool:
        return self.derived_trivial or not self.homotopy_trivial

    def lines(self) -> list[str]:
        yn = {True: "yes", False: "no"}
        return [
            f"dim: {self.dim}",
            f"rank d: {self.rank_d}, dim ker d: {self.dim_ker}, dim im d: {self.dim_im}",
            f"derived-trivial: {yn[self.derived_trivial]}",
            f"homotopy-trivial: {yn[self.homotopy_trivial]}",
            f"homotopy-trivial implies derived-trivial: {yn[self.consistent]}",
        ]


def dg_p2_checks(M: GradedModule) -> DG2Report:
    """d = g + 1 acts by X; compare ker d = im d with contractibility."""
    if M.family.kind != GROUP_RING:
        raise SmashError("dg_p2_checks needs the group ring of Z_2 in characteristic 2")
    if isinstance(M, SmashModule) and not M.algebra.deriv.is_zero():
        raise SmashError("Z_2 must act trivially on A_0 (derivation zero)")
    r = rank(M.X)
    ker = M.dim - r
    derived = ker == r
    homotopy = is_homotopy_trivial(M)
    return DG2Report(M.dim, r, ker, r, derived, homotopy)


def free_over_h(M: GradedModule) -> GradedModule:
    """The free module (top generator in degree 0) over M."""
    return tensor(free_top(M.family), M)


__all__ = [
    "SmashError",
    "DerivationAlgebra",
    "ground_algebra",
    "truncated_algebra",
    "validate_derivation_algebra",
    "SmashModule",
    "validate_smash_module",
    "induced_module",
    "trivial_action_module",
    "restrict_to_H",
    "restrict_map",
    "a_null_homotopy",
    "is_homotopy_trivial",
    "a_cone",
    "QuasiIsoReport",
    "is_quasi_iso",
    "OrePullback",
    "ore_pullback",
    "OreKill",
    "ore_kill",
    "DG2Report",
    "dg_p2_checks",
    "free_over_h",
]
