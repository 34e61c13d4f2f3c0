"""Random instance generators shared by the stable, comod and acceptance tests."""

from __future__ import annotations

import random

from hopfolog.exactfield import Matrix, hstack, vstack
from hopfolog.grmod import ModuleHom, direct_sum
from hopfolog.sampling import random_hom, random_module
from hopfolog.stable import cone, h_tensor


def random_null_homotopic(M, N, rng: random.Random) -> ModuleHom:
    """h o embedding for a random h on the free module over M."""
    FM, iota = h_tensor(M)
    return random_hom(FM, N, rng) @ iota


def projection_first(A, B) -> ModuleHom:
    F = A.field
    mat = hstack(F, [Matrix.identity(F, A.dim), Matrix(F, A.dim, B.dim)])
    return ModuleHom(direct_sum(A, B), A, mat)


def triangle_morphism_instance(fam, rng: random.Random, max_summands: int = 2):
    """Two standard triangles and a pair (f, g) with g u - u' f null-homotopic."""
    kw = dict(max_summands=max_summands, shifts=range(-1, 2))
    X = random_module(fam, rng, **kw)
    X2 = random_module(fam, rng, **kw)
    Y2 = random_module(fam, rng, **kw)
    f = random_hom(X, X2, rng)
    u2 = random_hom(X2, Y2, rng)
    base = u2 @ f + random_null_homotopic(X, Y2, rng)
    if rng.random() < 0.5:
        u, g = base, ModuleHom.identity(Y2)
    else:
        W = random_module(fam, rng, **kw)
        side = random_hom(X, W, rng)
        F = fam.field
        Y = direct_sum(Y2, W)
        u = ModuleHom(X, Y, vstack(F, [base.mat, side.mat]))
        g = projection_first(Y2, W)
    _, t1 = cone(u)
    _, t2 = cone(u2)
    return t1, t2, f, g


# --- smash-module instances ----------------------------------------------------------


def random_algebra(fam, rng: random.Random):
    """B of dimension at most 3: k, or k[t]/(t^l) with d(t) in {0, 1}."""
    from hopfolog.comod import ground_algebra, truncated_algebra

    choice = rng.randrange(4)
    if choice == 0:
        return ground_algebra(fam)
    length = 2 if choice < 3 else 3
    # d(t) = 1 is a derivation only when p divides the length
    d_of_t = rng.choice([0, 1]) if length % fam.p == 0 else 0
    return truncated_algebra(fam, length, d_of_t=d_of_t)


def random_smash_module(B, rng: random.Random, max_parts: int = 2):
    """Direct sum of induced modules B (x) W with small random W."""
    from hopfolog.comod import induced_module

    parts = []
    for _ in range(rng.randint(1, max_parts)):
        W = random_module(B.family, rng, max_summands=1, shifts=range(-1, 2), scrambled=False)
        parts.append(induced_module(B, W))
    return direct_sum(*parts)


def random_free_smash(M, rng: random.Random):
    """A module of the form free (x) N for a small random smash module N over M's algebra."""
    N = random_smash_module(M.algebra, rng, max_parts=1)
    FN, _ = h_tensor(N)
    return FN


def random_quasi_iso(target_or_source, rng: random.Random, into: bool):
    """A quasi-isomorphism out of (into=True) or onto (into=False) the given module.

    Returns (s, other) where s: M -> M + P or s: M + P -> M, with P free.
    """
    M = target_or_source
    F = M.field
    P = random_free_smash(M, rng)
    if into:
        k = random_hom(M, P, rng)
        Y = direct_sum(M, P)
        s = ModuleHom(M, Y, vstack(F, [Matrix.identity(F, M.dim), k.mat]))
        return s, Y
    k = random_hom(P, M, rng)
    X = direct_sum(M, P)
    s = ModuleHom(X, M, hstack(F, [Matrix.identity(F, M.dim), k.mat]))
    return s, X


def ore_pullback_instance(fam, rng: random.Random):
    """(s: X -> Y quasi-iso, f: Z -> Y)."""
    B = random_algebra(fam, rng)
    base = random_smash_module(B, rng)
    mode = rng.randrange(3)
    if mode == 0:
        s = ModuleHom.identity(base)
    else:
        s, _ = random_quasi_iso(base, rng, into=(mode == 1))
    Z = random_smash_module(B, rng)
    f = random_hom(Z, s.target, rng)
    return s, f


def ore_kill_instance(fam, rng: random.Random):
    """(f: X -> Y, s: Y -> Z quasi-iso) with s f null-homotopic."""
    B = random_algebra(fam, rng)
    X = random_smash_module(B, rng)
    F = fam.field
    mode = rng.randrange(3)
    if mode == 0:
        # Y = Z + P, s = (1, k); f lands in P, so s f = k m factors through P
        Z = random_smash_module(B, rng)
        s, Y = random_quasi_iso(Z, rng, into=False)
        m = random_hom(X, Y, rng)
        # keep only the free coordinates
        keep = Matrix(F, Y.dim, Y.dim)
        for r in range(Z.dim, Y.dim):
            keep.data[r][r] = F.one
        return ModuleHom(X, Y, keep @ m.mat), s
    Y = random_smash_module(B, rng)
    if mode == 1:
        f = ModuleHom.zero(X, Y)
    else:
        f = random_null_homotopic(X, Y, rng)
    s, _ = random_quasi_iso(Y, rng, into=True)
    return f, s


# --- p = 2 DG fixtures -----------------------------------------------------------------


def dg2_fixtures():
    """Hand-built modules over A_0 (x) k[Z_2] with expected (rank d, derived, homotopy).

    Every degree is 0 for the group ring; d = g + 1 is X; t acts through the second
    action matrix when A_0 = k[t]/(t^2).
    """
    from hopfolog import group_ring_z2
    from hopfolog.comod import SmashModule, ground_algebra, truncated_algebra

    fam = group_ring_z2()
    F = fam.field
    k = ground_algebra(fam)
    A0 = truncated_algebra(fam, 2, t_degree=0, d_of_t=0)

    def mat(rows):
        return Matrix.from_rows(F, rows)

    def over_k(X):
        n = len(X)
        return SmashModule(fam, [0] * n, mat(X), k, [Matrix.identity(F, n)])

    def over_a0(X, t):
        n = len(X)
        return SmashModule(fam, [0] * n, mat(X), A0, [Matrix.identity(F, n), mat(t)])

    z2 = [[0, 0], [0, 0]]
    j2 = [[0, 0], [1, 0]]
    z1 = [[0]]

    def blocks(*bs):
        n = sum(len(b) for b in bs)
        out = [[0] * n for _ in range(n)]
        o = 0
        for b in bs:
            for r, row in enumerate(b):
                for c, x in enumerate(row):
                    out[o + r][o + c] = x
            o += len(b)
        return out

    # free A-module A_0 (x) k[Z_2]: basis (1, t) (x) (1, d)
    free_X = blocks(j2, j2)
    free_t = [[0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0]]
    return [
        ("k, trivial", over_k(z1), 0, False, False),
        ("k, free", over_k(j2), 1, True, True),
        ("k, free + free", over_k(blocks(j2, j2)), 2, True, True),
        ("k, free + trivial", over_k(blocks(j2, z1)), 1, False, False),
        ("k, trivial + trivial", over_k(blocks(z1, z1)), 0, False, False),
        ("A_0, regular with d = 0", over_a0(z2, j2), 0, False, False),
        ("A_0, free", over_a0(free_X, free_t), 2, True, True),
        ("A_0, d = t (acyclic, not contractible)", over_a0(j2, j2), 1, True, False),
        ("A_0, two copies of d = t", over_a0(blocks(j2, j2), blocks(j2, j2)), 2, True, False),
        ("A_0, d = t plus free over k", over_a0(blocks(j2, j2), blocks(j2, z2)), 2, True, False),
        ("A_0, k[Z_2] with t = 0", over_a0(j2, z2), 1, True, True),
        ("A_0, regular + trivial, d = 0", over_a0(blocks(z2, z1), blocks(j2, z1)), 0, False, False),
    ]
