"""Random modules and morphisms for property tests and demos."""

from __future__ import annotations

import random
from fractions import Fraction

from .exactfield import Matrix, inverse, rank
from .family import HopfFamily
from .grmod import GradedModule, ModuleHom, direct_sum, hom_basis, make_indecomposable, zero_module


def random_invertible(F, size: int, rng: random.Random) -> Matrix:
    while True:
        A = Matrix(F, size, size, [[F.random(rng) for _ in range(size)] for _ in range(size)])
        if rank(A) == size:
            return A


def scramble(M: GradedModule, rng: random.Random) -> GradedModule:
    """Conjugate X by a random degree-preserving change of basis."""
    F = M.field
    P = Matrix.identity(F, M.dim)
    for idx in M.blocks.values():
        B = random_invertible(F, len(idx), rng)
        for a, r in enumerate(idx):
            for b, c in enumerate(idx):
                P.data[r][c] = B.data[a][b]
    Pinv = inverse(P)
    extra = [P @ A @ Pinv for A, _ in M.extra_maps()]
    return M.rebuild(M.degrees, P @ M.X @ Pinv, extra)


def random_module(
    family: HopfFamily,
    rng: random.Random,
    max_summands: int = 3,
    shifts: range = range(-2, 3),
    half: bool = False,
    scrambled: bool = True,
) -> GradedModule:
    """Direct sum of 1..max_summands random indecomposables, optionally disguised."""
    k = rng.randint(1, max_summands)
    parts = []
    for _ in range(k):
        i = rng.randrange(family.n)
        j = rng.choice(list(shifts))
        if half and rng.random() < 0.5:
            j = Fraction(2 * j + 1, 2)
        parts.append(make_indecomposable(family, i, j))
    M = direct_sum(*parts)
    return scramble(M, rng) if scrambled else M


def random_hom(M: GradedModule, N: GradedModule, rng: random.Random) -> ModuleHom:
    F = M.field
    h = ModuleHom.zero(M, N)
    for b in hom_basis(M, N):
        c = F.random(rng)
        if not F.is_zero(c):
            h = h + b.scale(c)
    return h


def random_module_or_zero(family, rng, **kw) -> GradedModule:
    if rng.random() < 0.1:
        return zero_module(family)
    return random_module(family, rng, **kw)
