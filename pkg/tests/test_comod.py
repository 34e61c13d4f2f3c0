import random

import pytest
from hypothesis import given, settings, strategies as st

from hopfolog import group_ring_z2, taft, truncated
from hopfolog.comod import (
    DerivationAlgebra,
    SmashError,
    SmashModule,
    a_cone,
    a_null_homotopy,
    dg_p2_checks,
    free_over_h,
    ground_algebra,
    induced_module,
    is_homotopy_trivial,
    is_quasi_iso,
    ore_kill,
    ore_pullback,
    restrict_map,
    restrict_to_H,
    trivial_action_module,
    truncated_algebra,
    validate_derivation_algebra,
    validate_smash_module,
)
from hopfolog.exactfield import Matrix
from hopfolog.grmod import ModuleHom, decompose, direct_sum, is_isomorphic, make_indecomposable, zero_module
from hopfolog.sampling import random_hom, random_module
from hopfolog.stable import cone, h_tensor

from instances import (
    dg2_fixtures,
    ore_kill_instance,
    ore_pullback_instance,
    random_algebra,
    random_null_homotopic,
    random_quasi_iso,
    random_smash_module,
)

# --- derivation algebras ----------------------------------------------------------------


def test_ground_algebra_valid():
    for fam in (truncated(2), truncated(5), group_ring_z2()):
        assert validate_derivation_algebra(ground_algebra(fam)) == []


def test_truncated_algebra_char_2():
    B = truncated_algebra(truncated(2), 2, d_of_t=1)
    assert validate_derivation_algebra(B) == []
    assert B.d(B.basis_vector(1)) == B.basis_vector(0)
    assert validate_derivation_algebra(truncated_algebra(truncated(3), 3, d_of_t=1)) == []


def test_truncated_algebra_rejects_non_derivation():
    with pytest.raises(SmashError):
        truncated_algebra(truncated(3), 2, d_of_t=1)


def test_leibniz_violation_reported():
    fam = truncated(3)
    F = fam.field
    good = truncated_algebra(fam, 3, d_of_t=1)
    D = Matrix.from_rows(F, [[0, 1, 0], [0, 0, 0], [0, 0, 0]])  # d(t^2) = 0 breaks Leibniz
    bad = DerivationAlgebra(fam, good.degrees, good.mult, D)
    msgs = validate_derivation_algebra(bad)
    assert any("Leibniz fails on the pair (e1, e1)" in m for m in msgs)


def test_derivation_degree_checked():
    fam = truncated(3)
    F = fam.field
    good = truncated_algebra(fam, 3, d_of_t=0)
    D = Matrix.from_rows(F, [[0, 0, 0], [0, 0, 0], [1, 0, 0]])
    bad = DerivationAlgebra(fam, good.degrees, good.mult, D)
    assert any("degree" in m for m in validate_derivation_algebra(bad))


def test_taft_rejected():
    with pytest.raises(SmashError):
        ground_algebra(taft(3))


# --- smash modules --------------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3])
def test_induced_modules_valid(p):
    fam = truncated(p)
    rng = random.Random(p)
    for _ in range(10):
        B = random_algebra(fam, rng)
        M = random_smash_module(B, rng)
        assert validate_smash_module(M) == []
        FM, iota = h_tensor(M)
        assert isinstance(FM, SmashModule)
        assert validate_smash_module(FM) == []
        assert iota.is_valid()


def test_module_leibniz_on_products():
    fam = truncated(3)
    B = truncated_algebra(fam, 3, d_of_t=1)
    M = induced_module(B, make_indecomposable(fam, 1))
    F = fam.field
    t, t2 = M.actions[1], M.actions[2]
    # X (t t) computed as X t2 and through two applications of the law
    lhs = M.X @ t2
    rhs = (t.scale(F.from_int(2))) + t2 @ M.X
    assert lhs == rhs
    assert t @ t == t2


def test_bad_smash_module_rejected():
    fam = truncated(2)
    B = truncated_algebra(fam, 2, d_of_t=1)
    W = make_indecomposable(fam, 0)
    F = fam.field
    with pytest.raises(SmashError):
        # t acting by zero cannot satisfy X t = 1 + t X on a module with X = 0
        SmashModule(fam, W.degrees, W.X, B, [Matrix.identity(F, 1), Matrix(F, 1, 1)])


def test_restriction():
    fam = truncated(3)
    B = truncated_algebra(fam, 3, d_of_t=1)
    H = make_indecomposable(fam, 2)
    free = induced_module(B, H)
    R = restrict_to_H(free)
    assert R.dim == free.dim
    dec = decompose(R)
    assert dec.is_projective() and sum(dec.counts.values()) == B.dim
    W = zero_module(fam)
    assert restrict_to_H(induced_module(ground_algebra(fam), direct_sum(W, make_indecomposable(fam, 0)))).dim == 1


def test_trivial_action_module():
    fam = truncated(2)
    B = truncated_algebra(fam, 2, d_of_t=0)
    F = fam.field
    M = trivial_action_module(B, make_indecomposable(fam, 1), [F.one, F.zero])
    assert validate_smash_module(M) == []
    R = restrict_to_H(M)
    assert is_isomorphic(R, make_indecomposable(fam, 1))


# --- homotopy category ----------------------------------------------------------------


def test_a_null_homotopy_examples():
    fam = truncated(2)
    k = ground_algebra(fam)
    one = induced_module(k, make_indecomposable(fam, 0))
    assert a_null_homotopy(ModuleHom.identity(one)) is None
    assert not is_homotopy_trivial(one)
    FM, _ = h_tensor(one)
    w = a_null_homotopy(ModuleHom.identity(FM))
    assert w is not None and w.check()
    z = a_null_homotopy(ModuleHom.zero(one, one))
    assert z is not None and z.check()
    assert is_homotopy_trivial(direct_sum(FM, FM))


def test_a_null_homotopy_rejects_non_linear():
    fam = truncated(2)
    B = truncated_algebra(fam, 2, d_of_t=1)
    M = induced_module(B, make_indecomposable(fam, 0))
    F = fam.field
    bad = ModuleHom(M, M, Matrix.from_rows(F, [[1, 0], [0, 0]]))
    with pytest.raises(SmashError):
        a_null_homotopy(bad)


@pytest.mark.parametrize("p", [2, 3])
def test_a_cone(p):
    fam = truncated(p)
    rng = random.Random(10 + p)
    for _ in range(5):
        B = random_algebra(fam, rng)
        M = random_smash_module(B, rng)
        C, _ = a_cone(ModuleHom.identity(M))
        assert is_homotopy_trivial(C)
        N = random_smash_module(B, rng)
        u = random_hom(M, N, rng)
        C, t = a_cone(u)
        assert validate_smash_module(C) == []
        assert t.v.is_valid() and t.w.is_valid()
        Cr, _ = cone(restrict_map(u))
        assert decompose(restrict_to_H(C)) == decompose(Cr)


def test_cone_of_zero_source():
    fam = truncated(3)
    B = truncated_algebra(fam, 3, d_of_t=1)
    M = induced_module(B, make_indecomposable(fam, 1))
    Z = SmashModule(fam, [], Matrix(fam.field, 0, 0), B, [Matrix(fam.field, 0, 0)] * 3)
    C, _ = a_cone(ModuleHom.zero(Z, M))
    assert is_isomorphic(restrict_to_H(C), restrict_to_H(M))


def test_quasi_iso_examples():
    fam = truncated(3)
    rng = random.Random(3)
    B = truncated_algebra(fam, 3, d_of_t=1)
    M = random_smash_module(B, rng)
    rep = is_quasi_iso(ModuleHom.identity(M))
    assert rep.verdict and str(rep) == "quasi-iso: yes"
    s, _ = random_quasi_iso(M, rng, into=True)
    assert is_quasi_iso(s).verdict
    k = ground_algebra(fam)
    one = induced_module(k, make_indecomposable(fam, 0))
    rep0 = is_quasi_iso(ModuleHom.zero(one, one))
    assert not rep0.verdict and str(rep0) == "quasi-iso: no"
    assert any(rep0.slash.values())


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(0, 2**31))
def test_quasi_iso_stable_under_free_summands(p, seed):
    rng = random.Random(seed)
    fam = truncated(p)
    B = random_algebra(fam, rng)
    M = random_smash_module(B, rng, max_parts=1)
    N = random_smash_module(B, rng, max_parts=1)
    f = random_hom(M, N, rng)
    base = is_quasi_iso(f).verdict
    s, Y = random_quasi_iso(N, rng, into=True)
    assert is_quasi_iso(s @ f).verdict == base


# --- Ore constructions --------------------------------------------------------------------


def test_ore_pullback_identity():
    fam = truncated(2)
    rng = random.Random(1)
    B = truncated_algebra(fam, 2, d_of_t=1)
    Y = random_smash_module(B, rng)
    Z = random_smash_module(B, rng)
    f = random_hom(Z, Y, rng)
    r = ore_pullback(ModuleHom.identity(Y), f)
    assert r.h_Z_quasi_iso
    assert r.square_witness is not None and r.square_witness.check()
    r0 = ore_pullback(ModuleHom.identity(Y), ModuleHom.zero(Z, Y))
    assert r0.h_Z_quasi_iso


def test_ore_pullback_rejects_non_quasi_iso():
    fam = truncated(2)
    k = ground_algebra(fam)
    one = induced_module(k, make_indecomposable(fam, 0))
    with pytest.raises(SmashError):
        ore_pullback(ModuleHom.zero(one, one), ModuleHom.identity(one))


@pytest.mark.parametrize("p", [2, 3])
def test_ore_pullback_random(p):
    rng = random.Random(100 + p)
    for _ in range(6):
        s, f = ore_pullback_instance(truncated(p), rng)
        r = ore_pullback(s, f)
        assert r.h_X.is_valid() and r.h_Z.is_valid()
        assert r.h_Z_quasi_iso
        assert r.square_witness is not None and r.square_witness.check()


def test_ore_kill_zero_map():
    fam = truncated(2)
    rng = random.Random(6)
    B = truncated_algebra(fam, 2, d_of_t=1)
    X = random_smash_module(B, rng)
    Y = random_smash_module(B, rng)
    s, _ = random_quasi_iso(Y, rng, into=True)
    r = ore_kill(ModuleHom.zero(X, Y), s)
    assert not r.repaired and r.t_quasi_iso
    assert r.ft_witness is not None


def test_ore_kill_needs_repair():
    fam = truncated(3)
    rng = random.Random(7)
    B = ground_algebra(fam)
    X = random_smash_module(B, rng)
    Y = random_smash_module(B, rng)
    f = random_null_homotopic(X, Y, rng)
    while f.is_zero():
        f = random_null_homotopic(X, Y, rng)
    r = ore_kill(f, ModuleHom.identity(Y))
    assert r.repaired and r.t_quasi_iso
    assert r.ft_witness is not None and r.ft_witness.check()


def test_ore_kill_precondition():
    fam = truncated(2)
    k = ground_algebra(fam)
    one = induced_module(k, make_indecomposable(fam, 0))
    with pytest.raises(SmashError):
        ore_kill(ModuleHom.identity(one), ModuleHom.identity(one))


@pytest.mark.parametrize("p", [2, 3])
def test_ore_kill_random(p):
    rng = random.Random(200 + p)
    for _ in range(6):
        f, s = ore_kill_instance(truncated(p), rng)
        r = ore_kill(f, s)
        assert r.t.is_valid()
        assert r.t_quasi_iso
        assert r.ft_witness is not None and r.ft_witness.check()


# --- p = 2 DG correspondence ------------------------------------------------------------


@pytest.mark.parametrize("case", dg2_fixtures(), ids=lambda c: c[0])
def test_dg2_fixture(case):
    _, M, rank_d, derived, homotopy = case
    rep = dg_p2_checks(M)
    assert rep.rank_d == rank_d
    assert rep.dim_ker == M.dim - rank_d
    assert rep.derived_trivial == derived
    assert rep.homotopy_trivial == homotopy
    assert rep.consistent
    assert rep.lines()[-1] == "homotopy-trivial implies derived-trivial: yes"


def test_dg2_rejects_other_families():
    fam = truncated(3)
    with pytest.raises(SmashError):
        dg_p2_checks(make_indecomposable(fam, 0))


def test_dg2_free_modules_homotopy_trivial():
    rng = random.Random(4)
    fam = group_ring_z2()
    for _ in range(5):
        M = random_module(fam, rng)
        P = free_over_h(M)
        rep = dg_p2_checks(P)
        assert rep.derived_trivial and rep.homotopy_trivial
