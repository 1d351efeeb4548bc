import random

import pytest

from equisyz.polyring import GradedPolynomialRing, Polynomial, Vector
from equisyz.gradmod import FPModule, base_change, iso_surrogate_equal
from equisyz.weyl import (
    ReflectionGroup, WEquivariantFreeModule, GroupClosureError,
    cyclic_sign_group, symmetric_group_on_sum_zero, signed_permutation_rank2,
    product_group, group_from_json,
)
from helpers import random_homogeneous


def test_closure_orders():
    assert cyclic_sign_group().order == 2
    assert symmetric_group_on_sum_zero(3).order == 6
    assert symmetric_group_on_sum_zero(4).order == 24
    assert signed_permutation_rank2().order == 8


def test_closure_bound_exceeded():
    ring = GradedPolynomialRing(["x", "y"])
    x, y = ring.vars()
    shear = [[1, 1], [0, 1]]  # infinite order
    with pytest.raises(GroupClosureError):
        ReflectionGroup([shear], [x, y], ring=ring, max_order=100)


def test_verify_accepts_builtins():
    for group in (cyclic_sign_group(), symmetric_group_on_sum_zero(3),
                  signed_permutation_rank2()):
        report = group.verify()
        assert report.ok, report.failures()


def test_verify_rejects_non_invariant():
    ring = GradedPolynomialRing(["t"])
    t = ring.var(0)
    bad = ReflectionGroup([[[-1]]], [t ** 3], ring=ring)
    report = bad.verify()
    assert not report.ok
    with pytest.raises(ValueError):
        bad.verify_or_raise()


def test_verify_rejects_wrong_order_product():
    # invariant of too-high degree: t^4 for the sign group (product 2 != 2? 4/2=2... use t^6)
    ring = GradedPolynomialRing(["t"])
    t = ring.var(0)
    bad = ReflectionGroup([[[-1]]], [t ** 4], ring=ring)
    report = bad.verify()
    assert not report.ok


def test_coinvariant_bases():
    z2 = cyclic_sign_group()
    assert z2.coinvariant_basis() == [(0,), (1,)]
    a2 = symmetric_group_on_sum_zero(3)
    assert len(a2.coinvariant_basis()) == 6
    assert a2.poincare_polynomial() == {0: 1, 2: 2, 4: 2, 6: 1}
    b2 = signed_permutation_rank2()
    assert len(b2.coinvariant_basis()) == 8
    trivial = ReflectionGroup([], [], ring=GradedPolynomialRing([], []))
    assert trivial.order == 1
    assert trivial.coinvariant_basis() == [()]


def test_kostant_identity_exact():
    for group in (cyclic_sign_group(), symmetric_group_on_sum_zero(3),
                  signed_permutation_rank2()):
        assert group._kostant_identity()
        assert sum(group.poincare_polynomial().values()) == group.order


def test_molien_matches_invariant_degrees():
    for group in (cyclic_sign_group(), symmetric_group_on_sum_zero(3),
                  signed_permutation_rank2()):
        assert group.molien_series(40) == group.invariant_ring_series(40)


def test_reynolds_examples():
    z2 = cyclic_sign_group()
    t = z2.ring.var(0)
    assert z2.reynolds(t).is_zero()
    assert z2.reynolds(t * t) == t * t

    a2 = symmetric_group_on_sum_zero(3)
    x = a2.ring.var(0)
    r = a2.reynolds(x * x)
    assert not r.is_zero()
    assert all(a2.act(g, r) == r for g in a2.generators)


def test_reynolds_idempotent_property():
    rng = random.Random(3)
    a2 = symmetric_group_on_sum_zero(3)
    for _ in range(8):
        f = random_homogeneous(a2.ring, rng.choice([2, 4, 6, 8]), rng)
        rf = a2.reynolds(f)
        assert a2.reynolds(rf) == rf
        assert all(a2.act(g, rf) == rf for g in a2.generators)


def test_expand_reconstruction_property():
    rng = random.Random(9)
    for group in (cyclic_sign_group(), symmetric_group_on_sum_zero(3)):
        emb = group.embedding()
        ring = group.ring
        for _ in range(6):
            f = random_homogeneous(ring, rng.choice([0, 2, 4, 6]), rng)
            back = ring.zero()
            for b, c in group.expand(f).items():
                back = back + emb(c) * ring.monomial(b)
            assert back == f


def test_expand_coefficients_are_homogeneous():
    a2 = symmetric_group_on_sum_zero(3)
    x, y = a2.ring.vars()
    f = x ** 2 * y ** 2
    for b, c in a2.expand(f).items():
        assert c.homogeneous_degree() == 8 - a2.ring.weighted_degree(b)


def test_module_invariants_sphere_datum():
    z2 = cyclic_sign_group()
    mod = WEquivariantFreeModule(z2, ["N", "S"], [{"N": "S", "S": "N"}])
    inv = mod.invariants()
    m = inv.module.minimized()
    assert m.num_rels == 0 and sorted(m.gens_degrees) == [0, 2]
    assert inv.molien_consistent
    # generators are the expected invariant tuples (1,1) and (t,-t)
    ring = z2.ring
    t = ring.var(0)
    gens_gb = __import__("equisyz.polyring", fromlist=["SubmoduleGB"]).SubmoduleGB(
        ring, 2, inv.generators)
    assert gens_gb.contains(Vector.from_polys([ring.one(), ring.one()]))
    assert gens_gb.contains(Vector.from_polys([t, -t]))


def test_module_invariants_trivial_action():
    z2 = cyclic_sign_group()
    mod = WEquivariantFreeModule(z2, ["pt"], [{"pt": "pt"}],
                                 generator_matrices=[[[1]]])
    inv = mod.invariants()
    m = inv.module.minimized()
    assert m.num_rels == 0 and sorted(m.gens_degrees) == [0, 2]
    assert inv.molien_consistent


def test_module_invariants_trivial_group():
    trivial = ReflectionGroup([], [], ring=GradedPolynomialRing([], []))
    mod = WEquivariantFreeModule(trivial, ["a", "b"], [])
    inv = mod.invariants()
    m = inv.module.minimized()
    assert m.num_rels == 0 and len(m.gens_degrees) == 2


def test_module_invariants_regular_representation():
    z2 = cyclic_sign_group()
    mod = WEquivariantFreeModule(z2, ["e", "s"], [{"e": "s", "s": "e"}])
    inv = mod.invariants()
    m = inv.module.minimized()
    # isomorphic to R_T as a module over the invariants: free on degrees 0, 2
    assert m.num_rels == 0 and sorted(m.gens_degrees) == [0, 2]
    down = z2.restrict_scalars(FPModule.free(z2.ring, (0,)))
    assert iso_surrogate_equal(m, down.minimized())


def test_inconsistent_action_rejected():
    a2 = symmetric_group_on_sum_zero(3)
    with pytest.raises(ValueError):
        WEquivariantFreeModule(a2, ["a", "b"],
                               [{"a": "b", "b": "a"}, {"a": "a", "b": "b"}])


def test_sphere_kernel_invariants_base_change_recovers_series():
    # the sphere kernel {(f,g): f = g mod t} is W-stable; extending its
    # invariants back to the torus ring must reproduce its Hilbert series
    z2 = cyclic_sign_group()
    ring = z2.ring
    t = ring.var(0)
    kernel_gens = [Vector.from_polys([ring.one(), ring.one()]),
                   Vector.from_polys([t, ring.zero()])]
    from equisyz.polyring import syzygy_basis
    kernel = FPModule.from_columns(ring, (0, 2),
                                   syzygy_basis(ring, 2, kernel_gens))
    mod = WEquivariantFreeModule(z2, ["N", "S"], [{"N": "S", "S": "N"}])
    inv = mod.invariants(submodule_gens=kernel_gens)
    up = base_change(inv.module, z2.embedding())
    assert up.hilbert().series_equal(kernel.hilbert(), 30)


def test_product_group():
    prod = product_group(cyclic_sign_group(), cyclic_sign_group())
    assert prod.order == 4
    assert prod.verify().ok
    assert len(prod.coinvariant_basis()) == 4


def test_group_json_roundtrip():
    obj = {"rank": 1, "generators": [[[-1]]], "invariants": ["t1^2"]}
    g = group_from_json(obj)
    assert g.order == 2 and g.verify().ok


def test_reynolds_projector_on_monomial_basis_degree_20():
    # projector identities on every monomial through weighted degree 20
    for group in (cyclic_sign_group(), symmetric_group_on_sum_zero(3)):
        ring = group.ring
        from helpers import monomials_of_degree
        for deg in range(0, 22, 2):
            for exps in monomials_of_degree(ring, deg):
                m = ring.monomial(exps)
                r = group.reynolds(m)
                assert group.reynolds(r) == r
                assert all(group.act(g, r) == r for g in group.generators)


def test_regular_representation_s3():
    a2 = symmetric_group_on_sum_zero(3)
    names = ["w%d" % i for i in range(6)]
    # left multiplication action of the generators on the element list
    from equisyz.weyl import _mat_mul
    index = {w: i for i, w in enumerate(a2.elements)}
    perms = []
    for g in a2.generators:
        perms.append({names[index[w]]: names[index[_mat_mul(g, w)]]
                      for w in a2.elements})
    mod = WEquivariantFreeModule(a2, names, perms)
    inv = mod.invariants()
    m = inv.module.minimized()
    # invariants of the regular representation: R_T as a module over the
    # invariant subring, free with the coinvariant degrees
    assert m.num_rels == 0
    assert sorted(m.gens_degrees) == [0, 2, 2, 4, 4, 6]
    assert inv.molien_consistent


def test_symmetric_group_small_ranks_verify():
    s2 = symmetric_group_on_sum_zero(2)
    assert s2.order == 2 and s2.verify().ok
    s4 = symmetric_group_on_sum_zero(4)
    assert s4.order == 24 and s4.verify().ok
    assert len(s4.coinvariant_basis()) == 24


def test_restrict_scalars_rejects_unfree_datum():
    # wrong invariant degree: the staircase has four monomials but |W| = 2
    ring = GradedPolynomialRing(["t"])
    t = ring.var(0)
    bad = ReflectionGroup([[[-1]]], [t ** 4], ring=ring)
    from equisyz.gradmod import FPModule
    with pytest.raises(ValueError):
        bad.restrict_scalars(FPModule.free(ring, (0,)))
