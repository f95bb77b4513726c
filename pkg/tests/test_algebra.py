import pytest

from quasihopf.algebra import (apply_at, delta_tree, derive_elements, tensor_mul,
                               verify_antipode, verify_quasi_bialgebra,
                               verify_quasitriangular, verify_ribbon)
from quasihopf.scalar import ONE, rat
from quasihopf.tensors import Tensor


def test_tensor_mul_group_elements(kz2):
    # g x g times g x 1 = e x g in k[Z/2]
    g = 1
    a = Tensor(2, 2, {(g, g): ONE})
    b = Tensor(2, 2, {(g, 0): ONE})
    assert tensor_mul(a, b, kz2) == Tensor(2, 2, {(0, g): ONE})


def test_tensor_mul_unit(kz3):
    a = Tensor(3, 2, {(1, 2): rat(3), (0, 1): rat(-1, 2)})
    unit2 = kz3.unit_power(2)
    assert tensor_mul(unit2, a, kz3) == a
    assert tensor_mul(a, unit2, kz3) == a


def test_phi_times_phi_inv_dpr(dz2w):
    assert tensor_mul(dz2w.phi, dz2w.phi_inv, dz2w) == dz2w.unit_power(3)


def test_apply_at_delta_unit(kz2):
    assert apply_at(kz2.unit_power(2), 0, "D", kz2) == kz2.unit_power(3)


def test_apply_at_eps_phi(dz2w):
    assert apply_at(dz2w.phi, 1, "E", dz2w) == dz2w.unit_power(2)


def test_apply_at_antipode_group(kz2):
    g = Tensor.basis(2, (1,))
    assert apply_at(g, 0, "S", kz2) == g


def test_apply_at_out_of_range(kz2):
    with pytest.raises(IndexError):
        apply_at(kz2.unit, 1, "S", kz2)


def test_delta_tree_leaf_and_pair(kz3):
    x = Tensor.basis(3, (1,))
    assert delta_tree(x, "leaf", kz3) == x
    assert delta_tree(x, ("a", "b"), kz3) == kz3.coproduct[1]


def test_delta_tree_right_comb_unit(kz3):
    assert delta_tree(kz3.unit, ("a", ("b", "c")), kz3) == kz3.unit_power(3)


def test_permute_phi_312(dz2w):
    phi = dz2w.phi
    rotated = phi.permute((2, 0, 1))
    for (x, y, z), c in phi.entries.items():
        assert rotated.coeff((y, z, x)) == c


def test_permute_identity_and_involution(dz2w):
    t = dz2w.r
    assert t.permute((0, 1)) == t
    assert t.permute((1, 0)).permute((1, 0)) == t


def test_group_algebra_verifies(kz3):
    assert verify_quasi_bialgebra(kz3).passed
    assert verify_antipode(kz3).passed
    assert verify_quasitriangular(kz3).passed


def test_group_algebra_s3_verifies(ks3):
    assert verify_quasi_bialgebra(ks3).passed
    assert verify_antipode(ks3).passed


def test_derived_kz2_collapse(kz2):
    der = derive_elements(kz2)
    assert der.u == kz2.unit
    assert der.big_g == kz2.unit
    assert der.monodromy == kz2.unit_power(2)
    assert der.p_l == kz2.unit_power(2)
    assert der.q_l == kz2.unit_power(2)


def test_u_times_s_u_central(dz2w_ctx):
    alg, der, _ = dz2w_ctx
    us = alg.mul(der.u, alg.s(der.u))
    for i in range(alg.dim):
        e = alg.basis_element(i)
        assert alg.mul(us, e) == alg.mul(e, us)


def test_rinv_formula_matches_linear_inverse(dz2w_ctx):
    alg, der, _ = dz2w_ctx
    assert der.r_inv == alg.invert(alg.r)


def test_rinv_two_sided(dz3w_ctx):
    alg, der, _ = dz3w_ctx
    unit2 = alg.unit_power(2)
    assert tensor_mul(der.r_inv, alg.r, alg) == unit2
    assert tensor_mul(alg.r, der.r_inv, alg) == unit2


def test_phi_corruption_detected(dz2w):
    # Replacing Phi by 1x1x1 while keeping the twisted coproduct: on an abelian
    # group the Phi-conjugation acts trivially on the image of Delta^2, so
    # quasi-coassociativity survives; the corruption surfaces in the antipode
    # Phi-conditions and in both hexagons.
    from quasihopf.algebra import QuasiHopfData
    broken = QuasiHopfData(
        dim=dz2w.dim, mult_rows=dz2w.mult_rows, unit=dz2w.unit,
        counit=dz2w.counit, coproduct=dz2w.coproduct, antipode=dz2w.antipode,
        phi=dz2w.unit_power(3), r=dz2w.r, alpha=dz2w.alpha, beta=dz2w.beta,
        v=dz2w.v, phi_inv=dz2w.unit_power(3), v_inv=dz2w.v_inv)
    assert verify_quasi_bialgebra(broken).passed
    assert not verify_antipode(broken).passed
    assert not verify_quasitriangular(broken).passed


def test_quasi_coassoc_corruption_detected(dz2w):
    # A corrupted coproduct entry is what genuinely breaks quasi-coassociativity.
    from quasihopf.algebra import QuasiHopfData
    cop = [t.copy() for t in dz2w.coproduct]
    idx = sorted(cop[3].entries)[0]
    cop[3].entries[idx] = -cop[3].entries[idx]
    broken = QuasiHopfData(
        dim=dz2w.dim, mult_rows=dz2w.mult_rows, unit=dz2w.unit,
        counit=dz2w.counit, coproduct=cop, antipode=dz2w.antipode,
        phi=dz2w.phi, r=dz2w.r, alpha=dz2w.alpha, beta=dz2w.beta,
        v=dz2w.v, phi_inv=dz2w.phi_inv, v_inv=dz2w.v_inv)
    rep = verify_quasi_bialgebra(broken)
    assert not rep.passed
    failing = {c.name: c.witness for c in rep.failures()}
    assert "quasi-coassociativity" in failing
    assert failing["quasi-coassociativity"]  # witness present


def test_corrupted_alpha_detected(dz2):
    from quasihopf.algebra import QuasiHopfData
    bad_alpha = dz2.basis_element(1)
    broken = QuasiHopfData(
        dim=dz2.dim, mult_rows=dz2.mult_rows, unit=dz2.unit, counit=dz2.counit,
        coproduct=dz2.coproduct, antipode=dz2.antipode, phi=dz2.phi, r=dz2.r,
        alpha=bad_alpha, beta=dz2.beta, v=dz2.v, phi_inv=dz2.phi_inv,
        v_inv=dz2.v_inv)
    rep = verify_antipode(broken)
    assert not rep.passed


def test_r_sign_flip_breaks_hexagon(dz2):
    from quasihopf.algebra import QuasiHopfData
    bad_r = dz2.r.copy()
    idx = sorted(bad_r.entries)[1]
    bad_r.entries[idx] = -bad_r.entries[idx]
    broken = QuasiHopfData(
        dim=dz2.dim, mult_rows=dz2.mult_rows, unit=dz2.unit, counit=dz2.counit,
        coproduct=dz2.coproduct, antipode=dz2.antipode, phi=dz2.phi, r=bad_r,
        alpha=dz2.alpha, beta=dz2.beta, v=dz2.v, phi_inv=dz2.phi_inv,
        v_inv=dz2.v_inv)
    rep = verify_quasitriangular(broken)
    assert not rep.passed


def test_negated_v_fails_ribbon(dz2_ctx):
    from quasihopf.algebra import QuasiHopfData
    alg, der, _ = dz2_ctx
    broken = QuasiHopfData(
        dim=alg.dim, mult_rows=alg.mult_rows, unit=alg.unit, counit=alg.counit,
        coproduct=alg.coproduct, antipode=alg.antipode, phi=alg.phi, r=alg.r,
        alpha=alg.alpha, beta=alg.beta, v=-alg.v, phi_inv=alg.phi_inv,
        v_inv=-alg.v_inv)
    rep = verify_ribbon(broken, der)
    assert not rep.passed
    assert any(c.name == "eps(v) = 1" for c in rep.failures())


def test_counit_laws_all_fixture_bases(dz3w):
    for i in range(dz3w.dim):
        dd = dz3w.coproduct[i]
        e = dz3w.basis_element(i)
        assert apply_at(dd, 0, "E", dz3w) == e
        assert apply_at(dd, 1, "E", dz3w) == e
