"""Tests for the truncated Fock-space oracle.

This module is the independent referee for everything analytic, so its own
behaviour is pinned against hand-computable states: number states, coherent
states, two-mode squeezed vacuum and thermal states.
"""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from cvdistill import (
    ChainSpec,
    CutoffTooSmall,
    InvalidOccupation,
    TooManyModes,
    ZeroNorm,
    annihilate,
    apply_gate_fock,
    beamsplitter,
    build_chain,
    chain_elements,
    covariance_fock,
    create,
    cz,
    displacement,
    mean_photon,
    number_basis_state,
    purity_fock,
    reduce_density,
    renyi2_fock,
    single_mode_squeezer,
    suggested_cutoff,
    thermal_density,
    thermal_product_density,
    two_mode_squeezer,
    vacuum,
    vacuum_fock,
    apply_circuit,
)
from cvdistill.fock import FockArray, expectation


def _displace_elem(m, mode, alpha):
    shift = np.zeros(2 * m)
    shift[mode] = 2 * alpha.real
    shift[m + mode] = 2 * alpha.imag
    return displacement(shift)


def test_vacuum_is_normalised():
    st = vacuum_fock(2, 10)
    assert_allclose(st.weight(), 1.0)
    assert st.leakage == 0.0


def test_mode_limit_enforced():
    with pytest.raises(TooManyModes):
        vacuum_fock(5, 4)


def test_annihilate_number_state():
    st = number_basis_state([2], 10)
    out = annihilate(st, 0)
    expected = np.zeros(10, dtype=complex)
    expected[1] = np.sqrt(2.0)
    assert_allclose(out.data, expected)
    assert_allclose(out.weight(), 2.0)  # success weight tr(a^dag a rho)


def test_annihilate_vacuum_raises():
    with pytest.raises(ZeroNorm):
        annihilate(vacuum_fock(1, 8), 0)


def test_create_acts_as_raising():
    st = create(vacuum_fock(1, 8), 0)
    assert_allclose(st.data[1], 1.0)
    assert_allclose(mean_photon(st.normalized(), 0), 1.0)


def test_zero_parameter_gate_is_identity():
    st = vacuum_fock(2, 12)
    out = apply_gate_fock(st, two_mode_squeezer(0, 1, 0.0))
    assert_allclose(out.data, st.data, atol=1e-14)
    assert out.leakage < 1e-14


def test_displacement_produces_coherent_state():
    alpha = 0.5 + 0.2j
    st = apply_gate_fock(vacuum_fock(1, 30), _displace_elem(1, 0, alpha))
    a = np.diag(np.sqrt(np.arange(1.0, 30)), 1)
    got = expectation(st, [(a, 0)])
    assert abs(got - alpha) < 1e-9
    assert abs(mean_photon(st, 0) - abs(alpha) ** 2) < 1e-9


def test_tmsv_photon_number():
    st = apply_gate_fock(vacuum_fock(2, 30), two_mode_squeezer(0, 1, 1.0))
    expected = math.sinh(0.5) ** 2
    assert abs(mean_photon(st, 0) - expected) < 1e-10
    assert abs(mean_photon(st, 1) - expected) < 1e-10


def test_tmsv_covariance_matches_gaussian_path():
    # pins every sign convention shared by the two sides
    st = apply_gate_fock(vacuum_fock(2, 30), two_mode_squeezer(0, 1, 1.0))
    mean, cov = covariance_fock(st)
    gauss = apply_circuit(vacuum(2), [two_mode_squeezer(0, 1, 1.0)])
    assert_allclose(mean, gauss.mean, atol=1e-9)
    assert_allclose(cov, gauss.cov, atol=1e-8)
    assert_allclose(cov[0, 0], math.cosh(1.0), atol=1e-9)


@pytest.mark.parametrize("elem", [
    beamsplitter(0, 1, 0.6),
    cz(0, 1, 0.8),
    single_mode_squeezer(0, 0.4),
])
def test_gate_covariances_match_gaussian_path(elem):
    base = [single_mode_squeezer(0, 0.3), single_mode_squeezer(1, -0.2)]
    st = vacuum_fock(2, 40)
    for e in base + [elem]:
        st = apply_gate_fock(st, e)
    mean, cov = covariance_fock(st)
    gauss = apply_circuit(vacuum(2), base + [elem])
    assert_allclose(cov, gauss.cov, atol=1e-7)
    assert_allclose(mean, gauss.mean, atol=1e-9)


def test_cutoff_too_small_fails_loud():
    st = vacuum_fock(2, 4, leak_tol=1e-8)
    with pytest.raises(CutoffTooSmall):
        apply_gate_fock(st, two_mode_squeezer(0, 1, 1.5))


def test_reduce_density_of_product_state():
    st = number_basis_state([1, 0], 6)
    rho = reduce_density(st, [0])
    expected = np.zeros((6, 6))
    expected[1, 1] = 1.0
    assert_allclose(rho.data, expected)
    assert_allclose(np.trace(rho.data).real, 1.0, atol=1e-12)


def test_bell_state_reduction_is_maximally_mixed():
    d = 6
    data = np.zeros((d, d), dtype=complex)
    data[1, 0] = data[0, 1] = 1.0 / math.sqrt(2.0)
    bell = FockArray(m=2, cutoff=d, data=data)
    rho = reduce_density(bell, [0])
    assert_allclose(rho.data[0, 0], 0.5, atol=1e-12)
    assert_allclose(rho.data[1, 1], 0.5, atol=1e-12)
    assert_allclose(purity_fock(rho), 0.5, atol=1e-12)
    assert_allclose(renyi2_fock(rho), math.log(2.0), atol=1e-12)


def test_single_photon_through_beamsplitter_gives_bell_entropy():
    st = create(vacuum_fock(2, 12), 0).normalized()
    st = apply_gate_fock(st, beamsplitter(0, 1, math.pi / 4.0))
    rho = reduce_density(st, [0])
    assert_allclose(renyi2_fock(rho), math.log(2.0), atol=1e-9)


def test_tmsv_reduction_is_thermal():
    st = apply_gate_fock(vacuum_fock(2, 30), two_mode_squeezer(0, 1, 1.0))
    rho = reduce_density(st, [0])
    nbar = math.sinh(0.5) ** 2
    assert abs(mean_photon(rho, 0) - nbar) < 1e-10
    # thermal covariance parameter n = 2 nbar + 1 = cosh(1)
    expected = thermal_density(math.cosh(1.0), 30)
    assert_allclose(rho.data, expected.data, atol=1e-9)


def test_purity_of_pure_reduced_state_is_one():
    st = number_basis_state([1, 2], 5)
    assert_allclose(purity_fock(reduce_density(st, [0, 1])), 1.0, atol=1e-12)


def test_thermal_density_limits():
    assert_allclose(thermal_density(1.0, 10).data[0, 0], 1.0)
    with pytest.raises(InvalidOccupation):
        thermal_density(0.5, 10)


def test_thermal_density_mean_photon_and_purity():
    rho = thermal_density(2.0, 60)
    assert abs(mean_photon(rho, 0) - 0.5) < 1e-8  # (n - 1) / 2
    assert abs(purity_fock(rho) - 0.5) < 1e-8     # 1 / n


def test_thermal_trace_oracle_values_at_n2():
    d = 60
    rho = thermal_density(2.0, d).data.real
    a = np.diag(np.sqrt(np.arange(1.0, d)), 1)
    sub = a @ rho @ a.T
    add = a.T @ rho @ a
    assert abs(np.trace(sub) - 0.5) < 1e-8                  # tr(a rho a^dag)
    assert abs(np.trace(sub @ sub) - 5.0 / 64.0) < 1e-8     # tr((a rho a^dag)^2)
    assert abs(np.trace(add @ sub) - 9.0 / 64.0) < 1e-8     # cross term


def test_thermal_product_density():
    rho = thermal_product_density([2.0, 1.5], 20)
    assert rho.m == 2
    assert abs(mean_photon(rho, 0) - 0.5) < 1e-6
    assert abs(mean_photon(rho, 1) - 0.25) < 1e-6


def test_reduce_density_of_density_input():
    rho = thermal_product_density([2.0, 1.5], 30)
    assert_allclose(reduce_density(rho, [0]).data, thermal_density(2.0, 30).data, atol=1e-9)
    assert_allclose(reduce_density(rho, [1]).data, thermal_density(1.5, 30).data, atol=1e-9)
    # correlated case: density-path reduction matches the pure-path reduction
    pure = apply_gate_fock(vacuum_fock(2, 16), two_mode_squeezer(0, 1, 0.8))
    dens = apply_gate_fock(vacuum_fock(2, 16).to_density(), two_mode_squeezer(0, 1, 0.8))
    assert_allclose(reduce_density(dens, [1]).data, reduce_density(pure, [1]).data, atol=1e-10)


def test_subtraction_preserves_global_purity_schmidt_symmetry():
    spec = ChainSpec(m=3, r=0.5, alpha_g=0.3)
    st = vacuum_fock(3, 16)
    for e in chain_elements(spec):
        st = apply_gate_fock(st, e)
    minus = annihilate(st, spec.resolved_g).normalized()
    for part, rest in (([0], [1, 2]), ([1], [0, 2]), ([0, 1], [2])):
        p_a = purity_fock(reduce_density(minus, part))
        p_b = purity_fock(reduce_density(minus, rest))
        assert abs(p_a - p_b) < 1e-10


def test_density_gate_application_matches_pure_path():
    # evolve |0><0| as a density matrix and compare against the pure route
    pure = vacuum_fock(2, 12)
    dens = pure.to_density()
    for e in (two_mode_squeezer(0, 1, 0.6), _displace_elem(2, 0, 0.4 + 0.0j)):
        pure = apply_gate_fock(pure, e)
        dens = apply_gate_fock(dens, e)
    expected = np.outer(pure.data.reshape(-1), pure.data.reshape(-1).conj())
    assert_allclose(dens.data, expected, atol=1e-10)


def test_suggested_cutoff_floor_and_scaling():
    assert suggested_cutoff(0.0) == 20
    assert suggested_cutoff(0.5) == 20
    assert suggested_cutoff(2.0) == 30
    assert suggested_cutoff(4.3) == 53


def test_comparison_with_analytic_chain_covariance():
    spec = ChainSpec(m=3, r=0.8, alpha_g=0.5)
    st = vacuum_fock(3, 24)
    for e in chain_elements(spec):
        st = apply_gate_fock(st, e)
    assert st.leakage < 1e-10
    mean, cov = covariance_fock(st)
    gauss = build_chain(spec)
    assert_allclose(mean, gauss.mean, atol=1e-8)
    assert_allclose(cov, gauss.cov, atol=1e-7)
