import hypothesis as hyp
import hypothesis.strategies as st
import numpy as np
import pytest

from two_photon_qhe.exceptions import ConfigurationError, DomainError, SingularityError
from two_photon_qhe.physics.params import (
    DimensionlessSet,
    PumpKind,
    PumpSpec,
    effective_bandwidth,
    effective_hot_temperature,
    load_parameter_set,
    pump_detuning,
    reduce,
    system_from_config,
    theta,
    theta_factor,
)
from two_photon_qhe.physics.units import bose_occupation, to_internal_units


class TestLoading:
    def test_occupations_follow_temperatures(self, fig7):
        params = fig7.system
        np.testing.assert_allclose(params.n_2, bose_occupation(params.omega_21, params.T_2))
        np.testing.assert_allclose(params.n_c, bose_occupation(params.omega_c, params.T_c))

    def test_explicit_occupations(self, fig3):
        assert fig3.system.n_2 == 100.0
        assert fig3.system.n_c == 100.0

    def test_quantities_are_converted(self, fig7):
        np.testing.assert_allclose(fig7.classical.sigma_p, to_internal_units(200.0, 'cm^-1'))
        np.testing.assert_allclose(fig7.system.gamma_2, to_internal_units(0.71, 'ps^-1'))

    def test_pump_kinds(self, fig7):
        assert fig7.pump(PumpKind.CLASSICAL) is fig7.classical
        assert fig7.pump('entangled').kind == PumpKind.ENTANGLED

    def test_unknown_set(self):
        with pytest.raises(ConfigurationError) as e:
            load_parameter_set('fig99')
        assert e.value.invariant == 'known-parameter-set'

    def test_bare_number_is_rejected(self, fig7):
        block = dict(fig7.raw['system'])
        block['omega_2'] = 1.30042
        with pytest.raises(ConfigurationError) as e:
            system_from_config(block)
        assert e.value.invariant == 'unit-tagged'

    def test_missing_key(self, fig7):
        block = dict(fig7.raw['system'])
        del block['gamma_c']
        with pytest.raises(ConfigurationError, match='gamma_c'):
            system_from_config(block)


class TestValidation:
    def test_negative_rate(self, fig7):
        with pytest.raises(ConfigurationError) as e:
            fig7.system.replace(gamma_2=-fig7.system.gamma_2)
        assert e.value.invariant == 'rates-nonnegative'

    def test_level_ordering(self, fig7):
        with pytest.raises(ConfigurationError) as e:
            fig7.system.replace(omega_1=0.001)
        assert e.value.invariant == 'level-ordering'

    def test_classical_pump_rejects_pair(self):
        with pytest.raises(ConfigurationError) as e:
            PumpSpec(PumpKind.CLASSICAL, omega_p=1.3, sigma_p=0.01, Omega_p=0.01, Omega_1p=0.01)
        assert e.value.invariant == 'pump-kind'

    def test_bandwidth_positive(self):
        with pytest.raises(ConfigurationError):
            PumpSpec.classical(omega_p=1.3, Omega_p=0.01, sigma_p=0.0)

    @pytest.mark.parametrize('changes', [{'tau': 0.0}, {'c_p': 0.5}, {'theta': 1.5}, {'u': 0.0}])
    def test_dimensionless_domain(self, changes):
        base = dict(tau=0.1, c_p=2.0, c_21=0.5, lambda_prime=1.0, sigma_p_prime=1.0, u=1.0, v=1.0, alpha=3.0)
        base.update(changes)
        with pytest.raises(DomainError):
            DimensionlessSet(**base)


class TestTheta:
    def test_zero_entanglement_time(self):
        assert theta_factor(0.0, 0.7, 0.6) == 1.0

    def test_classical_is_one(self, fig7):
        assert theta(fig7.system, fig7.classical) == 1.0

    def test_harmonic_system_is_one(self, fig7):
        pump = fig7.entangled.replace(T_ent=to_internal_units(100.0, 'fs'))
        np.testing.assert_allclose(theta(fig7.system, pump), 1.0)

    @hyp.settings(max_examples=50, deadline=None)
    @hyp.given(t_ent=st.floats(0.0, 1e5), a=st.floats(0.1, 1.0), b=st.floats(0.1, 1.0))
    def test_even_and_bounded(self, t_ent, a, b):
        assert theta_factor(t_ent, a, b) == theta_factor(t_ent, b, a)
        assert 0.0 <= theta_factor(t_ent, a, b) <= 1.0


class TestReduce:
    def test_classical(self, fig7):
        params, pump = fig7.system, fig7.classical
        d = reduce(params, pump)
        np.testing.assert_allclose(d.tau, params.T_c / effective_hot_temperature(params, pump))
        np.testing.assert_allclose(d.c_p, pump.omega_p / params.omega_c)
        np.testing.assert_allclose(d.c_21, params.omega_21 / params.omega_c)
        np.testing.assert_allclose(d.alpha, params.T_2 / params.omega_c)
        np.testing.assert_allclose(d.lambda_prime, pump.lam / np.sqrt(params.gamma_2 * params.T_c))
        assert d.theta == 1.0
        assert d.kind == PumpKind.CLASSICAL

    def test_entangled_uses_pump_detuning(self, fig7):
        params, pump = fig7.system, fig7.entangled
        d = reduce(params, pump)
        detuning = pump_detuning(params, pump)
        np.testing.assert_allclose(d.sigma_p_prime,
                                   np.sqrt(pump.sigma_p ** 2 - detuning ** 2) * params.gamma_2 / (detuning * params.T_c))
        assert d.kind == PumpKind.ENTANGLED

    def test_carnot(self, fig7):
        d = reduce(fig7.system, fig7.classical)
        assert d.eta_carnot == 1.0 - d.tau

    def test_narrow_bandwidth(self, fig7):
        pump = fig7.classical.replace(sigma_p=fig7.system.delta / 4.0)
        with pytest.raises(DomainError) as e:
            effective_bandwidth(fig7.system, pump)
        assert e.value.invariant == 'bandwidth-exceeds-detuning'

    def test_degenerate_intermediate_pair(self, fig7):
        params = fig7.system.replace(omega_ep=fig7.system.omega_e)
        with pytest.raises(SingularityError):
            effective_hot_temperature(params, fig7.classical)

    def test_zero_pump(self, fig7):
        with pytest.raises(SingularityError):
            reduce(fig7.system, fig7.classical.replace(Omega_p=0.0))
