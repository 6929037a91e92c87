import hypothesis as hyp
import hypothesis.strategies as st
import numpy as np
import pytest

from two_photon_qhe.exceptions import ConfigurationError
from two_photon_qhe.physics import units
from two_photon_qhe.physics.units import Unit, bose_occupation, bose_temperature, quantity, sinc, to_internal_units

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


class TestToInternalUnits:
    @pytest.mark.parametrize('value, unit, expected', [
        (1.0, 'eV', 1.0),
        (1.0, 'cm^-1', 1.239841984e-4),
        (1.0, 'ps^-1', 6.582119569e-4),
        (300.0, 'K', 300.0 * 8.617333262e-5),
        (1.0, 'ps', 1.0 / 6.582119569e-4),
        (1000.0, 'fs', 1.0 / 6.582119569e-4),
    ])
    def test_factors(self, value, unit, expected):
        np.testing.assert_allclose(to_internal_units(value, unit), expected, rtol=1e-15)

    def test_accepts_enum(self):
        assert to_internal_units(2.0, Unit.EV) == 2.0

    def test_unknown_unit(self):
        with pytest.raises(ConfigurationError) as e:
            to_internal_units(1.0, 'meV')
        assert e.value.invariant == 'known-unit'
        assert e.value.exit_code == 2

    @pytest.mark.parametrize('value', [float('nan'), float('inf')])
    def test_non_finite(self, value):
        with pytest.raises(ConfigurationError):
            to_internal_units(value, 'eV')

    @hyp.settings(max_examples=50, deadline=None)
    @hyp.given(x=finite, a=finite, unit=st.sampled_from(list(Unit)))
    def test_linear(self, x, a, unit):
        np.testing.assert_allclose(to_internal_units(a * x, unit), a * to_internal_units(x, unit),
                                   rtol=1e-12, atol=1e-300)

    def test_back_conversion(self):
        np.testing.assert_allclose(units.from_internal_units(to_internal_units(200.0, 'cm^-1'), 'cm^-1'), 200.0)


class TestQuantity:
    def test_mapping(self):
        assert quantity({'value': 2.0, 'unit': 'eV'}) == 2.0

    @pytest.mark.parametrize('entry', [1.3, '1.3', {'value': 1.3}, {'unit': 'eV'}])
    def test_rejects_untagged(self, entry):
        with pytest.raises(ConfigurationError) as e:
            quantity(entry, 'omega_p')
        assert e.value.invariant == 'unit-tagged'
        assert 'omega_p' in e.value.message


class TestSinc:
    def test_origin(self):
        assert sinc(0.0) == 1.0

    def test_zeros(self):
        np.testing.assert_allclose(sinc(np.array([np.pi, 2.0 * np.pi])), 0.0, atol=1e-15)

    def test_series_branch_is_continuous(self):
        x = units.SINC_SERIES_THRESHOLD
        np.testing.assert_allclose(sinc(x * (1.0 - 1e-9)), np.sin(x) / x, rtol=1e-14)

    def test_vectorized_shape(self):
        assert sinc(np.zeros((3, 4))).shape == (3, 4)

    @hyp.settings(max_examples=100, deadline=None)
    @hyp.given(x=finite)
    def test_even_and_bounded(self, x):
        assert sinc(x) == sinc(-x)
        assert abs(sinc(x)) <= 1.0


class TestBose:
    def test_zero_temperature(self):
        assert bose_occupation(0.1, 0.0) == 0.0
        assert bose_temperature(0.1, 0.0) == 0.0

    @hyp.settings(max_examples=50, deadline=None)
    @hyp.given(omega=st.floats(1e-3, 2.0), temperature=st.floats(1e-3, 1.0))
    def test_temperature_inverts_occupation(self, omega, temperature):
        hyp.assume(omega / temperature < 300.0)
        n = bose_occupation(omega, temperature)
        np.testing.assert_allclose(bose_temperature(omega, n), temperature, rtol=1e-9)
