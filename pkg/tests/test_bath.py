import numpy as np
import pytest

from two_photon_qhe.exceptions import RegimeError
from two_photon_qhe.physics.bath import (
    EffectiveBath,
    coherent_asymptote,
    coherent_asymptote_classical,
    coherent_population,
    default_mismatch_grid,
    fit_bath,
    population_mismatch,
    thermal_population,
)
from two_photon_qhe.physics.params import PumpKind
from two_photon_qhe.physics.units import bose_occupation


@pytest.mark.parametrize('kind', list(PumpKind))
class TestFit:
    def test_asymptotes_agree(self, fig3, kind):
        params, pump = fig3.system, fig3.pump(kind)
        bath = fit_bath(params, pump)
        np.testing.assert_allclose(thermal_population(1e12, bath)[0], coherent_asymptote(params, pump), rtol=1e-10)

    def test_initial_slopes_agree(self, fig3, kind):
        params, pump = fig3.system, fig3.pump(kind)
        bath = fit_bath(params, pump)
        t = 1e-6 / bath.relaxation
        np.testing.assert_allclose(thermal_population(t, bath)[0], coherent_population(t, params, pump)[0], rtol=1e-6)

    def test_temperature_matches_occupation(self, fig3, kind):
        bath = fit_bath(fig3.system, fig3.pump(kind))
        np.testing.assert_allclose(bose_occupation(bath.omega_h, bath.T_h), bath.n_h, rtol=1e-10)

    def test_mismatch_is_small(self, fig3, kind):
        mismatch = population_mismatch(fig3.system, fig3.pump(kind))
        assert mismatch.max_abs_diff < 1e-6
        assert len(mismatch.diff_series) == 400
        assert list(mismatch.diff_series.columns) == [
            't', 'rho_11_coherent', 'rho_11_thermal', 'diff_11', 'rho_gg_coherent', 'rho_gg_thermal', 'diff_gg']


class TestPopulations:
    def test_ground_state_closes_the_pair(self, fig3):
        rho_11, rho_gg = coherent_population(10.0, fig3.system, fig3.classical)
        assert rho_11 + rho_gg == pytest.approx(1.0)

    def test_starts_empty(self, fig3):
        assert coherent_population(0.0, fig3.system, fig3.classical)[0] == 0.0

    def test_printed_form_drops_occupation_factor(self, fig3):
        params, pump = fig3.system, fig3.classical
        ratio = coherent_asymptote_classical(params, pump) / coherent_asymptote_classical(params, pump, printed=True)
        np.testing.assert_allclose(ratio, params.n_2 + 1.0)

    @pytest.mark.parametrize('kind, slope', [(PumpKind.CLASSICAL, 4.0), (PumpKind.ENTANGLED, 2.0)])
    def test_intensity_scaling(self, fig3, kind, slope):
        pump = fig3.pump(kind)
        amplitudes = np.logspace(-3.0, -1.0, 5)
        values = [coherent_asymptote(fig3.system, pump.scaled(s)) for s in amplitudes]
        np.testing.assert_allclose(np.polyfit(np.log(amplitudes), np.log(values), 1)[0], slope, atol=1e-9)

    def test_too_strong_pump(self, fig3):
        with pytest.raises(RegimeError) as e:
            coherent_population(1e12, fig3.system, fig3.classical.scaled(1e3))
        assert e.value.invariant == 'perturbative-regime'

    def test_negative_time(self, fig3):
        with pytest.raises(ValueError):
            coherent_population(-1.0, fig3.system, fig3.classical)


class TestBath:
    def test_invalid_occupation(self):
        with pytest.raises(RegimeError):
            EffectiveBath(n_h=-1.0, gamma_h=1.0, T_h=0.0, omega_h=1.0)

    def test_strong_pump_has_no_bath(self, fig3):
        with pytest.raises(RegimeError) as e:
            fit_bath(fig3.system, fig3.classical.scaled(200.0))
        assert e.value.invariant == 'bath-denominator'

    def test_printed_gamma_keeps_occupation(self, fig3):
        consistent = fit_bath(fig3.system, fig3.classical)
        printed = fit_bath(fig3.system, fig3.classical, printed_form=True)
        assert printed.n_h == consistent.n_h

    def test_grid(self, fig3):
        bath = fit_bath(fig3.system, fig3.classical)
        grid = default_mismatch_grid(bath, 10)
        np.testing.assert_allclose(grid[[0, -1]] * bath.relaxation, [1e-3, 10.0])

    def test_grid_must_ascend(self, fig3):
        with pytest.raises(ValueError):
            population_mismatch(fig3.system, fig3.classical, t_grid=[2.0, 1.0])
