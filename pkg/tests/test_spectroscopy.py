import numpy as np
import pytest

from two_photon_qhe.exceptions import DomainError, SingularityError
from two_photon_qhe.physics import engine, spectroscopy
from two_photon_qhe.physics.params import DimensionlessSet, PumpKind, reduce


def reduced(**changes) -> DimensionlessSet:
    base = dict(tau=0.3, c_p=4.0, c_21=1.0, lambda_prime=2.0, sigma_p_prime=1.5, u=0.8, v=0.4, alpha=1.5, theta=0.7)
    base.update(changes)
    return DimensionlessSet(**base)


class TestCoherence:
    @pytest.mark.parametrize('kind', list(PumpKind))
    def test_purely_imaginary(self, fig7, kind):
        rho_01 = spectroscopy.coherence(fig7.system, fig7.pump(kind))
        assert rho_01.real == 0.0
        assert rho_01.imag < 0.0

    @pytest.mark.parametrize('kind, power', [(PumpKind.CLASSICAL, 4), (PumpKind.ENTANGLED, 2)])
    def test_intensity_scaling(self, fig7, kind, power):
        pump = fig7.pump(kind)
        base = spectroscopy.coherence(fig7.system, pump).imag
        for s in (0.5, 2.0, 10.0):
            np.testing.assert_allclose(spectroscopy.coherence(fig7.system, pump.scaled(s)).imag, base * s ** power,
                                       rtol=1e-12)

    def test_linear_in_probe_coupling(self, fig7):
        pump = fig7.classical
        np.testing.assert_allclose(spectroscopy.coherence(fig7.system, pump.replace(lam=2.0 * pump.lam)).imag,
                                   2.0 * spectroscopy.coherence(fig7.system, pump).imag, rtol=1e-12)

    def test_degenerate_rates(self, fig7):
        params = fig7.system.replace(n_2=0.0, n_c=0.0)
        with pytest.raises(SingularityError) as e:
            spectroscopy.coherence(params, fig7.classical)
        assert e.value.invariant == 'degenerate-rates'


class TestPower:
    @pytest.mark.parametrize('c21', [0.0, 3.0, 5.0, -1.0])
    def test_outside_domain(self, c21):
        with pytest.raises(DomainError) as e:
            spectroscopy.spectro_power(PumpKind.CLASSICAL, reduced(), 1.0, c21)
        assert e.value.invariant == 'c21-domain'

    def test_zero_probe_bandwidth(self):
        with pytest.raises(SingularityError):
            spectroscopy.spectro_power(PumpKind.ENTANGLED, reduced(), 0.0)

    @pytest.mark.parametrize('kind', list(PumpKind))
    def test_positive_inside_domain(self, kind):
        assert spectroscopy.spectro_power(kind, reduced(), 1.0) > 0.0

    def test_classical_maximum_matches_closed_form(self):
        result = spectroscopy.spectro_max_power(PumpKind.CLASSICAL, reduced(), 0.5)
        assert not result.flagged
        np.testing.assert_allclose(result.value, spectroscopy.closed_form_max_classical(reduced(), 0.5), rtol=1e-9)

    def test_maximizer_is_shared(self):
        classical = spectroscopy.spectro_max_power(PumpKind.CLASSICAL, reduced(), 0.5)
        quantum = spectroscopy.spectro_max_power(PumpKind.ENTANGLED, reduced(), 0.5)
        np.testing.assert_allclose(quantum.argmax, classical.argmax, atol=1e-8)
        np.testing.assert_allclose(quantum.analytic,
                                   spectroscopy.closed_form_quantum(reduced(), 0.5, quantum.argmax), rtol=1e-12)

    def test_empty_domain(self):
        with pytest.raises(DomainError):
            spectroscopy.spectro_max_power(PumpKind.CLASSICAL, reduced(c_p=1.0), 0.5)


class TestRatio:
    def test_closed_form_ratio_is_the_identity(self):
        d = reduced()
        ratio = spectroscopy.spectro_ratio(d, 0.5)
        np.testing.assert_allclose(ratio.identity, (d.tau * d.sigma_p_prime) ** 4 * d.theta)
        np.testing.assert_allclose(ratio.printed, ratio.identity, rtol=1e-6)

    def test_numeric_ratio(self):
        d = reduced()
        ratio = spectroscopy.spectro_ratio(d, 0.5)
        np.testing.assert_allclose(ratio.numeric, d.theta * (d.tau * d.sigma_p_prime) ** 6 / 8.0, rtol=1e-9)

    def test_synthetic_crossover(self):
        crossover = spectroscopy.spectro_crossover(reduced(sigma_p_prime=10.0, theta=1.0), 0.5)
        np.testing.assert_allclose(crossover.tau, 0.1, rtol=1e-8)
        assert (crossover.sign_below, crossover.sign_above) == (-1, 1)

    def test_no_crossover(self):
        crossover = spectroscopy.spectro_crossover(reduced(sigma_p_prime=1e-3, theta=1.0), 0.5)
        assert crossover.tau is None
        assert (crossover.sign_below, crossover.sign_above) == (0, 0)

    def test_reference_crossover(self, fig7):
        classical = reduce(fig7.system, fig7.classical)
        entangled = reduce(fig7.system, fig7.entangled)
        crossover = spectroscopy.spectro_crossover(classical.replace(theta=entangled.theta), fig7.classical.sigma_pr)
        assert crossover.tau == pytest.approx(0.07, rel=0.2)
        assert (crossover.sign_below, crossover.sign_above) == (-1, 1)

    def test_regimes_are_complementary(self, fig7):
        classical = reduce(fig7.system, fig7.classical)
        entangled = reduce(fig7.system, fig7.entangled)
        spectro = spectroscopy.spectro_crossover(classical.replace(theta=entangled.theta), fig7.classical.sigma_pr)
        tau_qhe = engine.qhe_crossover(classical, entangled)
        assert tau_qhe < spectro.tau
        assert engine.qhe_crossover_signs(classical, entangled, tau_qhe) == (1, -1)
        assert (spectro.sign_below, spectro.sign_above) == (-1, 1)
