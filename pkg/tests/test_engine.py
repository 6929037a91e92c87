import hypothesis as hyp
import hypothesis.strategies as st
import numpy as np
import pytest

from two_photon_qhe.exceptions import DomainError, RegimeError, SingularityError
from two_photon_qhe.flows.engine_sweep import evaluate_cells
from two_photon_qhe.physics import engine
from two_photon_qhe.physics.bath import EffectiveBath
from two_photon_qhe.physics.dynamics import L0, L1, steady_state
from two_photon_qhe.physics.engine import BOUND_ROWS, EfficiencyForm, Region
from two_photon_qhe.physics.optimize import central_slope
from two_photon_qhe.physics.params import DimensionlessSet, PumpKind, reduce
from two_photon_qhe.physics.units import bose_occupation

TAUS = [0.1, 0.25, 0.5, 0.75]


def reduced(**changes) -> DimensionlessSet:
    base = dict(tau=0.5, c_p=3.0, c_21=0.5, lambda_prime=10.0, sigma_p_prime=1.0, u=2.0, v=0.5, alpha=5.0, theta=1.0)
    base.update(changes)
    return DimensionlessSet(**base)


def small_k(kind: PumpKind, k: float, tau: float = 0.5, **changes) -> DimensionlessSet:
    exponent = 0.125 if kind == PumpKind.CLASSICAL else 0.25
    return reduced(tau=tau, sigma_p_prime=k ** exponent / tau, kind=kind, **changes)


class TestObservables:
    def bath(self, params, n_h):
        return EffectiveBath(n_h=n_h, gamma_h=params.gamma_2, T_h=0.0, omega_h=params.omega_h)

    def test_engine_when_hot_bath_is_hotter(self, fig7):
        params = fig7.system
        result = engine.engine_observables(self.bath(params, 10.0 * params.n_c), params, fig7.classical)
        assert result.regime == 'engine'
        assert result.power_signed > 0.0
        np.testing.assert_allclose(result.efficiency, 1.0 - params.omega_c / params.omega_h)
        np.testing.assert_allclose(result.power / result.heat_flux_h, result.efficiency)

    def test_refrigerator(self, fig7):
        params = fig7.system
        result = engine.engine_observables(self.bath(params, 0.1 * params.n_c), params, fig7.classical)
        assert result.regime == 'refrigerator'
        assert result.power == -result.power_signed

    def test_idle(self, fig7):
        params = fig7.system
        assert engine.engine_observables(self.bath(params, params.n_c), params, fig7.classical).regime == 'idle'

    def test_singular_current(self, fig7):
        params = fig7.system.replace(n_c=0.0)
        with pytest.raises(SingularityError) as e:
            engine.engine_observables(self.bath(params, 0.0), params, fig7.classical.replace(lam=0.0))
        assert e.value.invariant == 'current-denominator'

    @hyp.settings(max_examples=200, deadline=None)
    @hyp.given(t_c=st.floats(0.01, 0.5), t_h=st.floats(0.01, 0.5))
    def test_carnot_ceiling(self, fig7, t_c, t_h):
        params = fig7.system.replace(n_c=bose_occupation(fig7.system.omega_c, t_c), T_c=t_c)
        bath = EffectiveBath(n_h=bose_occupation(params.omega_h, t_h), gamma_h=params.gamma_2, T_h=t_h,
                             omega_h=params.omega_h)
        result = engine.engine_observables(bath, params, fig7.classical)
        if result.regime == 'engine':
            assert result.efficiency <= 1.0 - t_c / t_h + 1e-12

    def test_power_and_flux_from_coherence(self, fig7):
        params, pump = fig7.system, fig7.classical
        rho = np.zeros((6, 6), dtype=np.complex128)
        rho[L0, L1], rho[L1, L0] = 0.2 - 0.01j, 0.2 + 0.01j
        power = engine.power_from_coherence(rho, params, pump)
        flux = engine.heat_flux_from_coherence(rho, params, pump)
        np.testing.assert_allclose(flux, 2.0 * pump.lam * params.omega_h * 0.01)
        np.testing.assert_allclose(power / flux, (params.omega_c - params.omega_h) / params.omega_h)

    def test_steady_state_coherence_is_finite(self, fig7):
        rho = steady_state(fig7.system, fig7.classical)
        assert np.isfinite(engine.power_from_coherence(rho, fig7.system, fig7.classical))

    def test_steady_state_observables(self, fig7):
        params, pump = fig7.system, fig7.classical
        rho = steady_state(params, pump)
        result = engine.steady_state_observables(rho, params, pump)
        current = -2.0 * pump.lam * rho[L0, L1].imag
        np.testing.assert_allclose(result.power_signed, engine.power_from_coherence(rho, params, pump))
        np.testing.assert_allclose(result.heat_flux_h, abs(params.omega_h * current))
        assert result.regime == ('engine' if result.power_signed > 0.0 else 'refrigerator')


class TestPerturbativeConsistency:
    @pytest.mark.parametrize('kind, order, eps', [('classical', 4, 0.25), ('entangled', 2, 1.0 / 32.0)])
    def test_gap_closes_with_the_pump_order(self, fig7, kind, order, eps):
        pump = fig7.pump(kind)
        gaps = [engine.first_order_power_gap(fig7.system, pump.scaled(a)) for a in (eps, eps / 2.0)]
        assert gaps[0] > gaps[1] > 0.0
        assert np.log2(gaps[0] / gaps[1]) == pytest.approx(order, abs=0.15)

    def test_reference_pump_is_not_perturbative(self, fig7):
        assert engine.first_order_power_gap(fig7.system, fig7.classical) > 0.1

    def test_no_probe(self, fig7):
        with pytest.raises(SingularityError) as e:
            engine.first_order_power_gap(fig7.system, fig7.classical.replace(lam=0.0))
        assert e.value.invariant == 'first-order-power'


@pytest.mark.parametrize('kind', list(PumpKind))
class TestMaximumPower:
    def test_is_a_maximum(self, kind):
        d = small_k(kind, 0.1)
        result = engine.maximize_power(kind, d)
        lo, hi = engine.maximization_domain(d)
        grid = np.linspace(lo, hi, 2001)[1:-1]
        assert result.value >= max(engine.power_dimensionless(kind, d, c) for c in grid) * (1.0 - 1e-12)

    def test_stationary(self, kind):
        d = small_k(kind, 0.1)
        result = engine.maximize_power(kind, d)
        assert not result.boundary
        slope = central_slope(lambda c: engine.power_dimensionless(kind, d, c), result.argmax)
        assert abs(slope) <= 1e-6 * result.value

    def test_closed_form_agrees_or_is_flagged(self, kind):
        result = engine.maximize_power(kind, small_k(kind, 0.05))
        assert result.analytic is not None
        assert result.flagged or result.relative_difference <= 1e-6
        if result.flagged:
            assert result.reason

    def test_small_tau_sigma_limit(self, kind):
        d = small_k(kind, 1e-8, c_p=3.0, alpha=1e4)
        np.testing.assert_allclose(engine.maximize_power(kind, d).value, engine.asymptotic_max_power(kind, d),
                                   rtol=1e-3)

    def test_empty_domain(self, kind):
        with pytest.raises(DomainError) as e:
            engine.maximize_power(kind, small_k(kind, 0.1, c_p=1.0))
        assert e.value.invariant == 'c21-domain'

    def test_no_positive_power(self, kind):
        with pytest.raises(RegimeError):
            engine.maximize_power(kind, small_k(kind, 4.0))

    def test_power_pole(self, kind):
        d = small_k(kind, 0.1)
        with pytest.raises(SingularityError):
            engine.power_dimensionless(kind, d.replace(u=1e-300, v=1e-300, lambda_prime=1e-300), 0.0)


class TestEfficiency:
    @pytest.mark.parametrize('kind', list(PumpKind))
    @pytest.mark.parametrize('form', list(EfficiencyForm))
    def test_below_one(self, kind, form):
        eta = engine.efficiency_at_max_power(kind, small_k(kind, 0.1), form)
        assert eta < 1.0

    def test_full_form_pole(self):
        with pytest.raises(SingularityError) as e:
            engine.efficiency_at_max_power(PumpKind.CLASSICAL, reduced(tau=0.5, sigma_p_prime=2.0), 'full')
        assert e.value.invariant == 'efficiency-pole'

    def test_weak_limit_of_full(self):
        d = small_k(PumpKind.CLASSICAL, 1e-6)
        full = engine.efficiency_at_max_power(PumpKind.CLASSICAL, d, 'full')
        weak = engine.efficiency_at_max_power(PumpKind.CLASSICAL, d, 'weak')
        assert full == pytest.approx(weak, abs=1e-2)

    @pytest.mark.parametrize('kind', list(PumpKind))
    def test_maximizer_form_is_the_efficiency_at_the_argmax(self, kind):
        d = small_k(kind, 0.1, c_p=1.8)
        argmax = engine.maximize_power(kind, d).argmax
        eta = engine.efficiency_at_max_power(kind, d, EfficiencyForm.MAXIMIZER)
        assert eta == engine.efficiency_at(d, argmax)
        np.testing.assert_allclose(eta, 1.0 - 1.0 / (d.c_p - argmax))

    @hyp.settings(max_examples=100, deadline=None)
    @hyp.given(kind=st.sampled_from(list(PumpKind)), tau=st.floats(0.05, 0.9), share=st.floats(0.05, 0.95),
               k=st.floats(1e-3, 0.3))
    def test_maximizer_stays_below_carnot(self, kind, tau, share, k):
        d = small_k(kind, k, tau=tau, c_p=1.0 + share * (1.0 / tau - 1.0))
        assert engine.carnot_admissible(d)
        try:
            eta = engine.efficiency_at_max_power(kind, d, EfficiencyForm.MAXIMIZER)
        except (DomainError, RegimeError):
            hyp.reject()
        assert eta < d.eta_carnot

    def test_printed_weak_form_can_exceed_carnot(self):
        d = small_k(PumpKind.CLASSICAL, 1e-4, tau=0.5, c_p=1.5)
        assert engine.carnot_admissible(d)
        assert engine.efficiency_at_max_power(PumpKind.CLASSICAL, d, 'weak') > d.eta_carnot
        assert engine.efficiency_at_max_power(PumpKind.CLASSICAL, d, 'maximizer') < d.eta_carnot

    @pytest.mark.parametrize('changes, admissible', [
        (dict(tau=0.25, c_p=3.0), True),
        (dict(tau=0.5, c_p=3.0), False),
        (dict(tau=0.25, c_p=1.0), False),
        (dict(tau=0.2, c_p=4.5), True),
    ])
    def test_carnot_admissible(self, changes, admissible):
        assert engine.carnot_admissible(reduced(**changes)) is admissible


class TestSweepCells:
    def test_efficiency_pole_keeps_the_row(self):
        base = reduced(tau=0.5, sigma_p_prime=2.0)
        rows = evaluate_cells.fn([(0, 0.5, 3.0)], PumpKind.CLASSICAL, base, EfficiencyForm.FULL, 400, 1e-10, 1e-6)
        (index, row), = rows
        assert index == 0
        assert np.isnan(row['eta_star'])
        assert row['region'] == ''
        assert row['flag'] == 'efficiency-pole'

    def test_regular_cell_is_unflagged(self):
        base = small_k(PumpKind.CLASSICAL, 0.1)
        (_, row), = evaluate_cells.fn([(3, 0.5, 3.0)], PumpKind.CLASSICAL, base, EfficiencyForm.WEAK, 400, 1e-10, 1e-6)
        assert np.isfinite(row['eta_star'])
        assert row['region'] != ''
        assert row['flag'] == ''


class TestRegions:
    @pytest.mark.parametrize('tau', TAUS)
    def test_bounds_are_ordered(self, tau):
        etas = [engine.bound_targets(tau)[bound][0] for bound in BOUND_ROWS]
        assert etas == sorted(etas)
        assert etas[0] == 0.0
        np.testing.assert_allclose(etas[-1], 1.0 - tau)

    def test_curzon_ahlborn(self):
        np.testing.assert_allclose(engine.bound_targets(0.25)[Region.II_III][0], 0.5)

    @pytest.mark.parametrize('eta, region', [
        (0.1, Region.I),
        (0.375, Region.I_II),
        (0.45, Region.II),
        (0.5, Region.II_III),
        (0.55, Region.III),
        (0.6, Region.III_IV),
        (0.7, Region.IV),
        (0.75, Region.BOUNDARY_IV),
        (0.8, Region.BOUNDARY_IV),
    ])
    def test_classify(self, eta, region):
        assert engine.classify_region(eta, 0.25) == region


class TestBoundTable:
    @pytest.mark.parametrize('kind', list(PumpKind))
    @pytest.mark.parametrize('tau', TAUS)
    def test_closure(self, kind, tau):
        rows = engine.bound_table(kind, reduced(tau=tau, kind=kind))
        assert [row.bound for row in rows] == list(BOUND_ROWS)
        for row in rows:
            np.testing.assert_allclose(row.eta_tabulated, row.eta_target, atol=1e-8)
            assert row.sigma_p_prime > 0.0

    def test_unreachable_bound_names_lambda(self):
        d = reduced(lambda_prime=0.1)
        with pytest.raises(DomainError) as e:
            engine.bound_bandwidth(PumpKind.CLASSICAL, Region.I, d)
        assert e.value.invariant == 'bound-reachable'
        np.testing.assert_allclose(e.value.details['minimal_lambda_prime'], 4.0 * d.v / d.u)

    def test_minimal_lambda_is_reachable(self):
        d = reduced(lambda_prime=4.0 * 0.5 / 2.0)
        assert engine.bound_bandwidth(PumpKind.CLASSICAL, Region.I, d) > 0.0

    def test_not_a_bound_row(self):
        with pytest.raises(DomainError):
            engine.bound_bandwidth(PumpKind.CLASSICAL, Region.II, reduced())


class TestRatio:
    def test_shared_set_asymptote(self):
        d = reduced(tau=0.1, sigma_p_prime=2.0, theta=0.8)
        ratio = engine.max_power_ratio_qhe(d)
        np.testing.assert_allclose(ratio.asymptotic, 1.0 / ((0.1 * 2.0) ** 4 * 0.8))

    def test_zero_theta(self):
        assert engine.max_power_ratio_qhe(reduced(theta=0.0)).asymptotic == float('inf')

    def test_crossover_of_a_monotonic_ratio(self):
        np.testing.assert_allclose(engine.crossover_tau(lambda t: t / 0.01, 1e-4, 1.0), 0.01, rtol=1e-10)

    def test_no_crossover(self):
        assert engine.crossover_tau(lambda t: 2.0, 1e-4, 1.0) is None

    def test_reference_crossover(self, fig7):
        tau = engine.qhe_crossover(reduce(fig7.system, fig7.classical), reduce(fig7.system, fig7.entangled))
        assert tau == pytest.approx(0.0048, rel=0.2)

    def test_entangled_advantage_below_the_crossover(self, fig7):
        classical, entangled = reduce(fig7.system, fig7.classical), reduce(fig7.system, fig7.entangled)
        tau = engine.qhe_crossover(classical, entangled)
        assert engine.qhe_crossover_signs(classical, entangled, tau) == (1, -1)

    def test_crossover_signs(self):
        assert engine.crossover_signs(lambda t: t / 0.01, 0.01) == (-1, 1)
