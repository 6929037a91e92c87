import numpy as np
import pytest

from two_photon_qhe import oracle
from two_photon_qhe.exceptions import OracleFailure, SingularityError
from two_photon_qhe.oracle import OracleEntry, OracleReport
from two_photon_qhe.physics.params import DimensionlessSet, PumpKind, reduce


def entry(name: str, passed: bool, required: bool = True) -> OracleEntry:
    return OracleEntry(name=name, required=required, passed=passed, residual=0.0, tolerance=1.0)


class TestReport:
    def test_informational_entries_do_not_decide(self):
        report = OracleReport([entry('a', True), entry('b', False, required=False)])
        assert report.passed
        assert report.failures == []
        report.raise_for_failures()

    def test_failure(self):
        report = OracleReport([entry('a', True), entry('b', False), entry('c', False)])
        assert report.failures == ['b', 'c']
        with pytest.raises(OracleFailure) as e:
            report.raise_for_failures()
        assert e.value.exit_code == 4
        assert e.value.invariant == 'b'
        assert [row['name'] for row in e.value.report] == ['a', 'b', 'c']

    @pytest.mark.parametrize('residual, tolerance, passed', [
        (0.5, 1.0, True),
        (1.0, 1.0, True),
        (1.5, 1.0, False),
        (float('nan'), 1.0, False),
        (float('inf'), float('inf'), False),
        (3.0, float('inf'), True),
    ])
    def test_entry_verdict(self, residual, tolerance, passed):
        assert oracle._entry('x', residual, tolerance).passed is passed

    def test_guarded(self):
        def broken() -> OracleEntry:
            raise SingularityError('pole')

        result = oracle._guarded('broken', broken, required=True)
        assert result.required
        assert not result.passed
        assert 'SingularityError' in result.detail


class TestChecks:
    def test_bath_asymptote(self, fig3):
        assert oracle.bath_asymptote(fig3).passed

    def test_table_closure(self):
        d = DimensionlessSet(tau=0.5, c_p=2.0, c_21=0.5, lambda_prime=10.0, sigma_p_prime=1.0, u=2.0, v=0.5, alpha=5.0)
        result = oracle.table_closure(d, [0.1, 0.25, 0.5, 0.75])
        assert result.passed
        assert result.residual <= 1e-8

    @pytest.mark.parametrize('kind', list(PumpKind))
    def test_random_sets_are_admissible(self, rng, kind):
        for _ in range(20):
            d = oracle.random_admissible_set(rng, kind)
            assert d.c_p <= d.alpha
            if kind == PumpKind.CLASSICAL:
                assert d.k_classical <= 0.3 + 1e-12
            else:
                assert d.k_quantum <= d.theta / 2.0 + 1e-12

    def test_maxima(self, rng):
        assert all(result.passed for result in oracle.maxima(rng, samples=10))

    def test_crossover_windows(self, fig7):
        classical, entangled = reduce(fig7.system, fig7.classical), reduce(fig7.system, fig7.entangled)
        assert oracle.qhe_window(classical, entangled).passed
        assert oracle.spectro_window(classical, entangled, fig7.classical.sigma_pr)[0].passed

    def test_intensity_scaling(self, fig3):
        assert all(result.passed for result in oracle.intensity_scaling(fig3))

    def test_carnot(self, fig7, rng):
        assert oracle.carnot_violations(fig7, rng, 500) == 0

    def test_ode_vs_closed_form(self, fig3):
        result = oracle.ode_vs_closed_form(fig3, points=6)
        assert result.required
        assert result.passed, result.detail

    def test_carnot_ceiling_decides_on_the_maximizer(self, rng):
        ceiling, printed = oracle.carnot_ceiling(rng, samples=50)
        assert ceiling.name == 'carnot-ceiling'
        assert ceiling.required
        assert ceiling.passed, ceiling.detail
        assert printed.name == 'carnot-ceiling-printed-forms'
        assert not printed.required

    def test_carnot_sets_keep_c_p_tau_below_one(self, rng):
        for kind in PumpKind:
            for _ in range(20):
                d = oracle.random_carnot_set(rng, kind)
                assert 0.01 <= d.tau <= 0.99
                assert d.c_p * d.tau <= 1.0 + 1e-12

    def test_steady_state_coherence(self, fig7):
        entries = {entry.name: entry for entry in oracle.steady_state_coherence(fig7)}
        required = {
            'coherence-vs-steady-state',
            'steady-state-richardson-classical',
            'steady-state-richardson-entangled',
            'perturbative-consistency-classical',
            'perturbative-consistency-entangled',
            'power-coherence-vs-cold-flux',
        }
        assert required <= set(entries)
        for name in required:
            assert entries[name].required
            assert entries[name].passed, entries[name].detail
        assert not entries['power-closed-form-vs-steady-state'].required

    def test_richardson_removes_the_first_correction(self):
        exact, correction, order = 2.0, -14.0, 4
        values = [exact * (1.0 + correction * eps ** order) for eps in (0.25, 0.125)]
        assert oracle.richardson(values[0], values[1], order) == pytest.approx(exact, rel=1e-12)

    def test_regime_complementarity(self, fig7):
        classical, entangled = reduce(fig7.system, fig7.classical), reduce(fig7.system, fig7.entangled)
        result = oracle.regime_complementarity(classical, entangled, fig7.classical.sigma_pr)
        assert result.required
        assert result.passed, result.detail


def test_reference_sets_pass(fig3, fig7):
    report = oracle.run_oracle(fig3, fig7, seed=0)
    assert report.failures == []
    names = [entry.name for entry in report.entries]
    assert len(names) == len(set(names))
    assert {'verbatim-vs-consistent', 'spectro-crossover-identity'} <= set(names)
    assert all(np.isfinite(entry.tolerance) or not entry.required for entry in report.entries)
    entries = {entry.name: entry for entry in report.entries}
    for name in ('ode-vs-closed-form', 'carnot-ceiling', 'coherence-vs-steady-state', 'regime-complementarity',
                 'steady-state-richardson-classical', 'perturbative-consistency-entangled'):
        assert entries[name].required
    assert not entries['carnot-ceiling-printed-forms'].required
