"""Result tables of the scenario flows: path under the output directory and column schema."""
from typing import List, Tuple

from two_photon_qhe.data.storage.base import SchemaField

Table = Tuple[Tuple[str, ...], List[SchemaField]]

coherent_populations: Table = (
    ('populations', 'coherent'),
    [
        SchemaField(name='t', field_type=float, description='Time in inverse eV.'),
        SchemaField(name='rho_11', field_type=float),
        SchemaField(name='rho_gg', field_type=float),
        SchemaField(name='rho_11_ode', field_type=float, description='Equation of motion driven by the pump pulse envelope.'),
    ],
)

thermal_populations: Table = (
    ('populations', 'thermal'),
    [
        SchemaField(name='t', field_type=float),
        SchemaField(name='rho_11', field_type=float),
        SchemaField(name='rho_gg', field_type=float),
    ],
)

bath_summary: Table = (
    ('bath_fit', 'summary'),
    [
        SchemaField(name='kind', field_type=str),
        SchemaField(name='n_h', field_type=float),
        SchemaField(name='gamma_h', field_type=float, description='Effective rate in eV.'),
        SchemaField(name='T_h', field_type=float, description='Effective temperature in eV.'),
        SchemaField(name='max_mismatch', field_type=float),
    ],
)

bath_mismatch: Table = (
    ('bath_fit', 'mismatch'),
    [
        SchemaField(name='t', field_type=float),
        SchemaField(name='rho_11_coherent', field_type=float),
        SchemaField(name='rho_11_thermal', field_type=float),
        SchemaField(name='diff_11', field_type=float),
        SchemaField(name='rho_gg_coherent', field_type=float),
        SchemaField(name='rho_gg_thermal', field_type=float),
        SchemaField(name='diff_gg', field_type=float),
    ],
)

engine_sweep: Table = (
    ('engine', 'sweep'),
    [
        SchemaField(name='tau', field_type=float),
        SchemaField(name='c_p', field_type=float),
        SchemaField(name='eta_star', field_type=float),
        SchemaField(name='region', field_type=str),
        SchemaField(name='sigma_p_prime', field_type=float),
        SchemaField(name='P_max', field_type=float),
        SchemaField(name='c21_star', field_type=float),
        SchemaField(name='flag', field_type=str, description='Invariant violated by the efficiency, empty when defined.'),
    ],
)

qhe_ratio: Table = (
    ('engine', 'qhe_ratio'),
    [
        SchemaField(name='tau', field_type=float),
        SchemaField(name='P_max_C', field_type=float, description='Small tau sigma\' maximum, classical pump.'),
        SchemaField(name='P_max_Q', field_type=float, description='Small tau sigma\' maximum, entangled pump.'),
        SchemaField(name='ratio', field_type=float),
    ],
)

bounds: Table = (
    ('bounds', 'table'),
    [
        SchemaField(name='kind', field_type=str),
        SchemaField(name='tau', field_type=float),
        SchemaField(name='bound', field_type=str),
        SchemaField(name='c_p', field_type=float),
        SchemaField(name='sigma_p_prime', field_type=float),
        SchemaField(name='eta_target', field_type=float),
        SchemaField(name='eta_tabulated', field_type=float),
        SchemaField(name='eta_weak', field_type=float, description='Printed weak-dissipation form.'),
    ],
)

spectro: Table = (
    ('spectro', 'ratio'),
    [
        SchemaField(name='tau', field_type=float),
        SchemaField(name='P_max_C', field_type=float),
        SchemaField(name='P_max_Q', field_type=float),
        SchemaField(name='ratio', field_type=float),
        SchemaField(name='crossover_flag', field_type=bool, description='Entangled pump ahead.'),
    ],
)

joint_spectrum: Table = (
    ('spdc', 'joint_spectral_intensity'),
    [
        SchemaField(name='omega_i', field_type=float),
        SchemaField(name='omega_s', field_type=float),
        SchemaField(name='magnitude2', field_type=float),
    ],
)

oracle_report: Table = (
    ('oracle', 'report'),
    [
        SchemaField(name='name', field_type=str),
        SchemaField(name='required', field_type=bool),
        SchemaField(name='passed', field_type=bool),
        SchemaField(name='residual', field_type=float),
        SchemaField(name='tolerance', field_type=float),
        SchemaField(name='detail', field_type=str),
    ],
)
