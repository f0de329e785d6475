from ._core import (
    CondWaveFunction,
    HeunParams,
    KgheunError,
    PotentialSpec,
    WaveFunction,
    cond_potential,
    cond_solution,
    cond_z,
    domain_grid,
    families,
    fig2_csv,
    gauss_2f1,
    heun_c,
    heun_c_jet,
    heun_ode_residual,
    kg_residual,
    kummer_1f1,
    lambert_w,
    reduce,
    solve,
)

__version__ = "0.1.0"
