//! Command implementations: each builds a deterministic table from a
//! validated config. Sweep points run in parallel, rows are emitted in
//! sweep order.

use crate::config::{
    IsingConfig, IsingDrive, IsingOutput, NfpScanConfig, SweepAxis, TwolevelConfig,
};
use crate::error::CliError;
use crate::output::Table;
use kzosc_core::ising::{
    self, uq_adiabatic_diag, IsingDiagParams, IsingOffDiagParams,
};
use kzosc_core::pt::{self, SumTruncation};
use kzosc_core::tdse::{survival_probability, DriveParams, IntegrationConfig};
use kzosc_core::furry;
use rayon::prelude::*;
use std::f64::consts::PI;

fn window(omega: f64, tau: f64) -> IntegrationConfig {
    let mut cfg = IntegrationConfig::default_for(omega);
    cfg.tau_start = -tau;
    cfg.tau_end = tau;
    cfg
}

pub fn run_twolevel(cfg: &TwolevelConfig) -> Result<Table, CliError> {
    cfg.validate()?;
    let trunc = SumTruncation::new(cfg.n_max)?;
    let values = cfg.sweep.values();
    let rows = values
        .par_iter()
        .map(|&v| -> Result<Vec<Option<f64>>, CliError> {
            let omega = if cfg.sweep.axis == SweepAxis::Omega {
                v
            } else {
                cfg.omega.expect("validated")
            };
            let b_amp = if cfg.sweep.axis == SweepAxis::BAmp { v } else { cfg.b_amp };
            let p = if cfg.sweep.axis == SweepAxis::Eta {
                DriveParams::from_eta(cfg.delta, cfg.eps, v, b_amp, omega)?
            } else if let Some(eta) = cfg.eta {
                DriveParams::from_eta(cfg.delta, cfg.eps, eta, b_amp, omega)?
            } else {
                DriveParams::new(cfg.delta, cfg.eps, cfg.a_amp.unwrap_or(0.0), b_amp, omega)?
            };
            let p_tdse = survival_probability(&p, &window(p.omega, cfg.tau))?;
            let p_pt = pt::p_pt(&p, trunc)?;
            let p_special = if p.a_amp == 0.0 {
                Some(pt::p_pt_a0(&p)?)
            } else if p.b_amp == 0.0 {
                Some(pt::p_pt_b0(&p, trunc)?)
            } else {
                None
            };
            // the closed-form assembly needs kappa > 0
            let (p_fp_exact, p_fp_adiabatic) = if p.delta != 0.0 {
                (
                    Some(furry::p_fp_exact(&p, -cfg.tau, cfg.tau)?),
                    Some(furry::p_fp_adiabatic(&p)?),
                )
            } else {
                (None, None)
            };
            Ok(vec![Some(v), Some(p_tdse), Some(p_pt), p_special, p_fp_exact, p_fp_adiabatic])
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Table {
        columns: vec![
            "axis_value",
            "p_tdse",
            "p_pt",
            "p_pt_special",
            "p_fp_exact",
            "p_fp_adiabatic",
        ],
        rows,
    })
}

pub fn run_ising(cfg: &IsingConfig) -> Result<Table, CliError> {
    cfg.validate()?;
    let trunc = SumTruncation::new(cfg.n_max)?;
    let int_cfg = window(cfg.omega, cfg.tau);
    match cfg.output {
        IsingOutput::Modes => {
            let profile = match cfg.drive {
                IsingDrive::Diag => {
                    let p = IsingDiagParams::new(
                        cfg.j.expect("validated"),
                        cfg.eta,
                        cfg.omega,
                        cfg.eps_prime,
                        cfg.n_sites,
                    )?;
                    ising::mode_profile_diag(&p, &int_cfg, trunc)?
                }
                IsingDrive::Offdiag => {
                    let p = IsingOffDiagParams::new(
                        cfg.delta_prime.expect("validated"),
                        cfg.b_prime,
                        cfg.omega,
                        cfg.eps_prime,
                        cfg.n_sites,
                    )?;
                    ising::mode_profile_offdiag(&p, &int_cfg, trunc)?
                }
            };
            let rows = profile
                .iter()
                .map(|m| {
                    vec![
                        Some(m.q),
                        Some(m.kappa_q),
                        Some(m.p_numeric),
                        Some(m.p_nonadiabatic),
                        Some(m.p_adiabatic),
                    ]
                })
                .collect();
            Ok(Table {
                columns: vec!["q", "kappa_q", "p_numeric", "p_nonadiabatic", "p_adiabatic"],
                rows,
            })
        }
        IsingOutput::Density => {
            let sweep = cfg.sweep.as_ref().expect("validated");
            let rows = sweep
                .values()
                .par_iter()
                .map(|&coupling| -> Result<Vec<Option<f64>>, CliError> {
                    let (numeric, breakdown) = match cfg.drive {
                        IsingDrive::Diag => {
                            let p = IsingDiagParams::new(
                                coupling,
                                cfg.eta,
                                cfg.omega,
                                cfg.eps_prime,
                                cfg.n_sites,
                            )?;
                            (
                                ising::defect_density_numeric_diag(&p, &int_cfg)?,
                                ising::defect_density_approx_diag(&p, trunc)?,
                            )
                        }
                        IsingDrive::Offdiag => {
                            let p = IsingOffDiagParams::new(
                                coupling,
                                cfg.b_prime,
                                cfg.omega,
                                cfg.eps_prime,
                                cfg.n_sites,
                            )?;
                            (
                                ising::defect_density_numeric_offdiag(&p, &int_cfg)?,
                                ising::defect_density_approx_offdiag(&p, trunc)?,
                            )
                        }
                    };
                    // drive-free quantum KZ baseline 1/(pi sqrt(2) J)
                    let no_drive = 1.0 / (PI * 2.0f64.sqrt() * coupling);
                    Ok(vec![
                        Some(coupling),
                        Some(numeric),
                        Some(breakdown.total()),
                        Some(breakdown.n_kzm_peaks),
                        Some(breakdown.n_fp),
                        Some(no_drive),
                    ])
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Table {
                columns: vec![
                    "coupling",
                    "n_numeric",
                    "n_approx",
                    "n_kzm_peaks",
                    "n_fp",
                    "n_qkzm_no_drive",
                ],
                rows,
            })
        }
    }
}

pub fn run_nfp_scan(cfg: &NfpScanConfig) -> Result<Table, CliError> {
    cfg.validate()?;
    let mut points = Vec::new();
    for &omega in &cfg.omegas() {
        for &eta in &cfg.eta {
            for &j in &cfg.j {
                points.push((omega, eta, j));
            }
        }
    }
    let rows = points
        .par_iter()
        .map(|&(omega, eta, j)| -> Result<Vec<Option<f64>>, CliError> {
            let p = IsingDiagParams::new(j, eta, omega, cfg.eps_prime, 200)?;
            let integral = ising::n_fp_integral(&p)?;
            let approx = ising::n_fp_approx(&p)?;
            let coeff = ising::n_fp_coefficient(omega, eta)?;
            let grid = ising::mode_grid(200)?;
            let grid_sum = grid
                .iter()
                .map(|&q| uq_adiabatic_diag(&p, q))
                .sum::<Result<f64, _>>()?
                / grid.len() as f64;
            Ok(vec![
                Some(omega),
                Some(eta),
                Some(j),
                Some(integral),
                Some(approx),
                Some(coeff),
                Some(grid_sum),
            ])
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Table {
        columns: vec![
            "omega",
            "eta",
            "j",
            "n_fp_integral",
            "n_fp_approx",
            "n_fp_coefficient",
            "grid_sum_N200",
        ],
        rows,
    })
}
