//! Table-producing commands. Everything here is pure; writing is left to the caller.

use serde::{Deserialize, Serialize};

use super::{CliError, RunConfig};
use crate::fock::HalfInt;
use crate::gaudin;
use crate::rotor::{self, LevelTable};
use crate::yang_baxter::Family;

pub fn levels(cfg: &RunConfig) -> Result<LevelTable, CliError> {
    let mut table = match &cfg.molecule {
        Some(m) => rotor::levels_physical(m.a, m.b, m.c, cfg.j_max())?,
        None => rotor::ray_levels(single_kappa(cfg)?, cfg.j_max())?,
    };
    let j_min = HalfInt::from_int(cfg.j_min() as i64);
    table.rows.retain(|r| r.j >= j_min);
    Ok(table)
}

fn single_kappa(cfg: &RunConfig) -> Result<f64, CliError> {
    let values = cfg
        .kappa
        .as_ref()
        .ok_or_else(|| CliError::Config("kappa is required".into()))?
        .values()?;
    match values.as_slice() {
        [k] => Ok(*k),
        _ => Err(CliError::Config("a single kappa is required".into())),
    }
}

fn kappas(cfg: &RunConfig) -> Result<Vec<f64>, CliError> {
    cfg.kappa
        .as_ref()
        .ok_or_else(|| CliError::Config("kappa is required".into()))?
        .values()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub kappa: f64,
    pub j: HalfInt,
    pub tau: HalfInt,
    pub energy: f64,
}

/// Ray levels for every κ of the grid and `j = j_min … j_max`, ordered by
/// `(κ, j, τ)`.
pub fn scan(cfg: &RunConfig) -> Result<Vec<ScanRow>, CliError> {
    let mut rows = Vec::new();
    for kappa in kappas(cfg)? {
        let j_min = HalfInt::from_int(cfg.j_min() as i64);
        for level in rotor::ray_levels(kappa, cfg.j_max())?.rows.into_iter().filter(|r| r.j >= j_min) {
            rows.push(ScanRow {
                kappa,
                j: level.j,
                tau: level.tau,
                energy: level.energy,
            });
        }
    }
    Ok(rows)
}

/// Gaudin spectra and reconstruction diagnostics for one `(κ, j)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaudinBlock {
    pub kappa: f64,
    pub j: HalfInt,
    pub gamma: f64,
    pub family: Family,
    pub delta_eps: f64,
    pub tau_a: Vec<f64>,
    pub tau_b: Vec<f64>,
    pub reconstructed: Vec<f64>,
    pub direct: Vec<f64>,
    pub difference: Vec<f64>,
    pub max_difference: f64,
}

pub fn gaudin(cfg: &RunConfig) -> Result<Vec<GaudinBlock>, CliError> {
    let delta_eps = cfg.delta_eps();
    let mut blocks = Vec::new();
    for kappa in kappas(cfg)? {
        for j in cfg.j_min()..=cfg.j_max() {
            let j = HalfInt::from_int(j as i64);
            let rec = gaudin::build_ray_reconstruction(j, kappa, delta_eps)?;
            let pair = gaudin::tau_closed_form(
                rec.family,
                crate::fock::FockSector::for_spin(j)?,
                rec.gamma,
                0.5 * delta_eps,
                -0.5 * delta_eps,
                0.0,
            )?;
            let reconstructed = rec.energies()?;
            let mut direct: Vec<f64> = rotor::spectrum(j, kappa)?.into_iter().map(|r| r.energy).collect();
            direct.sort_by(f64::total_cmp);
            let difference: Vec<f64> = reconstructed.iter().zip(&direct).map(|(a, b)| a - b).collect();
            let max_difference = difference.iter().map(|d| d.abs()).fold(0.0, f64::max);
            blocks.push(GaudinBlock {
                kappa,
                j,
                gamma: rec.gamma,
                family: rec.family,
                delta_eps,
                tau_a: pair.tau_a.eigenvalues()?,
                tau_b: pair.tau_b.eigenvalues()?,
                reconstructed,
                direct,
                difference,
                max_difference,
            });
        }
    }
    Ok(blocks)
}
