//! Single-point results laid out as tables, as printed by the command line.

use serde_json::json;

use crate::em::{solve_sparams, EmError, EmWave, Slab};
use crate::nrw::{ExtractedParams, RowOutcome};
use crate::qm::{rt_rect, QmBarrier, QmError};
use crate::sweep::SweepTable;

/// `r`, `t`, `R`, `T` of one rectangular barrier.
pub fn qm_barrier_table(barrier: &QmBarrier, energy: f64) -> Result<SweepTable, QmError> {
    let rt = rt_rect(barrier, energy)?;
    let row = vec![
        energy,
        barrier.height,
        barrier.width,
        rt.r.re,
        rt.r.im,
        rt.t.re,
        rt.t.im,
        rt.reflectance(),
        rt.transmittance(),
    ];
    Ok(SweepTable::new(
        &[
            "energy_j", "vb_j", "width_m", "r_re", "r_im", "t_re", "t_im", "r_sq", "t_sq",
        ],
        vec![row],
    )
    .with("kind", json!("qm_barrier"))
    .with("mass_kg", json!(barrier.mass)))
}

/// `s11`, `s21` of one slab at one frequency.
pub fn em_slab_table(slab: &Slab, frequency: f64) -> Result<SweepTable, EmError> {
    let sp = solve_sparams(slab, &EmWave::new(frequency)?)?;
    let row = vec![
        frequency,
        sp.s11.re,
        sp.s11.im,
        sp.s21.re,
        sp.s21.im,
        sp.s11.norm_sqr(),
        sp.s21.norm_sqr(),
    ];
    Ok(SweepTable::new(
        &["f_hz", "s11_re", "s11_im", "s21_re", "s21_im", "s11_sq", "s21_sq"],
        vec![row],
    )
    .with("kind", json!("em_slab"))
    .with("n", json!([slab.n.re, slab.n.im]))
    .with("z", json!([slab.z.re, slab.z.im]))
    .with("thickness_m", json!(slab.thickness)))
}

/// Extracted constitutive parameters; indeterminate rows are NaN.
pub fn nrw_table(params: &ExtractedParams, thickness: f64) -> SweepTable {
    let rows = params
        .rows
        .iter()
        .map(|row| match row {
            RowOutcome::Value(e) => vec![
                e.frequency,
                e.z.re,
                e.z.im,
                e.n.re,
                e.n.im,
                e.eps.re,
                e.eps.im,
                e.mu.re,
                e.mu.im,
                e.branch as f64,
            ],
            RowOutcome::Indeterminate { frequency } => {
                let mut v = vec![f64::NAN; 10];
                v[0] = *frequency;
                v
            }
        })
        .collect();
    SweepTable::new(
        &[
            "f_hz", "z_re", "z_im", "n_re", "n_im", "eps_re", "eps_im", "mu_re", "mu_im", "branch",
        ],
        rows,
    )
    .with("kind", json!("nrw"))
    .with("thickness_m", json!(thickness))
}
