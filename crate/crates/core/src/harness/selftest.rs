//! Fast runtime checks of the core invariants, for `dissrange selftest`.

use num_complex::Complex64;

use crate::dissrange::{compute_f, compute_lambda, kappa_d, sandwich_check, DiagnosticsParams, Sandwich};
use crate::lp::{measure_bernstein_constant, FilterBank};
use crate::solver::{nonlinear_term, single_shear, taylor_green, DissipationOperator, Stepper};
use crate::spectral::random::{random_band, Band};
use crate::spectral::{forward_transform, inverse_transform, leray_project, Grid, SpectralField};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, value: f64, limit: f64) -> Check {
    Check { name, passed: value <= limit, detail: format!("{value:.3e} (limit {limit:.0e})") }
}

fn random_fields(grid: Grid, count: u64) -> impl Iterator<Item = SpectralField> {
    let band = Band { k_lo: 1.0, k_hi: grid.k_max() as f64, slope: -5.0 / 3.0, rms: 1.0 };
    (0..count).map(move |seed| random_band(grid, band, seed).expect("band inside the dealiased range"))
}

pub fn run_all() -> Vec<Check> {
    let grid = Grid::new(32).expect("valid grid");
    let bank = FilterBank::new(grid);
    let mut out = Vec::new();

    let (mut roundtrip, mut leray, mut recon, mut flux): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for u in random_fields(grid, 10) {
        let back = forward_transform(&inverse_transform(&u)).expect("finite");
        roundtrip = roundtrip.max(back.sub(&u).l2_norm() / u.l2_norm());
        leray = leray.max(leray_project(&u).sub(&u).l2_norm() / u.l2_norm());
        let sum = bank.decompose(&u).sum().expect("non-empty");
        recon = recon.max(sum.sub(&u).l2_norm() / u.l2_norm());
        let n = nonlinear_term(&u).expect("finite");
        flux = flux.max(u.inner(&n).abs() / (u.l2_norm() * n.l2_norm()));
    }
    out.push(check("fft roundtrip", roundtrip, 1e-12));
    out.push(check("leray idempotent on solenoidal fields", leray, 1e-12));
    out.push(check("filter telescoping", bank.telescoping_residual(), 1e-12));
    out.push(check("shell reconstruction", recon, 1e-10));
    out.push(check("advection energy neutral", flux, 1e-10));

    let params = DiagnosticsParams::new(0.01, 1.0).expect("valid");
    let bernstein = measure_bernstein_constant(&bank, &[1, 2, 3]);
    let (mut reverse_bad, mut strict_bad, mut sandwich_bad) = (0, 0, 0);
    for u in random_fields(grid, 10) {
        let u = u.scaled(0.05);
        let mut st = compute_lambda(&u, &bank, &params);
        compute_f(&u, &bank, &mut st);
        if let Some(q) = st.q {
            if q >= 1 && st.linf(q) < params.threshold() * st.lambda {
                reverse_bad += 1;
            }
            strict_bad += (q + 1..=st.q_max()).filter(|&p| st.linf(p) / bank.lambda(p) >= params.threshold()).count();
        }
        if let Sandwich::Checked { lower_ok: false, .. } = sandwich_check(&st, bernstein) {
            sandwich_bad += 1;
        }
    }
    out.push(check("Λ reverse inequality", reverse_bad as f64, 0.0));
    out.push(check("Λ strict shell test", strict_bad as f64, 0.0));
    out.push(check("sandwich lower bound", sandwich_bad as f64, 0.0));

    let nu = 0.05;
    let u = single_shear(grid, 1.0, 3);
    let st = Stepper::new(grid, DissipationOperator::standard(nu), 0.5);
    let v = st.step(&u, 0.05).expect("admissible step").field;
    out.push(check("heat decay", v.sub(&u.scaled((-nu * 9.0 * 0.05).exp())).l2_norm() / u.l2_norm(), 1e-10));

    let op = DissipationOperator::hyper(0.01);
    let u8 = single_shear(grid, 1.0, 8);
    let v = Stepper::new(grid, op, 0.5).step(&u8, 0.05).expect("admissible step").field;
    let m8 = 8f64.powf(1.25) / 66f64.ln().powf(0.25);
    out.push(check("hyper decay", v.sub(&u8.scaled((-0.01 * m8 * m8 * 0.05).exp())).l2_norm() / u8.l2_norm(), 1e-10));

    let tg = taylor_green(grid, 1.0);
    out.push(check("taylor-green divergence", tg.divergence_defect(), 1e-12));
    let k = kappa_d(0.008, 0.2, 3.0).expect("valid");
    out.push(check("κ_d unit identity", (k - 1.0).abs(), 1e-14));

    let mut z = SpectralField::zeros(grid);
    z.set_mode([0, 0, 0], [Complex64::new(1.0, 0.0), Complex64::default(), Complex64::default()]);
    out.push(check("mean mode carries no gradient", crate::spectral::gradient_l2(&z), 0.0));
    out
}
