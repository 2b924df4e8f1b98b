//! Seeded verification suite: draws signal/window/matrix instances and
//! evaluates every identity and inequality report on them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::nslct::nslct_fast;
use crate::sampling::{energy, inner, lp_norm, synthesize, Grid, SampledSignal, Synth};
use crate::stnslct::{boundedness_bound, moyal, stnslct_gram, WindowSpec};
use crate::symplectic::{random_composed, Block, FreeSymplecticMatrix, Preset};
use crate::uncertainty::{
    heisenberg_from_gram, hausdorff_young_from_gram, lieb_from_gram, log_from_gram, pitt_from_gram, Direction,
    UPReport,
};
use crate::{Complex64, Result};

pub const SUITES: [&str; 9] = ["all", "parseval", "moyal", "bounded", "heisenberg", "pitt", "lieb", "hy", "log"];

const N1_INSTANCES: usize = 20;
const N2_INSTANCES: usize = 4;

/// Tolerance on identities that hold exactly in the discrete setting.
const PARSEVAL_TOL: f64 = 1e-8;
/// Tolerance on identities that rely on the window shifts tiling the grid.
const ENERGY_TOL: f64 = 1e-6;
const ORTHOGONAL_TOL: f64 = 1e-8;

struct Instance {
    label: String,
    f: SampledSignal,
    window: WindowSpec,
    m: FreeSymplecticMatrix,
}

fn sign<R: Rng>(rng: &mut R) -> f64 {
    if rng.gen_bool(0.5) {
        1.0
    } else {
        -1.0
    }
}

fn draw_signal<R: Rng>(k: usize, n: usize, grid: &Grid, rng: &mut R) -> Result<(String, SampledSignal)> {
    let mut pt = |lo: f64, hi: f64| {
        let mut p = [0.0; 2];
        for v in p.iter_mut().take(n) {
            *v = rng.gen_range(lo..hi);
        }
        p
    };
    let (center, freq) = (pt(-2.0, 2.0), pt(-2.0, 2.0));
    match k % 3 {
        0 => {
            let sigma = rng.gen_range(0.6..1.6);
            let s = synthesize(&Synth::Gaussian { sigma, center, freq }, grid)?;
            Ok((format!("gaussian(sigma={sigma:.3})"), s))
        }
        1 => {
            let linear_rate = rng.gen_range(-0.5..0.5);
            let quadratic_rate = if n == 1 { rng.gen_range(-0.05..0.05) } else { 0.0 };
            let envelope = rng.gen_range(1.0..2.0);
            let s = synthesize(&Synth::Chirp { freq, linear_rate, quadratic_rate, envelope: Some(envelope) }, grid)?;
            Ok((format!("chirp(rate={linear_rate:.3})"), s))
        }
        _ => {
            let seed = rng.gen();
            let bandwidth = rng.gen_range(1.0..3.0);
            let envelope = if n == 1 { rng.gen_range(1.0..2.5) } else { rng.gen_range(1.0..1.8) };
            let s = synthesize(&Synth::Noise { seed, bandwidth, envelope }, grid)?;
            Ok((format!("noise(seed={seed})"), s))
        }
    }
}

fn draw_matrix<R: Rng>(k: usize, n: usize, rng: &mut R) -> Result<(String, FreeSymplecticMatrix)> {
    let (name, preset) = match k % 5 {
        0 => ("fourier".to_string(), Preset::Fourier),
        1 => {
            let alpha = rng.gen_range(0.4..1.2);
            (format!("frft({alpha:.3})"), Preset::Frft { alpha })
        }
        2 => {
            let b = match n {
                1 => Block::scalar(1, sign(rng) * rng.gen_range(0.6..2.0)),
                _ => {
                    let off = rng.gen_range(-0.3..0.3);
                    Block::from_row_major(2, &[rng.gen_range(0.8..2.0), off, off, rng.gen_range(0.8..2.0)])?
                }
            };
            ("fresnel".to_string(), Preset::Fresnel { b })
        }
        3 => {
            let axes = (0..n)
                .map(|_| {
                    let a = rng.gen_range(0.5..1.5);
                    let b = sign(rng) * rng.gen_range(0.5..2.0);
                    let d = rng.gen_range(0.5..1.5);
                    [a, b, (a * d - 1.0) / b, d]
                })
                .collect();
            ("separable".to_string(), Preset::Separable { axes })
        }
        _ => return Ok(("random".to_string(), random_composed(n, rng)?)),
    };
    Ok((name, FreeSymplecticMatrix::preset(n, &preset)?))
}

fn instances(seed: u64) -> Result<Vec<Instance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for k in 0..N1_INSTANCES + N2_INSTANCES {
        let (n, count, stride) = if k < N1_INSTANCES { (1, 256, 1) } else { (2, 64, 2) };
        let grid = Grid::self_dual(n, count)?;
        let (sname, f) = draw_signal(k, n, &grid, &mut rng)?;
        let sigma = rng.gen_range(0.9..1.5);
        let window = synthesize(&Synth::Gaussian { sigma, center: [0.0; 2], freq: [0.0; 2] }, &grid)?;
        let (mname, m) = draw_matrix(k, n, &mut rng)?;
        out.push(Instance {
            label: format!("inst={k} n={n} signal={sname} window=gaussian(sigma={sigma:.3}) matrix={mname}"),
            f,
            window: WindowSpec::new(window, stride)?,
            m,
        });
    }
    Ok(out)
}

fn wants(suite: &str, name: &str) -> bool {
    suite == "all" || suite == name
}

fn instance_reports(suite: &str, inst: &Instance) -> Result<Vec<UPReport>> {
    let Instance { label, f, window, m } = inst;
    let mut out = Vec::new();
    let mut push = |r: UPReport| {
        let params = format!("{label} {}", r.params);
        out.push(r.with_params(params.trim_end().to_string()));
    };

    if wants(suite, "parseval") {
        let spec = nslct_fast(f, m)?;
        let r = UPReport::new(
            "parseval",
            lp_norm(&spec, 2.0)?,
            lp_norm(f, 2.0)?,
            1.0,
            Direction::Equal { rel_tol: PARSEVAL_TOL },
        );
        push(r);
    }
    let g = stnslct_gram(f, window, m)?;
    if wants(suite, "moyal") {
        let expect = energy(f) * window.norm2();
        push(UPReport::new("moyal", moyal(&g, &g)?.re, expect, 1.0, Direction::Equal { rel_tol: ENERGY_TOL }));
    }
    if wants(suite, "bounded") {
        let bound = boundedness_bound(f, window, m)?;
        push(UPReport::new("bounded", lp_norm(&g, f64::INFINITY)?, bound, bound, Direction::AtMost));
    }
    if wants(suite, "heisenberg") {
        push(heisenberg_from_gram(&g, f, window, m)?);
    }
    if wants(suite, "pitt") {
        for alpha in [0.0, 0.5] {
            let mut r = pitt_from_gram(&g, f, window, m, alpha)?;
            if alpha == 0.0 {
                r.direction = Direction::Equal { rel_tol: ENERGY_TOL };
            }
            push(r);
        }
    }
    if wants(suite, "lieb") {
        for p in [2.0, 4.0] {
            let mut r = lieb_from_gram(&g, f, window, m, p)?;
            if p == 2.0 {
                r.direction = Direction::Equal { rel_tol: ENERGY_TOL };
            }
            push(r);
        }
    }
    if wants(suite, "hy") {
        for p in [1.0, 1.5, 2.0] {
            let mut r = hausdorff_young_from_gram(&g, f, window, p)?;
            if p == 2.0 {
                r.direction = Direction::Equal { rel_tol: ENERGY_TOL };
            }
            push(r);
        }
    }
    if wants(suite, "log") {
        push(log_from_gram(&g, f, window, m)?);
    }
    Ok(out)
}

/// Even/odd signal pairs and orthogonal windows: the cross pairing must vanish.
fn orthogonal_reports(seed: u64) -> Result<Vec<UPReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6f72_7468);
    let grid = Grid::self_dual(1, 256)?;
    let mut out = Vec::new();
    for k in 0..N1_INSTANCES {
        let sigma = rng.gen_range(0.8..1.4);
        let even = SampledSignal::from_fn(grid.clone(), |x| {
            Complex64::new((-x[0] * x[0] / (2.0 * sigma * sigma)).exp(), 0.0)
        })?;
        let odd = SampledSignal::from_fn(grid.clone(), |x| {
            Complex64::new(x[0] * (-x[0] * x[0] / (2.0 * sigma * sigma)).exp(), 0.0)
        })?;
        let ws = rng.gen_range(0.9..1.4);
        let phi = synthesize(&Synth::Gaussian { sigma: ws, center: [0.0; 2], freq: [0.0; 2] }, &grid)?;
        let (mname, m) = draw_matrix(k, 1, &mut rng)?;
        // odd k: orthogonal signals, shared window; even k: shared signal, orthogonal windows
        let (f, g, p1, p2, what) = if k % 2 == 1 {
            (&even, &odd, &phi, &phi, "signals")
        } else {
            (&even, &even, &even, &odd, "windows")
        };
        let v1 = stnslct_gram(f, &WindowSpec::new(p1.clone(), 1)?, &m)?;
        let v2 = stnslct_gram(g, &WindowSpec::new(p2.clone(), 1)?, &m)?;
        let scale = lp_norm(&v1, 2.0)? * lp_norm(&v2, 2.0)?;
        debug_assert!(inner(f, g)?.norm() < 1e-9 || inner(p1, p2)?.norm() < 1e-9);
        let r = UPReport::new("moyal_orthogonal", moyal(&v1, &v2)?.norm(), ORTHOGONAL_TOL * scale, ORTHOGONAL_TOL, Direction::AtMost);
        out.push(r.with_params(format!("inst={k} n=1 orthogonal={what} matrix={mname}")));
    }
    Ok(out)
}

/// Run one named suite. Reports come back in a fixed order for a given seed.
pub fn run_suite(suite: &str, seed: u64) -> Result<Vec<UPReport>> {
    let insts = instances(seed)?;
    let per: Vec<Vec<UPReport>> =
        insts.par_iter().map(|inst| instance_reports(suite, inst)).collect::<Result<_>>()?;
    let mut out: Vec<UPReport> = per.into_iter().flatten().collect();
    if wants(suite, "moyal") {
        out.extend(orthogonal_reports(seed)?);
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

/// CSV report with one row per record.
pub fn write_report(reports: &[UPReport]) -> String {
    let mut out = String::from("name,params,lhs,rhs,constant,margin,pass\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{:.16e},{:.16e},{:.16e},{:.16e},{}\n",
            r.name,
            r.params,
            r.lhs,
            r.rhs,
            r.constant,
            r.margin,
            r.passes()
        ));
    }
    out
}
