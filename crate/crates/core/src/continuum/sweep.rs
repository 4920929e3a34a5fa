use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::Window;
use crate::error::{Error, Result};
use crate::symbols::{fast_resolvent_diff_norm, SymbolSpec};

/// How the Wilson coupling depends on the lattice spacing.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RhoRule {
    /// `ρ = h`
    H,
    /// `ρ = h^{3/2}`
    H15,
    /// `ρ = c`
    Const(f64),
}

impl RhoRule {
    pub fn rho(&self, h: f64) -> f64 {
        match *self {
            RhoRule::H => h,
            RhoRule::H15 => h.powf(1.5),
            RhoRule::Const(c) => c,
        }
    }
}

impl std::str::FromStr for RhoRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h" => Ok(RhoRule::H),
            "h15" => Ok(RhoRule::H15),
            _ => {
                let v = s
                    .strip_prefix("const:")
                    .and_then(|v| v.parse::<f64>().ok())
                    .ok_or_else(|| Error::arg(format!("unknown rho rule '{s}' (expected h, h15 or const:<v>)")))?;
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::arg(format!("constant rho must be positive, got {v}")));
                }
                Ok(RhoRule::Const(v))
            }
        }
    }
}

/// Lattice model paired with its continuum limit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Pairing {
    Naive,
    Wilson(RhoRule),
    Ks,
}

impl Pairing {
    pub fn name(&self) -> &'static str {
        match self {
            Pairing::Naive => "naive",
            Pairing::Wilson(_) => "wilson",
            Pairing::Ks => "ks",
        }
    }

    /// Ratio between the embedding scale and the lattice spacing.
    pub fn scale(&self) -> f64 {
        match self {
            Pairing::Ks => 2.0,
            _ => 1.0,
        }
    }

    fn specs(&self, dim: usize, mass: f64, h: f64) -> Result<(SymbolSpec, SymbolSpec, Option<f64>)> {
        Ok(match *self {
            Pairing::Naive => (SymbolSpec::naive(dim, mass, h)?, SymbolSpec::continuum(dim, mass)?, None),
            Pairing::Wilson(rule) => {
                let rho = rule.rho(h);
                (
                    SymbolSpec::wilson(dim, mass, h, rho)?,
                    SymbolSpec::continuum(dim, mass)?,
                    Some(rho),
                )
            }
            Pairing::Ks => (
                SymbolSpec::ks_lattice(dim, mass, h)?,
                SymbolSpec::ks_continuum(dim, mass)?,
                None,
            ),
        })
    }
}

/// Default momentum grid points per axis.
pub fn default_grid_density(dim: usize) -> usize {
    match dim {
        1 => 4096,
        2 => 512,
        _ => 96,
    }
}

/// `2^{-3}, …, 2^{-9}`.
pub fn default_h_list() -> Vec<f64> {
    (3..=9).map(|k| 2f64.powi(-k)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceParams {
    pub pairing: Pairing,
    pub dim: usize,
    pub mass: f64,
    pub h_list: Vec<f64>,
    pub z: Complex64,
    pub grid_density: usize,
}

impl ConvergenceParams {
    /// Defaults: `z = i`, `h = 2^{-3}..2^{-9}`, dimension-dependent grid.
    pub fn new(pairing: Pairing, dim: usize, mass: f64) -> Self {
        Self {
            pairing,
            dim,
            mass,
            h_list: default_h_list(),
            z: Complex64::new(0.0, 1.0),
            grid_density: default_grid_density(dim),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.h_list.is_empty() {
            return Err(Error::arg("the list of lattice spacings is empty"));
        }
        if self.h_list.iter().any(|h| !(h.is_finite() && *h > 0.0)) {
            return Err(Error::arg("lattice spacings must be positive"));
        }
        if self.h_list.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::arg("lattice spacings must be strictly decreasing"));
        }
        if self.z.im == 0.0 || !self.z.is_finite() {
            return Err(Error::arg(format!("spectral parameter must be non-real, got {}", self.z)));
        }
        if self.grid_density < 2 {
            return Err(Error::arg("momentum grid needs at least 2 points per axis"));
        }
        if self.grid_density.checked_pow(self.dim as u32).map_or(true, |t| t > 1 << 26) {
            return Err(Error::Resource {
                requested: self.grid_density.saturating_pow(self.dim as u32),
                limit: 1 << 26,
            });
        }
        self.pairing.specs(self.dim, self.mass, self.h_list[0])?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub h: f64,
    pub rho: Option<f64>,
    #[serde(rename = "D")]
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub model: &'static str,
    pub dim: usize,
    pub m: f64,
    pub z_re: f64,
    pub z_im: f64,
    pub grid_density: usize,
    pub samples: Vec<Sample>,
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

impl ConvergenceReport {
    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer_pretty(out, self)?;
        Ok(())
    }

    /// One row per sample with columns `h, rho, D, model, z_re, z_im, dim, m`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["h", "rho", "D", "model", "z_re", "z_im", "dim", "m"])?;
        for s in &self.samples {
            w.write_record([
                s.h.to_string(),
                s.rho.map(|r| r.to_string()).unwrap_or_default(),
                s.distance.to_string(),
                self.model.to_string(),
                self.z_re.to_string(),
                self.z_im.to_string(),
                self.dim.to_string(),
                self.m.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Per-axis momenta: `points + 1` uniform samples of `[−1/(sh), 1/(sh)]`
/// together with `0` and `1/(2sh)`.
fn axis_momenta(extent: f64, points: usize) -> Vec<f64> {
    let mut xs: Vec<f64> = (0..=points)
        .map(|k| extent * (-1.0 + 2.0 * k as f64 / points as f64))
        .collect();
    xs.push(0.0);
    xs.push(0.5 * extent);
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * extent);
    xs
}

/// `max_ξ |φ̂(shξ)| · ‖(Ĥ_h(ξ) − z)^{-1} − (Ĥ_0(ξ) − z)^{-1}‖` over the grid.
pub fn surrogate_distance(
    lattice: &SymbolSpec,
    continuum: &SymbolSpec,
    embed_spacing: f64,
    z: Complex64,
    points: usize,
    window: &Window,
) -> f64 {
    let d = lattice.dim();
    let axis = axis_momenta(1.0 / embed_spacing, points);
    let len = axis.len();
    let total = len.pow(d as u32);
    (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut xi = [0.0; 8];
            let mut scaled = [0.0; 8];
            for k in (0..d).rev() {
                xi[k] = axis[idx % len];
                scaled[k] = embed_spacing * xi[k];
                idx /= len;
            }
            let weight = window.phi_hat(&scaled[..d]);
            if weight == 0.0 {
                return 0.0;
            }
            let xi = &xi[..d];
            weight * fast_resolvent_diff_norm(&lattice.expansion(xi), &continuum.expansion(xi), z)
        })
        .reduce(|| 0.0, f64::max)
}

pub fn convergence_sweep(params: &ConvergenceParams, window: &Window) -> Result<ConvergenceReport> {
    params.validate()?;
    let samples = params
        .h_list
        .iter()
        .map(|&h| {
            let (lat, cont, rho) = params.pairing.specs(params.dim, params.mass, h)?;
            let distance = surrogate_distance(
                &lat,
                &cont,
                params.pairing.scale() * h,
                params.z,
                params.grid_density,
                window,
            );
            Ok(Sample { h, rho, distance })
        })
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<(f64, f64)> = samples.iter().map(|s| (s.h, s.distance)).collect();
    let (slope, intercept, r2) = fit_rate(&points)?;
    Ok(ConvergenceReport {
        model: params.pairing.name(),
        dim: params.dim,
        m: params.mass,
        z_re: params.z.re,
        z_im: params.z.im,
        grid_density: params.grid_density,
        samples,
        slope,
        intercept,
        r2,
    })
}

/// Least-squares line through `(log h, log D)`: `(slope, intercept, R²)`.
pub fn fit_rate(samples: &[(f64, f64)]) -> Result<(f64, f64, f64)> {
    if samples.len() < 3 {
        return Err(Error::Fit(format!("need at least 3 samples, got {}", samples.len())));
    }
    if let Some(&(h, d)) = samples.iter().find(|(h, d)| !(*d > 0.0 && *h > 0.0)) {
        return Err(Error::Fit(format!("non-positive sample (h = {h}, D = {d}), treated as non-convergent")));
    }
    let n = samples.len() as f64;
    let xs: Vec<f64> = samples.iter().map(|(h, _)| h.ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|(_, d)| d.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("all spacings are equal".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let r2 = if ss_tot <= 1e-300 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok((slope, intercept, r2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuum::make_window;
    use crate::symbols::resolvent_diff_norm;

    fn run(pairing: Pairing, dim: usize, density: Option<usize>) -> ConvergenceReport {
        let mut p = ConvergenceParams::new(pairing, dim, 1.0);
        if let Some(g) = density {
            p.grid_density = g;
        }
        convergence_sweep(&p, &make_window()).unwrap()
    }

    #[test]
    fn fit_examples() {
        let hs = [0.5, 0.25, 0.125, 0.0625];
        let lin: Vec<_> = hs.iter().map(|&h| (h, 3.0 * h)).collect();
        let (s, b, r2) = fit_rate(&lin).unwrap();
        assert!((s - 1.0).abs() < 1e-12 && (b - 3f64.ln()).abs() < 1e-12 && (r2 - 1.0).abs() < 1e-12);
        let quad: Vec<_> = hs.iter().map(|&h| (h, h * h)).collect();
        assert!((fit_rate(&quad).unwrap().0 - 2.0).abs() < 1e-12);
        let flat: Vec<_> = hs.iter().map(|&h| (h, 0.4)).collect();
        assert!(fit_rate(&flat).unwrap().0.abs() < 1e-12);
        assert!(matches!(fit_rate(&lin[..2]), Err(Error::Fit(_))));
        assert!(matches!(fit_rate(&[(0.5, 1.0), (0.25, 0.0), (0.1, 1.0)]), Err(Error::Fit(_))));
    }

    #[test]
    fn rho_rules_parse() {
        assert_eq!("h".parse::<RhoRule>().unwrap(), RhoRule::H);
        assert_eq!("h15".parse::<RhoRule>().unwrap(), RhoRule::H15);
        assert_eq!("const:0.3".parse::<RhoRule>().unwrap(), RhoRule::Const(0.3));
        assert!("const:-1".parse::<RhoRule>().is_err());
        assert!("h2".parse::<RhoRule>().is_err());
        assert!((RhoRule::H15.rho(0.25) - 0.125).abs() < 1e-15);
    }

    #[test]
    fn invalid_params() {
        let w = make_window();
        let mut p = ConvergenceParams::new(Pairing::Ks, 1, 1.0);
        p.h_list.clear();
        assert!(matches!(convergence_sweep(&p, &w), Err(Error::Argument(_))));
        let mut p = ConvergenceParams::new(Pairing::Ks, 1, 1.0);
        p.h_list = vec![0.1, 0.2, 0.05];
        assert!(convergence_sweep(&p, &w).is_err());
        let mut p = ConvergenceParams::new(Pairing::Naive, 1, 1.0);
        p.z = Complex64::new(1.0, 0.0);
        assert!(convergence_sweep(&p, &w).is_err());
    }

    #[test]
    fn staggered_rate_is_linear() {
        let r = run(Pairing::Ks, 1, None);
        assert!((r.slope - 1.0).abs() <= 0.15, "{r:?}");
        let ds: Vec<f64> = r.samples.iter().map(|s| s.distance).collect();
        assert!(ds.windows(2).all(|w| w[1] <= 1.05 * w[0]), "{ds:?}");
        assert!(*ds.last().unwrap() <= 0.05);
    }

    #[test]
    fn wilson_rates_follow_the_coupling() {
        let lin = run(Pairing::Wilson(RhoRule::H), 1, None);
        assert!((lin.slope - 1.0).abs() <= 0.15, "{lin:?}");
        assert!(lin.samples.last().unwrap().distance <= 0.05);
        let half = run(Pairing::Wilson(RhoRule::H15), 1, None);
        assert!((half.slope - 0.5).abs() <= 0.15, "{half:?}");
    }

    #[test]
    fn naive_does_not_converge() {
        let r = run(Pairing::Naive, 1, None);
        assert!(r.samples.iter().all(|s| s.distance >= 0.1), "{r:?}");
        // Oracle: the weighted pointwise difference at the doubler.
        let w = make_window();
        for s in &r.samples {
            let lat = SymbolSpec::naive(1, 1.0, s.h).unwrap();
            let cont = SymbolSpec::continuum(1, 1.0).unwrap();
            let xi = [0.5 / s.h];
            let at_doubler =
                w.phi_hat(&[0.5]) * resolvent_diff_norm(&lat, &cont, &xi, Complex64::new(0.0, 1.0)).unwrap();
            assert!(s.distance >= at_doubler - 1e-12);
        }
    }

    #[test]
    fn grid_refinement_is_stable() {
        let p = ConvergenceParams {
            h_list: vec![0.125, 0.0625, 0.03125],
            ..ConvergenceParams::new(Pairing::Ks, 1, 1.0)
        };
        let w = make_window();
        let coarse = convergence_sweep(&p, &w).unwrap();
        let fine = convergence_sweep(&ConvergenceParams { grid_density: 2 * p.grid_density, ..p.clone() }, &w).unwrap();
        for (a, b) in coarse.samples.iter().zip(&fine.samples) {
            assert!((a.distance - b.distance).abs() <= 0.01 * b.distance);
        }
    }

    #[test]
    fn sweep_matches_a_brute_force_grid() {
        // Same surrogate with the eigensolve route on a direct loop.
        let w = make_window();
        let h = 0.0625;
        let lat = SymbolSpec::ks_lattice(1, 1.0, h).unwrap();
        let cont = SymbolSpec::ks_continuum(1, 1.0).unwrap();
        let z = Complex64::new(0.0, 1.0);
        let points = 512;
        let extent = 1.0 / (2.0 * h);
        let brute = (0..=points)
            .map(|k| extent * (-1.0 + 2.0 * k as f64 / points as f64))
            .chain([0.0, 0.5 * extent])
            .map(|xi| w.phi_hat(&[2.0 * h * xi]) * resolvent_diff_norm(&lat, &cont, &[xi], z).unwrap())
            .fold(0.0, f64::max);
        let fast = surrogate_distance(&lat, &cont, 2.0 * h, z, points, &w);
        assert!((brute - fast).abs() < 1e-12, "{brute} {fast}");
    }

    #[test]
    fn csv_columns() {
        let p = ConvergenceParams {
            h_list: vec![0.25, 0.125, 0.0625],
            grid_density: 64,
            ..ConvergenceParams::new(Pairing::Wilson(RhoRule::H), 1, 1.0)
        };
        let r = convergence_sweep(&p, &make_window()).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "h,rho,D,model,z_re,z_im,dim,m");
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first[0], "0.25");
        assert_eq!(first[1], "0.25");
        assert_eq!(&first[3..], ["wilson", "0", "1", "1", "1"]);
        assert_eq!(text.lines().count(), 4);
    }
}
