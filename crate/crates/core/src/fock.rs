//! Truncated number-basis simulator for the same quadratic Hamiltonians.
//!
//! With `H = (i/2) Σ Gᵢⱼ (aᵢ†aⱼ† − aᵢaⱼ) = iK`, the generator `K` is a real
//! antisymmetric matrix in the number basis (also after truncation), so the
//! evolved vacuum `ψ(t) = e^{Kt} ψ(0)` stays real and its norm is conserved
//! by construction. The action of `e^{Kt}` on the vector is computed by a
//! Taylor series over substeps short enough that `‖K‖·dt ≤ 1`.

use crate::error::{Error, Result};
use crate::gaussian::{CouplingMatrix, JointQuadrature};

pub const DEFAULT_CUTOFF: usize = 12;
pub const MAX_FOCK_MODES: usize = 3;
pub const MAX_FOCK_DIMENSION: usize = 100_000;
/// Cutoff increase used for the convergence re-check.
pub const CONVERGENCE_CUTOFF_STEP: usize = 4;
pub const CONVERGENCE_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockConfig {
    pub mode_count: usize,
    /// Highest photon number kept per mode.
    pub cutoff: usize,
    /// Upper bound on the Taylor substep length.
    pub time_step: f64,
    /// Largest accepted `|λ_max·t|`.
    pub max_exponent: f64,
}

impl FockConfig {
    pub fn new(mode_count: usize) -> Self {
        Self { mode_count, cutoff: DEFAULT_CUTOFF, time_step: 0.05, max_exponent: 1.0 }
    }

    pub fn with_cutoff(mut self, cutoff: usize) -> Self {
        self.cutoff = cutoff;
        self
    }

    pub fn dimension(&self) -> Option<usize> {
        (self.cutoff + 1).checked_pow(self.mode_count as u32)
    }

    pub fn validate(&self) -> Result<()> {
        if self.mode_count == 0 || self.mode_count > MAX_FOCK_MODES {
            return Err(Error::range(format!(
                "Fock oracle supports 1..={MAX_FOCK_MODES} modes, got {}",
                self.mode_count
            )));
        }
        match self.dimension() {
            Some(d) if d <= MAX_FOCK_DIMENSION => {}
            _ => {
                return Err(Error::range(format!(
                    "dimension ({}+1)^{} exceeds {MAX_FOCK_DIMENSION}",
                    self.cutoff, self.mode_count
                )))
            }
        }
        if !(self.time_step > 0.0) || !self.time_step.is_finite() {
            return Err(Error::invalid("time step must be positive"));
        }
        Ok(())
    }
}

/// Value computed at the configured cutoff, plus whether raising the cutoff
/// by [`CONVERGENCE_CUTOFF_STEP`] moved it by less than [`CONVERGENCE_TOL`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValue {
    pub value: f64,
    pub converged: bool,
}

/// Product basis `|n₁ … n_N⟩` with `nᵢ ≤ cutoff`; mode 0 varies fastest.
#[derive(Debug, Clone, Copy)]
struct Basis {
    modes: usize,
    cutoff: usize,
}

impl Basis {
    fn dim(&self) -> usize {
        (self.cutoff + 1).pow(self.modes as u32)
    }

    fn stride(&self, mode: usize) -> usize {
        (self.cutoff + 1).pow(mode as u32)
    }

    fn occupation(&self, index: usize, mode: usize) -> usize {
        (index / self.stride(mode)) % (self.cutoff + 1)
    }
}

/// Sparse real antisymmetric generator, stored by rows.
#[derive(Debug, Clone)]
struct Generator {
    rows: Vec<Vec<(usize, f64)>>,
    norm1: f64,
}

impl Generator {
    fn build(g: &CouplingMatrix, basis: Basis) -> Self {
        let n = basis.modes;
        let dim = basis.dim();
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); dim];
        for col in 0..dim {
            for i in 0..n {
                for j in i..n {
                    let gij = g.get(i, j);
                    if gij == 0.0 {
                        continue;
                    }
                    // (1/2)Σᵢⱼ over ordered pairs = Σ_{i<j} + (1/2)Σᵢᵢ.
                    let w = if i == j { 0.5 * gij } else { gij };
                    let (ni, nj) = (basis.occupation(col, i), basis.occupation(col, j));
                    // Creation pair a_i† a_j†.
                    let (up_ok, up_amp) = if i == j {
                        (ni + 2 <= basis.cutoff, (((ni + 1) * (ni + 2)) as f64).sqrt())
                    } else {
                        (ni < basis.cutoff && nj < basis.cutoff, (((ni + 1) * (nj + 1)) as f64).sqrt())
                    };
                    if up_ok {
                        let row = col + basis.stride(i) + basis.stride(j);
                        rows[row].push((col, w * up_amp));
                    }
                    // Annihilation pair a_i a_j.
                    let (down_ok, down_amp) = if i == j {
                        (ni >= 2, ((ni * ni.saturating_sub(1)) as f64).sqrt())
                    } else {
                        (ni >= 1 && nj >= 1, ((ni * nj) as f64).sqrt())
                    };
                    if down_ok {
                        let row = col - basis.stride(i) - basis.stride(j);
                        rows[row].push((col, -w * down_amp));
                    }
                }
            }
        }
        let mut col_sums = vec![0.0; dim];
        for row in &mut rows {
            row.sort_by_key(|e| e.0);
            for &(c, v) in row.iter() {
                col_sums[c] += v.abs();
            }
        }
        let norm1 = col_sums.into_iter().fold(0.0, f64::max);
        Self { rows, norm1 }
    }

    fn apply(&self, v: &[f64], out: &mut [f64]) {
        for (o, row) in out.iter_mut().zip(&self.rows) {
            *o = row.iter().map(|&(c, k)| k * v[c]).sum();
        }
    }

    /// `K + Kᵀ == 0` entry by entry (the Hamiltonian `iK` is then Hermitian).
    fn is_antisymmetric(&self) -> bool {
        self.rows.iter().enumerate().all(|(r, row)| {
            row.iter().all(|&(c, v)| {
                let mirror = self.rows[c]
                    .binary_search_by_key(&r, |e| e.0)
                    .map(|k| self.rows[c][k].1)
                    .unwrap_or(0.0);
                mirror == -v
            })
        })
    }
}

/// Real state vector in a truncated product basis.
#[derive(Debug, Clone)]
pub struct FockState {
    basis: Basis,
    amplitudes: Vec<f64>,
}

impl FockState {
    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn mode_count(&self) -> usize {
        self.basis.modes
    }

    pub fn photon_number(&self, mode: usize) -> Result<f64> {
        if mode >= self.basis.modes {
            return Err(Error::invalid(format!("mode {mode} out of range")));
        }
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(k, a)| a * a * self.basis.occupation(k, mode) as f64)
            .sum())
    }

    /// `⟨Q²⟩ − ⟨Q⟩²`, evaluated in a basis one photon larger so the ladder
    /// operators inside `Q` are not truncated.
    pub fn variance(&self, q: &JointQuadrature) -> Result<f64> {
        let n = self.basis.modes;
        if q.mode_count() != n {
            return Err(Error::invalid(format!("quadrature has {} modes, state has {n}", q.mode_count())));
        }
        let big = Basis { modes: n, cutoff: self.basis.cutoff + 1 };
        let mut psi = vec![0.0; big.dim()];
        for (k, &a) in self.amplitudes.iter().enumerate() {
            let mut idx = 0;
            for m in 0..n {
                idx += self.basis.occupation(k, m) * big.stride(m);
            }
            psi[idx] = a;
        }
        // Q ψ = φ_re + i φ_im for real ψ.
        let mut re = vec![0.0; big.dim()];
        let mut im = vec![0.0; big.dim()];
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for (k, &a) in psi.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for m in 0..n {
                let (x, p) = (q.x_coeffs()[m], q.p_coeffs()[m]);
                let occ = big.occupation(k, m);
                if occ < big.cutoff {
                    let amp = s * ((occ + 1) as f64).sqrt() * a;
                    let to = k + big.stride(m);
                    re[to] += x * amp;
                    im[to] += p * amp;
                }
                if occ > 0 {
                    let amp = s * (occ as f64).sqrt() * a;
                    let to = k - big.stride(m);
                    re[to] += x * amp;
                    im[to] -= p * amp;
                }
            }
        }
        let second: f64 = re.iter().chain(im.iter()).map(|v| v * v).sum();
        let mean_re: f64 = psi.iter().zip(&re).map(|(a, b)| a * b).sum();
        let mean_im: f64 = psi.iter().zip(&im).map(|(a, b)| a * b).sum();
        Ok(second - mean_re * mean_re - mean_im * mean_im)
    }
}

/// Evolves the vacuum under `g` for time `t` in the configured basis.
pub fn evolve_vacuum(g: &CouplingMatrix, t: f64, cfg: &FockConfig) -> Result<FockState> {
    cfg.validate()?;
    if g.size() != cfg.mode_count {
        return Err(Error::invalid(format!(
            "coupling matrix has {} modes, oracle configured for {}",
            g.size(),
            cfg.mode_count
        )));
    }
    if !t.is_finite() {
        return Err(Error::invalid("time must be finite"));
    }
    let lambda_max = g.entries().symmetric_eigenvalues().amax();
    if (lambda_max * t).abs() > cfg.max_exponent {
        return Err(Error::range(format!(
            "|lambda_max*t| = {} exceeds the oracle limit {}",
            (lambda_max * t).abs(),
            cfg.max_exponent
        )));
    }
    let basis = Basis { modes: cfg.mode_count, cutoff: cfg.cutoff };
    let gen = Generator::build(g, basis);
    if !gen.is_antisymmetric() {
        return Err(Error::Numeric("number-basis Hamiltonian is not Hermitian".into()));
    }

    let mut psi = vec![0.0; basis.dim()];
    psi[0] = 1.0;
    let steps = ((gen.norm1 * t.abs()).ceil() as usize).max((t.abs() / cfg.time_step).ceil() as usize).max(1);
    let dt = t / steps as f64;
    let mut term = vec![0.0; psi.len()];
    let mut next = vec![0.0; psi.len()];
    for _ in 0..steps {
        term.copy_from_slice(&psi);
        let mut acc = psi.clone();
        for k in 1..=80 {
            gen.apply(&term, &mut next);
            let scale = dt / k as f64;
            let mut size = 0.0f64;
            for (tv, nv) in term.iter_mut().zip(&next) {
                *tv = nv * scale;
                size = size.max(tv.abs());
            }
            for (a, tv) in acc.iter_mut().zip(&term) {
                *a += tv;
            }
            if size < 1e-18 {
                break;
            }
        }
        psi = acc;
    }
    Ok(FockState { basis, amplitudes: psi })
}

fn with_convergence(cfg: &FockConfig, eval: impl Fn(&FockConfig) -> Result<f64>) -> Result<OracleValue> {
    let value = eval(cfg)?;
    let finer = cfg.with_cutoff(cfg.cutoff + CONVERGENCE_CUTOFF_STEP);
    let converged = match finer.validate() {
        Ok(()) => (eval(&finer)? - value).abs() < CONVERGENCE_TOL,
        Err(_) => false,
    };
    Ok(OracleValue { value, converged })
}

/// Variance of `q` in the vacuum evolved under `g` for time `t`.
pub fn exact_variance(g: &CouplingMatrix, q: &JointQuadrature, t: f64, cfg: &FockConfig) -> Result<OracleValue> {
    with_convergence(cfg, |c| evolve_vacuum(g, t, c)?.variance(q))
}

/// Mean photon number of `mode` in the vacuum evolved under `g`.
pub fn exact_photon_number(g: &CouplingMatrix, mode: usize, t: f64, cfg: &FockConfig) -> Result<OracleValue> {
    with_convergence(cfg, |c| evolve_vacuum(g, t, c)?.photon_number(mode))
}
