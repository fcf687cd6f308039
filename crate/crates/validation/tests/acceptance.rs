//! Acceptance gate: one line per criterion, PASS or FAIL. Runs without the
//! libtest harness so every line is printed; exits non-zero if any fails.

use std::f64::consts::PI;
use std::panic;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use concur_core::catalog::{build_h4_experimental, connected_components, realizability_check, singly_pumped_graph, ModeLabel, Polarization};
use concur_core::gaussian::{
    apply_network, chain_coupling, complete_graph_coupling, eigenmodes, evolve, joint_variance, make_nsplitter, witness_pair,
    CouplingMatrix, GaussianState, JointQuadrature, DEFAULT_WITNESS_THRESHOLD, DEFAULT_ZERO_TOL,
};
use concur_core::qpm::{
    delta_k, find_concurrences, peak_ratio, qpm_period, shg_curve, AxisCoefficients, ConcurrenceOptions, QpmInteraction, SellmeierSet,
    TensorLabel,
};
use concur_core::verify;

static FAILURES: AtomicUsize = AtomicUsize::new(0);

fn report(id: u32, name: &str, pass: bool, detail: String) {
    println!("AC{id:<2} {} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    if !pass {
        FAILURES.fetch_add(1, Ordering::SeqCst);
    }
}

/// Fastest of `reps` runs, to keep scheduler noise out of timing checks.
fn best_of<T>(reps: usize, mut f: impl FnMut() -> T) -> (T, Duration) {
    let mut best = Duration::MAX;
    let mut out = None;
    for _ in 0..reps {
        let start = Instant::now();
        let v = f();
        best = best.min(start.elapsed());
        out = Some(v);
    }
    (out.unwrap(), best)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn sorted_eigenvalues(g: &CouplingMatrix) -> Vec<f64> {
    eigenmodes(g, DEFAULT_ZERO_TOL).unwrap().eigenvalues.iter().copied().collect()
}

fn ac01_h3_eigenstructure() {
    let kappa = 0.7;
    let (eig, time) = best_of(5, || sorted_eigenvalues(&complete_graph_coupling(3, kappa).unwrap()));
    let expect = [2.0 * kappa, -kappa, -kappa];
    let err = eig.iter().zip(expect).map(|(a, b)| rel(*a, b)).fold(0.0, f64::max);
    let pass = err <= 1e-12 && time < Duration::from_millis(1);
    report(1, "H3 eigenvalues (2k,-k,-k)", pass, format!("max rel err {err:.2e}, {time:?}"));
}

fn ac02_squeezing_laws() {
    let kappa = 1.3;
    let run = || {
        let mut worst: f64 = 0.0;
        for n in 2..=5 {
            let g = complete_graph_coupling(n, kappa).unwrap();
            for kt in [0.1, 0.5, 1.0] {
                let s = evolve(&GaussianState::vacuum(n), &g, kt / kappa).unwrap();
                let psum = joint_variance(&s, &JointQuadrature::p_sum(n).unwrap()).unwrap();
                worst = worst.max(rel(psum, n as f64 / 2.0 * (-2.0 * (n as f64 - 1.0) * kt).exp()));
                for i in 0..n {
                    for j in i + 1..n {
                        let v = joint_variance(&s, &JointQuadrature::x_difference(n, i, j).unwrap()).unwrap();
                        worst = worst.max(rel(v, (-2.0 * kt).exp()));
                    }
                }
            }
        }
        worst
    };
    let (worst, time) = best_of(3, run);
    let pass = worst <= 1e-9 && time < Duration::from_millis(10);
    report(2, "H_N squeezing laws, N=2..5", pass, format!("max rel err {worst:.2e}, {time:?}"));
}

fn ac03_chain_constant_of_motion() {
    let g = chain_coupling(3, 1.0).unwrap();
    let modes = eigenmodes(&g, DEFAULT_ZERO_TOL).unwrap();
    let zero: Vec<_> = modes.modes().filter(|m| m.eigenvalue.abs() < 1e-12).collect();
    let v = &zero[0].vector;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let vec_err = (v[0] - s).abs().max(v[1].abs()).max((v[2] + s).abs());
    let c = [s, 0.0, -s];
    let xq = JointQuadrature::x_only(&c).unwrap();
    let pq = JointQuadrature::p_only(&c).unwrap();
    let mut var_err: f64 = 0.0;
    // Beyond κt ≈ 3 the anti-squeezed entries (~e^{2√2κt}) push roundoff past 1e-12.
    for t in [0.0, 0.1, 0.5, 1.0, 2.0, 3.0] {
        let st = evolve(&GaussianState::vacuum(3), &g, t).unwrap();
        var_err = var_err.max((joint_variance(&st, &xq).unwrap() - 0.5).abs());
        var_err = var_err.max((joint_variance(&st, &pq).unwrap() - 0.5).abs());
    }
    let pass = zero.len() == 1 && vec_err < 1e-12 && var_err <= 1e-12;
    report(3, "H2 chain zero mode (1,0,-1)", pass, format!("zero modes {}, vector err {vec_err:.2e}, variance err {var_err:.2e}", zero.len()));
}

fn ac04_tritter_equivalence() {
    let kappa = 0.9;
    let h3 = apply_network(&CouplingMatrix::from_diagonal(&[-kappa, kappa, kappa]).unwrap(), &make_nsplitter(3).unwrap()).unwrap();
    let mut err3: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let expect = if i == j { kappa / 3.0 } else { -2.0 * kappa / 3.0 };
            err3 = err3.max((h3.get(i, j) - expect).abs());
        }
    }
    let mut err_n: f64 = 0.0;
    for n in 3..=6 {
        let mut diag = vec![kappa; n];
        diag[0] = -kappa;
        let h = apply_network(&CouplingMatrix::from_diagonal(&diag).unwrap(), &make_nsplitter(n).unwrap()).unwrap();
        for i in 0..n {
            err_n = err_n.max((h.get(i, i) - (n as f64 - 2.0) * kappa / n as f64).abs());
        }
        let eig = sorted_eigenvalues(&h);
        for (k, e) in eig.iter().enumerate() {
            let expect = if k + 1 == n { -kappa } else { kappa };
            err_n = err_n.max((e - expect).abs());
        }
    }
    let pass = err3 <= 1e-12 && err_n <= 1e-10;
    report(4, "tritter and N-splitter transforms", pass, format!("N=3 err {err3:.2e}, N=3..6 err {err_n:.2e}"));
}

fn ac05_oracle_equivalence() {
    let start = Instant::now();
    let rep = verify::run_default(false).unwrap();
    let time = start.elapsed();
    let worst = rep.worst().unwrap();
    let all_converged = rep.checks.iter().all(|c| c.converged);
    let pass = rep.passed() && all_converged && time < Duration::from_secs(60);
    report(
        5,
        "Gaussian vs Fock agreement",
        pass,
        format!(
            "{} checks, worst {} {} at kt={} err {:.2e}, converged {all_converged}, {time:.1?}",
            rep.checks.len(),
            worst.case,
            worst.quadrature,
            worst.kappa_t,
            worst.abs_error()
        ),
    );
}

/// Pump indices where a degenerate entry and a nondegenerate entry of
/// opposite sign share a pump frequency.
fn predicted_conflicts(g: &CouplingMatrix, freqs: &[i32]) -> Vec<i32> {
    let n = freqs.len();
    let mut out = Vec::new();
    for m in 0..n {
        let p = 2 * freqs[m];
        let clash = (0..n).any(|i| (i + 1..n).any(|j| freqs[i] + freqs[j] == p && g.get(i, j) * g.get(m, m) < 0.0));
        if clash && !out.contains(&p) {
            out.push(p);
        }
    }
    out.sort();
    out
}

fn ac06_realizability() {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in [3usize, 4] {
        let modes: Vec<_> = (0..n as i32).map(ModeLabel::z).collect();
        let v = realizability_check(&complete_graph_coupling(n, 1.0).unwrap(), &modes).unwrap();
        ok &= v.is_realizable();
        notes.push(format!("H{n} realizable {}", v.is_realizable()));
    }
    let h3pp = apply_network(&CouplingMatrix::from_diagonal(&[-1.0, 1.0, 1.0]).unwrap(), &make_nsplitter(3).unwrap()).unwrap();
    let freqs = [0, 1, 2];
    let modes: Vec<_> = freqs.iter().map(|&k| ModeLabel::y(k)).collect();
    let v = realizability_check(&h3pp, &modes).unwrap();
    let got: Vec<i32> = v.conflicts.iter().map(|g| g.pump_index).collect();
    let predicted = predicted_conflicts(&h3pp, &freqs);
    ok &= got == predicted && got == vec![2];
    notes.push(format!("H''3 conflicts at pumps {got:?} (predicted {predicted:?})"));

    // 200 random comb windows of 9 modes with a single pump each.
    let mut seed = 0x9e3779b97f4a7c15u64;
    let mut next = |m: i64| {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        (seed % m as u64) as i64
    };
    let mut largest = 0;
    for _ in 0..200 {
        let lo = next(41) as i32 - 20;
        let pump = 2 * lo + next(17) as i32;
        let pol = if next(2) == 0 { Polarization::Y } else { Polarization::Z };
        let g = singly_pumped_graph(lo, lo + 8, pump, pol, 1.0).unwrap();
        largest = largest.max(connected_components(&g).iter().map(Vec::len).max().unwrap_or(0));
    }
    ok &= largest <= 2;
    notes.push(format!("largest singly-pumped component {largest}"));
    report(6, "shared-pump realizability", ok, notes.join("; "));
}

fn ac07_h4_construction() {
    let kappa = 0.4;
    let b = build_h4_experimental(kappa).unwrap();
    let edges = b.graph.edges().len();
    let loops = b.graph.self_loops().count();
    let pumps = b.graph.pumps().len();
    let uniform = b.graph.edges().iter().all(|e| rel(e.strength, kappa) < 1e-12);
    let eig = sorted_eigenvalues(&b.coupling);
    let expect = [3.0 * kappa, -kappa, -kappa, -kappa];
    let err = eig.iter().zip(expect).map(|(a, b)| rel(*a, b)).fold(0.0, f64::max);
    let pass = edges == 6 && loops == 0 && pumps == 5 && uniform && b.graph.is_complete() && err <= 1e-12;
    report(7, "H4 experimental build", pass, format!("{edges} edges, {loops} loops, {pumps} pumps, uniform {uniform}, eig err {err:.2e}"));
}

fn ac08_qpm_periods() {
    let s = SellmeierSet::shipped_rta().unwrap();
    let run = || {
        let z1 = qpm_period(&s, &QpmInteraction::from_dataset(&s, TensorLabel::Zzz, 1.064, 1).unwrap(), 25.0).unwrap();
        let z5 = qpm_period(&s, &QpmInteraction::from_dataset(&s, TensorLabel::Zzz, 1.064, 5).unwrap(), 25.0).unwrap();
        let y1 = qpm_period(&s, &QpmInteraction::from_dataset(&s, TensorLabel::Yzy, 1.064, 1).unwrap(), 25.0).unwrap();
        (z1, z5, y1)
    };
    let ((z1, z5, y1), time) = best_of(5, run);
    let pass = rel(z1, 8.37) <= 0.05 && rel(y1, 43.0) <= 0.05 && rel(z5, 5.0 * z1) <= 1e-15 && time < Duration::from_millis(10);
    report(8, "QPM periods at 25 C", pass, format!("zzz {z1:.4} um, yzy {y1:.4} um, zzz m=5 / m=1 = {:.15}, {time:?}", z5 / z1));
}

fn ac09_peak_ratio() {
    let d24 = 4.1;
    let yzy = QpmInteraction::new(TensorLabel::Yzy, 1.064, 1, d24).unwrap();
    let zzz5 = QpmInteraction::new(TensorLabel::Zzz, 1.064, 5, 3.7268 * d24).unwrap();
    let r = peak_ratio(&yzy, &zzz5).unwrap();
    let formula = (5.0 * d24 / (3.7268 * d24)).powi(2);
    let pass = rel(r, formula) <= 1e-15 && (r - 1.8).abs() <= 1e-3;
    report(9, "peak ratio (5 d24/d33)^2", pass, format!("{r:.6}"));
}

/// Sets the y-axis constant term so that yzy (m=1) and zzz (m=5) share a
/// period at `t_star`; returns that period.
fn plant_concurrence(s: &mut SellmeierSet, t_star: f64) -> f64 {
    let zzz5 = QpmInteraction::new(TensorLabel::Zzz, 1.064, 5, 1.0).unwrap();
    let yzy = QpmInteraction::new(TensorLabel::Yzy, 1.064, 1, 1.0).unwrap();
    let target = qpm_period(s, &zzz5, t_star).unwrap();
    let mismatch = |s: &mut SellmeierSet, a: f64| {
        s.y = AxisCoefficients { sellmeier: [a, s.y.sellmeier[1], s.y.sellmeier[2], s.y.sellmeier[3]], thermo_optic: s.y.thermo_optic.clone() };
        delta_k(s, &yzy, target, t_star).unwrap()
    };
    let (mut lo, mut hi) = (s.y.sellmeier[0] - 0.05, s.y.sellmeier[0] + 0.05);
    let f_lo = mismatch(s, lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (mismatch(s, mid) > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    mismatch(s, 0.5 * (lo + hi));
    target
}

fn ac10_tuning_curves_and_concurrence() {
    let s = SellmeierSet::shipped_rta().unwrap();
    let q = QpmInteraction::from_dataset(&s, TensorLabel::Zzz, 1.064, 1).unwrap();
    let t_pm = 47.0;
    let period = qpm_period(&s, &q, t_pm).unwrap();
    let step = 0.01;
    let steps = 4001;
    let curve = shg_curve(&s, &q, period, 10.0, (27.0, 67.0), steps).unwrap();
    let main = *curve.main_peak().unwrap();
    let peak_ok = (main.temperature - t_pm).abs() <= step && rel(main.value, curve.peak_power) < 1e-9;

    // First zeros: the grid minima either side of the main peak sit where
    // |Δk·L/2| = π, to within one grid step.
    let norm = curve.normalized_power();
    let centre = curve.temperatures.iter().position(|&t| t >= main.temperature).unwrap();
    let right = (centre..steps - 1).find(|&k| norm[k] <= norm[k + 1]).unwrap();
    let left = (1..=centre).rev().find(|&k| norm[k] <= norm[k - 1]).unwrap();
    let x_at = |t: f64| delta_k(&s, &q, period, t).unwrap() * 10.0 * 500.0;
    let slope = (x_at(t_pm + 0.5 * step) - x_at(t_pm - 0.5 * step)).abs() / step;
    let zero_err = [left, right].iter().map(|&k| (x_at(curve.temperatures[k]).abs() - PI).abs()).fold(0.0, f64::max);
    let zeros_ok = zero_err <= slope * step;

    let w1 = curve.main_lobe_fwhm().unwrap();
    let w2 = shg_curve(&s, &q, period, 20.0, (27.0, 67.0), steps).unwrap().main_lobe_fwhm().unwrap();
    let fwhm_ok = rel(w1 / w2, 2.0) <= 0.05;

    let mut synth = s.clone();
    let t_star = 62.0;
    let p_star = plant_concurrence(&mut synth, t_star);
    let yzy = QpmInteraction::new(TensorLabel::Yzy, 1.064, 1, 1.0).unwrap();
    let zzz5 = QpmInteraction::new(TensorLabel::Zzz, 1.064, 5, 3.7268).unwrap();
    let opts = ConcurrenceOptions::default();
    let range = (p_star - 0.37, p_star + 0.41);
    let cell = (range.1 - range.0) / opts.period_steps as f64;
    let found = find_concurrences(&synth, &yzy, &zzz5, range, (20.0, 100.0), 0, &opts).unwrap();
    let hit = found.iter().find(|c| c.is_main_main());
    let planted_ok = hit.is_some_and(|c| (c.period - p_star).abs() <= cell && (c.temperature - t_star).abs() <= 0.5);

    let pass = peak_ok && zeros_ok && fwhm_ok && planted_ok;
    report(
        10,
        "tuning curves and planted concurrence",
        pass,
        format!(
            "main peak {:.4} C (target {t_pm}), zero err {zero_err:.3} rad, FWHM ratio {:.4}, planted ({p_star:.5} um, {t_star} C) found {:?}",
            main.temperature,
            w1 / w2,
            hit.map(|c| (c.period, c.temperature))
        ),
    );
}

fn ac11_witness_monotonicity() {
    let g = complete_graph_coupling(3, 1.0).unwrap();
    let value = |kt: f64| {
        let s = evolve(&GaussianState::vacuum(3), &g, kt).unwrap();
        witness_pair(&s, 0, 1, &[1.0]).unwrap().value
    };
    let grid: Vec<f64> = (0..=400).map(|k| k as f64 * 0.005).collect();
    let values: Vec<f64> = grid.iter().map(|&t| value(t)).collect();
    let decreasing = values.windows(2).all(|w| w[1] < w[0]);
    // Bisect for the threshold crossing of the simulated witness.
    let (mut lo, mut hi) = (0.0, 2.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if value(mid) > DEFAULT_WITNESS_THRESHOLD {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let crossing = 0.5 * (lo + hi);
    let closed_form = |kt: f64| (-2.0 * kt).exp() + 1.5 * (-4.0 * kt).exp();
    let law_err = grid.iter().zip(&values).map(|(&t, &v)| rel(v, closed_form(t))).fold(0.0, f64::max);
    let crossing_ok = (crossing - 0.46).abs() <= 0.02;
    let pass = decreasing && law_err <= 1e-9 && crossing_ok;
    report(
        11,
        "H3 witness monotone, crossing at kt=0.46+-0.02",
        pass,
        format!("strictly decreasing {decreasing}, law err {law_err:.2e}, crossing at kt={crossing:.4}"),
    );
}

fn main() -> ExitCode {
    let criteria: [(u32, fn()); 11] = [
        (1, ac01_h3_eigenstructure),
        (2, ac02_squeezing_laws),
        (3, ac03_chain_constant_of_motion),
        (4, ac04_tritter_equivalence),
        (5, ac05_oracle_equivalence),
        (6, ac06_realizability),
        (7, ac07_h4_construction),
        (8, ac08_qpm_periods),
        (9, ac09_peak_ratio),
        (10, ac10_tuning_curves_and_concurrence),
        (11, ac11_witness_monotonicity),
    ];
    for (id, run) in criteria {
        if panic::catch_unwind(run).is_err() {
            report(id, "criterion", false, "panicked".into());
        }
    }
    let failed = FAILURES.load(Ordering::SeqCst);
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
