use std::fmt::Write as _;

use concur_core::catalog::realizability_check;
use concur_core::format::fmt12;
use concur_core::gaussian::{eigenmodes, evolve, joint_variance, GaussianState, JointQuadrature, Witness, DEFAULT_ZERO_TOL};
use concur_core::{Error, ModeClass, Result};

use crate::config::{Built, ScenarioConfig};
use crate::plot;
use crate::Outcome;

struct Column {
    name: String,
    kind: ColumnKind,
}

enum ColumnKind {
    Variance(JointQuadrature),
    Witness { i: usize, j: usize, gains: Vec<f64> },
}

fn header(cfg: &ScenarioConfig, built: &Built) -> String {
    let mut h = String::new();
    let _ = writeln!(h, "# scenario: {}", cfg.scenario.kind.as_str());
    let _ = writeln!(h, "# modes: {}", built.coupling.size());
    let _ = writeln!(h, "# kappa: {}", fmt12(cfg.scenario.kappa));
    let _ = writeln!(h, "# conventions: hbar = 1, vacuum quadrature variance 1/2, t = kappa_t / kappa");
    if built.contaminants > 0 {
        let _ = writeln!(h, "# warning: {} contaminating terms beyond the intended graph", built.contaminants);
    }
    h
}

fn columns(cfg: &ScenarioConfig, built: &Built) -> Result<(Vec<Column>, Vec<String>)> {
    let n = built.coupling.size();
    let mut cols = Vec::new();
    let mut notes = Vec::new();
    cols.push(Column { name: "var_Psum".into(), kind: ColumnKind::Variance(JointQuadrature::p_sum(n)?) });
    for i in 0..n {
        for j in i + 1..n {
            cols.push(Column {
                name: format!("var_Xdiff_{}_{}", i + 1, j + 1),
                kind: ColumnKind::Variance(JointQuadrature::x_difference(n, i, j)?),
            });
        }
    }
    let report = eigenmodes(&built.coupling, DEFAULT_ZERO_TOL)?;
    for (k, m) in report.modes().enumerate() {
        notes.push(format!("# E{}: {} eigenmode, eigenvalue {}", k + 1, m.class.as_str(), fmt12(m.eigenvalue)));
        cols.push(Column { name: format!("var_E{}", k + 1), kind: ColumnKind::Variance(m.squeezed_quadrature()) });
    }
    for q in &cfg.quadrature {
        let zeros = vec![0.0; n];
        let x = q.x.as_deref().unwrap_or(&zeros);
        let p = q.p.as_deref().unwrap_or(&zeros);
        if x.len() != n || p.len() != n {
            return Err(Error::InvalidArgument(format!("quadrature {} needs {n} coefficients", q.name)));
        }
        cols.push(Column { name: format!("var_{}", q.name), kind: ColumnKind::Variance(JointQuadrature::from_slices(x, p)?) });
    }
    let w = &cfg.witness;
    if w.enabled && n >= 2 {
        let pairs: Vec<[usize; 2]> = match &w.pairs {
            Some(p) => p.clone(),
            None => (1..=n).flat_map(|i| (i + 1..=n).map(move |j| [i, j])).collect(),
        };
        let gains = w.gains.clone().unwrap_or_else(|| vec![1.0; n - 2]);
        for [i, j] in pairs {
            if i == 0 || j == 0 || i > n || j > n || i == j {
                return Err(Error::InvalidArgument(format!("witness pair ({i}, {j}) is not two distinct modes in 1..={n}")));
            }
            cols.push(Column { name: format!("witness_{i}_{j}"), kind: ColumnKind::Witness { i: i - 1, j: j - 1, gains: gains.clone() } });
        }
        notes.push(format!(
            "# witness_i_j: Var(Xi - Xj) + Var(Pi + Pj + sum_k g_k Pk), gains {:?}, separable bound {}",
            gains,
            fmt12(w.threshold)
        ));
    }
    Ok((cols, notes))
}

pub fn run_evolve(cfg: &ScenarioConfig) -> Result<Outcome> {
    let built = cfg.build()?;
    let n = built.coupling.size();
    let (cols, notes) = columns(cfg, &built)?;
    let witness = Witness { threshold: cfg.witness.threshold };
    let kappa = cfg.scenario.kappa;

    let mut out = header(cfg, &built);
    for note in &notes {
        out.push_str(note);
        out.push('\n');
    }
    let names: Vec<&str> = cols.iter().map(|c| c.name.as_str()).collect();
    let _ = writeln!(out, "kappa_t,{}", names.join(","));
    let grid = cfg.kappa_t_grid();
    let mut table = Vec::with_capacity(grid.len());
    for &kt in &grid {
        let state = evolve(&GaussianState::vacuum(n), &built.coupling, kt / kappa)?;
        let mut row = Vec::with_capacity(cols.len());
        for c in &cols {
            row.push(match &c.kind {
                ColumnKind::Variance(q) => joint_variance(&state, q)?,
                ColumnKind::Witness { i, j, gains } => witness.evaluate(&state, *i, *j, gains)?.value,
            });
        }
        let cells: Vec<String> = std::iter::once(kt).chain(row.iter().copied()).map(fmt12).collect();
        let _ = writeln!(out, "{}", cells.join(","));
        table.push(row);
    }
    let script = plot::evolve_script(cfg.scenario.kind.as_str(), &grid, &names, &table, cfg.witness.threshold);
    Ok(Outcome { text: out, code: 0, plot: Some(script) })
}

pub fn run_eigenmodes(cfg: &ScenarioConfig) -> Result<Outcome> {
    let built = cfg.build()?;
    let n = built.coupling.size();
    let report = eigenmodes(&built.coupling, DEFAULT_ZERO_TOL)?;
    let mut out = header(cfg, &built);
    let vs: Vec<String> = (1..=n).map(|k| format!("v{k}")).collect();
    let _ = writeln!(out, "mode,eigenvalue,class,squeezed_quadrature,{}", vs.join(","));
    for (k, m) in report.modes().enumerate() {
        let which = match m.class {
            ModeClass::XSqueezed => "X",
            ModeClass::PSqueezed => "P",
            ModeClass::Constant => "-",
        };
        let v: Vec<String> = m.vector.iter().map(|x| fmt12(*x)).collect();
        let _ = writeln!(out, "{},{},{},{},{}", k + 1, fmt12(m.eigenvalue), m.class.as_str(), which, v.join(","));
    }
    Ok(Outcome { text: out, code: 0, plot: None })
}

pub fn run_check(cfg: &ScenarioConfig) -> Result<Outcome> {
    let built = cfg.build()?;
    let n = built.coupling.size();
    let verdict = realizability_check(&built.coupling, &built.modes)?;
    let mut out = String::new();
    let _ = writeln!(out, "scenario: {} ({n} modes)", cfg.scenario.kind.as_str());
    if let Some(g) = &built.graph {
        let labels: Vec<String> = built.modes.iter().map(|m| m.to_string()).collect();
        let _ = writeln!(out, "modes: {}", labels.join(" "));
        let _ = writeln!(out, "terms (pump | mode | mode | sign | strength):");
        for line in g.to_edge_list().lines() {
            let _ = writeln!(out, "  {line}");
        }
        if built.contaminants > 0 {
            let _ = writeln!(out, "contaminating terms: {}", built.contaminants);
        }
    } else {
        let freqs: Vec<String> = built.modes.iter().map(|m| m.freq_index.to_string()).collect();
        let _ = writeln!(out, "mode frequency indices: {}", freqs.join(" "));
    }
    let _ = writeln!(out, "pump groups (pump index: entries i,j=G_ij, 1-based):");
    for g in &verdict.groups {
        let entries: Vec<String> = g.entries.iter().map(|(i, j, v)| format!("{},{}={}", i + 1, j + 1, fmt12(*v))).collect();
        let flag = if g.has_mixed_signs() { "  CONFLICT" } else { "" };
        let _ = writeln!(out, "  {}: {}{flag}", g.pump_index, entries.join(" "));
    }
    if verdict.is_realizable() {
        let _ = writeln!(out, "verdict: realizable");
    } else {
        let _ = writeln!(
            out,
            "verdict: not realizable ({} conflicting pump group{})",
            verdict.conflicts.len(),
            if verdict.conflicts.len() == 1 { "" } else { "s" }
        );
    }
    Ok(Outcome { text: out, code: if verdict.is_realizable() { 0 } else { 1 }, plot: None })
}
