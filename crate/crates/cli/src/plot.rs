//! Generated matplotlib scripts. Data are embedded so each script runs on
//! its own: `python3 script.py` writes a PNG next to itself.

use std::fmt::Write as _;

use concur_core::format::fmt12;

fn list(values: &[f64]) -> String {
    let items: Vec<String> = values.iter().map(|v| fmt12(*v)).collect();
    format!("[{}]", items.join(", "))
}

fn preamble(title: &str) -> String {
    format!(
        "#!/usr/bin/env python3\n\"\"\"{title}\"\"\"\nimport os\nimport matplotlib\nmatplotlib.use(\"Agg\")\nimport matplotlib.pyplot as plt\n\n"
    )
}

fn save(out: &mut String, stem: &str) {
    let _ = writeln!(out, "fig.tight_layout()");
    let _ = writeln!(out, "target = os.path.splitext(os.path.abspath(__file__))[0] + \"_{stem}.png\"");
    let _ = writeln!(out, "fig.savefig(target, dpi=150)");
    let _ = writeln!(out, "print(target)");
}

pub fn evolve_script(scenario: &str, kappa_t: &[f64], names: &[&str], table: &[Vec<f64>], threshold: f64) -> String {
    let mut out = preamble(&format!("Joint-quadrature variances for scenario {scenario}."));
    let _ = writeln!(out, "kappa_t = {}", list(kappa_t));
    let _ = writeln!(out, "series = {{");
    for (k, name) in names.iter().enumerate() {
        let col: Vec<f64> = table.iter().map(|row| row[k]).collect();
        let _ = writeln!(out, "    \"{name}\": {},", list(&col));
    }
    let _ = writeln!(out, "}}\n");
    let _ = writeln!(out, "fig, ax = plt.subplots(figsize=(7, 4.5))");
    let _ = writeln!(out, "for name, values in series.items():");
    let _ = writeln!(out, "    style = \"--\" if name.startswith(\"witness\") else \"-\"");
    let _ = writeln!(out, "    ax.semilogy(kappa_t, values, style, label=name)");
    let _ = writeln!(out, "ax.axhline({}, color=\"k\", lw=0.8, ls=\":\", label=\"separable bound\")", fmt12(threshold));
    let _ = writeln!(out, "ax.axhline(0.5, color=\"grey\", lw=0.8, ls=\"-.\", label=\"vacuum\")");
    let _ = writeln!(out, "ax.set_xlabel(\"kappa t\")");
    let _ = writeln!(out, "ax.set_ylabel(\"variance\")");
    let _ = writeln!(out, "ax.set_title(\"{scenario}\")");
    let _ = writeln!(out, "ax.legend(fontsize=\"small\", ncol=2)");
    save(&mut out, "variances");
    out
}

pub struct CurveSeries<'a> {
    pub label: String,
    pub temperatures: &'a [f64],
    pub power: &'a [f64],
}

pub fn tuning_script(title: &str, series: &[CurveSeries], markers: &[f64]) -> String {
    let mut out = preamble(title);
    let _ = writeln!(out, "curves = [");
    for s in series {
        let _ = writeln!(out, "    (\"{}\", {}, {}),", s.label, list(s.temperatures), list(s.power));
    }
    let _ = writeln!(out, "]");
    let _ = writeln!(out, "markers = {}\n", list(markers));
    let _ = writeln!(out, "fig, ax = plt.subplots(figsize=(7, 4.5))");
    let _ = writeln!(out, "for label, temps, power in curves:");
    let _ = writeln!(out, "    ax.plot(temps, power, label=label)");
    let _ = writeln!(out, "for t in markers:");
    let _ = writeln!(out, "    ax.axvline(t, color=\"k\", ls=\"--\", lw=0.8)");
    let _ = writeln!(out, "ax.set_xlabel(\"temperature (C)\")");
    let _ = writeln!(out, "ax.set_ylabel(\"SHG power, d_eff^2 L^2 sinc^2 ((pm/V)^2 mm^2)\")");
    let _ = writeln!(out, "ax.set_title({title:?})");
    let _ = writeln!(out, "ax.legend()");
    save(&mut out, "tuning");
    out
}
