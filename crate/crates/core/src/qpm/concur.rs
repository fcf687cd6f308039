use std::f64::consts::PI;

use super::curve::{curve_power, half_phase};
use super::interaction::{bare_mismatch, bisect, QpmInteraction};
use super::sellmeier::SellmeierSet;
use crate::error::{Error, Result};

/// `x > 0` with `tan x = x` in `(jπ, jπ + π/2)`: the position of the
/// `j`-th side-lobe maximum of `sinc²`. Returns 0 for `j = 0`.
pub fn sidelobe_argument(j: u32) -> f64 {
    if j == 0 {
        return 0.0;
    }
    let base = j as f64 * PI;
    let mut x = base + 0.5 * PI;
    for _ in 0..100 {
        let next = base + x.atan();
        if (next - x).abs() < 1e-15 {
            return next;
        }
        x = next;
    }
    x
}

fn lobe_target(lobe: i32) -> f64 {
    lobe.signum() as f64 * sidelobe_argument(lobe.unsigned_abs())
}

/// Temperatures in `t_range` where `Δk·L/2` sits on the maximum of `lobe`
/// (0 = main, ±j = j-th side lobe on the positive/negative-`Δk` side).
pub fn lobe_temperature(
    s: &SellmeierSet,
    q: &QpmInteraction,
    period: f64,
    length_mm: f64,
    lobe: i32,
    t_range: (f64, f64),
) -> Result<Vec<f64>> {
    let tracker = LobeTracker::new(s, q, length_mm, t_range, 256)?;
    tracker.roots(period, lobe)
}

/// Caches the grating-free mismatch on a temperature grid so lobe
/// positions can be found for many periods cheaply.
struct LobeTracker<'a> {
    s: &'a SellmeierSet,
    q: &'a QpmInteraction,
    length_mm: f64,
    temps: Vec<f64>,
    bare: Vec<f64>,
}

impl<'a> LobeTracker<'a> {
    fn new(s: &'a SellmeierSet, q: &'a QpmInteraction, length_mm: f64, t_range: (f64, f64), samples: usize) -> Result<Self> {
        let (t0, t1) = t_range;
        if !(t1 > t0) {
            return Err(Error::invalid(format!("empty temperature range [{t0}, {t1}]")));
        }
        if !(length_mm > 0.0) || !length_mm.is_finite() {
            return Err(Error::invalid(format!("crystal length must be positive, got {length_mm}")));
        }
        s.check_temperature(t0)?;
        s.check_temperature(t1)?;
        let temps: Vec<f64> = (0..=samples).map(|k| t0 + (t1 - t0) * k as f64 / samples as f64).collect();
        let bare = temps.iter().map(|&t| bare_mismatch(s, q, t)).collect::<Result<_>>()?;
        Ok(Self { s, q, length_mm, temps, bare })
    }

    fn roots(&self, period: f64, lobe: i32) -> Result<Vec<f64>> {
        // Δk·L/2 = target  ⇔  bare(T) = 2πm/Λ + 2·target/L
        let level = self.q.grating_k(period) + lobe_target(lobe) / (self.length_mm * 500.0);
        let f = |t: f64| bare_mismatch(self.s, self.q, t).map(|b| b - level);
        let mut out = Vec::new();
        for k in 0..self.temps.len() - 1 {
            let (a, b) = (self.bare[k] - level, self.bare[k + 1] - level);
            if a == 0.0 {
                out.push(self.temps[k]);
            } else if a.signum() != b.signum() && b != 0.0 {
                if let Some(t) = bisect(&f, self.temps[k], self.temps[k + 1])? {
                    out.push(t);
                }
            }
        }
        if self.bare.last().copied().map(|b| b - level) == Some(0.0) {
            out.push(*self.temps.last().unwrap());
        }
        Ok(out)
    }
}

/// Search parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceOptions {
    pub length_mm: f64,
    /// Number of grid intervals across the period range.
    pub period_steps: usize,
    /// Largest lobe-to-lobe temperature gap still reported.
    pub tolerance_c: f64,
}

impl Default for ConcurrenceOptions {
    fn default() -> Self {
        Self { length_mm: 10.0, period_steps: 1000, tolerance_c: 0.5 }
    }
}

/// A poling period and temperature at which a lobe maximum of each
/// interaction coincide.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Concurrence {
    pub period: f64,
    /// Midpoint of the two lobe temperatures.
    pub temperature: f64,
    /// Lobe indices for (q1, q2).
    pub lobes: (i32, i32),
    /// Product of the two curve powers at `temperature`.
    pub combined_efficiency: f64,
    /// `T(q1 lobe) − T(q2 lobe)`; zero after refinement unless the
    /// lobes only approach within tolerance.
    pub temperature_gap: f64,
}

impl Concurrence {
    pub fn is_main_main(&self) -> bool {
        self.lobes == (0, 0)
    }
}

/// Grid-plus-bisection search over `period_range` for periods at which a
/// lobe maximum of `q1` and one of `q2` (lobes up to `lobe_depth` on each
/// side) fall at the same temperature inside `t_range`.
///
/// Sign changes of the lobe-temperature gap between grid periods are
/// refined by bisection; grid points where the gap has a local minimum
/// below `tolerance_c` without crossing zero are reported as near misses.
/// Results are sorted by combined efficiency, descending.
pub fn find_concurrences(
    s: &SellmeierSet,
    q1: &QpmInteraction,
    q2: &QpmInteraction,
    period_range: (f64, f64),
    t_range: (f64, f64),
    lobe_depth: u32,
    opts: &ConcurrenceOptions,
) -> Result<Vec<Concurrence>> {
    let (p0, p1) = period_range;
    if !(p0 > 0.0 && p1 > p0 && p1.is_finite()) {
        return Err(Error::invalid(format!("empty or invalid period range [{p0}, {p1}]")));
    }
    if opts.period_steps == 0 {
        return Err(Error::invalid("period_steps must be positive"));
    }
    if !(opts.tolerance_c >= 0.0) {
        return Err(Error::invalid("temperature tolerance must be non-negative"));
    }
    let l1 = LobeTracker::new(s, q1, opts.length_mm, t_range, 512)?;
    let l2 = LobeTracker::new(s, q2, opts.length_mm, t_range, 512)?;
    let depth = lobe_depth as i32;
    let periods: Vec<f64> = (0..=opts.period_steps)
        .map(|k| p0 + (p1 - p0) * k as f64 / opts.period_steps as f64)
        .collect();

    // First lobe temperature per lobe and grid period, for each interaction.
    let first_roots = |tracker: &LobeTracker, lobe: i32| -> Result<Vec<Option<f64>>> {
        periods.iter().map(|&p| Ok(tracker.roots(p, lobe)?.first().copied())).collect()
    };
    let roots1 = (-depth..=depth).map(|a| first_roots(&l1, a)).collect::<Result<Vec<_>>>()?;
    let roots2 = (-depth..=depth).map(|b| first_roots(&l2, b)).collect::<Result<Vec<_>>>()?;
    let gap_at = |period: f64, a: i32, b: i32| -> Result<Option<(f64, f64)>> {
        let ta = l1.roots(period, a)?;
        let tb = l2.roots(period, b)?;
        Ok(match (ta.first(), tb.first()) {
            (Some(&x), Some(&y)) => Some((x, y)),
            _ => None,
        })
    };

    let mut found = Vec::new();
    for a in -depth..=depth {
        for b in -depth..=depth {
            let (ra, rb) = (&roots1[(a + depth) as usize], &roots2[(b + depth) as usize]);
            let gaps: Vec<Option<(f64, f64)>> = ra.iter().zip(rb).map(|(x, y)| x.zip(*y)).collect();
            for k in 0..periods.len() {
                let Some((ta, tb)) = gaps[k] else { continue };
                let g = ta - tb;
                if g == 0.0 {
                    found.push(make(s, q1, q2, opts, periods[k], (ta, tb), (a, b))?);
                    continue;
                }
                if k + 1 < periods.len() {
                    if let Some((na, nb)) = gaps[k + 1] {
                        let ng = na - nb;
                        if ng != 0.0 && g.signum() != ng.signum() {
                            let (pl, pr) = (periods[k], periods[k + 1]);
                            let f = |p: f64| -> Result<f64> {
                                Ok(gap_at(p, a, b)?.map_or(f64::NAN, |(x, y)| x - y))
                            };
                            if let Some(p) = bisect(&f, pl, pr)? {
                                if let Some(ts) = gap_at(p, a, b)? {
                                    found.push(make(s, q1, q2, opts, p, ts, (a, b))?);
                                }
                            }
                            continue;
                        }
                    }
                }
                // Near miss: local minimum of |gap| without a crossing.
                let prev = k.checked_sub(1).and_then(|i| gaps[i]).map(|(x, y)| (x - y).abs());
                let next = gaps.get(k + 1).copied().flatten().map(|(x, y)| (x - y).abs());
                let crossed_before = k > 0
                    && gaps[k - 1].is_some_and(|(x, y)| {
                        let pg = x - y;
                        pg == 0.0 || pg.signum() != g.signum()
                    });
                if g.abs() <= opts.tolerance_c
                    && !crossed_before
                    && prev.is_none_or(|v| v > g.abs())
                    && next.is_none_or(|v| v >= g.abs())
                {
                    found.push(make(s, q1, q2, opts, periods[k], (ta, tb), (a, b))?);
                }
            }
        }
    }
    found.sort_by(|x, y| {
        y.combined_efficiency
            .total_cmp(&x.combined_efficiency)
            .then(x.period.total_cmp(&y.period))
            .then(x.temperature.total_cmp(&y.temperature))
    });
    Ok(found)
}

fn make(
    s: &SellmeierSet,
    q1: &QpmInteraction,
    q2: &QpmInteraction,
    opts: &ConcurrenceOptions,
    period: f64,
    (ta, tb): (f64, f64),
    lobes: (i32, i32),
) -> Result<Concurrence> {
    let temperature = 0.5 * (ta + tb);
    let p1 = curve_power(q1, opts.length_mm, half_phase(s, q1, period, opts.length_mm, temperature)?);
    let p2 = curve_power(q2, opts.length_mm, half_phase(s, q2, period, opts.length_mm, temperature)?);
    Ok(Concurrence { period, temperature, lobes, combined_efficiency: p1 * p2, temperature_gap: ta - tb })
}
