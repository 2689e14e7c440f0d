//! Adams `E_2` charts of the Thom module, differential patterns, `E_infty`
//! orders, and text/SVG rendering.

use super::algebra::{default_max_degree, Op, SteenrodAlgebra};
use super::module::thom_module;
use super::resolution::{minimal_resolution, rank_mod_p, Resolution};
use super::SteenrodError;
use serde::Serialize;
use std::fmt::Write as _;

/// Extra module degrees supplied above `t_max`.
pub const GUARD_BAND: u32 = 2;

/// The recorded differential patterns are complete through this stem only;
/// `E_infty` is not reported beyond it.
pub const PATTERN_MAX_STEM: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtClass {
    pub stem: u32,
    pub s: usize,
    /// Index of the dual generator in the minimal resolution.
    pub gen: usize,
}

/// Multiplication by `h_i` (or `a_0`) from one class to another.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductLine {
    pub name: String,
    pub from: usize,
    pub to: usize,
    pub coeff: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Differential {
    pub r: usize,
    /// `(stem, s)`.
    pub source: (u32, usize),
    pub target: (u32, usize),
    pub is_iso: bool,
    /// Drawn dashed: present in one of the recorded outcomes only.
    pub dashed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StemOutcome {
    pub stem: u32,
    /// Surviving dimension at each `s`.
    pub einf: Vec<usize>,
    /// Classes on towers that reach the top of the chart.
    pub free_rank: usize,
    pub torsion_exponent: u32,
    pub torsion_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtChart {
    pub p: u32,
    /// Residue class of `d` the chart is valid for.
    pub context: String,
    pub s_max: usize,
    pub n_max: u32,
    /// `dims[s][stem]`.
    pub dims: Vec<Vec<usize>>,
    pub classes: Vec<ExtClass>,
    pub products: Vec<ProductLine>,
    pub differentials: Vec<Differential>,
    pub einf: Option<Vec<StemOutcome>>,
}

/// The residue tag under which the chart for `(p, d)` is stored.
pub fn residue_context(p: u32, d: i64) -> String {
    match p {
        2 => "d even".into(),
        _ if d % 3 == 0 => "d = 0 mod 3".into(),
        _ => "d != 0 mod 3".into(),
    }
}

/// Operations whose products are read off: `h_0, h_1, h_2` at `p = 2`,
/// `a_0, h_0` at `p = 3`. The first is the tower operation.
fn product_ops(p: u32) -> Vec<(&'static str, Op)> {
    if p == 2 {
        vec![("h0", Op::P(1)), ("h1", Op::P(2)), ("h2", Op::P(4))]
    } else {
        vec![("a0", Op::Beta), ("h0", Op::P(1))]
    }
}

impl ExtChart {
    pub fn from_resolution(res: &Resolution, alg: &SteenrodAlgebra, n_max: u32, context: &str) -> Self {
        let s_max = res.s_max;
        let mut dims = vec![vec![0; n_max as usize + 1]; s_max + 1];
        let mut classes = Vec::new();
        for (s, row) in dims.iter_mut().enumerate() {
            for n in 0..=n_max {
                let t = n + s as u32;
                if t > res.t_max {
                    continue;
                }
                let gens = res.generators(s, t);
                row[n as usize] = gens.len();
                classes.extend(gens.into_iter().map(|gen| ExtClass { stem: n, s, gen }));
            }
        }
        let lookup = |s: usize, gen: usize| classes.iter().position(|c| c.s == s && c.gen == gen);
        let mut products = Vec::new();
        for (name, op) in product_ops(res.p) {
            let deg = super::algebra::op_degree(res.p, op);
            for (i, c) in classes.iter().enumerate() {
                let t = c.stem + c.s as u32 + deg;
                if c.s + 1 > s_max || t > res.t_max {
                    continue;
                }
                for g in res.generators(c.s + 1, t) {
                    let coeff = res.product_coefficient(alg, op, c.s, c.gen, g);
                    if coeff != 0 {
                        if let Some(j) = lookup(c.s + 1, g) {
                            products.push(ProductLine {
                                name: name.to_string(),
                                from: i,
                                to: j,
                                coeff,
                            });
                        }
                    }
                }
            }
        }
        ExtChart {
            p: res.p,
            context: context.to_string(),
            s_max,
            n_max,
            dims,
            classes,
            products,
            differentials: Vec::new(),
            einf: None,
        }
    }

    pub fn dim(&self, stem: u32, s: usize) -> usize {
        self.dims.get(s).and_then(|r| r.get(stem as usize)).copied().unwrap_or(0)
    }

    fn class_indices(&self, stem: u32, s: usize) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&i| self.classes[i].stem == stem && self.classes[i].s == s)
            .collect()
    }

    /// Matrix of the named product from `(stem, s)` to the given target
    /// position; rows are source classes.
    pub fn product_matrix(&self, name: &str, from: (u32, usize), to: (u32, usize)) -> Vec<Vec<u32>> {
        let src = self.class_indices(from.0, from.1);
        let tgt = self.class_indices(to.0, to.1);
        src.iter()
            .map(|&i| {
                tgt.iter()
                    .map(|&j| {
                        self.products
                            .iter()
                            .find(|l| l.name == name && l.from == i && l.to == j)
                            .map_or(0, |l| l.coeff)
                    })
                    .collect()
            })
            .collect()
    }

    fn tower_name(&self) -> &'static str {
        product_ops(self.p)[0].0
    }

    /// Rank of `tower_op^k` from `(stem, s)` to `(stem, s + k)`.
    pub fn tower_rank(&self, stem: u32, s: usize, k: usize) -> usize {
        let name = self.tower_name();
        let n = self.dim(stem, s);
        // start from the identity and multiply up
        let mut m: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
        for step in 0..k {
            let next = self.product_matrix(name, (stem, s + step), (stem, s + step + 1));
            let cols = self.dim(stem, s + step + 1);
            m = m
                .iter()
                .map(|row| {
                    (0..cols)
                        .map(|c| row.iter().zip(&next).map(|(a, r)| a * r[c]).sum::<u32>() % self.p)
                        .collect()
                })
                .collect();
        }
        rank_mod_p(self.p, m)
    }
}

/// Build the chart of the Thom module for `d` at `p` through filtration
/// `s_max` and stem `n_max`.
pub fn ext_chart(p: u32, d: i64, s_max: usize, n_max: u32) -> Result<ExtChart, SteenrodError> {
    ext_chart_with_guard(p, d, s_max, n_max, GUARD_BAND)
}

fn ext_chart_with_guard(p: u32, d: i64, s_max: usize, n_max: u32, guard: u32) -> Result<ExtChart, SteenrodError> {
    let t_max = n_max + s_max as u32;
    let cap = default_max_degree(p);
    if t_max > cap {
        return Err(SteenrodError::RangeExceedsTruncation {
            t_max,
            algebra: cap,
            module: None,
        });
    }
    let alg = SteenrodAlgebra::new(p, t_max)?;
    let module = thom_module(d, p, t_max + guard)?;
    let res = minimal_resolution(&alg, &module, s_max, t_max)?;
    Ok(ExtChart::from_resolution(&res, &alg, n_max, &residue_context(p, d)))
}

/// Recompute with one more module degree and compare the dimension tables.
pub fn guard_band_independent(p: u32, d: i64, s_max: usize, n_max: u32) -> Result<bool, SteenrodError> {
    let a = ext_chart_with_guard(p, d, s_max, n_max, GUARD_BAND)?;
    let b = ext_chart_with_guard(p, d, s_max, n_max, GUARD_BAND + 1)?;
    Ok(a.dims == b.dims)
}

/// The two readings of the 3-primary chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ThreePrimaryOutcome {
    /// The dashed `d_2` out of stem 8 vanishes.
    NoDifferential,
    /// The dashed `d_2` out of stem 8 is nonzero.
    D2Nonzero,
}

/// The differentials in the chart range. At `p = 2` (for `4 | d`):
/// `d_2` from `(6, 1)` to `(5, 3)`, and `d_4` from `(8, 0)` to `(7, 4)`
/// exactly when `d = 4 mod 8`. At `p = 3` (for `3 | d`): the `d_2` from
/// `(8, 0)` to `(7, 2)` per the chosen outcome.
pub fn differential_pattern(
    p: u32,
    d: i64,
    outcome: ThreePrimaryOutcome,
) -> Result<Vec<Differential>, SteenrodError> {
    let diff = |r, source, target, dashed| Differential {
        r,
        source,
        target,
        is_iso: true,
        dashed,
    };
    match p {
        2 if d % 4 == 0 => {
            let mut v = vec![diff(2, (6, 1), (5, 3), false)];
            if d.rem_euclid(8) == 4 {
                v.push(diff(4, (8, 0), (7, 4), true));
            }
            Ok(v)
        }
        3 if d % 3 == 0 => Ok(match outcome {
            ThreePrimaryOutcome::NoDifferential => Vec::new(),
            ThreePrimaryOutcome::D2Nonzero => vec![diff(2, (8, 0), (7, 2), true)],
        }),
        2 | 3 => Err(SteenrodError::UnsupportedResidue { p, d }),
        _ => Err(SteenrodError::UnsupportedPrime(p)),
    }
}

/// Record the differentials and compute `E_infty` per stem.
pub fn apply_differential_pattern(chart: &ExtChart, pattern: &[Differential]) -> Result<ExtChart, SteenrodError> {
    let mut out = chart.clone();
    let mut einf = chart.dims.clone();
    for dr in pattern {
        let (sn, ss) = dr.source;
        let (tn, ts) = dr.target;
        let shape_ok = sn >= 1 && tn == sn - 1 && ts == ss + dr.r;
        let (a, b) = (chart.dim(sn, ss), chart.dim(tn, ts));
        if !shape_ok || ts > chart.s_max || a == 0 || b == 0 || (dr.is_iso && a != b) {
            return Err(SteenrodError::PatternMismatch { from: dr.source, to: dr.target });
        }
        let k = a.min(b);
        if einf[ss][sn as usize] < k || einf[ts][tn as usize] < k {
            return Err(SteenrodError::PatternMismatch { from: dr.source, to: dr.target });
        }
        einf[ss][sn as usize] -= k;
        einf[ts][tn as usize] -= k;
    }
    let mut outcomes = Vec::new();
    for n in 0..=chart.n_max.min(PATTERN_MAX_STEM) {
        let col: Vec<usize> = (0..=chart.s_max).map(|s| einf[s][n as usize]).collect();
        let free_rank = if chart.s_max == 0 {
            col[0]
        } else {
            chart.tower_rank(n, chart.s_max - 1, 1).min(col[chart.s_max])
        };
        let torsion: usize = (0..=chart.s_max)
            .map(|s| col[s] - col[s].min(chart.tower_rank(n, s, chart.s_max - s)))
            .sum();
        let torsion_exponent = torsion as u32;
        outcomes.push(StemOutcome {
            stem: n,
            einf: col,
            free_rank,
            torsion_exponent,
            torsion_order: (chart.p as u64).pow(torsion_exponent),
        });
    }
    out.differentials = pattern.to_vec();
    out.einf = Some(outcomes);
    Ok(out)
}

/// Number of `E_2` classes in `stem` of filtration below `min_filtration`.
pub fn filtration_quotient_rank(chart: &ExtChart, stem: u32, min_filtration: usize) -> usize {
    (0..min_filtration.min(chart.s_max + 1)).map(|s| chart.dim(stem, s)).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartFormat {
    Text,
    Svg,
}

pub fn emit_chart(chart: &ExtChart, format: ChartFormat) -> String {
    match format {
        ChartFormat::Text => emit_text(chart),
        ChartFormat::Svg => emit_svg(chart),
    }
}

fn glyph(n: usize) -> String {
    match n {
        0 => ".".into(),
        1 => "o".into(),
        k => k.to_string(),
    }
}

fn emit_text(chart: &ExtChart) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "E2 p={} ({}) s<={} stems 0..{}",
        chart.p, chart.context, chart.s_max, chart.n_max
    );
    for row in (0..=chart.s_max).rev() {
        let cells: Vec<String> = (0..=chart.n_max).map(|n| format!("{:>2}", glyph(chart.dim(n, row)))).collect();
        let _ = writeln!(s, "{row:>2} |{}", cells.join(""));
    }
    let axis: Vec<String> = (0..=chart.n_max).map(|n| format!("{:>2}", n % 100)).collect();
    let _ = writeln!(s, "   +{}", "-".repeat(axis.len() * 2));
    let _ = writeln!(s, "    {}", axis.join(""));
    for dr in &chart.differentials {
        let _ = writeln!(
            s,
            "d{} ({},{}) -> ({},{}){}",
            dr.r,
            dr.source.0,
            dr.source.1,
            dr.target.0,
            dr.target.1,
            if dr.dashed { " dashed" } else { "" }
        );
    }
    if let Some(einf) = &chart.einf {
        for o in einf {
            if o.free_rank == 0 && o.torsion_exponent == 0 {
                continue;
            }
            let _ = writeln!(
                s,
                "Einf stem {}: free rank {}, torsion order {}",
                o.stem, o.free_rank, o.torsion_order
            );
        }
    }
    s
}

const CELL: f64 = 40.0;
const MARGIN: f64 = 40.0;

fn emit_svg(chart: &ExtChart) -> String {
    let w = 2.0 * MARGIN + CELL * (chart.n_max as f64 + 1.0);
    let h = 2.0 * MARGIN + CELL * (chart.s_max as f64 + 1.0);
    let pos = |stem: u32, s: usize, k: usize, count: usize| -> (f64, f64) {
        let off = (k as f64 - (count as f64 - 1.0) / 2.0) * 8.0;
        (
            MARGIN + CELL * (stem as f64 + 0.5) + off,
            h - MARGIN - CELL * (s as f64 + 0.5),
        )
    };
    let class_pos = |i: usize| -> (f64, f64) {
        let c = &chart.classes[i];
        let group = chart.class_indices(c.stem, c.s);
        let k = group.iter().position(|&j| j == i).expect("class in its own group");
        pos(c.stem, c.s, k, group.len())
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{w}" height="{h}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
    for n in 0..=chart.n_max + 1 {
        let x = MARGIN + CELL * n as f64;
        let _ = writeln!(s, r##"<line x1="{x}" y1="{MARGIN}" x2="{x}" y2="{}" stroke="#ddd"/>"##, h - MARGIN);
    }
    for r in 0..=chart.s_max + 1 {
        let y = MARGIN + CELL * r as f64;
        let _ = writeln!(s, r##"<line x1="{MARGIN}" y1="{y}" x2="{}" y2="{y}" stroke="#ddd"/>"##, w - MARGIN);
    }
    for n in 0..=chart.n_max {
        let (x, _) = pos(n, 0, 0, 1);
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="{}" font-size="12" text-anchor="middle">{n}</text>"#,
            h - MARGIN / 2.0
        );
    }
    for r in 0..=chart.s_max {
        let (_, y) = pos(0, r, 0, 1);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{r}</text>"#,
            MARGIN / 2.0,
            y + 4.0
        );
    }
    for l in &chart.products {
        let (x1, y1) = class_pos(l.from);
        let (x2, y2) = class_pos(l.to);
        let _ = writeln!(
            s,
            r#"<line class="{}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black"/>"#,
            l.name
        );
    }
    for dr in &chart.differentials {
        let (x1, y1) = pos(dr.source.0, dr.source.1, 0, 1);
        let (x2, y2) = pos(dr.target.0, dr.target.1, 0, 1);
        let dash = if dr.dashed { r#" stroke-dasharray="4 3""# } else { "" };
        let _ = writeln!(
            s,
            r#"<line class="d{}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="red"{dash}><title>d{}</title></line>"#,
            dr.r, dr.r
        );
    }
    for i in 0..chart.classes.len() {
        let (x, y) = class_pos(i);
        let _ = writeln!(s, r#"<circle cx="{x}" cy="{y}" r="3.5" fill="black"/>"#);
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column(c: &ExtChart, stem: u32) -> Vec<usize> {
        (0..=c.s_max).map(|s| c.dim(stem, s)).collect()
    }

    #[test]
    fn two_primary_stems_four_to_eight() {
        let c = ext_chart(2, 8, 6, 8).unwrap();
        assert_eq!(column(&c, 4), vec![0, 0, 1, 1, 1, 1, 1]);
        assert_eq!(column(&c, 5), vec![0, 1, 1, 1, 0, 0, 0]);
        assert_eq!(column(&c, 6), vec![0, 1, 1, 1, 1, 1, 1]);
        assert_eq!(column(&c, 7), vec![0, 1, 2, 1, 1, 0, 0]);
        assert_eq!(column(&c, 8), vec![1, 1, 2, 2, 1, 1, 1]);
    }

    #[test]
    fn three_primary_stems_four_to_eight() {
        let c = ext_chart(3, 9, 5, 8).unwrap();
        assert_eq!(column(&c, 4), vec![0, 1, 1, 1, 1, 1]);
        assert_eq!(column(&c, 5), vec![0; 6]);
        assert_eq!(column(&c, 6), vec![0, 1, 1, 1, 1, 1]);
        assert_eq!(column(&c, 7), vec![0, 1, 1, 0, 0, 0]);
        assert_eq!(column(&c, 8), vec![1; 6]);
        assert_ne!(c.product_matrix("h0", (4, 1), (7, 2)), vec![vec![0]]);
    }

    #[test]
    fn einf_orders() {
        for (d, stem7) in [(8, 32), (16, 32), (4, 16), (12, 16)] {
            let c = ext_chart(2, d, 6, 8).unwrap();
            let pat = differential_pattern(2, d, ThreePrimaryOutcome::NoDifferential).unwrap();
            let e = apply_differential_pattern(&c, &pat).unwrap();
            let einf = e.einf.unwrap();
            assert_eq!(einf[7].torsion_order, stem7, "d = {d}");
            assert_eq!((einf[5].free_rank, einf[5].torsion_order), (0, 4));
            assert_eq!((einf[8].free_rank, einf[8].torsion_order), (1, 4));
        }
        let c = ext_chart(3, 9, 5, 8).unwrap();
        for (outcome, order) in [(ThreePrimaryOutcome::NoDifferential, 9), (ThreePrimaryOutcome::D2Nonzero, 3)] {
            let e = apply_differential_pattern(&c, &differential_pattern(3, 9, outcome).unwrap()).unwrap();
            assert_eq!(e.einf.unwrap()[7].torsion_order, order);
        }
        assert!(differential_pattern(2, 6, ThreePrimaryOutcome::NoDifferential).is_err());
        assert!(differential_pattern(3, 4, ThreePrimaryOutcome::NoDifferential).is_err());
    }

    #[test]
    fn filtration_quotients() {
        let c3 = ext_chart(3, 9, 5, 8).unwrap();
        assert_eq!(filtration_quotient_rank(&c3, 7, 2), 1);
        let c2 = ext_chart(2, 8, 6, 8).unwrap();
        assert_eq!(filtration_quotient_rank(&c2, 7, 2), 1);
        assert_eq!(filtration_quotient_rank(&c2, 7, 1), 0);
    }

    #[test]
    fn guard_band_and_rendering() {
        assert!(guard_band_independent(2, 4, 5, 8).unwrap());
        assert!(guard_band_independent(3, 6, 5, 8).unwrap());
        let c = ext_chart(3, 9, 5, 8).unwrap();
        let svg = emit_chart(&c, ChartFormat::Svg);
        assert_eq!(svg.matches("<circle").count(), c.classes.len());
        assert!(svg.starts_with("<svg"));
        assert!(ext_chart(2, 8, 6, 20).is_err());
    }
}
