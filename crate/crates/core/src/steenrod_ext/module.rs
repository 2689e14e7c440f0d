//! Finite graded modules over the Steenrod algebra, and the Thom module
//! `u * H^*(CP^infty; F_p)` with its twisted action.

use super::algebra::{check_prime, fmt_monomial, op_degree, Monomial, Op};
use super::SteenrodError;
use crate::hypersurface::minus_theta_chern_series;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;
use std::collections::BTreeMap;

/// Sparse vector: basis index to nonzero coefficient.
pub type SparseVec = BTreeMap<usize, u32>;

fn add_into(p: u32, acc: &mut SparseVec, i: usize, c: u32) {
    let e = acc.entry(i).or_insert(0);
    *e = (*e + c) % p;
    if *e == 0 {
        acc.remove(&i);
    }
}

/// A bounded graded module given by the action of each generator `Op` on
/// each basis element. Generators with no recorded action act by zero.
///
/// A module cut off from an infinite one records the degree through which
/// it is complete; a genuinely finite module has no truncation.
#[derive(Clone, Debug)]
pub struct SteenrodModule {
    pub p: u32,
    pub truncation: Option<u32>,
    degrees: Vec<u32>,
    labels: Vec<String>,
    actions: BTreeMap<Op, Vec<SparseVec>>,
}

impl SteenrodModule {
    pub fn new(p: u32, degrees: Vec<u32>, labels: Vec<String>) -> Result<Self, SteenrodError> {
        check_prime(p)?;
        assert_eq!(degrees.len(), labels.len(), "one label per basis element");
        Ok(SteenrodModule {
            p,
            truncation: None,
            degrees,
            labels,
            actions: BTreeMap::new(),
        })
    }

    /// Record `op(e_from) += c e_to`, checking degrees.
    pub fn set_action(&mut self, op: Op, from: usize, to: usize, c: u32) -> Result<(), SteenrodError> {
        if self.degrees[from] + op_degree(self.p, op) != self.degrees[to] {
            return Err(SteenrodError::DegreeMismatch { from, to });
        }
        let n = self.degrees.len();
        let p = self.p;
        let rows = self.actions.entry(op).or_insert_with(|| vec![SparseVec::new(); n]);
        add_into(p, &mut rows[from], to, c % p);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn top_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn basis_in_degree(&self, t: u32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == t).collect()
    }

    pub fn apply_op(&self, op: Op, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        if let Some(rows) = self.actions.get(&op) {
            for (&i, &c) in v {
                for (&j, &d) in &rows[i] {
                    add_into(self.p, &mut out, j, c * d % self.p);
                }
            }
        }
        out
    }

    /// A monomial acts right to left.
    pub fn apply(&self, m: &[Op], v: &SparseVec) -> SparseVec {
        let mut cur = v.clone();
        for &op in m.iter().rev() {
            if op == Op::P(0) {
                continue;
            }
            cur = self.apply_op(op, &cur);
            if cur.is_empty() {
                break;
            }
        }
        cur
    }

    pub fn apply_to_basis(&self, m: &[Op], i: usize) -> SparseVec {
        self.apply(m, &SparseVec::from([(i, 1)]))
    }

    /// Matrix of `m` from degree `t` to degree `t + |m|`: row per source
    /// basis element, column per target basis element.
    pub fn action_matrix(&self, m: &[Op], t: u32) -> Vec<Vec<u32>> {
        let src = self.basis_in_degree(t);
        let tgt = self.basis_in_degree(t + m.iter().map(|&o| op_degree(self.p, o)).sum::<u32>());
        src.iter()
            .map(|&i| {
                let img = self.apply_to_basis(m, i);
                tgt.iter().map(|j| img.get(j).copied().unwrap_or(0)).collect()
            })
            .collect()
    }

    pub fn summary(&self) -> ModuleSummary {
        let mut actions = Vec::new();
        for (op, rows) in &self.actions {
            for (i, row) in rows.iter().enumerate() {
                for (&j, &c) in row {
                    actions.push(ActionEntry {
                        op: fmt_monomial(self.p, &[*op]),
                        from: self.labels[i].clone(),
                        to: self.labels[j].clone(),
                        coeff: c,
                    });
                }
            }
        }
        ModuleSummary {
            p: self.p,
            basis: self.labels.iter().cloned().zip(self.degrees.iter().copied()).collect(),
            actions,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ActionEntry {
    pub op: String,
    pub from: String,
    pub to: String,
    pub coeff: u32,
}

/// Serializable view: basis labels with degrees, and every nonzero action
/// coefficient of a generator.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ModuleSummary {
    pub p: u32,
    pub basis: Vec<(String, u32)>,
    pub actions: Vec<ActionEntry>,
}

fn mod_p(v: &num_bigint::BigInt, p: u32) -> u32 {
    v.mod_floor(&num_bigint::BigInt::from(p)).to_u32().expect("reduced")
}

/// Coefficients `a_k` of `(1 + dx)/(1 + x)^5` mod `p`, `k = 0..=n`.
fn chern_coeffs(d: i64, p: u32, n: usize) -> Result<Vec<u32>, SteenrodError> {
    let c = minus_theta_chern_series(d, 0, n)?;
    Ok((0..=n).map(|k| mod_p(&c.coeff(k), p)).collect())
}

/// The total operation on the Thom class, as coefficients of `u x^k`.
///
/// At `p = 2` this is the total Stiefel-Whitney class, so `Sq^{2k}(u) = a_k u x^k`.
/// At odd `p` it is `prod (1 + x_i^{p-1})` over Chern roots; for `p = 3`
/// its `x^{2j}` coefficient is `(-1)^j` times that of `c(x) c(-x)`.
pub fn total_operation_on_u(d: i64, p: u32, max_k: usize) -> Result<Vec<u32>, SteenrodError> {
    check_prime(p)?;
    if p == 2 {
        return chern_coeffs(d, 2, max_k);
    }
    let c = minus_theta_chern_series(d, 0, max_k)?;
    let mut out = vec![0; max_k + 1];
    for (k, slot) in out.iter_mut().enumerate() {
        if k % 2 == 1 {
            continue;
        }
        // [x^k] c(x) c(-x)
        let mut s = num_bigint::BigInt::from(0);
        for i in 0..=k {
            let term = c.coeff(i) * c.coeff(k - i);
            if (k - i) % 2 == 1 {
                s -= term;
            } else {
                s += term;
            }
        }
        if (k / 2) % 2 == 1 {
            s = -s;
        }
        *slot = mod_p(&s, p);
    }
    Ok(out)
}

/// `u * H^*(CP^infty; F_p)` through internal degree `top`, basis `u x^k` in
/// degree `2k`. The action on `x` is `Sq(x) = x + x^2`, resp.
/// `P(x) = x + x^3`, extended by the Cartan formula.
pub fn thom_module(d: i64, p: u32, top: u32) -> Result<SteenrodModule, SteenrodError> {
    check_prime(p)?;
    if p == 2 && d % 2 != 0 {
        return Err(SteenrodError::OddDegreeAtTwo(d));
    }
    let kmax = (top / 2) as usize;
    let g = total_operation_on_u(d, p, kmax)?;
    let degrees: Vec<u32> = (0..=kmax as u32).map(|k| 2 * k).collect();
    let labels: Vec<String> = (0..=kmax)
        .map(|k| match k {
            0 => "u".to_string(),
            1 => "u x".to_string(),
            _ => format!("u x^{k}"),
        })
        .collect();
    let mut m = SteenrodModule::new(p, degrees, labels)?;
    m.truncation = Some(top);
    // op index i raises x-degree by `step * i`: Sq^{2i} at p = 2, P^i at p = 3
    let step = if p == 2 { 1 } else { 2 };
    for k in 0..=kmax {
        for i in 1.. {
            let target = k + step * i;
            if target > kmax {
                break;
            }
            // P^i(u x^k) = sum_{a+b=i} g_{step a} C(k, b) u x^{k + step i}
            let c = (0..=i).fold(0u32, |acc, a| {
                let b = i - a;
                let gc = g[step * a];
                (acc + gc * super::algebra::binom_mod(k as i64, b as i64, p)) % p
            });
            let op = if p == 2 { Op::P(2 * i as u32) } else { Op::P(i as u32) };
            if c != 0 {
                m.set_action(op, k, target, c)?;
            }
        }
    }
    Ok(m)
}

/// Generator words of the Thom module through `top`, for display: every
/// `Sq^i` at `p = 2`, `b` and every `P^i` at `p = 3`.
pub fn generator_ops(p: u32, top: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if p != 2 {
        out.push(vec![Op::Beta]);
    }
    let mut i = 1;
    while op_degree(p, Op::P(i)) <= top {
        out.push(vec![Op::P(i)]);
        i += 1;
    }
    out
}
