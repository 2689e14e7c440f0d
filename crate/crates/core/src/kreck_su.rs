//! The homomorphism `Phi: Theta_7 -> K_d` from the Kreck-Su description of
//! the mapping class group: kernel, cokernel and `Theta_7 / Ker`, by residue
//! of `d`.

use crate::exactalg::AbelianGroupPresentation;
use crate::hypersurface::{check_degree, HypersurfaceError};
use num_traits::ToPrimitive;
use serde::Serialize;
use std::fmt;
use std::sync::OnceLock;

/// Order of the group of homotopy 7-spheres.
pub const THETA7_ORDER: u64 = 28;

/// Finite abelian group in invariant-factor form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    /// Direct sum of cyclic groups of the given orders, put in canonical form.
    pub fn from_cyclic(orders: &[u64]) -> Self {
        assert!(orders.iter().all(|&o| o >= 1), "cyclic orders must be positive");
        let p = AbelianGroupPresentation::from_cyclic(orders.iter().map(|&o| o.into()));
        FiniteAbelianGroup {
            invariant_factors: p
                .invariant_factors()
                .iter()
                .map(|v| v.to_u64().expect("fits, product of u64 inputs"))
                .collect(),
        }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let all: Vec<u64> = self.invariant_factors.iter().chain(&other.invariant_factors).copied().collect();
        Self::from_cyclic(&all)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// One residue class list mod 16 with the 2-primary orders it determines.
struct ResidueClass {
    residues: &'static [u64],
    /// 2-primary part of `Ker(Phi)`.
    kernel_two: u64,
    /// 2-primary part of `Theta_7 / Ker(Phi)`.
    quotient_two: u64,
}

const RESIDUE_TABLE: [ResidueClass; 3] = [
    ResidueClass {
        residues: &[2, 4, 6, 10, 12, 14],
        kernel_two: 4,
        quotient_two: 1,
    },
    ResidueClass {
        residues: &[3, 5, 8, 11, 13],
        kernel_two: 2,
        quotient_two: 2,
    },
    ResidueClass {
        residues: &[0, 1, 7, 9, 15],
        kernel_two: 1,
        quotient_two: 4,
    },
];

/// Checks that the residue lists partition `Z/16` and that each row's
/// 2-primary orders multiply to 4.
pub fn validate_tables() -> Result<(), String> {
    let mut hits = [0u8; 16];
    for row in &RESIDUE_TABLE {
        if row.kernel_two * row.quotient_two != 4 {
            return Err(format!("row {:?} has 2-primary orders not multiplying to 4", row.residues));
        }
        for &r in row.residues {
            if r >= 16 {
                return Err(format!("residue {r} out of range"));
            }
            hits[r as usize] += 1;
        }
    }
    match hits.iter().position(|&h| h != 1) {
        None => Ok(()),
        Some(r) => Err(format!("residue {r} appears {} times", hits[r])),
    }
}

fn residue_class(d: i64) -> &'static ResidueClass {
    static CHECKED: OnceLock<()> = OnceLock::new();
    CHECKED.get_or_init(|| validate_tables().expect("residue tables are a partition of Z/16"));
    let r = d.rem_euclid(16) as u64;
    RESIDUE_TABLE
        .iter()
        .find(|row| row.residues.contains(&r))
        .expect("validated partition")
}

pub fn ker_phi(d: i64) -> Result<FiniteAbelianGroup, HypersurfaceError> {
    let d = check_degree(d)?;
    let seven = if d % 7 != 0 { 7 } else { 1 };
    Ok(FiniteAbelianGroup::from_cyclic(&[residue_class(d).kernel_two, seven]))
}

pub fn theta7_mod_ker(d: i64) -> Result<FiniteAbelianGroup, HypersurfaceError> {
    let d = check_degree(d)?;
    let seven = if d % 7 == 0 { 7 } else { 1 };
    Ok(FiniteAbelianGroup::from_cyclic(&[residue_class(d).quotient_two, seven]))
}

pub fn coker_phi(d: i64) -> Result<FiniteAbelianGroup, HypersurfaceError> {
    let d = check_degree(d)?;
    let two = if d % 4 == 0 { 2 } else { 1 };
    let three = if d % 3 == 0 { 3 } else { 1 };
    Ok(FiniteAbelianGroup::from_cyclic(&[two, three]))
}

/// `(5 - d^2) d / 4`, an integer exactly when `d` is odd.
pub fn k_constant(d: i64) -> Option<i64> {
    if d % 2 == 0 {
        return None;
    }
    let num = (5 - d * d) * d;
    debug_assert_eq!(num % 4, 0);
    Some(num / 4)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MCGTableRow {
    pub d: i64,
    pub ker_phi: FiniteAbelianGroup,
    pub coker_phi: FiniteAbelianGroup,
    pub theta7_mod_ker: FiniteAbelianGroup,
    pub im_phi_order: u64,
    pub k_d_order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_constant: Option<i64>,
}

impl MCGTableRow {
    /// `|Ker| * |Theta_7 / Ker| = 28`.
    pub fn is_consistent(&self) -> bool {
        self.ker_phi.order() * self.theta7_mod_ker.order() == THETA7_ORDER
            && self.im_phi_order == self.theta7_mod_ker.order()
    }
}

pub fn mcg_row(d: i64) -> Result<MCGTableRow, HypersurfaceError> {
    let ker = ker_phi(d)?;
    let coker = coker_phi(d)?;
    let im_phi_order = THETA7_ORDER / ker.order();
    Ok(MCGTableRow {
        d,
        k_d_order: im_phi_order * coker.order(),
        im_phi_order,
        theta7_mod_ker: theta7_mod_ker(d)?,
        ker_phi: ker,
        coker_phi: coker,
        k_constant: k_constant(d),
    })
}

pub fn mcg_table(from: i64, to: i64) -> Result<Vec<MCGTableRow>, HypersurfaceError> {
    (from..=to).map(mcg_row).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_partition() {
        validate_tables().unwrap();
    }

    #[test]
    fn spot_values() {
        assert_eq!(ker_phi(6).unwrap().invariant_factors(), &[28]);
        assert!(ker_phi(7).unwrap().invariant_factors().is_empty());
        assert_eq!(ker_phi(19).unwrap().invariant_factors(), &[14]);
        assert_eq!(coker_phi(12).unwrap().invariant_factors(), &[6]);
        assert_eq!(coker_phi(5).unwrap().order(), 1);
        assert_eq!(coker_phi(9).unwrap().invariant_factors(), &[3]);
        assert_eq!(theta7_mod_ker(5).unwrap().invariant_factors(), &[2]);
        assert_eq!(theta7_mod_ker(7).unwrap().invariant_factors(), &[28]);
        assert_eq!(theta7_mod_ker(2).unwrap().order(), 1);
    }

    #[test]
    fn k_constant_only_for_odd() {
        assert_eq!(k_constant(3), Some(-3));
        assert_eq!(k_constant(5), Some(-25));
        assert_eq!(k_constant(4), None);
        assert!(mcg_row(4).unwrap().k_constant.is_none());
    }
}
