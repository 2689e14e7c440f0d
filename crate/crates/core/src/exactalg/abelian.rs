use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use std::fmt;

/// A finitely generated abelian group `Z/n_1 + ... + Z/n_k + Z^r` in
/// invariant-factor form: `n_1 | n_2 | ...`, all `n_i > 1`, free summands
/// recorded as trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroupPresentation {
    invariant_factors: Vec<BigInt>,
}

impl AbelianGroupPresentation {
    pub fn trivial() -> Self {
        AbelianGroupPresentation {
            invariant_factors: Vec::new(),
        }
    }

    /// Canonicalises an arbitrary list of cyclic orders (0 meaning `Z`).
    pub fn from_cyclic<I: IntoIterator<Item = BigInt>>(orders: I) -> Self {
        let mut free = 0usize;
        let mut torsion: Vec<BigInt> = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                free += 1;
            } else if !o.is_one() {
                torsion.push(o);
            }
        }
        // repeatedly replace (a, b) by (gcd, lcm) until the list is a chain
        torsion.sort();
        let n = torsion.len();
        for i in 0..n {
            for j in i + 1..n {
                let g = torsion[i].gcd(&torsion[j]);
                let l = torsion[i].lcm(&torsion[j]);
                torsion[i] = g;
                torsion[j] = l;
            }
        }
        let mut invariant_factors: Vec<BigInt> = torsion.into_iter().filter(|v| !v.is_one()).collect();
        invariant_factors.extend(std::iter::repeat(BigInt::zero()).take(free));
        AbelianGroupPresentation { invariant_factors }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic([BigInt::from(n)])
    }

    pub(crate) fn from_factors(invariant_factors: Vec<BigInt>) -> Self {
        Self::from_cyclic(invariant_factors)
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|v| !v.is_zero()).cloned().collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|v| v.is_zero()).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.invariant_factors.iter().all(|v| v.is_zero())
    }

    /// Order of the group, `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.rank() > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().fold(BigInt::one(), |a, b| a * b))
    }

    /// Torsion order (product of finite invariant factors).
    pub fn torsion_order(&self) -> BigInt {
        self.torsion_factors().iter().fold(BigInt::one(), |a, b| a * b)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_cyclic(self.invariant_factors.iter().chain(other.invariant_factors.iter()).cloned())
    }
}

impl fmt::Display for AbelianGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|v| if v.is_zero() { "Z".to_string() } else { format!("Z/{v}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for AbelianGroupPresentation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.invariant_factors.iter().map(json_int))
    }
}

/// JSON number when the value fits in `i64`, decimal string otherwise.
#[derive(Serialize)]
#[serde(untagged)]
pub(crate) enum JsonInt {
    Small(i64),
    Big(String),
}

pub(crate) fn json_int(v: &BigInt) -> JsonInt {
    use num_traits::ToPrimitive;
    match v.to_i64() {
        Some(x) => JsonInt::Small(x),
        None => JsonInt::Big(v.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_chain() {
        let g = AbelianGroupPresentation::from_cyclic([4, 7, 0, 1, 6].map(BigInt::from));
        let want: Vec<BigInt> = [2, 84, 0].map(BigInt::from).to_vec();
        assert_eq!(g.invariant_factors(), want.as_slice());
        assert_eq!(g.to_string(), "Z/2 + Z/84 + Z");
        assert_eq!(g.rank(), 1);
        assert_eq!(g.order(), None);
        assert_eq!(AbelianGroupPresentation::cyclic(1).order(), Some(BigInt::one()));
    }
}
