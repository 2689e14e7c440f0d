use super::ExactAlgError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Power series truncated after `x^max_degree`, over `Z` (`modulus == 0`)
/// or `Z/p` for a prime `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    modulus: u64,
    coeffs: Vec<BigInt>,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

impl TruncatedSeries {
    pub fn new(modulus: u64, max_degree: usize, coeffs: &[i64]) -> Result<Self, ExactAlgError> {
        Self::from_big(modulus, max_degree, coeffs.iter().map(|c| BigInt::from(*c)).collect())
    }

    pub fn from_big(modulus: u64, max_degree: usize, mut coeffs: Vec<BigInt>) -> Result<Self, ExactAlgError> {
        if modulus != 0 && !is_prime(modulus) {
            return Err(ExactAlgError::BadModulus(modulus));
        }
        coeffs.resize(max_degree + 1, BigInt::zero());
        let mut s = TruncatedSeries { modulus, coeffs };
        s.normalize();
        Ok(s)
    }

    pub fn one(modulus: u64, max_degree: usize) -> Result<Self, ExactAlgError> {
        Self::new(modulus, max_degree, &[1])
    }

    /// `1 + a x`.
    pub fn linear(modulus: u64, max_degree: usize, a: i64) -> Result<Self, ExactAlgError> {
        Self::new(modulus, max_degree, &[1, a])
    }

    fn normalize(&mut self) {
        if self.modulus != 0 {
            let m = BigInt::from(self.modulus);
            for c in &mut self.coeffs {
                *c = c.mod_floor(&m);
            }
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient as `i64`; panics if it does not fit.
    pub fn coeff_i64(&self, k: usize) -> i64 {
        self.coeff(k).to_i64().expect("coefficient fits in i64")
    }

    fn check(&self, o: &Self) -> Result<usize, ExactAlgError> {
        if self.modulus != o.modulus {
            return Err(ExactAlgError::ModulusMismatch(self.modulus, o.modulus));
        }
        Ok(self.max_degree().min(o.max_degree()))
    }

    fn with(&self, coeffs: Vec<BigInt>) -> Self {
        let mut s = TruncatedSeries {
            modulus: self.modulus,
            coeffs,
        };
        s.normalize();
        s
    }

    pub fn add(&self, o: &Self) -> Result<Self, ExactAlgError> {
        let n = self.check(o)?;
        Ok(self.with((0..=n).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect()))
    }

    pub fn sub(&self, o: &Self) -> Result<Self, ExactAlgError> {
        let n = self.check(o)?;
        Ok(self.with((0..=n).map(|k| &self.coeffs[k] - &o.coeffs[k]).collect()))
    }

    pub fn scale(&self, a: &BigInt) -> Self {
        self.with(self.coeffs.iter().map(|c| c * a).collect())
    }

    pub fn mul(&self, o: &Self) -> Result<Self, ExactAlgError> {
        let n = self.check(o)?;
        let mut out = vec![BigInt::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                out[i + j] += &self.coeffs[i] * &o.coeffs[j];
            }
        }
        Ok(self.with(out))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.modulus, self.max_degree()).expect("modulus already validated");
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inv(&self) -> Result<Self, ExactAlgError> {
        let c0 = &self.coeffs[0];
        let c0_inv = if self.modulus == 0 {
            if !c0.abs().is_one() {
                return Err(ExactAlgError::NonUnitConstant(c0.to_string()));
            }
            c0.clone()
        } else {
            let m = BigInt::from(self.modulus);
            if c0.is_zero() {
                return Err(ExactAlgError::NonUnitConstant(c0.to_string()));
            }
            // Fermat: c^(p-2)
            c0.modpow(&(&m - 2u32), &m)
        };
        let n = self.max_degree();
        let mut out: Vec<BigInt> = vec![BigInt::zero(); n + 1];
        out[0] = c0_inv.clone();
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &out[k - i];
            }
            out[k] = -acc * &c0_inv;
            if self.modulus != 0 {
                out[k] = out[k].mod_floor(&BigInt::from(self.modulus));
            }
        }
        Ok(self.with(out))
    }

    /// `self(inner(x))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, ExactAlgError> {
        let n = self.check(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(ExactAlgError::NonzeroInnerConstant);
        }
        let inner = inner.truncate(n);
        let mut out = Self::from_big(self.modulus, n, vec![BigInt::zero()])?;
        let mut power = Self::one(self.modulus, n)?;
        for k in 0..=n {
            out = out.add(&power.scale(&self.coeffs[k]))?;
            power = power.mul(&inner)?;
        }
        Ok(out)
    }

    pub fn truncate(&self, max_degree: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(max_degree + 1, BigInt::zero());
        self.with(c)
    }

    /// Reduction to `Z/p`; only valid from `Z`.
    pub fn reduce(&self, p: u64) -> Result<Self, ExactAlgError> {
        if self.modulus != 0 {
            return Err(ExactAlgError::ModulusMismatch(self.modulus, p));
        }
        Self::from_big(p, self.max_degree(), self.coeffs.clone())
    }

    /// Coefficients as signed representatives in `(-p/2, p/2]` (or as is over `Z`).
    pub fn symmetric_coeffs(&self) -> Vec<BigInt> {
        if self.modulus == 0 {
            return self.coeffs.clone();
        }
        let m = BigInt::from(self.modulus);
        let half = &m / 2;
        self.coeffs
            .iter()
            .map(|c| if c > &half { c - &m } else { c.clone() })
            .collect()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                terms.push(c.to_string());
            } else if c.is_one() {
                terms.push(mono);
            } else {
                terms.push(format!("{c}{mono}"));
            }
        }
        if terms.is_empty() {
            terms.push("0".to_string());
        }
        write!(f, "{} + O(x^{})", terms.join(" + "), self.max_degree() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_one_plus_x() {
        let s = TruncatedSeries::linear(0, 5, 1).unwrap();
        let i = s.inv().unwrap();
        let want: Vec<BigInt> = [1, -1, 1, -1, 1, -1].map(BigInt::from).to_vec();
        assert_eq!(i.coeffs(), want.as_slice());
        assert!(TruncatedSeries::new(0, 3, &[2, 1]).unwrap().inv().is_err());
        assert!(TruncatedSeries::new(3, 3, &[2, 1]).unwrap().inv().is_ok());
        assert!(TruncatedSeries::new(4, 3, &[1]).is_err());
    }

    #[test]
    fn compose_exp_like() {
        // (1+x)^2 composed with x + x^2 = 1 + 2x + 3x^2 + 2x^3 + x^4
        let outer = TruncatedSeries::new(0, 4, &[1, 2, 1]).unwrap();
        let inner = TruncatedSeries::new(0, 4, &[0, 1, 1]).unwrap();
        let c = outer.compose(&inner).unwrap();
        assert_eq!(c.coeffs(), [1, 2, 3, 2, 1].map(BigInt::from).as_slice());
        assert!(outer.compose(&outer).is_err());
    }
}
