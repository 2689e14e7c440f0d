//! Reduced K- and KO-theory of `CP^4` with Adams operations.
//!
//! `K^0(CP^4) = Z[x]/(x^5)` with `x = O(1) - 1`, and `KO^0(CP^4) = Z[y]/(y^3)`
//! with `y = r(x)`. Classes here are elements of the reduced groups, so a
//! [`KClass`] holds the coefficients of `x..x^4` and a [`KOClass`] those of
//! `y, y^2`. The 2-local kernel of `J` is approximated from below by the
//! lattice spanned by `(psi^k - 1) y` and `(psi^k - 1) y^2` for odd `k`.

use crate::exactalg::{
    lattice_membership_2local, solve_integer, AbelianGroupPresentation, ExactAlgError, IntMatrix, TruncatedSeries,
};
use crate::exactalg::{json_int, JsonInt};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use std::fmt;
use thiserror::Error;

const K_TOP: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JTheoryError {
    #[error("degree {0} is not divisible by 4")]
    DegreeNotDivisibleBy4(i64),
    #[error("empty list of Adams exponents")]
    NoExponents,
    #[error(transparent)]
    Linear(#[from] ExactAlgError),
}

/// `a_1 x + a_2 x^2 + a_3 x^3 + a_4 x^4` in `K~^0(CP^4)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct KClass(pub [BigInt; 4]);

/// `b_1 y + b_2 y^2` in `KO~^0(CP^4)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct KOClass(pub [BigInt; 2]);

fn big4(c: [i64; 4]) -> [BigInt; 4] {
    c.map(BigInt::from)
}

impl KClass {
    pub fn new(c: [i64; 4]) -> Self {
        KClass(big4(c))
    }

    /// The class `x^i` for `i` in `1..=4`.
    pub fn x_pow(i: usize) -> Self {
        assert!((1..=K_TOP).contains(&i), "x^{i} is not a basis class");
        let mut c = [0; 4];
        c[i - 1] = 1;
        KClass::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        KClass(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        KClass(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }

    pub fn scale(&self, a: &BigInt) -> Self {
        KClass(std::array::from_fn(|i| &self.0[i] * a))
    }

    fn to_series(&self) -> TruncatedSeries {
        let mut c = vec![BigInt::zero()];
        c.extend(self.0.iter().cloned());
        TruncatedSeries::from_big(0, K_TOP, c).expect("modulus 0 is valid")
    }

    fn from_series(s: &TruncatedSeries) -> Self {
        debug_assert!(s.coeff(0).is_zero());
        KClass(std::array::from_fn(|i| s.coeff(i + 1)))
    }

    /// Product in the ring; stays reduced since both factors are.
    pub fn mul(&self, o: &Self) -> Self {
        KClass::from_series(&self.to_series().mul(&o.to_series()).expect("same precision"))
    }

    /// Substitute `x -> p` where `p` has zero constant term.
    fn substitute(&self, p: &KClass) -> Self {
        let mut out = KClass::default();
        let mut power = p.clone();
        for a in &self.0 {
            out = out.add(&power.scale(a));
            power = power.mul(p);
        }
        out
    }
}

impl KOClass {
    pub fn new(b1: i64, b2: i64) -> Self {
        KOClass([BigInt::from(b1), BigInt::from(b2)])
    }

    pub fn y() -> Self {
        KOClass::new(1, 0)
    }

    pub fn y_squared() -> Self {
        KOClass::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        KOClass([&self.0[0] + &o.0[0], &self.0[1] + &o.0[1]])
    }

    pub fn sub(&self, o: &Self) -> Self {
        KOClass([&self.0[0] - &o.0[0], &self.0[1] - &o.0[1]])
    }

    pub fn scale(&self, a: &BigInt) -> Self {
        KOClass([&self.0[0] * a, &self.0[1] * a])
    }
}

fn fmt_terms(f: &mut fmt::Formatter<'_>, var: &str, coeffs: &[BigInt]) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mono = if i == 0 { var.to_string() } else { format!("{var}^{}", i + 1) };
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        match (first, c.is_negative()) {
            (true, false) => {}
            (true, true) => write!(f, "-")?,
            (false, _) => write!(f, " {sign} ")?,
        }
        if mag.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{mag}{mono}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, "x", &self.0)
    }
}

impl fmt::Display for KOClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, "y", &self.0)
    }
}

impl Serialize for KClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<JsonInt> = self.0.iter().map(json_int).collect();
        v.serialize(s)
    }
}

impl Serialize for KOClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<JsonInt> = self.0.iter().map(json_int).collect();
        v.serialize(s)
    }
}

/// `psi^k(x) = (1 + x)^k - 1`, for any integer `k`.
fn psi_c_of_x(k: i64) -> KClass {
    let one_plus_x = TruncatedSeries::linear(0, K_TOP, 1).expect("valid");
    let base = if k < 0 { one_plus_x.inv().expect("1 + x is a unit") } else { one_plus_x };
    let p = base.pow(k.unsigned_abs() as u32);
    let mut c = p.coeffs().to_vec();
    c[0] -= 1;
    KClass::from_series(&TruncatedSeries::from_big(0, K_TOP, c).expect("valid"))
}

/// Complex Adams operation `psi^k`, a ring map with `psi^k(x) = (1 + x)^k - 1`.
pub fn adams_psi_c(k: i64, cls: &KClass) -> KClass {
    cls.substitute(&psi_c_of_x(k))
}

/// `c(y) = x + psi^{-1}(x)`, computed rather than transcribed.
fn c_of_y() -> KClass {
    let x = KClass::x_pow(1);
    x.add(&adams_psi_c(-1, &x))
}

/// Complexification `KO -> K`; a ring map, so `c(y^2) = c(y)^2`.
pub fn complexify(cls: &KOClass) -> KClass {
    let cy = c_of_y();
    let cy2 = cy.mul(&cy);
    cy.scale(&cls.0[0]).add(&cy2.scale(&cls.0[1]))
}

/// The 2 x 4 matrix of `c` in the bases `y, y^2` and `x..x^4`.
pub fn complexification_matrix() -> IntMatrix {
    let rows = [KOClass::y(), KOClass::y_squared()].map(|b| complexify(&b).0.to_vec());
    IntMatrix::from_big_rows(K_TOP, rows.to_vec()).expect("rectangular")
}

/// `r(x^i)`, found by solving `c(r(z)) = z + psi^{-1}(z)` against the
/// injective `c`.
fn realify_basis(i: usize) -> KOClass {
    let z = KClass::x_pow(i);
    let target = z.add(&adams_psi_c(-1, &z));
    let w = solve_integer(&complexification_matrix(), &target.0)
        .expect("dimensions agree")
        .expect("c r = 1 + psi^-1 has an integral solution");
    KOClass([w[0].clone(), w[1].clone()])
}

/// Realification `K -> KO`, a group homomorphism.
pub fn realify(cls: &KClass) -> KOClass {
    (1..=K_TOP).fold(KOClass::default(), |acc, i| acc.add(&realify_basis(i).scale(&cls.0[i - 1])))
}

/// Real Adams operation: `psi^k(y) = k^2 y + k^2 (k^2 - 1)/12 y^2`,
/// `psi^k(y^2) = k^4 y^2`.
pub fn adams_psi_r(k: i64, cls: &KOClass) -> KOClass {
    let k2 = BigInt::from(k) * k;
    let num: BigInt = &k2 * (&k2 - 1);
    let (q, rem) = num.div_rem(&BigInt::from(12));
    assert!(rem.is_zero(), "k^2 (k^2 - 1) is divisible by 12 for every integer k");
    let k4 = &k2 * &k2;
    KOClass([&cls.0[0] * &k2, &cls.0[0] * q + &cls.0[1] * k4])
}

/// Generators of the sublattice of `KO~^0(CP^4)` known to lie in the
/// kernel of `J_(2)`; as a matrix its rows are in the basis `y, y^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct J2KernelLattice {
    pub ks: Vec<i64>,
    pub generators: Vec<KOClass>,
}

impl J2KernelLattice {
    pub fn matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = self.generators.iter().map(|g| g.0.to_vec()).collect();
        IntMatrix::from_big_rows(2, rows).expect("rectangular")
    }

    /// Whether `cls` lies in the lattice tensored with `Z_(2)`.
    pub fn contains_2local(&self, cls: &KOClass) -> bool {
        lattice_membership_2local(&self.matrix(), &cls.0).expect("rank 2 vectors")
    }

    /// `KO~^0(CP^4)` modulo the lattice.
    pub fn quotient(&self) -> AbelianGroupPresentation {
        crate::exactalg::cokernel(&self.matrix())
    }

    /// The 2-primary part of [`Self::quotient`], as powers of two.
    pub fn quotient_2local(&self) -> Vec<BigInt> {
        self.quotient()
            .invariant_factors()
            .iter()
            .map(|f| if f.is_zero() { BigInt::zero() } else { two_part(f) })
            .filter(|f| !f.is_one())
            .collect()
    }
}

fn two_part(n: &BigInt) -> BigInt {
    let tz = n.trailing_zeros().unwrap_or(0);
    BigInt::one() << tz
}

/// `{(psi^k - 1) y, (psi^k - 1) y^2 : k in ks}`.
pub fn j2_kernel_lattice(ks: &[i64]) -> Result<J2KernelLattice, JTheoryError> {
    if ks.is_empty() {
        return Err(JTheoryError::NoExponents);
    }
    let mut generators = Vec::new();
    for &k in ks {
        for b in [KOClass::y(), KOClass::y_squared()] {
            generators.push(adams_psi_r(k, &b).sub(&b));
        }
    }
    Ok(J2KernelLattice {
        ks: ks.to_vec(),
        generators,
    })
}

/// The outcome of comparing `O(d) - 5 O(1) + 4` with `shift (O(1) - 1)`
/// under `J_(2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JamesVerdict {
    pub d: i64,
    /// `d = 2^s t` with `t` odd.
    pub s: u32,
    pub t: i64,
    pub target_shift: i64,
    /// `r(O(d) - 5 O(1) + 4) = psi^d(y) - 5y`.
    pub realified_bundle: KOClass,
    /// `psi^d(y) - 5y - shift y`, which must be 2-locally in the lattice.
    pub difference: KOClass,
    /// `psi^d(y) - psi^{2^s}(y)` lies in the lattice 2-locally.
    pub odd_part_reduction: bool,
    pub holds: bool,
}

/// `2^6 - 5` for `d = 0 mod 8`, `2^5 - 5` for `d = 4 mod 8`.
pub fn expected_shift(d: i64) -> Result<i64, JTheoryError> {
    if d % 4 != 0 {
        return Err(JTheoryError::DegreeNotDivisibleBy4(d));
    }
    Ok(if d % 8 == 0 { (1 << 6) - 5 } else { (1 << 5) - 5 })
}

/// Periodicity check at the shift the degree calls for.
pub fn james_periodicity_check(d: i64) -> Result<JamesVerdict, JTheoryError> {
    james_periodicity_against(d, expected_shift(d)?)
}

/// Periodicity check against an arbitrary shift, for controls.
pub fn james_periodicity_against(d: i64, shift: i64) -> Result<JamesVerdict, JTheoryError> {
    if d % 4 != 0 || d == 0 {
        return Err(JTheoryError::DegreeNotDivisibleBy4(d));
    }
    let lattice = j2_kernel_lattice(&[3])?;
    let s = d.unsigned_abs().trailing_zeros();
    let t = d >> s;
    let y = KOClass::y();
    let psi_d = adams_psi_r(d, &y);
    let psi_2s = adams_psi_r(1 << s, &y);
    let realified_bundle = psi_d.sub(&y.scale(&BigInt::from(5)));
    let difference = realified_bundle.sub(&y.scale(&BigInt::from(shift)));
    let odd_part_reduction = lattice.contains_2local(&psi_d.sub(&psi_2s));
    let holds = lattice.contains_2local(&difference);
    Ok(JamesVerdict {
        d,
        s,
        t,
        target_shift: shift,
        realified_bundle,
        difference,
        odd_part_reduction,
        holds,
    })
}
