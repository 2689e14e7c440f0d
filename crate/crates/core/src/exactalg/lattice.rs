use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use super::ExactAlgError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

fn check_dim(gens: &IntMatrix, target: &[BigInt]) -> Result<(), ExactAlgError> {
    if gens.cols() != target.len() {
        return Err(ExactAlgError::DimensionMismatch {
            expected: gens.cols(),
            found: target.len(),
        });
    }
    Ok(())
}

/// Integer solution `w` of `w * gens = target` (rows of `gens` span the lattice).
pub fn solve_integer(gens: &IntMatrix, target: &[BigInt]) -> Result<Option<Vec<BigInt>>, ExactAlgError> {
    check_dim(gens, target)?;
    let s = smith_normal_form(gens);
    let y = s.right.left_apply(target)?;
    let mut z = vec![BigInt::zero(); gens.rows()];
    for (j, yj) in y.iter().enumerate() {
        let dj = s.diag.get(j).cloned().unwrap_or_else(BigInt::zero);
        if dj.is_zero() {
            if !yj.is_zero() {
                return Ok(None);
            }
        } else {
            let (q, r) = yj.div_rem(&dj);
            if !r.is_zero() {
                return Ok(None);
            }
            z[j] = q;
        }
    }
    Ok(Some(s.left.left_apply(&z)?))
}

pub fn lattice_membership(gens: &IntMatrix, target: &[BigInt]) -> Result<bool, ExactAlgError> {
    Ok(solve_integer(gens, target)?.is_some())
}

/// Index of the lattice in its saturation: the product of the nonzero
/// invariant factors of the generator matrix.
pub fn lattice_index(gens: &IntMatrix) -> BigInt {
    smith_normal_form(gens)
        .diag
        .iter()
        .filter(|v| !v.is_zero())
        .fold(BigInt::one(), |a, b| a * b)
}

/// Membership in `L tensor Z_(2)`: some odd multiple of `target` lies in `L`.
/// Only odd divisors of the lattice index need to be tried, since the class of
/// `target` in the saturation modulo `L` has order dividing that index.
pub fn lattice_membership_2local(gens: &IntMatrix, target: &[BigInt]) -> Result<bool, ExactAlgError> {
    check_dim(gens, target)?;
    let mut odd = lattice_index(gens).abs();
    let two = BigInt::from(2);
    while !odd.is_zero() && odd.is_even() {
        odd /= &two;
    }
    let mut m = BigInt::one();
    while m <= odd {
        if odd.is_multiple_of(&m) {
            let scaled: Vec<BigInt> = target.iter().map(|v| v * &m).collect();
            if lattice_membership(gens, &scaled)? {
                return Ok(true);
            }
        }
        m += 2;
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|a| BigInt::from(*a)).collect()
    }

    #[test]
    fn two_local_membership_needs_odd_multiple() {
        let l = IntMatrix::from_rows(2, &[[8, 6], [0, 80]]).unwrap();
        assert!(!lattice_membership(&l, &v(&[64, 0])).unwrap());
        assert!(lattice_membership_2local(&l, &v(&[64, 0])).unwrap());
        assert!(!lattice_membership_2local(&l, &v(&[32, 0])).unwrap());
        assert!(matches!(
            lattice_membership_2local(&l, &v(&[1])),
            Err(ExactAlgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn solve_returns_coefficients() {
        let l = IntMatrix::from_rows(3, &[[1, 2, 0], [0, 3, 3]]).unwrap();
        let w = solve_integer(&l, &v(&[2, 7, 3])).unwrap().unwrap();
        assert_eq!(l.transpose().mul(&IntMatrix::from_big_rows(1, w.iter().map(|x| vec![x.clone()]).collect()).unwrap()).unwrap().transpose().row(0), v(&[2, 7, 3]).as_slice());
        assert!(solve_integer(&l, &v(&[0, 1, 0])).unwrap().is_none());
    }
}
