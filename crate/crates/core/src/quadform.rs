//! Quadratic refinements of the standard symplectic form, the automorphism
//! groups they cut out over `Z/n`, and the model of `pi_3(X_d)` as
//! `Z/d{eta} + H_3(X_d)`.
//!
//! Vectors over `F_2` are bitmasks: bit `2i` is `e_{i+1}`, bit `2i+1` is `f_{i+1}`.

use crate::exactalg::IntMatrix;
use crate::hypersurface::{check_degree, compute_invariants, mu_restriction_on_eta, EtaRestriction, HypersurfaceError};
use serde::Serialize;
use std::collections::{BTreeSet, HashSet, VecDeque};
use thiserror::Error;

/// Largest group the closure routines will enumerate.
pub const MAX_GROUP_ORDER: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadformError {
    #[error("genus {g} is outside the supported range for modulus {n}")]
    StateSpace { n: u32, g: usize },
    #[error("modulus {0} unsupported (expected 2, 3 or 4)")]
    Modulus(u32),
    #[error("group closure exceeded {MAX_GROUP_ORDER} elements")]
    GroupTooLarge,
    #[error("q must be given on all {expected} basis vectors, got {found}")]
    BadQValues { expected: usize, found: usize },
    #[error("no quadratic refinement descends for even degree {0}")]
    EvenDegree(i64),
    #[error(transparent)]
    Degree(#[from] HypersurfaceError),
}

/// `(F_2^{2g}, lambda, q)` with `lambda` standard symplectic and `q`
/// determined by its values on the basis `e_1, f_1, ..., e_g, f_g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticSpace {
    g: usize,
    q_values: Vec<u8>,
}

impl QuadraticSpace {
    pub fn new(g: usize, q_values: &[u8]) -> Result<Self, QuadformError> {
        if q_values.len() != 2 * g {
            return Err(QuadformError::BadQValues {
                expected: 2 * g,
                found: q_values.len(),
            });
        }
        if g > 15 {
            return Err(QuadformError::StateSpace { n: 2, g });
        }
        Ok(QuadraticSpace {
            g,
            q_values: q_values.iter().map(|v| v & 1).collect(),
        })
    }

    /// Normal form with the given Arf invariant: `q` vanishes on the basis,
    /// except `q(e_1) = q(f_1) = 1` when `arf = 1`.
    pub fn with_arf(g: usize, arf: u8) -> Result<Self, QuadformError> {
        let mut q = vec![0u8; 2 * g];
        if arf & 1 == 1 {
            if g == 0 {
                return Err(QuadformError::StateSpace { n: 2, g });
            }
            q[0] = 1;
            q[1] = 1;
        }
        Self::new(g, &q)
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn q_values(&self) -> &[u8] {
        &self.q_values
    }

    pub fn dim(&self) -> usize {
        2 * self.g
    }

    pub fn lambda(&self, a: u32, b: u32) -> u8 {
        let mut s = 0;
        for i in 0..self.g {
            let (ae, af) = ((a >> (2 * i)) & 1, (a >> (2 * i + 1)) & 1);
            let (be, bf) = ((b >> (2 * i)) & 1, (b >> (2 * i + 1)) & 1);
            s ^= (ae & bf) ^ (af & be);
        }
        s as u8
    }

    pub fn q(&self, v: u32) -> u8 {
        let mut s = 0u8;
        for (j, qv) in self.q_values.iter().enumerate() {
            if (v >> j) & 1 == 1 {
                s ^= qv;
            }
        }
        for i in 0..self.g {
            s ^= (((v >> (2 * i)) & (v >> (2 * i + 1))) & 1) as u8;
        }
        s
    }

    pub fn arf(&self) -> u8 {
        (0..self.g).fold(0, |a, i| a ^ (self.q_values[2 * i] & self.q_values[2 * i + 1]))
    }

    /// Number of vectors (including 0) with `q = 0`.
    pub fn zero_count(&self) -> u64 {
        (0u32..1 << self.dim()).filter(|&v| self.q(v) == 0).count() as u64
    }

    /// The zero count predicted by the Arf invariant.
    pub fn expected_zero_count(&self) -> u64 {
        if self.g == 0 {
            return 1;
        }
        let base = 1u64 << (2 * self.g - 1);
        let shift = 1u64 << (self.g - 1);
        if self.arf() == 0 {
            base + shift
        } else {
            base - shift
        }
    }

    /// Checks `q(a+b) = q(a) + q(b) + lambda(a,b)` on all pairs.
    pub fn satisfies_polarization(&self) -> bool {
        let n = 1u32 << self.dim();
        (0..n).all(|a| (0..n).all(|b| self.q(a ^ b) == self.q(a) ^ self.q(b) ^ self.lambda(a, b)))
    }

    fn to_vec(&self, v: u32) -> Vec<u8> {
        (0..self.dim()).map(|j| ((v >> j) & 1) as u8).collect()
    }

    fn from_vec(v: &[u8]) -> u32 {
        v.iter().enumerate().fold(0, |a, (j, x)| a | (((*x & 1) as u32) << j))
    }
}

pub fn arf(space: &QuadraticSpace) -> u8 {
    space.arf()
}

/// Arf invariant of the refinement on `H_3(X_d; F_2)` for odd `d`.
pub fn arf_of_hypersurface(d: i64) -> Result<u8, QuadformError> {
    let d = check_degree(d)?;
    match d.rem_euclid(8) {
        1 | 7 => Ok(0),
        3 | 5 => Ok(1),
        _ => Err(QuadformError::EvenDegree(d)),
    }
}

/// Square matrix over `Z/n`, row-major, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ModMatrix {
    pub n: u32,
    pub dim: usize,
    pub entries: Vec<u8>,
}

impl ModMatrix {
    pub fn identity(n: u32, dim: usize) -> Self {
        let mut entries = vec![0u8; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1 % n as u8;
        }
        ModMatrix { n, dim, entries }
    }

    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        let n = self.n;
        (0..self.dim)
            .map(|r| {
                let s: u32 = (0..self.dim).map(|c| self.entries[r * self.dim + c] as u32 * v[c] as u32).sum();
                (s % n) as u8
            })
            .collect()
    }

    pub fn compose(&self, other: &ModMatrix) -> ModMatrix {
        let d = self.dim;
        let mut entries = vec![0u8; d * d];
        for r in 0..d {
            for c in 0..d {
                let s: u32 = (0..d)
                    .map(|k| self.entries[r * d + k] as u32 * other.entries[k * d + c] as u32)
                    .sum();
                entries[r * d + c] = (s % self.n) as u8;
            }
        }
        ModMatrix {
            n: self.n,
            dim: d,
            entries,
        }
    }

    fn from_columns(n: u32, cols: &[Vec<u8>]) -> Self {
        let dim = cols.len();
        let mut entries = vec![0u8; dim * dim];
        for (c, col) in cols.iter().enumerate() {
            for r in 0..dim {
                entries[r * dim + c] = col[r];
            }
        }
        ModMatrix { n, dim, entries }
    }
}

/// Standard symplectic pairing over `Z/n`.
pub fn lambda_mod(n: u32, g: usize, a: &[u8], b: &[u8]) -> u8 {
    let mut s: i64 = 0;
    for i in 0..g {
        s += a[2 * i] as i64 * b[2 * i + 1] as i64 - a[2 * i + 1] as i64 * b[2 * i] as i64;
    }
    s.rem_euclid(n as i64) as u8
}

fn all_vectors(n: u32, dim: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..n as u8).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn check_range(n: u32, g: usize) -> Result<(), QuadformError> {
    match n {
        2 if g <= 3 => Ok(()),
        3 | 4 if g <= 2 => Ok(()),
        2..=4 => Err(QuadformError::StateSpace { n, g }),
        _ => Err(QuadformError::Modulus(n)),
    }
}

/// Generators of the image in `GL_{2g}(Z/n)` of automorphisms of
/// `(Z^{2g}, lambda, q)`: the transvections `x -> x + c lambda(x,v) v`
/// that preserve `q` (`c = 1` needs `q(v) = 1`; `c = 2` always works; for
/// odd `n` every symplectic transvection is such an image), together with
/// the permutations of hyperbolic pairs on which `q` agrees. Transvections
/// alone generate an index-2 subgroup of `O^+_4(F_2)`, so the pair swaps
/// are needed for transitivity.
pub fn automorphism_generators(space: &QuadraticSpace, n: u32) -> Result<Vec<ModMatrix>, QuadformError> {
    check_range(n, space.g)?;
    let dim = space.dim();
    let g = space.g;
    let mut gens = BTreeSet::new();
    let basis: Vec<Vec<u8>> = (0..dim)
        .map(|j| (0..dim).map(|k| (j == k) as u8).collect())
        .collect();
    for v in all_vectors(n, dim) {
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let v2: Vec<u8> = v.iter().map(|x| x & 1).collect();
        let qv = space.q(QuadraticSpace::from_vec(&v2));
        let mut coeffs = Vec::new();
        if n % 2 == 1 || qv == 1 {
            coeffs.push(1u32);
        }
        if n % 2 == 0 && n > 2 {
            coeffs.push(2);
        }
        for c in coeffs {
            let cols: Vec<Vec<u8>> = basis
                .iter()
                .map(|b| {
                    let l = lambda_mod(n, g, b, &v) as u32 * c;
                    b.iter().zip(&v).map(|(bi, vi)| ((*bi as u32 + l * *vi as u32) % n) as u8).collect()
                })
                .collect();
            gens.insert(ModMatrix::from_columns(n, &cols));
        }
    }
    for i in 0..g {
        for j in i + 1..g {
            let qi = (space.q_values[2 * i], space.q_values[2 * i + 1]);
            let qj = (space.q_values[2 * j], space.q_values[2 * j + 1]);
            if qi != qj {
                continue;
            }
            let mut perm: Vec<usize> = (0..dim).collect();
            perm.swap(2 * i, 2 * j);
            perm.swap(2 * i + 1, 2 * j + 1);
            let cols: Vec<Vec<u8>> = perm.iter().map(|&p| basis[p].clone()).collect();
            gens.insert(ModMatrix::from_columns(n, &cols));
        }
    }
    Ok(gens.into_iter().collect())
}

/// Closure of [`automorphism_generators`] under composition, sorted.
pub fn transvection_group(space: &QuadraticSpace, n: u32) -> Result<Vec<ModMatrix>, QuadformError> {
    let gens = automorphism_generators(space, n)?;
    let id = ModMatrix::identity(n, space.dim());
    let mut seen: HashSet<ModMatrix> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for gen in &gens {
            let p = gen.compose(&m);
            if seen.insert(p.clone()) {
                if seen.len() > MAX_GROUP_ORDER {
                    return Err(QuadformError::GroupTooLarge);
                }
                queue.push_back(p);
            }
        }
    }
    let mut out: Vec<ModMatrix> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Every invertible `F_2`-linear map preserving `q`, by backtracking over
/// images of the symplectic basis. Independent of the generator choice above.
pub fn orthogonal_group_f2(space: &QuadraticSpace) -> Result<Vec<ModMatrix>, QuadformError> {
    check_range(2, space.g)?;
    let dim = space.dim();
    let mut out = Vec::new();
    let mut images: Vec<u32> = Vec::new();
    fn extend(space: &QuadraticSpace, dim: usize, images: &mut Vec<u32>, out: &mut Vec<ModMatrix>) {
        let j = images.len();
        if j == dim {
            let cols: Vec<Vec<u8>> = images.iter().map(|&v| space.to_vec(v)).collect();
            out.push(ModMatrix::from_columns(2, &cols));
            return;
        }
        for v in 1u32..1 << dim {
            if space.q(v) != space.q_values[j] {
                continue;
            }
            let ok = images
                .iter()
                .enumerate()
                .all(|(k, &w)| space.lambda(w, v) == space.lambda(1 << k, 1 << j));
            if ok {
                images.push(v);
                extend(space, dim, images, out);
                images.pop();
            }
        }
    }
    extend(space, dim, &mut images, &mut out);
    out.sort();
    Ok(out)
}

/// Orbits of the automorphism group on nonzero vectors of `F_2^{2g}`,
/// each sorted, listed by smallest element.
pub fn orbit_check(space: &QuadraticSpace) -> Result<Vec<Vec<u32>>, QuadformError> {
    let gens = automorphism_generators(space, 2)?;
    let total = 1u32 << space.dim();
    let mut assigned = vec![false; total as usize];
    let mut orbits = Vec::new();
    for start in 1..total {
        if assigned[start as usize] {
            continue;
        }
        let mut orbit = vec![start];
        assigned[start as usize] = true;
        let mut k = 0;
        while k < orbit.len() {
            let v = space.to_vec(orbit[k]);
            for gen in &gens {
                let w = QuadraticSpace::from_vec(&gen.apply(&v));
                if !assigned[w as usize] {
                    assigned[w as usize] = true;
                    orbit.push(w);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    Ok(orbits)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantSubgroupReport {
    pub n: u32,
    pub g: usize,
    pub arf: u8,
    pub subgroups_checked: usize,
    pub all_of_form_k_times_lattice: bool,
    /// Vectors whose invariant closure is not `k (Z/n)^{2g}`.
    pub witnesses: Vec<Vec<u8>>,
    /// The values of `k = gcd(content(v), n)` that occurred.
    pub k_values: Vec<u32>,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn encode(n: u32, v: &[u8]) -> usize {
    v.iter().fold(0usize, |a, x| a * n as usize + *x as usize)
}

/// Smallest subgroup of `(Z/n)^{2g}` containing `v` and stable under `gens`,
/// as a membership table indexed by [`encode`].
fn invariant_closure(n: u32, dim: usize, gens: &[ModMatrix], v: &[u8]) -> Vec<bool> {
    let size = (n as usize).pow(dim as u32);
    let mut member = vec![false; size];
    let mut elems: Vec<Vec<u8>> = vec![vec![0; dim]];
    member[0] = true;
    let mut pending = vec![v.to_vec()];
    while let Some(w) = pending.pop() {
        if member[encode(n, &w)] {
            continue;
        }
        // S <- S + <w>
        let mut added = Vec::new();
        let mut multiple = w.clone();
        loop {
            for s in &elems {
                let sum: Vec<u8> = s.iter().zip(&multiple).map(|(a, b)| ((a + b) as u32 % n) as u8).collect();
                let idx = encode(n, &sum);
                if !member[idx] {
                    member[idx] = true;
                    added.push(sum);
                }
            }
            multiple = multiple.iter().zip(&w).map(|(a, b)| ((a + b) as u32 % n) as u8).collect();
            if multiple.iter().all(|&x| x == 0) {
                break;
            }
        }
        elems.extend(added);
        for gen in gens {
            pending.push(gen.apply(&w));
        }
    }
    member
}

/// Checks on `(Z/n)^{2g}` that each vector generates, as an invariant
/// subgroup, exactly `gcd(content(v), n) (Z/n)^{2g}`.
pub fn invariant_subgroup_scan(n: u32, g: usize, arf: u8) -> Result<InvariantSubgroupReport, QuadformError> {
    if !(2..=4).contains(&n) {
        return Err(QuadformError::Modulus(n));
    }
    if g != 2 {
        return Err(QuadformError::StateSpace { n, g });
    }
    let space = QuadraticSpace::with_arf(g, arf)?;
    let dim = space.dim();
    let gens = automorphism_generators(&space, n)?;
    let vectors = all_vectors(n, dim);
    let mut witnesses = Vec::new();
    let mut ks = BTreeSet::new();
    let mut checked = 0;
    for v in vectors.iter().filter(|v| v.iter().any(|&x| x != 0)) {
        checked += 1;
        let k = v.iter().fold(n, |a, &x| gcd(a, x as u32));
        ks.insert(k);
        let closure = invariant_closure(n, dim, &gens, v);
        let ok = vectors
            .iter()
            .all(|w| closure[encode(n, w)] == w.iter().all(|&x| x as u32 % k == 0));
        if !ok {
            witnesses.push(v.clone());
        }
    }
    Ok(InvariantSubgroupReport {
        n,
        g,
        arf: arf & 1,
        subgroups_checked: checked,
        all_of_form_k_times_lattice: witnesses.is_empty(),
        witnesses,
        k_values: ks.into_iter().collect(),
    })
}

/// The invariant closure of a single vector, as a sorted list of elements.
pub fn invariant_closure_of(n: u32, g: usize, arf: u8, v: &[u8]) -> Result<Vec<Vec<u8>>, QuadformError> {
    let space = QuadraticSpace::with_arf(g, arf)?;
    let gens = automorphism_generators(&space, n)?;
    let member = invariant_closure(n, space.dim(), &gens, v);
    Ok(all_vectors(n, space.dim())
        .into_iter()
        .filter(|w| member[encode(n, w)])
        .collect())
}

/// `Ker(rho) = Hom(H_3(X_d), 2 Z/d)`, a power of a cyclic group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KerRhoDescriptor {
    pub d: i64,
    /// Order of `2 Z/d`: `d` for odd `d`, `d/2` for even `d`.
    pub cyclic_order: i64,
    /// Number of cyclic factors, `b3 = 2g`.
    pub exponent: i64,
}

impl KerRhoDescriptor {
    /// Invariant factors; empty for the trivial group.
    pub fn invariant_factors(&self) -> Vec<i64> {
        if self.cyclic_order <= 1 {
            Vec::new()
        } else {
            vec![self.cyclic_order; self.exponent as usize]
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.cyclic_order <= 1 || self.exponent == 0
    }
}

pub fn ker_rho_description(d: i64) -> Result<KerRhoDescriptor, QuadformError> {
    let h = compute_invariants(d)?;
    let cyclic_order = if d % 2 == 0 { d / 2 } else { d };
    Ok(KerRhoDescriptor {
        d,
        cyclic_order,
        exponent: h.b3,
    })
}

/// `pi_3 = Z/d{eta} + H` with `H = Z^{2g}` standard symplectic, extension
/// taken with the zero cocycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi3Model {
    pub d: i64,
    pub g: usize,
    pub mu_on_eta: EtaRestriction,
    pub space: QuadraticSpace,
}

/// Element `a eta + h` of the model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi3Element {
    pub eta: i64,
    pub h: Vec<i64>,
}

impl Pi3Model {
    /// A model with `H` of genus `g` and Arf invariant `arf` for the
    /// `F_2`-reduction of the refinement.
    pub fn new(d: i64, g: usize, arf: u8) -> Result<Self, QuadformError> {
        Ok(Pi3Model {
            d,
            g,
            mu_on_eta: mu_restriction_on_eta(d)?,
            space: QuadraticSpace::with_arf(g, arf)?,
        })
    }

    pub fn lambda(&self, a: &Pi3Element, b: &Pi3Element) -> i64 {
        (0..self.g)
            .map(|i| a.h[2 * i] * b.h[2 * i + 1] - a.h[2 * i + 1] * b.h[2 * i])
            .sum()
    }

    pub fn mu(&self, a: &Pi3Element) -> u8 {
        let bits: Vec<u8> = a.h.iter().map(|x| x.rem_euclid(2) as u8).collect();
        self.mu_on_eta.apply(a.eta) ^ self.space.q(QuadraticSpace::from_vec(&bits))
    }

    /// The Gram matrix of `lambda` on `H` is unimodular, so the radical of
    /// `lambda` on the model is the `Z/d{eta}` summand.
    pub fn radical_is_eta_summand(&self) -> bool {
        let n = 2 * self.g;
        let mut gram = IntMatrix::zeros(n, n);
        for i in 0..self.g {
            gram.set(2 * i, 2 * i + 1, 1.into());
            gram.set(2 * i + 1, 2 * i, (-1).into());
        }
        let det = gram.determinant().expect("square");
        det == 1.into() || det == (-1).into()
    }

    /// Counts homomorphisms `f: H -> Z/d` for which
    /// `a eta + h -> (a + f(h)) eta + h` preserves `mu`, by enumerating all
    /// `d^{2g}` of them.
    pub fn count_mu_preserving_shears(&self) -> u64 {
        let n = 2 * self.g;
        let d = self.d;
        let mut count = 0;
        let mut f = vec![0i64; n];
        loop {
            // preserves mu iff mu_on_eta(f(e_j)) = 0 for every basis vector
            if f.iter().all(|&v| self.mu_on_eta.apply(v) == 0) {
                count += 1;
            }
            let mut j = 0;
            loop {
                if j == n {
                    return count;
                }
                f[j] += 1;
                if f[j] < d {
                    break;
                }
                f[j] = 0;
                j += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arf_examples() {
        assert_eq!(QuadraticSpace::new(1, &[0, 0]).unwrap().arf(), 0);
        assert_eq!(QuadraticSpace::new(1, &[1, 1]).unwrap().arf(), 1);
        let s = QuadraticSpace::new(2, &[1, 1, 1, 1]).unwrap();
        assert_eq!(s.arf(), 0);
        assert_eq!(s.zero_count(), 10);
        assert_eq!(arf_of_hypersurface(7).unwrap(), 0);
        assert_eq!(arf_of_hypersurface(3).unwrap(), 1);
        assert_eq!(arf_of_hypersurface(9).unwrap(), 0);
        assert!(arf_of_hypersurface(4).is_err());
    }

    #[test]
    fn group_orders() {
        let h1 = QuadraticSpace::with_arf(1, 0).unwrap();
        assert_eq!(transvection_group(&h1, 2).unwrap().len(), 2);
        let h2 = QuadraticSpace::with_arf(2, 0).unwrap();
        let grp = transvection_group(&h2, 2).unwrap();
        assert_eq!(grp.len(), 72);
        assert!(grp.contains(&ModMatrix::identity(2, 4)));
        assert_eq!(grp, orthogonal_group_f2(&h2).unwrap());
    }

    #[test]
    fn orbit_sizes() {
        let sizes = |g, a| {
            let mut s: Vec<usize> = orbit_check(&QuadraticSpace::with_arf(g, a).unwrap())
                .unwrap()
                .iter()
                .map(|o| o.len())
                .collect();
            s.sort();
            s
        };
        assert_eq!(sizes(2, 0), vec![6, 9]);
        assert_eq!(sizes(2, 1), vec![5, 10]);
        assert_eq!(sizes(1, 0), vec![1, 2]);
    }

    #[test]
    fn closures_mod_n() {
        let c = invariant_closure_of(4, 2, 0, &[2, 0, 0, 0]).unwrap();
        assert_eq!(c.len(), 16);
        assert!(c.iter().all(|v| v.iter().all(|x| x % 2 == 0)));
        assert_eq!(invariant_closure_of(3, 2, 0, &[1, 0, 0, 0]).unwrap().len(), 81);
    }

    #[test]
    fn scans_pass() {
        for n in 2..=4 {
            for arf in 0..=1 {
                let r = invariant_subgroup_scan(n, 2, arf).unwrap();
                assert!(r.all_of_form_k_times_lattice, "{r:?}");
                assert_eq!(r.subgroups_checked, (n as usize).pow(4) - 1);
            }
        }
    }

    #[test]
    fn ker_rho() {
        assert_eq!(ker_rho_description(3).unwrap().invariant_factors(), vec![3; 10]);
        assert_eq!(ker_rho_description(4).unwrap().invariant_factors(), vec![2; 60]);
        assert!(ker_rho_description(1).unwrap().is_trivial());
    }
}
