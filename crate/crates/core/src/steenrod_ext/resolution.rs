//! Minimal free resolutions over the bounded Steenrod algebra, degree by
//! degree, with exact `F_p` linear algebra.

use super::algebra::{Op, SteenrodAlgebra};
use super::module::{SparseVec, SteenrodModule};
use super::SteenrodError;
use std::collections::HashMap;

/// Basis element `a * g` of a free module: generator index and index of
/// `a` in the admissible basis of its degree.
type FreeBasis = (usize, usize);

/// Element of a free module in one internal degree.
type FreeVec = HashMap<FreeBasis, u32>;

#[derive(Clone, Debug)]
pub struct Resolution {
    pub p: u32,
    pub s_max: usize,
    pub t_max: u32,
    /// `gen_degrees[s][g]`: internal degree of generator `g` of `F_s`.
    pub gen_degrees: Vec<Vec<u32>>,
    /// Differential of each generator of `F_s`, `s >= 1`, in `F_{s-1}`.
    differentials: Vec<Vec<FreeVec>>,
    /// For `F_0`, the module element each generator maps to.
    augmentation: Vec<SparseVec>,
}

/// Row-reduced rows over `F_p` together with the combination of input rows
/// that produced each; rows that reduce to zero give the kernel.
struct Echelon {
    p: u32,
    rows: Vec<(Vec<u32>, usize)>,
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| a * b % p == 1).expect("nonzero mod p")
}

impl Echelon {
    fn new(p: u32) -> Self {
        Echelon { p, rows: Vec::new() }
    }

    /// Reduce `v` by the stored rows; returns the remainder.
    fn reduce(&self, v: &mut [u32]) {
        for (row, pivot) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                let f = self.p - c;
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + f * y) % self.p;
                }
            }
        }
    }

    /// Add `v` if independent; returns whether it was.
    fn insert(&mut self, mut v: Vec<u32>) -> bool {
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[pivot], self.p);
        for x in v.iter_mut() {
            *x = *x * inv % self.p;
        }
        // keep the stored rows fully reduced at the new pivot
        for (row, _) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                let f = self.p - c;
                for (x, y) in row.iter_mut().zip(&v) {
                    *x = (*x + f * y) % self.p;
                }
            }
        }
        self.rows.push((v, pivot));
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Rank over `F_p` of a matrix given by rows.
pub fn rank_mod_p(p: u32, rows: Vec<Vec<u32>>) -> usize {
    let mut ech = Echelon::new(p);
    for r in rows {
        ech.insert(r.into_iter().map(|x| x % p).collect());
    }
    ech.rank()
}

/// Kernel of the map whose rows are `images` (one per source basis vector).
fn kernel(p: u32, images: &[Vec<u32>], target_dim: usize) -> Vec<Vec<u32>> {
    let n = images.len();
    let mut ech = Echelon::new(p);
    let mut kernel = Vec::new();
    // augmented rows [image | e_i]
    for (i, img) in images.iter().enumerate() {
        let mut v = img.clone();
        v.resize(target_dim + n, 0);
        v[target_dim + i] = 1;
        ech.reduce(&mut v);
        if v[..target_dim].iter().all(|&x| x == 0) {
            kernel.push(v[target_dim..].to_vec());
        } else {
            ech.insert(v);
        }
    }
    kernel
}

struct DegreeBasis {
    list: Vec<FreeBasis>,
    index: HashMap<FreeBasis, usize>,
}

fn degree_basis(alg: &SteenrodAlgebra, gens: &[u32], t: u32) -> DegreeBasis {
    let mut list = Vec::new();
    for (g, &dg) in gens.iter().enumerate() {
        if dg <= t {
            for a in 0..alg.dim(t - dg) {
                list.push((g, a));
            }
        }
    }
    let index = list.iter().enumerate().map(|(i, b)| (*b, i)).collect();
    DegreeBasis { list, index }
}

impl Resolution {
    /// Number of generators of `F_s` in internal degree `t`, i.e.
    /// `dim Ext^{s,t}(M, F_p)`.
    pub fn ext_dim(&self, s: usize, t: u32) -> usize {
        self.gen_degrees.get(s).map_or(0, |g| g.iter().filter(|&&d| d == t).count())
    }

    /// Generators of `F_s` in degree `t`, by index.
    pub fn generators(&self, s: usize, t: u32) -> Vec<usize> {
        self.gen_degrees
            .get(s)
            .map_or(Vec::new(), |g| (0..g.len()).filter(|&i| g[i] == t).collect())
    }

    /// Coefficient of the length-one monomial `op * g'` in `d(g)` for
    /// `g` in `F_{s+1}`. For a minimal resolution this is the Yoneda
    /// product with the class dual to `op`, from `g'^*` to `g^*`.
    pub fn product_coefficient(&self, alg: &SteenrodAlgebra, op: Op, s: usize, from: usize, to: usize) -> u32 {
        let Some(a) = alg.index_of(&[op]) else {
            return 0;
        };
        self.differentials
            .get(s + 1)
            .and_then(|d| d.get(to))
            .and_then(|v| v.get(&(from, a)))
            .copied()
            .unwrap_or(0)
    }

    pub fn augmentation(&self, g: usize) -> &SparseVec {
        &self.augmentation[g]
    }
}

/// Minimal resolution of `module` through homological degree `s_max` and
/// internal degree `t_max`.
pub fn minimal_resolution(
    alg: &SteenrodAlgebra,
    module: &SteenrodModule,
    s_max: usize,
    t_max: u32,
) -> Result<Resolution, SteenrodError> {
    if alg.p != module.p {
        return Err(SteenrodError::PrimeMismatch(alg.p, module.p));
    }
    if t_max > alg.max_degree || module.truncation.is_some_and(|top| t_max > top) {
        return Err(SteenrodError::RangeExceedsTruncation {
            t_max,
            algebra: alg.max_degree,
            module: module.truncation,
        });
    }
    let p = alg.p;
    let mut gen_degrees: Vec<Vec<u32>> = vec![Vec::new(); s_max + 1];
    let mut differentials: Vec<Vec<FreeVec>> = vec![Vec::new(); s_max + 1];
    let mut augmentation: Vec<SparseVec> = Vec::new();

    for t in 0..=t_max {
        // F_0 -> M in degree t
        let m_basis = module.basis_in_degree(t);
        let m_pos: HashMap<usize, usize> = m_basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let b0 = degree_basis(alg, &gen_degrees[0], t);
        let images: Vec<Vec<u32>> = b0
            .list
            .iter()
            .map(|&(g, a)| {
                let mono = &alg.basis(t - gen_degrees[0][g])[a];
                let img = module.apply(mono, &augmentation[g]);
                let mut v = vec![0; m_basis.len()];
                for (j, c) in img {
                    v[m_pos[&j]] = c;
                }
                v
            })
            .collect();
        let mut ech = Echelon::new(p);
        for v in &images {
            ech.insert(v.clone());
        }
        for (i, &b) in m_basis.iter().enumerate() {
            let mut e = vec![0; m_basis.len()];
            e[i] = 1;
            if ech.insert(e) {
                gen_degrees[0].push(t);
                augmentation.push(SparseVec::from([(b, 1)]));
            }
        }
        let mut prev_kernel = kernel(p, &images, m_basis.len());
        let mut prev_basis = degree_basis(alg, &gen_degrees[0], t);

        for s in 1..=s_max {
            let bs = degree_basis(alg, &gen_degrees[s], t);
            let target_dim = prev_basis.list.len();
            let images: Vec<Vec<u32>> = bs
                .list
                .iter()
                .map(|&(g, a)| {
                    let da = t - gen_degrees[s][g];
                    let mut v = vec![0; target_dim];
                    for (&(g2, a2), &c) in &differentials[s][g] {
                        let d2 = gen_degrees[s][g] - gen_degrees[s - 1][g2];
                        for (k, &e) in alg.product(da, a, d2, a2).iter().enumerate() {
                            if e != 0 {
                                let idx = prev_basis.index[&(g2, k)];
                                v[idx] = (v[idx] + c * e) % p;
                            }
                        }
                    }
                    v
                })
                .collect();
            let mut ech = Echelon::new(p);
            for v in &images {
                ech.insert(v.clone());
            }
            for k in &prev_kernel {
                // the kernel vectors are coordinates on the previous basis
                let mut full = k.clone();
                full.resize(target_dim, 0);
                if ech.insert(full.clone()) {
                    gen_degrees[s].push(t);
                    let dv: FreeVec = full
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (prev_basis.list[i], c))
                        .collect();
                    differentials[s].push(dv);
                }
            }
            debug_assert!(ech.rank() <= target_dim);
            prev_kernel = if s < s_max { kernel(p, &images, target_dim) } else { Vec::new() };
            prev_basis = degree_basis(alg, &gen_degrees[s], t);
        }
    }
    Ok(Resolution {
        p,
        s_max,
        t_max,
        gen_degrees,
        differentials,
        augmentation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ground_field(p: u32) -> SteenrodModule {
        SteenrodModule::new(p, vec![0], vec!["1".into()]).unwrap()
    }

    #[test]
    fn trivial_module_tower() {
        for p in [2, 3] {
            let alg = SteenrodAlgebra::new(p, 12).unwrap();
            let r = minimal_resolution(&alg, &ground_field(p), 5, 12).unwrap();
            for s in 0..=5 {
                assert_eq!(r.ext_dim(s, s as u32), 1, "p = {p}, s = {s}");
            }
            assert_eq!((1..=12).map(|t| r.ext_dim(0, t)).sum::<usize>(), 0);
        }
    }

    #[test]
    fn p2_sphere_low_stems() {
        // Ext over A for F_2: h0 (1,1), h1 (1,2), h2 (1,4), h3 (1,8), h1^2 (2,4)
        let alg = SteenrodAlgebra::new(2, 12).unwrap();
        let r = minimal_resolution(&alg, &ground_field(2), 3, 12).unwrap();
        for t in [1, 2, 4, 8] {
            assert_eq!(r.ext_dim(1, t), 1);
        }
        assert_eq!(r.ext_dim(1, 3), 0);
        assert_eq!(r.ext_dim(2, 4), 1);
        assert_eq!(r.ext_dim(2, 3), 0);
        // h0 * h0 = h0^2 and h0 * h1 = 0
        let g_h0 = r.generators(1, 1)[0];
        let g_h0sq = r.generators(2, 2)[0];
        assert_eq!(r.product_coefficient(&alg, Op::P(1), 1, g_h0, g_h0sq), 1);
    }
}
