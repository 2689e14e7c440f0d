//! Adem reduction checked against actions on cohomology rings computed from
//! the Cartan formula alone: `(RP^infty)^4` at `p = 2` and `(BZ/3)^3` at `p = 3`.

use hypermono::steenrod_ext::algebra::{adem_reduce_with, monomial_degree, op_degree, Strategy};
use hypermono::steenrod_ext::{adem_reduce, admissible_basis, parse_word, thom_module, Op, SteenrodElement};
use std::collections::BTreeMap;

fn binom(n: u32, k: u32, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    let mut row = vec![1u32];
    for _ in 0..n {
        let mut next = vec![1u32; row.len() + 1];
        for j in 1..row.len() {
            next[j] = (row[j - 1] + row[j]) % p;
        }
        row = next;
    }
    row[k as usize]
}

/// One factor: `y^e x^a`, with `y` absent at `p = 2` (there `x` has degree 1).
type Factor = (u32, u32);
type Mono = Vec<Factor>;
type Poly = BTreeMap<Mono, u32>;

fn add(p: u32, acc: &mut Poly, m: Mono, c: u32) {
    let e = acc.entry(m.clone()).or_insert(0);
    *e = (*e + c) % p;
    if *e == 0 {
        acc.remove(&m);
    }
}

fn factor_degree(p: u32, f: Factor) -> u32 {
    if p == 2 {
        f.1
    } else {
        f.0 + 2 * f.1
    }
}

/// Reduced power or square of index `i` on a single factor.
fn power_on_factor(p: u32, i: u32, f: Factor) -> Option<(Factor, u32)> {
    let (e, a) = f;
    let c = binom(a, i, p);
    if c == 0 {
        return None;
    }
    Some(if p == 2 { ((0, a + i), c) } else { ((e, a + (p - 1) * i), c) })
}

fn apply_op(p: u32, op: Op, v: &Poly) -> Poly {
    let mut out = Poly::new();
    for (m, &c) in v {
        match op {
            Op::Beta => {
                let mut sign_odd = false;
                for (j, &f) in m.iter().enumerate() {
                    if f.0 == 1 {
                        let mut n = m.clone();
                        n[j] = (0, f.1 + 1);
                        let k = if sign_odd { p - 1 } else { 1 };
                        add(p, &mut out, n, c * k % p);
                    }
                    if factor_degree(p, f) % 2 == 1 {
                        sign_odd = !sign_odd;
                    }
                }
            }
            Op::P(i) => {
                // Cartan: distribute i over the factors
                let mut partial: Vec<(Mono, u32, u32)> = vec![(Vec::new(), 1, 0)];
                for &f in m {
                    let mut next = Vec::new();
                    for (pre, pc, used) in &partial {
                        for k in 0..=(i - used) {
                            if let Some((g, gc)) = power_on_factor(p, k, f) {
                                let mut q = pre.clone();
                                q.push(g);
                                next.push((q, pc * gc % p, used + k));
                            }
                        }
                    }
                    partial = next;
                }
                for (q, qc, used) in partial {
                    if used == i {
                        add(p, &mut out, q, c * qc % p);
                    }
                }
            }
        }
    }
    out
}

fn apply_word(p: u32, w: &[Op], v: &Poly) -> Poly {
    w.iter().rev().fold(v.clone(), |acc, &op| apply_op(p, op, &acc))
}

fn apply_element(p: u32, e: &SteenrodElement, v: &Poly) -> Poly {
    let mut out = Poly::new();
    for (m, &c) in &e.terms {
        for (q, qc) in apply_word(p, m, v) {
            add(p, &mut out, q, c * qc % p);
        }
    }
    out
}

/// All monomials in `n` factors of total degree at most `max`.
fn test_monomials(p: u32, n: usize, max: u32) -> Vec<Mono> {
    let singles: Vec<Factor> = (0..=max)
        .flat_map(|a| if p == 2 { vec![(0, a)] } else { vec![(0, a), (1, a)] })
        .filter(|&f| factor_degree(p, f) <= max)
        .collect();
    let mut out: Vec<Mono> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|pre| {
                let used: u32 = pre.iter().map(|&f| factor_degree(p, f)).sum();
                singles
                    .iter()
                    .filter(move |&&f| used + factor_degree(p, f) <= max)
                    .map(move |&f| {
                        let mut q = pre.clone();
                        q.push(f);
                        q
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn generators(p: u32, max: u32) -> Vec<Op> {
    let mut g: Vec<Op> = if p == 2 { Vec::new() } else { vec![Op::Beta] };
    g.extend((1..).map(Op::P).take_while(|&o| op_degree(p, o) <= max));
    g
}

fn words(p: u32, max_len: usize, max_deg: u32) -> Vec<Vec<Op>> {
    let gens = generators(p, max_deg);
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Op>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                gens.iter().filter_map(move |&g| {
                    let mut v = w.clone();
                    v.push(g);
                    (monomial_degree(p, &v) <= max_deg).then_some(v)
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn check_against_ring(p: u32, factors: usize, mono_deg: u32, word_deg: u32) {
    let monos = test_monomials(p, factors, mono_deg);
    for w in words(p, 3, word_deg) {
        let reduced = adem_reduce(p, &w).unwrap();
        assert!(reduced.is_reduced());
        for m in &monos {
            let v = Poly::from([(m.clone(), 1)]);
            assert_eq!(
                apply_word(p, &w, &v),
                apply_element(p, &reduced, &v),
                "p = {p}, word {w:?} = {reduced}, on {m:?}"
            );
        }
    }
}

#[test]
fn adem_relations_hold_on_products_of_rp_infinity() {
    check_against_ring(2, 4, 4, 12);
}

#[test]
fn adem_relations_hold_on_products_of_bz3() {
    check_against_ring(3, 3, 5, 13);
}

#[test]
fn admissible_monomials_act_independently() {
    // the admissible basis in degree n is independent on n factors
    for (p, factors, mono_deg, top) in [(2u32, 7usize, 7u32, 7u32), (3, 3, 6, 9)] {
        let monos = test_monomials(p, factors, mono_deg);
        for n in 0..=top {
            let basis = admissible_basis(p, n);
            let rows: Vec<Vec<Poly>> = basis
                .iter()
                .map(|b| monos.iter().map(|m| apply_word(p, b, &Poly::from([(m.clone(), 1)]))).collect())
                .collect();
            // flatten to coefficient vectors and take the rank mod p
            let mut keys: Vec<(usize, Mono)> = Vec::new();
            for r in &rows {
                for (i, poly) in r.iter().enumerate() {
                    for k in poly.keys() {
                        if !keys.contains(&(i, k.clone())) {
                            keys.push((i, k.clone()));
                        }
                    }
                }
            }
            let mut mat: Vec<Vec<u32>> = rows
                .iter()
                .map(|r| keys.iter().map(|(i, k)| r[*i].get(k).copied().unwrap_or(0)).collect())
                .collect();
            assert_eq!(rank(p, &mut mat), basis.len(), "p = {p}, degree {n}");
        }
    }
}

fn rank(p: u32, m: &mut [Vec<u32>]) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = (1..p).find(|&b| m[r][c] * b % p == 1).unwrap();
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        r += 1;
    }
    r
}

#[test]
fn leftmost_and_rightmost_reduction_agree() {
    for p in [2u32, 3] {
        for w in words(p, 3, 12) {
            let a = adem_reduce_with(p, &w, Strategy::Leftmost, 12).unwrap();
            let b = adem_reduce_with(p, &w, Strategy::Rightmost, 12).unwrap();
            assert_eq!(a, b, "p = {p}, {w:?}");
        }
    }
}

#[test]
fn adem_relations_hold_on_the_thom_module() {
    for (p, d, top) in [(2u32, 4i64, 16u32), (2, 6, 16), (3, 3, 16), (3, 5, 16)] {
        let m = thom_module(d, p, top).unwrap();
        for w in words(p, 2, top) {
            let reduced = adem_reduce(p, &w).unwrap();
            let deg = monomial_degree(p, &w);
            for t in (0..=top - deg).step_by(2) {
                let lhs = m.action_matrix(&w, t);
                let mut rhs = vec![vec![0u32; lhs.first().map_or(0, |r| r.len())]; lhs.len()];
                for (mono, &c) in &reduced.terms {
                    for (i, row) in m.action_matrix(mono, t).iter().enumerate() {
                        for (j, &x) in row.iter().enumerate() {
                            rhs[i][j] = (rhs[i][j] + c * x) % p;
                        }
                    }
                }
                assert_eq!(lhs, rhs, "p = {p}, d = {d}, {w:?} in degree {t}");
            }
        }
    }
}

#[test]
fn conformance_products_at_three() {
    let data = include_str!("data/p3_products.txt");
    let mut n = 0;
    for line in data.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let (lhs, rhs) = line.split_once("=>").expect("word => reduced");
        let w = parse_word(3, lhs.trim()).unwrap();
        assert_eq!(adem_reduce(3, &w).unwrap().to_string(), rhs.trim(), "{lhs}");
        n += 1;
    }
    assert!(n >= 20);
}
