//! The mod-p Steenrod algebra for `p = 2, 3` in bounded degree, on the
//! admissible basis.

use super::SteenrodError;
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// A generator: the Bockstein, or a reduced power. At `p = 2`, `P(i)` is
/// `Sq^i` and `Beta` is not used (it would be `Sq^1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Beta,
    P(u32),
}

pub type Monomial = Vec<Op>;

pub(crate) fn check_prime(p: u32) -> Result<(), SteenrodError> {
    if p == 2 || p == 3 {
        Ok(())
    } else {
        Err(SteenrodError::UnsupportedPrime(p))
    }
}

pub fn op_degree(p: u32, op: Op) -> u32 {
    match op {
        Op::Beta => 1,
        Op::P(i) if p == 2 => i,
        Op::P(i) => 2 * (p - 1) * i,
    }
}

pub fn monomial_degree(p: u32, m: &[Op]) -> u32 {
    m.iter().map(|&o| op_degree(p, o)).sum()
}

pub fn is_admissible(p: u32, m: &[Op]) -> bool {
    if p == 2 {
        return m.iter().all(|o| matches!(o, Op::P(i) if *i > 0))
            && m.windows(2).all(|w| match (w[0], w[1]) {
                (Op::P(a), Op::P(b)) => a >= 2 * b,
                _ => false,
            });
    }
    if m.iter().any(|o| *o == Op::P(0)) {
        return false;
    }
    for (i, o) in m.iter().enumerate() {
        match (o, m.get(i + 1), m.get(i + 2)) {
            (Op::Beta, Some(Op::Beta), _) => return false,
            (Op::P(a), Some(Op::P(b)), _) if *a < p * b => return false,
            (Op::P(a), Some(Op::Beta), Some(Op::P(b))) if *a < p * b + 1 => return false,
            _ => {}
        }
    }
    true
}

pub(crate) fn fmt_monomial(p: u32, m: &[Op]) -> String {
    if m.is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = m
        .iter()
        .map(|o| match (p, o) {
            (2, Op::P(i)) => format!("Sq^{i}"),
            (2, Op::Beta) => "Sq^1".into(),
            (_, Op::Beta) => "b".into(),
            (_, Op::P(i)) => format!("P^{i}"),
        })
        .collect();
    parts.join(" ")
}

/// Parse a word such as `Sq2 Sq^1`, `P1 b P^2` or `beta`.
pub fn parse_word(p: u32, text: &str) -> Result<Monomial, SteenrodError> {
    check_prime(p)?;
    let bad = |t: &str| SteenrodError::BadToken(t.to_string());
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        let exponent = |rest: &str| -> Result<u32, SteenrodError> {
            rest.trim_start_matches('^').parse::<u32>().map_err(|_| bad(tok))
        };
        if let Some(rest) = tok.strip_prefix("Sq") {
            if p != 2 {
                return Err(bad(tok));
            }
            out.push(Op::P(exponent(rest)?));
        } else if let Some(rest) = tok.strip_prefix('P') {
            if p == 2 {
                return Err(bad(tok));
            }
            out.push(Op::P(exponent(rest)?));
        } else if matches!(tok, "b" | "beta" | "β") && p != 2 {
            out.push(Op::Beta);
        } else {
            return Err(bad(tok));
        }
    }
    Ok(out)
}

/// A homogeneous or inhomogeneous sum of admissible monomials over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteenrodElement {
    pub p: u32,
    pub terms: BTreeMap<Monomial, u32>,
}

impl SteenrodElement {
    pub fn zero(p: u32) -> Self {
        SteenrodElement {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        let p = self.p;
        let e = self.terms.entry(m.clone()).or_insert(0);
        *e = (*e + c) % p;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn coefficient(&self, m: &[Op]) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn is_reduced(&self) -> bool {
        self.terms.keys().all(|m| is_admissible(self.p, m))
    }
}

impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono = fmt_monomial(self.p, m);
                if *c == 1 {
                    mono
                } else {
                    format!("{c} {mono}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for SteenrodElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `C(n, k) mod p` by Lucas' theorem; zero outside `0 <= k <= n`.
pub(crate) fn binom_mod(n: i64, k: i64, p: u32) -> u32 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let (mut n, mut k, p64) = (n as u64, k as u64, p as u64);
    let mut out = 1u64;
    while n > 0 || k > 0 {
        let (ni, ki) = (n % p64, k % p64);
        if ki > ni {
            return 0;
        }
        let mut c = 1u64;
        for j in 0..ki {
            c = c * (ni - j) / (j + 1);
        }
        out = out * (c % p64) % p64;
        n /= p64;
        k /= p64;
    }
    out as u32
}

fn sign_mod(e: i64, p: u32) -> u32 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        p - 1
    }
}

/// Which inadmissible spot to rewrite first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

enum Redex {
    Zero,
    /// Rewrite `len` tokens at the position with the given linear combination.
    Rewrite(usize, Vec<(Monomial, u32)>),
}

fn adem(p: u32, w: &[Op], i: usize) -> Option<Redex> {
    let (a, b, c) = (w.get(i).copied(), w.get(i + 1).copied(), w.get(i + 2).copied());
    if p == 2 {
        let (Some(Op::P(a)), Some(Op::P(b))) = (a, b) else {
            return None;
        };
        if a >= 2 * b {
            return None;
        }
        let (a, b) = (a as i64, b as i64);
        let terms = (0..=a / 2)
            .filter_map(|j| {
                let c = binom_mod(b - 1 - j, a - 2 * j, 2);
                (c != 0).then(|| (vec![Op::P((a + b - j) as u32), Op::P(j as u32)], c))
            })
            .collect();
        return Some(Redex::Rewrite(2, terms));
    }
    let pi = p as i64;
    match (a, b, c) {
        (Some(Op::Beta), Some(Op::Beta), _) => Some(Redex::Zero),
        (Some(Op::P(a)), Some(Op::P(b)), _) if a < p * b => {
            let (a, b) = (a as i64, b as i64);
            let terms = (0..=a / pi)
                .filter_map(|i| {
                    let c = binom_mod((pi - 1) * (b - i) - 1, a - pi * i, p) * sign_mod(a + i, p) % p;
                    (c != 0).then(|| (vec![Op::P((a + b - i) as u32), Op::P(i as u32)], c))
                })
                .collect();
            Some(Redex::Rewrite(2, terms))
        }
        (Some(Op::P(a)), Some(Op::Beta), Some(Op::P(b))) if a <= p * b => {
            let (a, b) = (a as i64, b as i64);
            let mut terms = Vec::new();
            for i in 0..=a / pi {
                let c = binom_mod((pi - 1) * (b - i), a - pi * i, p) * sign_mod(a + i, p) % p;
                if c != 0 {
                    terms.push((vec![Op::Beta, Op::P((a + b - i) as u32), Op::P(i as u32)], c));
                }
            }
            for i in 0..=(a - 1).div_euclid(pi) {
                let c = binom_mod((pi - 1) * (b - i) - 1, a - pi * i - 1, p) * sign_mod(a + i + 1, p) % p;
                if c != 0 {
                    terms.push((vec![Op::P((a + b - i) as u32), Op::Beta, Op::P(i as u32)], c));
                }
            }
            Some(Redex::Rewrite(3, terms))
        }
        _ => None,
    }
}

fn find_redex(p: u32, w: &[Op], strategy: Strategy) -> Option<(usize, Redex)> {
    let positions: Box<dyn Iterator<Item = usize>> = match strategy {
        Strategy::Leftmost => Box::new(0..w.len()),
        Strategy::Rightmost => Box::new((0..w.len()).rev()),
    };
    for i in positions {
        if let Some(r) = adem(p, w, i) {
            return Some((i, r));
        }
    }
    None
}

/// Normal form of a word, rewriting with the given strategy. Words of
/// degree above `max_degree` are rejected.
pub fn adem_reduce_with(
    p: u32,
    word: &[Op],
    strategy: Strategy,
    max_degree: u32,
) -> Result<SteenrodElement, SteenrodError> {
    check_prime(p)?;
    if p == 2 && word.contains(&Op::Beta) {
        return Err(SteenrodError::BadToken("b".into()));
    }
    let degree = monomial_degree(p, word);
    if degree > max_degree {
        return Err(SteenrodError::DegreeBound { degree, max: max_degree });
    }
    let mut out = SteenrodElement::zero(p);
    let mut work: Vec<(Monomial, u32)> = vec![(word.to_vec(), 1)];
    while let Some((mut w, c)) = work.pop() {
        w.retain(|o| *o != Op::P(0));
        match find_redex(p, &w, strategy) {
            None => out.add_term(w, c),
            Some((_, Redex::Zero)) => {}
            Some((i, Redex::Rewrite(len, terms))) => {
                for (rep, k) in terms {
                    let mut next = w[..i].to_vec();
                    next.extend(rep);
                    next.extend_from_slice(&w[i + len..]);
                    work.push((next, c * k % p));
                }
            }
        }
    }
    Ok(out)
}

/// Default degree caps: 16 at `p = 2`, 20 at `p = 3`.
pub fn default_max_degree(p: u32) -> u32 {
    if p == 2 {
        16
    } else {
        20
    }
}

pub fn adem_reduce(p: u32, word: &[Op]) -> Result<SteenrodElement, SteenrodError> {
    adem_reduce_with(p, word, Strategy::Leftmost, default_max_degree(p))
}

/// Reduce every term of an element again; the identity on reduced input.
pub fn reduce_element(e: &SteenrodElement, max_degree: u32) -> Result<SteenrodElement, SteenrodError> {
    let mut out = SteenrodElement::zero(e.p);
    for (m, c) in &e.terms {
        for (m2, c2) in adem_reduce_with(e.p, m, Strategy::Leftmost, max_degree)?.terms {
            out.add_term(m2, c * c2 % e.p);
        }
    }
    Ok(out)
}

fn admissible_2(n: u32, cap: u32) -> Vec<Monomial> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in (1..=n.min(cap)).rev() {
        for mut rest in admissible_2(n - i, i / 2) {
            rest.insert(0, Op::P(i));
            out.push(rest);
        }
    }
    out
}

/// Words `b^e P^s ...` of degree `n` that may follow `P^prev`.
fn admissible_odd(p: u32, n: u32, prev: Option<u32>) -> Vec<Monomial> {
    let mut out = Vec::new();
    for eps in 0..=1u32 {
        if n == eps {
            out.push(if eps == 1 { vec![Op::Beta] } else { vec![] });
        }
    }
    for eps in 0..=1u32 {
        let mut s = 1;
        loop {
            let deg = eps + 2 * (p - 1) * s;
            if deg > n || prev.is_some_and(|q| p * s + eps > q) {
                break;
            }
            for rest in admissible_odd(p, n - deg, Some(s)) {
                let mut w = if eps == 1 { vec![Op::Beta] } else { vec![] };
                w.push(Op::P(s));
                w.extend(rest);
                out.push(w);
            }
            s += 1;
        }
    }
    out.sort();
    out
}

/// Admissible monomials of degree `n`, in a fixed order.
pub fn admissible_basis(p: u32, n: u32) -> Vec<Monomial> {
    let mut b = if p == 2 { admissible_2(n, n) } else { admissible_odd(p, n, None) };
    b.sort();
    b
}

/// Bases through a degree cap together with the full product table.
#[derive(Clone, Debug)]
pub struct SteenrodAlgebra {
    pub p: u32,
    pub max_degree: u32,
    basis: Vec<Vec<Monomial>>,
    index: HashMap<Monomial, usize>,
    /// `(deg a, index a, deg b, index b)` to coordinates in degree `deg a + deg b`.
    products: HashMap<(u32, usize, u32, usize), Vec<u32>>,
}

impl SteenrodAlgebra {
    pub fn new(p: u32, max_degree: u32) -> Result<Self, SteenrodError> {
        check_prime(p)?;
        let basis: Vec<Vec<Monomial>> = (0..=max_degree).map(|n| admissible_basis(p, n)).collect();
        let mut index = HashMap::new();
        for b in &basis {
            for (i, m) in b.iter().enumerate() {
                index.insert(m.clone(), i);
            }
        }
        let mut alg = SteenrodAlgebra {
            p,
            max_degree,
            basis,
            index,
            products: HashMap::new(),
        };
        for da in 0..=max_degree {
            for db in 0..=max_degree - da {
                for ia in 0..alg.basis[da as usize].len() {
                    for ib in 0..alg.basis[db as usize].len() {
                        let mut w = alg.basis[da as usize][ia].clone();
                        w.extend_from_slice(&alg.basis[db as usize][ib]);
                        let e = adem_reduce_with(p, &w, Strategy::Leftmost, max_degree)?;
                        let v = alg.coordinates(da + db, &e);
                        alg.products.insert((da, ia, db, ib), v);
                    }
                }
            }
        }
        Ok(alg)
    }

    pub fn dim(&self, n: u32) -> usize {
        self.basis.get(n as usize).map_or(0, Vec::len)
    }

    pub fn basis(&self, n: u32) -> &[Monomial] {
        &self.basis[n as usize]
    }

    pub fn index_of(&self, m: &[Op]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a homogeneous reduced element of degree `n`.
    pub fn coordinates(&self, n: u32, e: &SteenrodElement) -> Vec<u32> {
        let mut v = vec![0; self.dim(n)];
        for (m, c) in &e.terms {
            debug_assert_eq!(monomial_degree(self.p, m), n);
            v[self.index[m]] = *c;
        }
        v
    }

    /// Product of basis elements `(da, ia)` and `(db, ib)`.
    pub fn product(&self, da: u32, ia: usize, db: u32, ib: usize) -> &[u32] {
        &self.products[&(da, ia, db, ib)]
    }
}
