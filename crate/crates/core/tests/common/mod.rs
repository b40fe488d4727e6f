//! Independent oracles shared by the integration tests: a naive Buchberger
//! algorithm on its own dense representation, brute-force dimension, and
//! random input generators.

#![allow(dead_code)]

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use kahler_core::groebner::Ideal;
use kahler_core::poly::{parse_polynomial, Coeff, Monomial, MonomialOrder, Polynomial, Ring, Term, VariableContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ord2 {
    Lex,
    Grevlex,
}

fn cmp(o: Ord2, a: &[u32], b: &[u32]) -> Ordering {
    match o {
        Ord2::Lex => a.cmp(b),
        Ord2::Grevlex => {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            da.cmp(&db).then_with(|| {
                for i in (0..a.len()).rev() {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            })
        }
    }
}

/// Terms sorted descending; no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OPoly(pub Vec<(Vec<u32>, BigRational)>);

impl OPoly {
    fn normalize(mut terms: Vec<(Vec<u32>, BigRational)>, o: Ord2) -> OPoly {
        terms.sort_by(|a, b| cmp(o, &b.0, &a.0));
        let mut out: Vec<(Vec<u32>, BigRational)> = Vec::new();
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        OPoly(out)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lead(&self) -> &[u32] {
        &self.0[0].0
    }

    fn monic(&self) -> OPoly {
        let l = self.0[0].1.clone();
        OPoly(self.0.iter().map(|(m, c)| (m.clone(), c / &l)).collect())
    }

    /// `self − c·x^m·q`
    fn sub_mul(&self, c: &BigRational, m: &[u32], q: &OPoly, o: Ord2) -> OPoly {
        let mut terms = self.0.clone();
        for (qm, qc) in &q.0 {
            let prod: Vec<u32> = qm.iter().zip(m).map(|(a, b)| a + b).collect();
            terms.push((prod, -(c * qc)));
        }
        OPoly::normalize(terms, o)
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn quotient(a: &[u32], b: &[u32]) -> Vec<u32> {
    b.iter().zip(a).map(|(y, x)| y - x).collect()
}

pub fn from_library(p: &Polynomial, o: Ord2) -> OPoly {
    let terms = p
        .terms()
        .iter()
        .map(|t| (t.mono.exponents().iter().map(|&e| e as u32).collect(), t.coeff.to_big()))
        .collect();
    OPoly::normalize(terms, o)
}

pub fn to_library(ring: &Ring, p: &OPoly) -> Polynomial {
    let terms = p
        .0
        .iter()
        .map(|(m, c)| {
            let exps: Vec<u16> = m.iter().map(|&e| e as u16).collect();
            let coeff = Coeff::from_bigint(c.numer().clone()) * Coeff::from_bigint(c.denom().clone()).recip();
            Term { coeff, mono: Monomial::from_exponents(&exps, ring.weights()) }
        })
        .collect();
    Polynomial::from_terms(ring, MonomialOrder::DegRevLex, terms)
}

/// Full reduction of `p` by `g`.
pub fn reduce(p: &OPoly, g: &[OPoly], o: Ord2) -> OPoly {
    let mut p = p.clone();
    let mut rest: Vec<(Vec<u32>, BigRational)> = Vec::new();
    while !p.is_zero() {
        let (m, c) = p.0[0].clone();
        match g.iter().find(|q| divides(q.lead(), &m)) {
            Some(q) => {
                let f = c / &q.0[0].1;
                p = p.sub_mul(&f, &quotient(q.lead(), &m), q, o);
            }
            None => {
                rest.push((m, c));
                p.0.remove(0);
            }
        }
    }
    OPoly(rest)
}

fn s_poly(a: &OPoly, b: &OPoly, o: Ord2) -> OPoly {
    let lcm: Vec<u32> = a.lead().iter().zip(b.lead()).map(|(x, y)| *x.max(y)).collect();
    let left = OPoly(vec![]).sub_mul(&-(BigRational::one() / &a.0[0].1), &quotient(a.lead(), &lcm), a, o);
    left.sub_mul(&(BigRational::one() / &b.0[0].1), &quotient(b.lead(), &lcm), b, o)
}

/// Reduced Gröbner basis by Buchberger's algorithm with every pair
/// processed (no criteria), sorted descending by leading monomial.
pub fn naive_groebner(gens: &[OPoly], o: Ord2) -> Vec<OPoly> {
    let mut g: Vec<OPoly> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let r = reduce(&s_poly(&g[i], &g[j], o), &g, o);
        if !r.is_zero() {
            let k = g.len();
            g.push(r);
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    let mut minimal: Vec<OPoly> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let redundant = g.iter().enumerate().any(|(j, q)| {
            j != i && divides(q.lead(), p.lead()) && (q.lead() != p.lead() || j < i)
        });
        if !redundant {
            minimal.push(p.monic());
        }
    }
    let mut out: Vec<OPoly> = Vec::new();
    for i in 0..minimal.len() {
        let others: Vec<OPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.clone()).collect();
        let lead = minimal[i].0[0].clone();
        let tail = OPoly(minimal[i].0[1..].to_vec());
        let mut terms = reduce(&tail, &others, o).0;
        terms.insert(0, lead);
        out.push(OPoly(terms));
    }
    out.sort_by(|a, b| cmp(o, b.lead(), a.lead()));
    if out.iter().any(|p| p.lead().iter().all(|&e| e == 0)) {
        let one = vec![0; out[0].lead().len()];
        return vec![OPoly(vec![(one, BigRational::one())])];
    }
    out
}

pub fn library_order(o: Ord2) -> MonomialOrder {
    match o {
        Ord2::Lex => MonomialOrder::Lex,
        Ord2::Grevlex => MonomialOrder::DegRevLex,
    }
}

/// The library's reduced basis in the oracle representation, same sort.
pub fn library_groebner(ideal: &Ideal, o: Ord2) -> Vec<OPoly> {
    let mut b: Vec<OPoly> = ideal.reduced_groebner(library_order(o)).unwrap().iter().map(|p| from_library(p, o)).collect();
    b.sort_by(|a, c| cmp(o, c.lead(), a.lead()));
    b
}

/// Krull dimension from leading monomials by enumerating every subset of
/// variables; `-1` for the unit ideal.
pub fn brute_force_dimension(leads: &[Vec<u32>], n: usize) -> i64 {
    if leads.iter().any(|m| m.iter().all(|&e| e == 0)) {
        return -1;
    }
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let independent = leads.iter().all(|m| m.iter().enumerate().any(|(i, &e)| e > 0 && mask & (1 << i) == 0));
        if independent {
            best = best.max(mask.count_ones() as i64);
        }
    }
    best
}

pub fn ring(names: &[&str]) -> Ring {
    VariableContext::standard(names.to_vec()).unwrap()
}

pub fn poly(r: &Ring, s: &str) -> Polynomial {
    parse_polynomial(r, s).unwrap()
}

pub fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|s| poly(r, s)).collect()).unwrap()
}

/// Random polynomial with up to `terms` terms of total degree `1..=max_deg`.
pub fn random_poly(rng: &mut ChaCha8Rng, r: &Ring, terms: usize, max_deg: u32) -> Polynomial {
    let n = r.arity();
    let mut out = Vec::new();
    for _ in 0..terms {
        let deg = rng.gen_range(1..=max_deg);
        let mut exps = vec![0u16; n];
        for _ in 0..deg {
            exps[rng.gen_range(0..n)] += 1;
        }
        let c = loop {
            let c: i64 = rng.gen_range(-3..=3);
            if c != 0 {
                break c;
            }
        };
        out.push(Term { coeff: Coeff::from_int(c), mono: Monomial::from_exponents(&exps, r.weights()) });
    }
    Polynomial::from_terms(r, MonomialOrder::DegRevLex, out)
}

/// Random homogeneous polynomial of total degree `deg` (standard grading).
pub fn random_homogeneous(rng: &mut ChaCha8Rng, r: &Ring, terms: usize, deg: u32) -> Polynomial {
    let n = r.arity();
    let mut out = Vec::new();
    for _ in 0..terms {
        let mut exps = vec![0u16; n];
        for _ in 0..deg {
            exps[rng.gen_range(0..n)] += 1;
        }
        let c: i64 = rng.gen_range(-5..=5);
        out.push(Term { coeff: Coeff::from_int(c), mono: Monomial::from_exponents(&exps, r.weights()) });
    }
    Polynomial::from_terms(r, MonomialOrder::DegRevLex, out)
}
