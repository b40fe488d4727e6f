use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 16]>;

/// A power product with its weighted degree cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    deg: u32,
}

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, arity),
            deg: 0,
        }
    }

    pub fn from_exponents(exps: &[u16], weights: &[u32]) -> Self {
        debug_assert_eq!(exps.len(), weights.len());
        let deg = exps.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum();
        Monomial {
            exps: SmallVec::from_slice(exps),
            deg,
        }
    }

    pub fn variable(i: usize, weights: &[u32]) -> Self {
        let mut exps: Exponents = SmallVec::from_elem(0, weights.len());
        exps[i] = 1;
        Monomial {
            exps,
            deg: weights[i],
        }
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    /// Weighted degree.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    /// Plain exponent sum, ignoring weights.
    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Bitmask of variables occurring, folded modulo 64.
    #[inline]
    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m |= 1 << (i % 64);
            }
        }
        m
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] > 0).collect()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            exps,
            deg: self.deg + other.deg,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
            deg: other.deg - self.deg,
        })
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let deg = exps.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum();
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Same exponents read in a ring with more variables at the front or back.
    pub fn embed(&self, front: usize, back: usize) -> Monomial {
        let mut exps: Exponents = SmallVec::from_elem(0, front);
        exps.extend_from_slice(&self.exps);
        exps.extend(std::iter::repeat(0).take(back));
        Monomial { exps, deg: self.deg }
    }

    /// Drops the first `front` variables; caller guarantees they are absent
    /// and recomputes the degree with the target weights.
    pub fn restrict(&self, front: usize, weights: &[u32]) -> Monomial {
        Monomial::from_exponents(&self.exps[front..], weights)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// Monomial orders on a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    /// Weighted degree, ties broken reverse-lexicographically.
    DegRevLex,
    /// Eliminates the first `block` variables: compares their exponent sum
    /// first, then falls back to weighted degrevlex.
    Elimination { block: usize },
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::DegRevLex
    }
}

#[inline]
fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::DegRevLex => a.deg.cmp(&b.deg).then_with(|| revlex(&a.exps, &b.exps)),
            MonomialOrder::Elimination { block } => {
                let sa: u32 = a.exps[..block].iter().map(|&e| e as u32).sum();
                let sb: u32 = b.exps[..block].iter().map(|&e| e as u32).sum();
                sa.cmp(&sb)
                    .then_with(|| a.deg.cmp(&b.deg))
                    .then_with(|| revlex(&a.exps, &b.exps))
            }
        }
    }

    /// Compares `a1*b1` with `a2*b2` without forming the products.
    #[inline]
    pub fn cmp_products(&self, a1: &Monomial, b1: &Monomial, a2: &Monomial, b2: &Monomial) -> Ordering {
        let n = a1.exps.len();
        let e1 = |i: usize| a1.exps[i] as u32 + b1.exps[i] as u32;
        let e2 = |i: usize| a2.exps[i] as u32 + b2.exps[i] as u32;
        let rl = || {
            for i in (0..n).rev() {
                let (x, y) = (e1(i), e2(i));
                if x != y {
                    return y.cmp(&x);
                }
            }
            Ordering::Equal
        };
        match *self {
            MonomialOrder::Lex => {
                for i in 0..n {
                    let (x, y) = (e1(i), e2(i));
                    if x != y {
                        return x.cmp(&y);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::DegRevLex => (a1.deg + b1.deg).cmp(&(a2.deg + b2.deg)).then_with(rl),
            MonomialOrder::Elimination { block } => {
                let sa: u32 = (0..block).map(e1).sum();
                let sb: u32 = (0..block).map(e2).sum();
                sa.cmp(&sb)
                    .then_with(|| (a1.deg + b1.deg).cmp(&(a2.deg + b2.deg)))
                    .then_with(rl)
            }
        }
    }

    /// Whether ordering is compatible with weighted degree, so the
    /// leading term of a homogeneous polynomial is the same across orders
    /// sharing this property.
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::DegRevLex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e, &vec![1; e.len()])
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b).unwrap(), m(&[1, 0, 1]));
        assert_eq!(a.lcm(&m(&[0, 3, 1]), &[1, 1, 1]), m(&[1, 3, 1]));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 4, 1])));
    }

    #[test]
    fn degrevlex_small_cases() {
        let o = MonomialOrder::DegRevLex;
        // x*z < y^2 in degrevlex with x > y > z
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[0, 2, 0])), Ordering::Greater);
        let lex = MonomialOrder::Lex;
        assert_eq!(lex.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        let el = MonomialOrder::Elimination { block: 1 };
        assert_eq!(el.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(el.cmp(&m(&[0, 1, 0]), &m(&[0, 0, 2])), Ordering::Less);
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u16..4, 4).prop_map(|e| m(&e))
    }

    fn arb_order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Lex),
            Just(MonomialOrder::DegRevLex),
            (0usize..4).prop_map(|block| MonomialOrder::Elimination { block }),
        ]
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative(o in arb_order(), a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
            prop_assert_eq!(o.cmp_products(&a, &c, &b, &c), o.cmp(&a.mul(&c), &b.mul(&c)));
            prop_assert_ne!(o.cmp(&a.mul(&c), &a), Ordering::Less);
        }

        #[test]
        fn orders_are_total(o in arb_order(), a in arb_mono(), b in arb_mono()) {
            prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
        }
    }
}
