use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::coeff::Coeff;
use super::context::Ring;
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub coeff: Coeff,
    pub mono: Monomial,
}

/// A polynomial over Q, terms sorted strictly descending in its order.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    order: MonomialOrder,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other)
            && (self.order == other.order || self.terms.is_empty())
            && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            order: MonomialOrder::default(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Coeff) -> Self {
        Self::monomial(ring, c, Monomial::one(ring.arity()))
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Coeff::one())
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, Coeff::one(), Monomial::variable(i, ring.weights()))
    }

    pub fn monomial(ring: &Ring, c: Coeff, mono: Monomial) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.push(Term { coeff: c, mono });
        }
        p
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated,
    /// unsorted, zero) terms.
    pub fn from_terms(ring: &Ring, order: MonomialOrder, mut terms: Vec<Term>) -> Self {
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.mono == t.mono {
                    last.coeff = &last.coeff + &t.coeff;
                    continue;
                }
            }
            out.push(t);
        }
        out.retain(|t| !t.coeff.is_zero());
        Polynomial {
            ring: ring.clone(),
            order,
            terms: out,
        }
    }

    /// Wraps terms already sorted strictly descending with no zeros.
    pub(crate) fn from_sorted_terms(ring: &Ring, order: MonomialOrder, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| order.cmp(&w[0].mono, &w[1].mono) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        Polynomial { ring: ring.clone(), order, terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one()
    }

    pub fn constant_term(&self) -> Coeff {
        self.terms
            .iter()
            .find(|t| t.mono.is_one())
            .map(|t| t.coeff.clone())
            .unwrap_or_else(Coeff::zero)
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub(crate) fn same_ring(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if !self.same_ring(other) {
            return Err(Error::ContextMismatch(format!(
                "{:?} vs {:?}",
                self.ring, other.ring
            )));
        }
        if self.order != other.order && !self.is_zero() && !other.is_zero() {
            return Err(Error::ContextMismatch(format!(
                "order {:?} vs {:?}",
                self.order, other.order
            )));
        }
        Ok(())
    }

    /// Same polynomial, terms re-sorted for `order`.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        Polynomial { ring: self.ring.clone(), order, terms }
    }

    fn combined_order(&self, other: &Polynomial) -> MonomialOrder {
        if self.is_zero() {
            other.order
        } else {
            self.order
        }
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let order = self.combined_order(other);
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let sgn = |c: &Coeff| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].mono, &b[j].mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term { coeff: sgn(&b[j].coeff), mono: b[j].mono.clone() });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].coeff - &b[j].coeff } else { &a[i].coeff + &b[j].coeff };
                    if !c.is_zero() {
                        out.push(Term { coeff: c, mono: a[i].mono.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| Term { coeff: sgn(&t.coeff), mono: t.mono.clone() }));
        Polynomial { ring: self.ring.clone(), order, terms: out }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.merge(other, true))
    }

    /// Exact product; fails when the operands live in different rings.
    pub fn multiply(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let order = self.combined_order(other);
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial { ring: self.ring.clone(), order, terms: Vec::new() });
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Polynomial { ring: self.ring.clone(), order, terms: Vec::new() };
        for t in &small.terms {
            let part = large.mul_term(&t.coeff, &t.mono);
            acc = acc.merge(&part, false);
        }
        Ok(acc)
    }

    /// `c * m * self`; order is preserved because monomial orders are
    /// multiplicative.
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial { ring: self.ring.clone(), order: self.order, terms: Vec::new() };
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: &t.coeff * c, mono: t.mono.mul(m) })
            .collect();
        Polynomial { ring: self.ring.clone(), order: self.order, terms }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        self.mul_term(c, &Monomial::one(self.ring.arity()))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring).with_order(self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    /// Formal derivative with respect to variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial> {
        let n = self.ring.arity();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        let weights = self.ring.weights();
        let mut terms = Vec::new();
        for t in &self.terms {
            let e = t.mono.exponent(i);
            if e == 0 {
                continue;
            }
            let mut exps = t.mono.exponents().to_vec();
            exps[i] -= 1;
            terms.push(Term {
                coeff: &t.coeff * &Coeff::from_int(e as i64),
                mono: Monomial::from_exponents(&exps, weights),
            });
        }
        // Lowering one exponent can reorder terms under lex-type orders.
        Ok(Polynomial::from_terms(&self.ring, self.order, terms))
    }

    /// `(is_homogeneous, degree)`; the zero polynomial is homogeneous with
    /// no degree.
    pub fn weighted_degree_info(&self) -> (bool, Option<u32>) {
        let mut degs = self.terms.iter().map(|t| t.mono.degree());
        match degs.next() {
            None => (true, None),
            Some(d0) => {
                if degs.all(|d| d == d0) {
                    (true, Some(d0))
                } else {
                    (false, None)
                }
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weighted_degree_info().0
    }

    /// Largest weighted degree of a term (the sugar of an input polynomial).
    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0)
    }

    /// Smallest plain (unweighted) degree of a term.
    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.total_degree()).min()
    }

    /// Re-reads this polynomial in `target`, which must extend the current
    /// ring by `front` variables before and `back` after.
    pub fn embed(&self, target: &Ring, front: usize, back: usize, order: MonomialOrder) -> Polynomial {
        debug_assert_eq!(target.arity(), self.ring.arity() + front + back);
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: t.coeff.clone(), mono: t.mono.embed(front, back) })
            .collect();
        Polynomial::from_terms(target, order, terms)
    }

    /// Inverse of [`embed`](Self::embed) with `back = 0`; `None` if a dropped
    /// variable occurs.
    pub fn restrict_front(&self, target: &Ring, front: usize, order: MonomialOrder) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.len());
        for t in &self.terms {
            if t.mono.exponents()[..front].iter().any(|&e| e > 0) {
                return None;
            }
            terms.push(Term { coeff: t.coeff.clone(), mono: t.mono.restrict(front, target.weights()) });
        }
        Some(Polynomial::from_terms(target, order, terms))
    }

    /// Maps variable `i` of this ring to `images[i]` (all in one target ring).
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.arity() {
            return Err(Error::Shape(format!(
                "substitution needs {} images, got {}",
                self.ring.arity(),
                images.len()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Ok(self.clone()),
        };
        let order = images[0].order;
        let mut acc = Polynomial::zero(&target).with_order(order);
        for t in &self.terms {
            let mut prod = Polynomial::constant(&target, t.coeff.clone()).with_order(order);
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                if e > 0 {
                    prod = prod.multiply(&images[i].pow(e as u32))?;
                }
            }
            acc = acc.try_add(&prod)?;
        }
        Ok(acc)
    }

    /// Exact division by `d`; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        let lt_d = d.leading_term()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some(lt) = rem.leading_term() {
            let m = lt_d.mono.quotient_of(&lt.mono)?;
            let c = &lt.coeff / &lt_d.coeff;
            rem = rem.merge(&d.mul_term(&c, &m), true);
            quot.push(Term { coeff: c, mono: m });
        }
        Some(Polynomial::from_terms(&self.ring, self.order, quot))
    }

    pub fn display(&self) -> String {
        self.to_string()
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &Ring, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", ring.name(i))?;
        if e > 1 {
            write!(f, "^{}", e)?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let abs = t.coeff.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if t.mono.is_one() {
                write!(f, "{}", abs)?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", abs)?;
                }
                write_monomial(f, &self.ring, &t.mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("incompatible polynomials")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("incompatible polynomials")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.multiply(rhs).expect("incompatible polynomials")
    }
}

impl<'a> Neg for &'a Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Coeff::from_int(-1))
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
