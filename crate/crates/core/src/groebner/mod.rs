//! Ideals of polynomial rings over Q: reduced Gröbner bases, membership,
//! elimination, quotients, saturation and Krull dimension.

pub(crate) mod engine;
mod dimension;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

pub use dimension::{DimensionReport, Height};
pub use engine::{default_step_budget, set_default_step_budget, Budget, DEFAULT_STEP_BUDGET};

use crate::error::{Error, Result};
use crate::poly::{Coeff, MonomialOrder, Polynomial, Ring, Term};
use engine::{MTerm, ModuleOrder, Vector};

pub(crate) fn poly_to_vector(p: &Polynomial, order: MonomialOrder) -> Vector {
    p.with_order(order)
        .into_terms()
        .into_iter()
        .map(|t| MTerm { coeff: t.coeff, mono: t.mono, pos: 0 })
        .collect()
}

pub(crate) fn vector_to_poly(ring: &Ring, order: MonomialOrder, v: Vector) -> Polynomial {
    let terms = v.into_iter().map(|t| Term { coeff: t.coeff, mono: t.mono }).collect();
    Polynomial::from_sorted_terms(ring, order, terms)
}

/// An ideal given by generators, with reduced bases cached per order.
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    budget: Option<u64>,
    cache: Mutex<HashMap<MonomialOrder, Arc<Vec<Polynomial>>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            budget: self.budget,
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g)?;
        }
        write!(f, ")")
    }
}

impl Ideal {
    /// The ideal generated by `gens`; zero generators are dropped.
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if !g.same_ring(&Polynomial::zero(ring)) {
                return Err(Error::ContextMismatch(format!("generator {} is not in {:?}", g, ring)));
            }
        }
        let gens = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.with_order(MonomialOrder::DegRevLex))
            .collect();
        Ok(Ideal { ring: ring.clone(), gens, budget: None, cache: Mutex::new(HashMap::new()) })
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)]).unwrap()
    }

    /// The ideal generated by all variables.
    pub fn maximal(ring: &Ring) -> Ideal {
        Ideal::new(ring, (0..ring.arity()).map(|i| Polynomial::var(ring, i)).collect()).unwrap()
    }

    /// Overrides the step budget for bases computed from this ideal.
    pub fn with_budget(mut self, steps: u64) -> Ideal {
        self.budget = Some(steps);
        self
    }

    fn new_budget(&self) -> Budget {
        Budget::new(self.budget.unwrap_or_else(default_step_budget))
    }

    fn derived(&self, ring: &Ring, gens: Vec<Polynomial>) -> Ideal {
        let mut i = Ideal::new(ring, gens).expect("derived ideal in its own ring");
        i.budget = self.budget;
        i
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    fn check_ring(&self, p: &Polynomial) -> Result<()> {
        if p.same_ring(&Polynomial::zero(&self.ring)) {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!("{} is not in {:?}", p, self.ring)))
        }
    }

    fn check_same(&self, other: &Ideal) -> Result<()> {
        if *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!("{:?} vs {:?}", self.ring, other.ring)))
        }
    }

    /// The unique reduced Gröbner basis for `order`, sorted by descending
    /// leading monomial; cached after the first computation.
    pub fn reduced_groebner(&self, order: MonomialOrder) -> Result<Arc<Vec<Polynomial>>> {
        if let Some(b) = self.cache.lock().unwrap().get(&order) {
            return Ok(b.clone());
        }
        let gens: Vec<Vector> = self.gens.iter().map(|g| poly_to_vector(g, order)).collect();
        let mut budget = self.new_budget();
        let basis = engine::groebner(gens, &ModuleOrder::Ring(order), self.ring.weights(), false, &mut budget)?;
        let polys: Vec<Polynomial> =
            basis.elements.into_iter().map(|v| vector_to_poly(&self.ring, order, v)).collect();
        let arc = Arc::new(polys);
        let mut cache = self.cache.lock().unwrap();
        Ok(cache.entry(order).or_insert(arc).clone())
    }

    /// Degree-reverse-lexicographic reduced basis.
    pub fn groebner(&self) -> Result<Arc<Vec<Polynomial>>> {
        self.reduced_groebner(MonomialOrder::DegRevLex)
    }

    /// Remainder of `p` on division by the degrevlex basis.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.check_ring(p)?;
        let order = MonomialOrder::DegRevLex;
        let basis = self.groebner()?;
        let bvec: Vec<Vector> = basis.iter().map(|b| poly_to_vector(b, order)).collect();
        let mut budget = self.new_budget();
        let r = engine::normal_form(poly_to_vector(p, order), &bvec, &ModuleOrder::Ring(order), &mut budget)?;
        Ok(vector_to_poly(&self.ring, order, r))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_same(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.iter().any(|g| g.is_unit()))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(self.derived(&self.ring, gens))
    }

    pub fn with_generators(&self, extra: &[Polynomial]) -> Result<Ideal> {
        for p in extra {
            self.check_ring(p)?;
        }
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ok(self.derived(&self.ring, gens))
    }

    /// Generators of `self ∩ Q[x_block..]`, computed in an elimination order
    /// on an extended ring whose first `block` variables are eliminated.
    fn eliminate_front(&self, big: &Ring, gens: Vec<Polynomial>, block: usize) -> Result<Vec<Polynomial>> {
        let order = MonomialOrder::Elimination { block };
        let mut tmp = Ideal::new(big, gens)?;
        tmp.budget = self.budget;
        let basis = tmp.reduced_groebner(order)?;
        Ok(basis
            .iter()
            .filter_map(|b| b.restrict_front(&self.ring, block, MonomialOrder::DegRevLex))
            .collect())
    }

    /// `(self : g^∞)` via an auxiliary variable `y`: eliminate `y` from
    /// `self + (y·g − 1)`.
    pub fn saturation(&self, g: &Polynomial) -> Result<Ideal> {
        self.check_ring(g)?;
        if g.is_zero() {
            return Err(Error::Precondition("saturation by the zero polynomial".into()));
        }
        if g.is_constant() {
            return Ok(self.clone());
        }
        let y = self.ring.fresh_name("y");
        let big = self.ring.with_front(&[(&y, 1)])?;
        let order = MonomialOrder::Elimination { block: 1 };
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|f| f.embed(&big, 1, 0, order)).collect();
        let yv = Polynomial::var(&big, 0).with_order(order);
        let rab = &(&yv * &g.embed(&big, 1, 0, order)) - &Polynomial::one(&big).with_order(order);
        gens.push(rab);
        let kept = self.eliminate_front(&big, gens, 1)?;
        Ok(self.derived(&self.ring, kept))
    }

    /// `(self : J^∞)` as the intersection of the saturations by the
    /// generators of `J`.
    pub fn saturation_by_ideal(&self, j: &Ideal) -> Result<Ideal> {
        self.check_same(j)?;
        let mut acc: Option<Ideal> = None;
        for g in &j.gens {
            let s = self.saturation(g)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersection(&s)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// `self ∩ other` by eliminating `t` from `t·self + (1 − t)·other`.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        if self.is_unit()? {
            return Ok(other.clone());
        }
        if other.is_unit()? {
            return Ok(self.clone());
        }
        let t = self.ring.fresh_name("t");
        let big = self.ring.with_front(&[(&t, 1)])?;
        let order = MonomialOrder::Elimination { block: 1 };
        let tv = Polynomial::var(&big, 0).with_order(order);
        let one_minus_t = &Polynomial::one(&big).with_order(order) - &tv;
        let mut gens = Vec::new();
        for f in &self.gens {
            gens.push(&tv * &f.embed(&big, 1, 0, order));
        }
        for f in &other.gens {
            gens.push(&one_minus_t * &f.embed(&big, 1, 0, order));
        }
        let kept = self.eliminate_front(&big, gens, 1)?;
        Ok(self.derived(&self.ring, kept))
    }

    /// `(self : g)` as `(self ∩ (g)) / g`.
    pub fn quotient(&self, g: &Polynomial) -> Result<Ideal> {
        self.check_ring(g)?;
        if g.is_zero() {
            return Err(Error::Precondition("ideal quotient by the zero polynomial".into()));
        }
        let principal = self.derived(&self.ring, vec![g.clone()]);
        let inter = self.intersection(&principal)?;
        let mut gens = Vec::with_capacity(inter.gens.len());
        for h in &inter.gens {
            let q = h
                .exact_div(&g.with_order(h.order()))
                .expect("elements of (g) are divisible by g");
            gens.push(q);
        }
        Ok(self.derived(&self.ring, gens))
    }

    /// Krull dimension of `Q[x]/self` from the leading terms of the
    /// degrevlex basis.
    pub fn krull_dimension(&self) -> Result<DimensionReport> {
        let basis = self.groebner()?;
        let leads: Vec<_> = basis.iter().filter_map(|b| b.leading_monomial().cloned()).collect();
        dimension::dimension_from_leads(self.ring.arity(), &leads)
    }

    pub fn height(&self) -> Result<Height> {
        let r = self.krull_dimension()?;
        Ok(if r.dimension < 0 {
            Height::Infinite
        } else {
            Height::Finite(self.ring.arity() as i64 - r.dimension)
        })
    }

    /// Generators as display strings.
    pub fn display_generators(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string()).collect()
    }

    /// Whether every generator is homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Image under a ring map given by images of the variables.
    pub fn map(&self, target: &Ring, images: &[Polynomial]) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.substitute(images)).collect::<Result<Vec<_>>>()?;
        Ok(self.derived(target, gens))
    }

    /// Scalar multiple helper used by callers building combinations.
    pub fn combination(&self, coeffs: &[Coeff]) -> Polynomial {
        let mut acc = Polynomial::zero(&self.ring);
        for (g, c) in self.gens.iter().zip(coeffs) {
            acc = &acc + &g.scale(c);
        }
        acc
    }
}
