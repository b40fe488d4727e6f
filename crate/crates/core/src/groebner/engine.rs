//! Buchberger's algorithm on vectors of polynomials.
//!
//! An ideal is treated as a submodule of the rank-one free module, so a
//! single engine serves ideal bases, module bases and the Schreyer frames
//! built by the resolution code. Terms carry a position; a [`ModuleOrder`]
//! compares `(monomial, position)` pairs.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Coeff, Monomial, MonomialOrder};

/// Default number of reduction steps a single basis computation may take.
pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

static STEP_BUDGET: AtomicU64 = AtomicU64::new(DEFAULT_STEP_BUDGET);

/// Sets the per-computation step budget used when none is given explicitly.
pub fn set_default_step_budget(steps: u64) {
    STEP_BUDGET.store(steps.max(1), AtomicOrdering::Relaxed);
}

pub fn default_step_budget() -> u64 {
    STEP_BUDGET.load(AtomicOrdering::Relaxed)
}

#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn default_limit() -> Self {
        Budget::new(default_step_budget())
    }

    #[inline]
    pub fn step(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MTerm {
    pub coeff: Coeff,
    pub mono: Monomial,
    pub pos: u32,
}

/// Terms sorted strictly descending in some module order.
pub type Vector = Vec<MTerm>;

/// Per-level data of a Schreyer order: basis element `i` of this level
/// stands for the monomial `full[i]` sitting at position `chain[i][0]` of
/// the bottom free module; `chain[i]` lists its positions at every level.
#[derive(Debug)]
pub struct SchreyerData {
    pub bottom: ModuleOrder,
    pub full: Vec<Monomial>,
    pub chain: Vec<Vec<u32>>,
}

#[derive(Clone, Debug)]
pub enum ModuleOrder {
    /// Rank-one module; positions are all zero.
    Ring(MonomialOrder),
    /// Shifted degree first, then the base order, then smaller position wins.
    Top { base: MonomialOrder, shifts: Arc<Vec<u32>> },
    /// Smaller position wins first, then the base order.
    Pot { base: MonomialOrder },
    Schreyer(Arc<SchreyerData>),
}

impl ModuleOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, pa: u32, b: &Monomial, pb: u32) -> Ordering {
        match self {
            ModuleOrder::Ring(o) => o.cmp(a, b),
            ModuleOrder::Top { base, shifts } => (a.degree() + shifts[pa as usize])
                .cmp(&(b.degree() + shifts[pb as usize]))
                .then_with(|| base.cmp(a, b))
                .then_with(|| pb.cmp(&pa)),
            ModuleOrder::Pot { base } => pb.cmp(&pa).then_with(|| base.cmp(a, b)),
            ModuleOrder::Schreyer(s) => {
                let (ia, ib) = (pa as usize, pb as usize);
                let c = s.bottom.cmp_products(a, &s.full[ia], s.chain[ia][0], b, &s.full[ib], s.chain[ib][0]);
                if c != Ordering::Equal {
                    return c;
                }
                let (ca, cb) = (&s.chain[ia], &s.chain[ib]);
                for k in 1..ca.len() {
                    if ca[k] != cb[k] {
                        return cb[k].cmp(&ca[k]);
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Compares `a1*b1 e_pa` with `a2*b2 e_pb` for non-Schreyer orders.
    #[inline]
    fn cmp_products(&self, a1: &Monomial, b1: &Monomial, pa: u32, a2: &Monomial, b2: &Monomial, pb: u32) -> Ordering {
        match self {
            ModuleOrder::Ring(o) => o.cmp_products(a1, b1, a2, b2),
            ModuleOrder::Top { base, shifts } => (a1.degree() + b1.degree() + shifts[pa as usize])
                .cmp(&(a2.degree() + b2.degree() + shifts[pb as usize]))
                .then_with(|| base.cmp_products(a1, b1, a2, b2))
                .then_with(|| pb.cmp(&pa)),
            ModuleOrder::Pot { base } => pb.cmp(&pa).then_with(|| base.cmp_products(a1, b1, a2, b2)),
            ModuleOrder::Schreyer(_) => unreachable!("nested Schreyer bottom"),
        }
    }

    pub fn is_ring(&self) -> bool {
        matches!(self, ModuleOrder::Ring(_))
    }

    /// Whether larger weighted degree always means a larger term.
    fn is_degree_compatible(&self) -> bool {
        match self {
            ModuleOrder::Ring(o) | ModuleOrder::Pot { base: o } => o.is_degree_compatible(),
            ModuleOrder::Top { .. } | ModuleOrder::Schreyer(_) => true,
        }
    }
}

fn sort_vector(v: &mut Vector, order: &ModuleOrder) {
    v.sort_by(|a, b| order.cmp(&b.mono, b.pos, &a.mono, a.pos));
}

/// Sorts and combines like terms.
pub fn normalize_vector(mut v: Vector, order: &ModuleOrder) -> Vector {
    sort_vector(&mut v, order);
    let mut out: Vector = Vec::with_capacity(v.len());
    for t in v {
        if let Some(last) = out.last_mut() {
            if last.pos == t.pos && last.mono == t.mono {
                last.coeff = &last.coeff + &t.coeff;
                continue;
            }
        }
        out.push(t);
    }
    out.retain(|t| !t.coeff.is_zero());
    out
}

/// `a - c * m * b`, both inputs sorted under `order`.
pub fn sub_scaled(a: &[MTerm], c: &Coeff, m: &Monomial, b: &[MTerm], order: &ModuleOrder) -> Vector {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let one = m.is_one();
    let bterm = |t: &MTerm| -> Monomial {
        if one {
            t.mono.clone()
        } else {
            t.mono.mul(m)
        }
    };
    let mut pending: Option<Monomial> = None;
    while i < a.len() && j < b.len() {
        let bm = match pending.take() {
            Some(x) => x,
            None => bterm(&b[j]),
        };
        match order.cmp(&a[i].mono, a[i].pos, &bm, b[j].pos) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
                pending = Some(bm);
            }
            Ordering::Less => {
                out.push(MTerm { coeff: -(&b[j].coeff * c), mono: bm, pos: b[j].pos });
                j += 1;
            }
            Ordering::Equal => {
                let v = &a[i].coeff - &(&b[j].coeff * c);
                if !v.is_zero() {
                    out.push(MTerm { coeff: v, mono: bm, pos: a[i].pos });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    while j < b.len() {
        let bm = match pending.take() {
            Some(x) => x,
            None => bterm(&b[j]),
        };
        out.push(MTerm { coeff: -(&b[j].coeff * c), mono: bm, pos: b[j].pos });
        j += 1;
    }
    out
}

pub fn scale_vector(v: &[MTerm], c: &Coeff) -> Vector {
    v.iter()
        .map(|t| MTerm { coeff: &t.coeff * c, mono: t.mono.clone(), pos: t.pos })
        .collect()
}

/// `a·x − c·m·y`.
fn combine(a: &Coeff, x: &[MTerm], c: &Coeff, m: &Monomial, y: &[MTerm], order: &ModuleOrder) -> Vector {
    if a.is_one() {
        sub_scaled(x, c, m, y, order)
    } else {
        sub_scaled(&scale_vector(x, a), c, m, y, order)
    }
}

/// Divides `v` (and `rep` alongside) by the content of `v`, leaving coprime
/// integer coefficients and a positive leading coefficient.
fn make_primitive(v: &mut Vector, rep: Option<&mut Vector>) {
    let Some(first) = v.first() else { return };
    let mut g = first.coeff.abs();
    for t in &v[1..] {
        if g.is_one() && t.coeff.is_integer() {
            continue;
        }
        g = g.gcd(&t.coeff);
    }
    if v[0].coeff.is_negative() {
        g = -g;
    }
    if g.is_one() {
        return;
    }
    let inv = g.recip();
    *v = scale_vector(v, &inv);
    if let Some(r) = rep {
        *r = scale_vector(r, &inv);
    }
}

/// Top reduction without division: each step replaces `f` by
/// `a·f − c·m·g` with `a`, `c` the cofactors of the leading coefficients.
fn reduce_fraction_free(
    mut f: Vector,
    mut rep: Option<Vector>,
    elems: &[Element],
    index: &LeadIndex,
    order: &ModuleOrder,
    rep_order: &ModuleOrder,
    budget: &mut Budget,
) -> Result<(Vector, Option<Vector>)> {
    while let Some(t) = f.first() {
        let Some(k) = index.find(elems, &t.mono, t.pos) else { break };
        budget.step()?;
        let g = &elems[k];
        let h = g.vec[0].coeff.gcd(&t.coeff);
        let a = &g.vec[0].coeff / &h;
        let c = &t.coeff / &h;
        let m = g.vec[0].mono.quotient_of(&t.mono).unwrap();
        if let (Some(r), Some(gr)) = (rep.as_mut(), g.rep.as_ref()) {
            *r = combine(&a, r, &c, &m, gr, rep_order);
        }
        f = combine(&a, &f, &c, &m, &g.vec, order);
    }
    make_primitive(&mut f, rep.as_mut());
    Ok((f, rep))
}

/// A basis element with lookup data.
#[derive(Clone, Debug)]
pub struct Element {
    pub vec: Vector,
    /// Combination of the original generators equal to `vec`, when tracked.
    pub rep: Option<Vector>,
    pub sugar: u32,
    mask: u64,
}

impl Element {
    pub fn new(vec: Vector, rep: Option<Vector>, sugar: u32) -> Self {
        let mask = vec.first().map_or(0, |t| t.mono.support_mask());
        Element { vec, rep, sugar, mask }
    }
}

/// Divisor lookup by position.
#[derive(Default, Clone, Debug)]
pub struct LeadIndex {
    by_pos: Vec<Vec<usize>>,
}

impl LeadIndex {
    pub fn insert(&mut self, pos: u32, idx: usize) {
        let p = pos as usize;
        if self.by_pos.len() <= p {
            self.by_pos.resize(p + 1, Vec::new());
        }
        self.by_pos[p].push(idx);
    }

    pub fn remove(&mut self, pos: u32, idx: usize) {
        if let Some(v) = self.by_pos.get_mut(pos as usize) {
            v.retain(|&i| i != idx);
        }
    }

    #[inline]
    pub fn find(&self, elems: &[Element], mono: &Monomial, pos: u32) -> Option<usize> {
        let cands = self.by_pos.get(pos as usize)?;
        let mask = mono.support_mask();
        cands.iter().copied().find(|&i| {
            let e = &elems[i];
            e.mask & !mask == 0 && e.vec[0].mono.divides(mono)
        })
    }

    pub fn at(&self, pos: u32) -> &[usize] {
        self.by_pos.get(pos as usize).map_or(&[], |v| v.as_slice())
    }
}

/// Reduction of `f` modulo monic basis elements. With `full`, every term is
/// reduced; otherwise only the leading term. Records quotients in `quot`
/// as `(element index, coefficient, multiplier)` when given.
#[allow(clippy::too_many_arguments)]
pub fn reduce(
    f: Vector,
    mut rep: Option<Vector>,
    elems: &[Element],
    index: &LeadIndex,
    order: &ModuleOrder,
    rep_order: &ModuleOrder,
    full: bool,
    budget: &mut Budget,
    mut quot: Option<&mut Vec<(usize, Coeff, Monomial)>>,
) -> Result<(Vector, Option<Vector>)> {
    let mut out: Vector = Vec::new();
    let mut tail = f;
    let mut head = 0usize;
    while head < tail.len() {
        let t = &tail[head];
        match index.find(elems, &t.mono, t.pos) {
            Some(k) => {
                budget.step()?;
                let g = &elems[k];
                let c = &t.coeff / &g.vec[0].coeff;
                let m = g.vec[0].mono.quotient_of(&t.mono).unwrap();
                if let (Some(r), Some(gr)) = (rep.as_mut(), g.rep.as_ref()) {
                    *r = sub_scaled(r, &c, &m, gr, rep_order);
                }
                if let Some(q) = quot.as_deref_mut() {
                    q.push((k, c.clone(), m.clone()));
                }
                tail = sub_scaled(&tail[head..], &c, &m, &g.vec, order);
                head = 0;
            }
            None => {
                if !full {
                    break;
                }
                out.push(tail[head].clone());
                head += 1;
            }
        }
    }
    if full {
        Ok((out, rep))
    } else {
        out.extend(tail.drain(head..));
        Ok((out, rep))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct PairKey {
    sugar: u32,
    lcm_deg: u32,
    j: usize,
    i: usize,
}

struct Engine<'a> {
    order: &'a ModuleOrder,
    rep_order: ModuleOrder,
    weights: &'a [u32],
    ring_mode: bool,
    /// Select the pair with the least lcm in the term order instead of by
    /// sugar; sugar does badly on lex-like orders.
    normal: bool,
    elems: Vec<Element>,
    active: Vec<bool>,
    index: LeadIndex,
    pairs: BTreeSet<PairKey>,
    budget: &'a mut Budget,
}

impl<'a> Engine<'a> {
    fn lcm(&self, i: usize, j: usize) -> Monomial {
        self.elems[i].vec[0].mono.lcm(&self.elems[j].vec[0].mono, self.weights)
    }

    fn pair_key(&self, i: usize, j: usize) -> PairKey {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let l = self.lcm(i, j);
        let si = self.elems[i].sugar + l.degree() - self.elems[i].vec[0].mono.degree();
        let sj = self.elems[j].sugar + l.degree() - self.elems[j].vec[0].mono.degree();
        PairKey { sugar: si.max(sj), lcm_deg: l.degree(), j, i }
    }

    /// Gebauer–Möller installation of a new element.
    fn update(&mut self, h: Element) {
        let hi = self.elems.len();
        let hpos = h.vec[0].pos;
        let hlt = h.vec[0].mono.clone();
        self.elems.push(h);
        self.active.push(true);

        let cands: Vec<usize> = self.index.at(hpos).iter().copied().filter(|&g| self.active[g]).collect();
        let lcms: Vec<Monomial> = cands.iter().map(|&g| self.lcm(g, hi)).collect();
        let coprime: Vec<bool> = cands
            .iter()
            .map(|&g| self.ring_mode && self.elems[g].vec[0].mono.is_coprime(&hlt))
            .collect();

        // Chain criterion among the new pairs.
        let mut keep = vec![false; cands.len()];
        let mut in_c = vec![true; cands.len()];
        for a in 0..cands.len() {
            in_c[a] = false;
            let redundant = !coprime[a]
                && ((0..cands.len()).any(|b| in_c[b] && lcms[b].divides(&lcms[a]))
                    || (0..cands.len()).any(|b| keep[b] && lcms[b].divides(&lcms[a])));
            if !redundant {
                keep[a] = true;
            }
        }

        // Old pairs made redundant by h.
        let old: Vec<PairKey> = self.pairs.iter().copied().collect();
        for p in old {
            if self.elems[p.i].vec[0].pos != hpos {
                continue;
            }
            let l = self.lcm(p.i, p.j);
            if hlt.divides(&l) && self.lcm(p.i, hi) != l && self.lcm(p.j, hi) != l {
                self.pairs.remove(&p);
            }
        }

        for (a, &g) in cands.iter().enumerate() {
            if keep[a] && !coprime[a] {
                let k = self.pair_key(g, hi);
                self.pairs.insert(k);
            }
        }

        for &g in &cands {
            if hlt.divides(&self.elems[g].vec[0].mono) {
                self.active[g] = false;
                self.index.remove(hpos, g);
            }
        }
        self.index.insert(hpos, hi);
    }

    fn spoly(&self, i: usize, j: usize) -> (Vector, Option<Vector>) {
        let (gi, gj) = (&self.elems[i], &self.elems[j]);
        let l = self.lcm(i, j);
        let mi = gi.vec[0].mono.quotient_of(&l).unwrap();
        let mj = gj.vec[0].mono.quotient_of(&l).unwrap();
        let h = gi.vec[0].coeff.gcd(&gj.vec[0].coeff);
        let ci = &gj.vec[0].coeff / &h;
        let cj = &gi.vec[0].coeff / &h;
        let a: Vector = gi
            .vec
            .iter()
            .map(|t| MTerm { coeff: &t.coeff * &ci, mono: t.mono.mul(&mi), pos: t.pos })
            .collect();
        let s = sub_scaled(&a, &cj, &mj, &gj.vec, self.order);
        let rep = match (&gi.rep, &gj.rep) {
            (Some(ri), Some(rj)) => {
                let ra: Vector = ri
                    .iter()
                    .map(|t| MTerm { coeff: &t.coeff * &ci, mono: t.mono.mul(&mi), pos: t.pos })
                    .collect();
                Some(sub_scaled(&ra, &cj, &mj, rj, &self.rep_order))
            }
            _ => None,
        };
        (s, rep)
    }

    fn add_generator(&mut self, v: Vector, rep: Option<Vector>) -> Result<()> {
        let (r, rep) = reduce_fraction_free(v, rep, &self.elems, &self.index, self.order, &self.rep_order, self.budget)?;
        if r.is_empty() {
            return Ok(());
        }
        let sugar = r.iter().map(|t| t.mono.degree()).max().unwrap_or(0);
        self.update(Element::new(r, rep, sugar));
        Ok(())
    }

    fn next_pair(&self) -> Option<PairKey> {
        if !self.normal {
            return self.pairs.iter().next().copied();
        }
        self.pairs.iter().copied().min_by(|a, b| {
            let (la, lb) = (self.lcm(a.i, a.j), self.lcm(b.i, b.j));
            let (pa, pb) = (self.elems[a.i].vec[0].pos, self.elems[b.i].vec[0].pos);
            self.order.cmp(&la, pa, &lb, pb).then(a.cmp(b))
        })
    }

    fn run(&mut self) -> Result<()> {
        while let Some(p) = self.next_pair() {
            self.pairs.remove(&p);
            let (s, rep) = self.spoly(p.i, p.j);
            let (r, rep) = reduce_fraction_free(s, rep, &self.elems, &self.index, self.order, &self.rep_order, self.budget)?;
            if r.is_empty() {
                continue;
            }
            self.update(Element::new(r, rep, p.sugar));
        }
        Ok(())
    }

    /// Interreduces the active elements into the reduced basis.
    fn finish(mut self) -> Result<Vec<Element>> {
        let mut idx: Vec<usize> = (0..self.elems.len()).filter(|&i| self.active[i]).collect();
        for &i in &idx {
            let e = &mut self.elems[i];
            let lc = e.vec[0].coeff.recip();
            e.vec = scale_vector(&e.vec, &lc);
            if let Some(r) = e.rep.as_mut() {
                *r = scale_vector(r, &lc);
            }
        }
        let order = self.order;
        idx.sort_by(|&a, &b| {
            let (x, y) = (&self.elems[a].vec[0], &self.elems[b].vec[0]);
            order.cmp(&y.mono, y.pos, &x.mono, x.pos)
        });
        let mut out = Vec::with_capacity(idx.len());
        for &i in &idx {
            let e = self.elems[i].clone();
            // Tail reduction against the other (fixed) leading terms.
            let mut index = self.index.clone();
            index.remove(e.vec[0].pos, i);
            let lead = e.vec[0].clone();
            let tail: Vector = e.vec[1..].to_vec();
            let rep = e.rep.clone();
            let (rtail, rrep) = reduce(tail, rep, &self.elems, &index, order, &self.rep_order, true, self.budget, None)?;
            let mut v = Vec::with_capacity(rtail.len() + 1);
            v.push(lead);
            v.extend(rtail);
            out.push(Element::new(v, rrep, e.sugar));
            // Later elements reduce against already reduced ones.
            self.elems[i] = out.last().unwrap().clone();
        }
        Ok(out)
    }
}

/// Result of a module basis computation.
pub struct ModuleBasis {
    pub elements: Vec<Vector>,
    /// For each basis element, its expression in the input generators
    /// (position = generator index), when tracking was requested.
    pub reps: Option<Vec<Vector>>,
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn groebner(
    gens: Vec<Vector>,
    order: &ModuleOrder,
    weights: &[u32],
    track: bool,
    budget: &mut Budget,
) -> Result<ModuleBasis> {
    let rep_order = ModuleOrder::Pot { base: MonomialOrder::DegRevLex };
    let mut engine = Engine {
        order,
        rep_order,
        weights,
        ring_mode: order.is_ring(),
        normal: !order.is_degree_compatible(),
        elems: Vec::new(),
        active: Vec::new(),
        index: LeadIndex::default(),
        pairs: BTreeSet::new(),
        budget,
    };
    let arity = weights.len();
    let mut inputs: Vec<(usize, Vector)> = gens.into_iter().enumerate().filter(|(_, v)| !v.is_empty()).collect();
    // Low degrees first keeps homogeneous runs degree-by-degree.
    inputs.sort_by_key(|(k, v)| (v.iter().map(|t| t.mono.degree()).max().unwrap_or(0), *k));
    for (k, v) in inputs {
        let rep = if track {
            Some(vec![MTerm { coeff: Coeff::one(), mono: Monomial::one(arity), pos: k as u32 }])
        } else {
            None
        };
        engine.add_generator(v, rep)?;
    }
    engine.run()?;
    let elems = engine.finish()?;
    let (elements, reps): (Vec<Vector>, Vec<Option<Vector>>) = elems.into_iter().map(|e| (e.vec, e.rep)).unzip();
    let reps = if track { Some(reps.into_iter().map(|r| r.unwrap_or_default()).collect()) } else { None };
    Ok(ModuleBasis { elements, reps })
}

/// Full normal form of `f` against a (monic) basis.
pub fn normal_form(f: Vector, basis: &[Vector], order: &ModuleOrder, budget: &mut Budget) -> Result<Vector> {
    let elems: Vec<Element> = basis.iter().map(|v| Element::new(v.clone(), None, 0)).collect();
    let mut index = LeadIndex::default();
    for (i, e) in elems.iter().enumerate() {
        index.insert(e.vec[0].pos, i);
    }
    let (r, _) = reduce(f, None, &elems, &index, order, order, true, budget, None)?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Polynomial, VariableContext};

    fn to_vec(p: &Polynomial) -> Vector {
        p.terms()
            .iter()
            .map(|t| MTerm { coeff: t.coeff.clone(), mono: t.mono.clone(), pos: 0 })
            .collect()
    }

    #[test]
    fn sub_scaled_cancels_lead() {
        let r = VariableContext::standard(vec!["X", "Y"]).unwrap();
        let o = ModuleOrder::Ring(MonomialOrder::DegRevLex);
        let a = to_vec(&parse_polynomial(&r, "X^2 + Y").unwrap());
        let b = to_vec(&parse_polynomial(&r, "X - Y").unwrap());
        let x = Monomial::variable(0, r.weights());
        let d = sub_scaled(&a, &Coeff::one(), &x, &b, &o);
        let expect = to_vec(&parse_polynomial(&r, "X*Y + Y").unwrap());
        assert_eq!(d, expect);
    }

    #[test]
    fn budget_is_enforced() {
        let r = VariableContext::standard(vec!["X", "Y", "Z"]).unwrap();
        let o = ModuleOrder::Ring(MonomialOrder::Lex);
        let gens = ["X^3 - Y*Z", "Y^3 - X*Z", "Z^3 - X*Y"]
            .iter()
            .map(|s| to_vec(&parse_polynomial(&r, s).unwrap().with_order(MonomialOrder::Lex)))
            .collect();
        let mut b = Budget::new(3);
        assert!(matches!(groebner(gens, &o, r.weights(), false, &mut b), Err(Error::BudgetExceeded { budget: 3 })));
    }
}
