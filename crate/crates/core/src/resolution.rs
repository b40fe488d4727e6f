//! Graded free resolutions by Schreyer's algorithm, minimization by unit
//! cancellation, and depth through Auslander–Buchsbaum.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use crate::groebner::engine::{self, Budget, Element, LeadIndex, MTerm, ModuleOrder, SchreyerData, Vector};
use crate::groebner::{default_step_budget, Ideal};
use crate::matrix::PolyMatrix;
use crate::poly::{Coeff, Monomial, MonomialOrder, Polynomial, Ring, Term};

/// `coker(φ)` for a matrix `φ` with homogeneous columns.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    pub ring: Ring,
    /// Degrees of the basis of the target free module.
    pub shifts: Vec<u32>,
    pub relations: PolyMatrix,
}

#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub complex: FreeComplex,
    /// Degrees of the basis elements of each `F_k`.
    pub shifts: Vec<Vec<u32>>,
    /// No differential has a nonzero constant entry.
    pub minimal: bool,
    /// Ranks of the Schreyer frame before minimization.
    pub frame_ranks: Vec<usize>,
}

impl FreeResolution {
    /// Index of the last nonzero module.
    pub fn projective_dimension(&self) -> usize {
        self.complex.ranks().iter().rposition(|&r| r > 0).unwrap_or(0)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.complex.ranks()[..=self.projective_dimension()].to_vec()
    }
}

fn lead_degree(v: &[MTerm], shifts: &[u32]) -> u32 {
    v.first().map_or(0, |t| t.mono.degree() + shifts[t.pos as usize])
}

impl ModulePresentation {
    pub fn new(relations: PolyMatrix, shifts: Vec<u32>) -> Result<Self> {
        if shifts.len() != relations.rows() {
            return Err(Error::Shape(format!("{} shifts for {} rows", shifts.len(), relations.rows())));
        }
        let pres = ModulePresentation { ring: relations.ring().clone(), shifts, relations };
        for c in 0..pres.relations.cols() {
            if pres.column_degree(c).is_none() {
                return Err(Error::Precondition(format!("column {} is not homogeneous", c + 1)));
            }
        }
        Ok(pres)
    }

    /// `P/J` as the cokernel of the row of generators of `J`.
    pub fn quotient_ring(j: &Ideal) -> Result<Self> {
        let row = PolyMatrix::from_rows(j.ring(), vec![j.generators().to_vec()])?;
        Self::new(row, vec![0])
    }

    /// Degree of a homogeneous column; `Some(0)` for a zero column.
    pub fn column_degree(&self, c: usize) -> Option<u32> {
        let mut deg = None;
        for r in 0..self.relations.rows() {
            let e = self.relations.get(r, c);
            if e.is_zero() {
                continue;
            }
            let (homog, d) = e.weighted_degree_info();
            let d = d? + self.shifts[r];
            if !homog || deg.map_or(false, |x| x != d) {
                return None;
            }
            deg = Some(d);
        }
        Some(deg.unwrap_or(0))
    }

    fn bottom_order(&self) -> ModuleOrder {
        if self.shifts.len() == 1 {
            ModuleOrder::Ring(MonomialOrder::DegRevLex)
        } else {
            ModuleOrder::Top { base: MonomialOrder::DegRevLex, shifts: Arc::new(self.shifts.clone()) }
        }
    }

    fn columns(&self, order: &ModuleOrder) -> Vec<Vector> {
        (0..self.relations.cols())
            .map(|c| {
                let mut terms = Vec::new();
                for r in 0..self.relations.rows() {
                    for t in self.relations.get(r, c).terms() {
                        terms.push((t.coeff.clone(), t.mono.clone(), r as u32));
                    }
                }
                build_vector(terms, order)
            })
            .collect()
    }

    /// Generators of the syzygies of the columns of `relations`.
    pub fn syzygies(&self) -> Result<ModulePresentation> {
        let order = self.bottom_order();
        let gens = self.columns(&order);
        let k = gens.len();
        let mut budget = Budget::new(default_step_budget());
        let basis = engine::groebner(gens.clone(), &order, self.ring.weights(), true, &mut budget)?;
        let mut g = basis.elements;
        let mut a = basis.reps.unwrap_or_default();
        // Sort once so the Schreyer syzygies of the basis are computed on
        // the same indices as the representation matrix.
        let mut idx: Vec<usize> = (0..g.len()).collect();
        idx.sort_by(|&x, &y| frame_sort_key(&g[x]).cmp(&frame_sort_key(&g[y])));
        g = idx.iter().map(|&i| g[i].clone()).collect();
        a = idx.iter().map(|&i| a[i].clone()).collect();
        let rep_order = ModuleOrder::Pot { base: MonomialOrder::DegRevLex };
        let mut cols: Vec<Vector> = Vec::new();
        // Syzygies of the basis, pulled back along the representations.
        let gb_order = schreyer_order(&order, None, &g);
        for tau in basis_syzygies(&g, &order, &gb_order, self.ring.weights(), &mut budget)? {
            let mut acc: Vector = Vec::new();
            for t in &tau {
                acc = engine::sub_scaled(&acc, &-&t.coeff, &t.mono, &a[t.pos as usize], &rep_order);
            }
            cols.push(acc);
        }
        // e_j minus the pullback of the expression of f_j in the basis.
        let (elems, index) = elements_of(&g);
        for (j, f) in gens.iter().enumerate() {
            let mut quot = Vec::new();
            let (rest, _) =
                engine::reduce(f.clone(), None, &elems, &index, &order, &order, false, &mut budget, Some(&mut quot))?;
            debug_assert!(rest.is_empty());
            let mut acc = vec![MTerm { coeff: Coeff::one(), mono: Monomial::one(self.ring.arity()), pos: j as u32 }];
            for (l, c, m) in quot {
                acc = engine::sub_scaled(&acc, &c, &m, &a[l], &rep_order);
            }
            cols.push(acc);
        }
        let mut columns: Vec<Vec<Polynomial>> = Vec::new();
        for v in cols {
            if v.is_empty() {
                continue;
            }
            let col = vector_to_column(&self.ring, &v, k);
            if !columns.contains(&col) {
                columns.push(col);
            }
        }
        let relations = PolyMatrix::from_columns(&self.ring, k, columns)?;
        let shifts = (0..k).map(|c| self.column_degree(c).unwrap_or(0)).collect();
        ModulePresentation::new(relations, shifts)
    }

    /// Schreyer resolution of the cokernel, minimized.
    pub fn free_resolution(&self, max_length: usize) -> Result<FreeResolution> {
        let order = self.bottom_order();
        let gens = self.columns(&order);
        let mut budget = Budget::new(default_step_budget());
        let basis = engine::groebner(gens, &order, self.ring.weights(), false, &mut budget)?.elements;
        let levels = schreyer_frame(basis, &order, self.ring.weights(), max_length, &mut budget)?;
        let rank0 = self.shifts.len();
        let mut ranks = vec![rank0];
        let mut shifts = vec![self.shifts.clone()];
        let mut mats = Vec::new();
        for level in &levels {
            let rows = *ranks.last().unwrap();
            let prev = shifts.last().unwrap().clone();
            let cols: Vec<Vec<Polynomial>> = level.iter().map(|v| vector_to_column(&self.ring, v, rows)).collect();
            shifts.push(level.iter().map(|v| lead_degree(v, &prev)).collect());
            mats.push(PolyMatrix::from_columns(&self.ring, rows, cols)?);
            ranks.push(level.len());
        }
        let frame_ranks = ranks.clone();
        let expected = betti_from_constants(&mats, &ranks);
        minimize(&mut mats, &mut shifts);
        while mats.last().map_or(false, |m| m.cols() == 0) {
            mats.pop();
            shifts.pop();
        }
        let minimal = mats.iter().all(|m| m.entries().iter().all(|e| e.constant_term().is_zero()));
        let complex = FreeComplex::new(&self.ring, rank0, mats, None)?;
        let got: Vec<usize> = complex.ranks().to_vec();
        let trimmed: Vec<usize> = expected[..got.len()].to_vec();
        if got != trimmed || expected[got.len()..].iter().any(|&b| b != 0) {
            return Err(Error::Precondition(format!(
                "minimized ranks {:?} disagree with Betti numbers {:?}",
                got, expected
            )));
        }
        Ok(FreeResolution { complex, shifts, minimal, frame_ranks })
    }
}

fn build_vector(terms: Vec<(Coeff, Monomial, u32)>, order: &ModuleOrder) -> Vector {
    engine::normalize_vector(terms.into_iter().map(|(coeff, mono, pos)| MTerm { coeff, mono, pos }).collect(), order)
}

fn vector_to_column(ring: &Ring, v: &[MTerm], rows: usize) -> Vec<Polynomial> {
    let mut buckets: Vec<Vec<Term>> = vec![Vec::new(); rows];
    for t in v {
        buckets[t.pos as usize].push(Term { coeff: t.coeff.clone(), mono: t.mono.clone() });
    }
    buckets.into_iter().map(|b| Polynomial::from_terms(ring, MonomialOrder::DegRevLex, b)).collect()
}

/// Position first, then lexicographically decreasing leading monomial.
fn frame_sort_key(v: &Vector) -> (u32, std::cmp::Reverse<Vec<u16>>) {
    let lead = &v[0];
    (lead.pos, std::cmp::Reverse(lead.mono.exponents().to_vec()))
}

fn elements_of(level: &[Vector]) -> (Vec<Element>, LeadIndex) {
    let elems: Vec<Element> = level.iter().map(|v| Element::new(v.clone(), None, 0)).collect();
    let mut index = LeadIndex::default();
    for (i, e) in elems.iter().enumerate() {
        index.insert(e.vec[0].pos, i);
    }
    (elems, index)
}

/// The Schreyer order induced on the free module whose basis maps to
/// `level`, given the data of the module `level` lives in.
fn schreyer_order(bottom: &ModuleOrder, prev: Option<&SchreyerData>, level: &[Vector]) -> ModuleOrder {
    let mut full = Vec::with_capacity(level.len());
    let mut chain = Vec::with_capacity(level.len());
    for (i, v) in level.iter().enumerate() {
        let lead = &v[0];
        let p = lead.pos as usize;
        match prev {
            None => {
                full.push(lead.mono.clone());
                chain.push(vec![lead.pos, i as u32]);
            }
            Some(s) => {
                full.push(lead.mono.mul(&s.full[p]));
                let mut c = s.chain[p].clone();
                c.push(i as u32);
                chain.push(c);
            }
        }
    }
    ModuleOrder::Schreyer(Arc::new(SchreyerData { bottom: bottom.clone(), full, chain }))
}

/// Schreyer syzygies of a Gröbner basis `level` (in `order`): one per pair
/// `i < j` with equal lead position whose quotient `lcm/lt_i` is minimal.
/// The result is a Gröbner basis of the syzygies in `syz_order`.
fn basis_syzygies(
    level: &[Vector],
    order: &ModuleOrder,
    syz_order: &ModuleOrder,
    weights: &[u32],
    budget: &mut Budget,
) -> Result<Vec<Vector>> {
    let (elems, index) = elements_of(level);
    let mut out = Vec::new();
    for i in 0..level.len() {
        let (pi, li) = (level[i][0].pos, &level[i][0].mono);
        let mut cands: Vec<(usize, Monomial)> = Vec::new();
        for j in i + 1..level.len() {
            if level[j][0].pos != pi {
                continue;
            }
            let l = li.lcm(&level[j][0].mono, weights);
            let q = li.quotient_of(&l).unwrap();
            cands.push((j, q));
        }
        let keep: Vec<usize> = (0..cands.len())
            .filter(|&a| {
                !(0..cands.len()).any(|b| {
                    b != a
                        && cands[b].1.divides(&cands[a].1)
                        && (cands[b].1 != cands[a].1 || b < a)
                })
            })
            .collect();
        for a in keep {
            let (j, ref mi) = cands[a];
            let lj = &level[j][0].mono;
            let l = mi.mul(li);
            let mj = lj.quotient_of(&l).unwrap();
            let ci = level[i][0].coeff.recip();
            let cj = level[j][0].coeff.recip();
            let a_vec: Vector = level[i]
                .iter()
                .map(|t| MTerm { coeff: &t.coeff * &ci, mono: t.mono.mul(&mi), pos: t.pos })
                .collect();
            let s = engine::sub_scaled(&a_vec, &cj, &mj, &level[j], order);
            let mut quot = Vec::new();
            let (rest, _) = engine::reduce(s, None, &elems, &index, order, order, false, budget, Some(&mut quot))?;
            if !rest.is_empty() {
                return Err(Error::Precondition("S-vector of a Gröbner basis did not reduce to zero".into()));
            }
            let mut terms = vec![(ci.clone(), mi.clone(), i as u32), (-&cj, mj, j as u32)];
            for (k, c, m) in quot {
                terms.push((-&c, m, k as u32));
            }
            out.push(build_vector(terms, syz_order));
        }
    }
    Ok(out)
}

/// Levels of the Schreyer frame: level `k` holds the columns of `d_k`.
fn schreyer_frame(
    basis: Vec<Vector>,
    bottom: &ModuleOrder,
    weights: &[u32],
    max_length: usize,
    budget: &mut Budget,
) -> Result<Vec<Vec<Vector>>> {
    let mut level = basis;
    level.sort_by(|a, b| frame_sort_key(a).cmp(&frame_sort_key(b)));
    let mut space = bottom.clone();
    let mut prev: Option<Arc<SchreyerData>> = None;
    let mut levels = Vec::new();
    while !level.is_empty() {
        if levels.len() >= max_length {
            return Err(Error::ResolutionTooLong(max_length));
        }
        let syz_order = schreyer_order(bottom, prev.as_deref(), &level);
        let mut next = basis_syzygies(&level, &space, &syz_order, weights, budget)?;
        next.sort_by(|a, b| frame_sort_key(a).cmp(&frame_sort_key(b)));
        levels.push(level);
        prev = match &syz_order {
            ModuleOrder::Schreyer(s) => Some(s.clone()),
            _ => unreachable!(),
        };
        space = syz_order;
        level = next;
    }
    Ok(levels)
}

/// Rank over Q of the matrix of constant terms.
fn constant_rank(m: &PolyMatrix) -> usize {
    let mut a: Vec<Vec<Coeff>> = (0..m.rows()).map(|r| m.row(r).iter().map(|e| e.constant_term()).collect()).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                for k in c..cols {
                    let v = &a[r][k] - &(&f * &a[rank][k]);
                    a[r][k] = v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Graded Betti numbers summed over degrees:
/// `β_k = rank F_k − rank(d_k ⊗ Q) − rank(d_{k+1} ⊗ Q)`.
fn betti_from_constants(mats: &[PolyMatrix], ranks: &[usize]) -> Vec<usize> {
    let cr: Vec<usize> = mats.iter().map(constant_rank).collect();
    (0..ranks.len())
        .map(|k| {
            let below = if k == 0 { 0 } else { cr[k - 1] };
            let above = cr.get(k).copied().unwrap_or(0);
            ranks[k] - below - above
        })
        .collect()
}

/// Cancels unit entries: for a constant pivot `(r, c)` of `d_k`, clears
/// row `r` by column operations, then drops row `r` and column `c` of
/// `d_k`, column `r` of `d_{k−1}` and row `c` of `d_{k+1}`.
fn minimize(mats: &mut [PolyMatrix], shifts: &mut [Vec<u32>]) {
    loop {
        let mut found = None;
        'search: for (k, m) in mats.iter().enumerate() {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let e = m.get(r, c);
                    if !e.is_zero() && e.is_constant() {
                        found = Some((k, r, c));
                        break 'search;
                    }
                }
            }
        }
        let Some((k, r, c)) = found else { return };
        let m = &mut mats[k];
        let u = m.get(r, c).constant_term();
        let pivot_col = m.column(c);
        for c2 in 0..m.cols() {
            if c2 == c || m.get(r, c2).is_zero() {
                continue;
            }
            let f = m.get(r, c2).scale(&u.recip());
            for r2 in 0..m.rows() {
                if pivot_col[r2].is_zero() {
                    continue;
                }
                let v = m.get(r2, c2) - &(&f * &pivot_col[r2]);
                m.set(r2, c2, v);
            }
        }
        mats[k] = drop_index(&mats[k], Some(r), Some(c));
        if k > 0 {
            mats[k - 1] = drop_index(&mats[k - 1], None, Some(r));
        }
        if k + 1 < mats.len() {
            mats[k + 1] = drop_index(&mats[k + 1], Some(c), None);
        }
        shifts[k].remove(r);
        shifts[k + 1].remove(c);
    }
}

fn drop_index(m: &PolyMatrix, row: Option<usize>, col: Option<usize>) -> PolyMatrix {
    let rows: Vec<usize> = (0..m.rows()).filter(|&r| Some(r) != row).collect();
    let cols: Vec<usize> = (0..m.cols()).filter(|&c| Some(c) != col).collect();
    m.submatrix(&rows, &cols).expect("indices in range")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthReport {
    pub variables: usize,
    pub dim: i64,
    pub pd: usize,
    pub depth: i64,
    pub cohen_macaulay: bool,
    pub betti: Vec<usize>,
}

/// Depth of `P/J` at the graded maximal ideal as `N − pd`, compared with
/// its dimension.
pub fn depth_and_cm(j: &Ideal) -> Result<DepthReport> {
    if j.is_unit()? {
        return Err(Error::Precondition("depth of the zero ring".into()));
    }
    if !j.is_homogeneous() {
        return Err(Error::Precondition("ideal is not homogeneous".into()));
    }
    let n = j.ring().arity();
    // Resolve from the reduced basis; the frame minimization removes
    // redundant generators anyway.
    let gens = j.groebner()?.to_vec();
    let basis_ideal = Ideal::new(j.ring(), gens)?;
    let res = ModulePresentation::quotient_ring(&basis_ideal)?.free_resolution(n + 1)?;
    let pd = res.projective_dimension();
    let dim = j.krull_dimension()?.dimension;
    let depth = n as i64 - pd as i64;
    Ok(DepthReport { variables: n, dim, pd, depth, cohen_macaulay: depth == dim, betti: res.betti_numbers() })
}

/// Groups column degrees for graded Betti display: `degree → count` per stage.
pub fn graded_betti(res: &FreeResolution) -> Vec<Vec<(u32, usize)>> {
    res.shifts
        .iter()
        .map(|s| {
            let mut counts: HashMap<u32, usize> = HashMap::new();
            for &d in s {
                *counts.entry(d).or_default() += 1;
            }
            let mut v: Vec<(u32, usize)> = counts.into_iter().collect();
            v.sort();
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, VariableContext};

    fn ideal(names: &[&str], gens: &[&str]) -> Ideal {
        let r = VariableContext::standard(names.to_vec()).unwrap();
        Ideal::new(&r, gens.iter().map(|s| parse_polynomial(&r, s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn koszul_syzygy() {
        let j = ideal(&["X", "Y"], &["X", "Y"]);
        let syz = ModulePresentation::quotient_ring(&j).unwrap().syzygies().unwrap();
        assert_eq!(syz.relations.cols(), 1);
        let col: Vec<String> = syz.relations.column(0).iter().map(|p| p.to_string()).collect();
        assert!(col == ["Y", "-X"] || col == ["-Y", "X"], "{:?}", col);
    }

    #[test]
    fn zero_matrix_syzygies_are_free() {
        let r = VariableContext::standard(vec!["X"]).unwrap();
        let z = PolyMatrix::zeros(&r, 1, 2);
        let syz = ModulePresentation::new(z, vec![0]).unwrap().syzygies().unwrap();
        let m = syz.relations.clone();
        let id = Ideal::new(&r, m.row(0)).unwrap();
        assert!(id.is_unit().unwrap());
        let id = Ideal::new(&r, m.row(1)).unwrap();
        assert!(id.is_unit().unwrap());
    }

    #[test]
    fn catalecticant_hilbert_burch() {
        let j = ideal(&["X", "Y", "Z", "W"], &["X*Z - Y^2", "X*W - Y*Z", "Y*W - Z^2"]);
        let pres = ModulePresentation::quotient_ring(&j).unwrap();
        let syz = pres.syzygies().unwrap();
        assert!(pres.relations.mul(&syz.relations).unwrap().is_zero());
        let res = pres.free_resolution(6).unwrap();
        assert_eq!(res.betti_numbers(), vec![1, 3, 2]);
        assert!(res.minimal && res.complex.is_complex().unwrap());
    }

    #[test]
    fn hypersurface_and_complete_intersection() {
        let r = depth_and_cm(&ideal(&["X", "Y"], &["X*Y"])).unwrap();
        assert_eq!((r.pd, r.depth, r.dim, r.cohen_macaulay), (1, 1, 1, true));
        let r = depth_and_cm(&ideal(&["X", "Y", "Z", "A", "B", "C"], &["X*Y - Z^2", "Y*A + X*B - 2*Z*C"])).unwrap();
        assert_eq!((r.pd, r.depth, r.dim, r.cohen_macaulay), (2, 4, 4, true));
    }

    #[test]
    fn two_disjoint_edges() {
        let r = depth_and_cm(&ideal(&["X", "Y", "A", "B"], &["X*Y", "X*B", "Y*A", "A*B"])).unwrap();
        assert_eq!((r.pd, r.depth, r.dim, r.cohen_macaulay), (3, 1, 2, false));
        assert_eq!(r.betti, vec![1, 4, 4, 1]);
    }

    #[test]
    fn redundant_generators_are_minimized() {
        let j = ideal(&["X", "Y", "Z"], &["X", "Y", "X + Y", "Z*X"]);
        let r = depth_and_cm(&j).unwrap();
        assert_eq!(r.betti, vec![1, 2, 1]);
        let res = ModulePresentation::quotient_ring(&j).unwrap().free_resolution(5).unwrap();
        assert_eq!(res.betti_numbers(), vec![1, 2, 1]);
        assert!(res.frame_ranks.iter().sum::<usize>() >= 4);
    }

    #[test]
    fn maximal_ideal_gives_koszul_ranks() {
        let r = depth_and_cm(&ideal(&["A", "B", "C", "D"], &["A", "B", "C", "D"])).unwrap();
        assert_eq!(r.betti, vec![1, 4, 6, 4, 1]);
        assert_eq!(r.depth, 0);
    }

    #[test]
    fn rejects_unit_and_inhomogeneous() {
        assert!(depth_and_cm(&ideal(&["X"], &["1"])).is_err());
        assert!(depth_and_cm(&ideal(&["X", "Y"], &["X + Y^2"])).is_err());
    }
}
