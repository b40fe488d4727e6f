//! Dense matrices of polynomials and their minors.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{Coeff, MonomialOrder, Polynomial, Ring};

/// Row-major matrix of polynomials over one ring.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(ring: &Ring, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {}x{} matrix", entries.len(), rows, cols)));
        }
        let probe = Polynomial::zero(ring);
        if let Some(bad) = entries.iter().find(|e| !e.same_ring(&probe)) {
            return Err(Error::ContextMismatch(format!("matrix entry {} is not in {:?}", bad, ring)));
        }
        let entries = entries.into_iter().map(|e| e.with_order(MonomialOrder::DegRevLex)).collect();
        Ok(PolyMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: vec![Polynomial::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_columns(ring: &Ring, rows: usize, columns: Vec<Vec<Polynomial>>) -> Result<Self> {
        let cols = columns.len();
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Shape(format!("columns must have length {}", rows)));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for c in &columns {
                entries.push(c[i].clone());
            }
        }
        Self::new(ring, rows, cols, entries)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        self.entries[r * self.cols + c] = p.with_order(MonomialOrder::DegRevLex);
    }

    pub fn row(&self, r: usize) -> Vec<Polynomial> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.ring, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if *self.ring != *other.ring {
            return Err(Error::ContextMismatch("matrices over different rings".into()));
        }
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    let b = other.get(k, c);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.entries[r * other.cols + c] = acc;
            }
        }
        Ok(out)
    }

    /// Matrix times a column vector.
    pub fn apply(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let col = PolyMatrix::from_columns(&self.ring, self.cols, vec![v.to_vec()])?;
        Ok(self.mul(&col)?.column(0))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<PolyMatrix> {
        if rows.iter().any(|&r| r >= self.rows) || cols.iter().any(|&c| c >= self.cols) {
            return Err(Error::Shape("submatrix index out of range".into()));
        }
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        Ok(PolyMatrix { ring: self.ring.clone(), rows: rows.len(), cols: cols.len(), entries })
    }

    pub fn map_entries<F: FnMut(&Polynomial) -> Result<Polynomial>>(&self, mut f: F) -> Result<PolyMatrix> {
        let entries = self.entries.iter().map(|e| f(e)).collect::<Result<Vec<_>>>()?;
        Self::new(&self.ring, self.rows, self.cols, entries)
    }

    /// Replaces row `target` by `row_target + c · row_source`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, c: &Coeff) {
        for k in 0..self.cols {
            let add = self.get(source, k).scale(c);
            let new = self.get(target, k) + &add;
            self.set(target, k, new);
        }
    }

    /// Determinant of the submatrix on `rows × cols` (listed order), by
    /// Laplace expansion along its first row.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
        self.minor_along(rows, cols, 0)
    }

    /// Same determinant expanded along row `k` of the submatrix.
    pub fn minor_along(&self, rows: &[usize], cols: &[usize], k: usize) -> Result<Polynomial> {
        if rows.len() != cols.len() {
            return Err(Error::Shape(format!("{}x{} minor is not square", rows.len(), cols.len())));
        }
        if rows.iter().any(|&r| r >= self.rows) || cols.iter().any(|&c| c >= self.cols) {
            return Err(Error::Shape("minor index out of range".into()));
        }
        if rows.is_empty() {
            return Ok(Polynomial::one(&self.ring));
        }
        if k >= rows.len() {
            return Err(Error::Shape(format!("expansion row {} of a {}x{} minor", k, rows.len(), rows.len())));
        }
        let mut memo = HashMap::new();
        let mut rest: Vec<usize> = rows.to_vec();
        let r = rest.remove(k);
        let mut acc = Polynomial::zero(&self.ring);
        for (j, &c) in cols.iter().enumerate() {
            let a = self.get(r, c);
            if a.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &c)| c).collect();
            let sub = self.det_rec(&rest, &sub_cols, &mut memo);
            let term = a * &sub;
            acc = if (j + k) % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        Ok(acc)
    }

    fn det_rec(&self, rows: &[usize], cols: &[usize], memo: &mut HashMap<(Vec<usize>, Vec<usize>), Polynomial>) -> Polynomial {
        if rows.is_empty() {
            return Polynomial::one(&self.ring);
        }
        if rows.len() == 1 {
            return self.get(rows[0], cols[0]).clone();
        }
        let key = (rows.to_vec(), cols.to_vec());
        if let Some(p) = memo.get(&key) {
            return p.clone();
        }
        let r = rows[0];
        let mut acc = Polynomial::zero(&self.ring);
        for (j, &c) in cols.iter().enumerate() {
            let a = self.get(r, c);
            if a.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &c)| c).collect();
            let sub = self.det_rec(&rows[1..], &sub_cols, memo);
            let term = a * &sub;
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        memo.insert(key, acc.clone());
        acc
    }

    /// All `s × s` minors, row subsets outermost, both in lexicographic
    /// order. `s = 0` gives the single minor 1.
    pub fn minors(&self, s: usize) -> Result<Vec<Polynomial>> {
        if s > self.rows.min(self.cols) {
            return Err(Error::Shape(format!("{}x{} minors of a {}x{} matrix", s, s, self.rows, self.cols)));
        }
        let mut memo = HashMap::new();
        let mut out = Vec::new();
        for rows in subsets(self.rows, s) {
            for cols in subsets(self.cols, s) {
                out.push(self.det_rec(&rows, &cols, &mut memo));
            }
        }
        Ok(out)
    }

    /// The ideal `I_s` of `s × s` minors; `(1)` for `s = 0` and `(0)` when
    /// `s` exceeds both extents' minimum.
    pub fn minors_ideal(&self, s: usize) -> Result<Ideal> {
        if s > self.rows.min(self.cols) {
            return Ok(Ideal::zero(&self.ring));
        }
        let mut gens = self.minors(s)?;
        gens.retain(|g| !g.is_zero());
        gens.sort_by(|a, b| a.to_string().cmp(&b.to_string()));
        gens.dedup();
        Ideal::new(&self.ring, gens)
    }

    /// Rendering as rows of entries separated by `;`.
    pub fn render_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|p| p.to_string()).collect()).collect()
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for row in self.render_rows() {
            writeln!(f, "  {}", row.join(" | "))?;
        }
        Ok(())
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, VariableContext};
    use proptest::prelude::*;

    fn mat(r: &Ring, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            r,
            rows.iter().map(|row| row.iter().map(|s| parse_polynomial(r, s).unwrap()).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn two_by_two_determinant() {
        let r = VariableContext::standard(vec!["a", "b", "c", "d"]).unwrap();
        let m = mat(&r, &[&["a", "b"], &["c", "d"]]);
        assert_eq!(m.minors(2).unwrap(), vec![parse_polynomial(&r, "a*d - b*c").unwrap()]);
        assert!(m.minors(3).is_err());
    }

    #[test]
    fn catalecticant_minors() {
        let r = VariableContext::standard(vec!["X", "Y", "Z", "W"]).unwrap();
        let m = mat(&r, &[&["X", "Y", "Z"], &["Y", "Z", "W"]]);
        let got: Vec<String> = m.minors(2).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(got, vec!["-Y^2 + X*Z", "-Y*Z + X*W", "-Z^2 + Y*W"]);
    }

    #[test]
    fn one_by_one_minors_are_entries() {
        let r = VariableContext::standard(vec!["x", "y", "z"]).unwrap();
        let m = mat(&r, &[&["y"], &["x"], &["-2*z"]]);
        let got: Vec<String> = m.minors(1).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(got, vec!["y", "x", "-2*z"]);
    }

    #[test]
    fn product_and_transpose() {
        let r = VariableContext::standard(vec!["X", "Y"]).unwrap();
        let a = mat(&r, &[&["X", "Y"]]);
        let b = mat(&r, &[&["Y"], &["-X"]]);
        assert!(a.mul(&b).unwrap().is_zero());
        assert_eq!(a.transpose(), mat(&r, &[&["X"], &["Y"]]));
        assert!(a.mul(&a).is_err());
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = PolyMatrix> {
        prop::collection::vec(prop::collection::vec((-3i64..4, 0u16..3, 0u16..3), 0..3), n * n).prop_map(
            move |cells| {
                let r = VariableContext::standard(vec!["X", "Y"]).unwrap();
                let entries = cells
                    .into_iter()
                    .map(|terms| {
                        let mut p = Polynomial::zero(&r);
                        for (c, a, b) in terms {
                            let m = crate::poly::Monomial::from_exponents(&[a, b], r.weights());
                            p = &p + &Polynomial::monomial(&r, Coeff::from_int(c), m);
                        }
                        p
                    })
                    .collect();
                PolyMatrix::new(&r, n, n, entries).unwrap()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn laplace_expansion_row_independent(m in (1usize..5).prop_flat_map(arb_matrix), k in 0usize..4) {
            let n = m.rows();
            let idx: Vec<usize> = (0..n).collect();
            let k = k % n;
            prop_assert_eq!(m.minor_along(&idx, &idx, k).unwrap(), m.minor(&idx, &idx).unwrap());
        }
    }
}
