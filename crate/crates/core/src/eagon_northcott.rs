//! The Eagon–Northcott complex of a `t × m` matrix and its acyclicity
//! criterion `ht I_t = m − t + 1`.

use serde::{Deserialize, Serialize};

use crate::algebra::GradedAlgebra;
use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use crate::groebner::{Height, Ideal};
use crate::matrix::{subsets, PolyMatrix};
use crate::poly::{Polynomial, Ring};

/// An Eagon–Northcott complex together with its input.
#[derive(Clone, Debug)]
pub struct EnComplex {
    pub complex: FreeComplex,
    pub matrix: PolyMatrix,
    pub t: usize,
    pub m: usize,
}

/// Exponent vectors of total degree `k` in `t` variables, lexicographically
/// descending.
fn exponents(t: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(t: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() + 1 == t {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=k).rev() {
            prefix.push(a);
            rec(t, k - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if t > 0 {
        rec(t, k, &mut Vec::new(), &mut out);
    }
    out
}

fn label(cols: &[usize], alpha: &[usize]) -> String {
    let c: Vec<String> = cols.iter().map(|c| (c + 1).to_string()).collect();
    let mut s = format!("e{{{}}}", c.join(","));
    let y: Vec<String> = alpha
        .iter()
        .enumerate()
        .filter(|&(_, &a)| a > 0)
        .map(|(l, &a)| if a == 1 { format!("y{}", l + 1) } else { format!("y{}^{}", l + 1, a) })
        .collect();
    if !y.is_empty() {
        s.push('*');
        s.push_str(&y.join("*"));
    }
    s
}

/// Builds `E_i = Λ^{t+i−1} F ⊗ D_{i−1}` for `i = 1..m−t+1`, with `d_1` the
/// row of maximal minors and, for `i ≥ 2`,
/// `e_J ⊗ y^α ↦ Σ_{k∈J} Σ_{α_l>0} (−1)^{pos(k,J)} M_{l,k} e_{J∖k} ⊗ y^{α−ε_l}`.
pub fn build_en(m: &PolyMatrix) -> Result<EnComplex> {
    let (t, cols) = (m.rows(), m.cols());
    if t == 0 || t > cols {
        return Err(Error::Shape(format!("Eagon–Northcott needs 1 <= t <= m, got a {}x{} matrix", t, cols)));
    }
    let ring = m.ring().clone();
    let len = cols - t + 1;
    let bases: Vec<Vec<(Vec<usize>, Vec<usize>)>> = (1..=len)
        .map(|i| {
            let mut b = Vec::new();
            for j in subsets(cols, t + i - 1) {
                for a in exponents(t, i - 1) {
                    b.push((j.clone(), a));
                }
            }
            b
        })
        .collect();
    let mut diffs = Vec::with_capacity(len);
    let all_rows: Vec<usize> = (0..t).collect();
    let minors = bases[0].iter().map(|(j, _)| m.minor(&all_rows, j)).collect::<Result<Vec<_>>>()?;
    diffs.push(PolyMatrix::new(&ring, 1, minors.len(), minors)?);
    for i in 2..=len {
        let (src, dst) = (&bases[i - 1], &bases[i - 2]);
        let mut d = PolyMatrix::zeros(&ring, dst.len(), src.len());
        for (c, (j, alpha)) in src.iter().enumerate() {
            for (pos, &k) in j.iter().enumerate() {
                let rest: Vec<usize> = j.iter().copied().filter(|&x| x != k).collect();
                for l in 0..t {
                    if alpha[l] == 0 {
                        continue;
                    }
                    let mut beta = alpha.clone();
                    beta[l] -= 1;
                    let r = dst.iter().position(|(jj, aa)| *jj == rest && *aa == beta).expect("basis element");
                    let entry = m.get(l, k);
                    let term = if pos % 2 == 0 { entry.clone() } else { -entry };
                    let v = d.get(r, c) + &term;
                    d.set(r, c, v);
                }
            }
        }
        diffs.push(d);
    }
    let mut labels = vec![vec!["1".to_string()]];
    labels.extend(bases.iter().map(|b| b.iter().map(|(j, a)| label(j, a)).collect()));
    let complex = FreeComplex::new(&ring, 1, diffs, Some(labels))?;
    Ok(EnComplex { complex, matrix: m.clone(), t, m: cols })
}

impl EnComplex {
    /// Zero-based columns of the input whose entries span the first row of
    /// `d_2` (the row of `e_{1..t}`): every column after the first `t`.
    pub fn first_row_d2_columns(&self) -> Vec<usize> {
        (self.t..self.m).collect()
    }

    /// Checks that every entry of the first row of `d_2` lies in the ideal
    /// generated by the entries of [`EnComplex::first_row_d2_columns`].
    pub fn first_row_d2_in_block_ideal(&self) -> Result<bool> {
        if self.complex.length() < 2 {
            return Ok(true);
        }
        let rows: Vec<usize> = (0..self.t).collect();
        let block = self.matrix.submatrix(&rows, &self.first_row_d2_columns())?;
        let ideal = Ideal::new(self.matrix.ring(), block.entries().to_vec())?;
        for p in self.complex.differential(2).row(0) {
            if !ideal.contains(&p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Expected rank of `E_i`: `C(m, t+i−1) · C(t+i−2, i−1)`.
pub fn en_rank(t: usize, m: usize, i: usize) -> usize {
    if i == 0 {
        return 1;
    }
    binomial(m, t + i - 1) * binomial(t + i - 2, i - 1)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, j| acc * (n - j) / (j + 1))
}

/// Koszul complex on `g_1..g_m`, with exterior bases indexed by bitmasks.
pub fn koszul(ring: &Ring, gens: &[Polynomial]) -> Result<FreeComplex> {
    let m = gens.len();
    if m > 20 {
        return Err(Error::Shape("Koszul complex on more than 20 elements".into()));
    }
    let by_size = |k: usize| -> Vec<u32> {
        let mut v: Vec<u32> = (0u32..1 << m).filter(|s| s.count_ones() as usize == k).collect();
        // Lexicographic on sorted index lists.
        v.sort_by_key(|&s| (0..m).map(|i| s & (1 << i) == 0).collect::<Vec<_>>());
        v
    };
    let mut diffs = Vec::new();
    for k in 1..=m {
        let (src, dst) = (by_size(k), by_size(k - 1));
        let mut d = PolyMatrix::zeros(ring, dst.len(), src.len());
        for (c, &s) in src.iter().enumerate() {
            for i in 0..m {
                if s & (1 << i) == 0 {
                    continue;
                }
                let below = (s & ((1 << i) - 1)).count_ones();
                let r = dst.iter().position(|&x| x == s & !(1 << i)).unwrap();
                let g = if below % 2 == 0 { gens[i].clone() } else { -&gens[i] };
                d.set(r, c, g);
            }
        }
        diffs.push(d);
    }
    FreeComplex::new(ring, 1, diffs, None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnAcyclicity {
    pub height: Height,
    /// `m − t + 1`, the largest height `I_t` can have.
    pub bound: usize,
    /// `ht I_t ≥ m − t + 1`; the unit ideal counts as meeting it.
    pub acyclic: bool,
}

/// Height of the maximal minors of `m` (in `R` when given) against the
/// bound `m − t + 1`.
pub fn en_acyclicity(m: &PolyMatrix, quotient: Option<&GradedAlgebra>) -> Result<EnAcyclicity> {
    let (t, cols) = (m.rows(), m.cols());
    if t == 0 || t > cols {
        return Err(Error::Shape(format!("need 1 <= t <= m, got a {}x{} matrix", t, cols)));
    }
    let minors = m.minors_ideal(t)?;
    let height = match quotient {
        Some(alg) => alg.height_of(&minors)?,
        None => minors.height()?,
    };
    let bound = cols - t + 1;
    Ok(EnAcyclicity { height, bound, acyclic: height.at_least(bound as i64) })
}

/// Whether `d · v = 0`, modulo the relations of `quotient` when given.
pub fn kernel_membership(d: &PolyMatrix, v: &[Polynomial], quotient: Option<&GradedAlgebra>) -> Result<bool> {
    let image = d.apply(v)?;
    for p in image {
        let p = match quotient {
            Some(alg) => alg.reduce(&p)?,
            None => p,
        };
        if !p.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
