//! Finite complexes of free modules `0 → E_L → … → E_1 → E_0 → 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::Ring;

#[derive(Clone, Debug)]
pub struct FreeComplex {
    ring: Ring,
    ranks: Vec<usize>,
    /// `differentials[k]` is `d_{k+1}: E_{k+1} → E_k`.
    differentials: Vec<PolyMatrix>,
    labels: Vec<Vec<String>>,
}

/// Plain-data view of a complex for reports and dumps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDump {
    pub ranks: Vec<usize>,
    pub labels: Vec<Vec<String>>,
    /// `differentials[k][row][col]` is an entry of `d_{k+1}`.
    pub differentials: Vec<Vec<Vec<String>>>,
}

impl FreeComplex {
    /// Builds a complex from `d_1, …, d_L`; shapes must chain.
    pub fn new(ring: &Ring, rank0: usize, differentials: Vec<PolyMatrix>, labels: Option<Vec<Vec<String>>>) -> Result<Self> {
        let mut ranks = vec![rank0];
        for (k, d) in differentials.iter().enumerate() {
            if d.rows() != ranks[k] {
                return Err(Error::Shape(format!(
                    "d_{} has {} rows but E_{} has rank {}",
                    k + 1,
                    d.rows(),
                    k,
                    ranks[k]
                )));
            }
            ranks.push(d.cols());
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != ranks.len() || l.iter().zip(&ranks).any(|(l, &r)| l.len() != r) {
                    return Err(Error::Shape("basis labels do not match ranks".into()));
                }
                l
            }
            None => ranks.iter().enumerate().map(|(k, &r)| (0..r).map(|j| format!("e{}_{}", k, j + 1)).collect()).collect(),
        };
        Ok(FreeComplex { ring: ring.clone(), ranks, differentials, labels })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Ranks of `E_0, …, E_L`.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn length(&self) -> usize {
        self.differentials.len()
    }

    /// `d_k` for `1 ≤ k ≤ L`.
    pub fn differential(&self, k: usize) -> &PolyMatrix {
        &self.differentials[k - 1]
    }

    pub fn differentials(&self) -> &[PolyMatrix] {
        &self.differentials
    }

    pub fn differential_mut(&mut self, k: usize) -> &mut PolyMatrix {
        &mut self.differentials[k - 1]
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    /// Whether every `d_k ∘ d_{k+1}` vanishes.
    pub fn is_complex(&self) -> Result<bool> {
        for w in self.differentials.windows(2) {
            if !w[0].mul(&w[1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn dump(&self) -> ComplexDump {
        ComplexDump {
            ranks: self.ranks.clone(),
            labels: self.labels.clone(),
            differentials: self.differentials.iter().map(|d| d.render_rows()).collect(),
        }
    }

    /// Text table: ranks, then each differential row by row.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let ranks: Vec<String> = self.ranks.iter().map(|r| r.to_string()).collect();
        out.push_str(&format!("ranks: {}\n", ranks.join(" ")));
        for (k, d) in self.differentials.iter().enumerate() {
            out.push_str(&format!("d{}: {}x{}\n", k + 1, d.rows(), d.cols()));
            out.push_str(&format!("  cols: {}\n", self.labels[k + 1].join(" ")));
            for (r, row) in d.render_rows().iter().enumerate() {
                out.push_str(&format!("  {} | {}\n", self.labels[k][r], row.join(" | ")));
            }
        }
        out
    }
}
