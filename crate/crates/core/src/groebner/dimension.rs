use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Monomial;

/// Krull dimension of a quotient ring with a maximal independent set of
/// variables as witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    /// `-1` for the unit ideal.
    pub dimension: i64,
    /// Variable indices no leading monomial is supported in.
    pub witness: Vec<usize>,
}

/// Height of an ideal; the unit ideal has infinite height.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Height {
    Finite(i64),
    Infinite,
}

impl Height {
    pub fn finite(&self) -> Option<i64> {
        match self {
            Height::Finite(h) => Some(*h),
            Height::Infinite => None,
        }
    }

    pub fn at_least(&self, bound: i64) -> bool {
        match self {
            Height::Finite(h) => *h >= bound,
            Height::Infinite => true,
        }
    }
}

impl PartialOrd for Height {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Height {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Height::Finite(a), Height::Finite(b)) => a.cmp(b),
            (Height::Finite(_), Height::Infinite) => Ordering::Less,
            (Height::Infinite, Height::Finite(_)) => Ordering::Greater,
            (Height::Infinite, Height::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(h) => write!(f, "{}", h),
            Height::Infinite => write!(f, "inf"),
        }
    }
}

/// Largest set of variables containing the support of no leading monomial,
/// found as the complement of a minimum hitting set of the supports.
pub(crate) fn dimension_from_leads(arity: usize, leads: &[Monomial]) -> Result<DimensionReport> {
    if arity > 64 {
        return Err(Error::Precondition(format!("dimension search supports at most 64 variables, got {}", arity)));
    }
    let mut supports: Vec<u64> = leads.iter().map(|m| m.support_mask()).collect();
    if supports.iter().any(|&s| s == 0) {
        return Ok(DimensionReport { dimension: -1, witness: Vec::new() });
    }
    supports.sort_by_key(|s| (s.count_ones(), *s));
    supports.dedup();
    let mut minimal: Vec<u64> = Vec::new();
    for s in supports {
        if !minimal.iter().any(|&m| m & s == m) {
            minimal.push(s);
        }
    }
    let all = if arity == 64 { u64::MAX } else { (1u64 << arity) - 1 };
    let mut best = (arity as u32 + 1, all);
    hitting_set(&minimal, 0, &mut best);
    let cover = best.1;
    let witness: Vec<usize> = (0..arity).filter(|&i| cover & (1 << i) == 0).collect();
    Ok(DimensionReport { dimension: witness.len() as i64, witness })
}

fn hitting_set(supports: &[u64], chosen: u64, best: &mut (u32, u64)) {
    let size = chosen.count_ones();
    match supports.iter().find(|&&s| s & chosen == 0) {
        None => {
            if size < best.0 {
                *best = (size, chosen);
            }
        }
        Some(&s) => {
            if size + 1 >= best.0 {
                return;
            }
            let mut bits = s;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                hitting_set(supports, chosen | (1 << v), best);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e, &vec![1; e.len()])
    }

    #[test]
    fn small_cases() {
        assert_eq!(dimension_from_leads(2, &[m(&[1, 1])]).unwrap().dimension, 1);
        assert_eq!(dimension_from_leads(3, &[]).unwrap().dimension, 3);
        let r = dimension_from_leads(3, &[m(&[1, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 1])]).unwrap();
        assert_eq!(r.dimension, 0);
        assert_eq!(dimension_from_leads(2, &[m(&[0, 0])]).unwrap().dimension, -1);
    }

    #[test]
    fn witness_is_independent() {
        let leads = [m(&[1, 1, 0, 0]), m(&[0, 1, 1, 0]), m(&[0, 0, 1, 1])];
        let r = dimension_from_leads(4, &leads).unwrap();
        assert_eq!(r.dimension, 2);
        for l in &leads {
            assert!(!l.support().iter().all(|v| r.witness.contains(v)));
        }
    }

    #[test]
    fn height_order() {
        assert!(Height::Infinite > Height::Finite(100));
        assert!(Height::Finite(2).at_least(2));
        assert!(!Height::Finite(1).at_least(2));
        assert!(Height::Infinite.at_least(1000));
    }
}
