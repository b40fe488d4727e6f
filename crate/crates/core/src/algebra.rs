//! Graded complete intersections `Q[X]/(f_1..f_c)`, their Jacobian
//! presentation and the basic checks run before anything else.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{Height, Ideal};
use crate::matrix::PolyMatrix;
use crate::poly::{Coeff, Polynomial, Ring};

/// One failed hypothesis of a graded complete intersection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    ZeroRelation { index: usize },
    Inhomogeneous { index: usize, relation: String },
    DegreeTooLow { index: usize, relation: String, degree: u32 },
    /// A term of total degree at most 1, so the relation is not in `m²`.
    NotInSquareOfMaximal { index: usize, relation: String },
    NotRegularSequence { quotient_dimension: i64, expected: i64 },
    ZeroDimensional { variables: usize, relations: usize },
}

impl Violation {
    /// The hypothesis this violation breaks.
    pub fn hypothesis(&self) -> &'static str {
        match self {
            Violation::ZeroRelation { .. } | Violation::NotRegularSequence { .. } => {
                "relations form a regular sequence"
            }
            Violation::Inhomogeneous { .. } => "relations are homogeneous",
            Violation::DegreeTooLow { .. } | Violation::NotInSquareOfMaximal { .. } => {
                "relations lie in the square of the maximal ideal"
            }
            Violation::ZeroDimensional { .. } => "positive dimension",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroRelation { index } => write!(f, "relation {} is zero", index + 1),
            Violation::Inhomogeneous { index, relation } => {
                write!(f, "relation {} ({}) is inhomogeneous", index + 1, relation)
            }
            Violation::DegreeTooLow { index, relation, degree } => {
                write!(f, "relation {} ({}) has degree {} < 2", index + 1, relation, degree)
            }
            Violation::NotInSquareOfMaximal { index, relation } => {
                write!(f, "relation {} ({}) has a term of degree at most 1", index + 1, relation)
            }
            Violation::NotRegularSequence { quotient_dimension, expected } => write!(
                f,
                "not a regular sequence: dim P/I = {} but n - c = {}",
                quotient_dimension, expected
            ),
            Violation::ZeroDimensional { variables, relations } => {
                write!(f, "dimension {} - {} is not positive", variables, relations)
            }
        }
    }
}

/// A validated graded complete intersection.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    ring: Ring,
    relations: Vec<Polynomial>,
    degrees: Vec<u32>,
    ideal: Ideal,
}

/// The transpose Jacobian presenting the module of differentials:
/// `n` generators, one column per relation.
#[derive(Clone, Debug)]
pub struct DifferentialPresentation {
    /// Entries `∂f_j/∂X_i` in normal form modulo the relations.
    pub theta: PolyMatrix,
    /// The same partials as ambient polynomials.
    pub ambient: PolyMatrix,
    /// Rank of the module, equal to the dimension `d`.
    pub rank: usize,
    /// Number of generators, equal to `n`.
    pub generators: usize,
}

/// Embedding dimension against dimension at the graded maximal ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrelevantLocalData {
    pub edim: usize,
    pub dim: usize,
    /// `edim ≤ 2·dim`
    pub within_twice_dim: bool,
    /// `edim ≤ 2·dim − 1`
    pub within_twice_dim_minus_one: bool,
}

/// Outcome of a nonzerodivisor test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonzerodivisorCheck {
    pub is_nonzerodivisor: bool,
    /// The element is already zero in the quotient.
    pub zero_element: bool,
}

impl GradedAlgebra {
    /// Checks every hypothesis and reports all failures together.
    pub fn validate(ring: &Ring, relations: Vec<Polynomial>) -> Result<GradedAlgebra> {
        let probe = Polynomial::zero(ring);
        if let Some(bad) = relations.iter().find(|f| !f.same_ring(&probe)) {
            return Err(Error::ContextMismatch(format!("relation {} is not in {:?}", bad, ring)));
        }
        let n = ring.arity();
        let c = relations.len();
        let mut violations = Vec::new();
        let mut degrees = Vec::with_capacity(c);
        for (index, f) in relations.iter().enumerate() {
            if f.is_zero() {
                violations.push(Violation::ZeroRelation { index });
                degrees.push(0);
                continue;
            }
            let (homogeneous, degree) = f.weighted_degree_info();
            let relation = f.to_string();
            if !homogeneous {
                violations.push(Violation::Inhomogeneous { index, relation: relation.clone() });
            } else if let Some(degree) = degree.filter(|&d| d < 2) {
                violations.push(Violation::DegreeTooLow { index, relation: relation.clone(), degree });
            }
            if f.min_total_degree().map_or(false, |m| m <= 1) {
                violations.push(Violation::NotInSquareOfMaximal { index, relation });
            }
            degrees.push(degree.unwrap_or_else(|| f.max_degree()));
        }
        if c >= n {
            violations.push(Violation::ZeroDimensional { variables: n, relations: c });
        }
        let ideal = Ideal::new(ring, relations.clone())?;
        if !violations.iter().any(|v| matches!(v, Violation::ZeroRelation { .. })) {
            let dim = ideal.krull_dimension()?.dimension;
            let expected = n as i64 - c as i64;
            if dim != expected {
                violations.push(Violation::NotRegularSequence { quotient_dimension: dim, expected });
            }
        }
        if !violations.is_empty() {
            return Err(Error::Validation(violations));
        }
        Ok(GradedAlgebra { ring: ring.clone(), relations, degrees, ideal })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    /// Weighted degrees of the relations.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// The defining ideal `I` in the ambient ring.
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn n(&self) -> usize {
        self.ring.arity()
    }

    pub fn c(&self) -> usize {
        self.relations.len()
    }

    /// Krull dimension `d = n − c`.
    pub fn d(&self) -> usize {
        self.n() - self.c()
    }

    pub fn is_standard_graded(&self) -> bool {
        self.ring.is_standard_graded()
    }

    /// Normal form modulo the relations.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        self.ideal.normal_form(p)
    }

    /// Height of `J·R` for an ambient ideal `J`, as `dim R − dim P/(I+J)`.
    /// Valid because complete intersections are equidimensional and
    /// catenary.
    pub fn height_of(&self, j: &Ideal) -> Result<Height> {
        let sum = self.ideal.sum(j)?;
        let dim = sum.krull_dimension()?.dimension;
        Ok(if dim < 0 { Height::Infinite } else { Height::Finite(self.d() as i64 - dim) })
    }

    /// Dimension of `P/(I+J)`; `-1` when `I+J = (1)`.
    pub fn quotient_dimension(&self, j: &Ideal) -> Result<i64> {
        Ok(self.ideal.sum(j)?.krull_dimension()?.dimension)
    }

    /// Whether `g` is regular on `R`, i.e. `(I : g) = I`.
    pub fn is_nonzerodivisor(&self, g: &Polynomial) -> Result<NonzerodivisorCheck> {
        if self.ideal.contains(g)? {
            return Ok(NonzerodivisorCheck { is_nonzerodivisor: false, zero_element: true });
        }
        if self.ideal.is_zero() {
            return Ok(NonzerodivisorCheck { is_nonzerodivisor: true, zero_element: false });
        }
        let q = self.ideal.quotient(g)?;
        Ok(NonzerodivisorCheck { is_nonzerodivisor: self.ideal.contains_ideal(&q)?, zero_element: false })
    }

    /// The transpose Jacobian `θ_ij = ∂f_j/∂x_i`, both reduced modulo `I`
    /// and as ambient polynomials.
    pub fn jacobian_presentation(&self) -> Result<DifferentialPresentation> {
        let n = self.n();
        let mut columns = Vec::with_capacity(self.c());
        for f in &self.relations {
            columns.push((0..n).map(|i| f.partial_derivative(i)).collect::<Result<Vec<_>>>()?);
        }
        let ambient = PolyMatrix::from_columns(&self.ring, n, columns)?;
        let theta = ambient.map_entries(|e| self.reduce(e))?;
        Ok(DifferentialPresentation { theta, ambient, rank: self.d(), generators: n })
    }

    /// `Σ_i δ_i X_i ∂f_j/∂X_i − deg(f_j)·f_j` for every relation; all zero
    /// for homogeneous relations.
    pub fn euler_residuals(&self) -> Result<Vec<Polynomial>> {
        self.relations.iter().zip(&self.degrees).map(|(f, &deg)| euler_residual(f, deg)).collect()
    }

    /// `ht(I + I_c(Θ)) ≥ c + 1` in the ambient ring: generically smooth,
    /// hence reduced for a complete intersection.
    pub fn is_reduced(&self) -> Result<bool> {
        let pres = self.jacobian_presentation()?;
        let minors = pres.ambient.minors_ideal(self.c())?;
        let h = self.ideal.sum(&minors)?.height()?;
        Ok(h.at_least(self.c() as i64 + 1))
    }

    /// With relations in `m²`, the embedding dimension at the graded
    /// maximal ideal is `n`.
    pub fn irrelevant_local_data(&self) -> IrrelevantLocalData {
        let (n, d) = (self.n(), self.d());
        IrrelevantLocalData {
            edim: n,
            dim: d,
            within_twice_dim: n <= 2 * d,
            within_twice_dim_minus_one: n + 1 <= 2 * d,
        }
    }
}

/// `Σ_i δ_i X_i ∂f/∂X_i − deg·f` in the ambient ring.
pub fn euler_residual(f: &Polynomial, deg: u32) -> Result<Polynomial> {
    let ring = f.ring().clone();
    let mut acc = f.scale(&Coeff::from_int(-(deg as i64)));
    for i in 0..ring.arity() {
        let w = Coeff::from_int(ring.weights()[i] as i64);
        let t = &Polynomial::var(&ring, i).with_order(f.order()) * &f.partial_derivative(i)?;
        acc = &acc + &t.scale(&w);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, VariableContext};

    fn algebra(names: &[&str], weights: Option<Vec<u32>>, rels: &[&str]) -> Result<GradedAlgebra> {
        let ring = match weights {
            Some(w) => VariableContext::new(names.to_vec(), w)?,
            None => VariableContext::standard(names.to_vec())?,
        };
        let rels = rels.iter().map(|s| parse_polynomial(&ring, s)).collect::<Result<Vec<_>>>()?;
        GradedAlgebra::validate(&ring, rels)
    }

    fn violations(r: Result<GradedAlgebra>) -> Vec<Violation> {
        match r {
            Err(Error::Validation(v)) => v,
            other => panic!("expected a validation error, got {:?}", other.map(|a| a.relations().to_vec())),
        }
    }

    #[test]
    fn valid_examples() {
        let a = algebra(&["X", "Y", "Z"], None, &["X*Y - Z^2"]).unwrap();
        assert_eq!(a.d(), 2);
        assert!(a.is_standard_graded());
        let b = algebra(&["X", "Y"], None, &["X*Y"]).unwrap();
        assert_eq!(b.d(), 1);
        let poly = algebra(&["X", "Y"], None, &[]).unwrap();
        assert_eq!(poly.d(), 2);
    }

    #[test]
    fn rejection_lists_everything() {
        let v = violations(algebra(&["X", "Y"], None, &["X^2", "X*Y"]));
        assert_eq!(v, vec![
            Violation::ZeroDimensional { variables: 2, relations: 2 },
            Violation::NotRegularSequence { quotient_dimension: 1, expected: 0 },
        ]);
        let v = violations(algebra(&["X", "Y"], None, &["X + Y^2"]));
        assert!(matches!(v[0], Violation::Inhomogeneous { .. }));
        assert!(matches!(v[1], Violation::NotInSquareOfMaximal { .. }));
        let v = violations(algebra(&["X", "Y", "Z"], None, &["X", "0"]));
        assert!(v.iter().any(|x| matches!(x, Violation::DegreeTooLow { degree: 1, .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::ZeroRelation { index: 1 })));
        // Weighted homogeneous of weighted degree 2 but containing a linear term.
        let v = violations(algebra(&["X", "Y"], Some(vec![2, 1]), &["X + Y^2"]));
        assert_eq!(v.len(), 1);
        assert!(matches!(v[0], Violation::NotInSquareOfMaximal { .. }));
    }

    #[test]
    fn jacobian_examples() {
        let a = algebra(&["x", "y", "z"], None, &["x*y - z^2"]).unwrap();
        let p = a.jacobian_presentation().unwrap();
        let col: Vec<String> = p.theta.column(0).iter().map(|e| e.to_string()).collect();
        assert_eq!(col, vec!["y", "x", "-2*z"]);
        assert_eq!((p.rank, p.generators), (2, 3));
        let c = algebra(&["x1", "x2", "x3", "x4"], None, &[
            "x1^2 + x2^2 + x3^2 + x4^2",
            "x1^2 + 2*x2^2 + 3*x3^2 + 4*x4^2",
        ])
        .unwrap();
        let p = c.jacobian_presentation().unwrap();
        for i in 0..4 {
            assert_eq!(p.ambient.get(i, 0).to_string(), format!("2*x{}", i + 1));
            assert_eq!(p.ambient.get(i, 1).to_string(), format!("{}*x{}", 2 * (i + 1), i + 1));
        }
    }

    #[test]
    fn euler_residuals_vanish() {
        let a = algebra(&["X", "Y", "Z"], Some(vec![1, 2, 3]), &["X^6 + Y^3 + Z^2", "X*Z + Y^2"]).unwrap();
        assert!(a.euler_residuals().unwrap().iter().all(|r| r.is_zero()));
        let ring = VariableContext::standard(vec!["X"]).unwrap();
        let f = parse_polynomial(&ring, "X^3").unwrap();
        assert!(euler_residual(&f, 3).unwrap().is_zero());
        assert!(!euler_residual(&f, 2).unwrap().is_zero());
    }

    #[test]
    fn reducedness() {
        assert!(algebra(&["X", "Y", "Z"], None, &["X*Y - Z^2"]).unwrap().is_reduced().unwrap());
        assert!(!algebra(&["X", "Y"], None, &["X^2"]).unwrap().is_reduced().unwrap());
        assert!(algebra(&["X", "Y"], None, &["X*Y"]).unwrap().is_reduced().unwrap());
        assert!(!algebra(&["X", "Y", "Z"], None, &["X*Y - Z^2", "X^2"]).unwrap().is_reduced().unwrap());
    }

    #[test]
    fn heights_and_nonzerodivisors() {
        let cone = algebra(&["x", "y", "z"], None, &["x*y - z^2"]).unwrap();
        let m = Ideal::maximal(cone.ring());
        assert_eq!(cone.height_of(&m).unwrap(), Height::Finite(2));
        assert_eq!(cone.height_of(&Ideal::unit(cone.ring())).unwrap(), Height::Infinite);
        let xy = algebra(&["x", "y"], None, &["x*y"]).unwrap();
        let r = xy.ring().clone();
        let g = parse_polynomial(&r, "x + y").unwrap();
        assert_eq!(xy.height_of(&Ideal::new(&r, vec![g.clone()]).unwrap()).unwrap(), Height::Finite(1));
        assert!(xy.is_nonzerodivisor(&g).unwrap().is_nonzerodivisor);
        let x = parse_polynomial(&r, "x").unwrap();
        assert!(!xy.is_nonzerodivisor(&x).unwrap().is_nonzerodivisor);
        let z = xy.is_nonzerodivisor(&parse_polynomial(&r, "x^2*y").unwrap()).unwrap();
        assert!(z.zero_element && !z.is_nonzerodivisor);
        let cz = parse_polynomial(cone.ring(), "x + z").unwrap();
        assert!(cone.is_nonzerodivisor(&cz).unwrap().is_nonzerodivisor);
    }

    #[test]
    fn local_data_arithmetic() {
        let l = algebra(&["X", "Y", "Z"], None, &["X*Y - Z^2"]).unwrap().irrelevant_local_data();
        assert!(l.within_twice_dim && l.within_twice_dim_minus_one);
        let l = algebra(&["X", "Y"], None, &["X*Y"]).unwrap().irrelevant_local_data();
        assert!(l.within_twice_dim && !l.within_twice_dim_minus_one);
        let l = algebra(&["X", "Y", "Z", "W"], None, &["X*W - Y*Z"]).unwrap().irrelevant_local_data();
        assert_eq!((l.edim, l.dim), (4, 3));
        assert!(l.within_twice_dim);
    }
}
