//! Fitting ideals of the module of differentials, the `F_t` conditions, and
//! the minor identities behind the height bound for `I_t(θ)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{DifferentialPresentation, GradedAlgebra};
use crate::error::{Error, Result};
use crate::groebner::{Height, Ideal};
use crate::matrix::PolyMatrix;
use crate::poly::{Coeff, Polynomial};

/// `F_i(Ω) = I_{n−i}(θ)` as an ambient ideal (add `I` to work in `R`).
/// `(1)` when `n ≤ i`; `(0)` when `n − i` exceeds the number of relations.
pub fn fitting_ideal(pres: &DifferentialPresentation, i: usize) -> Result<Ideal> {
    let n = pres.generators;
    if i >= n {
        return Ok(Ideal::unit(pres.theta.ring()));
    }
    pres.theta.minors_ideal(n - i)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FittingLevel {
    pub i: usize,
    pub minor_size: usize,
    pub generators: usize,
    /// Height of `F_i·R`.
    pub height: Height,
    /// `dim P/(I + F_i) ≤ 0`: only the graded maximal ideal (or nothing)
    /// contains `F_i`.
    pub m_primary: bool,
    /// Height of `(F_i·R : m^∞)`.
    pub saturated_height: Height,
}

/// Heights of `F_e, …, F_{n−1}` with `e = d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FittingProfile {
    pub rank: usize,
    pub levels: Vec<FittingLevel>,
}

pub fn fitting_profile(alg: &GradedAlgebra, pres: &DifferentialPresentation) -> Result<FittingProfile> {
    let e = pres.rank;
    let mut levels = Vec::new();
    for i in e..alg.n() {
        let f = fitting_ideal(pres, i)?;
        let dim = alg.quotient_dimension(&f)?;
        let height = if dim < 0 { Height::Infinite } else { Height::Finite(alg.d() as i64 - dim) };
        // For homogeneous J, (J : m^∞) = (1) exactly when dim P/J ≤ 0;
        // otherwise m is not a minimal prime and the height is unchanged.
        let m_primary = dim <= 0;
        levels.push(FittingLevel {
            i,
            minor_size: alg.n() - i,
            generators: f.generators().len(),
            height,
            m_primary,
            saturated_height: if m_primary { Height::Infinite } else { height },
        });
    }
    Ok(FittingProfile { rank: e, levels })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FtFailure {
    pub i: usize,
    pub height: Height,
    pub required: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FtVerdict {
    pub t: i64,
    /// Failing levels may be excused when `F_i` is `m`-primary.
    pub off_irrelevant: bool,
    pub holds: bool,
    /// Least failing `i`.
    pub failure: Option<FtFailure>,
}

impl FittingProfile {
    /// `ht F_i ≥ i − e + t + 1` for all `i` in `[e, n−1]`.
    pub fn ft(&self, t: i64) -> FtVerdict {
        self.verdict(t, false)
    }

    /// As [`FittingProfile::ft`], counting a level as passing when `F_i`
    /// is `m`-primary, so that every failing prime contains `R_+`.
    pub fn ft_off_irrelevant(&self, t: i64) -> FtVerdict {
        self.verdict(t, true)
    }

    fn verdict(&self, t: i64, off_irrelevant: bool) -> FtVerdict {
        let failure = self.levels.iter().find_map(|l| {
            let required = l.i as i64 - self.rank as i64 + t + 1;
            let pass = l.height.at_least(required) || (off_irrelevant && l.m_primary);
            (!pass).then(|| FtFailure { i: l.i, height: l.height, required })
        });
        FtVerdict { t, off_irrelevant, holds: failure.is_none(), failure }
    }
}

pub fn ft_condition(alg: &GradedAlgebra, t: i64) -> Result<FtVerdict> {
    let pres = alg.jacobian_presentation()?;
    Ok(fitting_profile(alg, &pres)?.ft(t))
}

pub fn ft_condition_off_irrelevant(alg: &GradedAlgebra, t: i64) -> Result<FtVerdict> {
    let pres = alg.jacobian_presentation()?;
    Ok(fitting_profile(alg, &pres)?.ft_off_irrelevant(t))
}

/// Minor size `t = n − 2d + 1` for the height probe; requires `n ≥ 2d ≥ 4`.
fn probe_size(alg: &GradedAlgebra) -> Result<usize> {
    let (n, d) = (alg.n(), alg.d());
    if d < 2 || n < 2 * d {
        return Err(Error::Precondition(format!("need n >= 2d >= 4, got n = {}, d = {}", n, d)));
    }
    Ok(n - 2 * d + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerMinorCheck {
    pub t: usize,
    /// Normal form of the residual modulo the relations.
    pub residual: String,
    pub vanishes: bool,
}

/// Checks `δ_n x_n Δ_{[2d..n]} = (−1)^t Σ_{i<n} δ_i x_i Δ_{[i,2d..n−1]}`
/// modulo `I`, where `Δ_S` is the minor of `θ` on rows `S` (in the listed
/// order) and columns `1..t`.
pub fn euler_minor_identity(alg: &GradedAlgebra) -> Result<EulerMinorCheck> {
    let t = probe_size(alg)?;
    let pres = alg.jacobian_presentation()?;
    let sign = if t % 2 == 0 { 1 } else { -1 };
    let residual = euler_minor_residual(alg, &pres.theta, t, |_| sign)?;
    Ok(EulerMinorCheck { t, vanishes: residual.is_zero(), residual: residual.to_string() })
}

/// `δ_n x_n Δ_{[2d..n]} − Σ_i sign(i) δ_i x_i Δ_{[i,2d..n−1]}` reduced mod `I`,
/// with `i` one-based.
pub(crate) fn euler_minor_residual(
    alg: &GradedAlgebra,
    theta: &PolyMatrix,
    t: usize,
    sign: impl Fn(usize) -> i64,
) -> Result<Polynomial> {
    let ring = alg.ring();
    let (n, d) = (alg.n(), alg.d());
    let cols: Vec<usize> = (0..t).collect();
    let tail: Vec<usize> = (2 * d - 1..n - 1).collect();
    let mut last = tail.clone();
    last.push(n - 1);
    let weight = |i: usize| Coeff::from_int(ring.weights()[i] as i64);
    let lhs = (&Polynomial::var(ring, n - 1) * &theta.minor(&last, &cols)?).scale(&weight(n - 1));
    let mut rhs = Polynomial::zero(ring);
    for i in 0..n - 1 {
        if tail.contains(&i) {
            continue;
        }
        let mut rows = vec![i];
        rows.extend(&tail);
        let m = theta.minor(&rows, &cols)?;
        if m.is_zero() {
            continue;
        }
        let c = weight(i) * Coeff::from_int(sign(i + 1));
        rhs = &rhs + &(&Polynomial::var(ring, i) * &m).scale(&c);
    }
    alg.reduce(&(&lhs - &rhs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorComparison {
    /// `I_t(θ) = I_t(θ')` in `R`.
    pub equal: bool,
    pub height_all: Height,
    pub height_last: Height,
    /// `equal ∧ ht I_t(θ) ≥ d`, which the height bound forbids.
    pub violation: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop31Record {
    pub n: usize,
    pub d: usize,
    pub t: usize,
    /// Zero-based rows of `θ` forming `θ'`.
    pub last_rows: Vec<usize>,
    pub original: MinorComparison,
    /// One entry per sampled invertible row operation.
    pub row_operations: Vec<MinorComparison>,
}

impl Prop31Record {
    pub fn violations(&self) -> usize {
        std::iter::once(&self.original).chain(&self.row_operations).filter(|c| c.violation).count()
    }
}

fn compare_minor_ideals(alg: &GradedAlgebra, theta: &PolyMatrix, t: usize) -> Result<MinorComparison> {
    let n = alg.n();
    let all = theta.minors_ideal(t)?;
    let last_rows: Vec<usize> = (n - t..n).collect();
    let cols: Vec<usize> = (0..theta.cols()).collect();
    let last = theta.submatrix(&last_rows, &cols)?.minors_ideal(t)?;
    let with_i = alg.ideal().sum(&last)?;
    // I_t(θ') ⊆ I_t(θ) always, so one inclusion decides equality.
    let equal = with_i.contains_ideal(&all)?;
    let height_all = alg.height_of(&all)?;
    let height_last = if equal { height_all } else { alg.height_of(&last)? };
    let violation = equal && height_all.at_least(alg.d() as i64);
    Ok(MinorComparison { equal, height_all, height_last, violation })
}

/// Random invertible integer matrix, block diagonal on classes of equal
/// variable weight so the row operation is a graded change of coordinates.
pub fn random_row_operation(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let n = alg.n();
    let weights = alg.ring().weights();
    loop {
        let mut p = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                if weights[i] == weights[j] {
                    p[i][j] = rng.gen_range(-3..=3);
                }
            }
        }
        if integer_determinant(&p) != Coeff::zero() {
            return p;
        }
    }
}

fn integer_determinant(p: &[Vec<i64>]) -> Coeff {
    let n = p.len();
    let mut a: Vec<Vec<Coeff>> = p.iter().map(|r| r.iter().map(|&x| Coeff::from_int(x)).collect()).collect();
    let mut det = Coeff::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Coeff::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det = &det * &a[col][col];
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            for k in col..n {
                let v = &a[r][k] - &(&f * &a[col][k]);
                a[r][k] = v;
            }
        }
    }
    det
}

fn apply_row_operation(theta: &PolyMatrix, p: &[Vec<i64>], alg: &GradedAlgebra) -> Result<PolyMatrix> {
    let ring = theta.ring();
    let mut out = PolyMatrix::zeros(ring, theta.rows(), theta.cols());
    for i in 0..theta.rows() {
        for c in 0..theta.cols() {
            let mut acc = Polynomial::zero(ring);
            for (k, &x) in p[i].iter().enumerate() {
                if x != 0 {
                    acc = &acc + &theta.get(k, c).scale(&Coeff::from_int(x));
                }
            }
            out.set(i, c, alg.reduce(&acc)?);
        }
    }
    Ok(out)
}

/// Compares `I_t(θ)` with the minors of its last `t` rows, for `θ` and
/// for `rowops` random graded row operations of `θ`.
pub fn prop31_probe(alg: &GradedAlgebra, rowops: usize, seed: u64) -> Result<Prop31Record> {
    let t = probe_size(alg)?;
    let pres = alg.jacobian_presentation()?;
    let original = compare_minor_ideals(alg, &pres.theta, t)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut row_operations = Vec::with_capacity(rowops);
    for _ in 0..rowops {
        let p = random_row_operation(alg, &mut rng);
        let moved = apply_row_operation(&pres.theta, &p, alg)?;
        row_operations.push(compare_minor_ideals(alg, &moved, t)?);
    }
    Ok(Prop31Record {
        n: alg.n(),
        d: alg.d(),
        t,
        last_rows: (alg.n() - t..alg.n()).collect(),
        original,
        row_operations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, VariableContext};

    fn algebra(names: &[&str], rels: &[&str]) -> GradedAlgebra {
        let ring = VariableContext::standard(names.to_vec()).unwrap();
        let rels = rels.iter().map(|s| parse_polynomial(&ring, s).unwrap()).collect();
        GradedAlgebra::validate(&ring, rels).unwrap()
    }

    fn cone() -> GradedAlgebra {
        algebra(&["x", "y", "z"], &["x*y - z^2"])
    }

    fn curve() -> GradedAlgebra {
        algebra(&["x1", "x2", "x3", "x4"], &["x1^2 + x2^2 + x3^2 + x4^2", "x1^2 + 2*x2^2 + 3*x3^2 + 4*x4^2"])
    }

    #[test]
    fn fitting_ideal_examples() {
        let a = cone();
        let p = a.jacobian_presentation().unwrap();
        assert!(fitting_ideal(&p, 2).unwrap().equals(&Ideal::maximal(a.ring())).unwrap());
        assert!(fitting_ideal(&p, 3).unwrap().is_unit().unwrap());
        assert!(fitting_ideal(&p, 1).unwrap().is_zero());
        let b = algebra(&["x", "y"], &["x*y"]);
        let p = b.jacobian_presentation().unwrap();
        assert!(fitting_ideal(&p, 1).unwrap().equals(&Ideal::maximal(b.ring())).unwrap());
    }

    #[test]
    fn ft_examples() {
        assert!(ft_condition(&cone(), 1).unwrap().holds);
        let xy = algebra(&["x", "y"], &["x*y"]);
        let v = ft_condition(&xy, 1).unwrap();
        assert_eq!(v.failure, Some(FtFailure { i: 1, height: Height::Finite(1), required: 2 }));
        assert!(ft_condition(&xy, 0).unwrap().holds);
        let v = ft_condition(&curve(), 1).unwrap();
        assert_eq!(v.failure, Some(FtFailure { i: 3, height: Height::Finite(2), required: 3 }));
    }

    #[test]
    fn off_irrelevant_examples() {
        let xy = algebra(&["x", "y"], &["x*y"]);
        assert!(ft_condition_off_irrelevant(&xy, 0).unwrap().holds);
        assert!(ft_condition_off_irrelevant(&curve(), 0).unwrap().holds);
        assert!(ft_condition_off_irrelevant(&cone(), 1).unwrap().holds);
    }

    #[test]
    fn m_primary_matches_saturation() {
        for a in [cone(), curve(), algebra(&["x", "y"], &["x*y"])] {
            let p = a.jacobian_presentation().unwrap();
            let prof = fitting_profile(&a, &p).unwrap();
            let m = Ideal::maximal(a.ring());
            for l in &prof.levels {
                let j = a.ideal().sum(&fitting_ideal(&p, l.i).unwrap()).unwrap();
                let sat = j.saturation_by_ideal(&m).unwrap();
                assert_eq!(sat.is_unit().unwrap(), l.m_primary, "level {}", l.i);
            }
        }
    }

    #[test]
    fn profile_is_monotone() {
        let a = curve();
        let p = a.jacobian_presentation().unwrap();
        let prof = fitting_profile(&a, &p).unwrap();
        for w in prof.levels.windows(2) {
            assert!(w[0].height <= w[1].height);
            let lo = fitting_ideal(&p, w[0].i).unwrap();
            let hi = fitting_ideal(&p, w[1].i).unwrap();
            assert!(hi.contains_ideal(&lo).unwrap());
        }
    }

    #[test]
    fn euler_minor_identity_holds_for_curve() {
        let check = euler_minor_identity(&curve()).unwrap();
        assert_eq!(check.t, 1);
        assert!(check.vanishes, "residual {}", check.residual);
        assert!(euler_minor_identity(&cone()).is_err());
    }

    #[test]
    fn alternating_row_sign_does_not_vanish() {
        let a = curve();
        let p = a.jacobian_presentation().unwrap();
        let r = euler_minor_residual(&a, &p.theta, 1, |i| if i % 2 == 0 { 1 } else { -1 }).unwrap();
        assert!(!r.is_zero());
    }

    #[test]
    fn probe_on_curve() {
        let rec = prop31_probe(&curve(), 2, 7).unwrap();
        assert_eq!(rec.t, 1);
        assert_eq!(rec.original.height_all, Height::Finite(2));
        assert!(!rec.original.equal);
        assert_eq!(rec.violations(), 0);
        assert_eq!(rec.row_operations.len(), 2);
    }

    #[test]
    fn row_operations_are_invertible_and_graded() {
        let ring = VariableContext::new(vec!["a", "b", "c"], vec![1, 2, 1]).unwrap();
        let rels = vec![parse_polynomial(&ring, "a^4 + b^2 + c^4").unwrap()];
        let alg = GradedAlgebra::validate(&ring, rels).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let p = random_row_operation(&alg, &mut rng);
            assert!(!integer_determinant(&p).is_zero());
            assert_eq!(p[1][0], 0);
            assert_eq!(p[0][1], 0);
        }
        assert_eq!(integer_determinant(&[vec![1, 2], vec![2, 4]]), Coeff::zero());
        assert_eq!(integer_determinant(&[vec![0, 1], vec![1, 0]]), Coeff::from_int(-1));
    }
}
