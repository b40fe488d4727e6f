//! Symmetric and Rees algebras of the module of differentials.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::groebner::{Height, Ideal};
use crate::poly::{Coeff, MonomialOrder, Polynomial, Ring};

/// Retries allowed when searching for a test element.
pub const TEST_ELEMENT_TRIES: usize = 64;

/// `Sym(Ω) = Q[X, T]/(I + L)` with `ℓ_j = Σ_i ∂f_j/∂X_i · T_i`.
#[derive(Clone, Debug)]
pub struct SymPresentation {
    /// `X_1..X_n` followed by `T_1..T_n`; `T_i` has the weight of `X_i`
    /// so each `ℓ_j` is homogeneous of degree `deg f_j`.
    pub ring: Ring,
    pub n: usize,
    pub linear_forms: Vec<Polynomial>,
    /// `I + L` in the extended ring.
    pub ideal: Ideal,
    pub height: Height,
    /// `ht(I + L)` equals its number of generators.
    pub complete_intersection: bool,
}

#[derive(Clone, Debug)]
pub struct ReesPresentation {
    pub sym: SymPresentation,
    pub test_element: Polynomial,
    /// `J = (I + L) : g^∞`.
    pub ideal: Ideal,
    /// Reduced basis elements of `J` outside `I + L`.
    pub torsion: Vec<Polynomial>,
}

impl ReesPresentation {
    pub fn is_linear_type(&self) -> bool {
        self.torsion.is_empty()
    }
}

pub fn symmetric_presentation(alg: &GradedAlgebra) -> Result<SymPresentation> {
    let base = alg.ring();
    let n = alg.n();
    let mut extra = Vec::with_capacity(n);
    let mut probe = base.clone();
    for i in 0..n {
        let name = probe.fresh_name(&format!("T{}", i + 1));
        probe = probe.with_back(&[(name.clone(), base.weights()[i])])?;
        extra.push((name, base.weights()[i]));
    }
    let ring = base.with_back(&extra)?;
    let lift = |p: &Polynomial| p.embed(&ring, 0, n, MonomialOrder::DegRevLex);
    let mut linear_forms = Vec::with_capacity(alg.c());
    for f in alg.relations() {
        let mut l = Polynomial::zero(&ring);
        for i in 0..n {
            let t = Polynomial::var(&ring, n + i);
            l = &l + &(&lift(&f.partial_derivative(i)?) * &t);
        }
        linear_forms.push(l);
    }
    let mut gens: Vec<Polynomial> = alg.relations().iter().map(lift).collect();
    gens.extend(linear_forms.iter().cloned());
    let count = gens.iter().filter(|g| !g.is_zero()).count();
    let ideal = Ideal::new(&ring, gens)?;
    let height = ideal.height()?;
    Ok(SymPresentation { ring, n, linear_forms, ideal, height, complete_intersection: height == Height::Finite(count as i64) })
}

/// A random small-integer combination of the maximal minors of `θ` that is
/// regular on `R`, drawn deterministically from `seed`.
pub fn find_test_element(alg: &GradedAlgebra, seed: u64) -> Result<Polynomial> {
    let pres = alg.jacobian_presentation()?;
    let minors: Vec<Polynomial> = pres.theta.minors(alg.c())?.into_iter().filter(|m| !m.is_zero()).collect();
    if alg.c() == 0 {
        return Ok(Polynomial::one(alg.ring()));
    }
    if minors.is_empty() {
        return Err(Error::TestElementExhausted { tries: 0 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..TEST_ELEMENT_TRIES {
        let mut g = Polynomial::zero(alg.ring());
        for m in &minors {
            let c: i64 = rng.gen_range(-3..=3);
            if c != 0 {
                g = &g + &m.scale(&Coeff::from_int(c));
            }
        }
        let g = alg.reduce(&g)?;
        if g.is_zero() {
            continue;
        }
        if alg.is_nonzerodivisor(&g)?.is_nonzerodivisor {
            return Ok(g);
        }
    }
    Err(Error::TestElementExhausted { tries: TEST_ELEMENT_TRIES })
}

/// The Rees ideal `J = (I + L) : g^∞` for a test element chosen from `seed`.
pub fn rees_ideal(alg: &GradedAlgebra, seed: u64) -> Result<ReesPresentation> {
    if !alg.is_reduced()? {
        return Err(Error::NotReduced);
    }
    let g = find_test_element(alg, seed)?;
    rees_ideal_with(alg, &g)
}

/// The Rees ideal for a given test element, which must be regular on `R`
/// and lie in the top nonzero Fitting ideal.
pub fn rees_ideal_with(alg: &GradedAlgebra, g: &Polynomial) -> Result<ReesPresentation> {
    let sym = symmetric_presentation(alg)?;
    let lifted = g.embed(&sym.ring, 0, alg.n(), MonomialOrder::DegRevLex);
    let ideal = sym.ideal.saturation(&lifted)?;
    let mut torsion = Vec::new();
    for b in ideal.groebner()?.iter() {
        if !sym.ideal.contains(b)? {
            torsion.push(b.clone());
        }
    }
    Ok(ReesPresentation { sym, test_element: g.clone(), ideal, torsion })
}

pub fn is_linear_type(alg: &GradedAlgebra, seed: u64) -> Result<bool> {
    Ok(rees_ideal(alg, seed)?.is_linear_type())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyticSpread {
    /// Dimension of the special fiber `Q[X,T]/(J + (X))`.
    pub spread: i64,
    pub rank: usize,
    pub dim: usize,
    pub generators: usize,
    /// `e ≤ ℓ ≤ dim R + e − 1`
    pub within_bounds: bool,
    /// `ℓ ≤ μ = n`
    pub within_generators: bool,
    /// `dim Q[X,T]/J`, expected to be `d + e`.
    pub rees_dimension: i64,
}

pub fn analytic_spread(alg: &GradedAlgebra, rees: &ReesPresentation) -> Result<AnalyticSpread> {
    let ring = &rees.sym.ring;
    let xs: Vec<Polynomial> = (0..alg.n()).map(|i| Polynomial::var(ring, i)).collect();
    let fiber = rees.ideal.with_generators(&xs)?;
    let spread = fiber.krull_dimension()?.dimension;
    let (d, e, n) = (alg.d(), alg.d(), alg.n());
    Ok(AnalyticSpread {
        spread,
        rank: e,
        dim: d,
        generators: n,
        within_bounds: spread >= e as i64 && spread <= (d + e) as i64 - 1,
        within_generators: spread <= n as i64,
        rees_dimension: rees.ideal.krull_dimension()?.dimension,
    })
}
