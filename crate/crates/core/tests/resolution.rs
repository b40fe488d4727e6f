mod common;

use common::*;
use kahler_core::eagon_northcott::{build_en, en_acyclicity};
use kahler_core::groebner::{Height, Ideal};
use kahler_core::matrix::PolyMatrix;
use kahler_core::poly::Polynomial;
use kahler_core::resolution::{depth_and_cm, FreeResolution, ModulePresentation};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn resolve(i: &Ideal) -> FreeResolution {
    let n = i.ring().arity();
    ModulePresentation::quotient_ring(i).unwrap().free_resolution(n + 2).unwrap()
}

fn mat(names: &[&str], rows: &[&[&str]]) -> PolyMatrix {
    let r = ring(names);
    PolyMatrix::from_rows(&r, rows.iter().map(|row| row.iter().map(|s| poly(&r, s)).collect()).collect()).unwrap()
}

const IDEALS: &[(&[&str], &[&str])] = &[
    (&["X", "Y", "Z", "W"], &["X*Z - Y^2", "Y*W - Z^2", "X*W - Y*Z"]),
    (&["X", "Y", "T1", "T2"], &["X*Y", "X*T2", "Y*T1", "T1*T2"]),
    (&["X", "Y", "Z", "T1", "T2", "T3"], &["X*Y - Z^2", "Y*T1 + X*T2 - 2*Z*T3"]),
    (&["X", "Y", "Z"], &["X^2", "X*Y", "X*Z", "Y^3"]),
    (&["A", "B", "C", "D", "E"], &["A*B", "B*C", "C*D", "D*E", "E*A"]),
];

#[test]
fn differentials_compose_to_zero_and_generate_the_ideal() {
    for (names, gens) in IDEALS {
        let r = ring(names);
        let i = ideal(&r, gens);
        let res = resolve(&i);
        assert!(res.complex.is_complex().unwrap(), "{:?}", gens);
        assert!(res.minimal);
        let d1 = res.complex.differential(1);
        let stage: Vec<Polynomial> = d1.row(0);
        let generated = Ideal::new(&r, stage).unwrap();
        assert!(generated.equals(&i).unwrap(), "{:?}", gens);
    }
}

#[test]
fn named_projective_dimensions() {
    let cases: &[(usize, usize)] = &[(2, 2), (3, 1), (2, 4), (3, 0), (3, 2)];
    for ((names, gens), &(pd, depth)) in IDEALS.iter().zip(cases) {
        let rep = depth_and_cm(&ideal(&ring(names), gens)).unwrap();
        assert_eq!((rep.pd, rep.depth as usize), (pd, depth), "{:?}", gens);
    }
}

#[test]
fn projective_dimension_ignores_generator_order_and_redundancy() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (names, gens) in IDEALS {
        let r = ring(names);
        let base = resolve(&ideal(&r, gens));
        let mut shuffled: Vec<&str> = gens.to_vec();
        shuffled.shuffle(&mut rng);
        let other = resolve(&ideal(&r, &shuffled));
        assert_eq!(base.betti_numbers(), other.betti_numbers(), "{:?}", gens);
        // A redundant generator must be cancelled by minimization.
        let mut padded: Vec<Polynomial> = gens.iter().map(|g| poly(&r, g)).collect();
        padded.push(&padded[0] * &Polynomial::var(&r, 0));
        let again = resolve(&Ideal::new(&r, padded).unwrap());
        assert_eq!(base.betti_numbers(), again.betti_numbers(), "{:?}", gens);
    }
}

#[test]
fn hypersurfaces_have_depth_one_less() {
    let cases: &[(&[&str], &str)] = &[
        (&["X", "Y"], "X*Y"),
        (&["X", "Y", "Z"], "X^3 + Y^3 + Z^3"),
        (&["X", "Y", "Z", "W"], "X*W - Y*Z"),
        (&["X"], "X^5"),
    ];
    for (names, f) in cases {
        let rep = depth_and_cm(&ideal(&ring(names), &[f])).unwrap();
        assert_eq!(rep.depth, names.len() as i64 - 1);
        assert_eq!(rep.dim, rep.depth);
        assert!(rep.cohen_macaulay);
    }
}

/// Where the height criterion holds, the minors resolve with the
/// Eagon–Northcott length `m − t + 1`.
#[test]
fn maximal_minors_have_expected_length() {
    let cases: &[(&[&str], &[&[&str]])] = &[
        (&["X", "Y", "Z", "W"], &[&["X", "Y", "Z"], &["Y", "Z", "W"]]),
        (&["A", "B", "C", "D", "E", "F"], &[&["A", "B", "C"], &["D", "E", "F"]]),
        (&["A", "B", "C", "D", "E"], &[&["A", "B", "C", "D"], &["B", "C", "D", "E"]]),
        (&["X", "Y", "Z"], &[&["X", "Y", "Z"]]),
    ];
    for (names, rows) in cases {
        let m = mat(names, rows);
        let acyc = en_acyclicity(&m, None).unwrap();
        assert!(acyc.acyclic, "{:?}", rows);
        let minors = m.minors_ideal(m.rows()).unwrap();
        let res = resolve(&minors);
        assert_eq!(res.projective_dimension(), m.cols() - m.rows() + 1, "{:?}", rows);
        let en = build_en(&m).unwrap();
        assert_eq!(en.complex.length(), m.cols() - m.rows() + 1);
    }
}

/// `ker d_1 ⊆ im d_2` for the catalecticant complex: every syzygy of the
/// minors lies in the column span of `d_2`.
#[test]
fn en_kernel_is_image_on_catalecticant() {
    let m = mat(&["X", "Y", "Z", "W"], &[&["X", "Y", "Z"], &["Y", "Z", "W"]]);
    let acyc = en_acyclicity(&m, None).unwrap();
    assert_eq!(acyc.height, Height::Finite(2));
    let en = build_en(&m).unwrap();
    let d1 = en.complex.differential(1).clone();
    let d2 = en.complex.differential(2).clone();
    let shifts = vec![0];
    let syz = ModulePresentation::new(d1.clone(), shifts).unwrap().syzygies().unwrap();
    let rows = d2.rows();
    let r = d2.ring().clone();
    for c in 0..syz.relations.cols() {
        let v = syz.relations.column(c);
        assert!(d1.apply(&v).unwrap().iter().all(|p| p.is_zero()));
        // v ∈ im d_2 iff v reduces to zero against the column module of d_2,
        // i.e. the syzygy module of [d_2 | v] has a relation with unit last entry.
        let mut cols: Vec<Vec<Polynomial>> = (0..d2.cols()).map(|k| d2.column(k)).collect();
        cols.push(v.clone());
        let aug = PolyMatrix::from_columns(&r, rows, cols).unwrap();
        let shift = vec![d1.get(0, 0).weighted_degree_info().1.unwrap(); rows];
        let s = ModulePresentation::new(aug, shift).unwrap().syzygies().unwrap();
        let last = s.relations.rows() - 1;
        let unit = (0..s.relations.cols()).any(|k| {
            let e = s.relations.get(last, k);
            !e.is_zero() && e.is_constant()
        });
        assert!(unit, "syzygy {} not in the image of d_2", c);
    }
}

fn generic_matrix(t: usize, m: usize) -> PolyMatrix {
    let names: Vec<String> = (0..t * m).map(|k| format!("x{}", k)).collect();
    let r = kahler_core::poly::VariableContext::standard(names).unwrap();
    let rows = (0..t).map(|i| (0..m).map(|j| Polynomial::var(&r, i * m + j)).collect()).collect();
    PolyMatrix::from_rows(&r, rows).unwrap()
}

#[test]
fn en_is_a_complex_up_to_three_by_five() {
    for t in 1..=3 {
        for m in t..=5 {
            let en = build_en(&generic_matrix(t, m)).unwrap();
            assert!(en.complex.is_complex().unwrap(), "{}x{}", t, m);
            assert_eq!(en.complex.length(), m - t + 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_linear_matrices_give_complexes(seed in 0u64..10_000, t in 1usize..=2, extra in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = ring(&["X", "Y", "Z", "W"]);
        let m = t + extra;
        let rows = (0..t).map(|_| (0..m).map(|_| random_homogeneous(&mut rng, &r, 2, 1)).collect()).collect();
        let mat = PolyMatrix::from_rows(&r, rows).unwrap();
        let en = build_en(&mat).unwrap();
        prop_assert!(en.complex.is_complex().unwrap());
    }
}
