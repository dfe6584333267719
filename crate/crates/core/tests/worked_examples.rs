//! Published example values and derived values, each against an oracle
//! that does not go through the routine under test.

mod common;

use common::{brute_min_difference, code, derived_pair, half_ones, repeated_pair, span_words};
use divcss::catalog;
use divcss::construction::{
    check_proposition22, check_proposition6, derive_t, pair_parameters, puncture_split, repeat_pair, systematic_form,
};
use divcss::csst::{
    classify_diagonal_action, corollary22_check, lemma21_check, obstruction_check, search_signature, theorem19_check,
    theorem20_check, theorem3_check, ActionClass, Condition, ObstructionScope, SignatureSearch,
};
use divcss::gf2::{schur, xor_weight_expansion, Divisibility};
use divcss::textio::{read_pair, write_pair, Signatures};
use divcss::verify::{
    apply_transversal_cz_two_blocks, apply_transversal_h, apply_transversal_rz, simulate_diagonal_action, verify_cz,
    verify_h, verify_lemma16, verify_s, DenseState,
};
use divcss::{BitVector, CssCode, CssPair, LinearCode, PauliOperator};
use num_complex::Complex64;

const Y1: &str = "000110110010100000101010101010101010";
const X: [&str; 5] = [
    "111111111100000000111111000011000000",
    "111111000011110000111100110000110000",
    "111100110011001100110000111100001100",
    "111010101010101010110011001100000011",
    "100111111111111111000000000000000000",
];

fn v(s: &str) -> BitVector {
    s.parse().unwrap()
}

/// Character-level AND and XOR, independent of the packed representation.
fn and_str(a: &str, b: &str) -> String {
    a.chars().zip(b.chars()).map(|(x, y)| if x == '1' && y == '1' { '1' } else { '0' }).collect()
}

fn xor_str(a: &str, b: &str) -> String {
    a.chars().zip(b.chars()).map(|(x, y)| if x != y { '1' } else { '0' }).collect()
}

fn ones(s: &str) -> usize {
    s.chars().filter(|&c| c == '1').count()
}

/// Rank over F₂ of rows packed into `u64`s.
fn rank_u64(mut rows: Vec<u64>) -> usize {
    let mut rank = 0;
    for bit in 0..64 {
        if let Some(i) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) {
            rows.swap(rank, i);
            for j in 0..rows.len() {
                if j != rank && rows[j] >> bit & 1 == 1 {
                    rows[j] ^= rows[rank];
                }
            }
            rank += 1;
        }
    }
    rank
}

fn packed(s: &str) -> u64 {
    s.chars().enumerate().filter(|(_, c)| *c == '1').map(|(i, _)| 1u64 << i).sum()
}

fn example1() -> CssPair {
    catalog::entry("example1_36").unwrap().pair.unwrap()
}

fn lemma19_code(name: &str) -> CssCode {
    let pair = repeated_pair(name, 1);
    let s = half_ones(pair.n());
    CssCode::new(pair, BitVector::zeros(s.len()), s).unwrap()
}

fn doubled_e8() -> CssCode {
    CssCode::unsigned(repeated_pair("e8", 1)).unwrap()
}

fn labels(k: usize) -> impl Iterator<Item = BitVector> {
    (0..1u64 << k).map(move |a| BitVector::from_u64(k, a))
}

#[test]
fn example1_vectors_match_catalog() {
    let pair = example1();
    let x: Vec<BitVector> = X.iter().map(|s| v(s)).collect();
    assert_eq!(pair.c2_basis().rows(), &x[..]);
    assert_eq!(pair.coset_gens().rows(), &[v(Y1)]);
    assert_eq!(pair.c1(), &LinearCode::from_generators(36, x.iter().cloned().chain([v(Y1)])).unwrap());
    assert_eq!((pair.n(), pair.c1().dim(), pair.c2().dim(), pair.k()), (36, 6, 5, 1));
}

#[test]
fn example1_elementary_values() {
    assert_eq!(v(X[0]).weight(), ones(X[0]));
    assert_eq!(schur(&v(X[0]), &v(X[2])).unwrap(), v(&and_str(X[0], X[2])));
    assert_eq!(
        xor_weight_expansion(&[v(X[0]), v(X[1])], &[true, true]).unwrap(),
        ones(&xor_str(X[0], X[1])) as i64
    );
    let rows: Vec<u64> = X.iter().chain([&Y1]).map(|s| packed(s)).collect();
    assert_eq!(rank_u64(rows), 6);
    let c2 = LinearCode::from_generators(36, X.iter().map(|s| v(s))).unwrap();
    assert!(c2.is_subcode_of(example1().c1()).unwrap());
}

#[test]
fn example1_products_lie_in_dual() {
    let all: Vec<&str> = X.iter().copied().chain([Y1]).collect();
    // Every x_i ∗ c for c in a C₁ generator is orthogonal to every C₁ generator.
    for x in X {
        for c in &all {
            let prod = and_str(x, c);
            for d in &all {
                assert_eq!(ones(&and_str(&prod, d)) % 2, 0);
            }
        }
    }
    assert!(corollary22_check(&example1()));
}

#[test]
fn example1_identity_and_quad_weight() {
    let lhs = and_str(X[4], Y1);
    let rhs = xor_str(&and_str(X[0], X[2]), &and_str(X[1], X[3]));
    assert_eq!(lhs, rhs);
    assert_eq!(ones(&and_str(&and_str(X[0], X[1]), &and_str(X[2], X[3]))), 5);
    let cert = obstruction_check(&example1(), ObstructionScope::Basis).unwrap().unwrap();
    assert_eq!(cert.u, v(X[4]));
    assert_eq!(cert.y, v(Y1));
    assert_eq!(cert.quad_weight, 5);
    assert_eq!(cert.labels.u, "x5");
    assert_eq!(cert.labels.y, "y1");
    assert_eq!(cert.labels.pairs, [["x1".to_string(), "x3".into()], ["x2".into(), "x4".into()]]);
    assert!(cert.verify(&example1()));
}

#[test]
fn example1_unsigned_fails_with_witness() {
    let css = CssCode::unsigned(example1()).unwrap();
    let report = theorem3_check(&css).unwrap();
    assert!(!report.verdict);
    let w = report.witness.unwrap();
    assert!(w.is_violation(css.s_z()));
    let basis = lemma21_check(&css);
    assert!(!basis.verdict);
    let condition = basis.witness.unwrap().condition;
    assert!(matches!(
        condition,
        Condition::BasisWeight
            | Condition::BasisPair
            | Condition::BasisTriple
            | Condition::BasisCoset
            | Condition::BasisPairCoset
            | Condition::BasisCosetPair
    ));
    assert!(matches!(search_signature(&example1(), 8, 0), SignatureSearch::Inconclusive { .. } | SignatureSearch::Exhausted { .. }));
}

#[test]
fn example1_logical_x() {
    let css = CssCode::unsigned(example1()).unwrap();
    assert_eq!(css.logical_x(1).unwrap(), PauliOperator::x(v(Y1)));
    assert!(css.logical_x(2).is_err());
}

#[test]
fn catalog_parameters_by_enumeration() {
    // Weights from direct subset sums over the stored generator rows.
    for (name, m, d) in [("e8", 2u32, 4usize), ("rm_1_4", 3, 8), ("golay24", 2, 8)] {
        let c = code(name);
        let words = span_words(c.generator().rows(), c.n());
        let nonzero: Vec<usize> = words.iter().map(BitVector::weight).filter(|&w| w > 0).collect();
        assert_eq!(*nonzero.iter().min().unwrap(), d, "{name}");
        assert!(nonzero.iter().all(|w| w % (1 << m) == 0), "{name}");
        assert!(nonzero.iter().any(|w| w % (2 << m) != 0), "{name}");
        assert_eq!(c.divisibility().unwrap(), Divisibility::Exponent(m));
        assert_eq!(c.min_weight().unwrap(), d);
    }
}

#[test]
fn e8_is_self_dual() {
    let c = code("e8");
    let g = c.generator().rows();
    assert_eq!(g.len(), 4);
    assert!(g.iter().all(|a| g.iter().all(|b| a.and_weight(b) % 2 == 0)));
    assert_eq!(c.dual(), c);
}

#[test]
fn systematic_redundancy_rows() {
    let e8 = systematic_form(&code("e8")).unwrap();
    assert_eq!((e8.redundancy.row_count(), e8.redundancy.cols()), (4, 4));
    assert!(e8.redundancy.rows().iter().all(|r| r.weight() == 3));
    assert!(check_proposition6(&e8.redundancy, 2).passed());
    let rm = systematic_form(&code("rm_1_4")).unwrap();
    assert!(rm.redundancy.rows().iter().all(|r| r.weight() % 8 == 7));
    assert!(check_proposition6(&rm.redundancy, 3).passed());
    let golay = systematic_form(&code("golay24")).unwrap();
    assert_eq!((golay.redundancy.row_count(), golay.redundancy.cols()), (12, 12));
}

#[test]
fn derived_t_values() {
    assert_eq!(derive_t(&code("e8")).unwrap(), 2);
    assert_eq!(derive_t(&code("golay24")).unwrap(), 4);
    assert_eq!(derive_t(&code("rm_1_4")).unwrap(), 2);
}

#[test]
fn punctured_pairs() {
    let e8 = derived_pair("e8");
    assert_eq!((e8.n(), e8.c1().dim(), e8.c2().dim()), (6, 4, 2));
    assert!(e8.is_self_dual());
    // Coset generators are the first t rows of the punctured generator.
    let sf = systematic_form(&code("e8")).unwrap();
    for (i, y) in e8.coset_gens().rows().iter().enumerate() {
        assert!(y.slice(0..2).is_zero());
        assert_eq!(y.slice(2..6), *sf.redundancy.row(i));
    }
    let params = pair_parameters(&e8).unwrap();
    assert_eq!((params.n, params.k), (6, 2));
    assert!(params.d >= 2);
    let brute_dx = brute_min_difference(&[e8.c2_basis().rows(), e8.coset_gens().rows()].concat(), e8.c2_basis().rows(), 6);
    assert_eq!(params.d_x, brute_dx);

    let golay = derived_pair("golay24");
    let g = pair_parameters(&golay).unwrap();
    assert_eq!((g.n, g.k), (20, 4));
    assert!(g.d >= 4);

    for (p, n) in [(1u32, 12usize), (2, 24)] {
        let rep = repeat_pair(&e8, p).unwrap();
        assert_eq!((rep.n(), rep.c1().dim(), rep.c2().dim()), (n, 4, 2));
    }
    let doubled = pair_parameters(&repeat_pair(&e8, 1).unwrap()).unwrap();
    assert_eq!((doubled.d_x, doubled.d_z), (2 * params.d_x, params.d_z));

    for (name, m) in [("e8", 2u32), ("golay24", 2), ("rm_1_4", 3)] {
        assert!(check_proposition22(&derived_pair(name), m).unwrap().passed(), "{name}");
    }
    // Before doubling, some triple product x∗y∗z has odd weight.
    let c1_rows = [golay.c2_basis().rows(), golay.coset_gens().rows()].concat();
    let odd_triple = golay.c2_basis().rows().iter().any(|x| {
        c1_rows.iter().any(|y| c1_rows.iter().any(|z| x.and_weight(&y.checked_schur(z).unwrap()) % 2 == 1))
    });
    assert!(odd_triple);
    assert!(!corollary22_check(&golay));
    assert!(corollary22_check(&repeat_pair(&golay, 1).unwrap()));
}

#[test]
fn positive_encoding_of_punctured_e8() {
    let css = CssCode::unsigned(derived_pair("e8")).unwrap();
    let zero = css.encode(&BitVector::zeros(2)).unwrap();
    assert_eq!(zero.len(), 4);
    for ket in zero.support() {
        assert!((zero.amplitude(ket) - Complex64::new(0.5, 0.0)).norm() < 1e-12);
    }
    let c2: Vec<BitVector> = css.pair().c2().codewords().unwrap();
    let mut kets: Vec<BitVector> = zero.support().cloned().collect();
    let mut expected = c2;
    kets.sort();
    expected.sort();
    assert_eq!(kets, expected);
    assert_eq!(css.logical_x(1).unwrap(), PauliOperator::x(css.pair().coset_gens().row(0).clone()));
}

#[test]
fn lemma19_encoding_and_projector() {
    let css = lemma19_code("e8");
    let s = half_ones(css.n());
    let zero = css.encode(&BitVector::zeros(css.k())).unwrap();
    let expected: Vec<BitVector> = css.pair().c2().codewords().unwrap().iter().map(|x| x ^ &s).collect();
    let mut kets: Vec<BitVector> = zero.support().cloned().collect();
    let mut expected = expected;
    kets.sort();
    expected.sort();
    assert_eq!(kets, expected);
    let projected = css.apply_projector(&s).unwrap();
    assert!(projected.proportional_to(&zero, 1e-12).is_some());
}

#[test]
fn csst_verdicts_on_doubled_e8() {
    let plain = doubled_e8();
    assert!(theorem3_check(&plain).unwrap().verdict);
    assert!(lemma21_check(&plain).verdict);
    assert!(!theorem19_check(&plain).unwrap().verdict);
    let l19 = lemma19_code("e8");
    assert!(theorem3_check(&l19).unwrap().verdict);
    assert!(theorem19_check(&l19).unwrap().verdict);
    let t20 = theorem20_check(&l19).unwrap();
    assert!(!t20.verdict);
    assert_eq!(t20.witness.unwrap().residue, 0);
    assert!(obstruction_check(&derived_pair("e8"), ObstructionScope::Broad).unwrap().is_none());
}

#[test]
fn doubled_pairs_admit_signatures() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
    for _ in 0..10 {
        let base = common::random_pair(&mut rng, 6, 3, 1);
        let doubled = repeat_pair(&base, 1).unwrap();
        match search_signature(&doubled, u64::MAX, 0) {
            SignatureSearch::Found { s_z, .. } => {
                let css = CssCode::new(doubled.clone(), BitVector::zeros(12), s_z).unwrap();
                assert!(theorem3_check(&css).unwrap().verdict);
            }
            other => panic!("no signature for a doubled pair: {other:?}"),
        }
        let css = CssCode::new(doubled.clone(), BitVector::zeros(12), half_ones(12)).unwrap();
        assert!(theorem3_check(&css).unwrap().verdict);
    }
}

#[test]
fn rotation_actions() {
    let e8 = CssCode::unsigned(derived_pair("e8")).unwrap();
    let act = classify_diagonal_action(&e8, 1).unwrap();
    assert_eq!(act.class, Some(ActionClass::RotationZ { j: 1, dagger: true }));
    let quad = CssCode::unsigned(repeated_pair("e8", 2)).unwrap();
    for l in 0..=1 {
        assert_eq!(classify_diagonal_action(&quad, l).unwrap().class, Some(ActionClass::Identity));
    }
    let doubled = classify_diagonal_action(&doubled_e8(), 2).unwrap();
    assert_eq!(doubled.class.unwrap().name(), "S†");
    let rm = CssCode::unsigned(derived_pair("rm_1_4")).unwrap();
    assert_eq!(classify_diagonal_action(&rm, 2).unwrap().class.unwrap().name(), "T†");
}

#[test]
fn classification_matches_simulation() {
    let codes = [
        CssCode::unsigned(derived_pair("e8")).unwrap(),
        doubled_e8(),
        CssCode::unsigned(repeated_pair("e8", 2)).unwrap(),
        CssCode::unsigned(derived_pair("rm_1_4")).unwrap(),
        CssCode::unsigned(repeated_pair("rm_1_4", 1)).unwrap(),
        lemma19_code("e8"),
        CssCode::unsigned(example1()).unwrap(),
    ];
    for css in &codes {
        for l in 1..=3 {
            let act = classify_diagonal_action(css, l).unwrap();
            let sim = simulate_diagonal_action(css, l).unwrap();
            assert_eq!(act.logical, sim.is_diagonal(), "n={} l={l}", css.n());
            if act.logical {
                let modulus = 2u64 << l;
                let predicted: Vec<Option<u64>> =
                    act.phases.iter().map(|c| Some((act.global + c) % modulus)).collect();
                assert_eq!(sim.exponents, predicted, "n={} l={l}", css.n());
            }
        }
    }
}

#[test]
fn transversal_t_phase_formula() {
    let codes = [doubled_e8(), lemma19_code("e8"), CssCode::unsigned(derived_pair("rm_1_4")).unwrap()];
    for css in &codes {
        assert!(theorem3_check(css).unwrap().verdict);
        let s = css.s_z();
        for a in labels(css.k()) {
            let y = css.coset_element(&a).unwrap();
            let e = (s.weight() as i64 + y.weight() as i64 - 2 * y.and_weight(s) as i64).rem_euclid(8);
            let phase = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4 * e as f64);
            let state = css.encode(&a).unwrap();
            // Per-ket phases applied by hand.
            for ket in state.support() {
                let after = state.amplitude(ket) * Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4 * ket.weight() as f64);
                assert!((after - phase * state.amplitude(ket)).norm() < 1e-12);
            }
            let image = apply_transversal_rz(&state, 2).unwrap();
            let g = image.equal_up_to_global_phase(&state, 0.0).unwrap();
            assert_eq!(g.exponent_at(2), Some(e as u64));
        }
    }
}

#[test]
fn repetition_phase_law_on_encoded_states() {
    let base = derived_pair("e8");
    let report = verify_lemma16(&base, 2, 1, 2).unwrap();
    assert!(report.passed);
    // Relative phase e^{−iπ w(a)/2} at l = 2.
    for check in &report.per_state {
        assert_eq!(check.expected, (8 - 2 * check.a.weight() as u64 % 8) % 8);
    }
    let identity = verify_lemma16(&base, 2, 2, 1).unwrap();
    assert!(identity.passed);
    assert_eq!(identity.expected_action, ActionClass::Identity);
}

#[test]
fn hadamard_maps_basis_to_fourier_basis() {
    let css = CssCode::unsigned(derived_pair("e8")).unwrap();
    let k = css.k();
    let scale = 1.0 / f64::from(1u32 << k).sqrt();
    for a in labels(k) {
        let image = apply_transversal_h(&css.encode(&a).unwrap()).unwrap();
        let mut expected = DenseState::zeros(css.n()).unwrap();
        for b in labels(k) {
            let sign = if a.and_weight(&b) % 2 == 1 { -scale } else { scale };
            let term = css.encode(&b).unwrap();
            expected.add_sparse(&term, Complex64::new(sign, 0.0)).unwrap();
        }
        let g = image.equal_up_to_global_phase(&expected, 1e-10).unwrap();
        assert!((g - 1.0).norm() < 1e-10);
    }
    assert!(verify_h(&css, 1e-10).unwrap().pass);
    assert!(verify_s(&css).unwrap().pass);
    assert!(verify_cz(&css).unwrap().pass);
}

#[test]
fn cz_sign_is_logical_inner_product() {
    let css = CssCode::unsigned(derived_pair("e8")).unwrap();
    let k = css.k();
    for a in labels(k) {
        for b in labels(k) {
            let two = apply_transversal_cz_two_blocks(&css.encode(&a).unwrap(), &css.encode(&b).unwrap()).unwrap();
            assert_eq!(two.uniform_sign(), Some(a.and_weight(&b) % 2 == 1));
        }
    }
}

#[test]
fn constructed_pairs_round_trip_through_text() {
    for (name, p) in [("e8", 0u32), ("e8", 2), ("golay24", 0), ("rm_1_4", 1)] {
        let pair = repeated_pair(name, p);
        let sig = Signatures {
            s_x: None,
            s_z: Some(half_ones(pair.n())),
        };
        let (back, sig_back) = read_pair(&write_pair(&pair, &sig)).unwrap();
        assert_eq!(back, pair);
        assert_eq!(sig_back, sig);
    }
    let ex = example1();
    let (back, _) = read_pair(&write_pair(&ex, &Signatures::default())).unwrap();
    assert_eq!(back.c2_basis(), ex.c2_basis());
    assert_eq!(back.coset_gens(), ex.coset_gens());
    assert_eq!(puncture_split(&code("e8"), 1).unwrap().k(), 1);
}
