mod common;

use common::{brute_dual, brute_min_difference, random_pair, random_vector, span_words};
use divcss::construction::{
    check_repetition_witnesses, derive_t, pair_parameters, puncture_split, repeat_pair, verify_puncture,
};
use divcss::csst::{
    corollary22_check, corollary4_check_signature, lemma21_check_signature, obstruction_check, search_signature,
    theorem3_check_signature, ObstructionScope, SignatureSearch,
};
use divcss::gf2::{schur_all, schur_code, xor_weight_expansion, Divisibility};
use divcss::verify::apply_transversal_rz;
use divcss::{BitVector, CssCode, LinearCode, PauliOperator};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bits(n: usize) -> impl Strategy<Value = BitVector> {
    prop::collection::vec(any::<bool>(), n).prop_map(BitVector::from_bools)
}

fn rows(n: usize, max_k: usize) -> impl Strategy<Value = Vec<BitVector>> {
    prop::collection::vec(bits(n), 0..=max_k)
}

fn small_code() -> impl Strategy<Value = (usize, Vec<BitVector>)> {
    (2usize..=10).prop_flat_map(|n| (Just(n), rows(n, 5)))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Another basis of the same span: each row gains a random combination of later rows.
fn rebasis(rng: &mut impl Rng, basis: &[BitVector]) -> Vec<BitVector> {
    let mut out = basis.to_vec();
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            if rng.gen_bool(0.5) {
                let r = out[j].clone();
                out[i] ^= &r;
            }
        }
    }
    out.shuffle(rng);
    out
}

fn xor_all<'a>(n: usize, vs: impl IntoIterator<Item = &'a BitVector>) -> BitVector {
    let mut acc = BitVector::zeros(n);
    for v in vs {
        acc ^= v;
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn single_vector_expansion_is_weight(v in (0usize..=130).prop_flat_map(bits)) {
        prop_assert_eq!(xor_weight_expansion(std::slice::from_ref(&v), &[true]).unwrap(), v.weight() as i64);
    }

    #[test]
    fn xor_weight_identity((u, v) in (0usize..=130).prop_flat_map(|n| (bits(n), bits(n)))) {
        let s = u.checked_schur(&v).unwrap();
        prop_assert_eq!((&u ^ &v).weight(), u.weight() + v.weight() - 2 * s.weight());
    }

    #[test]
    fn expansion_matches_direct_xor(
        (vs, coeffs) in (1usize..=64, 0usize..=5).prop_flat_map(|(n, k)| {
            (prop::collection::vec(bits(n), k), prop::collection::vec(any::<bool>(), k))
        })
    ) {
        let n = vs.first().map_or(0, BitVector::len);
        let direct = xor_all(n, vs.iter().zip(&coeffs).filter(|(_, &c)| c).map(|(v, _)| v));
        prop_assert_eq!(xor_weight_expansion(&vs, &coeffs).unwrap(), direct.weight() as i64);
    }

    #[test]
    fn dual_is_involution_and_matches_brute_force((n, gens) in small_code()) {
        let c = LinearCode::from_generators(n, gens.clone()).unwrap();
        let d = c.dual();
        prop_assert_eq!(c.dim() + d.dim(), n);
        prop_assert_eq!(&d.dual(), &c);
        let oracle = LinearCode::from_generators(n, brute_dual(&gens, n)).unwrap();
        prop_assert_eq!(&d, &oracle);
    }

    #[test]
    fn schur_code_commutes_and_ignores_basis(
        (n, a, b, seed) in (2usize..=12).prop_flat_map(|n| (Just(n), rows(n, 4), rows(n, 4), any::<u64>()))
    ) {
        let ca = LinearCode::from_generators(n, a.clone()).unwrap();
        let cb = LinearCode::from_generators(n, b.clone()).unwrap();
        let ab = schur_code(&ca, &cb).unwrap();
        prop_assert_eq!(&ab, &schur_code(&cb, &ca).unwrap());
        let mut r = rng(seed);
        let ra = LinearCode::from_generators(n, rebasis(&mut r, ca.generator().rows())).unwrap();
        let rb = LinearCode::from_generators(n, rebasis(&mut r, cb.generator().rows())).unwrap();
        prop_assert_eq!(&ab, &schur_code(&ra, &rb).unwrap());
        // Oracle: span of all products of codewords.
        let words_a = span_words(&a, n);
        let words_b = span_words(&b, n);
        let products = words_a.iter().flat_map(|x| words_b.iter().map(move |y| x.checked_schur(y).unwrap()));
        prop_assert_eq!(&ab, &LinearCode::from_generators(n, products).unwrap());
    }

    #[test]
    fn min_weight_matches_scan_and_permutation((n, gens, seed) in small_code().prop_flat_map(|(n, g)| (Just(n), Just(g), any::<u64>()))) {
        let c = LinearCode::from_generators(n, gens.clone()).unwrap();
        prop_assume!(c.dim() > 0);
        let naive = span_words(&gens, n).into_iter().map(|v| v.weight()).filter(|&w| w > 0).min().unwrap();
        prop_assert_eq!(c.min_weight().unwrap(), naive);
        let perm = permutation(&mut rng(seed), n);
        prop_assert_eq!(c.permute_columns(&perm).min_weight().unwrap(), naive);
    }

    #[test]
    fn products_of_codewords_are_divisible(name in prop::sample::select(vec!["e8", "rm_1_4", "golay24"]), picks in prop::collection::vec(any::<u64>(), 1..=3)) {
        let c = common::code(name);
        let Divisibility::Exponent(m) = c.divisibility().unwrap() else { unreachable!() };
        let k = c.dim();
        let words: Vec<BitVector> = picks
            .iter()
            .map(|&p| c.generator().combination(&BitVector::from_u64(k, p & ((1 << k) - 1))))
            .collect();
        for i in 1..=words.len().min(m as usize) {
            let w = schur_all(&words[..i]).unwrap().weight();
            prop_assert_eq!(w % (1 << (m as usize - i + 1)), 0, "i = {}", i);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn puncture_parameters_ignore_column_order(name in prop::sample::select(vec!["e8", "rm_1_4"]), seed in any::<u64>()) {
        let c = common::code(name);
        let perm = permutation(&mut rng(seed), c.n());
        let shuffled = c.permute_columns(&perm);
        let t = derive_t(&c).unwrap();
        prop_assert_eq!(derive_t(&shuffled).unwrap(), t);
        let a = puncture_split(&c, t).unwrap();
        let b = puncture_split(&shuffled, t).unwrap();
        prop_assert_eq!(pair_parameters(&a).unwrap(), pair_parameters(&b).unwrap());
        prop_assert_eq!(a.c1().divisibility().unwrap(), b.c1().divisibility().unwrap());
        prop_assert_eq!(a.c2().divisibility().unwrap(), b.c2().divisibility().unwrap());
        prop_assert_eq!(a.c2().dual().min_weight().unwrap(), b.c2().dual().min_weight().unwrap());
    }

    #[test]
    fn css_states_are_stabilized_orthogonal_and_shifted(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(3..=9);
        let k1 = r.gen_range(1..=n.min(5));
        let k2 = r.gen_range(0..k1);
        let pair = random_pair(&mut r, n, k1, k2);
        let s_x = random_vector(&mut r, n);
        let s_z = random_vector(&mut r, n);
        let css = CssCode::new(pair.clone(), s_x.clone(), s_z.clone()).unwrap();

        for x in pair.c2_basis().rows() {
            for z in pair.c1().dual().generator().rows() {
                prop_assert_eq!(x.and_weight(z) % 2, 0);
            }
        }
        let k = css.k();
        let states: Vec<_> = (0..1u64 << k).map(|a| css.encode(&BitVector::from_u64(k, a)).unwrap()).collect();
        let generators = css.stabilizer_generators();
        for s in &states {
            for g in &generators {
                prop_assert_eq!(&g.apply(s).unwrap(), s);
            }
        }
        for (i, si) in states.iter().enumerate() {
            for sj in &states[i + 1..] {
                prop_assert!(si.support().all(|v| sj.coefficient(v).is_none()));
            }
        }
        for (a, s) in states.iter().enumerate() {
            let y = css.coset_element(&BitVector::from_u64(k, a as u64)).unwrap();
            prop_assert_eq!(&PauliOperator::x(y).apply(&states[0]).unwrap(), s);
        }

        let c = pair.c1().generator().combination(&random_vector(&mut r, k1));
        // Same code space, logical basis relabelled: the states agree as a
        // set, each up to the sign `(−1)^{s_X·x}` of the `C₂` part of `c`.
        let shifted = CssCode::new(pair, s_x, &s_z ^ &c).unwrap();
        let mut moved: Vec<_> = (0..1u64 << k).map(|a| shifted.encode(&BitVector::from_u64(k, a)).unwrap()).collect();
        let mut original = states.clone();
        let key = |s: &divcss::SparseState| s.support().next().cloned();
        moved.sort_by_key(key);
        original.sort_by_key(key);
        for (m, o) in moved.iter().zip(&original) {
            prop_assert!(m.support().eq(o.support()));
            let g = m.equal_up_to_global_phase(o, 0.0).and_then(|g| g.exponent_at(1));
            prop_assert!(g.is_some());
        }
    }

    #[test]
    fn signature_checks_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(4..=16);
        let k1 = r.gen_range(2..=n.min(6));
        let k2 = r.gen_range(1..k1);
        let pair = random_pair(&mut r, n, k1, k2);
        let s_z = random_vector(&mut r, n);
        let t3 = theorem3_check_signature(&pair, &s_z).unwrap().verdict;
        prop_assert_eq!(corollary4_check_signature(&pair, &s_z).unwrap().verdict, t3);
        prop_assert_eq!(lemma21_check_signature(&pair, &s_z).unwrap().verdict, t3);
        if t3 {
            prop_assert!(corollary22_check(&pair));
        }
    }

    #[test]
    fn obstruction_rules_out_every_signature(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(6..=10);
        let k1 = r.gen_range(3..=n.min(6));
        let k2 = r.gen_range(2..k1);
        let pair = random_pair(&mut r, n, k1, k2);
        let search = search_signature(&pair, u64::MAX, 0);
        if let SignatureSearch::Found { s_z, .. } = &search {
            prop_assert!(lemma21_check_signature(&pair, s_z).unwrap().verdict);
            prop_assert!(corollary22_check(&pair));
        }
        for scope in [ObstructionScope::Basis, ObstructionScope::Broad] {
            if let Some(cert) = obstruction_check(&pair, scope).unwrap() {
                prop_assert!(cert.verify(&pair));
                let exhausted = matches!(search, SignatureSearch::Exhausted { .. });
                prop_assert!(exhausted);
                // Independent oracle: every signature representative fails the basic check.
                for label in 0..1u64 << (n - k1) {
                    let s = divisibility_free_candidate(&pair, label);
                    prop_assert!(!theorem3_check_signature(&pair, &s).unwrap().verdict);
                }
            }
        }
    }

    #[test]
    fn pauli_products_and_commutation(
        (ps, v) in (1usize..=70).prop_flat_map(|n| {
            (prop::collection::vec((bits(n), bits(n), 0u8..4), 3), bits(n))
        })
    ) {
        let p: Vec<PauliOperator> = ps.into_iter().map(|(a, b, k)| PauliOperator::new(a, b, k).unwrap()).collect();
        let ab_c = p[0].mul(&p[1]).unwrap().mul(&p[2]).unwrap();
        let a_bc = p[0].mul(&p[1].mul(&p[2]).unwrap()).unwrap();
        prop_assert_eq!(&ab_c, &a_bc);
        let symplectic = (p[0].x_part().and_weight(p[1].z_part()) + p[0].z_part().and_weight(p[1].x_part())).is_multiple_of(2);
        prop_assert_eq!(p[0].commutes(&p[1]).unwrap(), symplectic);
        let pq = p[0].mul(&p[1]).unwrap();
        let qp = p[1].mul(&p[0]).unwrap();
        prop_assert_eq!(pq == qp, symplectic);
        // Acting with the product equals acting twice.
        let (w1, e1) = p[1].act_on_ket(&v);
        let (w2, e2) = p[0].act_on_ket(&w1);
        let (w, e) = pq.act_on_ket(&v);
        prop_assert_eq!(w, w2);
        prop_assert_eq!(e % 4, (e1 + e2) % 4);
    }

    #[test]
    fn rotation_period_wraps(l in 0u32..=4, (n, kets) in (1usize..=12).prop_flat_map(|n| (Just(n), prop::collection::btree_set(bits(n), 1..6)))) {
        let state = divcss::SparseState::from_phases(n, 0, kets.len() as u64, kets.iter().map(|k| (k.clone(), 0))).unwrap();
        let mut s = state.clone();
        for _ in 0..1u32 << (l + 1) {
            s = apply_transversal_rz(&s, l).unwrap();
        }
        prop_assert_eq!(&s.reduced(), &state.reduced());
        if l > 0 {
            let twice = apply_transversal_rz(&apply_transversal_rz(&state, l).unwrap(), l).unwrap();
            prop_assert_eq!(&twice, &apply_transversal_rz(&state, l - 1).unwrap());
        }
    }
}

/// Signature representative from the bits of `label` over a unit-vector
/// complement of `C₁`, built without the library's candidate enumeration.
fn divisibility_free_candidate(pair: &divcss::CssPair, label: u64) -> BitVector {
    let complement = complement_basis(pair.c1());
    xor_all(pair.n(), complement.iter().enumerate().filter(|(i, _)| label >> i & 1 == 1).map(|(_, v)| v))
}

/// Unit vectors completing a basis of `c` to `F₂ⁿ`, by greedy rank test.
fn complement_basis(c: &LinearCode) -> Vec<BitVector> {
    let n = c.n();
    let mut rows = c.generator().rows().to_vec();
    let mut out = Vec::new();
    for j in 0..n {
        let mut e = BitVector::zeros(n);
        e.set(j, true);
        let mut trial = rows.clone();
        trial.push(e.clone());
        if LinearCode::from_generators(n, trial).unwrap().dim() > rows.len() {
            rows.push(e.clone());
            out.push(e);
        }
    }
    out
}

#[test]
fn puncture_invariants_for_every_legal_t() {
    for name in ["e8", "rm_1_4", "golay24"] {
        let c = common::code(name);
        for t in 1..=derive_t(&c).unwrap() {
            let pair = puncture_split(&c, t).unwrap();
            let report = verify_puncture(&c, &pair).unwrap();
            assert!(report.passed(), "{name} t={t}: {report:?}");
            assert_eq!(pair.k(), t);
            if report.source_self_dual {
                assert_eq!(pair.c2(), &pair.c1().dual(), "{name} t={t}");
            }
        }
    }
}

#[test]
fn repetition_scales_x_distance_only() {
    // `d_Z` enumerates `C₂⊥`, so the largest instances stay under the cap.
    for (name, max_p) in [("e8", 2u32), ("rm_1_4", 1)] {
        let base = common::derived_pair(name);
        let p0 = pair_parameters(&base).unwrap();
        let n0 = base.n();
        for p in 0..=max_p {
            let rep = repeat_pair(&base, p).unwrap();
            let params = pair_parameters(&rep).unwrap();
            assert_eq!(params.n, n0 << p);
            assert_eq!(params.k, p0.k);
            assert_eq!(params.d_x, p0.d_x << p, "{name} p={p}");
            assert_eq!(params.d_z, p0.d_z, "{name} p={p}");
            assert!(check_repetition_witnesses(&base, p).unwrap());
            // Oracle distances from explicit spans.
            let brute_dx = brute_min_difference(
                &[rep.c2_basis().rows(), rep.coset_gens().rows()].concat(),
                rep.c2_basis().rows(),
                rep.n(),
            );
            assert_eq!(brute_dx, params.d_x);
        }
    }
}
