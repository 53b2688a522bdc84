//! Property suite: algebraic laws on random inputs, plus the structure
//! theorems (thin spans, rank-one and rank-two normal forms, small
//! dimensions) asserted over every generated corpus member.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qtrans_core::classify::normalize_zeros;
use qtrans_core::corpus;
use qtrans_core::gcd::{gcd, gcd_list, try_div_exact};
use qtrans_core::hessian::{find_relation, image_span, qt_from_relation};
use qtrans_core::polymap::{gradient, hessian};
use qtrans_core::quasitrans::{check_qt, conjugate, is_invariant, iterate, quasi_degree};
use qtrans_core::rat::rat_int;
use qtrans_core::{
    Monomial, Poly, PolyMap, PolyMatrix, QMatrix, QuasiDegree, QuasiTranslation, RankMode,
    RelationSearch,
};

fn poly_from_spec(arity: usize, terms: &[(Vec<u32>, i32)]) -> Poly {
    let terms = terms
        .iter()
        .map(|(exps, c)| (Monomial::new(exps.clone()), rat_int(*c as i64)))
        .collect();
    Poly::from_terms(arity, terms)
}

fn arb_poly(arity: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, arity), -3..=3i32),
        0..=max_terms,
    )
    .prop_map(move |terms| poly_from_spec(arity, &terms))
}

fn arb_map(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = PolyMap> {
    prop::collection::vec(arb_poly(n, max_exp, max_terms), n).prop_map(PolyMap::new)
}

fn at_most_zero(d: QuasiDegree) -> bool {
    matches!(d, QuasiDegree::MinusInfinity | QuasiDegree::Finite(0))
}

fn map_is_homogeneous(map: &PolyMap) -> bool {
    let mut degree = None;
    for p in map.components() {
        if p.is_zero() {
            continue;
        }
        match (p.homogeneous_degree(), degree) {
            (Some(d), None) => degree = Some(d),
            (Some(d), Some(seen)) if d == seen => {}
            _ => return false,
        }
    }
    true
}

fn cofactor_det(m: &PolyMatrix) -> Poly {
    let n = m.rows();
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let cols: Vec<usize> = (1..n).collect();
    let mut acc = Poly::zero(m.arity());
    for i in 0..n {
        let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
        let minor = cofactor_det(&m.submatrix(&rows, &cols));
        let signed = m.get(i, 0).mul(&minor);
        acc = if i % 2 == 0 { acc.add(&signed) } else { acc.sub(&signed) };
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn degree_of_product_adds(f in arb_poly(3, 2, 4), g in arb_poly(3, 2, 4)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let expected = f.degree().unwrap() + g.degree().unwrap();
        prop_assert_eq!(f.mul(&g).degree(), Some(expected));
    }

    #[test]
    fn composition_is_associative(
        f in arb_map(2, 2, 3),
        g in arb_map(2, 2, 3),
        k in arb_map(2, 1, 2),
    ) {
        let left = f.compose(&g).unwrap().compose(&k).unwrap();
        let right = f.compose(&g.compose(&k).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let id = PolyMap::identity(2);
        prop_assert_eq!(f.compose(&id).unwrap(), f.clone());
        prop_assert_eq!(id.compose(&f).unwrap(), f);
    }

    #[test]
    fn jacobian_chain_rule(f in arb_map(3, 1, 3), g in arb_map(3, 1, 3)) {
        let composed = f.compose(&g).unwrap().jacobian();
        let outer = f.jacobian().substitute(g.components());
        let expected = outer.matmul(&g.jacobian()).unwrap();
        prop_assert_eq!(composed, expected);
    }

    #[test]
    fn hessian_matrix_is_symmetric(h in arb_poly(3, 3, 6)) {
        let m = hessian(&h);
        prop_assert_eq!(m.transpose(), m);
    }

    #[test]
    fn determinant_matches_cofactor_expansion(
        (n, entries) in (1..=4usize)
            .prop_flat_map(|n| (Just(n), prop::collection::vec(arb_poly(2, 2, 2), n * n))),
    ) {
        let m = PolyMatrix::from_fn(n, n, 2, |i, j| entries[i * n + j].clone());
        prop_assert_eq!(m.det().unwrap(), cofactor_det(&m));
    }

    #[test]
    fn gcd_divides_with_coprime_quotients(
        f in arb_poly(2, 3, 4),
        g in arb_poly(2, 3, 4),
        h in arb_poly(2, 2, 3),
    ) {
        prop_assume!(!f.is_zero() || !g.is_zero());
        let d = gcd(&f, &g);
        let qf = try_div_exact(&f, &d);
        let qg = try_div_exact(&g, &d);
        prop_assert!(qf.is_some() && qg.is_some());
        if !f.is_zero() && !g.is_zero() {
            prop_assert!(gcd(&qf.unwrap(), &qg.unwrap()).is_constant());
        }

        prop_assume!(!h.is_zero());
        let list = [f.mul(&h), g.mul(&h), h.clone()];
        let d = gcd_list(&list).unwrap();
        let quotients: Vec<Poly> =
            list.iter().map(|p| try_div_exact(p, &d).expect("gcd divides")).collect();
        prop_assert!(gcd_list(&quotients).unwrap().is_constant());
    }

    #[test]
    fn exact_division_recovers_factor(f in arb_poly(2, 2, 4), g in arb_poly(2, 2, 4)) {
        prop_assume!(!g.is_zero());
        prop_assert_eq!(try_div_exact(&f.mul(&g), &g), Some(f));
    }

    #[test]
    fn condition_flags_agree_on_arbitrary_maps(map in arb_map(3, 2, 3)) {
        let report = check_qt(&map).unwrap();
        prop_assert_eq!(report.cond_inverse, report.cond_deform);
        prop_assert_eq!(report.cond_deform, report.cond_jhh);
    }
}

fn known_rank_matrix(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    r: usize,
    arity: usize,
) -> PolyMatrix {
    let mut pivots: Vec<Vec<Poly>> = Vec::new();
    for i in 0..r {
        let mut row = vec![Poly::zero(arity); cols];
        for j in i..cols {
            row[j] = if j == i {
                Poly::one(arity).add(&Poly::var(arity, rng.gen_range(0..arity)))
            } else {
                corpus::random_poly(rng, arity, 2)
            };
        }
        pivots.push(row);
    }
    let mut data = pivots.clone();
    for _ in r..rows {
        let mut row = vec![Poly::zero(arity); cols];
        for pivot in &pivots {
            let c = rat_int(rng.gen_range(-2..=2));
            for j in 0..cols {
                row[j] = row[j].add(&pivot[j].scale(&c));
            }
        }
        data.push(row);
    }
    PolyMatrix::from_fn(rows, cols, arity, |i, j| data[i][j].clone())
}

#[test]
fn rank_modes_agree_on_known_ranks() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for case in 0..50 {
        let rows = 2 + case % 3;
        let cols = 2 + (case / 3) % 3;
        let r = case % (rows.min(cols) + 1);
        let arity = 2 + case % 2;
        let m = known_rank_matrix(&mut rng, rows, cols, r, arity);

        let certified = m.rank(RankMode::Certified, 0).unwrap();
        let randomized = m.rank(RankMode::Randomized, case as u64).unwrap();
        assert_eq!(certified.rank, r, "case {case}: certified rank");
        assert_eq!(randomized.rank, r, "case {case}: randomized rank");
        assert!(randomized.failure_bound.is_some());
    }
}

#[test]
fn invariance_matches_quasi_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for entry in corpus::seed_quasi_translations().unwrap() {
        let n = entry.qt.arity();
        for _ in 0..40 {
            let f = corpus::random_poly(&mut rng, n, 3);
            let nu = quasi_degree(&f, &entry.qt);
            let invariant = is_invariant(&f, &entry.qt).unwrap();
            assert_eq!(
                invariant,
                at_most_zero(nu),
                "{}: invariance must match a degree-zero deformation",
                entry.name
            );
            if let QuasiDegree::Finite(k) = nu {
                assert!(k <= f.degree().unwrap(), "{}: nu exceeds degree", entry.name);
            }
        }
    }
}

#[test]
fn iterate_matches_repeated_composition() {
    for entry in corpus::seed_quasi_translations().unwrap() {
        let xp = entry.qt.map().x_plus();
        let mut composed = PolyMap::identity(entry.qt.arity());
        for m in 0..=5u32 {
            assert_eq!(
                iterate(&entry.qt, m).unwrap(),
                composed,
                "{}: iterate disagrees at m = {m}",
                entry.name
            );
            composed = xp.compose(&composed).unwrap();
        }
    }
}

#[test]
fn conjugation_is_functorial() {
    let l = QMatrix::from_rows(vec![
        vec![rat_int(1), rat_int(2), rat_int(0)],
        vec![rat_int(0), rat_int(1), rat_int(0)],
        vec![rat_int(1), rat_int(0), rat_int(1)],
    ]);
    let m = QMatrix::from_rows(vec![
        vec![rat_int(1), rat_int(0), rat_int(0)],
        vec![rat_int(3), rat_int(1), rat_int(0)],
        vec![rat_int(0), rat_int(0), rat_int(1)],
    ]);
    let l_inv = l.inverse().unwrap();
    let m_inv = m.inverse().unwrap();
    let lm = l.mul(&m);
    let lm_inv = lm.inverse().unwrap();

    let mut tested = 0usize;
    for entry in corpus::seed_quasi_translations().unwrap() {
        if entry.qt.arity() != 3 {
            continue;
        }
        let step = conjugate(&entry.qt, &PolyMap::linear(&l), &PolyMap::linear(&l_inv)).unwrap();
        let two_steps =
            conjugate(&step, &PolyMap::linear(&m), &PolyMap::linear(&m_inv)).unwrap();
        let direct =
            conjugate(&entry.qt, &PolyMap::linear(&lm), &PolyMap::linear(&lm_inv)).unwrap();
        assert_eq!(two_steps.map(), direct.map(), "{}: functoriality", entry.name);

        let back = conjugate(&step, &PolyMap::linear(&l_inv), &PolyMap::linear(&l)).unwrap();
        assert_eq!(back.map(), entry.qt.map(), "{}: round trip", entry.name);
        tested += 1;
    }
    assert!(tested >= 3, "too few three-variable seeds: {tested}");
}

#[test]
fn homogeneous_search_returns_homogeneous_data() {
    let mut found = 0usize;
    for (name, h) in corpus::homogeneous_singular_hessians(3) {
        let grad = gradient(&h);
        let rel = match find_relation(&grad, 4, true).unwrap() {
            RelationSearch::Found(rel) => rel,
            _ => continue,
        };
        assert!(rel.r().homogeneous_degree().is_some(), "{name}: relation not homogeneous");
        let map = qt_from_relation(&h, &rel).unwrap();
        assert!(map_is_homogeneous(&map), "{name}: derived map not homogeneous");
        if rel.minimal() {
            assert!(!map.is_zero(), "{name}: minimal relation gave the zero map");
        }
        found += 1;
    }
    assert!(found >= 25, "too few relations found: {found}");
}

#[test]
fn thin_span_minimal_relation_is_linear() {
    let corpus_h = corpus::planar_singular_hessians(3)
        .into_iter()
        .chain(corpus::homogeneous_singular_hessians(3));
    let mut thin = 0usize;
    for (name, h) in corpus_h {
        let grad = gradient(&h);
        let rel = match find_relation(&grad, 4, false).unwrap() {
            RelationSearch::Found(rel) => rel,
            _ => continue,
        };
        if !rel.minimal() {
            continue;
        }
        let map = qt_from_relation(&h, &rel).unwrap();
        assert!(!map.is_zero(), "{name}: minimal relation gave the zero map");
        if image_span(&map).unwrap().dim <= 1 {
            assert_eq!(rel.degree(), 1, "{name}: thin span forces a linear relation");
            assert!(
                map.components().iter().all(Poly::is_constant),
                "{name}: thin span forces a constant map"
            );
            thin += 1;
        }
    }
    assert!(thin >= 25, "too few thin-span cases: {thin}");
}

#[test]
fn homogeneous_minimal_relation_span_is_never_two() {
    for (name, h) in corpus::homogeneous_singular_hessians(4) {
        let grad = gradient(&h);
        let rel = match find_relation(&grad, 4, true).unwrap() {
            RelationSearch::Found(rel) => rel,
            _ => continue,
        };
        if !rel.minimal() {
            continue;
        }
        let map = qt_from_relation(&h, &rel).unwrap();
        assert_ne!(image_span(&map).unwrap().dim, 2, "{name}: span of two is impossible");
    }
}

#[test]
fn span_bounds_in_small_dimensions() {
    for entry in corpus::small_dimension_corpus(21).unwrap() {
        let n = entry.qt.arity();
        let dim = image_span(entry.qt.map()).unwrap().dim;
        assert!(
            dim <= (n - 1).max(1),
            "{}: span {dim} too large for dimension {n}",
            entry.name
        );
    }
    for entry in corpus::homogeneous_dim4_corpus(22).unwrap() {
        let n = entry.qt.arity();
        let dim = image_span(entry.qt.map()).unwrap().dim;
        assert!(
            dim <= (n - 2).max(1),
            "{}: homogeneous span {dim} too large for dimension {n}",
            entry.name
        );
    }
}

#[test]
fn rank_one_normalized_support() {
    let members = corpus::quasi_translations(17)
        .unwrap()
        .into_iter()
        .chain(corpus::small_dimension_corpus(18).unwrap());
    let mut rank_one = 0usize;
    for entry in members {
        let rank = entry
            .qt
            .map()
            .jacobian()
            .rank(RankMode::Certified, 0)
            .unwrap()
            .rank;
        if rank != 1 {
            continue;
        }
        let nf = normalize_zeros(&entry.qt).unwrap();
        let n = entry.qt.arity();
        assert!(nf.s >= 1, "{}: rank one needs an annihilator", entry.name);
        for i in nf.s..n {
            for v in nf.s..n {
                assert!(
                    !nf.h_normalized.component(i).uses_var(v),
                    "{}: component {i} leaks variable {v}",
                    entry.name
                );
            }
        }
        rank_one += 1;
    }
    assert!(rank_one >= 20, "too few rank-one members: {rank_one}");
}

#[test]
fn homogeneous_rank_two_normalized_support() {
    let members = corpus::homogeneous_dim4_corpus(23)
        .unwrap()
        .into_iter()
        .chain(corpus::quasi_translations(24).unwrap());
    let mut rank_two = 0usize;
    for entry in members {
        if entry.qt.homogeneous_degree().is_none() {
            continue;
        }
        let rank = entry
            .qt
            .map()
            .jacobian()
            .rank(RankMode::Certified, 0)
            .unwrap()
            .rank;
        if rank != 2 {
            continue;
        }
        let nf = normalize_zeros(&entry.qt).unwrap();
        let n = entry.qt.arity();
        assert!(nf.s >= 2, "{}: rank two needs two annihilators", entry.name);
        let g = gcd_list(nf.h_normalized.components()).unwrap();
        for i in nf.s..n {
            let q = try_div_exact(nf.h_normalized.component(i), &g)
                .expect("gcd divides every component");
            for v in nf.s..n {
                assert!(
                    !q.uses_var(v),
                    "{}: stripped component {i} leaks variable {v}",
                    entry.name
                );
            }
        }
        rank_two += 1;
    }
    assert!(rank_two >= 3, "too few homogeneous rank-two members: {rank_two}");
}

#[test]
fn verified_translations_iterate_along_rays() {
    for entry in corpus::seed_quasi_translations().unwrap() {
        let n = entry.qt.arity();
        let h = entry.qt.map();
        for m in 0..=5i64 {
            let expected = PolyMap::identity(n).add(&h.scale(&rat_int(m)));
            assert_eq!(
                iterate(&entry.qt, m as u32).unwrap(),
                expected,
                "{}: iterate is not x + mH at m = {m}",
                entry.name
            );
        }
    }
}

#[test]
fn conjugated_quasi_translation_verifies() {
    let ex = corpus::chain_conjugation();
    let base = QuasiTranslation::verify(ex.chain.clone()).unwrap();
    let conj = conjugate(&base, &ex.forward, &ex.backward).unwrap();
    assert!(conj.report().is_qt());
    let back = conjugate(&conj, &ex.backward, &ex.forward).unwrap();
    assert_eq!(back.map(), base.map());
}
