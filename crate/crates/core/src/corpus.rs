//! Deterministic, seeded generators of quasi-translations, of maps that fail
//! the quasi-translation test, and of polynomials with singular Hessian
//! matrices, together with the fixed worked examples shared by the
//! verification suite and the command-line example runner.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::monomial::monomials_of_degree;
use crate::parser::parse_x;
use crate::poly::Poly;
use crate::polymap::PolyMap;
use crate::quasitrans::{check_qt, homogenize, QuasiTranslation};
use crate::rat::rat_int;

/// A generated quasi-translation together with its provenance label and, when
/// the construction multiplied by an invariant, that factor.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub qt: QuasiTranslation,
    /// Invariant the base map was multiplied by, if any.
    pub gcd_factor: Option<Poly>,
}

/// Fixed base map with a list of known invariants usable as multipliers.
struct Seed {
    name: &'static str,
    map: PolyMap,
    invariants: Vec<Poly>,
    /// Invariants that are homogeneous, for degree-preserving constructions.
    homogeneous_invariants: Vec<Poly>,
}

fn p(text: &str, arity: usize) -> Poly {
    parse_x(text, arity).expect("fixed corpus text parses")
}

fn pm(texts: &[&str], arity: usize) -> PolyMap {
    PolyMap::new(texts.iter().map(|t| p(t, arity)).collect())
}

fn seed_pool() -> Vec<Seed> {
    vec![
        Seed {
            name: "zero3",
            map: pm(&["0", "0", "0"], 3),
            invariants: vec![],
            homogeneous_invariants: vec![],
        },
        Seed {
            name: "translation3",
            map: pm(&["1", "2", "3"], 3),
            invariants: vec![p("2*x1 - x2", 3), p("3*x2 - 2*x3", 3)],
            homogeneous_invariants: vec![p("2*x1 - x2", 3)],
        },
        Seed {
            name: "chain2",
            map: pm(&["0", "x1^2"], 2),
            invariants: vec![p("x1", 2)],
            homogeneous_invariants: vec![p("x1", 2)],
        },
        Seed {
            name: "chain3",
            map: pm(&["0", "x1", "x1^2"], 3),
            invariants: vec![p("x1", 3)],
            homogeneous_invariants: vec![p("x1", 3)],
        },
        Seed {
            name: "chain4",
            map: pm(&["0", "x1", "x1^2", "x1^3"], 4),
            invariants: vec![p("x1", 4), p("x1^2 + 1", 4)],
            homogeneous_invariants: vec![p("x1", 4)],
        },
        Seed {
            name: "two_tail3",
            map: pm(&["0", "x1*x2 - x3", "x1^2*x2 - x1*x3"], 3),
            invariants: vec![p("x1", 3), p("x1*x2 - x3", 3)],
            homogeneous_invariants: vec![p("x1", 3)],
        },
        Seed {
            name: "pair_blocks4",
            map: pm(&["0", "x1", "0", "x3"], 4),
            invariants: vec![p("x1", 4), p("x3", 4), p("x1 + x3", 4)],
            homogeneous_invariants: vec![p("x1", 4), p("x3", 4)],
        },
        Seed {
            name: "bilinear_tail4",
            map: pm(&["0", "0", "x1*x2*x3 - x2^2*x4", "x1^2*x3 - x1*x2*x4"], 4),
            invariants: vec![p("x1", 4), p("x2", 4), p("x1*x3 - x2*x4", 4)],
            homogeneous_invariants: vec![p("x1", 4), p("x2", 4), p("x1*x3 - x2*x4", 4)],
        },
        Seed {
            name: "cofactor5",
            map: pm(&["0", "0", "x2^2", "-2*x1*x2", "x1^2"], 5),
            invariants: vec![
                p("x1", 5),
                p("x2", 5),
                p("x1^2*x3 + x1*x2*x4 + x2^2*x5", 5),
            ],
            homogeneous_invariants: vec![p("x1", 5), p("x2", 5)],
        },
        Seed {
            name: "rank_one3",
            map: pm(&["0", "x1^2", "0"], 3),
            invariants: vec![p("x1", 3), p("x3", 3)],
            homogeneous_invariants: vec![p("x1", 3), p("x3", 3)],
        },
        Seed {
            name: "constant_pair2",
            map: pm(&["2", "3"], 2),
            invariants: vec![p("3*x1 - 2*x2", 2)],
            homogeneous_invariants: vec![p("3*x1 - 2*x2", 2)],
        },
        Seed {
            name: "quadratic_tail3",
            map: pm(&["0", "x3^2", "0"], 3),
            invariants: vec![p("x1", 3), p("x3", 3)],
            homogeneous_invariants: vec![p("x1", 3), p("x3", 3)],
        },
    ]
}

/// The fixed base quasi-translations of the generator, without transforms.
pub fn seed_quasi_translations() -> Result<Vec<CorpusEntry>> {
    seed_pool()
        .into_iter()
        .map(|s| {
            Ok(CorpusEntry {
                name: s.name.to_string(),
                qt: QuasiTranslation::verify(s.map)?,
                gcd_factor: None,
            })
        })
        .collect()
}

/// Invertible integer matrix built from a few elementary row operations.
fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> QMatrix {
    let mut m = QMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..rng.gen_range(2..=4usize) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        if rng.gen_bool(0.3) {
            for c in 0..n {
                let tmp = m.get(i, c).clone();
                m.set(i, c, m.get(j, c).clone());
                m.set(j, c, tmp);
            }
        } else {
            let sign = rat_int(if rng.gen_bool(0.5) { 1 } else { -1 });
            for c in 0..n {
                let v = m.get(i, c) + &(m.get(j, c) * &sign);
                m.set(i, c, v);
            }
        }
    }
    m
}

/// The conjugate `T^{-1} H(Tx)`; maps `x + H` to `T^{-1}(x + H)(Tx)`.
fn conjugate_linear(map: &PolyMap, t: &QMatrix) -> Result<PolyMap> {
    let t_inv = t.inverse().ok_or(Error::SingularMatrix)?;
    PolyMap::linear(&t_inv).compose(&map.compose(&PolyMap::linear(t))?)
}

/// Random polynomial of degree at most `max_degree`, never zero.
pub fn random_poly(rng: &mut ChaCha8Rng, arity: usize, max_degree: u32) -> Poly {
    loop {
        let mut acc = Poly::zero(arity);
        for d in 0..=max_degree {
            for m in monomials_of_degree(arity, d) {
                if rng.gen_bool(0.35) {
                    let c = rat_int(*[-3, -2, -1, 1, 2, 3].get(rng.gen_range(0..6)).unwrap());
                    acc = acc.add(&Poly::term(m.clone(), c));
                }
            }
        }
        if !acc.is_zero() {
            return acc;
        }
    }
}

/// Random homogeneous polynomial of the exact degree, never zero.
fn random_homogeneous(rng: &mut ChaCha8Rng, arity: usize, degree: u32) -> Poly {
    loop {
        let mut acc = Poly::zero(arity);
        for m in monomials_of_degree(arity, degree) {
            if rng.gen_bool(0.5) {
                let c = rat_int(*[-3, -2, -1, 1, 2, 3].get(rng.gen_range(0..6)).unwrap());
                acc = acc.add(&Poly::term(m.clone(), c));
            }
        }
        if !acc.is_zero() {
            return acc;
        }
    }
}

/// One transformed corpus entry built from a seed.
fn transform_entry(
    rng: &mut ChaCha8Rng,
    index: usize,
    seed: &Seed,
    homogeneous_only: bool,
    max_degree: u32,
    allow_lift: bool,
) -> Result<CorpusEntry> {
    let mut map = seed.map.clone();
    let mut name = format!("{index:03}:{}", seed.name);
    let mut gcd_factor = None;

    let invariants =
        if homogeneous_only { &seed.homogeneous_invariants } else { &seed.invariants };
    if !invariants.is_empty() && rng.gen_bool(0.34) {
        let f = &invariants[rng.gen_range(0..invariants.len())];
        let fits = map
            .degree()
            .map_or(false, |d| d + f.degree().unwrap_or(0) <= max_degree);
        if fits {
            map = map.mul_poly(f);
            gcd_factor = Some(f.clone());
            name.push_str("*inv");
        }
    }

    if allow_lift && map.arity() <= 4 && rng.gen_bool(0.25) {
        if let Some(d) = map.degree() {
            let lifted = homogenize(&QuasiTranslation::verify(map)?, d)?;
            map = lifted.map().clone();
            name.push_str("^lift");
        }
    }

    if rng.gen_bool(0.5) {
        let t = random_unimodular(rng, map.arity());
        map = conjugate_linear(&map, &t)?;
        name.push_str("~conj");
    }

    Ok(CorpusEntry { name, qt: QuasiTranslation::verify(map)?, gcd_factor })
}

/// Exactly 100 quasi-translations in at most 5 variables, derived from the
/// seed pool by invariant multiplication, homogenization and linear
/// conjugation. Deterministic in the seed.
pub fn quasi_translations(seed: u64) -> Result<Vec<CorpusEntry>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = seed_pool();
    (0..100)
        .map(|i| transform_entry(&mut rng, i, &pool[i % pool.len()], false, 6, true))
        .collect()
}

/// Exactly 50 quasi-translations in at most 3 variables.
pub fn small_dimension_corpus(seed: u64) -> Result<Vec<CorpusEntry>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<Seed> =
        seed_pool().into_iter().filter(|s| s.map.arity() <= 3).collect();
    (0..50)
        .map(|i| {
            let s = &pool[i % pool.len()];
            // Lifting is allowed only from two variables, so the result stays
            // within three.
            let allow_lift = s.map.arity() <= 2;
            transform_entry(&mut rng, i, s, false, 5, allow_lift)
        })
        .collect()
}

/// Exactly 50 homogeneous quasi-translations in 4 variables (including the
/// zero map), built from homogeneous seeds and lifts of 3-variable seeds.
pub fn homogeneous_dim4_corpus(seed: u64) -> Result<Vec<CorpusEntry>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<Seed> = seed_pool()
        .into_iter()
        .filter(|s| {
            s.map.arity() == 4 && (s.map.is_zero() || s.map.degree().is_some())
        })
        .filter(|s| {
            let degrees: Vec<u32> = s
                .map
                .components()
                .iter()
                .filter_map(|c| c.homogeneous_degree())
                .collect();
            degrees.windows(2).all(|w| w[0] == w[1])
                && s.map.components().iter().all(|c| {
                    c.is_zero() || c.homogeneous_degree().is_some()
                })
        })
        .collect();
    for s in seed_pool() {
        if s.map.arity() == 3 && !s.map.is_zero() {
            let d = s.map.degree().unwrap();
            let lifted = homogenize(&QuasiTranslation::verify(s.map)?, d)?;
            // The appended variable is always an invariant of the lift.
            pool.push(Seed {
                name: "lift4",
                map: lifted.map().clone(),
                invariants: vec![],
                homogeneous_invariants: vec![p("x4", 4)],
            });
        }
    }
    pool.push(Seed {
        name: "zero4",
        map: PolyMap::new(vec![Poly::zero(4); 4]),
        invariants: vec![],
        homogeneous_invariants: vec![],
    });
    pool.push(Seed {
        name: "single4",
        map: pm(&["0", "0", "0", "x1^2"], 4),
        invariants: vec![],
        homogeneous_invariants: vec![p("x1", 4), p("x2", 4)],
    });
    (0..50)
        .map(|i| transform_entry(&mut rng, i, &pool[i % pool.len()], true, 5, false))
        .collect()
}

/// Exactly 100 square maps that fail the quasi-translation test, obtained by
/// mutating seed maps with random extra terms (plus a few fixed failures).
pub fn non_examples(seed: u64) -> Result<Vec<(String, PolyMap)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(String, PolyMap)> = vec![
        ("identity4".into(), PolyMap::identity(4)),
        ("swap2".into(), pm(&["x2", "x1"], 2)),
        ("self_square2".into(), pm(&["x1^2", "0"], 2)),
        ("feedback2".into(), pm(&["x2", "x1^2"], 2)),
    ];
    for (name, map) in &out {
        if check_qt(map)?.is_qt() {
            return Err(Error::Internal(format!("fixed non-example {name} is a quasi-translation")));
        }
    }
    let pool = seed_pool();
    let mut i = 0usize;
    while out.len() < 100 {
        let base = &pool[i % pool.len()];
        i += 1;
        let n = base.map.arity();
        let mut found = None;
        for _ in 0..50 {
            let j = rng.gen_range(0..n);
            let extra = random_poly(&mut rng, n, 2);
            let mut components = base.map.components().to_vec();
            components[j] = components[j].add(&extra);
            let candidate = PolyMap::new(components);
            if !check_qt(&candidate)?.is_qt() {
                found = Some(candidate);
                break;
            }
        }
        let map = found.unwrap_or_else(|| PolyMap::identity(n));
        out.push((format!("{:03}:{}+noise", out.len(), base.name), map));
    }
    Ok(out)
}

/// Exactly 50 nonzero homogeneous polynomials in 2 to 4 variables whose
/// Hessian is singular: each is a form evaluated at `n - 1` linear forms.
pub fn homogeneous_singular_hessians(seed: u64) -> Vec<(String, Poly)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..50)
        .map(|i| {
            let n = 2 + i % 3;
            let d = rng.gen_range(2..=3u32);
            loop {
                let f = random_homogeneous(&mut rng, n - 1, d);
                let forms: Vec<Poly> =
                    (0..n - 1).map(|_| random_linear_form(&mut rng, n)).collect();
                let h = f.substitute(&forms);
                if !h.is_zero() {
                    return (format!("{i:02}:hom{n}d{d}"), h);
                }
            }
        })
        .collect()
}

/// Exactly 50 inhomogeneous polynomials in 2 variables with singular Hessian
/// and no terms of degree below two: univariate polynomials without constant
/// or linear part, evaluated at a linear form.
pub fn planar_singular_hessians(seed: u64) -> Vec<(String, Poly)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..50)
        .map(|i| {
            loop {
                let top = rng.gen_range(2..=4u32);
                let mut f = Poly::zero(1);
                for d in 2..=top {
                    if d == top || rng.gen_bool(0.5) {
                        let c = rat_int(*[-3, -2, -1, 1, 2, 3].get(rng.gen_range(0..6)).unwrap());
                        f = f.add(&Poly::var(1, 0).pow(d).scale(&c));
                    }
                }
                let form = random_linear_form(&mut rng, 2);
                let h = f.substitute(&[form]);
                if !h.is_zero() && h.degree() == Some(top) {
                    return (format!("{i:02}:planar_d{top}"), h);
                }
            }
        })
        .collect()
}

fn random_linear_form(rng: &mut ChaCha8Rng, arity: usize) -> Poly {
    loop {
        let mut acc = Poly::zero(arity);
        for v in 0..arity {
            let c = rng.gen_range(-2..=2i64);
            if c != 0 {
                acc = acc.add(&Poly::var(arity, v).scale(&rat_int(c)));
            }
        }
        if !acc.is_zero() {
            return acc;
        }
    }
}

/// Cubic form `p = x1^2 x3 + x1 x2 x4 + x2^2 x5` whose squared version has a
/// gradient satisfying the quadratic relation `y3 y5 - y4^2`, with the
/// resulting quasi-translation `2p (0, 0, x2^2, -2 x1 x2, x1^2)`.
pub struct SquaredCubic {
    pub p: Poly,
    /// `h = p^2`.
    pub h: Poly,
    /// Quadratic relation satisfied by the gradient of `h`.
    pub relation: Poly,
    /// Homogeneous cofactor map `(0, 0, x2^2, -2 x1 x2, x1^2)`.
    pub cofactor_map: PolyMap,
    /// The full map `2p * cofactor_map`.
    pub map: PolyMap,
    /// Invariants of `x + map`.
    pub invariants: Vec<Poly>,
}

pub fn squared_cubic() -> SquaredCubic {
    let p5 = p("x1^2*x3 + x1*x2*x4 + x2^2*x5", 5);
    let cofactor_map = pm(&["0", "0", "x2^2", "-2*x1*x2", "x1^2"], 5);
    SquaredCubic {
        h: p5.mul(&p5),
        relation: p("x3*x5 - x4^2", 5),
        map: cofactor_map.mul_poly(&p5.scale(&rat_int(2))),
        cofactor_map,
        invariants: vec![p("x1", 5), p("x2", 5), p5.clone()],
        p: p5,
    }
}

/// Maps built from three paired differences `w_i = a x_{2i-1} - b x_{2i}` in
/// six variables: a gradient-like map `g` annihilated by a quadratic
/// relation, and the quasi-translation `(b w_1, a w_1, b w_2, a w_2, b w_3,
/// a w_3)`.
pub struct PairedDifferences {
    pub a: Poly,
    pub b: Poly,
    /// `sum w_i^2` when `a` and `b` are constants; then `g` is its gradient.
    pub h: Option<Poly>,
    /// `(2a w_1, -2b w_1, ..., 2a w_3, -2b w_3)`.
    pub g: PolyMap,
    /// The quasi-translation part `(b w_1, a w_1, ..., b w_3, a w_3)`.
    pub map: PolyMap,
    /// Relation in six variables annihilating `g`; present only when `a` and
    /// `b` are constants.
    pub relation: Option<Poly>,
    /// Relation in eight variables (the last two standing for `a` and `b`)
    /// annihilating `target_lifted`.
    pub relation_lifted: Poly,
    /// The eight-component target `(g_1, ..., g_6, a, b)`.
    pub target_lifted: PolyMap,
}

fn paired_differences(a: Poly, b: Poly) -> PairedDifferences {
    assert_eq!(a.arity(), 6, "coefficient polynomials live in six variables");
    assert_eq!(b.arity(), 6, "coefficient polynomials live in six variables");
    let mut g = Vec::with_capacity(6);
    let mut map = Vec::with_capacity(6);
    let mut h_sum = Poly::zero(6);
    for k in 0..3 {
        let omega =
            a.mul(&Poly::var(6, 2 * k)).sub(&b.mul(&Poly::var(6, 2 * k + 1)));
        g.push(a.mul(&omega).scale(&rat_int(2)));
        g.push(b.mul(&omega).scale(&rat_int(-2)));
        map.push(b.mul(&omega));
        map.push(a.mul(&omega));
        h_sum = h_sum.add(&omega.mul(&omega));
    }
    let constant = a.is_constant() && b.is_constant();
    let relation = constant.then(|| {
        let a0 = a.eval(&vec![rat_int(0); 6]);
        let b0 = b.eval(&vec![rat_int(0); 6]);
        let mut r = Poly::zero(6);
        for k in 0..3 {
            r = r.add(&Poly::var(6, 2 * k).pow(2).scale(&(&b0 * &b0)));
            r = r.sub(&Poly::var(6, 2 * k + 1).pow(2).scale(&(&a0 * &a0)));
        }
        r
    });
    let mut relation_lifted = Poly::zero(8);
    for k in 0..3 {
        let y_odd = Poly::var(8, 2 * k).pow(2);
        let y_even = Poly::var(8, 2 * k + 1).pow(2);
        relation_lifted =
            relation_lifted.add(&Poly::var(8, 7).pow(2).mul(&y_odd));
        relation_lifted =
            relation_lifted.sub(&Poly::var(8, 6).pow(2).mul(&y_even));
    }
    let mut target = g.clone();
    target.push(a.clone());
    target.push(b.clone());
    PairedDifferences {
        h: constant.then(|| h_sum),
        g: PolyMap::new(g),
        map: PolyMap::new(map),
        relation,
        relation_lifted,
        target_lifted: PolyMap::new(target),
        a,
        b,
    }
}

/// The paired-differences example with constant coefficients `a = b = 1`.
pub fn paired_differences_constant() -> PairedDifferences {
    paired_differences(Poly::one(6), Poly::one(6))
}

/// The paired-differences example with `a = x1 x4 - x2 x3` and
/// `b = x3 x6 - x4 x5`.
pub fn paired_differences_polynomial() -> PairedDifferences {
    paired_differences(p("x1*x4 - x2*x3", 6), p("x3*x6 - x4*x5", 6))
}

/// Conjugation of the chain map `(0, x1, x1^2, x1^3)` by the elementary
/// automorphism `F = (f, x2, x3, x4)` with `f = x1 + x2 x4 - x3^2`.
pub struct ChainConjugation {
    pub f: Poly,
    /// `F = (f, x2, x3, x4)`.
    pub forward: PolyMap,
    /// Its inverse `(2 x1 - f, x2, x3, x4)`.
    pub backward: PolyMap,
    /// The chain map `(0, x1, x1^2, x1^3)`.
    pub chain: PolyMap,
    /// Expected conjugate `(-(f^3 x2 - 2 f^2 x3 + f x4), f, f^2, f^3)`.
    pub conjugated: PolyMap,
}

pub fn chain_conjugation() -> ChainConjugation {
    let f = p("x1 + x2*x4 - x3^2", 4);
    let x2 = Poly::var(4, 1);
    let x3 = Poly::var(4, 2);
    let x4 = Poly::var(4, 3);
    let first = f
        .pow(3)
        .mul(&x2)
        .sub(&f.pow(2).mul(&x3).scale(&rat_int(2)))
        .add(&f.mul(&x4))
        .neg();
    ChainConjugation {
        forward: PolyMap::new(vec![f.clone(), x2.clone(), x3.clone(), x4.clone()]),
        backward: PolyMap::new(vec![
            Poly::var(4, 0).scale(&rat_int(2)).sub(&f),
            x2,
            x3,
            x4,
        ]),
        chain: pm(&["0", "x1", "x1^2", "x1^3"], 4),
        conjugated: PolyMap::new(vec![first, f.pow(1), f.pow(2), f.pow(3)]),
        f,
    }
}

/// Product polynomial `h = x3 x4` whose gradient admits the degree-1 relation
/// as the minimal one, together with the non-minimal quadratic relation
/// `y1 y3 + y2 y4` used to contrast the two.
pub struct ProductCounterexample {
    pub h: Poly,
    pub nonminimal_relation: Poly,
}

pub fn product_counterexample() -> ProductCounterexample {
    ProductCounterexample {
        h: p("x3*x4", 4),
        nonminimal_relation: p("x1*x3 + x2*x4", 4),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hessian::image_span;
    use crate::polymap::{gradient, hessian};

    #[test]
    fn seed_pool_members_are_quasi_translations() {
        let seeds = seed_quasi_translations().unwrap();
        assert_eq!(seeds.len(), 12);
    }

    #[test]
    fn generator_is_deterministic_and_complete() {
        let a = quasi_translations(7).unwrap();
        let b = quasi_translations(7).unwrap();
        assert_eq!(a.len(), 100);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.name, y.name);
            assert_eq!(x.qt.map(), y.qt.map());
            assert_eq!(x.gcd_factor, y.gcd_factor);
        }
        let c = quasi_translations(8).unwrap();
        assert!(a.iter().zip(&c).any(|(x, y)| x.qt.map() != y.qt.map()));
    }

    #[test]
    fn generated_maps_stay_within_the_size_caps() {
        for entry in quasi_translations(0).unwrap() {
            assert!(entry.qt.arity() <= 5, "{} too wide", entry.name);
            assert!(entry.qt.map().degree().unwrap_or(0) <= 6, "{} too deep", entry.name);
        }
    }

    #[test]
    fn small_corpus_respects_dimension_gates() {
        for entry in small_dimension_corpus(1).unwrap() {
            assert!(entry.qt.arity() <= 3, "{}", entry.name);
        }
        for entry in homogeneous_dim4_corpus(1).unwrap() {
            assert_eq!(entry.qt.arity(), 4, "{}", entry.name);
            assert!(
                entry.qt.map().is_zero() || entry.qt.homogeneous_degree().is_some(),
                "{}",
                entry.name
            );
        }
    }

    #[test]
    fn non_examples_all_fail_the_test() {
        let maps = non_examples(3).unwrap();
        assert_eq!(maps.len(), 100);
        for (name, map) in maps {
            assert!(!check_qt(&map).unwrap().is_qt(), "{name}");
        }
    }

    #[test]
    fn singular_hessian_polynomials_have_zero_determinant() {
        for (name, h) in homogeneous_singular_hessians(5) {
            assert!(h.homogeneous_degree().is_some(), "{name}");
            assert!(hessian(&h).det().unwrap().is_zero(), "{name}");
        }
        for (name, h) in planar_singular_hessians(5) {
            assert!(hessian(&h).det().unwrap().is_zero(), "{name}");
            assert!(
                h.terms().iter().all(|(m, _)| m.degree() >= 2),
                "{name} has low-order terms"
            );
        }
    }

    #[test]
    fn squared_cubic_pieces_fit_together() {
        let ex = squared_cubic();
        assert_eq!(ex.h, ex.p.mul(&ex.p));
        assert_eq!(ex.map, ex.cofactor_map.mul_poly(&ex.p.scale(&rat_int(2))));
        assert!(ex.relation.substitute(gradient(&ex.h).components()).is_zero());
        assert!(check_qt(&ex.map).unwrap().is_qt());
        assert!(check_qt(&ex.cofactor_map).unwrap().is_qt());
    }

    #[test]
    fn paired_differences_satisfy_their_relations() {
        for ex in [paired_differences_constant(), paired_differences_polynomial()] {
            assert!(ex
                .relation_lifted
                .substitute(ex.target_lifted.components())
                .is_zero());
            if let Some(h) = &ex.h {
                assert_eq!(gradient(h), ex.g);
                let r = ex.relation.as_ref().unwrap();
                assert!(r.substitute(ex.g.components()).is_zero());
            }
            assert!(check_qt(&ex.map).unwrap().is_qt());
        }
    }

    #[test]
    fn constant_paired_instance_has_three_dimensional_span() {
        let ex = paired_differences_constant();
        assert_eq!(image_span(&ex.map).unwrap().dim, 3);
    }

    #[test]
    fn chain_conjugation_matches_the_composed_maps() {
        let ex = chain_conjugation();
        // backward(forward) = identity.
        assert!(ex.backward.compose(&ex.forward).unwrap().is_identity());
        let x_plus_h = ex.chain.x_plus();
        let composed = ex
            .backward
            .compose(&x_plus_h.compose(&ex.forward).unwrap())
            .unwrap();
        let conj = composed.sub(&PolyMap::identity(4));
        assert_eq!(conj, ex.conjugated);
    }
}
