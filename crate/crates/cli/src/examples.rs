//! Bundled worked examples, re-run end to end with exact checks.

use qtrans_core::corpus::{
    chain_conjugation, paired_differences_constant, paired_differences_polynomial,
    product_counterexample, squared_cubic,
};
use qtrans_core::gcd::try_div_exact;
use qtrans_core::hessian::{find_relation, image_span, qt_from_relation};
use qtrans_core::polymap::{gradient, hessian};
use qtrans_core::quasitrans::{check_qt, conjugate, is_invariant};
use qtrans_core::rat::rat_int;
use qtrans_core::{Poly, PolyMap, QuasiTranslation, Relation, RelationSearch, Result};

pub struct ExampleRun {
    pub name: &'static str,
    pub ok: bool,
    pub details: Vec<String>,
}

struct Checker {
    ok: bool,
    details: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Checker { ok: true, details: Vec::new() }
    }

    fn check(&mut self, label: &str, pass: bool) {
        self.details.push(format!("{label}: {}", if pass { "ok" } else { "FAIL" }));
        self.ok &= pass;
    }

    fn finish(self, name: &'static str) -> ExampleRun {
        ExampleRun { name, ok: self.ok, details: self.details }
    }
}

pub fn run_all() -> Result<Vec<ExampleRun>> {
    Ok(vec![
        squared_cubic_run()?,
        paired_differences_run()?,
        conjugation_run()?,
        counterexample_run()?,
    ])
}

fn squared_cubic_run() -> Result<ExampleRun> {
    let mut c = Checker::new();
    let ex = squared_cubic();
    let grad = gradient(&ex.h);
    match find_relation(&grad, 4, true)? {
        RelationSearch::Found(rel) => {
            c.check("gradient relation has degree 2", rel.degree() == 2);
            c.check("relation spans the line of y3*y5 - y4^2", *rel.r() == ex.relation);
            let map = qt_from_relation(&ex.h, &rel)?;
            c.check("derived map equals 2p*(0; 0; x2^2; -2*x1*x2; x1^2)", map == ex.map);
            c.check("derived map is a quasi-translation", check_qt(&map)?.is_qt());
            let qt = QuasiTranslation::verify(map)?;
            for f in &ex.invariants {
                c.check(&format!("invariant: {f}"), is_invariant(f, &qt)?);
            }
        }
        _ => c.check("gradient relation has degree 2", false),
    }
    Ok(c.finish("squared cubic in five variables"))
}

fn paired_differences_run() -> Result<ExampleRun> {
    let mut c = Checker::new();

    let constant = paired_differences_constant();
    let h = constant.h.clone().expect("constant instance carries h");
    c.check(
        "constant case: Hessian annihilates the map",
        hessian(&h).mul_map(&constant.map)?.is_zero(),
    );
    match Relation::new(constant.relation.clone().expect("pinned relation"), constant.g.clone()) {
        Ok(rel) => {
            let derived = qt_from_relation(&h, &rel)?;
            c.check(
                "constant case: relation rebuilds 4H",
                derived == constant.map.scale(&rat_int(4)),
            );
        }
        Err(_) => c.check("constant case: relation annihilates the gradient", false),
    }
    c.check("constant case: quasi-translation", check_qt(&constant.map)?.is_qt());

    let poly = paired_differences_polynomial();
    match Relation::new(poly.relation_lifted.clone(), poly.target_lifted.clone()) {
        Ok(_) => c.check("polynomial case: lifted relation annihilates the lifted target", true),
        Err(_) => c.check("polynomial case: lifted relation annihilates the lifted target", false),
    }
    let scale = poly.a.mul(&poly.b).scale(&rat_int(4));
    let mut partials_match = true;
    for i in 0..6 {
        let partial =
            poly.relation_lifted.derive(i).substitute(poly.target_lifted.components());
        partials_match &= try_div_exact(&partial, &scale).as_ref() == Some(poly.map.component(i));
    }
    c.check("polynomial case: partials equal 4ab times the map", partials_match);
    c.check(
        "polynomial case: invariant Jacobian annihilates the map",
        poly.g.jacobian().mul_map(&poly.map)?.is_zero(),
    );
    c.check("polynomial case: quasi-translation", check_qt(&poly.map)?.is_qt());
    c.check("polynomial case: image spans all six coordinates", image_span(&poly.map)?.dim == 6);
    Ok(c.finish("paired squared differences in six variables"))
}

fn conjugation_run() -> Result<ExampleRun> {
    let mut c = Checker::new();
    let ex = chain_conjugation();
    let base = QuasiTranslation::verify(ex.chain.clone())?;
    let conj = conjugate(&base, &ex.forward, &ex.backward)?;
    c.check("conjugated map matches the pinned form", *conj.map() == ex.conjugated);
    c.check("conjugated map is a quasi-translation", conj.report().is_qt());
    c.check("image spans all four coordinates", image_span(conj.map())?.dim == 4);
    Ok(c.finish("power chain conjugated by a triangular automorphism"))
}

fn counterexample_run() -> Result<ExampleRun> {
    let mut c = Checker::new();
    let ex = product_counterexample();
    let grad = gradient(&ex.h);
    match find_relation(&grad, 4, false)? {
        RelationSearch::Found(rel) => {
            c.check("minimal relation has degree 1", rel.degree() == 1 && rel.minimal());
            let map = qt_from_relation(&ex.h, &rel)?;
            c.check(
                "minimal relation yields a constant translation",
                !map.is_zero() && map.components().iter().all(Poly::is_constant),
            );
        }
        _ => c.check("minimal relation has degree 1", false),
    }
    match Relation::new(ex.nonminimal_relation.clone(), grad) {
        Ok(rel) => {
            let map = qt_from_relation(&ex.h, &rel)?;
            let expected = PolyMap::new(vec![
                Poly::var(4, 3),
                Poly::var(4, 2),
                Poly::zero(4),
                Poly::zero(4),
            ]);
            c.check("non-minimal relation yields the coordinate swap", map == expected);
            c.check("swap image has dimension two", image_span(&map)?.dim == 2);
        }
        Err(_) => c.check("non-minimal relation annihilates the gradient", false),
    }
    Ok(c.finish("product of two variables, where minimal degree matters"))
}
