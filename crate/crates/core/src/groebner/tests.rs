use proptest::prelude::*;

use super::*;
use crate::field::Field;
use crate::poly::MonomialOrder;

fn q(vars: &[&str]) -> Ring {
    Ring::grevlex(Field::Rationals, vars).unwrap()
}

fn strs(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn module_equal(ring: &Ring, rank: usize, a: &[FreeVector], b: &[FreeVector]) -> bool {
    let ga = GroebnerBasis::module(ring, rank, a, TermOrder::Top, false).unwrap();
    let gb = GroebnerBasis::module(ring, rank, b, TermOrder::Top, false).unwrap();
    b.iter().all(|v| ga.contains_vec(v)) && a.iter().all(|v| gb.contains_vec(v))
}

#[test]
fn already_reduced() {
    let r = q(&["x", "y"]);
    let g = buchberger(&r, &r.parse_all(&["y", "x"]).unwrap()).unwrap();
    assert_eq!(strs(&g), ["x", "y"]);
}

#[test]
fn lex_example() {
    let r = Ring::new(Field::Rationals, vec!["x".into(), "y".into()], MonomialOrder::Lex).unwrap();
    let g = buchberger(&r, &r.parse_all(&["x*y - 1", "y^2 - 1"]).unwrap()).unwrap();
    assert_eq!(strs(&g), ["x - y", "y^2 - 1"]);
}

#[test]
fn cusp_with_x() {
    let r = q(&["x", "y"]);
    let g = buchberger(&r, &r.parse_all(&["y^2 - x^3", "x"]).unwrap()).unwrap();
    assert_eq!(strs(&g), ["y^2", "x"]);
}

#[test]
fn unit_ideal() {
    let r = q(&["x", "y"]);
    let g = GroebnerBasis::ideal(&r, &r.parse_all(&["x*y - 1", "x"]).unwrap()).unwrap();
    assert_eq!(strs(&g.polys()), ["1"]);
    assert!(g.is_everything());
}

#[test]
fn normal_forms() {
    let r = q(&["x", "y"]);
    let x = r.parse("x").unwrap();
    assert!(normal_form(&r.parse("x^2").unwrap(), std::slice::from_ref(&x)).unwrap().is_zero());
    assert_eq!(normal_form(&r.parse("x^2 + y").unwrap(), &[x]).unwrap().to_string(), "y");
    let cusp = r.parse("y^2 - x^3").unwrap();
    let g = buchberger(&r, std::slice::from_ref(&cusp)).unwrap();
    assert!(normal_form(&cusp, &g).unwrap().is_zero());
}

#[test]
fn koszul_syzygy() {
    let r = q(&["x", "y"]);
    let syz = syzygies(&r, &r.parse_all(&["x", "y"]).unwrap()).unwrap();
    let expected = vec![FreeVector::from_polys(&r, r.parse_all(&["y", "-x"]).unwrap())];
    assert!(module_equal(&r, 2, &syz, &expected));
}

#[test]
fn syzygy_of_redundant_pair() {
    let r = q(&["x"]);
    let syz = syzygies(&r, &r.parse_all(&["x^2", "x"]).unwrap()).unwrap();
    let g = GroebnerBasis::module(&r, 2, &syz, TermOrder::Top, false).unwrap();
    assert!(g.contains_vec(&FreeVector::from_polys(&r, r.parse_all(&["1", "-x"]).unwrap())));
}

#[test]
fn hilbert_burch_generic_two_by_three() {
    let r = Ring::grevlex(Field::prime(101).unwrap(), &["a", "b", "c", "d", "e", "f"]).unwrap();
    // rows (a b c), (d e f); signed maximal minors
    let minors = r.parse_all(&["b*f - c*e", "-(a*f - c*d)", "a*e - b*d"]).unwrap();
    let syz = syzygies(&r, &minors).unwrap();
    for s in &syz {
        assert!(s.dot(&minors).unwrap().is_zero());
    }
    let rows = vec![
        FreeVector::from_polys(&r, r.parse_all(&["a", "b", "c"]).unwrap()),
        FreeVector::from_polys(&r, r.parse_all(&["d", "e", "f"]).unwrap()),
    ];
    for row in &rows {
        assert!(row.dot(&minors).unwrap().is_zero());
    }
    assert!(module_equal(&r, 3, &syz, &rows));
}

#[test]
fn lift_recovers_cofactors() {
    let r = q(&["x", "y", "z"]);
    let gens = r.parse_all(&["x*y - z", "y^2 - x", "z^2"]).unwrap();
    let gb = GroebnerBasis::ideal_tracked(&r, &gens).unwrap();
    let f = r.parse("x*y^3 - y*z + x^2*z^2").unwrap();
    let f = &(&f - &r.parse("y*z").unwrap()) + &r.parse("y*z").unwrap();
    if let Some(c) = gb.lift(&f).unwrap() {
        let back = FreeVector::from_polys(&r, c).dot(&gens).unwrap();
        assert_eq!(back, f);
    }
    let member = &(&r.parse("x + z").unwrap() * &gens[0]) + &(&r.parse("y").unwrap() * &gens[1]);
    let c = gb.lift(&member).unwrap().expect("member");
    assert_eq!(FreeVector::from_polys(&r, c).dot(&gens).unwrap(), member);
    assert!(gb.lift(&r.parse("x").unwrap()).unwrap().is_none());
}

#[test]
fn representation_matches_basis() {
    let r = q(&["x", "y", "z"]);
    let gens = r.parse_all(&["x^2 - y*z", "y^2 - x*z", "z^2 - x*y"]).unwrap();
    let gb = GroebnerBasis::ideal_tracked(&r, &gens).unwrap();
    for (g, row) in gb.polys().iter().zip(gb.representation().unwrap()) {
        assert_eq!(&row.dot(&gens).unwrap(), g);
    }
}

#[test]
fn module_syzygies_are_sound() {
    let r = q(&["x", "y", "z"]);
    let gens = vec![
        FreeVector::from_polys(&r, r.parse_all(&["x", "y"]).unwrap()),
        FreeVector::from_polys(&r, r.parse_all(&["y", "z"]).unwrap()),
        FreeVector::from_polys(&r, r.parse_all(&["z", "x"]).unwrap()),
        FreeVector::from_polys(&r, r.parse_all(&["x*y", "0"]).unwrap()),
    ];
    let syz = module_syzygies(&r, 2, &gens).unwrap();
    assert!(!syz.is_empty());
    for s in &syz {
        assert!(s.contract(&gens).unwrap().is_zero());
    }
}

#[test]
fn schreyer_order_makes_pair_syzygies_a_basis() {
    let r = q(&["x", "y", "z"]);
    let gens = r.parse_all(&["x*y", "y*z", "x*z", "x^2 - y^2"]).unwrap();
    let gb = GroebnerBasis::ideal(&r, &gens).unwrap();
    let g = gb.polys();
    let syz = syzygies(&r, &g).unwrap();
    let leads = gb.leads();
    let schreyer = TermOrder::schreyer(leads, TermOrder::Top);
    let sgb = GroebnerBasis::module(&r, g.len(), &syz, schreyer.clone(), false).unwrap();
    // leading terms of the reduced basis are among the leads of the generators
    let ctx_leads: Vec<_> = syz
        .iter()
        .map(|s| GroebnerBasis::module(&r, g.len(), std::slice::from_ref(s), schreyer.clone(), false).unwrap().leads()[0].clone())
        .collect();
    for l in sgb.leads() {
        assert!(ctx_leads.iter().any(|c| c.0 == l.0 && c.1.divides(&l.1)));
    }
}

#[test]
fn empty_and_zero_generators() {
    let r = q(&["x"]);
    assert!(buchberger(&r, &[]).unwrap().is_empty());
    assert!(buchberger(&r, &[Polynomial::zero(&r)]).unwrap().is_empty());
    let syz = syzygies(&r, &[Polynomial::zero(&r), r.parse("x").unwrap()]).unwrap();
    assert!(syz.iter().any(|s| s.get(0).is_one() && s.get(1).is_zero()));
}

fn catalog_ideals() -> Vec<(Vec<&'static str>, Vec<&'static str>)> {
    vec![
        (vec!["x", "y"], vec!["y^2 - x^3"]),
        (vec!["x", "y", "z"], vec!["x*y", "y*z", "z*x"]),
        (vec!["x", "y", "z"], vec!["x*z - y^2", "x^2*y - z^2", "y*z - x^3"]),
        (vec!["x", "y"], vec!["x^2", "x*y", "y^2"]),
        (vec!["x", "y", "z"], vec!["x^2 - y*z", "y^2 - x*z", "z^2 - x*y"]),
    ]
}

fn small_poly(nvars: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u32..4, nvars), -3i64..4), 0..5)
}

fn build(ring: &Ring, terms: &[(Vec<u32>, i64)]) -> Polynomial {
    let f = ring.field();
    Polynomial::from_terms(
        ring,
        terms.iter().map(|(e, c)| (crate::poly::Monomial::from_exponents(e.clone()), f.from_i64(*c))).collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn idempotence(k in 0usize..5) {
        let (vars, gens) = &catalog_ideals()[k];
        let r = q(vars);
        let g = buchberger(&r, &r.parse_all(gens).unwrap()).unwrap();
        prop_assert_eq!(buchberger(&r, &g).unwrap(), g);
    }

    #[test]
    fn membership_is_order_independent(k in 0usize..5, a in small_poly(3), b in small_poly(3), c in small_poly(3)) {
        let (vars, gens) = &catalog_ideals()[k];
        let rg = q(vars);
        let rl = rg.with_order(MonomialOrder::Lex).unwrap();
        let n = vars.len();
        let trim = |t: &[(Vec<u32>, i64)]| t.iter().map(|(e, c)| (e[..n].to_vec(), *c)).collect::<Vec<_>>();
        let gg = rg.parse_all(gens).unwrap();
        let gl = rl.parse_all(gens).unwrap();
        // half the samples are members by construction
        let fg = &(&build(&rg, &trim(&a)) * &gg[0]) + &build(&rg, &trim(&b));
        let fg = if c.len() % 2 == 0 { &fg - &build(&rg, &trim(&b)) } else { fg };
        let fl = fg.transfer(&rl).unwrap();
        let bg = GroebnerBasis::ideal(&rg, &gg).unwrap();
        let bl = GroebnerBasis::ideal(&rl, &gl).unwrap();
        prop_assert_eq!(bg.contains(&fg), bl.contains(&fl));
    }

    #[test]
    fn syzygies_contract_to_zero(a in small_poly(2), b in small_poly(2), c in small_poly(2)) {
        let r = q(&["x", "y"]);
        let gens = vec![build(&r, &a), build(&r, &b), build(&r, &c)];
        for s in syzygies(&r, &gens).unwrap() {
            prop_assert!(s.dot(&gens).unwrap().is_zero());
        }
    }
}
