use proptest::prelude::*;

use super::*;
use crate::poly::Polynomial;

fn q(vars: &[&str]) -> Ring {
    Ring::grevlex(Field::Rationals, vars).unwrap()
}

fn id(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::parse(r, gens).unwrap()
}

#[test]
fn dimensions() {
    let r = q(&["x", "y", "z"]);
    assert_eq!(krull_dim(&id(&r, &["x*y", "y*z", "z*x"])), 1);
    assert_eq!(krull_dim(&Ideal::zero(&r)), 3);
    assert_eq!(krull_dim(&Ideal::unit(&r)), -1);
    // each axis, the oracle for the union, is a line
    for axis in [["x", "y"], ["y", "z"], ["x", "z"]] {
        assert_eq!(krull_dim(&id(&r, &axis)), 1);
    }
    assert_eq!(krull_dim(&id(&r, &["x*z - y^2", "x^2*y - z^2", "y*z - x^3"])), 1);
}

#[test]
fn grades() {
    let r = q(&["x", "y", "z"]);
    assert_eq!(codim_grade(&id(&r, &["x*y*z"])).unwrap(), 1);
    assert_eq!(codim_grade(&id(&r, &["x*y", "y*z", "z*x"])).unwrap(), 2);
    assert_eq!(codim_grade(&id(&r, &["x", "y", "z"])).unwrap(), 3);
    assert_eq!(codim_grade(&Ideal::unit(&r)), Err(Error::UnitIdeal));
}

#[test]
fn artinian_lengths() {
    let r = q(&["x", "y"]);
    assert_eq!(length_artinian(&id(&r, &["x", "y"]).power(2)).unwrap(), 3);
    let t = q(&["t"]);
    assert_eq!(length_artinian(&id(&t, &["t^3", "t^4"])).unwrap(), 3);
    assert_eq!(length_artinian(&id(&t, &["t^2", "t^3"])).unwrap(), 2);
    assert_eq!(length_artinian(&id(&r, &["x"])), Err(Error::NotArtinian));
    assert_eq!(length_artinian(&Ideal::unit(&r)).unwrap(), 0);
}

#[test]
fn generic_point_length_of_an_axis() {
    let r = q(&["x", "y", "z"]);
    let axes = id(&r, &["x*y", "y*z", "z*x"]);
    let p = id(&r, &["x", "y"]);
    assert_eq!(local_length(&axes, &p, &["z"]).unwrap(), 1);
    // doubled axis: (x^2, y) contributes 2
    let fat = id(&r, &["x^2", "y"]).intersect(&id(&r, &["y", "z"])).unwrap();
    assert_eq!(local_length(&fat, &p, &["z"]).unwrap(), 2);
    assert!(matches!(local_length(&axes, &p, &["x"]), Err(Error::NotIndependent(_))));
    assert!(matches!(
        local_length(&Ideal::zero(&r), &p, &["z"]),
        Err(Error::NotArtinianAfterLocalization(_))
    ));
}

/// Oracle: over `k(z)` the `P`-primary part of an Artinian quotient is
/// `R'/(I' + P'^N)` for large `N`.
#[test]
fn generic_point_length_against_power_oracle() {
    let r = q(&["x", "y", "z"]);
    let i = id(&r, &["x^3*z", "y^2 - x*z", "x*y*z^2"]);
    let p = id(&r, &["x", "y"]);
    let local = localize(&r, &[2]).unwrap();
    let (il, pl) = (i.transfer(&local).unwrap(), p.transfer(&local).unwrap());
    let oracle = length_artinian(&il.sum(&pl.power(12)).unwrap()).unwrap();
    assert_eq!(local_length(&i, &p, &["z"]).unwrap(), oracle);
}

#[test]
fn generic_point_length_of_a_module() {
    // B = R/(x) + R/(y) + R/(z) modulo (xy, yz, zx) B, at the axis x = y = 0
    let r = q(&["x", "y", "z"]);
    let b = PolyMatrix::parse(&r, &[vec!["x", "0", "0"], vec!["0", "y", "0"], vec!["0", "0", "z"]]).unwrap();
    let fitt1 = id(&r, &["x*y", "y*z", "z*x"]);
    let n = Submodule::column_span(&b).sum(&Submodule::ideal_times_free(&fitt1, 3)).unwrap();
    assert_eq!(local_length(&n, &id(&r, &["x", "y"]), &["z"]).unwrap(), 2);
    assert_eq!(local_length(&fitt1, &id(&r, &["x", "y"]), &["z"]).unwrap(), 1);
}

#[test]
fn degenerate_localization_matches_artinian_length() {
    let r = q(&["x", "y"]);
    let m = id(&r, &["x", "y"]);
    for gens in [vec!["x^2", "y^2"], vec!["x^3", "x*y", "y^4"], vec!["x^2 - y^3", "x*y"]] {
        let i = id(&r, &gens);
        let empty: [&str; 0] = [];
        assert_eq!(local_length(&i, &m, &empty).unwrap(), length_artinian(&i).unwrap());
    }
}

#[test]
fn resolutions() {
    let r = q(&["x", "y"]);
    let res = free_resolution(&ideal_presentation(&id(&r, &["x", "y"])), true).unwrap();
    assert_eq!(res.betti(), vec![1, 2, 1]);
    assert_eq!(res.length(), 2);
    let s = q(&["x", "y", "z"]);
    let res = free_resolution(&ideal_presentation(&id(&s, &["x*y", "y*z", "z*x"])), true).unwrap();
    assert_eq!(res.betti(), vec![1, 3, 2]);
    let res = free_resolution(&ideal_presentation(&id(&r, &["y^2 - x^3"])), true).unwrap();
    assert_eq!(res.length(), 1);
    // a redundant generator is pruned away
    let res = free_resolution(&ideal_presentation(&id(&r, &["x", "y", "x + y"])), true).unwrap();
    assert_eq!(res.betti(), vec![1, 2, 1]);
    for m in res.maps() {
        assert!(m.entries().iter().all(|p| p.constant_term().is_zero()));
    }
    let err = free_resolution(&ideal_presentation(&id(&r, &["x + 1", "y"])), true).unwrap_err();
    assert!(matches!(err, Error::MinimizationOutsideOrigin(_)));
}

#[test]
fn module_resolution() {
    let r = q(&["x", "y"]);
    let cusp = PolyMatrix::parse(&r, &[vec!["y", "-x"], vec!["-x^2", "y"]]).unwrap();
    let res = free_resolution(&cusp, true).unwrap();
    assert_eq!(res.betti(), vec![2, 2]);
    // a unit entry splits a generator off
    let m = PolyMatrix::parse(&r, &[vec!["1", "x"], vec!["y", "x*y"]]).unwrap();
    let res = free_resolution(&m, true).unwrap();
    assert_eq!(res.betti()[0], 1);
}

#[test]
fn perfection() {
    let s = q(&["x", "y", "z"]);
    let v = is_perfect(&id(&s, &["x*y", "y*z", "z*x"])).unwrap();
    assert_eq!(v, Perfection { perfect: true, pd: 2, grade: 2 });
    let r = q(&["x", "y"]);
    assert_eq!(is_perfect(&id(&r, &["x", "y"]).power(2)).unwrap(), Perfection { perfect: true, pd: 2, grade: 2 });
    assert_eq!(is_perfect(&id(&r, &["x"])).unwrap(), Perfection { perfect: true, pd: 1, grade: 1 });
    // embedded point: grade 1 but depth 0
    assert_eq!(is_perfect(&id(&r, &["x^2", "x*y"])).unwrap(), Perfection { perfect: false, pd: 2, grade: 1 });
}

fn catalog_ideals() -> Vec<(Vec<&'static str>, Vec<&'static str>)> {
    vec![
        (vec!["x", "y", "z"], vec!["x*y", "y*z", "z*x"]),
        (vec!["x", "y", "z"], vec!["x*z - y^2", "x^2*y - z^2", "y*z - x^3"]),
        (vec!["x", "y"], vec!["y^2 - x^3"]),
        (vec!["x", "y"], vec!["x^2", "x*y", "y^2"]),
        (vec!["x", "y", "z"], vec!["x*y*z"]),
        (vec!["x", "y", "z"], vec!["x", "y", "z"]),
        (vec!["a", "b", "c", "d"], vec!["a*d - b*c", "b^2 - a*c"]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn dimension_is_order_independent(k in 0usize..7) {
        let (vars, gens) = &catalog_ideals()[k];
        let g = q(vars);
        let l = Ring::lex(Field::Rationals, vars).unwrap();
        prop_assert_eq!(krull_dim(&id(&g, gens)), krull_dim(&id(&l, gens)));
    }

    /// Brute-force oracle: monomials in the box not divisible by any
    /// original generator of a monomial ideal.
    #[test]
    fn standard_count_matches_enumeration(
        a in 1u32..5, b in 1u32..5,
        extra in proptest::collection::vec((0u32..4, 0u32..4), 0..4),
    ) {
        let r = q(&["x", "y"]);
        let mut gens = vec![(a, 0), (0, b)];
        gens.extend(extra.iter().copied().filter(|&(i, j)| i + j > 0));
        let polys: Vec<Polynomial> = gens
            .iter()
            .map(|&(i, j)| Polynomial::monomial(&r, Monomial::from_exponents(vec![i, j]), r.field().one()))
            .collect();
        let ideal = Ideal::new(&r, polys).unwrap();
        let mut brute = 0;
        for i in 0..a {
            for j in 0..b {
                if !gens.iter().any(|&(p, s)| p <= i && s <= j) {
                    brute += 1;
                }
            }
        }
        prop_assert_eq!(length_artinian(&ideal).unwrap(), brute);
    }

    #[test]
    fn resolutions_compose_to_zero(k in 0usize..7) {
        let (vars, gens) = &catalog_ideals()[k];
        let r = q(vars);
        let res = free_resolution(&ideal_presentation(&id(&r, gens)), true).unwrap();
        for w in res.maps().windows(2) {
            prop_assert!(w[0].mul(&w[1]).unwrap().is_zero());
        }
        prop_assert!(res.length() <= r.nvars());
    }
}
