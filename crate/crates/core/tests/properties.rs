use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use opfree::bijection::{
    aforest_to_path, aforest_to_path_by_edges, forest_to_path, path_to_aforest, path_to_aforest_by_edges,
    path_to_forest, path_to_word, word_to_path,
};
use opfree::selfcheck::{rb_associative, rb_identity_holds};
use opfree::{
    AngularForest, BracketedWord, CoeffKind, Coefficient, DecoratedForest, LetterOmega, LetterX, LinearCombination,
    MotzkinPath, Rational, RotaBaxterBasis, Step,
};

/// Raw step choices: 0 opens, 1 closes if possible, 2 and 3 are level steps.
/// Unclosed ups are closed at the end.
fn path_from_choices(choices: &[(u8, bool)]) -> MotzkinPath {
    let omega = [LetterOmega::new("_").unwrap(), LetterOmega::new("a").unwrap()];
    let letters = [LetterX::new("x").unwrap(), LetterX::new("y").unwrap()];
    let mut steps = Vec::new();
    let mut open: Vec<LetterOmega> = Vec::new();
    for &(c, alt) in choices {
        match c {
            0 => {
                let w = omega[alt as usize].clone();
                steps.push(Step::Up(w.clone()));
                open.push(w);
            }
            1 if !open.is_empty() => steps.push(Step::Down(open.pop().unwrap())),
            _ => steps.push(Step::Level(letters[alt as usize].clone())),
        }
    }
    while let Some(w) = open.pop() {
        steps.push(Step::Down(w));
    }
    MotzkinPath::new(steps).expect("balanced by construction")
}

fn paths() -> impl Strategy<Value = MotzkinPath> {
    prop::collection::vec((0u8..4, any::<bool>()), 0..12).prop_map(|c| path_from_choices(&c))
}

/// Paths whose decorations are all the default operator.
fn singleton_paths() -> impl Strategy<Value = MotzkinPath> {
    prop::collection::vec((0u8..4, any::<bool>()), 0..7)
        .prop_map(|c| path_from_choices(&c.into_iter().map(|(s, b)| (s, b && s >= 2)).collect::<Vec<_>>()))
}

/// Members of the valley-free family, the basis of the path product.
fn valley_free_paths(max_raw: usize) -> impl Strategy<Value = MotzkinPath> {
    prop::collection::vec((0u8..4, Just(false)), 0..max_raw)
        .prop_map(|c| path_from_choices(&c))
        .prop_filter("valley-free", MotzkinPath::is_valley_free)
}

fn rational() -> impl Strategy<Value = (i64, i64)> {
    let part = prop_oneof![-20i64..20, any::<i64>()];
    (part.clone(), part.prop_filter("nonzero", |d| *d != 0))
}

fn big(p: (i64, i64)) -> BigRational {
    BigRational::new(BigInt::from(p.0), BigInt::from(p.1))
}

fn as_big(r: &Rational) -> BigRational {
    BigRational::new(r.numer(), r.denom())
}

proptest! {
    #[test]
    fn path_text_round_trip(p in paths()) {
        let back: MotzkinPath = p.to_string().parse().unwrap();
        prop_assert!(back == p, "{}", p);
    }

    #[test]
    fn word_path_inverse(p in paths()) {
        let w = path_to_word(&p);
        prop_assert!(word_to_path(&w) == p, "{}", p);
        let back: BracketedWord = w.to_string().parse().unwrap();
        prop_assert!(back == w, "{}", w);
    }

    #[test]
    fn forest_path_inverse(p in paths()) {
        match path_to_forest(&p) {
            Ok(f) => {
                prop_assert!(p.is_peak_free());
                prop_assert!(forest_to_path(&f) == p, "{}", p);
                let back: DecoratedForest = f.to_string().parse().unwrap();
                prop_assert!(back == f, "{}", f);
            }
            Err(_) => prop_assert!(!p.is_peak_free(), "{}", p),
        }
    }

    #[test]
    fn angular_routes_agree(p in singleton_paths()) {
        match path_to_aforest(&p) {
            Ok(a) => {
                prop_assert!(p.is_valley_free());
                prop_assert!(aforest_to_path(&a) == p, "{}", p);
                prop_assert!(aforest_to_path_by_edges(&a) == p, "{}", p);
                prop_assert!(path_to_aforest_by_edges(&p).unwrap() == a, "{}", p);
                let back: AngularForest = a.to_string().parse().unwrap();
                prop_assert!(back == a, "{}", a);
            }
            Err(_) => prop_assert!(!p.is_valley_free(), "{}", p),
        }
    }

    #[test]
    fn rational_matches_bigrational(a in rational(), b in rational()) {
        let (x, y) = (Rational::new(a.0, a.1), Rational::new(b.0, b.1));
        prop_assert_eq!(as_big(&(&x + &y)), big(a) + big(b));
        prop_assert_eq!(as_big(&(&x - &y)), big(a) - big(b));
        prop_assert_eq!(as_big(&(&x * &y)), big(a) * big(b));
        prop_assert_eq!(as_big(&-x.clone()), -big(a));
        prop_assert_eq!(x.cmp(&y), big(a).cmp(&big(b)));
        prop_assert!(x == Rational::new(as_big(&x).numer().clone(), as_big(&x).denom().clone()));
    }

    #[test]
    fn combination_add_commutes(ps in prop::collection::vec((paths(), -5i64..5), 0..6)) {
        let mut a = LinearCombination::zero(CoeffKind::Rational);
        let mut b = LinearCombination::zero(CoeffKind::Rational);
        for (i, (p, c)) in ps.into_iter().enumerate() {
            let term = LinearCombination::term(p, Coefficient::Rational(Rational::from(c)));
            if i % 2 == 0 { a = a.add(&term).unwrap() } else { b = b.add(&term).unwrap() }
        }
        prop_assert!(a.add(&b).unwrap() == b.add(&a).unwrap());
        prop_assert!(a.sub(&a).unwrap().is_zero());
        let json = a.to_json_string();
        prop_assert!(LinearCombination::<MotzkinPath>::from_json_str(&json).unwrap() == a, "{}", json);
    }

    #[test]
    fn rb_identity_on_paths(u in valley_free_paths(5), v in valley_free_paths(5)) {
        prop_assert!(u.check_member().is_ok() && v.check_member().is_ok());
        prop_assert!(rb_identity_holds(&u, &v).unwrap());
    }

    #[test]
    fn rb_associative_on_words(u in valley_free_paths(3), v in valley_free_paths(3), w in valley_free_paths(3)) {
        let (u, v, w) = (path_to_word(&u), path_to_word(&v), path_to_word(&w));
        prop_assert!([&u, &v, &w].iter().all(|x| x.check_member().is_ok()));
        prop_assert!(rb_associative(&u, &v, &w).unwrap());
    }
}
