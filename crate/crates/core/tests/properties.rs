use lieaut::automorphisms::{inner_one_param, is_automorphism};
use lieaut::catalog::{self, sample_automorphism};
use lieaut::expr::Env;
use lieaut::io::{algebra_from_json, algebra_to_json, format_matrix, parse_matrix};
use lieaut::scalar::parse_rational;
use lieaut::{FMatrix, QMatrix, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// Catalog entries paired with the basis indices whose ad is nilpotent.
fn nilpotent_generator() -> impl Strategy<Value = (&'static str, usize)> {
    let names = ["A_{3,1}", "A_{3,8}", "A_{4,1}", "A_{4,3}", "A_{4,8}", "A_{4,10}", "A_{5,17}"];
    let pairs: Vec<_> = names
        .into_iter()
        .flat_map(|n| {
            let a = catalog::instantiate(n, &params(n)).unwrap();
            (0..a.dim()).filter(move |&j| a.ad_matrix(j).unwrap().is_nilpotent()).map(move |j| (n, j))
        })
        .collect();
    prop::sample::select(pairs)
}

fn params(name: &str) -> Env {
    let mut env = Env::new();
    if name == "A_{5,17}" {
        for (k, v) in [("u", 1), ("v", -1), ("w", 1)] {
            env.insert(k.into(), Rational::from_integer(v.into()));
        }
    }
    env
}

fn any_entry() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["A_{2,1}", "A_{3,1}", "A_{3,8}", "A_{3,9}", "A_{4,8}", "A_{4,10}", "A_{4,12}"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inner_flows_compose((name, j) in nilpotent_generator(), e in rational(), d in rational()) {
        let a = catalog::instantiate(name, &params(name)).unwrap();
        let lhs = &inner_one_param(&a, j, &e).unwrap() * &inner_one_param(&a, j, &d).unwrap();
        prop_assert_eq!(lhs, inner_one_param(&a, j, &(&e + &d)).unwrap());
        prop_assert!(is_automorphism(&a, &inner_one_param(&a, j, &e).unwrap()).unwrap());
    }

    #[test]
    fn products_and_inverses_are_automorphisms(name in any_entry(), s1 in 0u64..1000, s2 in 0u64..1000) {
        let a = catalog::instantiate(name, &Env::new()).unwrap();
        let b: QMatrix = sample_automorphism(name, &Env::new(), s1).unwrap();
        let c: QMatrix = sample_automorphism(name, &Env::new(), s2).unwrap();
        prop_assert!(is_automorphism(&a, &(&b * &c)).unwrap());
        prop_assert!(is_automorphism(&a, &b.inverse().unwrap()).unwrap());
    }

    #[test]
    fn rational_text_round_trip(x in rational()) {
        prop_assert_eq!(parse_rational(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn float_text_round_trip(x in -1e6f64..1e6) {
        let m = FMatrix::from_rows(vec![vec![x]]).unwrap();
        let back: FMatrix = parse_matrix(&format_matrix(&m)).unwrap();
        prop_assert_eq!(*back.get(0, 0), x);
    }

    #[test]
    fn matrix_text_round_trip(entries in prop::collection::vec(rational(), 9)) {
        let m = QMatrix::from_rows(entries.chunks(3).map(<[_]>::to_vec).collect()).unwrap();
        let back: QMatrix = parse_matrix(&format_matrix(&m)).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn algebra_json_round_trip(name in any_entry()) {
        let a = catalog::instantiate(name, &Env::new()).unwrap();
        let text = algebra_to_json(&a);
        let back = algebra_from_json(&text).unwrap();
        prop_assert_eq!(back.tensor(), a.tensor());
        prop_assert_eq!(algebra_to_json(&back), text);
    }
}
