use lrtrop_core::multiplicity::{
    dominant_targets, racah_oracle, tensor_multiplicity, weyl_dimension, BoundaryWords, MultiplicityEngine,
    MultiplicityQuery,
};
use lrtrop_core::rootsys::{parse_cartan_type, Weight};
use lrtrop_core::tableaux::lr_coefficient_of_weights;
use num_bigint::BigUint;

fn box_weights(rank: usize, max: i64) -> Vec<Weight> {
    let mut out = vec![Weight(vec![])];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..=max).map(move |x| {
                    let mut v = w.0.clone();
                    v.push(x);
                    Weight(v)
                })
            })
            .collect();
    }
    out
}

#[test]
fn worked_a2_instance() {
    let c = parse_cartan_type("A2").unwrap();
    let w = Weight(vec![1, 1]);
    let r = MultiplicityEngine::new(&c).unwrap().count(&w, &w, &w).unwrap();
    assert_eq!(r.count, 2);
    let mut witnesses = r.witnesses.clone();
    witnesses.sort();
    assert_eq!(witnesses, vec![vec![0, 1, 0], vec![1, 0, 1]]);
    let q = MultiplicityQuery::new(c, w.clone(), w.clone(), w).unwrap();
    assert_eq!(racah_oracle(&q).unwrap(), 2);
}

#[test]
fn three_routes_agree_on_a2() {
    let c = parse_cartan_type("A2").unwrap();
    let engine = MultiplicityEngine::new(&c).unwrap();
    for lambda in box_weights(2, 2) {
        for nu in box_weights(2, 2) {
            for mu in dominant_targets(&c, &lambda, &nu).unwrap() {
                let tropical = engine.count(&lambda, &nu, &mu).unwrap().count;
                let lr = lr_coefficient_of_weights(&lambda, &nu, &mu).unwrap();
                let q = MultiplicityQuery::new(c.clone(), lambda.clone(), nu.clone(), mu.clone()).unwrap();
                let oracle = racah_oracle(&q).unwrap();
                assert_eq!((tropical, lr), (oracle, oracle), "{lambda:?} {nu:?} {mu:?}");
            }
        }
    }
}

#[test]
fn base_word_and_boundary_mode_do_not_matter() {
    for name in ["A2", "A3"] {
        let c = parse_cartan_type(name).unwrap();
        let words = c.reduced_words_of_longest(1000).unwrap();
        let reference = MultiplicityEngine::new(&c).unwrap();
        let exhaustive = MultiplicityEngine::with_base_word(&c, &words[0], BoundaryWords::Exhaustive).unwrap();
        let others: Vec<MultiplicityEngine> = words
            .iter()
            .step_by(3)
            .map(|w| MultiplicityEngine::with_base_word(&c, w, BoundaryWords::Representatives).unwrap())
            .collect();
        for lambda in box_weights(c.rank(), 1) {
            for nu in box_weights(c.rank(), 1) {
                for mu in dominant_targets(&c, &lambda, &nu).unwrap() {
                    let expected = reference.count(&lambda, &nu, &mu).unwrap().count;
                    assert_eq!(exhaustive.count(&lambda, &nu, &mu).unwrap().count, expected);
                    for e in &others {
                        assert_eq!(e.count(&lambda, &nu, &mu).unwrap().count, expected);
                    }
                }
            }
        }
    }
}

#[test]
fn decompositions_have_the_right_dimension() {
    for (name, max) in [("A3", 1), ("D4", 1)] {
        let c = parse_cartan_type(name).unwrap();
        let engine = MultiplicityEngine::new(&c).unwrap();
        let weights: Vec<Weight> = box_weights(c.rank(), max)
            .into_iter()
            .filter(|w| w.0.iter().sum::<i64>() <= 1)
            .collect();
        for lambda in &weights {
            for nu in &weights {
                let mut total = BigUint::from(0u32);
                for mu in dominant_targets(&c, lambda, nu).unwrap() {
                    let count = engine.count(lambda, nu, &mu).unwrap().count;
                    let q = MultiplicityQuery::new(c.clone(), lambda.clone(), nu.clone(), mu.clone()).unwrap();
                    assert_eq!(count, racah_oracle(&q).unwrap(), "{name} {lambda:?} {nu:?} {mu:?}");
                    total += weyl_dimension(&c, &mu).unwrap() * BigUint::from(count);
                }
                let expected = weyl_dimension(&c, lambda).unwrap() * weyl_dimension(&c, nu).unwrap();
                assert_eq!(total, expected, "{name} {lambda:?} {nu:?}");
            }
        }
    }
}

#[test]
fn oracle_handles_non_simply_laced_types() {
    // Racah works for any finite type; check it through dimensions.
    for name in ["B2", "G2", "C3"] {
        let c = parse_cartan_type(name).unwrap();
        for lambda in box_weights(c.rank(), 1) {
            let nu = lambda.clone();
            let mut total = BigUint::from(0u32);
            for mu in dominant_targets(&c, &lambda, &nu).unwrap() {
                let q = MultiplicityQuery::new(c.clone(), lambda.clone(), nu.clone(), mu.clone()).unwrap();
                total += weyl_dimension(&c, &mu).unwrap() * BigUint::from(racah_oracle(&q).unwrap());
            }
            let d = weyl_dimension(&c, &lambda).unwrap();
            assert_eq!(total, &d * &d, "{name} {lambda:?}");
        }
        let q = MultiplicityQuery::new(c.clone(), Weight(vec![1; c.rank()]), Weight(vec![0; c.rank()]), Weight(vec![1; c.rank()])).unwrap();
        assert!(tensor_multiplicity(&q).is_err());
    }
}

#[test]
fn queries_validate_their_weights() {
    let c = parse_cartan_type("A2").unwrap();
    assert!(MultiplicityQuery::new(c.clone(), Weight(vec![-1, 0]), Weight(vec![0, 0]), Weight(vec![0, 0])).is_err());
    assert!(MultiplicityQuery::new(c.clone(), Weight(vec![1]), Weight(vec![0, 0]), Weight(vec![0, 0])).is_err());
    // mu outside lambda + nu - Q_+ has multiplicity zero.
    let q = MultiplicityQuery::new(c, Weight(vec![1, 0]), Weight(vec![1, 0]), Weight(vec![1, 0])).unwrap();
    assert_eq!(tensor_multiplicity(&q).unwrap(), 0);
    assert_eq!(racah_oracle(&q).unwrap(), 0);
}
