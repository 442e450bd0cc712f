use lrtrop_core::minors::{group_element_from_word, random_positive_rational};
use lrtrop_core::multiplicity::degree_roots;
use lrtrop_core::rootsys::{parse_cartan_type, CartanMatrix, ReducedWord};
use lrtrop_core::tropical::{
    transition, verify_tropicalization, GeometricTuple, ParamTuple, TransitionPlan, TropicalTuple,
};
use lrtrop_core::Rational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn words(c: &CartanMatrix) -> Vec<ReducedWord> {
    c.reduced_words_of_longest(10_000).unwrap()
}

fn random_tropical(rng: &mut ChaCha8Rng, c: &CartanMatrix, w: &ReducedWord) -> TropicalTuple {
    let values = (0..w.len()).map(|_| rng.gen_range(0..=20u64)).collect();
    ParamTuple::new(c, w.clone(), values).unwrap()
}

#[test]
fn worked_a2_transition() {
    let c = parse_cartan_type("A2").unwrap();
    let from = c.reduced_word(&[1, 2, 1]).unwrap();
    let to = c.reduced_word(&[2, 1, 2]).unwrap();
    let t = ParamTuple::new(&c, from, vec![1u64, 2, 3]).unwrap();
    assert_eq!(transition(&c, &t, &to).unwrap().values(), &[4, 1, 2]);
    let one = |x: i64| Rational::from_integer(x.into());
    let g = ParamTuple::new(&c, c.reduced_word(&[1, 2, 1]).unwrap(), vec![one(1), one(2), one(3)]).unwrap();
    let out = transition(&c, &g, &to).unwrap();
    assert_eq!(out.values(), &[Rational::new(6.into(), 4.into()), one(4), Rational::new(2.into(), 4.into())]);
}

#[test]
fn tropical_transitions_are_involutive() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in ["A2", "A3"] {
        let c = parse_cartan_type(name).unwrap();
        let ws = words(&c);
        for _ in 0..1000 {
            let from = ws.choose(&mut rng).unwrap();
            let to = ws.choose(&mut rng).unwrap();
            let t = random_tropical(&mut rng, &c, from);
            let there = transition(&c, &t, to).unwrap();
            let back = transition(&c, &there, from).unwrap();
            assert_eq!(back, t);
        }
    }
}

#[test]
fn tropical_transitions_are_path_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for name in ["A2", "A3"] {
        let c = parse_cartan_type(name).unwrap();
        let ws = words(&c);
        for _ in 0..1000 {
            let a = ws.choose(&mut rng).unwrap();
            let b = ws.choose(&mut rng).unwrap();
            let target = ws.choose(&mut rng).unwrap();
            let t = random_tropical(&mut rng, &c, a);
            let direct = transition(&c, &t, target).unwrap();
            let via = transition(&c, &transition(&c, &t, b).unwrap(), target).unwrap();
            assert_eq!(direct, via);
            // A random walk of braid moves ending anywhere agrees with the
            // shortest path to the same word.
            let mut walk = t.clone();
            for _ in 0..rng.gen_range(0..12) {
                let nbrs = c.braid_neighbors(walk.word()).unwrap();
                if let Some(nb) = nbrs.choose(&mut rng) {
                    walk = lrtrop_core::tropical::apply_braid_move(&c, &walk, nb.mv).unwrap();
                }
            }
            assert_eq!(transition(&c, &t, walk.word()).unwrap(), walk);
        }
    }
}

fn degree(c: &CartanMatrix, w: &ReducedWord, t: &[u64]) -> Vec<i64> {
    let mut out = vec![0; c.rank()];
    for (beta, &x) in degree_roots(c, w).iter().zip(t) {
        for (o, b) in out.iter_mut().zip(&beta.0) {
            *o += b * x as i64;
        }
    }
    out
}

#[test]
fn tropical_transitions_are_bijective_and_keep_the_degree() {
    let c = parse_cartan_type("A2").unwrap();
    let from = c.reduced_word(&[1, 2, 1]).unwrap();
    let to = c.reduced_word(&[2, 1, 2]).unwrap();
    let plan = TransitionPlan::new(&c, &from, &to).unwrap();
    let mut images = std::collections::BTreeSet::new();
    for a in 0..8u64 {
        for b in 0..8 {
            for d in 0..8 {
                let mut v = vec![a, b, d];
                plan.apply_values(&mut v);
                assert_eq!(degree(&c, &to, &v), degree(&c, &from, &[a, b, d]));
                assert!(images.insert(v));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let c = parse_cartan_type("A3").unwrap();
    let ws = words(&c);
    for _ in 0..300 {
        let from = ws.choose(&mut rng).unwrap();
        let to = ws.choose(&mut rng).unwrap();
        let t = random_tropical(&mut rng, &c, from);
        let out = transition(&c, &t, to).unwrap();
        assert_eq!(degree(&c, to, out.values()), degree(&c, from, t.values()));
    }
}

#[test]
fn geometric_transitions_preserve_the_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (name, n) in [("A2", 3), ("A3", 4)] {
        let c = parse_cartan_type(name).unwrap();
        let ws = words(&c);
        for _ in 0..500 {
            let from = ws.choose(&mut rng).unwrap();
            let to = ws.choose(&mut rng).unwrap();
            let values: Vec<Rational> = (0..from.len()).map(|_| random_positive_rational(&mut rng, 9)).collect();
            let t: GeometricTuple = ParamTuple::new(&c, from.clone(), values).unwrap();
            let out = transition(&c, &t, to).unwrap();
            let x = group_element_from_word(from.letters(), t.values(), n).unwrap();
            let y = group_element_from_word(to.letters(), out.values(), n).unwrap();
            assert_eq!(x, y);
        }
    }
}

#[test]
fn tropical_maps_tropicalize_geometric_ones() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for name in ["A2", "A3"] {
        let c = parse_cartan_type(name).unwrap();
        let ws = words(&c);
        for _ in 0..20 {
            let from = ws.choose(&mut rng).unwrap();
            let to = ws.choose(&mut rng).unwrap();
            let r = verify_tropicalization(&c, from, to, 50, 30, 100_000, &mut rng).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}

#[test]
fn non_simply_laced_transitions_are_unsupported() {
    let c = parse_cartan_type("B2").unwrap();
    let w = c.longest_element().unwrap().word;
    let t = ParamTuple::new(&c, w.clone(), vec![1u64; w.len()]).unwrap();
    let other = c.reduced_word_with_boundary(Some(2), None).unwrap();
    assert!(transition(&c, &t, &other).is_err());
}
