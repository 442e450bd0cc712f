use lrtrop_core::cluster::grassmannian::{flip_graph, triangulations};
use lrtrop_core::cluster::{
    cartan_companion, enumerate_exchange_graph, is_finite_type, is_skew_symmetrizable, laurent_check, mutate_matrix,
    mutate_seed, ExchangeCaps, ExchangeMatrix, FiniteTypeVerdict, Seed,
};
use lrtrop_core::rootsys::{is_finite_type_cartan, parse_cartan_type};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `b_ij = s_ij d_j` with `s` skew-symmetric is skew-symmetrizable by `d`;
/// extra rows are arbitrary.
fn random_matrix(rng: &mut ChaCha8Rng, n: usize, frozen: usize) -> (ExchangeMatrix, Vec<i64>) {
    let d: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let mut rows = vec![vec![0i64; n]; n + frozen];
    for i in 0..n {
        for j in i + 1..n {
            let s = rng.gen_range(-1..=1);
            rows[i][j] = s * d[j];
            rows[j][i] = -s * d[i];
        }
    }
    for row in rows.iter_mut().skip(n) {
        for x in row.iter_mut() {
            *x = rng.gen_range(-2..=2);
        }
    }
    (ExchangeMatrix::new(&rows).unwrap(), d)
}

fn quiver(name: &str) -> ExchangeMatrix {
    ExchangeMatrix::from_cartan(&parse_cartan_type(name).unwrap())
}

fn catalan(n: u64) -> u64 {
    (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

#[test]
fn matrix_mutation_is_an_involution_and_keeps_the_symmetrizer() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let frozen = rng.gen_range(0..=3);
        let (b, d) = random_matrix(&mut rng, n, frozen);
        let k = rng.gen_range(1..=n);
        let once = mutate_matrix(&b, k).unwrap();
        assert_eq!(mutate_matrix(&once, k).unwrap(), b);
        // D B skew-symmetric implies D mu_k(B) skew-symmetric.
        let p = once.principal_part();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(d[i] * p[i][j], -d[j] * p[j][i]);
            }
        }
        assert!(is_skew_symmetrizable(&p).is_some());
        // mu_k(-B) = -mu_k(B).
        let neg = ExchangeMatrix::new(&b.rows().iter().map(|r| r.iter().map(|x| -x).collect()).collect::<Vec<_>>()).unwrap();
        let lhs = mutate_matrix(&neg, k).unwrap().rows();
        let rhs: Vec<Vec<i64>> = once.rows().iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn seed_mutation_is_an_involution_and_exchange_is_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let frozen = rng.gen_range(0..=2);
        let (b, _) = random_matrix(&mut rng, n, frozen);
        let mut seed = Seed::initial(b);
        for _ in 0..rng.gen_range(0..=3) {
            seed = mutate_seed(&seed, rng.gen_range(1..=n)).unwrap();
        }
        let k = rng.gen_range(1..=n);
        let there = mutate_seed(&seed, k).unwrap();
        assert_eq!(mutate_seed(&there, k).unwrap(), seed);
        // x_k x'_k equals the same binomial read from either side.
        let (p, m) = seed.exchange_monomials(k).unwrap();
        let (p2, m2) = there.exchange_monomials(k).unwrap();
        assert_eq!(&p + &m, &p2 + &m2);
        let product = &seed.cluster()[k - 1] * &there.cluster()[k - 1];
        assert_eq!(product, &p + &m);
        for x in there.cluster() {
            assert!(x.is_polynomial_in(n..seed.m()));
        }
    }
}

#[test]
fn worked_exchange_relations() {
    let b = ExchangeMatrix::new(&[vec![0, 1], vec![-1, 0]]).unwrap();
    assert_eq!(Seed::initial(b).mutate(1).unwrap().render_variable(1), "(x2 + 1)/x1");
    let sl2 = Seed::with_names(
        ExchangeMatrix::new(&[vec![0], vec![1], vec![1]]).unwrap(),
        vec!["a".into(), "b".into(), "c".into()],
    )
    .unwrap();
    assert_eq!(sl2.mutate(1).unwrap().render_variable(1), "(b*c + 1)/a");
}

#[test]
fn finite_type_counts() {
    for n in 1..=4usize {
        let g = enumerate_exchange_graph(&quiver(&format!("A{n}")), ExchangeCaps::default()).unwrap();
        assert!(g.complete);
        let roots = parse_cartan_type(&format!("A{n}")).unwrap().positive_roots().unwrap().len();
        assert_eq!(g.variables.len(), n * (n + 3) / 2);
        assert_eq!(g.variables.len(), n + roots);
        assert_eq!(g.clusters.len() as u64, catalan(n as u64 + 1));
        // Cross-check against triangulations of the (n+3)-gon.
        let (tris, flips) = flip_graph(n + 3);
        assert_eq!(g.clusters.len(), tris.len());
        assert_eq!(g.edges.len(), flips.len());
    }
    for (name, vars, clusters) in [("B2", 6, 6), ("G2", 8, 8), ("B3", 12, 20), ("C3", 12, 20), ("D4", 16, 50)] {
        let g = enumerate_exchange_graph(&quiver(name), ExchangeCaps::default()).unwrap();
        assert!(g.complete);
        assert_eq!((g.variables.len(), g.clusters.len()), (vars, clusters), "{name}");
    }
    assert_eq!(triangulations(7).len() as u64, catalan(5));
}

#[test]
fn d6_has_36_cluster_variables() {
    let g = enumerate_exchange_graph(&quiver("D6"), ExchangeCaps::default()).unwrap();
    assert!(g.complete);
    assert_eq!(g.variables.len(), 36);
    assert_eq!(g.clusters.len(), 672);
}

#[test]
fn laurent_phenomenon_holds_to_closure() {
    for name in ["A2", "A3", "B3", "D4"] {
        let r = laurent_check(&quiver(name), 50, ExchangeCaps::default());
        assert!(r.passed(), "{name} {r:?}");
        assert!(r.closed);
    }
    // With principal coefficients the check covers coefficient exponents too.
    let mut rows = quiver("A3").rows();
    for i in 0..3 {
        let mut r = vec![0; 3];
        r[i] = 1;
        rows.push(r);
    }
    let r = laurent_check(&ExchangeMatrix::new(&rows).unwrap(), 50, ExchangeCaps::default());
    assert!(r.passed() && r.closed && r.distinct_variables == 9);
}

fn random_mutations(rng: &mut ChaCha8Rng, b: &ExchangeMatrix, count: usize) -> ExchangeMatrix {
    let mut b = b.clone();
    for _ in 0..count {
        b = mutate_matrix(&b, rng.gen_range(1..=b.n())).unwrap();
    }
    b
}

#[test]
fn finite_type_classification_is_mutation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for name in ["A2", "A3", "A4", "D4", "B3", "G2"] {
        let b = random_mutations(&mut rng, &quiver(name), 5);
        match is_finite_type(&b) {
            FiniteTypeVerdict::Finite { witness, .. } => {
                assert!(is_finite_type_cartan(&cartan_companion(&witness)).unwrap())
            }
            other => panic!("{name}: {other:?}"),
        }
    }
    for rows in [vec![vec![0, 2], vec![-2, 0]], vec![vec![0, 1], vec![-4, 0]], vec![vec![0, 3], vec![-3, 0]]] {
        assert_eq!(is_finite_type(&ExchangeMatrix::new(&rows).unwrap()).finite(), Some(false));
    }
    let pool = [
        quiver("A3"),
        quiver("D4"),
        ExchangeMatrix::new(&[vec![0, 2], vec![-2, 0]]).unwrap(),
        ExchangeMatrix::new(&[vec![0, 1, 1], vec![-1, 0, 1], vec![-1, -1, 0]]).unwrap(),
    ];
    for _ in 0..100 {
        let (pick, steps) = (rng.gen_range(0..pool.len()), rng.gen_range(0..4));
        let b = random_mutations(&mut rng, &pool[pick], steps);
        let verdict = is_finite_type(&b).finite();
        assert!(verdict.is_some());
        for k in 1..=b.n() {
            assert_eq!(is_finite_type(&mutate_matrix(&b, k).unwrap()).finite(), verdict);
        }
    }
}
