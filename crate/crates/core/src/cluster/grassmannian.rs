//! The cluster structure on the homogeneous coordinate ring of the
//! Grassmannian of 2-planes in `n + 3` dimensions: cluster variables are
//! Plücker coordinates of diagonals of an `(n+3)`-gon, coefficients are its
//! sides, clusters are triangulations and mutations are flips.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::graph::{enumerate_from_seed, ExchangeCaps};
use super::laurent::LaurentPoly;
use super::matrix::ExchangeMatrix;
use super::seed::Seed;
use crate::error::domain;
use crate::{Error, Rational, Result};

/// A chord `(a, b)` of the polygon with `1 <= a < b <= N`.
pub type Arc = (usize, usize);

/// A triangulation as its set of diagonals.
pub type Triangulation = BTreeSet<Arc>;

/// Largest supported `n` (the polygon then has 15 vertices).
pub const MAX_GRASSMANNIAN_RANK: usize = 12;

/// Plücker coordinate name: `x13`, or `x3_11` once a label has two digits.
pub fn arc_name(arc: Arc) -> String {
    if arc.1 < 10 {
        format!("x{}{}", arc.0, arc.1)
    } else {
        format!("x{}_{}", arc.0, arc.1)
    }
}

fn sorted_arc(a: usize, b: usize) -> Arc {
    (a.min(b), a.max(b))
}

/// Sides `(1,2), (2,3), ..., (N-1,N), (1,N)`.
pub fn polygon_sides(vertices: usize) -> Vec<Arc> {
    (1..vertices).map(|i| (i, i + 1)).chain([(1, vertices)]).collect()
}

fn is_side(vertices: usize, arc: Arc) -> bool {
    arc.1 == arc.0 + 1 || (arc.0 == 1 && arc.1 == vertices)
}

/// True iff the two chords cross in the interior.
pub fn arcs_cross(x: Arc, y: Arc) -> bool {
    (x.0 < y.0 && y.0 < x.1 && x.1 < y.1) || (y.0 < x.0 && x.0 < y.1 && y.1 < x.1)
}

/// The seed built from a triangulation, with rows labeled by `labels`
/// (mutable diagonals first, then the sides). Each triangle `a < b < c`
/// orders its sides `ab -> bc -> ac -> ab`; `b_xy` is `+1` when `x` follows
/// `y` in some triangle and `-1` when it precedes it.
pub fn triangulation_matrix(vertices: usize, labels: &[Arc], n: usize) -> Result<ExchangeMatrix> {
    let edges: BTreeSet<Arc> = labels.iter().copied().collect();
    let position: BTreeMap<Arc, usize> = labels.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut rows = vec![vec![0i64; n]; labels.len()];
    for a in 1..=vertices {
        for b in a + 1..=vertices {
            for c in b + 1..=vertices {
                let tri = [(a, b), (b, c), (a, c)];
                if !tri.iter().all(|e| edges.contains(e)) {
                    continue;
                }
                for t in 0..3 {
                    let y = position[&tri[t]];
                    if y >= n {
                        continue;
                    }
                    rows[position[&tri[(t + 1) % 3]]][y] += 1;
                    rows[position[&tri[(t + 2) % 3]]][y] -= 1;
                }
            }
        }
    }
    ExchangeMatrix::new(&rows)
}

/// The initial seed together with the chord labelling its rows.
#[derive(Clone, Debug)]
pub struct GrassmannianSeed {
    pub n: usize,
    /// Number of polygon vertices, `n + 3`.
    pub vertices: usize,
    pub seed: Seed,
    /// Row labels: the `n` diagonals `(1, k)`, then the `n + 3` sides.
    pub arcs: Vec<Arc>,
}

/// The seed of the fan triangulation: diagonals `(1,3), ..., (1,n+2)`.
pub fn grassmannian_seed(n: usize) -> Result<GrassmannianSeed> {
    if n == 0 || n > MAX_GRASSMANNIAN_RANK {
        return Err(domain!("Grassmannian rank must be in 1..={MAX_GRASSMANNIAN_RANK}"));
    }
    let vertices = n + 3;
    let arcs: Vec<Arc> = (3..vertices).map(|k| (1, k)).chain(polygon_sides(vertices)).collect();
    let matrix = triangulation_matrix(vertices, &arcs, n)?;
    let names = arcs.iter().map(|&a| arc_name(a)).collect();
    Ok(GrassmannianSeed {
        n,
        vertices,
        seed: Seed::with_names(matrix, names)?,
        arcs,
    })
}

fn triangulate(vs: &[usize], vertices: usize, out: &mut Vec<Triangulation>) {
    if vs.len() < 3 {
        out.push(Triangulation::new());
        return;
    }
    let (first, last) = (vs[0], vs[vs.len() - 1]);
    for t in 1..vs.len() - 1 {
        let mut left = Vec::new();
        let mut right = Vec::new();
        triangulate(&vs[..=t], vertices, &mut left);
        triangulate(&vs[t..], vertices, &mut right);
        for l in &left {
            for r in &right {
                let mut tri: Triangulation = l.union(r).copied().collect();
                for arc in [sorted_arc(first, vs[t]), sorted_arc(vs[t], last)] {
                    if !is_side(vertices, arc) {
                        tri.insert(arc);
                    }
                }
                out.push(tri);
            }
        }
    }
}

/// All triangulations of the convex polygon with vertices `1..=vertices`.
pub fn triangulations(vertices: usize) -> Vec<Triangulation> {
    let vs: Vec<usize> = (1..=vertices).collect();
    let mut out = Vec::new();
    triangulate(&vs, vertices, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Flips `diagonal` inside `tri`: returns the other diagonal of the
/// quadrilateral formed by the two triangles containing it.
pub fn flip(vertices: usize, tri: &Triangulation, diagonal: Arc) -> Option<Arc> {
    let present = |a: usize, b: usize| {
        let arc = sorted_arc(a, b);
        is_side(vertices, arc) || tri.contains(&arc)
    };
    let (a, c) = diagonal;
    let apexes: Vec<usize> = (1..=vertices)
        .filter(|&v| v != a && v != c && present(a, v) && present(v, c))
        .collect();
    let inside = apexes.iter().copied().find(|&v| a < v && v < c)?;
    let outside = apexes.iter().copied().find(|&v| v < a || v > c)?;
    Some(sorted_arc(inside, outside))
}

/// The flip graph: triangulations and pairs of indices differing by a flip.
pub fn flip_graph(vertices: usize) -> (Vec<Triangulation>, BTreeSet<(usize, usize)>) {
    let tris = triangulations(vertices);
    let index: BTreeMap<&Triangulation, usize> = tris.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut edges = BTreeSet::new();
    for (i, t) in tris.iter().enumerate() {
        for &d in t {
            let new = flip(vertices, t, d).expect("interior diagonals flip");
            let mut u = t.clone();
            u.remove(&d);
            u.insert(new);
            let j = index[&u];
            edges.insert((i.min(j), i.max(j)));
        }
    }
    (tris, edges)
}

/// The short Plücker relation for a quadrilateral `p < q < r < s`, in the
/// canonical text form used by [`exchange_relation_text`].
pub fn plucker_relation_text(quad: [usize; 4]) -> String {
    let [p, q, r, s] = quad;
    relation_text(
        [(p, r), (q, s)],
        vec![(p, q), (r, s)],
        vec![(p, s), (q, r)],
    )
}

fn monomial_text(arcs: Vec<Arc>) -> String {
    let mut names: Vec<String> = arcs.into_iter().map(arc_name).collect();
    names.sort();
    if names.is_empty() {
        "1".into()
    } else {
        names.join("*")
    }
}

fn relation_text(lhs: [Arc; 2], plus: Vec<Arc>, minus: Vec<Arc>) -> String {
    let mut l = [arc_name(lhs[0]), arc_name(lhs[1])];
    l.sort();
    let mut r = [monomial_text(plus), monomial_text(minus)];
    r.sort();
    format!("{}*{} = {} + {}", l[0], l[1], r[0], r[1])
}

/// The exchange relation of `seed` in direction `k` written with chord
/// names: `old*new = monomial + monomial`.
pub fn exchange_relation_text(seed: &Seed, labels: &[Arc], k: usize, new: Arc) -> String {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (i, &arc) in labels.iter().enumerate() {
        let b = seed.matrix().b(i, k - 1);
        let side = if b > 0 { &mut plus } else { &mut minus };
        for _ in 0..b.unsigned_abs() {
            side.push(arc);
        }
    }
    relation_text([labels[k - 1], new], plus, minus)
}

/// Everything checked by [`verify_grassmannian`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GrassmannianReport {
    pub n: usize,
    pub triangulations: usize,
    pub flips: usize,
    pub clusters: usize,
    pub exchange_edges: usize,
    pub variables: usize,
    pub diagonals: usize,
    /// Exchange relations compared against the Plücker pattern.
    pub relations_checked: usize,
    /// Relations (as text) that did not match, with the expected text.
    pub relation_mismatches: Vec<String>,
    /// Mutated matrices differing from the matrix read off the flipped
    /// triangulation.
    pub matrix_mismatches: usize,
    /// Cluster variables whose value at a point of the Grassmannian differs
    /// from the Plücker coordinate of their chord.
    pub value_mismatches: usize,
    /// Clusters map bijectively onto triangulations.
    pub bijection: bool,
    /// Exchange-graph edges map exactly onto flips.
    pub edges_match: bool,
    pub complete: bool,
}

impl GrassmannianReport {
    pub fn passed(&self) -> bool {
        self.complete
            && self.bijection
            && self.edges_match
            && self.relation_mismatches.is_empty()
            && self.matrix_mismatches == 0
            && self.value_mismatches == 0
            && self.clusters == self.triangulations
            && self.exchange_edges == self.flips
            && self.variables == self.diagonals
    }
}

/// Plücker coordinate of `arc` at the point spanned by `(1, a)`, `a = 1..N`.
fn plucker_value(arc: Arc) -> Rational {
    Rational::from_integer(BigInt::from(arc.1 as i64 - arc.0 as i64))
}

/// Runs the labeled and unlabeled seed searches from the fan triangulation
/// and compares them with the flip graph of the polygon.
pub fn verify_grassmannian(n: usize, caps: ExchangeCaps) -> Result<GrassmannianReport> {
    let gs = grassmannian_seed(n)?;
    let vertices = gs.vertices;
    let sides = polygon_sides(vertices);
    let (tris, flips) = flip_graph(vertices);
    let tri_index: BTreeMap<&Triangulation, usize> = tris.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let point: Vec<Rational> = gs.arcs.iter().map(|&a| plucker_value(a)).collect();
    let mut report = GrassmannianReport {
        n,
        triangulations: tris.len(),
        flips: flips.len(),
        diagonals: vertices * (vertices - 3) / 2,
        ..Default::default()
    };

    // Labeled search: every seed carries the chord of each cluster variable.
    let mut labels_of_var: BTreeMap<LaurentPoly, Arc> = BTreeMap::new();
    let mut var_of_label: BTreeMap<Arc, LaurentPoly> = BTreeMap::new();
    let mut record = |x: &LaurentPoly, arc: Arc, report: &mut GrassmannianReport| {
        let a = *labels_of_var.entry(x.clone()).or_insert(arc);
        let b = var_of_label.entry(arc).or_insert_with(|| x.clone()).clone();
        if a != arc || b != *x || x.eval(&point) != plucker_value(arc) {
            report.value_mismatches += 1;
        }
    };
    let initial_labels: Vec<Arc> = gs.arcs[..n].to_vec();
    for (x, &arc) in gs.seed.cluster().iter().zip(&initial_labels) {
        record(x, arc, &mut report);
    }
    let mut visited: BTreeSet<Triangulation> = BTreeSet::from([initial_labels.iter().copied().collect()]);
    let mut queue = VecDeque::from([(gs.seed.clone(), initial_labels)]);
    while let Some((seed, labels)) = queue.pop_front() {
        let tri: Triangulation = labels.iter().copied().collect();
        let row_labels: Vec<Arc> = labels.iter().chain(&sides).copied().collect();
        for k in 1..=n {
            let new_arc = flip(vertices, &tri, labels[k - 1])
                .ok_or_else(|| Error::Internal(format!("{:?} does not flip", labels[k - 1])))?;
            let mut quad = [labels[k - 1].0, labels[k - 1].1, new_arc.0, new_arc.1];
            quad.sort_unstable();
            let expected = plucker_relation_text(quad);
            let actual = exchange_relation_text(&seed, &row_labels, k, new_arc);
            report.relations_checked += 1;
            if actual != expected {
                report.relation_mismatches.push(format!("{actual} (expected {expected})"));
            }
            let next = seed.mutate(k)?;
            let mut next_labels = labels.clone();
            next_labels[k - 1] = new_arc;
            let next_rows: Vec<Arc> = next_labels.iter().chain(&sides).copied().collect();
            if triangulation_matrix(vertices, &next_rows, n)? != *next.matrix() {
                report.matrix_mismatches += 1;
            }
            record(&next.cluster()[k - 1], new_arc, &mut report);
            if visited.insert(next_labels.iter().copied().collect()) {
                queue.push_back((next, next_labels));
            }
        }
    }

    // Unlabeled search, then transport clusters and edges through the labels.
    let graph = enumerate_from_seed(gs.seed, caps)?;
    report.complete = graph.complete;
    report.clusters = graph.clusters.len();
    report.exchange_edges = graph.edges.len();
    report.variables = graph.variables.len();
    let mut image = Vec::with_capacity(graph.clusters.len());
    for cluster in &graph.clusters {
        let tri: Option<Triangulation> = cluster
            .iter()
            .map(|&v| labels_of_var.get(&graph.variables[v]).copied())
            .collect();
        image.push(tri.as_ref().and_then(|t| tri_index.get(t)).copied());
    }
    let hit: BTreeSet<usize> = image.iter().flatten().copied().collect();
    report.bijection = image.iter().all(Option::is_some) && hit.len() == tris.len() && image.len() == tris.len();
    if report.bijection {
        let mapped: BTreeSet<(usize, usize)> = graph
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (image[a].unwrap_or(0), image[b].unwrap_or(0));
                (x.min(y), x.max(y))
            })
            .collect();
        report.edges_match = mapped == flips && graph.edges.len() == flips.len();
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (3..=8).map(|v| triangulations(v).len()).collect();
        assert_eq!(counts, [1, 2, 5, 14, 42, 132]);
        let (tris, flips) = flip_graph(5);
        assert_eq!((tris.len(), flips.len()), (5, 5));
        for t in &tris {
            let v: Vec<Arc> = t.iter().copied().collect();
            assert!(!arcs_cross(v[0], v[1]));
        }
    }

    #[test]
    fn quadrilateral_seed() {
        let gs = grassmannian_seed(1).unwrap();
        assert_eq!(gs.arcs, [(1, 3), (1, 2), (2, 3), (3, 4), (1, 4)]);
        assert_eq!(gs.seed.mutate(1).unwrap().render_variable(1), "(x12*x34 + x23*x14)/x13");
        let row_labels = gs.arcs.clone();
        assert_eq!(
            exchange_relation_text(&gs.seed, &row_labels, 1, (2, 4)),
            "x13*x24 = x12*x34 + x14*x23"
        );
    }

    #[test]
    fn flips() {
        let tri: Triangulation = [(1, 3), (1, 4)].into_iter().collect();
        assert_eq!(flip(5, &tri, (1, 3)), Some((2, 4)));
        assert_eq!(flip(5, &tri, (1, 4)), Some((3, 5)));
    }

    #[test]
    fn small_models_verify() {
        for n in 1..=3 {
            let r = verify_grassmannian(n, ExchangeCaps::default()).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        assert!(grassmannian_seed(0).is_err());
    }
}
