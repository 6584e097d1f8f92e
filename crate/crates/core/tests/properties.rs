mod common;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use lne_core::arith::{int, lcm, Int};
use lne_core::cycles::lne_cycle_data;
use lne_core::graph::{blow_up_double_point, intersection, is_negative_definite, validate_graph, Divisor};
use lne_core::metric::{edge_length, inner_rates};
use lne_core::nash::{nash_refine, RefineOptions};
use lne_core::pipeline::PipelineRun;
use lne_core::{VertexMap, WeightedGraph};
use num_traits::Signed;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph_from_seed(seed: u64) -> WeightedGraph {
    common::random_graph(&mut ChaCha8Rng::seed_from_u64(seed), 6)
}

fn accepted_from_seed(seed: u64) -> Option<(WeightedGraph, PipelineRun)> {
    let g = graph_from_seed(seed);
    common::accepted_run(&g).map(|run| (g, run))
}

fn random_divisor(rng: &mut impl Rng, n: usize) -> Divisor {
    VertexMap::from_vec((0..n).map(|_| int(rng.gen_range(-5..=5))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn intersection_is_symmetric_and_bilinear(seed in any::<u64>()) {
        let g = graph_from_seed(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let n = g.vertex_count();
        let (a, b, c) = (random_divisor(&mut rng, n), random_divisor(&mut rng, n), random_divisor(&mut rng, n));
        prop_assert_eq!(intersection(&g, &a, &b).unwrap(), intersection(&g, &b, &a).unwrap());
        let sum = VertexMap::from_fn(n, |v| &a[v] + &b[v]);
        prop_assert_eq!(
            intersection(&g, &sum, &c).unwrap(),
            intersection(&g, &a, &c).unwrap() + intersection(&g, &b, &c).unwrap()
        );
    }

    #[test]
    fn blowup_preserves_negative_definiteness(seed in any::<u64>()) {
        let g = graph_from_seed(seed);
        prop_assume!(validate_graph(&g).is_ok() && g.edge_count() > 0);
        let data = lne_cycle_data(&g).unwrap();
        let m = match data.accepted() {
            Some(d) => d.multiplicities().clone(),
            None => Divisor::ones(&g),
        };
        let e = seed as usize % g.edge_count();
        let b = blow_up_double_point(&g, &m, &g.edge(e).id.clone()).unwrap();
        prop_assert!(is_negative_definite(&b.graph));
        prop_assert_eq!(b.graph.vertex_count(), g.vertex_count() + 1);
        prop_assert_eq!(b.graph.edge_count(), g.edge_count() + 1);
    }

    #[test]
    fn refinement_keeps_rates_and_is_idempotent(seed in any::<u64>()) {
        let Some((g, run)) = accepted_from_seed(seed) else { return Ok(()) };
        let r = run.refined.unwrap();
        let before = run.rates.unwrap();
        for v in 0..g.vertex_count() {
            let w = r.graph.vertex_index(g.vertex_id(v)).unwrap();
            prop_assert_eq!(before.rate(v), r.rates.rate(w));
        }
        // recomputing rates from scratch on the refined graph agrees
        let fresh = inner_rates(&r.graph, &r.cycles).unwrap();
        prop_assert_eq!(&fresh.rates, &r.rates.rates);
        let again = nash_refine(&r.graph, &r.cycles, &r.rates, RefineOptions::default())
            .unwrap()
            .unwrap();
        prop_assert_eq!(again.blowups, 0);
        prop_assert_eq!(&again.graph, &r.graph);
        prop_assert_eq!(&again.p_vector, &r.p_vector);
    }

    #[test]
    fn refined_edges_are_tight(seed in any::<u64>()) {
        let Some((_, run)) = accepted_from_seed(seed) else { return Ok(()) };
        let r = run.refined.unwrap();
        let m = r.cycles.multiplicities();
        for e in r.graph.edges() {
            let [a, b] = e.ends;
            let gap = (r.rates.rate(a) - r.rates.rate(b)).abs();
            prop_assert_eq!(gap, edge_length(&m[a], &m[b]));
        }
    }

    #[test]
    fn weighted_p_sum_is_preserved(seed in any::<u64>()) {
        // Σ m_v p_v = m·K + 2 m·L, and the right side does not change under
        // double-point blowups.
        let Some((g, run)) = accepted_from_seed(seed) else { return Ok(()) };
        let r = run.refined.unwrap();
        let c = run.cycles.unwrap();
        let mk_2ml = |g: &WeightedGraph, m: &Divisor, l: &Divisor| -> Int {
            (0..g.vertex_count())
                .map(|v| {
                    let k = int(g.valency(v) as i64 + 2 * g.vertex(v).genus - 2);
                    &m[v] * (k + &l[v] * 2)
                })
                .sum()
        };
        let lhs: Int = (0..r.graph.vertex_count())
            .map(|v| &r.cycles.multiplicities()[v] * &r.p_vector[v])
            .sum();
        prop_assert_eq!(&lhs, &mk_2ml(&r.graph, r.cycles.multiplicities(), r.cycles.l_vector()));
        prop_assert_eq!(&lhs, &mk_2ml(&g, c.multiplicities(), c.l_vector()));
    }

    #[test]
    fn equivalence_matches_its_definition(seed in any::<u64>()) {
        let Some((_, run)) = accepted_from_seed(seed) else { return Ok(()) };
        let r = run.refined.unwrap();
        let d = run.discriminant.unwrap();
        let pp = &d.principal_part;
        let q = |v: usize| r.rates.rate(v).clone();
        let pp_edges: Vec<[usize; 2]> = pp.edges.iter().map(|&e| r.graph.edge(e).ends).collect();
        // reach(v) inside {u in pp : q_u >= q_v}
        let reach = |v: usize| -> BTreeSet<usize> {
            let mut seen = BTreeSet::from([v]);
            let mut queue = VecDeque::from([v]);
            while let Some(u) = queue.pop_front() {
                for &[a, b] in &pp_edges {
                    let w = if a == u { b } else if b == u { a } else { continue };
                    if q(w) >= q(v) && seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            seen
        };
        for &v in &pp.vertices {
            let rv = reach(v);
            for &w in &pp.vertices {
                let expected = q(v) == q(w) && rv.contains(&w);
                let actual = d.partition.class_of(v) == d.partition.class_of(w);
                prop_assert_eq!(expected, actual, "{} {}", r.graph.vertex_id(v), r.graph.vertex_id(w));
            }
        }
        let sizes: usize = d.partition.classes.iter().map(|c| c.members.len()).sum();
        prop_assert_eq!(sizes, pp.vertices.len());
    }

    #[test]
    fn branch_count_is_total_p(seed in any::<u64>()) {
        let Some((_, run)) = accepted_from_seed(seed) else { return Ok(()) };
        let r = run.refined.unwrap();
        let d = run.discriminant.unwrap();
        let total: Int = r.p_vector.iter().sum();
        prop_assert_eq!(int(d.branches.len() as i64), total);
        let edges: BTreeMap<[usize; 2], Int> = d.eggers_wall.edges.iter().map(|e| (e.ends, e.index.clone())).collect();
        for e in &d.quotient.edges {
            let [a, b] = e.ends;
            let i = lcm(&d.quotient.classes[a].multiplicity, &d.quotient.classes[b].multiplicity);
            prop_assert_eq!(edges.get(&[a, b]), Some(&i));
        }
        prop_assert!(d.eggers_wall.edges.iter().all(|e| e.index >= int(1)));
    }
}
