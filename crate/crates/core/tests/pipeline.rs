mod common;

use common::{random_bipartite, random_coi, random_dims, random_graph, rng, Kinds};
use gridstate::criteria::{classify_hybrid, HybridClass, ImpliedVerdict, Interpretation};
use gridstate::format::{check, parse_spec, recompute_verdict, verify, Spec, Verdict, VerifyOptions};
use gridstate::graph::{cross_hatch, v, EdgeKind, GridGraph, Hyperedge, Hypergraph, Weight};
use gridstate::quantum::{density_of_graph, product_vector_range_search};
use gridstate::surgery::{col_surgery, default_max_depth, prove_entangled, replay, row_surgery, step_is_sound, Axis};
use gridstate::Error;
use rand::Rng;

/// Random graph on which surgery is defined: pure L, bipartite pure Q, or COI.
fn surgery_input(r: &mut impl Rng) -> GridGraph {
    let (rows, cols) = random_dims(r, 3, 3);
    match r.gen_range(0..3) {
        0 => {
            let edges = r.gen_range(1..=5);
            let weighted = r.gen_bool(0.3);
            random_graph(r, rows, cols, edges, Kinds::L, weighted)
        }
        1 => random_bipartite(r, rows, cols, Kinds::Q, false),
        _ => random_coi(r, 3, 3, false),
    }
}

#[test]
fn every_surgery_on_random_graphs_is_sound() {
    let mut r = rng(101);
    let mut executed = 0;
    for _ in 0..150 {
        let g = surgery_input(&mut r);
        if classify_hybrid(&g) == HybridClass::Coi {
            continue;
        }
        for pivot in g.isolated_vertices() {
            for axis in [Axis::Row, Axis::Col] {
                let result = match axis {
                    Axis::Row => row_surgery(&g, pivot),
                    Axis::Col => col_surgery(&g, pivot),
                };
                let (child, step) = match result {
                    Ok(ok) => ok,
                    Err(Error::NoOpSurgery(_)) => continue,
                    Err(e) => panic!("{g}: {e}"),
                };
                executed += 1;
                assert!(step_is_sound(&g, &step, &child), "{g}: {axis} {pivot}");
                assert!(step.added.len() < step.removed.len(), "termination guard");
                let on_line = |x: gridstate::graph::VertexId| match axis {
                    Axis::Row => x.row == pivot.row,
                    Axis::Col => x.col == pivot.col,
                };
                for e in &step.removed {
                    assert!(on_line(e.a) || on_line(e.b), "cut an edge off the line");
                }
                for e in g.edges().filter(|e| !on_line(e.a) && !on_line(e.b)) {
                    assert!(child.has_pair(e.a, e.b), "lost {e}");
                }
            }
        }
    }
    assert!(executed > 100, "only {executed} surgeries ran");
}

#[test]
fn proofs_replay_and_are_deterministic() {
    let mut r = rng(102);
    let mut proven = 0;
    for _ in 0..80 {
        let g = surgery_input(&mut r);
        let tree = prove_entangled(&g, default_max_depth(&g)).unwrap();
        replay(&tree).unwrap();
        assert_eq!(prove_entangled(&g, default_max_depth(&g)).unwrap(), tree);
        for (parent, branch, child) in tree.steps() {
            assert!(step_is_sound(parent, &branch.step, child));
        }
        proven += usize::from(tree.proven);
        if !tree.proven {
            assert!(tree.reason().is_some());
        }
    }
    assert!(proven > 0);
}

#[test]
fn reports_agree_with_numerics() {
    let mut r = rng(103);
    let mut seen = [0usize; 4];
    for _ in 0..120 {
        let g = surgery_input(&mut r);
        if g.is_edgeless() {
            continue;
        }
        let report = verify(&Spec::Graph(g.clone()), &VerifyOptions::default()).unwrap();
        assert_eq!(recompute_verdict(&report), report.verdict);
        let proven = report.proof.as_ref().is_some_and(|t| t.proven);
        let ppt = report.criterion.ppt.unwrap();
        if proven && !ppt.is_ppt {
            assert_eq!(report.verdict, Verdict::EntangledNpt);
        }
        if proven && ppt.is_ppt {
            assert_eq!(report.verdict, Verdict::BoundEntangled, "{g}");
        }
        if report.criterion.implied_verdict == ImpliedVerdict::PptCertified {
            assert!(ppt.is_ppt, "{g}: certified but min_eig {}", ppt.min_eig);
        }
        seen[match report.verdict {
            Verdict::EntangledNpt => 0,
            Verdict::BoundEntangled => 1,
            Verdict::PptUncertified => 2,
            Verdict::Inconclusive => 3,
        }] += 1;
    }
    assert!(seen[0] > 0 && seen[2] > 0, "{seen:?}");
}

#[test]
fn reports_are_reproducible() {
    let g = cross_hatch(4, 3, EdgeKind::Q, &Weight::ratio(7, 3).unwrap()).unwrap();
    let opts = VerifyOptions {
        resolution: Some(8),
        ..VerifyOptions::default()
    };
    let a = verify(&Spec::Graph(g.clone()), &opts).unwrap().to_json();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = pool.install(|| verify(&Spec::Graph(g), &opts).unwrap().to_json());
    assert_eq!(a, b);
}

#[test]
fn gi_graphs_are_not_searched() {
    // an odd Q-cycle has no balanced signing
    let spec = parse_spec("grid 2 2\nQ (0,0) (0,1)\nQ (0,1) (1,0)\nQ (1,0) (0,0)\n").unwrap();
    let report = verify(&spec, &VerifyOptions::default()).unwrap();
    assert!(report.proof.is_none());
    assert!(report.proof_note.as_deref().unwrap().contains("surgery not run"));
    assert_eq!(recompute_verdict(&report), report.verdict);
}

#[test]
fn explicit_interpretations() {
    let spec = parse_spec("grid 3 3\nQ (0,0) (1,2)\nQ (0,1) (2,0)\nQ (0,2) (2,1)\nQ (1,0) (2,2)\n").unwrap();
    let auto = check(&spec, &VerifyOptions::default()).unwrap();
    assert_eq!(auto.criterion.interpretation, Interpretation::Q);
    let hybrid = check(
        &spec,
        &VerifyOptions {
            interpretation: Some(Interpretation::Hybrid),
            ..VerifyOptions::default()
        },
    )
    .unwrap();
    assert_eq!(hybrid.criterion.interpretation, Interpretation::Hybrid);
    assert!(hybrid.criterion.hybrid_class.is_some());
    let wrong = check(
        &spec,
        &VerifyOptions {
            interpretation: Some(Interpretation::L),
            ..VerifyOptions::default()
        },
    );
    assert!(matches!(wrong, Err(Error::InterpretationMismatch { .. })));
}

#[test]
fn hypergraph_reports_carry_numeric_verdicts() {
    let mut h = Hypergraph::new(3, 3).unwrap();
    h.add(Hyperedge::new(v(0, 0), v(1, 1), v(2, 2)).unwrap()).unwrap();
    let report = verify(&Spec::Hypergraph(h), &VerifyOptions::default()).unwrap();
    assert_eq!(report.criterion.interpretation, Interpretation::Hypergraph);
    assert!(report.proof.is_none());
    let ppt = report.criterion.ppt.unwrap();
    assert!(!ppt.is_ppt);
    assert_eq!(report.verdict, Verdict::EntangledNpt);
}

#[test]
fn range_search_recovers_product_edges() {
    // every edge sits inside one row, so the state is a mixture of products
    let spec = parse_spec("grid 2 3\nL (0,0) (0,1)\nQ (1,1) (1,2)\n").unwrap();
    let Spec::Graph(g) = spec else { unreachable!() };
    let rho = density_of_graph(&g).unwrap();
    let found = product_vector_range_search(&rho, 16).unwrap();
    assert!(found.len() >= rho.rank(), "{} witnesses for rank {}", found.len(), rho.rank());
    for p in &found {
        assert!(p.residual < 1e-8);
        let na: f64 = p.factor_a.iter().map(|x| x * x).sum();
        let nb: f64 = p.factor_b.iter().map(|x| x * x).sum();
        assert!((na - 1.0).abs() < 1e-9 && (nb - 1.0).abs() < 1e-9);
    }
    assert!(matches!(product_vector_range_search(&rho, 4), Err(Error::Precondition(_))));
}
