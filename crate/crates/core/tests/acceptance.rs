//! Acceptance run: one PASS/FAIL line per criterion, each with its own time
//! bound. Runs without the libtest harness so the lines are always printed.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use graphqss::access::{
    authorized_witness, cc_generators, check_perfect, classify, qq_generators, qq_recovery_witness,
    unauthorized_witness, validate_authorized_witness, validate_unauthorized_witness, CcScheme,
    Method, QqScheme,
};
use graphqss::code::{
    code_to_graph, five_qubit_code, graph_to_code, random_code, same_group, standard_form,
};
use graphqss::graph::{
    bipartite_from_biadjacency, example_graph, random_orthogonal_matrix, Graph, VertexSet,
};
use graphqss::oracle::{
    check_authorized_dense, qq_pair, qq_roundtrip_branch, reduced_density, trace_distance,
    DEFAULT_TOL,
};
use graphqss::sim::{qq_encode, qq_recover, SecretLabel, Trace};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Id, name, time bound in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn set(items: &[usize]) -> VertexSet {
    items.iter().copied().collect()
}

fn mask_to_set(mask: u64, players: &[usize]) -> VertexSet {
    players
        .iter()
        .enumerate()
        .filter(|(b, _)| mask >> b & 1 == 1)
        .map(|(_, &p)| p)
        .collect()
}

fn example8_minimal() -> BTreeSet<VertexSet> {
    [[1, 2, 7], [1, 3, 5], [1, 4, 6], [2, 3, 4], [2, 5, 6], [3, 6, 7], [4, 5, 7]]
        .iter()
        .map(|s| set(s))
        .collect()
}

fn example8_scheme() -> QqScheme {
    QqScheme::new(example_graph(), 0).expect("example graph has orthogonal biadjacency")
}

/// `G∖0` built by hand from the edge list, vertex `v` stored at index `v - 1`.
fn example8_minus_dealer() -> CcScheme {
    let edges: Vec<(usize, usize)> = example_graph()
        .edges()
        .into_iter()
        .filter(|&(u, v)| u != 0 && v != 0)
        .map(|(u, v)| (u - 1, v - 1))
        .collect();
    let g = Graph::from_edges(7, &edges).unwrap();
    CcScheme::new(g, set(&[3, 4, 6])).unwrap().with_labels((1..8).collect())
}

fn criterion_1() -> Outcome {
    let expected = example8_minimal();
    let q = example8_scheme();
    let qq = qq_generators(&q).map_err(|e| e.to_string())?;
    let cc = cc_generators(&example8_minus_dealer()).map_err(|e| e.to_string())?;
    let oracle = classify(q.share_scheme(), Method::Oracle)
        .map_err(|e| e.to_string())?
        .minimal_structure();
    for (name, got) in [("qq_generators", &qq), ("cc_generators", &cc), ("oracle", &oracle)] {
        if got.minimal_sets != expected {
            return Err(format!("{name} gave {:?}", got.to_vecs()));
        }
    }
    Ok("qq_generators, cc_generators and oracle give the seven triples".into())
}

fn criterion_2() -> Outcome {
    let c = classify(example8_scheme().share_scheme(), Method::Graphical).map_err(|e| e.to_string())?;
    let full = (1u64 << 7) - 1;
    let mut authorized = 0;
    for m in 0..=full {
        let a = c.is_authorized_mask(m);
        if a == c.is_authorized_mask(full ^ m) {
            return Err(format!("subset mask {m:#b} and its complement share a status"));
        }
        authorized += usize::from(a);
    }
    if authorized != 64 || !check_perfect(&c) {
        return Err(format!("{authorized} authorized subsets"));
    }
    Ok("128 subsets, 64 authorized, complements always opposite".into())
}

fn criterion_3() -> Outcome {
    let q = example8_scheme();
    let witnesses: Vec<VertexSet> = example8_minimal()
        .iter()
        .map(|s| qq_recovery_witness(&q, s).ok_or(format!("no witness for {s:?}")))
        .collect::<Result<_, _>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 1.0f64;
    let mut runs = 0;
    for _ in 0..20 {
        let mut c = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let (a, b) = (c(), c());
        for d in &witnesses {
            for outcome in [false, true] {
                let f = qq_roundtrip_branch(&q, d, a, b, outcome).map_err(|e| e.to_string())?;
                worst = worst.min(f);
                runs += 1;
            }
        }
    }
    if worst < 1.0 - 1e-9 {
        return Err(format!("dense fidelity dropped to {worst:.3e}"));
    }
    let mut tableau = 0;
    for secret in SecretLabel::ALL {
        for d in &witnesses {
            for outcome in [false, true] {
                let shares = qq_encode(&q, secret, Some(outcome), &mut rng, &mut Trace::default())
                    .map_err(|e| e.to_string())?;
                let (got, _) =
                    qq_recover(&shares, &q, d, &mut Trace::default()).map_err(|e| e.to_string())?;
                if got != secret {
                    return Err(format!("tableau recovered {got} from {secret} via D={d:?}"));
                }
                tableau += 1;
            }
        }
    }
    Ok(format!("{runs} dense runs, min fidelity 1 - {:.1e}; {tableau} tableau runs exact", 1.0 - worst))
}

fn criterion_4() -> Outcome {
    let q = example8_scheme();
    let (psi0, psi1) = qq_pair(&q).map_err(|e| e.to_string())?;
    let c = classify(q.share_scheme(), Method::Graphical).map_err(|e| e.to_string())?;
    let n = psi0.n();
    let (mut max_td, mut max_cross) = (0.0f64, 0.0f64);
    for m in 0..1u64 << n {
        let t = mask_to_set(m, &(0..n).collect::<Vec<_>>());
        if c.is_authorized_mask(m) {
            let cross = graphqss::oracle::cross_partial_trace(&psi0, &psi1, &t);
            max_cross = max_cross.max(cross.iter().map(|e| e.norm()).fold(0.0, f64::max));
            if !check_authorized_dense(&psi0, &psi1, &t, DEFAULT_TOL) {
                return Err(format!("authorized {t:?} leaves coherence outside"));
            }
        } else {
            let td = trace_distance(&reduced_density(&psi0, &t).matrix, &reduced_density(&psi1, &t).matrix);
            max_td = max_td.max(td);
            if td > 1e-9 {
                return Err(format!("unauthorized {t:?} has trace distance {td:.3e}"));
            }
        }
    }
    Ok(format!("max trace distance {max_td:.1e}, max cross-trace entry {max_cross:.1e}"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..50 {
        let n = rng.gen_range(1..=10);
        let seed = rng.gen();
        let code = random_code(n, seed);
        let std = standard_form(&code).map_err(|e| format!("n={n} seed={seed}: {e}"))?;
        let diag = std.b_plus_c_a2t();
        if (0..std.r).any(|i| diag.get(i, i)) {
            return Err(format!("trial {trial}: diag(B + C A2^T) is nonzero"));
        }
        let (graph, a) = code_to_graph(&std);
        let graph_code = graph_to_code(&graph, &a).map_err(|e| e.to_string())?;
        let replay: Vec<_> = code.generators().iter().map(|g| std.transform_to_graph(g)).collect();
        if !same_group(n, &replay, n, graph_code.generators()) {
            return Err(format!("trial {trial} (n={n}, seed={seed}): replayed group differs"));
        }
        let scheme = CcScheme::new(graph, a).map_err(|e| e.to_string())?;
        let gens = cc_generators(&scheme).map_err(|e| e.to_string())?;
        let graphical = classify(&scheme, Method::Graphical).map_err(|e| e.to_string())?;
        let players: Vec<usize> = (0..n).collect();
        if let Some(m) = (0..1u64 << n)
            .find(|&m| gens.is_authorized(&mask_to_set(m, &players)) != graphical.is_authorized_mask(m))
        {
            return Err(format!("trial {trial}: generators and graphical differ on {m:#b}"));
        }
    }
    Ok("50 random codes, n <= 10".into())
}

fn criterion_6() -> Outcome {
    let std = standard_form(&five_qubit_code()).map_err(|e| e.to_string())?;
    let (graph, a) = code_to_graph(&std);
    let scheme = CcScheme::new(graph, a).map_err(|e| e.to_string())?;
    let triples: BTreeSet<VertexSet> = (0..1u64 << 5)
        .filter(|m| m.count_ones() == 3)
        .map(|m| mask_to_set(m, &[0, 1, 2, 3, 4]))
        .collect();
    let gens = cc_generators(&scheme).map_err(|e| e.to_string())?;
    if gens.minimal_sets != triples {
        return Err(format!("coset enumeration gave {:?}", gens.to_vecs()));
    }
    let oracle = classify(&scheme, Method::Oracle).map_err(|e| e.to_string())?.minimal_structure();
    if oracle.minimal_sets != triples {
        return Err(format!("dense oracle gave {:?}", oracle.to_vecs()));
    }
    Ok("all ten 3-subsets, by coset enumeration and dense oracle".into())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..100 {
        let k = rng.gen_range(1..=10);
        let p = random_orthogonal_matrix(k, rng.gen());
        let g = bipartite_from_biadjacency(&p);
        // Plain adjacency lists, so Odd is computed without the library.
        let adj: Vec<Vec<usize>> = (0..2 * k).map(|v| (0..2 * k).filter(|&u| g.has_edge(u, v)).collect()).collect();
        let odd = |d: &VertexSet| -> VertexSet {
            (0..2 * k).filter(|&v| adj[v].iter().filter(|u| d.contains(u)).count() % 2 == 1).collect()
        };
        let offset = if rng.gen() { 0 } else { k };
        let d: VertexSet = (offset..offset + k).filter(|_| rng.gen()).collect();
        let od = odd(&d);
        if odd(&od) != d {
            return Err(format!("trial {trial}: Odd(Odd(D)) != D for D={d:?}"));
        }
        for i in (offset..offset + k).filter(|i| !d.contains(i)) {
            if adj[i].iter().filter(|u| od.contains(u)).count() % 2 == 1 {
                return Err(format!("trial {trial}: |Odd(D) ∩ N_{i}| odd for D={d:?}"));
            }
        }
    }
    Ok("100 random instances, k <= 10".into())
}

fn corpus() -> Vec<(String, CcScheme)> {
    let mut out = Vec::new();
    for dealer in 0..8 {
        let q = QqScheme::new(example_graph(), dealer).unwrap();
        out.push((format!("eight-vertex example, dealer {dealer}"), q.share_scheme().clone()));
    }
    out.push(("eight-vertex example minus 0, A={4,5,7}".into(), example8_minus_dealer()));
    out.push(("K2, A={1}".into(), CcScheme::new(Graph::from_edges(2, &[(0, 1)]).unwrap(), set(&[1])).unwrap()));
    out.push((
        "path, A={1}".into(),
        CcScheme::new(Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap(), set(&[1])).unwrap(),
    ));
    let (g, a) = code_to_graph(&standard_form(&five_qubit_code()).unwrap());
    out.push(("five-qubit code".into(), CcScheme::new(g, a).unwrap()));
    for seed in 0..20u64 {
        let n = 1 + (seed as usize % 10);
        let (g, a) = code_to_graph(&standard_form(&random_code(n, seed)).unwrap());
        out.push((format!("random code n={n} seed={seed}"), CcScheme::new(g, a).unwrap()));
    }
    for seed in 0..10u64 {
        let k = 1 + (seed as usize % 5);
        let g = bipartite_from_biadjacency(&random_orthogonal_matrix(k, seed));
        let q = QqScheme::new(g, 0).unwrap();
        out.push((format!("orthogonal k={k} seed={seed}"), q.share_scheme().clone()));
    }
    out
}

fn criterion_8() -> Outcome {
    let corpus = corpus();
    let mut subsets = 0u64;
    for (name, scheme) in &corpus {
        let n = scheme.player_count();
        assert!(n <= 10);
        let idx: Vec<usize> = (0..n).collect();
        for m in 0..1u64 << n {
            let s = mask_to_set(m, &idx);
            match (authorized_witness(scheme, &s), unauthorized_witness(scheme, &s)) {
                (Some(d), None) if validate_authorized_witness(scheme, &s, &d) => {}
                (None, Some(k)) if validate_unauthorized_witness(scheme, &s, &k) => {}
                (d, k) => return Err(format!("{name}: S={s:?} gave D={d:?} K={k:?}")),
            }
            subsets += 1;
        }
    }
    Ok(format!("{} schemes, {subsets} subsets", corpus.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "eight-vertex example minimal sets", 10, criterion_1),
        (2, "perfectness", 10, criterion_2),
        (3, "QQ round trip", 30, criterion_3),
        (4, "secrecy and recoverability (dense)", 60, criterion_4),
        (5, "code to graph round trip", 120, criterion_5),
        (6, "five-qubit scheme", 5, criterion_6),
        (7, "odd-neighbourhood parity", 5, criterion_7),
        (8, "decider duality", 60, criterion_8),
    ];
    let mut failed = 0;
    for (id, name, bound, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let line = match result {
            Ok(detail) if elapsed <= Duration::from_secs(bound) => format!("PASS {id} {name}: {detail}"),
            Ok(detail) => format!("FAIL {id} {name}: over time bound ({detail})"),
            Err(why) => format!("FAIL {id} {name}: {why}"),
        };
        failed += usize::from(line.starts_with("FAIL"));
        println!("{line} [{:.2}s / {bound}s]", elapsed.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
