use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use anyhow::Result;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use graphqss::access::{
    authorized_witness, cc_generators, check_no_cloning, check_perfect, classify,
    qq_generators, qq_recovery_witness, unauthorized_witness, validate_authorized_witness,
    validate_unauthorized_witness, AccessError, AccessStructure, CcScheme, Classification,
    Method, QqScheme, Witness, CLASSIFY_CAP,
};
use graphqss::code::{
    code_to_graph, graph_to_code, DEFAULT_ENUMERATION_CAP, parse_code, same_group, serialize_code, standard_form,
    StabilizerCode,
};
use graphqss::graph::{random_orthogonal_graph, serialize_edge_list, to_dot, Graph, VertexSet};
use graphqss::oracle::{self, qq_roundtrip};
use graphqss::sim::{self, SecretLabel, Trace};

use crate::input::{
    build_scheme, coalition, fmt_set, input_error, load_graph, parse_list, read_file,
    scheme_or_input_error, Scheme,
};
use crate::{
    AccessArgs, ConvertArgs, Format, GenArgs, MethodArg, SchemeKind, SimulateArgs, VerifyArgs,
};

const SCHEMA: &str = "1";

fn print_json(value: &Value) {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn set_json(set: &VertexSet) -> Value {
    json!(set.iter().collect::<Vec<_>>())
}

fn edges_json(g: &Graph) -> Value {
    json!(g.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>())
}

fn unsigned(p: &graphqss::gf2::PauliOperator) -> String {
    let s = p.to_string();
    s.strip_prefix('+').map(str::to_string).unwrap_or(s)
}

// ---------------------------------------------------------------- convert

pub fn convert(args: &ConvertArgs) -> Result<ExitCode> {
    if let Some(path) = &args.code {
        let code = parse_code(&read_file(path)?).map_err(|e| input_error(format!("{path}: {e}")))?;
        return code_to_scheme(&code, args.format);
    }
    let (Some(path), Some(a)) = (&args.graph, &args.a) else {
        return Err(input_error("convert needs --code FILE, or --graph FILE with --a LIST"));
    };
    let graph = load_graph(path)?;
    let a = parse_list(a)?;
    let code = graph_to_code(&graph, &a).map_err(|e| input_error(e.to_string()))?;
    match args.format {
        Format::Json => print_json(&json!({
            "schema": SCHEMA,
            "n": code.n(),
            "k": code.k(),
            "generators": code.generators().iter().map(unsigned).collect::<Vec<_>>(),
            "logical_x": code.logical_x().map(unsigned),
            "logical_z": code.logical_z().map(unsigned),
        })),
        _ => print!("{}", serialize_code(&code)),
    }
    Ok(ExitCode::SUCCESS)
}

fn code_to_scheme(code: &StabilizerCode, format: Format) -> Result<ExitCode> {
    let std = standard_form(code).map_err(|e| input_error(e.to_string()))?;
    let (graph, a) = code_to_graph(&std);
    let log: Vec<String> = std.graph_transform_log().iter().map(|g| g.to_string()).collect();

    let graph_code = graph_to_code(&graph, &a).expect("code_to_graph yields a valid scheme");
    let replay: Vec<_> = code.generators().iter().map(|g| std.transform_to_graph(g)).collect();
    let equivalent = same_group(code.n(), &replay, graph.n(), graph_code.generators());

    match format {
        Format::Json => print_json(&json!({
            "schema": SCHEMA,
            "n": graph.n(),
            "edges": edges_json(&graph),
            "A": set_json(&a),
            "r": std.r,
            "qubit_permutation": std.qubit_permutation,
            "local_cliffords": log,
            "equivalent": equivalent,
        })),
        Format::Dot => print!("{}", to_dot(&graph, &a)),
        Format::Text => {
            let perm: Vec<String> = std.qubit_permutation.iter().map(|q| q.to_string()).collect();
            println!("# graph scheme for a [[{}, 1]] code", code.n());
            println!("# A = {}", fmt_set(&a));
            println!("# qubit permutation (position <- qubit): {}", perm.join(","));
            println!("# local Cliffords: {}", if log.is_empty() { "none".into() } else { log.join("; ") });
            println!("# stabilizer groups match after transform: {equivalent}");
            print!("{}", serialize_edge_list(&graph));
        }
    }
    Ok(if equivalent { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

// ----------------------------------------------------------------- access

fn method(arg: MethodArg) -> Method {
    match arg {
        MethodArg::Graphical => Method::Graphical,
        MethodArg::Generators => Method::Generators,
        MethodArg::Oracle => Method::Oracle,
        MethodArg::All => Method::All,
    }
}

fn feasible_methods(players: usize) -> Vec<&'static str> {
    [Method::Graphical, Method::Generators, Method::Oracle, Method::All]
        .into_iter()
        .filter(|&m| match m {
            Method::Generators => players <= DEFAULT_ENUMERATION_CAP,
            _ => players <= m.cap(),
        })
        .map(Method::name)
        .collect()
}

fn cap_error(err: AccessError, players: usize) -> anyhow::Error {
    match err {
        AccessError::CapExceeded { .. } => {
            let feasible = feasible_methods(players);
            let feasible = if feasible.is_empty() { "none".to_string() } else { feasible.join(", ") };
            input_error(format!("{err}; feasible methods: {feasible}"))
        }
        other => anyhow::Error::new(other),
    }
}

pub fn access(args: &AccessArgs) -> Result<ExitCode> {
    let scheme = scheme_or_input_error(&args.scheme)?;
    let cc = scheme.cc();
    let players = cc.player_count();
    let method = method(args.method);

    let exhaustive = players <= CLASSIFY_CAP;
    let (structure, classification) = if method == Method::Generators && !exhaustive {
        let acc = match &scheme {
            Scheme::Qq(q) => qq_generators(q),
            Scheme::Cc(c) => cc_generators(c),
        }
        .map_err(|e| cap_error(e, players))?;
        (acc, None)
    } else {
        let c = classify(cc, method).map_err(|e| cap_error(e, players))?;
        (c.minimal_structure(), Some(c))
    };

    let mut agreement = None;
    if method == Method::All {
        if let Scheme::Qq(q) = &scheme {
            let gens = qq_generators(q)?;
            if gens != structure {
                eprintln!("qq generators disagree with the classification");
                agreement = Some(false);
            }
        }
        agreement.get_or_insert(true);
    }

    let (kind, dealer, a) = match &scheme {
        Scheme::Qq(q) => ("qq", Some(q.dealer()), q.dealer_neighbors()),
        Scheme::Cc(c) => ("cc", None, c.to_labels(c.a())),
    };
    match args.format {
        Format::Json => {
            let mut out = json!({
                "schema": SCHEMA,
                "scheme": kind,
                "players": structure.players,
                "dealer": dealer,
                "A": set_json(&a),
                "minimal_authorized": structure.to_vecs(),
                "perfect": classification.as_ref().map(check_perfect),
                "no_cloning": check_no_cloning(&structure),
                "method": method.name(),
            });
            if let Some(c) = &classification {
                out["authorized_count"] = json!(c.authorized_count());
            }
            if let Some(ok) = agreement {
                out["agreement"] = json!(ok);
            }
            print_json(&out);
        }
        Format::Text => {
            for set in &structure.minimal_sets {
                println!("{}", fmt_set(set));
            }
        }
        Format::Dot => {
            let highlight = match &scheme {
                Scheme::Qq(q) => [q.dealer()].into_iter().collect(),
                Scheme::Cc(c) => c.a().clone(),
            };
            print!("{}", to_dot(cc_graph_for_dot(&scheme), &highlight));
        }
    }
    Ok(if agreement == Some(false) { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn cc_graph_for_dot(scheme: &Scheme) -> &Graph {
    match scheme {
        Scheme::Qq(q) => q.graph(),
        Scheme::Cc(c) => c.graph(),
    }
}

// --------------------------------------------------------------- simulate

pub fn simulate(args: &SimulateArgs) -> Result<ExitCode> {
    let scheme = scheme_or_input_error(&args.scheme)?;
    match (args.kind, &scheme) {
        (SchemeKind::Qq, Scheme::Qq(q)) => simulate_qq(args, q),
        (SchemeKind::Cc, Scheme::Cc(c)) => simulate_cc(args, c),
        (SchemeKind::Qq, _) => Err(input_error("qq simulation needs --dealer")),
        (SchemeKind::Cc, _) => Err(input_error("cc simulation needs --a")),
    }
}

fn refuse(format: Format, coalition: &VertexSet, blocker: &VertexSet) -> ExitCode {
    match format {
        Format::Json => print_json(&json!({
            "schema": SCHEMA,
            "coalition": set_json(coalition),
            "authorized": false,
            "blocking_set": set_json(blocker),
        })),
        _ => println!(
            "coalition {} is unauthorized: blocking set K = {}",
            fmt_set(coalition),
            fmt_set(blocker)
        ),
    }
    ExitCode::from(1)
}

fn simulate_qq(args: &SimulateArgs, q: &QqScheme) -> Result<ExitCode> {
    let share = q.share_scheme();
    let (labels, idx) = coalition(share, &args.set)?;
    let secret: SecretLabel = args.secret.parse().map_err(|e: sim::SimError| input_error(e.to_string()))?;
    let forced = match args.outcome {
        None => None,
        Some(0) => Some(false),
        Some(1) => Some(true),
        Some(o) => return Err(input_error(format!("--outcome must be 0 or 1, got {o}"))),
    };
    if let Some(k) = unauthorized_witness(share, &idx) {
        return Ok(refuse(args.format, &labels, &share.to_labels(&k)));
    }
    let d = qq_recovery_witness(q, &labels).expect("authorized coalitions have a recovery set");
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut encode_trace = Trace::default();
    let shares = sim::qq_encode(q, secret, forced, &mut rng, &mut encode_trace)?;
    let mut recover_trace = Trace::default();
    let (recovered, _) = sim::qq_recover(&shares, q, &d, &mut recover_trace)?;
    let ok = recovered == secret;
    match args.format {
        Format::Json => print_json(&json!({
            "schema": SCHEMA,
            "scheme": "qq",
            "dealer": q.dealer(),
            "coalition": set_json(&labels),
            "authorized": true,
            "recovery_set": set_json(&d),
            "seed": args.seed,
            "encode": encode_trace.lines,
            "recover": recover_trace.lines,
            "secret": secret.to_string(),
            "recovered": recovered.to_string(),
            "success": ok,
        })),
        _ => {
            let mut out = String::new();
            let _ = writeln!(out, "scheme: qq, dealer {}, coalition {}", q.dealer(), fmt_set(&labels));
            let _ = writeln!(out, "recovery set D = {}", fmt_set(&d));
            let _ = writeln!(out, "encode:");
            for l in &encode_trace.lines {
                let _ = writeln!(out, "  {l}");
            }
            let _ = writeln!(out, "recover:");
            for l in &recover_trace.lines {
                let _ = writeln!(out, "  {l}");
            }
            let _ = writeln!(out, "secret: {secret}");
            let _ = writeln!(out, "recovered: {recovered}");
            print!("{out}");
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn simulate_cc(args: &SimulateArgs, c: &CcScheme) -> Result<ExitCode> {
    let (labels, idx) = coalition(c, &args.set)?;
    let s = match args.secret.trim() {
        "0" => false,
        "1" => true,
        other => return Err(input_error(format!("cc secrets are 0 or 1, got {other:?}"))),
    };
    if args.outcome.is_some() {
        return Err(input_error("--outcome applies to qq simulations only"));
    }
    let Some(d) = authorized_witness(c, &idx) else {
        let k = unauthorized_witness(c, &idx).expect("every coalition has a witness");
        return Ok(refuse(args.format, &labels, &c.to_labels(&k)));
    };
    let mut state = sim::cc_encode(c, s);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut trace = Trace::default();
    let bit = sim::cc_recover(&mut state, &d, c, &mut rng, &mut trace)?;
    let ok = bit == s;
    let outcome = if bit { -1 } else { 1 };
    match args.format {
        Format::Json => print_json(&json!({
            "schema": SCHEMA,
            "scheme": "cc",
            "A": set_json(&c.to_labels(c.a())),
            "coalition": set_json(&labels),
            "authorized": true,
            "recovery_set": set_json(&c.to_labels(&d)),
            "trace": trace.lines,
            "outcome": outcome,
            "secret": u8::from(s),
            "recovered": u8::from(bit),
            "success": ok,
        })),
        _ => {
            println!("scheme: cc, A = {}, coalition {}", fmt_set(&c.to_labels(c.a())), fmt_set(&labels));
            println!("recovery set D = {}", fmt_set(&c.to_labels(&d)));
            for l in &trace.lines {
                println!("  {l}");
            }
            println!("outcome: {outcome:+}");
            println!("secret: {}", u8::from(s));
            println!("recovered: {}", u8::from(bit));
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

// ----------------------------------------------------------------- verify

struct Report {
    checks: Vec<Value>,
    pass: bool,
}

impl Report {
    fn new() -> Self {
        Self {
            checks: Vec::new(),
            pass: true,
        }
    }

    fn check(&mut self, name: &str, pass: bool, detail: Value) {
        self.pass &= pass;
        self.checks.push(json!({ "name": name, "pass": pass, "detail": detail }));
    }

    fn info(&mut self, name: &str, value: Value) {
        self.checks.push(json!({ "name": name, "info": value }));
    }
}

pub fn verify(args: &VerifyArgs) -> Result<ExitCode> {
    let mut report = Report::new();
    let scheme = match build_scheme(&args.scheme)? {
        Ok(s) => s,
        Err(e @ (AccessError::NotBipartite | AccessError::Orthogonality(_))) => {
            report.check("precondition", false, json!(e.to_string()));
            return Ok(finish(report, None));
        }
        Err(e) => return Err(input_error(e.to_string())),
    };
    let cc = scheme.cc();
    let players = cc.player_count();
    if players > CLASSIFY_CAP {
        return Err(input_error(format!(
            "verify classifies all subsets and handles at most {CLASSIFY_CAP} players, scheme has {players}"
        )));
    }
    if let Scheme::Qq(_) = scheme {
        report.check("precondition", true, json!("bipartite with orthogonal biadjacency"));
    }

    let use_oracle = players <= args.max_oracle.min(oracle::CLASSIFY_CAP);
    let classification = if use_oracle {
        classify(cc, Method::All)
    } else {
        classify(cc, Method::Graphical).and_then(|g| {
            let gens = classify(cc, Method::Generators)?;
            match (0..1u64 << players).find(|&m| g.is_authorized_mask(m) != gens.is_authorized_mask(m)) {
                None => Ok(g),
                Some(m) => Err(AccessError::Disagreement {
                    subset: cc.to_labels(&mask_set(m)).into_iter().collect(),
                    detail: "graphical and generators methods differ".into(),
                }),
            }
        })
    };
    let methods = if use_oracle { "graphical, generators, oracle" } else { "graphical, generators" };
    let classification = match classification {
        Ok(c) => {
            report.check("method_agreement", true, json!({ "methods": methods }));
            c
        }
        Err(AccessError::Disagreement { subset, detail }) => {
            report.check(
                "method_agreement",
                false,
                json!({ "methods": methods, "counterexample": subset, "detail": detail }),
            );
            return Ok(finish(report, None));
        }
        Err(e) => return Err(e.into()),
    };

    check_witnesses(&mut report, cc, &classification);
    report.check("monotone", classification.is_monotone(), Value::Null);
    let structure = classification.minimal_structure();
    let gens = cc_generators(cc)?;
    report.check("cc_generators_match", gens == structure, json!(gens.to_vecs()));

    match &scheme {
        Scheme::Qq(q) => {
            let qq = qq_generators(q)?;
            report.check("qq_generators_complete", qq == structure, json!(qq.to_vecs()));
            report.check("perfect", check_perfect(&classification), json!(classification.authorized_count()));
            report.check("no_cloning", check_no_cloning(&structure), Value::Null);
            check_odd_parity(&mut report, q, args.seed);
            check_roundtrips(&mut report, q, &structure, args.seed)?;
        }
        Scheme::Cc(_) => {
            report.info("perfect", json!(check_perfect(&classification)));
            report.info("no_cloning", json!(check_no_cloning(&structure)));
        }
    }
    Ok(finish(report, Some(&structure)))
}

fn mask_set(mask: u64) -> VertexSet {
    (0..64).filter(|b| mask >> b & 1 == 1).collect()
}

fn finish(report: Report, structure: Option<&AccessStructure>) -> ExitCode {
    print_json(&json!({
        "schema": SCHEMA,
        "pass": report.pass,
        "checks": report.checks,
        "minimal_authorized": structure.map(|s| s.to_vecs()),
    }));
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn check_witnesses(report: &mut Report, cc: &CcScheme, c: &Classification) {
    let bad = (0..1u64 << cc.player_count()).find(|&m| {
        let s = mask_set(m);
        let ok = match c.witness(m) {
            Some(Witness::Decoder(d)) => {
                validate_authorized_witness(cc, &s, d) && unauthorized_witness(cc, &s).is_none()
            }
            Some(Witness::Blocker(k)) => {
                validate_unauthorized_witness(cc, &s, k) && authorized_witness(cc, &s).is_none()
            }
            _ => false,
        };
        !ok
    });
    let detail = match bad {
        None => Value::Null,
        Some(m) => json!({ "counterexample": set_json(&cc.to_labels(&mask_set(m))) }),
    };
    report.check("decider_duality", bad.is_none(), detail);
}

/// Involution of `Odd` and even overlaps with same-part neighbourhoods.
fn check_odd_parity(report: &mut Report, q: &QqScheme, seed: u64) {
    let g = q.graph();
    let bip = q.bipartition();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failure = None;
    let mut tested = 0usize;
    for part in [&bip.left, &bip.right] {
        let subsets: Vec<u64> = if part.len() <= 12 {
            (0..1u64 << part.len()).collect()
        } else {
            (0..256).map(|_| rng.next_u64() & ((1u64 << part.len()) - 1)).collect()
        };
        for sub in subsets {
            let d: VertexSet = part
                .iter()
                .enumerate()
                .filter(|(b, _)| sub >> b & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            let odd = g.odd_neighborhood(&d);
            let involution = g.odd_neighborhood(&odd) == d;
            let even = part
                .iter()
                .filter(|v| !d.contains(v))
                .all(|&i| odd.intersection(&g.neighbors(i)).count().is_multiple_of(2));
            tested += 1;
            if !(involution && even) && failure.is_none() {
                failure = Some(d);
            }
        }
    }
    let detail = match &failure {
        None => json!({ "sets_tested": tested }),
        Some(d) => json!({ "sets_tested": tested, "counterexample": set_json(d) }),
    };
    report.check("odd_neighbourhood_parity", failure.is_none(), detail);
}

fn check_roundtrips(
    report: &mut Report,
    q: &QqScheme,
    structure: &AccessStructure,
    seed: u64,
) -> Result<()> {
    let witnesses: Vec<VertexSet> = structure
        .minimal_sets
        .iter()
        .map(|s| qq_recovery_witness(q, s).expect("minimal sets are authorized"))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = BTreeSet::new();
    for d in &witnesses {
        for secret in SecretLabel::ALL {
            for forced in [false, true] {
                let shares = sim::qq_encode(q, secret, Some(forced), &mut rng, &mut Trace::default())?;
                let (got, _) = sim::qq_recover(&shares, q, d, &mut Trace::default())?;
                if got != secret {
                    failures.insert(d.iter().copied().collect::<Vec<_>>());
                }
            }
        }
    }
    report.check(
        "tableau_roundtrip",
        failures.is_empty(),
        json!({ "witnesses": witnesses.len(), "failed": failures }),
    );

    if q.graph().n() <= oracle::MAX_QUBITS {
        let mut worst = 1.0f64;
        for d in &witnesses {
            for _ in 0..3 {
                let mut unit = || (rng.next_u32() as f64 / u32::MAX as f64) * 2.0 - 1.0;
                let a = num_complex(unit(), unit());
                let b = num_complex(unit(), unit());
                worst = worst.min(qq_roundtrip(q, d, a, b)?);
            }
        }
        report.check("dense_roundtrip", worst >= 1.0 - 1e-9, json!({ "min_fidelity": (worst * 1e12).round() / 1e12 }));
    }
    Ok(())
}

fn num_complex(re: f64, im: f64) -> graphqss::oracle::Complex {
    graphqss::oracle::Complex::new(re, im)
}

// -------------------------------------------------------------------- gen

pub fn gen(args: &GenArgs) -> Result<ExitCode> {
    if args.k == 0 {
        return Err(input_error("--k must be at least 1"));
    }
    let g = random_orthogonal_graph(args.k, args.seed);
    let text = format!(
        "# random bipartite graph, parts of size {}, orthogonal biadjacency, seed {}\n{}",
        args.k,
        args.seed,
        serialize_edge_list(&g)
    );
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| input_error(format!("cannot write {path}: {e}")))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
