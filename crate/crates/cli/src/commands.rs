use std::fs;
use std::io::Read;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use unicon4::construct::{
    decompose_with, generate_with, replay_with, verify_with, ConstructError,
    ConstructionTrace, DecomposeOptions, GenerateOptions,
};
use unicon4::io::{format_edge_list, format_graph6, parse_edge_list, parse_graph6, to_dot};
use unicon4::transform::{
    apply_operation, is_quasi_4_compatible_with, is_removable_structural, reduce_edge_ordered, removable_edges,
    EndpointOrder, TransformError,
};
use unicon4::{
    are_isomorphic, connectivity_report, is_removable, Delta1Spec, Delta2Spec, Edge, Graph, OperationSpec,
    SearchBudget, Semantics, Vertex,
};

use crate::args::{Command, Global, InputFormat, Op, Order, OutputFormat};
use crate::report::{Failure, Outcome, Status};

type Res = Result<Outcome, Failure>;

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("library types serialize")
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::input("io", format!("reading standard input: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::input("io", format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::input("io", format!("{}: {e}", path.display())))
}

fn detect(path: &Path, text: &str) -> InputFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6" | "graph6") => InputFormat::Graph6,
        Some("txt" | "el" | "edges" | "edgelist") => InputFormat::Edges,
        _ => {
            let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
            if first.is_some_and(|l| l.starts_with("n ") || l == "n") {
                InputFormat::Edges
            } else {
                InputFormat::Graph6
            }
        }
    }
}

pub fn read_graph(path: &Path, format: Option<InputFormat>) -> Result<Graph, Failure> {
    let text = read_text(path)?;
    let parsed = match format.unwrap_or_else(|| detect(path, &text)) {
        InputFormat::Graph6 => {
            let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
            match lines.as_slice() {
                [one] => parse_graph6(one.strip_prefix(">>graph6<<").unwrap_or(one)),
                [] => return Err(Failure::input("parse", "no graph6 line found")),
                _ => return Err(Failure::input("parse", format!("expected one graph6 line, found {}", lines.len()))),
            }
        }
        InputFormat::Edges => parse_edge_list(&text),
    };
    parsed.map_err(|e| Failure::input("parse", format!("{}: {e}", path.display())))
}

fn parse_vertex(s: &str) -> Result<Vertex, Failure> {
    s.trim().parse().map_err(|_| Failure::input("arguments", format!("`{s}` is not a vertex id")))
}

fn parse_vertices(s: &str) -> Result<Vec<Vertex>, Failure> {
    s.split(',').map(parse_vertex).collect()
}

fn parse_triple(s: &str, name: &str) -> Result<[Vertex; 3], Failure> {
    let v = parse_vertices(s)?;
    v.try_into().map_err(|_| Failure::input("arguments", format!("{name} needs exactly three vertices, got `{s}`")))
}

pub fn parse_edge(s: &str) -> Result<Edge, Failure> {
    let parts: Vec<&str> = s.split([',', '-', ':']).collect();
    match parts.as_slice() {
        [u, v] => Ok(Edge::new(parse_vertex(u)?, parse_vertex(v)?)),
        _ => Err(Failure::input("arguments", format!("`{s}` is not an edge; write u,v"))),
    }
}

/// Accepts `u,v` per value, or `u-v` pairs separated by commas.
fn parse_edges(values: &[String]) -> Result<Vec<Edge>, Failure> {
    let mut out = Vec::new();
    for v in values {
        if v.contains(['-', ':']) {
            for part in v.split([',', ';']).filter(|p| !p.trim().is_empty()) {
                out.push(parse_edge(part)?);
            }
        } else {
            for part in v.split(';').filter(|p| !p.trim().is_empty()) {
                out.push(parse_edge(part)?);
            }
        }
    }
    Ok(out)
}

fn budget(g: &Global) -> Result<SearchBudget, Failure> {
    let d = SearchBudget::default();
    SearchBudget::new(g.max_paths.unwrap_or(d.max_paths), g.max_len.or(d.max_len))
        .map_err(|e| Failure::input("arguments", e.to_string()))
}

fn graph6_or_null(g: &Graph) -> Value {
    format_graph6(g).map(Value::String).unwrap_or(Value::Null)
}

fn describe(g: &Graph) -> Value {
    json!({
        "n": g.n(),
        "m": g.edge_count(),
        "graph6": graph6_or_null(g),
        "edges": to_value(&g.edges().collect::<Vec<_>>()),
    })
}

fn transform_failure(e: TransformError) -> Failure {
    if e.is_budget_exceeded() {
        return Failure::new(Status::BudgetExceeded, "budget_exceeded", e.to_string());
    }
    let message = e.to_string();
    match e {
        TransformError::SpecInvalid(v) => Failure::input("spec_invalid", message).with_detail(to_value(&v)),
        TransformError::ConnectivityTooLow { required, actual } => Failure::input("connectivity_condition", message)
            .with_detail(json!({ "required": required, "actual": actual })),
        TransformError::EndCoverageViolated(f) => Failure::input("end_coverage", message).with_detail(to_value(&f)),
        TransformError::EdgeAbsent(edge) => Failure::input("edge_absent", message).with_detail(to_value(&edge)),
        TransformError::NotFourConnected { kappa } => {
            Failure::input("not_four_connected", message).with_detail(json!({ "kappa": kappa }))
        }
        TransformError::OrderTooSmall { .. } => Failure::input("order", message),
        _ => Failure::input("invalid_input", message),
    }
}

fn construct_failure(e: ConstructError) -> Failure {
    let message = e.to_string();
    match e {
        ConstructError::BudgetExceeded { explored, partial } => Failure::new(Status::BudgetExceeded, "budget_exceeded", message)
            .with_detail(json!({ "explored": explored, "deepest_chain": to_value(&partial) })),
        ConstructError::NotUniform(w) => Failure::new(Status::Negative, "not_uniform", message).with_detail(to_value(&w)),
        ConstructError::NoDecomposition(c) => {
            Failure::new(Status::Negative, "no_decomposition", message).with_detail(to_value(&c))
        }
        ConstructError::StepInvalid { index, cause } => Failure::new(Status::Negative, "step_invalid", message)
            .with_detail(json!({ "index": index, "cause": cause })),
        ConstructError::CertMismatch { index, expected, actual } => Failure::new(Status::Negative, "cert_mismatch", message)
            .with_detail(json!({ "index": index, "expected": expected, "actual": actual })),
        ConstructError::UnsupportedSchema(_) => Failure::input("schema", message),
        ConstructError::OrderOutOfRange { .. } => Failure::input("order", message),
        ConstructError::Transform(t) => transform_failure(t),
        _ => Failure::input("invalid_input", message),
    }
}

pub fn run(cmd: &Command, g: &Global) -> Res {
    match cmd {
        Command::Analyze { path } => analyze(&read_graph(path, g.format)?),
        Command::Removable { path } => removable(&read_graph(path, g.format)?),
        Command::Reduce { path, edge, order } => reduce(&read_graph(path, g.format)?, edge, *order),
        Command::Apply { path, op, x, y, ex, ey, check_compat, output } => {
            let h = read_graph(path, g.format)?;
            let spec = build_spec(*op, x, y, ex, ey)?;
            apply(&h, &spec, *check_compat, output.as_deref(), g)
        }
        Command::Decompose { path, output } => decompose(&read_graph(path, g.format)?, output.as_deref(), g),
        Command::Replay { trace, against } => {
            let other = against.as_deref().map(|p| read_graph(p, g.format)).transpose()?;
            replay(trace, other.as_ref(), g)
        }
        Command::Gen { max_n } => gen(*max_n, g),
        Command::Verify { max_n } => verify(*max_n, g),
        Command::Convert { path, to, output } => convert(&read_graph(path, g.format)?, *to, output.as_deref()),
    }
}

fn analyze(g: &Graph) -> Res {
    let r = connectivity_report(g).map_err(|e| Failure::input("invalid_input", e.to_string()))?;
    let n = g.n();
    let pairs = || (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let argmin = pairs().find(|&(u, v)| r.local[u][v] == r.min_local);
    let argmax = pairs().find(|&(u, v)| r.local[u][v] == r.max_local);
    let result = json!({
        "graph": describe(g),
        "kappa": r.kappa,
        "min_local": { "value": r.min_local, "pair": argmin },
        "max_local": { "value": r.max_local, "pair": argmax },
        "uniform": r.uniform4,
        "witness": to_value(&r.witness),
        "local": to_value(&r.local),
    });
    Ok(Outcome::verdict(r.uniform4, result))
}

fn removable(g: &Graph) -> Res {
    let list = removable_edges(g).map_err(transform_failure)?;
    let mut rows = Vec::new();
    let mut agree = true;
    for e in g.edges() {
        let direct = is_removable(g, e).map_err(transform_failure)?;
        let structural = if g.n() >= 7 { Some(is_removable_structural(g, e).map_err(transform_failure)?) } else { None };
        agree &= structural.is_none_or(|s| s == direct);
        rows.push(json!({ "edge": to_value(&e), "direct": direct, "structural": structural }));
    }
    Ok(Outcome::ok(json!({
        "graph": describe(g),
        "removable": to_value(&list),
        "count": list.len(),
        "edges": rows,
        "forms_agree": agree,
    })))
}

fn reduce(g: &Graph, edge: &str, order: Order) -> Res {
    let e = parse_edge(edge)?;
    let order = match order {
        Order::Lower => EndpointOrder::LowerFirst,
        Order::Higher => EndpointOrder::HigherFirst,
    };
    let r = reduce_edge_ordered(g, e, order).map_err(transform_failure)?;
    let removable = is_removable(g, e).map_err(transform_failure)?;
    Ok(Outcome::ok(json!({
        "edge": to_value(&e),
        "graph": describe(&r.graph),
        "map": to_value(&r.map),
        "suppressed": r.suppressed,
        "removable": removable,
    })))
}

fn build_spec(op: Op, x: &str, y: &str, ex: &[String], ey: &[String]) -> Result<OperationSpec, Failure> {
    let x_set = parse_triple(x, "--x")?;
    let ex_edges = parse_edges(ex)?;
    Ok(match op {
        Op::Delta1 => {
            if !ey.is_empty() {
                return Err(Failure::input("arguments", "--ey only applies to delta2"));
            }
            OperationSpec::Delta1(Delta1Spec { x_set, y_vertex: parse_vertex(y)?, ex_edges })
        }
        Op::Delta2 => OperationSpec::Delta2(Delta2Spec {
            x_set,
            y_set: parse_triple(y, "--y")?,
            ex_edges,
            ey_edges: parse_edges(ey)?,
        }),
    })
}

fn apply(h: &Graph, spec: &OperationSpec, check: bool, output: Option<&Path>, g: &Global) -> Res {
    let out = apply_operation(h, spec).map_err(transform_failure)?;
    let mut result = json!({ "spec": to_value(spec), "graph": describe(&out) });
    if check {
        let report = is_quasi_4_compatible_with(h, spec, &budget(g)?, &Semantics::default()).map_err(transform_failure)?;
        result["compatible"] = json!(report.compatible);
        if !report.compatible {
            result["violation"] = to_value(&report.violation);
            return Ok(Outcome::negative(result));
        }
    }
    result["uniform"] = json!(unicon4::connectivity::is_uniform4(&out));
    if let Some(p) = output {
        let text = format_graph6(&out).map_err(|e| Failure::input("order", e.to_string()))?;
        write_text(p, &(text + "\n"))?;
    }
    Ok(Outcome::ok(result))
}

fn decompose_options(g: &Global) -> Result<DecomposeOptions, Failure> {
    let d = DecomposeOptions::default();
    Ok(DecomposeOptions { budget: budget(g)?, max_candidates: g.search_budget.unwrap_or(d.max_candidates), ..d })
}

fn decompose(graph: &Graph, output: Option<&Path>, g: &Global) -> Res {
    let t = decompose_with(graph, &decompose_options(g)?).map_err(construct_failure)?;
    if let Some(p) = output {
        write_text(p, &(t.to_json() + "\n"))?;
    }
    Ok(Outcome::ok(json!({
        "base": to_value(&t.base),
        "steps": t.steps.len(),
        "final_order": t.final_order(),
        "trace": to_value(&t),
    })))
}

fn replay(path: &Path, against: Option<&Graph>, g: &Global) -> Res {
    let text = read_text(path)?;
    let t = ConstructionTrace::from_json(&text)
        .map_err(|e| Failure::input("parse", format!("{}: {e}", path.display())))?;
    let out = replay_with(&t, &budget(g)?, &Semantics::default()).map_err(construct_failure)?;
    let mut result = json!({ "base": to_value(&t.base), "steps": t.steps.len(), "graph": describe(&out) });
    let Some(h) = against else { return Ok(Outcome::ok(result)) };
    let same = are_isomorphic(&out, h).map_err(|e| Failure::input("order", e.to_string()))?;
    result["isomorphic"] = json!(same);
    Ok(Outcome::verdict(same, result))
}

fn gen(max_n: usize, g: &Global) -> Res {
    let opts = GenerateOptions { budget: budget(g)?, ..GenerateOptions::default() };
    let r = generate_with(max_n, &opts).map_err(construct_failure)?;
    let orders: Vec<Value> = r
        .by_order
        .iter()
        .map(|(n, certs)| json!({ "order": n, "count": certs.len(), "certs": to_value(certs) }))
        .collect();
    let result = json!({
        "max_n": max_n,
        "total": r.all_certs().len(),
        "orders": orders,
        "stats": to_value(&r.stats),
        "partial": r.partial,
        "unsound": to_value(&r.unsound),
    });
    if r.partial {
        return Ok(Outcome { status: Status::BudgetExceeded, result: Some(result), error: None });
    }
    Ok(Outcome::verdict(r.unsound.is_empty(), result))
}

fn verify(max_n: usize, g: &Global) -> Res {
    let opts = GenerateOptions { budget: budget(g)?, ..GenerateOptions::default() };
    let r = verify_with(max_n, &opts, &decompose_options(g)?).map_err(construct_failure)?;
    let mut result = to_value(&r);
    result["symmetric_difference"] = to_value(&r.symmetric_difference());
    if r.generation_partial || r.checks.iter().any(|c| c.budget_exceeded) {
        return Ok(Outcome { status: Status::BudgetExceeded, result: Some(result), error: None });
    }
    Ok(Outcome::verdict(r.holds, result))
}

fn convert(graph: &Graph, to: OutputFormat, output: Option<&Path>) -> Res {
    let text = match to {
        OutputFormat::Graph6 => format_graph6(graph).map_err(|e| Failure::input("order", e.to_string()))? + "\n",
        OutputFormat::Edges => format_edge_list(graph),
        OutputFormat::Dot => to_dot(graph),
    };
    if let Some(p) = output {
        write_text(p, &text)?;
    }
    Ok(Outcome::ok(json!({ "format": format!("{to:?}").to_lowercase(), "text": text })))
}
