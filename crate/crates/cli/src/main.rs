use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use plumbkit::analysis::{mine_forbidden, property_xk};
use plumbkit::appendix::appendix_case;
use plumbkit::conditions::{check_17, check_working_conditions};
use plumbkit::embeddings::{all_config, classify, enumerate_embeddings, Classification};
use plumbkit::fillings::{bad_vertex_tuples, count_fillings, filling_pi1};
use plumbkit::lattice::{complement, gram_of_graph, is_primitive, split_units};
use plumbkit::{dualize, evaluate, expand, ChainWeights, Convention, Error, LensSpace, LinearGraph};

#[derive(Parser)]
#[command(name = "plumbkit", version, about = "Linear plumbings of lens spaces: duals, embeddings, fillings")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Sign convention of graph arguments.
    #[arg(long, global = true, value_enum)]
    convention: Option<Conv>,

    /// Worker threads for batch work.
    #[arg(long, global = true, env = "PLUMBKIT_THREADS")]
    threads: Option<usize>,

    /// Exit with status 1 when a check fails.
    #[arg(long, global = true)]
    strict: bool,

    /// Include wall-clock timings in the output.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Conv {
    Plumbing,
    Dual,
}

impl From<Conv> for Convention {
    fn from(c: Conv) -> Self {
        match c {
            Conv::Plumbing => Convention::Plumbing,
            Conv::Dual => Convention::Dual,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Continued fraction expansion of p/q.
    Expand { fraction: String },
    /// Evaluate a chain a1,a2,... back to p/q.
    Eval {
        #[arg(allow_hyphen_values = true)]
        chain: String,
    },
    /// Dual graph.
    Dual {
        #[arg(allow_hyphen_values = true)]
        graph: String,
        /// Also print the adjusted weights of the dual.
        #[arg(long)]
        adjusted: bool,
    },
    /// Intersection matrix of a graph.
    Gram {
        #[arg(allow_hyphen_values = true)]
        graph: String,
    },
    /// Forbidden configurations (plumbing side) or working conditions (dual side).
    Check {
        #[arg(allow_hyphen_values = true)]
        graph: String,
        #[arg(long, value_enum, default_value = "plumbing")]
        side: Conv,
    },
    /// Embeddings of a dual graph into a standard diagonal lattice.
    Embed {
        #[arg(allow_hyphen_values = true)]
        graph: String,
        #[arg(long)]
        max_dim: Option<usize>,
        /// List every embedding.
        #[arg(long)]
        show: bool,
    },
    /// Orthogonal complement of one embedding class.
    Complement {
        #[arg(allow_hyphen_values = true)]
        graph: String,
        /// 1-based index in the order printed by `embed --show`.
        #[arg(long)]
        class: usize,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Enumerate and classify a batch of configurations.
    Allconfig(AllconfigArgs),
    /// Property X_k for a connected sum such as 9/8,4/1.
    Xk {
        lens: String,
        #[arg(long)]
        k: usize,
    },
    /// Minimal configurations failing X_k.
    Mine {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 6)]
        max_weight: u32,
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
    },
    /// Minimal symplectic fillings of L(p,q).
    Fillings { fraction: String },
    /// Run the acceptance checks.
    Verify {
        /// Only the appendix batches, one line per case.
        #[arg(long)]
        appendix: bool,
        /// Run a single check.
        #[arg(long)]
        criterion: Option<usize>,
    },
}

#[derive(Args)]
struct AllconfigArgs {
    /// One of the thirteen built-in batches.
    #[arg(long, conflicts_with_all = ["bad", "bad_pos", "left", "right"])]
    case: Option<usize>,
    /// Bad part weights, e.g. 2,4,2.
    #[arg(long, required_unless_present = "case")]
    bad: Option<String>,
    /// 1-based positions of bad vertices in the bad part, comma separated.
    #[arg(long, required_unless_present = "case")]
    bad_pos: Option<String>,
    /// Left extensions, separated by `|`.
    #[arg(long, default_value = "")]
    left: String,
    /// Right extensions, separated by `|`.
    #[arg(long, default_value = "")]
    right: String,
}

struct Failure {
    input: Option<String>,
    error: Error,
}

fn on(input: &str) -> impl Fn(Error) -> Failure + '_ {
    move |error| Failure { input: Some(input.to_string()), error }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { input: None, error }
    }
}

fn report(f: &Failure) {
    eprintln!("error: {}", f.error);
    if let (Some(input), Error::Parse { column, .. }) = (&f.input, &f.error) {
        eprintln!("  {input}");
        eprintln!("  {}^", " ".repeat(column.saturating_sub(1)));
    }
}

struct Outcome {
    text: String,
    result: Value,
    ok: bool,
}

impl Outcome {
    fn ok(text: String, result: Value) -> Self {
        Outcome { text, result, ok: true }
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn graph_arg(s: &str, cli: &Cli, wanted: Convention) -> Result<LinearGraph, Failure> {
    let given = cli.convention.map(Convention::from).unwrap_or(wanted);
    let g = LinearGraph::parse(s, given).map_err(on(s))?;
    Ok(if given == wanted { g } else { dualize(&g) })
}

fn lens_arg(s: &str) -> Result<LensSpace, Failure> {
    s.parse().map_err(on(s))
}

fn lens_list(s: &str) -> Result<Vec<LensSpace>, Failure> {
    let mut out = Vec::new();
    let mut column = 1;
    for tok in s.split([',', '#']) {
        let l = tok.parse::<LensSpace>().map_err(|e| {
            let e = match e {
                Error::Parse { column: c, message } => Error::Parse { column: column + c - 1, message },
                e => e,
            };
            Failure { input: Some(s.to_string()), error: e }
        })?;
        out.push(l);
        column += tok.len() + 1;
    }
    Ok(out)
}

fn chain_arg(s: &str) -> Result<ChainWeights, Failure> {
    s.parse().map_err(on(s))
}

fn chain_list(s: &str) -> Result<Vec<ChainWeights>, Failure> {
    s.split('|').filter(|t| !t.trim().is_empty()).map(|t| chain_arg(t.trim())).collect()
}

fn positions(s: &str) -> Result<Vec<usize>, Failure> {
    let mut out = Vec::new();
    let mut column = 1;
    for tok in s.split(',') {
        let p = tok.trim().parse().map_err(|_| Failure {
            input: Some(s.to_string()),
            error: Error::Parse { column, message: format!("bad position `{}`", tok.trim()) },
        })?;
        out.push(p);
        column += tok.len() + 1;
    }
    Ok(out)
}

fn counts_line(c: (usize, usize, usize, usize)) -> String {
    format!("total {} standard {} semi-standard {} neither {}", c.0, c.1, c.2, c.3)
}

fn run(cli: &Cli) -> Result<(Value, Outcome), Failure> {
    let (inputs, out) = match &cli.command {
        Command::Expand { fraction } => {
            let l = lens_arg(fraction)?;
            let c = expand(l.p(), l.q())?;
            (json!({ "fraction": fraction }), Outcome::ok(c.to_string(), json!({ "chain": c })))
        }
        Command::Eval { chain } => {
            let c = chain_arg(chain)?;
            let (p, q) = evaluate(&c)?;
            (json!({ "chain": chain }), Outcome::ok(format!("{p}/{q}"), json!({ "p": p, "q": q })))
        }
        Command::Dual { graph, adjusted } => {
            let given = cli.convention.map(Convention::from).unwrap_or(Convention::Plumbing);
            let g = LinearGraph::parse(graph, given).map_err(on(graph))?;
            let d = dualize(&g);
            let mut text = d.to_string();
            let mut result = json!({ "dual": d.to_string(), "convention": d.convention() });
            if *adjusted {
                let a = d.adjusted_weights();
                text.push_str(&format!("\nadjusted: {a}"));
                result["adjusted"] = to_value(&a.components);
            }
            (json!({ "graph": graph }), Outcome::ok(text, result))
        }
        Command::Gram { graph } => {
            let given = cli.convention.map(Convention::from).unwrap_or(Convention::Plumbing);
            let g = LinearGraph::parse(graph, given).map_err(on(graph))?;
            let m = gram_of_graph(&g);
            (json!({ "graph": graph }), Outcome::ok(m.to_string(), json!({ "gram": m.entries(), "det": m.det().to_string() })))
        }
        Command::Check { graph, side } => {
            let g = graph_arg(graph, cli, (*side).into())?;
            let inputs = json!({ "graph": graph, "side": Convention::from(*side) });
            match side {
                Conv::Plumbing => {
                    let r = check_17(&g)?;
                    let mut text = format!("{g}: {}", if r.passed { "no forbidden configuration" } else { "FAIL" });
                    for h in &r.hits {
                        let vs: Vec<String> = h.vertices.iter().map(|v| v.to_string()).collect();
                        text.push_str(&format!("\n  ({}) at {}", h.config, vs.join(" ")));
                    }
                    (inputs, Outcome { text, ok: r.passed, result: to_value(&r) })
                }
                Conv::Dual => {
                    let r = check_working_conditions(&g)?;
                    let text = format!("{g}: {r}");
                    (inputs, Outcome { text, ok: r.passed, result: to_value(&r) })
                }
            }
        }
        Command::Embed { graph, max_dim, show } => {
            let g = graph_arg(graph, cli, Convention::Dual)?;
            let es = enumerate_embeddings(&g, *max_dim);
            let mut tally = (es.len(), 0, 0, 0);
            let mut lines = Vec::new();
            let mut listed = Vec::new();
            for (i, e) in es.iter().enumerate() {
                let c = classify(e, None);
                match c {
                    Classification::Standard => tally.1 += 1,
                    Classification::SemiStandard { .. } => tally.2 += 1,
                    Classification::Neither => tally.3 += 1,
                }
                if *show {
                    lines.push(format!("#{} dim {} {c}: {e}", i + 1, e.dim()));
                    listed.push(json!({ "index": i + 1, "dim": e.dim(), "vectors": e.vectors(), "class": c }));
                }
            }
            let mut text = format!("{g}: {}", counts_line(tally));
            for l in lines {
                text.push('\n');
                text.push_str(&l);
            }
            let mut result = json!({
                "dual": g.to_string(),
                "total": tally.0,
                "standard": tally.1,
                "semi_standard": tally.2,
                "neither": tally.3,
            });
            if *show {
                result["embeddings"] = Value::Array(listed);
            }
            (json!({ "graph": graph, "max_dim": max_dim }), Outcome::ok(text, result))
        }
        Command::Complement { graph, class, max_dim } => {
            let g = graph_arg(graph, cli, Convention::Dual)?;
            let es = enumerate_embeddings(&g, *max_dim);
            let Some(e) = class.checked_sub(1).and_then(|i| es.get(i)) else {
                return Err(Error::InvalidArgument(format!("class {class} out of range 1..={}", es.len())).into());
            };
            let c = complement(e);
            let (units, rest) = split_units(&c);
            let text = format!(
                "embedding: {e}\nrank {} det {} primitive {} units {units}\n{c}",
                c.rank(),
                c.det(),
                is_primitive(e)
            );
            let result = json!({
                "embedding": e.vectors(),
                "dim": e.dim(),
                "rank": c.rank(),
                "det": c.det().to_string(),
                "primitive": is_primitive(e),
                "units": units,
                "remainder": rest.entries(),
                "gram": c.entries(),
            });
            (json!({ "graph": graph, "class": class }), Outcome::ok(text, result))
        }
        Command::Allconfig(a) => {
            let (inputs, report, expected) = if let Some(id) = a.case {
                let case = appendix_case(id)
                    .ok_or_else(|| Error::InvalidArgument(format!("no built-in case {id}; cases are 1..=13")))?;
                (json!({ "case": id }), case.run()?, Some(case.expected))
            } else {
                let bad_s = a.bad.as_deref().unwrap_or_default();
                let bad = chain_arg(bad_s)?;
                let pos = positions(a.bad_pos.as_deref().unwrap_or_default())?;
                let lefts = chain_list(&a.left)?;
                let rights = chain_list(&a.right)?;
                let inputs = json!({ "bad": bad_s, "bad_pos": pos, "left": a.left, "right": a.right });
                (inputs, all_config(&bad, &pos, &lefts, &rights)?, None)
            };
            let mut text = String::new();
            for c in &report.configurations {
                text.push_str(&format!(
                    "{}: {}\n",
                    c.configuration,
                    counts_line((c.total, c.standard, c.semi_standard, c.neither))
                ));
            }
            text.push_str(&counts_line(report.counts()));
            let mut ok = true;
            let mut result = to_value(&report);
            if let Some(x) = expected {
                ok = x == report.counts();
                text.push_str(&format!(
                    "\nexpected {}: {}",
                    counts_line(x),
                    if ok { "match" } else { "MISMATCH" }
                ));
                result["expected"] = to_value(&x);
                result["matches"] = Value::Bool(ok);
            }
            (inputs, Outcome { text, result, ok })
        }
        Command::Xk { lens, k } => {
            let ls = lens_list(lens)?;
            let v = property_xk(&ls, *k)?;
            let names: Vec<String> = ls.iter().map(|l| format!("L({},{})", l.p(), l.q())).collect();
            let mut text = format!(
                "{}: X_{k} {} (n_k = {})",
                names.join(" # "),
                if v.satisfies { "holds" } else { "fails" },
                v.n_k
            );
            if let Some(w) = &v.witness {
                text.push_str(&format!("\nwitness in Z^{}: {w}", w.dim()));
            }
            (json!({ "lens": lens, "k": k }), Outcome::ok(text, to_value(&v)))
        }
        Command::Mine { k, max_weight, max_vertices } => {
            let found = mine_forbidden(*k, *max_weight, *max_vertices)?;
            let list: Vec<String> = found.iter().map(|g| g.to_string()).collect();
            let text = if list.is_empty() { "none".to_string() } else { list.join("\n") };
            let inputs = json!({ "k": k, "max_weight": max_weight, "max_vertices": max_vertices });
            (inputs, Outcome::ok(text, json!({ "count": list.len(), "configurations": list })))
        }
        Command::Fillings { fraction } => {
            let l = lens_arg(fraction)?;
            let c = count_fillings(&l)?;
            let pi1 = filling_pi1(&l);
            let tuples = bad_vertex_tuples(&l)?;
            let mut text = format!("count: {}\nn(L): {}\nreduced: {}", c.count, c.n_l, c.reduced);
            match &pi1 {
                Ok(p) => text.push_str(&format!("\npi1: {p}")),
                Err(e) => text.push_str(&format!("\npi1: undefined ({e})")),
            }
            for (j, t) in &tuples {
                text.push_str(&format!("\ntuple at {j}: {t}"));
            }
            let mut result = to_value(&c);
            result["pi1"] = match &pi1 {
                Ok(p) => Value::String(p.to_string()),
                Err(_) => Value::Null,
            };
            result["tuples"] =
                Value::Array(tuples.iter().map(|(j, t)| json!({ "position": j, "tuple": t })).collect());
            (json!({ "fraction": fraction }), Outcome::ok(text, result))
        }
        Command::Verify { appendix, criterion } => {
            if *appendix {
                let (ok, detail, cases) = plumbkit::verify::appendix_counts()?;
                let mut text = String::new();
                let mut rows = Vec::new();
                for c in &cases {
                    let mut line = format!(
                        "case {:>2}: {} [{}]",
                        c.id,
                        counts_line(c.got),
                        if c.got == c.expected { "match" } else { "MISMATCH" }
                    );
                    let mut row = json!({ "case": c.id, "expected": c.expected, "got": c.got });
                    if cli.timing {
                        line.push_str(&format!(" ({:.3}s)", c.seconds));
                        row["seconds"] = json!(c.seconds);
                    }
                    text.push_str(&line);
                    text.push('\n');
                    rows.push(row);
                }
                let matched = cases.iter().filter(|c| c.got == c.expected).count();
                text.push_str(&format!("{matched}/{} cases match", cases.len()));
                if cli.timing {
                    text.push_str(&format!("\n{detail}"));
                }
                let result = json!({ "passed": ok, "matched": matched, "cases": rows });
                (json!({ "appendix": true }), Outcome { text, result, ok })
            } else {
                let ids: Vec<usize> = match criterion {
                    Some(n) if (1..=10).contains(n) => vec![*n],
                    Some(n) => return Err(Error::InvalidArgument(format!("no criterion {n}; criteria are 1..=10")).into()),
                    None => (1..=10).collect(),
                };
                let mut lines = Vec::new();
                let mut rows = Vec::new();
                for id in ids {
                    let r = plumbkit::verify::run(id);
                    let mut row = to_value(&r);
                    if cli.timing {
                        lines.push(r.to_string());
                    } else {
                        row.as_object_mut().expect("object").remove("seconds");
                        lines.push(format!(
                            "criterion {:>2} [{}] {}: {}",
                            r.id,
                            if r.passed { "PASS" } else { "FAIL" },
                            r.name,
                            r.detail
                        ));
                    }
                    rows.push((r.passed, row));
                }
                let ok = rows.iter().all(|(p, _)| *p);
                let passed = rows.iter().filter(|(p, _)| *p).count();
                lines.push(format!("{passed}/{} criteria pass", rows.len()));
                let result = json!({ "passed": ok, "criteria": rows.into_iter().map(|(_, r)| r).collect::<Vec<_>>() });
                (json!({ "criterion": criterion }), Outcome { text: lines.join("\n"), result, ok })
            }
        }
    };
    Ok((inputs, out))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Expand { .. } => "expand",
        Command::Eval { .. } => "eval",
        Command::Dual { .. } => "dual",
        Command::Gram { .. } => "gram",
        Command::Check { .. } => "check",
        Command::Embed { .. } => "embed",
        Command::Complement { .. } => "complement",
        Command::Allconfig(_) => "allconfig",
        Command::Xk { .. } => "xk",
        Command::Mine { .. } => "mine",
        Command::Fillings { .. } => "fillings",
        Command::Verify { .. } => "verify",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let (inputs, out) = match run(&cli) {
        Ok(r) => r,
        Err(f) => {
            report(&f);
            return ExitCode::from(2);
        }
    };
    if cli.json {
        let mut doc = json!({
            "command": command_name(&cli.command),
            "version": env!("CARGO_PKG_VERSION"),
            "inputs": inputs,
            "ok": out.ok,
            "result": out.result,
        });
        if let Some(c) = cli.convention {
            doc["convention"] = to_value(&Convention::from(c));
        }
        if cli.timing {
            doc["seconds"] = json!(start.elapsed().as_secs_f64());
        }
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        println!("{}", out.text);
        if cli.timing {
            eprintln!("({:.3}s)", start.elapsed().as_secs_f64());
        }
    }
    if cli.strict && !out.ok {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
