//! Command-line surface: freeness checking, orderings, certificates,
//! generation, enumeration, and DOT export over the `.tmt` text format.
//!
//! Exit codes: 0 success (for `check`: free; for `enumerate`: zero
//! failures), 1 negative result (not free / precondition witness), 2 input
//! or usage error (including exceeded caps), 3 generation exhausted.

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::apps;
use crate::construct::{gen_free, gen_paving, GenParams};
use crate::core::{backedge_graph, Tournament, VertexOrdering};
use crate::decompose::{
    decompose, natural_ordering, paving_ordering, theorem11_ordering, ComponentClass,
    Decomposition,
};
use crate::error::Error;
use crate::oracle::{enumerate_labeled, Check, ALL_CHECKS};
use crate::patterns::{BasicKind, Delta122Witness};

#[derive(Parser)]
#[command(name = "delta122", version, about = "Structure theory of Delta(1,2,2)-free tournaments")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderMode {
    Paving,
    Natural,
    Theorem11,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DotMode {
    Identity,
    Paving,
    Natural,
    Theorem11,
}

#[derive(Subcommand)]
enum Cmd {
    /// Test Δ(1,2,2)-freeness; print a decomposition summary or a witness.
    Check {
        /// Input `.tmt` file, or '-' for standard input.
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print an ordering and its backedges (plus the classification in
    /// theorem11 mode).
    Order {
        input: String,
        #[arg(long, value_enum, default_value_t = OrderMode::Natural)]
        mode: OrderMode,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Color the tournament with at most three transitive classes.
    Color {
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Find a transitive vertex set of size at least ceil(3n/7).
    Alpha {
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Pack vertex-disjoint cyclic triangles, at least ceil(2m/7) of them.
    Pack {
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Generate a Δ(1,2,2)-free tournament (`.tmt` to standard output).
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Backedge density of the paving base, in [0, 1].
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        #[arg(long, default_value_t = 1.0)]
        subst_weight: f64,
        #[arg(long, default_value_t = 1.0)]
        join_weight: f64,
        /// Emit only a paving tournament (no substitutions or joins).
        #[arg(long)]
        base_only: bool,
        /// Also print the decomposition tree as JSON.
        #[arg(long)]
        tree: bool,
    },
    /// Run oracle checks over every labeled tournament on n vertices.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// "all" or a comma-separated list of check names.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Worker threads (defaults to all cores).
        #[arg(long)]
        workers: Option<usize>,
        /// Visit every stride-th labeled tournament (1 = exhaustive).
        #[arg(long, default_value_t = 1)]
        stride: u64,
    },
    /// Emit the tournament as a DOT digraph with rank = ordering position.
    ExportDot {
        input: String,
        #[arg(long, value_enum, default_value_t = DotMode::Identity)]
        ordering: DotMode,
    },
}

/// Parses arguments and dispatches; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Check { input, format } => cmd_check(&input, format),
        Cmd::Order { input, mode, format } => cmd_order(&input, mode, format),
        Cmd::Color { input, format } => cmd_color(&input, format),
        Cmd::Alpha { input, format } => cmd_alpha(&input, format),
        Cmd::Pack { input, format } => cmd_pack(&input, format),
        Cmd::Gen {
            n,
            seed,
            density,
            subst_weight,
            join_weight,
            base_only,
            tree,
        } => cmd_gen(n, seed, density, subst_weight, join_weight, base_only, tree),
        Cmd::Enumerate {
            n,
            checks,
            workers,
            stride,
        } => cmd_enumerate(n, &checks, workers, stride),
        Cmd::ExportDot { input, ordering } => cmd_export_dot(&input, ordering),
    }
}

fn read_tournament(input: &str) -> Result<Tournament, String> {
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading standard input: {e}"))?;
        buf
    } else {
        std::fs::read_to_string(input).map_err(|e| format!("reading {input}: {e}"))?
    };
    Tournament::from_tmt(&text).map_err(|e| e.to_string())
}

fn input_error(message: &str) -> i32 {
    eprintln!("error: {message}");
    2
}

fn witness_text(w: &Delta122Witness) -> String {
    format!(
        "contains Delta(1,2,2): x={} Y={{{},{}}} Z={{{},{}}}",
        w.x, w.y[0], w.y[1], w.z[0], w.z[1]
    )
}

fn witness_json(w: &Delta122Witness) -> serde_json::Value {
    json!({ "x": w.x, "y": w.y, "z": w.z })
}

fn kind_name(kind: BasicKind) -> &'static str {
    match kind {
        BasicKind::T5 => "T5",
        BasicKind::P7Minus => "P7-",
        BasicKind::P7 => "P7",
    }
}

/// On a NotFree error prints the witness and returns exit 1; everything else
/// is reported as exit 2.
fn report_failure(err: &Error, format: Format) -> i32 {
    if let Error::NotFree { x, y0, y1, z0, z1 } = err {
        let w = Delta122Witness {
            x: *x,
            y: [*y0, *y1],
            z: [*z0, *z1],
        };
        match format {
            Format::Text => println!("{}", witness_text(&w)),
            Format::Json => println!("{}", json!({ "free": false, "witness": witness_json(&w) })),
        }
        1
    } else {
        input_error(&err.to_string())
    }
}

fn cmd_check(input: &str, format: Format) -> i32 {
    let t = match read_tournament(input) {
        Ok(t) => t,
        Err(e) => return input_error(&e),
    };
    match decompose(&t) {
        Ok(Decomposition::Tree(tree)) => {
            let kinds: Vec<String> = tree
                .steps
                .iter()
                .map(|s| match s {
                    crate::construct::Step::Substitute { kind, .. } => {
                        format!("substitute {}", kind_name(*kind))
                    }
                    crate::construct::Step::Join { .. } => "join P7-".to_string(),
                })
                .collect();
            match format {
                Format::Text => {
                    if kinds.is_empty() {
                        println!("free: paving base n={}, 0 steps", tree.base.n());
                    } else {
                        println!(
                            "free: paving base n={}, steps: {}",
                            tree.base.n(),
                            kinds.join(", ")
                        );
                    }
                }
                Format::Json => println!(
                    "{}",
                    json!({ "free": true, "base_n": tree.base.n(), "steps": kinds })
                ),
            }
            0
        }
        Ok(Decomposition::Witness(w)) => {
            match format {
                Format::Text => println!("{}", witness_text(&w)),
                Format::Json => {
                    println!("{}", json!({ "free": false, "witness": witness_json(&w) }))
                }
            }
            1
        }
        Err(e) => input_error(&e.to_string()),
    }
}

fn component_json(comp: &crate::core::Component, class: ComponentClass) -> serde_json::Value {
    json!({
        "vertices": comp.vertices,
        "class": class.to_string(),
        "consecutive": comp.consecutive,
    })
}

fn cmd_order(input: &str, mode: OrderMode, format: Format) -> i32 {
    let t = match read_tournament(input) {
        Ok(t) => t,
        Err(e) => return input_error(&e),
    };
    let result: Result<(VertexOrdering, Option<Vec<serde_json::Value>>), Error> = match mode {
        OrderMode::Paving => paving_ordering(&t).map(|o| (o, None)),
        OrderMode::Natural => decompose(&t).and_then(|d| match d {
            Decomposition::Witness(w) => Err(Error::NotFree {
                x: w.x,
                y0: w.y[0],
                y1: w.y[1],
                z0: w.z[0],
                z1: w.z[1],
            }),
            Decomposition::Tree(tree) => natural_ordering(&tree).map(|o| (o, None)),
        }),
        OrderMode::Theorem11 => theorem11_ordering(&t).map(|(o, classes)| {
            let comps = classes
                .iter()
                .map(|(c, cl)| component_json(c, *cl))
                .collect();
            (o, Some(comps))
        }),
    };
    match result {
        Ok((ordering, components)) => {
            let g = backedge_graph(&t, &ordering);
            let edges: Vec<(usize, usize)> = g.edges.iter().copied().collect();
            match format {
                Format::Text => {
                    let perm: Vec<String> = ordering.perm.iter().map(|v| v.to_string()).collect();
                    println!("ordering: {}", perm.join(" "));
                    let pairs: Vec<String> =
                        edges.iter().map(|(u, v)| format!("({u},{v})")).collect();
                    println!("backedges ({}): {}", edges.len(), pairs.join(" "));
                    if let Some(comps) = &components {
                        for c in comps {
                            println!(
                                "component vertices={} class={} consecutive={}",
                                c["vertices"], c["class"], c["consecutive"]
                            );
                        }
                    }
                }
                Format::Json => {
                    let mut out = json!({ "ordering": ordering.perm, "backedges": edges });
                    if let Some(comps) = components {
                        out["components"] = serde_json::Value::Array(comps);
                    }
                    println!("{out}");
                }
            }
            0
        }
        Err(e) => report_failure(&e, format),
    }
}

fn cmd_color(input: &str, format: Format) -> i32 {
    let t = match read_tournament(input) {
        Ok(t) => t,
        Err(e) => return input_error(&e),
    };
    match apps::color(&t) {
        Ok(c) => {
            match format {
                Format::Text => {
                    println!("k = {} (bound: k <= 3)", c.k);
                    let cols: Vec<String> = c.color.iter().map(|x| x.to_string()).collect();
                    println!("colors: {}", cols.join(" "));
                }
                Format::Json => println!("{}", json!({ "color": c.color, "k": c.k })),
            }
            0
        }
        Err(e) => report_failure(&e, format),
    }
}

fn cmd_alpha(input: &str, format: Format) -> i32 {
    let t = match read_tournament(input) {
        Ok(t) => t,
        Err(e) => return input_error(&e),
    };
    match apps::transitive_set(&t) {
        Ok(s) => {
            let bound = (3 * t.n()).div_ceil(7);
            match format {
                Format::Text => {
                    println!(
                        "|S| = {} (bound: |S| >= {} = ceil(3n/7), n = {})",
                        s.vertices.len(),
                        bound,
                        t.n()
                    );
                    let vs: Vec<String> = s.vertices.iter().map(|v| v.to_string()).collect();
                    println!("vertices: {}", vs.join(" "));
                }
                Format::Json => {
                    println!("{}", json!({ "vertices": s.vertices, "bound": bound }))
                }
            }
            0
        }
        Err(e) => report_failure(&e, format),
    }
}

fn cmd_pack(input: &str, format: Format) -> i32 {
    let t = match read_tournament(input) {
        Ok(t) => t,
        Err(e) => return input_error(&e),
    };
    match apps::pack_triangles(&t) {
        Ok((p, m)) => {
            let bound = (2 * m).div_ceil(7);
            match format {
                Format::Text => {
                    println!(
                        "|P| = {}, m = {} (bound: |P| >= {} = ceil(2m/7))",
                        p.triangles.len(),
                        m,
                        bound
                    );
                    for tri in &p.triangles {
                        println!("triangle: {} {} {}", tri[0], tri[1], tri[2]);
                    }
                }
                Format::Json => {
                    println!("{}", json!({ "triangles": p.triangles, "m": m, "bound": bound }))
                }
            }
            0
        }
        Err(e) => report_failure(&e, format),
    }
}

fn cmd_gen(
    n: usize,
    seed: u64,
    density: f64,
    subst_weight: f64,
    join_weight: f64,
    base_only: bool,
    tree: bool,
) -> i32 {
    if base_only && tree {
        return input_error("--tree requires a decomposition; it conflicts with --base-only");
    }
    let params = GenParams {
        n_target: n,
        backedge_density: density,
        subst_weight,
        join_weight,
        seed,
    };
    if base_only {
        match gen_paving(&params) {
            Ok((t, _)) => {
                print!("{}", t.to_tmt());
                0
            }
            Err(Error::GenerationExhausted { .. }) => {
                eprintln!("error: generation exhausted");
                3
            }
            Err(e) => input_error(&e.to_string()),
        }
    } else {
        match gen_free(&params) {
            Ok((t, dtree)) => {
                print!("{}", t.to_tmt());
                if tree {
                    println!("{}", dtree.to_json());
                }
                0
            }
            Err(Error::GenerationExhausted { .. }) => {
                eprintln!("error: generation exhausted");
                3
            }
            Err(e) => input_error(&e.to_string()),
        }
    }
}

fn cmd_enumerate(n: usize, checks: &str, workers: Option<usize>, stride: u64) -> i32 {
    let parsed: Result<Vec<Check>, String> = if checks == "all" {
        Ok(ALL_CHECKS.to_vec())
    } else {
        checks.split(',').map(|s| s.trim().parse()).collect()
    };
    let checks = match parsed {
        Ok(cs) => cs,
        Err(e) => return input_error(&e),
    };
    if workers == Some(0) {
        return input_error("worker count must be at least 1");
    }
    let run = || enumerate_labeled(n, &checks, stride);
    let report = match workers {
        Some(w) => {
            let pool = match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
                Ok(pool) => pool,
                Err(e) => return input_error(&e.to_string()),
            };
            pool.install(run)
        }
        None => run(),
    };
    match report {
        Ok(report) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            if report.failures.is_empty() {
                0
            } else {
                1
            }
        }
        Err(e) => input_error(&e.to_string()),
    }
}

/// Renders the tournament as DOT: vertices laid out left to right in the
/// ordering via an invisible chain, forward edges plain, backedges styled.
fn render_dot(t: &Tournament, ordering: &VertexOrdering) -> String {
    let pos = ordering.positions();
    let mut out = String::from("digraph delta122 {\n  rankdir=LR;\n  node [shape=circle];\n");
    for &v in &ordering.perm {
        out.push_str(&format!("  v{v} [label=\"{v}\"];\n"));
    }
    for w in ordering.perm.windows(2) {
        out.push_str(&format!("  v{} -> v{} [style=invis];\n", w[0], w[1]));
    }
    for i in 0..t.n() {
        for j in 0..t.n() {
            if i != j && t.edge(i, j) {
                if pos[i] < pos[j] {
                    out.push_str(&format!("  v{i} -> v{j};\n"));
                } else {
                    out.push_str(&format!(
                        "  v{i} -> v{j} [color=red, style=bold, constraint=false];\n"
                    ));
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

fn cmd_export_dot(input: &str, mode: DotMode) -> i32 {
    let t = match read_tournament(input) {
        Ok(t) => t,
        Err(e) => return input_error(&e),
    };
    let ordering = match mode {
        DotMode::Identity => Ok(VertexOrdering::identity(t.n())),
        DotMode::Paving => paving_ordering(&t),
        DotMode::Natural => decompose(&t).and_then(|d| match d {
            Decomposition::Witness(w) => Err(Error::NotFree {
                x: w.x,
                y0: w.y[0],
                y1: w.y[1],
                z0: w.z[0],
                z1: w.z[1],
            }),
            Decomposition::Tree(tree) => natural_ordering(&tree),
        }),
        DotMode::Theorem11 => theorem11_ordering(&t).map(|(o, _)| o),
    };
    match ordering {
        Ok(ordering) => {
            print!("{}", render_dot(&t, &ordering));
            0
        }
        Err(e) => report_failure(&e, Format::Text),
    }
}
