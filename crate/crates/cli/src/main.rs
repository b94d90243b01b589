use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gpnet_core::generators::{attach_labeling, benes, GraphSpec, LabelingScheme};
use gpnet_core::geodesy::{
    benes_cover, exact_isometric_cover_size, greedy_isometric_cover_from, verify_general_position,
    verify_isometric_cover, BoundReport, IsometricPathCover, EXACT_COVER_VERTEX_LIMIT,
};
use gpnet_core::io::{parse_graph, to_edge_list, GraphJson};
use gpnet_core::monotone::{
    check_monotone_geodesic_labeling, LabelingVerdict, LABEL_CHECK_VERTEX_LIMIT,
};
use gpnet_core::report::{render_table, run_report, ReportConfig, RowStatus, Scope};
use gpnet_core::solver::{max_general_position, SolveOptions, SolveStatus};
use gpnet_core::witness::{self, resolve_coords};
use gpnet_core::{all_pairs_distances, Graph, Vertex};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "gpnet",
    version,
    about = "General position sets in grid, torus and Beneš networks"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Seed for randomized trials.
    #[arg(long, global = true, default_value_t = ReportConfig::default().seed)]
    seed: u64,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Verify every library witness before running the command.
    #[arg(long, global = true)]
    self_test: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct Source {
    /// Generator spec, e.g. `cartesian:6x6`, `torus:7x7`, `benes:3`.
    #[arg(long = "gen", value_name = "SPEC", conflicts_with = "input")]
    spec: Option<String>,
    /// Graph file (edge list or JSON).
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
}

impl Source {
    fn given(&self) -> bool {
        self.spec.is_some() || self.input.is_some()
    }

    fn load(&self) -> Result<Graph> {
        if let Some(spec) = &self.spec {
            return Ok(spec.parse::<GraphSpec>()?.build()?);
        }
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("input");
            return Ok(parse_graph(&text, name)?);
        }
        bail!("no graph given; use --gen SPEC or --input FILE")
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LabelChoice {
    Natural,
    Rotated,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    /// Summary in table format, graph JSON in json format.
    Auto,
    EdgeList,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    All,
    Grids,
    Torus,
    Benes,
    Boron,
    Monotone,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Scope {
        match s {
            ScopeArg::All => Scope::All,
            ScopeArg::Grids => Scope::Grids,
            ScopeArg::Torus => Scope::Torus,
            ScopeArg::Benes => Scope::Benes,
            ScopeArg::Boron => Scope::Boron,
            ScopeArg::Monotone => Scope::Monotone,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and print it.
    Gen {
        #[command(flatten)]
        source: Source,
        /// Lattice labeling to attach.
        #[arg(long, value_enum)]
        labeling: Option<LabelChoice>,
        #[arg(long, value_enum, default_value_t = Emit::Auto)]
        emit: Emit,
    },
    /// Check whether a vertex set is in general position.
    Verify {
        #[command(flatten)]
        source: Source,
        /// JSON array of vertex ids or of coordinate tuples.
        #[arg(long, conflicts_with = "witness")]
        set: Option<String>,
        /// Named library set; its own host patch is used when no graph is given.
        #[arg(long)]
        witness: Option<String>,
        /// List the library sets and exit.
        #[arg(long)]
        list: bool,
    },
    /// Compute a maximum general position set. Exit code 2 means the result
    /// is only a lower bound.
    Solve {
        #[command(flatten)]
        source: Source,
        /// JSON array of vertex ids or coordinate tuples every solution must contain.
        #[arg(long)]
        forced: Option<String>,
        /// Seconds before the search stops with a lower bound.
        #[arg(long)]
        time_limit: Option<f64>,
        #[arg(long)]
        node_limit: Option<u64>,
        /// Stop as soon as a set of this size is found.
        #[arg(long)]
        known_upper: Option<usize>,
        /// Size of a set known to exist.
        #[arg(long)]
        lower: Option<usize>,
    },
    /// Check a monotone-geodesic labeling.
    LabelCheck {
        #[command(flatten)]
        source: Source,
        /// Labeling to test; defaults to the graph's own labels.
        #[arg(long, value_enum)]
        scheme: Option<LabelChoice>,
        #[arg(long, default_value_t = LABEL_CHECK_VERTEX_LIMIT)]
        max_vertices: usize,
    },
    /// Isometric path cover from a root and the resulting bound.
    Cover {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        root: Vertex,
        /// Use the recursive cover of BN(r) instead of the greedy cover.
        #[arg(long, value_name = "R", conflicts_with_all = ["spec", "input"])]
        benes: Option<u32>,
        /// Also compute the minimum cover size (small graphs only).
        #[arg(long)]
        exact: bool,
    },
    /// Rerun every reproducible claim and tabulate the outcome.
    Report {
        #[arg(long, value_enum, default_value_t = ScopeArg::All)]
        scope: ScopeArg,
        #[arg(long, default_value_t = ReportConfig::default().trials)]
        trials: usize,
        /// Seconds per exact solve.
        #[arg(long, default_value_t = 300.0)]
        time_limit: f64,
        /// Exit with code 1 if any row is a mismatch.
        #[arg(long)]
        strict: bool,
    },
}

/// Parses `[0, 3, 5]` or `[[0, 1], [2, 3]]`; tuples resolve through the
/// graph's labels.
fn parse_set(text: &str, g: &Graph) -> Result<Vec<Vertex>> {
    let value: Value = serde_json::from_str(text).context("set must be a JSON array")?;
    let items = value.as_array().context("set must be a JSON array")?;
    if items.iter().all(Value::is_u64) {
        return Ok(items
            .iter()
            .map(|v| v.as_u64().unwrap() as Vertex)
            .collect());
    }
    let coords: Vec<Vec<i64>> = serde_json::from_value(value)
        .context("set entries must be vertex ids or integer tuples")?;
    Ok(resolve_coords(&coords, g)?)
}

fn coords_of(g: &Graph, set: &[Vertex]) -> Option<Vec<Vec<i64>>> {
    let labels = g.labels()?;
    Some(set.iter().map(|&v| labels.point(v).to_vec()).collect())
}

fn seconds(s: f64) -> Result<Duration> {
    Duration::try_from_secs_f64(s).context("time limit must be a non-negative number of seconds")
}

struct Output {
    format: Format,
}

impl Output {
    fn emit(&self, value: &Value, table: impl FnOnce() -> String) {
        match self.format {
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(value).expect("JSON value serializes")
            ),
            Format::Table => print!("{}", table()),
        }
    }
}

fn kv(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn with_scheme(g: Graph, choice: Option<LabelChoice>) -> Result<Graph> {
    Ok(match choice {
        Some(LabelChoice::Natural) => attach_labeling(&g, LabelingScheme::Natural)?,
        Some(LabelChoice::Rotated) => attach_labeling(&g, LabelingScheme::Rotated)?,
        Some(LabelChoice::None) => g.with_labels(None)?,
        None => g,
    })
}

fn cover_value(g: &Graph, cover: &IsometricPathCover, valid: bool) -> Value {
    json!({
        "graph": g.name(),
        "root": cover.root,
        "paths": cover.paths,
        "size": cover.len(),
        "valid": valid,
        "bound": BoundReport::from_cover(cover),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let out = Output { format: cli.format };
    if cli.self_test {
        for (name, cert) in witness::self_test()? {
            if !cert.is_general_position() {
                bail!(
                    "library witness {name} failed verification: {:?}",
                    cert.violating_triple
                );
            }
        }
    }
    match cli.command {
        Command::Gen {
            source,
            labeling,
            emit,
        } => {
            let g = with_scheme(source.load()?, labeling)?;
            match (emit, cli.format) {
                (Emit::EdgeList, _) => print!("{}", to_edge_list(&g)),
                (Emit::Json, _) | (Emit::Auto, Format::Json) => {
                    println!("{}", serde_json::to_string(&GraphJson::from(&g))?)
                }
                (Emit::Auto, Format::Table) => {
                    let d = all_pairs_distances(&g);
                    print!(
                        "{}",
                        kv(&[
                            ("graph", g.name().to_string()),
                            ("vertices", g.n().to_string()),
                            ("edges", g.edge_count().to_string()),
                            ("diameter", d.diameter().to_string()),
                            (
                                "labels",
                                g.labels()
                                    .map_or("none".into(), |l| format!("{}-dim", l.dim()))
                            ),
                        ])
                    );
                }
            }
        }
        Command::Verify {
            source,
            set,
            witness: name,
            list,
        } => {
            if list {
                let lib = witness::library();
                out.emit(&serde_json::to_value(lib)?, || {
                    lib.iter()
                        .map(|w| {
                            format!(
                                "{:<16} {:<18} {:<8} {}\n",
                                w.name,
                                w.host,
                                format!("{:?}", w.provenance),
                                w.note
                            )
                        })
                        .collect()
                });
                return Ok(ExitCode::SUCCESS);
            }
            let (g, ids) = match (set, name) {
                (Some(set), None) => {
                    let g = source.load()?;
                    let ids = parse_set(&set, &g)?;
                    (g, ids)
                }
                (None, Some(name)) => {
                    let w = witness::witness(&name)?;
                    let g = if source.given() {
                        source.load()?
                    } else {
                        w.host_graph()?
                    };
                    let ids = resolve_coords(w.coords, &g)?;
                    (g, ids)
                }
                _ => bail!("give --set or --witness"),
            };
            let d = all_pairs_distances(&g);
            let cert = verify_general_position(&d, &ids)?;
            let value = json!({
                "graph": g.name(),
                "set": ids,
                "coords": coords_of(&g, &ids),
                "size": ids.len(),
                "certificate": cert,
            });
            out.emit(&value, || {
                kv(&[
                    ("graph", g.name().to_string()),
                    ("set", format!("{ids:?}")),
                    (
                        "verdict",
                        if cert.is_general_position() {
                            "general_position"
                        } else {
                            "violated"
                        }
                        .into(),
                    ),
                    (
                        "violating triple",
                        cert.violating_triple
                            .map_or("-".into(), |t| format!("{t:?}")),
                    ),
                    (
                        "separation k",
                        cert.separation_k.map_or("-".into(), |k| k.to_string()),
                    ),
                ])
            });
        }
        Command::Solve {
            source,
            forced,
            time_limit,
            node_limit,
            known_upper,
            lower,
        } => {
            let g = source.load()?;
            let d = all_pairs_distances(&g);
            let opts = SolveOptions {
                forced: forced
                    .map(|f| parse_set(&f, &g))
                    .transpose()?
                    .unwrap_or_default(),
                time_limit: time_limit.map(seconds).transpose()?,
                node_limit,
                initial_lower_bound: lower,
                known_upper,
                order: None,
            };
            let r = max_general_position(&g, &d, &opts)?;
            let value = json!({
                "graph": g.name(),
                "result": r,
                "coords": coords_of(&g, &r.witness),
            });
            out.emit(&value, || {
                kv(&[
                    ("graph", g.name().to_string()),
                    (
                        "status",
                        serde_json::to_value(r.status)
                            .ok()
                            .and_then(|v| v.as_str().map(String::from))
                            .unwrap_or_default(),
                    ),
                    ("size", r.size.to_string()),
                    ("witness", format!("{:?}", r.witness)),
                    (
                        "coords",
                        coords_of(&g, &r.witness).map_or("-".into(), |c| format!("{c:?}")),
                    ),
                    ("nodes", r.nodes_explored.to_string()),
                ])
            });
            if r.status == SolveStatus::LowerBoundOnly {
                return Ok(ExitCode::from(2));
            }
        }
        Command::LabelCheck {
            source,
            scheme,
            max_vertices,
        } => {
            let g = with_scheme(source.load()?, scheme)?;
            let labels = g
                .labels()
                .context("graph has no labeling; pick one with --scheme")?;
            let d = all_pairs_distances(&g);
            let cert = check_monotone_geodesic_labeling(&g, &d, labels, max_vertices)?;
            let counter = cert
                .counterexample
                .map(|t| t.map(|v| labels.point(v).to_vec()));
            let value =
                json!({ "graph": g.name(), "certificate": cert, "counterexample_labels": counter });
            out.emit(&value, || {
                kv(&[
                    ("graph", g.name().to_string()),
                    (
                        "verdict",
                        match cert.verdict {
                            LabelingVerdict::MonotoneGeodesic => "monotone_geodesic".into(),
                            LabelingVerdict::Violated => "violated".into(),
                        },
                    ),
                    (
                        "counterexample",
                        cert.counterexample.map_or("-".into(), |t| format!("{t:?}")),
                    ),
                    ("labels", counter.map_or("-".into(), |c| format!("{c:?}"))),
                ])
            });
        }
        Command::Cover {
            source,
            root,
            benes: r,
            exact,
        } => {
            let (g, cover) = match r {
                Some(r) => (benes(r)?, benes_cover(r, root)?),
                None => {
                    let g = source.load()?;
                    let d = all_pairs_distances(&g);
                    let cover = greedy_isometric_cover_from(&g, &d, root)?;
                    (g, cover)
                }
            };
            let d = all_pairs_distances(&g);
            let valid = verify_isometric_cover(&g, &d, &cover);
            let mut value = cover_value(&g, &cover, valid);
            let minimum = if exact {
                if g.n() > EXACT_COVER_VERTEX_LIMIT {
                    bail!("--exact supports at most {EXACT_COVER_VERTEX_LIMIT} vertices");
                }
                Some(exact_isometric_cover_size(&g, &d, root)?)
            } else {
                None
            };
            value["minimum_size"] = json!(minimum);
            out.emit(&value, || {
                let mut s = kv(&[
                    ("graph", g.name().to_string()),
                    ("root", root.to_string()),
                    ("paths", cover.len().to_string()),
                    ("valid", valid.to_string()),
                    (
                        "bound",
                        format!("{} (sets containing the root)", cover.len() + 1),
                    ),
                    ("minimum", minimum.map_or("-".into(), |m| m.to_string())),
                ]);
                for p in &cover.paths {
                    s.push_str(&format!("  {p:?}\n"));
                }
                s
            });
        }
        Command::Report {
            scope,
            trials,
            time_limit,
            strict,
        } => {
            let cfg = ReportConfig {
                seed: cli.seed,
                time_limit: seconds(time_limit)?,
                trials,
            };
            let rows = run_report(scope.into(), &cfg);
            out.emit(&serde_json::to_value(&rows)?, || render_table(&rows));
            if strict && rows.iter().any(|r| r.status == RowStatus::Mismatch) {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
