use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use troprank::lifts::{barvinok_lift_from_factors, rank2_lift_with};
use troprank::{
    barvinok_rank_with, builtin, classical_identity, cn_barvinok_rank, enumerate_hull_cells_with,
    hull_dimension_with, kapranov_report_with, lift_rank, principal_solution, rank_report_with,
    solve_status, trop_det, tropical_rank_with, valuation_matrix, BarvinokRank, Config,
    PuiseuxMatrix, Rank2Method, TropError, TropMatrix,
};

use crate::io::{read_matrix, to_json};
use crate::report;
use crate::svg::render_hull_svg;

#[derive(Parser, Debug)]
#[command(
    name = "troprank",
    version,
    about = "Exact ranks, determinants and convex hulls over the min-plus semiring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tropical determinant with an optimal permutation and dual certificate.
    Det { file: String },
    /// Tropical, Barvinok and Kapranov ranks.
    Rank {
        file: String,
        #[arg(long, value_enum, default_value_t = Kind::All)]
        kind: Kind,
    },
    /// Bounded cells of the tropical convex hull of the columns.
    Hull {
        file: String,
        #[arg(long)]
        cells: bool,
        #[arg(long)]
        dim: bool,
        /// Write a picture of the hull (3-row matrices only).
        #[arg(long, value_name = "OUT")]
        svg: Option<PathBuf>,
    },
    /// Solve M ⊙ x = b.
    Solve { m_file: String, b_file: String },
    /// Built-in matroids: fano, non_fano, uniform.
    Matroid {
        name: String,
        /// Print only the cocircuit matrix, as a matrix file.
        #[arg(long)]
        cocircuit_matrix: bool,
        /// Ground set size and rank for uniform matroids.
        #[arg(long, value_name = "n,r", value_parser = parse_params)]
        params: Option<(usize, usize)>,
    },
    /// A matrix over Puiseux polynomials whose valuation is the input.
    Lift {
        file: String,
        #[arg(long, conflicts_with = "barvinok")]
        rank2: bool,
        #[arg(long)]
        barvinok: bool,
        /// Recompute the valuation and the rank of the lift.
        #[arg(long)]
        verify: bool,
    },
    /// The n x n classical identity: zeros on the diagonal, ones elsewhere.
    Cn {
        n: usize,
        #[arg(long, conflicts_with = "matrix")]
        barvinok: bool,
        /// Print only the matrix, as a matrix file.
        #[arg(long)]
        matrix: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Tropical,
    Barvinok,
    Kapranov,
    All,
}

fn parse_params(s: &str) -> Result<(usize, usize), String> {
    let (n, r) = s.split_once(',').ok_or("expected n,r")?;
    let n = n
        .trim()
        .parse()
        .map_err(|_| format!("bad ground size {n:?}"))?;
    let r = r.trim().parse().map_err(|_| format!("bad rank {r:?}"))?;
    Ok((n, r))
}

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// A finished command: what to print, and whether a budget ran out.
struct Done {
    text: String,
    exhausted: bool,
}

impl Done {
    fn report(map: Map<String, Value>, exhausted: bool) -> Done {
        Done {
            text: serde_json::to_string_pretty(&Value::Object(map)).expect("serializable") + "\n",
            exhausted,
        }
    }
}

fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<TropError>() {
        Some(TropError::Resource(_)) => EXIT_BUDGET,
        Some(TropError::Internal(_)) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

/// Parses `args` (program name first) and runs the command, reading `-`
/// files from `stdin`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let result = Config::from_env()
        .map_err(anyhow::Error::from)
        .and_then(|cfg| execute(cli.command, &cfg, stdin));
    match result {
        Ok(done) => Outcome {
            code: if done.exhausted { EXIT_BUDGET } else { EXIT_OK },
            stdout: done.text,
            stderr: if done.exhausted {
                "search budget exhausted; the report gives bounds\n".into()
            } else {
                String::new()
            },
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e:#}\n"),
        },
    }
}

fn execute(command: Command, cfg: &Config, stdin: &mut dyn Read) -> anyhow::Result<Done> {
    match command {
        Command::Det { file } => det(&read_matrix(&file, stdin)?),
        Command::Rank { file, kind } => rank(&read_matrix(&file, stdin)?, kind, cfg),
        Command::Hull {
            file,
            cells,
            dim,
            svg,
        } => hull(&read_matrix(&file, stdin)?, cells, dim, svg, cfg),
        Command::Solve { m_file, b_file } => {
            if m_file == "-" && b_file == "-" {
                anyhow::bail!("only one input can come from standard input");
            }
            solve(&read_matrix(&m_file, stdin)?, &read_matrix(&b_file, stdin)?)
        }
        Command::Matroid {
            name,
            cocircuit_matrix,
            params,
        } => matroid(&name, cocircuit_matrix, params),
        Command::Lift {
            file,
            rank2,
            barvinok,
            verify,
        } => lift(&read_matrix(&file, stdin)?, rank2, barvinok, verify, cfg),
        Command::Cn {
            n,
            barvinok,
            matrix,
        } => cn(n, barvinok, matrix, cfg),
    }
}

fn det(m: &TropMatrix) -> anyhow::Result<Done> {
    let mut r = report::header("det");
    r.insert("det".into(), report::det(&trop_det(m)?));
    Ok(Done::report(r, false))
}

fn rank(m: &TropMatrix, kind: Kind, cfg: &Config) -> anyhow::Result<Done> {
    let mut r = report::header("rank");
    let exhausted = match kind {
        Kind::Tropical => {
            let t = tropical_rank_with(m, cfg);
            r.insert("tropical".into(), json!(t.rank));
            r.insert(
                "tropical_certificate".into(),
                report::tropical_certificate(&t),
            );
            !t.upper_verified
        }
        Kind::Barvinok => {
            let b = barvinok_rank_with(m, cfg)?;
            r.insert("barvinok".into(), report::barvinok(&b));
            r.insert(
                "barvinok_certificate".into(),
                report::barvinok_certificate(&b),
            );
            matches!(b, BarvinokRank::Bounds { .. })
        }
        Kind::Kapranov => {
            let t = tropical_rank_with(m, cfg);
            r.insert(
                "kapranov".into(),
                report::kapranov(&kapranov_report_with(m, cfg)?),
            );
            r.insert("tropical".into(), json!(t.rank));
            r.insert(
                "tropical_certificate".into(),
                report::tropical_certificate(&t),
            );
            !t.upper_verified
        }
        Kind::All => {
            let all = rank_report_with(m, cfg)?;
            if !all.is_consistent(m) {
                return Err(TropError::Internal(format!(
                    "rank report violates the rank inequalities: {all:?}"
                ))
                .into());
            }
            r.insert("tropical".into(), json!(all.tropical.rank));
            r.insert("barvinok".into(), report::barvinok(&all.barvinok));
            r.insert("kapranov".into(), report::kapranov(&all.kapranov));
            r.insert(
                "tropical_certificate".into(),
                report::tropical_certificate(&all.tropical),
            );
            r.insert(
                "barvinok_certificate".into(),
                report::barvinok_certificate(&all.barvinok),
            );
            !all.tropical.upper_verified || matches!(all.barvinok, BarvinokRank::Bounds { .. })
        }
    };
    Ok(Done::report(r, exhausted))
}

fn hull(
    m: &TropMatrix,
    cells: bool,
    dim: bool,
    svg: Option<PathBuf>,
    cfg: &Config,
) -> anyhow::Result<Done> {
    let (cells, dim) = if cells || dim {
        (cells, dim)
    } else {
        (true, true)
    };
    let mut r = report::header("hull");
    if dim {
        r.insert("dim".into(), json!(hull_dimension_with(m, cfg)?));
    }
    if cells {
        let list = enumerate_hull_cells_with(m, cfg)?;
        r.insert("cell_counts".into(), json!(report::cell_counts(&list)));
        r.insert("cells".into(), list.iter().map(report::cell).collect());
    }
    if let Some(path) = svg {
        let (doc, inv) = render_hull_svg(m, cfg)?;
        std::fs::write(&path, doc).with_context(|| format!("cannot write {}", path.display()))?;
        r.insert(
            "svg".into(),
            json!({
                "path": path.display().to_string(),
                "points": inv.points,
                "dots": inv.dots,
                "segments": inv.segments,
                "polygons": inv.polygons,
            }),
        );
    }
    Ok(Done::report(r, false))
}

fn solve(m: &TropMatrix, b: &TropMatrix) -> anyhow::Result<Done> {
    let b = match b.shape() {
        (_, 1) => b.col(0),
        (1, _) => b.row(0).to_vec(),
        (d, n) => {
            return Err(
                TropError::Shape(format!("right-hand side must be a vector, got {d}x{n}")).into(),
            )
        }
    };
    let mut r = report::header("solve");
    r.insert(
        "principal".into(),
        report::scalars(&principal_solution(m, &b)?),
    );
    if let Value::Object(status) = report::solve(&solve_status(m, &b)?) {
        r.extend(status);
    }
    Ok(Done::report(r, false))
}

fn matroid(
    name: &str,
    cocircuit_matrix: bool,
    params: Option<(usize, usize)>,
) -> anyhow::Result<Done> {
    let mat = builtin(name, params)?;
    if cocircuit_matrix {
        return Ok(Done {
            text: to_json(&mat.cocircuit_matrix()?),
            exhausted: false,
        });
    }
    let mut r = report::header("matroid");
    r.insert("name".into(), json!(name));
    r.insert("ground_size".into(), json!(mat.ground_size()));
    r.insert("rank".into(), json!(mat.rank()));
    r.insert("loops".into(), report::one_based(&mat.loops()));
    r.insert("bases".into(), report::index_sets(&mat.bases()));
    r.insert("hyperplanes".into(), report::index_sets(&mat.hyperplanes()));
    r.insert("cocircuits".into(), report::index_sets(mat.cocircuits()));
    Ok(Done::report(r, false))
}

fn method_name(m: Rank2Method) -> &'static str {
    match m {
        Rank2Method::Path => "path",
        Rank2Method::Star => "star",
        Rank2Method::Nested => "nested",
    }
}

fn lift(
    m: &TropMatrix,
    rank2: bool,
    barvinok: bool,
    verify: bool,
    cfg: &Config,
) -> anyhow::Result<Done> {
    let mut r = report::header("lift");
    let use_rank2 = rank2 || (!barvinok && tropical_rank_with(m, cfg).rank == 2);
    let f: PuiseuxMatrix = if use_rank2 {
        let l = rank2_lift_with(m, cfg)?;
        r.insert(
            "method".into(),
            json!(format!("rank2-{}", method_name(l.method))),
        );
        if let Some(plan) = &l.plan {
            r.insert("pivot".into(), report::scalars(&plan.pivot));
        }
        l.lift
    } else {
        match barvinok_rank_with(m, cfg)? {
            BarvinokRank::Exact { rank, x, y } => {
                r.insert("method".into(), json!("barvinok"));
                r.insert("barvinok".into(), json!(rank));
                r.insert(
                    "barvinok_certificate".into(),
                    json!({ "x": crate::io::matrix_value(&x), "y": crate::io::matrix_value(&y) }),
                );
                barvinok_lift_from_factors(m, &x, &y)?
            }
            bounds => {
                r.insert("barvinok".into(), report::barvinok(&bounds));
                return Ok(Done::report(r, true));
            }
        }
    };
    r.insert("lift".into(), report::puiseux(&f));
    if verify {
        let valuation = valuation_matrix(&f)?;
        if valuation != *m {
            return Err(TropError::Internal(
                "lift does not have the input as its valuation".into(),
            )
            .into());
        }
        r.insert(
            "verify".into(),
            json!({ "valuation_matches": true, "lift_rank": lift_rank(&f) }),
        );
    }
    Ok(Done::report(r, false))
}

fn cn(n: usize, barvinok: bool, matrix: bool, cfg: &Config) -> anyhow::Result<Done> {
    if n == 0 {
        return Err(TropError::Domain("n must be positive".into()).into());
    }
    let c = classical_identity(n)?;
    if matrix {
        return Ok(Done {
            text: to_json(&c),
            exhausted: false,
        });
    }
    let mut r = report::header("cn");
    r.insert("n".into(), json!(n));
    r.insert("barvinok".into(), json!(cn_barvinok_rank(n as u64)));
    if barvinok {
        return Ok(Done::report(r, false));
    }
    let t = tropical_rank_with(&c, cfg);
    r.insert("tropical".into(), json!(t.rank));
    r.insert(
        "kapranov".into(),
        report::kapranov(&kapranov_report_with(&c, cfg)?),
    );
    Ok(Done::report(r, !t.upper_verified))
}
