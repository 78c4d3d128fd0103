use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use thetaline::cover::check_cover_graph;
use thetaline::geometry::{
    even_contact_check, is_node, singular_points_plane_curve, smoothness_search, ContactVerdict, ProjLine,
};
use thetaline::pipeline::{run_pipeline, PipelineInput, PipelineOptions};
use thetaline::random::{search_smooth_matrix, seeded_rng};
use thetaline::text::{
    format_matrix, parse_cover_graph, parse_cubic_file, parse_field, parse_line_arg, parse_matrix_file,
    parse_point, parse_poly,
};
use thetaline::{associated_conic, build_cubic, discriminant, extract_matrix, Alphabet, CubicThreefold, Domain, Error};

/// Largest number of random matrices drawn by `pipeline --random`.
const RANDOM_ATTEMPTS: u32 = 200;

#[derive(Parser)]
#[command(name = "thetaline", version, about = "Plane quintics, odd theta characteristics and cubic threefolds containing a line")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Coefficient field: `rational` or `fp:<p>`.
    #[arg(long, global = true, default_value = "rational")]
    field: String,
    /// Largest extension degree k searched over GF(p^k).
    #[arg(long, global = true, default_value_t = 2)]
    ext_depth: u32,
    /// Largest extension degree for the singular-point search on the cubic threefold
    /// [default: the smaller of --ext-depth and 2].
    #[arg(long, global = true)]
    smooth_depth: Option<u32>,
    /// Truncation order bound for intersection multiplicities.
    #[arg(long, global = true, default_value_t = 12)]
    order_bound: u32,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Allow characteristic 3 and 5.
    #[arg(long, global = true)]
    allow_small_char: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the cubic F = l1 w^2 + 2 l2 w t + l3 t^2 + 2 q1 w + 2 q2 t + f of a matrix file.
    BuildCubic {
        /// Matrix file with entries l1, l2, l3, q1, q2, f.
        matrix: String,
    },
    /// Recover the matrix from a cubic containing a line (default x = y = z = 0).
    ExtractMatrix {
        /// File holding one cubic form in x, y, z, w, t.
        cubic: String,
        /// Line as `a0,...,a4;b0,...,b4`.
        #[arg(long)]
        line: Option<String>,
    },
    /// Print det A.
    Discriminant {
        /// Matrix file with entries l1, l2, l3, q1, q2, f.
        matrix: String,
    },
    /// Print h = l1 l3 - l2^2.
    Conic {
        /// Matrix file with entries l1, l2, l3, q1, q2, f.
        matrix: String,
    },
    /// List the singular points of a plane curve over GF(p^k), k <= ext-depth.
    SingularLocus {
        /// File holding one plane curve in x, y, z.
        curve: String,
    },
    /// Check that singular points of a plane curve are nodes.
    CheckNodal {
        /// File holding one plane curve in x, y, z.
        curve: String,
        /// Check only this point, given as `a,b,c`.
        #[arg(long)]
        point: Option<String>,
    },
    /// Search for singular points of a cubic threefold over GF(p^k), k <= --smooth-depth
    /// (default --ext-depth).
    CheckSmooth {
        /// File holding one cubic form in x, y, z, w, t.
        cubic: String,
    },
    /// Local intersection numbers of det A and h.
    CheckContact {
        /// Matrix file with entries l1, l2, l3, q1, q2, f.
        matrix: String,
    },
    /// Run every check on a matrix, a cubic with a line, or a random smooth example.
    Pipeline {
        /// Matrix file.
        #[arg(long, conflicts_with_all = ["cubic", "random"])]
        matrix: Option<String>,
        /// Cubic file; needs --line.
        #[arg(long, requires = "line", conflicts_with = "random")]
        cubic: Option<String>,
        /// Line contained in the cubic, `a0,...,a4;b0,...,b4`.
        #[arg(long)]
        line: Option<String>,
        /// Search random matrices (seeded by --seed) for a smooth cubic.
        #[arg(long)]
        random: bool,
    },
    /// Check the admissible-cover constraints on a dual graph given as JSON.
    CoverCheck {
        /// JSON file `{"components": [{"id", "genus"}], "edges": [[a, b]]}`.
        graph: String,
        /// Also require arithmetic genus 6.
        #[arg(long)]
        require_genus6: bool,
    },
}

/// Failure that maps to an exit code, with the source it came from.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn from_error(source: &str, e: Error) -> Self {
        let code = if matches!(e, Error::CommonComponent(_)) { 3 } else { 2 };
        let message = match &e {
            Error::Parse(p) => format!("{source}: {p}"),
            _ if source.is_empty() => e.to_string(),
            _ => format!("{source}: {e}"),
        };
        Failure { code, message }
    }
}

type CmdResult = Result<u8, Failure>;

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::usage(format!("<stdin>: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}")))
    }
}

fn with_source<T>(source: &str, r: thetaline::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::from_error(source, e))
}

fn emit(global: &Global, value: serde_json::Value, text: String) {
    if global.json {
        println!("{}", serde_json::to_string_pretty(&value).expect("json values serialize"));
    } else {
        print!("{text}");
        if !text.ends_with('\n') {
            println!();
        }
    }
}

fn finite_prime(domain: &Domain) -> Result<u64, Failure> {
    match domain.field() {
        Some(f) => Ok(f.characteristic()),
        None => Err(Failure::from_error("", Error::RationalSearch)),
    }
}

fn run(cli: Cli) -> CmdResult {
    let g = &cli.global;
    let domain = with_source("--field", parse_field(&g.field))?;
    if g.ext_depth == 0 {
        return Err(Failure::usage("--ext-depth must be at least 1"));
    }
    let smooth_depth = g.smooth_depth.unwrap_or(g.ext_depth.min(2));
    if smooth_depth == 0 {
        return Err(Failure::usage("--smooth-depth must be at least 1"));
    }
    let load_matrix = |path: &str| with_source(path, parse_matrix_file(&read_source(path)?, &domain));
    match &cli.command {
        Command::BuildCubic { matrix } => {
            let a = load_matrix(matrix)?;
            let f = with_source(matrix, build_cubic(&a))?;
            emit(g, json!({ "cubic": f.form().to_string() }), f.form().to_string());
            Ok(0)
        }
        Command::ExtractMatrix { cubic, line } => {
            let form = with_source(cubic, parse_cubic_file(&read_source(cubic)?, &domain))?;
            let x = with_source(cubic, CubicThreefold::new(form))?;
            let x = match line {
                None => x,
                Some(arg) => {
                    let line = with_source("--line", parse_line_arg(arg, &domain))?;
                    let t = with_source("--line", thetaline::geometry::move_line_to_standard(&line))?;
                    with_source(cubic, t.push_forward_form(x.form()).and_then(CubicThreefold::new))?
                }
            };
            match extract_matrix(&x) {
                Ok(a) => {
                    let entries: serde_json::Map<_, _> = a
                        .labeled_entries()
                        .iter()
                        .map(|(l, p, _)| (l.to_string(), json!(p.to_string())))
                        .collect();
                    emit(g, json!({ "matrix": entries }), format_matrix(&a));
                    Ok(0)
                }
                Err(e @ Error::LineNotContained(_)) => {
                    emit(g, json!({ "violation": e.to_string() }), format!("violation: {e}"));
                    Ok(1)
                }
                Err(e) => Err(Failure::from_error(cubic, e)),
            }
        }
        Command::Discriminant { matrix } => {
            let a = load_matrix(matrix)?;
            let d = discriminant(&a);
            emit(
                g,
                json!({ "discriminant": d.form().to_string(), "degenerate": d.is_degenerate() }),
                d.form().to_string(),
            );
            Ok(if d.is_degenerate() { 1 } else { 0 })
        }
        Command::Conic { matrix } => {
            let a = load_matrix(matrix)?;
            let h = associated_conic(&a);
            emit(g, json!({ "conic": h.form().to_string(), "degenerate": h.is_degenerate() }), h.form().to_string());
            Ok(if h.is_degenerate() { 1 } else { 0 })
        }
        Command::SingularLocus { curve } => {
            let p = finite_prime(&domain)?;
            let f = with_source(curve, parse_poly(&read_source(curve)?, &Alphabet::plane(), &domain))?;
            let mut points = Vec::new();
            for k in 1..=g.ext_depth {
                for pt in with_source(curve, singular_points_plane_curve(&f, p, k))? {
                    if pt.definition_degree() == k {
                        points.push((pt, k));
                    }
                }
            }
            let text: String = points.iter().map(|(pt, k)| format!("{pt} over degree {k}\n")).collect();
            let value = json!({
                "points": points.iter().map(|(pt, k)| json!({ "point": pt, "extension_degree": k })).collect::<Vec<_>>(),
                "ext_depth": g.ext_depth,
            });
            emit(g, value, if text.is_empty() { "no singular points\n".into() } else { text });
            Ok(0)
        }
        Command::CheckNodal { curve, point } => {
            let f = with_source(curve, parse_poly(&read_source(curve)?, &Alphabet::plane(), &domain))?;
            let points = match point {
                Some(arg) => vec![(with_source("--point", parse_point(arg, 2, &domain))?, 1)],
                None => {
                    let p = finite_prime(&domain)?;
                    let mut pts = Vec::new();
                    for k in 1..=g.ext_depth {
                        for pt in with_source(curve, singular_points_plane_curve(&f, p, k))? {
                            if pt.definition_degree() == k {
                                pts.push((pt, k));
                            }
                        }
                    }
                    pts
                }
            };
            let mut results = Vec::new();
            for (pt, k) in points {
                let node = with_source(curve, is_node(&f, &pt))?;
                results.push((pt, k, node));
            }
            let all = results.iter().all(|r| r.2);
            let text: String = results
                .iter()
                .map(|(pt, k, node)| format!("{pt} over degree {k}: {}\n", if *node { "node" } else { "not a node" }))
                .chain(std::iter::once(format!("nodal: {all}\n")))
                .collect();
            let value = json!({
                "points": results.iter().map(|(pt, k, node)| json!({ "point": pt, "extension_degree": k, "node": node })).collect::<Vec<_>>(),
                "nodal": all,
            });
            emit(g, value, text);
            Ok(if all { 0 } else { 1 })
        }
        Command::CheckSmooth { cubic } => {
            let p = finite_prime(&domain)?;
            let f = with_source(cubic, parse_cubic_file(&read_source(cubic)?, &domain))?;
            let depth = g.smooth_depth.unwrap_or(g.ext_depth);
            let cert = with_source(cubic, smoothness_search(&f, 4, p, depth))?;
            let text = match cert.singular_point() {
                Some(pt) => format!("singular point found: {pt}"),
                None => format!(
                    "no singular point over GF({p}^k), k <= {depth} (bounded search, not a proof of smoothness)"
                ),
            };
            emit(g, serde_json::to_value(&cert).expect("serializable"), text);
            Ok(if cert.is_singular() { 1 } else { 0 })
        }
        Command::CheckContact { matrix } => {
            let p = finite_prime(&domain)?;
            let a = load_matrix(matrix)?;
            let (d, h) = (discriminant(&a), associated_conic(&a));
            if d.is_degenerate() || h.is_degenerate() {
                emit(g, json!({ "violation": "det A or h vanishes identically" }), "violation: det A or h vanishes identically".into());
                return Ok(1);
            }
            let report = with_source(matrix, even_contact_check(d.form(), h.form(), p, g.ext_depth, g.order_bound))?;
            let mut text: String = report
                .points
                .iter()
                .map(|c| format!("{} over degree {}: multiplicity {}\n", c.point, c.field_degree, c.multiplicity))
                .collect();
            text.push_str(&format!("total {} of {}, all even: {}\n", report.total, report.bezout, report.all_even));
            emit(g, serde_json::to_value(&report).expect("serializable"), text);
            Ok(match report.verdict {
                ContactVerdict::EvenComplete => 0,
                ContactVerdict::OddContact => 1,
                ContactVerdict::Incomplete => 3,
            })
        }
        Command::Pipeline { matrix, cubic, line, random } => {
            let opts = PipelineOptions {
                ext_depth: g.ext_depth,
                smooth_depth,
                order_bound: g.order_bound,
                allow_small_char: g.allow_small_char,
            };
            let (input, description) = if let Some(path) = matrix {
                (PipelineInput::Matrix(load_matrix(path)?), format!("matrix file {path}"))
            } else if let Some(path) = cubic {
                let arg = line.as_deref().expect("clap enforces --line");
                let form = with_source(path, parse_cubic_file(&read_source(path)?, &domain))?;
                let line: ProjLine = with_source("--line", parse_line_arg(arg, &domain))?;
                (PipelineInput::CubicWithLine { cubic: form, line }, format!("cubic file {path}, line {arg}"))
            } else if *random {
                finite_prime(&domain)?;
                let mut rng = seeded_rng(g.seed);
                match with_source("--random", search_smooth_matrix(&domain, &mut rng, smooth_depth, RANDOM_ATTEMPTS))? {
                    Some(found) => (
                        PipelineInput::Matrix(found.matrix),
                        format!("random matrix, seed {}, attempt {}", g.seed, found.attempts),
                    ),
                    None => {
                        let msg = format!("no smooth cubic among {RANDOM_ATTEMPTS} random matrices");
                        emit(g, json!({ "verdict": msg }), msg.clone());
                        return Ok(3);
                    }
                }
            } else {
                return Err(Failure::usage("pipeline needs --matrix, --cubic with --line, or --random"));
            };
            let report = with_source("", run_pipeline(input, &description, &opts))?;
            emit(g, serde_json::to_value(&report).expect("serializable"), report.render());
            Ok(report.exit_code() as u8)
        }
        Command::CoverCheck { graph, require_genus6 } => {
            let parsed = with_source(graph, parse_cover_graph(&read_source(graph)?))?;
            let report = with_source(graph, check_cover_graph(&parsed, *require_genus6))?;
            let mut text = format!("arithmetic genus {}\n", report.arithmetic_genus);
            for c in &report.components {
                text.push_str(&format!(
                    "component {}: genus {}, b = {}, deg = {}, cover genus {}\n",
                    c.id, c.genus, c.b, c.degree, c.genus_upstairs
                ));
            }
            for v in &report.violations {
                text.push_str(&format!("violation: {v}\n"));
            }
            text.push_str(if report.passed() { "pass\n" } else { "fail\n" });
            emit(g, serde_json::to_value(&report).expect("serializable"), text);
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
