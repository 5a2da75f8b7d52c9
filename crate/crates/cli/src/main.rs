//! `fano`: command-line front end for the line-scheme and nodal-cubic pipelines.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use fano_core::fano::{
    analyze_complete_intersection, analyze_sigma, lines_through_random, random_complete_intersection,
    AnalysisOptions, PointedHypersurface, MAX_ATTEMPTS,
};
use fano_core::idealkit::{
    buchberger, hilbert_data, hilbert_data_of_basis, rational_points_with, singular_points, Check, PointOptions,
    SerializedPoint, Strategy, NOT_COMPUTED,
};
use fano_core::poly::parse;
use fano_core::projgeo::{ProjectivePoint, DEFAULT_BUDGET};
use fano_core::voisin::{voisin_demo, DemoOptions};
use fano_core::{Error, Field, Ideal, MonomialOrder, Polynomial, VarietyReport};

const EXIT_USAGE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "fano", version, about = "Lines through singular points, checked over finite fields")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "FANO_SEED", default_value_t = 0)]
    seed: u64,
    /// Characteristic of the base field; 0 selects the rationals where supported.
    #[arg(long, global = true, default_value_t = fano_core::field::DEFAULT_PRIME as u64)]
    prime: u64,
    /// Largest extension degree searched for points.
    #[arg(long, global = true)]
    kmax: Option<usize>,
    /// Random sections used for slice degrees.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Ceiling on the number of points an exhaustive scan may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Suppress the summary on stderr.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Scheme of lines through a point of given multiplicity.
    LinesThrough(LinesThrough),
    /// Nodes of a normal-form cubic and the lines through one of them.
    VoisinDemo(VoisinDemo),
    /// Groebner basis, dimension, degree and points of an ideal.
    Groebner(PolyInput),
    /// Singular points of a projective scheme.
    SingLocus(PolyInput),
    /// Random complete intersections against Bezout's bound.
    BezoutCheck(BezoutCheck),
}

#[derive(Args, Debug)]
struct LinesThrough {
    /// Random instance: N D M for degree D in P^N with a point of multiplicity M.
    #[arg(long, num_args = 3, value_names = ["N", "D", "M"], conflicts_with_all = ["poly", "point"])]
    random: Option<Vec<u32>>,
    /// File holding one homogeneous polynomial in x0, ..., xN.
    #[arg(long, requires_all = ["point", "mult"])]
    poly: Option<PathBuf>,
    /// Comma-separated coordinates of the point.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    point: Option<Vec<i64>>,
    /// Claimed multiplicity of the point.
    #[arg(long)]
    mult: Option<u32>,
}

#[derive(Args, Debug)]
struct VoisinDemo {
    #[arg(long)]
    r: usize,
    /// Extension degree for an exhaustive singular-point scan of the cubic.
    #[arg(long)]
    scan_kmax: Option<usize>,
    /// Skip the degree of the Jacobian ideal of the cubic.
    #[arg(long)]
    no_jacobian: bool,
}

#[derive(Args, Debug)]
struct PolyInput {
    /// Polynomials separated by ';'.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    polys: Option<String>,
    /// File with one polynomial per line; '#' starts a comment.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Comma-separated variable names; defaults to x0, x1, ... by use.
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    /// Monomial order for the basis.
    #[arg(long, default_value = "grevlex", value_parser = ["grevlex", "lex"])]
    order: String,
}

#[derive(Args, Debug)]
struct BezoutCheck {
    /// Ambient projective dimension.
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Degree lists separated by ';', each comma-separated.
    #[arg(long, default_value = "2,2;2,3")]
    degrees: String,
    /// Instances per degree list.
    #[arg(long, default_value_t = 3)]
    instances: u64,
}

/// Failure classes, mapped to exit codes.
#[derive(Debug)]
enum Failure {
    Usage(anyhow::Error),
    Budget(anyhow::Error),
    Verification(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::ResourceLimit(_) => Failure::Budget(e.into()),
            Error::MultiplicityMismatch { .. } | Error::DegenerateInstance(_) | Error::Inconclusive(_) => {
                Failure::Verification(e.into())
            }
            _ => Failure::Usage(e.into()),
        }
    }
}

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Usage(e.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let quiet = cli.global.quiet;
    match run(&cli) {
        Ok(report) => {
            if let Err(e) = emit(&report, &cli.global) {
                eprintln!("error: {e:#}");
                return ExitCode::from(EXIT_USAGE);
            }
            if !quiet {
                summarize(&report);
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MISMATCH)
            }
        }
        Err(f) => {
            let (code, e) = match f {
                Failure::Usage(e) => (EXIT_USAGE, e),
                Failure::Budget(e) => (EXIT_BUDGET, e),
                Failure::Verification(e) => (EXIT_MISMATCH, e),
            };
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}

fn field_of(g: &Global) -> Result<Field, Failure> {
    if g.prime == 0 {
        Ok(Field::rationals())
    } else {
        Field::prime(g.prime).map_err(Failure::from)
    }
}

fn finite_field_of(g: &Global) -> Result<Field, Failure> {
    let f = field_of(g)?;
    if !f.is_finite() {
        return Err(usage(anyhow::anyhow!("this command needs a prime field, --prime 0 is not allowed")));
    }
    Ok(f)
}

fn analysis_options(g: &Global) -> AnalysisOptions {
    let d = AnalysisOptions::default();
    AnalysisOptions {
        k_max: g.kmax.unwrap_or(d.k_max),
        trials: g.trials.unwrap_or(d.trials),
        budget: g.budget,
        ..d
    }
}

fn run(cli: &Cli) -> Result<VarietyReport, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::LinesThrough(a) => lines_through(a, g),
        Command::VoisinDemo(a) => {
            let field = finite_field_of(g)?;
            let opts = DemoOptions {
                analysis: analysis_options(g),
                scan_k_max: a.scan_kmax,
                jacobian_degree: !a.no_jacobian,
            };
            Ok(voisin_demo(a.r, &field, g.seed, &opts)?)
        }
        Command::Groebner(a) => groebner(a, g),
        Command::SingLocus(a) => sing_locus(a, g),
        Command::BezoutCheck(a) => bezout_check(a, g),
    }
}

fn lines_through(a: &LinesThrough, g: &Global) -> Result<VarietyReport, Failure> {
    let field = finite_field_of(g)?;
    let opts = analysis_options(g);
    if let Some(v) = &a.random {
        let (n, d, m) = (v[0] as usize, v[1], v[2]);
        return Ok(lines_through_random(n, d, m, &field, g.seed, &opts)?);
    }
    let (Some(path), Some(point), Some(m)) = (&a.poly, &a.point, a.mult) else {
        return Err(usage(anyhow::anyhow!("give either --random N D M or --poly FILE --point P --mult M")));
    };
    let text = read_input(path)?;
    let names = Polynomial::default_names(point.len());
    let f = parse(&text.join(" "), &names, &field)?;
    let y = ProjectivePoint::new(&field, point.iter().map(|&c| field.from_i64(c)).collect())?;
    let ph = PointedHypersurface::new(f, y, m)?;
    let mut report = analyze_sigma(&ph, &opts, g.seed)?;
    report.param("seed", g.seed);
    report.finish();
    Ok(report)
}

fn read_input(path: &Path) -> Result<Vec<String>, Failure> {
    let raw = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(usage)?;
    Ok(raw
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
        .filter(|l| !l.is_empty())
        .collect())
}

fn parse_ideal(a: &PolyInput, field: &Field) -> Result<Ideal, Failure> {
    let texts: Vec<String> = match (&a.polys, &a.file) {
        (Some(s), _) => s.split(';').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect(),
        (None, Some(p)) => read_input(p)?,
        (None, None) => return Err(usage(anyhow::anyhow!("give --polys or --file"))),
    };
    let names = match &a.vars {
        Some(v) => v.clone(),
        None => Polynomial::default_names(implied_vars(&texts)),
    };
    let gens = texts
        .iter()
        .map(|t| parse(t, &names, field))
        .collect::<Result<Vec<_>, _>>()?;
    let order = if a.order == "lex" { MonomialOrder::Lex } else { MonomialOrder::GrevLex };
    Ok(Ideal::new(gens)?.with_order(order))
}

/// One more than the largest index `i` among identifiers `x<i>`.
fn implied_vars(texts: &[String]) -> usize {
    let mut top = 0;
    for t in texts {
        let b = t.as_bytes();
        for (i, &c) in b.iter().enumerate() {
            let starts = c == b'x' && (i == 0 || !b[i - 1].is_ascii_alphanumeric());
            if starts {
                let digits: String = t[i + 1..].chars().take_while(char::is_ascii_digit).collect();
                if let Ok(k) = digits.parse::<usize>() {
                    top = top.max(k + 1);
                }
            }
        }
    }
    top.max(1)
}

fn groebner(a: &PolyInput, g: &Global) -> Result<VarietyReport, Failure> {
    let field = field_of(g)?;
    let ideal = parse_ideal(a, &field)?;
    let gb = buchberger(&ideal)?;
    let mut report = VarietyReport::new("groebner", &field, ideal.ambient_dim());
    report.param("order", &a.order);
    report.generators = ideal.generator_texts();
    let names = match &a.vars {
        Some(v) => v.clone(),
        None => Polynomial::default_names(ideal.nvars()),
    };
    let basis: Vec<String> = gb.polynomials().iter().map(|p| p.to_text(&names)).collect();
    report.notes.push(format!("basis: {}", basis.join("; ")));
    let reduces = ideal.generators().iter().all(|f| gb.contains(f));
    report.check(Check::holds("generators reduce to zero", reduces));
    if !ideal.is_homogeneous() {
        report.notes.push("inhomogeneous input: dimension and degree not computed".into());
        report.finish();
        return Ok(report);
    }
    let hd = hilbert_data_of_basis(&gb);
    report.dimension = hd.dimension;
    report.degree = hd.degree;
    report.is_complete_intersection = hd.dimension == ideal.ambient_dim() as i64 - ideal.generators().len() as i64;
    if hd.dimension == 0 && field.is_finite() {
        let k_max = g.kmax.unwrap_or(6);
        let pts = rational_points_with(
            &ideal,
            PointOptions {
                k_max,
                budget: g.budget,
                strategy: Strategy::Auto,
            },
        )?;
        let found = pts.count() as u128;
        report.predict("count_at_most", hd.degree);
        if found < hd.degree {
            report.check(Check::flagged(
                "count",
                hd.degree,
                found,
                &format!("points in higher extension or with multiplicity (searched k <= {k_max})"),
            ));
        } else {
            report.check(Check::compare("count", hd.degree, found));
        }
        report.solutions = SerializedPoint::from_set(&pts);
    }
    report.finish();
    Ok(report)
}

fn sing_locus(a: &PolyInput, g: &Global) -> Result<VarietyReport, Failure> {
    let field = finite_field_of(g)?;
    let ideal = parse_ideal(a, &field)?;
    let opts = PointOptions {
        k_max: g.kmax.unwrap_or(2),
        budget: g.budget,
        strategy: Strategy::Auto,
    };
    let pts = singular_points(&ideal, opts)?;
    let mut report = VarietyReport::new("sing-locus", &field, ideal.ambient_dim());
    report.generators = ideal.generator_texts();
    if ideal.is_homogeneous() {
        let hd = hilbert_data(&ideal)?;
        report.dimension = hd.dimension;
        report.degree = hd.degree;
    }
    let on = pts.points.iter().all(|p| {
        let emb = field.embedding_into(&p.field).expect("subfield");
        ideal.generators().iter().all(|f| p.point.vanishes(&f.map_coefficients(&emb)))
    });
    report.check(Check::holds("singular points lie on the scheme", on));
    report.param("k_max", opts.k_max);
    report.singular_points = SerializedPoint::from_set(&pts);
    report.notes.push(format!("{} singular points over extensions of degree <= {}", pts.count(), opts.k_max));
    report.finish();
    Ok(report)
}

fn bezout_check(a: &BezoutCheck, g: &Global) -> Result<VarietyReport, Failure> {
    let field = finite_field_of(g)?;
    let lists: Vec<Vec<u32>> = a
        .degrees
        .split(';')
        .map(|l| l.split(',').map(|d| d.trim().parse::<u32>()).collect())
        .collect::<Result<_, _>>()
        .map_err(|e| usage(anyhow::anyhow!("bad --degrees: {e}")))?;
    let opts = AnalysisOptions {
        sample_target: 20,
        ..analysis_options(g)
    };
    let mut report = VarietyReport::new("bezout-check", &field, a.n);
    report.dimension = NOT_COMPUTED;
    report.notes.push("dimension and degree of each instance are in the checks".into());
    report.param("degrees", &a.degrees);
    report.param("instances", a.instances);
    report.param("seed", g.seed);
    for degs in &lists {
        for i in 0..a.instances {
            let mut tried = Vec::new();
            let mut done = None;
            for attempt in 0..MAX_ATTEMPTS {
                let s = g.seed.wrapping_add(i * MAX_ATTEMPTS + attempt);
                let ideal = random_complete_intersection(a.n, degs, &field, s)?;
                let r = analyze_complete_intersection(&ideal, &opts, s)?;
                tried.push(s);
                if r.passed() || attempt + 1 == MAX_ATTEMPTS {
                    done = Some((s, r));
                    break;
                }
            }
            let (s, r) = done.expect("at least one attempt");
            let tag = format!("{degs:?} seed {s}");
            for c in r.checks {
                report.check(Check { name: format!("{tag}: {}", c.name), ..c });
            }
            report.predict(&format!("degree {tag}"), degs.iter().product::<u32>());
            if tried.len() > 1 {
                report.notes.push(format!("{degs:?}: reseeded through {tried:?}"));
            }
        }
    }
    report.finish();
    Ok(report)
}

/// Writes the report atomically to `--json`, or to stdout.
fn emit(report: &VarietyReport, g: &Global) -> anyhow::Result<()> {
    let text = report.to_json() + "\n";
    match &g.json {
        Some(path) => {
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating temp file in {}", dir.display()))?;
            tmp.write_all(text.as_bytes())?;
            tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn summarize(r: &VarietyReport) {
    eprintln!(
        "{} over {}: dimension {}, degree {}, verdict {}",
        r.pipeline,
        r.field,
        if r.dimension < 0 { "empty".to_string() } else { r.dimension.to_string() },
        r.degree,
        r.verdict
    );
    for c in &r.checks {
        eprintln!("  [{:?}] {}: predicted {}, computed {}", c.status, c.name, c.predicted, c.computed);
    }
}
