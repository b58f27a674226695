use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use simplex_design::algebra::{decomposition_table, in_span, power_sum_basis, symmetrized_monomial};
use simplex_design::construct::{
    build_design, table_rows, tables_csv, three_value_report, triangle_cubic_roots, uniform_excess_family,
};
use simplex_design::design::DesignForm;
use simplex_design::io::{design_to_json, parse_group, read_design, write_atomic};
use simplex_design::moments::{monomial_average, simplex_moment};
use simplex_design::plot::{plot, PlotFunction, PlotOptions, DEFAULT_BANDS, DEFAULT_GRID};
use simplex_design::scalar::{exact_to_f64, format_exact, format_f64};
use simplex_design::verify::{
    cross_validate, verify_brute_force, verify_g_restricted, verify_power_sum_criterion, BruteForceOptions,
    VerificationResult, DEFAULT_TOLERANCE,
};
use simplex_design::{enumerate_multi_indices, DesignSet, MultiIndex, PermGroup, PointVector};

#[derive(Parser, Debug)]
#[command(name = "simplex-design", version, about = "Verify and construct t-designs on the probability simplex")]
struct Cli {
    /// Absolute tolerance for floating-point moment comparisons.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file (directory for `construct`). Defaults to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized demonstrations.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyMethod {
    BruteForce,
    PowerSum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    ThreeValue,
    UniformExcess,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the moment conditions of a design file up to degree t.
    Verify {
        #[arg(long)]
        design: PathBuf,
        #[arg(long)]
        t: u32,
        /// Only check averages of monomials symmetrized over this group (sym, cyc, gen:...).
        #[arg(long)]
        restricted: Option<String>,
        #[arg(long, value_enum, default_value = "brute-force")]
        method: VerifyMethod,
    },
    /// Solve a design family and write one design file per solution.
    Construct {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum)]
        family: Family,
        /// Also emit solutions with negative coordinates.
        #[arg(long)]
        include_pseudo: bool,
    },
    /// Regenerate the proper and improper three-value solution tables.
    Tables {
        /// Round values to this many decimals.
        #[arg(long)]
        decimals: Option<usize>,
    },
    /// Demonstrate the cyclic-symmetrization failure and its symmetric repair.
    Counterexample {
        /// Number of seeded random cross-validation cases to append.
        #[arg(long, default_value_t = 20)]
        random_cases: usize,
    },
    /// Exact span tests of symmetrized monomials against the power-sum basis.
    Span {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        t: u32,
        #[arg(long, default_value = "sym")]
        group: String,
        /// Test one exponent vector (e.g. `2,1,0`) instead of printing the table.
        #[arg(long)]
        index: Option<String>,
    },
    /// Draw a contour plot on the 2-simplex as SVG.
    Plot {
        #[arg(long)]
        design: Option<PathBuf>,
        /// Exponent vector of the plotted monomial, e.g. `2,1,0`.
        #[arg(long)]
        monomial: Option<String>,
        /// Symmetrize the monomial over this group.
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_BANDS)]
        bands: usize,
    },
}

/// Bad input; exit code 2. Other errors exit with 1.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()).into())
}

struct Output {
    text: String,
    pass: bool,
}

impl Output {
    fn pass(text: String) -> Self {
        Output { text, pass: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out.text) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match (&cli.out, &cli.command) {
        (_, Command::Construct { .. }) | (None, _) => {
            print!("{text}");
            Ok(())
        }
        (Some(path), _) => write_atomic(path, text).with_context(|| format!("writing {}", path.display())),
    }
}

fn run(cli: &Cli) -> Result<Output> {
    if !(cli.tolerance > 0.0 && cli.tolerance.is_finite()) {
        return usage("--tolerance must be a positive number");
    }
    match &cli.command {
        Command::Verify { design, t, restricted, method } => {
            cmd_verify(cli, design, *t, restricted.as_deref(), *method)
        }
        Command::Construct { d, family, include_pseudo } => cmd_construct(cli, *d, *family, *include_pseudo),
        Command::Tables { decimals } => cmd_tables(cli, *decimals),
        Command::Counterexample { random_cases } => cmd_counterexample(cli, *random_cases),
        Command::Span { d, t, group, index } => cmd_span(cli, *d, *t, group, index.as_deref()),
        Command::Plot { design, monomial, group, grid, bands } => {
            cmd_plot(cli, design.as_deref(), monomial.as_deref(), group.as_deref(), *grid, *bands)
        }
    }
}

fn format_or(cli: &Cli, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = cli.format.unwrap_or(default);
    if !allowed.contains(&f) {
        return usage(format!("format {f:?} is not supported by this command").to_lowercase());
    }
    Ok(f)
}

fn json_text(v: &Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn load_design(path: &Path) -> Result<DesignSet> {
    read_design(path).map_err(|e| UsageError(format!("{}: {e}", path.display())).into())
}

fn group_for(spec: &str, d: usize) -> Result<PermGroup> {
    parse_group(spec, d).map_err(|e| UsageError(e.to_string()).into())
}

fn parse_index(spec: &str) -> Result<MultiIndex> {
    let exps = spec
        .split(',')
        .map(|v| v.trim().parse::<u32>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| UsageError(format!("bad exponent vector `{spec}`")))?;
    Ok(MultiIndex::new(exps))
}

fn render_verification(r: &VerificationResult, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut v = r.to_json();
            if let Value::Object(map) = &mut v {
                map.insert("classification".into(), json!(r.classification.as_str()));
            }
            json_text(&v)
        }
        Format::Csv => {
            let mut out = String::from(simplex_design::MomentReport::CSV_HEADER);
            out.push('\n');
            for rep in &r.reports {
                out.push_str(&rep.csv_row());
                out.push('\n');
            }
            Ok(out)
        }
        _ => {
            let mut out = format!(
                "method: {}\nt: {}\nverdict: {}\nmax |residual|: {}\ntolerance: {}\n",
                serde_json::to_value(r.method)?.as_str().unwrap_or_default(),
                r.t,
                r.classification.as_str(),
                format_f64(r.max_abs_residual),
                format_f64(r.tolerance)
            );
            let failing: Vec<_> = r.worst(r.reports.len()).into_iter().filter(|m| m.abs_residual > r.tolerance).collect();
            if !failing.is_empty() {
                out.push_str("failing indices:\n");
                for m in failing.iter().take(10) {
                    out.push_str(&format!(
                        "  {}  target {}  observed {}  residual {}\n",
                        m.index,
                        format_exact(&m.target),
                        m.observed.render(),
                        m.residual.render()
                    ));
                }
            }
            Ok(out)
        }
    }
}

fn cmd_verify(cli: &Cli, path: &Path, t: u32, restricted: Option<&str>, method: VerifyMethod) -> Result<Output> {
    if t == 0 {
        return usage("--t must be at least 1");
    }
    let format = format_or(cli, Format::Json, &[Format::Json, Format::Csv, Format::Text])?;
    let x = load_design(path)?;
    let result = match (restricted, method) {
        (Some(spec), VerifyMethod::BruteForce) => {
            let g = group_for(spec, x.dim())?;
            verify_g_restricted(&x, t, &g, cli.tolerance)?
        }
        (Some(_), VerifyMethod::PowerSum) => return usage("--restricted cannot be combined with --method power-sum"),
        (None, VerifyMethod::BruteForce) => {
            verify_brute_force(&x, t, BruteForceOptions { tolerance: cli.tolerance, canonical_only: false }).map_err(
                |e| match e {
                    simplex_design::Error::CapExceeded { .. } => {
                        anyhow::anyhow!("{e}; symmetric orbits can be checked with --method power-sum")
                    }
                    other => other.into(),
                },
            )?
        }
        (None, VerifyMethod::PowerSum) => match x.form() {
            DesignForm::Orbit { base, group } if group.is_symmetric() => {
                verify_power_sum_criterion(base, t, cli.tolerance)?
            }
            _ => return usage("--method power-sum needs an orbit design under the full symmetric group"),
        },
    };
    Ok(Output { text: render_verification(&result, format)?, pass: result.is_design })
}

fn cmd_construct(cli: &Cli, d: usize, family: Family, include_pseudo: bool) -> Result<Output> {
    let format = format_or(cli, Format::Json, &[Format::Json, Format::Text])?;
    if d < 2 {
        return usage("--d must be at least 2");
    }
    let (name, solutions, designs, distinct): (&str, Value, Vec<DesignSet>, Vec<u128>) = match family {
        Family::ThreeValue => {
            let report = three_value_report(d)?;
            let kept: Vec<_> = report.solutions.iter().filter(|s| s.proper || include_pseudo).cloned().collect();
            if kept.is_empty() {
                bail!("no proper three-value solution at d = {d}; pass --include-pseudo for pseudodesigns");
            }
            let designs = kept.iter().map(|s| build_design(s, PermGroup::symmetric(d))).collect::<Result<_, _>>()?;
            let mut v = serde_json::to_value(&report)?;
            v["solutions"] = serde_json::to_value(&kept)?;
            let distinct = kept.iter().map(|s| s.orbit_size).collect();
            ("three_value", v, designs, distinct)
        }
        Family::UniformExcess => {
            let sols = uniform_excess_family(d, 2)?;
            let kept: Vec<_> = sols.into_iter().filter(|s| s.proper || include_pseudo).collect();
            if kept.is_empty() {
                bail!("no proper uniform-excess solution at d = {d}; pass --include-pseudo for pseudodesigns");
            }
            let designs = kept
                .iter()
                .map(|s| DesignSet::explicit(uniform_excess_points(&s.base_point, d)))
                .collect::<Result<_, _>>()?;
            let distinct = vec![d as u128; kept.len()];
            ("uniform_excess", json!({ "d": d, "solutions": kept }), designs, distinct)
        }
    };

    let mut files = Vec::new();
    if let Some(dir) = &cli.out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (i, x) in designs.iter().enumerate() {
            let path = dir.join(format!("{name}_d{d}_{}.json", i + 1));
            simplex_design::io::write_design(&path, x)?;
            files.push(path.display().to_string());
        }
    }
    let designs_json: Vec<Value> = designs.iter().map(design_to_json).collect();
    let text = match format {
        Format::Json => json_text(&json!({ "family": name, "report": solutions, "designs": designs_json, "files": files }))?,
        _ => {
            let mut out = format!("family: {name}\nd: {d}\n");
            for (i, x) in designs.iter().enumerate() {
                let base: Vec<String> = x.base_points()[0].to_f64().iter().map(|v| format_f64(*v)).collect();
                out.push_str(&format!(
                    "solution {}: {} distinct points, {}, base [{}]\n",
                    i + 1,
                    distinct[i],
                    if x.is_proper() { "proper" } else { "pseudo" },
                    base.join(", ")
                ));
            }
            for f in &files {
                out.push_str(&format!("wrote {f}\n"));
            }
            out
        }
    };
    Ok(Output::pass(text))
}

/// The `d` cyclic shifts of `(a, b, ..., b)`, i.e. every placement of the excess.
fn uniform_excess_points(base: &PointVector, d: usize) -> Vec<PointVector> {
    (0..d).map(|s| base.permuted(&simplex_design::Permutation::shift(d, s)).expect("matching degree")).collect()
}

fn cmd_tables(cli: &Cli, decimals: Option<usize>) -> Result<Output> {
    let format = format_or(cli, Format::Csv, &[Format::Csv, Format::Json, Format::Text])?;
    let rows = table_rows()?;
    let text = match format {
        Format::Json => json_text(&serde_json::to_value(&rows)?)?,
        Format::Text => {
            let mut out = String::new();
            for (table, title) in [(1u8, "proper solutions"), (2, "improper solutions")] {
                out.push_str(&format!("{title}\n{:>6} {:>8} {:>8} {:>8}\n", "d", "a", "b", "1-a-b"));
                for r in rows.iter().filter(|r| r.table == table) {
                    out.push_str(&format!("{:>6} {:>8.3} {:>8.3} {:>8.3}\n", r.label, r.a, r.b, r.c));
                }
                out.push('\n');
            }
            out
        }
        _ => tables_csv(&rows, decimals),
    };
    Ok(Output::pass(text))
}

fn cmd_counterexample(cli: &Cli, random_cases: usize) -> Result<Output> {
    let format = format_or(cli, Format::Text, &[Format::Text, Format::Json])?;
    let roots = triangle_cubic_roots()?;
    let cyclic = DesignSet::orbit(vec![roots.clone()], PermGroup::cyclic(3))?;
    let full = DesignSet::orbit(vec![roots.clone()], PermGroup::symmetric(3))?;

    let mut moments = Vec::new();
    for k in (1..=3).flat_map(|deg| enumerate_multi_indices(3, deg, true)) {
        let target = exact_to_f64(&simplex_moment(&k));
        let cyc = monomial_average(&cyclic, &k)?.to_f64();
        let mirrored = monomial_average(&full, &k)?.to_f64();
        moments.push((k, target, cyc, mirrored));
    }
    let headline = moments.iter().find(|m| m.0.exponents() == [1, 2, 0]).expect("degree-3 index present");

    let span_case = |g: PermGroup, cand: &[u32], basis_degrees: u32| -> Result<(String, bool)> {
        let d = g.degree();
        let basis = (1..=basis_degrees)
            .map(|j| symmetrized_monomial(&g, &MultiIndex::leading(d, j)))
            .collect::<Result<Vec<_>, _>>()?;
        let k = MultiIndex::new(cand.to_vec());
        let verdict = in_span(&symmetrized_monomial(&g, &k)?, &basis)?.in_span;
        let terms: Vec<String> = (1..=basis_degrees).map(|j| format!("F_{}{}", g.tag(), MultiIndex::leading(d, j))).collect();
        Ok((format!("F_{}{k} in span{{{}}}", g.tag(), terms.join(", ")), verdict))
    };
    let spans = [
        span_case(PermGroup::cyclic(3), &[2, 1, 0], 3)?,
        span_case(PermGroup::cyclic(4), &[1, 0, 1, 0], 2)?,
        span_case(PermGroup::symmetric(3), &[2, 1, 0], 3)?,
    ];

    let repair3 = verify_brute_force(&full, 3, BruteForceOptions { tolerance: cli.tolerance, canonical_only: false })?;
    let repair4 = verify_brute_force(&full, 4, BruteForceOptions { tolerance: cli.tolerance, canonical_only: false })?;

    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut agree = 0;
    for _ in 0..random_cases {
        let d = rng.random_range(2..=5usize);
        let t = rng.random_range(1..=3u32);
        let w: Vec<f64> = (0..d).map(|_| rng.random::<f64>() + 1e-3).collect();
        let total: f64 = w.iter().sum();
        let mut coords: Vec<f64> = w.iter().map(|v| v / total).collect();
        let head: f64 = coords[..d - 1].iter().sum();
        coords[d - 1] = 1.0 - head;
        let cv = cross_validate(&[PointVector::float(coords)?], t, cli.tolerance)?;
        if cv.agree {
            agree += 1;
        }
    }

    let text = match format {
        Format::Json => json_text(&json!({
            "roots": roots.to_f64(),
            "moments": moments.iter().map(|(k, target, cyc, mir)| json!({
                "index": k, "target": target, "cyclic": cyc, "mirror_averaged": mir,
            })).collect::<Vec<_>>(),
            "cyclic_residual": (headline.2 - headline.1).abs(),
            "mirror_residual": (headline.3 - headline.1).abs(),
            "spans": spans.iter().map(|(s, v)| json!({ "statement": s, "in_span": v })).collect::<Vec<_>>(),
            "symmetric_orbit": { "t3": repair3.is_design, "t4": repair4.is_design,
                                 "t3_max_abs_residual": repair3.max_abs_residual },
            "random_cross_validation": { "seed": cli.seed, "cases": random_cases, "agree": agree },
        }))?,
        _ => {
            let r = roots.to_f64();
            let mut out = format!(
                "roots of 60x^3 - 60x^2 + 15x - 1: {}, {}, {}\n\n",
                format_f64(r[0]),
                format_f64(r[1]),
                format_f64(r[2])
            );
            out.push_str("moments of the 3-point cyclic orbit (degree <= 3)\n");
            out.push_str(&format!("{:<10} {:>12} {:>12} {:>12} {:>15}\n", "index", "target", "cyclic", "residual", "mirror-avg res"));
            for (k, target, cyc, mir) in &moments {
                out.push_str(&format!(
                    "{:<10} {:>12.8} {:>12.8} {:>12.2e} {:>15.2e}\n",
                    k.to_string(),
                    target,
                    cyc,
                    cyc - target,
                    mir - target
                ));
            }
            out.push_str(&format!(
                "\nresidual: |<x1 x2^2>_X - 1/30| = {:.5}; mirror-averaged residual {:.1e}\n\n",
                (headline.2 - headline.1).abs(),
                (headline.3 - headline.1).abs()
            ));
            for (s, v) in &spans {
                out.push_str(&format!("span: {s} -> {}\n", if *v { "IN SPAN" } else { "NOT IN SPAN" }));
            }
            out.push_str(&format!(
                "\nrepair: S3-orbit (6 points) {} t=3 (max residual {:.1e}); {} t=4\n",
                if repair3.is_design { "passes" } else { "fails" },
                repair3.max_abs_residual,
                if repair4.is_design { "passes" } else { "fails" }
            ));
            out.push_str(&format!(
                "random cross-validation (seed {}): {agree}/{random_cases} cases agree\n",
                cli.seed
            ));
            out
        }
    };
    Ok(Output::pass(text))
}

fn cmd_span(cli: &Cli, d: usize, t: u32, group: &str, index: Option<&str>) -> Result<Output> {
    if d < 2 || t < 1 {
        return usage("span needs d >= 2 and t >= 1");
    }
    let g = group_for(group, d)?;
    match index {
        Some(spec) => {
            let format = format_or(cli, Format::Text, &[Format::Text, Format::Json])?;
            let k = parse_index(spec)?;
            if k.dim() != d {
                return usage(format!("index {k} has {} entries, expected {d}", k.dim()));
            }
            let basis = power_sum_basis(&g, t)?;
            let result = in_span(&symmetrized_monomial(&g, &k)?, &basis)?;
            let coeffs: Option<Vec<String>> =
                result.coefficients.as_ref().map(|c| c.iter().map(format_exact).collect());
            let text = match format {
                Format::Json => json_text(&json!({
                    "d": d, "t": t, "group": g.tag(), "index": k,
                    "in_span": result.in_span, "degree": result.degree, "coefficients": coeffs,
                }))?,
                _ => {
                    let mut out = format!(
                        "F_{}{k} {} span{{1, F_{}(j,0,...,0) : j <= {t}}}\n",
                        g.tag(),
                        if result.in_span { "IN" } else { "NOT IN" },
                        g.tag()
                    );
                    if let Some(c) = coeffs {
                        out.push_str(&format!("coefficients: [{}]\n", c.join(", ")));
                    }
                    out
                }
            };
            Ok(Output { text, pass: result.in_span })
        }
        None => {
            let format = format_or(cli, Format::Text, &[Format::Text, Format::Csv, Format::Json])?;
            let table = decomposition_table(d, t, &g)?;
            let text = match format {
                Format::Json => json_text(&serde_json::to_value(&table)?)?,
                Format::Csv => table.to_csv(),
                _ => table.to_text(),
            };
            Ok(Output::pass(text))
        }
    }
}

fn cmd_plot(
    cli: &Cli,
    design: Option<&Path>,
    monomial: Option<&str>,
    group: Option<&str>,
    grid: usize,
    bands: usize,
) -> Result<Output> {
    let format = format_or(cli, Format::Svg, &[Format::Svg, Format::Json])?;
    if design.is_none() && monomial.is_none() {
        return usage("plot needs --design, --monomial, or both");
    }
    if grid == 0 || bands == 0 {
        return usage("--grid and --bands must be positive");
    }
    let x = design.map(load_design).transpose()?;
    let function = match monomial {
        Some(spec) => {
            let k = parse_index(spec)?;
            if k.dim() != 3 {
                return usage(format!("plots need d = 3, got d = {}", k.dim()));
            }
            Some(match group {
                Some(g) => PlotFunction::Symmetrized(k, group_for(g, 3)?),
                None => PlotFunction::Monomial(k),
            })
        }
        None => None,
    };
    if let Some(x) = &x {
        if x.dim() != 3 {
            return usage(format!("plots need d = 3, got d = {}", x.dim()));
        }
    }
    let summary = plot(function.as_ref(), x.as_ref(), &PlotOptions { grid, bands })?;
    let text = match format {
        Format::Json => json_text(&json!({
            "function": function.as_ref().map(PlotFunction::label),
            "points": summary.points.iter().map(|p| json!({
                "coords": p.coords, "class": if p.even { "even" } else { "odd" }, "value": p.value,
            })).collect::<Vec<_>>(),
            "even_mean": summary.even_mean,
            "odd_mean": summary.odd_mean,
            "value_spread": summary.value_spread,
        }))?,
        _ => summary.svg,
    };
    Ok(Output::pass(text))
}
