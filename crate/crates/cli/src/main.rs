use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use curve_towers::bordered::{double_pipeline, require_bordered, DoubleConfig};
use curve_towers::bounds::{
    constant_c, dil_bound, floor_value, height_bound, isect_bound, isect_crossover, log_branch_crossover, to_decimal,
    BoundReport,
};
use curve_towers::certificate::{validate_certificate, Certificate};
use curve_towers::corpus::{admissible, examples, punctured_torus, random_pairs, three_holed_sphere, Example};
use curve_towers::functional::{audit, zeta_scan, SearchConfig};
use curve_towers::homology::H1Space;
use curve_towers::nilpotent::{lcs_degree, magnus, Word};
use curve_towers::surface::{build_surface, is_minimal_position, CurveArcTriple, InputSpec, MinimalityWitness};
use curve_towers::tower::{build_resolving_tower, intersection_report, TowerConfig};

#[derive(Parser)]
#[command(
    name = "curve-towers",
    version,
    about = "Towers of double covers resolving crossings of curves on surfaces"
)]
struct Cli {
    #[command(flatten)]
    opts: Global,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Seed for sampled searches and random pairs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest dimension searched exhaustively.
    #[arg(long, global = true, default_value_t = 24)]
    enum_cap: usize,
    /// Largest permutation group enumerated.
    #[arg(long, global = true, default_value_t = 1 << 16)]
    group_cap: usize,
    /// Truncation degree of Magnus expansions.
    #[arg(long, global = true, default_value_t = 8)]
    magnus_depth: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Cert)]
    format: Format,
    /// Write one file per result into this directory instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Cert,
    Csv,
    #[value(name = "json-like")]
    JsonLike,
}

#[derive(Subcommand)]
enum Command {
    /// Check input files or certificates.
    Validate {
        #[arg(long)]
        input: Vec<PathBuf>,
        #[arg(long)]
        certificate: Vec<PathBuf>,
    },
    /// Build resolving towers. Runs the bundled examples when no input is given.
    Tower {
        #[arg(long)]
        input: Vec<PathBuf>,
        #[arg(long)]
        example: Vec<String>,
        /// Also run this many random pairs, seeded from --seed.
        #[arg(long, default_value_t = 0)]
        random: usize,
        /// Largest height whose monodromy group is enumerated.
        #[arg(long, default_value_t = 4)]
        max_k: usize,
    },
    /// Exhaustive audits of the functional searches.
    Audit {
        /// Dimensions to audit (default 2 to 10).
        #[arg(long)]
        dim: Vec<usize>,
        /// Vectors and splittings per dimension.
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 20)]
        zeta_max: u32,
    },
    /// Magnus expansion and lower central series depth of a word.
    Magnus {
        /// Letters a, b, ... with inverses A, B, ... or a^-1.
        #[arg(long)]
        word: String,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Double a bordered surface and run the tower there.
    Double {
        #[arg(long)]
        input: Vec<PathBuf>,
        #[arg(long)]
        example: Vec<String>,
        #[arg(long, default_value_t = 4)]
        max_k: usize,
    },
    /// Constants and explicit bounds.
    Bounds {
        #[arg(long)]
        d: Vec<u64>,
        #[arg(long)]
        k: Vec<u64>,
        #[arg(long)]
        n: Vec<u64>,
    },
    /// Write the bundled inputs as JSON.
    Examples,
}

struct Output<'a> {
    opts: &'a Global,
    stdout: String,
}

impl Output<'_> {
    fn emit(&mut self, file: &str, content: &str) -> Result<()> {
        match &self.opts.out {
            Some(dir) => {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                let path = dir.join(file);
                fs::write(&path, content).with_context(|| format!("writing {}", path.display()))
            }
            None => {
                self.stdout.push_str(content);
                if !content.ends_with('\n') {
                    self.stdout.push('\n');
                }
                Ok(())
            }
        }
    }
}

fn load_input(path: &Path) -> Result<(String, CurveArcTriple)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let spec = InputSpec::from_json(&text).with_context(|| format!("{}", path.display()))?;
    let built = build_surface(&spec).with_context(|| format!("{}", path.display()))?;
    let name = built.name.clone().unwrap_or_else(|| {
        path.file_stem()
            .map_or("input".into(), |s| s.to_string_lossy().into_owned())
    });
    let triple = built
        .triple
        .ok_or_else(|| anyhow!("{}: the input has no curves", path.display()))?;
    Ok((name, triple))
}

fn find_example(name: &str) -> Result<Example> {
    match name {
        "punctured-torus" => Ok(punctured_torus()?),
        "three-holed-sphere" => Ok(three_holed_sphere()?),
        _ => Ok(curve_towers::corpus::example(name)?),
    }
}

fn tower_config(opts: &Global) -> TowerConfig {
    TowerConfig {
        search: SearchConfig {
            enum_cap: opts.enum_cap,
            seed: opts.seed,
        },
        ..TowerConfig::default()
    }
}

struct Row {
    name: String,
    cells: Vec<String>,
    ok: bool,
    text: String,
}

fn csv_text(header: &[&str], rows: &[Row]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r.cells)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn run_tower(name: &str, t: &CurveArcTriple, opts: &Global, max_k: usize) -> Row {
    let cfg = tower_config(opts);
    match build_resolving_tower(t, &cfg) {
        Ok(cert) => {
            let report = intersection_report(&cert, None, max_k, opts.group_cap);
            let portable = Certificate::from_tower(Some(name), &cert);
            let ok = cert.all_checks() && report.all_checks();
            let core = report.core.as_ref();
            let mut text = match opts.format {
                Format::JsonLike => portable.to_json(),
                _ => portable.to_text(),
            };
            if opts.format == Format::Cert {
                if let Some(c) = core {
                    let _ = writeln!(text, "# ell: {} of at most {}", opt(c.ell), c.ell_bound);
                    let _ = writeln!(text, "# class: {}", opt(c.class));
                    for (n, holds) in &c.checks {
                        let _ = writeln!(text, "# group check: {n} = {}", if *holds { "ok" } else { "FAILED" });
                    }
                }
                for n in &report.notes {
                    let _ = writeln!(text, "# note: {n}");
                }
            }
            Row {
                name: name.to_string(),
                cells: vec![
                    name.to_string(),
                    cert.n0.to_string(),
                    cert.k.to_string(),
                    cert.k_bound.to_string(),
                    opt(core.and_then(|c| c.ell)),
                    opt(core.map(|c| c.ell_bound)),
                    opt(core.and_then(|c| c.class)),
                    ok.to_string(),
                ],
                ok,
                text,
            }
        }
        Err(e) => Row {
            name: name.to_string(),
            cells: vec![
                name.to_string(),
                t.n().to_string(),
                String::new(),
                height_bound(t.n() as u64).to_string(),
                String::new(),
                String::new(),
                String::new(),
                "false".into(),
            ],
            ok: false,
            text: format!("# {name}: {e}\n"),
        },
    }
}

fn cmd_tower(out: &mut Output, input: &[PathBuf], names: &[String], random: usize, max_k: usize) -> Result<bool> {
    let opts = out.opts;
    let mut cases: Vec<(String, CurveArcTriple)> = Vec::new();
    for p in input {
        cases.push(load_input(p)?);
    }
    for n in names {
        let ex = find_example(n)?;
        cases.push((ex.name.to_string(), ex.triple));
    }
    if input.is_empty() && names.is_empty() && random == 0 {
        cases.extend(examples()?.into_iter().map(|e| (e.name.to_string(), e.triple)));
    }
    for c in random_pairs(random, opts.seed)? {
        cases.push((format!("random-{}", c.seed), c.triple));
    }
    let rows: Vec<Row> = cases
        .par_iter()
        .map(|(name, t)| run_tower(name, t, opts, max_k))
        .collect();
    let ext = if opts.format == Format::JsonLike {
        "json"
    } else {
        "cert"
    };
    if opts.format != Format::Csv {
        for r in &rows {
            out.emit(&format!("{}.{ext}", r.name), &r.text)?;
        }
    }
    let header = ["name", "N0", "k", "k_bound", "ell", "ell_bound", "class", "all_checks"];
    if opts.format == Format::Csv || opts.out.is_some() {
        out.emit("summary.csv", &csv_text(&header, &rows)?)?;
    }
    Ok(rows.iter().all(|r| r.ok))
}

fn cmd_validate(out: &mut Output, input: &[PathBuf], certs: &[PathBuf]) -> Result<bool> {
    if input.is_empty() && certs.is_empty() {
        bail!("nothing to validate: pass --input or --certificate");
    }
    let mut ok = true;
    let mut text = String::new();
    for p in input {
        let (name, t) = load_input(p)?;
        let s = &t.surface;
        let h = H1Space::new(s);
        let (ca, cb) = (h.class_of(&t.alpha)?, h.class_of(&t.beta)?);
        let minimal = is_minimal_position(s, &t.alpha, &t.beta)?;
        writeln!(text, "input: {}", p.display())?;
        writeln!(text, "  name: {name}")?;
        writeln!(
            text,
            "  surface: genus {} with {} boundary components, chi = {}, {} vertices, {} edges, {} faces",
            s.genus(),
            s.num_boundary_components(),
            s.euler_characteristic(),
            s.num_vertices(),
            s.num_edges(),
            s.num_faces()
        )?;
        writeln!(text, "  crossings: {}", t.n())?;
        writeln!(text, "  classes: alpha {ca}, beta {cb}, equal: {}", ca == cb)?;
        match minimal {
            MinimalityWitness::Minimal => writeln!(text, "  minimal position: yes")?,
            MinimalityWitness::Bigon(r) => writeln!(
                text,
                "  minimal position: no, bigon bounded by darts {:?}",
                r.boundary_walk
            )?,
            MinimalityWitness::NullhomotopicDisc(r) => writeln!(
                text,
                "  minimal position: no, a curve bounds a disc along darts {:?}",
                r.boundary_walk
            )?,
        }
        match admissible(&t) {
            Ok(()) => writeln!(text, "  tower input: admissible")?,
            Err(e) => writeln!(text, "  tower input: {e}")?,
        }
    }
    for p in certs {
        let raw = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        let cert = Certificate::parse(&raw).with_context(|| format!("{}", p.display()))?;
        let v = validate_certificate(&cert).with_context(|| format!("{}", p.display()))?;
        writeln!(text, "certificate: {}", p.display())?;
        for (n, holds) in &v.checks {
            writeln!(text, "  {n}: {}", if *holds { "ok" } else { "FAILED" })?;
        }
        writeln!(text, "  valid: {}", v.holds())?;
        ok &= v.holds();
    }
    out.emit("validate.txt", &text)?;
    Ok(ok)
}

fn cmd_audit(out: &mut Output, dims: &[usize], count: usize, zeta_max: u32) -> Result<bool> {
    let opts = out.opts;
    let dims: Vec<usize> = if dims.is_empty() {
        (2..=10).collect()
    } else {
        dims.to_vec()
    };
    let scan = zeta_scan(zeta_max)?;
    let reports = dims
        .par_iter()
        .map(|&d| audit(d, count, opts.seed.wrapping_add(d as u64), opts.enum_cap))
        .collect::<curve_towers::Result<Vec<_>>>()?;
    let ok = reports.iter().all(|r| r.all_checks()) && scan.min == num_rational::BigRational::new(3.into(), 7.into());
    match opts.format {
        Format::JsonLike => {
            let v = serde_json::json!({ "zeta": scan, "audits": reports });
            out.emit("audit.json", &serde_json::to_string_pretty(&v)?)?;
        }
        Format::Csv => {
            let rows: Vec<Row> = reports
                .iter()
                .map(|r| Row {
                    name: r.dim.to_string(),
                    cells: vec![
                        r.dim.to_string(),
                        r.m.to_string(),
                        r.half_mean.to_string(),
                        r.half_best.to_string(),
                        opt(r.split_best),
                        opt(r.split_probabilities_match),
                        r.all_checks().to_string(),
                    ],
                    ok: r.all_checks(),
                    text: String::new(),
                })
                .collect();
            let header = [
                "dim",
                "m",
                "half_mean",
                "half_best",
                "split_best",
                "zeta_match",
                "all_checks",
            ];
            out.emit("audit.csv", &csv_text(&header, &rows)?)?;
        }
        Format::Cert => {
            let mut text = String::new();
            writeln!(
                text,
                "zeta minimum over 3 <= n <= {}: {} at {:?} ({} points)",
                scan.n_max, scan.min, scan.argmin, scan.points
            )?;
            for r in &reports {
                writeln!(
                    text,
                    "dim {}: m = {}, mean hits = {}, best hits = {}, best splits = {}",
                    r.dim,
                    r.m,
                    r.half_mean,
                    r.half_best,
                    opt(r.split_best)
                )?;
                for (n, holds) in &r.checks {
                    writeln!(text, "  {n}: {}", if *holds { "ok" } else { "FAILED" })?;
                }
            }
            out.emit("audit.txt", &text)?;
        }
    }
    Ok(ok)
}

fn cmd_magnus(out: &mut Output, word: &str, rank: Option<usize>) -> Result<bool> {
    let w = Word::parse(word)?;
    let rank = rank.unwrap_or_else(|| w.rank()).max(1);
    let depth = out.opts.magnus_depth;
    let series = magnus(&w, rank, depth)?;
    let lcs = if w.reduced().is_empty() {
        "identity".to_string()
    } else {
        lcs_degree(&w, rank, depth)?.to_string()
    };
    let text = match out.opts.format {
        Format::JsonLike => serde_json::to_string_pretty(&serde_json::json!({
            "word": w.reduced().to_string(),
            "rank": rank,
            "depth": depth,
            "series": series.to_string(),
            "lcs_degree": lcs,
        }))?,
        Format::Csv => format!("word,rank,depth,lcs_degree\n{},{rank},{depth},{lcs}\n", w.reduced()),
        Format::Cert => format!(
            "word: {}\nrank: {rank}\ndepth: {depth}\nseries: {series}\nlcs degree: {lcs}\n",
            w.reduced()
        ),
    };
    out.emit("magnus.txt", &text)?;
    Ok(true)
}

fn cmd_double(out: &mut Output, input: &[PathBuf], names: &[String], max_k: usize) -> Result<bool> {
    let opts = out.opts;
    let mut cases: Vec<(String, CurveArcTriple)> = Vec::new();
    for p in input {
        cases.push(load_input(p)?);
    }
    for n in names {
        let ex = find_example(n)?;
        cases.push((ex.name.to_string(), ex.triple));
    }
    if cases.is_empty() {
        for ex in [punctured_torus()?, three_holed_sphere()?] {
            cases.push((ex.name.to_string(), ex.triple));
        }
    }
    for (_, t) in &cases {
        require_bordered(t)?;
    }
    let cfg = DoubleConfig {
        tower: tower_config(opts),
        magnus_depth: opts.magnus_depth,
        max_k,
        group_cap: opts.group_cap,
    };
    let runs = cases
        .par_iter()
        .map(|(name, t)| double_pipeline(Some(name), t, &cfg).map(|r| (name.clone(), r)))
        .collect::<curve_towers::Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for (name, r) in &runs {
        let ok = r.all_checks();
        let text = match opts.format {
            Format::JsonLike => serde_json::to_string_pretty(r)?,
            _ => {
                let mut t = String::new();
                writeln!(t, "# double of {name}")?;
                writeln!(
                    t,
                    "# genus {} with {} boundary components, double has genus {}",
                    r.genus, r.boundary, r.double_genus
                )?;
                writeln!(t, "# crossings on the bordered surface: {}", r.n)?;
                writeln!(t, "# witness in a free basis of rank {}: {}", r.rank, r.witness)?;
                writeln!(t, "# lower central series depth: {}", opt(r.depth))?;
                for (n, holds) in &r.checks {
                    writeln!(t, "# check: {n} = {}", if *holds { "ok" } else { "FAILED" })?;
                }
                if let Some(c) = &r.chain {
                    for cc in &c.checks {
                        writeln!(
                            t,
                            "# chain {}: {} = {}",
                            cc.name,
                            cc.detail,
                            if cc.holds { "ok" } else { "FAILED" }
                        )?;
                    }
                }
                for n in r.notes.iter().chain(&r.report.notes) {
                    writeln!(t, "# note: {n}")?;
                }
                t.push_str(&r.certificate.to_text());
                t
            }
        };
        let core = r.report.core.as_ref();
        rows.push(Row {
            name: name.clone(),
            cells: vec![
                name.clone(),
                r.n.to_string(),
                r.certificate.k.to_string(),
                r.certificate.k_bound.to_string(),
                opt(r.depth),
                opt(core.and_then(|c| c.ell)),
                ok.to_string(),
            ],
            ok,
            text,
        });
    }
    let ext = if opts.format == Format::JsonLike {
        "json"
    } else {
        "cert"
    };
    if opts.format != Format::Csv {
        for r in &rows {
            out.emit(&format!("{}.double.{ext}", r.name), &r.text)?;
        }
    }
    if opts.format == Format::Csv || opts.out.is_some() {
        let header = ["name", "N", "k", "k_bound", "d", "ell", "all_checks"];
        out.emit("double.csv", &csv_text(&header, &rows)?)?;
    }
    Ok(rows.iter().all(|r| r.ok))
}

fn zero() -> curve_towers::bounds::DBig {
    curve_towers::bounds::DBig::ZERO
}

fn cmd_bounds(out: &mut Output, ds: &[u64], ks: &[u64], ns: &[u64]) -> Result<bool> {
    let mut reports: Vec<BoundReport> = Vec::new();
    for &d in ds {
        reports.push(isect_bound(d, false)?);
        if d >= 7 {
            reports.push(isect_bound(d, true)?);
        }
    }
    for &k in ks {
        reports.push(dil_bound(k)?);
    }
    let c = constant_c();
    let constants = [
        ("c".to_string(), to_decimal(&c, 40)),
        ("isect_crossover(2)".to_string(), isect_crossover(2).to_string()),
        (
            "log_branch_positive".to_string(),
            log_branch_crossover(&zero()).to_string(),
        ),
        (
            "log_branch_crossover(0.197)".to_string(),
            log_branch_crossover(&floor_value()).to_string(),
        ),
    ];
    let heights: Vec<(u64, u64)> = ns.iter().map(|&n| (n, height_bound(n))).collect();
    let text = match out.opts.format {
        Format::JsonLike => serde_json::to_string_pretty(&serde_json::json!({
            "constants": constants.iter().cloned().collect::<std::collections::BTreeMap<_, _>>(),
            "bounds": reports,
            "height_bounds": heights,
        }))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["quantity", "input", "symbolic", "decimal", "branch"])?;
            for (name, value) in &constants {
                w.write_record([name.as_str(), "", "", value.as_str(), ""])?;
            }
            for r in &reports {
                w.write_record([
                    r.quantity.clone(),
                    r.input.to_string(),
                    r.symbolic.clone(),
                    r.decimal.clone(),
                    format!("{:?}", r.branch),
                ])?;
            }
            for (n, k) in &heights {
                w.write_record([
                    "height_bound".to_string(),
                    n.to_string(),
                    String::new(),
                    k.to_string(),
                    String::new(),
                ])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Cert => {
            let mut t = String::new();
            for (name, value) in &constants {
                writeln!(t, "{name} = {value}")?;
            }
            for r in &reports {
                writeln!(
                    t,
                    "{}({}) = {} = {} [{:?}]",
                    r.quantity, r.input, r.symbolic, r.decimal, r.branch
                )?;
            }
            for (n, k) in &heights {
                writeln!(t, "height_bound({n}) = {k}")?;
            }
            t
        }
    };
    out.emit("bounds.txt", &text)?;
    Ok(true)
}

fn cmd_examples(out: &mut Output) -> Result<bool> {
    let mut all = examples()?;
    all.push(punctured_torus()?);
    all.push(three_holed_sphere()?);
    for ex in &all {
        out.emit(&format!("{}.json", ex.name), &ex.spec().to_json())?;
    }
    Ok(true)
}

fn run(cli: Cli) -> Result<(bool, String)> {
    let mut out = Output {
        opts: &cli.opts,
        stdout: String::new(),
    };
    let ok = match &cli.cmd {
        Command::Validate { input, certificate } => cmd_validate(&mut out, input, certificate)?,
        Command::Tower {
            input,
            example,
            random,
            max_k,
        } => cmd_tower(&mut out, input, example, *random, *max_k)?,
        Command::Audit { dim, count, zeta_max } => cmd_audit(&mut out, dim, *count, *zeta_max)?,
        Command::Magnus { word, rank } => cmd_magnus(&mut out, word, *rank)?,
        Command::Double { input, example, max_k } => cmd_double(&mut out, input, example, *max_k)?,
        Command::Bounds { d, k, n } => cmd_bounds(&mut out, d, k, n)?,
        Command::Examples => cmd_examples(&mut out)?,
    };
    Ok((ok, out.stdout))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((ok, text)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("some checks failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
