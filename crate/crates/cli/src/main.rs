//! The `dcartan` command line: parse a GCM description in TOML, run one of
//! the library's computations, and print the result deterministically.
//!
//! Output is byte-identical across runs for identical inputs: entries are
//! emitted in row-major order and every polynomial renders in the canonical
//! term order. `--output records` replaces the human-readable text by one
//! tab-separated line `i <TAB> j <TAB> monomial <TAB> coefficient` per
//! nonzero term, rows and terms in the same canonical order.
//!
//! Exit codes:
//!
//! * `0` — success (including a `kp` comparison that reports inequality);
//! * `2` — the input could not be read or parsed (file errors, TOML syntax,
//!   schema violations, malformed `--word`);
//! * `3` — a validated input fails a precondition of the requested
//!   computation (non-GCM matrix, wrong type class, bad height function,
//!   rejected word, truncation too small, out-of-range argument);
//! * `4` — `invert --method all` found two algorithms disagreeing;
//! * `5` — an internal invariant failed (a bug, not bad input).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dcartan::braid::{
    check_braid_relations, extract_longest_monomial, invert_bipartite, invert_coxeter,
    invert_series, invert_word, BraidRelation, InverseResult, WordSpec,
};
use dcartan::cartan::{deformed_cartan, kp, DeformedMatrix, Gcm, GcmFile};
use dcartan::gamma::{GammaMonomial, LaurentPoly, Specialization};
use dcartan::pairing::{ep_e_s, ep_s_s, ext_dim};
use dcartan::Error;

#[derive(Parser)]
#[command(
    name = "dcartan",
    version,
    about = "Multi-parameter deformed Cartan matrices: validation, inversion, \
             braid checks, and Euler pairings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a GCM file and report the derived structure.
    Validate(InputArgs),
    /// Print the deformed Cartan matrix C(q,t,u).
    Deform {
        #[command(flatten)]
        input: InputArgs,
        /// Keep the mass parameters or specialize them all to 1.
        #[arg(long, value_enum, default_value_t = MuMode::Keep)]
        mu: MuMode,
        #[arg(long, value_enum, default_value_t = OutputMode::Text)]
        output: OutputMode,
    },
    /// Invert C(q,t,u) as a t-adic series, by one algorithm or all of them.
    Invert {
        #[command(flatten)]
        input: InputArgs,
        /// Inversion algorithm; `all` runs every applicable one and compares.
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        /// Compute the series through t^TRUNC.
        #[arg(long, default_value_t = 20)]
        trunc: i64,
        /// Word for the summation method: 1-based period letters, optionally
        /// preceded by prefix letters and `|`, e.g. "1 2 | 1 2".
        #[arg(long)]
        word: Option<String>,
        /// Keep the mass parameters or specialize them all to 1.
        #[arg(long, value_enum, default_value_t = MuMode::Keep)]
        mu: MuMode,
        #[arg(long, value_enum, default_value_t = OutputMode::Text)]
        output: OutputMode,
    },
    /// Check the braid relation on every vertex pair, as exact matrices.
    BraidCheck(InputArgs),
    /// Closed form of the longest braid operator T_w0 (finite type only).
    Longest(InputArgs),
    /// Compare the transformed Kimura-Pestun matrix against C(q,t,u).
    Kp(InputArgs),
    /// Euler-Poincare pairing <E_i, S_j>, or <S_i, S_j> when --ell is given.
    Ep {
        #[command(flatten)]
        input: InputArgs,
        /// Left vertex i (1-based).
        #[arg(long)]
        i: usize,
        /// Right vertex j (1-based).
        #[arg(long)]
        j: usize,
        /// Loop weight of S_i: switch to the pairing <S_i, S_j>.
        #[arg(long)]
        ell: Option<i64>,
        /// Expand the closed form through t^TRUNC (and q^TRUNC when a
        /// q-direction denominator factor is present).
        #[arg(long, default_value_t = 20)]
        trunc: i64,
    },
    /// Dimension of Ext^1 between the mesh modules (i,k) and (j,l).
    ExtDim {
        #[command(flatten)]
        input: InputArgs,
        /// Vertex of the first module (1-based).
        #[arg(long)]
        i: usize,
        /// Lattice translate of the first module.
        #[arg(long, default_value_t = 0)]
        k: i64,
        /// Vertex of the second module (1-based).
        #[arg(long)]
        j: usize,
        /// Lattice translate of the second module.
        #[arg(long, default_value_t = 0)]
        l: i64,
        /// Truncation order of the underlying series.
        #[arg(long, default_value_t = 20)]
        trunc: i64,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Path to a TOML GCM description (cartan, and optionally symmetrizer,
    /// orientation, height, quiver_edges).
    input: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MuMode {
    /// Keep the parameters u[i,j,g] symbolic.
    Keep,
    /// Specialize every u[i,j,g] to 1 before printing.
    One,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    /// Human-readable `name[i,j] = polynomial` lines.
    Text,
    /// One tab-separated line per nonzero term: i, j, monomial, coefficient.
    Records,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Series,
    Coxeter,
    Bipartite,
    Word,
    All,
}

/// Everything that can abort a run, tagged with its exit class.
enum Failure {
    Lib(Error),
    Disagreement(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => e.fmt(f),
            Failure::Disagreement(msg) => write!(f, "{msg}"),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Parse(_)) => 2,
            Failure::Lib(Error::Internal(_)) => 5,
            Failure::Lib(_) => 3,
            Failure::Disagreement(_) => 4,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Validate(input) => validate(&input.input),
        Command::Deform { input, mu, output } => deform(&input.input, mu, output),
        Command::Invert { input, method, trunc, word, mu, output } => {
            invert(&input.input, method, trunc, word.as_deref(), mu, output)
        }
        Command::BraidCheck(input) => braid_check(&input.input),
        Command::Longest(input) => longest(&input.input),
        Command::Kp(input) => kp_report(&input.input),
        Command::Ep { input, i, j, ell, trunc } => ep(&input.input, i, j, ell, trunc),
        Command::ExtDim { input, i, k, j, l, trunc } => {
            ext_dim_report(&input.input, i, k, j, l, trunc)
        }
    }
}

/// Read and validate the input file; all subcommands start here.
fn load(path: &Path) -> Result<(GcmFile, Gcm), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let file = GcmFile::parse(&text)?;
    let gcm = file.to_gcm()?;
    Ok((file, gcm))
}

/// 1-based CLI vertex index to the 0-based library index.
fn vertex(g: &Gcm, v: usize, name: &str) -> Result<usize, Failure> {
    if v == 0 || v > g.size() {
        return Err(Error::InvalidArg(format!(
            "{name} = {v} out of range; vertices are 1..={}",
            g.size()
        ))
        .into());
    }
    Ok(v - 1)
}

fn validate(path: &Path) -> Result<String, Failure> {
    let (file, g) = load(path)?;
    let mut out = String::new();
    let _ = writeln!(out, "vertices: {}", g.size());
    let diag =
        g.symmetrizer().iter().map(i64::to_string).collect::<Vec<_>>().join(", ");
    let _ = writeln!(out, "symmetrizer: diag({diag})");
    let _ = writeln!(out, "type: {}", g.type_class().as_str());
    let _ = writeln!(out, "condf: {}", g.condf());
    let arrows = g
        .orientation()
        .iter()
        .map(|&(a, b)| format!("{}->{}", a + 1, b + 1))
        .collect::<Vec<_>>();
    let _ = writeln!(
        out,
        "orientation: {}",
        if arrows.is_empty() { "none".to_string() } else { arrows.join(", ") }
    );
    match file.height()? {
        Some(xi) => {
            dcartan::braid::validate_height(&g, &xi)?;
            let vals = xi.iter().map(i64::to_string).collect::<Vec<_>>().join(", ");
            let _ = writeln!(out, "height: ({vals})");
        }
        None => {
            let _ = writeln!(out, "height: none");
        }
    }
    Ok(out)
}

fn specialized_entry(c: &DeformedMatrix, i: usize, j: usize, mu: MuMode) -> LaurentPoly {
    let p = c.entry(i, j);
    match mu {
        MuMode::Keep => p.clone(),
        MuMode::One => p.specialize(Specialization::MuOne),
    }
}

fn deform(path: &Path, mu: MuMode, output: OutputMode) -> Result<String, Failure> {
    let (_, g) = load(path)?;
    let c = deformed_cartan(&g)?;
    let n = g.size();
    let mut out = String::new();
    for i in 0..n {
        for j in 0..n {
            let p = specialized_entry(&c, i, j, mu);
            match output {
                OutputMode::Text => {
                    let _ = writeln!(out, "C[{},{}] = {}", i + 1, j + 1, p);
                }
                OutputMode::Records => records(&mut out, i, j, &p),
            }
        }
    }
    Ok(out)
}

/// Append one record line per nonzero term of `p`, in canonical term order.
fn records(out: &mut String, i: usize, j: usize, p: &LaurentPoly) {
    for (m, c) in p.terms() {
        let _ = writeln!(out, "{}\t{}\t{}\t{}", i + 1, j + 1, m, c);
    }
}

/// Parse "--word": whitespace-separated 1-based letters, with an optional
/// `prefix |` in front; without a bar the whole word is the period.
fn parse_word(text: &str, n: usize) -> Result<WordSpec, Failure> {
    let (prefix_text, period_text) = match text.split_once('|') {
        Some((a, b)) => (a, b),
        None => ("", text),
    };
    let letters = |part: &str, which: &str| -> Result<Vec<usize>, Failure> {
        part.split_whitespace()
            .map(|tok| {
                let v: usize = tok.parse().map_err(|_| {
                    Error::Parse(format!("word {which} has a non-integer letter {tok:?}"))
                })?;
                if v == 0 || v > n {
                    return Err(Error::Parse(format!(
                        "word letter {v} out of range; vertices are 1..={n}"
                    ))
                    .into());
                }
                Ok(v - 1)
            })
            .collect()
    };
    Ok(WordSpec::new(letters(prefix_text, "prefix")?, letters(period_text, "period")?))
}

fn invert(
    path: &Path,
    method: MethodArg,
    trunc: i64,
    word: Option<&str>,
    mu: MuMode,
    output: OutputMode,
) -> Result<String, Failure> {
    let (file, g) = load(path)?;
    if word.is_some() && !matches!(method, MethodArg::Word | MethodArg::All) {
        return Err(Error::InvalidArg(
            "--word only applies to --method word or --method all".into(),
        )
        .into());
    }
    let height = file.height()?;
    let word_spec = word.map(|w| parse_word(w, g.size())).transpose()?;

    let mut results: Vec<InverseResult> = Vec::new();
    match method {
        MethodArg::Series => results.push(invert_series(&g, trunc)?),
        MethodArg::Coxeter => results.push(invert_coxeter(&g, trunc)?),
        MethodArg::Bipartite => {
            let xi = height.ok_or_else(no_height)?;
            results.push(invert_bipartite(&g, &xi, trunc)?);
        }
        MethodArg::Word => {
            let spec = word_spec.ok_or_else(no_word)?;
            results.push(invert_word(&g, &spec, trunc)?);
        }
        MethodArg::All => {
            results.push(invert_series(&g, trunc)?);
            results.push(invert_coxeter(&g, trunc)?);
            if let Some(xi) = &height {
                results.push(invert_bipartite(&g, xi, trunc)?);
            }
            if let Some(spec) = &word_spec {
                results.push(invert_word(&g, spec, trunc)?);
            }
        }
    }

    check_agreement(&results)?;
    let mut out = String::new();
    if output == OutputMode::Text {
        let names =
            results.iter().map(|r| r.method().as_str().to_string()).collect::<Vec<_>>();
        if results.len() > 1 {
            let _ = writeln!(out, "methods: {}", names.join(", "));
            let _ = writeln!(out, "agreement: all methods agree");
        } else {
            let _ = writeln!(out, "method: {}", names[0]);
        }
        let _ = writeln!(out, "trunc: {trunc}");
    }

    let first = &results[0];
    let n = first.size();
    for i in 0..n {
        for j in 0..n {
            let series = match mu {
                MuMode::Keep => first.entry(i, j).clone(),
                MuMode::One => first.entry(i, j).specialize(Specialization::MuOne)?,
            };
            match output {
                OutputMode::Text => {
                    let _ = writeln!(out, "Ctilde[{},{}] = {}", i + 1, j + 1, series);
                }
                OutputMode::Records => records(&mut out, i, j, series.poly()),
            }
        }
    }
    Ok(out)
}

fn no_height() -> Failure {
    Error::BadHeight(
        "the bipartite method needs a height function; add `height = [...]` to the input file"
            .into(),
    )
    .into()
}

fn no_word() -> Failure {
    Error::InvalidArg("the word method needs --word \"[prefix |] period\"".into()).into()
}

/// Locate the first disagreeing entry so the error names it.
fn check_agreement(results: &[InverseResult]) -> Result<(), Failure> {
    let n = results[0].size();
    for a in 0..results.len() {
        for b in a + 1..results.len() {
            if results[a].agrees_with(&results[b]) {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    if !results[a].entry(i, j).agrees_with(results[b].entry(i, j)) {
                        return Err(Failure::Disagreement(format!(
                            "methods disagree: {} and {} differ at entry ({}, {})",
                            results[a].method().as_str(),
                            results[b].method().as_str(),
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

fn braid_check(path: &Path) -> Result<String, Failure> {
    let (_, g) = load(path)?;
    let n = g.size();
    let mut out = String::new();
    for i in 0..n {
        for j in i + 1..n {
            let check = check_braid_relations(&g, i, j)?;
            if check.relation == BraidRelation::NotRequired {
                let _ = writeln!(out, "pair ({}, {}): no relation required", i + 1, j + 1);
                continue;
            }
            if !check.holds {
                return Err(Error::Internal(format!(
                    "the {} relation fails on pair ({}, {})",
                    check.relation.as_str(),
                    i + 1,
                    j + 1
                ))
                .into());
            }
            let _ = writeln!(
                out,
                "pair ({}, {}): {}: holds",
                i + 1,
                j + 1,
                check.relation.as_str()
            );
        }
    }
    let _ = writeln!(out, "all required relations hold");
    Ok(out)
}

fn longest(path: &Path) -> Result<String, Failure> {
    let (_, g) = load(path)?;
    let lm = extract_longest_monomial(&g)?;
    let mut out = String::new();
    let word = lm.word.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>();
    let _ = writeln!(out, "word: {}", word.join(" "));
    let _ = writeln!(out, "length: {}", lm.word.len());
    let _ = writeln!(out, "global factor: -q^-{} t^{}", lm.rh_dual, lm.h);
    let _ = writeln!(out, "r h_dual: {}", lm.rh_dual);
    let _ = writeln!(out, "h: {}", lm.h);
    let star = (0..g.size())
        .map(|i| format!("{} -> {}", i + 1, lm.nu_perm[i] + 1))
        .collect::<Vec<_>>();
    let _ = writeln!(out, "star: {}", star.join(", "));
    for i in 0..g.size() {
        let target = format!("alpha_{}", lm.nu_perm[i] + 1);
        if lm.nu_mu[i].is_unit() {
            let _ = writeln!(out, "nu(alpha_{}) = {target}", i + 1);
        } else {
            let _ = writeln!(out, "nu(alpha_{}) = {} {target}", i + 1, lm.nu_mu[i]);
        }
    }
    Ok(out)
}

fn kp_report(path: &Path) -> Result<String, Failure> {
    let (file, g) = load(path)?;
    let edges = file.quiver_edges()?.unwrap_or_else(|| kp::default_quiver(&g));
    let m = kp::kp_matrix(&g, &edges)?;
    let transformed = m.transform(&g)?;
    // Reference for the comparison: C(q,t,u) q^-D t, as in `kp::kp_compare`.
    let c = deformed_cartan(&g)?;
    let n = g.size();
    let reference: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| c.entry(i, j).mul_monomial(&GammaMonomial::qt(-g.d(j), 1)))
                .collect()
        })
        .collect();
    let equal = transformed == reference;

    let mut out = String::new();
    let _ = writeln!(out, "condf: {}", g.condf());
    let arrows =
        edges.iter().map(|&(a, b)| format!("{}->{}", a + 1, b + 1)).collect::<Vec<_>>();
    let _ = writeln!(out, "quiver: {}", arrows.join(", "));
    for i in 0..n {
        for j in 0..n {
            let _ = writeln!(out, "transformed[{},{}] = {}", i + 1, j + 1, transformed[i][j]);
        }
    }
    for i in 0..n {
        for j in 0..n {
            let _ = writeln!(
                out,
                "reference[{},{}] = {}",
                i + 1,
                j + 1,
                reference[i][j]
            );
        }
    }
    let _ = writeln!(out, "equal: {equal}");
    Ok(out)
}

fn ep(
    path: &Path,
    i: usize,
    j: usize,
    ell: Option<i64>,
    trunc: i64,
) -> Result<String, Failure> {
    let (_, g) = load(path)?;
    let (i, j) = (vertex(&g, i, "--i")?, vertex(&g, j, "--j")?);
    let mut out = String::new();
    let form = match ell {
        None => {
            let _ = writeln!(out, "pairing: <E_{}, S_{}>", i + 1, j + 1);
            ep_e_s(&g, i, j)?
        }
        Some(ell) => {
            let _ = writeln!(out, "pairing: <S_{}, S_{}> at ell = {ell}", i + 1, j + 1);
            ep_s_s(&g, i, j, ell)?
        }
    };
    let _ = writeln!(out, "closed form: {form}");
    let _ = writeln!(out, "expansion through t^{trunc}: {}", form.expand(trunc, trunc)?);
    Ok(out)
}

fn ext_dim_report(
    path: &Path,
    i: usize,
    k: i64,
    j: usize,
    l: i64,
    trunc: i64,
) -> Result<String, Failure> {
    let (file, g) = load(path)?;
    let (i0, j0) = (vertex(&g, i, "--i")?, vertex(&g, j, "--j")?);
    let xi = file.height()?.ok_or_else(|| {
        Failure::Lib(Error::BadHeight(
            "ext-dim needs a height function; add `height = [...]` to the input file".into(),
        ))
    })?;
    let dim = ext_dim(&g, &xi, i0, k, j0, l, trunc)?;
    let m = (xi[i0] + 2 * k) - (xi[j0] + 2 * l) - 1;
    let mut out = String::new();
    let _ = writeln!(out, "distance: {m}");
    let _ = writeln!(out, "dim Ext^1(({i}, {k}), ({j}, {l})) = {dim}");
    Ok(out)
}
