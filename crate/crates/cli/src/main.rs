//! `ratdesign`: exact designs, certificates, identities, curves, PTE solutions and search.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use ratdesign::certificates::{certify, certify_hermite3, replay, Certificate, Parity};
use ratdesign::curves::{
    component_profile, hyperelliptic_fixture, nonsingular_system, on_hyperelliptic, profile_witness, singular_locus_check, CurvePair,
};
use ratdesign::families::{borwein, borwein_linear, chernick, fivesix, hermite_circle4, hermite_circle5, pte_family};
use ratdesign::identities::{self, kw_hilbert_form};
use ratdesign::pte::{affine_equivalent, amn_witness, verify_pte, AmnBranch, PteSolution};
use ratdesign::search::{gap_scan, mitm_solve, GapOutcome, SearchSpec};
use ratdesign::spectrum::{build_even5, build_hermite3, build_odd5, catalog, fixture, Construction};
use ratdesign::{compose, moment, verify, Design, Error, MeasureSpec, Rational};

#[derive(Parser)]
#[command(name = "ratdesign", version, about = "Exact rational designs and Hilbert-Kamke tooling")]
struct Cli {
    /// Result cap for search commands.
    #[arg(long, global = true, default_value_t = 10)]
    limit: usize,
    /// Worker threads for parallel search.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    report: Format,
    /// Write the output document here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureKind {
    Hermite,
    Chebyshev,
    Gegenbauer,
}

#[derive(Args, Clone)]
struct MeasureArgs {
    #[arg(long, value_enum, default_value_t = MeasureKind::Chebyshev)]
    measure: MeasureKind,
    /// Gegenbauer parameter, `p/q`.
    #[arg(long)]
    lambda: Option<Rational>,
}

impl MeasureArgs {
    fn spec(&self) -> Result<MeasureSpec, Failure> {
        match (self.measure, &self.lambda) {
            (MeasureKind::Hermite, None) => Ok(MeasureSpec::hermite()),
            (MeasureKind::Chebyshev, None) => Ok(MeasureSpec::chebyshev()),
            (MeasureKind::Gegenbauer, Some(l)) => Ok(MeasureSpec::gegenbauer(l.clone())?),
            (MeasureKind::Gegenbauer, None) => Err(Failure::usage("--lambda is required for gegenbauer")),
            (_, Some(_)) => Err(Failure::usage("--lambda only applies to gegenbauer")),
        }
    }
}

#[derive(Args, Clone, Copy)]
#[group(multiple = false)]
struct ParityArgs {
    /// `2N` points.
    #[arg(long)]
    even: bool,
    /// `2N + 1` points, the origin included.
    #[arg(long)]
    odd: bool,
}

impl ParityArgs {
    fn parity(self) -> Parity {
        if self.odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact moments a_0 ..= a_k.
    Moments {
        #[command(flatten)]
        measure: MeasureArgs,
        #[arg(long, default_value_t = 6)]
        k: u32,
    },
    /// Check a design document up to a degree.
    Verify {
        #[arg(long)]
        degree: u32,
        file: PathBuf,
    },
    /// Union of two disjoint designs.
    Compose { first: PathBuf, second: PathBuf },
    /// Parametric families.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Spectrum builders and the sporadic catalog.
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
    /// Nonexistence certificates.
    Certify(CertifyArgs),
    /// Polynomial identities.
    #[command(subcommand)]
    Identities(IdentitiesCmd),
    /// Quadric-quartic curves and hyperelliptic fixtures.
    #[command(subcommand)]
    Curves(CurvesCmd),
    /// Prouhet-Tarry-Escott solutions.
    #[command(subcommand)]
    Pte(PteCmd),
    /// Meet-in-the-middle search.
    #[command(subcommand)]
    Search(SearchCmd),
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Six-point Chebyshev 5-design.
    Fivesix {
        #[arg(long)]
        t: Rational,
    },
    /// Four-point Hermite 3-design.
    Circle4 {
        #[arg(long)]
        t: Rational,
    },
    /// Five-point Hermite 3-design.
    Circle5 {
        #[arg(long)]
        t: Rational,
    },
    /// Homogeneous ideal PTE family.
    Pte {
        #[arg(long, allow_hyphen_values = true)]
        s: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        t: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        u: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        v: BigInt,
    },
    Borwein {
        #[arg(long, allow_hyphen_values = true)]
        m: Rational,
        #[arg(long, allow_hyphen_values = true)]
        n: Rational,
    },
    BorweinLinear {
        #[arg(long, allow_hyphen_values = true)]
        m: Rational,
        #[arg(long, allow_hyphen_values = true)]
        n: Rational,
    },
    Chernick {
        #[arg(long, allow_hyphen_values = true)]
        m: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        n: BigInt,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SpectrumKind {
    Even,
    Odd,
    Hermite3,
}

#[derive(Subcommand)]
enum SpectrumCmd {
    /// Antipodal Chebyshev 5-design with 2N points, or a certificate.
    Even {
        #[arg(long = "N")]
        n: u32,
    },
    /// Antipodal Chebyshev 5-design with 2N + 1 points, or a certificate.
    Odd {
        #[arg(long = "N")]
        n: u32,
    },
    /// Antipodal Hermite 3-design with n points, or a certificate.
    Hermite3 {
        #[arg(long)]
        n: u32,
    },
    /// A sporadic configuration as a design document.
    Fixture {
        #[arg(long)]
        name: Option<String>,
    },
    /// Outcome per N over a range.
    Table {
        #[arg(long, value_enum)]
        kind: SpectrumKind,
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
    },
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    measure: MeasureArgs,
    #[command(flatten)]
    parity: ParityArgs,
    /// `2N` or `2N+1`, an alternative to --even / --odd.
    #[arg(long)]
    points: Option<String>,
    #[arg(long = "N")]
    n: Option<u32>,
    /// Hermite 3-designs with N points.
    #[arg(long)]
    hermite3: bool,
    /// Replay a certificate document instead.
    #[arg(long, conflicts_with_all = ["n", "hermite3"])]
    replay: Option<PathBuf>,
}

#[derive(Subcommand)]
enum IdentitiesCmd {
    /// Exit 0 iff the identity holds.
    Check {
        #[arg(long)]
        name: String,
        /// Weight on the three forms of the kw-hilbert identity.
        #[arg(long)]
        weight: Option<Rational>,
    },
}

#[derive(Args, Clone)]
struct PairArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha: Rational,
    #[arg(long, allow_hyphen_values = true)]
    beta: Rational,
}

#[derive(Subcommand)]
enum CurvesCmd {
    /// Nonsingularity and component profile.
    Profile(PairArgs),
    /// Verified singular points.
    Singular(PairArgs),
    /// Check a hyperelliptic fixture and its substitution chain.
    CheckFixture { label: String },
    /// Exit 0 iff (x, y) lies on the fixture's curve.
    On {
        label: String,
        #[arg(long, allow_hyphen_values = true)]
        x: Rational,
        #[arg(long, allow_hyphen_values = true)]
        y: Rational,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PteFamily {
    Borwein,
    BorweinLinear,
    Chernick,
    Homogeneous,
}

#[derive(Subcommand)]
enum PteCmd {
    /// Exit 0 iff the power sums agree through the declared degree.
    Verify { file: PathBuf },
    /// Generate a family member.
    Gen {
        #[arg(long, value_enum)]
        family: PteFamily,
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        params: Vec<String>,
    },
    /// Affine map between two solutions, exit 1 if none.
    Equiv { first: PathBuf, second: PathBuf },
    /// Explicit maps from the six-point pair at (s, t) to the Borwein family.
    Amn {
        #[arg(long, allow_hyphen_values = true)]
        s: Rational,
        #[arg(long, allow_hyphen_values = true)]
        t: Rational,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Half-configurations with denominator d, emitted as design documents.
    Mitm {
        #[command(flatten)]
        measure: MeasureArgs,
        #[command(flatten)]
        parity: ParityArgs,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        denominator: u32,
        #[arg(long)]
        distinct: bool,
    },
    /// First denominator up to d-max admitting a distinct half-configuration.
    Gap {
        #[command(flatten)]
        measure: MeasureArgs,
        #[command(flatten)]
        parity: ParityArgs,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        d_max: u32,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 2, message: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }
}

/// A command's document plus whether its check came out true.
struct Output {
    doc: Value,
    holds: bool,
    note: Option<String>,
}

impl Output {
    fn ok(doc: Value) -> Self {
        Output { doc, holds: true, note: None }
    }

    fn check(doc: Value, holds: bool) -> Self {
        Output { doc, holds, note: None }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("documents serialize")
}

fn s<T: ToString>(v: T) -> Value {
    Value::String(v.to_string())
}

fn read_doc<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        Failure::usage(format!("{}: field `{field}`: {}", path.display(), e.inner()))
    })
}

fn design_report(design: &Design, degree: u32) -> Result<Output, Failure> {
    let rep = verify(design, degree)?;
    let passes = rep.passes(degree);
    let residuals: Vec<Value> = rep.residuals.iter().map(|(k, r)| json!({"k": s(k), "residual": s(r)})).collect();
    let doc = json!({
        "degree": s(degree),
        "passes": passes,
        "max_degree": s(rep.max_degree),
        "antipodal": rep.antipodal,
        "disjoint": rep.disjoint,
        "residuals": residuals,
    });
    let note = (!passes).then(|| {
        let (k, r) = rep.residuals.iter().find(|(_, r)| !r.is_zero()).expect("a failing design has a nonzero residual");
        format!("nonzero residual at k = {k}: {r}")
    });
    Ok(Output { doc, holds: passes, note })
}

fn construction(c: &Construction) -> Output {
    match c {
        Construction::Design(d) => Output::ok(to_value(d)),
        Construction::Certificate(cert) => Output::ok(to_value(cert)),
        Construction::Unknown(why) => Output { doc: json!({"unknown": why}), holds: true, note: Some(why.clone()) },
    }
}

fn spectrum_row(n: u32, c: &Construction) -> Value {
    match c {
        Construction::Design(d) => json!({"N": s(n), "outcome": "design", "points": s(d.len()), "detail": ""}),
        Construction::Certificate(cert) => {
            json!({"N": s(n), "outcome": "certificate", "points": s(cert.points), "detail": format!("{:?}", cert.kind())})
        }
        Construction::Unknown(why) => json!({"N": s(n), "outcome": "unknown", "points": "", "detail": why}),
    }
}

fn run_spectrum(cmd: &SpectrumCmd) -> Result<Output, Failure> {
    let build = |kind: SpectrumKind, n: u32| -> Result<Construction, Failure> {
        Ok(match kind {
            SpectrumKind::Even => build_even5(n)?,
            SpectrumKind::Odd => build_odd5(n)?,
            SpectrumKind::Hermite3 => build_hermite3(n)?,
        })
    };
    Ok(match cmd {
        SpectrumCmd::Even { n } => construction(&build(SpectrumKind::Even, *n)?),
        SpectrumCmd::Odd { n } => construction(&build(SpectrumKind::Odd, *n)?),
        SpectrumCmd::Hermite3 { n } => construction(&build(SpectrumKind::Hermite3, *n)?),
        SpectrumCmd::Fixture { name: None } => {
            let rows: Vec<Value> = catalog()
                .iter()
                .map(|f| json!({"name": f.label, "denominator": s(f.denominator), "points": s(f.point_count()), "degree": s(f.degree)}))
                .collect();
            Output::ok(Value::Array(rows))
        }
        SpectrumCmd::Fixture { name: Some(name) } => {
            let f = fixture(name).ok_or_else(|| Failure::usage(format!("unknown fixture {name}")))?;
            Output::ok(to_value(&f.design()))
        }
        SpectrumCmd::Table { kind, from, to } => {
            if from > to {
                return Err(Failure::usage("--from exceeds --to"));
            }
            let rows = (*from..=*to)
                .map(|n| match build(*kind, n) {
                    Ok(c) => spectrum_row(n, &c),
                    Err(f) => json!({"N": s(n), "outcome": "invalid", "points": "", "detail": f.message}),
                })
                .collect();
            Output::ok(Value::Array(rows))
        }
    })
}

fn parity_from(args: &CertifyArgs) -> Result<Parity, Failure> {
    match args.points.as_deref() {
        None => Ok(args.parity.parity()),
        Some(_) if args.parity.even || args.parity.odd => Err(Failure::usage("--points conflicts with --even / --odd")),
        Some("2N") => Ok(Parity::Even),
        Some("2N+1") => Ok(Parity::Odd),
        Some(other) => Err(Failure::usage(format!("--points must be 2N or 2N+1, got {other}"))),
    }
}

fn run_certify(args: &CertifyArgs) -> Result<Output, Failure> {
    if let Some(path) = &args.replay {
        let cert: Certificate = read_doc(path)?;
        return Ok(match replay(&cert) {
            Ok(()) => Output::check(json!({"replay": true}), true),
            Err(e) => Output { doc: json!({"replay": false, "reason": e.to_string()}), holds: false, note: Some(e.to_string()) },
        });
    }
    let n = args.n.ok_or_else(|| Failure::usage("--N is required"))?;
    let cert = if args.hermite3 {
        certify_hermite3(n)?
    } else {
        certify(&args.measure.spec()?, n, parity_from(args)?)?
    };
    Ok(match cert {
        Some(c) => Output::ok(to_value(&c)),
        None => Output { doc: Value::Null, holds: false, note: Some(format!("no certificate for N = {n}")) },
    })
}

fn run_identities(cmd: &IdentitiesCmd) -> Result<Output, Failure> {
    let IdentitiesCmd::Check { name, weight } = cmd;
    let names: Vec<&str> = match name.as_str() {
        "quartic-factorizations" => vec!["quartic-a", "quartic-b", "quartic-c"],
        other => vec![other],
    };
    if weight.is_some() && name != "kw-hilbert" {
        return Err(Failure::usage("--weight only applies to kw-hilbert"));
    }
    let mut rows = Vec::new();
    let mut all = true;
    for n in names {
        let id = match (n, weight) {
            ("kw-hilbert", Some(w)) => kw_hilbert_form(w),
            _ => identities::named(n).ok_or_else(|| {
                Failure::usage(format!("unknown identity {n}; expected one of {} or quartic-factorizations", identities::NAMES.join(", ")))
            })?,
        };
        let holds = id.holds()?;
        all &= holds;
        rows.push(json!({"name": n, "holds": holds}));
    }
    Ok(Output::check(Value::Array(rows), all))
}

fn pair(p: &PairArgs) -> Result<CurvePair, Failure> {
    Ok(CurvePair::new(p.alpha.clone(), p.beta.clone())?)
}

fn run_curves(cmd: &CurvesCmd) -> Result<Output, Failure> {
    Ok(match cmd {
        CurvesCmd::Profile(p) => {
            let cp = pair(p)?;
            let profile = component_profile(&cp)?;
            let witness = profile_witness(&cp)?;
            Output::ok(json!({
                "alpha": s(&cp.alpha),
                "beta": s(&cp.beta),
                "nonsingular": nonsingular_system(&cp)?,
                "profile": to_value(&profile),
                "components": s(profile.components()),
                "genus": s(profile.genus()),
                "factorization_witness": witness,
            }))
        }
        CurvesCmd::Singular(p) => {
            let pts = singular_locus_check(&pair(p)?)?;
            let rows: Vec<Value> = pts.iter().map(|pt| Value::Array(pt.iter().map(s).collect())).collect();
            Output::ok(json!({"count": s(rows.len()), "points": rows}))
        }
        CurvesCmd::CheckFixture { label } => {
            let fix = hyperelliptic_fixture(label).ok_or_else(|| Failure::usage(format!("unknown fixture {label}")))?;
            let mut ok = fix.chain_identity();
            let mut rows = Vec::new();
            for (x, y) in &fix.points {
                let on = on_hyperelliptic(&fix, x, y);
                ok &= on;
                let chain = fix.design_point(x, y).map(|(t, x1, x2sq)| {
                    ok &= fix.design_relation(&t, &x1);
                    json!({"t": s(t), "x1": s(x1), "x2_squared": s(x2sq)})
                });
                rows.push(json!({"x": s(x), "y": s(y), "on_curve": on, "design_point": chain}));
            }
            Output::check(json!({"label": fix.label, "substitution": fix.chain_identity(), "points": rows}), ok)
        }
        CurvesCmd::On { label, x, y } => {
            let fix = hyperelliptic_fixture(label).ok_or_else(|| Failure::usage(format!("unknown fixture {label}")))?;
            let on = on_hyperelliptic(&fix, x, y);
            Output::check(json!({"label": fix.label, "x": s(x), "y": s(y), "on_curve": on}), on)
        }
    })
}

fn param<T: std::str::FromStr>(params: &[String], i: usize, name: &str) -> Result<T, Failure> {
    params
        .get(i)
        .ok_or_else(|| Failure::usage(format!("missing parameter {name}")))?
        .parse()
        .map_err(|_| Failure::usage(format!("parameter {name} is malformed: {}", params[i])))
}

fn run_pte(cmd: &PteCmd) -> Result<Output, Failure> {
    Ok(match cmd {
        PteCmd::Verify { file } => {
            let sol: PteSolution = read_doc(file)?;
            let rep = verify_pte(&sol);
            let holds = rep.verified_degree >= sol.declared_degree();
            let doc = json!({
                "declared_degree": s(sol.declared_degree()),
                "verified_degree": s(rep.verified_degree),
                "disjoint": rep.disjoint,
                "ideal": rep.ideal,
            });
            Output::check(doc, holds)
        }
        PteCmd::Gen { family, params } => {
            let expect = match family {
                PteFamily::Homogeneous => 4,
                _ => 2,
            };
            if params.len() != expect {
                return Err(Failure::usage(format!("expected {expect} parameters, got {}", params.len())));
            }
            let sol = match family {
                PteFamily::Borwein => borwein(&param(params, 0, "m")?, &param(params, 1, "n")?),
                PteFamily::BorweinLinear => borwein_linear(&param(params, 0, "m")?, &param(params, 1, "n")?),
                PteFamily::Chernick => chernick(&param(params, 0, "m")?, &param(params, 1, "n")?),
                PteFamily::Homogeneous => pte_family(
                    &param(params, 0, "s")?,
                    &param(params, 1, "t")?,
                    &param(params, 2, "u")?,
                    &param(params, 3, "v")?,
                )?,
            };
            Output::ok(to_value(&sol))
        }
        PteCmd::Equiv { first, second } => {
            let a: PteSolution = read_doc(first)?;
            let b: PteSolution = read_doc(second)?;
            match affine_equivalent(&a, &b)? {
                Some((sc, sh)) => Output::ok(json!({"equivalent": true, "A": s(sc), "B": s(sh)})),
                None => Output::check(json!({"equivalent": false}), false),
            }
        }
        PteCmd::Amn { s: sp, t } => {
            let rows: Vec<Value> = amn_witness(sp, t)?
                .into_iter()
                .map(|b| match b {
                    AmnBranch::Witness { a, m, n } => json!({"branch": "witness", "A": s(a), "m": s(m), "n": s(n)}),
                    AmnBranch::Omitted { reason } => json!({"branch": "omitted", "reason": reason}),
                })
                .collect();
            Output::ok(Value::Array(rows))
        }
    })
}

fn run_search(cmd: &SearchCmd, limit: usize) -> Result<Output, Failure> {
    Ok(match cmd {
        SearchCmd::Mitm { measure, parity, n, denominator, distinct } => {
            let spec = SearchSpec::for_measure(&measure.spec()?, *n, *denominator, parity.parity(), *distinct)?;
            let res = mitm_solve(&spec, limit)?;
            let designs = res.solutions.iter().map(|sol| Ok(to_value(&spec.design(sol)?))).collect::<Result<Vec<_>, Failure>>()?;
            let note = Some(match (&res.reason, res.complete) {
                (Some(r), _) => format!("no search: {r}"),
                (None, true) => format!("{} solution(s), space exhausted", designs.len()),
                (None, false) => format!("stopped at the limit of {limit}"),
            });
            Output { doc: Value::Array(designs), holds: true, note }
        }
        SearchCmd::Gap { measure, parity, n, d_max } => {
            let rep = gap_scan(&measure.spec()?, *n, parity.parity(), *d_max)?;
            let rows: Vec<Value> = rep
                .rows
                .iter()
                .map(|(d, o)| match o {
                    GapOutcome::NonIntegral { reason } => json!({"d": s(d), "outcome": "non_integral", "detail": reason}),
                    GapOutcome::Exhausted => json!({"d": s(d), "outcome": "exhausted", "detail": ""}),
                    GapOutcome::Hit { numerators } => {
                        let detail: Vec<String> = numerators.iter().map(|m| m.to_string()).collect();
                        json!({"d": s(d), "outcome": "hit", "detail": detail.join(" ")})
                    }
                })
                .collect();
            Output::ok(Value::Array(rows))
        }
    })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    Ok(match &cli.cmd {
        Cmd::Moments { measure, k } => {
            let m = measure.spec()?;
            let rows = (0..=*k).map(|j| Ok(json!({"k": s(j), "moment": s(moment(&m, j)?)}))).collect::<Result<Vec<_>, Error>>()?;
            Output::ok(json!({"measure": to_value(&m), "moments": rows}))
        }
        Cmd::Verify { degree, file } => {
            let d: Design = read_doc(file)?;
            design_report(&d, *degree)?
        }
        Cmd::Compose { first, second } => {
            let a: Design = read_doc(first)?;
            let b: Design = read_doc(second)?;
            Output::ok(to_value(&compose(&a, &b)?))
        }
        Cmd::Family(f) => Output::ok(match f {
            FamilyCmd::Fivesix { t } => to_value(&fivesix(t)?),
            FamilyCmd::Circle4 { t } => to_value(&hermite_circle4(t)),
            FamilyCmd::Circle5 { t } => to_value(&hermite_circle5(t)),
            FamilyCmd::Pte { s, t, u, v } => to_value(&pte_family(s, t, u, v)?),
            FamilyCmd::Borwein { m, n } => to_value(&borwein(m, n)),
            FamilyCmd::BorweinLinear { m, n } => to_value(&borwein_linear(m, n)),
            FamilyCmd::Chernick { m, n } => to_value(&chernick(m, n)),
        }),
        Cmd::Spectrum(c) => run_spectrum(c)?,
        Cmd::Certify(a) => run_certify(a)?,
        Cmd::Identities(c) => run_identities(c)?,
        Cmd::Curves(c) => run_curves(c)?,
        Cmd::Pte(c) => run_pte(c)?,
        Cmd::Search(c) => run_search(c, cli.limit)?,
    })
}

fn emit(cli: &Cli, out: &Output) -> Result<(), Failure> {
    let text = match cli.report {
        Format::Json => serde_json::to_string_pretty(&out.doc).expect("documents serialize") + "\n",
        Format::Markdown => report::markdown(&out.doc, out.holds, out.note.as_deref()),
    };
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = run(&cli).and_then(|out| {
        emit(&cli, &out)?;
        Ok(out)
    });
    match result {
        Ok(out) => {
            if let (Some(note), Format::Json) = (&out.note, cli.report) {
                eprintln!("{note}");
            }
            ExitCode::from(if out.holds { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
