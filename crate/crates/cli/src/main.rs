//! `qtsuper` — command-line front end for the ensemble toolkit: symmetric
//! polynomial tables, spectral moment tables, and the verification suites
//! that cross-check the symbolic formulas against the exact integrators.
//!
//! Exit codes: 0 on success (all checks pass), 1 when a verification check
//! fails, 2 on usage errors (malformed arguments or out-of-domain parameters).
//! Stdout is byte-stable for identical arguments; timing goes to stderr.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use qtsuper_core::exactalg::{rational_pow, RatFunc, Var};
use qtsuper_core::oracle::{
    gaussian_average_exact, gaussian_partition_check, jackson_average, jackson_total_mass,
    kadell_equivalence_check, lattice_normalization, relative_close, GaussianSpec, LatticeSpec,
};
use qtsuper_core::partitions::Partition;
use qtsuper_core::qseries::al_salam_carlitz_poly;
use qtsuper_core::superint::{
    char_poly_average, duality_check_jack, duality_check_macdonald,
    functional_equation_check_gbe, functional_equation_check_qt, harer_zagier_moment,
    hypergeom_check_jack, hypergeom_check_qt, jack_average, macdonald_average,
    moment_gaussian_beta, moment_qt, moment_table, odd_inverse_power_check,
    topological_expansion, MomentFamily,
};
use qtsuper_core::symfunc::{self, SymFunc};

#[derive(Parser)]
#[command(
    name = "qtsuper",
    version,
    about = "Symmetric polynomial tables, spectral moments, and verification suites \
             for the Gaussian and q-lattice ensembles"
)]
struct Cli {
    /// Write the command's output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a symmetric polynomial in the power-sum basis.
    Poly(PolyArgs),
    /// Print a table of spectral moments for one ensemble family.
    Moments(MomentsArgs),
    /// Run a verification suite and report one pass/fail line per check.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct PolyArgs {
    /// Polynomial family.
    #[arg(long, value_enum)]
    basis: Basis,
    /// Partition as comma-separated parts, e.g. "3,1,1".
    #[arg(long)]
    partition: String,
    /// Output format.
    #[arg(long, value_enum, default_value_t = PolyFormat::Json)]
    format: PolyFormat,
}

#[derive(Args)]
struct MomentsArgs {
    /// Ensemble family: Gaussian (gbeta) or q-lattice (qt).
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Largest moment order to tabulate.
    #[arg(long, value_name = "P")]
    max_p: u32,
    /// Output format.
    #[arg(long, value_enum, default_value_t = MomentFormat::Json)]
    format: MomentFormat,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which checks to run.
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Largest partition size exercised by the symbolic checks.
    #[arg(long, default_value_t = 4)]
    max_degree: u32,
    /// Lattice series truncation depth.
    #[arg(long, default_value_t = 60)]
    depth: u32,
    /// Lattice base, an exact rational in (0, 1), e.g. "1/2".
    #[arg(long, default_value = "1/2")]
    q: String,
    /// Second-branch weight, a negative exact rational, e.g. "-3/4".
    #[arg(long, default_value = "-3/4")]
    a: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Jack,
    Macdonald,
    Schur,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum MomentFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Gbeta,
    Qt,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Symbolic,
    Lattice,
    Gaussian,
}

/// A user-facing failure: the message and the exit code it maps to.
struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError { message: message.into(), code: 2 }
    }
}

impl From<qtsuper_core::Error> for CliError {
    fn from(e: qtsuper_core::Error) -> CliError {
        CliError::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let (payload, code) = match cli.command {
        Command::Poly(args) => (cmd_polynomial(&args)?, 0),
        Command::Moments(args) => (cmd_moments(&args)?, 0),
        Command::Verify(args) => cmd_verify(&args)?,
    };
    match cli.output {
        Some(path) => std::fs::write(&path, payload)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{payload}"),
    }
    Ok(code)
}

fn parse_partition(s: &str) -> Result<Partition, CliError> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Err(CliError::usage(
            "partition must be non-empty: comma-separated positive parts, e.g. \"3,1\"",
        ));
    }
    let parts = trimmed
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| CliError::usage(format!("invalid partition part: {p:?}")))
        })
        .collect::<Result<Vec<u32>, CliError>>()?;
    Partition::new(parts).map_err(CliError::from)
}

fn parse_rational(s: &str, what: &str) -> Result<BigRational, CliError> {
    BigRational::from_str(s.trim())
        .map_err(|_| CliError::usage(format!("{what} must be an exact rational like 1/2, got {s:?}")))
}

fn partition_label(kappa: &Partition) -> String {
    kappa
        .parts()
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_polynomial(args: &PolyArgs) -> Result<String, CliError> {
    let kappa = parse_partition(&args.partition)?;
    let (name, f) = match args.basis {
        Basis::Jack => ("jack", symfunc::jack(&kappa)),
        Basis::Macdonald => ("macdonald", symfunc::macdonald(&kappa)),
        Basis::Schur => ("schur", symfunc::schur(&kappa)),
    };
    let terms: Vec<(String, String)> = f
        .terms()
        .map(|(mu, c)| (partition_label(mu), c.to_string()))
        .collect();
    Ok(match args.format {
        PolyFormat::Json => {
            let json_terms: Vec<serde_json::Value> = terms
                .iter()
                .map(|(mu, c)| serde_json::json!({ "partition": mu, "coeff": c }))
                .collect();
            let doc = serde_json::json!({
                "schema": 1,
                "basis": name,
                "partition": partition_label(&kappa),
                "terms": json_terms,
            });
            format!("{doc}\n")
        }
        PolyFormat::Text => {
            let mut out = String::new();
            for (mu, c) in &terms {
                writeln!(out, "p[{mu}]\t{c}").expect("string writes cannot fail");
            }
            out
        }
    })
}

fn cmd_moments(args: &MomentsArgs) -> Result<String, CliError> {
    let (name, family) = match args.family {
        FamilyArg::Gbeta => ("gaussian_beta", MomentFamily::GaussianBeta),
        FamilyArg::Qt => ("qt", MomentFamily::Qt),
    };
    let table = moment_table(family, args.max_p)?;
    Ok(match args.format {
        MomentFormat::Json => {
            let entries: Vec<serde_json::Value> = table
                .entries
                .iter()
                .map(|(p, value)| serde_json::json!({ "p": p, "value": value.to_string() }))
                .collect();
            let doc = serde_json::json!({
                "schema": 1,
                "family": name,
                "entries": entries,
            });
            format!("{doc}\n")
        }
        MomentFormat::Csv => {
            let mut out = String::from("p,value\n");
            for (p, value) in &table.entries {
                writeln!(out, "{p},{value}").expect("string writes cannot fail");
            }
            out
        }
    })
}

// ---------------------------------------------------------------------------
// verification suites
// ---------------------------------------------------------------------------

struct Check {
    id: &'static str,
    description: &'static str,
    /// `Err` carries the witness for the failure.
    outcome: Result<(), String>,
}

struct Report {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Report {
    fn new(suite: &'static str) -> Report {
        Report { suite, checks: Vec::new() }
    }

    fn run(
        &mut self,
        id: &'static str,
        description: &'static str,
        f: impl FnOnce() -> Result<(), String>,
    ) {
        self.checks.push(Check { id, description, outcome: f() });
    }

    fn render(&self) -> (String, u8) {
        let mut out = String::new();
        let mut failed = 0usize;
        for check in &self.checks {
            match &check.outcome {
                Ok(()) => {
                    writeln!(out, "PASS {} — {}", check.id, check.description)
                        .expect("string writes cannot fail");
                }
                Err(witness) => {
                    failed += 1;
                    writeln!(out, "FAIL {} — {}", check.id, check.description)
                        .expect("string writes cannot fail");
                    writeln!(out, "     witness: {witness}").expect("string writes cannot fail");
                }
            }
        }
        writeln!(
            out,
            "{}: {} checks, {} failed",
            self.suite,
            self.checks.len(),
            failed
        )
        .expect("string writes cannot fail");
        (out, if failed == 0 { 0 } else { 1 })
    }
}

/// Relative tolerance used by the numeric cross-checks: one part in 10^9.
fn numeric_tolerance() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(1_000_000_000))
}

fn rf(s: &str) -> RatFunc {
    RatFunc::from_str(s).expect("built-in reference expressions parse")
}

fn big(n: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Checks `computed == expected`, reporting both sides as the witness.
fn expect_eq<T: PartialEq + std::fmt::Display>(
    what: &str,
    computed: T,
    expected: T,
) -> Result<(), String> {
    if computed == expected {
        Ok(())
    } else {
        Err(format!("{what}: computed {computed}, expected {expected}"))
    }
}

fn expect_true(what: &str, value: bool) -> Result<(), String> {
    if value {
        Ok(())
    } else {
        Err(format!("{what}: identity check returned false"))
    }
}

fn expect_close(
    what: &str,
    computed: &BigRational,
    reference: &BigRational,
) -> Result<(), String> {
    if relative_close(computed, reference, &numeric_tolerance()) {
        Ok(())
    } else {
        Err(format!(
            "{what}: computed {computed}, reference {reference}, beyond 1e-9 relative"
        ))
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<(String, u8), CliError> {
    let started = Instant::now();
    let mut report = Report::new(match args.suite {
        Suite::All => "all",
        Suite::Symbolic => "symbolic",
        Suite::Lattice => "lattice",
        Suite::Gaussian => "gaussian",
    });
    if matches!(args.suite, Suite::All | Suite::Symbolic) {
        symbolic_suite(&mut report, args.max_degree);
    }
    if matches!(args.suite, Suite::All | Suite::Lattice) {
        let q = parse_rational(&args.q, "--q")?;
        let a = parse_rational(&args.a, "--a")?;
        // validate the overrides up front so bad parameters are a usage
        // error rather than a string of failed checks
        LatticeSpec::new(q.clone(), 1, a.clone(), 1, args.depth, false)?;
        lattice_suite(&mut report, &q, &a, args.depth);
    }
    if matches!(args.suite, Suite::All | Suite::Gaussian) {
        gaussian_suite(&mut report);
    }
    let (payload, code) = report.render();
    eprintln!(
        "verify suite '{}' completed in {:.3}s",
        report.suite,
        started.elapsed().as_secs_f64()
    );
    Ok((payload, code))
}

fn symbolic_suite(report: &mut Report, max_degree: u32) {
    let deg = max_degree.max(1);

    report.run(
        "gaussian-moment-polynomials",
        "low-order Gaussian spectral moments match their frozen closed-form polynomials",
        || {
            expect_eq(
                "second moment",
                moment_gaussian_beta(1).map_err(|e| e.to_string())?,
                rf("(N^2+N*(alpha-1))/2"),
            )?;
            expect_eq(
                "fourth moment",
                moment_gaussian_beta(2).map_err(|e| e.to_string())?,
                rf("(2*N^3+5*N^2*(alpha-1)+N*(3-5*alpha+3*alpha^2))/4"),
            )
        },
    );

    report.run(
        "lattice-moment-rationals",
        "low-order lattice spectral moments match their frozen closed-form rationals",
        || {
            expect_eq(
                "first moment",
                moment_qt(1).map_err(|e| e.to_string())?,
                rf("(1+a)*(1-u)/(1-t)"),
            )?;
            expect_eq(
                "second moment",
                moment_qt(2).map_err(|e| e.to_string())?,
                rf("(1-u)/(t*(1-t^2))*((1+a^2)*t+u*(t+a*(1+q+(1+a+q)*t)))"),
            )?;
            expect_eq(
                "third moment",
                moment_qt(3).map_err(|e| e.to_string())?,
                rf("(1+a)*(1-u)/(t^2*(1-t^3))*(a*(1+t)*(1+q+q^2)*u^2\
                    +t^2*((1+a^2)*(1+u+u^2)+a*(-1+q*u)*(1+u+q*u)))"),
            )
        },
    );

    report.run(
        "lattice-moment-functional-equation",
        "lattice moments transform with the stated prefactor under (q,t) -> (1/t,1/q)",
        || {
            for p in 1..=deg.min(4) {
                expect_true(
                    &format!("order {p}"),
                    functional_equation_check_qt(p).map_err(|e| e.to_string())?,
                )?;
            }
            Ok(())
        },
    );

    report.run(
        "gaussian-moment-reflection",
        "Gaussian moments obey the sign-twisted reflection (N, alpha) -> (-N/alpha, 1/alpha)",
        || {
            for p in 1..=deg.min(3) {
                expect_true(
                    &format!("order {p}"),
                    functional_equation_check_gbe(p).map_err(|e| e.to_string())?,
                )?;
            }
            Ok(())
        },
    );

    report.run(
        "equal-parameter-antisymmetry",
        "equal-parameter lattice moments are antisymmetric under base inversion",
        || {
            for p in 1..=deg.min(4) {
                expect_true(
                    &format!("order {p}"),
                    odd_inverse_power_check(p).map_err(|e| e.to_string())?,
                )?;
            }
            Ok(())
        },
    );

    report.run(
        "jack-norm-identity",
        "Jack polynomial norm identity: diagonal scalar products equal the hook-product ratio",
        || {
            for size in 1..=deg.min(4) {
                let list = Partition::enumerate(size, None);
                for kappa in &list {
                    let pk = symfunc::jack(kappa);
                    for mu in &list {
                        let got = pk.scalar_product_jack(&symfunc::jack(mu));
                        if kappa == mu {
                            let want = kappa
                                .primed_hook_product_alpha()
                                .div_checked(&kappa.hook_product_alpha())
                                .map_err(|e| e.to_string())?;
                            expect_eq(&format!("norm of {kappa}"), got, want)?;
                        } else if !got.is_zero() {
                            return Err(format!(
                                "orthogonality of {kappa}, {mu}: scalar product {got}"
                            ));
                        }
                    }
                }
            }
            Ok(())
        },
    );

    report.run(
        "macdonald-norm-identity",
        "Macdonald polynomial norm identity: diagonal scalar products equal the hook-product ratio",
        || {
            // QTSUPER_FAULT=macdonald-norm corrupts the reference hook
            // product, emulating a build whose hook products are broken;
            // this check must then fail and take the exit code with it.
            let faulted = std::env::var("QTSUPER_FAULT")
                .map(|v| v == "macdonald-norm")
                .unwrap_or(false);
            for size in 1..=deg.min(4) {
                let list = Partition::enumerate(size, None);
                for kappa in &list {
                    let pk = symfunc::macdonald(kappa);
                    for mu in &list {
                        let got = pk.scalar_product_qt(&symfunc::macdonald(mu));
                        if kappa == mu {
                            let mut want = kappa
                                .primed_hook_product_qt()
                                .div_checked(&kappa.hook_product_qt())
                                .map_err(|e| e.to_string())?;
                            if faulted {
                                want = want.mul(&rf("1+t"));
                            }
                            expect_eq(&format!("norm of {kappa}"), got, want)?;
                        } else if !got.is_zero() {
                            return Err(format!(
                                "orthogonality of {kappa}, {mu}: scalar product {got}"
                            ));
                        }
                    }
                }
            }
            Ok(())
        },
    );

    report.run(
        "jack-duality",
        "normalized Gaussian averages of conjugate diagrams agree under alpha -> 1/alpha",
        || {
            for size in 1..=deg {
                for kappa in Partition::enumerate(size, None) {
                    expect_true(
                        &format!("diagram {kappa}"),
                        duality_check_jack(&kappa).map_err(|e| e.to_string())?,
                    )?;
                }
            }
            Ok(())
        },
    );

    report.run(
        "macdonald-duality",
        "normalized lattice averages of conjugate diagrams agree under (q,t) -> (1/t,1/q)",
        || {
            for size in 1..=deg.min(4) {
                for kappa in Partition::enumerate(size, None) {
                    expect_true(
                        &format!("diagram {kappa}"),
                        duality_check_macdonald(&kappa).map_err(|e| e.to_string())?,
                    )?;
                }
            }
            Ok(())
        },
    );

    report.run(
        "powersum-conjugation",
        "power-sum expansion coefficients obey the conjugation identities in both families",
        || {
            let alpha = RatFunc::var(Var::Alpha);
            let inv_alpha = BTreeMap::from([(
                Var::Alpha,
                alpha.recip().map_err(|e| e.to_string())?,
            )]);
            let swap = BTreeMap::from([
                (Var::Q, RatFunc::var(Var::T).recip().map_err(|e| e.to_string())?),
                (Var::T, RatFunc::var(Var::Q).recip().map_err(|e| e.to_string())?),
            ]);
            for size in 1..=deg.min(5) {
                let in_jack = symfunc::powersum_in_jack(size);
                let in_macdonald = symfunc::powersum_in_macdonald(size);
                for kappa in Partition::enumerate(size, None) {
                    let conj = kappa.conjugate();
                    let lhs = alpha
                        .neg()
                        .pow_u(size - 1)
                        .mul(&in_jack[&kappa])
                        .div_checked(&kappa.hook_product_alpha())
                        .map_err(|e| e.to_string())?;
                    let rhs = in_jack[&conj]
                        .div_checked(&conj.hook_product_alpha())
                        .map_err(|e| e.to_string())?
                        .substitute(&inv_alpha)
                        .map_err(|e| e.to_string())?;
                    expect_eq(&format!("coupling side at {kappa}"), lhs, rhs)?;
                    let lhs = in_macdonald[&kappa]
                        .div_checked(&kappa.hook_product_qt())
                        .map_err(|e| e.to_string())?;
                    let prefactor = RatFunc::var(Var::T)
                        .pow_i(-i64::from(kappa.n_stat()))
                        .map_err(|e| e.to_string())?
                        .neg()
                        .mul(
                            &RatFunc::var(Var::Q)
                                .pow_i(-i64::from(conj.n_stat() + size))
                                .map_err(|e| e.to_string())?,
                        )
                        .mul(&RatFunc::one().sub(&RatFunc::var(Var::Q).pow_u(size)))
                        .div_checked(&RatFunc::one().sub(&RatFunc::var(Var::T).pow_u(size)))
                        .map_err(|e| e.to_string())?;
                    let rhs = in_macdonald[&conj]
                        .div_checked(&conj.hook_product_qt())
                        .map_err(|e| e.to_string())?
                        .substitute(&swap)
                        .map_err(|e| e.to_string())?;
                    expect_eq(
                        &format!("lattice side at {kappa}"),
                        lhs,
                        prefactor.mul(&rhs),
                    )?;
                }
            }
            Ok(())
        },
    );

    report.run(
        "characteristic-polynomial-closed-form",
        "averaged characteristic polynomials equal the degree-N lattice orthogonal polynomial",
        || {
            for n in 0..=deg.min(4) {
                let averaged = char_poly_average(n).map_err(|e| e.to_string())?;
                let closed = al_salam_carlitz_poly(
                    n,
                    &RatFunc::var(Var::A),
                    &RatFunc::var(Var::Z),
                    &RatFunc::var(Var::T),
                )
                .map_err(|e| e.to_string())?;
                expect_eq(&format!("dimension {n}"), averaged, closed)?;
            }
            Ok(())
        },
    );

    report.run(
        "genus-expansion",
        "scaled Gaussian moments expand in the dimension with genus-indexed coefficients",
        || {
            for p in 1..=deg.min(4) {
                let expansion = topological_expansion(p).map_err(|e| e.to_string())?;
                if expansion.coefficients.len() != (p + 1) as usize {
                    return Err(format!(
                        "order {p}: expected {} genus coefficients, found {}",
                        p + 1,
                        expansion.coefficients.len()
                    ));
                }
                let mut reassembled = RatFunc::zero();
                for (g, coeff) in &expansion.coefficients {
                    reassembled =
                        reassembled.add(&coeff.mul(&RatFunc::var(Var::N).pow_u(p + 1 - g)));
                }
                let scale = RatFunc::rational(BigRational::from_integer(
                    BigInt::from(2).pow(p),
                ));
                let scaled = moment_gaussian_beta(p)
                    .map_err(|e| e.to_string())?
                    .mul(&scale);
                expect_eq(&format!("reassembly at order {p}"), reassembled, scaled)?;
            }
            Ok(())
        },
    );

    report.run(
        "moment-recurrence",
        "the two binomial forms of the unit-coupling moments agree and match the symbolic moments",
        || {
            for p in 1..=6u32 {
                for n in 1..=6u32 {
                    // the call itself asserts both binomial forms agree
                    harer_zagier_moment(p, n).map_err(|e| e.to_string())?;
                }
            }
            for p in 1..=3u32 {
                let unit = moment_gaussian_beta(p)
                    .map_err(|e| e.to_string())?
                    .substitute(&BTreeMap::from([(Var::Alpha, RatFunc::one())]))
                    .map_err(|e| e.to_string())?;
                for n in 1..=4u32 {
                    let expected = unit
                        .eval_numeric(&BTreeMap::from([(Var::N, big(n))]))
                        .map_err(|e| e.to_string())?;
                    expect_eq(
                        &format!("order {p}, dimension {n}"),
                        harer_zagier_moment(p, n).map_err(|e| e.to_string())?,
                        expected,
                    )?;
                }
            }
            Ok(())
        },
    );

    report.run(
        "hypergeometric-kernels",
        "term-wise averaged hypergeometric kernels reproduce their exponential closed forms",
        || {
            expect_true(
                "lattice kernel",
                hypergeom_check_qt(deg.min(3), 2).map_err(|e| e.to_string())?,
            )?;
            expect_true(
                "Gaussian kernel at unit coupling",
                hypergeom_check_jack(deg.min(4), 2, &BigRational::one())
                    .map_err(|e| e.to_string())?,
            )?;
            expect_true(
                "Gaussian kernel at coupling 1/2",
                hypergeom_check_jack(
                    deg.min(4),
                    1,
                    &BigRational::new(BigInt::from(1), BigInt::from(2)),
                )
                .map_err(|e| e.to_string())?,
            )
        },
    );
}

fn lattice_suite(report: &mut Report, q: &BigRational, a: &BigRational, depth: u32) {
    report.run(
        "lattice-mass-normalization",
        "total Jackson-integral mass matches the closed-form normalization",
        || {
            for n in 1..=2u32 {
                for m in 1..=2u32 {
                    let spec = LatticeSpec::new(q.clone(), m, a.clone(), n, depth, false)
                        .map_err(|e| e.to_string())?;
                    let mass = jackson_total_mass(&spec).map_err(|e| e.to_string())?;
                    let closed = lattice_normalization(&spec).map_err(|e| e.to_string())?;
                    expect_close(&format!("n={n}, m={m}"), &mass, &closed)?;
                }
            }
            Ok(())
        },
    );

    report.run(
        "symmetrized-plain-equivalence",
        "plain and symmetrized lattice interactions give identical normalized averages",
        || {
            let p1 = SymFunc::powersum(&Partition::new(vec![1]).expect("valid partition"));
            let p2 = SymFunc::powersum(&Partition::new(vec![2]).expect("valid partition"));
            let p11 = SymFunc::powersum(&Partition::new(vec![1, 1]).expect("valid partition"));
            for m in 1..=2u32 {
                for (label, f) in [("p1", &p1), ("p2", &p2), ("p1^2", &p11)] {
                    let spec = LatticeSpec::new(q.clone(), m, a.clone(), 2, depth, false)
                        .map_err(|e| e.to_string())?;
                    expect_true(
                        &format!("{label} at m={m}"),
                        kadell_equivalence_check(f, &spec).map_err(|e| e.to_string())?,
                    )?;
                }
            }
            Ok(())
        },
    );

    report.run(
        "symbolic-average-integration",
        "symbolic lattice averages match Jackson integration at the numeric point",
        || {
            let m = 2u32;
            let n = 2u32;
            let t = rational_pow(q, i64::from(m)).map_err(|e| e.to_string())?;
            let u = rational_pow(&t, i64::from(n)).map_err(|e| e.to_string())?;
            let spec = LatticeSpec::new(q.clone(), m, a.clone(), n, depth, false)
                .map_err(|e| e.to_string())?;
            for parts in [vec![1u32], vec![2], vec![1, 1]] {
                let kappa = Partition::new(parts).map_err(|e| e.to_string())?;
                let numeric = jackson_average(&symfunc::macdonald(&kappa), &spec)
                    .map_err(|e| e.to_string())?;
                let symbolic = macdonald_average(&kappa)
                    .map_err(|e| e.to_string())?
                    .eval_numeric(&BTreeMap::from([
                        (Var::A, a.clone()),
                        (Var::Q, q.clone()),
                        (Var::T, t.clone()),
                        (Var::U, u.clone()),
                    ]))
                    .map_err(|e| e.to_string())?;
                expect_close(&format!("diagram {kappa}"), &numeric, &symbolic)?;
            }
            Ok(())
        },
    );

    report.run(
        "characteristic-polynomial-integration",
        "the averaged characteristic polynomial matches Jackson integration at the numeric point",
        || {
            let m = 2u32;
            let n = 2u32;
            let t = rational_pow(q, i64::from(m)).map_err(|e| e.to_string())?;
            let z = big(2);
            let spec = LatticeSpec::new(q.clone(), m, a.clone(), n, depth, false)
                .map_err(|e| e.to_string())?;
            let symbolic = char_poly_average(n)
                .map_err(|e| e.to_string())?
                .eval_numeric(&BTreeMap::from([
                    (Var::Z, z.clone()),
                    (Var::A, a.clone()),
                    (Var::T, t),
                ]))
                .map_err(|e| e.to_string())?;
            let e1 = jackson_average(
                &symfunc::macdonald(&Partition::new(vec![1]).expect("valid partition")),
                &spec,
            )
            .map_err(|e| e.to_string())?;
            let e2 = jackson_average(
                &symfunc::macdonald(&Partition::new(vec![1, 1]).expect("valid partition")),
                &spec,
            )
            .map_err(|e| e.to_string())?;
            let assembled = &z * &z - e1 * &z + e2;
            expect_close("dimension 2", &symbolic, &assembled)
        },
    );
}

fn gaussian_suite(report: &mut Report) {
    report.run(
        "gaussian-normalization",
        "raw Gaussian integrator mass matches the closed-form partition function",
        || {
            for beta in [2u32, 4] {
                for n in 1..=3u32 {
                    let spec = GaussianSpec::new(n, beta).map_err(|e| e.to_string())?;
                    expect_true(
                        &format!("n={n}, beta={beta}"),
                        gaussian_partition_check(&spec).map_err(|e| e.to_string())?,
                    )?;
                }
            }
            Ok(())
        },
    );

    report.run(
        "gaussian-average-integration",
        "symbolic Gaussian averages equal exact integration for every small even diagram",
        || {
            for beta in [2u32, 4] {
                let alpha = BigRational::new(BigInt::from(2), BigInt::from(beta));
                let bind = BTreeMap::from([(Var::Alpha, RatFunc::rational(alpha.clone()))]);
                for size in [2u32, 4] {
                    for kappa in Partition::enumerate(size, None) {
                        let g = symfunc::jack(&kappa)
                            .map_coefficients(|c| c.substitute(&bind))
                            .map_err(|e| e.to_string())?;
                        let symbolic = jack_average(&kappa)
                            .map_err(|e| e.to_string())?
                            .eval_numeric(&BTreeMap::from([
                                (Var::Alpha, alpha.clone()),
                                (Var::N, big(3)),
                            ]))
                            .map_err(|e| e.to_string())?;
                        let spec = GaussianSpec::new(3, beta).map_err(|e| e.to_string())?;
                        let numeric =
                            gaussian_average_exact(&g, &spec).map_err(|e| e.to_string())?;
                        if numeric != symbolic {
                            return Err(format!(
                                "diagram {kappa} at beta={beta}: integrator {numeric}, symbolic {symbolic}"
                            ));
                        }
                    }
                }
            }
            Ok(())
        },
    );

    report.run(
        "gaussian-moment-integration",
        "symbolic Gaussian moments equal exact power-sum integration at small dimension",
        || {
            for beta in [2u32, 4] {
                let alpha = BigRational::new(BigInt::from(2), BigInt::from(beta));
                for p in 1..=2u32 {
                    let f = SymFunc::powersum(
                        &Partition::new(vec![2 * p]).expect("valid partition"),
                    );
                    for n in 1..=2u32 {
                        let spec = GaussianSpec::new(n, beta).map_err(|e| e.to_string())?;
                        let numeric =
                            gaussian_average_exact(&f, &spec).map_err(|e| e.to_string())?;
                        let symbolic = moment_gaussian_beta(p)
                            .map_err(|e| e.to_string())?
                            .eval_numeric(&BTreeMap::from([
                                (Var::Alpha, alpha.clone()),
                                (Var::N, big(n)),
                            ]))
                            .map_err(|e| e.to_string())?;
                        if numeric != symbolic {
                            return Err(format!(
                                "order {p}, n={n}, beta={beta}: integrator {numeric}, symbolic {symbolic}"
                            ));
                        }
                    }
                }
            }
            Ok(())
        },
    );
}
