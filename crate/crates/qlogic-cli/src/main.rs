//! `qlogic` — evaluate quantum-logic scenarios from the command line.
//!
//! Scenario files go in (`key = value` format), truth tables and CSV
//! interference curves come out. Exit codes: 0 ok, 2 formula parse error,
//! 3 config error, 4 numerical-invariant violation.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qlogic::formula::Formula;
use qlogic::lattice::{distributivity_report, Subspace};
use qlogic::scenarios::{
    build_double_slit, collapse, interference_curve, parse_scenario_file, wigner_friend_report,
    DoubleSlitConfig, Scenario,
};
use qlogic::semantics::{
    bvn, partial, render_bit, three_valued, BvnMode, SemanticsConfig, ThreeValuedVariant,
};
use qlogic::Error;

#[derive(Parser)]
#[command(name = "qlogic", version, about = "Quantum-logic workbench CLI")]
struct Cli {
    /// Valuation engine used by `eval`.
    #[arg(long, global = true, value_enum, default_value_t = SemanticsFlag::Partial)]
    semantics: SemanticsFlag,

    /// Connective tables for the three-valued engine.
    #[arg(long, global = true, value_enum, default_value_t = VariantFlag::Kleene)]
    variant: VariantFlag,

    /// Overrides the scenario file's collapse seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output path for commands that write files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one formula against a scenario.
    Eval { scenario: PathBuf, formula: String },
    /// Evaluate a file of formulas under all semantics side by side.
    Table {
        scenario: PathBuf,
        formulas: PathBuf,
    },
    /// Write the interference curve at time T as CSV (requires --out).
    Interference { scenario: PathBuf, t: f64 },
    /// Audit the distributive law on (span{Ψ}, H_P1, H_P2).
    Distributivity { scenario: PathBuf },
    /// Print the Wigner's-friend dual-observer report.
    Wigner { scenario: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum SemanticsFlag {
    Three,
    #[value(name = "bvn-tf")]
    BvnTf,
    #[value(name = "bvn-lattice")]
    BvnLattice,
    Partial,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantFlag {
    Kleene,
    Bochvar,
}

impl VariantFlag {
    fn to_variant(self) -> ThreeValuedVariant {
        match self {
            VariantFlag::Kleene => ThreeValuedVariant::KleeneStrong,
            VariantFlag::Bochvar => ThreeValuedVariant::BochvarInternal,
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Config(_)
            | Error::InvalidGrid(_)
            | Error::WindowOutsideGrid(..)
            | Error::EmptyWindow
            | Error::UnboundAtom(_)
            | Error::DetectorAbsent
            | Error::DetectorAlreadyAttached
            | Error::DetectorIndexOutOfRange(..) => 3,
            _ => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Eval { scenario, formula } => cmd_eval(&cli, scenario, formula),
        Command::Table { scenario, formulas } => cmd_table(&cli, scenario, formulas),
        Command::Interference { scenario, t } => cmd_interference(&cli, scenario, *t),
        Command::Distributivity { scenario } => cmd_distributivity(&cli, scenario),
        Command::Wigner { scenario } => cmd_wigner(&cli, scenario),
    }
}

fn load_config(cli: &Cli, path: &Path) -> Result<DoubleSlitConfig, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::config(format!("{}: {e}", path.display())))?;
    let mut cfg = parse_scenario_file(&text)?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn parse_formula(text: &str) -> Result<Formula, Failure> {
    Formula::parse(text).map_err(|e| Failure {
        code: 2,
        message: e.to_string(),
    })
}

fn evaluate(
    scenario: &Scenario,
    formula: &Formula,
    flag: SemanticsFlag,
    variant: VariantFlag,
) -> Result<String, Failure> {
    let v = scenario.state_vector();
    let b = &scenario.binding;
    Ok(match flag {
        SemanticsFlag::Three => {
            let cfg = SemanticsConfig {
                three_valued_variant: variant.to_variant(),
                ..Default::default()
            };
            three_valued(formula, b, v, &cfg)?.to_string()
        }
        SemanticsFlag::BvnTf => render_bit(bvn(formula, b, v, &SemanticsConfig::default())?).into(),
        SemanticsFlag::BvnLattice => {
            let cfg = SemanticsConfig {
                bvn_mode: BvnMode::Lattice,
                ..Default::default()
            };
            render_bit(bvn(formula, b, v, &cfg)?).into()
        }
        SemanticsFlag::Partial => partial(formula, b, v)?.to_string(),
    })
}

fn cmd_eval(cli: &Cli, scenario_path: &Path, formula_text: &str) -> Result<(), Failure> {
    let formula = parse_formula(formula_text)?;
    let cfg = load_config(cli, scenario_path)?;
    let scenario = build_double_slit(&cfg)?;
    let value = evaluate(&scenario, &formula, cli.semantics, cli.variant)?;
    println!("{} = {value}", formula_text.trim());
    Ok(())
}

fn cmd_table(cli: &Cli, scenario_path: &Path, formulas_path: &Path) -> Result<(), Failure> {
    let cfg = load_config(cli, scenario_path)?;
    let scenario = build_double_slit(&cfg)?;
    let text = fs::read_to_string(formulas_path)
        .map_err(|e| Failure::config(format!("{}: {e}", formulas_path.display())))?;
    let mut out = String::from("formula\tthree\tbvn-tf\tbvn-lattice\tpartial\n");
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let formula = Formula::parse(line).map_err(|e| Failure {
            code: 2,
            message: format!("{}:{}: {e}", formulas_path.display(), idx + 1),
        })?;
        let cells = [
            evaluate(&scenario, &formula, SemanticsFlag::Three, cli.variant)?,
            evaluate(&scenario, &formula, SemanticsFlag::BvnTf, cli.variant)?,
            evaluate(&scenario, &formula, SemanticsFlag::BvnLattice, cli.variant)?,
            evaluate(&scenario, &formula, SemanticsFlag::Partial, cli.variant)?,
        ];
        let _ = writeln!(out, "{line}\t{}", cells.join("\t"));
    }
    print!("{out}");
    Ok(())
}

fn cmd_interference(cli: &Cli, scenario_path: &Path, t: f64) -> Result<(), Failure> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Failure::config(format!(
            "evolution time must be non-negative, got {t}"
        )));
    }
    let Some(out_path) = &cli.out else {
        return Err(Failure::config("interference needs --out PATH"));
    };
    let cfg = load_config(cli, scenario_path)?;
    let curve = interference_curve(&cfg, t)?;
    let mut csv = String::from("x,intensity_no_detector,intensity_with_detector,cross_term\n");
    for i in 0..curve.xs.len() {
        let _ = writeln!(
            csv,
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            curve.xs[i], curve.no_detector[i], curve.with_detector[i], curve.cross_term[i]
        );
    }
    fs::write(out_path, csv)
        .map_err(|e| Failure::config(format!("{}: {e}", out_path.display())))?;
    Ok(())
}

fn cmd_distributivity(cli: &Cli, scenario_path: &Path) -> Result<(), Failure> {
    let cfg = load_config(cli, scenario_path)?;
    let scenario = build_double_slit(&cfg)?;
    let q = Subspace::from_projector(
        scenario
            .binding
            .get("Q")
            .expect("double-slit scenarios bind Q"),
    );
    let p1 = Subspace::from_projector(scenario.binding.get("P1").expect("bound"));
    let p2 = Subspace::from_projector(scenario.binding.get("P2").expect("bound"));
    let report = distributivity_report(&q, &p1, &p2)?;
    println!("lhs rank: {}", report.lhs.rank());
    println!("rhs rank: {}", report.rhs.rank());
    println!(
        "verdict: {}",
        if report.equal { "EQUAL" } else { "NOT-EQUAL" }
    );
    Ok(())
}

fn cmd_wigner(cli: &Cli, scenario_path: &Path) -> Result<(), Failure> {
    let cfg = load_config(cli, scenario_path)?;
    let report = wigner_friend_report(&cfg, cfg.seed)?;
    for (label, values) in [("FRIEND", &report.friend), ("WIGNER", &report.wigner)] {
        println!("{label}");
        for (formula, value) in values {
            println!("  {formula} = {value}");
        }
    }
    // Contrast rows: the textbook reading of the same experiment. The
    // computed row applies the BvN lattice valuation to both contexts;
    // the narrative row states the classical-logic verdict the
    // instrumentalist account assigns to the outside observer, which no
    // engine here computes.
    let lattice_xor = wigner_contrast(&cfg)?;
    println!(
        "# instrumentalist+classical contrast (computed, bvn-lattice): friend={} wigner={}",
        lattice_xor.0, lattice_xor.1
    );
    println!("# narrative classical-logic reading (not computed): wigner=F");
    println!("OIT={} OIP={}", report.oit as u8, report.oip as u8);
    Ok(())
}

fn wigner_contrast(cfg: &DoubleSlitConfig) -> Result<(&'static str, &'static str), Failure> {
    let mut with_detector = cfg.clone();
    with_detector.detector = true;
    let entangled = build_double_slit(&with_detector)?;
    let friend = collapse(&entangled, cfg.seed)?.scenario;
    let formula = Formula::parse("P1 ^ P2").expect("fixed formula");
    let lattice = SemanticsConfig {
        bvn_mode: BvnMode::Lattice,
        ..Default::default()
    };
    let f = bvn(&formula, &friend.binding, friend.state_vector(), &lattice)?;
    let w = bvn(
        &formula,
        &entangled.binding,
        entangled.state_vector(),
        &lattice,
    )?;
    Ok((render_bit(f), render_bit(w)))
}
