//! Command-line front end: parse a problem file, run the requested
//! decision or construction, print one JSON document on standard output.
//!
//! Exit codes: 0 = evaluated (whatever the verdict), 2 = input error,
//! 3 = the two engines disagreed under --engine both (a bug trap, not a
//! user error). --exit-verdict remaps evaluated outcomes to yes→0 / no→1.

mod format;

use std::fs;
use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use kpfacets::knapsack::{Inequality, KnapsackInstance};
use kpfacets::linalg::RationalVector;
use kpfacets::oracle::{CssInstance, EvcInstance, Oracle, DEFAULT_LIMIT};
use kpfacets::recognizer::{
    check_facet_with, check_validity_with, face_dimension_with, FacetReason, Options,
};
use kpfacets::reductions::{
    css_to_ek, css_to_facets, css_to_supporting, evc_to_css, gu_decompose, gu_sequence,
    partition_to_membership, RepairNote,
};
use kpfacets::Error;

use format::{
    ints, to_json, CssSection, ExactKnapsackSection, GuDocument, InequalitySection, Int,
    InstanceSection, ParamsSection, PointSection, ProblemFile, Rat, VerdictDocument,
};

#[derive(Parser)]
#[command(
    name = "kpfacets",
    version,
    about = "Exact validity, facet, and dimension decisions over 0/1 knapsack polytopes, \
             with hardness-reduction generators and enumeration solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for the scanning engine (default 1, fully serial)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Largest dimension the enumeration engine accepts (default 22)
    #[arg(long, global = true)]
    oracle_limit: Option<usize>,

    /// Omit the timing field so identical inputs give identical bytes
    #[arg(long, global = true)]
    no_timing: bool,

    /// Exit 0 when the verdict is yes and 1 when it is no
    #[arg(long, global = true)]
    exit_verdict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether alpha·x <= beta is valid, facet-defining, or what
    /// face dimension it pins (reads instance + inequality sections)
    Check(CheckArgs),
    /// Construct one problem from another (hardness reductions)
    Gen(GenArgs),
    /// Solve a source problem by exhaustive enumeration
    Solve(SolveArgs),
    /// Print sequence terms and/or decompose a target into distinct terms
    Gu(GuArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Problem file, or - for standard input
    file: String,

    #[arg(long, value_enum, default_value_t = What::Facet)]
    what: What,

    #[arg(long, value_enum, default_value_t = EngineArg::Xp)]
    engine: EngineArg,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,

    /// Problem file, or - for standard input
    file: String,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(value_enum)]
    kind: SolveKind,

    /// Problem file, or - for standard input
    file: String,
}

#[derive(Args)]
struct GuArgs {
    /// Print the first COUNT terms and their prefix sums
    #[arg(long, value_name = "COUNT")]
    terms: Option<usize>,

    /// Depth parameter: decompose over term indices 1..=2r+1
    #[arg(long)]
    r: Option<usize>,

    /// Target to decompose (decimal integer)
    #[arg(long, value_name = "INT")]
    tau: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum What {
    Valid,
    Facet,
    Dim,
}

impl What {
    fn name(self) -> &'static str {
        match self {
            What::Valid => "valid",
            What::Facet => "facet",
            What::Dim => "dim",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    /// Profile-scanning recognizer (polynomial for fixed K)
    Xp,
    /// Exhaustive enumeration ground truth (small n only)
    Oracle,
    /// Run both and require agreement
    Both,
}

impl EngineArg {
    fn name(self) -> &'static str {
        match self {
            EngineArg::Xp => "xp",
            EngineArg::Oracle => "oracle",
            EngineArg::Both => "both",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Evc2css,
    Css2support,
    Css2facets,
    Css2ek,
    Part2member,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SolveKind {
    Css,
    Evc,
    Partition,
    Ek,
    Membership,
}

impl SolveKind {
    fn name(self) -> &'static str {
        match self {
            SolveKind::Css => "css",
            SolveKind::Evc => "evc",
            SolveKind::Partition => "partition",
            SolveKind::Ek => "ek",
            SolveKind::Membership => "membership",
        }
    }
}

enum Failure {
    /// Unusable input: parse failure, missing section, precondition.
    Input(String),
    /// The engines returned different verdicts for the same question.
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("engine disagreement: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    match &cli.command {
        Command::Check(args) => cmd_check(cli, args),
        Command::Gen(args) => cmd_gen(args),
        Command::Solve(args) => cmd_solve(cli, args),
        Command::Gu(args) => cmd_gu(args),
    }
}

fn read_problem(path: &str) -> Result<ProblemFile, Failure> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Input(format!("reading standard input: {e}")))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("reading {path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("parsing {path}: {e}")))
}

fn big(values: &[Int]) -> Vec<BigInt> {
    values.iter().map(|v| v.0.clone()).collect()
}

fn need<'a, T>(section: &'a Option<T>, name: &str) -> Result<&'a T, Failure> {
    section
        .as_ref()
        .ok_or_else(|| Failure::Input(format!("the input file has no \"{name}\" section")))
}

fn instance_of(pf: &ProblemFile) -> Result<KnapsackInstance, Failure> {
    let sec = need(&pf.instance, "instance")?;
    if sec.n != sec.a.len() {
        return Err(Failure::Input(format!(
            "instance.n is {} but instance.a has {} entries",
            sec.n,
            sec.a.len()
        )));
    }
    Ok(KnapsackInstance::new(big(&sec.a), sec.b.0.clone())?)
}

fn inequality_of(pf: &ProblemFile) -> Result<Inequality, Failure> {
    let sec = need(&pf.inequality, "inequality")?;
    Ok(Inequality::new(big(&sec.alpha), sec.beta.0.clone())?)
}

fn css_of(pf: &ProblemFile) -> Result<CssInstance, Failure> {
    let sec = need(&pf.css, "css")?;
    Ok(CssInstance::new(big(&sec.w), sec.t.0.clone())?)
}

fn evc_of(pf: &ProblemFile) -> Result<EvcInstance, Failure> {
    let sec = need(&pf.evc, "evc")?;
    Ok(EvcInstance::new(sec.num_vertices, sec.edges.clone(), sec.k)?)
}

fn instance_section(instance: &KnapsackInstance) -> InstanceSection {
    InstanceSection {
        n: instance.n(),
        a: ints(instance.weights()),
        b: Int::from(instance.capacity()),
    }
}

fn inequality_section(ineq: &Inequality) -> InequalitySection {
    InequalitySection {
        alpha: ints(ineq.coeffs()),
        beta: Int::from(ineq.rhs()),
    }
}

fn reason_text(reason: &FacetReason) -> &'static str {
    match reason {
        FacetReason::NotValid => "not valid",
        FacetReason::TailConditionFailed => {
            "no tight feasible point covers the heaviest zero-coefficient variable"
        }
        FacetReason::RankDeficient => "tight points span too low an affine rank",
        FacetReason::AlphaZero => "all coefficients are zero",
    }
}

fn note_text(note: &RepairNote) -> String {
    match note {
        RepairNote::DroppedOversized { count } => format!(
            "{count} item(s) heavier than the target were dropped; they can join no subset"
        ),
        RepairNote::SubstitutedCanonicalNo => {
            "an item matches the target exactly, so the answer is no; encoded the canonical \
             no-instance"
                .to_string()
        }
        RepairNote::SubstitutedCanonicalYes => {
            "no items remain after repair and the answer is yes; encoded the canonical \
             yes-instance"
                .to_string()
        }
    }
}

fn finish(
    cli: &Cli,
    mut doc: VerdictDocument,
    started: Instant,
    yes: Option<bool>,
) -> Result<ExitCode, Failure> {
    if !cli.no_timing {
        doc.timing_us = Some(started.elapsed().as_micros() as u64);
    }
    print!("{}", to_json(&doc));
    if cli.exit_verdict {
        if let Some(yes) = yes {
            return Ok(if yes { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(cli: &Cli, args: &CheckArgs) -> Result<ExitCode, Failure> {
    let pf = read_problem(&args.file)?;
    let instance = instance_of(&pf)?;
    let ineq = inequality_of(&pf)?;
    let opts = Options {
        threads: cli.threads.unwrap_or(1).max(1),
    };
    let oracle = Oracle::with_limit(cli.oracle_limit.unwrap_or(DEFAULT_LIMIT));
    let mut doc = VerdictDocument::new(format!(
        "check --what {} --engine {}",
        args.what.name(),
        args.engine.name()
    ));
    doc.engine = Some(args.engine.name().to_string());
    let started = Instant::now();

    let yes = match args.what {
        What::Valid => {
            let mut valid = None;
            if args.engine != EngineArg::Oracle {
                let v = check_validity_with(&instance, &ineq, &opts)?;
                valid = Some(v.valid);
                doc.violation = v.violation;
            }
            if args.engine != EngineArg::Xp {
                let report = oracle.brute_analyze(&instance, &ineq)?;
                if let Some(xp) = valid {
                    if xp != report.valid {
                        return Err(Failure::Mismatch(format!(
                            "valid: scanning engine says {xp}, enumeration says {}",
                            report.valid
                        )));
                    }
                }
                valid = Some(report.valid);
            }
            doc.valid = valid;
            valid
        }
        What::Facet => {
            let mut is_facet = None;
            if args.engine != EngineArg::Oracle {
                let v = check_facet_with(&instance, &ineq, &opts)?;
                is_facet = Some(v.is_facet);
                doc.reason = v.reason.as_ref().map(|r| reason_text(r).to_string());
                doc.certificate = v.certificate;
                doc.face_dim = v.face_dim;
                doc.violation = v.violation;
                doc.candidates_examined = Some(v.candidates_examined);
            }
            if args.engine != EngineArg::Xp {
                let report = oracle.brute_analyze(&instance, &ineq)?;
                if let Some(xp) = is_facet {
                    if xp != report.is_facet {
                        return Err(Failure::Mismatch(format!(
                            "facet: scanning engine says {xp}, enumeration says {}",
                            report.is_facet
                        )));
                    }
                    if let Some(d) = doc.face_dim {
                        if report.valid && d != report.face_dim {
                            return Err(Failure::Mismatch(format!(
                                "face dimension: scanning engine says {d}, enumeration says {}",
                                report.face_dim
                            )));
                        }
                    }
                } else {
                    doc.face_dim = Some(report.face_dim);
                }
                is_facet = Some(report.is_facet);
            }
            doc.is_facet = is_facet;
            is_facet
        }
        What::Dim => {
            let mut dim = None;
            if args.engine != EngineArg::Oracle {
                match face_dimension_with(&instance, &ineq, &opts) {
                    Ok(d) => dim = Some(d),
                    Err(Error::TailNotEmpty) => {
                        // The scan settles dimension only on full-support
                        // inequalities; fall back to enumeration.
                        doc.notes.push(
                            "zero-coefficient variables present; dimension computed by \
                             enumeration"
                                .to_string(),
                        );
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            if args.engine != EngineArg::Xp || (dim.is_none() && !doc.notes.is_empty()) {
                let report = oracle.brute_analyze(&instance, &ineq)?;
                if !report.valid {
                    return Err(Failure::Input(
                        "the inequality is not valid, so it pins no face".to_string(),
                    ));
                }
                if let Some(xp) = dim {
                    if xp != report.face_dim {
                        return Err(Failure::Mismatch(format!(
                            "face dimension: scanning engine says {xp}, enumeration says {}",
                            report.face_dim
                        )));
                    }
                }
                dim = Some(report.face_dim);
            }
            doc.face_dim = dim;
            dim.map(|d| d >= 0)
        }
    };
    finish(cli, doc, started, yes)
}

fn cmd_gen(args: &GenArgs) -> Result<ExitCode, Failure> {
    let pf = read_problem(&args.file)?;
    let out = match args.kind {
        GenKind::Evc2css => {
            let css = evc_to_css(&evc_of(&pf)?)?;
            ProblemFile {
                css: Some(CssSection {
                    w: ints(css.w()),
                    t: Int::from(css.t()),
                }),
                ..ProblemFile::default()
            }
        }
        GenKind::Css2support => {
            let (ineq, instance) = css_to_supporting(&css_of(&pf)?);
            ProblemFile {
                instance: Some(instance_section(&instance)),
                inequality: Some(inequality_section(&ineq)),
                ..ProblemFile::default()
            }
        }
        GenKind::Css2facets => {
            let red = css_to_facets(&css_of(&pf)?)?;
            ProblemFile {
                instance: Some(instance_section(&red.instance)),
                inequality: Some(inequality_section(&red.inequality)),
                params: Some(ParamsSection {
                    l: Int(red.params.l.clone()),
                    r: red.params.r,
                    n: red.params.dimension,
                }),
                notes: red.notes.iter().map(note_text).collect(),
                ..ProblemFile::default()
            }
        }
        GenKind::Css2ek => {
            let (c, instance, target) = css_to_ek(&css_of(&pf)?);
            ProblemFile {
                instance: Some(instance_section(&instance)),
                exact_knapsack: Some(ExactKnapsackSection {
                    c: ints(&c),
                    target: Int(target),
                }),
                ..ProblemFile::default()
            }
        }
        GenKind::Part2member => {
            let sec = need(&pf.partition, "partition")?;
            let (point, instance) = partition_to_membership(&big(&sec.a))?;
            ProblemFile {
                instance: Some(instance_section(&instance)),
                point: Some(PointSection {
                    coords: point.entries().iter().map(|r| Rat(r.clone())).collect(),
                }),
                ..ProblemFile::default()
            }
        }
    };
    print!("{}", to_json(&out));
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(cli: &Cli, args: &SolveArgs) -> Result<ExitCode, Failure> {
    let pf = read_problem(&args.file)?;
    let oracle = Oracle::with_limit(cli.oracle_limit.unwrap_or(DEFAULT_LIMIT));
    let mut doc = VerdictDocument::new(format!("solve {}", args.kind.name()));
    let started = Instant::now();

    let yes = match args.kind {
        SolveKind::Css => {
            let css = css_of(&pf)?;
            let answer = oracle.solve_css(&css)?;
            if answer {
                let shy = css.t() - BigInt::one();
                doc.witness = oracle.subset_with_sum(css.w(), &shy)?;
            }
            answer
        }
        SolveKind::Evc => {
            let evc = evc_of(&pf)?;
            let (size, cover) = oracle.min_vertex_cover(&evc)?;
            let answer = size == evc.k();
            if answer {
                doc.witness = Some(cover);
            }
            answer
        }
        SolveKind::Partition => {
            let sec = need(&pf.partition, "partition")?;
            let witness = oracle.partition_witness(&big(&sec.a))?;
            let answer = witness.is_some();
            doc.witness = witness;
            answer
        }
        SolveKind::Ek => {
            let sec = need(&pf.exact_knapsack, "exact_knapsack")?;
            let instance = instance_of(&pf)?;
            let c = big(&sec.c);
            let answer = oracle.verify_exact_knapsack(&c, &instance, &sec.target.0)?;
            if answer {
                doc.witness_point = Some(oracle.knapsack_argmax(&c, &instance)?);
            }
            answer
        }
        SolveKind::Membership => {
            let sec = need(&pf.point, "point")?;
            let instance = instance_of(&pf)?;
            let point = RationalVector::new(sec.coords.iter().map(|r| r.0.clone()).collect());
            let weights = oracle.check_membership(&point, &instance)?;
            let answer = weights.is_some();
            if let Some(weights) = weights {
                let feasible = oracle.enumerate_feasible(&instance)?;
                doc.weights = Some(
                    feasible
                        .into_iter()
                        .zip(weights)
                        .filter(|(_, w)| !w.numer().is_zero())
                        .map(|(p, w)| (p, Rat(w)))
                        .collect(),
                );
            }
            answer
        }
    };
    doc.answer = Some(yes);
    finish(cli, doc, started, Some(yes))
}

fn cmd_gu(args: &GuArgs) -> Result<ExitCode, Failure> {
    let mut doc = GuDocument {
        command: "gu".to_string(),
        ..GuDocument::default()
    };
    let mut asked = false;
    if let Some(count) = args.terms {
        let table = gu_sequence(count)?;
        doc.terms = Some(ints(table.terms()));
        doc.prefix_sums = Some((1..=count).map(|j| Int::from(table.prefix_sum(j))).collect());
        doc.command.push_str(&format!(" --terms {count}"));
        asked = true;
    }
    match (args.r, &args.tau) {
        (Some(r), Some(tau)) => {
            let target: BigInt = tau
                .parse()
                .map_err(|_| Failure::Input(format!("not a decimal integer: {tau:?}")))?;
            let indices = gu_decompose(r, &target)?;
            let table = gu_sequence(2 * r + 1)?;
            let sum: BigInt = indices.iter().map(|&j| table.term(j)).sum();
            doc.indices = Some(indices);
            doc.sum = Some(Int(sum));
            doc.command.push_str(&format!(" --r {r} --tau {target}"));
            asked = true;
        }
        (None, None) => {}
        _ => {
            return Err(Failure::Input(
                "--r and --tau decompose a target together; pass both".to_string(),
            ))
        }
    }
    if !asked {
        return Err(Failure::Input(
            "nothing to do: pass --terms and/or --r with --tau".to_string(),
        ));
    }
    print!("{}", to_json(&doc));
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::format::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn roundtrip(pf: &ProblemFile) {
        let text = to_json(pf);
        let back: ProblemFile = serde_json::from_str(&text).unwrap();
        assert_eq!(&back, pf);
    }

    #[test]
    fn documents_round_trip_through_the_parser() {
        let huge: BigInt = "123456789012345678901234567890".parse().unwrap();
        roundtrip(&ProblemFile {
            instance: Some(InstanceSection {
                n: 2,
                a: vec![Int(BigInt::from(3)), Int(huge.clone())],
                b: Int(huge.clone()),
            }),
            inequality: Some(InequalitySection {
                alpha: vec![Int(BigInt::from(1)), Int(BigInt::from(0))],
                beta: Int(BigInt::from(-7)),
            }),
            point: Some(PointSection {
                coords: vec![
                    Rat(BigRational::new(BigInt::from(1), BigInt::from(2))),
                    Rat(BigRational::from_integer(BigInt::from(4))),
                ],
            }),
            notes: vec!["text survives".to_string()],
            ..ProblemFile::default()
        });
        roundtrip(&ProblemFile {
            css: Some(CssSection {
                w: vec![Int(BigInt::from(2))],
                t: Int(BigInt::from(4)),
            }),
            evc: Some(EvcSection {
                num_vertices: 3,
                edges: vec![(0, 1), (1, 2)],
                k: 2,
            }),
            exact_knapsack: Some(ExactKnapsackSection {
                c: vec![Int(BigInt::from(5))],
                target: Int(huge.clone()),
            }),
            partition: Some(PartitionSection {
                a: vec![Int(BigInt::from(1)), Int(BigInt::from(1))],
            }),
            params: Some(ParamsSection {
                l: Int(huge),
                r: 6,
                n: 18,
            }),
            ..ProblemFile::default()
        });
    }

    #[test]
    fn verdicts_round_trip_and_huge_integers_become_strings() {
        let mut doc = VerdictDocument::new("solve css");
        doc.answer = Some(true);
        doc.witness = Some(vec![1]);
        doc.weights = Some(vec![(
            vec![0, 1],
            Rat(BigRational::new(BigInt::from(2), BigInt::from(6))),
        )]);
        let text = to_json(&doc);
        assert!(text.contains("\"1/3\""), "lowest terms expected: {text}");
        let back: VerdictDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);

        let huge: BigInt = "98765432109876543210".parse().unwrap();
        let text = to_json(&ProblemFile {
            css: Some(CssSection {
                w: vec![Int(huge.clone())],
                t: Int(BigInt::from(3)),
            }),
            ..ProblemFile::default()
        });
        assert!(text.contains("\"98765432109876543210\""));
        assert!(text.contains("\"t\": 3"));
    }

    #[test]
    fn floats_and_junk_are_rejected() {
        assert!(serde_json::from_str::<ProblemFile>(
            r#"{"css": {"w": [1.5], "t": 2}}"#
        )
        .is_err());
        assert!(serde_json::from_str::<ProblemFile>(
            r#"{"css": {"w": ["12x"], "t": 2}}"#
        )
        .is_err());
        assert!(serde_json::from_str::<ProblemFile>(
            r#"{"point": {"coords": ["1/0"]}}"#
        )
        .is_err());
        assert!(
            serde_json::from_str::<ProblemFile>(r#"{"mystery": 1}"#).is_err(),
            "unknown sections must not parse"
        );
    }
}
