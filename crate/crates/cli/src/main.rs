use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use distortion_core::assignment::{reduce_and_solve, Assignment, DistanceCost};
use distortion_core::audit::{
    audit_additive_assignment, audit_percentile_social_choice, audit_sum_social_choice, sampled_percentile_lower_bound,
    sampled_sum_lower_bound, AuditReport, Objective,
};
use distortion_core::constructions::{generate, ConstructionName, Params};
use distortion_core::io::{
    instance_digest, load_instance, serialize_instance, serialize_report, AuditRecord, GuaranteeRecord, Instance,
    OutcomeRecord, ProblemSpec, ReportFile,
};
use distortion_core::model::{Facility, FacilitySet};
use distortion_core::random::{random_instance, Geometry, ProfileKind};
use distortion_core::repro::{documented_params, run_all, run_example};
use distortion_core::social_choice::{copeland_winner, median_winner, sum_winner_for_profile};
use distortion_core::solvers::Solver;
use distortion_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Ordinal mechanisms with known facility distances, and exact worst-case
/// distortion audits.
#[derive(Parser, Debug)]
#[command(name = "distortion", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a mechanism on an instance and write a report.
    Solve(SolveArgs),
    /// Audit a given outcome against every consistent metric.
    Audit(AuditArgs),
    /// Write a named construction or a random instance.
    Gen(GenArgs),
    /// Regenerate the named constructions and check their numbers.
    Repro(ReproArgs),
}

#[derive(Args, Debug)]
struct Sampling {
    /// Replace the exact audit by the best of this many sampled metrics.
    #[arg(long, requires = "seed")]
    samples: Option<usize>,
    /// Seed for sampled audits.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    /// alg1, alg2, copeland, or reduce:<solver> with solver one of auto,
    /// brute_force, min_cost_matching, bottleneck_matching, k_center_greedy,
    /// k_median, facility_location.
    #[arg(long)]
    mechanism: String,
    /// Skip the worst-case audit of the chosen outcome.
    #[arg(long)]
    no_audit: bool,
    #[command(flatten)]
    sampling: Sampling,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AuditArgs {
    #[arg(long)]
    instance: PathBuf,
    /// A facility name, or comma-separated facility names, one per agent.
    #[arg(long)]
    outcome: String,
    /// sum, median, max or percentile:<alpha>. Defaults to sum for a single
    /// facility and to the problem's own cost for an assignment.
    #[arg(long)]
    objective: Option<String>,
    #[command(flatten)]
    sampling: Sampling,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GeometryArg {
    Euclidean,
    Grid,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProfileArg {
    Located,
    Uniform,
    TopOnly,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Named construction.
    #[arg(long, conflicts_with = "random")]
    example: Option<String>,
    /// Comma-separated overrides such as q=5,eps=1e-3,L=1e6.
    #[arg(long, requires = "example")]
    params: Option<String>,
    /// Random instance instead of a named construction.
    #[arg(long, requires_all = ["agents", "facilities", "seed"])]
    random: bool,
    #[arg(long)]
    agents: Option<usize>,
    #[arg(long)]
    facilities: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "euclidean")]
    geometry: GeometryArg,
    #[arg(long, value_enum, default_value = "located")]
    profile: ProfileArg,
    /// Problem preset for random instances, e.g. social_choice_sum or
    /// k_median:2.
    #[arg(long, default_value = "social_choice_sum")]
    preset: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReproArgs {
    #[arg(long, conflicts_with = "example")]
    all: bool,
    #[arg(long)]
    example: Option<String>,
    #[arg(long, requires = "example")]
    params: Option<String>,
}

enum Failure {
    Input(String),
    Assertion(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Audit(a) => audit(a),
        Command::Gen(a) => gen(a),
        Command::Repro(a) => repro(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Assertion(msg)) => {
            eprintln!("assertion failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    load_instance(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn names(x: &Assignment, facilities: &FacilitySet) -> Vec<String> {
    x.as_slice().iter().map(|f| facilities.name(*f).to_string()).collect()
}

fn guarantee(objective: &str, bound: f64, basis: &str) -> GuaranteeRecord {
    GuaranteeRecord {
        objective: objective.into(),
        bound,
        basis: basis.into(),
    }
}

fn record(report: &AuditReport<f64>, inst: &Instance, sampling: &Sampling) -> AuditRecord {
    let mut r = AuditRecord::from_report(report, &inst.facilities);
    if !report.exact {
        r.samples = sampling.samples;
        r.seed = sampling.seed;
    }
    r
}

fn audit_winner(
    inst: &Instance,
    w: Facility,
    objective: Objective,
    sampling: &Sampling,
) -> Result<AuditRecord, Failure> {
    let l = inst.distances()?;
    let p = &inst.profile;
    let report = match (objective, sampling.samples) {
        (Objective::Sum, None) => audit_sum_social_choice(w, p, l)?,
        (Objective::Sum, Some(s)) => sampled_sum_lower_bound(w, p, l, s, sampling.seed.unwrap_or_default())?,
        (Objective::Percentile(a), None) => audit_percentile_social_choice(w, p, l, a)?,
        (Objective::Percentile(a), Some(s)) => {
            sampled_percentile_lower_bound(w, p, l, a, s, sampling.seed.unwrap_or_default())?
        }
    };
    Ok(record(&report, inst, sampling))
}

fn audit_assignment(inst: &Instance, x: &Assignment, sampling: &Sampling) -> Result<AuditRecord, Failure> {
    if sampling.samples.is_some() {
        return Err(Failure::Input(
            "sampled audits are available for single-facility outcomes only".into(),
        ));
    }
    let problem = inst.assignment_problem()?;
    let report = audit_additive_assignment(x, &inst.profile, inst.distances()?, &problem)?;
    Ok(record(&report, inst, sampling))
}

fn solve(args: SolveArgs) -> Outcome {
    let inst = read_instance(&args.instance)?;
    let digest = instance_digest(&inst.to_file());
    let mut report = ReportFile {
        instance_digest: digest,
        command: "solve".into(),
        mechanism: Some(args.mechanism.clone()),
        outcome: OutcomeRecord::Winner(String::new()),
        solver: None,
        beta: None,
        guarantees: Vec::new(),
        projected_cost: None,
        audits: Vec::new(),
    };
    let audit = !args.no_audit;
    match args.mechanism.as_str() {
        "alg1" => {
            let w = sum_winner_for_profile(&inst.profile, inst.distances()?)?.winner;
            report.outcome = OutcomeRecord::Winner(inst.facilities.name(w).into());
            report
                .guarantees
                .push(guarantee("sum", 3.0, "projected-agent sum winner"));
            if audit {
                report
                    .audits
                    .push(audit_winner(&inst, w, Objective::Sum, &args.sampling)?);
            }
        }
        "alg2" => {
            let w = median_winner::<f64>(&inst.profile, &inst.partial_order()?)?.winner;
            report.outcome = OutcomeRecord::Winner(inst.facilities.name(w).into());
            report.guarantees.push(guarantee(
                "percentile:alpha for 1/2 <= alpha <= 1",
                3.0,
                "augmented majority graph",
            ));
            report
                .guarantees
                .push(guarantee("sum", 5.0, "augmented majority graph"));
            if audit && inst.l.is_some() {
                report
                    .audits
                    .push(audit_winner(&inst, w, Objective::Percentile(0.5), &args.sampling)?);
                report
                    .audits
                    .push(audit_winner(&inst, w, Objective::Sum, &args.sampling)?);
            }
        }
        "copeland" => {
            let w = copeland_winner::<f64>(&inst.profile)?.winner;
            report.outcome = OutcomeRecord::Winner(inst.facilities.name(w).into());
            report.guarantees.push(guarantee("sum", 5.0, "Copeland baseline"));
            if audit && inst.l.is_some() {
                report
                    .audits
                    .push(audit_winner(&inst, w, Objective::Sum, &args.sampling)?);
            }
        }
        other => {
            let solver_name = other.strip_prefix("reduce:").ok_or_else(|| {
                Failure::Input(format!(
                    "unknown mechanism `{other}`; expected alg1, alg2, copeland or reduce:<solver>"
                ))
            })?;
            let solver: Solver = solver_name.parse()?;
            let problem = inst.assignment_problem()?;
            let r = reduce_and_solve(&problem, &inst.profile, inst.distances()?, solver)?;
            report.outcome = OutcomeRecord::Assignment(names(&r.assignment, &inst.facilities));
            report.solver = Some(r.solver.name().into());
            report.beta = Some(r.beta);
            report.projected_cost = Some(r.projected_cost);
            report.guarantees.push(guarantee(
                problem.cost.distance.name(),
                r.guarantee,
                "1 + 2 beta reduction",
            ));
            if audit {
                match audit_assignment(&inst, &r.assignment, &args.sampling) {
                    Ok(a) => report.audits.push(a),
                    Err(Failure::Input(msg)) => eprintln!("warning: audit skipped: {msg}"),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    emit(&serialize_report(&report), args.out.as_deref())
}

fn parse_outcome(inst: &Instance, text: &str) -> Result<Vec<Facility>, Failure> {
    text.split(',')
        .map(|name| inst.facility(name.trim()).map_err(Failure::from))
        .collect()
}

fn audit(args: AuditArgs) -> Outcome {
    let inst = read_instance(&args.instance)?;
    let outcome = parse_outcome(&inst, &args.outcome)?;
    let objective = args.objective.as_deref().map(str::parse::<Objective>).transpose()?;
    let (record, outcome_record) = if outcome.len() == 1 && inst.num_agents() != 1 || is_social_choice(&inst) {
        if outcome.len() != 1 {
            return Err(Failure::Input("social choice outcomes name a single facility".into()));
        }
        let w = outcome[0];
        let rec = audit_winner(&inst, w, objective.unwrap_or(Objective::Sum), &args.sampling)?;
        (rec, OutcomeRecord::Winner(inst.facilities.name(w).into()))
    } else {
        let x = Assignment(outcome);
        if x.len() != inst.num_agents() {
            return Err(Failure::Input(format!(
                "outcome names {} facilities for {} agents",
                x.len(),
                inst.num_agents()
            )));
        }
        let problem = inst.assignment_problem()?;
        let expected = match problem.cost.distance {
            DistanceCost::Sum => Objective::Sum,
            DistanceCost::Max => Objective::Percentile(1.0),
        };
        if objective.is_some_and(|o| o != expected) {
            return Err(Failure::Input(format!(
                "assignment audits use the problem's own cost, {}",
                expected.name()
            )));
        }
        let rec = audit_assignment(&inst, &x, &args.sampling)?;
        (rec, OutcomeRecord::Assignment(names(&x, &inst.facilities)))
    };
    let report = ReportFile {
        instance_digest: instance_digest(&inst.to_file()),
        command: "audit".into(),
        mechanism: None,
        outcome: outcome_record,
        solver: None,
        beta: None,
        guarantees: Vec::new(),
        projected_cost: None,
        audits: vec![record],
    };
    emit(&serialize_report(&report), args.out.as_deref())
}

fn is_social_choice(inst: &Instance) -> bool {
    matches!(
        inst.problem,
        ProblemSpec::SocialChoiceSum | ProblemSpec::SocialChoiceMedian
    )
}

fn parse_preset(text: &str, m: usize) -> Result<ProblemSpec, Failure> {
    let (name, arg) = match text.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (text, None),
    };
    let k = || -> Result<usize, Failure> {
        arg.ok_or_else(|| Failure::Input(format!("preset `{name}` needs :k")))?
            .parse()
            .map_err(|_| Failure::Input(format!("bad k in `{text}`")))
    };
    Ok(match name {
        "social_choice_sum" => ProblemSpec::SocialChoiceSum,
        "social_choice_median" => ProblemSpec::SocialChoiceMedian,
        "matching_min_cost" => ProblemSpec::MatchingMinCost,
        "matching_egalitarian" => ProblemSpec::MatchingEgalitarian,
        "k_center" => ProblemSpec::KCenter { k: k()? },
        "k_median" => ProblemSpec::KMedian { k: k()? },
        "facility_location" => ProblemSpec::FacilityLocation {
            opening_costs: match arg {
                Some(list) => list
                    .split('/')
                    .map(|v| {
                        v.parse::<f64>()
                            .map_err(|_| Failure::Input(format!("bad opening cost `{v}`")))
                    })
                    .collect::<Result<_, _>>()?,
                None => vec![1.0; m],
            },
        },
        other => {
            return Err(Failure::Input(format!(
                "unknown preset `{other}` for generated instances"
            )));
        }
    })
}

fn gen(args: GenArgs) -> Outcome {
    let file = if let Some(name) = &args.example {
        let name: ConstructionName = name.parse()?;
        let params = Params::default().parse_overrides(args.params.as_deref().unwrap_or(""))?;
        let c = generate::<f64>(name, params)?;
        let mut inst = Instance::from_construction(&c);
        inst.source = Some(format!(
            "{name} q={} eps={} L={}",
            params.q, params.epsilon, params.big_l
        ));
        inst.to_file()
    } else if args.random {
        let (n, m, seed) = (
            args.agents.unwrap_or_default(),
            args.facilities.unwrap_or_default(),
            args.seed.unwrap_or_default(),
        );
        if n == 0 || m == 0 {
            return Err(Failure::Input(
                "random instances need at least one agent and one facility".into(),
            ));
        }
        let geometry = match args.geometry {
            GeometryArg::Euclidean => Geometry::Euclidean,
            GeometryArg::Grid => Geometry::Grid { side: 10 },
        };
        let kind = match args.profile {
            ProfileArg::Located => ProfileKind::Located,
            ProfileArg::Uniform => ProfileKind::Uniform,
            ProfileArg::TopOnly => ProfileKind::TopOnly,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = random_instance::<f64, _>(&mut rng, n, m, geometry, kind)?;
        let inst = Instance {
            facilities: FacilitySet::numbered(m),
            l: Some(r.l),
            candidate_rankings: None,
            profile: r.profile,
            problem: parse_preset(&args.preset, m)?,
            metric: r.metric,
            source: Some(format!("random n={n} m={m} seed={seed}")),
        };
        let file = inst.to_file();
        // reject presets that do not fit the drawn shape
        file.validate()?;
        file
    } else {
        return Err(Failure::Input("gen needs --example <name> or --random".into()));
    };
    emit(&serialize_instance(&file), args.out.as_deref())
}

fn repro(args: ReproArgs) -> Outcome {
    let checks = if let Some(name) = &args.example {
        let name: ConstructionName = name.parse()?;
        let params = documented_params(name).parse_overrides(args.params.as_deref().unwrap_or(""))?;
        run_example(name, params)?
    } else if args.all {
        run_all()
    } else {
        return Err(Failure::Input("repro needs --all or --example <name>".into()));
    };
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    println!("{} checks, {failed} failed", checks.len());
    if failed > 0 {
        return Err(Failure::Assertion(format!(
            "{failed} documented numbers did not reproduce"
        )));
    }
    Ok(())
}
