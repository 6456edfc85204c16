use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use descoord::automata::{
    format_word, language_equal, prefix_closure, project, sync_product, trim, Alphabet, EventSet, Generator,
    LanguageView, ProjectionSpec,
};
use descoord::coordination::{
    build_coordinator, extend_alphabet_for_cd, extend_alphabet_for_observer, is_conditionally_closed,
    is_conditionally_controllable, is_conditionally_decomposable, is_conditionally_normal, is_conditionally_observable,
    parse_event_set, synthesize, CoordinationProblem, Observation,
};
use descoord::io::{parse_generator, report_to_json, report_to_text, serialize_generator};
use descoord::props::{self, PropertyVerdict};
use descoord::synthesis::{sup_c, sup_cn, SynthesisInput};
use descoord::Error;

#[derive(Parser)]
#[command(name = "descoord", version, about = "Coordination control synthesis for discrete-event systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(clap::Args)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ProblemArgs {
    #[arg(long)]
    g1: PathBuf,
    #[arg(long)]
    g2: PathBuf,
    #[arg(long)]
    spec: PathBuf,
    /// Coordinator events, comma separated.
    #[arg(long = "sigma-k")]
    sigma_k: String,
    /// Hide events flagged unobservable from the supervisors.
    #[arg(long)]
    partial: bool,
}

#[derive(clap::Args)]
struct PairArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    plant: PathBuf,
    /// Observed events, comma separated; defaults to the observable flags.
    #[arg(long)]
    observe: Option<String>,
}

#[derive(clap::Args)]
struct ProjArgs {
    generator: PathBuf,
    /// Target events, comma separated.
    #[arg(long)]
    events: String,
}

#[derive(Subcommand)]
enum Command {
    /// Synchronous product of two generators.
    Product {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Natural projection onto a set of events.
    Project {
        #[command(flatten)]
        proj: ProjArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Remove states that are unreachable or cannot reach a marked state.
    Trim {
        generator: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Prefix closure of the marked language.
    Closure {
        generator: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Decide a language property; exit code 1 when it fails.
    Check {
        #[command(subcommand)]
        property: Property,
        #[arg(long, value_enum, default_value_t, global = true)]
        format: Format,
    },
    /// Supremal controllable sublanguage.
    Supc {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        plant: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Supremal controllable and normal sublanguage.
    Supcn {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Build the coordinator Pk(G1) || Pk(G2).
    Coordinator {
        #[arg(long)]
        g1: PathBuf,
        #[arg(long)]
        g2: PathBuf,
        #[arg(long = "sigma-k")]
        sigma_k: String,
        #[command(flatten)]
        out: Output,
    },
    /// Conditional decomposability of the specification and its closure.
    CdCheck {
        #[arg(long)]
        g1: PathBuf,
        #[arg(long)]
        g2: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long = "sigma-k")]
        sigma_k: String,
    },
    /// Greedily extend a coordinator alphabet.
    ExtendAlphabet {
        #[arg(long)]
        g1: PathBuf,
        #[arg(long)]
        g2: PathBuf,
        /// Needed when extending for decomposability.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long = "sigma-k", default_value = "")]
        sigma_k: String,
        #[arg(long = "for", value_enum, default_value = "cd")]
        goal: Goal,
    },
    /// Run the coordination synthesis pipeline.
    Synthesize {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
    /// List the generated words up to a length, marked ones flagged with `*`.
    Enumerate {
        generator: PathBuf,
        #[arg(long = "max-len", default_value_t = 4)]
        max_len: usize,
    },
    /// Compare the generated and marked languages of two generators.
    Eq { a: PathBuf, b: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Goal {
    Cd,
    Observer,
}

#[derive(Subcommand)]
enum Property {
    Controllable {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        plant: PathBuf,
    },
    Observable(PairArgs),
    RelativelyObservable {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        context: PathBuf,
    },
    Normal(PairArgs),
    LmClosed {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        plant: PathBuf,
    },
    Nonconflicting {
        a: PathBuf,
        b: PathBuf,
    },
    Nonblocking {
        generator: PathBuf,
    },
    Observer(ProjArgs),
    Occ(ProjArgs),
    Lcc(ProjArgs),
    CondControllable(ProblemArgs),
    CondObservable(ProblemArgs),
    CondNormal(ProblemArgs),
    CondClosed(ProblemArgs),
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult<T> = Result<T, Failure>;

fn load(path: &Path) -> CliResult<Generator> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_generator(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn events(text: &str, within: &Alphabet) -> CliResult<EventSet> {
    let set = parse_event_set(text);
    within.check_known(&set)?;
    Ok(set)
}

fn emit(text: &str, out: &Output) -> CliResult<()> {
    match &out.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_generator(g: &Generator, out: &Output) -> CliResult<ExitCode> {
    emit(&serialize_generator(g), out)?;
    Ok(ExitCode::SUCCESS)
}

fn verdict_exit(v: &PropertyVerdict, format: Format) -> ExitCode {
    match format {
        Format::Text => println!("{v}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(v).expect("verdict serializes")),
    }
    if v.holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn observation_projection(pair: &PairArgs, alphabet: &Alphabet) -> CliResult<ProjectionSpec> {
    Ok(match &pair.observe {
        Some(list) => ProjectionSpec::new(alphabet.clone(), events(list, alphabet)?)?,
        None => ProjectionSpec::observation(alphabet),
    })
}

fn problem(args: &ProblemArgs) -> CliResult<CoordinationProblem> {
    let (g1, g2, spec) = (load(&args.g1)?, load(&args.g2)?, load(&args.spec)?);
    let sigma_k = events(&args.sigma_k, &g1.alphabet().union(g2.alphabet())?)?;
    let observation = if args.partial { Observation::Partial } else { Observation::Full };
    Ok(CoordinationProblem::new(g1, g2, spec, sigma_k, observation)?)
}

fn conditional(
    args: &ProblemArgs,
    check: fn(&CoordinationProblem, &Generator) -> descoord::Result<PropertyVerdict>,
) -> CliResult<PropertyVerdict> {
    let p = problem(args)?;
    let gk = build_coordinator(p.g1(), p.g2(), p.sigma_k())?;
    Ok(check(&p, &gk)?)
}

fn projection_args(args: &ProjArgs) -> CliResult<(ProjectionSpec, Generator)> {
    let g = load(&args.generator)?;
    let p = ProjectionSpec::new(g.alphabet().clone(), events(&args.events, g.alphabet())?)?;
    Ok((p, g))
}

fn check(property: &Property) -> CliResult<PropertyVerdict> {
    Ok(match property {
        Property::Controllable { spec, plant } => props::is_controllable(&load(spec)?, &load(plant)?)?,
        Property::Observable(pair) => {
            let (k, l) = (load(&pair.spec)?, load(&pair.plant)?);
            props::is_observable_under(&k, &l, &observation_projection(pair, k.alphabet())?)?
        }
        Property::RelativelyObservable { pair, context } => {
            let (k, l, c) = (load(&pair.spec)?, load(&pair.plant)?, load(context)?);
            props::is_relatively_observable_under(&k, &c, &l, &observation_projection(pair, k.alphabet())?)?
        }
        Property::Normal(pair) => {
            let (k, l) = (load(&pair.spec)?, load(&pair.plant)?);
            props::is_normal_under(&k, &l, &observation_projection(pair, k.alphabet())?)?
        }
        Property::LmClosed { spec, plant } => props::is_lm_closed(&load(spec)?, &load(plant)?)?,
        Property::Nonconflicting { a, b } => props::is_sync_nonconflicting(&load(a)?, &load(b)?)?,
        Property::Nonblocking { generator } => {
            let g = load(generator)?;
            let closed = prefix_closure(&g);
            let reach = descoord::automata::accessible(&g).with_all_marked();
            let w = descoord::automata::inclusion_counterexample(&reach, &closed, LanguageView::Generated)?;
            PropertyVerdict::from_witness(w.map(|word| props::Witness::Word { word }))
        }
        Property::Observer(args) => {
            let (p, g) = projection_args(args)?;
            props::is_observer(&p, &g)?
        }
        Property::Occ(args) => {
            let (p, g) = projection_args(args)?;
            props::is_occ(&p, &g)?
        }
        Property::Lcc(args) => {
            let (p, g) = projection_args(args)?;
            props::is_lcc(&p, &g)?
        }
        Property::CondControllable(a) => conditional(a, is_conditionally_controllable)?,
        Property::CondObservable(a) => conditional(a, is_conditionally_observable)?,
        Property::CondNormal(a) => conditional(a, is_conditionally_normal)?,
        Property::CondClosed(a) => conditional(a, is_conditionally_closed)?,
    })
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Product { a, b, out } => emit_generator(&sync_product(&load(&a)?, &load(&b)?)?, &out),
        Command::Project { proj, out } => {
            let (p, g) = projection_args(&proj)?;
            emit_generator(&project(&g, &p)?, &out)
        }
        Command::Trim { generator, out } => emit_generator(&trim(&load(&generator)?), &out),
        Command::Closure { generator, out } => emit_generator(&prefix_closure(&load(&generator)?), &out),
        Command::Check { property, format } => Ok(verdict_exit(&check(&property)?, format)),
        Command::Supc { spec, plant, out } => {
            emit_generator(&sup_c(&SynthesisInput::new(load(&spec)?, load(&plant)?))?, &out)
        }
        Command::Supcn { pair, out } => {
            let (k, l) = (load(&pair.spec)?, load(&pair.plant)?);
            let p = observation_projection(&pair, l.alphabet())?;
            emit_generator(&sup_cn(&SynthesisInput::new(k, l).with_projection(p))?, &out)
        }
        Command::Coordinator { g1, g2, sigma_k, out } => {
            let (g1, g2) = (load(&g1)?, load(&g2)?);
            let sk = events(&sigma_k, &g1.alphabet().union(g2.alphabet())?)?;
            emit_generator(&build_coordinator(&g1, &g2, &sk)?, &out)
        }
        Command::CdCheck { g1, g2, spec, sigma_k } => {
            let (g1, g2, k) = (load(&g1)?, load(&g2)?, load(&spec)?);
            let sk = events(&sigma_k, k.alphabet())?;
            let (s1, s2) = (g1.alphabet().event_set(), g2.alphabet().event_set());
            let marked = is_conditionally_decomposable(&k, &s1, &s2, &sk)?;
            let closed = is_conditionally_decomposable(&prefix_closure(&k), &s1, &s2, &sk)?;
            println!("marked: {marked}");
            println!("closure: {closed}");
            Ok(if marked.holds && closed.holds { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::ExtendAlphabet { g1, g2, spec, sigma_k, goal } => {
            let (g1, g2) = (load(&g1)?, load(&g2)?);
            let sk = events(&sigma_k, &g1.alphabet().union(g2.alphabet())?)?;
            let extended = match goal {
                Goal::Cd => {
                    let spec = spec.ok_or_else(|| Failure::Usage("--spec is required with --for cd".into()))?;
                    let k = load(&spec)?;
                    extend_alphabet_for_cd(&k, &g1.alphabet().event_set(), &g2.alphabet().event_set(), &sk)?
                }
                Goal::Observer => extend_alphabet_for_observer(&g1, &g2, &sk)?,
            };
            println!("{}", extended.iter().map(|e| e.as_str()).collect::<Vec<_>>().join(","));
            Ok(ExitCode::SUCCESS)
        }
        Command::Synthesize { problem: args, format, out } => {
            let report = synthesize(&problem(&args)?)?;
            let text = match format {
                Format::Text => report_to_text(&report),
                Format::Json => report_to_json(&report) + "\n",
            };
            emit(&text, &out)?;
            Ok(if report.result.is_some() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Enumerate { generator, max_len } => {
            for (w, marked) in load(&generator)?.enumerate_bounded(max_len) {
                println!("{}{}", format_word(&w), if marked { " *" } else { "" });
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Eq { a, b } => {
            let rel = language_equal(&load(&a)?, &load(&b)?)?;
            println!("generated: {}", if rel.generated { "equal" } else { "different" });
            println!("marked: {}", if rel.marked { "equal" } else { "different" });
            Ok(if rel.both() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::NotConditionallyDecomposable { .. } | Error::NonconflictCheckFailed(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
