use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand};
use locale_core::harness::{
    catalog_entry, load_instance, run_analysis, run_theorem_suite, AnalysisOptions, Instance,
    SuiteSource, EXIT_INCONSISTENT, EXIT_INPUT, EXIT_OK,
};
use locale_core::{cross_check, CheckOptions, Locale, PropertyId, SetMode, DEFAULT_ENUM_CAP};

#[derive(Parser)]
#[command(
    name = "unicoh",
    version,
    about = "Unicoherence checks for finite locales"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate properties, relations and lemmas on one instance.
    Analyze {
        /// Instance file, or `catalog:NAME` for a built-in fixture.
        file: String,
        /// Comma-separated property ids (I+, I, I', II, ..., X, N, N+).
        #[arg(long, value_delimiter = ',')]
        properties: Option<Vec<PropertyId>>,
        /// Largest frame whose sublocale lattice is enumerated.
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        max_enum: usize,
        /// Read `X, Y ⊆ L` in properties I and N as arbitrary element subsets.
        #[arg(long)]
        subsets: bool,
        /// Skip the lemma suite.
        #[arg(long)]
        no_lemmas: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run every check over a population of instances.
    #[command(group(ArgGroup::new("source").required(true).args(["catalog", "dir", "generate_points"])))]
    Theorems {
        #[arg(long)]
        catalog: bool,
        #[arg(long)]
        dir: Option<PathBuf>,
        /// All labelled topologies on exactly K points (K ≤ 4).
        #[arg(long, value_name = "K", value_parser = clap::value_parser!(u8).range(0..=4))]
        generate_points: Option<u8>,
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        max_enum: usize,
        #[arg(long)]
        no_lemmas: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compare classical and localic unicoherence on a space.
    Compare {
        space_file: String,
        #[arg(long)]
        json: bool,
    },
    /// Components of the open sublocale o(U).
    Components {
        frame_file: String,
        /// Element index or label.
        #[arg(long)]
        element: String,
        #[arg(long)]
        json: bool,
    },
}

fn load(arg: &str) -> Result<Instance, String> {
    if let Some(name) = arg.strip_prefix("catalog:") {
        let entry = catalog_entry(name).ok_or_else(|| format!("no catalog entry {name:?}"))?;
        return entry.file.build(entry.name).map_err(|e| e.to_string());
    }
    load_instance(&PathBuf::from(arg)).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Analyze {
            file,
            properties,
            max_enum,
            subsets,
            no_lemmas,
            json,
        } => {
            let instance = load(&file)?;
            let set_mode = if subsets {
                SetMode::Subsets
            } else {
                SetMode::Sublocales
            };
            let options = AnalysisOptions {
                properties,
                max_enum,
                check: CheckOptions { set_mode },
                lemmas: !no_lemmas,
            };
            let started = Instant::now();
            let report = run_analysis(&instance, &options);
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            eprintln!("analyzed in {:.3}s", started.elapsed().as_secs_f64());
            Ok(report.exit_code())
        }
        Command::Theorems {
            catalog,
            dir,
            generate_points,
            max_enum,
            no_lemmas,
            json,
        } => {
            let source = match (catalog, dir, generate_points) {
                (true, _, _) => SuiteSource::Catalog,
                (_, Some(d), _) => SuiteSource::Dir(d),
                (_, _, Some(k)) => SuiteSource::Generate(usize::from(k)),
                _ => unreachable!("clap requires a source"),
            };
            let options = AnalysisOptions {
                max_enum,
                lemmas: !no_lemmas,
                ..AnalysisOptions::default()
            };
            let started = Instant::now();
            let summary = run_theorem_suite(&source, &options).map_err(|e| e.to_string())?;
            if json {
                println!("{}", summary.to_json());
            } else {
                print!("{}", summary.to_text());
            }
            eprintln!("suite finished in {:.3}s", started.elapsed().as_secs_f64());
            Ok(summary.exit_code())
        }
        Command::Compare { space_file, json } => {
            let instance = load(&space_file)?;
            let space = instance
                .space
                .as_ref()
                .ok_or("compare needs a space file")?;
            let check = cross_check(space).map_err(|e| e.to_string())?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&check).expect("serializes")
                );
            } else {
                let witness = check
                    .classical
                    .witness
                    .map(|(h, k)| {
                        format!(
                            " (H = {}, K = {})",
                            space.format_set(h),
                            space.format_set(k)
                        )
                    })
                    .unwrap_or_default();
                println!(
                    "classical unicoherent: {}{witness}",
                    check.classical.unicoherent
                );
                println!("localic unicoherent:   {}", check.localic_unicoherent);
                println!("closed sets compared:  {}", check.closed_sets_checked);
                for d in &check.disagreements {
                    println!("DISAGREEMENT {d}");
                }
                println!("{}", if check.agrees() { "agree" } else { "DISAGREE" });
            }
            Ok(if check.agrees() {
                EXIT_OK
            } else {
                EXIT_INCONSISTENT
            })
        }
        Command::Components {
            frame_file,
            element,
            json,
        } => {
            let instance = load(&frame_file)?;
            let frame = &instance.frame;
            let u = frame
                .element_by_label(&element)
                .or_else(|| {
                    element
                        .parse::<usize>()
                        .ok()
                        .filter(|&i| i < frame.len())
                        .map(locale_core::ElementId)
                })
                .ok_or_else(|| format!("no element {element:?}"))?;
            let locale = Locale::new(frame.clone());
            let comps = locale.components_of(u).map_err(|e| e.to_string())?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&comps).expect("serializes")
                );
            } else {
                println!(
                    "o({}) has {} component(s)",
                    frame.label(u),
                    comps.components.len()
                );
                for c in &comps.components {
                    let top = frame.top().index();
                    let members: Vec<String> = c
                        .members()
                        .iter()
                        .filter(|&i| i != top)
                        .map(|i| frame.label(locale_core::ElementId(i)))
                        .collect();
                    match locale.as_open(*c) {
                        Some(v) => println!("  o({}) = [{}]", frame.label(v), members.join(", ")),
                        None => println!("  [{}]", members.join(", ")),
                    }
                }
            }
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    };
    ExitCode::from(u8::try_from(code).unwrap_or(1))
}
