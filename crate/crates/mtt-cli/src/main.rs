use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mtt_core::algebra::literal::parse_ring;
use mtt_core::determinant::{tau_det_with, DEFAULT_SIZE_CAP};
use mtt_core::forests::{
    class_orbit_size, classify_forest, enumerate_forests, rhs_mtkz, rhs_sym,
};
use mtt_core::graph::load_instance;
use mtt_core::harness::{
    default_campaign, load_simplicial_instance, run_campaign, CampaignConfig, InstanceSource,
    Preset, TheoremId,
};
use mtt_core::lift::{lift_instance, rhs_mtkzn, rhs_mttnall};
use mtt_core::simplicial::rhs_cw;
use mtt_core::{Error, Ring};

/// Exact verification of holonomy-twisted matrix-forest identities.
#[derive(Parser)]
#[command(name = "mtt", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SourceArgs {
    /// Instance document path.
    #[arg(long, conflicts_with = "random")]
    instance: Option<String>,
    /// Generate random instances instead of reading a file.
    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long)]
    m: Option<usize>,
    /// Fiber dimension N (matrix holonomies) or simplicial degree d.
    #[arg(long)]
    fiber: Option<usize>,
    /// One of rational|gaussian|quaternion|group_ring:k|matrix:N:<base>.
    #[arg(long, default_value = "rational")]
    ring: String,
    /// One of kirchhoff|forman|chaiken:k|zaslavsky|kenyon.
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a theorem on one or more instances.
    Verify {
        #[arg(long)]
        theorem: String,
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Include timings in text output.
        #[arg(long)]
        timings: bool,
        /// Lift the determinant size guardrail.
        #[arg(long)]
        force_large: bool,
    },
    /// Run the full default grid over every theorem.
    Campaign {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the τ-determinant of a principal minor of the Laplacian.
    Det {
        #[arg(long)]
        instance: String,
        /// Minor size; defaults to the inner vertex count.
        #[arg(long)]
        minor: Option<usize>,
        #[arg(long)]
        force_large: bool,
    },
    /// Enumerate cycle-and-well-rooted spanning forests.
    Forests {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Print one representative per symmetry class with orbit sizes.
        #[arg(long)]
        classes: bool,
    },
    /// Print the forest-sum side of a theorem for an instance file.
    Expand {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        instance: String,
    },
}

fn det_cap(force_large: bool) -> usize {
    if force_large {
        return 20;
    }
    std::env::var("MTT_DET_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SIZE_CAP)
}

fn read_file(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidConfig(format!("{path}: {e}")))
}

fn source_to_config(theorem: TheoremId, s: &SourceArgs) -> Result<InstanceSource, Error> {
    if let Some(path) = &s.instance {
        return Ok(InstanceSource::Document(read_file(path)?));
    }
    let ring: Ring = parse_ring(&s.ring)?;
    let preset = s.preset.as_deref().map(Preset::parse).transpose()?;
    let m = s.m.unwrap_or_else(|| match theorem {
        TheoremId::Cw => 1,
        _ => s.n.saturating_sub(1).max(1),
    });
    Ok(InstanceSource::Random {
        seed: s.seed,
        n: s.n,
        m,
        fiber: s.fiber,
        ring,
        preset,
    })
}

fn run() -> Result<bool, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            theorem,
            source,
            trials,
            format,
            timings,
            force_large,
        } => {
            let theorem = TheoremId::parse(&theorem)?;
            let config = CampaignConfig {
                theorem,
                source: source_to_config(theorem, &source)?,
                trials,
                det_cap: det_cap(force_large),
            };
            let reports = run_campaign(&config)?;
            print_reports(&reports, format, timings);
            Ok(reports.iter().all(|r| r.equal))
        }
        Command::Campaign { seed, format } => {
            let reports = default_campaign(seed, det_cap(false))?;
            print_reports(&reports, format, false);
            Ok(reports.iter().all(|r| r.equal))
        }
        Command::Det {
            instance,
            minor,
            force_large,
        } => {
            let doc = read_file(&instance)?;
            let inst = load_instance(&doc)?;
            let (matrix, trace, name): (_, _, Box<dyn Fn(u32) -> String>) =
                if inst.fiber().is_ok() {
                    let lifted = lift_instance(inst)?;
                    let base = lifted.base.clone();
                    (
                        lifted.build_laplacian()?,
                        lifted.base.trace.clone(),
                        Box::new(move |v| base.var_name(v)),
                    )
                } else {
                    let base = inst.clone();
                    (
                        inst.build_laplacian()?,
                        inst.trace.clone(),
                        Box::new(move |v| base.var_name(v)),
                    )
                };
            let k = minor.unwrap_or(matrix.size);
            let matrix = matrix.principal_submatrix(k)?;
            let det = tau_det_with(&matrix, &trace, det_cap(force_large))?;
            println!("{}", det.render(&name));
            Ok(true)
        }
        Command::Forests { n, m, classes } => {
            let forests = enumerate_forests(n, m)?;
            for f in &forests {
                let decomp = classify_forest(f, m);
                if classes {
                    let representative = decomp
                        .cycles
                        .iter()
                        .all(|c| c.len() <= 2 || c[1] < c[c.len() - 1]);
                    if !representative {
                        continue;
                    }
                }
                let edges: Vec<String> = (0..m)
                    .map(|i| format!("{}→{}", i + 1, f.out[i] + 1))
                    .collect();
                let cycles: Vec<String> = decomp
                    .cycles
                    .iter()
                    .map(|c| {
                        let verts: Vec<String> =
                            c.iter().map(|&x| (x + 1).to_string()).collect();
                        format!("({})", verts.join(" "))
                    })
                    .collect();
                let mut line = format!(
                    "{} cycles: {}",
                    edges.join(" "),
                    if cycles.is_empty() {
                        "none".to_string()
                    } else {
                        cycles.join(" ")
                    }
                );
                if classes {
                    line.push_str(&format!(" orbit: {}", class_orbit_size(&decomp)));
                }
                println!("{line}");
            }
            println!("total: {}", forests.len());
            Ok(true)
        }
        Command::Expand { theorem, instance } => {
            let theorem = TheoremId::parse(&theorem)?;
            let doc = read_file(&instance)?;
            let (poly, name): (_, Box<dyn Fn(u32) -> String>) = match theorem {
                TheoremId::Mtkz => {
                    let inst = load_instance(&doc)?;
                    let i = inst.clone();
                    (rhs_mtkz(&inst)?, Box::new(move |v| i.var_name(v)))
                }
                TheoremId::Sym => {
                    let inst = load_instance(&doc)?;
                    let i = inst.clone();
                    (rhs_sym(&inst)?, Box::new(move |v| i.var_name(v)))
                }
                TheoremId::Mtkzn => {
                    let lifted = lift_instance(load_instance(&doc)?)?;
                    let b = lifted.base.clone();
                    (rhs_mtkzn(&lifted)?, Box::new(move |v| b.var_name(v)))
                }
                TheoremId::Mttnall => {
                    let lifted = lift_instance(load_instance(&doc)?)?;
                    let b = lifted.base.clone();
                    (rhs_mttnall(&lifted)?, Box::new(move |v| b.var_name(v)))
                }
                TheoremId::Cw => {
                    let inst = load_simplicial_instance(&doc)?;
                    let i = inst.clone();
                    (rhs_cw(&inst)?, Box::new(move |v| i.var_name(v)))
                }
                _ => {
                    return Err(Error::InvalidConfig(
                        "expand supports mtkz|sym|mtkzn|mttnall|cw".into(),
                    ))
                }
            };
            println!("{}", poly.render(&name));
            Ok(true)
        }
    }
}

fn print_reports(reports: &[mtt_core::VerificationReport], format: Format, timings: bool) {
    match format {
        Format::Text => {
            for r in reports {
                print!("{}", r.render_text(timings));
            }
        }
        Format::Json => {
            let docs: Vec<String> = reports.iter().map(|r| r.render_structured()).collect();
            println!("[{}]", docs.join(",\n"));
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
