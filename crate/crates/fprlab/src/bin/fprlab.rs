//! Command-line front end: parse a `group@action` spec, run an analysis, and
//! emit a versioned JSON (or CSV) report.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fprlab::bases::{base_size_exact, bounds_check, qhat, random_base_prob};
use fprlab::classes::class_table;
use fprlab::config::RunConfig;
use fprlab::error::{Error, Result};
use fprlab::fpr::{check_43q, fpr_report, rational_str};
use fprlab::genspread::{build_graph, graph_stats, posa_check, prob_gen2, spread_exact, uspread_certify};
use fprlab::genus::{genus_of, genus_screen, ind, min_index_table};
use fprlab::parse::realize_spec_text;
use fprlab::perm::Permutation;
use fprlab::report;
use fprlab::reproduce::reproduce;

#[derive(Parser)]
#[command(name = "fprlab", version, about = "Exact fixed point ratios for finite group actions, with spread, genus and base-size analysis")]
struct Cli {
    /// Master seed for all randomized components (env: FPRLAB_SEED).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Configuration file (key=value lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Node budget for branch-and-bound searches.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Conjugacy class table of the realized action group.
    Classes { spec: String },
    /// Fixed point ratio table with minimal degree, fixity and derangements.
    Fpr {
        spec: String,
        /// Also render 15-digit decimal approximations.
        #[arg(long)]
        float: bool,
        /// Check the 4/(3q) bound against this field size.
        #[arg(long)]
        check_q: Option<u64>,
    },
    /// Minimal degree, fixity and involution fixity only.
    Mu { spec: String },
    /// Generating graph statistics.
    Graph {
        spec: String,
        /// Also compute the chromatic number (potentially long-running).
        #[arg(long)]
        chromatic: bool,
    },
    /// Exact spread and uniform spread.
    Spread { spec: String },
    /// Uniform-spread certificate from fpr sums over maximal overgroups.
    Uspread {
        spec: String,
        /// The candidate mate element, in cycle notation on the realized points.
        #[arg(long)]
        y: String,
        #[arg(long)]
        k: usize,
        /// File of caller-supplied overgroups (one per line: comma-separated
        /// generators in cycle notation); the certificate is then conditional.
        #[arg(long)]
        overgroups: Option<PathBuf>,
    },
    /// Exact probability that two random elements generate.
    Pgen2 { spec: String },
    /// Candidate branching signatures at the target genus.
    GenusScreen {
        spec: String,
        #[arg(long)]
        g: i64,
        /// Apply the 85/42 lower bound (valid for insoluble groups other
        /// than the order-60 alternating group; asserted by the caller).
        #[arg(long)]
        insoluble_filter: bool,
        #[arg(long, default_value_t = 8)]
        kmax: usize,
    },
    /// Genus of a product-one tuple read from a file (one permutation per line).
    GenusOf {
        spec: String,
        #[arg(long)]
        tuple: PathBuf,
    },
    /// Minimal permutation index per element order.
    IndTable { spec: String },
    /// Base size: exact search, Q̂ certificate, or Monte-Carlo estimate.
    Base {
        spec: String,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        qhat: bool,
        #[arg(long)]
        prob: bool,
        #[arg(long)]
        c: Option<u32>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Recompute the stored expectation tables and diff.
    Reproduce {
        #[arg(long)]
        which: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load_file(path)?,
        None => RunConfig::default(),
    };
    if let Ok(env_seed) = std::env::var("FPRLAB_SEED") {
        cfg.seed = env_seed
            .parse()
            .map_err(|_| Error::Parse(format!("FPRLAB_SEED: bad integer {env_seed:?}")))?;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(budget) = cli.budget {
        cfg.budget = budget;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = load_config(&cli)?;
    let format = cli.format;
    match cli.command {
        Command::Classes { spec } => {
            let r = realize_spec_text(&spec, &cfg)?;
            let table = class_table(&r.group, cfg.class_cap)?;
            let out = report::classes_out(&r.name, r.degree(), &table);
            match format {
                Format::Json => println!("{}", report::to_json(cfg.seed, "classes", out)),
                Format::Csv => print!("{}", report::classes_csv(&out)?),
            }
        }
        Command::Fpr { spec, float, check_q } => {
            let r = realize_spec_text(&spec, &cfg)?;
            let table = class_table(&r.group, cfg.class_cap)?;
            let rep = fpr_report(&r.name, r.degree(), &table)?;
            let mut out = report::fpr_out(&r.name, &spec, &rep, float);
            if let Some(q) = check_q.or(r.q) {
                let b = check_43q(&rep, q);
                out.max_fpr = format!(
                    "{} ({} 4/{})",
                    rational_str(&b.max_fpr),
                    if b.pass { "<=" } else { ">" },
                    3 * q
                );
            }
            match format {
                Format::Json => println!("{}", report::to_json(cfg.seed, "fpr", out)),
                Format::Csv => print!("{}", report::fpr_csv(&out)?),
            }
        }
        Command::Mu { spec } => {
            let r = realize_spec_text(&spec, &cfg)?;
            let table = class_table(&r.group, cfg.class_cap)?;
            let rep = fpr_report(&r.name, r.degree(), &table)?;
            let out = report::fpr_out(&r.name, &spec, &rep, false);
            println!(
                "{}",
                report::to_json(
                    cfg.seed,
                    "mu",
                    serde_json::json!({
                        "group": out.group,
                        "degree": out.degree,
                        "mu": out.mu,
                        "fixity": out.fixity,
                        "involution_fixity": out.involution_fixity,
                        "no_involutions": out.no_involutions,
                        "derangement": out.derangement,
                    })
                )
            );
        }
        Command::Graph { spec, chromatic } => {
            let r = realize_spec_text(&spec, &cfg)?;
            let graph = build_graph(&r.group, cfg.graph_cap)?;
            let stats = graph_stats(&graph, cfg.budget);
            let posa = posa_check(&stats.degree_sequence);
            let mut out = report::to_json(
                cfg.seed,
                "graph",
                report::graph_out(&r.name, &stats, posa),
            );
            if chromatic {
                let chi = fprlab::genspread::chromatic_number(&graph.adjacency, cfg.budget);
                let mut v: serde_json::Value = serde_json::from_str(&out).unwrap();
                v["chromatic"] = serde_json::json!({
                    "lower": chi.lower, "upper": chi.upper, "exact": chi.exact
                });
                out = serde_json::to_string_pretty(&v).unwrap();
            }
            println!("{out}");
        }
        Command::Spread { spec } => {
            let r = realize_spec_text(&spec, &cfg)?;
            let cert = spread_exact(&r.group, cfg.spread_cap, cfg.budget)?;
            let out = report::spread_out(&r.name, &cert);
            println!("{}", report::to_json(cfg.seed, "spread", out));
        }
        Command::Uspread { spec, y, k, overgroups } => {
            let r = realize_spec_text(&spec, &cfg)?;
            let y = Permutation::from_cycles_str(&y, r.degree())?;
            let table = class_table(&r.group, cfg.class_cap)?;
            let supplied = match overgroups {
                None => None,
                Some(path) => {
                    let text = std::fs::read_to_string(path)?;
                    let mut groups = Vec::new();
                    for line in text.lines().filter(|l| !l.trim().is_empty()) {
                        let gens: Result<Vec<Permutation>> =
                            fprlab::parse::split_generator_list(line)?
                                .iter()
                                .map(|s| Permutation::from_cycles_str(s, r.degree()))
                                .collect();
                        groups.push(fprlab::group::PermGroup::new(r.degree(), gens?)?);
                    }
                    Some(groups)
                }
            };
            let cert = uspread_certify(
                &r.group,
                &y,
                k,
                &table,
                supplied,
                cfg.subgroup_order_cap,
                cfg.degree_cap,
                cfg.substream("chain"),
            )?;
            let out = report::uspread_out(&r.name, &cert);
            println!("{}", report::to_json(cfg.seed, "uspread", out));
        }
        Command::Pgen2 { spec } => {
            let r = realize_spec_text(&spec, &cfg)?;
            let p = prob_gen2(&r.group, cfg.graph_cap)?;
            println!(
                "{}",
                report::to_json(
                    cfg.seed,
                    "pgen2",
                    serde_json::json!({
                        "group": r.name,
                        "order": r.group.order().to_string(),
                        "p2": rational_str(&p),
                    })
                )
            );
        }
        Command::GenusScreen { spec, g, insoluble_filter, kmax } => {
            let r = realize_spec_text(&spec, &cfg)?;
            let table = class_table(&r.group, cfg.class_cap)?;
            let screen = genus_screen(&r.group, &table, g, insoluble_filter, kmax, 5_000_000, cfg.budget)?;
            let out = report::genus_screen_out(&r.name, &screen, insoluble_filter);
            println!("{}", report::to_json(cfg.seed, "genus-screen", out));
        }
        Command::GenusOf { spec, tuple } => {
            let r = realize_spec_text(&spec, &cfg)?;
            let text = std::fs::read_to_string(tuple)?;
            let perms: Result<Vec<Permutation>> = text
                .lines()
                .filter(|l| !l.trim().is_empty())
                .map(|l| Permutation::from_cycles_str(l.trim(), r.degree()))
                .collect();
            let perms = perms?;
            let genus = genus_of(&perms, &r.group)?;
            println!(
                "{}",
                report::to_json(
                    cfg.seed,
                    "genus-of",
                    serde_json::json!({
                        "group": r.name,
                        "indices": perms.iter().map(ind).collect::<Vec<_>>(),
                        "genus": genus,
                    })
                )
            );
        }
        Command::IndTable { spec } => {
            let r = realize_spec_text(&spec, &cfg)?;
            let table = class_table(&r.group, cfg.class_cap)?;
            let mt = min_index_table(&table, r.degree());
            let out = report::IndTableOut {
                group: r.name.clone(),
                degree: r.degree(),
                min_ind: mt,
            };
            println!("{}", report::to_json(cfg.seed, "ind-table", out));
        }
        Command::Base { spec, exact, qhat: want_qhat, prob, c, trials } => {
            let r = realize_spec_text(&spec, &cfg)?;
            let order = r.group.order();
            let default_mode = !exact && !want_qhat && !prob;
            let mut out;
            if exact || default_mode || want_qhat {
                let res = base_size_exact(&r.group, cfg.budget);
                out = report::base_out(&r.name, r.degree(), &order, &res);
                if r.transitive {
                    if let Some(b) = res.exact {
                        let table = class_table(&r.group, cfg.class_cap)?;
                        let rep = fpr_report(&r.name, r.degree(), &table)?;
                        let rec = bounds_check(r.degree(), &order, b, rep.mu);
                        out.bounds = Some(report::bounds_out(&rec));
                    }
                }
            } else {
                let res = fprlab::bases::BaseOutcome {
                    exact: None,
                    lower: 0,
                    upper: r.degree(),
                    witness: vec![],
                    nodes: 0,
                };
                out = report::base_out(&r.name, r.degree(), &order, &res);
            }
            if want_qhat {
                let cc = c.ok_or_else(|| Error::Parse("--qhat needs --c".into()))?;
                let table = class_table(&r.group, cfg.class_cap)?;
                let rep = fpr_report(&r.name, r.degree(), &table)?;
                let v = qhat(&rep, cc);
                out.qhat = Some(report::QhatOut {
                    c: cc,
                    value: rational_str(&v),
                    certifies: v < fprlab::fpr::ratio(1, 1),
                });
            }
            if prob {
                let cc = c.ok_or_else(|| Error::Parse("--prob needs --c".into()))? as usize;
                let est = random_base_prob(&r.group, cc, trials, cfg.substream("mc"));
                out.prob = Some(report::prob_out(&est));
            }
            println!("{}", report::to_json(cfg.seed, "base", out));
        }
        Command::Reproduce { which } => {
            let results = reproduce(which.as_deref(), &cfg)?;
            let mut failures = 0;
            for r in &results {
                println!("{}: {}", r.name, if r.pass { "PASS" } else { "FAIL" });
                for d in &r.details {
                    println!("  {d}");
                }
                if !r.pass {
                    failures += 1;
                }
            }
            if failures > 0 {
                eprintln!("{failures} table(s) mismatched");
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
