//! `cambrian`: finite Coxeter groups, the weak order, sortable elements, and
//! Cambrian lattices from the command line.
//!
//! Exit codes: 0 success, 1 user error, 2 verification failure.

mod export;
mod spec;

use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use cambrian::congruence::{cambrian_congruence, CongruencePartition, ForcingPoset};
use cambrian::projections::{pi_down, pi_up, theta_congruence};
use cambrian::sortable::coxeter_elements;
use cambrian::verify::verify_group;
use cambrian::{
    CoxeterElementContext, CoxeterMatrix, CoxeterSystem, Element, WeakOrderLattice, Word,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "cambrian",
    about = "Finite Coxeter groups, weak order, sortable elements, and Cambrian lattices",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct GroupArgs {
    /// Named group: A<n>, B<n>, D<n>, E6-E8, F4, H3, H4, I2(<m>)
    #[arg(value_name = "GROUP", conflicts_with = "matrix", required_unless_present = "matrix")]
    group: Option<String>,

    /// Coxeter matrix file, JSON {"rank": n, "m": [[...]]}
    #[arg(long, value_name = "PATH")]
    matrix: Option<PathBuf>,

    /// Largest group order the build will accept
    #[arg(long, value_name = "N", default_value_t = 20_000)]
    max_order: usize,

    /// Write output to a file instead of stdout
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CoxeterArg {
    /// Coxeter word, e.g. s0,s1,s2 (default: all generators ascending)
    #[arg(short = 'c', long = "coxeter-word", value_name = "WORD")]
    coxeter_word: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Fibers of the downward projection
    Projection,
    /// Union-find closure over the Cambrian generating pairs
    Closure,
}

#[derive(Subcommand)]
enum Cmd {
    /// Group facts: rank, order, reflections, Coxeter number
    Info(GroupArgs),

    /// List (or count) the sortable elements
    Sortables {
        #[command(flatten)]
        args: GroupArgs,
        #[command(flatten)]
        cox: CoxeterArg,
        /// Print only how many there are
        #[arg(long)]
        count: bool,
        /// Digit rendering (01|0) instead of s-names
        #[arg(long)]
        compact: bool,
    },

    /// The sorting word of an element
    SortingWord {
        #[command(flatten)]
        args: GroupArgs,
        #[command(flatten)]
        cox: CoxeterArg,
        /// The element, as a word (s1,s0 or compact digits)
        #[arg(short = 'w', long = "word", value_name = "WORD")]
        word: String,
        /// Digit rendering (01|0) instead of s-names
        #[arg(long)]
        compact: bool,
    },

    /// Project an element down to a sortable or up to an antisortable
    Project {
        #[command(flatten)]
        args: GroupArgs,
        #[command(flatten)]
        cox: CoxeterArg,
        /// The element, as a word
        #[arg(short = 'w', long = "word", value_name = "WORD")]
        word: String,
        /// Maximal sortable element weakly below
        #[arg(long, conflicts_with = "up")]
        down: bool,
        /// Minimal antisortable element weakly above
        #[arg(long)]
        up: bool,
        /// Digit rendering instead of s-names
        #[arg(long)]
        compact: bool,
    },

    /// The congruence induced by a Coxeter element, or the forcing poset
    Congruence {
        #[command(flatten)]
        args: GroupArgs,
        #[command(flatten)]
        cox: CoxeterArg,
        /// How to compute the partition
        #[arg(long, value_enum, default_value_t = Method::Projection)]
        method: Method,
        /// Emit the forcing poset on join-irreducibles instead
        #[arg(long)]
        forcing: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },

    /// Export the weak order or the Cambrian lattice as DOT or JSON
    Lattice {
        #[command(flatten)]
        args: GroupArgs,
        #[command(flatten)]
        cox: CoxeterArg,
        /// The lattice on sortable elements instead of the full weak order
        #[arg(long)]
        cambrian: bool,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },

    /// Count the sortable elements (the W-Catalan number)
    Catalan {
        #[command(flatten)]
        args: GroupArgs,
        #[command(flatten)]
        cox: CoxeterArg,
        /// Check that the count agrees for every Coxeter element
        #[arg(long)]
        all_c: bool,
    },

    /// Run the theorem-verification suite
    Verify {
        #[command(flatten)]
        args: GroupArgs,
        #[command(flatten)]
        cox: CoxeterArg,
        /// Check every Coxeter element (the default unless -c is given)
        #[arg(long)]
        all_c: bool,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

fn build_matrix(args: &GroupArgs) -> Result<CoxeterMatrix> {
    match (&args.group, &args.matrix) {
        (Some(name), None) => spec::parse_group_spec(name),
        (None, Some(path)) => spec::matrix_from_file(path),
        _ => bail!("give a named group or --matrix <path>"),
    }
}

fn build_system(args: &GroupArgs) -> Result<CoxeterSystem> {
    let matrix = build_matrix(args)?;
    CoxeterSystem::build(&matrix, args.max_order).map_err(|e| anyhow!("{e}"))
}

fn context<'a>(sys: &'a CoxeterSystem, cox: &CoxeterArg) -> Result<CoxeterElementContext<'a>> {
    let word = match &cox.coxeter_word {
        Some(text) => Word::parse(text, sys.rank()).map_err(|e| anyhow!("{e}"))?,
        None => Word((0..sys.rank() as u8).collect()),
    };
    CoxeterElementContext::new(sys, word).map_err(|e| anyhow!("{e}"))
}

fn parse_element(sys: &CoxeterSystem, text: &str) -> Result<Element> {
    let word = Word::parse(text, sys.rank()).map_err(|e| anyhow!("{e}"))?;
    Ok(sys.element_from_word(&word))
}

fn render_element(sys: &CoxeterSystem, w: Element, compact: bool) -> String {
    let word = sys.reduced_word(w);
    if compact {
        word.render_compact()
    } else {
        word.render_spaced()
    }
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn partition_json(p: &CongruencePartition) -> String {
    let mut text = serde_json::to_string_pretty(p).expect("serializable");
    text.push('\n');
    text
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Info(args) => {
            let sys = build_system(&args)?;
            let lat = WeakOrderLattice::new(&sys);
            let name = args.group.clone().unwrap_or_else(|| "matrix".into());
            let c = sys.element_from_word(&Word((0..sys.rank() as u8).collect()));
            let mut k = 1;
            let mut acc = c;
            while acc != sys.identity() {
                acc = sys.mul(acc, c);
                k += 1;
            }
            let mut out = String::new();
            out.push_str(&format!("group: {name}\n"));
            out.push_str(&format!("rank: {}\n", sys.rank()));
            out.push_str(&format!("order: {}\n", sys.order()));
            out.push_str(&format!("reflections: {}\n", sys.num_reflections()));
            out.push_str(&format!("longest element length: {}\n", sys.length(sys.longest_element())));
            out.push_str(&format!("coxeter number: {k}\n"));
            out.push_str(&format!("join-irreducibles: {}\n", lat.join_irreducibles().len()));
            out.push_str(&format!(
                "generators: s0..s{} (0-based; the literature often numbers them from 1)\n",
                sys.rank() - 1
            ));
            write_output(&args.output, &out)?;
            Ok(0)
        }

        Cmd::Sortables { args, cox, count, compact } => {
            let sys = build_system(&args)?;
            let ctx = context(&sys, &cox)?;
            let sortables = ctx.sortable_elements();
            let out = if count {
                format!("{}\n", sortables.len())
            } else {
                let mut s = String::new();
                for &w in &sortables {
                    let sw = ctx.sorting_word(w);
                    s.push_str(&if compact { sw.render_compact() } else { sw.render_spaced() });
                    s.push('\n');
                }
                s
            };
            write_output(&args.output, &out)?;
            Ok(0)
        }

        Cmd::SortingWord { args, cox, word, compact } => {
            let sys = build_system(&args)?;
            let ctx = context(&sys, &cox)?;
            let w = parse_element(&sys, &word)?;
            let sw = ctx.sorting_word(w);
            let rendered = if compact { sw.render_compact() } else { sw.render_spaced() };
            write_output(&args.output, &format!("{rendered}\n"))?;
            Ok(0)
        }

        Cmd::Project { args, cox, word, down, up, compact } => {
            if down == up {
                bail!("choose exactly one of --down or --up");
            }
            let sys = build_system(&args)?;
            let ctx = context(&sys, &cox)?;
            let w = parse_element(&sys, &word)?;
            let result = if down { pi_down(&ctx, w) } else { pi_up(&ctx, w) };
            write_output(&args.output, &format!("{}\n", render_element(&sys, result, compact)))?;
            Ok(0)
        }

        Cmd::Congruence { args, cox, method, forcing, format } => {
            let sys = build_system(&args)?;
            let lat = WeakOrderLattice::new(&sys);
            if forcing {
                let poset = ForcingPoset::compute(&lat);
                let mut text = serde_json::to_string_pretty(&poset).expect("serializable");
                text.push('\n');
                write_output(&args.output, &text)?;
                return Ok(0);
            }
            let ctx = context(&sys, &cox)?;
            let partition = match method {
                Method::Projection => theta_congruence(&lat, &ctx).map_err(|e| anyhow!("{e}"))?,
                Method::Closure => cambrian_congruence(&lat, &ctx),
            };
            let out = match format {
                Format::Json => partition_json(&partition),
                Format::Text => {
                    let mut s = format!("classes: {}\n", partition.num_classes());
                    for (i, class) in partition.classes.iter().enumerate() {
                        s.push_str(&format!(
                            "class {i}: bottom={} top={} size={}\n",
                            render_element(&sys, sys.element(partition.bottoms[i] as usize), true),
                            render_element(&sys, sys.element(partition.tops[i] as usize), true),
                            class.len()
                        ));
                    }
                    s
                }
                Format::Dot => bail!("congruence output supports --format json or text"),
            };
            write_output(&args.output, &out)?;
            Ok(0)
        }

        Cmd::Lattice { args, cox, cambrian, format } => {
            let sys = build_system(&args)?;
            let lat = WeakOrderLattice::new(&sys);
            let ctx = context(&sys, &cox)?;
            let view = if cambrian {
                export::cambrian_view(&lat, &ctx)
            } else {
                export::weak_order_view(&lat, &ctx)
            };
            let out = match format {
                Format::Dot => export::to_dot(&view),
                Format::Json => export::to_json(&view),
                Format::Text => bail!("lattice output supports --format dot or json"),
            };
            write_output(&args.output, &out)?;
            Ok(0)
        }

        Cmd::Catalan { args, cox, all_c } => {
            let sys = build_system(&args)?;
            if all_c {
                let counts: Vec<(String, usize)> = coxeter_elements(&sys)
                    .iter()
                    .map(|c| (c.word().render_compact(), c.sortable_elements().len()))
                    .collect();
                let first = counts[0].1;
                if counts.iter().any(|&(_, n)| n != first) {
                    for (word, n) in &counts {
                        eprintln!("c={word}: {n} sortable elements");
                    }
                    eprintln!("sortable counts differ across Coxeter elements");
                    return Ok(2);
                }
                write_output(&args.output, &format!("{first}\n"))?;
            } else {
                let ctx = context(&sys, &cox)?;
                write_output(&args.output, &format!("{}\n", ctx.sortable_elements().len()))?;
            }
            Ok(0)
        }

        Cmd::Verify { args, cox, all_c } => {
            let sys = build_system(&args)?;
            let lat = WeakOrderLattice::new(&sys);
            let all = coxeter_elements(&sys);
            let contexts = if cox.coxeter_word.is_some() && !all_c {
                vec![context(&sys, &cox)?]
            } else {
                all
            };
            let report = verify_group(&lat, &contexts);
            let mut out = String::new();
            for line in report.lines() {
                out.push_str(&line);
                out.push('\n');
            }
            out.push_str(&format!(
                "{} properties on {} Coxeter element(s): {}\n",
                report.checks.len(),
                contexts.len(),
                if report.all_passed() { "all passed" } else { "FAILED" }
            ));
            write_output(&args.output, &out)?;
            Ok(if report.all_passed() { 0 } else { 2 })
        }
    }
}
