use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use freelat::bhom::{a_hom, n5_hom};
use freelat::finlat::{
    boolean, build_a, build_fd3, build_m3, build_n5, chain, d_rank, d_rank_op, dm_completion, double,
    parse_lattice_file, parse_poset_file, to_dot, variety_level, write_lattice_file,
};
use freelat::idealdm::sd_meet_failure_report;
use freelat::random::random_term_up_to;
use freelat::{
    alpha, beta, canonical_form, canonical_terms, classify_element, coherent_sequence, compare_coherent,
    equal, generates_free, kernel_table, leq, ni_predicate, parse_term, FiniteLattice, GeneratorSet, Hom,
    Report, Status, Term, Tower,
};

#[derive(Parser)]
#[command(name = "freelat", version, about = "Free lattices, finite lattices and bounded homomorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Generators, comma separated.
    #[arg(short = 'g', long = "gens", global = true, default_value = "x,y,z")]
    gens: String,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the main output here instead of stdout.
    #[arg(short = 'o', long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads for searches (default: all cores).
    #[arg(long, global = true, env = "FREELAT_JOBS")]
    jobs: Option<usize>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Decide s ≤ t in the free lattice.
    Leq { s: String, t: String },
    /// Decide s = t in the free lattice.
    Eq { s: String, t: String },
    /// Print the canonical form.
    Canon { term: String },
    /// Evaluate NI on a list of terms.
    Ni {
        #[arg(required = true, num_args = 1..)]
        terms: Vec<String>,
    },
    /// Whether four terms generate a copy of F4.
    Free4 {
        #[arg(num_args = 4)]
        terms: Vec<String>,
    },
    /// Finite lattice utilities. LATTICE is a file or one of N5, M3, A, FD3, C<n>, B<k>.
    #[command(subcommand)]
    Lat(LatCommand),
    /// Bounded homomorphisms from the free lattice into a finite lattice.
    #[command(subcommand)]
    Hom(HomCommand),
    /// Towers of finite quotients.
    #[command(subcommand)]
    Tower(TowerCommand),
    /// Ideal lattice of F3.
    #[command(subcommand)]
    Idealdm(IdealCommand),
    /// Reproduce the finite witnesses.
    Verify {
        #[command(subcommand)]
        claim: VerifyCommand,
        /// Also write the Hasse diagram of the lattice involved.
        #[arg(long, global = true)]
        dot: Option<PathBuf>,
    },
    /// List canonical terms up to a size.
    Enum {
        #[arg(long, default_value_t = 2)]
        max_size: usize,
        /// Print only the count per size.
        #[arg(long)]
        count: bool,
        /// Instead, print this many random terms drawn with --seed.
        #[arg(long, conflicts_with = "count")]
        sample: Option<usize>,
    },
}

#[derive(Subcommand)]
enum LatCommand {
    /// Validate and summarize.
    Check { lattice: String },
    /// Hasse diagram in DOT.
    Dot { lattice: String },
    /// Dedekind–MacNeille completion of a poset or lattice file.
    Dm { poset: String },
    /// Double a convex set, given by labels.
    Double {
        lattice: String,
        #[arg(required = true, num_args = 1..)]
        elements: Vec<String>,
    },
    /// D-rank and dual D-rank.
    Drank { lattice: String },
    /// Both semidistributive laws.
    Sd { lattice: String },
    /// Whitman's condition.
    W { lattice: String },
}

#[derive(Args)]
struct HomArgs {
    lattice: String,
    /// Generator images, e.g. x=c,y=b,z=a.
    #[arg(short, long)]
    map: String,
}

#[derive(Subcommand)]
enum HomCommand {
    /// Least preimage of the up-set of an element.
    Beta {
        #[command(flatten)]
        hom: HomArgs,
        element: String,
    },
    /// Greatest preimage of the down-set of an element.
    Alpha {
        #[command(flatten)]
        hom: HomArgs,
        element: String,
    },
    /// All kernel classes as intervals.
    Classes {
        #[command(flatten)]
        hom: HomArgs,
    },
}

#[derive(Subcommand)]
enum TowerCommand {
    /// Stability of the class bounds of a term across the last two stages.
    Classify {
        /// Stage as LATTICE:MAP, e.g. N5:x=c,y=b,z=a. Repeat in order.
        #[arg(long = "stage", required = true)]
        stages: Vec<String>,
        term: String,
    },
    /// Compare two terms through their coherent sequences.
    Compare {
        #[arg(long = "stage", required = true)]
        stages: Vec<String>,
        s: String,
        t: String,
    },
}

#[derive(Subcommand)]
enum IdealCommand {
    /// Failure of meet semidistributivity in the ideal lattice.
    SdFail {
        #[arg(long, default_value_t = 8)]
        budget: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    Fig1,
    Fig2,
    Fig3,
    Pi3F3 {
        #[arg(long, default_value_t = 6)]
        max_size: usize,
    },
    Pi3F4 {
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
    Separate {
        s: String,
        t: String,
    },
}

/// Output plus the exit status it implies.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&cli, &outcome.text) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn gens(cli: &Cli) -> anyhow::Result<GeneratorSet> {
    Ok(GeneratorSet::parse(&cli.gens)?)
}

fn term(text: &str, g: &GeneratorSet) -> anyhow::Result<Term> {
    parse_term(text, g).with_context(|| format!("parsing `{text}`"))
}

fn builtin(name: &str) -> Option<FiniteLattice> {
    let sized = |prefix: char| name.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok());
    match name {
        "N5" => Some(build_n5()),
        "M3" => Some(build_m3()),
        "A" => Some(build_a()),
        "FD3" => Some(build_fd3()),
        _ => match (sized('C'), sized('B')) {
            (Some(n), _) if (1..=64).contains(&n) => Some(chain(n)),
            (_, Some(k)) if k <= 6 => Some(boolean(k)),
            _ => None,
        },
    }
}

fn load_lattice(name: &str) -> anyhow::Result<FiniteLattice> {
    let path = Path::new(name);
    if path.exists() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {name}"))?;
        return parse_lattice_file(&text).with_context(|| format!("in {name}"));
    }
    builtin(name).ok_or_else(|| anyhow!("no lattice file or built-in lattice named `{name}`"))
}

fn parse_map(text: &str) -> anyhow::Result<Vec<(String, String)>> {
    text.split(',')
        .map(|pair| {
            let (g, e) =
                pair.split_once('=').ok_or_else(|| anyhow!("bad map entry `{pair}`, want gen=label"))?;
            Ok((g.trim().to_string(), e.trim().to_string()))
        })
        .collect()
}

fn load_hom(g: &GeneratorSet, lattice: &str, map: &str) -> anyhow::Result<Hom> {
    let target = load_lattice(lattice)?;
    let pairs = parse_map(map)?;
    let borrowed: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    Ok(Hom::from_labels(g.clone(), target, &borrowed)?)
}

fn element(l: &FiniteLattice, label: &str) -> anyhow::Result<usize> {
    l.find(label).ok_or_else(|| anyhow!("`{label}` is not an element of {}", l.name()))
}

fn load_tower(g: &GeneratorSet, stages: &[String]) -> anyhow::Result<Tower> {
    let homs = stages
        .iter()
        .map(|s| {
            let (lat, map) =
                s.rsplit_once(':').ok_or_else(|| anyhow!("stage `{s}` should be LATTICE:MAP"))?;
            load_hom(g, lat, map)
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(Tower::new(homs)?)
}

fn yes_no(b: bool) -> String {
    format!("{b}\n")
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let records = cli.format == Format::Records;
    Ok(match &cli.command {
        Command::Leq { s, t } => {
            let g = gens(cli)?;
            Outcome::ok(yes_no(leq(&term(s, &g)?, &term(t, &g)?)))
        }
        Command::Eq { s, t } => {
            let g = gens(cli)?;
            Outcome::ok(yes_no(equal(&term(s, &g)?, &term(t, &g)?)))
        }
        Command::Canon { term: t } => {
            let g = gens(cli)?;
            Outcome::ok(format!("{}\n", canonical_form(&term(t, &g)?)))
        }
        Command::Ni { terms } => {
            let g = gens(cli)?;
            let ts = terms.iter().map(|t| term(t, &g)).collect::<anyhow::Result<Vec<_>>>()?;
            Outcome::ok(yes_no(ni_predicate(&ts)?))
        }
        Command::Free4 { terms } => {
            let g = gens(cli)?;
            let ts = terms.iter().map(|t| term(t, &g)).collect::<anyhow::Result<Vec<_>>>()?;
            Outcome::ok(yes_no(generates_free(&ts)?))
        }
        Command::Lat(cmd) => lat(cmd, records)?,
        Command::Hom(cmd) => hom(cli, cmd, records)?,
        Command::Tower(cmd) => tower(cli, cmd)?,
        Command::Idealdm(IdealCommand::SdFail { budget }) => {
            let report = sd_meet_failure_report(*budget)?;
            let text = if records { report.to_records() } else { report.to_text() };
            Outcome { text, ok: report.passed() }
        }
        Command::Verify { claim, dot } => verify(cli, claim, dot.as_deref(), records)?,
        Command::Enum { max_size, sample: Some(n), .. } => {
            let g = gens(cli)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let text: String =
                (0..*n).map(|_| format!("{}\n", random_term_up_to(&mut rng, &g, *max_size))).collect();
            Outcome::ok(text)
        }
        Command::Enum { max_size, count, sample: None } => {
            let g = gens(cli)?;
            let terms = canonical_terms(&g, *max_size);
            let mut text = String::new();
            if *count {
                for size in 0..=*max_size {
                    let n = terms.iter().filter(|t| t.size() == size).count();
                    text += &format!("size {size}: {n}\n");
                }
                text += &format!("total: {}\n", terms.len());
            } else {
                for t in &terms {
                    text += &format!("{t}\n");
                }
            }
            Outcome::ok(text)
        }
    })
}

fn lat(cmd: &LatCommand, records: bool) -> anyhow::Result<Outcome> {
    let law = |name: &str, holds: bool, witness: Option<Vec<usize>>, l: &FiniteLattice| {
        let w =
            witness.map(|w| w.iter().map(|&e| l.label(e)).collect::<Vec<_>>().join(",")).unwrap_or_default();
        if records {
            format!("record=law lattice={} law={name} holds={holds} witness={w}\n", l.name())
        } else if holds {
            format!("{name}: holds\n")
        } else {
            format!("{name}: fails at ({w})\n")
        }
    };
    Ok(match cmd {
        LatCommand::Check { lattice } => {
            let l = load_lattice(lattice)?;
            let labels = |v: Vec<usize>| v.iter().map(|&e| l.label(e)).collect::<Vec<_>>().join(" ");
            let mut text = format!("{}: {} elements, {} covers\n", l.name(), l.len(), l.covers().len());
            text += &format!("bottom {}, top {}\n", l.label(l.bottom()), l.label(l.top()));
            text += &format!("join irreducibles: {}\n", labels(l.join_irreducibles()));
            text += &format!("meet irreducibles: {}\n", labels(l.meet_irreducibles()));
            let (lo, up) = (d_rank(&l), d_rank_op(&l));
            text += &format!("lower bounded: {}, upper bounded: {}\n", lo.is_bounded(), up.is_bounded());
            Outcome::ok(text)
        }
        LatCommand::Dot { lattice } => Outcome::ok(to_dot(&load_lattice(lattice)?)),
        LatCommand::Dm { poset } => {
            let (name, p) = if Path::new(poset).exists() {
                let text = fs::read_to_string(poset).with_context(|| format!("reading {poset}"))?;
                parse_poset_file(&text).with_context(|| format!("in {poset}"))?
            } else {
                let l = builtin(poset).ok_or_else(|| anyhow!("no poset file `{poset}`"))?;
                (l.name().to_string(), l.to_poset())
            };
            let c = dm_completion(&p)?;
            Outcome::ok(write_lattice_file(&c.lattice.with_name(&format!("DM({name})"))))
        }
        LatCommand::Double { lattice, elements } => {
            let l = load_lattice(lattice)?;
            let set = elements.iter().map(|e| element(&l, e)).collect::<anyhow::Result<Vec<_>>>()?;
            Outcome::ok(write_lattice_file(&double(&l, &set)?.lattice))
        }
        LatCommand::Drank { lattice } => {
            let l = load_lattice(lattice)?;
            let show = |r: Option<usize>| r.map_or("unbounded".to_string(), |k| k.to_string());
            let (lo, up) = (d_rank(&l), d_rank_op(&l));
            let v = variety_level(&l);
            let text = if records {
                format!(
                    "record=drank lattice={} rank={} dual_rank={} variety_level={} exhaustive={}\n",
                    l.name(),
                    show(lo.rank),
                    show(up.rank),
                    show(v.level),
                    v.exhaustive
                )
            } else {
                let mut t = format!("D-rank: {}\ndual D-rank: {}\n", show(lo.rank), show(up.rank));
                t += &format!(
                    "variety level: {}{}\n",
                    show(v.level),
                    if v.exhaustive { "" } else { " (lattice only, sublattices not enumerated)" }
                );
                t
            };
            Outcome::ok(text)
        }
        LatCommand::Sd { lattice } => {
            let l = load_lattice(lattice)?;
            let (m, j) = (l.check_sd_meet(), l.check_sd_join());
            let text = law("SD-meet", m.holds, m.witness, &l) + &law("SD-join", j.holds, j.witness, &l);
            Outcome::ok(text)
        }
        LatCommand::W { lattice } => {
            let l = load_lattice(lattice)?;
            let w = l.check_w();
            Outcome::ok(law("W", w.holds, w.witness, &l))
        }
    })
}

fn hom(cli: &Cli, cmd: &HomCommand, records: bool) -> anyhow::Result<Outcome> {
    let g = gens(cli)?;
    Ok(match cmd {
        HomCommand::Beta { hom, element: e } | HomCommand::Alpha { hom, element: e } => {
            let h = load_hom(&g, &hom.lattice, &hom.map)?;
            let a = element(h.target(), e)?;
            let t = if matches!(cmd, HomCommand::Beta { .. }) { beta(&h, a)? } else { alpha(&h, a)? };
            Outcome::ok(format!("{t}\n"))
        }
        HomCommand::Classes { hom } => {
            let h = load_hom(&g, &hom.lattice, &hom.map)?;
            let table = kernel_table(&h)?;
            Outcome::ok(if records { table.to_records() } else { table.to_text() })
        }
    })
}

fn tower(cli: &Cli, cmd: &TowerCommand) -> anyhow::Result<Outcome> {
    let g = gens(cli)?;
    Ok(match cmd {
        TowerCommand::Classify { stages, term: t } => {
            let tw = load_tower(&g, stages)?;
            Outcome::ok(format!("{}\n", classify_element(&tw, &term(t, &g)?)?))
        }
        TowerCommand::Compare { stages, s, t } => {
            let tw = load_tower(&g, stages)?;
            let c = coherent_sequence(&tw, &term(s, &g)?)?;
            let d = coherent_sequence(&tw, &term(t, &g)?)?;
            Outcome::ok(format!("{}\n", compare_coherent(&c, &d)?))
        }
    })
}

fn verify(cli: &Cli, claim: &VerifyCommand, dot: Option<&Path>, records: bool) -> anyhow::Result<Outcome> {
    use freelat::verifier::{
        check_pi3_in_f3, search_pi3_in_f4, separate_terms, verify_figure1, verify_figure2, verify_figure3,
    };
    let mut prefix = String::new();
    let (report, lattice): (Report, Option<FiniteLattice>) = match claim {
        VerifyCommand::Fig1 => (verify_figure1(), Some(build_a())),
        VerifyCommand::Fig2 => {
            let h = a_hom();
            if !records {
                prefix = kernel_table(&h)?.to_text();
            }
            (verify_figure2(), Some(h.target().clone()))
        }
        VerifyCommand::Fig3 => (verify_figure3(), Some(n5_hom().target().clone())),
        VerifyCommand::Pi3F3 { max_size } => (check_pi3_in_f3(*max_size), None),
        VerifyCommand::Pi3F4 { max_size } => (search_pi3_in_f4(*max_size), None),
        VerifyCommand::Separate { s, t } => {
            let g = gens(cli)?;
            (separate_terms(&term(s, &g)?, &term(t, &g)?)?, None)
        }
    };
    if let Some(path) = dot {
        let Some(l) = lattice else { bail!("--dot needs a claim about a finite lattice") };
        fs::write(path, to_dot(&l)).with_context(|| format!("writing {}", path.display()))?;
    }
    let body = if records { report.to_records() } else { report.to_text() };
    Ok(Outcome { text: prefix + &body, ok: report.status != Status::Fail })
}
