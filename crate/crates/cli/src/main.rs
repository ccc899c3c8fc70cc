use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use halfarc::coverings::{
    derived_graph, is_connected_cover, is_regular_covering, quotient_graph, spanning_tree,
    voltage_action, VoltageAssignment,
};
use halfarc::io::{decode_graph6, encode_graph6, read_edge_list, write_edge_list};
use halfarc::{analyze, are_isomorphic, automorphism_group, verify};
use halfarc::{FamilySpec, FiniteAbelianGroup, Graph, PermGroup, Permutation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Analyses of graphs above this order need `--big`.
const BIG_ORDER: usize = 2000;

#[derive(Parser)]
#[command(name = "halfarc", version, about = "Tetravalent half-arc-transitive graphs: families, symmetry and coverings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family graph and write it out.
    Construct {
        /// Family specifier: x:r,m,n | rw6 | wreath:n | px:p | ca0:p | ca1:p | lex-cycle:n
        spec: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Report order, size, transitivity, |Aut| and alternating-cycle data.
    Analyze {
        /// Family specifier or graph file.
        input: String,
        /// Input file format; guessed from the contents when absent.
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        big: bool,
    },
    /// Build a regular cover from a voltage assignment, or search for half-arc-transitive covers.
    Cover(CoverArgs),
    /// Quotient a graph by a semiregular group.
    Quotient(QuotientArgs),
    /// Analyze every graph6 line of a file.
    Census {
        file: PathBuf,
        #[arg(long)]
        big: bool,
    },
    /// Run the verification battery.
    Verify {
        /// Include the X(32;12,61) criterion.
        #[arg(long)]
        big: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Edgelist)]
    format: Format,
    /// Write the graph here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CoverArgs {
    /// Base graph: family specifier or graph file.
    base: String,
    /// Cyclic factor orders of the voltage group, e.g. `5` or `3,3`.
    #[arg(long, value_delimiter = ',')]
    group: Vec<usize>,
    /// Voltage assignment file; identity voltages when neither this nor --search is given.
    #[arg(long, conflicts_with = "search")]
    voltages: Option<PathBuf>,
    /// Sample random T-reduced assignments and report half-arc-transitive connected covers.
    #[arg(long)]
    search: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    tries: usize,
    /// Check that the quotient of the cover by the voltage group is isomorphic to the base.
    #[arg(long)]
    round_trip: bool,
    #[arg(long)]
    big: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct QuotientArgs {
    /// Family specifier or graph file.
    input: String,
    /// Quotient by the normal closure of an order-p automorphism.
    #[arg(long, conflicts_with = "gens", required_unless_present = "gens")]
    prime: Option<u64>,
    /// Quotient by the group generated by the permutations in this file.
    #[arg(long)]
    gens: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    big: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct { spec, output } => construct(&spec, &output),
        Command::Analyze { input, format, big } => analyze_cmd(&input, format, big),
        Command::Cover(args) => cover(&args),
        Command::Quotient(args) => quotient(&args),
        Command::Census { file, big } => census(&file, big),
        Command::Verify { big, seed } => Ok(verify_cmd(big, seed)),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn encode(x: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => encode_graph6(x) + "\n",
        Format::Edgelist => write_edge_list(x),
    }
}

fn emit(x: &Graph, output: &OutputArgs) -> Result<()> {
    let text = encode(x, output.format);
    match &output.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Resolves a family specifier, falling back to a graph file of that name.
fn load_graph(input: &str, format: Option<Format>) -> Result<Graph> {
    match input.parse::<FamilySpec>() {
        Ok(spec) => Ok(spec.build()?),
        Err(spec_err) => {
            let path = Path::new(input);
            if !path.is_file() {
                bail!("`{input}` is neither a family specifier ({spec_err}) nor a readable file");
            }
            let text = fs::read_to_string(path).with_context(|| format!("reading {input}"))?;
            let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
            let format = format.unwrap_or(match lines.first() {
                Some(l) if !l.contains(char::is_whitespace) => Format::Graph6,
                _ => Format::Edgelist,
            });
            match format {
                Format::Graph6 if lines.len() == 1 => Ok(decode_graph6(lines[0])?),
                Format::Graph6 => bail!("{input}: expected exactly one graph6 line"),
                Format::Edgelist => Ok(read_edge_list(&text)?),
            }
        }
    }
}

fn guard(x: &Graph, big: bool) -> Result<()> {
    if x.order() > BIG_ORDER && !big {
        bail!("graph has {} vertices; analyses over {BIG_ORDER} vertices need --big", x.order());
    }
    Ok(())
}

fn construct(spec: &str, output: &OutputArgs) -> Result<ExitCode> {
    let x = spec.parse::<FamilySpec>()?.build()?;
    emit(&x, output)?;
    Ok(ExitCode::SUCCESS)
}

fn analyze_cmd(input: &str, format: Option<Format>, big: bool) -> Result<ExitCode> {
    let x = load_graph(input, format)?;
    guard(&x, big)?;
    let start = Instant::now();
    let report = analyze(&x)?;
    println!("graph={input}");
    print!("{report}");
    eprintln!("duration={:.3}s", start.elapsed().as_secs_f64());
    Ok(ExitCode::SUCCESS)
}

fn cover(args: &CoverArgs) -> Result<ExitCode> {
    let base = load_graph(&args.base, None)?;
    if !base.is_connected() {
        bail!("base graph must be connected");
    }
    if args.search {
        return cover_search(args, base);
    }
    let xi = match &args.voltages {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let xi = VoltageAssignment::parse(base, &text).with_context(|| path.display().to_string())?;
            if !args.group.is_empty() && args.group != xi.group().orders() {
                bail!(
                    "group mismatch: --group {:?} but voltage file declares {}",
                    args.group,
                    xi.group()
                );
            }
            xi
        }
        None => VoltageAssignment::identity(base, voltage_group(&args.group)?),
    };
    let cover = derived_graph(&xi);
    let action = voltage_action(&xi);
    let regular = is_regular_covering(&cover, &action)?;
    println!("base={}", args.base);
    println!("group={}", xi.group());
    println!("cover_n={}", cover.order());
    println!("cover_edges={}", cover.size());
    println!("connected={}", cover.is_connected());
    println!("regular_covering={regular}");
    let mut ok = regular;
    if args.round_trip {
        let (q, _) = quotient_graph(&cover, &action)?;
        let iso = are_isomorphic(&q, xi.base()).is_some();
        println!("round_trip={iso}");
        ok &= iso;
    }
    if let Some(path) = &args.output.out {
        fs::write(path, encode(&cover, args.output.format))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn voltage_group(orders: &[usize]) -> Result<FiniteAbelianGroup> {
    if orders.is_empty() {
        bail!("--group is required without a voltage file");
    }
    Ok(FiniteAbelianGroup::new(orders.to_vec())?)
}

fn cover_search(args: &CoverArgs, base: Graph) -> Result<ExitCode> {
    let group = voltage_group(&args.group)?;
    if base.order() * group.size() > BIG_ORDER && !args.big {
        bail!(
            "covers have {} vertices; analyses over {BIG_ORDER} vertices need --big",
            base.order() * group.size()
        );
    }
    let tree = spanning_tree(&base)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let samples: Vec<VoltageAssignment> = (0..args.tries)
        .map(|_| VoltageAssignment::random_t_reduced(base.clone(), group.clone(), &tree, &mut rng))
        .collect();
    let rows: Vec<Result<(bool, bool, Graph)>> = samples
        .par_iter()
        .map(|xi| {
            let connected = is_connected_cover(xi)?;
            let cover = derived_graph(xi);
            let hat = connected && analyze(&cover)?.profile.half_arc_transitive;
            Ok((connected, hat, cover))
        })
        .collect();
    println!("base={}", args.base);
    println!("group={group}");
    println!("seed={}", args.seed);
    println!("tries={}", args.tries);
    let mut found = 0;
    let mut first: Option<Graph> = None;
    for (i, (xi, row)) in samples.iter().zip(rows).enumerate() {
        let (connected, hat, cover) = row?;
        println!("try={i} connected={connected} hat={hat}");
        if hat {
            found += 1;
            for line in xi.to_text().lines() {
                println!("  {line}");
            }
            first.get_or_insert(cover);
        }
    }
    println!("found={found}");
    if let (Some(path), Some(cover)) = (&args.output.out, first) {
        fs::write(path, encode(&cover, args.output.format))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

/// Smallest subgroup of `aut` containing `g` and closed under conjugation.
fn normal_closure(aut: &PermGroup, g: Permutation) -> Result<PermGroup> {
    let mut gens = vec![g];
    let mut n = PermGroup::new(aut.degree(), gens.clone())?;
    let mut i = 0;
    while i < gens.len() {
        for a in aut.generators() {
            let c = a.inverse().compose(&gens[i])?.compose(a)?;
            if !n.contains(&c) {
                gens.push(c);
                n = PermGroup::new(aut.degree(), gens.clone())?;
            }
        }
        i += 1;
    }
    Ok(n)
}

fn quotient(args: &QuotientArgs) -> Result<ExitCode> {
    let x = load_graph(&args.input, None)?;
    guard(&x, args.big)?;
    let n = match (&args.gens, args.prime) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            PermGroup::parse_generators(x.order(), &text).with_context(|| path.display().to_string())?
        }
        (None, Some(p)) => {
            let aut = automorphism_group(&x);
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let g = aut
                .element_of_prime_order(p, &mut rng)
                .ok_or_else(|| anyhow!("|Aut| = {} has no element of order {p}", aut.order()))?;
            normal_closure(&aut, g)?
        }
        (None, None) => bail!("one of --prime or --gens is required"),
    };
    let (q, orbit_of) = quotient_graph(&x, &n)?;
    let regular = is_regular_covering(&x, &n)?;
    let mut sizes = vec![0usize; q.order()];
    for &o in &orbit_of {
        sizes[o] += 1;
    }
    sizes.sort_unstable();
    sizes.dedup();
    let mut report = String::new();
    writeln!(report, "graph={}", args.input)?;
    if args.prime.is_some() {
        writeln!(report, "seed={}", args.seed)?;
    }
    writeln!(report, "group_order={}", n.order())?;
    writeln!(report, "orbits={}", q.order())?;
    writeln!(report, "orbit_sizes={sizes:?}")?;
    writeln!(report, "quotient_n={}", q.order())?;
    writeln!(report, "quotient_edges={}", q.size())?;
    match q.valency() {
        Some(k) => writeln!(report, "quotient_regular={k}")?,
        None => writeln!(report, "quotient_regular=none")?,
    }
    writeln!(report, "regular_covering={regular}")?;
    print!("{report}");
    if let Some(path) = &args.output.out {
        fs::write(path, encode(&q, args.output.format))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn census(file: &Path, big: bool) -> Result<ExitCode> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let rows: Vec<Result<String>> = lines
        .par_iter()
        .map(|&(_, line)| {
            let x = decode_graph6(line)?;
            guard(&x, big)?;
            let a = analyze(&x)?;
            let p = &a.profile;
            Ok(format!(
                "{} {} {} {} {} {} {}",
                a.n, a.edges, p.vertex_transitive, p.edge_transitive, p.arc_transitive,
                p.half_arc_transitive, a.aut_order
            ))
        })
        .collect();
    println!("line n edges vt et at hat aut_order");
    let (mut errors, mut hats) = (0, 0);
    for ((ln, _), row) in lines.iter().zip(rows) {
        match row {
            Ok(r) => {
                hats += usize::from(r.split(' ').nth(5) == Some("true"));
                println!("{ln} {r}");
            }
            Err(e) => {
                errors += 1;
                println!("{ln} error: {e:#}");
            }
        }
    }
    println!("rows={} errors={errors} hat={hats}", lines.len());
    Ok(if errors == 0 { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn verify_cmd(big: bool, seed: u64) -> ExitCode {
    let results = verify::run_all(big, seed);
    for r in &results {
        println!("{r}");
    }
    let failed = results.iter().filter(|r| !r.ok()).count();
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
