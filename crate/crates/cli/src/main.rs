mod io;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use zonotile::combi::{find_m_configs, find_w_configs, from_w_collection, validate_combi, Combi, MConfig, WConfig};
use zonotile::contraction::{n_contract, n_expand, one_contract, one_expand, LegalPath};
use zonotile::flips::{descend_to_minimum, lowering_flip, raising_flip, FlipStep};
use zonotile::geometry::Generators;
use zonotile::patterns::{
    classify_pattern, domains_with, forbidden_quadruple, split_quasi, verify_face_domains, verify_pattern, CyclicPattern,
    GraphPattern, QuasiCombi,
};
use zonotile::rhombus::{from_s_collection, RhombusTiling};
use zonotile::separation::{base_relation, BaseRelation};
use zonotile::suite::{run_suite, SuiteConfig};
use zonotile::{
    chamber_domain, chamber_pair_domain, enumerate_maximal, hypersimplex_domain, summarize_maximal, GroundSize,
    Permutation, Separation, SetFamily,
};

use io::{emit, parse_set, read_json, to_json, CliError, CliResult};
use render::{render_combi, render_pattern, render_quasi, render_rhombus, RenderStyle};

#[derive(Parser)]
#[command(name = "zonotile", version, about = "Separated set-systems, combined tilings and pattern domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationArg {
    Weak,
    Strong,
}

impl From<RelationArg> for Separation {
    fn from(r: RelationArg) -> Self {
        match r {
            RelationArg::Weak => Separation::Weak,
            RelationArg::Strong => Separation::Strong,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    /// Contract or expand along the largest element.
    Last,
    /// Contract or expand along the element 1.
    First,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlipOp {
    Lower,
    Raise,
}

#[derive(Clone, Copy, ValueEnum)]
enum Half {
    Whole,
    Inside,
    Outside,
}

/// Where a domain comes from.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct DomainSource {
    /// Set family JSON file.
    #[arg(long)]
    domain: Option<PathBuf>,
    /// The whole cube 2^[n].
    #[arg(long, value_name = "N")]
    hypercube: Option<usize>,
    /// Chamber sets of a permutation given as a word, e.g. 3241.
    #[arg(long, value_name = "WORD")]
    chamber: Option<String>,
    /// Chamber sets between two permutations: LOWER UPPER.
    #[arg(long, num_args = 2, value_names = ["LOWER", "UPPER"])]
    chamber_pair: Option<Vec<String>>,
    /// Sets with LO <= |X| <= HI in [N]: N LO HI.
    #[arg(long, num_args = 3, value_names = ["N", "LO", "HI"])]
    hypersimplex: Option<Vec<usize>>,
}

impl DomainSource {
    fn load(&self) -> CliResult<SetFamily> {
        if let Some(p) = &self.domain {
            return read_json(p);
        }
        if let Some(n) = self.hypercube {
            return Ok(SetFamily::hypercube(GroundSize::new(n)?));
        }
        if let Some(w) = &self.chamber {
            return Ok(chamber_domain(&Permutation::parse_word(w)?));
        }
        if let Some(v) = &self.chamber_pair {
            return Ok(chamber_pair_domain(&Permutation::parse_word(&v[0])?, &Permutation::parse_word(&v[1])?)?);
        }
        let h = self.hypersimplex.as_ref().expect("clap requires one source");
        Ok(hypersimplex_domain(h[0], h[1], h[2])?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Relations between two sets, e.g. `separation 1,3 2 --n 4`.
    Separation {
        a: String,
        b: String,
        #[arg(long)]
        n: usize,
    },
    /// Every maximal separated collection inside a domain.
    Enumerate {
        #[command(flatten)]
        source: DomainSource,
        #[arg(long, value_enum, default_value = "weak")]
        relation: RelationArg,
        /// Only count collections by size.
        #[arg(long)]
        count: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Whether all maximal collections of a domain have the same size.
    Purity {
        #[command(flatten)]
        source: DomainSource,
        #[arg(long, value_enum, default_value = "weak")]
        relation: RelationArg,
    },
    /// The combi (or, with --strong, the rhombus tiling) of a maximal collection.
    BuildCombi {
        #[arg(long, required_unless_present = "intervals")]
        family: Option<PathBuf>,
        /// The interval family of [N] instead of a file.
        #[arg(long, value_name = "N", conflicts_with = "family")]
        intervals: Option<usize>,
        #[arg(long)]
        strong: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One lowering or raising flip, or the list of available ones.
    Flip {
        #[arg(long)]
        combi: PathBuf,
        #[arg(long, value_enum)]
        op: Option<FlipOp>,
        /// The base set Y.
        #[arg(long, value_name = "SET")]
        base: Option<String>,
        /// The three types, e.g. 1,2,3.
        #[arg(long, value_name = "I,J,K")]
        ijk: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lowering flips down to the interval combi, with the trace.
    Descend {
        #[arg(long)]
        combi: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Contracts a combi, writing the smaller combi and its legal path.
    Contract {
        #[arg(long)]
        combi: PathBuf,
        #[arg(long, value_enum, default_value = "last")]
        side: Side,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expands a combi along a legal path.
    Expand {
        #[arg(long)]
        combi: PathBuf,
        #[arg(long)]
        path: PathBuf,
        #[arg(long, value_enum, default_value = "last")]
        side: Side,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cyclic and graph patterns.
    Pattern {
        #[command(subcommand)]
        action: PatternCommand,
    },
    /// Runs the acceptance battery and prints its report.
    Verify {
        #[arg(long, required = true)]
        paper_suite: bool,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SVG drawing of a combi, rhombus tiling, pattern or split.
    Render {
        #[arg(long, group = "object")]
        combi: Option<PathBuf>,
        #[arg(long, group = "object")]
        rhombus: Option<PathBuf>,
        /// A pattern on its own, or the cut of --combi along it.
        #[arg(long)]
        pattern: Option<PathBuf>,
        #[arg(long, value_enum)]
        half: Option<Half>,
        #[arg(long)]
        no_shading: bool,
        #[arg(long)]
        no_labels: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PatternCommand {
    /// Simple, semi-simple, generalized or self-crossing.
    Classify {
        #[arg(long)]
        pattern: PathBuf,
    },
    /// The sets inside and outside the curve.
    Domains {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, value_enum, default_value = "weak")]
        relation: RelationArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Complementarity and purity of both domains (or of every face of --graph).
    Verify {
        #[arg(long, group = "what", required = true)]
        pattern: Option<PathBuf>,
        #[arg(long, group = "what")]
        graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "weak")]
        relation: RelationArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cuts a combi along a pattern and writes both halves.
    Split {
        #[arg(long)]
        combi: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn gens(n: usize) -> CliResult<Generators> {
    Ok(Generators::default_for(n)?)
}

fn parse_ijk(s: &str) -> CliResult<(usize, usize, usize)> {
    let v: Vec<usize> = s
        .split(',')
        .map(|e| e.trim().parse().map_err(|_| CliError::Usage(format!("bad type {e:?} in {s:?}"))))
        .collect::<CliResult<_>>()?;
    match v[..] {
        [i, j, k] => Ok((i, j, k)),
        _ => Err(CliError::Usage(format!("expected three types, got {s:?}"))),
    }
}

fn separation(a: &str, b: &str, n: usize) -> CliResult<String> {
    let g = GroundSize::new(n)?;
    let (a, b) = (parse_set(a)?, parse_set(b)?);
    g.check(a)?;
    g.check(b)?;
    let mut rel = serde_json::Map::new();
    if a != b {
        for kind in BaseRelation::ALL {
            rel.insert(format!("{}_ab", kind.name()), base_relation(g, kind, a, b)?.into());
            rel.insert(format!("{}_ba", kind.name()), base_relation(g, kind, b, a)?.into());
        }
    }
    let v = json!({
        "a": a,
        "b": b,
        "weak": Separation::Weak.holds(a, b),
        "strong": Separation::Strong.holds(a, b),
        "relations": rel,
    });
    Ok(to_json(&v))
}

fn purity(source: &DomainSource, relation: Separation) -> CliResult<String> {
    let s = summarize_maximal(&source.load()?, relation)?;
    let ranks: Vec<String> = s.ranks().iter().map(|r| r.to_string()).collect();
    Ok(if s.pure {
        format!("pure, rank {}\n", ranks[0])
    } else {
        format!("not pure, ranks {}\n", ranks.join(","))
    })
}

fn build(family: Option<&Path>, intervals: Option<usize>, strong: bool) -> CliResult<String> {
    let f: SetFamily = match (family, intervals) {
        (Some(p), _) => read_json(p)?,
        (None, Some(n)) => SetFamily::intervals(GroundSize::new(n)?),
        (None, None) => return Err(CliError::Usage("build-combi needs --family or --intervals".into())),
    };
    if strong {
        let t = from_s_collection(&f)?;
        return Ok(to_json(&t));
    }
    let k = from_w_collection(&f)?;
    validate_combi(&k)?;
    Ok(to_json(&k))
}

fn flip(combi: &Path, op: Option<FlipOp>, base: Option<&str>, ijk: Option<&str>, list: bool) -> CliResult<String> {
    let k: Combi = read_json(combi)?;
    if list {
        let steps: Vec<FlipStep> = find_w_configs(&k)
            .iter()
            .map(FlipStep::lower)
            .chain(find_m_configs(&k).iter().map(FlipStep::raise))
            .collect();
        return Ok(to_json(&steps));
    }
    let (Some(op), Some(base), Some(ijk)) = (op, base, ijk) else {
        return Err(CliError::Usage("flip needs --op, --base and --ijk (or --list)".into()));
    };
    let y = parse_set(base)?;
    let (i, j, kk) = parse_ijk(ijk)?;
    let next = match op {
        FlipOp::Lower => lowering_flip(&k, &WConfig::new(y, i, j, kk)?)?,
        FlipOp::Raise => raising_flip(&k, &MConfig::new(y, i, j, kk)?)?,
    };
    Ok(to_json(&next))
}

fn descend(combi: &Path) -> CliResult<String> {
    let k: Combi = read_json(combi)?;
    let (steps, last) = descend_to_minimum(&k)?;
    Ok(to_json(&json!({ "steps": steps, "final": last })))
}

fn contract(combi: &Path, side: Side) -> CliResult<String> {
    let k: Combi = read_json(combi)?;
    let (small, path) = match side {
        Side::Last => n_contract(&k)?,
        Side::First => one_contract(&k)?,
    };
    Ok(to_json(&json!({ "combi": small, "path": path })))
}

fn expand(combi: &Path, path: &Path, side: Side) -> CliResult<String> {
    let k: Combi = read_json(combi)?;
    let p: LegalPath = read_json(path)?;
    let big = match side {
        Side::Last => n_expand(&k, &p)?,
        Side::First => one_expand(&k, &p)?,
    };
    Ok(to_json(&big))
}

fn pattern(action: &PatternCommand) -> CliResult<(String, Option<&Path>, bool)> {
    match action {
        PatternCommand::Classify { pattern } => {
            let p: CyclicPattern = read_json(pattern)?;
            let class = classify_pattern(&p, &gens(p.n())?)?;
            let q = forbidden_quadruple(&p);
            Ok((to_json(&json!({ "pattern": p.to_string(), "class": class, "forbidden": q })), None, true))
        }
        PatternCommand::Domains { pattern, relation, out } => {
            let p: CyclicPattern = read_json(pattern)?;
            let d = domains_with(&p, &gens(p.n())?, (*relation).into())?;
            Ok((to_json(&d), out.as_deref(), true))
        }
        PatternCommand::Verify {
            pattern,
            graph,
            relation,
            out,
        } => {
            if let Some(g) = graph {
                let h: GraphPattern = read_json(g)?;
                let r = verify_face_domains(&h, &gens(h.n())?)?;
                return Ok((to_json(&json!({ "holds": r.holds(), "report": r })), out.as_deref(), r.holds()));
            }
            let p: CyclicPattern = read_json(pattern.as_ref().expect("clap requires one input"))?;
            let v = verify_pattern(&p, &gens(p.n())?, (*relation).into())?;
            Ok((to_json(&json!({ "holds": v.holds(), "verdict": v })), out.as_deref(), v.holds()))
        }
        PatternCommand::Split { combi, pattern, out } => {
            let k: Combi = read_json(combi)?;
            let p: CyclicPattern = read_json(pattern)?;
            let (a, b) = split_quasi(&k, &p)?;
            Ok((to_json(&json!({ "inside": a, "outside": b })), out.as_deref(), true))
        }
    }
}

fn quasi_half(k: &Combi, p: &CyclicPattern, half: Half) -> CliResult<QuasiCombi> {
    Ok(match half {
        Half::Whole => zonotile::patterns::cut_along(k, p)?,
        Half::Inside => split_quasi(k, p)?.0,
        Half::Outside => split_quasi(k, p)?.1,
    })
}

fn render(combi: Option<&Path>, rhombus: Option<&Path>, pattern: Option<&Path>, half: Option<Half>, style: &RenderStyle) -> CliResult<String> {
    match (combi, rhombus, pattern) {
        (Some(c), None, Some(p)) => {
            let k: Combi = read_json(c)?;
            let p: CyclicPattern = read_json(p)?;
            Ok(render_quasi(&quasi_half(&k, &p, half.unwrap_or(Half::Whole))?, style))
        }
        (Some(c), None, None) => Ok(render_combi(&read_json(c)?, style)),
        (None, Some(r), None) => {
            let t: RhombusTiling = read_json(r)?;
            Ok(render_rhombus(&t, style))
        }
        (None, None, Some(p)) => Ok(render_pattern(&read_json(p)?, style)),
        _ => Err(CliError::Usage("render one of --combi, --rhombus, --pattern, or --combi with --pattern".into())),
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    let ok = ExitCode::SUCCESS;
    match cli.command {
        Command::Separation { a, b, n } => emit(None, &separation(&a, &b, n)?)?,
        Command::Enumerate {
            source,
            relation,
            count,
            out,
        } => {
            let d = source.load()?;
            let text = if count {
                to_json(&summarize_maximal(&d, relation.into())?)
            } else {
                to_json(&enumerate_maximal(&d, relation.into())?)
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Purity { source, relation } => emit(None, &purity(&source, relation.into())?)?,
        Command::BuildCombi {
            family,
            intervals,
            strong,
            out,
        } => emit(out.as_deref(), &build(family.as_deref(), intervals, strong)?)?,
        Command::Flip {
            combi,
            op,
            base,
            ijk,
            list,
            out,
        } => emit(out.as_deref(), &flip(&combi, op, base.as_deref(), ijk.as_deref(), list)?)?,
        Command::Descend { combi, out } => emit(out.as_deref(), &descend(&combi)?)?,
        Command::Contract { combi, side, out } => emit(out.as_deref(), &contract(&combi, side)?)?,
        Command::Expand { combi, path, side, out } => emit(out.as_deref(), &expand(&combi, &path, side)?)?,
        Command::Pattern { action } => {
            let (text, out, holds) = pattern(&action)?;
            emit(out, &text)?;
            if !holds {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Verify {
            paper_suite: _,
            max_n,
            seed,
            jobs,
            out,
        } => {
            let r = run_suite(&SuiteConfig { max_n, seed, jobs })?;
            emit(out.as_deref(), &to_json(&r))?;
            if !r.passed {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Render {
            combi,
            rhombus,
            pattern,
            half,
            no_shading,
            no_labels,
            out,
        } => {
            let style = RenderStyle {
                shade_lenses: !no_shading,
                labels: !no_labels,
                ..RenderStyle::default()
            };
            emit(out.as_deref(), &render(combi.as_deref(), rhombus.as_deref(), pattern.as_deref(), half, &style)?)?;
        }
    }
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
