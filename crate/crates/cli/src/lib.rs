//! The `weave` command line.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use weave_core::catalogue::{enumerate_fall_apart, resolve_name, species_rank, to_jsonl};
use weave_core::colouring::{
    is_perfect, make_colouring, obverse_pattern, reverse_pattern, stripable_thin, unstripe_with, ColouringKind,
    Unstripe, UnstripeSearch,
};
use weave_core::naming::name_of_isonemal;
use weave_core::render::{render, RenderFormat};
use weave_core::species::{species_class, species_signature};
use weave_core::symmetry::{is_isonemal, lattice_units, symmetry_group};
use weave_core::topology::{fall_apart_mode, hangs_together, liftable_sets, FallApartMode};
use weave_core::{parse_pattern, PeriodicPattern, Role};

#[derive(Parser, Debug)]
#[command(name = "weave", version, about = "Isonemal prefabrics: symmetry, striping and catalogues")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, species, isonemality and coherence of a design.
    Analyze { input: PathBuf },
    /// Symmetry group report of a design.
    Symmetries { input: PathBuf },
    /// Colour the strands and write the resulting pattern.
    Stripe {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = StripeMode::Thin)]
        mode: StripeMode,
        #[arg(long, default_value_t = 0)]
        phase: u8,
        #[arg(long, value_enum, default_value_t = View::Obverse)]
        view: View,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Whether a colouring of the strands is perfect.
    Perfect {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ColouringMode::Normal)]
        mode: ColouringMode,
        #[arg(long, default_value_t = 0)]
        phase: u8,
    },
    /// Whether and how a prefabric falls apart.
    Fallsapart { input: PathBuf },
    /// Catalogue the isonemal prefabrics of one order that fall apart.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = EnumerateMode::Thin)]
        mode: EnumerateMode,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Search for fabrics whose thin striping shows a pattern.
    Unstripe {
        input: PathBuf,
        /// Prefix of the candidate files; defaults to the input path without extension.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        torus: Option<usize>,
        #[arg(long, value_enum, default_value_t = Search::Correspondence)]
        search: Search,
    },
    /// Draw a design as PBM or SVG.
    Render {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
        /// Mark axes and centres of the symmetry group (SVG only).
        #[arg(long)]
        overlay: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StripeMode {
    Thin,
    Thick,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ColouringMode {
    Normal,
    Thin,
    Thick,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum View {
    Obverse,
    Reverse,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum EnumerateMode {
    Thin,
    Thick,
    Layer,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Search {
    Correspondence,
    Broad,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Pbm,
    Svg,
}

/// Bad flag values found after parsing.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 on a domain failure, 2 on a usage error.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(e) if e.is::<Usage>() => {
            eprintln!("weave: {e}");
            2
        }
        Err(e) => {
            eprintln!("weave: {}", format!("{e:#}").replace('\n', " "));
            1
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> anyhow::Result<i32> {
    match command {
        Command::Analyze { input } => analyze(&read(&input)?, out),
        Command::Symmetries { input } => symmetries(&read(&input)?, out),
        Command::Stripe {
            input,
            mode,
            phase,
            view,
            out: path,
        } => stripe(&read(&input)?, mode, phase, view, path.as_deref(), out),
        Command::Perfect { input, mode, phase } => perfect(&read(&input)?, mode, phase, out),
        Command::Fallsapart { input } => fallsapart(&read(&input)?, out),
        Command::Enumerate {
            order,
            mode,
            out: path,
            jobs,
        } => enumerate(order, mode, path.as_deref(), jobs, out),
        Command::Unstripe {
            input,
            out: prefix,
            torus,
            search,
        } => {
            let prefix = prefix.unwrap_or_else(|| input.with_extension(""));
            unstripe(&read(&input)?, &prefix, torus, search, out)
        }
        Command::Render {
            input,
            format,
            overlay,
            out: path,
        } => {
            let p = read(&input)?;
            let format = match format {
                Format::Pbm => RenderFormat::Pbm,
                Format::Svg => RenderFormat::Svg,
            };
            if overlay && format == RenderFormat::Pbm {
                return Err(Usage("--overlay needs --format svg".into()).into());
            }
            let g = overlay.then(|| symmetry_group(&p));
            emit(&render(&p, format, g.as_ref()), path.as_deref(), out)?;
            Ok(0)
        }
    }
}

fn read(path: &Path) -> anyhow::Result<PeriodicPattern> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_pattern(&text).with_context(|| format!("in {}", path.display()))
}

fn emit(bytes: &[u8], path: Option<&Path>, out: &mut dyn Write) -> anyhow::Result<()> {
    match path {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => out.write_all(bytes).map_err(Into::into),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn mode_label(m: FallApartMode) -> &'static str {
    match m {
        FallApartMode::None => "no",
        FallApartMode::Thin => "thin",
        FallApartMode::Thick => "thick",
        FallApartMode::Layer => "layer",
        FallApartMode::Other => "other",
    }
}

fn name_line(p: &PeriodicPattern, falls_apart: bool) -> String {
    let resolved = if falls_apart { resolve_name(p) } else { None };
    match resolved {
        Some((name, Some(alias))) if alias != name.to_string() => format!("name {name} (printed {alias})"),
        Some((name, _)) => format!("name {name}"),
        None => match name_of_isonemal(p, falls_apart) {
            Ok(name) => format!("name {name}"),
            Err(e) => format!("name none ({e})"),
        },
    }
}

fn analyze(p: &PeriodicPattern, out: &mut dyn Write) -> anyhow::Result<i32> {
    let order = p.order_of();
    let g = symmetry_group(p);
    let signature = species_signature(p);
    let isonemal = is_isonemal(p);
    let together = hangs_together(p);
    writeln!(out, "size {}x{}", p.width(), p.height())?;
    if p.width() != order.order || p.height() != order.order {
        writeln!(out, "order {}? no — order {}", p.width().max(p.height()), order.order)?;
    } else {
        writeln!(out, "order {}", order.order)?;
    }
    writeln!(out, "uniform strands {}", yes(order.uniform))?;
    writeln!(out, "group {}", g.crystal_type())?;
    writeln!(out, "lattice unit {}", g.lattice_unit().dimensions())?;
    writeln!(out, "class {}", species_class(&g, order.order).label())?;
    writeln!(out, "species {}", signature.label_or_unlabelled())?;
    if let Some(reason) = &signature.unlabelled_reason {
        writeln!(out, "unlabelled because {reason}")?;
    }
    writeln!(out, "isonemal {}", yes(isonemal))?;
    writeln!(out, "hangs together {}", yes(together))?;
    if !together {
        writeln!(out, "falls apart {}", mode_label(fall_apart_mode(p)))?;
    }
    writeln!(out, "thin striping perfect {}", yes(stripable_thin(p).is_stripable()))?;
    if isonemal {
        writeln!(out, "{}", name_line(p, !together))?;
    }
    Ok(0)
}

fn symmetries(p: &PeriodicPattern, out: &mut dyn Write) -> anyhow::Result<i32> {
    let g = symmetry_group(p);
    writeln!(out, "torus {}x{}", g.torus(), g.torus())?;
    writeln!(out, "group {}", g.crystal_type())?;
    let units = lattice_units(&g);
    writeln!(out, "lattice unit {}", units.unit.dimensions())?;
    writeln!(out, "side-preserving lattice unit {}", g.side_preserving_lattice_unit().dimensions())?;
    for (x, y) in units.alternates {
        writeln!(out, "alternative unit at ({x}, {y})")?;
    }
    writeln!(out, "elements modulo side-preserving translations:")?;
    out.write_all(g.report().as_bytes())?;
    writeln!(out, "axes and centres:")?;
    for f in g.inventory() {
        writeln!(out, "{f}")?;
    }
    Ok(0)
}

fn colouring_kind(mode: ColouringMode, phase: u8) -> anyhow::Result<ColouringKind> {
    match mode {
        ColouringMode::Normal => Ok(ColouringKind::Normal),
        ColouringMode::Thin if phase < 2 => Ok(ColouringKind::ThinStripe(phase)),
        ColouringMode::Thick if phase < 4 => Ok(ColouringKind::ThickStripe(phase)),
        _ => Err(Usage(format!("phase {phase} out of range for {mode:?} striping")).into()),
    }
}

fn stripe(
    d: &PeriodicPattern,
    mode: StripeMode,
    phase: u8,
    view: View,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> anyhow::Result<i32> {
    let kind = colouring_kind(
        match mode {
            StripeMode::Thin => ColouringMode::Thin,
            StripeMode::Thick => ColouringMode::Thick,
        },
        phase,
    )?;
    let c = make_colouring(kind, d.width());
    let pattern = match view {
        View::Obverse => obverse_pattern(d, &c),
        View::Reverse => reverse_pattern(d, &c),
    };
    let perfect = is_perfect(d, &c).verdict;
    let as_design = pattern.clone().with_role(Role::Design).reduced();
    let isonemal = is_isonemal(&as_design);
    let together = hangs_together(&as_design);
    let mut comments = vec![
        format!("{mode:?} striping phase {phase}, {view:?} view").to_lowercase(),
        format!("perfect {}", yes(perfect)),
        format!("isonemal {}", yes(isonemal)),
        format!("hangs together {}", yes(together)),
    ];
    if c.flagged {
        comments.push(format!("colouring does not repeat with period {}", d.width()));
    }
    if isonemal {
        comments.push(name_line(&as_design, !together));
    }
    let text = pattern.serialize_with_comments(&comments);
    if let Some(path) = path {
        fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
        for line in &comments {
            writeln!(out, "{line}")?;
        }
    } else {
        out.write_all(text.as_bytes())?;
    }
    Ok(0)
}

fn perfect(d: &PeriodicPattern, mode: ColouringMode, phase: u8, out: &mut dyn Write) -> anyhow::Result<i32> {
    let c = make_colouring(colouring_kind(mode, phase)?, d.width());
    let verdict = is_perfect(d, &c);
    match verdict.witness {
        None => writeln!(out, "perfect yes")?,
        Some(w) => writeln!(out, "perfect no; {w} mixes the strand colours")?,
    }
    if c.flagged {
        writeln!(out, "colouring does not repeat with period {}", d.width())?;
    }
    Ok(0)
}

fn fallsapart(d: &PeriodicPattern, out: &mut dyn Write) -> anyhow::Result<i32> {
    let mode = fall_apart_mode(d);
    writeln!(out, "hangs together {}", yes(mode == FallApartMode::None))?;
    if mode != FallApartMode::None {
        writeln!(out, "falls apart {}", mode_label(mode))?;
        for set in liftable_sets(d) {
            let names: Vec<String> = set.iter().map(|s| s.to_string()).collect();
            writeln!(out, "liftable {}", names.join(" "))?;
        }
    }
    Ok(0)
}

fn jobs_setting(jobs: Option<usize>) -> anyhow::Result<Option<usize>> {
    match std::env::var("WEAVE_JOBS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Usage(format!("WEAVE_JOBS must be a number, got {v:?}")).into()),
        Err(_) => Ok(jobs),
    }
}

fn enumerate(
    order: usize,
    mode: EnumerateMode,
    path: Option<&Path>,
    jobs: Option<usize>,
    out: &mut dyn Write,
) -> anyhow::Result<i32> {
    let mode = match mode {
        EnumerateMode::Thin => FallApartMode::Thin,
        EnumerateMode::Thick => FallApartMode::Thick,
        EnumerateMode::Layer => FallApartMode::Layer,
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs_setting(jobs)? {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| anyhow!("worker pool: {e}"))?;
    let entries = pool.install(|| enumerate_fall_apart(order, mode))?;
    let jsonl = to_jsonl(&entries);
    match path {
        Some(path) => {
            fs::write(path, &jsonl).with_context(|| format!("writing {}", path.display()))?;
            writeln!(out, "{} entries at order {order}", entries.len())?;
            let mut sets: Vec<(Option<u8>, &str, usize)> = Vec::new();
            for e in &entries {
                match sets.iter_mut().find(|(f, s, _)| *f == e.figure && *s == e.species_label()) {
                    Some((_, _, k)) => *k += 1,
                    None => sets.push((e.figure, e.species_label(), 1)),
                }
            }
            sets.sort_by_key(|(f, s, _)| (*f, species_rank(s)));
            for (figure, s, k) in sets {
                match figure {
                    Some(f) => writeln!(out, "figure {f} species {s}: {k}")?,
                    None => writeln!(out, "species {s}: {k}")?,
                }
            }
        }
        None => out.write_all(jsonl.as_bytes())?,
    }
    Ok(0)
}

fn unstripe(
    p: &PeriodicPattern,
    prefix: &Path,
    torus: Option<usize>,
    search: Search,
    out: &mut dyn Write,
) -> anyhow::Result<i32> {
    let search = match search {
        Search::Correspondence => UnstripeSearch::Correspondence,
        Search::Broad => UnstripeSearch::Broad,
    };
    match unstripe_with(p, torus, search)? {
        Unstripe::Candidates(candidates) => {
            writeln!(out, "{} candidate fabrics", candidates.len())?;
            for (k, c) in candidates.iter().enumerate() {
                let path = PathBuf::from(format!("{}-{}.wv", prefix.display(), k + 1));
                let together = hangs_together(c);
                let comments = [format!("candidate {} of {}", k + 1, candidates.len()), name_line(c, !together)];
                fs::write(&path, c.serialize_with_comments(&comments))
                    .with_context(|| format!("writing {}", path.display()))?;
                writeln!(out, "{} {}", path.display(), comments[1])?;
            }
            Ok(0)
        }
        Unstripe::Failure(diagnosis) => {
            writeln!(out, "FAILURE: {diagnosis}")?;
            Ok(1)
        }
    }
}
