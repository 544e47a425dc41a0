//! The `mtprof` command line: one subcommand per task.
//!
//! Exit status is 0 on success, 1 for data errors (unreadable or malformed
//! input, shape mismatches) and 2 for usage errors.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bleu::{self, BleuConfig, Smoothing};
use crate::corpus::{match_eval_subset, Document, ReferenceSet};
use crate::error::{Error, Result};
use crate::report::{Format, ReportTable};
use crate::significance::{approx_randomization, BleuMetric, TerMetric, DEFAULT_ALPHA};
use crate::taxonomy::{profile_system_detailed, ErrorProfile};
use crate::ter::{self, EditOp, MatchMode, ShiftRecord, TerAggregation, TerConfig};

/// Environment variable holding the default worker thread count.
pub const THREADS_ENV: &str = "MTPROF_THREADS";

#[derive(Parser, Debug)]
#[command(name = "mtprof", version, about = "MT error profiling: TER/mTER/lmmTER, BLEU, error categories, significance")]
pub struct Cli {
    /// Worker threads for segment-level work (0 = all cores).
    #[arg(long, global = true, env = THREADS_ENV, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Corpus BLEU or TER (mTER with several references, lmmTER with --lemma).
    Score(ScoreArgs),
    /// Error-category profile of one system against post-edits.
    Analyze(AnalyzeArgs),
    /// Baseline-normalized error table with delta columns.
    Report(ReportArgs),
    /// Paired approximate randomization test between two systems.
    Compare(CompareArgs),
    /// Candidate segments whose tokens exactly match an anchor segment.
    Subset(SubsetArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MetricArg {
    Bleu,
    Ter,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FormatArg {
    Tsv,
    Json,
    Md,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum AggregateArg {
    Pooled,
    SegmentMean,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SmoothingArg {
    None,
    AddOne,
}

#[derive(Args, Debug)]
struct MatchingArgs {
    /// Match lemmas instead of surface forms (implies --annotated).
    #[arg(long)]
    lemma: bool,
    /// Inputs are in the token<TAB>lemma<TAB>pos format.
    #[arg(long)]
    annotated: bool,
    #[arg(long)]
    ignore_case: bool,
    /// BLEU smoothing.
    #[arg(long, value_enum, default_value = "none")]
    smoothing: SmoothingArg,
}

impl MatchingArgs {
    fn annotated(&self) -> bool {
        self.lemma || self.annotated
    }

    fn ter_config(&self) -> TerConfig {
        TerConfig {
            mode: if self.lemma {
                MatchMode::Lemma
            } else {
                MatchMode::Surface
            },
            ignore_case: self.ignore_case,
            ..TerConfig::default()
        }
    }

    fn bleu_config(&self) -> BleuConfig {
        BleuConfig {
            smoothing: match self.smoothing {
                SmoothingArg::None => Smoothing::None,
                SmoothingArg::AddOne => Smoothing::AddOne,
            },
            ignore_case: self.ignore_case,
        }
    }
}

#[derive(Args, Debug)]
struct ScoreArgs {
    #[arg(long, value_enum)]
    metric: MetricArg,
    #[arg(long)]
    hyp: PathBuf,
    #[arg(long = "ref", required = true, num_args = 1..)]
    refs: Vec<PathBuf>,
    #[command(flatten)]
    matching: MatchingArgs,
    /// Write per-segment edit scripts as JSON lines (TER only).
    #[arg(long)]
    trace: Option<PathBuf>,
    /// How segment TER results are combined.
    #[arg(long, value_enum, default_value = "pooled")]
    aggregate: AggregateArg,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[arg(long)]
    hyp: PathBuf,
    #[arg(long = "pe", required = true, num_args = 1..)]
    postedits: Vec<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    /// System name recorded in the profile (default: hypothesis file stem).
    #[arg(long)]
    system: Option<String>,
    #[arg(long)]
    ignore_case: bool,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[arg(long, required = true, num_args = 1..)]
    profiles: Vec<PathBuf>,
    #[arg(long)]
    baseline: String,
    #[arg(long, value_enum, default_value = "tsv")]
    format: FormatArg,
    /// Caption for the table, e.g. the architecture name.
    #[arg(long)]
    label: Option<String>,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[arg(long, value_enum)]
    metric: MetricArg,
    #[arg(long)]
    sys_a: PathBuf,
    #[arg(long)]
    sys_b: PathBuf,
    #[arg(long = "ref", required = true, num_args = 1..)]
    refs: Vec<PathBuf>,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 12345)]
    seed: u64,
    #[command(flatten)]
    matching: MatchingArgs,
}

#[derive(Args, Debug)]
struct SubsetArgs {
    #[arg(long)]
    candidate: PathBuf,
    #[arg(long)]
    anchors: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

/// Parses `args`, runs the command writing its report to `out`, and returns
/// the exit status. Errors are printed to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    if cli.threads > 0 {
        // fails only if a pool already exists, which is fine
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    let result = match &cli.command {
        Command::Score(a) => cmd_score(a, out),
        Command::Analyze(a) => cmd_analyze(a, out),
        Command::Report(a) => cmd_report(a, out),
        Command::Compare(a) => cmd_compare(a, out),
        Command::Subset(a) => cmd_subset(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run(std::env::args_os(), &mut lock)
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    std::fs::write(path, contents).map_err(io_err(path))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(io_err(Path::new("<stdout>")))
}

fn load_refs(paths: &[PathBuf], annotated: bool) -> Result<ReferenceSet> {
    let docs = paths
        .iter()
        .map(|p| Document::read(p, annotated))
        .collect::<Result<Vec<_>>>()?;
    ReferenceSet::new(docs)
}

fn load_hyp(path: &Path, refs: &ReferenceSet, annotated: bool) -> Result<Document> {
    let doc = Document::read(path, annotated)?;
    refs.check_shape(&doc).map_err(|e| e.in_file(path))?;
    Ok(doc)
}

fn ter_label(config: &TerConfig, refs: usize) -> &'static str {
    match (config.mode, refs) {
        (MatchMode::Lemma, _) => "lmmTER",
        (MatchMode::Surface, 1) => "TER",
        (MatchMode::Surface, _) => "mTER",
    }
}

#[derive(Serialize)]
struct TraceLine<'a> {
    segment: usize,
    chosen_ref: usize,
    edits: u64,
    denominator: f64,
    shifts: &'a [ShiftRecord],
    ops: &'a [EditOp],
}

fn cmd_score(args: &ScoreArgs, out: &mut dyn Write) -> Result<()> {
    let annotated = args.matching.annotated();
    let refs = load_refs(&args.refs, annotated)?;
    let hyps = load_hyp(&args.hyp, &refs, annotated)?;
    match args.metric {
        MetricArg::Bleu => {
            let score = bleu::corpus_bleu_with(&hyps, &refs, &args.matching.bleu_config())?;
            emit(out, &format!("{}\n", score.summary_line()))
        }
        MetricArg::Ter => {
            let config = args.matching.ter_config();
            let segments = ter::segment_ters(&hyps, &refs, &config)?;
            if let Some(path) = &args.trace {
                let file = File::create(path).map_err(io_err(path))?;
                let mut w = BufWriter::new(file);
                for seg in &segments {
                    let line = TraceLine {
                        segment: seg.script.segment_id,
                        chosen_ref: seg.chosen_ref,
                        edits: seg.score.edits,
                        denominator: seg.score.denominator,
                        shifts: &seg.script.shifts,
                        ops: &seg.script.ops,
                    };
                    let json = serde_json::to_string(&line).expect("trace serializes");
                    writeln!(w, "{json}").map_err(io_err(path))?;
                }
                w.flush().map_err(io_err(path))?;
            }
            let pooled = ter::TerScore::sum(segments.iter().map(|s| &s.score));
            let score = match args.aggregate {
                AggregateArg::Pooled => pooled.score,
                AggregateArg::SegmentMean => ter::aggregate(&segments, TerAggregation::SegmentMean),
            };
            emit(
                out,
                &format!(
                    "{} = {:.2} (edits={}, ref_len={:.2}, segments={})\n",
                    ter_label(&config, refs.count()),
                    100.0 * score,
                    pooled.edits,
                    pooled.denominator,
                    segments.len()
                ),
            )
        }
    }
}

fn cmd_analyze(args: &AnalyzeArgs, out: &mut dyn Write) -> Result<()> {
    let refs = load_refs(&args.postedits, true)?;
    let hyps = load_hyp(&args.hyp, &refs, true)?;
    let system = args.system.clone().unwrap_or_else(|| {
        args.hyp
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "system".into())
    });
    let config = TerConfig::lemma().with_ignore_case(args.ignore_case);
    let (profile, _) = profile_system_detailed(&system, &hyps, &refs, &config)?;
    let mut json = serde_json::to_string_pretty(&profile).expect("profile serializes");
    json.push('\n');
    write_file(&args.out, json.as_bytes())?;
    emit(
        out,
        &format!(
            "{}: lexical={} morph={} reordering={} morph_reo={} total={}\n",
            profile.system,
            profile.counts.lexical,
            profile.counts.morph,
            profile.counts.reordering,
            profile.counts.morph_reo,
            profile.total
        ),
    )
}

fn read_profile(path: &Path) -> Result<ErrorProfile> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let profile: ErrorProfile = serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    }.in_file(path))?;
    if profile.total != profile.counts.total() {
        return Err(Error::Config {
            path: path.to_path_buf(),
            message: format!(
                "total {} does not equal the category sum {}",
                profile.total,
                profile.counts.total()
            ),
        });
    }
    Ok(profile)
}

fn cmd_report(args: &ReportArgs, out: &mut dyn Write) -> Result<()> {
    let profiles = args
        .profiles
        .iter()
        .map(|p| read_profile(p))
        .collect::<Result<Vec<_>>>()?;
    let table = ReportTable::from_profiles(&profiles, &args.baseline, args.label.clone())?;
    let format = match args.format {
        FormatArg::Tsv => Format::Tsv,
        FormatArg::Json => Format::Json,
        FormatArg::Md => Format::Markdown,
    };
    let text = table.render(format);
    match &args.out {
        Some(path) => write_file(path, text.as_bytes()),
        None => emit(out, &text),
    }
}

fn cmd_compare(args: &CompareArgs, out: &mut dyn Write) -> Result<()> {
    let annotated = args.matching.annotated();
    let refs = load_refs(&args.refs, annotated)?;
    let sys_a = load_hyp(&args.sys_a, &refs, annotated)?;
    let sys_b = load_hyp(&args.sys_b, &refs, annotated)?;
    let result = match args.metric {
        MetricArg::Bleu => {
            let config = args.matching.bleu_config();
            let a = bleu::corpus_stats(&sys_a, &refs, &config)?;
            let b = bleu::corpus_stats(&sys_b, &refs, &config)?;
            let metric = BleuMetric {
                smoothing: config.smoothing,
            };
            approx_randomization(&metric, &a, &b, args.trials, args.seed)?
        }
        MetricArg::Ter => {
            let config = args.matching.ter_config();
            let stats = |d: &Document| -> Result<Vec<ter::TerScore>> {
                Ok(ter::segment_ters(d, &refs, &config)?
                    .into_iter()
                    .map(|s| s.score)
                    .collect())
            };
            approx_randomization(&TerMetric, &stats(&sys_a)?, &stats(&sys_b)?, args.trials, args.seed)?
        }
    };
    let name = match args.metric {
        MetricArg::Bleu => "BLEU",
        MetricArg::Ter => ter_label(&args.matching.ter_config(), refs.count()),
    };
    let marker = if result.is_significant(DEFAULT_ALPHA) {
        " ↑"
    } else {
        ""
    };
    let text = format!(
        "metric: {name}\nsystem A: {:.2}\nsystem B: {:.2}\ndiff (A - B): {:.2}\np-value: {:.4}{marker}\ntrials: {}\nseed: {}\n",
        100.0 * result.score_a,
        100.0 * result.score_b,
        100.0 * result.observed_diff,
        result.p_value,
        result.trials,
        result.seed,
    );
    emit(out, &text)
}

fn cmd_subset(args: &SubsetArgs, out: &mut dyn Write) -> Result<()> {
    let candidate = Document::read_plain(&args.candidate)?;
    let anchors = Document::read_plain(&args.anchors)?;
    let pairs = match_eval_subset(&candidate, &anchors);
    let mut tsv = String::new();
    for (c, a) in &pairs {
        tsv.push_str(&format!("{c}\t{a}\n"));
    }
    write_file(&args.out, tsv.as_bytes())?;
    emit(
        out,
        &format!(
            "{} of {} candidate segments matched\n",
            pairs.len(),
            candidate.len()
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        let mut sink = Vec::new();
        assert_eq!(run(["mtprof", "score", "--bogus"], &mut sink), 2);
    }

    #[test]
    fn labels() {
        assert_eq!(ter_label(&TerConfig::surface(), 1), "TER");
        assert_eq!(ter_label(&TerConfig::surface(), 9), "mTER");
        assert_eq!(ter_label(&TerConfig::lemma(), 9), "lmmTER");
    }
}
