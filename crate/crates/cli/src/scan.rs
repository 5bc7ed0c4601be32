//! `scan`: principal-form counts per window, with checkpoint and resume.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::Args;
use collatz_forms::stopping::{
    scan_window, summarize, window_bounds, write_principal_csv, write_window_csv, ScanWindowStats,
    WindowScan, WindowSummary, DEFAULT_WINDOW, SCAN_STEP_LIMIT,
};
use collatz_forms::Nat;
use rayon::prelude::*;

use crate::checkpoint::{self, Header, Writer};
use crate::{parse_expr, CliError};

#[derive(Debug, Args)]
pub struct ScanArgs {
    pub lo: String,
    pub hi: String,
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    pub window: u64,
    /// Window CSV destination (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Principal-form CSV destination
    #[arg(long, conflicts_with = "resume")]
    pub forms: Option<PathBuf>,
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Skip windows already recorded in the checkpoint
    #[arg(long, requires = "checkpoint")]
    pub resume: bool,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

fn create(path: &PathBuf) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn render_summary(s: &WindowSummary) -> String {
    let sample = s
        .std_sample
        .map_or_else(|| "-".to_string(), |v| format!("{v:.2}"));
    format!(
        "windows {}\ntotal {}\nmean {:.2}\nstd (population) {:.2}\nstd (sample) {}\nmax {}\nmin {}\n",
        s.windows, s.total, s.mean, s.std_population, sample, s.max, s.min
    )
}

pub fn run(args: &ScanArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let lo = parse_expr(&args.lo)?;
    let hi = parse_expr(&args.hi)?;
    if args.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let bounds = window_bounds(&lo, &hi, args.window)?;
    let header = Header::new(&lo, &hi, args.window);

    let done = match (&args.checkpoint, args.resume) {
        (Some(path), true) => checkpoint::load(path, &header)?,
        _ => Default::default(),
    };
    let writer = match &args.checkpoint {
        Some(path) if args.resume => Some(Writer::append_to(path, &header)?),
        Some(path) => Some(Writer::create(path, &header)?),
        None => None,
    };

    let todo: Vec<&(Nat, Nat)> = bounds
        .iter()
        .filter(|(start, _)| !done.contains_key(start))
        .collect();
    let work = |(start, end): &(Nat, Nat)| -> Result<WindowScan, CliError> {
        let scan = scan_window(start, end, SCAN_STEP_LIMIT)?;
        // Incomplete windows are not recorded so a resume retries them.
        if let (Some(w), true) = (&writer, scan.unresolved.is_empty()) {
            w.record(start, scan.stats.principal_count)?;
        }
        Ok(scan)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| CliError::Io(format!("thread pool: {e}")))?;
    let scans: Vec<WindowScan> =
        pool.install(|| todo.par_iter().map(|b| work(b)).collect::<Result<_, _>>())?;

    let mut fresh = scans.into_iter().peekable();
    let mut windows = Vec::with_capacity(bounds.len());
    let mut forms = Vec::new();
    let mut unresolved = Vec::new();
    for (start, end) in &bounds {
        if let Some(&count) = done.get(start) {
            windows.push(ScanWindowStats {
                window_start: start.clone(),
                window_end: end.clone(),
                principal_count: count,
            });
            continue;
        }
        let scan = fresh.next().expect("one scan per pending window");
        debug_assert_eq!(&scan.stats.window_start, start);
        windows.push(scan.stats);
        forms.extend(scan.forms);
        unresolved.extend(scan.unresolved);
    }

    if let Some(path) = &args.forms {
        let mut f = create(path)?;
        write_principal_csv(&mut f, &forms).and_then(|_| f.flush())?;
    }
    let summary = summarize(&windows)
        .map(|s| render_summary(&s))
        .unwrap_or_default();
    match &args.out {
        Some(path) => {
            let mut f = create(path)?;
            write_window_csv(&mut f, &windows).and_then(|_| f.flush())?;
            out.write_all(summary.as_bytes())?;
        }
        None => {
            write_window_csv(&mut *out, &windows)?;
            eprint!("{summary}");
        }
    }
    if unresolved.is_empty() {
        return Ok(0);
    }
    let shown: Vec<String> = unresolved
        .iter()
        .take(10)
        .map(ToString::to_string)
        .collect();
    eprintln!(
        "{} numbers had no stopping time within {SCAN_STEP_LIMIT} steps; their windows are undercounted: {}",
        unresolved.len(),
        shown.join(", ")
    );
    Ok(3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_text() {
        let s = WindowSummary {
            windows: 2,
            total: 20,
            mean: 10.0,
            std_population: 1.0,
            std_sample: Some(std::f64::consts::SQRT_2),
            max: 11,
            min: 9,
        };
        assert_eq!(
            render_summary(&s),
            "windows 2\ntotal 20\nmean 10.00\nstd (population) 1.00\nstd (sample) 1.41\nmax 11\nmin 9\n"
        );
    }
}
