//! Range scans counting principal forms per window.
//!
//! Windows are `[k·W + 1, (k + 1)·W]`, clipped to the requested range. Each
//! number is classified independently, so any partition of the windows across
//! threads yields the same report.

use std::io::{self, Write};

use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{principal_form_of, principal_form_of_one, PrincipalForm};
use crate::sequence::stopping_time_u64;
use crate::{require_at_least, Error, Nat, Outcome, Result};

pub const DEFAULT_WINDOW: u64 = 10_000;
pub const WINDOW_CSV_HEADER: &str = "window_start,window_end,principal_count";
pub const PRINCIPAL_CSV_HEADER: &str = "offset,E,stopping_time";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScanWindowStats {
    pub window_start: Nat,
    pub window_end: Nat,
    pub principal_count: u64,
}

/// Everything one window produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowScan {
    pub stats: ScanWindowStats,
    pub forms: Vec<PrincipalForm>,
    /// Numbers whose stopping time was not found within the step limit.
    pub unresolved: Vec<Nat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScanReport {
    pub forms: Vec<PrincipalForm>,
    pub windows: Vec<ScanWindowStats>,
    pub unresolved: Vec<Nat>,
}

impl ScanReport {
    fn merge(scans: Vec<WindowScan>) -> Self {
        let mut report = ScanReport::default();
        for scan in scans {
            report.forms.extend(scan.forms);
            report.unresolved.extend(scan.unresolved);
            report.windows.push(scan.stats);
        }
        report
    }
}

/// Window bounds covering `lo..=hi`, in ascending order.
pub fn window_bounds(lo: &Nat, hi: &Nat, window: u64) -> Result<Vec<(Nat, Nat)>> {
    require_at_least("scan", lo, 1)?;
    if window == 0 {
        return Err(Error::ZeroWindow);
    }
    if lo > hi {
        return Err(Error::EmptyRange {
            lo: lo.clone(),
            hi: hi.clone(),
        });
    }
    let w = Nat::from(window);
    let mut k = (lo - 1u32) / &w;
    let last = (hi - 1u32) / &w;
    let mut out = Vec::new();
    while k <= last {
        let start = (&k * &w + 1u32).max(lo.clone());
        let end = ((&k + 1u32) * &w).min(hi.clone());
        out.push((start, end));
        k += 1u32;
    }
    Ok(out)
}

/// Classifies every number in `start..=end`.
pub fn scan_window(start: &Nat, end: &Nat, step_limit: u64) -> Result<WindowScan> {
    require_at_least("scan", start, 1)?;
    let mut forms = Vec::new();
    let mut unresolved = Vec::new();
    match (start.to_u64(), end.to_u64()) {
        (Some(s), Some(e)) => {
            for c in s..=e {
                let found = match c {
                    1 => Outcome::Found(Some(principal_form_of_one())),
                    _ => stopping_time_u64(c, step_limit)?.map(|stop| small_principal(c, &stop)),
                };
                match found {
                    Outcome::Found(Some(form)) => forms.push(form),
                    Outcome::Found(None) => {}
                    Outcome::NotFoundWithinLimit { .. } => unresolved.push(Nat::from(c)),
                }
            }
        }
        _ => {
            let mut c = start.clone();
            while c <= *end {
                match principal_form_of(&c, step_limit)? {
                    Outcome::Found(Some(form)) => forms.push(form),
                    Outcome::Found(None) => {}
                    Outcome::NotFoundWithinLimit { .. } => unresolved.push(c.clone()),
                }
                c += 1u32;
            }
        }
    }
    Ok(WindowScan {
        stats: ScanWindowStats {
            window_start: start.clone(),
            window_end: end.clone(),
            principal_count: forms.len() as u64,
        },
        forms,
        unresolved,
    })
}

fn small_principal(c: u64, stop: &crate::sequence::StopResult) -> Option<PrincipalForm> {
    let e = stop.even_steps;
    let principal = e >= 64 || c <= 1u64 << e;
    principal.then(|| PrincipalForm {
        offset: if e >= 64 {
            Nat::from(c)
        } else {
            Nat::from(c % (1u64 << e))
        },
        even_steps: e,
        stopping_time: stop.stopping_time,
    })
}

/// Sequential scan of `lo..=hi`.
pub fn scan_principal_forms(lo: &Nat, hi: &Nat, window: u64) -> Result<ScanReport> {
    let scans = window_bounds(lo, hi, window)?
        .iter()
        .map(|(s, e)| scan_window(s, e, super::SCAN_STEP_LIMIT))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport::merge(scans))
}

/// Scan of `lo..=hi` spread over `jobs` worker threads.
pub fn scan_principal_forms_with_jobs(
    lo: &Nat,
    hi: &Nat,
    window: u64,
    jobs: usize,
) -> Result<ScanReport> {
    if jobs <= 1 {
        return scan_principal_forms(lo, hi, window);
    }
    let bounds = window_bounds(lo, hi, window)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let scans = pool.install(|| {
        bounds
            .par_iter()
            .map(|(s, e)| scan_window(s, e, super::SCAN_STEP_LIMIT))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(ScanReport::merge(scans))
}

/// Statistics of principal counts across windows.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowSummary {
    pub windows: usize,
    pub total: u64,
    pub mean: f64,
    pub std_population: f64,
    /// `None` for a single window.
    pub std_sample: Option<f64>,
    pub max: u64,
    pub min: u64,
}

pub fn summarize(windows: &[ScanWindowStats]) -> Option<WindowSummary> {
    let counts: Vec<u64> = windows.iter().map(|w| w.principal_count).collect();
    let len = counts.len();
    if len == 0 {
        return None;
    }
    let total: u64 = counts.iter().sum();
    let mean = total as f64 / len as f64;
    // Sum of squared deviations from exact integers: Σx² - (Σx)²/n.
    let sum_sq: u128 = counts.iter().map(|&c| u128::from(c) * u128::from(c)).sum();
    let total128 = u128::from(total);
    let scaled = sum_sq * len as u128 - total128 * total128;
    let ss = scaled as f64 / len as f64;
    Some(WindowSummary {
        windows: len,
        total,
        mean,
        std_population: (ss / len as f64).sqrt(),
        std_sample: (len > 1).then(|| (ss / (len - 1) as f64).sqrt()),
        max: *counts.iter().max().expect("nonempty"),
        min: *counts.iter().min().expect("nonempty"),
    })
}

pub fn write_window_csv<W: Write>(mut out: W, windows: &[ScanWindowStats]) -> io::Result<()> {
    writeln!(out, "{WINDOW_CSV_HEADER}")?;
    for w in windows {
        writeln!(
            out,
            "{},{},{}",
            w.window_start, w.window_end, w.principal_count
        )?;
    }
    Ok(())
}

pub fn write_principal_csv<W: Write>(mut out: W, forms: &[PrincipalForm]) -> io::Result<()> {
    writeln!(out, "{PRINCIPAL_CSV_HEADER}")?;
    for f in forms {
        writeln!(out, "{},{},{}", f.offset, f.even_steps, f.stopping_time)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn windows_are_aligned_and_clipped() {
        assert_eq!(
            window_bounds(&n(1), &n(10_000), 10_000).unwrap(),
            vec![(n(1), n(10_000))]
        );
        assert_eq!(
            window_bounds(&n(9_990), &n(20_005), 10_000).unwrap(),
            vec![
                (n(9_990), n(10_000)),
                (n(10_001), n(20_000)),
                (n(20_001), n(20_005))
            ]
        );
        assert_eq!(
            window_bounds(&n(1), &n(100), 10_000).unwrap(),
            vec![(n(1), n(100))]
        );
        assert!(matches!(
            window_bounds(&n(5), &n(4), 10),
            Err(Error::EmptyRange { .. })
        ));
        assert_eq!(window_bounds(&n(1), &n(4), 0), Err(Error::ZeroWindow));
        assert!(window_bounds(&n(0), &n(4), 10).is_err());
    }

    #[test]
    fn small_and_big_paths_agree() {
        let fast = scan_window(&n(1), &n(3_000), 100_000).unwrap();
        let mut slow_forms = Vec::new();
        for c in 1..=3_000u64 {
            if let Outcome::Found(Some(f)) = principal_form_of(&n(c), 100_000).unwrap() {
                slow_forms.push(f);
            }
        }
        assert_eq!(fast.forms, slow_forms);
    }

    #[test]
    fn first_hundred() {
        let report = scan_principal_forms(&n(1), &n(100), DEFAULT_WINDOW).unwrap();
        let rendered: Vec<String> = report.forms.iter().map(|f| f.form().to_string()).collect();
        assert_eq!(rendered[..4], ["4n+1", "2n", "16n+3", "128n+7"]);
        assert_eq!(report.windows.len(), 1);
        assert_eq!(report.windows[0].principal_count, 17);
        assert!(report.unresolved.is_empty());
    }

    #[test]
    fn parallel_matches_sequential() {
        let a = scan_principal_forms(&n(1), &n(50_000), 5_000).unwrap();
        let b = scan_principal_forms_with_jobs(&n(1), &n(50_000), 5_000, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn summary_statistics() {
        let ws: Vec<ScanWindowStats> = [2u64, 4, 4, 4, 5, 5, 7, 9]
            .iter()
            .enumerate()
            .map(|(i, &c)| ScanWindowStats {
                window_start: n(i as u64 * 10 + 1),
                window_end: n(i as u64 * 10 + 10),
                principal_count: c,
            })
            .collect();
        let s = summarize(&ws).unwrap();
        assert_eq!((s.total, s.max, s.min, s.windows), (40, 9, 2, 8));
        assert!((s.mean - 5.0).abs() < 1e-12);
        assert!((s.std_population - 2.0).abs() < 1e-12);
        assert!((s.std_sample.unwrap() - (32.0f64 / 7.0).sqrt()).abs() < 1e-12);
        assert!(summarize(&[]).is_none());
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_window_csv(
            &mut buf,
            &[ScanWindowStats {
                window_start: n(1),
                window_end: n(100),
                principal_count: 17,
            }],
        )
        .unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "window_start,window_end,principal_count\n1,100,17\n"
        );
        let mut buf = Vec::new();
        write_principal_csv(
            &mut buf,
            &[PrincipalForm {
                offset: n(27),
                even_steps: 59,
                stopping_time: 96,
            }],
        )
        .unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "offset,E,stopping_time\n27,59,96\n"
        );
    }
}
