//! Reference tables regenerated from the library.

use collatz_forms::cascades::{
    cascade_result_levels, cascade_transform, mcs, pmcs, seeds, transform_form, DEFAULT_PMCS_LIMIT,
};
use collatz_forms::columns::column_step_targets;
use collatz_forms::forms::{decompose, standard_form};
use collatz_forms::stopping::{
    admissible_stopping_times, even_steps_for_stopping, scan_principal_forms, DEFAULT_WINDOW,
};
use collatz_forms::{pow2, pow3, Nat, Outcome};
use num_traits::Zero;

use crate::CliError;

pub const TABLE_IDS: [u32; 12] = [1, 3, 4, 8, 9, 10, 11, 17, 18, 20, 21, 22];

/// Even-step counts above this are printed as `2^E`.
const PLAIN_POWER_LIMIT: u64 = 20;

/// Typo in the published minimum-base column.
const PUBLISHED_S21_BASE: &str = "18192";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
}

impl Table {
    fn new(title: &str, headers: &[&str]) -> Self {
        Table {
            title: title.to_string(),
            headers: headers.iter().map(ToString::to_string).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn render_text(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let mut out = format!("{}\n{}\n", self.title, line(&self.headers));
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out.push_str(&line(&rule));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
        for note in &self.notes {
            out.push_str(note);
            out.push('\n');
        }
        out
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::new();
        for row in std::iter::once(&self.headers).chain(&self.rows) {
            let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn csv_cell(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

fn power_label(e: u64) -> String {
    if e > PLAIN_POWER_LIMIT {
        format!("2^{e}")
    } else {
        pow2(e).to_string()
    }
}

/// `3^(p-1)(n)+offset`: the cascade result of the standard form `(p, n)`.
fn transform_notation(power: u64, index: &Nat) -> String {
    let offset = cascade_transform(power, &Nat::zero());
    let mut s = format!("{}({})", pow3(power - 1), index);
    if !offset.is_zero() {
        s.push_str(&format!("+{offset}"));
    }
    s
}

pub fn build(id: u32) -> Result<Table, CliError> {
    match id {
        1 => Ok(standard_forms()),
        3 => Ok(transforms()),
        4 => eight_transforms(),
        8 => max_cascade_starts(),
        9 => primary_starts(),
        10 => Ok(seed_table()),
        11 => column_steps(),
        17 => Ok(even_steps()),
        18 => principal_forms(),
        20..=22 => cascade_results((id - 19) as usize),
        _ => Err(CliError::Usage(format!(
            "unknown table {id}; available: {}",
            TABLE_IDS.map(|i| i.to_string()).join(", ")
        ))),
    }
}

fn standard_forms() -> Table {
    let mut t = Table::new(
        "Standard number forms",
        &["p", "base", "offset", "standard form"],
    );
    for p in 1..=5 {
        let form = standard_form(p);
        t.push(vec![
            p.to_string(),
            form.coefficient.to_string(),
            form.offset.to_string(),
            form.to_string(),
        ]);
    }
    t
}

fn transforms() -> Table {
    let mut t = Table::new(
        "Cascade transforms",
        &["p", "base", "standard form", "transform"],
    );
    for p in 1..=7 {
        let form = standard_form(p);
        t.push(vec![
            p.to_string(),
            form.coefficient.to_string(),
            form.to_string(),
            transform_form(p).to_string(),
        ]);
    }
    t
}

fn eight_transforms() -> Result<Table, CliError> {
    let mut t = Table::new(
        "Forms of 8-cascade transforms",
        &[
            "n",
            "8n+3",
            "9n+4",
            "standard form of transform",
            "standard base of transform",
        ],
    );
    let start = standard_form(3);
    let result = transform_form(3);
    for n in 0..18u64 {
        let index = Nat::from(n);
        let value = result.at(&index);
        let d = decompose(&value)?;
        t.push(vec![
            n.to_string(),
            start.at(&index).to_string(),
            value.to_string(),
            d.to_string(),
            d.base().to_string(),
        ]);
    }
    Ok(t)
}

fn max_cascade_starts() -> Result<Table, CliError> {
    let mut t = Table::new(
        "Maximum cascade starts",
        &[
            "cascade ending value",
            "maximum cascade start",
            "standard base",
        ],
    );
    for v in 28..=43u64 {
        let ladder = mcs(&Nat::from(v))?;
        let top = ladder.mcs_form();
        t.push(vec![
            format!("{v} = {}", transform_notation(top.power, &top.index)),
            format!("{} = {}", ladder.mcs(), top),
            top.base().to_string(),
        ]);
    }
    Ok(t)
}

fn primary_starts() -> Result<Table, CliError> {
    let mut t = Table::new(
        "Primary maximum cascade starts",
        &[
            "cascade ending value",
            "primary maximum cascade start",
            "standard base",
        ],
    );
    for v in 28..=43u64 {
        let value = Nat::from(v);
        let top = mcs(&value)?.mcs_form().clone();
        let ending = format!("{v} = {}", transform_notation(top.power, &top.index));
        if v % 3 == 0 {
            t.push(vec![ending, "see note".into(), "see note".into()]);
            continue;
        }
        match pmcs(&value, DEFAULT_PMCS_LIMIT)? {
            Outcome::Found(start) => {
                let d = decompose(start.value())?;
                t.push(vec![
                    ending,
                    format!("{} = {}", start.value(), d),
                    d.base().to_string(),
                ]);
            }
            Outcome::NotFoundWithinLimit { limit } => {
                return Err(CliError::Limit(format!(
                    "no primary start for {v} within {limit} ladders"
                )))
            }
        }
    }
    t.notes
        .push("Note: multiples of 3 cannot result from an odd cascade.".into());
    Ok(t)
}

fn seed_table() -> Table {
    let mut t = Table::new("Seeds", &["seed", "3K+1", "power", "4-form"]);
    let list = seeds(5);
    for (i, seed) in list.iter().enumerate() {
        let target: Nat = seed * 3u32 + 1u32;
        let exponent = 2 * (i as u64 + 1);
        let four_form = if i == 0 {
            "4(0)+1".to_string()
        } else {
            format!("4({})+1", list[i - 1])
        };
        t.push(vec![
            seed.to_string(),
            target.to_string(),
            format!("2^{exponent}"),
            four_form,
        ]);
    }
    t.notes.push("K(i+1) = 4K(i) + 1, K(1) = 1".into());
    t
}

fn column_steps() -> Result<Table, CliError> {
    let mut t = Table::new(
        "Column analysis of Collatz steps",
        &[
            "column",
            "form",
            "before step",
            "after step",
            "resulting column",
        ],
    );
    for c in 1..=12u8 {
        let (form, after) = match c {
            _ if c % 2 == 0 => ("2n", format!("6r+{}", c / 2)),
            _ if c % 4 == 1 => ("4n+1", format!("36r+{}", 3 * u32::from(c) + 1)),
            _ => ("4n+3", format!("36r+{}", 3 * u32::from(c) + 1)),
        };
        let targets = column_step_targets(c)?
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" or ");
        t.push(vec![
            c.to_string(),
            form.into(),
            format!("12r+{c}"),
            after,
            targets,
        ]);
    }
    Ok(t)
}

fn even_steps() -> Table {
    let mut t = Table::new("Even steps required to stopping time", &["S", "E", "2^E"]);
    for s in admissible_stopping_times(26) {
        let e = even_steps_for_stopping(s).expect("admissible");
        let mut base = pow2(e).to_string();
        if s == 21 {
            base.push('*');
        }
        t.push(vec![s.to_string(), e.to_string(), base]);
    }
    t.notes.push(format!(
        "* 2^13 = 8192; the published table lists {PUBLISHED_S21_BASE}."
    ));
    t
}

fn principal_forms() -> Result<Table, CliError> {
    let mut t = Table::new("Principal forms up to 100", &["form", "offset", "E", "S"]);
    let report = scan_principal_forms(&Nat::from(1u32), &Nat::from(100u32), DEFAULT_WINDOW)?;
    let mut forms = report.forms;
    forms.sort_by(|a, b| a.offset.cmp(&b.offset));
    for form in &forms {
        let mut label = format!("{}n", power_label(form.even_steps));
        if !form.offset.is_zero() {
            label.push_str(&format!("+{}", form.offset));
        }
        t.push(vec![
            label,
            form.offset.to_string(),
            form.even_steps.to_string(),
            form.stopping_time.to_string(),
        ]);
    }
    Ok(t)
}

fn cascade_results(level: usize) -> Result<Table, CliError> {
    let first: Vec<Nat> = (2..=21).map(pow2).collect();
    let columns: Vec<Nat> = (1..=7).map(pow2).collect();
    let levels = cascade_result_levels(&first, &columns, level)?;
    let mut headers = vec![format!("level {level}")];
    headers.extend(columns.iter().map(|c| format!(".{c}")));
    headers.push("Mix".into());
    let header_refs: Vec<&str> = headers.iter().map(String::as_str).collect();
    let mut t = Table::new(
        &format!("Standard forms of cascade results, level {level}"),
        &header_refs,
    );
    for row in &levels[level - 1] {
        let mut cells = vec![row.label()];
        cells.extend(row.cells.iter().map(ToString::to_string));
        cells.push(match row.mix() {
            Some((_, class)) => format!("{}+", class.base()),
            None => "-".into(),
        });
        t.push(cells);
    }
    Ok(t)
}
