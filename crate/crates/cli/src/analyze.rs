//! Single-number report.

use std::io::Write;

use collatz_forms::cascades::{is_seed, mcs, pmcs, DEFAULT_PMCS_LIMIT};
use collatz_forms::columns::column_of;
use collatz_forms::forms::decompose;
use collatz_forms::sequence::{
    stopping_time, total_stopping_time, DEFAULT_STOPPING_LIMIT, DEFAULT_TOTAL_LIMIT,
};
use collatz_forms::stopping::principal_form_of;
use collatz_forms::{Error, Nat, Outcome};
use num_traits::One;
use serde::Serialize;

use crate::CliError;

/// Big values are decimal strings; fields that do not apply are `null`.
#[derive(Debug, Serialize)]
pub struct Analysis {
    pub value: String,
    pub p: u64,
    pub n: String,
    pub standard_form: String,
    pub base: String,
    pub column: u8,
    pub seed: bool,
    pub stopping_time: Option<u64>,
    pub even_steps: Option<u64>,
    pub total_stopping_time: Option<u64>,
    pub principal: Option<bool>,
    pub mcs: String,
    pub pmcs: Option<String>,
    pub notes: Vec<String>,
}

impl Analysis {
    pub fn of(value: &Nat) -> Result<(Self, bool), CliError> {
        let form = decompose(value)?;
        let mut notes = Vec::new();
        let mut limited = false;

        let (stop_time, even) = if value.is_one() {
            notes.push("1 has no stopping time; it belongs to 4n+1".to_string());
            (None, None)
        } else {
            match stopping_time(value, DEFAULT_STOPPING_LIMIT)? {
                Outcome::Found(r) => (Some(r.stopping_time), Some(r.even_steps)),
                Outcome::NotFoundWithinLimit { limit } => {
                    notes.push(format!("stopping time not found within {limit} steps"));
                    limited = true;
                    (None, None)
                }
            }
        };
        let principal = match principal_form_of(value, DEFAULT_STOPPING_LIMIT)? {
            Outcome::Found(p) => Some(p.is_some()),
            Outcome::NotFoundWithinLimit { .. } => None,
        };
        let total = match total_stopping_time(value, DEFAULT_TOTAL_LIMIT)? {
            Outcome::Found(t) => Some(t),
            Outcome::NotFoundWithinLimit { limit } => {
                notes.push(format!(
                    "total stopping time not found within {limit} steps"
                ));
                limited = true;
                None
            }
        };
        let primary = if value.is_one() {
            notes.push("1 is its own maximum cascade start: no primary cascade start".to_string());
            None
        } else {
            match pmcs(value, DEFAULT_PMCS_LIMIT) {
                Ok(Outcome::Found(start)) => Some(start.value().to_string()),
                Ok(Outcome::NotFoundWithinLimit { limit }) => {
                    notes.push(format!("no primary cascade start within {limit} ladders"));
                    limited = true;
                    None
                }
                Err(Error::MultipleOfThree(_)) => {
                    notes.push("multiple of 3: no primary cascade start".to_string());
                    None
                }
                Err(e) => return Err(e.into()),
            }
        };

        let analysis = Analysis {
            value: value.to_string(),
            p: form.power,
            n: form.index.to_string(),
            standard_form: form.to_string(),
            base: form.base().to_string(),
            column: column_of(value)?,
            seed: is_seed(value),
            stopping_time: stop_time,
            even_steps: even,
            total_stopping_time: total,
            principal,
            mcs: mcs(value)?.mcs().to_string(),
            pmcs: primary,
            notes,
        };
        Ok((analysis, limited))
    }

    fn render_text(&self) -> String {
        let opt = |v: Option<u64>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
        let mut s = String::new();
        s.push_str(&format!("value                {}\n", self.value));
        s.push_str(&format!(
            "standard form        {} (p={}, n={})\n",
            self.standard_form, self.p, self.n
        ));
        s.push_str(&format!("standard base        {}\n", self.base));
        s.push_str(&format!("column               {}\n", self.column));
        s.push_str(&format!("seed                 {}\n", self.seed));
        s.push_str(&format!(
            "stopping time        {}\n",
            opt(self.stopping_time)
        ));
        s.push_str(&format!("even steps           {}\n", opt(self.even_steps)));
        s.push_str(&format!(
            "total stopping time  {}\n",
            opt(self.total_stopping_time)
        ));
        s.push_str(&format!(
            "principal            {}\n",
            self.principal
                .map_or_else(|| "-".to_string(), |p| p.to_string())
        ));
        s.push_str(&format!("mcs                  {}\n", self.mcs));
        s.push_str(&format!(
            "pmcs                 {}\n",
            self.pmcs.as_deref().unwrap_or("-")
        ));
        for note in &self.notes {
            s.push_str(&format!("note: {note}\n"));
        }
        s
    }
}

pub fn run(value: &Nat, json: bool, out: &mut impl Write) -> Result<u8, CliError> {
    let (analysis, limited) = Analysis::of(value)?;
    if json {
        let text = serde_json::to_string_pretty(&analysis).expect("analysis serializes");
        writeln!(out, "{text}")?;
    } else {
        out.write_all(analysis.render_text().as_bytes())?;
    }
    Ok(if limited { 3 } else { 0 })
}
