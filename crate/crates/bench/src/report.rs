//! Campaign reports: one row per run plus per-group aggregates.

use serde::Serialize;

/// Outcome of one seeded run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRow {
    /// Instance name for campaigns, configuration label for ablations.
    pub group: String,
    pub instance: String,
    pub n: usize,
    pub run: usize,
    pub seed: u64,
    pub best_objective: i64,
    pub time_to_best_ms: f64,
    pub generations: u64,
    pub restarts: u64,
    pub selection_fallbacks: u64,
    pub config_digest: String,
    pub instance_digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    pub group: String,
    pub runs: usize,
    pub f_best: i64,
    pub f_avg: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<RunRow>,
    pub aggregates: Vec<Aggregate>,
}

#[derive(Serialize)]
struct CsvLine<'a> {
    record: &'static str,
    group: &'a str,
    instance: &'a str,
    n: Option<usize>,
    run: Option<usize>,
    seed: Option<u64>,
    best_objective: i64,
    f_avg: Option<f64>,
    runs: Option<usize>,
    time_to_best_ms: Option<String>,
    generations: Option<u64>,
    restarts: Option<u64>,
    selection_fallbacks: Option<u64>,
    config_digest: Option<&'a str>,
    instance_digest: Option<&'a str>,
}

impl BenchReport {
    /// Groups appear in order of first occurrence in `rows`.
    pub fn from_rows(rows: Vec<RunRow>) -> Self {
        let mut aggregates: Vec<Aggregate> = Vec::new();
        let mut sums: Vec<i128> = Vec::new();
        for row in &rows {
            match aggregates.iter().position(|a| a.group == row.group) {
                Some(k) => {
                    let agg = &mut aggregates[k];
                    agg.runs += 1;
                    agg.f_best = agg.f_best.max(row.best_objective);
                    sums[k] += row.best_objective as i128;
                }
                None => {
                    aggregates.push(Aggregate {
                        group: row.group.clone(),
                        runs: 1,
                        f_best: row.best_objective,
                        f_avg: 0.0,
                    });
                    sums.push(row.best_objective as i128);
                }
            }
        }
        for (agg, sum) in aggregates.iter_mut().zip(sums) {
            agg.f_avg = sum as f64 / agg.runs as f64;
        }
        BenchReport { rows, aggregates }
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            writer.serialize(CsvLine {
                record: "run",
                group: &r.group,
                instance: &r.instance,
                n: Some(r.n),
                run: Some(r.run),
                seed: Some(r.seed),
                best_objective: r.best_objective,
                f_avg: None,
                runs: None,
                time_to_best_ms: Some(format!("{:.3}", r.time_to_best_ms)),
                generations: Some(r.generations),
                restarts: Some(r.restarts),
                selection_fallbacks: Some(r.selection_fallbacks),
                config_digest: Some(&r.config_digest),
                instance_digest: Some(&r.instance_digest),
            })?;
        }
        for a in &self.aggregates {
            writer.serialize(CsvLine {
                record: "aggregate",
                group: &a.group,
                instance: "",
                n: None,
                run: None,
                seed: None,
                best_objective: a.f_best,
                f_avg: Some(a.f_avg),
                runs: Some(a.runs),
                time_to_best_ms: None,
                generations: None,
                restarts: None,
                selection_fallbacks: None,
                config_digest: None,
                instance_digest: None,
            })?;
        }
        let bytes = writer.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self).map(|mut s| {
            s.push('\n');
            s
        })
    }

    /// Fixed-width `f_best` / `f_avg` table.
    pub fn to_table(&self) -> String {
        let width = self.aggregates.iter().map(|a| a.group.len()).max().unwrap_or(5).max(5);
        let mut out = format!(
            "{:<width$}  {:>5}  {:>14}  {:>16}\n",
            "group", "runs", "f_best", "f_avg"
        );
        for a in &self.aggregates {
            out.push_str(&format!(
                "{:<width$}  {:>5}  {:>14}  {:>16.1}\n",
                a.group, a.runs, a.f_best, a.f_avg
            ));
        }
        out
    }
}
