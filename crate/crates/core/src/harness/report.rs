use std::fs::{self, File};
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use super::{Algorithm, ExperimentSpec, HarnessError, RunRecord};
use crate::analysis::{
    friedman, summarize, wilcoxon_rank_sum, win_tie_loss, DiversityCurve, TieBreak, Verdict, WinTieLoss,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub problem: String,
    pub algorithm: String,
    pub min: f64,
    pub ave: f64,
    pub std: f64,
    pub feasible_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WilcoxonRow {
    pub problem: String,
    pub reference: String,
    pub opponent: String,
    pub p_value: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FriedmanSection {
    pub algorithms: Vec<String>,
    pub mean_ranks: Vec<f64>,
    pub statistic: f64,
    pub p_value: f64,
    /// Algorithm names from best to worst.
    pub global_rank: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct TallyRow {
    reference: String,
    opponent: String,
    wins: usize,
    ties: usize,
    losses: usize,
}

#[derive(Debug, Serialize)]
struct RunCsvRow<'a> {
    problem: &'a str,
    algorithm: &'a str,
    run: usize,
    seed: u64,
    best_value: f64,
    violation: f64,
    feasible: bool,
    fes_used: u64,
    max_fes: u64,
    iterations: usize,
}

#[derive(Debug, Serialize)]
struct DiversityCsvRow {
    iter: usize,
    div: f64,
    exploration_pct: f64,
    exploitation_pct: f64,
}

#[derive(Debug, Serialize)]
struct Meta<'a> {
    suite: String,
    algorithms: Vec<&'a str>,
    problems: &'a [String],
    runs: usize,
    base_seed: u64,
    alpha: f64,
}

#[derive(Debug, Serialize)]
struct ReportDoc<'a> {
    meta: Meta<'a>,
    #[serde(skip_serializing_if = "Option::is_none")]
    friedman: Option<&'a FriedmanSection>,
    win_tie_loss: Vec<TallyRow>,
    summary: &'a [SummaryRow],
    wilcoxon: &'a [WilcoxonRow],
}

/// Everything an experiment produced, ready to inspect or write out.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub spec: ExperimentSpec,
    pub problems: Vec<String>,
    /// Ordered by problem, then algorithm, then run.
    pub records: Vec<RunRecord>,
    pub summaries: Vec<SummaryRow>,
    /// First algorithm against each of the others, per problem.
    pub wilcoxon: Vec<WilcoxonRow>,
    pub win_tie_loss: Vec<(Algorithm, WinTieLoss)>,
    pub friedman: Option<FriedmanSection>,
    /// ECO diversity curve of run 0, per problem.
    pub diversity: Vec<(String, DiversityCurve)>,
}

impl ExperimentReport {
    pub(super) fn assemble(
        spec: &ExperimentSpec,
        problems: &[String],
        records: Vec<RunRecord>,
    ) -> Result<Self, HarnessError> {
        let algs = &spec.algorithms;
        let bests = |p: &str, a: Algorithm| -> Vec<f64> {
            records.iter().filter(|r| r.problem == p && r.algorithm == a).map(|r| r.best.value).collect()
        };

        let mut summaries = Vec::new();
        for p in problems {
            for &a in algs {
                let s = summarize(&bests(p, a))?;
                let runs: Vec<&RunRecord> = records.iter().filter(|r| &r.problem == p && r.algorithm == a).collect();
                let feasible = runs.iter().filter(|r| r.best.feasible).count();
                summaries.push(SummaryRow {
                    problem: p.clone(),
                    algorithm: a.to_string(),
                    min: s.min,
                    ave: s.ave,
                    std: s.std,
                    feasible_rate: feasible as f64 / runs.len() as f64,
                });
            }
        }

        let mut wilcoxon = Vec::new();
        let mut tallies = Vec::new();
        if let Some((&reference, others)) = algs.split_first() {
            for p in problems {
                for &o in others {
                    let t = wilcoxon_rank_sum(&bests(p, reference), &bests(p, o), spec.alpha);
                    wilcoxon.push(WilcoxonRow {
                        problem: p.clone(),
                        reference: reference.to_string(),
                        opponent: o.to_string(),
                        p_value: t.p_value,
                        verdict: t.verdict,
                    });
                }
            }
            let ref_samples: Vec<Vec<f64>> = problems.iter().map(|p| bests(p, reference)).collect();
            let opp_samples: Vec<Vec<Vec<f64>>> =
                others.iter().map(|&o| problems.iter().map(|p| bests(p, o)).collect()).collect();
            tallies = others.iter().copied().zip(win_tie_loss(&ref_samples, &opp_samples, spec.alpha)).collect();
        }

        let friedman = if algs.len() >= 2 {
            let cell = |p: &String, a: Algorithm| {
                summaries.iter().find(|s| &s.problem == p && s.algorithm == a.as_str()).expect("summary row")
            };
            let matrix = |f: fn(&SummaryRow) -> f64| -> Vec<Vec<f64>> {
                problems.iter().map(|p| algs.iter().map(|&a| f(cell(p, a))).collect()).collect()
            };
            let (ave, min, std) = (matrix(|s| s.ave), matrix(|s| s.min), matrix(|s| s.std));
            let r = friedman(&ave, Some(TieBreak { min: &min, std: &std }))?;
            Some(FriedmanSection {
                algorithms: algs.iter().map(|a| a.to_string()).collect(),
                mean_ranks: r.mean_ranks,
                statistic: r.statistic,
                p_value: r.p_value,
                global_rank: r.global_rank.iter().map(|&i| algs[i].to_string()).collect(),
            })
        } else {
            None
        };

        let diversity = records
            .iter()
            .filter(|r| r.algorithm == Algorithm::Eco && r.run == 0)
            .map(|r| (r.problem.clone(), DiversityCurve::from_divs(r.trace.divs())))
            .collect();

        Ok(Self {
            spec: spec.clone(),
            problems: problems.to_vec(),
            records,
            summaries,
            wilcoxon,
            win_tie_loss: tallies,
            friedman,
            diversity,
        })
    }

    pub fn summary(&self, problem: &str, algorithm: Algorithm) -> Option<&SummaryRow> {
        self.summaries.iter().find(|s| s.problem == problem && s.algorithm == algorithm.as_str())
    }

    pub fn verdict(&self, problem: &str, opponent: Algorithm) -> Option<&WilcoxonRow> {
        self.wilcoxon.iter().find(|w| w.problem == problem && w.opponent == opponent.as_str())
    }

    /// The structured comparison report as TOML text.
    pub fn to_toml(&self) -> Result<String, HarnessError> {
        let first = self.spec.algorithms.first().map(|a| a.to_string()).unwrap_or_default();
        let doc = ReportDoc {
            meta: Meta {
                suite: self.spec.suite.to_string(),
                algorithms: self.spec.algorithms.iter().map(|a| a.as_str()).collect(),
                problems: &self.problems,
                runs: self.spec.runs,
                base_seed: self.spec.base_seed,
                alpha: self.spec.alpha,
            },
            friedman: self.friedman.as_ref(),
            win_tie_loss: self
                .win_tie_loss
                .iter()
                .map(|(o, t)| TallyRow {
                    reference: first.clone(),
                    opponent: o.to_string(),
                    wins: t.wins,
                    ties: t.ties,
                    losses: t.losses,
                })
                .collect(),
            summary: &self.summaries,
            wilcoxon: &self.wilcoxon,
        };
        Ok(toml::to_string(&doc)?)
    }

    /// Writes all report files under `dir`, creating it if needed.
    ///
    /// Layout: `summary.csv`, `runs.csv`, `wilcoxon.csv`, `report.toml`,
    /// `traces/<problem>_<alg>_run<NNN>.csv` and `diversity/<problem>_eco.csv`.
    pub fn write(&self, dir: impl AsRef<Path>) -> Result<(), HarnessError> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir.join("traces"))?;
        fs::create_dir_all(dir.join("diversity"))?;

        write_csv(&dir.join("summary.csv"), &self.summaries)?;
        write_csv(&dir.join("wilcoxon.csv"), &self.wilcoxon)?;
        let runs: Vec<RunCsvRow<'_>> = self
            .records
            .iter()
            .map(|r| RunCsvRow {
                problem: &r.problem,
                algorithm: r.algorithm.as_str(),
                run: r.run,
                seed: r.seed,
                best_value: r.best.value,
                violation: r.best.violation,
                feasible: r.best.feasible,
                fes_used: r.fes_used,
                max_fes: r.max_fes,
                iterations: r.iterations,
            })
            .collect();
        write_csv(&dir.join("runs.csv"), &runs)?;

        for r in &self.records {
            let name = format!("{}_{}_run{:03}.csv", r.problem, r.algorithm, r.run);
            let rows: Vec<_> = r.trace.csv_rows().collect();
            write_csv(&dir.join("traces").join(name), &rows)?;
        }
        for (problem, curve) in &self.diversity {
            let rows: Vec<DiversityCsvRow> = (0..curve.len())
                .map(|k| DiversityCsvRow {
                    iter: k,
                    div: curve.div[k],
                    exploration_pct: curve.exploration_pct[k],
                    exploitation_pct: curve.exploitation_pct[k],
                })
                .collect();
            write_csv(&dir.join("diversity").join(format!("{problem}_eco.csv")), &rows)?;
        }
        File::create(dir.join("report.toml"))?.write_all(self.to_toml()?.as_bytes())?;
        Ok(())
    }
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
