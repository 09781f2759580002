//! Precision, recall and their category/global averages.
//!
//! Every indexed image is issued once as a query against the full index
//! (itself included). Precision divides by the number of hits returned,
//! recall by the size of the query's class. Category means average over the
//! class's queries; totals average over classes, so every class weighs the
//! same regardless of its size. The total recall is the ARR.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::descriptor::QuantizationScheme;
use crate::error::{Error, Result};
use crate::index_store::FeatureIndex;
use crate::retrieval::{query, rank_order, RankedResult};
use crate::similarity::Metric;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrecisionRecall {
    pub correct: usize,
    pub retrieved: usize,
    pub relevant: usize,
    pub precision: f64,
    pub recall: f64,
}

/// Scores one ranked list against the query's label and class size.
pub fn precision_recall(
    result: &RankedResult,
    query_label: &str,
    n_k: usize,
) -> Result<PrecisionRecall> {
    if n_k == 0 {
        return Err(Error::Evaluation(format!(
            "class {query_label:?} has no relevant images"
        )));
    }
    if result.hits.is_empty() {
        return Err(Error::Evaluation("empty result list".into()));
    }
    let correct = result
        .hits
        .iter()
        .filter(|h| h.label == query_label)
        .count();
    let retrieved = result.hits.len();
    Ok(PrecisionRecall {
        correct,
        retrieved,
        relevant: n_k,
        precision: correct as f64 / retrieved as f64,
        recall: correct as f64 / n_k as f64,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryEval {
    pub id: String,
    pub label: String,
    pub n: usize,
    pub correct: usize,
    pub precision: f64,
    pub recall: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategoryEval {
    pub label: String,
    pub size: usize,
    pub precision: f64,
    pub recall: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub scheme: QuantizationScheme,
    pub metric: Metric,
    pub n: usize,
    pub queries: usize,
    /// Mean over categories of per-category precision (APR).
    pub p_total: f64,
    /// Mean over categories of per-category recall (ARR).
    pub r_total: f64,
    pub per_category: Vec<CategoryEval>,
    pub per_query: Vec<QueryEval>,
}

impl EvalReport {
    pub fn arr(&self) -> f64 {
        self.r_total
    }

    pub fn apr(&self) -> f64 {
        self.p_total
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Per-category table followed by the totals, percentages to 2 places.
    pub fn to_table(&self) -> String {
        let width = self
            .per_category
            .iter()
            .map(|c| c.label.len())
            .max()
            .unwrap_or(0)
            .max("category".len());
        let mut out = String::new();
        let _ = writeln!(
            out,
            "scheme {}  metric {}  n {}  queries {}",
            self.scheme, self.metric, self.n, self.queries
        );
        let _ = writeln!(
            out,
            "{:<width$}  {:>6}  {:>9}  {:>9}",
            "category", "size", "precision", "recall"
        );
        for c in &self.per_category {
            let _ = writeln!(
                out,
                "{:<width$}  {:>6}  {:>8.2}%  {:>8.2}%",
                c.label,
                c.size,
                100.0 * c.precision,
                100.0 * c.recall
            );
        }
        let _ = writeln!(
            out,
            "APR {:.2}%  ARR {:.2}%  (n = {})",
            100.0 * self.p_total,
            100.0 * self.r_total,
            self.n
        );
        out
    }
}

fn check_depth(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Evaluation(
            "retrieval depth n must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Aggregates per-query correct counts (in index order) into category means
/// and totals. Counts are summed as integers so the result does not depend
/// on record order.
fn aggregate(
    index: &FeatureIndex,
    retrieved: usize,
    correct: &[usize],
) -> (Vec<CategoryEval>, f64, f64) {
    let per_category: Vec<CategoryEval> = index
        .class_sizes()
        .iter()
        .map(|(label, &size)| {
            let total: usize = index
                .records()
                .iter()
                .zip(correct)
                .filter(|(r, _)| &r.label == label)
                .map(|(_, &c)| c)
                .sum();
            CategoryEval {
                label: label.clone(),
                size,
                precision: total as f64 / (retrieved * size) as f64,
                recall: total as f64 / (size * size) as f64,
            }
        })
        .collect();
    let c = per_category.len() as f64;
    let p_total = per_category.iter().map(|c| c.precision).sum::<f64>() / c;
    let r_total = per_category.iter().map(|c| c.recall).sum::<f64>() / c;
    (per_category, p_total, r_total)
}

/// Uses every indexed image as a query at depth `n`.
pub fn evaluate_all(index: &FeatureIndex, metric: Metric, n: usize) -> Result<EvalReport> {
    check_depth(n)?;
    let per_query = index
        .records()
        .par_iter()
        .map(|r| {
            let result = query(index, &r.feature, metric, n)?;
            let pr = precision_recall(&result, &r.label, index.class_size(&r.label))?;
            Ok(QueryEval {
                id: r.id.clone(),
                label: r.label.clone(),
                n: pr.retrieved,
                correct: pr.correct,
                precision: pr.precision,
                recall: pr.recall,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let retrieved = n.min(index.len());
    let correct: Vec<usize> = per_query.iter().map(|q| q.correct).collect();
    let (per_category, p_total, r_total) = aggregate(index, retrieved, &correct);
    Ok(EvalReport {
        scheme: index.scheme(),
        metric,
        n,
        queries: per_query.len(),
        p_total,
        r_total,
        per_category,
        per_query,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub n: usize,
    pub p_total: f64,
    pub r_total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveData {
    pub scheme: QuantizationScheme,
    pub metric: Metric,
    pub points: Vec<CurvePoint>,
}

impl CurveData {
    /// `n,precision,recall` rows with fixed 6-decimal formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,precision,recall\n");
        for p in &self.points {
            let _ = writeln!(out, "{},{:.6},{:.6}", p.n, p.p_total, p.r_total);
        }
        out
    }
}

/// `n` values `start, start + step, ...` up to and including `end`.
pub fn n_range(start: usize, end: usize, step: usize) -> Vec<usize> {
    if step == 0 || start == 0 {
        return Vec::new();
    }
    (start..=end).step_by(step).collect()
}

/// Precision/recall totals at each depth in `n_values`.
///
/// Each query is ranked once to the deepest requested depth; shallower depths
/// read prefixes of that ranking, which is identical to re-running
/// [`evaluate_all`] at every depth.
pub fn sweep_curves(index: &FeatureIndex, metric: Metric, n_values: &[usize]) -> Result<CurveData> {
    if n_values.is_empty() {
        return Err(Error::Evaluation("empty n sweep".into()));
    }
    if n_values[0] == 0 || n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Evaluation(format!(
            "n values must be positive and strictly increasing: {n_values:?}"
        )));
    }
    let deepest = n_values[n_values.len() - 1].min(index.len());
    // cumulative[q][i] = correct hits among the first i + 1 results of query q
    let cumulative: Vec<Vec<usize>> = index
        .records()
        .par_iter()
        .map(|q| {
            let mut scored: Vec<(f64, &str, bool)> = index
                .records()
                .iter()
                .map(|r| {
                    (
                        metric.eval(q.feature.values(), r.feature.values()),
                        r.id.as_str(),
                        r.label == q.label,
                    )
                })
                .collect();
            scored.sort_unstable_by(|a, b| rank_order((a.0, a.1), (b.0, b.1)));
            scored[..deepest]
                .iter()
                .scan(0usize, |acc, s| {
                    *acc += usize::from(s.2);
                    Some(*acc)
                })
                .collect()
        })
        .collect();
    let points = n_values
        .iter()
        .map(|&n| {
            let retrieved = n.min(index.len());
            let correct: Vec<usize> = cumulative.iter().map(|c| c[retrieved - 1]).collect();
            let (_, p_total, r_total) = aggregate(index, retrieved, &correct);
            CurvePoint {
                n,
                p_total,
                r_total,
            }
        })
        .collect();
    Ok(CurveData {
        scheme: index.scheme(),
        metric,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::retrieval::Hit;

    fn result(labels: &[&str]) -> RankedResult {
        RankedResult {
            query_id: None,
            metric: Metric::D1,
            n: labels.len(),
            hits: labels
                .iter()
                .enumerate()
                .map(|(i, l)| Hit {
                    id: i.to_string(),
                    label: l.to_string(),
                    distance: i as f64,
                })
                .collect(),
        }
    }

    #[test]
    fn perfect_and_empty_precision() {
        let pr = precision_recall(&result(&["a"; 10]), "a", 100).unwrap();
        assert_eq!((pr.precision, pr.recall), (1.0, 0.1));
        let pr = precision_recall(&result(&["b"; 10]), "a", 100).unwrap();
        assert_eq!((pr.precision, pr.recall), (0.0, 0.0));
    }

    #[test]
    fn hand_count() {
        let pr = precision_recall(&result(&["a", "b", "a", "c", "a"]), "a", 4).unwrap();
        assert_eq!(pr.correct, 3);
        assert_eq!(pr.precision, 3.0 / 5.0);
        assert_eq!(pr.recall, 3.0 / 4.0);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(precision_recall(&result(&["a"]), "a", 0).is_err());
        assert!(precision_recall(&result(&[]), "a", 3).is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(n_range(10, 100, 10).len(), 10);
        assert_eq!(n_range(16, 96, 16), [16, 32, 48, 64, 80, 96]);
        assert!(n_range(0, 10, 1).is_empty());
    }
}
