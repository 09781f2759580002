//! Exhaustive ranking of an index against a query descriptor.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::descriptor::FeatureVector;
use crate::error::{Error, Result};
use crate::index_store::{FeatureIndex, Record};
use crate::similarity::Metric;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hit {
    pub id: String,
    pub label: String,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedResult {
    pub query_id: Option<String>,
    pub metric: Metric,
    pub n: usize,
    pub hits: Vec<Hit>,
}

/// Ascending distance, then ascending id.
pub fn rank_order(a: (f64, &str), b: (f64, &str)) -> Ordering {
    a.0.total_cmp(&b.0).then_with(|| a.1.cmp(b.1))
}

#[derive(Debug, Clone, Default)]
pub struct QueryOptions<'a> {
    /// Id carried into the result for reporting.
    pub query_id: Option<&'a str>,
    /// Drop the record with `query_id` from the candidates.
    pub exclude_self: bool,
}

/// Scores every record and returns the `n` nearest, ties broken by id.
pub fn query(
    index: &FeatureIndex,
    q: &FeatureVector,
    metric: Metric,
    n: usize,
) -> Result<RankedResult> {
    query_with(index, q, metric, n, &QueryOptions::default())
}

pub fn query_with(
    index: &FeatureIndex,
    q: &FeatureVector,
    metric: Metric,
    n: usize,
    opts: &QueryOptions<'_>,
) -> Result<RankedResult> {
    if n == 0 {
        return Err(Error::Config("retrieval depth n must be at least 1".into()));
    }
    if q.scheme() != index.scheme() || q.len() != index.scheme().feature_len() {
        return Err(Error::Dimension(format!(
            "query uses {} but the index uses {}",
            q.scheme(),
            index.scheme()
        )));
    }
    let skip = if opts.exclude_self {
        opts.query_id
    } else {
        None
    };
    let mut scored: Vec<(f64, &Record)> = index
        .records()
        .par_iter()
        .filter(|r| Some(r.id.as_str()) != skip)
        .map(|r| (metric.eval(q.values(), r.feature.values()), r))
        .collect();
    let by_rank =
        |a: &(f64, &Record), b: &(f64, &Record)| rank_order((a.0, &a.1.id), (b.0, &b.1.id));
    if n < scored.len() {
        scored.select_nth_unstable_by(n - 1, by_rank);
        scored.truncate(n);
    }
    scored.sort_unstable_by(by_rank);
    Ok(RankedResult {
        query_id: opts.query_id.map(str::to_string),
        metric,
        n,
        hits: scored
            .into_iter()
            .map(|(distance, r)| Hit {
                id: r.id.clone(),
                label: r.label.clone(),
                distance,
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::QuantizationScheme;

    fn index_of(values: &[(&str, f64)]) -> FeatureIndex {
        let scheme = QuantizationScheme::default();
        let records = values
            .iter()
            .map(|&(id, x)| Record {
                id: id.into(),
                label: id[..1].into(),
                feature: FeatureVector::new(vec![x; 284], scheme).unwrap(),
            })
            .collect();
        FeatureIndex::from_records(scheme, Metric::D1, records).unwrap()
    }

    #[test]
    fn self_match_first() {
        let index = index_of(&[("a1", 0.1), ("a2", 0.2), ("b1", 0.5)]);
        let q = index.get("a2").unwrap().feature.clone();
        let res = query(&index, &q, Metric::D1, 2).unwrap();
        assert_eq!(res.hits[0].id, "a2");
        assert_eq!(res.hits[0].distance, 0.0);
        assert_eq!(res.hits.len(), 2);
    }

    #[test]
    fn ties_by_id_and_oversized_n() {
        let index = index_of(&[("c", 0.3), ("a", 0.3), ("b", 0.3), ("d", 0.1)]);
        let q = FeatureVector::new(vec![0.3; 284], index.scheme()).unwrap();
        let res = query(&index, &q, Metric::Manhattan, 50).unwrap();
        let ids: Vec<&str> = res.hits.iter().map(|h| h.id.as_str()).collect();
        assert_eq!(ids, ["a", "b", "c", "d"]);
    }

    #[test]
    fn exclude_self() {
        let index = index_of(&[("a1", 0.1), ("a2", 0.2)]);
        let q = index.get("a1").unwrap().feature.clone();
        let opts = QueryOptions {
            query_id: Some("a1"),
            exclude_self: true,
        };
        let res = query_with(&index, &q, Metric::D1, 5, &opts).unwrap();
        assert_eq!(res.hits.len(), 1);
        assert_eq!(res.hits[0].id, "a2");
    }

    #[test]
    fn rejects_bad_queries() {
        let index = index_of(&[("a", 0.1)]);
        let q = FeatureVector::new(vec![0.0; 312], "36,20".parse().unwrap()).unwrap();
        assert!(matches!(
            query(&index, &q, Metric::D1, 1),
            Err(Error::Dimension(_))
        ));
        let q = index.get("a").unwrap().feature.clone();
        assert!(query(&index, &q, Metric::D1, 0).is_err());
    }
}
