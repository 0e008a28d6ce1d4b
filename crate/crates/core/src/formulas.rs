//! Closed forms and bounds for saturation numbers of complete multipartite
//! graphs, in exact integer and rational arithmetic.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::pattern::MultipartitePattern;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("the bound needs at least two parts, got {0}")]
    TooFewParts(usize),
    #[error("the bound needs n > p = {p}, got n = {n}")]
    OrderTooSmall { n: usize, p: usize },
    #[error("empty range {from}..={to}")]
    EmptyRange { from: usize, to: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SatFormulaAnswer {
    /// A proven value; `validity` is the range of `n` the theorem covers.
    Exact {
        value: usize,
        validity: &'static str,
        source: &'static str,
    },
    /// `upper` is the large-`n` construction bound evaluated at this `n`
    /// (or `C(n, 2)` where it does not apply); no certified lower bound.
    Bounds { lower: Option<usize>, upper: usize },
    /// Leading term `coefficient · n` of the asymptotic value.
    AsymptoticOnly {
        #[serde(serialize_with = "ratio_str")]
        coefficient: Ratio<i64>,
        #[serde(serialize_with = "ratio_str")]
        leading: Ratio<i64>,
    },
    /// An edgeless pattern on at most `n` vertices lies in every graph.
    NoSaturatedGraph,
}

fn ratio_str<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

impl SatFormulaAnswer {
    pub fn exact(&self) -> Option<usize> {
        match self {
            SatFormulaAnswer::Exact { value, .. } => Some(*value),
            _ => None,
        }
    }
}

impl fmt::Display for SatFormulaAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SatFormulaAnswer::Exact { value, .. } => write!(f, "{value}"),
            SatFormulaAnswer::Bounds { lower: Some(l), upper } => write!(f, "[{l}, {upper}]"),
            SatFormulaAnswer::Bounds { lower: None, upper } => write!(f, "<= {upper}"),
            SatFormulaAnswer::AsymptoticOnly { leading, .. } => write!(f, "~ {leading}"),
            SatFormulaAnswer::NoSaturatedGraph => f.write_str("none"),
        }
    }
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `p = s_1 + … + s_{r-1} − 1`, for parts sorted ascending.
fn bfp_p(parts: &[usize]) -> Result<usize, FormulaError> {
    if parts.len() < 2 {
        return Err(FormulaError::TooFewParts(parts.len()));
    }
    Ok(parts[..parts.len() - 1].iter().sum::<usize>() - 1)
}

/// `C(p, 2) + p(n − p) + ⌈(s_r − 1)(n − p)/2 − s_r²/8⌉`, the large-`n` upper
/// bound for `K_{s_1,…,s_r}`.
pub fn bfp_upper(n: usize, p: &MultipartitePattern) -> Result<usize, FormulaError> {
    let parts = p.parts();
    let pp = bfp_p(parts)?;
    if n <= pp {
        return Err(FormulaError::OrderTooSmall { n, p: pp });
    }
    let sr = *parts.last().expect("nonempty") as i64;
    let m = (n - pp) as i64;
    // (s_r − 1) m / 2 − s_r² / 8 = (4 (s_r − 1) m − s_r²) / 8
    let ceil = Integer::div_ceil(&(4 * (sr - 1) * m - sr * sr), &8);
    let total = (choose2(pp) + pp * (n - pp)) as i64 + ceil;
    Ok(total.max(0) as usize)
}

/// `(s_1 + … + s_{r-1} + s_r/2 − 3/2) · n`, the leading term of the asymptotic value.
pub fn bfp_leading(n: usize, p: &MultipartitePattern) -> Result<SatFormulaAnswer, FormulaError> {
    let parts = p.parts();
    if parts.len() < 2 {
        return Err(FormulaError::TooFewParts(parts.len()));
    }
    let sr = *parts.last().expect("nonempty") as i64;
    let head: i64 = parts[..parts.len() - 1].iter().map(|&s| s as i64).sum();
    let coefficient = Ratio::new(2 * head + sr - 3, 2);
    Ok(SatFormulaAnswer::AsymptoticOnly {
        coefficient,
        leading: coefficient * Ratio::from_integer(n as i64),
    })
}

/// The proven value where one is known, otherwise the construction bound.
pub fn known_sat(n: usize, p: &MultipartitePattern) -> SatFormulaAnswer {
    let exact = |value, validity, source| SatFormulaAnswer::Exact {
        value,
        validity,
        source,
    };
    if p.order() > n {
        return exact(choose2(n), "n < |P|", "only K_n is saturated");
    }
    if p.part_count() == 1 {
        return SatFormulaAnswer::NoSaturatedGraph;
    }
    if let Some(r) = p.as_clique() {
        let k = r - 1;
        return exact((k - 1) * n - choose2(k), "n >= k + 1", "Erdős–Hajnal–Moon");
    }
    match p.as_bipartite() {
        Some((2, 2)) if n >= 5 => return exact((3 * n - 5) / 2, "n >= 5", "Ollmann"),
        Some((2, 3)) if n >= 5 => return exact(2 * n - 3, "n >= 5", "Chen"),
        Some((3, 3)) if (6..=8).contains(&n) => return exact(2 * n, "6 <= n <= 8", "K_{3,3} theorem"),
        Some((3, 3)) if n >= 9 => return exact(3 * n - 9, "n >= 9", "K_{3,3} theorem"),
        _ => {}
    }
    let upper = bfp_upper(n, p).map_or(choose2(n), |u| u.min(choose2(n)));
    SatFormulaAnswer::Bounds { lower: None, upper }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub pattern: String,
    pub answer: SatFormulaAnswer,
    /// The construction bound, where it applies.
    pub bfp_upper: Option<usize>,
}

pub fn sat_table(p: &MultipartitePattern, from: usize, to: usize) -> Result<Vec<TableRow>, FormulaError> {
    if from > to {
        return Err(FormulaError::EmptyRange { from, to });
    }
    Ok((from..=to)
        .map(|n| TableRow {
            n,
            pattern: p.to_list(),
            answer: known_sat(n, p),
            bfp_upper: bfp_upper(n, p).ok(),
        })
        .collect())
}

fn kind(a: &SatFormulaAnswer) -> &'static str {
    match a {
        SatFormulaAnswer::Exact { .. } => "exact",
        SatFormulaAnswer::Bounds { .. } => "bounds",
        SatFormulaAnswer::AsymptoticOnly { .. } => "asymptotic",
        SatFormulaAnswer::NoSaturatedGraph => "none",
    }
}

fn cells(row: &TableRow) -> [String; 5] {
    let opt = |v: Option<usize>| v.map_or(String::new(), |v| v.to_string());
    let (lower, upper) = match &row.answer {
        SatFormulaAnswer::Exact { value, .. } => (Some(*value), Some(*value)),
        SatFormulaAnswer::Bounds { lower, upper } => (*lower, Some(*upper)),
        _ => (None, None),
    };
    [
        row.n.to_string(),
        kind(&row.answer).into(),
        opt(lower),
        opt(upper),
        opt(row.bfp_upper),
    ]
}

const HEADER: [&str; 5] = ["n", "kind", "lower", "upper", "bfp_upper"];

pub fn render_csv(rows: &[TableRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["pattern"];
    header.extend(HEADER);
    w.write_record(&header).expect("in-memory write");
    for row in rows {
        let mut rec = vec![row.pattern.clone()];
        rec.extend(cells(row));
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
}

/// Right-aligned columns under a header line.
pub fn render_text(rows: &[TableRow]) -> String {
    let body: Vec<[String; 5]> = rows.iter().map(cells).collect();
    let widths: Vec<usize> = (0..5)
        .map(|c| {
            body.iter()
                .map(|r| r[c].len())
                .chain([HEADER[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cols: &[String]| {
        let mut s = cols
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.push('\n');
        s
    };
    let mut out = line(&HEADER.map(String::from));
    for r in &body {
        out += &line(r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(parts: &[usize]) -> MultipartitePattern {
        MultipartitePattern::new(parts.to_vec()).unwrap()
    }

    /// Independent evaluation over `f64`-free rationals via num-rational.
    fn bfp_oracle(n: usize, parts: &[usize]) -> i64 {
        let sr = *parts.last().unwrap() as i64;
        let p = parts[..parts.len() - 1].iter().sum::<usize>() as i64 - 1;
        let n = n as i64;
        let inner = Ratio::new((sr - 1) * (n - p), 2) - Ratio::new(sr * sr, 8);
        p * (p - 1) / 2 + p * (n - p) + inner.ceil().to_integer()
    }

    #[test]
    fn bfp_examples() {
        assert_eq!(bfp_upper(20, &pat(&[3, 3])).unwrap(), 54);
        assert_eq!(bfp_upper(5, &pat(&[1, 1])).unwrap(), 0);
        assert_eq!(bfp_upper(10, &pat(&[2, 3])).unwrap(), 17);
        assert!(bfp_upper(2, &pat(&[3, 3])).is_err());
        assert!(bfp_upper(5, &pat(&[4])).is_err());
        for parts in [[1, 1], [2, 2], [2, 3], [3, 3], [1, 4], [2, 5]] {
            for n in 8..60 {
                assert_eq!(bfp_upper(n, &pat(&parts)).unwrap() as i64, bfp_oracle(n, &parts).max(0));
            }
        }
    }

    #[test]
    fn leading_terms() {
        let lead = |n, parts: &[usize]| match bfp_leading(n, &pat(parts)).unwrap() {
            SatFormulaAnswer::AsymptoticOnly { leading, .. } => leading,
            _ => unreachable!(),
        };
        assert_eq!(lead(100, &[3, 3]), Ratio::from_integer(300));
        assert_eq!(lead(100, &[1, 1]), Ratio::from_integer(0));
        assert_eq!(lead(10, &[2, 3]), Ratio::from_integer(20));
        assert_eq!(lead(3, &[1, 2]), Ratio::new(3, 2));
    }

    #[test]
    fn known_values() {
        assert_eq!(known_sat(10, &pat(&[3, 3])).exact(), Some(21));
        assert_eq!(known_sat(7, &pat(&[3, 3])).exact(), Some(14));
        assert_eq!(known_sat(6, &pat(&[2, 2])).exact(), Some(6));
        assert_eq!(known_sat(6, &pat(&[1, 1, 1, 1])).exact(), Some(9));
        assert_eq!(known_sat(5, &pat(&[1, 1])).exact(), Some(0));
        assert_eq!(known_sat(4, &pat(&[2, 3])).exact(), Some(6));
        assert!(matches!(known_sat(4, &pat(&[2, 2])), SatFormulaAnswer::Bounds { .. }));
        assert_eq!(known_sat(4, &pat(&[3, 3])).exact(), Some(6));
        assert_eq!(known_sat(6, &pat(&[3])), SatFormulaAnswer::NoSaturatedGraph);
        assert!(matches!(
            known_sat(20, &pat(&[2, 4])),
            SatFormulaAnswer::Bounds { lower: None, .. }
        ));
    }

    #[test]
    fn tables() {
        let rows = sat_table(&pat(&[3, 3]), 6, 15).unwrap();
        let values: Vec<_> = rows.iter().map(|r| r.answer.exact().unwrap()).collect();
        assert_eq!(values, [12, 14, 16, 18, 21, 24, 27, 30, 33, 36]);
        let csv = render_csv(&rows);
        assert_eq!(csv.lines().next().unwrap(), "pattern,n,kind,lower,upper,bfp_upper");
        assert_eq!(csv.lines().nth(1).unwrap(), "\"3,3\",6,exact,12,12,12");
        let text = render_text(&rows);
        assert_eq!(text.lines().count(), 11);
        assert!(sat_table(&pat(&[3, 3]), 9, 8).is_err());
    }
}
