//! Sparsity of generator and parity-check matrices, zero-count lower bounds
//! for the forward-echelon generator, LDPC conditions, and Tanner graphs.
//!
//! A matrix is sparse when it has fewer nonzero entries than zero entries.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ghrs::{GeneratorForm, GhrsCode};
use crate::matspace::{Matrix, VecOrder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsityReport {
    pub rows: usize,
    pub cols: usize,
    pub zeros: usize,
    pub nonzeros: usize,
    pub row_weights: Vec<usize>,
    pub col_weights: Vec<usize>,
}

impl SparsityReport {
    pub fn of(m: &Matrix) -> SparsityReport {
        let row_weights: Vec<usize> = (0..m.rows())
            .map(|i| m.row(i).iter().filter(|c| !c.is_zero()).count())
            .collect();
        let col_weights: Vec<usize> = (0..m.cols())
            .map(|j| (0..m.rows()).filter(|&i| !m.get(i, j).is_zero()).count())
            .collect();
        let nonzeros = row_weights.iter().sum();
        SparsityReport {
            rows: m.rows(),
            cols: m.cols(),
            zeros: m.rows() * m.cols() - nonzeros,
            nonzeros,
            row_weights,
            col_weights,
        }
    }

    pub fn total(&self) -> usize {
        self.rows * self.cols
    }

    /// `(zeros, total)`.
    pub fn fraction(&self) -> (usize, usize) {
        (self.zeros, self.total())
    }

    /// Sparsity as a percentage with two decimals, rounded half up.
    pub fn percent(&self) -> String {
        let total = self.total() as u128;
        if total == 0 {
            return "0.00".into();
        }
        let hundredths = (self.zeros as u128 * 20_000 + total) / (2 * total);
        format!("{}.{:02}", hundredths / 100, hundredths % 100)
    }

    pub fn is_sparse(&self) -> bool {
        self.nonzeros < self.zeros
    }

    pub fn max_row_weight(&self) -> usize {
        self.row_weights.iter().copied().max().unwrap_or(0)
    }

    pub fn max_col_weight(&self) -> usize {
        self.col_weights.iter().copied().max().unwrap_or(0)
    }
}

pub fn sparsity_report(m: &Matrix) -> SparsityReport {
    SparsityReport::of(m)
}

/// Lower bound on the zeros of the `t × rs` forward-echelon generator.
///
/// For `2 ≤ s ≤ t`: `rt - r(r+1)/2 + r s(s-1)/2`.
/// For `1 < t < s`: `rt(s-t) + rt - r(r+1)/2 + r t(t-1)/2`.
pub fn zero_lower_bound(r: usize, s: usize, t: usize) -> Result<usize> {
    if r == 0 {
        return Err(Error::CaseOutOfRange { r, s, t });
    }
    let tri = r * (r + 1) / 2;
    let value = if 2 <= s && s <= t {
        (r * t + r * s * (s - 1) / 2).checked_sub(tri)
    } else if 1 < t && t < s {
        (r * t * (s - t) + r * t + r * t * (t - 1) / 2).checked_sub(tri)
    } else {
        return Err(Error::CaseOutOfRange { r, s, t });
    };
    // a negative bound carries no information
    Ok(value.unwrap_or(0))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum LdpcCondition {
    /// `t = s` and `r + 1 ≤ s`.
    Cond1,
    /// `st ≥ t² + t + r + 1`.
    Cond2,
    Neither,
}

impl fmt::Display for LdpcCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LdpcCondition::Cond1 => "cond1",
            LdpcCondition::Cond2 => "cond2",
            LdpcCondition::Neither => "none",
        };
        write!(f, "{s}")
    }
}

/// Which sufficient condition, if any, makes the dual of the dimension-`t`
/// code LDPC. Requires `r, s, t ≥ 2` and `t ≤ rs - 1`.
pub fn ldpc_condition(r: usize, s: usize, t: usize) -> Result<LdpcCondition> {
    if r < 2 || s < 2 || t < 2 || t + 1 > r * s {
        return Err(Error::HypothesisViolation(format!(
            "need r, s, t ≥ 2 and t ≤ rs - 1, got (r, s, t) = ({r}, {s}, {t})"
        )));
    }
    Ok(if t == s && r + 1 <= s {
        LdpcCondition::Cond1
    } else if s * t >= t * t + t + r + 1 {
        LdpcCondition::Cond2
    } else {
        LdpcCondition::Neither
    })
}

/// `rst/2 ≤ rt - r(r+1)/2 + r s(s-1)/2` at `t = s`, doubled to stay integral.
pub fn cond1_inequality(r: usize, s: usize) -> bool {
    let t = s;
    2 * r * t + r * s * (s - 1) >= r * s * t + r * (r + 1)
}

/// `rst - rt²/2 - rt/2 - r(r+1)/2 ≥ rst/2`, doubled to stay integral.
pub fn cond2_inequality(r: usize, s: usize, t: usize) -> bool {
    (2 * r * s * t) as i128 - (r * t * t + r * t + r * (r + 1)) as i128 >= (r * s * t) as i128
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsityCertificate {
    /// Forward-echelon generator of the dimension-`t` code, a parity check
    /// for its dual.
    pub matrix: Matrix,
    pub report: SparsityReport,
    pub bound: Option<usize>,
    pub condition: LdpcCondition,
}

impl SparsityCertificate {
    pub fn bound_satisfied(&self) -> bool {
        self.bound.is_none_or(|b| self.report.zeros >= b)
    }

    /// The dual code is certified LDPC when a condition applies and the
    /// parity check is sparse.
    pub fn certified(&self) -> bool {
        self.condition != LdpcCondition::Neither && self.report.is_sparse()
    }

    /// Consistent when the bound holds and every applicable condition yields
    /// a sparse matrix.
    pub fn consistent(&self) -> bool {
        self.bound_satisfied() && (self.condition == LdpcCondition::Neither || self.report.is_sparse())
    }
}

pub fn sparsity_certificate(code: &GhrsCode) -> Result<SparsityCertificate> {
    if let Some((row, col)) = code.first_zero_multiplier() {
        return Err(Error::HypothesisViolation(format!(
            "multiplier entry ({}, {}) is zero",
            row + 1,
            col + 1
        )));
    }
    let (r, s, t) = (code.r(), code.s(), code.t());
    let condition = ldpc_condition(r, s, t)?;
    let matrix = code.generator_matrix(VecOrder::RowMajor, GeneratorForm::Forward);
    let report = SparsityReport::of(&matrix);
    Ok(SparsityCertificate {
        bound: zero_lower_bound(r, s, t).ok(),
        matrix,
        report,
        condition,
    })
}

/// Bipartite graph with variable nodes for columns and check nodes for rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TannerGraph {
    n_vars: usize,
    /// 0-based variable indices per check, ascending.
    checks: Vec<Vec<usize>>,
}

impl TannerGraph {
    pub fn from_parity_check(h: &Matrix) -> TannerGraph {
        let checks = (0..h.rows())
            .map(|i| (0..h.cols()).filter(|&j| !h.get(i, j).is_zero()).collect())
            .collect();
        TannerGraph {
            n_vars: h.cols(),
            checks,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_checks(&self) -> usize {
        self.checks.len()
    }

    /// 0-based variable neighbours of check `c`.
    pub fn check_neighbors(&self, c: usize) -> &[usize] {
        &self.checks[c]
    }

    /// 0-based check neighbours of every variable.
    pub fn var_neighbors(&self) -> Vec<Vec<usize>> {
        let mut vars = vec![Vec::new(); self.n_vars];
        for (c, vs) in self.checks.iter().enumerate() {
            for &v in vs {
                vars[v].push(c);
            }
        }
        vars
    }

    /// `(variable, check)` pairs, 0-based, ordered by check then variable.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.checks
            .iter()
            .enumerate()
            .flat_map(|(c, vs)| vs.iter().map(move |&v| (v, c)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.checks.iter().map(Vec::len).sum()
    }

    pub fn to_alist(&self) -> String {
        let vars = self.var_neighbors();
        let col_w: Vec<usize> = vars.iter().map(Vec::len).collect();
        let row_w: Vec<usize> = self.checks.iter().map(Vec::len).collect();
        let max_col = col_w.iter().copied().max().unwrap_or(0);
        let max_row = row_w.iter().copied().max().unwrap_or(0);
        let join = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let padded = |xs: &[usize], width: usize| {
            let mut v: Vec<usize> = xs.iter().map(|x| x + 1).collect();
            v.resize(width, 0);
            join(&v)
        };
        let mut out = String::new();
        out.push_str(&format!("{} {}\n", self.n_vars, self.n_checks()));
        out.push_str(&format!("{max_col} {max_row}\n"));
        out.push_str(&join(&col_w));
        out.push('\n');
        out.push_str(&join(&row_w));
        out.push('\n');
        for v in &vars {
            out.push_str(&padded(v, max_col));
            out.push('\n');
        }
        for c in &self.checks {
            out.push_str(&padded(c, max_row));
            out.push('\n');
        }
        out
    }

    pub fn parse_alist(text: &str) -> Result<TannerGraph> {
        let lines: Vec<&str> = text.lines().collect();
        let nums = |idx: usize| -> Result<Vec<usize>> {
            let line = lines
                .get(idx)
                .ok_or_else(|| Error::Parse(format!("alist truncated at line {}", idx + 1)))?;
            line.split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad alist token {t:?}"))))
                .collect()
        };
        let header = nums(0)?;
        let [n, m] = header.as_slice() else {
            return Err(Error::Parse("alist header must be \"n m\"".into()));
        };
        let (n, m) = (*n, *m);
        let maxes = nums(1)?;
        if maxes.len() != 2 {
            return Err(Error::Parse("alist line 2 must hold two maxima".into()));
        }
        let col_w = nums(2)?;
        let row_w = nums(3)?;
        if col_w.len() != n || row_w.len() != m {
            return Err(Error::Parse("alist weight lines have the wrong length".into()));
        }
        let mut checks = vec![Vec::new(); m];
        let mut from_vars = vec![Vec::new(); m];
        for v in 0..n {
            let entries = nums(4 + v)?;
            let real: Vec<usize> = entries.iter().copied().filter(|&x| x != 0).collect();
            if real.len() != col_w[v] {
                return Err(Error::Parse(format!("variable {} lists {} checks", v + 1, real.len())));
            }
            for c in real {
                if c > m {
                    return Err(Error::Parse(format!("check index {c} out of range")));
                }
                from_vars[c - 1].push(v);
            }
        }
        for (c, slot) in checks.iter_mut().enumerate() {
            let entries = nums(4 + n + c)?;
            let mut real: Vec<usize> = entries.iter().copied().filter(|&x| x != 0).map(|x| x - 1).collect();
            if real.len() != row_w[c] || real.iter().any(|&v| v >= n) {
                return Err(Error::Parse(format!("check {} has a bad variable list", c + 1)));
            }
            real.sort_unstable();
            *slot = real;
        }
        if checks != from_vars {
            return Err(Error::Parse("variable and check adjacency lists disagree".into()));
        }
        let graph = TannerGraph { n_vars: n, checks };
        let vars = graph.var_neighbors();
        let max_col = vars.iter().map(Vec::len).max().unwrap_or(0);
        let max_row = graph.checks.iter().map(Vec::len).max().unwrap_or(0);
        if maxes != [max_col, max_row] {
            return Err(Error::Parse("alist maxima disagree with the lists".into()));
        }
        Ok(graph)
    }

    /// Undirected DOT graph; variables `v1..vn` are circles, checks `c1..cm` boxes.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph tanner {\n");
        out.push_str("  node [shape=circle];");
        for v in 1..=self.n_vars {
            out.push_str(&format!(" v{v};"));
        }
        out.push_str("\n  node [shape=box];");
        for c in 1..=self.n_checks() {
            out.push_str(&format!(" c{c};"));
        }
        out.push('\n');
        for (v, c) in self.edges() {
            out.push_str(&format!("  v{} -- c{};\n", v + 1, c + 1));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Alist,
    Dot,
}

impl std::str::FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alist" => Ok(GraphFormat::Alist),
            "dot" => Ok(GraphFormat::Dot),
            other => Err(Error::Parse(format!("unknown graph format {other:?}"))),
        }
    }
}

pub fn export_graph(g: &TannerGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Alist => g.to_alist(),
        GraphFormat::Dot => g.to_dot(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightReport {
    pub max_row: usize,
    pub max_col: usize,
    /// weight -> number of rows with that weight
    pub row_histogram: BTreeMap<usize, usize>,
    pub col_histogram: BTreeMap<usize, usize>,
    /// 0-based columns whose weight exceeds the supplied bound.
    pub col_bound_violations: Vec<usize>,
}

/// Row and column weights of `h`, flagging columns heavier than `col_bound`.
pub fn measured_weights(h: &Matrix, col_bound: Option<usize>) -> WeightReport {
    let rep = SparsityReport::of(h);
    let hist = |ws: &[usize]| {
        let mut m = BTreeMap::new();
        for &w in ws {
            *m.entry(w).or_insert(0) += 1;
        }
        m
    };
    WeightReport {
        max_row: rep.max_row_weight(),
        max_col: rep.max_col_weight(),
        row_histogram: hist(&rep.row_weights),
        col_histogram: hist(&rep.col_weights),
        col_bound_violations: col_bound
            .map(|b| (0..rep.cols).filter(|&j| rep.col_weights[j] > b).collect())
            .unwrap_or_default(),
    }
}
