//! GHRS codes: the evaluation map `Ev_{α,V}`, generator and parity-check
//! matrices, membership, and exhaustive NRT minimum distance.
//!
//! `GhrsCode::new(field, alpha, v, t)` takes the dimension `t`; the code is
//! the image of the polynomials of degree at most `t - 1`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::matspace::{nrt_column_weight, Matrix, NrtWeight, VecOrder};
use crate::poly::{Degree, Polynomial};

/// Default cap on `q^t` for exhaustive searches.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

/// Which echelon form to apply to the raw monomial generator.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum GeneratorForm {
    /// Rows are `Ev(x^m)` for `m = 0..t-1`.
    #[default]
    Raw,
    Rref,
    Forward,
}

impl FromStr for GeneratorForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(GeneratorForm::Raw),
            "rref" => Ok(GeneratorForm::Rref),
            "forward" => Ok(GeneratorForm::Forward),
            other => Err(Error::Parse(format!("unknown generator form {other:?}"))),
        }
    }
}

/// How the exhaustive search walks the message space.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Enumeration {
    /// One representative per line: vectors whose first nonzero coefficient is 1.
    Projective,
    /// Every nonzero coefficient vector.
    Full,
}

/// A scaled s-jet: column `j` of `Ev_{α,V}(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetBlock {
    pub point: FieldElement,
    pub values: Vec<FieldElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdsReport {
    pub dimension: usize,
    pub distance: NrtWeight,
    /// `(rs + 1) - (dimension + distance)`; zero exactly for MDS codes.
    pub singleton_defect: i64,
    /// False when some multiplier entry is zero, so MDS was checked rather
    /// than guaranteed.
    pub hypothesis_holds: bool,
}

impl MdsReport {
    pub fn is_mds(&self) -> bool {
        self.singleton_defect == 0
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct GhrsCode {
    field: Field,
    alpha: Vec<FieldElement>,
    v: Matrix,
    t: usize,
    all_nonzero: bool,
}

impl fmt::Debug for GhrsCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GhrsCode {{ field: {:?}, r: {}, s: {}, t: {} }}",
            self.field,
            self.r(),
            self.s(),
            self.t
        )
    }
}

impl GhrsCode {
    pub fn new(field: &Field, alpha: Vec<FieldElement>, v: Matrix, t: usize) -> Result<GhrsCode> {
        check_points(field, &alpha, &v)?;
        let n = v.rows() * v.cols();
        if t == 0 || t > n {
            return Err(Error::InvalidParameters(format!("t = {t} must lie in 1..={n}")));
        }
        let all_nonzero = v.data().iter().all(|c| !c.is_zero());
        Ok(GhrsCode {
            field: field.clone(),
            alpha,
            v,
            t,
            all_nonzero,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn alpha(&self) -> &[FieldElement] {
        &self.alpha
    }

    pub fn multipliers(&self) -> &Matrix {
        &self.v
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn r(&self) -> usize {
        self.v.cols()
    }

    pub fn s(&self) -> usize {
        self.v.rows()
    }

    /// Code length `rs`.
    pub fn n(&self) -> usize {
        self.r() * self.s()
    }

    pub fn all_nonzero(&self) -> bool {
        self.all_nonzero
    }

    /// First zero multiplier entry in row-major order, 0-based.
    pub fn first_zero_multiplier(&self) -> Option<(usize, usize)> {
        let r = self.r();
        self.v.data().iter().position(|c| c.is_zero()).map(|k| (k / r, k % r))
    }

    /// Same points and multipliers with a different dimension.
    pub fn with_t(&self, t: usize) -> Result<GhrsCode> {
        GhrsCode::new(&self.field, self.alpha.clone(), self.v.clone(), t)
    }

    /// `Ev_{α,V}(f)` for `deg f ≤ t - 1`.
    pub fn evaluate(&self, f: &Polynomial) -> Result<Matrix> {
        if let Degree::Finite(d) = f.degree() {
            if d >= self.t {
                return Err(Error::DegreeTooHigh {
                    degree: d,
                    bound: self.t - 1,
                });
            }
        }
        evaluate_map(&self.alpha, &self.v, f)
    }

    /// Column `j` (0-based) of `Ev_{α,V}(f)`.
    pub fn jet_block(&self, f: &Polynomial, j: usize) -> Result<JetBlock> {
        if j >= self.r() {
            return Err(Error::DimensionMismatch(format!("column {j} of {}", self.r())));
        }
        let a = self.evaluate(f)?;
        Ok(JetBlock {
            point: self.alpha[j],
            values: a.column(j),
        })
    }

    pub fn generator_matrix(&self, order: VecOrder, form: GeneratorForm) -> Matrix {
        let raw = monomial_generator(&self.alpha, &self.v, self.t, order);
        match form {
            GeneratorForm::Raw => raw,
            GeneratorForm::Rref => raw.rref().0,
            GeneratorForm::Forward => raw.forward_echelon(),
        }
    }

    /// RREF basis of the dual code; `(rs - t) × rs`.
    pub fn parity_check_matrix(&self, order: VecOrder) -> Matrix {
        self.generator_matrix(order, GeneratorForm::Raw).null_space_rref()
    }

    pub fn contains(&self, a: &Matrix) -> Result<bool> {
        if a.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if (a.rows(), a.cols()) != (self.s(), self.r()) {
            return Err(Error::DimensionMismatch(format!(
                "expected {}x{}, got {}x{}",
                self.s(),
                self.r(),
                a.rows(),
                a.cols()
            )));
        }
        let g = self.generator_matrix(VecOrder::RowMajor, GeneratorForm::Raw);
        let row = Matrix::new(&self.field, 1, self.n(), a.vectorize(VecOrder::RowMajor))?;
        g.row_space_contains(&row)
    }

    /// Minimum NRT weight over all nonzero codewords, by projective enumeration.
    pub fn min_distance_exhaustive(&self, budget: u128) -> Result<NrtWeight> {
        self.min_distance_with(budget, Enumeration::Projective)
    }

    /// Exhaustive minimum distance. Each codeword weight is computed by a
    /// matrix scan; when every multiplier is nonzero it is also computed from
    /// vanishing orders, `rs - Σ_j min(ν_f(α_j), s)`, and the two must agree.
    pub fn min_distance_with(&self, budget: u128, mode: Enumeration) -> Result<NrtWeight> {
        let q = self.field.order() as u128;
        let needed = q.checked_pow(self.t as u32).unwrap_or(u128::MAX);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let (s, r, t) = (self.s(), self.r(), self.t);
        let basis: Vec<Matrix> = (0..t)
            .map(|m| evaluate_map(&self.alpha, &self.v, &Polynomial::monomial(&self.field, self.field.one(), m)))
            .collect::<Result<_>>()?;
        let field = &self.field;
        let total = needed as u64;
        let qq = q as u64;

        let weigh = |index: u64| -> Result<Option<usize>> {
            let coeffs = digits(field, index, qq, t);
            let lead = coeffs.iter().find(|c| !c.is_zero());
            match (lead, mode) {
                (None, _) => return Ok(None),
                (Some(c), Enumeration::Projective) if *c != field.one() => return Ok(None),
                _ => {}
            }
            let mut cw = vec![FieldElement::ZERO; s * r];
            for (m, &c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (slot, &b) in cw.iter_mut().zip(basis[m].data()) {
                    *slot = field.add(*slot, field.mul(c, b));
                }
            }
            let scan: usize = (0..r)
                .map(|j| {
                    let col: Vec<FieldElement> = (0..s).map(|i| cw[i * r + j]).collect();
                    nrt_column_weight(&col)
                })
                .sum();
            if self.all_nonzero {
                let f = Polynomial::new(field, coeffs);
                let lemma = s * r
                    - self
                        .alpha
                        .iter()
                        .map(|&a| f.vanishing_order(a).capped(s))
                        .sum::<usize>();
                if lemma != scan {
                    return Err(Error::Verification(format!(
                        "weight routes disagree for f = {f}: scan {scan}, vanishing orders {lemma}"
                    )));
                }
            }
            // a zero codeword from a nonzero f is possible only with zero multipliers
            Ok((scan > 0).then_some(scan))
        };

        let best = (1..total)
            .into_par_iter()
            .map(weigh)
            .try_reduce(|| None, |a, b| Ok(min_opt(a, b)))?;
        best.map(NrtWeight)
            .ok_or_else(|| Error::InvalidParameters("code has no nonzero codeword".into()))
    }

    pub fn mds_check(&self, budget: u128) -> Result<MdsReport> {
        let dimension = self.generator_matrix(VecOrder::RowMajor, GeneratorForm::Raw).rank();
        let distance = self.min_distance_exhaustive(budget)?;
        let singleton_defect = (self.n() as i64 + 1) - (dimension as i64 + distance.value() as i64);
        Ok(MdsReport {
            dimension,
            distance,
            singleton_defect,
            hypothesis_holds: self.all_nonzero,
        })
    }

    /// Code file text: field line, `alpha:`, `t:`, then `V:` and its rows.
    pub fn to_text(&self) -> String {
        let alpha: Vec<String> = self.alpha.iter().map(|a| a.to_string()).collect();
        format!(
            "field: {}\nalpha: {}\nt: {}\nV:\n{}",
            self.field,
            alpha.join(","),
            self.t,
            self.v
        )
    }

    pub fn parse(text: &str) -> Result<GhrsCode> {
        let mut field: Option<Field> = None;
        let mut alpha: Option<Vec<u64>> = None;
        let mut t: Option<usize> = None;
        let mut v_lines: Vec<&str> = Vec::new();
        let mut in_v = false;
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if in_v {
                v_lines.push(line);
                continue;
            }
            let (key, value) = match line.split_once(':') {
                Some((k, v)) if !k.contains(|c: char| c.is_ascii_digit()) => (k.trim(), v.trim()),
                _ if field.is_none() => ("field", line),
                _ => return Err(Error::Parse(format!("unexpected line {line:?}"))),
            };
            match key.to_ascii_lowercase().as_str() {
                "field" | "q" => field = Some(value.parse()?),
                "alpha" => {
                    alpha = Some(
                        value
                            .split(',')
                            .map(|a| a.trim().parse().map_err(|_| Error::Parse(format!("bad point {a:?}"))))
                            .collect::<Result<_>>()?,
                    )
                }
                "t" => t = Some(value.parse().map_err(|_| Error::Parse(format!("bad t {value:?}")))?),
                "v" => {
                    in_v = true;
                    if !value.is_empty() {
                        v_lines.push(value);
                    }
                }
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        let field = field.ok_or_else(|| Error::Parse("missing field line".into()))?;
        let alpha = alpha.ok_or_else(|| Error::Parse("missing alpha".into()))?;
        let t = t.ok_or_else(|| Error::Parse("missing t".into()))?;
        if v_lines.is_empty() {
            return Err(Error::Parse("missing V block".into()));
        }
        let r = v_lines[0].split_whitespace().count();
        let v = Matrix::parse_rows(&field, &v_lines, v_lines.len(), r)?;
        let alpha = alpha.into_iter().map(|a| field.element(a)).collect::<Result<Vec<_>>>()?;
        GhrsCode::new(&field, alpha, v, t)
    }
}

fn min_opt(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Base-q digits of `index`, least significant first, as field elements.
fn digits(field: &Field, mut index: u64, q: u64, len: usize) -> Vec<FieldElement> {
    (0..len)
        .map(|_| {
            let d = index % q;
            index /= q;
            field.element(d).expect("digit below q")
        })
        .collect()
}

fn check_points(field: &Field, alpha: &[FieldElement], v: &Matrix) -> Result<()> {
    if v.field() != field {
        return Err(Error::FieldMismatch);
    }
    if alpha.len() != v.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{} points but V has {} columns",
            alpha.len(),
            v.cols()
        )));
    }
    if v.rows() == 0 {
        return Err(Error::DimensionMismatch("V must have at least one row".into()));
    }
    if let Some(a) = alpha.iter().find(|a| a.value() >= field.order()) {
        return Err(Error::ElementOutOfRange(a.value() as u64));
    }
    let mut seen = alpha.to_vec();
    seen.sort();
    seen.dedup();
    if seen.len() != alpha.len() {
        return Err(Error::DuplicatePoints);
    }
    Ok(())
}

/// `Ev_{α,V}(f)` with no degree bound: entry `(i, j)` is `v_ij ∂^i f(α_j)`.
pub fn evaluate_map(alpha: &[FieldElement], v: &Matrix, f: &Polynomial) -> Result<Matrix> {
    let field = v.field();
    if f.field() != field {
        return Err(Error::FieldMismatch);
    }
    check_points(field, alpha, v)?;
    let (s, r) = (v.rows(), v.cols());
    let mut a = Matrix::zeros(field, s, r);
    for (j, &u) in alpha.iter().enumerate() {
        for i in 0..s {
            if f.degree().is_below(i) {
                break;
            }
            a.set(i, j, field.mul(v.get(i, j), f.hasse_eval(i, u)));
        }
    }
    Ok(a)
}

/// Rows `vectorize(Ev_{α,V}(x^m))` for `m = 0..t-1`.
pub fn monomial_generator(alpha: &[FieldElement], v: &Matrix, t: usize, order: VecOrder) -> Matrix {
    let field = v.field();
    let n = v.rows() * v.cols();
    let mut data = Vec::with_capacity(t * n);
    for m in 0..t {
        let xm = Polynomial::monomial(field, field.one(), m);
        let a = evaluate_map(alpha, v, &xm).expect("points validated by caller");
        data.extend(a.vectorize(order));
    }
    Matrix::new(field, t, n, data).expect("generator shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn pts(f: &Field, a: &[i64]) -> Vec<FieldElement> {
        a.iter().map(|&x| f.from_int(x)).collect()
    }

    pub(crate) fn q17_code() -> GhrsCode {
        let f = gf(17);
        let v = Matrix::from_ints(
            &f,
            &[[8, 9, 10], [11, 11, 16], [11, 2, 11], [12, 7, 12], [8, 15, 10], [2, 5, 10], [10, 4, 16]],
        )
        .unwrap();
        GhrsCode::new(&f, pts(&f, &[3, 2, 7]), v, 3).unwrap()
    }

    /// Exact integer binomial.
    fn choose(n: u64, k: u64) -> u128 {
        if k > n {
            return 0;
        }
        (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
    }

    #[test]
    fn raw_generator_matches_integer_oracle() {
        // Entry (m; i, j) of the raw generator is v_ij C(m, i) α_j^{m-i}.
        let code = q17_code();
        let g = code.generator_matrix(VecOrder::RowMajor, GeneratorForm::Raw);
        let (s, r) = (7, 3);
        for m in 0..3u64 {
            for i in 0..s {
                for j in 0..r {
                    let a = code.alpha()[j].value() as u128;
                    let v = code.multipliers().get(i, j).value() as u128;
                    let want = if (i as u64) <= m {
                        v * choose(m, i as u64) * a.pow((m - i as u64) as u32) % 17
                    } else {
                        0
                    };
                    assert_eq!(g.get(m as usize, i * r + j).value() as u128, want);
                }
            }
        }
    }

    #[test]
    fn q17_rref_generator_frozen() {
        let code = q17_code();
        let g = code.generator_matrix(VecOrder::RowMajor, GeneratorForm::Rref);
        let mut want = vec![
            vec![1, 0, 0, 9, 15, 6, 14, 1, 14],
            vec![0, 1, 0, 13, 11, 12, 1, 11, 1],
            vec![0, 0, 1, 10, 7, 15, 10, 8, 10],
        ];
        for row in &mut want {
            row.resize(21, 0);
        }
        assert_eq!(g, Matrix::from_ints(code.field(), &want).unwrap());
        assert_eq!(g.count_zeros(), 42);
    }

    #[test]
    fn q17_parity_check_frozen() {
        let code = q17_code();
        let h = code.parity_check_matrix(VecOrder::RowMajor);
        assert_eq!((h.rows(), h.cols()), (18, 21));
        let head = [
            [1, 0, 6, 0, 0, 2, 0, 0, 10],
            [0, 1, 11, 0, 0, 6, 0, 0, 12],
            [0, 0, 0, 1, 0, 11, 0, 0, 8],
            [0, 0, 0, 0, 1, 11, 0, 0, 10],
            [0, 0, 0, 0, 0, 0, 1, 0, 16],
            [0, 0, 0, 0, 0, 0, 0, 1, 6],
        ];
        for (i, row) in head.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(h.get(i, j).value(), x);
            }
            assert!((9..21).all(|j| h.get(i, j).is_zero()));
        }
        for k in 0..12 {
            for j in 0..21 {
                assert_eq!(h.get(6 + k, j).value(), u32::from(j == 9 + k));
            }
        }
        assert_eq!(h.count_zeros(), 348);
        let g = code.generator_matrix(VecOrder::RowMajor, GeneratorForm::Raw);
        assert!(h.matmul(&g.transpose()).unwrap().is_zero());
    }

    #[test]
    fn q17_forward_zero_count() {
        let g = q17_code().generator_matrix(VecOrder::RowMajor, GeneratorForm::Forward);
        assert_eq!(g.count_zeros(), 48);
    }

    #[test]
    fn evaluate_examples() {
        let code = q17_code();
        let f = code.field().clone();
        let a = code.evaluate(&Polynomial::constant(&f, f.one())).unwrap();
        assert_eq!(a.row(0), pts(&f, &[8, 9, 10]).as_slice());
        assert!((1..7).all(|i| a.row(i).iter().all(|c| c.is_zero())));
        assert!(code.evaluate(&Polynomial::zero(&f)).unwrap().is_zero());
        // (x - 3)^2 vanishes to order 2 at α_1 = 3
        let g = Polynomial::linear_power(&f, f.from_int(3), 2);
        let a = code.evaluate(&g).unwrap();
        assert!(a.get(0, 0).is_zero() && a.get(1, 0).is_zero() && !a.get(2, 0).is_zero());
        let too_big = Polynomial::monomial(&f, f.one(), 3);
        assert_eq!(code.evaluate(&too_big), Err(Error::DegreeTooHigh { degree: 3, bound: 2 }));
    }

    #[test]
    fn jet_block_is_column() {
        let code = q17_code();
        let f = code.field().clone();
        let g = Polynomial::from_ints(&f, &[5, 1, 9]);
        let a = code.evaluate(&g).unwrap();
        for j in 0..3 {
            let jb = code.jet_block(&g, j).unwrap();
            assert_eq!(jb.point, code.alpha()[j]);
            assert_eq!(jb.values, a.column(j));
        }
    }

    #[test]
    fn generator_t1_and_parity_full() {
        let code = q17_code().with_t(1).unwrap();
        let g = code.generator_matrix(VecOrder::RowMajor, GeneratorForm::Raw);
        let mut want = vec![8, 9, 10];
        want.resize(21, 0);
        assert_eq!(g, Matrix::from_ints(code.field(), &[want]).unwrap());
        let full = q17_code().with_t(21).unwrap();
        assert_eq!(full.parity_check_matrix(VecOrder::RowMajor).rows(), 0);
    }

    #[test]
    fn contains_examples() {
        let code = q17_code();
        let f = code.field().clone();
        let g = Polynomial::from_ints(&f, &[1, 2, 3]);
        assert!(code.contains(&code.evaluate(&g).unwrap()).unwrap());
        assert!(code.contains(&Matrix::zeros(&f, 7, 3)).unwrap());
        assert!(!code.contains(&Matrix::elementary(&f, 7, 3, 6, 0)).unwrap());
        assert!(matches!(code.contains(&Matrix::zeros(&f, 3, 7)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn constructor_rejects_bad_input() {
        let f = gf(5);
        let v = Matrix::from_ints(&f, &[[1, 1]]).unwrap();
        assert_eq!(GhrsCode::new(&f, pts(&f, &[2, 2]), v.clone(), 1), Err(Error::DuplicatePoints));
        assert!(matches!(GhrsCode::new(&f, pts(&f, &[1, 2]), v.clone(), 3), Err(Error::InvalidParameters(_))));
        assert!(matches!(GhrsCode::new(&f, pts(&f, &[1, 2]), v.clone(), 0), Err(Error::InvalidParameters(_))));
        assert!(matches!(GhrsCode::new(&f, pts(&f, &[1]), v.clone(), 1), Err(Error::DimensionMismatch(_))));
        assert_eq!(GhrsCode::new(&gf(7), pts(&gf(7), &[1, 2]), v, 1), Err(Error::FieldMismatch));
    }

    #[test]
    fn min_distance_examples() {
        let code = q17_code();
        assert_eq!(code.min_distance_exhaustive(DEFAULT_BUDGET).unwrap(), NrtWeight(19));
        assert_eq!(code.with_t(1).unwrap().min_distance_exhaustive(DEFAULT_BUDGET).unwrap(), NrtWeight(21));

        let f = gf(5);
        let v = Matrix::from_ints(&f, &[[1, 1, 1], [1, 1, 1]]).unwrap();
        let small = GhrsCode::new(&f, pts(&f, &[0, 1, 2]), v, 2).unwrap();
        let report = small.mds_check(DEFAULT_BUDGET).unwrap();
        assert_eq!((report.dimension, report.distance, report.singleton_defect), (2, NrtWeight(5), 0));
        assert!(report.is_mds() && report.hypothesis_holds);
    }

    #[test]
    fn min_distance_budget() {
        let code = q17_code();
        assert_eq!(
            code.min_distance_exhaustive(1000),
            Err(Error::BudgetExceeded { needed: 4913, budget: 1000 })
        );
    }

    #[test]
    fn zero_multiplier_is_reported() {
        let f = gf(5);
        let v = Matrix::from_ints(&f, &[[0, 1, 1], [1, 1, 1]]).unwrap();
        let code = GhrsCode::new(&f, pts(&f, &[0, 1, 2]), v, 2).unwrap();
        assert!(!code.all_nonzero());
        assert_eq!(code.first_zero_multiplier(), Some((0, 0)));
        let report = code.mds_check(DEFAULT_BUDGET).unwrap();
        assert!(!report.hypothesis_holds);
        assert!(report.singleton_defect > 0);
    }

    #[test]
    fn projective_matches_full_enumeration() {
        for p in [2u32, 3, 5] {
            let f = gf(p);
            let r = 2.min(p as usize);
            let v = Matrix::from_ints(&f, &vec![vec![1i64; r]; 2]).unwrap();
            let alpha: Vec<FieldElement> = (0..r as i64).map(|a| f.from_int(a)).collect();
            for t in 1..=2 * r {
                let code = GhrsCode::new(&f, alpha.clone(), v.clone(), t).unwrap();
                assert_eq!(
                    code.min_distance_with(DEFAULT_BUDGET, Enumeration::Projective),
                    code.min_distance_with(DEFAULT_BUDGET, Enumeration::Full)
                );
            }
        }
    }

    #[test]
    fn code_text_round_trip() {
        let code = q17_code();
        let text = code.to_text();
        assert!(text.starts_with("field: 17\nalpha: 3,2,7\nt: 3\nV:\n8 9 10\n"));
        assert_eq!(GhrsCode::parse(&text).unwrap(), code);
        let bare = "17\nalpha: 3,2,7\nt: 3\nV:\n8 9 10\n11 11 16\n";
        assert_eq!(GhrsCode::parse(bare).unwrap().s(), 2);
        assert!(GhrsCode::parse("17\nalpha: 3,3\nt: 1\nV:\n1 1\n").is_err());
        assert!(GhrsCode::parse("17\nt: 1\nV:\n1 1\n").is_err());
    }

    fn arb_code(p: u32) -> impl Strategy<Value = (GhrsCode, Vec<i64>, Vec<i64>, i64)> {
        (1usize..=3.min(p as usize), 1usize..=3).prop_flat_map(move |(r, s)| {
            (
                Just((r, s)),
                prop::sample::subsequence((0..p as i64).collect::<Vec<_>>(), r),
                prop::collection::vec(1..p as i64, r * s),
                1..=r * s,
            )
                .prop_flat_map(move |((r, s), alpha, v, t)| {
                    let f = gf(p);
                    let vm = Matrix::new(&f, s, r, v.iter().map(|&x| f.from_int(x)).collect()).unwrap();
                    let code = GhrsCode::new(&f, pts(&f, &alpha), vm, t).unwrap();
                    (
                        Just(code),
                        prop::collection::vec(0..p as i64, t),
                        prop::collection::vec(0..p as i64, t),
                        0..p as i64,
                    )
                })
        })
    }

    proptest! {
        #[test]
        fn evaluation_is_linear((code, a, b, c) in arb_code(7)) {
            let f = code.field().clone();
            let (pa, pb) = (Polynomial::from_ints(&f, &a), Polynomial::from_ints(&f, &b));
            let c = f.from_int(c);
            let lhs = code.evaluate(&pa.add(&pb.scale(c))).unwrap();
            let rhs = code.evaluate(&pa).unwrap().add(&code.evaluate(&pb).unwrap().scale(c)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn raw_generator_is_injective((code, _a, _b, _c) in arb_code(5)) {
            prop_assert_eq!(code.generator_matrix(VecOrder::RowMajor, GeneratorForm::Raw).rank(), code.t());
            prop_assert_eq!(code.generator_matrix(VecOrder::ColMajor, GeneratorForm::Raw).rank(), code.t());
        }

        #[test]
        fn leading_zeros_follow_vanishing_order((code, a, _b, _c) in arb_code(5)) {
            let f = Polynomial::from_ints(code.field(), &a);
            let m = code.evaluate(&f).unwrap();
            let s = code.s();
            for (j, &u) in code.alpha().iter().enumerate() {
                let col = m.column(j);
                let lead = col.iter().position(|c| !c.is_zero()).unwrap_or(s);
                prop_assert_eq!(lead, f.vanishing_order(u).capped(s));
            }
            let lemma = code.n() - code.alpha().iter().map(|&u| f.vanishing_order(u).capped(s)).sum::<usize>();
            prop_assert_eq!(m.nrt_weight().value(), lemma);
        }

        #[test]
        fn membership_agrees_with_parity_check((code, a, _b, _c) in arb_code(3)) {
            let f = Polynomial::from_ints(code.field(), &a);
            let m = code.evaluate(&f).unwrap();
            prop_assert!(code.contains(&m).unwrap());
            let h = code.parity_check_matrix(VecOrder::RowMajor);
            if h.rows() > 0 {
                let x = Matrix::new(code.field(), code.n(), 1, m.vectorize(VecOrder::RowMajor)).unwrap();
                prop_assert!(h.matmul(&x).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn singleton_defect_nonnegative_on_small_grid() {
        // Includes codes with zero multipliers, where MDS can fail but the
        // bound still holds.
        let f = gf(3);
        let alpha = pts(&f, &[0, 1]);
        for code_v in 0..3usize.pow(4) {
            let data: Vec<FieldElement> = (0..4).map(|k| f.from_int(((code_v / 3usize.pow(k)) % 3) as i64)).collect();
            let v = Matrix::new(&f, 2, 2, data).unwrap();
            for t in 1..=4 {
                let code = GhrsCode::new(&f, alpha.clone(), v.clone(), t).unwrap();
                if code.generator_matrix(VecOrder::RowMajor, GeneratorForm::Raw).rank() == 0 {
                    assert!(code.mds_check(DEFAULT_BUDGET).is_err());
                    continue;
                }
                let report = code.mds_check(DEFAULT_BUDGET).unwrap();
                assert!(report.singleton_defect >= 0);
                if code.all_nonzero() {
                    assert!(report.is_mds());
                }
            }
        }
    }
}
