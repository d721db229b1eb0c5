//! Quasi-cyclic GHRS codes.
//!
//! With `α` of multiplicative order `r`, points `u_j = α^{j-1}` and
//! multipliers `v_{i,j} = seed_i α^{(i-1)(j-1)}`, the code is closed under
//! rotating codeword columns to the right. The witness for a shifted codeword
//! of `f` is `g(x) = f(x / α)`.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::ghrs::GhrsCode;
use crate::matspace::{Matrix, VecOrder};
use crate::poly::Polynomial;

/// Rotates columns right by `ell` (mod r): column `j` moves to `j + ell`.
pub fn column_shift(a: &Matrix, ell: usize) -> Matrix {
    let r = a.cols();
    let mut out = Matrix::zeros(a.field(), a.rows(), r);
    for i in 0..a.rows() {
        for j in 0..r {
            out.set(i, (j + ell) % r, a.get(i, j));
        }
    }
    out
}

/// Rotates a vector right by `ell` positions.
pub fn cyclic_shift(v: &[FieldElement], ell: usize) -> Vec<FieldElement> {
    let n = v.len();
    if n == 0 {
        return Vec::new();
    }
    let mut out = v.to_vec();
    out.rotate_right(ell % n);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QcSpec {
    field: Field,
    alpha: FieldElement,
    r: usize,
    seed: Vec<FieldElement>,
}

impl QcSpec {
    pub fn new(field: &Field, alpha: FieldElement, r: usize, seed: Vec<FieldElement>) -> Result<QcSpec> {
        if alpha.value() >= field.order() {
            return Err(Error::ElementOutOfRange(alpha.value() as u64));
        }
        if seed.is_empty() {
            return Err(Error::InvalidParameters("seed column must be nonempty".into()));
        }
        let actual = field.multiplicative_order(alpha);
        if actual != Some(r) {
            return Err(Error::OrderMismatch { expected: r, actual });
        }
        if let Some(i) = seed.iter().position(|c| c.is_zero()) {
            return Err(Error::ZeroSeed(i + 1));
        }
        if let Some(c) = seed.iter().find(|c| c.value() >= field.order()) {
            return Err(Error::ElementOutOfRange(c.value() as u64));
        }
        Ok(QcSpec {
            field: field.clone(),
            alpha,
            r,
            seed,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn alpha(&self) -> FieldElement {
        self.alpha
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.seed.len()
    }

    pub fn seed(&self) -> &[FieldElement] {
        &self.seed
    }

    /// `u_j = α^{j-1}`.
    pub fn points(&self) -> Vec<FieldElement> {
        (0..self.r).map(|j| self.field.pow(self.alpha, j as u64)).collect()
    }

    /// `v_{i,j} = seed_i α^{(i-1)(j-1)}`.
    pub fn multipliers(&self) -> Matrix {
        let f = &self.field;
        let mut v = Matrix::zeros(f, self.s(), self.r);
        for (i, &c) in self.seed.iter().enumerate() {
            for j in 0..self.r {
                v.set(i, j, f.mul(c, f.pow(self.alpha, (i * j) as u64)));
            }
        }
        v
    }

    /// Key/value text: `q`, `r`, `alpha`, `seed` (comma-separated), optional
    /// `s` (must match the seed length) and `t`.
    pub fn parse(text: &str) -> Result<(QcSpec, Option<usize>)> {
        let mut field = None;
        let mut r = None;
        let mut alpha = None;
        let mut s = None;
        let mut seed = None;
        let mut t = None;
        let int = |v: &str| -> Result<u64> { v.trim().parse().map_err(|_| Error::Parse(format!("bad integer {v:?}"))) };
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected key: value, got {line:?}")))?;
            match k.trim().to_ascii_lowercase().as_str() {
                "q" | "field" => field = Some(v.trim().parse::<Field>()?),
                "r" => r = Some(int(v)? as usize),
                "alpha" => alpha = Some(int(v)?),
                "s" => s = Some(int(v)? as usize),
                "t" => t = Some(int(v)? as usize),
                "seed" => seed = Some(v.split(',').map(int).collect::<Result<Vec<u64>>>()?),
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        let field = field.ok_or_else(|| Error::Parse("missing q".into()))?;
        let r = r.ok_or_else(|| Error::Parse("missing r".into()))?;
        let alpha = field.element(alpha.ok_or_else(|| Error::Parse("missing alpha".into()))?)?;
        let seed = seed
            .ok_or_else(|| Error::Parse("missing seed".into()))?
            .into_iter()
            .map(|c| field.element(c))
            .collect::<Result<Vec<_>>>()?;
        if let Some(s) = s {
            if s != seed.len() {
                return Err(Error::Parse(format!("s = {s} but the seed has {} entries", seed.len())));
            }
        }
        Ok((QcSpec::new(&field, alpha, r, seed)?, t))
    }

    pub fn to_text(&self, t: Option<usize>) -> String {
        let seed: Vec<String> = self.seed.iter().map(|c| c.to_string()).collect();
        let mut out = format!(
            "q: {}\nr: {}\nalpha: {}\ns: {}\nseed: {}\n",
            self.field,
            self.r,
            self.alpha,
            self.s(),
            seed.join(",")
        );
        if let Some(t) = t {
            out.push_str(&format!("t: {t}\n"));
        }
        out
    }
}

pub fn qc_code(spec: &QcSpec, t: usize) -> Result<GhrsCode> {
    GhrsCode::new(spec.field(), spec.points(), spec.multipliers(), t)
}

/// True when `v_{i,j} = v_{i,j-1} α^{i-1}` for every `j`, cyclically.
pub fn satisfies_ratios(alpha: FieldElement, v: &Matrix) -> bool {
    let f = v.field();
    let r = v.cols();
    (0..v.rows()).all(|i| {
        let step = f.pow(alpha, i as u64);
        (0..r).all(|j| v.get(i, (j + 1) % r) == f.mul(v.get(i, j), step))
    })
}

/// Accepts an explicit multiplier matrix after checking the points are the
/// powers of `α` and the ratio condition holds.
pub fn qc_code_from_multipliers(field: &Field, alpha: FieldElement, v: Matrix, t: usize) -> Result<GhrsCode> {
    let r = v.cols();
    let actual = field.multiplicative_order(alpha);
    if actual != Some(r) {
        return Err(Error::OrderMismatch { expected: r, actual });
    }
    if !satisfies_ratios(alpha, &v) {
        return Err(Error::HypothesisViolation("multipliers do not satisfy the ratio condition".into()));
    }
    let points = (0..r).map(|j| field.pow(alpha, j as u64)).collect();
    GhrsCode::new(field, points, v, t)
}

/// True when shifting every monomial codeword one column to the right stays
/// in the code.
pub fn is_quasi_cyclic(code: &GhrsCode) -> bool {
    let f = code.field();
    let g = code.generator_matrix(VecOrder::RowMajor, crate::ghrs::GeneratorForm::Raw);
    let rank = g.rank();
    let shifted: Vec<FieldElement> = (0..code.t())
        .flat_map(|m| {
            let a = code
                .evaluate(&Polynomial::monomial(f, f.one(), m))
                .expect("monomial within degree bound");
            column_shift(&a, 1).vectorize(VecOrder::RowMajor)
        })
        .collect();
    let shifted = Matrix::new(f, code.t(), code.n(), shifted).expect("shape");
    g.vstack(&shifted).expect("same width").rank() == rank
}

/// `g(x) = f(x / α)` where `α = u_2`, checked against
/// `Ev(g) = column_shift(Ev(f), 1)`.
pub fn shift_witness(code: &GhrsCode, f: &Polynomial) -> Result<Polynomial> {
    let field = code.field();
    let u = code.alpha();
    if u[0] != field.one() {
        return Err(Error::InvalidParameters("first evaluation point must be 1".into()));
    }
    let alpha = if u.len() > 1 { u[1] } else { field.one() };
    let inv = field.inv(alpha).ok_or(Error::DivisionByZero)?;
    let g = f.scale_substitute(inv);
    let lhs = code.evaluate(&g)?;
    let rhs = column_shift(&code.evaluate(f)?, 1);
    if lhs != rhs {
        return Err(Error::Verification(format!("Ev(f(x/α)) is not the column shift of Ev(f) for f = {f}")));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn q7_spec() -> QcSpec {
        let f = gf(7);
        QcSpec::new(&f, f.from_int(2), 3, vec![f.one(), f.one()]).unwrap()
    }

    #[test]
    fn q7_multipliers() {
        let spec = q7_spec();
        let f = spec.field().clone();
        assert_eq!(spec.multipliers(), Matrix::from_ints(&f, &[[1, 1, 1], [1, 2, 4]]).unwrap());
        assert_eq!(spec.points(), vec![f.from_int(1), f.from_int(2), f.from_int(4)]);
        assert!(satisfies_ratios(spec.alpha(), &spec.multipliers()));
    }

    #[test]
    fn order_and_seed_checks() {
        let f = gf(17);
        assert!(QcSpec::new(&f, f.from_int(4), 4, vec![f.one()]).is_ok());
        assert_eq!(
            QcSpec::new(&f, f.from_int(4), 2, vec![f.one()]),
            Err(Error::OrderMismatch { expected: 2, actual: Some(4) })
        );
        assert_eq!(
            QcSpec::new(&f, f.zero(), 2, vec![f.one()]),
            Err(Error::OrderMismatch { expected: 2, actual: None })
        );
        assert_eq!(QcSpec::new(&f, f.from_int(16), 2, vec![f.one(), f.zero()]), Err(Error::ZeroSeed(2)));
    }

    #[test]
    fn r1_is_trivially_qc() {
        let f = gf(5);
        let spec = QcSpec::new(&f, f.one(), 1, vec![f.from_int(3), f.from_int(2)]).unwrap();
        assert_eq!(spec.points(), vec![f.one()]);
        assert_eq!(spec.multipliers(), Matrix::from_ints(&f, &[[3], [2]]).unwrap());
        for t in 1..=2 {
            assert!(is_quasi_cyclic(&qc_code(&spec, t).unwrap()));
        }
    }

    #[test]
    fn column_shift_examples() {
        let f = gf(11);
        let a = Matrix::from_ints(&f, &[[1, 2, 3], [4, 5, 6]]).unwrap();
        assert_eq!(column_shift(&a, 0), a);
        assert_eq!(column_shift(&a, 3), a);
        assert_eq!(column_shift(&a, 1), Matrix::from_ints(&f, &[[3, 1, 2], [6, 4, 5]]).unwrap());
    }

    #[test]
    fn q7_is_quasi_cyclic_and_perturbation_breaks_it() {
        let spec = q7_spec();
        let code = qc_code(&spec, 3).unwrap();
        assert!(is_quasi_cyclic(&code));
        let mut v = spec.multipliers();
        let f = spec.field().clone();
        v.set(0, 1, f.from_int(3));
        let bad = GhrsCode::new(&f, spec.points(), v, 3).unwrap();
        assert!(!is_quasi_cyclic(&bad));
        assert!(is_quasi_cyclic(&code.with_t(6).unwrap()));
    }

    #[test]
    fn witness_examples() {
        let spec = q7_spec();
        let code = qc_code(&spec, 3).unwrap();
        let f = spec.field().clone();
        let one = Polynomial::constant(&f, f.one());
        assert_eq!(shift_witness(&code, &one).unwrap(), one);
        let x = Polynomial::monomial(&f, f.one(), 1);
        assert_eq!(shift_witness(&code, &x).unwrap(), Polynomial::monomial(&f, f.from_int(4), 1));
    }

    #[test]
    fn witness_fails_off_construction() {
        let spec = q7_spec();
        let f = spec.field().clone();
        let mut v = spec.multipliers();
        v.set(1, 2, f.from_int(5));
        let code = GhrsCode::new(&f, spec.points(), v, 3).unwrap();
        let x2 = Polynomial::monomial(&f, f.one(), 2);
        assert!(matches!(shift_witness(&code, &x2), Err(Error::Verification(_))));
    }

    #[test]
    fn validation_path() {
        let spec = q7_spec();
        let f = spec.field().clone();
        assert!(qc_code_from_multipliers(&f, spec.alpha(), spec.multipliers(), 2).is_ok());
        let mut v = spec.multipliers();
        v.set(1, 1, f.one());
        assert!(matches!(
            qc_code_from_multipliers(&f, spec.alpha(), v, 2),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn spec_text_round_trip() {
        let spec = q7_spec();
        let text = spec.to_text(Some(3));
        assert_eq!(text, "q: 7\nr: 3\nalpha: 2\ns: 2\nseed: 1,1\nt: 3\n");
        assert_eq!(QcSpec::parse(&text).unwrap(), (spec, Some(3)));
        assert!(QcSpec::parse("q: 7\nr: 3\nalpha: 2\ns: 3\nseed: 1,1\n").is_err());
        assert!(matches!(
            QcSpec::parse("q: 7\nr: 2\nalpha: 2\nseed: 1\n"),
            Err(Error::OrderMismatch { .. })
        ));
    }

    proptest! {
        #[test]
        fn col_major_shift_is_r_step_cyclic(rows in 1usize..5, cols in 1usize..5, data in prop::collection::vec(0i64..13, 16)) {
            let f = gf(13);
            let a = Matrix::new(&f, rows, cols, (0..rows * cols).map(|k| f.from_int(data[k])).collect()).unwrap();
            let lhs = column_shift(&a, 1).vectorize(VecOrder::ColMajor);
            let rhs = cyclic_shift(&a.vectorize(VecOrder::ColMajor), rows);
            prop_assert_eq!(lhs, rhs);
            let mut b = a.clone();
            for _ in 0..cols { b = column_shift(&b, 1); }
            prop_assert_eq!(b, a);
        }

        #[test]
        fn witness_identity_on_random_f(seed in prop::collection::vec(1i64..13, 1..4), coeffs in prop::collection::vec(0i64..13, 1..12)) {
            let f = gf(13);
            // 5 has order 4 mod 13
            let spec = QcSpec::new(&f, f.from_int(5), 4, seed.iter().map(|&c| f.from_int(c)).collect()).unwrap();
            let n = 4 * spec.s();
            let t = coeffs.len().min(n);
            let code = qc_code(&spec, t).unwrap();
            let p = Polynomial::from_ints(&f, &coeffs[..t]);
            prop_assert!(shift_witness(&code, &p).is_ok());
            prop_assert!(is_quasi_cyclic(&code));
        }
    }
}
