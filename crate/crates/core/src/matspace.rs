//! Dense matrices over GF(q), elimination, null spaces and NRT weights.
//!
//! Matrices are stored row-major. Indices are 0-based in code; the NRT
//! orientation treats row 0 as the top of each chain, so a column whose first
//! nonzero entry sits in (1-based) row `i` has weight `s - i + 1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Flattening order for [`Matrix::vectorize`].
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum VecOrder {
    /// Row by row, left to right.
    #[default]
    RowMajor,
    /// Column by column, top to bottom.
    ColMajor,
}

impl std::str::FromStr for VecOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "row_major" | "row-major" | "row" => Ok(VecOrder::RowMajor),
            "col_major" | "col-major" | "col" => Ok(VecOrder::ColMajor),
            other => Err(Error::Parse(format!("unknown vectorization order {other:?}"))),
        }
    }
}

/// An NRT weight or distance.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NrtWeight(pub usize);

impl NrtWeight {
    pub fn value(self) -> usize {
        self.0
    }
}

impl fmt::Display for NrtWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Display for Matrix {
    /// One row per line, space-separated residues.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    /// Builds a matrix from row-major data. A matrix may have zero rows (an
    /// empty null space) but must have at least one column.
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Matrix> {
        if cols == 0 {
            return Err(Error::DimensionMismatch("matrix must have at least one column".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|c| c.value() >= field.order()) {
            return Err(Error::ElementOutOfRange(bad.value() as u64));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElement>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Matrix::new(field, n, cols, rows.into_iter().flatten().collect())
    }

    /// Integer entries reduced into the prime subfield.
    pub fn from_ints<R: AsRef<[i64]>>(field: &Field, rows: &[R]) -> Result<Matrix> {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| field.from_int(v)).collect())
            .collect();
        Matrix::from_rows(field, rows)
    }

    /// Entries given as canonical residues; out-of-range values are rejected.
    pub fn from_residues<R: AsRef<[u64]>>(field: &Field, rows: &[R]) -> Result<Matrix> {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| field.element(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(field, rows)
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// `E_{i,j}`: 1 at `(i, j)` (0-based), 0 elsewhere.
    pub fn elementary(field: &Field, rows: usize, cols: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols);
        m.set(i, j, field.one());
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn count_zeros(&self) -> usize {
        self.data.iter().filter(|c| c.is_zero()).count()
    }

    pub fn count_nonzeros(&self) -> usize {
        self.data.len() - self.count_zeros()
    }

    fn check_same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        self.check_same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Matrix::new(&self.field, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        Matrix::new(&self.field, self.rows, self.cols, data)
    }

    pub fn scale(&self, c: FieldElement) -> Matrix {
        let data = self.data.iter().map(|&a| self.field.mul(a, c)).collect();
        Matrix {
            data,
            ..self.clone()
        }
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Entrywise product sum `Σ a_ij b_ij`.
    pub fn dot(&self, other: &Matrix) -> Result<FieldElement> {
        self.check_same_shape(other)?;
        Ok(dot_slices(&self.field, &self.data, &other.data))
    }

    /// `Tr(AᵀB)`; equal to [`Matrix::dot`].
    pub fn trace_form(&self, other: &Matrix) -> Result<FieldElement> {
        self.check_same_shape(other)?;
        let p = self.transpose().matmul(other)?;
        let f = &self.field;
        Ok((0..p.rows).fold(f.zero(), |acc, i| f.add(acc, p.get(i, i))))
    }

    /// Reduced row echelon form with its pivot columns. Zero rows are kept at
    /// the bottom so the shape is unchanged.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r {
                    let factor = m.get(i, c);
                    if !factor.is_zero() {
                        m.sub_row_multiple(i, r, factor);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Row echelon form by forward elimination only: pivots are not scaled and
    /// nothing above a pivot is cleared.
    pub fn forward_echelon(&self) -> Matrix {
        let f = &self.field;
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for i in r + 1..m.rows {
                let a = m.get(i, c);
                if !a.is_zero() {
                    m.sub_row_multiple(i, r, f.mul(a, inv));
                }
            }
            r += 1;
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// RREF basis of `{x : M xᵀ = 0}`, as an `(n - rank) × n` matrix.
    pub fn null_space_rref(&self) -> Matrix {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![FieldElement::ZERO; self.cols];
            v[free] = f.one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        let n = basis.len();
        let spanning = Matrix::new(f, n, self.cols, basis.into_iter().flatten().collect())
            .expect("null-space basis has consistent shape");
        spanning.rref().0
    }

    /// The nonzero rows of the RREF.
    pub fn row_space_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        r.take_rows(pivots.len())
    }

    /// The first `k` rows.
    pub fn take_rows(&self, k: usize) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: k,
            cols: self.cols,
            data: self.data[..k * self.cols].to_vec(),
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} columns on {}",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix::new(&self.field, self.rows + other.rows, self.cols, data)
    }

    /// True when every row of `other` lies in the row space of `self`.
    pub fn row_space_contains(&self, other: &Matrix) -> Result<bool> {
        Ok(self.vstack(other)?.rank() == self.rank())
    }

    pub fn same_row_space(&self, other: &Matrix) -> Result<bool> {
        self.check_same_field(other)?;
        if self.cols != other.cols {
            return Ok(false);
        }
        Ok(self.row_space_basis() == other.row_space_basis())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, i: usize, c: FieldElement) {
        for j in 0..self.cols {
            let v = self.field.mul(self.get(i, j), c);
            self.set(i, j, v);
        }
    }

    /// row[i] -= factor * row[src]
    fn sub_row_multiple(&mut self, i: usize, src: usize, factor: FieldElement) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if !s.is_zero() {
                let v = self.field.sub(self.get(i, j), self.field.mul(factor, s));
                self.set(i, j, v);
            }
        }
    }

    pub fn vectorize(&self, order: VecOrder) -> Vec<FieldElement> {
        match order {
            VecOrder::RowMajor => self.data.clone(),
            VecOrder::ColMajor => self.transpose().data,
        }
    }

    pub fn devectorize(
        field: &Field,
        v: &[FieldElement],
        rows: usize,
        cols: usize,
        order: VecOrder,
    ) -> Result<Matrix> {
        match order {
            VecOrder::RowMajor => Matrix::new(field, rows, cols, v.to_vec()),
            VecOrder::ColMajor => Ok(Matrix::new(field, cols, rows, v.to_vec())?.transpose()),
        }
    }

    /// Sum of column NRT weights, reading each column top-down.
    pub fn nrt_weight(&self) -> NrtWeight {
        NrtWeight((0..self.cols).map(|j| nrt_column_weight(&self.column(j))).sum())
    }

    pub fn nrt_distance(&self, other: &Matrix) -> Result<NrtWeight> {
        Ok(self.sub(other)?.nrt_weight())
    }

    /// Text form: header `m n q`, then one row per line.
    pub fn to_text(&self) -> String {
        format!("{} {} {}\n{}", self.rows, self.cols, self.field, self)
    }

    pub fn parse_text(s: &str) -> Result<Matrix> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let [m, n, q] = parts.as_slice() else {
            return Err(Error::Parse(format!("bad matrix header {header:?}")));
        };
        let m: usize = m.parse().map_err(|_| Error::Parse(format!("bad row count {m:?}")))?;
        let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad column count {n:?}")))?;
        let field: Field = q.parse()?;
        Matrix::parse_rows(&field, lines.take(m).collect::<Vec<_>>().as_slice(), m, n)
    }

    /// Parses `m` whitespace-separated rows of `n` canonical residues.
    pub fn parse_rows(field: &Field, lines: &[&str], m: usize, n: usize) -> Result<Matrix> {
        if lines.len() != m {
            return Err(Error::Parse(format!("expected {m} rows, found {}", lines.len())));
        }
        let mut data = Vec::with_capacity(m * n);
        for line in lines {
            let row = line
                .split_whitespace()
                .map(|t| {
                    let v: u64 = t.parse().map_err(|_| Error::Parse(format!("bad entry {t:?}")))?;
                    field.element(v)
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != n {
                return Err(Error::Parse(format!("expected {n} entries, found {}", row.len())));
            }
            data.extend(row);
        }
        Matrix::new(field, m, n, data)
    }
}

pub fn dot_slices(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter()
        .zip(b)
        .fold(field.zero(), |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// `s - i + 1` for the 1-based index `i` of the first nonzero entry; 0 for the
/// zero column.
pub fn nrt_column_weight(column: &[FieldElement]) -> usize {
    column
        .iter()
        .position(|c| !c.is_zero())
        .map_or(0, |i| column.len() - i)
}
