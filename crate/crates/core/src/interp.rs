//! Hermite-type interpolation with hyperderivatives, and the dual multiplier.
//!
//! For distinct points `α_1..α_r` and jet length `s`:
//!
//! - `L_j = ∏_{l≠j} (x - α_l)^s / (α_j - α_l)^s`
//! - `H_{i,j} = (x - α_j)^i L_j` for `0 ≤ i < s`
//! - `M^{(j)}_{i,k} = ∂^{i-1} H_{k-1,j}(α_j)`, unit lower triangular
//! - `H'_{k-1,j} = Σ_t (M^{(j)})^{-1}_{t,k} H_{t-1,j}`
//!
//! so that `∂^i H'_{k,j}(α_l) = δ_{ik} δ_{jl}` and every `f` of degree below
//! `rs` equals `Σ_{i,j} ∂^i f(α_j) H'_{i,j}`.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::ghrs::{evaluate_map, monomial_generator};
use crate::matspace::{dot_slices, Matrix, VecOrder};
use crate::poly::{Degree, Polynomial};

#[derive(Clone, Debug)]
pub struct InterpolationBasis {
    field: Field,
    alpha: Vec<FieldElement>,
    s: usize,
    l: Vec<Polynomial>,
    /// `h[i][j] = H_{i,j}`
    h: Vec<Vec<Polynomial>>,
    m: Vec<Matrix>,
    m_inv: Vec<Matrix>,
    h_prime: Vec<Vec<Polynomial>>,
}

impl InterpolationBasis {
    /// Builds all families and checks the delta identities before returning.
    pub fn build(field: &Field, alpha: &[FieldElement], s: usize) -> Result<InterpolationBasis> {
        if alpha.is_empty() || s == 0 {
            return Err(Error::InvalidParameters("need r ≥ 1 points and s ≥ 1".into()));
        }
        if let Some(a) = alpha.iter().find(|a| a.value() >= field.order()) {
            return Err(Error::ElementOutOfRange(a.value() as u64));
        }
        let mut sorted = alpha.to_vec();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != alpha.len() {
            return Err(Error::DuplicatePoints);
        }
        let r = alpha.len();

        let l: Vec<Polynomial> = (0..r)
            .map(|j| {
                let mut num = Polynomial::constant(field, field.one());
                let mut den = field.one();
                for (k, &ak) in alpha.iter().enumerate() {
                    if k != j {
                        num = num.mul(&Polynomial::linear_power(field, ak, s));
                        den = field.mul(den, field.pow(field.sub(alpha[j], ak), s as u64));
                    }
                }
                num.scale(field.inv(den).expect("points are distinct"))
            })
            .collect();

        let h: Vec<Vec<Polynomial>> = (0..s)
            .map(|i| {
                (0..r)
                    .map(|j| Polynomial::linear_power(field, alpha[j], i).mul(&l[j]))
                    .collect()
            })
            .collect();

        let mut m = Vec::with_capacity(r);
        let mut m_inv = Vec::with_capacity(r);
        for j in 0..r {
            let mut mj = Matrix::zeros(field, s, s);
            for i in 0..s {
                for k in 0..s {
                    mj.set(i, k, h[k][j].hasse_eval(i, alpha[j]));
                }
            }
            let inv = invert_unit_lower(&mj)?;
            m.push(mj);
            m_inv.push(inv);
        }

        let h_prime: Vec<Vec<Polynomial>> = (0..s)
            .map(|k| {
                (0..r)
                    .map(|j| {
                        (0..s).fold(Polynomial::zero(field), |acc, t| {
                            acc.add(&h[t][j].scale(m_inv[j].get(t, k)))
                        })
                    })
                    .collect()
            })
            .collect();

        let basis = InterpolationBasis {
            field: field.clone(),
            alpha: alpha.to_vec(),
            s,
            l,
            h,
            m,
            m_inv,
            h_prime,
        };
        basis.verify()?;
        Ok(basis)
    }

    fn verify(&self) -> Result<()> {
        let (r, s) = (self.r(), self.s);
        let bound = Degree::Finite(s * (r - 1));
        for j in 0..r {
            if self.l[j].degree() != bound {
                return Err(Error::Verification(format!("deg L_{j} is {:?}", self.l[j].degree())));
            }
            for (m, &am) in self.alpha.iter().enumerate() {
                let want = if m == j { self.field.one() } else { self.field.zero() };
                if self.l[j].eval(am) != want {
                    return Err(Error::Verification(format!("L_{j}(α_{m}) ≠ δ")));
                }
            }
        }
        for k in 0..s {
            for j in 0..r {
                for i in 0..s {
                    for (l, &al) in self.alpha.iter().enumerate() {
                        let want = if i == k && j == l { self.field.one() } else { self.field.zero() };
                        if self.h_prime[k][j].hasse_eval(i, al) != want {
                            return Err(Error::Verification(format!(
                                "∂^{i} H'_{{{k},{j}}}(α_{l}) is not the expected delta"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn alpha(&self) -> &[FieldElement] {
        &self.alpha
    }

    pub fn r(&self) -> usize {
        self.alpha.len()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn l(&self, j: usize) -> &Polynomial {
        &self.l[j]
    }

    pub fn h(&self, i: usize, j: usize) -> &Polynomial {
        &self.h[i][j]
    }

    pub fn m(&self, j: usize) -> &Matrix {
        &self.m[j]
    }

    pub fn m_inv(&self, j: usize) -> &Matrix {
        &self.m_inv[j]
    }

    pub fn h_prime(&self, i: usize, j: usize) -> &Polynomial {
        &self.h_prime[i][j]
    }

    /// Coefficient grid `c_{i,j} = ∂^i f(α_j)` (an `s × r` matrix).
    pub fn expand(&self, f: &Polynomial) -> Result<Matrix> {
        if f.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let n = self.r() * self.s;
        if let Degree::Finite(d) = f.degree() {
            if d >= n {
                return Err(Error::DegreeTooHigh { degree: d, bound: n - 1 });
            }
        }
        let mut c = Matrix::zeros(&self.field, self.s, self.r());
        for i in 0..self.s {
            for (j, &a) in self.alpha.iter().enumerate() {
                c.set(i, j, f.hasse_eval(i, a));
            }
        }
        Ok(c)
    }

    /// `Σ_{i,j} c_{i,j} H'_{i,j}`.
    pub fn reconstruct(&self, c: &Matrix) -> Result<Polynomial> {
        if c.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if (c.rows(), c.cols()) != (self.s, self.r()) {
            return Err(Error::DimensionMismatch(format!(
                "coefficient grid must be {}x{}",
                self.s,
                self.r()
            )));
        }
        let mut f = Polynomial::zero(&self.field);
        for i in 0..self.s {
            for j in 0..self.r() {
                let cij = c.get(i, j);
                if !cij.is_zero() {
                    f = f.add(&self.h_prime[i][j].scale(cij));
                }
            }
        }
        Ok(f)
    }

    /// `images[i][j] = Ev_{α,V}(H'_{i,j} / v_{i,j})`, each the elementary
    /// matrix at `(i, j)`.
    pub fn standard_basis_images(&self, v: &Matrix) -> Result<Vec<Vec<Matrix>>> {
        if v.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if (v.rows(), v.cols()) != (self.s, self.r()) {
            return Err(Error::DimensionMismatch(format!("V must be {}x{}", self.s, self.r())));
        }
        let mut images = Vec::with_capacity(self.s);
        for i in 0..self.s {
            let mut row = Vec::with_capacity(self.r());
            for j in 0..self.r() {
                let inv = self
                    .field
                    .inv(v.get(i, j))
                    .ok_or(Error::ZeroMultiplier { row: i, col: j })?;
                row.push(evaluate_map(&self.alpha, v, &self.h_prime[i][j].scale(inv))?);
            }
            images.push(row);
        }
        Ok(images)
    }
}

/// Inverse of a unit lower-triangular matrix by forward substitution.
pub fn invert_unit_lower(m: &Matrix) -> Result<Matrix> {
    let field = m.field();
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::DimensionMismatch("matrix is not square".into()));
    }
    for i in 0..n {
        if m.get(i, i) != field.one() || (i + 1..n).any(|k| !m.get(i, k).is_zero()) {
            return Err(Error::Verification("matrix is not unit lower triangular".into()));
        }
    }
    let mut inv = Matrix::zeros(field, n, n);
    for col in 0..n {
        // solve M x = e_col
        for i in 0..n {
            let mut acc = if i == col { field.one() } else { field.zero() };
            for k in 0..i {
                acc = field.sub(acc, field.mul(m.get(i, k), inv.get(k, col)));
            }
            inv.set(i, col, acc);
        }
    }
    Ok(inv)
}

/// The normalized spanning vector of the dual of the dimension-`(rs-1)` code,
/// as an `s × r` matrix (row-major devectorization; first nonzero entry 1).
pub fn dual_multiplier(alpha: &[FieldElement], v: &Matrix) -> Result<Matrix> {
    let field = v.field();
    let n = v.rows() * v.cols();
    // validates the points as a side effect
    evaluate_map(alpha, v, &Polynomial::zero(field))?;
    let g = monomial_generator(alpha, v, n - 1, VecOrder::RowMajor);
    let ns = g.null_space_rref();
    if ns.rows() != 1 {
        return Err(Error::DegenerateSystem(ns.rows()));
    }
    Matrix::devectorize(field, ns.row(0), v.rows(), v.cols(), VecOrder::RowMajor)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub w: Matrix,
    pub w_all_nonzero: bool,
    /// First monomial pair `(a, b)` with `Ev_V(x^a) · Ev_W(x^b) ≠ 0`.
    pub first_violation: Option<(usize, usize)>,
    pub dim_v: usize,
    pub dim_w: usize,
    /// Row space of the W-code generator equals the null space of the V-code generator.
    pub row_space_equal: bool,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
            && self.dim_v + self.dim_w == self.w.rows() * self.w.cols()
            && self.row_space_equal
    }
}

/// Checks that the W-code of dimension `rs - t` is the dual of the V-code of
/// dimension `t`. Failures are reported, not raised.
pub fn verify_duality(alpha: &[FieldElement], v: &Matrix, t: usize) -> Result<DualityReport> {
    let n = v.rows() * v.cols();
    if t == 0 || t >= n {
        return Err(Error::InvalidParameters(format!("t = {t} must lie in 1..={}", n - 1)));
    }
    let field = v.field();
    let w = dual_multiplier(alpha, v)?;
    let gv = monomial_generator(alpha, v, t, VecOrder::RowMajor);
    let gw = monomial_generator(alpha, &w, n - t, VecOrder::RowMajor);
    let first_violation = (0..t)
        .flat_map(|a| (0..n - t).map(move |b| (a, b)))
        .find(|&(a, b)| !dot_slices(field, gv.row(a), gw.row(b)).is_zero());
    let row_space_equal = gw.same_row_space(&gv.null_space_rref())?;
    Ok(DualityReport {
        w_all_nonzero: w.data().iter().all(|c| !c.is_zero()),
        first_violation,
        dim_v: gv.rank(),
        dim_w: gw.rank(),
        row_space_equal,
        w,
    })
}
