//! Exact arithmetic in GF(q), q = p^e, and binomial coefficients reduced
//! modulo the characteristic.
//!
//! Elements are stored as canonical integers. For a prime field this is the
//! residue in `[0, p)`. For an extension field the element
//! `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` (reduced modulo the defining
//! polynomial) is stored as `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`, so the
//! prime subfield is embedded as the integers `0..p`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// A canonical field element. Only meaningful together with its [`Field`].
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, low-to-high, length e + 1. `[0, 1]` for prime fields.
    modulus: Vec<u32>,
    /// Discrete exp/log tables, only populated when e > 1.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field GF(p^e). Cheap to clone.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.e == other.inner.e
                && (self.inner.e == 1 || self.inner.modulus == other.inner.modulus))
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self)
    }
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p as u64 > MAX_ORDER {
            return Err(Error::InvalidField(format!("order {p} exceeds {MAX_ORDER}")));
        }
        Ok(Field {
            inner: Arc::new(Inner {
                p,
                e: 1,
                q: p,
                modulus: vec![0, 1],
                exp: Vec::new(),
                log: Vec::new(),
            }),
        })
    }

    /// GF(p^e) defined by an explicit monic irreducible `modulus`, given
    /// low-to-high with e + 1 coefficients.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree at least 1".into()));
        }
        let e = (modulus.len() - 1) as u32;
        if e == 1 {
            return Field::prime(p);
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficients must lie in [0, p)".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let q = (p as u64).checked_pow(e).filter(|&q| q <= MAX_ORDER).ok_or_else(|| {
            Error::InvalidField(format!("order {p}^{e} exceeds {MAX_ORDER}"))
        })? as u32;
        if !is_irreducible(p, modulus) {
            return Err(Error::InvalidField(format!(
                "modulus {} is reducible over GF({p})",
                join(modulus)
            )));
        }
        let mut inner = Inner {
            p,
            e,
            q,
            modulus: modulus.to_vec(),
            exp: Vec::new(),
            log: Vec::new(),
        };
        build_log_tables(&mut inner)?;
        Ok(Field {
            inner: Arc::new(inner),
        })
    }

    /// GF(p^e) with the lexicographically first monic irreducible modulus
    /// (lowest coefficient varying fastest).
    pub fn prime_power(p: u32, e: u32) -> Result<Field> {
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        if e == 1 {
            return Field::prime(p);
        }
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::InvalidField(format!("order {p}^{e} exceeds {MAX_ORDER}")))?;
        for code in 0..q {
            let mut m = digits(code, p, e as usize);
            m.push(1);
            if is_irreducible(p, &m) {
                return Field::with_modulus(p, &m);
            }
        }
        Err(Error::InvalidField(format!("no irreducible of degree {e} over GF({p})")))
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.e
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.e == 1
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Validates a canonical integer as an element of this field.
    pub fn element(&self, v: u64) -> Result<FieldElement> {
        if v < self.inner.q as u64 {
            Ok(FieldElement(v as u32))
        } else {
            Err(Error::ElementOutOfRange(v))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.inner.p as i64) as u32)
    }

    /// All elements in canonical order `0, 1, ..., q - 1`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.inner.q).map(FieldElement)
    }

    /// Coordinates over GF(p), low-to-high, length e.
    pub fn coords(&self, a: FieldElement) -> Vec<u32> {
        digits(a.0 as u64, self.inner.p, self.inner.e as usize)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElement> {
        if coords.len() != self.inner.e as usize || coords.iter().any(|&c| c >= self.inner.p) {
            return Err(Error::InvalidField(format!(
                "coordinate vector {} is not reduced",
                join(coords)
            )));
        }
        Ok(FieldElement(undigits(coords, self.inner.p) as u32))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.inner.p;
        if self.inner.e == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= p { s - p } else { s });
        }
        if p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.inner.p;
        if self.inner.e == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { p - a.0 });
        }
        if p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.inner.e == 1 {
            return FieldElement(((a.0 as u64 * b.0 as u64) % self.inner.p as u64) as u32);
        }
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = self.inner.q - 1;
        let l = (self.inner.log[a.0 as usize] + self.inner.log[b.0 as usize]) % n;
        FieldElement(self.inner.exp[l as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        if self.inner.e == 1 {
            return Some(self.pow(a, (self.inner.p - 2) as u64));
        }
        let n = self.inner.q - 1;
        let l = (n - self.inner.log[a.0 as usize]) % n;
        Some(FieldElement(self.inner.exp[l as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, inv))
    }

    pub fn pow(&self, a: FieldElement, mut k: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Checked binary operation on canonical elements.
    pub fn arith(&self, a: FieldElement, b: FieldElement, op: ArithOp) -> Result<FieldElement> {
        self.element(a.0 as u64)?;
        self.element(b.0 as u64)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
        })
    }

    /// Binomial coefficient `C(n, a)` as an element of the prime subfield.
    pub fn binom(&self, n: u64, a: i64) -> FieldElement {
        FieldElement(binom_lucas(n, a, self.inner.p))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<usize> {
        if a.is_zero() {
            return None;
        }
        let mut x = a;
        for k in 1..self.inner.q as usize {
            if x == FieldElement::ONE {
                return Some(k);
            }
            x = self.mul(x, a);
        }
        None
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.e == 1 {
            write!(f, "{}", self.inner.p)
        } else {
            write!(f, "{}^{}:{}", self.inner.p, self.inner.e, join(&self.inner.modulus))
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `"p"`, `"p^e"` (built-in modulus) or `"p^e:c0,c1,...,ce"`.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        let bad = |what: &str| Error::Parse(format!("field spec {s:?}: {what}"));
        let (head, modulus) = match s.split_once(':') {
            Some((h, m)) => (h.trim(), Some(m)),
            None => (s, None),
        };
        let (p, e) = match head.split_once('^') {
            Some((p, e)) => (
                p.trim().parse::<u32>().map_err(|_| bad("bad prime"))?,
                e.trim().parse::<u32>().map_err(|_| bad("bad exponent"))?,
            ),
            None => (head.parse::<u32>().map_err(|_| bad("bad prime"))?, 1),
        };
        match modulus {
            None => Field::prime_power(p, e),
            Some(m) => {
                let coeffs = m
                    .split(',')
                    .map(|c| c.trim().parse::<u32>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| bad("bad modulus coefficient"))?;
                if coeffs.len() != e as usize + 1 {
                    return Err(bad("modulus must have e + 1 coefficients"));
                }
                Field::with_modulus(p, &coeffs)
            }
        }
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn digits(mut v: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((v % p as u64) as u32);
        v /= p as u64;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u64 {
    d.iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64)
}

/// Remainder of `a` modulo a monic `m`, both low-to-high over GF(p).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let p = p as u64;
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap() % p;
        if lead != 0 {
            let off = r.len() - dm;
            for (k, &c) in m[..dm].iter().enumerate() {
                r[off + k] = (r[off + k] + (p - lead) * c as u64) % p;
            }
        }
    }
    r.into_iter().map(|c| (c % p) as u32).collect()
}

/// Irreducibility by root check and trial division against every monic
/// polynomial of degree at most e / 2.
fn is_irreducible(p: u32, m: &[u32]) -> bool {
    let e = m.len() - 1;
    if e <= 1 {
        return e == 1;
    }
    for u in 0..p as u64 {
        let val = m.iter().rev().fold(0u64, |acc, &c| (acc * u + c as u64) % p as u64);
        if val == 0 {
            return false;
        }
    }
    for d in 2..=e / 2 {
        for code in 0..(p as u64).pow(d as u32) {
            let mut div = digits(code, p, d);
            div.push(1);
            if poly_rem(m, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn build_log_tables(inner: &mut Inner) -> Result<()> {
    let (p, e, q) = (inner.p, inner.e as usize, inner.q);
    let slow_mul = |a: u32, b: u32| -> u32 {
        let da = digits(a as u64, p, e);
        let db = digits(b as u64, p, e);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        let mut r = poly_rem(&prod, &inner.modulus, p);
        r.resize(e, 0);
        undigits(&r, p) as u32
    };
    for g in 2..q {
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut x = 1u32;
        loop {
            exp.push(x);
            x = slow_mul(x, g);
            if x == 1 || exp.len() >= q as usize {
                break;
            }
        }
        if exp.len() == q as usize - 1 {
            let mut log = vec![0u32; q as usize];
            for (k, &v) in exp.iter().enumerate() {
                log[v as usize] = k as u32;
            }
            inner.exp = exp;
            inner.log = log;
            return Ok(());
        }
    }
    Err(Error::InvalidField("no primitive element found".into()))
}

/// `C(n, a)` modulo p by the Pascal recurrence, with `C(n, a) = 0` for
/// `a < 0` and `C(n, 0) = 1`.
pub fn binom_mod_p(n: u64, a: i64, p: u32) -> u32 {
    if a < 0 {
        return 0;
    }
    let a = a as u64;
    if a == 0 {
        return 1 % p;
    }
    if a > n {
        return 0;
    }
    let k = a as usize;
    let p = p as u64;
    // row[j] holds C(m, j) mod p for the current m, j <= k
    let mut row = vec![0u64; k + 1];
    row[0] = 1 % p;
    for m in 1..=n {
        let top = (m as usize).min(k);
        for j in (1..=top).rev() {
            row[j] = (row[j] + row[j - 1]) % p;
        }
    }
    row[k] as u32
}

/// `C(n, a)` modulo p via Lucas' theorem.
pub fn binom_lucas(mut n: u64, a: i64, p: u32) -> u32 {
    if a < 0 {
        return 0;
    }
    let mut a = a as u64;
    let pp = p as u64;
    let mut acc = 1 % pp;
    while n > 0 || a > 0 {
        let (ni, ai) = (n % pp, a % pp);
        if ai > ni {
            return 0;
        }
        // small binomial with ni < p: factorials are invertible mod p
        let mut num = 1u64;
        let mut den = 1u64;
        for j in 0..ai {
            num = num * ((ni - j) % pp) % pp;
            den = den * ((j + 1) % pp) % pp;
        }
        acc = acc * num % pp * mod_pow(den, pp - 2, pp) % pp;
        n /= pp;
        a /= pp;
    }
    acc as u32
}

fn mod_pow(mut b: u64, mut k: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        k >>= 1;
    }
    acc
}

/// Pascal's triangle modulo p, rows `0..=n_max`.
#[derive(Clone, Debug)]
pub struct BinomialTable {
    rows: Vec<Vec<u32>>,
}

impl BinomialTable {
    pub fn new(n_max: usize, p: u32) -> Self {
        let mut rows: Vec<Vec<u32>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![1 % p]);
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let mut row = vec![0u32; n + 1];
            row[0] = 1 % p;
            row[n] = 1 % p;
            for j in 1..n {
                row[j] = ((prev[j - 1] as u64 + prev[j] as u64) % p as u64) as u32;
            }
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn get(&self, n: usize, a: i64) -> u32 {
        if a < 0 || a as usize > n {
            return 0;
        }
        self.rows[n][a as usize]
    }
}
