//! Split quadratic forms and points of their projectivized cones.
//!
//! Coordinates on `R^{a,b}` (dimension `m = a + b`, `a ≤ b`) are paired as
//! `(j, m−1−j)` for `j < a`; the remaining middle slots carry squares. The
//! ambient space of signature `(p,q)` uses the form `(p+1, q+1)`, the model
//! space `R^{p,q}` uses `(p, q)`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::{self, Rational};
use crate::rng::SplitMix64;

pub type Vector = Vec<Rational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSignature")]
pub struct Signature {
    p: usize,
    q: usize,
}

#[derive(Deserialize)]
struct RawSignature {
    p: usize,
    q: usize,
}

impl TryFrom<RawSignature> for Signature {
    type Error = Error;
    fn try_from(r: RawSignature) -> Result<Self> {
        Signature::new(r.p, r.q)
    }
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p > q {
            return Err(Error::InvalidSignature { p, q, reason: "requires p <= q" });
        }
        if p + q < 3 {
            return Err(Error::InvalidSignature { p, q, reason: "requires p + q >= 3" });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Dimension of the conformal model.
    pub fn n(&self) -> usize {
        self.p + self.q
    }

    /// Matrix size `n + 2`.
    pub fn dim(&self) -> usize {
        self.n() + 2
    }

    pub fn algebra_dim(&self) -> usize {
        let m = self.dim();
        m * (m - 1) / 2
    }

    pub fn ambient_form(&self) -> SplitForm {
        SplitForm { a: self.p + 1, b: self.q + 1 }
    }

    pub fn model_form(&self) -> SplitForm {
        SplitForm { a: self.p, b: self.q }
    }

    /// Form `(p−1, q−1)` on the middle block of the translation centralizer.
    pub fn inner_form(&self) -> Result<SplitForm> {
        if self.p == 0 {
            return Err(Error::Precondition("inner block needs p >= 1".into()));
        }
        Ok(SplitForm { a: self.p - 1, b: self.q - 1 })
    }

    pub fn check_same(&self, other: &Signature) -> Result<()> {
        if self != other {
            return Err(Error::SignatureMismatch { left: self.to_string(), right: other.to_string() });
        }
        Ok(())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// The split form of signature `(a, b)` on `Q^{a+b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitForm {
    #[serde(rename = "p")]
    a: usize,
    #[serde(rename = "q")]
    b: usize,
}

impl SplitForm {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a > b {
            return Err(Error::InvalidSignature { p: a, q: b, reason: "requires p <= q" });
        }
        Ok(Self { a, b })
    }

    pub fn pairs(&self) -> usize {
        self.a
    }

    pub fn dim(&self) -> usize {
        self.a + self.b
    }

    /// Index paired with `i` by the Gram matrix (itself for middle slots).
    pub fn partner(&self, i: usize) -> usize {
        let m = self.dim();
        if i < self.a || i >= self.b {
            m - 1 - i
        } else {
            i
        }
    }

    pub fn gram(&self) -> QMatrix {
        let m = self.dim();
        let mut j = QMatrix::zeros(m, m);
        for i in 0..m {
            j[(i, self.partner(i))] = Rational::one();
        }
        j
    }

    fn check_len(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() });
        }
        Ok(())
    }

    /// `J x`: a coordinate permutation.
    pub fn lower(&self, x: &[Rational]) -> Result<Vector> {
        self.check_len(x)?;
        Ok((0..self.dim()).map(|i| x[self.partner(i)].clone()).collect())
    }

    pub fn eval(&self, x: &[Rational]) -> Result<Rational> {
        self.check_len(x)?;
        let m = self.dim();
        let mut acc = Rational::zero();
        for i in 0..self.a {
            acc += &x[i] * &x[m - 1 - i] * Rational::from_integer(2.into());
        }
        for xi in &x[self.a..self.b] {
            acc += xi * xi;
        }
        Ok(acc)
    }

    pub fn inner(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok((0..self.dim())
            .filter(|&i| !x[i].is_zero())
            .map(|i| &x[i] * &y[self.partner(i)])
            .sum())
    }

    pub fn is_null(&self, x: &[Rational]) -> Result<bool> {
        self.check_len(x)?;
        if x.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(self.eval(x)?.is_zero())
    }

    /// Random nonzero null vector with small rational entries.
    ///
    /// Needs at least one split pair.
    pub fn random_null(&self, rng: &mut SplitMix64) -> Vector {
        assert!(self.a > 0, "form without split pairs has no null vectors");
        let m = self.dim();
        loop {
            let mut x = rng.rat_vec(m, 4, 3);
            let k = rng.below(self.a as u64) as usize;
            if x[k].is_zero() {
                x[k] = rng.nonzero_rat(4, 3);
            }
            x[m - 1 - k] = Rational::zero();
            let rest = self.eval(&x).expect("length matches");
            // 2 x_k x_{m-1-k} + rest = 0
            x[m - 1 - k] = -rest / (&x[k] * Rational::from_integer(2.into()));
            if x.iter().any(|v| !v.is_zero()) {
                return x;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cover {
    Projective,
    Ray,
}

/// A line (or ray) through the origin, stored canonically.
///
/// Projective classes are scaled so the largest-magnitude entry (lowest index
/// on ties) equals `+1`; rays are scaled by a positive factor so that entry
/// equals `±1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    rep: Vector,
    cover: Cover,
}

impl ProjectivePoint {
    pub fn new(x: Vector, cover: Cover) -> Result<Self> {
        let mut best: Option<usize> = None;
        for (i, v) in x.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            match best {
                Some(b) if x[b].abs() >= v.abs() => {}
                _ => best = Some(i),
            }
        }
        let Some(b) = best else {
            return Err(Error::ZeroVector);
        };
        let pivot = match cover {
            Cover::Projective => x[b].clone(),
            Cover::Ray => x[b].abs(),
        };
        let rep = x.iter().map(|v| v / &pivot).collect();
        Ok(Self { rep, cover })
    }

    pub fn rep(&self) -> &[Rational] {
        &self.rep
    }

    pub fn cover(&self) -> Cover {
        self.cover
    }

    pub fn dim(&self) -> usize {
        self.rep.len()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.rep.iter().map(rational::to_f64).collect()
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rep.iter().map(|x| x.to_string()).collect();
        match self.cover {
            Cover::Projective => write!(f, "[{}]", parts.join(":")),
            Cover::Ray => write!(f, "[{}]+", parts.join(":")),
        }
    }
}

pub fn projectivize(x: Vector, cover: Cover) -> Result<ProjectivePoint> {
    ProjectivePoint::new(x, cover)
}

pub fn eval_form(form: &SplitForm, x: &[Rational]) -> Result<Rational> {
    form.eval(x)
}

pub fn inner(form: &SplitForm, x: &[Rational], y: &[Rational]) -> Result<Rational> {
    form.inner(x, y)
}

pub fn is_null(form: &SplitForm, x: &[Rational]) -> Result<bool> {
    form.is_null(x)
}

/// Standard basis vector.
pub fn e(dim: usize, i: usize) -> Vector {
    crate::linalg::unit_vec(dim, i)
}
