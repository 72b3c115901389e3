//! The matrix algebra `o(p+1,q+1)`, its grading, and the matching group.
//!
//! Index `0` and `n+1` are the distinguished split pair `(e_0, e_{n+1})`;
//! indices `1..=n` carry the model space `R^{p,q}` with its own split form.
//! Under this layout the grading reads:
//!
//! * `u⁻`: column 0 and row `n+1` restricted to the middle,
//! * `u⁺`: row 0 and column `n+1` restricted to the middle,
//! * `r`: everything else (the corner diagonal and the middle block).

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, QMatrix, Subspace};
use crate::quadratic_forms::{ProjectivePoint, Signature, SplitForm, Vector};
use crate::rational::{self, Rational};
use crate::rng::SplitMix64;

/// True when `m` lies in `o(p+1,q+1)`, i.e. `J·m` is antisymmetric.
pub fn in_algebra(sig: Signature, m: &QMatrix) -> bool {
    let f = sig.ambient_form();
    let d = sig.dim();
    if m.rows() != d || m.cols() != d {
        return false;
    }
    for i in 0..d {
        for j in i..d {
            let a = &m[(f.partner(i), j)];
            let b = &m[(f.partner(j), i)];
            if !(a + b).is_zero() {
                return false;
            }
        }
    }
    true
}

/// True when `m` preserves the ambient form: `mᵀ J m = J`.
pub fn in_group(sig: Signature, m: &QMatrix) -> bool {
    let d = sig.dim();
    if m.rows() != d || m.cols() != d {
        return false;
    }
    let j = sig.ambient_form().gram();
    &(&m.transpose() * &j) * m == j
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgElement {
    sig: Signature,
    mat: QMatrix,
}

impl AlgElement {
    pub fn new(sig: Signature, mat: QMatrix) -> Result<Self> {
        if mat.rows() != sig.dim() || mat.cols() != sig.dim() {
            return Err(Error::DimensionMismatch { expected: sig.dim(), found: mat.rows() });
        }
        if !in_algebra(sig, &mat) {
            return Err(Error::NotInAlgebra(linalg::fmt_rows(&mat)));
        }
        Ok(Self { sig, mat })
    }

    /// Caller guarantees membership.
    pub(crate) fn from_raw(sig: Signature, mat: QMatrix) -> Self {
        debug_assert!(in_algebra(sig, &mat));
        Self { sig, mat }
    }

    pub fn zero(sig: Signature) -> Self {
        Self { sig, mat: QMatrix::zeros(sig.dim(), sig.dim()) }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> QMatrix {
        self.mat
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { sig: self.sig, mat: self.mat.scale(k) }
    }

    /// Flattened row-major entries, used as coordinates for span computations.
    pub fn coords(&self) -> Vec<Rational> {
        self.mat.as_slice().to_vec()
    }

    pub(crate) fn from_coords(sig: Signature, v: Vec<Rational>) -> Self {
        let d = sig.dim();
        Self::from_raw(sig, QMatrix::from_flat(d, d, v).expect("coordinate length"))
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vector> {
        self.mat.mul_vec(v)
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        bracket(self, other)
    }
}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgElement{} {:?}", self.sig, self.mat)
    }
}

impl Add for &AlgElement {
    type Output = AlgElement;
    fn add(self, rhs: &AlgElement) -> AlgElement {
        assert_eq!(self.sig, rhs.sig, "signature mismatch");
        AlgElement { sig: self.sig, mat: &self.mat + &rhs.mat }
    }
}

impl Sub for &AlgElement {
    type Output = AlgElement;
    fn sub(self, rhs: &AlgElement) -> AlgElement {
        assert_eq!(self.sig, rhs.sig, "signature mismatch");
        AlgElement { sig: self.sig, mat: &self.mat - &rhs.mat }
    }
}

impl Neg for &AlgElement {
    type Output = AlgElement;
    fn neg(self) -> AlgElement {
        AlgElement { sig: self.sig, mat: -&self.mat }
    }
}

pub fn bracket(x: &AlgElement, y: &AlgElement) -> Result<AlgElement> {
    x.sig.check_same(&y.sig)?;
    Ok(AlgElement { sig: x.sig, mat: x.mat.commutator(&y.mat) })
}

/// An element of `O(p+1,q+1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    sig: Signature,
    mat: QMatrix,
}

impl GroupElement {
    pub fn new(sig: Signature, mat: QMatrix) -> Result<Self> {
        if mat.rows() != sig.dim() || mat.cols() != sig.dim() {
            return Err(Error::DimensionMismatch { expected: sig.dim(), found: mat.rows() });
        }
        if !in_group(sig, &mat) {
            return Err(Error::NotInGroup(linalg::fmt_rows(&mat)));
        }
        Ok(Self { sig, mat })
    }

    pub(crate) fn from_raw(sig: Signature, mat: QMatrix) -> Self {
        debug_assert!(in_group(sig, &mat));
        Self { sig, mat }
    }

    pub fn identity(sig: Signature) -> Self {
        Self { sig, mat: QMatrix::identity(sig.dim()) }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> QMatrix {
        self.mat
    }

    pub fn is_identity(&self) -> bool {
        self.mat == QMatrix::identity(self.sig.dim())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.sig.check_same(&other.sig)?;
        Ok(Self { sig: self.sig, mat: &self.mat * &other.mat })
    }

    /// `J gᵀ J`, exact for form-preserving matrices.
    pub fn inverse(&self) -> Self {
        let j = self.sig.ambient_form().gram();
        Self { sig: self.sig, mat: &(&j * &self.mat.transpose()) * &j }
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vector> {
        self.mat.mul_vec(v)
    }

    /// Whether `g` fixes the line `[e_0]`.
    pub fn in_parabolic(&self) -> bool {
        (1..self.sig.dim()).all(|i| self.mat[(i, 0)].is_zero())
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        &self.mat * &other.mat == &other.mat * &self.mat
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement{} {:?}", self.sig, self.mat)
    }
}

pub fn adjoint(g: &GroupElement, x: &AlgElement) -> Result<AlgElement> {
    g.sig.check_same(&x.sig)?;
    let m = &(&g.mat * &x.mat) * &g.inverse().mat;
    Ok(AlgElement { sig: x.sig, mat: m })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Block {
    Minus,
    Zero,
    Plus,
}

fn block_of(n: usize, i: usize, j: usize) -> Block {
    let mid = |k: usize| (1..=n).contains(&k);
    if (mid(i) && j == 0) || (i == n + 1 && mid(j)) {
        Block::Minus
    } else if (i == 0 && mid(j)) || (mid(i) && j == n + 1) {
        Block::Plus
    } else {
        Block::Zero
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    pub minus: AlgElement,
    pub zero: AlgElement,
    pub plus: AlgElement,
}

pub fn grade(x: &AlgElement) -> Grading {
    let d = x.sig.dim();
    let n = x.sig.n();
    let part = |b: Block| {
        let m = QMatrix::from_fn(d, d, |i, j| {
            if block_of(n, i, j) == b {
                x.mat[(i, j)].clone()
            } else {
                Rational::zero()
            }
        });
        AlgElement::from_raw(x.sig, m)
    };
    Grading { minus: part(Block::Minus), zero: part(Block::Zero), plus: part(Block::Plus) }
}

fn check_model_vec(sig: Signature, v: &[Rational]) -> Result<()> {
    if v.len() != sig.n() {
        return Err(Error::DimensionMismatch { expected: sig.n(), found: v.len() });
    }
    Ok(())
}

/// `R^{p,q} → u⁺`: row 0 carries `(J'v)ᵀ`, column `n+1` carries `−v`.
pub fn iplus(sig: Signature, v: &[Rational]) -> Result<AlgElement> {
    check_model_vec(sig, v)?;
    let n = sig.n();
    let lowered = sig.model_form().lower(v)?;
    let mut m = QMatrix::zeros(n + 2, n + 2);
    for i in 0..n {
        m[(0, i + 1)] = lowered[i].clone();
        m[(i + 1, n + 1)] = -v[i].clone();
    }
    Ok(AlgElement::from_raw(sig, m))
}

/// `R^{p,q} → u⁻`: column 0 carries `v`, row `n+1` carries `−(J'v)ᵀ`.
pub fn iminus(sig: Signature, v: &[Rational]) -> Result<AlgElement> {
    check_model_vec(sig, v)?;
    let n = sig.n();
    let lowered = sig.model_form().lower(v)?;
    let mut m = QMatrix::zeros(n + 2, n + 2);
    for i in 0..n {
        m[(i + 1, 0)] = v[i].clone();
        m[(n + 1, i + 1)] = -lowered[i].clone();
    }
    Ok(AlgElement::from_raw(sig, m))
}

/// Vector of the `u⁺` component of `x`.
pub fn iplus_inv(x: &AlgElement) -> Vector {
    let n = x.sig.n();
    (1..=n).map(|i| -x.mat[(i, n + 1)].clone()).collect()
}

/// Vector of the `u⁻` component of `x`.
pub fn iminus_inv(x: &AlgElement) -> Vector {
    (1..=x.sig.n()).map(|i| x.mat[(i, 0)].clone()).collect()
}

/// The null translation `T = i⁺(u_1)`.
pub fn translation_t(sig: Signature) -> AlgElement {
    iplus(sig, &linalg::unit_vec(sig.n(), 0)).expect("length n")
}

/// `U_i = i⁻(u_i)` for `1 ≤ i ≤ n`.
pub fn u_basis(sig: Signature, i: usize) -> AlgElement {
    assert!((1..=sig.n()).contains(&i), "U_i index out of range");
    iminus(sig, &linalg::unit_vec(sig.n(), i - 1)).expect("length n")
}

/// Reductive element `diag(λ, A, −λ)` with `A ∈ o(p,q)`.
pub fn reductive(sig: Signature, lambda: &Rational, a: &QMatrix) -> Result<AlgElement> {
    let n = sig.n();
    if a.rows() != n || a.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: a.rows() });
    }
    let mut m = QMatrix::zeros(n + 2, n + 2);
    m[(0, 0)] = lambda.clone();
    m[(n + 1, n + 1)] = -lambda.clone();
    for i in 0..n {
        for j in 0..n {
            m[(i + 1, j + 1)] = a[(i, j)].clone();
        }
    }
    AlgElement::new(sig, m)
}

/// Reductive group element `diag(μ, B, 1/μ)` with `B ∈ O(p,q)`.
pub fn reductive_group(sig: Signature, mu: &Rational, b: &QMatrix) -> Result<GroupElement> {
    let n = sig.n();
    if b.rows() != n || b.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.rows() });
    }
    if mu.is_zero() {
        return Err(Error::Singular);
    }
    let mut m = QMatrix::zeros(n + 2, n + 2);
    m[(0, 0)] = mu.clone();
    m[(n + 1, n + 1)] = mu.recip();
    for i in 0..n {
        for j in 0..n {
            m[(i + 1, j + 1)] = b[(i, j)].clone();
        }
    }
    GroupElement::new(sig, m)
}

/// Basis `J(E_ij − E_ji)`, `i < j`, of the orthogonal algebra of a split form.
pub fn form_algebra_basis(form: &SplitForm) -> Vec<QMatrix> {
    let m = form.dim();
    let mut out = Vec::with_capacity(m * m.saturating_sub(1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            let mut x = QMatrix::zeros(m, m);
            x[(form.partner(i), j)] = Rational::one();
            x[(form.partner(j), i)] = -Rational::one();
            out.push(x);
        }
    }
    out
}

/// True when `a` lies in the orthogonal algebra of `form`.
pub fn in_form_algebra(form: &SplitForm, a: &QMatrix) -> bool {
    let m = form.dim();
    a.rows() == m
        && a.cols() == m
        && (0..m).all(|i| (i..m).all(|j| (&a[(form.partner(i), j)] + &a[(form.partner(j), i)]).is_zero()))
}

pub fn algebra_basis(sig: Signature) -> Vec<AlgElement> {
    form_algebra_basis(&sig.ambient_form()).into_iter().map(|m| AlgElement::from_raw(sig, m)).collect()
}

/// A linear subspace of `o(p+1,q+1)`, optionally bracket-closed.
#[derive(Clone, PartialEq, Eq)]
pub struct Subalgebra {
    sig: Signature,
    span: Subspace,
    basis: Vec<AlgElement>,
}

impl Subalgebra {
    pub fn from_span(sig: Signature, span: Subspace) -> Self {
        let basis = span.basis().iter().map(|v| AlgElement::from_coords(sig, v.clone())).collect();
        Self { sig, span, basis }
    }

    /// Span of the given elements; the stored basis is the reduced echelon one.
    pub fn new(sig: Signature, elems: &[AlgElement]) -> Result<Self> {
        for e in elems {
            sig.check_same(&e.sig)?;
        }
        let d2 = sig.dim() * sig.dim();
        Ok(Self::from_span(sig, Subspace::from_vectors(d2, elems.iter().map(|e| e.coords()))))
    }

    pub fn zero(sig: Signature) -> Self {
        Self::from_span(sig, Subspace::zero(sig.dim() * sig.dim()))
    }

    pub fn whole(sig: Signature) -> Self {
        Self::new(sig, &algebra_basis(sig)).expect("same signature")
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[AlgElement] {
        &self.basis
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn contains(&self, x: &AlgElement) -> bool {
        x.sig == self.sig && self.span.contains(&x.coords())
    }

    pub fn contains_sub(&self, other: &Subalgebra) -> bool {
        self.sig == other.sig && self.span.contains_space(&other.span)
    }

    pub fn same_span(&self, other: &Subalgebra) -> bool {
        self.sig == other.sig && self.span.same_span(&other.span)
    }

    pub fn intersection(&self, other: &Subalgebra) -> Result<Subalgebra> {
        self.sig.check_same(&other.sig)?;
        Ok(Self::from_span(self.sig, self.span.intersection(&other.span)))
    }

    pub fn sum(&self, other: &Subalgebra) -> Result<Subalgebra> {
        self.sig.check_same(&other.sig)?;
        Ok(Self::from_span(self.sig, self.span.sum(&other.span)))
    }

    /// Coordinates in [`Self::basis`].
    pub fn coordinates(&self, x: &AlgElement) -> Option<Vec<Rational>> {
        self.span.coordinates(&x.coords())
    }

    /// Span of `[a, b]` over basis pairs of `self` and `other`.
    pub fn bracket_span(&self, other: &Subalgebra) -> Result<Subalgebra> {
        self.sig.check_same(&other.sig)?;
        let mut vecs = Vec::new();
        for a in &self.basis {
            for b in &other.basis {
                let c = a.mat.commutator(&b.mat);
                if !c.is_zero() {
                    vecs.push(c.into_flat());
                }
            }
        }
        let d2 = self.sig.dim() * self.sig.dim();
        Ok(Self::from_span(self.sig, Subspace::from_vectors(d2, vecs)))
    }

    pub fn is_closed(&self) -> bool {
        self.basis.iter().enumerate().all(|(i, a)| {
            self.basis[i + 1..].iter().all(|b| self.span.contains(a.mat.commutator(&b.mat).as_slice()))
        })
    }

    pub fn require_closed(&self) -> Result<()> {
        if self.is_closed() {
            Ok(())
        } else {
            Err(Error::NotBracketClosed)
        }
    }

    /// Smallest subalgebra containing the generators.
    pub fn generated_by(sig: Signature, gens: &[AlgElement]) -> Result<Subalgebra> {
        let mut cur = Self::new(sig, gens)?;
        loop {
            let next = cur.sum(&cur.bracket_span(&cur)?)?;
            if next.dim() == cur.dim() {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Matrix of `ad x` on `self` in the echelon basis; requires `[x, self] ⊆ self`.
    pub fn ad_matrix(&self, x: &AlgElement) -> Result<QMatrix> {
        let k = self.dim();
        let mut m = QMatrix::zeros(k, k);
        for (j, b) in self.basis.iter().enumerate() {
            let c = bracket(x, b)?;
            let coords = self.coordinates(&c).ok_or(Error::NotBracketClosed)?;
            for (i, v) in coords.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(m)
    }

    pub fn conjugate(&self, g: &GroupElement) -> Result<Subalgebra> {
        let elems: Vec<AlgElement> = self.basis.iter().map(|b| adjoint(g, b)).collect::<Result<_>>()?;
        Self::new(self.sig, &elems)
    }
}

impl fmt::Debug for Subalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subalgebra{}(dim {})", self.sig, self.dim())
    }
}

fn block_subalgebra(sig: Signature, keep: impl Fn(Block) -> bool) -> Subalgebra {
    let n = sig.n();
    let elems: Vec<AlgElement> = algebra_basis(sig)
        .into_iter()
        .filter(|b| {
            let d = sig.dim();
            (0..d).all(|i| (0..d).all(|j| b.mat[(i, j)].is_zero() || keep(block_of(n, i, j))))
        })
        .collect();
    Subalgebra::new(sig, &elems).expect("same signature")
}

pub fn u_minus(sig: Signature) -> Subalgebra {
    block_subalgebra(sig, |b| b == Block::Minus)
}

pub fn u_plus(sig: Signature) -> Subalgebra {
    block_subalgebra(sig, |b| b == Block::Plus)
}

pub fn reductive_part(sig: Signature) -> Subalgebra {
    block_subalgebra(sig, |b| b == Block::Zero)
}

/// `p = r ⋉ u⁺`, stabilizer of `[e_0]`, built from the grading.
pub fn parabolic_e0(sig: Signature) -> Subalgebra {
    block_subalgebra(sig, |b| b != Block::Minus)
}

/// `p⁻ = r ⋉ u⁻`, stabilizer of `[e_{n+1}]`.
pub fn parabolic_opposite(sig: Signature) -> Subalgebra {
    block_subalgebra(sig, |b| b != Block::Plus)
}

/// Elements `Σ c_k B_k` of the algebra basis whose coefficients lie in the
/// kernel of a linear map given row by row.
fn solve_in_algebra(sig: Signature, rows_of: impl Fn(&AlgElement) -> Vec<Rational>) -> Subalgebra {
    let basis = algebra_basis(sig);
    let cols: Vec<Vec<Rational>> = basis.iter().map(rows_of).collect();
    let neq = cols.first().map_or(0, Vec::len);
    if neq == 0 {
        return Subalgebra::new(sig, &basis).expect("same signature");
    }
    let m = QMatrix::from_columns(&cols);
    let elems: Vec<AlgElement> = m
        .nullspace()
        .into_iter()
        .map(|c| {
            let mut acc = QMatrix::zeros(sig.dim(), sig.dim());
            for (ck, b) in c.iter().zip(&basis) {
                if !ck.is_zero() {
                    acc = &acc + &b.mat.scale(ck);
                }
            }
            AlgElement::from_raw(sig, acc)
        })
        .collect();
    Subalgebra::new(sig, &elems).expect("same signature")
}

/// `{X : [X, s] = 0 for every generator s}`; the whole algebra when empty.
pub fn centralizer(sig: Signature, gens: &[AlgElement]) -> Result<Subalgebra> {
    for g in gens {
        sig.check_same(&g.sig)?;
    }
    Ok(solve_in_algebra(sig, |b| {
        gens.iter().flat_map(|s| b.mat.commutator(&s.mat).into_flat()).collect()
    }))
}

/// Stabilizer algebra `{X : X x̂ ∈ R x̂}` of a null line.
pub fn parabolic(sig: Signature, point: &ProjectivePoint) -> Result<Subalgebra> {
    let x = point.rep();
    if x.len() != sig.dim() {
        return Err(Error::DimensionMismatch { expected: sig.dim(), found: x.len() });
    }
    if !sig.ambient_form().is_null(x)? {
        return Err(Error::NotNull(point.to_string()));
    }
    let k = x.iter().position(|v| !v.is_zero()).expect("canonical points are nonzero");
    Ok(solve_in_algebra(sig, |b| {
        let y = b.mat.mul_vec(x).expect("length checked");
        // y ∥ x  <=>  y_i x_k − y_k x_i = 0 for all i
        (0..x.len()).map(|i| &y[i] * &x[k] - &y[k] * &x[i]).collect()
    }))
}

pub fn codim_in(sub: &Subalgebra, amb: &Subalgebra) -> Result<usize> {
    sub.sig.check_same(&amb.sig)?;
    if !amb.contains_sub(sub) {
        return Err(Error::NotContained(format!("{}-dimensional subalgebra in a {}-dimensional one", sub.dim(), amb.dim())));
    }
    Ok(amb.dim() - sub.dim())
}

/// `Σ X^k/k!` for a nilpotent square matrix; fails if `X^size ≠ 0`.
pub fn exp_nilpotent_matrix(x: &QMatrix) -> Result<QMatrix> {
    let d = x.rows();
    let mut acc = QMatrix::identity(d);
    let mut term = QMatrix::identity(d);
    for k in 1..=d {
        term = (&term * x).scale(&rational::rat(1, k as i64));
        if term.is_zero() {
            return Ok(acc);
        }
        acc = &acc + &term;
    }
    Err(Error::NotNilpotent(d))
}

pub fn exp_nilpotent(x: &AlgElement) -> Result<GroupElement> {
    let m = exp_nilpotent_matrix(&x.mat)?;
    if !in_group(x.sig, &m) {
        return Err(Error::Internal("exponential left the orthogonal group".into()));
    }
    Ok(GroupElement { sig: x.sig, mat: m })
}

/// `τ^s = e^{sT}`.
pub fn tau(sig: Signature, s: &Rational) -> GroupElement {
    exp_nilpotent(&translation_t(sig).scale(s)).expect("T is nilpotent")
}

fn det2(a: &QMatrix) -> Rational {
    &a[(0, 0)] * &a[(1, 1)] - &a[(0, 1)] * &a[(1, 0)]
}

/// `A ∈ SL(2)` acting on `(x_0, x_1)`, identity on the middle, and on
/// `(x_n, x_{n+1})` by the block `B` solving `Aᵀ K B = K`, `K = [[0,1],[1,0]]`.
pub fn sl2_embed(sig: Signature, a: &QMatrix) -> Result<GroupElement> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: a.rows() });
    }
    if !det2(a).is_one() {
        return Err(Error::Precondition(format!("det A = {} (expected 1)", det2(a))));
    }
    if sig.p() == 0 {
        return Err(Error::Precondition("the (x_0,x_1) block needs p >= 1".into()));
    }
    let k = QMatrix::from_i64(&[&[0, 1], &[1, 0]]);
    let c = &a.transpose() * &k;
    // unknowns b00, b01, b10, b11; equation (i,j): Σ_l c[i][l] b[l][j] = k[i][j]
    let sys = QMatrix::from_fn(4, 4, |row, col| {
        let (i, j) = (row / 2, row % 2);
        let (l, jj) = (col / 2, col % 2);
        if jj == j {
            c[(i, l)].clone()
        } else {
            Rational::zero()
        }
    });
    let rhs: Vec<Rational> = (0..4).map(|r| k[(r / 2, r % 2)].clone()).collect();
    let b = sys.solve(&rhs)?.ok_or(Error::Singular)?;
    let n = sig.n();
    let mut m = QMatrix::identity(n + 2);
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j)] = a[(i, j)].clone();
            m[(n + i, n + j)] = b[2 * i + j].clone();
        }
    }
    GroupElement::new(sig, m).map_err(|e| Error::Internal(format!("sl2 block: {e}")))
}

/// Rational rotation with half-angle tangent `m`: `θ = 2 atan(m)`.
pub fn rotation(m: &Rational) -> QMatrix {
    let one = Rational::one();
    let den = &one + m * m;
    let c = (&one - m * m) / &den;
    let s = (m * rational::int(2)) / &den;
    QMatrix::from_rows(vec![vec![c.clone(), -s.clone()], vec![s, c]]).expect("2x2")
}

/// `g_θ = sl2_embed(rotation)`, with `θ` given by its half-angle tangent.
pub fn g_theta(sig: Signature, m: &Rational) -> Result<GroupElement> {
    sl2_embed(sig, &rotation(m))
}

/// Random element with small integer coefficients in the algebra basis.
pub fn random_element(sig: Signature, rng: &mut SplitMix64) -> AlgElement {
    let mut acc = QMatrix::zeros(sig.dim(), sig.dim());
    for b in algebra_basis(sig) {
        let c = rng.small_rat(3, 2);
        if !c.is_zero() {
            acc = &acc + &b.mat.scale(&c);
        }
    }
    AlgElement::from_raw(sig, acc)
}

/// Cayley transform `(I − X)⁻¹(I + X)` of an algebra element.
pub fn cayley(x: &AlgElement) -> Result<GroupElement> {
    let i = QMatrix::identity(x.sig.dim());
    let m = &(&i - &x.mat).inverse()? * &(&i + &x.mat);
    Ok(GroupElement::from_raw(x.sig, m))
}

/// Random form-preserving matrix via the Cayley transform.
pub fn random_group_element(sig: Signature, rng: &mut SplitMix64) -> GroupElement {
    loop {
        let x = random_element(sig, rng).scale(&rational::rat(1, 3));
        if let Ok(g) = cayley(&x) {
            return g;
        }
    }
}

/// Random element of `O(p,q)` on the model space, via the Cayley transform.
pub fn random_model_orthogonal(sig: Signature, rng: &mut SplitMix64) -> QMatrix {
    let form = sig.model_form();
    let n = sig.n();
    let i = QMatrix::identity(n);
    loop {
        let mut a = QMatrix::zeros(n, n);
        for b in form_algebra_basis(&form) {
            let c = rng.small_rat(2, 3);
            if !c.is_zero() {
                a = &a + &b.scale(&c);
            }
        }
        if let Ok(inv) = (&i - &a).inverse() {
            return &inv * &(&i + &a);
        }
    }
}

/// Strictly upper-triangular part of the algebra; a maximal nilpotent
/// subalgebra in this coordinate layout.
pub fn n_max(sig: Signature) -> Subalgebra {
    let d = sig.dim();
    let elems: Vec<AlgElement> = algebra_basis(sig)
        .into_iter()
        .filter(|b| (0..d).all(|i| (0..=i).all(|j| b.mat[(i, j)].is_zero())))
        .collect();
    Subalgebra::new(sig, &elems).expect("same signature")
}
