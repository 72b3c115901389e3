//! The centralizer `c(τ^s)` of the flow, its parametrization by
//! `(a, b, c, s, x, y, M)`, and the subalgebra `q = {a = c = 0}`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie_algebra::{self, translation_t, AlgElement, Subalgebra};
use crate::linalg::{self, QMatrix};
use crate::nilpotency::nilpotence_degree;
use crate::quadratic_forms::{Signature, SplitForm, Vector};
use crate::rational::{self, Rational};
use crate::rng::SplitMix64;

/// Positions of the parameter slots inside the `(n+2) × (n+2)` matrix.
///
/// Rows and columns `0, 1` and `n, n+1` form the two `2 × 2` corner blocks;
/// inner index `k` sits at ambient index `k + 2`.
#[derive(Debug, Clone, Copy)]
struct Slots {
    n: usize,
}

impl Slots {
    fn mid(self, k: usize) -> usize {
        k + 2
    }
    fn inner_dim(self) -> usize {
        self.n - 2
    }
    const A: (usize, usize) = (0, 0);
    const B: (usize, usize) = (0, 1);
    const C: (usize, usize) = (1, 0);
    fn s(self) -> (usize, usize) {
        (0, self.n)
    }
    fn y(self, k: usize) -> (usize, usize) {
        (self.mid(k), self.n)
    }
    fn x(self, k: usize) -> (usize, usize) {
        (self.mid(k), self.n + 1)
    }
    fn m(self, i: usize, j: usize) -> (usize, usize) {
        (self.mid(i), self.mid(j))
    }
}

fn rat_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational::format).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CTauElement {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub s: Rational,
    pub x: Vector,
    pub y: Vector,
    pub m: QMatrix,
}

impl Serialize for CTauElement {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            a: String,
            b: String,
            c: String,
            s: String,
            x: Vec<String>,
            y: Vec<String>,
            m: Vec<Vec<String>>,
        }
        Repr {
            a: rational::format(&self.a),
            b: rational::format(&self.b),
            c: rational::format(&self.c),
            s: rational::format(&self.s),
            x: rat_strings(&self.x),
            y: rat_strings(&self.y),
            m: self.m.to_rows().iter().map(|r| rat_strings(r)).collect(),
        }
        .serialize(ser)
    }
}

fn inner(sig: Signature) -> Result<SplitForm> {
    if sig.p() == 0 {
        return Err(Error::Precondition("needs p >= 1".into()));
    }
    sig.inner_form()
}

impl CTauElement {
    pub fn zero(sig: Signature) -> Self {
        let d = sig.n() - 2;
        let z = Rational::zero();
        CTauElement { a: z.clone(), b: z.clone(), c: z.clone(), s: z, x: vec![Rational::zero(); d], y: vec![Rational::zero(); d], m: QMatrix::zeros(d, d) }
    }

    pub fn is_q(&self) -> bool {
        self.a.is_zero() && self.c.is_zero()
    }

    pub fn random(sig: Signature, rng: &mut SplitMix64) -> Result<Self> {
        let form = inner(sig)?;
        let d = form.dim();
        let basis = lie_algebra::form_algebra_basis(&form);
        let mut m = QMatrix::zeros(d, d);
        for bm in &basis {
            m = &m + &bm.scale(&rng.small_rat(4, 3));
        }
        Ok(CTauElement {
            a: rng.small_rat(4, 3),
            b: rng.small_rat(4, 3),
            c: rng.small_rat(4, 3),
            s: rng.small_rat(4, 3),
            x: rng.rat_vec(d, 4, 3),
            y: rng.rat_vec(d, 4, 3),
            m,
        })
    }
}

/// The parametrized matrix; it commutes with `T` by construction, which is
/// asserted.
pub fn assemble(sig: Signature, e: &CTauElement) -> Result<AlgElement> {
    let form = inner(sig)?;
    let sl = Slots { n: sig.n() };
    let d = sl.inner_dim();
    if e.x.len() != d || e.y.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: e.x.len().max(e.y.len()) });
    }
    if e.m.rows() != d || e.m.cols() != d || !lie_algebra::in_form_algebra(&form, &e.m) {
        return Err(Error::NotInAlgebra("M is not in the inner orthogonal algebra".into()));
    }
    let n = sig.n();
    let mut mat = QMatrix::zeros(n + 2, n + 2);
    let set = |mat: &mut QMatrix, (i, j): (usize, usize), v: Rational| mat[(i, j)] = v;
    set(&mut mat, Slots::A, e.a.clone());
    set(&mut mat, Slots::B, e.b.clone());
    set(&mut mat, Slots::C, e.c.clone());
    set(&mut mat, (1, 1), -e.a.clone());
    set(&mut mat, (n, n), e.a.clone());
    set(&mut mat, (n, n + 1), -e.b.clone());
    set(&mut mat, (n + 1, n), -e.c.clone());
    set(&mut mat, (n + 1, n + 1), -e.a.clone());
    set(&mut mat, sl.s(), e.s.clone());
    set(&mut mat, (1, n + 1), -e.s.clone());
    let jx = form.lower(&e.x)?;
    let jy = form.lower(&e.y)?;
    for k in 0..d {
        set(&mut mat, (0, sl.mid(k)), -jx[k].clone());
        set(&mut mat, (1, sl.mid(k)), -jy[k].clone());
        set(&mut mat, sl.x(k), e.x[k].clone());
        set(&mut mat, sl.y(k), e.y[k].clone());
        for l in 0..d {
            set(&mut mat, sl.m(k, l), e.m[(k, l)].clone());
        }
    }
    let el = AlgElement::new(sig, mat).map_err(|err| Error::Internal(format!("assembled matrix: {err}")))?;
    if !el.bracket(&translation_t(sig))?.is_zero() {
        return Err(Error::Internal("assembled matrix does not commute with T".into()));
    }
    Ok(el)
}

/// Reads the parameters back; fails when `X` is not of the parametrized form.
pub fn disassemble(x: &AlgElement) -> Result<CTauElement> {
    let sig = x.signature();
    inner(sig)?;
    let sl = Slots { n: sig.n() };
    let d = sl.inner_dim();
    let mat = x.matrix();
    let get = |(i, j): (usize, usize)| mat[(i, j)].clone();
    let e = CTauElement {
        a: get(Slots::A),
        b: get(Slots::B),
        c: get(Slots::C),
        s: get(sl.s()),
        x: (0..d).map(|k| get(sl.x(k))).collect(),
        y: (0..d).map(|k| get(sl.y(k))).collect(),
        m: QMatrix::from_fn(d, d, |i, j| get(sl.m(i, j))),
    };
    match assemble(sig, &e) {
        Ok(back) if &back == x => Ok(e),
        _ => Err(Error::NotContained("matrix is not in the centralizer of T".into())),
    }
}

/// `c(T)` as the span of the parametrized family, cross-checked against the
/// kernel of `ad T`.
pub fn ctau_basis(sig: Signature) -> Result<Subalgebra> {
    let form = inner(sig)?;
    let d = form.dim();
    let mut gens = Vec::new();
    let z = CTauElement::zero(sig);
    for slot in 0..4 {
        let mut e = z.clone();
        *[&mut e.a, &mut e.b, &mut e.c, &mut e.s][slot] = Rational::from_integer(1.into());
        gens.push(assemble(sig, &e)?);
    }
    for k in 0..d {
        let mut e = z.clone();
        e.x = linalg::unit_vec(d, k);
        gens.push(assemble(sig, &e)?);
        let mut e = z.clone();
        e.y = linalg::unit_vec(d, k);
        gens.push(assemble(sig, &e)?);
    }
    for m in lie_algebra::form_algebra_basis(&form) {
        let mut e = z.clone();
        e.m = m;
        gens.push(assemble(sig, &e)?);
    }
    let family = Subalgebra::new(sig, &gens)?;
    let kernel = lie_algebra::centralizer(sig, &[translation_t(sig)])?;
    if !family.same_span(&kernel) {
        return Err(Error::Internal(format!(
            "parametrized family (dim {}) differs from ker ad T (dim {})",
            family.dim(),
            kernel.dim()
        )));
    }
    Ok(family)
}

/// Element `(b, M, x, y, s)` of `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct QElement(CTauElement);

impl QElement {
    pub fn new(sig: Signature, b: Rational, m: QMatrix, x: Vector, y: Vector, s: Rational) -> Result<Self> {
        let e = CTauElement { a: Rational::zero(), b, c: Rational::zero(), s, x, y, m };
        assemble(sig, &e)?;
        Ok(QElement(e))
    }

    pub fn from_ctau(e: CTauElement) -> Result<Self> {
        if !e.is_q() {
            return Err(Error::NotContained("a and c must vanish in q".into()));
        }
        Ok(QElement(e))
    }

    pub fn random(sig: Signature, rng: &mut SplitMix64) -> Result<Self> {
        let mut e = CTauElement::random(sig, rng)?;
        e.a = Rational::zero();
        e.c = Rational::zero();
        Ok(QElement(e))
    }

    pub fn params(&self) -> &CTauElement {
        &self.0
    }

    pub fn b(&self) -> &Rational {
        &self.0.b
    }
    pub fn m(&self) -> &QMatrix {
        &self.0.m
    }
    pub fn x(&self) -> &Vector {
        &self.0.x
    }
    pub fn y(&self) -> &Vector {
        &self.0.y
    }
    pub fn s(&self) -> &Rational {
        &self.0.s
    }

    pub fn to_alg(&self, sig: Signature) -> Result<AlgElement> {
        assemble(sig, &self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QProjections {
    pub pi1: Rational,
    pub pi2: QMatrix,
    pub pi3: (Vector, Vector),
}

impl QProjections {
    pub fn is_zero(&self) -> bool {
        self.pi1.is_zero() && self.pi2.is_zero() && linalg::is_zero_vec(&self.pi3.0) && linalg::is_zero_vec(&self.pi3.1)
    }
}

pub fn q_projections(u: &QElement) -> QProjections {
    QProjections { pi1: u.b().clone(), pi2: u.m().clone(), pi3: (u.x().clone(), u.y().clone()) }
}

/// Closed-form projections of `[u_1, u_2]`:
/// `π_1 = 0`, `π_2 = [M_1, M_2]`,
/// `π_3 = (b_1 y_2 − b_2 y_1 + M_1 x_2 − M_2 x_1, M_1 y_2 − M_2 y_1)`.
pub fn q_bracket_law(u1: &QElement, u2: &QElement) -> Result<QProjections> {
    let m1 = u1.m();
    let m2 = u2.m();
    let xpart = linalg::sub_vec(
        &linalg::add_vec(&linalg::scale_vec(u1.b(), u2.y()), &m1.mul_vec(u2.x())?),
        &linalg::add_vec(&linalg::scale_vec(u2.b(), u1.y()), &m2.mul_vec(u1.x())?),
    );
    let ypart = linalg::sub_vec(&m1.mul_vec(u2.y())?, &m2.mul_vec(u1.y())?);
    Ok(QProjections { pi1: Rational::zero(), pi2: m1.commutator(m2), pi3: (xpart, ypart) })
}

/// `[u_1, u_2]` through the matrix commutator, with the projection laws
/// certified on every call.
pub fn q_bracket(sig: Signature, u1: &QElement, u2: &QElement) -> Result<QElement> {
    let br = u1.to_alg(sig)?.bracket(&u2.to_alg(sig)?)?;
    let e = disassemble(&br).map_err(|_| Error::Internal("bracket left c(T)".into()))?;
    let out = QElement::from_ctau(e).map_err(|_| Error::Internal("bracket left q".into()))?;
    if q_projections(&out) != q_bracket_law(u1, u2)? {
        return Err(Error::Internal("projection laws violated".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct HeisReport {
    pub p: usize,
    pub q: usize,
    pub q_dim: usize,
    pub center_dim: usize,
    pub center_is_s_slot: bool,
    pub ideal_dim: usize,
    pub derived_dim: usize,
    pub derived_is_s_slot: bool,
    pub two_step: bool,
    pub ideal_is_ideal: bool,
    pub pass: bool,
}

fn q_basis(sig: Signature) -> Result<(Vec<AlgElement>, Vec<AlgElement>, AlgElement)> {
    let form = inner(sig)?;
    let d = form.dim();
    let z = CTauElement::zero(sig);
    let one = Rational::from_integer(1.into());
    let mut reductive = Vec::new();
    let mut e = z.clone();
    e.b = one.clone();
    reductive.push(assemble(sig, &e)?);
    for m in lie_algebra::form_algebra_basis(&form) {
        let mut e = z.clone();
        e.m = m;
        reductive.push(assemble(sig, &e)?);
    }
    let mut heis = Vec::new();
    for k in 0..d {
        let mut e = z.clone();
        e.x = linalg::unit_vec(d, k);
        heis.push(assemble(sig, &e)?);
        let mut e = z.clone();
        e.y = linalg::unit_vec(d, k);
        heis.push(assemble(sig, &e)?);
    }
    let mut e = z;
    e.s = one;
    let s_slot = assemble(sig, &e)?;
    heis.push(s_slot.clone());
    Ok((reductive, heis, s_slot))
}

/// Certifies `q ≅ (R ⊕ o(p−1,q−1)) ⋉ heis(2n−3)`.
pub fn heis_structure_report(sig: Signature) -> Result<HeisReport> {
    let (reductive, heis, s_slot) = q_basis(sig)?;
    let all: Vec<AlgElement> = reductive.iter().chain(&heis).cloned().collect();
    let q = Subalgebra::new(sig, &all)?;
    q.require_closed()?;
    let center = lie_algebra::centralizer(sig, q.basis())?.intersection(&q)?;
    let s_line = Subalgebra::new(sig, &[s_slot])?;
    let ideal = Subalgebra::new(sig, &heis)?;
    let derived = ideal.bracket_span(&ideal)?;
    let triple = ideal.bracket_span(&derived)?;
    let ideal_is_ideal = ideal.contains_sub(&q.bracket_span(&ideal)?);
    let center_is_s_slot = center.same_span(&s_line);
    let derived_is_s_slot = derived.same_span(&s_line);
    let two_step = triple.dim() == 0;
    let n = sig.n();
    let pass = center_is_s_slot
        && derived_is_s_slot
        && two_step
        && ideal_is_ideal
        && ideal.dim() == 2 * n - 3
        && q.dim() == 2 * n - 2 + lie_algebra::form_algebra_basis(&inner(sig)?).len();
    Ok(HeisReport {
        p: sig.p(),
        q: sig.q(),
        q_dim: q.dim(),
        center_dim: center.dim(),
        center_is_s_slot,
        ideal_dim: ideal.dim(),
        derived_dim: derived.dim(),
        derived_is_s_slot,
        two_step,
        ideal_is_ideal,
        pass,
    })
}

/// The subalgebra `q` itself.
pub fn q_subalgebra(sig: Signature) -> Result<Subalgebra> {
    let (reductive, heis, _) = q_basis(sig)?;
    let all: Vec<AlgElement> = reductive.into_iter().chain(heis).collect();
    Subalgebra::new(sig, &all)
}

#[derive(Debug, Clone, Serialize)]
pub struct BVanishingReport {
    pub p: usize,
    pub q: usize,
    pub input_dim: usize,
    pub input_degree: usize,
    pub centralizer_dim: usize,
    pub parameters: Vec<CTauElement>,
    pub contains_t_slot: bool,
    pub b_all_zero: bool,
    pub relation_pairs_checked: usize,
    pub relations_hold: bool,
    pub offending: Vec<String>,
    pub pass: bool,
}

/// Relations forced on `u_0 ∈ c(h)` by each `u ∈ h`:
/// `[M_0, M] = 0`, `M_0 y = M y_0`, `b_0 y + M_0 x = b y_0 + M x_0`.
pub fn centralizer_relations_hold(u0: &QElement, u: &QElement) -> Result<bool> {
    let r1 = u0.m().commutator(u.m()).is_zero();
    let r2 = u0.m().mul_vec(u.y())? == u.m().mul_vec(u0.y())?;
    let lhs = linalg::add_vec(&linalg::scale_vec(u0.b(), u.y()), &u0.m().mul_vec(u.x())?);
    let rhs = linalg::add_vec(&linalg::scale_vec(u.b(), u0.y()), &u.m().mul_vec(u0.x())?);
    Ok(r1 && r2 && lhs == rhs)
}

/// For `h ⊆ q` nilpotent of degree `2p+1` and containing `T`, computes
/// `c(h)` and checks that every element has vanishing `b`.
pub fn centralizer_b_vanishing(h: &Subalgebra) -> Result<BVanishingReport> {
    let sig = h.signature();
    inner(sig)?;
    h.require_closed()?;
    let q = q_subalgebra(sig)?;
    if !q.contains_sub(h) {
        return Err(Error::Precondition("input is not contained in q".into()));
    }
    let t = translation_t(sig);
    if !h.contains(&t) {
        return Err(Error::Precondition("input does not contain the T direction".into()));
    }
    let target = 2 * sig.p() + 1;
    let degree = nilpotence_degree(h)?;
    if degree != target {
        return Err(Error::Precondition(format!("nilpotence degree {degree}, expected {target}")));
    }
    let cent = lie_algebra::centralizer(sig, h.basis())?;
    let contains_t_slot = cent.contains(&t);
    let mut parameters = Vec::new();
    let mut offending = Vec::new();
    let mut b_all_zero = true;
    let mut relations_hold = true;
    let mut checked = 0;
    let h_params: Vec<QElement> = h
        .basis()
        .iter()
        .map(|x| QElement::from_ctau(disassemble(x)?))
        .collect::<Result<_>>()?;
    for el in cent.basis() {
        let e = disassemble(el).map_err(|_| Error::Internal(format!("centralizer element outside c(T):\n{}", el.matrix())))?;
        if !e.b.is_zero() {
            b_all_zero = false;
            offending.push(el.matrix().to_string());
        }
        if let Ok(u0) = QElement::from_ctau(e.clone()) {
            for u in &h_params {
                checked += 1;
                if !centralizer_relations_hold(&u0, u)? {
                    relations_hold = false;
                    offending.push(format!("relation failure\n{}\nagainst\n{}", el.matrix(), u.to_alg(sig)?.matrix()));
                }
            }
        }
        parameters.push(e);
    }
    Ok(BVanishingReport {
        p: sig.p(),
        q: sig.q(),
        input_dim: h.dim(),
        input_degree: degree,
        centralizer_dim: cent.dim(),
        parameters,
        contains_t_slot,
        b_all_zero,
        relation_pairs_checked: checked,
        relations_hold,
        pass: b_all_zero && relations_hold && contains_t_slot,
        offending,
    })
}
