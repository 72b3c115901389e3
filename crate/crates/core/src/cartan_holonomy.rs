//! Holonomy of the flat model along exponential curves, the framing scalings
//! on `g/p`, and developments of piecewise-geodesic curves.

use nalgebra::DMatrix;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie_algebra::{
    self, adjoint, exp_nilpotent, grade, iminus, iminus_inv, tau, translation_t, u_basis, AlgElement,
    GroupElement,
};
use crate::linalg::{self, QMatrix};
use crate::quadratic_forms::{Signature, Vector};
use crate::rational::{self, Rational};
use crate::rng::SplitMix64;

fn pole_check(s: &Rational, t: &Rational) -> Result<Rational> {
    let d = Rational::one() + s * t;
    if d.is_zero() {
        return Err(Error::Pole { s: s.to_string(), t: t.to_string() });
    }
    Ok(d)
}

/// `c_s(t) = t / (1 + s t)`.
pub fn reparam(s: &Rational, t: &Rational) -> Result<Rational> {
    Ok(t / pole_check(s, t)?)
}

/// `diag(1+st, 1+st, 1, …, 1, 1/(1+st), 1/(1+st)) + sT`.
pub fn holonomy_matrix(sig: Signature, s: &Rational, t: &Rational) -> Result<GroupElement> {
    let k = pole_check(s, t)?;
    let n = sig.n();
    let mut m = QMatrix::identity(n + 2);
    m[(0, 0)] = k.clone();
    m[(1, 1)] = k.clone();
    m[(n, n)] = k.recip();
    m[(n + 1, n + 1)] = k.recip();
    let m = &m + &translation_t(sig).matrix().scale(s);
    GroupElement::new(sig, m).map_err(|e| Error::Internal(format!("h(s,t): {e}")))
}

/// `τ^s e^{t U_n} = e^{c(t) U_n} h(s,t)`, checked exactly.
pub fn verify_base_factorization(sig: Signature, s: &Rational, t: &Rational) -> Result<bool> {
    let c = reparam(s, t)?;
    let un = u_basis(sig, sig.n());
    let lhs = tau(sig, s).mul(&exp_nilpotent(&un.scale(t))?)?;
    let rhs = exp_nilpotent(&un.scale(&c))?.mul(&holonomy_matrix(sig, s, t)?)?;
    Ok(lhs == rhs)
}

/// Closed-form factorization `τ^s e^{tU} = e^{c(t)U} g h(s,t) g⁻¹` with
/// `U = (Ad g)(U_n)` for `g` commuting with `τ^s`.
#[derive(Debug, Clone)]
pub struct HolonomyFactorization {
    sig: Signature,
    s: Rational,
    conjugator: GroupElement,
    direction: AlgElement,
}

impl HolonomyFactorization {
    pub fn s(&self) -> &Rational {
        &self.s
    }

    pub fn direction(&self) -> &AlgElement {
        &self.direction
    }

    pub fn conjugator(&self) -> &GroupElement {
        &self.conjugator
    }

    /// `t* = −1/s`, where `c(t)` blows up.
    pub fn pole(&self) -> Option<Rational> {
        (!self.s.is_zero()).then(|| -self.s.recip())
    }

    pub fn reparam(&self, t: &Rational) -> Result<Rational> {
        reparam(&self.s, t)
    }

    pub fn path(&self, t: &Rational) -> Result<GroupElement> {
        let h = holonomy_matrix(self.sig, &self.s, t)?;
        self.conjugator.mul(&h)?.mul(&self.conjugator.inverse())
    }

    pub fn verify(&self, t: &Rational) -> Result<bool> {
        let lhs = tau(self.sig, &self.s).mul(&exp_nilpotent(&self.direction.scale(t))?)?;
        let c = self.reparam(t)?;
        let rhs = exp_nilpotent(&self.direction.scale(&c))?.mul(&self.path(t)?)?;
        Ok(lhs == rhs)
    }
}

pub fn conjugated_factorization(g: &GroupElement, s: &Rational) -> Result<HolonomyFactorization> {
    let sig = g.signature();
    if !g.commutes_with(&tau(sig, s)) {
        return Err(Error::Precondition("conjugator does not commute with the flow".into()));
    }
    let direction = adjoint(g, &u_basis(sig, sig.n()))?;
    Ok(HolonomyFactorization { sig, s: s.clone(), conjugator: g.clone(), direction })
}

/// Element of `S` carrying `U_n` to `U` (rescaled so `⟨U, U_1⟩ = 1`).
///
/// On `R^{p,q}` it fixes `u_1`, sends `u_n ↦ u` and `v ↦ v − ⟨v,u⟩ u_1` on
/// `span{u_2, …, u_{n−1}}`; it acts trivially on `e_0` and `e_{n+1}`.
pub fn construct_s_element(u_elem: &AlgElement) -> Result<GroupElement> {
    let sig = u_elem.signature();
    if sig.p() == 0 {
        return Err(Error::Precondition("needs p >= 1".into()));
    }
    if !lie_algebra::u_minus(sig).contains(u_elem) {
        return Err(Error::NotContained("U must lie in u⁻".into()));
    }
    let form = sig.model_form();
    let n = sig.n();
    let raw = iminus_inv(u_elem);
    if linalg::is_zero_vec(&raw) || !form.is_null(&raw)? {
        return Err(Error::NotNull(linalg::fmt_vec(&raw)));
    }
    let u1 = linalg::unit_vec(n, 0);
    let pairing = form.inner(&raw, &u1)?;
    if !pairing.is_positive() {
        return Err(Error::Precondition(format!("<U, U_1> = {pairing} is not positive")));
    }
    let u = linalg::scale_vec(&pairing.recip(), &raw);
    let mut a = QMatrix::zeros(n, n);
    let mut set_col = |j: usize, v: &[Rational]| {
        for i in 0..n {
            a[(i, j)] = v[i].clone();
        }
    };
    set_col(0, &u1);
    set_col(n - 1, &u);
    for j in 1..n - 1 {
        let ej = linalg::unit_vec(n, j);
        let k = form.inner(&ej, &u)?;
        set_col(j, &linalg::sub_vec(&ej, &linalg::scale_vec(&k, &u1)));
    }
    lie_algebra::reductive_group(sig, &Rational::one(), &a)
        .map_err(|e| Error::Internal(format!("S element: {e}")))
}

/// Whether the translation `U` is in the admissible set `⟨U, U_1⟩ > 0`.
pub fn in_s_domain(u_elem: &AlgElement) -> Result<bool> {
    let sig = u_elem.signature();
    let v = iminus_inv(u_elem);
    Ok(sig.model_form().inner(&v, &linalg::unit_vec(sig.n(), 0))?.is_positive())
}

/// Random null `U ∈ u⁻` with `⟨U, U_1⟩ > 0`.
pub fn random_admissible_u(sig: Signature, rng: &mut SplitMix64) -> AlgElement {
    let form = sig.model_form();
    let u1 = linalg::unit_vec(sig.n(), 0);
    loop {
        let v = form.random_null(rng);
        let k = form.inner(&v, &u1).expect("length n");
        if k.is_zero() {
            continue;
        }
        let v = if k.is_positive() { v } else { linalg::scale_vec(&-Rational::one(), &v) };
        return iminus(sig, &v).expect("length n");
    }
}

/// Matrix of `Ad h` on `g/p` in the given frame; `p` is the stabilizer of
/// `[e_0]`, so the quotient is read off through the `u⁻` component.
pub fn adjoint_on_quotient(h: &GroupElement, frame: &[AlgElement]) -> Result<QMatrix> {
    let sig = h.signature();
    let n = sig.n();
    if frame.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: frame.len() });
    }
    let cols: Vec<Vector> = frame.iter().map(|f| iminus_inv(&grade(f).minus)).collect();
    let fm = QMatrix::from_columns(&cols);
    let finv = fm.inverse().map_err(|_| Error::Precondition("frame is not transverse to p".into()))?;
    let images: Vec<Vector> = frame
        .iter()
        .map(|f| Ok(iminus_inv(&grade(&adjoint(h, f)?).minus)))
        .collect::<Result<_>>()?;
    Ok(&finv * &QMatrix::from_columns(&images))
}

/// `σ(1) = 0`, `σ(i) = 1` for `2 ≤ i ≤ n−1`, `σ(n) = 2`.
pub fn sigma(n: usize, i: usize) -> usize {
    if i == 1 {
        0
    } else if i == n {
        2
    } else {
        1
    }
}

/// `(1/(1+st))^{σ(i)}`.
pub fn framing_scale(n: usize, i: usize, s: &Rational, t: &Rational) -> Result<Rational> {
    if !(1..=n).contains(&i) {
        return Err(Error::Precondition(format!("frame index {i} outside 1..={n}")));
    }
    let k = pole_check(s, t)?.recip();
    Ok(num_traits::pow(k, sigma(n, i)))
}

#[derive(Debug, Clone)]
pub struct Segment {
    pub direction: AlgElement,
    pub from: Rational,
    pub to: Rational,
    pub base: Option<GroupElement>,
}

#[derive(Debug, Clone)]
pub struct PiecewiseCurve {
    pub sig: Signature,
    pub segments: Vec<Segment>,
}

#[derive(Debug, Clone)]
pub enum Development {
    Exact(GroupElement),
    Float(DMatrix<f64>),
}

impl Development {
    pub fn to_f64(&self) -> DMatrix<f64> {
        match self {
            Development::Exact(g) => g.matrix().to_f64(),
            Development::Float(m) => m.clone(),
        }
    }

    pub fn exact(&self) -> Option<&GroupElement> {
        match self {
            Development::Exact(g) => Some(g),
            Development::Float(_) => None,
        }
    }
}

/// Relative step tolerance for the float fallback.
pub const STEP_TOLERANCE: f64 = 1e-10;

/// Endpoint of the development of a piecewise-geodesic curve.
///
/// Each segment has constant Maurer–Cartan velocity, so the development is
/// the ordered product of `e^{(to − from) X_k}`; nilpotent segments are
/// exact, others are integrated in floating point.
pub fn develop(curve: &PiecewiseCurve) -> Result<Development> {
    let sig = curve.sig;
    for (k, seg) in curve.segments.iter().enumerate() {
        sig.check_same(&seg.direction.signature())?;
        if k > 0 {
            let prev = &curve.segments[k - 1];
            if prev.to != seg.from {
                return Err(Error::Precondition(format!("segment {k} starts at {} but the previous ends at {}", seg.from, prev.to)));
            }
            if let (Some(b0), Some(b1)) = (&prev.base, &seg.base) {
                if let Ok(step) = exp_nilpotent(&prev.direction.scale(&(&prev.to - &prev.from))) {
                    if b0.mul(&step)? != *b1 {
                        return Err(Error::Precondition(format!("segment {k} base does not continue the curve")));
                    }
                }
            }
        }
    }
    let mut exact = GroupElement::identity(sig);
    let mut float: Option<DMatrix<f64>> = None;
    for seg in &curve.segments {
        let len = &seg.to - &seg.from;
        let x = seg.direction.scale(&len);
        match (&mut float, exp_nilpotent(&x)) {
            (None, Ok(g)) => exact = exact.mul(&g)?,
            (slot, res) => {
                let cur = slot.take().unwrap_or_else(|| exact.matrix().to_f64());
                let step = match res {
                    Ok(g) => g.matrix().to_f64(),
                    Err(_) => {
                        let a = seg.direction.matrix().to_f64();
                        integrate_right(&DMatrix::identity(sig.dim(), sig.dim()), |_| a.clone(), 0.0, rational::to_f64(&len), STEP_TOLERANCE)
                    }
                };
                *slot = Some(cur * step);
            }
        }
    }
    Ok(match float {
        None => Development::Exact(exact),
        Some(m) => Development::Float(m),
    })
}

fn rk4_step(d: &DMatrix<f64>, a: &impl Fn(f64) -> DMatrix<f64>, t: f64, h: f64) -> DMatrix<f64> {
    let k1 = d * a(t);
    let k2 = (d + &k1 * (h / 2.0)) * a(t + h / 2.0);
    let k3 = (d + &k2 * (h / 2.0)) * a(t + h / 2.0);
    let k4 = (d + &k3 * h) * a(t + h);
    d + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
}

/// Solves `D′ = D · A(t)` from `t0` to `t1` with fourth-order steps and
/// step-doubling error control.
pub fn integrate_right(
    d0: &DMatrix<f64>,
    a: impl Fn(f64) -> DMatrix<f64>,
    t0: f64,
    t1: f64,
    tol: f64,
) -> DMatrix<f64> {
    let mut d = d0.clone();
    let span = t1 - t0;
    if span == 0.0 {
        return d;
    }
    let dir = span.signum();
    let mut t = t0;
    let mut h = span / 16.0;
    let min_h = span.abs() * 1e-14;
    while (t1 - t) * dir > 0.0 {
        if (t + h - t1) * dir > 0.0 {
            h = t1 - t;
        }
        let full = rk4_step(&d, &a, t, h);
        let half = rk4_step(&d, &a, t, h / 2.0);
        let two = rk4_step(&half, &a, t + h / 2.0, h / 2.0);
        let scale = two.amax().max(1.0);
        let err = (&two - &full).amax() / scale;
        if err <= tol || h.abs() <= min_h {
            t += h;
            // local extrapolation from the two estimates
            d = &two + (&two - &full) / 15.0;
            let grow = if err == 0.0 { 2.0 } else { (0.9 * (tol / err).powf(0.2)).clamp(0.2, 2.0) };
            h *= grow;
        } else {
            h *= (0.9 * (tol / err).powf(0.2)).clamp(0.1, 0.9);
        }
    }
    d
}

/// Two-edge curve from `e` with `U_1`-leg then a null leg, ending at
/// `e^{rY}` for `Y = a U_1 + X + c U_n`.
///
/// With `κ = ⟨X, X⟩ / (2c)` the first leg runs along `(κ + a) U_1` and the
/// second along `c U_n + X − κ U_1`, which is null. Each leg is traversed at
/// double speed over half of `[0, r]`.
pub fn triangle_curve(a: &Rational, x: &AlgElement, c: &Rational, r: &Rational) -> Result<(PiecewiseCurve, AlgElement)> {
    let sig = x.signature();
    let n = sig.n();
    if c.is_zero() {
        return Err(Error::Precondition("c must be nonzero".into()));
    }
    let xv = iminus_inv(x);
    if !lie_algebra::u_minus(sig).contains(x) || !xv[0].is_zero() || !xv[n - 1].is_zero() {
        return Err(Error::Precondition("X must lie in span{U_2, …, U_{n−1}}".into()));
    }
    let two = rational::int(2);
    let kappa = sig.model_form().eval(&xv)? / (&two * c);
    let u1 = u_basis(sig, 1);
    let un = u_basis(sig, n);
    let leg1 = u1.scale(&(&two * (&kappa + a)));
    let leg2 = (&(&un.scale(c) + x) - &u1.scale(&kappa)).scale(&two);
    let half = r / &two;
    let y = &(&u1.scale(a) + x) + &un.scale(c);
    let segments = vec![
        Segment { direction: leg1, from: Rational::zero(), to: half.clone(), base: None },
        Segment { direction: leg2, from: half, to: r.clone(), base: None },
    ];
    Ok((PiecewiseCurve { sig, segments }, y))
}

/// Closed loop `X, Y, −X, −Y` of unit-time legs.
pub fn rectangle_curve(x: &AlgElement, y: &AlgElement) -> PiecewiseCurve {
    let sig = x.signature();
    let dirs = [x.clone(), y.clone(), -x, -y];
    let segments = dirs
        .into_iter()
        .enumerate()
        .map(|(k, d)| Segment { direction: d, from: rational::int(k as i64), to: rational::int(k as i64 + 1), base: None })
        .collect();
    PiecewiseCurve { sig, segments }
}

#[derive(Debug, Clone, Serialize)]
pub struct CompletenessReport {
    pub checked: usize,
    pub pass: bool,
    pub failing_t: Option<String>,
    pub failure: Option<String>,
}

/// Certifies `e^{tX} = e^{c(t)Y} g(t)` and `g(t) ∈ P` at every sample.
pub fn completeness_factorization_check(
    x: &AlgElement,
    y: &AlgElement,
    c: impl Fn(&Rational) -> Result<Rational>,
    g: impl Fn(&Rational) -> Result<GroupElement>,
    samples: &[Rational],
) -> Result<CompletenessReport> {
    let mut checked = 0;
    for t in samples {
        checked += 1;
        let gt = g(t)?;
        let lhs = exp_nilpotent(&x.scale(t))?;
        let rhs = exp_nilpotent(&y.scale(&c(t)?))?.mul(&gt)?;
        let failure = if lhs != rhs {
            Some("factorization mismatch")
        } else if !gt.in_parabolic() {
            Some("g(t) does not fix [e_0]")
        } else {
            None
        };
        if let Some(f) = failure {
            return Ok(CompletenessReport { checked, pass: false, failing_t: Some(rational::format(t)), failure: Some(f.into()) });
        }
    }
    Ok(CompletenessReport { checked, pass: true, failing_t: None, failure: None })
}

/// `L = U_1 + Z` with `Z x = ⟨x, u_1⟩ w − ⟨x, w⟩ u_1` on `R^{p,q}`; its orbit
/// through `[e_0]` is `Λ`, and `e^{−tU_1} e^{tL}` lies in `P`.
pub fn parabolic_generator(sig: Signature, w: &[Rational]) -> Result<AlgElement> {
    let n = sig.n();
    if w.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: w.len() });
    }
    if !w[0].is_zero() || !w[n - 1].is_zero() {
        return Err(Error::Precondition("w must lie in span{u_2, …, u_{n−1}}".into()));
    }
    let form = sig.model_form();
    let u1 = linalg::unit_vec(n, 0);
    let cols: Vec<Vector> = (0..n)
        .map(|j| {
            let ej = linalg::unit_vec(n, j);
            let a = form.inner(&ej, &u1)?;
            let b = form.inner(&ej, w)?;
            Ok(linalg::sub_vec(&linalg::scale_vec(&a, w), &linalg::scale_vec(&b, &u1)))
        })
        .collect::<Result<_>>()?;
    let z = lie_algebra::reductive(sig, &Rational::zero(), &QMatrix::from_columns(&cols))?;
    Ok(&u_basis(sig, 1) + &z)
}
