//! `Ein^{p,q}` as the projectivized null cone: the group action, the
//! Minkowski chart, lightcones, null geodesics and the flow `τ^s = e^{sT}`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie_algebra::{tau, GroupElement};
use crate::linalg::{self, QMatrix};
use crate::quadratic_forms::{Cover, ProjectivePoint, Signature, Vector};
use crate::rational::{self, Rational};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EinPoint {
    sig: Signature,
    point: ProjectivePoint,
}

impl EinPoint {
    pub fn new(sig: Signature, x: Vector, cover: Cover) -> Result<Self> {
        if x.len() != sig.dim() {
            return Err(Error::DimensionMismatch { expected: sig.dim(), found: x.len() });
        }
        if !sig.ambient_form().is_null(&x)? {
            return Err(Error::NotNull(linalg::fmt_vec(&x)));
        }
        Ok(Self { sig, point: ProjectivePoint::new(x, cover)? })
    }

    pub fn projective(sig: Signature, x: Vector) -> Result<Self> {
        Self::new(sig, x, Cover::Projective)
    }

    /// `[e_i]`.
    pub fn basis(sig: Signature, i: usize) -> Result<Self> {
        Self::projective(sig, linalg::unit_vec(sig.dim(), i))
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn point(&self) -> &ProjectivePoint {
        &self.point
    }

    pub fn rep(&self) -> &[Rational] {
        self.point.rep()
    }

    pub fn cover(&self) -> Cover {
        self.point.cover()
    }

    pub fn random(sig: Signature, rng: &mut SplitMix64) -> Self {
        let x = sig.ambient_form().random_null(rng);
        Self::projective(sig, x).expect("sampler returns null vectors")
    }
}

impl std::fmt::Display for EinPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.point.fmt(f)
    }
}

pub fn act(g: &GroupElement, x: &EinPoint) -> Result<EinPoint> {
    g.signature().check_same(&x.sig)?;
    let y = g.apply(x.rep())?;
    EinPoint::new(x.sig, y, x.cover()).map_err(|e| Error::Internal(format!("action left the null cone: {e}")))
}

/// `v ↦ [−½Q(v) : v : 1]`.
pub fn stereo_inverse_vec(sig: Signature, v: &[Rational]) -> Result<Vector> {
    if v.len() != sig.n() {
        return Err(Error::DimensionMismatch { expected: sig.n(), found: v.len() });
    }
    let q = sig.model_form().eval(v)?;
    let mut x = Vec::with_capacity(sig.dim());
    x.push(-q / rational::int(2));
    x.extend_from_slice(v);
    x.push(Rational::one());
    Ok(x)
}

pub fn stereo_inverse(sig: Signature, v: &[Rational]) -> Result<EinPoint> {
    EinPoint::projective(sig, stereo_inverse_vec(sig, v)?)
}

/// Chart coordinates: divide the middle block by the last coordinate.
pub fn stereo_forward(x: &EinPoint) -> Result<Vector> {
    let r = x.rep();
    let last = &r[x.sig.n() + 1];
    if last.is_zero() {
        return Err(Error::Domain(format!("{x} lies on the lightcone of [e_0]")));
    }
    Ok(r[1..=x.sig.n()].iter().map(|v| v / last).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LightconeSpec {
    pub vertex: EinPoint,
}

pub fn lightcone_contains(c: &LightconeSpec, y: &EinPoint) -> Result<bool> {
    c.vertex.sig.check_same(&y.sig)?;
    Ok(c.vertex.sig.ambient_form().inner(c.vertex.rep(), y.rep())?.is_zero())
}

/// Limit of the chart image of the null line `c + t u` as `t → ±∞`.
///
/// Since `u` is null, `φ(c + t u) = [−½Q(c) − t⟨c,u⟩ : c + t u : 1]`, whose
/// leading term in `t` is `[−⟨c,u⟩ : u : 0]`.
pub fn null_line_boundary(sig: Signature, c: &[Rational], u: &[Rational]) -> Result<EinPoint> {
    let form = sig.model_form();
    if !form.is_null(u)? {
        return Err(Error::NotNull(linalg::fmt_vec(&u)));
    }
    let mut x = Vec::with_capacity(sig.dim());
    x.push(-form.inner(c, u)?);
    x.extend_from_slice(u);
    x.push(Rational::zero());
    EinPoint::projective(sig, x)
}

/// `[y_0 + s y_n : y_1 − s y_{n+1} : y_2 : ⋯ : y_{n+1}]`.
pub fn tau_flow(s: &Rational, y: &EinPoint) -> Result<EinPoint> {
    let n = y.sig.n();
    let mut z = y.rep().to_vec();
    z[0] = &z[0] + s * &y.rep()[n];
    z[1] = &z[1] - s * &y.rep()[n + 1];
    EinPoint::new(y.sig, z, y.cover())
}

/// Fixed set `F = P(e_0^⊥ ∩ e_1^⊥ ∩ N)`.
pub fn in_fixed_set(y: &EinPoint) -> bool {
    let n = y.sig.n();
    y.rep()[n].is_zero() && y.rep()[n + 1].is_zero()
}

/// `[y_n : −y_{n+1} : 0 : ⋯ : 0]`.
pub fn tau_limit(y: &EinPoint) -> Result<EinPoint> {
    if in_fixed_set(y) {
        return Err(Error::Domain(format!("{y} is fixed by the flow")));
    }
    let n = y.sig.n();
    let mut z = vec![Rational::zero(); y.sig.dim()];
    z[0] = y.rep()[n].clone();
    z[1] = -y.rep()[n + 1].clone();
    EinPoint::projective(y.sig, z)
}

/// The unique `λ ∈ Λ = P(span{e_0, e_1})` with `y ∈ C(λ)`, found by solving
/// `⟨α e_0 + β e_1, y⟩ = 0`.
pub fn attractor_vertex(y: &EinPoint) -> Result<EinPoint> {
    if in_fixed_set(y) {
        return Err(Error::Domain(format!("{y} lies in F; every point of the circle is a vertex")));
    }
    let sig = y.sig;
    let form = sig.ambient_form();
    let d = sig.dim();
    let row = vec![form.inner(&linalg::unit_vec(d, 0), y.rep())?, form.inner(&linalg::unit_vec(d, 1), y.rep())?];
    let ns = QMatrix::from_rows(vec![row])?.nullspace();
    if ns.len() != 1 {
        return Err(Error::Internal("vertex not unique".into()));
    }
    let mut z = vec![Rational::zero(); d];
    z[0] = ns[0][0].clone();
    z[1] = ns[0][1].clone();
    EinPoint::projective(sig, z)
}

/// Float image of `y` under `τ^s`, normalized by the signed largest entry.
pub fn tau_flow_float(s: f64, y: &EinPoint) -> Result<Vec<f64>> {
    let n = y.sig.n();
    let mut z: Vec<f64> = y.point.to_f64();
    let norm = z.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if z[n].abs().max(z[n + 1].abs()) < 1e-9 * norm {
        return Err(Error::Domain("point numerically inside F".into()));
    }
    z[0] += s * z[n];
    z[1] -= s * z[n + 1];
    Ok(normalize_f64(&z))
}

/// Max-abs distance between two max-normalized representatives, minimized
/// over the sign ambiguity of projective classes.
pub fn projective_distance_f64(a: &[f64], b: &[f64]) -> f64 {
    let a = normalize_f64(a);
    let b = normalize_f64(b);
    let d = |sign: f64| a.iter().zip(&b).fold(0.0f64, |m, (x, y)| m.max((x - sign * y).abs()));
    d(1.0).min(d(-1.0))
}

/// Divide by the signed entry of largest magnitude (lowest index on ties).
pub fn normalize_f64(z: &[f64]) -> Vec<f64> {
    let mut best = 0;
    for (i, v) in z.iter().enumerate() {
        if v.abs() > z[best].abs() {
            best = i;
        }
    }
    let piv = z[best];
    z.iter().map(|v| v / piv).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullGeodesic {
    sig: Signature,
    plane: [Vector; 2],
}

impl NullGeodesic {
    pub fn plane(&self) -> &[Vector; 2] {
        &self.plane
    }

    /// Affine chart `t ↦ [x̂ + t ŷ]`.
    pub fn at(&self, t: &Rational) -> Result<EinPoint> {
        let v = linalg::add_vec(&self.plane[0], &linalg::scale_vec(t, &self.plane[1]));
        EinPoint::projective(self.sig, v)
    }

    /// The point `[ŷ]` missed by the chart.
    pub fn point_at_infinity(&self) -> Result<EinPoint> {
        EinPoint::projective(self.sig, self.plane[1].clone())
    }

    pub fn contains(&self, z: &EinPoint) -> bool {
        let m = QMatrix::from_rows(vec![self.plane[0].clone(), self.plane[1].clone(), z.rep().to_vec()])
            .expect("equal lengths");
        m.rank() == 2
    }
}

pub fn geodesic_through(x: &EinPoint, y: &EinPoint) -> Result<NullGeodesic> {
    x.sig.check_same(&y.sig)?;
    if x.point == y.point
        || QMatrix::from_rows(vec![x.rep().to_vec(), y.rep().to_vec()]).expect("equal lengths").rank() < 2
    {
        return Err(Error::Precondition("points coincide".into()));
    }
    let ip = x.sig.ambient_form().inner(x.rep(), y.rep())?;
    if !ip.is_zero() {
        return Err(Error::Precondition(format!("points are not on a common null geodesic (inner = {ip})")));
    }
    Ok(NullGeodesic { sig: x.sig, plane: [x.rep().to_vec(), y.rep().to_vec()] })
}

/// `Λ = P(span{e_0, e_1})`.
pub fn lambda_circle(sig: Signature) -> Result<NullGeodesic> {
    geodesic_through(&EinPoint::basis(sig, 0)?, &EinPoint::basis(sig, 1)?)
}

/// Differential of the lift `v ↦ (−½Q(v), v, 1)` at `v` applied to `w`,
/// computed as a central difference (exact: the lift is quadratic).
pub fn lift_differential(sig: Signature, v: &[Rational], w: &[Rational]) -> Result<Vector> {
    let plus = stereo_inverse_vec(sig, &linalg::add_vec(v, w))?;
    let minus = stereo_inverse_vec(sig, &linalg::sub_vec(v, w))?;
    Ok(linalg::sub_vec(&plus, &minus).iter().map(|x| x / rational::int(2)).collect())
}

/// Pullback of the ambient form through the lift: `⟨dΦ w1, dΦ w2⟩`.
pub fn pullback_gram(sig: Signature, v: &[Rational], w1: &[Rational], w2: &[Rational]) -> Result<Rational> {
    let a = lift_differential(sig, v, w1)?;
    let b = lift_differential(sig, v, w2)?;
    sig.ambient_form().inner(&a, &b)
}

/// Differential at `v` of the chart expression `v ↦ φ⁻¹(g · φ(v))` of a group
/// element, by the quotient rule on the lift.
pub fn mobius_differential(g: &GroupElement, v: &[Rational], w: &[Rational]) -> Result<Vector> {
    let sig = g.signature();
    let n = sig.n();
    let x = g.apply(&stereo_inverse_vec(sig, v)?)?;
    let dx = g.apply(&lift_differential(sig, v, w)?)?;
    let last = &x[n + 1];
    if last.is_zero() {
        return Err(Error::Domain("image leaves the chart".into()));
    }
    let dl = &dx[n + 1];
    Ok((1..=n).map(|i| (&dx[i] * last - &x[i] * dl) / (last * last)).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct ConformalityReport {
    pub ratio: Option<String>,
    pub checked: usize,
    pub pass: bool,
}

/// Checks `⟨dF w_i, dF w_j⟩ = λ ⟨w_i, w_j⟩` with a single `λ` over all pairs.
pub fn conformal_ratio(
    sig: Signature,
    diff: impl Fn(&[Rational]) -> Result<Vector>,
    tangents: &[Vector],
) -> Result<ConformalityReport> {
    let form = sig.model_form();
    let images: Vec<Vector> = tangents.iter().map(|w| diff(w)).collect::<Result<_>>()?;
    let mut ratio: Option<Rational> = None;
    let mut checked = 0;
    let mut pass = true;
    for i in 0..tangents.len() {
        for j in i..tangents.len() {
            let base = form.inner(&tangents[i], &tangents[j])?;
            let img = form.inner(&images[i], &images[j])?;
            checked += 1;
            if base.is_zero() {
                pass &= img.is_zero();
                continue;
            }
            let r = img / base;
            match &ratio {
                None => ratio = Some(r),
                Some(r0) => pass &= *r0 == r,
            }
        }
    }
    Ok(ConformalityReport { ratio: ratio.map(|r| rational::format(&r)), checked, pass })
}

/// Whether two null lines `c + t u`, `b + t v` satisfy `u ∥ v` and `⟨b − c, u⟩ = 0`.
pub fn same_boundary_predicate(sig: Signature, c: &[Rational], u: &[Rational], b: &[Rational], v: &[Rational]) -> Result<bool> {
    let parallel = QMatrix::from_rows(vec![u.to_vec(), v.to_vec()])?.rank() == 1;
    Ok(parallel && sig.model_form().inner(&linalg::sub_vec(b, c), u)?.is_zero())
}

/// Dimension of the tangent space of `F` at `y ∈ F ∖ Λ`: vectors with
/// `w_n = w_{n+1} = 0` and `⟨y, w⟩ = 0`, modulo `R y`.
pub fn fixed_set_tangent_dim(y: &EinPoint) -> Result<usize> {
    if !in_fixed_set(y) {
        return Err(Error::Domain(format!("{y} is not in F")));
    }
    let sig = y.sig;
    let d = sig.dim();
    let n = sig.n();
    let rows = vec![linalg::unit_vec(d, n), linalg::unit_vec(d, n + 1), sig.ambient_form().lower(y.rep())?];
    let m = QMatrix::from_rows(rows)?;
    Ok(m.nullspace().len() - 1)
}

/// Random null point outside `F`.
pub fn random_outside_fixed_set(sig: Signature, rng: &mut SplitMix64) -> EinPoint {
    loop {
        let y = EinPoint::random(sig, rng);
        if !in_fixed_set(&y) {
            return y;
        }
    }
}

/// Random point of `F ∖ Λ`: middle coordinates null under the inner form.
pub fn random_fixed_point(sig: Signature, rng: &mut SplitMix64) -> Result<EinPoint> {
    let inner = sig.inner_form()?;
    let d = sig.dim();
    loop {
        // middle block lives on indices 2..=n−1 with the inner form
        let mid = if inner.pairs() > 0 { inner.random_null(rng) } else { vec![Rational::zero(); inner.dim()] };
        if mid.iter().all(Zero::is_zero) {
            if inner.pairs() == 0 {
                return Err(Error::Precondition("F equals the circle when the inner form is definite".into()));
            }
            continue;
        }
        let mut x = vec![Rational::zero(); d];
        x[0] = rng.small_rat(3, 2);
        x[1] = rng.small_rat(3, 2);
        for (i, v) in mid.into_iter().enumerate() {
            x[2 + i] = v;
        }
        return EinPoint::projective(sig, x);
    }
}

/// Group element `e^{sT}` used by the flow.
pub fn tau_element(sig: Signature, s: &Rational) -> GroupElement {
    tau(sig, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_algebra::random_group_element;
    use crate::rational::{int, rat};

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn pt(s: Signature, v: &[i64]) -> EinPoint {
        EinPoint::projective(s, v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    const SIGS: [(usize, usize); 4] = [(1, 2), (1, 3), (2, 2), (2, 3)];

    #[test]
    fn action_examples() {
        let s = sig(1, 2);
        let y = pt(s, &[0, 0, 0, 1, 0]);
        assert_eq!(act(&GroupElement::identity(s), &y).unwrap(), y);
        assert_eq!(act(&tau(s, &int(1)), &y).unwrap(), pt(s, &[1, 0, 0, 1, 0]));
        let mut r = SplitMix64::new(4);
        let g = random_group_element(s, &mut r);
        let x = EinPoint::random(s, &mut r);
        assert_eq!(act(&g, &act(&g.inverse(), &x).unwrap()).unwrap(), x);
        assert!(EinPoint::projective(s, vec![int(0), int(0), int(1), int(0), int(0)]).is_err());
    }

    #[test]
    fn chart_examples() {
        for (p, q) in SIGS {
            let s = sig(p, q);
            let d = s.dim();
            let origin = stereo_inverse(s, &vec![int(0); s.n()]).unwrap();
            assert_eq!(origin, EinPoint::basis(s, d - 1).unwrap());
            assert_eq!(stereo_forward(&origin).unwrap(), vec![int(0); s.n()]);
            let e0 = EinPoint::basis(s, 0).unwrap();
            assert!(matches!(stereo_forward(&e0), Err(Error::Domain(_))));
            let mut r = SplitMix64::new(21);
            let cone = LightconeSpec { vertex: e0 };
            for _ in 0..100 {
                let v = r.rat_vec(s.n(), 7, 4);
                let x = stereo_inverse(s, &v).unwrap();
                assert!(s.ambient_form().is_null(&stereo_inverse_vec(s, &v).unwrap()).unwrap());
                assert_eq!(stereo_forward(&x).unwrap(), v);
                assert!(!lightcone_contains(&cone, &x).unwrap());
            }
        }
    }

    #[test]
    fn lightcones() {
        let s = sig(1, 2);
        let e0 = EinPoint::basis(s, 0).unwrap();
        let c = LightconeSpec { vertex: e0.clone() };
        assert!(lightcone_contains(&c, &e0).unwrap());
        assert!(!lightcone_contains(&c, &EinPoint::basis(s, 4).unwrap()).unwrap());
        assert!(lightcone_contains(&c, &EinPoint::basis(s, 1).unwrap()).unwrap());
    }

    #[test]
    fn flow_examples() {
        let s = sig(1, 2);
        let y = pt(s, &[0, 0, 0, 1, 0]);
        let sv = rat(3, 7);
        let fy = tau_flow(&sv, &y).unwrap();
        let expect = EinPoint::projective(s, vec![sv.clone(), int(0), int(0), int(1), int(0)]).unwrap();
        assert_eq!(fy, expect);
        assert_eq!(tau_limit(&y).unwrap(), EinPoint::basis(s, 0).unwrap());
        let z = pt(s, &[0, 0, 0, 0, 1]);
        assert_eq!(tau_limit(&z).unwrap(), EinPoint::basis(s, 1).unwrap());
        let f = pt(s, &[1, 0, 0, 0, 0]);
        assert!(in_fixed_set(&f));
        assert_eq!(tau_flow(&int(5), &f).unwrap(), f);
        assert!(tau_limit(&f).is_err());
        assert!(attractor_vertex(&f).is_err());
        let lam = lambda_circle(s).unwrap();
        for t in [int(0), rat(1, 2), int(-3)] {
            assert!(in_fixed_set(&lam.at(&t).unwrap()));
        }
    }

    #[test]
    fn flow_group_law_and_matrix_agree() {
        let mut r = SplitMix64::new(31);
        for (p, q) in SIGS {
            let s = sig(p, q);
            for _ in 0..20 {
                let y = EinPoint::random(s, &mut r);
                let a = r.small_rat(5, 3);
                let b = r.small_rat(5, 3);
                let ab = &a + &b;
                assert_eq!(tau_flow(&a, &tau_flow(&b, &y).unwrap()).unwrap(), tau_flow(&ab, &y).unwrap());
                assert_eq!(tau_flow(&a, &y).unwrap(), act(&tau(s, &a), &y).unwrap());
            }
        }
    }

    #[test]
    fn attractor_matches_limit() {
        let mut r = SplitMix64::new(41);
        for (p, q) in SIGS {
            let s = sig(p, q);
            for _ in 0..50 {
                let y = random_outside_fixed_set(s, &mut r);
                let v = attractor_vertex(&y).unwrap();
                assert_eq!(v, tau_limit(&y).unwrap());
                assert!(lightcone_contains(&LightconeSpec { vertex: v.clone() }, &y).unwrap());
                let fl = tau_flow_float(1e8, &y).unwrap();
                let err = projective_distance_f64(&fl, &v.point().to_f64());
                assert!(err < 1e-6, "{err}");
            }
            // generic points of the chart have both vertex coordinates nonzero
            let y = stereo_inverse(s, &r.rat_vec(s.n(), 5, 1).iter().map(|x| x + int(11)).collect::<Vec<_>>()).unwrap();
            let v = attractor_vertex(&y).unwrap();
            assert!(!v.rep()[0].is_zero() && !v.rep()[1].is_zero());
        }
    }

    #[test]
    fn geodesics() {
        let s = sig(2, 2);
        let e0 = EinPoint::basis(s, 0).unwrap();
        let e1 = EinPoint::basis(s, 1).unwrap();
        let lam = geodesic_through(&e0, &e1).unwrap();
        assert_eq!(lam, lambda_circle(s).unwrap());
        assert_eq!(lam.point_at_infinity().unwrap(), e1);
        assert!(geodesic_through(&e0, &EinPoint::basis(s, 5).unwrap()).is_err());
        assert!(geodesic_through(&e0, &e0).is_err());
        // the flow preserves every null geodesic from a vertex on Λ
        let mut r = SplitMix64::new(2);
        for _ in 0..20 {
            let y = random_outside_fixed_set(s, &mut r);
            let v = attractor_vertex(&y).unwrap();
            let g = geodesic_through(&v, &y).unwrap();
            for t in [rat(1, 3), int(2), int(-1)] {
                let z = g.at(&t).unwrap();
                for sv in [int(1), rat(-7, 2)] {
                    assert!(g.contains(&tau_flow(&sv, &z).unwrap()));
                }
            }
        }
    }

    #[test]
    fn boundary_of_null_lines() {
        let s = sig(1, 2);
        let n = s.n();
        let u1 = linalg::unit_vec(n, 0);
        let b = null_line_boundary(s, &vec![int(0); n], &u1).unwrap();
        assert_eq!(b, EinPoint::basis(s, 1).unwrap());
        assert!(null_line_boundary(s, &vec![int(0); n], &linalg::unit_vec(n, 1)).is_err());
        // far points of the line approach the boundary point
        let c = vec![int(1), int(2), int(-1)];
        let bd = null_line_boundary(s, &c, &u1).unwrap();
        let far = stereo_inverse(s, &linalg::add_vec(&c, &linalg::scale_vec(&int(1_000_000), &u1))).unwrap();
        let a = normalize_f64(&far.point().to_f64());
        let l = bd.point().to_f64();
        assert!(a.iter().zip(&l).all(|(x, y)| (x - y).abs() < 1e-5));
    }

    #[test]
    fn fixed_set_has_codimension_two() {
        let mut r = SplitMix64::new(6);
        assert!(random_fixed_point(sig(1, 3), &mut r).is_err());
        for (p, q) in [(2, 2), (2, 3)] {
            let s = sig(p, q);
            for _ in 0..10 {
                let y = random_fixed_point(s, &mut r).unwrap();
                assert!(in_fixed_set(&y));
                assert_eq!(fixed_set_tangent_dim(&y).unwrap(), s.n() - 2);
            }
        }
    }

    #[test]
    fn conformality() {
        let mut r = SplitMix64::new(12);
        for (p, q) in SIGS {
            let s = sig(p, q);
            let form = s.model_form();
            for _ in 0..5 {
                let v = r.rat_vec(s.n(), 3, 2);
                let ws: Vec<Vector> = (0..4).map(|_| r.rat_vec(s.n(), 3, 2)).collect();
                for w1 in &ws {
                    for w2 in &ws {
                        assert_eq!(pullback_gram(s, &v, w1, w2).unwrap(), form.inner(w1, w2).unwrap());
                    }
                }
                let g = random_group_element(s, &mut r);
                if let Ok(rep) = conformal_ratio(s, |w| mobius_differential(&g, &v, w), &ws) {
                    assert!(rep.pass, "{rep:?}");
                }
            }
        }
    }
}
