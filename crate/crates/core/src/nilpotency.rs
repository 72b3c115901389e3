//! Lower central series, orders of nilpotence on modules, and the degree
//! bound for nilpotent subalgebras of `o(p+1,q+1)`.

use std::time::{Duration, Instant};

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie_algebra::{
    self, exp_nilpotent, grade, iminus, iplus, iplus_inv, n_max, AlgElement, GroupElement,
    Subalgebra,
};
use crate::linalg::{self, QMatrix, Subspace};
use crate::quadratic_forms::{Signature, Vector};
use crate::rational::Rational;
use crate::rng::SplitMix64;

#[derive(Debug, Clone)]
pub struct LowerCentralSeries {
    /// `h_0 = h, h_1 = [h, h_0], ...`, ending at zero or at the first repeat.
    pub terms: Vec<Subalgebra>,
    /// Minimal `k` with `h_k = 0`; `None` when the series stabilizes above zero.
    pub degree: Option<usize>,
}

impl LowerCentralSeries {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subalgebra::dim).collect()
    }
}

pub fn lower_central_series(h: &Subalgebra) -> Result<LowerCentralSeries> {
    h.require_closed()?;
    let mut terms = vec![h.clone()];
    loop {
        let last = terms.last().expect("nonempty");
        if last.dim() == 0 {
            let degree = Some(terms.len() - 1);
            return Ok(LowerCentralSeries { terms, degree });
        }
        let next = h.bracket_span(last)?;
        if next.dim() == last.dim() {
            return Ok(LowerCentralSeries { terms, degree: None });
        }
        terms.push(next);
    }
}

pub fn nilpotence_degree(h: &Subalgebra) -> Result<usize> {
    let s = lower_central_series(h)?;
    s.degree.ok_or_else(|| Error::Precondition(format!("{}-dimensional subalgebra is not nilpotent", h.dim())))
}

/// A module for a set of linear operators: all of `Q^d`, a subspace, or a
/// quotient `space / sub` of invariant subspaces.
#[derive(Debug, Clone)]
pub enum Module {
    Full(usize),
    Span(Subspace),
    Quotient { space: Subspace, sub: Subspace },
}

impl Module {
    pub fn ambient(&self) -> usize {
        match self {
            Module::Full(d) => *d,
            Module::Span(s) => s.ambient(),
            Module::Quotient { space, .. } => space.ambient(),
        }
    }

    /// Ambient space `R^{p+1,q+1}`.
    pub fn ambient_of(sig: Signature) -> Self {
        Module::Full(sig.dim())
    }

    /// Model space `R^{p,q}`.
    pub fn model_of(sig: Signature) -> Self {
        Module::Full(sig.n())
    }
}

#[derive(Debug, Clone)]
pub struct OrderReport {
    pub module_dim: usize,
    /// Minimal `k` with `l^k(V) = 0`; `None` when the images stabilize above zero.
    pub order: Option<usize>,
    /// `l^0(V) = V, l^1(V), ...` as subspaces containing the quotient kernel.
    pub product_subspaces: Vec<Subspace>,
}

fn image_span(ops: &[QMatrix], v: &Subspace, sub: &Subspace) -> Subspace {
    let mut vecs: Vec<Vec<Rational>> = sub.basis().to_vec();
    for op in ops {
        for b in v.basis() {
            let w = op.mul_vec(b).expect("dimension checked");
            if !linalg::is_zero_vec(&w) {
                vecs.push(w);
            }
        }
    }
    Subspace::from_vectors(v.ambient(), vecs)
}

pub fn order_of_operators(ops: &[QMatrix], module: &Module) -> Result<OrderReport> {
    let d = module.ambient();
    for op in ops {
        if op.rows() != d || op.cols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: op.rows() });
        }
    }
    let (space, sub) = match module {
        Module::Full(d) => (Subspace::full(*d), Subspace::zero(*d)),
        Module::Span(s) => (s.clone(), Subspace::zero(d)),
        Module::Quotient { space, sub } => {
            if !space.contains_space(sub) {
                return Err(Error::NotContained("quotient kernel not inside the module".into()));
            }
            (space.clone(), sub.clone())
        }
    };
    let module_dim = space.dim() - sub.dim();
    let mut terms = vec![space];
    loop {
        let last = terms.last().expect("nonempty");
        if last.dim() == sub.dim() {
            return Ok(OrderReport { module_dim, order: Some(terms.len() - 1), product_subspaces: terms });
        }
        let next = image_span(ops, last, &sub);
        if next.dim() == last.dim() {
            return Ok(OrderReport { module_dim, order: None, product_subspaces: terms });
        }
        terms.push(next);
    }
}

pub fn order_of_nilpotents(l: &Subalgebra, module: &Module) -> Result<OrderReport> {
    let ops: Vec<QMatrix> = l.basis().iter().map(|b| b.matrix().clone()).collect();
    order_of_operators(&ops, module)
}

/// `o(ad h)` on `h` itself, which equals the nilpotence degree.
pub fn ad_order(h: &Subalgebra) -> Result<Option<usize>> {
    let ops: Vec<QMatrix> = h.basis().iter().map(|b| h.ad_matrix(b)).collect::<Result<_>>()?;
    Ok(order_of_operators(&ops, &Module::Full(h.dim()))?.order)
}

/// Intrinsic test: `X ≠ 0`, `X² = 0`, `rank X = 2`.
pub fn is_null_translation(x: &AlgElement) -> bool {
    let m = x.matrix();
    !m.is_zero() && (m * m).is_zero() && m.rank() == 2
}

/// Conjugation-free cross-check of [`is_null_translation`].
///
/// Looks for a null line `ℓ ⊆ im X` such that `X` kills `ℓ`, maps `ℓ^⊥` into
/// `ℓ` and everything into `ℓ^⊥` (so `X` lies in the nilradical of the
/// stabilizer of `ℓ`, a conjugate of `u⁺`). Returns the value of the form on
/// the translation vector, read off as `Q(X f)` for `f` with `⟨f, ℓ⟩ ≠ 0`.
pub fn translation_vector_norm(x: &AlgElement) -> Option<Rational> {
    let sig = x.signature();
    let form = sig.ambient_form();
    let d = sig.dim();
    let m = x.matrix();
    if m.is_zero() {
        return None;
    }
    let image = Subspace::from_vectors(d, (0..d).map(|j| m.col(j)));
    let kernel = Subspace::from_vectors(d, m.nullspace());
    let candidates = image.intersection(&kernel);
    // a null vector in im X ∩ ker X; try basis vectors and pairwise sums
    let basis = candidates.basis();
    let mut tries: Vec<Vector> = basis.to_vec();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            tries.push(linalg::add_vec(&basis[i], &basis[j]));
            tries.push(linalg::sub_vec(&basis[i], &basis[j]));
        }
    }
    for l in tries {
        if !form.eval(&l).ok()?.is_zero() {
            continue;
        }
        let lperp_rows = QMatrix::from_rows(vec![form.lower(&l).ok()?]).ok()?;
        let lperp = Subspace::from_vectors(d, lperp_rows.nullspace());
        let line = Subspace::from_vectors(d, [l.clone()]);
        let maps_perp_to_line = lperp.basis().iter().all(|v| line.contains(&m.mul_vec(v).unwrap()));
        let image_in_perp = image.basis().iter().all(|v| lperp.contains(v));
        if !maps_perp_to_line || !image_in_perp {
            continue;
        }
        let f = (0..d).map(|i| linalg::unit_vec(d, i)).find(|e| !form.inner(e, &l).unwrap().is_zero())?;
        return form.eval(&m.mul_vec(&f).ok()?).ok();
    }
    None
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeBoundReport {
    pub degree: Option<usize>,
    pub bound: usize,
    pub within_bound: bool,
    /// Null-translation results on a basis of `h_{d−1}` when `d ≥ 2p`.
    pub last_term_null: Option<Vec<bool>>,
    pub pass: bool,
}

pub fn verify_degree_bound(h: &Subalgebra) -> Result<DegreeBoundReport> {
    let p = h.signature().p();
    let bound = 2 * p + 1;
    let series = lower_central_series(h)?;
    let Some(d) = series.degree else {
        return Ok(DegreeBoundReport { degree: None, bound, within_bound: false, last_term_null: None, pass: false });
    };
    let within_bound = d <= bound;
    let last_term_null = if d >= 2 * p && d >= 1 {
        Some(series.terms[d - 1].basis().iter().map(is_null_translation).collect::<Vec<_>>())
    } else {
        None
    };
    let pass = within_bound && last_term_null.as_ref().is_none_or(|v| v.iter().all(|b| *b));
    Ok(DegreeBoundReport { degree: Some(d), bound, within_bound, last_term_null, pass })
}

/// Matrix of `x ↦ i⁺⁻¹[Z, i⁺(x)]` on `R^{p,q}` for `Z` in `p`.
pub fn model_action(z: &AlgElement) -> Result<QMatrix> {
    let sig = z.signature();
    let n = sig.n();
    let cols: Vec<Vector> = (0..n)
        .map(|j| {
            let e = iplus(sig, &linalg::unit_vec(n, j))?;
            Ok(iplus_inv(&lie_algebra::bracket(z, &e)?))
        })
        .collect::<Result<_>>()?;
    Ok(QMatrix::from_columns(&cols))
}

#[derive(Debug, Clone, Serialize)]
pub struct ContainmentReport {
    pub degree: Option<usize>,
    pub holds: Vec<bool>,
    pub pass: bool,
}

/// Certifies `u_k ⊆ ū_k + i⁺(ū^k(R^{p,q}))` for every `k` along the series,
/// where `ū` is the reductive projection of `u ⊆ p`.
pub fn relation_containment(u: &Subalgebra) -> Result<ContainmentReport> {
    let sig = u.signature();
    let par = lie_algebra::parabolic_e0(sig);
    if !par.contains_sub(u) {
        return Err(Error::NotContained("subalgebra is not inside the parabolic".into()));
    }
    let series = lower_central_series(u)?;
    let ubar_elems: Vec<AlgElement> = u.basis().iter().map(|b| grade(b).zero).collect();
    let ubar = Subalgebra::new(sig, &ubar_elems)?;
    let ubar_series = lower_central_series(&ubar)?;
    let ops: Vec<QMatrix> = ubar.basis().iter().map(model_action).collect::<Result<_>>()?;
    let orders = order_of_operators(&ops, &Module::model_of(sig))?;
    let mut holds = Vec::with_capacity(series.terms.len());
    for (k, uk) in series.terms.iter().enumerate() {
        let ubar_k = ubar_series.terms.get(k).cloned().unwrap_or_else(|| Subalgebra::zero(sig));
        let vk = orders.product_subspaces.get(k).cloned().unwrap_or_else(|| Subspace::zero(sig.n()));
        let trans: Vec<AlgElement> = vk.basis().iter().map(|v| iplus(sig, v)).collect::<Result<_>>()?;
        let rhs = ubar_k.sum(&Subalgebra::new(sig, &trans)?)?;
        holds.push(rhs.contains_sub(uk));
    }
    let pass = holds.iter().all(|b| *b);
    Ok(ContainmentReport { degree: series.degree, holds, pass })
}

#[derive(Debug, Clone, Serialize)]
pub struct BracketPropertyReport {
    pub k: usize,
    pub checked: usize,
    pub pass: bool,
}

/// For every `Y` in `l_{k−1}` and `v ∈ V`, certifies `Y(v) ∈ l^k(V)`.
pub fn ad_brackets_property(l: &Subalgebra, module: &Module, k: usize) -> Result<BracketPropertyReport> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let series = lower_central_series(l)?;
    let order = order_of_nilpotents(l, module)?;
    let sig = l.signature();
    let zero_sub = Subspace::zero(module.ambient());
    let target = order.product_subspaces.get(k).cloned().unwrap_or_else(|| match module {
        Module::Quotient { sub, .. } => sub.clone(),
        _ => zero_sub.clone(),
    });
    let ys = series.terms.get(k - 1).cloned().unwrap_or_else(|| Subalgebra::zero(sig));
    let vs = order.product_subspaces[0].clone();
    let mut checked = 0;
    let mut pass = true;
    for y in ys.basis() {
        for v in vs.basis() {
            checked += 1;
            if !target.contains(&y.apply(v)?) {
                pass = false;
            }
        }
    }
    Ok(BracketPropertyReport { k, checked, pass })
}

#[derive(Debug, Clone, Serialize)]
pub struct RepOrderReport {
    pub order: usize,
    pub bound: usize,
    pub pass: bool,
}

/// Order of a set of nilpotent operators on `R^{p,q}` against `2p+1`.
pub fn rep_order_bound(sig: Signature, ops: &[QMatrix]) -> Result<RepOrderReport> {
    for op in ops {
        if lie_algebra::exp_nilpotent_matrix(op).is_err() {
            return Err(Error::NotNilpotent(op.rows()));
        }
    }
    let rep = order_of_operators(ops, &Module::model_of(sig))?;
    let bound = 2 * sig.p() + 1;
    let order = rep.order.ok_or_else(|| Error::Precondition("operators are not jointly nilpotent".into()))?;
    Ok(RepOrderReport { order, bound, pass: order <= bound })
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessTrace {
    pub target: usize,
    pub constructive_degree: usize,
    pub constructive_dim: usize,
    pub random_attempts: usize,
    pub random_best: usize,
    /// The random phase hit the constructive degree, which bounds every
    /// sample, so the remaining budget was not spent.
    pub ceiling_reached: bool,
    pub elapsed_ms: u128,
}

/// A nilpotent subalgebra of degree exactly `2p+1`.
///
/// The constructive candidate is the strictly upper-triangular part of the
/// algebra (the nilradical of a minimal parabolic, which contains every
/// unipotent subalgebra up to conjugacy). If its degree falls short, random
/// subalgebras of it are sampled until `budget` runs out; the returned trace
/// records what was found.
pub fn witness_search(
    sig: Signature,
    budget: Duration,
    rng: &mut SplitMix64,
) -> std::result::Result<Subalgebra, WitnessTrace> {
    let start = Instant::now();
    let target = 2 * sig.p() + 1;
    let cand = n_max(sig);
    let constructive_degree = nilpotence_degree(&cand).unwrap_or(0);
    if constructive_degree == target {
        return Ok(cand);
    }
    let mut random_attempts = 0;
    let mut random_best = 0;
    let mut ceiling_reached = false;
    while start.elapsed() < budget {
        random_attempts += 1;
        let gens: Vec<AlgElement> = (0..2).map(|_| random_combination(&cand, rng)).collect();
        if let Ok(h) = Subalgebra::generated_by(sig, &gens) {
            if let Ok(d) = nilpotence_degree(&h) {
                if d == target {
                    return Ok(h);
                }
                random_best = random_best.max(d);
            }
        }
        // subalgebras of a degree-d algebra cannot exceed d
        if random_best >= constructive_degree && random_attempts >= 16 {
            ceiling_reached = true;
            break;
        }
    }
    Err(WitnessTrace {
        target,
        constructive_degree,
        constructive_dim: cand.dim(),
        random_attempts,
        random_best,
        ceiling_reached,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn random_combination(h: &Subalgebra, rng: &mut SplitMix64) -> AlgElement {
    let mut acc = AlgElement::zero(h.signature());
    for b in h.basis() {
        if rng.below(3) == 0 {
            continue;
        }
        let c = rng.small_int(2);
        if !c.is_zero() {
            acc = &acc + &b.scale(&c);
        }
    }
    acc
}

/// Random product of exponentials of small integer translations.
pub fn random_unipotent_conjugator(sig: Signature, rng: &mut SplitMix64) -> GroupElement {
    let n = sig.n();
    let mut g = GroupElement::identity(sig);
    for _ in 0..2 {
        let v: Vector = (0..n).map(|_| if rng.coin() { rng.small_int(1) } else { Rational::zero() }).collect();
        let x = if rng.coin() { iplus(sig, &v) } else { iminus(sig, &v) }.expect("length n");
        g = g.mul(&exp_nilpotent(&x).expect("translations are nilpotent")).expect("same signature");
    }
    g
}

/// Random bracket-closed nilpotent subalgebra: a closure of sparse elements of
/// the upper-triangular nilradical, conjugated by a random unipotent element.
pub fn random_nilpotent_subalgebra(sig: Signature, rng: &mut SplitMix64) -> Subalgebra {
    let nm = n_max(sig);
    let ngen = 1 + rng.below(3) as usize;
    let gens: Vec<AlgElement> = (0..ngen).map(|_| random_combination(&nm, rng)).collect();
    let h = Subalgebra::generated_by(sig, &gens).expect("same signature");
    let g = random_unipotent_conjugator(sig, rng);
    h.conjugate(&g).expect("same signature")
}

/// Random nilpotent subalgebra inside `p`, for the containment relation.
pub fn random_nilpotent_in_parabolic(sig: Signature, rng: &mut SplitMix64) -> Subalgebra {
    let nm = n_max(sig);
    let ngen = 1 + rng.below(3) as usize;
    let gens: Vec<AlgElement> = (0..ngen).map(|_| random_combination(&nm, rng)).collect();
    let h = Subalgebra::generated_by(sig, &gens).expect("same signature");
    // conjugating by elements of P keeps the algebra inside p
    let v: Vector = (0..sig.n()).map(|_| rng.small_int(1)).collect();
    let g = exp_nilpotent(&iplus(sig, &v).expect("length n")).expect("nilpotent");
    h.conjugate(&g).expect("same signature")
}

/// Heisenberg triple in the centralizer of `T`: one `x`-slot and one
/// `y`-slot element pairing to a multiple of `T`. Needs `p ≥ 1`.
pub fn heisenberg_triple(sig: Signature) -> Result<Subalgebra> {
    let inner = sig.inner_form()?;
    let n = sig.n();
    let k = inner.partner(0);
    let one = Rational::from_integer(1.into());
    // x-slot with x = e_0: row 0 carries −(J''x)ᵀ, column n+1 carries x
    let mut xm = QMatrix::zeros(n + 2, n + 2);
    xm[(0, 2 + inner.partner(0))] = -one.clone();
    xm[(2, n + 1)] = one.clone();
    // y-slot with y = e_k: row 1 carries −(J''y)ᵀ, column n carries y
    let mut ym = QMatrix::zeros(n + 2, n + 2);
    ym[(1, 2 + inner.partner(k))] = -one.clone();
    ym[(2 + k, n)] = one;
    let x = AlgElement::new(sig, xm)?;
    let y = AlgElement::new(sig, ym)?;
    Subalgebra::generated_by(sig, &[x, y])
}
