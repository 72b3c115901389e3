//! Acceptance criteria. Each criterion runs in sequence inside one test (the
//! runtime limits would be distorted by sibling tests sharing the CPU) and
//! prints one PASS/FAIL line. Expected values are rebuilt here from explicit
//! matrix formulas rather than taken from the library.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use ein_core::cartan_holonomy as hol;
use ein_core::centralizer_structure as cen;
use ein_core::einstein_model as ein;
use ein_core::lie_algebra::{self as la, AlgElement, GroupElement, Subalgebra};
use ein_core::nilpotency as nil;
use ein_core::quadratic_forms::{projectivize, Cover};
use ein_core::rational::{self, int, Rational};
use ein_core::rng::SplitMix64;
use ein_core::{linalg, QMatrix, Signature};
use num_traits::{One, Signed, Zero};

const ALL4: [(usize, usize); 4] = [(1, 2), (1, 3), (2, 2), (2, 3)];
const SMALL3: [(usize, usize); 3] = [(1, 2), (1, 3), (2, 2)];

// pinned tolerances and limits
const FLOW_S: f64 = 1e8;
const FLOW_TOL: f64 = 1e-6;
const WITNESS_BUDGET: Duration = Duration::from_secs(120);
const VERIFY_LIMIT: Duration = Duration::from_secs(120);

fn sig(p: usize, q: usize) -> Signature {
    Signature::new(p, q).unwrap()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome { pass: true, detail: detail.into() }
}

fn bad(detail: impl Into<String>) -> Outcome {
    Outcome { pass: false, detail: detail.into() }
}

// ---- independent constructions ----

/// `Σ X^k / k!` until the powers vanish.
fn exp_series(x: &QMatrix) -> QMatrix {
    let d = x.rows();
    let mut acc = QMatrix::identity(d);
    let mut term = QMatrix::identity(d);
    for k in 1..=d + 1 {
        term = (&term * x).scale(&Rational::new(1.into(), (k as i64).into()));
        if term.is_zero() {
            return acc;
        }
        acc = &acc + &term;
    }
    panic!("matrix is not nilpotent");
}

fn unit(d: usize, i: usize, j: usize) -> QMatrix {
    QMatrix::from_fn(d, d, |a, b| if (a, b) == (i, j) { Rational::one() } else { Rational::zero() })
}

/// `T = E_{0,n} − E_{1,n+1}`.
fn t_matrix(s: Signature) -> QMatrix {
    let (d, n) = (s.dim(), s.n());
    &unit(d, 0, n) - &unit(d, 1, n + 1)
}

/// Column 0 carries `v`, row `n+1` carries `−(Jv)ᵀ`.
fn minus_matrix(s: Signature, v: &[Rational]) -> QMatrix {
    let (d, n) = (s.dim(), s.n());
    let form = s.model_form();
    let jv = form.lower(v).unwrap();
    QMatrix::from_fn(d, d, |i, j| {
        if j == 0 && (1..=n).contains(&i) {
            v[i - 1].clone()
        } else if i == n + 1 && (1..=n).contains(&j) {
            -jv[j - 1].clone()
        } else {
            Rational::zero()
        }
    })
}

fn h_matrix(s: Signature, sv: &Rational, tv: &Rational) -> QMatrix {
    let (d, n) = (s.dim(), s.n());
    let k = Rational::one() + sv * tv;
    let diag = QMatrix::from_fn(d, d, |i, j| match (i == j, i) {
        (false, _) => Rational::zero(),
        (true, 0) | (true, 1) => k.clone(),
        (true, i) if i == n || i == n + 1 => k.recip(),
        _ => Rational::one(),
    });
    &diag + &t_matrix(s).scale(sv)
}

fn random_st(r: &mut SplitMix64) -> (Rational, Rational) {
    loop {
        let s = r.small_rat(9, 5);
        let t = r.small_rat(9, 5);
        if !(Rational::one() + &s * &t).is_zero() {
            return (s, t);
        }
    }
}

fn grade_minus_coords(s: Signature, x: &QMatrix) -> Vec<Rational> {
    (1..=s.n()).map(|i| x[(i, 0)].clone()).collect()
}

/// Matrix of `Ad h` on `g/p` in the frame `f_i`, read from column 0.
fn quotient_matrix(s: Signature, h: &QMatrix, hinv: &QMatrix, frame: &[QMatrix]) -> QMatrix {
    let fm = QMatrix::from_columns(&frame.iter().map(|f| grade_minus_coords(s, f)).collect::<Vec<_>>());
    let cols: Vec<Vec<Rational>> = frame
        .iter()
        .map(|f| {
            let img = &(h * f) * hinv;
            fm.solve(&grade_minus_coords(s, &img)).unwrap().expect("frame spans g/p")
        })
        .collect();
    QMatrix::from_columns(&cols)
}

fn admissible_null(s: Signature, r: &mut SplitMix64) -> Vec<Rational> {
    let form = s.model_form();
    loop {
        let v = form.random_null(r);
        // ⟨v, e_1⟩ is the coordinate paired with index 0
        let k = v[s.n() - 1].clone();
        if k.is_zero() {
            continue;
        }
        return if k.is_positive() { v } else { linalg::scale_vec(&int(-1), &v) };
    }
}

// ---- criteria ----

fn c1_base_holonomy() -> Outcome {
    let mut checked = 0;
    for (p, q) in ALL4 {
        let s = sig(p, q);
        let mut r = SplitMix64::derive(42, &format!("c1/{p},{q}"));
        for _ in 0..50 {
            let (sv, tv) = random_st(&mut r);
            let c = &tv / (Rational::one() + &sv * &tv);
            let un = minus_matrix(s, &linalg::unit_vec(s.n(), s.n() - 1));
            let tau = exp_series(&t_matrix(s).scale(&sv));
            let lhs = &tau * &exp_series(&un.scale(&tv));
            let h = h_matrix(s, &sv, &tv);
            let rhs = &exp_series(&un.scale(&c)) * &h;
            let lib = hol::holonomy_matrix(s, &sv, &tv).unwrap();
            if lhs != rhs || lib.matrix() != &h || !hol::verify_base_factorization(s, &sv, &tv).unwrap() {
                return bad(format!("({p},{q}) s={sv} t={tv}"));
            }
            checked += 1;
        }
    }
    ok(format!("{checked} exact identities over 4 signatures"))
}

fn c2_conjugated_holonomy() -> Outcome {
    let mut checked = 0;
    for (p, q) in ALL4 {
        let s = sig(p, q);
        let mut r = SplitMix64::derive(42, &format!("c2/{p},{q}"));
        let un = minus_matrix(s, &linalg::unit_vec(s.n(), s.n() - 1));
        for _ in 0..20 {
            let v = admissible_null(s, &mut r);
            let u = la::iminus(s, &v).unwrap();
            let g = hol::construct_s_element(&u).unwrap();
            let (sv, tv) = random_st(&mut r);
            let gm = g.matrix();
            let ginv = g.inverse().into_matrix();
            let tau = exp_series(&t_matrix(s).scale(&sv));
            if &(gm * &tau) != &(&tau * gm) {
                return bad(format!("({p},{q}): S element does not commute with tau^s"));
            }
            // Ad g(U_n) is U rescaled so that ⟨U, U_1⟩ = 1
            let dir = &(gm * &un) * &ginv;
            let pairing = v[s.n() - 1].clone();
            if dir != minus_matrix(s, &linalg::scale_vec(&pairing.recip(), &v)) {
                return bad(format!("({p},{q}): Ad g(U_n) is not parallel to U"));
            }
            let c = &tv / (Rational::one() + &sv * &tv);
            let lhs = &tau * &exp_series(&dir.scale(&tv));
            let path = &(gm * &h_matrix(s, &sv, &tv)) * &ginv;
            let rhs = &exp_series(&dir.scale(&c)) * &path;
            let f = hol::conjugated_factorization(&g, &sv).unwrap();
            if lhs != rhs || !f.verify(&tv).unwrap() {
                return bad(format!("({p},{q}) s={sv} t={tv}"));
            }
            checked += 1;
        }
    }
    ok(format!("{checked} admissible U, factorization exact"))
}

fn c3_quotient_adjoint() -> Outcome {
    let mut checked = 0;
    for (p, q) in ALL4 {
        let s = sig(p, q);
        let n = s.n();
        let mut r = SplitMix64::derive(42, &format!("c3/{p},{q}"));
        let frame: Vec<QMatrix> = (0..n).map(|i| minus_matrix(s, &linalg::unit_vec(n, i))).collect();
        for _ in 0..10 {
            let (sv, tv) = random_st(&mut r);
            let k = (Rational::one() + &sv * &tv).recip();
            let expect = QMatrix::from_fn(n, n, |i, j| match (i == j, i) {
                (false, _) => Rational::zero(),
                (true, 0) => Rational::one(),
                (true, i) if i == n - 1 => &k * &k,
                _ => k.clone(),
            });
            let h = hol::holonomy_matrix(s, &sv, &tv).unwrap();
            let base = quotient_matrix(s, h.matrix(), h.inverse().matrix(), &frame);
            let g = hol::construct_s_element(&la::iminus(s, &admissible_null(s, &mut r)).unwrap()).unwrap();
            let ginv = g.inverse();
            let hc = &(g.matrix() * h.matrix()) * ginv.matrix();
            let hcinv = &(g.matrix() * h.inverse().matrix()) * ginv.matrix();
            let cframe: Vec<QMatrix> = frame.iter().map(|f| &(g.matrix() * f) * ginv.matrix()).collect();
            let conj = quotient_matrix(s, &hc, &hcinv, &cframe);
            let lib_frame: Vec<AlgElement> = (1..=n).map(|i| la::u_basis(s, i)).collect();
            let lib = hol::adjoint_on_quotient(&h, &lib_frame).unwrap();
            if base != expect || conj != expect || lib != expect {
                return bad(format!("({p},{q}) s={sv} t={tv}"));
            }
            checked += 2;
        }
    }
    ok(format!("{checked} diagonal matrices (base and conjugated frames)"))
}

fn c4_kernel_facts() -> Outcome {
    for (p, q) in ALL4 {
        let s = sig(p, q);
        let n = s.n();
        let t = t_matrix(s);
        // [T, i⁻(v)] = 0 as a linear system in v
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|i| t.commutator(&minus_matrix(s, &linalg::unit_vec(n, i))).into_flat())
            .collect();
        let ker = QMatrix::from_columns(&cols).nullspace();
        let line_ok = ker.len() == 1 && QMatrix::from_rows(vec![ker[0].clone(), linalg::unit_vec(n, 0)]).unwrap().rank() == 1;
        let lib_line = la::centralizer(s, &[la::translation_t(s)])
            .unwrap()
            .intersection(&la::u_minus(s))
            .unwrap()
            .same_span(&Subalgebra::new(s, &[la::u_basis(s, 1)]).unwrap());
        // codimension: rank of X ↦ (X e_0 with row 0 dropped) on c(T)
        let c = la::centralizer(s, &[la::translation_t(s)]).unwrap();
        let rows: Vec<Vec<Rational>> = c.basis().iter().map(|x| (1..s.dim()).map(|i| x.matrix()[(i, 0)].clone()).collect()).collect();
        let codim = QMatrix::from_rows(rows).unwrap().rank();
        let lib_codim = la::codim_in(&c.intersection(&la::parabolic_e0(s)).unwrap(), &c).unwrap();
        if !(line_ok && lib_line && codim == 1 && lib_codim == 1) {
            return bad(format!("({p},{q}): line {line_ok}/{lib_line}, codim {codim}/{lib_codim}"));
        }
    }
    ok("ker ad T ∩ u⁻ = R U_1 and codim 1 at 4 signatures")
}

fn c5_degree_bound() -> Outcome {
    let mut hist = Vec::new();
    let mut null_checked = 0;
    for (p, q) in SMALL3 {
        let s = sig(p, q);
        let mut r = SplitMix64::derive(42, &format!("c5/{p},{q}"));
        let mut maxd = 0;
        for i in 0..200 {
            let h = if i % 2 == 0 {
                nil::random_nilpotent_subalgebra(s, &mut r)
            } else {
                nil::random_nilpotent_in_parabolic(s, &mut r)
            };
            let series = nil::lower_central_series(&h).unwrap();
            let Some(d) = series.degree else {
                return bad(format!("({p},{q}) sample {i} is not nilpotent"));
            };
            // the degree equals the nilpotency order of ad on h
            if nil::ad_order(&h).unwrap() != Some(d) || d > 2 * p + 1 {
                return bad(format!("({p},{q}) sample {i}: degree {d}"));
            }
            maxd = maxd.max(d);
            if d >= 2 * p {
                for x in series.terms[d - 1].basis() {
                    let m = x.matrix();
                    let intrinsic = !m.is_zero() && (m * m).is_zero() && m.rank() == 2;
                    if !intrinsic || nil::translation_vector_norm(x) != Some(Rational::zero()) || !nil::is_null_translation(x) {
                        return bad(format!("({p},{q}) sample {i}: last term element is not a null translation"));
                    }
                    null_checked += 1;
                }
            }
        }
        hist.push(format!("({p},{q}) max degree {maxd}"));
    }
    ok(format!("600 samples; {}; {null_checked} last-term elements checked", hist.join(", ")))
}

fn c6_witness() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (p, q) in [(1, 2), (1, 3)] {
        let s = sig(p, q);
        let mut r = SplitMix64::derive(42, &format!("c6/{p},{q}"));
        match nil::witness_search(s, WITNESS_BUDGET, &mut r) {
            Ok(h) => {
                let series = nil::lower_central_series(&h).unwrap();
                let dims = series.dims();
                let good = series.degree == Some(3) && nil::ad_order(&h).unwrap() == Some(3) && dims.last() == Some(&0);
                pass &= good;
                parts.push(format!("({p},{q}) degree {:?} series {dims:?}", series.degree));
            }
            Err(trace) => {
                pass = false;
                parts.push(format!("({p},{q}) no witness: {trace:?}"));
            }
        }
    }
    let s = sig(2, 2);
    let mut r = SplitMix64::derive(42, "c6/2,2");
    match nil::witness_search(s, WITNESS_BUDGET, &mut r) {
        Ok(h) => {
            let d = nil::nilpotence_degree(&h).unwrap();
            pass &= d == 5;
            parts.push(format!("(2,2) degree {d}"));
        }
        Err(trace) => {
            // documented skip: the constructive candidate contains a conjugate
            // of every unipotent subalgebra, so its degree is an upper bound
            let documented = trace.constructive_degree < trace.target;
            pass &= documented;
            parts.push(format!(
                "(2,2) SKIP (documented): target {}, constructive degree {} (dim {}), {} random attempts in {} ms of {} s, best {}, ceiling reached {}",
                trace.target,
                trace.constructive_degree,
                trace.constructive_dim,
                trace.random_attempts,
                trace.elapsed_ms,
                WITNESS_BUDGET.as_secs(),
                trace.random_best,
                trace.ceiling_reached
            ));
        }
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn c7_flow_limit() -> Outcome {
    let mut worst = 0f64;
    for (p, q) in ALL4 {
        let s = sig(p, q);
        let mut r = SplitMix64::derive(42, &format!("c7/{p},{q}"));
        let t = t_matrix(s);
        for _ in 0..100 {
            let y = ein::random_outside_fixed_set(s, &mut r);
            let lim = ein::tau_limit(&y).unwrap();
            if ein::attractor_vertex(&y).unwrap() != lim {
                return bad(format!("({p},{q}) {y}: limit and attractor vertex differ"));
            }
            // τ^s y = y + s T y since T² = 0
            let ty = t.mul_vec(y.rep()).unwrap();
            let z: Vec<f64> = y.rep().iter().zip(&ty).map(|(a, b)| rational::to_f64(a) + FLOW_S * rational::to_f64(b)).collect();
            // max-abs normalization; projective points agree up to sign
            let norm = |v: &[f64]| -> Vec<f64> {
                let m = v.iter().fold(0f64, |a, b| a.max(b.abs()));
                v.iter().map(|x| x / m).collect()
            };
            let a = norm(&z);
            let b = norm(&lim.point().to_f64());
            let dist = |sign: f64| a.iter().zip(&b).map(|(x, y)| (x - sign * y).abs()).fold(0f64, f64::max);
            let err = dist(1.0).min(dist(-1.0));
            worst = worst.max(err);
            if err >= FLOW_TOL {
                return bad(format!("({p},{q}) {y}: error {err:e}"));
            }
        }
    }
    ok(format!("400 points, max error {worst:.3e} < {FLOW_TOL:e}"))
}

fn c8_chart() -> Outcome {
    let mut equal_pairs = 0;
    for (p, q) in ALL4 {
        let s = sig(p, q);
        let n = s.n();
        let form = s.model_form();
        let amb = s.ambient_form();
        let mut r = SplitMix64::derive(42, &format!("c8/{p},{q}"));
        let lift = |v: &[Rational]| ein::stereo_inverse_vec(s, v).unwrap();
        for _ in 0..20 {
            let v = r.rat_vec(n, 5, 3);
            // the lift is quadratic, so the symmetric difference quotient is exact
            let dlift = |w: &[Rational]| {
                let plus = lift(&linalg::add_vec(&v, w));
                let minus = lift(&linalg::sub_vec(&v, w));
                linalg::scale_vec(&Rational::new(1.into(), 2.into()), &linalg::sub_vec(&plus, &minus))
            };
            let ws: Vec<Vec<Rational>> = (0..n + 1).map(|_| r.rat_vec(n, 3, 2)).collect();
            let mut ratio: Option<Rational> = None;
            for w1 in &ws {
                for w2 in &ws {
                    let base = form.inner(w1, w2).unwrap();
                    let img = amb.inner(&dlift(w1), &dlift(w2)).unwrap();
                    if base.is_zero() {
                        if !img.is_zero() {
                            return bad(format!("({p},{q}) pullback not proportional"));
                        }
                        continue;
                    }
                    let k = img / base;
                    if ratio.get_or_insert_with(|| k.clone()) != &k {
                        return bad(format!("({p},{q}) pullback ratio varies"));
                    }
                }
            }
            let x = ein::stereo_inverse(s, &v).unwrap();
            if ein::stereo_forward(&x).unwrap() != v {
                return bad(format!("({p},{q}) roundtrip failed at {v:?}"));
            }
        }
        for _ in 0..50 {
            let c = r.rat_vec(n, 4, 3);
            let u = form.random_null(&mut r);
            let (b, v) = if r.coin() {
                let perp = QMatrix::from_rows(vec![form.lower(&u).unwrap()]).unwrap().nullspace();
                let mut b = c.clone();
                for w in &perp {
                    b = linalg::add_vec(&b, &linalg::scale_vec(&r.small_rat(3, 2), w));
                }
                (b, linalg::scale_vec(&r.nonzero_rat(3, 2), &u))
            } else {
                (r.rat_vec(n, 4, 3), form.random_null(&mut r))
            };
            // boundary point = direction of the linear term of lift(c + t u)
            let boundary = |c: &[Rational], u: &[Rational]| {
                let lin = linalg::sub_vec(&lift(&linalg::add_vec(c, u)), &lift(&linalg::sub_vec(c, u)));
                projectivize(lin, Cover::Projective).unwrap()
            };
            let same = boundary(&c, &u) == boundary(&b, &v);
            equal_pairs += same as usize;
            let pred = ein::same_boundary_predicate(s, &c, &u, &b, &v).unwrap();
            let lib_same = ein::null_line_boundary(s, &c, &u).unwrap() == ein::null_line_boundary(s, &b, &v).unwrap();
            if pred != same || lib_same != same {
                return bad(format!("({p},{q}) predicate {pred}, oracle {same}, library {lib_same}"));
            }
        }
    }
    ok(format!("80 conformal points, 80 roundtrips, 200 line pairs ({equal_pairs} with equal boundary)"))
}

fn c9_development() -> Outcome {
    let mut checked = 0;
    for (p, q) in ALL4 {
        let s = sig(p, q);
        let n = s.n();
        let mut r = SplitMix64::derive(42, &format!("c9/{p},{q}"));
        for _ in 0..20 {
            let a = r.small_rat(5, 3);
            let c = r.nonzero_rat(5, 3);
            let rr = r.nonzero_rat(5, 3);
            let mut xv = vec![Rational::zero(); n];
            for v in xv.iter_mut().take(n - 1).skip(1) {
                *v = r.small_rat(4, 3);
            }
            let x = la::iminus(s, &xv).unwrap();
            let (curve, _) = hol::triangle_curve(&a, &x, &c, &rr).unwrap();
            let mut yv = xv.clone();
            yv[0] = a.clone();
            yv[n - 1] = c.clone();
            let expect = exp_series(&minus_matrix(s, &yv).scale(&rr));
            match hol::develop(&curve).unwrap().exact() {
                Some(g) if g.matrix() == &expect => checked += 1,
                _ => return bad(format!("({p},{q}) a={a} c={c} r={rr}")),
            }
            let ux = la::iminus(s, &r.rat_vec(n, 3, 2)).unwrap();
            let uy = la::iminus(s, &r.rat_vec(n, 3, 2)).unwrap();
            let loop_end = hol::develop(&hol::rectangle_curve(&ux, &uy)).unwrap();
            if !loop_end.exact().is_some_and(GroupElement::is_identity) {
                return bad(format!("({p},{q}) abelian rectangle does not close"));
            }
        }
    }
    ok(format!("{checked} triangles, {checked} closed rectangles"))
}

/// `π_3` read straight from matrix positions: `x` in column `n+1`, `y` in
/// column `n`, rows `2..n`.
fn pi3(s: Signature, m: &QMatrix) -> (Vec<Rational>, Vec<Rational>) {
    let n = s.n();
    ((2..n).map(|i| m[(i, n + 1)].clone()).collect(), (2..n).map(|i| m[(i, n)].clone()).collect())
}

fn c10_structure() -> Outcome {
    for (p, q) in ALL4 {
        let s = sig(p, q);
        let k = s.n() - 2;
        let expected = 4 + 2 * k + k * (k - 1) / 2;
        let b = match cen::ctau_basis(s) {
            Ok(b) => b,
            Err(e) => return bad(format!("({p},{q}) {e}")),
        };
        let kernel = la::centralizer(s, &[la::translation_t(s)]).unwrap();
        if b.dim() != expected || !b.same_span(&kernel) {
            return bad(format!("({p},{q}) dimension {} vs {expected}", b.dim()));
        }
    }
    for (p, q) in SMALL3 {
        let s = sig(p, q);
        let n = s.n();
        let mut r = SplitMix64::derive(42, &format!("c10/{p},{q}"));
        for _ in 0..200 {
            let u1 = cen::QElement::random(s, &mut r).unwrap();
            let u2 = cen::QElement::random(s, &mut r).unwrap();
            let m1 = u1.to_alg(s).unwrap().into_matrix();
            let m2 = u2.to_alg(s).unwrap().into_matrix();
            let br = m1.commutator(&m2);
            let (x1, y1) = pi3(s, &m1);
            let (x2, y2) = pi3(s, &m2);
            let inner = |m: &QMatrix| QMatrix::from_fn(n - 2, n - 2, |i, j| m[(i + 2, j + 2)].clone());
            let (b1, b2) = (m1[(0, 1)].clone(), m2[(0, 1)].clone());
            let (i1, i2) = (inner(&m1), inner(&m2));
            let xs = linalg::sub_vec(
                &linalg::add_vec(&linalg::scale_vec(&b1, &y2), &i1.mul_vec(&x2).unwrap()),
                &linalg::add_vec(&linalg::scale_vec(&b2, &y1), &i2.mul_vec(&x1).unwrap()),
            );
            let ys = linalg::sub_vec(&i1.mul_vec(&y2).unwrap(), &i2.mul_vec(&y1).unwrap());
            let lib = cen::q_bracket(s, &u1, &u2).unwrap();
            let laws = br[(0, 1)].is_zero() && inner(&br) == i1.commutator(&i2) && pi3(s, &br) == (xs, ys);
            if !laws || lib.to_alg(s).unwrap().matrix() != &br {
                return bad(format!("({p},{q}) bracket projection law violated"));
            }
        }
    }
    for (p, q) in ALL4 {
        let rep = cen::heis_structure_report(sig(p, q)).unwrap();
        if !rep.pass || rep.ideal_dim != 2 * (p + q) - 3 {
            return bad(format!("({p},{q}) Heisenberg report {rep:?}"));
        }
    }
    let mut cent_dims = Vec::new();
    for (p, q) in [(1, 2), (1, 3)] {
        let s = sig(p, q);
        let mut r = SplitMix64::derive(42, &format!("c10w/{p},{q}"));
        let h = nil::witness_search(s, Duration::ZERO, &mut r).expect("p = 1 witness");
        let rep = cen::centralizer_b_vanishing(&h).unwrap();
        let c = la::centralizer(s, h.basis()).unwrap();
        let b_zero = c.basis().iter().all(|x| x.matrix()[(0, 1)].is_zero());
        if !rep.pass || !b_zero || !c.contains(&la::translation_t(s)) {
            return bad(format!("({p},{q}) b-vanishing failed: {:?}", rep.offending));
        }
        cent_dims.push(format!("({p},{q}) centralizer dim {}", c.dim()));
    }
    ok(format!("dimensions at 4 signatures, 600 bracket pairs, Heisenberg at 4, b = 0 with {}", cent_dims.join(", ")))
}

fn c11_verify_reproducible() -> Outcome {
    let run = || {
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_einctl"))
            .args(["verify", "--seed", "42"])
            .env_remove("EINCTL_SEED")
            .output()
            .expect("einctl runs");
        (out, start.elapsed())
    };
    let (a, ta) = run();
    let (b, tb) = run();
    let identical = a.stdout == b.stdout;
    let in_time = ta < VERIFY_LIMIT && tb < VERIFY_LIMIT;
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap_or_default();
    let detail = format!(
        "runs {:.1}s and {:.1}s, identical {identical}, exit {:?}/{:?}, summary {}",
        ta.as_secs_f64(),
        tb.as_secs_f64(),
        a.status.code(),
        b.status.code(),
        report["summary"]
    );
    Outcome { pass: identical && in_time && a.status.success() && b.status.success(), detail }
}

#[test]
fn acceptance_criteria() {
    type Crit = (u32, &'static str, Option<Duration>, fn() -> Outcome);
    let criteria: [Crit; 11] = [
        (1, "base holonomy identity", Some(Duration::from_secs(5)), c1_base_holonomy),
        (2, "conjugated holonomy", Some(Duration::from_secs(5)), c2_conjugated_holonomy),
        (3, "quotient adjoint diagonal", Some(Duration::from_secs(2)), c3_quotient_adjoint),
        (4, "kernel facts", Some(Duration::from_secs(2)), c4_kernel_facts),
        (5, "degree bound", Some(Duration::from_secs(30)), c5_degree_bound),
        (6, "tightness witness", None, c6_witness),
        (7, "flow limit", Some(Duration::from_secs(5)), c7_flow_limit),
        (8, "stereographic chart", Some(Duration::from_secs(5)), c8_chart),
        (9, "development", Some(Duration::from_secs(3)), c9_development),
        (10, "centralizer structure", Some(Duration::from_secs(20)), c10_structure),
        (11, "verify run reproducible", None, c11_verify_reproducible),
    ];
    let mut failed = Vec::new();
    for (id, name, limit, f) in criteria {
        let start = Instant::now();
        let out = f();
        let took = start.elapsed();
        let timely = limit.is_none_or(|l| took <= l);
        let pass = out.pass && timely;
        let limit_txt = limit.map(|l| format!(" (limit {}s)", l.as_secs())).unwrap_or_default();
        // straight to the handle so the line survives libtest output capture
        let line = format!(
            "criterion {id:>2} {:<4} {name}: {} [{:.2}s{limit_txt}]\n",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            took.as_secs_f64()
        );
        let _ = std::io::stderr().write_all(line.as_bytes());
        if !pass {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
