//! One function per subcommand; each returns the JSON printed on stdout.

use std::path::Path;

use ein_core::cartan_holonomy as hol;
use ein_core::centralizer_structure as cen;
use ein_core::einstein_model::{self as ein, EinPoint};
use ein_core::json as j;
use ein_core::lie_algebra as la;
use ein_core::nilpotency as nil;
use ein_core::rational::{self, Rational};
use ein_core::{Cover, Signature};
use serde_json::{json, Value};

use crate::CliError;

pub fn signature(p: usize, q: usize) -> Result<Signature, CliError> {
    Signature::new(p, q).map_err(|e| CliError::Input(e.to_string()))
}

fn rat(s: &str) -> Result<Rational, CliError> {
    Ok(rational::parse(s)?)
}

fn point(sig: Signature, text: &str, ray: bool) -> Result<EinPoint, CliError> {
    let v = j::parse_vector(text)?;
    if v.len() != sig.dim() {
        return Err(CliError::Input(format!("point has {} coordinates, expected {}", v.len(), sig.dim())));
    }
    Ok(EinPoint::new(sig, v, if ray { Cover::Ray } else { Cover::Projective })?)
}

fn point_json(x: &EinPoint) -> Value {
    json!({ "point": x.to_string(), "rep": j::vector_to_json(x.rep()) })
}

pub fn flow(sig: Signature, pt: &str, s: &str, ray: bool) -> Result<Value, CliError> {
    let y = point(sig, pt, ray)?;
    let out = ein::tau_flow(&rat(s)?, &y)?;
    Ok(point_json(&out))
}

pub fn degree(basis: &Path) -> Result<Value, CliError> {
    let h = j::subalgebra_from_json(&j::read_file(basis)?)?;
    h.require_closed()?;
    Ok(json!({ "degree": nil::nilpotence_degree(&h)? }))
}

pub fn centralizer(sig: Signature, of: Option<&Path>) -> Result<Value, CliError> {
    match of {
        None => {
            let b = cen::ctau_basis(sig)?;
            let params: Vec<_> = b.basis().iter().map(cen::disassemble).collect::<Result<_, _>>()?;
            let heis = cen::heis_structure_report(sig)?;
            Ok(json!({
                "p": sig.p(),
                "q": sig.q(),
                "dim": b.dim(),
                "basis": b.basis().iter().map(|x| j::matrix_to_json(x.matrix())).collect::<Vec<_>>(),
                "parameters": params,
                "heisenberg": heis,
            }))
        }
        Some(path) => {
            let h = j::subalgebra_from_json(&j::read_file(path)?)?;
            if h.signature() != sig {
                return Err(CliError::Input(format!(
                    "file is for ({},{}), flags say ({},{})",
                    h.signature().p(),
                    h.signature().q(),
                    sig.p(),
                    sig.q()
                )));
            }
            let rep = cen::centralizer_b_vanishing(&h)?;
            if !rep.pass {
                return Err(ein_core::Error::Internal(format!("nonzero b in the centralizer:\n{}", rep.offending.join("\n"))).into());
            }
            let c = la::centralizer(sig, h.basis())?;
            Ok(json!({
                "p": sig.p(),
                "q": sig.q(),
                "dim": c.dim(),
                "basis": c.basis().iter().map(|x| j::matrix_to_json(x.matrix())).collect::<Vec<_>>(),
                "b_vanishing": rep,
            }))
        }
    }
}

pub fn holonomy(sig: Signature, s: &str, t: &str) -> Result<Value, CliError> {
    let (s, t) = (rat(s)?, rat(t)?);
    let h = hol::holonomy_matrix(sig, &s, &t)?;
    Ok(json!({
        "p": sig.p(),
        "q": sig.q(),
        "s": rational::format(&s),
        "t": rational::format(&t),
        "reparam": rational::format(&hol::reparam(&s, &t)?),
        "matrix": j::matrix_to_json(h.matrix()),
        "factorization_holds": hol::verify_base_factorization(sig, &s, &t)?,
    }))
}

pub fn chart(sig: Signature, pt: Option<&str>, vector: Option<&str>) -> Result<Value, CliError> {
    match (pt, vector) {
        (Some(pt), None) => {
            let x = point(sig, pt, false)?;
            Ok(json!({ "point": x.to_string(), "chart": j::vector_to_json(&ein::stereo_forward(&x)?) }))
        }
        (None, Some(v)) => {
            let v = j::parse_vector(v)?;
            let x = ein::stereo_inverse(sig, &v)?;
            Ok(json!({ "chart": j::vector_to_json(&v), "point": x.to_string(), "rep": j::vector_to_json(x.rep()) }))
        }
        _ => Err(CliError::Input("give exactly one of --point or --vector".into())),
    }
}

pub fn limit(sig: Signature, pt: &str, float: bool, s: f64) -> Result<Value, CliError> {
    let y = point(sig, pt, false)?;
    let lim = ein::tau_limit(&y)?;
    let vertex = ein::attractor_vertex(&y)?;
    let mut out = json!({
        "point": y.to_string(),
        "limit": point_json(&lim),
        "attractor_vertex": vertex.to_string(),
        "agree": lim == vertex,
    });
    if float {
        let fl = ein::tau_flow_float(s, &y)?;
        out["float"] = json!({
            "s": s,
            "flow": ein::normalize_f64(&fl),
            "distance": ein::projective_distance_f64(&fl, &lim.point().to_f64()),
        });
    }
    Ok(out)
}

fn development_json(d: &hol::Development) -> Value {
    match d {
        hol::Development::Exact(g) => json!({ "exact": true, "endpoint": j::matrix_to_json(g.matrix()) }),
        hol::Development::Float(m) => {
            let rows: Vec<Vec<f64>> = (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect();
            json!({ "exact": false, "endpoint": rows })
        }
    }
}

pub struct TriangleArgs<'a> {
    pub a: &'a str,
    pub x: &'a str,
    pub c: &'a str,
    pub r: &'a str,
}

pub fn develop_triangle(sig: Signature, args: &TriangleArgs) -> Result<Value, CliError> {
    let x = la::iminus(sig, &j::parse_vector(args.x)?).map_err(|e| CliError::Input(e.to_string()))?;
    let (a, c, r) = (rat(args.a)?, rat(args.c)?, rat(args.r)?);
    let (curve, y) = hol::triangle_curve(&a, &x, &c, &r)?;
    let d = hol::develop(&curve)?;
    let expected = la::exp_nilpotent(&y.scale(&r))?;
    let mut out = development_json(&d);
    out["matches_exp_rY"] = json!(d.exact() == Some(&expected));
    out["Y"] = j::matrix_to_json(y.matrix());
    Ok(out)
}

/// Curve file: `{"p", "q", "segments": [{"direction": matrix, "from", "to"}]}`.
pub fn develop_file(path: &Path) -> Result<Value, CliError> {
    let v = j::read_file(path)?;
    let sig = j::signature_from_json(&v)?;
    let segs = v
        .get("segments")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Input("missing \"segments\" array".into()))?;
    let segments = segs
        .iter()
        .map(|s| {
            let m = j::matrix_from_json(s.get("direction").ok_or_else(|| CliError::Input("segment without direction".into()))?)?;
            let direction = la::AlgElement::new(sig, m).map_err(|e| CliError::Input(e.to_string()))?;
            let bound = |k: &str| -> Result<Rational, CliError> {
                Ok(rational::from_json(s.get(k).ok_or_else(|| CliError::Input(format!("segment without {k:?}")))?)?)
            };
            Ok(hol::Segment { direction, from: bound("from")?, to: bound("to")?, base: None })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let d = hol::develop(&hol::PiecewiseCurve { sig, segments })?;
    Ok(development_json(&d))
}
