//! Gauss norms `γ_ε(α) = min_i i + ε p^{-i} ν(a_i)` of truncated Witt
//! vectors, their Newton polygons, and radius certificates.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::pseudoval::{ValError, ValuationSpec};
use crate::scalar::{rat_pow, Ext, Scalar};
use crate::witt::WittVector;
use crate::{ExtRat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GaussError {
    #[error("epsilon must be positive")]
    BadEpsilon,
    #[error("delta must be positive")]
    BadDelta,
    #[error("the zero vector has an empty Newton polygon")]
    EmptyPolygon,
    #[error(transparent)]
    Val(#[from] ValError),
}

/// The points `(p^{-i} ν(a_i), i)` for the components with finite value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormProfile {
    pub points: Vec<(Rat, Rat)>,
}

impl NormProfile {
    pub fn of(alpha: &WittVector, spec: &ValuationSpec) -> Result<Self, GaussError> {
        let p = alpha.p();
        let mut points = Vec::new();
        for (i, a) in alpha.comps().iter().enumerate() {
            match spec.eval(a)? {
                Ext::Finite(v) => points.push((v * rat_pow(p, -(i as i64)), Rat::from_integer(i.into()))),
                Ext::PosInf => {}
                Ext::NegInf => return Err(ValError::BadParameter("component with value -inf".into()).into()),
            }
        }
        Ok(NormProfile { points })
    }

    /// `min_i i + ε·x_i`, `+∞` when there are no points.
    pub fn gauss(&self, eps: &Rat) -> ExtRat {
        self.points
            .iter()
            .map(|(x, y)| Ext::Finite(y + eps * x))
            .min()
            .unwrap_or(Ext::PosInf)
    }
}

fn check_eps(eps: &Rat) -> Result<(), GaussError> {
    if eps.is_positive() {
        Ok(())
    } else {
        Err(GaussError::BadEpsilon)
    }
}

/// `γ_ε[n](α)`; `+∞` for the zero vector.
pub fn gauss_norm(alpha: &WittVector, spec: &ValuationSpec, eps: &Rat) -> Result<ExtRat, GaussError> {
    check_eps(eps)?;
    Ok(NormProfile::of(alpha, spec)?.gauss(eps))
}

/// Boundary of the intersection of all half-planes `y ≥ -εx + c` (`ε > 0`)
/// and `x ≥ c` containing a finite point set.
///
/// The vertices are the points that are the unique minimizer of `y + εx`
/// for some `ε > 0`, sorted by `x`; consecutive slopes are negative and
/// strictly increasing. The vertical edge is `x ≥ leftmost_x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon<S> {
    pub vertices: Vec<(S, S)>,
    pub leftmost_x: S,
}

fn cross<S: Scalar>(o: &(S, S), a: &(S, S), b: &(S, S)) -> S {
    (a.0.clone() - o.0.clone()) * (b.1.clone() - o.1.clone())
        - (a.1.clone() - o.1.clone()) * (b.0.clone() - o.0.clone())
}

/// Monotone-chain lower hull, cut where slopes stop being negative.
/// Collinear points are dropped.
pub fn newton_polygon_of<S: Scalar>(points: &[(S, S)]) -> Option<NewtonPolygon<S>> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup_by(|b, a| a.0 == b.0);
    let leftmost_x = pts.first()?.0.clone();
    let mut hull: Vec<(S, S)> = Vec::with_capacity(pts.len());
    for pt in pts {
        while hull.len() >= 2 && !cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &pt).is_positive() {
            hull.pop();
        }
        hull.push(pt);
    }
    let mut vertices = vec![hull[0].clone()];
    for w in hull.windows(2) {
        if w[1].1 < w[0].1 {
            vertices.push(w[1].clone());
        } else {
            break;
        }
    }
    Some(NewtonPolygon { vertices, leftmost_x })
}

pub fn newton_polygon(alpha: &WittVector, spec: &ValuationSpec) -> Result<NewtonPolygon<Rat>, GaussError> {
    let prof = NormProfile::of(alpha, spec)?;
    newton_polygon_of(&prof.points).ok_or(GaussError::EmptyPolygon)
}

impl<S: Scalar> NewtonPolygon<S> {
    /// `min` over vertices of `y + ε·x`.
    pub fn support(&self, eps: &S) -> S {
        self.vertices
            .iter()
            .map(|(x, y)| y.clone() + eps.clone() * x.clone())
            .min()
            .expect("nonempty polygon")
    }

    /// TSV with header `x<TAB>y`, one vertex per line.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("x\ty\n");
        for (x, y) in &self.vertices {
            let _ = writeln!(s, "{x}\t{y}");
        }
        s
    }
}

/// Largest `ε = 2^{-k}` (`k ≤ 32`) with `γ_ε(α) > -δ`, and `c = γ_ε(α)`.
/// The zero vector gets `(1, 0)`; `None` if no such `ε` is found.
pub fn radius_certificate(
    alpha: &WittVector,
    spec: &ValuationSpec,
    delta: &Rat,
) -> Result<Option<(Rat, Rat)>, GaussError> {
    if !delta.is_positive() {
        return Err(GaussError::BadDelta);
    }
    if alpha.is_zero() {
        return Ok(Some((Rat::one(), Rat::zero())));
    }
    let prof = NormProfile::of(alpha, spec)?;
    let bound = Ext::Finite(-delta.clone());
    let mut eps = Rat::one();
    for _ in 0..=32 {
        let g = prof.gauss(&eps);
        if g > bound {
            let c = g.finite().cloned().expect("nonzero vector has a finite norm");
            return Ok(Some((eps, c)));
        }
        eps /= Rat::from_integer(2.into());
    }
    Ok(None)
}

fn to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(0.0)
}

/// Static SVG of the point cloud and its Newton polygon.
pub fn render_svg(profile: &NormProfile, np: &NewtonPolygon<Rat>) -> String {
    let (w, h, pad) = (480.0, 360.0, 40.0);
    let xs: Vec<f64> = profile.points.iter().map(|(x, _)| to_f64(x)).collect();
    let ys: Vec<f64> = profile.points.iter().map(|(_, y)| to_f64(y)).collect();
    let (x0, x1) = xs.iter().fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
    let (y0, y1) = ys.iter().fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
    let (x1, y1) = (x1.max(x0 + 1.0), y1.max(y0 + 1.0));
    let sx = |x: f64| pad + (x - x0) / (x1 - x0) * (w - 2.0 * pad);
    let sy = |y: f64| h - pad - (y - y0) / (y1 - y0) * (h - 2.0 * pad);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let mut path: Vec<String> = Vec::new();
    let first = &np.vertices[0];
    path.push(format!("{:.2},{:.2}", sx(to_f64(&first.0)), pad));
    for (x, y) in &np.vertices {
        path.push(format!("{:.2},{:.2}", sx(to_f64(x)), sy(to_f64(y))));
    }
    let last = np.vertices.last().unwrap();
    path.push(format!("{:.2},{:.2}", w - pad, sy(to_f64(&last.1))));
    let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#, path.join(" "));
    for (x, y) in xs.iter().zip(&ys) {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="steelblue"/>"#, sx(*x), sy(*y));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::witt::BaseRing;
    use num_rational::Ratio;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn wv(p: u32, comps: &[&str]) -> WittVector {
        let b = BaseRing::poly(p, 1).unwrap();
        let cs = comps.iter().map(|s| parse_poly(s, b.coeff_ring(), 1).unwrap()).collect();
        WittVector::new(&b, cs).unwrap()
    }

    #[test]
    fn gauss_examples() {
        let nu = ValuationSpec::degree(1);
        assert_eq!(gauss_norm(&wv(2, &["T1", "0"]), &nu, &r(1, 1)).unwrap(), Ext::from_int(-1));
        assert_eq!(gauss_norm(&wv(2, &["0", "0"]), &nu, &r(1, 1)).unwrap(), Ext::PosInf);
        assert_eq!(gauss_norm(&wv(2, &["T1^2", "T1"]), &nu, &r(1, 1)).unwrap(), Ext::from_int(-2));
        assert_eq!(gauss_norm(&wv(2, &["T1"]), &nu, &r(0, 1)), Err(GaussError::BadEpsilon));
    }

    #[test]
    fn polygon_examples() {
        let nu = ValuationSpec::degree(1);
        // (-4, 0) and (-1, 1): the second point lies inside the quadrant
        // cornered at the first, so it is not a vertex
        let np = newton_polygon(&wv(2, &["T1^4", "T1^2"]), &nu).unwrap();
        assert_eq!(np.vertices, vec![(r(-4, 1), r(0, 1))]);
        assert_eq!(np.leftmost_x, r(-4, 1));
        let np = newton_polygon(&wv(2, &["T1", "T1", "T1"]), &nu).unwrap();
        assert_eq!(np.vertices, vec![(r(-1, 1), r(0, 1))]);
        let np = newton_polygon(&wv(2, &["1"]), &ValuationSpec::Trivial).unwrap();
        assert_eq!(np.vertices, vec![(r(0, 1), r(0, 1))]);
        assert_eq!(newton_polygon(&wv(2, &["0", "0"]), &nu), Err(GaussError::EmptyPolygon));
        // a genuine chain: (0, 0), (-4, 1), (-4, 2) -> vertices (-4, 1), (0, 0)
        let np = newton_polygon(&wv(2, &["1", "T1^8", "T1^16"]), &nu).unwrap();
        assert_eq!(np.vertices, vec![(r(-4, 1), r(1, 1)), (r(0, 1), r(0, 1))]);
    }

    #[test]
    fn hull_is_generic_and_drops_collinear_points() {
        let pts: Vec<(Ratio<i64>, Ratio<i64>)> = [(-6, 0), (-3, 0), (-8, 1), (-10, 2), (-9, 3), (-12, 4)]
            .iter()
            .map(|&(x, y)| (Ratio::from_integer(x), Ratio::from_integer(y)))
            .collect();
        let np = newton_polygon_of(&pts).unwrap();
        // (-8, 1) is collinear with (-10, 2) and (-6, 0); (-3, 0) is past the
        // lowest point
        let v: Vec<(i64, i64)> = np.vertices.iter().map(|(x, y)| (*x.numer(), *y.numer())).collect();
        assert_eq!(v, vec![(-12, 4), (-10, 2), (-6, 0)]);
        let collinear: Vec<(Ratio<i64>, Ratio<i64>)> = [(-4, 0), (-6, 1), (-8, 2)]
            .iter()
            .map(|&(x, y)| (Ratio::from_integer(x), Ratio::from_integer(y)))
            .collect();
        assert_eq!(newton_polygon_of(&collinear).unwrap().vertices.len(), 2);
    }

    #[test]
    fn radius_examples() {
        let nu = ValuationSpec::degree(1);
        let half = r(1, 2);
        assert_eq!(radius_certificate(&wv(2, &["1"]), &nu, &half).unwrap(), Some((r(1, 1), r(0, 1))));
        assert_eq!(radius_certificate(&wv(2, &["T1"]), &nu, &half).unwrap(), Some((r(1, 4), r(-1, 4))));
        assert_eq!(radius_certificate(&wv(2, &["0", "T1^4"]), &nu, &r(1, 1)).unwrap(), Some((half.clone(), r(0, 1))));
        assert_eq!(radius_certificate(&wv(2, &["0"]), &nu, &half).unwrap(), Some((r(1, 1), r(0, 1))));
        assert_eq!(radius_certificate(&wv(2, &["1"]), &nu, &r(0, 1)), Err(GaussError::BadDelta));
    }

    #[test]
    fn tsv_and_svg() {
        let nu = ValuationSpec::degree(1);
        let a = wv(2, &["1", "T1^8"]);
        let np = newton_polygon(&a, &nu).unwrap();
        assert_eq!(np.to_tsv(), "x\ty\n-4\t1\n0\t0\n");
        let svg = render_svg(&NormProfile::of(&a, &nu).unwrap(), &np);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }
}
