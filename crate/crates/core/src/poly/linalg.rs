//! Exact linear algebra over polynomial rings: fraction-free determinants and
//! solving systems whose determinant is a unit.

use super::{div_exact, MultiPoly, PolyError};

/// Row-major square matrix of polynomials.
pub type Matrix = Vec<Vec<MultiPoly>>;

/// Bareiss fraction-free elimination; every intermediate division is exact.
pub fn determinant(m: &Matrix) -> Result<MultiPoly, PolyError> {
    let n = m.len();
    let (ring, nvars) = match m.first().and_then(|r| r.first()) {
        Some(e) => (e.ring(), e.nvars()),
        None => panic!("determinant of an empty matrix needs a ring context"),
    };
    let mut a = m.clone();
    let mut prev = MultiPoly::one(ring, nvars);
    let mut negate = false;
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(MultiPoly::zero(ring, nvars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = div_exact(&num, &prev)?.expect("Bareiss division is exact");
            }
            a[i][k] = MultiPoly::zero(ring, nvars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}

/// Solves `m·x = b` by Cramer's rule when `det m` is a unit constant.
pub fn solve_unimodular(m: &Matrix, b: &[MultiPoly]) -> Result<Vec<MultiPoly>, PolyError> {
    let det = determinant(m)?;
    let ring = det.ring();
    let inv = det
        .as_constant()
        .and_then(|c| ring.inverse(&c))
        .ok_or_else(|| PolyError::Singular { det: det.to_string() })?;
    (0..m.len())
        .map(|col| {
            let mut mi = m.clone();
            for (row, v) in mi.iter_mut().zip(b) {
                row[col] = v.clone();
            }
            Ok(determinant(&mi)?.scale(&inv))
        })
        .collect()
}
