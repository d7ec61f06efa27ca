//! Finite étale extensions `B = A[T]/(f)` of `A = F_p` or `A = F_p[S]`:
//! coordinates in the bases `1, t^{p^n}, …, t^{(m-1)p^n}` and expansion of
//! Witt vectors over `B` in powers of `x = [t]` with coefficients in `W(A)`.

use crate::poly::{determinant, solve_unimodular, Matrix, MultiPoly, PolyError, QuotElem};
use crate::pseudoval::{default_quotient_d, ValError, ValuationSpec};
use crate::scalar::{ext_min, Ext};
use crate::witt::{BaseRing, WittError, WittVector};
use crate::{ExtRat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EtaleError {
    #[error("f'(t) is not a unit in the extension")]
    NotEtale,
    #[error("basis matrix at level {level} is not invertible over the base (determinant {det})")]
    NotEtaleAtLevel { level: u32, det: String },
    #[error("supplied witness g does not satisfy f'(t)·g = 1")]
    BadWitness,
    #[error("unsupported base: {0}")]
    UnsupportedBase(&'static str),
    #[error(transparent)]
    Witt(#[from] WittError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Val(#[from] ValError),
}

/// `B = A[T]/(f)` with `f` monic of degree `m` in the last variable and
/// `f'(t)` a unit with stored inverse.
#[derive(Debug, Clone)]
pub struct EtaleExt {
    base: BaseRing,
    ext: BaseRing,
    witness: MultiPoly,
    level_matrix: Matrix,
}

impl EtaleExt {
    /// Finds the witness by inverting `f'(t)` in `B`.
    pub fn new(f: &MultiPoly) -> Result<Self, EtaleError> {
        let ext = BaseRing::quotient(f)?;
        if ext.nvars() > 2 {
            return Err(EtaleError::UnsupportedBase("the base may have at most one variable"));
        }
        let df = ext.reduce(&f.derivative(f.nvars() - 1))?;
        let witness = match ext.inverse(&df) {
            Ok(g) => g,
            Err(WittError::NotAUnit) => return Err(EtaleError::NotEtale),
            Err(e) => return Err(e.into()),
        };
        Self::with_witness(f, &witness)
    }

    /// Uses a supplied inverse `g` of `f'(t)`, checked by multiplication.
    pub fn with_witness(f: &MultiPoly, g: &MultiPoly) -> Result<Self, EtaleError> {
        let ext = BaseRing::quotient(f)?;
        let base = BaseRing::poly(ext.p(), ext.nvars() - 1)?;
        let df = ext.reduce(&f.derivative(f.nvars() - 1))?;
        let witness = ext.reduce(g)?;
        if !ext.mul(&df, &witness).is_one() {
            return Err(EtaleError::BadWitness);
        }
        let level_matrix = level_matrix(&ext)?;
        Ok(EtaleExt { base, ext, witness, level_matrix })
    }

    /// The base ring `A`.
    pub fn base(&self) -> &BaseRing {
        &self.base
    }

    /// The extension ring `B`.
    pub fn ext(&self) -> &BaseRing {
        &self.ext
    }

    pub fn modulus(&self) -> &MultiPoly {
        self.ext.modulus().expect("quotient")
    }

    pub fn degree(&self) -> usize {
        self.ext.extension_degree().expect("quotient")
    }

    pub fn p(&self) -> u32 {
        self.ext.p()
    }

    pub fn witness(&self) -> &MultiPoly {
        &self.witness
    }

    /// `U = (u_{ji})` with `t^i = Σ_j u_{ji} t^{jp}`.
    pub fn level_matrix(&self) -> &Matrix {
        &self.level_matrix
    }

    /// The residue class `t` of the last variable.
    pub fn t(&self) -> MultiPoly {
        MultiPoly::var(self.ext.coeff_ring(), self.ext.nvars(), self.ext.nvars() - 1)
    }

    /// `A → B`.
    pub fn embed(&self, a: &MultiPoly) -> MultiPoly {
        a.extend_vars(self.ext.nvars())
    }

    /// `W(A) → W(B)`.
    pub fn embed_witt(&self, xi: &WittVector) -> Result<WittVector, EtaleError> {
        Ok(xi.map_components(&self.ext, |c| self.embed(c))?)
    }
}

fn level_matrix(ext: &BaseRing) -> Result<Matrix, EtaleError> {
    let f = ext.modulus().expect("quotient").clone();
    let m = ext.extension_degree().expect("quotient");
    let t = MultiPoly::var(ext.coeff_ring(), ext.nvars(), ext.nvars() - 1);
    let tp = ext.pow(&t, ext.p() as u64);
    // column j = coordinates of t^{jp}
    let mut cols = Vec::with_capacity(m);
    let mut cur = ext.one();
    for _ in 0..m {
        cols.push(QuotElem::new(&cur, &f)?.coords());
        cur = ext.mul(&cur, &tp);
    }
    let p1: Matrix = (0..m).map(|r| (0..m).map(|c| cols[c][r].clone()).collect()).collect();
    let unit = |i: usize| -> Vec<MultiPoly> {
        let a = BaseRing::poly(ext.p(), ext.nvars() - 1).expect("prime checked");
        (0..m).map(|r| if r == i { a.one() } else { a.zero() }).collect()
    };
    let mut u = vec![Vec::with_capacity(m); m];
    for i in 0..m {
        let col = solve_unimodular(&p1, &unit(i)).map_err(|e| match e {
            PolyError::Singular { det } => EtaleError::NotEtaleAtLevel { level: 1, det },
            other => other.into(),
        })?;
        for (j, x) in col.into_iter().enumerate() {
            u[j].push(x);
        }
    }
    debug_assert!(determinant(&u).map(|d| d.as_constant().is_some()).unwrap_or(false));
    Ok(u)
}

/// Coordinates `a_{n,i}` with `b = Σ_i a_{n,i} t^{i p^n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisCoords {
    pub level: u32,
    pub coords: Vec<MultiPoly>,
}

fn t_power_basis(ext: &EtaleExt, n: u32) -> Vec<MultiPoly> {
    let b = &ext.ext;
    let mut tq = ext.t();
    for _ in 0..n {
        tq = b.frobenius(&tq);
    }
    let mut out = Vec::with_capacity(ext.degree());
    let mut cur = b.one();
    for _ in 0..ext.degree() {
        out.push(cur.clone());
        cur = b.mul(&cur, &tq);
    }
    out
}

/// Recombines `Σ_i a_i t^{i p^n}` in `B`.
pub fn recombine_coords(c: &BasisCoords, ext: &EtaleExt) -> MultiPoly {
    let b = &ext.ext;
    t_power_basis(ext, c.level)
        .iter()
        .zip(&c.coords)
        .fold(b.zero(), |acc, (tq, a)| &acc + &b.mul(&ext.embed(a), tq))
}

/// `a(n) = U^{(p^{n-1})}···U·a(0)`, checked by recombination.
pub fn power_basis_coords(b: &MultiPoly, ext: &EtaleExt, n: u32) -> Result<BasisCoords, EtaleError> {
    let elem = ext.ext.reduce(b)?;
    let m = ext.degree();
    let a_ring = &ext.base;
    let mut coords = QuotElem::new(&elem, ext.modulus())?.coords();
    let mut u = ext.level_matrix.clone();
    for _ in 0..n {
        coords = (0..m)
            .map(|j| (0..m).fold(a_ring.zero(), |acc, i| &acc + &(&u[j][i] * &coords[i])))
            .collect();
        for row in u.iter_mut() {
            for x in row.iter_mut() {
                *x = a_ring.frobenius(x);
            }
        }
    }
    let out = BasisCoords { level: n, coords };
    if recombine_coords(&out, ext) != elem {
        let det = determinant(&ext.level_matrix)?;
        return Err(EtaleError::NotEtaleAtLevel { level: n, det: det.to_string() });
    }
    Ok(out)
}

/// Constants of the coordinate estimate `ν(a_{ni}) ≥ ν(b) - p^n G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateBound {
    /// `C = max(0, -ν(U))`.
    pub c: Rat,
    /// `G = C/(p-1)`.
    pub g: Rat,
    /// Quotient valuation on `B` used for `ν(b)`.
    pub ext_spec: ValuationSpec,
}

impl CoordinateBound {
    pub fn new(ext: &EtaleExt, inner: &ValuationSpec) -> Result<Self, EtaleError> {
        let mut vals = Vec::new();
        for row in &ext.level_matrix {
            for x in row {
                vals.push(inner.eval(x)?);
            }
        }
        let nu_u = ext_min(vals);
        let c = match nu_u {
            Ext::Finite(v) if v < Rat::from_integer(0.into()) => -v,
            _ => Rat::from_integer(0.into()),
        };
        let g = &c / Rat::from_integer((ext.p() - 1).into());
        let d = default_quotient_d(inner, ext.modulus())?;
        let ext_spec = ValuationSpec::monic_quotient(inner.clone(), d, ext.modulus().clone())?;
        Ok(CoordinateBound { c, g, ext_spec })
    }

    /// `ν(b) - p^n G`.
    pub fn threshold(&self, ext: &EtaleExt, b: &MultiPoly, n: u32) -> Result<ExtRat, EtaleError> {
        let nu_b = self.ext_spec.eval(&ext.ext.reduce(b)?)?;
        let scale = Rat::from_integer(num_bigint::BigInt::from(ext.p()).pow(n));
        Ok(nu_b + Ext::Finite(-(scale * &self.g)))
    }

    /// Checks the estimate for the level-`n` coordinates of `b`.
    pub fn check(&self, ext: &EtaleExt, b: &MultiPoly, n: u32) -> Result<bool, EtaleError> {
        let inner = match &self.ext_spec {
            ValuationSpec::MonicQuotient { inner, .. } => inner,
            _ => unreachable!("constructed as a quotient"),
        };
        let bound = self.threshold(ext, b, n)?;
        let coords = power_basis_coords(b, ext, n)?;
        for a in &coords.coords {
            if inner.eval(a)? < bound {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `η = Σ_i ξ_i x^i` with `x = [t]`, `ξ_i ∈ W(A)`.
///
/// At V-level `s` the leading component of the residual is written in the
/// basis `t^{i p^s}`, and `Σ_i V^s[a_{s,i} t^{i p^s}]` is subtracted.
pub fn etale_basis_expand(eta: &WittVector, ext: &EtaleExt) -> Result<Vec<WittVector>, EtaleError> {
    if eta.base() != &ext.ext {
        return Err(WittError::Mismatch.into());
    }
    let (n, m) = (eta.len(), ext.degree());
    let b = &ext.ext;
    let mut xi = vec![vec![ext.base.zero(); n]; m];
    let mut y = eta.clone();
    #[allow(clippy::needless_range_loop)]
    for s in 0..n {
        let lead = y.component(0).clone();
        if !lead.is_zero() {
            let coords = power_basis_coords(&lead, ext, s as u32)?;
            let basis = t_power_basis(ext, s as u32);
            let mut lifts = Vec::with_capacity(m);
            for (i, a) in coords.coords.iter().enumerate() {
                xi[i][s] = a.clone();
                if !a.is_zero() {
                    let term = b.mul(&ext.embed(a), &basis[i]);
                    lifts.push(WittVector::teichmuller(b, &term, n - s)?);
                }
            }
            y = y.sub(&WittVector::sum(b, n - s, &lifts)?)?;
            debug_assert!(y.component(0).is_zero());
        }
        if s + 1 < n {
            y = WittVector::new(b, y.comps()[1..].to_vec())?;
        }
    }
    xi.into_iter().map(|cs| Ok(WittVector::new(&ext.base, cs)?)).collect()
}

/// `Σ_i ξ_i x^i` in `W(B)`.
pub fn etale_recombine(xi: &[WittVector], ext: &EtaleExt) -> Result<WittVector, EtaleError> {
    let n = xi.first().map_or(0, |x| x.len());
    let x = WittVector::teichmuller(&ext.ext, &ext.t(), n)?;
    let mut acc = WittVector::zero(&ext.ext, n);
    let mut xp = WittVector::one(&ext.ext, n);
    for c in xi {
        acc = acc.add(&ext.embed_witt(c)?.mul(&xp)?)?;
        xp = xp.mul(&x)?;
    }
    Ok(acc)
}
