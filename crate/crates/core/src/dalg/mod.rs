//! Truncated arithmetic in `O_D/ϖ^N`.
//!
//! An element is `Σ_{j<d} a_j ϖ^j` with `a_j` in the ground ring `O_E/π_F^M`
//! (`E` the unramified degree-`d` extension of `F`). Multiplication uses
//! `ϖ a = φ(a) ϖ` and `ϖ^d = π_F`.

pub mod ground;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use ground::{GElem, Ground, SeriesRing, WittRing};

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, FqElem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    EqualChar,
    MixedUnramified,
}

/// `O_D/π_F^M` for a fixed residue tower and mode.
#[derive(Debug, Clone)]
pub struct Algebra {
    ground: Ground,
    mode: Mode,
    d: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DAlgElem {
    pub coords: Vec<GElem>,
}

impl Algebra {
    /// `m` is the number of `π_F`-adic digits per coordinate, so the
    /// `ϖ`-adic precision is `d·m`.
    pub fn new(field: Arc<FieldSpec>, mode: Mode, m: usize) -> Result<Self> {
        let d = field.d() as usize;
        if d < 2 {
            return Err(Error::InvalidParameter("a division algebra needs d >= 2".into()));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("precision must be positive".into()));
        }
        let ground = match mode {
            Mode::EqualChar => Ground::Series(SeriesRing::new(field, m)),
            Mode::MixedUnramified => {
                if field.p() <= d as u64 + 1 {
                    return Err(Error::InvalidParameter(format!(
                        "mixed characteristic needs p > d + 1 (p = {}, d = {d})",
                        field.p()
                    )));
                }
                Ground::Witt(WittRing::new(field, m)?)
            }
        };
        Ok(Algebra { ground, mode, d })
    }

    /// The same algebra at a different digit precision.
    pub fn with_precision(&self, m: usize) -> Result<Self> {
        Algebra::new(self.field().clone(), self.mode, m)
    }

    pub fn ground(&self) -> &Ground {
        &self.ground
    }
    pub fn field(&self) -> &Arc<FieldSpec> {
        self.ground.field()
    }
    pub fn mode(&self) -> Mode {
        self.mode
    }
    pub fn d(&self) -> usize {
        self.d
    }
    /// Digits per coordinate.
    pub fn precision(&self) -> usize {
        self.ground.precision()
    }
    /// `ϖ`-adic precision `N = d·M`.
    pub fn level(&self) -> usize {
        self.d * self.precision()
    }

    /// Check that externally built coordinates fit this algebra.
    pub fn element(&self, coords: Vec<GElem>) -> Result<DAlgElem> {
        if coords.len() != self.d {
            return Err(Error::PrecisionMismatch { left: coords.len(), right: self.d });
        }
        let w = self.ground.width();
        if let Some(c) = coords.iter().find(|c| c.len() != w) {
            return Err(Error::PrecisionMismatch { left: c.len(), right: w });
        }
        Ok(DAlgElem { coords })
    }

    fn check(&self, x: &DAlgElem) -> Result<()> {
        self.element(x.coords.clone()).map(|_| ())
    }

    pub fn zero(&self) -> DAlgElem {
        DAlgElem { coords: vec![self.ground.zero(); self.d] }
    }

    pub fn one(&self) -> DAlgElem {
        self.scalar(self.ground.one())
    }

    /// A ground-ring element placed in coordinate 0.
    pub fn scalar(&self, a: GElem) -> DAlgElem {
        let mut x = self.zero();
        x.coords[0] = a;
        x
    }

    pub fn from_int(&self, v: i64) -> DAlgElem {
        self.scalar(self.ground.from_int(v))
    }

    pub fn teichmuller(&self, c: FqElem) -> DAlgElem {
        self.scalar(self.ground.teichmuller(c))
    }

    /// `ϖ`.
    pub fn uniformizer(&self) -> DAlgElem {
        self.monomial(FqElem::ONE, 1)
    }

    /// `π_F = ϖ^d`.
    pub fn pi_f(&self) -> DAlgElem {
        self.scalar(self.ground.uniformizer())
    }

    /// `[c] ϖ^i`.
    pub fn monomial(&self, c: FqElem, i: usize) -> DAlgElem {
        let mut x = self.zero();
        let t = self.ground.teichmuller(c);
        x.coords[i % self.d] = self.ground.mul_pi_pow(&t, i / self.d);
        x
    }

    /// `1 + [c] ϖ^i`.
    pub fn one_plus(&self, c: FqElem, i: usize) -> DAlgElem {
        self.add(&self.one(), &self.monomial(c, i))
    }

    pub fn add(&self, x: &DAlgElem, y: &DAlgElem) -> DAlgElem {
        let g = &self.ground;
        DAlgElem { coords: x.coords.iter().zip(&y.coords).map(|(a, b)| g.add(a, b)).collect() }
    }

    pub fn neg(&self, x: &DAlgElem) -> DAlgElem {
        DAlgElem { coords: x.coords.iter().map(|a| self.ground.neg(a)).collect() }
    }

    pub fn sub(&self, x: &DAlgElem, y: &DAlgElem) -> DAlgElem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &DAlgElem, y: &DAlgElem) -> DAlgElem {
        let g = &self.ground;
        let d = self.d;
        let mut out = self.zero();
        for (j, a) in x.coords.iter().enumerate() {
            if a.iter().all(|&c| c == 0) {
                continue;
            }
            for (k, b) in y.coords.iter().enumerate() {
                if b.iter().all(|&c| c == 0) {
                    continue;
                }
                let mut t = g.mul(a, &g.frob(b, j as i64));
                let mut idx = j + k;
                if idx >= d {
                    idx -= d;
                    t = g.mul_pi_pow(&t, 1);
                }
                out.coords[idx] = g.add(&out.coords[idx], &t);
            }
        }
        out
    }

    pub fn checked_add(&self, x: &DAlgElem, y: &DAlgElem) -> Result<DAlgElem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add(x, y))
    }

    pub fn checked_mul(&self, x: &DAlgElem, y: &DAlgElem) -> Result<DAlgElem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn is_unit(&self, x: &DAlgElem) -> bool {
        self.ground.is_unit(&x.coords[0])
    }

    /// Newton iteration `y ← y(2 - xy)` from the inverse of the leading coordinate.
    pub fn inv(&self, x: &DAlgElem) -> Result<DAlgElem> {
        let a0i = self.ground.inv(&x.coords[0])?;
        let mut y = self.scalar(a0i);
        let two = self.from_int(2);
        let mut prec = 1;
        while prec < self.level() {
            y = self.mul(&y, &self.sub(&two, &self.mul(x, &y)));
            prec *= 2;
        }
        debug_assert_eq!(self.mul(x, &y), self.one());
        Ok(y)
    }

    pub fn pow(&self, x: &DAlgElem, n: i64) -> Result<DAlgElem> {
        let base = if n < 0 { self.inv(x)? } else { x.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        Ok(acc)
    }

    /// `x y x^{-1} y^{-1}`.
    pub fn commutator(&self, x: &DAlgElem, y: &DAlgElem) -> Result<DAlgElem> {
        let xy = self.mul(x, y);
        Ok(self.mul(&self.mul(&xy, &self.inv(x)?), &self.inv(y)?))
    }

    /// `g x g^{-1}`.
    pub fn conjugate(&self, g: &DAlgElem, x: &DAlgElem) -> Result<DAlgElem> {
        Ok(self.mul(&self.mul(g, x), &self.inv(g)?))
    }

    /// The `k_D`-digit at `ϖ`-position `i`, i.e. digit `i / d` of coordinate `i mod d`.
    pub fn digit(&self, x: &DAlgElem, i: usize) -> Result<FqElem> {
        if i >= self.level() {
            return Err(Error::DigitOutOfRange { index: i, precision: self.level() });
        }
        Ok(self.ground.digit(&x.coords[i % self.d], i / self.d))
    }

    /// All `ϖ`-adic digits below `n`.
    pub fn digits(&self, x: &DAlgElem, n: usize) -> Vec<FqElem> {
        (0..n.min(self.level())).map(|i| self.ground.digit(&x.coords[i % self.d], i / self.d)).collect()
    }

    /// Inverse of [`Algebra::digits`] (missing digits are zero).
    pub fn from_digits(&self, ds: &[FqElem]) -> DAlgElem {
        let m = self.precision();
        let coords = (0..self.d)
            .map(|j| {
                let col: Vec<FqElem> =
                    (0..m).map(|k| ds.get(j + k * self.d).copied().unwrap_or(FqElem::ZERO)).collect();
                self.ground.from_digits(&col)
            })
            .collect();
        DAlgElem { coords }
    }

    /// Smallest `ϖ`-exponent with a nonzero digit; `None` for zero.
    pub fn valuation(&self, x: &DAlgElem) -> Option<usize> {
        let m = self.precision();
        x.coords
            .iter()
            .enumerate()
            .filter_map(|(j, a)| {
                let v = self.ground.valuation(a);
                (v < m).then_some(j + self.d * v)
            })
            .min()
    }

    /// Reduce modulo `ϖ^n`.
    pub fn truncate(&self, x: &DAlgElem, n: usize) -> DAlgElem {
        let coords = x
            .coords
            .iter()
            .enumerate()
            .map(|(j, a)| {
                let keep = if n > j { (n - j).div_ceil(self.d) } else { 0 };
                self.ground.reduce(a, keep)
            })
            .collect();
        DAlgElem { coords }
    }

    /// `x ∈ I_i = 1 + ϖ^i O_D` at the working precision.
    pub fn in_level(&self, x: &DAlgElem, i: usize) -> bool {
        match self.valuation(&self.sub(x, &self.one())) {
            None => true,
            Some(v) => v >= i,
        }
    }

    /// Left-multiplication determinant over `E` on the right basis `{ϖ^k}`.
    pub fn reduced_norm(&self, x: &DAlgElem) -> Result<GElem> {
        let g = &self.ground;
        let d = self.d;
        let mut mat = vec![vec![g.zero(); d]; d];
        for (j, a) in x.coords.iter().enumerate() {
            for k in 0..d {
                let s = j + k;
                let mut e = g.frob(a, -(s as i64));
                if s >= d {
                    e = g.mul_pi_pow(&e, 1);
                }
                mat[s % d][k] = e;
            }
        }
        determinant(g, mat)
    }

    /// `Σ a_j ϖ^j` with ground elements given as digit lists per coordinate.
    pub fn to_json(&self, x: &DAlgElem) -> Value {
        let k = self.field();
        Value::Array(
            x.coords
                .iter()
                .map(|a| {
                    Value::Array(
                        self.ground
                            .digits(a)
                            .into_iter()
                            .map(|c| Value::from(k.coeffs(c)))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn from_json(&self, v: &Value) -> Result<DAlgElem> {
        let bad = || Error::Parse("expected [d][M][df] integer array".into());
        let k = self.field();
        let coords = v.as_array().ok_or_else(bad)?;
        if coords.len() != self.d {
            return Err(Error::PrecisionMismatch { left: coords.len(), right: self.d });
        }
        let mut out = Vec::with_capacity(self.d);
        for c in coords {
            let digits = c.as_array().ok_or_else(bad)?;
            if digits.len() != self.precision() {
                return Err(Error::PrecisionMismatch { left: digits.len(), right: self.precision() });
            }
            let mut ds = Vec::new();
            for dv in digits {
                let coeffs: Vec<u64> = dv
                    .as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|n| n.as_u64().ok_or_else(bad))
                    .collect::<Result<_>>()?;
                if coeffs.len() != k.degree() as usize {
                    return Err(bad());
                }
                ds.push(k.from_coeffs(&coeffs));
            }
            out.push(self.ground.from_digits(&ds));
        }
        Ok(DAlgElem { coords: out })
    }
}

/// Determinant over the local ground ring, pivoting on units.
fn determinant(g: &Ground, mut m: Vec<Vec<GElem>>) -> Result<GElem> {
    let n = m.len();
    let mut det = g.one();
    for c in 0..n {
        let pr = (c..n).find(|&r| g.is_unit(&m[r][c])).ok_or(Error::NotUnit)?;
        if pr != c {
            m.swap(pr, c);
            det = g.neg(&det);
        }
        let pinv = g.inv(&m[c][c])?;
        for r in c + 1..n {
            let factor = g.mul(&m[r][c], &pinv);
            if factor.iter().all(|&v| v == 0) {
                continue;
            }
            for k in c..n {
                let t = g.mul(&factor, &m[c][k]);
                m[r][k] = g.sub(&m[r][k], &t);
            }
        }
        det = g.mul(&det, &m[c][c]);
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn alg(p: u64, f: u32, d: u32, mode: Mode, m: usize) -> Algebra {
        Algebra::new(Arc::new(make_field(p, f, d, 1).unwrap()), mode, m).unwrap()
    }

    #[test]
    fn twist_law_and_uniformizer_power() {
        for a in [alg(2, 1, 3, Mode::EqualChar, 3), alg(5, 1, 2, Mode::MixedUnramified, 3)] {
            let k = a.field().clone();
            let w = a.uniformizer();
            for c in k.elements() {
                let lhs = a.mul(&w, &a.teichmuller(c));
                let rhs = a.mul(&a.teichmuller(k.sigma(c, 1)), &w);
                assert_eq!(lhs, rhs);
            }
            assert_eq!(a.pow(&w, a.d() as i64).unwrap(), a.pi_f());
            assert_eq!(a.valuation(&a.pi_f()), Some(a.d()));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = alg(2, 1, 3, Mode::EqualChar, 4);
        let g = a.field().generator();
        let x = a.one_plus(g, 1);
        assert_eq!(a.mul(&a.inv(&x).unwrap(), &x), a.one());
        assert_eq!(a.inv(&a.uniformizer()), Err(Error::NotUnit));
    }

    #[test]
    fn digits_and_char_p_binomial() {
        let a = alg(2, 1, 3, Mode::EqualChar, 4);
        let k = a.field().clone();
        let g = k.generator();
        let x = a.one_plus(g, 1);
        assert_eq!(a.digit(&a.sub(&x, &a.one()), 1).unwrap(), g);
        let sq = a.pow(&x, 2).unwrap();
        assert_eq!(sq, a.one_plus(k.mul(g, k.sigma(g, 1)), 2));
        assert!(a.digit(&x, 12).is_err());
        let ds: Vec<FqElem> = (0..12u32).map(|i| FqElem((i * 5 + 3) % 8)).collect();
        assert_eq!(a.digits(&a.from_digits(&ds), 12), ds);
    }

    #[test]
    fn commutator_second_digit() {
        for a in [alg(2, 1, 3, Mode::EqualChar, 2), alg(3, 1, 2, Mode::EqualChar, 2), alg(5, 1, 2, Mode::MixedUnramified, 2)] {
            let k = a.field().clone();
            for x in k.elements() {
                for y in k.elements() {
                    let c = a.commutator(&a.one_plus(x, 1), &a.one_plus(y, 1)).unwrap();
                    let expect = k.sub(k.mul(x, k.sigma(y, 1)), k.mul(k.sigma(x, 1), y));
                    assert_eq!(a.digit(&c, 2).unwrap(), expect);
                    assert!(a.in_level(&c, 2));
                }
            }
        }
    }

    #[test]
    fn reduced_norm_examples() {
        for a in [alg(2, 1, 3, Mode::EqualChar, 3), alg(5, 1, 2, Mode::MixedUnramified, 3), alg(3, 1, 2, Mode::EqualChar, 3)] {
            let k = a.field().clone();
            let g = a.ground().clone();
            for c in k.nonzero() {
                let n = a.reduced_norm(&a.teichmuller(c)).unwrap();
                assert_eq!(n, g.teichmuller(k.norm(c, 1).unwrap()));
            }
            let c = a.add(&a.from_int(1), &a.pi_f());
            let expect = g.pow(&c.coords[0], a.d() as u64);
            assert_eq!(a.reduced_norm(&c).unwrap(), expect);
            assert_eq!(a.reduced_norm(&a.uniformizer()), Err(Error::NotUnit));
        }
    }

    #[test]
    fn truncation_keeps_low_digits() {
        let a = alg(3, 1, 2, Mode::EqualChar, 3);
        let k = a.field().clone();
        let ds: Vec<FqElem> = k.nonzero().take(6).collect();
        let x = a.from_digits(&ds);
        let t = a.truncate(&x, 3);
        assert_eq!(a.digits(&t, 6)[..3], ds[..3]);
        assert!(a.digits(&t, 6)[3..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn json_roundtrip() {
        let a = alg(5, 1, 2, Mode::MixedUnramified, 3);
        let x = a.one_plus(a.field().generator(), 1);
        let v = a.to_json(&x);
        assert_eq!(a.from_json(&v).unwrap(), x);
        let b = alg(5, 1, 2, Mode::MixedUnramified, 2);
        assert!(b.from_json(&v).is_err());
    }

    #[test]
    fn mixed_needs_large_p() {
        let k = Arc::new(make_field(3, 1, 2, 1).unwrap());
        assert!(Algebra::new(k, Mode::MixedUnramified, 2).is_err());
    }
}
