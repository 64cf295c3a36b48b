//! Coefficient rings for the coordinates of `O_D/ϖ^N`.
//!
//! Both rings are truncated to `M` digits in the uniformizer `π_F`:
//! `k_D[[t]]/t^M` in equal characteristic and `W(k_D)/p^M` (realized as
//! `(Z/p^M)[X]/(P)`) in unramified mixed characteristic. Elements are plain
//! `Vec<u64>`; the ring object knows how to read them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, FqElem};
use crate::numth::checked_pow;

pub type GElem = Vec<u64>;

/// `k_D[[t]]/t^M`; entry `k` is the packed `k_D`-coefficient of `t^k`.
#[derive(Debug, Clone)]
pub struct SeriesRing {
    field: Arc<FieldSpec>,
    m: usize,
}

/// `W(k_D)/p^M` as integer polynomials modulo the lifted residue modulus.
#[derive(Debug, Clone)]
pub struct WittRing {
    field: Arc<FieldSpec>,
    m: usize,
    pm: u64,
    modulus: Vec<u64>,
    /// `phi_pows[j][i]` is `φ^j(X^i)`.
    phi_pows: Vec<Vec<GElem>>,
    teich_table: Option<Vec<GElem>>,
}

#[derive(Debug, Clone)]
pub enum Ground {
    Series(SeriesRing),
    Witt(WittRing),
}

impl SeriesRing {
    pub fn new(field: Arc<FieldSpec>, m: usize) -> Self {
        SeriesRing { field, m }
    }

    fn fe(&self, v: u64) -> FqElem {
        FqElem(v as u32)
    }

    fn zero(&self) -> GElem {
        vec![0; self.m]
    }

    fn one(&self) -> GElem {
        let mut v = self.zero();
        if self.m > 0 {
            v[0] = 1;
        }
        v
    }

    fn add(&self, a: &GElem, b: &GElem) -> GElem {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(self.fe(x), self.fe(y)).0 as u64).collect()
    }

    fn neg(&self, a: &GElem) -> GElem {
        a.iter().map(|&x| self.field.neg(self.fe(x)).0 as u64).collect()
    }

    fn mul(&self, a: &GElem, b: &GElem) -> GElem {
        let k = &self.field;
        let mut out = self.zero();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate().take(self.m - i) {
                if y != 0 {
                    let t = k.mul(self.fe(x), self.fe(y));
                    out[i + j] = k.add(self.fe(out[i + j]), t).0 as u64;
                }
            }
        }
        out
    }

    fn frob(&self, a: &GElem, j: i64) -> GElem {
        a.iter().map(|&x| self.field.sigma(self.fe(x), j).0 as u64).collect()
    }

    fn teich(&self, c: FqElem) -> GElem {
        let mut v = self.zero();
        if self.m > 0 {
            v[0] = c.0 as u64;
        }
        v
    }

    fn digit(&self, a: &GElem, k: usize) -> FqElem {
        self.fe(a[k])
    }

    fn from_digits(&self, ds: &[FqElem]) -> GElem {
        let mut v = self.zero();
        for (slot, d) in v.iter_mut().zip(ds) {
            *slot = d.0 as u64;
        }
        v
    }

    fn valuation(&self, a: &GElem) -> usize {
        a.iter().position(|&x| x != 0).unwrap_or(self.m)
    }

    fn mul_pi_pow(&self, a: &GElem, k: usize) -> GElem {
        let mut v = self.zero();
        for i in k..self.m {
            v[i] = a[i - k];
        }
        v
    }

    fn div_pi_pow(&self, a: &GElem, k: usize) -> GElem {
        let mut v = self.zero();
        for i in k..self.m {
            v[i - k] = a[i];
        }
        v
    }

    fn inv(&self, a: &GElem) -> Result<GElem> {
        let k = &self.field;
        let a0 = self.fe(a[0]);
        let a0i = k.inv(a0).map_err(|_| Error::NotUnit)?;
        let mut b = vec![FqElem::ZERO; self.m];
        b[0] = a0i;
        for n in 1..self.m {
            let mut s = FqElem::ZERO;
            for i in 1..=n {
                s = k.add(s, k.mul(self.fe(a[i]), b[n - i]));
            }
            b[n] = k.neg(k.mul(a0i, s));
        }
        Ok(b.into_iter().map(|x| x.0 as u64).collect())
    }

    fn from_int(&self, v: i64) -> GElem {
        self.teich(self.field.from_int(v))
    }

    fn reduce(&self, a: &GElem, m: usize) -> GElem {
        a.iter().enumerate().map(|(i, &x)| if i < m { x } else { 0 }).collect()
    }

    fn is_pth_power_one_unit(&self, a: &GElem, m: usize) -> bool {
        let p = self.field.p() as usize;
        a[0] == 1 && (1..m.min(self.m)).filter(|k| k % p != 0).all(|k| a[k] == 0)
    }
}

impl WittRing {
    pub fn new(field: Arc<FieldSpec>, m: usize) -> Result<Self> {
        let p = field.p();
        let pm = checked_pow(p, m as u32)
            .filter(|&v| v < (1u64 << 62))
            .ok_or_else(|| Error::PrecisionBudget(format!("p^M = {p}^{m} does not fit the word size")))?;
        let modulus = field.modulus().to_vec();
        let mut ring = WittRing { field, m, pm, modulus, phi_pows: Vec::new(), teich_table: None };
        let n = ring.n();
        let d = ring.field.d() as i64;
        let x = {
            let mut v = vec![0u64; n];
            if n > 1 {
                v[1] = 1;
            } else {
                v[0] = ring.modulus[0].wrapping_neg() % p;
            }
            v
        };
        for j in 0..d {
            let root = ring.frobenius_root(&x, j)?;
            let mut pows = Vec::with_capacity(n);
            let mut cur = ring.one();
            for _ in 0..n {
                pows.push(cur.clone());
                cur = ring.mul(&cur, &root);
            }
            ring.phi_pows.push(pows);
        }
        if ring.field.order() <= 1 << 12 {
            let table: Vec<GElem> = ring.field.elements().map(|c| ring.teich_uncached(c)).collect();
            ring.teich_table = Some(table);
        }
        Ok(ring)
    }

    fn n(&self) -> usize {
        self.field.degree() as usize
    }

    pub fn pm(&self) -> u64 {
        self.pm
    }

    /// Root of the lifted modulus congruent to `σ^j(X)`, by Newton iteration.
    fn frobenius_root(&self, x: &GElem, j: i64) -> Result<GElem> {
        let k = &self.field;
        let xres = self.residue(x);
        let mut y = self.lift(k.sigma(xres, j));
        let deriv: Vec<u64> = (1..self.modulus.len()).map(|i| (self.modulus[i] * i as u64) % self.pm).collect();
        for _ in 0..(2 * self.m + 2) {
            let fy = self.eval_poly(&self.modulus, &y);
            if fy.iter().all(|&c| c == 0) {
                break;
            }
            let dfy = self.eval_poly(&deriv, &y);
            let step = self.mul(&fy, &self.inv(&dfy)?);
            y = self.sub(&y, &step);
        }
        if self.eval_poly(&self.modulus, &y).iter().any(|&c| c != 0) {
            return Err(Error::Precondition("Frobenius lift did not converge".into()));
        }
        Ok(y)
    }

    fn eval_poly(&self, coeffs: &[u64], y: &GElem) -> GElem {
        let mut acc = self.zero();
        for &c in coeffs.iter().rev() {
            acc = self.mul(&acc, y);
            acc[0] = (acc[0] + c % self.pm) % self.pm;
        }
        acc
    }

    fn lift(&self, c: FqElem) -> GElem {
        self.field.coeffs(c)
    }

    fn residue(&self, a: &GElem) -> FqElem {
        let p = self.field.p();
        self.field.from_coeffs(&a.iter().map(|&x| x % p).collect::<Vec<_>>())
    }

    fn zero(&self) -> GElem {
        vec![0; self.n()]
    }

    fn one(&self) -> GElem {
        let mut v = self.zero();
        v[0] = 1 % self.pm;
        v
    }

    fn add(&self, a: &GElem, b: &GElem) -> GElem {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.pm).collect()
    }

    fn sub(&self, a: &GElem, b: &GElem) -> GElem {
        a.iter().zip(b).map(|(&x, &y)| (x + self.pm - y) % self.pm).collect()
    }

    fn neg(&self, a: &GElem) -> GElem {
        a.iter().map(|&x| (self.pm - x) % self.pm).collect()
    }

    fn mul(&self, a: &GElem, b: &GElem) -> GElem {
        let n = self.n();
        let pm = self.pm as u128;
        let mut prod = vec![0u128; 2 * n - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % pm;
            }
        }
        for deg in (n..2 * n - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for (i, &mi) in self.modulus.iter().enumerate().take(n) {
                let idx = deg - n + i;
                prod[idx] = (prod[idx] + pm - c * mi as u128 % pm) % pm;
            }
            prod[deg] = 0;
        }
        prod.into_iter().take(n).map(|x| x as u64).collect()
    }

    fn pow(&self, a: &GElem, mut e: u64) -> GElem {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    fn frob(&self, a: &GElem, j: i64) -> GElem {
        let j = j.rem_euclid(self.field.d() as i64) as usize;
        if j == 0 {
            return a.clone();
        }
        let mut out = self.zero();
        for (i, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (slot, &y) in out.iter_mut().zip(&self.phi_pows[j][i]) {
                *slot = ((*slot as u128 + c as u128 * y as u128) % self.pm as u128) as u64;
            }
        }
        out
    }

    fn teich_uncached(&self, c: FqElem) -> GElem {
        if c.is_zero() {
            return self.zero();
        }
        let mut x = self.lift(c);
        for _ in 0..self.m {
            x = self.pow(&x, self.field.order());
        }
        x
    }

    fn teich(&self, c: FqElem) -> GElem {
        match &self.teich_table {
            Some(t) => t[c.0 as usize].clone(),
            None => self.teich_uncached(c),
        }
    }

    fn digit(&self, a: &GElem, k: usize) -> FqElem {
        let p = self.field.p();
        let pk = p.pow(k as u32);
        self.field.from_coeffs(&a.iter().map(|&x| (x / pk) % p).collect::<Vec<_>>())
    }

    fn from_digits(&self, ds: &[FqElem]) -> GElem {
        let p = self.field.p();
        let mut v = self.zero();
        let mut pk = 1u64;
        for d in ds.iter().take(self.m) {
            for (slot, c) in v.iter_mut().zip(self.lift(*d)) {
                *slot += c * pk;
            }
            pk *= p;
        }
        v
    }

    fn valuation(&self, a: &GElem) -> usize {
        let p = self.field.p();
        a.iter()
            .filter(|&&x| x != 0)
            .map(|&x| {
                let (mut v, mut x) = (0, x);
                while x % p == 0 {
                    x /= p;
                    v += 1;
                }
                v
            })
            .min()
            .unwrap_or(self.m)
    }

    fn mul_pi_pow(&self, a: &GElem, k: usize) -> GElem {
        if k >= self.m {
            return self.zero();
        }
        let pk = self.field.p().pow(k as u32);
        a.iter().map(|&x| ((x as u128 * pk as u128) % self.pm as u128) as u64).collect()
    }

    fn div_pi_pow(&self, a: &GElem, k: usize) -> GElem {
        if k >= self.m {
            return self.zero();
        }
        let pk = self.field.p().pow(k as u32);
        a.iter().map(|&x| x / pk).collect()
    }

    fn inv(&self, a: &GElem) -> Result<GElem> {
        let r = self.residue(a);
        let ri = self.field.inv(r).map_err(|_| Error::NotUnit)?;
        let mut b = self.lift(ri);
        let two = {
            let mut v = self.zero();
            v[0] = 2 % self.pm;
            v
        };
        let mut prec = 1;
        while prec < self.m {
            b = self.mul(&b, &self.sub(&two, &self.mul(a, &b)));
            prec *= 2;
        }
        Ok(b)
    }

    fn from_int(&self, v: i64) -> GElem {
        let mut out = self.zero();
        out[0] = v.rem_euclid(self.pm as i64) as u64;
        out
    }

    fn reduce(&self, a: &GElem, m: usize) -> GElem {
        if m >= self.m {
            return a.clone();
        }
        let pk = self.field.p().pow(m as u32);
        a.iter().map(|&x| x % pk).collect()
    }

    fn is_pth_power_one_unit(&self, a: &GElem, m: usize) -> bool {
        let k = m.min(self.m).min(2);
        let pk = self.field.p().pow(k as u32);
        let one = self.one();
        a.iter().zip(&one).all(|(&x, &y)| (x + self.pm - y) % self.pm % pk == 0)
    }
}

macro_rules! dispatch {
    ($self:ident, $g:ident => $e:expr) => {
        match $self {
            Ground::Series($g) => $e,
            Ground::Witt($g) => $e,
        }
    };
}

impl Ground {
    pub fn field(&self) -> &Arc<FieldSpec> {
        dispatch!(self, g => &g.field)
    }

    /// Number of `π_F`-adic digits kept.
    pub fn precision(&self) -> usize {
        dispatch!(self, g => g.m)
    }

    /// Length of an element vector.
    pub fn width(&self) -> usize {
        match self {
            Ground::Series(g) => g.m,
            Ground::Witt(g) => g.n(),
        }
    }

    pub fn zero(&self) -> GElem {
        dispatch!(self, g => g.zero())
    }
    pub fn one(&self) -> GElem {
        dispatch!(self, g => g.one())
    }
    pub fn add(&self, a: &GElem, b: &GElem) -> GElem {
        dispatch!(self, g => g.add(a, b))
    }
    pub fn neg(&self, a: &GElem) -> GElem {
        dispatch!(self, g => g.neg(a))
    }
    pub fn sub(&self, a: &GElem, b: &GElem) -> GElem {
        self.add(a, &self.neg(b))
    }
    pub fn mul(&self, a: &GElem, b: &GElem) -> GElem {
        dispatch!(self, g => g.mul(a, b))
    }

    pub fn pow(&self, a: &GElem, mut e: u64) -> GElem {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// `φ^j`, the lift of `σ^j`.
    pub fn frob(&self, a: &GElem, j: i64) -> GElem {
        dispatch!(self, g => g.frob(a, j))
    }

    pub fn teichmuller(&self, c: FqElem) -> GElem {
        dispatch!(self, g => g.teich(c))
    }

    /// `π_F` (`t` or `p`).
    pub fn uniformizer(&self) -> GElem {
        self.mul_pi_pow(&self.one(), 1)
    }

    /// The `k`-th `π_F`-adic digit.
    pub fn digit(&self, a: &GElem, k: usize) -> FqElem {
        dispatch!(self, g => g.digit(a, k))
    }

    pub fn digits(&self, a: &GElem) -> Vec<FqElem> {
        (0..self.precision()).map(|k| self.digit(a, k)).collect()
    }

    pub fn from_digits(&self, ds: &[FqElem]) -> GElem {
        dispatch!(self, g => g.from_digits(ds))
    }

    pub fn residue(&self, a: &GElem) -> FqElem {
        self.digit(a, 0)
    }

    /// `π_F`-adic valuation; equals the precision for zero.
    pub fn valuation(&self, a: &GElem) -> usize {
        dispatch!(self, g => g.valuation(a))
    }

    pub fn mul_pi_pow(&self, a: &GElem, k: usize) -> GElem {
        dispatch!(self, g => g.mul_pi_pow(a, k))
    }

    /// Exact division by `π_F^k`; low digits are discarded.
    pub fn div_pi_pow(&self, a: &GElem, k: usize) -> GElem {
        dispatch!(self, g => g.div_pi_pow(a, k))
    }

    pub fn is_unit(&self, a: &GElem) -> bool {
        !self.residue(a).is_zero()
    }

    pub fn inv(&self, a: &GElem) -> Result<GElem> {
        dispatch!(self, g => g.inv(a))
    }

    pub fn from_int(&self, v: i64) -> GElem {
        dispatch!(self, g => g.from_int(v))
    }

    /// Kill every digit at index `>= m`.
    pub fn reduce(&self, a: &GElem, m: usize) -> GElem {
        dispatch!(self, g => g.reduce(a, m))
    }

    /// For `a ∈ 1 + π_F O_F`: is `a` a `p`-th power in `(1 + π_F O_F)/π_F^m`?
    pub fn is_pth_power_one_unit(&self, a: &GElem, m: usize) -> bool {
        dispatch!(self, g => g.is_pth_power_one_unit(a, m))
    }

    pub fn is_equal_char(&self) -> bool {
        matches!(self, Ground::Series(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn witt(p: u64, d: u32, m: usize) -> Ground {
        Ground::Witt(WittRing::new(Arc::new(make_field(p, 1, d, 1).unwrap()), m).unwrap())
    }

    fn series(p: u64, d: u32, m: usize) -> Ground {
        Ground::Series(SeriesRing::new(Arc::new(make_field(p, 1, d, 1).unwrap()), m))
    }

    #[test]
    fn frobenius_lift_reduces_to_sigma_and_has_order_d() {
        for g in [witt(5, 2, 4), witt(7, 3, 3), series(2, 3, 4)] {
            let k = g.field().clone();
            let d = k.d() as i64;
            for c in k.elements() {
                let t = g.teichmuller(c);
                assert_eq!(g.residue(&g.frob(&t, 1)), k.sigma(c, 1));
                assert_eq!(g.frob(&t, 1), g.teichmuller(k.sigma(c, 1)));
            }
            let a = g.from_digits(&k.elements().take(4).collect::<Vec<_>>());
            assert_eq!(g.frob(&a, d), a);
            let b = g.from_digits(&k.elements().skip(3).take(4).collect::<Vec<_>>());
            assert_eq!(g.frob(&g.mul(&a, &b), 1), g.mul(&g.frob(&a, 1), &g.frob(&b, 1)));
        }
    }

    #[test]
    fn teichmuller_is_multiplicative() {
        let g = witt(5, 2, 4);
        let k = g.field().clone();
        for x in k.elements() {
            for y in k.elements().step_by(5) {
                assert_eq!(g.mul(&g.teichmuller(x), &g.teichmuller(y)), g.teichmuller(k.mul(x, y)));
            }
        }
    }

    #[test]
    fn inverse_and_digits() {
        for g in [witt(5, 2, 4), series(3, 2, 5)] {
            let k = g.field().clone();
            let ds: Vec<FqElem> = k.nonzero().take(g.precision()).collect();
            let a = g.from_digits(&ds);
            assert_eq!(g.digits(&a), ds);
            assert_eq!(g.mul(&a, &g.inv(&a).unwrap()), g.one());
            assert_eq!(g.inv(&g.uniformizer()), Err(Error::NotUnit));
            assert_eq!(g.valuation(&g.mul_pi_pow(&a, 2)), 2);
            assert_eq!(g.div_pi_pow(&g.mul_pi_pow(&g.one(), 3), 3), g.one());
        }
    }

    #[test]
    fn pth_power_predicate() {
        let g = series(2, 3, 6);
        // (1+t)^2 = 1+t^2
        let mut a = g.one();
        a[2] = 1;
        assert!(g.is_pth_power_one_unit(&a, 6));
        a[3] = 1;
        assert!(!g.is_pth_power_one_unit(&a, 6));
        assert!(g.is_pth_power_one_unit(&a, 3));
        let w = witt(5, 2, 4);
        let u = w.add(&w.one(), &w.uniformizer());
        assert!(w.is_pth_power_one_unit(&w.pow(&u, 5), 4));
        assert!(!w.is_pth_power_one_unit(&u, 4));
    }
}
