//! Finite field tower arithmetic for `k_F = F_q ⊂ k_D = F_{q^d}`.
//!
//! The residue field `k_D` is realized once as `F_p[X]/(P)` with `P` the
//! lexicographically least monic irreducible polynomial of degree `df`.
//! Subfields are never materialized: `x ∈ F_{q^a}` iff `x^{q^a} = x`.
//! Elements are packed integers (base-`p` digits are the coefficients of
//! `1, X, X^2, …`), and multiplication goes through a discrete-log table.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, FieldOps, PrimeField, Subspace};
use crate::numth::{checked_pow, gcd, is_prime, mul_mod, pow_mod, prime_factors, solve_linear_congruence};

/// Default cap on `p^{df}` for the discrete-log table.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 24;

/// The integer data `(p, f, d, r)` of a residue tower, with `q = p^f` and
/// `σ = x ↦ x^{q^r}` generating `Gal(k_D/k_F)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub p: u64,
    pub f: u32,
    pub d: u32,
    pub r: u32,
}

impl Params {
    pub fn new(p: u64, f: u32, d: u32, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f == 0 || d == 0 {
            return Err(Error::InvalidParameter("f and d must be positive".into()));
        }
        if gcd(p, d as u64) != 1 {
            return Err(Error::NotCoprime { what: "p", value: p, d });
        }
        if r == 0 || gcd(r as u64, d as u64) != 1 {
            return Err(Error::NotCoprime { what: "r", value: r as u64, d });
        }
        let n = d.checked_mul(f).ok_or_else(|| Error::InvalidParameter("df overflows".into()))?;
        match checked_pow(p, n) {
            Some(v) if v < (1u64 << 62) => {}
            _ => return Err(Error::InvalidParameter(format!("p^(df) = {p}^{n} is too large"))),
        }
        Ok(Params { p, f, d, r })
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.f)
    }

    /// `[k_D : F_p] = df`.
    pub fn degree(&self) -> u32 {
        self.d * self.f
    }

    /// `|k_D| = q^d`.
    pub fn residue_order(&self) -> u64 {
        self.p.pow(self.degree())
    }

    /// `|k_D^×| = q^d - 1`.
    pub fn unit_order(&self) -> u64 {
        self.residue_order() - 1
    }
}

/// Packed element of `k_D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FqElem(pub u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum H90Mode {
    Mult,
    Add,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    params: Params,
    n: u32,
    order: u64,
    modulus: Vec<u64>,
    generator: FqElem,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// `make_field(p, f, d, r)` with the default table cap.
pub fn make_field(p: u64, f: u32, d: u32, r: u32) -> Result<FieldSpec> {
    FieldSpec::new(Params::new(p, f, d, r)?, DEFAULT_TABLE_CAP)
}

impl FieldSpec {
    pub fn new(params: Params, table_cap: u64) -> Result<Self> {
        let n = params.degree();
        let order = params.residue_order();
        if order > table_cap || order > u32::MAX as u64 {
            return Err(Error::TableCap { size: order, cap: table_cap.min(u32::MAX as u64) });
        }
        let p = params.p;
        let modulus = least_irreducible(p, n as usize);
        let generator = least_primitive(p, &modulus, order);
        let gen_coeffs = unpack(generator.0, p, n as usize);
        let mut exp = Vec::with_capacity((order - 1) as usize);
        let mut log = vec![0u32; order as usize];
        let mut cur = vec![0u64; n as usize];
        cur[0] = 1;
        for k in 0..order - 1 {
            let packed = pack(&cur, p);
            exp.push(packed);
            log[packed as usize] = k as u32;
            cur = poly_mulmod_sparse(&cur, &gen_coeffs, &modulus, p);
        }
        Ok(FieldSpec { params, n, order, modulus, generator, exp, log })
    }

    /// Plain `F_{p^n}` (used as a working field by the invariants oracle).
    pub fn with_degree(p: u64, n: u32, table_cap: u64) -> Result<Self> {
        FieldSpec::new(Params::new(p, n, 1, 1)?, table_cap)
    }

    pub fn params(&self) -> Params {
        self.params
    }
    pub fn p(&self) -> u64 {
        self.params.p
    }
    pub fn q(&self) -> u64 {
        self.params.q()
    }
    pub fn d(&self) -> u32 {
        self.params.d
    }
    /// `[k_D : F_p]`.
    pub fn degree(&self) -> u32 {
        self.n
    }
    pub fn order(&self) -> u64 {
        self.order
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    pub fn generator(&self) -> FqElem {
        self.generator
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }
    pub fn one(&self) -> FqElem {
        FqElem::ONE
    }

    pub fn from_int(&self, v: i64) -> FqElem {
        FqElem(v.rem_euclid(self.p() as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> FqElem {
        let mut c: Vec<u64> = coeffs.iter().map(|x| x % self.p()).collect();
        c.resize(self.n as usize, 0);
        FqElem(pack(&c, self.p()))
    }

    pub fn coeffs(&self, x: FqElem) -> Vec<u64> {
        unpack(x.0, self.p(), self.n as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.order as u32).map(FqElem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FqElem> + '_ {
        (1..self.order as u32).map(FqElem)
    }

    /// `F_p`-basis `1, X, …, X^{df-1}`.
    pub fn basis(&self) -> Vec<FqElem> {
        (0..self.n).map(|i| FqElem(self.p().pow(i) as u32)).collect()
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let p = self.p() as u32;
        if p == 2 {
            return FqElem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        FqElem(out)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        let p = self.p() as u32;
        if p == 2 {
            return a;
        }
        let mut x = a.0;
        let (mut out, mut place) = (0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        FqElem(out)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    /// `c · a` for an integer scalar `c`.
    pub fn scale(&self, c: u64, a: FqElem) -> FqElem {
        self.mul(self.from_int((c % self.p()) as i64), a)
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.is_zero() || b.is_zero() {
            return FqElem::ZERO;
        }
        let m = self.order - 1;
        let k = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % m;
        FqElem(self.exp[k as usize])
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let m = self.order - 1;
        let k = (m - self.log[a.0 as usize] as u64) % m;
        Ok(FqElem(self.exp[k as usize]))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FqElem, e: u64) -> FqElem {
        if e == 0 {
            return FqElem::ONE;
        }
        if a.is_zero() {
            return FqElem::ZERO;
        }
        let m = self.order - 1;
        let k = mul_mod(self.log[a.0 as usize] as u64, e % m, m);
        FqElem(self.exp[k as usize])
    }

    /// `g^k` for the fixed generator.
    pub fn exp(&self, k: u64) -> FqElem {
        FqElem(self.exp[(k % (self.order - 1)) as usize])
    }

    pub fn dlog(&self, x: FqElem) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.log[x.0 as usize] as u64)
    }

    /// `x^{p^k}`.
    pub fn frob_p(&self, x: FqElem, k: u32) -> FqElem {
        if x.is_zero() {
            return x;
        }
        let m = self.order - 1;
        self.pow(x, pow_mod(self.p(), k as u64, m))
    }

    /// `σ^j(x) = x^{q^{rj}}`; negative `j` allowed.
    pub fn sigma(&self, x: FqElem, j: i64) -> FqElem {
        if x.is_zero() {
            return x;
        }
        let d = self.d() as i64;
        let jj = j.rem_euclid(d) as u64;
        let m = self.order - 1;
        let e = pow_mod(self.q(), self.params.r as u64 * jj, m);
        self.pow(x, e)
    }

    fn check_divisor(&self, a: u32) -> Result<()> {
        if a == 0 || self.d() % a != 0 {
            return Err(Error::NotDivisor { a, d: self.d() });
        }
        Ok(())
    }

    pub fn norm(&self, x: FqElem, a: u32) -> Result<FqElem> {
        self.check_divisor(a)?;
        let q = self.q();
        let e = (q.pow(self.d()) - 1) / (q.pow(a) - 1);
        Ok(self.pow(x, e))
    }

    pub fn trace(&self, x: FqElem, a: u32) -> Result<FqElem> {
        self.check_divisor(a)?;
        let m = self.order - 1;
        let qa = self.q().pow(a);
        let mut acc = FqElem::ZERO;
        let mut cur = x;
        for _ in 0..self.d() / a {
            acc = self.add(acc, cur);
            if !cur.is_zero() {
                cur = self.pow(cur, qa % m);
                if qa % m == 0 {
                    cur = self.pow(cur, m);
                }
            }
        }
        Ok(acc)
    }

    /// `(Nm_{k_D/F_{q^a}}(x), Tr_{k_D/F_{q^a}}(x))`.
    pub fn norm_trace(&self, x: FqElem, a: u32) -> Result<(FqElem, FqElem)> {
        Ok((self.norm(x, a)?, self.trace(x, a)?))
    }

    /// Membership in the degree-`a` subfield `F_{q^a}`.
    pub fn in_subfield(&self, x: FqElem, a: u32) -> bool {
        if x.is_zero() {
            return true;
        }
        let e = self.q().pow(a) % (self.order - 1);
        let e = if e == 0 { self.order - 1 } else { e };
        self.pow(x, e) == x
    }

    /// True when `x` lies in no proper subfield `F_{q^a}`, `a | d`, `a < d`.
    pub fn generates_over_base(&self, x: FqElem) -> bool {
        let d = self.d();
        (1..d).filter(|a| d % a == 0).all(|a| !self.in_subfield(x, a))
    }

    /// Solve `x / σ(x) = c` (mult) or `σ(x) - x = c` (add).
    pub fn hilbert90(&self, c: FqElem, mode: H90Mode) -> Result<FqElem> {
        match mode {
            H90Mode::Mult => {
                if c.is_zero() || self.norm(c, 1)? != FqElem::ONE {
                    return Err(Error::Precondition("multiplicative Hilbert 90 needs Nm(c) = 1".into()));
                }
                // x/σ(x) = x^{1 - q^r}: solve k (1 - q^r) ≡ log c in the exponent group.
                let m = self.order - 1;
                let qr = pow_mod(self.q(), self.params.r as u64, m);
                let coef = (m + 1 - qr) % m;
                let k = solve_linear_congruence(coef, self.dlog(c)?, m)
                    .ok_or_else(|| Error::Precondition("no multiplicative solution".into()))?;
                Ok(self.exp(k))
            }
            H90Mode::Add => {
                if self.trace(c, 1)? != FqElem::ZERO {
                    return Err(Error::Precondition("additive Hilbert 90 needs Tr(c) = 0".into()));
                }
                let fp = self.prime_field();
                let cols: Vec<Vec<u64>> = self
                    .basis()
                    .into_iter()
                    .map(|b| self.coeffs(self.sub(self.sigma(b, 1), b)))
                    .collect();
                let m = transpose(&cols);
                let x = linalg::solve(&fp, &m, &self.coeffs(c))
                    .ok_or_else(|| Error::Precondition("no additive solution".into()))?;
                Ok(self.from_coeffs(&x))
            }
        }
    }

    /// `φ_{i,y}(x) = σ(x) y - x σ^i(y)`.
    pub fn phi_map(&self, i: i64, y: FqElem, x: FqElem) -> FqElem {
        self.sub(self.mul(self.sigma(x, 1), y), self.mul(x, self.sigma(y, i)))
    }

    /// The image of `φ_{i,y}` as an `F_p`-subspace of `k_D`.
    pub fn phi_image(&self, i: i64, y: FqElem) -> Subspace<u64> {
        let vectors: Vec<Vec<u64>> =
            self.basis().into_iter().map(|b| self.coeffs(self.phi_map(i, y, b))).collect();
        self.span(&vectors)
    }

    /// A `k_F`-basis of the image of `φ_{i,y}`.
    pub fn phi_image_basis(&self, i: i64, y: FqElem) -> Vec<FqElem> {
        self.kf_basis(&self.phi_image(i, y))
    }

    pub fn prime_field(&self) -> PrimeField {
        PrimeField { p: self.p() }
    }

    pub fn span(&self, vectors: &[Vec<u64>]) -> Subspace<u64> {
        Subspace::span(&self.prime_field(), self.n as usize, vectors)
    }

    pub fn span_elems(&self, elems: &[FqElem]) -> Subspace<u64> {
        let v: Vec<Vec<u64>> = elems.iter().map(|&x| self.coeffs(x)).collect();
        self.span(&v)
    }

    /// `ker Tr_{k_D/k_F}` as an `F_p`-subspace.
    pub fn trace_kernel(&self) -> Subspace<u64> {
        let cols: Vec<Vec<u64>> = self
            .basis()
            .into_iter()
            .map(|b| self.coeffs(self.trace(b, 1).expect("1 | d")))
            .collect();
        let m = transpose(&cols);
        let ns = linalg::nullspace(&self.prime_field(), &m, self.n as usize);
        self.span(&ns)
    }

    pub fn full_space(&self) -> Subspace<u64> {
        let v: Vec<Vec<u64>> = self.basis().into_iter().map(|b| self.coeffs(b)).collect();
        self.span(&v)
    }

    /// `F_p`-basis of `k_F` inside `k_D`.
    pub fn base_field_basis(&self) -> Vec<FqElem> {
        let m = self.order - 1;
        let gamma = self.exp(m / (self.q() - 1));
        (0..self.params.f).map(|i| self.pow(gamma, i as u64)).collect()
    }

    /// Greedy `k_F`-basis of a `k_F`-stable `F_p`-subspace.
    pub fn kf_basis(&self, sub: &Subspace<u64>) -> Vec<FqElem> {
        let kf = self.base_field_basis();
        let mut chosen = Vec::new();
        let mut covered: Vec<Vec<u64>> = Vec::new();
        for v in &sub.basis {
            let x = self.from_coeffs(v);
            let cur = self.span(&covered);
            if cur.contains(&self.prime_field(), v) {
                continue;
            }
            chosen.push(x);
            for &c in &kf {
                covered.push(self.coeffs(self.mul(c, x)));
            }
        }
        chosen
    }
}

impl FieldOps for FieldSpec {
    type E = FqElem;
    fn zero(&self) -> FqElem {
        FqElem::ZERO
    }
    fn one(&self) -> FqElem {
        FqElem::ONE
    }
    fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        FieldSpec::add(self, a, b)
    }
    fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        FieldSpec::sub(self, a, b)
    }
    fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        FieldSpec::mul(self, a, b)
    }
    fn inv(&self, a: FqElem) -> Option<FqElem> {
        FieldSpec::inv(self, a).ok()
    }
}

pub(crate) fn transpose(cols: &[Vec<u64>]) -> Vec<Vec<u64>> {
    if cols.is_empty() {
        return Vec::new();
    }
    let rows = cols[0].len();
    (0..rows).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

fn pack(coeffs: &[u64], p: u64) -> u32 {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32
}

fn unpack(mut v: u32, p: u64, n: usize) -> Vec<u64> {
    let mut out = vec![0u64; n];
    for slot in out.iter_mut() {
        *slot = v as u64 % p;
        v /= p as u32;
    }
    out
}

// ---- polynomials over F_p (low-to-high coefficients) -----------------------

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    if a.is_empty() {
        a.push(0);
    }
    a
}

fn is_zero_poly(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = crate::numth::mod_inverse(m[dm], p).expect("nonzero leading coefficient");
    while r.len() > dm && !is_zero_poly(&r) {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = dr - dm + i;
                r[idx] = (r[idx] + p - c * mi % p) % p;
            }
        }
        r.pop();
        r = trim(r);
        if r.len() <= dm {
            break;
        }
    }
    r
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect()
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !is_zero_poly(&b) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), m, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

/// Multiply `a` by a (typically sparse, low-degree) `g` modulo monic `m`,
/// keeping a fixed-length coefficient vector.
fn poly_mulmod_sparse(a: &[u64], g: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let n = a.len();
    let prod = poly_mul(a, g, p);
    let r = poly_rem(&prod, m, p);
    let mut out = vec![0u64; n];
    for (i, c) in r.into_iter().enumerate().take(n) {
        out[i] = c;
    }
    out
}

/// Rabin's irreducibility test for a monic polynomial of degree `n`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    let x = vec![0u64, 1];
    let frob_power = |k: usize| {
        let mut h = poly_rem(&x, f, p);
        for _ in 0..k {
            h = poly_powmod(&h, p, f, p);
        }
        h
    };
    if trim(poly_sub(&frob_power(n), &x, p)) != vec![0] {
        return false;
    }
    for l in prime_factors(n as u64) {
        let h = poly_sub(&frob_power(n / l as usize), &x, p);
        let g = poly_gcd(f, &h, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree `n`, comparing the
/// coefficient sequence from `X^{n-1}` down to `X^0`.
fn least_irreducible(p: u64, n: usize) -> Vec<u64> {
    let total = p.pow(n as u32);
    for k in 0..total {
        let mut f = unpack(k as u32, p, n);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn least_primitive(p: u64, modulus: &[u64], order: u64) -> FqElem {
    let n = modulus.len() - 1;
    let m = order - 1;
    let factors = prime_factors(m);
    for g in 1..order {
        let coeffs = unpack(g as u32, p, n);
        let ok = factors.iter().all(|&l| trim(poly_powmod(&coeffs, m / l, modulus, p)) != vec![1]);
        if ok && (m > 1 || g == 1) {
            return FqElem(g as u32);
        }
    }
    FqElem(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_are_forced() {
        let f = make_field(2, 1, 3, 1).unwrap();
        assert_eq!(f.order(), 8);
        assert_eq!(f.q(), 2);
        let f = make_field(3, 1, 2, 1).unwrap();
        assert_eq!(f.order(), 9);
        assert_eq!(f.q(), 3);
    }

    #[test]
    fn construction_is_deterministic() {
        assert_eq!(make_field(2, 1, 3, 1).unwrap(), make_field(2, 1, 3, 1).unwrap());
        // x^3 + x + 1 is the least irreducible cubic over F_2.
        assert_eq!(make_field(2, 1, 3, 1).unwrap().modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn bad_parameters_rejected() {
        assert_eq!(make_field(4, 1, 3, 1), Err(Error::NotPrime(4)));
        assert!(matches!(make_field(2, 1, 2, 1), Err(Error::NotCoprime { what: "p", .. })));
        assert!(matches!(make_field(3, 1, 2, 2), Err(Error::NotCoprime { what: "r", .. })));
        assert!(matches!(
            FieldSpec::new(Params::new(3, 1, 4, 1).unwrap(), 50),
            Err(Error::TableCap { .. })
        ));
    }

    #[test]
    fn generator_has_full_order() {
        for (p, f, d) in [(2, 1, 3), (3, 1, 2), (2, 2, 3), (5, 1, 2), (3, 1, 4)] {
            let k = make_field(p, f, d, 1).unwrap();
            let g = k.generator();
            let m = k.order() - 1;
            assert_eq!(k.pow(g, m), FqElem::ONE);
            for l in prime_factors(m) {
                assert_ne!(k.pow(g, m / l), FqElem::ONE);
            }
        }
    }

    #[test]
    fn sigma_examples() {
        let k = make_field(2, 1, 3, 1).unwrap();
        let g = k.generator();
        assert_eq!(k.sigma(g, 3), g);
        assert_eq!(k.sigma(g, 1), k.mul(g, g));
        assert_eq!(k.sigma(FqElem::ONE, 1), FqElem::ONE);
    }

    #[test]
    fn sigma_fixed_points_are_base_field() {
        for (p, f, d, r) in [(2, 1, 3, 1), (2, 2, 3, 2), (3, 1, 4, 3), (5, 1, 2, 1)] {
            let k = make_field(p, f, d, r).unwrap();
            let fixed = k.elements().filter(|&x| k.sigma(x, 1) == x).count() as u64;
            assert_eq!(fixed, k.q());
            for x in k.elements() {
                let mut y = x;
                for _ in 0..d {
                    y = k.sigma(y, 1);
                }
                assert_eq!(y, x);
            }
        }
    }

    #[test]
    fn norm_of_generator_f8() {
        let k = make_field(2, 1, 3, 1).unwrap();
        assert_eq!(k.norm(k.generator(), 1).unwrap(), FqElem::ONE);
        assert_eq!(k.norm(k.generator(), 2), Err(Error::NotDivisor { a: 2, d: 3 }));
    }

    #[test]
    fn trace_surjects_f9() {
        let k = make_field(3, 1, 2, 1).unwrap();
        let mut image: Vec<FqElem> = k.elements().map(|x| k.trace(x, 1).unwrap()).collect();
        image.sort();
        image.dedup();
        assert_eq!(image.len(), 3);
        assert!(image.iter().all(|&t| k.in_subfield(t, 1)));
    }

    #[test]
    fn norm_matches_power_for_all_divisors() {
        let k = make_field(5, 1, 4, 1).unwrap();
        for a in [1u32, 2, 4] {
            let e = (625 - 1) / (5u64.pow(a) - 1);
            for x in k.nonzero() {
                let (nm, tr) = k.norm_trace(x, a).unwrap();
                assert_eq!(nm, k.pow(x, e));
                assert!(k.in_subfield(nm, a) && k.in_subfield(tr, a));
            }
        }
    }

    #[test]
    fn hilbert90_identity_cases() {
        let k = make_field(2, 1, 3, 1).unwrap();
        let x = k.hilbert90(FqElem::ONE, H90Mode::Mult).unwrap();
        assert_eq!(k.div(x, k.sigma(x, 1)).unwrap(), FqElem::ONE);
        assert_eq!(k.hilbert90(FqElem::ZERO, H90Mode::Add).unwrap(), FqElem::ZERO);
    }

    #[test]
    fn hilbert90_mult_against_search() {
        let k = make_field(2, 1, 3, 1).unwrap();
        let g = k.generator();
        let c = k.div(g, k.sigma(g, 1)).unwrap();
        let x = k.hilbert90(c, H90Mode::Mult).unwrap();
        assert_eq!(k.div(x, k.sigma(x, 1)).unwrap(), c);
        // brute force over the 7 nonzero elements: solution set is x·k_F^×
        let sols: Vec<_> = k.nonzero().filter(|&y| k.div(y, k.sigma(y, 1)).unwrap() == c).collect();
        assert_eq!(sols.len() as u64, k.q() - 1);
        assert!(sols.contains(&x));
    }

    #[test]
    fn hilbert90_solution_counts_exhaustive() {
        for (p, f, d, r) in [(2, 1, 3, 1), (3, 1, 2, 1), (2, 2, 3, 1), (5, 1, 2, 1), (2, 1, 5, 2)] {
            let k = make_field(p, f, d, r).unwrap();
            for c in k.nonzero().filter(|&c| k.norm(c, 1).unwrap() == FqElem::ONE) {
                let x = k.hilbert90(c, H90Mode::Mult).unwrap();
                assert_eq!(k.div(x, k.sigma(x, 1)).unwrap(), c);
                let n = k.nonzero().filter(|&y| k.div(y, k.sigma(y, 1)).unwrap() == c).count() as u64;
                assert_eq!(n, k.q() - 1);
            }
            for c in k.elements().filter(|&c| k.trace(c, 1).unwrap() == FqElem::ZERO) {
                let x = k.hilbert90(c, H90Mode::Add).unwrap();
                assert_eq!(k.sub(k.sigma(x, 1), x), c);
                let n = k.elements().filter(|&y| k.sub(k.sigma(y, 1), y) == c).count() as u64;
                assert_eq!(n, k.q());
            }
            let bad = k.elements().find(|&c| k.trace(c, 1).unwrap() != FqElem::ZERO).unwrap();
            assert!(k.hilbert90(bad, H90Mode::Add).is_err());
        }
    }

    #[test]
    fn phi_image_examples() {
        let k = make_field(2, 1, 3, 1).unwrap();
        assert_eq!(k.phi_image(1, FqElem::ZERO).dim(), 0);
        assert_eq!(k.phi_image(1, FqElem::ONE), k.trace_kernel());
        // enumerate all 8 inputs for y = g, i = 1
        let g = k.generator();
        let mut img: Vec<_> = k.elements().map(|x| k.phi_map(1, g, x)).collect();
        img.sort();
        img.dedup();
        assert_eq!(img.len(), 4);
    }

    #[test]
    fn phi_image_codimension_one() {
        for (p, f, d, r) in [(2, 1, 3, 1), (3, 1, 2, 1), (2, 2, 3, 1), (3, 1, 4, 3)] {
            let k = make_field(p, f, d, r).unwrap();
            let ker = k.trace_kernel();
            for i in 0..=(2 * d as i64) {
                for y in k.nonzero().step_by(3) {
                    let img = k.phi_image(i, y);
                    assert_eq!(img.dim() as u32, k.degree() - f);
                    // ker(Tr) · ∏_{0≤j≤i} σ^j(y)
                    let mut prod = FqElem::ONE;
                    for j in 0..=i {
                        prod = k.mul(prod, k.sigma(y, j));
                    }
                    let scaled: Vec<FqElem> =
                        ker.basis.iter().map(|v| k.mul(k.from_coeffs(v), prod)).collect();
                    assert_eq!(k.span_elems(&scaled), img);
                    assert_eq!(k.phi_image_basis(i, y).len() as u32, d - 1);
                }
            }
        }
    }

    #[test]
    fn dlog_examples() {
        let k = make_field(3, 1, 2, 1).unwrap();
        assert_eq!(k.dlog(FqElem::ONE).unwrap(), 0);
        assert_eq!(k.dlog(k.generator()).unwrap(), 1);
        assert_eq!(k.dlog(FqElem::ZERO), Err(Error::ZeroElement));
    }
}
