//! `p`-th roots in `I_1` and the splitting `I_1 = (1 + π_F O_F) × I_{1,Nrd=1}`.

use crate::dalg::{Algebra, DAlgElem, GElem, Mode};
use crate::error::{Error, Result};
use crate::gf::FqElem;
use crate::numth::{checked_pow, factorial_valuation, mod_inverse, mul_mod};

/// Default node budget for the equal-characteristic digit search.
pub const DEFAULT_ROOT_BUDGET: usize = 1 << 16;

/// Extracts `p`-th roots in a fixed algebra.
///
/// Mixed characteristic evaluates `Σ binom(1/p, n) y^n` in a padded-precision
/// copy of the algebra. Equal characteristic searches the digits of `x` with
/// `x^p = y`, using that `x mod ϖ^k` fixes `x^p mod ϖ^{k+p-1}`.
#[derive(Debug, Clone)]
pub struct PthRoot {
    alg: Algebra,
    padded: Option<Algebra>,
    terms: Vec<(usize, u64, u32)>,
    budget: usize,
}

impl PthRoot {
    pub fn new(alg: &Algebra) -> Result<Self> {
        let p = alg.field().p();
        let d = alg.d();
        let m = alg.precision();
        if alg.mode() == Mode::EqualChar {
            return Ok(PthRoot { alg: alg.clone(), padded: None, terms: Vec::new(), budget: DEFAULT_ROOT_BUDGET });
        }
        // Term n has ϖ-valuation ≥ n(d+1) - d·k_n with k_n = n + v_p(n!).
        let mut raw = Vec::new();
        let mut n = 1usize;
        loop {
            let k = n + factorial_valuation(n as u64, p) as usize;
            let lower = n as i64 * (d as i64 + 1) - d as i64 * k as i64;
            let tail = n as i64 * (p as i64 - 1 - d as i64) / (p as i64 - 1);
            if tail >= (d * m) as i64 {
                break;
            }
            if lower < (d * m) as i64 {
                raw.push((n, k));
            }
            n += 1;
        }
        let pad = raw.iter().map(|&(_, k)| k).max().unwrap_or(0);
        let total = m + pad;
        let pm = checked_pow(p, total as u32)
            .filter(|&v| v < (1u64 << 62))
            .ok_or_else(|| Error::PrecisionBudget(format!("series needs p^{total}")))?;
        // binom(1/p, n) = Π_{i<n}(1 - ip) / (p^n n!) = unit / p^{k_n}.
        let mut terms = Vec::new();
        for (n, k) in raw {
            let mut num = 1u64;
            for i in 0..n as u64 {
                num = mul_mod(num, (1 + pm - mul_mod(i, p, pm)) % pm, pm);
            }
            let mut unit = 1u64;
            for j in 1..=n as u64 {
                let mut j = j;
                while j % p == 0 {
                    j /= p;
                }
                unit = mul_mod(unit, j, pm);
            }
            let coef = mul_mod(num, mod_inverse(unit, pm).expect("prime-to-p"), pm);
            terms.push((n, coef, k as u32));
        }
        let padded = alg.with_precision(total)?;
        Ok(PthRoot { alg: alg.clone(), padded: Some(padded), terms, budget: DEFAULT_ROOT_BUDGET })
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn series_terms(&self) -> usize {
        self.terms.len()
    }

    /// `z ∈ I_1` with `z^p ≡ 1 + y` at the working precision.
    pub fn root(&self, y: &DAlgElem) -> Result<DAlgElem> {
        match &self.padded {
            Some(padded) => self.root_mixed(padded, y),
            None => self.root_equal(y),
        }
    }

    fn root_mixed(&self, padded: &Algebra, y: &DAlgElem) -> Result<DAlgElem> {
        let alg = &self.alg;
        let d = alg.d();
        if let Some(v) = alg.valuation(y) {
            if v < d + 1 {
                return Err(Error::Precondition(format!(
                    "1 + y must lie in I_{} (y has valuation {v})",
                    d + 1
                )));
            }
        }
        let pg = padded.ground();
        let yp = DAlgElem { coords: y.coords.clone() };
        let mut acc = padded.one();
        let mut power = padded.one();
        let mut last = 0;
        for &(n, coef, k) in &self.terms {
            for _ in last..n {
                power = padded.mul(&power, &yp);
            }
            last = n;
            let coords = power
                .coords
                .iter()
                .map(|a| {
                    let q = pg.div_pi_pow(a, k as usize);
                    pg.mul(&q, &pg.from_int(coef as i64))
                })
                .collect();
            acc = padded.add(&acc, &DAlgElem { coords });
        }
        let m = alg.precision();
        Ok(DAlgElem { coords: acc.coords.iter().map(|a| pg.reduce(a, m)).collect() })
    }

    fn root_equal(&self, y: &DAlgElem) -> Result<DAlgElem> {
        let alg = &self.alg;
        let n = alg.level();
        let p = alg.field().p() as usize;
        let target = alg.add(&alg.one(), y);
        let v = alg.valuation(y);
        if v.is_none() {
            return Ok(alg.one());
        }
        // Only x mod ϖ^{N-p+1} matters; positions 1..=N-p.
        let depth = (n + 1).saturating_sub(p);
        let q = alg.field().order() as u32;
        let mut digits = vec![FqElem::ZERO; n];
        digits[0] = FqElem::ONE;
        let mut nodes = 0usize;
        let found = self.search_equal(&target, &mut digits, 1, depth, q, p, &mut nodes)?;
        if !found {
            return Err(Error::NotFound("no p-th root exists for this element".into()));
        }
        Ok(alg.from_digits(&digits))
    }

    #[allow(clippy::too_many_arguments)]
    fn search_equal(
        &self,
        target: &DAlgElem,
        digits: &mut Vec<FqElem>,
        pos: usize,
        depth: usize,
        q: u32,
        p: usize,
        nodes: &mut usize,
    ) -> Result<bool> {
        let alg = &self.alg;
        let n = alg.level();
        if pos >= depth {
            let z = alg.from_digits(digits);
            return Ok(alg.pow(&z, p as i64)? == *target);
        }
        for c in 0..q {
            *nodes += 1;
            if *nodes > self.budget {
                return Err(Error::PrecisionBudget("p-th root search budget exhausted".into()));
            }
            digits[pos] = FqElem(c);
            let z = alg.from_digits(digits);
            let zp = alg.pow(&z, p as i64)?;
            let check = (pos + p).min(n);
            if alg.truncate(&zp, check) == alg.truncate(target, check)
                && self.search_equal(target, digits, pos + 1, depth, q, p, nodes)?
            {
                return Ok(true);
            }
        }
        digits[pos] = FqElem::ZERO;
        Ok(false)
    }
}

/// `x = u·v` with `u ∈ 1 + π_F O_F` central and `Nrd(v) = 1`.
pub fn nrd1_decompose(alg: &Algebra, x: &DAlgElem) -> Result<(GElem, DAlgElem)> {
    let nrd = alg.reduced_norm(x)?;
    let u = dth_root_one_unit(alg, &nrd)?;
    let v = alg.mul(x, &alg.inv(&alg.scalar(u.clone()))?);
    Ok((u, v))
}

/// Newton iteration for `U^d = a` starting from `U = 1`.
fn dth_root_one_unit(alg: &Algebra, a: &GElem) -> Result<GElem> {
    let g = alg.ground();
    let d = alg.d() as u64;
    let dd = g.from_int(d as i64);
    let mut u = g.one();
    for _ in 0..(4 * alg.precision() + 8) {
        let f = g.sub(&g.pow(&u, d), a);
        if f.iter().all(|&c| c == 0) {
            return Ok(u);
        }
        let deriv = g.mul(&dd, &g.pow(&u, d - 1));
        u = g.sub(&u, &g.mul(&f, &g.inv(&deriv)?));
    }
    if g.sub(&g.pow(&u, d), a).iter().all(|&c| c == 0) {
        Ok(u)
    } else {
        Err(Error::Precondition("reduced norm is not a d-th power of a one-unit".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use std::sync::Arc;

    fn alg(p: u64, d: u32, mode: Mode, m: usize) -> Algebra {
        Algebra::new(Arc::new(make_field(p, 1, d, 1).unwrap()), mode, m).unwrap()
    }

    #[test]
    fn trivial_root() {
        for a in [alg(5, 2, Mode::MixedUnramified, 3), alg(2, 3, Mode::EqualChar, 2)] {
            let r = PthRoot::new(&a).unwrap();
            assert_eq!(r.root(&a.zero()).unwrap(), a.one());
        }
    }

    #[test]
    fn mixed_roundtrip() {
        let a = alg(5, 2, Mode::MixedUnramified, 3);
        let r = PthRoot::new(&a).unwrap();
        let g = a.field().generator();
        let u = a.mul(&a.one_plus(g, 1), &a.one_plus(a.field().from_int(2), 2));
        let up = a.pow(&u, 5).unwrap();
        assert!(a.in_level(&up, 3));
        let z = r.root(&a.sub(&up, &a.one())).unwrap();
        assert_eq!(a.pow(&z, 5).unwrap(), up);
        let bad = a.monomial(g, 1);
        assert!(matches!(r.root(&bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn equal_roundtrip() {
        let a = alg(2, 3, Mode::EqualChar, 2);
        let r = PthRoot::new(&a).unwrap();
        let g = a.field().generator();
        let u = a.mul(&a.one_plus(g, 1), &a.one_plus(g, 3));
        let up = a.pow(&u, 2).unwrap();
        let z = r.root(&a.sub(&up, &a.one())).unwrap();
        assert_eq!(a.pow(&z, 2).unwrap(), up);
    }

    #[test]
    fn decomposition_roundtrip() {
        let a = alg(2, 3, Mode::EqualChar, 2);
        let k = a.field().clone();
        let g = k.generator();
        let x = a.mul(&a.one_plus(g, 1), &a.one_plus(k.from_int(1), 3));
        let (u, v) = nrd1_decompose(&a, &x).unwrap();
        assert_eq!(a.mul(&a.scalar(u), &v), x);
        assert_eq!(a.reduced_norm(&v).unwrap(), a.ground().one());
        let c = a.add(&a.one(), &a.pi_f());
        let (u, v) = nrd1_decompose(&a, &c).unwrap();
        assert_eq!(a.scalar(u), c);
        assert_eq!(v, a.one());
    }
}
