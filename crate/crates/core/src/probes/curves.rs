//! Point counts on `C_α : xσ(y) - σ(x)y = α` over `k_D`.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, FqElem};
use crate::numth::{gcd, solve_linear_congruence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveCount {
    pub points: u64,
    /// Distinct ratios `x/y` over solutions with `y ≠ 0`.
    pub ratios: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FermatReport {
    pub zeta: FqElem,
    pub alpha: FqElem,
    pub count: u64,
    pub formula: i64,
    /// Counts are constant on each coset of `k_D^× / k_D^{×(q+1)}`.
    pub coset_constant: bool,
    /// Mean over `α ≠ 0` equals `q^d - q`.
    pub average_ok: bool,
}

/// `xσ(y) - σ(x)y`.
pub fn curve_value(k: &FieldSpec, x: FqElem, y: FqElem) -> FqElem {
    k.sub(k.mul(x, k.sigma(y, 1)), k.mul(k.sigma(x, 1), y))
}

/// `|C_α(k_D)|` for every `α`, indexed by the packed value of `α`.
pub fn curve_tally(k: &FieldSpec) -> Vec<u64> {
    let q = k.order() as usize;
    let sig: Vec<FqElem> = k.elements().map(|x| k.sigma(x, 1)).collect();
    (0..q as u32)
        .into_par_iter()
        .fold(
            || vec![0u64; q],
            |mut acc, x| {
                let x = FqElem(x);
                let sx = sig[x.0 as usize];
                for y in k.elements() {
                    let v = k.sub(k.mul(x, sig[y.0 as usize]), k.mul(sx, y));
                    acc[v.0 as usize] += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; q],
            |mut a, b| {
                for (s, t) in a.iter_mut().zip(b) {
                    *s += t;
                }
                a
            },
        )
}

pub fn curve_count(k: &FieldSpec, alpha: FqElem) -> CurveCount {
    let mut points = 0u64;
    let mut ratios = HashSet::new();
    for x in k.elements() {
        for y in k.elements() {
            if curve_value(k, x, y) == alpha {
                points += 1;
                if !y.is_zero() {
                    ratios.insert(k.div(x, y).expect("y nonzero"));
                }
            }
        }
    }
    CurveCount { points, ratios: ratios.len() as u64 }
}

/// `|μ_{q+1}(k_D)| = gcd(q+1, q^d - 1)`.
pub fn mu_q_plus_one(k: &FieldSpec) -> u64 {
    gcd(k.q() + 1, k.order() - 1)
}

/// `q^d + 1 + (-q)^{d/2}(q - q^3)/(q+1) - (q+1)`.
pub fn fermat_formula(q: u64, d: u32) -> i64 {
    let q = q as i64;
    let half = (-q).pow(d / 2);
    q.pow(d) + 1 + half * (q - q.pow(3)) / (q + 1) - (q + 1)
}

/// Count on the coset with `ζα = -1`, where `σ(ζ) = -ζ`, plus the coset and
/// average checks from the full tally.
pub fn fermat_coset_count(k: &FieldSpec) -> Result<FermatReport> {
    let d = k.d();
    if d % 2 != 0 {
        return Err(Error::Precondition("the Fermat coset count needs d even".into()));
    }
    let zeta = k
        .nonzero()
        .find(|&z| k.sigma(z, 1) == k.neg(z))
        .ok_or_else(|| Error::NotFound("no ζ with σ(ζ) = -ζ".into()))?;
    let alpha = k.neg(k.inv(zeta)?);
    let tally = curve_tally(k);
    let count = tally[alpha.0 as usize];
    let e = k.q() + 1;
    let m = k.order() - 1;
    let mut coset_value: Vec<Option<u64>> = vec![None; gcd(e, m) as usize];
    let mut coset_constant = true;
    for a in k.nonzero() {
        let c = (k.dlog(a)? % gcd(e, m)) as usize;
        match coset_value[c] {
            None => coset_value[c] = Some(tally[a.0 as usize]),
            Some(v) if v != tally[a.0 as usize] => coset_constant = false,
            _ => {}
        }
    }
    let total: u64 = k.nonzero().map(|a| tally[a.0 as usize]).sum();
    let average_ok = total == m * (k.order() - k.q());
    Ok(FermatReport { zeta, alpha, count, formula: fermat_formula(k.q(), d), coset_constant, average_ok })
}

/// A pair `(x, y)` on `C_α` whose ratio generates `k_D` over `k_F`.
///
/// Ratios are scanned in packed order; for a ratio `t` the equation becomes
/// `y^{1+q^r} = α / (t - σ(t))`, solved on discrete logs.
pub fn comm_choice(k: &FieldSpec, alpha: FqElem) -> Result<(FqElem, FqElem)> {
    if alpha.is_zero() {
        return Err(Error::Precondition("α must be nonzero".into()));
    }
    for t in k.nonzero() {
        if !k.generates_over_base(t) {
            continue;
        }
        if let Some(y) = curve_solutions_for_ratio(k, alpha, t)?.into_iter().next() {
            return Ok((k.mul(t, y), y));
        }
    }
    Err(Error::NotFound(format!("no generating ratio reaches α = {}", alpha.0)))
}

/// All `y` with `(ty, y) ∈ C_α`.
pub fn curve_solutions_for_ratio(k: &FieldSpec, alpha: FqElem, t: FqElem) -> Result<Vec<FqElem>> {
    let diff = k.sub(t, k.sigma(t, 1));
    if diff.is_zero() {
        return Ok(Vec::new());
    }
    let c = k.div(alpha, diff)?;
    let m = k.order() - 1;
    let e = (1 + crate::numth::pow_mod(k.q(), k.params().r as u64, m)) % m;
    let Some(k0) = solve_linear_congruence(e, k.dlog(c)?, m) else {
        return Ok(Vec::new());
    };
    let g = gcd(e, m);
    let step = m / g;
    Ok((0..g).map(|j| k.exp(k0 + j * step)).collect())
}

/// Every point of `C_α` with `x, y ≠ 0`, generating ratios first.
pub fn curve_points_ordered(k: &FieldSpec, alpha: FqElem) -> Result<Vec<(FqElem, FqElem)>> {
    let mut gen = Vec::new();
    let mut rest = Vec::new();
    for t in k.nonzero() {
        let bucket = if k.generates_over_base(t) { &mut gen } else { &mut rest };
        for y in curve_solutions_for_ratio(k, alpha, t)? {
            bucket.push((k.mul(t, y), y));
        }
    }
    gen.extend(rest);
    Ok(gen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn cubic_counts() {
        let k = make_field(2, 1, 3, 1).unwrap();
        let tally = curve_tally(&k);
        for a in k.nonzero() {
            assert_eq!(tally[a.0 as usize], 6);
            let c = curve_count(&k, a);
            assert_eq!(c.points, 6);
            assert_eq!(c.ratios, c.points / mu_q_plus_one(&k));
        }
        // α = 0: pairs with x/y ∈ k_F, plus the axes.
        let zero = tally[0];
        assert_eq!(zero, 7 * 1 + 2 * 8 - 1);
    }

    #[test]
    fn quaternion_average() {
        let k = make_field(3, 1, 2, 1).unwrap();
        let tally = curve_tally(&k);
        let total: u64 = k.nonzero().map(|a| tally[a.0 as usize]).sum();
        assert_eq!(total / 8, 6);
    }

    #[test]
    fn fermat_small() {
        assert_eq!(fermat_formula(3, 2), 24);
        assert_eq!(fermat_formula(5, 2), 120);
        let k = make_field(3, 1, 2, 1).unwrap();
        let r = fermat_coset_count(&k).unwrap();
        assert_eq!(r.count as i64, r.formula);
        assert!(r.coset_constant && r.average_ok);
        assert!(fermat_coset_count(&make_field(2, 1, 3, 1).unwrap()).is_err());
    }

    #[test]
    fn choice_satisfies_curve() {
        let k = make_field(2, 1, 5, 1).unwrap();
        for a in k.nonzero() {
            let (x, y) = comm_choice(&k, a).unwrap();
            assert_eq!(curve_value(&k, x, y), a);
            assert!(k.generates_over_base(k.div(x, y).unwrap()));
        }
    }
}
