//! Writing Frattini elements outside `I_3` as `[x, y] z^p`.

use rayon::prelude::*;
use serde::Serialize;

use crate::dalg::{DAlgElem, Mode};
use crate::error::{Error, Result};
use crate::gf::FqElem;
use crate::linalg::{self, PrimeField};

use super::curves::curve_points_ordered;
use super::quotient::QuotientGroup;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    /// Index of the `z` that worked (0 means `z = 1`).
    pub z_index: u64,
    /// Leading pairs `(x_1, y_1)` tried for that `z`.
    pub pairs_tried: usize,
    /// Whether the successful leading pair had a non-generating ratio.
    pub non_generating_pair: bool,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorWitness {
    pub x: DAlgElem,
    pub y: DAlgElem,
    pub z: DAlgElem,
    pub target: DAlgElem,
    pub stats: SolveStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveBudget {
    pub max_z: u64,
    pub max_pairs: usize,
    pub kernel_limit: u64,
    pub max_evaluations: usize,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget { max_z: 1 << 16, max_pairs: 1 << 12, kernel_limit: 64, max_evaluations: 1 << 22 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommSweepReport {
    pub targets: usize,
    pub solved: usize,
    pub replay_failures: usize,
    pub max_z_index: u64,
    pub needed_nonzero_z: usize,
    pub needed_non_generating_pair: usize,
    pub failures: Vec<serde_json::Value>,
}

pub struct CommSolver<'a> {
    q: &'a QuotientGroup,
    budget: SolveBudget,
    generating_pairs: usize,
}

struct Search<'s> {
    target: &'s DAlgElem,
    xd: Vec<FqElem>,
    yd: Vec<FqElem>,
    evaluations: usize,
}

impl<'a> CommSolver<'a> {
    pub fn new(q: &'a QuotientGroup) -> Self {
        CommSolver { q, budget: SolveBudget::default(), generating_pairs: 0 }
    }

    pub fn with_budget(mut self, budget: SolveBudget) -> Self {
        self.budget = budget;
        self
    }

    /// `z^p mod ϖ^N` depends only on `z mod ϖ^K`.
    fn z_level(&self) -> usize {
        let alg = self.q.algebra();
        let n = self.q.level();
        let k = match alg.mode() {
            Mode::EqualChar => (n + 1).saturating_sub(alg.field().p() as usize),
            Mode::MixedUnramified => n.saturating_sub(alg.d()),
        };
        k.max(1)
    }

    fn z_element(&self, mut idx: u64, k: usize) -> DAlgElem {
        let order = self.q.field().order();
        let mut ds = vec![FqElem::ONE];
        for _ in 1..k {
            ds.push(FqElem((idx % order) as u32));
            idx /= order;
        }
        self.q.algebra().from_digits(&ds)
    }

    pub fn solve(&mut self, target: &DAlgElem) -> Result<CommutatorWitness> {
        let alg = self.q.algebra();
        let n = self.q.level();
        if n < 3 {
            return Err(Error::InvalidParameter("need N >= 3".into()));
        }
        let target = self.q.reduce(target);
        if !alg.in_level(&target, 2) || alg.in_level(&target, 3) {
            return Err(Error::Precondition("target must lie in I_2 \\ I_3".into()));
        }
        let p = alg.field().p() as i64;
        let kz = self.z_level();
        let z_count = crate::numth::checked_pow(alg.field().order(), (kz - 1) as u32).unwrap_or(u64::MAX);
        let mut evaluations = 0usize;
        for zi in 0..z_count.min(self.budget.max_z) {
            let z = self.z_element(zi, kz);
            let zp = self.q.reduce(&alg.pow(&z, p)?);
            let t = self.q.reduce(&alg.mul(&target, &alg.inv(&zp)?));
            if !alg.in_level(&t, 2) {
                continue;
            }
            let a = alg.digit(&t, 2)?;
            if a.is_zero() {
                continue;
            }
            let pairs = curve_points_ordered(alg.field(), a)?;
            self.generating_pairs = pairs.iter().filter(|(x, y)| {
                alg.field().generates_over_base(alg.field().div(*x, *y).expect("nonzero"))
            }).count();
            for (pi, &(x1, y1)) in pairs.iter().take(self.budget.max_pairs).enumerate() {
                let mut xd = vec![FqElem::ZERO; n];
                let mut yd = vec![FqElem::ZERO; n];
                xd[0] = FqElem::ONE;
                yd[0] = FqElem::ONE;
                xd[1] = x1;
                yd[1] = y1;
                let mut s = Search { target: &t, xd, yd, evaluations: 0 };
                let ok = self.descend(&mut s, 2)?;
                evaluations += s.evaluations;
                if evaluations > self.budget.max_evaluations {
                    return Err(Error::NotFound("commutator search budget exhausted".into()));
                }
                if ok {
                    let x = alg.from_digits(&s.xd);
                    let y = alg.from_digits(&s.yd);
                    return Ok(CommutatorWitness {
                        x,
                        y,
                        z,
                        target: target.clone(),
                        stats: SolveStats {
                            z_index: zi,
                            pairs_tried: pi + 1,
                            non_generating_pair: pi >= self.generating_pairs,
                            evaluations,
                        },
                    });
                }
            }
        }
        Err(Error::NotFound("no witness within the search budget".into()))
    }

    fn digit_of_commutator(&self, s: &mut Search, level: usize) -> Result<FqElem> {
        let alg = self.q.algebra();
        s.evaluations += 1;
        let c = alg.commutator(&alg.from_digits(&s.xd), &alg.from_digits(&s.yd))?;
        alg.digit(&c, level)
    }

    /// Fix digits `x_k, y_k` so that digit `k+1` of `[x, y]` matches.
    fn descend(&self, s: &mut Search, k: usize) -> Result<bool> {
        let alg = self.q.algebra();
        let n = self.q.level();
        if k + 1 >= n {
            let c = alg.commutator(&alg.from_digits(&s.xd), &alg.from_digits(&s.yd))?;
            return Ok(self.q.reduce(&c) == *s.target);
        }
        let field = alg.field().clone();
        let fp = PrimeField { p: field.p() };
        let dim = field.degree() as usize;
        let basis = field.basis();
        s.xd[k] = FqElem::ZERO;
        s.yd[k] = FqElem::ZERO;
        let f0 = self.digit_of_commutator(s, k + 1)?;
        let mut cols = Vec::with_capacity(2 * dim);
        for side in 0..2 {
            for &b in &basis {
                if side == 0 {
                    s.xd[k] = b;
                } else {
                    s.yd[k] = b;
                }
                let v = self.digit_of_commutator(s, k + 1)?;
                cols.push(field.coeffs(field.sub(v, f0)));
                s.xd[k] = FqElem::ZERO;
                s.yd[k] = FqElem::ZERO;
            }
        }
        let want = field.sub(alg.digit(s.target, k + 1)?, f0);
        let mat = crate::gf::transpose(&cols);
        let Some(part) = linalg::solve(&fp, &mat, &field.coeffs(want)) else {
            return Ok(false);
        };
        let kernel = linalg::nullspace(&fp, &mat, 2 * dim);
        let p = field.p();
        let total = crate::numth::checked_pow(p, kernel.len() as u32).unwrap_or(u64::MAX);
        for idx in 0..total.min(self.budget.kernel_limit) {
            let mut sol = part.clone();
            let mut r = idx;
            for kv in &kernel {
                let c = r % p;
                r /= p;
                for (s_i, &k_i) in sol.iter_mut().zip(kv) {
                    *s_i = (*s_i + c * k_i) % p;
                }
            }
            s.xd[k] = field.from_coeffs(&sol[..dim]);
            s.yd[k] = field.from_coeffs(&sol[dim..]);
            if self.descend(s, k + 1)? {
                return Ok(true);
            }
        }
        s.xd[k] = FqElem::ZERO;
        s.yd[k] = FqElem::ZERO;
        Ok(false)
    }
}

impl CommutatorWitness {
    /// `[x, y] z^p ≡ target mod ϖ^N`.
    pub fn replay(&self, q: &QuotientGroup) -> Result<bool> {
        let alg = q.algebra();
        let c = alg.commutator(&self.x, &self.y)?;
        let zp = alg.pow(&self.z, alg.field().p() as i64)?;
        Ok(q.reduce(&alg.mul(&c, &zp)) == q.reduce(&self.target))
    }
}

/// Solve for every predicted Frattini element outside `I_3`.
pub fn comm_sweep(q: &QuotientGroup, cap: u64, budget: SolveBudget) -> Result<CommSweepReport> {
    let alg = q.algebra();
    let targets: Vec<DAlgElem> =
        q.frattini_predicted(cap)?.into_iter().filter(|g| !alg.in_level(g, 3)).collect();
    let results: Vec<Result<CommutatorWitness>> = targets
        .par_iter()
        .map(|t| CommSolver::new(q).with_budget(budget).solve(t))
        .collect();
    let mut report = CommSweepReport {
        targets: targets.len(),
        solved: 0,
        replay_failures: 0,
        max_z_index: 0,
        needed_nonzero_z: 0,
        needed_non_generating_pair: 0,
        failures: Vec::new(),
    };
    for (t, r) in targets.iter().zip(results) {
        match r {
            Ok(w) if w.replay(q)? => {
                report.solved += 1;
                report.max_z_index = report.max_z_index.max(w.stats.z_index);
                report.needed_nonzero_z += (w.stats.z_index > 0) as usize;
                report.needed_non_generating_pair += w.stats.non_generating_pair as usize;
            }
            Ok(_) => {
                report.replay_failures += 1;
                report.failures.push(alg.to_json(t));
            }
            Err(_) => report.failures.push(alg.to_json(t)),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use std::sync::Arc;

    #[test]
    fn literal_commutators_are_solved() {
        let k = Arc::new(make_field(2, 1, 3, 1).unwrap());
        let q = QuotientGroup::new(k.clone(), Mode::EqualChar, 4).unwrap();
        let alg = q.algebra();
        let g = k.generator();
        let x = alg.mul(&alg.one_plus(g, 1), &alg.one_plus(k.from_int(1), 2));
        let y = alg.one_plus(k.mul(g, g), 1);
        let t = q.reduce(&alg.commutator(&x, &y).unwrap());
        let w = CommSolver::new(&q).solve(&t).unwrap();
        assert!(w.replay(&q).unwrap());
    }

    #[test]
    fn rejects_targets_in_i3() {
        let k = Arc::new(make_field(2, 1, 3, 1).unwrap());
        let q = QuotientGroup::new(k.clone(), Mode::EqualChar, 4).unwrap();
        let t = q.algebra().one_plus(k.generator(), 3);
        assert!(matches!(CommSolver::new(&q).solve(&t), Err(Error::Precondition(_))));
    }
}
