//! Finite quotients `I_1/I_N` and the Frattini subgroup check.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::dalg::{Algebra, DAlgElem, Mode};
use crate::error::{Error, Result};
use crate::gf::{FieldSpec, FqElem};
use crate::numth::checked_pow;

pub const DEFAULT_ENUM_CAP: u64 = 1 << 20;

/// `I_1/I_N`, with elements represented by their reduction mod `ϖ^N`.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    alg: Algebra,
    n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrattiniReport {
    pub group_order: u64,
    pub closure_size: usize,
    pub predicted_size: usize,
    pub equal: bool,
    pub inside_i2: bool,
    pub normal: bool,
    pub norm_precision: usize,
    /// First predicted element missing from the closure, or vice versa.
    pub counterexample: Option<serde_json::Value>,
}

impl QuotientGroup {
    pub fn new(field: Arc<FieldSpec>, mode: Mode, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter("quotient level N must be at least 2".into()));
        }
        let d = field.d() as usize;
        let alg = Algebra::new(field, mode, n.div_ceil(d))?;
        Ok(QuotientGroup { alg, n })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        self.alg.field()
    }

    pub fn level(&self) -> usize {
        self.n
    }

    /// `|I_1/I_N| = (q^d)^{N-1}`, or `None` on overflow.
    pub fn order(&self) -> Option<u64> {
        checked_pow(self.field().order(), (self.n - 1) as u32)
    }

    pub fn check_cap(&self, cap: u64) -> Result<u64> {
        match self.order() {
            Some(size) if size <= cap => Ok(size),
            Some(size) => Err(Error::EnumerationCap { size, cap }),
            None => Err(Error::EnumerationCap { size: u64::MAX, cap }),
        }
    }

    /// Norm precision `⌈N/d⌉`: `Nrd(I_N) = 1 + π_F^{⌈N/d⌉} O_F`.
    pub fn norm_precision(&self) -> usize {
        self.n.div_ceil(self.alg.d())
    }

    pub fn reduce(&self, x: &DAlgElem) -> DAlgElem {
        self.alg.truncate(x, self.n)
    }

    pub fn mul(&self, x: &DAlgElem, y: &DAlgElem) -> DAlgElem {
        self.reduce(&self.alg.mul(x, y))
    }

    /// Element with mixed-radix index `idx`; digits at `ϖ`-positions `1..N`.
    pub fn element(&self, mut idx: u64) -> DAlgElem {
        let q = self.field().order();
        let mut ds = vec![FqElem::ONE];
        for _ in 1..self.n {
            ds.push(FqElem((idx % q) as u32));
            idx /= q;
        }
        self.alg.from_digits(&ds)
    }

    /// All elements, in index order.
    pub fn elements(&self, cap: u64) -> Result<Vec<DAlgElem>> {
        let size = self.check_cap(cap)?;
        Ok((0..size).map(|i| self.element(i)).collect())
    }

    /// `1 + [b] ϖ^i` for `i = 1..N-1` and `b` in the `F_p`-basis of `k_D`.
    pub fn layer_generators(&self) -> Vec<DAlgElem> {
        let basis = self.field().basis();
        (1..self.n)
            .flat_map(|i| basis.iter().map(move |&b| (i, b)))
            .map(|(i, b)| self.reduce(&self.alg.one_plus(b, i)))
            .collect()
    }

    /// `g ∈ I_2` and `Nrd(g)` is a `p`-th power modulo `π_F^{⌈N/d⌉}`.
    pub fn predicted_member(&self, g: &DAlgElem) -> Result<bool> {
        if !self.alg.in_level(g, 2.min(self.n)) {
            return Ok(false);
        }
        let nrd = self.alg.reduced_norm(g)?;
        Ok(self.alg.ground().is_pth_power_one_unit(&nrd, self.norm_precision()))
    }

    pub fn frattini_predicted(&self, cap: u64) -> Result<BTreeSet<DAlgElem>> {
        let mut out = BTreeSet::new();
        for g in self.elements(cap)? {
            if self.predicted_member(&g)? {
                out.insert(g);
            }
        }
        Ok(out)
    }

    /// Normal closure of `{[s,t], s^p}` over layer generators `s, t`.
    pub fn frattini_closure(&self, cap: u64) -> Result<BTreeSet<DAlgElem>> {
        self.check_cap(cap)?;
        let alg = &self.alg;
        let p = self.field().p() as i64;
        let s = self.layer_generators();
        let s_inv: Vec<DAlgElem> = s.iter().map(|x| alg.inv(x).map(|y| self.reduce(&y))).collect::<Result<_>>()?;
        let mut gens: Vec<DAlgElem> = Vec::new();
        let mut gen_set: HashSet<DAlgElem> = HashSet::new();
        let one = self.reduce(&alg.one());
        let mut push_gen = |g: DAlgElem, gens: &mut Vec<DAlgElem>| {
            if g != one && gen_set.insert(g.clone()) {
                gens.push(g);
            }
        };
        for a in &s {
            for b in &s {
                push_gen(self.reduce(&alg.commutator(a, b)?), &mut gens);
            }
            push_gen(self.reduce(&alg.pow(a, p)?), &mut gens);
        }

        let mut members: HashSet<DAlgElem> = HashSet::new();
        members.insert(one.clone());
        let mut order: Vec<DAlgElem> = vec![one];
        loop {
            // Close under right multiplication by the generators.
            let mut i = 0;
            while i < order.len() {
                let h = order[i].clone();
                for g in &gens {
                    let hg = self.mul(&h, g);
                    if members.insert(hg.clone()) {
                        order.push(hg);
                    }
                }
                i += 1;
            }
            // Conjugates of generators that escape the subgroup become generators.
            let mut fresh = Vec::new();
            for g in &gens {
                for (a, ai) in s.iter().zip(&s_inv) {
                    let c = self.mul(&self.mul(a, g), ai);
                    if !members.contains(&c) && gen_set.insert(c.clone()) {
                        fresh.push(c);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            gens.extend(fresh);
        }
        Ok(order.into_iter().collect())
    }

    /// Conjugation stability of a subset under the layer generators.
    pub fn is_normal(&self, set: &BTreeSet<DAlgElem>) -> Result<bool> {
        let alg = &self.alg;
        for a in self.layer_generators() {
            let ai = self.reduce(&alg.inv(&a)?);
            for g in set {
                if !set.contains(&self.mul(&self.mul(&a, g), &ai)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn frattini_check(&self, cap: u64) -> Result<FrattiniReport> {
        let closure = self.frattini_closure(cap)?;
        let predicted = self.frattini_predicted(cap)?;
        let inside_i2 = closure.iter().all(|g| self.alg.in_level(g, 2));
        let normal = self.is_normal(&closure)?;
        let counterexample = predicted
            .symmetric_difference(&closure)
            .next()
            .map(|g| self.alg.to_json(g));
        Ok(FrattiniReport {
            group_order: self.order().unwrap_or(u64::MAX),
            closure_size: closure.len(),
            predicted_size: predicted.len(),
            equal: closure == predicted,
            inside_i2,
            normal,
            norm_precision: self.norm_precision(),
            counterexample,
        })
    }
}
