//! Ext groups between irreducible representations, through `H^*(I_1, ·)`
//! viewed as a representation of `D_a^×/I_1 = ϖ^{aZ} ⋉ k_D^×`.
//!
//! Every representation of `D_a^×/I_1` met here is a sum of a trivial part and
//! inductions of characters, and `H^1(D_a^×/I_1, V)` has the dimension of the
//! trivial part of `V`. Dimensions are kept symbolic in the multiplicity of
//! `dim H^1(1 + π_F O_F)`.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::chars::{eta_character, reduce_pair, Character, Irrep};
use crate::error::{Error, Result};
use crate::gf::{FieldSpec, Params};
use crate::linalg::nullspace;
use crate::numth::{binomial, checked_pow, gcd, lcm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseCase {
    /// `F/Q_p` with ramification index `e` and residue degree `f`.
    PAdic { e: u32, f: u32 },
    FunctionField,
}

impl BaseCase {
    /// `padic` (with `e = 1`), `padic:E` or `function-field`.
    pub fn parse(s: &str, f: u32) -> Result<Self> {
        match s.trim() {
            "function-field" | "function_field" | "ff" => Ok(BaseCase::FunctionField),
            "padic" => Ok(BaseCase::PAdic { e: 1, f }),
            t => {
                let e: u32 = t
                    .strip_prefix("padic:")
                    .and_then(|e| e.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown case {t:?}")))?;
                if e == 0 {
                    return Err(Error::InvalidParameter("e must be positive".into()));
                }
                Ok(BaseCase::PAdic { e, f })
            }
        }
    }

    /// `dim H^1(1 + π_F O_F)`, or `None` when countably infinite.
    pub fn h1f_dim(&self) -> Option<u64> {
        match *self {
            BaseCase::PAdic { e, f } => Some(e as u64 * f as u64),
            BaseCase::FunctionField => None,
        }
    }
}

/// `finite + h1f_mult · dim H^1(1 + π_F O_F)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtDim {
    pub finite: u64,
    #[serde(rename = "h1F_mult")]
    pub h1f_mult: u64,
    pub case: BaseCase,
}

impl ExtDim {
    pub fn zero(case: BaseCase) -> Self {
        ExtDim { finite: 0, h1f_mult: 0, case }
    }

    pub fn finite(n: u64, case: BaseCase) -> Self {
        ExtDim { finite: n, h1f_mult: 0, case }
    }

    pub fn add(&self, other: &ExtDim) -> ExtDim {
        ExtDim { finite: self.finite + other.finite, h1f_mult: self.h1f_mult + other.h1f_mult, case: self.case }
    }

    pub fn scale(&self, k: u64) -> ExtDim {
        ExtDim { finite: self.finite * k, h1f_mult: self.h1f_mult * k, case: self.case }
    }

    /// Total dimension, or `None` when infinite.
    pub fn value(&self) -> Option<u64> {
        if self.h1f_mult == 0 {
            return Some(self.finite);
        }
        self.case.h1f_dim().map(|h| self.finite + self.h1f_mult * h)
    }

    pub fn is_zero(&self) -> bool {
        self.finite == 0 && self.h1f_mult == 0
    }

    /// E.g. `2 (= ef+1)`, `countably infinite`.
    pub fn render(&self) -> String {
        match self.value() {
            None => "countably infinite".into(),
            Some(v) if self.h1f_mult == 0 => v.to_string(),
            Some(v) => {
                let coef = if self.h1f_mult == 1 { String::new() } else { self.h1f_mult.to_string() };
                let tail = if self.finite == 0 { String::new() } else { format!("+{}", self.finite) };
                format!("{v} (= {coef}ef{tail})")
            }
        }
    }
}

impl fmt::Display for ExtDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SummandKind {
    CondA,
    CondB,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummandReport {
    pub coset: u32,
    pub level: u32,
    pub kind: SummandKind,
    pub eta_index: Option<u32>,
    pub character: Character,
    pub contribution: ExtDim,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtReport {
    pub n: u32,
    pub total: ExtDim,
    pub summands: Vec<SummandReport>,
    pub rendered: String,
}

/// `Ind_{D_d^×}^{D_a^×}(χ_{η_i}^s ⊗ Res χ)`, one Mackey summand of `H^1(I_1, χ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedSummand {
    /// `i ∈ Z/f`.
    pub eta_index: u32,
    pub coset: u32,
    pub inducing_level: u32,
    pub dim: u32,
    pub character: Character,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H1Structure {
    pub twist: Character,
    pub dualized: bool,
    /// Multiplicity of `H^1(1 + π_F O_F) ⊗ twist`.
    pub trivial_mult: u64,
    pub induced: Vec<InducedSummand>,
}

impl H1Structure {
    /// Dimension of the part coming from `Hom(k_D, F̄_p)`.
    pub fn kd_dim(&self) -> u32 {
        self.induced.iter().map(|s| s.dim).sum()
    }
}

/// `H^1(I_1, F̄_p) ⊗ twist` (or its dual part `H^1(I_1, F̄_p)^* ⊗ twist`)
/// as a representation of `D_a^×/I_1`, `a` the level of the twist.
pub fn h1_structure(twist: &Character, dualized: bool) -> H1Structure {
    let params = twist.params();
    let a = twist.level();
    let d = params.d;
    let res = twist.restrict(d).expect("level divides d");
    let mut induced = Vec::new();
    for i in 0..params.f {
        let eta = eta_character(params, i as i64, dualized);
        for s in 0..a {
            induced.push(InducedSummand {
                eta_index: i,
                coset: s,
                inducing_level: d,
                dim: d / a,
                character: eta.conjugate(s as i64).tensor(&res).expect("level d"),
            });
        }
    }
    H1Structure { twist: *twist, dualized, trivial_mult: 1, induced }
}

/// Condition A: `c` trivial. Condition B: `α` trivial and
/// `M ≡ p^i (1 - q^r)` for some `i ∈ Z/df`; the least such `i` is returned.
pub fn cond_eval(c: &Character) -> (SummandKind, Option<u32>) {
    if c.is_trivial() {
        return (SummandKind::CondA, None);
    }
    if !c.alpha().is_trivial() {
        return (SummandKind::None, None);
    }
    let params = c.params();
    (0..params.degree())
        .find(|&i| eta_character(params, i as i64, true).exponent() == c.exponent())
        .map_or((SummandKind::None, None), |i| (SummandKind::CondB, Some(i)))
}

/// `Ext^1_{D_a^×}(1, c)`.
pub fn ext1_char(c: &Character, case: BaseCase) -> ExtDim {
    match cond_eval(c).0 {
        SummandKind::CondA => ExtDim { finite: 1, h1f_mult: 1, case },
        SummandKind::CondB => ExtDim::finite(1, case),
        SummandKind::None => ExtDim::zero(case),
    }
}

/// Multiplicity of the trivial representation in `H^1(I_1)^{(*)} ⊗ c`.
pub fn mult_trivial_h1(c: &Character, dualized: bool, case: BaseCase) -> ExtDim {
    let h = h1_structure(c, dualized);
    // Frobenius reciprocity: an induced summand contains 1 iff its character is trivial.
    let finite = h.induced.iter().filter(|s| s.character.is_trivial()).count() as u64;
    ExtDim { finite, h1f_mult: c.is_trivial() as u64, case }
}

fn summands(pi: &Irrep, pi2: &Irrep, case: BaseCase, f: impl Fn(&Character) -> Result<ExtDim>) -> Result<Vec<SummandReport>> {
    reduce_pair(pi, pi2)
        .into_iter()
        .map(|(coset, level, character)| {
            let (kind, eta_index) = cond_eval(&character);
            let contribution = f(&character)?;
            debug_assert_eq!(contribution.case, case);
            Ok(SummandReport { coset, level, kind, eta_index, character, contribution })
        })
        .collect()
}

fn report(n: u32, case: BaseCase, summands: Vec<SummandReport>) -> ExtReport {
    let total = summands.iter().fold(ExtDim::zero(case), |acc, s| acc.add(&s.contribution));
    ExtReport { n, total, summands, rendered: total.render() }
}

/// `Ext^n_{D^×}(π, π')` for `n ∈ {0, 1}`.
pub fn ext_n(pi: &Irrep, pi2: &Irrep, n: u32, case: BaseCase) -> Result<ExtReport> {
    let s = match n {
        0 => summands(pi, pi2, case, |c| Ok(ExtDim::finite(c.is_trivial() as u64, case)))?,
        1 => summands(pi, pi2, case, |c| Ok(ext1_char(c, case)))?,
        _ => return Err(Error::Unsupported(format!("ext_n handles degrees 0 and 1, not {n}"))),
    };
    Ok(report(n, case, s))
}

/// `r = d^2 ef`.
pub fn top_degree(params: &Params, case: BaseCase) -> Result<u32> {
    match case {
        BaseCase::PAdic { e, f } => {
            if f != params.f {
                return Err(Error::InvalidParameter(format!("residue degree {f} disagrees with f = {}", params.f)));
            }
            if params.p <= (params.d * e) as u64 + 1 {
                return Err(Error::Precondition(format!(
                    "I_1 has p-torsion unless p > de + 1 (p = {}, d = {}, e = {e})",
                    params.p, params.d
                )));
            }
            Ok(params.d * params.d * e * f)
        }
        BaseCase::FunctionField => Err(Error::Unsupported("no Poincaré duality in the function-field case".into())),
    }
}

/// `Ext^n_{D_a^×}(1, c)` for `n ≥ r`.
pub fn ext_high(c: &Character, n: u32, case: BaseCase) -> Result<ExtDim> {
    let r = top_degree(&c.params(), case)?;
    let triv = c.is_trivial() as u64;
    if n < r {
        return Err(Error::Unsupported(format!("degree {n} lies strictly between 1 and r = {r}")));
    }
    Ok(if n == r {
        mult_trivial_h1(c, true, case).add(&ExtDim::finite(triv, case))
    } else if n == r + 1 {
        ExtDim::finite(triv, case)
    } else {
        ExtDim::zero(case)
    })
}

/// Whether the quaternion algebra over `Q_p` computation applies.
pub fn is_quaternion_qp(params: &Params, case: BaseCase) -> bool {
    params.d == 2 && params.f == 1 && case == (BaseCase::PAdic { e: 1, f: 1 }) && params.p > 3
}

fn require_quaternion(params: &Params, case: BaseCase) -> Result<()> {
    if is_quaternion_qp(params, case) {
        Ok(())
    } else {
        Err(Error::Unsupported("needs d = 2 over Q_p with p > 3".into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomDegree {
    pub n: u32,
    pub dim: u64,
    pub structure: String,
}

/// `H^n(I_1, χ)` for the quaternion algebra over `Q_p`.
pub fn quaternion_qp_cohom(n: u32) -> Result<CohomDegree> {
    let (dim, structure) = match n {
        0 => (1, "1 ⊗ χ"),
        1 => (3, "(1 ⊕ Ind χ_η) ⊗ χ"),
        2 => (4, "(Ind χ_η)^{⊕2} ⊗ χ"),
        3 => (3, "(1 ⊕ Ind χ_η^*) ⊗ χ"),
        4 => (1, "1 ⊗ χ"),
        _ => return Err(Error::Unsupported(format!("H^{n}(I_1) vanishes above 4"))),
    };
    Ok(CohomDegree { n, dim, structure: structure.into() })
}

/// Trivial multiplicities `T_0..T_4` of `H^j(I_1, c)` over `D_a^×/I_1`.
pub fn quaternion_trivial_mults(c: &Character, case: BaseCase) -> Result<[ExtDim; 5]> {
    require_quaternion(&c.params(), case)?;
    let triv = ExtDim::finite(c.is_trivial() as u64, case);
    let h1 = mult_trivial_h1(c, false, case);
    let h1_induced = ExtDim::finite(h1.finite, case);
    Ok([triv, h1, h1_induced.scale(2), mult_trivial_h1(c, true, case), triv])
}

/// `Ext^n_{D_a^×}(1, c) = T_{n-1} + T_n` from the two-column spectral sequence.
pub fn quaternion_qp_table(c: &Character, n: u32, case: BaseCase) -> Result<ExtDim> {
    let t = quaternion_trivial_mults(c, case)?;
    let at = |j: i64| if (0..5).contains(&j) { t[j as usize] } else { ExtDim::zero(case) };
    Ok(at(n as i64 - 1).add(&at(n as i64)))
}

/// `Ext^n_{D^×}(π, π')` in every degree the theory determines.
pub fn ext_degree(pi: &Irrep, pi2: &Irrep, n: u32, case: BaseCase) -> Result<ExtReport> {
    if n <= 1 {
        return ext_n(pi, pi2, n, case);
    }
    let params = pi.chi().params();
    if is_quaternion_qp(&params, case) {
        return Ok(report(n, case, summands(pi, pi2, case, |c| quaternion_qp_table(c, n, case))?));
    }
    let r = top_degree(&params, case)?;
    if n < r {
        return Err(Error::Unsupported(format!("degree {n} lies strictly between 1 and r = {r}")));
    }
    Ok(report(n, case, summands(pi, pi2, case, |c| ext_high(c, n, case))?))
}

/// `dim H^i(1 + π_F O_F) = binom(ef, i)`.
pub fn h_aux(ef: u64, i: u64) -> u64 {
    binomial(ef, i)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H2Bound {
    pub summands: Vec<(String, u64)>,
    pub dim: u64,
}

/// `H^1(I_{1,Nrd=1})^{⊕2} ⊕ F̄_p^{binom(ef,2)} ⊂ H^2(I_1)`.
pub fn h2_lower_bound(params: &Params, case: BaseCase) -> Result<H2Bound> {
    let ef = case
        .h1f_dim()
        .ok_or_else(|| Error::Unsupported("the H^2 bound is stated for p-adic F".into()))?;
    let df = params.degree() as u64;
    let summands = vec![
        ("H^1(I_{1,Nrd=1}) via 1+π_F O_F".to_string(), df),
        ("H^1(I_{1,Nrd=1}) via Bockstein".to_string(), df),
        ("trivial, from H^2(1+π_F O_F)".to_string(), h_aux(ef, 2)),
    ];
    let dim = summands.iter().map(|s| s.1).sum();
    Ok(H2Bound { summands, dim })
}

/// Matrix model of `Hom(k_D, F̄_p)^{(*)} ⊗ c` over a finite field `F_{p^L}`
/// containing `μ_{q^d-1}` and the value of `c` at `ϖ^a`.
pub struct InvariantsOracle {
    params: Params,
    field: FieldSpec,
    max_alpha_order: u64,
}

impl InvariantsOracle {
    /// Least `L` with `df | L` and `(q^d-1)·n | p^L - 1`.
    pub fn working_degree(params: &Params, alpha_order: u64, cap: u64) -> Result<u32> {
        let need = (params.unit_order() as u128) * alpha_order as u128;
        let df = params.degree();
        let mut l = df;
        loop {
            let size = checked_pow(params.p, l).filter(|&s| s <= cap).ok_or(Error::TableCap {
                size: checked_pow(params.p, l).unwrap_or(u64::MAX),
                cap,
            })?;
            if (size as u128 - 1) % need == 0 {
                return Ok(l);
            }
            l += df;
        }
    }

    /// Works for every `α` whose order divides `lcm(alpha_orders)`.
    pub fn new(params: Params, alpha_orders: &[u64], cap: u64) -> Result<Self> {
        let n = alpha_orders.iter().fold(1u64, |acc, &o| lcm(acc, o.max(1)));
        if gcd(n, params.p) != 1 {
            return Err(Error::InvalidParameter("α orders must be prime to p".into()));
        }
        let l = Self::working_degree(&params, n, cap)?;
        let field = FieldSpec::with_degree(params.p, l, cap)?;
        Ok(InvariantsOracle { params, field, max_alpha_order: n })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Dimension of the `ϖ^a`- and `k_D^×`-fixed vectors.
    pub fn dim(&self, c: &Character, dualized: bool) -> Result<u64> {
        let params = self.params;
        if c.params() != params {
            return Err(Error::InvalidParameter("character belongs to other parameters".into()));
        }
        let alpha = c.alpha();
        if self.max_alpha_order % alpha.denominator() != 0 {
            return Err(Error::Unsupported(format!("α of order {} is outside the working field", alpha.denominator())));
        }
        let k = &self.field;
        let big = k.order() - 1;
        let kd = params.unit_order();
        let gen_kd = |e: i128| k.exp(((e.rem_euclid(kd as i128)) as u64) * (big / kd));
        let alpha_val = k.exp(big / alpha.denominator() * alpha.numerator());
        let df = params.degree() as usize;
        let rf = (params.r * params.f) as usize;
        let a = c.level() as usize;
        let qr1 = (params.q().pow(params.r) - 1) as i128;
        let sign: i128 = if dualized { -1 } else { 1 };
        let mut rows = Vec::with_capacity(2 * df);
        // [g] acts on the j-th coordinate by (σ(g)/g)^{±p^j}·g^M.
        for j in 0..df {
            let e = sign * qr1 * (params.p as i128).pow(j as u32) + c.exponent() as i128;
            let mut row = vec![k.zero(); df];
            row[j] = k.sub(gen_kd(e), k.one());
            rows.push(row);
        }
        // ϖ^a sends e_j to α·e_{j - arf}.
        let shift = (a * rf) % df;
        for j in 0..df {
            let mut row = vec![k.zero(); df];
            row[j] = k.neg(k.one());
            let src = (j + shift) % df;
            row[src] = k.add(row[src], alpha_val);
            rows.push(row);
        }
        Ok(nullspace(k, &rows, df).len() as u64)
    }
}

/// One-shot form of [`InvariantsOracle::dim`].
pub fn invariants_oracle(c: &Character, dualized: bool, cap: u64) -> Result<u64> {
    InvariantsOracle::new(c.params(), &[c.alpha().denominator()], cap)?.dim(c, dualized)
}

impl ExtReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).unwrap_or_else(|_| json!(null))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::{canonical_irreps, level_characters, RootOfUnity};

    const QP: BaseCase = BaseCase::PAdic { e: 1, f: 1 };

    fn params(p: u64, f: u32, d: u32, r: u32) -> Params {
        Params::new(p, f, d, r).unwrap()
    }

    #[test]
    fn rendering() {
        assert_eq!(ExtDim { finite: 1, h1f_mult: 1, case: QP }.render(), "2 (= ef+1)");
        assert_eq!(ExtDim { finite: 2, h1f_mult: 1, case: BaseCase::PAdic { e: 2, f: 3 } }.render(), "8 (= ef+2)");
        assert_eq!(ExtDim { finite: 1, h1f_mult: 1, case: BaseCase::FunctionField }.render(), "countably infinite");
        assert_eq!(ExtDim::finite(1, BaseCase::FunctionField).render(), "1");
    }

    #[test]
    fn h1_structure_dimensions() {
        for pr in [params(3, 1, 2, 1), params(2, 1, 3, 1), params(2, 2, 3, 1), params(3, 1, 4, 3)] {
            for a in crate::numth::divisors(pr.d) {
                for c in level_characters(pr, a, &[1]).unwrap() {
                    let h = h1_structure(&c, false);
                    assert_eq!(h.kd_dim(), pr.degree());
                }
            }
        }
        let pr = params(3, 1, 2, 1);
        let h = h1_structure(&Character::trivial(pr, 1), false);
        assert_eq!(h.induced.len(), 1);
        assert_eq!(h.induced[0].dim, 2);
    }

    #[test]
    fn conditions() {
        let pr = params(3, 1, 2, 1);
        assert_eq!(cond_eval(&Character::trivial(pr, 2)).0, SummandKind::CondA);
        let b = Character::new(pr, 2, RootOfUnity::TRIVIAL, 8 - 2).unwrap();
        assert_eq!(cond_eval(&b), (SummandKind::CondB, Some(0)));
        for c in level_characters(pr, 1, &[1, 2]).unwrap() {
            assert_ne!(cond_eval(&c).0, SummandKind::CondB);
        }
        assert_eq!(ext1_char(&b, QP).value(), Some(1));
        assert_eq!(ext1_char(&Character::trivial(pr, 1), QP).render(), "2 (= ef+1)");
    }

    #[test]
    fn trivial_pair() {
        let pr = params(3, 1, 2, 1);
        let t = Irrep::trivial(pr);
        let r = ext_n(&t, &t, 1, QP).unwrap();
        assert_eq!(r.rendered, "2 (= ef+1)");
        let ff = ext_n(&t, &t, 1, BaseCase::FunctionField).unwrap();
        assert_eq!(ff.rendered, "countably infinite");
        assert_eq!(ext_n(&t, &t, 0, QP).unwrap().total.value(), Some(1));
        assert!(matches!(ext_n(&t, &t, 2, QP), Err(Error::Unsupported(_))));
    }

    #[test]
    fn quaternion_example_values() {
        let pr = params(3, 1, 2, 1);
        let one = RootOfUnity::TRIVIAL;
        let pi = |m| Irrep::from_parts(pr, 2, m, one).unwrap();
        let dim = |a, b| ext_n(&pi(a), &pi(b), 1, QP).unwrap().total.value().unwrap();
        assert_eq!(dim(1, 1), 3);
        assert_eq!(dim(2, 2), 2);
        assert_eq!(dim(1, 5), 1);
        assert_eq!(dim(1, 2), 0);
    }

    #[test]
    fn isomorphism_matches_hom() {
        let pr = params(3, 1, 2, 1);
        let half = RootOfUnity::new(1, 2).unwrap();
        let irreps = canonical_irreps(pr, &[RootOfUnity::TRIVIAL, half]).unwrap();
        for x in &irreps {
            for y in &irreps {
                let hom = ext_n(x, y, 0, QP).unwrap().total.finite;
                assert_eq!(hom >= 1, crate::chars::irrep_iso(x, y));
            }
        }
    }

    #[test]
    fn top_degrees() {
        let pr = params(5, 1, 2, 1);
        let r = top_degree(&pr, QP).unwrap();
        assert_eq!(r, 4);
        let t = Character::trivial(pr, 2);
        assert_eq!(ext_high(&t, r + 1, QP).unwrap().value(), Some(1));
        assert!(ext_high(&t, r + 2, QP).unwrap().is_zero());
        assert!(ext_high(&t, 2, QP).is_err());
        assert!(ext_high(&t, r, BaseCase::FunctionField).is_err());
        for c in level_characters(pr, 2, &[1, 2]).unwrap() {
            assert_eq!(ext_high(&c.dual(), r, QP).unwrap().finite, ext1_char(&c, QP).finite);
        }
    }

    #[test]
    fn quaternion_table_matches_general_degrees() {
        let pr = params(5, 1, 2, 1);
        let dims: Vec<u64> = (0..5).map(|n| quaternion_qp_cohom(n).unwrap().dim).collect();
        assert_eq!(dims, vec![1, 3, 4, 3, 1]);
        for a in [1, 2] {
            for c in level_characters(pr, a, &[1, 2]).unwrap() {
                assert_eq!(quaternion_qp_table(&c, 1, QP).unwrap(), ext1_char(&c, QP));
                assert_eq!(quaternion_qp_table(&c, 4, QP).unwrap(), ext_high(&c, 4, QP).unwrap());
                assert_eq!(quaternion_qp_table(&c, 5, QP).unwrap(), ext_high(&c, 5, QP).unwrap());
                assert!(quaternion_qp_table(&c, 6, QP).unwrap().is_zero());
            }
        }
        assert!(quaternion_qp_table(&Character::trivial(params(3, 1, 2, 1), 1), 0, QP).is_err());
    }

    #[test]
    fn h2_bound() {
        assert_eq!(h_aux(3, 0), 1);
        assert_eq!(h_aux(3, 3), 1);
        assert_eq!(h_aux(4, 2), 6);
        let b = h2_lower_bound(&params(5, 1, 2, 1), BaseCase::PAdic { e: 2, f: 1 }).unwrap();
        assert_eq!(b.dim, 2 * 2 + 1);
    }

    #[test]
    fn oracle_examples() {
        let pr = params(3, 1, 2, 1);
        assert_eq!(invariants_oracle(&Character::trivial(pr, 1), false, 1 << 24).unwrap(), 0);
        let c = eta_character(pr, 0, true);
        assert_eq!(invariants_oracle(&c, false, 1 << 24).unwrap(), 1);
    }

    #[test]
    fn oracle_agrees_on_small_grid() {
        let pr = params(2, 1, 3, 1);
        let o = InvariantsOracle::new(pr, &[1, 3], 1 << 24).unwrap();
        for a in [1, 3] {
            for c in level_characters(pr, a, &[1, 3]).unwrap() {
                for dualized in [false, true] {
                    assert_eq!(o.dim(&c, dualized).unwrap(), mult_trivial_h1(&c, dualized, QP).finite, "{c}");
                }
            }
        }
    }
}
