//! Algebraic invariants checked on random inputs.

use std::sync::Arc;

use divext::chars::{irrep_iso, Character, Irrep, RootOfUnity};
use divext::cohomx::{ext_n, BaseCase};
use divext::dalg::{Algebra, DAlgElem, Mode};
use divext::gf::{make_field, FieldSpec, FqElem, Params};
use proptest::prelude::*;

fn field() -> Arc<FieldSpec> {
    Arc::new(make_field(3, 1, 2, 1).unwrap())
}

fn algebra(mode: Mode) -> Algebra {
    Algebra::new(Arc::new(make_field(5, 1, 2, 1).unwrap()), mode, 4).unwrap()
}

fn elem(alg: &Algebra, digits: &[u32]) -> DAlgElem {
    let q = alg.field().order() as u32;
    let ds: Vec<FqElem> = digits.iter().take(alg.level()).map(|&x| FqElem(x % q)).collect();
    alg.from_digits(&ds)
}

fn digits() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..25, 8)
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::EqualChar), Just(Mode::MixedUnramified)]
}

fn params() -> Params {
    Params::new(5, 1, 2, 1).unwrap()
}

fn irrep() -> impl Strategy<Value = Irrep> {
    (0u64..24, 0i64..2).prop_filter_map("order must equal the level", |(m, u)| {
        let alpha = RootOfUnity::new(u, 2).ok()?;
        let a = if m % 6 == 0 { 1 } else { 2 };
        Irrep::from_parts(params(), a, m, alpha).ok()
    })
}

const CASE: BaseCase = BaseCase::PAdic { e: 1, f: 1 };

proptest! {
    #[test]
    fn field_distributes(a in 0u32..9, b in 0u32..9, c in 0u32..9) {
        let k = field();
        let (a, b, c) = (FqElem(a), FqElem(b), FqElem(c));
        prop_assert_eq!(k.mul(k.add(a, b), c), k.add(k.mul(a, c), k.mul(b, c)));
        prop_assert_eq!(k.sigma(k.mul(a, b), 1), k.mul(k.sigma(a, 1), k.sigma(b, 1)));
    }

    #[test]
    fn norm_multiplicative_trace_additive(a in 1u32..9, b in 1u32..9) {
        let k = field();
        let (a, b) = (FqElem(a), FqElem(b));
        prop_assert_eq!(k.norm(k.mul(a, b), 1).unwrap(), k.mul(k.norm(a, 1).unwrap(), k.norm(b, 1).unwrap()));
        prop_assert_eq!(k.trace(k.add(a, b), 1).unwrap(), k.add(k.trace(a, 1).unwrap(), k.trace(b, 1).unwrap()));
    }

    #[test]
    fn algebra_ring_laws(m in mode(), x in digits(), y in digits(), z in digits()) {
        let alg = algebra(m);
        let (x, y, z) = (elem(&alg, &x), elem(&alg, &y), elem(&alg, &z));
        prop_assert_eq!(alg.mul(&alg.mul(&x, &y), &z), alg.mul(&x, &alg.mul(&y, &z)));
        prop_assert_eq!(alg.mul(&x, &alg.add(&y, &z)), alg.add(&alg.mul(&x, &y), &alg.mul(&x, &z)));
    }

    #[test]
    fn reduced_norm_multiplicative(m in mode(), mut x in digits(), mut y in digits()) {
        let alg = algebra(m);
        x[0] = x[0] % 24 + 1;
        y[0] = y[0] % 24 + 1;
        let (x, y) = (elem(&alg, &x), elem(&alg, &y));
        let g = alg.ground();
        let lhs = alg.reduced_norm(&alg.mul(&x, &y)).unwrap();
        prop_assert_eq!(lhs, g.mul(&alg.reduced_norm(&x).unwrap(), &alg.reduced_norm(&y).unwrap()));
    }

    #[test]
    fn unit_inverse(m in mode(), mut x in digits()) {
        let alg = algebra(m);
        x[0] = x[0] % 24 + 1;
        let x = elem(&alg, &x);
        prop_assert_eq!(alg.mul(&x, &alg.inv(&x).unwrap()), alg.one());
    }

    #[test]
    fn character_laws(m in 0u64..24, n in 0u64..24, u in 0i64..4, i in -4i64..4) {
        let al = RootOfUnity::new(u, 4).unwrap();
        let c = Character::new(params(), 2, al, m).unwrap();
        let c2 = Character::new(params(), 2, RootOfUnity::TRIVIAL, n).unwrap();
        prop_assert!(c.tensor(&c.dual()).unwrap().is_trivial());
        prop_assert_eq!(c.conjugate(i).conjugate(-i), c.clone());
        prop_assert_eq!(c.conjugate(2), c.clone());
        prop_assert_eq!(c.tensor(&c2).unwrap().conjugate(i), c.conjugate(i).tensor(&c2.conjugate(i)).unwrap());
    }

    #[test]
    fn character_evaluation_is_multiplicative(m in 0u64..24, x in 1u32..25, y in 1u32..25) {
        let k = make_field(5, 1, 2, 1).unwrap();
        let c = Character::new(params(), 2, RootOfUnity::TRIVIAL, m).unwrap();
        let (x, y) = (FqElem(x), FqElem(y));
        let xy = c.evaluate(&k, 0, k.mul(x, y)).unwrap();
        prop_assert_eq!(xy, c.evaluate(&k, 0, x).unwrap().add(&c.evaluate(&k, 0, y).unwrap()));
    }

    #[test]
    fn canonical_form(pi in irrep()) {
        let c = pi.canonical();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.canonical(), c.clone());
        prop_assert!(irrep_iso(&pi, &c));
        prop_assert_eq!(pi.dual().dual().canonical(), c);
    }

    #[test]
    fn ext_symmetries(pi in irrep(), pi2 in irrep(), u in 0i64..2) {
        let e = |x: &Irrep, y: &Irrep, n| ext_n(x, y, n, CASE).unwrap().total;
        prop_assert_eq!(e(&pi, &pi2, 1), e(&pi2.dual(), &pi.dual(), 1));
        let rho = Character::new(params(), 1, RootOfUnity::new(u, 2).unwrap(), 0).unwrap();
        let (t, t2) = (pi.twist(&rho).unwrap(), pi2.twist(&rho).unwrap());
        prop_assert_eq!(e(&t, &t2, 1), e(&pi, &pi2, 1));
        prop_assert_eq!(e(&pi, &pi2, 0).value(), Some(irrep_iso(&pi, &pi2) as u64));
    }
}
