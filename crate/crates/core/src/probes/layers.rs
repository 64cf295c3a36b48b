//! Digit images of commutators between norm-one layers.

use std::sync::Arc;

use serde::Serialize;

use crate::dalg::{Algebra, Mode};
use crate::error::{Error, Result};
use crate::gf::{FieldSpec, FqElem};
use crate::linalg::Subspace;

use super::roots::nrd1_decompose;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LayerKind {
    Full,
    TraceKernel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerReport {
    pub i: usize,
    pub expected: LayerKind,
    /// `F_p`-dimension of the observed span.
    pub observed_dim: usize,
    pub expected_dim: usize,
    pub pairs_checked: usize,
    pub pass: bool,
}

/// Pairs above this many are replaced by basis pairs (the pairing is bi-additive).
pub const EXHAUSTIVE_PAIRS: u64 = 1 << 12;

/// Span of `q_{i+1}([u, w])` over `u ∈ I_{1,Nrd=1}`, `w ∈ I_{i,Nrd=1}`.
pub fn layer_image(field: Arc<FieldSpec>, mode: Mode, i: usize) -> Result<(Subspace<u64>, usize)> {
    if i == 0 {
        return Err(Error::InvalidParameter("layer index must be positive".into()));
    }
    let d = field.d() as usize;
    // Work one digit beyond i+2 so the d-th root of the norm is exact there.
    let alg = Algebra::new(field.clone(), mode, (i + 2).div_ceil(d) + 1)?;
    let elems: Vec<FqElem> = if field.order().pow(2) <= EXHAUSTIVE_PAIRS {
        field.elements().collect()
    } else {
        field.basis()
    };
    let us = elems
        .iter()
        .map(|&x| nrd1_decompose(&alg, &alg.one_plus(x, 1)).map(|r| r.1))
        .collect::<Result<Vec<_>>>()?;
    let ws = elems
        .iter()
        .map(|&y| nrd1_decompose(&alg, &alg.one_plus(y, i)).map(|r| r.1))
        .collect::<Result<Vec<_>>>()?;
    let mut vectors = Vec::new();
    for u in &us {
        for w in &ws {
            let c = alg.commutator(u, w)?;
            debug_assert!(alg.in_level(&c, i + 1));
            vectors.push(field.coeffs(alg.digit(&c, i + 1)?));
        }
    }
    Ok((field.span(&vectors), vectors.len()))
}

pub fn layer_check(field: Arc<FieldSpec>, mode: Mode, i: usize) -> Result<LayerReport> {
    let d = field.d() as usize;
    let (observed, pairs) = layer_image(field.clone(), mode, i)?;
    let (kind, expected) = if (i + 1) % d == 0 {
        (LayerKind::TraceKernel, field.trace_kernel())
    } else {
        (LayerKind::Full, field.full_space())
    };
    Ok(LayerReport {
        i,
        expected: kind,
        observed_dim: observed.dim(),
        expected_dim: expected.dim(),
        pairs_checked: pairs,
        pass: observed == expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn quaternion_first_layer_is_trace_kernel() {
        let k = Arc::new(make_field(3, 1, 2, 1).unwrap());
        let r = layer_check(k, Mode::EqualChar, 1).unwrap();
        assert_eq!(r.expected, LayerKind::TraceKernel);
        assert_eq!(r.observed_dim, 1);
        assert!(r.pass);
    }

    #[test]
    fn cubic_layers() {
        let k = Arc::new(make_field(2, 1, 3, 1).unwrap());
        let r1 = layer_check(k.clone(), Mode::EqualChar, 1).unwrap();
        assert_eq!((r1.expected, r1.pass), (LayerKind::Full, true));
        let r2 = layer_check(k, Mode::EqualChar, 2).unwrap();
        assert_eq!((r2.expected, r2.pass), (LayerKind::TraceKernel, true));
    }
}
