//! Block designs, regular t-wise balanced designs and ±1 orthogonal arrays.

mod block;
pub mod catalog;
mod oa;

pub use block::{
    block_count, derive_design, design_strength, search_design, subsets, verify_design, xiang_bound, BlockDesign, DesignReport,
    SearchLimits,
};
pub use oa::{
    dual_bch_generator, dual_bch_oa, dual_bch_oa_symmetric, nordstrom_robinson, oa_from_linear_code, trivial_oa, verify_oa, OaReport,
    OrthogonalArray,
};

use alloc::vec::Vec;

use crate::error::{invalid, Result};
use crate::exactnum::FieldElement;

/// `I = βJ + (α−β)M`: one column per block, α on the block's points.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedIncidence {
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub columns: Vec<Vec<FieldElement>>,
}

impl GeneralizedIncidence {
    /// Entry (point, block).
    pub fn entry(&self, point: usize, block: usize) -> &FieldElement {
        &self.columns[block][point]
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }
}

pub fn generalized_incidence(d: &BlockDesign, alpha: &FieldElement, beta: &FieldElement) -> Result<GeneralizedIncidence> {
    if alpha == beta {
        return Err(invalid("generalized incidence needs alpha != beta"));
    }
    let columns = d
        .blocks()
        .iter()
        .map(|b| {
            let mut col = alloc::vec![beta.clone(); d.v()];
            for &p in b {
                col[p] = alpha.clone();
            }
            col
        })
        .collect();
    Ok(GeneralizedIncidence { alpha: alpha.clone(), beta: beta.clone(), columns })
}
