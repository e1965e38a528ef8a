//! Rayon drivers for the coset oracle.

use hecke_core::oracle::{merge_tallies, tally_products, LatticeCoset, Tally};
use hecke_core::Result;
use rayon::prelude::*;

/// [`tally_products`] over chunks of the left cosets. The merge is a sum of
/// counts, so the result does not depend on the chunking or the scheduling.
pub fn parallel_tally(left: &[LatticeCoset], right: &[LatticeCoset]) -> Result<Tally> {
    let chunk = left.len().div_ceil(4 * rayon::current_num_threads()).max(1);
    let parts: Vec<Result<Tally>> = left.par_chunks(chunk).map(|c| tally_products(c, right)).collect();
    let mut acc = Tally::new();
    for part in parts {
        merge_tallies(&mut acc, part?);
    }
    Ok(acc)
}
