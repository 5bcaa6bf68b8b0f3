use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::rational::Rat;

/// Sparse vector: column index to nonzero coefficient.
pub type SparseRow = BTreeMap<usize, Rat>;

/// Incremental row echelon form over the rationals for sparse rows.
///
/// Each stored pivot row has leading coefficient one, keyed by its leading
/// column. Inserting a row reduces it against the stored pivots; it is kept
/// iff it is independent of everything inserted before.
#[derive(Default, Debug)]
pub struct SparseEchelon {
    pivots: HashMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Returns true when the row raised the rank.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, x| !x.is_zero());
        loop {
            let Some((&lead, coeff)) = row.iter().next() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(pivot) => {
                    let factor = coeff.clone();
                    for (&c, x) in pivot {
                        let delta = &factor * x;
                        let entry = row.entry(c).or_insert_with(Rat::zero);
                        *entry -= delta;
                        if entry.is_zero() {
                            row.remove(&c);
                        }
                    }
                }
                None => {
                    let inv = coeff.recip();
                    if !inv.is_one() {
                        for x in row.values_mut() {
                            *x *= &inv;
                        }
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }
}
