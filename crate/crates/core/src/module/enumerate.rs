use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

use super::{FinModule, Submodule};

/// Breadth-first closure of the cyclic submodules under sums.
pub(super) fn enumerate_submodules(m: &FinModule, bound: u128) -> Result<Vec<Submodule>> {
    let size = m.order();
    if size > bound {
        return Err(Error::BoundExceeded { bound, size });
    }
    let mut cyclic: BTreeSet<Submodule> = BTreeSet::new();
    for v in m.elements() {
        cyclic.insert(m.span(&[v]).expect("element has module rank"));
    }
    let cyclic: Vec<Submodule> = cyclic.into_iter().collect();
    let mut all: BTreeSet<Submodule> = cyclic.iter().cloned().collect();
    let mut queue: VecDeque<Submodule> = cyclic.iter().cloned().collect();
    while let Some(s) = queue.pop_front() {
        for c in &cyclic {
            if c.is_subset_of(&s) {
                continue;
            }
            let t = s.join(c);
            if !all.contains(&t) {
                all.insert(t.clone());
                queue.push_back(t);
            }
        }
    }
    Ok(all.into_iter().collect())
}
