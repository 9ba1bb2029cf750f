//! Representative elements of a block.

use std::ops::Range;

use crate::error::{Error, Result};

/// Offsets (into `values`) of the valleys of the subsequence formed by the
/// entries in `range` that exceed `threshold`.
pub(crate) fn rep_offsets(values: &[usize], range: Range<usize>, threshold: usize) -> Vec<usize> {
    let kept: Vec<usize> = range.filter(|&o| values[o] > threshold).collect();
    let mut out = Vec::new();
    for (m, &o) in kept.iter().enumerate() {
        let v = values[o];
        let left = m == 0 || values[kept[m - 1]] > v;
        let right = m + 1 == kept.len() || values[kept[m + 1]] > v;
        if left && right {
            out.push(o);
        }
    }
    out
}

fn rep(block: &[usize], i: usize, j: usize, right_of: bool) -> Result<Vec<usize>> {
    let range = if j == 0 {
        0..block.len()
    } else {
        let pos = block
            .iter()
            .position(|&v| v == j)
            .ok_or(Error::NotInBlock { value: j })?;
        if right_of {
            pos + 1..block.len()
        } else {
            0..pos
        }
    };
    let mut out: Vec<usize> = rep_offsets(block, range, i).into_iter().map(|o| block[o]).collect();
    out.sort_unstable();
    Ok(out)
}

/// Valleys of the elements of `block` right of `j` and larger than `i`,
/// in increasing order. `j = 0` and `i = 0` impose no restriction.
pub fn u_rep(block: &[usize], i: usize, j: usize) -> Result<Vec<usize>> {
    rep(block, i, j, true)
}

/// Valleys of the elements of `block` left of `j` and larger than `i`.
pub fn d_rep(block: &[usize], i: usize, j: usize) -> Result<Vec<usize>> {
    rep(block, i, j, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    const T_EX: [usize; 12] = [1, 8, 12, 4, 7, 11, 6, 3, 2, 9, 5, 10];

    #[test]
    fn running_example_sets() {
        assert_eq!(d_rep(&T_EX, 3, 2).unwrap(), vec![4, 6, 8]);
        assert_eq!(u_rep(&T_EX, 3, 2).unwrap(), vec![5]);
    }

    #[test]
    fn no_restrictions_gives_all_valleys() {
        assert_eq!(u_rep(&T_EX, 0, 0).unwrap(), vec![1, 2, 4, 5]);
        assert!(u_rep(&T_EX, 12, 0).unwrap().is_empty());
    }

    #[test]
    fn anchor_must_be_in_block() {
        assert_eq!(u_rep(&[3, 1, 2], 0, 7), Err(Error::NotInBlock { value: 7 }));
    }

    #[test]
    fn anchor_at_edge() {
        assert!(d_rep(&[3, 1, 2], 0, 3).unwrap().is_empty());
        assert!(u_rep(&[3, 1, 2], 0, 2).unwrap().is_empty());
        assert_eq!(u_rep(&[3, 1, 2], 0, 3).unwrap(), vec![1]);
    }
}
