use serde::Serialize;

use crate::perm::Permutation;
use crate::runs::{Direction, RunDecomposition};

/// How the text was extended so that its last run points the other way from
/// the pattern's last run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Padding {
    /// Directions already differ; text unchanged.
    None,
    /// Pattern and text both end with a run down: `n+1` appended.
    AppendMax,
    /// Both end with a run up: every value shifted up by one and `1`
    /// appended, i.e. a `0` appended to the original text.
    AppendMin,
}

impl Padding {
    /// Offset added to original text values inside the padded text.
    pub fn shift(self) -> usize {
        match self {
            Padding::AppendMin => 1,
            _ => 0,
        }
    }

    /// Maps a padded value (or the sentinel 0) back to the original text.
    pub fn to_original(self, v: usize) -> usize {
        if v == 0 {
            0
        } else {
            v - self.shift()
        }
    }

    pub fn to_padded(self, v: usize) -> usize {
        if v == 0 {
            0
        } else {
            v + self.shift()
        }
    }
}

/// Appends a sentinel to `text` when its last run has the same direction as
/// the pattern's last run. The sentinel can never take part in a witness.
pub fn pad_text(pattern: &Permutation, text: &Permutation) -> (Permutation, Padding) {
    if pattern.is_empty() || text.is_empty() {
        return (text.clone(), Padding::None);
    }
    let p_last = RunDecomposition::new(pattern).last_direction();
    let t_last = RunDecomposition::new(text).last_direction();
    if p_last != t_last {
        return (text.clone(), Padding::None);
    }
    let n = text.len();
    let (values, padding) = match t_last {
        Some(Direction::Down) => {
            let mut v = text.values().to_vec();
            v.push(n + 1);
            (v, Padding::AppendMax)
        }
        _ => {
            let mut v: Vec<usize> = text.values().iter().map(|x| x + 1).collect();
            v.push(1);
            (v, Padding::AppendMin)
        }
    };
    let padded = Permutation::new(values).expect("padding preserves bijectivity");
    (padded, padding)
}
