//! Batch cross-checks of the diagram engine against the rewrite engine.

use crate::diagrams::Limits;
use crate::error::Result;
use crate::normal_form::NormalForm;
use crate::oracle::normal_order_rewrite;
use crate::par::{self, Execution};
use crate::wick::normal_order_diagrams_with;
use crate::word::{LetterType, Word};

/// All `2^len` words of length `len`, in binary order with `c` as 0.
pub fn words_of_length(len: usize) -> Vec<Word> {
    assert!(
        len < usize::BITS as usize,
        "word length {len} too large to enumerate"
    );
    (0..1usize << len)
        .map(|bits| {
            (0..len)
                .map(|i| {
                    if bits >> (len - 1 - i) & 1 == 1 {
                        LetterType::Creator
                    } else {
                        LetterType::Annihilator
                    }
                })
                .collect()
        })
        .collect()
}

/// Every nonempty word of length at most `max_len`, shortest first.
pub fn words_up_to(max_len: usize) -> Vec<Word> {
    (1..=max_len).flat_map(words_of_length).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub word: Word,
    pub diagrams: NormalForm,
    pub rewrite: NormalForm,
}

#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub words_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl SweepReport {
    pub fn all_agree(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Runs both engines on every word and collects disagreements, in input order.
///
/// Words are distributed across threads; each word's diagrams are enumerated
/// sequentially.
pub fn engine_sweep(words: &[Word], limits: Limits, exec: Execution) -> Result<SweepReport> {
    let outcomes = par::map_ordered(words, exec, |w| -> Result<Option<Mismatch>> {
        let diagrams = normal_order_diagrams_with(w, limits, Execution::Sequential)?;
        let rewrite = normal_order_rewrite(w);
        Ok((diagrams != rewrite).then(|| Mismatch {
            word: w.clone(),
            diagrams,
            rewrite,
        }))
    });
    let mut report = SweepReport {
        words_checked: words.len(),
        mismatches: Vec::new(),
    };
    for outcome in outcomes {
        if let Some(m) = outcome? {
            report.mismatches.push(m);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_generation() {
        assert_eq!(words_of_length(0), vec![Word::empty()]);
        assert_eq!(words_of_length(3).len(), 8);
        assert_eq!(words_of_length(2)[1].render_text(), "c c+");
        assert_eq!(words_up_to(10).len(), 2046);
    }

    #[test]
    fn short_sweep_agrees() {
        let words = words_up_to(6);
        let report = engine_sweep(&words, Limits::default(), Execution::default()).unwrap();
        assert_eq!(report.words_checked, 126);
        assert!(report.all_agree());
    }
}
