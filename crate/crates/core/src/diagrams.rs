//! Feynman diagrams on a word: enumeration, crossing statistics and q-weights.
//!
//! A diagram pairs some annihilators with creators standing to their right;
//! every other position is a singleton. Positions are 1-based.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, ParseError, Result};
use crate::par::{self, Execution};
use crate::qpoly::QPolynomial;
use crate::word::{LetterType, Word};

/// Default cap on the number of diagrams that may be materialized.
pub const DEFAULT_MAX_DIAGRAMS: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_diagrams: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_diagrams: DEFAULT_MAX_DIAGRAMS,
        }
    }
}

impl Limits {
    pub fn new(max_diagrams: u64) -> Self {
        Limits { max_diagrams }
    }

    /// Fails with `LimitExceeded` when `w` has more diagrams than the cap.
    pub fn check(&self, w: &Word) -> Result<BigUint> {
        let count = count_diagrams(w);
        if count > BigUint::from(self.max_diagrams) {
            return Err(Error::LimitExceeded {
                count: count.to_string(),
                cap: self.max_diagrams,
            });
        }
        Ok(count)
    }
}

/// A set of edges `(i, j)`, `i < j`, kept sorted by `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FeynmanDiagram {
    edges: Vec<(usize, usize)>,
}

impl FeynmanDiagram {
    /// Edges are sorted into canonical order; validity against a word is
    /// checked by [`diagram_stats`].
    pub fn new(mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        FeynmanDiagram { edges }
    }

    pub fn empty() -> Self {
        FeynmanDiagram::default()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self) -> usize {
        self.edges.len()
    }

    /// Parses `"1-3,2-6"`; the empty string is the empty diagram.
    pub fn parse(text: &str) -> std::result::Result<Self, ParseError> {
        let mut edges = Vec::new();
        if text.trim().is_empty() {
            return Ok(FeynmanDiagram::empty());
        }
        let mut offset = 0;
        for part in text.split(',') {
            let (i, j) = part.split_once('-').ok_or_else(|| {
                ParseError::new(offset, format!("expected 'i-j', found '{}'", part.trim()))
            })?;
            let num = |s: &str, at: usize| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| ParseError::new(at, format!("invalid position '{}'", s.trim())))
            };
            edges.push((num(i, offset)?, num(j, offset + i.len() + 1)?));
            offset += part.len() + 1;
        }
        Ok(FeynmanDiagram::new(edges))
    }
}

impl fmt::Display for FeynmanDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (i, j)) in self.edges.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}-{j}")?;
        }
        Ok(())
    }
}

impl FromStr for FeynmanDiagram {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        FeynmanDiagram::parse(s)
    }
}

/// Statistics of one diagram on one word.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiagramStats {
    /// Left crossings: edge pairs with `i_k < i_m < j_k < j_m`.
    pub crossings: u64,
    /// Degenerate crossings: singletons strictly inside an edge, summed over edges.
    pub degenerate: u64,
    /// `crossings + degenerate`.
    pub total_crossings: u64,
    /// For each annihilator singleton, the creator singletons to its right.
    pub length: u64,
    /// `total_crossings + length`.
    pub weight_exponent: u64,
    pub singleton_creators: usize,
    pub singleton_annihilators: usize,
}

impl fmt::Display for DiagramStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "c={} d={} tc={} l={} weight=q^{}",
            self.crossings,
            self.degenerate,
            self.total_crossings,
            self.length,
            self.weight_exponent
        )
    }
}

/// Checks that `g` is a diagram on `w`.
pub fn validate(w: &Word, g: &FeynmanDiagram) -> Result<()> {
    let mut seen = vec![false; w.len() + 1];
    for &(i, j) in g.edges() {
        if i >= j {
            return Err(Error::InvalidDiagram(format!(
                "edge {i}-{j}: the annihilator must precede the creator (i < j)"
            )));
        }
        if i == 0 || j > w.len() {
            return Err(Error::InvalidDiagram(format!(
                "edge {i}-{j}: positions must lie in 1..={}",
                w.len()
            )));
        }
        if w.at(i) != Some(LetterType::Annihilator) {
            return Err(Error::InvalidDiagram(format!(
                "edge {i}-{j}: position {i} is not an annihilator"
            )));
        }
        if w.at(j) != Some(LetterType::Creator) {
            return Err(Error::InvalidDiagram(format!(
                "edge {i}-{j}: position {j} is not a creator"
            )));
        }
        for p in [i, j] {
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidDiagram(format!(
                    "position {p} belongs to more than one edge"
                )));
            }
        }
    }
    Ok(())
}

pub fn diagram_stats(w: &Word, g: &FeynmanDiagram) -> Result<DiagramStats> {
    validate(w, g)?;
    Ok(stats_unchecked(w.letters(), g.edges()))
}

/// `q^(tc + l)`.
pub fn diagram_weight(w: &Word, g: &FeynmanDiagram) -> Result<QPolynomial> {
    Ok(QPolynomial::monomial(diagram_stats(w, g)?.weight_exponent))
}

/// Exponents `(k, l)` of the monomial `(c+)^k c^l` left after contracting `g`.
pub fn double_dot(w: &Word, g: &FeynmanDiagram) -> Result<(usize, usize)> {
    validate(w, g)?;
    let (m, n) = w.counts();
    Ok((m - g.degree(), n - g.degree()))
}

/// Statistics straight from the definitions, for an edge list known to be valid.
pub(crate) fn stats_unchecked(letters: &[LetterType], edges: &[(usize, usize)]) -> DiagramStats {
    let n = letters.len();
    let mut paired = vec![false; n + 1];
    for &(i, j) in edges {
        paired[i] = true;
        paired[j] = true;
    }
    // singles_before[x] = number of singletons at positions 1..=x
    let mut singles_before = vec![0u64; n + 1];
    for pos in 1..=n {
        singles_before[pos] = singles_before[pos - 1] + u64::from(!paired[pos]);
    }

    let mut crossings = 0u64;
    for (a, &(_, jk)) in edges.iter().enumerate() {
        for &(im, jm) in &edges[a + 1..] {
            // edges are sorted by i, so only (k, m) with i_k < i_m can cross
            if im < jk && jk < jm {
                crossings += 1;
            }
        }
    }

    let degenerate: u64 = edges
        .iter()
        .map(|&(i, j)| singles_before[j - 1] - singles_before[i])
        .sum();

    let mut length = 0u64;
    let mut creators_right = 0u64;
    let (mut r, mut s) = (0usize, 0usize);
    for pos in (1..=n).rev() {
        if paired[pos] {
            continue;
        }
        match letters[pos - 1] {
            LetterType::Creator => {
                creators_right += 1;
                r += 1;
            }
            LetterType::Annihilator => {
                length += creators_right;
                s += 1;
            }
        }
    }

    let total_crossings = crossings + degenerate;
    DiagramStats {
        crossings,
        degenerate,
        total_crossings,
        length,
        weight_exponent: total_crossings + length,
        singleton_creators: r,
        singleton_annihilators: s,
    }
}

/// Streaming iterator over the degree-`p` diagrams of a word in lexicographic
/// order of the canonical edge list.
///
/// Backtracks over annihilators left to right; each one is paired with an
/// unused creator to its right (ascending) or left single, in that order.
#[derive(Clone, Debug)]
pub struct DegreeIter {
    ann: Vec<usize>,
    cre: Vec<usize>,
    /// index of the first creator to the right of each annihilator
    first_after: Vec<usize>,
    used: Vec<bool>,
    target: usize,
    edges: Vec<(usize, usize)>,
    /// option applied at each depth; `cre.len()` means "single"
    frames: Vec<usize>,
    floor: usize,
    state: IterState,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum IterState {
    Fresh,
    Active,
    Done,
}

impl DegreeIter {
    pub fn new(w: &Word, degree: usize) -> Self {
        let ann = w.annihilator_positions();
        let cre = w.creator_positions();
        let first_after = ann
            .iter()
            .map(|&a| cre.partition_point(|&c| c < a))
            .collect();
        let used = vec![false; cre.len()];
        let state = if degree > ann.len().min(cre.len()) {
            IterState::Done
        } else {
            IterState::Fresh
        };
        DegreeIter {
            ann,
            cre,
            first_after,
            used,
            target: degree,
            edges: Vec::with_capacity(degree),
            frames: Vec::new(),
            floor: 0,
            state,
        }
    }

    /// Only the diagrams whose first annihilator takes `root`: a creator index
    /// (into the word's creators, 0-based) or `creators` for "single".
    fn rooted(w: &Word, degree: usize, root: usize) -> Self {
        let mut it = DegreeIter::new(w, degree);
        if it.state == IterState::Done || it.ann.is_empty() {
            return it;
        }
        match it.first_feasible(0, root) {
            Some(opt) if opt == root => {
                it.apply(0, opt);
                it.floor = 1;
            }
            _ => it.state = IterState::Done,
        }
        it
    }

    /// Options of the first annihilator, in enumeration order.
    fn root_options(w: &Word) -> Vec<usize> {
        let ann = w.annihilator_positions();
        let cre = w.creator_positions();
        match ann.first() {
            None => Vec::new(),
            Some(&a) => {
                let start = cre.partition_point(|&c| c < a);
                (start..=cre.len()).collect()
            }
        }
    }

    fn first_feasible(&self, depth: usize, start: usize) -> Option<usize> {
        let single = self.cre.len();
        if self.edges.len() < self.target {
            let from = start.max(self.first_after[depth]);
            if let Some(opt) = (from..single).find(|&c| !self.used[c]) {
                return Some(opt);
            }
        }
        let remaining = self.ann.len() - depth - 1;
        (start <= single && self.edges.len() + remaining >= self.target).then_some(single)
    }

    fn apply(&mut self, depth: usize, opt: usize) {
        if opt < self.cre.len() {
            self.used[opt] = true;
            self.edges.push((self.ann[depth], self.cre[opt]));
        }
        self.frames.push(opt);
    }

    fn undo(&mut self) -> Option<usize> {
        let opt = self.frames.pop()?;
        if opt < self.cre.len() {
            self.used[opt] = false;
            self.edges.pop();
        }
        Some(opt)
    }

    fn descend(&mut self) -> bool {
        while self.frames.len() < self.ann.len() {
            let depth = self.frames.len();
            match self.first_feasible(depth, 0) {
                Some(opt) => self.apply(depth, opt),
                None => return false,
            }
        }
        self.edges.len() == self.target
    }

    /// Moves to the next diagram; the current edge list is in [`Self::current`].
    pub fn advance(&mut self) -> bool {
        match self.state {
            IterState::Done => return false,
            IterState::Fresh => {
                self.state = IterState::Active;
                if self.descend() {
                    return true;
                }
            }
            IterState::Active => {}
        }
        loop {
            if self.frames.len() <= self.floor {
                self.state = IterState::Done;
                return false;
            }
            let Some(opt) = self.undo() else {
                self.state = IterState::Done;
                return false;
            };
            let depth = self.frames.len();
            if let Some(next) = self.first_feasible(depth, opt + 1) {
                self.apply(depth, next);
                if self.descend() {
                    return true;
                }
            }
        }
    }

    pub fn current(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

impl Iterator for DegreeIter {
    type Item = FeynmanDiagram;

    fn next(&mut self) -> Option<FeynmanDiagram> {
        self.advance().then(|| FeynmanDiagram {
            edges: self.edges.clone(),
        })
    }
}

/// Every diagram of `w` exactly once: by degree ascending, then lexicographic.
/// Streaming; no cap applies.
pub fn enumerate_diagrams(w: &Word) -> impl Iterator<Item = FeynmanDiagram> + '_ {
    let (m, n) = w.counts();
    (0..=m.min(n)).flat_map(move |p| DegreeIter::new(w, p))
}

/// The degree-`p` diagrams of `w`; empty when `p` exceeds half the word length.
pub fn enumerate_by_degree(w: &Word, degree: usize) -> DegreeIter {
    DegreeIter::new(w, degree)
}

/// Work units covering all diagrams of `w` in canonical order: one per
/// (degree, option of the first annihilator).
pub(crate) fn partition(w: &Word) -> Vec<(usize, Option<usize>)> {
    let (m, n) = w.counts();
    let roots = DegreeIter::root_options(w);
    (0..=m.min(n))
        .flat_map(|p| {
            if roots.is_empty() {
                vec![(p, None)]
            } else {
                roots.iter().map(|&r| (p, Some(r))).collect()
            }
        })
        .collect()
}

pub(crate) fn partition_iter(w: &Word, unit: (usize, Option<usize>)) -> DegreeIter {
    match unit {
        (p, None) => DegreeIter::new(w, p),
        (p, Some(root)) => DegreeIter::rooted(w, p, root),
    }
}

/// Materializes every diagram of `w` in canonical order, subject to the cap.
pub fn collect_diagrams(w: &Word, limits: Limits, exec: Execution) -> Result<Vec<FeynmanDiagram>> {
    limits.check(w)?;
    let units = partition(w);
    let chunks = par::map_ordered(&units, exec, |&unit| {
        partition_iter(w, unit).collect::<Vec<_>>()
    });
    Ok(chunks.into_iter().flatten().collect())
}

/// `|F(w)|` by a left-to-right count over the number of annihilators still
/// waiting for a partner; no enumeration.
pub fn count_diagrams(w: &Word) -> BigUint {
    // open[o] = ways to reach the current position with o committed annihilators
    let mut open: Vec<BigUint> = vec![BigUint::one()];
    for &letter in w.letters() {
        match letter {
            LetterType::Annihilator => {
                open.push(BigUint::zero());
                for o in (1..open.len()).rev() {
                    let prev = open[o - 1].clone();
                    open[o] += prev;
                }
            }
            LetterType::Creator => {
                for o in 0..open.len() - 1 {
                    let closing = &open[o + 1] * BigUint::from(o + 1);
                    open[o] += closing;
                }
            }
        }
        while open.len() > 1 && open.last().is_some_and(Zero::is_zero) {
            open.pop();
        }
    }
    open.swap_remove(0)
}

/// `|F_p(w)|` for `p = 0..=min(m, n)`.
pub fn count_by_degree(w: &Word) -> Vec<BigUint> {
    let (m, n) = w.counts();
    let max_p = m.min(n);
    // table[o][p]
    let mut table: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); max_p + 1]];
    table[0][0] = BigUint::one();
    for &letter in w.letters() {
        match letter {
            LetterType::Annihilator => {
                if table.len() <= max_p {
                    table.push(vec![BigUint::zero(); max_p + 1]);
                }
                for o in (1..table.len()).rev() {
                    let (below, above) = table.split_at_mut(o);
                    for (dst, src) in above[0].iter_mut().zip(&below[o - 1]) {
                        *dst += src;
                    }
                }
            }
            LetterType::Creator => {
                for o in 0..table.len() - 1 {
                    for p in 0..max_p {
                        let closing = &table[o + 1][p] * BigUint::from(o + 1);
                        table[o][p + 1] += closing;
                    }
                }
            }
        }
    }
    table.swap_remove(0)
}

/// `count_diagrams` as a `u64` when it fits.
pub fn count_diagrams_u64(w: &Word) -> Option<u64> {
    count_diagrams(w).to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;
    use LetterType::{Annihilator as A, Creator as C};

    fn d(s: &str) -> FeynmanDiagram {
        FeynmanDiagram::parse(s).unwrap()
    }

    fn twelve_vertex_stats() -> Word {
        parse_word("c c c+ c c c+ c+ c c+ c c+ c+").unwrap()
    }

    fn worked_example() -> Word {
        parse_word("c^2 c+ c^2 c+").unwrap()
    }

    #[test]
    fn smallest_words() {
        let ac = Word::new(vec![A, C]);
        let all: Vec<_> = enumerate_diagrams(&ac).collect();
        assert_eq!(all, vec![FeynmanDiagram::empty(), d("1-2")]);

        let ca = Word::new(vec![C, A]);
        assert_eq!(
            enumerate_diagrams(&ca).collect::<Vec<_>>(),
            vec![FeynmanDiagram::empty()]
        );
        assert_eq!(
            enumerate_by_degree(&ac, 1).collect::<Vec<_>>(),
            vec![d("1-2")]
        );
    }

    #[test]
    fn worked_example_degree_one_and_two() {
        let w = worked_example();
        let one: Vec<String> = enumerate_by_degree(&w, 1).map(|g| g.to_string()).collect();
        assert_eq!(one, ["1-3", "1-6", "2-3", "2-6", "4-6", "5-6"]);
        let two: Vec<String> = enumerate_by_degree(&w, 2).map(|g| g.to_string()).collect();
        assert_eq!(
            two,
            ["1-3,2-6", "1-3,4-6", "1-3,5-6", "1-6,2-3", "2-3,4-6", "2-3,5-6"]
        );
        assert_eq!(enumerate_by_degree(&w, 3).count(), 0);
        assert_eq!(enumerate_by_degree(&w, 4).count(), 0);
    }

    #[test]
    fn twelve_vertex_stats_statistics() {
        let s = diagram_stats(&twelve_vertex_stats(), &d("1-3,2-6,4-9,5-7,8-12")).unwrap();
        assert_eq!((s.crossings, s.degenerate, s.total_crossings), (4, 2, 6));
        assert_eq!((s.length, s.weight_exponent), (1, 7));
        assert_eq!((s.singleton_creators, s.singleton_annihilators), (1, 1));
        assert_eq!(
            diagram_weight(&twelve_vertex_stats(), &d("1-3,2-6,4-9,5-7,8-12")).unwrap(),
            QPolynomial::monomial(7)
        );
        assert_eq!(s.to_string(), "c=4 d=2 tc=6 l=1 weight=q^7");
    }

    #[test]
    fn nesting_is_not_crossing() {
        let w = twelve_vertex_stats();
        // (4,9) contains (5,7)
        let s = diagram_stats(&w, &d("4-9,5-7")).unwrap();
        assert_eq!(s.crossings, 0);
        let s = diagram_stats(&w, &d("2-6,4-9")).unwrap();
        assert_eq!(s.crossings, 1);
    }

    #[test]
    fn degenerate_counts_both_singleton_types() {
        let w = twelve_vertex_stats();
        let s = diagram_stats(&w, &d("8-12")).unwrap();
        // positions 9 (C), 10 (A), 11 (C) lie strictly inside
        assert_eq!(s.degenerate, 3);
        let s = diagram_stats(&w, &d("1-3,2-6,4-9,5-7,8-12")).unwrap();
        assert_eq!(s.degenerate, 2);
    }

    #[test]
    fn worked_example_weights() {
        let w = worked_example();
        let empty = diagram_stats(&w, &FeynmanDiagram::empty()).unwrap();
        assert_eq!((empty.crossings, empty.degenerate, empty.length), (0, 0, 6));
        assert_eq!(empty.weight_exponent, 6);
        let exps: Vec<u64> = enumerate_by_degree(&w, 1)
            .map(|g| diagram_stats(&w, &g).unwrap().weight_exponent)
            .collect();
        assert_eq!(exps, [4, 5, 3, 4, 3, 2]);
        let exps: Vec<u64> = enumerate_by_degree(&w, 2)
            .map(|g| diagram_stats(&w, &g).unwrap().weight_exponent)
            .collect();
        assert_eq!(exps, [3, 2, 1, 2, 1, 0]);
        assert_eq!(
            diagram_weight(&w, &d("1-6")).unwrap(),
            QPolynomial::monomial(5)
        );
        assert_eq!(
            diagram_weight(&w, &d("2-3")).unwrap(),
            QPolynomial::monomial(3)
        );
    }

    #[test]
    fn all_creators_weigh_one() {
        let w = Word::new(vec![C; 4]);
        assert_eq!(
            diagram_weight(&w, &FeynmanDiagram::empty()).unwrap(),
            QPolynomial::one()
        );
    }

    #[test]
    fn double_dot_shapes() {
        assert_eq!(
            double_dot(&worked_example(), &FeynmanDiagram::empty()).unwrap(),
            (2, 4)
        );
        assert_eq!(
            double_dot(&twelve_vertex_stats(), &d("1-3,2-6,4-9,5-7,8-12")).unwrap(),
            (1, 1)
        );
        assert_eq!(
            double_dot(&Word::new(vec![A, C]), &d("1-2")).unwrap(),
            (0, 0)
        );
    }

    #[test]
    fn invalid_diagrams() {
        let w = Word::new(vec![A, C]);
        let e = diagram_stats(&w, &d("2-1")).unwrap_err();
        assert!(e.to_string().contains("i < j"), "{e}");
        let w = worked_example();
        assert!(matches!(
            diagram_stats(&w, &d("3-6")),
            Err(Error::InvalidDiagram(_))
        ));
        assert!(matches!(
            diagram_stats(&w, &d("1-2")),
            Err(Error::InvalidDiagram(_))
        ));
        assert!(matches!(
            diagram_stats(&w, &d("1-3,2-3")),
            Err(Error::InvalidDiagram(_))
        ));
        assert!(matches!(
            diagram_stats(&w, &d("1-7")),
            Err(Error::InvalidDiagram(_))
        ));
        assert!(matches!(
            diagram_stats(&w, &d("0-3")),
            Err(Error::InvalidDiagram(_))
        ));
    }

    #[test]
    fn diagram_text_form() {
        assert_eq!(d("").degree(), 0);
        assert_eq!(d("5-7, 1-3").to_string(), "1-3,5-7");
        assert!(FeynmanDiagram::parse("1-").is_err());
        assert!(FeynmanDiagram::parse("1:3").is_err());
        assert!(FeynmanDiagram::parse("1-3,").is_err());
    }

    #[test]
    fn counting() {
        assert_eq!(count_diagrams(&worked_example()), BigUint::from(13u32));
        assert_eq!(count_diagrams(&Word::new(vec![A, C])), BigUint::from(2u32));
        assert_eq!(count_diagrams(&Word::number_power(3)), BigUint::from(5u32));
        assert_eq!(count_diagrams(&Word::empty()), BigUint::one());
        let by_degree: Vec<u32> = count_by_degree(&worked_example())
            .iter()
            .map(|c| c.to_u32().unwrap())
            .collect();
        assert_eq!(by_degree, [1, 6, 6]);
    }

    #[test]
    fn rooted_partition_covers_canonical_order() {
        let w = twelve_vertex_stats();
        let flat: Vec<_> = enumerate_diagrams(&w).collect();
        let parted: Vec<_> = partition(&w)
            .into_iter()
            .flat_map(|u| partition_iter(&w, u))
            .collect();
        assert_eq!(flat, parted);
        assert_eq!(BigUint::from(flat.len()), count_diagrams(&w));
    }

    #[test]
    fn cap_applies_to_materialization_only() {
        let w = worked_example();
        let err = collect_diagrams(&w, Limits::new(12), Execution::Sequential).unwrap_err();
        assert!(matches!(err, Error::LimitExceeded { cap: 12, .. }));
        let all = collect_diagrams(&w, Limits::new(13), Execution::Sequential).unwrap();
        assert_eq!(all.len(), 13);
        assert_eq!(enumerate_diagrams(&w).count(), 13);
    }
}
