//! Normal ordering by rewriting with `c c+ = q c+ c + 1`.
//!
//! A word is folded from its last letter to its first. Prepending `c+` to a
//! normal form only raises each creator power; prepending `c` uses
//!
//! ```text
//! c (c+)^a c^b = q^a (c+)^a c^(b+1) + [a]_q (c+)^(a-1) c^b
//! ```
//!
//! so the form stays normally ordered after every step.

use num_bigint::BigUint;

use crate::normal_form::NormalForm;
use crate::qpoly::{q_bracket, QPolynomial};
use crate::word::{LetterType, Word};

/// One term `coeff · (c+)^creators c^annihilators`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalTerm {
    pub creators: usize,
    pub annihilators: usize,
    pub coeff: QPolynomial,
}

impl NormalForm {
    pub fn normal_terms(&self) -> Vec<NormalTerm> {
        self.iter()
            .map(|((creators, annihilators), coeff)| NormalTerm {
                creators,
                annihilators,
                coeff: coeff.clone(),
            })
            .collect()
    }
}

/// `c+ · nf`.
pub fn prepend_creator(nf: &NormalForm) -> NormalForm {
    nf.iter()
        .map(|((k, l), p)| ((k + 1, l), p.clone()))
        .collect()
}

/// `c · nf`, normally ordered.
pub fn prepend_annihilator(nf: &NormalForm) -> NormalForm {
    let mut out = NormalForm::zero();
    for ((a, b), p) in nf.iter() {
        out.add((a, b + 1), p.shifted(a as u64));
        if a > 0 {
            out.add((a - 1, b), p * &q_bracket(a as u64));
        }
    }
    out
}

/// `letters · nf`, one letter at a time from the right, using the sparse
/// term-by-term rules.
pub fn fold_letters(letters: &[LetterType], nf: &NormalForm) -> NormalForm {
    letters
        .iter()
        .rev()
        .fold(nf.clone(), |acc, letter| match letter {
            LetterType::Creator => prepend_creator(&acc),
            LetterType::Annihilator => prepend_annihilator(&acc),
        })
}

/// Normal form of `w` by rewriting.
///
/// After folding a suffix with `m` creators and `n` annihilators every term has
/// shape `(m - p, n - p)`, so the state is a list of coefficient polynomials
/// indexed by `p`, stored densely. Prepending `c+` is then free, and prepending
/// `c` becomes
///
/// ```text
/// new[p] = q^(m-p) · old[p] + [m-p+1]_q · old[p-1]
/// ```
pub fn normal_order_rewrite(w: &Word) -> NormalForm {
    let mut state = DenseState::unit();
    for &letter in w.letters().iter().rev() {
        match letter {
            LetterType::Creator => state.creators += 1,
            LetterType::Annihilator => state.prepend_annihilator(),
        }
    }
    state.into_normal_form()
}

/// Dense polynomial `Σ coeff(i) q^(low + i)` whose coefficients are stored as
/// fixed-width little-endian `u64` limbs in one flat buffer; may carry zeros.
#[derive(Clone, Debug, Default)]
struct DensePoly {
    low: u64,
    limbs: usize,
    data: Vec<u64>,
}

impl DensePoly {
    fn len(&self) -> usize {
        self.data.len().checked_div(self.limbs).unwrap_or(0)
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn high(&self) -> u64 {
        self.low + self.len() as u64
    }

    fn coeff(&self, i: usize) -> &[u64] {
        &self.data[i * self.limbs..(i + 1) * self.limbs]
    }

    /// Bit length of the largest coefficient.
    fn bits(&self) -> u64 {
        if self.limbs == 0 {
            return 0;
        }
        self.data
            .chunks_exact(self.limbs)
            .map(|c| match c.iter().rposition(|&x| x != 0) {
                Some(top) => 64 * top as u64 + u64::from(64 - c[top].leading_zeros()),
                None => 0,
            })
            .max()
            .unwrap_or(0)
    }

    fn to_biguint(limbs: &[u64]) -> BigUint {
        let digits: Vec<u32> = limbs
            .iter()
            .flat_map(|&x| [x as u32, (x >> 32) as u32])
            .collect();
        BigUint::new(digits)
    }
}

/// `dst += src`; `dst` is at least as wide as `src` and wide enough for the sum.
fn add_limbs(dst: &mut [u64], src: &[u64]) {
    let mut carry = 0u64;
    let (head, tail) = dst.split_at_mut(src.len());
    for (d, &s) in head.iter_mut().zip(src) {
        let (v, c1) = d.overflowing_add(s);
        let (v, c2) = v.overflowing_add(carry);
        *d = v;
        carry = u64::from(c1 | c2);
    }
    for d in tail {
        if carry == 0 {
            break;
        }
        let (v, c) = d.overflowing_add(carry);
        *d = v;
        carry = u64::from(c);
    }
    debug_assert_eq!(carry, 0, "limb buffer too narrow");
}

/// `dst -= src`, with `dst >= src`.
fn sub_limbs(dst: &mut [u64], src: &[u64]) {
    let mut borrow = 0u64;
    let (head, tail) = dst.split_at_mut(src.len());
    for (d, &s) in head.iter_mut().zip(src) {
        let (v, b1) = d.overflowing_sub(s);
        let (v, b2) = v.overflowing_sub(borrow);
        *d = v;
        borrow = u64::from(b1 | b2);
    }
    for d in tail {
        if borrow == 0 {
            break;
        }
        let (v, b) = d.overflowing_sub(borrow);
        *d = v;
        borrow = u64::from(b);
    }
    debug_assert_eq!(borrow, 0, "window sum went negative");
}

struct DenseState {
    creators: usize,
    annihilators: usize,
    by_degree: Vec<DensePoly>,
}

impl DenseState {
    fn unit() -> Self {
        DenseState {
            creators: 0,
            annihilators: 0,
            by_degree: vec![DensePoly {
                low: 0,
                limbs: 1,
                data: vec![1],
            }],
        }
    }

    fn prepend_annihilator(&mut self) {
        let m = self.creators;
        let new_max = m.min(self.annihilators + 1);
        let old = std::mem::take(&mut self.by_degree);
        let empty = DensePoly::default();
        let mut next = Vec::with_capacity(new_max + 1);
        for p in 0..=new_max {
            let stay = old.get(p).unwrap_or(&empty);
            let (lowered, width) = match p.checked_sub(1) {
                Some(prev) if p <= m => (old.get(prev).unwrap_or(&empty), (m - prev) as u64),
                _ => (&empty, 0),
            };
            next.push(combine(stay, (m - p) as u64, lowered, width));
        }
        self.by_degree = next;
        self.annihilators += 1;
    }

    fn into_normal_form(self) -> NormalForm {
        let (m, n) = (self.creators, self.annihilators);
        self.by_degree
            .into_iter()
            .enumerate()
            .filter(|(_, poly)| !poly.is_empty())
            .map(|(p, poly)| {
                let terms = (0..poly.len())
                    .map(|i| (poly.low + i as u64, DensePoly::to_biguint(poly.coeff(i))));
                ((m - p, n - p), QPolynomial::from_terms(terms))
            })
            .collect()
    }
}

/// `q^shift · stay + [width]_q · lowered`.
fn combine(stay: &DensePoly, shift: u64, lowered: &DensePoly, width: u64) -> DensePoly {
    let use_lowered = width > 0 && !lowered.is_empty();
    let mut ranges = Vec::with_capacity(2);
    let mut bits = 0;
    if !stay.is_empty() {
        ranges.push((stay.low + shift, stay.high() + shift));
        bits = stay.bits();
    }
    if use_lowered {
        ranges.push((lowered.low, lowered.high() + width - 1));
        // a window of `width` terms below 2^b sums below 2^(b + bitlen(width))
        bits = bits.max(lowered.bits() + u64::from(64 - width.leading_zeros()));
    }
    let Some(low) = ranges.iter().map(|r| r.0).min() else {
        return DensePoly::default();
    };
    let high = ranges.iter().map(|r| r.1).max().unwrap_or(low);
    let limbs = ((bits + 1).div_ceil(64) as usize)
        .max(stay.limbs)
        .max(if use_lowered { lowered.limbs } else { 1 });
    let mut data = vec![0u64; (high - low) as usize * limbs];

    if use_lowered {
        let offset = (lowered.low - low) as usize;
        let src_len = lowered.len();
        let width = width as usize;
        let mut window = vec![0u64; limbs];
        for e in 0..src_len + width - 1 {
            if e < src_len {
                add_limbs(&mut window, lowered.coeff(e));
            }
            if e >= width && e - width < src_len {
                sub_limbs(&mut window, lowered.coeff(e - width));
            }
            let slot = (offset + e) * limbs;
            data[slot..slot + limbs].copy_from_slice(&window);
        }
    }
    if !stay.is_empty() {
        let offset = (stay.low + shift - low) as usize;
        for i in 0..stay.len() {
            let slot = (offset + i) * limbs;
            add_limbs(&mut data[slot..slot + limbs], stay.coeff(i));
        }
    }
    DensePoly { low, limbs, data }
}
