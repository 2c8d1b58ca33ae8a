//! Normal ordering as a q-weighted sum over Feynman diagrams, and the
//! coefficient extractors built on it (rook numbers, q-Stirling numbers).
//!
//! Every diagram `γ` of the word contributes `q^(tc(γ) + l(γ))` to the
//! coefficient of `(c+)^r c^s`, where `r` and `s` are its creator and
//! annihilator singleton counts.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::diagrams::{self, enumerate_by_degree, stats_unchecked, Limits};
use crate::error::{Error, Result};
use crate::normal_form::{NormalForm, Shape};
use crate::oracle::normal_order_rewrite;
use crate::par::{self, Execution};
use crate::qpoly::QPolynomial;
use crate::word::Word;

/// Largest `n` for which [`StirlingBackend::Auto`] enumerates diagrams.
pub const STIRLING_DIAGRAM_MAX_N: usize = 10;

/// Multiplicity of each weight exponent; index is the exponent.
type Histogram = Vec<u64>;

fn bump(hist: &mut Histogram, exponent: u64) {
    let e = exponent as usize;
    if hist.len() <= e {
        hist.resize(e + 1, 0);
    }
    hist[e] += 1;
}

fn merge_hist(mut a: Histogram, b: Histogram) -> Histogram {
    if a.len() < b.len() {
        return merge_hist(b, a);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

fn hist_to_poly(hist: &[u64]) -> QPolynomial {
    QPolynomial::from_terms(
        hist.iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(e, &n)| (e as u64, BigUint::from(n))),
    )
}

fn merge_keyed<K: Ord>(
    mut a: BTreeMap<K, Histogram>,
    b: BTreeMap<K, Histogram>,
) -> BTreeMap<K, Histogram> {
    for (k, h) in b {
        let slot = a.entry(k).or_default();
        *slot = merge_hist(std::mem::take(slot), h);
    }
    a
}

/// Streams every diagram once, accumulating weight histograms under `key`.
fn accumulate<K, F>(w: &Word, exec: Execution, key: F) -> BTreeMap<K, Histogram>
where
    K: Ord + Send + Sync + Clone,
    F: Fn(&[(usize, usize)], &diagrams::DiagramStats) -> K + Sync + Send,
{
    let units = diagrams::partition(w);
    par::map_reduce(
        &units,
        exec,
        BTreeMap::new(),
        |&unit| {
            let mut local: BTreeMap<K, Histogram> = BTreeMap::new();
            let mut it = diagrams::partition_iter(w, unit);
            while it.advance() {
                let edges = it.current();
                let stats = stats_unchecked(w.letters(), edges);
                bump(
                    local.entry(key(edges, &stats)).or_default(),
                    stats.weight_exponent,
                );
            }
            local
        },
        merge_keyed,
    )
}

/// Normal form of `w` as the q-weighted sum over its Feynman diagrams, with the
/// default cap and execution strategy.
pub fn normal_order_diagrams(w: &Word) -> Result<NormalForm> {
    normal_order_diagrams_with(w, Limits::default(), Execution::default())
}

pub fn normal_order_diagrams_with(w: &Word, limits: Limits, exec: Execution) -> Result<NormalForm> {
    limits.check(w)?;
    let by_shape = accumulate(w, exec, |_, s| {
        (s.singleton_creators, s.singleton_annihilators)
    });
    Ok(by_shape
        .into_iter()
        .map(|(shape, hist)| (shape, hist_to_poly(&hist)))
        .collect())
}

/// `R_k(q)` for `k = 0..=min(m, n)`: the summed weights of the degree-`k` diagrams.
pub fn rook_coefficients(w: &Word) -> Result<Vec<QPolynomial>> {
    rook_coefficients_with(w, Limits::default(), Execution::default())
}

pub fn rook_coefficients_with(
    w: &Word,
    limits: Limits,
    exec: Execution,
) -> Result<Vec<QPolynomial>> {
    limits.check(w)?;
    let (m, n) = w.counts();
    let by_degree = accumulate(w, exec, |edges, _| edges.len());
    Ok((0..=m.min(n))
        .map(|k| {
            by_degree
                .get(&k)
                .map(|h| hist_to_poly(h))
                .unwrap_or_default()
        })
        .collect())
}

/// Reads the rook coefficients off a normal form of a word with `m` creators
/// and `n` annihilators: `R_k` is the coefficient of `(c+)^(m-k) c^(n-k)`.
pub fn rook_from_normal_form(nf: &NormalForm, m: usize, n: usize) -> Vec<QPolynomial> {
    (0..=m.min(n)).map(|k| nf.coeff((m - k, n - k))).collect()
}

/// `Σ_k R_k(q) (c+)^(m-k) c^(n-k)`.
pub fn assemble_rook(rook: &[QPolynomial], m: usize, n: usize) -> NormalForm {
    rook.iter()
        .enumerate()
        .map(|(k, p)| ((m - k, n - k) as Shape, p.clone()))
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StirlingBackend {
    /// Diagrams for `n <= STIRLING_DIAGRAM_MAX_N`, rewriting above.
    #[default]
    Auto,
    Diagrams,
    Rewrite,
}

fn check_stirling_domain(n: usize, k: usize) -> Result<()> {
    if n < 1 || k < 1 || k > n {
        return Err(Error::Domain(format!(
            "q-Stirling S_q({n},{k}) requires 1 <= k <= n"
        )));
    }
    Ok(())
}

/// `S_q(n, k)`, the coefficient of `(c+)^k c^k` in the normal form of `(c+ c)^n`.
pub fn q_stirling(n: usize, k: usize) -> Result<QPolynomial> {
    q_stirling_with(n, k, StirlingBackend::Auto)
}

pub fn q_stirling_with(n: usize, k: usize, backend: StirlingBackend) -> Result<QPolynomial> {
    check_stirling_domain(n, k)?;
    let w = Word::number_power(n);
    let use_diagrams = match backend {
        StirlingBackend::Auto => n <= STIRLING_DIAGRAM_MAX_N,
        StirlingBackend::Diagrams => true,
        StirlingBackend::Rewrite => false,
    };
    if use_diagrams {
        let mut hist = Histogram::new();
        let mut it = enumerate_by_degree(&w, n - k);
        while it.advance() {
            bump(
                &mut hist,
                stats_unchecked(w.letters(), it.current()).weight_exponent,
            );
        }
        Ok(hist_to_poly(&hist))
    } else {
        Ok(normal_order_rewrite(&w).coeff((k, k)))
    }
}

/// `S_q(n, k)` for `k = 1..=n` from a single rewrite of `(c+ c)^n`.
pub fn q_stirling_row(n: usize) -> Result<Vec<QPolynomial>> {
    check_stirling_domain(n, 1)?;
    let nf = normal_order_rewrite(&Word::number_power(n));
    Ok((1..=n).map(|k| nf.coeff((k, k))).collect())
}

/// Classical Stirling number of the second kind, `S_q(n, k)` at `q = 1`.
pub fn stirling2(n: usize, k: usize) -> Result<BigUint> {
    Ok(q_stirling(n, k)?.eval_at_one())
}
