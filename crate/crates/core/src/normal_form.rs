//! Normally ordered expressions `Σ C_{k,l}(q) (c+)^k c^l`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::qpoly::QPolynomial;

/// Monomial shape `(k, l)` standing for `(c+)^k c^l`.
pub type Shape = (usize, usize);

/// Map from monomial shape to its (nonzero) coefficient polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalForm {
    terms: BTreeMap<Shape, QPolynomial>,
}

impl NormalForm {
    pub fn zero() -> Self {
        NormalForm::default()
    }

    /// The normal form of the empty word: `1`.
    pub fn unit() -> Self {
        let mut nf = NormalForm::zero();
        nf.add((0, 0), QPolynomial::one());
        nf
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Shape, QPolynomial)>) -> Self {
        let mut nf = NormalForm::zero();
        for (shape, p) in terms {
            nf.add(shape, p);
        }
        nf
    }

    /// Adds `p · (c+)^k c^l`; zero polynomials are dropped.
    pub fn add(&mut self, shape: Shape, p: QPolynomial) {
        if p.is_zero() {
            return;
        }
        *self.terms.entry(shape).or_default() += p;
    }

    pub fn add_ref(&mut self, shape: Shape, p: &QPolynomial) {
        if p.is_zero() {
            return;
        }
        *self.terms.entry(shape).or_default() += p;
    }

    pub fn merge(&mut self, other: NormalForm) {
        for (shape, p) in other.terms {
            self.add(shape, p);
        }
    }

    pub fn get(&self, shape: Shape) -> Option<&QPolynomial> {
        self.terms.get(&shape)
    }

    /// Coefficient of `shape`, zero when absent.
    pub fn coeff(&self, shape: Shape) -> QPolynomial {
        self.terms.get(&shape).cloned().unwrap_or_default()
    }

    /// Terms in ascending `(k, l)` order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (Shape, &QPolynomial)> + '_ {
        self.terms.iter().map(|(&s, p)| (s, p))
    }

    pub fn shapes(&self) -> impl Iterator<Item = Shape> + '_ {
        self.terms.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Every coefficient evaluated at `q`, descending shape order.
    pub fn evaluate(&self, q: &BigRational) -> Vec<(Shape, BigRational)> {
        self.terms
            .iter()
            .rev()
            .map(|(&s, p)| (s, p.eval(q)))
            .collect()
    }

    /// `(c+)^k c^l` with the convention of the text output.
    pub fn to_text(&self) -> String {
        self.render(" + ", |p| p.to_compact_string(), text_monomial, " ")
    }

    /// LaTeX, e.g. `q^6(c^{\dag})^2c^4+(q^2+q^3)c^{\dag}c^3`.
    pub fn to_latex(&self) -> String {
        self.render("+", |p| p.to_latex(), latex_monomial, "")
    }

    fn render(
        &self,
        sep: &str,
        coeff: impl Fn(&QPolynomial) -> String,
        monomial: impl Fn(Shape) -> String,
        gap: &str,
    ) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&shape, p)| {
                let mono = monomial(shape);
                let c = coeff(p);
                let c = if p.term_count() > 1 {
                    format!("({c})")
                } else {
                    c
                };
                match (mono.is_empty(), c == "1") {
                    (true, _) => c,
                    (false, true) => mono,
                    (false, false) => format!("{c}{gap}{mono}"),
                }
            })
            .collect();
        parts.join(sep)
    }
}

fn text_monomial((k, l): Shape) -> String {
    let mut parts = Vec::new();
    match k {
        0 => {}
        1 => parts.push("(c+)".to_string()),
        _ => parts.push(format!("(c+)^{k}")),
    }
    match l {
        0 => {}
        1 => parts.push("c".to_string()),
        _ => parts.push(format!("c^{l}")),
    }
    parts.join(" ")
}

fn latex_exp(e: usize) -> String {
    if e < 10 {
        e.to_string()
    } else {
        format!("{{{e}}}")
    }
}

fn latex_monomial((k, l): Shape) -> String {
    let mut out = String::new();
    match k {
        0 => {}
        1 => out.push_str("c^{\\dag}"),
        _ => out.push_str(&format!("(c^{{\\dag}})^{}", latex_exp(k))),
    }
    match l {
        0 => {}
        1 => out.push('c'),
        _ => out.push_str(&format!("c^{}", latex_exp(l))),
    }
    out
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromIterator<(Shape, QPolynomial)> for NormalForm {
    fn from_iter<I: IntoIterator<Item = (Shape, QPolynomial)>>(iter: I) -> Self {
        NormalForm::from_terms(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_example() -> NormalForm {
        NormalForm::from_terms([
            ((2, 4), QPolynomial::monomial(6)),
            ((1, 3), QPolynomial::from_dense([0u32, 0, 1, 2, 2, 1])),
            ((0, 2), QPolynomial::from_dense([1u32, 2, 2, 1])),
        ])
    }

    #[test]
    fn text_rendering() {
        assert_eq!(
            worked_example().to_text(),
            "q^6 (c+)^2 c^4 + (q^2+2q^3+2q^4+q^5) (c+) c^3 + (1+2q+2q^2+q^3) c^2"
        );
        let unit_case = NormalForm::from_terms([
            ((1, 1), QPolynomial::monomial(1)),
            ((0, 0), QPolynomial::one()),
        ]);
        assert_eq!(unit_case.to_text(), "q (c+) c + 1");
        assert_eq!(
            NormalForm::from_terms([((1, 1), QPolynomial::one())]).to_text(),
            "(c+) c"
        );
        assert_eq!(NormalForm::zero().to_text(), "0");
    }

    #[test]
    fn latex_rendering() {
        assert_eq!(
            worked_example().to_latex(),
            "q^6(c^{\\dag})^2c^4+(q^2+2q^3+2q^4+q^5)c^{\\dag}c^3+(1+2q+2q^2+q^3)c^2"
        );
        let big = NormalForm::from_terms([((12, 10), QPolynomial::monomial(11))]);
        assert_eq!(big.to_latex(), "q^{11}(c^{\\dag})^{12}c^{10}");
    }

    #[test]
    fn zero_coefficients_dropped() {
        let mut nf = NormalForm::zero();
        nf.add((1, 1), QPolynomial::zero());
        assert!(nf.is_zero());
        nf.add((1, 1), QPolynomial::one());
        nf.add((1, 1), QPolynomial::one());
        assert_eq!(nf.coeff((1, 1)), QPolynomial::from_dense([2u32]));
    }
}
