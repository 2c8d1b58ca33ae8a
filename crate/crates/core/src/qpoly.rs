//! Polynomials in `q` with arbitrary-precision nonnegative integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Sparse polynomial in `q`: exponent to coefficient, zero coefficients never stored.
///
/// Coefficients are unsigned: every polynomial the engines produce is a sum of
/// monomials `q^e` with positive multiplicity, so there is no subtraction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coeffs: BTreeMap<u64, BigUint>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial::default()
    }

    pub fn one() -> Self {
        QPolynomial::monomial(0)
    }

    /// `q^exponent`.
    pub fn monomial(exponent: u64) -> Self {
        QPolynomial::term(exponent, BigUint::one())
    }

    /// `coeff · q^exponent`.
    pub fn term(exponent: u64, coeff: BigUint) -> Self {
        let mut p = QPolynomial::zero();
        p.add_term(exponent, coeff);
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, C)>,
        C: Into<BigUint>,
    {
        let mut p = QPolynomial::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Dense coefficients starting at `q^0`, e.g. `[1, 2, 1]` is `1 + 2q + q^2`.
    pub fn from_dense<C: Into<BigUint>>(coeffs: impl IntoIterator<Item = C>) -> Self {
        QPolynomial::from_terms(coeffs.into_iter().enumerate().map(|(e, c)| (e as u64, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest exponent, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<u64> {
        self.coeffs.keys().next().copied()
    }

    pub fn coeff(&self, exponent: u64) -> BigUint {
        self.coeffs.get(&exponent).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigUint)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add_term(&mut self, exponent: u64, coeff: BigUint) {
        if coeff.is_zero() {
            return;
        }
        *self.coeffs.entry(exponent).or_default() += coeff;
    }

    /// Multiply by `q^k`.
    pub fn shifted(&self, k: u64) -> Self {
        QPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// Exact Horner evaluation at a rational point.
    pub fn eval(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        let mut prev: Option<u64> = None;
        for (&e, c) in self.coeffs.iter().rev() {
            if let Some(p) = prev {
                acc *= pow_rational(q, p - e);
            }
            acc += BigRational::from_integer(BigInt::from(c.clone()));
            prev = Some(e);
        }
        if let Some(p) = prev {
            acc *= pow_rational(q, p);
        }
        acc
    }

    /// Value at `q = 1`: the sum of all coefficients.
    pub fn eval_at_one(&self) -> BigUint {
        self.coeffs.values().sum()
    }

    /// Terms joined with `+` and no spaces, e.g. `q^2+2q^3`.
    pub fn to_compact_string(&self) -> String {
        self.render("+", |e| render_power(e, false))
    }

    /// LaTeX with braced multi-digit exponents, e.g. `1+2q+q^{10}`.
    pub fn to_latex(&self) -> String {
        self.render("+", |e| render_power(e, true))
    }

    /// `[exponent, "coefficient"]` pairs in ascending exponent order.
    pub fn to_pairs(&self) -> Vec<(u64, String)> {
        self.coeffs
            .iter()
            .map(|(&e, c)| (e, c.to_str_radix(10)))
            .collect()
    }

    fn render(&self, sep: &str, power: impl Fn(u64) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&e, c)| {
                let coeff = c.to_str_radix(10);
                match (e, c.is_one()) {
                    (0, _) => coeff,
                    (_, true) => power(e),
                    (_, false) => format!("{coeff}{}", power(e)),
                }
            })
            .collect();
        parts.join(sep)
    }
}

fn render_power(e: u64, latex: bool) -> String {
    match e {
        1 => "q".to_string(),
        _ if latex && e >= 10 => format!("q^{{{e}}}"),
        _ => format!("q^{e}"),
    }
}

fn pow_rational(q: &BigRational, mut exp: u64) -> BigRational {
    let mut base = q.clone();
    let mut acc = BigRational::one();
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= &base;
        }
        exp >>= 1;
        if exp > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// `[a]_q = 1 + q + ... + q^(a-1)`; `[0]_q = 0`.
pub fn q_bracket(a: u64) -> QPolynomial {
    QPolynomial {
        coeffs: (0..a).map(|e| (e, BigUint::one())).collect(),
    }
}

pub fn poly_add(p: &QPolynomial, r: &QPolynomial) -> QPolynomial {
    p + r
}

pub fn poly_mul(p: &QPolynomial, r: &QPolynomial) -> QPolynomial {
    p * r
}

pub fn poly_eval(p: &QPolynomial, q: &BigRational) -> BigRational {
    p.eval(q)
}

impl fmt::Display for QPolynomial {
    /// Ascending exponents joined with ` + `, e.g. `2q + q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(" + ", |e| render_power(e, false)))
    }
}

impl AddAssign<&QPolynomial> for QPolynomial {
    fn add_assign(&mut self, rhs: &QPolynomial) {
        for (&e, c) in &rhs.coeffs {
            *self.coeffs.entry(e).or_default() += c;
        }
    }
}

impl AddAssign for QPolynomial {
    fn add_assign(&mut self, rhs: QPolynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            let lhs = std::mem::replace(self, rhs);
            *self += &lhs;
        } else {
            *self += &rhs;
        }
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for QPolynomial {
    type Output = QPolynomial;

    fn add(mut self, rhs: QPolynomial) -> QPolynomial {
        self += rhs;
        self
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                *out.coeffs.entry(e1 + e2).or_default() += c1 * c2;
            }
        }
        out
    }
}

impl Mul for QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: QPolynomial) -> QPolynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for QPolynomial {
    fn sum<I: Iterator<Item = QPolynomial>>(iter: I) -> Self {
        iter.fold(QPolynomial::zero(), |acc, p| acc + p)
    }
}
