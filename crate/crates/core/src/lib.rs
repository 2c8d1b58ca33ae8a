//! Normal ordering of words in the creation and annihilation operators of the
//! q-deformed boson, `c c+ - q c+ c = 1`.
//!
//! Two independent engines compute the normally ordered form
//! `Σ C_{k,l}(q) (c+)^k c^l` of a word:
//!
//! * [`wick::normal_order_diagrams`] sums `q^(tc(γ) + l(γ))` over every Feynman
//!   diagram `γ` of the word (exponential in the word length);
//! * [`oracle::normal_order_rewrite`] folds the commutation relation over the
//!   word from the right (polynomial).
//!
//! ```
//! use qwick::{normal_order_diagrams, normal_order_rewrite, parse_word};
//!
//! let w = parse_word("c^2 c+ c^2 c+").unwrap();
//! let nf = normal_order_rewrite(&w);
//! assert_eq!(nf, normal_order_diagrams(&w).unwrap());
//! assert_eq!(
//!     nf.to_text(),
//!     "q^6 (c+)^2 c^4 + (q^2+2q^3+2q^4+q^5) (c+) c^3 + (1+2q+2q^2+q^3) c^2"
//! );
//! ```

pub mod diagrams;
pub mod error;
pub mod normal_form;
pub mod oracle;
pub mod par;
pub mod qpoly;
pub mod sweep;
pub mod wick;
pub mod word;

pub use diagrams::{
    count_by_degree, count_diagrams, diagram_stats, diagram_weight, double_dot,
    enumerate_by_degree, enumerate_diagrams, DiagramStats, FeynmanDiagram, Limits,
};
pub use error::{Error, ParseError, Result};
pub use normal_form::{NormalForm, Shape};
pub use oracle::{normal_order_rewrite, prepend_annihilator, prepend_creator};
pub use par::Execution;
pub use qpoly::{q_bracket, QPolynomial};
pub use wick::{normal_order_diagrams, q_stirling, rook_coefficients, stirling2};
pub use word::{parse_word, LetterType, Word};
