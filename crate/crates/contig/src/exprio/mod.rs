//! Expression input/output: a small parser for rational-function
//! expressions in the variables a, b, c, z, n, a canonical printer, and
//! JSON shapes for relations and P/Q pairs.
//!
//! The grammar (whitespace-insensitive):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := '-' factor | power
//! power   := atom ('^' '-'? integer)?
//! atom    := integer | variable | '(' expr ')'
//! variable := 'a' | 'b' | 'c' | 'z' | 'n'
//! ```
//!
//! The printer emits a fixed normal form: polynomials as bare sums of
//! integer-coefficient terms in descending lexicographic order
//! (`c^2 - c`), proper fractions as `(numerator)/(denominator)` with both
//! sides parenthesised.  Printed output always reparses to the same value.

mod json;
mod parse;
mod print;

pub use json::{PqJson, RelationJson, RelationTermJson};
pub use parse::{parse_expr, ParseError};
pub use print::{print_expr, print_poly};
