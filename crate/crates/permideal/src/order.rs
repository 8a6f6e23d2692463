//! Term orders: the diagonal lexicographic order, its transpose, and the
//! elimination extension that puts `t` above every matrix variable.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::vars::{Shape, VarRef};
use std::cmp::Ordering;

/// Base variable ranking for a diagonal order.
///
/// `Lex` ranks `x[i,j]` by (column, row): a larger column wins, and within a
/// column a larger row wins, so the leading term of any subpermanent is its
/// main-diagonal product. `LexTranspose` swaps the roles of rows and columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiagBase {
    Lex,
    LexTranspose,
}

/// A monomial order. All three kinds are lexicographic; `ElimBlock` is the
/// nominal elimination order used by `eliminate`, with `t` dominant.
///
/// `t` ranks above every matrix variable under every kind, so each order is
/// total on the extended ring as well.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TermOrder {
    DiagLex,
    DiagLexTranspose,
    ElimBlock(DiagBase),
}

impl TermOrder {
    /// The elimination order over the same base ranking.
    pub fn elim_extension(self) -> TermOrder {
        TermOrder::ElimBlock(self.base())
    }

    pub fn base(self) -> DiagBase {
        match self {
            TermOrder::DiagLex => DiagBase::Lex,
            TermOrder::DiagLexTranspose => DiagBase::LexTranspose,
            TermOrder::ElimBlock(b) => b,
        }
    }

    pub fn is_elimination(self) -> bool {
        matches!(self, TermOrder::ElimBlock(_))
    }

    pub fn name(self) -> &'static str {
        match self {
            TermOrder::DiagLex => "diag-lex",
            TermOrder::DiagLexTranspose => "diag-lex-T",
            TermOrder::ElimBlock(DiagBase::Lex) => "elim(diag-lex)",
            TermOrder::ElimBlock(DiagBase::LexTranspose) => "elim(diag-lex-T)",
        }
    }

    /// Parses the two surface names accepted by the CLI.
    pub fn from_name(name: &str) -> Option<TermOrder> {
        match name {
            "diag-lex" => Some(TermOrder::DiagLex),
            "diag-lex-T" => Some(TermOrder::DiagLexTranspose),
            _ => None,
        }
    }

    /// Ranking key: a greater key means a greater variable.
    fn rank(self, v: VarRef) -> (u8, u16, u16) {
        match v {
            VarRef::Elim => (1, 0, 0),
            VarRef::Matrix { row, col } => match self.base() {
                DiagBase::Lex => (0, col, row),
                DiagBase::LexTranspose => (0, row, col),
            },
        }
    }

    /// Compares two variables by precedence.
    pub fn var_cmp(self, a: VarRef, b: VarRef) -> Ordering {
        self.rank(a).cmp(&self.rank(b))
    }

    /// Lexicographic comparison: scan variables by descending precedence and
    /// decide at the first exponent difference.
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        let mut best: Option<((u8, u16, u16), Ordering)> = None;
        let mut consider = |v: VarRef, ea: u32, eb: u32| {
            if ea != eb {
                let k = self.rank(v);
                if best.map_or(true, |(bk, _)| k > bk) {
                    best = Some((k, ea.cmp(&eb)));
                }
            }
        };
        for (v, ea) in a.iter() {
            consider(v, ea, b.exponent(v));
        }
        for (v, eb) in b.iter() {
            if a.exponent(v) == 0 {
                consider(v, 0, eb);
            }
        }
        best.map_or(Ordering::Equal, |(_, o)| o)
    }

    /// Shape-validated comparison for callers holding externally supplied
    /// monomials.
    pub fn compare_in(self, shape: Shape, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        for v in a.vars().chain(b.vars()) {
            v.check_in(shape).map_err(|_| match v {
                VarRef::Matrix { row, col } => Error::IndexOutOfRange {
                    row,
                    col,
                    m: shape.m,
                    n: shape.n,
                },
                VarRef::Elim => unreachable!("t fits every shape"),
            })?;
        }
        Ok(self.compare(a, b))
    }

    /// Sorts polynomials or monomials descending; ties are impossible for
    /// the interreduced sets this is applied to, but kept stable anyway.
    pub fn sort_descending(self, monomials: &mut [Monomial]) {
        monomials.sort_by(|a, b| self.compare(b, a));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(u16, u16, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().map(|&(i, j, e)| (VarRef::matrix(i, j), e)))
    }

    #[test]
    fn test_same_column_larger_row_wins() {
        let ord = TermOrder::DiagLex;
        assert_eq!(
            ord.compare(&m(&[(2, 2, 1)]), &m(&[(1, 2, 1)])),
            Ordering::Greater
        );
    }

    #[test]
    fn test_diagonal_beats_antidiagonal() {
        let ord = TermOrder::DiagLex;
        let diag = m(&[(1, 1, 1), (2, 2, 1)]);
        let anti = m(&[(2, 1, 1), (1, 2, 1)]);
        assert_eq!(ord.compare(&diag, &anti), Ordering::Greater);
        assert_eq!(
            TermOrder::DiagLexTranspose.compare(&diag, &anti),
            Ordering::Greater
        );
    }

    #[test]
    fn test_equal_monomials() {
        let a = m(&[(1, 1, 2), (3, 2, 1)]);
        assert_eq!(TermOrder::DiagLex.compare(&a, &a.clone()), Ordering::Equal);
    }

    #[test]
    fn test_elim_variable_dominates() {
        let ord = TermOrder::DiagLex.elim_extension();
        let t = Monomial::var(VarRef::Elim);
        let big = m(&[(1, 1, 5)]);
        assert_eq!(ord.compare(&t, &big), Ordering::Greater);
        assert_eq!(ord.name(), "elim(diag-lex)");
        assert!(ord.is_elimination());
    }

    #[test]
    fn test_multiplicativity_spot() {
        let ord = TermOrder::DiagLexTranspose;
        let a = m(&[(1, 2, 1)]);
        let b = m(&[(2, 1, 1)]);
        let c = m(&[(3, 3, 2)]);
        let before = ord.compare(&a, &b);
        let after = ord.compare(&a.mul(&c), &b.mul(&c));
        assert_eq!(before, after);
    }

    #[test]
    fn test_one_is_minimal() {
        let ord = TermOrder::DiagLex;
        assert_eq!(
            ord.compare(&Monomial::one(), &m(&[(2, 1, 1)])),
            Ordering::Less
        );
    }

    #[test]
    fn test_shape_validation() {
        let shape = Shape::new(2, 2).unwrap();
        let ok = TermOrder::DiagLex.compare_in(shape, &m(&[(1, 1, 1)]), &m(&[(2, 2, 1)]));
        assert!(ok.is_ok());
        let bad = TermOrder::DiagLex.compare_in(shape, &m(&[(3, 1, 1)]), &m(&[(1, 1, 1)]));
        assert_eq!(
            bad,
            Err(Error::IndexOutOfRange { row: 3, col: 1, m: 2, n: 2 })
        );
    }
}
