//! Closed-form reduced Groebner bases for the 2x2 permanental ideal and
//! its radical, built combinatorially so computed bases can be checked
//! against an independent construction.
//!
//! Remarkably, one set serves every diagonal order: the binomial members
//! are subpermanents (whose leading term is the main diagonal under any
//! diagonal order) and all other members are monomials, so only the sort
//! position of elements depends on the chosen order.

use crate::error::Result;
use crate::ideal::Ideal;
use crate::matrix::GenericMatrix;
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::Polynomial;
use crate::vars::{Ambient, VarRef};
use itertools::Itertools;

/// Structural family of a basis element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BasisElementKind {
    /// A 2x2 subpermanent.
    Permanent,
    /// Two entries in the higher-index row, lone entry above at the
    /// largest column.
    PairInLowerRow,
    /// Two entries in the lower-index row, lone entry below at the
    /// smallest column.
    PairInUpperRow,
    /// Two entries in the larger column, lone entry below at the smaller
    /// column.
    PairInRightColumn,
    /// Two entries in the smaller column, lone entry above at the larger
    /// column.
    PairInLeftColumn,
    /// Anti-diagonal of a 3x3 selection with one entry squared.
    SquaredAntiDiagonal,
    /// Plain anti-diagonal of a 3x3 selection (radical basis only).
    SquarefreeAntiDiagonal,
}

/// One element of a closed-form basis, tagged with its family.
#[derive(Debug, Clone)]
pub struct BasisElement {
    pub kind: BasisElementKind,
    pub poly: Polynomial,
}

fn monomial_element(
    ambient: Ambient,
    kind: BasisElementKind,
    entries: &[((u16, u16), u32)],
) -> BasisElement {
    let m = Monomial::from_pairs(
        entries.iter().map(|&((r, c), e)| (VarRef::matrix(r, c), e)),
    );
    BasisElement { kind, poly: Polynomial::of_monomial(ambient, m, ambient.field.one()) }
}

fn push_triple_row_patterns(ambient: Ambient, out: &mut Vec<BasisElement>) {
    let (m, n) = (ambient.shape.m, ambient.shape.n);
    for pair in (1..=m).permutations(2) {
        let (i1, i2) = (pair[0], pair[1]);
        if i1 <= i2 {
            continue;
        }
        for cols in (1..=n).combinations(3) {
            let (j1, j2, j3) = (cols[0], cols[1], cols[2]);
            out.push(monomial_element(
                ambient,
                BasisElementKind::PairInLowerRow,
                &[((i1, j1), 1), ((i1, j2), 1), ((i2, j3), 1)],
            ));
            out.push(monomial_element(
                ambient,
                BasisElementKind::PairInUpperRow,
                &[((i1, j1), 1), ((i2, j2), 1), ((i2, j3), 1)],
            ));
        }
    }
}

fn push_triple_column_patterns(ambient: Ambient, out: &mut Vec<BasisElement>) {
    let (m, n) = (ambient.shape.m, ambient.shape.n);
    for rows in (1..=m).combinations(3) {
        let (i1, i2, i3) = (rows[0], rows[1], rows[2]);
        for pair in (1..=n).permutations(2) {
            let (j1, j2) = (pair[0], pair[1]);
            if j1 <= j2 {
                continue;
            }
            out.push(monomial_element(
                ambient,
                BasisElementKind::PairInRightColumn,
                &[((i1, j1), 1), ((i2, j1), 1), ((i3, j2), 1)],
            ));
            out.push(monomial_element(
                ambient,
                BasisElementKind::PairInLeftColumn,
                &[((i1, j1), 1), ((i2, j2), 1), ((i3, j2), 1)],
            ));
        }
    }
}

fn anti_diagonals(ambient: Ambient) -> Vec<[(u16, u16); 3]> {
    let (m, n) = (ambient.shape.m, ambient.shape.n);
    let mut out = Vec::new();
    for rows in (1..=m).combinations(3) {
        for cols in (1..=n).combinations(3) {
            out.push([
                (rows[0], cols[2]),
                (rows[1], cols[1]),
                (rows[2], cols[0]),
            ]);
        }
    }
    out
}

fn common_families(ambient: Ambient) -> Result<Vec<BasisElement>> {
    let matrix = GenericMatrix::new(ambient);
    let mut out = Vec::new();
    for p in matrix.subpermanents(2)? {
        out.push(BasisElement { kind: BasisElementKind::Permanent, poly: p });
    }
    push_triple_row_patterns(ambient, &mut out);
    push_triple_column_patterns(ambient, &mut out);
    Ok(out)
}

/// The closed-form reduced basis of the 2x2 permanental ideal, sorted
/// descending by leading monomial under `order`.
pub fn claimed_basis(ambient: Ambient, order: TermOrder) -> Result<Vec<BasisElement>> {
    let mut out = common_families(ambient)?;
    for entries in anti_diagonals(ambient) {
        for squared in 0..3 {
            let tagged: Vec<((u16, u16), u32)> = entries
                .iter()
                .enumerate()
                .map(|(k, &pos)| (pos, if k == squared { 2 } else { 1 }))
                .collect();
            out.push(monomial_element(
                ambient,
                BasisElementKind::SquaredAntiDiagonal,
                &tagged,
            ));
        }
    }
    sort_descending(&mut out, order);
    Ok(out)
}

/// The closed-form reduced basis of the radical: the squared
/// anti-diagonals give way to their squarefree versions.
pub fn claimed_radical_basis(ambient: Ambient, order: TermOrder) -> Result<Vec<BasisElement>> {
    let mut out = common_families(ambient)?;
    for entries in anti_diagonals(ambient) {
        let tagged: Vec<((u16, u16), u32)> =
            entries.iter().map(|&pos| (pos, 1)).collect();
        out.push(monomial_element(
            ambient,
            BasisElementKind::SquarefreeAntiDiagonal,
            &tagged,
        ));
    }
    sort_descending(&mut out, order);
    Ok(out)
}

fn sort_descending(elements: &mut [BasisElement], order: TermOrder) {
    elements.sort_by(|a, b| {
        let ma = a.poly.leading_monomial(order).expect("basis elements are nonzero");
        let mb = b.poly.leading_monomial(order).expect("basis elements are nonzero");
        order.compare(mb, ma)
    });
}

/// Strip the kind tags.
pub fn polynomials(elements: &[BasisElement]) -> Vec<Polynomial> {
    elements.iter().map(|e| e.poly.clone()).collect()
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Cardinality of `claimed_basis` in closed form.
pub fn basis_count(m: u16, n: u16) -> u64 {
    let (m, n) = (m as u64, n as u64);
    binomial(m, 2) * binomial(n, 2)
        + 2 * binomial(m, 2) * binomial(n, 3)
        + 2 * binomial(n, 2) * binomial(m, 3)
        + 3 * binomial(m, 3) * binomial(n, 3)
}

/// Cardinality of `claimed_radical_basis` in closed form.
pub fn radical_basis_count(m: u16, n: u16) -> u64 {
    let (m, n) = (m as u64, n as u64);
    binomial(m, 2) * binomial(n, 2)
        + 2 * binomial(m, 2) * binomial(n, 3)
        + 2 * binomial(n, 2) * binomial(m, 3)
        + binomial(m, 3) * binomial(n, 3)
}

/// Generators of the radical: the subpermanents together with every
/// product of three entries from three distinct rows and three distinct
/// columns. At shapes with fewer than three rows and columns the monomial
/// family is empty and the radical coincides with the ideal itself.
pub fn radical_generators(ambient: Ambient) -> Result<Vec<Polynomial>> {
    let matrix = GenericMatrix::new(ambient);
    let mut gens = matrix.subpermanents(2)?;
    let (m, n) = (ambient.shape.m, ambient.shape.n);
    for rows in (1..=m).combinations(3) {
        for cols in (1..=n).permutations(3) {
            gens.push(
                monomial_element(
                    ambient,
                    BasisElementKind::SquarefreeAntiDiagonal,
                    &[
                        ((rows[0], cols[0]), 1),
                        ((rows[1], cols[1]), 1),
                        ((rows[2], cols[2]), 1),
                    ],
                )
                .poly,
            );
        }
    }
    Ok(gens)
}

/// The radical as an ideal.
pub fn radical_ideal(ambient: Ambient) -> Result<Ideal> {
    Ideal::new(ambient, radical_generators(ambient)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::vars::Shape;
    use std::collections::BTreeMap;

    fn amb(m: u16, n: u16) -> Ambient {
        Ambient::new(Shape::new(m, n).unwrap(), FieldSpec::Rationals)
    }

    #[test]
    fn test_counts_match_formula_across_desk_shapes() {
        for (m, n) in [(2, 2), (2, 3), (3, 2), (3, 3), (3, 4), (4, 3), (4, 4), (5, 5)] {
            let basis = claimed_basis(amb(m, n), TermOrder::DiagLex).unwrap();
            assert_eq!(basis.len() as u64, basis_count(m, n), "shape {m}x{n}");
            let radical = claimed_radical_basis(amb(m, n), TermOrder::DiagLex).unwrap();
            assert_eq!(radical.len() as u64, radical_basis_count(m, n), "shape {m}x{n}");
        }
    }

    #[test]
    fn test_known_cardinalities() {
        assert_eq!(basis_count(2, 2), 1);
        assert_eq!(basis_count(2, 3), 5);
        assert_eq!(basis_count(3, 2), 5);
        assert_eq!(basis_count(3, 3), 24);
        assert_eq!(basis_count(3, 4), 66);
        assert_eq!(basis_count(4, 3), 66);
        assert_eq!(basis_count(4, 4), 180);
    }

    #[test]
    fn test_kind_breakdown_at_three_by_three() {
        let basis = claimed_basis(amb(3, 3), TermOrder::DiagLex).unwrap();
        let mut by_kind: BTreeMap<BasisElementKind, usize> = BTreeMap::new();
        for e in &basis {
            *by_kind.entry(e.kind).or_default() += 1;
        }
        assert_eq!(by_kind[&BasisElementKind::Permanent], 9);
        assert_eq!(by_kind[&BasisElementKind::PairInLowerRow], 3);
        assert_eq!(by_kind[&BasisElementKind::PairInUpperRow], 3);
        assert_eq!(by_kind[&BasisElementKind::PairInRightColumn], 3);
        assert_eq!(by_kind[&BasisElementKind::PairInLeftColumn], 3);
        assert_eq!(by_kind[&BasisElementKind::SquaredAntiDiagonal], 3);
    }

    #[test]
    fn test_two_row_shapes_have_no_column_or_antidiagonal_types() {
        let basis = claimed_basis(amb(2, 3), TermOrder::DiagLex).unwrap();
        assert_eq!(basis.len(), 5);
        assert!(basis.iter().all(|e| matches!(
            e.kind,
            BasisElementKind::Permanent
                | BasisElementKind::PairInLowerRow
                | BasisElementKind::PairInUpperRow
        )));
    }

    #[test]
    fn test_sorted_descending_and_monic() {
        for order in [TermOrder::DiagLex, TermOrder::DiagLexTranspose] {
            let basis = claimed_basis(amb(3, 3), order).unwrap();
            for w in basis.windows(2) {
                let a = w[0].poly.leading_monomial(order).unwrap();
                let b = w[1].poly.leading_monomial(order).unwrap();
                assert_eq!(order.compare(a, b), std::cmp::Ordering::Greater);
            }
            assert!(basis.iter().all(|e| e.poly.leading_term(order).unwrap().1.is_one()));
        }
    }

    #[test]
    fn test_radical_generators_count() {
        // subpermanents plus all distinct-rows distinct-columns triples
        assert_eq!(radical_generators(amb(3, 3)).unwrap().len(), 9 + 6);
        assert_eq!(radical_generators(amb(2, 3)).unwrap().len(), 3);
        assert_eq!(radical_generators(amb(3, 4)).unwrap().len(), 18 + 24);
    }

    #[test]
    fn test_same_set_under_both_orders() {
        let a = amb(3, 4);
        let lex: std::collections::BTreeSet<String> = claimed_basis(a, TermOrder::DiagLex)
            .unwrap()
            .iter()
            .map(|e| e.poly.render(TermOrder::DiagLex))
            .collect();
        let t: std::collections::BTreeSet<String> =
            claimed_basis(a, TermOrder::DiagLexTranspose)
                .unwrap()
                .iter()
                .map(|e| e.poly.render(TermOrder::DiagLex))
                .collect();
        assert_eq!(lex, t);
    }
}
