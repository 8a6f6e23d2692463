//! The prime and primary structure over the 2x2 subpermanent ideal:
//! enumeration of minimal primes with heights, counting formulas, the
//! unmixed intersections of each prime family, the embedded component,
//! and the sum/intersection exchange identity the decomposition rests on.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::groebner::BuchbergerOptions;
use crate::ideal::Ideal;
use crate::matrix::GenericMatrix;
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::Polynomial;
use crate::vars::{Ambient, VarRef};
use itertools::Itertools;
use std::collections::BTreeSet;
use std::fmt;

/// Which family a minimal prime belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PrimeKind {
    /// All entries outside one kept row.
    RowComplement { kept_row: u16 },
    /// All entries outside one kept column.
    ColComplement { kept_col: u16 },
    /// The permanent of one 2x2 block plus all entries outside it.
    Block { rows: [u16; 2], cols: [u16; 2] },
}

impl fmt::Display for PrimeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeKind::RowComplement { kept_row } => write!(f, "row-complement(keep-row {kept_row})"),
            PrimeKind::ColComplement { kept_col } => write!(f, "col-complement(keep-col {kept_col})"),
            PrimeKind::Block { rows, cols } => write!(
                f,
                "block(rows {},{}; cols {},{})",
                rows[0], rows[1], cols[0], cols[1]
            ),
        }
    }
}

/// One minimal prime over the 2x2 subpermanent ideal.
#[derive(Debug, Clone)]
pub struct MinimalPrime {
    pub kind: PrimeKind,
    pub height: u32,
    pub ideal: Ideal,
}

fn entry_poly(ambient: Ambient, row: u16, col: u16) -> Polynomial {
    Polynomial::of_monomial(
        ambient,
        Monomial::var(VarRef::matrix(row, col)),
        ambient.field.one(),
    )
}

/// Every minimal prime, in a fixed enumeration order: row complements by
/// kept row (present when n >= 3), then column complements by kept
/// column (present when m >= 3), then 2x2 blocks in row-major order.
pub fn minimal_primes(ambient: Ambient) -> Result<Vec<MinimalPrime>> {
    let (m, n) = (ambient.shape.m, ambient.shape.n);
    let matrix = GenericMatrix::new(ambient);
    let mut out = Vec::new();

    if n >= 3 {
        for kept_row in 1..=m {
            let gens: Vec<Polynomial> = ambient
                .shape
                .entries()
                .filter(|&(i, _)| i != kept_row)
                .map(|(i, j)| entry_poly(ambient, i, j))
                .collect();
            out.push(MinimalPrime {
                kind: PrimeKind::RowComplement { kept_row },
                height: (m as u32 - 1) * n as u32,
                ideal: Ideal::new(ambient, gens)?,
            });
        }
    }
    if m >= 3 {
        for kept_col in 1..=n {
            let gens: Vec<Polynomial> = ambient
                .shape
                .entries()
                .filter(|&(_, j)| j != kept_col)
                .map(|(i, j)| entry_poly(ambient, i, j))
                .collect();
            out.push(MinimalPrime {
                kind: PrimeKind::ColComplement { kept_col },
                height: m as u32 * (n as u32 - 1),
                ideal: Ideal::new(ambient, gens)?,
            });
        }
    }
    for rows in (1..=m).combinations(2) {
        for cols in (1..=n).combinations(2) {
            let mut gens = vec![matrix.permanent(&rows, &cols)?];
            for (i, j) in ambient.shape.entries() {
                let inside = rows.contains(&i) && cols.contains(&j);
                if !inside {
                    gens.push(entry_poly(ambient, i, j));
                }
            }
            out.push(MinimalPrime {
                kind: PrimeKind::Block { rows: [rows[0], rows[1]], cols: [cols[0], cols[1]] },
                height: m as u32 * n as u32 - 3,
                ideal: Ideal::new(ambient, gens)?,
            });
        }
    }
    Ok(out)
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

/// Number of minimal primes in closed form.
pub fn component_count(m: u16, n: u16) -> u64 {
    let rows = if n >= 3 { m as u64 } else { 0 };
    let cols = if m >= 3 { n as u64 } else { 0 };
    rows + cols + binomial(m as u64, 2) * binomial(n as u64, 2)
}

/// Length of the finite module between the ideal and its radical.
pub fn gap_length_formula(m: u16, n: u16) -> u64 {
    let top = m.min(n) as u64;
    (3..=top).map(|i| binomial(m as u64, i) * binomial(n as u64, i)).sum()
}

/// The unmixed intersection of one prime family, by its explicit
/// generators: part 1 is spanned by products of two entries from
/// distinct rows (defined when n >= 3), part 2 by products of two
/// entries from distinct columns (defined when m >= 3), and part 3 by
/// the subpermanents together with entry triples from three distinct
/// rows and triples from three distinct columns.
pub fn unmixed_part(ambient: Ambient, index: u8) -> Result<Ideal> {
    let (m, n) = (ambient.shape.m, ambient.shape.n);
    match index {
        1 | 2 => {
            if index == 1 && n < 3 {
                return Err(Error::UnmixedUndefined { index, m, n });
            }
            if index == 2 && m < 3 {
                return Err(Error::UnmixedUndefined { index, m, n });
            }
            let mut gens = Vec::new();
            let positions: Vec<(u16, u16)> = ambient.shape.entries().collect();
            for (a, b) in positions.iter().tuple_combinations() {
                let distinct = if index == 1 { a.0 != b.0 } else { a.1 != b.1 };
                if distinct {
                    gens.push(&entry_poly(ambient, a.0, a.1) * &entry_poly(ambient, b.0, b.1));
                }
            }
            Ideal::new(ambient, gens)
        }
        3 => {
            let matrix = GenericMatrix::new(ambient);
            let mut gens = matrix.subpermanents(2)?;
            for rows in (1..=m).combinations(3) {
                for cols in std::iter::repeat(1..=n).take(3).multi_cartesian_product() {
                    gens.push(triple_poly(ambient, &rows, &cols));
                }
            }
            for cols in (1..=n).combinations(3) {
                for rows in std::iter::repeat(1..=m).take(3).multi_cartesian_product() {
                    gens.push(triple_poly(ambient, &rows, &cols));
                }
            }
            Ideal::new(ambient, gens)
        }
        other => Err(Error::UnmixedIndex(other)),
    }
}

fn triple_poly(ambient: Ambient, rows: &[u16], cols: &[u16]) -> Polynomial {
    let monomial = Monomial::from_pairs(
        rows.iter()
            .zip(cols.iter())
            .map(|(&r, &c)| (VarRef::matrix(r, c), 1u32)),
    );
    Polynomial::of_monomial(ambient, monomial, ambient.field.one())
}

/// The component primary to the maximal ideal: the subpermanents plus
/// every squared entry.
pub fn q_component(ambient: Ambient) -> Result<Ideal> {
    let matrix = GenericMatrix::new(ambient);
    let mut gens = matrix.subpermanents(2)?;
    for (i, j) in ambient.shape.entries() {
        let e = entry_poly(ambient, i, j);
        gens.push(&e * &e);
    }
    Ideal::new(ambient, gens)
}

/// Structural membership test of a linear form in a minimal prime: for
/// the complement primes the form's support must avoid the kept line,
/// and for a block prime the four block-entry coefficients must vanish.
pub fn linear_form_in_prime(form: &Polynomial, prime: &MinimalPrime) -> Result<bool> {
    let mut support = BTreeSet::new();
    for (mono, _) in form.terms() {
        let vars: Vec<(VarRef, u32)> = mono.iter().collect();
        match vars.as_slice() {
            [(VarRef::Matrix { row, col }, 1)] => {
                support.insert((*row, *col));
            }
            _ => {
                return Err(Error::Pattern(format!(
                    "expected a linear form in matrix entries, found term {mono}"
                )))
            }
        }
    }
    Ok(match prime.kind {
        PrimeKind::RowComplement { kept_row } => support.iter().all(|&(r, _)| r != kept_row),
        PrimeKind::ColComplement { kept_col } => support.iter().all(|&(_, c)| c != kept_col),
        PrimeKind::Block { rows, cols } => support
            .iter()
            .all(|&(r, c)| !(rows.contains(&r) && cols.contains(&c))),
    })
}

/// Exchange identity between sums and intersections: given pairs
/// `(I_k, J_k)` with `I_i` contained in `J_j` whenever `i != j`, the
/// intersection of the sums `I_k + J_k` equals the sum of all `I_k` plus
/// the intersection of all `J_k`. Returns whether the conclusion holds;
/// a hypothesis violation is reported as an error instead.
pub fn sum_intersection_identity(
    pairs: &[(Ideal, Ideal)],
    order: TermOrder,
    options: &BuchbergerOptions,
) -> Result<bool> {
    if pairs.is_empty() {
        return Ok(true);
    }
    for (i, (small, _)) in pairs.iter().enumerate() {
        for (j, (_, big)) in pairs.iter().enumerate() {
            if i != j && !small.is_subideal_of(big, order, options)? {
                return Err(Error::HypothesisViolated { i, j });
            }
        }
    }
    let sums: Vec<Ideal> = pairs
        .iter()
        .map(|(i, j)| i.sum(j))
        .collect::<Result<Vec<_>>>()?;
    let lhs = Ideal::intersect_all(&sums.iter().collect::<Vec<_>>(), order, options)?;

    let mut all_i = pairs[0].0.clone();
    for (i, _) in &pairs[1..] {
        all_i = all_i.sum(i)?;
    }
    let js: Vec<&Ideal> = pairs.iter().map(|(_, j)| j).collect();
    let rhs = all_i.sum(&Ideal::intersect_all(&js, order, options)?)?;
    lhs.equal(&rhs, order, options)
}

/// The block-indexed instance of the exchange identity: for each 2x2
/// block, the principal ideal of its permanent paired with the ideal of
/// all entries outside it. Their sums are exactly the block primes.
pub fn block_pair_family(ambient: Ambient) -> Result<Vec<(Ideal, Ideal)>> {
    let (m, n) = (ambient.shape.m, ambient.shape.n);
    let matrix = GenericMatrix::new(ambient);
    let mut out = Vec::new();
    for rows in (1..=m).combinations(2) {
        for cols in (1..=n).combinations(2) {
            let perm = Ideal::new(ambient, vec![matrix.permanent(&rows, &cols)?])?;
            let outside: Vec<Polynomial> = ambient
                .shape
                .entries()
                .filter(|&(i, j)| !(rows.contains(&i) && cols.contains(&j)))
                .map(|(i, j)| entry_poly(ambient, i, j))
                .collect();
            out.push((perm, Ideal::new(ambient, outside)?));
        }
    }
    Ok(out)
}

/// Rank of the Gram matrix of the 2x2 permanent as a quadratic form in
/// its four entries. Full rank 4 away from characteristic two witnesses
/// irreducibility, since a product of linear forms has rank at most two.
pub fn permanent_quadric_rank(field: FieldSpec) -> Result<u32> {
    if field.is_characteristic_two() {
        return Err(Error::CharacteristicTwo);
    }
    let half = field.one().div(&field.from_i64(2))?;
    let zero = field.zero();
    // Variable order x[1,1], x[1,2], x[2,1], x[2,2]; the permanent is
    // x[1,1]x[2,2] + x[1,2]x[2,1], so the Gram matrix is half the
    // anti-diagonal permutation.
    let mut gram = vec![vec![zero; 4]; 4];
    for (i, j) in [(0usize, 3usize), (1, 2)] {
        gram[i][j] = half.clone();
        gram[j][i] = half.clone();
    }
    Ok(matrix_rank(gram))
}

fn matrix_rank(mut rows: Vec<Vec<Scalar>>) -> u32 {
    let height = rows.len();
    let width = if height == 0 { 0 } else { rows[0].len() };
    let mut rank = 0usize;
    for col in 0..width {
        let Some(pivot) = (rank..height).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv().expect("pivot is nonzero");
        for r in 0..height {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].mul(&inv);
                for c in col..width {
                    let delta = factor.mul(&rows[rank][c]);
                    rows[r][c] = rows[r][c].sub(&delta);
                }
            }
        }
        rank += 1;
        if rank == height {
            break;
        }
    }
    rank as u32
}

/// Whether a set of entry positions meets every row, every column, and
/// every 2x2 block — exactly the condition for a linear form supported
/// there to avoid every minimal prime.
pub fn is_parameter_support(ambient: Ambient, support: &BTreeSet<(u16, u16)>) -> bool {
    let (m, n) = (ambient.shape.m, ambient.shape.n);
    if n >= 3 && !(1..=m).all(|r| support.iter().any(|&(i, _)| i == r)) {
        return false;
    }
    if m >= 3 && !(1..=n).all(|c| support.iter().any(|&(_, j)| j == c)) {
        return false;
    }
    (1..=m).combinations(2).all(|rows| {
        (1..=n).combinations(2).all(|cols| {
            support
                .iter()
                .any(|&(i, j)| rows.contains(&i) && cols.contains(&j))
        })
    })
}

/// Smallest support size of any linear form avoiding every minimal
/// prime, found by exhausting all entry subsets. Exponential in the
/// entry count; intended for desk-scale shapes.
pub fn minimum_parameter_support(ambient: Ambient) -> u32 {
    let entries: Vec<(u16, u16)> = ambient.shape.entries().collect();
    let mut best = entries.len() as u32;
    for mask in 0u32..(1u32 << entries.len()) {
        if mask.count_ones() >= best {
            continue;
        }
        let support: BTreeSet<(u16, u16)> = entries
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if is_parameter_support(ambient, &support) {
            best = mask.count_ones();
        }
    }
    best
}

/// A support touching every row and column needs at least max(m, n)
/// entries; this bound is met at 3x3 by the main diagonal.
pub fn parameter_support_lower_bound(ambient: Ambient) -> u32 {
    ambient.shape.m.max(ambient.shape.n) as u32
}
