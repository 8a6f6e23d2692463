//! Explicit membership certificates: a target polynomial written as a
//! combination of ideal generators, so membership can be replayed by pure
//! arithmetic instead of trusted to a normal-form computation.

use crate::error::{Error, Result};
use crate::matrix::GenericMatrix;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::vars::{Ambient, VarRef};

/// A target polynomial and multipliers against named generators, with
/// `target == sum(multiplier * generator)`.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub target: Polynomial,
    pub combination: Vec<(Polynomial, Polynomial)>,
}

impl Certificate {
    /// Replay the arithmetic and compare against the target.
    pub fn verify(&self) -> bool {
        let mut acc = Polynomial::zero(self.target.ambient());
        for (multiplier, generator) in &self.combination {
            acc = &acc + &(multiplier * generator);
        }
        acc == self.target
    }

    /// True when every generator used is a 2x2 subpermanent of the
    /// generic matrix.
    pub fn generators_are_subpermanents(&self) -> bool {
        let matrix = GenericMatrix::new(self.target.ambient());
        let pool = match matrix.subpermanents(2) {
            Ok(p) => p,
            Err(_) => return false,
        };
        self.combination.iter().all(|(_, g)| pool.contains(g))
    }
}

fn entry_monomial(entries: &[((u16, u16), u32)]) -> Monomial {
    Monomial::from_pairs(entries.iter().map(|&((r, c), e)| (VarRef::matrix(r, c), e)))
}

fn monomial_poly(ambient: Ambient, entries: &[((u16, u16), u32)]) -> Polynomial {
    Polynomial::of_monomial(ambient, entry_monomial(entries), ambient.field.one())
}

fn check_entries(ambient: Ambient, entries: &[(u16, u16)]) -> Result<()> {
    for &(r, c) in entries {
        if !ambient.shape.contains(r, c) {
            return Err(Error::IndexOutOfRange {
                row: r,
                col: c,
                m: ambient.shape.m,
                n: ambient.shape.n,
            });
        }
    }
    Ok(())
}

fn half(ambient: Ambient) -> Result<crate::field::Scalar> {
    if ambient.field.is_characteristic_two() {
        return Err(Error::CharacteristicTwo);
    }
    ambient.field.one().div(&ambient.field.from_i64(2))
}

/// Certificate that `b * c * x` lies in the ideal of 2x2 subpermanents,
/// where two of the three given entries share a row (or a column) and the
/// third sits in a different row (or column). Writing the shared-row case
/// with pair `b = (R,p1)`, `c = (R,p2)` and lone entry `x = (L,q)`, the
/// product of the two pair entries with the lone entry is a combination
/// of the three subpermanents on rows `{R,L}` and column pairs from
/// `{q,p1,p2}`. Requires an invertible 2.
pub fn triple_certificate(
    ambient: Ambient,
    e1: (u16, u16),
    e2: (u16, u16),
    e3: (u16, u16),
) -> Result<Certificate> {
    check_entries(ambient, &[e1, e2, e3])?;
    let entries = [e1, e2, e3];

    // Find the repeated row or repeated column among the three entries.
    let same_row = |a: (u16, u16), b: (u16, u16)| a.0 == b.0 && a.1 != b.1;
    let same_col = |a: (u16, u16), b: (u16, u16)| a.1 == b.1 && a.0 != b.0;
    for perm in [[0usize, 1, 2], [0, 2, 1], [1, 2, 0]] {
        let (p, q, lone) = (entries[perm[0]], entries[perm[1]], entries[perm[2]]);
        if same_row(p, q) && lone.0 != p.0 && lone.1 != p.1 && lone.1 != q.1 {
            return row_pair_certificate(ambient, p.0, p.1, q.1, lone.0, lone.1);
        }
        if same_col(p, q) && lone.1 != p.1 && lone.0 != p.0 && lone.0 != q.0 {
            return transpose_certificate(ambient, p, q, lone);
        }
    }
    Err(Error::Pattern(format!(
        "entries ({},{}), ({},{}), ({},{}) do not form a pair sharing a row or column plus a lone entry off that row and those columns",
        e1.0, e1.1, e2.0, e2.1, e3.0, e3.1
    )))
}

/// Shared-row case: pair `(row_r, p1)`, `(row_r, p2)`, lone `(row_l, q)`.
fn row_pair_certificate(
    ambient: Ambient,
    row_r: u16,
    p1: u16,
    p2: u16,
    row_l: u16,
    q: u16,
) -> Result<Certificate> {
    let h = half(ambient)?;
    let matrix = GenericMatrix::new(ambient);
    let a = monomial_poly(ambient, &[((row_r, q), 1)]);
    let b = monomial_poly(ambient, &[((row_r, p1), 1)]);
    let c = monomial_poly(ambient, &[((row_r, p2), 1)]);
    let x = monomial_poly(ambient, &[((row_l, q), 1)]);

    let perm = |c1: u16, c2: u16| {
        let (lo, hi) = if c1 < c2 { (c1, c2) } else { (c2, c1) };
        let (top, bot) = if row_r < row_l { (row_r, row_l) } else { (row_l, row_r) };
        matrix.permanent(&[top, bot], &[lo, hi])
    };

    let target = &(&b * &c) * &x;
    let combination = vec![
        (c.scale(&h), perm(q, p1)?),
        (a.scale(&h.neg()), perm(p1, p2)?),
        (b.scale(&h), perm(q, p2)?),
    ];
    let cert = Certificate { target, combination };
    debug_assert!(cert.verify());
    Ok(cert)
}

/// Shared-column case, handled by transposing into the shared-row case.
fn transpose_certificate(
    ambient: Ambient,
    p: (u16, u16),
    q: (u16, u16),
    lone: (u16, u16),
) -> Result<Certificate> {
    let flipped = Ambient::new(ambient.shape.transpose(), ambient.field);
    let cert = triple_certificate(flipped, (p.1, p.0), (q.1, q.0), (lone.1, lone.0))?;
    let back = |poly: &Polynomial| transpose_polynomial(ambient, poly);
    Ok(Certificate {
        target: back(&cert.target),
        combination: cert
            .combination
            .iter()
            .map(|(m, g)| (back(m), back(g)))
            .collect(),
    })
}

fn transpose_polynomial(target_ambient: Ambient, poly: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(target_ambient);
    for (mono, coeff) in poly.terms() {
        let flipped = Monomial::from_pairs(mono.iter().map(|(v, e)| match v {
            VarRef::Matrix { row, col } => (VarRef::matrix(col, row), e),
            VarRef::Elim => (VarRef::Elim, e),
        }));
        out = &out + &Polynomial::of_monomial(target_ambient, flipped, coeff.clone());
    }
    out
}

/// Certificate that a degree-four anti-diagonal monomial — three entries
/// on pairwise distinct rows and columns, exactly one squared — lies in
/// the ideal of 2x2 subpermanents. Entries are given with matching
/// exponents that must sum to four. Requires an invertible 2.
pub fn quad_certificate(
    ambient: Ambient,
    entries: [(u16, u16); 3],
    exponents: [u32; 3],
) -> Result<Certificate> {
    check_entries(ambient, &entries)?;
    let rows: Vec<u16> = entries.iter().map(|e| e.0).collect();
    let cols: Vec<u16> = entries.iter().map(|e| e.1).collect();
    let distinct = |v: &[u16]| v.iter().collect::<std::collections::BTreeSet<_>>().len() == v.len();
    if !distinct(&rows) || !distinct(&cols) {
        return Err(Error::Pattern(
            "entries must occupy three distinct rows and three distinct columns".into(),
        ));
    }
    let squared: Vec<usize> = (0..3).filter(|&i| exponents[i] == 2).collect();
    if exponents.iter().sum::<u32>() != 4 || squared.len() != 1 || exponents.contains(&0) {
        return Err(Error::Pattern(format!(
            "exponents {:?} must be 1,1,2 in some arrangement",
            exponents
        )));
    }
    let s = entries[squared[0]];
    let others: Vec<(u16, u16)> = (0..3).filter(|&i| i != squared[0]).map(|i| entries[i]).collect();
    let (g1, g2) = (others[0], others[1]);

    // With s the squared entry: g1 * s^2 * g2 equals
    //   (g1*s) * perm(rows {r_g2, r_s}, cols {c_g2, c_s})
    //   - z * (certificate combination for g1 * v * s)
    // where v = (r_s, c_g2) and z = (r_g2, c_s) complete the 2x2 block on
    // rows {r_g2, r_s} and columns {c_g2, c_s}.
    let matrix = GenericMatrix::new(ambient);
    let v = (s.0, g2.1);
    let z = (g2.0, s.1);
    let (top, bot) = if g2.0 < s.0 { (g2.0, s.0) } else { (s.0, g2.0) };
    let (lo, hi) = if g2.1 < s.1 { (g2.1, s.1) } else { (s.1, g2.1) };
    let block = matrix.permanent(&[top, bot], &[lo, hi])?;

    let inner = triple_certificate(ambient, g1, v, s)?;
    let g1s = monomial_poly(ambient, &[((g1.0, g1.1), 1), ((s.0, s.1), 1)]);
    let zp = monomial_poly(ambient, &[((z.0, z.1), 1)]);

    let mut combination = vec![(g1s, block)];
    for (mult, gen) in inner.combination {
        combination.push(((&zp * &mult).scale(&ambient.field.from_i64(-1)), gen));
    }
    let target = Polynomial::of_monomial(
        ambient,
        entry_monomial(&[
            ((entries[0].0, entries[0].1), exponents[0]),
            ((entries[1].0, entries[1].1), exponents[1]),
            ((entries[2].0, entries[2].1), exponents[2]),
        ]),
        ambient.field.one(),
    );
    let cert = Certificate { target, combination };
    debug_assert!(cert.verify());
    Ok(cert)
}

/// A witness that the ideal of 2x2 subpermanents is not integrally
/// closed at 4x4 and larger: an anti-diagonal product of four entries
/// that lies outside the ideal while its square factors through it.
#[derive(Debug, Clone)]
pub struct ClosureWitness {
    /// The element integral over the ideal.
    pub witness: Polynomial,
    /// Certificates for two factors whose product is the witness squared.
    pub square_factors: [Certificate; 2],
}

/// Construct the closure witness. Defined only when both dimensions are
/// at least four.
pub fn closure_witness(ambient: Ambient) -> Result<ClosureWitness> {
    let (m, n) = (ambient.shape.m, ambient.shape.n);
    if m < 4 || n < 4 {
        return Err(Error::NotDefinedAtShape { what: "integral-closure witness", m, n });
    }
    let witness = monomial_poly(
        ambient,
        &[((4, 1), 1), ((3, 2), 1), ((2, 3), 1), ((1, 4), 1)],
    );
    let first = quad_certificate(ambient, [(4, 1), (3, 2), (2, 3)], [1, 1, 2])?;
    let second = quad_certificate(ambient, [(4, 1), (3, 2), (1, 4)], [1, 1, 2])?;
    Ok(ClosureWitness { witness, square_factors: [first, second] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::ideal::Ideal;
    use crate::matrix::permanental_ideal;
    use crate::order::TermOrder;
    use crate::vars::Shape;

    fn amb(m: u16, n: u16) -> Ambient {
        Ambient::new(Shape::new(m, n).unwrap(), FieldSpec::Rationals)
    }

    #[test]
    fn test_row_pair_triple() {
        let a = amb(2, 3);
        let cert = triple_certificate(a, (2, 1), (2, 2), (1, 3)).unwrap();
        assert!(cert.verify());
        assert!(cert.generators_are_subpermanents());
        assert_eq!(cert.target.render(TermOrder::DiagLex), "x[1,3]*x[2,1]*x[2,2]");
        assert_eq!(cert.combination.len(), 3);
    }

    #[test]
    fn test_column_pair_triple() {
        let a = amb(3, 2);
        let cert = triple_certificate(a, (1, 2), (2, 2), (3, 1)).unwrap();
        assert!(cert.verify());
        assert!(cert.generators_are_subpermanents());
        assert_eq!(cert.target.render(TermOrder::DiagLex), "x[1,2]*x[2,2]*x[3,1]");
    }

    #[test]
    fn test_triple_in_any_argument_order() {
        let a = amb(3, 3);
        for perm in [
            [(3, 1), (3, 2), (1, 3)],
            [(3, 2), (1, 3), (3, 1)],
            [(1, 3), (3, 1), (3, 2)],
        ] {
            let cert = triple_certificate(a, perm[0], perm[1], perm[2]).unwrap();
            assert!(cert.verify());
            assert_eq!(
                cert.target.render(TermOrder::DiagLex),
                "x[1,3]*x[3,1]*x[3,2]"
            );
        }
    }

    #[test]
    fn test_triple_rejects_true_nonmembers() {
        // A pair in one row whose lone entry reuses one of the pair's
        // columns is genuinely outside the ideal, so no certificate
        // pattern may accept it.
        let a = amb(2, 2);
        let err = triple_certificate(a, (1, 1), (1, 2), (2, 1)).unwrap_err();
        assert!(matches!(err, crate::error::Error::Pattern(_)));
    }

    #[test]
    fn test_triple_rejects_scattered_entries() {
        let a = amb(3, 3);
        let err = triple_certificate(a, (1, 1), (2, 2), (3, 3)).unwrap_err();
        assert!(matches!(err, crate::error::Error::Pattern(_)));
    }

    #[test]
    fn test_triple_requires_odd_characteristic() {
        let a = Ambient::new(Shape::new(2, 3).unwrap(), FieldSpec::prime_field(2).unwrap());
        let err = triple_certificate(a, (2, 1), (2, 2), (1, 3)).unwrap_err();
        assert!(matches!(err, crate::error::Error::CharacteristicTwo));
    }

    #[test]
    fn test_triple_targets_are_ideal_members() {
        let a = amb(3, 3);
        let ideal = permanental_ideal(a, 2).unwrap();
        for (e1, e2, e3) in [
            ((3, 1), (3, 2), (1, 3)),
            ((2, 1), (2, 3), (1, 2)),
            ((1, 2), (2, 2), (3, 1)),
            ((1, 1), (3, 1), (2, 3)),
        ] {
            let cert = triple_certificate(a, e1, e2, e3).unwrap();
            assert!(cert.verify());
            assert!(ideal
                .contains(&cert.target, TermOrder::DiagLex, &Default::default())
                .unwrap());
        }
    }

    #[test]
    fn test_quad_certificate_all_positions() {
        let a = amb(3, 3);
        let ideal = permanental_ideal(a, 2).unwrap();
        let entries = [(3, 1), (2, 2), (1, 3)];
        for exps in [[2, 1, 1], [1, 2, 1], [1, 1, 2]] {
            let cert = quad_certificate(a, entries, exps).unwrap();
            assert!(cert.verify());
            assert!(cert.generators_are_subpermanents());
            assert_eq!(cert.target.total_degree(), Some(4));
            assert!(ideal
                .contains(&cert.target, TermOrder::DiagLex, &Default::default())
                .unwrap());
        }
    }

    #[test]
    fn test_quad_rejects_bad_exponents() {
        let a = amb(3, 3);
        let entries = [(3, 1), (2, 2), (1, 3)];
        for exps in [[1, 1, 1], [2, 2, 0], [3, 1, 0], [4, 0, 0], [2, 2, 2]] {
            let err = quad_certificate(a, entries, exps).unwrap_err();
            assert!(matches!(err, crate::error::Error::Pattern(_)), "exps {exps:?}");
        }
    }

    #[test]
    fn test_quad_rejects_repeated_row_or_column() {
        let a = amb(3, 3);
        for entries in [[(1, 1), (1, 2), (2, 3)], [(1, 1), (2, 1), (3, 2)]] {
            let err = quad_certificate(a, entries, [1, 1, 2]).unwrap_err();
            assert!(matches!(err, crate::error::Error::Pattern(_)));
        }
    }

    #[test]
    fn test_closure_witness_shape_gate() {
        let err = closure_witness(amb(3, 4)).unwrap_err();
        assert!(matches!(err, crate::error::Error::NotDefinedAtShape { .. }));
    }

    #[test]
    fn test_closure_witness_algebra() {
        let a = amb(4, 4);
        let w = closure_witness(a).unwrap();
        let ideal = permanental_ideal(a, 2).unwrap();
        let opts = Default::default();

        // The witness itself stays outside the ideal...
        assert!(!ideal.contains(&w.witness, TermOrder::DiagLex, &opts).unwrap());

        // ...but its square is the product of the two certified targets.
        // Each certificate writes its target as a combination of
        // subpermanents, so the square visibly lies in the square of the
        // ideal.
        let square = &w.witness * &w.witness;
        let product = &w.square_factors[0].target * &w.square_factors[1].target;
        assert_eq!(square, product);
        for cert in &w.square_factors {
            assert!(cert.verify());
            assert!(cert.generators_are_subpermanents());
            assert!(ideal.contains(&cert.target, TermOrder::DiagLex, &opts).unwrap());
        }
    }

    #[test]
    fn test_certificates_replay_in_prime_fields() {
        let a = Ambient::new(Shape::new(3, 3).unwrap(), FieldSpec::prime_field(5).unwrap());
        let cert = triple_certificate(a, (3, 1), (3, 2), (1, 3)).unwrap();
        assert!(cert.verify());
        let quad = quad_certificate(a, [(3, 1), (2, 2), (1, 3)], [1, 1, 2]).unwrap();
        assert!(quad.verify());
    }

    #[test]
    fn test_combination_rebuilds_target_exactly() {
        let a = amb(2, 3);
        let cert = triple_certificate(a, (2, 1), (2, 2), (1, 3)).unwrap();
        let mut acc = Polynomial::zero(a);
        for (mult, gen) in &cert.combination {
            acc = &acc + &(mult * gen);
        }
        assert_eq!(acc, cert.target);
        // and the generators really generate: target is in their ideal
        let gens: Vec<Polynomial> = cert.combination.iter().map(|(_, g)| g.clone()).collect();
        let ideal = Ideal::new(a, gens).unwrap();
        assert!(ideal
            .contains(&cert.target, TermOrder::DiagLex, &Default::default())
            .unwrap());
    }
}
