//! Polynomial division and Buchberger's algorithm.
//!
//! All computation is exact. `buchberger` returns the unique reduced
//! Groebner basis (monic, mutually reduced, sorted by decreasing leading
//! monomial), so basis vectors can be compared with `==`.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::Polynomial;
use crate::vars::{Ambient, VarRef};
use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::time::{Duration, Instant};

/// Resource limits for a basis computation.
#[derive(Debug, Clone, Default)]
pub struct Budget {
    /// Wall-clock cap measured from the start of the call.
    pub time_limit: Option<Duration>,
    /// Cap on the number of S-pairs actually reduced.
    pub max_s_pairs: Option<u64>,
}

impl Budget {
    /// No limits at all.
    pub fn unlimited() -> Self {
        Budget::default()
    }

    /// Wall-clock limit only.
    pub fn with_time_limit(limit: Duration) -> Self {
        Budget { time_limit: Some(limit), max_s_pairs: None }
    }
}

/// Knobs for `buchberger`.
#[derive(Debug, Clone)]
pub struct BuchbergerOptions {
    pub budget: Budget,
    /// Skip S-pairs eliminated by the chain criterion (on by default).
    pub chain_criterion: bool,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions { budget: Budget::unlimited(), chain_criterion: true }
    }
}

/// Outcome of a completed basis computation.
#[derive(Debug, Clone)]
pub struct GbReport {
    /// The reduced Groebner basis, sorted by decreasing leading monomial.
    pub basis: Vec<Polynomial>,
    /// S-pairs whose S-polynomial was reduced (criterion skips not counted).
    pub s_pairs_processed: u64,
    /// How many of those reductions ended in zero.
    pub reductions_to_zero: u64,
    pub elapsed: Duration,
}

fn common_ambient(polys: &[Polynomial]) -> Result<Option<Ambient>> {
    let mut found = None;
    for p in polys {
        match found {
            None => found = Some(p.ambient()),
            Some(a) if a == p.ambient() => {}
            Some(_) => return Err(Error::AmbientMismatch),
        }
    }
    Ok(found)
}

fn check_elim_use(polys: &[Polynomial], order: TermOrder) -> Result<()> {
    if !order.is_elimination() && polys.iter().any(Polynomial::uses_elim) {
        return Err(Error::EliminationVariablePresent);
    }
    Ok(())
}

/// S-polynomial of two nonzero polynomials: the cancellation of their
/// leading terms over the lcm of their leading monomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: TermOrder) -> Result<Polynomial> {
    if f.ambient() != g.ambient() {
        return Err(Error::AmbientMismatch);
    }
    let (mf, cf) = f.leading_term(order)?;
    let (mg, cg) = g.leading_term(order)?;
    let lcm = mf.lcm(mg);
    let uf = lcm.try_div(mf).expect("lcm is divisible by both inputs");
    let ug = lcm.try_div(mg).expect("lcm is divisible by both inputs");
    let inv_cf = cf.inv()?;
    let inv_cg = cg.inv()?;
    Ok(&f.mul_term(&uf, &inv_cf) - &g.mul_term(&ug, &inv_cg))
}

/// Remainder of `f` on division by `basis`, taking divisors in slice order.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: TermOrder) -> Result<Polynomial> {
    let leading: Vec<(&Monomial, &Scalar)> = basis
        .iter()
        .map(|g| g.leading_term(order))
        .collect::<Result<_>>()?;
    normal_form_against(f, basis, &leading, order)
}

fn normal_form_against(
    f: &Polynomial,
    basis: &[Polynomial],
    leading: &[(&Monomial, &Scalar)],
    order: TermOrder,
) -> Result<Polynomial> {
    let mut p = f.clone();
    let mut remainder = Polynomial::zero(f.ambient());
    'outer: while !p.is_zero() {
        let (lm, lc) = p.leading_term(order)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        for (g, (gm, gc)) in basis.iter().zip(leading) {
            if gm.divides(&lm) {
                let qm = lm.try_div(gm).expect("checked divisibility");
                let qc = lc.div(gc)?;
                p = &p - &g.mul_term(&qm, &qc);
                continue 'outer;
            }
        }
        remainder = &remainder + &Polynomial::of_monomial(f.ambient(), lm.clone(), lc);
        p.remove_term(&lm);
    }
    Ok(remainder)
}

/// Division with quotients: returns `(q, r)` with `f = sum q[i]*basis[i] + r`
/// and no term of `r` divisible by any basis leading monomial.
pub fn reduce_with_cofactors(
    f: &Polynomial,
    basis: &[Polynomial],
    order: TermOrder,
) -> Result<(Vec<Polynomial>, Polynomial)> {
    let leading: Vec<(&Monomial, &Scalar)> = basis
        .iter()
        .map(|g| g.leading_term(order))
        .collect::<Result<_>>()?;
    let mut quotients = vec![Polynomial::zero(f.ambient()); basis.len()];
    let mut p = f.clone();
    let mut remainder = Polynomial::zero(f.ambient());
    'outer: while !p.is_zero() {
        let (lm, lc) = p.leading_term(order)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        for (idx, (g, (gm, gc))) in basis.iter().zip(&leading).enumerate() {
            if gm.divides(&lm) {
                let qm = lm.try_div(gm).expect("checked divisibility");
                let qc = lc.div(gc)?;
                quotients[idx] =
                    &quotients[idx] + &Polynomial::of_monomial(f.ambient(), qm.clone(), qc.clone());
                p = &p - &g.mul_term(&qm, &qc);
                continue 'outer;
            }
        }
        remainder = &remainder + &Polynomial::of_monomial(f.ambient(), lm.clone(), lc);
        p.remove_term(&lm);
    }
    Ok((quotients, remainder))
}

/// Exponent vector of `m` over the full variable list in decreasing order
/// precedence. Lexicographic comparison of these keys agrees with the order.
fn exponent_key(m: &Monomial, vars_desc: &[VarRef]) -> Vec<u32> {
    vars_desc.iter().map(|&v| m.exponent(v)).collect()
}

#[derive(Debug, PartialEq, Eq, PartialOrd, Ord)]
struct PairEntry {
    degree: u32,
    lcm_key: Vec<u32>,
    i: usize,
    j: usize,
}

/// Buchberger's algorithm with the normal selection strategy, the coprime
/// criterion and (optionally) the chain criterion, followed by
/// minimization and full tail reduction.
pub fn buchberger(
    gens: &[Polynomial],
    order: TermOrder,
    options: &BuchbergerOptions,
) -> Result<GbReport> {
    let start = Instant::now();
    check_elim_use(gens, order)?;
    let ambient = match common_ambient(gens)? {
        Some(a) => a,
        None => {
            return Ok(GbReport {
                basis: Vec::new(),
                s_pairs_processed: 0,
                reductions_to_zero: 0,
                elapsed: start.elapsed(),
            })
        }
    };

    let mut vars_desc: Vec<VarRef> = ambient.shape.variables().collect();
    vars_desc.push(VarRef::Elim);
    vars_desc.sort_by(|&a, &b| order.var_cmp(b, a));

    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g.make_monic(order)?);
        }
    }
    if basis.is_empty() {
        return Ok(GbReport {
            basis,
            s_pairs_processed: 0,
            reductions_to_zero: 0,
            elapsed: start.elapsed(),
        });
    }

    let mut leading: Vec<Monomial> = basis
        .iter()
        .map(|g| g.leading_monomial(order).map(Monomial::clone))
        .collect::<Result<_>>()?;

    let mut heap: BinaryHeap<Reverse<PairEntry>> = BinaryHeap::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let push_pairs = |upto: usize,
                          leading: &[Monomial],
                          heap: &mut BinaryHeap<Reverse<PairEntry>>,
                          pending: &mut BTreeSet<(usize, usize)>| {
        for i in 0..upto {
            let lcm = leading[i].lcm(&leading[upto]);
            heap.push(Reverse(PairEntry {
                degree: lcm.total_degree(),
                lcm_key: exponent_key(&lcm, &vars_desc),
                i,
                j: upto,
            }));
            pending.insert((i, upto));
        }
    };
    for t in 1..basis.len() {
        push_pairs(t, &leading, &mut heap, &mut pending);
    }

    let mut s_pairs_processed: u64 = 0;
    let mut reductions_to_zero: u64 = 0;
    let over_budget = |s_pairs_processed, reductions_to_zero| {
        if let Some(limit) = options.budget.time_limit {
            if start.elapsed() > limit {
                return Some(Error::BudgetExceeded { s_pairs_processed, reductions_to_zero });
            }
        }
        if let Some(max) = options.budget.max_s_pairs {
            if s_pairs_processed >= max {
                return Some(Error::BudgetExceeded { s_pairs_processed, reductions_to_zero });
            }
        }
        None
    };

    while let Some(Reverse(entry)) = heap.pop() {
        let (i, j) = (entry.i, entry.j);
        pending.remove(&(i, j));

        if leading[i].is_coprime_with(&leading[j]) {
            continue;
        }
        let lcm = leading[i].lcm(&leading[j]);
        if options.chain_criterion {
            let chained = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && leading[k].divides(&lcm)
                    && !pending.contains(&(i.min(k), i.max(k)))
                    && !pending.contains(&(j.min(k), j.max(k)))
            });
            if chained {
                continue;
            }
        }

        if let Some(err) = over_budget(s_pairs_processed, reductions_to_zero) {
            return Err(err);
        }
        let s = s_polynomial(&basis[i], &basis[j], order)?;
        let remainder = normal_form(&s, &basis, order)?;
        s_pairs_processed += 1;
        if remainder.is_zero() {
            reductions_to_zero += 1;
            continue;
        }
        let remainder = remainder.make_monic(order)?;
        leading.push(remainder.leading_monomial(order)?.clone());
        basis.push(remainder);
        push_pairs(basis.len() - 1, &leading, &mut heap, &mut pending);
    }

    let basis = reduce_basis(basis, order)?;
    Ok(GbReport { basis, s_pairs_processed, reductions_to_zero, elapsed: start.elapsed() })
}

/// Minimize a Groebner basis and tail-reduce it into the reduced basis.
fn reduce_basis(mut basis: Vec<Polynomial>, order: TermOrder) -> Result<Vec<Polynomial>> {
    basis.sort_by(|a, b| {
        let ma = a.leading_monomial(order).expect("basis elements are nonzero");
        let mb = b.leading_monomial(order).expect("basis elements are nonzero");
        order.compare(ma, mb)
    });
    let mut minimal: Vec<Polynomial> = Vec::new();
    let mut kept_leading: Vec<Monomial> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial(order)?.clone();
        if !kept_leading.iter().any(|k| k.divides(&lm)) {
            minimal.push(g);
            kept_leading.push(lm);
        }
    }

    // Tail-reduce every element against the others. Leading monomials are
    // pairwise non-divisible, so reduction only rewrites tails and the
    // result is the unique reduced basis; iterate to a fixed point anyway.
    loop {
        let mut changed = false;
        for idx in 0..minimal.len() {
            let mut others = minimal.clone();
            let g = others.remove(idx);
            let reduced = normal_form(&g, &others, order)?.make_monic(order)?;
            if reduced != g {
                changed = true;
                minimal[idx] = reduced;
            }
        }
        if !changed {
            break;
        }
    }

    minimal.sort_by(|a, b| {
        let ma = a.leading_monomial(order).expect("basis elements are nonzero");
        let mb = b.leading_monomial(order).expect("basis elements are nonzero");
        order.compare(mb, ma)
    });
    Ok(minimal)
}

/// Exhaustive Buchberger criterion: every S-polynomial reduces to zero.
/// No pair-skipping shortcuts, so this is an independent check.
pub fn is_groebner_basis(basis: &[Polynomial], order: TermOrder) -> Result<bool> {
    check_elim_use(basis, order)?;
    common_ambient(basis)?;
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j], order)?;
            if !normal_form(&s, basis, order)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::parse_polynomial;
    use crate::vars::Shape;

    fn amb(m: u16, n: u16) -> Ambient {
        Ambient::new(Shape::new(m, n).unwrap(), FieldSpec::Rationals)
    }

    fn polys(texts: &[&str], a: Ambient) -> Vec<Polynomial> {
        texts.iter().map(|t| parse_polynomial(t, a).unwrap()).collect()
    }

    /// The three 2x2 subpermanents of a 2x3 matrix.
    fn two_by_three_gens(a: Ambient) -> Vec<Polynomial> {
        polys(
            &[
                "x[1,1]*x[2,2] + x[2,1]*x[1,2]",
                "x[1,1]*x[2,3] + x[2,1]*x[1,3]",
                "x[1,2]*x[2,3] + x[2,2]*x[1,3]",
            ],
            a,
        )
    }

    #[test]
    fn test_s_polynomial_of_overlapping_subpermanents() {
        let a = amb(2, 3);
        let g = two_by_three_gens(a);
        let s = s_polynomial(&g[0], &g[1], TermOrder::DiagLex).unwrap();
        let expected =
            parse_polynomial("x[1,2]*x[2,1]*x[2,3] - x[1,3]*x[2,1]*x[2,2]", a).unwrap();
        assert_eq!(s, expected);
    }

    #[test]
    fn test_division_identity_with_cofactors() {
        let a = amb(2, 3);
        let basis = two_by_three_gens(a);
        let f = parse_polynomial(
            "x[1,1]^2*x[2,2]*x[2,3] + 3*x[1,2]*x[2,1] - 5/7*x[1,3]",
            a,
        )
        .unwrap();
        let (q, r) = reduce_with_cofactors(&f, &basis, TermOrder::DiagLex).unwrap();
        let mut rebuilt = r.clone();
        for (qi, gi) in q.iter().zip(&basis) {
            rebuilt = &rebuilt + &(qi * gi);
        }
        assert_eq!(rebuilt, f);
        // No remainder term is divisible by a basis leading monomial.
        for (m, _) in r.terms() {
            for g in &basis {
                assert!(!g.leading_monomial(TermOrder::DiagLex).unwrap().divides(m));
            }
        }
    }

    #[test]
    fn test_normal_form_is_idempotent() {
        let a = amb(2, 3);
        let basis = two_by_three_gens(a);
        let f = parse_polynomial("x[1,1]*x[2,2]*x[2,3] + x[1,1]", a).unwrap();
        let r = normal_form(&f, &basis, TermOrder::DiagLex).unwrap();
        let rr = normal_form(&r, &basis, TermOrder::DiagLex).unwrap();
        assert_eq!(r, rr);
    }

    #[test]
    fn test_single_generator_is_its_own_reduced_basis() {
        let a = amb(2, 2);
        let f = parse_polynomial("2*x[1,1]*x[2,2] + 2*x[2,1]*x[1,2]", a).unwrap();
        let report = buchberger(&[f], TermOrder::DiagLex, &BuchbergerOptions::default()).unwrap();
        assert_eq!(report.basis.len(), 1);
        assert_eq!(
            report.basis[0].render(TermOrder::DiagLex),
            "x[1,1]*x[2,2] + x[1,2]*x[2,1]"
        );
    }

    #[test]
    fn test_bare_subpermanents_are_not_a_basis_but_closure_is() {
        let a = amb(2, 3);
        let gens = two_by_three_gens(a);
        assert!(!is_groebner_basis(&gens, TermOrder::DiagLex).unwrap());
        let report =
            buchberger(&gens, TermOrder::DiagLex, &BuchbergerOptions::default()).unwrap();
        assert_eq!(report.basis.len(), 5);
        assert!(is_groebner_basis(&report.basis, TermOrder::DiagLex).unwrap());
    }

    #[test]
    fn test_reduced_basis_ignores_generator_order_and_scaling() {
        let a = amb(2, 3);
        let gens = two_by_three_gens(a);
        let mut shuffled = vec![
            gens[2].scale(&a.field.from_i64(-3)),
            gens[0].scale(&a.field.from_ratio(2, 5).unwrap()),
            gens[1].clone(),
            gens[1].scale(&a.field.from_i64(7)),
        ];
        let lhs = buchberger(&gens, TermOrder::DiagLex, &BuchbergerOptions::default())
            .unwrap()
            .basis;
        let rhs = buchberger(&shuffled, TermOrder::DiagLex, &BuchbergerOptions::default())
            .unwrap()
            .basis;
        assert_eq!(lhs, rhs);
        shuffled.reverse();
        let back = buchberger(&shuffled, TermOrder::DiagLex, &BuchbergerOptions::default())
            .unwrap()
            .basis;
        assert_eq!(lhs, back);
    }

    #[test]
    fn test_chain_criterion_does_not_change_result() {
        let a = amb(2, 3);
        let gens = two_by_three_gens(a);
        let with = buchberger(&gens, TermOrder::DiagLex, &BuchbergerOptions::default())
            .unwrap()
            .basis;
        let without = buchberger(
            &gens,
            TermOrder::DiagLex,
            &BuchbergerOptions { chain_criterion: false, ..Default::default() },
        )
        .unwrap()
        .basis;
        assert_eq!(with, without);
    }

    #[test]
    fn test_budget_exceeded_reports_progress() {
        let a = amb(2, 3);
        let gens = two_by_three_gens(a);
        let opts = BuchbergerOptions {
            budget: Budget { time_limit: None, max_s_pairs: Some(1) },
            ..Default::default()
        };
        match buchberger(&gens, TermOrder::DiagLex, &opts) {
            Err(Error::BudgetExceeded { s_pairs_processed, .. }) => {
                assert_eq!(s_pairs_processed, 1)
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn test_elimination_variable_needs_elimination_order() {
        let a = amb(2, 2);
        let f = parse_polynomial("1 - t*x[1,1]", a).unwrap();
        assert!(matches!(
            buchberger(&[f.clone()], TermOrder::DiagLex, &BuchbergerOptions::default()),
            Err(Error::EliminationVariablePresent)
        ));
        assert!(buchberger(
            &[f],
            TermOrder::DiagLex.elim_extension(),
            &BuchbergerOptions::default()
        )
        .is_ok());
    }

    #[test]
    fn test_zero_and_empty_inputs() {
        let a = amb(2, 2);
        let report = buchberger(
            &[Polynomial::zero(a)],
            TermOrder::DiagLex,
            &BuchbergerOptions::default(),
        )
        .unwrap();
        assert!(report.basis.is_empty());
        assert!(is_groebner_basis(&[], TermOrder::DiagLex).unwrap());
    }

    #[test]
    fn test_normal_form_against_constant_basis_is_zero() {
        let a = amb(2, 2);
        let one = Polynomial::one(a);
        let f = parse_polynomial("x[1,1]^3 - 4*x[2,2] + 9", a).unwrap();
        assert!(normal_form(&f, &[one], TermOrder::DiagLex).unwrap().is_zero());
    }
}
