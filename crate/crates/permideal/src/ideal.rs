//! Ideals of the matrix polynomial ring, with cached Groebner bases and
//! the operations the verification suite needs: sums, products,
//! intersections, membership, radical membership, equality, and
//! enumeration of the monomials spanning a finite quotient of two ideals.

use crate::error::{Error, Result};
use crate::groebner::{buchberger, normal_form, BuchbergerOptions, GbReport};
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::Polynomial;
use crate::vars::{Ambient, VarRef};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::{Arc, Mutex};

/// An ideal given by generators, with reduced Groebner bases memoized
/// per term order. Generators never mention the elimination variable;
/// `t` appears only inside the intersection and radical routines.
pub struct Ideal {
    ambient: Ambient,
    generators: Vec<Polynomial>,
    cache: Mutex<BTreeMap<TermOrder, Arc<Vec<Polynomial>>>>,
}

impl Ideal {
    pub fn new(ambient: Ambient, generators: Vec<Polynomial>) -> Result<Ideal> {
        for g in &generators {
            if g.ambient() != ambient {
                return Err(Error::AmbientMismatch);
            }
            if g.uses_elim() {
                return Err(Error::EliminationVariablePresent);
            }
        }
        let generators: Vec<Polynomial> =
            generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ambient, generators, cache: Mutex::new(BTreeMap::new()) })
    }

    pub fn zero(ambient: Ambient) -> Ideal {
        Ideal { ambient, generators: Vec::new(), cache: Mutex::new(BTreeMap::new()) }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// The reduced Groebner basis under `order`, computed once and shared.
    pub fn groebner_basis(
        &self,
        order: TermOrder,
        options: &BuchbergerOptions,
    ) -> Result<Arc<Vec<Polynomial>>> {
        if let Some(hit) = self.cache.lock().unwrap().get(&order) {
            return Ok(Arc::clone(hit));
        }
        let report = buchberger(&self.generators, order, options)?;
        let mut cache = self.cache.lock().unwrap();
        let entry = cache
            .entry(order)
            .or_insert_with(|| Arc::new(report.basis));
        Ok(Arc::clone(entry))
    }

    /// Uncached basis computation that also returns the work counters.
    pub fn groebner_report(
        &self,
        order: TermOrder,
        options: &BuchbergerOptions,
    ) -> Result<GbReport> {
        let report = buchberger(&self.generators, order, options)?;
        self.cache
            .lock()
            .unwrap()
            .entry(order)
            .or_insert_with(|| Arc::new(report.basis.clone()));
        Ok(report)
    }

    fn seed_cache(&self, order: TermOrder, basis: Vec<Polynomial>) {
        self.cache
            .lock()
            .unwrap()
            .entry(order)
            .or_insert_with(|| Arc::new(basis));
    }

    /// Minimal generators of the initial ideal: the leading monomials of
    /// the reduced basis.
    pub fn initial_generators(
        &self,
        order: TermOrder,
        options: &BuchbergerOptions,
    ) -> Result<Vec<Monomial>> {
        let basis = self.groebner_basis(order, options)?;
        basis
            .iter()
            .map(|g| g.leading_monomial(order).map(Monomial::clone))
            .collect()
    }

    pub fn normal_form_of(
        &self,
        f: &Polynomial,
        order: TermOrder,
        options: &BuchbergerOptions,
    ) -> Result<Polynomial> {
        if f.ambient() != self.ambient {
            return Err(Error::AmbientMismatch);
        }
        if f.uses_elim() {
            return Err(Error::EliminationVariablePresent);
        }
        let basis = self.groebner_basis(order, options)?;
        normal_form(f, &basis, order)
    }

    pub fn contains(
        &self,
        f: &Polynomial,
        order: TermOrder,
        options: &BuchbergerOptions,
    ) -> Result<bool> {
        Ok(self.normal_form_of(f, order, options)?.is_zero())
    }

    /// Whether every generator of `self` lies in `other`.
    pub fn is_subideal_of(
        &self,
        other: &Ideal,
        order: TermOrder,
        options: &BuchbergerOptions,
    ) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        for g in &self.generators {
            if !other.contains(g, order, options)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ideal equality, decided by comparing reduced bases.
    pub fn equal(
        &self,
        other: &Ideal,
        order: TermOrder,
        options: &BuchbergerOptions,
    ) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let lhs = self.groebner_basis(order, options)?;
        let rhs = other.groebner_basis(order, options)?;
        Ok(*lhs == *rhs)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(self.ambient, gens)
    }

    /// The product ideal, generated by all pairwise products.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for f in &self.generators {
            for g in &other.generators {
                gens.push(f * g);
            }
        }
        Ideal::new(self.ambient, gens)
    }

    /// Intersection of two ideals. Pure monomial ideals go through the
    /// lcm shortcut; everything else uses `intersection_via_elimination`.
    pub fn intersection(
        &self,
        other: &Ideal,
        order: TermOrder,
        options: &BuchbergerOptions,
    ) -> Result<Ideal> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        if self.is_monomial_ideal() && other.is_monomial_ideal() {
            return self.intersection_of_monomial_ideals(other, order);
        }
        self.intersection_via_elimination(other, order, options)
    }

    fn is_monomial_ideal(&self) -> bool {
        self.generators.iter().all(Polynomial::is_monomial)
    }

    fn intersection_of_monomial_ideals(&self, other: &Ideal, order: TermOrder) -> Result<Ideal> {
        let mut lcms: BTreeSet<Monomial> = BTreeSet::new();
        for f in &self.generators {
            let (mf, _) = f.terms().next().expect("generators are nonzero");
            for g in &other.generators {
                let (mg, _) = g.terms().next().expect("generators are nonzero");
                lcms.insert(mf.lcm(mg));
            }
        }
        let minimal = minimal_monomials(lcms);
        let one = self.ambient.field.one();
        let gens: Vec<Polynomial> = minimal
            .into_iter()
            .map(|m| Polynomial::of_monomial(self.ambient, m, one.clone()))
            .collect();
        let result = Ideal::new(self.ambient, gens)?;
        // Minimal generators of a monomial ideal are its reduced basis.
        let mut basis = result.generators.clone();
        sort_descending_by_leading(&mut basis, order.base_order());
        result.seed_cache(order.base_order(), basis);
        Ok(result)
    }

    /// Intersection by the single-variable trick: eliminate `t` from
    /// `t*I + (1 - t)*J`.
    pub fn intersection_via_elimination(
        &self,
        other: &Ideal,
        order: TermOrder,
        options: &BuchbergerOptions,
    ) -> Result<Ideal> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let t = Polynomial::variable(self.ambient, VarRef::Elim)?;
        let one_minus_t = &Polynomial::one(self.ambient) - &t;
        let mut gens: Vec<Polynomial> = Vec::new();
        for f in &self.generators {
            gens.push(&t * f);
        }
        for g in &other.generators {
            gens.push(&one_minus_t * g);
        }
        eliminate(self.ambient, &gens, order.elim_extension(), options)
    }

    /// Intersection of several ideals, folded smallest-first to keep the
    /// intermediate generator sets small.
    pub fn intersect_all(
        ideals: &[&Ideal],
        order: TermOrder,
        options: &BuchbergerOptions,
    ) -> Result<Ideal> {
        let first = ideals.first().ok_or(Error::AmbientMismatch)?;
        let mut sorted: Vec<&Ideal> = ideals.to_vec();
        sorted.sort_by_key(|i| i.generators.len());
        let mut acc: Option<Ideal> = None;
        for next in sorted {
            acc = Some(match acc {
                None => next.clone(),
                Some(current) => current.intersection(next, order, options)?,
            });
        }
        let acc = acc.expect("at least one ideal");
        debug_assert_eq!(acc.ambient, first.ambient);
        Ok(acc)
    }

    /// Radical membership: `f` is nilpotent modulo `self` exactly when `1`
    /// lies in `self + <1 - t*f>`.
    pub fn radical_member(
        &self,
        f: &Polynomial,
        order: TermOrder,
        options: &BuchbergerOptions,
    ) -> Result<bool> {
        if f.ambient() != self.ambient {
            return Err(Error::AmbientMismatch);
        }
        if f.uses_elim() {
            return Err(Error::EliminationVariablePresent);
        }
        if f.is_zero() || self.contains(f, order, options)? {
            return Ok(true);
        }
        let t = Polynomial::variable(self.ambient, VarRef::Elim)?;
        let mut gens = self.generators.clone();
        gens.push(&Polynomial::one(self.ambient) - &(&t * f));
        let report = buchberger(&gens, order.elim_extension(), options)?;
        Ok(report.basis.iter().any(|p| p.is_constant() && !p.is_zero()))
    }

    /// The monomials spanning `larger/self` as a vector space: members of
    /// the initial ideal of `larger` outside the initial ideal of `self`.
    /// Walks upward from the minimal generators, so it needs the quotient
    /// to be finite; a live monomial above `degree_cap` is reported as
    /// `NotFiniteWithinCap` instead of looping forever.
    pub fn gap_monomials(
        &self,
        larger: &Ideal,
        order: TermOrder,
        degree_cap: u32,
        options: &BuchbergerOptions,
    ) -> Result<Vec<Monomial>> {
        if self.ambient != larger.ambient {
            return Err(Error::AmbientMismatch);
        }
        for (index, g) in self.generators.iter().enumerate() {
            if !larger.contains(g, order, options)? {
                return Err(Error::NotASubideal { index });
            }
        }
        let small_initial = self.initial_generators(order, options)?;
        let large_initial = larger.initial_generators(order, options)?;
        let in_small = |m: &Monomial| small_initial.iter().any(|g| g.divides(m));

        let mut seen: BTreeSet<Monomial> = BTreeSet::new();
        let mut live: Vec<Monomial> = Vec::new();
        let mut queue: VecDeque<Monomial> = VecDeque::new();
        for g in large_initial {
            if seen.insert(g.clone()) {
                queue.push_back(g);
            }
        }
        while let Some(m) = queue.pop_front() {
            if in_small(&m) {
                // Everything above m is also in the smaller initial ideal.
                continue;
            }
            if m.total_degree() > degree_cap {
                return Err(Error::NotFiniteWithinCap { cap: degree_cap });
            }
            live.push(m.clone());
            for v in self.ambient.shape.variables() {
                let up = m.mul(&Monomial::var(v));
                if seen.insert(up.clone()) {
                    queue.push_back(up);
                }
            }
        }
        live.sort_by(|a, b| order.compare(a, b));
        Ok(live)
    }
}

/// Intersect the ideal spanned by `gens` (which may use the auxiliary
/// variable `t`) with the plain matrix ring, by computing a reduced
/// basis under an elimination order and keeping the `t`-free part. That
/// part is the reduced basis of the result under the base order, so the
/// returned ideal has its basis cache pre-seeded.
pub fn eliminate(
    ambient: Ambient,
    gens: &[Polynomial],
    order: TermOrder,
    options: &BuchbergerOptions,
) -> Result<Ideal> {
    if !order.is_elimination() {
        return Err(Error::NotEliminationOrder);
    }
    let report = buchberger(gens, order, options)?;
    let kept: Vec<Polynomial> = report.basis.into_iter().filter(|p| !p.uses_elim()).collect();
    let result = Ideal::new(ambient, kept)?;
    result.seed_cache(order.base_order(), result.generators.clone());
    Ok(result)
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().unwrap().clone();
        Ideal {
            ambient: self.ambient,
            generators: self.generators.clone(),
            cache: Mutex::new(cache),
        }
    }
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Ideal({} generators in {})",
            self.generators.len(),
            self.ambient
        )
    }
}

impl TermOrder {
    /// The order itself if it already lives in the matrix ring, otherwise
    /// the base order its elimination block extends.
    fn base_order(self) -> TermOrder {
        match self.base() {
            crate::order::DiagBase::Lex => TermOrder::DiagLex,
            crate::order::DiagBase::LexTranspose => TermOrder::DiagLexTranspose,
        }
    }
}

/// Drop every monomial strictly divisible by another in the set.
fn minimal_monomials(set: BTreeSet<Monomial>) -> Vec<Monomial> {
    let all: Vec<Monomial> = set.into_iter().collect();
    all.iter()
        .filter(|m| !all.iter().any(|other| other != *m && other.divides(m)))
        .cloned()
        .collect()
}

fn sort_descending_by_leading(basis: &mut [Polynomial], order: TermOrder) {
    basis.sort_by(|a, b| {
        let ma = a.leading_monomial(order).expect("basis elements are nonzero");
        let mb = b.leading_monomial(order).expect("basis elements are nonzero");
        order.compare(mb, ma)
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::parse_polynomial;
    use crate::vars::Shape;

    const O: TermOrder = TermOrder::DiagLex;

    fn amb(m: u16, n: u16) -> Ambient {
        Ambient::new(Shape::new(m, n).unwrap(), FieldSpec::Rationals)
    }

    fn ideal(texts: &[&str], a: Ambient) -> Ideal {
        let gens = texts.iter().map(|t| parse_polynomial(t, a).unwrap()).collect();
        Ideal::new(a, gens).unwrap()
    }

    fn opts() -> BuchbergerOptions {
        BuchbergerOptions::default()
    }

    #[test]
    fn test_membership_in_subpermanent_ideal() {
        let a = amb(2, 3);
        let i = ideal(
            &[
                "x[1,1]*x[2,2] + x[2,1]*x[1,2]",
                "x[1,1]*x[2,3] + x[2,1]*x[1,3]",
                "x[1,2]*x[2,3] + x[2,2]*x[1,3]",
            ],
            a,
        );
        let member = parse_polynomial("x[1,1]*x[1,2]*x[2,3]", a).unwrap();
        assert!(i.contains(&member, O, &opts()).unwrap());
        let det = parse_polynomial("x[1,1]*x[2,2] - x[2,1]*x[1,2]", a).unwrap();
        assert!(!i.contains(&det, O, &opts()).unwrap());
        let nf = i.normal_form_of(&det, O, &opts()).unwrap();
        assert_eq!(nf.render(O), "-2*x[1,2]*x[2,1]");
    }

    #[test]
    fn test_equality_is_basis_independent() {
        let a = amb(2, 2);
        let lhs = ideal(&["x[1,1]", "x[2,2]"], a);
        let rhs = ideal(&["x[1,1] + x[2,2]", "3*x[2,2]", "x[1,1] - x[2,2]"], a);
        assert!(lhs.equal(&rhs, O, &opts()).unwrap());
        let smaller = ideal(&["x[1,1]^2"], a);
        let larger = ideal(&["x[1,1]"], a);
        assert!(smaller.is_subideal_of(&larger, O, &opts()).unwrap());
        assert!(!larger.is_subideal_of(&smaller, O, &opts()).unwrap());
        assert!(!smaller.equal(&larger, O, &opts()).unwrap());
    }

    #[test]
    fn test_sum_and_product() {
        let a = amb(2, 2);
        let i = ideal(&["x[1,1]"], a);
        let j = ideal(&["x[2,2]"], a);
        let s = i.sum(&j).unwrap();
        assert!(s.contains(&parse_polynomial("x[1,1] - 7*x[2,2]", a).unwrap(), O, &opts()).unwrap());
        let p = i.product(&j).unwrap();
        assert!(p.contains(&parse_polynomial("x[1,1]*x[2,2]", a).unwrap(), O, &opts()).unwrap());
        assert!(!p.contains(&parse_polynomial("x[1,1]", a).unwrap(), O, &opts()).unwrap());
    }

    #[test]
    fn test_monomial_intersection_shortcut_matches_elimination() {
        let a = amb(2, 2);
        let i = ideal(&["x[1,1]", "x[1,2]^2"], a);
        let j = ideal(&["x[1,2]", "x[2,1]"], a);
        let fast = i.intersection(&j, O, &opts()).unwrap();
        let slow = i.intersection_via_elimination(&j, O, &opts()).unwrap();
        assert!(fast.equal(&slow, O, &opts()).unwrap());
        // <x11, x12^2> ∩ <x12, x21> = <x11*x12, x11*x21, x12^2>
        let expected = ideal(&["x[1,1]*x[1,2]", "x[1,1]*x[2,1]", "x[1,2]^2"], a);
        assert!(fast.equal(&expected, O, &opts()).unwrap());
    }

    #[test]
    fn test_intersection_of_principal_ideals_is_lcm_like() {
        let a = amb(2, 2);
        let perm = ideal(&["x[1,1]*x[2,2] + x[2,1]*x[1,2]"], a);
        let x11 = ideal(&["x[1,1]"], a);
        let both = perm.intersection(&x11, O, &opts()).unwrap();
        let expected = ideal(&["x[1,1]*x[1,1]*x[2,2] + x[1,1]*x[2,1]*x[1,2]"], a);
        assert!(both.equal(&expected, O, &opts()).unwrap());
    }

    #[test]
    fn test_intersect_all_and_clone_share_nothing_harmful() {
        let a = amb(2, 2);
        let i = ideal(&["x[1,1]"], a);
        let j = ideal(&["x[1,1]*x[2,2]"], a);
        let k = ideal(&["x[1,1]^2", "x[1,1]*x[2,2]^3"], a);
        let meet = Ideal::intersect_all(&[&i, &j, &k], O, &opts()).unwrap();
        let expect = ideal(&["x[1,1]^2*x[2,2]", "x[1,1]*x[2,2]^3"], a);
        assert!(meet.equal(&expect, O, &opts()).unwrap());
        let copy = meet.clone();
        assert!(copy.equal(&meet, O, &opts()).unwrap());
    }

    #[test]
    fn test_radical_membership_via_added_inverse() {
        let a = amb(2, 2);
        let sq = ideal(&["x[1,1]^2"], a);
        let x11 = parse_polynomial("x[1,1]", a).unwrap();
        let x22 = parse_polynomial("x[2,2]", a).unwrap();
        assert!(!sq.contains(&x11, O, &opts()).unwrap());
        assert!(sq.radical_member(&x11, O, &opts()).unwrap());
        assert!(!sq.radical_member(&x22, O, &opts()).unwrap());
        assert!(sq.radical_member(&Polynomial::zero(a), O, &opts()).unwrap());
    }

    #[test]
    fn test_gap_monomials_finite_case() {
        let a = amb(2, 2);
        let small = ideal(&["x[1,1]^2", "x[1,2]", "x[2,1]", "x[2,2]"], a);
        let large = ideal(&["x[1,1]", "x[1,2]", "x[2,1]", "x[2,2]"], a);
        let gap = small.gap_monomials(&large, O, 8, &opts()).unwrap();
        assert_eq!(gap.len(), 1);
        assert_eq!(gap[0].to_string(), "x[1,1]");
    }

    #[test]
    fn test_gap_monomials_detects_infinite_quotient() {
        let a = amb(2, 2);
        let small = ideal(&["x[1,1]^2"], a);
        let large = ideal(&["x[1,1]"], a);
        assert!(matches!(
            small.gap_monomials(&large, O, 6, &opts()),
            Err(Error::NotFiniteWithinCap { cap: 6 })
        ));
    }

    #[test]
    fn test_gap_monomials_requires_containment() {
        let a = amb(2, 2);
        let i = ideal(&["x[1,1]"], a);
        let j = ideal(&["x[2,2]"], a);
        assert!(matches!(
            i.gap_monomials(&j, O, 6, &opts()),
            Err(Error::NotASubideal { index: 0 })
        ));
    }

    #[test]
    fn test_generators_reject_elimination_variable() {
        let a = amb(2, 2);
        let t = parse_polynomial("1 - t*x[1,1]", a).unwrap();
        assert!(matches!(
            Ideal::new(a, vec![t]),
            Err(Error::EliminationVariablePresent)
        ));
    }

    #[test]
    fn test_eliminate_examples() {
        let a = amb(2, 2);
        let parse =
            |texts: &[&str]| -> Vec<Polynomial> {
                texts.iter().map(|s| parse_polynomial(s, a).unwrap()).collect()
            };
        let elim = O.elim_extension();

        let diff = eliminate(a, &parse(&["t - x[1,1]", "t - x[1,2]"]), elim, &opts()).unwrap();
        assert!(diff.equal(&ideal(&["x[1,1] - x[1,2]"], a), O, &opts()).unwrap());

        let nothing = eliminate(a, &parse(&["t"]), elim, &opts()).unwrap();
        assert!(nothing.is_zero_ideal());

        let meet = eliminate(a, &parse(&["t*x[1,1]", "x[1,2] - t*x[1,2]"]), elim, &opts()).unwrap();
        assert!(meet.equal(&ideal(&["x[1,1]*x[1,2]"], a), O, &opts()).unwrap());
    }

    #[test]
    fn test_eliminate_requires_elimination_order() {
        let a = amb(2, 2);
        let gens = vec![parse_polynomial("t - x[1,1]", a).unwrap()];
        assert!(matches!(
            eliminate(a, &gens, O, &opts()),
            Err(Error::NotEliminationOrder)
        ));
    }
}
