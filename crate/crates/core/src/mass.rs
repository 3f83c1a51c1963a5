//! Tame masses.
//!
//! For a local field with residue field of size `q` prime to `|G|`, tame
//! representations into `G` are the pairs `(g, h)` with `h g h⁻¹ = g^q`
//! (`g` the image of the inertia generator, `h` of a Frobenius lift). The
//! mass is `Σ x^{c(g)}` over those pairs with `x = 1/q`, so it depends only
//! on the residue `a = q mod |G|`, and in fact only on `a` modulo the
//! exponent of `G`.
//!
//! Enumeration walks conjugacy-class representatives `g`: the solutions `h`
//! form a coset `h₀·C(g)` or are empty, and every stratification key used
//! here is invariant under simultaneous conjugation of the pair, so each
//! representative's pairs are weighted by its class size.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::counting::TameCountingFunction;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::types::{pair_type, pair_wreath_type, RamType, WreathType};
use crate::MassPoly;

/// Invertible residues modulo `m`, ascending. Modulo 1 this is `[0]`.
pub fn invertible_residues(m: u64) -> Vec<u64> {
    (0..m.max(1)).filter(|a| a.gcd(&m) == 1).collect()
}

/// Reduces `a` modulo `m`, failing when it is not a unit.
pub fn check_residue(a: u64, m: u64) -> Result<u64> {
    if a.gcd(&m) != 1 {
        return Err(Error::NonInvertibleResidue {
            residue: a,
            modulus: m,
        });
    }
    Ok(a % m)
}

fn check_host(group: &PermGroup, c: &TameCountingFunction) -> Result<()> {
    if c.group() != group {
        return Err(Error::StructureMismatch(format!(
            "counting function `{}` is defined on a different group",
            c.name()
        )));
    }
    Ok(())
}

/// Exponent of the group: lcm of element orders.
pub fn exponent(group: &PermGroup) -> u64 {
    group
        .classes()
        .iter()
        .map(|c| group.elements()[c.representative].order())
        .fold(1, |acc, o| acc.lcm(&o))
}

/// All `h ∈ G` with `h g h⁻¹ = g^a`: empty, or a coset of the centralizer.
pub fn frobenius_solutions(group: &PermGroup, g: &Permutation, a: u64) -> Result<Vec<Permutation>> {
    group.index_of(g)?;
    let a = check_residue(a, group.order() as u64)?;
    let centralizer = group.centralizer(g);
    Ok(solutions_in(group, g, &centralizer, a)
        .into_iter()
        .map(|i| group.elements()[i].clone())
        .collect())
}

fn solutions_in(group: &PermGroup, g: &Permutation, centralizer: &[usize], a: u64) -> Vec<usize> {
    let target = g.pow(a as i64);
    let elements = group.elements();
    let Some(h0) = elements.iter().position(|h| g.conjugates_to(h, &target)) else {
        return Vec::new();
    };
    let mut out: Vec<usize> = centralizer
        .iter()
        .map(|&z| {
            group
                .index_of(&elements[h0].compose_unchecked(&elements[z]))
                .expect("group is closed")
        })
        .collect();
    out.sort_unstable();
    out
}

/// Centralizers of the class representatives, computed once per group.
pub(crate) struct PairEnumerator<'a> {
    group: &'a PermGroup,
    centralizers: Vec<Vec<usize>>,
}

impl<'a> PairEnumerator<'a> {
    pub(crate) fn new(group: &'a PermGroup) -> Self {
        let centralizers = group
            .classes()
            .par_iter()
            .map(|c| group.centralizer(&group.elements()[c.representative]))
            .collect();
        PairEnumerator {
            group,
            centralizers,
        }
    }

    fn rep(&self, class: usize) -> &Permutation {
        &self.group.elements()[self.group.classes()[class].representative]
    }

    fn has_solution(&self, class: usize, a: u64) -> bool {
        let g = self.rep(class);
        let target = g.pow(a as i64);
        self.group
            .elements()
            .iter()
            .any(|h| g.conjugates_to(h, &target))
    }

    fn total(&self, c: &TameCountingFunction, a: u64) -> MassPoly {
        let mut total = MassPoly::zero();
        for (k, class) in self.group.classes().iter().enumerate() {
            if self.has_solution(k, a) {
                let weight = (class.size * self.centralizers[k].len()) as u64;
                total.add_term(weight, c.value_at(class.representative) as usize);
            }
        }
        total
    }

    /// Masses keyed by `key(g, h)`, merged in class order.
    pub(crate) fn stratify<K, F>(
        &self,
        c: &TameCountingFunction,
        a: u64,
        key: F,
    ) -> BTreeMap<K, MassPoly>
    where
        K: Ord + Send,
        F: Fn(&Permutation, &Permutation) -> K + Sync,
    {
        let partials: Vec<Vec<(K, u64, usize)>> = (0..self.group.classes().len())
            .into_par_iter()
            .map(|k| {
                let class = &self.group.classes()[k];
                let g = self.rep(k);
                let exp = c.value_at(class.representative) as usize;
                solutions_in(self.group, g, &self.centralizers[k], a)
                    .into_iter()
                    .map(|h| (key(g, &self.group.elements()[h]), class.size as u64, exp))
                    .collect()
            })
            .collect();
        let mut out: BTreeMap<K, MassPoly> = BTreeMap::new();
        for (key, weight, exp) in partials.into_iter().flatten() {
            out.entry(key).or_default().add_term(weight, exp);
        }
        out
    }
}

pub fn total_mass(group: &PermGroup, c: &TameCountingFunction, a: u64) -> Result<MassPoly> {
    check_host(group, c)?;
    let a = check_residue(a, group.order() as u64)?;
    Ok(PairEnumerator::new(group).total(c, a))
}

pub fn mass_by_type(
    group: &PermGroup,
    c: &TameCountingFunction,
    a: u64,
) -> Result<BTreeMap<RamType, MassPoly>> {
    check_host(group, c)?;
    let a = check_residue(a, group.order() as u64)?;
    Ok(PairEnumerator::new(group).stratify(c, a, pair_type))
}

pub fn mass_by_wreath_type(
    wreath: &PermGroup,
    c: &TameCountingFunction,
    a: u64,
) -> Result<BTreeMap<WreathType, MassPoly>> {
    check_host(wreath, c)?;
    let (inner, outer) = wreath.wreath_factors()?;
    let (da, db) = (inner.degree(), outer.degree());
    let a = check_residue(a, wreath.order() as u64)?;
    Ok(PairEnumerator::new(wreath).stratify(c, a, |g, h| pair_wreath_type(g, h, da, db)))
}

/// `(σ, σ′)`: the types of the two factor representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductType(pub RamType, pub RamType);

impl fmt::Display for ProductType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.0, self.1)
    }
}

impl Serialize for ProductType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn mass_by_product_type(
    product: &PermGroup,
    c: &TameCountingFunction,
    a: u64,
) -> Result<BTreeMap<ProductType, MassPoly>> {
    check_host(product, c)?;
    let (left, right) = product.product_factors()?;
    let (dl, dr) = (left.degree(), right.degree());
    let a = check_residue(a, product.order() as u64)?;
    Ok(PairEnumerator::new(product).stratify(c, a, |g, h| {
        ProductType(
            pair_type(&g.restrict(0, dl), &h.restrict(0, dl)),
            pair_type(&g.restrict(dl, dr), &h.restrict(dl, dr)),
        )
    }))
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Mass of one wreath type of `A ≀ B` predicted from by-type masses of the
/// factors: `|A|^{|𝓑|-r} · f_B(σ)(x) · Π f_A(σ_i)(x^{f_i})`.
///
/// The residue is taken modulo `|A ≀ B|`. The component over an orbit with
/// residue degree `f` lives over a field with `q^f` elements, so its factor
/// mass is computed at residue `a^f mod |A|`. Wreath types are unordered, so
/// base orbits sharing the same `f^e` but carrying different component types
/// contribute the number of ways to assign those types to the orbits.
pub fn predicted_wreath_mass(
    inner: &PermGroup,
    c_inner: &TameCountingFunction,
    outer: &PermGroup,
    c_outer: &TameCountingFunction,
    wtype: &WreathType,
    a: u64,
) -> Result<MassPoly> {
    check_host(inner, c_inner)?;
    check_host(outer, c_outer)?;
    let base = wtype.base();
    if base.degree() != outer.degree() {
        return Err(Error::StructureMismatch(format!(
            "wreath type `{wtype}` does not cover {} blocks",
            outer.degree()
        )));
    }
    if let Some(bad) = wtype.expanded().find(|t| t.sub.degree() != inner.degree()) {
        return Err(Error::StructureMismatch(format!(
            "component type `{}` does not cover {} points",
            bad.sub,
            inner.degree()
        )));
    }
    let order_a = inner.order() as u64;
    let order_b = outer.order() as u64;
    let wreath_order = (order_a as u128)
        .checked_pow(outer.degree() as u32)
        .and_then(|x| x.checked_mul(order_b as u128))
        .expect("wreath order fits in u128");
    if (a as u128).gcd(&wreath_order) != 1 {
        return Err(Error::NonInvertibleResidue {
            residue: a,
            modulus: u64::try_from(wreath_order).unwrap_or(u64::MAX),
        });
    }

    let outer_masses = mass_by_type(outer, c_outer, a % order_b)?;
    let mut result = outer_masses.get(&base).cloned().unwrap_or_default();

    let enumerator = PairEnumerator::new(inner);
    let mut inner_cache: HashMap<u64, BTreeMap<RamType, MassPoly>> = HashMap::new();
    for (term, mult) in wtype.terms() {
        let f = term.term.f;
        let residue = mod_pow(a, f as u64, order_a);
        let masses = inner_cache
            .entry(residue)
            .or_insert_with(|| enumerator.stratify(c_inner, residue, pair_type));
        let factor = masses
            .get(&term.sub)
            .cloned()
            .unwrap_or_default()
            .substitute_power(f);
        result = &result * &factor.pow(*mult as u32);
    }

    // assignments of component types to base orbits with equal f^e
    let mut by_base: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (term, mult) in wtype.terms() {
        by_base.entry(term.term).or_default().push(*mult);
    }
    let assignments: u64 = by_base
        .values()
        .map(|mults| {
            factorial(mults.iter().sum()) / mults.iter().map(|&m| factorial(m)).product::<u64>()
        })
        .product();

    let free_blocks = (outer.degree() - base.orbit_count()) as u32;
    let scale = order_a.pow(free_blocks) * assignments;
    Ok(result.scale(&scale))
}

fn mod_pow(base: u64, exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u128;
    let mut b = (base % m) as u128;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m as u128;
        }
        b = b * b % m as u128;
        e >>= 1;
    }
    result as u64
}

/// Product-type mass predicted as `f_Γ(σ)(x) · f_Γ′(σ′)(x)`.
pub fn predicted_product_mass(
    left: &PermGroup,
    c_left: &TameCountingFunction,
    right: &PermGroup,
    c_right: &TameCountingFunction,
    ptype: &ProductType,
    a: u64,
) -> Result<MassPoly> {
    let modulus = left.order() as u64 * right.order() as u64;
    let a = check_residue(a, modulus)?;
    let ml = mass_by_type(left, c_left, a % left.order() as u64)?;
    let mr = mass_by_type(right, c_right, a % right.order() as u64)?;
    let l = ml.get(&ptype.0).cloned().unwrap_or_default();
    let r = mr.get(&ptype.1).cloned().unwrap_or_default();
    Ok(&l * &r)
}

/// Power-map criterion: every `g` is conjugate to each `g^k` with `k` prime
/// to the order of `g`.
pub fn rational_character_table(group: &PermGroup) -> bool {
    non_rational_witness(group).is_none()
}

/// An element and exponent `k` with `g^k` not conjugate to `g`, if any.
pub fn non_rational_witness(group: &PermGroup) -> Option<(Permutation, u64)> {
    for class in group.classes() {
        let g = &group.elements()[class.representative];
        let n = g.order();
        for k in 2..n {
            if k.gcd(&n) != 1 {
                continue;
            }
            let p = g.pow(k as i64);
            if !group.is_conjugate(g, &p).expect("powers stay in the group") {
                return Some((g.clone(), k));
            }
        }
    }
    None
}

/// Total masses for every invertible residue of `|G|`, ascending by residue.
/// Residues agreeing modulo the group exponent share one computation.
pub fn masses_by_residue(
    group: &PermGroup,
    c: &TameCountingFunction,
) -> Result<Vec<(u64, MassPoly)>> {
    check_host(group, c)?;
    let m = group.order() as u64;
    let exp = exponent(group);
    let enumerator = PairEnumerator::new(group);
    let mut cache: HashMap<u64, MassPoly> = HashMap::new();
    Ok(invertible_residues(m)
        .into_iter()
        .map(|a| {
            let poly = cache
                .entry(a % exp)
                .or_insert_with(|| enumerator.total(c, a))
                .clone();
            (a, poly)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{build_counting, perm_conductor};
    use crate::expr::{build_group, parse_counting, parse_group};
    use crate::group::Limits;

    fn group(text: &str) -> PermGroup {
        build_group(&parse_group(text).unwrap(), Limits::default()).unwrap()
    }

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn poly(c: &[u64]) -> MassPoly {
        MassPoly::new(c.to_vec())
    }

    fn c3() -> PermGroup {
        group("custom(3; (1 2 3))")
    }

    #[test]
    fn residues() {
        assert_eq!(invertible_residues(8), vec![1, 3, 5, 7]);
        assert_eq!(invertible_residues(1), vec![0]);
        assert_eq!(check_residue(7, 6).unwrap(), 1);
        assert!(matches!(
            check_residue(3, 6),
            Err(Error::NonInvertibleResidue {
                residue: 3,
                modulus: 6
            })
        ));
    }

    #[test]
    fn frobenius_examples() {
        let s3 = group("S3");
        assert_eq!(frobenius_solutions(&s3, s3.identity(), 5).unwrap().len(), 6);
        let c3 = c3();
        assert!(frobenius_solutions(&c3, &cyc(3, &[&[0, 1, 2]]), 2)
            .unwrap()
            .is_empty());
        let sols = frobenius_solutions(&s3, &cyc(3, &[&[0, 1, 2]]), 5).unwrap();
        let mut expected = vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 2]]), cyc(3, &[&[1, 2]])];
        let mut got = sols.clone();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
        assert!(matches!(
            frobenius_solutions(&s3, s3.identity(), 3),
            Err(Error::NonInvertibleResidue { .. })
        ));
    }

    #[test]
    fn total_mass_examples() {
        let s2 = group("S2");
        assert_eq!(
            total_mass(&s2, &perm_conductor(&s2), 1).unwrap(),
            poly(&[2, 2])
        );
        let d4 = group("wr(S2,S2)");
        let c = build_counting(&parse_counting("wreath(perm,perm)").unwrap(), &d4).unwrap();
        let d = perm_conductor(&d4);
        for a in [1, 3, 5, 7] {
            assert_eq!(total_mass(&d4, &c, a).unwrap(), poly(&[8, 16, 16]));
            assert_eq!(total_mass(&d4, &d, a).unwrap(), poly(&[8, 8, 16, 8]));
        }
        let c3 = c3();
        assert_eq!(
            total_mass(&c3, &perm_conductor(&c3), 1).unwrap(),
            poly(&[3, 0, 6])
        );
        assert_eq!(
            total_mass(&c3, &perm_conductor(&c3), 2).unwrap(),
            poly(&[3])
        );
    }

    #[test]
    fn foreign_counting_function_rejected() {
        let s3 = group("S3");
        let s2 = group("S2");
        assert!(matches!(
            total_mass(&s3, &perm_conductor(&s2), 1),
            Err(Error::StructureMismatch(_))
        ));
    }

    #[test]
    fn by_type_s2() {
        let s2 = group("S2");
        let m = mass_by_type(&s2, &perm_conductor(&s2), 1).unwrap();
        let expect: BTreeMap<RamType, MassPoly> = [
            ("1^1 1^1".parse().unwrap(), poly(&[1])),
            ("2^1".parse().unwrap(), poly(&[1])),
            ("1^2".parse().unwrap(), poly(&[0, 2])),
        ]
        .into_iter()
        .collect();
        assert_eq!(m, expect);
    }

    #[test]
    fn d4_wreath_base_one_squared() {
        let d4 = group("wr(S2,S2)");
        let c = build_counting(&parse_counting("wreath(perm,perm)").unwrap(), &d4).unwrap();
        for a in [1, 3, 5, 7] {
            let m = mass_by_wreath_type(&d4, &c, a).unwrap();
            let base: MassPoly = m
                .iter()
                .filter(|(k, _)| k.base().to_string() == "1^2")
                .map(|(_, v)| v.clone())
                .sum();
            assert_eq!(base, poly(&[0, 8, 8]));
        }
    }

    #[test]
    fn predicted_examples() {
        let s2 = group("S2");
        let c = perm_conductor(&s2);
        let d4 = group("wr(S2,S2)");
        let cw = build_counting(&parse_counting("wreath(perm,perm)").unwrap(), &d4).unwrap();
        let direct = mass_by_wreath_type(&d4, &cw, 1).unwrap();
        let by_str = |s: &str| direct.keys().find(|k| k.to_string() == s).unwrap().clone();
        let t = by_str("2^1(1^1 1^1)");
        assert_eq!(
            predicted_wreath_mass(&s2, &c, &s2, &c, &t, 1).unwrap(),
            poly(&[2])
        );
        let t = by_str("1^2(1^2)");
        assert_eq!(
            predicted_wreath_mass(&s2, &c, &s2, &c, &t, 1).unwrap(),
            poly(&[0, 0, 8])
        );
        let sum: MassPoly = direct
            .keys()
            .map(|t| predicted_wreath_mass(&s2, &c, &s2, &c, t, 1).unwrap())
            .sum();
        assert_eq!(sum, poly(&[8, 16, 16]));
    }

    #[test]
    fn repeated_base_terms_count_assignments() {
        // both blocks fixed, components of different types: two assignments
        let s2 = group("S2");
        let c = perm_conductor(&s2);
        let d4 = group("wr(S2,S2)");
        let cw = build_counting(&parse_counting("wreath(perm,perm)").unwrap(), &d4).unwrap();
        let direct = mass_by_wreath_type(&d4, &cw, 1).unwrap();
        let (t, m) = direct
            .iter()
            .find(|(k, _)| k.to_string() == "1^1(2^1) 1^1(1^1 1^1)")
            .unwrap();
        assert_eq!(m, &poly(&[2]));
        assert_eq!(
            predicted_wreath_mass(&s2, &c, &s2, &c, t, 1).unwrap(),
            poly(&[2])
        );
    }

    #[test]
    fn predicted_product_examples() {
        let s1 = group("S1");
        let c1 = perm_conductor(&s1);
        let triv = ProductType("1^1".parse().unwrap(), "1^1".parse().unwrap());
        assert_eq!(
            predicted_product_mass(&s1, &c1, &s1, &c1, &triv, 0).unwrap(),
            poly(&[1])
        );
        let s2 = group("S2");
        let s3 = group("S3");
        let (c2, c3) = (perm_conductor(&s2), perm_conductor(&s3));
        let total: MassPoly = mass_by_type(&s2, &c2, 1)
            .unwrap()
            .keys()
            .flat_map(|l| {
                mass_by_type(&s3, &c3, 1)
                    .unwrap()
                    .into_keys()
                    .map(move |r| ProductType(l.clone(), r))
            })
            .map(|t| predicted_product_mass(&s2, &c2, &s3, &c3, &t, 1).unwrap())
            .sum();
        assert_eq!(total, poly(&[12, 24, 24, 12]));
        let wrong = ProductType("1^1 1^1".parse().unwrap(), "4^1".parse().unwrap());
        assert!(predicted_product_mass(&s2, &c2, &s3, &c3, &wrong, 1)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn rationality_examples() {
        assert!(rational_character_table(&group("S5")));
        assert!(!rational_character_table(&c3()));
        assert!(rational_character_table(&group(
            "custom(6; (1 2 3), (4 5 6), (2 3)(5 6))"
        )));
        let (g, k) = non_rational_witness(&c3()).unwrap();
        assert_eq!((g.order(), k), (3, 2));
    }

    #[test]
    fn residue_classes_modulo_exponent() {
        let d4 = group("wr(S2,S2)");
        assert_eq!(exponent(&d4), 4);
        let masses = masses_by_residue(&d4, &perm_conductor(&d4)).unwrap();
        assert_eq!(
            masses.iter().map(|(a, _)| *a).collect::<Vec<_>>(),
            vec![1, 3, 5, 7]
        );
        for (a, m) in masses {
            assert_eq!(m, total_mass(&d4, &perm_conductor(&d4), a).unwrap());
        }
    }
}
