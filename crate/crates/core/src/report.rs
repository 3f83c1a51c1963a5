//! Serializable mass-formula reports.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Display;

use serde::Serialize;

use crate::counting::TameCountingFunction;
use crate::error::Result;
use crate::expr::{build_group, describe};
use crate::group::{Limits, PermGroup};
use crate::image::{conjugators_into, mass_by_image};
use crate::mass::{
    check_residue, exponent, invertible_residues, mass_by_product_type, mass_by_type,
    mass_by_wreath_type, masses_by_residue,
};
use crate::reference::{catalog_entry, known_wild_masses};
use crate::{MassPoly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Stratification {
    #[default]
    Total,
    Type,
    WreathType,
    ProductType,
    Image,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GroupInfo {
    pub expr: String,
    pub order: u64,
    pub degree: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Stratum {
    pub key: String,
    pub coeffs: MassPoly,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ResidueResult {
    pub residue: u64,
    pub total: MassPoly,
    pub strata: Vec<Stratum>,
}

/// Raised when the common polynomial is evaluated at a prime dividing `|G|`,
/// where it does not compute a mass.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WildExclusion {
    pub prime: u64,
    pub tame_value: String,
    pub known_wild_value: Option<String>,
    pub message: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FormulaReport {
    pub group: GroupInfo,
    pub counting: String,
    pub modulus: u64,
    pub results: Vec<ResidueResult>,
    pub formula_exists: bool,
    pub polynomial: Option<MassPoly>,
    pub warnings: Vec<WildExclusion>,
}

impl GroupInfo {
    pub fn of(group: &PermGroup) -> Self {
        GroupInfo {
            expr: describe(group).to_string(),
            order: group.order() as u64,
            degree: group.degree(),
        }
    }
}

impl FormulaReport {
    pub fn residues(&self) -> impl Iterator<Item = u64> + '_ {
        self.results.iter().map(|r| r.residue)
    }

    pub fn total(&self, residue: u64) -> Option<&MassPoly> {
        self.results
            .iter()
            .find(|r| r.residue == residue)
            .map(|r| &r.total)
    }
}

/// Masses for every invertible residue mod `|G|` and the verdict.
pub fn check_mass_formula(group: &PermGroup, c: &TameCountingFunction) -> Result<FormulaReport> {
    mass_report(group, c, None, Stratification::Total)
}

/// Report for the selected residue (or all of them when `residue` is
/// `None`), optionally broken down by `by`. The verdict always covers every
/// invertible residue.
pub fn mass_report(
    group: &PermGroup,
    c: &TameCountingFunction,
    residue: Option<u64>,
    by: Stratification,
) -> Result<FormulaReport> {
    let modulus = group.order() as u64;
    let selected = match residue {
        Some(a) => vec![check_residue(a, modulus)?],
        None => invertible_residues(modulus),
    };
    let totals = masses_by_residue(group, c)?;
    let formula_exists = totals.windows(2).all(|w| w[0].1 == w[1].1);
    let polynomial = formula_exists.then(|| totals[0].1.clone());

    let strata = match by {
        Stratification::Total => vec![Vec::new(); selected.len()],
        Stratification::Type => strata(group, &selected, |a| mass_by_type(group, c, a))?,
        Stratification::WreathType => {
            strata(group, &selected, |a| mass_by_wreath_type(group, c, a))?
        }
        Stratification::ProductType => {
            strata(group, &selected, |a| mass_by_product_type(group, c, a))?
        }
        Stratification::Image => strata(group, &selected, |a| mass_by_image(group, c, a))?,
    };
    let totals: HashMap<u64, MassPoly> = totals.into_iter().collect();
    let results = selected
        .iter()
        .zip(strata)
        .map(|(a, strata)| ResidueResult {
            residue: *a,
            total: totals[a].clone(),
            strata,
        })
        .collect();

    let warnings = match &polynomial {
        Some(p) => wild_exclusions(group, c, p),
        None => Vec::new(),
    };
    Ok(FormulaReport {
        group: GroupInfo::of(group),
        counting: c.name().to_string(),
        modulus,
        results,
        formula_exists,
        polynomial,
        warnings,
    })
}

/// Per selected residue, strata over the union of keys seen at any
/// invertible residue, so a key with zero mass at one residue still shows.
fn strata<K, F>(group: &PermGroup, selected: &[u64], compute: F) -> Result<Vec<Vec<Stratum>>>
where
    K: Ord + Display,
    F: Fn(u64) -> Result<BTreeMap<K, MassPoly>>,
{
    let exp = exponent(group);
    let mut by_class: BTreeMap<u64, BTreeMap<K, MassPoly>> = BTreeMap::new();
    for a in invertible_residues(group.order() as u64) {
        if let std::collections::btree_map::Entry::Vacant(slot) = by_class.entry(a % exp) {
            slot.insert(compute(a)?);
        }
    }
    let keys: BTreeSet<&K> = by_class.values().flat_map(|m| m.keys()).collect();
    Ok(selected
        .iter()
        .map(|a| {
            let masses = &by_class[&(a % exp)];
            keys.iter()
                .map(|k| Stratum {
                    key: k.to_string(),
                    coeffs: masses.get(*k).cloned().unwrap_or_default(),
                })
                .collect()
        })
        .collect())
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Same permutation action up to relabeling the points.
fn same_action(a: &PermGroup, b: &PermGroup) -> bool {
    if a.degree() != b.degree() || a.order() != b.order() || a.degree() > 8 {
        return false;
    }
    let Ok(sym) = PermGroup::symmetric(a.degree(), Limits::new(usize::MAX)) else {
        return false;
    };
    conjugators_into(a, b, &sym).is_ok_and(|j| j > 0)
}

fn wild_exclusions(
    group: &PermGroup,
    c: &TameCountingFunction,
    poly: &MassPoly,
) -> Vec<WildExclusion> {
    let order = group.order() as u64;
    prime_divisors(order)
        .into_iter()
        .map(|p| {
            let tame = poly
                .eval(&Rational::new(1, p as i128))
                .expect("coefficients fit in i128");
            let known = known_wild_masses().into_iter().find(|w| {
                w.q == p
                    && w.counting.to_string() == c.name()
                    && catalog_entry(w.group)
                        .and_then(|e| build_group(&e.expr, Limits::default()).ok())
                        .is_some_and(|g| same_action(group, &g))
            });
            let mut message = format!(
                "q = {p} divides |G| = {order}: wild, the tame polynomial's value {tame} at x = 1/{p} is not a mass"
            );
            if let Some(w) = &known {
                message.push_str(&format!("; the actual mass over Q_{p} is {}", w.value));
            }
            WildExclusion {
                prime: p,
                tame_value: tame.to_string(),
                known_wild_value: known.map(|w| w.value.to_string()),
                message,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{build_counting, perm_conductor};
    use crate::expr::{parse_counting, parse_group};

    fn group(text: &str) -> PermGroup {
        build_group(&parse_group(text).unwrap(), Limits::default()).unwrap()
    }

    #[test]
    fn s4_formula() {
        let s4 = group("S4");
        let r = check_mass_formula(&s4, &perm_conductor(&s4)).unwrap();
        assert!(r.formula_exists);
        assert_eq!(r.polynomial, Some(MassPoly::new(vec![24, 24, 48, 24])));
        assert_eq!(r.residues().collect::<Vec<_>>(), invertible_residues(24));
    }

    #[test]
    fn c3_has_no_formula() {
        let c3 = group("custom(3; (1 2 3))");
        let r = check_mass_formula(&c3, &perm_conductor(&c3)).unwrap();
        assert!(!r.formula_exists);
        assert_eq!(r.polynomial, None);
        assert_eq!(r.total(1), Some(&MassPoly::new(vec![3, 0, 6])));
        assert_eq!(r.total(2), Some(&MassPoly::new(vec![3])));
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn d4_wild_warning() {
        let d4 = group("wr(S2,S2)");
        let r = check_mass_formula(&d4, &perm_conductor(&d4)).unwrap();
        assert_eq!(r.warnings.len(), 1);
        let w = &r.warnings[0];
        assert_eq!((w.prime, w.tame_value.as_str()), (2, "17"));
        assert_eq!(w.known_wild_value.as_deref(), Some("121/8"));

        let c = build_counting(&parse_counting("wreath(perm,perm)").unwrap(), &d4).unwrap();
        let r = check_mass_formula(&d4, &c).unwrap();
        assert_eq!(r.warnings[0].tame_value, "20");
        assert_eq!(r.warnings[0].known_wild_value, None);
    }

    #[test]
    fn strata_keep_zero_keys() {
        let g18 = group("custom(6; (1 2 3), (4 5 6), (2 3)(5 6))");
        let c = perm_conductor(&g18);
        let key = |r: &FormulaReport| {
            r.results[0]
                .strata
                .iter()
                .find(|s| s.key == "1^3 2^1 1^1")
                .unwrap()
                .coeffs
                .clone()
        };
        let r2 = mass_report(&g18, &c, Some(5), Stratification::Type).unwrap();
        assert_eq!(key(&r2), MassPoly::new(vec![0, 0, 36]));
        let r1 = mass_report(&g18, &c, Some(1), Stratification::Type).unwrap();
        assert!(key(&r1).is_zero());
        assert!(r1.formula_exists);
        for r in [&r1, &r2] {
            let sum: MassPoly = r.results[0].strata.iter().map(|s| s.coeffs.clone()).sum();
            assert_eq!(sum, r.results[0].total);
        }
    }

    #[test]
    fn residue_is_reduced_and_checked() {
        let s3 = group("S3");
        let r = mass_report(&s3, &perm_conductor(&s3), Some(7), Stratification::Total).unwrap();
        assert_eq!(r.residues().collect::<Vec<_>>(), vec![1]);
        assert!(mass_report(&s3, &perm_conductor(&s3), Some(4), Stratification::Total).is_err());
    }

    #[test]
    fn prime_divisors_small() {
        assert_eq!(prime_divisors(384), vec![2, 3]);
        assert_eq!(prime_divisors(18), vec![2, 3]);
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
    }
}
