//! Tame counting functions.
//!
//! A tame representation is determined by its inertia generator `g` and a
//! Frobenius lift; every counting function here depends on `g` alone. Values
//! are tabulated once per element of the host group.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{describe, CountingExpr, GroupExpr};
use crate::group::{cycle_product_of, split_wreath, PermGroup};
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct TameCountingFunction {
    name: String,
    group: PermGroup,
    values: Vec<u32>,
}

/// Per-class view of a counting function, for reports.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClassValue {
    pub representative: String,
    pub size: usize,
    pub value: u32,
}

impl TameCountingFunction {
    fn tabulate(name: String, group: &PermGroup, f: impl Fn(&Permutation) -> u32) -> Self {
        let values = group.elements().iter().map(f).collect();
        TameCountingFunction {
            name,
            group: group.clone(),
            values,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn value(&self, g: &Permutation) -> Result<u32> {
        Ok(self.values[self.group.index_of(g)?])
    }

    pub(crate) fn value_at(&self, idx: usize) -> u32 {
        self.values[idx]
    }

    /// Value on each conjugacy class, in class order.
    pub fn class_table(&self) -> Vec<ClassValue> {
        self.group
            .classes()
            .iter()
            .map(|c| ClassValue {
                representative: self.group.elements()[c.representative].to_string(),
                size: c.size,
                value: self.values[c.representative],
            })
            .collect()
    }

    /// True if the tabulated values are constant on every conjugacy class.
    pub fn is_class_function(&self) -> bool {
        self.group.classes().iter().all(|c| {
            let v = self.values[c.representative];
            c.members.iter().all(|&m| self.values[m] == v)
        })
    }

    /// True if `value(g) = value(g^k)` whenever `k` is prime to the order of `g`.
    pub fn is_power_invariant(&self) -> bool {
        self.group.elements().iter().enumerate().all(|(i, g)| {
            let n = g.order();
            (1..n).filter(|&k| num_integer::gcd(k, n) == 1).all(|k| {
                let p = g.pow(k as i64);
                self.values[self.group.index_of(&p).expect("closed under powers")] == self.values[i]
            })
        })
    }
}

/// Degree minus the number of orbits of `⟨g⟩`: the tame discriminant exponent.
pub fn perm_conductor(group: &PermGroup) -> TameCountingFunction {
    let n = group.degree() as u32;
    TameCountingFunction::tabulate("perm".into(), group, |g| n - g.cycle_count() as u32)
}

pub fn zero_conductor(group: &PermGroup) -> TameCountingFunction {
    TameCountingFunction::tabulate("zero".into(), group, |_| 0)
}

/// Counting function on `A ≀ B` built from ones on the factors:
/// `c(g) = c_B(b) + Σ c_A(cycle product)` over the cycles of `b`, each cycle
/// evaluated at its smallest block.
pub fn wreath_compose(
    c_inner: &TameCountingFunction,
    c_outer: &TameCountingFunction,
    wreath: &PermGroup,
) -> Result<TameCountingFunction> {
    let (inner, outer) = wreath.wreath_factors()?;
    if inner != &c_inner.group || outer != &c_outer.group {
        return Err(Error::StructureMismatch(
            "counting functions are not defined on the wreath factors".into(),
        ));
    }
    let (da, db) = (inner.degree(), outer.degree());
    let name = format!("wreath({},{})", c_inner.name, c_outer.name);
    Ok(TameCountingFunction::tabulate(name, wreath, |g| {
        let (b, comps) = split_wreath(g, da, db);
        let base = c_outer
            .value(&b)
            .expect("block action lies in the outer factor");
        b.cycles()
            .iter()
            .map(|cycle| {
                let cp = cycle_product_of(&b, &comps, cycle[0]);
                c_inner
                    .value(&cp)
                    .expect("cycle product lies in the inner factor")
            })
            .sum::<u32>()
            + base
    }))
}

/// `c''(g, g′) = c(g) + c′(g′)` on a direct product.
pub fn sum_compose(
    c_left: &TameCountingFunction,
    c_right: &TameCountingFunction,
    product: &PermGroup,
) -> Result<TameCountingFunction> {
    let (left, right) = product.product_factors()?;
    if left != &c_left.group || right != &c_right.group {
        return Err(Error::StructureMismatch(
            "counting functions are not defined on the product factors".into(),
        ));
    }
    let dl = left.degree();
    let dr = right.degree();
    let name = format!("sum({},{})", c_left.name, c_right.name);
    Ok(TameCountingFunction::tabulate(name, product, |g| {
        c_left.value(&g.restrict(0, dl)).expect("left factor")
            + c_right.value(&g.restrict(dl, dr)).expect("right factor")
    }))
}

/// Tame Artin conductor of the signed permutation representation of
/// `S₂ ≀ B`: the number of blocks minus the number of block cycles whose
/// cycle product is trivial.
pub fn signed_conductor(wreath: &PermGroup) -> Result<TameCountingFunction> {
    let (inner, outer) = wreath.wreath_factors()?;
    if inner.degree() != 2 || inner.order() != 2 {
        return Err(Error::StructureMismatch(
            "signed conductor needs S2 as the inner wreath factor".into(),
        ));
    }
    let db = outer.degree();
    Ok(TameCountingFunction::tabulate(
        "signed".into(),
        wreath,
        |g| {
            let (b, comps) = split_wreath(g, 2, db);
            let trivial = b
                .cycles()
                .iter()
                .filter(|cycle| cycle_product_of(&b, &comps, cycle[0]).is_identity())
                .count();
            (db - trivial) as u32
        },
    ))
}

/// Builds the counting function described by `c` on `group`, recursing
/// through the group's construction.
pub fn build_counting(c: &CountingExpr, group: &PermGroup) -> Result<TameCountingFunction> {
    let incompatible = || Error::Incompatible {
        group: describe(group).to_string(),
        counting: c.to_string(),
    };
    match c {
        CountingExpr::Perm => Ok(perm_conductor(group)),
        CountingExpr::Zero => Ok(zero_conductor(group)),
        CountingExpr::Signed => {
            let (inner, _) = group.wreath_factors().map_err(|_| incompatible())?;
            if describe(inner) != GroupExpr::Sym(2) {
                return Err(incompatible());
            }
            signed_conductor(group)
        }
        CountingExpr::Wreath(ca, cb) => {
            let (inner, outer) = group.wreath_factors().map_err(|_| incompatible())?;
            let ca = build_counting(ca, inner)?;
            let cb = build_counting(cb, outer)?;
            wreath_compose(&ca, &cb, group)
        }
        CountingExpr::Sum(ca, cb) => {
            let (left, right) = group.product_factors().map_err(|_| incompatible())?;
            let ca = build_counting(ca, left)?;
            let cb = build_counting(cb, right)?;
            sum_compose(&ca, &cb, group)
        }
    }
}
