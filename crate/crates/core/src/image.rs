//! Masses split by the image subgroup `⟨g, h⟩`, and the ambient counts used
//! to turn representations into isomorphism classes of étale algebras.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::counting::TameCountingFunction;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::mass::{check_residue, PairEnumerator};
use crate::perm::Permutation;
use crate::MassPoly;

/// A subgroup of `G` up to `G`-conjugacy.
///
/// `members` is the lexicographically smallest sorted index set among the
/// conjugates, which makes equality and ordering canonical.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ImageClass {
    pub order: usize,
    members: Vec<usize>,
    pub conjugates: usize,
    pub generators: Vec<Permutation>,
}

impl ImageClass {
    pub fn members<'a>(
        &'a self,
        group: &'a PermGroup,
    ) -> impl Iterator<Item = &'a Permutation> + 'a {
        self.members.iter().map(|&i| &group.elements()[i])
    }
}

impl fmt::Display for ImageClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "order={} conjugates={} <", self.order, self.conjugates)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl Serialize for ImageClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Sorted element indices of the subgroup generated by `gens`.
pub(crate) fn closure(group: &PermGroup, gens: &[usize]) -> Vec<usize> {
    let elements = group.elements();
    let mut seen: HashSet<usize> = HashSet::from([0]);
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        for &s in gens {
            let y = group
                .index_of(&elements[x].compose_unchecked(&elements[s]))
                .expect("group is closed");
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    let mut out: Vec<usize> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

fn conjugate_set(group: &PermGroup, s: &Permutation, set: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = set
        .iter()
        .map(|&i| {
            group
                .index_of(&group.elements()[i].conjugate_by(s))
                .expect("group is closed")
        })
        .collect();
    out.sort_unstable();
    out
}

fn canonical_class(group: &PermGroup, subgroup: &[usize]) -> ImageClass {
    let conjugates: HashSet<Vec<usize>> = group
        .elements()
        .iter()
        .map(|s| conjugate_set(group, s, subgroup))
        .collect();
    let members = conjugates
        .iter()
        .min()
        .expect("at least one conjugate")
        .clone();
    // greedy generating set, scanning members in index order
    let mut generators = Vec::new();
    let mut gen_idx = Vec::new();
    let mut span = vec![0usize];
    for &m in &members {
        if span.binary_search(&m).is_err() {
            gen_idx.push(m);
            generators.push(group.elements()[m].clone());
            span = closure(group, &gen_idx);
        }
    }
    ImageClass {
        order: members.len(),
        members,
        conjugates: conjugates.len(),
        generators,
    }
}

/// Masses keyed by the conjugacy class of the image `⟨g, h⟩`.
pub fn mass_by_image(
    group: &PermGroup,
    c: &TameCountingFunction,
    a: u64,
) -> Result<BTreeMap<ImageClass, MassPoly>> {
    if c.group() != group {
        return Err(Error::StructureMismatch(format!(
            "counting function `{}` is defined on a different group",
            c.name()
        )));
    }
    let a = check_residue(a, group.order() as u64)?;
    let by_subgroup = PairEnumerator::new(group).stratify(c, a, |g, h| {
        let gens = [
            group.index_of(g).expect("representative"),
            group.index_of(h).expect("solution"),
        ];
        closure(group, &gens)
    });
    let mut out: BTreeMap<ImageClass, MassPoly> = BTreeMap::new();
    let mut seen: BTreeMap<Vec<usize>, ImageClass> = BTreeMap::new();
    for (subgroup, mass) in by_subgroup {
        let class = seen
            .entry(subgroup.clone())
            .or_insert_with(|| canonical_class(group, &subgroup))
            .clone();
        let entry = out.entry(class).or_default();
        *entry = &*entry + &mass;
    }
    Ok(out)
}

fn check_subgroup(sub: &PermGroup, ambient: &PermGroup, what: &str) -> Result<()> {
    if sub.degree() != ambient.degree() || !sub.elements().iter().all(|g| ambient.contains(g)) {
        return Err(Error::NotSubgroup(format!(
            "{what} is not contained in the ambient group"
        )));
    }
    Ok(())
}

/// `|{s ∈ S : s I s⁻¹ ⊆ D}|`
pub fn conjugators_into(
    image: &PermGroup,
    target: &PermGroup,
    ambient: &PermGroup,
) -> Result<usize> {
    check_subgroup(image, ambient, "image")?;
    check_subgroup(target, ambient, "target")?;
    Ok(ambient
        .elements()
        .iter()
        .filter(|s| {
            image
                .generators()
                .iter()
                .all(|x| target.contains(&x.conjugate_by(s)))
        })
        .count())
}

/// `|Centralizer_S(I)|`
pub fn ambient_centralizer_order(image: &PermGroup, ambient: &PermGroup) -> Result<usize> {
    check_subgroup(image, ambient, "image")?;
    Ok(ambient
        .elements()
        .iter()
        .filter(|s| image.generators().iter().all(|x| &x.conjugate_by(s) == x))
        .count())
}
