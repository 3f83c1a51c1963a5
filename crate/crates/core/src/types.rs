//! Ramification types of tame pairs.
//!
//! A tame pair `(g, h)` (inertia generator, Frobenius lift, with
//! `h g h⁻¹ ∈ ⟨g⟩`) splits the points into orbits of `⟨g, h⟩`; each such
//! orbit breaks into `f` orbits of `⟨g⟩` of common size `e`. The type is the
//! multiset of these `f^e` terms.
//!
//! Canonical order is descending by `(e·f, e, f)`, e.g. `1^3 2^1 1^1`.
//! Wreath types nest the component type in parentheses: `1^2(1^2)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{cycle_product_of, orbit_labels, split_wreath, PermGroup};
use crate::perm::Permutation;

/// One `f^e` term: an orbit splitting into `f` inertia orbits of size `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TypeTerm {
    pub e: usize,
    pub f: usize,
}

impl TypeTerm {
    pub fn new(e: usize, f: usize) -> Self {
        TypeTerm { e, f }
    }

    fn key(&self) -> (usize, usize, usize) {
        (self.e * self.f, self.e, self.f)
    }
}

impl Ord for TypeTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for TypeTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TypeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.f, self.e)
    }
}

/// Multiset of `f^e` terms, stored with multiplicities in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RamType {
    terms: Vec<(TypeTerm, usize)>,
}

impl RamType {
    pub fn from_terms(terms: impl IntoIterator<Item = TypeTerm>) -> Self {
        let mut counts: BTreeMap<TypeTerm, usize> = BTreeMap::new();
        for t in terms {
            *counts.entry(t).or_default() += 1;
        }
        RamType {
            terms: counts.into_iter().rev().collect(),
        }
    }

    /// Distinct terms with multiplicities, canonical order.
    pub fn terms(&self) -> &[(TypeTerm, usize)] {
        &self.terms
    }

    /// Terms repeated by multiplicity.
    pub fn expanded(&self) -> impl Iterator<Item = TypeTerm> + '_ {
        self.terms
            .iter()
            .flat_map(|&(t, m)| std::iter::repeat_n(t, m))
    }

    /// Number of orbits (`r`).
    pub fn orbit_count(&self) -> usize {
        self.terms.iter().map(|(_, m)| m).sum()
    }

    /// Σ e·f over all terms.
    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(t, m)| t.e * t.f * m).sum()
    }
}

impl fmt::Display for RamType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.expanded().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for RamType {
    type Err = Error;

    /// Parses space-separated `f^e` terms in any order.
    fn from_str(s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (pos, tok) in s.split_whitespace().enumerate() {
            let bad = || Error::Parse {
                pos,
                msg: format!("`{tok}` is not an `f^e` term"),
            };
            let (f, e) = tok.split_once('^').ok_or_else(bad)?;
            let f: usize = f.parse().map_err(|_| bad())?;
            let e: usize = e.parse().map_err(|_| bad())?;
            if e == 0 || f == 0 {
                return Err(bad());
            }
            terms.push(TypeTerm::new(e, f));
        }
        Ok(RamType::from_terms(terms))
    }
}

impl Serialize for RamType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A base term `f^e` carrying the type of the component representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathTerm {
    pub term: TypeTerm,
    pub sub: RamType,
}

impl Ord for WreathTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.term
            .cmp(&other.term)
            .then_with(|| self.sub.cmp(&other.sub))
    }
}

impl PartialOrd for WreathTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WreathTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.term, self.sub)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WreathType {
    terms: Vec<(WreathTerm, usize)>,
}

impl WreathType {
    pub fn from_terms(terms: impl IntoIterator<Item = WreathTerm>) -> Self {
        let mut counts: BTreeMap<WreathTerm, usize> = BTreeMap::new();
        for t in terms {
            *counts.entry(t).or_default() += 1;
        }
        WreathType {
            terms: counts.into_iter().rev().collect(),
        }
    }

    pub fn terms(&self) -> &[(WreathTerm, usize)] {
        &self.terms
    }

    pub fn expanded(&self) -> impl Iterator<Item = &WreathTerm> + '_ {
        self.terms
            .iter()
            .flat_map(|(t, m)| std::iter::repeat_n(t, *m))
    }

    /// Type of the block action.
    pub fn base(&self) -> RamType {
        RamType::from_terms(self.expanded().map(|t| t.term))
    }

    /// Composed type: each `f_i^{e_i}(σ_i)` with `σ_i ∋ f^e` contributes
    /// `(f_i f)^{e_i e}`.
    pub fn flatten(&self) -> RamType {
        RamType::from_terms(self.expanded().flat_map(|t| {
            t.sub
                .expanded()
                .map(move |s| TypeTerm::new(t.term.e * s.e, t.term.f * s.f))
                .collect::<Vec<_>>()
        }))
    }
}

impl fmt::Display for WreathType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.expanded().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl Serialize for WreathType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn flatten_wreath_type(t: &WreathType) -> RamType {
    t.flatten()
}

/// True if `h g h⁻¹` is a power of `g`.
pub fn is_tame_pair(g: &Permutation, h: &Permutation) -> bool {
    let target = g.conjugate_by(h);
    let mut p = Permutation::identity(g.degree());
    for _ in 0..g.order() {
        if p == target {
            return true;
        }
        p = p.compose_unchecked(g);
    }
    false
}

fn check_pair(group: &PermGroup, g: &Permutation, h: &Permutation) -> Result<()> {
    group.index_of(g)?;
    group.index_of(h)?;
    if !is_tame_pair(g, h) {
        return Err(Error::InvalidPair {
            g: g.to_string(),
            h: h.to_string(),
        });
    }
    Ok(())
}

pub fn ram_type_of_pair(group: &PermGroup, g: &Permutation, h: &Permutation) -> Result<RamType> {
    check_pair(group, g, h)?;
    Ok(pair_type(g, h))
}

/// Type of a pair already known to be tame.
pub(crate) fn pair_type(g: &Permutation, h: &Permutation) -> RamType {
    let n = g.degree();
    let labels = orbit_labels(&[g.clone(), h.clone()], n);
    let lens = g.cycle_lengths();
    let mut sizes = vec![0usize; n];
    for &root in &labels {
        sizes[root] += 1;
    }
    RamType::from_terms((0..n).filter(|&x| labels[x] == x).map(|root| {
        let e = lens[root];
        TypeTerm::new(e, sizes[root] / e)
    }))
}

pub fn wreath_type_of_pair(
    wreath: &PermGroup,
    g: &Permutation,
    h: &Permutation,
) -> Result<WreathType> {
    check_pair(wreath, g, h)?;
    let (inner, outer) = wreath.wreath_factors()?;
    Ok(pair_wreath_type(g, h, inner.degree(), outer.degree()))
}

/// Wreath type of a tame pair in a wreath product with `da`-point inner and
/// `db`-point outer factor.
///
/// For each canonical block-orbit representative `i`, the component type is
/// read off copy `i`: the `⟨g, h⟩`-orbits meeting copy `i` cut it into the
/// orbits of the block stabilizer, and the inertia orbits inside copy `i` are
/// those of the cycle product of `g` at `i`.
pub(crate) fn pair_wreath_type(
    g: &Permutation,
    h: &Permutation,
    da: usize,
    db: usize,
) -> WreathType {
    let (gb, g_comps) = split_wreath(g, da, db);
    let (hb, _) = split_wreath(h, da, db);
    let block_labels = orbit_labels(&[gb.clone(), hb], db);
    let block_lens = gb.cycle_lengths();
    let mut block_sizes = vec![0usize; db];
    for &root in &block_labels {
        block_sizes[root] += 1;
    }
    let point_labels = orbit_labels(&[g.clone(), h.clone()], da * db);
    let terms = (0..db).filter(|&i| block_labels[i] == i).map(|i| {
        let e_i = block_lens[i];
        let f_i = block_sizes[i] / e_i;
        let cp = cycle_product_of(&gb, &g_comps, i);
        let cp_lens = cp.cycle_lengths();
        let mut sizes: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for x in 0..da {
            let entry = sizes.entry(point_labels[i * da + x]).or_insert((x, 0));
            entry.1 += 1;
        }
        let sub = RamType::from_terms(sizes.values().map(|&(first, size)| {
            let e = cp_lens[first];
            TypeTerm::new(e, size / e)
        }));
        WreathTerm {
            term: TypeTerm::new(e_i, f_i),
            sub,
        }
    });
    WreathType::from_terms(terms.collect::<Vec<_>>())
}
