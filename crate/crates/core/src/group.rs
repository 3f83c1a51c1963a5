//! Finite permutation groups with fully enumerated elements.
//!
//! Groups are small enough to list explicitly (see [`Limits`]); conjugacy
//! classes are computed once at construction as orbits of the conjugation
//! action of the generators. A [`PermGroup`] is a cheap handle around shared
//! immutable data, so cloning it is free.
//!
//! Wreath products use a block-major layout: in `A ≀ B`, point `j * |𝓐| + a`
//! is point `a` of the `j`-th copy of `𝓐`. The element `(b; (a_j))` sends
//! `(j, a)` to `(b(j), a_j(a))`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on the order of any group built by the library.
pub const DEFAULT_MAX_ORDER: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl Limits {
    pub fn new(max_order: usize) -> Self {
        Limits { max_order }
    }

    fn check(&self, order: u128) -> Result<()> {
        if order > self.max_order as u128 {
            Err(Error::OrderCapExceeded {
                order,
                cap: self.max_order,
            })
        } else {
            Ok(())
        }
    }
}

/// How a group was built.
#[derive(Clone, Debug)]
pub enum Structure {
    Generated,
    Symmetric(usize),
    Custom(Option<String>),
    Wreath { inner: PermGroup, outer: PermGroup },
    Product { left: PermGroup, right: PermGroup },
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    /// Index of the representative in the element list (smallest member index).
    pub representative: usize,
    pub size: usize,
    /// Sorted element indices.
    pub members: Vec<usize>,
}

struct GroupData {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    class_of: Vec<usize>,
    classes: Vec<ConjClass>,
    structure: Structure,
}

#[derive(Clone)]
pub struct PermGroup(Arc<GroupData>);

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree())
            .field("order", &self.order())
            .field("generators", &self.0.generators)
            .finish()
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        self.degree() == other.degree()
            && self.order() == other.order()
            && self.elements().iter().all(|g| other.contains(g))
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    /// Closure of `generators` by breadth-first products.
    pub fn generate(degree: usize, generators: Vec<Permutation>, limits: Limits) -> Result<Self> {
        Self::generate_with(degree, generators, Structure::Generated, limits)
    }

    pub(crate) fn generate_with(
        degree: usize,
        generators: Vec<Permutation>,
        structure: Structure,
        limits: Limits,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in &generators {
                let p = elements[i].compose_unchecked(s);
                if !index.contains_key(&p) {
                    limits.check(elements.len() as u128 + 1)?;
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        Ok(Self::assemble(
            degree, generators, elements, index, structure,
        ))
    }

    fn assemble(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
        index: HashMap<Permutation, usize>,
        structure: Structure,
    ) -> Self {
        let (class_of, classes) = compute_classes(&generators, &elements, &index);
        PermGroup(Arc::new(GroupData {
            degree,
            generators,
            elements,
            index,
            class_of,
            classes,
            structure,
        }))
    }

    /// `S_n` in its natural action on `n` points.
    pub fn symmetric(n: usize, limits: Limits) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPermutation("S_0 is not supported".into()));
        }
        let order = (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k));
        limits.check(order.unwrap_or(u128::MAX))?;
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[[0, 1]])?);
        }
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[(0..n).collect::<Vec<_>>()])?);
        }
        Self::generate_with(n, gens, Structure::Symmetric(n), limits)
    }

    /// Group generated by 0-based cycle lists, tagged as a custom group.
    pub fn custom(
        degree: usize,
        generators: Vec<Permutation>,
        name: Option<String>,
        limits: Limits,
    ) -> Result<Self> {
        Self::generate_with(degree, generators, Structure::Custom(name), limits)
    }

    /// `A ≀ B` acting on `|𝓑|` copies of `𝓐`, elements listed explicitly.
    pub fn wreath(inner: &PermGroup, outer: &PermGroup, limits: Limits) -> Result<Self> {
        let da = inner.degree();
        let db = outer.degree();
        let order = (inner.order() as u128)
            .checked_pow(db as u32)
            .and_then(|x| x.checked_mul(outer.order() as u128))
            .unwrap_or(u128::MAX);
        limits.check(order)?;
        let degree = da * db;
        let a_elems = inner.elements();
        let mut elements = Vec::with_capacity(order as usize);
        let mut index = HashMap::with_capacity(order as usize);
        let mut digits = vec![0usize; db];
        for b in outer.elements() {
            digits.iter_mut().for_each(|d| *d = 0);
            loop {
                let mut images = vec![0usize; degree];
                for j in 0..db {
                    let a = &a_elems[digits[j]];
                    let target = b.apply(j) * da;
                    for x in 0..da {
                        images[j * da + x] = target + a.apply(x);
                    }
                }
                let p = Permutation::from_images(images)?;
                index.insert(p.clone(), elements.len());
                elements.push(p);
                // mixed-radix increment over A^{|𝓑|}
                let mut k = 0;
                while k < db {
                    digits[k] += 1;
                    if digits[k] < a_elems.len() {
                        break;
                    }
                    digits[k] = 0;
                    k += 1;
                }
                if k == db {
                    break;
                }
            }
        }
        let mut gens = Vec::new();
        for j in 0..db {
            for a in inner.generators() {
                gens.push(a.embed(j * da, degree));
            }
        }
        for b in outer.generators() {
            let mut images = vec![0usize; degree];
            for j in 0..db {
                for x in 0..da {
                    images[j * da + x] = b.apply(j) * da + x;
                }
            }
            gens.push(Permutation::from_images(images)?);
        }
        Ok(Self::assemble(
            degree,
            gens,
            elements,
            index,
            Structure::Wreath {
                inner: inner.clone(),
                outer: outer.clone(),
            },
        ))
    }

    /// `Γ × Γ′` acting on the disjoint union, left factor on the first points.
    pub fn direct_product(left: &PermGroup, right: &PermGroup, limits: Limits) -> Result<Self> {
        let order = (left.order() as u128) * (right.order() as u128);
        limits.check(order)?;
        let (dl, dr) = (left.degree(), right.degree());
        let degree = dl + dr;
        let mut elements = Vec::with_capacity(order as usize);
        let mut index = HashMap::with_capacity(order as usize);
        for g in left.elements() {
            for h in right.elements() {
                let images = g
                    .images()
                    .chain(h.images().map(|x| x + dl))
                    .collect::<Vec<_>>();
                let p = Permutation::from_images(images)?;
                index.insert(p.clone(), elements.len());
                elements.push(p);
            }
        }
        let gens = left
            .generators()
            .iter()
            .map(|g| g.embed(0, degree))
            .chain(right.generators().iter().map(|h| h.embed(dl, degree)))
            .collect();
        Ok(Self::assemble(
            degree,
            gens,
            elements,
            index,
            Structure::Product {
                left: left.clone(),
                right: right.clone(),
            },
        ))
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn order(&self) -> usize {
        self.0.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.0.generators
    }

    /// All elements; index 0 is the identity.
    pub fn elements(&self) -> &[Permutation] {
        &self.0.elements
    }

    pub fn identity(&self) -> &Permutation {
        &self.0.elements[0]
    }

    pub fn structure(&self) -> &Structure {
        &self.0.structure
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.0.classes
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.0.index.contains_key(g)
    }

    pub fn index_of(&self, g: &Permutation) -> Result<usize> {
        self.0
            .index
            .get(g)
            .copied()
            .ok_or_else(|| Error::NotInGroup(g.to_string()))
    }

    pub fn class_index(&self, g: &Permutation) -> Result<usize> {
        Ok(self.0.class_of[self.index_of(g)?])
    }

    pub fn is_conjugate(&self, g: &Permutation, h: &Permutation) -> Result<bool> {
        Ok(self.class_index(g)? == self.class_index(h)?)
    }

    /// Centralizer order by direct count over the element list.
    pub fn centralizer_order(&self, g: &Permutation) -> Result<usize> {
        self.index_of(g)?;
        Ok(self
            .elements()
            .iter()
            .filter(|x| g.conjugates_to(x, g))
            .count())
    }

    pub(crate) fn centralizer(&self, g: &Permutation) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| g.conjugates_to(&self.0.elements[i], g))
            .collect()
    }

    /// Orbits of the whole group on points.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits(self.generators(), self.degree())
    }

    /// Factors of a wreath product, or a structure error.
    pub fn wreath_factors(&self) -> Result<(&PermGroup, &PermGroup)> {
        match self.structure() {
            Structure::Wreath { inner, outer } => Ok((inner, outer)),
            _ => Err(Error::StructureMismatch(
                "group was not built as a wreath product".into(),
            )),
        }
    }

    pub fn product_factors(&self) -> Result<(&PermGroup, &PermGroup)> {
        match self.structure() {
            Structure::Product { left, right } => Ok((left, right)),
            _ => Err(Error::StructureMismatch(
                "group was not built as a direct product".into(),
            )),
        }
    }

    /// Splits `g = (b; (a_j))` in a wreath product into its block
    /// permutation and the component acting on each copy.
    pub fn wreath_decompose(&self, g: &Permutation) -> Result<(Permutation, Vec<Permutation>)> {
        let (inner, outer) = self.wreath_factors()?;
        self.index_of(g)?;
        Ok(split_wreath(g, inner.degree(), outer.degree()))
    }

    /// Splits an element of a direct product into its two factors.
    pub fn product_decompose(&self, g: &Permutation) -> Result<(Permutation, Permutation)> {
        let (left, right) = self.product_factors()?;
        self.index_of(g)?;
        let dl = left.degree();
        Ok((g.restrict(0, dl), g.restrict(dl, right.degree())))
    }

    /// Product of the components of `g` along the block cycle through `j`:
    /// `a_{b^{e-1}(j)} ⋯ a_{b(j)} a_j`, the component of `g^e` on copy `j`.
    pub fn cycle_product(&self, g: &Permutation, j: usize) -> Result<Permutation> {
        let (b, comps) = self.wreath_decompose(g)?;
        if j >= b.degree() {
            return Err(Error::InvalidPermutation(format!(
                "block {j} out of range for {} blocks",
                b.degree()
            )));
        }
        Ok(cycle_product_of(&b, &comps, j))
    }
}

pub(crate) fn split_wreath(
    g: &Permutation,
    da: usize,
    db: usize,
) -> (Permutation, Vec<Permutation>) {
    let b_images: Vec<u32> = (0..db).map(|j| (g.apply(j * da) / da) as u32).collect();
    let comps = (0..db)
        .map(|j| {
            let target = (b_images[j] as usize) * da;
            let images = (0..da).map(|x| g.apply(j * da + x) - target).collect();
            Permutation::from_images(images).expect("wreath element preserves blocks")
        })
        .collect();
    let b = Permutation::from_images(b_images.into_iter().map(|x| x as usize).collect())
        .expect("block images form a permutation");
    (b, comps)
}

pub(crate) fn cycle_product_of(b: &Permutation, comps: &[Permutation], j: usize) -> Permutation {
    let mut acc = comps[j].clone();
    let mut k = b.apply(j);
    while k != j {
        acc = comps[k].compose_unchecked(&acc);
        k = b.apply(k);
    }
    acc
}

/// Orbit partition of `{0..degree}` under the group generated by `perms`.
/// Orbits are sorted internally and listed by smallest point.
pub fn orbits(perms: &[Permutation], degree: usize) -> Vec<Vec<usize>> {
    let labels = orbit_labels(perms, degree);
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; degree];
    for (x, &root) in labels.iter().enumerate() {
        if slot[root] == usize::MAX {
            slot[root] = out.len();
            out.push(Vec::new());
        }
        out[slot[root]].push(x);
    }
    out
}

/// For every point, the smallest point of its orbit.
pub(crate) fn orbit_labels(perms: &[Permutation], degree: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for p in perms {
        for x in 0..degree {
            let (a, b) = (find(&mut parent, x), find(&mut parent, p.apply(x)));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    (0..degree).map(|x| find(&mut parent, x)).collect()
}

fn compute_classes(
    generators: &[Permutation],
    elements: &[Permutation],
    index: &HashMap<Permutation, usize>,
) -> (Vec<usize>, Vec<ConjClass>) {
    let mut class_of = vec![usize::MAX; elements.len()];
    let mut classes = Vec::new();
    for start in 0..elements.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[start] = id;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for s in generators {
                let c = elements[i].conjugate_by(s);
                let k = index[&c];
                if class_of[k] == usize::MAX {
                    class_of[k] = id;
                    members.push(k);
                    queue.push_back(k);
                }
            }
        }
        members.sort_unstable();
        classes.push(ConjClass {
            representative: start,
            size: members.len(),
            members,
        });
    }
    (class_of, classes)
}
