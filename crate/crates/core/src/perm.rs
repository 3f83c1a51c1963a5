//! Permutations of `{0, .., degree - 1}`.
//!
//! Composition follows function notation: `p.compose(&q)` maps `i` to
//! `p(q(i))`. The [`Display`](std::fmt::Display) form is 1-based cycle
//! notation, the same notation accepted by the `custom(...)` group syntax.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation from 0-based disjoint or overlapping cycles.
    ///
    /// Cycles are applied right to left, so `[[0, 1], [1, 2]]` is `(0 1)(1 2)`.
    pub fn from_cycles<C: AsRef<[usize]>>(degree: usize, cycles: &[C]) -> Result<Self> {
        let mut result = Permutation::identity(degree);
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        for cycle in cycles.iter().rev() {
            let cycle = cycle.as_ref();
            let mut images: Vec<usize> = (0..degree).collect();
            let mut seen = vec![false; degree];
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} out of range for degree {degree}",
                        x + 1
                    )));
                }
                if seen[x] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} repeated within a cycle",
                        x + 1
                    )));
                }
                seen[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
            let c = Permutation {
                images: images.into_iter().map(|x| x as u32).collect(),
            };
            result = c.compose_unchecked(&result);
        }
        Ok(result)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let order = self.order() as i64;
        let e = exp.rem_euclid(order);
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        result
    }

    /// `x ∘ self ∘ x⁻¹`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for i in 0..self.degree() {
            images[x.images[i] as usize] = x.images[self.images[i] as usize];
        }
        Permutation { images }
    }

    /// True when `h ∘ self ∘ h⁻¹ == target`, checked pointwise without allocating.
    #[inline]
    pub(crate) fn conjugates_to(&self, h: &Permutation, target: &Permutation) -> bool {
        (0..self.degree())
            .all(|x| h.images[self.images[x] as usize] == target.images[h.images[x] as usize])
    }

    /// All cycles including fixed points, each starting at its smallest point,
    /// listed by increasing first point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Number of orbits of the cyclic group generated by `self`.
    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Length of the cycle through every point.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut lens = vec![0; self.degree()];
        for cycle in self.cycles() {
            for &x in &cycle {
                lens[x] = cycle.len();
            }
        }
        lens
    }

    /// Order of the element: lcm of its cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    /// The permutation acting on `offset..offset + self.degree()` inside a
    /// larger set of `degree` points, fixing everything else.
    pub(crate) fn embed(&self, offset: usize, degree: usize) -> Permutation {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + x;
        }
        Permutation { images }
    }

    /// Restriction to `offset..offset + len`, which must be an invariant range.
    pub(crate) fn restrict(&self, offset: usize, len: usize) -> Permutation {
        Permutation {
            images: self.images[offset..offset + len]
                .iter()
                .map(|&x| x - offset as u32)
                .collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            write!(f, "(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn compose_identity() {
        let p = cyc(4, &[&[0, 2, 1]]);
        assert_eq!(Permutation::identity(4).compose(&p).unwrap(), p);
    }

    #[test]
    fn transposition_is_involution() {
        let s = cyc(2, &[&[0, 1]]);
        assert!(s.compose(&s).unwrap().is_identity());
    }

    #[test]
    fn four_cycle_squared() {
        let c = cyc(4, &[&[0, 1, 2, 3]]);
        // images of c: 0->1->2->3->0, so c∘c sends i to i+2
        assert_eq!(c.compose(&c).unwrap(), cyc(4, &[&[0, 2], &[1, 3]]));
    }

    #[test]
    fn degree_mismatch() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert_eq!(
            a.compose(&b),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_images(vec![]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 3]]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 1, 0]]).is_err());
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(cyc(5, &[&[0, 1, 2], &[3, 4]]).to_string(), "(1 2 3)(4 5)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn cycles_apply_right_to_left() {
        // (0 1)(1 2): 1 -> 2 -> 2, 2 -> 1 -> 0, 0 -> 0 -> 1
        let p = cyc(3, &[&[0, 1], &[1, 2]]);
        assert_eq!(p.images().collect::<Vec<_>>(), vec![1, 2, 0]);
    }

    #[test]
    fn order_is_lcm() {
        assert_eq!(cyc(5, &[&[0, 1, 2], &[3, 4]]).order(), 6);
        assert_eq!(Permutation::identity(5).order(), 1);
    }

    fn arb_perm(max: usize) -> impl Strategy<Value = Permutation> {
        (1..=max).prop_flat_map(|n| {
            Just((0..n).collect::<Vec<usize>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_images(v).unwrap())
        })
    }

    proptest! {
        #[test]
        fn inverse_cancels(p in arb_perm(9)) {
            prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
            prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
        }

        #[test]
        fn conjugation_matches_composition(p in arb_perm(7), seed in any::<u64>()) {
            let n = p.degree();
            let mut v: Vec<usize> = (0..n).collect();
            v.rotate_left((seed as usize) % n);
            let x = Permutation::from_images(v).unwrap();
            let direct = x.compose(&p).unwrap().compose(&x.inverse()).unwrap();
            prop_assert_eq!(p.conjugate_by(&x), direct.clone());
            prop_assert!(p.conjugates_to(&x, &direct));
        }

        #[test]
        fn pow_respects_order(p in arb_perm(8), k in -20i64..20) {
            let ord = p.order() as i64;
            prop_assert!(p.pow(ord).is_identity());
            prop_assert_eq!(p.pow(k).compose(&p.pow(-k)).unwrap(), Permutation::identity(p.degree()));
        }
    }
}
