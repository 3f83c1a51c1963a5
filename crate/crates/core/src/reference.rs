//! Reference formulas independent of pair enumeration, and the built-in
//! group catalog.

use crate::expr::{parse_counting, parse_group, CountingExpr, GroupExpr};
use crate::{MassPoly, Rational};

/// Partitions of `k` into at most `m` parts.
pub fn partition_p(k: usize, m: usize) -> u64 {
    // table[j] = partitions of j into parts of size at most `part`
    let mut table = vec![0u64; k + 1];
    table[0] = 1;
    for part in 1..=m.min(k) {
        for j in part..=k {
            table[j] += table[j - part];
        }
    }
    table[k]
}

/// `Σ_{k<n} p(k, n-k) x^k`, unscaled: the total mass of `S_n` divided by `n!`.
pub fn bhargava_rhs(n: usize) -> MassPoly {
    assert!(n >= 1, "degree must be positive");
    MassPoly::new((0..n).map(|k| partition_p(k, n - k)).collect())
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub expr: GroupExpr,
    pub order: usize,
    pub rational: bool,
    /// Total masses known independently of enumeration, valid for every
    /// tame residue.
    pub reference_polys: Vec<(CountingExpr, MassPoly)>,
}

fn entry(
    name: &'static str,
    expr: &str,
    order: usize,
    rational: bool,
    polys: Vec<(&str, MassPoly)>,
) -> CatalogEntry {
    let mut expr = parse_group(expr).expect("catalog expression parses");
    if matches!(expr, GroupExpr::Custom { .. }) {
        expr = expr.with_name(name);
    }
    CatalogEntry {
        name,
        expr,
        order,
        rational,
        reference_polys: polys
            .into_iter()
            .map(|(c, p)| (parse_counting(c).expect("catalog counting parses"), p))
            .collect(),
    }
}

fn sn_total(n: usize) -> MassPoly {
    bhargava_rhs(n).scale(&factorial(n))
}

pub fn catalog() -> Vec<CatalogEntry> {
    let d4_wreath = MassPoly::new(vec![8, 16, 16]);
    let d4_disc = MassPoly::new(vec![8, 8, 16, 8]);
    let mut out: Vec<CatalogEntry> = (2..=5)
        .map(|n| {
            let name: &'static str = ["S2", "S3", "S4", "S5"][n - 2];
            entry(
                name,
                name,
                factorial(n) as usize,
                true,
                vec![("perm", sn_total(n))],
            )
        })
        .collect();
    out.extend([
        entry(
            "D4",
            "wr(S2,S2)",
            8,
            true,
            vec![("wreath(perm,perm)", d4_wreath), ("perm", d4_disc.clone())],
        ),
        entry(
            "D4inS4",
            "custom(4; (1 2 3 4), (1 3))",
            8,
            true,
            vec![("perm", d4_disc)],
        ),
        entry("B3", "wr(S2,S3)", 48, true, vec![]),
        entry("B4", "wr(S2,S4)", 384, true, vec![]),
        entry(
            "G2",
            "x(S2,S3)",
            12,
            true,
            vec![("sum(perm,perm)", &sn_total(2) * &sn_total(3))],
        ),
        entry(
            "S2xS2",
            "x(S2,S2)",
            4,
            true,
            vec![("sum(perm,perm)", sn_total(2).pow(2))],
        ),
        entry("S3wrS2", "wr(S3,S2)", 72, true, vec![]),
        entry("S2wrD4", "wr(S2,wr(S2,S2))", 128, true, vec![]),
        entry(
            "G18",
            "custom(6; (1 2 3), (4 5 6), (2 3)(5 6))",
            18,
            true,
            vec![],
        ),
        entry("C3", "custom(3; (1 2 3))", 3, false, vec![]),
        entry("C4", "custom(4; (1 2 3 4))", 4, false, vec![]),
        entry("A4", "custom(4; (1 2 3), (2 3 4))", 12, false, vec![]),
    ]);
    out
}

pub fn catalog_entry(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

/// A mass at a wild prime, known from tables of local fields rather than
/// from tame enumeration.
#[derive(Clone, Debug)]
pub struct KnownWildMass {
    pub group: &'static str,
    pub counting: CountingExpr,
    pub q: u64,
    pub value: Rational,
}

/// `M(Q_2, D4, d) = 121/8`, against the tame polynomial's 17 at `q = 2`.
pub fn known_wild_masses() -> Vec<KnownWildMass> {
    vec![KnownWildMass {
        group: "D4inS4",
        counting: CountingExpr::Perm,
        q: 2,
        value: Rational::new(121, 8),
    }]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::build_group;
    use crate::group::Limits;

    /// Lists partitions of `k` with parts at most `max_part`, at most `m` parts.
    fn brute_partitions(k: usize, m: usize, max_part: usize) -> u64 {
        if k == 0 {
            return 1;
        }
        if m == 0 {
            return 0;
        }
        (1..=max_part.min(k))
            .map(|first| brute_partitions(k - first, m - 1, first))
            .sum()
    }

    #[test]
    fn partition_examples() {
        assert_eq!(partition_p(0, 3), 1);
        assert_eq!(partition_p(3, 1), 1);
        assert_eq!(partition_p(2, 2), 2);
        assert_eq!(partition_p(0, 0), 1);
        assert_eq!(partition_p(4, 0), 0);
    }

    #[test]
    fn partition_recurrence_and_brute_force() {
        for k in 0..15 {
            for m in 0..10 {
                assert_eq!(partition_p(k, m), brute_partitions(k, m, k), "p({k},{m})");
                if m >= 1 {
                    let rest = if k >= m { partition_p(k - m, m) } else { 0 };
                    assert_eq!(partition_p(k, m), partition_p(k, m - 1) + rest);
                }
            }
        }
    }

    #[test]
    fn sn_polynomial_examples() {
        assert_eq!(bhargava_rhs(1), MassPoly::new(vec![1]));
        assert_eq!(bhargava_rhs(2), MassPoly::new(vec![1, 1]));
        assert_eq!(bhargava_rhs(4), MassPoly::new(vec![1, 1, 2, 1]));
        for n in 2..10 {
            let p = bhargava_rhs(n);
            assert_eq!((p.coeff(0), p.coeff(1)), (1, 1));
        }
    }

    #[test]
    fn catalog_builds_with_stated_orders() {
        let entries = catalog();
        for e in &entries {
            let g = build_group(&e.expr, Limits::default()).unwrap();
            assert_eq!(g.order(), e.order, "{}", e.name);
        }
        let d4 = catalog_entry("D4").unwrap();
        assert!(d4.rational);
        assert_eq!(d4.reference_polys.len(), 2);
        assert!(catalog_entry("G18").unwrap().rational);
        assert!(!catalog_entry("C3").unwrap().rational);
        assert!(catalog_entry("nope").is_none());
        assert!(known_wild_masses()
            .iter()
            .all(|w| catalog_entry(w.group).is_some()));
    }
}
