//! Group and counting-function expressions.
//!
//! Group grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := S<n> | wr(expr, expr) | x(expr, expr) | custom(<degree>; gen, gen, ...)
//! gen    := cycle+            e.g. (1 2 3)(4 5), or () for the identity
//! ```
//!
//! `wr(A, B)` is `A ≀ B` with `A` acting inside each block, `x(A, B)` the
//! direct product on the disjoint union. Points in `custom` cycles are 1-based.
//!
//! Counting grammar: `c := perm | zero | signed | wreath(c, c) | sum(c, c)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Limits, PermGroup, Structure};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Sym(usize),
    Wr(Box<GroupExpr>, Box<GroupExpr>),
    Prod(Box<GroupExpr>, Box<GroupExpr>),
    Custom {
        degree: usize,
        /// Each generator is a product of 0-based cycles, applied right to left.
        generators: Vec<Vec<Vec<usize>>>,
        name: Option<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CountingExpr {
    Perm,
    Zero,
    Signed,
    Wreath(Box<CountingExpr>, Box<CountingExpr>),
    Sum(Box<CountingExpr>, Box<CountingExpr>),
}

impl GroupExpr {
    pub fn wr(a: GroupExpr, b: GroupExpr) -> Self {
        GroupExpr::Wr(Box::new(a), Box::new(b))
    }

    pub fn prod(a: GroupExpr, b: GroupExpr) -> Self {
        GroupExpr::Prod(Box::new(a), Box::new(b))
    }

    pub fn custom(degree: usize, generators: Vec<Vec<Vec<usize>>>) -> Self {
        GroupExpr::Custom {
            degree,
            generators,
            name: None,
        }
    }

    pub fn with_name(self, name: &str) -> Self {
        match self {
            GroupExpr::Custom {
                degree, generators, ..
            } => GroupExpr::Custom {
                degree,
                generators,
                name: Some(name.to_string()),
            },
            other => other,
        }
    }
}

impl CountingExpr {
    pub fn wreath(a: CountingExpr, b: CountingExpr) -> Self {
        CountingExpr::Wreath(Box::new(a), Box::new(b))
    }

    pub fn sum(a: CountingExpr, b: CountingExpr) -> Self {
        CountingExpr::Sum(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Sym(n) => write!(f, "S{n}"),
            GroupExpr::Wr(a, b) => write!(f, "wr({a},{b})"),
            GroupExpr::Prod(a, b) => write!(f, "x({a},{b})"),
            GroupExpr::Custom {
                degree, generators, ..
            } => {
                write!(f, "custom({degree};")?;
                for (i, g) in generators.iter().enumerate() {
                    write!(f, "{}", if i == 0 { " " } else { ", " })?;
                    if g.is_empty() {
                        write!(f, "()")?;
                    }
                    for cycle in g {
                        write!(f, "(")?;
                        for (k, x) in cycle.iter().enumerate() {
                            if k > 0 {
                                write!(f, " ")?;
                            }
                            write!(f, "{}", x + 1)?;
                        }
                        write!(f, ")")?;
                    }
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for CountingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountingExpr::Perm => write!(f, "perm"),
            CountingExpr::Zero => write!(f, "zero"),
            CountingExpr::Signed => write!(f, "signed"),
            CountingExpr::Wreath(a, b) => write!(f, "wreath({a},{b})"),
            CountingExpr::Sum(a, b) => write!(f, "sum({a},{b})"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn found(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("`{c}`"),
            None => "end of input".into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            let found = self.found();
            self.err(format!("expected `{c}`, found {found}"))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if len == 0 {
            let found = self.found();
            return self.err(format!("expected a number, found {found}"));
        }
        let n = rest[..len]
            .parse::<usize>()
            .or_else(|_| self.err("number too large"))?;
        self.pos += len;
        Ok(n)
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            let found = self.found();
            return self.err(format!("unexpected trailing input {found}"));
        }
        Ok(())
    }

    fn group(&mut self) -> Result<GroupExpr> {
        let start = {
            self.skip_ws();
            self.pos
        };
        if self.peek() == Some('S') {
            self.pos += 1;
            let n = self.number()?;
            if n == 0 {
                self.pos = start;
                return self.err("symmetric group arity must be at least 1");
            }
            return Ok(GroupExpr::Sym(n));
        }
        match self.word() {
            "wr" => {
                let (a, b) = self.group_pair()?;
                Ok(GroupExpr::wr(a, b))
            }
            "x" => {
                let (a, b) = self.group_pair()?;
                Ok(GroupExpr::prod(a, b))
            }
            "custom" => self.custom(),
            _ => {
                self.pos = start;
                let found = self.found();
                self.err(format!(
                    "expected `S<n>`, `wr(`, `x(` or `custom(`, found {found}"
                ))
            }
        }
    }

    fn group_pair(&mut self) -> Result<(GroupExpr, GroupExpr)> {
        self.expect('(')?;
        let a = self.group()?;
        self.expect(',')?;
        let b = self.group()?;
        self.expect(')')?;
        Ok((a, b))
    }

    fn custom(&mut self) -> Result<GroupExpr> {
        self.expect('(')?;
        let degree = self.number()?;
        if degree == 0 {
            return self.err("custom degree must be at least 1");
        }
        self.expect(';')?;
        let mut generators = Vec::new();
        if self.peek() != Some(')') {
            loop {
                generators.push(self.generator(degree)?);
                if self.peek() == Some(',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(')')?;
        Ok(GroupExpr::custom(degree, generators))
    }

    fn generator(&mut self, degree: usize) -> Result<Vec<Vec<usize>>> {
        let mut cycles = Vec::new();
        if self.peek() != Some('(') {
            let found = self.found();
            return self.err(format!("expected a cycle `(`, found {found}"));
        }
        while self.peek() == Some('(') {
            self.pos += 1;
            let mut cycle: Vec<usize> = Vec::new();
            while self.peek() != Some(')') {
                if self.peek() == Some(',') {
                    self.pos += 1;
                    continue;
                }
                let at = self.pos;
                let x = self.number()?;
                if x == 0 || x > degree {
                    self.pos = at;
                    return self.err(format!("point {x} outside 1..={degree}"));
                }
                if cycle.contains(&(x - 1)) {
                    self.pos = at;
                    return self.err(format!("point {x} repeated within a cycle"));
                }
                cycle.push(x - 1);
            }
            self.pos += 1;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
        }
        Ok(cycles)
    }

    fn counting(&mut self) -> Result<CountingExpr> {
        self.skip_ws();
        let start = self.pos;
        match self.word() {
            "perm" => Ok(CountingExpr::Perm),
            "zero" => Ok(CountingExpr::Zero),
            "signed" => Ok(CountingExpr::Signed),
            "wreath" => {
                let (a, b) = self.counting_pair()?;
                Ok(CountingExpr::wreath(a, b))
            }
            "sum" => {
                let (a, b) = self.counting_pair()?;
                Ok(CountingExpr::sum(a, b))
            }
            _ => {
                self.pos = start;
                let found = self.found();
                self.err(format!(
                    "expected `perm`, `zero`, `signed`, `wreath(` or `sum(`, found {found}"
                ))
            }
        }
    }

    fn counting_pair(&mut self) -> Result<(CountingExpr, CountingExpr)> {
        self.expect('(')?;
        let a = self.counting()?;
        self.expect(',')?;
        let b = self.counting()?;
        self.expect(')')?;
        Ok((a, b))
    }
}

pub fn parse_group(text: &str) -> Result<GroupExpr> {
    let mut p = Parser::new(text);
    let e = p.group()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_counting(text: &str) -> Result<CountingExpr> {
    let mut p = Parser::new(text);
    let e = p.counting()?;
    p.finish()?;
    Ok(e)
}

/// Builds the group literally as written; no associativity normalization.
pub fn build_group(e: &GroupExpr, limits: Limits) -> Result<PermGroup> {
    match e {
        GroupExpr::Sym(n) => PermGroup::symmetric(*n, limits),
        GroupExpr::Wr(a, b) => {
            let a = build_group(a, limits)?;
            let b = build_group(b, limits)?;
            PermGroup::wreath(&a, &b, limits)
        }
        GroupExpr::Prod(a, b) => {
            let a = build_group(a, limits)?;
            let b = build_group(b, limits)?;
            PermGroup::direct_product(&a, &b, limits)
        }
        GroupExpr::Custom {
            degree,
            generators,
            name,
        } => {
            let gens = generators
                .iter()
                .map(|g| Permutation::from_cycles(*degree, g))
                .collect::<Result<Vec<_>>>()?;
            PermGroup::custom(*degree, gens, name.clone(), limits)
        }
    }
}

/// Reconstructs an expression describing how `g` was built.
pub fn describe(g: &PermGroup) -> GroupExpr {
    match g.structure() {
        Structure::Symmetric(n) => GroupExpr::Sym(*n),
        Structure::Wreath { inner, outer } => GroupExpr::wr(describe(inner), describe(outer)),
        Structure::Product { left, right } => GroupExpr::prod(describe(left), describe(right)),
        Structure::Custom(name) => GroupExpr::Custom {
            degree: g.degree(),
            generators: generator_cycles(g),
            name: name.clone(),
        },
        Structure::Generated => GroupExpr::custom(g.degree(), generator_cycles(g)),
    }
}

fn generator_cycles(g: &PermGroup) -> Vec<Vec<Vec<usize>>> {
    g.generators()
        .iter()
        .map(|p| p.cycles().into_iter().filter(|c| c.len() > 1).collect())
        .collect()
}

/// Structural match: `wreath` needs a `wr` node, `sum` an `x` node,
/// `signed` a `wr(S2, _)` node; `perm` and `zero` match anything.
pub fn check_compat(g: &GroupExpr, c: &CountingExpr) -> bool {
    match (c, g) {
        (CountingExpr::Perm | CountingExpr::Zero, _) => true,
        (CountingExpr::Signed, GroupExpr::Wr(a, _)) => **a == GroupExpr::Sym(2),
        (CountingExpr::Wreath(ca, cb), GroupExpr::Wr(a, b)) => {
            check_compat(a, ca) && check_compat(b, cb)
        }
        (CountingExpr::Sum(ca, cb), GroupExpr::Prod(a, b)) => {
            check_compat(a, ca) && check_compat(b, cb)
        }
        _ => false,
    }
}

/// Every counting expression structurally compatible with `g`.
pub fn compatible_countings(g: &GroupExpr) -> Vec<CountingExpr> {
    let mut out = vec![CountingExpr::Perm, CountingExpr::Zero];
    match g {
        GroupExpr::Wr(a, b) => {
            if **a == GroupExpr::Sym(2) {
                out.push(CountingExpr::Signed);
            }
            for ca in compatible_countings(a) {
                for cb in compatible_countings(b) {
                    out.push(CountingExpr::wreath(ca.clone(), cb));
                }
            }
        }
        GroupExpr::Prod(a, b) => {
            for ca in compatible_countings(a) {
                for cb in compatible_countings(b) {
                    out.push(CountingExpr::sum(ca.clone(), cb));
                }
            }
        }
        _ => {}
    }
    out
}
