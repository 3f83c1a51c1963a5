use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use massform::expr::check_compat;
use massform::group::DEFAULT_MAX_ORDER;
use massform::mass::non_rational_witness;
use massform::reference::{bhargava_rhs, catalog, catalog_entry};
use massform::report::GroupInfo;
use massform::{
    ambient_centralizer_order, build_counting, build_group, conjugators_into, mass_report,
    parse_counting, parse_group, Error, FormulaReport, GroupExpr, Limits, MassPoly, PermGroup,
    Rational, Stratification,
};

#[derive(Parser)]
#[command(
    name = "massform",
    version,
    about = "Exact tame mass formulas for permutation groups"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Largest group order to construct.
    #[arg(long, env = "MASSFORM_MAX_ORDER", default_value_t = DEFAULT_MAX_ORDER, global = true)]
    max_order: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum By {
    Total,
    Type,
    WreathType,
    ProductType,
    Image,
}

impl From<By> for Stratification {
    fn from(b: By) -> Self {
        match b {
            By::Total => Stratification::Total,
            By::Type => Stratification::Type,
            By::WreathType => Stratification::WreathType,
            By::ProductType => Stratification::ProductType,
            By::Image => Stratification::Image,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Masses at one residue (default 1) or all of them.
    Mass {
        #[arg(long)]
        group: String,
        #[arg(long)]
        counting: String,
        /// A residue mod |G|, or `all`.
        #[arg(long, default_value = "1")]
        residue: String,
        #[arg(long, value_enum, default_value_t = By::Total)]
        by: By,
    },
    /// Masses at every invertible residue and whether they agree.
    Check {
        #[arg(long)]
        group: String,
        #[arg(long)]
        counting: String,
        #[arg(long, default_value = "all")]
        residue: String,
        #[arg(long, value_enum, default_value_t = By::Total)]
        by: By,
    },
    /// Whether every element is conjugate to its generator powers.
    Rational {
        #[arg(long)]
        group: String,
    },
    /// Reference formulas.
    Reference {
        #[command(subcommand)]
        which: Reference,
    },
    /// j = |{s in S : s I s^-1 in D}| and k = |C_S(I)|.
    Ambient {
        #[arg(long = "group")]
        image: String,
        #[arg(long)]
        target: String,
        #[arg(long = "in")]
        ambient: String,
    },
    /// Built-in groups, usable by name wherever a group is expected.
    Catalog,
}

#[derive(Subcommand)]
enum Reference {
    /// Partition polynomial for S_n, unscaled.
    Sn {
        #[arg(long)]
        n: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidPermutation(_) | Error::DegreeMismatch { .. } => 2,
            Error::Incompatible { .. } | Error::StructureMismatch(_) | Error::NotSubgroup(_) => 3,
            Error::OrderCapExceeded { .. } => 4,
            Error::NonInvertibleResidue { .. } => 5,
            Error::NotInGroup(_) | Error::InvalidPair { .. } => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn resolve_group(text: &str) -> Result<GroupExpr, Error> {
    match catalog_entry(text.trim()) {
        Some(entry) => Ok(entry.expr),
        None => parse_group(text),
    }
}

fn parse_residue(text: &str) -> Result<Option<u64>, Failure> {
    if text == "all" {
        return Ok(None);
    }
    text.parse().map(Some).map_err(|_| Failure {
        code: 5,
        message: format!("residue must be a nonnegative integer or `all`, got `{text}`"),
    })
}

fn formula(
    limits: Limits,
    group: &str,
    counting: &str,
    residue: &str,
    by: By,
) -> Result<FormulaReport, Failure> {
    let gexpr = resolve_group(group)?;
    let cexpr = parse_counting(counting)?;
    if !check_compat(&gexpr, &cexpr) {
        return Err(Error::Incompatible {
            group: gexpr.to_string(),
            counting: cexpr.to_string(),
        }
        .into());
    }
    let residue = parse_residue(residue)?;
    let g = build_group(&gexpr, limits)?;
    let c = build_counting(&cexpr, &g)?;
    Ok(mass_report(&g, &c, residue, by.into())?)
}

#[derive(Serialize)]
struct Witness {
    element: String,
    power: u64,
}

#[derive(Serialize)]
struct RationalReport {
    group: GroupInfo,
    rational: bool,
    witness: Option<Witness>,
}

#[derive(Serialize)]
struct SnReport {
    n: usize,
    coeffs: MassPoly,
}

#[derive(Serialize)]
struct AmbientReport {
    image: GroupInfo,
    target: GroupInfo,
    ambient: GroupInfo,
    j: usize,
    k: usize,
    j_over_k: String,
}

#[derive(Serialize)]
struct ReferencePoly {
    counting: String,
    coeffs: MassPoly,
}

#[derive(Serialize)]
struct CatalogRow {
    name: String,
    expr: String,
    order: usize,
    rational: bool,
    reference_polys: Vec<ReferencePoly>,
}

enum Output {
    Formula(FormulaReport),
    Rational(RationalReport),
    Sn(SnReport),
    Ambient(AmbientReport),
    Catalog(Vec<CatalogRow>),
}

impl Output {
    fn json(&self) -> serde_json::Result<String> {
        match self {
            Output::Formula(r) => serde_json::to_string_pretty(r),
            Output::Rational(r) => serde_json::to_string_pretty(r),
            Output::Sn(r) => serde_json::to_string_pretty(r),
            Output::Ambient(r) => serde_json::to_string_pretty(r),
            Output::Catalog(r) => serde_json::to_string_pretty(r),
        }
    }

    fn text(&self) -> String {
        let mut s = String::new();
        match self {
            Output::Formula(r) => {
                let _ = writeln!(
                    s,
                    "group     {} (order {}, degree {})",
                    r.group.expr, r.group.order, r.group.degree
                );
                let _ = writeln!(s, "counting  {}", r.counting);
                let _ = writeln!(s, "modulus   {}", r.modulus);
                match &r.polynomial {
                    Some(p) => {
                        let _ = writeln!(s, "formula   {p}");
                    }
                    None => {
                        let _ = writeln!(s, "formula   none (masses depend on the residue)");
                    }
                }
                for res in &r.results {
                    let _ = writeln!(s, "a = {:<5} {}", res.residue, res.total);
                    let width = res
                        .strata
                        .iter()
                        .map(|x| x.key.chars().count())
                        .max()
                        .unwrap_or(0);
                    for st in &res.strata {
                        let pad = width - st.key.chars().count();
                        let _ = writeln!(s, "    {}{}  {}", st.key, " ".repeat(pad), st.coeffs);
                    }
                }
                for w in &r.warnings {
                    let _ = writeln!(s, "warning   {}", w.message);
                }
            }
            Output::Rational(r) => {
                let _ = writeln!(s, "group     {}", r.group.expr);
                let _ = writeln!(s, "rational  {}", r.rational);
                if let Some(w) = &r.witness {
                    let _ = writeln!(
                        s,
                        "witness   {} is not conjugate to its power {}",
                        w.element, w.power
                    );
                }
            }
            Output::Sn(r) => {
                let _ = writeln!(s, "S{}: {}", r.n, r.coeffs);
            }
            Output::Ambient(r) => {
                let _ = writeln!(s, "j = {}", r.j);
                let _ = writeln!(s, "k = {}", r.k);
                let _ = writeln!(s, "j/k = {}", r.j_over_k);
            }
            Output::Catalog(rows) => {
                let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
                for r in rows {
                    let _ = writeln!(
                        s,
                        "{:<width$}  order {:<5} rational {:<5}  {}",
                        r.name, r.order, r.rational, r.expr
                    );
                }
            }
        }
        s
    }
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let limits = Limits::new(cli.max_order);
    match cli.command {
        Command::Mass {
            group,
            counting,
            residue,
            by,
        }
        | Command::Check {
            group,
            counting,
            residue,
            by,
        } => Ok(Output::Formula(formula(
            limits, &group, &counting, &residue, by,
        )?)),
        Command::Rational { group } => {
            let g = build_group(&resolve_group(&group)?, limits)?;
            let witness = non_rational_witness(&g).map(|(x, k)| Witness {
                element: x.to_string(),
                power: k,
            });
            Ok(Output::Rational(RationalReport {
                group: GroupInfo::of(&g),
                rational: witness.is_none(),
                witness,
            }))
        }
        Command::Reference {
            which: Reference::Sn { n },
        } => {
            if n == 0 {
                return Err(Failure {
                    code: 2,
                    message: "n must be positive".into(),
                });
            }
            Ok(Output::Sn(SnReport {
                n,
                coeffs: bhargava_rhs(n),
            }))
        }
        Command::Ambient {
            image,
            target,
            ambient,
        } => {
            let build = |t: &str| -> Result<PermGroup, Failure> {
                Ok(build_group(&resolve_group(t)?, limits)?)
            };
            let (i, d, s) = (build(&image)?, build(&target)?, build(&ambient)?);
            let j = conjugators_into(&i, &d, &s)?;
            let k = ambient_centralizer_order(&i, &s)?;
            Ok(Output::Ambient(AmbientReport {
                image: GroupInfo::of(&i),
                target: GroupInfo::of(&d),
                ambient: GroupInfo::of(&s),
                j,
                k,
                j_over_k: Rational::new(j as i128, k as i128).to_string(),
            }))
        }
        Command::Catalog => Ok(Output::Catalog(
            catalog()
                .into_iter()
                .map(|e| CatalogRow {
                    name: e.name.to_string(),
                    expr: e.expr.to_string(),
                    order: e.order,
                    rational: e.rational,
                    reference_polys: e
                        .reference_polys
                        .into_iter()
                        .map(|(c, p)| ReferencePoly {
                            counting: c.to_string(),
                            coeffs: p,
                        })
                        .collect(),
                })
                .collect(),
        )),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            let text = match format {
                Format::Json => match out.json() {
                    Ok(s) => s + "\n",
                    Err(e) => {
                        eprintln!("massform: {e}");
                        return ExitCode::FAILURE;
                    }
                },
                Format::Text => out.text(),
            };
            // a closed pipe downstream is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("massform: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_cli() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn residue_selector() {
        assert_eq!(parse_residue("all").ok().flatten(), None);
        assert_eq!(parse_residue("7").ok().flatten(), Some(7));
        assert_eq!(parse_residue("x").err().map(|f| f.code), Some(5));
    }

    #[test]
    fn catalog_names_resolve() {
        assert_eq!(
            resolve_group("D4").unwrap(),
            GroupExpr::wr(GroupExpr::Sym(2), GroupExpr::Sym(2))
        );
        assert_eq!(resolve_group("S7").unwrap(), GroupExpr::Sym(7));
        assert!(resolve_group("nonsense(").is_err());
    }
}
