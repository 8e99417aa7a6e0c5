//! Configurations `x: G → A` in finite presentations, the shift action
//! `(g·x)(h) = x(g⁻¹h)`, and restriction to finite subsets.
//!
//! Three presentations are enough for every finite-window check:
//! full tables over finite groups, finitely supported maps over any
//! group, and periodic configurations over Z^d.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Family, FiniteSubset, GroupContext, GroupElement};

/// Symbols are alphabet indices `0..k`.
pub type Symbol = u8;

/// Default cap on `k^n` for exhaustive configuration enumeration.
pub const DEFAULT_CONFIG_CAP: usize = 4096;

/// A finite alphabet of `k ≥ 1` symbols, optionally with display names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    size: usize,
    names: Option<Vec<String>>,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Alphabet> {
        if size == 0 || size > 256 {
            return Err(Error::Parse(format!(
                "alphabet size must be in 1..=256, got {size}"
            )));
        }
        Ok(Alphabet { size, names: None })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Alphabet> {
        if names.len() != self.size {
            return Err(Error::Parse(format!(
                "{} names for {} symbols",
                names.len(),
                self.size
            )));
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::Parse("symbol names must be distinct".into()));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn check_symbol(&self, s: Symbol) -> Result<()> {
        if (s as usize) < self.size {
            Ok(())
        } else {
            Err(Error::InvalidElement(format!(
                "symbol {s} out of range for alphabet of size {}",
                self.size
            )))
        }
    }

    /// Errors when the two alphabets have different sizes.
    pub fn check_compatible(&self, other: &Alphabet) -> Result<()> {
        if self.size == other.size {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.size,
                right: other.size,
            })
        }
    }
}

/// An element of `A^G` in one of three finite presentations.
///
/// Invariants maintained by the constructors: `FiniteSupport` stores no
/// background-valued entries, `Periodic` cell counts match the period
/// product, and all symbols are below the alphabet size. Build values
/// through the constructors so these hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Configuration {
    /// One symbol per element of a finite group, indexed by element index.
    FullTable { cells: Vec<Symbol> },
    /// Background symbol everywhere except a finite set.
    FiniteSupport {
        background: Symbol,
        support: BTreeMap<GroupElement, Symbol>,
    },
    /// Over Z^d only: fundamental-domain table, row-major, wrapped by the
    /// period vector.
    Periodic { periods: Vec<usize>, cells: Vec<Symbol> },
}

impl Configuration {
    pub fn full_table(
        ctx: &GroupContext,
        alphabet: &Alphabet,
        cells: Vec<Symbol>,
    ) -> Result<Configuration> {
        let n = ctx.order().ok_or(Error::Unsupported {
            what: "full-table configurations",
            family: ctx.family(),
        })?;
        if cells.len() != n {
            return Err(Error::InvalidElement(format!(
                "{} cells for a group of order {n}",
                cells.len()
            )));
        }
        for &c in &cells {
            alphabet.check_symbol(c)?;
        }
        Ok(Configuration::FullTable { cells })
    }

    /// Builds a finitely supported configuration; entries equal to the
    /// background are dropped so the form is canonical.
    pub fn finite_support(
        ctx: &GroupContext,
        alphabet: &Alphabet,
        background: Symbol,
        entries: impl IntoIterator<Item = (GroupElement, Symbol)>,
    ) -> Result<Configuration> {
        alphabet.check_symbol(background)?;
        let mut support = BTreeMap::new();
        for (g, v) in entries {
            ctx.validate(&g)?;
            alphabet.check_symbol(v)?;
            if v != background {
                support.insert(g, v);
            } else {
                support.remove(&g);
            }
        }
        Ok(Configuration::FiniteSupport { background, support })
    }

    pub fn constant(alphabet: &Alphabet, symbol: Symbol) -> Result<Configuration> {
        alphabet.check_symbol(symbol)?;
        Ok(Configuration::FiniteSupport {
            background: symbol,
            support: BTreeMap::new(),
        })
    }

    pub fn periodic(
        ctx: &GroupContext,
        alphabet: &Alphabet,
        periods: Vec<usize>,
        cells: Vec<Symbol>,
    ) -> Result<Configuration> {
        if ctx.family() != Family::Integers {
            return Err(Error::Unsupported {
                what: "periodic configurations",
                family: ctx.family(),
            });
        }
        let rank = ctx.rank().unwrap();
        if periods.len() != rank {
            return Err(Error::InvalidElement(format!(
                "{} periods for Z^{rank}",
                periods.len()
            )));
        }
        if periods.contains(&0) {
            return Err(Error::InvalidElement("periods must be positive".into()));
        }
        let expected: usize = periods.iter().product();
        if cells.len() != expected {
            return Err(Error::InvalidElement(format!(
                "{} cells for a fundamental domain of {expected}",
                cells.len()
            )));
        }
        for &c in &cells {
            alphabet.check_symbol(c)?;
        }
        Ok(Configuration::Periodic { periods, cells })
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Configuration::FullTable { .. } => "table",
            Configuration::FiniteSupport { .. } => "finite_support",
            Configuration::Periodic { .. } => "periodic",
        }
    }

    /// Reads `x(g)`.
    pub fn eval(&self, ctx: &GroupContext, g: &GroupElement) -> Result<Symbol> {
        ctx.validate(g)?;
        match (self, g) {
            (Configuration::FullTable { cells }, GroupElement::Finite(i)) => Ok(cells[*i]),
            (Configuration::FiniteSupport { background, support }, _) => {
                Ok(support.get(g).copied().unwrap_or(*background))
            }
            (Configuration::Periodic { periods, cells }, GroupElement::Integers(v)) => {
                let mut idx = 0usize;
                for (c, &p) in v.iter().zip(periods) {
                    idx = idx * p + c.rem_euclid(p as i64) as usize;
                }
                Ok(cells[idx])
            }
            _ => Err(Error::FamilyMismatch {
                expected: ctx.family(),
                found: g.family(),
            }),
        }
    }

    /// The shift action: returns `g·x` with `(g·x)(h) = x(g⁻¹h)`. The
    /// presentation kind is preserved.
    pub fn shift(&self, ctx: &GroupContext, g: &GroupElement) -> Result<Configuration> {
        ctx.validate(g)?;
        match self {
            Configuration::FullTable { cells } => {
                let g_inv = ctx.inv(g)?;
                let n = cells.len();
                let mut out = vec![0; n];
                for (h, slot) in out.iter_mut().enumerate() {
                    let src = ctx.op(&g_inv, &GroupElement::Finite(h))?;
                    *slot = self.eval(ctx, &src)?;
                }
                Ok(Configuration::FullTable { cells: out })
            }
            Configuration::FiniteSupport { background, support } => {
                // Support translates to g·supp; values are unchanged, so
                // no background entries can appear.
                let mut out = BTreeMap::new();
                for (u, &v) in support {
                    out.insert(ctx.op(g, u)?, v);
                }
                Ok(Configuration::FiniteSupport {
                    background: *background,
                    support: out,
                })
            }
            Configuration::Periodic { periods, cells } => {
                let g_inv = ctx.inv(g)?;
                let mut out = vec![0; cells.len()];
                for (idx, slot) in out.iter_mut().enumerate() {
                    let coords = unrank_coords(idx, periods);
                    let h = GroupElement::Integers(coords);
                    let src = ctx.op(&g_inv, &h)?;
                    *slot = self.eval(ctx, &src)?;
                }
                Ok(Configuration::Periodic {
                    periods: periods.clone(),
                    cells: out,
                })
            }
        }
    }

    /// Restriction `x|_S` as a pattern in the domain's canonical order.
    pub fn restrict(&self, ctx: &GroupContext, domain: &FiniteSubset) -> Result<Pattern> {
        let values = domain
            .iter()
            .map(|g| self.eval(ctx, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Pattern {
            domain: domain.clone(),
            values,
        })
    }
}

fn unrank_coords(mut idx: usize, periods: &[usize]) -> Vec<i64> {
    let mut coords = vec![0i64; periods.len()];
    for (i, &p) in periods.iter().enumerate().rev() {
        coords[i] = (idx % p) as i64;
        idx /= p;
    }
    coords
}

/// A finite pattern: a domain and one symbol per domain element, aligned
/// with the domain's canonical order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pattern {
    domain: FiniteSubset,
    values: Vec<Symbol>,
}

impl Pattern {
    pub fn new(alphabet: &Alphabet, domain: FiniteSubset, values: Vec<Symbol>) -> Result<Pattern> {
        if domain.len() != values.len() {
            return Err(Error::InvalidElement(format!(
                "{} values for a domain of {}",
                values.len(),
                domain.len()
            )));
        }
        for &v in &values {
            alphabet.check_symbol(v)?;
        }
        Ok(Pattern { domain, values })
    }

    pub fn domain(&self) -> &FiniteSubset {
        &self.domain
    }

    pub fn values(&self) -> &[Symbol] {
        &self.values
    }

    /// The symbol at a domain element.
    pub fn at(&self, g: &GroupElement) -> Option<Symbol> {
        self.domain.position(g).map(|i| self.values[i])
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (g, v)) in self.domain.iter().zip(&self.values).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}↦{v}")?;
        }
        write!(f, "}}")
    }
}

/// `k^n` guarded against overflow and a configured cap.
pub(crate) fn checked_power(base: usize, exp: usize, cap: usize, what: &'static str) -> Result<usize> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
        if acc > cap as u128 {
            return Err(Error::CapExceeded {
                what,
                required: acc,
                cap,
            });
        }
    }
    Ok(acc as usize)
}

/// All `k^n` full-table configurations over a finite group, in
/// lexicographic cell order (cell 0 most significant).
pub fn all_configurations(
    ctx: &GroupContext,
    alphabet: &Alphabet,
    cap: usize,
) -> Result<Vec<Configuration>> {
    let n = ctx.order().ok_or(Error::Unsupported {
        what: "exhaustive configuration enumeration",
        family: ctx.family(),
    })?;
    let k = alphabet.size();
    let total = checked_power(k, n, cap, "configuration enumeration")?;
    let mut out = Vec::with_capacity(total);
    let mut cells = vec![0 as Symbol; n];
    for _ in 0..total {
        out.push(Configuration::FullTable { cells: cells.clone() });
        // Increment the rightmost cell (least significant).
        for i in (0..n).rev() {
            if (cells[i] as usize) + 1 < k {
                cells[i] += 1;
                break;
            }
            cells[i] = 0;
        }
    }
    Ok(out)
}
