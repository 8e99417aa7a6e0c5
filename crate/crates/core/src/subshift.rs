//! Subshifts of finite type and composition restricted to them.
//!
//! A subshift is given by a finite list of forbidden patterns; `x`
//! belongs to it when no forbidden pattern occurs in any shift of `x`,
//! i.e. there is no `g` with `x(g·d) = q(d)` for all `d` in the domain
//! of a forbidden `q`. Membership is decided exactly for the cases the
//! crate can represent: any configuration over a finite group, periodic
//! configurations over Z^d (one period box suffices), and finitely
//! supported configurations (only finitely many positions can see the
//! support; a forbidden pattern equal to the background everywhere
//! occurs arbitrarily far out, which settles membership negatively).

use crate::automaton::RuleTable;
use crate::config::{Alphabet, Configuration, Pattern};
use crate::error::{Error, Result};
use crate::group::{Family, GroupContext, GroupElement};

/// A subshift of finite type over a fixed group and alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sft {
    ctx: GroupContext,
    alphabet: Alphabet,
    forbidden: Vec<Pattern>,
}

impl Sft {
    /// Validates domains and symbols and drops duplicate patterns.
    pub fn new(ctx: GroupContext, alphabet: Alphabet, forbidden: Vec<Pattern>) -> Result<Sft> {
        let mut forbidden = forbidden;
        for q in &forbidden {
            for g in q.domain().iter() {
                ctx.validate(g)?;
            }
            for &v in q.values() {
                alphabet.check_symbol(v)?;
            }
        }
        forbidden.sort();
        forbidden.dedup();
        Ok(Sft {
            ctx,
            alphabet,
            forbidden,
        })
    }

    /// The full shift: nothing is forbidden.
    pub fn full_shift(ctx: GroupContext, alphabet: Alphabet) -> Sft {
        Sft {
            ctx,
            alphabet,
            forbidden: Vec::new(),
        }
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn forbidden(&self) -> &[Pattern] {
        &self.forbidden
    }

    /// Does `q` occur in `x` at position `g`, i.e. `(g⁻¹·x)|_dom = q`?
    fn occurs_at(&self, x: &Configuration, g: &GroupElement, q: &Pattern) -> Result<bool> {
        for (d, &v) in q.domain().iter().zip(q.values()) {
            if x.eval(&self.ctx, &self.ctx.op(g, d)?)? != v {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact membership test. Never approximates: configuration kinds
    /// without an exact finite check are rejected.
    pub fn member(&self, x: &Configuration) -> Result<bool> {
        if self.ctx.family() == Family::Finite {
            let region = self.ctx.enumerate()?;
            for q in &self.forbidden {
                for g in region.iter() {
                    if self.occurs_at(x, g, q)? {
                        return Ok(false);
                    }
                }
            }
            return Ok(true);
        }
        match x {
            Configuration::Periodic { periods, .. } => {
                // Occurrences repeat with the periods, so one period box
                // is enough; reads wrap around automatically.
                let box_size: usize = periods.iter().product();
                for q in &self.forbidden {
                    let mut coords = vec![0i64; periods.len()];
                    for _ in 0..box_size {
                        let g = GroupElement::Integers(coords.clone());
                        if self.occurs_at(x, &g, q)? {
                            return Ok(false);
                        }
                        for (c, &p) in coords.iter_mut().zip(periods.iter()).rev() {
                            *c += 1;
                            if *c < p as i64 {
                                break;
                            }
                            *c = 0;
                        }
                    }
                }
                Ok(true)
            }
            Configuration::FiniteSupport { background, support } => {
                for q in &self.forbidden {
                    // A pattern made entirely of the background occurs at
                    // any position far from the support, and the group is
                    // infinite here, so such positions exist.
                    if q.values().iter().all(|&v| v == *background) {
                        return Ok(false);
                    }
                    // Any other occurrence must read the support somewhere:
                    // g·d ∈ supp for some d, i.e. g ∈ supp·dom⁻¹.
                    for u in support.keys() {
                        for d in q.domain().iter() {
                            let g = self.ctx.op(u, &self.ctx.inv(d)?)?;
                            if self.occurs_at(x, &g, q)? {
                                return Ok(false);
                            }
                        }
                    }
                }
                Ok(true)
            }
            Configuration::FullTable { .. } => Err(Error::Unsupported {
                what: "exact membership for full tables",
                family: self.ctx.family(),
            }),
        }
    }

    /// Checks that a rule maps each probe back into the subshift.
    ///
    /// Every probe must itself be a member, otherwise this is an
    /// invalid-probe error naming the probe.
    pub fn closure_check(&self, rule: &RuleTable, probes: &[Configuration]) -> Result<Closure> {
        for (index, x) in probes.iter().enumerate() {
            if !self.member(x)? {
                return Err(Error::InvalidProbe { index });
            }
        }
        for (index, x) in probes.iter().enumerate() {
            let image = rule.apply(x)?;
            if !self.member(&image)? {
                return Ok(Closure::Counterexample {
                    index,
                    probe: x.clone(),
                    image,
                });
            }
        }
        Ok(Closure::Pass {
            checked: probes.len(),
        })
    }

    /// All periodic configurations over Z with period ≤ `period_max`
    /// that belong to the subshift, in deterministic order.
    pub fn periodic_members(&self, period_max: usize) -> Result<Vec<Configuration>> {
        if self.ctx.family() != Family::Integers || self.ctx.rank() != Some(1) {
            return Err(Error::Unsupported {
                what: "periodic probe enumeration",
                family: self.ctx.family(),
            });
        }
        let k = self.alphabet.size();
        let mut out = Vec::new();
        for p in 1..=period_max {
            let count = crate::config::checked_power(k, p, 1 << 20, "periodic probes")?;
            for idx in 0..count {
                let cells = crate::automaton::pattern_digits(k, p, idx);
                let x = Configuration::periodic(&self.ctx, &self.alphabet, vec![p], cells)?;
                if self.member(&x)? {
                    out.push(x);
                }
            }
        }
        Ok(out)
    }
}

/// Outcome of a closure check.
#[derive(Debug)]
pub enum Closure {
    Pass {
        checked: usize,
    },
    Counterexample {
        index: usize,
        probe: Configuration,
        image: Configuration,
    },
}

/// The ∗-composition restricted to a subshift: both factors must pass
/// the closure check on the probes, and the composite is re-verified on
/// the same probes before being returned.
///
/// A composite failure is reported as [`Error::ClosureWitness`]; for
/// genuine members it would indicate a bug, since closure of the
/// composite is a theorem.
pub fn star_restricted(
    t1: &RuleTable,
    t2: &RuleTable,
    sft: &Sft,
    probes: &[Configuration],
) -> Result<RuleTable> {
    for (name, t) in [("first", t1), ("second", t2)] {
        match sft.closure_check(t, probes)? {
            Closure::Pass { .. } => {}
            Closure::Counterexample { index, .. } => {
                return Err(Error::Domain(format!(
                    "the {name} rule leaves the subshift on probe {index}"
                )))
            }
        }
    }
    let composite = t1.star(t2)?;
    match sft.closure_check(&composite, probes)? {
        Closure::Pass { .. } => Ok(composite),
        Closure::Counterexample { index, .. } => Err(Error::ClosureWitness { index }),
    }
}
