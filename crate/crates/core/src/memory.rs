//! Dependence analysis and the minimal memory set.
//!
//! Memory sets of a fixed automaton are closed under intersection, so the
//! set of coordinates the table actually depends on is itself a memory
//! set and is the unique minimal one. That licenses computing it
//! coordinate by coordinate instead of searching subsets; the test suites
//! re-derive the same answer by brute force over subsets.

use crate::automaton::{pattern_digits, pattern_index, RuleTable};
use crate::error::{Error, Result};
use crate::group::{FiniteSubset, GroupElement};
use crate::config::Symbol;

/// A minimized rule: its memory set equals its dependence set. `removed`
/// lists the dead coordinates that were dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    rule: RuleTable,
    removed: Vec<GroupElement>,
}

impl CanonicalForm {
    pub fn rule(&self) -> &RuleTable {
        &self.rule
    }

    pub fn removed(&self) -> &[GroupElement] {
        &self.removed
    }

    pub fn into_rule(self) -> RuleTable {
        self.rule
    }
}

/// Whether `μ` ever changes when only the coordinate `s` changes.
///
/// Decided by scanning all `k^|S|` patterns and all `k` substitutions;
/// `s` must belong to the memory set.
pub fn depends_on(rule: &RuleTable, s: &GroupElement) -> Result<bool> {
    let Some(pos) = rule.memory().position(s) else {
        return Err(Error::Domain(format!(
            "element {s} is not in the memory set"
        )));
    };
    let k = rule.alphabet().size();
    let table = rule.table();
    let stride = k.pow(pos as u32);
    let blocks = table.len() / (stride * k);
    for block in 0..blocks {
        let base = block * stride * k;
        for off in 0..stride {
            let v = table[base + off];
            for a in 1..k {
                if table[base + off + a * stride] != v {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

fn project(rule: &RuleTable, live: &FiniteSubset, fill: Symbol) -> Vec<Symbol> {
    let k = rule.alphabet().size();
    let memory = rule.memory();
    let len = k.pow(live.len() as u32);
    // For each memory position, either the live-pattern position that
    // feeds it or the fill value.
    let feeds: Vec<Option<usize>> = memory.iter().map(|g| live.position(g)).collect();
    let mut out = Vec::with_capacity(len);
    let mut full = vec![0 as Symbol; memory.len()];
    for idx in 0..len {
        let digits = pattern_digits(k, live.len(), idx);
        for (slot, feed) in full.iter_mut().zip(&feeds) {
            *slot = match feed {
                Some(j) => digits[*j],
                None => fill,
            };
        }
        out.push(rule.table()[pattern_index(k, &full)]);
    }
    out
}

/// The canonical form: memory restricted to the coordinates the table
/// depends on, with dead coordinates projected away.
///
/// The projection fixes dead coordinates to symbol 0; a second projection
/// with a different fill cross-checks that the dropped coordinates really
/// were dead, and a mismatch reports an internal inconsistency rather
/// than returning a wrong table.
pub fn minimize(rule: &RuleTable) -> Result<CanonicalForm> {
    let mut live = Vec::new();
    let mut removed = Vec::new();
    for g in rule.memory().iter() {
        if depends_on(rule, g)? {
            live.push(g.clone());
        } else {
            removed.push(g.clone());
        }
    }
    let live = FiniteSubset::new(live);
    let table = project(rule, &live, 0);
    let k = rule.alphabet().size();
    if k > 1 && !removed.is_empty() {
        let alt = project(rule, &live, 1);
        if alt != table {
            return Err(Error::Inconsistency(
                "projection of a dead coordinate changed the table".into(),
            ));
        }
    }
    let minimized = RuleTable::new(
        rule.ctx().clone(),
        rule.alphabet().clone(),
        live,
        table,
    )?;
    Ok(CanonicalForm {
        rule: minimized,
        removed,
    })
}

/// Whether `candidate` is a memory set for the rule, i.e. every memory
/// coordinate outside it is dead. Supersets of the memory set are always
/// accepted; the extra coordinates would be dead by construction.
pub fn is_memory_subset(rule: &RuleTable, candidate: &FiniteSubset) -> Result<bool> {
    for g in rule.memory().iter() {
        if !candidate.contains(g) && depends_on(rule, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Re-expresses the rule over another valid memory set.
///
/// `candidate` may drop dead coordinates, add fresh ones, or both; it
/// must satisfy [`is_memory_subset`], otherwise this is a domain error.
pub fn restrict_rule(rule: &RuleTable, candidate: &FiniteSubset) -> Result<RuleTable> {
    if !is_memory_subset(rule, candidate)? {
        return Err(Error::Domain(format!(
            "{candidate} is not a memory set for this rule"
        )));
    }
    for g in candidate.iter() {
        rule.ctx().validate(g)?;
    }
    let k = rule.alphabet().size();
    let len = crate::config::checked_power(k, candidate.len(), usize::MAX, "rule restriction")?;
    let feeds: Vec<Option<usize>> = rule.memory().iter().map(|g| candidate.position(g)).collect();
    let mut table = Vec::with_capacity(len);
    let mut full = vec![0 as Symbol; rule.memory().len()];
    for idx in 0..len {
        let digits = pattern_digits(k, candidate.len(), idx);
        for (slot, feed) in full.iter_mut().zip(&feeds) {
            *slot = match feed {
                Some(j) => digits[*j],
                None => 0, // dead coordinate
            };
        }
        table.push(rule.table()[pattern_index(k, &full)]);
    }
    RuleTable::new(
        rule.ctx().clone(),
        rule.alphabet().clone(),
        candidate.clone(),
        table,
    )
}
