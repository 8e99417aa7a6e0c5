//! Seeded law suites behind `gca verify`.

use anyhow::Result;
use gca::automaton::identity_rule;
use gca::json::{group_to_json, rule_to_json};
use gca::sample::Sampler;
use gca::{
    is_memory_subset, minimize, Alphabet, FiniteSubset, GroupContext, GroupElement, RuleTable,
    Symbol,
};

/// Report of one suite: lines to print and an optional violation.
pub struct SuiteResult {
    pub lines: Vec<String>,
    pub violation: Option<String>,
}

impl SuiteResult {
    fn pass(lines: Vec<String>) -> SuiteResult {
        SuiteResult {
            lines,
            violation: None,
        }
    }
}

/// Groups the randomized suites range over, with a memory pool and a
/// size bound per group.
fn group_zoo() -> Vec<(GroupContext, FiniteSubset, usize)> {
    let mut zoo = Vec::new();
    for n in 2..=6 {
        let ctx = GroupContext::cyclic(n).unwrap();
        let pool = ctx.enumerate().unwrap();
        zoo.push((ctx, pool, n.min(4)));
    }
    let z = GroupContext::integers(1).unwrap();
    let pool = z.ball(2).unwrap();
    zoo.push((z, pool, 3));
    let f2 = GroupContext::free(2).unwrap();
    let pool = f2.ball(1).unwrap();
    zoo.push((f2, pool, 3));
    zoo
}

fn describe_rule(rule: &RuleTable) -> String {
    let canonical = minimize(rule).map(|m| m.into_rule()).unwrap_or_else(|_| rule.clone());
    format!(
        "group {}, rule {}",
        serde_json::to_string(&group_to_json(canonical.ctx())).unwrap(),
        serde_json::to_string(&rule_to_json(&canonical)).unwrap()
    )
}

/// Canonical forms of `star` and `compose_global` agree on random pairs.
pub fn theorem_a(samples: usize, seed: u64) -> Result<SuiteResult> {
    let zoo = group_zoo();
    let mut sampler = Sampler::seeded(seed);
    for i in 0..samples {
        let (ctx, pool, max) = &zoo[i % zoo.len()];
        let k = if i % 2 == 0 { 2 } else { 3 };
        let alphabet = Alphabet::new(k)?;
        let t1 = sampler.rule(ctx, &alphabet, pool, *max)?;
        let t2 = sampler.rule(ctx, &alphabet, pool, *max)?;
        let star = t1.star(&t2)?;
        let global = t1.compose_global(&t2)?;
        if minimize(&star)?.rule() != minimize(&global)?.rule() {
            return Ok(SuiteResult {
                lines: vec![format!("theoremA: {i}/{samples} pass")],
                violation: Some(format!(
                    "star and global composition diverge on sample {i}:\n  a: {}\n  b: {}",
                    describe_rule(&t1),
                    describe_rule(&t2)
                )),
            });
        }
    }
    Ok(SuiteResult::pass(vec![format!(
        "theoremA: {samples}/{samples} pass"
    )]))
}

/// ∗ is associative and p₁ is a two-sided identity, on canonical forms.
pub fn monoid(samples: usize, seed: u64) -> Result<SuiteResult> {
    let zoo = group_zoo();
    let mut sampler = Sampler::seeded(seed);
    for i in 0..samples {
        let (ctx, pool, max) = &zoo[i % zoo.len()];
        let alphabet = Alphabet::new(2)?;
        let t1 = sampler.rule(ctx, &alphabet, pool, *max)?;
        let t2 = sampler.rule(ctx, &alphabet, pool, *max)?;
        let t3 = sampler.rule(ctx, &alphabet, pool, 2)?;
        let left = t1.star(&t2)?.star(&t3)?;
        let right = t1.star(&t2.star(&t3)?)?;
        if !left.equals(&right)? {
            return Ok(SuiteResult {
                lines: vec![format!("monoid/associativity: {i}/{samples} pass")],
                violation: Some(format!(
                    "associativity fails on sample {i}:\n  a: {}\n  b: {}\n  c: {}",
                    describe_rule(&t1),
                    describe_rule(&t2),
                    describe_rule(&t3)
                )),
            });
        }
    }
    let assoc_line = format!("monoid/associativity: {samples}/{samples} pass");
    for i in 0..samples {
        let (ctx, pool, max) = &zoo[i % zoo.len()];
        let alphabet = Alphabet::new(2)?;
        let t = sampler.rule(ctx, &alphabet, pool, *max)?;
        let p1 = identity_rule(ctx, &alphabet);
        if !t.star(&p1)?.equals(&t)? || !p1.star(&t)?.equals(&t)? {
            return Ok(SuiteResult {
                lines: vec![assoc_line, format!("monoid/identity: {i}/{samples} pass")],
                violation: Some(format!(
                    "p1 is not an identity for sample {i}:\n  {}",
                    describe_rule(&t)
                )),
            });
        }
    }
    Ok(SuiteResult::pass(vec![
        assoc_line,
        format!("monoid/identity: {samples}/{samples} pass"),
    ]))
}

/// Global maps commute with the shift action.
pub fn equivariance(samples: usize, seed: u64) -> Result<SuiteResult> {
    let zoo = group_zoo();
    let mut sampler = Sampler::seeded(seed);
    for i in 0..samples {
        let (ctx, pool, max) = &zoo[i % zoo.len()];
        let alphabet = Alphabet::new(2)?;
        let t = sampler.rule(ctx, &alphabet, pool, *max)?;
        let x = sampler.probe(ctx, &alphabet)?;
        let shifts: Vec<GroupElement> = match ctx.order() {
            Some(_) => ctx.enumerate()?.iter().cloned().collect(),
            None => ctx.ball(2)?.iter().cloned().collect(),
        };
        let tx = t.apply(&x)?;
        for h in &shifts {
            let lhs = t.apply(&x.shift(ctx, h)?)?;
            let rhs = tx.shift(ctx, h)?;
            if lhs != rhs {
                return Ok(SuiteResult {
                    lines: vec![format!("equivariance: {i}/{samples} pass")],
                    violation: Some(format!(
                        "equivariance fails at h = {h} on sample {i}:\n  {}",
                        describe_rule(&t)
                    )),
                });
            }
        }
    }
    Ok(SuiteResult::pass(vec![format!(
        "equivariance: {samples}/{samples} pass"
    )]))
}

fn all_subsets(universe: &FiniteSubset) -> Vec<FiniteSubset> {
    let n = universe.len();
    (0..1usize << n)
        .map(|mask| {
            FiniteSubset::new(
                universe
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, g)| g.clone())
                    .collect(),
            )
        })
        .collect()
}

fn check_intersection_closure(rule: &RuleTable) -> Result<Option<String>> {
    let subsets = all_subsets(rule.memory());
    let valid: Vec<&FiniteSubset> = subsets
        .iter()
        .filter(|s| is_memory_subset(rule, s).unwrap())
        .collect();
    for a in &valid {
        for b in &valid {
            if !is_memory_subset(rule, &a.intersection(b))? {
                return Ok(Some(format!(
                    "memory sets {a} and {b} intersect outside the family for {}",
                    describe_rule(rule)
                )));
            }
        }
    }
    let minimal = minimize(rule)?;
    let mut meet = rule.memory().clone();
    for s in &valid {
        meet = meet.intersection(s);
        if !minimal.rule().memory().is_subset(s) {
            return Ok(Some(format!(
                "dependence set is not minimal against {s} for {}",
                describe_rule(rule)
            )));
        }
    }
    if &meet != minimal.rule().memory() {
        return Ok(Some(format!(
            "dependence set differs from the intersection of all memory sets for {}",
            describe_rule(rule)
        )));
    }
    Ok(None)
}

/// Memory sets over Z/4 are intersection-closed with the dependence set
/// as minimum: exhaustive for |S| ≤ 3, plus sampled full-memory rules.
pub fn corollary_b(samples: usize, seed: u64) -> Result<SuiteResult> {
    let z4 = GroupContext::cyclic(4)?;
    let alphabet = Alphabet::new(2)?;
    let pool = z4.enumerate()?;
    let mut checked = 0usize;
    for memory in all_subsets(&pool).into_iter().filter(|s| s.len() <= 3) {
        let entries = 1usize << (1 << memory.len());
        for bits in 0..entries {
            let table: Vec<Symbol> = (0..1 << memory.len())
                .map(|i| ((bits >> i) & 1) as Symbol)
                .collect();
            let rule = RuleTable::new(z4.clone(), alphabet.clone(), memory.clone(), table)?;
            if let Some(v) = check_intersection_closure(&rule)? {
                return Ok(SuiteResult {
                    lines: vec![format!("corollaryB: {checked}/? pass")],
                    violation: Some(v),
                });
            }
            checked += 1;
        }
    }
    let mut sampler = Sampler::seeded(seed);
    for _ in 0..samples {
        let table = (0..16).map(|_| sampler.symbol(&alphabet)).collect();
        let rule = RuleTable::new(z4.clone(), alphabet.clone(), pool.clone(), table)?;
        if let Some(v) = check_intersection_closure(&rule)? {
            return Ok(SuiteResult {
                lines: vec![format!("corollaryB: {checked}/? pass")],
                violation: Some(v),
            });
        }
        checked += 1;
    }
    Ok(SuiteResult::pass(vec![format!(
        "corollaryB: {checked}/{checked} pass"
    )]))
}
