//! Entourage calculus on `A^G` for finite groups, and rule inference
//! from black-box local maps.
//!
//! For a finite group the basic entourages `W_Ω = {(x,y) : x|_Ω = y|_Ω}`
//! and the diagonal preimages `(f×f)⁻¹(Δ_A)` are finite relations that
//! can be materialized outright, so inclusions like `W_S ⊆ (f×f)⁻¹(Δ_A)`
//! become exact set checks. Over infinite groups nothing finite can
//! certify uniform continuity, so [`infer_from_oracle`] instead reports a
//! rule verified against a deterministic probe family, exact only when
//! the group is finite.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::automaton::{pattern_digits, pattern_index, RuleTable};
use crate::config::{all_configurations, Alphabet, Configuration, Symbol};
use crate::error::{Error, Result};
use crate::group::{Family, FiniteSubset, GroupContext, GroupElement};

/// Cap on `k^n` for relation algebra (at most 4096 pairs per relation).
pub const RELATION_CONFIG_CAP: usize = 64;

/// A finite set of ordered configuration pairs, indexed into the
/// canonical enumeration of `A^G` for a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    configs: usize,
    pairs: Vec<(u32, u32)>,
}

impl Relation {
    fn from_pairs(configs: usize, mut pairs: Vec<(u32, u32)>) -> Relation {
        pairs.sort_unstable();
        pairs.dedup();
        Relation { configs, pairs }
    }

    /// The diagonal Δ on `configs` configurations.
    pub fn diagonal(configs: usize) -> Relation {
        Relation {
            configs,
            pairs: (0..configs as u32).map(|i| (i, i)).collect(),
        }
    }

    pub fn configs(&self) -> usize {
        self.configs
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: (u32, u32)) -> bool {
        self.pairs.binary_search(&pair).is_ok()
    }

    fn check_same_space(&self, other: &Relation) -> Result<()> {
        if self.configs != other.configs {
            return Err(Error::Domain(format!(
                "relations over different spaces: {} vs {} configurations",
                self.configs, other.configs
            )));
        }
        Ok(())
    }
}

fn enumeration(ctx: &GroupContext, alphabet: &Alphabet) -> Result<Vec<Configuration>> {
    all_configurations(ctx, alphabet, RELATION_CONFIG_CAP)
}

fn pairs_within_classes(classes: BTreeMap<Vec<Symbol>, Vec<u32>>, configs: usize) -> Relation {
    let mut pairs = Vec::new();
    for members in classes.into_values() {
        for &x in &members {
            for &y in &members {
                pairs.push((x, y));
            }
        }
    }
    Relation::from_pairs(configs, pairs)
}

/// The basic entourage `W_Ω`: all pairs agreeing on `Ω`.
pub fn basic_entourage(
    ctx: &GroupContext,
    alphabet: &Alphabet,
    omega: &FiniteSubset,
) -> Result<Relation> {
    let all = enumeration(ctx, alphabet)?;
    let mut classes: BTreeMap<Vec<Symbol>, Vec<u32>> = BTreeMap::new();
    for (i, x) in all.iter().enumerate() {
        let key = x.restrict(ctx, omega)?.values().to_vec();
        classes.entry(key).or_default().push(i as u32);
    }
    Ok(pairs_within_classes(classes, all.len()))
}

/// The preimage of the diagonal under `f×f`: all pairs with `f(x) = f(y)`.
pub fn diagonal_preimage<F>(ctx: &GroupContext, alphabet: &Alphabet, mut f: F) -> Result<Relation>
where
    F: FnMut(&Configuration) -> Result<Symbol>,
{
    let all = enumeration(ctx, alphabet)?;
    let mut classes: BTreeMap<Vec<Symbol>, Vec<u32>> = BTreeMap::new();
    for (i, x) in all.iter().enumerate() {
        classes.entry(vec![f(x)?]).or_default().push(i as u32);
    }
    Ok(pairs_within_classes(classes, all.len()))
}

/// Diagonal preimage of a rule's local function.
pub fn rule_diagonal_preimage(rule: &RuleTable) -> Result<Relation> {
    diagonal_preimage(rule.ctx(), rule.alphabet(), |x| rule.local_eval(x))
}

/// Relational composition `R1∘R2 = {(x,y) : ∃z, (x,z)∈R1 ∧ (z,y)∈R2}`.
pub fn compose_relations(r1: &Relation, r2: &Relation) -> Result<Relation> {
    r1.check_same_space(r2)?;
    let n = r1.configs;
    if n > RELATION_CONFIG_CAP {
        return Err(Error::CapExceeded {
            what: "relation composition",
            required: n as u128,
            cap: RELATION_CONFIG_CAP,
        });
    }
    // n ≤ 64, so a row fits in a u64 mask.
    let mut rows2 = vec![0u64; n];
    for &(z, y) in r2.pairs() {
        rows2[z as usize] |= 1u64 << y;
    }
    let mut pairs = Vec::new();
    let mut i = 0;
    let r1p = r1.pairs();
    while i < r1p.len() {
        let x = r1p[i].0;
        let mut mask = 0u64;
        while i < r1p.len() && r1p[i].0 == x {
            mask |= rows2[r1p[i].1 as usize];
            i += 1;
        }
        let mut m = mask;
        while m != 0 {
            let y = m.trailing_zeros();
            pairs.push((x, y));
            m &= m - 1;
        }
    }
    Ok(Relation::from_pairs(n, pairs))
}

/// Set containment of relations over the same space.
pub fn subset(r1: &Relation, r2: &Relation) -> Result<bool> {
    r1.check_same_space(r2)?;
    Ok(r1.pairs().iter().all(|&p| r2.contains(p)))
}

type LocalFn = Box<dyn Fn(&Configuration) -> Result<Symbol>>;
type GlobalFn = Box<dyn Fn(&Configuration, &GroupElement) -> Result<Symbol>>;

/// A black-box local map `f: A^G → A`, assumed deterministic.
pub struct LocalOracle {
    ctx: GroupContext,
    alphabet: Alphabet,
    radius_hint: Option<u32>,
    f: LocalFn,
}

impl LocalOracle {
    pub fn new(
        ctx: GroupContext,
        alphabet: Alphabet,
        f: impl Fn(&Configuration) -> Result<Symbol> + 'static,
    ) -> LocalOracle {
        LocalOracle {
            ctx,
            alphabet,
            radius_hint: None,
            f: Box::new(f),
        }
    }

    /// Wraps a rule's local function, with its radius as the hint.
    pub fn from_rule(rule: RuleTable) -> Result<LocalOracle> {
        let radius = rule.radius()?;
        let ctx = rule.ctx().clone();
        let alphabet = rule.alphabet().clone();
        Ok(LocalOracle {
            ctx,
            alphabet,
            radius_hint: Some(radius),
            f: Box::new(move |x| rule.local_eval(x)),
        })
    }

    pub fn with_radius_hint(mut self, radius: u32) -> LocalOracle {
        self.radius_hint = Some(radius);
        self
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn radius_hint(&self) -> Option<u32> {
        self.radius_hint
    }

    pub fn eval(&self, x: &Configuration) -> Result<Symbol> {
        (self.f)(x)
    }

    /// Evaluates twice and reports an oracle fault on disagreement.
    fn eval_checked(&self, x: &Configuration) -> Result<Symbol> {
        let a = (self.f)(x)?;
        let b = (self.f)(x)?;
        if a != b {
            return Err(Error::OracleFault(format!(
                "two calls on the same configuration returned {a} and {b}"
            )));
        }
        Ok(a)
    }
}

/// Deterministic knobs for [`infer_from_oracle`].
#[derive(Clone, Debug)]
pub struct InferenceOptions {
    /// Random probes per pattern class over infinite groups.
    pub n_random: usize,
    pub seed: u64,
    /// Cap on exhaustive enumeration for finite groups.
    pub config_cap: usize,
    /// Cap on the pattern count per candidate window.
    pub table_cap: usize,
}

impl Default for InferenceOptions {
    fn default() -> Self {
        InferenceOptions {
            n_random: 64,
            seed: 0,
            config_cap: crate::config::DEFAULT_CONFIG_CAP,
            table_cap: crate::automaton::DEFAULT_TABLE_CAP,
        }
    }
}

/// Outcome of rule inference.
#[derive(Debug)]
pub enum Inference {
    /// A rule (already minimized) reproducing the oracle on the probe
    /// family. `exact` is true only for finite groups, where the probe
    /// family is all of `A^G`.
    Inferred {
        rule: RuleTable,
        radius: u32,
        probes: usize,
        exact: bool,
    },
    /// No window up to `r_max` determines the oracle; the witness pair
    /// agrees on `ball(radius)` yet maps to different symbols.
    Undetermined {
        radius: u32,
        probes: usize,
        witness: (Configuration, Configuration),
        values: (Symbol, Symbol),
    },
}

/// Infers a rule table from a local-map oracle, Curtis–Hedlund style:
/// find the smallest `r ≤ r_max` whose ball determines the oracle on the
/// probe family, then read the table off pattern-realizing
/// configurations and minimize it.
pub fn infer_from_oracle(oracle: &LocalOracle, r_max: u32) -> Result<Inference> {
    infer_from_oracle_with(oracle, r_max, &InferenceOptions::default())
}

pub fn infer_from_oracle_with(
    oracle: &LocalOracle,
    r_max: u32,
    opts: &InferenceOptions,
) -> Result<Inference> {
    match oracle.ctx().family() {
        Family::Finite => infer_finite(oracle, r_max, opts),
        Family::Integers | Family::Free => infer_infinite(oracle, r_max, opts),
    }
}

fn infer_finite(oracle: &LocalOracle, r_max: u32, opts: &InferenceOptions) -> Result<Inference> {
    let ctx = oracle.ctx();
    let alphabet = oracle.alphabet();
    let all = all_configurations(ctx, alphabet, opts.config_cap)?;
    let values: Vec<Symbol> = all
        .iter()
        .map(|x| oracle.eval_checked(x))
        .collect::<Result<_>>()?;
    let probes = all.len();

    let mut last_witness = None;
    for r in 0..=r_max {
        let ball = ctx.ball(r)?;
        let mut classes: BTreeMap<Vec<Symbol>, (usize, Symbol)> = BTreeMap::new();
        let mut conflict = None;
        for (i, x) in all.iter().enumerate() {
            let key = x.restrict(ctx, &ball)?.values().to_vec();
            match classes.get(&key) {
                None => {
                    classes.insert(key, (i, values[i]));
                }
                Some(&(j, v)) if v != values[i] => {
                    conflict = Some((j, i));
                    break;
                }
                Some(_) => {}
            }
        }
        match conflict {
            Some((j, i)) => {
                last_witness = Some((r, j, i));
            }
            None => {
                let k = alphabet.size();
                let mut table = vec![0 as Symbol; k.pow(ball.len() as u32)];
                for (key, (_, v)) in classes {
                    table[pattern_index(k, &key)] = v;
                }
                let rule = RuleTable::new(ctx.clone(), alphabet.clone(), ball, table)?;
                return Ok(Inference::Inferred {
                    rule: crate::memory::minimize(&rule)?.into_rule(),
                    radius: r,
                    probes,
                    exact: true,
                });
            }
        }
    }
    let (radius, j, i) = last_witness.expect("some radius was tried");
    Ok(Inference::Undetermined {
        radius,
        probes,
        witness: (all[j].clone(), all[i].clone()),
        values: (values[j], values[i]),
    })
}

fn infer_infinite(oracle: &LocalOracle, r_max: u32, opts: &InferenceOptions) -> Result<Inference> {
    let ctx = oracle.ctx();
    let alphabet = oracle.alphabet();
    let k = alphabet.size();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let mut last_witness: Option<(u32, Configuration, Configuration, Symbol, Symbol)> = None;
    let mut probes_total = 0usize;
    for r in 0..=r_max {
        let ball = ctx.ball(r)?;
        let margin = ctx.ball(r + 1)?;
        let window = ctx.ball(r + 2)?;
        let outside: Vec<&GroupElement> = window.iter().filter(|g| !ball.contains(g)).collect();
        let n_patterns =
            crate::config::checked_power(k, margin.len(), opts.table_cap, "inference probes")?;

        // Pass 1: every pattern on ball(r+1), extended by background 0.
        // Two margin patterns agreeing on ball(r) must agree under f.
        let mut classes: BTreeMap<Vec<Symbol>, (Configuration, Symbol)> = BTreeMap::new();
        let mut conflict = None;
        'patterns: for idx in 0..n_patterns {
            let digits = pattern_digits(k, margin.len(), idx);
            let x = Configuration::finite_support(
                ctx,
                alphabet,
                0,
                margin.iter().cloned().zip(digits.iter().copied()),
            )?;
            let v = oracle.eval_checked(&x)?;
            probes_total += 1;
            let key = x.restrict(ctx, &ball)?.values().to_vec();
            match classes.get(&key) {
                None => {
                    classes.insert(key, (x, v));
                }
                Some((w, u)) if *u != v => {
                    conflict = Some((w.clone(), x, *u, v));
                    break 'patterns;
                }
                Some(_) => {}
            }
        }

        // Pass 2: seeded random finitely supported probes per class, with
        // arbitrary symbols on the next layer out.
        if conflict.is_none() {
            'classes: for (key, (rep, v)) in &classes {
                for _ in 0..opts.n_random {
                    let mut entries: Vec<(GroupElement, Symbol)> =
                        ball.iter().cloned().zip(key.iter().copied()).collect();
                    for g in &outside {
                        entries.push(((*g).clone(), rng.random_range(0..k) as Symbol));
                    }
                    let y = Configuration::finite_support(ctx, alphabet, 0, entries)?;
                    let u = oracle.eval_checked(&y)?;
                    probes_total += 1;
                    if u != *v {
                        conflict = Some((rep.clone(), y, *v, u));
                        break 'classes;
                    }
                }
            }
        }

        match conflict {
            Some((x, y, vx, vy)) => {
                last_witness = Some((r, x, y, vx, vy));
            }
            None => {
                let mut table = vec![0 as Symbol; k.pow(ball.len() as u32)];
                for (key, (_, v)) in classes {
                    table[pattern_index(k, &key)] = v;
                }
                let rule = RuleTable::new(ctx.clone(), alphabet.clone(), ball, table)?;
                return Ok(Inference::Inferred {
                    rule: crate::memory::minimize(&rule)?.into_rule(),
                    radius: r,
                    probes: probes_total,
                    exact: false,
                });
            }
        }
    }
    let (radius, x, y, vx, vy) = last_witness.expect("some radius was tried");
    Ok(Inference::Undetermined {
        radius,
        probes: probes_total,
        witness: (x, y),
        values: (vx, vy),
    })
}

/// A black-box global map `T: A^G → A^G`, read pointwise.
pub struct GlobalOracle {
    ctx: GroupContext,
    alphabet: Alphabet,
    f: GlobalFn,
}

impl GlobalOracle {
    pub fn new(
        ctx: GroupContext,
        alphabet: Alphabet,
        f: impl Fn(&Configuration, &GroupElement) -> Result<Symbol> + 'static,
    ) -> GlobalOracle {
        GlobalOracle {
            ctx,
            alphabet,
            f: Box::new(f),
        }
    }

    pub fn from_rule(rule: RuleTable) -> GlobalOracle {
        let ctx = rule.ctx().clone();
        let alphabet = rule.alphabet().clone();
        GlobalOracle {
            ctx,
            alphabet,
            f: Box::new(move |x, g| rule.apply_at(x, g)),
        }
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn eval_at(&self, x: &Configuration, g: &GroupElement) -> Result<Symbol> {
        (self.f)(x, g)
    }
}

/// Outcome of an equivariance check.
#[derive(Debug)]
pub enum Equivariance {
    Pass {
        checked: usize,
    },
    Counterexample {
        h: GroupElement,
        x: Configuration,
        g: GroupElement,
        lhs: Symbol,
        rhs: Symbol,
    },
}

/// Verifies `T(h·x)(g) = T(x)(h⁻¹g)` for all probes `x` and all `h, g`
/// in the window, returning the first violation.
pub fn equivariance_check(
    oracle: &GlobalOracle,
    probes: &[Configuration],
    window: &FiniteSubset,
) -> Result<Equivariance> {
    let ctx = oracle.ctx();
    let mut checked = 0usize;
    for x in probes {
        for h in window.iter() {
            let hx = x.shift(ctx, h)?;
            let h_inv = ctx.inv(h)?;
            for g in window.iter() {
                let lhs = oracle.eval_at(&hx, g)?;
                let rhs = oracle.eval_at(x, &ctx.op(&h_inv, g)?)?;
                checked += 1;
                if lhs != rhs {
                    return Ok(Equivariance::Counterexample {
                        h: h.clone(),
                        x: x.clone(),
                        g: g.clone(),
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    Ok(Equivariance::Pass { checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{builtin, constant_rule, identity_rule};
    use crate::group::GroupContext;
    use std::cell::Cell;

    fn z2() -> (GroupContext, Alphabet) {
        (GroupContext::cyclic(2).unwrap(), Alphabet::new(2).unwrap())
    }

    fn fin(i: usize) -> GroupElement {
        GroupElement::Finite(i)
    }

    #[test]
    fn basic_entourage_counts() {
        let (g, a) = z2();
        assert_eq!(
            basic_entourage(&g, &a, &FiniteSubset::empty()).unwrap().len(),
            16
        );
        let whole = g.enumerate().unwrap();
        let wg = basic_entourage(&g, &a, &whole).unwrap();
        assert_eq!(wg.len(), 4);
        assert_eq!(wg, Relation::diagonal(4));
        assert_eq!(
            basic_entourage(&g, &a, &FiniteSubset::singleton(fin(0)))
                .unwrap()
                .len(),
            8
        );
    }

    #[test]
    fn composition_with_diagonal() {
        let (g, a) = z2();
        let r = basic_entourage(&g, &a, &FiniteSubset::singleton(fin(0))).unwrap();
        let d = Relation::diagonal(4);
        assert_eq!(compose_relations(&d, &r).unwrap(), r);
        assert_eq!(compose_relations(&r, &d).unwrap(), r);
    }

    #[test]
    fn composing_complementary_windows_gives_everything() {
        let (g, a) = z2();
        let w0 = basic_entourage(&g, &a, &FiniteSubset::singleton(fin(0))).unwrap();
        let w1 = basic_entourage(&g, &a, &FiniteSubset::singleton(fin(1))).unwrap();
        let c = compose_relations(&w0, &w1).unwrap();
        assert_eq!(c.len(), 16);
        let full = basic_entourage(&g, &a, &FiniteSubset::empty()).unwrap();
        assert!(subset(&full, &c).unwrap());
    }

    #[test]
    fn diagonal_preimages() {
        let (g, a) = z2();
        let c = constant_rule(&g, &a, 0).unwrap();
        assert_eq!(rule_diagonal_preimage(&c).unwrap().len(), 16);

        let p1 = identity_rule(&g, &a);
        let v = rule_diagonal_preimage(&p1).unwrap();
        assert_eq!(v.len(), 8);
        assert_eq!(
            v,
            basic_entourage(&g, &a, &FiniteSubset::singleton(fin(0))).unwrap()
        );

        // Over the trivial group, p₁ is a bijection on configurations.
        let z1 = GroupContext::cyclic(1).unwrap();
        let p1 = identity_rule(&z1, &a);
        assert_eq!(rule_diagonal_preimage(&p1).unwrap(), Relation::diagonal(2));
    }

    #[test]
    fn subset_checks() {
        let (g, a) = z2();
        let whole = g.enumerate().unwrap();
        let wg = basic_entourage(&g, &a, &whole).unwrap();
        for omega in [
            FiniteSubset::empty(),
            FiniteSubset::singleton(fin(0)),
            FiniteSubset::singleton(fin(1)),
            whole.clone(),
        ] {
            let w = basic_entourage(&g, &a, &omega).unwrap();
            assert!(subset(&wg, &w).unwrap());
        }
        let w_empty = basic_entourage(&g, &a, &FiniteSubset::empty()).unwrap();
        assert!(!subset(&w_empty, &wg).unwrap());
    }

    #[test]
    fn theorem_a_forward_inclusion() {
        // W_S ⊆ (f_T×f_T)⁻¹(Δ) with S the memory set.
        let z3 = GroupContext::cyclic(3).unwrap();
        let a = Alphabet::new(2).unwrap();
        let memory = FiniteSubset::new(vec![fin(0), fin(1)]);
        for bits in 0..16u8 {
            let table = (0..4).map(|i| (bits >> i) & 1).collect();
            let t = RuleTable::new(z3.clone(), a.clone(), memory.clone(), table).unwrap();
            let ws = basic_entourage(&z3, &a, t.memory()).unwrap();
            let v = rule_diagonal_preimage(&t).unwrap();
            assert!(subset(&ws, &v).unwrap(), "rule {bits:04b}");
        }
    }

    #[test]
    fn cap_on_relation_space() {
        let z8 = GroupContext::cyclic(8).unwrap();
        let a = Alphabet::new(2).unwrap();
        // 2^8 = 256 > 64 configurations.
        assert!(matches!(
            basic_entourage(&z8, &a, &FiniteSubset::empty()),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn infer_identity_oracle() {
        let oracle = LocalOracle::from_rule(builtin("identity").unwrap()).unwrap();
        match infer_from_oracle(&oracle, 2).unwrap() {
            Inference::Inferred { rule, radius, .. } => {
                assert_eq!(radius, 0);
                assert!(rule.equals(&builtin("identity").unwrap()).unwrap());
            }
            other => panic!("expected inference, got {other:?}"),
        }
    }

    #[test]
    fn infer_recovers_builtins() {
        for name in ["xor", "majority3", "rule110", "shift_right", "const:1"] {
            let target = builtin(name).unwrap();
            let r_max = target.radius().unwrap();
            let oracle = LocalOracle::from_rule(target.clone()).unwrap();
            match infer_from_oracle(&oracle, r_max).unwrap() {
                Inference::Inferred { rule, exact, .. } => {
                    assert!(!exact, "Z is infinite");
                    assert_eq!(
                        rule,
                        crate::memory::minimize(&target).unwrap().into_rule(),
                        "{name}"
                    );
                }
                other => panic!("{name}: expected inference, got {other:?}"),
            }
        }
    }

    #[test]
    fn infer_exact_on_finite_groups() {
        let z3 = GroupContext::cyclic(3).unwrap();
        let a = Alphabet::new(2).unwrap();
        let memory = FiniteSubset::new(vec![fin(0), fin(2)]);
        let t = RuleTable::new(z3, a, memory, vec![0, 1, 1, 1]).unwrap();
        let oracle = LocalOracle::from_rule(t.clone()).unwrap();
        match infer_from_oracle(&oracle, 1).unwrap() {
            Inference::Inferred { rule, exact, .. } => {
                assert!(exact);
                assert_eq!(rule, crate::memory::minimize(&t).unwrap().into_rule());
            }
            other => panic!("expected inference, got {other:?}"),
        }
    }

    #[test]
    fn infer_reports_witness_when_window_too_small() {
        // xor∗xor depends on coordinate 2, invisible from ball(1).
        let t = builtin("xor").unwrap().star(&builtin("xor").unwrap()).unwrap();
        let oracle = LocalOracle::from_rule(t.clone()).unwrap();
        match infer_from_oracle(&oracle, 1).unwrap() {
            Inference::Undetermined {
                radius,
                witness,
                values,
                ..
            } => {
                assert_eq!(radius, 1);
                let ball = t.ctx().ball(1).unwrap();
                let (x, y) = &witness;
                assert_eq!(
                    x.restrict(t.ctx(), &ball).unwrap(),
                    y.restrict(t.ctx(), &ball).unwrap()
                );
                assert_ne!(values.0, values.1);
                assert_eq!(t.local_eval(x).unwrap(), values.0);
                assert_eq!(t.local_eval(y).unwrap(), values.1);
            }
            other => panic!("expected witness report, got {other:?}"),
        }
    }

    #[test]
    fn nondeterministic_oracle_faults() {
        let g = GroupContext::integers(1).unwrap();
        let a = Alphabet::new(2).unwrap();
        let coin = Cell::new(0u8);
        let ctx = g.clone();
        let oracle = LocalOracle::new(g, a, move |x| {
            let flip = coin.get();
            coin.set(flip ^ 1);
            Ok(x.eval(&ctx, &GroupElement::Integers(vec![0]))? ^ flip)
        });
        assert!(matches!(
            infer_from_oracle(&oracle, 1),
            Err(Error::OracleFault(_))
        ));
    }

    #[test]
    fn equivariance_of_rule_oracles() {
        let t = builtin("rule110").unwrap();
        let ctx = t.ctx().clone();
        let a = t.alphabet().clone();
        let oracle = GlobalOracle::from_rule(t);
        let probes = vec![
            Configuration::finite_support(&ctx, &a, 0, [(GroupElement::Integers(vec![0]), 1)])
                .unwrap(),
            Configuration::finite_support(
                &ctx,
                &a,
                1,
                [
                    (GroupElement::Integers(vec![1]), 0),
                    (GroupElement::Integers(vec![-2]), 0),
                ],
            )
            .unwrap(),
        ];
        let window = ctx.ball(2).unwrap();
        assert!(matches!(
            equivariance_check(&oracle, &probes, &window).unwrap(),
            Equivariance::Pass { .. }
        ));
    }

    #[test]
    fn position_dependent_map_is_caught() {
        // y(g) = x(g) except y(0) = 1 − x(0): not equivariant.
        let ctx = GroupContext::integers(1).unwrap();
        let a = Alphabet::new(2).unwrap();
        let zero = GroupElement::Integers(vec![0]);
        let flip_origin = {
            let c = ctx.clone();
            let zero = zero.clone();
            GlobalOracle::new(ctx.clone(), a.clone(), move |x, g| {
                let v = x.eval(&c, g)?;
                Ok(if *g == zero { 1 - v } else { v })
            })
        };
        let probes =
            vec![Configuration::finite_support(&ctx, &a, 0, [(zero.clone(), 1)]).unwrap()];
        let window = ctx.ball(1).unwrap();
        match equivariance_check(&flip_origin, &probes, &window).unwrap() {
            Equivariance::Counterexample { h, lhs, rhs, .. } => {
                assert_ne!(h, ctx.identity());
                assert_ne!(lhs, rhs);
            }
            Equivariance::Pass { .. } => panic!("expected a counterexample"),
        }
    }

    #[test]
    fn identity_map_is_equivariant() {
        let ctx = GroupContext::integers(1).unwrap();
        let a = Alphabet::new(2).unwrap();
        let id = {
            let c = ctx.clone();
            GlobalOracle::new(ctx.clone(), a.clone(), move |x, g| x.eval(&c, g))
        };
        let probes = vec![Configuration::finite_support(
            &ctx,
            &a,
            0,
            [(GroupElement::Integers(vec![2]), 1)],
        )
        .unwrap()];
        assert!(matches!(
            equivariance_check(&id, &probes, &ctx.ball(1).unwrap()).unwrap(),
            Equivariance::Pass { .. }
        ));
    }
}
