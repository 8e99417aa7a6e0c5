//! Cellular automata as finite rule tables.
//!
//! A `RuleTable` is a pair `(S, μ)`: a finite memory set and a local
//! defining function stored as a flat table. It acts in two equivalent
//! ways: as the global map `T` with `T(x)(g) = μ((g⁻¹·x)|_S)` and as the
//! local function `f_T(x) = T(x)(1)`. Composition is available twice
//! over: symbolically on tables (`star`) and by actually composing the
//! global maps (`compose_global`); the two must agree, and tests lean on
//! that redundancy.
//!
//! Table indexing convention: the pattern `p` on the canonically ordered
//! memory set `S` is stored at index `Σ_i p(S[i])·k^i`, i.e. `S[0]` is
//! the least significant coordinate.

use crate::config::{checked_power, Alphabet, Configuration, Symbol};
use crate::error::{Error, Result};
use crate::group::{FiniteSubset, GroupContext, GroupElement};

/// Default cap on table sizes produced by composition.
pub const DEFAULT_TABLE_CAP: usize = 1 << 20;

/// Built-in rule names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 6] = [
    "identity",
    "const:<c>",
    "xor",
    "majority3",
    "rule110",
    "shift_right",
];

/// Encodes pattern values over a memory set into a table index.
pub fn pattern_index(k: usize, values: &[Symbol]) -> usize {
    let mut idx = 0usize;
    for &v in values.iter().rev() {
        idx = idx * k + v as usize;
    }
    idx
}

/// Decodes a table index back into pattern values.
pub fn pattern_digits(k: usize, len: usize, mut idx: usize) -> Vec<Symbol> {
    let mut out = vec![0 as Symbol; len];
    for slot in out.iter_mut() {
        *slot = (idx % k) as Symbol;
        idx /= k;
    }
    out
}

/// A cellular automaton `(S, μ)` over a fixed group and alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleTable {
    ctx: GroupContext,
    alphabet: Alphabet,
    memory: FiniteSubset,
    table: Vec<Symbol>,
}

impl RuleTable {
    /// Validates lengths and symbol ranges. An empty memory set is a
    /// constant rule with a one-entry table.
    pub fn new(
        ctx: GroupContext,
        alphabet: Alphabet,
        memory: FiniteSubset,
        table: Vec<Symbol>,
    ) -> Result<RuleTable> {
        for g in memory.iter() {
            ctx.validate(g)?;
        }
        let expected = checked_power(alphabet.size(), memory.len(), usize::MAX, "rule table")?;
        if table.len() != expected {
            return Err(Error::InvalidElement(format!(
                "table of {} entries for k^|S| = {expected}",
                table.len()
            )));
        }
        for &v in &table {
            alphabet.check_symbol(v)?;
        }
        Ok(RuleTable {
            ctx,
            alphabet,
            memory,
            table,
        })
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn memory(&self) -> &FiniteSubset {
        &self.memory
    }

    pub fn table(&self) -> &[Symbol] {
        &self.table
    }

    /// Applies `μ` to pattern values aligned with the memory set.
    pub fn mu(&self, values: &[Symbol]) -> Symbol {
        self.table[pattern_index(self.alphabet.size(), values)]
    }

    /// Largest word length over the memory set (0 for constants).
    pub fn radius(&self) -> Result<u32> {
        let mut r = 0;
        for g in self.memory.iter() {
            r = r.max(self.ctx.word_length(g)?);
        }
        Ok(r)
    }

    fn check_compatible(&self, other: &RuleTable) -> Result<()> {
        self.alphabet.check_compatible(&other.alphabet)?;
        if self.ctx != other.ctx {
            return Err(Error::Domain(
                "rules are defined over different groups".into(),
            ));
        }
        Ok(())
    }

    /// The local function `f_T(x) = T(x)(1) = μ(x|_S)`.
    pub fn local_eval(&self, x: &Configuration) -> Result<Symbol> {
        let p = x.restrict(&self.ctx, &self.memory)?;
        Ok(self.mu(p.values()))
    }

    /// `T(x)(g) = μ(s ↦ x(g·s))`, computed without materializing the
    /// shifted configuration.
    pub fn apply_at(&self, x: &Configuration, g: &GroupElement) -> Result<Symbol> {
        let mut values = Vec::with_capacity(self.memory.len());
        for s in self.memory.iter() {
            values.push(x.eval(&self.ctx, &self.ctx.op(g, s)?)?);
        }
        Ok(self.mu(&values))
    }

    /// The global map `T`, preserving the presentation kind: full tables
    /// map to full tables, periodic configurations keep their periods,
    /// and finitely supported configurations stay finitely supported with
    /// support inside `supp(x)·S⁻¹`.
    pub fn apply(&self, x: &Configuration) -> Result<Configuration> {
        match x {
            Configuration::FullTable { .. } => {
                let elems = self.ctx.enumerate()?;
                let mut cells = Vec::with_capacity(elems.len());
                for g in elems.iter() {
                    cells.push(self.apply_at(x, g)?);
                }
                Ok(Configuration::FullTable { cells })
            }
            Configuration::Periodic { periods, cells } => {
                let mut out = Vec::with_capacity(cells.len());
                let mut coords = vec![0i64; periods.len()];
                for _ in 0..cells.len() {
                    out.push(self.apply_at(x, &GroupElement::Integers(coords.clone()))?);
                    for (c, &p) in coords.iter_mut().zip(periods.iter()).rev() {
                        *c += 1;
                        if *c < p as i64 {
                            break;
                        }
                        *c = 0;
                    }
                }
                Ok(Configuration::Periodic {
                    periods: periods.clone(),
                    cells: out,
                })
            }
            Configuration::FiniteSupport { background, support } => {
                let new_bg = self.mu(&vec![*background; self.memory.len()]);
                let mut candidates = std::collections::BTreeSet::new();
                for u in support.keys() {
                    for s in self.memory.iter() {
                        candidates.insert(self.ctx.op(u, &self.ctx.inv(s)?)?);
                    }
                }
                let mut entries = Vec::new();
                for g in candidates {
                    let v = self.apply_at(x, &g)?;
                    entries.push((g, v));
                }
                Configuration::finite_support(&self.ctx, &self.alphabet, new_bg, entries)
            }
        }
    }

    /// The symbolic ∗-composition: memory `S1·S2`, table entry at `p`
    /// given by `μ1(s ↦ μ2(t ↦ p(s·t)))`.
    pub fn star(&self, other: &RuleTable) -> Result<RuleTable> {
        self.star_capped(other, DEFAULT_TABLE_CAP)
    }

    pub fn star_capped(&self, other: &RuleTable, cap: usize) -> Result<RuleTable> {
        self.check_compatible(other)?;
        let k = self.alphabet.size();
        let memory = self.ctx.product_set(&self.memory, &other.memory)?;
        let len = checked_power(k, memory.len(), cap, "star composition")?;

        // positions[a][b] = index in the composite memory of S1[a]·S2[b]
        let mut positions = Vec::with_capacity(self.memory.len());
        for s1 in self.memory.iter() {
            let mut row = Vec::with_capacity(other.memory.len());
            for s2 in other.memory.iter() {
                let prod = self.ctx.op(s1, s2)?;
                row.push(memory.position(&prod).expect("product set contains products"));
            }
            positions.push(row);
        }

        let mut table = Vec::with_capacity(len);
        let mut inner = vec![0 as Symbol; other.memory.len()];
        let mut outer = vec![0 as Symbol; self.memory.len()];
        for idx in 0..len {
            let digits = pattern_digits(k, memory.len(), idx);
            for (a, row) in positions.iter().enumerate() {
                for (b, &pos) in row.iter().enumerate() {
                    inner[b] = digits[pos];
                }
                outer[a] = other.mu(&inner);
            }
            table.push(self.mu(&outer));
        }
        RuleTable::new(self.ctx.clone(), self.alphabet.clone(), memory, table)
    }

    /// Ordinary composition of the global maps, used as an independent
    /// oracle for `star`. Each table entry is computed by realizing the
    /// pattern as a finitely supported configuration (background 0
    /// elsewhere), applying the two global maps in order, and reading the
    /// result at the identity. The background extension is sound because
    /// `S1·S2` is a memory set for the composite.
    pub fn compose_global(&self, other: &RuleTable) -> Result<RuleTable> {
        self.compose_global_capped(other, DEFAULT_TABLE_CAP)
    }

    pub fn compose_global_capped(&self, other: &RuleTable, cap: usize) -> Result<RuleTable> {
        self.check_compatible(other)?;
        let k = self.alphabet.size();
        let memory = self.ctx.product_set(&self.memory, &other.memory)?;
        let len = checked_power(k, memory.len(), cap, "global composition")?;
        let identity = self.ctx.identity();

        let mut table = Vec::with_capacity(len);
        for idx in 0..len {
            let digits = pattern_digits(k, memory.len(), idx);
            let x = Configuration::finite_support(
                &self.ctx,
                &self.alphabet,
                0,
                memory.iter().cloned().zip(digits.iter().copied()),
            )?;
            let y = other.apply(&x)?;
            let z = self.apply(&y)?;
            table.push(z.eval(&self.ctx, &identity)?);
        }
        RuleTable::new(self.ctx.clone(), self.alphabet.clone(), memory, table)
    }

    /// Extensional equality: canonical forms are identical.
    pub fn equals(&self, other: &RuleTable) -> Result<bool> {
        if self.ctx != other.ctx || self.alphabet.size() != other.alphabet.size() {
            return Ok(false);
        }
        let a = crate::memory::minimize(self)?;
        let b = crate::memory::minimize(other)?;
        Ok(a.rule() == b.rule())
    }
}

/// The projection rule `p₁(x) = x(1)`: memory `{1}`, identity table.
pub fn identity_rule(ctx: &GroupContext, alphabet: &Alphabet) -> RuleTable {
    let memory = FiniteSubset::singleton(ctx.identity());
    let table = (0..alphabet.size() as u16).map(|v| v as Symbol).collect();
    RuleTable::new(ctx.clone(), alphabet.clone(), memory, table)
        .expect("identity rule is always valid")
}

/// The constant rule with empty memory set.
pub fn constant_rule(ctx: &GroupContext, alphabet: &Alphabet, value: Symbol) -> Result<RuleTable> {
    alphabet.check_symbol(value)?;
    RuleTable::new(
        ctx.clone(),
        alphabet.clone(),
        FiniteSubset::empty(),
        vec![value],
    )
}

/// Built-in rules over Z with a binary alphabet.
///
/// `rule110` uses the standard Wolfram numbering, where `p(-1)` is the
/// most significant bit of the Wolfram index (the internal table stays in
/// the crate's own indexing convention).
pub fn builtin(name: &str) -> Result<RuleTable> {
    let ctx = GroupContext::integers(1)?;
    let alphabet = Alphabet::new(2)?;
    let zi = |x: i64| GroupElement::Integers(vec![x]);
    if let Some(c) = name.strip_prefix("const:") {
        let value: Symbol = c
            .parse()
            .map_err(|_| Error::Parse(format!("bad constant symbol {c:?}")))?;
        return constant_rule(&ctx, &alphabet, value);
    }
    match name {
        "identity" => Ok(identity_rule(&ctx, &alphabet)),
        "xor" => {
            let memory = FiniteSubset::new(vec![zi(0), zi(1)]);
            // index = p(0) + 2·p(1)
            RuleTable::new(ctx, alphabet, memory, vec![0, 1, 1, 0])
        }
        "majority3" => {
            let memory = FiniteSubset::new(vec![zi(-1), zi(0), zi(1)]);
            let table = (0..8)
                .map(|idx| {
                    let d = pattern_digits(2, 3, idx);
                    ((d[0] + d[1] + d[2]) >= 2) as Symbol
                })
                .collect();
            RuleTable::new(ctx, alphabet, memory, table)
        }
        "rule110" => wolfram(110),
        "shift_right" => {
            // T(x)(g) = x(g+1)
            let memory = FiniteSubset::singleton(zi(1));
            RuleTable::new(ctx, alphabet, memory, vec![0, 1])
        }
        _ => Err(Error::Parse(format!(
            "unknown builtin rule {name:?} (expected one of {BUILTIN_NAMES:?})"
        ))),
    }
}

/// An elementary cellular automaton by Wolfram number.
pub fn wolfram(number: u8) -> Result<RuleTable> {
    let ctx = GroupContext::integers(1)?;
    let alphabet = Alphabet::new(2)?;
    let zi = |x: i64| GroupElement::Integers(vec![x]);
    let memory = FiniteSubset::new(vec![zi(-1), zi(0), zi(1)]);
    let table = (0..8)
        .map(|idx| {
            // digits follow S = [-1, 0, 1]; the Wolfram index reads
            // (left, center, right) with left most significant
            let d = pattern_digits(2, 3, idx);
            let w = 4 * d[0] + 2 * d[1] + d[2];
            (number >> w) & 1
        })
        .collect();
    RuleTable::new(ctx, alphabet, memory, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::all_configurations;

    fn z() -> GroupContext {
        GroupContext::integers(1).unwrap()
    }

    fn zi(x: i64) -> GroupElement {
        GroupElement::Integers(vec![x])
    }

    fn k2() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn xor() -> RuleTable {
        builtin("xor").unwrap()
    }

    fn delta0() -> Configuration {
        let g = z();
        Configuration::finite_support(&g, &k2(), 0, [(g.identity(), 1)]).unwrap()
    }

    #[test]
    fn pattern_codec() {
        assert_eq!(pattern_index(2, &[1, 0, 1]), 5);
        assert_eq!(pattern_digits(2, 3, 5), vec![1, 0, 1]);
        assert_eq!(pattern_index(3, &[2, 1]), 5);
        assert_eq!(pattern_index(2, &[]), 0);
        for idx in 0..27 {
            assert_eq!(pattern_index(3, &pattern_digits(3, 3, idx)), idx);
        }
    }

    #[test]
    fn xor_local_eval_and_apply_at() {
        let t = xor();
        let x = delta0();
        assert_eq!(t.local_eval(&x).unwrap(), 1); // x(0) ⊕ x(1) = 1
        assert_eq!(t.apply_at(&x, &zi(0)).unwrap(), 1);
        assert_eq!(t.apply_at(&x, &zi(-1)).unwrap(), 1); // x(-1) ⊕ x(0)
        assert_eq!(t.apply_at(&x, &zi(3)).unwrap(), 0);
        // f_T(x) = T(x)(1) at the identity, by definition.
        assert_eq!(t.local_eval(&x).unwrap(), t.apply_at(&x, &z().identity()).unwrap());
    }

    #[test]
    fn xor_apply_finite_support() {
        let t = xor();
        let y = t.apply(&delta0()).unwrap();
        let want =
            Configuration::finite_support(&z(), &k2(), 0, [(zi(-1), 1), (zi(0), 1)]).unwrap();
        assert_eq!(y, want);
        // Cross-check against a plain pointwise sweep.
        for g in -4..=4 {
            assert_eq!(
                y.eval(&z(), &zi(g)).unwrap(),
                t.apply_at(&delta0(), &zi(g)).unwrap()
            );
        }
    }

    #[test]
    fn identity_and_constant_rules() {
        let g = z();
        let a = k2();
        let p1 = identity_rule(&g, &a);
        let x = delta0();
        assert_eq!(p1.local_eval(&x).unwrap(), 1);
        assert_eq!(p1.apply(&x).unwrap(), x);

        let c0 = constant_rule(&g, &a, 0).unwrap();
        assert_eq!(c0.local_eval(&x).unwrap(), 0);
        assert_eq!(c0.apply(&x).unwrap(), Configuration::constant(&a, 0).unwrap());
        assert!(constant_rule(&g, &a, 2).is_err());

        let z3 = GroupContext::cyclic(3).unwrap();
        let a3 = Alphabet::new(3).unwrap();
        let p1 = identity_rule(&z3, &a3);
        assert_eq!(p1.table(), &[0, 1, 2]);
        assert_eq!(p1.memory().elements(), &[GroupElement::Finite(0)]);
    }

    #[test]
    fn star_xor_xor_is_second_difference() {
        let t = xor().star(&xor()).unwrap();
        assert_eq!(t.memory().elements(), &[zi(0), zi(1), zi(2)]);
        // (p(0)⊕p(1)) ⊕ (p(1)⊕p(2)) = p(0) ⊕ p(2): the middle coordinate
        // is dead.
        let want: Vec<Symbol> = (0..8)
            .map(|idx| {
                let d = pattern_digits(2, 3, idx);
                d[0] ^ d[2]
            })
            .collect();
        assert_eq!(t.table(), want.as_slice());
    }

    #[test]
    fn star_identity_laws() {
        let g = z();
        let a = k2();
        let p1 = identity_rule(&g, &a);
        let t = xor();
        assert!(t.star(&p1).unwrap().equals(&t).unwrap());
        assert!(p1.star(&t).unwrap().equals(&t).unwrap());
    }

    #[test]
    fn star_with_constants() {
        let g = z();
        let a = k2();
        let c1 = constant_rule(&g, &a, 1).unwrap();
        let t = xor();
        // Outer constant ignores the input entirely.
        let left = c1.star(&t).unwrap();
        assert!(left.memory().is_empty());
        assert_eq!(left.table(), &[1]);
        // xor ∗ const1 sees the all-ones configuration: 1⊕1 = 0.
        let right = t.star(&c1).unwrap();
        assert!(right.memory().is_empty());
        assert_eq!(right.table(), &[0]);
    }

    #[test]
    fn compose_global_matches_star() {
        let s = xor().star(&xor()).unwrap();
        let c = xor().compose_global(&xor()).unwrap();
        assert_eq!(s, c);
        assert!(s.equals(&c).unwrap());

        let g = z();
        let a = k2();
        let p1 = identity_rule(&g, &a);
        assert!(xor().compose_global(&p1).unwrap().equals(&xor()).unwrap());

        let c0 = constant_rule(&g, &a, 0).unwrap();
        let cc = c0.compose_global(&xor()).unwrap();
        assert!(cc.equals(&c0).unwrap());
    }

    #[test]
    fn equals_distinguishes_rules() {
        let g = z();
        let a = k2();
        let p1 = identity_rule(&g, &a);
        let c0 = constant_rule(&g, &a, 0).unwrap();
        assert!(!p1.equals(&c0).unwrap());
        assert!(p1.equals(&p1).unwrap());
        // Different group entirely: unequal, not an error.
        let p1_z2 = identity_rule(&GroupContext::cyclic(2).unwrap(), &a);
        assert!(!p1.equals(&p1_z2).unwrap());
    }

    #[test]
    fn star_cap_is_enforced() {
        let e = xor().star_capped(&xor(), 4).unwrap_err();
        assert!(matches!(e, Error::CapExceeded { required: 8, cap: 4, .. }));
    }

    #[test]
    fn mismatched_systems_are_rejected() {
        let z2 = GroupContext::cyclic(2).unwrap();
        let a = k2();
        let p1 = identity_rule(&z2, &a);
        assert!(xor().star(&p1).is_err());
        let a3 = Alphabet::new(3).unwrap();
        let q = identity_rule(&z(), &a3);
        assert!(matches!(
            xor().star(&q),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn rule110_wolfram_numbering() {
        let t = builtin("rule110").unwrap();
        // Wolfram truth table for 110: 111→0 110→1 101→1 100→0
        //                              011→1 010→1 001→1 000→0
        let cases = [
            ([1, 1, 1], 0),
            ([1, 1, 0], 1),
            ([1, 0, 1], 1),
            ([1, 0, 0], 0),
            ([0, 1, 1], 1),
            ([0, 1, 0], 1),
            ([0, 0, 1], 1),
            ([0, 0, 0], 0),
        ];
        for ([l, c, r], want) in cases {
            // internal digits follow S = [-1, 0, 1]
            assert_eq!(t.mu(&[l, c, r]), want, "lcr={l}{c}{r}");
        }
    }

    #[test]
    fn shift_right_reads_ahead() {
        let t = builtin("shift_right").unwrap();
        let x = delta0();
        assert_eq!(t.apply_at(&x, &zi(-1)).unwrap(), 1);
        assert_eq!(t.apply_at(&x, &zi(0)).unwrap(), 0);
    }

    #[test]
    fn builtin_rejects_unknown() {
        assert!(builtin("nope").is_err());
        assert!(builtin("const:7").is_err());
        assert_eq!(builtin("const:1").unwrap().table(), &[1]);
    }

    #[test]
    fn apply_preserves_periods() {
        let g = z();
        let a = k2();
        let t = builtin("rule110").unwrap();
        let x = Configuration::periodic(&g, &a, vec![4], vec![0, 1, 1, 0]).unwrap();
        let y = t.apply(&x).unwrap();
        let Configuration::Periodic { periods, .. } = &y else {
            panic!("expected periodic output");
        };
        assert_eq!(periods, &vec![4]);
        for p in -6..=6 {
            assert_eq!(
                y.eval(&g, &zi(p)).unwrap(),
                t.apply_at(&x, &zi(p)).unwrap()
            );
        }
    }

    #[test]
    fn equivariance_exhaustive_small_finite() {
        // All configurations, all shifts: Z/4 with k=2 and Z/3 with k=3.
        let cases = [
            (GroupContext::cyclic(4).unwrap(), k2(), vec![0, 1, 1, 1]),
            (
                GroupContext::cyclic(3).unwrap(),
                Alphabet::new(3).unwrap(),
                vec![0, 1, 2, 2, 1, 0, 1, 2, 0],
            ),
        ];
        for (ctx, a, table) in cases {
            let elems = ctx.enumerate().unwrap();
            let memory = FiniteSubset::new(vec![GroupElement::Finite(0), GroupElement::Finite(1)]);
            let t = RuleTable::new(ctx.clone(), a.clone(), memory, table).unwrap();
            for x in all_configurations(&ctx, &a, 4096).unwrap() {
                let tx = t.apply(&x).unwrap();
                for h in elems.iter() {
                    let lhs = t.apply(&x.shift(&ctx, h).unwrap()).unwrap();
                    let rhs = tx.shift(&ctx, h).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn radius_of_builtins() {
        assert_eq!(builtin("identity").unwrap().radius().unwrap(), 0);
        assert_eq!(builtin("const:0").unwrap().radius().unwrap(), 0);
        assert_eq!(builtin("xor").unwrap().radius().unwrap(), 1);
        assert_eq!(builtin("rule110").unwrap().radius().unwrap(), 1);
    }
}
