//! JSON file forms for groups, rules, configurations and subshifts.
//!
//! Group elements appear in files in their text encoding: finite
//! elements as decimal indices, integer coordinates as JSON arrays in a
//! string (e.g. `"[-1]"`), free words as letter strings with uppercase
//! meaning inverse (`"aB"` is a·b⁻¹, `""` the identity). Deserialization
//! therefore needs a group context; the `*_from_json` functions take one
//! and validate everything they touch.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::automaton::RuleTable;
use crate::config::{Alphabet, Configuration, Pattern, Symbol};
use crate::error::{Error, Result};
use crate::group::{Family, FiniteSubset, GroupContext};
use crate::subshift::Sft;

/// Group specification: a shorthand name (`"Z"`, `"Z^2"`, `"Z/4"`,
/// `"F2"`) or an explicit Cayley table.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupJson {
    Name(String),
    Finite {
        table: Vec<Vec<usize>>,
        identity: usize,
    },
}

/// Parses a shorthand group name.
pub fn parse_group_name(name: &str) -> Result<GroupContext> {
    let s = name.trim();
    if s == "Z" {
        return GroupContext::integers(1);
    }
    if let Some(d) = s.strip_prefix("Z^") {
        let d: usize = d
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in {name:?}")))?;
        return GroupContext::integers(d);
    }
    if let Some(n) = s.strip_prefix("Z/") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus in {name:?}")))?;
        if n == 0 {
            return Err(Error::Parse("Z/0 is not a finite group".into()));
        }
        return GroupContext::cyclic(n);
    }
    if let Some(r) = s.strip_prefix('F') {
        let r: usize = r
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in {name:?}")))?;
        return GroupContext::free(r);
    }
    Err(Error::Parse(format!(
        "unknown group {name:?} (expected Z, Z^d, Z/n, Fr, or a Cayley table)"
    )))
}

pub fn group_from_json(spec: &GroupJson) -> Result<GroupContext> {
    match spec {
        GroupJson::Name(name) => parse_group_name(name),
        GroupJson::Finite { table, identity } => GroupContext::finite(table.clone(), *identity),
    }
}

pub fn group_to_json(ctx: &GroupContext) -> GroupJson {
    match ctx.family() {
        Family::Integers => {
            let d = ctx.rank().unwrap();
            GroupJson::Name(if d == 1 { "Z".into() } else { format!("Z^{d}") })
        }
        Family::Free => GroupJson::Name(format!("F{}", ctx.rank().unwrap())),
        Family::Finite => GroupJson::Finite {
            table: ctx.cayley_table().unwrap(),
            identity: ctx.identity_index().unwrap(),
        },
    }
}

/// Configuration file form; `support` keys use the element text encoding.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConfigurationJson {
    Table {
        cells: Vec<Symbol>,
    },
    FiniteSupport {
        background: Symbol,
        support: BTreeMap<String, Symbol>,
    },
    Periodic {
        period: Vec<usize>,
        cells: Vec<Symbol>,
    },
}

pub fn configuration_from_json(
    ctx: &GroupContext,
    alphabet: &Alphabet,
    json: &ConfigurationJson,
) -> Result<Configuration> {
    match json {
        ConfigurationJson::Table { cells } => Configuration::full_table(ctx, alphabet, cells.clone()),
        ConfigurationJson::FiniteSupport { background, support } => {
            let entries = support
                .iter()
                .map(|(key, &v)| Ok((ctx.parse_element(key)?, v)))
                .collect::<Result<Vec<_>>>()?;
            Configuration::finite_support(ctx, alphabet, *background, entries)
        }
        ConfigurationJson::Periodic { period, cells } => {
            Configuration::periodic(ctx, alphabet, period.clone(), cells.clone())
        }
    }
}

pub fn configuration_to_json(config: &Configuration) -> ConfigurationJson {
    match config {
        Configuration::FullTable { cells } => ConfigurationJson::Table { cells: cells.clone() },
        Configuration::FiniteSupport { background, support } => ConfigurationJson::FiniteSupport {
            background: *background,
            support: support
                .iter()
                .map(|(g, &v)| (g.to_string(), v))
                .collect(),
        },
        Configuration::Periodic { periods, cells } => ConfigurationJson::Periodic {
            period: periods.clone(),
            cells: cells.clone(),
        },
    }
}

/// Rule file form: memory in element text encoding, table in the crate's
/// indexing convention (first memory element least significant).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RuleJson {
    pub memory: Vec<String>,
    pub table: Vec<Symbol>,
}

pub fn rule_from_json(ctx: &GroupContext, alphabet: &Alphabet, json: &RuleJson) -> Result<RuleTable> {
    let elements = json
        .memory
        .iter()
        .map(|s| ctx.parse_element(s))
        .collect::<Result<Vec<_>>>()?;
    let memory = FiniteSubset::new(elements.clone());
    if memory.len() != elements.len() {
        return Err(Error::Parse("memory set has duplicate elements".into()));
    }
    // The file lists memory in canonical order so the table indexing is
    // unambiguous.
    if memory.elements() != elements.as_slice() {
        return Err(Error::Parse(
            "memory set is not in canonical order".into(),
        ));
    }
    RuleTable::new(ctx.clone(), alphabet.clone(), memory, json.table.clone())
}

pub fn rule_to_json(rule: &RuleTable) -> RuleJson {
    RuleJson {
        memory: rule.memory().iter().map(|g| g.to_string()).collect(),
        table: rule.table().to_vec(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PatternJson {
    pub domain: Vec<String>,
    pub values: Vec<Symbol>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SftJson {
    pub forbidden: Vec<PatternJson>,
}

pub fn sft_from_json(ctx: &GroupContext, alphabet: &Alphabet, json: &SftJson) -> Result<Sft> {
    let mut forbidden = Vec::with_capacity(json.forbidden.len());
    for p in &json.forbidden {
        let elements = p
            .domain
            .iter()
            .map(|s| ctx.parse_element(s))
            .collect::<Result<Vec<_>>>()?;
        let domain = FiniteSubset::new(elements.clone());
        if domain.len() != elements.len() || domain.elements() != elements.as_slice() {
            return Err(Error::Parse(
                "pattern domain must be distinct and in canonical order".into(),
            ));
        }
        forbidden.push(Pattern::new(alphabet, domain, p.values.clone())?);
    }
    Sft::new(ctx.clone(), alphabet.clone(), forbidden)
}

pub fn sft_to_json(sft: &Sft) -> SftJson {
    SftJson {
        forbidden: sft
            .forbidden()
            .iter()
            .map(|p| PatternJson {
                domain: p.domain().iter().map(|g| g.to_string()).collect(),
                values: p.values().to_vec(),
            })
            .collect(),
    }
}

/// A rule in a system file: a builtin name or an inline table.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RuleSpecJson {
    Builtin(String),
    Table(RuleJson),
}

/// The top-level file the CLI reads: group, alphabet and rule, plus an
/// optional configuration and an optional subshift.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemFile {
    pub group: GroupJson,
    pub alphabet: usize,
    pub rule: RuleSpecJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub configuration: Option<ConfigurationJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sft: Option<SftJson>,
}

/// A resolved system file.
pub struct System {
    pub ctx: GroupContext,
    pub alphabet: Alphabet,
    pub rule: RuleTable,
    pub configuration: Option<Configuration>,
    pub sft: Option<Sft>,
}

fn resolve_rule_name(ctx: &GroupContext, alphabet: &Alphabet, name: &str) -> Result<RuleTable> {
    let name = name.strip_prefix("builtin:").unwrap_or(name);
    if name == "identity" {
        return Ok(crate::automaton::identity_rule(ctx, alphabet));
    }
    if let Some(c) = name.strip_prefix("const:") {
        let value: Symbol = c
            .parse()
            .map_err(|_| Error::Parse(format!("bad constant symbol {c:?}")))?;
        return crate::automaton::constant_rule(ctx, alphabet, value);
    }
    let rule = crate::automaton::builtin(name)?;
    if rule.ctx() != ctx || rule.alphabet().size() != alphabet.size() {
        return Err(Error::Parse(format!(
            "builtin rule {name:?} is defined over Z with alphabet 2; this system differs"
        )));
    }
    Ok(rule)
}

impl SystemFile {
    pub fn resolve(&self) -> Result<System> {
        let ctx = group_from_json(&self.group)?;
        let alphabet = Alphabet::new(self.alphabet)?;
        let rule = match &self.rule {
            RuleSpecJson::Builtin(name) => resolve_rule_name(&ctx, &alphabet, name)?,
            RuleSpecJson::Table(json) => rule_from_json(&ctx, &alphabet, json)?,
        };
        let configuration = self
            .configuration
            .as_ref()
            .map(|c| configuration_from_json(&ctx, &alphabet, c))
            .transpose()?;
        let sft = self
            .sft
            .as_ref()
            .map(|s| sft_from_json(&ctx, &alphabet, s))
            .transpose()?;
        Ok(System {
            ctx,
            alphabet,
            rule,
            configuration,
            sft,
        })
    }

    /// A system file carrying just a rule (for writing composition
    /// results).
    pub fn for_rule(rule: &RuleTable) -> SystemFile {
        SystemFile {
            group: group_to_json(rule.ctx()),
            alphabet: rule.alphabet().size(),
            rule: RuleSpecJson::Table(rule_to_json(rule)),
            configuration: None,
            sft: None,
        }
    }
}
