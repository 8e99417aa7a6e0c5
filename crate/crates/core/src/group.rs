//! Group families with exact element arithmetic.
//!
//! Three concrete families cover the cases the rest of the crate needs:
//! finite groups given by an explicit Cayley table, free abelian groups
//! `Z^d`, and free groups `F_r`. Elements are stored in canonical form
//! (reduced words, exact coordinates), so structural equality is group
//! equality, and every family carries a canonical total order so that
//! finite subsets and rule tables index deterministically.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Which of the three supported families a group belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Finite,
    Integers,
    Free,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Finite => write!(f, "finite"),
            Family::Integers => write!(f, "integers"),
            Family::Free => write!(f, "free"),
        }
    }
}

/// A group element in canonical representation.
///
/// `Finite` holds an index into the Cayley table, `Integers` a coordinate
/// vector of the group's rank, `Free` a reduced word: letter `l > 0` is
/// generator `l-1`, letter `l < 0` its inverse, and no adjacent pair
/// cancels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Finite(usize),
    Integers(Vec<i64>),
    Free(Vec<i32>),
}

impl GroupElement {
    pub fn family(&self) -> Family {
        match self {
            GroupElement::Finite(_) => Family::Finite,
            GroupElement::Integers(_) => Family::Integers,
            GroupElement::Free(_) => Family::Free,
        }
    }

    /// Builds a free-group element, reducing the word if necessary.
    pub fn free(word: impl IntoIterator<Item = i32>) -> GroupElement {
        GroupElement::Free(reduce_word(word))
    }

    fn order_key(&self) -> u8 {
        match self {
            GroupElement::Finite(_) => 0,
            GroupElement::Integers(_) => 1,
            GroupElement::Free(_) => 2,
        }
    }
}

/// Letters order as a < a⁻¹ < b < b⁻¹ < …, words by length first.
fn letter_key(l: i32) -> (i32, bool) {
    (l.abs(), l < 0)
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (GroupElement::Finite(a), GroupElement::Finite(b)) => a.cmp(b),
            (GroupElement::Integers(a), GroupElement::Integers(b)) => a.cmp(b),
            (GroupElement::Free(a), GroupElement::Free(b)) => a
                .len()
                .cmp(&b.len())
                .then_with(|| a.iter().map(|&l| letter_key(l)).cmp(b.iter().map(|&l| letter_key(l)))),
            _ => self.order_key().cmp(&other.order_key()),
        }
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Text encoding: finite index as a decimal, integer coordinates as a
/// JSON array, free words as letters with uppercase meaning inverse.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Finite(i) => write!(f, "{i}"),
            GroupElement::Integers(v) => {
                write!(f, "[")?;
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
            GroupElement::Free(w) => {
                for &l in w {
                    let id = l.unsigned_abs() - 1;
                    if id < 26 {
                        let c = if l > 0 { b'a' + id as u8 } else { b'A' + id as u8 };
                        write!(f, "{}", c as char)?;
                    } else {
                        // Letters past 'z' have no text encoding; contexts
                        // cap the rank at 26, so this only shows up for
                        // hand-built elements.
                        write!(f, "<{l}>")?;
                    }
                }
                Ok(())
            }
        }
    }
}

fn reduce_word(word: impl IntoIterator<Item = i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for l in word {
        if l == 0 {
            continue;
        }
        if out.last().is_some_and(|&p| p == -l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

enum FamilyData {
    Finite {
        n: usize,
        /// Row-major product table: `table[g * n + h] = g·h`.
        table: Vec<usize>,
        identity: usize,
        inverses: Vec<usize>,
    },
    Integers {
        rank: usize,
    },
    Free {
        rank: usize,
    },
}

/// A concrete group together with a generating set closed under inverses.
pub struct GroupContext {
    data: FamilyData,
    generators: Vec<GroupElement>,
}

impl GroupContext {
    /// Finite group from an explicit Cayley table (`table[g][h] = g·h`).
    ///
    /// Validates that the table is a Latin square, that `identity` is a
    /// two-sided identity and that every element has a two-sided inverse.
    pub fn finite(table: Vec<Vec<usize>>, identity: usize) -> Result<GroupContext> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidElement("empty Cayley table".into()));
        }
        if identity >= n {
            return Err(Error::InvalidElement(format!(
                "identity index {identity} out of range for order {n}"
            )));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &table {
            if row.len() != n {
                return Err(Error::InvalidElement(format!(
                    "Cayley table is not square: row of length {} in a table of {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidElement(format!(
                        "Cayley table entry {v} out of range for order {n}"
                    )));
                }
                flat.push(v);
            }
        }
        // Latin square: every row and column is a permutation.
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                let r = flat[i * n + j];
                let c = flat[j * n + i];
                if row_seen[r] || col_seen[c] {
                    return Err(Error::InvalidElement(format!(
                        "Cayley table is not a Latin square at row/column {i}"
                    )));
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }
        for g in 0..n {
            if flat[identity * n + g] != g || flat[g * n + identity] != g {
                return Err(Error::InvalidElement(format!(
                    "index {identity} is not a two-sided identity (fails at {g})"
                )));
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for g in 0..n {
            let inv = (0..n).find(|&h| flat[g * n + h] == identity && flat[h * n + g] == identity);
            match inv {
                Some(h) => inverses[g] = h,
                None => {
                    return Err(Error::InvalidElement(format!(
                        "element {g} has no two-sided inverse"
                    )))
                }
            }
        }
        let generators = (0..n)
            .filter(|&g| g != identity)
            .map(GroupElement::Finite)
            .collect();
        Ok(GroupContext {
            data: FamilyData::Finite {
                n,
                table: flat,
                identity,
                inverses,
            },
            generators,
        })
    }

    /// The cyclic group Z/n as a Cayley table.
    pub fn cyclic(n: usize) -> Result<GroupContext> {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        GroupContext::finite(table, 0)
    }

    /// The free abelian group Z^d with generators ±e_i.
    pub fn integers(rank: usize) -> Result<GroupContext> {
        if rank == 0 {
            return Err(Error::InvalidElement("integer rank must be at least 1".into()));
        }
        let generators = default_integer_generators(rank);
        Ok(GroupContext {
            data: FamilyData::Integers { rank },
            generators,
        })
    }

    /// The free group F_r with the letters and their inverses as generators.
    ///
    /// Rank is capped at 26 so the letter encoding stays total.
    pub fn free(rank: usize) -> Result<GroupContext> {
        if rank == 0 || rank > 26 {
            return Err(Error::InvalidElement(format!(
                "free rank must be in 1..=26, got {rank}"
            )));
        }
        let generators = default_free_generators(rank);
        Ok(GroupContext {
            data: FamilyData::Free { rank },
            generators,
        })
    }

    /// Replaces the generating set. The new set must be valid and closed
    /// under inverses.
    pub fn with_generators(mut self, generators: Vec<GroupElement>) -> Result<GroupContext> {
        for g in &generators {
            self.validate(g)?;
            let inv = self.inv(g)?;
            if !generators.contains(&inv) {
                return Err(Error::InvalidElement(format!(
                    "generator set is not closed under inverses: missing {inv}"
                )));
            }
        }
        self.generators = generators;
        Ok(self)
    }

    pub fn family(&self) -> Family {
        match self.data {
            FamilyData::Finite { .. } => Family::Finite,
            FamilyData::Integers { .. } => Family::Integers,
            FamilyData::Free { .. } => Family::Free,
        }
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Number of elements for finite groups, `None` otherwise.
    pub fn order(&self) -> Option<usize> {
        match self.data {
            FamilyData::Finite { n, .. } => Some(n),
            _ => None,
        }
    }

    pub fn rank(&self) -> Option<usize> {
        match self.data {
            FamilyData::Integers { rank } | FamilyData::Free { rank } => Some(rank),
            FamilyData::Finite { .. } => None,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match &self.data {
            FamilyData::Finite { identity, .. } => GroupElement::Finite(*identity),
            FamilyData::Integers { rank } => GroupElement::Integers(vec![0; *rank]),
            FamilyData::Free { .. } => GroupElement::Free(Vec::new()),
        }
    }

    /// The Cayley table of a finite group, row-major.
    pub fn cayley_table(&self) -> Option<Vec<Vec<usize>>> {
        match &self.data {
            FamilyData::Finite { n, table, .. } => Some(
                (0..*n)
                    .map(|i| table[i * n..(i + 1) * n].to_vec())
                    .collect(),
            ),
            _ => None,
        }
    }

    pub fn identity_index(&self) -> Option<usize> {
        match &self.data {
            FamilyData::Finite { identity, .. } => Some(*identity),
            _ => None,
        }
    }

    /// Checks that `g` belongs to this group and is in canonical form.
    pub fn validate(&self, g: &GroupElement) -> Result<()> {
        match (&self.data, g) {
            (FamilyData::Finite { n, .. }, GroupElement::Finite(i)) => {
                if *i < *n {
                    Ok(())
                } else {
                    Err(Error::InvalidElement(format!(
                        "index {i} out of range for group of order {n}"
                    )))
                }
            }
            (FamilyData::Integers { rank }, GroupElement::Integers(v)) => {
                if v.len() == *rank {
                    Ok(())
                } else {
                    Err(Error::InvalidElement(format!(
                        "coordinate vector of length {} in Z^{rank}",
                        v.len()
                    )))
                }
            }
            (FamilyData::Free { rank }, GroupElement::Free(w)) => {
                for (i, &l) in w.iter().enumerate() {
                    if l == 0 || l.unsigned_abs() as usize > *rank {
                        return Err(Error::InvalidElement(format!(
                            "letter {l} out of range for free rank {rank}"
                        )));
                    }
                    if i + 1 < w.len() && w[i + 1] == -l {
                        return Err(Error::InvalidElement("word is not reduced".into()));
                    }
                }
                Ok(())
            }
            _ => Err(Error::FamilyMismatch {
                expected: self.family(),
                found: g.family(),
            }),
        }
    }

    /// Group product in canonical representation.
    pub fn op(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.validate(g)?;
        self.validate(h)?;
        Ok(match (&self.data, g, h) {
            (FamilyData::Finite { n, table, .. }, GroupElement::Finite(a), GroupElement::Finite(b)) => {
                GroupElement::Finite(table[a * n + b])
            }
            (FamilyData::Integers { .. }, GroupElement::Integers(a), GroupElement::Integers(b)) => {
                GroupElement::Integers(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (FamilyData::Free { .. }, GroupElement::Free(a), GroupElement::Free(b)) => {
                GroupElement::Free(reduce_word(a.iter().chain(b.iter()).copied()))
            }
            _ => unreachable!("validated above"),
        })
    }

    pub fn inv(&self, g: &GroupElement) -> Result<GroupElement> {
        self.validate(g)?;
        Ok(match (&self.data, g) {
            (FamilyData::Finite { inverses, .. }, GroupElement::Finite(a)) => {
                GroupElement::Finite(inverses[*a])
            }
            (FamilyData::Integers { .. }, GroupElement::Integers(v)) => {
                GroupElement::Integers(v.iter().map(|x| -x).collect())
            }
            (FamilyData::Free { .. }, GroupElement::Free(w)) => {
                GroupElement::Free(w.iter().rev().map(|l| -l).collect())
            }
            _ => unreachable!("validated above"),
        })
    }

    fn has_default_generators(&self) -> bool {
        match &self.data {
            FamilyData::Finite { .. } => true,
            FamilyData::Integers { rank } => self.generators == default_integer_generators(*rank),
            FamilyData::Free { rank } => self.generators == default_free_generators(*rank),
        }
    }

    /// All products of at most `r` generators, in canonical order.
    ///
    /// For finite groups the ball saturates once no new elements appear.
    /// For Z^d and F_r the default generators are required, so the result
    /// is the word-metric ball.
    pub fn ball(&self, r: u32) -> Result<FiniteSubset> {
        if !self.has_default_generators() {
            return Err(Error::Domain(format!(
                "ball over {} groups requires the default generating set",
                self.family()
            )));
        }
        let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
        seen.insert(self.identity());
        let mut frontier: Vec<GroupElement> = vec![self.identity()];
        for _ in 0..r {
            let mut next = Vec::new();
            for g in &frontier {
                for s in &self.generators {
                    let gs = self.op(g, s)?;
                    if seen.insert(gs.clone()) {
                        next.push(gs);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Ok(FiniteSubset::from_sorted_set(seen))
    }

    /// The pointwise product set `{s1·s2 : s1 ∈ a, s2 ∈ b}`.
    pub fn product_set(&self, a: &FiniteSubset, b: &FiniteSubset) -> Result<FiniteSubset> {
        let mut out = BTreeSet::new();
        for s1 in a.iter() {
            for s2 in b.iter() {
                out.insert(self.op(s1, s2)?);
            }
        }
        Ok(FiniteSubset::from_sorted_set(out))
    }

    /// All elements of a finite group in canonical order.
    pub fn enumerate(&self) -> Result<FiniteSubset> {
        match self.data {
            FamilyData::Finite { n, .. } => Ok(FiniteSubset {
                elements: (0..n).map(GroupElement::Finite).collect(),
            }),
            _ => Err(Error::Unsupported {
                what: "enumeration",
                family: self.family(),
            }),
        }
    }

    /// Word length of `g` with respect to the default generators.
    pub fn word_length(&self, g: &GroupElement) -> Result<u32> {
        self.validate(g)?;
        match (&self.data, g) {
            (FamilyData::Integers { .. }, GroupElement::Integers(v)) => {
                Ok(v.iter().map(|x| x.unsigned_abs()).sum::<u64>() as u32)
            }
            (FamilyData::Free { .. }, GroupElement::Free(w)) => Ok(w.len() as u32),
            (FamilyData::Finite { n, .. }, _) => {
                // BFS from the identity over the declared generators.
                let mut dist = vec![u32::MAX; *n];
                let e = self.identity();
                let GroupElement::Finite(e_idx) = e else { unreachable!() };
                dist[e_idx] = 0;
                let mut frontier = vec![e];
                let mut d = 0;
                while !frontier.is_empty() {
                    d += 1;
                    let mut next = Vec::new();
                    for x in &frontier {
                        for s in &self.generators {
                            let xs = self.op(x, s)?;
                            let GroupElement::Finite(i) = xs else { unreachable!() };
                            if dist[i] == u32::MAX {
                                dist[i] = d;
                                next.push(xs);
                            }
                        }
                    }
                    frontier = next;
                }
                let GroupElement::Finite(i) = g else { unreachable!() };
                if dist[*i] == u32::MAX {
                    Err(Error::Domain(format!(
                        "element {g} is not generated by the declared generators"
                    )))
                } else {
                    Ok(dist[*i])
                }
            }
            _ => unreachable!("validated above"),
        }
    }

    /// Parses the text encoding of an element of this group.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let g = match self.family() {
            Family::Finite => {
                let i: usize = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad finite element index {s:?}")))?;
                GroupElement::Finite(i)
            }
            Family::Integers => {
                let v: Vec<i64> = serde_json::from_str(s)
                    .map_err(|_| Error::Parse(format!("bad integer coordinates {s:?}")))?;
                GroupElement::Integers(v)
            }
            Family::Free => {
                let mut word = Vec::with_capacity(s.len());
                for c in s.chars() {
                    let l = match c {
                        'a'..='z' => (c as u8 - b'a') as i32 + 1,
                        'A'..='Z' => -((c as u8 - b'A') as i32 + 1),
                        _ => return Err(Error::Parse(format!("bad free-word letter {c:?}"))),
                    };
                    word.push(l);
                }
                GroupElement::free(word)
            }
        };
        self.validate(&g)?;
        Ok(g)
    }
}

impl fmt::Debug for GroupContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.data {
            FamilyData::Finite { n, .. } => write!(f, "GroupContext(finite, order {n})"),
            FamilyData::Integers { rank } => write!(f, "GroupContext(Z^{rank})"),
            FamilyData::Free { rank } => write!(f, "GroupContext(F_{rank})"),
        }
    }
}

impl Clone for GroupContext {
    fn clone(&self) -> Self {
        GroupContext {
            data: match &self.data {
                FamilyData::Finite {
                    n,
                    table,
                    identity,
                    inverses,
                } => FamilyData::Finite {
                    n: *n,
                    table: table.clone(),
                    identity: *identity,
                    inverses: inverses.clone(),
                },
                FamilyData::Integers { rank } => FamilyData::Integers { rank: *rank },
                FamilyData::Free { rank } => FamilyData::Free { rank: *rank },
            },
            generators: self.generators.clone(),
        }
    }
}

impl PartialEq for GroupContext {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
            && match (&self.data, &other.data) {
                (
                    FamilyData::Finite {
                        n: a,
                        table: ta,
                        identity: ia,
                        ..
                    },
                    FamilyData::Finite {
                        n: b,
                        table: tb,
                        identity: ib,
                        ..
                    },
                ) => a == b && ta == tb && ia == ib,
                (FamilyData::Integers { rank: a }, FamilyData::Integers { rank: b }) => a == b,
                (FamilyData::Free { rank: a }, FamilyData::Free { rank: b }) => a == b,
                _ => false,
            }
    }
}

impl Eq for GroupContext {}

fn default_integer_generators(rank: usize) -> Vec<GroupElement> {
    let mut gens = Vec::with_capacity(2 * rank);
    for i in 0..rank {
        for sign in [1i64, -1] {
            let mut v = vec![0i64; rank];
            v[i] = sign;
            gens.push(GroupElement::Integers(v));
        }
    }
    gens
}

fn default_free_generators(rank: usize) -> Vec<GroupElement> {
    let mut gens = Vec::with_capacity(2 * rank);
    for i in 0..rank {
        gens.push(GroupElement::Free(vec![i as i32 + 1]));
        gens.push(GroupElement::Free(vec![-(i as i32 + 1)]));
    }
    gens
}

/// An ordered, duplicate-free set of group elements.
///
/// Elements are kept sorted by the family's canonical order, so two
/// subsets are equal as sets exactly when they are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteSubset {
    elements: Vec<GroupElement>,
}

impl FiniteSubset {
    pub fn new(mut elements: Vec<GroupElement>) -> FiniteSubset {
        elements.sort();
        elements.dedup();
        FiniteSubset { elements }
    }

    fn from_sorted_set(set: BTreeSet<GroupElement>) -> FiniteSubset {
        FiniteSubset {
            elements: set.into_iter().collect(),
        }
    }

    pub fn empty() -> FiniteSubset {
        FiniteSubset { elements: Vec::new() }
    }

    pub fn singleton(g: GroupElement) -> FiniteSubset {
        FiniteSubset { elements: vec![g] }
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GroupElement> {
        self.elements.iter()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.position(g).is_some()
    }

    /// Position of `g` in canonical order, if present.
    pub fn position(&self, g: &GroupElement) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    pub fn is_subset(&self, other: &FiniteSubset) -> bool {
        self.iter().all(|g| other.contains(g))
    }

    pub fn intersection(&self, other: &FiniteSubset) -> FiniteSubset {
        FiniteSubset {
            elements: self
                .iter()
                .filter(|g| other.contains(g))
                .cloned()
                .collect(),
        }
    }

    pub fn union(&self, other: &FiniteSubset) -> FiniteSubset {
        let mut elements = self.elements.clone();
        elements.extend(other.iter().cloned());
        FiniteSubset::new(elements)
    }

    pub fn difference(&self, other: &FiniteSubset) -> FiniteSubset {
        FiniteSubset {
            elements: self
                .iter()
                .filter(|g| !other.contains(g))
                .cloned()
                .collect(),
        }
    }
}

impl std::ops::Index<usize> for FiniteSubset {
    type Output = GroupElement;

    fn index(&self, index: usize) -> &GroupElement {
        &self.elements[index]
    }
}

impl FromIterator<GroupElement> for FiniteSubset {
    fn from_iter<I: IntoIterator<Item = GroupElement>>(iter: I) -> Self {
        FiniteSubset::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a FiniteSubset {
    type Item = &'a GroupElement;
    type IntoIter = std::slice::Iter<'a, GroupElement>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

impl fmt::Display for FiniteSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "(empty)");
        }
        for (i, g) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}
