//! Finite distributive (Brouwer) lattices.
//!
//! Two representations share one element type:
//!
//! - **powerset**: the free Boolean algebra on `k` named generators. An element
//!   is a bit mask, join is union, meet is intersection and implication is
//!   `!a | b`. This is the only atomic mode.
//! - **general**: an arbitrary finite lattice given as a Hasse diagram. The
//!   order, join/meet tables and the implication table are computed and
//!   validated once at build time.
//!
//! Elements remember which lattice produced them; mixing elements of two
//! lattices is rejected with [`LatticeError::LatticeMismatch`].

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest number of generators accepted in powerset mode.
pub const MAX_GENERATORS: usize = 32;

/// General-mode lattices up to this size get a precomputed implication table.
pub const IMPLICATION_TABLE_LIMIT: usize = 4096;

const BOTTOM_NAME: &str = "0";
const TOP_NAME: &str = "1";

static NEXT_LATTICE_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("not a lattice: {a} and {b} have no unique {bound}")]
    NotALattice {
        a: String,
        b: String,
        bound: &'static str,
    },
    #[error("not distributive: {a} ∧ ({b} ∨ {c}) differs from ({a} ∧ {b}) ∨ ({a} ∧ {c})")]
    NotDistributive { a: String, b: String, c: String },
    #[error("not a Brouwer lattice: {a} ⇒ {b} has no greatest candidate")]
    NotBrouwer { a: String, b: String },
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("invalid element name `{0}`: names must be nonempty and contain no whitespace")]
    InvalidName(String),
    #[error("reserved name `{name}` may only denote the {role} element")]
    ReservedName { name: String, role: &'static str },
    #[error("cover relation refers to unknown element `{0}`")]
    UnknownCoverElement(String),
    #[error("cover relation has a cycle through `{0}`")]
    CyclicCovers(String),
    #[error("lattice spec has no elements")]
    Empty,
    #[error("powerset mode supports at most {MAX_GENERATORS} generators, got {0}")]
    TooManyGenerators(usize),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element name `{0}` is ambiguous for these generators")]
    AmbiguousName(String),
    #[error("element index {0} is out of range")]
    IndexOutOfRange(u64),
    #[error("operands belong to different lattices")]
    LatticeMismatch,
    #[error("operation requires an atomic (powerset) lattice")]
    NotAtomic,
}

/// Identity of a built lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeId(u64);

/// One element of a [`Lattice`].
///
/// In powerset mode the index is the generator bit mask; in general mode it is
/// the position in the declared element list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    lattice: LatticeId,
    index: u32,
}

impl Element {
    pub fn index(self) -> u32 {
        self.index
    }

    pub fn lattice_id(self) -> LatticeId {
        self.lattice
    }
}

/// Result of comparing two elements of a partial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// A set of generator indices, used by atom decomposition and the learning
/// algorithm.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorSet(u32);

impl GeneratorSet {
    pub const fn empty() -> Self {
        GeneratorSet(0)
    }

    pub const fn from_bits(bits: u32) -> Self {
        GeneratorSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, generator: usize) -> bool {
        generator < 32 && self.0 >> generator & 1 == 1
    }

    pub fn insert(&mut self, generator: usize) {
        assert!(
            generator < MAX_GENERATORS,
            "generator index {generator} out of range"
        );
        self.0 |= 1 << generator;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        GeneratorSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        GeneratorSet(self.0 & other.0)
    }

    /// Elements of `self` that are not in `other`.
    pub fn difference(self, other: Self) -> Self {
        GeneratorSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.0 >> i & 1 == 1)
    }
}

impl FromIterator<usize> for GeneratorSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = GeneratorSet::empty();
        for g in iter {
            set.insert(g);
        }
        set
    }
}

/// Generator list for powerset mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowersetSpec {
    pub generators: Vec<String>,
}

/// Hasse diagram for general mode. Each cover pair `[x, y]` means `x` is
/// covered by `y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneralSpec {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

/// Declarative description of a lattice, as stored in lattice spec files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeSpec {
    Powerset(PowersetSpec),
    General(GeneralSpec),
}

impl LatticeSpec {
    pub fn powerset<S: Into<String>>(generators: impl IntoIterator<Item = S>) -> Self {
        LatticeSpec::Powerset(PowersetSpec {
            generators: generators.into_iter().map(Into::into).collect(),
        })
    }

    pub fn general<S: Into<String>>(
        elements: impl IntoIterator<Item = S>,
        covers: impl IntoIterator<Item = (S, S)>,
    ) -> Self {
        LatticeSpec::General(GeneralSpec {
            elements: elements.into_iter().map(Into::into).collect(),
            covers: covers
                .into_iter()
                .map(|(a, b)| (a.into(), b.into()))
                .collect(),
        })
    }
}

#[derive(Debug)]
struct Powerset {
    generators: Vec<String>,
    full: u32,
}

#[derive(Debug)]
struct General {
    names: Vec<String>,
    lookup: HashMap<String, u32>,
    bottom: u32,
    top: u32,
    leq: Vec<bool>,
    join: Vec<u32>,
    meet: Vec<u32>,
    implies: Option<Vec<u32>>,
    covers: Vec<(u32, u32)>,
}

impl General {
    fn size(&self) -> usize {
        self.names.len()
    }

    fn at(&self, a: u32, b: u32) -> usize {
        a as usize * self.size() + b as usize
    }

    fn scan_implies(&self, a: u32, b: u32) -> u32 {
        // The greatest c with a ∧ c ≤ b is the join of all such c; validated at build time.
        (0..self.size() as u32)
            .filter(|&c| self.leq[self.at(self.meet[self.at(a, c)], b)])
            .fold(self.bottom, |acc, c| self.join[self.at(acc, c)])
    }
}

#[derive(Debug)]
enum Repr {
    Powerset(Powerset),
    General(General),
}

/// A validated finite distributive lattice with internal implication.
///
/// Immutable after [`Lattice::build`]; share it behind an `Arc`.
#[derive(Debug)]
pub struct Lattice {
    id: LatticeId,
    repr: Repr,
}

fn validate_name(name: &str) -> Result<(), LatticeError> {
    if name.is_empty() || name.chars().any(char::is_whitespace) {
        return Err(LatticeError::InvalidName(name.to_string()));
    }
    Ok(())
}

impl Lattice {
    pub fn build(spec: &LatticeSpec) -> Result<Lattice, LatticeError> {
        let repr = match spec {
            LatticeSpec::Powerset(p) => Repr::Powerset(build_powerset(&p.generators)?),
            LatticeSpec::General(g) => Repr::General(build_general(&g.elements, &g.covers)?),
        };
        Ok(Lattice {
            id: LatticeId(NEXT_LATTICE_ID.fetch_add(1, Ordering::Relaxed)),
            repr,
        })
    }

    /// Powerset lattice on the given generator names.
    pub fn powerset<S: Into<String>>(
        generators: impl IntoIterator<Item = S>,
    ) -> Result<Lattice, LatticeError> {
        Lattice::build(&LatticeSpec::powerset(generators))
    }

    pub fn id(&self) -> LatticeId {
        self.id
    }

    pub fn size(&self) -> usize {
        match &self.repr {
            Repr::Powerset(p) => 1usize << p.generators.len(),
            Repr::General(g) => g.size(),
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self.repr, Repr::Powerset(_))
    }

    /// Generator names in powerset mode.
    pub fn generators(&self) -> Option<&[String]> {
        match &self.repr {
            Repr::Powerset(p) => Some(&p.generators),
            Repr::General(_) => None,
        }
    }

    fn wrap(&self, index: u32) -> Element {
        Element {
            lattice: self.id,
            index,
        }
    }

    pub fn bottom(&self) -> Element {
        match &self.repr {
            Repr::Powerset(_) => self.wrap(0),
            Repr::General(g) => self.wrap(g.bottom),
        }
    }

    pub fn top(&self) -> Element {
        match &self.repr {
            Repr::Powerset(p) => self.wrap(p.full),
            Repr::General(g) => self.wrap(g.top),
        }
    }

    pub fn element(&self, index: u64) -> Result<Element, LatticeError> {
        if index < self.size() as u64 {
            Ok(self.wrap(index as u32))
        } else {
            Err(LatticeError::IndexOutOfRange(index))
        }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.size() as u64).map(move |i| self.wrap(i as u32))
    }

    pub fn contains(&self, e: Element) -> bool {
        e.lattice == self.id
    }

    pub fn check(&self, e: Element) -> Result<Element, LatticeError> {
        if self.contains(e) {
            Ok(e)
        } else {
            Err(LatticeError::LatticeMismatch)
        }
    }

    /// Parses a canonical or declared element name.
    ///
    /// In powerset mode any ordering of the generator names is accepted
    /// (`"cb"` parses to the same element as `"bc"`).
    pub fn parse(&self, name: &str) -> Result<Element, LatticeError> {
        if name == BOTTOM_NAME {
            return Ok(self.bottom());
        }
        if name == TOP_NAME {
            return Ok(self.top());
        }
        match &self.repr {
            Repr::Powerset(p) => parse_powerset(&p.generators, name).map(|m| self.wrap(m)),
            Repr::General(g) => g
                .lookup
                .get(name)
                .map(|&i| self.wrap(i))
                .ok_or_else(|| LatticeError::UnknownElement(name.to_string())),
        }
    }

    /// Canonical name: `"0"` for bottom, `"1"` for top, sorted generator
    /// concatenation in powerset mode, the declared name otherwise.
    pub fn name(&self, e: Element) -> Result<String, LatticeError> {
        self.check(e)?;
        Ok(self.name_raw(e))
    }

    pub(crate) fn name_raw(&self, e: Element) -> String {
        if e == self.bottom() {
            return BOTTOM_NAME.to_string();
        }
        if e == self.top() {
            return TOP_NAME.to_string();
        }
        match &self.repr {
            Repr::Powerset(p) => (0..p.generators.len())
                .filter(|&i| e.index >> i & 1 == 1)
                .map(|i| p.generators[i].as_str())
                .collect(),
            Repr::General(g) => g.names[e.index as usize].clone(),
        }
    }

    /// Adapter implementing `Display` for an element of this lattice.
    pub fn display(&self, e: Element) -> ElementDisplay<'_> {
        ElementDisplay { lattice: self, e }
    }

    pub fn leq(&self, a: Element, b: Element) -> Result<bool, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.leq_raw(a, b))
    }

    pub fn compare(&self, a: Element, b: Element) -> Result<Comparison, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.compare_raw(a, b))
    }

    pub fn join(&self, a: Element, b: Element) -> Result<Element, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.join_raw(a, b))
    }

    pub fn meet(&self, a: Element, b: Element) -> Result<Element, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.meet_raw(a, b))
    }

    /// Relative pseudo-complement: the greatest `c` with `a ∧ c ≤ b`.
    pub fn implies(&self, a: Element, b: Element) -> Result<Element, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.implies_raw(a, b))
    }

    /// `a ⇒ 0`.
    pub fn pseudo_complement(&self, a: Element) -> Result<Element, LatticeError> {
        self.implies(a, self.bottom())
    }

    /// Join of all elements of the iterator; bottom for an empty iterator.
    pub fn join_all(
        &self,
        items: impl IntoIterator<Item = Element>,
    ) -> Result<Element, LatticeError> {
        items
            .into_iter()
            .try_fold(self.bottom(), |acc, e| self.join(acc, e))
    }

    /// Meet of all elements of the iterator; top for an empty iterator.
    pub fn meet_all(
        &self,
        items: impl IntoIterator<Item = Element>,
    ) -> Result<Element, LatticeError> {
        items
            .into_iter()
            .try_fold(self.top(), |acc, e| self.meet(acc, e))
    }

    /// The generators whose join is `a`.
    pub fn atoms_of(&self, a: Element) -> Result<GeneratorSet, LatticeError> {
        self.check(a)?;
        match self.repr {
            Repr::Powerset(_) => Ok(GeneratorSet(a.index)),
            Repr::General(_) => Err(LatticeError::NotAtomic),
        }
    }

    /// Inverse of [`Lattice::atoms_of`]: the join of a set of generators.
    pub fn from_atoms(&self, atoms: GeneratorSet) -> Result<Element, LatticeError> {
        match &self.repr {
            Repr::Powerset(p) => {
                if atoms.0 & !p.full != 0 {
                    return Err(LatticeError::IndexOutOfRange(atoms.0 as u64));
                }
                Ok(self.wrap(atoms.0))
            }
            Repr::General(_) => Err(LatticeError::NotAtomic),
        }
    }

    /// Canonical spec: generator list, or declared elements with the computed
    /// cover relation in index order.
    pub fn spec(&self) -> LatticeSpec {
        match &self.repr {
            Repr::Powerset(p) => LatticeSpec::Powerset(PowersetSpec {
                generators: p.generators.clone(),
            }),
            Repr::General(g) => LatticeSpec::General(GeneralSpec {
                elements: g.names.clone(),
                covers: g
                    .covers
                    .iter()
                    .map(|&(a, b)| (g.names[a as usize].clone(), g.names[b as usize].clone()))
                    .collect(),
            }),
        }
    }

    // Unchecked operations. Callers guarantee both operands belong to `self`.

    pub(crate) fn leq_raw(&self, a: Element, b: Element) -> bool {
        debug_assert!(self.contains(a) && self.contains(b));
        match &self.repr {
            Repr::Powerset(_) => a.index & !b.index == 0,
            Repr::General(g) => g.leq[g.at(a.index, b.index)],
        }
    }

    pub(crate) fn compare_raw(&self, a: Element, b: Element) -> Comparison {
        match (self.leq_raw(a, b), self.leq_raw(b, a)) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::Less,
            (false, true) => Comparison::Greater,
            (false, false) => Comparison::Incomparable,
        }
    }

    pub(crate) fn join_raw(&self, a: Element, b: Element) -> Element {
        debug_assert!(self.contains(a) && self.contains(b));
        match &self.repr {
            Repr::Powerset(_) => self.wrap(a.index | b.index),
            Repr::General(g) => self.wrap(g.join[g.at(a.index, b.index)]),
        }
    }

    pub(crate) fn meet_raw(&self, a: Element, b: Element) -> Element {
        debug_assert!(self.contains(a) && self.contains(b));
        match &self.repr {
            Repr::Powerset(_) => self.wrap(a.index & b.index),
            Repr::General(g) => self.wrap(g.meet[g.at(a.index, b.index)]),
        }
    }

    pub(crate) fn implies_raw(&self, a: Element, b: Element) -> Element {
        debug_assert!(self.contains(a) && self.contains(b));
        match &self.repr {
            Repr::Powerset(p) => self.wrap((!a.index & p.full) | b.index),
            Repr::General(g) => match &g.implies {
                Some(table) => self.wrap(table[g.at(a.index, b.index)]),
                None => self.wrap(g.scan_implies(a.index, b.index)),
            },
        }
    }
}

/// `Display` adapter returned by [`Lattice::display`].
pub struct ElementDisplay<'a> {
    lattice: &'a Lattice,
    e: Element,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lattice.contains(self.e) {
            f.write_str(&self.lattice.name_raw(self.e))
        } else {
            write!(f, "<foreign element #{}>", self.e.index)
        }
    }
}

fn build_powerset(generators: &[String]) -> Result<Powerset, LatticeError> {
    if generators.is_empty() {
        return Err(LatticeError::Empty);
    }
    if generators.len() > MAX_GENERATORS {
        return Err(LatticeError::TooManyGenerators(generators.len()));
    }
    let mut seen = BTreeSet::new();
    for g in generators {
        validate_name(g)?;
        if g == BOTTOM_NAME || g == TOP_NAME {
            return Err(LatticeError::ReservedName {
                name: g.clone(),
                role: if g == BOTTOM_NAME { "bottom" } else { "top" },
            });
        }
        if !seen.insert(g.as_str()) {
            return Err(LatticeError::DuplicateName(g.clone()));
        }
    }
    let full = ((1u64 << generators.len()) - 1) as u32;
    Ok(Powerset {
        generators: generators.to_vec(),
        full,
    })
}

/// Decomposes `name` into distinct generator names, in any order.
fn parse_powerset(generators: &[String], name: &str) -> Result<u32, LatticeError> {
    fn go(generators: &[String], rest: &str, used: u32, found: &mut BTreeSet<u32>) {
        if rest.is_empty() {
            found.insert(used);
            return;
        }
        for (i, g) in generators.iter().enumerate() {
            if used >> i & 1 == 0 && rest.starts_with(g.as_str()) {
                go(generators, &rest[g.len()..], used | 1 << i, found);
            }
        }
    }
    let mut found = BTreeSet::new();
    go(generators, name, 0, &mut found);
    match found.len() {
        0 => Err(LatticeError::UnknownElement(name.to_string())),
        1 => Ok(*found.iter().next().unwrap()),
        _ => Err(LatticeError::AmbiguousName(name.to_string())),
    }
}

fn build_general(names: &[String], covers: &[(String, String)]) -> Result<General, LatticeError> {
    let n = names.len();
    if n == 0 {
        return Err(LatticeError::Empty);
    }
    let mut lookup = HashMap::with_capacity(n);
    for (i, name) in names.iter().enumerate() {
        validate_name(name)?;
        if lookup.insert(name.clone(), i as u32).is_some() {
            return Err(LatticeError::DuplicateName(name.clone()));
        }
    }
    let resolve = |s: &String| {
        lookup
            .get(s)
            .copied()
            .ok_or_else(|| LatticeError::UnknownCoverElement(s.clone()))
    };
    let mut up: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (lo, hi) in covers {
        let (lo, hi) = (resolve(lo)?, resolve(hi)?);
        if lo == hi {
            return Err(LatticeError::CyclicCovers(names[lo as usize].clone()));
        }
        up[lo as usize].push(hi);
    }

    // Reflexive-transitive closure by DFS from every element.
    let mut leq = vec![false; n * n];
    let mut stack = Vec::new();
    for start in 0..n {
        let row = &mut leq[start * n..(start + 1) * n];
        row[start] = true;
        stack.push(start as u32);
        while let Some(v) = stack.pop() {
            for &w in &up[v as usize] {
                if !row[w as usize] {
                    row[w as usize] = true;
                    stack.push(w);
                }
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if leq[a * n + b] && leq[b * n + a] {
                return Err(LatticeError::CyclicCovers(names[a].clone()));
            }
        }
    }

    let below_count: Vec<usize> = (0..n)
        .map(|v| (0..n).filter(|&u| leq[u * n + v]).count())
        .collect();

    let mut join = vec![0u32; n * n];
    let mut meet = vec![0u32; n * n];
    let mut bounds = Vec::with_capacity(n);
    for a in 0..n {
        for b in a..n {
            // least upper bound
            bounds.clear();
            bounds.extend((0..n).filter(|&u| leq[a * n + u] && leq[b * n + u]));
            let sup = bounds
                .iter()
                .copied()
                .min_by_key(|&u| below_count[u])
                .filter(|&s| bounds.iter().all(|&u| leq[s * n + u]))
                .ok_or_else(|| LatticeError::NotALattice {
                    a: names[a].clone(),
                    b: names[b].clone(),
                    bound: "join",
                })?;
            // greatest lower bound
            bounds.clear();
            bounds.extend((0..n).filter(|&l| leq[l * n + a] && leq[l * n + b]));
            let inf = bounds
                .iter()
                .copied()
                .max_by_key(|&l| below_count[l])
                .filter(|&s| bounds.iter().all(|&l| leq[l * n + s]))
                .ok_or_else(|| LatticeError::NotALattice {
                    a: names[a].clone(),
                    b: names[b].clone(),
                    bound: "meet",
                })?;
            join[a * n + b] = sup as u32;
            join[b * n + a] = sup as u32;
            meet[a * n + b] = inf as u32;
            meet[b * n + a] = inf as u32;
        }
    }

    let bottom = (0..n).fold(0usize, |acc, v| meet[acc * n + v] as usize) as u32;
    let top = (0..n).fold(0usize, |acc, v| join[acc * n + v] as usize) as u32;
    for (i, name) in names.iter().enumerate() {
        let role = match name.as_str() {
            BOTTOM_NAME if i as u32 != bottom => "bottom",
            TOP_NAME if i as u32 != top => "top",
            _ => continue,
        };
        return Err(LatticeError::ReservedName {
            name: name.clone(),
            role,
        });
    }

    for a in 0..n {
        for b in 0..n {
            for c in b..n {
                let lhs = meet[a * n + join[b * n + c] as usize];
                let rhs = join[meet[a * n + b] as usize * n + meet[a * n + c] as usize];
                if lhs != rhs {
                    return Err(LatticeError::NotDistributive {
                        a: names[a].clone(),
                        b: names[b].clone(),
                        c: names[c].clone(),
                    });
                }
            }
        }
    }

    // Hasse covers: a < b with nothing strictly between.
    let mut hasse = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b
                && leq[a * n + b]
                && !(0..n).any(|z| z != a && z != b && leq[a * n + z] && leq[z * n + b])
            {
                hasse.push((a as u32, b as u32));
            }
        }
    }

    let mut general = General {
        names: names.to_vec(),
        lookup,
        bottom,
        top,
        leq,
        join,
        meet,
        implies: None,
        covers: hasse,
    };

    let mut table = Vec::with_capacity(if n <= IMPLICATION_TABLE_LIMIT {
        n * n
    } else {
        0
    });
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            let c = general.scan_implies(a, b);
            if !general.leq[general.at(general.meet[general.at(a, c)], b)] {
                return Err(LatticeError::NotBrouwer {
                    a: general.names[a as usize].clone(),
                    b: general.names[b as usize].clone(),
                });
            }
            if n <= IMPLICATION_TABLE_LIMIT {
                table.push(c);
            }
        }
    }
    if n <= IMPLICATION_TABLE_LIMIT {
        general.implies = Some(table);
    }
    Ok(general)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_generators() -> Lattice {
        Lattice::powerset(["a", "b", "c", "d"]).unwrap()
    }

    fn divisors12() -> Lattice {
        Lattice::build(&LatticeSpec::general(
            ["d1", "d2", "d3", "d4", "d6", "d12"],
            [
                ("d1", "d2"),
                ("d1", "d3"),
                ("d2", "d4"),
                ("d2", "d6"),
                ("d3", "d6"),
                ("d4", "d12"),
                ("d6", "d12"),
            ],
        ))
        .unwrap()
    }

    #[test]
    fn powerset_four_generators() {
        let l = four_generators();
        assert_eq!(l.size(), 16);
        assert_eq!(l.name(l.top()).unwrap(), "1");
        assert_eq!(l.name(l.bottom()).unwrap(), "0");
        assert_eq!(l.parse("abcd").unwrap(), l.top());
        assert!(l.is_atomic());
    }

    #[test]
    fn single_generator_is_a_chain() {
        let l = Lattice::powerset(["a"]).unwrap();
        assert_eq!(l.size(), 2);
        let a = l.parse("a").unwrap();
        assert_eq!(a, l.top());
        assert_eq!(l.compare(l.bottom(), a).unwrap(), Comparison::Less);
    }

    #[test]
    fn canonical_names_sort_generators() {
        let l = four_generators();
        let cb = l.parse("cb").unwrap();
        assert_eq!(l.name(cb).unwrap(), "bc");
        assert_eq!(l.display(l.parse("dca").unwrap()).to_string(), "acd");
    }

    #[test]
    fn worked_example_operations() {
        let l = four_generators();
        let p = |s| l.parse(s).unwrap();
        assert_eq!(l.compare(p("ab"), p("abc")).unwrap(), Comparison::Less);
        assert_eq!(
            l.compare(p("ab"), p("cd")).unwrap(),
            Comparison::Incomparable
        );
        assert_eq!(
            l.compare(p("ab"), p("ac")).unwrap(),
            Comparison::Incomparable
        );
        assert_eq!(l.join(p("ab"), p("cd")).unwrap(), l.top());
        assert_eq!(l.join(p("cd"), p("bc")).unwrap(), p("bcd"));
        assert_eq!(l.meet(p("acd"), p("bcd")).unwrap(), p("cd"));
        assert_eq!(l.implies(p("ab"), p("ac")).unwrap(), p("acd"));
        assert_eq!(l.pseudo_complement(p("ab")).unwrap(), p("cd"));
        assert_eq!(l.pseudo_complement(l.bottom()).unwrap(), l.top());
        for x in l.elements() {
            assert_eq!(l.meet(x, l.top()).unwrap(), x);
            assert_eq!(l.implies(x, x).unwrap(), l.top());
            assert_eq!(l.implies(l.top(), x).unwrap(), x);
        }
    }

    #[test]
    fn atoms_round_trip() {
        let l = four_generators();
        let bcd = l.parse("bcd").unwrap();
        let atoms = l.atoms_of(bcd).unwrap();
        assert_eq!(atoms.iter().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(l.from_atoms(atoms).unwrap(), bcd);
        assert!(l.atoms_of(l.bottom()).unwrap().is_empty());
        assert_eq!(l.atoms_of(l.top()).unwrap().len(), 4);
    }

    #[test]
    fn divisor_lattice_matches_gcd_lcm() {
        let l = divisors12();
        let value = |e: Element| -> u32 { [1, 2, 3, 4, 6, 12][e.index() as usize] };
        let gcd = |mut a: u32, mut b: u32| {
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        };
        for a in l.elements() {
            for b in l.elements() {
                let (va, vb) = (value(a), value(b));
                assert_eq!(value(l.meet(a, b).unwrap()), gcd(va, vb));
                assert_eq!(value(l.join(a, b).unwrap()), va * vb / gcd(va, vb));
                assert_eq!(l.leq(a, b).unwrap(), vb % va == 0);
            }
        }
        let p = |s| l.parse(s).unwrap();
        assert_eq!(l.join(p("d4"), p("d6")).unwrap(), p("d12"));
        assert_eq!(l.meet(p("d4"), p("d6")).unwrap(), p("d2"));
        assert_eq!(l.implies(p("d4"), p("d6")).unwrap(), p("d6"));
        assert_eq!(l.pseudo_complement(p("d4")).unwrap(), p("d3"));
        assert_eq!(l.name(p("d12")).unwrap(), "1");
        assert_eq!(l.parse("0").unwrap(), p("d1"));
        assert_eq!(l.atoms_of(p("d6")), Err(LatticeError::NotAtomic));
    }

    #[test]
    fn rejects_pentagon_and_diamond() {
        // N5 is a lattice but not distributive.
        let n5 = LatticeSpec::general(
            ["z", "a", "b", "c", "u"],
            [("z", "a"), ("a", "b"), ("b", "u"), ("z", "c"), ("c", "u")],
        );
        assert!(matches!(
            Lattice::build(&n5),
            Err(LatticeError::NotDistributive { .. })
        ));
        let m3 = LatticeSpec::general(
            ["z", "a", "b", "c", "u"],
            [
                ("z", "a"),
                ("z", "b"),
                ("z", "c"),
                ("a", "u"),
                ("b", "u"),
                ("c", "u"),
            ],
        );
        assert!(matches!(
            Lattice::build(&m3),
            Err(LatticeError::NotDistributive { .. })
        ));
    }

    #[test]
    fn rejects_non_lattices() {
        // two maximal elements
        let v = LatticeSpec::general(["z", "a", "b"], [("z", "a"), ("z", "b")]);
        assert!(matches!(
            Lattice::build(&v),
            Err(LatticeError::NotALattice { .. })
        ));
        // bowtie: a, b both below c and d
        let bowtie = LatticeSpec::general(
            ["z", "a", "b", "c", "d", "u"],
            [
                ("z", "a"),
                ("z", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "c"),
                ("b", "d"),
                ("c", "u"),
                ("d", "u"),
            ],
        );
        assert!(matches!(
            Lattice::build(&bowtie),
            Err(LatticeError::NotALattice { .. })
        ));
    }

    #[test]
    fn rejects_malformed_specs() {
        assert_eq!(
            Lattice::powerset(["a", "a"]).unwrap_err(),
            LatticeError::DuplicateName("a".into())
        );
        assert!(matches!(
            Lattice::powerset(["a", "1"]),
            Err(LatticeError::ReservedName { .. })
        ));
        assert!(matches!(
            Lattice::powerset(["a b"]),
            Err(LatticeError::InvalidName(_))
        ));
        let cyc = LatticeSpec::general(["x", "y"], [("x", "y"), ("y", "x")]);
        assert!(matches!(
            Lattice::build(&cyc),
            Err(LatticeError::CyclicCovers(_))
        ));
        let unknown = LatticeSpec::general(["x", "y"], [("x", "q")]);
        assert_eq!(
            Lattice::build(&unknown).unwrap_err(),
            LatticeError::UnknownCoverElement("q".into())
        );
        let misplaced = LatticeSpec::general(["1", "y"], [("1", "y")]);
        assert!(matches!(
            Lattice::build(&misplaced),
            Err(LatticeError::ReservedName { role: "top", .. })
        ));
    }

    #[test]
    fn mixed_lattices_are_rejected() {
        let a = four_generators();
        let b = four_generators();
        assert_eq!(a.join(a.top(), b.top()), Err(LatticeError::LatticeMismatch));
        assert_eq!(a.name(b.bottom()), Err(LatticeError::LatticeMismatch));
    }

    #[test]
    fn unknown_and_ambiguous_names() {
        let l = four_generators();
        assert_eq!(
            l.parse("ae"),
            Err(LatticeError::UnknownElement("ae".into()))
        );
        assert_eq!(
            l.parse("aa"),
            Err(LatticeError::UnknownElement("aa".into()))
        );
        let odd = Lattice::powerset(["a", "b", "ab"]).unwrap();
        assert_eq!(
            odd.parse("ab"),
            Err(LatticeError::AmbiguousName("ab".into()))
        );
    }

    #[test]
    fn canonical_spec_lists_hasse_covers() {
        let transitive = LatticeSpec::general(
            ["lo", "mid", "hi"],
            [("lo", "mid"), ("mid", "hi"), ("lo", "hi")],
        );
        let l = Lattice::build(&transitive).unwrap();
        assert_eq!(
            l.spec(),
            LatticeSpec::general(["lo", "mid", "hi"], [("lo", "mid"), ("mid", "hi")])
        );
    }

    #[test]
    fn lattice_is_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Lattice>();
        assert_send_sync::<Element>();
    }
}
