//! Pigment monoids: operation, unit, total order, and morphisms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};

/// Characters that may not appear in a free alphabet because the word and
/// term grammars use them.
const RESERVED: &str = "^{}();,_e";

/// A pigment monoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonoidSpec {
    Trivial,
    /// Free monoid on an ordered alphabet of single characters.
    Free { alphabet: Vec<char> },
    /// Integers modulo `modulus` under addition.
    Cyclic { modulus: u64 },
    IntAdd,
    NatMax,
    /// A finite monoid given by its multiplication table.
    Table {
        names: Vec<String>,
        unit: usize,
        table: Vec<Vec<usize>>,
        source: String,
    },
}

/// An element of some [`MonoidSpec`].
///
/// The derived `Ord` agrees with the designated total order for elements of
/// the same kind: free words compare symbol index by symbol index, with proper
/// prefixes first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MonoidElement {
    Trivial,
    Free(Vec<u32>),
    Residue(u64),
    Int(i64),
    Nat(u64),
    Index(usize),
}

impl MonoidSpec {
    pub fn free(alphabet: &str) -> Result<Self> {
        let alphabet: Vec<char> = alphabet.chars().collect();
        if alphabet.is_empty() {
            return Err(Error::InvalidMonoid("empty free alphabet".into()));
        }
        for (i, &c) in alphabet.iter().enumerate() {
            if c.is_whitespace() || c.is_control() || RESERVED.contains(c) {
                return Err(Error::InvalidMonoid(format!(
                    "symbol {c:?} is not allowed in a free alphabet"
                )));
            }
            if alphabet[..i].contains(&c) {
                return Err(Error::InvalidMonoid(format!("repeated symbol {c:?}")));
            }
        }
        Ok(MonoidSpec::Free { alphabet })
    }

    pub fn cyclic(modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidMonoid("modulus must be positive".into()));
        }
        Ok(MonoidSpec::Cyclic { modulus })
    }

    /// Build a table monoid, checking totality, associativity and the unit.
    pub fn table(
        names: Vec<String>,
        unit: usize,
        table: Vec<Vec<usize>>,
        source: impl Into<String>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidMonoid("table monoid has no elements".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::InvalidMonoid(format!("repeated element name {name:?}")));
            }
            if name == "e" && i != unit {
                return Err(Error::InvalidMonoid(
                    "the name `e` is reserved for the unit".into(),
                ));
            }
        }
        if unit >= n {
            return Err(Error::InvalidMonoid("unit index out of range".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidMonoid(format!("operation table must be {n}x{n}")));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidMonoid("table entry out of range".into()));
        }
        for a in 0..n {
            if table[unit][a] != a || table[a][unit] != a {
                return Err(Error::InvalidMonoid(format!(
                    "{} is not a two-sided unit for {}",
                    names[unit], names[a]
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidMonoid(format!(
                            "not associative on ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(MonoidSpec::Table {
            names,
            unit,
            table,
            source: source.into(),
        })
    }

    /// Parse the table file format: element names, unit name, then rows.
    pub fn parse_table(text: &str, source: impl Into<String>) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let names: Vec<String> = lines
            .next()
            .ok_or_else(|| Error::InvalidMonoid("missing element names".into()))?
            .split_whitespace()
            .map(str::to_owned)
            .collect();
        let unit_name = lines
            .next()
            .ok_or_else(|| Error::InvalidMonoid("missing unit line".into()))?
            .trim();
        let index = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| Error::InvalidMonoid(format!("unknown element {s:?}")))
        };
        let unit = index(unit_name)?;
        let table = lines
            .map(|l| l.split_whitespace().map(index).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        MonoidSpec::table(names, unit, table, source)
    }

    pub fn unit(&self) -> MonoidElement {
        match self {
            MonoidSpec::Trivial => MonoidElement::Trivial,
            MonoidSpec::Free { .. } => MonoidElement::Free(Vec::new()),
            MonoidSpec::Cyclic { .. } => MonoidElement::Residue(0),
            MonoidSpec::IntAdd => MonoidElement::Int(0),
            MonoidSpec::NatMax => MonoidElement::Nat(0),
            MonoidSpec::Table { unit, .. } => MonoidElement::Index(*unit),
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, MonoidSpec::Trivial)
    }

    /// Check that `a` is a valid element of this monoid.
    pub fn check(&self, a: &MonoidElement) -> Result<()> {
        let ok = match (self, a) {
            (MonoidSpec::Trivial, MonoidElement::Trivial) => true,
            (MonoidSpec::Free { alphabet }, MonoidElement::Free(w)) => {
                w.iter().all(|&s| (s as usize) < alphabet.len())
            }
            (MonoidSpec::Cyclic { modulus }, MonoidElement::Residue(r)) => r < modulus,
            (MonoidSpec::IntAdd, MonoidElement::Int(_)) => true,
            (MonoidSpec::NatMax, MonoidElement::Nat(_)) => true,
            (MonoidSpec::Table { names, .. }, MonoidElement::Index(i)) => *i < names.len(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::MonoidMismatch(format!("{a:?} is not an element of {self}")))
        }
    }

    /// The product `a · b`.
    pub fn mul(&self, a: &MonoidElement, b: &MonoidElement) -> Result<MonoidElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (MonoidSpec::Free { .. }, MonoidElement::Free(x), MonoidElement::Free(y)) => {
                let mut w = Vec::with_capacity(x.len() + y.len());
                w.extend_from_slice(x);
                w.extend_from_slice(y);
                MonoidElement::Free(w)
            }
            (MonoidSpec::Cyclic { modulus }, MonoidElement::Residue(x), MonoidElement::Residue(y)) => {
                MonoidElement::Residue(((*x as u128 + *y as u128) % *modulus as u128) as u64)
            }
            (MonoidSpec::IntAdd, MonoidElement::Int(x), MonoidElement::Int(y)) => {
                MonoidElement::Int(x.checked_add(*y).ok_or(Error::Overflow)?)
            }
            (MonoidSpec::NatMax, MonoidElement::Nat(x), MonoidElement::Nat(y)) => {
                MonoidElement::Nat(*x.max(y))
            }
            (MonoidSpec::Table { table, .. }, MonoidElement::Index(x), MonoidElement::Index(y)) => {
                MonoidElement::Index(table[*x][*y])
            }
            _ => MonoidElement::Trivial,
        })
    }

    /// Compare two elements in the designated total order.
    pub fn cmp(&self, a: &MonoidElement, b: &MonoidElement) -> Result<Ordering> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.cmp(b))
    }

    /// All elements, in order, when the monoid is finite.
    pub fn elements(&self) -> Option<Vec<MonoidElement>> {
        match self {
            MonoidSpec::Trivial => Some(vec![MonoidElement::Trivial]),
            MonoidSpec::Cyclic { modulus } => Some((0..*modulus).map(MonoidElement::Residue).collect()),
            MonoidSpec::Table { names, .. } => {
                Some((0..names.len()).map(MonoidElement::Index).collect())
            }
            _ => None,
        }
    }

    /// Cardinality, when finite.
    pub fn cardinality(&self) -> Option<u64> {
        match self {
            MonoidSpec::Trivial => Some(1),
            MonoidSpec::Cyclic { modulus } => Some(*modulus),
            MonoidSpec::Table { names, .. } => Some(names.len() as u64),
            _ => None,
        }
    }

    /// A small generating sample: the alphabet for free monoids, every
    /// element for finite ones, a few small numbers otherwise.
    pub fn generators(&self) -> Vec<MonoidElement> {
        match self {
            MonoidSpec::Free { alphabet } => {
                (0..alphabet.len() as u32).map(|s| MonoidElement::Free(vec![s])).collect()
            }
            MonoidSpec::IntAdd => (-2..=2).map(MonoidElement::Int).collect(),
            MonoidSpec::NatMax => (0..=3).map(MonoidElement::Nat).collect(),
            _ => self.elements().unwrap_or_default(),
        }
    }

    /// A random element; free words have length at most 3.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> MonoidElement {
        match self {
            MonoidSpec::Trivial => MonoidElement::Trivial,
            MonoidSpec::Free { alphabet } => {
                let len = rng.gen_range(0..=3);
                MonoidElement::Free(
                    (0..len).map(|_| rng.gen_range(0..alphabet.len() as u32)).collect(),
                )
            }
            MonoidSpec::Cyclic { modulus } => MonoidElement::Residue(rng.gen_range(0..*modulus)),
            MonoidSpec::IntAdd => MonoidElement::Int(rng.gen_range(-3..=3)),
            MonoidSpec::NatMax => MonoidElement::Nat(rng.gen_range(0..=4)),
            MonoidSpec::Table { names, .. } => MonoidElement::Index(rng.gen_range(0..names.len())),
        }
    }

    /// Parse a pigment token. `offset` is only used for error positions.
    pub fn parse_element(&self, text: &str, offset: usize) -> Result<MonoidElement> {
        if text.is_empty() {
            return parse_err(offset, "empty pigment");
        }
        if text == "e" {
            return Ok(self.unit());
        }
        match self {
            MonoidSpec::Trivial => parse_err(offset, format!("trivial monoid has only `e`, got {text:?}")),
            MonoidSpec::Free { alphabet } => text
                .chars()
                .enumerate()
                .map(|(i, c)| match alphabet.iter().position(|&a| a == c) {
                    Some(s) => Ok(s as u32),
                    None => parse_err(offset + i, format!("symbol {c:?} not in alphabet")),
                })
                .collect::<Result<Vec<_>>>()
                .map(MonoidElement::Free),
            MonoidSpec::Cyclic { modulus } => match text.parse::<u64>() {
                Ok(r) if r < *modulus => Ok(MonoidElement::Residue(r)),
                Ok(r) => parse_err(offset, format!("residue {r} not below modulus {modulus}")),
                Err(_) => parse_err(offset, format!("expected a residue, got {text:?}")),
            },
            MonoidSpec::IntAdd => text
                .parse::<i64>()
                .map(MonoidElement::Int)
                .or_else(|_| parse_err(offset, format!("expected an integer, got {text:?}"))),
            MonoidSpec::NatMax => text
                .parse::<u64>()
                .map(MonoidElement::Nat)
                .or_else(|_| parse_err(offset, format!("expected a natural number, got {text:?}"))),
            MonoidSpec::Table { names, .. } => match names.iter().position(|n| n == text) {
                Some(i) => Ok(MonoidElement::Index(i)),
                None => parse_err(offset, format!("unknown element {text:?}")),
            },
        }
    }

    /// Render an element; the unit is always `e`.
    pub fn format_element(&self, a: &MonoidElement) -> String {
        if *a == self.unit() {
            return "e".into();
        }
        match (self, a) {
            (MonoidSpec::Free { alphabet }, MonoidElement::Free(w)) => {
                w.iter().map(|&s| alphabet.get(s as usize).copied().unwrap_or('?')).collect()
            }
            (MonoidSpec::Table { names, .. }, MonoidElement::Index(i)) => {
                names.get(*i).cloned().unwrap_or_else(|| "?".into())
            }
            (_, MonoidElement::Residue(r)) | (_, MonoidElement::Nat(r)) => r.to_string(),
            (_, MonoidElement::Int(i)) => i.to_string(),
            _ => format!("{a:?}"),
        }
    }
}

impl fmt::Display for MonoidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidSpec::Trivial => write!(f, "trivial"),
            MonoidSpec::Free { alphabet } => {
                write!(f, "free:{}", alphabet.iter().collect::<String>())
            }
            MonoidSpec::Cyclic { modulus } => write!(f, "zmod:{modulus}"),
            MonoidSpec::IntAdd => write!(f, "int-add"),
            MonoidSpec::NatMax => write!(f, "nat-max"),
            MonoidSpec::Table { source, .. } => write!(f, "table:{source}"),
        }
    }
}

impl FromStr for MonoidSpec {
    type Err = Error;

    /// `trivial | free:<symbols> | zmod:<n> | int-add | nat-max | table:<path>`
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = match s.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (s, None),
        };
        match (head, rest) {
            ("trivial", None) => Ok(MonoidSpec::Trivial),
            ("int-add", None) => Ok(MonoidSpec::IntAdd),
            ("nat-max", None) => Ok(MonoidSpec::NatMax),
            ("free", Some(symbols)) => MonoidSpec::free(symbols),
            ("zmod", Some(n)) => n
                .parse::<u64>()
                .map_err(|_| Error::InvalidMonoid(format!("bad modulus {n:?}")))
                .and_then(MonoidSpec::cyclic),
            ("table", Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Io(format!("{path}: {e}")))?;
                MonoidSpec::parse_table(&text, path)
            }
            _ => Err(Error::InvalidMonoid(format!("unknown monoid {s:?}"))),
        }
    }
}

/// How a morphism acts on elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismRule {
    Identity,
    /// Free word ↦ its length.
    FreeLength,
    /// Explicit image of every element of a finite source.
    PointwiseTable(BTreeMap<MonoidElement, MonoidElement>),
}

/// A checked monoid morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidMorphism {
    source: MonoidSpec,
    target: MonoidSpec,
    rule: MorphismRule,
}

impl MonoidMorphism {
    pub fn identity(m: MonoidSpec) -> Self {
        MonoidMorphism {
            source: m.clone(),
            target: m,
            rule: MorphismRule::Identity,
        }
    }

    /// Build a morphism, checking that it sends the unit to the unit and is
    /// multiplicative on all available generator pairs.
    pub fn new(source: MonoidSpec, target: MonoidSpec, rule: MorphismRule) -> Result<Self> {
        match (&rule, &source, &target) {
            (MorphismRule::Identity, s, t) if s == t => {}
            (MorphismRule::Identity, _, _) => {
                return Err(Error::MonoidMismatch("identity needs equal source and target".into()))
            }
            (MorphismRule::FreeLength, MonoidSpec::Free { .. }, MonoidSpec::IntAdd | MonoidSpec::NatMax) => {}
            (MorphismRule::FreeLength, _, _) => {
                return Err(Error::MonoidMismatch(
                    "length morphism goes from a free monoid to int-add or nat-max".into(),
                ))
            }
            (MorphismRule::PointwiseTable(map), s, t) => {
                let elements = s.elements().ok_or_else(|| {
                    Error::InfiniteMonoid("pointwise morphisms need a finite source".into())
                })?;
                for a in &elements {
                    let b = map.get(a).ok_or_else(|| {
                        Error::InvalidMonoid(format!("no image for {}", s.format_element(a)))
                    })?;
                    t.check(b)?;
                }
                if map.len() != elements.len() {
                    return Err(Error::InvalidMonoid("map has entries outside the source".into()));
                }
            }
        }
        let phi = MonoidMorphism { source, target, rule };
        if phi.apply(&phi.source.unit())? != phi.target.unit() {
            return Err(Error::InvalidMonoid("unit is not sent to unit".into()));
        }
        let gens = phi.source.generators();
        for a in &gens {
            for b in &gens {
                let lhs = phi.apply(&phi.source.mul(a, b)?)?;
                let rhs = phi.target.mul(&phi.apply(a)?, &phi.apply(b)?)?;
                if lhs != rhs {
                    return Err(Error::InvalidMonoid(format!(
                        "not multiplicative on ({}, {})",
                        phi.source.format_element(a),
                        phi.source.format_element(b)
                    )));
                }
            }
        }
        Ok(phi)
    }

    /// The morphism collapsing a finite monoid onto the trivial one.
    pub fn to_trivial(source: MonoidSpec) -> Result<Self> {
        let elements = source
            .elements()
            .ok_or_else(|| Error::InfiniteMonoid("pointwise morphisms need a finite source".into()))?;
        let map = elements.into_iter().map(|a| (a, MonoidElement::Trivial)).collect();
        MonoidMorphism::new(source, MonoidSpec::Trivial, MorphismRule::PointwiseTable(map))
    }

    pub fn source(&self) -> &MonoidSpec {
        &self.source
    }

    pub fn target(&self) -> &MonoidSpec {
        &self.target
    }

    pub fn apply(&self, a: &MonoidElement) -> Result<MonoidElement> {
        self.source.check(a)?;
        match (&self.rule, a) {
            (MorphismRule::Identity, _) => Ok(a.clone()),
            (MorphismRule::FreeLength, MonoidElement::Free(w)) => Ok(match self.target {
                MonoidSpec::NatMax => MonoidElement::Nat(w.len() as u64),
                _ => MonoidElement::Int(w.len() as i64),
            }),
            (MorphismRule::PointwiseTable(map), _) => Ok(map[a].clone()),
            _ => Err(Error::MonoidMismatch("element does not fit the morphism".into())),
        }
    }
}
