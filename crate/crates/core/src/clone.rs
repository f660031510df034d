//! Quotient clones of the pigmented-word clone: normal forms, equivalence,
//! quotient superposition, dimensions and class enumeration.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::monoid::MonoidSpec;
use crate::normalize::{
    first_k, first_k_rev, inc_norm, magnet_norm, pill_norm, sort_norm, stal_norm,
};
use crate::term::{frontier, Term};
use crate::word::{reverse, superpose, Word};

/// The quotient being computed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variety {
    P,
    WInc,
    Arra(usize),
    ArraRev(usize),
    Inc(usize),
    Magn(usize, usize),
    Stal(usize),
    StalRev(usize),
    Pill(usize, usize),
}

impl Variety {
    /// Whether a canonical representative is computed for this variety.
    pub fn has_normal_form(self) -> bool {
        !matches!(self, Variety::Magn(a, b) | Variety::Pill(a, b) if (a, b) != (1, 1))
    }

    /// The variety whose congruence is the mirror image of this one.
    pub fn reversed(self) -> Variety {
        match self {
            Variety::Arra(k) => Variety::ArraRev(k),
            Variety::ArraRev(k) => Variety::Arra(k),
            Variety::Stal(k) => Variety::StalRev(k),
            Variety::StalRev(k) => Variety::Stal(k),
            Variety::Magn(a, b) => Variety::Magn(b, a),
            Variety::Pill(a, b) => Variety::Pill(b, a),
            v => v,
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variety::P => write!(f, "p"),
            Variety::WInc => write!(f, "winc"),
            Variety::Arra(k) => write!(f, "arra:{k}"),
            Variety::ArraRev(k) => write!(f, "arra-rev:{k}"),
            Variety::Inc(k) => write!(f, "inc:{k}"),
            Variety::Magn(a, b) => write!(f, "magn:{a},{b}"),
            Variety::Stal(k) => write!(f, "stal:{k}"),
            Variety::StalRev(k) => write!(f, "stal-rev:{k}"),
            Variety::Pill(a, b) => write!(f, "pill:{a},{b}"),
        }
    }
}

impl FromStr for Variety {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedVariety(format!("unknown clone {s:?}"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let pair = |t: &str| -> Result<(usize, usize)> {
            let (a, b) = t.split_once(',').ok_or_else(bad)?;
            Ok((num(a)?, num(b)?))
        };
        let s = s.trim();
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        Ok(match (head, arg) {
            ("p", None) => Variety::P,
            ("winc", None) => Variety::WInc,
            ("arra", Some(k)) => Variety::Arra(num(k)?),
            ("arra-rev", Some(k)) => Variety::ArraRev(num(k)?),
            ("inc", Some(k)) => Variety::Inc(num(k)?),
            ("stal", Some(k)) => Variety::Stal(num(k)?),
            ("stal-rev", Some(k)) => Variety::StalRev(num(k)?),
            ("magn", None) => Variety::Magn(1, 1),
            ("magn", Some(a)) => {
                let (x, y) = pair(a)?;
                Variety::Magn(x, y)
            }
            ("pill", None) => Variety::Pill(1, 1),
            ("pill", Some(a)) => {
                let (x, y) = pair(a)?;
                Variety::Pill(x, y)
            }
            _ => return Err(bad()),
        })
    }
}

/// A variety together with its pigment monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CloneId {
    variety: Variety,
    monoid: MonoidSpec,
}

impl CloneId {
    pub fn new(variety: Variety, monoid: MonoidSpec) -> Result<Self> {
        match variety {
            Variety::Inc(_) if !monoid.is_trivial() => Err(Error::UnsupportedVariety(format!(
                "{variety} requires the trivial monoid, got {monoid}"
            ))),
            Variety::Stal(0) | Variety::StalRev(0) => Err(Error::UnsupportedVariety(
                "stalactites need k >= 1".into(),
            )),
            _ => Ok(CloneId { variety, monoid }),
        }
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn monoid(&self) -> &MonoidSpec {
        &self.monoid
    }

    pub fn reversed(&self) -> CloneId {
        CloneId {
            variety: self.variety.reversed(),
            monoid: self.monoid.clone(),
        }
    }
}

impl fmt::Display for CloneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.variety)
    }
}

fn stal_rev(p: &Word, k: usize) -> Word {
    reverse(&stal_norm(&reverse(p), k))
}

/// The canonical representative of the class of `p`.
pub fn normal_form(c: &CloneId, p: &Word) -> Result<Word> {
    p.check_monoid(&c.monoid)?;
    normal_form_unchecked(c.variety, p)
}

fn normal_form_unchecked(v: Variety, p: &Word) -> Result<Word> {
    Ok(match v {
        Variety::P => p.clone(),
        Variety::WInc => sort_norm(p),
        Variety::Arra(k) => first_k(p, k),
        Variety::ArraRev(k) => first_k_rev(p, k),
        Variety::Inc(k) => inc_norm(p, k),
        Variety::Magn(1, 1) => magnet_norm(p),
        Variety::Stal(k) => stal_norm(p, k),
        Variety::StalRev(k) => stal_rev(p, k),
        Variety::Pill(1, 1) => pill_norm(p),
        v => {
            return Err(Error::UnsupportedVariety(format!(
                "no normal form is known for {v}; only equivalence is available"
            )))
        }
    })
}

/// The tuple of congruence invariants whose equality defines the class,
/// computed independently of the rewriting normal forms.
pub fn fiber_key(v: Variety, p: &Word) -> Vec<Word> {
    match v {
        Variety::P => vec![p.clone()],
        Variety::WInc => vec![sort_norm(p)],
        Variety::Arra(k) => vec![first_k(p, k)],
        Variety::ArraRev(k) => vec![first_k_rev(p, k)],
        Variety::Inc(k) => vec![sort_norm(&first_k(p, k))],
        Variety::Magn(a, b) => vec![first_k(p, a), first_k_rev(p, b)],
        Variety::Stal(k) => vec![first_k(p, k), sort_norm(p)],
        Variety::StalRev(k) => vec![first_k_rev(p, k), sort_norm(p)],
        Variety::Pill(a, b) => vec![first_k(p, a), sort_norm(p), first_k_rev(p, b)],
    }
}

fn check_pair(c: &CloneId, p: &Word, q: &Word) -> Result<()> {
    if p.arity() != q.arity() {
        return Err(Error::ArityMismatch {
            expected: p.arity(),
            found: q.arity(),
        });
    }
    p.check_monoid(&c.monoid)?;
    q.check_monoid(&c.monoid)
}

/// Decide whether `p` and `q` are in the same class.
pub fn equiv(c: &CloneId, p: &Word, q: &Word) -> Result<bool> {
    check_pair(c, p, q)?;
    if c.variety.has_normal_form() {
        Ok(normal_form_unchecked(c.variety, p)? == normal_form_unchecked(c.variety, q)?)
    } else {
        Ok(fiber_key(c.variety, p) == fiber_key(c.variety, q))
    }
}

/// Equivalence through the defining tuple only.
pub fn equiv_by_key(c: &CloneId, p: &Word, q: &Word) -> Result<bool> {
    check_pair(c, p, q)?;
    Ok(fiber_key(c.variety, p) == fiber_key(c.variety, q))
}

/// Superposition in the quotient: the normal form of the plain superposition.
pub fn clone_superpose(c: &CloneId, p: &Word, args: &[Word]) -> Result<Word> {
    if !c.variety.has_normal_form() {
        return normal_form_unchecked(c.variety, p);
    }
    normal_form(c, &superpose(&c.monoid, p, args)?)
}

/// The word problem on terms: compare frontiers in the quotient.
pub fn term_equiv(c: &CloneId, t: &Term, u: &Term) -> Result<bool> {
    if t.arity() != u.arity() {
        return Err(Error::ArityMismatch {
            expected: t.arity(),
            found: u.arity(),
        });
    }
    equiv(c, &frontier(t, &c.monoid)?, &frontier(u, &c.monoid)?)
}

/// Dimension of the arity-`n` component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dim {
    Finite(BigUint),
    Infinite,
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(x) => write!(f, "{x}"),
            Dim::Infinite => write!(f, "infinite"),
        }
    }
}

fn binomials(n: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let row = (0..=i)
            .map(|j| {
                let a = if j > 0 { prev[j - 1].clone() } else { BigUint::zero() };
                let b = if j < i { prev[j].clone() } else { BigUint::zero() };
                a + b
            })
            .collect();
        rows.push(row);
    }
    rows
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// `Σ_{u ∈ [0,k]^n} (Σu)! / Πu_i! · m^{Σu}`, accumulated value by value:
/// `D_n(s) = Σ_j C(s, j) D_{n-1}(s - j)` counts the arrangements of length `s`.
fn arrangements(k: usize, n: usize, m: &BigUint) -> BigUint {
    let binom = binomials(k * n);
    let mut d = vec![BigUint::one()];
    for step in 1..=n {
        let mut next = vec![BigUint::zero(); k * step + 1];
        for (s, slot) in next.iter_mut().enumerate() {
            for (j, c) in binom[s].iter().enumerate().take(k.min(s) + 1) {
                if let Some(prev) = d.get(s - j) {
                    *slot += c * prev;
                }
            }
        }
        d = next;
    }
    d.iter()
        .enumerate()
        .map(|(s, x)| x * m.pow(s as u32))
        .sum()
}

fn monoid_size(c: &CloneId) -> Result<BigUint> {
    c.monoid
        .cardinality()
        .map(BigUint::from)
        .ok_or_else(|| Error::InfiniteMonoid(format!("the dimension of {c} over {} has no finite value", c.monoid)))
}

/// Closed-form dimension of the arity-`n` component.
pub fn dims(c: &CloneId, n: usize) -> Result<Dim> {
    if n == 0 {
        return Ok(Dim::Finite(BigUint::one()));
    }
    Ok(match c.variety {
        Variety::P | Variety::WInc | Variety::Stal(_) | Variety::StalRev(_) | Variety::Pill(_, _) => {
            Dim::Infinite
        }
        Variety::Arra(0) | Variety::ArraRev(0) | Variety::Magn(0, 0) => Dim::Finite(BigUint::one()),
        Variety::Inc(k) => Dim::Finite(BigUint::from(k + 1).pow(n as u32)),
        Variety::Arra(k) | Variety::ArraRev(k) => Dim::Finite(arrangements(k, n, &monoid_size(c)?)),
        Variety::Magn(1, 1) => {
            let m2 = monoid_size(c)?.pow(2);
            let binom = binomials(n);
            Dim::Finite(
                (0..=n)
                    .map(|i| &binom[n][i] * factorial(i).pow(2) * m2.pow(i as u32))
                    .sum(),
            )
        }
        v => {
            return Err(Error::UnsupportedVariety(format!(
                "no dimension formula is known for {v}"
            )))
        }
    })
}

/// The length bound under which every class has its normal form.
pub fn default_max_len(c: &CloneId, n: usize) -> Result<usize> {
    match c.variety {
        Variety::Arra(k) | Variety::ArraRev(k) | Variety::Inc(k) => Ok(k * n),
        Variety::Magn(1, 1) => Ok(2 * n),
        v => Err(Error::UnsupportedVariety(format!(
            "{v} has infinitely many classes per arity; give an explicit length bound"
        ))),
    }
}

/// Distinct normal forms of all words of arity `n` and length at most
/// `max_len` (the tight bound when `None`), in shortlex order. Fails when
/// more than `cap` words would have to be scanned.
pub fn enumerate_classes(c: &CloneId, n: usize, max_len: Option<usize>, cap: u64) -> Result<Vec<Word>> {
    if !c.variety.has_normal_form() {
        return normal_form_unchecked(c.variety, &Word::empty(n)).map(|_| Vec::new());
    }
    let pigments = c
        .monoid
        .elements()
        .ok_or_else(|| Error::InfiniteMonoid(format!("cannot enumerate words over {}", c.monoid)))?;
    let max_len = match max_len {
        Some(l) => l,
        None => default_max_len(c, n)?,
    };
    let letters = BigUint::from(n) * BigUint::from(pigments.len());
    let total: BigUint = (0..=max_len).map(|l| letters.pow(l as u32)).sum();
    if total > BigUint::from(cap) {
        return Err(Error::ResourceLimit {
            needed: total.to_string(),
            cap,
        });
    }
    let words = Word::all(n, max_len, &pigments);
    let forms: HashSet<Word> = words
        .par_iter()
        .map(|w| normal_form_unchecked(c.variety, w))
        .collect::<Result<_>>()?;
    let mut out: Vec<Word> = forms.into_iter().collect();
    out.sort_by(Word::shortlex_cmp);
    Ok(out)
}
