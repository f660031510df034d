//! P-symbol algorithms: witness flags, sorting, `first_k`, and the magnet,
//! stalactite and pillar normal forms.

use crate::word::{reverse, Letter, Word};

/// Left and right `k`-witness flags, one pair per position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessFlags {
    pub k: usize,
    pub left: Vec<bool>,
    pub right: Vec<bool>,
}

/// Per-value occurrence counters, indexed by value.
fn counters(letters: &[Letter]) -> Vec<usize> {
    vec![0; letters.iter().map(|l| l.value).max().unwrap_or(0) + 1]
}

fn flags_of(letters: &[Letter], k: usize) -> WitnessFlags {
    let n = letters.len();
    let mut left = vec![false; n];
    let mut right = vec![false; n];
    let mut seen = counters(letters);
    for (j, l) in letters.iter().enumerate() {
        left[j] = seen[l.value] < k;
        seen[l.value] += 1;
    }
    seen.fill(0);
    for (j, l) in letters.iter().enumerate().rev() {
        right[j] = seen[l.value] < k;
        seen[l.value] += 1;
    }
    WitnessFlags { k, left, right }
}

/// A position is a left `k`-witness when fewer than `k` earlier letters share
/// its value; right witnesses look at later letters.
pub fn witnesses(p: &Word, k: usize) -> WitnessFlags {
    flags_of(p.letters(), k)
}

/// Stable sort by value, then pigment.
pub fn sort_norm(p: &Word) -> Word {
    let mut letters = p.letters().to_vec();
    letters.sort();
    Word::from_parts(letters, p.arity())
}

/// The subword of left `k`-witnesses. `k = 0` gives the empty word.
pub fn first_k(p: &Word, k: usize) -> Word {
    let mut seen = counters(p.letters());
    let letters = p
        .letters()
        .iter()
        .filter(|l| {
            seen[l.value] += 1;
            seen[l.value] <= k
        })
        .cloned()
        .collect();
    Word::from_parts(letters, p.arity())
}

/// The subword of right `k`-witnesses.
pub fn first_k_rev(p: &Word, k: usize) -> Word {
    reverse(&first_k(&reverse(p), k))
}

/// `sort ∘ first_k`, the increasing-word normal form. Only meaningful over
/// the trivial monoid; [`crate::clone::normal_form`] enforces that.
pub fn inc_norm(p: &Word, k: usize) -> Word {
    sort_norm(&first_k(p, k))
}

/// Magnet stage 1: keep the first and the last occurrence of each value.
pub fn magnet_stage1(p: &Word) -> Word {
    let f = witnesses(p, 1);
    let letters = p
        .letters()
        .iter()
        .zip(f.left.iter().zip(&f.right))
        .filter(|(_, (&l, &r))| l || r)
        .map(|(x, _)| x.clone())
        .collect();
    Word::from_parts(letters, p.arity())
}

/// A letter together with its left and right 1-witness flags. Every rewrite
/// below keeps the relative order of same-value letters, so the flags travel
/// with their letters and never need recomputing.
#[derive(Clone)]
struct Flagged {
    letter: Letter,
    left: bool,
    right: bool,
}

fn flagged(letters: &[Letter]) -> Vec<Flagged> {
    let f = flags_of(letters, 1);
    letters
        .iter()
        .zip(f.left.iter().zip(&f.right))
        .map(|(l, (&left, &right))| Flagged {
            letter: l.clone(),
            left,
            right,
        })
        .collect()
}

fn unflag(xs: Vec<Flagged>, arity: usize) -> Word {
    Word::from_parts(xs.into_iter().map(|x| x.letter).collect(), arity)
}

/// Move letters that are right but not left 1-witnesses leftwards past
/// distinct-value letters that are not right 1-witnesses, to a fixpoint,
/// always rewriting the leftmost redex.
fn advance_last_occurrences(xs: &mut [Flagged]) {
    let mut j = 0;
    while j + 1 < xs.len() {
        let (a, b) = (&xs[j], &xs[j + 1]);
        if a.letter.value != b.letter.value && !a.right && b.right && !b.left {
            xs.swap(j, j + 1);
            j = j.saturating_sub(1);
        } else {
            j += 1;
        }
    }
}

/// Magnet stage 2.
pub fn magnet_stage2(p: &Word) -> Word {
    let mut xs = flagged(p.letters());
    advance_last_occurrences(&mut xs);
    unflag(xs, p.arity())
}

/// Magnet stage 3: merge adjacent identical letters.
pub fn magnet_stage3(p: &Word) -> Word {
    let mut letters = p.letters().to_vec();
    letters.dedup();
    Word::from_parts(letters, p.arity())
}

pub fn magnet_norm(p: &Word) -> Word {
    magnet_stage3(&magnet_stage2(&magnet_stage1(p)))
}

/// `first_k(p)` followed by the sorted remaining letters.
pub fn stal_norm(p: &Word, k: usize) -> Word {
    let f = witnesses(p, k);
    let (mut head, mut tail) = (Vec::new(), Vec::new());
    for (l, &w) in p.letters().iter().zip(&f.left) {
        if w { head.push(l.clone()) } else { tail.push(l.clone()) }
    }
    tail.sort();
    head.extend(tail);
    Word::from_parts(head, p.arity())
}

/// Pillar stage 1: gather middle occurrences right after the first one.
pub fn pill_stage1(p: &Word) -> Word {
    let mut xs = flagged(p.letters());
    let mut last_seen: Vec<Option<usize>> = vec![None; counters(p.letters()).len()];
    let mut j = 0;
    while j < xs.len() {
        let v = xs[j].letter.value;
        if let Some(i) = last_seen[v] {
            // i^α1 q i^α2 with q nonempty and free of i, where i^α2 is a
            // middle occurrence (so i^α1 is not a last one)
            if j > i + 1 && !xs[j].left && !xs[j].right {
                let x = xs.remove(j);
                xs.insert(i + 1, x);
                // letters recorded strictly between i and j shifted right
                for slot in last_seen.iter_mut().flatten() {
                    if *slot > i && *slot < j {
                        *slot += 1;
                    }
                }
                last_seen[v] = Some(i + 1);
                j += 1;
                continue;
            }
        }
        last_seen[v] = Some(j);
        j += 1;
    }
    unflag(xs, p.arity())
}

/// Pillar stage 2: sort pigments inside adjacent runs of middle occurrences.
pub fn pill_stage2(p: &Word) -> Word {
    let mut xs = flagged(p.letters());
    let middle = |x: &Flagged| !x.left && !x.right;
    let mut j = 0;
    while j + 1 < xs.len() {
        let (a, b) = (&xs[j], &xs[j + 1]);
        if a.letter.value == b.letter.value && middle(a) && middle(b) && b.letter.pigment < a.letter.pigment {
            xs.swap(j, j + 1);
            j = j.saturating_sub(1);
        } else {
            j += 1;
        }
    }
    unflag(xs, p.arity())
}

/// Pillar stage 3, the same swap rule as magnet stage 2.
pub fn pill_stage3(p: &Word) -> Word {
    magnet_stage2(p)
}

pub fn pill_norm(p: &Word) -> Word {
    pill_stage3(&pill_stage2(&pill_stage1(p)))
}
