//! Independent oracles shared by the integration tests. None of these call
//! the library's normalizers; they recompute everything from definitions.

#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use pwclone::{Letter, MonoidElement, MonoidSpec, Node, Term, Word};

pub fn trivial(values: &[usize], arity: usize) -> Word {
    Word::trivial(values, arity).unwrap()
}

pub fn parse(m: &MonoidSpec, s: &str) -> Word {
    Word::parse(s, m, None).unwrap()
}

/// Left flag by counting earlier same-value letters one position at a time.
pub fn left_witness(letters: &[Letter], j: usize, k: usize) -> bool {
    letters[..j].iter().filter(|l| l.value == letters[j].value).count() < k
}

pub fn right_witness(letters: &[Letter], j: usize, k: usize) -> bool {
    letters[j + 1..].iter().filter(|l| l.value == letters[j].value).count() < k
}

pub fn naive_first(p: &Word, k: usize) -> Word {
    let ls = p.letters();
    let kept = (0..ls.len()).filter(|&j| left_witness(ls, j, k)).map(|j| ls[j].clone()).collect();
    Word::new(kept, p.arity()).unwrap()
}

pub fn naive_first_rev(p: &Word, k: usize) -> Word {
    let ls = p.letters();
    let kept = (0..ls.len()).filter(|&j| right_witness(ls, j, k)).map(|j| ls[j].clone()).collect();
    Word::new(kept, p.arity()).unwrap()
}

/// Letters sorted by insertion, comparing value then pigment.
pub fn naive_sort(p: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in p.letters() {
        let at = out
            .iter()
            .position(|x| (x.value, &x.pigment) > (l.value, &l.pigment))
            .unwrap_or(out.len());
        out.insert(at, l.clone());
    }
    Word::new(out, p.arity()).unwrap()
}

/// Apply `step` (which rewrites the leftmost redex, if any) until it stops.
fn fixpoint(mut letters: Vec<Letter>, step: impl Fn(&[Letter]) -> Option<Vec<Letter>>) -> Vec<Letter> {
    while let Some(next) = step(&letters) {
        letters = next;
    }
    letters
}

/// Magnet rule 1, one deletion at a time.
fn magnet_rule1(ls: &[Letter]) -> Option<Vec<Letter>> {
    let j = (0..ls.len()).find(|&j| !left_witness(ls, j, 1) && !right_witness(ls, j, 1))?;
    let mut out = ls.to_vec();
    out.remove(j);
    Some(out)
}

/// Magnet rule 2 (also pillar rule 3), flags recomputed on every call.
fn advance_rule(ls: &[Letter]) -> Option<Vec<Letter>> {
    let j = (0..ls.len().saturating_sub(1)).find(|&j| {
        ls[j].value != ls[j + 1].value
            && !right_witness(ls, j, 1)
            && right_witness(ls, j + 1, 1)
            && !left_witness(ls, j + 1, 1)
    })?;
    let mut out = ls.to_vec();
    out.swap(j, j + 1);
    Some(out)
}

fn magnet_rule3(ls: &[Letter]) -> Option<Vec<Letter>> {
    let j = (0..ls.len().saturating_sub(1)).find(|&j| ls[j] == ls[j + 1])?;
    let mut out = ls.to_vec();
    out.remove(j);
    Some(out)
}

pub fn literal_magnet(p: &Word) -> Word {
    let ls = fixpoint(p.letters().to_vec(), magnet_rule1);
    let ls = fixpoint(ls, advance_rule);
    let ls = fixpoint(ls, magnet_rule3);
    Word::new(ls, p.arity()).unwrap()
}

fn pill_rule1(ls: &[Letter]) -> Option<Vec<Letter>> {
    for j in 0..ls.len() {
        if left_witness(ls, j, 1) || right_witness(ls, j, 1) {
            continue;
        }
        let i = (0..j).rev().find(|&i| ls[i].value == ls[j].value)?;
        if i + 1 < j && !right_witness(ls, i, 1) {
            let mut out = ls.to_vec();
            let x = out.remove(j);
            out.insert(i + 1, x);
            return Some(out);
        }
    }
    None
}

fn pill_rule2(ls: &[Letter]) -> Option<Vec<Letter>> {
    let middle = |j| !left_witness(ls, j, 1) && !right_witness(ls, j, 1);
    let j = (0..ls.len().saturating_sub(1)).find(|&j| {
        ls[j].value == ls[j + 1].value && middle(j) && middle(j + 1) && ls[j + 1].pigment < ls[j].pigment
    })?;
    let mut out = ls.to_vec();
    out.swap(j, j + 1);
    Some(out)
}

pub fn literal_pill(p: &Word) -> Word {
    let ls = fixpoint(p.letters().to_vec(), pill_rule1);
    let ls = fixpoint(ls, pill_rule2);
    let ls = fixpoint(ls, advance_rule);
    Word::new(ls, p.arity()).unwrap()
}

/// `Σ_{u ∈ [0,k]^n} (Σu)! / Πu_i! · m^{Σu}` by direct enumeration.
pub fn multinomial_sum(k: usize, n: usize, m: u64) -> BigUint {
    let fact = |x: usize| (1..=x).fold(BigUint::one(), |a, i| a * BigUint::from(i));
    let mut total = BigUint::from(0u32);
    let mut u = vec![0usize; n];
    loop {
        let s: usize = u.iter().sum();
        let denom = u.iter().fold(BigUint::one(), |a, &x| a * fact(x));
        total += fact(s) / denom * BigUint::from(m).pow(s as u32);
        let mut pos = 0;
        loop {
            if pos == n {
                return total;
            }
            u[pos] += 1;
            if u[pos] <= k {
                break;
            }
            u[pos] = 0;
            pos += 1;
        }
    }
}

/// Every term over the trivial monoid with variables `x1..x_arity` and at
/// most `max_degree` internal nodes, grouped by degree.
pub fn trivial_terms(arity: usize, max_degree: usize) -> Vec<Vec<Node>> {
    let mut by_degree: Vec<Vec<Node>> = vec![(1..=arity).map(Node::Var).collect()];
    for d in 1..=max_degree {
        let mut layer = Vec::new();
        if d == 1 {
            layer.push(Node::U);
        }
        for c in &by_degree[d - 1] {
            layer.push(Node::p(MonoidElement::Trivial, c.clone()));
        }
        for a in 0..d {
            let b = d - 1 - a;
            for l in &by_degree[a] {
                for r in &by_degree[b] {
                    layer.push(Node::mul(l.clone(), r.clone()));
                }
            }
        }
        by_degree.push(layer);
    }
    by_degree
}

fn degree(n: &Node) -> usize {
    match n {
        Node::Var(_) => 0,
        Node::U => 1,
        Node::P(_, c) => 1 + degree(c),
        Node::Mul(l, r) => 1 + degree(l) + degree(r),
    }
}

/// One application of an oriented defining relation at the root.
fn root_rewrites(n: &Node) -> Vec<Node> {
    let mut out = Vec::new();
    if let Node::Mul(l, r) = n {
        if let Node::Mul(a, b) = &**l {
            out.push(Node::mul((**a).clone(), Node::mul((**b).clone(), (**r).clone())));
        }
        if **l == Node::U {
            out.push((**r).clone());
        }
        if **r == Node::U {
            out.push((**l).clone());
        }
    }
    if let Node::P(alpha, c) = n {
        match &**c {
            Node::Mul(a, b) => out.push(Node::mul(
                Node::p(alpha.clone(), (**a).clone()),
                Node::p(alpha.clone(), (**b).clone()),
            )),
            Node::U => out.push(Node::U),
            Node::P(beta, d) => {
                // over the trivial monoid every product of pigments is e
                assert_eq!((alpha, beta), (&MonoidElement::Trivial, &MonoidElement::Trivial));
                out.push(Node::p(MonoidElement::Trivial, (**d).clone()));
            }
            _ => {}
        }
        out.push((**c).clone());
    }
    out
}

/// One application anywhere in the tree.
fn rewrites(n: &Node) -> Vec<Node> {
    let mut out = root_rewrites(n);
    match n {
        Node::P(a, c) => out.extend(rewrites(c).into_iter().map(|c2| Node::p(a.clone(), c2))),
        Node::Mul(l, r) => {
            out.extend(rewrites(l).into_iter().map(|l2| Node::mul(l2, (**r).clone())));
            out.extend(rewrites(r).into_iter().map(|r2| Node::mul((**l).clone(), r2)));
        }
        _ => {}
    }
    out
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Congruence classes of the terms of degree at most `bound`, generated by
/// the six defining relations applied in both directions at any position,
/// never passing through a term of larger degree. Returns each term with
/// its class id.
pub fn bounded_closure(arity: usize, bound: usize) -> Vec<(Term, usize)> {
    let terms: Vec<Node> = trivial_terms(arity, bound).into_iter().flatten().collect();
    let index: HashMap<&Node, usize> = terms.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut parent: Vec<usize> = (0..terms.len()).collect();
    for (i, t) in terms.iter().enumerate() {
        for r in rewrites(t) {
            if degree(&r) > bound {
                continue;
            }
            let j = index[&r];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
    }
    (0..terms.len())
        .map(|i| {
            let class = find(&mut parent, i);
            (Term::new(terms[i].clone(), arity).unwrap(), class)
        })
        .collect()
}
