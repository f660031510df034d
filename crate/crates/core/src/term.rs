//! Terms over the signature `{u, p_α, m}` with variables, their frontier
//! words, and the right-comb factorization.

use std::fmt;

use rand::Rng;

use crate::error::{parse_err, Error, Result};
use crate::monoid::{MonoidElement, MonoidSpec};
use crate::word::{act, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Var(usize),
    U,
    P(MonoidElement, Box<Node>),
    Mul(Box<Node>, Box<Node>),
}

impl Node {
    pub fn p(alpha: MonoidElement, child: Node) -> Node {
        Node::P(alpha, Box::new(child))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(l: Node, r: Node) -> Node {
        Node::Mul(Box::new(l), Box::new(r))
    }

    fn max_var(&self) -> usize {
        match self {
            Node::Var(i) => *i,
            Node::U => 0,
            Node::P(_, c) => c.max_var(),
            Node::Mul(l, r) => l.max_var().max(r.max_var()),
        }
    }

    fn degree(&self) -> usize {
        match self {
            Node::Var(_) => 0,
            Node::U => 1,
            Node::P(_, c) => 1 + c.degree(),
            Node::Mul(l, r) => 1 + l.degree() + r.degree(),
        }
    }

    fn length(&self) -> usize {
        match self {
            Node::Var(_) => 1,
            Node::U => 0,
            Node::P(_, c) => c.length(),
            Node::Mul(l, r) => l.length() + r.length(),
        }
    }

    fn substitute(&self, args: &[Node]) -> Node {
        match self {
            Node::Var(i) => args[i - 1].clone(),
            Node::U => Node::U,
            Node::P(a, c) => Node::p(a.clone(), c.substitute(args)),
            Node::Mul(l, r) => Node::mul(l.substitute(args), r.substitute(args)),
        }
    }

    fn frontier_into(&self, m: &MonoidSpec, out: &mut Vec<Letter>) -> Result<()> {
        match self {
            Node::Var(i) => out.push(Letter::new(*i, m.unit())),
            Node::U => {}
            Node::P(alpha, c) => {
                let start = out.len();
                c.frontier_into(m, out)?;
                for l in &mut out[start..] {
                    l.pigment = m.mul(alpha, &l.pigment)?;
                }
                m.check(alpha)?;
            }
            Node::Mul(l, r) => {
                l.frontier_into(m, out)?;
                r.frontier_into(m, out)?;
            }
        }
        Ok(())
    }

    fn write(&self, m: &MonoidSpec, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Var(i) => write!(f, "x{i}"),
            Node::U => write!(f, "u"),
            Node::P(a, c) => {
                write!(f, "p{{{}}}(", m.format_element(a))?;
                c.write(m, f)?;
                write!(f, ")")
            }
            Node::Mul(l, r) => {
                write!(f, "m(")?;
                l.write(m, f)?;
                write!(f, ",")?;
                r.write(m, f)?;
                write!(f, ")")
            }
        }
    }
}

/// A term with a declared arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    node: Node,
    arity: usize,
}

impl Term {
    pub fn new(node: Node, arity: usize) -> Result<Term> {
        let max = node.max_var();
        if max > arity || contains_var_zero(&node) {
            return Err(Error::OutOfRange { value: max, arity });
        }
        Ok(Term { node, arity })
    }

    /// A term whose arity is its largest variable index.
    pub fn inferred(node: Node) -> Term {
        let arity = node.max_var();
        Term { node, arity }
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of internal nodes, `u` included.
    pub fn degree(&self) -> usize {
        self.node.degree()
    }

    /// Number of variable occurrences.
    pub fn length(&self) -> usize {
        self.node.length()
    }

    pub fn display<'a>(&'a self, m: &'a MonoidSpec) -> TermDisplay<'a> {
        TermDisplay { term: self, monoid: m }
    }

    pub fn render(&self, m: &MonoidSpec) -> String {
        self.display(m).to_string()
    }

    /// Parse `u | x<INT> | p{<PIGMENT>}(<term>) | m(<term>,<term>)`.
    /// Without an explicit arity the largest variable index is used.
    pub fn parse(text: &str, m: &MonoidSpec, arity: Option<usize>) -> Result<Term> {
        let mut p = Parser {
            src: text,
            pos: 0,
            monoid: m,
        };
        let node = p.term()?;
        p.skip_ws();
        if p.pos < text.len() {
            return parse_err(p.pos, "trailing input after term");
        }
        match arity {
            None => Ok(Term::inferred(node)),
            Some(n) => {
                let max = node.max_var();
                if max > n {
                    let pos = text.find(&format!("x{max}")).unwrap_or(0);
                    return parse_err(pos, format!("variable x{max} exceeds arity {n}"));
                }
                Ok(Term { node, arity: n })
            }
        }
    }
}

fn contains_var_zero(n: &Node) -> bool {
    match n {
        Node::Var(i) => *i == 0,
        Node::U => false,
        Node::P(_, c) => contains_var_zero(c),
        Node::Mul(l, r) => contains_var_zero(l) || contains_var_zero(r),
    }
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    monoid: &'a MonoidSpec,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.term.node.write(self.monoid, f)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    monoid: &'a MonoidSpec,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(d) => parse_err(self.pos, format!("expected {c:?}, found {d:?}")),
            None => parse_err(self.pos, format!("expected {c:?}, found end of input")),
        }
    }

    fn term(&mut self) -> Result<Node> {
        let start = self.pos;
        match self.peek() {
            Some('u') => {
                self.pos += 1;
                Ok(Node::U)
            }
            Some('x') => {
                self.pos += 1;
                let digits: String = self.src[self.pos..].chars().take_while(char::is_ascii_digit).collect();
                self.pos += digits.len();
                match digits.parse::<usize>() {
                    Ok(i) if i >= 1 => Ok(Node::Var(i)),
                    _ => parse_err(start, "expected a variable x<INT> with INT >= 1"),
                }
            }
            Some('p') => {
                self.pos += 1;
                self.expect('{')?;
                let rest = &self.src[self.pos..];
                let Some(close) = rest.find('}') else {
                    return parse_err(self.pos, "unterminated pigment");
                };
                let raw = &rest[..close];
                let lead = raw.len() - raw.trim_start().len();
                let alpha = self.monoid.parse_element(raw.trim(), self.pos + lead)?;
                self.pos += close + 1;
                self.expect('(')?;
                let child = self.term()?;
                self.expect(')')?;
                Ok(Node::p(alpha, child))
            }
            Some('m') => {
                self.pos += 1;
                self.expect('(')?;
                let l = self.term()?;
                self.expect(',')?;
                let r = self.term()?;
                self.expect(')')?;
                Ok(Node::mul(l, r))
            }
            Some(c) => parse_err(self.pos, format!("unexpected {c:?}")),
            None => parse_err(self.pos, "unexpected end of input"),
        }
    }
}

/// Substitute `args[i-1]` for every `x_i`. The result arity is that of the
/// arguments, or 0 when there are none.
pub fn compose(t: &Term, args: &[Term]) -> Result<Term> {
    let arity = args.first().map_or(0, |a| a.arity);
    compose_with_arity(t, args, arity)
}

pub fn compose_with_arity(t: &Term, args: &[Term], arity: usize) -> Result<Term> {
    if args.len() != t.arity {
        return Err(Error::ArityMismatch {
            expected: t.arity,
            found: args.len(),
        });
    }
    if let Some(a) = args.iter().find(|a| a.arity != arity) {
        return Err(Error::ArityMismatch {
            expected: arity,
            found: a.arity,
        });
    }
    let nodes: Vec<Node> = args.iter().map(|a| a.node.clone()).collect();
    Ok(Term {
        node: t.node.substitute(&nodes),
        arity,
    })
}

/// Evaluate a term to its pigmented word.
pub fn frontier(t: &Term, m: &MonoidSpec) -> Result<Word> {
    let mut letters = Vec::with_capacity(t.length());
    t.node.frontier_into(m, &mut letters)?;
    Word::new(letters, t.arity)
}

/// The right comb `m(p{α1}(x_{i1}), m(p{α2}(x_{i2}), … u))`.
pub fn right_comb(p: &Word) -> Term {
    let node = p.letters().iter().rev().fold(Node::U, |acc, l| {
        Node::mul(Node::p(l.pigment.clone(), Node::Var(l.value)), acc)
    });
    Term {
        node,
        arity: p.arity(),
    }
}

/// Frontier through the pigment action, used to cross-check the fused
/// single-pass implementation.
pub fn frontier_by_action(t: &Term, m: &MonoidSpec) -> Result<Word> {
    fn go(n: &Node, m: &MonoidSpec, arity: usize) -> Result<Word> {
        match n {
            Node::Var(i) => Word::new(vec![Letter::new(*i, m.unit())], arity),
            Node::U => Ok(Word::empty(arity)),
            Node::P(a, c) => act(m, a, &go(c, m, arity)?),
            Node::Mul(l, r) => go(l, m, arity)?.concat(&go(r, m, arity)?),
        }
    }
    go(&t.node, m, t.arity)
}

/// A random term of arity `arity` with exactly `degree` internal nodes.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, m: &MonoidSpec, arity: usize, degree: usize) -> Term {
    fn go<R: Rng + ?Sized>(rng: &mut R, m: &MonoidSpec, arity: usize, degree: usize) -> Node {
        if degree == 0 {
            return if arity == 0 { Node::U } else { Node::Var(rng.gen_range(1..=arity)) };
        }
        if degree == 1 && arity == 0 {
            return Node::U;
        }
        match rng.gen_range(0..3) {
            0 if degree == 1 => Node::U,
            1 => Node::p(m.random_element(rng), go(rng, m, arity, degree - 1)),
            _ => {
                let left = rng.gen_range(0..degree);
                Node::mul(go(rng, m, arity, left), go(rng, m, arity, degree - 1 - left))
            }
        }
    }
    Term {
        node: go(rng, m, arity, degree),
        arity,
    }
}
