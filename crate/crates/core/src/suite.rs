//! Law-checking suites producing deterministic reports.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::clone::{equiv, equiv_by_key, normal_form, term_equiv, CloneId, Variety};
use crate::error::{Error, Result};
use crate::monoid::{MonoidElement, MonoidMorphism, MonoidSpec, MorphismRule};
use crate::term::{frontier, right_comb, Node, Term};
use crate::word::{map_pigments, projection, reverse, superpose_with_arity, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Axioms,
    Congruence,
    Presentation,
    Functor,
    Reversion,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Axioms,
        Suite::Congruence,
        Suite::Presentation,
        Suite::Functor,
        Suite::Reversion,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Axioms => "axioms",
            Suite::Congruence => "congruence",
            Suite::Presentation => "presentation",
            Suite::Functor => "functor",
            Suite::Reversion => "reversion",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| Error::UnsupportedVariety(format!("unknown suite {s:?}")))
    }
}

/// Bounds for exhaustive checks plus the random-sample count and seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_arity: usize,
    pub max_len: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Budget {
    /// Defaults sized so that every suite finishes in seconds.
    pub fn for_suite(suite: Suite) -> Budget {
        Budget {
            max_arity: 2,
            max_len: if suite == Suite::Axioms { 2 } else { 3 },
            samples: 1000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub name: String,
    pub instances: u64,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub clone: String,
    pub monoid: String,
    pub seed: u64,
    pub laws: Vec<LawResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "SUITE {} clone={} monoid={} seed={}",
            self.suite, self.clone, self.monoid, self.seed
        )?;
        for l in &self.laws {
            write!(
                f,
                "LAW {} instances={} status={}",
                l.name,
                l.instances,
                if l.passed { "PASS" } else { "FAIL" }
            )?;
            if let Some(c) = &l.counterexample {
                write!(f, " counterexample={c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Instance count and the first failure found.
#[derive(Default)]
struct Tally {
    instances: u64,
    counterexample: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        self
    }

    fn into_law(self, name: &str) -> LawResult {
        LawResult {
            name: name.into(),
            instances: self.instances,
            passed: self.counterexample.is_none(),
            counterexample: self.counterexample,
        }
    }
}

/// Run `f` over `items` in parallel; merge in input order so that the
/// reported counterexample does not depend on scheduling.
fn tally_over<T: Sync>(items: &[T], f: impl Fn(&T, &mut Tally) + Sync) -> Tally {
    items
        .par_iter()
        .map(|x| {
            let mut t = Tally::default();
            f(x, &mut t);
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

/// Call `f` on every tuple of length `len` over `pool`.
fn for_each_tuple(pool: &[Word], len: usize, mut f: impl FnMut(&[Word])) {
    if len > 0 && pool.is_empty() {
        return;
    }
    let mut idx = vec![0usize; len];
    let mut tuple: Vec<Word> = idx.iter().map(|&i| pool[i].clone()).collect();
    loop {
        f(&tuple);
        let mut pos = len;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < pool.len() {
                tuple[pos] = pool[idx[pos]].clone();
                break;
            }
            idx[pos] = 0;
            tuple[pos] = pool[0].clone();
        }
    }
}

/// Pigments for exhaustive checks: every element of a finite monoid, or
/// two sample elements of an infinite one.
fn pigment_pool(m: &MonoidSpec) -> Vec<MonoidElement> {
    if let Some(all) = m.elements() {
        return all;
    }
    let mut gens = m.generators();
    gens.retain(|g| *g != m.unit());
    gens.truncate(2);
    if gens.len() < 2 {
        gens.insert(0, m.unit());
    }
    gens
}

fn pools(b: &Budget, pigments: &[MonoidElement]) -> Vec<Vec<Word>> {
    (0..=b.max_arity).map(|n| Word::all(n, b.max_len, pigments)).collect()
}

fn show(m: &MonoidSpec, ws: &[&Word]) -> String {
    ws.iter().map(|w| w.render(m)).collect::<Vec<_>>().join(" | ")
}

fn show_args(m: &MonoidSpec, ws: &[Word]) -> String {
    ws.iter().map(|w| w.render(m)).collect::<Vec<_>>().join(";")
}

/// Superposition in the quotient, into an explicit arity.
fn qsup(c: &CloneId, p: &Word, args: &[Word], arity: usize) -> Result<Word> {
    normal_form(c, &superpose_with_arity(c.monoid(), p, args, arity)?)
}

fn random_word(rng: &mut ChaCha8Rng, m: &MonoidSpec, arity: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::random(rng, m, arity, len)
}

/// Run one suite.
pub fn check_suite(c: &CloneId, suite: Suite, budget: &Budget) -> Result<Report> {
    let laws = match suite {
        Suite::Axioms => axioms(c, budget)?,
        Suite::Congruence => {
            let v = c.variety();
            if !v.has_normal_form() {
                return Err(Error::UnsupportedVariety(format!("{v} has no normal form to check")));
            }
            let nf = |p: &Word| normal_form(c, p).expect("pigments checked");
            congruence_laws(c, &nf, budget)
        }
        Suite::Presentation => presentation(c, budget)?,
        Suite::Functor => functor(c, budget)?,
        Suite::Reversion => reversion(c, budget)?,
    };
    Ok(finish(c, suite, budget, laws))
}

fn finish(c: &CloneId, suite: Suite, budget: &Budget, mut laws: Vec<LawResult>) -> Report {
    laws.sort_by(|a, b| a.name.cmp(&b.name));
    Report {
        suite: suite.to_string(),
        clone: c.to_string(),
        monoid: c.monoid().to_string(),
        seed: budget.seed,
        laws,
    }
}

/// The congruence suite run with a caller-supplied normalizer in place of
/// the clone's own, to test whether it is a valid canonical-form map.
pub fn check_congruence_with(
    c: &CloneId,
    normalizer: &(dyn Fn(&Word) -> Word + Sync),
    budget: &Budget,
) -> Report {
    let laws = congruence_laws(c, normalizer, budget);
    finish(c, Suite::Congruence, budget, laws)
}

fn axioms(c: &CloneId, b: &Budget) -> Result<Vec<LawResult>> {
    if !c.variety().has_normal_form() {
        return Err(Error::UnsupportedVariety(format!("{} has no normal form to check", c.variety())));
    }
    let m = c.monoid();
    let pool = pools(b, &pigment_pool(m));
    let nf = |p: &Word| normal_form(c, p).expect("pigments checked");
    let pool: Vec<Vec<Word>> = pool
        .iter()
        .map(|ws| {
            let mut seen = HashSet::new();
            ws.iter().map(nf).filter(|w| seen.insert(w.clone())).collect()
        })
        .collect();

    let mut proj_left = Tally::default();
    let mut proj_right = Tally::default();
    for n in 1..=b.max_arity {
        for (m_ar, ys_pool) in pool.iter().enumerate() {
            for i in 1..=n {
                let pr = nf(&projection(m, i, n)?);
                for_each_tuple(ys_pool, n, |ys| {
                    let ok = qsup(c, &pr, ys, m_ar).ok().as_ref() == Some(&ys[i - 1]);
                    proj_left.record(ok, || format!("{} <{}>", pr.render(m), show_args(m, ys)));
                });
            }
        }
        let projs: Vec<Word> = (1..=n).map(|i| nf(&projection(m, i, n).unwrap())).collect();
        for x in &pool[n] {
            let ok = qsup(c, x, &projs, n).ok().as_ref() == Some(x);
            proj_right.record(ok, || x.render(m));
        }
    }

    // one case per (x arity, y arity, ys); x<ys> and each y<zs> are
    // computed once and shared by every x
    let mut cases = Vec::new();
    for n in 0..=b.max_arity {
        for (m_ar, ys_pool) in pool.iter().enumerate() {
            for_each_tuple(ys_pool, n, |ys| cases.push((n, m_ar, ys.to_vec())));
        }
    }
    let assoc = tally_over(&cases, |(n, m_ar, ys), t| {
        let xys: Vec<Option<Word>> = pool[*n].iter().map(|x| qsup(c, x, ys, *m_ar).ok()).collect();
        for k in 0..=b.max_arity {
            for_each_tuple(&pool[k], *m_ar, |zs| {
                let yzs: Option<Vec<Word>> = ys.iter().map(|y| qsup(c, y, zs, k).ok()).collect();
                for (x, xy) in pool[*n].iter().zip(&xys) {
                    let lhs = xy.as_ref().and_then(|xy| qsup(c, xy, zs, k).ok());
                    let rhs = yzs.as_ref().and_then(|yz| qsup(c, x, yz, k).ok());
                    let ok = lhs.is_some() && lhs == rhs;
                    t.record(ok, || format!("{} <{}> <{}>", x.render(m), show_args(m, ys), show_args(m, zs)));
                }
            });
        }
    });

    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    let mut random = Tally::default();
    for _ in 0..b.samples {
        let (n, m_ar, k) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3));
        let x = nf(&random_word(&mut rng, m, n, 4));
        let ys: Vec<Word> = (0..n).map(|_| nf(&random_word(&mut rng, m, m_ar, 4))).collect();
        let zs: Vec<Word> = (0..m_ar).map(|_| nf(&random_word(&mut rng, m, k, 4))).collect();
        check_assoc(c, &x, &ys, &zs, m_ar, k, &mut random);
    }

    Ok(vec![
        proj_left.into_law("projection-left"),
        proj_right.into_law("projection-right"),
        assoc.into_law("associativity"),
        random.into_law("associativity-random"),
    ])
}

fn check_assoc(c: &CloneId, x: &Word, ys: &[Word], zs: &[Word], m_ar: usize, k: usize, t: &mut Tally) {
    let lhs = qsup(c, x, ys, m_ar).and_then(|xy| qsup(c, &xy, zs, k));
    let rhs = ys
        .iter()
        .map(|y| qsup(c, y, zs, k))
        .collect::<Result<Vec<_>>>()
        .and_then(|yz| qsup(c, x, &yz, k));
    let ok = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
    let m = c.monoid();
    t.record(ok, || format!("{} <{}> <{}>", x.render(m), show_args(m, ys), show_args(m, zs)));
}

fn congruence_laws(c: &CloneId, nf: &(dyn Fn(&Word) -> Word + Sync), b: &Budget) -> Vec<LawResult> {
    let m = c.monoid();
    let pool = pools(b, &pigment_pool(m));
    let reduced: Vec<Vec<Word>> = pool.iter().map(|ws| ws.iter().map(nf).collect()).collect();
    let sup_nf = |p: &Word, args: &[Word], arity: usize| {
        superpose_with_arity(m, p, args, arity).and_then(|w| normal_form(c, &w))
    };
    let single = |p: &Word, idem: &mut Tally, rep: &mut Tally| {
        let q = nf(p);
        idem.record(nf(&q) == q, || p.render(m));
        rep.record(equiv_by_key(c, p, &q).unwrap_or(false), || show(m, &[p, &q]));
    };

    let mut cases = Vec::new();
    for (n, ws) in pool.iter().enumerate() {
        cases.extend((0..ws.len()).map(|i| (n, i)));
    }
    let results: Vec<(Tally, Tally, Tally)> = cases
        .par_iter()
        .map(|&(n, i)| {
            let (mut t, mut idem, mut rep) = (Tally::default(), Tally::default(), Tally::default());
            let (p, np) = (&pool[n][i], &reduced[n][i]);
            single(p, &mut idem, &mut rep);
            for m_ar in 0..=b.max_arity {
                let count = pool[m_ar].len();
                if n > 0 && count == 0 {
                    continue;
                }
                let mut idx = vec![0usize; n];
                let mut args: Vec<Word> = Vec::with_capacity(n);
                let mut nargs: Vec<Word> = Vec::with_capacity(n);
                'tuples: loop {
                    args.clear();
                    nargs.clear();
                    args.extend(idx.iter().map(|&j| pool[m_ar][j].clone()));
                    nargs.extend(idx.iter().map(|&j| reduced[m_ar][j].clone()));
                    let ok = match (sup_nf(p, &args, m_ar), sup_nf(np, &nargs, m_ar)) {
                        (Ok(x), Ok(y)) => x == y,
                        _ => false,
                    };
                    t.record(ok, || format!("{} <{}>", p.render(m), show_args(m, &args)));
                    let mut pos = n;
                    loop {
                        if pos == 0 {
                            break 'tuples;
                        }
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < count {
                            break;
                        }
                        idx[pos] = 0;
                    }
                }
            }
            (t, idem, rep)
        })
        .collect();
    let (mut cong, mut idem, mut rep) = (Tally::default(), Tally::default(), Tally::default());
    for (t, i, r) in results {
        cong = cong.merge(t);
        idem = idem.merge(i);
        rep = rep.merge(r);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    let mut random = Tally::default();
    for _ in 0..b.samples {
        let (n, m_ar) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let p = random_word(&mut rng, m, n, 6);
        let args: Vec<Word> = (0..n).map(|_| random_word(&mut rng, m, m_ar, 5)).collect();
        let nargs: Vec<Word> = args.iter().map(nf).collect();
        let ok = match (sup_nf(&p, &args, m_ar), sup_nf(&nf(&p), &nargs, m_ar)) {
            (Ok(x), Ok(y)) => x == y,
            _ => false,
        };
        random.record(ok, || format!("{} <{}>", p.render(m), show_args(m, &args)));
        single(&p, &mut idem, &mut rep);
    }
    vec![
        cong.into_law("congruence"),
        random.into_law("congruence-random"),
        idem.into_law("idempotent"),
        rep.into_law("representative"),
    ]
}

/// Words built from a pattern of `(value, pigment slot)` letters, where
/// slot `None` means the unit.
fn instantiate(m: &MonoidSpec, pattern: &[(usize, Option<usize>)], pigs: &[MonoidElement], arity: usize) -> Word {
    let letters = pattern
        .iter()
        .map(|&(v, s)| Letter::new(v, s.map_or_else(|| m.unit(), |i| pigs[i].clone())))
        .collect();
    Word::new(letters, arity).expect("pattern values within arity")
}

type Pattern = Vec<(usize, Option<usize>)>;

/// The defining equations of each presented quotient, as chains of
/// patterns that must all be equivalent.
pub fn presentation_equations(v: Variety) -> Vec<(String, usize, Vec<Pattern>)> {
    let e = None;
    let s = Some;
    match v {
        Variety::P => vec![],
        Variety::WInc => vec![("commute".into(), 2, vec![vec![(1, e), (2, e)], vec![(2, e), (1, e)]])],
        Variety::Arra(k) => vec![(format!("arra-{k}"), k + 1, arra_sides(k))],
        Variety::ArraRev(k) => vec![(format!("arra-rev-{k}"), k + 1, mirror(arra_sides(k)))],
        Variety::Inc(k) => vec![
            ("commute".into(), 2, vec![vec![(1, e), (2, e)], vec![(2, e), (1, e)]]),
            (format!("power-{k}"), 1, vec![vec![(1, e); k + 1], vec![(1, e); k]]),
        ],
        Variety::Magn(1, 1) => vec![
            ("idempotent".into(), 1, vec![vec![(1, e), (1, e)], vec![(1, e)]]),
            (
                "middle".into(),
                3,
                vec![
                    vec![(1, s(0)), (2, e), (1, s(1)), (3, e), (1, s(2))],
                    vec![(1, s(0)), (2, e), (3, e), (1, s(2))],
                ],
            ),
        ],
        Variety::Stal(k) => vec![(format!("stal-{k}"), 2, stal_sides(k))],
        Variety::StalRev(k) => vec![(format!("stal-rev-{k}"), 2, mirror(stal_sides(k)))],
        Variety::Pill(1, 1) => vec![
            (
                "middle".into(),
                3,
                vec![
                    vec![(1, s(0)), (1, s(1)), (2, e), (3, e), (1, s(2))],
                    vec![(1, s(0)), (2, e), (1, s(1)), (3, e), (1, s(2))],
                    vec![(1, s(0)), (2, e), (3, e), (1, s(1)), (1, s(2))],
                ],
            ),
            (
                "crossing".into(),
                4,
                vec![
                    vec![(1, s(0)), (2, e), (3, s(3)), (1, s(1)), (4, e), (3, s(4))],
                    vec![(1, s(0)), (2, e), (1, s(1)), (3, s(3)), (4, e), (3, s(4))],
                ],
            ),
        ],
        Variety::Magn(_, _) | Variety::Pill(_, _) => vec![],
    }
}

fn arra_sides(k: usize) -> Vec<Pattern> {
    let mut long = Vec::new();
    for i in 0..k {
        long.push((1, Some(i)));
        long.push((i + 2, None));
    }
    long.push((1, Some(k)));
    let short = long[..long.len() - 1].to_vec();
    vec![long, short]
}

fn stal_sides(k: usize) -> Vec<Pattern> {
    let prefix: Pattern = (0..k).map(|i| (1, Some(i))).collect();
    let mut a = prefix.clone();
    a.extend([(1, Some(k)), (2, None)]);
    let mut b = prefix;
    b.extend([(2, None), (1, Some(k))]);
    vec![a, b]
}

fn mirror(sides: Vec<Pattern>) -> Vec<Pattern> {
    sides
        .into_iter()
        .map(|mut p| {
            p.reverse();
            p
        })
        .collect()
}

/// The six defining relations of pigmented monoids, with pigment slots.
fn base_relations(m: &MonoidSpec, a: &MonoidElement, b: &MonoidElement) -> Vec<(&'static str, Term, Term)> {
    let x = |i| Node::Var(i);
    let mul = Node::mul;
    let p = |al: &MonoidElement, n| Node::p(al.clone(), n);
    let t = |n: Node, ar| Term::new(n, ar).expect("variables within arity");
    let ab = m.mul(a, b).expect("sampled pigments belong to m");
    vec![
        (
            "assoc",
            t(mul(mul(x(1), x(2)), x(3)), 3),
            t(mul(x(1), mul(x(2), x(3))), 3),
        ),
        ("unit-left", t(mul(Node::U, x(1)), 1), t(x(1), 1)),
        ("unit-right", t(mul(x(1), Node::U), 1), t(x(1), 1)),
        (
            "pigment-mul",
            t(p(a, mul(x(1), x(2))), 2),
            t(mul(p(a, x(1)), p(a, x(2))), 2),
        ),
        ("pigment-unit", t(p(a, Node::U), 0), t(Node::U, 0)),
        ("pigment-compose", t(p(a, p(b, x(1))), 1), t(p(&ab, x(1)), 1)),
        ("pigment-neutral", t(p(&m.unit(), x(1)), 1), t(x(1), 1)),
    ]
}

fn presentation(c: &CloneId, b: &Budget) -> Result<Vec<LawResult>> {
    let m = c.monoid();
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    let samples = b.samples.max(1);
    let mut laws = Vec::new();

    let mut base: Vec<(&'static str, Tally)> = Vec::new();
    for _ in 0..samples {
        let (a, bb) = (m.random_element(&mut rng), m.random_element(&mut rng));
        for (i, (name, lhs, rhs)) in base_relations(m, &a, &bb).into_iter().enumerate() {
            if base.len() <= i {
                base.push((name, Tally::default()));
            }
            let same_frontier = frontier(&lhs, m)? == frontier(&rhs, m)?;
            let ok = same_frontier && term_equiv(c, &lhs, &rhs)?;
            base[i].1.record(ok, || format!("{} | {}", lhs.render(m), rhs.render(m)));
        }
    }
    for (name, t) in base {
        laws.push(t.into_law(&format!("relation-{name}")));
    }

    for (name, arity, sides) in presentation_equations(c.variety()) {
        let mut t = Tally::default();
        for _ in 0..samples {
            let pigs: Vec<MonoidElement> = (0..8).map(|_| m.random_element(&mut rng)).collect();
            let words: Vec<Word> = sides.iter().map(|s| instantiate(m, s, &pigs, arity)).collect();
            for w in &words[1..] {
                let ok = equiv(c, &words[0], w)? && term_equiv(c, &right_comb(&words[0]), &right_comb(w))?;
                t.record(ok, || show(m, &[&words[0], w]));
            }
        }
        laws.push(t.into_law(&format!("equation-{name}")));
    }
    Ok(laws)
}

/// Morphisms out of `m` to exercise: the identity, the length map for free
/// monoids, and the collapse of a finite monoid.
fn sample_morphisms(m: &MonoidSpec) -> Result<Vec<(&'static str, MonoidMorphism)>> {
    let mut out = vec![("identity", MonoidMorphism::identity(m.clone()))];
    match m {
        MonoidSpec::Free { .. } => out.push((
            "length",
            MonoidMorphism::new(m.clone(), MonoidSpec::IntAdd, MorphismRule::FreeLength)?,
        )),
        _ if m.elements().is_some() => out.push(("collapse", MonoidMorphism::to_trivial(m.clone())?)),
        _ => {}
    }
    Ok(out)
}

fn functor(c: &CloneId, b: &Budget) -> Result<Vec<LawResult>> {
    let m = c.monoid();
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    let mut laws = Vec::new();
    for (name, phi) in sample_morphisms(m)? {
        let tgt = phi.target();
        let mut proj = Tally::default();
        for n in 1..=b.max_arity.max(1) {
            for i in 1..=n {
                let ok = map_pigments(&phi, &projection(m, i, n)?)? == projection(tgt, i, n)?;
                proj.record(ok, || format!("{i}^e arity {n}"));
            }
        }
        let mut sup = Tally::default();
        let mut compat = Tally::default();
        let image = CloneId::new(c.variety(), tgt.clone());
        for _ in 0..b.samples {
            let (n, m_ar) = (rng.gen_range(1..=3), rng.gen_range(0..=3));
            let p = random_word(&mut rng, m, n, 4);
            let args: Vec<Word> = (0..n).map(|_| random_word(&mut rng, m, m_ar, 4)).collect();
            let lhs = map_pigments(&phi, &superpose_with_arity(m, &p, &args, m_ar)?)?;
            let margs = args.iter().map(|a| map_pigments(&phi, a)).collect::<Result<Vec<_>>>()?;
            let rhs = superpose_with_arity(tgt, &map_pigments(&phi, &p)?, &margs, m_ar)?;
            sup.record(lhs == rhs, || format!("{} <{}>", p.render(m), show_args(m, &args)));
            if let (true, Ok(image)) = (c.variety().has_normal_form(), &image) {
                let q = normal_form(c, &p)?;
                let ok = equiv(image, &map_pigments(&phi, &p)?, &map_pigments(&phi, &q)?)?;
                compat.record(ok, || show(m, &[&p, &q]));
            }
        }
        laws.push(proj.into_law(&format!("{name}-projection")));
        laws.push(sup.into_law(&format!("{name}-superposition")));
        if compat.instances > 0 {
            laws.push(compat.into_law(&format!("{name}-compatible")));
        }
    }
    Ok(laws)
}

fn reversion(c: &CloneId, b: &Budget) -> Result<Vec<LawResult>> {
    let m = c.monoid();
    let pool = pools(b, &pigment_pool(m));
    let rc = c.reversed();

    let mut pairs = Vec::new();
    for ws in &pool {
        for p in ws {
            pairs.push(p);
        }
    }
    let congruence = tally_over(&pairs, |p, t| {
        for q in pool[p.arity()].iter() {
            let ok = match (equiv(c, p, q), equiv(&rc, &reverse(p), &reverse(q))) {
                (Ok(x), Ok(y)) => x == y,
                _ => false,
            };
            t.record(ok, || show(m, &[p, q]));
        }
    });

    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    let mut involution = Tally::default();
    let mut sup = Tally::default();
    for _ in 0..b.samples {
        let (n, m_ar) = (rng.gen_range(1..=3), rng.gen_range(0..=3));
        let p = random_word(&mut rng, m, n, 4);
        let args: Vec<Word> = (0..n).map(|_| random_word(&mut rng, m, m_ar, 4)).collect();
        involution.record(reverse(&reverse(&p)) == p, || p.render(m));
        let lhs = reverse(&superpose_with_arity(m, &p, &args, m_ar)?);
        let rargs: Vec<Word> = args.iter().map(reverse).collect();
        let rhs = superpose_with_arity(m, &reverse(&p), &rargs, m_ar)?;
        sup.record(lhs == rhs, || format!("{} <{}>", p.render(m), show_args(m, &args)));
    }
    let name = if rc.variety() == c.variety() {
        "self-reversed".to_string()
    } else {
        format!("reversed-to-{}", rc.variety())
    };
    Ok(vec![
        congruence.into_law(&name),
        involution.into_law("involution"),
        sup.into_law("superposition"),
    ])
}
