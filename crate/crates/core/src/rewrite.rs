//! Rewriting modulo a finite presentation: normal forms, bounded
//! local-confluence checks and counts of irreducible words.
//!
//! Words are compared degree first, then lexicographically in generator
//! order. Every relation is oriented so that its leading word becomes the
//! left-hand side.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::Laurent;
use crate::report::{ReportItem, VerificationReport};
use crate::superfree::{free_multiply, Element, GenId, GeneratorSet, GeneratorSymbol, Parity, Tensor, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: Element,
}

impl RewriteRule {
    /// `lhs − rhs` as an element of the free algebra.
    pub fn relation(&self) -> Element {
        &Element::word(self.lhs.clone()) - &self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("relation `{0}` has leading coefficient {1}, which is not a unit")]
    NonUnitLeading(String, String),
    #[error("relation `{0}` mixes parities")]
    MixedParity(String),
    #[error("rule for `{0}` has a right-hand side that is not smaller than its left-hand side")]
    NotDecreasing(String),
    #[error("two rules share the left-hand side `{0}`")]
    DuplicateLhs(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed presentation file: {0}")]
    Format(String),
}

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, Default)]
struct RuleIndex {
    n: usize,
    single: Vec<u32>,
    pair: Vec<u32>,
    long_by_first: Vec<Vec<u32>>,
    max_len: usize,
}

impl RuleIndex {
    fn build(n: usize, rules: &[RewriteRule]) -> Self {
        let mut idx = RuleIndex {
            n,
            single: vec![NONE; n],
            pair: vec![NONE; n * n],
            long_by_first: vec![Vec::new(); n],
            max_len: 0,
        };
        for (i, r) in rules.iter().enumerate() {
            let l = r.lhs.letters();
            idx.max_len = idx.max_len.max(l.len());
            match l.len() {
                0 => unreachable!("empty left-hand side"),
                1 => idx.single[l[0] as usize] = i as u32,
                2 => idx.pair[l[0] as usize * n + l[1] as usize] = i as u32,
                _ => idx.long_by_first[l[0] as usize].push(i as u32),
            }
        }
        idx
    }
}

/// Generators plus oriented, interreduced rewrite rules.
#[derive(Clone, Debug)]
pub struct Presentation {
    gens: GeneratorSet,
    rules: Vec<RewriteRule>,
    index: RuleIndex,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && self.rules == other.rules
    }
}

impl Presentation {
    /// Orients each relation by its leading word. Relations whose leading
    /// word is already reducible are reduced first; rules made redundant by
    /// a newer rule are fed back as relations. Right-hand sides end up
    /// fully reduced.
    pub fn new(gens: GeneratorSet, relations: impl IntoIterator<Item = Element>) -> Result<Self, RewriteError> {
        let mut p = Presentation { index: RuleIndex::build(gens.len(), &[]), gens, rules: Vec::new() };
        let mut queue: VecDeque<Element> = relations.into_iter().collect();
        while let Some(rel) = queue.pop_front() {
            if !rel.is_homogeneous(&p.gens) {
                return Err(RewriteError::MixedParity(rel.display(&p.gens).to_string()));
            }
            let r = p.reduce_plain(&rel);
            let Some((lw, lc)) = r.leading() else { continue };
            let Some(inv) = lc.unit_inverse() else {
                return Err(RewriteError::NonUnitLeading(r.display(&p.gens).to_string(), lc.to_string()));
            };
            let lw = lw.clone();
            let mut rhs = r.clone();
            rhs.add_term(lw.clone(), &-lc.clone());
            let rhs = rhs.scale(&-inv);
            let (keep, drop): (Vec<_>, Vec<_>) = std::mem::take(&mut p.rules)
                .into_iter()
                .partition(|rule| !contains(rule.lhs.letters(), lw.letters()));
            queue.extend(drop.iter().map(RewriteRule::relation));
            p.rules = keep;
            p.rules.push(RewriteRule { lhs: lw, rhs });
            p.index = RuleIndex::build(p.gens.len(), &p.rules);
        }
        for i in 0..p.rules.len() {
            let rhs = p.reduce_plain(&p.rules[i].rhs);
            p.rules[i].rhs = rhs;
        }
        p.rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
        p.index = RuleIndex::build(p.gens.len(), &p.rules);
        Ok(p)
    }

    /// Takes already oriented rules as given, validating orientation and
    /// distinctness only.
    pub fn from_rules(gens: GeneratorSet, mut rules: Vec<RewriteRule>) -> Result<Self, RewriteError> {
        rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
        for w in rules.windows(2) {
            if w[0].lhs == w[1].lhs {
                return Err(RewriteError::DuplicateLhs(w[0].lhs.display(&gens).to_string()));
            }
        }
        for r in &rules {
            if r.lhs.is_unit() || r.rhs.terms().any(|(w, _)| w >= &r.lhs) {
                return Err(RewriteError::NotDecreasing(r.lhs.display(&gens).to_string()));
            }
        }
        let index = RuleIndex::build(gens.len(), &rules);
        Ok(Presentation { gens, rules, index })
    }

    /// Same generators, with additional relations adjoined.
    pub fn extend(&self, extra: impl IntoIterator<Item = Element>) -> Result<Self, RewriteError> {
        let rels: Vec<Element> = self.rules.iter().map(RewriteRule::relation).chain(extra).collect();
        Presentation::new(self.gens.clone(), rels)
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn rule_for(&self, lhs: &Word) -> Option<&RewriteRule> {
        self.rules.binary_search_by(|r| r.lhs.cmp(lhs)).ok().map(|i| &self.rules[i])
    }

    /// Leftmost redex: (start position, rule index).
    pub fn find_redex(&self, w: &[GenId]) -> Option<(usize, usize)> {
        let idx = &self.index;
        for i in 0..w.len() {
            let a = w[i] as usize;
            let s = idx.single[a];
            if s != NONE {
                return Some((i, s as usize));
            }
            if i + 1 < w.len() {
                let p = idx.pair[a * idx.n + w[i + 1] as usize];
                if p != NONE {
                    return Some((i, p as usize));
                }
            }
            for &r in &idx.long_by_first[a] {
                let l = self.rules[r as usize].lhs.letters();
                if w[i..].starts_with(l) {
                    return Some((i, r as usize));
                }
            }
        }
        None
    }

    /// True if some rule matches a subword ending at the last letter.
    fn redex_at_end(&self, w: &[GenId]) -> bool {
        let idx = &self.index;
        let n = w.len();
        if n == 0 {
            return false;
        }
        if idx.single[w[n - 1] as usize] != NONE {
            return true;
        }
        if n >= 2 && idx.pair[w[n - 2] as usize * idx.n + w[n - 1] as usize] != NONE {
            return true;
        }
        if idx.max_len > 2 {
            for start in n.saturating_sub(idx.max_len)..n.saturating_sub(2) {
                for &r in &idx.long_by_first[w[start] as usize] {
                    if self.rules[r as usize].lhs.letters() == &w[start..] {
                        return true;
                    }
                }
            }
        }
        false
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.find_redex(w.letters()).is_none()
    }

    /// One rewrite step at a given redex.
    fn rewrite_at(&self, w: &[GenId], pos: usize, rule: usize) -> Element {
        let r = &self.rules[rule];
        let pre = Word::from_slice(&w[..pos]);
        let post = Word::from_slice(&w[pos + r.lhs.degree()..]);
        let mut out = Element::zero();
        for (m, c) in r.rhs.terms() {
            out.add_term(pre.concat(m).concat(&post), c);
        }
        out
    }

    /// Cache-free reduction: repeatedly rewrites the largest reducible word.
    fn reduce_plain(&self, e: &Element) -> Element {
        let mut pending: BTreeMap<Word, Laurent> = e.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut out = Element::zero();
        while let Some((w, c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.find_redex(w.letters()) {
                None => out.add_term(w, &c),
                Some((pos, r)) => {
                    for (v, d) in self.rewrite_at(w.letters(), pos, r).into_terms() {
                        debug_assert!(v < w, "rewrite step must decrease the word");
                        let e = pending.entry(v).or_default();
                        *e += &(&d * &c);
                    }
                }
            }
        }
        out
    }

    pub fn normal_form(&self, e: &Element) -> Element {
        Reducer::new(self).normal_form(e)
    }

    /// Number of words of the given degree avoiding every left-hand side.
    pub fn count_irreducible(&self, degree: usize) -> u64 {
        let k = self.index.max_len.saturating_sub(1);
        let mut memo: HashMap<(Vec<GenId>, usize), u64> = HashMap::new();
        self.count_from(&mut Vec::new(), degree, k, &mut memo)
    }

    fn count_from(&self, word: &mut Vec<GenId>, remaining: usize, k: usize, memo: &mut HashMap<(Vec<GenId>, usize), u64>) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let key = (word[word.len().saturating_sub(k)..].to_vec(), remaining);
        if word.len() >= k {
            if let Some(&v) = memo.get(&key) {
                return v;
            }
        }
        let mut total = 0;
        for g in self.gens.ids() {
            word.push(g);
            if !self.redex_at_end(word) {
                total += self.count_from(word, remaining - 1, k, memo);
            }
            word.pop();
        }
        if word.len() >= k {
            memo.insert(key, total);
        }
        total
    }

    /// All irreducible words of the given degree, in increasing order.
    pub fn irreducible_words(&self, degree: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut w = Vec::new();
        self.enum_from(&mut w, degree, &mut out);
        out
    }

    fn enum_from(&self, word: &mut Vec<GenId>, remaining: usize, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(Word::from_slice(word));
            return;
        }
        for g in self.gens.ids() {
            word.push(g);
            if !self.redex_at_end(word) {
                self.enum_from(word, remaining - 1, out);
            }
            word.pop();
        }
    }

    /// Overlap and inclusion ambiguities among left-hand sides whose
    /// combined word has degree at most `max_degree`; both resolutions must
    /// reach the same normal form.
    pub fn check_local_confluence(&self, max_degree: usize) -> VerificationReport {
        let start = std::time::Instant::now();
        let mut ambiguities: Vec<(Word, Element, Element)> = Vec::new();
        for r1 in &self.rules {
            let l1 = r1.lhs.letters();
            for r2 in &self.rules {
                let l2 = r2.lhs.letters();
                for k in 1..l1.len().min(l2.len()) {
                    if l1.len() + l2.len() - k > max_degree {
                        continue;
                    }
                    if l1[l1.len() - k..] == l2[..k] {
                        let tail = Word::from_slice(&l2[k..]);
                        let head = Word::from_slice(&l1[..l1.len() - k]);
                        let whole = r1.lhs.concat(&tail);
                        let a = free_multiply(&r1.rhs, &Element::word(tail));
                        let b = free_multiply(&Element::word(head), &r2.rhs);
                        ambiguities.push((whole, a, b));
                    }
                }
                if l2.len() < l1.len() && l1.len() <= max_degree {
                    for p in 0..=l1.len() - l2.len() {
                        if &l1[p..p + l2.len()] == l2 {
                            let a = r1.rhs.clone();
                            let b = self.rewrite_at(l1, p, self.rule_index(&r2.lhs));
                            ambiguities.push((r1.lhs.clone(), a, b));
                        }
                    }
                }
            }
        }
        let total = ambiguities.len();
        let failures: Vec<ReportItem> = ambiguities
            .par_iter()
            .map_init(
                || Reducer::new(self),
                |red, (w, a, b)| {
                    let diff = red.normal_form(&(a - b));
                    if diff.is_zero() {
                        None
                    } else {
                        Some(ReportItem::from_residual(
                            format!("ambiguity {}", w.display(&self.gens)),
                            red.normal_form(a).display(&self.gens).to_string(),
                            red.normal_form(b).display(&self.gens).to_string(),
                            diff.display(&self.gens).to_string(),
                        ))
                    }
                },
            )
            .flatten()
            .collect();
        let mut report = VerificationReport::new("confluence");
        let ms = start.elapsed().as_millis() as u64;
        report.push(
            ReportItem::from_residual(
                format!("ambiguities up to degree {max_degree}"),
                format!("{total} ambiguities"),
                format!("{} divergent", failures.len()),
                if failures.is_empty() { String::new() } else { format!("{} divergent", failures.len()) },
            )
            .with_ms(ms),
        );
        for f in failures {
            report.push(f);
        }
        report
    }

    fn rule_index(&self, lhs: &Word) -> usize {
        self.rules.binary_search_by(|r| r.lhs.cmp(lhs)).expect("rule present")
    }

    pub fn to_json(&self) -> String {
        let file = PresentationFile {
            order: "deglex".into(),
            generators: self.gens.symbols().to_vec(),
            rules: self
                .rules
                .iter()
                .map(|r| RuleFile {
                    lhs: self.names(&r.lhs),
                    rhs: r
                        .rhs
                        .terms()
                        .map(|(w, c)| TermFile { word: self.names(w), coeff: c.terms().collect() })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("presentation serialization")
    }

    fn names(&self, w: &Word) -> Vec<String> {
        w.letters().iter().map(|&g| self.gens.name(g).to_string()).collect()
    }

    pub fn from_json(text: &str) -> Result<Self, RewriteError> {
        let file: PresentationFile = serde_json::from_str(text).map_err(|e| RewriteError::Format(e.to_string()))?;
        if file.order != "deglex" {
            return Err(RewriteError::Format(format!("unsupported order `{}`", file.order)));
        }
        let mut syms = file.generators;
        syms.sort_by_key(|s| s.order_key);
        let gens = GeneratorSet::new(syms.into_iter().map(|s| (s.name, s.parity))).map_err(|e| RewriteError::Format(e.to_string()))?;
        let word = |names: &[String]| -> Result<Word, RewriteError> {
            names
                .iter()
                .map(|n| gens.lookup(n).ok_or_else(|| RewriteError::UnknownGenerator(n.clone())))
                .collect::<Result<Vec<_>, _>>()
                .map(|v| Word::from_slice(&v))
        };
        let mut rules = Vec::new();
        for r in &file.rules {
            let mut rhs = Element::zero();
            for t in &r.rhs {
                rhs.add_term(word(&t.word)?, &Laurent::from_terms(t.coeff.iter().copied()));
            }
            rules.push(RewriteRule { lhs: word(&r.lhs)?, rhs });
        }
        Presentation::from_rules(gens, rules)
    }
}

fn contains(hay: &[GenId], needle: &[GenId]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

#[derive(Serialize, Deserialize)]
struct PresentationFile {
    order: String,
    generators: Vec<GeneratorSymbol>,
    rules: Vec<RuleFile>,
}

#[derive(Serialize, Deserialize)]
struct RuleFile {
    lhs: Vec<String>,
    rhs: Vec<TermFile>,
}

#[derive(Serialize, Deserialize)]
struct TermFile {
    word: Vec<String>,
    coeff: Vec<(i32, i64)>,
}

const CACHE_LIMIT: usize = 1 << 20;

/// Normal-form computer with a private word cache. Create one per task or
/// thread.
pub struct Reducer<'p> {
    pres: &'p Presentation,
    cache: HashMap<Word, Element>,
}

impl<'p> Reducer<'p> {
    pub fn new(pres: &'p Presentation) -> Self {
        Reducer { pres, cache: HashMap::new() }
    }

    pub fn presentation(&self) -> &'p Presentation {
        self.pres
    }

    pub fn normal_form(&mut self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            let nf = self.nf_word(w);
            out.add_scaled(&nf, c);
        }
        out
    }

    pub fn nf_word(&mut self, w: &Word) -> Element {
        if let Some(e) = self.cache.get(w) {
            return e.clone();
        }
        let nf = match self.pres.find_redex(w.letters()) {
            None => Element::word(w.clone()),
            Some((pos, r)) => {
                let step = self.pres.rewrite_at(w.letters(), pos, r);
                let mut out = Element::zero();
                for (v, c) in step.terms() {
                    debug_assert!(v < w, "rewrite step must decrease the word");
                    let sub = self.nf_word(v);
                    out.add_scaled(&sub, c);
                }
                out
            }
        };
        if self.cache.len() >= CACHE_LIMIT {
            self.cache.clear();
        }
        self.cache.insert(w.clone(), nf.clone());
        nf
    }

    /// Normal form of a product.
    pub fn mul(&mut self, a: &Element, b: &Element) -> Element {
        self.normal_form(&free_multiply(a, b))
    }

    pub fn mul_all(&mut self, factors: &[&Element]) -> Element {
        let mut acc = Element::one();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }
}

/// Reduces every slot of a tensor with its own reducer.
pub fn normalize_tensor(t: &Tensor, reds: &mut [Reducer<'_>]) -> Tensor {
    assert_eq!(t.arity(), reds.len(), "one reducer per tensor slot");
    let mut out = t.clone();
    for (i, red) in reds.iter_mut().enumerate() {
        out = out.map_slot(i, &mut |w| red.nf_word(w));
    }
    out
}

/// Convenience for presentations whose generators are all even, used by
/// tests and small examples.
pub fn even_generators(names: &[&str]) -> GeneratorSet {
    GeneratorSet::new(names.iter().map(|n| (*n, Parity::Even))).expect("distinct names")
}
