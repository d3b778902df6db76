//! Free ℤ₂-graded algebras over ℤ[q, q⁻¹] and their Koszul-signed tensor
//! powers.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::coeff::Laurent;

pub type GenId = u16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn from_odd(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_odd(self.is_odd() != rhs.is_odd())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSymbol {
    pub id: GenId,
    pub name: String,
    pub parity: Parity,
    /// Position in the total order on generators.
    pub order_key: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("generator id {0} is outside the ambient generator set of size {1}")]
    ForeignGenerator(GenId, usize),
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("tensor arity mismatch: {0} vs {1}")]
    Arity(usize, usize),
}

/// Finite graded generator set. Ids coincide with order keys, so comparing
/// ids compares generators in the monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    symbols: Vec<GeneratorSymbol>,
    by_name: HashMap<String, GenId>,
}

impl GeneratorSet {
    /// Generators listed in increasing order.
    pub fn new<S: Into<String>>(gens: impl IntoIterator<Item = (S, Parity)>) -> Result<Self, AlgebraError> {
        let mut symbols = Vec::new();
        let mut by_name = HashMap::new();
        for (i, (name, parity)) in gens.into_iter().enumerate() {
            let name = name.into();
            if by_name.insert(name.clone(), i as GenId).is_some() {
                return Err(AlgebraError::DuplicateName(name));
            }
            symbols.push(GeneratorSymbol { id: i as GenId, name, parity, order_key: i as u32 });
        }
        Ok(GeneratorSet { symbols, by_name })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[GeneratorSymbol] {
        &self.symbols
    }

    pub fn parity(&self, g: GenId) -> Parity {
        self.symbols[g as usize].parity
    }

    pub fn name(&self, g: GenId) -> &str {
        &self.symbols[g as usize].name
    }

    pub fn lookup(&self, name: &str) -> Option<GenId> {
        self.by_name.get(name).copied()
    }

    pub fn word_parity(&self, w: &Word) -> Parity {
        word_parity(self, w)
    }

    pub fn ids(&self) -> impl Iterator<Item = GenId> {
        0..self.symbols.len() as GenId
    }

    fn check(&self, e: &Element) -> Result<(), AlgebraError> {
        for w in e.terms.keys() {
            if let Some(&g) = w.0.iter().find(|&&g| g as usize >= self.len()) {
                return Err(AlgebraError::ForeignGenerator(g, self.len()));
            }
        }
        Ok(())
    }

    /// Free product, validated against this generator set.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(free_multiply(a, b))
    }
}

/// Sum of generator parities mod 2.
pub fn word_parity(gens: &GeneratorSet, w: &Word) -> Parity {
    Parity::from_odd(w.0.iter().filter(|&&g| gens.parity(g).is_odd()).count() % 2 == 1)
}

/// A monomial of the free algebra. Ordered degree first, then
/// lexicographically by generator order; this is the monomial order used
/// for orienting relations.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[GenId; 8]>);

impl Word {
    pub fn unit() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_slice(s: &[GenId]) -> Self {
        Word(SmallVec::from_slice(s))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn letters(&self) -> &[GenId] {
        &self.0
    }

    pub fn display<'a>(&'a self, gens: &'a GeneratorSet) -> impl fmt::Display + 'a {
        WordDisplay { word: self, gens }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl From<&[GenId]> for Word {
    fn from(s: &[GenId]) -> Self {
        Word::from_slice(s)
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    gens: &'a GeneratorSet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_unit() {
            return write!(f, "1");
        }
        for &g in self.word.letters() {
            write!(f, "{}", self.gens.name(g))?;
        }
        Ok(())
    }
}

/// Finite ℤ[q, q⁻¹]-combination of words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Word, Laurent>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::scalar(Laurent::one())
    }

    pub fn scalar(c: Laurent) -> Self {
        Element::monomial(Word::unit(), c)
    }

    pub fn gen(g: GenId) -> Self {
        Element::monomial(Word::from_slice(&[g]), Laurent::one())
    }

    pub fn word(w: Word) -> Self {
        Element::monomial(w, Laurent::one())
    }

    pub fn monomial(w: Word, c: Laurent) -> Self {
        let mut e = Element::zero();
        e.add_term(w, &c);
        e
    }

    pub fn add_term(&mut self, w: Word, c: &Laurent) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Laurent) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            self.add_term(w.clone(), &(v * c));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Laurent)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Laurent)> {
        self.terms.into_iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> Laurent {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Largest word in the monomial order, with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Laurent)> {
        self.terms.iter().next_back()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::degree).max()
    }

    pub fn scale(&self, c: &Laurent) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }

    /// Parity if every word has the same one; `None` for mixed or zero.
    pub fn parity(&self, gens: &GeneratorSet) -> Option<Parity> {
        let mut it = self.terms.keys().map(|w| word_parity(gens, w));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn is_homogeneous(&self, gens: &GeneratorSet) -> bool {
        self.is_zero() || self.parity(gens).is_some()
    }

    /// Coefficients evaluated at q = 1.
    pub fn classical_limit(&self) -> BTreeMap<Word, i64> {
        self.terms
            .iter()
            .map(|(w, c)| (w.clone(), c.eval_at_one()))
            .filter(|(_, c)| *c != 0)
            .collect()
    }

    pub fn display<'a>(&'a self, gens: &'a GeneratorSet) -> impl fmt::Display + 'a {
        ElementDisplay { elem: self, gens }
    }

    /// Substitutes each generator by an element of another algebra and
    /// multiplies out freely (no reduction).
    pub fn substitute(&self, images: &dyn Fn(GenId) -> Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            let mut acc = Element::scalar(c.clone());
            for &g in w.letters() {
                acc = free_multiply(&acc, &images(g));
            }
            out.add_scaled(&acc, &Laurent::one());
        }
        out
    }
}

/// Bilinear extension of word concatenation.
pub fn free_multiply(a: &Element, b: &Element) -> Element {
    let mut out = Element::zero();
    for (u, c) in &a.terms {
        for (v, d) in &b.terms {
            out.add_term(u.concat(v), &(c * d));
        }
    }
    out
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Laurent::one());
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Laurent::constant(-1));
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&Laurent::constant(-1))
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        free_multiply(self, rhs)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

pub(crate) fn fmt_coeff_prefix(c: &Laurent) -> Option<String> {
    if c.is_one() {
        return None;
    }
    Some(match c.as_monomial() {
        Some((1, k)) => format!("q^{k}"),
        Some((-1, k)) if k != 0 => format!("-q^{k}"),
        Some((-1, _)) => "-1".to_string(),
        Some((n, 0)) => format!("{n}"),
        Some((n, k)) => format!("{n}*q^{k}"),
        None => format!("({c})"),
    })
}

struct ElementDisplay<'a> {
    elem: &'a Element,
    gens: &'a GeneratorSet,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in self.elem.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (fmt_coeff_prefix(c), w.is_unit()) {
                (None, _) => write!(f, "{}", w.display(self.gens))?,
                (Some(p), true) => write!(f, "{p}")?,
                (Some(p), false) if p == "-1" => write!(f, "-{}", w.display(self.gens))?,
                (Some(p), false) => write!(f, "{p} * {}", w.display(self.gens))?,
            }
        }
        Ok(())
    }
}

pub type TensorKey = SmallVec<[Word; 3]>;

/// Element of an n-fold tensor power `A₁ ⊗ … ⊗ Aₙ`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor {
    arity: usize,
    terms: BTreeMap<TensorKey, Laurent>,
}

impl Tensor {
    pub fn zero(arity: usize) -> Self {
        Tensor { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        let mut t = Tensor::zero(arity);
        t.add_term((0..arity).map(|_| Word::unit()).collect(), &Laurent::one());
        t
    }

    /// `e₁ ⊗ e₂ ⊗ …`, expanded multilinearly.
    pub fn pure(factors: &[&Element]) -> Self {
        let mut t = Tensor::one(0);
        for e in factors {
            let mut next = Tensor::zero(t.arity + 1);
            for (k, c) in &t.terms {
                for (w, d) in e.terms() {
                    let mut key = k.clone();
                    key.push(w.clone());
                    next.add_term(key, &(c * d));
                }
            }
            t = next;
        }
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_term(&mut self, key: TensorKey, c: &Laurent) {
        debug_assert_eq!(key.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &Laurent) {
        assert_eq!(self.arity, other.arity, "tensor arity mismatch");
        for (k, v) in &other.terms {
            self.add_term(k.clone(), &(v * c));
        }
    }

    pub fn scale(&self, c: &Laurent) -> Tensor {
        let mut out = Tensor::zero(self.arity);
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorKey, &Laurent)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Applies a linear map to every slot-wise word, one slot at a time.
    pub fn map_slot(&self, slot: usize, f: &mut dyn FnMut(&Word) -> Element) -> Tensor {
        let mut out = Tensor::zero(self.arity);
        for (k, c) in &self.terms {
            let img = f(&k[slot]);
            for (w, d) in img.terms() {
                let mut key = k.clone();
                key[slot] = w.clone();
                out.add_term(key, &(c * d));
            }
        }
        out
    }

    /// Replaces slot `slot` by the tensor factors of `f(word)`, raising the
    /// arity. `f` must be parity preserving for the result to be a
    /// morphism image.
    pub fn expand_slot(&self, slot: usize, f: &mut dyn FnMut(&Word) -> Tensor) -> Tensor {
        let mut out: Option<Tensor> = None;
        for (k, c) in &self.terms {
            let img = f(&k[slot]);
            let acc = out.get_or_insert_with(|| Tensor::zero(self.arity - 1 + img.arity));
            for (ik, d) in img.terms() {
                let mut key: TensorKey = k[..slot].iter().cloned().collect();
                key.extend(ik.iter().cloned());
                key.extend(k[slot + 1..].iter().cloned());
                acc.add_term(key, &(c * d));
            }
        }
        out.unwrap_or_else(|| Tensor::zero(self.arity))
    }

    /// Contracts slot `slot` by a scalar-valued map (e.g. the counit),
    /// lowering the arity.
    pub fn contract_slot(&self, slot: usize, f: &mut dyn FnMut(&Word) -> Laurent) -> Tensor {
        let mut out = Tensor::zero(self.arity - 1);
        for (k, c) in &self.terms {
            let v = f(&k[slot]);
            if v.is_zero() {
                continue;
            }
            let key: TensorKey = k.iter().enumerate().filter(|(i, _)| *i != slot).map(|(_, w)| w.clone()).collect();
            out.add_term(key, &(c * &v));
        }
        out
    }

    /// Total parity of each term, checked for homogeneity.
    pub fn parity(&self, slots: &[&GeneratorSet]) -> Option<Parity> {
        let mut it = self
            .terms
            .keys()
            .map(|k| k.iter().zip(slots).fold(Parity::Even, |p, (w, g)| p + word_parity(g, w)));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn display<'a>(&'a self, slots: &'a [&'a GeneratorSet]) -> impl fmt::Display + 'a {
        TensorDisplay { t: self, slots }
    }
}

/// Koszul-signed product in a tensor power:
/// `(a₁⊗…⊗aₙ)(b₁⊗…⊗bₙ) = (−1)^{Σ_{j<i} |aᵢ||bⱼ|} a₁b₁⊗…⊗aₙbₙ`.
pub fn tensor_multiply(slots: &[&GeneratorSet], s: &Tensor, t: &Tensor) -> Result<Tensor, AlgebraError> {
    if s.arity != t.arity {
        return Err(AlgebraError::Arity(s.arity, t.arity));
    }
    if slots.len() != s.arity {
        return Err(AlgebraError::Arity(slots.len(), s.arity));
    }
    let n = s.arity;
    let mut out = Tensor::zero(n);
    let par = |k: &TensorKey| -> SmallVec<[bool; 3]> {
        k.iter().zip(slots).map(|(w, g)| word_parity(g, w).is_odd()).collect()
    };
    let t_par: Vec<(&TensorKey, &Laurent, SmallVec<[bool; 3]>)> = t.terms.iter().map(|(k, c)| (k, c, par(k))).collect();
    for (ka, ca) in &s.terms {
        let pa = par(ka);
        for (kb, cb, pb) in &t_par {
            let mut odd = false;
            for i in 0..n {
                for j in 0..i {
                    odd ^= pa[i] && pb[j];
                }
            }
            let key: TensorKey = ka.iter().zip(kb.iter()).map(|(u, v)| u.concat(v)).collect();
            let c = ca * *cb;
            out.add_term(key, &if odd { -c } else { c });
        }
    }
    Ok(out)
}

impl Add for &Tensor {
    type Output = Tensor;
    fn add(self, rhs: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(rhs, &Laurent::one());
        out
    }
}

impl Sub for &Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(rhs, &Laurent::constant(-1));
        out
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

struct TensorDisplay<'a> {
    t: &'a Tensor,
    slots: &'a [&'a GeneratorSet],
}

impl fmt::Display for TensorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.t.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if let Some(p) = fmt_coeff_prefix(c) {
                write!(f, "{p} * ")?;
            }
            for (i, (w, g)) in k.iter().zip(self.slots).enumerate() {
                if i > 0 {
                    write!(f, " (x) ")?;
                }
                write!(f, "{}", w.display(g))?;
            }
        }
        Ok(())
    }
}
