//! Localization of a presented algebra at finitely many regular elements
//! that q-commute with each other.
//!
//! An element is stored over a common denominator as
//! `num · s₁^{-d₁} ⋯ s_r^{-d_r}` with `num` in normal form. Inverses move
//! left past generators through a per-generator certificate:
//! `s g = q^c g s` (normal), or `s g = q^c g s + δ` with δ itself
//! q-commuting with s (skew).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

use crate::coeff::Laurent;
use crate::rewrite::{Presentation, Reducer};
use crate::superfree::{tensor_multiply, Element, GenId, GeneratorSet, Tensor, TensorKey, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertEntry {
    /// s g = q^c g s
    Normal(i32),
    /// s g = q^c g s + δ, with s δ = q^{c2} δ s
    Skew { c: i32, delta: Element, c2: i32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizeError {
    #[error("element is not parity- and degree-homogeneous")]
    NotHomogeneous,
    #[error("not normal with respect to {generator}: s*g - q^c*g*s has residual {residual}")]
    NotNormal { generator: String, residual: String },
    #[error("inverted elements {0} and {1} do not q-commute")]
    NotCommuting(String, String),
    #[error("skew term for {0} involves a generator that is not normal")]
    NestedSkew(String),
    #[error("no localized element named {0}")]
    Missing(String),
}

/// Finds c with nf(a) = q^c nf(b), if any.
fn q_ratio(a: &Element, b: &Element) -> Option<i32> {
    let (w, cb) = b.leading()?;
    let ca = a.coeff(w);
    let c = ca.div_exact(cb)?;
    let (coef, k) = c.as_monomial()?;
    (coef == 1 && *a == b.scale(&Laurent::q_pow(k))).then_some(k)
}

/// Exponents c_g with s·g = q^{c_g}·g·s for every generator; generators
/// that annihilate s on both sides get 0.
pub fn normality_certificate(p: &Presentation, s: &Element) -> Result<Vec<i32>, LocalizeError> {
    certificate(p, s, false).map(|t| {
        t.into_iter()
            .map(|e| match e {
                CertEntry::Normal(c) => c,
                CertEntry::Skew { .. } => unreachable!("strict certificate"),
            })
            .collect()
    })
}

/// Like `normality_certificate`, but allows a correction δ that itself
/// q-commutes with s and involves only generators with exact entries.
pub fn skew_certificate(p: &Presentation, s: &Element) -> Result<Vec<CertEntry>, LocalizeError> {
    certificate(p, s, true)
}

fn homogeneous(gens: &GeneratorSet, s: &Element) -> bool {
    let d: Vec<usize> = s.terms().map(|(w, _)| w.degree()).collect();
    !s.is_zero() && s.parity(gens).is_some() && d.windows(2).all(|p| p[0] == p[1])
}

fn certificate(p: &Presentation, s: &Element, allow_skew: bool) -> Result<Vec<CertEntry>, LocalizeError> {
    let gens = p.gens();
    if !homogeneous(gens, s) {
        return Err(LocalizeError::NotHomogeneous);
    }
    let mut red = Reducer::new(p);
    let mut table = Vec::new();
    for g in gens.ids() {
        let x = Element::gen(g);
        let sg = red.mul(s, &x);
        let gs = red.mul(&x, s);
        if sg.is_zero() && gs.is_zero() {
            table.push(CertEntry::Normal(0));
            continue;
        }
        if let Some(c) = q_ratio(&sg, &gs) {
            table.push(CertEntry::Normal(c));
            continue;
        }
        let fail = |c: i32| LocalizeError::NotNormal {
            generator: gens.name(g).to_string(),
            residual: (&sg - &gs.scale(&Laurent::q_pow(c))).display(gens).to_string(),
        };
        // best exponent: match the coefficient of the leading word of g·s
        let c = gs
            .leading()
            .and_then(|(w, cb)| sg.coeff(w).div_exact(cb))
            .and_then(|r| r.as_monomial())
            .filter(|&(coef, _)| coef == 1)
            .map(|(_, k)| k)
            .unwrap_or(0);
        if !allow_skew {
            return Err(fail(c));
        }
        let delta = &sg - &gs.scale(&Laurent::q_pow(c));
        let sd = red.mul(s, &delta);
        let ds = red.mul(&delta, s);
        match q_ratio(&sd, &ds) {
            Some(c2) => table.push(CertEntry::Skew { c, delta, c2 }),
            None if sd.is_zero() && ds.is_zero() => table.push(CertEntry::Skew { c, delta, c2: 0 }),
            None => return Err(fail(c)),
        }
    }
    for (g, e) in table.iter().enumerate() {
        if let CertEntry::Skew { delta, .. } = e {
            let nested = delta.terms().flat_map(|(w, _)| w.letters().to_vec()).any(|h| !matches!(table[h as usize], CertEntry::Normal(_)));
            if nested {
                return Err(LocalizeError::NestedSkew(gens.name(g as GenId).to_string()));
            }
        }
    }
    Ok(table)
}

#[derive(Clone, Debug)]
pub struct Inverted {
    pub name: String,
    pub s: Element,
    pub table: Vec<CertEntry>,
}

impl Inverted {
    pub fn is_normal(&self) -> bool {
        self.table.iter().all(|e| matches!(e, CertEntry::Normal(_)))
    }
}

/// A presented algebra with finitely many elements inverted.
#[derive(Clone, Debug)]
pub struct LocalizedAlgebra {
    pub base: Presentation,
    pub inverted: Vec<Inverted>,
    /// s_i s_j = q^{comm[i][j]} s_j s_i
    comm: Vec<Vec<i32>>,
}

pub type Den = SmallVec<[u32; 4]>;

impl LocalizedAlgebra {
    pub fn new(base: Presentation) -> Self {
        LocalizedAlgebra { base, inverted: Vec::new(), comm: Vec::new() }
    }

    pub fn adjoin_normal(self, name: &str, s: &Element) -> Result<Self, LocalizeError> {
        let table = normality_certificate(&self.base, s)?.into_iter().map(CertEntry::Normal).collect();
        self.adjoin(name, s, table)
    }

    pub fn adjoin_skew(self, name: &str, s: &Element) -> Result<Self, LocalizeError> {
        let table = skew_certificate(&self.base, s)?;
        self.adjoin(name, s, table)
    }

    fn adjoin(mut self, name: &str, s: &Element, table: Vec<CertEntry>) -> Result<Self, LocalizeError> {
        let s = self.base.normal_form(s);
        let mut red = Reducer::new(&self.base);
        let mut row = Vec::new();
        for other in &self.inverted {
            let a = red.mul(&s, &other.s);
            let b = red.mul(&other.s, &s);
            let e = q_ratio(&a, &b).ok_or_else(|| LocalizeError::NotCommuting(name.to_string(), other.name.clone()))?;
            row.push(e);
        }
        for (i, e) in row.iter().enumerate() {
            self.comm[i].push(-e);
        }
        row.push(0);
        self.comm.push(row);
        self.inverted.push(Inverted { name: name.to_string(), s, table });
        Ok(self)
    }

    pub fn gens(&self) -> &GeneratorSet {
        self.base.gens()
    }

    pub fn index(&self, name: &str) -> Result<usize, LocalizeError> {
        self.inverted.iter().position(|i| i.name == name).ok_or_else(|| LocalizeError::Missing(name.to_string()))
    }

    pub fn zero_den(&self) -> Den {
        self.inverted.iter().map(|_| 0).collect()
    }

    pub fn reducer(&self) -> LocReducer<'_> {
        LocReducer { alg: self, red: Reducer::new(&self.base), memo: HashMap::new() }
    }
}

/// `num · s^{-den}`.
#[derive(Clone, PartialEq, Eq)]
pub struct LocElement {
    pub num: Element,
    pub den: Den,
}

impl LocElement {
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl fmt::Debug for LocElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} * s^-{:?}", self.num, self.den.as_slice())
    }
}

/// Tensor with a common denominator per slot: `t · (s^{-d₁} ⊗ ⋯ ⊗ s^{-dₙ})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocTensor {
    pub t: Tensor,
    pub dens: Vec<Den>,
}

impl LocTensor {
    pub fn is_zero(&self) -> bool {
        self.t.is_zero()
    }
}

type Expansion = Vec<(u32, Element)>;

/// Arithmetic context with its own caches.
pub struct LocReducer<'a> {
    pub alg: &'a LocalizedAlgebra,
    pub red: Reducer<'a>,
    memo: HashMap<(usize, u32, Word), Expansion>,
}

fn add_exp(map: &mut BTreeMap<u32, Element>, k: u32, e: &Element, c: &Laurent) {
    map.entry(k).or_default().add_scaled(e, c);
}

impl<'a> LocReducer<'a> {
    pub fn from_base(&mut self, x: &Element) -> LocElement {
        LocElement { num: self.red.normal_form(x), den: self.alg.zero_den() }
    }

    pub fn scalar(&mut self, c: Laurent) -> LocElement {
        self.from_base(&Element::scalar(c))
    }

    /// s_i^{-1}.
    pub fn inv(&self, i: usize) -> LocElement {
        let mut den = self.alg.zero_den();
        den[i] = 1;
        LocElement { num: Element::one(), den }
    }

    pub fn inv_named(&self, name: &str) -> Result<LocElement, LocalizeError> {
        Ok(self.inv(self.alg.index(name)?))
    }

    fn power(&mut self, i: usize, k: u32) -> Element {
        let s = self.alg.inverted[i].s.clone();
        let mut acc = Element::one();
        for _ in 0..k {
            acc = self.red.mul(&acc, &s);
        }
        acc
    }

    /// s_i^{-k} · w = Σ m_j s_i^{-j}.
    fn inv_past_word(&mut self, i: usize, k: u32, w: &Word) -> Expansion {
        if k == 0 || w.is_unit() {
            return vec![(k, Element::word(w.clone()))];
        }
        let key = (i, k, w.clone());
        if let Some(e) = self.memo.get(&key) {
            return e.clone();
        }
        let table = &self.alg.inverted[i].table;
        let out: Expansion = if w.letters().iter().all(|&g| matches!(table[g as usize], CertEntry::Normal(_))) {
            let c: i32 = w
                .letters()
                .iter()
                .map(|&g| match table[g as usize] {
                    CertEntry::Normal(c) => c,
                    _ => unreachable!(),
                })
                .sum();
            vec![(k, Element::monomial(w.clone(), Laurent::q_pow(-(k as i32) * c)))]
        } else {
            let g = w.letters()[0];
            let rest = Word::from_slice(&w.letters()[1..]);
            // s^{-k} g = s^{-(k-1)} (s^{-1} g)
            let mut first: BTreeMap<u32, Element> = BTreeMap::new();
            match &table[g as usize] {
                CertEntry::Normal(c) => add_exp(&mut first, 1, &Element::gen(g), &Laurent::q_pow(-c)),
                CertEntry::Skew { c, delta, c2 } => {
                    add_exp(&mut first, 1, &Element::gen(g), &Laurent::q_pow(-c));
                    add_exp(&mut first, 2, delta, &-Laurent::q_pow(-c - c2));
                }
            }
            let mut cur: BTreeMap<u32, Element> = first;
            for _ in 1..k {
                let mut next = BTreeMap::new();
                for (j, m) in &cur {
                    for (j2, m2) in self.inv_past_elem(i, 1, m) {
                        add_exp(&mut next, j + j2, &m2, &Laurent::one());
                    }
                }
                cur = next;
            }
            let mut total: BTreeMap<u32, Element> = BTreeMap::new();
            for (j, m) in cur {
                for (j2, r) in self.inv_past_word(i, j, &rest) {
                    let prod = self.red.mul(&m, &r);
                    add_exp(&mut total, j2, &prod, &Laurent::one());
                }
            }
            total.into_iter().filter(|(_, e)| !e.is_zero()).collect()
        };
        self.memo.insert(key, out.clone());
        out
    }

    fn inv_past_elem(&mut self, i: usize, k: u32, x: &Element) -> Expansion {
        let mut total: BTreeMap<u32, Element> = BTreeMap::new();
        for (w, c) in x.terms() {
            for (j, m) in self.inv_past_word(i, k, w) {
                add_exp(&mut total, j, &m, c);
            }
        }
        total.into_iter().filter(|(_, e)| !e.is_zero()).collect()
    }

    /// s^{-d} · x as a list of (num, den).
    fn den_times(&mut self, d: &Den, x: &Element) -> Vec<(Element, Den)> {
        let r = d.len();
        let mut terms = vec![(x.clone(), self.alg.zero_den())];
        for i in (0..r).rev() {
            let mut next = Vec::new();
            for (m, dd) in terms {
                for (j, m2) in self.inv_past_elem(i, d[i], &m) {
                    let mut d2 = dd.clone();
                    d2[i] = j;
                    next.push((m2, d2));
                }
            }
            terms = next;
        }
        terms
    }

    /// q-exponent from (s^{-a})(s^{-b}) = q^φ s^{-(a+b)}.
    fn merge_phase(&self, a: &Den, b: &Den) -> i32 {
        let mut phi = 0i64;
        for i in 0..a.len() {
            for j in 0..i {
                phi += self.alg.comm[i][j] as i64 * a[i] as i64 * b[j] as i64;
            }
        }
        phi as i32
    }

    /// n · s^{-from} rewritten over the larger denominator `to`.
    fn raise(&mut self, n: &Element, from: &Den, to: &Den) -> Element {
        if from == to {
            return n.clone();
        }
        let mut phi = 0i64;
        for j in 0..to.len() {
            for i in j + 1..to.len() {
                phi -= self.alg.comm[i][j] as i64 * from[i] as i64 * to[j] as i64;
            }
        }
        let mut acc = n.scale(&Laurent::q_pow(phi as i32));
        for i in 0..to.len() {
            let p = self.power(i, to[i] - from[i]);
            acc = self.red.mul(&acc, &p);
        }
        acc
    }

    fn combine(&mut self, parts: Vec<(Element, Den)>) -> LocElement {
        let r = self.alg.inverted.len();
        let mut top: Den = self.alg.zero_den();
        for (n, d) in &parts {
            if n.is_zero() {
                continue;
            }
            for i in 0..r {
                top[i] = top[i].max(d[i]);
            }
        }
        let mut num = Element::zero();
        for (n, d) in parts {
            if n.is_zero() {
                continue;
            }
            let lifted = self.raise(&n, &d, &top);
            num.add_scaled(&lifted, &Laurent::one());
        }
        if num.is_zero() {
            return LocElement { num, den: self.alg.zero_den() };
        }
        LocElement { num, den: top }
    }

    /// Numerators of `xs` over their common denominator.
    pub fn common_numerators(&mut self, xs: &[LocElement]) -> (Vec<Element>, Den) {
        let mut top = self.alg.zero_den();
        for x in xs {
            for (t, d) in top.iter_mut().zip(&x.den) {
                *t = (*t).max(*d);
            }
        }
        let nums = xs.iter().map(|x| self.raise(&x.num, &x.den, &top)).collect();
        (nums, top)
    }

    pub fn add(&mut self, a: &LocElement, b: &LocElement) -> LocElement {
        self.combine(vec![(a.num.clone(), a.den.clone()), (b.num.clone(), b.den.clone())])
    }

    pub fn sub(&mut self, a: &LocElement, b: &LocElement) -> LocElement {
        self.combine(vec![(a.num.clone(), a.den.clone()), (-&b.num, b.den.clone())])
    }

    pub fn scale(&mut self, a: &LocElement, c: &Laurent) -> LocElement {
        LocElement { num: a.num.scale(c), den: a.den.clone() }
    }

    pub fn mul(&mut self, a: &LocElement, b: &LocElement) -> LocElement {
        let moved = self.den_times(&a.den, &b.num);
        let mut parts = Vec::new();
        for (m, d) in moved {
            let num = self.red.mul(&a.num, &m);
            let phi = self.merge_phase(&d, &b.den);
            let den: Den = d.iter().zip(&b.den).map(|(x, y)| x + y).collect();
            parts.push((num.scale(&Laurent::q_pow(phi)), den));
        }
        self.combine(parts)
    }

    pub fn mul_all(&mut self, xs: &[&LocElement]) -> LocElement {
        let mut acc = self.scalar(Laurent::one());
        for x in xs {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn equal(&mut self, a: &LocElement, b: &LocElement) -> bool {
        self.sub(a, b).is_zero()
    }

    /// Common-denominator form of a slotwise tensor term list, each slot
    /// lifted to the maximal denominator of that slot.
    pub fn tensor_combine(&mut self, arity: usize, parts: Vec<(Laurent, Vec<(Word, Den)>)>) -> LocTensor {
        let r = self.alg.inverted.len();
        let mut tops: Vec<Den> = (0..arity).map(|_| self.alg.zero_den()).collect();
        for (_, slots) in &parts {
            for (k, (_, d)) in slots.iter().enumerate() {
                for i in 0..r {
                    tops[k][i] = tops[k][i].max(d[i]);
                }
            }
        }
        let mut t = Tensor::zero(arity);
        for (c, slots) in parts {
            let mut acc = Tensor::one(0);
            for (k, (w, d)) in slots.iter().enumerate() {
                let lifted = self.raise(&Element::word(w.clone()), d, &tops[k]);
                let mut next = Tensor::zero(k + 1);
                for (key, c0) in acc.terms() {
                    for (w2, c1) in lifted.terms() {
                        let mut nk: TensorKey = key.clone();
                        nk.push(w2.clone());
                        next.add_term(nk, &(c0 * c1));
                    }
                }
                acc = next;
            }
            t.add_scaled(&acc, &c);
        }
        if t.is_zero() {
            tops = (0..arity).map(|_| self.alg.zero_den()).collect();
        }
        LocTensor { t, dens: tops }
    }

    pub fn tensor_pure(&mut self, xs: &[&LocElement]) -> LocTensor {
        let t = Tensor::pure(&xs.iter().map(|x| &x.num).collect::<Vec<_>>());
        LocTensor { t, dens: xs.iter().map(|x| x.den.clone()).collect() }
    }

    pub fn tensor_add(&mut self, a: &LocTensor, b: &LocTensor, c: &Laurent) -> LocTensor {
        let mut parts = Vec::new();
        for (src, coef) in [(a, Laurent::one()), (b, c.clone())] {
            for (k, v) in src.t.terms() {
                parts.push((v * &coef, k.iter().cloned().zip(src.dens.iter().cloned()).collect()));
            }
        }
        self.tensor_combine(a.t.arity(), parts)
    }

    /// Koszul-signed product of localized tensors. Denominators are even,
    /// so moving them contributes no sign.
    pub fn tensor_mul(&mut self, a: &LocTensor, b: &LocTensor) -> LocTensor {
        let n = a.t.arity();
        let gens = self.alg.gens().clone();
        let slots: Vec<&GeneratorSet> = (0..n).map(|_| &gens).collect();
        let mut parts: Vec<(Laurent, Vec<(Word, Den)>)> = Vec::new();
        // move a's denominators past each slot of b
        for (k, c) in b.t.terms() {
            let mut per_slot: Vec<Vec<(Element, Den)>> = Vec::new();
            for s in 0..n {
                per_slot.push(self.den_times(&a.dens[s], &Element::word(k[s].clone())));
            }
            // expand the per-slot sums
            let mut combos: Vec<(Laurent, Vec<(Element, Den)>)> = vec![(c.clone(), Vec::new())];
            for (s, slot) in per_slot.iter().enumerate() {
                let mut next = Vec::new();
                for (cc, sl) in &combos {
                    for (m, d) in slot {
                        let mut sl2 = sl.clone();
                        let phi = self.merge_phase(d, &b.dens[s]);
                        let den: Den = d.iter().zip(&b.dens[s]).map(|(x, y)| x + y).collect();
                        sl2.push((m.scale(&Laurent::q_pow(phi)), den));
                        next.push((cc.clone(), sl2));
                    }
                }
                combos = next;
            }
            for (cc, sl) in combos {
                let elems: Vec<&Element> = sl.iter().map(|(m, _)| m).collect();
                let tb = Tensor::pure(&elems).scale(&cc);
                let prod = tensor_multiply(&slots, &a.t, &tb).expect("same arity");
                for (key, v) in prod.terms() {
                    let mut slot_terms = Vec::new();
                    for s in 0..n {
                        slot_terms.push((key[s].clone(), sl[s].1.clone()));
                    }
                    parts.push((v.clone(), slot_terms));
                }
            }
        }
        // reduce slotwise before combining
        let mut reduced = Vec::new();
        for (c, slots_terms) in parts {
            let mut expansions: Vec<(Laurent, Vec<(Word, Den)>)> = vec![(c, Vec::new())];
            for (w, d) in slots_terms {
                let nf = self.red.nf_word(&w);
                let mut next = Vec::new();
                for (cc, sl) in &expansions {
                    for (w2, c2) in nf.terms() {
                        let mut sl2 = sl.clone();
                        sl2.push((w2.clone(), d.clone()));
                        next.push((cc * c2, sl2));
                    }
                }
                expansions = next;
            }
            reduced.extend(expansions);
        }
        self.tensor_combine(n, reduced)
    }

    pub fn tensor_equal(&mut self, a: &LocTensor, b: &LocTensor) -> bool {
        self.tensor_add(a, b, &Laurent::constant(-1)).is_zero()
    }

    pub fn display(&self, x: &LocElement) -> String {
        let gens = self.alg.gens();
        let mut s = format!("({})", x.num.display(gens));
        for (i, d) in x.den.iter().enumerate() {
            if *d > 0 {
                s.push_str(&format!(" * {}^-{}", self.alg.inverted[i].name, d));
            }
        }
        s
    }

    pub fn display_tensor(&self, x: &LocTensor) -> String {
        let gens = self.alg.gens();
        let slots: Vec<&GeneratorSet> = (0..x.t.arity()).map(|_| gens).collect();
        let mut s = format!("[{}]", x.t.display(&slots));
        for (k, d) in x.dens.iter().enumerate() {
            for (i, e) in d.iter().enumerate() {
                if *e > 0 {
                    s.push_str(&format!(" * slot{}:{}^-{}", k + 1, self.alg.inverted[i].name, e));
                }
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manin::build_manin;
    use proptest::prelude::*;

    fn m20() -> crate::manin::ManinAlgebra {
        build_manin(2, 0).unwrap()
    }

    #[test]
    fn normal_exponents_in_m20() {
        let m = m20();
        let c = normality_certificate(&m.presentation, &m.a(1, 2)).unwrap();
        let id = |i, j| m.id(i, j) as usize;
        assert_eq!((c[id(1, 1)], c[id(1, 2)], c[id(2, 1)], c[id(2, 2)]), (1, 0, 0, -1));
        let det = m.normal_form(&m.minor_raw((1, 2), (1, 2)));
        assert_eq!(normality_certificate(&m.presentation, &det).unwrap(), vec![0; 4]);
    }

    #[test]
    fn rejects_non_normal_and_inhomogeneous() {
        let m = m20();
        match normality_certificate(&m.presentation, &m.a(1, 1)) {
            Err(LocalizeError::NotNormal { generator, residual }) => {
                assert_eq!(generator, "a[2,2]");
                assert!(residual.contains("a[1,2]a[2,1]"), "{residual}");
            }
            other => panic!("{other:?}"),
        }
        let mixed = &m.a(1, 1) + &Element::one();
        assert_eq!(normality_certificate(&m.presentation, &mixed), Err(LocalizeError::NotHomogeneous));
    }

    #[test]
    fn inverse_is_two_sided_and_conservative() {
        let m = m20();
        let l = LocalizedAlgebra::new(m.presentation.clone()).adjoin_normal("a12", &m.a(1, 2)).unwrap();
        let mut lr = l.reducer();
        let s = lr.from_base(&m.a(1, 2));
        let inv = lr.inv(0);
        let one = lr.scalar(Laurent::one());
        let a = lr.mul(&s, &inv);
        let b = lr.mul(&inv, &s);
        assert!(lr.equal(&a, &one));
        assert!(lr.equal(&b, &one));
        let x = &m.a(2, 2) * &m.a(1, 1);
        assert_eq!(lr.from_base(&x).num, m.normal_form(&x));
        // s⁻¹ a11 = q⁻¹ a11 s⁻¹
        let a11 = lr.from_base(&m.a(1, 1));
        let lhs = lr.mul(&inv, &a11);
        let rhs = lr.mul(&a11, &inv);
        let rhs = lr.scale(&rhs, &Laurent::q_pow(-1));
        assert!(lr.equal(&lhs, &rhs));
    }

    #[test]
    fn skew_inverse_of_a11() {
        let m = m20();
        let t = skew_certificate(&m.presentation, &m.a(1, 1)).unwrap();
        match &t[m.id(2, 2) as usize] {
            CertEntry::Skew { c, delta, c2 } => {
                assert_eq!((*c, *c2), (0, -2));
                assert_eq!(*delta, m.normal_form(&(&m.a(1, 2) * &m.a(2, 1))).scale(&Laurent::q_inv_minus_q()));
            }
            other => panic!("{other:?}"),
        }
        let l = LocalizedAlgebra::new(m.presentation.clone()).adjoin_skew("a11", &m.a(1, 1)).unwrap();
        let mut lr = l.reducer();
        let inv = lr.inv(0);
        let det = lr.from_base(&m.minor_raw((1, 2), (1, 2)));
        let corr = lr.from_base(&(&m.a(1, 2) * &m.a(2, 1)).scale(&Laurent::q_pow(-1)));
        // a22 = a11⁻¹ (D + q⁻¹ a12 a21)
        let sum = lr.add(&det, &corr);
        let got = lr.mul(&inv, &sum);
        let want = lr.from_base(&m.a(2, 2));
        assert!(lr.equal(&got, &want), "{}", lr.display(&got));
    }

    #[test]
    fn commuting_requirement() {
        let m = m20();
        let l = LocalizedAlgebra::new(m.presentation.clone()).adjoin_normal("a12", &m.a(1, 2)).unwrap();
        let l = l.adjoin_normal("a21", &m.a(2, 1)).unwrap();
        assert_eq!(l.inverted.len(), 2);
        let err = LocalizedAlgebra::new(m.presentation.clone())
            .adjoin_skew("a11", &m.a(1, 1))
            .unwrap()
            .adjoin_skew("a22", &m.a(2, 2))
            .unwrap_err();
        assert!(matches!(err, LocalizeError::NotCommuting(..)), "{err:?}");
    }

    type Term = (Vec<u16>, i64, u32, u32);

    fn build(lr: &mut LocReducer<'_>, terms: &[Term], two: bool) -> LocElement {
        let mut acc = lr.scalar(Laurent::zero());
        for (w, c, k0, k1) in terms {
            let mut x = lr.from_base(&Element::monomial(Word::from_slice(w), Laurent::constant(*c)));
            for _ in 0..*k0 {
                let i = lr.inv(0);
                x = lr.mul(&x, &i);
            }
            if two {
                for _ in 0..*k1 {
                    let i = lr.inv(1);
                    x = lr.mul(&i, &x);
                }
            }
            acc = lr.add(&acc, &x);
        }
        acc
    }

    fn terms() -> impl Strategy<Value = Vec<Term>> {
        prop::collection::vec((prop::collection::vec(0u16..4, 0..3), -2i64..3, 0u32..2, 0u32..2), 1..3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn normal_localization_is_associative(a in terms(), b in terms(), c in terms()) {
            let m = m20();
            let l = LocalizedAlgebra::new(m.presentation.clone())
                .adjoin_normal("a12", &m.a(1, 2)).unwrap()
                .adjoin_normal("a21", &m.a(2, 1)).unwrap();
            let mut lr = l.reducer();
            let (x, y, z) = (build(&mut lr, &a, true), build(&mut lr, &b, true), build(&mut lr, &c, true));
            let xy = lr.mul(&x, &y);
            let left = lr.mul(&xy, &z);
            let yz = lr.mul(&y, &z);
            let right = lr.mul(&x, &yz);
            prop_assert!(lr.equal(&left, &right));
        }

        #[test]
        fn skew_localization_is_associative(a in terms(), b in terms(), c in terms()) {
            let m = m20();
            let l = LocalizedAlgebra::new(m.presentation.clone()).adjoin_skew("a11", &m.a(1, 1)).unwrap();
            let mut lr = l.reducer();
            let (x, y, z) = (build(&mut lr, &a, false), build(&mut lr, &b, false), build(&mut lr, &c, false));
            let xy = lr.mul(&x, &y);
            let left = lr.mul(&xy, &z);
            let yz = lr.mul(&y, &z);
            let right = lr.mul(&x, &yz);
            prop_assert!(lr.equal(&left, &right));
        }
    }
}
