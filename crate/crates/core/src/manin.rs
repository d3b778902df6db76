//! The quantum matrix superalgebra M_q(m|n): presentation, coproduct,
//! counit, quantum minors and block determinants.

use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use thiserror::Error;

use crate::coeff::Laurent;
use crate::parabolic::{LocElement, LocReducer, LocalizeError, LocalizedAlgebra};
use crate::report::{timed, ReportItem, VerificationReport};
use crate::rewrite::{normalize_tensor, Presentation, Reducer};
use crate::superfree::{tensor_multiply, Element, GenId, GeneratorSet, Parity, Tensor, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ManinError {
    #[error("block sizes must satisfy m >= 1, got m = {0}")]
    BadSize(usize),
    #[error("no adjugate exponents invert column {0} of the block")]
    InverseAnsatz(usize),
    #[error("inverse fails the two-sided check: {0}")]
    InverseCheck(String),
    #[error(transparent)]
    Localize(#[from] LocalizeError),
    #[error("index ({0},{1}) out of range for a {2}x{2} matrix")]
    OutOfRange(usize, usize, usize),
}

#[derive(Clone, Debug)]
pub struct ManinAlgebra {
    pub m: usize,
    pub n: usize,
    pub presentation: Presentation,
}

/// (−1)^k as a Laurent constant.
fn sign(odd: bool) -> Laurent {
    Laurent::constant(if odd { -1 } else { 1 })
}

pub fn generator_name(i: usize, j: usize) -> String {
    format!("a[{i},{j}]")
}

/// Builds M_q(m|n) with generators a[i,j] ordered lexicographically.
pub fn build_manin(m: usize, n: usize) -> Result<ManinAlgebra, ManinError> {
    if m == 0 {
        return Err(ManinError::BadSize(m));
    }
    let size = m + n;
    let p = |i: usize| i > m;
    let par = |i: usize, j: usize| p(i) != p(j);
    let gens = GeneratorSet::new((1..=size).flat_map(|i| {
        (1..=size).map(move |j| (generator_name(i, j), Parity::from_odd(p(i) != p(j))))
    }))
    .expect("distinct generator names");
    let id = |i: usize, j: usize| ((i - 1) * size + (j - 1)) as GenId;
    let pair = |g: GenId, h: GenId| Element::word(Word::from_slice(&[g, h]));
    let mut rels = Vec::new();
    let all: Vec<(usize, usize)> = (1..=size).flat_map(|i| (1..=size).map(move |j| (i, j))).collect();
    for &(i, j) in &all {
        for &(k, l) in &all {
            let s = sign(par(i, j) && par(k, l));
            let lhs = pair(id(i, j), id(k, l));
            let swapped = pair(id(k, l), id(i, j));
            if i == k && j < l {
                let e = if p(i) { 1 } else { -1 };
                rels.push(&lhs - &swapped.scale(&(&s * &Laurent::q_pow(e))));
            } else if j == l && i < k {
                let e = if p(j) { 1 } else { -1 };
                rels.push(&lhs - &swapped.scale(&(&s * &Laurent::q_pow(e))));
            } else if i < k && j > l {
                rels.push(&lhs - &swapped.scale(&s));
            } else if i < k && j < l {
                let corr = pair(id(k, j), id(i, l)).scale(&(&sign(par(i, j) && par(k, j)) * &Laurent::q_inv_minus_q()));
                rels.push(&(&lhs - &swapped.scale(&s)) - &corr);
            }
        }
        if par(i, j) {
            rels.push(pair(id(i, j), id(i, j)));
        }
    }
    let presentation = Presentation::new(gens, rels).expect("Manin relations orient with unit leading coefficients");
    Ok(ManinAlgebra { m, n, presentation })
}

impl ManinAlgebra {
    pub fn size(&self) -> usize {
        self.m + self.n
    }

    pub fn gens(&self) -> &GeneratorSet {
        self.presentation.gens()
    }

    /// Index parity: 0 for i ≤ m, 1 otherwise.
    pub fn index_odd(&self, i: usize) -> bool {
        i > self.m
    }

    pub fn id(&self, i: usize, j: usize) -> GenId {
        assert!((1..=self.size()).contains(&i) && (1..=self.size()).contains(&j), "index out of range");
        ((i - 1) * self.size() + (j - 1)) as GenId
    }

    /// Inverse of `id`.
    pub fn index_of(&self, g: GenId) -> (usize, usize) {
        let g = g as usize;
        (g / self.size() + 1, g % self.size() + 1)
    }

    pub fn a(&self, i: usize, j: usize) -> Element {
        Element::gen(self.id(i, j))
    }

    pub fn reducer(&self) -> Reducer<'_> {
        Reducer::new(&self.presentation)
    }

    pub fn normal_form(&self, e: &Element) -> Element {
        self.presentation.normal_form(e)
    }

    /// ε(a_ij) = δ_ij, extended multiplicatively.
    pub fn counit_word(&self, w: &Word) -> Laurent {
        let diag = w.letters().iter().all(|&g| {
            let (i, j) = self.index_of(g);
            i == j
        });
        if diag {
            Laurent::one()
        } else {
            Laurent::zero()
        }
    }

    pub fn counit(&self, x: &Element) -> Laurent {
        let mut out = Laurent::zero();
        for (w, c) in x.terms() {
            out += &(c * &self.counit_word(w));
        }
        out
    }

    pub fn comultiply(&self, x: &Element) -> Tensor {
        Coproduct::new(self).apply(x)
    }

    pub fn quantum_minor(&self, rows: (usize, usize), cols: (usize, usize)) -> Result<Element, ManinError> {
        let n = self.size();
        for &(r, c) in &[(rows.0, cols.0), (rows.1, cols.1)] {
            if !(1..=n).contains(&r) || !(1..=n).contains(&c) {
                return Err(ManinError::OutOfRange(r, c, n));
            }
        }
        Ok(self.normal_form(&self.minor_raw(rows, cols)))
    }

    /// a_ik a_jl − q⁻¹ a_il a_jk without reduction.
    pub fn minor_raw(&self, (i, j): (usize, usize), (k, l): (usize, usize)) -> Element {
        let first = &self.a(i, k) * &self.a(j, l);
        let second = &self.a(i, l) * &self.a(j, k);
        &first - &second.scale(&Laurent::q_pow(-1))
    }

    /// Quantum determinant of the upper (even) or lower diagonal block.
    pub fn block_determinant(&self, which: Block) -> Element {
        let (offset, size, sgn_exp) = match which {
            Block::Upper => (0, self.m, -1),
            Block::Lower => (self.m, self.n, 1),
        };
        let mut out = Element::zero();
        for perm in permutations(size) {
            let inv = inversions(&perm);
            let mut coeff = Laurent::q_pow(sgn_exp * inv as i32);
            if inv % 2 == 1 {
                coeff = -coeff;
            }
            let mut w = Vec::with_capacity(size);
            for (r, &c) in perm.iter().enumerate() {
                w.push(self.id(offset + r + 1, offset + c + 1));
            }
            out.add_term(Word::from_slice(&w), &coeff);
        }
        self.normal_form(&out)
    }

    /// Structural checks: Δ and ε respect every rule, Δ is coassociative
    /// and counital, and both preserve parity. Random words up to
    /// `sample_degree` are checked for coassociativity and counitality too.
    pub fn verify_bialgebra(&self, sample_degree: usize) -> VerificationReport {
        let gens = self.gens();
        let slots = [gens, gens];
        let rules = self.presentation.rules();
        let mut items: Vec<ReportItem> = rules
            .par_iter()
            .map_init(
                || Coproduct::new(self),
                |cp, r| {
                    timed(|| {
                        let rel = r.relation();
                        let d = cp.apply(&rel);
                        let e = self.counit(&rel);
                        let mut why = String::new();
                        if !d.is_zero() {
                            why = d.display(&slots).to_string();
                        } else if !e.is_zero() {
                            why = format!("counit {e}");
                        }
                        ReportItem::from_residual(
                            format!("delta respects {}", r.lhs.display(gens)),
                            format!("Delta({})", rel.display(gens)),
                            "0",
                            why,
                        )
                    })
                },
            )
            .collect();
        let mut samples: Vec<Element> = gens.ids().map(Element::gen).collect();
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for d in 2..=sample_degree {
            for _ in 0..8 {
                let w: Vec<GenId> = (0..d).map(|_| rng.gen_range(0..gens.len() as GenId)).collect();
                let e = self.normal_form(&Element::word(Word::from_slice(&w)));
                if !e.is_zero() {
                    samples.push(e);
                }
            }
        }
        let more: Vec<ReportItem> = samples
            .par_iter()
            .map_init(
                || Coproduct::new(self),
                |cp, x| timed(|| cp.structure_item(x)),
            )
            .collect();
        items.extend(more);
        VerificationReport::from_items("bialgebra", items)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    Upper,
    Lower,
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

pub(crate) fn inversions(p: &[usize]) -> usize {
    (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count()
}

/// Cached coproduct on a Manin algebra, with results reduced slotwise.
pub struct Coproduct<'a> {
    alg: &'a ManinAlgebra,
    reds: Vec<Reducer<'a>>,
    cache: HashMap<Word, Tensor>,
}

impl<'a> Coproduct<'a> {
    pub fn new(alg: &'a ManinAlgebra) -> Self {
        Coproduct { alg, reds: vec![alg.reducer(), alg.reducer()], cache: HashMap::new() }
    }

    pub fn algebra(&self) -> &'a ManinAlgebra {
        self.alg
    }

    fn generator(&self, g: GenId) -> Tensor {
        let (i, j) = self.alg.index_of(g);
        let mut t = Tensor::zero(2);
        for k in 1..=self.alg.size() {
            t.add_term([Word::from_slice(&[self.alg.id(i, k)]), Word::from_slice(&[self.alg.id(k, j)])].into_iter().collect(), &Laurent::one());
        }
        t
    }

    pub fn word(&mut self, w: &Word) -> Tensor {
        if let Some(t) = self.cache.get(w) {
            return t.clone();
        }
        let t = match w.degree() {
            0 => Tensor::one(2),
            1 => self.generator(w.letters()[0]),
            d => {
                let head = self.word(&Word::from_slice(&w.letters()[..d - 1]));
                let last = self.generator(w.letters()[d - 1]);
                let g = self.alg.gens();
                let prod = tensor_multiply(&[g, g], &head, &last).expect("arity 2");
                normalize_tensor(&prod, &mut self.reds)
            }
        };
        self.cache.insert(w.clone(), t.clone());
        t
    }

    pub fn apply(&mut self, x: &Element) -> Tensor {
        let mut out = Tensor::zero(2);
        for (w, c) in x.terms() {
            let t = self.word(w);
            out.add_scaled(&t, c);
        }
        out
    }

    /// Triple tensors (Δ⊗id)Δ(x) and (id⊗Δ)Δ(x), reduced in all slots.
    pub fn coassociativity_sides(&mut self, x: &Element) -> (Tensor, Tensor) {
        let d = self.apply(x);
        let left = d.expand_slot(0, &mut |w| self.word(w));
        let right = d.expand_slot(1, &mut |w| self.word(w));
        (left, right)
    }

    fn structure_item(&mut self, x: &Element) -> ReportItem {
        let alg = self.alg;
        let g = alg.gens();
        let d = self.apply(x);
        let (left, right) = self.coassociativity_sides(x);
        let mut why = Vec::new();
        if left != right {
            let mut diff = left.clone();
            diff.add_scaled(&right, &Laurent::constant(-1));
            why.push(format!("coassociativity: {}", diff.display(&[g, g, g])));
        }
        let eps_left = d.contract_slot(0, &mut |w| alg.counit_word(w));
        let eps_right = d.contract_slot(1, &mut |w| alg.counit_word(w));
        let id_x = Tensor::pure(&[x]);
        if eps_left != id_x || eps_right != id_x {
            why.push("counit".into());
        }
        let px = x.parity(g);
        if px.is_some() && d.parity(&[g, g]) != px {
            why.push("parity".into());
        }
        ReportItem::from_residual(format!("structure on {}", x.display(g)), "coassociative, counital, parity", "holds", why.join("; "))
    }
}

/// Two-sided inverse of a 2×2 block, Y = det⁻¹·(sign·q^e·cofactor).
#[derive(Clone, Debug)]
pub struct BlockInverse {
    pub entries: [[LocElement; 2]; 2],
    /// (sign, exponent) per entry
    pub ansatz: [[(i64, i32); 2]; 2],
}

const ANSATZ_EXPONENTS: std::ops::RangeInclusive<i32> = -3..=3;

/// Inverts the block `x` (entries in the base of `l`) using the inverted
/// element named `det`, which must equal its quantum determinant up to
/// the ansatz. Both X·Y and Y·X are checked against the identity.
pub fn quantum_block_inverse(l: &LocalizedAlgebra, x: &[[Element; 2]; 2], det: &str) -> Result<BlockInverse, ManinError> {
    let mut lr = l.reducer();
    let inv = lr.inv_named(det)?;
    let xs: Vec<Vec<LocElement>> = x.iter().map(|row| row.iter().map(|e| lr.from_base(e)).collect()).collect();
    // classical adjugate pattern: Y_ab ∝ ± X_{b'a'} with ' the other index
    let cof = |a: usize, b: usize| x[1 - b][1 - a].clone();
    let base_sign = |a: usize, b: usize| if a == b { 1 } else { -1 };
    let mut entries: Vec<Vec<Option<LocElement>>> = vec![vec![None, None], vec![None, None]];
    let mut ansatz = [[(0i64, 0i32); 2]; 2];
    let one = lr.scalar(Laurent::one());
    let zero = lr.scalar(Laurent::zero());
    for j in 0..2 {
        // P[i][a] = X_ia · det⁻¹ · cof_aj
        let raw: Vec<LocElement> = (0..2)
            .map(|a| {
                let c = lr.from_base(&cof(a, j));
                lr.mul(&inv, &c)
            })
            .collect();
        let mut prods = [[zero.clone(), zero.clone()], [zero.clone(), zero.clone()]];
        for i in 0..2 {
            for a in 0..2 {
                prods[i][a] = lr.mul(&xs[i][a], &raw[a]);
            }
        }
        let options: Vec<(i64, i32)> = [1i64, -1].iter().flat_map(|&s| ANSATZ_EXPONENTS.map(move |e| (s, e))).collect();
        let mut found = None;
        'search: for &o0 in &options {
            for &o1 in &options {
                let ok = (0..2).all(|i| {
                    let c0 = Laurent::monomial(o0.0 * base_sign(0, j), o0.1);
                    let c1 = Laurent::monomial(o1.0 * base_sign(1, j), o1.1);
                    let a = lr.scale(&prods[i][0], &c0);
                    let b = lr.scale(&prods[i][1], &c1);
                    let sum = lr.add(&a, &b);
                    lr.equal(&sum, if i == j { &one } else { &zero })
                });
                if ok {
                    found = Some([o0, o1]);
                    break 'search;
                }
            }
        }
        let f = found.ok_or(ManinError::InverseAnsatz(j + 1))?;
        for a in 0..2 {
            let c = Laurent::monomial(f[a].0 * base_sign(a, j), f[a].1);
            entries[a][j] = Some(lr.scale(&raw[a], &c));
            ansatz[a][j] = (f[a].0 * base_sign(a, j), f[a].1);
        }
    }
    let entries: [[LocElement; 2]; 2] = [0, 1].map(|a| [0, 1].map(|b| entries[a][b].clone().expect("filled")));
    check_inverse(&mut lr, &xs, &entries)?;
    Ok(BlockInverse { entries, ansatz })
}

fn check_inverse(lr: &mut LocReducer<'_>, xs: &[Vec<LocElement>], y: &[[LocElement; 2]; 2]) -> Result<(), ManinError> {
    for i in 0..2 {
        for j in 0..2 {
            let target = lr.scalar(if i == j { Laurent::one() } else { Laurent::zero() });
            for (side, a0, b0, a1, b1) in [("XY", &xs[i][0], &y[0][j], &xs[i][1], &y[1][j]), ("YX", &y[i][0], &xs[0][j], &y[i][1], &xs[1][j])] {
                let p0 = lr.mul(a0, b0);
                let p1 = lr.mul(a1, b1);
                let s = lr.add(&p0, &p1);
                if !lr.equal(&s, &target) {
                    return Err(ManinError::InverseCheck(format!("({side})[{},{}] = {}", i + 1, j + 1, lr.display(&s))));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m11_shape() {
        let a = build_manin(1, 1).unwrap();
        assert_eq!(a.gens().len(), 4);
        let odd = a.gens().symbols().iter().filter(|s| s.parity == Parity::Odd).count();
        assert_eq!(odd, 2);
        // six ordered pairs of distinct generators plus two odd squares
        assert_eq!(a.presentation.rules().len(), 8);
        assert!(build_manin(0, 2).is_err());
    }

    #[test]
    fn m41_shape() {
        let a = build_manin(4, 1).unwrap();
        assert_eq!(a.gens().len(), 25);
        let even = a.gens().symbols().iter().filter(|s| s.parity == Parity::Even).count();
        assert_eq!(even, 17);
        assert_eq!(a.gens().parity(a.id(5, 5)), Parity::Even);
        assert_eq!(a.gens().parity(a.id(1, 5)), Parity::Odd);
    }

    #[test]
    fn normal_form_examples() {
        let a = build_manin(1, 1).unwrap();
        let w = &a.a(1, 2) * &a.a(1, 1);
        assert_eq!(a.normal_form(&w), (&a.a(1, 1) * &a.a(1, 2)).scale(&Laurent::q_pow(1)));
        let xi = &a.a(2, 1) * &a.a(2, 1);
        assert!(a.normal_form(&xi).is_zero());
        let sorted = &a.a(1, 1) * &a.a(2, 2);
        assert_eq!(a.normal_form(&sorted), sorted);
    }

    #[test]
    fn normal_words_are_weakly_increasing() {
        let a = build_manin(2, 1).unwrap();
        for w in a.presentation.irreducible_words(3) {
            let l = w.letters();
            assert!(l.windows(2).all(|p| p[0] <= p[1]), "{w:?}");
            assert!(l.windows(2).all(|p| p[0] != p[1] || a.gens().parity(p[0]) == Parity::Even));
        }
    }

    #[test]
    fn coproduct_and_counit_examples() {
        let a = build_manin(1, 1).unwrap();
        let d = a.comultiply(&a.a(1, 1));
        let expect = &Tensor::pure(&[&a.a(1, 1), &a.a(1, 1)]) + &Tensor::pure(&[&a.a(1, 2), &a.a(2, 1)]);
        assert_eq!(d, expect);
        assert_eq!(a.comultiply(&Element::one()), Tensor::one(2));
        assert_eq!(a.counit(&a.a(1, 1)), Laurent::one());
        assert_eq!(a.counit(&a.a(1, 2)), Laurent::zero());
        let x = &(&a.a(1, 1) * &a.a(2, 2)) - &(&a.a(1, 2) * &a.a(2, 1)).scale(&Laurent::q_pow(-1));
        assert_eq!(a.counit(&x), Laurent::one());
        let g = a.gens();
        let prod = tensor_multiply(&[g, g], &a.comultiply(&a.a(1, 1)), &a.comultiply(&a.a(1, 2))).unwrap();
        let mut reds = [a.reducer(), a.reducer()];
        assert_eq!(a.comultiply(&(&a.a(1, 1) * &a.a(1, 2))), normalize_tensor(&prod, &mut reds));
    }

    #[test]
    fn block_determinants() {
        let a = build_manin(2, 0).unwrap();
        let expect = &(&a.a(1, 1) * &a.a(2, 2)) - &(&a.a(1, 2) * &a.a(2, 1)).scale(&Laurent::q_pow(-1));
        assert_eq!(a.block_determinant(Block::Upper), a.normal_form(&expect));
        let b = build_manin(4, 1).unwrap();
        assert_eq!(b.block_determinant(Block::Lower), b.a(5, 5));
        let c = build_manin(1, 1).unwrap();
        assert_eq!(c.block_determinant(Block::Upper), c.a(1, 1));
    }

    #[test]
    fn quantum_minor_examples() {
        let a = build_manin(4, 1).unwrap();
        let d12 = a.quantum_minor((1, 2), (1, 2)).unwrap();
        let expect = &(&a.a(1, 1) * &a.a(2, 2)) - &(&a.a(1, 2) * &a.a(2, 1)).scale(&Laurent::q_pow(-1));
        assert_eq!(d12, a.normal_form(&expect));
        let d15 = a.quantum_minor((1, 5), (1, 2)).unwrap();
        assert_eq!(d15.parity(a.gens()), Some(Parity::Odd));
        assert!(a.quantum_minor((1, 6), (1, 2)).is_err());
    }

    #[test]
    fn small_bialgebras() {
        for (m, n) in [(1, 1), (2, 1), (2, 0)] {
            let a = build_manin(m, n).unwrap();
            let r = a.verify_bialgebra(2);
            assert!(r.all_pass(), "{}", r.to_text());
        }
    }

    #[test]
    fn quantum_determinant_is_grouplike_and_central() {
        let a = build_manin(2, 0).unwrap();
        let d = a.block_determinant(Block::Upper);
        let mut red = a.reducer();
        for g in a.gens().ids() {
            let x = Element::gen(g);
            assert_eq!(red.mul(&d, &x), red.mul(&x, &d));
        }
        let dd = a.comultiply(&d);
        assert_eq!(dd, Tensor::pure(&[&d, &d]));
    }

    #[test]
    fn block_inverse_of_m20() {
        let a = build_manin(2, 0).unwrap();
        let det = a.normal_form(&a.minor_raw((1, 2), (1, 2)));
        let l = LocalizedAlgebra::new(a.presentation.clone()).adjoin_normal("D", &det).unwrap();
        let x = [[a.a(1, 1), a.a(1, 2)], [a.a(2, 1), a.a(2, 2)]];
        let inv = quantum_block_inverse(&l, &x, "D").unwrap();
        // classical adjugate signs survive; the q-powers are ±1 off the diagonal
        let signs = inv.ansatz.map(|r| r.map(|(s, _)| s));
        assert_eq!(signs, [[1, -1], [-1, 1]]);
        assert_eq!((inv.ansatz[0][0].1, inv.ansatz[1][1].1), (0, 0));
        assert_eq!(inv.ansatz[0][1].1.abs(), 1);
        assert!(matches!(quantum_block_inverse(&l, &x, "E"), Err(ManinError::Localize(_))));
    }

    #[test]
    fn block_inverse_rejects_wrong_determinant() {
        let a = build_manin(2, 0).unwrap();
        let l = LocalizedAlgebra::new(a.presentation.clone()).adjoin_normal("a12", &a.a(1, 2)).unwrap();
        let x = [[a.a(1, 1), a.a(1, 2)], [a.a(2, 1), a.a(2, 2)]];
        assert!(matches!(quantum_block_inverse(&l, &x, "a12"), Err(ManinError::InverseAnsatz(1))));
    }
}
