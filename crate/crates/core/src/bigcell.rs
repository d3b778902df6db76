//! The quantum big cell: its presentation, flatness, the realization by
//! minor ratios inside the localized parabolic quotient, and the coaction
//! obtained by restricting Δ.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::classical_oracle::{classical_bigcell_action, classical_dimension, CellPoint, GMatrix, GrassmannNumber, ParabolicPoint};
use crate::coeff::{express_in_span, rank_of_rows, Laurent, SparseRow};
use crate::manin::Coproduct;
use crate::parabolic::{point_values, LocElement, LocReducer, LocTensor, ParabolicCoordinates, QuotientAlgebra};
use crate::report::{timed, ReportItem, VerificationReport};
use crate::rewrite::{normalize_tensor, Presentation, Reducer};
use crate::superfree::{Element, GenId, GeneratorSet, Parity, Tensor, Word};

/// Generator names in order: t31, t32, t41, t42 (even), τ̃51, τ̃52 (odd).
pub const NAMES: [&str; 6] = ["t[3,1]", "t[3,2]", "t[4,1]", "t[4,2]", "tau[5,1]", "tau[5,2]"];

#[derive(Clone, Debug)]
pub struct BigCellPresentation {
    pub presentation: Presentation,
    /// Labelled relations `lhs - rhs`.
    pub relations: Vec<(String, Element)>,
}

fn t_id(i: usize, j: usize) -> GenId {
    ((i - 3) * 2 + (j - 1)) as GenId
}

fn tau_id(j: usize) -> GenId {
    (3 + j) as GenId
}

pub fn bigcell_generators() -> GeneratorSet {
    GeneratorSet::new(NAMES.iter().map(|n| (n.to_string(), if n.starts_with("tau") { Parity::Odd } else { Parity::Even })))
        .expect("distinct names")
}

pub fn bigcell_relations() -> Vec<(String, Element)> {
    let w = |a: GenId, b: GenId| Element::word(Word::from_slice(&[a, b]));
    let q = Laurent::q_pow;
    let d = Laurent::q_inv_minus_q();
    let gens = bigcell_generators();
    let n = |g: GenId| gens.name(g).to_string();
    let mut r = Vec::new();
    for i in [3, 4] {
        let (a, b) = (t_id(i, 1), t_id(i, 2));
        r.push((format!("{} {} = q {} {}", n(a), n(b), n(b), n(a)), &w(a, b) - &w(b, a).scale(&q(1))));
    }
    for j in [1, 2] {
        let (a, b) = (t_id(3, j), t_id(4, j));
        r.push((format!("{} {} = q^-1 {} {}", n(a), n(b), n(b), n(a)), &w(a, b) - &w(b, a).scale(&q(-1))));
    }
    let (t31, t32, t41, t42) = (t_id(3, 1), t_id(3, 2), t_id(4, 1), t_id(4, 2));
    r.push((format!("{} {} = {} {}", n(t31), n(t42), n(t42), n(t31)), &w(t31, t42) - &w(t42, t31)));
    r.push((
        format!("{} {} = {} {} + (q^-1 - q) {} {}", n(t32), n(t41), n(t41), n(t32), n(t42), n(t31)),
        &(&w(t32, t41) - &w(t41, t32)) - &w(t42, t31).scale(&d),
    ));
    let (u1, u2) = (tau_id(1), tau_id(2));
    r.push((format!("{} {} = -q^-1 {} {}", n(u1), n(u2), n(u2), n(u1)), &w(u1, u2) + &w(u2, u1).scale(&q(-1))));
    for i in [3, 4] {
        for j in [1, 2] {
            let (t, u) = (t_id(i, j), tau_id(j));
            r.push((format!("{} {} = q^-1 {} {}", n(t), n(u), n(u), n(t)), &w(t, u) - &w(u, t).scale(&q(-1))));
        }
        let (a, b) = (t_id(i, 1), t_id(i, 2));
        r.push((format!("{} {} = {} {}", n(a), n(u2), n(u2), n(a)), &w(a, u2) - &w(u2, a)));
        r.push((
            format!("{} {} = {} {} + (q^-1 - q) {} {}", n(b), n(u1), n(u1), n(b), n(a), n(u2)),
            &(&w(b, u1) - &w(u1, b)) - &w(a, u2).scale(&d),
        ));
    }
    for u in [u1, u2] {
        r.push((format!("{} {} = 0", n(u), n(u)), w(u, u)));
    }
    r
}

pub fn bigcell_presentation() -> BigCellPresentation {
    let relations = bigcell_relations();
    let presentation = Presentation::new(bigcell_generators(), relations.iter().map(|(_, e)| e.clone()))
        .expect("big cell relations orient with unit leading coefficients");
    BigCellPresentation { presentation, relations }
}

impl BigCellPresentation {
    pub fn gens(&self) -> &GeneratorSet {
        self.presentation.gens()
    }

    pub fn normal_form(&self, x: &Element) -> Element {
        self.presentation.normal_form(x)
    }
}

/// Images of the six generators, in generator order.
pub fn generator_images(c: &ParabolicCoordinates) -> Vec<LocElement> {
    let mut v: Vec<LocElement> = c.t.iter().flatten().cloned().collect();
    v.extend(c.tau_tilde.iter().cloned());
    v
}

fn substitute(lr: &mut LocReducer<'_>, x: &Element, images: &[LocElement]) -> LocElement {
    let mut acc = lr.scalar(Laurent::zero());
    for (w, c) in x.terms() {
        let fs: Vec<&LocElement> = w.letters().iter().map(|&g| &images[g as usize]).collect();
        let p = lr.mul_all(&fs);
        let p = lr.scale(&p, c);
        acc = lr.add(&acc, &p);
    }
    acc
}

pub fn verify_bigcell_flatness(degree: usize) -> VerificationReport {
    let b = bigcell_presentation();
    let mut report = VerificationReport::new("bigcell-flatness");
    for d in 1..=degree {
        report.push(timed(|| {
            let got = b.presentation.count_irreducible(d) as u128;
            let want = classical_dimension(4, 2, d as u64);
            ReportItem::check(format!("irreducible words of degree {d}"), got == want, got.to_string(), want.to_string(), "")
        }));
    }
    report.extend(b.presentation.check_local_confluence(3));
    report
}

/// Substitutes the minor ratios into every relation, checks the images of
/// the degree ≤ 2 standard monomials are independent, and compares the
/// images with the classical big-cell coordinates at q = 1.
pub fn embed_bigcell(b: &BigCellPresentation, c: &ParabolicCoordinates, q: &QuotientAlgebra) -> VerificationReport {
    let mut report = VerificationReport::new("bigcell-embed");
    let mut lr = c.loc.reducer();
    let images = generator_images(c);
    for (id, rel) in &b.relations {
        report.push(timed(|| {
            let v = substitute(&mut lr, rel, &images);
            ReportItem::from_residual(format!("embed: {id}"), rel.display(b.gens()).to_string(), "0", if v.is_zero() { String::new() } else { lr.display(&v) })
        }));
    }
    report.push(timed(|| {
        let words: Vec<Word> = (0..=2).flat_map(|d| b.presentation.irreducible_words(d)).collect();
        let imgs: Vec<LocElement> = words.iter().map(|w| substitute(&mut lr, &Element::word(w.clone()), &images)).collect();
        let (nums, _) = lr.common_numerators(&imgs);
        let rank = rank_of_rows(&to_rows(&nums));
        ReportItem::check("injective through degree 2", rank == words.len(), rank.to_string(), words.len().to_string(), "rank of the images of standard monomials")
    }));
    report.push(timed(|| {
        let mut rng = StdRng::seed_from_u64(11);
        let mut bad = 0;
        for _ in 0..20 {
            let pt = ParabolicPoint::random(&mut rng, 4);
            let val = point_values(q, &pt.matrix());
            let xinv = pt.x.inverse2().expect("invertible");
            let tau_tilde = pt.tau.scale(&pt.d).mul(&xinv);
            let want: Vec<GrassmannNumber> = pt.t.e.iter().chain(tau_tilde.e.iter()).cloned().collect();
            for (img, w) in images.iter().zip(&want) {
                if crate::parabolic::evaluate_at_point(&c.loc, img, &val).as_ref() != Some(w) {
                    bad += 1;
                }
            }
        }
        ReportItem::check("q=1 agreement with classical big-cell coordinates", bad == 0, format!("{bad} mismatches"), "0 mismatches", "20 random parabolic points")
    }));
    report
}

fn to_rows(elems: &[Element]) -> Vec<SparseRow> {
    let mut index: BTreeMap<Word, usize> = BTreeMap::new();
    elems
        .iter()
        .map(|e| {
            e.terms()
                .map(|(w, c)| {
                    let n = index.len();
                    (*index.entry(w.clone()).or_insert(n), c.clone())
                })
                .collect()
        })
        .collect()
}

/// Δ on the localized quotient: Δ on numerators, D12⁻¹ ↦ D12⁻¹ ⊗ D12⁻¹.
pub struct Coaction<'a> {
    pub coords: &'a ParabolicCoordinates,
    cop: Coproduct<'a>,
    reds: Vec<Reducer<'a>>,
    pub lr: LocReducer<'a>,
}

impl<'a> Coaction<'a> {
    pub fn new(q: &'a QuotientAlgebra, coords: &'a ParabolicCoordinates) -> Self {
        let p = &coords.loc.base;
        Coaction { coords, cop: Coproduct::new(&q.ambient), reds: vec![Reducer::new(p), Reducer::new(p), Reducer::new(p)], lr: coords.loc.reducer() }
    }

    fn delta_base(&mut self, x: &Element) -> Tensor {
        let t = self.cop.apply(x);
        normalize_tensor(&t, &mut self.reds[..2])
    }

    /// Only grouplike denominators are allowed.
    pub fn delta(&mut self, x: &LocElement) -> LocTensor {
        assert!(x.den.iter().skip(1).all(|&k| k == 0), "Δ is extended only across D12⁻¹");
        let t = self.delta_base(&x.num);
        LocTensor { t, dens: vec![x.den.clone(), x.den.clone()] }
    }

    /// Δ applied to one slot of a localized tensor.
    pub fn delta_slot(&mut self, x: &LocTensor, slot: usize) -> LocTensor {
        let d = x.dens[slot].clone();
        assert!(d.iter().skip(1).all(|&k| k == 0), "Δ is extended only across D12⁻¹");
        let mut cache: BTreeMap<Word, Tensor> = BTreeMap::new();
        let mut img = |w: &Word| {
            if let Some(t) = cache.get(w) {
                return t.clone();
            }
            let t = self.delta_base(&Element::word(w.clone()));
            cache.insert(w.clone(), t.clone());
            t
        };
        let t = x.t.expand_slot(slot, &mut img);
        let mut dens = x.dens.clone();
        dens.insert(slot, d);
        let mut reds: Vec<Reducer<'_>> = (0..t.arity()).map(|_| Reducer::new(&self.coords.loc.base)).collect();
        LocTensor { t: normalize_tensor(&t, &mut reds), dens }
    }

    /// Applies an algebra map on generators (given as localized tensors)
    /// to an element of the big cell presentation.
    pub fn substitute_tensor(&mut self, x: &Element, images: &[LocTensor]) -> LocTensor {
        let arity = images[0].t.arity();
        let zero = LocTensor { t: Tensor::zero(arity), dens: (0..arity).map(|_| self.coords.loc.zero_den()).collect() };
        let mut acc = zero.clone();
        for (w, c) in x.terms() {
            let mut p = LocTensor { t: Tensor::one(arity), dens: zero.dens.clone() };
            for &g in w.letters() {
                p = self.lr.tensor_mul(&p, &images[g as usize]);
            }
            acc = self.lr.tensor_add(&acc, &p, c);
        }
        acc
    }
}

/// Splits Δ̃(g) = Σ_b P_b ⊗ b over b ∈ {1, t, τ̃}; None if some slot-two
/// component leaves that span.
pub fn decompose_coaction(lr: &mut LocReducer<'_>, x: &LocTensor, basis: &[LocElement]) -> Option<Vec<LocElement>> {
    let mut by_first: BTreeMap<Word, Element> = BTreeMap::new();
    for (k, c) in x.t.terms() {
        by_first.entry(k[0].clone()).or_default().add_term(k[1].clone(), c);
    }
    let mut parts: Vec<Element> = vec![Element::zero(); basis.len()];
    for (u, v) in by_first {
        let mut all = basis.to_vec();
        all.push(LocElement { num: v, den: x.dens[1].clone() });
        let (nums, _) = lr.common_numerators(&all);
        let rows = to_rows(&nums);
        let coeffs = express_in_span(&rows[..basis.len()], &rows[basis.len()])?;
        for (b, f) in coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            parts[b].add_term(u.clone(), &f.as_laurent()?);
        }
    }
    Some(parts.into_iter().map(|num| LocElement { num, den: x.dens[0].clone() }).collect())
}

fn eval_elem(e: &Element, value: &dyn Fn(GenId) -> GrassmannNumber) -> GrassmannNumber {
    e.terms().fold(GrassmannNumber::zero(), |acc, (w, c)| {
        let m = w.letters().iter().fold(GrassmannNumber::int(c.eval_at_one()), |a, &g| a.mul(&value(g)));
        acc.add(&m)
    })
}

/// Σ u(g)·v(h) over the terms of a localized tensor, at q = 1.
pub fn evaluate_tensor(c: &ParabolicCoordinates, x: &LocTensor, points: &[&dyn Fn(GenId) -> GrassmannNumber]) -> Option<GrassmannNumber> {
    let mut total = GrassmannNumber::zero();
    for (k, coef) in x.t.terms() {
        let mut term = GrassmannNumber::int(coef.eval_at_one());
        for (s, w) in k.iter().enumerate() {
            term = term.mul(&eval_elem(&Element::word(w.clone()), points[s]));
        }
        total = total.add(&term);
    }
    for (s, d) in x.dens.iter().enumerate() {
        for (i, &k) in d.iter().enumerate() {
            let inv = eval_elem(&c.loc.inverted[i].s, points[s]).inverse()?;
            for _ in 0..k {
                total = total.mul(&inv);
            }
        }
    }
    Some(total)
}

/// The 5×5 matrix [[1,0,0],[A,1,0],[α,0,1]] of a cell point.
pub fn cell_point_matrix(p: &CellPoint) -> GMatrix {
    let mut m = GMatrix::identity(5);
    m.put(2, 0, &p.a);
    m.put(4, 0, &p.alpha);
    m
}

/// Counit law, relation respect, membership in L ⊗ O(U) with the
/// reconstructed expression, q = 1 duality with the classical action, and
/// (extended) coassociativity on generators.
pub fn bigcell_coaction_check(
    b: &BigCellPresentation,
    q: &QuotientAlgebra,
    c: &ParabolicCoordinates,
    samples: usize,
    extended: bool,
) -> VerificationReport {
    let mut report = VerificationReport::new("bigcell-coaction");
    let mut co = Coaction::new(q, c);
    let images = generator_images(c);
    let gens = b.gens().clone();

    report.push(timed(|| {
        let d12 = co.lr.from_base(&c.loc.inverted[0].s);
        let lhs = co.delta(&d12);
        let rhs = co.lr.tensor_pure(&[&d12, &d12]);
        ReportItem::check("Delta(D12) = D12 (x) D12", co.lr.tensor_equal(&lhs, &rhs), co.lr.display_tensor(&lhs), "D12 (x) D12", "grouplike, so D12^-1 extends")
    }));

    let deltas: Vec<LocTensor> = images.iter().map(|x| co.delta(x)).collect();

    for (g, (x, dx)) in images.iter().zip(&deltas).enumerate() {
        report.push(timed(|| {
            let contracted = dx.t.contract_slot(0, &mut |w| q.counit(&Element::word(w.clone())));
            let mut num = Element::zero();
            for (k, coef) in contracted.terms() {
                num.add_term(k[0].clone(), coef);
            }
            let got = LocElement { num, den: dx.dens[1].clone() };
            let ok = co.lr.equal(&got, x);
            ReportItem::check(format!("counit: (eps (x) id) Delta~({})", gens.name(g as GenId)), ok, co.lr.display(&got), co.lr.display(x), "")
        }));
    }

    for (id, rel) in &b.relations {
        report.push(timed(|| {
            let v = co.substitute_tensor(rel, &deltas);
            ReportItem::from_residual(format!("Delta~ respects {id}"), rel.display(&gens).to_string(), "0", if v.is_zero() { String::new() } else { co.lr.display_tensor(&v) })
        }));
    }

    let mut basis = vec![co.lr.scalar(Laurent::one())];
    basis.extend(images.iter().cloned());
    let basis_names: Vec<String> = std::iter::once("1".to_string()).chain(NAMES.iter().map(|s| s.to_string())).collect();
    for (g, dx) in deltas.iter().enumerate() {
        report.push(timed(|| {
            let id = format!("Delta~({}) in L (x) O(U)", gens.name(g as GenId));
            match decompose_coaction(&mut co.lr, dx, &basis) {
                Some(parts) => {
                    // row r of the generator: 3, 4 for t, 5 for τ̃; column j
                    let (r, j) = if g < 4 { (3 + g / 2, g % 2) } else { (5, g - 4) };
                    let mut expected = vec![images[g].clone()];
                    for (a, bcol) in [(3, 0), (3, 1), (4, 0), (4, 1), (5, 0), (5, 1)] {
                        let left = co.lr.from_base(&q.g(r, a));
                        expected.push(co.lr.mul(&left, &c.x_inverse.entries[bcol][j]));
                    }
                    let pattern = parts.iter().zip(&expected).all(|(p, e)| co.lr.equal(p, e));
                    let shown: Vec<String> = parts
                        .iter()
                        .zip(&basis_names)
                        .filter(|(p, _)| !p.is_zero())
                        .map(|(p, n)| format!("{} (x) {n}", co.lr.display(p)))
                        .collect();
                    ReportItem::check(
                        id,
                        pattern,
                        shown.join(" + "),
                        "g(r,a) S(x)[b,j] (x) t[a,b] + g(r,5) S(x)[b,j] (x) tau[5,b] + image (x) 1",
                        if pattern { "" } else { "coefficients differ from the block pattern" },
                    )
                }
                None => ReportItem::check(id, false, co.lr.display_tensor(dx), "span of 1, t, tau~ in slot two", "slot two leaves the span"),
            }
        }));
    }

    report.push(timed(|| {
        let mut rng = StdRng::seed_from_u64(23);
        let mut bad = Vec::new();
        for s in 0..samples {
            let g = ParabolicPoint::random(&mut rng, 4);
            let p = CellPoint::random(&mut rng, 4);
            let moved = classical_bigcell_action(&g, &p).expect("invertible blocks");
            let gv = point_values(q, &g.matrix());
            let hv = point_values(q, &cell_point_matrix(&p));
            let want: Vec<&GrassmannNumber> = moved.a.e.iter().chain(moved.alpha.e.iter()).collect();
            for (k, dx) in deltas.iter().enumerate() {
                if evaluate_tensor(c, dx, &[&gv, &hv]).as_ref() != Some(want[k]) {
                    bad.push(format!("sample {s}: {}", NAMES[k]));
                }
            }
        }
        ReportItem::check(
            format!("q=1 duality with y(A+eta alpha)x^-1+t on {samples} points"),
            bad.is_empty(),
            format!("{} mismatches", bad.len()),
            "0 mismatches",
            bad.join("; "),
        )
    }));

    if extended {
        for (g, dx) in deltas.iter().enumerate() {
            report.push(timed(|| {
                let left = co.delta_slot(dx, 0);
                let right = co.delta_slot(dx, 1);
                let ok = co.lr.tensor_equal(&left, &right);
                let why = if ok {
                    String::new()
                } else {
                    let diff = co.lr.tensor_add(&left, &right, &Laurent::constant(-1));
                    co.lr.display_tensor(&diff)
                };
                ReportItem::check(format!("coassociativity on {}", gens.name(g as GenId)), ok, "(Delta (x) id) Delta~", "(id (x) Delta~) Delta~", why)
            }));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical_oracle::{at_q_one, brute_force_dimension, supercommutative, supercommutative_normal_form};

    fn word(b: &BigCellPresentation, names: &[&str]) -> Element {
        Element::word(Word::from_slice(&names.iter().map(|n| b.gens().lookup(n).unwrap()).collect::<Vec<_>>()))
    }

    #[test]
    fn reordering_examples() {
        let b = bigcell_presentation();
        assert_eq!(b.relations.len(), 17);
        let got = b.normal_form(&word(&b, &["t[3,2]", "t[3,1]"]));
        assert_eq!(got, word(&b, &["t[3,1]", "t[3,2]"]).scale(&Laurent::q_pow(-1)));
        let got = b.normal_form(&word(&b, &["tau[5,2]", "tau[5,1]"]));
        assert_eq!(got, word(&b, &["tau[5,1]", "tau[5,2]"]).scale(&-&Laurent::q_pow(1)));
        assert!(b.normal_form(&word(&b, &["tau[5,1]", "tau[5,1]"])).is_zero());
        let got = b.normal_form(&word(&b, &["t[4,1]", "t[3,2]"]));
        let want = &word(&b, &["t[3,2]", "t[4,1]"]) - &word(&b, &["t[3,1]", "t[4,2]"]).scale(&Laurent::q_inv_minus_q());
        assert_eq!(got, want);
    }

    #[test]
    fn relations_are_supercommutators_at_q_one() {
        let sc = supercommutative(bigcell_generators());
        for (label, r) in bigcell_relations() {
            assert!(supercommutative_normal_form(&sc, &at_q_one(&r)).is_zero(), "{label}");
        }
    }

    #[test]
    fn low_degree_counts() {
        let b = bigcell_presentation();
        for d in 0..=3 {
            assert_eq!(b.presentation.count_irreducible(d) as u128, brute_force_dimension(4, 2, d as u64), "degree {d}");
        }
        assert_eq!(b.presentation.count_irreducible(2), 19);
    }

    #[test]
    fn cell_point_matrix_shape() {
        let p = CellPoint::random(&mut StdRng::seed_from_u64(1), 4);
        let m = cell_point_matrix(&p);
        assert_eq!(m.get(0, 0).constant(), num_rational::BigRational::from_integer(1.into()));
        assert!(m.get(0, 2).is_zero() && m.get(4, 2).is_zero());
        assert_eq!(m.get(4, 1), p.alpha.get(0, 1));
    }
}
