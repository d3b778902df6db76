//! The lower parabolic quotient of M_q(4|1), its ideal and Hopf-ideal
//! checks, localization, and the change of variables to (x, y, t, τ̃, ξ, ρ, d).

mod localize;

pub use localize::*;

use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;

use crate::classical_oracle::{GMatrix, GrassmannNumber, ParabolicPoint};
use crate::coeff::Laurent;
use crate::manin::{quantum_block_inverse, BlockInverse, Coproduct, ManinAlgebra, ManinError};
use crate::report::{timed, ReportItem, VerificationReport};
use crate::rewrite::{Presentation, RewriteError};
use crate::superfree::{Element, GenId, GeneratorSet};

/// Generators killed in the quotient.
pub const IDEAL: [(usize, usize); 6] = [(1, 3), (1, 4), (2, 3), (2, 4), (1, 5), (2, 5)];
/// The extra odd generators killed in the ξ = 0 quotient.
pub const XI_IDEAL: [(usize, usize); 2] = [(5, 3), (5, 4)];

pub fn parabolic_name(i: usize, j: usize) -> String {
    if (i == 5) != (j == 5) {
        format!("gamma[{i},{j}]")
    } else {
        format!("g[{i},{j}]")
    }
}

#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    /// M_q(4|1) with generators renamed g/gamma by parity.
    pub ambient: ManinAlgebra,
    pub ideal_generators: Vec<Element>,
    pub presentation: Presentation,
}

fn rename(alg: &ManinAlgebra) -> ManinAlgebra {
    let size = alg.size();
    let gens = GeneratorSet::new((1..=size).flat_map(|i| {
        (1..=size).map(move |j| (parabolic_name(i, j), alg.gens().parity(alg.id(i, j))))
    }))
    .expect("distinct names");
    let presentation = Presentation::from_rules(gens, alg.presentation.rules().to_vec()).expect("same rules");
    ManinAlgebra { m: alg.m, n: alg.n, presentation }
}

pub fn build_parabolic(alg: &ManinAlgebra) -> QuotientAlgebra {
    assert_eq!((alg.m, alg.n), (4, 1), "the parabolic quotient lives in M_q(4|1)");
    let ambient = rename(alg);
    let ideal_generators: Vec<Element> = IDEAL.iter().map(|&(i, j)| ambient.a(i, j)).collect();
    let presentation = ambient.presentation.extend(ideal_generators.clone()).expect("generators orient to 0");
    QuotientAlgebra { ambient, ideal_generators, presentation }
}

impl QuotientAlgebra {
    pub fn gens(&self) -> &GeneratorSet {
        self.presentation.gens()
    }

    pub fn g(&self, i: usize, j: usize) -> Element {
        self.ambient.a(i, j)
    }

    pub fn normal_form(&self, x: &Element) -> Element {
        self.presentation.normal_form(x)
    }

    /// Image of the quantum minor with the given rows and columns.
    pub fn minor(&self, rows: (usize, usize), cols: (usize, usize)) -> Element {
        self.normal_form(&self.ambient.minor_raw(rows, cols))
    }

    /// The counit descends because it kills every ideal generator.
    pub fn counit(&self, x: &Element) -> Laurent {
        self.ambient.counit(x)
    }

    fn ideal_ids(&self, extra: &[(usize, usize)]) -> Vec<GenId> {
        IDEAL.iter().chain(extra).map(|&(i, j)| self.ambient.id(i, j)).collect()
    }

    /// The ξ = 0 quotient. Adjoining γ53, γ54 → 0 forces a relation with a
    /// non-unit leading coefficient, so this returns an error.
    pub fn xi_quotient(&self) -> Result<Presentation, RewriteError> {
        self.presentation.extend(XI_IDEAL.iter().map(|&(i, j)| self.g(i, j)))
    }
}

fn offending_words(x: &Element, ideal: &[GenId], gens: &GeneratorSet) -> Vec<String> {
    x.terms()
        .filter(|(w, _)| !w.letters().iter().any(|g| ideal.contains(g)))
        .map(|(w, _)| w.display(gens).to_string())
        .collect()
}

/// Every word of nf(u·g) and nf(g·u) in M_q contains an ideal generator.
pub fn verify_ideal_closure(q: &QuotientAlgebra) -> VerificationReport {
    let ideal = q.ideal_ids(&[]);
    let gens = q.ambient.gens();
    let mut items: Vec<ReportItem> = IDEAL
        .par_iter()
        .map(|&(i, j)| {
            timed(|| {
                let u = q.g(i, j);
                let mut red = q.ambient.reducer();
                let mut bad = Vec::new();
                for g in gens.ids() {
                    let x = Element::gen(g);
                    for (side, prod) in [("u*g", red.mul(&u, &x)), ("g*u", red.mul(&x, &u))] {
                        for w in offending_words(&prod, &ideal, gens) {
                            bad.push(format!("{side} with {}: {w}", gens.name(g)));
                        }
                    }
                }
                let id = format!("ideal closure {}", parabolic_name(i, j));
                ReportItem::check(id, bad.is_empty(), format!("{} x 25 generators, both sides", parabolic_name(i, j)), "ideal", bad.join("; "))
            })
        })
        .collect();
    let conf = q.presentation.check_local_confluence(3);
    items.extend(conf.items.into_iter().map(|mut it| {
        it.id = format!("quotient {}", it.id);
        it
    }));
    VerificationReport::from_items("parabolic-ideal", items)
}

fn hopf_items(q: &QuotientAlgebra, extra: &[(usize, usize)], label: &str) -> Vec<ReportItem> {
    let ideal = q.ideal_ids(extra);
    let gens = q.ambient.gens();
    IDEAL
        .iter()
        .chain(extra)
        .map(|&(i, j)| {
            timed(|| {
                let u = q.g(i, j);
                let mut cop = Coproduct::new(&q.ambient);
                let t = cop.apply(&u);
                let bad: Vec<String> = t
                    .terms()
                    .filter(|(k, _)| !k.iter().any(|w| w.letters().iter().any(|g| ideal.contains(g))))
                    .map(|(k, _)| format!("{} (x) {}", k[0].display(gens), k[1].display(gens)))
                    .collect();
                let eps = q.counit(&u);
                let ok = bad.is_empty() && eps.is_zero();
                let why = if eps.is_zero() { bad.join("; ") } else { format!("counit {eps}") };
                let slots = [gens, gens];
                let shown = t.display(&slots).to_string();
                ReportItem::check(
                    format!("{label}Delta({})", parabolic_name(i, j)),
                    ok,
                    shown,
                    "I (x) O + O (x) I, counit 0",
                    why,
                )
            })
        })
        .collect()
}

/// Every term of Δ(u) has an ideal generator in some slot, and ε(u) = 0.
/// The same test is rerun for the ideal enlarged by γ53, γ54.
pub fn verify_hopf_ideal(q: &QuotientAlgebra) -> VerificationReport {
    let mut items = hopf_items(q, &[], "");
    items.extend(hopf_items(q, &XI_IDEAL, "xi=0: "));
    VerificationReport::from_items("hopf-ideal", items)
}

/// Adjoins s⁻¹ after checking s·g = q^{c_g}·g·s for every generator.
pub fn localize_at_normal(p: &Presentation, name: &str, s: &Element) -> Result<LocalizedAlgebra, LocalizeError> {
    LocalizedAlgebra::new(p.clone()).adjoin_normal(name, s)
}

pub type Block2 = [[LocElement; 2]; 2];

/// The change of variables. Entries of `rho` and `y_inverse` live in
/// `loc_y`; all others live in `loc`.
#[derive(Clone, Debug)]
pub struct ParabolicCoordinates {
    /// D12 inverted exactly, g55 inverted through its skew certificate.
    pub loc: LocalizedAlgebra,
    /// D12 inverted exactly, D34 through its skew certificate.
    pub loc_y: LocalizedAlgebra,
    pub x: Block2,
    pub y: Block2,
    pub t: Block2,
    pub tau_tilde: [LocElement; 2],
    pub tau: [LocElement; 2],
    pub xi: [LocElement; 2],
    pub d: LocElement,
    pub x_inverse: BlockInverse,
    pub y_inverse: BlockInverse,
    pub rho: [LocElement; 2],
}

#[derive(Debug, thiserror::Error)]
pub enum CoordinateError {
    #[error(transparent)]
    Localize(#[from] LocalizeError),
    #[error(transparent)]
    Block(#[from] ManinError),
}

pub fn block_entries(q: &QuotientAlgebra, rows: (usize, usize), cols: (usize, usize)) -> [[Element; 2]; 2] {
    let r = [rows.0, rows.1];
    let c = [cols.0, cols.1];
    r.map(|i| c.map(|j| q.g(i, j)))
}

pub fn parabolic_coordinates(q: &QuotientAlgebra) -> Result<ParabolicCoordinates, CoordinateError> {
    let p = &q.presentation;
    let d12 = q.minor((1, 2), (1, 2));
    let d34 = q.minor((3, 4), (3, 4));
    let g55 = q.g(5, 5);
    let loc = LocalizedAlgebra::new(p.clone()).adjoin_normal("D12", &d12)?.adjoin_skew("g55", &g55)?;
    let loc_y = LocalizedAlgebra::new(p.clone()).adjoin_normal("D12", &d12)?.adjoin_skew("D34", &d34)?;
    let xb = block_entries(q, (1, 2), (1, 2));
    let yb = block_entries(q, (3, 4), (3, 4));
    let x_inverse = quantum_block_inverse(&loc, &xb, "D12")?;
    let y_inverse = quantum_block_inverse(&loc_y, &yb, "D34")?;

    let mut lr = loc.reducer();
    let inv12 = lr.inv_named("D12")?;
    let inv55 = lr.inv_named("g55")?;
    let x = xb.clone().map(|row| row.map(|e| lr.from_base(&e)));
    let y = yb.clone().map(|row| row.map(|e| lr.from_base(&e)));
    let one = Laurent::one();
    let mq = -&Laurent::q_pow(-1);
    // t_{i1} = -q⁻¹ D_{2i} D12⁻¹, t_{i2} = D_{1i} D12⁻¹, and τ̃ the same with i = 5
    let ratio = |lr: &mut LocReducer<'_>, k: usize, i: usize| {
        let coef = if k == 2 { &mq } else { &one };
        let m = lr.from_base(&q.minor((k, i), (1, 2)));
        let r = lr.mul(&m, &inv12);
        lr.scale(&r, coef)
    };
    let t = [3, 4].map(|i| [2, 1].map(|k| ratio(&mut lr, k, i)));
    let tau_tilde = [2, 1].map(|k| ratio(&mut lr, k, 5));
    let mut over_d = |j: usize| {
        let g = lr.from_base(&q.g(5, j));
        lr.mul(&inv55, &g)
    };
    let tau = [1, 2].map(&mut over_d);
    let xi = [3, 4].map(&mut over_d);
    let d = lr.from_base(&g55);

    let mut ly = loc_y.reducer();
    let rho = [0, 1].map(|a| {
        let mut acc = ly.scalar(Laurent::zero());
        for (b, k) in [3, 4].into_iter().enumerate() {
            let g = ly.from_base(&q.g(k, 5));
            let prod = ly.mul(&y_inverse.entries[a][b], &g);
            acc = ly.add(&acc, &prod);
        }
        acc
    });
    Ok(ParabolicCoordinates { loc, loc_y, x, y, t, tau_tilde, tau, xi, d, x_inverse, y_inverse, rho })
}

/// Evaluates at q = 1 on a point given by the values of the generators.
pub fn evaluate_at_point(l: &LocalizedAlgebra, x: &LocElement, value: &dyn Fn(GenId) -> GrassmannNumber) -> Option<GrassmannNumber> {
    let word = |w: &crate::superfree::Word| w.letters().iter().fold(GrassmannNumber::int(1), |acc, &g| acc.mul(&value(g)));
    let elem = |e: &Element| {
        e.terms().fold(GrassmannNumber::zero(), |acc, (w, c)| acc.add(&word(w).mul(&GrassmannNumber::int(c.eval_at_one()))))
    };
    let mut out = elem(&x.num);
    for (i, &k) in x.den.iter().enumerate() {
        let inv = elem(&l.inverted[i].s).inverse()?;
        for _ in 0..k {
            out = out.mul(&inv);
        }
    }
    Some(out)
}

/// Point values of the generators g[i,j] at a classical parabolic point.
pub fn point_values<'a>(q: &'a QuotientAlgebra, m: &GMatrix) -> impl Fn(GenId) -> GrassmannNumber + 'a {
    let m = m.clone();
    move |g| {
        let (i, j) = q.ambient.index_of(g);
        m.get(i - 1, j - 1).clone()
    }
}

/// Coordinates at q = 1 against the classical block parametrization, the
/// block inverses, and the ordered form of d·τ = τ̃·x.
pub fn verify_coordinates(q: &QuotientAlgebra, samples: usize, seed: u64) -> VerificationReport {
    let mut report = VerificationReport::new("coords");
    let c = match timed_result(|| parabolic_coordinates(q)) {
        Ok(c) => c,
        Err(item) => {
            report.push(item);
            return report;
        }
    };
    let fmt_ansatz = |b: &BlockInverse| format!("{:?}", b.ansatz);
    report.push(ReportItem::check("x-block inverse (two-sided)", true, "X*Y = Y*X = 1", "verified", fmt_ansatz(&c.x_inverse)));
    report.push(ReportItem::check("y-block inverse (two-sided)", true, "X*Y = Y*X = 1", "verified", fmt_ansatz(&c.y_inverse)));

    let mut rng = StdRng::seed_from_u64(seed);
    let mut mismatches: Vec<String> = Vec::new();
    for _ in 0..samples {
        let pt = ParabolicPoint::random(&mut rng, 4);
        let m = pt.matrix();
        let val = point_values(q, &m);
        let xinv = pt.x.inverse2().expect("invertible x");
        let yinv = pt.y.inverse2().expect("invertible y");
        let tau_tilde = pt.tau.scale(&pt.d).mul(&xinv);
        let mut expect: Vec<(String, &LocalizedAlgebra, &LocElement, GrassmannNumber)> = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                expect.push((format!("x[{a},{b}]"), &c.loc, &c.x[a][b], pt.x.get(a, b).clone()));
                expect.push((format!("y[{a},{b}]"), &c.loc, &c.y[a][b], pt.y.get(a, b).clone()));
                expect.push((format!("t[{a},{b}]"), &c.loc, &c.t[a][b], pt.t.get(a, b).clone()));
                expect.push((format!("S(x)[{a},{b}]"), &c.loc, &c.x_inverse.entries[a][b], xinv.get(a, b).clone()));
                expect.push((format!("S(y)[{a},{b}]"), &c.loc_y, &c.y_inverse.entries[a][b], yinv.get(a, b).clone()));
            }
            expect.push((format!("tau~[{a}]"), &c.loc, &c.tau_tilde[a], tau_tilde.get(0, a).clone()));
            expect.push((format!("tau[{a}]"), &c.loc, &c.tau[a], pt.tau.get(0, a).clone()));
            expect.push((format!("xi[{a}]"), &c.loc, &c.xi[a], pt.xi.get(0, a).clone()));
            expect.push((format!("rho[{a}]"), &c.loc_y, &c.rho[a], pt.eta.get(a, 0).clone()));
        }
        expect.push(("d".into(), &c.loc, &c.d, pt.d.clone()));
        for (name, l, e, want) in expect {
            if evaluate_at_point(l, e, &val).as_ref() != Some(&want) {
                mismatches.push(name);
            }
        }
    }
    mismatches.sort();
    mismatches.dedup();
    report.push(ReportItem::check(
        format!("classical limit on {samples} parabolic points"),
        mismatches.is_empty(),
        "x, y, t, tau~, tau, xi, rho, d, S(x), S(y) at q=1",
        "block parametrization",
        mismatches.join(", "),
    ));

    // ordered counterpart of d·τ = τ̃·x
    let mut lr = c.loc.reducer();
    for j in 0..2 {
        let lhs = lr.mul(&c.d, &c.tau[j]);
        let mut rhs = lr.scalar(Laurent::zero());
        for a in 0..2 {
            let p = lr.mul(&c.tau_tilde[a], &c.x[a][j]);
            rhs = lr.add(&rhs, &p);
        }
        let diff = lr.sub(&lhs, &rhs);
        report.push(ReportItem::check(
            format!("d*tau[{j}] = sum_a tau~[a]*x[a,{j}]"),
            diff.is_zero(),
            lr.display(&lhs),
            lr.display(&rhs),
            if diff.is_zero() { String::new() } else { lr.display(&diff) },
        ));
    }
    report
}

fn timed_result<T>(f: impl FnOnce() -> Result<T, CoordinateError>) -> Result<T, ReportItem> {
    f().map_err(|e| ReportItem::check("parabolic coordinates", false, "", "", e.to_string()))
}

/// Exact normality certificates for the elements the change of variables
/// inverts, together with the skew certificates used in their place when
/// the exact one does not exist.
pub fn verify_parabolic_normality(q: &QuotientAlgebra) -> Vec<ReportItem> {
    let p = &q.presentation;
    let cases = [("D12", q.minor((1, 2), (1, 2))), ("g55", q.g(5, 5)), ("D34", q.minor((3, 4), (3, 4)))];
    let mut items = Vec::new();
    for (name, s) in cases {
        items.push(timed(|| match normality_certificate(p, &s) {
            Ok(c) => ReportItem::check(format!("{name} normal in the parabolic quotient"), true, format!("{c:?}"), "certificate", ""),
            Err(e) => ReportItem::check(format!("{name} normal in the parabolic quotient"), false, s.display(p.gens()).to_string(), "certificate", e.to_string()),
        }));
        if name != "D12" {
            items.push(timed(|| match skew_certificate(p, &s) {
                Ok(t) => {
                    let skew = t.iter().filter(|e| matches!(e, CertEntry::Skew { .. })).count();
                    ReportItem::check(format!("{name} skew certificate"), true, format!("{skew} generators need a correction term"), "skew certificate", "")
                }
                Err(e) => ReportItem::check(format!("{name} skew certificate"), false, "", "skew certificate", e.to_string()),
            }));
        }
    }
    items
}

/// Normality of D12 in the abstract Grassmannian, of D12, g55, D34 in the
/// parabolic quotient, and rejection of a11 in M_q(2|0).
pub fn verify_localization(gr: &Presentation, q: &QuotientAlgebra) -> VerificationReport {
    let mut report = VerificationReport::new("localization");
    report.push(timed(|| {
        let d12 = Element::gen(gr.gens().lookup("D[1,2]").expect("Grassmannian generator D[1,2]"));
        match normality_certificate(gr, &d12) {
            Ok(c) => {
                let shown: Vec<String> = c.iter().enumerate().map(|(g, e)| format!("{}:{e}", gr.gens().name(g as GenId))).collect();
                ReportItem::check("D12 normal in the Grassmannian", true, shown.join(" "), "certificate", "")
            }
            Err(e) => ReportItem::check("D12 normal in the Grassmannian", false, "", "certificate", e.to_string()),
        }
    }));
    for item in verify_parabolic_normality(q) {
        report.push(item);
    }
    report.push(timed(|| {
        let m = crate::manin::build_manin(2, 0).expect("M_q(2|0)");
        match normality_certificate(&m.presentation, &m.a(1, 1)) {
            Err(e @ LocalizeError::NotNormal { .. }) => ReportItem::check("a11 in M_q(2|0) rejected", true, e.to_string(), "not normal", ""),
            other => ReportItem::check("a11 in M_q(2|0) rejected", false, format!("{other:?}"), "not normal", "a11 was accepted"),
        }
    }));
    report
}
