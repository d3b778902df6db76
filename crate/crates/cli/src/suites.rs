//! Suite registry. Algebras are built on first use and shared.

use std::sync::OnceLock;

use num_rational::BigRational;
use qgrass::bigcell::{bigcell_coaction_check, bigcell_presentation, embed_bigcell, verify_bigcell_flatness, BigCellPresentation};
use qgrass::classical_oracle::{classical_dimension, verify_action_axioms, verify_decomposability_identities, verify_klein_reconciliation};
use qgrass::grassmannian::{
    grq_generators, standard_rank_at, verify_classical_limit, verify_coaction, verify_minor_commutations, verify_quantum_plucker, verify_standard_basis,
    GrGenerators, GrPresentation,
};
use qgrass::manin::{build_manin, ManinAlgebra};
use qgrass::parabolic::{
    build_parabolic, parabolic_coordinates, verify_coordinates, verify_hopf_ideal, verify_ideal_closure, verify_localization, ParabolicCoordinates,
    QuotientAlgebra,
};
use qgrass::report::{timed, ReportItem, VerificationReport};

/// Suites in dependency order.
pub const SUITES: [&str; 17] = [
    "confluence",
    "flatness",
    "bialgebra",
    "minors",
    "plucker",
    "coaction",
    "classical-limit",
    "basis",
    "parabolic-ideal",
    "hopf-ideal",
    "localization",
    "coords",
    "bigcell-flatness",
    "bigcell-embed",
    "bigcell-coaction",
    "classical",
    "all",
];

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub m: usize,
    pub n: usize,
    pub degree: Option<usize>,
    pub qs: Vec<BigRational>,
    pub extended: bool,
}

pub struct Context {
    pub config: RunConfig,
    mq: OnceLock<ManinAlgebra>,
    mq41: OnceLock<ManinAlgebra>,
    gr: OnceLock<GrGenerators>,
    parabolic: OnceLock<QuotientAlgebra>,
    coords: OnceLock<Result<ParabolicCoordinates, String>>,
    bigcell: OnceLock<BigCellPresentation>,
}

impl Context {
    pub fn new(config: RunConfig) -> Self {
        Context {
            config,
            mq: OnceLock::new(),
            mq41: OnceLock::new(),
            gr: OnceLock::new(),
            parabolic: OnceLock::new(),
            coords: OnceLock::new(),
            bigcell: OnceLock::new(),
        }
    }

    pub fn mq(&self) -> &ManinAlgebra {
        self.mq.get_or_init(|| build_manin(self.config.m, self.config.n).expect("validated sizes"))
    }

    pub fn mq41(&self) -> &ManinAlgebra {
        if (self.config.m, self.config.n) == (4, 1) {
            return self.mq();
        }
        self.mq41.get_or_init(|| build_manin(4, 1).expect("M_q(4|1)"))
    }

    pub fn gr(&self) -> &GrGenerators {
        self.gr.get_or_init(|| grq_generators(self.mq41()))
    }

    pub fn parabolic(&self) -> &QuotientAlgebra {
        self.parabolic.get_or_init(|| build_parabolic(self.mq41()))
    }

    pub fn coords(&self) -> Result<&ParabolicCoordinates, String> {
        self.coords.get_or_init(|| parabolic_coordinates(self.parabolic()).map_err(|e| e.to_string())).as_ref().map_err(Clone::clone)
    }

    pub fn bigcell(&self) -> &BigCellPresentation {
        self.bigcell.get_or_init(bigcell_presentation)
    }

    fn flatness_degree(&self) -> usize {
        self.config.degree.unwrap_or(match (self.config.m, self.config.n) {
            (1, 1) => 4,
            (2, 1) => 3,
            _ => 2,
        })
    }

    pub fn run(&self, suite: &str) -> VerificationReport {
        match suite {
            "confluence" => {
                let mut r = self.mq().presentation.check_local_confluence(3);
                r.suite = "confluence".into();
                r
            }
            "flatness" => {
                let alg = self.mq();
                let (m, n) = (alg.m as u64, alg.n as u64);
                let mut r = VerificationReport::new("flatness");
                for d in 1..=self.flatness_degree() {
                    r.push(timed(|| {
                        let got = alg.presentation.count_irreducible(d) as u128;
                        let want = classical_dimension(m * m + n * n, 2 * m * n, d as u64);
                        ReportItem::check(format!("M_q({m}|{n}) degree {d}"), got == want, got.to_string(), want.to_string(), "")
                    }));
                }
                r
            }
            "bialgebra" => self.mq().verify_bialgebra(2),
            "minors" => verify_minor_commutations(self.gr()),
            "plucker" => verify_quantum_plucker(self.gr()),
            "coaction" => verify_coaction(self.gr()),
            "classical-limit" => verify_classical_limit(self.mq41()),
            "basis" => {
                let top = self.config.degree.unwrap_or(if self.config.extended { 3 } else { 2 });
                let mut r = VerificationReport::new("basis");
                for d in 1..=top {
                    let part = verify_standard_basis(self.gr(), d);
                    r.extend(part);
                    for q0 in &self.config.qs {
                        r.push(standard_rank_at(self.gr(), d, q0));
                    }
                }
                r
            }
            "parabolic-ideal" => verify_ideal_closure(self.parabolic()),
            "hopf-ideal" => verify_hopf_ideal(self.parabolic()),
            "localization" => verify_localization(&GrPresentation::new().presentation, self.parabolic()),
            "coords" => verify_coordinates(self.parabolic(), 20, 7),
            "bigcell-flatness" => verify_bigcell_flatness(self.config.degree.unwrap_or(3)),
            "bigcell-embed" => match self.coords() {
                Ok(c) => embed_bigcell(self.bigcell(), c, self.parabolic()),
                Err(e) => failed("bigcell-embed", &e),
            },
            "bigcell-coaction" => match self.coords() {
                Ok(c) => bigcell_coaction_check(self.bigcell(), self.parabolic(), c, 20, self.config.extended),
                Err(e) => failed("bigcell-coaction", &e),
            },
            "classical" => {
                let mut r = verify_decomposability_identities();
                r.suite = "classical".into();
                r.extend(verify_action_axioms(20, 5));
                r.push(verify_klein_reconciliation());
                r
            }
            other => failed(other, "unknown suite"),
        }
    }
}

fn failed(suite: &str, why: &str) -> VerificationReport {
    VerificationReport::from_items(suite, [ReportItem::check("setup", false, "", "", why)])
}
