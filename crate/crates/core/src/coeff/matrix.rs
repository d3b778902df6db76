use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::bigpoly::BigLaurent;
use super::{CoeffError, Laurent};

/// Rectangular matrix over ℤ[q, q⁻¹].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Laurent>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, entries: vec![Laurent::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Laurent::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Laurent>>) -> Result<Self, CoeffError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(CoeffError::Ragged);
        }
        let n = rows.len();
        Ok(QMatrix { rows: n, cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Laurent {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Laurent) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn scale_row(&mut self, r: usize, by: &Laurent) {
        for c in 0..self.cols {
            let v = self.get(r, c) * by;
            self.set(r, c, v);
        }
    }

    fn sparse_rows(&self) -> Vec<SparseRow> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .filter(|&c| !self.get(r, c).is_zero())
                    .map(|c| (c, self.get(r, c).clone()))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Sparse row keyed by column index.
pub type SparseRow = BTreeMap<usize, Laurent>;

/// Rank over the fraction field ℚ(q).
pub fn rank_over_fraction_field(m: &QMatrix) -> usize {
    rank_of_rows(&m.sparse_rows())
}

/// Rank over ℚ(q) of a family of sparse rows.
pub fn rank_of_rows(rows: &[SparseRow]) -> usize {
    let mut elim = Eliminator::new(0);
    rows.iter().filter(|r| elim.insert(TrackedRow::plain(r))).count()
}

/// Rank after specializing `q = q0`.
pub fn rank_at(rows: &[SparseRow], q0: &BigRational) -> Result<usize, CoeffError> {
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let mut row = BTreeMap::new();
        for (&c, v) in r {
            let x = v.eval(q0)?;
            if !x.is_zero() {
                row.insert(c, x);
            }
        }
        out.push(row);
    }
    Ok(rank_rational(out))
}

/// Rank over ℚ.
pub fn rank_rational(rows: Vec<BTreeMap<usize, BigRational>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
    let mut rank = 0;
    for mut row in rows {
        while let Some((&lead, _)) = row.iter().next() {
            let Some(p) = pivots.get(&lead) else { break };
            let f = &row[&lead] / &p[&lead];
            for (&c, v) in p {
                let e = row.entry(c).or_insert_with(BigRational::zero);
                *e -= &f * v;
                if e.is_zero() {
                    row.remove(&c);
                }
            }
        }
        if let Some((&lead, _)) = row.iter().next() {
            pivots.insert(lead, row);
            rank += 1;
        }
    }
    rank
}

/// Element of ℚ(q) as an unreduced quotient of Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFraction {
    pub num: BigLaurent,
    pub den: BigLaurent,
}

impl QFraction {
    /// Exact Laurent value when the denominator divides the numerator.
    pub fn as_laurent(&self) -> Option<Laurent> {
        self.num.div_exact(&self.den)?.to_laurent()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl fmt::Display for QFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_laurent() {
            Some(l) => write!(f, "{l}"),
            None => write!(f, "({}) / ({})", self.num, self.den),
        }
    }
}

/// Solves `target = Σ c_k basis_k` over ℚ(q). Returns `None` when the target
/// is outside the span. Coefficients are unique only if the basis is
/// independent.
pub fn express_in_span(basis: &[SparseRow], target: &SparseRow) -> Option<Vec<QFraction>> {
    let n = basis.len();
    let mut elim = Eliminator::new(n + 1);
    for (k, b) in basis.iter().enumerate() {
        elim.insert(TrackedRow::tracked(b, n + 1, k));
    }
    let reduced = elim.reduce(TrackedRow::tracked(target, n + 1, n));
    if !reduced.entries.is_empty() {
        return None;
    }
    // t·target + Σ e_k basis_k = 0
    let t = reduced.track[n].clone();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        out.push(simplify(reduced.track[k].neg(), t.clone()));
    }
    Some(out)
}

fn simplify(num: BigLaurent, den: BigLaurent) -> QFraction {
    if num.is_zero() {
        return QFraction { num, den: BigLaurent::one() };
    }
    let g = num.content().gcd(&den.content());
    let (mut num, mut den) = (num.div_int(&g), den.div_int(&g));
    let k = den.low();
    num = num.shift(-k);
    den = den.shift(-k);
    if den.is_negative_lead() {
        num = num.neg();
        den = den.neg();
    }
    if let Some(qt) = num.div_exact(&den) {
        return QFraction { num: qt, den: BigLaurent::one() };
    }
    QFraction { num, den }
}

struct TrackedRow {
    entries: BTreeMap<usize, BigLaurent>,
    track: Vec<BigLaurent>,
}

impl TrackedRow {
    fn plain(r: &SparseRow) -> Self {
        TrackedRow { entries: r.iter().map(|(&c, v)| (c, BigLaurent::from(v))).collect(), track: Vec::new() }
    }

    fn tracked(r: &SparseRow, len: usize, slot: usize) -> Self {
        let mut row = TrackedRow::plain(r);
        row.track = vec![BigLaurent::zero(); len];
        row.track[slot] = BigLaurent::one();
        row
    }

    fn lead(&self) -> Option<usize> {
        self.entries.keys().next().copied()
    }

    fn weight(&self, col: usize) -> (usize, u64) {
        let e = &self.entries[&col];
        (e.num_terms(), e.bits())
    }

    /// `self ← α·self − β·pivot` chosen to cancel `col`, then strip the
    /// common integer content and power of q.
    fn eliminate(&mut self, pivot: &TrackedRow, col: usize) {
        let p = &pivot.entries[&col];
        let a = self.entries[&col].clone();
        let (alpha, beta) = match p.as_monomial() {
            Some((c0, k)) => {
                let g = c0.gcd(&a.content());
                let mut alpha = c0 / &g;
                let mut beta = a.div_int(&g).shift(-k);
                if alpha.is_negative() {
                    alpha = -alpha;
                    beta = beta.neg();
                }
                (BigLaurent::one().scale(&alpha), beta)
            }
            None => (p.clone(), a),
        };
        let mut entries = BTreeMap::new();
        let cols: std::collections::BTreeSet<usize> =
            self.entries.keys().chain(pivot.entries.keys()).copied().collect();
        for c in cols {
            let mine = self.entries.get(&c).map(|v| alpha.mul(v)).unwrap_or_default();
            let theirs = pivot.entries.get(&c).map(|v| beta.mul(v)).unwrap_or_default();
            let v = mine.sub(&theirs);
            if !v.is_zero() {
                entries.insert(c, v);
            }
        }
        debug_assert!(!entries.contains_key(&col));
        let track = self
            .track
            .iter()
            .zip(&pivot.track)
            .map(|(m, t)| alpha.mul(m).sub(&beta.mul(t)))
            .collect();
        self.entries = entries;
        self.track = track;
        self.normalize();
    }

    fn normalize(&mut self) {
        let all = self.entries.values().chain(self.track.iter()).filter(|v| !v.is_zero());
        let mut g = BigInt::zero();
        let mut low = i32::MAX;
        for v in all {
            g = g.gcd(&v.content());
            low = low.min(v.low());
        }
        if g.is_zero() {
            return;
        }
        let fix = |v: &BigLaurent| if v.is_zero() { v.clone() } else { v.div_int(&g).shift(-low) };
        if !g.is_one() || low != 0 {
            self.entries = self.entries.iter().map(|(&c, v)| (c, fix(v))).collect();
            self.track = self.track.iter().map(fix).collect();
        }
    }
}

/// Incremental fraction-free row echelon form over ℤ[q, q⁻¹].
///
/// Rows are only ever scaled by nonzero ring elements and combined with
/// pivot rows, so the rank over ℚ(q) is preserved. Monomial pivots are
/// preferred because dividing by them stays inside the ring.
struct Eliminator {
    pivots: BTreeMap<usize, TrackedRow>,
}

impl Eliminator {
    fn new(_track_len: usize) -> Self {
        Eliminator { pivots: BTreeMap::new() }
    }

    fn reduce(&self, mut row: TrackedRow) -> TrackedRow {
        while let Some(lead) = row.lead() {
            match self.pivots.get(&lead) {
                Some(p) => row.eliminate(p, lead),
                None => break,
            }
        }
        row
    }

    /// Returns true if the row was independent of the existing pivots.
    fn insert(&mut self, row: TrackedRow) -> bool {
        let mut row = row;
        loop {
            row = self.reduce(row);
            let Some(lead) = row.lead() else { return false };
            match self.pivots.remove(&lead) {
                None => {
                    self.pivots.insert(lead, row);
                    return true;
                }
                Some(old) => {
                    // keep the simpler entry as pivot, push the other down
                    let (keep, mut push) = if row.weight(lead) < old.weight(lead) { (row, old) } else { (old, row) };
                    push.eliminate(&keep, lead);
                    self.pivots.insert(lead, keep);
                    row = push;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(terms: &[(i32, i64)]) -> Laurent {
        Laurent::from_terms(terms.iter().copied())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_over_fraction_field(&QMatrix::identity(2)), 2);
        let m = QMatrix::from_rows(vec![vec![l(&[(1, 1)]), l(&[(0, 1)])], vec![l(&[(2, 1)]), l(&[(1, 1)])]]).unwrap();
        assert_eq!(rank_over_fraction_field(&m), 1);
        assert_eq!(rank_over_fraction_field(&QMatrix::zeros(3, 4)), 0);
    }

    #[test]
    fn rank_is_generic_not_specialized() {
        // det = q^2 - 1 vanishes at q = 1 only
        let m = QMatrix::from_rows(vec![vec![l(&[(1, 1)]), l(&[(0, 1)])], vec![l(&[(0, 1)]), l(&[(1, 1)])]]).unwrap();
        assert_eq!(rank_over_fraction_field(&m), 2);
        assert_eq!(rank_at(&m.sparse_rows(), &BigRational::one()).unwrap(), 1);
        assert_eq!(rank_at(&m.sparse_rows(), &BigRational::from_integer(2.into())).unwrap(), 2);
    }

    #[test]
    fn rank_invariant_under_row_ops() {
        let mut m = QMatrix::from_rows(vec![
            vec![l(&[(1, 1), (0, 2)]), l(&[(-1, 1)]), l(&[])],
            vec![l(&[(0, 1)]), l(&[(0, 1)]), l(&[(2, 3)])],
            vec![l(&[(1, 1), (0, 3)]), l(&[(-1, 1), (0, 1)]), l(&[(2, 3)])],
        ])
        .unwrap();
        let r = rank_over_fraction_field(&m);
        assert_eq!(r, 2);
        m.swap_rows(0, 2);
        assert_eq!(rank_over_fraction_field(&m), r);
        m.scale_row(1, &Laurent::q_pow(-3));
        assert_eq!(rank_over_fraction_field(&m), r);
    }

    #[test]
    fn span_solve() {
        let b1: SparseRow = [(0, l(&[(0, 1)])), (1, l(&[(-1, -1)]))].into_iter().collect();
        let b2: SparseRow = [(2, l(&[(0, 1)]))].into_iter().collect();
        // target = (q+1)·b1 + q^2·b2
        let t: SparseRow =
            [(0, l(&[(1, 1), (0, 1)])), (1, l(&[(0, -1), (-1, -1)])), (2, l(&[(2, 1)]))].into_iter().collect();
        let c = express_in_span(&[b1.clone(), b2.clone()], &t).unwrap();
        assert_eq!(c[0].as_laurent().unwrap(), l(&[(1, 1), (0, 1)]));
        assert_eq!(c[1].as_laurent().unwrap(), l(&[(2, 1)]));
        let outside: SparseRow = [(3, Laurent::one())].into_iter().collect();
        assert!(express_in_span(&[b1, b2], &outside).is_none());
    }

    #[test]
    fn span_solve_with_rational_coefficients() {
        // (q + 1)·x = target  ⇒  coefficient 1/(q+1)·something
        let b: SparseRow = [(0, l(&[(1, 1), (0, 1)]))].into_iter().collect();
        let t: SparseRow = [(0, Laurent::one())].into_iter().collect();
        let c = express_in_span(&[b], &t).unwrap();
        assert!(c[0].as_laurent().is_none());
        assert_eq!(c[0].to_string(), "(1*q^0) / (1*q^0 + 1*q^1)");
    }
}
