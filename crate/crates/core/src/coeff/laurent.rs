use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::CoeffError;

/// An element of ℤ[q, q⁻¹].
///
/// Stored densely from the lowest nonzero exponent upwards. The canonical
/// form has a nonzero first and last coefficient, and the zero polynomial has
/// no coefficients at all, so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    low: i32,
    coeffs: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaurentOp {
    Add,
    Sub,
    Mul,
}

/// Applies one ring operation.
pub fn laurent_arith(a: &Laurent, b: &Laurent, op: LaurentOp) -> Laurent {
    match op {
        LaurentOp::Add => a + b,
        LaurentOp::Sub => a - b,
        LaurentOp::Mul => a * b,
    }
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(1, 0)
    }

    pub fn constant(c: i64) -> Self {
        Laurent::monomial(c, 0)
    }

    /// `c * q^exp`.
    pub fn monomial(c: i64, exp: i32) -> Self {
        if c == 0 {
            return Laurent::zero();
        }
        Laurent { low: exp, coeffs: vec![c] }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i32) -> Self {
        Laurent::monomial(1, exp)
    }

    /// `q⁻¹ − q`, the correction coefficient that appears throughout the
    /// quantum matrix relations.
    pub fn q_inv_minus_q() -> Self {
        Laurent::from_terms([(-1, 1), (1, -1)])
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut out = Laurent::zero();
        for (e, c) in terms {
            out += &Laurent::monomial(c, e);
        }
        out
    }

    fn from_raw(low: i32, mut coeffs: Vec<i64>) -> Self {
        let Some(first) = coeffs.iter().position(|&c| c != 0) else {
            return Laurent::zero();
        };
        let last = coeffs.iter().rposition(|&c| c != 0).unwrap();
        coeffs.truncate(last + 1);
        coeffs.drain(..first);
        Laurent { low: low + first as i32, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs == [1]
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        let idx = exp as i64 - self.low as i64;
        if idx < 0 {
            return 0;
        }
        self.coeffs.get(idx as usize).copied().unwrap_or(0)
    }

    /// Nonzero terms as `(exponent, coefficient)`, exponents ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.low + i as i32, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// `Some((c, k))` if this is the single term `c q^k`.
    pub fn as_monomial(&self) -> Option<(i64, i32)> {
        (self.coeffs.len() == 1).then(|| (self.coeffs[0], self.low))
    }

    /// Units of ℤ[q, q⁻¹] are exactly `±q^k`.
    pub fn is_unit(&self) -> bool {
        matches!(self.as_monomial(), Some((c, _)) if c == 1 || c == -1)
    }

    /// Inverse of a unit `±q^k`.
    pub fn unit_inverse(&self) -> Option<Laurent> {
        match self.as_monomial() {
            Some((c, k)) if c == 1 || c == -1 => Some(Laurent::monomial(c, -k)),
            _ => None,
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i32) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: i64) -> Laurent {
        if c == 0 {
            return Laurent::zero();
        }
        Laurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|&x| x.checked_mul(c).expect("coefficient overflow")).collect(),
        }
    }

    /// Exact quotient `self / d` if it exists in ℤ[q, q⁻¹].
    pub fn div_exact(&self, d: &Laurent) -> Option<Laurent> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        // long division on the shifted polynomials, from the top degree down
        let lead = *d.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let dl = d.coeffs.len();
        if rem.len() < dl {
            return None;
        }
        let mut quot = vec![0i64; rem.len() - dl + 1];
        for i in (0..quot.len()).rev() {
            let top = rem[i + dl - 1];
            if top == 0 {
                continue;
            }
            if top % lead != 0 {
                return None;
            }
            let f = top / lead;
            quot[i] = f;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= f * dc;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return None;
        }
        Some(Laurent::from_raw(self.low - d.low, quot))
    }

    /// Exact value at `q = q0`.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational, CoeffError> {
        if q0.is_zero() {
            return Err(CoeffError::EvalAtZero);
        }
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            let p = if e >= 0 { pow(q0, e as u32) } else { pow(&q0.recip(), (-e) as u32) };
            acc += p * BigRational::from_integer(BigInt::from(c));
        }
        Ok(acc)
    }

    /// Value at `q = 1`, the classical limit.
    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub(crate) fn raw(&self) -> (i32, &[i64]) {
        (self.low, &self.coeffs)
    }
}

fn pow(base: &BigRational, e: u32) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..e {
        out *= base;
    }
    out
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.max_exp().unwrap().max(rhs.max_exp().unwrap());
        let mut coeffs = vec![0i64; (high - low + 1) as usize];
        for (e, c) in self.terms().chain(rhs.terms()) {
            let slot = &mut coeffs[(e - low) as usize];
            *slot = slot.checked_add(c).expect("coefficient overflow");
        }
        Laurent::from_raw(low, coeffs)
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let p = a.checked_mul(b).expect("coefficient overflow");
                coeffs[i + j] = coeffs[i + j].checked_add(p).expect("coefficient overflow");
            }
        }
        Laurent::from_raw(self.low + rhs.low, coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Laurent> for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: &Laurent) -> Laurent {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, rhs: &Laurent) {
        *self = &*self - rhs;
    }
}

impl From<i64> for Laurent {
    fn from(c: i64) -> Self {
        Laurent::constant(c)
    }
}

/// Orders by exponent vector only so that maps keyed by scalars stay
/// deterministic; this is not a ring order.
impl PartialOrd for Laurent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Laurent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.low.cmp(&other.low).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

/// Report form: `c*q^k` terms joined by ` + `, exponents ascending.
impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*q^{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Laurent {
        Laurent::q_pow(1)
    }

    #[test]
    fn arith_examples() {
        let a = Laurent::from_terms([(1, 1), (-1, 1)]);
        assert_eq!(laurent_arith(&a, &q(), LaurentOp::Mul), Laurent::from_terms([(2, 1), (0, 1)]));
        assert!(laurent_arith(&q(), &Laurent::q_pow(-1), LaurentOp::Mul).is_one());
        let b = Laurent::q_inv_minus_q();
        assert!(laurent_arith(&b, &b, LaurentOp::Sub).is_zero());
    }

    #[test]
    fn eval_examples() {
        let one = BigRational::one();
        assert!(Laurent::q_inv_minus_q().eval(&one).unwrap().is_zero());
        let two = BigRational::from_integer(2.into());
        let v = Laurent::from_terms([(2, 1), (0, 1)]).eval(&two).unwrap();
        assert_eq!(v, BigRational::from_integer(5.into()));
        assert_eq!(Laurent::monomial(-1, 1).eval(&one).unwrap(), -BigRational::one());
        assert_eq!(Laurent::one().eval(&BigRational::zero()), Err(CoeffError::EvalAtZero));
    }

    #[test]
    fn display_form() {
        assert_eq!(Laurent::q_inv_minus_q().to_string(), "1*q^-1 + -1*q^1");
        assert_eq!(Laurent::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let a = Laurent::from_terms([(0, 1), (2, -1)]); // 1 - q^2
        let d = Laurent::from_terms([(0, 1), (1, 1)]); // 1 + q
        assert_eq!(a.div_exact(&d), Some(Laurent::from_terms([(0, 1), (1, -1)])));
        assert_eq!(d.div_exact(&Laurent::constant(2)), None);
        assert_eq!(Laurent::q_pow(3).div_exact(&Laurent::q_pow(5)), Some(Laurent::q_pow(-2)));
    }

    pub(crate) fn arb_laurent() -> impl Strategy<Value = Laurent> {
        prop::collection::vec((-4i32..5, -6i64..7), 0..5).prop_map(Laurent::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn eval_is_a_ring_morphism(a in arb_laurent(), b in arb_laurent(), num in 1i64..6, den in 1i64..6) {
            let q0 = BigRational::new(num.into(), den.into());
            let prod = (&a * &b).eval(&q0).unwrap();
            prop_assert_eq!(prod, a.eval(&q0).unwrap() * b.eval(&q0).unwrap());
            let sum = (&a + &b).eval(&q0).unwrap();
            prop_assert_eq!(sum, a.eval(&q0).unwrap() + b.eval(&q0).unwrap());
        }

        #[test]
        fn canonical_form(a in arb_laurent()) {
            let (_, raw) = a.raw();
            if let (Some(f), Some(l)) = (raw.first(), raw.last()) {
                prop_assert!(*f != 0 && *l != 0);
            }
        }
    }
}
