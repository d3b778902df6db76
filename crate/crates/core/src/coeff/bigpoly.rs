//! Big-integer Laurent polynomials used inside exact elimination, where
//! cross-multiplication would overflow machine words.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Laurent;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct BigLaurent {
    low: i32,
    coeffs: Vec<BigInt>,
}

impl BigLaurent {
    pub fn zero() -> Self {
        BigLaurent::default()
    }

    pub fn one() -> Self {
        BigLaurent { low: 0, coeffs: vec![BigInt::one()] }
    }

    fn from_raw(low: i32, mut coeffs: Vec<BigInt>) -> Self {
        let Some(first) = coeffs.iter().position(|c| !c.is_zero()) else {
            return BigLaurent::zero();
        };
        let last = coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        coeffs.truncate(last + 1);
        coeffs.drain(..first);
        BigLaurent { low: low + first as i32, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    pub fn bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// `Some((c, k))` for a single term `c q^k`.
    pub fn as_monomial(&self) -> Option<(&BigInt, i32)> {
        (self.coeffs.len() == 1).then(|| (&self.coeffs[0], self.low))
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn shift(&self, k: i32) -> BigLaurent {
        if self.is_zero() {
            return BigLaurent::zero();
        }
        BigLaurent { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> BigLaurent {
        BigLaurent::from_raw(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Division of every coefficient by `c`; caller guarantees exactness.
    pub fn div_int(&self, c: &BigInt) -> BigLaurent {
        BigLaurent::from_raw(self.low, self.coeffs.iter().map(|x| x / c).collect())
    }

    pub fn mul(&self, rhs: &BigLaurent) -> BigLaurent {
        if self.is_zero() || rhs.is_zero() {
            return BigLaurent::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        BigLaurent::from_raw(self.low + rhs.low, coeffs)
    }

    pub fn sub(&self, rhs: &BigLaurent) -> BigLaurent {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> BigLaurent {
        BigLaurent { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, rhs: &BigLaurent) -> BigLaurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = (self.low + self.coeffs.len() as i32).max(rhs.low + rhs.coeffs.len() as i32);
        let mut coeffs = vec![BigInt::zero(); (high - low) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + i] += c;
        }
        BigLaurent::from_raw(low, coeffs)
    }

    /// Exact quotient in ℤ[q, q⁻¹], if any.
    pub fn div_exact(&self, d: &BigLaurent) -> Option<BigLaurent> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BigLaurent::zero());
        }
        let dl = d.coeffs.len();
        if self.coeffs.len() < dl {
            return None;
        }
        let lead = d.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dl + 1];
        for i in (0..quot.len()).rev() {
            let top = rem[i + dl - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (f, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &f * dc;
            }
            quot[i] = f;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(BigLaurent::from_raw(self.low - d.low, quot))
    }

    /// Back to machine coefficients, if they fit.
    pub fn to_laurent(&self) -> Option<Laurent> {
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let c: i64 = c.try_into().ok()?;
            terms.push((self.low + i as i32, c));
        }
        Some(Laurent::from_terms(terms))
    }

    pub fn is_negative_lead(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_negative())
    }
}

impl From<&Laurent> for BigLaurent {
    fn from(l: &Laurent) -> Self {
        let (low, coeffs) = l.raw();
        BigLaurent { low, coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect() }
    }
}

impl fmt::Display for BigLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*q^{}", c, self.low + i as i32)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BigLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigLaurent({self})")
    }
}
