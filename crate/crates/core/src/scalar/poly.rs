//! Dense univariate polynomials over the rationals.
//!
//! Internal workhorse for both scalar backends: numerator/denominator pairs
//! in generic mode, residues mod the cyclotomic polynomial in root mode.
//! Canonical form: empty coefficient vector for zero, nonzero last entry
//! otherwise.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct QPoly {
    /// coeffs[i] is the coefficient of x^i; trailing zeros trimmed.
    pub coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = QPoly { coeffs: vec![c] };
        p.normalize();
        p
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = QPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// x^n
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        QPoly { coeffs }
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Number of trailing zero coefficients (the x-adic valuation); 0 for zero.
    pub fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        QPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - other.coeff(i));
        }
        QPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Euclidean division; panics on zero divisor.
    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let d = divisor.degree().unwrap();
        let lead_inv = BigRational::one() / divisor.leading();
        let mut rem = self.clone();
        let mut quot = QPoly::zero();
        while let Some(rd) = rem.degree() {
            if rd < d {
                break;
            }
            let factor = rem.leading() * &lead_inv;
            let shift = rd - d;
            let mut term = vec![BigRational::zero(); shift + 1];
            term[shift] = factor;
            let term = QPoly::from_coeffs(term);
            quot = quot.add(&term);
            rem = rem.sub(&term.mul(divisor));
        }
        (quot, rem)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Extended gcd: returns (g, s, t) with g = s*self + t*other, g monic.
    pub fn extended_gcd(&self, other: &QPoly) -> (QPoly, QPoly, QPoly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = QPoly::one();
        let mut s1 = QPoly::zero();
        let mut t0 = QPoly::zero();
        let mut t1 = QPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lead = r0.leading();
        let inv = BigRational::one() / lead;
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let inv = BigRational::one() / self.leading();
        self.scale(&inv)
    }

    /// Divide out x^valuation.
    pub fn shift_down(&self, k: usize) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn shift_up(&self, k: usize) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// Clear denominators and divide by integer content: returns (integer
    /// coefficient list, scale) with self = (ints as poly) * scale and the
    /// integer list having positive content gcd 1.
    pub fn integer_normal_form(&self) -> (Vec<BigInt>, BigRational) {
        if self.is_zero() {
            return (Vec::new(), BigRational::one());
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if content.is_zero() {
            content = BigInt::one();
        }
        // sign: make the leading integer coefficient positive
        if ints.last().map_or(false, |c| c.is_negative()) {
            content = -content;
        }
        let ints: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();
        (ints, BigRational::new(content, lcm))
    }
}

/// The M-th cyclotomic polynomial, by repeated exact division of x^M - 1 by
/// the cyclotomic polynomials of the proper divisors of M.
pub fn cyclotomic(m: u64) -> QPoly {
    assert!(m >= 1);
    let mut num = QPoly::monomial(m as usize).sub(&QPoly::one());
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic(d);
            let (q, r) = num.div_rem(&phi_d);
            debug_assert!(r.is_zero());
            num = q;
        }
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), QPoly::from_int_coeffs(&[-1, 1]));
        assert_eq!(cyclotomic(2), QPoly::from_int_coeffs(&[1, 1]));
        assert_eq!(cyclotomic(4), QPoly::from_int_coeffs(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), QPoly::from_int_coeffs(&[1, -1, 1]));
        assert_eq!(
            cyclotomic(12),
            QPoly::from_int_coeffs(&[1, 0, -1, 0, 1])
        );
    }

    #[test]
    fn div_rem_exact() {
        // (x^4 - 1) / (x^2 - 1) = x^2 + 1 rem 0
        let num = QPoly::from_int_coeffs(&[-1, 0, 0, 0, 1]);
        let den = QPoly::from_int_coeffs(&[-1, 0, 1]);
        let (q, r) = num.div_rem(&den);
        assert_eq!(q, QPoly::from_int_coeffs(&[1, 0, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_monic() {
        let a = QPoly::from_int_coeffs(&[-1, 0, 1]); // x^2-1
        let b = QPoly::from_int_coeffs(&[1, 1]); // x+1
        assert_eq!(a.gcd(&b), QPoly::from_int_coeffs(&[1, 1]));
    }

    #[test]
    fn extended_gcd_bezout() {
        let a = QPoly::from_int_coeffs(&[1, 0, 1]); // x^2+1
        let b = QPoly::from_int_coeffs(&[1, 1]); // x+1
        let (g, s, t) = a.extended_gcd(&b);
        assert_eq!(g, QPoly::one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), QPoly::one());
    }
}
