//! Chebyshev polynomials of the first and second kind, quantum integers,
//! quantum factorials and quantum binomial coefficients.
//!
//! Both Chebyshev families satisfy P_n(x) = x P_{n-1}(x) - P_{n-2}(x); the
//! first kind starts from T_0 = 2, T_1 = x, the second from S_0 = 1,
//! S_1 = x. Quantum binomials are computed by the inversion-counting sum,
//! which stays well-defined at roots of unity where the factorial quotient
//! degenerates.

use crate::scalar::Scalar;
use num::{BigInt, One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// Dense integer polynomial, coefficients indexed by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    pub coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    fn x_mul_sub(&self, other: &IntPolynomial) -> IntPolynomial {
        // x*self - other
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i + 1] = c.clone();
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        IntPolynomial::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - other.coeff(i));
        }
        IntPolynomial::from_coeffs(coeffs)
    }

    /// Substitute another polynomial for x.
    pub fn compose(&self, inner: &IntPolynomial) -> IntPolynomial {
        // Horner
        let mut acc = IntPolynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = mul_int_poly(&acc, inner);
            if !acc.coeffs.is_empty() || !c.is_zero() {
                let mut coeffs = acc.coeffs.clone();
                if coeffs.is_empty() {
                    coeffs.push(BigInt::zero());
                }
                coeffs[0] += c;
                acc = IntPolynomial::from_coeffs(coeffs);
            }
        }
        acc
    }

    /// Evaluate at a scalar by Horner's scheme.
    pub fn eval_scalar(&self, x: &Scalar) -> Scalar {
        let ctx = x.context();
        let mut acc = Scalar::zero(ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x);
            if !c.is_zero() {
                acc = acc.add(&Scalar::rational(
                    ctx,
                    num::BigRational::from_integer(c.clone()),
                ));
            }
        }
        acc
    }
}

fn mul_int_poly(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    if a.coeffs.is_empty() || b.coeffs.is_empty() {
        return IntPolynomial::zero();
    }
    let mut coeffs = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, ca) in a.coeffs.iter().enumerate() {
        for (j, cb) in b.coeffs.iter().enumerate() {
            coeffs[i + j] += ca * cb;
        }
    }
    IntPolynomial::from_coeffs(coeffs)
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "x")?,
                1 => write!(f, "{c}*x")?,
                _ if c.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChebKind {
    First,
    Second,
}

static CHEB_CACHE: OnceLock<Mutex<HashMap<(ChebKind, usize), IntPolynomial>>> = OnceLock::new();

/// T_n or S_n by the shared three-term recurrence; results are cached.
pub fn cheb_poly(kind: ChebKind, n: usize) -> IntPolynomial {
    let cache = CHEB_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&(kind, n)) {
        return p.clone();
    }
    let p0 = match kind {
        ChebKind::First => IntPolynomial::from_i64(&[2]),
        ChebKind::Second => IntPolynomial::from_i64(&[1]),
    };
    let p1 = IntPolynomial::from_i64(&[0, 1]);
    let result = match n {
        0 => p0,
        1 => p1,
        _ => {
            let mut prev = p0;
            let mut cur = p1;
            for _ in 2..=n {
                let next = cur.x_mul_sub(&prev);
                prev = cur;
                cur = next;
            }
            cur
        }
    };
    cache
        .lock()
        .unwrap()
        .insert((kind, n), result.clone());
    result
}

/// A word in {+,-}; position 0 is the bottom of the linearly ordered set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignState(pub Vec<bool>);

impl SignState {
    pub fn from_str_signs(s: &str) -> Option<SignState> {
        let mut v = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '+' => v.push(true),
                '-' => v.push(false),
                _ => return None,
            }
        }
        Some(SignState(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of + signs.
    pub fn plus_count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Inversions: pairs i < j with s(i) = + and s(j) = -.
    pub fn inversions(&self) -> usize {
        let mut inv = 0;
        for i in 0..self.0.len() {
            for j in (i + 1)..self.0.len() {
                if self.0[i] && !self.0[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// All states of a given length with exactly p plus signs.
    pub fn enumerate(len: usize, p: usize) -> Vec<SignState> {
        let mut out = Vec::new();
        let mut cur = vec![false; len];
        fn rec(cur: &mut Vec<bool>, i: usize, left: usize, out: &mut Vec<SignState>) {
            let len = cur.len();
            if left > len - i {
                return;
            }
            if i == len {
                out.push(SignState(cur.clone()));
                return;
            }
            cur[i] = false;
            rec(cur, i + 1, left, out);
            if left > 0 {
                cur[i] = true;
                rec(cur, i + 1, left - 1, out);
                cur[i] = false;
            }
        }
        rec(&mut cur, 0, p, &mut out);
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QIntKind {
    /// [n]_a = a^{n-1} + ... + 1
    Unbalanced,
    /// [[n]]_a = a^{n-1} + a^{n-3} + ... + a^{-(n-1)}
    Balanced,
}

/// Quantum integer as an always-defined sum form.
pub fn quantum_int(n: u64, kind: QIntKind, a: &Scalar) -> Scalar {
    let ctx = a.context();
    let mut acc = Scalar::zero(ctx);
    match kind {
        QIntKind::Unbalanced => {
            for i in 0..n {
                acc = acc.add(&a.pow(i as i64).expect("nonnegative power"));
            }
        }
        QIntKind::Balanced => {
            for i in 0..n {
                let e = (n as i64 - 1) - 2 * i as i64;
                acc = acc.add(&a.pow(e).expect("invertible base for balanced quantum integer"));
            }
        }
    }
    acc
}

/// [n]_a! = [n]_a [n-1]_a ... [1]_a.
pub fn quantum_factorial(n: u64, a: &Scalar) -> Scalar {
    let mut acc = Scalar::one(a.context());
    for k in 1..=n {
        acc = acc.mul(&quantum_int(k, QIntKind::Unbalanced, a));
    }
    acc
}

/// Quantum binomial [n choose p]_a via the inversion generating function
/// sum_{|s|=p} a^{iota(s)}; total even where the factorial quotient is not.
pub fn quantum_binom(n: u64, p: i64, a: &Scalar) -> Scalar {
    let ctx = a.context();
    if p < 0 || p as u64 > n {
        return Scalar::zero(ctx);
    }
    let mut acc = Scalar::zero(ctx);
    for s in SignState::enumerate(n as usize, p as usize) {
        acc = acc.add(&a.pow(s.inversions() as i64).expect("nonnegative power"));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{choose_modulus, Scalar, ScalarContext};

    #[test]
    fn printed_tables() {
        assert_eq!(cheb_poly(ChebKind::First, 0), IntPolynomial::from_i64(&[2]));
        assert_eq!(cheb_poly(ChebKind::First, 1), IntPolynomial::from_i64(&[0, 1]));
        assert_eq!(cheb_poly(ChebKind::First, 2), IntPolynomial::from_i64(&[-2, 0, 1]));
        assert_eq!(cheb_poly(ChebKind::First, 3), IntPolynomial::from_i64(&[0, -3, 0, 1]));
        assert_eq!(
            cheb_poly(ChebKind::First, 4),
            IntPolynomial::from_i64(&[2, 0, -4, 0, 1])
        );
        assert_eq!(cheb_poly(ChebKind::Second, 0), IntPolynomial::from_i64(&[1]));
        assert_eq!(cheb_poly(ChebKind::Second, 2), IntPolynomial::from_i64(&[-1, 0, 1]));
        assert_eq!(
            cheb_poly(ChebKind::Second, 3),
            IntPolynomial::from_i64(&[0, -2, 0, 1])
        );
        assert_eq!(
            cheb_poly(ChebKind::Second, 4),
            IntPolynomial::from_i64(&[1, 0, -3, 0, 1])
        );
    }

    #[test]
    fn first_equals_second_difference() {
        for n in 2..=20 {
            let t = cheb_poly(ChebKind::First, n);
            let s = cheb_poly(ChebKind::Second, n);
            let s2 = cheb_poly(ChebKind::Second, n - 2);
            assert_eq!(t, s.sub(&s2), "T_{n} != S_{n} - S_{}", n - 2);
        }
    }

    #[test]
    fn composition_identity() {
        for m in 1..=6usize {
            for n in 1..=6usize {
                let lhs = cheb_poly(ChebKind::First, m * n);
                let rhs = cheb_poly(ChebKind::First, m).compose(&cheb_poly(ChebKind::First, n));
                assert_eq!(lhs, rhs, "T_{{{m}*{n}}} != T_{m} o T_{n}");
            }
        }
    }

    #[test]
    fn laurent_identity() {
        // T_n(a + a^-1) = a^n + a^-n in the rational function field
        let ctx = ScalarContext::generic();
        let a = Scalar::omega(&ctx);
        let x = a.add(&a.inverse().unwrap());
        for n in 0..=20i64 {
            let lhs = cheb_poly(ChebKind::First, n as usize).eval_scalar(&x);
            let rhs = a.pow(n).unwrap().add(&a.pow(-n).unwrap());
            assert_eq!(lhs, rhs, "T_{n}(a + a^-1) != a^{n} + a^-{n}");
        }
    }

    #[test]
    fn scalar_collapse_identity() {
        // T_N(-A^2 - A^-2) = -2 at both admissible moduli
        for n in [3i64, 5, 7] {
            for eps in [-1i64, 1] {
                let ctx = choose_modulus(n, eps).unwrap();
                let a2 = Scalar::omega_pow(&ctx, -4);
                let x = a2.neg().sub(&a2.inverse().unwrap());
                let val = cheb_poly(ChebKind::First, n as usize).eval_scalar(&x);
                assert_eq!(
                    val,
                    Scalar::integer(&ctx, -2),
                    "T_{n}(-A^2 - A^-2) != -2 for eps={eps}"
                );
            }
        }
    }

    #[test]
    fn quantum_int_examples() {
        let ctx = ScalarContext::generic();
        let a = Scalar::omega(&ctx);
        // [3]_a = a^2 + a + 1
        assert_eq!(
            quantum_int(3, QIntKind::Unbalanced, &a),
            Scalar::from_laurent(&ctx, 0, &[1, 1, 1])
        );
        // [n]_1 = n
        let one = Scalar::one(&ctx);
        for n in 0..8 {
            assert_eq!(
                quantum_int(n, QIntKind::Unbalanced, &one),
                Scalar::integer(&ctx, n as i64)
            );
        }
        // [[2]]_{A^2} = A^2 + A^-2 with A = w^-2
        let a2 = Scalar::omega_pow(&ctx, -4);
        let lhs = quantum_int(2, QIntKind::Balanced, &a2);
        assert_eq!(lhs, Scalar::omega_pow(&ctx, -4).add(&Scalar::omega_pow(&ctx, 4)));
        // [[n]]_a = a^{-(n-1)} [n]_{a^2}
        for n in 1..8u64 {
            let bal = quantum_int(n, QIntKind::Balanced, &a);
            let unb = quantum_int(n, QIntKind::Unbalanced, &a.mul(&a));
            let rhs = a.pow(-(n as i64 - 1)).unwrap().mul(&unb);
            assert_eq!(bal, rhs);
        }
    }

    #[test]
    fn binom_examples() {
        let ctx = ScalarContext::generic();
        let a = Scalar::omega(&ctx);
        for n in 0..6 {
            assert!(quantum_binom(n, 0, &a).is_one());
            assert!(quantum_binom(n, n as i64, &a).is_one());
        }
        // (4, 2): a^4 + a^3 + 2a^2 + a + 1 (enumeration of the 6 states)
        assert_eq!(
            quantum_binom(4, 2, &a),
            Scalar::from_laurent(&ctx, 0, &[1, 1, 2, 1, 1])
        );
        assert!(quantum_binom(3, 5, &a).is_zero());
        assert!(quantum_binom(3, -1, &a).is_zero());
        // (2, 1) at a = -1, realized as w in the M = 2 cyclotomic field
        let ctx2 = ScalarContext::root_of_unity(2);
        let am1 = Scalar::omega(&ctx2);
        assert!(quantum_binom(2, 1, &am1).is_zero());
    }

    #[test]
    fn binom_matches_factorial_quotient() {
        // exhaustive n <= 8 in generic mode
        let ctx = ScalarContext::generic();
        let a = Scalar::omega(&ctx);
        for n in 0..=8u64 {
            for p in 0..=n {
                let lhs = quantum_binom(n, p as i64, &a);
                let quot = quantum_factorial(n, &a)
                    .div(&quantum_factorial(p, &a).mul(&quantum_factorial(n - p, &a)))
                    .unwrap();
                assert_eq!(lhs, quot, "binom({n},{p}) mismatch");
            }
        }
    }
}
