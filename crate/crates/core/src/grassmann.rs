//! Finite-rank real Grassmann algebra.
//!
//! An element stores one coefficient per subset of the generators
//! `g{1}..g{N}`, indexed by bitmask (bit `k-1` stands for `g{k}`).
//! Monomials are kept in increasing generator order, so the product of two
//! monomials picks up the sign of the permutation that sorts them.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use crate::error::Error;

/// Largest supported rank. The dense layout holds `2^rank` coefficients.
pub const MAX_RANK: u8 = 16;

/// Rank used when the caller does not choose one.
pub const DEFAULT_RANK: u8 = 8;

/// Parity classification of a Grassmann number by the cardinalities of its
/// stored monomials. Zero counts as even.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

#[derive(Clone, PartialEq)]
pub struct Grassmann {
    rank: u8,
    c: Vec<f64>,
}

/// Sign of `m_a * m_b` relative to the sorted monomial `m_a | m_b`.
/// Assumes the masks are disjoint.
#[inline]
pub fn monomial_sign(a: u32, b: u32) -> f64 {
    let mut swaps = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        swaps += (a >> j >> 1).count_ones();
        bb &= bb - 1;
    }
    if swaps & 1 == 1 {
        -1.0
    } else {
        1.0
    }
}

impl Grassmann {
    pub fn zero(rank: u8) -> Self {
        assert!(rank <= MAX_RANK, "rank {rank} exceeds {MAX_RANK}");
        Grassmann {
            rank,
            c: vec![0.0; 1usize << rank],
        }
    }

    pub fn scalar(rank: u8, x: f64) -> Self {
        let mut g = Self::zero(rank);
        g.c[0] = x;
        g
    }

    pub fn one(rank: u8) -> Self {
        Self::scalar(rank, 1.0)
    }

    /// The generator `g{k}`, with `k` in `1..=rank`.
    pub fn generator(rank: u8, k: usize) -> Self {
        assert!(k >= 1 && k <= rank as usize, "generator g{{{k}}} outside rank {rank}");
        let mut g = Self::zero(rank);
        g.c[1 << (k - 1)] = 1.0;
        g
    }

    /// Builds an element from `(mask, coefficient)` pairs; repeated masks add up.
    pub fn from_terms(rank: u8, terms: &[(u32, f64)]) -> Result<Self, Error> {
        let mut g = Self::zero(rank);
        for &(m, x) in terms {
            if (m as usize) >= g.c.len() {
                return Err(Error::GeneratorOutOfRange { rank });
            }
            g.c[m as usize] += x;
        }
        Ok(g)
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c
    }

    pub fn coeff(&self, mask: u32) -> f64 {
        self.c.get(mask as usize).copied().unwrap_or(0.0)
    }

    pub fn set_coeff(&mut self, mask: u32, x: f64) {
        self.c[mask as usize] = x;
    }

    /// Coefficient of the monomial named by 1-based generator indices, in any order.
    /// Duplicate indices name no monomial and give 0.
    pub fn extract_coefficient(&self, monomial: &[usize]) -> f64 {
        let mut m = 0u32;
        for &k in monomial {
            if k == 0 || k > self.rank as usize || m & (1 << (k - 1)) != 0 {
                return 0.0;
            }
            m |= 1 << (k - 1);
        }
        // Reorder the requested word into increasing order.
        let mut sign = 1.0;
        for (i, &a) in monomial.iter().enumerate() {
            for &b in &monomial[i + 1..] {
                if a > b {
                    sign = -sign;
                }
            }
        }
        sign * self.c[m as usize]
    }

    pub fn body(&self) -> f64 {
        self.c[0]
    }

    pub fn soul(&self) -> Self {
        let mut s = self.clone();
        s.c[0] = 0.0;
        s
    }

    pub fn parity(&self) -> Parity {
        let mut even = false;
        let mut odd = false;
        for (m, &x) in self.c.iter().enumerate() {
            if x != 0.0 {
                if (m as u32).count_ones().is_multiple_of(2) {
                    even = true;
                } else {
                    odd = true;
                }
            }
        }
        match (even, odd) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    pub fn is_odd(&self) -> bool {
        self.c.iter().enumerate().all(|(m, &x)| x == 0.0 || (m as u32).count_ones() % 2 == 1)
    }

    pub fn even_part(&self) -> Self {
        self.filter(|m| m.count_ones() % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|m| m.count_ones() % 2 == 1)
    }

    fn filter(&self, keep: impl Fn(u32) -> bool) -> Self {
        let mut g = self.clone();
        for (m, x) in g.c.iter_mut().enumerate() {
            if !keep(m as u32) {
                *x = 0.0;
            }
        }
        g
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    /// Largest coefficient difference. Panics on rank mismatch.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.check_rank(other).expect("rank mismatch");
        self.c
            .iter()
            .zip(&other.c)
            .fold(0.0, |acc, (a, b)| acc.max((a - b).abs()))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rank == other.rank && self.max_diff(other) <= tol
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut g = self.clone();
        for x in &mut g.c {
            *x *= k;
        }
        g
    }

    fn check_rank(&self, other: &Self) -> Result<(), Error> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, Error> {
        self.check_rank(other)?;
        let mut g = self.clone();
        for (x, y) in g.c.iter_mut().zip(&other.c) {
            *x += y;
        }
        Ok(g)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, Error> {
        self.check_rank(other)?;
        let mut g = self.clone();
        for (x, y) in g.c.iter_mut().zip(&other.c) {
            *x -= y;
        }
        Ok(g)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_rank(other)?;
        let full = (self.c.len() - 1) as u32;
        let mut out = vec![0.0; self.c.len()];
        for (ma, &xa) in self.c.iter().enumerate() {
            if xa == 0.0 {
                continue;
            }
            let ma = ma as u32;
            let comp = full & !ma;
            // Walk every submask of the complement, including the empty one.
            let mut mb = comp;
            loop {
                let xb = other.c[mb as usize];
                if xb != 0.0 {
                    out[(ma | mb) as usize] += monomial_sign(ma, mb) * xa * xb;
                }
                if mb == 0 {
                    break;
                }
                mb = (mb - 1) & comp;
            }
        }
        Ok(Grassmann { rank: self.rank, c: out })
    }

    /// Applies an analytic function through its Taylor series at the body:
    /// `f(b + n) = sum_k f^(k)(b)/k! n^k`. `taylor(k)` returns `f^(k)(b)/k!`.
    /// The series stops once the power of the soul vanishes.
    pub fn apply_series(&self, taylor: impl Fn(usize) -> f64) -> Self {
        let n = self.soul();
        let mut out = Self::scalar(self.rank, taylor(0));
        let mut p = Self::one(self.rank);
        for k in 1..=(self.rank as usize) {
            p = &p * &n;
            if p.max_abs() == 0.0 {
                break;
            }
            let t = taylor(k);
            for (o, x) in out.c.iter_mut().zip(&p.c) {
                *o += t * x;
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Self, Error> {
        let b = self.body();
        if b == 0.0 {
            return Err(Error::ZeroBody);
        }
        // d^k/dx^k (1/x) / k! = (-1)^k / x^(k+1)
        Ok(self.apply_series(|k| {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            s / libm::pow(b, (k + 1) as f64)
        }))
    }

    /// Real power with the positive-body branch. Requires an even element with positive body.
    pub fn powf(&self, e: f64) -> Result<Self, Error> {
        if !self.is_even() {
            return Err(Error::OddInput);
        }
        let b = self.body();
        if b <= 0.0 {
            return Err(Error::NonPositiveBody);
        }
        Ok(self.apply_series(|k| {
            let mut c = 1.0;
            for j in 0..k {
                c *= (e - j as f64) / (j + 1) as f64;
            }
            c * libm::pow(b, e - k as f64)
        }))
    }

    pub fn sqrt(&self) -> Result<Self, Error> {
        if !self.is_even() {
            return Err(Error::OddInput);
        }
        let b = self.body();
        if b <= 0.0 {
            return Err(Error::NonPositiveBody);
        }
        let r = libm::sqrt(b);
        // sqrt(b) * sqrt(1 + n/b), binomial series with exponent 1/2
        Ok(self.apply_series(|k| {
            let mut c = 1.0;
            for j in 0..k {
                c *= (0.5 - j as f64) / (j + 1) as f64;
            }
            c * r / libm::pow(b, k as f64)
        }))
    }

    /// Fourth root as `sqrt(sqrt(x))`, positive-body branch both times.
    pub fn fourth_root(&self) -> Result<Self, Error> {
        self.sqrt()?.sqrt()
    }

    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        self.checked_mul(&other.inverse()?)
    }

    /// Left derivative with respect to the generator `g{k}`: the coefficient of
    /// `g{k}` once it is anticommuted to the front of every monomial containing it.
    pub fn left_derivative(&self, k: usize) -> Self {
        assert!(k >= 1 && k <= self.rank as usize);
        let bit = 1u32 << (k - 1);
        let mut out = Self::zero(self.rank);
        for (m, &x) in self.c.iter().enumerate() {
            let m = m as u32;
            if x != 0.0 && m & bit != 0 {
                let before = (m & (bit - 1)).count_ones();
                let s = if before.is_multiple_of(2) { 1.0 } else { -1.0 };
                out.c[(m & !bit) as usize] += s * x;
            }
        }
        out
    }

    /// Drops every monomial containing `g{k}`, i.e. sets that generator to zero.
    pub fn without_generator(&self, k: usize) -> Self {
        let bit = 1u32 << (k - 1);
        self.filter(|m| m & bit == 0)
    }

    /// Whether any monomial containing `g{k}` has a nonzero coefficient.
    pub fn uses_generator(&self, k: usize) -> bool {
        let bit = 1u32 << (k - 1);
        self.c.iter().enumerate().any(|(m, &x)| x != 0.0 && (m as u32) & bit != 0)
    }

    /// Canonical representative of `{x, -x}`: the first coefficient in bitmask
    /// order whose magnitude exceeds `tol` is made positive. Returns the
    /// representative and the sign that was applied (`+1` or `-1`).
    pub fn canonical_sign(&self, tol: f64) -> (Self, i8) {
        for &x in &self.c {
            if x.abs() > tol {
                return if x < 0.0 { (-self, -1) } else { (self.clone(), 1) };
            }
        }
        (self.clone(), 1)
    }

    /// Generator indices (1-based) of a mask, increasing.
    pub fn mask_indices(mask: u32) -> Vec<usize> {
        (0..32).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()
    }
}

impl fmt::Debug for Grassmann {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Grassmann[{}]({})", self.rank, self)
    }
}

fn write_float(f: &mut fmt::Formatter<'_>, x: f64) -> fmt::Result {
    let a = x.abs();
    if a != 0.0 && !(1e-4..1e16).contains(&a) {
        write!(f, "{x:e}")
    } else {
        write!(f, "{x}")
    }
}

/// Terms in increasing degree, then increasing mask. The body is a plain number.
impl fmt::Display for Grassmann {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut masks: Vec<u32> = (0..self.c.len() as u32).filter(|&m| self.c[m as usize] != 0.0).collect();
        masks.sort_by_key(|&m| (m.count_ones(), m));
        if masks.is_empty() {
            return write!(f, "0");
        }
        for (i, &m) in masks.iter().enumerate() {
            let x = self.c[m as usize];
            let mag = if i == 0 {
                if x < 0.0 {
                    write!(f, "-")?;
                }
                x.abs()
            } else {
                write!(f, " {} ", if x < 0.0 { '-' } else { '+' })?;
                x.abs()
            };
            write_float(f, mag)?;
            if m != 0 {
                write!(f, "*g{{")?;
                for (j, k) in Self::mask_indices(m).into_iter().enumerate() {
                    if j > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{k}")?;
                }
                write!(f, "}}")?;
            }
        }
        Ok(())
    }
}

impl Grassmann {
    /// Parses the text form written by `Display`, e.g. `1.5 + 2*g{1,2} - g{3}`.
    /// Indices inside one term may come in any order; the coefficient picks up
    /// the sorting sign.
    pub fn parse(rank: u8, s: &str) -> Result<Self, Error> {
        let mut g = Self::zero(rank);
        let raw: Vec<char> = s.trim().chars().collect();
        for w in raw.windows(3) {
            if w[1].is_whitespace() && (w[0].is_alphanumeric() || w[0] == '.' || w[0] == '}') && (w[2].is_alphanumeric() || w[2] == '.') {
                return Err(Error::Parse("terms must be joined by '+' or '-'"));
            }
        }
        let src: String = raw.into_iter().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(Error::Parse("empty Grassmann number"));
        }
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1.0;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1.0;
                }
                i += 1;
            } else if i > 0 {
                return Err(Error::Parse("expected '+' or '-' between terms"));
            }
            // Number: digits, '.', exponent with optional sign.
            let start = i;
            while i < bytes.len() {
                let c = bytes[i];
                let exp_sign = (c == b'+' || c == b'-') && i > start && matches!(bytes[i - 1], b'e' | b'E');
                if c.is_ascii_digit() || c == b'.' || c == b'e' || c == b'E' || exp_sign {
                    i += 1;
                } else {
                    break;
                }
            }
            let coeff = if i > start {
                src[start..i].parse::<f64>().map_err(|_| Error::Parse("bad number"))?
            } else {
                1.0
            };
            let mut mask = 0u32;
            let mut msign = 1.0;
            let has_mono = if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
                true
            } else {
                i < bytes.len() && bytes[i] == b'g'
            };
            if has_mono {
                if i + 1 >= bytes.len() || bytes[i] != b'g' || bytes[i + 1] != b'{' {
                    return Err(Error::Parse("expected g{...}"));
                }
                i += 2;
                let close = src[i..].find('}').ok_or(Error::Parse("unclosed g{"))? + i;
                let mut order: Vec<usize> = Vec::new();
                for part in src[i..close].split(',') {
                    let k: usize = part.parse().map_err(|_| Error::Parse("bad generator index"))?;
                    if k == 0 || k > rank as usize {
                        return Err(Error::GeneratorOutOfRange { rank });
                    }
                    if mask & (1 << (k - 1)) != 0 {
                        return Err(Error::Parse("repeated generator in a monomial"));
                    }
                    mask |= 1 << (k - 1);
                    order.push(k);
                }
                for (a, &x) in order.iter().enumerate() {
                    for &y in &order[a + 1..] {
                        if x > y {
                            msign = -msign;
                        }
                    }
                }
                i = close + 1;
            } else if i == start {
                return Err(Error::Parse("expected a number or g{...}"));
            }
            g.c[mask as usize] += sign * msign * coeff;
        }
        Ok(g)
    }
}

impl FromStr for Grassmann {
    type Err = Error;
    /// Parses at the smallest rank that holds every generator mentioned, but at
    /// least [`DEFAULT_RANK`]. Use [`Grassmann::parse`] to pin the rank.
    fn from_str(s: &str) -> Result<Self, Error> {
        Self::parse(DEFAULT_RANK, s).or_else(|e| match e {
            Error::GeneratorOutOfRange { .. } => Self::parse(MAX_RANK, s),
            e => Err(e),
        })
    }
}

impl Neg for &Grassmann {
    type Output = Grassmann;
    fn neg(self) -> Grassmann {
        self.scale(-1.0)
    }
}

impl Neg for Grassmann {
    type Output = Grassmann;
    fn neg(self) -> Grassmann {
        self.scale(-1.0)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Grassmann> for &Grassmann {
            type Output = Grassmann;
            /// Panics on rank mismatch; use the `checked_*` method to get an error instead.
            fn $m(self, rhs: &Grassmann) -> Grassmann {
                self.$checked(rhs).expect("Grassmann rank mismatch")
            }
        }
        impl $tr<Grassmann> for Grassmann {
            type Output = Grassmann;
            fn $m(self, rhs: Grassmann) -> Grassmann {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Grassmann> for Grassmann {
            type Output = Grassmann;
            fn $m(self, rhs: &Grassmann) -> Grassmann {
                (&self).$m(rhs)
            }
        }
        impl $tr<Grassmann> for &Grassmann {
            type Output = Grassmann;
            fn $m(self, rhs: Grassmann) -> Grassmann {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Mul<f64> for &Grassmann {
    type Output = Grassmann;
    fn mul(self, k: f64) -> Grassmann {
        self.scale(k)
    }
}

impl Mul<f64> for Grassmann {
    type Output = Grassmann;
    fn mul(self, k: f64) -> Grassmann {
        self.scale(k)
    }
}

impl Add<f64> for &Grassmann {
    type Output = Grassmann;
    fn add(self, k: f64) -> Grassmann {
        let mut g = self.clone();
        g.c[0] += k;
        g
    }
}

impl Add<f64> for Grassmann {
    type Output = Grassmann;
    fn add(mut self, k: f64) -> Grassmann {
        self.c[0] += k;
        self
    }
}

impl AddAssign<&Grassmann> for Grassmann {
    fn add_assign(&mut self, rhs: &Grassmann) {
        assert_eq!(self.rank, rhs.rank, "Grassmann rank mismatch");
        for (x, y) in self.c.iter_mut().zip(&rhs.c) {
            *x += y;
        }
    }
}

impl SubAssign<&Grassmann> for Grassmann {
    fn sub_assign(&mut self, rhs: &Grassmann) {
        assert_eq!(self.rank, rhs.rank, "Grassmann rank mismatch");
        for (x, y) in self.c.iter_mut().zip(&rhs.c) {
            *x -= y;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn g(k: usize) -> Grassmann {
        Grassmann::generator(4, k)
    }

    fn s(x: f64) -> Grassmann {
        Grassmann::scalar(4, x)
    }

    #[test]
    fn doubling_a_generator() {
        assert_eq!(&g(1) + &g(1), g(1).scale(2.0));
    }

    #[test]
    fn opposite_souls_cancel() {
        let a = &s(1.0) + &(&g(1) * &g(2));
        let b = &s(1.0) - &(&g(1) * &g(2));
        assert_eq!(&a + &b, s(2.0));
    }

    #[test]
    fn generators_anticommute() {
        let ab = &g(1) * &g(2);
        let ba = &g(2) * &g(1);
        assert_eq!(ab.coeff(0b11), 1.0);
        assert_eq!(ba, -&ab);
        assert!((&g(1) * &g(1)).is_zero(0.0));
    }

    #[test]
    fn product_of_conjugates_is_one() {
        let a = &s(1.0) + &(&g(1) * &g(2));
        let b = &s(1.0) - &(&g(1) * &g(2));
        assert_eq!(&a * &b, s(1.0));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(s(2.0).inverse().unwrap(), s(0.5));
        let a = &s(1.0) + &(&g(1) * &g(2));
        assert_eq!(a.inverse().unwrap(), &s(1.0) - &(&g(1) * &g(2)));
        let t = 3.0;
        let phipsi = &g(1) * &g(3);
        let x = (&s(1.0) + &phipsi).scale(t);
        let want = (&s(1.0) - &phipsi).scale(1.0 / t);
        assert!(x.inverse().unwrap().approx_eq(&want, 1e-15));
        assert_eq!(Grassmann::zero(4).inverse(), Err(Error::ZeroBody));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(s(4.0).sqrt().unwrap(), s(2.0));
        let x = &s(1.0) + &(&g(1) * &g(2)).scale(2.0);
        assert_eq!(x.sqrt().unwrap(), &s(1.0) + &(&g(1) * &g(2)));
        assert_eq!(s(-1.0).sqrt(), Err(Error::NonPositiveBody));
        assert_eq!(g(1).sqrt(), Err(Error::OddInput));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(s(3.0).parity(), Parity::Even);
        assert_eq!(g(1).parity(), Parity::Odd);
        assert_eq!((&s(1.0) + &g(1)).parity(), Parity::Mixed);
        assert_eq!(Grassmann::zero(4).parity(), Parity::Even);
    }

    #[test]
    fn extract_examples() {
        let x = (&g(1) * &g(2)).scale(2.0);
        assert_eq!(x.extract_coefficient(&[1, 2]), 2.0);
        assert_eq!(x.extract_coefficient(&[2, 1]), -2.0);
        assert_eq!(s(5.0).extract_coefficient(&[]), 5.0);
        assert_eq!(g(1).extract_coefficient(&[2]), 0.0);
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = Grassmann::one(3);
        let b = Grassmann::one(4);
        assert_eq!(a.checked_mul(&b), Err(Error::RankMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn left_derivative_signs() {
        // d/dg2 (g1 g2) = -g1
        let x = &g(1) * &g(2);
        assert_eq!(x.left_derivative(2), -g(1));
        assert_eq!(x.left_derivative(1), g(2));
    }

    #[test]
    fn text_round_trip() {
        let x = &(&s(1.5) + &(&g(1) * &g(2)).scale(2.0)) - &g(3).scale(0.1);
        let text = x.to_string();
        assert_eq!(text, "1.5 - 0.1*g{3} + 2*g{1,2}");
        assert_eq!(Grassmann::parse(4, &text).unwrap(), x);
        assert_eq!(Grassmann::parse(4, "g{2,1}").unwrap(), -(&g(1) * &g(2)));
        assert_eq!(Grassmann::parse(4, "-3e-7*g{4}").unwrap(), g(4).scale(-3e-7));
        assert!(Grassmann::parse(4, "2*g{5}").is_err());
        assert!(Grassmann::parse(4, "1 2").is_err());
    }

    #[test]
    fn canonical_sign_flips_leading_negative() {
        let x = &g(2).scale(-1.0) + &g(3);
        let (c, sg) = x.canonical_sign(1e-12);
        assert_eq!(sg, -1);
        assert_eq!(c.coeff(0b10), 1.0);
    }
}
