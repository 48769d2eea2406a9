//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! A value is stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` reduced
//! modulo the cyclotomic polynomial `Φ_N`. Values of different conductors
//! are combined in the field of the least common multiple.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Field};
use crate::Q;

thread_local! {
    static PHI: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Rc<Vec<i64>> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(p) = PHI.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    let p = Rc::new(p);
    PHI.with(|c| c.borrow_mut().insert(n, p.clone()));
    p
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let t = rem[i + dd];
        quot[i] = t;
        for (j, &c) in den.iter().enumerate() {
            rem[i + j] -= t * c;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

pub fn euler_phi(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

/// Reduces a polynomial in `ζ_n` modulo `Φ_n`.
fn reduce(mut poly: Vec<Q>, n: u32) -> Vec<Q> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for i in (deg..poly.len()).rev() {
        if poly[i].is_zero() {
            continue;
        }
        let t = std::mem::replace(&mut poly[i], Q::zero());
        for (j, &c) in phi[..deg].iter().enumerate() {
            if c != 0 {
                poly[i - deg + j] -= &t * Q::from_integer(c.into());
            }
        }
    }
    poly.resize(deg, Q::zero());
    poly
}

#[derive(Clone)]
pub struct Cyclo {
    n: u32,
    c: Vec<Q>,
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo { n: 1, c: vec![Q::zero()] }
    }

    pub fn one() -> Self {
        Self::from_q(Q::one())
    }

    pub fn from_q(q: Q) -> Self {
        Cyclo { n: 1, c: vec![q] }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_q(Q::from_integer(k.into()))
    }

    /// `ζ_n^k`, stored at the smallest conductor `n / gcd(n, k)`.
    pub fn root_of_unity(k: i64, n: u32) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let k = k.rem_euclid(n as i64) as u32;
        let g = k.gcd(&n);
        let (k, n) = if k == 0 { (0, 1) } else { (k / g, n / g) };
        let mut poly = vec![Q::zero(); k as usize + 1];
        poly[k as usize] = Q::one();
        Cyclo { n, c: reduce(poly, n) }
    }

    /// Builds from power-basis coefficients of any length (reduced here).
    pub fn from_poly(n: u32, poly: Vec<Q>) -> Self {
        Cyclo { n, c: reduce(poly, n) }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.try_rational().is_some_and(|q| q.is_one())
    }

    /// The rational value, if every non-constant coefficient vanishes.
    pub fn try_rational(&self) -> Option<Q> {
        self.c[1..].iter().all(|x| x.is_zero()).then(|| self.c[0].clone())
    }

    /// The same value in `Q(ζ_m)`; requires `n | m`.
    pub fn embed(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.n), "conductor {} does not divide {}", self.n, m);
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as usize;
        let mut poly = vec![Q::zero(); m as usize];
        for (j, x) in self.c.iter().enumerate() {
            poly[j * step] = x.clone();
        }
        Cyclo { n: m, c: reduce(poly, m) }
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.n == other.n {
            return (self.clone(), other.clone());
        }
        let m = self.n.lcm(&other.n);
        (self.embed(m), other.embed(m))
    }

    pub fn scale(&self, s: &Q) -> Self {
        Cyclo { n: self.n, c: self.c.iter().map(|x| x * s).collect() }
    }

    /// Complex conjugation `ζ^j ↦ ζ^{n-j}`.
    pub fn conj(&self) -> Self {
        if self.n <= 2 {
            return self.clone();
        }
        let n = self.n as usize;
        let mut poly = vec![Q::zero(); n];
        for (j, x) in self.c.iter().enumerate() {
            poly[(n - j) % n] += x;
        }
        Cyclo { n: self.n, c: reduce(poly, self.n) }
    }

    fn mul_matrix(&self) -> linalg::Matrix<Q> {
        let d = self.c.len();
        let cols: Vec<Vec<Q>> = (0..d)
            .map(|j| {
                let mut poly = vec![Q::zero(); d + j];
                for (i, x) in self.c.iter().enumerate() {
                    poly[i + j] = x.clone();
                }
                reduce(poly, self.n)
            })
            .collect();
        linalg::transpose(&cols, d)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.try_rational() {
            return Ok(Cyclo { n: self.n, c: self.with_constant(q.recip()) });
        }
        let mut e = vec![Q::zero(); self.c.len()];
        e[0] = Q::one();
        let y = linalg::solve(&self.mul_matrix(), &e).ok_or(Error::DivisionByZero)?;
        Ok(Cyclo { n: self.n, c: y })
    }

    fn with_constant(&self, q: Q) -> Vec<Q> {
        let mut c = vec![Q::zero(); self.c.len()];
        c[0] = q;
        c
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Cyclo::one(), |acc, _| &acc * self)
    }

    /// The same value at the smallest conductor dividing the current one.
    pub fn normalized(&self) -> Self {
        if let Some(q) = self.try_rational() {
            return Cyclo::from_q(q);
        }
        let n = self.n;
        for d in 2..n {
            if !n.is_multiple_of(d) {
                continue;
            }
            let step = n / d;
            let basis: Vec<Vec<Q>> =
                (0..euler_phi(d)).map(|j| Cyclo::root_of_unity((j as u32 * step) as i64, n).embed(n).c).collect();
            let a = linalg::transpose(&basis, self.c.len());
            if let Some(y) = linalg::solve(&a, &self.c) {
                return Cyclo { n: d, c: y };
            }
        }
        self.clone()
    }

    /// Numerical value, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, x) in self.c.iter().enumerate() {
            let v = x.to_f64().unwrap_or(f64::NAN);
            let t = std::f64::consts::TAU * j as f64 / self.n as f64;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    /// Parses `c*z(N)^k` terms joined by `+` and `-`.
    pub fn parse(s: &str) -> Result<Self> {
        Parser { s: s.as_bytes(), pos: 0 }.expr()
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.c == b.c
    }
}

impl Eq for Cyclo {}

impl From<Q> for Cyclo {
    fn from(q: Q) -> Self {
        Cyclo::from_q(q)
    }
}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, other: &Cyclo) -> Cyclo {
        let (a, b) = self.common(other);
        Cyclo { n: a.n, c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect() }
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, other: &Cyclo) -> Cyclo {
        let (a, b) = self.common(other);
        Cyclo { n: a.n, c: a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect() }
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, other: &Cyclo) -> Cyclo {
        if let Some(q) = self.try_rational() {
            return other.scale(&q);
        }
        if let Some(q) = other.try_rational() {
            return self.scale(&q);
        }
        let (a, b) = self.common(other);
        let mut poly = vec![Q::zero(); a.c.len() + b.c.len() - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Cyclo { n: a.n, c: reduce(poly, a.n) }
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { n: self.n, c: self.c.iter().map(|x| -x).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclo {
            type Output = Cyclo;
            fn $m(self, other: Cyclo) -> Cyclo {
                (&self).$m(&other)
            }
        }
        impl $tr<&Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, other: &Cyclo) -> Cyclo {
                (&self).$m(other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl std::iter::Sum for Cyclo {
    fn sum<I: Iterator<Item = Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::zero(), |a, b| &a + &b)
    }
}

impl Field for Cyclo {
    fn fzero() -> Self {
        Cyclo::zero()
    }
    fn fone() -> Self {
        Cyclo::one()
    }
    fn fis_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
    fn fadd(&self, other: &Self) -> Self {
        self + other
    }
    fn fsub(&self, other: &Self) -> Self {
        self - other
    }
    fn fmul(&self, other: &Self) -> Self {
        self * other
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn finv(&self) -> Self {
        self.inv().expect("inverse of zero")
    }
    fn from_q(q: &Q) -> Self {
        Cyclo::from_q(q.clone())
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = self.normalized();
        let mut first = true;
        for (k, c) in x.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "z({})", x.n)?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo({self})")
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at column {} of {:?}", self.pos + 1, String::from_utf8_lossy(self.s)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.err("expected an integer"))
    }

    fn expr(&mut self) -> Result<Cyclo> {
        let mut acc = Cyclo::zero();
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else if self.peek().is_none() {
                return Ok(acc);
            } else {
                return Err(self.err("unexpected character"));
            }
        }
    }

    fn term(&mut self) -> Result<Cyclo> {
        if self.peek() == Some(b'z') {
            return self.zpow();
        }
        let num = self.integer()?;
        let den = if self.eat(b'/') { self.integer()? } else { 1 };
        if den == 0 {
            return Err(self.err("zero denominator"));
        }
        let c = Cyclo::from_q(Q::new(num.into(), den.into()));
        if self.eat(b'*') {
            Ok(&c * &self.zpow()?)
        } else {
            Ok(c)
        }
    }

    fn zpow(&mut self) -> Result<Cyclo> {
        if !(self.eat(b'z') && self.eat(b'(')) {
            return Err(self.err("expected z(N)"));
        }
        let n = self.integer()?;
        if !self.eat(b')') || n < 1 || n > u32::MAX as i64 {
            return Err(self.err("malformed conductor"));
        }
        let k = if self.eat(b'^') {
            let neg = self.eat(b'-');
            let k = self.integer()?;
            if neg {
                -k
            } else {
                k
            }
        } else {
            1
        };
        Ok(Cyclo::root_of_unity(k, n as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qf;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(24), 8);
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(Cyclo::root_of_unity(0, 5), Cyclo::one());
        assert_eq!(Cyclo::root_of_unity(2, 4), Cyclo::from_int(-1));
        let s = &Cyclo::root_of_unity(1, 3) + &Cyclo::root_of_unity(2, 3);
        assert_eq!(s, Cyclo::from_int(-1));
        assert_eq!(s.try_rational(), Some(Q::from_integer((-1).into())));
        assert_eq!(Cyclo::root_of_unity(1, 5).try_rational(), None);
    }

    #[test]
    fn inverse_and_conjugate() {
        let x = &Cyclo::one() + &Cyclo::root_of_unity(1, 3);
        assert_eq!(&x * &x.inv().unwrap(), Cyclo::one());
        assert_eq!(Cyclo::root_of_unity(1, 8).conj(), Cyclo::root_of_unity(7, 8));
        assert_eq!(Cyclo::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_conductors() {
        let s = &Cyclo::root_of_unity(1, 3) + &Cyclo::root_of_unity(1, 4);
        assert_eq!(s.conductor(), 12);
        assert_eq!(&s - &Cyclo::root_of_unity(1, 4), Cyclo::root_of_unity(1, 3));
        assert_eq!(Cyclo::root_of_unity(4, 12), Cyclo::root_of_unity(1, 3));
    }

    #[test]
    fn embedding_then_reducing_is_identity() {
        let x = Cyclo::parse("1/2*z(3)^1 - 1").unwrap();
        let y = x.embed(24).normalized();
        assert_eq!(y.conductor(), 3);
        assert_eq!(y.coeffs(), x.coeffs());
    }

    #[test]
    fn roots_sum_to_zero() {
        for n in 2..=12 {
            let s: Cyclo = (0..n).map(|k| Cyclo::root_of_unity(k, n as u32)).sum();
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let x = Cyclo::parse("1/2*z(3)^1 - 1").unwrap();
        assert_eq!(x.coeffs(), &[Q::from_integer((-1).into()), qf(1, 2)]);
        assert_eq!(Cyclo::parse(&x.to_string()).unwrap(), x);
        assert_eq!(Cyclo::parse("z(5)^2 - z(5)").unwrap().to_string(), "-z(5) + z(5)^2");
        assert_eq!(Cyclo::parse("z(4)^2").unwrap(), Cyclo::from_int(-1));
        assert_eq!(Cyclo::parse("-3/4").unwrap(), Cyclo::from_q(qf(-3, 4)));
        assert!(Cyclo::parse("2*y(3)").is_err());
        assert!(Cyclo::parse("1/0").is_err());
    }

    #[test]
    fn field_axioms_on_samples() {
        let samples: Vec<Cyclo> = ["1 + z(3)", "2*z(4)^1 - 1/3", "z(5)^2 + z(5)^3", "7/2", "z(12)^5"]
            .iter()
            .map(|s| Cyclo::parse(s).unwrap())
            .collect();
        for x in &samples {
            for y in &samples {
                assert_eq!(x * y, y * x);
                assert_eq!(&(x * y) * &y.inv().unwrap(), *x);
                for z in &samples {
                    assert_eq!(x * &(y + z), &(x * y) + &(x * z));
                }
            }
        }
    }
}
