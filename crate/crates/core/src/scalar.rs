//! Exact coefficient field: rational functions in `t = q^(1/m)` over the rationals.
//!
//! A [`LaurentPoly`] stores its exponents as integers counted in units of `1/m`,
//! where `m` is the [`RootOrder`] of the computation. A [`Scalar`] is a reduced
//! fraction of two Laurent polynomials whose denominator is an ordinary monic
//! polynomial with nonzero constant term, so structural equality is field
//! equality and "is this zero" is a constant-time question.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational numbers.
pub type Rational = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarError {
    InvalidRootOrder(i64),
    /// Two non-constant scalars built over different root orders were combined.
    RootOrderMismatch { left: u32, right: u32 },
    /// An exponent `num/den` is not a multiple of `1/m`.
    ExponentNotRepresentable { num: i64, den: i64, order: u32 },
    DivisionByZero,
    /// The denominator vanishes at the requested evaluation point.
    EvaluationPole,
    /// `q0` has no rational `m`-th root and fractional exponents occur.
    NoExactRoot,
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::InvalidRootOrder(m) => write!(f, "root order must be >= 1, got {m}"),
            ScalarError::RootOrderMismatch { left, right } => {
                write!(f, "root order mismatch: {left} vs {right}")
            }
            ScalarError::ExponentNotRepresentable { num, den, order } => write!(
                f,
                "exponent {num}/{den} is not a multiple of 1/{order}"
            ),
            ScalarError::DivisionByZero => write!(f, "division by zero"),
            ScalarError::EvaluationPole => write!(f, "denominator vanishes at evaluation point"),
            ScalarError::NoExactRoot => write!(f, "evaluation point has no exact rational root"),
        }
    }
}

/// The number `m` such that every exponent of `q` is a multiple of `1/m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOrder(u32);

impl RootOrder {
    pub const DEFAULT: RootOrder = RootOrder(6);

    pub fn new(m: i64) -> Result<Self, ScalarError> {
        if m < 1 || m > u32::MAX as i64 {
            return Err(ScalarError::InvalidRootOrder(m));
        }
        Ok(RootOrder(m as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Converts the exponent `num/den` of `q` into units of `1/m`.
    pub fn units(self, num: i64, den: i64) -> Result<i64, ScalarError> {
        let err = ScalarError::ExponentNotRepresentable { num, den, order: self.0 };
        if den == 0 {
            return Err(err);
        }
        let scaled = num.checked_mul(self.0 as i64).ok_or(err.clone())?;
        if scaled % den != 0 {
            return Err(err);
        }
        Ok(scaled / den)
    }

    /// Reduced fraction `(num, den)` for an exponent given in units.
    pub fn as_fraction(self, units: i64) -> (i64, i64) {
        let g = units.gcd(&(self.0 as i64));
        (units / g, self.0 as i64 / g)
    }
}

impl Default for RootOrder {
    fn default() -> Self {
        RootOrder::DEFAULT
    }
}

/// A rational exponent of `q`, kept reduced with a positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Exponent {
    num: i64,
    den: i64,
}

impl Exponent {
    pub fn new(num: i64, den: i64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        let g = num.gcd(&den);
        let s = if den < 0 { -1 } else { 1 };
        Some(Exponent { num: s * num / g, den: s * den / g })
    }

    pub fn integer(n: i64) -> Self {
        Exponent { num: n, den: 1 }
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    /// The exponent counted in units of `1/m`.
    pub fn units(self, order: RootOrder) -> Result<i64, ScalarError> {
        order.units(self.num, self.den)
    }

    pub fn from_units(units: i64, order: RootOrder) -> Self {
        let (n, d) = order.as_fraction(units);
        Exponent { num: n, den: d }
    }

    pub fn add(self, other: Exponent) -> Exponent {
        Exponent::new(self.num * other.den + other.num * self.den, self.den * other.den).unwrap()
    }

    pub fn scale(self, num: i64, den: i64) -> Option<Exponent> {
        Exponent::new(self.num * num, self.den * den)
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Sparse Laurent polynomial in `t` with rational coefficients.
///
/// Terms are kept sorted by ascending exponent with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i64, Rational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(exp, c)] }
        }
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut v: Vec<(i64, Rational)> = terms.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i64, Rational)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        LaurentPoly { terms: out }
    }

    pub fn terms(&self) -> &[(i64, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// True when the only exponent present is zero (includes the zero polynomial).
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0 == 0)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    /// Coefficient of the highest exponent.
    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.last().map(|t| &t.1)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        LaurentPoly { terms: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return LaurentPoly { terms: self.terms.iter().map(|(x, y)| (x + e, y * c)).collect() };
        }
        if self.terms.len() == 1 {
            return other.mul(self);
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.terms.last().unwrap().0 + other.terms.last().unwrap().0;
        let mut acc = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                acc[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 + lo, c))
            .collect();
        LaurentPoly { terms }
    }

    /// Evaluates at `t = t0`. Fails on negative exponents at `t0 = 0`.
    pub fn eval(&self, t0: &Rational) -> Result<Rational, ScalarError> {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            if t0.is_zero() && *e < 0 {
                return Err(ScalarError::EvaluationPole);
            }
            acc += c * pow_rational(t0, *e);
        }
        Ok(acc)
    }

    /// Dense coefficient vector of `t^(-min_exp) * self` (index = power).
    fn to_dense(&self) -> (i64, Vec<Rational>) {
        let lo = match self.min_exp() {
            Some(lo) => lo,
            None => return (0, Vec::new()),
        };
        let hi = self.max_exp().unwrap();
        let mut v = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_dense(shift: i64, dense: &[Rational]) -> Self {
        LaurentPoly {
            terms: dense
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 + shift, c.clone()))
                .collect(),
        }
    }
}

fn pow_rational(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

// Dense polynomial helpers over the rationals. Index = power, no trailing zeros.
mod dense {
    use super::Rational;
    use alloc::vec::Vec;
    use num_traits::{One, Zero};

    pub fn trim(v: &mut Vec<Rational>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }

    pub fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r: Vec<Rational> = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lb = &b[db];
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = alloc::vec![Rational::zero(); r.len() - db];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() / lb;
            for (i, bc) in b.iter().enumerate() {
                let t = &c * bc;
                r[i + shift] -= t;
            }
            q[shift] = c;
            r.pop();
            trim(&mut r);
        }
        (q, r)
    }

    pub fn make_monic(v: &mut [Rational]) {
        if let Some(lc) = v.last().cloned() {
            if !lc.is_one() {
                for c in v.iter_mut() {
                    *c = &*c / &lc;
                }
            }
        }
    }

    /// Monic gcd. Both inputs nonzero.
    pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let (mut x, mut y) = if a.len() >= b.len() { (a.to_vec(), b.to_vec()) } else { (b.to_vec(), a.to_vec()) };
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            if y.len() == 1 {
                return alloc::vec![Rational::one()];
            }
            let (_, r) = divrem(&x, &y);
            x = y;
            y = r;
            make_monic(&mut y);
        }
        make_monic(&mut x);
        x
    }

    pub fn div_exact(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let (q, r) = divrem(a, b);
        debug_assert!(r.is_empty(), "inexact polynomial division");
        q
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = alloc::vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    pub fn is_one(a: &[Rational]) -> bool {
        a.len() == 1 && a[0].is_one()
    }
}

/// Element of the field of rational functions in `t = q^(1/m)`.
///
/// Canonical form: `num / den` with `den` a monic ordinary polynomial with
/// nonzero constant term, coprime to `num`. Zero is `0 / 1`.
#[derive(Clone, Debug)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
    order: RootOrder,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num
            && self.den == other.den
            && (self.order == other.order || self.is_constant())
    }
}

impl Eq for Scalar {}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: LaurentPoly::zero(), den: LaurentPoly::one(), order: RootOrder::DEFAULT }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(c: Rational) -> Self {
        Scalar { num: LaurentPoly::constant(c), den: LaurentPoly::one(), order: RootOrder::DEFAULT }
    }

    /// `t^units`, i.e. `q^(units/m)`.
    pub fn t_pow(units: i64, order: RootOrder) -> Self {
        Scalar { num: LaurentPoly::monomial(units, Rational::one()), den: LaurentPoly::one(), order }
    }

    /// `q^(num/den)`.
    pub fn q_pow(num: i64, den: i64, order: RootOrder) -> Result<Self, ScalarError> {
        Ok(Self::t_pow(order.units(num, den)?, order))
    }

    /// `q^e` for a rational exponent.
    pub fn q_exp(e: Exponent, order: RootOrder) -> Result<Self, ScalarError> {
        Ok(Self::t_pow(e.units(order)?, order))
    }

    /// `q` itself.
    pub fn q(order: RootOrder) -> Self {
        Self::t_pow(order.get() as i64, order)
    }

    /// A Laurent polynomial viewed as a scalar.
    pub fn from_laurent(num: LaurentPoly, order: RootOrder) -> Self {
        Scalar { num, den: LaurentPoly::one(), order }
    }

    /// Builds `num / den` in canonical form.
    pub fn from_parts(num: LaurentPoly, den: LaurentPoly, order: RootOrder) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalize(num, den, order))
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly, order: RootOrder) -> Self {
        if num.is_zero() {
            return Scalar { num, den: LaurentPoly::one(), order };
        }
        if den.terms.len() == 1 {
            let (e, c) = &den.terms[0];
            let inv = c.recip();
            return Scalar { num: num.shift(-e).scale(&inv), den: LaurentPoly::one(), order };
        }
        let (nv, n) = num.to_dense();
        let (dv, d) = den.to_dense();
        let g = dense::gcd(&n, &d);
        let (mut n, mut d) = if dense::is_one(&g) { (n, d) } else { (dense::div_exact(&n, &g), dense::div_exact(&d, &g)) };
        let lc = d.last().unwrap().clone();
        if !lc.is_one() {
            for c in n.iter_mut() {
                *c = &*c / &lc;
            }
            for c in d.iter_mut() {
                *c = &*c / &lc;
            }
        }
        Scalar { num: LaurentPoly::from_dense(nv - dv, &n), den: LaurentPoly::from_dense(0, &d), order }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn order(&self) -> RootOrder {
        self.order
    }

    /// Rebinds a scalar to a root order. Constants always succeed; other
    /// scalars only when the order is unchanged.
    pub fn with_order(&self, order: RootOrder) -> Result<Self, ScalarError> {
        if self.order == order || self.is_constant() {
            let mut s = self.clone();
            s.order = order;
            Ok(s)
        } else {
            Err(ScalarError::RootOrderMismatch { left: self.order.0, right: order.0 })
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// No dependence on `q`.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Laurent polynomial (denominator one).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// The rational value when the scalar does not depend on `q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.num.terms.first().map(|t| t.1.clone()).unwrap_or_else(Rational::zero))
    }

    /// Sign of the highest-exponent numerator coefficient (0 for zero).
    pub fn leading_sign(&self) -> i32 {
        match self.num.leading_coeff() {
            None => 0,
            Some(c) if c.is_negative() => -1,
            Some(_) => 1,
        }
    }

    fn join(&self, other: &Self) -> Result<RootOrder, ScalarError> {
        if self.order == other.order || other.is_constant() {
            Ok(self.order)
        } else if self.is_constant() {
            Ok(other.order)
        } else {
            Err(ScalarError::RootOrderMismatch { left: self.order.0, right: other.order.0 })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        let order = self.join(other)?;
        if self.is_zero() {
            return Ok(Scalar { order, ..other.clone() });
        }
        if other.is_zero() {
            return Ok(Scalar { order, ..self.clone() });
        }
        if self.den.is_one() && other.den.is_one() {
            return Ok(Scalar { num: self.num.add(&other.num), den: LaurentPoly::one(), order });
        }
        if self.den == other.den {
            return Ok(Self::normalize(self.num.add(&other.num), self.den.clone(), order));
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Ok(Self::normalize(num, self.den.mul(&other.den), order))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let order = self.join(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Scalar { order, ..Scalar::zero() });
        }
        if self.den.is_one() && other.den.is_one() {
            return Ok(Scalar { num: self.num.mul(&other.num), den: LaurentPoly::one(), order });
        }
        Ok(Self::normalize(self.num.mul(&other.num), self.den.mul(&other.den), order))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone(), self.order))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.try_mul(&other.inv()?)
    }

    fn neg_ref(&self) -> Self {
        Scalar { num: self.num.neg(), den: self.den.clone(), order: self.order }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar { order: self.order, ..Scalar::one() };
        for _ in 0..e.unsigned_abs() {
            acc = acc.try_mul(&base)?;
        }
        Ok(acc)
    }

    /// Substitutes `t = t0`.
    pub fn eval_at_t(&self, t0: &Rational) -> Result<Rational, ScalarError> {
        let d = self.den.eval(t0)?;
        if d.is_zero() {
            return Err(ScalarError::EvaluationPole);
        }
        Ok(self.num.eval(t0)? / d)
    }

    /// Substitutes `q = q0`. When fractional exponents occur, `q0` must have an
    /// exact rational `m`-th root.
    pub fn eval_at_q(&self, q0: &Rational) -> Result<Rational, ScalarError> {
        let m = self.order.0 as i64;
        let integral = self.num.terms.iter().chain(self.den.terms.iter()).all(|t| t.0 % m == 0);
        if integral {
            let sub = |p: &LaurentPoly| -> Result<Rational, ScalarError> {
                LaurentPoly { terms: p.terms.iter().map(|(e, c)| (e / m, c.clone())).collect() }.eval(q0)
            };
            let d = sub(&self.den)?;
            if d.is_zero() {
                return Err(ScalarError::EvaluationPole);
            }
            return Ok(sub(&self.num)? / d);
        }
        let t0 = rational_root(q0, self.order.0).ok_or(ScalarError::NoExactRoot)?;
        self.eval_at_t(&t0)
    }

    /// A single monomial `c*q^(a/b)`, printed without parentheses.
    pub fn is_single_term(&self) -> bool {
        self.den.is_one() && self.num.terms.len() <= 1
    }

    /// `Some(e)` when the value is exactly `q^e`.
    pub fn as_q_power(&self) -> Option<Exponent> {
        match self.num.terms.as_slice() {
            [(u, c)] if self.den.is_one() && c.is_one() => Some(Exponent::from_units(*u, self.order)),
            _ => None,
        }
    }
}

fn integer_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        if k.is_multiple_of(2) {
            return None;
        }
        return integer_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

fn rational_root(x: &Rational, k: u32) -> Option<Rational> {
    Some(Rational::new(integer_root(x.numer(), k)?, integer_root(x.denom(), k)?))
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$imp(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("scalar arithmetic: {e}"),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

// Operators panic on mismatched root orders or division by zero; use the
// `try_*` methods where either can come from user input.
forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

fn write_laurent(f: &mut fmt::Formatter<'_>, p: &LaurentPoly, order: RootOrder) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (i, (e, c)) in p.terms.iter().enumerate() {
        let mag = c.abs();
        if i == 0 {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        if *e == 0 {
            write_rational(f, &mag)?;
            continue;
        }
        if !mag.is_one() {
            write_rational(f, &mag)?;
            write!(f, "*")?;
        }
        let (n, d) = order.as_fraction(*e);
        if d == 1 {
            write!(f, "q^({n})")?;
        } else {
            write!(f, "q^({n}/{d})")?;
        }
    }
    Ok(())
}

/// Terms in ascending exponent; `q^(a/b)` with reduced exponent; a proper
/// fraction prints as `(num)/(den)`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write_laurent(f, &self.num, self.order)
        } else {
            write!(f, "(")?;
            write_laurent(f, &self.num, self.order)?;
            write!(f, ")/(")?;
            write_laurent(f, &self.den, self.order)?;
            write!(f, ")")
        }
    }
}

/// Rescales a vector of scalars to a canonical representative of its line:
/// denominators cleared, polynomial and rational content removed, lowest
/// exponent across all entries zero, and the entry at `lead` with a positive
/// highest coefficient. A zero vector, or a zero lead entry, is left as is
/// apart from the sign step being skipped.
pub fn normalize_content(values: &mut [Scalar], lead: usize) {
    let order = match values.iter().find(|v| !v.is_constant()) {
        Some(v) => v.order,
        None => values.first().map(|v| v.order).unwrap_or_default(),
    };
    if values.iter().all(|v| v.is_zero()) {
        return;
    }
    // lcm of denominators
    let mut l: Vec<Rational> = vec![Rational::one()];
    for v in values.iter() {
        if v.is_zero() || v.den.is_one() {
            continue;
        }
        let (_, d) = v.den.to_dense();
        let g = dense::gcd(&l, &d);
        l = dense::mul(&l, &dense::div_exact(&d, &g));
    }
    let lpoly = LaurentPoly::from_dense(0, &l);
    let mut nums: Vec<LaurentPoly> = values
        .iter()
        .map(|v| {
            if v.is_zero() {
                LaurentPoly::zero()
            } else if v.den.is_one() {
                v.num.mul(&lpoly)
            } else {
                let (_, d) = v.den.to_dense();
                let cofactor = LaurentPoly::from_dense(0, &dense::div_exact(&l, &d));
                v.num.mul(&cofactor)
            }
        })
        .collect();
    // polynomial content
    let mut g: Option<Vec<Rational>> = None;
    for n in nums.iter().filter(|n| !n.is_zero()) {
        let (_, d) = n.to_dense();
        g = Some(match g {
            None => {
                let mut d = d;
                dense::make_monic(&mut d);
                d
            }
            Some(g) => dense::gcd(&g, &d),
        });
    }
    if let Some(g) = g {
        if !dense::is_one(&g) {
            for n in nums.iter_mut().filter(|n| !n.is_zero()) {
                let (s, d) = n.to_dense();
                *n = LaurentPoly::from_dense(s, &dense::div_exact(&d, &g));
            }
        }
    }
    let lo = nums.iter().filter_map(|n| n.min_exp()).min().unwrap_or(0);
    // rational content
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    for n in &nums {
        for (_, c) in &n.terms {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
    }
    let mut factor = Rational::new(den_lcm, num_gcd);
    if let Some(lc) = nums.get(lead).and_then(|n| n.leading_coeff()) {
        if lc.is_negative() {
            factor = -factor;
        }
    }
    for (v, n) in values.iter_mut().zip(nums) {
        *v = Scalar { num: n.shift(-lo).scale(&factor), den: LaurentPoly::one(), order };
    }
}
