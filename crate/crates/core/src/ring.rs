//! Exact arithmetic in `Z[v, v^-1]` and `Q(v)` with the bar involution `v -> v^-1`.
//!
//! Coefficients are arbitrary-precision rationals; there is no floating point
//! anywhere. `LaurentPoly` is the workhorse; `RatFunc` appears where linear
//! solves force denominators, and results are funneled back to Laurent form at
//! module boundaries via [`RatFunc::to_laurent`].

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum RingError {
    #[error("division by zero rational function")]
    DivisionByZero,
    #[error("value is not a Laurent polynomial: nonzero remainder on exact division")]
    NotLaurent,
    #[error("pole at evaluation point")]
    PoleAtPoint,
}

/// A Laurent polynomial in `v`, stored sparsely as exponent -> coefficient.
///
/// Invariant: no stored coefficient is zero; equality is coefficient-wise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::term(BigRational::one(), 0)
    }

    /// The monomial `c * v^e`.
    pub fn term(c: BigRational, e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LaurentPoly { coeffs }
    }

    /// `v^e`.
    pub fn v_pow(e: i64) -> Self {
        Self::term(BigRational::one(), e)
    }

    pub fn int(n: i64) -> Self {
        Self::term(BigRational::from(BigInt::from(n)), 0)
    }

    /// `v^a - v^-a`; shows up constantly as `q_i - q_i^{-1}`.
    pub fn v_pow_minus_inv(a: i64) -> Self {
        Self::v_pow(a).sub(&Self::v_pow(-a))
    }

    /// Quantum integer `[c]` at `v^l`: `(v^{cl} - v^{-cl}) / (v^l - v^{-l})`,
    /// in the polynomial form that is also valid at `l = 0` (where it is `c`).
    pub fn quantum_int(c: u32, l: i64) -> Self {
        let mut out = Self::zero();
        for j in 0..c {
            let e = (c as i64 - 1 - 2 * j as i64) * l;
            out = out.add(&Self::v_pow(e));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn insert_add(map: &mut BTreeMap<i64, BigRational>, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match map.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            Self::insert_add(&mut coeffs, *e, c.clone());
        }
        LaurentPoly { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                Self::insert_add(&mut coeffs, e1 + e2, c1 * c2);
            }
        }
        LaurentPoly { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Multiply by `v^e`.
    pub fn shift(&self, e: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    /// The bar involution `v -> v^-1`: negate every exponent.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// True iff the value lies in `v Z[v]`: every exponent >= 1 and every
    /// coefficient an integer.
    pub fn in_v_zv(&self) -> bool {
        self.coeffs.iter().all(|(e, c)| *e >= 1 && c.is_integer())
    }

    /// True iff every coefficient is an integer (membership in `Z[v,v^-1]`).
    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// The truncation to strictly positive exponents.
    pub fn positive_part(&self) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| **e > 0)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Exact evaluation at a nonzero rational point.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational, RingError> {
        let mut acc = BigRational::zero();
        for (e, c) in &self.coeffs {
            if *e < 0 && x.is_zero() {
                return Err(RingError::PoleAtPoint);
            }
            let p = pow_rat(x, *e)?;
            acc += c * p;
        }
        Ok(acc)
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }
}

fn pow_rat(x: &BigRational, e: i64) -> Result<BigRational, RingError> {
    if e == 0 {
        return Ok(BigRational::one());
    }
    if x.is_zero() {
        return if e > 0 { Ok(BigRational::zero()) } else { Err(RingError::PoleAtPoint) };
    }
    let p = num::pow::pow(x.clone(), e.unsigned_abs() as usize);
    Ok(if e < 0 { p.recip() } else { p })
}

impl fmt::Display for LaurentPoly {
    /// Canonical text form: terms by ascending exponent, `c*v^e` with `v^0`
    /// elided and unit coefficients dropped, e.g. `1 - v^2 + 3*v^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *e == 0 {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "v^{}", e)?;
            } else {
                write!(f, "{}*v^{}", mag, e)?;
            }
        }
        Ok(())
    }
}

/// Dense polynomial helpers over `Q[v]`, used only inside `RatFunc`
/// normalization. Index = degree.
fn dense_trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn dense_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r: Vec<BigRational> = a.to_vec();
    dense_trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() >= b.len() && !r.is_empty() {
        let dr = r.len() - 1;
        let q = &r[dr] / &lead;
        for i in 0..=db {
            let idx = dr - db + i;
            let delta = &q * &b[i];
            r[idx] -= delta;
        }
        dense_trim(&mut r);
    }
    r
}

fn dense_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x: Vec<BigRational> = a.to_vec();
    let mut y: Vec<BigRational> = b.to_vec();
    dense_trim(&mut x);
    dense_trim(&mut y);
    while !y.is_empty() {
        let r = dense_rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

fn dense_div_exact(a: &[BigRational], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut r: Vec<BigRational> = a.to_vec();
    dense_trim(&mut r);
    if r.is_empty() {
        return Some(vec![]);
    }
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return None;
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() && !r.is_empty() {
        let dr = r.len() - 1;
        let c = &r[dr] / &lead;
        q[dr - db] = c.clone();
        for i in 0..=db {
            let idx = dr - db + i;
            let delta = &c * &b[i];
            r[idx] -= delta;
        }
        dense_trim(&mut r);
    }
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

fn poly_to_dense(p: &LaurentPoly) -> Vec<BigRational> {
    debug_assert!(p.min_exp().unwrap_or(0) >= 0);
    let deg = p.max_exp().unwrap_or(0);
    let mut out = vec![BigRational::zero(); (deg + 1) as usize];
    for (e, c) in p.iter() {
        out[*e as usize] = c.clone();
    }
    out
}

fn dense_to_poly(p: &[BigRational]) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (e, c) in p.iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&LaurentPoly::term(c.clone(), e as i64));
        }
    }
    out
}

/// An element of `Q(v)` in canonical form.
///
/// The denominator is a primitive integer polynomial in `v` with nonzero
/// constant term and positive leading coefficient; any power of `v` and all
/// rational content live in the numerator. `den = 1` exactly when the value is
/// a Laurent polynomial (with rational coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RatFunc { num: p, den: LaurentPoly::one() }
    }

    pub fn v_pow(e: i64) -> Self {
        Self::from_laurent(LaurentPoly::v_pow(e))
    }

    pub fn int(n: i64) -> Self {
        Self::from_laurent(LaurentPoly::int(n))
    }

    /// Build `num/den` from arbitrary Laurent data and normalize.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        // Pull out powers of v so both parts are plain polynomials with
        // nonzero constant term.
        let sn = num.min_exp().unwrap();
        let sd = den.min_exp().unwrap();
        let n0 = num.shift(-sn);
        let d0 = den.shift(-sd);
        let nd = poly_to_dense(&n0);
        let dd = poly_to_dense(&d0);
        let g = dense_gcd(&nd, &dd);
        let nq = dense_div_exact(&nd, &g).expect("gcd divides");
        let dq = dense_div_exact(&dd, &g).expect("gcd divides");
        let mut n1 = dense_to_poly(&nq);
        let mut d1 = dense_to_poly(&dq);
        // Scale so the denominator is integer, primitive, positive leading.
        let scale = den_normalizer(&d1);
        d1 = d1.scale(&scale);
        n1 = n1.scale(&scale);
        Ok(RatFunc { num: n1.shift(sn - sd), den: d1 })
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let d = self.den.mul(&other.den);
        Self::new(n, d).expect("nonzero denominator")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.num.mul(&other.num);
        let d = self.den.mul(&other.den);
        Self::new(n, d).expect("nonzero denominator")
    }

    pub fn div(&self, other: &Self) -> Result<Self, RingError> {
        if other.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn inv(&self) -> Result<Self, RingError> {
        Self::one().div(self)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Entrywise bar on numerator and denominator, then renormalize.
    pub fn bar(&self) -> Self {
        Self::new(self.num.bar(), self.den.bar()).expect("nonzero denominator")
    }

    /// Return the Laurent polynomial equal to this value, if the denominator
    /// divides exactly.
    pub fn to_laurent(&self) -> Result<LaurentPoly, RingError> {
        if self.den.is_one() {
            return Ok(self.num.clone());
        }
        if self.num.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let sn = self.num.min_exp().unwrap();
        let nd = poly_to_dense(&self.num.shift(-sn));
        let dd = poly_to_dense(&self.den);
        match dense_div_exact(&nd, &dd) {
            Some(q) => Ok(dense_to_poly(&q).shift(sn)),
            None => Err(RingError::NotLaurent),
        }
    }

    /// Exact evaluation at a rational point; error on a pole (including the
    /// `v = 0` pole of a genuinely Laurent numerator).
    pub fn eval(&self, x: &BigRational) -> Result<BigRational, RingError> {
        let d = self.den.eval(x)?;
        if d.is_zero() {
            return Err(RingError::PoleAtPoint);
        }
        Ok(self.num.eval(x)? / d)
    }
}

/// Multiplier making a `Q[v]` polynomial integer, primitive, with positive
/// leading coefficient.
fn den_normalizer(d: &LaurentPoly) -> BigRational {
    let mut lcm = BigInt::one();
    for (_, c) in d.iter() {
        lcm = num::integer::lcm(lcm, c.denom().clone());
    }
    let mut gcd = BigInt::zero();
    for (_, c) in d.iter() {
        let scaled = c * BigRational::from(lcm.clone());
        debug_assert!(scaled.is_integer());
        gcd = num::integer::gcd(gcd, scaled.to_integer());
    }
    let mut scale = BigRational::new(lcm, gcd);
    let lead = d.coeff(d.max_exp().unwrap());
    if (lead * &scale).is_negative() {
        scale = -scale;
    }
    scale
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
