// Copyright 2026 The votelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Exact numbers: small rationals for hot-path scores, and quadratic
//! irrationals `a + b·√d` for quotas and piecewise-quadratic scores.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Rational with machine-word components, used for rule scores.
pub type Rational = Ratio<i64>;

/// Number of the form `rat + coef·√radicand`.
///
/// Canonical form: when `coef != 0` the radicand is square-free and at
/// least 2; when `coef == 0` the radicand is stored as 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadNum {
    rat: BigRational,
    coef: BigRational,
    radicand: u64,
}

fn big(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn rat_to_big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Splits `n = f² · d` with `d` square-free.
fn square_free_split(mut n: u64) -> (u64, u64) {
    let mut factor = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let pp = p * p;
        while n.is_multiple_of(pp) {
            n /= pp;
            factor *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (factor, n)
}

fn sign_of(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of `a + b·√d` with `d` not a perfect square (or `b == 0`).
fn sign_single(a: &BigRational, b: &BigRational, d: u64) -> i8 {
    let sa = sign_of(a);
    let sb = sign_of(b);
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    let lhs = a * a;
    let rhs = b * b * big(d as i64);
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

impl QuadNum {
    pub fn new(rat: BigRational, coef: BigRational, radicand: u64) -> Self {
        if coef.is_zero() || radicand == 0 {
            return QuadNum { rat, coef: BigRational::zero(), radicand: 1 };
        }
        let (f, d) = square_free_split(radicand);
        let coef = coef * big(f as i64);
        if d == 1 {
            QuadNum { rat: rat + coef, coef: BigRational::zero(), radicand: 1 }
        } else {
            QuadNum { rat, coef, radicand: d }
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        QuadNum::from(Rational::new(num, den))
    }

    pub fn integer(v: i64) -> Self {
        QuadNum::from(Rational::from_integer(v))
    }

    /// `(p + r·√d) / s`.
    pub fn surd(p: i64, r: i64, d: u64, s: i64) -> Self {
        assert!(s != 0, "zero denominator");
        let s = big(s);
        QuadNum::new(big(p) / &s, big(r) / &s, d)
    }

    /// The root `(-b + √(b² − 4ac)) / (2a)` of `a·x² + b·x + c`, or `-c/b`
    /// when `a == 0`. Returns `None` for a negative discriminant or a
    /// degenerate equation.
    pub fn upper_branch_root(a: i128, b: i128, c: i128) -> Option<Self> {
        if a == 0 {
            if b == 0 {
                return None;
            }
            let v = BigRational::new(BigInt::from(-c), BigInt::from(b));
            return Some(QuadNum::new(v, BigRational::zero(), 1));
        }
        let disc = b.checked_mul(b)?.checked_sub(a.checked_mul(c)?.checked_mul(4)?)?;
        if disc < 0 {
            return None;
        }
        let disc = u64::try_from(disc).ok()?;
        let two_a = BigInt::from(2 * a);
        Some(QuadNum::new(
            BigRational::new(BigInt::from(-b), two_a.clone()),
            BigRational::new(BigInt::one(), two_a),
            disc,
        ))
    }

    pub fn is_rational(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.rat.clone())
    }

    pub fn signum(&self) -> i8 {
        sign_single(&self.rat, &self.coef, self.radicand)
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.coef.is_zero()
    }

    pub fn mul_rational(&self, factor: &BigRational) -> Self {
        QuadNum::new(&self.rat * factor, &self.coef * factor, self.radicand)
    }

    pub fn mul_int(&self, factor: i64) -> Self {
        self.mul_rational(&big(factor))
    }

    pub fn add_rational(&self, term: &BigRational) -> Self {
        QuadNum { rat: &self.rat + term, coef: self.coef.clone(), radicand: self.radicand }
    }

    /// `self + other` when both share a radicand (or one is rational).
    pub fn checked_add(&self, other: &QuadNum) -> Option<Self> {
        if other.is_rational() {
            return Some(self.add_rational(&other.rat));
        }
        if self.is_rational() {
            return Some(other.add_rational(&self.rat));
        }
        (self.radicand == other.radicand)
            .then(|| QuadNum::new(&self.rat + &other.rat, &self.coef + &other.coef, self.radicand))
    }

    pub fn neg(&self) -> Self {
        QuadNum { rat: -&self.rat, coef: -&self.coef, radicand: self.radicand }
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.rat.to_f64().unwrap_or(f64::NAN);
        if self.coef.is_zero() {
            return r;
        }
        r + self.coef.to_f64().unwrap_or(f64::NAN) * (self.radicand as f64).sqrt()
    }

    /// `floor(self)`.
    pub fn floor(&self) -> BigInt {
        let guess = BigInt::from(self.to_f64().floor() as i64);
        let mut k = guess;
        while QuadNum::new(BigRational::from_integer(k.clone()), BigRational::zero(), 1) > *self {
            k -= 1;
        }
        while QuadNum::new(BigRational::from_integer(&k + 1), BigRational::zero(), 1) <= *self {
            k += 1;
        }
        k
    }

    /// Decimal rendering with `places` digits, rounding halves away from zero.
    pub fn to_decimal(&self, places: u32) -> String {
        let scale = BigInt::from(10u64.pow(places));
        let scaled = self.mul_rational(&BigRational::from_integer(scale.clone()));
        let negative = scaled.signum() < 0;
        let magnitude = if negative { scaled.neg() } else { scaled };
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let rounded = magnitude.add_rational(&half).floor();
        let (int_part, frac_part) = rounded.div_rem(&scale);
        let sign = if negative && !rounded.is_zero() { "-" } else { "" };
        if places == 0 {
            return format!("{sign}{int_part}");
        }
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = places as usize)
    }

    /// Components `(p, r, d, s)` with `self = (p + r·√d) / s`, `s > 0` and
    /// `gcd(p, r, s) = 1`.
    pub fn components(&self) -> (BigInt, BigInt, u64, BigInt) {
        let s = self.rat.denom().lcm(self.coef.denom());
        let p = self.rat.numer() * (&s / self.rat.denom());
        let r = self.coef.numer() * (&s / self.coef.denom());
        let g = p.gcd(&r).gcd(&s);
        (p / &g, r / &g, self.radicand, s / &g)
    }
}

impl From<Rational> for QuadNum {
    fn from(r: Rational) -> Self {
        QuadNum::new(rat_to_big(&r), BigRational::zero(), 1)
    }
}

impl From<BigRational> for QuadNum {
    fn from(r: BigRational) -> Self {
        QuadNum::new(r, BigRational::zero(), 1)
    }
}

impl From<i64> for QuadNum {
    fn from(v: i64) -> Self {
        QuadNum::integer(v)
    }
}

impl Ord for QuadNum {
    fn cmp(&self, other: &Self) -> Ordering {
        let sign = if self.radicand == other.radicand || self.is_rational() || other.is_rational() {
            let diff = self.checked_add(&other.neg()).expect("shared radicand");
            diff.signum()
        } else {
            // u = (a1 - a2) + b1·√d1, v = -b2·√d2; sign(u + v).
            let alpha = &self.rat - &other.rat;
            let su = sign_single(&alpha, &self.coef, self.radicand);
            let sv = -sign_of(&other.coef);
            if su == 0 || su == sv {
                sv
            } else if sv == 0 {
                su
            } else {
                // Compare |u| and |v| through u² − v².
                let d1 = big(self.radicand as i64);
                let d2 = big(other.radicand as i64);
                let rat = &alpha * &alpha + &self.coef * &self.coef * &d1 - &other.coef * &other.coef * &d2;
                let coef = big(2) * &alpha * &self.coef;
                match sign_single(&rat, &coef, self.radicand) {
                    1 => su,
                    -1 => sv,
                    _ => 0,
                }
            }
        };
        sign.cmp(&0)
    }
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, r, d, s) = self.components();
        if r.is_zero() {
            return if s.is_one() { write!(f, "{p}") } else { write!(f, "{p}/{s}") };
        }
        let root = if r.is_one() {
            format!("sqrt({d})")
        } else if r == -BigInt::one() {
            format!("-sqrt({d})")
        } else {
            format!("{r}*sqrt({d})")
        };
        let body = if p.is_zero() {
            root
        } else if root.starts_with('-') {
            format!("{p}{root}")
        } else {
            format!("{p}+{root}")
        };
        if s.is_one() {
            write!(f, "({body})")
        } else {
            write!(f, "({body})/{s}")
        }
    }
}

fn parse_int(s: &str, whole: &str) -> Result<i64, Error> {
    s.trim().parse::<i64>().map_err(|_| Error::InvalidNumber(whole.to_string()))
}

/// Parses `p`, `p/s`, or `(p+r*sqrt(d))/s` (the forms produced by `Display`).
impl FromStr for QuadNum {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if !t.contains("sqrt") {
            return parse_rational(&t).map(QuadNum::from);
        }
        let bad = || Error::InvalidNumber(text.to_string());
        let (body, den) = match t.rfind(")/") {
            Some(i) if t.starts_with('(') => (&t[1..i], parse_int(&t[i + 2..], text)?),
            _ if t.starts_with('(') && t.ends_with(')') => (&t[1..t.len() - 1], 1),
            _ => (t.as_str(), 1),
        };
        let sqrt_at = body.find("sqrt(").ok_or_else(bad)?;
        let close = body[sqrt_at..].find(')').ok_or_else(bad)? + sqrt_at;
        let radicand: u64 = body[sqrt_at + 5..close].parse().map_err(|_| bad())?;
        let head = &body[..sqrt_at];
        // Split `head` into the rational term and the coefficient of the root.
        let split = head.char_indices().rev().find(|&(i, c)| (c == '+' || c == '-') && i > 0).map(|(i, _)| i);
        let (p_str, r_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let r_str = r_str.trim_end_matches('*');
        let r = match r_str {
            "" | "+" => 1,
            "-" => -1,
            other => parse_int(other, text)?,
        };
        let p = if p_str.is_empty() { 0 } else { parse_int(p_str, text)? };
        if den == 0 || !body[close + 1..].is_empty() {
            return Err(bad());
        }
        Ok(QuadNum::surd(p, r, radicand, den))
    }
}

/// Parses `p` or `p/s` into a reduced rational; rejects zero denominators.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let t = text.trim();
    let bad = || Error::InvalidNumber(text.to_string());
    match t.split_once('/') {
        Some((p, s)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let s: i64 = s.trim().parse().map_err(|_| bad())?;
            if s == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, s))
        }
        None => Ok(Rational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Renders a rational as `p/s`, or `p` when integral.
pub fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
