//! Integral Laurent polynomials, the Kauffman-bracket Jones polynomial, and
//! Alexander polynomials read off knot Floer shapes.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::hfk::HfkShape;
use crate::khovanov::smooth;
use crate::pd::PlanarDiagram;

/// Largest diagram accepted by the 2^n state sum.
pub const MAX_BRACKET_CROSSINGS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    A,
    Q,
    T,
}

impl Var {
    fn symbol(self) -> &'static str {
        match self {
            Var::A => "A",
            Var::Q => "q",
            Var::T => "t",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("diagram has {0} crossings; the state sum is limited to {MAX_BRACKET_CROSSINGS}")]
    TooLarge(usize),
    #[error("exponent {exponent} of {var} is not divisible by {divisor}")]
    NonIntegralExponent { var: &'static str, exponent: i64, divisor: i64 },
}

/// `sum c_e v^e` with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    var: Var,
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero(var: Var) -> Self {
        LaurentPoly { var, coeffs: BTreeMap::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::monomial(var, 1, 0)
    }

    pub fn monomial(var: Var, coeff: i64, exp: i64) -> Self {
        let mut p = Self::zero(var);
        p.add_term(exp, coeff);
        p
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(var: Var, terms: I) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, *c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.var);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Sum of the coefficients.
    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// `p(v) -> p(v^k)` in another variable; `k` may be negative.
    pub fn substitute(&self, var: Var, k: i64) -> Self {
        Self::from_terms(var, self.terms().map(|(e, c)| (e * k, c)))
    }

    /// Inverse of [`substitute`](Self::substitute): every exponent must be divisible by `k`.
    pub fn contract(&self, var: Var, k: i64) -> Result<Self, PolyError> {
        let mut out = Self::zero(var);
        for (e, c) in self.terms() {
            if e % k != 0 {
                return Err(PolyError::NonIntegralExponent { var: self.var.symbol(), exponent: e, divisor: k });
            }
            out.add_term(e / k, c);
        }
        Ok(out)
    }

    /// `p(v^-1)`.
    pub fn invert(&self) -> Self {
        self.substitute(self.var, -1)
    }

    pub fn is_palindromic(&self) -> bool {
        self.terms().all(|(e, c)| self.coeff(-e) == c)
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending exponents, e.g. `-1*t^-1 + 3 + -1*t^1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let v = self.var.symbol();
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| if e == 0 { c.to_string() } else { format!("{c}*{v}^{e}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.var, rhs.var, "mixed variables");
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { var: self.var, coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.var, rhs.var, "mixed variables");
        let mut out = LaurentPoly::zero(self.var);
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// Kauffman bracket `<D>` in `A`, normalized so the round circle is 1.
pub fn kauffman_bracket(d: &PlanarDiagram) -> Result<LaurentPoly, PolyError> {
    let n = d.crossing_count();
    if n > MAX_BRACKET_CROSSINGS {
        return Err(PolyError::TooLarge(n));
    }
    // loop value -A^2 - A^-2, powers cached by circle count
    let loop_value = LaurentPoly::from_terms(Var::A, [(2, -1), (-2, -1)]);
    let mut loop_powers = vec![LaurentPoly::one(Var::A)];
    // state counts per (A-exponent, circles), summed at the end
    let mut tally: BTreeMap<(i64, usize), i64> = BTreeMap::new();
    for v in 0u64..(1u64 << n) {
        let ones = v.count_ones() as i64;
        let a_exp = (n as i64 - ones) - ones;
        let circles = smooth(d, v).n_circles();
        *tally.entry((a_exp, circles)).or_default() += 1;
    }
    let mut out = LaurentPoly::zero(Var::A);
    for ((a_exp, circles), count) in tally {
        while loop_powers.len() < circles {
            let next = loop_powers.last().unwrap() * &loop_value;
            loop_powers.push(next);
        }
        let term = &LaurentPoly::monomial(Var::A, count, a_exp) * &loop_powers[circles - 1];
        out = &out + &term;
    }
    Ok(out)
}

/// Jones polynomial in `t = A^-4`, normalized so the unknot is 1.
pub fn jones(d: &PlanarDiagram) -> Result<LaurentPoly, PolyError> {
    let bracket = kauffman_bracket(d)?;
    let w = d.writhe();
    // (-A)^(-3w) = (-1)^w A^(-3w)
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    let normalized = &LaurentPoly::monomial(Var::A, sign, -3 * w) * &bracket;
    normalized.contract(Var::T, -4)
}

/// Euler characteristic `sum (-1)^m t^a` of a knot Floer shape, with no
/// sign or unit normalization.
pub fn alexander_from_hfk(s: &HfkShape) -> LaurentPoly {
    LaurentPoly::from_terms(
        Var::T,
        s.classes().iter().map(|c| {
            let sign = if c.maslov.rem_euclid(2) == 0 { 1 } else { -1 };
            (c.alexander, sign * c.mult as i64)
        }),
    )
}

pub fn eval_at_one(p: &LaurentPoly) -> i64 {
    p.eval_at_one()
}
