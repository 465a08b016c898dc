//! Sparse polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::ring::{same_ring, RingRef};
use crate::Rational;

/// A polynomial over a [`crate::Ring`].
///
/// Terms are kept in a map keyed by exponent vector, so there are never zero
/// coefficients or duplicate monomials. Orders are supplied per call; see
/// [`Polynomial::terms_in`] and [`Polynomial::lead`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: RingRef,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: Rational) -> Self {
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }

    pub fn from_int(ring: &RingRef, c: i64) -> Self {
        Polynomial::constant(ring, Rational::from_integer(BigInt::from(c)))
    }

    pub fn one(ring: &RingRef) -> Self {
        Polynomial::from_int(ring, 1)
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        Polynomial::term(ring, Monomial::var(ring.nvars(), i), Rational::one())
    }

    pub fn var_named(ring: &RingRef, name: &str) -> Result<Self> {
        Ok(Polynomial::var(ring, ring.var_index(name)?))
    }

    pub fn term(ring: &RingRef, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(ring: &RingRef, it: I) -> Self {
        let mut p = Polynomial::zero(ring);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.ring.nvars()))
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in exponent-vector order (not a monomial order).
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms sorted descending in `order`.
    pub fn terms_in(&self, order: &TermOrder) -> Vec<(Monomial, Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    /// Leading monomial and coefficient in `order`.
    pub fn lead(&self, order: &TermOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(
            same_ring(&self.ring, &other.ring),
            "polynomials over different rings: {} vs {}",
            self.ring,
            other.ring
        );
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Power with a signed exponent; negative exponents are rejected.
    pub fn pow_checked(&self, k: i64) -> Result<Polynomial> {
        if k < 0 {
            return Err(AlgebraError::NegativeExponent(k));
        }
        let k = u32::try_from(k).map_err(|_| AlgebraError::NegativeExponent(k))?;
        Ok(self.pow(k))
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, vars: &[usize]) -> Option<u64> {
        self.terms.keys().map(|m| m.degree_in(vars)).max()
    }

    /// Smallest total degree in `vars` over all terms (the order of vanishing).
    pub fn order_in(&self, vars: &[usize]) -> Option<u64> {
        self.terms.keys().map(|m| m.degree_in(vars)).min()
    }

    /// Drops every term whose degree in `vars` is at least `n`.
    pub fn truncate(&self, vars: &[usize], n: u64) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_in(vars) < n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exponents()[i] > 0)
    }

    pub fn uses_any(&self, vars: &[usize]) -> bool {
        vars.iter().any(|&i| self.uses_var(i))
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut p = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e > 0 {
                let mut n = m.clone();
                n.exponents_mut()[i] -= 1;
                p.add_term(n, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        p
    }

    /// Replaces variable `i` by `image[i]` for every `i` with `Some` image;
    /// other variables are mapped to themselves. Images live in `target`.
    pub fn substitute(&self, target: &RingRef, image: &[Option<Polynomial>]) -> Polynomial {
        assert_eq!(image.len(), self.ring.nvars());
        for im in image.iter().flatten() {
            assert!(same_ring(im.ring(), target));
        }
        // Identity images need the variable to exist in the target ring.
        let ident: Vec<Option<usize>> = (0..self.ring.nvars())
            .map(|i| {
                if image[i].is_some() {
                    None
                } else {
                    target.index_of(self.ring.name(i))
                }
            })
            .collect();
        let mut cache: Vec<Vec<Polynomial>> = vec![Vec::new(); self.ring.nvars()];
        let mut result = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut mono = vec![0u32; target.nvars()];
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &image[i] {
                    Some(im) => {
                        let powers = &mut cache[i];
                        if powers.is_empty() {
                            powers.push(Polynomial::one(target));
                        }
                        while powers.len() <= e as usize {
                            let next = powers.last().unwrap() * im;
                            powers.push(next);
                        }
                        t = &t * &powers[e as usize];
                    }
                    None => {
                        let j = ident[i].unwrap_or_else(|| {
                            panic!("variable `{}` missing from target ring", self.ring.name(i))
                        });
                        mono[j] += e;
                    }
                }
            }
            result = &result + &t.mul_term(&Monomial::from_exponents(mono), &Rational::one());
        }
        result
    }

    /// Same polynomial viewed in another ring, matching variables by name.
    pub fn embed(&self, target: &RingRef) -> Result<Polynomial> {
        if same_ring(&self.ring, target) {
            return Ok(Polynomial {
                ring: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let map: Vec<Option<usize>> = (0..self.ring.nvars())
            .map(|i| target.index_of(self.ring.name(i)))
            .collect();
        let mut p = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for (i, &k) in m.exponents().iter().enumerate() {
                if k > 0 {
                    let j = map[i].ok_or_else(|| {
                        AlgebraError::UnknownVariable(self.ring.name(i).to_string())
                    })?;
                    e[j] = k;
                }
            }
            p.add_term(Monomial::from_exponents(e), c.clone());
        }
        Ok(p)
    }

    /// Divides by the leading coefficient in `order`.
    pub fn monic(&self, order: &TermOrder) -> Polynomial {
        match self.lead(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        if d.is_zero() {
            return None;
        }
        let order = TermOrder::degrevlex(self.ring.nvars());
        let (dm, dc) = d.lead(&order).map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ring);
        while let Some((m, c)) = rem.lead(&order).map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&m) {
                return None;
            }
            let qm = dm.quotient_of(&m);
            let qc = c / &dc;
            rem = &rem - &d.mul_term(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Evaluates all variables at rational values.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Canonical text, terms descending in global `degrevlex`.
    pub fn to_canonical_string(&self) -> String {
        let order = TermOrder::degrevlex(self.ring.nvars());
        self.display_in(&order)
    }

    pub fn display_in(&self, order: &TermOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms_in(order).iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.fmt_monomial(m);
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&a.to_string());
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    fn fmt_monomial(&self, m: &Monomial) -> String {
        m.exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.ring.name(i).to_string()
                } else {
                    format!("{}^{}", self.ring.name(i), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.to_canonical_string())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut p = big.clone();
        for (m, c) in &small.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), -c);
        }
        p
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut p = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                p.add_term(m.mul(n), c * d);
            }
        }
        p
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Rational from an `i64` pair.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{BlockRole, Ring};

    fn ring() -> RingRef {
        Ring::with_names(&["x1", "x2"], BlockRole::Base)
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let x1 = Polynomial::var(&r, 0);
        let x2 = Polynomial::var(&r, 1);
        let p = (&x1 + &x2) * (&x1 - &x2);
        assert_eq!(p.to_string(), "x1^2 - x2^2");
        assert_eq!((&x1 + &x2).pow(2).to_string(), "x1^2 + 2*x1*x2 + x2^2");
    }

    #[test]
    fn negative_power_is_rejected() {
        let r = ring();
        assert_eq!(
            Polynomial::var(&r, 0).pow_checked(-1),
            Err(AlgebraError::NegativeExponent(-1))
        );
    }

    #[test]
    fn identity_substitution() {
        let r = ring();
        let p = crate::parse::parse_poly(&r, "3*x1^2*x2 - 1/2*x2 + 7").unwrap();
        let img = vec![None, None];
        assert_eq!(p.substitute(&r, &img), p);
    }

    #[test]
    fn rational_printing() {
        let r = ring();
        let p = crate::parse::parse_poly(&r, "-3/4*x1 + 2/6").unwrap();
        assert_eq!(p.to_string(), "-3/4*x1 + 1/3");
    }
}
