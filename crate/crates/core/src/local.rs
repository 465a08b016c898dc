//! The base ring `A = (k[x]/J)` localized at the origin.
//!
//! Local statements are decided with the local order `ds` on the base
//! variables; colon ideals and eliminations are computed globally and then
//! compared locally.

use gnd_algebra::{Ideal, Polynomial, RingRef, TermOrder};
use num_traits::Zero;
use rand::Rng;

use crate::error::{GndError, Result};

/// Combination attempts before giving up on an active element.
pub const ACTIVE_SEARCH_CAP: usize = 1000;
/// Cap on the annihilator chain in [`compute_e`].
pub const E_CHAIN_CAP: usize = 50;

#[derive(Debug, Clone)]
pub struct LocalRingSpec {
    ring: RingRef,
    relations: Ideal,
    supplied_primes: Option<Vec<Ideal>>,
}

impl LocalRingSpec {
    /// Validates `J ⊆ (x)` and that the local ring has dimension one.
    pub fn new(
        ring: &RingRef,
        relations: Vec<Polynomial>,
        supplied_primes: Option<Vec<Vec<Polynomial>>>,
    ) -> Result<Self> {
        let relations = Ideal::new(ring, relations);
        for g in relations.gens() {
            if !g.constant_term().is_zero() {
                return Err(GndError::InvalidInput(format!(
                    "relation {g} does not vanish at the origin"
                )));
            }
        }
        let spec = LocalRingSpec {
            ring: ring.clone(),
            relations,
            supplied_primes: supplied_primes
                .map(|ps| ps.into_iter().map(|g| Ideal::new(ring, g)).collect()),
        };
        let dim = spec.dimension();
        if dim != 1 {
            return Err(GndError::InvalidInput(format!(
                "the local ring has dimension {dim}; only dimension 1 is supported"
            )));
        }
        Ok(spec)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn local_order(&self) -> TermOrder {
        TermOrder::neg_degrevlex(self.ring.nvars())
    }

    pub fn global_order(&self) -> TermOrder {
        TermOrder::degrevlex(self.ring.nvars())
    }

    pub fn dimension(&self) -> i64 {
        self.relations.krull_dim(&self.local_order())
    }

    /// Krull dimension of `A / K` for an ideal `K` given by generators in
    /// the base variables.
    pub fn quotient_dimension(&self, gens: &[Polynomial]) -> i64 {
        self.relations.with(gens).krull_dim(&self.local_order())
    }

    /// `p = 0` in `A`.
    pub fn is_zero(&self, p: &Polynomial) -> bool {
        self.relations.contains(p, &self.local_order())
    }

    /// `p` is nilpotent in `A`.
    pub fn radical_contains(&self, p: &Polynomial) -> bool {
        self.relations
            .saturation_contains(&Polynomial::one(&self.ring), p, &self.local_order())
    }

    pub fn has_supplied_primes(&self) -> bool {
        self.supplied_primes.is_some()
    }

    /// The minimal primes of `A`: supplied ones after validation, or the
    /// restricted decomposer's output.
    pub fn minimal_primes(&self) -> Result<Vec<Ideal>> {
        match &self.supplied_primes {
            Some(ps) => {
                self.validate_primes(ps)?;
                Ok(ps.clone())
            }
            None => minimal_primes(&self.relations),
        }
    }

    fn validate_primes(&self, primes: &[Ideal]) -> Result<()> {
        if primes.is_empty() {
            return Err(GndError::InvalidInput("empty list of minimal primes".into()));
        }
        let dp = self.global_order();
        for p in primes {
            if !p.contains_ideal(&self.relations, &dp) {
                return Err(GndError::InvalidInput(format!(
                    "supplied prime {p} does not contain the relations"
                )));
            }
            if !inside_maximal(p) {
                return Err(GndError::InvalidInput(format!(
                    "supplied prime {p} is not inside the maximal ideal"
                )));
            }
        }
        for (i, p) in primes.iter().enumerate() {
            for (j, q) in primes.iter().enumerate() {
                if i != j && p.contains_ideal(q, &dp) {
                    return Err(GndError::InvalidInput(format!(
                        "supplied primes {q} and {p} are comparable"
                    )));
                }
            }
        }
        let mut inter = primes[0].clone();
        for p in &primes[1..] {
            inter = inter.intersect(p);
        }
        for g in inter.canonical_gens() {
            if !self.radical_contains(&g) {
                return Err(GndError::InvalidInput(format!(
                    "intersection element {g} of the supplied primes is not nilpotent"
                )));
            }
        }
        Ok(())
    }
}

fn inside_maximal(p: &Ideal) -> bool {
    p.canonical_gens().iter().all(|g| g.constant_term().is_zero())
}

/// A prime certificate: the reduced lex basis has pairwise distinct leading
/// variables of degree one, so the quotient is a polynomial ring.
fn certified_prime(i: &Ideal) -> bool {
    let lex = TermOrder::lex(i.ring().nvars());
    let basis = i.basis(&lex);
    if basis.is_unit() {
        return false;
    }
    let mut seen = Vec::new();
    for m in basis.leads() {
        if m.degree() != 1 {
            return false;
        }
        let v = m.support().next().unwrap();
        if seen.contains(&v) {
            return false;
        }
        seen.push(v);
    }
    true
}

/// Minimal primes of `J` inside the maximal ideal at the origin, by splitting
/// `V(J) = V(J + x_i) ∪ V(J : x_i^∞)` on variable factors of generators.
pub fn minimal_primes(j: &Ideal) -> Result<Vec<Ideal>> {
    let mut found = Vec::new();
    split(j, 0, &mut found)?;
    let kept: Vec<Ideal> = found.into_iter().filter(inside_maximal).collect();
    let dp = TermOrder::degrevlex(j.ring().nvars());
    let mut out: Vec<Ideal> = Vec::new();
    for (i, p) in kept.iter().enumerate() {
        let redundant = kept.iter().enumerate().any(|(k, q)| {
            k != i && p.contains_ideal(q, &dp) && (!q.contains_ideal(p, &dp) || k < i)
        });
        if !redundant {
            out.push(Ideal::new(j.ring(), p.canonical_gens()));
        }
    }
    out.sort_by_key(|p| p.to_string());
    Ok(out)
}

fn split(j: &Ideal, depth: usize, out: &mut Vec<Ideal>) -> Result<()> {
    let dp = TermOrder::degrevlex(j.ring().nvars());
    if j.is_unit_ideal(&dp) {
        return Ok(());
    }
    if certified_prime(j) {
        out.push(j.clone());
        return Ok(());
    }
    if depth > 32 {
        return Err(GndError::DecompositionIncomplete(j.to_string()));
    }
    let gens = j.canonical_gens();
    for g in &gens {
        if g.num_terms() == 1 && g.total_degree() == Some(1) {
            continue;
        }
        let factor = (0..j.ring().nvars()).find(|&v| g.iter().all(|(m, _)| m.exponents()[v] > 0));
        if let Some(v) = factor {
            let x = Polynomial::var(j.ring(), v);
            split(&Ideal::new(j.ring(), gens.clone()).with(std::slice::from_ref(&x)), depth + 1, out)?;
            let (sat, _) = Ideal::new(j.ring(), gens.clone()).saturate(&x);
            return split(&sat, depth + 1, out);
        }
    }
    Err(GndError::DecompositionIncomplete(j.to_string()))
}

/// An element of the ideal generated by `target` lying in no prime of
/// `primes`. Tries `preferred` (when in the target), then the generators,
/// then seeded combinations with coefficients in `-3..=3`.
pub fn active_element<R: Rng>(
    target: &[Polynomial],
    primes: &[Ideal],
    preferred: &[Polynomial],
    rng: &mut R,
) -> Result<Polynomial> {
    let ring = primes
        .first()
        .map(|p| p.ring().clone())
        .or_else(|| target.first().map(|p| p.ring().clone()))
        .ok_or_else(|| GndError::ActiveElementNotFound("empty target".into()))?;
    let dp = TermOrder::degrevlex(ring.nvars());
    for p in primes {
        if target.iter().all(|g| p.contains(g, &dp)) {
            return Err(GndError::TargetInsidePrime(p.to_string()));
        }
    }
    let avoids = |c: &Polynomial| !c.is_zero() && primes.iter().all(|p| !p.contains(c, &dp));
    let target_ideal = Ideal::new(&ring, target.to_vec());
    for c in preferred {
        if target_ideal.contains(c, &dp) && avoids(c) {
            return Ok(c.clone());
        }
    }
    for c in target {
        if avoids(c) {
            return Ok(c.clone());
        }
    }
    for _ in 0..ACTIVE_SEARCH_CAP {
        let mut c = Polynomial::zero(&ring);
        for g in target {
            let k: i64 = rng.gen_range(-3..=3);
            c = &c + &g.scale(&gnd_algebra::poly::q(k, 1));
        }
        if avoids(&c) {
            return Ok(c);
        }
    }
    Err(GndError::ActiveElementNotFound(format!(
        "no combination of ({}) avoids every minimal prime",
        target.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
    )))
}

/// Exponent where the annihilator chain of `d` stabilizes, with floor 1.
/// Returns `(e, stabilization index)`.
pub fn compute_e(d: &Polynomial, a: &LocalRingSpec) -> Result<(usize, usize)> {
    let ds = a.local_order();
    let j = a.relations();
    let mut prev = j.clone();
    for k in 0..E_CHAIN_CAP {
        let next = j.quotient_poly(&d.pow(k as u32 + 1));
        if prev.contains_ideal(&next, &ds) {
            return Ok((k.max(1), k));
        }
        prev = next;
    }
    Err(GndError::InvalidInput(format!(
        "annihilator chain of {d} did not stabilize below {E_CHAIN_CAP}"
    )))
}

/// `(x)^n ⊆ J + (d^{2e+1})` in the local ring.
pub fn check_precision_bound(n: u32, d: &Polynomial, e: usize, a: &LocalRingSpec) -> bool {
    let k = a.relations().with(&[d.pow(2 * e as u32 + 1)]);
    let ds = a.local_order();
    let vars: Vec<usize> = (0..a.nvars()).collect();
    all_monomials(a.ring(), &vars, n)
        .iter()
        .all(|m| k.contains(m, &ds))
}

/// Every monomial of degree exactly `n` in `vars`.
pub fn all_monomials(ring: &RingRef, vars: &[usize], n: u32) -> Vec<Polynomial> {
    fn rec(
        ring: &RingRef,
        vars: &[usize],
        left: u32,
        exps: &mut Vec<u32>,
        out: &mut Vec<Polynomial>,
    ) {
        if vars.len() == 1 {
            exps[vars[0]] = left;
            out.push(Polynomial::term(
                ring,
                gnd_algebra::Monomial::from_exponents(exps.clone()),
                gnd_algebra::poly::q(1, 1),
            ));
            exps[vars[0]] = 0;
            return;
        }
        for k in (0..=left).rev() {
            exps[vars[0]] = k;
            rec(ring, &vars[1..], left - k, exps, out);
        }
        exps[vars[0]] = 0;
    }
    let mut out = Vec::new();
    if vars.is_empty() {
        if n == 0 {
            out.push(Polynomial::one(ring));
        }
        return out;
    }
    let mut exps = vec![0u32; ring.nvars()];
    rec(ring, vars, n, &mut exps, &mut out);
    out
}

/// An element `num / den` of a localization; `den` is a unit there.
#[derive(Debug, Clone, PartialEq)]
pub struct Frac {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl Frac {
    pub fn from_poly(p: Polynomial) -> Frac {
        let den = Polynomial::one(p.ring());
        Frac { num: p, den }
    }

    /// Absorbs a constant denominator into the numerator.
    pub fn normalized(self) -> Frac {
        if self.den.is_constant() && !self.den.is_one() {
            let c = self.den.constant_term();
            let ring = self.num.ring().clone();
            return Frac {
                num: self.num.scale(&c.recip()),
                den: Polynomial::one(&ring),
            };
        }
        self
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `num - den`, which lies in an ideal exactly when the fraction is
    /// congruent to 1 modulo it.
    pub fn minus_one_numerator(&self) -> Polynomial {
        &self.num - &self.den
    }
}

impl std::fmt::Display for Frac {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Exact division `p / divisor` in the localization of `R/(relations)`
/// described by `order`: returns `q/u` with `u p = q divisor + (relations)`.
pub fn divide_local(
    p: &Polynomial,
    divisor: &Polynomial,
    relations: &[Polynomial],
    order: &TermOrder,
) -> Option<Frac> {
    let ring = p.ring();
    if p.is_zero() {
        return Some(Frac::from_poly(Polynomial::zero(ring)));
    }
    let mut gens = vec![divisor.clone()];
    gens.extend(relations.iter().cloned());
    let ideal = Ideal::new(ring, gens);
    let w = ideal.lift(p, order).ok()?;
    // The zero divisor is dropped by Ideal::new; keep indices aligned.
    let q = if divisor.is_zero() {
        return None;
    } else {
        w.quotients[0].clone()
    };
    Some(
        Frac {
            num: q,
            den: w.unit,
        }
        .normalized(),
    )
}
