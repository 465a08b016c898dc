//! Ideals with cached bases and the operations built on them.
//!
//! Global orders compute in the polynomial ring; orders with a local block
//! compute in the localization at the origin of the local variables. Colon
//! ideals, intersections and eliminations commute with localization, so they
//! are always computed globally and compared under whatever order the caller
//! needs.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{AlgebraError, Result};
use crate::matrix::combinations;
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::Polynomial;
use crate::ring::{same_ring, RingRef};
use crate::sbasis::{self, Elem, OPoly};

/// A reduced (global) or minimal (local) standard basis.
#[derive(Debug)]
pub struct Basis {
    order: TermOrder,
    elems: Vec<Elem>,
    polys: Vec<Polynomial>,
    tracked: bool,
}

impl Basis {
    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn leads(&self) -> Vec<Monomial> {
        sbasis::leads(&self.elems)
    }

    pub fn is_unit(&self) -> bool {
        sbasis::contains_one(&self.elems)
    }
}

/// `unit * dividend = sum quotients_i * divisors_i + remainder`.
///
/// For global orders `unit` is 1; for local orders it is a unit of the
/// localization (constant term nonzero in the local variables).
#[derive(Debug, Clone)]
pub struct DivisionWitness {
    pub unit: Polynomial,
    pub quotients: Vec<Polynomial>,
    pub divisors: Vec<Polynomial>,
    pub remainder: Polynomial,
}

impl DivisionWitness {
    /// Re-expands the witness and compares with `dividend` exactly.
    pub fn verify(&self, dividend: &Polynomial) -> bool {
        let mut acc = self.remainder.clone();
        for (q, d) in self.quotients.iter().zip(&self.divisors) {
            acc = &acc + &(q * d);
        }
        acc == &self.unit * dividend
    }
}

/// Generators of a syzygy module of a tuple of polynomials.
#[derive(Debug, Clone)]
pub struct SyzygyModule {
    pub gens: Vec<Polynomial>,
    pub syzygies: Vec<Vec<Polynomial>>,
}

impl SyzygyModule {
    pub fn verify(&self) -> bool {
        self.syzygies.iter().all(|v| {
            let mut acc = Polynomial::zero(self.gens[0].ring());
            for (a, g) in v.iter().zip(&self.gens) {
                acc = &acc + &(a * g);
            }
            acc.is_zero()
        })
    }
}

/// An ideal given by generators, with bases cached per order.
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Polynomial>,
    cache: Mutex<HashMap<TermOrder, Arc<Basis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ideal({})", self)
    }
}

impl std::fmt::Display for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Polynomial>) -> Ideal {
        for g in &gens {
            assert!(same_ring(g.ring(), ring), "generator over a different ring");
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring: ring.clone(),
            gens,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn zero(ring: &RingRef) -> Ideal {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &RingRef) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)])
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    fn dp(&self) -> TermOrder {
        TermOrder::degrevlex(self.ring.nvars())
    }

    fn basis_impl(&self, order: &TermOrder, track: bool) -> Arc<Basis> {
        assert_eq!(order.nvars(), self.ring.nvars(), "order/ring size mismatch");
        if let Some(b) = self.cache.lock().unwrap().get(order) {
            if b.tracked || !track {
                return b.clone();
            }
        }
        let elems = sbasis::standard_basis(&self.gens, order, &self.ring, track);
        let polys = elems.iter().map(|e| e.p.to_poly(&self.ring)).collect();
        let b = Arc::new(Basis {
            order: order.clone(),
            elems,
            polys,
            tracked: track,
        });
        self.cache.lock().unwrap().insert(order.clone(), b.clone());
        b
    }

    /// Reduced Groebner basis (global orders) or minimal standard basis.
    pub fn basis(&self, order: &TermOrder) -> Arc<Basis> {
        self.basis_impl(order, false)
    }

    pub fn groebner(&self, order: &TermOrder) -> Vec<Polynomial> {
        self.basis(order).polys.clone()
    }

    /// Canonical generators: the reduced `degrevlex` basis.
    pub fn canonical_gens(&self) -> Vec<Polynomial> {
        self.groebner(&self.dp())
    }

    /// Normal form: full remainder for global orders, Mora weak normal form
    /// for local ones. Zero exactly when `p` is in the ideal (of the ring the
    /// order implies).
    pub fn normal_form(&self, p: &Polynomial, order: &TermOrder) -> Polynomial {
        let b = self.basis(order);
        let d = sbasis::divide(&OPoly::from_poly(p, order), &b.elems, order, &self.ring, false);
        d.rem.to_poly(&self.ring)
    }

    pub fn contains(&self, p: &Polynomial, order: &TermOrder) -> bool {
        if p.is_zero() {
            return true;
        }
        self.normal_form(p, order).is_zero()
    }

    /// Membership in the polynomial ring.
    pub fn contains_global(&self, p: &Polynomial) -> bool {
        self.contains(p, &self.dp())
    }

    pub fn is_unit_ideal(&self, order: &TermOrder) -> bool {
        self.basis(order).is_unit()
    }

    pub fn contains_ideal(&self, other: &Ideal, order: &TermOrder) -> bool {
        other.gens.iter().all(|g| self.contains(g, order))
    }

    pub fn equals(&self, other: &Ideal, order: &TermOrder) -> bool {
        self.contains_ideal(other, order) && other.contains_ideal(self, order)
    }

    /// Division of `p` by the cached basis with quotients.
    pub fn divide(&self, p: &Polynomial, order: &TermOrder) -> DivisionWitness {
        let b = self.basis(order);
        let d = sbasis::divide(&OPoly::from_poly(p, order), &b.elems, order, &self.ring, true);
        DivisionWitness {
            unit: d.unit,
            quotients: d.quotients,
            divisors: b.polys.clone(),
            remainder: d.rem.to_poly(&self.ring),
        }
    }

    /// Expresses `p` in terms of the generators:
    /// `unit * p = sum q_i * gen_i`. Errors with `NotInIdeal` otherwise.
    pub fn lift(&self, p: &Polynomial, order: &TermOrder) -> Result<DivisionWitness> {
        if p.is_zero() {
            return Ok(DivisionWitness {
                unit: Polynomial::one(&self.ring),
                quotients: vec![Polynomial::zero(&self.ring); self.gens.len()],
                divisors: self.gens.clone(),
                remainder: Polynomial::zero(&self.ring),
            });
        }
        let b = self.basis_impl(order, true);
        let d = sbasis::divide(&OPoly::from_poly(p, order), &b.elems, order, &self.ring, true);
        if !d.rem.is_zero() {
            return Err(AlgebraError::NotInIdeal {
                remainder: d.rem.to_poly(&self.ring).to_string(),
            });
        }
        let mut parts = Vec::new();
        for (q, e) in d.quotients.iter().zip(&b.elems) {
            if !q.is_zero() {
                parts.push((q.clone(), e.rep.as_ref().unwrap()));
            }
        }
        let (unit, cof) = if parts.is_empty() {
            (Polynomial::one(&self.ring), vec![Polynomial::zero(&self.ring); self.gens.len()])
        } else {
            let rep = sbasis::combine(&parts, &self.ring, self.gens.len());
            (rep.unit, rep.cof)
        };
        Ok(DivisionWitness {
            unit: &unit * &d.unit,
            quotients: cof,
            divisors: self.gens.clone(),
            remainder: Polynomial::zero(&self.ring),
        })
    }

    /// Checks that every cached basis element is a witnessed combination of
    /// the generators and that every generator reduces to zero.
    pub fn verify_basis(&self, order: &TermOrder) -> bool {
        let b = self.basis_impl(order, true);
        let witnessed = b.elems.iter().all(|e| {
            let rep = e.rep.as_ref().unwrap();
            let mut acc = Polynomial::zero(&self.ring);
            for (c, g) in rep.cof.iter().zip(&self.gens) {
                acc = &acc + &(c * g);
            }
            acc == &rep.unit * &e.p.to_poly(&self.ring)
        });
        witnessed && self.gens.iter().all(|g| self.contains(g, order))
    }

    /// Buchberger's criterion: every S-polynomial of basis elements reduces
    /// to zero.
    pub fn satisfies_buchberger_criterion(&self, order: &TermOrder) -> bool {
        let b = self.basis(order);
        for i in 0..b.elems.len() {
            for j in i + 1..b.elems.len() {
                let (a, c) = (&b.elems[i].p, &b.elems[j].p);
                let l = a.lm().lcm(c.lm());
                let s = OPoly { terms: vec![] }
                    .sub_scaled(&(-c.lc()), &a.lm().quotient_of(&l), a, order)
                    .sub_scaled(a.lc(), &c.lm().quotient_of(&l), c, order);
                let d = sbasis::divide(&s, &b.elems, order, &self.ring, false);
                if !d.rem.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn with(&self, extra: &[Polynomial]) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(extra.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        Ideal::new(&self.ring, g)
    }

    /// `I ∩ k[remaining variables]`, returned in the same ring.
    pub fn eliminate(&self, vars: &[usize]) -> Ideal {
        if vars.is_empty() {
            return Ideal::new(&self.ring, self.canonical_gens());
        }
        let order = TermOrder::elimination(self.ring.nvars(), vars);
        let g: Vec<Polynomial> = self
            .groebner(&order)
            .into_iter()
            .filter(|p| !p.uses_any(vars))
            .collect();
        Ideal::new(&self.ring, g)
    }

    /// Intersection via an auxiliary variable `t`: eliminate `t` from
    /// `t*I + (1-t)*J`.
    pub fn intersect(&self, other: &Ideal) -> Ideal {
        if self.is_zero() || other.is_zero() {
            return Ideal::zero(&self.ring);
        }
        let big = self.ring.with_aux("t");
        let t = Polynomial::var(&big, big.nvars() - 1);
        let one_minus_t = &Polynomial::one(&big) - &t;
        let mut g = Vec::new();
        for p in &self.gens {
            g.push(&t * &p.embed(&big).unwrap());
        }
        for p in &other.gens {
            g.push(&one_minus_t * &p.embed(&big).unwrap());
        }
        let e = Ideal::new(&big, g).eliminate(&[big.nvars() - 1]);
        Ideal::new(
            &self.ring,
            e.gens.iter().map(|p| p.embed(&self.ring).unwrap()).collect(),
        )
    }

    /// `(I : g)` computed as `(I ∩ (g)) / g`.
    pub fn quotient_poly(&self, g: &Polynomial) -> Ideal {
        if g.is_zero() {
            return Ideal::unit(&self.ring);
        }
        let inter = self.intersect(&Ideal::new(&self.ring, vec![g.clone()]));
        let gens = inter
            .gens
            .iter()
            .map(|h| h.div_exact(g).expect("intersection element divisible by g"))
            .collect();
        Ideal::new(&self.ring, gens)
    }

    /// `(I : J) = ∩_j (I : g_j)`.
    pub fn quotient(&self, other: &Ideal) -> Ideal {
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let q = self.quotient_poly(g);
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q),
            });
        }
        acc.unwrap_or_else(|| Ideal::unit(&self.ring))
    }

    /// `(I : g^∞)` and the first index where the chain `(I : g^k)` stabilizes.
    pub fn saturate(&self, g: &Polynomial) -> (Ideal, usize) {
        let dp = self.dp();
        let mut cur = Ideal::new(&self.ring, self.canonical_gens());
        let mut k = 0;
        loop {
            let next = cur.quotient_poly(g);
            if cur.contains_ideal(&next, &dp) {
                return (cur, k);
            }
            cur = Ideal::new(&self.ring, next.canonical_gens());
            k += 1;
        }
    }

    /// Membership of `p` in `(I : g^∞)` under `order` (local orders give the
    /// saturation in the localization), via an inverter variable.
    pub fn saturation_contains(&self, p: &Polynomial, g: &Polynomial, order: &TermOrder) -> bool {
        let big = self.ring.with_aux("w");
        let w = Polynomial::var(&big, big.nvars() - 1);
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|h| h.embed(&big).unwrap()).collect();
        gens.push(&(&w * &g.embed(&big).unwrap()) - &Polynomial::one(&big));
        let mut blocks = order.blocks().to_vec();
        blocks.insert(
            0,
            crate::order::OrderBlock {
                vars: vec![big.nvars() - 1],
                kind: crate::order::OrderKind::DegRevLex,
            },
        );
        let big_order = TermOrder::block(big.nvars(), blocks);
        Ideal::new(&big, gens).contains(&p.embed(&big).unwrap(), &big_order)
    }

    /// Rabinowitsch test: `p ∈ √I` iff `1 ∈ (I, 1 - t p)`.
    pub fn radical_contains(&self, p: &Polynomial) -> bool {
        self.saturation_contains(&Polynomial::one(&self.ring), p, &self.dp())
    }

    /// Krull dimension of `R/I` from the lead-term ideal under `order`
    /// (global: the polynomial ring, local: the localization). The unit ideal
    /// has dimension -1.
    pub fn krull_dim(&self, order: &TermOrder) -> i64 {
        let b = self.basis(order);
        if b.is_unit() {
            return -1;
        }
        let leads = b.leads();
        let n = self.ring.nvars();
        for size in (0..=n).rev() {
            for s in combinations(n, size) {
                let independent = leads.iter().all(|m| m.support().any(|v| !s.contains(&v)));
                if independent {
                    return size as i64;
                }
            }
        }
        0
    }

    /// Generators of the first syzygy module of `gens` (Schreyer).
    pub fn syzygies(gens: &[Polynomial]) -> SyzygyModule {
        assert!(!gens.is_empty());
        let ring = gens[0].ring().clone();
        let k = gens.len();
        let order = TermOrder::degrevlex(ring.nvars());
        let nonzero: Vec<Polynomial> = gens.to_vec();
        let elems = sbasis::standard_basis(&nonzero, &order, &ring, true);
        let mut syz: Vec<Vec<Polynomial>> = Vec::new();
        let conv = |coeffs: &[Polynomial]| -> Vec<Polynomial> {
            let mut out = vec![Polynomial::zero(&ring); k];
            for (c, e) in coeffs.iter().zip(&elems) {
                if c.is_zero() {
                    continue;
                }
                for (o, x) in out.iter_mut().zip(&e.rep.as_ref().unwrap().cof) {
                    *o = &*o + &(c * x);
                }
            }
            out
        };
        // S-pair syzygies among basis elements.
        for i in 0..elems.len() {
            for j in i + 1..elems.len() {
                let (a, b) = (&elems[i].p, &elems[j].p);
                let l = a.lm().lcm(b.lm());
                let ma = a.lm().quotient_of(&l);
                let mb = b.lm().quotient_of(&l);
                let s = OPoly { terms: vec![] }
                    .sub_scaled(&(-b.lc()), &ma, a, &order)
                    .sub_scaled(a.lc(), &mb, b, &order);
                let d = sbasis::divide_global(&s, &elems, &order, &ring, true);
                debug_assert!(d.rem.is_zero());
                let mut coeffs: Vec<Polynomial> = d.quotients.iter().map(|q| -q).collect();
                coeffs[i] = &coeffs[i] + &Polynomial::term(&ring, ma, b.lc().clone());
                coeffs[j] = &coeffs[j] - &Polynomial::term(&ring, mb, a.lc().clone());
                syz.push(conv(&coeffs));
            }
        }
        // Generators rewritten through the basis.
        for (i, g) in gens.iter().enumerate() {
            let d = sbasis::divide_global(&OPoly::from_poly(g, &order), &elems, &order, &ring, true);
            let mut v = conv(&d.quotients);
            for x in v.iter_mut() {
                *x = -&*x;
            }
            v[i] = &v[i] + &Polynomial::one(&ring);
            syz.push(v);
        }
        let mut out: Vec<Vec<Polynomial>> = Vec::new();
        for v in syz {
            if v.iter().all(|p| p.is_zero()) || out.contains(&v) {
                continue;
            }
            out.push(v);
        }
        SyzygyModule {
            gens: gens.to_vec(),
            syzygies: out,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_poly_list};
    use crate::ring::{BlockRole, Ring};

    fn ring(names: &[&str]) -> RingRef {
        Ring::with_names(names, BlockRole::Base)
    }

    fn p(r: &RingRef, s: &str) -> Polynomial {
        parse_poly(r, s).unwrap()
    }

    fn id(r: &RingRef, s: &str) -> Ideal {
        Ideal::new(r, parse_poly_list(r, s).unwrap())
    }

    #[test]
    fn principal_basis_and_normal_forms() {
        let r = ring(&["x1", "x2"]);
        let dp = TermOrder::degrevlex(2);
        let i = id(&r, "x1*x2");
        assert_eq!(i.groebner(&dp), vec![p(&r, "x1*x2")]);
        assert!(i.normal_form(&p(&r, "x1*x2*(x1^3 - 7*x2 + 2)"), &dp).is_zero());
        assert_eq!(id(&r, "x1").normal_form(&p(&r, "x1 + x2"), &dp), p(&r, "x2"));
    }

    #[test]
    fn basis_is_independent_of_generator_order() {
        let r = ring(&["x", "y", "z"]);
        let dp = TermOrder::degrevlex(3);
        let a = id(&r, "x^2 - y, x*y - z, y^2 - x*z");
        let b = id(&r, "y^2 - x*z, x^2 - y, 3*x*y - 3*z");
        assert_eq!(a.groebner(&dp), b.groebner(&dp));
        assert!(a.satisfies_buchberger_criterion(&dp));
        assert!(a.verify_basis(&dp));
    }

    #[test]
    fn block_order_basis_witnesses_membership() {
        let r = ring(&["Y1", "Y2", "x1", "x2"]);
        let order = TermOrder::elimination(4, &[0, 1]);
        let i = id(&r, "x2*Y1 - x1*Y2, x1*x2");
        assert!(i.satisfies_buchberger_criterion(&order));
        let w = i.lift(&p(&r, "x2^2*Y1 - x1*x2*Y2 + x1*x2*Y1"), &order).unwrap();
        assert!(w.verify(&p(&r, "x2^2*Y1 - x1*x2*Y2 + x1*x2*Y1")));
        assert!(i.lift(&p(&r, "x2*Y1"), &order).is_err());
    }

    #[test]
    fn local_order_sees_units() {
        let r = ring(&["x"]);
        let ds = TermOrder::neg_degrevlex(1);
        let dp = TermOrder::degrevlex(1);
        let i = id(&r, "x - x^2");
        assert!(i.contains(&p(&r, "x"), &ds));
        assert!(!i.contains(&p(&r, "x"), &dp));
        let w = i.divide(&p(&r, "x"), &ds);
        assert!(w.remainder.is_zero());
        assert!(w.verify(&p(&r, "x")));
        assert!(!num_traits::Zero::is_zero(&w.unit.constant_term()));
    }

    #[test]
    fn mixed_order_basis_for_smoothing_generators() {
        let r = ring(&["Y1", "Y2", "T1", "T2", "x"]);
        let order = TermOrder::mixed(5, &[0, 1, 2, 3]);
        let i = id(&r, "Y1*Y2 - x^2, Y1 - x - x*T1 + x^2*T2, Y2 - x - x^2*T2");
        assert!(i.verify_basis(&order));
        assert!(i.satisfies_buchberger_criterion(&order));
        assert!(!i.is_unit_ideal(&order));
    }

    #[test]
    fn example_with_cusp_relations() {
        let r = ring(&["x1", "x2", "x3", "Y1", "Y2", "Y3"]);
        let dp = TermOrder::degrevlex(6);
        let rel = "x1^2 - x2*x3, x3^2 - x1*x2";
        let f1 = "x3^2*Y1^2 + x2^2*Y2^2 + x1^2*Y3^2 - x3^2 - x2^2 - x1^2";
        let alpha = p(&r, "x1*Y1^2 + x2*Y2^2 + x3*Y3^2 - x1 - x2 - x3");
        let i = id(&r, &format!("{rel}, {f1}, x1*({}), x3*({})", alpha, alpha));
        let gamma = p(&r, "x1 + x2 + x3");
        assert!(i.contains(&(&gamma * &alpha), &dp));
        let f1_ideal = id(&r, &format!("{rel}, {f1}"));
        let x2 = p(&r, "x2");
        for g in &i.gens()[2..] {
            assert!(f1_ideal.contains(&(&x2 * g), &dp));
        }
        let fit = id(&r, &format!("{rel}, x1*Y1, x2*Y2, x3*Y3")).with(&i.gens()[2..]);
        assert!(fit.saturation_contains(&Polynomial::one(&r), &gamma, &dp));
        assert!(!fit.contains(&Polynomial::one(&r), &dp));
    }

    #[test]
    fn monomial_colon_and_saturation() {
        let r = ring(&["x1", "x2"]);
        let dp = TermOrder::degrevlex(2);
        let q = id(&r, "x1*x2").quotient(&id(&r, "x1"));
        assert!(q.equals(&id(&r, "x2"), &dp));
        let (s, k) = id(&r, "x1^2*x2").saturate(&p(&r, "x1"));
        assert!(s.equals(&id(&r, "x2"), &dp));
        assert_eq!(k, 2);
        let (s, k) = id(&r, "x1*x2").saturate(&p(&r, "x1 + x2"));
        assert!(s.equals(&id(&r, "x1*x2"), &dp));
        assert_eq!(k, 0);
    }

    #[test]
    fn elimination_examples() {
        let r = ring(&["Y1", "Y2", "x1", "x2"]);
        let e = id(&r, "Y1 - x1").eliminate(&[0, 1]);
        assert!(e.gens().is_empty());
        let e = id(&r, "x2*Y1, x1*Y2, x1*x2, (x1 + x2)*Y1*Y2*(x1+x2) - (x1 + x2)^2")
            .eliminate(&[0, 1]);
        assert!(e.gens().iter().all(|g| !g.uses_any(&[0, 1])));
    }

    #[test]
    fn intersection_of_monomial_ideals() {
        let r = ring(&["x", "y"]);
        let dp = TermOrder::degrevlex(2);
        let i = id(&r, "x^2, y").intersect(&id(&r, "x*y, y^3, x^3"));
        assert!(i.equals(&id(&r, "x^3, x*y, y^3"), &dp));
    }

    #[test]
    fn radical_membership_examples() {
        let r = ring(&["x1", "x2", "x3"]);
        assert!(id(&r, "x1^2").radical_contains(&p(&r, "x1")));
        assert!(!id(&r, "x1^2 - x2*x3").radical_contains(&p(&r, "x1 + x2 + x3")));
    }

    #[test]
    fn syzygies_of_two_monomials() {
        let r = ring(&["x", "y"]);
        let m = Ideal::syzygies(&[p(&r, "x*y"), p(&r, "x^2"), p(&r, "y^2")]);
        assert!(m.verify());
        assert!(!m.syzygies.is_empty());
    }

    #[test]
    fn krull_dimensions() {
        let r = ring(&["x1", "x2"]);
        assert_eq!(id(&r, "x1*x2").krull_dim(&TermOrder::degrevlex(2)), 1);
        assert_eq!(id(&r, "x1, x2").krull_dim(&TermOrder::degrevlex(2)), 0);
        assert_eq!(id(&r, "x1 - 1").krull_dim(&TermOrder::neg_degrevlex(2)), -1);
        assert_eq!(Ideal::zero(&r).krull_dim(&TermOrder::degrevlex(2)), 2);
    }
}
