//! Groebner bases (global orders, Buchberger) and standard bases (local and
//! mixed orders, Mora's tangent cone normal form), with optional cofactor
//! tracking.
//!
//! A tracked element `b` carries a representation `unit * b = sum cof_i * gen_i`
//! where `unit` has leading monomial 1 (a unit of the localization). For
//! global orders every unit is the constant 1.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::Polynomial;
use crate::ring::RingRef;
use crate::Rational;

/// Terms sorted strictly descending in a fixed order.
#[derive(Clone, Debug)]
pub(crate) struct OPoly {
    pub terms: Vec<(Monomial, Rational)>,
}

impl OPoly {
    pub fn from_poly(p: &Polynomial, order: &TermOrder) -> OPoly {
        OPoly {
            terms: p.terms_in(order),
        }
    }

    pub fn to_poly(&self, ring: &RingRef) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    pub fn ecart(&self) -> u64 {
        let d = self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        d - self.lm().degree()
    }

    /// `self - c * m * other`, merged in `order`.
    pub fn sub_scaled(&self, c: &Rational, m: &Monomial, other: &OPoly, order: &TermOrder) -> OPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(n, d)| (n.mul(m), d * c)).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => {
                    let (n, d) = b.next().unwrap();
                    out.push((n, -d));
                }
                Ordering::Equal => {
                    let (n, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = x - y;
                    if !s.is_zero() {
                        out.push((n.clone(), s));
                    }
                }
            }
        }
        OPoly { terms: out }
    }

    pub fn make_monic(&mut self) -> Rational {
        let inv = self.lc().recip();
        for t in &mut self.terms {
            t.1 = &t.1 * &inv;
        }
        inv
    }
}

/// `unit * element = sum cof_i * gen_i`.
#[derive(Clone, Debug)]
pub(crate) struct Rep {
    pub unit: Polynomial,
    pub cof: Vec<Polynomial>,
}

impl Rep {
    fn scale(&self, c: &Rational) -> Rep {
        Rep {
            unit: self.unit.clone(),
            cof: self.cof.iter().map(|p| p.scale(c)).collect(),
        }
    }
}

/// Combines `sum coeff_j * b_j` into one representation with unit
/// `prod unit_j`.
pub(crate) fn combine(parts: &[(Polynomial, &Rep)], ring: &RingRef, ngens: usize) -> Rep {
    let all_one = parts.iter().all(|(_, r)| r.unit.is_one());
    let mut cof = vec![Polynomial::zero(ring); ngens];
    if all_one {
        for (c, r) in parts {
            for (acc, x) in cof.iter_mut().zip(&r.cof) {
                *acc = &*acc + &(c * x);
            }
        }
        return Rep {
            unit: Polynomial::one(ring),
            cof,
        };
    }
    let mut unit = Polynomial::one(ring);
    for (_, r) in parts {
        unit = &unit * &r.unit;
    }
    for (j, (c, r)) in parts.iter().enumerate() {
        let mut others = c.clone();
        for (k, (_, s)) in parts.iter().enumerate() {
            if k != j {
                others = &others * &s.unit;
            }
        }
        for (acc, x) in cof.iter_mut().zip(&r.cof) {
            *acc = &*acc + &(&others * x);
        }
    }
    Rep { unit, cof }
}

#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub p: OPoly,
    pub rep: Option<Rep>,
}

/// Result of dividing by a list of elements: `unit * f = sum q_j b_j + rem`.
pub(crate) struct Division {
    pub unit: Polynomial,
    pub quotients: Vec<Polynomial>,
    pub rem: OPoly,
}

/// Full division for global orders (every term of the remainder is
/// irreducible).
pub(crate) fn divide_global(
    f: &OPoly,
    basis: &[Elem],
    order: &TermOrder,
    ring: &RingRef,
    track: bool,
) -> Division {
    let mut quotients = if track {
        vec![Polynomial::zero(ring); basis.len()]
    } else {
        Vec::new()
    };
    let mut h = f.clone();
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    while !h.is_zero() {
        let lm = h.lm().clone();
        match basis.iter().position(|b| b.p.lm().divides(&lm)) {
            Some(j) => {
                let b = &basis[j].p;
                let c = h.lc() / b.lc();
                let m = b.lm().quotient_of(&lm);
                if track {
                    quotients[j].add_term(m.clone(), c.clone());
                }
                h = h.sub_scaled(&c, &m, b, order);
            }
            None => {
                let t = h.terms.remove(0);
                rem.push(t);
            }
        }
    }
    Division {
        unit: Polynomial::one(ring),
        quotients,
        rem: OPoly { terms: rem },
    }
}

/// Mora's weak normal form. Works for every monomial order; the remainder's
/// leading monomial (if any) is not divisible by any basis lead.
pub(crate) fn divide_mora(
    f: &OPoly,
    basis: &[Elem],
    order: &TermOrder,
    ring: &RingRef,
    track: bool,
) -> Division {
    // Intermediate elements: (poly, ecart, u, q) with poly = u f - sum q_j b_j.
    struct Inter {
        p: OPoly,
        ecart: u64,
        u: Polynomial,
        q: Vec<Polynomial>,
    }
    let zero_q = || {
        if track {
            vec![Polynomial::zero(ring); basis.len()]
        } else {
            Vec::new()
        }
    };
    let basis_ecart: Vec<u64> = basis.iter().map(|b| b.p.ecart()).collect();
    let mut extra: Vec<Inter> = Vec::new();
    let mut h = f.clone();
    let mut u = Polynomial::one(ring);
    let mut q = zero_q();
    while !h.is_zero() {
        let lm = h.lm().clone();
        // Candidate with minimal ecart; basis elements first on ties.
        let mut best: Option<(bool, usize, u64)> = None;
        for (j, b) in basis.iter().enumerate() {
            if b.p.lm().divides(&lm) && best.is_none_or(|(_, _, e)| basis_ecart[j] < e) {
                best = Some((false, j, basis_ecart[j]));
            }
        }
        for (j, t) in extra.iter().enumerate() {
            if t.p.lm().divides(&lm) && best.is_none_or(|(_, _, e)| t.ecart < e) {
                best = Some((true, j, t.ecart));
            }
        }
        let Some((is_extra, j, e)) = best else { break };
        let he = h.ecart();
        if e > he {
            extra.push(Inter {
                p: h.clone(),
                ecart: he,
                u: u.clone(),
                q: q.clone(),
            });
        }
        let g = if is_extra { &extra[j].p } else { &basis[j].p };
        let c = h.lc() / g.lc();
        let m = g.lm().quotient_of(&lm);
        let next = h.sub_scaled(&c, &m, g, order);
        if track || is_extra {
            if is_extra {
                let t = &extra[j];
                u = &u - &t.u.mul_term(&m, &c);
                if track {
                    for (a, b) in q.iter_mut().zip(&t.q) {
                        *a = &*a - &b.mul_term(&m, &c);
                    }
                }
            } else {
                q[j].add_term(m, c);
            }
        }
        h = next;
    }
    Division {
        unit: u,
        quotients: q,
        rem: h,
    }
}

pub(crate) fn divide(
    f: &OPoly,
    basis: &[Elem],
    order: &TermOrder,
    ring: &RingRef,
    track: bool,
) -> Division {
    if order.is_global() {
        divide_global(f, basis, order, ring, track)
    } else {
        divide_mora(f, basis, order, ring, track)
    }
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn spoly(a: &OPoly, b: &OPoly, lcm: &Monomial, order: &TermOrder) -> (OPoly, Rational, Monomial, Rational, Monomial) {
    let ma = a.lm().quotient_of(lcm);
    let mb = b.lm().quotient_of(lcm);
    let ca = b.lc().clone();
    let cb = a.lc().clone();
    // ca*ma*a - cb*mb*b
    let zero = OPoly { terms: vec![] };
    let t = zero.sub_scaled(&(-&ca), &ma, a, order);
    let s = t.sub_scaled(&cb, &mb, b, order);
    (s, ca, ma, cb, mb)
}

/// Gebauer-Moeller update: installs the pairs of the new element `h` and
/// prunes redundant ones. The product criterion is used for global orders.
fn update(pairs: &mut Vec<Pair>, active: &mut Vec<usize>, elems: &[Elem], h: usize, global: bool) {
    let lh = elems[h].p.lm().clone();
    let mut c: Vec<Pair> = active
        .iter()
        .map(|&g| Pair {
            i: g,
            j: h,
            lcm: elems[g].p.lm().lcm(&lh),
        })
        .collect();
    let coprime = |p: &Pair| global && elems[p.i].p.lm().is_coprime(&lh);
    let mut d: Vec<Pair> = Vec::new();
    while let Some(p) = c.pop() {
        let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
        if coprime(&p) || !dominated {
            d.push(p);
        }
    }
    let e: Vec<Pair> = d.into_iter().filter(|p| !coprime(p)).collect();
    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && elems[p.i].p.lm().lcm(&lh) != p.lcm
            && elems[p.j].p.lm().lcm(&lh) != p.lcm)
    });
    pairs.extend(e);
    active.retain(|&g| !lh.divides(elems[g].p.lm()));
    active.push(h);
}

/// Computes a minimal (global: reduced) standard basis of `gens`.
pub(crate) fn standard_basis(
    gens: &[Polynomial],
    order: &TermOrder,
    ring: &RingRef,
    track: bool,
) -> Vec<Elem> {
    let global = order.is_global();
    let ngens = gens.len();
    let mut elems: Vec<Elem> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut active: Vec<usize> = Vec::new();

    // Sorting inputs by lead makes the result independent of input order for
    // global orders (reduced bases are unique) and deterministic otherwise.
    let mut idx: Vec<usize> = (0..ngens).filter(|&i| !gens[i].is_zero()).collect();
    let ops: Vec<OPoly> = gens.iter().map(|g| OPoly::from_poly(g, order)).collect();
    idx.sort_by(|&a, &b| {
        order
            .cmp(ops[a].lm(), ops[b].lm())
            .then_with(|| gens[a].to_canonical_string().cmp(&gens[b].to_canonical_string()))
    });

    let add = |elems: &mut Vec<Elem>, pairs: &mut Vec<Pair>, active: &mut Vec<usize>, e: Elem| {
        elems.push(e);
        let h = elems.len() - 1;
        update(pairs, active, elems, h, global);
    };

    for &i in &idx {
        let rep = track.then(|| {
            let mut cof = vec![Polynomial::zero(ring); ngens];
            cof[i] = Polynomial::one(ring);
            Rep {
                unit: Polynomial::one(ring),
                cof,
            }
        });
        let e = Elem {
            p: ops[i].clone(),
            rep,
        };
        // Reduce against what we have so far.
        let e = reduce_elem(e, &elems, order, ring, track, ngens);
        if let Some(e) = e {
            add(&mut elems, &mut pairs, &mut active, e);
        }
    }

    while !pairs.is_empty() {
        // Normal strategy: smallest lcm (by degree first for local orders).
        let k = (0..pairs.len())
            .min_by(|&a, &b| {
                let (la, lb) = (&pairs[a].lcm, &pairs[b].lcm);
                let o = if global {
                    order.cmp(la, lb)
                } else {
                    la.degree().cmp(&lb.degree()).then_with(|| order.cmp(la, lb))
                };
                o.then_with(|| (pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(k);
        let (s, ca, ma, cb, mb) = spoly(&elems[pair.i].p, &elems[pair.j].p, &pair.lcm, order);
        if s.is_zero() {
            continue;
        }
        let rep = if track {
            let a = Polynomial::term(ring, ma, ca);
            let b = -Polynomial::term(ring, mb, cb);
            Some(combine(
                &[
                    (a, elems[pair.i].rep.as_ref().unwrap()),
                    (b, elems[pair.j].rep.as_ref().unwrap()),
                ],
                ring,
                ngens,
            ))
        } else {
            None
        };
        if let Some(e) = reduce_elem(Elem { p: s, rep }, &elems, order, ring, track, ngens) {
            add(&mut elems, &mut pairs, &mut active, e);
        }
    }

    // Minimal basis from the active set.
    let mut basis: Vec<Elem> = Vec::new();
    let mut act = active.clone();
    act.sort_by(|&a, &b| order.cmp(elems[a].p.lm(), elems[b].p.lm()));
    for &a in &act {
        let lm = elems[a].p.lm();
        if basis.iter().any(|b| b.p.lm().divides(lm)) {
            continue;
        }
        basis.push(elems[a].clone());
    }
    if global {
        // Tail-reduce each element against the others.
        for i in 0..basis.len() {
            let others: Vec<Elem> = basis
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, e)| e.clone())
                .collect();
            let b = &basis[i];
            let lead = OPoly {
                terms: vec![b.p.terms[0].clone()],
            };
            let tail = OPoly {
                terms: b.p.terms[1..].to_vec(),
            };
            let div = divide_global(&tail, &others, order, ring, track);
            let mut terms = lead.terms;
            terms.extend(div.rem.terms);
            let rep = if track {
                let mut parts: Vec<(Polynomial, &Rep)> =
                    vec![(Polynomial::one(ring), b.rep.as_ref().unwrap())];
                for (q, o) in div.quotients.iter().zip(&others) {
                    if !q.is_zero() {
                        parts.push((-q, o.rep.as_ref().unwrap()));
                    }
                }
                Some(combine(&parts, ring, ngens))
            } else {
                None
            };
            basis[i] = Elem {
                p: OPoly { terms },
                rep,
            };
        }
    }
    for b in &mut basis {
        let inv = b.p.make_monic();
        if let Some(r) = &mut b.rep {
            *r = r.scale(&inv);
        }
    }
    basis.sort_by(|a, b| order.cmp(a.p.lm(), b.p.lm()));
    basis
}

fn reduce_elem(
    e: Elem,
    basis: &[Elem],
    order: &TermOrder,
    ring: &RingRef,
    track: bool,
    ngens: usize,
) -> Option<Elem> {
    let div = if order.is_global() {
        divide_global(&e.p, basis, order, ring, track)
    } else {
        divide_mora(&e.p, basis, order, ring, track)
    };
    if div.rem.is_zero() {
        return None;
    }
    let rep = if track {
        // rem = unit*e - sum q_j b_j, with e itself represented by e.rep.
        let mut parts: Vec<(Polynomial, &Rep)> = vec![(div.unit.clone(), e.rep.as_ref().unwrap())];
        for (q, b) in div.quotients.iter().zip(basis) {
            if !q.is_zero() {
                parts.push((-q, b.rep.as_ref().unwrap()));
            }
        }
        Some(combine(&parts, ring, ngens))
    } else {
        None
    };
    Some(Elem { p: div.rem, rep })
}

/// Leading-term monomials of a basis.
pub(crate) fn leads(basis: &[Elem]) -> Vec<Monomial> {
    basis.iter().map(|b| b.p.lm().clone()).collect()
}

/// True when `1` lies in the ideal.
pub(crate) fn contains_one(basis: &[Elem]) -> bool {
    basis.iter().any(|b| b.p.lm().is_one())
}
