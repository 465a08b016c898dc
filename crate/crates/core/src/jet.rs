//! Truncated power series modulo the base relations.
//!
//! A jet of precision `N` is a class in `k[U, x] / (J, J̄, (x)^N)`, stored as
//! its normal form under `degrevlex`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use gnd_algebra::{Ideal, Monomial, Polynomial, Rational, RingRef, TermOrder};
use num_traits::{One, Zero};

use crate::error::{GndError, Result};
use crate::local::all_monomials;

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub rep: Polynomial,
    pub prec: u32,
}

impl std::fmt::Display for Jet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} + O({})", self.rep, self.prec)
    }
}

pub struct JetContext {
    ring: RingRef,
    base: Vec<usize>,
    relations: Vec<Polynomial>,
    cache: Mutex<HashMap<u32, Arc<Ideal>>>,
}

impl JetContext {
    /// `base` are the indices of the variables `x` that carry the precision;
    /// `relations` are `J` and `J̄` in `ring`.
    pub fn new(ring: &RingRef, base: Vec<usize>, relations: Vec<Polynomial>) -> Self {
        JetContext {
            ring: ring.clone(),
            base,
            relations,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    fn ideal(&self, prec: u32) -> Arc<Ideal> {
        if let Some(i) = self.cache.lock().unwrap().get(&prec) {
            return i.clone();
        }
        let mut gens = self.relations.clone();
        gens.extend(all_monomials(&self.ring, &self.base, prec));
        let i = Arc::new(Ideal::new(&self.ring, gens));
        self.cache.lock().unwrap().insert(prec, i.clone());
        i
    }

    /// Normal form of `p` at precision `prec`.
    pub fn reduce(&self, p: &Polynomial, prec: u32) -> Polynomial {
        let p = p.embed(&self.ring).expect("jet outside the coefficient ring");
        let t = p.truncate(&self.base, prec as u64);
        if t.is_zero() {
            return t;
        }
        self.ideal(prec)
            .normal_form(&t, &TermOrder::degrevlex(self.ring.nvars()))
    }

    pub fn jet(&self, p: &Polynomial, prec: u32) -> Jet {
        Jet {
            rep: self.reduce(p, prec),
            prec,
        }
    }

    pub fn constant(&self, c: i64, prec: u32) -> Jet {
        self.jet(&Polynomial::from_int(&self.ring, c), prec)
    }

    pub fn add(&self, a: &Jet, b: &Jet) -> Jet {
        let prec = a.prec.min(b.prec);
        self.jet(&(&a.rep + &b.rep), prec)
    }

    pub fn sub(&self, a: &Jet, b: &Jet) -> Jet {
        let prec = a.prec.min(b.prec);
        self.jet(&(&a.rep - &b.rep), prec)
    }

    pub fn mul(&self, a: &Jet, b: &Jet) -> Jet {
        let prec = a.prec.min(b.prec);
        self.jet(&self.mul_trunc(&a.rep, &b.rep, prec), prec)
    }

    fn mul_trunc(&self, a: &Polynomial, b: &Polynomial, prec: u32) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (ma, ca) in a.iter() {
            let da = ma.degree_in(&self.base);
            if da >= prec as u64 {
                continue;
            }
            for (mb, cb) in b.iter() {
                if da + mb.degree_in(&self.base) < prec as u64 {
                    out.add_term(ma.mul(mb), ca * cb);
                }
            }
        }
        out
    }

    pub fn is_zero(&self, a: &Jet) -> bool {
        a.rep.is_zero()
    }

    /// `a ≡ b` at the smaller of the two precisions.
    pub fn agree(&self, a: &Jet, b: &Jet) -> bool {
        self.sub(a, b).rep.is_zero()
    }

    /// Least `x`-degree of a term of the reduced representative.
    pub fn order(&self, a: &Jet) -> Option<u32> {
        a.rep.order_in(&self.base).map(|o| o as u32)
    }

    /// Substitutes jets for the variables of `p` named in `values`; every
    /// other variable of `p` must belong to the jet ring.
    pub fn eval(&self, p: &Polynomial, values: &[(String, Jet)], prec: u32) -> Jet {
        let prec = values.iter().map(|(_, j)| j.prec).fold(prec, u32::min);
        let src = p.ring();
        let assigned: Vec<Option<usize>> = (0..src.nvars())
            .map(|i| values.iter().position(|(n, _)| n == src.name(i)))
            .collect();
        let ident: Vec<Option<usize>> = (0..src.nvars())
            .map(|i| self.ring.index_of(src.name(i)))
            .collect();
        let mut powers: Vec<Vec<Polynomial>> = vec![Vec::new(); src.nvars()];
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in p.iter() {
            let mut mono = vec![0u32; self.ring.nvars()];
            let mut t = Polynomial::constant(&self.ring, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match assigned[i] {
                    Some(k) => {
                        let pw = &mut powers[i];
                        if pw.is_empty() {
                            pw.push(Polynomial::one(&self.ring));
                        }
                        while pw.len() <= e as usize {
                            let next = self.reduce(
                                &self.mul_trunc(pw.last().unwrap(), &values[k].1.rep, prec),
                                prec,
                            );
                            pw.push(next);
                        }
                        t = self.mul_trunc(&t, &pw[e as usize], prec);
                    }
                    None => {
                        let j = ident[i].unwrap_or_else(|| {
                            panic!("variable `{}` has no jet value", src.name(i))
                        });
                        mono[j] += e
                    }
                }
            }
            let shift = Monomial::from_exponents(mono);
            acc = &acc + &t.mul_term(&shift, &Rational::one());
        }
        self.jet(&acc, prec)
    }

    /// Inverse of a jet whose constant term is a nonzero rational.
    pub fn invert(&self, u: &Jet) -> Result<Jet> {
        let c0 = u.rep.truncate(&self.base, 1);
        if !c0.is_constant() || c0.is_zero() {
            return Err(GndError::NotAUnit(u.rep.to_string()));
        }
        let c = c0.constant_term();
        let inv_c = c.recip();
        // u = c (1 - w) with w of positive order; 1/u = (1/c) sum w^k.
        let w = &Polynomial::one(&self.ring) - &u.rep.scale(&inv_c);
        let mut r = Polynomial::one(&self.ring);
        for _ in 0..u.prec {
            r = &Polynomial::one(&self.ring) + &self.reduce(&self.mul_trunc(&w, &r, u.prec), u.prec);
        }
        Ok(self.jet(&r.scale(&inv_c), u.prec))
    }

    /// A jet `z` of degree below `N' = N - ord(den)` with
    /// `den z ≡ num` modulo `(x)^N + J`, where `N` is the smaller precision.
    /// The result carries precision `N'`.
    pub fn divide(&self, num: &Jet, den: &Jet) -> Result<Jet> {
        let prec = num.prec.min(den.prec);
        let num_r = self.reduce(&num.rep, prec);
        let den_r = self.reduce(&den.rep, prec);
        let Some(o) = den_r.order_in(&self.base) else {
            if num_r.is_zero() {
                return Ok(Jet {
                    rep: Polynomial::zero(&self.ring),
                    prec: 0,
                });
            }
            return Err(GndError::NotDivisible(format!("{num_r} by a zero jet")));
        };
        let out_prec = prec.saturating_sub(o as u32);
        if num_r.is_zero() {
            return Ok(Jet {
                rep: Polynomial::zero(&self.ring),
                prec: out_prec,
            });
        }
        // Unknown monomials: x-monomials below N' times the coefficient
        // monomials occurring in num and den.
        let nb: Vec<usize> = (0..self.ring.nvars())
            .filter(|i| !self.base.contains(i))
            .collect();
        let mut coeff_monos: Vec<Monomial> = vec![Monomial::one(self.ring.nvars())];
        for (m, _) in num_r.iter().chain(den_r.iter()) {
            let mut e = vec![0u32; self.ring.nvars()];
            for &i in &nb {
                e[i] = m.exponents()[i];
            }
            let cm = Monomial::from_exponents(e);
            if !coeff_monos.contains(&cm) {
                coeff_monos.push(cm);
            }
        }
        let mut unknowns: Vec<Monomial> = Vec::new();
        for k in 0..out_prec {
            for xm in all_monomials(&self.ring, &self.base, k) {
                let xm = xm.iter().next().unwrap().0.clone();
                for cm in &coeff_monos {
                    unknowns.push(xm.mul(cm));
                }
            }
        }
        let mut columns: Vec<(Monomial, Polynomial)> = Vec::new();
        for m in unknowns {
            let image = self.reduce(&den_r.mul_term(&m, &Rational::one()), prec);
            if !image.is_zero() {
                columns.push((m, image));
            }
        }
        let sol = solve_linear(&columns.iter().map(|(_, c)| c.clone()).collect::<Vec<_>>(), &num_r)
            .ok_or_else(|| {
                GndError::NotDivisible(format!("{num_r} by {den_r} at precision {prec}"))
            })?;
        let mut z = Polynomial::zero(&self.ring);
        for ((m, _), c) in columns.iter().zip(sol) {
            if !c.is_zero() {
                z.add_term(m.clone(), c);
            }
        }
        Ok(Jet {
            rep: self.reduce(&z, out_prec),
            prec: out_prec,
        })
    }
}

/// Solves `sum c_j cols_j = rhs` over the rationals (coefficient-wise).
fn solve_linear(cols: &[Polynomial], rhs: &Polynomial) -> Option<Vec<Rational>> {
    let mut rows: Vec<Monomial> = Vec::new();
    for p in cols.iter().chain(std::iter::once(rhs)) {
        for (m, _) in p.iter() {
            if !rows.contains(m) {
                rows.push(m.clone());
            }
        }
    }
    let ncols = cols.len();
    let mut mat: Vec<Vec<Rational>> = rows
        .iter()
        .map(|m| {
            let mut r: Vec<Rational> = cols.iter().map(|p| p.coeff(m)).collect();
            r.push(rhs.coeff(m));
            r
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, pr);
        let inv = mat[row][col].recip();
        for v in mat[row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..mat.len() {
            if r != row && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                let (src, dst) = if r < row {
                    let (a, b) = mat.split_at_mut(row);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = mat.split_at_mut(r);
                    (&a[row], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    if !s.is_zero() {
                        *d = &*d - &(&f * s);
                    }
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == mat.len() {
            break;
        }
    }
    if mat[row..].iter().any(|r| !r[ncols].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational::zero(); ncols];
    for (r, c) in pivots {
        sol[c] = mat[r][ncols].clone();
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gnd_algebra::parse::parse_poly;
    use gnd_algebra::{BlockRole, Ring};

    fn ctx(names: &[&str], rel: &[&str]) -> JetContext {
        let r = Ring::with_names(names, BlockRole::Base);
        let rel = rel.iter().map(|s| parse_poly(&r, s).unwrap()).collect();
        JetContext::new(&r, (0..names.len()).collect(), rel)
    }

    fn j(c: &JetContext, s: &str, prec: u32) -> Jet {
        c.jet(&parse_poly(c.ring(), s).unwrap(), prec)
    }

    #[test]
    fn geometric_series_inverse() {
        let c = ctx(&["x1"], &[]);
        let inv = c.invert(&j(&c, "1 + x1", 4)).unwrap();
        assert_eq!(inv.rep, parse_poly(c.ring(), "1 - x1 + x1^2 - x1^3").unwrap());
        let one = c.invert(&j(&c, "1", 7)).unwrap();
        assert!(one.rep.is_one());
        assert!(c.invert(&j(&c, "x1", 3)).is_err());
    }

    #[test]
    fn exact_division_loses_order_of_denominator() {
        let c = ctx(&["x1"], &[]);
        let z = c.divide(&j(&c, "x1^2", 5), &j(&c, "x1", 5)).unwrap();
        assert_eq!(z.prec, 4);
        assert_eq!(z.rep, parse_poly(c.ring(), "x1").unwrap());
        assert!(c.divide(&j(&c, "x1", 5), &j(&c, "x1^2", 5)).is_err());
    }

    #[test]
    fn division_in_crossing_lines() {
        let c = ctx(&["x1", "x2"], &["x1*x2"]);
        let num = j(&c, "x1^3 + x2^5 + x1^4", 10);
        let den = j(&c, "(x1 + x2)^2", 10);
        let z = c.divide(&num, &den).unwrap();
        let back = c.mul(&z, &den);
        assert!(c.agree(&back, &num));
    }

    #[test]
    fn evaluation_truncates() {
        let r = Ring::new(vec![
            gnd_algebra::Var { name: "x".into(), role: BlockRole::Base },
            gnd_algebra::Var { name: "Y".into(), role: BlockRole::Algebra },
        ])
        .unwrap();
        let c = ctx(&["x"], &[]);
        let f = parse_poly(&r, "Y^2 - 1 - x").unwrap();
        let y = j(&c, "1 + x/2 - x^2/8", 3);
        let v = c.eval(&f, &[("Y".into(), y)], 10);
        assert_eq!(v.prec, 3);
        assert!(v.rep.is_zero());
    }
}
