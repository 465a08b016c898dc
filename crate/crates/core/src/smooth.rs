//! The standard smooth algebra `E = D[Y,T]/(h, g)` localized at `s s′ s″`.
//!
//! Fractions of `D` are cleared so that every relation is a polynomial:
//! with `s = sn/sd` and `b_i = bn_i/bd_i`,
//!
//! * `h = sn (Y - y′) - sd d^e G(y′) T`,
//! * `Q_i = Σ_{|α|≥2} sn^{p-|α|} sd^{|α|} c_α(y′) d^{e(|α|-2)} (G(y′)T)^α`,
//! * `g_i = sn^p bn_i + sn^p bd_i T_i + d^{e-1} bd_i Q_i`,
//!
//! where `c_α` are the Taylor coefficients of `f_i`. The denominators are
//! units of `D`, so these generate the same ideals as the fractional forms.

use std::collections::BTreeMap;

use gnd_algebra::matrix::jacobian;
use gnd_algebra::{BlockRole, Ideal, Monomial, PolyMatrix, Polynomial, RingRef, TermOrder, Var};

use crate::coeff::SmoothBaseD;
use crate::elkik::{fresh_name, AlgebraPresentation};
use crate::error::{GndError, Result};
use crate::jet::{Jet, JetContext};
use crate::local::{divide_local, Frac};

/// Taylor coefficients of `f(shift + Z)` in `Z`, keyed by exponent vectors
/// over `y` (indices into `f`'s ring). Coefficients live in `target`.
pub fn taylor_coefficients(
    f: &Polynomial,
    y: &[usize],
    shift: &[Polynomial],
    target: &RingRef,
) -> BTreeMap<Vec<u32>, Polynomial> {
    let aux: Vec<Var> = (0..y.len())
        .map(|k| Var {
            name: format!("@z{k}"),
            role: BlockRole::Auxiliary,
        })
        .collect();
    let tz = target.extend(&aux).expect("fresh auxiliary names");
    let base = target.nvars();
    let image: Vec<Option<Polynomial>> = (0..f.ring().nvars())
        .map(|i| {
            y.iter().position(|&j| j == i).map(|k| {
                &shift[k].embed(&tz).expect("shift in target ring") + &Polynomial::var(&tz, base + k)
            })
        })
        .collect();
    let expanded = f.substitute(&tz, &image);
    let mut out: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
    for (m, c) in expanded.iter() {
        let e = m.exponents();
        let alpha = e[base..].to_vec();
        let rest = Monomial::from_exponents(e[..base].to_vec());
        out.entry(alpha)
            .or_insert_with(|| Polynomial::zero(target))
            .add_term(rest, c.clone());
    }
    out.retain(|_, p| !p.is_zero());
    out
}

fn mono_pow(vals: &[Polynomial], alpha: &[u32], ring: &RingRef) -> Polynomial {
    let mut acc = Polynomial::one(ring);
    for (v, &a) in vals.iter().zip(alpha) {
        if a > 0 {
            acc = &acc * &v.pow(a);
        }
    }
    acc
}

/// The variables and orders of the output algebra: base and coefficient
/// variables of `D`, the unknowns `Y`, tangent variables `T` and one
/// inverter `W`.
#[derive(Debug, Clone)]
pub struct WorkRing {
    pub ring: RingRef,
    pub y: Vec<usize>,
    pub t: Vec<usize>,
    pub w: usize,
}

impl WorkRing {
    pub fn new(dbase: &SmoothBaseD, b: &AlgebraPresentation) -> Result<WorkRing> {
        let mut ring = dbase.ring.clone();
        let mut y = Vec::new();
        for i in b.unknowns() {
            y.push(ring.nvars());
            ring = ring.extend(&[b.ring.vars()[i].clone()])?;
        }
        let mut t = Vec::new();
        for k in 1..=y.len() {
            t.push(ring.nvars());
            let name = fresh_name(&ring, "T", k);
            ring = ring.extend(&[Var {
                name,
                role: BlockRole::Tangent,
            }])?;
        }
        let w = ring.nvars();
        let mut name = "W".to_string();
        while ring.index_of(&name).is_some() {
            name.push('_');
        }
        ring = ring.extend(&[Var {
            name,
            role: BlockRole::Inverter,
        }])?;
        Ok(WorkRing { ring, y, t, w })
    }

    /// Base variables local, everything else global.
    pub fn local_order(&self) -> TermOrder {
        let global: Vec<usize> = (0..self.ring.nvars())
            .filter(|&i| self.ring.role(i) != BlockRole::Base)
            .collect();
        TermOrder::mixed(self.ring.nvars(), &global)
    }

    pub fn embed(&self, p: &Polynomial) -> Polynomial {
        p.embed(&self.ring).expect("polynomial over the work ring variables")
    }

    pub fn t_vars(&self) -> Vec<Polynomial> {
        self.t.iter().map(|&i| Polynomial::var(&self.ring, i)).collect()
    }
}

/// Data computed in lines 5–10 that the construction consumes.
#[derive(Debug, Clone)]
pub struct SmoothingInput {
    pub f: Vec<Polynomial>,
    pub h_matrix: PolyMatrix,
    pub r_elem: Polynomial,
    pub p_elem: Polynomial,
    pub d: Polynomial,
    pub e: usize,
    /// `y′` per unknown of `B`, in the jet ring.
    pub y_shift: Vec<Polynomial>,
}

#[derive(Debug, Clone)]
pub struct SmoothingCertificate {
    pub work: WorkRing,
    /// Relations of `D` in the work ring.
    pub base_relations: Vec<Polynomial>,
    pub f: Vec<Polynomial>,
    pub r: usize,
    pub h_matrix: PolyMatrix,
    pub r_elem: Polynomial,
    pub p_elem: Polynomial,
    pub d: Polynomial,
    pub e: usize,
    pub s: Frac,
    pub b: Vec<Frac>,
    pub g_matrix: PolyMatrix,
    pub h: Vec<Polynomial>,
    pub g: Vec<Polynomial>,
    pub q: Vec<Polynomial>,
    pub s_prime: Frac,
    pub s_second: Frac,
    /// Largest degree of an `f_i` in the unknowns.
    pub p: u32,
    pub y_shift: Vec<Polynomial>,
    /// `G(y′) T` without the factor `d^e`.
    pub gt: Vec<Polynomial>,
    /// Unknown indices in the presentation ring of `B`.
    pub b_unknowns: Vec<usize>,
}

/// `d` is a nonzerodivisor modulo `relations` in the localization.
fn d_regular(d: &Polynomial, relations: &[Polynomial], ring: &RingRef) -> bool {
    if relations.is_empty() {
        return !d.is_zero();
    }
    let d = d.embed(ring).expect("d lies in D");
    let rel = Ideal::new(ring, relations.to_vec());
    let ord = TermOrder::local_in_base(ring);
    rel.quotient_poly(&d).gens().iter().all(|q| rel.contains(q, &ord))
}

/// Evaluates the unknowns of a `B`-polynomial at `y′` inside the work ring.
fn at_shift(p: &Polynomial, b_y: &[usize], shift: &[Polynomial], work: &WorkRing) -> Polynomial {
    let image: Vec<Option<Polynomial>> = (0..p.ring().nvars())
        .map(|i| b_y.iter().position(|&j| j == i).map(|k| shift[k].clone()))
        .collect();
    p.substitute(&work.ring, &image)
}

pub fn build_hg(
    input: &SmoothingInput,
    b: &AlgebraPresentation,
    dbase: &SmoothBaseD,
) -> Result<SmoothingCertificate> {
    let work = WorkRing::new(dbase, b)?;
    let ring = work.ring.clone();
    let ord = work.local_order();
    let by = b.unknowns();
    let n = by.len();
    let r = input.f.len();
    let e = input.e as u32;
    let rel: Vec<Polynomial> = dbase.relations.iter().map(|p| work.embed(p)).collect();
    let shift: Vec<Polynomial> = input.y_shift.iter().map(|p| work.embed(p)).collect();
    let d = work.embed(&input.d);
    let de = d.pow(e);
    let rel_ideal = Ideal::new(&ring, rel.clone());
    let dp = TermOrder::degrevlex(ring.nvars());
    let red = |p: &Polynomial| rel_ideal.normal_form(p, &dp);
    let red_frac = |f: Frac| Frac {
        num: red(&f.num),
        den: red(&f.den),
    };

    let p_at = at_shift(&input.p_elem, &by, &shift, &work);
    let s = divide_local(&p_at, &d, &rel, &ord)
        .map(red_frac)
        .ok_or_else(|| GndError::DivisibilityViolated(format!("P(y′) = {p_at} is not divisible by d = {d}")))?;
    let s_minus_one = Ideal::new(&ring, [vec![d.clone()], rel.clone()].concat());
    if !s_minus_one.contains(&s.minus_one_numerator(), &ord) {
        return Err(GndError::DivisibilityViolated(format!("s = {s} is not 1 modulo d")));
    }
    let (sn, sd) = (s.num.clone(), s.den.clone());

    let de1 = d.pow(e + 1);
    let de_ideal = Ideal::new(&ring, [vec![de.clone()], rel.clone()].concat());
    let mut bs = Vec::with_capacity(r);
    for fi in &input.f {
        let v = at_shift(fi, &by, &shift, &work);
        let bi = divide_local(&v, &de1, &rel, &ord)
            .map(red_frac)
            .ok_or_else(|| GndError::DivisibilityViolated(format!("f(y′) = {v} is not divisible by d^(e+1)")))?;
        if !de_ideal.contains(&bi.num, &ord) {
            return Err(GndError::DivisibilityViolated(format!("b = {bi} is not in d^e D")));
        }
        bs.push(bi);
    }

    let (_, adj) = input.h_matrix.det_adjugate()?;
    let g_matrix = adj.scale(&input.r_elem);
    let g_at = g_matrix.map(|p| at_shift(p, &by, &shift, &work));
    let t = work.t_vars();
    let gt = g_at.mul_vec(&t);
    let y_vars: Vec<Polynomial> = work.y.iter().map(|&i| Polynomial::var(&ring, i)).collect();
    let h: Vec<Polynomial> = (0..n)
        .map(|j| red(&(&(&sn * &(&y_vars[j] - &shift[j])) - &(&(&sd * &de) * &gt[j]))))
        .collect();

    let p = input
        .f
        .iter()
        .filter_map(|fi| fi.degree_in(&by))
        .max()
        .unwrap_or(0) as u32;
    let mut q = Vec::with_capacity(r);
    let mut g = Vec::with_capacity(r);
    for (i, fi) in input.f.iter().enumerate() {
        let coeffs = taylor_coefficients(fi, &by, &shift, &ring);
        let mut qi = Polynomial::zero(&ring);
        for (alpha, c) in &coeffs {
            let k: u32 = alpha.iter().sum();
            if k < 2 {
                continue;
            }
            let term = &(&(&sn.pow(p - k) * &sd.pow(k)) * c) * &(&d.pow(e * (k - 2)) * &mono_pow(&gt, alpha, &ring));
            qi = &qi + &term;
        }
        let snp = sn.pow(p);
        let gi = &(&(&snp * &bs[i].num) + &(&(&snp * &bs[i].den) * &t[i])) + &(&(&d.pow(e - 1) * &bs[i].den) * &qi);
        q.push(red(&qi));
        g.push(red(&gi));
    }

    let jac_t = jacobian(&g, &ring, &work.t[..r]);
    let s_prime_num = red(&jac_t.det()?);
    let mut s_prime_den = Polynomial::one(&ring);
    for bi in &bs {
        s_prime_den = &s_prime_den * &(&sd.pow(p) * &bi.den);
    }
    let s_prime_den = red(&s_prime_den);

    let qdeg = input.p_elem.degree_in(&by).unwrap_or(0) as u32;
    let pc = taylor_coefficients(&input.p_elem, &by, &shift, &ring);
    let mut s2 = sn.pow(qdeg + 1);
    for (alpha, c) in &pc {
        let k: u32 = alpha.iter().sum();
        if k == 0 {
            continue;
        }
        let term = &(&(&sn.pow(qdeg - k) * &sd.pow(k)) * c) * &(&d.pow(e * k - 1) * &mono_pow(&gt, alpha, &ring));
        s2 = &s2 + &(&sd * &term);
    }
    let s_second = red_frac(Frac {
        num: s2,
        den: &sn.pow(qdeg) * &sd,
    });

    Ok(SmoothingCertificate {
        base_relations: rel,
        f: input.f.clone(),
        r,
        h_matrix: input.h_matrix.clone(),
        r_elem: input.r_elem.clone(),
        p_elem: input.p_elem.clone(),
        d,
        e: input.e,
        s,
        b: bs,
        g_matrix,
        h,
        g,
        q,
        s_prime: Frac {
            num: s_prime_num,
            den: s_prime_den,
        },
        s_second,
        p,
        y_shift: shift,
        gt,
        b_unknowns: by,
        work,
    })
}

const INCLUSION: &str = "I ⊆ (h, g) localized";

/// Outcome of every certificate check, by name.
#[derive(Debug, Clone)]
pub struct CertificateReport {
    pub checks: Vec<(String, bool)>,
}

impl CertificateReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| n.as_str())
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|(n, _)| n == name).map(|(_, ok)| *ok)
    }
}

impl SmoothingCertificate {
    fn ring(&self) -> &RingRef {
        &self.work.ring
    }

    fn ideal_with(&self, extra: &[Polynomial]) -> Ideal {
        Ideal::new(self.ring(), [extra.to_vec(), self.base_relations.clone()].concat())
    }

    /// `sn^m p(Y := c/sn)` with `h_j = sn Y_j - c_j` and `m` the degree of
    /// `p` in `Y`. Since `sn` is a unit, `p ∈ (h)` exactly when this lies in
    /// the relations of `D`.
    pub fn clear_unknowns(&self, p: &Polynomial) -> Polynomial {
        let ring = self.ring();
        let sn = &self.s.num;
        let y = &self.work.y;
        let values: Vec<Polynomial> = self
            .h
            .iter()
            .zip(y)
            .map(|(hj, &yj)| {
                let sn_y = &Polynomial::var(ring, yj) * sn;
                &sn_y - hj
            })
            .collect();
        let m = p.degree_in(y).unwrap_or(0) as u32;
        let mut by_beta: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
        for (mono, c) in p.iter() {
            let mut rest = mono.exponents().to_vec();
            let beta: Vec<u32> = y.iter().map(|&yj| std::mem::take(&mut rest[yj])).collect();
            by_beta
                .entry(beta)
                .or_insert_with(|| Polynomial::zero(ring))
                .add_term(Monomial::from_exponents(rest), c.clone());
        }
        let mut out = Polynomial::zero(ring);
        for (beta, part) in by_beta {
            let k: u32 = beta.iter().sum();
            let term = &(&part * &mono_pow(&values, &beta, ring)) * &sn.pow(m - k);
            out = &out + &term;
        }
        out
    }

    /// Membership in `(h) + J` after inverting `sn`.
    pub fn in_h(&self, p: &Polynomial) -> bool {
        let v = self.clear_unknowns(p);
        v.is_zero() || self.ideal_with(&[]).contains(&v, &self.work.local_order())
    }

    /// `s · s′ · s″ · ρτγ` as a polynomial; every factor is inverted in the
    /// output.
    pub fn multiplier(&self, dbase: &SmoothBaseD) -> Polynomial {
        let m = &(&self.s.num * &self.s_prime.num) * &self.s_second.num;
        &m * &self.work.embed(&dbase.multiplier)
    }

    /// `G H = H G = P Id` exactly.
    pub fn check_adjugate(&self) -> bool {
        let n = self.h_matrix.rows();
        let pid = PolyMatrix::identity(self.h_matrix.ring(), n).scale(&self.p_elem);
        self.g_matrix.mul(&self.h_matrix) == pid && self.h_matrix.mul(&self.g_matrix) == pid
    }

    /// `(∂f/∂Y) G = (P Id_r | 0)` exactly.
    pub fn check_jacobian_identity(&self) -> bool {
        let ring = self.h_matrix.ring();
        let jac = jacobian(&self.f, ring, &self.b_unknowns);
        let prod = jac.mul(&self.g_matrix);
        (0..self.r).all(|i| {
            (0..prod.cols()).all(|j| {
                let want = if i == j { self.p_elem.clone() } else { Polynomial::zero(ring) };
                prod.get(i, j) == &want
            })
        })
    }

    /// `sn^p f(Y) - sn^p f(y′) - sn^{p-1} sd d^e Σ ∂_j f(y′) (G(y′)T)_j
    /// - d^{2e} Q ∈ (h)` for every `f_i`.
    pub fn check_taylor_identity(&self) -> bool {
        let ring = self.ring().clone();
        let (sn, sd) = (&self.s.num, &self.s.den);
        let e = self.e as u32;
        let de = self.d.pow(e);
        let d2e = self.d.pow(2 * e);
        let snp = sn.pow(self.p);
        let snp1 = if self.p >= 1 { sn.pow(self.p - 1) } else { Polynomial::zero(&ring) };
        self.f.iter().zip(&self.q).all(|(fi, qi)| {
            let fy = self.work.embed(fi);
            let f0 = at_shift(fi, &self.b_unknowns, &self.y_shift, &self.work);
            let mut lin = Polynomial::zero(&ring);
            for (k, &yk) in self.b_unknowns.iter().enumerate() {
                let df = at_shift(&fi.derivative(yk), &self.b_unknowns, &self.y_shift, &self.work);
                lin = &lin + &(&df * &self.gt[k]);
            }
            let lhs = &(&(&(&snp * &fy) - &(&snp * &f0)) - &(&(&(&snp1 * sd) * &de) * &lin)) - &(&d2e * qi);
            self.in_h(&lhs)
        })
    }

    /// Every term of every `Q_i` has degree at least 2 in `T`.
    pub fn check_q_quadratic(&self) -> bool {
        self.q.iter().all(|qi| qi.order_in(&self.work.t).is_none_or(|o| o >= 2))
    }

    /// `s ≡ 1 mod d`, `s′ ≡ 1 mod (d, T)`, `s″ ≡ 1 mod (d, T)`.
    pub fn check_units(&self) -> [bool; 3] {
        let ord = self.work.local_order();
        let dd = self.ideal_with(std::slice::from_ref(&self.d));
        let mut dt = vec![self.d.clone()];
        dt.extend(self.work.t_vars());
        let dt = self.ideal_with(&dt);
        [
            dd.contains(&self.s.minus_one_numerator(), &ord),
            dt.contains(&self.s_prime.minus_one_numerator(), &ord),
            dt.contains(&self.s_second.minus_one_numerator(), &ord),
        ]
    }

    /// `d s″ = P(y′ + s⁻¹ d^e G(y′) T)`, checked as
    /// `d · num(s″) - sd · sn^q · P(Y) ∈ (h)`.
    pub fn check_s_second(&self) -> bool {
        let q = self.p_elem.degree_in(&self.b_unknowns).unwrap_or(0) as u32;
        let py = self.work.embed(&self.p_elem);
        let lhs = &(&self.d * &self.s_second.num) - &(&(&self.s.den * &self.s.num.pow(q)) * &py);
        self.in_h(&lhs)
    }

    /// `I ⊆ (h, g)` after inverting the multiplier; returns the first
    /// generator that fails. Three facts suffice, given that the output is
    /// standard smooth (hence flat) over `D`:
    /// `P I ⊆ (f) + J`; `bd_i sn^p f_i ≡ d^(e+1) g_i` modulo `(h)`, so
    /// `(f) ⊆ (h, g)`; `d s″ ≡ sd sn^q P` modulo `(h)` with `d` a
    /// nonzerodivisor of `D`, so `d I ⊆ (h, g)` cancels to `I ⊆ (h, g)`.
    pub fn check_inclusion(&self, b: &AlgebraPresentation, dbase: &SmoothBaseD) -> std::result::Result<(), Polynomial> {
        let bord = TermOrder::local_in_base(&b.ring);
        let fj = Ideal::new(&b.ring, [self.f.clone(), b.base_relations.clone()].concat());
        for gen in &b.relations {
            if !fj.contains(&(&self.p_elem * gen), &bord) {
                return Err(gen.clone());
            }
        }
        let snp = self.s.num.pow(self.p);
        let de1 = self.d.pow(self.e as u32 + 1);
        for (i, fi) in self.f.iter().enumerate() {
            let lhs = &(&(&self.b[i].den * &snp) * &self.work.embed(fi)) - &(&de1 * &self.g[i]);
            if !self.in_h(&lhs) {
                return Err(fi.clone());
            }
        }
        if !self.check_s_second() || !d_regular(&self.d, &dbase.relations, &dbase.ring) {
            return Err(self.p_elem.clone());
        }
        Ok(())
    }

    /// `I ⊆ (h, g) : m^∞` by a direct saturation; only practical on small
    /// instances.
    pub fn check_inclusion_saturated(&self, b: &AlgebraPresentation, dbase: &SmoothBaseD) -> bool {
        let ord = self.work.local_order();
        let hg = self.ideal_with(&[self.h.clone(), self.g.clone()].concat());
        let m = self.multiplier(dbase);
        b.relations
            .iter()
            .all(|gen| hg.saturation_contains(&self.work.embed(gen), &m, &ord))
    }

    /// The Jacobian of `(h, g)` in `(Y, T_1..T_r)` is block triangular with
    /// determinant `sn^n s′`: `g` does not involve `Y` and `∂h/∂Y = sn Id`.
    pub fn jacobian_minor(&self) -> Option<Polynomial> {
        let n = self.work.y.len();
        if self.g.iter().any(|gi| gi.uses_any(&self.work.y)) {
            return None;
        }
        let jy = jacobian(&self.h, self.ring(), &self.work.y);
        let sid = PolyMatrix::identity(self.ring(), n).scale(&self.s.num);
        if jy != sid {
            return None;
        }
        Some(&self.s.num.pow(n as u32) * &self.s_prime.num)
    }

    pub fn verify(&self, b: &AlgebraPresentation, dbase: &SmoothBaseD) -> CertificateReport {
        let [s1, s2, s3] = self.check_units();
        let minor_ok = self.jacobian_minor().is_some();
        let checks = vec![
            ("G H = P Id".to_string(), self.check_adjugate()),
            ("(∂f/∂Y) G = (P Id | 0)".to_string(), self.check_jacobian_identity()),
            ("Taylor identity in (h)".to_string(), self.check_taylor_identity()),
            ("Q in (T)^2".to_string(), self.check_q_quadratic()),
            ("s ≡ 1 mod d".to_string(), s1),
            ("s′ ≡ 1 mod (d, T)".to_string(), s2),
            ("s″ ≡ 1 mod (d, T)".to_string(), s3),
            ("d s″ = P(y′ + s⁻¹ d^e G(y′) T)".to_string(), self.check_s_second()),
            (INCLUSION.to_string(), self.check_inclusion(b, dbase).is_ok()),
            ("Jacobian minor s^n s′ is a unit".to_string(), minor_ok),
        ];
        CertificateReport { checks }
    }
}

/// The output presentation and its readable form.
#[derive(Debug, Clone)]
pub struct SmoothOutput {
    pub presentation: AlgebraPresentation,
    pub multiplier: Polynomial,
    /// `h` with every `T_j` killed by a relation `g_i = c T_j` set to zero,
    /// reduced modulo the relations of `D`; other `g_i` follow.
    pub simplified: Vec<Polynomial>,
    pub report: CertificateReport,
}

pub fn localize_smooth(
    cert: &SmoothingCertificate,
    b: &AlgebraPresentation,
    dbase: &SmoothBaseD,
) -> Result<SmoothOutput> {
    let report = cert.verify(b, dbase);
    if report.get(INCLUSION) == Some(false) {
        if let Err(gen) = cert.check_inclusion(b, dbase) {
            return Err(GndError::CertificateFailed(format!(
                "{gen} is not in (h, g) after inverting s s′ s″"
            )));
        }
    }
    if !report.all_pass() {
        return Err(GndError::CertificateFailed(report.failures().join("; ")));
    }
    let ring = cert.work.ring.clone();
    let m = cert.multiplier(dbase);
    let w = Polynomial::var(&ring, cert.work.w);
    let mut relations = cert.g.clone();
    relations.extend(cert.h.iter().cloned());
    relations.push(&(&w * &m) - &Polynomial::one(&ring));
    let presentation = AlgebraPresentation {
        ring: ring.clone(),
        relations,
        base_relations: cert.base_relations.clone(),
        multipliers: vec![
            cert.s.num.clone(),
            cert.s_prime.num.clone(),
            cert.s_second.num.clone(),
            cert.work.embed(&dbase.multiplier),
        ],
    };
    let simplified = simplify(cert);
    Ok(SmoothOutput {
        presentation,
        multiplier: m,
        simplified,
        report,
    })
}

fn simplify(cert: &SmoothingCertificate) -> Vec<Polynomial> {
    let ring = &cert.work.ring;
    let mut image: Vec<Option<Polynomial>> = vec![None; ring.nvars()];
    let mut rest = Vec::new();
    for gi in &cert.g {
        let single = gi.num_terms() == 1 && gi.total_degree() == Some(1);
        let tvar = cert.work.t.iter().copied().find(|&t| gi.uses_var(t));
        match (single, tvar) {
            (true, Some(t)) => image[t] = Some(Polynomial::zero(ring)),
            _ => rest.push(gi.clone()),
        }
    }
    let base = Ideal::new(ring, cert.base_relations.clone());
    let dp = TermOrder::degrevlex(ring.nvars());
    let mut out: Vec<Polynomial> = cert
        .h
        .iter()
        .map(|hj| base.normal_form(&hj.substitute(ring, &image), &dp))
        .collect();
    out.extend(rest.iter().map(|p| base.normal_form(&p.substitute(ring, &image), &dp)));
    out.retain(|p| !p.is_zero());
    out
}

/// Jets of the factorization `B → E → A′`.
#[derive(Debug, Clone)]
pub struct FactorizationReport {
    pub precision: u32,
    pub epsilon: Vec<Jet>,
    pub t: Vec<Jet>,
    pub checks: Vec<(String, bool)>,
}

impl FactorizationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Factors `v` through the output at jet level: `ε = (y - y′)/d^{e+1}`,
/// `t = H(y′) ε`, then checks `h(y, t) ≡ 0`, `g(t) ≡ 0` and every output
/// relation with `W` set to the inverse of the multiplier.
pub fn factor_morphism(
    cert: &SmoothingCertificate,
    out: &SmoothOutput,
    ctx: &JetContext,
    y_low: &[Jet],
    y_high: &[Jet],
) -> Result<FactorizationReport> {
    let n = cert.work.y.len();
    if y_high.len() != n || y_low.len() != n {
        return Err(GndError::VerificationFailed(format!(
            "expected {n} jets, got {}",
            y_high.len()
        )));
    }
    let ring = &cert.work.ring;
    for (k, (lo, hi)) in y_low.iter().zip(y_high).enumerate() {
        if !ctx.agree(lo, hi) {
            return Err(GndError::VerificationFailed(format!(
                "the verification jet of {} does not extend the approximation below {}",
                ring.name(cert.work.y[k]),
                lo.prec.min(hi.prec)
            )));
        }
    }
    let top = y_high.iter().map(|j| j.prec).min().unwrap_or(0);
    let dj = ctx.jet(&cert.d.pow(cert.e as u32 + 1), top);
    let mut epsilon = Vec::with_capacity(n);
    for (lo, hi) in y_low.iter().zip(y_high) {
        let diff = ctx.sub(&ctx.jet(&hi.rep, hi.prec), &Jet { rep: lo.rep.clone(), prec: hi.prec });
        epsilon.push(ctx.divide(&diff, &dj).map_err(|e| GndError::VerificationFailed(e.to_string()))?);
    }
    let prec = epsilon.iter().map(|j| j.prec).min().unwrap_or(0);
    let shift_vals: Vec<(String, Jet)> = Vec::new();
    let h_at: Vec<Jet> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let entry = at_shift(cert.h_matrix.get(i, j), &cert.b_unknowns, &cert.y_shift, &cert.work);
            ctx.eval(&entry, &shift_vals, prec)
        })
        .collect();
    let mut t = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = ctx.constant(0, prec);
        for (j, ej) in epsilon.iter().enumerate() {
            acc = ctx.add(&acc, &ctx.mul(&h_at[i * n + j], ej));
        }
        t.push(acc);
    }
    let mut values: Vec<(String, Jet)> = Vec::new();
    for (k, &yi) in cert.work.y.iter().enumerate() {
        values.push((ring.name(yi).to_string(), Jet { rep: y_high[k].rep.clone(), prec }));
    }
    for (k, &ti) in cert.work.t.iter().enumerate() {
        values.push((ring.name(ti).to_string(), t[k].clone()));
    }
    let vanish = |ps: &[Polynomial], vals: &[(String, Jet)]| -> bool {
        ps.iter().all(|p| ctx.is_zero(&ctx.eval(p, vals, prec)))
    };
    let ok_h = vanish(&cert.h, &values);
    let ok_g = vanish(&cert.g, &values);
    let m = ctx.eval(&out.multiplier, &values, prec);
    let ok_out = match ctx.invert(&m) {
        Ok(winv) => {
            let mut all = values.clone();
            all.push((ring.name(cert.work.w).to_string(), winv));
            vanish(&out.presentation.relations, &all)
        }
        Err(_) => false,
    };
    Ok(FactorizationReport {
        precision: prec,
        epsilon,
        t,
        checks: vec![
            ("h(y, t) ≡ 0".to_string(), ok_h),
            ("g(t) ≡ 0".to_string(), ok_g),
            ("output relations vanish".to_string(), ok_out),
        ],
    })
}
