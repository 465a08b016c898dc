//! Strong approximation over a one-dimensional local ring: the linear
//! Artin bound, the Jacobian hypothesis at an approximate solution and the
//! Newton-style lifting of that solution to any jet precision.

use gnd_algebra::matrix::jacobian;
use gnd_algebra::{Ideal, PolyMatrix, Polynomial, RingRef, TermOrder};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeff::{build_d, CoeffExt};
use crate::desing::{complete_h, PrimeTests, DEFAULT_SEED};
use crate::elkik::{subsystem_colon, AlgebraPresentation};
use crate::error::{GndError, Result};
use crate::jet::{Jet, JetContext};
use crate::local::{all_monomials, compute_e, divide_local, Frac, LocalRingSpec};
use crate::problem::Problem;
use crate::smooth::{taylor_coefficients, WorkRing};

/// `ν(c) = (e+1)(ρ+1) + c`.
pub fn nu_bound(e: u32, rho: u32, c: u32) -> u32 {
    (e + 1) * (rho + 1) + c
}

#[derive(Debug, Clone)]
pub struct LiftingProblem {
    pub local: LocalRingSpec,
    pub algebra: AlgebraPresentation,
    /// The subsystem `f ⊆ I`, in the ring of `algebra`.
    pub f: Vec<Polynomial>,
    /// `y′`, one polynomial per unknown, in the ring of `local`.
    pub y_approx: Vec<Polynomial>,
    pub rho: u32,
    /// Agreement level of the conclusion `v′ ≡ v mod 𝔪^c`.
    pub c: u32,
    /// Jet precision of the lifted solution.
    pub target: u32,
    /// Seed for the completion of the Jacobian.
    pub seed: u64,
}

impl LiftingProblem {
    /// `f_indices` are 0-based positions among the algebra relations; an
    /// empty list takes the first `min(#relations, #unknowns)`.
    pub fn from_problem(p: &Problem, f_indices: &[usize], rho: u32, c: u32, target: u32) -> Result<Self> {
        if !p.coeff_vars.is_empty() {
            return Err(GndError::InvalidInput("lifting does not use a coefficient extension".into()));
        }
        let local = p.local_spec()?;
        let algebra = p.algebra();
        let rels = &algebra.relations;
        let n = algebra.unknowns().len();
        let idx: Vec<usize> = if f_indices.is_empty() {
            (0..rels.len().min(n)).collect()
        } else {
            f_indices.to_vec()
        };
        let mut f = Vec::with_capacity(idx.len());
        for &i in &idx {
            let g = rels
                .get(i)
                .ok_or_else(|| GndError::InvalidInput(format!("no relation with index {}", i + 1)))?;
            f.push(g.clone());
        }
        let polys = p.jet_polys();
        let mut y_approx = Vec::with_capacity(n);
        for name in algebra.unknown_names() {
            let (_, q) = polys
                .iter()
                .find(|(m, _)| *m == name)
                .ok_or_else(|| GndError::InvalidInput(format!("no approximate value for {name}")))?;
            y_approx.push(q.embed(local.ring())?);
        }
        Ok(LiftingProblem {
            local,
            algebra,
            f,
            y_approx,
            rho,
            c,
            target,
            seed: p.seed.unwrap_or(DEFAULT_SEED),
        })
    }

    /// Replaces `f` by the single combination `Σ coeffs[i] g_i` of the
    /// algebra relations.
    pub fn with_combination(mut self, coeffs: &[i64]) -> Result<Self> {
        let rels = &self.algebra.relations;
        if coeffs.len() != rels.len() {
            return Err(GndError::InvalidInput(format!(
                "{} coefficients given for {} relations",
                coeffs.len(),
                rels.len()
            )));
        }
        let mut f = Polynomial::zero(&self.algebra.ring);
        for (c, g) in coeffs.iter().zip(rels) {
            f = &f + &g.scale(&gnd_algebra::poly::q(*c, 1));
        }
        if f.is_zero() {
            return Err(GndError::InvalidInput("the combination of the relations is zero".into()));
        }
        self.f = vec![f];
        Ok(self)
    }

    /// The same problem with another approximate solution.
    pub fn with_approx(&self, y: Vec<Polynomial>) -> Self {
        LiftingProblem {
            y_approx: y,
            ..self.clone()
        }
    }
}

/// Data fixed by `f` and `y′`: the completed Jacobian `H`, the colon
/// element `L`, `P = L det H`, `G` with `GH = P Id`, `d = P(y′)` and `e`.
#[derive(Debug, Clone)]
pub struct LiftSetup {
    pub h_matrix: PolyMatrix,
    pub l_elem: Polynomial,
    pub p_elem: Polynomial,
    pub g_matrix: PolyMatrix,
    /// `G(y′)` over `A`.
    pub g_at: PolyMatrix,
    pub d: Polynomial,
    pub e: u32,
    pub nu: u32,
    /// Generators of `((f):I) Δ_f` evaluated at `y′`.
    pub jacobian_values: Vec<Polynomial>,
}

/// `p(y′)` in the ring of `A`, reduced modulo `J`.
fn at_point(p: &Polynomial, prob: &LiftingProblem) -> Polynomial {
    let a = &prob.local;
    let ring = a.ring();
    let ys = prob.algebra.unknowns();
    let image: Vec<Option<Polynomial>> = (0..p.ring().nvars())
        .map(|i| match ys.iter().position(|&j| j == i) {
            Some(k) => Some(prob.y_approx[k].clone()),
            None => ring.index_of(p.ring().name(i)).map(|j| Polynomial::var(ring, j)),
        })
        .collect();
    let v = p.substitute(ring, &image);
    a.relations().normal_form(&v, &a.global_order())
}

fn context(a: &LocalRingSpec) -> JetContext {
    let base: Vec<usize> = (0..a.nvars()).collect();
    JetContext::new(a.ring(), base, a.relations().gens().to_vec())
}

fn jets_of(ctx: &JetContext, prob: &LiftingProblem, ys: &[Polynomial], prec: u32) -> Vec<(String, Jet)> {
    prob.algebra
        .unknown_names()
        .into_iter()
        .zip(ys)
        .map(|(n, y)| (n, ctx.jet(y, prec)))
        .collect()
}

/// `p ∈ J + extra` in the local ring.
fn local_member(a: &LocalRingSpec, extra: &[Polynomial], p: &Polynomial) -> bool {
    a.relations().with(extra).contains(p, &a.local_order())
}

pub fn setup(prob: &LiftingProblem) -> Result<LiftSetup> {
    let a = &prob.local;
    let b = &prob.algebra;
    if prob.f.is_empty() {
        return Err(GndError::InvalidInput("the subsystem f is empty".into()));
    }
    if prob.y_approx.len() != b.unknowns().len() {
        return Err(GndError::InvalidInput(format!(
            "expected {} approximate values, got {}",
            b.unknowns().len(),
            prob.y_approx.len()
        )));
    }
    let ctx = context(a);
    let prec = prob.target.max(prob.rho + 1);
    let jets = jets_of(&ctx, prob, &prob.y_approx, prec);
    let primes = a.minimal_primes()?;
    let tests = PrimeTests::new(&primes, &ctx, a.relations().gens(), prec);
    let mut rng = ChaCha8Rng::seed_from_u64(prob.seed);
    let (h_matrix, _) = complete_h(&prob.f, b, &ctx, &jets, &tests, prec, &mut rng)?;
    let det_h = h_matrix.det()?;

    let colon = subsystem_colon(b, &prob.f).canonical_gens();
    let det_at = at_point(&det_h, prob);
    // Single generators first, then pairwise sums, as in the choice of `R`.
    let pairs = (0..colon.len()).flat_map(|i| (i + 1..colon.len()).map(move |j| (i, j)));
    let candidates = colon.iter().cloned().chain(pairs.map(|(i, j)| &colon[i] + &colon[j]));
    let l_elem = candidates
        .into_iter()
        .find(|l| {
            let v = &at_point(l, prob) * &det_at;
            tests.avoids_all(&ctx.jet(&v, prec))
        })
        .ok_or_else(|| {
            GndError::HypothesisViolated("no element of (f):I keeps P(y′) outside every minimal prime".into())
        })?;
    let p_elem = &l_elem * &det_h;
    let (_, adj) = h_matrix.det_adjugate()?;
    let g_matrix = adj.scale(&l_elem);
    let g_at = PolyMatrix::from_rows(
        a.ring(),
        (0..g_matrix.rows())
            .map(|i| g_matrix.row(i).iter().map(|p| at_point(p, prob)).collect())
            .collect(),
    );
    let d = at_point(&p_elem, prob);
    let (e, _) = compute_e(&d, a)?;
    let e = e as u32;
    let nu = nu_bound(e, prob.rho, prob.c);

    let ys = b.unknowns();
    let minors = jacobian(&prob.f, &b.ring, &ys).minors(prob.f.len())?;
    let mut jacobian_values = Vec::new();
    for l in &colon {
        for m in &minors {
            let v = at_point(&(l * m), prob);
            if !v.is_zero() && !jacobian_values.contains(&v) {
                jacobian_values.push(v);
            }
        }
    }
    Ok(LiftSetup {
        h_matrix,
        l_elem,
        p_elem,
        g_matrix,
        g_at,
        d,
        e,
        nu,
        jacobian_values,
    })
}

/// Every monomial of degree `ρ` lies in `J + (x)^ν + ((f):I)Δ_f (y′)`.
pub fn check_hypothesis(prob: &LiftingProblem) -> Result<bool> {
    let s = setup(prob)?;
    Ok(jacobian_condition(prob, &s, Some(s.nu)))
}

fn jacobian_condition(prob: &LiftingProblem, s: &LiftSetup, cut: Option<u32>) -> bool {
    let a = &prob.local;
    let vars: Vec<usize> = (0..a.nvars()).collect();
    let mut extra = s.jacobian_values.clone();
    if let Some(nu) = cut {
        extra.extend(all_monomials(a.ring(), &vars, nu));
    }
    let ideal = a.relations().with(&extra);
    let ord = a.local_order();
    all_monomials(a.ring(), &vars, prob.rho)
        .iter()
        .all(|m| ideal.contains(m, &ord))
}

/// The largest `c ≤ target` with `f(y′) ∈ d^(e+1) (x)^c`, or an error when
/// `f(y′)` is not divisible by `d^(e+1)`.
pub fn attainable_agreement(prob: &LiftingProblem) -> Result<u32> {
    let s = setup(prob)?;
    let a = &prob.local;
    let ctx = context(a);
    let de1 = s.d.pow(s.e + 1);
    let rel = a.relations().gens().to_vec();
    let mut c = prob.target;
    for fi in &prob.f {
        let v = at_point(fi, prob);
        let bi = divide_local(&v, &de1, &rel, &a.local_order()).ok_or_else(|| {
            GndError::DivisibilityViolated(format!("f(y′) = {v} is not divisible by d^(e+1) = {de1}"))
        })?;
        if let Some(o) = ctx.order(&ctx.jet(&bi.num, prob.target)) {
            c = c.min(o);
        }
    }
    Ok(c)
}

#[derive(Debug, Clone)]
pub struct LiftReport {
    pub e: u32,
    pub rho: u32,
    pub c: u32,
    pub nu: u32,
    pub d: Polynomial,
    pub h_matrix: PolyMatrix,
    /// `b` with `f(y′) = d^(e+1) b`.
    pub b: Vec<Frac>,
    pub t: Vec<Jet>,
    pub y: Vec<Jet>,
    /// `x`-order of each Newton update, strictly increasing.
    pub gains: Vec<u32>,
    /// First order where `y` and `y′` differ, or the precision if none.
    pub agreement: u32,
    pub precision: u32,
}

/// Solves `g = 0` by `T ← -b - d^(e-1) Q(T)` and returns
/// `y = y′ + d^e G(y′) T` with `I(y) ≡ 0` at the target precision.
pub fn newton_lift(prob: &LiftingProblem) -> Result<LiftReport> {
    let s = setup(prob)?;
    if !jacobian_condition(prob, &s, Some(s.nu)) {
        return Err(GndError::HypothesisViolated(format!(
            "(x)^{} is not inside J + (x)^{} + ((f):I)Δ_f(y′)",
            prob.rho, s.nu
        )));
    }
    lift_with(prob, &s)
}

fn lift_with(prob: &LiftingProblem, s: &LiftSetup) -> Result<LiftReport> {
    let a = &prob.local;
    let ctx = context(a);
    let w = prob.target;
    let n = prob.y_approx.len();
    let r = prob.f.len();
    let ys = prob.algebra.unknowns();
    let rel = a.relations().gens().to_vec();
    let ord = a.local_order();

    let de1 = s.d.pow(s.e + 1);
    let mut b = Vec::with_capacity(r);
    let mut b_jets = Vec::with_capacity(r);
    let cut: Vec<Polynomial> = all_monomials(a.ring(), &(0..a.nvars()).collect::<Vec<_>>(), prob.c);
    for fi in &prob.f {
        let v = at_point(fi, prob);
        let bi = divide_local(&v, &de1, &rel, &ord).ok_or_else(|| {
            GndError::DivisibilityViolated(format!("f(y′) = {v} is not divisible by d^(e+1) = {de1}"))
        })?;
        if !local_member(a, &cut, &bi.num) {
            return Err(GndError::HypothesisViolated(format!(
                "b = {bi} is not in (x)^{}",
                prob.c
            )));
        }
        let j = ctx.divide(&ctx.jet(&bi.num, w), &ctx.jet(&bi.den, w))?;
        b_jets.push(Jet { rep: j.rep, prec: w });
        b.push(bi);
    }

    let taylor: Vec<Vec<(Vec<u32>, Jet)>> = prob
        .f
        .iter()
        .map(|fi| {
            taylor_coefficients(fi, &ys, &prob.y_approx, a.ring())
                .into_iter()
                .filter(|(alpha, _)| alpha.iter().sum::<u32>() >= 2)
                .map(|(alpha, c)| (alpha, ctx.jet(&c, w)))
                .collect()
        })
        .collect();
    let pow_jet = |k: u32| ctx.jet(&s.d.pow(k), w);
    let de_jet = pow_jet(s.e);
    let de_m1 = pow_jet(s.e - 1);
    let g_at: Vec<Vec<Jet>> = (0..n)
        .map(|i| (0..n).map(|j| ctx.jet(s.g_at.get(i, j), w)).collect())
        .collect();
    let gt_of = |t: &[Jet]| -> Vec<Jet> {
        (0..n)
            .map(|i| {
                let mut acc = ctx.constant(0, w);
                for (gij, tj) in g_at[i].iter().zip(t) {
                    acc = ctx.add(&acc, &ctx.mul(gij, tj));
                }
                acc
            })
            .collect()
    };
    let jet_pow = |v: &[Jet], alpha: &[u32]| -> Jet {
        let mut acc = ctx.constant(1, w);
        for (vk, &ak) in v.iter().zip(alpha) {
            for _ in 0..ak {
                acc = ctx.mul(&acc, vk);
            }
        }
        acc
    };

    let mut t: Vec<Jet> = (0..n).map(|_| ctx.constant(0, w)).collect();
    let mut gains: Vec<u32> = Vec::new();
    for _ in 0..=w + 1 {
        let gt = gt_of(&t);
        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            if i >= r {
                next.push(ctx.constant(0, w));
                continue;
            }
            let mut q = ctx.constant(0, w);
            for (alpha, c) in &taylor[i] {
                let k: u32 = alpha.iter().sum();
                let scale = ctx.mul(c, &pow_jet(s.e * (k - 2)));
                q = ctx.add(&q, &ctx.mul(&scale, &jet_pow(&gt, alpha)));
            }
            let ti = ctx.sub(&ctx.constant(0, w), &ctx.add(&b_jets[i], &ctx.mul(&de_m1, &q)));
            next.push(ti);
        }
        let update = next
            .iter()
            .zip(&t)
            .filter_map(|(u, v)| ctx.order(&ctx.sub(u, v)))
            .min();
        t = next;
        match update {
            None => break,
            Some(o) => {
                if gains.last().is_some_and(|&prev| o <= prev) {
                    return Err(GndError::NoContraction(format!(
                        "update order {o} after {:?}; check ρ, c and e",
                        gains
                    )));
                }
                gains.push(o);
            }
        }
    }

    let gt = gt_of(&t);
    let y: Vec<Jet> = prob
        .y_approx
        .iter()
        .zip(&gt)
        .map(|(y0, v)| ctx.add(&ctx.jet(y0, w), &ctx.mul(&de_jet, v)))
        .collect();
    let values: Vec<(String, Jet)> = prob.algebra.unknown_names().into_iter().zip(y.iter().cloned()).collect();
    for g in &prob.algebra.relations {
        let v = ctx.eval(g, &values, w);
        if !ctx.is_zero(&v) {
            return Err(GndError::VerificationFailed(format!(
                "{g} does not vanish on the lift modulo (x)^{w}: {}",
                v.rep
            )));
        }
    }
    let agreement = y
        .iter()
        .zip(&prob.y_approx)
        .filter_map(|(yj, y0)| ctx.order(&ctx.sub(yj, &ctx.jet(y0, w))))
        .min()
        .unwrap_or(w);
    Ok(LiftReport {
        e: s.e,
        rho: prob.rho,
        c: prob.c,
        nu: s.nu,
        d: s.d.clone(),
        h_matrix: s.h_matrix.clone(),
        b,
        t,
        y,
        gains,
        agreement,
        precision: w,
    })
}

#[derive(Debug, Clone)]
pub struct StrongApproxReport {
    pub lift: LiftReport,
    /// `(e+2)(ρ+1)`, with `e` taken at `y′`.
    pub check_precision: u32,
    /// First order where the lift differs from `y′`.
    pub agreement_with_approx: u32,
}

/// Checks `y″ ≡ y′ mod (x)^ρ`, `I(y″) ≡ 0 mod (x)^((e+2)(ρ+1))` and the
/// exact Jacobian condition at `y′`, then lifts from `y″` with `c = ρ+1`.
pub fn strong_approx_decide(prob: &LiftingProblem, y_second: &[Polynomial]) -> Result<StrongApproxReport> {
    let a = &prob.local;
    let s = setup(prob)?;
    if !jacobian_condition(prob, &s, None) {
        return Err(GndError::PreconditionFailed(format!(
            "(x)^{} is not inside ((f):I)Δ_f(y′)",
            prob.rho
        )));
    }
    let vars: Vec<usize> = (0..a.nvars()).collect();
    let rho_cut = all_monomials(a.ring(), &vars, prob.rho);
    for g in &prob.algebra.relations {
        if !local_member(a, &rho_cut, &at_point(g, prob)) {
            return Err(GndError::PreconditionFailed(format!("I(y′) ≢ 0 modulo (x)^{}", prob.rho)));
        }
    }
    if y_second.len() != prob.y_approx.len() {
        return Err(GndError::InvalidInput("y″ has the wrong length".into()));
    }
    for (u, v) in y_second.iter().zip(&prob.y_approx) {
        if !local_member(a, &rho_cut, &(u - v)) {
            return Err(GndError::PreconditionFailed(format!("y″ ≢ y′ modulo (x)^{}", prob.rho)));
        }
    }
    let check_precision = (s.e + 2) * (prob.rho + 1);
    let second = LiftingProblem {
        c: prob.rho + 1,
        ..prob.with_approx(y_second.to_vec())
    };
    let high = all_monomials(a.ring(), &vars, check_precision);
    for g in &prob.algebra.relations {
        if !local_member(a, &high, &at_point(g, &second)) {
            return Err(GndError::PreconditionFailed(format!(
                "I(y″) ≢ 0 modulo (x)^{check_precision}"
            )));
        }
    }
    let lift = newton_lift(&second)?;
    let ctx = context(a);
    let agreement_with_approx = lift
        .y
        .iter()
        .zip(&prob.y_approx)
        .filter_map(|(yj, y0)| ctx.order(&ctx.sub(yj, &ctx.jet(y0, lift.precision))))
        .min()
        .unwrap_or(lift.precision);
    if agreement_with_approx < prob.rho {
        return Err(GndError::VerificationFailed(format!(
            "the lift agrees with y′ only below order {agreement_with_approx}"
        )));
    }
    Ok(StrongApproxReport {
        lift,
        check_precision,
        agreement_with_approx,
    })
}

/// `h = Y - y′ - d^e G(y′) T` and `g_i = bn_i + bd_i T_i + d^(e-1) bd_i Q_i`
/// over `A[Y, T]`: the tangent system with `D = A` and `s = 1`.
pub fn tangent_system(prob: &LiftingProblem, s: &LiftSetup) -> Result<(WorkRing, Vec<Polynomial>, Vec<Polynomial>)> {
    let a = &prob.local;
    let dbase = build_d(&CoeffExt::trivial(), a)?;
    let work = WorkRing::new(&dbase, &prob.algebra)?;
    let ring: RingRef = work.ring.clone();
    let ys = prob.algebra.unknowns();
    let emb = |p: &Polynomial| work.embed(p);
    let rel_ideal = Ideal::new(&ring, a.relations().gens().iter().map(emb).collect());
    let dp = TermOrder::degrevlex(ring.nvars());
    let red = |p: &Polynomial| rel_ideal.normal_form(p, &dp);
    let d = emb(&s.d);
    let de = d.pow(s.e);
    let t = work.t_vars();
    let gt = s.g_at.map(emb).mul_vec(&t);
    let h: Vec<Polynomial> = work
        .y
        .iter()
        .enumerate()
        .map(|(j, &yj)| red(&(&(&Polynomial::var(&ring, yj) - &emb(&prob.y_approx[j])) - &(&de * &gt[j]))))
        .collect();
    let rel = a.relations().gens().to_vec();
    let de1 = s.d.pow(s.e + 1);
    let mut g = Vec::with_capacity(prob.f.len());
    for (i, fi) in prob.f.iter().enumerate() {
        let v = at_point(fi, prob);
        let bi = divide_local(&v, &de1, &rel, &a.local_order())
            .ok_or_else(|| GndError::DivisibilityViolated(format!("f(y′) = {v} is not divisible by d^(e+1)")))?;
        let shift: Vec<Polynomial> = prob.y_approx.iter().map(emb).collect();
        let mut q = Polynomial::zero(&ring);
        for (alpha, c) in taylor_coefficients(fi, &ys, &shift, &ring) {
            let k: u32 = alpha.iter().sum();
            if k < 2 {
                continue;
            }
            let mut mono = Polynomial::one(&ring);
            for (v, &ak) in gt.iter().zip(&alpha) {
                mono = &mono * &v.pow(ak);
            }
            q = &q + &(&(&c * &d.pow(s.e * (k - 2))) * &mono);
        }
        let bn = emb(&bi.num);
        let bd = emb(&bi.den);
        let gi = &(&bn + &(&bd * &t[i])) + &(&(&d.pow(s.e - 1) * &bd) * &q);
        g.push(red(&gi));
    }
    Ok((work, h, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::parse_problem;

    #[test]
    fn nu_examples() {
        assert_eq!(nu_bound(1, 2, 5), 11);
        assert_eq!(nu_bound(0, 0, 1), 2);
        assert_eq!(nu_bound(3, 1, 7), 15);
    }

    fn problem(src: &str, rho: u32, c: u32, target: u32) -> LiftingProblem {
        let p = parse_problem(src).unwrap();
        LiftingProblem::from_problem(&p, &[], rho, c, target).unwrap()
    }

    const SQRT: &str = "ring { field Q; vars x; }\n\
        algebra { vars Y; relations Y^2 - 1 - x; }\n\
        morphism { precision 2; Y = 1; }\n";

    #[test]
    fn square_root_of_one_plus_x() {
        let prob = problem(SQRT, 0, 1, 30);
        let rep = newton_lift(&prob).unwrap();
        assert_eq!(rep.precision, 30);
        assert!(rep.gains.windows(2).all(|w| w[0] < w[1]));
        let ctx = context(&prob.local);
        let sq = ctx.mul(&rep.y[0], &rep.y[0]);
        let want = ctx.jet(&gnd_algebra::parse::parse_poly(prob.local.ring(), "1 + x").unwrap(), 30);
        assert_eq!(sq, want);
        assert_eq!(rep.agreement, 1);
    }

    #[test]
    fn exact_solution_is_a_fixed_point() {
        let src = "ring { field Q; vars x; }\nalgebra { vars Y; relations Y - x; }\nmorphism { precision 2; Y = x; }\n";
        let rep = newton_lift(&problem(src, 0, 1, 10)).unwrap();
        assert!(rep.gains.is_empty());
        assert_eq!(rep.agreement, 10);
    }

    #[test]
    fn unit_ideal_hypothesis() {
        let src = "ring { field Q; vars x1; }\nalgebra { vars Y1; relations Y1 - x1; }\nmorphism { precision 1; Y1 = 0; }\n";
        assert!(check_hypothesis(&problem(src, 0, 1, 4)).unwrap());
    }

    #[test]
    fn order_obstruction() {
        // d = 2x: the Jacobian values (2x) cannot reach (x)^0.
        let src = "ring { field Q; vars x; }\nalgebra { vars Y; relations Y^2 - x^2; }\nmorphism { precision 2; Y = x; }\n";
        assert!(!check_hypothesis(&problem(src, 0, 1, 4)).unwrap());
        assert!(check_hypothesis(&problem(src, 1, 1, 4)).unwrap());
    }

    #[test]
    fn perturbation_is_recovered() {
        let src = "ring { field Q; vars x; }\nalgebra { vars Y; relations Y^2 - (1 + x)^2; }\nmorphism { precision 2; Y = 1; }\n";
        let prob = problem(src, 1, 1, 20);
        let ring = prob.local.ring().clone();
        let y2 = gnd_algebra::parse::parse_poly(&ring, "1 + x + x^7").unwrap();
        let rep = strong_approx_decide(&prob, &[y2]).unwrap();
        assert_eq!(rep.check_precision, 6);
        let exact = gnd_algebra::parse::parse_poly(&ring, "1 + x").unwrap();
        assert_eq!(rep.lift.y[0].rep, exact);
        assert!(rep.agreement_with_approx >= 1);
    }

    #[test]
    fn perturbation_must_agree_below_rho() {
        let src = "ring { field Q; vars x; }\nalgebra { vars Y; relations Y^2 - (1 + x)^2; }\nmorphism { precision 2; Y = 1; }\n";
        let prob = problem(src, 1, 1, 20);
        let y2 = gnd_algebra::parse::parse_poly(prob.local.ring(), "-1 - x").unwrap();
        assert!(matches!(
            strong_approx_decide(&prob, &[y2]),
            Err(GndError::PreconditionFailed(_))
        ));
    }
}
