//! Desingularization of `v: B → A′`, one trace record per algorithm line.

use std::fmt::Write as _;
use std::time::Instant;

use gnd_algebra::matrix::{combinations, jacobian};
use gnd_algebra::{BlockRole, Ideal, PolyMatrix, Polynomial, TermOrder, Var};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{build_d, SmoothBaseD};
use crate::elkik::{elkik_ideal, fresh_name, subsystem_colon, sym_algebra_reduction, AlgebraPresentation};
use crate::error::{GndError, Result};
use crate::jet::{Jet, JetContext};
use crate::local::{active_element, all_monomials, check_precision_bound, compute_e, LocalRingSpec};
use crate::problem::Problem;
use crate::smooth::{
    build_hg, factor_morphism, localize_smooth, FactorizationReport, SmoothOutput, SmoothingCertificate,
    SmoothingInput,
};
use crate::trace::{Trace, TraceRecord, TraceValue};

pub const DEFAULT_MAX_SUBSET: usize = 3;
pub const DEFAULT_SEED: u64 = 1;
/// Random completions tried in [`complete_h`].
pub const COMPLETION_ATTEMPTS: usize = 100;
/// Random linear combinations tried in [`find_f_r`].
pub const COMBINATION_ATTEMPTS: usize = 100;

/// Trace labels for algorithm lines 1 to 19.
pub const LABELS: [&str; 19] = [
    "minimal_primes",
    "coefficient_extension",
    "elkik_ideal",
    "symmetric_algebra",
    "subsystem",
    "completion",
    "colon_element",
    "contraction",
    "dimension_one",
    "active_element",
    "exponent",
    "precision_check",
    "divisions",
    "adjugate",
    "tangent_relations",
    "smooth_relations",
    "minor",
    "multiplier",
    "output",
];

fn record(line: u32) -> TraceRecord {
    TraceRecord::new(line, LABELS[line as usize - 1])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesingOptions {
    pub seed: u64,
    pub max_subset: usize,
}

impl Default for DesingOptions {
    fn default() -> Self {
        DesingOptions {
            seed: DEFAULT_SEED,
            max_subset: DEFAULT_MAX_SUBSET,
        }
    }
}

impl DesingOptions {
    pub fn from_problem(p: &Problem) -> Self {
        DesingOptions {
            seed: p.seed.unwrap_or(DEFAULT_SEED),
            max_subset: p.max_subset.unwrap_or(DEFAULT_MAX_SUBSET),
        }
    }
}

/// Membership tests `v ∈ P_i + (x)^N` for the minimal primes.
pub struct PrimeTests {
    ideals: Vec<Ideal>,
    order: TermOrder,
}

impl PrimeTests {
    pub fn new(primes: &[Ideal], ctx: &JetContext, value_relations: &[Polynomial], n: u32) -> Self {
        let ring = ctx.ring();
        let cut = all_monomials(ring, ctx.base(), n);
        let ideals = primes
            .iter()
            .map(|p| {
                let mut gens: Vec<Polynomial> = p.gens().iter().map(|g| g.embed(ring).expect("base variables")).collect();
                gens.extend(value_relations.iter().cloned());
                gens.extend(cut.iter().cloned());
                Ideal::new(ring, gens)
            })
            .collect();
        PrimeTests {
            ideals,
            order: TermOrder::degrevlex(ring.nvars()),
        }
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn avoids(&self, i: usize, v: &Jet) -> bool {
        !self.ideals[i].contains(&v.rep, &self.order)
    }

    pub fn avoids_all(&self, v: &Jet) -> bool {
        (0..self.len()).all(|i| self.avoids(i, v))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SubsystemOrigin {
    Subset(Vec<usize>),
    Combination(Vec<i64>),
}

#[derive(Debug, Clone)]
pub struct Subsystem {
    pub f: Vec<Polynomial>,
    pub origin: SubsystemOrigin,
    pub colon: Vec<Polynomial>,
    pub minors: Vec<Polynomial>,
    pub r_elem: Polynomial,
}

fn nonzero_relations(b: &AlgebraPresentation) -> Vec<Polynomial> {
    let base = b.base_ideal();
    let dp = TermOrder::degrevlex(b.ring.nvars());
    b.relations.iter().filter(|g| !base.contains(g, &dp)).cloned().collect()
}

#[allow(clippy::too_many_arguments)]
fn try_subsystem(
    b: &AlgebraPresentation,
    f: Vec<Polynomial>,
    origin: SubsystemOrigin,
    ctx: &JetContext,
    y: &[(String, Jet)],
    tests: &PrimeTests,
    prec: u32,
    seen: &mut [bool],
) -> Result<Option<Subsystem>> {
    let r = f.len();
    let colon = subsystem_colon(b, &f).canonical_gens();
    let minors: Vec<Polynomial> = jacobian(&f, &b.ring, &b.unknowns())
        .minors(r)?
        .into_iter()
        .filter(|m| !m.is_zero())
        .collect();
    let vc: Vec<Jet> = colon.iter().map(|c| ctx.eval(c, y, prec)).collect();
    let vm: Vec<Jet> = minors.iter().map(|m| ctx.eval(m, y, prec)).collect();
    let mut pass = true;
    for (i, s) in seen.iter_mut().enumerate().take(tests.len()) {
        let ok = vc
            .iter()
            .any(|c| vm.iter().any(|m| tests.avoids(i, &ctx.mul(c, m))));
        *s |= ok;
        pass &= ok;
    }
    if !pass {
        return Ok(None);
    }
    let mut r_elem = colon
        .iter()
        .zip(&vc)
        .find(|(_, v)| tests.avoids_all(v))
        .map(|(c, _)| c.clone());
    if r_elem.is_none() {
        'pairs: for i in 0..colon.len() {
            for j in i + 1..colon.len() {
                let v = ctx.add(&vc[i], &vc[j]);
                if tests.avoids_all(&v) {
                    r_elem = Some(&colon[i] + &colon[j]);
                    break 'pairs;
                }
            }
        }
    }
    Ok(r_elem.map(|r_elem| Subsystem {
        f,
        origin,
        colon,
        minors,
        r_elem,
    }))
}

/// Lines 5 and 7: the first subsystem, smallest first, then linear
/// combinations (all ones, then seeded), whose colon ideal times minors
/// avoids every minimal prime at precision `N`, together with `R`.
pub fn find_f_r<G: Rng>(
    b: &AlgebraPresentation,
    ctx: &JetContext,
    y: &[(String, Jet)],
    tests: &PrimeTests,
    prec: u32,
    cap: usize,
    rng: &mut G,
) -> Result<Subsystem> {
    let rels = nonzero_relations(b);
    let n = b.unknowns().len();
    let mut seen = vec![false; tests.len()];
    if rels.is_empty() {
        return Err(GndError::InvalidInput("the algebra has no relations".into()));
    }
    for r in 1..=rels.len().min(n).min(cap) {
        for idx in combinations(rels.len(), r) {
            let f = idx.iter().map(|&i| rels[i].clone()).collect();
            if let Some(s) = try_subsystem(b, f, SubsystemOrigin::Subset(idx), ctx, y, tests, prec, &mut seen)? {
                return Ok(s);
            }
        }
    }
    if rels.len() > 1 {
        for attempt in 0..=COMBINATION_ATTEMPTS {
            let coeffs: Vec<i64> = if attempt == 0 {
                vec![1; rels.len()]
            } else {
                (0..rels.len()).map(|_| rng.gen_range(-3..=3)).collect()
            };
            let mut f = Polynomial::zero(&b.ring);
            for (c, g) in coeffs.iter().zip(&rels) {
                f = &f + &g.scale(&gnd_algebra::poly::q(*c, 1));
            }
            if f.is_zero() {
                continue;
            }
            let origin = SubsystemOrigin::Combination(coeffs);
            if let Some(s) = try_subsystem(b, vec![f], origin, ctx, y, tests, prec, &mut seen)? {
                return Ok(s);
            }
        }
    }
    let failing: Vec<String> = seen
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| format!("P{}", i + 1))
        .collect();
    Err(GndError::ConditionStarStarFailed(if failing.is_empty() {
        "every prime is avoided by some subsystem but no single subsystem avoids all with one colon element".into()
    } else {
        format!("no subsystem avoids {} modulo (x)^{prec}; a larger N may help", failing.join(", "))
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Completion {
    Unchanged,
    Border,
    Random { attempt: usize, rows: Vec<Vec<i64>> },
}

/// Line 6: extends `∂f/∂Y` to a square matrix whose determinant avoids
/// every minimal prime, trying `(0 | Id)` first and then seeded rows.
pub fn complete_h<G: Rng>(
    f: &[Polynomial],
    b: &AlgebraPresentation,
    ctx: &JetContext,
    y: &[(String, Jet)],
    tests: &PrimeTests,
    prec: u32,
    rng: &mut G,
) -> Result<(PolyMatrix, Completion)> {
    let ys = b.unknowns();
    let n = ys.len();
    let r = f.len();
    let top = jacobian(f, &b.ring, &ys);
    if r == n {
        return Ok((top, Completion::Unchanged));
    }
    let build = |rows: &[Vec<i64>]| {
        let mut all: Vec<Vec<Polynomial>> = (0..r).map(|i| top.row(i)).collect();
        for row in rows {
            all.push(row.iter().map(|&c| Polynomial::from_int(&b.ring, c)).collect());
        }
        PolyMatrix::from_rows(&b.ring, all)
    };
    let admissible = |m: &PolyMatrix| -> Result<bool> {
        let det = m.det()?;
        Ok(!det.is_zero() && tests.avoids_all(&ctx.eval(&det, y, prec)))
    };
    let border: Vec<Vec<i64>> = (0..n - r)
        .map(|k| (0..n).map(|j| i64::from(j == r + k)).collect())
        .collect();
    let m = build(&border);
    if admissible(&m)? {
        return Ok((m, Completion::Border));
    }
    for attempt in 1..=COMPLETION_ATTEMPTS {
        let rows: Vec<Vec<i64>> = (0..n - r)
            .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let m = build(&rows);
        if admissible(&m)? {
            return Ok((m, Completion::Random { attempt, rows }));
        }
    }
    Err(GndError::CompletionFailed(format!(
        "no completion among {COMPLETION_ATTEMPTS} seeded draws has determinant outside every minimal prime"
    )))
}

/// State after lines 8–10.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub b: AlgebraPresentation,
    pub f: Vec<Polynomial>,
    pub h_matrix: PolyMatrix,
    pub r_elem: Polynomial,
    pub p_elem: Polynomial,
    /// `d` in the base ring.
    pub d: Polynomial,
    pub jets: Vec<(String, Jet)>,
    /// Generators of `(P) ∩ A`, reduced modulo `J`.
    pub contraction: Vec<Polynomial>,
    pub dimension: i64,
    /// Set when the dimension-one branch ran.
    pub adjoined: Option<Adjoined>,
    pub z: Polynomial,
}

#[derive(Debug, Clone)]
pub struct Adjoined {
    pub variable: String,
    pub relation: Polynomial,
    pub d_prime: Polynomial,
}

fn contraction(a: &LocalRingSpec, b: &AlgebraPresentation, p: &Polynomial) -> Vec<Polynomial> {
    let ideal = b.ideal().with(std::slice::from_ref(p));
    let elim = ideal.eliminate(&b.unknowns());
    let j = a.relations();
    let dp = a.global_order();
    let mut out = Vec::new();
    for g in elim.canonical_gens() {
        let ga = g.embed(a.ring()).expect("eliminated polynomial in the base variables");
        let nf = j.normal_form(&ga, &dp);
        if !nf.is_zero() && !out.contains(&nf) {
            out.push(nf);
        }
    }
    out
}

/// Lines 8–10.
#[allow(clippy::too_many_arguments)]
pub fn mm_primary_reduction<G: Rng>(
    a: &LocalRingSpec,
    b: &AlgebraPresentation,
    sub: &Subsystem,
    h_matrix: &PolyMatrix,
    jets: &[(String, Jet)],
    ctx: &JetContext,
    primes: &[Ideal],
    prec: u32,
    rng: &mut G,
) -> Result<Reduction> {
    let det = h_matrix.det()?;
    let p_elem = &sub.r_elem * &det;
    let pa = contraction(a, b, &p_elem);
    let dimension = a.quotient_dimension(&pa);
    let ys = b.unknowns();
    let dp = TermOrder::degrevlex(b.ring.nvars());
    if dimension <= 0 {
        let dp_a = a.global_order();
        let direct = if p_elem.uses_any(&ys) {
            None
        } else {
            let pa_elem = p_elem.embed(a.ring())?;
            let active = !a.is_zero(&pa_elem) && primes.iter().all(|q| !q.contains(&pa_elem, &dp_a));
            active.then_some(pa_elem)
        };
        let d = match direct {
            Some(d) => d,
            None => {
                let target = if pa.is_empty() { vec![Polynomial::one(a.ring())] } else { pa.clone() };
                active_element(&target, primes, &[], rng)?
            }
        };
        let db = d.embed(&b.ring)?;
        let (z, r_elem, p_new) = if db == p_elem {
            (Polynomial::one(&b.ring), sub.r_elem.clone(), p_elem.clone())
        } else {
            let mut gens = vec![p_elem.clone()];
            gens.extend(b.relations.iter().cloned());
            gens.extend(b.base_relations.iter().cloned());
            let w = Ideal::new(&b.ring, gens).lift(&db, &dp)?;
            let inv = w.unit.constant_term().recip();
            // Any representative modulo I + J will do; the normal form is much smaller.
            let z = b.ideal().normal_form(&w.quotients[0].scale(&inv), &dp);
            let r_elem = &z * &sub.r_elem;
            let p_new = &r_elem * &det;
            (z, r_elem, p_new)
        };
        if !b.ideal().contains(&(&p_new - &db), &dp) {
            return Err(GndError::CertificateFailed(format!("d = {d} is not congruent to P = {p_new}")));
        }
        return Ok(Reduction {
            b: b.clone(),
            f: sub.f.clone(),
            h_matrix: h_matrix.clone(),
            r_elem,
            p_elem: p_new,
            d,
            jets: jets.to_vec(),
            contraction: pa,
            dimension,
            adjoined: None,
            z,
        });
    }
    dimension_one(a, b, sub, h_matrix, &p_elem, &det, jets, ctx, primes, prec, pa, dimension)
}

#[allow(clippy::too_many_arguments)]
fn dimension_one(
    a: &LocalRingSpec,
    b: &AlgebraPresentation,
    sub: &Subsystem,
    h_matrix: &PolyMatrix,
    p_elem: &Polynomial,
    det: &Polynomial,
    jets: &[(String, Jet)],
    ctx: &JetContext,
    primes: &[Ideal],
    prec: u32,
    pa: Vec<Polynomial>,
    dimension: i64,
) -> Result<Reduction> {
    let vp = ctx.eval(p_elem, jets, prec);
    let order = ctx
        .order(&vp)
        .ok_or_else(|| GndError::ActiveElementNotFound("v(P) vanishes at this precision".into()))?;
    let dp_a = a.global_order();
    let base: Vec<usize> = (0..a.nvars()).collect();
    let mut found = None;
    'search: for k in order..prec {
        for cand in all_monomials(a.ring(), &base, k) {
            if primes.iter().any(|p| p.contains(&cand, &dp_a)) {
                continue;
            }
            if let Ok(q) = ctx.divide(&ctx.jet(&cand, prec), &vp) {
                found = Some((cand, q));
                break 'search;
            }
        }
    }
    let (d_prime, y_new) = found.ok_or_else(|| {
        GndError::ActiveElementNotFound(format!("no active monomial lies in (v(P)) below degree {prec}"))
    })?;

    let name = fresh_name(&b.ring, "Y", b.unknowns().len() + 1);
    let ring = b.ring.extend(&[Var {
        name: name.clone(),
        role: BlockRole::Algebra,
    }])?;
    let emb = |p: &Polynomial| p.embed(&ring).expect("ring extension");
    let ynew = Polynomial::var(&ring, ring.nvars() - 1);
    let relation = &(&emb(p_elem) * &ynew) - &emb(&d_prime);
    let mut nb = AlgebraPresentation {
        ring: ring.clone(),
        relations: b.relations.iter().map(emb).collect(),
        base_relations: b.base_relations.iter().map(emb).collect(),
        multipliers: b.multipliers.iter().map(emb).collect(),
    };
    nb.relations.push(relation.clone());
    let ys = nb.unknowns();
    let n = ys.len() - 1;
    let r = sub.f.len();
    let mut f: Vec<Polynomial> = sub.f.iter().map(emb).collect();
    f.push(relation.clone());
    let grad = jacobian(std::slice::from_ref(&relation), &ring, &ys).row(0);
    let old_row = |i: usize| -> Vec<Polynomial> {
        let mut row: Vec<Polynomial> = h_matrix.row(i).iter().map(emb).collect();
        row.push(Polynomial::zero(&ring));
        row
    };
    let mut rows: Vec<Vec<Polynomial>> = (0..r).map(old_row).collect();
    rows.push(grad);
    rows.extend((r..n).map(old_row));
    let mut hm = PolyMatrix::from_rows(&ring, rows);
    let want = &emb(det) * &emb(p_elem);
    let got = hm.det()?;
    if got != want {
        if got == -&want && n > r {
            let last: Vec<Polynomial> = hm.row(n).iter().map(|p| -p).collect();
            for (j, p) in last.into_iter().enumerate() {
                hm.set(n, j, p);
            }
        } else {
            return Err(GndError::CertificateFailed("enlarged matrix has the wrong determinant".into()));
        }
    }
    let r_elem = &emb(&sub.r_elem) * &ynew.pow(2);
    let p_new = &r_elem * &hm.det()?;
    let d = d_prime.pow(2);
    let db = d.embed(&ring)?;
    if !nb.ideal().contains(&(&p_new - &db), &TermOrder::degrevlex(ring.nvars())) {
        return Err(GndError::CertificateFailed("d′² is not congruent to the enlarged P".into()));
    }
    let mut out_jets = jets.to_vec();
    out_jets.push((name.clone(), y_new));
    Ok(Reduction {
        b: nb,
        f,
        h_matrix: hm,
        r_elem,
        p_elem: p_new,
        d,
        jets: out_jets,
        contraction: pa,
        dimension,
        adjoined: Some(Adjoined {
            variable: name,
            relation,
            d_prime,
        }),
        z: Polynomial::one(&ring),
    })
}

pub struct DesingResult {
    pub trace: Trace,
    pub seed: u64,
    pub local: LocalRingSpec,
    pub primes: Vec<Ideal>,
    /// `B` after the reductions of lines 4 and 9.
    pub algebra: AlgebraPresentation,
    pub dbase: SmoothBaseD,
    pub ctx: JetContext,
    pub subsystem: Subsystem,
    pub completion: Completion,
    pub certificate: SmoothingCertificate,
    pub output: SmoothOutput,
    /// `y′` per unknown of `B`.
    pub jets: Vec<(String, Jet)>,
    pub precision: u32,
    pub factorization: Option<FactorizationReport>,
}

impl DesingResult {
    /// Jets `y′` in the order of the unknowns of the output.
    pub fn ordered_jets(&self) -> Vec<Jet> {
        let ring = &self.certificate.work.ring;
        self.certificate
            .work
            .y
            .iter()
            .map(|&i| {
                self.jets
                    .iter()
                    .find(|(n, _)| n == ring.name(i))
                    .map(|(_, j)| j.clone())
                    .expect("jet for every unknown")
            })
            .collect()
    }

    /// Checks the factorization against higher-precision jets of the
    /// original unknowns; added unknowns take the jets of `y′`.
    pub fn factor(&self, verify: &[(String, Polynomial)], prec: u32) -> Result<FactorizationReport> {
        let ring = &self.certificate.work.ring;
        let low = self.ordered_jets();
        let high: Vec<Jet> = self
            .certificate
            .work
            .y
            .iter()
            .zip(&low)
            .map(|(&i, lo)| match verify.iter().find(|(n, _)| n == ring.name(i)) {
                Some((_, p)) => self.ctx.jet(p, prec),
                None => lo.clone(),
            })
            .collect();
        factor_morphism(&self.certificate, &self.output, &self.ctx, &low, &high)
    }

    pub fn output_text(&self) -> String {
        let mut s = String::new();
        let ring = &self.output.presentation.ring;
        let names: Vec<&str> = (0..ring.nvars()).map(|i| ring.name(i)).collect();
        let _ = writeln!(s, "output:");
        let _ = writeln!(s, "  variables: {}", names.join(" "));
        if !self.output.presentation.base_relations.is_empty() {
            let base: Vec<String> = self.output.presentation.base_relations.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(s, "  base relations: {}", base.join(", "));
        }
        let _ = writeln!(s, "  relations:");
        for p in &self.output.presentation.relations {
            let _ = writeln!(s, "    {p}");
        }
        let _ = writeln!(s, "  simplified:");
        for p in &self.output.simplified {
            let _ = writeln!(s, "    {p}");
        }
        let _ = writeln!(s, "  certificate:");
        for (name, ok) in &self.output.report.checks {
            let _ = writeln!(s, "    {name}: {}", if *ok { "ok" } else { "FAILED" });
        }
        if let Some(f) = &self.factorization {
            let _ = writeln!(s, "  factorization at precision {}:", f.precision);
            for (name, ok) in &f.checks {
                let _ = writeln!(s, "    {name}: {}", if *ok { "ok" } else { "FAILED" });
            }
        }
        s
    }
}

struct Clock {
    start: Instant,
}

impl Clock {
    fn new() -> Self {
        Clock { start: Instant::now() }
    }

    fn stamp(&mut self, trace: &mut Trace, mut r: TraceRecord) {
        r.elapsed = self.start.elapsed();
        trace.push(r);
        self.start = Instant::now();
    }
}

fn reduced_base(a: &LocalRingSpec, gens: &[Polynomial]) -> Vec<Polynomial> {
    let dp = a.global_order();
    let mut out = Vec::new();
    for g in gens {
        let nf = a.relations().normal_form(g, &dp);
        if !nf.is_zero() && !out.contains(&nf) {
            out.push(nf);
        }
    }
    out
}

pub fn desingularize(problem: &Problem, opts: &DesingOptions) -> Result<DesingResult> {
    desingularize_traced(problem, opts, &mut Trace::default())
}

/// As [`desingularize`], recording into `trace` so that the lines reached
/// before an error remain available.
pub fn desingularize_traced(problem: &Problem, opts: &DesingOptions, trace: &mut Trace) -> Result<DesingResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut clock = Clock::new();
    let a = problem.local_spec()?;
    let n_input = problem
        .precision
        .ok_or_else(|| GndError::InvalidInput("the problem has no morphism section".into()))?;

    // 1
    let primes = a.minimal_primes()?;
    let mut rec = record(1);
    for (i, p) in primes.iter().enumerate() {
        rec = rec.value(&format!("P{}", i + 1), TraceValue::ideal(p));
    }
    clock.stamp(trace, rec);

    // 2
    let ext = problem.coeff_ext()?;
    let dbase = build_d(&ext, &a)?;
    let mut rec = record(2);
    if dbase.is_base_ring(&a) && ext.relations().is_empty() && ext.is_trivial() {
        rec = rec.value("D", TraceValue::Text("A".into()));
    } else {
        let u = ext.ring().names_with_role(BlockRole::Coefficient).join(", ");
        rec = rec
            .value("D", TraceValue::Text(format!("(A[{u}]/(w))_(ρτγ)")))
            .value("w", TraceValue::polys(&ext.subsystem()))
            .value("ρ", TraceValue::poly(ext.minor()))
            .value("τ", TraceValue::poly(ext.tau()))
            .value("γ", TraceValue::poly(ext.gamma()));
    }
    clock.stamp(trace, rec);

    let ctx = JetContext::new(&dbase.ring, dbase.base_vars(), dbase.value_relations.clone());
    let mut jets: Vec<(String, Jet)> = problem
        .jet_polys()
        .into_iter()
        .map(|(n, p)| {
            let j = ctx.jet(&p, n_input);
            (n, j)
        })
        .collect();
    let mut b = problem.algebra();

    // 3
    let elkik = elkik_ideal(&b, opts.max_subset)?;
    let h_ideal = elkik.ideal(&b.ring);
    let hna = reduced_base(&a, &elkik.contraction.iter().map(|g| g.embed(a.ring())).collect::<std::result::Result<Vec<_>, _>>()?);
    let rad: Vec<Polynomial> = b
        .ring
        .indices_with_role(BlockRole::Base)
        .into_iter()
        .map(|i| Polynomial::var(&b.ring, i))
        .filter(|x| h_ideal.radical_contains(x))
        .collect();
    let mut rec = record(3)
        .value("H", TraceValue::polys(&h_ideal.canonical_gens()))
        .value("H∩A", TraceValue::polys(&hna))
        .value("√H ⊇", TraceValue::polys(&rad));
    if elkik.truncated {
        rec = rec.note(format!("subsystems capped at size {}", opts.max_subset));
    }
    clock.stamp(trace, rec);

    // 4
    let dim_h = a.quotient_dimension(&hna);
    let mut rec = record(4).value("dim(A/H∩A)", TraceValue::Int(dim_h));
    if dim_h == 1 {
        let (nb, nj) = sym_algebra_reduction(&b, &jets, &ctx)?;
        rec = rec.note(format!(
            "B := S_B(I/I²) with slack variables, unknowns {}",
            nb.unknown_names().join(" ")
        ));
        b = nb;
        jets = nj;
    } else {
        rec = rec.note("is not true");
    }
    clock.stamp(trace, rec);

    let prec = jets.iter().map(|(_, j)| j.prec).min().unwrap_or(n_input);
    let tests = PrimeTests::new(&primes, &ctx, &dbase.value_relations, prec);

    // 5, 7
    let sub = find_f_r(&b, &ctx, &jets, &tests, prec, opts.max_subset, &mut rng)?;
    let mut rec = record(5).value("f", TraceValue::polys(&sub.f)).value("r", TraceValue::Int(sub.f.len() as i64));
    if let SubsystemOrigin::Combination(c) = &sub.origin {
        rec = rec.note(format!("linear combination {c:?} of the relations"));
    }
    clock.stamp(trace, rec);

    // 6
    let (h_matrix, completion) = complete_h(&sub.f, &b, &ctx, &jets, &tests, prec, &mut rng)?;
    let note = match &completion {
        Completion::Unchanged => "r = n".to_string(),
        Completion::Border => "completed by (0 | Id)".to_string(),
        Completion::Random { attempt, .. } => format!("completed by random rows, draw {attempt}"),
    };
    let rec = record(6)
        .value("H", TraceValue::matrix(&h_matrix))
        .value("det H", TraceValue::poly(&h_matrix.det()?))
        .value("seed", TraceValue::Int(opts.seed as i64))
        .note(note);
    clock.stamp(trace, rec);

    let rec = record(7).value("R", TraceValue::poly(&sub.r_elem));
    clock.stamp(trace, rec);

    // 8, 9, 10
    let red = mm_primary_reduction(&a, &b, &sub, &h_matrix, &jets, &ctx, &primes, prec, &mut rng)?;
    let p_before = &sub.r_elem * &h_matrix.det()?;
    let rec = record(8)
        .value("P", TraceValue::poly(&p_before))
        .value("(P)∩A", TraceValue::polys(&red.contraction));
    clock.stamp(trace, rec);
    let mut rec = record(9).value("dim(A/(P)∩A)", TraceValue::Int(red.dimension));
    rec = match &red.adjoined {
        None => rec.note("is not true"),
        Some(adj) => rec
            .value("adjoined", TraceValue::Text(adj.variable.clone()))
            .value("relation", TraceValue::poly(&adj.relation))
            .value("d′", TraceValue::poly(&adj.d_prime))
            .note("experimental branch"),
    };
    clock.stamp(trace, rec);
    let mut rec = record(10).value("d", TraceValue::poly(&red.d));
    if !red.z.is_one() {
        rec = rec.value("z", TraceValue::poly(&red.z)).value("R", TraceValue::poly(&red.r_elem));
    }
    rec = rec.value("P", TraceValue::poly(&red.p_elem));
    clock.stamp(trace, rec);

    let b = red.b.clone();
    let jets = red.jets.clone();

    // 11
    let (e, _) = compute_e(&red.d, &a)?;
    clock.stamp(trace, record(11).value("e", TraceValue::Int(e as i64)));

    // 12
    let prec = jets.iter().map(|(_, j)| j.prec).min().unwrap_or(0);
    let ok = check_precision_bound(prec, &red.d, e, &a);
    let rec = record(12).value("N", TraceValue::Int(prec as i64)).value("(x)^N ⊆ (d^(2e+1))", TraceValue::Bool(ok));
    clock.stamp(trace, rec);
    if !ok {
        return Err(GndError::BoundTooSmall);
    }

    // 13..16
    let y_shift: Vec<Polynomial> = b
        .unknown_names()
        .iter()
        .map(|n| {
            jets.iter()
                .find(|(m, _)| m == n)
                .map(|(_, j)| j.rep.clone())
                .ok_or_else(|| GndError::InvalidInput(format!("missing jet for {n}")))
        })
        .collect::<Result<_>>()?;
    let input = SmoothingInput {
        f: red.f.clone(),
        h_matrix: red.h_matrix.clone(),
        r_elem: red.r_elem.clone(),
        p_elem: red.p_elem.clone(),
        d: red.d.embed(&b.ring)?,
        e,
        y_shift,
    };
    let cert = build_hg(&input, &b, &dbase)?;
    let fr = |f: &crate::local::Frac| TraceValue::Text(f.to_string());
    let rec = record(13)
        .value("s", fr(&cert.s))
        .value("b", TraceValue::Ideal(cert.b.iter().map(|x| x.to_string()).collect()));
    clock.stamp(trace, rec);
    clock.stamp(trace, record(14).value("G", TraceValue::matrix(&cert.g_matrix)));
    clock.stamp(trace, record(15).value("h", TraceValue::polys(&cert.h)));
    let rec = record(16)
        .value("p", TraceValue::Int(cert.p as i64))
        .value("Q", TraceValue::polys(&cert.q))
        .value("g", TraceValue::polys(&cert.g));
    clock.stamp(trace, rec);

    // 17..19
    let output = localize_smooth(&cert, &b, &dbase)?;
    clock.stamp(trace, record(17).value("s′", fr(&cert.s_prime)));
    clock.stamp(trace, record(18).value("s″", fr(&cert.s_second)));
    let rec = record(19)
        .value("relations", TraceValue::polys(&output.simplified))
        .value("inverted", TraceValue::poly(&output.multiplier))
        .value("certified", TraceValue::Bool(output.report.all_pass()));
    clock.stamp(trace, rec);

    let mut result = DesingResult {
        trace: trace.clone(),
        seed: opts.seed,
        local: a,
        primes,
        algebra: b,
        dbase,
        ctx,
        subsystem: sub,
        completion,
        certificate: cert,
        output,
        jets,
        precision: prec,
        factorization: None,
    };
    let verify = problem.verify_polys();
    if !verify.is_empty() {
        let vprec = problem.verify_precision.unwrap_or(2 * n_input);
        result.factorization = Some(result.factor(&verify, vprec)?);
    }
    Ok(result)
}
