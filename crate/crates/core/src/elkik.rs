//! Presentations `B = A[Y]/I`, the Elkik ideal `H_{B/A}` and the
//! symmetric-algebra reduction for the case `dim A/(H ∩ A) = 1`.

use gnd_algebra::matrix::{combinations, jacobian};
use gnd_algebra::{BlockRole, Ideal, Polynomial, RingRef, TermOrder, Var};

use crate::error::{GndError, Result};
use crate::jet::{Jet, JetContext};

/// `A[Y]/(relations + base_relations)`, localized at `multipliers`.
#[derive(Debug, Clone)]
pub struct AlgebraPresentation {
    pub ring: RingRef,
    pub relations: Vec<Polynomial>,
    pub base_relations: Vec<Polynomial>,
    pub multipliers: Vec<Polynomial>,
}

impl AlgebraPresentation {
    pub fn new(ring: &RingRef, relations: Vec<Polynomial>, base_relations: Vec<Polynomial>) -> Self {
        AlgebraPresentation {
            ring: ring.clone(),
            relations,
            base_relations,
            multipliers: Vec::new(),
        }
    }

    /// Indices of the unknowns `Y`: algebra and slack variables.
    pub fn unknowns(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| matches!(self.ring.role(i), BlockRole::Algebra | BlockRole::Slack))
            .collect()
    }

    pub fn unknown_names(&self) -> Vec<String> {
        self.unknowns()
            .into_iter()
            .map(|i| self.ring.name(i).to_string())
            .collect()
    }

    pub fn base_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| matches!(self.ring.role(i), BlockRole::Base | BlockRole::Coefficient))
            .collect()
    }

    /// `I + J`.
    pub fn ideal(&self) -> Ideal {
        let mut g = self.relations.clone();
        g.extend(self.base_relations.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    /// `J` alone, in the algebra ring.
    pub fn base_ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.base_relations.clone())
    }

    /// The largest total degree of a relation in the unknowns.
    pub fn degree_in_unknowns(&self) -> u64 {
        let y = self.unknowns();
        self.relations.iter().filter_map(|f| f.degree_in(&y)).max().unwrap_or(0)
    }
}

/// Contribution of one subsystem to the Elkik ideal.
#[derive(Debug, Clone)]
pub struct SubsetContribution {
    pub indices: Vec<usize>,
    pub colon: Vec<Polynomial>,
    pub minors: Vec<Polynomial>,
}

#[derive(Debug, Clone)]
pub struct ElkikData {
    pub subsets: Vec<SubsetContribution>,
    /// Generators of `H_{B/A}`, together with `I` and `J`.
    pub generators: Vec<Polynomial>,
    /// Generators of `H_{B/A} ∩ A` in the algebra ring.
    pub contraction: Vec<Polynomial>,
    /// Subsystem sizes stopped at the cap.
    pub truncated: bool,
}

impl ElkikData {
    pub fn ideal(&self, ring: &RingRef) -> Ideal {
        Ideal::new(ring, self.generators.clone())
    }
}

/// `((f) + J) : (I + J)`, skipping generators already in `(f) + J`.
pub fn subsystem_colon(b: &AlgebraPresentation, f: &[Polynomial]) -> Ideal {
    let mut fg = f.to_vec();
    fg.extend(b.base_relations.iter().cloned());
    let fi = Ideal::new(&b.ring, fg);
    let dp = TermOrder::degrevlex(b.ring.nvars());
    let outside: Vec<Polynomial> = b
        .relations
        .iter()
        .filter(|g| !fi.contains(g, &dp))
        .cloned()
        .collect();
    if outside.is_empty() {
        return Ideal::unit(&b.ring);
    }
    fi.quotient(&Ideal::new(&b.ring, outside))
}

/// `H_{B/A} = Σ_f Δ_f ((f) : I)` over subsystems of at most `cap` relations.
pub fn elkik_ideal(b: &AlgebraPresentation, cap: usize) -> Result<ElkikData> {
    let dp = TermOrder::degrevlex(b.ring.nvars());
    let y = b.unknowns();
    let base = b.base_ideal();
    let rels: Vec<Polynomial> = b
        .relations
        .iter()
        .filter(|g| !base.contains(g, &dp))
        .cloned()
        .collect();
    let mut subsets = Vec::new();
    let mut generators = Vec::new();
    let limit = rels.len().min(y.len());
    if rels.is_empty() {
        generators.push(Polynomial::one(&b.ring));
    }
    for r in 1..=limit.min(cap) {
        for idx in combinations(rels.len(), r) {
            let f: Vec<Polynomial> = idx.iter().map(|&i| rels[i].clone()).collect();
            let colon = subsystem_colon(b, &f).canonical_gens();
            let minors: Vec<Polynomial> = jacobian(&f, &b.ring, &y)
                .minors(r)?
                .into_iter()
                .filter(|m| !m.is_zero())
                .collect();
            for c in &colon {
                for m in &minors {
                    generators.push(c * m);
                }
            }
            subsets.push(SubsetContribution {
                indices: idx,
                colon,
                minors,
            });
        }
    }
    generators.extend(b.relations.iter().cloned());
    generators.extend(b.base_relations.iter().cloned());
    let h = Ideal::new(&b.ring, generators.clone());
    let contraction = h.eliminate(&y).canonical_gens();
    Ok(ElkikData {
        subsets,
        generators,
        contraction,
        truncated: limit > cap,
    })
}

pub(crate) fn fresh_name(ring: &RingRef, stem: &str, k: usize) -> String {
    let mut name = format!("{stem}{k}");
    while ring.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

/// Replaces `B` by `S_B(I/I²)` followed by slack variables `Z` killed by
/// the relations `Z_i`, one per unknown of the symmetric algebra. Jets of
/// the new unknowns are zero.
pub fn sym_algebra_reduction(
    b: &AlgebraPresentation,
    jets: &[(String, Jet)],
    ctx: &JetContext,
) -> Result<(AlgebraPresentation, Vec<(String, Jet)>)> {
    let l = b.relations.len();
    if l == 0 {
        return Err(GndError::InvalidInput("no relations to reduce".into()));
    }
    let prec = jets.iter().map(|(_, j)| j.prec).min().unwrap_or(0);
    let mut new_vars: Vec<Var> = Vec::new();
    let mut probe = b.ring.clone();
    for k in 1..=l {
        let name = fresh_name(&probe, "S", k);
        let v = Var {
            name,
            role: BlockRole::Algebra,
        };
        probe = probe.extend(std::slice::from_ref(&v))?;
        new_vars.push(v);
    }
    let nz = b.unknowns().len() + l;
    for k in 1..=nz {
        let name = fresh_name(&probe, "Z", k);
        let v = Var {
            name,
            role: BlockRole::Slack,
        };
        probe = probe.extend(std::slice::from_ref(&v))?;
        new_vars.push(v);
    }
    let ring = probe;
    let emb = |p: &Polynomial| p.embed(&ring).expect("extension");
    let mut all = b.relations.clone();
    all.extend(b.base_relations.iter().cloned());
    let syz = Ideal::syzygies(&all);
    let dp = TermOrder::degrevlex(ring.nvars());
    let i_ext = Ideal::new(&ring, all.iter().map(emb).collect());
    let s: Vec<Polynomial> = (0..l)
        .map(|k| Polynomial::var(&ring, b.ring.nvars() + k))
        .collect();
    let mut relations: Vec<Polynomial> = b.relations.iter().map(emb).collect();
    for row in &syz.syzygies {
        let mut rel = Polynomial::zero(&ring);
        for (a, sk) in row.iter().take(l).zip(&s) {
            rel = &rel + &(&i_ext.normal_form(&emb(a), &dp) * sk);
        }
        if !rel.is_zero() && !relations.contains(&rel) {
            relations.push(rel);
        }
    }
    for k in 0..nz {
        relations.push(Polynomial::var(&ring, b.ring.nvars() + l + k));
    }
    let mut out_jets = jets.to_vec();
    for v in &new_vars {
        out_jets.push((
            v.name.clone(),
            Jet {
                rep: Polynomial::zero(ctx.ring()),
                prec,
            },
        ));
    }
    Ok((
        AlgebraPresentation {
            ring: ring.clone(),
            relations,
            base_relations: b.base_relations.iter().map(emb).collect(),
            multipliers: b.multipliers.iter().map(emb).collect(),
        },
        out_jets,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use gnd_algebra::parse::parse_poly;
    use gnd_algebra::Ring;

    fn ring(base: &[&str], alg: &[&str]) -> RingRef {
        let mut v: Vec<Var> = base
            .iter()
            .map(|n| Var {
                name: n.to_string(),
                role: BlockRole::Base,
            })
            .collect();
        v.extend(alg.iter().map(|n| Var {
            name: n.to_string(),
            role: BlockRole::Algebra,
        }));
        Ring::new(v).unwrap()
    }

    fn polys(r: &RingRef, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|t| parse_poly(r, t).unwrap()).collect()
    }

    #[test]
    fn zero_ideal_gives_unit() {
        let r = ring(&["x"], &["Y1"]);
        let b = AlgebraPresentation::new(&r, vec![], vec![]);
        let h = elkik_ideal(&b, 4).unwrap();
        assert!(h.ideal(&r).is_unit_ideal(&TermOrder::degrevlex(2)));
    }

    #[test]
    fn two_branches_example() {
        let r = ring(&["x1", "x2"], &["Y1", "Y2"]);
        let b = AlgebraPresentation::new(&r, polys(&r, &["x2*Y1", "x1*Y2"]), polys(&r, &["x1*x2"]));
        let h = elkik_ideal(&b, 4).unwrap().ideal(&r);
        for g in polys(&r, &["x1", "x2"]) {
            assert!(h.radical_contains(&g));
        }
    }

    #[test]
    fn koszul_syzygy_appears() {
        let r = ring(&["x1", "x2"], &["Y1", "Y2"]);
        let b = AlgebraPresentation::new(&r, polys(&r, &["Y1 - x1", "Y2 - x2"]), vec![]);
        let (s, _) = {
            let ctx = JetContext::new(&Ring::with_names(&["x1", "x2"], BlockRole::Base), vec![0, 1], vec![]);
            let jets = vec![
                ("Y1".to_string(), ctx.jet(&parse_poly(ctx.ring(), "x1").unwrap(), 5)),
                ("Y2".to_string(), ctx.jet(&parse_poly(ctx.ring(), "x2").unwrap(), 5)),
            ];
            sym_algebra_reduction(&b, &jets, &ctx).unwrap()
        };
        let i = s.ideal();
        let kz = parse_poly(&s.ring, "(Y2 - x2)*S1 - (Y1 - x1)*S2").unwrap();
        assert!(i.contains(&kz, &TermOrder::degrevlex(s.ring.nvars())));
        assert_eq!(s.unknowns().len(), 2 + 2 + 4);
    }
}
