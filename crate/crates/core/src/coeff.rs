//! Coefficient extensions `k' = Q(k[U]/J̄)` and the smooth base algebra
//! `D = (A[U]/(w))_{ρτγ}`.

use gnd_algebra::matrix::{combinations, jacobian};
use gnd_algebra::{BlockRole, Ideal, Polynomial, Ring, RingRef, TermOrder, Var};

use crate::error::{GndError, Result};
use crate::local::LocalRingSpec;

#[derive(Debug, Clone)]
pub struct CoeffExt {
    ring: RingRef,
    relations: Vec<Polynomial>,
    chosen: Vec<usize>,
    minor: Polynomial,
    tau: Polynomial,
    gamma: Polynomial,
}

impl CoeffExt {
    /// No coefficient variables at all.
    pub fn trivial() -> CoeffExt {
        let ring = Ring::with_names::<&str>(&[], BlockRole::Coefficient);
        CoeffExt {
            relations: Vec::new(),
            chosen: Vec::new(),
            minor: Polynomial::one(&ring),
            tau: Polynomial::one(&ring),
            gamma: Polynomial::one(&ring),
            ring,
        }
    }

    /// Chooses a subsystem `w` of the relations, a `p`-minor `ρ` of its
    /// Jacobian outside `√J̄`, and `τ ∈ (w):J̄` outside `√J̄`.
    pub fn new(ring: &RingRef, relations: Vec<Polynomial>) -> Result<CoeffExt> {
        let relations: Vec<Polynomial> = relations.into_iter().filter(|p| !p.is_zero()).collect();
        let one = Polynomial::one(ring);
        if relations.is_empty() {
            return Ok(CoeffExt {
                ring: ring.clone(),
                relations,
                chosen: Vec::new(),
                minor: one.clone(),
                tau: one.clone(),
                gamma: one,
            });
        }
        let jbar = Ideal::new(ring, relations.clone());
        let dp = TermOrder::degrevlex(ring.nvars());
        if jbar.is_unit_ideal(&dp) {
            return Err(GndError::SeparabilityFailure("the coefficient relations are inconsistent".into()));
        }
        let vars: Vec<usize> = (0..ring.nvars()).collect();
        for p in 1..=relations.len().min(ring.nvars()) {
            for subset in combinations(relations.len(), p) {
                let w: Vec<Polynomial> = subset.iter().map(|&i| relations[i].clone()).collect();
                let jac = jacobian(&w, ring, &vars);
                for minor in jac.minors(p)? {
                    if minor.is_zero() || jbar.radical_contains(&minor) {
                        continue;
                    }
                    let colon = Ideal::new(ring, w.clone()).quotient(&jbar);
                    let tau = colon
                        .canonical_gens()
                        .into_iter()
                        .find(|t| !jbar.radical_contains(t));
                    if let Some(tau) = tau {
                        return Ok(CoeffExt {
                            ring: ring.clone(),
                            relations,
                            chosen: subset,
                            minor,
                            tau,
                            gamma: one,
                        });
                    }
                }
            }
        }
        Err(GndError::SeparabilityFailure(format!(
            "no minor of a subsystem of ({}) avoids the relations",
            relations.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
        )))
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn is_trivial(&self) -> bool {
        self.ring.nvars() == 0
    }

    /// The chosen subsystem `w`.
    pub fn subsystem(&self) -> Vec<Polynomial> {
        self.chosen.iter().map(|&i| self.relations[i].clone()).collect()
    }

    pub fn minor(&self) -> &Polynomial {
        &self.minor
    }

    pub fn tau(&self) -> &Polynomial {
        &self.tau
    }

    pub fn gamma(&self) -> &Polynomial {
        &self.gamma
    }

    /// `τ J̄ ⊆ (w)`, checked by normal forms.
    pub fn tau_certified(&self) -> bool {
        if self.relations.is_empty() {
            return true;
        }
        let w = Ideal::new(&self.ring, self.subsystem());
        let dp = TermOrder::degrevlex(self.ring.nvars());
        self.relations
            .iter()
            .all(|a| w.contains(&(&self.tau * a), &dp))
    }
}

/// `D` as a presentation over the base variables plus `U`.
#[derive(Debug, Clone)]
pub struct SmoothBaseD {
    pub ring: RingRef,
    /// `J` together with `w`.
    pub relations: Vec<Polynomial>,
    /// `J` together with all of `J̄`, the relations holding for the
    /// coefficient values.
    pub value_relations: Vec<Polynomial>,
    /// `ρ τ γ`.
    pub multiplier: Polynomial,
}

impl SmoothBaseD {
    pub fn is_base_ring(&self, a: &LocalRingSpec) -> bool {
        self.ring.nvars() == a.nvars() && self.multiplier.is_one()
    }

    pub fn base_vars(&self) -> Vec<usize> {
        self.ring.indices_with_role(BlockRole::Base)
    }
}

pub fn build_d(ext: &CoeffExt, a: &LocalRingSpec) -> Result<SmoothBaseD> {
    let extra: Vec<Var> = ext
        .ring()
        .vars()
        .iter()
        .map(|v| Var {
            name: v.name.clone(),
            role: BlockRole::Coefficient,
        })
        .collect();
    let ring = a
        .ring()
        .extend(&extra)
        .map_err(|e| GndError::InvalidInput(e.to_string()))?;
    let emb = |p: &Polynomial| p.embed(&ring).expect("sub-ring embedding");
    let base: Vec<Polynomial> = a.relations().gens().iter().map(emb).collect();
    let mut relations = base.clone();
    relations.extend(ext.subsystem().iter().map(emb));
    let mut value_relations = base;
    value_relations.extend(ext.relations().iter().map(emb));
    let multiplier = emb(&(&(ext.minor() * ext.tau()) * ext.gamma()));
    Ok(SmoothBaseD {
        ring,
        relations,
        value_relations,
        multiplier,
    })
}
