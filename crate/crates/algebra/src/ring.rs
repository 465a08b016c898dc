//! Variable tables.

use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};

/// Role of a variable block in the desingularization pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockRole {
    /// Base variables `x` of the local ring.
    Base,
    /// Algebra variables `Y`.
    Algebra,
    /// Tangent variables `T`.
    Tangent,
    /// Coefficient variables `U`.
    Coefficient,
    /// Slack variables `Z`.
    Slack,
    /// Rabinowitsch inverters `W`.
    Inverter,
    /// Auxiliary variables introduced by ideal operations.
    Auxiliary,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Var {
    pub name: String,
    pub role: BlockRole,
}

/// An ordered table of uniquely named variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<Var>,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(vars: Vec<Var>) -> Result<RingRef> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(AlgebraError::RingMismatch(format!(
                    "duplicate variable `{}`",
                    v.name
                )));
            }
        }
        Ok(Arc::new(Ring { vars }))
    }

    /// Convenience constructor: all names with the same role.
    pub fn with_names<S: AsRef<str>>(names: &[S], role: BlockRole) -> RingRef {
        Ring::new(
            names
                .iter()
                .map(|n| Var {
                    name: n.as_ref().to_string(),
                    role,
                })
                .collect(),
        )
        .expect("duplicate variable names")
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    pub fn role(&self, i: usize) -> BlockRole {
        self.vars[i].role
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    /// Indices of all variables with the given role, in table order.
    pub fn indices_with_role(&self, role: BlockRole) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.role(i) == role).collect()
    }

    pub fn names_with_role(&self, role: BlockRole) -> Vec<String> {
        self.vars
            .iter()
            .filter(|v| v.role == role)
            .map(|v| v.name.clone())
            .collect()
    }

    /// A new ring with `extra` appended after the existing variables.
    pub fn extend(&self, extra: &[Var]) -> Result<RingRef> {
        let mut vars = self.vars.clone();
        vars.extend_from_slice(extra);
        Ring::new(vars)
    }

    /// Appends a fresh auxiliary variable whose name cannot clash with parsed
    /// identifiers.
    pub fn with_aux(&self, tag: &str) -> RingRef {
        let mut k = 0;
        loop {
            let name = format!("@{tag}{k}");
            if self.index_of(&name).is_none() {
                return self
                    .extend(&[Var {
                        name,
                        role: BlockRole::Auxiliary,
                    }])
                    .expect("fresh name");
            }
            k += 1;
        }
    }

    /// Sub-table of the given variable indices.
    pub fn select(&self, idx: &[usize]) -> RingRef {
        Arc::new(Ring {
            vars: idx.iter().map(|&i| self.vars[i].clone()).collect(),
        })
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.vars.iter().map(|v| v.name.as_str()).collect();
        write!(f, "Q[{}]", names.join(","))
    }
}

pub(crate) fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
