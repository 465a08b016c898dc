//! Monomial orders.
//!
//! An order is a product of blocks. Each block compares the exponents of its
//! own variables; the first block that distinguishes two monomials decides.
//! A block product eliminates its leading block whenever that block is
//! compared first. Local blocks (`NegDegRevLex`) rank `1` above every
//! nonconstant monomial in their variables, which realizes computations in
//! the localization at the origin.

use std::cmp::Ordering;

use crate::monomial::Monomial;
use crate::ring::{BlockRole, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    DegRevLex,
    /// Local degree reverse lexicographic order (`ds`).
    NegDegRevLex,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderBlock {
    pub vars: Vec<usize>,
    pub kind: OrderKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermOrder {
    nvars: usize,
    blocks: Vec<OrderBlock>,
}

impl TermOrder {
    /// Block product order. The blocks must partition `0..nvars`.
    pub fn block(nvars: usize, blocks: Vec<OrderBlock>) -> TermOrder {
        let mut seen = vec![false; nvars];
        for b in &blocks {
            for &v in &b.vars {
                assert!(v < nvars && !seen[v], "order blocks must partition the variables");
                seen[v] = true;
            }
        }
        assert!(seen.iter().all(|&s| s), "order blocks must cover every variable");
        let blocks = blocks.into_iter().filter(|b| !b.vars.is_empty()).collect();
        TermOrder { nvars, blocks }
    }

    fn single(nvars: usize, kind: OrderKind) -> TermOrder {
        TermOrder::block(
            nvars,
            vec![OrderBlock {
                vars: (0..nvars).collect(),
                kind,
            }],
        )
    }

    pub fn lex(nvars: usize) -> TermOrder {
        TermOrder::single(nvars, OrderKind::Lex)
    }

    pub fn degrevlex(nvars: usize) -> TermOrder {
        TermOrder::single(nvars, OrderKind::DegRevLex)
    }

    pub fn neg_degrevlex(nvars: usize) -> TermOrder {
        TermOrder::single(nvars, OrderKind::NegDegRevLex)
    }

    /// `degrevlex` on `first`, then `degrevlex` on the remaining variables.
    /// Eliminates `first`.
    pub fn elimination(nvars: usize, first: &[usize]) -> TermOrder {
        let rest: Vec<usize> = (0..nvars).filter(|i| !first.contains(i)).collect();
        TermOrder::block(
            nvars,
            vec![
                OrderBlock {
                    vars: first.to_vec(),
                    kind: OrderKind::DegRevLex,
                },
                OrderBlock {
                    vars: rest,
                    kind: OrderKind::DegRevLex,
                },
            ],
        )
    }

    /// Global `degrevlex` on `global` (compared first) and local `ds` on the
    /// rest. With `global` empty this is the purely local order.
    pub fn mixed(nvars: usize, global: &[usize]) -> TermOrder {
        let rest: Vec<usize> = (0..nvars).filter(|i| !global.contains(i)).collect();
        TermOrder::block(
            nvars,
            vec![
                OrderBlock {
                    vars: global.to_vec(),
                    kind: OrderKind::DegRevLex,
                },
                OrderBlock {
                    vars: rest,
                    kind: OrderKind::NegDegRevLex,
                },
            ],
        )
    }

    /// Mixed order on a ring: base variables local, everything else global.
    pub fn local_in_base(ring: &Ring) -> TermOrder {
        let global: Vec<usize> = (0..ring.nvars())
            .filter(|&i| ring.role(i) != BlockRole::Base)
            .collect();
        TermOrder::mixed(ring.nvars(), &global)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn blocks(&self) -> &[OrderBlock] {
        &self.blocks
    }

    /// True when every variable is greater than 1 (a well-order).
    pub fn is_global(&self) -> bool {
        self.blocks.iter().all(|b| b.kind != OrderKind::NegDegRevLex)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        for block in &self.blocks {
            let o = match block.kind {
                OrderKind::Lex => lex(&block.vars, ea, eb),
                OrderKind::DegRevLex => {
                    let (da, db) = (a.degree_in(&block.vars), b.degree_in(&block.vars));
                    da.cmp(&db).then_with(|| revlex(&block.vars, ea, eb))
                }
                OrderKind::NegDegRevLex => {
                    let (da, db) = (a.degree_in(&block.vars), b.degree_in(&block.vars));
                    db.cmp(&da).then_with(|| revlex(&block.vars, ea, eb))
                }
            };
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }
}

fn lex(vars: &[usize], a: &[u32], b: &[u32]) -> Ordering {
    for &v in vars {
        match a[v].cmp(&b[v]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

// Reverse lexicographic tie-break: the monomial with the smaller exponent in
// the last differing variable is larger.
fn revlex(vars: &[usize], a: &[u32], b: &[u32]) -> Ordering {
    for &v in vars.iter().rev() {
        match a[v].cmp(&b[v]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn degrevlex_tie_break() {
        let o = TermOrder::degrevlex(2);
        assert_eq!(o.cmp(&m(&[2, 1]), &m(&[1, 2])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 3]), &m(&[2, 0])), Ordering::Greater);
    }

    #[test]
    fn local_order_puts_one_first() {
        let o = TermOrder::neg_degrevlex(2);
        assert_eq!(o.cmp(&m(&[0, 0]), &m(&[1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[2, 0])), Ordering::Greater);
        assert!(!o.is_global());
    }

    #[test]
    fn block_order_eliminates() {
        // variables: x1 x2 Y1 ; Y global first, x local
        let o = TermOrder::mixed(3, &[2]);
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[5, 7, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[0, 0, 0])), Ordering::Greater);
        let e = TermOrder::elimination(3, &[2]);
        assert_eq!(e.cmp(&m(&[0, 0, 1]), &m(&[9, 9, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_order() {
        let o = TermOrder::lex(2);
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 9])), Ordering::Greater);
    }
}
