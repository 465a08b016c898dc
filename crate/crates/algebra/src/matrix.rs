//! Polynomial matrices: Jacobians, determinants, adjugates and minors.

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::poly::Polynomial;
use crate::ring::RingRef;

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(ring: &RingRef, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &RingRef, n: usize) -> Self {
        let mut m = PolyMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<Polynomial>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        PolyMatrix {
            ring: ring.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.data[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map(&self, mut f: impl FnMut(&Polynomial) -> Polynomial) -> PolyMatrix {
        let data: Vec<Polynomial> = self.data.iter().map(&mut f).collect();
        let ring = data.first().map_or(self.ring.clone(), |p| p.ring().clone());
        PolyMatrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, p: &Polynomial) -> PolyMatrix {
        self.map(|e| e * p)
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = PolyMatrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Polynomial::zero(&self.ring);
                for (k, x) in v.iter().enumerate() {
                    acc = &acc + &(self.get(i, k) * x);
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    /// Submatrix on the given row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        PolyMatrix::from_rows(
            &self.ring,
            rows.iter()
                .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
                .collect(),
        )
    }

    /// Determinant by fraction-free cofactor expansion (desk-scale sizes).
    pub fn det(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(AlgebraError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.det_rec(&idx, &idx))
    }

    fn det_rec(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        match rows.len() {
            0 => Polynomial::one(&self.ring),
            1 => self.get(rows[0], cols[0]).clone(),
            2 => {
                self.get(rows[0], cols[0]) * self.get(rows[1], cols[1])
                    - self.get(rows[0], cols[1]) * self.get(rows[1], cols[0])
            }
            _ => {
                let mut acc = Polynomial::zero(&self.ring);
                let sub_rows = &rows[1..];
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(rows[0], c);
                    if a.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> =
                        cols.iter().copied().filter(|&x| x != c).collect();
                    let minor = self.det_rec(sub_rows, &sub_cols);
                    let t = a * &minor;
                    acc = if k % 2 == 0 { &acc + &t } else { &acc - &t };
                }
                acc
            }
        }
    }

    /// Determinant and adjugate: `adj * M = M * adj = det * Id`.
    pub fn det_adjugate(&self) -> Result<(Polynomial, PolyMatrix)> {
        let det = self.det()?;
        let n = self.rows;
        let mut adj = PolyMatrix::zeros(&self.ring, n, n);
        if n == 1 {
            adj.set(0, 0, Polynomial::one(&self.ring));
            return Ok((det, adj));
        }
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&k| k != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&k| k != i).collect();
                let c = self.det_rec(&rows, &cols);
                adj.set(i, j, if (i + j) % 2 == 0 { c } else { -c });
            }
        }
        Ok((det, adj))
    }

    /// All `r x r` minors, ordered lexicographically by (row set, column set).
    pub fn minors(&self, r: usize) -> Result<Vec<Polynomial>> {
        if r == 0 || r > self.rows.min(self.cols) {
            return Err(AlgebraError::MinorOutOfRange {
                r,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = Vec::new();
        for rows in combinations(self.rows, r) {
            for cols in combinations(self.cols, r) {
                out.push(self.det_rec(&rows, &cols));
            }
        }
        Ok(out)
    }

    pub fn to_rows_string(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rows_string())
    }
}

/// Jacobian `(d f_i / d v_j)` for the variable indices `vars`.
pub fn jacobian(f: &[Polynomial], ring: &RingRef, vars: &[usize]) -> PolyMatrix {
    PolyMatrix::from_rows(
        ring,
        f.iter()
            .map(|p| vars.iter().map(|&j| p.derivative(j)).collect())
            .collect(),
    )
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::ring::{BlockRole, Ring};

    fn m(ring: &RingRef, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            ring,
            rows.iter()
                .map(|r| r.iter().map(|s| parse_poly(ring, s).unwrap()).collect())
                .collect(),
        )
    }

    #[test]
    fn adjugate_of_completed_jacobian() {
        let r = Ring::with_names(&["x1", "x2"], BlockRole::Base);
        let h = m(&r, &[&["x2", "x1"], &["-1", "1"]]);
        let (det, adj) = h.det_adjugate().unwrap();
        assert_eq!(det.to_string(), "x1 + x2");
        assert_eq!(adj, m(&r, &[&["1", "-x1"], &["1", "x2"]]));
    }

    #[test]
    fn adjugate_of_hyperbola_matrix() {
        let r = Ring::with_names(&["Y1", "Y2"], BlockRole::Algebra);
        let h = m(&r, &[&["Y2", "Y1"], &["0", "1"]]);
        let (det, adj) = h.det_adjugate().unwrap();
        assert_eq!(det.to_string(), "Y2");
        assert_eq!(adj, m(&r, &[&["1", "-Y1"], &["0", "Y2"]]));
    }

    #[test]
    fn identity_adjugate_and_minors() {
        let r = Ring::with_names(&["x"], BlockRole::Base);
        let id = PolyMatrix::identity(&r, 2);
        let (det, adj) = id.det_adjugate().unwrap();
        assert!(det.is_one());
        assert_eq!(adj, id);
        let mi = id.minors(2).unwrap();
        assert_eq!(mi.len(), 1);
        assert!(mi[0].is_one());
        assert!(id.minors(3).is_err());
        assert!(PolyMatrix::zeros(&r, 2, 3).det().is_err());
    }

    #[test]
    fn jacobian_rows() {
        let r = Ring::with_names(&["x1", "x2", "Y1", "Y2"], BlockRole::Base);
        let f = parse_poly(&r, "x2*Y1 + x1*Y2").unwrap();
        let jac = jacobian(&[f], &r, &[2, 3]);
        assert_eq!(jac.to_rows_string(), "[[x2, x1]]");
        let g = parse_poly(&r, "Y1*Y2 - x1^2").unwrap();
        assert_eq!(jacobian(&[g], &r, &[2, 3]).to_rows_string(), "[[Y2, Y1]]");
        let c = parse_poly(&r, "5").unwrap();
        assert!(jacobian(&[c], &r, &[2, 3]).is_zero());
    }

    #[test]
    fn repeated_rows_have_zero_determinant() {
        let r = Ring::with_names(&["x", "y"], BlockRole::Base);
        let a = m(&r, &[&["x", "y", "1"], &["x^2", "x*y", "y"], &["x", "y", "1"]]);
        assert!(a.minors(3).unwrap()[0].is_zero());
    }

    #[test]
    fn example_minors_contain_scaled_entry() {
        let r = Ring::with_names(&["x1", "x2", "x3", "Y1", "Y2", "Y3"], BlockRole::Base);
        let f1 = parse_poly(&r, "x3^2*Y1^2 + x2^2*Y2^2 + x1^2*Y3^2 - x3^2 - x2^2 - x1^2").unwrap();
        let jac = jacobian(&[f1], &r, &[3, 4, 5]);
        let mins = jac.minors(1).unwrap();
        let target = parse_poly(&r, "2*x2^2*Y2").unwrap();
        assert!(mins.contains(&target));
    }
}
