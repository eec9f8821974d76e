//! Exact-rational phase-one simplex with Bland's rule.
//!
//! Decides feasibility of `{ a_i·x ≥ b_i } ∪ { a_j·x = b_j }, x ≥ 0` and
//! returns either a point or Farkas multipliers `y` with `y_i ≥ 0` on the
//! inequality rows, `Σ y_i a_i ≤ 0` componentwise and `Σ y_i b_i > 0`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowSense {
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinRow {
    /// Sparse coefficients, variable indices unique.
    pub coeffs: Vec<(usize, BigRational)>,
    pub sense: RowSense,
    pub rhs: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<BigRational>),
    Infeasible(Vec<BigRational>),
}

/// How each tableau row was set up.
#[derive(Clone, Copy)]
struct RowSetup {
    /// Row multiplied by −1 so that its right-hand side is non-negative.
    flipped: bool,
    /// Column holding the row's initial unit basis vector.
    unit_col: usize,
    /// Whether that column is an artificial (cost 1) or a surplus (cost 0).
    artificial: bool,
}

pub fn solve(num_vars: usize, rows: &[LinRow]) -> Feasibility {
    let m = rows.len();
    // Column layout: variables, one surplus per Ge row, then artificials.
    let surplus_of: Vec<Option<usize>> = {
        let mut next = num_vars;
        rows.iter()
            .map(|r| {
                (r.sense == RowSense::Ge).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let n_struct = num_vars + surplus_of.iter().flatten().count();
    let mut setups = Vec::with_capacity(m);
    let mut n_cols = n_struct;
    for (i, r) in rows.iter().enumerate() {
        let flipped = r.rhs.is_negative();
        // A flipped Ge row reads −a·x + s = −b, so its surplus is a unit column.
        if flipped && r.sense == RowSense::Ge {
            setups.push(RowSetup { flipped, unit_col: surplus_of[i].unwrap(), artificial: false });
        } else {
            setups.push(RowSetup { flipped, unit_col: n_cols, artificial: true });
            n_cols += 1;
        }
    }

    // Dense tableau; the last column is the right-hand side.
    let rhs_col = n_cols;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (i, r) in rows.iter().enumerate() {
        let sign = if setups[i].flipped { -BigRational::one() } else { BigRational::one() };
        let mut row = vec![BigRational::zero(); n_cols + 1];
        for (j, c) in &r.coeffs {
            row[*j] += c * &sign;
        }
        if let Some(s) = surplus_of[i] {
            row[s] = -sign.clone();
        }
        if setups[i].artificial {
            row[setups[i].unit_col] = BigRational::one();
        }
        row[rhs_col] = &r.rhs * &sign;
        t.push(row);
    }
    let mut basis: Vec<usize> = setups.iter().map(|s| s.unit_col).collect();
    let cost: Vec<BigRational> =
        (0..n_cols).map(|j| if j >= n_struct { BigRational::one() } else { BigRational::zero() }).collect();

    // Reduced costs d_j = c_j − Σ_i c_{B(i)} t[i][j]; the last entry is −objective.
    let mut d: Vec<BigRational> = cost.clone();
    d.push(BigRational::zero());
    for i in 0..m {
        if !cost[basis[i]].is_zero() {
            for j in 0..=n_cols {
                if !t[i][j].is_zero() {
                    let v = &t[i][j] * &cost[basis[i]];
                    d[j] -= v;
                }
            }
        }
    }

    loop {
        // Bland: lowest-index column with negative reduced cost.
        let Some(enter) = (0..n_cols).find(|&j| d[j].is_negative()) else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][rhs_col] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by 0, so a leaving row always exists.
        let (r, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut t, &mut d, r, enter);
        basis[r] = enter;
    }

    let objective = -d[n_cols].clone();
    if objective.is_positive() {
        // π_i = c_{u_i} − d_{u_i} for the initial unit column u_i of row i.
        let y = setups
            .iter()
            .map(|s| {
                let c = if s.artificial { BigRational::one() } else { BigRational::zero() };
                let pi = c - &d[s.unit_col];
                if s.flipped {
                    -pi
                } else {
                    pi
                }
            })
            .collect();
        return Feasibility::Infeasible(y);
    }
    let mut x = vec![BigRational::zero(); num_vars];
    for (i, &b) in basis.iter().enumerate() {
        if b < num_vars {
            x[b] = t[i][rhs_col].clone();
        }
    }
    Feasibility::Feasible(x)
}

fn pivot(t: &mut [Vec<BigRational>], d: &mut [BigRational], r: usize, c: usize) {
    let inv = t[r][c].recip();
    for v in t[r].iter_mut() {
        if !v.is_zero() {
            *v *= &inv;
        }
    }
    let pivot_row = std::mem::take(&mut t[r]);
    let nz: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
    let eliminate = |row: &mut Vec<BigRational>| {
        let f = row[c].clone();
        if f.is_zero() {
            return;
        }
        for &j in &nz {
            let v = &pivot_row[j] * &f;
            row[j] -= v;
        }
    };
    for (i, row) in t.iter_mut().enumerate() {
        if i != r {
            eliminate(row);
        }
    }
    let mut dv = d.to_vec();
    eliminate(&mut dv);
    d.clone_from_slice(&dv);
    t[r] = pivot_row;
}

/// Exact checks of a solver answer against the rows.
pub fn check_point(rows: &[LinRow], x: &[BigRational]) -> bool {
    x.iter().all(|v| !v.is_negative())
        && rows.iter().all(|r| {
            let lhs: BigRational = r.coeffs.iter().map(|(j, c)| c * &x[*j]).sum();
            match r.sense {
                RowSense::Ge => lhs >= r.rhs,
                RowSense::Eq => lhs == r.rhs,
            }
        })
}

pub fn check_farkas(num_vars: usize, rows: &[LinRow], y: &[BigRational]) -> bool {
    if y.len() != rows.len() {
        return false;
    }
    let mut combo = vec![BigRational::zero(); num_vars];
    let mut b = BigRational::zero();
    for (r, yi) in rows.iter().zip(y) {
        if r.sense == RowSense::Ge && yi.is_negative() {
            return false;
        }
        for (j, c) in &r.coeffs {
            combo[*j] += c * yi;
        }
        b += &r.rhs * yi;
    }
    combo.iter().all(|v| !v.is_positive()) && b.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn row(coeffs: &[(usize, i64)], sense: RowSense, rhs: i64) -> LinRow {
        LinRow { coeffs: coeffs.iter().map(|&(j, c)| (j, q(c))).collect(), sense, rhs: q(rhs) }
    }

    #[test]
    fn feasible_box() {
        let rows = vec![row(&[(0, 1), (1, 1)], RowSense::Ge, 3), row(&[(0, 1)], RowSense::Eq, 1), row(&[(1, -1)], RowSense::Ge, -5)];
        match solve(2, &rows) {
            Feasibility::Feasible(x) => assert!(check_point(&rows, &x)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_with_certificate() {
        // x0 ≥ 2, x1 ≥ 2, x0 + x1 = 3.
        let rows = vec![row(&[(0, 1)], RowSense::Ge, 2), row(&[(1, 1)], RowSense::Ge, 2), row(&[(0, 1), (1, 1)], RowSense::Eq, 3)];
        match solve(2, &rows) {
            Feasibility::Infeasible(y) => assert!(check_farkas(2, &rows, &y)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_cycle_prone_system_terminates() {
        // A classic degenerate example; Bland's rule must not cycle.
        let rows = vec![
            LinRow { coeffs: vec![(0, q(1) / q(2)), (1, q(-11) / q(2)), (2, q(-5) / q(2)), (3, q(9))], sense: RowSense::Ge, rhs: q(0) },
            LinRow { coeffs: vec![(0, q(1) / q(2)), (1, q(-3) / q(2)), (2, q(-1) / q(2)), (3, q(1))], sense: RowSense::Ge, rhs: q(0) },
            row(&[(0, 1)], RowSense::Ge, 1),
        ];
        match solve(4, &rows) {
            Feasibility::Feasible(x) => assert!(check_point(&rows, &x)),
            Feasibility::Infeasible(y) => assert!(check_farkas(4, &rows, &y)),
        }
    }
}
