//! Exact Gauss-Jordan elimination over the rationals.
//!
//! Small dense matrices only; pivoting picks the first nonzero entry in
//! each column scanning top-down, which keeps results deterministic.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place reduced row echelon form.  Returns the pivot columns in
    /// row order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pivot_row) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, pivot_row);
            let inv = Rational::one() / self.get(row, col).clone();
            for c in col..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = self.get(r, c) - &factor * self.get(row, c);
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the null space `{x : Ax = 0}`, one vector per free column
    /// in ascending column order.  Each basis vector has a 1 at its free
    /// column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut reduced = self.clone();
        let pivots = reduced.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Rational::zero(); self.cols];
                v[fc] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -reduced.get(r, fc).clone();
                }
                v
            })
            .collect()
    }
}

/// Outcome of solving `Ax = b` for a full-column-rank `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solve {
    /// The unique solution.
    Unique(Vec<Rational>),
    /// `b` is outside the column span; the index is the offending row of
    /// the reduced augmented system.
    Inconsistent(usize),
}

/// Solves `Ax = b` exactly.  `A` must have full column rank (the callers
/// guarantee this; it is property-tested on the generator matrices).
pub fn solve_unique(a: &Matrix, b: &[Rational]) -> Solve {
    assert_eq!(a.rows(), b.len(), "dimension mismatch");
    let mut aug = Matrix::from_fn(a.rows(), a.cols() + 1, |r, c| {
        if c < a.cols() {
            a.get(r, c).clone()
        } else {
            b[r].clone()
        }
    });
    let pivots = aug.rref();
    if let Some(row) = pivots.iter().position(|&c| c == a.cols()) {
        return Solve::Inconsistent(row);
    }
    debug_assert_eq!(pivots.len(), a.cols(), "matrix does not have full column rank");
    let mut x = vec![Rational::zero(); a.cols()];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.get(r, a.cols()).clone();
    }
    Solve::Unique(x)
}

/// Scales a rational vector to coprime integers with the first nonzero
/// entry positive.  This is the canonical form used for span equalities.
pub fn canonicalize_integer(v: &[Rational]) -> Vec<Rational> {
    use num_bigint::BigInt;
    use num_integer::Integer;

    let mut denom_lcm = BigInt::from(1);
    for x in v {
        denom_lcm = denom_lcm.lcm(x.denom());
    }
    let scaled: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&denom_lcm / x.denom()))
        .collect();
    let mut gcd = BigInt::from(0);
    for x in &scaled {
        gcd = gcd.gcd(x);
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    let sign_fix = match scaled.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => BigInt::from(-1),
        _ => BigInt::from(1),
    };
    let div = gcd * sign_fix;
    scaled
        .into_iter()
        .map(|x| Rational::from_integer(x / &div))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn m(rows: usize, cols: usize, vals: &[i64]) -> Matrix {
        assert_eq!(vals.len(), rows * cols);
        Matrix::from_fn(rows, cols, |r, c| rat_int(vals[r * cols + c]))
    }

    #[test]
    fn rref_identity() {
        let mut a = m(2, 2, &[2, 0, 0, 3]);
        let pivots = a.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(a, m(2, 2, &[1, 0, 0, 1]));
    }

    #[test]
    fn rank_detects_dependence() {
        assert_eq!(m(3, 3, &[1, 2, 3, 2, 4, 6, 1, 0, 1]).rank(), 2);
        assert_eq!(m(2, 3, &[1, 0, 0, 0, 1, 0]).rank(), 2);
    }

    #[test]
    fn kernel_of_dependent_columns() {
        // col3 = col1 + col2
        let a = m(2, 3, &[1, 0, 1, 0, 1, 1]);
        let basis = a.kernel_basis();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], vec![rat_int(-1), rat_int(-1), rat_int(1)]);
    }

    #[test]
    fn solve_unique_and_inconsistent() {
        let a = m(3, 2, &[1, 0, 0, 1, 1, 1]);
        match solve_unique(&a, &[rat_int(2), rat_int(3), rat_int(5)]) {
            Solve::Unique(x) => assert_eq!(x, vec![rat_int(2), rat_int(3)]),
            other => panic!("unexpected {other:?}"),
        }
        match solve_unique(&a, &[rat_int(2), rat_int(3), rat_int(6)]) {
            Solve::Inconsistent(_) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn exact_fractions_survive_elimination() {
        let a = Matrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 0) => rat(1, 3),
            (0, 1) => rat(1, 7),
            (1, 0) => rat(2, 5),
            (1, 1) => rat(3, 11),
        });
        match solve_unique(&a, &[rat(1, 2), rat(5, 13)]) {
            Solve::Unique(x) => {
                // verify by substitution
                let lhs0 = rat(1, 3) * &x[0] + rat(1, 7) * &x[1];
                let lhs1 = rat(2, 5) * &x[0] + rat(3, 11) * &x[1];
                assert_eq!(lhs0, rat(1, 2));
                assert_eq!(lhs1, rat(5, 13));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn canonicalization_clears_denominators_and_sign() {
        let v = vec![rat(-1, 2), rat(1, 3), rat_int(0), rat(1, 6)];
        assert_eq!(
            canonicalize_integer(&v),
            vec![rat_int(3), rat_int(-2), rat_int(0), rat_int(-1)]
        );
        let zero = vec![rat_int(0)];
        assert_eq!(canonicalize_integer(&zero), zero);
    }
}
