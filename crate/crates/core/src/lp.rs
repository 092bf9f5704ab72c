//! Dense exact simplex for `max c^T x  s.t.  A x <= b, x >= 0`.
//!
//! Dictionary form with Bland's rule throughout, and an auxiliary-variable
//! first phase when `b` has negative entries. Optimality is certified by the
//! dual read off the final dictionary.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub objective: Rational,
    pub primal: Vec<Rational>,
    /// Optimal dual: `y >= 0`, `A^T y >= c`, `b^T y = objective`.
    pub dual: Vec<Rational>,
}

/// `x_basic[i] = rhs[i] + sum_j coef[i][j] * x_nonbasic[j]`,
/// `z = z0 + sum_j obj[j] * x_nonbasic[j]`.
struct Dictionary {
    coef: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    obj: Vec<Rational>,
    z0: Rational,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
}

impl Dictionary {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.coef[row][col].clone();
        let inv = -p.recip();
        // Solve row for the entering variable.
        let mut new_row: Vec<Rational> = self.coef[row].iter().map(|a| a * &inv).collect();
        new_row[col] = -&inv;
        let new_rhs = &self.rhs[row] * &inv;
        for i in 0..self.coef.len() {
            if i == row || self.coef[i][col].is_zero() {
                continue;
            }
            let f = std::mem::replace(&mut self.coef[i][col], Rational::zero());
            for (j, a) in new_row.iter().enumerate() {
                if !a.is_zero() {
                    self.coef[i][j] += &f * a;
                }
            }
            self.rhs[i] += &f * &new_rhs;
        }
        if !self.obj[col].is_zero() {
            let f = std::mem::replace(&mut self.obj[col], Rational::zero());
            for (j, a) in new_row.iter().enumerate() {
                if !a.is_zero() {
                    self.obj[j] += &f * a;
                }
            }
            self.z0 += &f * &new_rhs;
        }
        self.coef[row] = new_row;
        self.rhs[row] = new_rhs;
        std::mem::swap(&mut self.basic[row], &mut self.nonbasic[col]);
    }

    /// Leaving row for an entering column: minimum ratio, ties to the lowest
    /// variable id. `None` means the column is unbounded.
    fn leaving(&self, col: usize) -> Option<usize> {
        let mut best: Option<(Rational, usize, usize)> = None;
        for i in 0..self.coef.len() {
            let a = &self.coef[i][col];
            if !a.is_negative() {
                continue;
            }
            let ratio = &self.rhs[i] / -a;
            let better = match &best {
                None => true,
                Some((r, id, _)) => ratio < *r || (ratio == *r && self.basic[i] < *id),
            };
            if better {
                best = Some((ratio, self.basic[i], i));
            }
        }
        best.map(|(_, _, i)| i)
    }

    /// Bland's rule to optimality.
    fn optimize(&mut self) -> Result<()> {
        loop {
            let entering = (0..self.nonbasic.len())
                .filter(|&j| self.obj[j].is_positive())
                .min_by_key(|&j| self.nonbasic[j]);
            let Some(col) = entering else { return Ok(()) };
            let row = self
                .leaving(col)
                .ok_or_else(|| Error::Solver("linear program is unbounded".into()))?;
            self.pivot(row, col);
        }
    }
}

/// Solves `max c^T x` over `A x <= b, x >= 0` exactly.
pub fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> Result<LpSolution> {
    let m = a.len();
    let n = c.len();
    if b.len() != m || a.iter().any(|r| r.len() != n) {
        return Err(Error::Solver("constraint matrix shape mismatch".into()));
    }
    // Variables: 0..n original, n..n+m slacks, n+m auxiliary.
    let aux = n + m;
    let needs_phase_one = b.iter().any(Signed::is_negative);
    let width = n + usize::from(needs_phase_one);
    let mut d = Dictionary {
        coef: a
            .iter()
            .map(|row| {
                let mut r: Vec<Rational> = row.iter().map(|v| -v).collect();
                if needs_phase_one {
                    r.push(Rational::one());
                }
                r
            })
            .collect(),
        rhs: b.to_vec(),
        obj: vec![Rational::zero(); width],
        z0: Rational::zero(),
        basic: (n..n + m).collect(),
        nonbasic: (0..n).chain(needs_phase_one.then_some(aux)).collect(),
    };

    if needs_phase_one {
        d.obj[n] = -Rational::one();
        let row = (0..m)
            .min_by(|&i, &j| d.rhs[i].cmp(&d.rhs[j]).then(d.basic[i].cmp(&d.basic[j])))
            .expect("a negative entry exists");
        d.pivot(row, n);
        d.optimize()?;
        if d.z0.is_negative() {
            return Err(Error::Solver("linear program is infeasible".into()));
        }
        if let Some(row) = d.basic.iter().position(|&v| v == aux) {
            let col = (0..d.nonbasic.len())
                .find(|&j| !d.coef[row][j].is_zero())
                .expect("auxiliary row has a nonzero entry");
            d.pivot(row, col);
        }
        let col = d.nonbasic.iter().position(|&v| v == aux).expect("auxiliary is nonbasic");
        for row in &mut d.coef {
            row.remove(col);
        }
        d.nonbasic.remove(col);
        d.obj = vec![Rational::zero(); d.nonbasic.len()];
        d.z0 = Rational::zero();
        for (var, cv) in c.iter().enumerate() {
            if cv.is_zero() {
                continue;
            }
            if let Some(j) = d.nonbasic.iter().position(|&v| v == var) {
                d.obj[j] += cv;
            } else {
                let i = d.basic.iter().position(|&v| v == var).expect("variable is basic");
                for j in 0..d.nonbasic.len() {
                    if !d.coef[i][j].is_zero() {
                        d.obj[j] += cv * &d.coef[i][j];
                    }
                }
                d.z0 += cv * &d.rhs[i];
            }
        }
    } else {
        d.obj = c.to_vec();
    }
    d.optimize()?;

    let mut primal = vec![Rational::zero(); n];
    for (i, &v) in d.basic.iter().enumerate() {
        if v < n {
            primal[v] = d.rhs[i].clone();
        }
    }
    let mut dual = vec![Rational::zero(); m];
    for (j, &v) in d.nonbasic.iter().enumerate() {
        if (n..n + m).contains(&v) {
            dual[v - n] = -&d.obj[j];
        }
    }
    let sol = LpSolution {
        objective: d.z0,
        primal,
        dual,
    };
    certify(a, b, c, &sol)?;
    Ok(sol)
}

/// Checks primal and dual feasibility and equal objectives.
fn certify(a: &[Vec<Rational>], b: &[Rational], c: &[Rational], sol: &LpSolution) -> Result<()> {
    let fail = |what: &str| Err(Error::Solver(format!("optimality certificate failed: {what}")));
    if sol.primal.iter().any(Signed::is_negative) || sol.dual.iter().any(Signed::is_negative) {
        return fail("negative variable");
    }
    for (row, bi) in a.iter().zip(b) {
        let lhs: Rational = row.iter().zip(&sol.primal).map(|(x, y)| x * y).sum();
        if lhs > *bi {
            return fail("primal constraint");
        }
    }
    for (j, cj) in c.iter().enumerate() {
        let lhs: Rational = a.iter().zip(&sol.dual).map(|(row, y)| &row[j] * y).sum();
        if lhs < *cj {
            return fail("dual constraint");
        }
    }
    let primal_obj: Rational = c.iter().zip(&sol.primal).map(|(x, y)| x * y).sum();
    let dual_obj: Rational = b.iter().zip(&sol.dual).map(|(x, y)| x * y).sum();
    if primal_obj != sol.objective || dual_obj != sol.objective {
        return fail("objective mismatch");
    }
    Ok(())
}
