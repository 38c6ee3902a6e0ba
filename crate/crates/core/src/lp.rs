//! Dense exact simplex with Bland's rule, for `max c.x` over `A x <= b` with
//! free `x`.

use num_traits::{Signed, Zero};

use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal(Rat),
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in &mut self.rows[r] {
            *v /= &p;
        }
        self.rhs[r] /= &p;
        let (prow, prhs) = (self.rows[r].clone(), self.rhs[r].clone());
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][col].is_zero() {
                continue;
            }
            let f = self.rows[i][col].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = col;
    }

    /// Maximizes `obj` over the columns allowed by `usable`. Returns `None`
    /// when unbounded.
    fn run(&mut self, obj: &[Rat], usable: &dyn Fn(usize) -> bool) -> Option<Rat> {
        let ncols = obj.len();
        loop {
            let entering = (0..ncols).filter(|&j| usable(j)).find(|&j| {
                let mut r = obj[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !self.rows[i][j].is_zero() && !obj[b].is_zero() {
                        r -= &obj[b] * &self.rows[i][j];
                    }
                }
                r.is_positive()
            });
            let Some(col) = entering else {
                return Some(
                    self.basis
                        .iter()
                        .zip(&self.rhs)
                        .map(|(&b, v)| &obj[b] * v)
                        .sum(),
                );
            };
            let mut best: Option<(Rat, usize, usize)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((q, _, b)) => ratio < *q || (ratio == *q && self.basis[i] < *b),
                };
                if better {
                    best = Some((ratio, i, self.basis[i]));
                }
            }
            let (_, r, _) = best?;
            self.pivot(r, col);
        }
    }
}

/// `max c.x` subject to `a x <= b`.
pub(crate) fn maximize(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    // Columns: u (n), v (n), slacks (m), artificials (one per negative rhs).
    let negative: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let ncols = 2 * n + m + negative.len();
    let zero = Rat::zero();
    let one = Rat::from_integer(1.into());
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let sign = if b[i].is_negative() {
            -&one
        } else {
            one.clone()
        };
        let mut row = vec![zero.clone(); ncols];
        for j in 0..n {
            row[j] = &a[i][j] * &sign;
            row[n + j] = -&row[j];
        }
        row[2 * n + i] = sign.clone();
        if let Some(t) = negative.iter().position(|&x| x == i) {
            row[2 * n + m + t] = one.clone();
            basis.push(2 * n + m + t);
        } else {
            basis.push(2 * n + i);
        }
        rows.push(row);
        rhs.push(&b[i] * &sign);
    }
    let mut tab = Tableau { rows, rhs, basis };
    let first_art = 2 * n + m;

    if !negative.is_empty() {
        let mut phase1 = vec![zero.clone(); ncols];
        for v in &mut phase1[first_art..] {
            *v = -&one;
        }
        let best = tab.run(&phase1, &|_| true).expect("phase one is bounded");
        if best.is_negative() {
            return LpOutcome::Infeasible;
        }
        // Drive remaining (zero-valued) artificials out of the basis.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= first_art {
                match (0..first_art).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.rows.remove(i);
                        tab.rhs.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let mut obj = vec![zero; ncols];
    for j in 0..n {
        obj[j] = c[j].clone();
        obj[n + j] = -&c[j];
    }
    match tab.run(&obj, &|j| j < first_art) {
        Some(v) => LpOutcome::Optimal(v),
        None => LpOutcome::Unbounded,
    }
}
