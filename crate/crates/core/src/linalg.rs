//! Exact dense linear solves over the field.
//!
//! Each row is cleared of denominators, turning the system into one with
//! polynomial entries in `s = τ^(1/D)`, which is then solved by Bareiss'
//! fraction-free elimination. Every intermediate division is exact, so no
//! rational-function gcd is needed until the final quotients are formed.

use thiserror::Error;

use crate::field::{FieldElement, FieldError, Polynomial};

/// Largest system accepted by default.
pub const DEFAULT_SIZE_CAP: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    SingularSystem,
    #[error("system with {size} unknowns exceeds the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("matrix shape does not match")]
    Shape,
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn lcm(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() || a == b {
        return a.clone();
    }
    let g = Polynomial::gcd(a, b);
    (a * b).exact_div(&g)
}

/// Solves `A X = B` for each of the right-hand-side columns in `rhs`.
///
/// `a` is row-major `n × n`; `rhs[j]` is the `j`-th column, of length `n`.
/// Returns the solution columns in the same order.
pub fn solve_many(
    a: &[Vec<FieldElement>],
    rhs: &[Vec<FieldElement>],
    cap: usize,
) -> Result<Vec<Vec<FieldElement>>, LinalgError> {
    let n = a.len();
    if n > cap {
        return Err(LinalgError::TooLarge { size: n, cap });
    }
    if a.iter().any(|r| r.len() != n) || rhs.iter().any(|c| c.len() != n) {
        return Err(LinalgError::Shape);
    }
    if n == 0 {
        return Ok(vec![Vec::new(); rhs.len()]);
    }
    let m = rhs.len();
    let denom = a
        .iter()
        .flatten()
        .chain(rhs.iter().flatten())
        .fold(1u32, |d, x| num_integer::lcm(d, x.denom()));

    // Polynomial augmented matrix [A | B], one cleared row at a time.
    let mut rows: Vec<Vec<Polynomial>> = Vec::with_capacity(n);
    for i in 0..n {
        let entries: Vec<&FieldElement> = a[i].iter().chain(rhs.iter().map(|c| &c[i])).collect();
        let mut lifted = Vec::with_capacity(n + m);
        let mut row_den = Polynomial::one();
        for x in &entries {
            let (num, den) = x.lifted(denom)?;
            if !num.is_zero() {
                row_den = lcm(&row_den, &den);
            }
            lifted.push((num, den));
        }
        rows.push(
            lifted
                .into_iter()
                .map(|(num, den)| {
                    if num.is_zero() || den == row_den {
                        num
                    } else {
                        &num * &row_den.exact_div(&den)
                    }
                })
                .collect(),
        );
    }

    let mut prev = Polynomial::one();
    for k in 0..n {
        let p = (k..n)
            .find(|&i| !rows[i][k].is_zero())
            .ok_or(LinalgError::SingularSystem)?;
        rows.swap(k, p);
        let (top, rest) = rows.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let lead = std::mem::replace(&mut row[k], Polynomial::zero());
            for j in k + 1..n + m {
                let mut t = &row[j] * &pivot_row[k];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    t = &t - &(&lead * &pivot_row[j]);
                }
                row[j] = if prev.is_one() { t } else { t.exact_div(&prev) };
            }
        }
        prev = rows[k][k].clone();
    }

    // Fraction-free back substitution: X = det · x, det = U[n-1][n-1].
    let det = rows[n - 1][n - 1].clone();
    let mut out = Vec::with_capacity(m);
    for c in 0..m {
        let col = n + c;
        let mut xs = vec![Polynomial::zero(); n];
        xs[n - 1] = rows[n - 1][col].clone();
        for i in (0..n - 1).rev() {
            let mut acc = &rows[i][col] * &det;
            for j in i + 1..n {
                if !rows[i][j].is_zero() && !xs[j].is_zero() {
                    acc = &acc - &(&rows[i][j] * &xs[j]);
                }
            }
            xs[i] = acc.exact_div(&rows[i][i]);
        }
        out.push(
            xs.into_iter()
                .map(|x| FieldElement::from_parts(x, det.clone(), denom))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(out)
}

/// Solves `A x = b`.
pub fn solve(a: &[Vec<FieldElement>], b: &[FieldElement]) -> Result<Vec<FieldElement>, LinalgError> {
    Ok(solve_many(a, &[b.to_vec()], DEFAULT_SIZE_CAP)?.pop().unwrap())
}
