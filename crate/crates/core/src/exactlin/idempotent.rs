//! Calculus of idempotent matrices under the relation `x ⊑ y :⟺ y x = x`.
//!
//! A list `a_0, ..., a_{n-1}` is *admissible* when every `a_i` is
//! idempotent and `a_i a_j ⊑ a_j` (that is `a_j a_i a_j = a_i a_j`) for all
//! `i < j`. Admissible lists have their product as meet and induce a
//! complete list of orthogonal idempotents.

use super::{LinError, QMat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdempotentError {
    #[error("empty idempotent list")]
    Empty,
    #[error("matrix {index} has shape {shape:?}; expected a square matrix of size {dim}")]
    Shape { index: usize, shape: (usize, usize), dim: usize },
    /// `i == j` means `a_i` is not idempotent; otherwise `a_j a_i a_j != a_i a_j`.
    #[error("precondition violated at (i={i}, j={j})")]
    PreconditionViolated { i: usize, j: usize },
    #[error("internal check failed: {0}")]
    Postcondition(&'static str),
    #[error(transparent)]
    Lin(#[from] LinError),
}

/// `y x == x`.
pub fn below(x: &QMat, y: &QMat) -> bool {
    y.mul(x).is_ok_and(|yx| &yx == x)
}

fn check_shapes(list: &[QMat]) -> Result<usize, IdempotentError> {
    let first = list.first().ok_or(IdempotentError::Empty)?;
    let dim = first.rows();
    for (index, a) in list.iter().enumerate() {
        if a.shape() != (dim, dim) {
            return Err(IdempotentError::Shape { index, shape: a.shape(), dim });
        }
    }
    Ok(dim)
}

/// First pair `(i, j)`, `i <= j`, in lexicographic order at which the list
/// fails to be admissible.
pub fn admissibility_violation(list: &[QMat]) -> Option<(usize, usize)> {
    for i in 0..list.len() {
        for j in i..list.len() {
            let ok = if i == j {
                list[i].is_idempotent()
            } else {
                below(&list[i].dot(&list[j]), &list[j])
            };
            if !ok {
                return Some((i, j));
            }
        }
    }
    None
}

fn check_admissible(list: &[QMat]) -> Result<usize, IdempotentError> {
    let dim = check_shapes(list)?;
    match admissibility_violation(list) {
        Some((i, j)) => Err(IdempotentError::PreconditionViolated { i, j }),
        None => Ok(dim),
    }
}

/// Meet of an admissible list, which is the product `a_0 a_1 ... a_{n-1}`.
pub fn meet_of_idempotents(list: &[QMat]) -> Result<QMat, IdempotentError> {
    let dim = check_admissible(list)?;
    let meet = list.iter().fold(QMat::identity(dim), |acc, a| acc.dot(a));
    if !meet.is_idempotent() {
        return Err(IdempotentError::Postcondition("meet is not idempotent"));
    }
    if !list.iter().all(|a| below(&meet, a)) {
        return Err(IdempotentError::Postcondition("meet is not below every input"));
    }
    Ok(meet)
}

/// For an admissible list of length `n` returns `e_0, ..., e_n` with
/// `e_0 = a_0 ⋯ a_{n-1}`, `e_i = (1 - a_{i-1}) a_i ⋯ a_{n-1}` and
/// `e_n = 1 - a_{n-1}`. The result is checked to be complete (sums to the
/// identity) and orthogonal.
pub fn orthogonal_idempotents(list: &[QMat]) -> Result<Vec<QMat>, IdempotentError> {
    let dim = check_admissible(list)?;
    let n = list.len();
    // suffix[i] = a_i ⋯ a_{n-1}, suffix[n] = 1
    let mut suffix = vec![QMat::identity(dim); n + 1];
    for i in (0..n).rev() {
        suffix[i] = list[i].dot(&suffix[i + 1]);
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(suffix[0].clone());
    for i in 1..=n {
        out.push(list[i - 1].complement()?.dot(&suffix[i]));
    }
    verify_complete_orthogonal(&out)?;
    Ok(out)
}

/// Checks that the list sums to the identity, every member is idempotent
/// and distinct members multiply to zero.
pub fn verify_complete_orthogonal(es: &[QMat]) -> Result<(), IdempotentError> {
    let dim = check_shapes(es)?;
    let mut total = QMat::zeros(dim, dim);
    for e in es {
        total = total.add(e)?;
    }
    if !total.is_identity() {
        return Err(IdempotentError::Postcondition("idempotents do not sum to the identity"));
    }
    for (i, e) in es.iter().enumerate() {
        if !e.is_idempotent() {
            return Err(IdempotentError::Postcondition("member is not idempotent"));
        }
        for (j, f) in es.iter().enumerate() {
            if i != j && !e.dot(f).is_zero() {
                return Err(IdempotentError::Postcondition("members are not orthogonal"));
            }
        }
    }
    Ok(())
}
