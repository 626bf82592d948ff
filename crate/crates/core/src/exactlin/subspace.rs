use serde::{Deserialize, Serialize};

use super::{LinError, QMat, Q};

/// A linear subspace of `Q^n`, held by a basis in reduced column echelon
/// form. The form is canonical, so two subspaces are equal exactly when
/// their bases are equal matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: QMat,
    /// Row of `basis` holding the leading one of each column.
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the columns of `m`.
    pub fn span(m: &QMat) -> Subspace {
        let (r, pivots) = m.transpose().rref();
        let k = pivots.len();
        let basis = r.submatrix(0..k, 0..m.rows()).transpose();
        Subspace { ambient_dim: m.rows(), basis, pivots }
    }

    pub fn full(n: usize) -> Subspace {
        Subspace { ambient_dim: n, basis: QMat::identity(n), pivots: (0..n).collect() }
    }

    pub fn zero(n: usize) -> Subspace {
        Subspace { ambient_dim: n, basis: QMat::zeros(n, 0), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Columns form the canonical basis; this is also the inclusion map
    /// into the ambient space.
    pub fn basis(&self) -> &QMat {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Coordinates of the columns of `m` in this basis, or `None` when some
    /// column lies outside the subspace.
    pub fn coordinates(&self, m: &QMat) -> Option<QMat> {
        if m.rows() != self.ambient_dim {
            return None;
        }
        let x = QMat::from_fn(self.dim(), m.cols(), |j, c| m[(self.pivots[j], c)].clone());
        (self.basis.dot(&x) == *m).then_some(x)
    }

    pub fn contains(&self, m: &QMat) -> bool {
        self.coordinates(m).is_some()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinError> {
        self.check_ambient(other)?;
        Ok(Subspace::span(&self.basis.hstack(&other.basis)?))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinError> {
        self.check_ambient(other)?;
        // x in both iff x = A u = B v, i.e. (u, v) in ker [A | -B].
        let stacked = self.basis.hstack(&other.basis.neg())?;
        let k = kernel(&stacked);
        let u = k.basis().submatrix(0..self.dim(), 0..k.dim());
        Ok(Subspace::span(&self.basis.dot(&u)))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinError::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        Ok(())
    }
}

/// The null space `{x : m x = 0}`.
pub fn kernel(m: &QMat) -> Subspace {
    let n = m.cols();
    let (r, pivots) = m.rref();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut spanning = QMat::zeros(n, free.len());
    for (c, &f) in free.iter().enumerate() {
        spanning[(f, c)] = Q::one();
        for (row, &p) in pivots.iter().enumerate() {
            spanning[(p, c)] = -&r[(row, f)];
        }
    }
    Subspace::span(&spanning)
}

/// The unique `X` with `cod.basis() * X = m * dom.basis()`: the matrix of
/// `m` viewed as a map `dom -> cod`.
pub fn restrict(m: &QMat, dom: &Subspace, cod: &Subspace) -> Result<QMat, LinError> {
    if m.cols() != dom.ambient_dim() || m.rows() != cod.ambient_dim() {
        return Err(LinError::Mismatch { left: m.shape(), right: (cod.ambient_dim(), dom.ambient_dim()), op: "restrict" });
    }
    let image = m.mul(dom.basis())?;
    cod.coordinates(&image).ok_or(LinError::NotContained)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_zero_and_identity() {
        assert_eq!(kernel(&QMat::zeros(3, 3)), Subspace::full(3));
        assert_eq!(kernel(&QMat::identity(3)), Subspace::zero(3));
    }

    #[test]
    fn kernel_of_row_sum() {
        let k = kernel(&QMat::from_ints(&[[1, 1]]));
        assert_eq!(k.dim(), 1);
        assert_eq!(k, Subspace::span(&QMat::from_ints(&[[1], [-1]])));
    }

    #[test]
    fn canonical_basis_is_representation_independent() {
        let a = Subspace::span(&QMat::from_ints(&[[1, 2], [1, 0], [0, 1]]));
        let b = Subspace::span(&QMat::from_ints(&[[3, 1], [1, 1], [1, 0]]));
        assert_eq!(a, b);
    }

    #[test]
    fn intersections() {
        let s = Subspace::span(&QMat::from_ints(&[[1], [2]]));
        assert_eq!(Subspace::full(2).intersect(&s).unwrap(), s);
        let t = Subspace::span(&QMat::from_ints(&[[1], [0]]));
        assert_eq!(s.intersect(&t).unwrap(), Subspace::zero(2));
        assert!(s.intersect(&Subspace::full(3)).is_err());
    }

    #[test]
    fn restrict_full_is_identity_op() {
        let m = QMat::from_ints(&[[1, 2], [3, 4]]);
        assert_eq!(restrict(&m, &Subspace::full(2), &Subspace::full(2)).unwrap(), m);
    }

    #[test]
    fn restrict_detects_escape() {
        let m = QMat::from_ints(&[[0, 1], [1, 0]]);
        let line = Subspace::span(&QMat::from_ints(&[[1], [0]]));
        assert_eq!(restrict(&m, &line, &line), Err(LinError::NotContained));
        let diag = Subspace::span(&QMat::from_ints(&[[1], [1]]));
        assert_eq!(restrict(&m, &diag, &diag).unwrap(), QMat::identity(1));
    }
}
