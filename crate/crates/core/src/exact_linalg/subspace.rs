//! Subspaces of `Q^n` stored by their reduced row echelon basis.

use num::{One, Zero};

use super::matrix::RatMatrix;
use super::rational::{is_zero_vec, unit, vaxpy, Rat};
use crate::error::Error;

/// Equality of two values is equality of subspaces, since the basis is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: RatMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vec<Rat>]) -> Self {
        let m = RatMatrix::from_rows(ambient, vectors);
        let (r, pivots) = m.rref();
        let rows: Vec<Vec<Rat>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis: RatMatrix::from_rows(ambient, &rows), pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Self::span(ambient, &[])
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: RatMatrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn basis_vecs(&self) -> Vec<Vec<Rat>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), Error> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in the subspace.
    pub fn coords(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let c: Vec<Rat> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (i, ci) in c.iter().enumerate() {
            vaxpy(&mut rest, &-ci, self.basis.row(i));
        }
        is_zero_vec(&rest).then_some(c)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coords(v).is_some()
    }

    pub fn from_coords(&self, c: &[Rat]) -> Vec<Rat> {
        assert_eq!(c.len(), self.dim(), "coordinate length mismatch");
        let mut v = vec![Rat::zero(); self.ambient];
        for (i, ci) in c.iter().enumerate() {
            vaxpy(&mut v, ci, self.basis.row(i));
        }
        v
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis_vecs().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        let mut vs = self.basis_vecs();
        vs.extend(other.basis_vecs());
        Ok(Subspace::span(self.ambient, &vs))
    }

    /// Orthogonal complement for the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        self.basis.kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// Greedy complement: standard basis vectors at the non-pivot columns.
    pub fn complement(&self) -> Subspace {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let vs: Vec<Vec<Rat>> =
            (0..self.ambient).filter(|&j| !is_pivot[j]).map(|j| unit(self.ambient, j)).collect();
        Subspace::span(self.ambient, &vs)
    }

    /// A complement of `self` inside `outer`, built by greedily adding basis vectors of `outer`.
    pub fn complement_within(&self, outer: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(outer)?;
        if !self.is_subspace_of(outer) {
            return Err(Error::Precondition("subspace is not contained in the outer space".into()));
        }
        Ok(self.extend_by(&outer.basis_vecs()))
    }

    /// Span of the candidates greedily chosen to extend `self` without redundancy.
    pub fn extend_by(&self, candidates: &[Vec<Rat>]) -> Subspace {
        let mut acc = self.clone();
        let mut chosen = Vec::new();
        for v in candidates {
            if !acc.contains(v) {
                let mut vs = acc.basis_vecs();
                vs.push(v.clone());
                acc = Subspace::span(self.ambient, &vs);
                chosen.push(v.clone());
            }
        }
        Subspace::span(self.ambient, &chosen)
    }

    /// `{M v : v in self}`
    pub fn image(&self, m: &RatMatrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient, "map domain mismatch");
        let vs: Vec<Vec<Rat>> = self.basis_vecs().iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(m.rows(), &vs)
    }

    /// `{v : M v in self}`
    pub fn preimage(&self, m: &RatMatrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient, "map codomain mismatch");
        let ann = self.annihilator();
        RatMatrix::from_rows(self.ambient, &ann.basis_vecs()).mul(m).kernel()
    }

    /// Linear equations (rows) cutting out this subspace.
    pub fn equations(&self) -> RatMatrix {
        RatMatrix::from_rows(self.ambient, &self.annihilator().basis_vecs())
    }

    /// Projection onto `self` along `along`, assuming the two are complementary.
    pub fn projection_along(&self, along: &Subspace) -> Result<RatMatrix, Error> {
        self.check_ambient(along)?;
        let mut cols = self.basis_vecs();
        cols.extend(along.basis_vecs());
        if cols.len() != self.ambient || self.intersect(along)?.dim() != 0 {
            return Err(Error::InvalidComplement("subspaces are not complementary".into()));
        }
        let change = RatMatrix::from_cols(self.ambient, &cols);
        let inv = change.inverse().ok_or_else(|| Error::InvalidComplement("singular basis".into()))?;
        let mut keep = vec![Rat::zero(); self.ambient];
        for k in keep.iter_mut().take(self.dim()) {
            *k = Rat::one();
        }
        Ok(change.mul(&RatMatrix::diag(&keep)).mul(&inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::rational::{from_ints, int};
    use proptest::prelude::*;

    fn e(n: usize, i: usize) -> Vec<Rat> {
        unit(n, i)
    }

    #[test]
    fn intersect_examples() {
        let u = Subspace::span(3, &[e(3, 0), e(3, 1)]);
        let w = Subspace::span(3, &[e(3, 1), e(3, 2)]);
        assert_eq!(u.intersect(&u).unwrap(), u);
        assert_eq!(
            Subspace::span(3, &[e(3, 0)]).intersect(&Subspace::span(3, &[e(3, 1)])).unwrap(),
            Subspace::zero(3)
        );
        let got = u.intersect(&w).unwrap();
        assert_eq!(got, Subspace::span(3, &[e(3, 1)]));
        // Independent oracle: solve a u-coordinate combination equal to a w-combination.
        let stacked = RatMatrix::from_cols(3, &[e(3, 0), e(3, 1), e(3, 1), e(3, 2)]);
        let k = stacked.kernel();
        let via_kernel: Vec<Vec<Rat>> = k
            .basis_vecs()
            .iter()
            .map(|c| u.from_coords(&c[..2]))
            .collect();
        assert_eq!(Subspace::span(3, &via_kernel), got);
        assert!(u.intersect(&Subspace::zero(2)).is_err());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Subspace::zero(2).complement(), Subspace::full(2));
        assert_eq!(Subspace::full(2).complement(), Subspace::zero(2));
        let u = Subspace::span(3, &[from_ints(&[1, 1, 0])]);
        assert_eq!(u.complement(), Subspace::span(3, &[e(3, 1), e(3, 2)]));
    }

    #[test]
    fn complement_within_and_projection() {
        let outer = Subspace::span(3, &[e(3, 0), e(3, 1)]);
        let inner = Subspace::span(3, &[from_ints(&[1, 1, 0])]);
        let c = inner.complement_within(&outer).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(inner.sum(&c).unwrap(), outer);
        let p = inner.projection_along(&inner.complement()).unwrap();
        assert_eq!(p.mul_vec(&from_ints(&[2, 5, 7])), from_ints(&[2, 2, 0]));
    }

    #[test]
    fn canonical_basis() {
        let a = Subspace::span(3, &[from_ints(&[1, 2, 0]), from_ints(&[0, 1, 1])]);
        let b = Subspace::span(3, &[from_ints(&[1, 3, 1]), from_ints(&[2, 3, -1])]);
        assert_eq!(a, b);
        // canonical basis is (1,0,-2), (0,1,1)
        assert_eq!(a.coords(&from_ints(&[1, 3, 1])), Some(vec![int(1), int(3)]));
        assert_eq!(a.coords(&from_ints(&[0, 0, 1])), None);
    }

    fn subspace(n: usize) -> impl Strategy<Value = Subspace> {
        prop::collection::vec(prop::collection::vec(-2i64..3, n), 0..=n)
            .prop_map(move |rows| Subspace::span(n, &rows.iter().map(|r| from_ints(r)).collect::<Vec<_>>()))
    }

    proptest! {
        #[test]
        fn modular_law(u in subspace(4), w in subspace(4)) {
            let s = u.sum(&w).unwrap();
            let i = u.intersect(&w).unwrap();
            prop_assert_eq!(u.dim() + w.dim(), s.dim() + i.dim());
            prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&w));
        }

        #[test]
        fn complement_is_complementary(u in subspace(4)) {
            let c = u.complement();
            prop_assert!(u.intersect(&c).unwrap().is_zero());
            prop_assert!(u.sum(&c).unwrap().is_full());
        }

        #[test]
        fn canonical_under_respanning(u in subspace(4), mix in prop::collection::vec(-2i64..3, 16)) {
            let vs = u.basis_vecs();
            let k = vs.len();
            let mut combos = vs.clone();
            for i in 0..k {
                let mut v = vs[i].clone();
                // unitriangular mixing keeps the family a basis
                for (j, w) in vs.iter().enumerate().take(i) {
                    vaxpy(&mut v, &int(mix[(i * 4 + j) % 16]), w);
                }
                combos[i] = v;
            }
            combos.push(vec![Rat::zero(); 4]);
            prop_assert_eq!(Subspace::span(4, &combos), u);
        }
    }
}
