//! 2-vector spaces as 2-term complexes `V1 -d-> V0`, their morphisms, linear functors
//! and 2-sub-vector spaces in canonical (object part, kernel part) form.

use num::Zero;

use crate::error::Error;
use crate::exact_linalg::{concat, is_zero_vec, unit, vadd, RatMatrix, Rat, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoTermComplex {
    dim_v1: usize,
    dim_v0: usize,
    d: RatMatrix,
}

impl TwoTermComplex {
    pub fn new(dim_v1: usize, dim_v0: usize, d: RatMatrix) -> Result<Self, Error> {
        if d.shape() != (dim_v0, dim_v1) {
            return Err(Error::ShapeMismatch(format!(
                "d must be {dim_v0}x{dim_v1}, got {}x{}",
                d.rows(),
                d.cols()
            )));
        }
        Ok(TwoTermComplex { dim_v1, dim_v0, d })
    }

    /// The complex with `d = 0`.
    pub fn trivial(dim_v1: usize, dim_v0: usize) -> Self {
        TwoTermComplex { dim_v1, dim_v0, d: RatMatrix::zeros(dim_v0, dim_v1) }
    }

    pub fn dim_v1(&self) -> usize {
        self.dim_v1
    }

    pub fn dim_v0(&self) -> usize {
        self.dim_v0
    }

    pub fn d(&self) -> &RatMatrix {
        &self.d
    }

    pub fn has_zero_differential(&self) -> bool {
        self.d.is_zero()
    }

    pub fn apply_d(&self, m: &[Rat]) -> Vec<Rat> {
        self.d.mul_vec(m)
    }

    pub fn source(&self, f: &Morphism2) -> Vec<Rat> {
        f.u.clone()
    }

    pub fn target(&self, f: &Morphism2) -> Vec<Rat> {
        vadd(&f.u, &self.apply_d(&f.m))
    }

    pub fn identity(&self, u: &[Rat]) -> Morphism2 {
        Morphism2 { u: u.to_vec(), m: vec![Rat::zero(); self.dim_v1] }
    }

    /// `f` followed by `g`; requires `target(f) = source(g)`.
    pub fn compose(&self, f: &Morphism2, g: &Morphism2) -> Result<Morphism2, Error> {
        self.check_morphism(f)?;
        self.check_morphism(g)?;
        if self.target(f) != g.u {
            return Err(Error::NotComposable);
        }
        Ok(Morphism2 { u: f.u.clone(), m: vadd(&f.m, &g.m) })
    }

    pub fn check_morphism(&self, f: &Morphism2) -> Result<(), Error> {
        if f.u.len() != self.dim_v0 {
            return Err(Error::DimensionMismatch { expected: self.dim_v0, found: f.u.len() });
        }
        if f.m.len() != self.dim_v1 {
            return Err(Error::DimensionMismatch { expected: self.dim_v1, found: f.m.len() });
        }
        Ok(())
    }

    pub fn ambient(&self) -> Ambient2 {
        Ambient2::new(self.dim_v0, self.dim_v1, self.d.clone())
    }
}

/// A morphism `u + m` of a 2-vector space: source `u`, kernel-of-source part `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism2 {
    pub u: Vec<Rat>,
    pub m: Vec<Rat>,
}

impl Morphism2 {
    pub fn new(u: Vec<Rat>, m: Vec<Rat>) -> Self {
        Morphism2 { u, m }
    }

    /// Flattened coordinates `[u | m]`.
    pub fn to_vec(&self) -> Vec<Rat> {
        concat(&self.u, &self.m)
    }

    pub fn from_vec(v: &[Rat], obj_dim: usize) -> Self {
        Morphism2 { u: v[..obj_dim].to_vec(), m: v[obj_dim..].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.u) && is_zero_vec(&self.m)
    }
}

/// Any 2-vector space in coordinates: objects `Q^obj_dim`, kernel of source `Q^ker_dim`,
/// and the map sending a kernel element to the target of the corresponding morphism from 0.
/// Morphisms are vectors `[object | kernel]` of length `obj_dim + ker_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ambient2 {
    obj_dim: usize,
    ker_dim: usize,
    target_map: RatMatrix,
}

impl Ambient2 {
    pub fn new(obj_dim: usize, ker_dim: usize, target_map: RatMatrix) -> Self {
        assert_eq!(target_map.shape(), (obj_dim, ker_dim), "target map shape mismatch");
        Ambient2 { obj_dim, ker_dim, target_map }
    }

    pub fn obj_dim(&self) -> usize {
        self.obj_dim
    }

    pub fn ker_dim(&self) -> usize {
        self.ker_dim
    }

    pub fn mor_dim(&self) -> usize {
        self.obj_dim + self.ker_dim
    }

    pub fn target_map(&self) -> &RatMatrix {
        &self.target_map
    }

    pub fn source_of(&self, f: &[Rat]) -> Vec<Rat> {
        f[..self.obj_dim].to_vec()
    }

    pub fn kernel_of(&self, f: &[Rat]) -> Vec<Rat> {
        f[self.obj_dim..].to_vec()
    }

    pub fn target_of(&self, f: &[Rat]) -> Vec<Rat> {
        vadd(&f[..self.obj_dim], &self.target_map.mul_vec(&f[self.obj_dim..]))
    }

    pub fn identity_of(&self, x: &[Rat]) -> Vec<Rat> {
        concat(x, &vec![Rat::zero(); self.ker_dim])
    }

    /// The morphism from 0 with kernel part `k`.
    pub fn from_kernel(&self, k: &[Rat]) -> Vec<Rat> {
        concat(&vec![Rat::zero(); self.obj_dim], k)
    }

    pub fn compose(&self, f: &[Rat], g: &[Rat]) -> Result<Vec<Rat>, Error> {
        if self.target_of(f) != self.source_of(g) {
            return Err(Error::NotComposable);
        }
        Ok(concat(&f[..self.obj_dim], &vadd(&f[self.obj_dim..], &g[self.obj_dim..])))
    }

    pub fn full(&self) -> Sub2VectorSpace {
        Sub2VectorSpace {
            ambient: self.clone(),
            s0: Subspace::full(self.obj_dim),
            k: Subspace::full(self.ker_dim),
        }
    }

    pub fn zero(&self) -> Sub2VectorSpace {
        Sub2VectorSpace {
            ambient: self.clone(),
            s0: Subspace::zero(self.obj_dim),
            k: Subspace::zero(self.ker_dim),
        }
    }

    /// Basis of the morphism space: identities of unit objects, then kernel units.
    pub fn morphism_basis(&self) -> Vec<Vec<Rat>> {
        (0..self.mor_dim()).map(|i| unit(self.mor_dim(), i)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sub2VectorSpace {
    ambient: Ambient2,
    s0: Subspace,
    k: Subspace,
}

/// Validates target closure: the image of `k` under the target map lies in `s0`.
pub fn make_sub2(ambient: &Ambient2, s0: Subspace, k: Subspace) -> Result<Sub2VectorSpace, Error> {
    if s0.ambient() != ambient.obj_dim {
        return Err(Error::DimensionMismatch { expected: ambient.obj_dim, found: s0.ambient() });
    }
    if k.ambient() != ambient.ker_dim {
        return Err(Error::DimensionMismatch { expected: ambient.ker_dim, found: k.ambient() });
    }
    for (index, v) in k.basis_vecs().iter().enumerate() {
        if !s0.contains(&ambient.target_map.mul_vec(v)) {
            return Err(Error::TargetClosure { index });
        }
    }
    Ok(Sub2VectorSpace { ambient: ambient.clone(), s0, k })
}

impl Sub2VectorSpace {
    /// Splits a subspace of morphisms into objects and kernel part. Fails unless the
    /// subspace contains the identities of its sources and is target-closed.
    pub fn from_morphisms(ambient: &Ambient2, morphisms: &Subspace) -> Result<Self, Error> {
        if morphisms.ambient() != ambient.mor_dim() {
            return Err(Error::DimensionMismatch { expected: ambient.mor_dim(), found: morphisms.ambient() });
        }
        let vs = morphisms.basis_vecs();
        let s0 = Subspace::span(ambient.obj_dim, &vs.iter().map(|v| ambient.source_of(v)).collect::<Vec<_>>());
        let kernel_part = Subspace::span(
            ambient.mor_dim(),
            &(ambient.obj_dim..ambient.mor_dim()).map(|i| unit(ambient.mor_dim(), i)).collect::<Vec<_>>(),
        );
        let kin = morphisms.intersect(&kernel_part)?;
        let k = Subspace::span(ambient.ker_dim, &kin.basis_vecs().iter().map(|v| ambient.kernel_of(v)).collect::<Vec<_>>());
        let out = make_sub2(ambient, s0, k)?;
        if &out.morphism_subspace() != morphisms {
            return Err(Error::Precondition("morphism subspace does not contain the identities of its objects".into()));
        }
        Ok(out)
    }

    pub fn ambient(&self) -> &Ambient2 {
        &self.ambient
    }

    pub fn s0(&self) -> &Subspace {
        &self.s0
    }

    pub fn k(&self) -> &Subspace {
        &self.k
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.s0.dim(), self.k.dim())
    }

    /// Identities of the object basis followed by morphisms from 0 with kernel basis parts.
    pub fn morphism_basis(&self) -> Vec<Vec<Rat>> {
        let mut out: Vec<Vec<Rat>> = self.s0.basis_vecs().iter().map(|x| self.ambient.identity_of(x)).collect();
        out.extend(self.k.basis_vecs().iter().map(|k| self.ambient.from_kernel(k)));
        out
    }

    pub fn morphism_subspace(&self) -> Subspace {
        Subspace::span(self.ambient.mor_dim(), &self.morphism_basis())
    }

    pub fn contains_morphism(&self, f: &[Rat]) -> bool {
        self.s0.contains(&self.ambient.source_of(f)) && self.k.contains(&self.ambient.kernel_of(f))
    }

    pub fn is_subspace_of(&self, other: &Sub2VectorSpace) -> bool {
        self.s0.is_subspace_of(&other.s0) && self.k.is_subspace_of(&other.k)
    }

    pub fn intersect(&self, other: &Sub2VectorSpace) -> Result<Sub2VectorSpace, Error> {
        make_sub2(&self.ambient, self.s0.intersect(&other.s0)?, self.k.intersect(&other.k)?)
    }

    pub fn sum(&self, other: &Sub2VectorSpace) -> Result<Sub2VectorSpace, Error> {
        make_sub2(&self.ambient, self.s0.sum(&other.s0)?, self.k.sum(&other.k)?)
    }

    /// Whether `self` and `other` are complementary 2-sub-vector spaces.
    pub fn is_complement_of(&self, other: &Sub2VectorSpace) -> bool {
        let ok = |a: &Subspace, b: &Subspace| {
            a.dim() + b.dim() == a.ambient() && a.intersect(b).map(|i| i.is_zero()).unwrap_or(false)
        };
        ok(&self.s0, &other.s0) && ok(&self.k, &other.k)
    }

    /// A deterministic complementary 2-sub-vector space, if one exists.
    ///
    /// One exists iff `t^{-1}(s0) ⊆ k + ker t`, where `t` is the target map.
    pub fn complementary(&self) -> Option<Sub2VectorSpace> {
        let t = &self.ambient.target_map;
        let pre = self.s0.preimage(t);
        let ker_t = t.kernel();
        let z = self.k.sum(&pre.intersect(&ker_t).ok()?).ok()?;
        if !pre.is_subspace_of(&z) {
            return None;
        }
        let c1 = self.k.extend_by(&pre.intersect(&ker_t).ok()?.basis_vecs());
        let c2 = pre.complement();
        let w1 = c1.sum(&c2).ok()?;
        let image = c2.image(t);
        let base = self.s0.sum(&image).ok()?;
        let w0 = image.sum(&base.complement()).ok()?;
        let out = make_sub2(&self.ambient, w0, w1).ok()?;
        out.is_complement_of(self).then_some(out)
    }
}

/// Result of a linear functor check. `witness` is a `V1` vector where `a0 d != d a1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorCheck {
    pub holds: bool,
    pub witness: Option<Vec<Rat>>,
}

/// A candidate linear functor `(a0, a1)` on objects and on kernel parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearFunctor {
    pub a0: RatMatrix,
    pub a1: RatMatrix,
}

impl LinearFunctor {
    pub fn new(a0: RatMatrix, a1: RatMatrix) -> Self {
        LinearFunctor { a0, a1 }
    }

    pub fn identity(c: &TwoTermComplex) -> Self {
        LinearFunctor { a0: RatMatrix::identity(c.dim_v0), a1: RatMatrix::identity(c.dim_v1) }
    }

    pub fn zero(c: &TwoTermComplex) -> Self {
        LinearFunctor { a0: RatMatrix::zeros(c.dim_v0, c.dim_v0), a1: RatMatrix::zeros(c.dim_v1, c.dim_v1) }
    }

    /// Flattened `[a0 row-major | a1 row-major]`.
    pub fn to_vec(&self) -> Vec<Rat> {
        concat(self.a0.data(), self.a1.data())
    }

    pub fn from_vec(c: &TwoTermComplex, v: &[Rat]) -> Self {
        let n0 = c.dim_v0 * c.dim_v0;
        LinearFunctor {
            a0: RatMatrix::new(c.dim_v0, c.dim_v0, v[..n0].to_vec()).expect("a0 shape"),
            a1: RatMatrix::new(c.dim_v1, c.dim_v1, v[n0..].to_vec()).expect("a1 shape"),
        }
    }

    pub fn add(&self, other: &LinearFunctor) -> LinearFunctor {
        LinearFunctor { a0: self.a0.add(&other.a0), a1: self.a1.add(&other.a1) }
    }

    pub fn sub(&self, other: &LinearFunctor) -> LinearFunctor {
        LinearFunctor { a0: self.a0.sub(&other.a0), a1: self.a1.sub(&other.a1) }
    }

    pub fn scale(&self, c: &Rat) -> LinearFunctor {
        LinearFunctor { a0: self.a0.scale(c), a1: self.a1.scale(c) }
    }

    /// Componentwise commutator.
    pub fn commutator(&self, other: &LinearFunctor) -> LinearFunctor {
        LinearFunctor { a0: self.a0.commutator(&other.a0), a1: self.a1.commutator(&other.a1) }
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a1.is_zero()
    }

    pub fn apply(&self, f: &Morphism2) -> Morphism2 {
        Morphism2 { u: self.a0.mul_vec(&f.u), m: self.a1.mul_vec(&f.m) }
    }
}

/// Checks `a0 d = d a1` for an endofunctor of `c`.
pub fn check_linear_functor(c: &TwoTermComplex, f: &LinearFunctor) -> Result<FunctorCheck, Error> {
    check_linear_functor_between(c, c, f)
}

/// Checks `a0 d_domain = d_codomain a1`.
pub fn check_linear_functor_between(
    domain: &TwoTermComplex,
    codomain: &TwoTermComplex,
    f: &LinearFunctor,
) -> Result<FunctorCheck, Error> {
    if f.a0.shape() != (codomain.dim_v0, domain.dim_v0) || f.a1.shape() != (codomain.dim_v1, domain.dim_v1) {
        return Err(Error::ShapeMismatch(format!(
            "functor components {}x{} and {}x{} do not fit the complexes",
            f.a0.rows(),
            f.a0.cols(),
            f.a1.rows(),
            f.a1.cols()
        )));
    }
    for j in 0..domain.dim_v1 {
        let e = unit(domain.dim_v1, j);
        let lhs = f.a0.mul_vec(&domain.apply_d(&e));
        let rhs = codomain.apply_d(&f.a1.mul_vec(&e));
        if lhs != rhs {
            return Ok(FunctorCheck { holds: false, witness: Some(e) });
        }
    }
    Ok(FunctorCheck { holds: true, witness: None })
}

/// End-spaces of a complex: `End0_d` as a subspace of flattened pairs, and `dim End1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndSpaces {
    pub end0: Subspace,
    pub end1_dim: usize,
}

/// `End0_d = ker((a0, a1) -> a0 d - d a1)` and `End1 = Hom(V0, V1)`.
pub fn end_spaces(c: &TwoTermComplex) -> EndSpaces {
    let (n0, n1) = (c.dim_v0, c.dim_v1);
    let total = n0 * n0 + n1 * n1;
    // Column j of the constraint matrix is the image of the j-th flattened unit pair.
    let cols: Vec<Vec<Rat>> = (0..total)
        .map(|j| {
            let f = LinearFunctor::from_vec(c, &unit(total, j));
            f.a0.mul(&c.d).sub(&c.d.mul(&f.a1)).data().to_vec()
        })
        .collect();
    let constraint = RatMatrix::from_cols(n0 * n1, &cols);
    EndSpaces { end0: constraint.kernel(), end1_dim: n1 * n0 }
}
