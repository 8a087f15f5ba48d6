//! The 2-term DGLA `End1 -δ-> End0_d` of a complex, the strict Lie 2-algebra `gl(V)`,
//! and its action on `V`.

use crate::error::Error;
use crate::exact_linalg::{unit, vadd, Rat, RatMatrix, Subspace};
use crate::report::CheckReport;
use crate::two_vector::{end_spaces, Ambient2, LinearFunctor, Morphism2, TwoTermComplex};

/// An object `A = (A0, A1)` of `gl(V)`, i.e. an element of `End0_d`.
pub type GlObject = LinearFunctor;

/// A morphism `A + φ` of `gl(V)`: source `A`, target `A + δφ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GlMorphism {
    pub a: GlObject,
    pub phi: RatMatrix,
}

impl GlMorphism {
    pub fn new(a: GlObject, phi: RatMatrix) -> Self {
        GlMorphism { a, phi }
    }

    pub fn identity(a: GlObject) -> Self {
        let phi = RatMatrix::zeros(a.a1.rows(), a.a0.cols());
        GlMorphism { a, phi }
    }

    pub fn add(&self, other: &GlMorphism) -> GlMorphism {
        GlMorphism { a: self.a.add(&other.a), phi: self.phi.add(&other.phi) }
    }

    pub fn sub(&self, other: &GlMorphism) -> GlMorphism {
        GlMorphism { a: self.a.sub(&other.a), phi: self.phi.sub(&other.phi) }
    }

    pub fn scale(&self, c: &Rat) -> GlMorphism {
        GlMorphism { a: self.a.scale(c), phi: self.phi.scale(c) }
    }
}

/// `gl(V)` for a fixed complex, with coordinates on `End0_d` (its canonical basis)
/// and on `End1` (row-major entries of `φ`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlSpace {
    complex: TwoTermComplex,
    end0: Subspace,
    delta: RatMatrix,
}

impl GlSpace {
    pub fn new(complex: &TwoTermComplex) -> Self {
        let end0 = end_spaces(complex).end0;
        let e1 = complex.dim_v1() * complex.dim_v0();
        let mut space = GlSpace { complex: complex.clone(), end0, delta: RatMatrix::zeros(0, 0) };
        let cols: Vec<Vec<Rat>> = (0..e1)
            .map(|j| {
                let phi = space.phi_from_coords(&unit(e1, j));
                space.obj_coords(&delta(complex, &phi).expect("phi shape")).expect("δφ lies in End0_d")
            })
            .collect();
        space.delta = RatMatrix::from_cols(space.end0.dim(), &cols);
        space
    }

    pub fn complex(&self) -> &TwoTermComplex {
        &self.complex
    }

    pub fn end0(&self) -> &Subspace {
        &self.end0
    }

    pub fn dim_end0(&self) -> usize {
        self.end0.dim()
    }

    pub fn dim_end1(&self) -> usize {
        self.complex.dim_v1() * self.complex.dim_v0()
    }

    /// Matrix of `δ` from `End1` coordinates to `End0_d` coordinates.
    pub fn delta_matrix(&self) -> &RatMatrix {
        &self.delta
    }

    /// `gl(V)` as a 2-vector space in coordinates.
    pub fn ambient(&self) -> Ambient2 {
        Ambient2::new(self.dim_end0(), self.dim_end1(), self.delta.clone())
    }

    pub fn obj_coords(&self, a: &GlObject) -> Result<Vec<Rat>, Error> {
        let n0 = self.complex.dim_v0();
        let n1 = self.complex.dim_v1();
        if a.a0.shape() != (n0, n0) || a.a1.shape() != (n1, n1) {
            return Err(Error::ShapeMismatch("gl object has the wrong shape".into()));
        }
        self.end0
            .coords(&a.to_vec())
            .ok_or_else(|| Error::NotFunctor("A0 d != d A1".into()))
    }

    pub fn obj_from_coords(&self, c: &[Rat]) -> GlObject {
        LinearFunctor::from_vec(&self.complex, &self.end0.from_coords(c))
    }

    pub fn phi_coords(&self, phi: &RatMatrix) -> Vec<Rat> {
        phi.data().to_vec()
    }

    pub fn phi_from_coords(&self, c: &[Rat]) -> RatMatrix {
        RatMatrix::new(self.complex.dim_v1(), self.complex.dim_v0(), c.to_vec()).expect("End1 coordinates")
    }

    /// Morphism coordinates `[A coords | φ coords]`.
    pub fn mor_coords(&self, x: &GlMorphism) -> Result<Vec<Rat>, Error> {
        let mut v = self.obj_coords(&x.a)?;
        v.extend(self.phi_coords(&x.phi));
        Ok(v)
    }

    pub fn mor_from_coords(&self, c: &[Rat]) -> GlMorphism {
        let e0 = self.dim_end0();
        GlMorphism { a: self.obj_from_coords(&c[..e0]), phi: self.phi_from_coords(&c[e0..]) }
    }

    pub fn obj_basis(&self) -> Vec<GlObject> {
        (0..self.dim_end0()).map(|i| self.obj_from_coords(&unit(self.dim_end0(), i))).collect()
    }

    pub fn end1_basis(&self) -> Vec<RatMatrix> {
        (0..self.dim_end1()).map(|i| self.phi_from_coords(&unit(self.dim_end1(), i))).collect()
    }

    pub fn target(&self, x: &GlMorphism) -> GlObject {
        x.a.add(&delta(&self.complex, &x.phi).expect("phi shape"))
    }
}

/// `δφ = (d φ, φ d)`.
pub fn delta(c: &TwoTermComplex, phi: &RatMatrix) -> Result<GlObject, Error> {
    if phi.shape() != (c.dim_v1(), c.dim_v0()) {
        return Err(Error::ShapeMismatch(format!(
            "φ must be {}x{}, got {}x{}",
            c.dim_v1(),
            c.dim_v0(),
            phi.rows(),
            phi.cols()
        )));
    }
    Ok(LinearFunctor::new(c.d().mul(phi), phi.mul(c.d())))
}

/// `[A, φ] = A1 φ - φ A0`
pub fn bracket_obj_end1(a: &GlObject, phi: &RatMatrix) -> RatMatrix {
    a.a1.mul(phi).sub(&phi.mul(&a.a0))
}

/// `[φ, ψ]_δ = φ d ψ - ψ d φ`
pub fn bracket_delta(c: &TwoTermComplex, phi: &RatMatrix, psi: &RatMatrix) -> RatMatrix {
    phi.mul(c.d()).mul(psi).sub(&psi.mul(c.d()).mul(phi))
}

/// `[A+φ, B+ψ] = [A,B] + ([A,ψ] + [φ,B] + [φ,ψ]_δ)`
pub fn gl_bracket(c: &TwoTermComplex, x: &GlMorphism, y: &GlMorphism) -> GlMorphism {
    let a = x.a.commutator(&y.a);
    let phi = bracket_obj_end1(&x.a, &y.phi)
        .sub(&bracket_obj_end1(&y.a, &x.phi))
        .add(&bracket_delta(c, &x.phi, &y.phi));
    GlMorphism { a, phi }
}

/// `(A+φ)(u+m) = A0 u + (A1 m + φ(u + d m))`
pub fn act(c: &TwoTermComplex, x: &GlMorphism, xi: &Morphism2) -> Morphism2 {
    let target = vadd(&xi.u, &c.apply_d(&xi.m));
    Morphism2 { u: x.a.a0.mul_vec(&xi.u), m: vadd(&x.a.a1.mul_vec(&xi.m), &x.phi.mul_vec(&target)) }
}

/// Object-level action `u -> A0 u`.
pub fn act_object(a: &GlObject, u: &[Rat]) -> Vec<Rat> {
    a.a0.mul_vec(u)
}

/// Bracket components of a 2-term DGLA, replaceable for negative controls.
pub trait DglaBrackets {
    fn bracket00(&self, a: &GlObject, b: &GlObject) -> GlObject;
    fn bracket01(&self, a: &GlObject, phi: &RatMatrix) -> RatMatrix;
}

/// The graded commutator brackets of `End(V)`.
pub struct Commutators;

impl DglaBrackets for Commutators {
    fn bracket00(&self, a: &GlObject, b: &GlObject) -> GlObject {
        a.commutator(b)
    }

    fn bracket01(&self, a: &GlObject, phi: &RatMatrix) -> RatMatrix {
        bracket_obj_end1(a, phi)
    }
}

/// Checks the 2-term DGLA axioms of `End(V)` on basis elements.
pub fn check_dgla(c: &TwoTermComplex) -> CheckReport {
    check_dgla_with(&GlSpace::new(c), &Commutators)
}

pub fn check_dgla_with(space: &GlSpace, br: &dyn DglaBrackets) -> CheckReport {
    let c = space.complex();
    let mut r = CheckReport::new();
    let objs = space.obj_basis();
    let phis = space.end1_basis();
    let lab = |p: &str, i: usize| format!("{p}{i}");
    let obj_vec = |a: &GlObject| a.to_vec();
    let del = |phi: &RatMatrix| delta(c, phi).expect("phi shape");

    for (i, phi) in phis.iter().enumerate() {
        // δ lands in End0_d, and δ∘δ = 0 holds trivially on a 2-term complex.
        r.expect_true("delta-end0", || vec![lab("phi", i)], space.obj_coords(&del(phi)).is_ok());
    }
    for (i, a) in objs.iter().enumerate() {
        for (j, b) in objs.iter().enumerate() {
            let ab = br.bracket00(a, b);
            let ba = br.bracket00(b, a);
            r.expect_zero("skew-00", || vec![lab("A", i), lab("A", j)], &obj_vec(&ab.add(&ba)));
            r.expect_true("closure-00", || vec![lab("A", i), lab("A", j)], space.obj_coords(&ab).is_ok());
        }
        for (j, phi) in phis.iter().enumerate() {
            // δ[A, φ] = [A, δφ]
            let lhs = del(&br.bracket01(a, phi));
            let rhs = br.bracket00(a, &del(phi));
            r.expect_eq("delta-derivation", || vec![lab("A", i), lab("phi", j)], &obj_vec(&lhs), &obj_vec(&rhs));
        }
    }
    for (i, phi) in phis.iter().enumerate() {
        for (j, psi) in phis.iter().enumerate() {
            // [δφ, ψ] = [φ, δψ], with [φ, B] = -[B, φ].
            let lhs = br.bracket01(&del(phi), psi);
            let rhs = br.bracket01(&del(psi), phi).neg();
            r.expect_eq("delta-symmetry", || vec![lab("phi", i), lab("phi", j)], lhs.data(), rhs.data());
        }
    }
    let n = objs.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (&objs[i], &objs[j]);
            for (k, cc) in objs.iter().enumerate().skip(j + 1) {
                let t1 = br.bracket00(a, &br.bracket00(b, cc));
                let t2 = br.bracket00(b, &br.bracket00(cc, a));
                let t3 = br.bracket00(cc, &br.bracket00(a, b));
                let s = t1.add(&t2).add(&t3);
                r.expect_zero("jacobi-000", || vec![lab("A", i), lab("A", j), lab("A", k)], &obj_vec(&s));
            }
            for (k, phi) in phis.iter().enumerate() {
                // [A,[B,φ]] = [[A,B],φ] + [B,[A,φ]]
                let lhs = br.bracket01(a, &br.bracket01(b, phi));
                let rhs = br.bracket01(&br.bracket00(a, b), phi).add(&br.bracket01(b, &br.bracket01(a, phi)));
                r.expect_eq("jacobi-001", || vec![lab("A", i), lab("A", j), lab("phi", k)], lhs.data(), rhs.data());
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{from_ints, half, int, rat};
    use crate::two_vector::check_linear_functor;
    use proptest::prelude::*;

    fn c2() -> TwoTermComplex {
        TwoTermComplex::new(2, 3, RatMatrix::from_ints(3, 2, &[1, 0, 0, 1, 0, 0])).unwrap()
    }

    fn line() -> TwoTermComplex {
        TwoTermComplex::new(1, 1, RatMatrix::from_ints(1, 1, &[1])).unwrap()
    }

    /// so(3) with [e1,e2] = ½e3 and cyclic, acting on the string complex Q -0-> Q^3.
    fn string_complex() -> TwoTermComplex {
        TwoTermComplex::trivial(1, 3)
    }

    fn ad_e1() -> GlObject {
        // columns: e1 -> 0, e2 -> ½e3, e3 -> -½e2
        let mut a0 = RatMatrix::zeros(3, 3);
        a0.set(2, 1, half());
        a0.set(1, 2, -half());
        LinearFunctor::new(a0, RatMatrix::zeros(1, 1))
    }

    #[test]
    fn delta_examples() {
        let z = TwoTermComplex::trivial(2, 3);
        let phi = RatMatrix::from_ints(2, 3, &[1, 2, 3, 4, 5, 6]);
        assert!(delta(&z, &phi).unwrap().is_zero());
        let c = line();
        let d = delta(&c, &RatMatrix::from_ints(1, 1, &[7])).unwrap();
        assert_eq!(d, LinearFunctor::new(RatMatrix::from_ints(1, 1, &[7]), RatMatrix::from_ints(1, 1, &[7])));
        assert!(delta(&c, &RatMatrix::zeros(1, 1)).unwrap().is_zero());
        assert!(delta(&c, &RatMatrix::zeros(2, 1)).is_err());
    }

    #[test]
    fn bracket_examples() {
        let c = line();
        let a = GlMorphism::identity(LinearFunctor::new(RatMatrix::from_ints(1, 1, &[2]), RatMatrix::from_ints(1, 1, &[2])));
        let psi = GlMorphism::new(LinearFunctor::zero(&c), RatMatrix::from_ints(1, 1, &[3]));
        let b = gl_bracket(&c, &a, &psi);
        assert!(b.a.is_zero());
        assert!(b.phi.is_zero());
        let z = TwoTermComplex::trivial(1, 2);
        let p = GlMorphism::new(LinearFunctor::zero(&z), RatMatrix::from_ints(1, 2, &[1, 2]));
        let q = GlMorphism::new(LinearFunctor::zero(&z), RatMatrix::from_ints(1, 2, &[3, -1]));
        let pq = gl_bracket(&z, &p, &q);
        assert!(pq.a.is_zero() && pq.phi.is_zero());
    }

    #[test]
    fn action_examples() {
        let c = string_complex();
        let x = GlMorphism::identity(ad_e1());
        let out = act(&c, &x, &Morphism2::new(from_ints(&[0, 1, 0]), from_ints(&[0])));
        assert_eq!(out.u, vec![int(0), int(0), half()]);
        let c = c2();
        let id = GlMorphism::identity(LinearFunctor::identity(&c));
        let xi = Morphism2::new(from_ints(&[1, 2, 3]), from_ints(&[4, 5]));
        assert_eq!(act(&c, &id, &xi), xi);
        let phi = GlMorphism::new(LinearFunctor::zero(&c), RatMatrix::from_ints(2, 3, &[1, 0, 0, 0, 0, 1]));
        let out = act(&c, &phi, &Morphism2::new(from_ints(&[2, 0, 5]), from_ints(&[0, 0])));
        assert_eq!(out, Morphism2::new(from_ints(&[0, 0, 0]), from_ints(&[2, 5])));
    }

    #[test]
    fn dgla_passes_on_fixtures() {
        assert!(check_dgla(&TwoTermComplex::trivial(1, 2)).passed());
        assert!(check_dgla(&c2()).passed());
        assert!(check_dgla(&line()).passed());
    }

    struct SignFlip;
    impl DglaBrackets for SignFlip {
        fn bracket00(&self, a: &GlObject, b: &GlObject) -> GlObject {
            a.commutator(b)
        }
        fn bracket01(&self, a: &GlObject, phi: &RatMatrix) -> RatMatrix {
            // φ A0 - A1 φ: the representation with the wrong sign on one term.
            a.a1.mul(phi).add(&phi.mul(&a.a0))
        }
    }

    #[test]
    fn corrupted_bracket_fails() {
        let r = check_dgla_with(&GlSpace::new(&c2()), &SignFlip);
        assert!(!r.passed());
        assert!(!r.witnesses.is_empty());
    }

    #[test]
    fn end_space_coordinates_roundtrip() {
        let s = GlSpace::new(&c2());
        assert_eq!((s.dim_end0(), s.dim_end1()), (7, 6));
        for (i, a) in s.obj_basis().iter().enumerate() {
            assert!(check_linear_functor(s.complex(), a).unwrap().holds);
            assert_eq!(s.obj_coords(a).unwrap(), unit(7, i));
        }
        // δφ always satisfies (dφ)d = d(φd).
        for phi in s.end1_basis() {
            let dp = delta(s.complex(), &phi).unwrap();
            assert_eq!(dp.a0.mul(s.complex().d()), s.complex().d().mul(&dp.a1));
        }
    }

    fn rand_gl(s: &GlSpace, xs: &[i64]) -> GlMorphism {
        let c: Vec<Rat> = (0..s.dim_end0() + s.dim_end1()).map(|i| rat(xs[i % xs.len()], 1 + (i as i64 % 2))).collect();
        s.mor_from_coords(&c)
    }

    fn rand_xi(xs: &[i64]) -> Morphism2 {
        Morphism2::new(from_ints(&xs[..3]), from_ints(&xs[3..5]))
    }

    proptest! {
        #[test]
        fn bracket_skew_and_jacobi(a in prop::collection::vec(-3i64..4, 13), b in prop::collection::vec(-3i64..4, 11), cc in prop::collection::vec(-3i64..4, 7)) {
            let s = GlSpace::new(&c2());
            let c = s.complex();
            let (x, y, z) = (rand_gl(&s, &a), rand_gl(&s, &b), rand_gl(&s, &cc));
            let xy = gl_bracket(c, &x, &y);
            let yx = gl_bracket(c, &y, &x);
            prop_assert!(xy.add(&yx).a.is_zero() && xy.add(&yx).phi.is_zero());
            let j = gl_bracket(c, &x, &gl_bracket(c, &y, &z))
                .add(&gl_bracket(c, &y, &gl_bracket(c, &z, &x)))
                .add(&gl_bracket(c, &z, &gl_bracket(c, &x, &y)));
            prop_assert!(j.a.is_zero() && j.phi.is_zero());
            // target of the bracket is the bracket of the targets
            let t = s.target(&xy);
            prop_assert_eq!(t, s.target(&x).commutator(&s.target(&y)));
        }

        #[test]
        fn action_is_functorial(a in prop::collection::vec(-3i64..4, 13), v in prop::collection::vec(-3i64..4, 5)) {
            let s = GlSpace::new(&c2());
            let c = s.complex();
            let x = rand_gl(&s, &a);
            let xi = rand_xi(&v);
            let out = act(c, &x, &xi);
            prop_assert_eq!(&out.u, &act_object(&x.a, &xi.u));
            prop_assert_eq!(c.target(&out), act_object(&s.target(&x), &c.target(&xi)));
        }

        #[test]
        fn action_is_a_representation(a in prop::collection::vec(-3i64..4, 13), b in prop::collection::vec(-3i64..4, 9), v in prop::collection::vec(-3i64..4, 5)) {
            let s = GlSpace::new(&c2());
            let c = s.complex();
            let (x, y) = (rand_gl(&s, &a), rand_gl(&s, &b));
            let xi = rand_xi(&v);
            let lhs = act(c, &gl_bracket(c, &x, &y), &xi);
            let rhs_a = act(c, &x, &act(c, &y, &xi));
            let rhs_b = act(c, &y, &act(c, &x, &xi));
            prop_assert_eq!(lhs.to_vec(), crate::exact_linalg::vsub(&rhs_a.to_vec(), &rhs_b.to_vec()));
        }
    }
}
