//! Twisted omni-Lie 2-algebras, twists `μ = (Id, Id, [·,·] + dα)` built from a cochain
//! `α: End0_d -> End1`, string-type Lie 2-algebras of quadratic Lie algebras, and the
//! so(3) example assembled end to end.

use num::Zero;

use crate::dirac_core::{graph_of_functor, is_dirac_in, perp_in, DiracCheck, OmniSub};
use crate::error::Error;
use crate::exact_linalg::{
    dot, half, unit, vadd, vscale, vsub, zeros, Rat, RatMatrix, Subspace, Tensor,
};
use crate::gl_two::{act, gl_bracket, GlObject, GlSpace};
use crate::lie2_core::{
    ad_functor, gl_constants, is_isomorphism, linfty_check, morphism_coherence, AdFunctor, BilinearFunctor,
    Lie2Morphism, Lie2Structure,
};
use crate::omni_core::{OmniBilinear, OmniMorphism, OmniObject, OmniOps, OmniSpace};
use crate::report::CheckReport;
use crate::two_vector::{Ambient2, Morphism2, TwoTermComplex};

/// A Lie 2-algebra automorphism of `gl(V)` used to twist the omni-Lie 2-algebra.
pub type TwistMorphism = Lie2Morphism;

/// Checks that `μ` is an isomorphism satisfying every coherence identity.
pub fn validate_twist(mu: &TwistMorphism) -> Result<(), Error> {
    if !is_isomorphism(mu) {
        return Err(Error::NotInvertible("functor part of the twist".into()));
    }
    let r = morphism_coherence(mu);
    if let Some(id) = r.first_identity() {
        return Err(Error::Precondition(format!("twist fails {id}")));
    }
    Ok(())
}

/// A Lie algebra with a symmetric, nondegenerate, invariant inner product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticLieAlgebra {
    dim: usize,
    bracket: Tensor,
    ip: RatMatrix,
}

impl QuadraticLieAlgebra {
    pub fn new(bracket: Tensor, ip: RatMatrix) -> Result<Self, Error> {
        let q = Self::new_unchecked(bracket, ip)?;
        q.validate()?;
        Ok(q)
    }

    /// Only checks shapes. Useful for building deliberately broken examples.
    pub fn new_unchecked(bracket: Tensor, ip: RatMatrix) -> Result<Self, Error> {
        let n = bracket.out();
        if bracket.in_dims() != [n, n] || ip.shape() != (n, n) {
            return Err(Error::ShapeMismatch("bracket must be n x n -> n and ip n x n".into()));
        }
        Ok(QuadraticLieAlgebra { dim: n, bracket, ip })
    }

    /// Names the first failing axiom.
    pub fn validate(&self) -> Result<(), Error> {
        let n = self.dim;
        let e = |i: usize| unit(n, i);
        let bad = |s: &str| Err(Error::QuadraticInvalid(s.into()));
        for i in 0..n {
            for j in 0..n {
                if !vadd(&self.br(&e(i), &e(j)), &self.br(&e(j), &e(i))).iter().all(Zero::is_zero) {
                    return bad("antisymmetry");
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (x, y, z) = (e(i), e(j), e(k));
                    let s = vadd(
                        &vadd(&self.br(&x, &self.br(&y, &z)), &self.br(&y, &self.br(&z, &x))),
                        &self.br(&z, &self.br(&x, &y)),
                    );
                    if !s.iter().all(Zero::is_zero) {
                        return bad("jacobi");
                    }
                }
            }
        }
        if self.ip.transpose() != self.ip {
            return bad("symmetric");
        }
        if self.ip.inverse().is_none() {
            return bad("nondegenerate");
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (u, v, w) = (e(i), e(j), e(k));
                    let s = self.inner(&self.br(&u, &v), &w) + self.inner(&v, &self.br(&u, &w));
                    if !s.is_zero() {
                        return bad("invariance");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket(&self) -> &Tensor {
        &self.bracket
    }

    pub fn ip(&self) -> &RatMatrix {
        &self.ip
    }

    pub fn br(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        self.bracket.apply(&[u, v])
    }

    pub fn inner(&self, u: &[Rat], v: &[Rat]) -> Rat {
        dot(u, &self.ip.mul_vec(v))
    }

    /// The matrix of `ad_u = [u, ·]`.
    pub fn ad_matrix(&self, u: &[Rat]) -> RatMatrix {
        self.bracket.partial_first(u)
    }

    pub fn with_ip(&self, ip: RatMatrix) -> Result<Self, Error> {
        Self::new(self.bracket.clone(), ip)
    }

    /// Block sum of two quadratic Lie algebras.
    pub fn direct_sum(&self, other: &QuadraticLieAlgebra) -> Result<Self, Error> {
        let (a, b) = (self.dim, other.dim);
        let n = a + b;
        let bracket = Tensor::from_fn(&[n, n], n, |ix| {
            let mut v = zeros(n);
            match (ix[0] < a, ix[1] < a) {
                (true, true) => v[..a].clone_from_slice(self.bracket.entry(&[ix[0], ix[1]])),
                (false, false) => v[a..].clone_from_slice(other.bracket.entry(&[ix[0] - a, ix[1] - a])),
                _ => {}
            }
            v
        });
        let mut ip = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let x = match (i < a, j < a) {
                    (true, true) => self.ip.get(i, j).clone(),
                    (false, false) => other.ip.get(i - a, j - a).clone(),
                    _ => Rat::zero(),
                };
                ip.set(i, j, x);
            }
        }
        Self::new(bracket, ip)
    }
}

/// `so(3)` with `[e_i, e_{i+1}] = ½ e_{i+2}` (indices mod 3) and `⟨e_i, e_j⟩ = δ_ij`.
pub fn so3() -> QuadraticLieAlgebra {
    let bracket = Tensor::from_fn(&[3, 3], 3, |ix| {
        let (i, j) = (ix[0], ix[1]);
        let mut v = zeros(3);
        if i != j {
            v[3 - i - j] = if (j + 3 - i) % 3 == 1 { half() } else { -half() };
        }
        v
    });
    QuadraticLieAlgebra::new(bracket, RatMatrix::identity(3)).expect("so(3) is quadratic")
}

/// The abelian Lie algebra with the given inner product.
pub fn abelian(ip: RatMatrix) -> Result<QuadraticLieAlgebra, Error> {
    let n = ip.rows();
    QuadraticLieAlgebra::new(Tensor::zeros(&[n, n], n), ip)
}

/// `R -0-> V` with `V1` one-dimensional.
pub fn string_complex(n: usize) -> TwoTermComplex {
    TwoTermComplex::trivial(1, n)
}

/// `l2(u,v) = [u,v]`, zero on the `R` slot, and `l3(u,v,w) = ⟨[u,v], w⟩`.
pub fn string_type(q: &QuadraticLieAlgebra) -> Result<Lie2Structure, Error> {
    q.validate()?;
    Ok(string_type_unchecked(q))
}

/// [`string_type`] without validating `q`.
pub fn string_type_unchecked(q: &QuadraticLieAlgebra) -> Lie2Structure {
    let n = q.dim();
    let c = string_complex(n);
    let l2 = BilinearFunctor::skew(&c, q.bracket.clone(), Tensor::zeros(&[n, 1], 1)).expect("shapes");
    let l3 = Tensor::from_fn(&[n, n, n], 1, |ix| {
        vec![q.inner(&q.br(&unit(n, ix[0]), &unit(n, ix[1])), &unit(n, ix[2]))]
    });
    Lie2Structure::new(l2, l3).expect("shapes")
}

/// A linear map `End0_d -> End1` stored as a matrix on coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaCochain {
    space: GlSpace,
    matrix: RatMatrix,
}

impl AlphaCochain {
    pub fn new(space: &GlSpace, matrix: RatMatrix) -> Result<Self, Error> {
        if matrix.shape() != (space.dim_end1(), space.dim_end0()) {
            return Err(Error::ShapeMismatch("alpha must map End0_d coordinates to End1 coordinates".into()));
        }
        Ok(AlphaCochain { space: space.clone(), matrix })
    }

    pub fn zero(space: &GlSpace) -> Self {
        AlphaCochain { space: space.clone(), matrix: RatMatrix::zeros(space.dim_end1(), space.dim_end0()) }
    }

    /// Builds `α` from its values on the basis of `End0_d`.
    pub fn from_fn(space: &GlSpace, mut f: impl FnMut(&GlObject) -> RatMatrix) -> Result<Self, Error> {
        let mut cols = Vec::new();
        for a in space.obj_basis() {
            let phi = f(&a);
            if phi.shape() != (space.complex().dim_v1(), space.complex().dim_v0()) {
                return Err(Error::ShapeMismatch("alpha value is not in End1".into()));
            }
            cols.push(space.phi_coords(&phi));
        }
        Self::new(space, RatMatrix::from_cols(space.dim_end1(), &cols))
    }

    pub fn space(&self) -> &GlSpace {
        &self.space
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn apply(&self, a: &[Rat]) -> Vec<Rat> {
        self.matrix.mul_vec(a)
    }

    pub fn value(&self, a: &GlObject) -> Result<RatMatrix, Error> {
        Ok(self.space.phi_from_coords(&self.apply(&self.space.obj_coords(a)?)))
    }
}

/// `dα(A,B) = [A, αB] - [B, αA] - α[A,B]` on coordinates.
pub fn ce_differential(alpha: &AlphaCochain) -> Tensor {
    let space = &alpha.space;
    let (e0, e1) = (space.dim_end0(), space.dim_end1());
    let k = gl_constants(space);
    Tensor::from_fn(&[e0, e0], e1, |ix| {
        let (a, b) = (unit(e0, ix[0]), unit(e0, ix[1]));
        let s = vsub(&k.c01.apply(&[&a, &alpha.apply(&b)]), &k.c01.apply(&[&b, &alpha.apply(&a)]));
        vsub(&s, &alpha.apply(&k.c00.apply(&[&a, &b])))
    })
}

/// Skewness and the 2-cocycle identity of `ω: End0_d x End0_d -> End1` for the action
/// `A·φ = [A, φ]`, on basis elements.
pub fn check_ce_cocycle(space: &GlSpace, omega: &Tensor) -> CheckReport {
    let (e0, e1) = (space.dim_end0(), space.dim_end1());
    let mut r = CheckReport::new();
    if omega.in_dims() != [e0, e0] || omega.out() != e1 {
        r.record_fail("shape", Vec::new(), &[]);
        return r;
    }
    let k = gl_constants(space);
    let w = |a: &[Rat], b: &[Rat]| omega.apply(&[a, b]);
    let act = |a: &[Rat], p: &[Rat]| k.c01.apply(&[a, p]);
    let br = |a: &[Rat], b: &[Rat]| k.c00.apply(&[a, b]);
    let a = |i: usize| unit(e0, i);
    let la = |i: usize| format!("A{i}");
    for i in 0..e0 {
        for j in i..e0 {
            r.expect_zero("ce-skew", || vec![la(i), la(j)], &vadd(&w(&a(i), &a(j)), &w(&a(j), &a(i))));
        }
    }
    for i in 0..e0 {
        for j in i + 1..e0 {
            for l in j + 1..e0 {
                let (x, y, z) = (a(i), a(j), a(l));
                let acts = vadd(&vsub(&act(&x, &w(&y, &z)), &act(&y, &w(&x, &z))), &act(&z, &w(&x, &y)));
                let inner = vadd(&vsub(&w(&br(&x, &y), &z), &w(&br(&x, &z), &y)), &w(&br(&y, &z), &x));
                r.expect_zero("ce-cocycle", || vec![la(i), la(j), la(l)], &vsub(&acts, &inner));
            }
        }
    }
    r
}

/// `μ = (Id, Id, [·,·] + dα)` on a complex with zero differential.
pub fn mu_from_alpha(alpha: &AlphaCochain) -> Result<TwistMorphism, Error> {
    if !alpha.space.complex().d().is_zero() {
        return Err(Error::NonZeroDifferential);
    }
    let mut mu = Lie2Morphism::identity(&alpha.space);
    mu.chi = ce_differential(alpha);
    Ok(mu)
}

/// Reads `u` off the `ad(V)` component of a matrix `A0 = ad_u + X`, with `X` in a chosen
/// complement of the image of `ad`.
#[derive(Clone, Debug)]
pub struct AdSplitting {
    ad: RatMatrix,
    proj: RatMatrix,
}

impl AdSplitting {
    pub fn new(q: &QuadraticLieAlgebra, complement: &Subspace) -> Result<Self, Error> {
        let n = q.dim();
        let cols: Vec<Vec<Rat>> = (0..n).map(|i| q.ad_matrix(&unit(n, i)).data().to_vec()).collect();
        let ad = RatMatrix::from_cols(n * n, &cols);
        if ad.rank() < n {
            return Err(Error::CenterNonTrivial);
        }
        if complement.ambient() != n * n {
            return Err(Error::InvalidComplement(format!(
                "complement lives in dimension {}, expected {}",
                complement.ambient(),
                n * n
            )));
        }
        let proj = ad.image().projection_along(complement)?;
        Ok(AdSplitting { ad, proj })
    }

    pub fn u_of(&self, a0: &RatMatrix) -> Vec<Rat> {
        self.ad.solve(&self.proj.mul_vec(a0.data())).expect("projection lies in the image of ad")
    }
}

/// Symmetric `n x n` matrices, row-major, as a subspace of `gl(n)`.
pub fn symmetric_matrices(n: usize) -> Subspace {
    let mut vs = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut v = zeros(n * n);
            v[i * n + j] = Rat::from_integer(1.into());
            v[j * n + i] = Rat::from_integer(1.into());
            vs.push(v);
        }
    }
    Subspace::span(n * n, &vs)
}

/// `α(ad_u + X + r)(v) = ⟨u, v⟩` on the string complex of `q`, with `X` in `complement`.
pub fn alpha_for_quadratic(q: &QuadraticLieAlgebra, complement: &Subspace) -> Result<AlphaCochain, Error> {
    let split = AdSplitting::new(q, complement)?;
    let n = q.dim();
    let space = GlSpace::new(&string_complex(n));
    AlphaCochain::from_fn(&space, |a| {
        let u = split.u_of(&a.a0);
        RatMatrix::from_rows(n, &[q.ip.transpose().mul_vec(&u)])
    })
}

/// The omni-Lie 2-algebra `gl(V) ⊕ V` with operations twisted by `μ`.
#[derive(Clone, Debug)]
pub struct TwistedOmni {
    space: OmniSpace,
    mu: TwistMorphism,
}

impl TwistedOmni {
    pub fn new(space: &OmniSpace, mu: &TwistMorphism) -> Result<Self, Error> {
        if space.gl() != &mu.space {
            return Err(Error::Precondition("twist lives on a different gl(V)".into()));
        }
        validate_twist(mu)?;
        Ok(TwistedOmni { space: space.clone(), mu: mu.clone() })
    }

    pub fn identity(space: &OmniSpace) -> Self {
        TwistedOmni { space: space.clone(), mu: Lie2Morphism::identity(space.gl()) }
    }

    pub fn mu(&self) -> &TwistMorphism {
        &self.mu
    }

    fn twisted_actions(&self, e1: &OmniMorphism, e2: &OmniMorphism) -> Result<(Morphism2, Morphism2), Error> {
        self.space.validate(e1)?;
        self.space.validate(e2)?;
        let c = self.space.complex();
        let s = act(c, &self.mu.apply(&e1.gl()), &e2.v());
        let t = act(c, &self.mu.apply(&e2.gl()), &e1.v());
        Ok((s, t))
    }

    fn mu0(&self, a: &GlObject) -> Result<GlObject, Error> {
        let gl = self.space.gl();
        Ok(gl.obj_from_coords(&self.mu.mu0.mul_vec(&gl.obj_coords(a)?)))
    }

    fn twisted_obj_actions(&self, e1: &OmniObject, e2: &OmniObject) -> Result<(Vec<Rat>, Vec<Rat>), Error> {
        let s = self.mu0(&e1.a)?.a0.mul_vec(&e2.u);
        let t = self.mu0(&e2.a)?.a0.mul_vec(&e1.u);
        Ok((s, t))
    }

    /// `½(μ1(A+φ)(v+n) + μ1(B+ψ)(u+m))`
    pub fn pairing(&self, e1: &OmniMorphism, e2: &OmniMorphism) -> Result<Morphism2, Error> {
        let (s, t) = self.twisted_actions(e1, e2)?;
        Ok(Morphism2::new(vscale(&vadd(&s.u, &t.u), &half()), vscale(&vadd(&s.m, &t.m), &half())))
    }

    /// `[A+φ, B+ψ] + ½(μ1(A+φ)(v+n) - μ1(B+ψ)(u+m))`
    pub fn courant(&self, e1: &OmniMorphism, e2: &OmniMorphism) -> Result<OmniMorphism, Error> {
        let (s, t) = self.twisted_actions(e1, e2)?;
        let v = Morphism2::new(vscale(&vsub(&s.u, &t.u), &half()), vscale(&vsub(&s.m, &t.m), &half()));
        Ok(OmniMorphism::from_parts(gl_bracket(self.space.complex(), &e1.gl(), &e2.gl()), v))
    }

    /// Courant bracket plus pairing: `[A+φ, B+ψ] + μ1(A+φ)(v+n)`.
    pub fn dorfman(&self, e1: &OmniMorphism, e2: &OmniMorphism) -> Result<OmniMorphism, Error> {
        let (s, _) = self.twisted_actions(e1, e2)?;
        Ok(OmniMorphism::from_parts(gl_bracket(self.space.complex(), &e1.gl(), &e2.gl()), s))
    }

    pub fn pairing_obj(&self, e1: &OmniObject, e2: &OmniObject) -> Result<Vec<Rat>, Error> {
        let (s, t) = self.twisted_obj_actions(e1, e2)?;
        Ok(vscale(&vadd(&s, &t), &half()))
    }

    pub fn courant_obj(&self, e1: &OmniObject, e2: &OmniObject) -> Result<OmniObject, Error> {
        let (s, t) = self.twisted_obj_actions(e1, e2)?;
        Ok(OmniObject { a: e1.a.commutator(&e2.a), u: vscale(&vsub(&s, &t), &half()) })
    }

    /// `{A+u, B+v}_μ = [A,B] + (μ0 A) v`
    pub fn dorfman_obj(&self, e1: &OmniObject, e2: &OmniObject) -> Result<OmniObject, Error> {
        let (s, _) = self.twisted_obj_actions(e1, e2)?;
        Ok(OmniObject { a: e1.a.commutator(&e2.a), u: s })
    }

    /// The morphism `J = [[A,B],C] + μ2(A,B)(w)` for objects `A+u, B+v, C+w`.
    pub fn jacobiator(&self, e1: &OmniObject, e2: &OmniObject, e3: &OmniObject) -> Result<OmniMorphism, Error> {
        let gl = self.space.gl();
        let ab = e1.a.commutator(&e2.a);
        let abc = ab.commutator(&e3.a);
        let u = self.mu0(&ab)?.a0.mul_vec(&e3.u);
        let chi = self.mu.chi_value(&gl.obj_coords(&e1.a)?, &gl.obj_coords(&e2.a)?);
        let c = self.space.complex();
        Ok(OmniMorphism {
            a: abc,
            phi: RatMatrix::zeros(c.dim_v1(), c.dim_v0()),
            u,
            m: chi.mul_vec(&e3.u),
        })
    }

    /// Source and target of the Jacobiator against iterated Dorfman brackets, on basis triples.
    pub fn check_jacobiator(&self) -> CheckReport {
        let s = &self.space;
        let basis = s.object_basis();
        let mut r = CheckReport::new();
        let coords = |o: &OmniObject| s.obj_coords(o).expect("closed");
        let dorf = |x: &OmniObject, y: &OmniObject| self.dorfman_obj(x, y).expect("valid objects");
        let lab = |i: usize| format!("e{i}");
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let xy = dorf(x, y);
                for (l, z) in basis.iter().enumerate() {
                    let jac = self.jacobiator(x, y, z).expect("valid objects");
                    let src = dorf(&xy, z);
                    r.expect_eq("jacobiator-source", || vec![lab(i), lab(j), lab(l)], &coords(&jac.source()), &coords(&src));
                    let tgt = vsub(&coords(&dorf(x, &dorf(y, z))), &coords(&dorf(y, &dorf(x, z))));
                    r.expect_eq("jacobiator-target", || vec![lab(i), lab(j), lab(l)], &coords(&s.target(&jac)), &tgt);
                }
            }
        }
        r
    }
}

impl OmniOps for TwistedOmni {
    fn space(&self) -> &OmniSpace {
        &self.space
    }
    fn pairing(&self, e1: &OmniMorphism, e2: &OmniMorphism) -> Result<Morphism2, Error> {
        TwistedOmni::pairing(self, e1, e2)
    }
    fn courant(&self, e1: &OmniMorphism, e2: &OmniMorphism) -> Result<OmniMorphism, Error> {
        TwistedOmni::courant(self, e1, e2)
    }
    fn dorfman(&self, e1: &OmniMorphism, e2: &OmniMorphism) -> Result<OmniMorphism, Error> {
        TwistedOmni::dorfman(self, e1, e2)
    }
}

pub struct TwistedPairing<'a>(pub &'a TwistedOmni);
pub struct TwistedCourant<'a>(pub &'a TwistedOmni);
pub struct TwistedDorfman<'a>(pub &'a TwistedOmni);

impl OmniBilinear for TwistedPairing<'_> {
    fn name(&self) -> &str {
        "twisted-pairing"
    }
    fn codomain(&self) -> Ambient2 {
        self.0.space.complex().ambient()
    }
    fn on_objects(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let s = &self.0.space;
        self.0.pairing_obj(&s.obj_from_coords(x), &s.obj_from_coords(y)).expect("coordinates")
    }
    fn on_morphisms(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let s = &self.0.space;
        self.0.pairing(&s.mor_from_coords(x), &s.mor_from_coords(y)).expect("coordinates").to_vec()
    }
}

impl OmniBilinear for TwistedCourant<'_> {
    fn name(&self) -> &str {
        "twisted-courant"
    }
    fn codomain(&self) -> Ambient2 {
        self.0.space.ambient().clone()
    }
    fn on_objects(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let s = &self.0.space;
        s.obj_coords(&self.0.courant_obj(&s.obj_from_coords(x), &s.obj_from_coords(y)).expect("coordinates"))
            .expect("closed")
    }
    fn on_morphisms(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let s = &self.0.space;
        s.mor_coords(&self.0.courant(&s.mor_from_coords(x), &s.mor_from_coords(y)).expect("coordinates"))
            .expect("closed")
    }
}

impl OmniBilinear for TwistedDorfman<'_> {
    fn name(&self) -> &str {
        "twisted-dorfman"
    }
    fn codomain(&self) -> Ambient2 {
        self.0.space.ambient().clone()
    }
    fn on_objects(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let s = &self.0.space;
        s.obj_coords(&self.0.dorfman_obj(&s.obj_from_coords(x), &s.obj_from_coords(y)).expect("coordinates"))
            .expect("closed")
    }
    fn on_morphisms(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let s = &self.0.space;
        s.mor_coords(&self.0.dorfman(&s.mor_from_coords(x), &s.mor_from_coords(y)).expect("coordinates"))
            .expect("closed")
    }
}

/// `L⊥` for the twisted pairing.
pub fn twisted_perp(tw: &TwistedOmni, l: &OmniSub) -> Result<OmniSub, Error> {
    perp_in(tw, l)
}

/// Maximal isotropy for the twisted pairing and closure under the twisted brackets.
pub fn twisted_is_dirac(tw: &TwistedOmni, l: &OmniSub) -> Result<DiracCheck, Error> {
    is_dirac_in(tw, l)
}

/// The bracket `[ξ, η] = μ1(F ξ)(η)` and `l3(u,v,w) = χ(F u, F v)(w)`.
pub fn lie2_from_twisted_functor(mu: &TwistMorphism, f: &AdFunctor) -> Result<Lie2Structure, Error> {
    let gl = &mu.space;
    if f.space() != gl {
        return Err(Error::Precondition("functor lands in a different gl(V)".into()));
    }
    let c = gl.complex();
    let (n0, n1) = (c.dim_v0(), c.dim_v1());
    let fu: Vec<Vec<Rat>> = (0..n0).map(|i| f.obj_matrix().col(i)).collect();
    let g: Vec<GlObject> = fu.iter().map(|a| gl.obj_from_coords(&mu.mu0.mul_vec(a))).collect();
    let h: Vec<RatMatrix> =
        (0..n1).map(|j| gl.phi_from_coords(&mu.mu1.mul_vec(&f.ker_matrix().col(j)))).collect();
    let f00 = Tensor::from_fn(&[n0, n0], n0, |ix| g[ix[0]].a0.col(ix[1]));
    let f01 = Tensor::from_fn(&[n0, n1], n1, |ix| g[ix[0]].a1.col(ix[1]));
    let f10 = Tensor::from_fn(&[n1, n0], n1, |ix| h[ix[0]].col(ix[1]));
    let l3 = Tensor::from_fn(&[n0, n0, n0], n1, |ix| mu.chi_value(&fu[ix[0]], &fu[ix[1]]).col(ix[2]));
    Lie2Structure::new(BilinearFunctor::new(c, f00, f01, f10)?, l3)
}

/// [`lie2_from_twisted_functor`] for `F = ad_B` of a bilinear functor `B`.
pub fn lie2_from_twisted_graph(mu: &TwistMorphism, f: &BilinearFunctor) -> Result<Lie2Structure, Error> {
    lie2_from_twisted_functor(mu, &ad_functor(&mu.space, f)?)
}

/// The graph of `F = ad_B`; the graph itself does not depend on the twist.
pub fn twisted_graph(space: &OmniSpace, f: &BilinearFunctor) -> Result<OmniSub, Error> {
    graph_of_functor(space, &ad_functor(space.gl(), f)?)
}

/// Twisted Dirac verdict on the graph of `ad_B` together with the L∞ verdict on the
/// induced structure.
#[derive(Clone, Debug)]
pub struct Correspondence {
    pub dirac: DiracCheck,
    pub structure: Lie2Structure,
    pub linfty: CheckReport,
}

impl Correspondence {
    pub fn agree(&self) -> bool {
        self.dirac.is_dirac() == self.linfty.passed()
    }
}

pub fn twisted_correspondence(mu: &TwistMorphism, f: &BilinearFunctor) -> Result<Correspondence, Error> {
    let space = OmniSpace::new(mu.space.complex());
    let tw = TwistedOmni::new(&space, mu)?;
    let dirac = twisted_is_dirac(&tw, &twisted_graph(&space, f)?)?;
    let structure = lie2_from_twisted_graph(mu, f)?;
    let linfty = linfty_check(&structure);
    Ok(Correspondence { dirac, structure, linfty })
}

/// Everything in the so(3) string example, with the outcome of each check.
#[derive(Clone, Debug)]
pub struct So3Example {
    pub q: QuadraticLieAlgebra,
    pub complex: TwoTermComplex,
    pub alpha: AlphaCochain,
    pub mu: TwistMorphism,
    pub f: BilinearFunctor,
    pub graph: OmniSub,
    pub dirac: DiracCheck,
    pub structure: Lie2Structure,
    pub string: Lie2Structure,
    pub chi_e1_e2_e3: Rat,
    pub report: CheckReport,
}

impl So3Example {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

pub fn so3_example() -> Result<So3Example, Error> {
    let q = so3();
    let complex = string_complex(3);
    let gl = GlSpace::new(&complex);
    let space = OmniSpace::new(&complex);
    let symm = symmetric_matrices(3);
    let alpha = alpha_for_quadratic(&q, &symm)?;
    let mu = mu_from_alpha(&alpha)?;
    let string = string_type(&q)?;
    let f = string.l2().clone();
    let ad = ad_functor(&gl, &f)?;
    let e = |i: usize| unit(3, i);
    let mut report = CheckReport::new();

    report.expect_eq("bracket-table", || vec!["e2".into(), "e3".into()], &q.br(&e(1), &e(2)), &vscale(&e(0), &half()));

    // α(ad_u)(v) = ⟨u,v⟩, α(S) = 0 for symmetric S, α(r) = 0
    for i in 0..3 {
        let phi = alpha.value(&ad.obj_map(&e(i)))?;
        for j in 0..3 {
            let want = q.inner(&e(i), &e(j));
            report.expect_eq("alpha-ad", || vec![format!("e{}", i + 1), format!("e{}", j + 1)], &[phi.get(0, j).clone()], &[want]);
        }
    }
    for s in symm.basis_vecs() {
        let a = GlObject::new(RatMatrix::new(3, 3, s)?, RatMatrix::zeros(1, 1));
        report.expect_true("alpha-symmetric", Vec::new, alpha.value(&a)?.is_zero());
    }
    let r = GlObject::new(RatMatrix::zeros(3, 3), RatMatrix::identity(1));
    report.expect_true("alpha-r", Vec::new, alpha.value(&r)?.is_zero());

    report.merge(check_ce_cocycle(&gl, &mu.chi));
    report.merge(morphism_coherence(&mu));
    let chi = mu.chi_value(&ad.obj_matrix().col(0), &ad.obj_matrix().col(1));
    let chi_e1_e2_e3 = chi.get(0, 2).clone();
    report.expect_eq("chi-value", || vec!["ad_e1".into(), "ad_e2".into(), "e3".into()], &[chi_e1_e2_e3.clone()], &[half()]);

    let tw = TwistedOmni::new(&space, &mu)?;
    report.merge(tw.check_jacobiator());
    let graph = graph_of_functor(&space, &ad)?;
    let dirac = twisted_is_dirac(&tw, &graph)?;
    report.expect_true("twisted-dirac", Vec::new, dirac.is_dirac());
    let structure = lie2_from_twisted_functor(&mu, &ad)?;
    report.expect_true("matches-string-type", Vec::new, structure == string);
    report.merge(linfty_check(&structure));

    Ok(So3Example { q, complex, alpha, mu, f, graph, dirac, structure, string, chi_e1_e2_e3, report })
}
