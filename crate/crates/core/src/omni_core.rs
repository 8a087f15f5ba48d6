//! The omni-Lie 2-algebra `gl(V) ⊕ V`: the V-valued pairing, the skew bracket, the
//! Dorfman bracket, the Jacobi anomaly, functoriality and the Leibniz rule.
//!
//! Coordinates on `gl(V) ⊕ V`: objects are `[A | u]` (End0_d coordinates, then `V0`),
//! kernel parts are `[φ | m]`, morphisms are `[A | u | φ | m]`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::exact_linalg::{concat, half, int, rat, vadd, vscale, vsub, Rat, RatMatrix};
use crate::gl_two::{act, gl_bracket, GlMorphism, GlObject, GlSpace};
use crate::report::CheckReport;
use crate::two_vector::{Ambient2, Morphism2, TwoTermComplex};

/// An object `A + u` of `gl(V) ⊕ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmniObject {
    pub a: GlObject,
    pub u: Vec<Rat>,
}

/// A morphism `A + φ + u + m`: source `A + u`, target `(A + δφ) + (u + dm)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmniMorphism {
    pub a: GlObject,
    pub phi: RatMatrix,
    pub u: Vec<Rat>,
    pub m: Vec<Rat>,
}

impl OmniMorphism {
    pub fn from_parts(x: GlMorphism, xi: Morphism2) -> Self {
        OmniMorphism { a: x.a, phi: x.phi, u: xi.u, m: xi.m }
    }

    pub fn identity(c: &TwoTermComplex, e: &OmniObject) -> Self {
        OmniMorphism {
            a: e.a.clone(),
            phi: RatMatrix::zeros(c.dim_v1(), c.dim_v0()),
            u: e.u.clone(),
            m: crate::exact_linalg::zeros(c.dim_v1()),
        }
    }

    pub fn gl(&self) -> GlMorphism {
        GlMorphism::new(self.a.clone(), self.phi.clone())
    }

    pub fn v(&self) -> Morphism2 {
        Morphism2::new(self.u.clone(), self.m.clone())
    }

    pub fn source(&self) -> OmniObject {
        OmniObject { a: self.a.clone(), u: self.u.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmniSpace {
    gl: GlSpace,
    ambient: Ambient2,
}

impl OmniSpace {
    pub fn new(complex: &TwoTermComplex) -> Self {
        let gl = GlSpace::new(complex);
        let (e0, e1) = (gl.dim_end0(), gl.dim_end1());
        let (n0, n1) = (complex.dim_v0(), complex.dim_v1());
        let mut t = RatMatrix::zeros(e0 + n0, e1 + n1);
        for i in 0..e0 {
            for j in 0..e1 {
                t.set(i, j, gl.delta_matrix().get(i, j).clone());
            }
        }
        for i in 0..n0 {
            for j in 0..n1 {
                t.set(e0 + i, e1 + j, complex.d().get(i, j).clone());
            }
        }
        OmniSpace { gl, ambient: Ambient2::new(e0 + n0, e1 + n1, t) }
    }

    pub fn complex(&self) -> &TwoTermComplex {
        self.gl.complex()
    }

    pub fn gl(&self) -> &GlSpace {
        &self.gl
    }

    /// The underlying 2-vector space of `gl(V) ⊕ V` in coordinates.
    pub fn ambient(&self) -> &Ambient2 {
        &self.ambient
    }

    pub fn obj_dim(&self) -> usize {
        self.ambient.obj_dim()
    }

    pub fn mor_dim(&self) -> usize {
        self.ambient.mor_dim()
    }

    fn check_vectors(&self, u: &[Rat], m: Option<&[Rat]>) -> Result<(), Error> {
        let c = self.complex();
        if u.len() != c.dim_v0() {
            return Err(Error::DimensionMismatch { expected: c.dim_v0(), found: u.len() });
        }
        if let Some(m) = m {
            if m.len() != c.dim_v1() {
                return Err(Error::DimensionMismatch { expected: c.dim_v1(), found: m.len() });
            }
        }
        Ok(())
    }

    pub fn obj_coords(&self, e: &OmniObject) -> Result<Vec<Rat>, Error> {
        self.check_vectors(&e.u, None)?;
        Ok(concat(&self.gl.obj_coords(&e.a)?, &e.u))
    }

    pub fn obj_from_coords(&self, c: &[Rat]) -> OmniObject {
        let e0 = self.gl.dim_end0();
        OmniObject { a: self.gl.obj_from_coords(&c[..e0]), u: c[e0..].to_vec() }
    }

    pub fn mor_coords(&self, e: &OmniMorphism) -> Result<Vec<Rat>, Error> {
        self.check_vectors(&e.u, Some(&e.m))?;
        let c = self.complex();
        if e.phi.shape() != (c.dim_v1(), c.dim_v0()) {
            return Err(Error::ShapeMismatch("φ has the wrong shape".into()));
        }
        let obj = concat(&self.gl.obj_coords(&e.a)?, &e.u);
        let ker = concat(&self.gl.phi_coords(&e.phi), &e.m);
        Ok(concat(&obj, &ker))
    }

    pub fn mor_from_coords(&self, v: &[Rat]) -> OmniMorphism {
        let (e0, e1) = (self.gl.dim_end0(), self.gl.dim_end1());
        let n0 = self.complex().dim_v0();
        let o = e0 + n0;
        OmniMorphism {
            a: self.gl.obj_from_coords(&v[..e0]),
            u: v[e0..o].to_vec(),
            phi: self.gl.phi_from_coords(&v[o..o + e1]),
            m: v[o + e1..].to_vec(),
        }
    }

    pub fn validate(&self, e: &OmniMorphism) -> Result<(), Error> {
        self.mor_coords(e).map(|_| ())
    }

    pub fn target(&self, e: &OmniMorphism) -> OmniObject {
        let c = self.complex();
        OmniObject { a: self.gl.target(&e.gl()), u: vadd(&e.u, &c.apply_d(&e.m)) }
    }

    /// Identities of the object basis followed by the pure kernel basis.
    pub fn morphism_basis(&self) -> Vec<OmniMorphism> {
        self.ambient.morphism_basis().iter().map(|v| self.mor_from_coords(v)).collect()
    }

    pub fn object_basis(&self) -> Vec<OmniObject> {
        let n = self.obj_dim();
        (0..n).map(|i| self.obj_from_coords(&crate::exact_linalg::unit(n, i))).collect()
    }

    /// `⟨e1, e2⟩ = ½((A+φ)(v+n) + (B+ψ)(u+m))`
    pub fn pairing(&self, e1: &OmniMorphism, e2: &OmniMorphism) -> Result<Morphism2, Error> {
        self.validate(e1)?;
        self.validate(e2)?;
        let c = self.complex();
        let s = act(c, &e1.gl(), &e2.v());
        let t = act(c, &e2.gl(), &e1.v());
        Ok(Morphism2::new(vscale(&vadd(&s.u, &t.u), &half()), vscale(&vadd(&s.m, &t.m), &half())))
    }

    /// `⟨A+u, B+v⟩ = ½(A0 v + B0 u)`
    pub fn pairing_obj(&self, e1: &OmniObject, e2: &OmniObject) -> Result<Vec<Rat>, Error> {
        self.obj_coords(e1)?;
        self.obj_coords(e2)?;
        Ok(vscale(&vadd(&e1.a.a0.mul_vec(&e2.u), &e2.a.a0.mul_vec(&e1.u)), &half()))
    }

    /// `[A+φ, B+ψ] + ½((A+φ)(v+n) - (B+ψ)(u+m))`
    pub fn courant(&self, e1: &OmniMorphism, e2: &OmniMorphism) -> Result<OmniMorphism, Error> {
        self.validate(e1)?;
        self.validate(e2)?;
        let c = self.complex();
        let s = act(c, &e1.gl(), &e2.v());
        let t = act(c, &e2.gl(), &e1.v());
        let v = Morphism2::new(vscale(&vsub(&s.u, &t.u), &half()), vscale(&vsub(&s.m, &t.m), &half()));
        Ok(OmniMorphism::from_parts(gl_bracket(c, &e1.gl(), &e2.gl()), v))
    }

    /// `[A+u, B+v] = [A,B] + ½(A0 v - B0 u)`
    pub fn courant_obj(&self, e1: &OmniObject, e2: &OmniObject) -> Result<OmniObject, Error> {
        self.obj_coords(e1)?;
        self.obj_coords(e2)?;
        let u = vscale(&vsub(&e1.a.a0.mul_vec(&e2.u), &e2.a.a0.mul_vec(&e1.u)), &half());
        Ok(OmniObject { a: e1.a.commutator(&e2.a), u })
    }

    /// Closed form `[A+φ, B+ψ] + (A+φ)(v+n)`.
    pub fn dorfman(&self, e1: &OmniMorphism, e2: &OmniMorphism) -> Result<OmniMorphism, Error> {
        self.validate(e1)?;
        self.validate(e2)?;
        let c = self.complex();
        let out = OmniMorphism::from_parts(gl_bracket(c, &e1.gl(), &e2.gl()), act(c, &e1.gl(), &e2.v()));
        debug_assert_eq!(Some(&out), self.dorfman_via_sum(e1, e2).as_ref().ok());
        Ok(out)
    }

    /// Skew bracket plus pairing.
    pub fn dorfman_via_sum(&self, e1: &OmniMorphism, e2: &OmniMorphism) -> Result<OmniMorphism, Error> {
        let mut out = self.courant(e1, e2)?;
        let p = self.pairing(e1, e2)?;
        out.u = vadd(&out.u, &p.u);
        out.m = vadd(&out.m, &p.m);
        Ok(out)
    }

    pub fn dorfman_obj(&self, e1: &OmniObject, e2: &OmniObject) -> Result<OmniObject, Error> {
        self.obj_coords(e1)?;
        self.obj_coords(e2)?;
        Ok(OmniObject { a: e1.a.commutator(&e2.a), u: e1.a.a0.mul_vec(&e2.u) })
    }

    /// Cyclic sum of nested skew brackets on objects; returns its `V0` part.
    /// The `gl` part vanishes by the Jacobi identity of commutators.
    pub fn jacobi_anomaly(&self, e1: &OmniObject, e2: &OmniObject, e3: &OmniObject) -> Result<Vec<Rat>, Error> {
        let br = |x: &OmniObject, y: &OmniObject| self.courant_obj(x, y);
        let t1 = br(&br(e1, e2)?, e3)?;
        let t2 = br(&br(e2, e3)?, e1)?;
        let t3 = br(&br(e3, e1)?, e2)?;
        debug_assert!(t1.a.add(&t2.a).add(&t3.a).is_zero());
        Ok(vadd(&vadd(&t1.u, &t2.u), &t3.u))
    }

    pub fn mor_basis_labels(&self) -> Vec<String> {
        let n = self.obj_dim();
        (0..self.mor_dim()).map(|i| if i < n { format!("id{i}") } else { format!("k{}", i - n) }).collect()
    }

    /// Linear map `e -> (⟨e, b_i⟩)_i` over the morphism basis, as a matrix.
    pub fn pairing_matrix(&self) -> RatMatrix {
        let basis = self.morphism_basis();
        let cols: Vec<Vec<Rat>> = basis
            .iter()
            .map(|e| basis.iter().flat_map(|b| self.pairing(e, b).expect("basis elements").to_vec()).collect())
            .collect();
        let rows = basis.len() * self.complex().ambient().mor_dim();
        RatMatrix::from_cols(rows, &cols)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.pairing_matrix().kernel().is_zero()
    }
}

/// The pairing and brackets of an omni-Lie 2-algebra, possibly twisted.
pub trait OmniOps {
    fn space(&self) -> &OmniSpace;
    fn pairing(&self, e1: &OmniMorphism, e2: &OmniMorphism) -> Result<Morphism2, Error>;
    fn courant(&self, e1: &OmniMorphism, e2: &OmniMorphism) -> Result<OmniMorphism, Error>;
    fn dorfman(&self, e1: &OmniMorphism, e2: &OmniMorphism) -> Result<OmniMorphism, Error>;
}

impl OmniOps for OmniSpace {
    fn space(&self) -> &OmniSpace {
        self
    }
    fn pairing(&self, e1: &OmniMorphism, e2: &OmniMorphism) -> Result<Morphism2, Error> {
        OmniSpace::pairing(self, e1, e2)
    }
    fn courant(&self, e1: &OmniMorphism, e2: &OmniMorphism) -> Result<OmniMorphism, Error> {
        OmniSpace::courant(self, e1, e2)
    }
    fn dorfman(&self, e1: &OmniMorphism, e2: &OmniMorphism) -> Result<OmniMorphism, Error> {
        OmniSpace::dorfman(self, e1, e2)
    }
}

/// `¼([A,B]w + [B,C]u + [C,A]v)`
pub fn anomaly_formula(e1: &OmniObject, e2: &OmniObject, e3: &OmniObject) -> Vec<Rat> {
    let term = |x: &OmniObject, y: &OmniObject, z: &OmniObject| x.a.commutator(&y.a).a0.mul_vec(&z.u);
    let s = vadd(&vadd(&term(e1, e2, e3), &term(e2, e3, e1)), &term(e3, e1, e2));
    vscale(&s, &rat(1, 4))
}

/// Small random integer entries in `[-3, 3]`.
pub fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    (0..n).map(|_| int(rng.random_range(-3i64..=3))).collect()
}

pub fn random_object(space: &OmniSpace, rng: &mut ChaCha8Rng) -> OmniObject {
    space.obj_from_coords(&random_vec(rng, space.obj_dim()))
}

pub fn random_morphism(space: &OmniSpace, rng: &mut ChaCha8Rng) -> OmniMorphism {
    space.mor_from_coords(&random_vec(rng, space.mor_dim()))
}

/// Checks the anomaly formula against nested brackets on all object basis triples and
/// `samples` random triples.
pub fn check_anomaly(space: &OmniSpace, samples: usize, rng: &mut ChaCha8Rng) -> CheckReport {
    let mut r = CheckReport::new();
    let basis = space.object_basis();
    let n = basis.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = space.jacobi_anomaly(&basis[i], &basis[j], &basis[k]).expect("basis");
                let rhs = anomaly_formula(&basis[i], &basis[j], &basis[k]);
                r.expect_eq("anomaly", || vec![format!("o{i}"), format!("o{j}"), format!("o{k}")], &lhs, &rhs);
            }
        }
    }
    for s in 0..samples {
        let (x, y, z) = (random_object(space, rng), random_object(space, rng), random_object(space, rng));
        let lhs = space.jacobi_anomaly(&x, &y, &z).expect("sampled");
        r.expect_eq("anomaly", || vec![format!("sample{s}")], &lhs, &anomaly_formula(&x, &y, &z));
    }
    r
}

/// A bilinear operation on `gl(V) ⊕ V` in coordinates, with its object-level part and
/// its codomain 2-vector space.
pub trait OmniBilinear {
    fn name(&self) -> &str;
    fn codomain(&self) -> Ambient2;
    fn on_objects(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat>;
    fn on_morphisms(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat>;
}

pub struct Pairing<'a>(pub &'a OmniSpace);
pub struct Courant<'a>(pub &'a OmniSpace);
pub struct Dorfman<'a>(pub &'a OmniSpace);

impl OmniBilinear for Pairing<'_> {
    fn name(&self) -> &str {
        "pairing"
    }
    fn codomain(&self) -> Ambient2 {
        self.0.complex().ambient()
    }
    fn on_objects(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let s = self.0;
        s.pairing_obj(&s.obj_from_coords(x), &s.obj_from_coords(y)).expect("coordinates")
    }
    fn on_morphisms(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let s = self.0;
        s.pairing(&s.mor_from_coords(x), &s.mor_from_coords(y)).expect("coordinates").to_vec()
    }
}

impl OmniBilinear for Courant<'_> {
    fn name(&self) -> &str {
        "courant"
    }
    fn codomain(&self) -> Ambient2 {
        self.0.ambient().clone()
    }
    fn on_objects(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let s = self.0;
        s.obj_coords(&s.courant_obj(&s.obj_from_coords(x), &s.obj_from_coords(y)).expect("coordinates"))
            .expect("closed")
    }
    fn on_morphisms(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let s = self.0;
        s.mor_coords(&s.courant(&s.mor_from_coords(x), &s.mor_from_coords(y)).expect("coordinates"))
            .expect("closed")
    }
}

impl OmniBilinear for Dorfman<'_> {
    fn name(&self) -> &str {
        "dorfman"
    }
    fn codomain(&self) -> Ambient2 {
        self.0.ambient().clone()
    }
    fn on_objects(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let s = self.0;
        s.obj_coords(&s.dorfman_obj(&s.obj_from_coords(x), &s.obj_from_coords(y)).expect("coordinates"))
            .expect("closed")
    }
    fn on_morphisms(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let s = self.0;
        s.mor_coords(&s.dorfman(&s.mor_from_coords(x), &s.mor_from_coords(y)).expect("coordinates"))
            .expect("closed")
    }
}

/// Checks that `op` preserves sources, targets, identities and composition.
///
/// Composition is checked on pairs `(ξ, k)` with `ξ` a morphism and `k` a kernel vector
/// (so `ξ` is followed by `k` at `t(ξ)`); this is bilinear in the pair, so basis pairs
/// are exhaustive. `samples` random composable pairs are added on top.
pub fn check_bilinear_functoriality(
    space: &OmniSpace,
    op: &dyn OmniBilinear,
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> CheckReport {
    let amb = space.ambient();
    let out = op.codomain();
    let mut r = CheckReport::new();
    let basis = amb.morphism_basis();
    let labels = space.mor_basis_labels();
    let (nobj, nker) = (amb.obj_dim(), amb.ker_dim());

    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let tup = || vec![labels[i].clone(), labels[j].clone()];
            let f = op.on_morphisms(x, y);
            let src = op.on_objects(&amb.source_of(x), &amb.source_of(y));
            r.expect_eq("source", tup, &out.source_of(&f), &src);
            let tgt = op.on_objects(&amb.target_of(x), &amb.target_of(y));
            r.expect_eq("target", tup, &out.target_of(&f), &tgt);
        }
    }
    for i in 0..nobj {
        for j in 0..nobj {
            let (x, y) = (crate::exact_linalg::unit(nobj, i), crate::exact_linalg::unit(nobj, j));
            let lhs = op.on_morphisms(&amb.identity_of(&x), &amb.identity_of(&y));
            let rhs = out.identity_of(&op.on_objects(&x, &y));
            r.expect_eq("identity", || vec![format!("o{i}"), format!("o{j}")], &lhs, &rhs);
        }
    }

    // (morphism, following kernel vector) pairs
    let zero_m = vec![int(0); amb.mor_dim()];
    let zero_k = vec![int(0); nker];
    let mut pairs: Vec<(String, Vec<Rat>, Vec<Rat>)> =
        basis.iter().enumerate().map(|(i, b)| (labels[i].clone(), b.clone(), zero_k.clone())).collect();
    pairs.extend(
        (0..nker).map(|k| (format!("then-k{k}"), zero_m.clone(), crate::exact_linalg::unit(nker, k))),
    );
    let check_comp = |r: &mut CheckReport, tup: Vec<String>, p: &(String, Vec<Rat>, Vec<Rat>), q: &(String, Vec<Rat>, Vec<Rat>)| {
        let x2 = concat(&amb.target_of(&p.1), &p.2);
        let y2 = concat(&amb.target_of(&q.1), &q.2);
        let lhs = op.on_morphisms(&amb.compose(&p.1, &x2).expect("composable"), &amb.compose(&q.1, &y2).expect("composable"));
        let f1 = op.on_morphisms(&p.1, &q.1);
        let f2 = op.on_morphisms(&x2, &y2);
        match out.compose(&f1, &f2) {
            Ok(rhs) => r.expect_eq("composition", || tup, &lhs, &rhs),
            Err(_) => r.record_fail("composition", tup, &[]),
        }
    };
    for p in &pairs {
        for q in &pairs {
            check_comp(&mut r, vec![p.0.clone(), q.0.clone()], p, q);
        }
    }
    for s in 0..samples {
        let p = (String::new(), random_vec(rng, amb.mor_dim()), random_vec(rng, nker));
        let q = (String::new(), random_vec(rng, amb.mor_dim()), random_vec(rng, nker));
        check_comp(&mut r, vec![format!("sample{s}")], &p, &q);
    }
    r
}

/// Checks `{e1,{e2,e3}} = {{e1,e2},e3} + {e2,{e1,e3}}` on sampled triples, at object and
/// morphism level.
pub fn check_leibniz(space: &OmniSpace, samples: usize, rng: &mut ChaCha8Rng) -> CheckReport {
    let mut r = CheckReport::new();
    for s in 0..samples {
        let (x, y, z) = (random_object(space, rng), random_object(space, rng), random_object(space, rng));
        let br = |a: &OmniObject, b: &OmniObject| space.dorfman_obj(a, b).expect("sampled");
        let lhs = space.obj_coords(&br(&x, &br(&y, &z))).expect("closed");
        let rhs = vadd(
            &space.obj_coords(&br(&br(&x, &y), &z)).expect("closed"),
            &space.obj_coords(&br(&y, &br(&x, &z))).expect("closed"),
        );
        r.expect_eq("leibniz-objects", || vec![format!("sample{s}")], &lhs, &rhs);

        let (x, y, z) = (random_morphism(space, rng), random_morphism(space, rng), random_morphism(space, rng));
        let br = |a: &OmniMorphism, b: &OmniMorphism| space.dorfman(a, b).expect("sampled");
        let lhs = space.mor_coords(&br(&x, &br(&y, &z))).expect("closed");
        let rhs = vadd(
            &space.mor_coords(&br(&br(&x, &y), &z)).expect("closed"),
            &space.mor_coords(&br(&y, &br(&x, &z))).expect("closed"),
        );
        r.expect_eq("leibniz-morphisms", || vec![format!("sample{s}")], &lhs, &rhs);
    }
    r
}
