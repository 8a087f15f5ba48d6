//! Dirac structures of `gl(V) ⊕ V`: orthogonal complements, graphs of bilinear functors,
//! characteristic pairs, the correspondence with strict Lie 2-algebras on 2-sub-vector
//! spaces of `V`, and normalizers.
//!
//! All 2-sub-vector spaces of `gl(V) ⊕ V` use the coordinates of [`OmniSpace`]; those of
//! `gl(V)` use [`GlSpace::ambient`]; those of `V` use [`TwoTermComplex::ambient`].

use crate::error::Error;
use crate::exact_linalg::{concat, unit, zeros, Rat, RatMatrix, Subspace, Tensor};
use crate::gl_two::{act, gl_bracket, GlMorphism, GlObject, GlSpace};
use crate::lie2_core::{ad_functor, strict_check, AdFunctor, BilinearFunctor, Lie2Structure};
use crate::omni_core::{OmniMorphism, OmniOps, OmniSpace};
use crate::report::CheckReport;
use crate::two_vector::{make_sub2, Ambient2, Morphism2, Sub2VectorSpace, TwoTermComplex};

/// A 2-sub-vector space of `gl(V) ⊕ V`.
pub type OmniSub = Sub2VectorSpace;

/// Kernel of a linear map given on a basis of `domain`, as a subspace of `domain`'s ambient.
fn solve_on(domain: &Subspace, residual_len: usize, mut f: impl FnMut(&[Rat]) -> Vec<Rat>) -> Subspace {
    let basis = domain.basis_vecs();
    if basis.is_empty() {
        return Subspace::zero(domain.ambient());
    }
    let cols: Vec<Vec<Rat>> = basis.iter().map(|b| f(b)).collect();
    let ker = RatMatrix::from_cols(residual_len.max(cols[0].len()), &cols).kernel();
    let vs: Vec<Vec<Rat>> = ker.basis_vecs().iter().map(|c| domain.from_coords(c)).collect();
    Subspace::span(domain.ambient(), &vs)
}

fn check_ambient(expected: &Ambient2, found: &Ambient2) -> Result<(), Error> {
    if expected != found {
        return Err(Error::ShapeMismatch("2-sub-vector space lives in a different ambient".into()));
    }
    Ok(())
}

/// `L⊥`: the morphisms `e` with `⟨e, l⟩ = 0` (both components) for every morphism `l` of `L`.
pub fn perp(space: &OmniSpace, l: &OmniSub) -> Result<OmniSub, Error> {
    perp_in(space, l)
}

/// `L⊥` for the pairing of `ops`.
pub fn perp_in(ops: &dyn OmniOps, l: &OmniSub) -> Result<OmniSub, Error> {
    let space = ops.space();
    check_ambient(space.ambient(), l.ambient())?;
    let lb: Vec<OmniMorphism> = l.morphism_basis().iter().map(|v| space.mor_from_coords(v)).collect();
    let full = Subspace::full(space.mor_dim());
    let out_len = lb.len() * space.complex().ambient().mor_dim();
    let ker = solve_on(&full, out_len, |e| {
        let e = space.mor_from_coords(e);
        lb.iter().flat_map(|b| ops.pairing(&e, b).expect("valid basis").to_vec()).collect()
    });
    Sub2VectorSpace::from_morphisms(space.ambient(), &ker)
}

pub fn is_maximal_isotropic(space: &OmniSpace, l: &OmniSub) -> Result<bool, Error> {
    Ok(&perp(space, l)? == l)
}

pub fn is_maximal_isotropic_in(ops: &dyn OmniOps, l: &OmniSub) -> Result<bool, Error> {
    Ok(&perp_in(ops, l)? == l)
}

/// Outcome of a Dirac check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiracCheck {
    pub maximal_isotropic: bool,
    pub courant_closed: bool,
    pub dorfman_closed: bool,
    pub report: CheckReport,
}

impl DiracCheck {
    pub fn is_dirac(&self) -> bool {
        self.maximal_isotropic && self.courant_closed && self.dorfman_closed
    }
}

/// Maximal isotropy plus closure of basis morphisms under both brackets.
pub fn is_dirac(space: &OmniSpace, l: &OmniSub) -> Result<DiracCheck, Error> {
    is_dirac_in(space, l)
}

/// [`is_dirac`] for the pairing and brackets of `ops`.
pub fn is_dirac_in(ops: &dyn OmniOps, l: &OmniSub) -> Result<DiracCheck, Error> {
    let space = ops.space();
    let maximal_isotropic = is_maximal_isotropic_in(ops, l)?;
    let mut report = CheckReport::new();
    report.expect_true("maximal-isotropic", Vec::new, maximal_isotropic);
    let mors = l.morphism_subspace();
    let basis: Vec<OmniMorphism> = l.morphism_basis().iter().map(|v| space.mor_from_coords(v)).collect();
    let (mut courant_closed, mut dorfman_closed) = (true, true);
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let tup = || vec![format!("l{i}"), format!("l{j}")];
            let c = space.mor_coords(&ops.courant(x, y)?)?;
            let ok = mors.contains(&c);
            courant_closed &= ok;
            report.expect_true("courant-closure", tup, ok);
            let d = space.mor_coords(&ops.dorfman(x, y)?)?;
            let ok = mors.contains(&d);
            dorfman_closed &= ok;
            report.expect_true("dorfman-closure", tup, ok);
        }
    }
    Ok(DiracCheck { maximal_isotropic, courant_closed, dorfman_closed, report })
}

/// The graph `{(ad_F ξ, ξ)}` of `ad_F`.
pub fn graph_of(space: &OmniSpace, f: &BilinearFunctor) -> Result<OmniSub, Error> {
    graph_of_functor(space, &ad_functor(space.gl(), f)?)
}

/// The graph `{(F ξ, ξ)}` of a linear functor `F: V -> gl(V)`.
pub fn graph_of_functor(space: &OmniSpace, ad: &AdFunctor) -> Result<OmniSub, Error> {
    let c = space.complex();
    let s0: Vec<Vec<Rat>> = (0..c.dim_v0())
        .map(|i| concat(&ad.obj_matrix().col(i), &unit(c.dim_v0(), i)))
        .collect();
    let k: Vec<Vec<Rat>> = (0..c.dim_v1())
        .map(|j| concat(&ad.ker_matrix().col(j), &unit(c.dim_v1(), j)))
        .collect();
    make_sub2(space.ambient(), Subspace::span(space.obj_dim(), &s0), Subspace::span(space.ambient().ker_dim(), &k))
}

/// Embeds a 2-sub-vector space of `gl(V)` into `gl(V) ⊕ V`.
pub fn embed_gl(space: &OmniSpace, d: &Sub2VectorSpace) -> OmniSub {
    let c = space.complex();
    let s0: Vec<Vec<Rat>> = d.s0().basis_vecs().iter().map(|a| concat(a, &zeros(c.dim_v0()))).collect();
    let k: Vec<Vec<Rat>> = d.k().basis_vecs().iter().map(|p| concat(p, &zeros(c.dim_v1()))).collect();
    make_sub2(space.ambient(), Subspace::span(space.obj_dim(), &s0), Subspace::span(space.ambient().ker_dim(), &k))
        .expect("gl part is target-closed")
}

/// `gl(V) ⊕ 0` as a 2-sub-vector space.
pub fn gl_part(space: &OmniSpace) -> OmniSub {
    embed_gl(space, &space.gl().ambient().full())
}

/// `L ∩ gl(V)`, in `gl(V)` coordinates.
pub fn intersect_gl(space: &OmniSpace, l: &OmniSub) -> Result<Sub2VectorSpace, Error> {
    let both = l.intersect(&gl_part(space))?;
    let (e0, e1) = (space.gl().dim_end0(), space.gl().dim_end1());
    let s0: Vec<Vec<Rat>> = both.s0().basis_vecs().iter().map(|v| v[..e0].to_vec()).collect();
    let k: Vec<Vec<Rat>> = both.k().basis_vecs().iter().map(|v| v[..e1].to_vec()).collect();
    make_sub2(&space.gl().ambient(), Subspace::span(e0, &s0), Subspace::span(e1, &k))
}

fn gl_morphisms(gl: &GlSpace, sub: &Sub2VectorSpace) -> Vec<GlMorphism> {
    sub.morphism_basis().iter().map(|v| gl.mor_from_coords(v)).collect()
}

fn v_morphisms(c: &TwoTermComplex, sub: &Sub2VectorSpace) -> Vec<Morphism2> {
    sub.morphism_basis().iter().map(|v| Morphism2::from_vec(v, c.dim_v0())).collect()
}

/// `W⁰ = {X ∈ gl(V) : X(ξ) = 0 for all ξ ∈ W}`, computed on morphisms.
pub fn annihilator_in_gl(gl: &GlSpace, w: &Sub2VectorSpace) -> Result<Sub2VectorSpace, Error> {
    let c = gl.complex();
    check_ambient(&c.ambient(), w.ambient())?;
    let wb = v_morphisms(c, w);
    let amb = gl.ambient();
    let ker = solve_on(&Subspace::full(amb.mor_dim()), wb.len() * c.ambient().mor_dim(), |x| {
        let x = gl.mor_from_coords(x);
        wb.iter().flat_map(|xi| act(c, &x, xi).to_vec()).collect()
    });
    Sub2VectorSpace::from_morphisms(&amb, &ker)
}

/// `D⁰ = {ξ ∈ V : X(ξ) = 0 for all X ∈ D}`, computed on morphisms.
pub fn null_space(gl: &GlSpace, d: &Sub2VectorSpace) -> Result<Sub2VectorSpace, Error> {
    let c = gl.complex();
    check_ambient(&gl.ambient(), d.ambient())?;
    let db = gl_morphisms(gl, d);
    let amb = c.ambient();
    let ker = solve_on(&Subspace::full(amb.mor_dim()), db.len() * amb.mor_dim(), |xi| {
        let xi = Morphism2::from_vec(xi, c.dim_v0());
        db.iter().flat_map(|x| act(c, x, &xi).to_vec()).collect()
    });
    Sub2VectorSpace::from_morphisms(&amb, &ker)
}

/// A characteristic pair `(D, π)`: `D = L ∩ gl(V)` and `π` on the null space `D⁰`.
///
/// `pi0` has one column per basis vector of `D⁰`'s objects (End0_d coordinates), `pi1` one
/// column per basis vector of `D⁰`'s kernel part (End1 coordinates).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicPair {
    pub d_part: Sub2VectorSpace,
    pub null: Sub2VectorSpace,
    pub pi0: RatMatrix,
    pub pi1: RatMatrix,
}

impl CharacteristicPair {
    pub fn pi_obj(&self, gl: &GlSpace, u: &[Rat]) -> GlObject {
        let c = self.null.s0().coords(u).expect("argument lies in the null space");
        gl.obj_from_coords(&self.pi0.mul_vec(&c))
    }

    pub fn pi_ker(&self, gl: &GlSpace, m: &[Rat]) -> RatMatrix {
        let c = self.null.k().coords(m).expect("argument lies in the null space");
        gl.phi_from_coords(&self.pi1.mul_vec(&c))
    }

    pub fn pi(&self, gl: &GlSpace, xi: &Morphism2) -> GlMorphism {
        GlMorphism::new(self.pi_obj(gl, &xi.u), self.pi_ker(gl, &xi.m))
    }

    /// `D ⊕ G_{π|D⁰}` inside `gl(V) ⊕ V`.
    pub fn to_subspace(&self, space: &OmniSpace) -> Result<OmniSub, Error> {
        let d = embed_gl(space, &self.d_part);
        let mut s0 = d.s0().basis_vecs();
        for (j, u) in self.null.s0().basis_vecs().iter().enumerate() {
            s0.push(concat(&self.pi0.col(j), u));
        }
        let mut k = d.k().basis_vecs();
        for (j, m) in self.null.k().basis_vecs().iter().enumerate() {
            k.push(concat(&self.pi1.col(j), m));
        }
        make_sub2(space.ambient(), Subspace::span(space.obj_dim(), &s0), Subspace::span(space.ambient().ker_dim(), &k))
    }

    /// Whether two pairs determine the same subspace: same `D` and `π1(ξ) - π2(ξ) ∈ D`.
    pub fn equivalent(&self, other: &CharacteristicPair) -> bool {
        if self.d_part != other.d_part || self.null != other.null {
            return false;
        }
        let d0 = self.d_part.s0();
        let d1 = self.d_part.k();
        (0..self.pi0.cols()).all(|j| d0.contains(&crate::exact_linalg::vsub(&self.pi0.col(j), &other.pi0.col(j))))
            && (0..self.pi1.cols())
                .all(|j| d1.contains(&crate::exact_linalg::vsub(&self.pi1.col(j), &other.pi1.col(j))))
    }
}

/// Reads `π` off a complement `D′` of `D` in `L`, level by level.
fn read_pi(parts: &Subspace, d: &Subspace, gl_len: usize, targets: &[Vec<Rat>]) -> Result<RatMatrix, Error> {
    let dprime = d.complement_within(parts)?;
    let basis = dprime.basis_vecs();
    let proj_cols: Vec<Vec<Rat>> = basis.iter().map(|v| v[gl_len..].to_vec()).collect();
    let v_len = parts.ambient() - gl_len;
    let proj = RatMatrix::from_cols(v_len, &proj_cols);
    let mut cols = Vec::new();
    for t in targets {
        let c = proj
            .solve(t)
            .ok_or_else(|| Error::Precondition("projection of L does not reach the null space".into()))?;
        let mut x = zeros(gl_len);
        for (ci, b) in c.iter().zip(&basis) {
            crate::exact_linalg::vaxpy(&mut x, ci, &b[..gl_len]);
        }
        cols.push(x);
    }
    Ok(RatMatrix::from_cols(gl_len, &cols))
}

pub fn characteristic_pair(space: &OmniSpace, l: &OmniSub) -> Result<CharacteristicPair, Error> {
    if !is_maximal_isotropic(space, l)? {
        return Err(Error::Precondition("L is not maximal isotropic".into()));
    }
    let gl = space.gl();
    let c = space.complex();
    let (e0, e1) = (gl.dim_end0(), gl.dim_end1());
    let d_part = intersect_gl(space, l)?;
    let null = null_space(gl, &d_part)?;
    let d_emb = embed_gl(space, &d_part);

    // the image H of pr_V on L must be D⁰
    let h0 = Subspace::span(c.dim_v0(), &l.s0().basis_vecs().iter().map(|v| v[e0..].to_vec()).collect::<Vec<_>>());
    let h1 = Subspace::span(c.dim_v1(), &l.k().basis_vecs().iter().map(|v| v[e1..].to_vec()).collect::<Vec<_>>());
    if &h0 != null.s0() || &h1 != null.k() {
        return Err(Error::Precondition("projection of L differs from the null space of D".into()));
    }
    let pi0 = read_pi(l.s0(), d_emb.s0(), e0, &null.s0().basis_vecs())?;
    let pi1 = read_pi(l.k(), d_emb.k(), e1, &null.k().basis_vecs())?;
    let pair = CharacteristicPair { d_part, null, pi0, pi1 };
    if &pair.to_subspace(space)? != l {
        return Err(Error::Precondition("L is not D plus the graph of π".into()));
    }
    Ok(pair)
}

/// The complex `W1 -> W0` of a 2-sub-vector space of `V`, in the canonical bases of `W`.
pub fn w_complex(c: &TwoTermComplex, w: &Sub2VectorSpace) -> Result<TwoTermComplex, Error> {
    check_ambient(&c.ambient(), w.ambient())?;
    let cols: Vec<Vec<Rat>> = w
        .k()
        .basis_vecs()
        .iter()
        .map(|m| w.s0().coords(&c.apply_d(m)).expect("W is target-closed"))
        .collect();
    TwoTermComplex::new(w.k().dim(), w.s0().dim(), RatMatrix::from_cols(w.s0().dim(), &cols))
}

/// A strict Lie 2-algebra on a 2-sub-vector space `W` of `V`, in `W`'s canonical bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedLie2 {
    pub w: Sub2VectorSpace,
    pub structure: Lie2Structure,
}

/// The strict Lie 2-algebra `(D⁰, π(ξ)(η))` of a Dirac structure.
pub fn induced_lie2(space: &OmniSpace, l: &OmniSub) -> Result<InducedLie2, Error> {
    if !is_dirac(space, l)?.is_dirac() {
        return Err(Error::Precondition("L is not a Dirac structure".into()));
    }
    let pair = characteristic_pair(space, l)?;
    let gl = space.gl();
    let c = space.complex();
    let w = pair.null.clone();
    let wc = w_complex(c, &w)?;
    let (b0, b1) = (w.s0().basis_vecs(), w.k().basis_vecs());
    let (w0, w1) = (b0.len(), b1.len());
    let coords0 = |v: Vec<Rat>| w.s0().coords(&v).expect("bracket closes on D⁰");
    let coords1 = |v: Vec<Rat>| w.k().coords(&v).expect("bracket closes on D⁰");
    let f00 = Tensor::from_fn(&[w0, w0], w0, |ix| coords0(pair.pi_obj(gl, &b0[ix[0]]).a0.mul_vec(&b0[ix[1]])));
    let f01 = Tensor::from_fn(&[w0, w1], w1, |ix| coords1(pair.pi_obj(gl, &b0[ix[0]]).a1.mul_vec(&b1[ix[1]])));
    let f10 = Tensor::from_fn(&[w1, w0], w1, |ix| coords1(pair.pi_ker(gl, &b1[ix[0]]).mul_vec(&b0[ix[1]])));
    let structure = Lie2Structure::strict(BilinearFunctor::new(&wc, f00, f01, f10)?);
    Ok(InducedLie2 { w, structure })
}

/// `W⁰ ⊕ G_{F|W}` where `F` extends `ad` of the bracket on `W` by zero on `w_complement`.
/// No checks on the bracket beyond shapes.
pub fn extension_subspace(
    space: &OmniSpace,
    w: &Sub2VectorSpace,
    bracket: &BilinearFunctor,
    w_complement: &Sub2VectorSpace,
) -> Result<OmniSub, Error> {
    let c = space.complex();
    let gl = space.gl();
    if bracket.complex() != &w_complex(c, w)? {
        return Err(Error::ShapeMismatch("bracket does not live on the complex of W".into()));
    }
    if w_complement.ambient() != w.ambient() || !w_complement.is_complement_of(w) {
        return Err(Error::InvalidComplement("supplied subspace is not a complement of W".into()));
    }
    let p0 = w.s0().projection_along(w_complement.s0())?;
    let p1 = w.k().projection_along(w_complement.k())?;
    let (n0, n1) = (c.dim_v0(), c.dim_v1());
    // W-coordinates of the W-component of each standard basis vector
    let q0: Vec<Vec<Rat>> = (0..n0).map(|k| w.s0().coords(&p0.col(k)).expect("projection")).collect();
    let q1: Vec<Vec<Rat>> = (0..n1).map(|k| w.k().coords(&p1.col(k)).expect("projection")).collect();

    let d = embed_gl(space, &annihilator_in_gl(gl, w)?);
    let mut s0 = d.s0().basis_vecs();
    for (i, u) in w.s0().basis_vecs().iter().enumerate() {
        let ei = unit(w.s0().dim(), i);
        let a0_cols: Vec<Vec<Rat>> =
            q0.iter().map(|q| w.s0().from_coords(&bracket.f00().apply(&[&ei, q]))).collect();
        let a1_cols: Vec<Vec<Rat>> =
            q1.iter().map(|q| w.k().from_coords(&bracket.f01().apply(&[&ei, q]))).collect();
        let a = GlObject::new(RatMatrix::from_cols(n0, &a0_cols), RatMatrix::from_cols(n1, &a1_cols));
        let coords = gl
            .obj_coords(&a)
            .map_err(|_| Error::NoExtension("extension of ad is not a chain map".into()))?;
        s0.push(concat(&coords, u));
    }
    let mut k = d.k().basis_vecs();
    for (j, m) in w.k().basis_vecs().iter().enumerate() {
        let ej = unit(w.k().dim(), j);
        let cols: Vec<Vec<Rat>> = q0.iter().map(|q| w.k().from_coords(&bracket.f10().apply(&[&ej, q]))).collect();
        k.push(concat(&gl.phi_coords(&RatMatrix::from_cols(n1, &cols)), m));
    }
    make_sub2(space.ambient(), Subspace::span(space.obj_dim(), &s0), Subspace::span(space.ambient().ker_dim(), &k))
        .map_err(|_| Error::NoExtension("extension of ad is not a functor".into()))
}

/// The Dirac structure `W⁰ ⊕ G_{F|W}` of a strict Lie 2-algebra on `W`. Uses the
/// deterministic complementary 2-sub-vector space of `W` unless one is supplied.
pub fn dirac_from_lie2(
    space: &OmniSpace,
    w: &Sub2VectorSpace,
    bracket: &BilinearFunctor,
    w_complement: Option<&Sub2VectorSpace>,
) -> Result<OmniSub, Error> {
    let c = space.complex();
    check_ambient(&c.ambient(), w.ambient())?;
    let report = strict_check(&Lie2Structure::strict(bracket.clone()));
    if let Some(id) = report.first_identity() {
        return Err(Error::Precondition(format!("bracket on W is not a strict Lie 2-algebra ({id})")));
    }
    let comp = match w_complement {
        Some(wc) => {
            if wc.ambient() != w.ambient() || !wc.is_complement_of(w) {
                return Err(Error::InvalidComplement("supplied subspace is not a complement of W".into()));
            }
            wc.clone()
        }
        None => w
            .complementary()
            .ok_or_else(|| Error::Precondition("W has no complementary 2-sub-vector space".into()))?,
    };
    extension_subspace(space, w, bracket, &comp)
}

/// Conditions for `D ⊕ G_{π|D⁰}` to be Dirac: `D` closed under the bracket,
/// `π(π(ξ)η) - [π(ξ), π(η)] ∈ D`, and `π(ξ)(η) ∈ D⁰`, on basis morphisms.
pub fn dirac_conditions(space: &OmniSpace, pair: &CharacteristicPair) -> CheckReport {
    let gl = space.gl();
    let c = space.complex();
    let mut r = CheckReport::new();
    let dm = pair.d_part.morphism_subspace();
    let db = gl_morphisms(gl, &pair.d_part);
    for (i, x) in db.iter().enumerate() {
        for (j, y) in db.iter().enumerate() {
            let b = gl.mor_coords(&gl_bracket(c, x, y)).expect("closed");
            r.expect_true("sub-lie2", || vec![format!("X{i}"), format!("X{j}")], dm.contains(&b));
        }
    }
    let nb = v_morphisms(c, &pair.null);
    let nm = pair.null.morphism_subspace();
    for (i, xi) in nb.iter().enumerate() {
        for (j, eta) in nb.iter().enumerate() {
            let tup = || vec![format!("xi{i}"), format!("xi{j}")];
            let v = act(c, &pair.pi(gl, xi), eta);
            let inside = nm.contains(&v.to_vec());
            r.expect_true("pi-closure", tup, inside);
            if inside {
                let lhs = pair.pi(gl, &v);
                let rhs = gl_bracket(c, &pair.pi(gl, xi), &pair.pi(gl, eta));
                let diff = gl.mor_coords(&lhs.sub(&rhs)).expect("closed");
                r.expect_true("pi-bracket", tup, dm.contains(&diff));
            }
        }
    }
    r
}

/// `N_K = {N ∈ gl(V) : {N, K} ⊂ K}`, solved as one kernel computation per level.
pub fn normalizer(space: &OmniSpace, k: &OmniSub) -> Result<Sub2VectorSpace, Error> {
    check_ambient(space.ambient(), k.ambient())?;
    let gl = space.gl();
    let c = space.complex();
    let eqs = k.morphism_subspace().equations();
    let kb: Vec<OmniMorphism> = k.morphism_basis().iter().map(|v| space.mor_from_coords(v)).collect();
    let residual = |n: GlMorphism| -> Vec<Rat> {
        let n = OmniMorphism::from_parts(n, Morphism2::new(zeros(c.dim_v0()), zeros(c.dim_v1())));
        kb.iter()
            .flat_map(|b| eqs.mul_vec(&space.mor_coords(&space.dorfman(&n, b).expect("valid")).expect("closed")))
            .collect()
    };
    let len = kb.len() * eqs.rows();
    let n0 = solve_on(&Subspace::full(gl.dim_end0()), len, |a| residual(GlMorphism::identity(gl.obj_from_coords(a))));
    let n1 = solve_on(&Subspace::full(gl.dim_end1()), len, |p| {
        residual(GlMorphism::new(GlObject::zero(c), gl.phi_from_coords(p)))
    });
    make_sub2(&gl.ambient(), n0, n1)
}

/// Derivations of a strict Lie 2-algebra: `N[ξ,η] = [Nξ,η] + [ξ,Nη]` on basis morphisms, for
/// `N` an object of `gl(V)` or a pure kernel element.
pub fn derivations(gl: &GlSpace, s: &Lie2Structure) -> Result<Sub2VectorSpace, Error> {
    let c = gl.complex();
    if c != s.complex() {
        return Err(Error::Precondition("structure lives on a different complex".into()));
    }
    if !s.l3().is_zero() || !strict_check(s).passed() {
        return Err(Error::Precondition("derivations need a strict Lie 2-algebra".into()));
    }
    let amb = c.ambient();
    let vb: Vec<Morphism2> = amb.morphism_basis().iter().map(|v| Morphism2::from_vec(v, c.dim_v0())).collect();
    let br = |x: &Morphism2, y: &Morphism2| s.morphism_bracket(x, y);
    let residual = |n: GlMorphism| -> Vec<Rat> {
        let mut out = Vec::new();
        for x in &vb {
            for y in &vb {
                let lhs = act(c, &n, &br(x, y)).to_vec();
                let r1 = br(&act(c, &n, x), y).to_vec();
                let r2 = br(x, &act(c, &n, y)).to_vec();
                out.extend(crate::exact_linalg::vsub(&lhs, &crate::exact_linalg::vadd(&r1, &r2)));
            }
        }
        out
    };
    let len = vb.len() * vb.len() * amb.mor_dim();
    let n0 = solve_on(&Subspace::full(gl.dim_end0()), len, |a| residual(GlMorphism::identity(gl.obj_from_coords(a))));
    let n1 = solve_on(&Subspace::full(gl.dim_end1()), len, |p| {
        residual(GlMorphism::new(GlObject::zero(c), gl.phi_from_coords(p)))
    });
    make_sub2(&gl.ambient(), n0, n1)
}

/// The normalizer of `D ⊕ G_{π|D⁰}` read off the characteristic pair: `[N, D] ⊂ D`,
/// `N(D⁰) ⊂ D⁰` and `N` a derivation of the bracket `π(ξ)(η)` on `D⁰`.
pub fn normalizer_from_pair(space: &OmniSpace, pair: &CharacteristicPair) -> Result<Sub2VectorSpace, Error> {
    let gl = space.gl();
    let c = space.complex();
    let dm = pair.d_part.morphism_subspace();
    let deq = dm.equations();
    let db = gl_morphisms(gl, &pair.d_part);
    let nm = pair.null.morphism_subspace();
    let neq = nm.equations();
    let nb = v_morphisms(c, &pair.null);
    let linear = |n: &GlMorphism| -> Vec<Rat> {
        let mut out = Vec::new();
        for x in &db {
            out.extend(deq.mul_vec(&gl.mor_coords(&gl_bracket(c, n, x)).expect("closed")));
        }
        for xi in &nb {
            out.extend(neq.mul_vec(&act(c, n, xi).to_vec()));
        }
        out
    };
    let br = |x: &Morphism2, y: &Morphism2| act(c, &pair.pi(gl, x), y);
    let derivation = |n: &GlMorphism| -> Vec<Rat> {
        let mut out = Vec::new();
        for x in &nb {
            for y in &nb {
                let lhs = act(c, n, &br(x, y)).to_vec();
                let r1 = br(x, &act(c, n, y)).to_vec();
                let r2 = br(&act(c, n, x), y).to_vec();
                out.extend(crate::exact_linalg::vsub(&lhs, &crate::exact_linalg::vadd(&r1, &r2)));
            }
        }
        out
    };
    let len1 = db.len() * deq.rows() + nb.len() * neq.rows();
    let len2 = nb.len() * nb.len() * c.ambient().mor_dim();
    let obj = |a: &[Rat]| GlMorphism::identity(gl.obj_from_coords(a));
    let ker = |p: &[Rat]| GlMorphism::new(GlObject::zero(c), gl.phi_from_coords(p));
    let s0 = solve_on(&Subspace::full(gl.dim_end0()), len1, |a| linear(&obj(a)));
    let n0 = solve_on(&s0, len2, |a| derivation(&obj(a)));
    let s1 = solve_on(&Subspace::full(gl.dim_end1()), len1, |p| linear(&ker(p)));
    let n1 = solve_on(&s1, len2, |p| derivation(&ker(p)));
    make_sub2(&gl.ambient(), n0, n1)
}

/// Closure of a 2-sub-vector space of `gl(V)` under the bracket and under `δ`.
pub fn check_sub_lie2(gl: &GlSpace, n: &Sub2VectorSpace) -> CheckReport {
    let c = gl.complex();
    let mut r = CheckReport::new();
    let nm = n.morphism_subspace();
    let basis = gl_morphisms(gl, n);
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let b = gl.mor_coords(&gl_bracket(c, x, y)).expect("closed");
            r.expect_true("bracket-closure", || vec![format!("N{i}"), format!("N{j}")], nm.contains(&b));
        }
    }
    for (j, p) in n.k().basis_vecs().iter().enumerate() {
        r.expect_true("delta-closure", || vec![format!("phi{j}")], n.s0().contains(&gl.delta_matrix().mul_vec(p)));
    }
    r
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exact_linalg::{int, vneg};
    use crate::lie2_core::tests::{c2, c2_solvable, so3_f00, so3_strict, string_so3};
    use crate::lie2_core::linfty_check;
    use proptest::prelude::*;

    fn sub_v(c: &TwoTermComplex, s0: &[Vec<Rat>], k: &[Vec<Rat>]) -> Sub2VectorSpace {
        make_sub2(&c.ambient(), Subspace::span(c.dim_v0(), s0), Subspace::span(c.dim_v1(), k)).unwrap()
    }

    fn e(n: usize, i: usize) -> Vec<Rat> {
        unit(n, i)
    }

    #[test]
    fn perp_of_extremes() {
        let space = OmniSpace::new(&c2());
        let full = space.ambient().full();
        let zero = space.ambient().zero();
        assert_eq!(perp(&space, &full).unwrap(), zero);
        assert_eq!(perp(&space, &zero).unwrap(), full);
        assert!(!is_maximal_isotropic(&space, &full).unwrap());
        assert!(!is_dirac(&space, &zero).unwrap().is_dirac());
    }

    #[test]
    fn graph_of_so3_is_dirac() {
        let s = so3_strict();
        let space = OmniSpace::new(s.complex());
        let g = graph_of(&space, s.l2()).unwrap();
        assert_eq!(g.dims(), (3, 0));
        assert_eq!(perp(&space, &g).unwrap(), g);
        assert!(is_dirac(&space, &g).unwrap().is_dirac());
    }

    #[test]
    fn graph_of_zero_is_v() {
        let c = c2();
        let space = OmniSpace::new(&c);
        let g = graph_of(&space, &BilinearFunctor::zero(&c)).unwrap();
        assert_eq!(g.dims(), (3, 2));
        assert!(g.s0().basis_vecs().iter().all(|v| v[..space.gl().dim_end0()].iter().all(|x| *x == int(0))));
        assert!(is_maximal_isotropic(&space, &g).unwrap());
        assert!(is_dirac(&space, &g).unwrap().is_dirac());
    }

    #[test]
    fn string_graph_has_pure_kernel() {
        let s = string_so3();
        let space = OmniSpace::new(s.complex());
        let g = graph_of(&space, s.l2()).unwrap();
        assert_eq!(g.dims(), (3, 1));
        let k = g.k().basis_vecs();
        assert!(k[0][..space.gl().dim_end1()].iter().all(|x| *x == int(0)));
    }

    #[test]
    fn non_skew_graph_is_not_isotropic() {
        let c = TwoTermComplex::trivial(0, 2);
        let space = OmniSpace::new(&c);
        // F(e0, e0) = e0: symmetric part nonzero
        let f00 = Tensor::from_fn(&[2, 2], 2, |ix| if ix == [0, 0] { e(2, 0) } else { zeros(2) });
        let f = BilinearFunctor::new(&c, f00, Tensor::zeros(&[2, 0], 0), Tensor::zeros(&[0, 2], 0)).unwrap();
        let g = graph_of(&space, &f).unwrap();
        assert!(!is_maximal_isotropic(&space, &g).unwrap());
    }

    #[test]
    fn broken_jacobi_graph_is_not_dirac() {
        let c = TwoTermComplex::trivial(0, 3);
        let mut f00 = so3_f00();
        f00.set(&[0, 1], &e(3, 0));
        f00.set(&[1, 0], &vneg(&e(3, 0)));
        let f = BilinearFunctor::skew(&c, f00, Tensor::zeros(&[3, 0], 0)).unwrap();
        let space = OmniSpace::new(&c);
        let g = graph_of(&space, &f).unwrap();
        let check = is_dirac(&space, &g).unwrap();
        assert!(check.maximal_isotropic);
        assert!(!check.courant_closed && !check.dorfman_closed);
    }

    #[test]
    fn characteristic_pair_of_graph() {
        let s = so3_strict();
        let space = OmniSpace::new(s.complex());
        let g = graph_of(&space, s.l2()).unwrap();
        let pair = characteristic_pair(&space, &g).unwrap();
        assert_eq!(pair.d_part.dims(), (0, 0));
        assert_eq!(pair.null, s.complex().ambient().full());
        let ad = ad_functor(space.gl(), s.l2()).unwrap();
        assert_eq!(&pair.pi0, ad.obj_matrix());
        let induced = induced_lie2(&space, &g).unwrap();
        assert_eq!(induced.structure, s);
        assert!(dirac_conditions(&space, &pair).passed());
    }

    #[test]
    fn zero_w_gives_gl() {
        let c = c2();
        let space = OmniSpace::new(&c);
        let w = c.ambient().zero();
        let wc = w_complex(&c, &w).unwrap();
        let l = dirac_from_lie2(&space, &w, &BilinearFunctor::zero(&wc), None).unwrap();
        assert_eq!(l, gl_part(&space));
        assert!(is_dirac(&space, &l).unwrap().is_dirac());
        let induced = induced_lie2(&space, &l).unwrap();
        assert_eq!(induced.w, w);
    }

    #[test]
    fn line_in_c2_round_trips() {
        let c = c2();
        let space = OmniSpace::new(&c);
        let w = sub_v(&c, &[e(3, 2)], &[]);
        let wc = w_complex(&c, &w).unwrap();
        let l = dirac_from_lie2(&space, &w, &BilinearFunctor::zero(&wc), None).unwrap();
        assert!(is_dirac(&space, &l).unwrap().is_dirac());
        let pair = characteristic_pair(&space, &l).unwrap();
        assert_eq!(pair.d_part, annihilator_in_gl(space.gl(), &w).unwrap());
        assert_eq!(pair.null, w);
        let induced = induced_lie2(&space, &l).unwrap();
        assert_eq!(induced.w, w);
        assert!(linfty_check(&induced.structure).passed());
        assert_eq!(induced.structure, Lie2Structure::strict(BilinearFunctor::zero(&wc)));
    }

    #[test]
    fn full_w_gives_graph() {
        let s = c2_solvable();
        let c = s.complex().clone();
        let space = OmniSpace::new(&c);
        let l = dirac_from_lie2(&space, &c.ambient().full(), s.l2(), None).unwrap();
        assert_eq!(l, graph_of(&space, s.l2()).unwrap());
        assert_eq!(induced_lie2(&space, &l).unwrap().structure, s);
    }

    /// `W = (span{e1, e3}, span{f1})` in C2 with `[e3, e1] = e1` and `e3` acting on `f1`.
    pub fn solvable_w() -> (TwoTermComplex, Sub2VectorSpace, BilinearFunctor) {
        let c = c2();
        let w = sub_v(&c, &[e(3, 0), e(3, 2)], &[e(2, 0)]);
        let wc = w_complex(&c, &w).unwrap();
        let f00 = Tensor::from_fn(&[2, 2], 2, |ix| match (ix[0], ix[1]) {
            (1, 0) => e(2, 0),
            (0, 1) => vneg(&e(2, 0)),
            _ => zeros(2),
        });
        let f01 = Tensor::from_fn(&[2, 1], 1, |ix| if ix[0] == 1 { vec![int(1)] } else { vec![int(0)] });
        (c, w, BilinearFunctor::skew(&wc, f00, f01).unwrap())
    }

    #[test]
    fn different_complements_same_dirac() {
        let (c, w, f) = solvable_w();
        let space = OmniSpace::new(&c);
        assert!(strict_check(&Lie2Structure::strict(f.clone())).passed());
        let c1 = sub_v(&c, &[e(3, 1)], &[e(2, 1)]);
        let c2_ = sub_v(&c, &[vec![int(1), int(1), int(0)]], &[vec![int(1), int(1)]]);
        assert!(c1.is_complement_of(&w) && c2_.is_complement_of(&w) && c1 != c2_);
        let l1 = dirac_from_lie2(&space, &w, &f, Some(&c1)).unwrap();
        let l2 = dirac_from_lie2(&space, &w, &f, Some(&c2_)).unwrap();
        assert_eq!(l1, l2);
        assert!(is_dirac(&space, &l1).unwrap().is_dirac());
        let induced = induced_lie2(&space, &l1).unwrap();
        assert_eq!(induced.w, w);
        assert_eq!(induced.structure.l2(), &f);
        let bad = sub_v(&c, &[e(3, 1)], &[]);
        assert!(matches!(dirac_from_lie2(&space, &w, &f, Some(&bad)), Err(Error::InvalidComplement(_))));
    }

    #[test]
    fn annihilator_lemma_counterexample() {
        // W = (span{d f1}, 0) has no complementary 2-sub-vector space, and (W⁰)⁰ also
        // contains the morphism from 0 with kernel part f1.
        let c = c2();
        let gl = GlSpace::new(&c);
        let w = sub_v(&c, &[e(3, 0)], &[]);
        assert!(w.complementary().is_none());
        let back = null_space(&gl, &annihilator_in_gl(&gl, &w).unwrap()).unwrap();
        assert!(w.is_subspace_of(&back));
        assert_eq!(back.k(), &Subspace::span(2, &[e(2, 0)]));
        assert_ne!(back, w);
        // the line W = span{f1}, a complementable subspace, does round-trip
        let w = sub_v(&c, &[e(3, 0)], &[e(2, 0)]);
        assert!(w.complementary().is_some());
        assert_eq!(null_space(&gl, &annihilator_in_gl(&gl, &w).unwrap()).unwrap(), w);
    }

    #[test]
    fn double_perp_can_grow() {
        // L spanned by the identity of a single gl object A: L⊥ = gl(V) ⊕ (objects killed by
        // A), and (L⊥)⊥ contains every C vanishing on ker A0.
        let c = TwoTermComplex::trivial(0, 2);
        let space = OmniSpace::new(&c);
        let amb = space.ambient();
        let a = unit(amb.obj_dim(), 0);
        let l = make_sub2(amb, Subspace::span(amb.obj_dim(), &[a]), Subspace::zero(amb.ker_dim())).unwrap();
        let pp = perp(&space, &perp(&space, &l).unwrap()).unwrap();
        assert!(l.is_subspace_of(&pp));
        assert_eq!(pp.dims(), (2, 0));
        // on maximal isotropics the double perp is the identity
        let g = graph_of(&space, &BilinearFunctor::zero(&c)).unwrap();
        assert_eq!(perp(&space, &perp(&space, &g).unwrap()).unwrap(), g);
    }

    #[test]
    fn normalizer_examples() {
        let s = so3_strict();
        let space = OmniSpace::new(s.complex());
        let g = graph_of(&space, s.l2()).unwrap();
        let n = normalizer(&space, &g).unwrap();
        assert_eq!(n.dims(), (3, 0));
        let der = derivations(space.gl(), &s).unwrap();
        assert_eq!(der, n);
        let pair = characteristic_pair(&space, &g).unwrap();
        assert_eq!(normalizer_from_pair(&space, &pair).unwrap(), n);
        assert!(check_sub_lie2(space.gl(), &n).passed());

        let full = space.ambient().full();
        assert_eq!(normalizer(&space, &full).unwrap(), space.gl().ambient().full());
    }

    #[test]
    fn abelian_derivations_are_everything() {
        let c = c2();
        let gl = GlSpace::new(&c);
        let der = derivations(&gl, &Lie2Structure::strict(BilinearFunctor::zero(&c))).unwrap();
        assert_eq!(der, gl.ambient().full());
    }

    #[test]
    fn derivations_agree_with_normalizer_on_c2() {
        let s = c2_solvable();
        let space = OmniSpace::new(s.complex());
        let g = graph_of(&space, s.l2()).unwrap();
        let n = normalizer(&space, &g).unwrap();
        assert_eq!(derivations(space.gl(), &s).unwrap(), n);
        let pair = characteristic_pair(&space, &g).unwrap();
        assert_eq!(normalizer_from_pair(&space, &pair).unwrap(), n);
        assert!(check_sub_lie2(space.gl(), &n).passed());
    }

    #[test]
    fn normalizer_of_non_graph_dirac() {
        let (c, w, f) = solvable_w();
        let space = OmniSpace::new(&c);
        let l = dirac_from_lie2(&space, &w, &f, None).unwrap();
        let n = normalizer(&space, &l).unwrap();
        let pair = characteristic_pair(&space, &l).unwrap();
        assert_eq!(normalizer_from_pair(&space, &pair).unwrap(), n);
        assert!(check_sub_lie2(space.gl(), &n).passed());
    }

    #[test]
    fn pi_is_skew_on_null_space() {
        let (c, w, f) = solvable_w();
        let space = OmniSpace::new(&c);
        let l = dirac_from_lie2(&space, &w, &f, None).unwrap();
        let pair = characteristic_pair(&space, &l).unwrap();
        let nb = v_morphisms(&c, &pair.null);
        for x in &nb {
            for y in &nb {
                let a = act(&c, &pair.pi(space.gl(), x), y).to_vec();
                let b = act(&c, &pair.pi(space.gl(), y), x).to_vec();
                assert_eq!(a, vneg(&b));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn double_perp_contains(xs in prop::collection::vec(-1i64..2, 18)) {
            let space = OmniSpace::new(&c2());
            let amb = space.ambient();
            let n = amb.mor_dim();
            let v: Vec<Rat> = xs.iter().take(n).map(|x| int(*x)).collect();
            let w: Vec<Rat> = xs.iter().rev().take(n).map(|x| int(*x)).collect();
            // smallest 2-sub-vector space containing two morphisms
            let mut s0 = vec![amb.source_of(&v), amb.source_of(&w)];
            let k = vec![amb.kernel_of(&v), amb.kernel_of(&w)];
            s0.extend(k.iter().map(|x| amb.target_map().mul_vec(x)));
            let l = make_sub2(amb, Subspace::span(amb.obj_dim(), &s0), Subspace::span(amb.ker_dim(), &k)).unwrap();
            let pp = perp(&space, &perp(&space, &l).unwrap()).unwrap();
            prop_assert!(l.is_subspace_of(&pp));
        }
    }
}
