//! Bilinear functors on a 2-vector space, Lie 2-algebras as 2-term L∞-algebras
//! `(d, l2, l3)`, the L∞ identity checker, and Lie 2-algebra morphisms of `gl(V)`.

use crate::error::Error;
use crate::exact_linalg::{multi_indices, unit, vadd, vneg, vsub, zeros, Rat, RatMatrix, Tensor};
use crate::gl_two::{GlMorphism, GlObject, GlSpace};
use crate::report::CheckReport;
use crate::two_vector::{Morphism2, TwoTermComplex};

/// A bilinear functor `V x V -> V` given by its components
/// `f00: V0 x V0 -> V0`, `f01: V0 x V1 -> V1`, `f10: V1 x V0 -> V1`.
/// On morphisms: `F(u+m, v+n) = f00(u,v) + (f01(u,n) + f10(m,v) + f01(dm,n))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearFunctor {
    complex: TwoTermComplex,
    f00: Tensor,
    f01: Tensor,
    f10: Tensor,
}

impl BilinearFunctor {
    pub fn new(complex: &TwoTermComplex, f00: Tensor, f01: Tensor, f10: Tensor) -> Result<Self, Error> {
        let (n0, n1) = (complex.dim_v0(), complex.dim_v1());
        let shape = |t: &Tensor, dims: [usize; 2], out: usize, name: &str| {
            if t.in_dims() != dims || t.out() != out {
                Err(Error::ShapeMismatch(format!("{name} has shape {:?} -> {}", t.in_dims(), t.out())))
            } else {
                Ok(())
            }
        };
        shape(&f00, [n0, n0], n0, "f00")?;
        shape(&f01, [n0, n1], n1, "f01")?;
        shape(&f10, [n1, n0], n1, "f10")?;
        Ok(BilinearFunctor { complex: complex.clone(), f00, f01, f10 })
    }

    /// The skew functor with `f10(m, v) = -f01(v, m)`.
    pub fn skew(complex: &TwoTermComplex, f00: Tensor, f01: Tensor) -> Result<Self, Error> {
        let (n0, n1) = (complex.dim_v0(), complex.dim_v1());
        let f10 = Tensor::from_fn(&[n1, n0], n1, |idx| vneg(f01.entry(&[idx[1], idx[0]])));
        Self::new(complex, f00, f01, f10)
    }

    pub fn zero(complex: &TwoTermComplex) -> Self {
        let (n0, n1) = (complex.dim_v0(), complex.dim_v1());
        BilinearFunctor {
            complex: complex.clone(),
            f00: Tensor::zeros(&[n0, n0], n0),
            f01: Tensor::zeros(&[n0, n1], n1),
            f10: Tensor::zeros(&[n1, n0], n1),
        }
    }

    pub fn complex(&self) -> &TwoTermComplex {
        &self.complex
    }

    pub fn f00(&self) -> &Tensor {
        &self.f00
    }

    pub fn f01(&self) -> &Tensor {
        &self.f01
    }

    pub fn f10(&self) -> &Tensor {
        &self.f10
    }

    pub fn on_objects(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        self.f00.apply(&[u, v])
    }

    pub fn on_morphisms(&self, xi: &Morphism2, eta: &Morphism2) -> Morphism2 {
        let dm = self.complex.apply_d(&xi.m);
        let m = vadd(
            &vadd(&self.f01.apply(&[&xi.u, &eta.m]), &self.f10.apply(&[&xi.m, &eta.u])),
            &self.f01.apply(&[&dm, &eta.m]),
        );
        Morphism2 { u: self.f00.apply(&[&xi.u, &eta.u]), m }
    }

    /// The three d-compatibility identities, on basis vectors.
    pub fn check_functor(&self) -> CheckReport {
        let c = &self.complex;
        let (n0, n1) = (c.dim_v0(), c.dim_v1());
        let mut r = CheckReport::new();
        for j in 0..n1 {
            let m = unit(n1, j);
            let dm = c.apply_d(&m);
            for i in 0..n0 {
                let v = unit(n0, i);
                // f00(dm, v) = d f10(m, v)
                r.expect_eq(
                    "d-compat-left",
                    || vec![format!("m{j}"), format!("u{i}")],
                    &self.f00.apply(&[&dm, &v]),
                    &c.apply_d(&self.f10.apply(&[&m, &v])),
                );
                // f00(v, dm) = d f01(v, m)
                r.expect_eq(
                    "d-compat-right",
                    || vec![format!("u{i}"), format!("m{j}")],
                    &self.f00.apply(&[&v, &dm]),
                    &c.apply_d(&self.f01.apply(&[&v, &m])),
                );
            }
            for k in 0..n1 {
                let n = unit(n1, k);
                // f10(m, dn) = f01(dm, n)
                r.expect_eq(
                    "d-compat-kernel",
                    || vec![format!("m{j}"), format!("m{k}")],
                    &self.f10.apply(&[&m, &c.apply_d(&n)]),
                    &self.f01.apply(&[&dm, &n]),
                );
            }
        }
        r
    }

    pub fn check_skew(&self) -> CheckReport {
        let (n0, n1) = (self.complex.dim_v0(), self.complex.dim_v1());
        let mut r = CheckReport::new();
        for i in 0..n0 {
            for j in i..n0 {
                let s = vadd(self.f00.entry(&[i, j]), self.f00.entry(&[j, i]));
                r.expect_zero("skew-00", || vec![format!("u{i}"), format!("u{j}")], &s);
            }
            for k in 0..n1 {
                let s = vadd(self.f01.entry(&[i, k]), self.f10.entry(&[k, i]));
                r.expect_zero("skew-01", || vec![format!("u{i}"), format!("m{k}")], &s);
            }
        }
        r
    }

    pub fn is_skew(&self) -> bool {
        self.check_skew().passed()
    }
}

/// `ad_F` as a linear functor `V -> gl(V)` in coordinates: columns of `obj` are the
/// `End0_d` coordinates of `ad_{u_i}`, columns of `ker` the `End1` coordinates of `ad_{m_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdFunctor {
    space: GlSpace,
    obj: RatMatrix,
    ker: RatMatrix,
}

impl AdFunctor {
    /// Builds the functor from coordinate matrices, validating `δ ∘ ker = obj ∘ d`.
    pub fn from_matrices(space: &GlSpace, obj: RatMatrix, ker: RatMatrix) -> Result<Self, Error> {
        let c = space.complex();
        if obj.shape() != (space.dim_end0(), c.dim_v0()) || ker.shape() != (space.dim_end1(), c.dim_v1()) {
            return Err(Error::ShapeMismatch("functor matrices do not fit gl(V)".into()));
        }
        if space.delta_matrix().mul(&ker) != obj.mul(c.d()) {
            return Err(Error::NotFunctor("δ(F m) != F(d m)".into()));
        }
        Ok(AdFunctor { space: space.clone(), obj, ker })
    }

    pub fn space(&self) -> &GlSpace {
        &self.space
    }

    pub fn obj_matrix(&self) -> &RatMatrix {
        &self.obj
    }

    pub fn ker_matrix(&self) -> &RatMatrix {
        &self.ker
    }

    pub fn obj_map(&self, u: &[Rat]) -> GlObject {
        self.space.obj_from_coords(&self.obj.mul_vec(u))
    }

    pub fn ker_map(&self, m: &[Rat]) -> RatMatrix {
        self.space.phi_from_coords(&self.ker.mul_vec(m))
    }

    pub fn morphism(&self, xi: &Morphism2) -> GlMorphism {
        GlMorphism::new(self.obj_map(&xi.u), self.ker_map(&xi.m))
    }
}

/// `ad_F ξ = F(ξ, ·)`: objects go to `(f00(u,·), f01(u,·))`, kernel parts to `f10(m,·)`.
pub fn ad_functor(space: &GlSpace, f: &BilinearFunctor) -> Result<AdFunctor, Error> {
    let c = space.complex();
    if c != f.complex() {
        return Err(Error::Precondition("bilinear functor lives on a different complex".into()));
    }
    let report = f.check_functor();
    if let Some(id) = report.first_identity() {
        return Err(Error::NotFunctor(id.to_string()));
    }
    let obj_cols: Vec<Vec<Rat>> = (0..c.dim_v0())
        .map(|i| {
            let u = unit(c.dim_v0(), i);
            let a0 = f.f00.partial_first(&u);
            let a1 = f.f01.partial_first(&u);
            space.obj_coords(&GlObject::new(a0, a1)).expect("d-compatible functor lands in End0_d")
        })
        .collect();
    let ker_cols: Vec<Vec<Rat>> = (0..c.dim_v1())
        .map(|j| space.phi_coords(&f.f10.partial_first(&unit(c.dim_v1(), j))))
        .collect();
    AdFunctor::from_matrices(
        space,
        RatMatrix::from_cols(space.dim_end0(), &obj_cols),
        RatMatrix::from_cols(space.dim_end1(), &ker_cols),
    )
}

/// A Lie 2-algebra structure `(d, l2, l3)` on a complex.
/// Graded antisymmetry of `l2` and `l3` is not enforced here; `linfty_check` reports it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lie2Structure {
    l2: BilinearFunctor,
    l3: Tensor,
}

impl Lie2Structure {
    pub fn new(l2: BilinearFunctor, l3: Tensor) -> Result<Self, Error> {
        let (n0, n1) = (l2.complex.dim_v0(), l2.complex.dim_v1());
        if l3.in_dims() != [n0, n0, n0] || l3.out() != n1 {
            return Err(Error::ShapeMismatch(format!("l3 has shape {:?} -> {}", l3.in_dims(), l3.out())));
        }
        Ok(Lie2Structure { l2, l3 })
    }

    pub fn strict(l2: BilinearFunctor) -> Self {
        let (n0, n1) = (l2.complex.dim_v0(), l2.complex.dim_v1());
        Lie2Structure { l2, l3: Tensor::zeros(&[n0, n0, n0], n1) }
    }

    pub fn complex(&self) -> &TwoTermComplex {
        &self.l2.complex
    }

    pub fn l2(&self) -> &BilinearFunctor {
        &self.l2
    }

    pub fn l3(&self) -> &Tensor {
        &self.l3
    }

    /// The bracket on morphisms recovered from `l2`.
    pub fn morphism_bracket(&self, xi: &Morphism2, eta: &Morphism2) -> Morphism2 {
        self.l2.on_morphisms(xi, eta)
    }

    /// Transports the structure along invertible maps `p0` on `V0` and `p1` on `V1`.
    pub fn transport(&self, p0: &RatMatrix, p1: &RatMatrix) -> Result<Self, Error> {
        let c = self.complex();
        let (n0, n1) = (c.dim_v0(), c.dim_v1());
        let q0 = p0.inverse().ok_or_else(|| Error::NotInvertible("p0".into()))?;
        let q1 = p1.inverse().ok_or_else(|| Error::NotInvertible("p1".into()))?;
        let d = p0.mul(c.d()).mul(&q1);
        let nc = TwoTermComplex::new(n1, n0, d)?;
        let col = |m: &RatMatrix, i: usize| m.col(i);
        let f00 = Tensor::from_fn(&[n0, n0], n0, |ix| {
            p0.mul_vec(&self.l2.f00.apply(&[&col(&q0, ix[0]), &col(&q0, ix[1])]))
        });
        let f01 = Tensor::from_fn(&[n0, n1], n1, |ix| {
            p1.mul_vec(&self.l2.f01.apply(&[&col(&q0, ix[0]), &col(&q1, ix[1])]))
        });
        let f10 = Tensor::from_fn(&[n1, n0], n1, |ix| {
            p1.mul_vec(&self.l2.f10.apply(&[&col(&q1, ix[0]), &col(&q0, ix[1])]))
        });
        let l3 = Tensor::from_fn(&[n0, n0, n0], n1, |ix| {
            p1.mul_vec(&self.l3.apply(&[&col(&q0, ix[0]), &col(&q0, ix[1]), &col(&q0, ix[2])]))
        });
        Lie2Structure::new(BilinearFunctor::new(&nc, f00, f01, f10)?, l3)
    }
}

/// Packages a bracket functor and the kernel part of its Jacobiator.
pub fn functor_bracket_to_linfty(bracket: BilinearFunctor, j_kernel: Tensor) -> Result<Lie2Structure, Error> {
    Lie2Structure::new(bracket, j_kernel)
}

/// A homogeneous element of the graded space `V0 ⊕ V1` (degrees 0 and 1).
#[derive(Clone, Debug)]
struct Graded {
    deg: u8,
    v: Vec<Rat>,
}

fn l_eval(s: &Lie2Structure, args: &[&Graded]) -> Option<Graded> {
    let c = s.complex();
    let degs: Vec<u8> = args.iter().map(|a| a.deg).collect();
    match (args.len(), degs.as_slice()) {
        (1, [1]) => Some(Graded { deg: 0, v: c.apply_d(&args[0].v) }),
        (2, [0, 0]) => Some(Graded { deg: 0, v: s.l2.f00.apply(&[&args[0].v, &args[1].v]) }),
        (2, [0, 1]) => Some(Graded { deg: 1, v: s.l2.f01.apply(&[&args[0].v, &args[1].v]) }),
        (2, [1, 0]) => Some(Graded { deg: 1, v: s.l2.f10.apply(&[&args[0].v, &args[1].v]) }),
        (3, [0, 0, 0]) => Some(Graded { deg: 1, v: s.l3.apply(&[&args[0].v, &args[1].v, &args[2].v]) }),
        // every other combination lands in degree >= 2 or below 0, which is zero
        _ => None,
    }
}

/// Subsets of size `i` of `0..n` in lexicographic order.
fn subsets(n: usize, i: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in start..=(n - left) {
            cur.push(k);
            rec(k + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if i <= n {
        rec(0, n, i, &mut Vec::new(), &mut out);
    }
    out
}

/// Sign of the permutation times the Koszul sign for the given degrees.
fn unshuffle_sign(perm: &[usize], degs: &[u8]) -> bool {
    let mut negative = false;
    for a in 0..perm.len() {
        for b in (a + 1)..perm.len() {
            if perm[a] > perm[b] {
                // ordinary sign
                negative = !negative;
                if degs[perm[a]] == 1 && degs[perm[b]] == 1 {
                    negative = !negative;
                }
            }
        }
    }
    negative
}

/// Left-hand side of the n-th L∞ relation on the given homogeneous arguments:
/// `Σ_{i+j=n+1} (-1)^{i(j-1)} Σ_σ sgn(σ) ε(σ) l_j(l_i(x_σ(1..i)), x_σ(i+1..n))`.
fn linfty_relation(s: &Lie2Structure, args: &[Graded]) -> Option<Graded> {
    let n = args.len();
    let total_deg: i32 = args.iter().map(|a| a.deg as i32).sum::<i32>() + n as i32 - 3;
    if !(0..=1).contains(&total_deg) {
        return None;
    }
    let c = s.complex();
    let out_len = if total_deg == 0 { c.dim_v0() } else { c.dim_v1() };
    let mut acc = zeros(out_len);
    let degs: Vec<u8> = args.iter().map(|a| a.deg).collect();
    for i in 1..=n {
        let j = n + 1 - i;
        let outer_sign_neg = (i * (j - 1)) % 2 == 1;
        for sub in subsets(n, i) {
            let rest: Vec<usize> = (0..n).filter(|k| !sub.contains(k)).collect();
            let perm: Vec<usize> = sub.iter().chain(rest.iter()).copied().collect();
            let inner_args: Vec<&Graded> = sub.iter().map(|&k| &args[k]).collect();
            let Some(inner) = l_eval(s, &inner_args) else { continue };
            let mut outer_args: Vec<&Graded> = vec![&inner];
            outer_args.extend(rest.iter().map(|&k| &args[k]));
            let Some(outer) = l_eval(s, &outer_args) else { continue };
            debug_assert_eq!(outer.deg as i32, total_deg);
            let neg = outer_sign_neg ^ unshuffle_sign(&perm, &degs);
            acc = if neg { vsub(&acc, &outer.v) } else { vadd(&acc, &outer.v) };
        }
    }
    Some(Graded { deg: total_deg as u8, v: acc })
}

fn basis_element(c: &TwoTermComplex, b: usize) -> Graded {
    let n0 = c.dim_v0();
    if b < n0 {
        Graded { deg: 0, v: unit(n0, b) }
    } else {
        Graded { deg: 1, v: unit(c.dim_v1(), b - n0) }
    }
}

fn basis_label(c: &TwoTermComplex, b: usize) -> String {
    if b < c.dim_v0() {
        format!("u{b}")
    } else {
        format!("m{}", b - c.dim_v0())
    }
}

/// Nondecreasing index tuples of length `n` over `0..size`.
fn multisets(size: usize, n: usize) -> Vec<Vec<usize>> {
    multi_indices(&vec![size; n]).into_iter().filter(|t| t.windows(2).all(|w| w[0] <= w[1])).collect()
}

/// Checks graded antisymmetry of `l2`, `l3` and the L∞ relations for n = 1..4 on all
/// basis tuples. Relations for n > 4 vanish identically on a 2-term complex.
pub fn linfty_check(s: &Lie2Structure) -> CheckReport {
    let c = s.complex();
    let (n0, n1) = (c.dim_v0(), c.dim_v1());
    let mut r = CheckReport::new();

    for i in 0..n0 {
        for j in i..n0 {
            let sum = vadd(s.l2.f00.entry(&[i, j]), s.l2.f00.entry(&[j, i]));
            r.expect_zero("l2-antisymmetry", || vec![format!("u{i}"), format!("u{j}")], &sum);
        }
        for k in 0..n1 {
            let sum = vadd(s.l2.f01.entry(&[i, k]), s.l2.f10.entry(&[k, i]));
            r.expect_zero("l2-antisymmetry", || vec![format!("u{i}"), format!("m{k}")], &sum);
        }
    }
    for ix in multi_indices(&[n0, n0, n0]) {
        let (a, b, cc) = (ix[0], ix[1], ix[2]);
        let lab = || vec![format!("u{a}"), format!("u{b}"), format!("u{cc}")];
        let v = s.l3.entry(&[a, b, cc]);
        r.expect_zero("l3-antisymmetry", lab, &vadd(v, s.l3.entry(&[b, a, cc])));
        r.expect_zero("l3-antisymmetry", lab, &vadd(v, s.l3.entry(&[a, cc, b])));
    }

    let size = n0 + n1;
    let basis: Vec<Graded> = (0..size).map(|b| basis_element(c, b)).collect();
    for n in 1..=4 {
        let identity = format!("linfty-n{n}");
        for tuple in multisets(size, n) {
            let args: Vec<Graded> = tuple.iter().map(|&b| basis[b].clone()).collect();
            if let Some(res) = linfty_relation(s, &args) {
                r.expect_zero(&identity, || tuple.iter().map(|&b| basis_label(c, b)).collect(), &res.v);
            }
        }
    }
    r
}

/// Independent check for strict structures: `l3 = 0`, skewness, d-compatibility and the
/// Jacobi identity of the bracket on morphisms.
pub fn strict_check(s: &Lie2Structure) -> CheckReport {
    let c = s.complex();
    let mut r = CheckReport::new();
    r.expect_true("l3-zero", Vec::new, s.l3.is_zero());
    r.merge(s.l2.check_skew());
    r.merge(s.l2.check_functor());
    let (n0, n1) = (c.dim_v0(), c.dim_v1());
    let mors: Vec<Morphism2> = (0..n0)
        .map(|i| Morphism2::new(unit(n0, i), zeros(n1)))
        .chain((0..n1).map(|j| Morphism2::new(zeros(n0), unit(n1, j))))
        .collect();
    let br = |x: &Morphism2, y: &Morphism2| s.l2.on_morphisms(x, y);
    for i in 0..mors.len() {
        for j in (i + 1)..mors.len() {
            for k in (j + 1)..mors.len() {
                let (x, y, z) = (&mors[i], &mors[j], &mors[k]);
                let t = br(&br(x, y), z).to_vec();
                let t = vadd(&t, &br(&br(y, z), x).to_vec());
                let t = vadd(&t, &br(&br(z, x), y).to_vec());
                r.expect_zero(
                    "morphism-jacobi",
                    || vec![basis_label(c, i), basis_label(c, j), basis_label(c, k)],
                    &t,
                );
            }
        }
    }
    r
}

pub fn is_strict(s: &Lie2Structure) -> bool {
    s.l3.is_zero() && linfty_check(s).passed()
}

/// Structure constants of `gl(V)` in coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlConstants {
    /// `[A, B]` on `End0_d` coordinates.
    pub c00: Tensor,
    /// `[A, φ]` on `End0_d x End1` coordinates.
    pub c01: Tensor,
    /// `[φ, ψ]_δ` on `End1` coordinates.
    pub cdd: Tensor,
}

pub fn gl_constants(space: &GlSpace) -> GlConstants {
    let (e0, e1) = (space.dim_end0(), space.dim_end1());
    let objs = space.obj_basis();
    let phis = space.end1_basis();
    let c = space.complex();
    let c00 = Tensor::from_fn(&[e0, e0], e0, |ix| {
        space.obj_coords(&objs[ix[0]].commutator(&objs[ix[1]])).expect("End0_d is closed under commutators")
    });
    let c01 = Tensor::from_fn(&[e0, e1], e1, |ix| {
        space.phi_coords(&crate::gl_two::bracket_obj_end1(&objs[ix[0]], &phis[ix[1]]))
    });
    let cdd = Tensor::from_fn(&[e1, e1], e1, |ix| {
        space.phi_coords(&crate::gl_two::bracket_delta(c, &phis[ix[0]], &phis[ix[1]]))
    });
    GlConstants { c00, c01, cdd }
}

/// `gl(V)` as a strict Lie 2-algebra on the complex `End1 -δ-> End0_d`.
pub fn gl_lie2(space: &GlSpace) -> Lie2Structure {
    let k = gl_constants(space);
    let complex = TwoTermComplex::new(space.dim_end1(), space.dim_end0(), space.delta_matrix().clone())
        .expect("δ has the right shape");
    Lie2Structure::strict(BilinearFunctor::skew(&complex, k.c00, k.c01).expect("shapes"))
}

/// A Lie 2-algebra endomorphism of `gl(V)`: a linear functor `(mu0, mu1)` on coordinates
/// and `chi`, the `End1` part of `μ2(A,B) = μ0[A,B] + chi(A,B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lie2Morphism {
    pub space: GlSpace,
    pub mu0: RatMatrix,
    pub mu1: RatMatrix,
    pub chi: Tensor,
}

impl Lie2Morphism {
    pub fn identity(space: &GlSpace) -> Self {
        let (e0, e1) = (space.dim_end0(), space.dim_end1());
        Lie2Morphism {
            space: space.clone(),
            mu0: RatMatrix::identity(e0),
            mu1: RatMatrix::identity(e1),
            chi: Tensor::zeros(&[e0, e0], e1),
        }
    }

    /// `μ1(A+φ) = μ0(A) + μ1(φ)`.
    pub fn apply(&self, x: &GlMorphism) -> GlMorphism {
        let e0 = self.space.dim_end0();
        let c = self.space.mor_coords(x).expect("valid gl morphism");
        let a = self.mu0.mul_vec(&c[..e0]);
        let phi = self.mu1.mul_vec(&c[e0..]);
        GlMorphism::new(self.space.obj_from_coords(&a), self.space.phi_from_coords(&phi))
    }

    pub fn chi_value(&self, a: &[Rat], b: &[Rat]) -> RatMatrix {
        self.space.phi_from_coords(&self.chi.apply(&[a, b]))
    }
}

/// Checks the functor condition, naturality of `μ2` and the coherence hexagon, on basis
/// elements of `End0_d` and `End1`.
pub fn morphism_coherence(mu: &Lie2Morphism) -> CheckReport {
    let space = &mu.space;
    let (e0, e1) = (space.dim_end0(), space.dim_end1());
    let mut r = CheckReport::new();
    if mu.mu0.shape() != (e0, e0) || mu.mu1.shape() != (e1, e1) || mu.chi.in_dims() != [e0, e0] || mu.chi.out() != e1 {
        r.record_fail("shape", Vec::new(), &[]);
        return r;
    }
    let k = gl_constants(space);
    let delta = space.delta_matrix();
    let br00 = |a: &[Rat], b: &[Rat]| k.c00.apply(&[a, b]);
    let br01 = |a: &[Rat], p: &[Rat]| k.c01.apply(&[a, p]);
    let brdd = |p: &[Rat], q: &[Rat]| k.cdd.apply(&[p, q]);
    let chi = |a: &[Rat], b: &[Rat]| mu.chi.apply(&[a, b]);
    let m0 = |a: &[Rat]| mu.mu0.mul_vec(a);
    let m1 = |p: &[Rat]| mu.mu1.mul_vec(p);
    let dl = |p: &[Rat]| delta.mul_vec(p);
    let a = |i: usize| unit(e0, i);
    let p = |i: usize| unit(e1, i);
    let la = |i: usize| format!("A{i}");
    let lp = |i: usize| format!("phi{i}");

    // δ ∘ μ1 = μ0 ∘ δ
    for j in 0..e1 {
        r.expect_eq("functor", || vec![lp(j)], &dl(&m1(&p(j))), &m0(&dl(&p(j))));
    }
    for i in 0..e0 {
        for j in 0..e0 {
            let (x, y) = (a(i), a(j));
            let cxy = chi(&x, &y);
            r.expect_zero("mu2-skew", || vec![la(i), la(j)], &vadd(&cxy, &chi(&y, &x)));
            // target of μ2(x,y) is [μ0 x, μ0 y]
            let lhs = vadd(&m0(&br00(&x, &y)), &dl(&cxy));
            r.expect_eq("mu2-target", || vec![la(i), la(j)], &lhs, &br00(&m0(&x), &m0(&y)));
            // naturality in the second slot: χ(x, δψ) + μ1[x,ψ] = [μ0 x, μ1 ψ]
            for l in 0..e1 {
                let psi = p(l);
                let lhs = vadd(&chi(&x, &dl(&psi)), &m1(&br01(&x, &psi)));
                r.expect_eq("mu2-naturality", || vec![la(i), la(j), lp(l)], &lhs, &br01(&m0(&x), &m1(&psi)));
                // first slot: χ(δφ, y) + μ1[φ,y] = [μ1 φ, μ0 y], with [φ,B] = -[B,φ]
                let lhs = vsub(&chi(&dl(&psi), &y), &m1(&br01(&y, &psi)));
                r.expect_eq("mu2-naturality", || vec![lp(l), la(i), la(j)], &lhs, &vneg(&br01(&m0(&y), &m1(&psi))));
            }
        }
    }
    for l in 0..e1 {
        for q in 0..e1 {
            let (phi, psi) = (p(l), p(q));
            let lhs = vadd(&chi(&dl(&phi), &dl(&psi)), &m1(&brdd(&phi, &psi)));
            r.expect_eq("mu2-naturality", || vec![lp(l), lp(q)], &lhs, &brdd(&m1(&phi), &m1(&psi)));
        }
    }
    // χ([u,v],w) + [χ(u,v), μ0 w] = χ(u,[v,w]) + χ(v,[w,u]) + [μ0 u, χ(v,w)] + [μ0 v, χ(w,u)]
    for i in 0..e0 {
        for j in 0..e0 {
            for l in 0..e0 {
                let (u, v, w) = (a(i), a(j), a(l));
                let lhs = vsub(&chi(&br00(&u, &v), &w), &br01(&m0(&w), &chi(&u, &v)));
                let rhs = vadd(
                    &vadd(&chi(&u, &br00(&v, &w)), &chi(&v, &br00(&w, &u))),
                    &vadd(&br01(&m0(&u), &chi(&v, &w)), &br01(&m0(&v), &chi(&w, &u))),
                );
                r.expect_eq("coherence", || vec![la(i), la(j), la(l)], &lhs, &rhs);
            }
        }
    }
    r
}

/// Whether the functor part of `μ` is invertible.
pub fn is_isomorphism(mu: &Lie2Morphism) -> bool {
    mu.mu0.inverse().is_some() && mu.mu1.inverse().is_some()
}

/// Whether the structure has zero bracket and zero `l3`.
pub fn is_abelian(s: &Lie2Structure) -> bool {
    s.l2.f00.is_zero() && s.l2.f01.is_zero() && s.l2.f10.is_zero() && s.l3.is_zero()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exact_linalg::{half, int, rat};
    use crate::two_vector::check_linear_functor;
    use proptest::prelude::*;

    /// so(3) structure constants `[e1,e2] = ½e3` and cyclic.
    pub fn so3_f00() -> Tensor {
        Tensor::from_fn(&[3, 3], 3, |ix| {
            let (i, j) = (ix[0], ix[1]);
            let mut v = zeros(3);
            if i != j {
                let k = 3 - i - j;
                let sign = if (j + 3 - i) % 3 == 1 { half() } else { -half() };
                v[k] = sign;
            }
            v
        })
    }

    pub fn so3_strict() -> Lie2Structure {
        let c = TwoTermComplex::trivial(0, 3);
        Lie2Structure::strict(BilinearFunctor::skew(&c, so3_f00(), Tensor::zeros(&[3, 0], 0)).unwrap())
    }

    pub fn string_so3() -> Lie2Structure {
        let c = TwoTermComplex::trivial(1, 3);
        let l2 = BilinearFunctor::skew(&c, so3_f00(), Tensor::zeros(&[3, 1], 1)).unwrap();
        // l3(u,v,w) = <[u,v], w> with the standard inner product
        let l3 = Tensor::from_fn(&[3, 3, 3], 1, |ix| {
            let uv = so3_f00().entry(&[ix[0], ix[1]]).to_vec();
            vec![uv[ix[2]].clone()]
        });
        Lie2Structure::new(l2, l3).unwrap()
    }

    pub fn c2() -> TwoTermComplex {
        TwoTermComplex::new(2, 3, RatMatrix::from_ints(3, 2, &[1, 0, 0, 1, 0, 0])).unwrap()
    }

    /// On C2: [e3,e1] = e1, [e3,e2] = e2, e3 acts on V1 by the identity.
    pub fn c2_solvable() -> Lie2Structure {
        let c = c2();
        let f00 = Tensor::from_fn(&[3, 3], 3, |ix| match (ix[0], ix[1]) {
            (2, 0) => unit(3, 0),
            (0, 2) => vneg(&unit(3, 0)),
            (2, 1) => unit(3, 1),
            (1, 2) => vneg(&unit(3, 1)),
            _ => zeros(3),
        });
        let f01 = Tensor::from_fn(&[3, 2], 2, |ix| if ix[0] == 2 { unit(2, ix[1]) } else { zeros(2) });
        Lie2Structure::strict(BilinearFunctor::skew(&c, f00, f01).unwrap())
    }

    #[test]
    fn so3_ad_matrix() {
        let s = so3_strict();
        let space = GlSpace::new(s.complex());
        let ad = ad_functor(&space, s.l2()).unwrap();
        let a = ad.obj_map(&unit(3, 0));
        assert_eq!(a.a0.mul_vec(&unit(3, 1)), vec![int(0), int(0), half()]);
        assert_eq!(a.a0.mul_vec(&unit(3, 2)), vec![int(0), -half(), int(0)]);
        assert_eq!(so3_f00().entry(&[1, 2]), &[half(), int(0), int(0)][..]);
        assert_eq!(so3_f00().entry(&[2, 0]), &[int(0), half(), int(0)][..]);
    }

    #[test]
    fn zero_and_string_ad() {
        let c = c2();
        let space = GlSpace::new(&c);
        let ad = ad_functor(&space, &BilinearFunctor::zero(&c)).unwrap();
        assert!(ad.obj_matrix().is_zero() && ad.ker_matrix().is_zero());
        let s = string_so3();
        let space = GlSpace::new(s.complex());
        let ad = ad_functor(&space, s.l2()).unwrap();
        assert!(ad.ker_matrix().is_zero());
        for i in 0..3 {
            assert!(check_linear_functor(s.complex(), &ad.obj_map(&unit(3, i))).unwrap().holds);
        }
    }

    #[test]
    fn ad_rejects_incompatible_functor() {
        let c = c2();
        // [e1,e2] = e1 with no kernel parts breaks d-compatibility.
        let f00 = Tensor::from_fn(&[3, 3], 3, |ix| match (ix[0], ix[1]) {
            (0, 1) => unit(3, 0),
            (1, 0) => vneg(&unit(3, 0)),
            _ => zeros(3),
        });
        let f = BilinearFunctor::skew(&c, f00, Tensor::zeros(&[3, 2], 2)).unwrap();
        let err = ad_functor(&GlSpace::new(&c), &f).unwrap_err();
        assert!(matches!(err, Error::NotFunctor(_)));
    }

    #[test]
    fn linfty_examples() {
        let c = c2();
        assert!(linfty_check(&Lie2Structure::strict(BilinearFunctor::zero(&c))).passed());
        assert!(linfty_check(&so3_strict()).passed());
        assert!(is_strict(&so3_strict()));
        let s = string_so3();
        assert!(linfty_check(&s).passed(), "{:?}", linfty_check(&s).witnesses);
        assert!(!is_strict(&s));
        assert_eq!(s.l3().entry(&[0, 1, 2]), &[half()][..]);
        assert!(linfty_check(&c2_solvable()).passed());
    }

    #[test]
    fn broken_jacobi_fails() {
        let c = TwoTermComplex::trivial(0, 3);
        let mut f00 = so3_f00();
        f00.set(&[0, 1], &unit(3, 0));
        f00.set(&[1, 0], &vneg(&unit(3, 0)));
        let s = Lie2Structure::strict(BilinearFunctor::skew(&c, f00, Tensor::zeros(&[3, 0], 0)).unwrap());
        let r = linfty_check(&s);
        assert!(!r.passed());
        assert!(r.has_identity("linfty-n3"));
        assert!(!is_strict(&s));
        assert!(!strict_check(&s).passed());
    }

    #[test]
    fn l3_sign_flip_fails() {
        let s = string_so3();
        let mut l3 = s.l3().clone();
        l3.set(&[0, 1, 2], &[-half()]);
        let bad = Lie2Structure::new(s.l2().clone(), l3).unwrap();
        let r = linfty_check(&bad);
        assert!(!r.passed());
        assert!(r.has_identity("l3-antisymmetry"));
    }

    #[test]
    fn n3_relation_matches_jacobiator() {
        // With d = id on a 1-dim complex Q -> Q: l1 l3 = Jacobiator on V0.
        let c = TwoTermComplex::new(1, 1, RatMatrix::identity(1)).unwrap();
        let l2 = BilinearFunctor::zero(&c);
        let l3 = Tensor::from_fn(&[1, 1, 1], 1, |_| vec![int(0)]);
        assert!(linfty_check(&Lie2Structure::new(l2, l3).unwrap()).passed());
    }

    #[test]
    fn gl_is_a_strict_lie2_algebra() {
        for c in [c2(), TwoTermComplex::trivial(1, 2), TwoTermComplex::new(1, 1, RatMatrix::identity(1)).unwrap()] {
            let g = gl_lie2(&GlSpace::new(&c));
            assert!(strict_check(&g).passed(), "{:?}", strict_check(&g).witnesses);
            assert!(linfty_check(&g).passed(), "{:?}", linfty_check(&g).witnesses);
        }
    }

    #[test]
    fn identity_morphism_is_coherent() {
        for c in [c2(), TwoTermComplex::trivial(1, 3), TwoTermComplex::trivial(0, 2)] {
            let mu = Lie2Morphism::identity(&GlSpace::new(&c));
            assert!(morphism_coherence(&mu).passed());
            assert!(is_isomorphism(&mu));
        }
    }

    #[test]
    fn non_cocycle_chi_fails_coherence() {
        let c = TwoTermComplex::trivial(1, 2);
        let space = GlSpace::new(&c);
        let (e0, e1) = (space.dim_end0(), space.dim_end1());
        let mut mu = Lie2Morphism::identity(&space);
        // skew but arbitrary: χ(A0, A1) = φ0
        mu.chi = Tensor::from_fn(&[e0, e0], e1, |ix| match (ix[0], ix[1]) {
            (0, 1) => unit(e1, 0),
            (1, 0) => vneg(&unit(e1, 0)),
            _ => zeros(e1),
        });
        let r = morphism_coherence(&mu);
        assert!(!r.passed());
        assert!(r.has_identity("coherence"));
    }

    #[test]
    fn strict_and_linfty_agree_on_perturbations() {
        let base = c2_solvable();
        let c = base.complex().clone();
        for (i, j, k) in [(0, 1, 0), (0, 1, 1), (1, 2, 2), (0, 2, 2)] {
            let mut f00 = base.l2().f00().clone();
            f00.set(&[i, j], &unit(3, k));
            f00.set(&[j, i], &vneg(&unit(3, k)));
            let s = Lie2Structure::strict(BilinearFunctor::skew(&c, f00, base.l2().f01().clone()).unwrap());
            assert_eq!(strict_check(&s).passed(), linfty_check(&s).passed(), "perturbation {i}{j}{k}");
        }
    }

    fn invertible(n: usize, xs: &[i64]) -> RatMatrix {
        // unit lower triangular times diagonal of nonzero entries
        let mut l = RatMatrix::identity(n);
        let mut t = 0;
        for i in 0..n {
            for j in 0..i {
                l.set(i, j, int(xs[t % xs.len()]));
                t += 1;
            }
        }
        let d: Vec<Rat> = (0..n).map(|i| rat(1 + xs[i % xs.len()].abs(), 1 + (i as i64 % 2))).collect();
        l.mul(&RatMatrix::diag(&d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn linfty_invariant_under_basis_change(xs in prop::collection::vec(-2i64..3, 6), ys in prop::collection::vec(-2i64..3, 3)) {
            for s in [string_so3(), c2_solvable()] {
                let (n0, n1) = (s.complex().dim_v0(), s.complex().dim_v1());
                let t = s.transport(&invertible(n0, &xs), &invertible(n1, &ys)).unwrap();
                prop_assert!(linfty_check(&t).passed());
                prop_assert_eq!(strict_check(&t).passed(), s.l3().is_zero());
            }
        }
    }
}
