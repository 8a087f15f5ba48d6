//! Structures shared by the integration and acceptance tests, built from the public API.
#![allow(dead_code)]

use omni2::exact_linalg::{int, unit, vneg, vscale, zeros, RatMatrix, Subspace, Tensor};
use omni2::gl_two::GlSpace;
use omni2::lie2_core::{BilinearFunctor, Lie2Structure};
use omni2::twist_string::{so3, symmetric_matrices, AdSplitting, AlphaCochain};
use omni2::two_vector::{make_sub2, Sub2VectorSpace, TwoTermComplex};

/// `V1 = Q^2 -> V0 = Q^3` with `d(f1) = e1`, `d(f2) = e2`.
pub fn c2() -> TwoTermComplex {
    TwoTermComplex::new(2, 3, RatMatrix::from_ints(3, 2, &[1, 0, 0, 1, 0, 0])).unwrap()
}

/// `Q -> Q` with `d = 1`.
pub fn iso_complex() -> TwoTermComplex {
    TwoTermComplex::new(1, 1, RatMatrix::from_ints(1, 1, &[1])).unwrap()
}

pub fn string_complex() -> TwoTermComplex {
    TwoTermComplex::trivial(1, 3)
}

/// Structure constants from a list of `(i, j, vector)` with `[e_i, e_j] = vector`,
/// extended skew-symmetrically.
pub fn skew_constants(n: usize, entries: &[(usize, usize, Vec<i64>)]) -> Tensor {
    let mut t = Tensor::zeros(&[n, n], n);
    for (i, j, v) in entries {
        let v: Vec<_> = v.iter().map(|&x| int(x)).collect();
        t.set(&[*i, *j], &v);
        t.set(&[*j, *i], &vneg(&v));
    }
    t
}

pub fn strict(c: &TwoTermComplex, f00: Tensor, f01: Tensor) -> Lie2Structure {
    Lie2Structure::strict(BilinearFunctor::skew(c, f00, f01).unwrap())
}

pub fn no_action(c: &TwoTermComplex) -> Tensor {
    Tensor::zeros(&[c.dim_v0(), c.dim_v1()], c.dim_v1())
}

pub fn so3_strict() -> Lie2Structure {
    let c = TwoTermComplex::trivial(0, 3);
    strict(&c, so3().bracket().clone(), no_action(&c))
}

/// so(3) with `[e1, e2] := e1`, which breaks Jacobi.
pub fn perturbed_so3() -> Lie2Structure {
    let c = TwoTermComplex::trivial(0, 3);
    let mut f00 = so3().bracket().clone();
    f00.set(&[0, 1], &unit(3, 0));
    f00.set(&[1, 0], &vneg(&unit(3, 0)));
    strict(&c, f00, no_action(&c))
}

/// so(3) on `Q -0-> Q^3`, with only `e1` acting on `V1`, by 1. Not a representation.
pub fn so3_bad_action() -> Lie2Structure {
    let c = string_complex();
    let f01 = Tensor::from_fn(&[3, 1], 1, |ix| if ix[0] == 0 { vec![int(1)] } else { vec![int(0)] });
    strict(&c, so3().bracket().clone(), f01)
}

/// On C2: `[e3, e1] = e1`, `[e3, e2] = e2`, `e3` acts on `V1` by the identity.
pub fn c2_solvable() -> Lie2Structure {
    let c = c2();
    let f00 = skew_constants(3, &[(2, 0, vec![1, 0, 0]), (2, 1, vec![0, 1, 0])]);
    let f01 = Tensor::from_fn(&[3, 2], 2, |ix| if ix[0] == 2 { unit(2, ix[1]) } else { zeros(2) });
    strict(&c, f00, f01)
}

pub fn abelian(c: &TwoTermComplex) -> Lie2Structure {
    Lie2Structure::strict(BilinearFunctor::zero(c))
}

pub fn sl2() -> Lie2Structure {
    // h, e, f: [h,e] = 2e, [h,f] = -2f, [e,f] = h
    let c = TwoTermComplex::trivial(0, 3);
    let f00 = skew_constants(3, &[(0, 1, vec![0, 2, 0]), (0, 2, vec![0, 0, -2]), (1, 2, vec![1, 0, 0])]);
    strict(&c, f00, no_action(&c))
}

pub fn heisenberg() -> Lie2Structure {
    let c = TwoTermComplex::trivial(0, 3);
    strict(&c, skew_constants(3, &[(0, 1, vec![0, 0, 1])]), no_action(&c))
}

/// `V0 = Q^2` with `[x, y] = y`, `V1 = Q`, `x` acting by `a` and `y` by `b`.
/// A representation exactly when `b = 0`.
pub fn two_dim_solvable(a: i64, b: i64) -> Lie2Structure {
    let c = TwoTermComplex::trivial(1, 2);
    let f00 = skew_constants(2, &[(0, 1, vec![0, 1])]);
    let f01 = Tensor::from_fn(&[2, 1], 1, |ix| vec![int(if ix[0] == 0 { a } else { b })]);
    strict(&c, f00, f01)
}

/// so(3) ⊕ Q on `0 -> Q^4`.
pub fn so3_plus_line() -> Lie2Structure {
    let c = TwoTermComplex::trivial(0, 4);
    let b = so3();
    let f00 = Tensor::from_fn(&[4, 4], 4, |ix| {
        let mut v = zeros(4);
        if ix[0] < 3 && ix[1] < 3 {
            v[..3].clone_from_slice(b.bracket().entry(&[ix[0], ix[1]]));
        }
        v
    });
    strict(&c, f00, no_action(&c))
}

/// so(3) with `[e1, e1] = e1`: not skew.
pub fn non_skew_so3() -> Lie2Structure {
    let c = TwoTermComplex::trivial(0, 3);
    let mut f00 = so3().bracket().clone();
    f00.set(&[0, 0], &unit(3, 0));
    Lie2Structure::strict(BilinearFunctor::new(&c, f00, no_action(&c), Tensor::zeros(&[0, 3], 0)).unwrap())
}

/// so(3) on `Q^2 -0-> Q^3` with `α(ad_u + X + R)(v) = (⟨u,v⟩, 2⟨u,v⟩)`.
pub fn so3_wide() -> (AlphaCochain, BilinearFunctor) {
    let q = so3();
    let c = TwoTermComplex::trivial(2, 3);
    let gl = GlSpace::new(&c);
    let split = AdSplitting::new(&q, &symmetric_matrices(3)).unwrap();
    let alpha = AlphaCochain::from_fn(&gl, |a| {
        let row = q.ip().mul_vec(&split.u_of(&a.a0));
        RatMatrix::from_rows(3, &[row.clone(), vscale(&row, &int(2))])
    })
    .unwrap();
    let f = BilinearFunctor::skew(&c, q.bracket().clone(), Tensor::zeros(&[3, 2], 2)).unwrap();
    (alpha, f)
}

pub fn sub2(c: &TwoTermComplex, s0: &[Vec<i64>], k: &[Vec<i64>]) -> Sub2VectorSpace {
    let to = |vs: &[Vec<i64>]| vs.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>();
    make_sub2(&c.ambient(), Subspace::span(c.dim_v0(), &to(s0)), Subspace::span(c.dim_v1(), &to(k))).unwrap()
}

/// A strict Lie 2-algebra on a 2-sub-vector space `W` of C2, with two complements of `W`
/// when they exist.
pub struct WCase {
    pub name: &'static str,
    pub w: Sub2VectorSpace,
    pub bracket: BilinearFunctor,
    pub complements: Vec<Sub2VectorSpace>,
}

pub fn w_cases() -> Vec<WCase> {
    use omni2::dirac_core::w_complex;
    let c = c2();
    let mk = |name, s0: &[Vec<i64>], k: &[Vec<i64>], f: &dyn Fn(&TwoTermComplex) -> BilinearFunctor, comps: Vec<Sub2VectorSpace>| {
        let w = sub2(&c, s0, k);
        let wc = w_complex(&c, &w).unwrap();
        WCase { name, bracket: f(&wc), w, complements: comps }
    };
    let zero = |wc: &TwoTermComplex| BilinearFunctor::zero(wc);
    vec![
        mk(
            "W = V (solvable bracket)",
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            &[vec![1, 0], vec![0, 1]],
            &|_| c2_solvable().l2().clone(),
            vec![sub2(&c, &[], &[])],
        ),
        mk("W = 0", &[], &[], &zero, vec![sub2(&c, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], &[vec![1, 0], vec![0, 1]])]),
        mk("W = (span e3, 0)", &[vec![0, 0, 1]], &[], &zero, vec![sub2(&c, &[vec![1, 0, 0], vec![0, 1, 0]], &[vec![1, 0], vec![0, 1]])]),
        mk(
            "W = (span{e1,e3}, span f1), [e3,e1] = e1",
            &[vec![1, 0, 0], vec![0, 0, 1]],
            &[vec![1, 0]],
            &|wc| {
                let f00 = skew_constants(2, &[(1, 0, vec![1, 0])]);
                let f01 = Tensor::from_fn(&[2, 1], 1, |ix| vec![int(if ix[0] == 1 { 1 } else { 0 })]);
                BilinearFunctor::skew(wc, f00, f01).unwrap()
            },
            vec![sub2(&c, &[vec![0, 1, 0]], &[vec![0, 1]]), sub2(&c, &[vec![1, 1, 0]], &[vec![1, 1]])],
        ),
        mk(
            "W = (span e2, span f2)",
            &[vec![0, 1, 0]],
            &[vec![0, 1]],
            &zero,
            vec![sub2(&c, &[vec![1, 0, 0], vec![0, 0, 1]], &[vec![1, 0]]), sub2(&c, &[vec![1, 1, 0], vec![0, 0, 1]], &[vec![1, 1]])],
        ),
        mk(
            "W = (span{e1,e2}, V1)",
            &[vec![1, 0, 0], vec![0, 1, 0]],
            &[vec![1, 0], vec![0, 1]],
            &zero,
            vec![sub2(&c, &[vec![0, 0, 1]], &[]), sub2(&c, &[vec![1, 0, 1]], &[])],
        ),
    ]
}
