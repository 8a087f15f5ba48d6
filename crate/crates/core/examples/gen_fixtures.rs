use omni2::cli_io::{serialize_document, Document, Structure, SubLie2};
use omni2::exact_linalg::*;
use omni2::lie2_core::*;
use omni2::twist_string::*;
use omni2::two_vector::*;

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let write = |name: &str, s: Structure, labels: Option<Vec<&str>>| {
        let doc = Document { structure: s, basis_labels: labels.map(|l| l.into_iter().map(String::from).collect()) };
        std::fs::write(dir.join(name), serialize_document(&doc) + "\n").unwrap();
    };
    let q = so3();
    write("so3.json", Structure::Quadratic(q.clone()), Some(vec!["e1", "e2", "e3"]));
    let c2 = TwoTermComplex::new(2, 3, RatMatrix::from_ints(3, 2, &[1, 0, 0, 1, 0, 0])).unwrap();
    write("c2.json", Structure::Complex(c2.clone()), None);
    write("string_so3.json", Structure::Lie2(string_type(&q).unwrap()), Some(vec!["e1", "e2", "e3"]));
    let mut f00 = q.bracket().clone();
    f00.set(&[0, 1], &unit(3, 0));
    f00.set(&[1, 0], &vneg(&unit(3, 0)));
    let c = TwoTermComplex::trivial(0, 3);
    let broken = BilinearFunctor::skew(&c, f00, Tensor::zeros(&[3, 0], 0)).unwrap();
    write("perturbed_so3.json", Structure::Lie2(Lie2Structure::strict(broken)), Some(vec!["e1", "e2", "e3"]));
    write("abelian_c2.json", Structure::Lie2(Lie2Structure::strict(BilinearFunctor::zero(&c2))), None);
    let f00 = Tensor::from_fn(&[3, 3], 3, |ix| match (ix[0], ix[1]) {
        (2, 0) => unit(3, 0),
        (0, 2) => vneg(&unit(3, 0)),
        (2, 1) => unit(3, 1),
        (1, 2) => vneg(&unit(3, 1)),
        _ => zeros(3),
    });
    let f01 = Tensor::from_fn(&[3, 2], 2, |ix| if ix[0] == 2 { unit(2, ix[1]) } else { zeros(2) });
    let solv = BilinearFunctor::skew(&c2, f00, f01).unwrap();
    write("c2_solvable.json", Structure::Lie2(Lie2Structure::strict(solv)), None);
    let alpha = alpha_for_quadratic(&q, &symmetric_matrices(3)).unwrap();
    write("string_mu.json", Structure::Mu(mu_from_alpha(&alpha).unwrap()), None);
    // W = (span{e1, e3}, span{f1}) in C2 with [e3, e1] = e1 and e3 acting on f1 by 1
    let amb = c2.ambient();
    let w = make_sub2(&amb, Subspace::span(3, &[unit(3, 0), unit(3, 2)]), Subspace::span(2, &[unit(2, 0)])).unwrap();
    let wc = TwoTermComplex::new(1, 2, RatMatrix::from_ints(2, 1, &[1, 0])).unwrap();
    let g00 = Tensor::from_fn(&[2, 2], 2, |ix| match (ix[0], ix[1]) {
        (1, 0) => unit(2, 0),
        (0, 1) => vneg(&unit(2, 0)),
        _ => zeros(2),
    });
    let g01 = Tensor::from_fn(&[2, 1], 1, |ix| if ix[0] == 1 { unit(1, 0) } else { zeros(1) });
    let bracket = BilinearFunctor::skew(&wc, g00, g01).unwrap();
    write("solvable_w.json", Structure::SubLie2(SubLie2 { complex: c2.clone(), w, bracket, complement: None }), None);
}
