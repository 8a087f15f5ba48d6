//! Multilinear maps `Q^{n1} x ... x Q^{nk} -> Q^out` stored by structure constants.

use num::Zero;

use super::matrix::RatMatrix;
use super::rational::{vaxpy, zeros, Rat};
use crate::error::Error;

/// Entry layout: `data[((i1 * n2 + i2) * ... ) * out + o]`, i.e. the value on basis
/// tuple `(e_i1, ..., e_ik)` is a contiguous vector of length `out`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    in_dims: Vec<usize>,
    out: usize,
    data: Vec<Rat>,
}

impl Tensor {
    pub fn zeros(in_dims: &[usize], out: usize) -> Self {
        let n = in_dims.iter().product::<usize>() * out;
        Tensor { in_dims: in_dims.to_vec(), out, data: zeros(n) }
    }

    pub fn new(in_dims: &[usize], out: usize, data: Vec<Rat>) -> Result<Self, Error> {
        let n = in_dims.iter().product::<usize>() * out;
        if data.len() != n {
            return Err(Error::ShapeMismatch(format!("tensor needs {n} entries, got {}", data.len())));
        }
        Ok(Tensor { in_dims: in_dims.to_vec(), out, data })
    }

    /// Builds a tensor from its values on basis tuples.
    pub fn from_fn(in_dims: &[usize], out: usize, mut f: impl FnMut(&[usize]) -> Vec<Rat>) -> Self {
        let mut t = Self::zeros(in_dims, out);
        for idx in multi_indices(in_dims) {
            let v = f(&idx);
            t.set(&idx, &v);
        }
        t
    }

    pub fn in_dims(&self) -> &[usize] {
        &self.in_dims
    }

    pub fn out(&self) -> usize {
        self.out
    }

    pub fn arity(&self) -> usize {
        self.in_dims.len()
    }

    pub fn data(&self) -> &[Rat] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.in_dims.len(), "tensor arity mismatch");
        let mut o = 0;
        for (i, n) in idx.iter().zip(&self.in_dims) {
            assert!(i < n, "tensor index out of range");
            o = o * n + i;
        }
        o * self.out
    }

    pub fn entry(&self, idx: &[usize]) -> &[Rat] {
        let o = self.offset(idx);
        &self.data[o..o + self.out]
    }

    pub fn set(&mut self, idx: &[usize], v: &[Rat]) {
        assert_eq!(v.len(), self.out, "tensor value length mismatch");
        let o = self.offset(idx);
        self.data[o..o + self.out].clone_from_slice(v);
    }

    /// Evaluates the multilinear map on the given argument vectors.
    pub fn apply(&self, args: &[&[Rat]]) -> Vec<Rat> {
        assert_eq!(args.len(), self.arity(), "tensor arity mismatch");
        for (a, n) in args.iter().zip(&self.in_dims) {
            assert_eq!(a.len(), *n, "tensor argument length mismatch");
        }
        let mut acc = zeros(self.out);
        self.apply_rec(args, 0, 0, Rat::from_integer(1.into()), &mut acc);
        acc
    }

    fn apply_rec(&self, args: &[&[Rat]], slot: usize, base: usize, coef: Rat, acc: &mut [Rat]) {
        if slot == args.len() {
            let o = base * self.out;
            vaxpy(acc, &coef, &self.data[o..o + self.out]);
            return;
        }
        for (i, x) in args[slot].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            self.apply_rec(args, slot + 1, base * self.in_dims[slot] + i, &coef * x, acc);
        }
    }

    /// Fixes the first argument, returning the matrix of the remaining bilinear-to-linear slot.
    /// Only defined for arity 2: result is `out x in_dims[1]`.
    pub fn partial_first(&self, x: &[Rat]) -> RatMatrix {
        assert_eq!(self.arity(), 2, "partial_first needs a bilinear tensor");
        let n = self.in_dims[1];
        let cols: Vec<Vec<Rat>> = (0..n)
            .map(|j| {
                let mut e = zeros(n);
                e[j] = Rat::from_integer(1.into());
                self.apply(&[x, &e])
            })
            .collect();
        RatMatrix::from_cols(self.out, &cols)
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        assert_eq!((&self.in_dims, self.out), (&other.in_dims, other.out), "tensor shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Tensor { in_dims: self.in_dims.clone(), out: self.out, data }
    }

    pub fn scale(&self, c: &Rat) -> Tensor {
        Tensor { in_dims: self.in_dims.clone(), out: self.out, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn neg(&self) -> Tensor {
        self.scale(&-Rat::from_integer(1.into()))
    }
}

/// All index tuples of the given shape in lexicographic order.
pub fn multi_indices(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &n in dims {
        let mut next = Vec::with_capacity(out.len() * n);
        for prefix in &out {
            for i in 0..n {
                let mut p = prefix.clone();
                p.push(i);
                next.push(p);
            }
        }
        out = next;
    }
    out
}
