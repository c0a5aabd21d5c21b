//! Compensated accumulation and block-ordered parallel reduction.
//!
//! Every parallel sum in the crate goes through [`reduce_blocks`]: work is cut
//! into blocks of a fixed size, each block is folded serially, and the block
//! results are merged left to right. The partition never depends on the
//! number of worker threads, so results are bit-identical for any pool size.

use rayon::prelude::*;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &Neumaier) {
        self.add(other.sum);
        self.add(other.comp);
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// A bank of independent compensated sums.
#[derive(Debug, Clone, PartialEq)]
pub struct NeumaierVec(pub Vec<Neumaier>);

impl NeumaierVec {
    pub fn zeros(len: usize) -> Self {
        Self(vec![Neumaier::new(); len])
    }

    pub fn merge(&mut self, other: &NeumaierVec) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            a.merge(b);
        }
    }

    pub fn values(&self) -> Vec<f64> {
        self.0.iter().map(Neumaier::value).collect()
    }
}

/// Folds `0..len` in fixed blocks of `block` items (in parallel), then merges
/// the block results in index order.
pub fn reduce_blocks<A, Z, F, M>(len: usize, block: usize, zero: Z, fold: F, merge: M) -> A
where
    A: Send,
    Z: Fn() -> A + Sync,
    F: Fn(&mut A, usize) + Sync,
    M: Fn(&mut A, A),
{
    let block = block.max(1);
    let n_blocks = len.div_ceil(block);
    let partials: Vec<A> = (0..n_blocks)
        .into_par_iter()
        .map(|b| {
            let mut acc = zero();
            let end = ((b + 1) * block).min(len);
            for i in b * block..end {
                fold(&mut acc, i);
            }
            acc
        })
        .collect();
    let mut total = zero();
    for p in partials {
        merge(&mut total, p);
    }
    total
}

/// Compensated sum of `f(i)` over `0..len` with a deterministic block order.
pub fn sum_indexed(len: usize, block: usize, f: impl Fn(usize) -> f64 + Sync) -> f64 {
    reduce_blocks(
        len,
        block,
        Neumaier::new,
        |acc, i| acc.add(f(i)),
        |a, b| a.merge(&b),
    )
    .value()
}

/// Runs `f` inside a pool of `workers` threads (0 means rayon's default).
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}
