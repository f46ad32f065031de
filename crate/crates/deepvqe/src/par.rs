//! Deterministic data-parallel helpers.
//!
//! Every reduction here fixes its chunking independently of the thread count,
//! and partial results are combined in chunk order. The sequential build
//! (`--no-default-features`) therefore produces bit-identical numbers to the
//! rayon build.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Chunk length used for deterministic vector reductions.
pub const REDUCE_CHUNK: usize = 4096;

/// Map each index in `0..n` to a value, in order.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Fill disjoint output chunks in parallel; chunk boundaries are fixed.
pub fn fill_chunks<T, F>(out: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        out.par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(ci, slice)| f(ci * chunk, slice));
    }
    #[cfg(not(feature = "parallel"))]
    {
        out.chunks_mut(chunk)
            .enumerate()
            .for_each(|(ci, slice)| f(ci * chunk, slice));
    }
}

/// Deterministic dot product: fixed-size chunk partials summed in order.
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let partials: Vec<f64> = {
        #[cfg(feature = "parallel")]
        {
            a.par_chunks(REDUCE_CHUNK)
                .zip(b.par_chunks(REDUCE_CHUNK))
                .map(|(ca, cb)| ca.iter().zip(cb).map(|(x, y)| x * y).sum())
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            a.chunks(REDUCE_CHUNK)
                .zip(b.chunks(REDUCE_CHUNK))
                .map(|(ca, cb)| ca.iter().zip(cb).map(|(x, y)| x * y).sum())
                .collect()
        }
    };
    partials.iter().sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// y += s * x
pub fn axpy(y: &mut [f64], s: f64, x: &[f64]) {
    debug_assert_eq!(y.len(), x.len());
    #[cfg(feature = "parallel")]
    {
        y.par_chunks_mut(REDUCE_CHUNK)
            .zip(x.par_chunks(REDUCE_CHUNK))
            .for_each(|(cy, cx)| {
                for (yv, xv) in cy.iter_mut().zip(cx) {
                    *yv += s * xv;
                }
            });
    }
    #[cfg(not(feature = "parallel"))]
    {
        for (yv, xv) in y.iter_mut().zip(x) {
            *yv += s * xv;
        }
    }
}

pub fn scale(y: &mut [f64], s: f64) {
    #[cfg(feature = "parallel")]
    {
        y.par_chunks_mut(REDUCE_CHUNK).for_each(|cy| {
            for yv in cy {
                *yv *= s;
            }
        });
    }
    #[cfg(not(feature = "parallel"))]
    {
        for yv in y {
            *yv *= s;
        }
    }
}

/// Map work items to partial vectors and accumulate them in item order.
///
/// `n_items` work units each add into a length-`dim` accumulator. Work is
/// split into at most `max_chunks` fixed ranges; partials are summed
/// sequentially, so the result does not depend on scheduling.
pub fn accumulate_vectors<F>(n_items: usize, dim: usize, max_chunks: usize, f: F) -> Vec<f64>
where
    F: Fn(std::ops::Range<usize>, &mut [f64]) + Sync + Send,
{
    if n_items == 0 {
        return vec![0.0; dim];
    }
    let n_chunks = max_chunks.clamp(1, n_items);
    let chunk = n_items.div_ceil(n_chunks);
    let ranges: Vec<std::ops::Range<usize>> = (0..n_items)
        .step_by(chunk)
        .map(|s| s..(s + chunk).min(n_items))
        .collect();
    let partials: Vec<Vec<f64>> = {
        #[cfg(feature = "parallel")]
        {
            ranges
                .into_par_iter()
                .map(|r| {
                    let mut acc = vec![0.0; dim];
                    f(r, &mut acc);
                    acc
                })
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            ranges
                .into_iter()
                .map(|r| {
                    let mut acc = vec![0.0; dim];
                    f(r, &mut acc);
                    acc
                })
                .collect()
        }
    };
    let mut out = vec![0.0; dim];
    for p in &partials {
        for (o, v) in out.iter_mut().zip(p) {
            *o += v;
        }
    }
    out
}
