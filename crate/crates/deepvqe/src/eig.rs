//! Dense symmetric / Hermitian eigensolvers and a matrix-free Lanczos.

use crate::error::{Error, Result};
use crate::par;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Eigendecomposition of a real symmetric matrix, eigenvalues ascending.
/// Eigenvector signs are fixed so the largest-magnitude component is positive.
pub fn sym_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let se = nalgebra::SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].partial_cmp(&se.eigenvalues[b]).unwrap());
    let mut vals = Vec::with_capacity(n);
    let mut vecs = DMatrix::zeros(n, n);
    for (k, &src) in order.iter().enumerate() {
        vals.push(se.eigenvalues[src]);
        let col = se.eigenvectors.column(src);
        let mut imax = 0;
        for i in 0..n {
            if col[i].abs() > col[imax].abs() {
                imax = i;
            }
        }
        let sgn = if col[imax] < 0.0 { -1.0 } else { 1.0 };
        for i in 0..n {
            vecs[(i, k)] = sgn * col[i];
        }
    }
    (vals, vecs)
}

/// Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi.
///
/// Returns eigenvalues ascending and the unitary whose columns are the
/// eigenvectors, each phase-fixed so its largest-magnitude entry is real
/// positive. Intended for small factor matrices (K up to a few hundred).
pub fn hermitian_eigen(m: &DMatrix<Complex64>) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
    let n = m.nrows();
    let herm_dev = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (m[(i, j)] - m[(j, i)].conj()).norm())
        .fold(0.0f64, f64::max);
    if herm_dev > 1e-10 {
        return Err(Error::NonNormalFactor(herm_dev));
    }
    let mut a = m.clone();
    let mut u = DMatrix::<Complex64>::identity(n, n);
    let off = |a: &DMatrix<Complex64>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s
    };
    let scale: f64 = (0..n).map(|i| a[(i, i)].norm_sqr()).sum::<f64>() + off(&a);
    let tol = 1e-30 * scale.max(1e-300);
    for _sweep in 0..100 {
        if off(&a) <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.norm_sqr() <= tol / (n * n) as f64 {
                    continue;
                }
                // 2x2 Hermitian rotation: diagonalize [[app, apq],[apq*, aqq]]
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let abs = apq.norm();
                let phase = apq / Complex64::new(abs, 0.0);
                let theta = 0.5 * (2.0 * abs).atan2(app - aqq);
                let (c, s) = (theta.cos(), theta.sin());
                // columns: [c; s*conj(phase)] and [-s*phase; c] -- unitary J
                let j_pp = Complex64::new(c, 0.0);
                let j_qp = Complex64::new(s, 0.0) * phase.conj();
                let j_pq = Complex64::new(-s, 0.0) * phase;
                let j_qq = Complex64::new(c, 0.0);
                // a <- J^H a J ; update rows/cols p,q
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * j_pp + akq * j_qp;
                    a[(k, q)] = akp * j_pq + akq * j_qq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
                    a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
                }
                for k in 0..n {
                    let ukp = u[(k, p)];
                    let ukq = u[(k, q)];
                    u[(k, p)] = ukp * j_pp + ukq * j_qp;
                    u[(k, q)] = ukp * j_pq + ukq * j_qq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.partial_cmp(&a[(y, y)].re).unwrap());
    let mut vals = Vec::with_capacity(n);
    let mut vecs = DMatrix::<Complex64>::zeros(n, n);
    for (k, &src) in order.iter().enumerate() {
        vals.push(a[(src, src)].re);
        let col = u.column(src);
        let mut imax = 0;
        for i in 0..n {
            if col[i].norm() > col[imax].norm() {
                imax = i;
            }
        }
        let ph = if col[imax].norm() > 0.0 {
            col[imax].conj() / Complex64::new(col[imax].norm(), 0.0)
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            vecs[(i, k)] = col[i] * ph;
        }
    }
    Ok((vals, vecs))
}

pub struct LanczosOptions {
    /// Residual tolerance relative to max(1, |E|).
    pub tol: f64,
    pub max_subspace: usize,
    pub max_restarts: usize,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions { tol: 1e-8, max_subspace: 300, max_restarts: 12, seed: 08042022 }
    }
}

pub struct LanczosOutcome {
    pub energy: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

/// Lowest eigenpair of a real symmetric operator by Lanczos with full
/// reorthogonalization and restarts. Deterministic for a fixed seed and a
/// deterministic `matvec`.
pub fn lanczos_lowest<F>(
    dim: usize,
    matvec: F,
    init: Option<&[f64]>,
    opts: &LanczosOptions,
) -> Result<LanczosOutcome>
where
    F: Fn(&[f64], &mut [f64]),
{
    assert!(dim > 0);
    if dim == 1 {
        let mut y = vec![0.0];
        matvec(&[1.0], &mut y);
        return Ok(LanczosOutcome { energy: y[0], vector: vec![1.0], residual: 0.0, iterations: 1 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut v0: Vec<f64> = match init {
        Some(v) => {
            // mix in a small deterministic perturbation so the start vector
            // overlaps every invariant subspace
            let mut v = v.to_vec();
            let n0 = par::norm(&v);
            if n0 < 1e-12 {
                v = (0..dim).map(|_| rng.random::<f64>() - 0.5).collect()
            } else {
                par::scale(&mut v, 1.0 / n0);
                let pert: Vec<f64> = (0..dim).map(|_| rng.random::<f64>() - 0.5).collect();
                let pn = par::norm(&pert);
                par::axpy(&mut v, 0.02 / pn, &pert);
            }
            v
        }
        None => (0..dim).map(|_| rng.random::<f64>() - 0.5).collect(),
    };
    let n0 = par::norm(&v0);
    par::scale(&mut v0, 1.0 / n0);

    let mut total_iters = 0usize;
    let mut best: Option<LanczosOutcome> = None;
    for _restart in 0..=opts.max_restarts {
        let mut basis: Vec<Vec<f64>> = vec![v0.clone()];
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();
        let mut w = vec![0.0; dim];
        let mut converged = None;
        for j in 0..opts.max_subspace {
            matvec(&basis[j], &mut w);
            total_iters += 1;
            let alpha = par::dot(&basis[j], &w);
            alphas.push(alpha);
            par::axpy(&mut w, -alpha, &basis[j]);
            if j > 0 {
                let b = betas[j - 1];
                par::axpy(&mut w, -b, &basis[j - 1]);
            }
            // full reorthogonalization, two passes
            for _ in 0..2 {
                for u in &basis {
                    let c = par::dot(u, &w);
                    par::axpy(&mut w, -c, u);
                }
            }
            let beta = par::norm(&w);
            // Ritz step
            let k = alphas.len();
            let (theta, s) = tridiag_lowest(&alphas, &betas);
            let resid = beta * s[k - 1].abs();
            let tol = opts.tol * theta.abs().max(1.0);
            if resid < tol || beta < 1e-14 || j + 1 == opts.max_subspace {
                let mut ritz = vec![0.0; dim];
                for (i, u) in basis.iter().enumerate() {
                    par::axpy(&mut ritz, s[i], u);
                }
                let nr = par::norm(&ritz);
                par::scale(&mut ritz, 1.0 / nr);
                converged = Some(LanczosOutcome {
                    energy: theta,
                    vector: ritz,
                    residual: resid,
                    iterations: total_iters,
                });
                if resid < tol || beta < 1e-14 {
                    return Ok(converged.unwrap());
                }
                break;
            }
            let mut next = w.clone();
            par::scale(&mut next, 1.0 / beta);
            betas.push(beta);
            basis.push(next);
        }
        let out = converged.expect("restart always produces a Ritz pair");
        v0 = out.vector.clone();
        match &best {
            Some(b) if b.energy <= out.energy && b.residual <= out.residual => {}
            _ => best = Some(out),
        }
    }
    let best = best.unwrap();
    Err(Error::SolverNoConvergence { residual: best.residual, iterations: best.iterations })
}

/// Lowest eigenpair of a symmetric tridiagonal matrix (dense fallback,
/// subspace sizes are small).
fn tridiag_lowest(alphas: &[f64], betas: &[f64]) -> (f64, Vec<f64>) {
    let k = alphas.len();
    let mut t = DMatrix::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alphas[i];
        if i + 1 < k {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    let (vals, vecs) = sym_eigen(&t);
    (vals[0], vecs.column(0).iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_eigen_sorted() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let (vals, vecs) = sym_eigen(&m);
        assert!((vals[0] + 1.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
        let r = &m * vecs.column(0) - vecs.column(0) * vals[0];
        assert!(r.norm() < 1e-12);
    }

    #[test]
    fn hermitian_eigen_pauli_y() {
        let mut m = DMatrix::<Complex64>::zeros(2, 2);
        m[(0, 1)] = Complex64::new(0.0, -1.0);
        m[(1, 0)] = Complex64::new(0.0, 1.0);
        let (vals, vecs) = hermitian_eigen(&m).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
        // reconstruction U diag U^H
        let mut rec = DMatrix::<Complex64>::zeros(2, 2);
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    rec[(i, j)] += vecs[(i, k)] * Complex64::new(vals[k], 0.0) * vecs[(j, k)].conj();
                }
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                assert!((rec[(i, j)] - m[(i, j)]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut m = DMatrix::<Complex64>::zeros(2, 2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(hermitian_eigen(&m).is_err());
    }

    #[test]
    fn lanczos_matches_dense() {
        let n = 60;
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = (i as f64) * 0.1 - 2.0;
            if i + 1 < n {
                m[(i, i + 1)] = -0.3;
                m[(i + 1, i)] = -0.3;
            }
        }
        let (vals, _) = sym_eigen(&m);
        let out = lanczos_lowest(
            n,
            |x, y| {
                for i in 0..n {
                    let mut acc = m[(i, i)] * x[i];
                    if i > 0 {
                        acc += m[(i, i - 1)] * x[i - 1];
                    }
                    if i + 1 < n {
                        acc += m[(i, i + 1)] * x[i + 1];
                    }
                    y[i] = acc;
                }
            },
            None,
            &LanczosOptions::default(),
        )
        .unwrap();
        assert!((out.energy - vals[0]).abs() < 1e-9);
    }
}
