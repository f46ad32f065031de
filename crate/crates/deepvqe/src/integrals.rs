//! Molecular integral sets and the symmetric (Löwdin) orthogonalization.

use crate::error::{Error, Result};
use nalgebra::DMatrix;

/// Index convention of the two-electron tensor.
///
/// `Chemist`: `h2[p,q,r,s] = (pq|rs)`, electron 1 on (p,q).
/// `Physicist`: `h2[p,q,r,s] = <pq|rs>`, electron 1 on (p,r).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoElectronConvention {
    Chemist,
    Physicist,
}

/// One- and two-electron integrals over spatial orbitals, plus the nuclear
/// repulsion energy and electron count.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegralSet {
    pub n_spatial: usize,
    pub n_electrons: usize,
    pub h1: DMatrix<f64>,
    /// flat `n^4` tensor, index `((p*n + q)*n + r)*n + s`
    pub h2: Vec<f64>,
    pub e_nuc: f64,
    pub convention: TwoElectronConvention,
    pub orbital_basis_label: String,
}

impl IntegralSet {
    pub fn new(
        n_spatial: usize,
        n_electrons: usize,
        h1: DMatrix<f64>,
        h2: Vec<f64>,
        e_nuc: f64,
        convention: TwoElectronConvention,
        label: &str,
    ) -> Result<Self> {
        let set = IntegralSet {
            n_spatial,
            n_electrons,
            h1,
            h2,
            e_nuc,
            convention,
            orbital_basis_label: label.to_string(),
        };
        set.validate()?;
        Ok(set)
    }

    pub fn n_spin(&self) -> usize {
        2 * self.n_spatial
    }

    #[inline]
    pub fn h2_idx(&self, p: usize, q: usize, r: usize, s: usize) -> usize {
        ((p * self.n_spatial + q) * self.n_spatial + r) * self.n_spatial + s
    }

    #[inline]
    pub fn h2_get(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.h2[self.h2_idx(p, q, r, s)]
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_spatial;
        if self.h1.nrows() != n || self.h1.ncols() != n || self.h2.len() != n * n * n * n {
            return Err(Error::InvalidConfig("integral tensor shape mismatch".into()));
        }
        if self.n_electrons > self.n_spin() {
            return Err(Error::InvalidConfig(format!(
                "{} electrons exceed {} spin orbitals",
                self.n_electrons,
                self.n_spin()
            )));
        }
        for p in 0..n {
            for q in 0..n {
                if (self.h1[(p, q)] - self.h1[(q, p)]).abs() > 1e-12 {
                    return Err(Error::InvalidConfig("h1 not symmetric within 1e-12".into()));
                }
            }
        }
        // spot-check the declared 8-fold permutation symmetry
        let perms_ok = |p: usize, q: usize, r: usize, s: usize| -> bool {
            let v = self.h2_get(p, q, r, s);
            let eq = |a: f64| (a - v).abs() <= 1e-12;
            match self.convention {
                TwoElectronConvention::Chemist => {
                    eq(self.h2_get(q, p, r, s))
                        && eq(self.h2_get(p, q, s, r))
                        && eq(self.h2_get(r, s, p, q))
                }
                TwoElectronConvention::Physicist => {
                    eq(self.h2_get(r, q, p, s))
                        && eq(self.h2_get(p, s, r, q))
                        && eq(self.h2_get(q, p, s, r))
                }
            }
        };
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        if !perms_ok(p, q, r, s) {
                            return Err(Error::InvalidConfig(
                                "h2 violates its declared permutation symmetry".into(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Convert the two-electron tensor to the requested convention.
    /// `<pq|rs> = (pr|qs)`.
    pub fn with_convention(&self, target: TwoElectronConvention) -> IntegralSet {
        if self.convention == target {
            return self.clone();
        }
        let n = self.n_spatial;
        let mut h2 = vec![0.0; n * n * n * n];
        let idx = |p: usize, q: usize, r: usize, s: usize| ((p * n + q) * n + r) * n + s;
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        // either direction swaps the middle pair
                        h2[idx(p, q, r, s)] = self.h2[idx(p, r, q, s)];
                    }
                }
            }
        }
        IntegralSet {
            n_spatial: n,
            n_electrons: self.n_electrons,
            h1: self.h1.clone(),
            h2,
            e_nuc: self.e_nuc,
            convention: target,
            orbital_basis_label: self.orbital_basis_label.clone(),
        }
    }

    /// Apply an orbital rotation `C` (columns = new orbitals) to h1 and h2.
    pub fn transformed(&self, c: &DMatrix<f64>, label: &str) -> IntegralSet {
        let n = self.n_spatial;
        let h1 = c.transpose() * &self.h1 * c;
        // quarter transforms, one index at a time
        let idx = |p: usize, q: usize, r: usize, s: usize| ((p * n + q) * n + r) * n + s;
        let mut cur = self.h2.clone();
        for _pass in 0..4 {
            // rotate the first index, then cycle p<-q<-r<-s<-p
            let mut next = vec![0.0; n * n * n * n];
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        for pnew in 0..n {
                            let mut acc = 0.0;
                            for p in 0..n {
                                acc += c[(p, pnew)] * cur[idx(p, q, r, s)];
                            }
                            // cycled layout: (q,r,s,pnew)
                            next[idx(q, r, s, pnew)] = acc;
                        }
                    }
                }
            }
            cur = next;
        }
        IntegralSet {
            n_spatial: n,
            n_electrons: self.n_electrons,
            h1,
            h2: cur,
            e_nuc: self.e_nuc,
            convention: self.convention,
            orbital_basis_label: label.to_string(),
        }
    }
}

/// Inverse square root of a symmetric positive-definite matrix by
/// eigendecomposition; eigenvalues at or below the floor are an error.
pub fn inverse_sqrt(s: &DMatrix<f64>, floor: f64) -> Result<DMatrix<f64>> {
    let eig = crate::eig::sym_eigen(s);
    let n = s.nrows();
    let mut out = DMatrix::zeros(n, n);
    for k in 0..n {
        let w = eig.0[k];
        if w <= floor {
            return Err(Error::LinearDependence(w));
        }
        let inv = 1.0 / w.sqrt();
        let col = eig.1.column(k);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += col[i] * inv * col[j];
            }
        }
    }
    Ok(out)
}

/// Löwdin symmetric orthogonalization: transform by `C = S^{-1/2}`.
pub fn lowdin_orthogonalize(integrals: &IntegralSet, s: &DMatrix<f64>) -> Result<IntegralSet> {
    let c = inverse_sqrt(s, 1e-10)?;
    Ok(integrals.transformed(&c, "lowdin"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_overlap_is_noop() {
        let n = 2;
        let h1 = DMatrix::from_row_slice(n, n, &[-1.0, -0.2, -0.2, -1.0]);
        let h2 = vec![0.0; n * n * n * n];
        let ints =
            IntegralSet::new(n, 2, h1, h2, 0.5, TwoElectronConvention::Chemist, "test").unwrap();
        let s = DMatrix::identity(n, n);
        let out = lowdin_orthogonalize(&ints, &s).unwrap();
        assert!((out.h1[(0, 1)] - -0.2).abs() < 1e-12);
        assert_eq!(out.orbital_basis_label, "lowdin");
    }

    #[test]
    fn lowdin_orthonormalizes() {
        let s = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.5, 1.0]);
        let c = inverse_sqrt(&s, 1e-10).unwrap();
        let check = c.transpose() * &s * &c;
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((check[(i, j)] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn near_singular_overlap_rejected() {
        let s = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        assert!(matches!(inverse_sqrt(&s, 1e-10), Err(Error::LinearDependence(_))));
    }

    #[test]
    fn convention_round_trip() {
        let n = 2;
        let h1 = DMatrix::identity(n, n);
        let mut h2 = vec![0.0; 16];
        // (00|11) = 0.3 in chemist order, with full 8-fold symmetry
        let idx = |p: usize, q: usize, r: usize, s: usize| ((p * n + q) * n + r) * n + s;
        h2[idx(0, 0, 1, 1)] = 0.3;
        h2[idx(1, 1, 0, 0)] = 0.3;
        let ints =
            IntegralSet::new(n, 2, h1, h2, 0.0, TwoElectronConvention::Chemist, "t").unwrap();
        let phys = ints.with_convention(TwoElectronConvention::Physicist);
        // <01|01> = (00|11)
        assert!((phys.h2_get(0, 1, 0, 1) - 0.3).abs() < 1e-15);
        let back = phys.with_convention(TwoElectronConvention::Chemist);
        assert_eq!(back.h2, ints.h2);
    }
}
