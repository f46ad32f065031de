//! FCIDUMP text files: header with NORB/NELEC/MS2, then "value i j k l"
//! records with 1-based indices, chemist integrals, and the core energy at
//! indices 0 0 0 0.

use crate::error::{Error, Result};
use crate::integrals::{IntegralSet, TwoElectronConvention};
use nalgebra::DMatrix;
use std::path::Path;

pub fn write_fcidump(integrals: &IntegralSet, path: &Path) -> Result<()> {
    std::fs::write(path, to_fcidump_string(integrals))?;
    Ok(())
}

pub fn to_fcidump_string(integrals: &IntegralSet) -> String {
    let chem = integrals.with_convention(TwoElectronConvention::Chemist);
    let n = chem.n_spatial;
    let ms2 = chem.n_electrons % 2;
    let mut out = String::new();
    out.push_str(&format!("&FCI NORB={},NELEC={},MS2={},\n", n, chem.n_electrons, ms2));
    out.push_str(&format!(" ORBSYM={}\n", vec!["1"; n].join(",")));
    out.push_str(" ISYM=1,\n&END\n");
    // unique (ij|kl) under the 8-fold symmetry: i>=j, k>=l, (i,j)>=(k,l)
    for i in 0..n {
        for j in 0..=i {
            for k in 0..=i {
                let lmax = if k == i { j } else { k };
                for l in 0..=lmax {
                    let v = chem.h2_get(i, j, k, l);
                    if v.abs() > 1e-16 {
                        out.push_str(&format!(
                            "{:24.16e} {} {} {} {}\n",
                            v,
                            i + 1,
                            j + 1,
                            k + 1,
                            l + 1
                        ));
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..=i {
            let v = chem.h1[(i, j)];
            if v.abs() > 1e-16 {
                out.push_str(&format!("{:24.16e} {} {} 0 0\n", v, i + 1, j + 1));
            }
        }
    }
    out.push_str(&format!("{:24.16e} 0 0 0 0\n", chem.e_nuc));
    out
}

pub fn read_fcidump(path: &Path) -> Result<IntegralSet> {
    from_fcidump_string(&std::fs::read_to_string(path)?)
}

pub fn from_fcidump_string(text: &str) -> Result<IntegralSet> {
    let mut norb: Option<usize> = None;
    let mut nelec: Option<usize> = None;
    let mut in_header = true;
    let mut records: Vec<(usize, f64, [usize; 4])> = Vec::new();

    for (ln0, raw) in text.lines().enumerate() {
        let ln = ln0 + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if in_header {
            let upper = line.to_uppercase();
            for key in ["NORB", "NELEC"] {
                if let Some(pos) = upper.find(key) {
                    let rest = &upper[pos + key.len()..];
                    let rest = rest.trim_start().strip_prefix('=').ok_or(Error::Parse {
                        line: ln,
                        msg: format!("{key} without '='"),
                    })?;
                    let num: String =
                        rest.chars().take_while(|c| c.is_ascii_digit()).collect();
                    let val: usize = num.parse().map_err(|e| Error::Parse {
                        line: ln,
                        msg: format!("bad {key}: {e}"),
                    })?;
                    if key == "NORB" {
                        norb = Some(val);
                    } else {
                        nelec = Some(val);
                    }
                }
            }
            if upper.contains("&END") || upper.contains('/') {
                in_header = false;
            }
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 5 {
            return Err(Error::Parse {
                line: ln,
                msg: format!("expected 'value i j k l', got {} fields", toks.len()),
            });
        }
        let value: f64 = toks[0].replace(['D', 'd'], "e").parse().map_err(|e| Error::Parse {
            line: ln,
            msg: format!("bad value: {e}"),
        })?;
        let mut idx = [0usize; 4];
        for (t, slot) in toks[1..].iter().zip(idx.iter_mut()) {
            *slot = t.parse().map_err(|e| Error::Parse {
                line: ln,
                msg: format!("bad index: {e}"),
            })?;
        }
        records.push((ln, value, idx));
    }

    let n = norb.ok_or(Error::Parse { line: 1, msg: "header missing NORB".into() })?;
    let n_electrons = nelec.ok_or(Error::Parse { line: 1, msg: "header missing NELEC".into() })?;

    let mut h1 = DMatrix::<f64>::zeros(n, n);
    let mut h2 = vec![0.0; n * n * n * n];
    let mut e_nuc = 0.0;
    let t2 = |p: usize, q: usize, r: usize, s: usize| ((p * n + q) * n + r) * n + s;
    for (ln, value, [i, j, k, l]) in records {
        let check = |v: usize| -> Result<()> {
            if v > n {
                Err(Error::Parse { line: ln, msg: format!("orbital index {v} out of range 1..={n}") })
            } else {
                Ok(())
            }
        };
        check(i)?;
        check(j)?;
        check(k)?;
        check(l)?;
        if i == 0 && j == 0 && k == 0 && l == 0 {
            e_nuc = value;
        } else if k == 0 && l == 0 {
            if i == 0 || j == 0 {
                return Err(Error::Parse { line: ln, msg: "one-electron record with a zero index".into() });
            }
            h1[(i - 1, j - 1)] = value;
            h1[(j - 1, i - 1)] = value;
        } else if i == 0 || j == 0 || k == 0 || l == 0 {
            return Err(Error::Parse { line: ln, msg: "two-electron record with a zero index".into() });
        } else {
            let (i, j, k, l) = (i - 1, j - 1, k - 1, l - 1);
            for (a, b, c, d) in [
                (i, j, k, l),
                (j, i, k, l),
                (i, j, l, k),
                (j, i, l, k),
                (k, l, i, j),
                (l, k, i, j),
                (k, l, j, i),
                (l, k, j, i),
            ] {
                h2[t2(a, b, c, d)] = value;
            }
        }
    }
    let chem = IntegralSet::new(n, n_electrons, h1, h2, e_nuc, TwoElectronConvention::Chemist, "fcidump")?;
    Ok(chem.with_convention(TwoElectronConvention::Physicist))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn core_energy_record() {
        let text = "&FCI NORB=1,NELEC=1,MS2=1,\n&END\n0.5 0 0 0 0\n";
        let ints = from_fcidump_string(text).unwrap();
        assert_eq!(ints.e_nuc, 0.5);
        assert_eq!(ints.n_spatial, 1);
        assert_eq!(ints.n_electrons, 1);
    }

    #[test]
    fn round_trip_identity() {
        let (ints, _) = crate::gto::compute_sto3g_integrals(
            &crate::geometry::MoleculeGeometry::new(vec![
                crate::geometry::Atom { element: "H".into(), charge: 1, position: [0.0; 3] },
                crate::geometry::Atom { element: "H".into(), charge: 1, position: [0.0, 0.0, 0.9] },
                crate::geometry::Atom { element: "H".into(), charge: 1, position: [0.0, 0.9, 0.0] },
            ])
            .unwrap(),
        )
        .unwrap();
        let phys = ints.with_convention(crate::integrals::TwoElectronConvention::Physicist);
        let text = to_fcidump_string(&phys);
        let back = from_fcidump_string(&text).unwrap();
        assert_eq!(back.n_spatial, phys.n_spatial);
        assert_eq!(back.n_electrons, phys.n_electrons);
        assert!((back.e_nuc - phys.e_nuc).abs() < 1e-12);
        for p in 0..3 {
            for q in 0..3 {
                assert!((back.h1[(p, q)] - phys.h1[(p, q)]).abs() < 1e-12);
                for r in 0..3 {
                    for s in 0..3 {
                        assert!(
                            (back.h2_get(p, q, r, s) - phys.h2_get(p, q, r, s)).abs() < 1e-12
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn malformed_inputs_report_lines() {
        let bad_header = "&FCI NELEC=2,\n&END\n1.0 1 1 1 1\n";
        assert!(matches!(from_fcidump_string(bad_header), Err(Error::Parse { .. })));
        let bad_index = "&FCI NORB=1,NELEC=1,\n&END\n1.0 2 1 1 1\n";
        match from_fcidump_string(bad_index) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        let bad_value = "&FCI NORB=1,NELEC=1,\n&END\nxyz 1 1 1 1\n";
        assert!(matches!(from_fcidump_string(bad_value), Err(Error::Parse { line: 3, .. })));
    }
}
