//! Molecular geometries and the XYZ file format. Coordinates in ångström.

use crate::error::{Error, Result};
use std::path::Path;

/// 1 ångström in bohr.
pub const ANGSTROM_TO_BOHR: f64 = 1.8897259886;

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub element: String,
    pub charge: u32,
    /// Position in ångström.
    pub position: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeGeometry {
    pub atoms: Vec<Atom>,
    pub stretching_factor: f64,
}

fn charge_of_element(sym: &str) -> Option<u32> {
    const SYMBOLS: [&str; 18] = [
        "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne", "Na", "Mg", "Al", "Si", "P", "S",
        "Cl", "Ar",
    ];
    SYMBOLS.iter().position(|&s| s == sym).map(|i| i as u32 + 1)
}

impl MoleculeGeometry {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        let g = MoleculeGeometry { atoms, stretching_factor: 1.0 };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.stretching_factor <= 0.0 {
            return Err(Error::Geometry(format!(
                "stretching factor must be positive, got {}",
                self.stretching_factor
            )));
        }
        for i in 0..self.atoms.len() {
            for j in i + 1..self.atoms.len() {
                let d = dist(&self.atoms[i].position, &self.atoms[j].position);
                if d <= 0.0 {
                    return Err(Error::Geometry(format!("atoms {i} and {j} coincide")));
                }
            }
        }
        Ok(())
    }

    pub fn n_atoms(&self) -> usize {
        self.atoms.len()
    }

    /// Total nuclear charge (= electron count for neutral molecules).
    pub fn total_charge(&self) -> u32 {
        self.atoms.iter().map(|a| a.charge).sum()
    }

    pub fn all_hydrogen(&self) -> bool {
        self.atoms.iter().all(|a| a.charge == 1)
    }

    pub fn from_xyz_file(path: &Path) -> Result<Self> {
        Self::from_xyz(&std::fs::read_to_string(path)?)
    }

    /// Standard "count / comment / element x y z" layout.
    pub fn from_xyz(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, count_line) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 1, msg: "empty file".into() })?;
        let count: usize = count_line.trim().parse().map_err(|e| Error::Parse {
            line: 1,
            msg: format!("bad atom count: {e}"),
        })?;
        lines.next(); // comment
        let mut atoms = Vec::with_capacity(count);
        for (ln, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() < 4 {
                return Err(Error::Parse { line: ln + 1, msg: "expected: element x y z".into() });
            }
            let element = toks[0].to_string();
            let charge = charge_of_element(&element).ok_or_else(|| Error::Parse {
                line: ln + 1,
                msg: format!("unknown element {element}"),
            })?;
            let mut position = [0.0; 3];
            for (k, t) in toks[1..4].iter().enumerate() {
                position[k] = t.parse().map_err(|e| Error::Parse {
                    line: ln + 1,
                    msg: format!("bad coordinate: {e}"),
                })?;
            }
            atoms.push(Atom { element, charge, position });
            if atoms.len() == count {
                break;
            }
        }
        if atoms.len() != count {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header says {count} atoms, file has {}", atoms.len()),
            });
        }
        MoleculeGeometry::new(atoms)
    }

    pub fn to_xyz(&self, comment: &str) -> String {
        let mut s = format!("{}\n{}\n", self.atoms.len(), comment);
        for a in &self.atoms {
            s.push_str(&format!(
                "{} {:.10} {:.10} {:.10}\n",
                a.element, a.position[0], a.position[1], a.position[2]
            ));
        }
        s
    }
}

pub fn dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// Multiply every Cartesian coordinate by `x`.
pub fn apply_stretching(geometry: &MoleculeGeometry, x: f64) -> Result<MoleculeGeometry> {
    if x <= 0.0 {
        return Err(Error::Geometry(format!("stretching factor must be positive, got {x}")));
    }
    let atoms = geometry
        .atoms
        .iter()
        .map(|a| Atom {
            element: a.element.clone(),
            charge: a.charge,
            position: [a.position[0] * x, a.position[1] * x, a.position[2] * x],
        })
        .collect();
    Ok(MoleculeGeometry { atoms, stretching_factor: geometry.stretching_factor * x })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h_at(p: [f64; 3]) -> Atom {
        Atom { element: "H".into(), charge: 1, position: p }
    }

    #[test]
    fn stretching_scales_coordinates() {
        let g = MoleculeGeometry::new(vec![h_at([1.0, 0.0, 0.0]), h_at([0.0, 1.0, 0.0])]).unwrap();
        let s = apply_stretching(&g, 2.0).unwrap();
        assert_eq!(s.atoms[0].position, [2.0, 0.0, 0.0]);
        assert_eq!(s.atoms[0].element, "H");
        let id = apply_stretching(&g, 1.0).unwrap();
        assert_eq!(id.atoms, g.atoms);
    }

    #[test]
    fn stretching_tree_row() {
        // second atom of the 10-H tree at x = 1.2
        let g = MoleculeGeometry::new(vec![h_at([0.0, 0.0, 0.0]), h_at([-1.732051, 0.0, -1.0])])
            .unwrap();
        let s = apply_stretching(&g, 1.2).unwrap();
        let p = s.atoms[1].position;
        assert!((p[0] - -2.0784612).abs() < 1e-12);
        assert!((p[1] - 0.0).abs() < 1e-12);
        assert!((p[2] - -1.2).abs() < 1e-12);
    }

    #[test]
    fn nonpositive_stretch_rejected() {
        let g = MoleculeGeometry::new(vec![h_at([0.0; 3])]).unwrap();
        assert!(apply_stretching(&g, 0.0).is_err());
        assert!(apply_stretching(&g, -1.0).is_err());
    }

    #[test]
    fn xyz_round_trip() {
        let g = MoleculeGeometry::new(vec![
            h_at([0.0, 0.0, 0.0]),
            h_at([0.0, 0.0, 0.7414]),
        ])
        .unwrap();
        let text = g.to_xyz("h2");
        let g2 = MoleculeGeometry::from_xyz(&text).unwrap();
        assert_eq!(g.atoms.len(), g2.atoms.len());
        assert!((g2.atoms[1].position[2] - 0.7414).abs() < 1e-12);
    }

    #[test]
    fn coincident_atoms_rejected() {
        assert!(MoleculeGeometry::new(vec![h_at([0.0; 3]), h_at([0.0; 3])]).is_err());
    }
}
