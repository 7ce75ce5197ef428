//! Input file formats.
//!
//! All inputs are YAML documents with a fixed small schema:
//!
//! * complex file: `vertices: n`, `edges: [[i,j], ...]`,
//!   `triangles: [[i,j,k], ...]` with strictly increasing zero-based
//!   vertex tuples;
//! * field file: `samples: [[a0,b0], [a1,b1], ...]`, one frame-coordinate
//!   pair per vertex of the accompanying complex;
//! * cycle file: `terms: [[u, v, c], ...]`, meaning `c` times the edge
//!   `(u, v)` traversed from `u` to `v`;
//! * lattice file: `columns: [[c0, c1, ...], ...]`, generator columns of
//!   length (number of first-homology generators) + 1.
//!
//! Unknown keys are rejected so that unsupported inputs (for example
//! three-dimensional simplices) fail loudly instead of being ignored.

use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Deserialize;

use crate::complex::{Chain, Cycle, SimplicialComplex};
use crate::field::{FramedField, ImageLattice, Tolerances};

use super::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    vertices: usize,
    #[serde(default)]
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    triangles: Vec<[usize; 3]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldFile {
    samples: Vec<[f64; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CycleFile {
    terms: Vec<(usize, usize, i64)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeFile {
    columns: Vec<Vec<i64>>,
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path, bytes: &[u8]) -> Result<T, CliError> {
    serde_yaml::from_slice(bytes).map_err(|err| CliError::Parse {
        path: path.to_path_buf(),
        message: err.to_string(),
    })
}

pub fn load_complex(path: &Path) -> Result<(Arc<SimplicialComplex>, Vec<u8>), CliError> {
    let bytes = read(path)?;
    let file: ComplexFile = parse(path, &bytes)?;
    let complex = SimplicialComplex::from_simplices(file.vertices, file.edges, file.triangles)
        .map_err(|report| CliError::InvalidComplex {
            path: path.to_path_buf(),
            report,
        })?;
    Ok((Arc::new(complex), bytes))
}

pub fn load_field(
    path: &Path,
    complex: &Arc<SimplicialComplex>,
    tolerances: Tolerances,
) -> Result<(FramedField, Vec<u8>), CliError> {
    let bytes = read(path)?;
    let file: FieldFile = parse(path, &bytes)?;
    let field = FramedField::with_tolerances(Arc::clone(complex), file.samples, tolerances)?;
    Ok((field, bytes))
}

pub fn load_cycle(
    path: &Path,
    complex: &Arc<SimplicialComplex>,
) -> Result<(Cycle, Vec<u8>), CliError> {
    let bytes = read(path)?;
    let file: CycleFile = parse(path, &bytes)?;
    let mut chain = Chain::zero(1);
    for &(u, v, c) in &file.terms {
        let (key, sign) = if u < v { ([u, v], 1) } else { ([v, u], -1) };
        let index = complex
            .edge_position(key)
            .ok_or(CliError::UnknownEdge { from: u, to: v })?;
        chain.add_term(index, BigInt::from(sign * c));
    }
    let cycle = Cycle::new(Arc::clone(complex), chain)?;
    Ok((cycle, bytes))
}

pub fn load_lattice(path: &Path, base_rank: usize) -> Result<(ImageLattice, Vec<u8>), CliError> {
    let bytes = read(path)?;
    let file: LatticeFile = parse(path, &bytes)?;
    let columns: Vec<Vec<BigInt>> = file
        .columns
        .iter()
        .map(|col| col.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let lattice = ImageLattice::from_columns(base_rank, &columns)?;
    Ok((lattice, bytes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn parses_the_documented_complex_format() {
        let f = write_temp("vertices: 3\nedges: [[0,1],[0,2],[1,2]]\ntriangles: [[0,1,2]]\n");
        let (complex, _) = load_complex(f.path()).unwrap();
        assert_eq!(complex.vertex_count(), 3);
        assert_eq!(complex.triangles().len(), 1);
    }

    #[test]
    fn rejects_unknown_keys_such_as_higher_simplices() {
        let f = write_temp("vertices: 4\nedges: []\ntetrahedra: [[0,1,2,3]]\n");
        match load_complex(f.path()) {
            Err(CliError::Parse { message, .. }) => {
                assert!(message.contains("tetrahedra"), "message: {message}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn complex_defects_carry_the_path() {
        let f = write_temp("vertices: 3\nedges: [[0,1],[0,2]]\ntriangles: [[0,1,2]]\n");
        assert!(matches!(
            load_complex(f.path()),
            Err(CliError::InvalidComplex { .. })
        ));
    }

    #[test]
    fn loads_fields_and_cycles_against_a_complex() {
        let fc = write_temp("vertices: 3\nedges: [[0,1],[0,2],[1,2]]\n");
        let (complex, _) = load_complex(fc.path()).unwrap();

        let ff = write_temp("samples: [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.5]]\n");
        let (field, _) = load_field(ff.path(), &complex, Tolerances::default()).unwrap();
        assert_eq!(field.samples().len(), 3);

        // 0 -> 1 -> 2 -> 0 traverses edge (0,2) backwards
        let fy = write_temp("terms: [[0, 1, 1], [1, 2, 1], [2, 0, 1]]\n");
        let (cycle, _) = load_cycle(fy.path(), &complex).unwrap();
        assert_eq!(cycle.chain().len(), 3);
        assert_eq!(
            cycle.chain().coefficient(complex.edge_position([0, 2]).unwrap()),
            BigInt::from(-1)
        );

        let bad = write_temp("terms: [[0, 1, 1]]\n");
        let err = load_cycle(bad.path(), &complex).unwrap_err();
        assert!(matches!(err, CliError::Complex(_)), "got {err:?}");
    }

    #[test]
    fn loads_lattices_with_length_checks() {
        let f = write_temp("columns: [[1, 2]]\n");
        let (lattice, _) = load_lattice(f.path(), 1).unwrap();
        assert_eq!(lattice.generator_count(), 1);
        assert!(load_lattice(f.path(), 2).is_err());
    }
}
