//! Unitaries whose first-row and last-row entries are all nonzero, written
//! U_FL(n). The nonzero rows drive the diagonal-collapse step of the grid
//! family's indistinguishability proof, so membership is validated up front.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numerics::{is_unitary, ComplexMatrix, DEFAULT_TOL};

/// Absolute modulus floor below which a first/last-row entry counts as zero.
/// Certification soundness degrades as entries approach 0, so the floor is
/// kept visible rather than at machine precision.
pub const UFL_FLOOR: f64 = 1e-6;

/// True iff all first-row and last-row entries of a unitary have modulus
/// above the floor. Non-unitary input is an error, not `false`.
pub fn ufl_check(u: &ComplexMatrix) -> Result<bool> {
    ufl_check_with(u, DEFAULT_TOL, UFL_FLOOR)
}

pub fn ufl_check_with(u: &ComplexMatrix, tol: f64, floor: f64) -> Result<bool> {
    if !is_unitary(u, tol)? {
        return Err(Error::Input("U_FL membership test on a non-unitary matrix".into()));
    }
    let n = u.rows();
    let ok = (0..n).all(|k| u.get(0, k).norm() > floor && u.get(n - 1, k).norm() > floor);
    Ok(ok)
}

/// Validated member of U_FL(n).
#[derive(Debug, Clone, PartialEq)]
pub struct UflUnitary {
    n: usize,
    matrix: ComplexMatrix,
}

impl UflUnitary {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(matrix, DEFAULT_TOL, UFL_FLOOR)
    }

    pub fn with_tolerances(matrix: ComplexMatrix, tol: f64, floor: f64) -> Result<Self> {
        if matrix.rows() < 2 {
            return Err(Error::Domain("U_FL members have dimension at least 2".into()));
        }
        if !ufl_check_with(&matrix, tol, floor)? {
            return Err(Error::Input(
                "matrix has a first- or last-row entry below the modulus floor".into(),
            ));
        }
        Ok(Self { n: matrix.rows(), matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// The 2x2 Hadamard matrix.
pub fn hadamard2() -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_rows(&[
        vec![Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
        vec![Complex64::new(s, 0.0), Complex64::new(-s, 0.0)],
    ])
    .expect("hadamard")
}

/// n x n discrete Fourier matrix, entries `omega^{jk} / sqrt(n)`; every entry
/// has modulus `1/sqrt(n)`, so it is in U_FL(n) for any n.
pub fn fourier(n: usize) -> ComplexMatrix {
    let scale = 1.0 / (n as f64).sqrt();
    let mut m = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            let angle = 2.0 * std::f64::consts::PI * ((j * k) % n) as f64 / n as f64;
            m.set(j, k, Complex64::from_polar(scale, angle));
        }
    }
    m
}

/// Haar-style random unitary: modified Gram-Schmidt on a seeded complex
/// Gaussian matrix, resampled until the U_FL predicate passes. Deterministic
/// for a fixed seed.
pub fn random_ufl(n: usize, seed: u64) -> Result<UflUnitary> {
    if n < 2 {
        return Err(Error::Domain("U_FL members have dimension at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let m = random_unitary(n, &mut rng);
        if ufl_check(&m)? {
            return UflUnitary::new(m);
        }
    }
    Err(Error::Internal(format!("U_FL rejection sampling failed after 1000 draws (n={n})")))
}

fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    // Columns of a complex Gaussian matrix, orthonormalized in order.
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| (0..n).map(|_| Complex64::new(gaussian(rng), gaussian(rng))).collect())
        .collect();
    for j in 0..n {
        for i in 0..j {
            let prev = cols[i].clone();
            let proj: Complex64 = prev.iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum();
            for (cj, pi) in cols[j].iter_mut().zip(&prev) {
                *cj -= proj * pi;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for cj in cols[j].iter_mut() {
            *cj /= norm;
        }
    }
    let mut m = ComplexMatrix::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            m.set(i, j, z);
        }
    }
    m
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller transform of two uniform draws.
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Where a builder gets its unitaries from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitarySource {
    /// The 2x2 Hadamard matrix; only valid when the required size is 2.
    Hadamard,
    /// Discrete Fourier matrix of the required size.
    Fourier,
    /// Seeded Haar-style random U_FL member.
    Random(u64),
}

impl UnitarySource {
    /// Parse `hadamard`, `fourier`, or `random:<seed>`.
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "hadamard" => Ok(Self::Hadamard),
            "fourier" => Ok(Self::Fourier),
            other => {
                if let Some(seed) = other.strip_prefix("random:") {
                    let seed: u64 = seed
                        .parse()
                        .map_err(|_| Error::Input(format!("bad random seed in unitary source '{other}'")))?;
                    Ok(Self::Random(seed))
                } else {
                    Err(Error::Input(format!(
                        "unknown unitary source '{other}' (expected hadamard, fourier, or random:<seed>)"
                    )))
                }
            }
        }
    }

    /// Instantiate a U_FL(n) member; `salt` keeps distinct roles (X, Y, Z)
    /// of one build on distinct random streams.
    pub fn instantiate(&self, n: usize, salt: u64) -> Result<UflUnitary> {
        match *self {
            Self::Hadamard => {
                if n != 2 {
                    return Err(Error::Input(format!(
                        "hadamard source only provides U_FL(2), requested size {n}"
                    )));
                }
                UflUnitary::new(hadamard2())
            }
            Self::Fourier => UflUnitary::new(fourier(n)),
            Self::Random(seed) => {
                random_ufl(n, seed.wrapping_add(salt.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_is_ufl() {
        assert!(ufl_check(&hadamard2()).unwrap());
    }

    #[test]
    fn identity_is_not_ufl() {
        assert!(!ufl_check(&ComplexMatrix::identity(2)).unwrap());
    }

    #[test]
    fn fourier3_is_ufl() {
        let f = fourier(3);
        assert!(ufl_check(&f).unwrap());
        for k in 0..3 {
            assert!((f.get(0, k).norm() - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn ufl_check_rejects_non_unitary() {
        let m = ComplexMatrix::from_rows(&[
            vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(ufl_check(&m), Err(Error::Input(_))));
    }

    #[test]
    fn random_ufl_is_deterministic() {
        let a = random_ufl(4, 7).unwrap();
        let b = random_ufl(4, 7).unwrap();
        assert_eq!(a.matrix(), b.matrix());
    }

    #[test]
    fn random_ufl_postconditions() {
        for seed in 0..5 {
            for n in 2..=5 {
                let u = random_ufl(n, seed).unwrap();
                assert!(is_unitary(u.matrix(), 1e-9).unwrap());
                assert!(ufl_check(u.matrix()).unwrap());
            }
        }
    }

    #[test]
    fn random_ufl2_rows_nonzero() {
        let u = random_ufl(2, 123).unwrap();
        for k in 0..2 {
            assert!(u.matrix().get(0, k).norm() > 1e-6);
            assert!(u.matrix().get(1, k).norm() > 1e-6);
        }
    }

    #[test]
    fn source_parsing() {
        assert_eq!(UnitarySource::parse("hadamard").unwrap(), UnitarySource::Hadamard);
        assert_eq!(UnitarySource::parse("fourier").unwrap(), UnitarySource::Fourier);
        assert_eq!(UnitarySource::parse("random:42").unwrap(), UnitarySource::Random(42));
        assert!(UnitarySource::parse("haar").is_err());
        assert!(UnitarySource::parse("random:x").is_err());
    }

    #[test]
    fn hadamard_source_wrong_size() {
        assert!(UnitarySource::Hadamard.instantiate(3, 0).is_err());
    }
}
