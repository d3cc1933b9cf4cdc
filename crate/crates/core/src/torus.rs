//! Flat tori `T_M = R²/MZ²`.

use crate::error::{Error, Result};

pub type Vec2 = nalgebra::Vector2<f64>;
pub type Mat2 = nalgebra::Matrix2<f64>;

/// Bases with `|det| <= SINGULAR_DET` are rejected.
pub const SINGULAR_DET: f64 = 1e-12;

/// A flat torus given by a nonsingular basis whose columns generate the lattice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlatTorus {
    basis: Mat2,
}

impl FlatTorus {
    pub fn new(basis: Mat2) -> Result<Self> {
        let det = basis.determinant();
        if !det.is_finite() || det.abs() <= SINGULAR_DET {
            return Err(Error::SingularTorus { det });
        }
        Ok(Self { basis })
    }

    pub fn from_rows(rows: [[f64; 2]; 2]) -> Result<Self> {
        Self::new(Mat2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1]))
    }

    /// The unit square torus.
    pub fn square() -> Self {
        Self {
            basis: Mat2::identity(),
        }
    }

    pub fn basis(&self) -> &Mat2 {
        &self.basis
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        let m = &self.basis;
        [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]]
    }

    pub fn det(&self) -> f64 {
        self.basis.determinant()
    }

    pub fn to_native(&self, reference: &Vec2) -> Vec2 {
        self.basis * reference
    }

    pub fn to_reference(&self, native: &Vec2) -> Vec2 {
        self.inverse() * native
    }

    pub fn inverse(&self) -> Mat2 {
        // Nonsingular by construction.
        self.basis.try_inverse().expect("nonsingular torus basis")
    }

    /// The torus with basis `outer · M`.
    pub fn transformed(&self, outer: &Mat2) -> Result<Self> {
        Self::new(outer * self.basis)
    }

    pub fn scaled(&self, sigma: f64) -> Result<Self> {
        Self::new(self.basis * sigma)
    }

    /// True if both bases generate the same lattice, i.e. `M⁻¹N` is an integer
    /// matrix with determinant ±1.
    pub fn same_lattice(&self, other: &FlatTorus, tol: f64) -> bool {
        unimodular_part(self, other, tol).is_some()
    }

    /// True if both bases agree entrywise within `tol`.
    pub fn approx_eq(&self, other: &FlatTorus, tol: f64) -> bool {
        (self.basis - other.basis).amax() <= tol
    }
}

/// Returns `M⁻¹N` rounded to integers when it is unimodular within `tol`.
pub fn unimodular_part(m: &FlatTorus, n: &FlatTorus, tol: f64) -> Option<[[i64; 2]; 2]> {
    let x = m.inverse() * n.basis;
    let mut out = [[0i64; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            let v = x[(r, c)];
            let k = v.round();
            if (v - k).abs() > tol {
                return None;
            }
            out[r][c] = k as i64;
        }
    }
    let det = out[0][0] * out[1][1] - out[0][1] * out[1][0];
    (det.abs() == 1).then_some(out)
}

/// Counterclockwise rotation by `angle` radians.
pub fn rotation(angle: f64) -> Mat2 {
    let (s, c) = angle.sin_cos();
    Mat2::new(c, -s, s, c)
}

/// Counterclockwise quarter turn `J = [[0,-1],[1,0]]`.
pub fn quarter_turn() -> Mat2 {
    Mat2::new(0.0, -1.0, 1.0, 0.0)
}

pub(crate) fn cross(a: &Vec2, b: &Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_is_identity() {
        assert_eq!(*FlatTorus::square().basis(), Mat2::identity());
    }

    #[test]
    fn rejects_singular_basis() {
        let err = FlatTorus::from_rows([[1.0, 2.0], [2.0, 4.0]]).unwrap_err();
        assert!(matches!(err, Error::SingularTorus { .. }));
        assert!(FlatTorus::from_rows([[1e-7, 0.0], [0.0, 1e-7]]).is_err());
        assert!(FlatTorus::from_rows([[1e-5, 0.0], [0.0, 1e-5]]).is_ok());
    }

    #[test]
    fn lattice_equivalence() {
        let m = FlatTorus::from_rows([[2.0, 1.0], [0.5, 3.0]]).unwrap();
        let shear = Mat2::new(1.0, 3.0, 0.0, 1.0);
        let n = FlatTorus::new(m.basis() * shear).unwrap();
        assert!(m.same_lattice(&n, 1e-9));
        let doubled = FlatTorus::new(m.basis() * Mat2::new(2.0, 0.0, 0.0, 1.0)).unwrap();
        assert!(!m.same_lattice(&doubled, 1e-9));
        let rotated = m.transformed(&rotation(0.3)).unwrap();
        assert!(!m.same_lattice(&rotated, 1e-9));
    }

    #[test]
    fn quarter_turn_is_counterclockwise() {
        let e1 = Vec2::new(1.0, 0.0);
        assert_eq!(quarter_turn() * e1, Vec2::new(0.0, 1.0));
        assert!((rotation(std::f64::consts::FRAC_PI_2) - quarter_turn()).amax() < 1e-15);
    }
}
