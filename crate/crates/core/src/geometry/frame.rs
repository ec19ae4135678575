use std::f64::consts::PI;

use nalgebra::Vector3;

use crate::error::{domain, Result};

/// Transverse polarization index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    /// Along the polar unit vector theta-hat.
    Theta,
    /// Along the azimuthal unit vector phi-hat.
    Phi,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::Theta, Polarization::Phi];

    pub fn index(self) -> usize {
        match self {
            Polarization::Theta => 0,
            Polarization::Phi => 1,
        }
    }
}

/// A point `(Omega, theta, phi, sigma)` of normalized momentum space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeCoordinate {
    pub omega: f64,
    pub theta: f64,
    pub phi: f64,
    pub sigma: Polarization,
}

impl ModeCoordinate {
    /// Normalized wavevector `Omega * kappa`.
    pub fn wavevector(&self) -> Result<Vector3<f64>> {
        Ok(polarization_frame(self.theta, self.phi)?.kappa * self.omega)
    }
}

/// Propagation direction with its two transverse polarization vectors.
///
/// `eps1 x eps2 = kappa`, so the triple `(eps1, eps2, kappa)` is right-handed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationFrame {
    pub kappa: Vector3<f64>,
    pub eps1: Vector3<f64>,
    pub eps2: Vector3<f64>,
}

impl PolarizationFrame {
    pub fn eps(&self, sigma: Polarization) -> Vector3<f64> {
        match sigma {
            Polarization::Theta => self.eps1,
            Polarization::Phi => self.eps2,
        }
    }

    /// Magnetic polarization vector `kappa x eps`.
    pub fn magnetic(&self, sigma: Polarization) -> Vector3<f64> {
        match sigma {
            Polarization::Theta => self.eps2,
            Polarization::Phi => -self.eps1,
        }
    }

    /// Rotate the transverse pair by `psi` about `kappa`.
    pub fn rotated(&self, psi: f64) -> PolarizationFrame {
        let (s, c) = psi.sin_cos();
        PolarizationFrame {
            kappa: self.kappa,
            eps1: self.eps1 * c + self.eps2 * s,
            eps2: -self.eps1 * s + self.eps2 * c,
        }
    }
}

/// Spherical unit vectors at `(theta, phi)`: `kappa = r-hat`, `eps1 = theta-hat`, `eps2 = phi-hat`.
pub fn polarization_frame(theta: f64, phi: f64) -> Result<PolarizationFrame> {
    if !(theta > 0.0 && theta < PI) {
        return domain(format!("theta must lie in (0, pi), got {theta}"));
    }
    if !(0.0..2.0 * PI).contains(&phi) {
        return domain(format!("phi must lie in [0, 2pi), got {phi}"));
    }
    Ok(frame_unchecked(theta.cos(), theta.sin(), phi))
}

pub(crate) fn frame_unchecked(cos_theta: f64, sin_theta: f64, phi: f64) -> PolarizationFrame {
    let (sp, cp) = phi.sin_cos();
    PolarizationFrame {
        kappa: Vector3::new(sin_theta * cp, sin_theta * sp, cos_theta),
        eps1: Vector3::new(cos_theta * cp, cos_theta * sp, -sin_theta),
        eps2: Vector3::new(-sp, cp, 0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Vector3<f64>, b: Vector3<f64>, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn equator_frame() {
        let f = polarization_frame(PI / 2.0, 0.0).unwrap();
        assert!(close(f.kappa, Vector3::new(1.0, 0.0, 0.0), 1e-15));
        assert!(close(f.eps1, Vector3::new(0.0, 0.0, -1.0), 1e-15));
        assert!(close(f.eps2, Vector3::new(0.0, 1.0, 0.0), 1e-15));
    }

    #[test]
    fn sixty_degree_frame() {
        let f = polarization_frame(PI / 3.0, 0.0).unwrap();
        assert!(close(f.kappa, Vector3::new(0.8660254037844386, 0.0, 0.5), 1e-15));
        assert!(close(f.eps1, Vector3::new(0.5, 0.0, -0.8660254037844386), 1e-15));
    }

    #[test]
    fn rejects_poles_and_bad_azimuth() {
        assert!(polarization_frame(0.0, 0.0).is_err());
        assert!(polarization_frame(PI, 0.0).is_err());
        assert!(polarization_frame(1.0, 2.0 * PI).is_err());
        assert!(polarization_frame(1.0, -0.1).is_err());
        assert!(polarization_frame(f64::NAN, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn right_handed_orthonormal(theta in 1e-6..(PI - 1e-6), phi in 0.0..(2.0 * PI)) {
            let f = polarization_frame(theta, phi).unwrap();
            prop_assert!((f.eps1.norm() - 1.0).abs() < 1e-12);
            prop_assert!((f.eps2.norm() - 1.0).abs() < 1e-12);
            prop_assert!(f.eps1.dot(&f.kappa).abs() < 1e-12);
            prop_assert!(f.eps2.dot(&f.kappa).abs() < 1e-12);
            prop_assert!(close(f.eps1.cross(&f.eps2), f.kappa, 1e-12));
            prop_assert!(close(f.kappa.cross(&f.eps1), f.eps2, 1e-12));
            prop_assert!(close(f.kappa.cross(&f.eps2), -f.eps1, 1e-12));
            for s in Polarization::BOTH {
                prop_assert!(close(f.kappa.cross(&f.eps(s)), f.magnetic(s), 1e-12));
            }
        }

        #[test]
        fn transverse_projection_is_basis_invariant(
            theta in 1e-3..(PI - 1e-3),
            phi in 0.0..(2.0 * PI),
            psi in 0.0..(2.0 * PI),
            p in prop::array::uniform3(-1.0f64..1.0),
        ) {
            let p = Vector3::from(p);
            prop_assume!(p.norm() > 1e-3);
            let p = p.normalize();
            let f = polarization_frame(theta, phi).unwrap();
            let g = f.rotated(psi);
            let sum = |fr: &PolarizationFrame| -> f64 {
                Polarization::BOTH.iter().map(|&s| p.dot(&fr.eps(s)).powi(2)).sum()
            };
            let expected = 1.0 - p.dot(&f.kappa).powi(2);
            prop_assert!((sum(&f) - expected).abs() < 1e-12);
            prop_assert!((sum(&g) - expected).abs() < 1e-12);
        }
    }
}
