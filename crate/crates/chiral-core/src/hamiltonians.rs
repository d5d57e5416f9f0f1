//! Scalar functions of the chiral oscillator: Lagrangian, energy, the
//! Hamiltonians of all four formulations, and the Casimirs, each with a
//! hand-coded analytic gradient. Everything here is polynomial of degree
//! at most two, so the gradients are exact; finite differences appear
//! only as a cross-check in tests and in the verification suite.

use alloc::borrow::Cow;
use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::params::Params;
use crate::state::{DarbouxState, FullState, Jet3, ReducedState};
use crate::vec2::Vec2;

type ValueFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;
type GradientFn = Box<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// A named scalar function on a flattened coordinate chart, bundled with
/// its analytic gradient so bracket evaluations carry no finite-difference
/// noise floor.
pub struct ScalarField {
    pub name: Cow<'static, str>,
    pub dim: usize,
    value: ValueFn,
    gradient: GradientFn,
}

impl ScalarField {
    pub fn new(
        name: impl Into<Cow<'static, str>>,
        dim: usize,
        value: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        gradient: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            dim,
            value: Box::new(value),
            gradient: Box::new(gradient),
        }
    }

    pub fn value(&self, z: &[f64]) -> Result<f64> {
        self.check_dim(z)?;
        Ok((self.value)(z))
    }

    pub fn gradient(&self, z: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(z)?;
        Ok((self.gradient)(z))
    }

    /// Central finite differences of the value, step `1e-6 * max(1, |z_i|)`
    /// per coordinate.
    pub fn fd_gradient(&self, z: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(z)?;
        let mut zp = z.to_vec();
        let mut zm = z.to_vec();
        let mut g = Vec::with_capacity(z.len());
        for i in 0..z.len() {
            let h = 1e-6 * crate::math::abs(z[i]).max(1.0);
            zp[i] = z[i] + h;
            zm[i] = z[i] - h;
            g.push(((self.value)(&zp) - (self.value)(&zm)) / (2.0 * h));
            zp[i] = z[i];
            zm[i] = z[i];
        }
        Ok(g)
    }

    fn check_dim(&self, z: &[f64]) -> Result<()> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: z.len(),
            });
        }
        Ok(())
    }
}

/// Chiral Lagrangian `-(lambda/2)(xdot*yddot - ydot*xddot) + (m/2)|xdot|^2`.
pub fn lagrangian(vel: Vec2, acc: Vec2, params: &Params) -> f64 {
    -0.5 * params.lambda * vel.cross(acc) + 0.5 * params.mass * vel.norm_sq()
}

/// Energy of the second-order Lagrangian,
/// `-lambda*(xdot*yddot - ydot*xddot) + (m/2)|xdot|^2`. Coincides with
/// the canonical Hamiltonian pulled back through the Legendre lift.
pub fn energy(vel: Vec2, acc: Vec2, params: &Params) -> f64 {
    -params.lambda * vel.cross(acc) + 0.5 * params.mass * vel.norm_sq()
}

/// Euler-Lagrange residual `(lambda*y''' - m*x'', -lambda*x''' - m*y'')`
/// of a third jet; zero exactly on solutions.
pub fn el_residual(jet: &Jet3, params: &Params) -> Vec2 {
    Vec2::new(
        params.lambda * jet.jerk.y - params.mass * jet.acc.x,
        -params.lambda * jet.jerk.x - params.mass * jet.acc.y,
    )
}

/// Ostrogradskii momenta of a second jet:
/// `p0 = (-lambda*yddot + m*xdot, lambda*xddot + m*ydot)`,
/// `p1 = (lambda*ydot/2, -lambda*xdot/2)`.
pub fn ostrogradskii_momenta(vel: Vec2, acc: Vec2, params: &Params) -> (Vec2, Vec2) {
    let p0 = Vec2::new(
        -params.lambda * acc.y + params.mass * vel.x,
        params.lambda * acc.x + params.mass * vel.y,
    );
    let p1 = Vec2::new(0.5 * params.lambda * vel.y, -0.5 * params.lambda * vel.x);
    (p0, p1)
}

/// Legendre lift of a second jet into the Ostrogradskii phase space.
/// Lands on the constraint surface by construction.
pub fn legendre_lift(pos: Vec2, vel: Vec2, acc: Vec2, params: &Params) -> FullState {
    let (p0, p1) = ostrogradskii_momenta(vel, acc, params);
    FullState::new(pos, vel, p0, p1)
}

/// Canonical Hamiltonian `H^C = xdot . p0 - (m/2)|xdot|^2`.
pub fn h_canonical(z: &FullState, params: &Params) -> f64 {
    z.vel.dot(z.p0) - 0.5 * params.mass * z.vel.norm_sq()
}

pub fn grad_h_canonical(z: &FullState, params: &Params) -> [f64; 8] {
    let m = params.mass;
    [
        0.0,
        0.0,
        z.p0.x - m * z.vel.x,
        z.p0.y - m * z.vel.y,
        z.vel.x,
        z.vel.y,
        0.0,
        0.0,
    ]
}

/// Total Hamiltonian from the constraint analysis,
/// `H^D = (1/2) xdot . p0 + (m/lambda) xdot x p1 - (1/lambda) p0 x p1`.
pub fn h_dirac(z: &FullState, params: &Params) -> f64 {
    0.5 * z.vel.dot(z.p0) + (params.mass / params.lambda) * z.vel.cross(z.p1)
        - z.p0.cross(z.p1) / params.lambda
}

pub fn grad_h_dirac(z: &FullState, params: &Params) -> [f64; 8] {
    let (l, m) = (params.lambda, params.mass);
    [
        0.0,
        0.0,
        0.5 * z.p0.x + (m / l) * z.p1.y,
        0.5 * z.p0.y - (m / l) * z.p1.x,
        0.5 * z.vel.x - z.p1.y / l,
        0.5 * z.vel.y + z.p1.x / l,
        -(m / l) * z.vel.y + z.p0.y / l,
        (m / l) * z.vel.x - z.p0.x / l,
    ]
}

/// Hamiltonian on the final constraint submanifold in Darboux coordinates,
/// `H_f = (1/sqrt(lambda))(q p0y - p p0x) - (m/(2 lambda))(q^2 + p^2)`.
/// Defined only for positive chirality coefficient.
pub fn h_final(w: &DarbouxState, params: &Params) -> Result<f64> {
    let s = params.sqrt_lambda()?;
    Ok((w.q * w.p0.y - w.p * w.p0.x) / s
        - 0.5 * params.mass / params.lambda * (w.q * w.q + w.p * w.p))
}

pub fn grad_h_final(w: &DarbouxState, params: &Params) -> Result<[f64; 6]> {
    let s = params.sqrt_lambda()?;
    let ml = params.mass / params.lambda;
    Ok([
        0.0,
        0.0,
        w.p0.y / s - ml * w.q,
        -w.p / s,
        w.q / s,
        -w.p0.x / s - ml * w.p,
    ])
}

/// Reduced Hamiltonian `(m/lambda) J_R + J_X` on the dual oscillator
/// algebra. The same expression serves both invariant triples.
pub fn h_reduced(s: &ReducedState, params: &Params) -> f64 {
    (params.mass / params.lambda) * s.jr + s.jx
}

/// Reduced total Hamiltonian composed with the canonical-bracket
/// invariant triple.
pub fn h_reduced_dirac(s: &ReducedState, params: &Params) -> f64 {
    h_reduced(s, params)
}

/// Reduced canonical Hamiltonian composed with the Dirac-bracket
/// invariant triple.
pub fn h_reduced_canonical(s: &ReducedState, params: &Params) -> f64 {
    h_reduced(s, params)
}

/// Casimir of `se(2)*`: squared length of the linear momenta.
pub fn casimir_lsq(p0: Vec2) -> f64 {
    p0.norm_sq()
}

/// Conserved Casimir of the three-dimensional reduced flow,
/// `(J_X - l^2/m)^2 + J_Y^2`; its level sets are concentric cylinders
/// around the axis `J_X = l^2/m, J_Y = 0`.
pub fn casimir_cylinder(s: &ReducedState, params: &Params) -> f64 {
    let dx = s.jx - s.lsq / params.mass;
    dx * dx + s.jy * s.jy
}

/// The non-conserved variant `J_X^2 - 2 m l^2 J_X + J_Y^2` kept as a
/// documented negative control: its time derivative along the reduced
/// flow is `(2 l^2 / lambda) J_Y (m^2 - 1)`, nonzero away from unit mass.
pub fn casimir_cylinder_noncons(s: &ReducedState, params: &Params) -> f64 {
    s.jx * s.jx - 2.0 * params.mass * s.lsq * s.jx + s.jy * s.jy
}

/// Paraboloid function `J_X^2 + J_Y^2 + (2 l^2 / lambda) J_R`; vanishes
/// identically on the image of the Dirac invariant triple and is a
/// Casimir of the reduced structure at fixed `l^2`.
pub fn paraboloid(s: &ReducedState, params: &Params) -> f64 {
    s.jx * s.jx + s.jy * s.jy + 2.0 * s.lsq / params.lambda * s.jr
}

/// Hamiltonian restricted to a coadjoint orbit,
/// `H_O = -(m/(2 l^2))(J_X^2 + J_Y^2) + J_X`. Needs `l^2 > 0`.
pub fn h_orbit(jx: f64, jy: f64, lsq: f64, params: &Params) -> Result<f64> {
    if lsq <= 0.0 {
        return Err(Error::ZeroMomentum { lsq });
    }
    Ok(-0.5 * params.mass / lsq * (jx * jx + jy * jy) + jx)
}

// Field constructors used by the bracket machinery and the verification
// suite. Each wraps the typed function above on its flattened chart.

pub fn h_canonical_field(params: Params) -> ScalarField {
    ScalarField::new(
        "h_canonical",
        8,
        move |z| h_canonical(&full(z), &params),
        move |z| grad_h_canonical(&full(z), &params).to_vec(),
    )
}

pub fn h_dirac_field(params: Params) -> ScalarField {
    ScalarField::new(
        "h_dirac",
        8,
        move |z| h_dirac(&full(z), &params),
        move |z| grad_h_dirac(&full(z), &params).to_vec(),
    )
}

pub fn h_final_field(params: Params) -> Result<ScalarField> {
    params.sqrt_lambda()?;
    Ok(ScalarField::new(
        "h_final",
        6,
        move |w| h_final(&darboux(w), &params).expect("lambda validated"),
        move |w| {
            grad_h_final(&darboux(w), &params)
                .expect("lambda validated")
                .to_vec()
        },
    ))
}

pub fn h_reduced_field(params: Params) -> ScalarField {
    let (l, m) = (params.lambda, params.mass);
    ScalarField::new(
        "h_reduced",
        4,
        move |s| (m / l) * s[0] + s[1],
        move |_| alloc::vec![m / l, 1.0, 0.0, 0.0],
    )
}

/// `l^2` as a field on `se(2)*` in the order `(mu, p0x, p0y)`.
pub fn lsq_field_se2() -> ScalarField {
    ScalarField::new(
        "lsq_se2",
        3,
        |v| v[1] * v[1] + v[2] * v[2],
        |v| alloc::vec![0.0, 2.0 * v[1], 2.0 * v[2]],
    )
}

/// `l^2` as a field on the dual oscillator algebra (a coordinate there).
pub fn lsq_field_osc() -> ScalarField {
    ScalarField::new("lsq_osc", 4, |v| v[3], |_| alloc::vec![0.0, 0.0, 0.0, 1.0])
}

/// `l^2 = |p0|^2` as a field on the full phase space.
pub fn lsq_field_full() -> ScalarField {
    ScalarField::new(
        "lsq_full",
        8,
        |z| z[4] * z[4] + z[5] * z[5],
        |z| alloc::vec![0.0, 0.0, 0.0, 0.0, 2.0 * z[4], 2.0 * z[5], 0.0, 0.0],
    )
}

/// Paraboloid function on the 3-dimensional reduced block at frozen `l^2`.
pub fn paraboloid_field_3(params: Params, lsq: f64) -> ScalarField {
    let l = params.lambda;
    ScalarField::new(
        "paraboloid",
        3,
        move |v| v[1] * v[1] + v[2] * v[2] + 2.0 * lsq / l * v[0],
        move |v| alloc::vec![2.0 * lsq / l, 2.0 * v[1], 2.0 * v[2]],
    )
}

/// Cylinder Casimir on the 3-dimensional reduced block at frozen `l^2`.
pub fn cylinder_field_3(params: Params, lsq: f64) -> ScalarField {
    let m = params.mass;
    ScalarField::new(
        "cylinder",
        3,
        move |v| {
            let dx = v[1] - lsq / m;
            dx * dx + v[2] * v[2]
        },
        move |v| alloc::vec![0.0, 2.0 * (v[1] - lsq / m), 2.0 * v[2]],
    )
}

/// The printed (non-conserved) cylinder variant on the 3-dimensional block.
pub fn cylinder_noncons_field_3(params: Params, lsq: f64) -> ScalarField {
    let m = params.mass;
    ScalarField::new(
        "cylinder_noncons",
        3,
        move |v| v[1] * v[1] - 2.0 * m * lsq * v[1] + v[2] * v[2],
        move |v| alloc::vec![0.0, 2.0 * v[1] - 2.0 * m * lsq, 2.0 * v[2]],
    )
}

/// Reduced Hamiltonian on the 3-dimensional block.
pub fn h_reduced_field_3(params: Params) -> ScalarField {
    let (l, m) = (params.lambda, params.mass);
    ScalarField::new(
        "h_reduced_3",
        4 - 1,
        move |v| (m / l) * v[0] + v[1],
        move |_| alloc::vec![m / l, 1.0, 0.0],
    )
}

pub(crate) fn full(z: &[f64]) -> FullState {
    let mut a = [0.0; 8];
    a.copy_from_slice(z);
    FullState::unflatten(&a)
}

pub(crate) fn darboux(w: &[f64]) -> DarbouxState {
    let mut a = [0.0; 6];
    a.copy_from_slice(w);
    DarbouxState::unflatten(&a, Vec2::ZERO)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p(lambda: f64, mass: f64) -> Params {
        Params::new(lambda, mass).unwrap()
    }

    #[test]
    fn lagrangian_kinetic_only() {
        let v = lagrangian(Vec2::new(1.0, 0.0), Vec2::ZERO, &p(1.0, 1.0));
        assert_eq!(v, 0.5);
    }

    #[test]
    fn lagrangian_direct_substitution() {
        let v = lagrangian(Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0), &p(2.0, 2.0));
        assert_eq!(v, 0.0);
    }

    #[test]
    fn lagrangian_zero_jet() {
        assert_eq!(lagrangian(Vec2::ZERO, Vec2::ZERO, &p(1.0, 1.0)), 0.0);
    }

    #[test]
    fn el_residual_free_motion() {
        let jet = Jet3 {
            vel: Vec2::new(1.0, 0.0),
            ..Default::default()
        };
        assert_eq!(el_residual(&jet, &p(1.0, 1.0)), Vec2::ZERO);
    }

    #[test]
    fn el_residual_direct_substitution() {
        let jet = Jet3 {
            acc: Vec2::new(1.0, 0.0),
            ..Default::default()
        };
        assert_eq!(el_residual(&jet, &p(1.0, 1.0)), Vec2::new(-1.0, 0.0));
    }

    #[test]
    fn h_canonical_direct() {
        let z = FullState {
            vel: Vec2::new(1.0, 0.0),
            p0: Vec2::new(1.0, 0.0),
            ..Default::default()
        };
        assert_eq!(h_canonical(&z, &p(1.0, 1.0)), 0.5);
        assert_eq!(h_canonical(&FullState::default(), &p(1.0, 1.0)), 0.0);
    }

    #[test]
    fn h_canonical_ignores_pos_and_p1() {
        let z = FullState {
            vel: Vec2::new(1.0, 2.0),
            p0: Vec2::new(0.3, -0.4),
            ..Default::default()
        };
        let mut z2 = z;
        z2.pos = Vec2::new(9.0, -3.0);
        z2.p1 = Vec2::new(4.0, 4.0);
        let pr = p(1.5, 0.7);
        assert_eq!(h_canonical(&z, &pr), h_canonical(&z2, &pr));
    }

    #[test]
    fn h_dirac_direct() {
        let z = FullState {
            vel: Vec2::new(1.0, 0.0),
            p1: Vec2::new(0.0, 1.0),
            ..Default::default()
        };
        assert_eq!(h_dirac(&z, &p(1.0, 1.0)), 1.0);
        assert_eq!(h_dirac(&FullState::default(), &p(1.0, 1.0)), 0.0);
    }

    #[test]
    fn h_final_direct() {
        let w = DarbouxState {
            q: 1.0,
            p0: Vec2::new(0.0, 1.0),
            ..Default::default()
        };
        assert_eq!(h_final(&w, &p(1.0, 1.0)).unwrap(), 0.5);
        assert_eq!(
            h_final(&DarbouxState::default(), &p(1.0, 1.0)).unwrap(),
            0.0
        );
        assert!(h_final(&w, &p(-1.0, 1.0)).is_err());
    }

    #[test]
    fn h_reduced_direct() {
        let s = ReducedState::new(1.0, 2.0, 0.0, 1.0);
        assert_eq!(h_reduced_dirac(&s, &p(1.0, 1.0)), 3.0);
        assert_eq!(
            h_reduced_canonical(&ReducedState::new(-0.5, 0.0, 3.0, 1.0), &p(1.0, 1.0)),
            -0.5
        );
        assert_eq!(
            h_reduced(&ReducedState::default(), &p(1.0, 1.0)),
            0.0
        );
    }

    #[test]
    fn casimir_values() {
        assert_eq!(casimir_lsq(Vec2::new(3.0, 4.0)), 25.0);
        assert_eq!(casimir_lsq(Vec2::ZERO), 0.0);
        let s = ReducedState::new(0.0, 2.0, 0.0, 2.0);
        assert_eq!(casimir_cylinder(&s, &p(1.0, 1.0)), 0.0);
    }

    #[test]
    fn h_orbit_values() {
        let pr = p(1.0, 1.0);
        assert_eq!(h_orbit(0.0, 0.0, 1.0, &pr).unwrap(), 0.0);
        assert_eq!(h_orbit(1.0, 0.0, 1.0, &pr).unwrap(), 0.5);
        assert!(matches!(
            h_orbit(1.0, 0.0, 0.0, &pr),
            Err(Error::ZeroMomentum { .. })
        ));
    }

    #[test]
    fn energy_is_h_canonical_through_legendre_lift() {
        let pr = p(1.7, 0.6);
        let vel = Vec2::new(0.4, -1.1);
        let acc = Vec2::new(-0.2, 0.9);
        let z = legendre_lift(Vec2::new(1.0, 2.0), vel, acc, &pr);
        assert_abs_diff_eq!(
            energy(vel, acc, &pr),
            h_canonical(&z, &pr),
            epsilon = 1e-14
        );
    }

    #[test]
    fn dirac_equals_canonical_on_constraint_surface() {
        let pr = p(1.3, 0.8);
        let z = FullState {
            pos: Vec2::new(0.2, -0.7),
            vel: Vec2::new(1.4, 0.3),
            p0: Vec2::new(-0.6, 1.1),
            p1: Vec2::new(9.0, 9.0),
        }
        .onto_constraint_surface(pr.lambda);
        assert_abs_diff_eq!(h_dirac(&z, &pr), h_canonical(&z, &pr), epsilon = 1e-14);
    }
}
