//! Hamiltonian vector fields `zdot = P grad H` for each formulation,
//! fixed-step integrators, the closed-form reduced and configuration
//! solutions, and reconstruction of base curves from reduced trajectories.

use alloc::string::String;
use alloc::vec::Vec;

use crate::brackets::{
    canonical_bracket, dirac_bracket_closed_form, final_bracket, osc_structure, FinalChart,
    PoissonStructure,
};
use crate::error::{Error, Result};
use crate::hamiltonians::{
    self, h_canonical_field, h_dirac_field, h_final_field, h_reduced_field, ScalarField,
};
use crate::math;
use crate::params::Params;
use crate::state::{
    FullState, Jet3, ReducedState, DARBOUX_COORDS, FULL_COORDS, REDUCED_COORDS,
};
use crate::symmetry::{invariants_canonical, invariants_dirac, momentum_map_full};
use crate::vec2::Vec2;

/// Which Hamiltonian structure drives the flow. Each variant binds one
/// Poisson structure and one Hamiltonian of matching dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formulation {
    /// Canonical bracket with the total (Dirac) Hamiltonian on the
    /// 8-dimensional Ostrogradskii phase space.
    CanonicalBracketDiracH,
    /// Dirac bracket with the canonical Hamiltonian, same space.
    DiracBracketCanonicalH,
    /// Canonical 6-dimensional chart on the final constraint
    /// submanifold in Darboux coordinates.
    DarbouxCanonicalH,
    /// Lie-Poisson flow on the dual oscillator algebra.
    ReducedLiePoisson,
}

impl Formulation {
    pub fn dim(&self) -> usize {
        match self {
            Formulation::CanonicalBracketDiracH | Formulation::DiracBracketCanonicalH => 8,
            Formulation::DarbouxCanonicalH => 6,
            Formulation::ReducedLiePoisson => 4,
        }
    }

    pub fn coord_names(&self) -> &'static [&'static str] {
        match self {
            Formulation::CanonicalBracketDiracH | Formulation::DiracBracketCanonicalH => {
                &FULL_COORDS
            }
            Formulation::DarbouxCanonicalH => &DARBOUX_COORDS,
            Formulation::ReducedLiePoisson => &REDUCED_COORDS,
        }
    }

    /// The bound (structure, Hamiltonian) pair.
    pub fn structure_and_hamiltonian(
        &self,
        params: &Params,
    ) -> Result<(PoissonStructure, ScalarField)> {
        Ok(match self {
            Formulation::CanonicalBracketDiracH => (canonical_bracket(), h_dirac_field(*params)),
            Formulation::DiracBracketCanonicalH => {
                (dirac_bracket_closed_form(params), h_canonical_field(*params))
            }
            Formulation::DarbouxCanonicalH => (
                final_bracket(params, FinalChart::Darboux),
                h_final_field(*params)?,
            ),
            Formulation::ReducedLiePoisson => (osc_structure(*params), h_reduced_field(*params)),
        })
    }
}

/// Fixed-step integration method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Rk4,
    /// Implicit midpoint by fixed-point iteration (tolerance 1e-13,
    /// at most 50 sweeps). On the constant-matrix charts this is a
    /// Poisson map and conserves quadratic invariants of the flow.
    ImplicitMidpoint,
}

/// A uniformly sampled solution curve.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub formulation: Formulation,
    pub params: Params,
}

impl Trajectory {
    pub fn dt(&self) -> f64 {
        if self.times.len() < 2 {
            return 0.0;
        }
        self.times[1] - self.times[0]
    }
}

/// A reconstructed configuration-space curve with its velocities.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigCurve {
    pub times: Vec<f64>,
    pub positions: Vec<Vec2>,
    pub velocities: Vec<Vec2>,
}

/// Right-hand side `P(state) grad H(state)` of the chosen formulation.
pub fn rhs(form: Formulation, state: &[f64], params: &Params) -> Result<Vec<f64>> {
    if state.len() != form.dim() {
        return Err(Error::DimensionMismatch {
            expected: form.dim(),
            got: state.len(),
        });
    }
    let (p, h) = form.structure_and_hamiltonian(params)?;
    Ok(p.matrix(state)?.matvec(&h.gradient(state)?))
}

/// Fixed-step integration from `y0` to `t_end` (rounded to a whole
/// number of steps).
pub fn integrate(
    form: Formulation,
    y0: &[f64],
    params: &Params,
    dt: f64,
    t_end: f64,
    method: Method,
) -> Result<Trajectory> {
    if !(dt > 0.0) || !(t_end > 0.0) || dt > t_end {
        return Err(Error::InvalidParams("need 0 < dt <= t_end"));
    }
    if y0.len() != form.dim() {
        return Err(Error::DimensionMismatch {
            expected: form.dim(),
            got: y0.len(),
        });
    }
    let (p, h) = form.structure_and_hamiltonian(params)?;
    let f = |state: &[f64]| -> Vec<f64> {
        p.matrix(state)
            .and_then(|m| Ok(m.matvec(&h.gradient(state)?)))
            .expect("dimensions fixed by construction")
    };
    let n_steps = libm::round(t_end / dt) as usize;
    let mut times = Vec::with_capacity(n_steps + 1);
    let mut states = Vec::with_capacity(n_steps + 1);
    let mut y = y0.to_vec();
    times.push(0.0);
    states.push(y.clone());
    for step in 1..=n_steps {
        y = match method {
            Method::Rk4 => rk4_step(&f, &y, dt),
            Method::ImplicitMidpoint => midpoint_step(&f, &y, dt, step)?,
        };
        times.push(step as f64 * dt);
        states.push(y.clone());
    }
    Ok(Trajectory {
        times,
        states,
        formulation: form,
        params: *params,
    })
}

fn rk4_step(f: &impl Fn(&[f64]) -> Vec<f64>, y: &[f64], dt: f64) -> Vec<f64> {
    let n = y.len();
    let k1 = f(y);
    let mid1: Vec<f64> = (0..n).map(|i| y[i] + 0.5 * dt * k1[i]).collect();
    let k2 = f(&mid1);
    let mid2: Vec<f64> = (0..n).map(|i| y[i] + 0.5 * dt * k2[i]).collect();
    let k3 = f(&mid2);
    let end: Vec<f64> = (0..n).map(|i| y[i] + dt * k3[i]).collect();
    let k4 = f(&end);
    (0..n)
        .map(|i| y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect()
}

const MIDPOINT_TOL: f64 = 1e-13;
const MIDPOINT_MAX_ITERS: usize = 50;

fn midpoint_step(
    f: &impl Fn(&[f64]) -> Vec<f64>,
    y: &[f64],
    dt: f64,
    step: usize,
) -> Result<Vec<f64>> {
    let n = y.len();
    // explicit Euler predictor
    let k = f(y);
    let mut next: Vec<f64> = (0..n).map(|i| y[i] + dt * k[i]).collect();
    for _ in 0..MIDPOINT_MAX_ITERS {
        let mid: Vec<f64> = (0..n).map(|i| 0.5 * (y[i] + next[i])).collect();
        let k = f(&mid);
        let candidate: Vec<f64> = (0..n).map(|i| y[i] + dt * k[i]).collect();
        let delta = math::max_abs_diff(&candidate, &next);
        next = candidate;
        if delta <= MIDPOINT_TOL {
            return Ok(next);
        }
    }
    let mid: Vec<f64> = (0..n).map(|i| 0.5 * (y[i] + next[i])).collect();
    let k = f(&mid);
    let candidate: Vec<f64> = (0..n).map(|i| y[i] + dt * k[i]).collect();
    Err(Error::NonConvergence {
        step,
        residual: math::max_abs_diff(&candidate, &next),
    })
}

/// Closed-form reduced solution at time `t` for amplitudes `(A, B)` and
/// Casimir level `lsq`:
/// `J_Y = A sin(mt/lambda) + B cos(mt/lambda)`,
/// `J_X = -B sin + A cos + l^2/m`,
/// `J_R = (B lambda/m) sin - (A lambda/m) cos
///        - (lambda/(2 l^2))(A^2+B^2) - lambda l^2/(2 m^2)`.
pub fn analytic_reduced(
    t: f64,
    a: f64,
    b: f64,
    lsq: f64,
    params: &Params,
) -> Result<(f64, f64, f64)> {
    if lsq <= 0.0 {
        return Err(Error::ZeroMomentum { lsq });
    }
    let (l, m) = (params.lambda, params.mass);
    let (s, c) = (math::sin(m * t / l), math::cos(m * t / l));
    let jy = a * s + b * c;
    let jx = -b * s + a * c + lsq / m;
    let jr = b * l / m * s - a * l / m * c - 0.5 * l / lsq * (a * a + b * b)
        - 0.5 * l * lsq / (m * m);
    Ok((jr, jx, jy))
}

/// Closed-form configuration curve and its velocity. Position:
/// `x(t) = A0 sin(mt/lambda) + B0 cos(mt/lambda) + (p0x/m) t + c0x` with
/// `A0 = lambda (A p0x - B p0y)/(m l^2)`,
/// `B0 = lambda (B p0x + A p0y)/(m l^2)` (and the rotated analogue
/// for `y`). Velocity comes from the algebraic relations
/// `xdot = (p0x J_X - p0y J_Y)/l^2`, `ydot = (p0y J_X + p0x J_Y)/l^2`,
/// which is exactly the time derivative of the position formula.
pub fn analytic_configuration(
    t: f64,
    a: f64,
    b: f64,
    p0: Vec2,
    c0: Vec2,
    params: &Params,
) -> Result<(Vec2, Vec2)> {
    let jet = analytic_jet(t, a, b, p0, c0, params)?;
    Ok((jet.pos, jet.vel))
}

/// Third jet of the closed-form configuration curve, the oracle for the
/// Euler-Lagrange residual.
pub fn analytic_jet(t: f64, a: f64, b: f64, p0: Vec2, c0: Vec2, params: &Params) -> Result<Jet3> {
    let lsq = p0.norm_sq();
    if lsq <= 0.0 {
        return Err(Error::ZeroMomentum { lsq });
    }
    let (l, m) = (params.lambda, params.mass);
    let omega = m / l;
    let a0 = l * (a * p0.x - b * p0.y) / (m * lsq);
    let b0 = l * (b * p0.x + a * p0.y) / (m * lsq);
    let (s, c) = (math::sin(omega * t), math::cos(omega * t));
    let pos = Vec2::new(
        a0 * s + b0 * c + p0.x / m * t + c0.x,
        b0 * s - a0 * c + p0.y / m * t + c0.y,
    );
    let (_, jx, jy) = analytic_reduced(t, a, b, lsq, params)?;
    let vel = Vec2::new(
        (p0.x * jx - p0.y * jy) / lsq,
        (p0.y * jx + p0.x * jy) / lsq,
    );
    let acc = Vec2::new(
        -omega * omega * (a0 * s + b0 * c),
        omega * omega * (a0 * c - b0 * s),
    );
    let jerk = Vec2::new(
        -omega * omega * omega * (a0 * c - b0 * s),
        -omega * omega * omega * (a0 * s + b0 * c),
    );
    Ok(Jet3 {
        pos,
        vel,
        acc,
        jerk,
    })
}

/// Which invariant triple projects a full trajectory to the reduced space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariantTriple {
    Canonical,
    Dirac,
}

/// Samplewise projection of an 8-dimensional trajectory onto the dual
/// oscillator algebra.
pub fn project_full_to_reduced(
    traj: &Trajectory,
    which: InvariantTriple,
    params: &Params,
) -> Result<Trajectory> {
    if traj.formulation.dim() != 8 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            got: traj.formulation.dim(),
        });
    }
    let states = traj
        .states
        .iter()
        .map(|z| {
            let mut arr = [0.0; 8];
            arr.copy_from_slice(z);
            let full = FullState::unflatten(&arr);
            let s = match which {
                InvariantTriple::Canonical => invariants_canonical(&full, params),
                InvariantTriple::Dirac => invariants_dirac(&full, params),
            };
            s.to_array().to_vec()
        })
        .collect();
    Ok(Trajectory {
        times: traj.times.clone(),
        states,
        formulation: Formulation::ReducedLiePoisson,
        params: *params,
    })
}

/// Reconstruct the configuration curve from a reduced trajectory and
/// conserved momenta: velocities come algebraically from `(J_X, J_Y, p0)`,
/// positions by trapezoid quadrature on the uniform grid, anchored at `x0`.
pub fn reconstruct(reduced: &Trajectory, p0: Vec2, x0: Vec2) -> Result<ConfigCurve> {
    if reduced.formulation != Formulation::ReducedLiePoisson {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: reduced.formulation.dim(),
        });
    }
    let lsq = p0.norm_sq();
    if lsq <= 0.0 {
        return Err(Error::ZeroMomentum { lsq });
    }
    let carried = reduced.states.first().map(|s| s[3]).unwrap_or(lsq);
    if math::abs(carried - lsq) > 1e-10 {
        return Err(Error::MomentumMismatch {
            expected: carried,
            got: lsq,
        });
    }
    let velocities: Vec<Vec2> = reduced
        .states
        .iter()
        .map(|s| {
            let (jx, jy) = (s[1], s[2]);
            Vec2::new((p0.x * jx - p0.y * jy) / lsq, (p0.y * jx + p0.x * jy) / lsq)
        })
        .collect();
    let mut positions = Vec::with_capacity(velocities.len());
    let mut pos = x0;
    positions.push(pos);
    for k in 1..velocities.len() {
        let dt = reduced.times[k] - reduced.times[k - 1];
        pos = pos + (velocities[k - 1] + velocities[k]) * (0.5 * dt);
        positions.push(pos);
    }
    Ok(ConfigCurve {
        times: reduced.times.clone(),
        positions,
        velocities,
    })
}

/// Threshold below which the regularity assumptions behind reduction
/// start to fail.
pub const REGULARITY_EPS: f64 = 1e-10;

/// Degenerate-input warnings for a full-space initial state: reduction
/// assumes nonvanishing linear momentum and `xdot x p1 != 0`. Full-space
/// integration proceeds regardless; reduction operations hard-fail.
pub fn regularity_warnings(z: &FullState) -> Vec<String> {
    let mut warnings = Vec::new();
    if z.p0.norm_sq() < REGULARITY_EPS {
        warnings.push(String::from(
            "initial |p0|^2 below regularity threshold; reduction is singular here",
        ));
    }
    if math::abs(z.vel.cross(z.p1)) < REGULARITY_EPS {
        warnings.push(String::from(
            "initial xdot x p1 below regularity threshold; reduction is singular here",
        ));
    }
    warnings
}

/// Drift summary over a trajectory: conserved quantities are compared
/// against their initial values, constraints against zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ConservationSummary {
    /// Drift of the formulation's own Hamiltonian.
    pub dh: f64,
    /// Drift of the angular momentum (full and Darboux formulations).
    pub dmu: Option<f64>,
    /// Drift of the linear momenta max-norm.
    pub dp0: Option<f64>,
    /// Largest constraint violation along the run (full formulations).
    pub max_phi: Option<f64>,
    /// Drift of the Casimir level `l^2` (reduced runs).
    pub dlsq: Option<f64>,
    /// Largest paraboloid residual (reduced runs).
    pub max_paraboloid: Option<f64>,
    /// Drift of the cylinder Casimir (reduced runs).
    pub dcylinder: Option<f64>,
}

/// Compute the drift summary appropriate to the trajectory's formulation.
pub fn conservation_summary(traj: &Trajectory) -> Result<ConservationSummary> {
    let params = traj.params;
    let (_, h) = traj.formulation.structure_and_hamiltonian(&params)?;
    let h0 = h.value(&traj.states[0])?;
    let mut dh = 0.0f64;
    for s in &traj.states {
        dh = dh.max(math::abs(h.value(s)? - h0));
    }
    let mut summary = ConservationSummary {
        dh,
        dmu: None,
        dp0: None,
        max_phi: None,
        dlsq: None,
        max_paraboloid: None,
        dcylinder: None,
    };
    match traj.formulation {
        Formulation::CanonicalBracketDiracH | Formulation::DiracBracketCanonicalH => {
            let first = full_state_from_slice(&traj.states[0]);
            let mu0 = momentum_map_full(&first)[0];
            let (mut dmu, mut dp0, mut max_phi) = (0.0f64, 0.0f64, 0.0f64);
            for s in &traj.states {
                let z = full_state_from_slice(s);
                dmu = dmu.max(math::abs(momentum_map_full(&z)[0] - mu0));
                dp0 = dp0
                    .max(math::abs(z.p0.x - first.p0.x))
                    .max(math::abs(z.p0.y - first.p0.y));
                let phi = z.constraint_values(params.lambda);
                max_phi = max_phi.max(math::abs(phi.x)).max(math::abs(phi.y));
            }
            summary.dmu = Some(dmu);
            summary.dp0 = Some(dp0);
            summary.max_phi = Some(max_phi);
        }
        Formulation::DarbouxCanonicalH => {
            // mu in the chart: x (cross) p0 - (q^2 + p^2)/2
            let mu_of = |s: &[f64]| {
                s[0] * s[4] - s[1] * s[3] - 0.5 * (s[2] * s[2] + s[5] * s[5])
            };
            let first = &traj.states[0];
            let mu0 = mu_of(first);
            let (mut dmu, mut dp0) = (0.0f64, 0.0f64);
            for s in &traj.states {
                dmu = dmu.max(math::abs(mu_of(s) - mu0));
                dp0 = dp0
                    .max(math::abs(s[3] - first[3]))
                    .max(math::abs(s[4] - first[4]));
            }
            summary.dmu = Some(dmu);
            summary.dp0 = Some(dp0);
        }
        Formulation::ReducedLiePoisson => {
            let first = &traj.states[0];
            let cyl_of = |s: &[f64]| {
                hamiltonians::casimir_cylinder(
                    &ReducedState::new(s[0], s[1], s[2], s[3]),
                    &params,
                )
            };
            let par_of = |s: &[f64]| {
                hamiltonians::paraboloid(&ReducedState::new(s[0], s[1], s[2], s[3]), &params)
            };
            let (mut dlsq, mut max_par, mut dcyl) = (0.0f64, 0.0f64, 0.0f64);
            let cyl0 = cyl_of(first);
            for s in &traj.states {
                dlsq = dlsq.max(math::abs(s[3] - first[3]));
                max_par = max_par.max(math::abs(par_of(s)));
                dcyl = dcyl.max(math::abs(cyl_of(s) - cyl0));
            }
            summary.dlsq = Some(dlsq);
            summary.max_paraboloid = Some(max_par);
            summary.dcylinder = Some(dcyl);
        }
    }
    Ok(summary)
}

/// View an 8-long slice in the frozen ordering as a `FullState`.
pub fn full_state_from_slice(s: &[f64]) -> FullState {
    let mut arr = [0.0; 8];
    arr.copy_from_slice(s);
    FullState::unflatten(&arr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonians::el_residual;
    use approx::assert_abs_diff_eq;

    fn p(lambda: f64, mass: f64) -> Params {
        Params::new(lambda, mass).unwrap()
    }

    #[test]
    fn rhs_p0_slots_vanish_identically() {
        let pr = p(1.3, 0.7);
        let z = [0.4, -0.9, 1.1, 0.3, -0.5, 0.7, 0.2, -1.3];
        for form in [
            Formulation::CanonicalBracketDiracH,
            Formulation::DiracBracketCanonicalH,
        ] {
            let dz = rhs(form, &z, &pr).unwrap();
            assert_eq!(dz[4], 0.0);
            assert_eq!(dz[5], 0.0);
        }
    }

    #[test]
    fn rhs_reduced_matches_closed_form() {
        let pr = p(1.7, 0.9);
        let s = [0.4, -1.2, 0.8, 1.5];
        let dz = rhs(Formulation::ReducedLiePoisson, &s, &pr).unwrap();
        let (l, m) = (pr.lambda, pr.mass);
        assert_abs_diff_eq!(dz[0], s[2], epsilon = 1e-15); // J_R' = J_Y
        assert_abs_diff_eq!(dz[1], -m / l * s[2], epsilon = 1e-15);
        assert_abs_diff_eq!(dz[2], m / l * s[1] - s[3] / l, epsilon = 1e-15);
        assert_eq!(dz[3], 0.0);
    }

    #[test]
    fn rhs_reduced_fixed_point() {
        let pr = p(1.0, 1.0);
        let dz = rhs(Formulation::ReducedLiePoisson, &[3.3, 1.0, 0.0, 1.0], &pr).unwrap();
        assert!(crate::math::max_abs(&dz) == 0.0);
    }

    #[test]
    fn rhs_dimension_mismatch() {
        let pr = p(1.0, 1.0);
        assert!(matches!(
            rhs(Formulation::ReducedLiePoisson, &[0.0; 8], &pr),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn fixed_point_trajectory_constant() {
        let pr = p(1.0, 1.0);
        let y0 = [-0.5, 1.0, 0.0, 1.0];
        let traj = integrate(
            Formulation::ReducedLiePoisson,
            &y0,
            &pr,
            1e-2,
            1.0,
            Method::Rk4,
        )
        .unwrap();
        for s in &traj.states {
            assert_eq!(s.as_slice(), y0.as_slice());
        }
    }

    #[test]
    fn analytic_constant_solution_is_fixed_point() {
        let pr = p(1.0, 1.0);
        let (jr, jx, jy) = analytic_reduced(2.3, 0.0, 0.0, 1.0, &pr).unwrap();
        assert_abs_diff_eq!(jr, -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(jx, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(jy, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn analytic_initial_values_on_paraboloid() {
        let pr = p(1.0, 1.0);
        let (jr, jx, jy) = analytic_reduced(0.0, 1.0, 0.0, 1.0, &pr).unwrap();
        assert_abs_diff_eq!(jr, -2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(jx, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(jy, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(jx * jx + jy * jy + 2.0 * jr, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn analytic_reduced_satisfies_ode() {
        let pr = p(1.4, 0.8);
        let (a, b, lsq) = (0.7, -0.4, 1.3);
        let h = 1e-6;
        for t in [0.3, 1.7, 4.1] {
            let (jr_p, jx_p, jy_p) = analytic_reduced(t + h, a, b, lsq, &pr).unwrap();
            let (jr_m, jx_m, jy_m) = analytic_reduced(t - h, a, b, lsq, &pr).unwrap();
            let fd = [
                (jr_p - jr_m) / (2.0 * h),
                (jx_p - jx_m) / (2.0 * h),
                (jy_p - jy_m) / (2.0 * h),
            ];
            let (jr, jx, jy) = analytic_reduced(t, a, b, lsq, &pr).unwrap();
            let dz = rhs(
                Formulation::ReducedLiePoisson,
                &[jr, jx, jy, lsq],
                &pr,
            )
            .unwrap();
            for i in 0..3 {
                assert_abs_diff_eq!(fd[i], dz[i], epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn analytic_configuration_free_particle_limit() {
        let pr = p(1.0, 2.0);
        let p0 = Vec2::new(0.6, -0.8);
        let c0 = Vec2::new(1.0, 1.0);
        let (pos, vel) = analytic_configuration(3.0, 0.0, 0.0, p0, c0, &pr).unwrap();
        assert_abs_diff_eq!(pos.x, p0.x / 2.0 * 3.0 + 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(pos.y, p0.y / 2.0 * 3.0 + 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(vel.x, p0.x / 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(vel.y, p0.y / 2.0, epsilon = 1e-14);
    }

    #[test]
    fn analytic_jet_solves_euler_lagrange() {
        let pr = p(1.3, 0.9);
        let p0 = Vec2::new(0.8, 0.5);
        let c0 = Vec2::new(-0.3, 0.2);
        for t in [0.0, 0.9, 2.7, 5.5] {
            let jet = analytic_jet(t, 0.6, -1.1, p0, c0, &pr).unwrap();
            let r = el_residual(&jet, &pr);
            assert!(r.norm() < 1e-12, "EL residual {} at t={t}", r.norm());
        }
    }

    #[test]
    fn analytic_velocity_is_position_derivative() {
        let pr = p(1.6, 1.1);
        let p0 = Vec2::new(-0.7, 1.2);
        let c0 = Vec2::ZERO;
        let h = 1e-6;
        for t in [0.4, 2.2] {
            let (pp, _) = analytic_configuration(t + h, 0.9, 0.3, p0, c0, &pr).unwrap();
            let (pm, _) = analytic_configuration(t - h, 0.9, 0.3, p0, c0, &pr).unwrap();
            let (_, vel) = analytic_configuration(t, 0.9, 0.3, p0, c0, &pr).unwrap();
            assert_abs_diff_eq!((pp.x - pm.x) / (2.0 * h), vel.x, epsilon = 1e-8);
            assert_abs_diff_eq!((pp.y - pm.y) / (2.0 * h), vel.y, epsilon = 1e-8);
        }
    }

    #[test]
    fn zero_momentum_rejected() {
        let pr = p(1.0, 1.0);
        assert!(matches!(
            analytic_reduced(0.0, 1.0, 1.0, 0.0, &pr),
            Err(Error::ZeroMomentum { .. })
        ));
        assert!(matches!(
            analytic_configuration(0.0, 1.0, 1.0, Vec2::ZERO, Vec2::ZERO, &pr),
            Err(Error::ZeroMomentum { .. })
        ));
    }

    #[test]
    fn reconstruct_momentum_mismatch_detected() {
        let pr = p(1.0, 1.0);
        let traj = integrate(
            Formulation::ReducedLiePoisson,
            &[-0.5, 1.0, 0.0, 1.0],
            &pr,
            1e-2,
            0.1,
            Method::Rk4,
        )
        .unwrap();
        let err = reconstruct(&traj, Vec2::new(2.0, 0.0), Vec2::ZERO);
        assert!(matches!(err, Err(Error::MomentumMismatch { .. })));
    }

    #[test]
    fn reconstruct_fixed_point_gives_straight_line() {
        let pr = p(1.0, 1.0);
        let traj = integrate(
            Formulation::ReducedLiePoisson,
            &[-0.5, 1.0, 0.0, 1.0],
            &pr,
            1e-3,
            1.0,
            Method::Rk4,
        )
        .unwrap();
        let curve = reconstruct(&traj, Vec2::new(1.0, 0.0), Vec2::ZERO).unwrap();
        let last = *curve.positions.last().unwrap();
        // velocity (1, 0), so x(t) = t exactly under the trapezoid rule
        assert_abs_diff_eq!(last.x, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(last.y, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn midpoint_converges_and_conserves_quadratics() {
        let pr = p(1.0, 1.0);
        let y0 = [-2.0, 2.0, 0.0, 1.0];
        let traj = integrate(
            Formulation::ReducedLiePoisson,
            &y0,
            &pr,
            1e-2,
            20.0,
            Method::ImplicitMidpoint,
        )
        .unwrap();
        let summary = conservation_summary(&traj).unwrap();
        assert!(summary.dcylinder.unwrap() < 1e-11);
        assert!(summary.max_paraboloid.unwrap() < 1e-11);
        assert!(summary.dh < 1e-11);
    }

    #[test]
    fn integrate_validates_inputs() {
        let pr = p(1.0, 1.0);
        assert!(integrate(
            Formulation::ReducedLiePoisson,
            &[0.0; 4],
            &pr,
            0.0,
            1.0,
            Method::Rk4
        )
        .is_err());
        assert!(integrate(
            Formulation::ReducedLiePoisson,
            &[0.0; 5],
            &pr,
            1e-2,
            1.0,
            Method::Rk4
        )
        .is_err());
    }

    #[test]
    fn regularity_warnings_fire_on_degenerate_states() {
        let z = FullState::default();
        assert_eq!(regularity_warnings(&z).len(), 2);
        let z = FullState {
            vel: Vec2::new(1.0, 0.0),
            p0: Vec2::new(1.0, 0.0),
            p1: Vec2::new(0.0, -0.5),
            ..Default::default()
        };
        assert!(regularity_warnings(&z).is_empty());
    }
}
