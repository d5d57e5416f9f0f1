//! The SE(2) action and everything it induces: generators and their
//! lifts, momentum maps, the invariant triples that coordinatize the
//! reduced space, the Darboux and inverse Legendre maps, the two-cocycle
//! of the central extension, and a numeric Lie bracket for commutator
//! tables.
//!
//! `lie_bracket` is the Jacobi-Lie commutator `[F, G] = DG.F - DF.G`.
//! Fields induced by the (left) group action close under it with signs
//! opposite to the abstract algebra table, the usual anti-homomorphism;
//! the lifted fields generated through the Dirac bracket close with the
//! printed sign pattern directly. Both tables are tested against their
//! own convention in `verify`.

use alloc::borrow::Cow;
use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::brackets::{canonical_bracket, dirac_bracket_closed_form, PoissonStructure};
use crate::error::{Error, Result};
use crate::hamiltonians::ScalarField;
use crate::linalg::Mat;
use crate::math;
use crate::params::Params;
use crate::state::{DarbouxState, FullState, ReducedState};
use crate::vec2::Vec2;

type FieldFn = Box<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;
type JacobianFn = Box<dyn Fn(&[f64]) -> Mat + Send + Sync>;

/// A named vector field on a flattened chart, optionally carrying its
/// analytic Jacobian so commutators are exact.
pub struct VectorField {
    pub name: Cow<'static, str>,
    pub dim: usize,
    value: FieldFn,
    jacobian: Option<JacobianFn>,
}

impl VectorField {
    pub fn new(
        name: impl Into<Cow<'static, str>>,
        dim: usize,
        value: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            dim,
            value: Box::new(value),
            jacobian: None,
        }
    }

    pub fn with_jacobian(mut self, jac: impl Fn(&[f64]) -> Mat + Send + Sync + 'static) -> Self {
        self.jacobian = Some(Box::new(jac));
        self
    }

    pub fn value(&self, z: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(z)?;
        Ok((self.value)(z))
    }

    /// Analytic Jacobian when registered, central differences otherwise.
    pub fn jacobian(&self, z: &[f64]) -> Result<Mat> {
        self.check_dim(z)?;
        if let Some(j) = &self.jacobian {
            return Ok(j(z));
        }
        let n = self.dim;
        let mut cols = Vec::with_capacity(n);
        let mut zp = z.to_vec();
        let mut zm = z.to_vec();
        for l in 0..n {
            let h = 1e-6 * math::abs(z[l]).max(1.0);
            zp[l] = z[l] + h;
            zm[l] = z[l] - h;
            let (fp, fm) = ((self.value)(&zp), (self.value)(&zm));
            cols.push(
                fp.iter()
                    .zip(&fm)
                    .map(|(a, b)| (a - b) / (2.0 * h))
                    .collect::<Vec<_>>(),
            );
            zp[l] = z[l];
            zm[l] = z[l];
        }
        Ok(Mat::from_fn(n, |i, j| cols[j][i]))
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

/// Jacobi-Lie commutator `[F, G](z) = DG(z) F(z) - DF(z) G(z)`.
pub fn lie_bracket(f: &VectorField, g: &VectorField, z: &[f64]) -> Result<Vec<f64>> {
    if f.dim != g.dim {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            got: g.dim,
        });
    }
    let (fv, gv) = (f.value(z)?, g.value(z)?);
    let (df, dg) = (f.jacobian(z)?, g.jacobian(z)?);
    let a = dg.matvec(&fv);
    let b = df.matvec(&gv);
    Ok(a.iter().zip(&b).map(|(x, y)| x - y).collect())
}

/// An Euclidean motion of the plane: rotate by `theta`, then translate
/// by `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub theta: f64,
    pub a: Vec2,
}

impl GroupElement {
    pub fn new(theta: f64, a: Vec2) -> Self {
        Self { theta, a }
    }

    pub fn identity() -> Self {
        Self::new(0.0, Vec2::ZERO)
    }

    /// Group law: `(theta1, a1) * (theta2, a2) = (theta1 + theta2,
    /// R_theta1 a2 + a1)`, composition of the plane actions.
    pub fn compose(self, other: GroupElement) -> GroupElement {
        GroupElement::new(self.theta + other.theta, other.a.rotate(self.theta) + self.a)
    }
}

/// Action of SE(2) on the plane: `x -> R_theta x + a`.
pub fn act_on_plane(g: GroupElement, x: Vec2) -> Vec2 {
    x.rotate(g.theta) + g.a
}

/// The lifted action on the Ostrogradskii phase space: position moves by
/// the full motion, velocity and both momenta rotate covariantly.
pub fn act_on_full(g: GroupElement, z: &FullState) -> FullState {
    FullState::new(
        act_on_plane(g, z.pos),
        z.vel.rotate(g.theta),
        z.p0.rotate(g.theta),
        z.p1.rotate(g.theta),
    )
}

/// Generators `(R, X, Y)` of the SE(2) action on the plane:
/// `R = x d/dy - y d/dx`, `X = d/dx`, `Y = d/dy`.
pub fn generators_plane() -> [VectorField; 3] {
    let r = VectorField::new("R_plane", 2, |v| alloc::vec![-v[1], v[0]]).with_jacobian(|_| {
        let mut j = Mat::zeros(2);
        j.set(0, 1, -1.0);
        j.set(1, 0, 1.0);
        j
    });
    let x = VectorField::new("X_plane", 2, |_| alloc::vec![1.0, 0.0])
        .with_jacobian(|_| Mat::zeros(2));
    let y = VectorField::new("Y_plane", 2, |_| alloc::vec![0.0, 1.0])
        .with_jacobian(|_| Mat::zeros(2));
    [r, x, y]
}

/// Tangent lifts of the generators to `(x, y, xdot, ydot)`; the rotation
/// also rotates velocities, the translations stay coordinate fields.
pub fn tangent_lifts() -> [VectorField; 3] {
    let r = VectorField::new("R_tangent", 4, |v| {
        alloc::vec![-v[1], v[0], -v[3], v[2]]
    })
    .with_jacobian(|_| {
        let mut j = Mat::zeros(4);
        j.set(0, 1, -1.0);
        j.set(1, 0, 1.0);
        j.set(2, 3, -1.0);
        j.set(3, 2, 1.0);
        j
    });
    let x = VectorField::new("X_tangent", 4, |_| alloc::vec![1.0, 0.0, 0.0, 0.0])
        .with_jacobian(|_| Mat::zeros(4));
    let y = VectorField::new("Y_tangent", 4, |_| alloc::vec![0.0, 1.0, 0.0, 0.0])
        .with_jacobian(|_| Mat::zeros(4));
    [r, x, y]
}

/// Cotangent lifts of the tangent lifts to the full phase space; the
/// rotation rotates every conjugate pair, the translations still act on
/// position alone.
pub fn cotangent_lifts() -> [VectorField; 3] {
    let r = VectorField::new("R_cotangent", 8, |z| {
        alloc::vec![-z[1], z[0], -z[3], z[2], -z[5], z[4], -z[7], z[6]]
    })
    .with_jacobian(|_| {
        let mut j = Mat::zeros(8);
        for pair in 0..4 {
            j.set(2 * pair, 2 * pair + 1, -1.0);
            j.set(2 * pair + 1, 2 * pair, 1.0);
        }
        j
    });
    let x = VectorField::new("X_cotangent", 8, |_| {
        let mut v = alloc::vec![0.0; 8];
        v[0] = 1.0;
        v
    })
    .with_jacobian(|_| Mat::zeros(8));
    let y = VectorField::new("Y_cotangent", 8, |_| {
        let mut v = alloc::vec![0.0; 8];
        v[1] = 1.0;
        v
    })
    .with_jacobian(|_| Mat::zeros(8));
    [r, x, y]
}

/// Momentum map of the cotangent-lifted action: angular momentum
/// `mu = x(cross)p0 + xdot(cross)p1` and the two linear momenta.
pub fn momentum_map_full(z: &FullState) -> [f64; 3] {
    [z.pos.cross(z.p0) + z.vel.cross(z.p1), z.p0.x, z.p0.y]
}

/// Angular momentum as a field on the full phase space.
pub fn mu_field() -> ScalarField {
    ScalarField::new(
        "mu",
        8,
        |z| (z[0] * z[5] - z[1] * z[4]) + (z[2] * z[7] - z[3] * z[6]),
        |z| alloc::vec![z[5], -z[4], z[7], -z[6], -z[1], z[0], -z[3], z[2]],
    )
}

/// Momentum map for the SE(2) action on the plane cotangent bundle with
/// the `dp0 ^ dx` pairing: `(x (cross) p0, p0x, p0y)`.
pub fn momentum_map_cotangent_plane(x: Vec2, p0: Vec2) -> [f64; 3] {
    [x.cross(p0), p0.x, p0.y]
}

/// Poisson matrix on `(x, y, p0x, p0y)` for the `dp0 ^ dx` symplectic
/// form, under which the components of `momentum_map_cotangent_plane`
/// reproduce the `se(2)*` Lie-Poisson matrix.
pub fn cotangent_plane_structure() -> PoissonStructure {
    const COORDS: [&str; 4] = ["x", "y", "p0x", "p0y"];
    let mut m = Mat::zeros(4);
    m.set_skew(0, 2, -1.0);
    m.set_skew(1, 3, -1.0);
    PoissonStructure::constant("cotangent_plane", &COORDS, m)
}

/// Momentum map for the action of SE(2) on the symplectic plane
/// `(R^2, dx ^ dy)` itself: `(|x|^2 / 2, y, -x)`.
pub fn momentum_map_plane(x: Vec2) -> [f64; 3] {
    [0.5 * x.norm_sq(), x.y, -x.x]
}

/// The three components of `momentum_map_plane` as fields on the plane.
pub fn plane_momentum_fields() -> [ScalarField; 3] {
    let jr = ScalarField::new(
        "J_R_plane",
        2,
        |v| 0.5 * (v[0] * v[0] + v[1] * v[1]),
        |v| alloc::vec![v[0], v[1]],
    );
    let jx = ScalarField::new("J_X_plane", 2, |v| v[1], |_| alloc::vec![0.0, 1.0]);
    let jy = ScalarField::new("J_Y_plane", 2, |v| -v[0], |_| alloc::vec![-1.0, 0.0]);
    [jr, jx, jy]
}

/// Poisson structure of `(R^2, dx ^ dy)`: `{x, y} = 1`.
pub fn plane_structure() -> PoissonStructure {
    const COORDS: [&str; 2] = ["x", "y"];
    let mut m = Mat::zeros(2);
    m.set_skew(0, 1, 1.0);
    PoissonStructure::constant("plane", &COORDS, m)
}

/// Basis label for the symmetry algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    R,
    X,
    Y,
}

impl Generator {
    fn index(self) -> usize {
        match self {
            Generator::R => 0,
            Generator::X => 1,
            Generator::Y => 2,
        }
    }
}

/// Two-cocycle of the plane realization evaluated at a point:
/// `Theta(a, b) = {J_a, J_b} - J_[a,b]` with the Jacobi-Lie bracket of
/// the generators inside. The value is point-independent:
/// `Theta(X, Y) = 1` and `Theta(Y, R) = Theta(R, X) = 0`.
pub fn cocycle_plane(a: Generator, b: Generator, at: Vec2) -> f64 {
    let fields = plane_momentum_fields();
    let p = plane_structure();
    let z = [at.x, at.y];
    let bracket = crate::brackets::bracket_of_functions(&p, &fields[a.index()], &fields[b.index()], &z)
        .expect("fixed dims");
    // J_[a,b] with Jacobi-Lie structure constants of the plane
    // generators: [R,X] = -Y, [R,Y] = X, [X,Y] = 0.
    let j_of_bracket = match (a, b) {
        (Generator::R, Generator::X) => -fields[2].value(&z).expect("dim"),
        (Generator::X, Generator::R) => fields[2].value(&z).expect("dim"),
        (Generator::R, Generator::Y) => fields[1].value(&z).expect("dim"),
        (Generator::Y, Generator::R) => -fields[1].value(&z).expect("dim"),
        _ => 0.0,
    };
    bracket - j_of_bracket
}

/// Two-cocycle of the full-space realization: the Casimir `l^2 / lambda`.
pub fn cocycle_full(z: &FullState, params: &Params) -> f64 {
    z.p0.norm_sq() / params.lambda
}

/// SE(2)-invariant functions adapted to the canonical bracket:
/// `J_R = xdot (cross) p1`,
/// `J_X = xdot . p0 / 2 - (p0 (cross) p1)/lambda`,
/// `J_Y = -(xdot (cross) p0)/2 + (p0 . p1)/lambda`, with `l^2 = |p0|^2`.
pub fn invariants_canonical(z: &FullState, params: &Params) -> ReducedState {
    let l = params.lambda;
    ReducedState::new(
        z.vel.cross(z.p1),
        0.5 * z.vel.dot(z.p0) - z.p0.cross(z.p1) / l,
        -0.5 * z.vel.cross(z.p0) + z.p0.dot(z.p1) / l,
        z.p0.norm_sq(),
    )
}

/// SE(2)-invariant functions adapted to the Dirac bracket, with the
/// constrained momenta eliminated: `J_R = -(lambda/2)|xdot|^2`,
/// `J_X = xdot . p0`, `J_Y = -(xdot (cross) p0)`.
pub fn invariants_dirac(z: &FullState, params: &Params) -> ReducedState {
    ReducedState::new(
        -0.5 * params.lambda * z.vel.norm_sq(),
        z.vel.dot(z.p0),
        -z.vel.cross(z.p0),
        z.p0.norm_sq(),
    )
}

/// The canonical-bracket invariant triple plus `l^2` as fields with
/// analytic gradients, for bracket-closure checks.
pub fn invariant_fields_canonical(params: Params) -> [ScalarField; 4] {
    let l = params.lambda;
    let jr = ScalarField::new(
        "J_R",
        8,
        |z| z[2] * z[7] - z[3] * z[6],
        |z| alloc::vec![0.0, 0.0, z[7], -z[6], 0.0, 0.0, -z[3], z[2]],
    );
    let jx = ScalarField::new(
        "J_X",
        8,
        move |z| 0.5 * (z[2] * z[4] + z[3] * z[5]) - (z[4] * z[7] - z[5] * z[6]) / l,
        move |z| {
            alloc::vec![
                0.0,
                0.0,
                0.5 * z[4],
                0.5 * z[5],
                0.5 * z[2] - z[7] / l,
                0.5 * z[3] + z[6] / l,
                z[5] / l,
                -z[4] / l,
            ]
        },
    );
    let jy = ScalarField::new(
        "J_Y",
        8,
        move |z| -0.5 * (z[2] * z[5] - z[3] * z[4]) + (z[4] * z[6] + z[5] * z[7]) / l,
        move |z| {
            alloc::vec![
                0.0,
                0.0,
                -0.5 * z[5],
                0.5 * z[4],
                0.5 * z[3] + z[6] / l,
                -0.5 * z[2] + z[7] / l,
                z[4] / l,
                z[5] / l,
            ]
        },
    );
    [jr, jx, jy, crate::hamiltonians::lsq_field_full()]
}

/// The Dirac-bracket invariant triple plus `l^2` as fields.
pub fn invariant_fields_dirac(params: Params) -> [ScalarField; 4] {
    let l = params.lambda;
    let jr = ScalarField::new(
        "J_R_dirac",
        8,
        move |z| -0.5 * l * (z[2] * z[2] + z[3] * z[3]),
        move |z| alloc::vec![0.0, 0.0, -l * z[2], -l * z[3], 0.0, 0.0, 0.0, 0.0],
    );
    let jx = ScalarField::new(
        "J_X_dirac",
        8,
        |z| z[2] * z[4] + z[3] * z[5],
        |z| alloc::vec![0.0, 0.0, z[4], z[5], z[2], z[3], 0.0, 0.0],
    );
    let jy = ScalarField::new(
        "J_Y_dirac",
        8,
        |z| -(z[2] * z[5] - z[3] * z[4]),
        |z| alloc::vec![0.0, 0.0, -z[5], z[4], z[3], -z[2], 0.0, 0.0],
    );
    [jr, jx, jy, crate::hamiltonians::lsq_field_full()]
}

/// The four lifted fields generated through the Dirac bracket by the
/// Dirac invariant triple and `l^2/lambda`. Each is exactly
/// `P_D grad(J)`; the momentum components tied to the constraints come
/// along, so the fields are tangent to the constraint submanifold.
pub fn dirac_lift_fields(params: Params) -> [VectorField; 4] {
    let l = params.lambda;
    let f_r = VectorField::new("F_R", 8, move |z| {
        alloc::vec![0.0, 0.0, -z[3], z[2], 0.0, 0.0, 0.5 * l * z[2], 0.5 * l * z[3]]
    })
    .with_jacobian(move |_| {
        let mut j = Mat::zeros(8);
        j.set(2, 3, -1.0);
        j.set(3, 2, 1.0);
        j.set(6, 2, 0.5 * l);
        j.set(7, 3, 0.5 * l);
        j
    });
    let f_x = VectorField::new("F_X", 8, move |z| {
        alloc::vec![
            z[2],
            z[3],
            z[5] / l,
            -z[4] / l,
            0.0,
            0.0,
            -0.5 * z[4],
            -0.5 * z[5]
        ]
    })
    .with_jacobian(move |_| {
        let mut j = Mat::zeros(8);
        j.set(0, 2, 1.0);
        j.set(1, 3, 1.0);
        j.set(2, 5, 1.0 / l);
        j.set(3, 4, -1.0 / l);
        j.set(6, 4, -0.5);
        j.set(7, 5, -0.5);
        j
    });
    let f_y = VectorField::new("F_Y", 8, move |z| {
        alloc::vec![
            z[3],
            -z[2],
            z[4] / l,
            z[5] / l,
            0.0,
            0.0,
            0.5 * z[5],
            -0.5 * z[4]
        ]
    })
    .with_jacobian(move |_| {
        let mut j = Mat::zeros(8);
        j.set(0, 3, 1.0);
        j.set(1, 2, -1.0);
        j.set(2, 4, 1.0 / l);
        j.set(3, 5, 1.0 / l);
        j.set(6, 5, 0.5);
        j.set(7, 4, -0.5);
        j
    });
    let f_lsq = VectorField::new("F_lsq", 8, move |z| {
        alloc::vec![2.0 * z[4] / l, 2.0 * z[5] / l, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]
    })
    .with_jacobian(move |_| {
        let mut j = Mat::zeros(8);
        j.set(0, 4, 2.0 / l);
        j.set(1, 5, 2.0 / l);
        j
    });
    [f_r, f_x, f_y, f_lsq]
}

/// Generating functions of the Dirac lifts, in matching order:
/// the Dirac invariant triple and `l^2/lambda`.
pub fn dirac_lift_generators(params: Params) -> [ScalarField; 4] {
    let l = params.lambda;
    let [jr, jx, jy, _] = invariant_fields_dirac(params);
    let lsq_over_lambda = ScalarField::new(
        "lsq_over_lambda",
        8,
        move |z| (z[4] * z[4] + z[5] * z[5]) / l,
        move |z| alloc::vec![0.0, 0.0, 0.0, 0.0, 2.0 * z[4] / l, 2.0 * z[5] / l, 0.0, 0.0],
    );
    [jr, jx, jy, lsq_over_lambda]
}

/// Darboux coordinates of the full phase space: `q = sqrt(lambda) ydot`,
/// `p = -sqrt(lambda) xdot`, the constraint pair carried alongside so the
/// map is a bijection of the whole 8-space.
pub fn darboux_forward(z: &FullState, params: &Params) -> Result<DarbouxState> {
    let s = params.sqrt_lambda()?;
    Ok(DarbouxState {
        pos: z.pos,
        q: s * z.vel.y,
        p0: z.p0,
        p: -s * z.vel.x,
        phi: z.constraint_values(params.lambda),
    })
}

/// Inverse of `darboux_forward`.
pub fn darboux_backward(w: &DarbouxState, params: &Params) -> Result<FullState> {
    let s = params.sqrt_lambda()?;
    let vel = Vec2::new(-w.p / s, w.q / s);
    let p1 = Vec2::new(
        w.phi.x + 0.5 * params.lambda * vel.y,
        w.phi.y - 0.5 * params.lambda * vel.x,
    );
    Ok(FullState::new(w.pos, vel, w.p0, p1))
}

/// Jacobian of the Darboux transformation in the flattened orderings,
/// rows `(x, y, q, p0x, p0y, p, phi_x, phi_y)` against columns in the
/// full-space order. Constant in the state.
pub fn darboux_jacobian(params: &Params) -> Result<Mat> {
    let s = params.sqrt_lambda()?;
    let l = params.lambda;
    let mut j = Mat::zeros(8);
    j.set(0, 0, 1.0); // x
    j.set(1, 1, 1.0); // y
    j.set(2, 3, s); // q = sqrt(lambda) ydot
    j.set(3, 4, 1.0); // p0x
    j.set(4, 5, 1.0); // p0y
    j.set(5, 2, -s); // p = -sqrt(lambda) xdot
    j.set(6, 3, -0.5 * l); // phi_x
    j.set(6, 6, 1.0);
    j.set(7, 2, 0.5 * l); // phi_y
    j.set(7, 7, 1.0);
    Ok(j)
}

/// Inverse Legendre data on the final constraint submanifold:
/// `xdot = -p/sqrt(lambda)`, `ydot = q/sqrt(lambda)`, and
/// `qdot = -p0x/sqrt(lambda) - (m/lambda) p`.
pub fn inverse_legendre(w: &DarbouxState, params: &Params) -> Result<(Vec2, f64)> {
    let s = params.sqrt_lambda()?;
    let vel = Vec2::new(-w.p / s, w.q / s);
    let qdot = -w.p0.x / s - params.mass / params.lambda * w.p;
    Ok((vel, qdot))
}

/// The canonical and Dirac Poisson structures bundled for callers that
/// need the matching pair of (structure, generators).
pub fn full_structures(params: &Params) -> (PoissonStructure, PoissonStructure) {
    (canonical_bracket(), dirac_bracket_closed_form(params))
}
