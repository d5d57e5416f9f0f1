//! State types and the frozen coordinate-ordering contracts.
//!
//! Every matrix, gradient, and CSV column in the crate uses the
//! flattened orderings declared here. The Ostrogradskii phase space is
//! ordered `(x, y, xdot, ydot, p0x, p0y, p1x, p1y)`; the Darboux chart
//! `(x, y, q, p0x, p0y, p)`; the reduced space `(J_R, J_X, J_Y, l^2)`.

use crate::vec2::Vec2;

/// Coordinate labels of the 8-dimensional Ostrogradskii phase space.
pub const FULL_COORDS: [&str; 8] = ["x", "y", "xdot", "ydot", "p0x", "p0y", "p1x", "p1y"];

/// Coordinate labels of the 6-dimensional Darboux chart on the final
/// constraint submanifold.
pub const DARBOUX_COORDS: [&str; 6] = ["x", "y", "q", "p0x", "p0y", "p"];

/// Coordinate labels of the velocity chart `(x, y, xdot, p0x, p0y, ydot)`
/// on the final constraint submanifold.
pub const VELOCITY_CHART_COORDS: [&str; 6] = ["x", "y", "xdot", "p0x", "p0y", "ydot"];

/// Coordinate labels of the dual oscillator algebra.
pub const REDUCED_COORDS: [&str; 4] = ["jr", "jx", "jy", "lsq"];

/// Coordinate labels of `se(2)*`: angular momentum then linear momenta.
pub const SE2_COORDS: [&str; 3] = ["mu", "p0x", "p0y"];

/// A point of the Ostrogradskii phase space: position, velocity, and the
/// momenta conjugate to each.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FullState {
    pub pos: Vec2,
    pub vel: Vec2,
    pub p0: Vec2,
    pub p1: Vec2,
}

impl FullState {
    pub fn new(pos: Vec2, vel: Vec2, p0: Vec2, p1: Vec2) -> Self {
        Self { pos, vel, p0, p1 }
    }

    /// Flatten in the frozen order `(x, y, xdot, ydot, p0x, p0y, p1x, p1y)`.
    pub fn flatten(&self) -> [f64; 8] {
        [
            self.pos.x, self.pos.y, self.vel.x, self.vel.y, self.p0.x, self.p0.y, self.p1.x,
            self.p1.y,
        ]
    }

    pub fn unflatten(v: &[f64; 8]) -> Self {
        Self {
            pos: Vec2::new(v[0], v[1]),
            vel: Vec2::new(v[2], v[3]),
            p0: Vec2::new(v[4], v[5]),
            p1: Vec2::new(v[6], v[7]),
        }
    }

    /// Constraint values `phi = (p1x - lambda*ydot/2, p1y + lambda*xdot/2)`.
    pub fn constraint_values(&self, lambda: f64) -> Vec2 {
        Vec2::new(
            self.p1.x - 0.5 * lambda * self.vel.y,
            self.p1.y + 0.5 * lambda * self.vel.x,
        )
    }

    /// Replace `p1` by its constrained value, projecting the state onto
    /// the final constraint submanifold.
    pub fn onto_constraint_surface(mut self, lambda: f64) -> Self {
        self.p1 = Vec2::new(0.5 * lambda * self.vel.y, -0.5 * lambda * self.vel.x);
        self
    }
}

/// A point of the Darboux chart. The six canonical coordinates are kept
/// together with the two constraint values so the chart is a bijection
/// of the full 8-space and constraint drift stays observable.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DarbouxState {
    pub pos: Vec2,
    pub q: f64,
    pub p0: Vec2,
    pub p: f64,
    pub phi: Vec2,
}

impl DarbouxState {
    /// Flatten the canonical part in the order `(x, y, q, p0x, p0y, p)`.
    pub fn flatten(&self) -> [f64; 6] {
        [self.pos.x, self.pos.y, self.q, self.p0.x, self.p0.y, self.p]
    }

    pub fn unflatten(v: &[f64; 6], phi: Vec2) -> Self {
        Self {
            pos: Vec2::new(v[0], v[1]),
            q: v[2],
            p0: Vec2::new(v[3], v[4]),
            p: v[5],
            phi,
        }
    }
}

/// Coordinates `(J_R, J_X, J_Y, l^2)` on the dual oscillator algebra.
/// `lsq >= 0` always; regular reduction additionally needs `lsq > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ReducedState {
    pub jr: f64,
    pub jx: f64,
    pub jy: f64,
    pub lsq: f64,
}

impl ReducedState {
    pub fn new(jr: f64, jx: f64, jy: f64, lsq: f64) -> Self {
        Self { jr, jx, jy, lsq }
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.jr, self.jx, self.jy, self.lsq]
    }

    pub fn from_array(v: &[f64; 4]) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }
}

/// Third jet of a plane curve, the data the Euler-Lagrange residual needs.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet3 {
    pub pos: Vec2,
    pub vel: Vec2,
    pub acc: Vec2,
    pub jerk: Vec2,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatten_ordering_contract() {
        let z = FullState {
            pos: Vec2::new(1.0, 0.0),
            ..Default::default()
        };
        assert_eq!(z.flatten(), [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);

        let z = FullState {
            p1: Vec2::new(0.0, 5.0),
            ..Default::default()
        };
        assert_eq!(z.flatten()[7], 5.0);
    }

    #[test]
    fn flatten_round_trip() {
        let z = FullState::new(
            Vec2::new(0.3, -1.2),
            Vec2::new(2.0, 0.7),
            Vec2::new(-0.5, 0.9),
            Vec2::new(1.1, -0.4),
        );
        assert_eq!(FullState::unflatten(&z.flatten()), z);
    }
}
