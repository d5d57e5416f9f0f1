//! Poisson structures of the chiral oscillator and the generic Dirac
//! bracket constructor, plus numerical checkers for antisymmetry, the
//! Jacobi identity, and the Casimir property.
//!
//! The Dirac bracket exists twice on purpose: once assembled literally
//! from its coordinate-function table and once derived from the textbook
//! construction `{f,g}_D = {f,g} - {f,phi_a} (C^-1)^{ab} {phi_b,g}`.
//! Their entrywise equality is a test, and the constructor is the
//! authoritative side whenever the two could disagree.

use alloc::borrow::Cow;
use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hamiltonians::ScalarField;
use crate::linalg::Mat;
use crate::params::Params;
use crate::state::{
    ReducedState, DARBOUX_COORDS, FULL_COORDS, REDUCED_COORDS, SE2_COORDS, VELOCITY_CHART_COORDS,
};

type MatrixFn = Box<dyn Fn(&[f64]) -> Mat + Send + Sync>;
type MatrixDerivFn = Box<dyn Fn(&[f64], usize) -> Mat + Send + Sync>;

/// A named map from a state to an antisymmetric structure matrix, with
/// coordinate labels and, when cheap, the analytic derivative of the
/// matrix in each coordinate direction.
pub struct PoissonStructure {
    pub name: Cow<'static, str>,
    pub dim: usize,
    pub coords: &'static [&'static str],
    matrix_fn: MatrixFn,
    matrix_deriv: Option<MatrixDerivFn>,
}

impl PoissonStructure {
    pub fn new(
        name: impl Into<Cow<'static, str>>,
        dim: usize,
        coords: &'static [&'static str],
        matrix_fn: impl Fn(&[f64]) -> Mat + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            dim,
            coords,
            matrix_fn: Box::new(matrix_fn),
            matrix_deriv: None,
        }
    }

    pub fn with_deriv(
        mut self,
        deriv: impl Fn(&[f64], usize) -> Mat + Send + Sync + 'static,
    ) -> Self {
        self.matrix_deriv = Some(Box::new(deriv));
        self
    }

    /// A constant structure: the matrix is state-independent and the
    /// derivative vanishes identically.
    pub fn constant(
        name: impl Into<Cow<'static, str>>,
        coords: &'static [&'static str],
        matrix: Mat,
    ) -> Self {
        let dim = matrix.dim();
        let zero = Mat::zeros(dim);
        Self::new(name, dim, coords, move |_| matrix.clone())
            .with_deriv(move |_, _| zero.clone())
    }

    pub fn matrix(&self, z: &[f64]) -> Result<Mat> {
        self.check_dim(z)?;
        Ok((self.matrix_fn)(z))
    }

    /// `dP/dz_l`, analytic when registered, else central differences
    /// with step `1e-6 * max(1, |z_l|)` (exact for linear structures up
    /// to roundoff).
    pub fn matrix_deriv(&self, z: &[f64], l: usize) -> Result<Mat> {
        self.check_dim(z)?;
        if let Some(d) = &self.matrix_deriv {
            return Ok(d(z, l));
        }
        let h = 1e-6 * crate::math::abs(z[l]).max(1.0);
        let mut zp = z.to_vec();
        let mut zm = z.to_vec();
        zp[l] += h;
        zm[l] -= h;
        let (mp, mm) = ((self.matrix_fn)(&zp), (self.matrix_fn)(&zm));
        Ok(Mat::from_fn(self.dim, |i, j| {
            (mp.get(i, j) - mm.get(i, j)) / (2.0 * h)
        }))
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

/// Second-class constraint functions with analytic gradients.
pub struct ConstraintSet {
    pub constraints: Vec<ScalarField>,
}

impl ConstraintSet {
    /// Gram matrix `C_ab = {phi_a, phi_b}` under the base structure.
    pub fn gram(&self, base: &PoissonStructure, z: &[f64]) -> Result<Mat> {
        let m = self.constraints.len();
        let p = base.matrix(z)?;
        let grads: Vec<Vec<f64>> = self
            .constraints
            .iter()
            .map(|c| c.gradient(z))
            .collect::<Result<_>>()?;
        Ok(Mat::from_fn(m, |a, b| {
            let pb = p.matvec(&grads[b]);
            grads[a].iter().zip(&pb).map(|(g, v)| g * v).sum()
        }))
    }
}

/// The chiral oscillator's second-class constraints
/// `phi_x = p1x - lambda*ydot/2`, `phi_y = p1y + lambda*xdot/2`, with
/// `{phi_x, phi_y}_C = -lambda`.
pub fn chiral_constraints(params: &Params) -> ConstraintSet {
    let l = params.lambda;
    let phi_x = ScalarField::new(
        "phi_x",
        8,
        move |z| z[6] - 0.5 * l * z[3],
        move |_| alloc::vec![0.0, 0.0, 0.0, -0.5 * l, 0.0, 0.0, 1.0, 0.0],
    );
    let phi_y = ScalarField::new(
        "phi_y",
        8,
        move |z| z[7] + 0.5 * l * z[2],
        move |_| alloc::vec![0.0, 0.0, 0.5 * l, 0.0, 0.0, 0.0, 0.0, 1.0],
    );
    ConstraintSet {
        constraints: alloc::vec![phi_x, phi_y],
    }
}

/// Canonical symplectic structure on the Ostrogradskii phase space in
/// the frozen order: block form `[[0, I4], [-I4, 0]]`, pairing each of
/// `(x, y, xdot, ydot)` with its conjugate momentum.
pub fn canonical_bracket() -> PoissonStructure {
    let mut m = Mat::zeros(8);
    for i in 0..4 {
        m.set_skew(i, i + 4, 1.0);
    }
    PoissonStructure::constant("canonical", &FULL_COORDS, m)
}

/// Dirac bracket matrix at `z` built from the base structure and a
/// second-class constraint set:
/// `D = P + (P grad phi_a) (C^-1)^{ab} (P grad phi_b)^T`.
/// Fails with `SingularGramMatrix` when `|det C| < 1e-12`.
pub fn dirac_bracket_from_constraints(
    base: &PoissonStructure,
    cs: &ConstraintSet,
    z: &[f64],
) -> Result<Mat> {
    let p = base.matrix(z)?;
    let gram = cs.gram(base, z)?;
    let det = gram.determinant();
    if crate::math::abs(det) < 1e-12 {
        return Err(Error::SingularGramMatrix { det });
    }
    let inv = gram.inverse().ok_or(Error::SingularGramMatrix { det })?;
    // columns of G: the Hamiltonian vector fields P grad(phi_a)
    let fields: Vec<Vec<f64>> = cs
        .constraints
        .iter()
        .map(|c| Ok(p.matvec(&c.gradient(z)?)))
        .collect::<Result<_>>()?;
    let m = cs.constraints.len();
    let n = base.dim;
    Ok(Mat::from_fn(n, |i, j| {
        let mut v = p.get(i, j);
        for a in 0..m {
            for b in 0..m {
                v += fields[a][i] * inv.get(a, b) * fields[b][j];
            }
        }
        v
    }))
}

/// Dirac bracket assembled literally from its coordinate-function table:
/// `{x,p0x} = {y,p0y} = 1`, `{xdot,ydot} = 1/lambda`,
/// `{xdot,p1x} = {ydot,p1y} = 1/2`, `{p1x,p1y} = lambda/4`, all other
/// independent pairs zero. Constant in the state, equal entrywise to the
/// generic constructor.
pub fn dirac_bracket_closed_form(params: &Params) -> PoissonStructure {
    let l = params.lambda;
    let mut m = Mat::zeros(8);
    m.set_skew(0, 4, 1.0); // {x, p0x}
    m.set_skew(1, 5, 1.0); // {y, p0y}
    m.set_skew(2, 3, 1.0 / l); // {xdot, ydot}
    m.set_skew(2, 6, 0.5); // {xdot, p1x}
    m.set_skew(3, 7, 0.5); // {ydot, p1y}
    m.set_skew(6, 7, 0.25 * l); // {p1x, p1y}
    PoissonStructure::constant("dirac", &FULL_COORDS, m)
}

/// Chart for the bracket on the final constraint submanifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinalChart {
    /// Darboux coordinates `(x, y, q, p0x, p0y, p)`; fully canonical.
    Darboux,
    /// Velocity coordinates `(x, y, xdot, p0x, p0y, ydot)`, where the
    /// velocity pair keeps `{xdot, ydot} = 1/lambda`.
    Velocity,
}

/// Constant bracket on the 6-dimensional final constraint submanifold in
/// the requested chart.
pub fn final_bracket(params: &Params, chart: FinalChart) -> PoissonStructure {
    let mut m = Mat::zeros(6);
    m.set_skew(0, 3, 1.0); // {x, p0x}
    m.set_skew(1, 4, 1.0); // {y, p0y}
    match chart {
        FinalChart::Darboux => {
            m.set_skew(2, 5, 1.0); // {q, p}
            PoissonStructure::constant("final_darboux", &DARBOUX_COORDS, m)
        }
        FinalChart::Velocity => {
            m.set_skew(2, 5, 1.0 / params.lambda); // {xdot, ydot}
            PoissonStructure::constant("final_velocity", &VELOCITY_CHART_COORDS, m)
        }
    }
}

/// Lie-Poisson matrix of `se(2)*` at `(mu, p0x, p0y)`.
pub fn se2_lie_poisson(mu_p: &[f64; 3]) -> Mat {
    let mut m = Mat::zeros(3);
    m.set_skew(0, 1, -mu_p[2]);
    m.set_skew(0, 2, mu_p[1]);
    m
}

/// `se(2)*` as a structure for the checkers (linear, so its coordinate
/// derivatives are constant matrices).
pub fn se2_structure() -> PoissonStructure {
    PoissonStructure::new("se2", 3, &SE2_COORDS, |v| {
        se2_lie_poisson(&[v[0], v[1], v[2]])
    })
    .with_deriv(|_, l| {
        let mut d = Mat::zeros(3);
        match l {
            1 => d.set_skew(0, 2, 1.0),
            2 => d.set_skew(0, 1, -1.0),
            _ => {}
        }
        d
    })
}

/// Lie-Poisson matrix of the dual oscillator algebra at
/// `(J_R, J_X, J_Y, l^2)`: `{J_R,J_X} = J_Y`, `{J_R,J_Y} = -J_X`,
/// `{J_X,J_Y} = l^2/lambda`, with the `l^2` row and column zero.
pub fn osc_lie_poisson(s: &ReducedState, params: &Params) -> Mat {
    let mut m = Mat::zeros(4);
    m.set_skew(0, 1, s.jy);
    m.set_skew(0, 2, -s.jx);
    m.set_skew(1, 2, s.lsq / params.lambda);
    m
}

/// The dual oscillator algebra as a structure for the checkers.
pub fn osc_structure(params: Params) -> PoissonStructure {
    let l = params.lambda;
    PoissonStructure::new("osc", 4, &REDUCED_COORDS, move |v| {
        osc_lie_poisson(&ReducedState::new(v[0], v[1], v[2], v[3]), &params)
    })
    .with_deriv(move |_, k| {
        let mut d = Mat::zeros(4);
        match k {
            1 => d.set_skew(0, 2, -1.0),
            2 => d.set_skew(0, 1, 1.0),
            3 => d.set_skew(1, 2, 1.0 / l),
            _ => {}
        }
        d
    })
}

/// The 3-dimensional block of the reduced structure at frozen `l^2`,
/// on coordinates `(J_R, J_X, J_Y)`.
pub fn osc_structure_3(params: Params, lsq: f64) -> PoissonStructure {
    const COORDS3: [&str; 3] = ["jr", "jx", "jy"];
    let l = params.lambda;
    PoissonStructure::new("osc3", 3, &COORDS3, move |v| {
        let mut m = Mat::zeros(3);
        m.set_skew(0, 1, v[2]);
        m.set_skew(0, 2, -v[1]);
        m.set_skew(1, 2, lsq / l);
        m
    })
    .with_deriv(move |_, k| {
        let mut d = Mat::zeros(3);
        match k {
            1 => d.set_skew(0, 2, -1.0),
            2 => d.set_skew(0, 1, 1.0),
            _ => {}
        }
        d
    })
}

/// `{f, g}(z) = grad f(z)^T P(z) grad g(z)`.
pub fn bracket_of_functions(
    p: &PoissonStructure,
    f: &ScalarField,
    g: &ScalarField,
    z: &[f64],
) -> Result<f64> {
    if f.dim != p.dim || g.dim != p.dim {
        return Err(Error::DimensionMismatch {
            expected: p.dim,
            got: if f.dim != p.dim { f.dim } else { g.dim },
        });
    }
    let m = p.matrix(z)?;
    let gf = f.gradient(z)?;
    let pg = m.matvec(&g.gradient(z)?);
    Ok(gf.iter().zip(&pg).map(|(a, b)| a * b).sum())
}

/// Largest Jacobi cyclic sum
/// `sum_l P_il d_l P_jk + P_jl d_l P_ki + P_kl d_l P_ij` over index
/// triples `i < j < k`; zero iff the structure satisfies the Jacobi
/// identity at `z`.
pub fn check_jacobi(p: &PoissonStructure, z: &[f64]) -> Result<f64> {
    let n = p.dim;
    let m = p.matrix(z)?;
    let derivs: Vec<Mat> = (0..n)
        .map(|l| p.matrix_deriv(z, l))
        .collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut sum = 0.0;
                for l in 0..n {
                    sum += m.get(i, l) * derivs[l].get(j, k)
                        + m.get(j, l) * derivs[l].get(k, i)
                        + m.get(k, l) * derivs[l].get(i, j);
                }
                worst = worst.max(crate::math::abs(sum));
            }
        }
    }
    Ok(worst)
}

/// Max-norm of `P(z) grad c(z)`; zero iff `c` is a Casimir at `z`.
pub fn check_casimir(p: &PoissonStructure, c: &ScalarField, z: &[f64]) -> Result<f64> {
    if c.dim != p.dim {
        return Err(Error::DimensionMismatch {
            expected: p.dim,
            got: c.dim,
        });
    }
    let v = p.matrix(z)?.matvec(&c.gradient(z)?);
    Ok(crate::math::max_abs(&v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params(lambda: f64) -> Params {
        Params::new(lambda, 1.0).unwrap()
    }

    #[test]
    fn canonical_block_form() {
        let p = canonical_bracket();
        let m = p.matrix(&[0.0; 8]).unwrap();
        assert_eq!(m.get(0, 4), 1.0); // {x, p0x}
        assert_eq!(m.get(0, 1), 0.0); // {x, y}
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_eq!(m.get(i, j + 4), expect);
                assert_eq!(m.get(i + 4, j), -expect);
                assert_eq!(m.get(i, j), 0.0);
                assert_eq!(m.get(i + 4, j + 4), 0.0);
            }
        }
    }

    #[test]
    fn constraint_gram_is_minus_lambda() {
        for lambda in [0.5, 1.0, 2.0, -1.0] {
            let pr = params(lambda);
            let cs = chiral_constraints(&pr);
            let g = cs.gram(&canonical_bracket(), &[0.1; 8]).unwrap();
            assert_abs_diff_eq!(g.get(0, 1), -lambda, epsilon = 1e-15);
            assert_abs_diff_eq!(g.get(1, 0), lambda, epsilon = 1e-15);
        }
    }

    #[test]
    fn dirac_constructor_reproduces_table_entries() {
        let pr = params(2.0);
        let cs = chiral_constraints(&pr);
        let d = dirac_bracket_from_constraints(&canonical_bracket(), &cs, &[0.3; 8]).unwrap();
        assert_abs_diff_eq!(d.get(2, 3), 1.0 / 2.0, epsilon = 1e-15); // {xdot, ydot} = 1/lambda
        assert_abs_diff_eq!(d.get(2, 6), 0.5, epsilon = 1e-15); // {xdot, p1x}
        assert_abs_diff_eq!(d.get(6, 7), 0.5, epsilon = 1e-15); // {p1x, p1y} = lambda/4
        assert_abs_diff_eq!(d.get(0, 4), 1.0, epsilon = 1e-15); // {x, p0x} unchanged
        assert_abs_diff_eq!(d.get(3, 7), 0.5, epsilon = 1e-15); // {ydot, p1y}
    }

    #[test]
    fn closed_form_matches_constructor_entrywise() {
        for lambda in [0.5, 1.0, 2.0, -1.0, 0.37] {
            let pr = params(lambda);
            let cs = chiral_constraints(&pr);
            let base = canonical_bracket();
            let built = dirac_bracket_from_constraints(&base, &cs, &[0.7; 8]).unwrap();
            let table = dirac_bracket_closed_form(&pr).matrix(&[0.7; 8]).unwrap();
            assert!(built.max_abs_diff(&table) < 1e-12);
            assert_eq!(table.antisymmetry_defect(), 0.0);
        }
    }

    #[test]
    fn singular_gram_detected() {
        // A constraint set whose two functions coincide is first class.
        let pr = params(1.0);
        let mut cs = chiral_constraints(&pr);
        cs.constraints.pop();
        let phi = ScalarField::new(
            "phi_x_again",
            8,
            move |z| z[6] - 0.5 * z[3],
            move |_| alloc::vec![0.0, 0.0, 0.0, -0.5, 0.0, 0.0, 1.0, 0.0],
        );
        cs.constraints.push(phi);
        let err = dirac_bracket_from_constraints(&canonical_bracket(), &cs, &[0.0; 8]);
        assert!(matches!(err, Err(Error::SingularGramMatrix { .. })));
    }

    #[test]
    fn final_bracket_charts() {
        let pr = params(4.0);
        let darboux = final_bracket(&pr, FinalChart::Darboux);
        let m = darboux.matrix(&[0.0; 6]).unwrap();
        assert_eq!(m.get(2, 5), 1.0); // {q, p}
        assert_eq!(m.get(0, 1), 0.0); // {x, y}
        let vel = final_bracket(&pr, FinalChart::Velocity);
        let m = vel.matrix(&[0.0; 6]).unwrap();
        assert_eq!(m.get(2, 5), 0.25); // {xdot, ydot} = 1/lambda
    }

    #[test]
    fn se2_matrix_pattern() {
        let m = se2_lie_poisson(&[0.0, 1.0, 0.0]);
        assert_eq!(m.get(0, 2), 1.0); // entry (1,3) = p0x
        assert_eq!(m.get(0, 1), 0.0);
        assert_eq!(se2_lie_poisson(&[0.0, 0.0, 0.0]).max_abs(), 0.0);
    }

    #[test]
    fn se2_lsq_gradient_in_kernel() {
        let v = [0.4, -1.3, 0.8];
        let m = se2_lie_poisson(&v);
        let grad = [0.0, 2.0 * v[1], 2.0 * v[2]];
        assert!(crate::math::max_abs(&m.matvec(&grad)) < 1e-15);
    }

    #[test]
    fn osc_matrix_relations() {
        let pr = params(2.0);
        let s = ReducedState::new(0.3, -0.8, 1.1, 1.7);
        let m = osc_lie_poisson(&s, &pr);
        assert_eq!(m.get(0, 1), s.jy); // {J_R, J_X} = J_Y
        assert_eq!(m.get(1, 2), s.lsq / 2.0); // {J_X, J_Y} = l^2/lambda
        assert_eq!(m.antisymmetry_defect(), 0.0);
        for k in 0..4 {
            assert_eq!(m.get(3, k), 0.0);
            assert_eq!(m.get(k, 3), 0.0);
        }
    }

    #[test]
    fn bracket_of_canonical_pair() {
        let p = canonical_bracket();
        let x = ScalarField::new("x", 8, |z| z[0], |_| {
            let mut g = alloc::vec![0.0; 8];
            g[0] = 1.0;
            g
        });
        let p0x = ScalarField::new("p0x", 8, |z| z[4], |_| {
            let mut g = alloc::vec![0.0; 8];
            g[4] = 1.0;
            g
        });
        assert_eq!(bracket_of_functions(&p, &x, &p0x, &[0.2; 8]).unwrap(), 1.0);
    }

    #[test]
    fn bracket_dimension_mismatch() {
        let p = canonical_bracket();
        let f = ScalarField::new("f", 3, |v| v[0], |_| alloc::vec![1.0, 0.0, 0.0]);
        assert!(matches!(
            bracket_of_functions(&p, &f, &f, &[0.0; 8]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn jacobi_exact_for_constant_and_linear() {
        assert_eq!(check_jacobi(&canonical_bracket(), &[0.5; 8]).unwrap(), 0.0);
        let r = check_jacobi(&osc_structure(params(1.5)), &[0.2, -0.9, 1.4, 1.1]).unwrap();
        assert!(r < 1e-12);
    }

    #[test]
    fn jacobi_fd_fallback_close_for_linear() {
        // Same structure without the registered derivative.
        let pr = params(1.5);
        let p = PoissonStructure::new("osc_fd", 4, &REDUCED_COORDS, move |v| {
            osc_lie_poisson(&ReducedState::new(v[0], v[1], v[2], v[3]), &pr)
        });
        let r = check_jacobi(&p, &[0.2, -0.9, 1.4, 1.1]).unwrap();
        assert!(r < 1e-6);
    }

    #[test]
    fn squaring_entry_in_place_does_not_break_jacobi() {
        // Squaring {J_R, J_X} = J_Y in place leaves every cyclic term
        // zero (the derivative slot of each entry pairs with a zero row
        // entry), so the corrupted matrix is still Poisson.
        let pr = params(1.0);
        let still_ok = PoissonStructure::new("osc_squared", 4, &REDUCED_COORDS, move |v| {
            let mut m = osc_lie_poisson(&ReducedState::new(v[0], v[1], v[2], v[3]), &pr);
            m.set_skew(0, 1, v[2] * v[2]);
            m
        });
        let r = check_jacobi(&still_ok, &[0.7, 1.3, 1.9, 1.2]).unwrap();
        assert!(r < 1e-8, "in-place squaring unexpectedly broke Jacobi: {r}");
    }

    #[test]
    fn corrupted_matrix_fails_jacobi() {
        // Moving the dependence of {J_R, J_X} onto J_X makes the cyclic
        // sum pick up the nonzero {J_Y, J_X} row entry.
        let pr = params(1.0);
        let bad = PoissonStructure::new("osc_bad", 4, &REDUCED_COORDS, move |v| {
            let mut m = osc_lie_poisson(&ReducedState::new(v[0], v[1], v[2], v[3]), &pr);
            m.set_skew(0, 1, v[1] * v[1]);
            m
        });
        let r = check_jacobi(&bad, &[0.7, 1.3, 1.9, 1.2]).unwrap();
        assert!(r > 1e-3, "corrupted Jacobi residual {r} unexpectedly small");
    }

    #[test]
    fn casimir_checks() {
        let r = check_casimir(
            &se2_structure(),
            &crate::hamiltonians::lsq_field_se2(),
            &[0.3, 1.2, -0.4],
        )
        .unwrap();
        assert!(r < 1e-15);
        let pr = params(2.0);
        let r = check_casimir(
            &osc_structure(pr),
            &crate::hamiltonians::lsq_field_osc(),
            &[0.3, 1.2, -0.4, 1.5],
        )
        .unwrap();
        assert_eq!(r, 0.0);
        // paraboloid function on the 3-block at fixed l^2
        let lsq = 1.5;
        let r = check_casimir(
            &osc_structure_3(pr, lsq),
            &crate::hamiltonians::paraboloid_field_3(pr, lsq),
            &[0.3, 1.2, -0.4],
        )
        .unwrap();
        assert!(r < 1e-12);
    }
}
