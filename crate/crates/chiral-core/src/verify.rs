//! Named, reportable verification checks over every algebraic identity
//! and trajectory claim in the crate, including the expected-fail
//! negative controls that document defects found in the printed bracket
//! tables. Checks are deterministic for a given `(suite, seed, params)`
//! triple: every check draws from its own ChaCha stream keyed by the
//! master seed and the check name, so any failure is reproducible from
//! the report alone.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::brackets::{
    bracket_of_functions, canonical_bracket, check_casimir, check_jacobi, chiral_constraints,
    dirac_bracket_closed_form, dirac_bracket_from_constraints, final_bracket, osc_lie_poisson,
    osc_structure, osc_structure_3, se2_structure, FinalChart, PoissonStructure,
};
use crate::dynamics::{
    analytic_configuration, analytic_jet, analytic_reduced, conservation_summary, integrate,
    project_full_to_reduced, reconstruct, rhs, Formulation, InvariantTriple, Method,
};
use crate::hamiltonians::{
    self, cylinder_field_3, cylinder_noncons_field_3, el_residual, h_canonical, h_dirac, h_final,
    h_reduced, h_reduced_field_3, lsq_field_osc, lsq_field_se2, paraboloid_field_3, ScalarField,
};
use crate::linalg::Mat;
use crate::math;
use crate::params::Params;
use crate::state::{FullState, ReducedState};
use crate::symmetry::{
    act_on_full, act_on_plane, cocycle_full, cocycle_plane, cotangent_lifts,
    cotangent_plane_structure, darboux_backward, darboux_forward, darboux_jacobian,
    dirac_lift_fields, dirac_lift_generators, generators_plane, invariant_fields_canonical,
    invariant_fields_dirac, invariants_canonical, invariants_dirac, lie_bracket,
    momentum_map_cotangent_plane, momentum_map_full, mu_field, tangent_lifts, Generator,
    GroupElement, VectorField,
};
use crate::vec2::Vec2;

/// One verification outcome. `passed` holds iff `residual <= tolerance`;
/// expected-fail negative controls therefore report `passed = false`
/// with `control = true`, and a healthy build has every non-control
/// check passing and every control failing.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
    pub n_samples: usize,
    pub notes: String,
    pub control: bool,
}

impl CheckResult {
    /// A control behaved as documented iff it failed its tolerance.
    pub fn as_expected(&self) -> bool {
        self.passed != self.control
    }
}

/// Check groups, selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    Brackets,
    Hamiltonians,
    Dynamics,
    Reduction,
    All,
}

impl Suite {
    pub fn from_name(name: &str) -> Option<Suite> {
        Some(match name {
            "algebra" => Suite::Algebra,
            "brackets" => Suite::Brackets,
            "hamiltonians" => Suite::Hamiltonians,
            "dynamics" => Suite::Dynamics,
            "reduction" => Suite::Reduction,
            "all" => Suite::All,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Brackets => "brackets",
            Suite::Hamiltonians => "hamiltonians",
            Suite::Dynamics => "dynamics",
            Suite::Reduction => "reduction",
            Suite::All => "all",
        }
    }
}

/// Seeded sampler; every check owns a stream keyed by `(seed, name)`.
struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    fn for_check(seed: u64, name: &str) -> Self {
        // FNV-1a over the check name, folded into the master seed.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in name.as_bytes() {
            h ^= *b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed ^ h),
        }
    }

    fn unit(&mut self) -> f64 {
        // 53 uniform mantissa bits
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Coordinates uniform in [-2, 2], rejecting |p0| < 0.1 per the
    /// regularity assumption.
    fn full_state(&mut self) -> FullState {
        loop {
            let mut v = [0.0; 8];
            for x in v.iter_mut() {
                *x = self.range(-2.0, 2.0);
            }
            let z = FullState::unflatten(&v);
            if z.p0.norm() >= 0.1 {
                return z;
            }
        }
    }

    fn on_surface_state(&mut self, lambda: f64) -> FullState {
        self.full_state().onto_constraint_surface(lambda)
    }

    fn reduced_state(&mut self) -> ReducedState {
        ReducedState::new(
            self.range(-2.0, 2.0),
            self.range(-2.0, 2.0),
            self.range(-2.0, 2.0),
            self.range(0.1, 2.0),
        )
    }

    fn vec2(&mut self) -> Vec2 {
        Vec2::new(self.range(-2.0, 2.0), self.range(-2.0, 2.0))
    }

    fn group_element(&mut self) -> GroupElement {
        GroupElement::new(
            self.range(-core::f64::consts::PI, core::f64::consts::PI),
            self.vec2(),
        )
    }

    /// Nonzero chirality coefficient away from the origin, either sign.
    fn lambda(&mut self) -> f64 {
        let mag = self.range(0.25, 2.5);
        if self.unit() < 0.5 {
            -mag
        } else {
            mag
        }
    }
}

struct Check {
    name: &'static str,
    suite: Suite,
    run: fn(&mut Sampler, &Params) -> CheckResult,
}

fn result(
    name: &str,
    residual: f64,
    tolerance: f64,
    n_samples: usize,
    notes: impl Into<String>,
) -> CheckResult {
    CheckResult {
        name: String::from(name),
        passed: residual <= tolerance,
        residual,
        tolerance,
        n_samples,
        notes: notes.into(),
        control: false,
    }
}

fn control(
    name: &str,
    residual: f64,
    tolerance: f64,
    n_samples: usize,
    notes: impl Into<String>,
) -> CheckResult {
    CheckResult {
        control: true,
        ..result(name, residual, tolerance, n_samples, notes)
    }
}

/// Run one suite (or everything) deterministically. Results come back
/// sorted by name; each registered check appears in exactly one suite.
pub fn run_suite(suite: Suite, seed: u64, params: &Params) -> Vec<CheckResult> {
    let mut results: Vec<CheckResult> = REGISTRY
        .iter()
        .filter(|c| suite == Suite::All || c.suite == suite)
        .map(|c| {
            let mut sampler = Sampler::for_check(seed, c.name);
            (c.run)(&mut sampler, params)
        })
        .collect();
    results.sort_by(|a, b| a.name.cmp(&b.name));
    results
}

/// True iff every non-control check passed and every control failed as
/// documented.
pub fn all_as_expected(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.as_expected())
}

// ---------------------------------------------------------------------
// algebra suite: commutator tables, lifts, momentum maps, cocycles
// ---------------------------------------------------------------------

/// Worst deviation of the generator commutators from the se(2) table.
/// The Jacobi-Lie brackets of left-action generators close with the
/// opposite sign to the algebra table ([R,X] = -Y rather than +Y); the
/// table is asserted in that convention, which is also the one that
/// makes the two-cocycle come out constant.
fn se2_table_residual(fields: &[VectorField; 3], pts: &[Vec<f64>]) -> f64 {
    let [r, x, y] = fields;
    let mut worst = 0.0f64;
    for z in pts {
        let rx = lie_bracket(r, x, z).expect("dims");
        let yv = y.value(z).expect("dims");
        worst = worst.max(
            rx.iter()
                .zip(&yv)
                .fold(0.0f64, |acc, (a, b)| acc.max(math::abs(a + b))),
        );
        let ry = lie_bracket(r, y, z).expect("dims");
        let xv = x.value(z).expect("dims");
        worst = worst.max(math::max_abs_diff(&ry, &xv));
        let xy = lie_bracket(x, y, z).expect("dims");
        worst = worst.max(math::max_abs(&xy));
    }
    worst
}

fn check_se2_generators(s: &mut Sampler, _p: &Params) -> CheckResult {
    let pts: Vec<Vec<f64>> = (0..100)
        .map(|_| alloc::vec![s.range(-2.0, 2.0), s.range(-2.0, 2.0)])
        .collect();
    let r = se2_table_residual(&generators_plane(), &pts);
    result(
        "se2_generators_close",
        r,
        1e-9,
        pts.len(),
        "plane generators close per the se(2) table (left-action sign convention)",
    )
}

fn check_tangent_lifts(s: &mut Sampler, _p: &Params) -> CheckResult {
    let pts: Vec<Vec<f64>> = (0..100)
        .map(|_| (0..4).map(|_| s.range(-2.0, 2.0)).collect())
        .collect();
    let r = se2_table_residual(&tangent_lifts(), &pts);
    result(
        "se2_tangent_lifts_close",
        r,
        1e-9,
        pts.len(),
        "tangent lifts inherit the se(2) commutator table",
    )
}

fn check_cotangent_lifts(s: &mut Sampler, _p: &Params) -> CheckResult {
    let pts: Vec<Vec<f64>> = (0..100)
        .map(|_| s.full_state().flatten().to_vec())
        .collect();
    let r = se2_table_residual(&cotangent_lifts(), &pts);
    result(
        "se2_cotangent_lifts_close",
        r,
        1e-9,
        pts.len(),
        "cotangent lifts of tangent lifts inherit the se(2) commutator table",
    )
}

fn check_cotangent_lifts_hamiltonian(s: &mut Sampler, _p: &Params) -> CheckResult {
    let pc = canonical_bracket();
    let lifts = cotangent_lifts();
    let momenta = [
        mu_field(),
        ScalarField::new("p0x", 8, |z| z[4], |_| {
            let mut g = alloc::vec![0.0; 8];
            g[4] = 1.0;
            g
        }),
        ScalarField::new("p0y", 8, |z| z[5], |_| {
            let mut g = alloc::vec![0.0; 8];
            g[5] = 1.0;
            g
        }),
    ];
    let mut worst = 0.0f64;
    let n = 100;
    for _ in 0..n {
        let z = s.full_state().flatten();
        for (lift, j) in lifts.iter().zip(momenta.iter()) {
            let field = pc.matrix(&z).unwrap().matvec(&j.gradient(&z).unwrap());
            worst = worst.max(math::max_abs_diff(&field, &lift.value(&z).unwrap()));
        }
    }
    result(
        "cotangent_lifts_hamiltonian",
        worst,
        1e-12,
        n,
        "each cotangent lift equals P_C grad(J) for its momentum component",
    )
}

fn check_dirac_lifts_hamiltonian(s: &mut Sampler, p: &Params) -> CheckResult {
    let pd = dirac_bracket_closed_form(p);
    let fields = dirac_lift_fields(*p);
    let gens = dirac_lift_generators(*p);
    let mut worst = 0.0f64;
    let n = 100;
    for _ in 0..n {
        let z = s.full_state().flatten();
        for (f, j) in fields.iter().zip(gens.iter()) {
            let expect = pd.matrix(&z).unwrap().matvec(&j.gradient(&z).unwrap());
            worst = worst.max(math::max_abs_diff(&expect, &f.value(&z).unwrap()));
        }
    }
    result(
        "dirac_lifts_hamiltonian",
        worst,
        1e-12,
        n,
        "each lifted field equals P_D grad(J) for its invariant",
    )
}

fn check_dirac_lifts_close(s: &mut Sampler, p: &Params) -> CheckResult {
    let [f_r, f_x, f_y, f_lsq] = dirac_lift_fields(*p);
    let mut worst = 0.0f64;
    let n = 200;
    for _ in 0..n {
        let z = s.full_state().flatten();
        // [F_R, F_X] = -F_Y
        let lhs = lie_bracket(&f_r, &f_x, &z).unwrap();
        let rhs = f_y.value(&z).unwrap();
        worst = worst.max(
            lhs.iter()
                .zip(&rhs)
                .fold(0.0f64, |acc, (a, b)| acc.max(math::abs(a + b))),
        );
        // [F_R, F_Y] = F_X
        let lhs = lie_bracket(&f_r, &f_y, &z).unwrap();
        worst = worst.max(math::max_abs_diff(&lhs, &f_x.value(&z).unwrap()));
        // [F_X, F_Y] = -F_(l^2/lambda)
        let lhs = lie_bracket(&f_x, &f_y, &z).unwrap();
        let rhs = f_lsq.value(&z).unwrap();
        worst = worst.max(
            lhs.iter()
                .zip(&rhs)
                .fold(0.0f64, |acc, (a, b)| acc.max(math::abs(a + b))),
        );
    }
    result(
        "dirac_lifts_oscillator_table",
        worst,
        1e-9,
        n,
        "lifted fields close as the oscillator algebra with the printed signs",
    )
}

fn check_dirac_lift_center(s: &mut Sampler, p: &Params) -> CheckResult {
    let [f_r, f_x, f_y, f_lsq] = dirac_lift_fields(*p);
    let mut worst = 0.0f64;
    let n = 200;
    for _ in 0..n {
        let z = s.full_state().flatten();
        for f in [&f_r, &f_x, &f_y] {
            worst = worst.max(math::max_abs(&lie_bracket(f, &f_lsq, &z).unwrap()));
        }
    }
    result(
        "dirac_lift_center_commutes",
        worst,
        1e-9,
        n,
        "the Casimir field commutes with all lifted generators",
    )
}

fn triple_closure_residual(
    p: &PoissonStructure,
    fields: &[ScalarField; 4],
    lambda: f64,
    pts: &[[f64; 8]],
) -> f64 {
    let [jr, jx, jy, lsq] = fields;
    let mut worst = 0.0f64;
    for z in pts {
        let jy_v = jy.value(z).unwrap();
        let jx_v = jx.value(z).unwrap();
        let lsq_v = lsq.value(z).unwrap();
        let b = bracket_of_functions(p, jr, jx, z).unwrap();
        worst = worst.max(math::abs(b - jy_v));
        let b = bracket_of_functions(p, jr, jy, z).unwrap();
        worst = worst.max(math::abs(b + jx_v));
        let b = bracket_of_functions(p, jx, jy, z).unwrap();
        worst = worst.max(math::abs(b - lsq_v / lambda));
        // l^2 commutes with the triple
        for f in [jr, jx, jy] {
            worst = worst.max(math::abs(bracket_of_functions(p, f, lsq, z).unwrap()));
        }
    }
    worst
}

fn check_osclp_canonical(s: &mut Sampler, p: &Params) -> CheckResult {
    let pts: Vec<[f64; 8]> = (0..1000).map(|_| s.full_state().flatten()).collect();
    let r = triple_closure_residual(
        &canonical_bracket(),
        &invariant_fields_canonical(*p),
        p.lambda,
        &pts,
    );
    result(
        "osclp_closure_canonical_triple",
        r,
        1e-9,
        pts.len(),
        "canonical-bracket invariants close as the oscillator algebra",
    )
}

fn check_osclp_dirac(s: &mut Sampler, p: &Params) -> CheckResult {
    let pts: Vec<[f64; 8]> = (0..1000).map(|_| s.full_state().flatten()).collect();
    let r = triple_closure_residual(
        &dirac_bracket_closed_form(p),
        &invariant_fields_dirac(*p),
        p.lambda,
        &pts,
    );
    result(
        "osclp_closure_dirac_triple",
        r,
        1e-9,
        pts.len(),
        "Dirac-bracket invariants close as the oscillator algebra",
    )
}

fn check_cocycle_values(s: &mut Sampler, _p: &Params) -> CheckResult {
    let mut worst = 0.0f64;
    let n = 100;
    for _ in 0..n {
        let at = s.vec2();
        worst = worst.max(math::abs(cocycle_plane(Generator::X, Generator::Y, at) - 1.0));
        worst = worst.max(math::abs(cocycle_plane(Generator::Y, Generator::R, at)));
        worst = worst.max(math::abs(cocycle_plane(Generator::R, Generator::X, at)));
    }
    result(
        "cocycle_plane_values",
        worst,
        1e-12,
        n,
        "plane cocycle is the constant table Theta(X,Y)=1, Theta(Y,R)=Theta(R,X)=0",
    )
}

fn check_cocycle_identity(s: &mut Sampler, _p: &Params) -> CheckResult {
    // [X,Y] = 0, [Y,R] = -X, [R,X] = -Y in the Jacobi-Lie convention,
    // so the cyclic sum is Theta(0,R) - Theta(X,X) - Theta(Y,Y).
    let mut worst = 0.0f64;
    let n = 50;
    for _ in 0..n {
        let at = s.vec2();
        let term2 = -cocycle_plane(Generator::X, Generator::X, at);
        let term3 = -cocycle_plane(Generator::Y, Generator::Y, at);
        worst = worst.max(math::abs(term2 + term3));
    }
    result(
        "cocycle_identity",
        worst,
        1e-15,
        n,
        "two-cocycle identity holds exactly for the plane realization",
    )
}

fn check_cocycle_full(s: &mut Sampler, p: &Params) -> CheckResult {
    // The defect between the Dirac bracket of the invariants and the
    // image of the algebra bracket is the Casimir l^2/lambda.
    let pd = dirac_bracket_closed_form(p);
    let [_, jx, jy, _] = invariant_fields_dirac(*p);
    let mut worst = 0.0f64;
    let n = 200;
    for _ in 0..n {
        let z = s.full_state();
        let flat = z.flatten();
        let b = bracket_of_functions(&pd, &jx, &jy, &flat).unwrap();
        worst = worst.max(math::abs(b - cocycle_full(&z, p)));
    }
    result(
        "cocycle_full_space",
        worst,
        1e-12,
        n,
        "the extension cocycle on the full space is the Casimir l^2/lambda",
    )
}

fn check_plane_momentum_se2_table(s: &mut Sampler, _p: &Params) -> CheckResult {
    // Components of the T*M momentum map bracket to the se(2)* matrix
    // under the dp0 ^ dx pairing.
    let structure = cotangent_plane_structure();
    let fields = [
        ScalarField::new(
            "mu_plane",
            4,
            |v| v[0] * v[3] - v[1] * v[2],
            |v| alloc::vec![v[3], -v[2], -v[1], v[0]],
        ),
        ScalarField::new("p0x", 4, |v| v[2], |_| alloc::vec![0.0, 0.0, 1.0, 0.0]),
        ScalarField::new("p0y", 4, |v| v[3], |_| alloc::vec![0.0, 0.0, 0.0, 1.0]),
    ];
    let mut worst = 0.0f64;
    let n = 200;
    for _ in 0..n {
        let x = s.vec2();
        let p0 = s.vec2();
        let z = [x.x, x.y, p0.x, p0.y];
        let [mu, px, py] = momentum_map_cotangent_plane(x, p0);
        let expect = crate::brackets::se2_lie_poisson(&[mu, px, py]);
        for i in 0..3 {
            for j in 0..3 {
                let b = bracket_of_functions(&structure, &fields[i], &fields[j], &z).unwrap();
                worst = worst.max(math::abs(b - expect.get(i, j)));
            }
        }
    }
    result(
        "plane_momentum_se2_table",
        worst,
        1e-12,
        n,
        "momentum components on T*M reproduce the se(2)* Lie-Poisson matrix",
    )
}

fn check_lagrangian_invariance(s: &mut Sampler, p: &Params) -> CheckResult {
    let mut worst = 0.0f64;
    let n = 100;
    for _ in 0..n {
        let g = s.group_element();
        let (vel, acc) = (s.vec2(), s.vec2());
        let before = hamiltonians::lagrangian(vel, acc, p);
        let after = hamiltonians::lagrangian(vel.rotate(g.theta), acc.rotate(g.theta), p);
        worst = worst.max(math::abs(before - after));
        // the plane action moves base points only
        let moved = act_on_plane(g, s.vec2());
        let _ = moved;
    }
    result(
        "lagrangian_se2_invariance",
        worst,
        1e-12,
        n,
        "the Lagrangian is invariant under the transformed second jet",
    )
}

fn check_invariants_invariance(s: &mut Sampler, p: &Params) -> CheckResult {
    let mut worst = 0.0f64;
    let n = 100;
    for _ in 0..n {
        let g = s.group_element();
        let z = s.full_state();
        let moved = act_on_full(g, &z);
        let a = invariants_canonical(&z, p).to_array();
        let b = invariants_canonical(&moved, p).to_array();
        worst = worst.max(math::max_abs_diff(&a, &b));
        let a = invariants_dirac(&z, p).to_array();
        let b = invariants_dirac(&moved, p).to_array();
        worst = worst.max(math::max_abs_diff(&a, &b));
    }
    result(
        "invariants_se2_invariance",
        worst,
        1e-12,
        n,
        "both invariant triples are constant along the lifted group action",
    )
}

fn check_invariants_directional(s: &mut Sampler, p: &Params) -> CheckResult {
    let lifts = cotangent_lifts();
    let canonical = invariant_fields_canonical(*p);
    let dirac = invariant_fields_dirac(*p);
    let mut worst = 0.0f64;
    let n = 200;
    for _ in 0..n {
        let z = s.full_state().flatten();
        for f in &lifts {
            let fv = f.value(&z).unwrap();
            for j in canonical.iter().chain(dirac.iter()) {
                let g = j.gradient(&z).unwrap();
                let d: f64 = g.iter().zip(&fv).map(|(a, b)| a * b).sum();
                worst = worst.max(math::abs(d));
            }
        }
    }
    result(
        "invariants_annihilated_by_lifts",
        worst,
        1e-12,
        n,
        "directional derivative of every invariant along every lift vanishes",
    )
}

// ---------------------------------------------------------------------
// brackets suite
// ---------------------------------------------------------------------

fn structures_under_test(p: &Params) -> Vec<(PoissonStructure, usize)> {
    alloc::vec![
        (canonical_bracket(), 8),
        (dirac_bracket_closed_form(p), 8),
        (final_bracket(p, FinalChart::Darboux), 6),
        (se2_structure(), 3),
        (osc_structure(*p), 4),
    ]
}

fn sample_point(s: &mut Sampler, dim: usize) -> Vec<f64> {
    match dim {
        8 => s.full_state().flatten().to_vec(),
        4 => s.reduced_state().to_array().to_vec(),
        _ => (0..dim).map(|_| s.range(-2.0, 2.0)).collect(),
    }
}

fn check_antisymmetry(s: &mut Sampler, p: &Params) -> CheckResult {
    let mut worst = 0.0f64;
    let n = 1000;
    for (structure, dim) in structures_under_test(p) {
        for _ in 0..n {
            let z = sample_point(s, dim);
            worst = worst.max(structure.matrix(&z).unwrap().antisymmetry_defect());
        }
    }
    result(
        "antisymmetry_all_structures",
        worst,
        0.0,
        5 * n,
        "every structure matrix is antisymmetric exactly",
    )
}

fn check_jacobi_all(s: &mut Sampler, p: &Params) -> CheckResult {
    let mut worst = 0.0f64;
    let n = 1000;
    for (structure, dim) in structures_under_test(p) {
        for _ in 0..n {
            let z = sample_point(s, dim);
            worst = worst.max(check_jacobi(&structure, &z).unwrap());
        }
    }
    result(
        "jacobi_all_structures",
        worst,
        1e-9,
        5 * n,
        "Jacobi cyclic sums vanish for every structure (analytic derivatives)",
    )
}

fn check_jacobi_control(s: &mut Sampler, p: &Params) -> CheckResult {
    // Squaring the (J_R, J_X) entry in place would NOT break Jacobi for
    // this matrix (every cyclic term vanishes individually); replacing
    // the entry by J_X^2 moves its dependence onto a coordinate whose
    // paired row entry is nonzero, so the identity genuinely fails.
    let params = *p;
    let bad = PoissonStructure::new(
        "osc_corrupted",
        4,
        &crate::state::REDUCED_COORDS,
        move |v| {
            let mut m = osc_lie_poisson(&ReducedState::new(v[0], v[1], v[2], v[3]), &params);
            m.set_skew(0, 1, v[1] * v[1]);
            m
        },
    );
    let mut worst = 0.0f64;
    let n = 1000;
    for _ in 0..n {
        let z = s.reduced_state().to_array();
        worst = worst.max(check_jacobi(&bad, &z).unwrap());
    }
    control(
        "jacobi_corrupted_control",
        worst,
        1e-3,
        n,
        "negative control: replacing the (J_R,J_X) entry by J_X^2 must break the Jacobi identity",
    )
}

fn check_dirac_oracle(s: &mut Sampler, _p: &Params) -> CheckResult {
    let base = canonical_bracket();
    let mut worst = 0.0f64;
    let n = 20;
    for _ in 0..n {
        let lambda = s.lambda();
        let params = Params::new(lambda, 1.0).unwrap();
        let cs = chiral_constraints(&params);
        let z = s.full_state().flatten();
        let built = dirac_bracket_from_constraints(&base, &cs, &z).unwrap();
        let table = dirac_bracket_closed_form(&params).matrix(&z).unwrap();
        worst = worst.max(built.max_abs_diff(&table));
    }
    result(
        "dirac_constructor_vs_table",
        worst,
        1e-12,
        n,
        "generic Dirac constructor equals the closed-form table entrywise",
    )
}

fn check_dirac_pinned_entries(s: &mut Sampler, _p: &Params) -> CheckResult {
    let base = canonical_bracket();
    let mut worst = 0.0f64;
    for lambda in [0.5, 1.0, 2.0, -1.0] {
        let params = Params::new(lambda, 1.0).unwrap();
        let cs = chiral_constraints(&params);
        let z = s.full_state().flatten();
        let d = dirac_bracket_from_constraints(&base, &cs, &z).unwrap();
        worst = worst.max(math::abs(d.get(2, 3) - 1.0 / lambda)); // {xdot, ydot}
        worst = worst.max(math::abs(d.get(2, 6) - 0.5)); // {xdot, p1x}
        worst = worst.max(math::abs(d.get(3, 7) - 0.5)); // {ydot, p1y}
        worst = worst.max(math::abs(d.get(6, 7) - 0.25 * lambda)); // {p1x, p1y}
        worst = worst.max(math::abs(d.get(0, 4) - 1.0)); // {x, p0x}
        worst = worst.max(math::abs(d.get(1, 5) - 1.0)); // {y, p0y}
    }
    result(
        "dirac_bracket_pinned_entries",
        worst,
        1e-12,
        4,
        "constructed Dirac entries match the table at lambda in {0.5, 1, 2, -1}",
    )
}

fn check_casimir_lsq_se2(s: &mut Sampler, _p: &Params) -> CheckResult {
    let structure = se2_structure();
    let field = lsq_field_se2();
    let mut worst = 0.0f64;
    let n = 100;
    for _ in 0..n {
        let z: Vec<f64> = (0..3).map(|_| s.range(-2.0, 2.0)).collect();
        worst = worst.max(check_casimir(&structure, &field, &z).unwrap());
    }
    result(
        "casimir_lsq_se2",
        worst,
        1e-12,
        n,
        "l^2 annihilates the se(2)* structure",
    )
}

fn check_casimir_lsq_osc(s: &mut Sampler, p: &Params) -> CheckResult {
    let structure = osc_structure(*p);
    let field = lsq_field_osc();
    let mut worst = 0.0f64;
    let n = 100;
    for _ in 0..n {
        let z = s.reduced_state().to_array();
        worst = worst.max(check_casimir(&structure, &field, &z).unwrap());
    }
    result(
        "casimir_lsq_osc",
        worst,
        1e-12,
        n,
        "l^2 commutes with everything on the dual oscillator algebra",
    )
}

fn check_casimir_paraboloid(s: &mut Sampler, p: &Params) -> CheckResult {
    let mut worst = 0.0f64;
    let n = 100;
    for _ in 0..n {
        let lsq = s.range(0.1, 2.0);
        let structure = osc_structure_3(*p, lsq);
        let field = paraboloid_field_3(*p, lsq);
        let z: Vec<f64> = (0..3).map(|_| s.range(-2.0, 2.0)).collect();
        worst = worst.max(check_casimir(&structure, &field, &z).unwrap());
    }
    result(
        "casimir_paraboloid_block",
        worst,
        1e-12,
        n,
        "the paraboloid function is a Casimir of the reduced 3x3 block",
    )
}

fn check_constraints_casimir(s: &mut Sampler, p: &Params) -> CheckResult {
    let pd = dirac_bracket_closed_form(p);
    let cs = chiral_constraints(p);
    let mut worst = 0.0f64;
    let n = 100;
    for _ in 0..n {
        let z = s.full_state().flatten();
        for phi in &cs.constraints {
            worst = worst.max(check_casimir(&pd, phi, &z).unwrap());
        }
    }
    result(
        "constraints_casimir_of_dirac",
        worst,
        1e-15,
        n,
        "both constraints are Casimirs of the Dirac bracket",
    )
}

fn check_gram_value(s: &mut Sampler, _p: &Params) -> CheckResult {
    let base = canonical_bracket();
    let mut worst = 0.0f64;
    let n = 20;
    for _ in 0..n {
        let lambda = s.lambda();
        let params = Params::new(lambda, 1.0).unwrap();
        let cs = chiral_constraints(&params);
        let z = s.full_state().flatten();
        let g = cs.gram(&base, &z).unwrap();
        worst = worst.max(math::abs(g.get(0, 1) + lambda));
        worst = worst.max(math::abs(g.get(1, 0) - lambda));
        worst = worst.max(math::abs(g.get(0, 0)));
        worst = worst.max(math::abs(g.get(1, 1)));
    }
    result(
        "constraint_gram_value",
        worst,
        1e-15,
        n,
        "{phi_x, phi_y} = -lambda under the canonical bracket",
    )
}

fn check_final_congruence(s: &mut Sampler, p: &Params) -> CheckResult {
    let params = if p.lambda > 0.0 {
        *p
    } else {
        Params::new(-p.lambda, p.mass).unwrap()
    };
    let pd = dirac_bracket_closed_form(&params);
    let jac = darboux_jacobian(&params).unwrap();
    let pf = final_bracket(&params, FinalChart::Darboux)
        .matrix(&[0.0; 6])
        .unwrap();
    let mut worst = 0.0f64;
    let n = 100;
    for _ in 0..n {
        let z = s.full_state().flatten();
        let pw = pd.matrix(&z).unwrap().congruence(&jac);
        // expected block: canonical 6x6 in (x, y, q, p0|p) plus zero
        // rows and columns for the constraint pair
        let expected = Mat::from_fn(8, |i, j| {
            if i < 6 && j < 6 {
                pf.get(i, j)
            } else {
                0.0
            }
        });
        worst = worst.max(pw.max_abs_diff(&expected));
    }
    result(
        "final_bracket_congruence",
        worst,
        1e-12,
        n,
        "Darboux congruence of the Dirac bracket gives the canonical 6x6 block plus a zero constraint block",
    )
}

fn check_final_variant_chart(s: &mut Sampler, p: &Params) -> CheckResult {
    // the velocity chart keeps the Dirac submatrix on
    // (x, y, xdot, p0x, p0y, ydot)
    let pd = dirac_bracket_closed_form(p);
    let pf = final_bracket(p, FinalChart::Velocity);
    let idx = [0usize, 1, 2, 4, 5, 3];
    let z = s.full_state().flatten();
    let d = pd.matrix(&z).unwrap();
    let v = pf.matrix(&[0.0; 6]).unwrap();
    let mut worst = 0.0f64;
    for a in 0..6 {
        for b in 0..6 {
            worst = worst.max(math::abs(v.get(a, b) - d.get(idx[a], idx[b])));
        }
    }
    result(
        "final_bracket_velocity_chart",
        worst,
        0.0,
        1,
        "velocity chart restates the Dirac submatrix with {xdot, ydot} = 1/lambda",
    )
}

// ---------------------------------------------------------------------
// hamiltonians suite
// ---------------------------------------------------------------------

fn check_gradients_fd(s: &mut Sampler, p: &Params) -> CheckResult {
    let params = if p.lambda > 0.0 {
        *p
    } else {
        Params::new(-p.lambda, p.mass).unwrap()
    };
    let mut fields: Vec<ScalarField> = alloc::vec![
        hamiltonians::h_canonical_field(params),
        hamiltonians::h_dirac_field(params),
        hamiltonians::h_final_field(params).unwrap(),
        hamiltonians::h_reduced_field(params),
        hamiltonians::lsq_field_se2(),
        hamiltonians::lsq_field_osc(),
        hamiltonians::lsq_field_full(),
        mu_field(),
    ];
    fields.extend(invariant_fields_canonical(params));
    fields.extend(invariant_fields_dirac(params));
    fields.push(cylinder_field_3(params, 1.3));
    fields.push(paraboloid_field_3(params, 1.3));
    let mut worst = 0.0f64;
    let n = 100;
    for field in &fields {
        for _ in 0..n {
            let z = sample_point(s, field.dim);
            let g = field.gradient(&z).unwrap();
            let fd = field.fd_gradient(&z).unwrap();
            for (a, b) in g.iter().zip(&fd) {
                worst = worst.max(math::abs(a - b) / math::abs(*a).max(1.0));
            }
        }
    }
    result(
        "gradients_match_finite_differences",
        worst,
        1e-6,
        fields.len() * n,
        "every analytic gradient matches central differences to relative 1e-6",
    )
}

fn check_hd_equals_hc_on_surface(s: &mut Sampler, p: &Params) -> CheckResult {
    let mut worst = 0.0f64;
    let n = 1000;
    for _ in 0..n {
        let z = s.on_surface_state(p.lambda);
        worst = worst.max(math::abs(h_dirac(&z, p) - h_canonical(&z, p)));
    }
    result(
        "hd_equals_hc_on_surface",
        worst,
        1e-12,
        n,
        "total and canonical Hamiltonians coincide on the constraint surface",
    )
}

fn check_hf_equals_hc_on_surface(s: &mut Sampler, p: &Params) -> CheckResult {
    let params = if p.lambda > 0.0 {
        *p
    } else {
        Params::new(-p.lambda, p.mass).unwrap()
    };
    let mut worst = 0.0f64;
    let n = 1000;
    for _ in 0..n {
        let z = s.on_surface_state(params.lambda);
        let w = darboux_forward(&z, &params).unwrap();
        worst = worst.max(math::abs(h_final(&w, &params).unwrap() - h_canonical(&z, &params)));
    }
    result(
        "hf_darboux_equals_hc_on_surface",
        worst,
        1e-12,
        n,
        "the Darboux-chart Hamiltonian pulls back to the canonical one on the surface",
    )
}

fn check_hred_compositions(s: &mut Sampler, p: &Params) -> CheckResult {
    let mut worst = 0.0f64;
    let n = 1000;
    for _ in 0..n {
        let z = s.full_state();
        let canonical = invariants_canonical(&z, p);
        worst = worst.max(math::abs(h_reduced(&canonical, p) - h_dirac(&z, p)));
        let dirac = invariants_dirac(&z, p);
        worst = worst.max(math::abs(h_reduced(&dirac, p) - h_canonical(&z, p)));
    }
    result(
        "hred_compositions",
        worst,
        1e-12,
        n,
        "reduced Hamiltonian composed with each triple recovers its full Hamiltonian",
    )
}

fn check_h_orbit(s: &mut Sampler, p: &Params) -> CheckResult {
    let mut worst = 0.0f64;
    let n = 1000;
    for _ in 0..n {
        let (jx, jy) = (s.range(-2.0, 2.0), s.range(-2.0, 2.0));
        let lsq = s.range(0.1, 2.0);
        let jr = -0.5 * p.lambda / lsq * (jx * jx + jy * jy);
        let onp = ReducedState::new(jr, jx, jy, lsq);
        let horb = hamiltonians::h_orbit(jx, jy, lsq, p).unwrap();
        worst = worst.max(math::abs(h_reduced(&onp, p) - horb));
    }
    result(
        "h_orbit_on_paraboloid",
        worst,
        1e-12,
        n,
        "orbit Hamiltonian agrees with the reduced one after eliminating J_R",
    )
}

fn check_energy_legendre(s: &mut Sampler, p: &Params) -> CheckResult {
    let mut worst = 0.0f64;
    let n = 200;
    for _ in 0..n {
        let (pos, vel, acc) = (s.vec2(), s.vec2(), s.vec2());
        let z = hamiltonians::legendre_lift(pos, vel, acc, p);
        worst = worst.max(math::abs(hamiltonians::energy(vel, acc, p) - h_canonical(&z, p)));
    }
    result(
        "energy_equals_hc_via_legendre",
        worst,
        1e-12,
        n,
        "the Lagrangian energy is the canonical Hamiltonian through the Legendre lift",
    )
}

fn check_cylinder_bracket(s: &mut Sampler, p: &Params) -> CheckResult {
    let mut worst = 0.0f64;
    let n = 200;
    for _ in 0..n {
        let lsq = s.range(0.1, 2.0);
        let structure = osc_structure_3(*p, lsq);
        let cyl = cylinder_field_3(*p, lsq);
        let hred = h_reduced_field_3(*p);
        let z: Vec<f64> = (0..3).map(|_| s.range(-2.0, 2.0)).collect();
        worst = worst.max(math::abs(
            bracket_of_functions(&structure, &cyl, &hred, &z).unwrap(),
        ));
    }
    result(
        "cylinder_commutes_with_hred",
        worst,
        1e-12,
        n,
        "the conserved cylinder function brackets to zero with the reduced Hamiltonian",
    )
}

fn check_noncons_cylinder_control(s: &mut Sampler, _p: &Params) -> CheckResult {
    // the printed variant J_X^2 - 2*m*l^2*J_X + J_Y^2 at m = 2
    let params = Params::new(1.0, 2.0).unwrap();
    let mut worst = 0.0f64;
    let n = 200;
    for _ in 0..n {
        let lsq = s.range(0.1, 2.0);
        let structure = osc_structure_3(params, lsq);
        let bad = cylinder_noncons_field_3(params, lsq);
        let hred = h_reduced_field_3(params);
        let z: Vec<f64> = (0..3).map(|_| s.range(-2.0, 2.0)).collect();
        worst = worst.max(math::abs(
            bracket_of_functions(&structure, &bad, &hred, &z).unwrap(),
        ));
    }
    control(
        "paper_casimir_bracket_m2_control",
        worst,
        1e-3,
        n,
        "negative control: the printed cylinder variant has bracket (2 l^2/lambda) J_Y (m^2 - 1) with H_red, nonzero at m = 2",
    )
}

// ---------------------------------------------------------------------
// dynamics suite
// ---------------------------------------------------------------------

fn check_rhs_p0_rows(s: &mut Sampler, p: &Params) -> CheckResult {
    let mut worst = 0.0f64;
    let n = 200;
    for _ in 0..n {
        let z = s.full_state().flatten();
        for form in [
            Formulation::CanonicalBracketDiracH,
            Formulation::DiracBracketCanonicalH,
        ] {
            let dz = rhs(form, &z, p).unwrap();
            worst = worst.max(math::abs(dz[4])).max(math::abs(dz[5]));
        }
    }
    result(
        "rhs_p0_rows_zero",
        worst,
        0.0,
        n,
        "linear momenta have identically zero velocity in both full formulations",
    )
}

/// The printed component form of the canonical-bracket equations, with
/// the velocity slots already rewritten through the constraints.
fn printed_he_display(z: &[f64], p: &Params) -> [f64; 8] {
    let (l, m) = (p.lambda, p.mass);
    [
        -2.0 / l * z[7],
        2.0 / l * z[6],
        -m / l * z[3] + z[5] / l,
        m / l * z[2] - z[4] / l,
        0.0,
        0.0,
        -m / l * z[7] - 0.5 * z[4],
        m / l * z[6] - z[5] / l,
    ]
}

fn check_he_display_on_surface(s: &mut Sampler, p: &Params) -> CheckResult {
    let mut worst = 0.0f64;
    let n = 200;
    for _ in 0..n {
        let z = s.on_surface_state(p.lambda).flatten();
        let derived = rhs(Formulation::CanonicalBracketDiracH, &z, p).unwrap();
        let printed = printed_he_display(&z, p);
        for i in 0..8 {
            if i == 7 {
                continue; // the printed p1y slot is a documented typo
            }
            worst = worst.max(math::abs(derived[i] - printed[i]));
        }
    }
    result(
        "he_display_on_surface",
        worst,
        1e-12,
        n,
        "P_C grad(H^D) matches the printed component display on the surface, p1y slot excluded",
    )
}

fn check_he_display_p1y_control(s: &mut Sampler, _p: &Params) -> CheckResult {
    // at lambda = 1 the printed p1y equation disagrees with
    // P_C grad(H^D) by (1/2 - 1/lambda) p0y even on the surface
    let params = Params::new(1.0, 1.0).unwrap();
    let mut worst = 0.0f64;
    let n = 200;
    for _ in 0..n {
        let z = s.on_surface_state(params.lambda).flatten();
        let derived = rhs(Formulation::CanonicalBracketDiracH, &z, &params).unwrap();
        let printed = printed_he_display(&z, &params);
        worst = worst.max(math::abs(derived[7] - printed[7]));
    }
    control(
        "paper_he2_p1y_display_control",
        worst,
        1e-3,
        n,
        "negative control: the printed p1y equation carries 1/lambda where the derived flow has 1/2; P_C grad(H^D) is authoritative",
    )
}

fn check_reduced_fixed_point(s: &mut Sampler, p: &Params) -> CheckResult {
    let lsq = s.range(0.1, 2.0);
    let y0 = [s.range(-2.0, 2.0), lsq / p.mass, 0.0, lsq];
    let dz = rhs(Formulation::ReducedLiePoisson, &y0, p).unwrap();
    let traj = integrate(Formulation::ReducedLiePoisson, &y0, p, 1e-2, 2.0, Method::Rk4).unwrap();
    let mut worst = math::max_abs(&dz);
    for state in &traj.states {
        worst = worst.max(math::max_abs_diff(state, &y0));
    }
    result(
        "reduced_fixed_point",
        worst,
        0.0,
        traj.states.len(),
        "straight-line data (J_Y = 0, J_X = l^2/m) is an exact fixed point",
    )
}

fn standard_initial_state() -> FullState {
    FullState::new(
        Vec2::new(0.2, -0.1),
        Vec2::new(0.8, 0.3),
        Vec2::new(1.0, -0.5),
        Vec2::ZERO,
    )
}

fn check_conservation_full(
    s: &mut Sampler,
    p: &Params,
    form: Formulation,
    name: &'static str,
) -> CheckResult {
    let _ = s;
    let z0 = standard_initial_state().onto_constraint_surface(p.lambda);
    let traj = integrate(form, &z0.flatten(), p, 1e-3, 10.0, Method::Rk4).unwrap();
    let summary = conservation_summary(&traj).unwrap();
    let mut worst = summary.dh / 1e-8;
    worst = worst.max(summary.dmu.unwrap() / 1e-8);
    worst = worst.max(summary.dp0.unwrap() / 1e-13);
    worst = worst.max(summary.max_phi.unwrap() / 1e-8);
    result(
        name,
        worst,
        1.0,
        traj.states.len(),
        "normalized worst drift over [0,10]: |dH|<1e-8, |dmu|<1e-8, |dp0|<1e-13, max|phi|<1e-8",
    )
}

fn check_conservation_canonical(s: &mut Sampler, p: &Params) -> CheckResult {
    check_conservation_full(
        s,
        p,
        Formulation::CanonicalBracketDiracH,
        "conservation_canonical_form",
    )
}

fn check_conservation_dirac(s: &mut Sampler, p: &Params) -> CheckResult {
    check_conservation_full(
        s,
        p,
        Formulation::DiracBracketCanonicalH,
        "conservation_dirac_form",
    )
}

fn check_conservation_darboux(s: &mut Sampler, p: &Params) -> CheckResult {
    let _ = s;
    let params = if p.lambda > 0.0 {
        *p
    } else {
        Params::new(-p.lambda, p.mass).unwrap()
    };
    let z0 = standard_initial_state().onto_constraint_surface(params.lambda);
    let w0 = darboux_forward(&z0, &params).unwrap();
    let traj = integrate(
        Formulation::DarbouxCanonicalH,
        &w0.flatten(),
        &params,
        1e-3,
        10.0,
        Method::Rk4,
    )
    .unwrap();
    let summary = conservation_summary(&traj).unwrap();
    let mut worst = summary.dh / 1e-8;
    worst = worst.max(summary.dmu.unwrap() / 1e-8);
    worst = worst.max(summary.dp0.unwrap() / 1e-13);
    result(
        "conservation_darboux_form",
        worst,
        1.0,
        traj.states.len(),
        "normalized worst drift of H_f, mu, p0 over [0,10] in the Darboux chart",
    )
}

fn check_conservation_reduced(s: &mut Sampler, p: &Params) -> CheckResult {
    let _ = s;
    let z0 = standard_initial_state().onto_constraint_surface(p.lambda);
    let y0 = invariants_dirac(&z0, p).to_array();
    let traj = integrate(Formulation::ReducedLiePoisson, &y0, p, 1e-3, 10.0, Method::Rk4).unwrap();
    let summary = conservation_summary(&traj).unwrap();
    let mut worst = summary.dlsq.unwrap() / 1e-13;
    worst = worst.max(summary.max_paraboloid.unwrap() / 1e-8);
    worst = worst.max(summary.dcylinder.unwrap() / 1e-8);
    result(
        "conservation_reduced_form",
        worst,
        1.0,
        traj.states.len(),
        "normalized drift over [0,10]: |dl^2|<1e-13, paraboloid<1e-8, cylinder<1e-8",
    )
}

fn check_formulation_equivalence(s: &mut Sampler, p: &Params) -> CheckResult {
    let _ = s;
    let params = if p.lambda > 0.0 {
        *p
    } else {
        Params::new(-p.lambda, p.mass).unwrap()
    };
    let z0 = standard_initial_state().onto_constraint_surface(params.lambda);
    let a = integrate(
        Formulation::CanonicalBracketDiracH,
        &z0.flatten(),
        &params,
        1e-3,
        10.0,
        Method::Rk4,
    )
    .unwrap();
    let b = integrate(
        Formulation::DiracBracketCanonicalH,
        &z0.flatten(),
        &params,
        1e-3,
        10.0,
        Method::Rk4,
    )
    .unwrap();
    let w0 = darboux_forward(&z0, &params).unwrap();
    let c = integrate(
        Formulation::DarbouxCanonicalH,
        &w0.flatten(),
        &params,
        1e-3,
        10.0,
        Method::Rk4,
    )
    .unwrap();
    let mut worst = 0.0f64;
    for k in 0..a.states.len() {
        let (pa, pb) = (&a.states[k], &b.states[k]);
        worst = worst
            .max(math::abs(pa[0] - pb[0]))
            .max(math::abs(pa[1] - pb[1]));
        // map the Darboux sample back to the full chart
        let warr = [
            c.states[k][0],
            c.states[k][1],
            c.states[k][2],
            c.states[k][3],
            c.states[k][4],
            c.states[k][5],
        ];
        let w = crate::state::DarbouxState::unflatten(&warr, w0.phi);
        let back = darboux_backward(&w, &params).unwrap().flatten();
        worst = worst
            .max(math::abs(pa[0] - back[0]))
            .max(math::abs(pa[1] - back[1]));
    }
    result(
        "formulation_equivalence",
        worst,
        1e-6,
        a.states.len(),
        "all three full-space formulations produce the same position curve",
    )
}

fn check_reduction_commutes(s: &mut Sampler, p: &Params) -> CheckResult {
    let _ = s;
    let z0 = standard_initial_state().onto_constraint_surface(p.lambda);
    let full = integrate(
        Formulation::CanonicalBracketDiracH,
        &z0.flatten(),
        p,
        1e-3,
        10.0,
        Method::Rk4,
    )
    .unwrap();
    let projected = project_full_to_reduced(&full, InvariantTriple::Canonical, p).unwrap();
    let reduced = integrate(
        Formulation::ReducedLiePoisson,
        &projected.states[0].clone(),
        p,
        1e-3,
        10.0,
        Method::Rk4,
    )
    .unwrap();
    let mut worst = 0.0f64;
    for k in 0..reduced.states.len() {
        worst = worst.max(math::max_abs_diff(&projected.states[k], &reduced.states[k]));
    }
    result(
        "reduction_commutes_with_flow",
        worst,
        1e-6,
        reduced.states.len(),
        "projecting the full flow equals integrating the projected initial state",
    )
}

fn check_projected_lsq_constant(s: &mut Sampler, p: &Params) -> CheckResult {
    let _ = s;
    let z0 = standard_initial_state().onto_constraint_surface(p.lambda);
    let full = integrate(
        Formulation::DiracBracketCanonicalH,
        &z0.flatten(),
        p,
        1e-3,
        10.0,
        Method::Rk4,
    )
    .unwrap();
    let projected = project_full_to_reduced(&full, InvariantTriple::Dirac, p).unwrap();
    let first = projected.states[0][3];
    let mut worst = 0.0f64;
    for state in &projected.states {
        worst = worst.max(math::abs(state[3] - first));
    }
    result(
        "projected_lsq_constant",
        worst,
        1e-13,
        projected.states.len(),
        "the Casimir column of a projected trajectory is constant",
    )
}

/// Max position error of the RK4 reduced run against the closed form.
fn reduced_error_vs_analytic(dt: f64, p: &Params) -> f64 {
    let (a, b, lsq) = (1.0, 0.0, 1.0);
    let (jr0, jx0, jy0) = analytic_reduced(0.0, a, b, lsq, p).unwrap();
    let traj = integrate(
        Formulation::ReducedLiePoisson,
        &[jr0, jx0, jy0, lsq],
        p,
        dt,
        10.0,
        Method::Rk4,
    )
    .unwrap();
    let mut worst = 0.0f64;
    for (t, state) in traj.times.iter().zip(&traj.states) {
        let (jr, jx, jy) = analytic_reduced(*t, a, b, lsq, p).unwrap();
        worst = worst
            .max(math::abs(state[0] - jr))
            .max(math::abs(state[1] - jx))
            .max(math::abs(state[2] - jy));
    }
    worst
}

fn check_rk4_order(s: &mut Sampler, _p: &Params) -> CheckResult {
    let _ = s;
    let params = Params::default();
    let dts = [2e-2, 1e-2, 5e-3];
    let errors: Vec<f64> = dts.iter().map(|dt| reduced_error_vs_analytic(*dt, &params)).collect();
    // least-squares slope of log(err) against log(dt)
    let logs: Vec<(f64, f64)> = dts
        .iter()
        .zip(&errors)
        .map(|(dt, e)| (math::ln(*dt), math::ln(*e)))
        .collect();
    let n = logs.len() as f64;
    let (sx, sy): (f64, f64) = logs.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let sxx: f64 = logs.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = logs.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    result(
        "rk4_convergence_order",
        math::abs(slope - 4.0),
        0.2,
        dts.len(),
        format!("observed order {slope:.3} against the closed-form reduced solution"),
    )
}

fn check_rk4_halving(s: &mut Sampler, _p: &Params) -> CheckResult {
    let _ = s;
    let params = Params::default();
    let e1 = reduced_error_vs_analytic(1e-2, &params);
    let e2 = reduced_error_vs_analytic(5e-3, &params);
    let factor = e1 / e2;
    result(
        "rk4_halving_factor",
        math::abs(factor - 16.0),
        0.2 * 16.0,
        2,
        format!("halving dt reduced the max error by {factor:.2} (expect 16 +- 20%)"),
    )
}

fn check_reconstruction(s: &mut Sampler, _p: &Params) -> CheckResult {
    let _ = s;
    let params = Params::default();
    let (a, b) = (1.0, 0.0);
    let p0 = Vec2::new(1.0, 0.0);
    let x0 = Vec2::new(0.3, -0.2);
    let lsq = p0.norm_sq();
    let (jr0, jx0, jy0) = analytic_reduced(0.0, a, b, lsq, &params).unwrap();
    // integration constant placing the closed-form curve on the anchor
    let (at_zero, _) = analytic_configuration(0.0, a, b, p0, Vec2::ZERO, &params).unwrap();
    let c0 = x0 - at_zero;
    let traj = integrate(
        Formulation::ReducedLiePoisson,
        &[jr0, jx0, jy0, lsq],
        &params,
        1e-3,
        10.0,
        Method::Rk4,
    )
    .unwrap();
    let curve = reconstruct(&traj, p0, x0).unwrap();
    let mut worst = 0.0f64;
    for (t, pos) in curve.times.iter().zip(&curve.positions) {
        let (expect, _) = analytic_configuration(*t, a, b, p0, c0, &params).unwrap();
        worst = worst
            .max(math::abs(pos.x - expect.x))
            .max(math::abs(pos.y - expect.y));
    }
    result(
        "reconstruction_vs_closed_form",
        worst,
        1e-6,
        curve.times.len(),
        "trapezoid reconstruction tracks the closed-form base curve",
    )
}

fn check_analytic_el_residual(s: &mut Sampler, _p: &Params) -> CheckResult {
    let params = Params::default();
    let mut worst = 0.0f64;
    let n = 20;
    for _ in 0..n {
        let t = s.range(0.0, 10.0);
        let (a, b) = (s.range(-1.5, 1.5), s.range(-1.5, 1.5));
        let mut p0 = s.vec2();
        if p0.norm() < 0.3 {
            p0 = Vec2::new(1.0, 0.2);
        }
        let jet = analytic_jet(t, a, b, p0, Vec2::ZERO, &params).unwrap();
        let r = el_residual(&jet, &params);
        worst = worst.max(r.norm());
    }
    result(
        "analytic_el_residual",
        worst,
        1e-10,
        n,
        "the closed-form curve solves the Euler-Lagrange equations",
    )
}

fn check_analytic_reduced_ode(s: &mut Sampler, p: &Params) -> CheckResult {
    let mut worst = 0.0f64;
    let n = 50;
    let h = 1e-6;
    for _ in 0..n {
        let t = s.range(0.0, 10.0);
        let (a, b) = (s.range(-1.5, 1.5), s.range(-1.5, 1.5));
        let lsq = s.range(0.2, 2.0);
        let plus = analytic_reduced(t + h, a, b, lsq, p).unwrap();
        let minus = analytic_reduced(t - h, a, b, lsq, p).unwrap();
        let fd = [
            (plus.0 - minus.0) / (2.0 * h),
            (plus.1 - minus.1) / (2.0 * h),
            (plus.2 - minus.2) / (2.0 * h),
        ];
        let (jr, jx, jy) = analytic_reduced(t, a, b, lsq, p).unwrap();
        let dz = rhs(Formulation::ReducedLiePoisson, &[jr, jx, jy, lsq], p).unwrap();
        for i in 0..3 {
            worst = worst.max(math::abs(fd[i] - dz[i]));
        }
    }
    result(
        "analytic_satisfies_reduced_ode",
        worst,
        1e-8,
        n,
        "time derivative of the closed form matches the Lie-Poisson equations",
    )
}

fn check_helix_circle(s: &mut Sampler, p: &Params) -> CheckResult {
    let _ = s;
    let lsq = 1.0;
    let y0 = {
        let (jr, jx, jy) = analytic_reduced(0.0, 1.0, 0.0, lsq, &Params::default()).unwrap();
        [jr, jx, jy, lsq]
    };
    let params = Params::default();
    let _ = p;
    let traj = integrate(Formulation::ReducedLiePoisson, &y0, &params, 1e-3, 10.0, Method::Rk4)
        .unwrap();
    let center = lsq / params.mass;
    let radii: Vec<f64> = traj
        .states
        .iter()
        .map(|v| math::hypot(v[1] - center, v[2]))
        .collect();
    let mean = radii.iter().sum::<f64>() / radii.len() as f64;
    let var = radii.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>() / radii.len() as f64;
    let rel = math::sqrt(var) / mean;
    result(
        "helix_orbit_circle",
        rel,
        1e-6,
        radii.len(),
        "the projected (J_X, J_Y) trace is a circle centered at (l^2/m, 0)",
    )
}

fn check_midpoint_invariants(s: &mut Sampler, p: &Params) -> CheckResult {
    let _ = s;
    let (jr0, jx0, jy0) = analytic_reduced(0.0, 1.0, 0.5, 1.0, p).unwrap();
    let traj = integrate(
        Formulation::ReducedLiePoisson,
        &[jr0, jx0, jy0, 1.0],
        p,
        1e-2,
        100.0,
        Method::ImplicitMidpoint,
    )
    .unwrap();
    let summary = conservation_summary(&traj).unwrap();
    let worst = summary
        .dcylinder
        .unwrap()
        .max(summary.max_paraboloid.unwrap())
        .max(summary.dh);
    result(
        "implicit_midpoint_invariants",
        worst,
        1e-10,
        traj.states.len(),
        "implicit midpoint holds the quadratic invariants over a long run",
    )
}

// ---------------------------------------------------------------------
// reduction suite
// ---------------------------------------------------------------------

fn check_triples_coincide(s: &mut Sampler, p: &Params) -> CheckResult {
    let mut worst = 0.0f64;
    let n = 1000;
    for _ in 0..n {
        let z = s.on_surface_state(p.lambda);
        let a = invariants_canonical(&z, p).to_array();
        let b = invariants_dirac(&z, p).to_array();
        worst = worst.max(math::max_abs_diff(&a, &b));
    }
    result(
        "invariant_triples_coincide_on_surface",
        worst,
        1e-12,
        n,
        "both invariant triples agree once the constraints hold",
    )
}

fn check_paraboloid_identity(s: &mut Sampler, p: &Params) -> CheckResult {
    let mut worst = 0.0f64;
    let n = 1000;
    for _ in 0..n {
        let z = s.full_state();
        let red = invariants_dirac(&z, p);
        worst = worst.max(math::abs(hamiltonians::paraboloid(&red, p)));
    }
    result(
        "paraboloid_identity",
        worst,
        1e-12,
        n,
        "the Dirac triple satisfies the paraboloid relation identically",
    )
}

fn check_triple_projection_on_surface(s: &mut Sampler, p: &Params) -> CheckResult {
    let _ = s;
    let z0 = standard_initial_state().onto_constraint_surface(p.lambda);
    let full = integrate(
        Formulation::CanonicalBracketDiracH,
        &z0.flatten(),
        p,
        1e-3,
        10.0,
        Method::Rk4,
    )
    .unwrap();
    let a = project_full_to_reduced(&full, InvariantTriple::Canonical, p).unwrap();
    let b = project_full_to_reduced(&full, InvariantTriple::Dirac, p).unwrap();
    let mut worst = 0.0f64;
    for k in 0..a.states.len() {
        worst = worst.max(math::max_abs_diff(&a.states[k], &b.states[k]));
    }
    result(
        "projections_agree_on_surface",
        worst,
        1e-10,
        a.states.len(),
        "canonical and Dirac projections of an on-surface trajectory coincide",
    )
}

fn check_darboux_values(s: &mut Sampler, _p: &Params) -> CheckResult {
    let _ = s;
    let params = Params::new(4.0, 1.0).unwrap();
    let z = FullState {
        vel: Vec2::new(0.0, 3.0),
        ..Default::default()
    };
    let w = darboux_forward(&z, &params).unwrap();
    let worst = math::abs(w.q - 6.0).max(math::abs(w.p));
    result(
        "darboux_forward_values",
        worst,
        0.0,
        1,
        "q = sqrt(lambda) ydot and p = -sqrt(lambda) xdot at lambda = 4",
    )
}

fn check_darboux_qp_bracket(s: &mut Sampler, p: &Params) -> CheckResult {
    let params = if p.lambda > 0.0 {
        *p
    } else {
        Params::new(-p.lambda, p.mass).unwrap()
    };
    let pd = dirac_bracket_closed_form(&params);
    let jac = darboux_jacobian(&params).unwrap();
    let mut worst = 0.0f64;
    let n = 100;
    for _ in 0..n {
        let z = s.full_state().flatten();
        let pw = pd.matrix(&z).unwrap().congruence(&jac);
        worst = worst.max(math::abs(pw.get(2, 5) - 1.0));
    }
    result(
        "darboux_qp_bracket_unit",
        worst,
        1e-12,
        n,
        "{q, p} = 1 under the transformed Dirac bracket at random states",
    )
}

fn check_darboux_roundtrip(s: &mut Sampler, p: &Params) -> CheckResult {
    let params = if p.lambda > 0.0 {
        *p
    } else {
        Params::new(-p.lambda, p.mass).unwrap()
    };
    let mut worst = 0.0f64;
    let n = 100;
    for _ in 0..n {
        let z = s.on_surface_state(params.lambda);
        let w = darboux_forward(&z, &params).unwrap();
        let back = darboux_backward(&w, &params).unwrap();
        worst = worst.max(math::max_abs_diff(&z.flatten(), &back.flatten()));
        // inverse Legendre recovers the velocity data
        let (vel, _) = crate::symmetry::inverse_legendre(&w, &params).unwrap();
        worst = worst
            .max(math::abs(vel.x - z.vel.x))
            .max(math::abs(vel.y - z.vel.y));
    }
    result(
        "darboux_roundtrip",
        worst,
        1e-12,
        n,
        "Darboux forward/backward and the inverse Legendre agree on the surface",
    )
}

fn check_qdot_formula(s: &mut Sampler, p: &Params) -> CheckResult {
    let _ = s;
    let params = if p.lambda > 0.0 {
        *p
    } else {
        Params::new(-p.lambda, p.mass).unwrap()
    };
    let z0 = standard_initial_state().onto_constraint_surface(params.lambda);
    let w0 = darboux_forward(&z0, &params).unwrap();
    let traj = integrate(
        Formulation::DarbouxCanonicalH,
        &w0.flatten(),
        &params,
        1e-3,
        5.0,
        Method::Rk4,
    )
    .unwrap();
    let dt = traj.dt();
    let mut worst = 0.0f64;
    for k in 1..traj.states.len() - 1 {
        let fd = (traj.states[k + 1][2] - traj.states[k - 1][2]) / (2.0 * dt);
        let warr = [
            traj.states[k][0],
            traj.states[k][1],
            traj.states[k][2],
            traj.states[k][3],
            traj.states[k][4],
            traj.states[k][5],
        ];
        let w = crate::state::DarbouxState::unflatten(&warr, Vec2::ZERO);
        let (_, qdot) = crate::symmetry::inverse_legendre(&w, &params).unwrap();
        worst = worst.max(math::abs(fd - qdot));
    }
    result(
        "qdot_formula_along_flow",
        worst,
        1e-6,
        traj.states.len(),
        "numerically differentiated q matches the inverse-Legendre formula",
    )
}

fn check_analytic_config_invariants(s: &mut Sampler, _p: &Params) -> CheckResult {
    let params = Params::default();
    let mut worst = 0.0f64;
    let n = 50;
    for _ in 0..n {
        let t = s.range(0.0, 10.0);
        let (a, b) = (s.range(-1.5, 1.5), s.range(-1.5, 1.5));
        let mut p0 = s.vec2();
        if p0.norm() < 0.3 {
            p0 = Vec2::new(0.9, -0.4);
        }
        let jet = analytic_jet(t, a, b, p0, Vec2::ZERO, &params).unwrap();
        let z = hamiltonians::legendre_lift(jet.pos, jet.vel, jet.acc, &params);
        let red = invariants_dirac(&z, &params);
        let (jr, jx, jy) = analytic_reduced(t, a, b, p0.norm_sq(), &params).unwrap();
        worst = worst
            .max(math::abs(red.jr - jr))
            .max(math::abs(red.jx - jx))
            .max(math::abs(red.jy - jy));
    }
    result(
        "analytic_curve_projects_to_reduced_solution",
        worst,
        1e-10,
        n,
        "invariants along the closed-form curve reproduce the closed-form reduced solution",
    )
}

fn check_mu_conserved(s: &mut Sampler, p: &Params) -> CheckResult {
    let _ = s;
    let z0 = standard_initial_state().onto_constraint_surface(p.lambda);
    let traj = integrate(
        Formulation::CanonicalBracketDiracH,
        &z0.flatten(),
        p,
        1e-3,
        10.0,
        Method::Rk4,
    )
    .unwrap();
    let mu0 = momentum_map_full(&crate::dynamics::full_state_from_slice(&traj.states[0]))[0];
    let mut worst = 0.0f64;
    for state in &traj.states {
        let mu = momentum_map_full(&crate::dynamics::full_state_from_slice(state))[0];
        worst = worst.max(math::abs(mu - mu0));
    }
    result(
        "angular_momentum_conserved",
        worst,
        1e-8,
        traj.states.len(),
        "the angular momentum component of the momentum map is conserved",
    )
}

fn check_paper_casimir_drift_control(s: &mut Sampler, _p: &Params) -> CheckResult {
    let _ = s;
    // m = 2: one period of the reduced oscillation is 2*pi*lambda/m
    let params = Params::new(1.0, 2.0).unwrap();
    let (jr0, jx0, jy0) = analytic_reduced(0.0, 1.0, 0.0, 1.0, &params).unwrap();
    let t_end = core::f64::consts::PI;
    let traj = integrate(
        Formulation::ReducedLiePoisson,
        &[jr0, jx0, jy0, 1.0],
        &params,
        1e-3,
        t_end,
        Method::Rk4,
    )
    .unwrap();
    let value0 = hamiltonians::casimir_cylinder_noncons(
        &ReducedState::new(jr0, jx0, jy0, 1.0),
        &params,
    );
    let mut worst = 0.0f64;
    for state in &traj.states {
        let v = hamiltonians::casimir_cylinder_noncons(
            &ReducedState::new(state[0], state[1], state[2], state[3]),
            &params,
        );
        worst = worst.max(math::abs(v - value0));
    }
    control(
        "paper_casimir_m2_nonconserved",
        worst,
        1e-3,
        traj.states.len(),
        "negative control: the printed cylinder variant drifts over one period at m = 2",
    )
}

fn check_cylinder_conserved_m2(s: &mut Sampler, _p: &Params) -> CheckResult {
    let _ = s;
    let params = Params::new(1.0, 2.0).unwrap();
    let (jr0, jx0, jy0) = analytic_reduced(0.0, 1.0, 0.0, 1.0, &params).unwrap();
    let traj = integrate(
        Formulation::ReducedLiePoisson,
        &[jr0, jx0, jy0, 1.0],
        &params,
        1e-3,
        core::f64::consts::PI,
        Method::Rk4,
    )
    .unwrap();
    let summary = conservation_summary(&traj).unwrap();
    result(
        "cylinder_conserved_m2",
        summary.dcylinder.unwrap(),
        1e-8,
        traj.states.len(),
        "the conserved cylinder form stays flat on the same m = 2 run",
    )
}

static REGISTRY: &[Check] = &[
    // algebra
    Check { name: "se2_generators_close", suite: Suite::Algebra, run: check_se2_generators },
    Check { name: "se2_tangent_lifts_close", suite: Suite::Algebra, run: check_tangent_lifts },
    Check { name: "se2_cotangent_lifts_close", suite: Suite::Algebra, run: check_cotangent_lifts },
    Check { name: "cotangent_lifts_hamiltonian", suite: Suite::Algebra, run: check_cotangent_lifts_hamiltonian },
    Check { name: "dirac_lifts_hamiltonian", suite: Suite::Algebra, run: check_dirac_lifts_hamiltonian },
    Check { name: "dirac_lifts_oscillator_table", suite: Suite::Algebra, run: check_dirac_lifts_close },
    Check { name: "dirac_lift_center_commutes", suite: Suite::Algebra, run: check_dirac_lift_center },
    Check { name: "osclp_closure_canonical_triple", suite: Suite::Algebra, run: check_osclp_canonical },
    Check { name: "osclp_closure_dirac_triple", suite: Suite::Algebra, run: check_osclp_dirac },
    Check { name: "cocycle_plane_values", suite: Suite::Algebra, run: check_cocycle_values },
    Check { name: "cocycle_identity", suite: Suite::Algebra, run: check_cocycle_identity },
    Check { name: "cocycle_full_space", suite: Suite::Algebra, run: check_cocycle_full },
    Check { name: "plane_momentum_se2_table", suite: Suite::Algebra, run: check_plane_momentum_se2_table },
    Check { name: "lagrangian_se2_invariance", suite: Suite::Algebra, run: check_lagrangian_invariance },
    Check { name: "invariants_se2_invariance", suite: Suite::Algebra, run: check_invariants_invariance },
    Check { name: "invariants_annihilated_by_lifts", suite: Suite::Algebra, run: check_invariants_directional },
    // brackets
    Check { name: "antisymmetry_all_structures", suite: Suite::Brackets, run: check_antisymmetry },
    Check { name: "jacobi_all_structures", suite: Suite::Brackets, run: check_jacobi_all },
    Check { name: "jacobi_corrupted_control", suite: Suite::Brackets, run: check_jacobi_control },
    Check { name: "dirac_constructor_vs_table", suite: Suite::Brackets, run: check_dirac_oracle },
    Check { name: "dirac_bracket_pinned_entries", suite: Suite::Brackets, run: check_dirac_pinned_entries },
    Check { name: "casimir_lsq_se2", suite: Suite::Brackets, run: check_casimir_lsq_se2 },
    Check { name: "casimir_lsq_osc", suite: Suite::Brackets, run: check_casimir_lsq_osc },
    Check { name: "casimir_paraboloid_block", suite: Suite::Brackets, run: check_casimir_paraboloid },
    Check { name: "constraints_casimir_of_dirac", suite: Suite::Brackets, run: check_constraints_casimir },
    Check { name: "constraint_gram_value", suite: Suite::Brackets, run: check_gram_value },
    Check { name: "final_bracket_congruence", suite: Suite::Brackets, run: check_final_congruence },
    Check { name: "final_bracket_velocity_chart", suite: Suite::Brackets, run: check_final_variant_chart },
    // hamiltonians
    Check { name: "gradients_match_finite_differences", suite: Suite::Hamiltonians, run: check_gradients_fd },
    Check { name: "hd_equals_hc_on_surface", suite: Suite::Hamiltonians, run: check_hd_equals_hc_on_surface },
    Check { name: "hf_darboux_equals_hc_on_surface", suite: Suite::Hamiltonians, run: check_hf_equals_hc_on_surface },
    Check { name: "hred_compositions", suite: Suite::Hamiltonians, run: check_hred_compositions },
    Check { name: "h_orbit_on_paraboloid", suite: Suite::Hamiltonians, run: check_h_orbit },
    Check { name: "energy_equals_hc_via_legendre", suite: Suite::Hamiltonians, run: check_energy_legendre },
    Check { name: "cylinder_commutes_with_hred", suite: Suite::Hamiltonians, run: check_cylinder_bracket },
    Check { name: "paper_casimir_bracket_m2_control", suite: Suite::Hamiltonians, run: check_noncons_cylinder_control },
    // dynamics
    Check { name: "rhs_p0_rows_zero", suite: Suite::Dynamics, run: check_rhs_p0_rows },
    Check { name: "he_display_on_surface", suite: Suite::Dynamics, run: check_he_display_on_surface },
    Check { name: "paper_he2_p1y_display_control", suite: Suite::Dynamics, run: check_he_display_p1y_control },
    Check { name: "reduced_fixed_point", suite: Suite::Dynamics, run: check_reduced_fixed_point },
    Check { name: "conservation_canonical_form", suite: Suite::Dynamics, run: check_conservation_canonical },
    Check { name: "conservation_dirac_form", suite: Suite::Dynamics, run: check_conservation_dirac },
    Check { name: "conservation_darboux_form", suite: Suite::Dynamics, run: check_conservation_darboux },
    Check { name: "conservation_reduced_form", suite: Suite::Dynamics, run: check_conservation_reduced },
    Check { name: "formulation_equivalence", suite: Suite::Dynamics, run: check_formulation_equivalence },
    Check { name: "reduction_commutes_with_flow", suite: Suite::Dynamics, run: check_reduction_commutes },
    Check { name: "projected_lsq_constant", suite: Suite::Dynamics, run: check_projected_lsq_constant },
    Check { name: "rk4_convergence_order", suite: Suite::Dynamics, run: check_rk4_order },
    Check { name: "rk4_halving_factor", suite: Suite::Dynamics, run: check_rk4_halving },
    Check { name: "reconstruction_vs_closed_form", suite: Suite::Dynamics, run: check_reconstruction },
    Check { name: "analytic_el_residual", suite: Suite::Dynamics, run: check_analytic_el_residual },
    Check { name: "analytic_satisfies_reduced_ode", suite: Suite::Dynamics, run: check_analytic_reduced_ode },
    Check { name: "helix_orbit_circle", suite: Suite::Dynamics, run: check_helix_circle },
    Check { name: "implicit_midpoint_invariants", suite: Suite::Dynamics, run: check_midpoint_invariants },
    // reduction
    Check { name: "invariant_triples_coincide_on_surface", suite: Suite::Reduction, run: check_triples_coincide },
    Check { name: "paraboloid_identity", suite: Suite::Reduction, run: check_paraboloid_identity },
    Check { name: "projections_agree_on_surface", suite: Suite::Reduction, run: check_triple_projection_on_surface },
    Check { name: "darboux_forward_values", suite: Suite::Reduction, run: check_darboux_values },
    Check { name: "darboux_qp_bracket_unit", suite: Suite::Reduction, run: check_darboux_qp_bracket },
    Check { name: "darboux_roundtrip", suite: Suite::Reduction, run: check_darboux_roundtrip },
    Check { name: "qdot_formula_along_flow", suite: Suite::Reduction, run: check_qdot_formula },
    Check { name: "analytic_curve_projects_to_reduced_solution", suite: Suite::Reduction, run: check_analytic_config_invariants },
    Check { name: "angular_momentum_conserved", suite: Suite::Reduction, run: check_mu_conserved },
    Check { name: "paper_casimir_m2_nonconserved", suite: Suite::Reduction, run: check_paper_casimir_drift_control },
    Check { name: "cylinder_conserved_m2", suite: Suite::Reduction, run: check_cylinder_conserved_m2 },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_unique_and_enough() {
        let mut names: Vec<&str> = REGISTRY.iter().map(|c| c.name).collect();
        let total = names.len();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), total, "duplicate check names");
        assert!(total >= 25, "only {total} checks registered");
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [
            Suite::Algebra,
            Suite::Brackets,
            Suite::Hamiltonians,
            Suite::Dynamics,
            Suite::Reduction,
            Suite::All,
        ] {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("bogus"), None);
    }

    #[test]
    fn deterministic_reports() {
        let p = Params::default();
        let a = run_suite(Suite::Algebra, 42, &p);
        let b = run_suite(Suite::Algebra, 42, &p);
        assert_eq!(a, b);
    }

    #[test]
    fn all_suite_covers_each_check_once() {
        let p = Params::default();
        let all = run_suite(Suite::All, 7, &p);
        assert_eq!(all.len(), REGISTRY.len());
    }
}
