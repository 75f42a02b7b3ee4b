//! Executable thought experiments: the double-slit setup (with or without
//! a which-way detector), detector collapse, interference curves,
//! Schrödinger's cat, and the Wigner's-friend dual-observer report.

mod config;

pub use config::parse_scenario_file;

use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::hilbert::{free_evolve, CompositeState, PositionGrid, Projector, StateVector};
use crate::semantics::{partial, Binding, PartialTruth};
use crate::tol;

/// Parameters of a double-slit run. Slit 1 sits at `x = 0`, slit 2 at
/// `x = d`; each slit state is a Gaussian of width `sigma` hard-windowed to
/// `±half_width` around its slit.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleSlitConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
    pub slit_distance: f64,
    pub half_width: f64,
    pub sigma: f64,
    pub c1: C64,
    pub c2: C64,
    pub detector: bool,
    pub seed: u64,
}

impl Default for DoubleSlitConfig {
    fn default() -> Self {
        let c = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        DoubleSlitConfig {
            x_min: -20.0,
            x_max: 20.0,
            n_points: 4096,
            slit_distance: 6.0,
            half_width: 1.0,
            sigma: 0.5,
            c1: c,
            c2: c,
            detector: false,
            seed: 0,
        }
    }
}

impl DoubleSlitConfig {
    pub fn grid(&self) -> Result<PositionGrid> {
        PositionGrid::new(self.x_min, self.x_max, self.n_points)
    }

    pub fn validate(&self) -> Result<()> {
        let grid = self.grid()?;
        if !(self.slit_distance.is_finite() && self.slit_distance > 0.0) {
            return Err(Error::Config(format!(
                "slit distance must be positive, got {}",
                self.slit_distance
            )));
        }
        if !(self.half_width.is_finite() && self.half_width > 0.0) {
            return Err(Error::Config(format!(
                "slit half-width must be positive, got {}",
                self.half_width
            )));
        }
        if 2.0 * self.half_width >= self.slit_distance {
            return Err(Error::Config(format!(
                "slit windows overlap: need 2·half_width < d, got 2·{} vs {}",
                self.half_width, self.slit_distance
            )));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(Error::Config(format!(
                "sigma must be positive, got {}",
                self.sigma
            )));
        }
        for (label, center) in [("slit 1", 0.0), ("slit 2", self.slit_distance)] {
            if !grid.contains_interval(center - self.half_width, center + self.half_width) {
                return Err(Error::Config(format!(
                    "{label} window extends outside the grid"
                )));
            }
        }
        let total = self.c1.norm_sqr() + self.c2.norm_sqr();
        if (total - 1.0).abs() > tol::EPS_NORM {
            return Err(Error::Config(format!(
                "|c1|² + |c2|² must be 1, got {total}"
            )));
        }
        Ok(())
    }
}

/// The quantum state a scenario evaluates against.
#[derive(Debug, Clone)]
pub enum ScenarioState {
    Pure(StateVector),
    Composite(CompositeState),
}

impl ScenarioState {
    /// The flattened state vector (composite states live on the product
    /// space).
    pub fn vector(&self) -> &StateVector {
        match self {
            ScenarioState::Pure(v) => v,
            ScenarioState::Composite(c) => c.state(),
        }
    }

    pub fn is_composite(&self) -> bool {
        matches!(self, ScenarioState::Composite(_))
    }
}

/// A fully built experiment: slit states, the prepared state, the slit
/// projectors, and the atom binding the valuation engines consume.
///
/// The binding always carries the two principal atoms plus `Q`, bound to
/// the rank-one projector on the prepared state. When a which-way detector
/// is attached, the principal atoms are re-bound to the detector-dressed
/// projectors `P̂_n ⊗ |d_n⟩⟨d_n|` while [`Scenario::p1`] and
/// [`Scenario::p2`] keep the particle-space originals.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub phi1: StateVector,
    pub phi2: StateVector,
    pub psi: ScenarioState,
    pub p1: Projector,
    pub p2: Projector,
    pub binding: Binding,
    pub atom1: String,
    pub atom2: String,
    c1: C64,
    c2: C64,
}

impl Scenario {
    pub fn state_vector(&self) -> &StateVector {
        self.psi.vector()
    }

    pub fn amplitudes(&self) -> (C64, C64) {
        (self.c1, self.c2)
    }

    /// Draws a collapse outcome (1 or 2) with probabilities `|c_n|²` from
    /// a deterministic seeded generator.
    pub fn sample_collapse_outcome(&self, rng_seed: u64) -> Result<u8> {
        if !self.psi.is_composite() {
            return Err(Error::DetectorAbsent);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let u: f64 = rng.gen();
        Ok(if u < self.c1.norm_sqr() { 1 } else { 2 })
    }
}

/// Builds the double-slit scenario: hard-windowed Gaussian slit states,
/// the superposition `c1·φ1 + c2·φ2`, interval projectors over the slit
/// windows, and the atom binding (`P1`, `P2`, `Q`). Attaches the
/// which-way detector when the config asks for one.
pub fn build_double_slit(cfg: &DoubleSlitConfig) -> Result<Scenario> {
    cfg.validate()?;
    let grid = cfg.grid()?;
    let phi1 = StateVector::gaussian_slit(&grid, 0.0, cfg.half_width, cfg.sigma)?;
    let phi2 = StateVector::gaussian_slit(&grid, cfg.slit_distance, cfg.half_width, cfg.sigma)?;
    let psi = phi1
        .scaled(cfg.c1)
        .try_add(&phi2.scaled(cfg.c2))?
        .normalized()?;
    let p1 = Projector::interval(&grid, -cfg.half_width, cfg.half_width)?;
    let p2 = Projector::interval(
        &grid,
        cfg.slit_distance - cfg.half_width,
        cfg.slit_distance + cfg.half_width,
    )?;
    let mut binding = Binding::new();
    binding.insert("P1", p1.clone())?;
    binding.insert("P2", p2.clone())?;
    binding.insert("Q", Projector::rank_one(&psi)?)?;
    let scenario = Scenario {
        phi1,
        phi2,
        psi: ScenarioState::Pure(psi),
        p1,
        p2,
        binding,
        atom1: "P1".into(),
        atom2: "P2".into(),
        c1: cfg.c1,
        c2: cfg.c2,
    };
    if cfg.detector {
        attach_which_way_detector(&scenario)
    } else {
        Ok(scenario)
    }
}

/// Entangles the slit components with a two-state detector and re-binds
/// the principal atoms to the detector-dressed projectors.
pub fn attach_which_way_detector(s: &Scenario) -> Result<Scenario> {
    if s.psi.is_composite() {
        return Err(Error::DetectorAlreadyAttached);
    }
    let composite =
        CompositeState::entangle(&[(s.phi1.scaled(s.c1), 0), (s.phi2.scaled(s.c2), 1)], 2)?;
    let mut binding = Binding::new();
    binding.insert(s.atom1.clone(), s.p1.tensor_detector(2, 0)?)?;
    binding.insert(s.atom2.clone(), s.p2.tensor_detector(2, 1)?)?;
    binding.insert("Q", Projector::rank_one(composite.state())?)?;
    Ok(Scenario {
        phi1: s.phi1.clone(),
        phi2: s.phi2.clone(),
        psi: ScenarioState::Composite(composite),
        p1: s.p1.clone(),
        p2: s.p2.clone(),
        binding,
        atom1: s.atom1.clone(),
        atom2: s.atom2.clone(),
        c1: s.c1,
        c2: s.c2,
    })
}

/// Result of reading the which-way detector.
#[derive(Debug, Clone)]
pub struct Collapse {
    /// The slit (1 or 2) the detector reported.
    pub outcome: u8,
    /// The post-collapse scenario: state `φ_n ⊗ |d_n⟩`, atoms re-bound.
    pub scenario: Scenario,
}

/// Reads the detector: draws slit `n` with probability `|c_n|²` and
/// projects the experiment onto `φ_n ⊗ |d_n⟩`.
pub fn collapse(s: &Scenario, rng_seed: u64) -> Result<Collapse> {
    let outcome = s.sample_collapse_outcome(rng_seed)?;
    let (component, sector, c1, c2) = if outcome == 1 {
        (s.phi1.clone(), 0, C64::ONE, C64::ZERO)
    } else {
        (s.phi2.clone(), 1, C64::ZERO, C64::ONE)
    };
    let composite = CompositeState::entangle(&[(component, sector)], 2)?;
    let mut binding = s.binding.clone();
    binding.insert("Q", Projector::rank_one(composite.state())?)?;
    Ok(Collapse {
        outcome,
        scenario: Scenario {
            phi1: s.phi1.clone(),
            phi2: s.phi2.clone(),
            psi: ScenarioState::Composite(composite),
            p1: s.p1.clone(),
            p2: s.p2.clone(),
            binding,
            atom1: s.atom1.clone(),
            atom2: s.atom2.clone(),
            c1,
            c2,
        },
    })
}

/// Screen intensity at time `t`: `|Ψ(x,t)|²` for a bare particle, or the
/// detector-traced marginal `Σ_n |c_n φ_n(x,t)|²` when a detector is
/// attached. Intensities are non-negative and integrate to 1.
pub fn intensity_curve(s: &Scenario, t: f64) -> Result<Vec<(f64, f64)>> {
    let grid = grid_of(s)?;
    let intensity = match &s.psi {
        ScenarioState::Pure(v) => free_evolve(v, t)?.intensity(),
        ScenarioState::Composite(c) => c.evolve(t)?.marginal_intensity(),
    };
    Ok(grid.points().zip(intensity).collect())
}

fn grid_of(s: &Scenario) -> Result<PositionGrid> {
    match s.phi1.space() {
        crate::hilbert::Space::Grid(g) => Ok(g.clone()),
        _ => Err(Error::InvariantViolation(
            "scenario does not live on a position grid",
        )),
    }
}

/// The four interference columns serialized by the CLI.
#[derive(Debug, Clone)]
pub struct InterferenceCurve {
    pub xs: Vec<f64>,
    /// `|c1·φ1(x,t) + c2·φ2(x,t)|²`
    pub no_detector: Vec<f64>,
    /// `|c1·φ1(x,t)|² + |c2·φ2(x,t)|²`
    pub with_detector: Vec<f64>,
    /// `2·Re(c1*·c2·φ1*(x,t)·φ2(x,t))`, computed from the separately
    /// evolved components.
    pub cross_term: Vec<f64>,
}

pub fn interference_curve(cfg: &DoubleSlitConfig, t: f64) -> Result<InterferenceCurve> {
    let mut plain = cfg.clone();
    plain.detector = false;
    let s = build_double_slit(&plain)?;
    let grid = grid_of(&s)?;
    let ScenarioState::Pure(psi) = &s.psi else {
        unreachable!("detector disabled above");
    };
    let psi_t = free_evolve(psi, t)?;
    let phi1_t = free_evolve(&s.phi1, t)?;
    let phi2_t = free_evolve(&s.phi2, t)?;
    let n = grid.n_points();
    let mut no_detector = Vec::with_capacity(n);
    let mut with_detector = Vec::with_capacity(n);
    let mut cross_term = Vec::with_capacity(n);
    let phase = cfg.c1.conj() * cfg.c2;
    for i in 0..n {
        no_detector.push(psi_t.amp(i).norm_sqr());
        let a1 = phi1_t.amp(i) * cfg.c1;
        let a2 = phi2_t.amp(i) * cfg.c2;
        with_detector.push(a1.norm_sqr() + a2.norm_sqr());
        cross_term.push(2.0 * (phase * phi1_t.amp(i).conj() * phi2_t.amp(i)).re);
    }
    Ok(InterferenceCurve {
        xs: grid.points().collect(),
        no_detector,
        with_detector,
        cross_term,
    })
}

/// A cat in a two-dimensional macrostate space: `DEAD` and `ALIVE` are
/// coordinate projectors and the prepared state is their equal-weight
/// superposition.
pub fn schrodinger_cat() -> Scenario {
    let e_dead = StateVector::basis_state(2, 0).expect("dim 2");
    let e_alive = StateVector::basis_state(2, 1).expect("dim 2");
    let c = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let psi = e_dead
        .scaled(c)
        .try_add(&e_alive.scaled(c))
        .expect("same space");
    let p_dead = Projector::onto_basis_states(2, &[0]).expect("dim 2");
    let p_alive = Projector::onto_basis_states(2, &[1]).expect("dim 2");
    let mut binding = Binding::new();
    binding
        .insert("DEAD", p_dead.clone())
        .expect("fresh binding");
    binding
        .insert("ALIVE", p_alive.clone())
        .expect("fresh binding");
    Scenario {
        phi1: e_dead,
        phi2: e_alive,
        psi: ScenarioState::Pure(psi),
        p1: p_dead,
        p2: p_alive,
        binding,
        atom1: "DEAD".into(),
        atom2: "ALIVE".into(),
        c1: c,
        c2: c,
    }
}

/// Partial-bivaluation truth assignments made by the friend (inside the
/// lab, after reading the which-way detector) and by Wigner (outside,
/// holding the entangled pre-collapse state).
#[derive(Debug, Clone)]
pub struct WignerReport {
    pub friend: Vec<(String, PartialTruth)>,
    pub wigner: Vec<(String, PartialTruth)>,
    /// Both observers assign "true" to the exclusive disjunction.
    pub oit: bool,
    /// The observers' sets of defined atom values differ.
    pub oip: bool,
}

pub fn wigner_friend_report(cfg: &DoubleSlitConfig, rng_seed: u64) -> Result<WignerReport> {
    let mut with_detector = cfg.clone();
    with_detector.detector = true;
    let entangled = build_double_slit(&with_detector)?;
    let friend_scenario = collapse(&entangled, rng_seed)?.scenario;

    let formulas = [
        Formula::atom("P1"),
        Formula::atom("P2"),
        Formula::parse("P1 ^ P2").expect("fixed formula"),
    ];
    let labels = ["P1", "P2", "P1 ^ P2"];

    let mut friend = Vec::new();
    let mut wigner = Vec::new();
    for (f, label) in formulas.iter().zip(labels) {
        friend.push((
            label.to_string(),
            partial(f, &friend_scenario.binding, friend_scenario.state_vector())?,
        ));
        wigner.push((
            label.to_string(),
            partial(f, &entangled.binding, entangled.state_vector())?,
        ));
    }

    let xor_true = |values: &[(String, PartialTruth)]| {
        values
            .iter()
            .any(|(l, v)| l == "P1 ^ P2" && *v == PartialTruth::True)
    };
    let defined_atoms = |values: &[(String, PartialTruth)]| -> Vec<String> {
        values
            .iter()
            .filter(|(l, v)| l != "P1 ^ P2" && v.is_defined())
            .map(|(l, _)| l.clone())
            .collect()
    };
    let oit = xor_true(&friend) && xor_true(&wigner);
    let oip = defined_atoms(&friend) != defined_atoms(&wigner);
    Ok(WignerReport {
        friend,
        wigner,
        oit,
        oip,
    })
}
