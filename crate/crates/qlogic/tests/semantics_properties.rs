//! Cross-engine properties of the valuation semantics.

use num_complex::Complex64 as C64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use qlogic::formula::Formula;
use qlogic::hilbert::{Projector, Space, StateVector};
use qlogic::semantics::{
    bvn, partial, three_valued, Binding, BvnMode, PartialTruth, SemanticsConfig,
    ThreeValuedVariant, TruthValue3,
};

fn random_formula(rng: &mut ChaCha8Rng, atoms: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return Formula::atom(atoms[rng.gen_range(0..atoms.len())]);
    }
    match rng.gen_range(0..4) {
        0 => Formula::not(random_formula(rng, atoms, depth - 1)),
        1 => Formula::and(
            random_formula(rng, atoms, depth - 1),
            random_formula(rng, atoms, depth - 1),
        ),
        2 => Formula::or(
            random_formula(rng, atoms, depth - 1),
            random_formula(rng, atoms, depth - 1),
        ),
        _ => Formula::xor(
            random_formula(rng, atoms, depth - 1),
            random_formula(rng, atoms, depth - 1),
        ),
    }
}

/// Classical two-valued evaluation given fixed atom bits.
fn classical(f: &Formula, bits: &dyn Fn(&str) -> bool) -> bool {
    match f {
        Formula::Atom(a) => bits(a),
        Formula::Not(x) => !classical(x, bits),
        Formula::And(l, r) => classical(l, bits) && classical(r, bits),
        Formula::Or(l, r) => classical(l, bits) || classical(r, bits),
        Formula::Xor(l, r) => classical(l, bits) ^ classical(r, bits),
    }
}

/// Diagonal (mutually commuting) binding over an abstract dimension: atom
/// i owns a random set of basis axes.
fn diagonal_binding(rng: &mut ChaCha8Rng, dim: usize, atoms: &[&str]) -> Binding {
    let mut b = Binding::new();
    for name in atoms {
        let set: Vec<usize> = (0..dim).filter(|_| rng.gen_bool(0.5)).collect();
        b.insert(*name, Projector::onto_basis_states(dim, &set).unwrap())
            .unwrap();
    }
    b
}

#[test]
fn all_semantics_collapse_to_classical_logic_on_eigenstates() {
    let atoms = ["A", "B", "C"];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for round in 0..60 {
        let dim = rng.gen_range(2..=6);
        let binding = diagonal_binding(&mut rng, dim, &atoms);
        let axis = rng.gen_range(0..dim);
        let v = StateVector::basis_state(dim, axis).unwrap();
        let formula = random_formula(&mut rng, &atoms, 4);
        // On a basis state every diagonal atom has definite evidence.
        let bits = |name: &str| binding.get(name).unwrap().born_probability(&v).unwrap() > 0.5;
        let expected = classical(&formula, &bits);

        for variant in [
            ThreeValuedVariant::KleeneStrong,
            ThreeValuedVariant::BochvarInternal,
        ] {
            let cfg = SemanticsConfig {
                three_valued_variant: variant,
                ..Default::default()
            };
            let got = three_valued(&formula, &binding, &v, &cfg).unwrap();
            let want = if expected {
                TruthValue3::True
            } else {
                TruthValue3::False
            };
            assert_eq!(got, want, "round {round} ({variant:?})");
        }
        let got_tf = bvn(&formula, &binding, &v, &SemanticsConfig::default()).unwrap();
        assert_eq!(got_tf, expected, "round {round} (bvn tf)");
    }
}

#[test]
fn partial_gap_exactly_on_intermediate_born_probability() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let p = Projector::onto_basis_states(2, &[0]).unwrap();
    let mut binding = Binding::new();
    binding.insert("P", p.clone()).unwrap();
    let atom = Formula::atom("P");
    for _ in 0..1000 {
        let v = loop {
            let amps = vec![
                C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
            ];
            let v = StateVector::new(Space::Abstract(2), amps).unwrap();
            if v.norm() > 1e-3 {
                break v.normalized().unwrap();
            }
        };
        let born = p.born_probability(&v).unwrap();
        let value = partial(&atom, &binding, &v).unwrap();
        if (2e-8..=1.0 - 2e-8).contains(&born) {
            assert_eq!(value, PartialTruth::Gap, "born {born}");
        }
        if !(1e-16..=1.0 - 1e-16).contains(&born) {
            assert!(value.is_defined(), "born {born}");
        }
    }
}

#[test]
fn exclusive_disjunction_is_a_partial_tautology_under_completeness() {
    // P1 + P2 = identity on an abstract two-dimensional space.
    let mut binding = Binding::new();
    binding
        .insert("P1", Projector::onto_basis_states(2, &[0]).unwrap())
        .unwrap();
    binding
        .insert("P2", Projector::onto_basis_states(2, &[1]).unwrap())
        .unwrap();
    let xor = Formula::parse("P1 ^ P2").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for round in 0..1000 {
        // Include the degenerate amplitudes in the sweep.
        let (c1, c2) = match round % 4 {
            0 => (C64::ONE, C64::ZERO),
            1 => (C64::ZERO, C64::ONE),
            _ => (
                C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
            ),
        };
        let v = StateVector::new(Space::Abstract(2), vec![c1, c2]).unwrap();
        let Ok(v) = v.normalized() else { continue };
        assert_eq!(
            partial(&xor, &binding, &v).unwrap(),
            PartialTruth::True,
            "round {round}"
        );
    }
}

#[test]
fn fully_commuting_bindings_never_produce_ndf() {
    let atoms = ["A", "B", "C"];
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..60 {
        let dim = rng.gen_range(2..=6);
        let binding = diagonal_binding(&mut rng, dim, &atoms);
        let formula = random_formula(&mut rng, &atoms, 4);
        let v = loop {
            let amps: Vec<C64> = (0..dim)
                .map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect();
            let v = StateVector::new(Space::Abstract(dim), amps).unwrap();
            if v.norm() > 1e-3 {
                break v.normalized().unwrap();
            }
        };
        let value = partial(&formula, &binding, &v).unwrap();
        assert_ne!(value, PartialTruth::Ndf);
    }
}

#[test]
fn ndf_requires_a_noncommuting_binary_node() {
    // A binding with one slanted projector: formulas joining it to a
    // diagonal one are not defined, while negation alone never is NDF.
    let dim = 2;
    let mut binding = Binding::new();
    binding
        .insert("D", Projector::onto_basis_states(dim, &[0]).unwrap())
        .unwrap();
    let slanted = StateVector::new(
        Space::Abstract(dim),
        vec![
            C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        ],
    )
    .unwrap();
    binding
        .insert("S", Projector::rank_one(&slanted).unwrap())
        .unwrap();
    let v = StateVector::basis_state(dim, 0).unwrap();
    assert_eq!(
        partial(&Formula::parse("D & S").unwrap(), &binding, &v).unwrap(),
        PartialTruth::Ndf
    );
    assert_eq!(
        partial(&Formula::parse("!S").unwrap(), &binding, &v).unwrap(),
        PartialTruth::Gap,
        "negation alone stays defined (here: a gap, not NDF)"
    );
    assert_eq!(
        partial(&Formula::parse("!(D & S)").unwrap(), &binding, &v).unwrap(),
        PartialTruth::Ndf,
        "negation propagates NDF"
    );
}

#[test]
fn partial_and_lattice_bvn_agree_on_atom_eigenvectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..60 {
        let dim = rng.gen_range(2..=5);
        let set: Vec<usize> = (0..dim).filter(|_| rng.gen_bool(0.5)).collect();
        let p = Projector::onto_basis_states(dim, &set).unwrap();
        let mut binding = Binding::new();
        binding.insert("P", p.clone()).unwrap();
        let atom = Formula::atom("P");
        let axis = rng.gen_range(0..dim);
        let v = StateVector::basis_state(dim, axis).unwrap();
        let part = partial(&atom, &binding, &v).unwrap();
        let lat = bvn(
            &atom,
            &binding,
            &v,
            &SemanticsConfig {
                bvn_mode: BvnMode::Lattice,
                ..Default::default()
            },
        )
        .unwrap();
        match part {
            PartialTruth::True => assert!(lat),
            PartialTruth::False => assert!(!lat),
            other => panic!("eigenvector atom produced {other:?}"),
        }
    }
}

#[test]
fn lattice_xor_matches_its_componentwise_reading_on_orthogonal_atoms() {
    // For atoms bound to orthogonal subspaces (the double-slit situation,
    // where the meet is {0}) the xor subspace expression gives the same
    // bit as min(or, 1 − and) computed from the component valuations.
    // The two readings are not equivalent for overlapping subspaces.
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let cfg = SemanticsConfig {
        bvn_mode: BvnMode::Lattice,
        ..Default::default()
    };
    for _ in 0..40 {
        let dim = rng.gen_range(2..=5);
        let split = rng.gen_range(1..dim);
        let mut binding = Binding::new();
        let left: Vec<usize> = (0..split).collect();
        let right: Vec<usize> = (split..dim).collect();
        binding
            .insert("A", Projector::onto_basis_states(dim, &left).unwrap())
            .unwrap();
        binding
            .insert("B", Projector::onto_basis_states(dim, &right).unwrap())
            .unwrap();
        let v = loop {
            let amps: Vec<C64> = (0..dim)
                .map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect();
            let v = StateVector::new(Space::Abstract(dim), amps).unwrap();
            if v.norm() > 1e-3 {
                break v.normalized().unwrap();
            }
        };
        let xor = bvn(&Formula::parse("A ^ B").unwrap(), &binding, &v, &cfg).unwrap();
        let or = bvn(&Formula::parse("A | B").unwrap(), &binding, &v, &cfg).unwrap();
        let and = bvn(&Formula::parse("A & B").unwrap(), &binding, &v, &cfg).unwrap();
        assert_eq!(xor, or && !and);
    }
}

#[test]
fn kleene_and_bochvar_full_tables() {
    use TruthValue3::*;
    let values = [False, Undefined, True];
    // Rows indexed by (a, b) in half units.
    let kleene_and = [
        [False, False, False],
        [False, Undefined, Undefined],
        [False, Undefined, True],
    ];
    let kleene_or = [
        [False, Undefined, True],
        [Undefined, Undefined, True],
        [True, True, True],
    ];
    let kleene_xor = [
        [False, Undefined, True],
        [Undefined, Undefined, Undefined],
        [True, Undefined, False],
    ];
    for (i, &a) in values.iter().enumerate() {
        assert_eq!((!a), values[2 - i]);
        for (j, &b) in values.iter().enumerate() {
            assert_eq!(a.kleene_and(b), kleene_and[i][j], "and {a} {b}");
            assert_eq!(a.kleene_or(b), kleene_or[i][j], "or {a} {b}");
            assert_eq!(a.kleene_xor(b), kleene_xor[i][j], "xor {a} {b}");
            let u_involved = a == Undefined || b == Undefined;
            let bochvar_expect = |classical: TruthValue3| {
                if u_involved {
                    Undefined
                } else {
                    classical
                }
            };
            assert_eq!(a.bochvar_and(b), bochvar_expect(kleene_and[i][j]));
            assert_eq!(a.bochvar_or(b), bochvar_expect(kleene_or[i][j]));
            assert_eq!(a.bochvar_xor(b), bochvar_expect(kleene_xor[i][j]));
        }
    }
}
