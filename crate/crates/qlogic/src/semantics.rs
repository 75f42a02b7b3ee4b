//! The three valuation engines.
//!
//! All three agree on atoms with definite evidence and differ on what they
//! do when neither the positive nor the negative evidence statement holds
//! (the state is a proper superposition):
//!
//! * [`three_valued`] maps the no-evidence case to a third truth value `U`
//!   and evaluates connectives by Kleene-strong or Bochvar-internal tables;
//! * [`bvn`] keeps two truth values and maps no-evidence to "true"
//!   (`b(0,0) = 1`), with connectives either truth-functional (min/max) or
//!   interpreted on the subspace lattice;
//! * [`partial`] leaves the no-evidence case without any truth value
//!   (`GAP`) and refuses to interpret connectives across non-commuting
//!   projectors (`NDF`).
//!
//! An atom's evidence pair is `(v ∈ H_P, v ∈ H_P⊥)`; it can never be
//! `(1, 1)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::hilbert::{Projector, StateVector};
use crate::lattice::{relation, Membership, Subspace};

/// Positive/negative evidence bits for an atomic proposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvidencePair {
    pub positive: bool,
    pub negative: bool,
}

/// Truth value of the three-valued semantics; `U` is a value like the
/// other two, interpretable as ½.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruthValue3 {
    False,
    Undefined,
    True,
}

impl TruthValue3 {
    pub fn as_half_units(self) -> u8 {
        match self {
            TruthValue3::False => 0,
            TruthValue3::Undefined => 1,
            TruthValue3::True => 2,
        }
    }

    fn from_half_units(h: u8) -> Self {
        match h {
            0 => TruthValue3::False,
            1 => TruthValue3::Undefined,
            _ => TruthValue3::True,
        }
    }

    pub fn kleene_and(self, other: Self) -> Self {
        Self::from_half_units(self.as_half_units().min(other.as_half_units()))
    }

    pub fn kleene_or(self, other: Self) -> Self {
        Self::from_half_units(self.as_half_units().max(other.as_half_units()))
    }

    /// `min(a ∨ b, ¬(a ∧ b))`.
    pub fn kleene_xor(self, other: Self) -> Self {
        self.kleene_or(other).kleene_and(!self.kleene_and(other))
    }

    pub fn bochvar_and(self, other: Self) -> Self {
        Self::bochvar(self, other, Self::kleene_and)
    }

    pub fn bochvar_or(self, other: Self) -> Self {
        Self::bochvar(self, other, Self::kleene_or)
    }

    pub fn bochvar_xor(self, other: Self) -> Self {
        Self::bochvar(self, other, Self::kleene_xor)
    }

    /// Any undefined operand makes the result undefined; otherwise the
    /// classical table applies.
    fn bochvar(a: Self, b: Self, classical: fn(Self, Self) -> Self) -> Self {
        if a == TruthValue3::Undefined || b == TruthValue3::Undefined {
            TruthValue3::Undefined
        } else {
            classical(a, b)
        }
    }
}

impl std::ops::Not for TruthValue3 {
    type Output = Self;

    /// `1 − x` in half units; shared by every variant.
    fn not(self) -> Self {
        Self::from_half_units(2 - self.as_half_units())
    }
}

impl fmt::Display for TruthValue3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue3::False => "F",
            TruthValue3::Undefined => "U",
            TruthValue3::True => "T",
        })
    }
}

/// Result of the partial bivaluation.
///
/// `Gap` marks a well-formed statement that lacks a truth value; `Ndf`
/// marks a formula that is not defined at all (its connectives join
/// non-commuting projectors). The two are never conflated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartialTruth {
    True,
    False,
    Gap,
    Ndf,
}

impl PartialTruth {
    pub fn is_defined(self) -> bool {
        matches!(self, PartialTruth::True | PartialTruth::False)
    }
}

impl fmt::Display for PartialTruth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartialTruth::True => "T",
            PartialTruth::False => "F",
            PartialTruth::Gap => "GAP",
            PartialTruth::Ndf => "NDF",
        })
    }
}

pub fn render_bit(b: bool) -> &'static str {
    if b {
        "T"
    } else {
        "F"
    }
}

/// Connective tables for the three-valued semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThreeValuedVariant {
    #[default]
    KleeneStrong,
    BochvarInternal,
}

/// How the Birkhoff–von Neumann valuation treats compound formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BvnMode {
    #[default]
    TruthFunctional,
    Lattice,
}

/// Image of the no-evidence pair under the BvN valuation. Mapping it to 0
/// would mean the particle went through neither slit, so only the value 1
/// is supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BvnExtraObject {
    #[default]
    One,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SemanticsConfig {
    pub three_valued_variant: ThreeValuedVariant,
    pub bvn_mode: BvnMode,
    pub bvn_extra_object: BvnExtraObject,
}

/// Map from atom names to projectors, all on the same space.
#[derive(Debug, Clone, Default)]
pub struct Binding {
    entries: Vec<(String, Projector)>,
}

impl Binding {
    pub fn new() -> Self {
        Binding::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, p: Projector) -> Result<()> {
        if let Some((_, first)) = self.entries.first() {
            if first.dim() != p.dim() {
                return Err(Error::DimensionMismatch(first.dim(), p.dim()));
            }
        }
        let name = name.into();
        self.entries.retain(|(n, _)| *n != name);
        self.entries.push((name, p));
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Projector> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    fn subspace(&self, name: &str) -> Result<Subspace> {
        self.get(name)
            .map(Subspace::from_projector)
            .ok_or_else(|| Error::UnboundAtom(name.to_string()))
    }
}

/// Evidence bits `(v ∈ s_pos, v ∈ s_neg)`; errors if both hold, which is
/// impossible for orthogonal statement pairs.
pub fn evidence_pair(v: &StateVector, s_pos: &Subspace, s_neg: &Subspace) -> Result<EvidencePair> {
    let positive = s_pos.membership(v)? == Membership::In;
    let negative = s_neg.membership(v)? == Membership::In;
    if positive && negative {
        return Err(Error::ContradictoryEvidence);
    }
    Ok(EvidencePair { positive, negative })
}

fn atom_evidence(v: &StateVector, s: &Subspace) -> Result<EvidencePair> {
    evidence_pair(v, s, &s.complement())
}

/// Three-valued valuation: atoms map evidence `(1,0) ↦ 1`, `(0,1) ↦ 0`,
/// `(0,0) ↦ ½`; connectives follow the configured variant.
pub fn three_valued(
    f: &Formula,
    b: &Binding,
    v: &StateVector,
    cfg: &SemanticsConfig,
) -> Result<TruthValue3> {
    v.ensure_normalized()?;
    three_valued_rec(f, b, v, cfg.three_valued_variant)
}

fn three_valued_rec(
    f: &Formula,
    b: &Binding,
    v: &StateVector,
    variant: ThreeValuedVariant,
) -> Result<TruthValue3> {
    use ThreeValuedVariant::*;
    Ok(match f {
        Formula::Atom(name) => {
            let ev = atom_evidence(v, &b.subspace(name)?)?;
            match (ev.positive, ev.negative) {
                (true, _) => TruthValue3::True,
                (_, true) => TruthValue3::False,
                _ => TruthValue3::Undefined,
            }
        }
        Formula::Not(x) => !three_valued_rec(x, b, v, variant)?,
        Formula::And(l, r) => {
            let (l, r) = (
                three_valued_rec(l, b, v, variant)?,
                three_valued_rec(r, b, v, variant)?,
            );
            match variant {
                KleeneStrong => l.kleene_and(r),
                BochvarInternal => l.bochvar_and(r),
            }
        }
        Formula::Or(l, r) => {
            let (l, r) = (
                three_valued_rec(l, b, v, variant)?,
                three_valued_rec(r, b, v, variant)?,
            );
            match variant {
                KleeneStrong => l.kleene_or(r),
                BochvarInternal => l.bochvar_or(r),
            }
        }
        Formula::Xor(l, r) => {
            let (l, r) = (
                three_valued_rec(l, b, v, variant)?,
                three_valued_rec(r, b, v, variant)?,
            );
            match variant {
                KleeneStrong => l.kleene_xor(r),
                BochvarInternal => l.bochvar_xor(r),
            }
        }
    })
}

/// Birkhoff–von Neumann bivaluation.
///
/// Atoms are false exactly when the state lies in the complement of the
/// bound subspace (`b(0,0) = 1`). In truth-functional mode compounds use
/// min/max on bits; in lattice mode every subformula maps to a subspace
/// (`¬ ↦ complement`, `& ↦ meet`, `| ↦ join`, `^ ↦ (a ∨ b) ∧ ¬(a ∧ b)`)
/// and the root is false exactly when the state lies in the root
/// subspace's complement.
pub fn bvn(f: &Formula, b: &Binding, v: &StateVector, cfg: &SemanticsConfig) -> Result<bool> {
    v.ensure_normalized()?;
    match cfg.bvn_mode {
        BvnMode::TruthFunctional => bvn_tf_rec(f, b, v),
        BvnMode::Lattice => {
            let root = bvn_lattice_subspace(f, b)?;
            Ok(root.complement().membership(v)? != Membership::In)
        }
    }
}

fn bvn_tf_rec(f: &Formula, b: &Binding, v: &StateVector) -> Result<bool> {
    Ok(match f {
        Formula::Atom(name) => b.subspace(name)?.complement().membership(v)? != Membership::In,
        Formula::Not(x) => !bvn_tf_rec(x, b, v)?,
        Formula::And(l, r) => bvn_tf_rec(l, b, v)? & bvn_tf_rec(r, b, v)?,
        Formula::Or(l, r) => bvn_tf_rec(l, b, v)? | bvn_tf_rec(r, b, v)?,
        Formula::Xor(l, r) => {
            let (l, r) = (bvn_tf_rec(l, b, v)?, bvn_tf_rec(r, b, v)?);
            (l | r) & !(l & r)
        }
    })
}

fn bvn_lattice_subspace(f: &Formula, b: &Binding) -> Result<Subspace> {
    Ok(match f {
        Formula::Atom(name) => b.subspace(name)?,
        Formula::Not(x) => bvn_lattice_subspace(x, b)?.complement(),
        Formula::And(l, r) => bvn_lattice_subspace(l, b)?.meet(&bvn_lattice_subspace(r, b)?)?,
        Formula::Or(l, r) => bvn_lattice_subspace(l, b)?.join(&bvn_lattice_subspace(r, b)?)?,
        Formula::Xor(l, r) => {
            let ls = bvn_lattice_subspace(l, b)?;
            let rs = bvn_lattice_subspace(r, b)?;
            let join = ls.join(&rs)?;
            let meet = ls.meet(&rs)?;
            join.meet(&meet.complement())?
        }
    })
}

/// Truth assignment for `P1 & P2` under both BvN modes; `dual` flags the
/// states on which the two modes disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualityReport {
    pub tf: bool,
    pub lattice: bool,
    pub dual: bool,
}

pub fn duality_report(v: &StateVector, b: &Binding) -> Result<DualityReport> {
    let f = Formula::parse("P1 & P2").expect("fixed formula");
    let tf = bvn(
        &f,
        b,
        v,
        &SemanticsConfig {
            bvn_mode: BvnMode::TruthFunctional,
            ..Default::default()
        },
    )?;
    let lattice = bvn(
        &f,
        b,
        v,
        &SemanticsConfig {
            bvn_mode: BvnMode::Lattice,
            ..Default::default()
        },
    )?;
    Ok(DualityReport {
        tf,
        lattice,
        dual: tf != lattice,
    })
}

struct PartialEval {
    value: PartialTruth,
    /// Subspace carried for parent-level commutation checks; absent for
    /// undefined formulas.
    subspace: Option<Subspace>,
}

/// Partial bivaluation.
///
/// Atoms: evidence `(1,0) ↦ T`, `(0,1) ↦ F`, `(0,0) ↦ GAP`. Negation is
/// always defined (the complement exists for every subspace) and applies
/// the atom rule to the complemented subspace. Binary connectives are
/// defined only when the child subspaces' projectors commute; when
/// defined, conjunction/disjunction hold exactly when the state lies in
/// the meet/join (positive evidence only, so compounds never GAP), and
/// exclusive disjunction is `min(or, 1 − and)` on those bits.
///
/// Note the structural asymmetry: the compound `P & P` is evaluated by
/// membership in the meet and can be `F` on a superposition for which the
/// atom `P` alone is `GAP`.
pub fn partial(f: &Formula, b: &Binding, v: &StateVector) -> Result<PartialTruth> {
    v.ensure_normalized()?;
    Ok(partial_rec(f, b, v)?.value)
}

fn partial_rec(f: &Formula, b: &Binding, v: &StateVector) -> Result<PartialEval> {
    match f {
        Formula::Atom(name) => {
            let s = b.subspace(name)?;
            let value = evidence_value(v, &s)?;
            Ok(PartialEval {
                value,
                subspace: Some(s),
            })
        }
        Formula::Not(x) => {
            let child = partial_rec(x, b, v)?;
            let Some(s) = child.subspace else {
                return Ok(ndf());
            };
            let comp = s.complement();
            let value = evidence_value(v, &comp)?;
            Ok(PartialEval {
                value,
                subspace: Some(comp),
            })
        }
        Formula::And(l, r) => {
            let Some((ls, rs)) = defined_children(l, r, b, v)? else {
                return Ok(ndf());
            };
            let meet = ls.meet(&rs)?;
            let value = positive_only(v, &meet)?;
            Ok(PartialEval {
                value,
                subspace: Some(meet),
            })
        }
        Formula::Or(l, r) => {
            let Some((ls, rs)) = defined_children(l, r, b, v)? else {
                return Ok(ndf());
            };
            let join = ls.join(&rs)?;
            let value = positive_only(v, &join)?;
            Ok(PartialEval {
                value,
                subspace: Some(join),
            })
        }
        Formula::Xor(l, r) => {
            let Some((ls, rs)) = defined_children(l, r, b, v)? else {
                return Ok(ndf());
            };
            let join = ls.join(&rs)?;
            let meet = ls.meet(&rs)?;
            let or_holds = positive_only(v, &join)? == PartialTruth::True;
            let and_holds = positive_only(v, &meet)? == PartialTruth::True;
            let value = if or_holds && !and_holds {
                PartialTruth::True
            } else {
                PartialTruth::False
            };
            Ok(PartialEval {
                value,
                subspace: Some(join.meet(&meet.complement())?),
            })
        }
    }
}

fn ndf() -> PartialEval {
    PartialEval {
        value: PartialTruth::Ndf,
        subspace: None,
    }
}

fn defined_children(
    l: &Formula,
    r: &Formula,
    b: &Binding,
    v: &StateVector,
) -> Result<Option<(Subspace, Subspace)>> {
    let le = partial_rec(l, b, v)?;
    let re = partial_rec(r, b, v)?;
    let (Some(ls), Some(rs)) = (le.subspace, re.subspace) else {
        return Ok(None);
    };
    if !ls.commutes_with(&rs)? {
        return Ok(None);
    }
    Ok(Some((ls, rs)))
}

fn evidence_value(v: &StateVector, s: &Subspace) -> Result<PartialTruth> {
    Ok(match s.membership(v)? {
        Membership::In => PartialTruth::True,
        Membership::InComplement => PartialTruth::False,
        Membership::Neither => PartialTruth::Gap,
    })
}

fn positive_only(v: &StateVector, s: &Subspace) -> Result<PartialTruth> {
    Ok(if s.membership(v)? == Membership::In {
        PartialTruth::True
    } else {
        PartialTruth::False
    })
}

/// Resolution mode for the comparability query `Q ≶ P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComparabilityMode {
    Bvn,
    Partial,
}

/// Whether two propositions can be true together, from the comparability
/// (`z`) and orthogonality (`w`) statements of their subspaces. BvN mode
/// resolves the no-evidence pair to true (`1 − [[w]]`); partial mode
/// leaves it as a gap.
pub fn comparability(
    q: &Projector,
    p: &Projector,
    mode: ComparabilityMode,
) -> Result<PartialTruth> {
    let rel = relation(&Subspace::from_projector(q), &Subspace::from_projector(p))?;
    Ok(match mode {
        ComparabilityMode::Bvn => {
            if rel.w() {
                PartialTruth::False
            } else {
                PartialTruth::True
            }
        }
        ComparabilityMode::Partial => {
            if rel.z() {
                PartialTruth::True
            } else if rel.w() {
                PartialTruth::False
            } else {
                PartialTruth::Gap
            }
        }
    })
}

/// Probability that the proposition bound to `p` is verified on `v`:
/// 1 when the partial valuation is true, 0 when false, and strictly inside
/// `(0, 1)` on a gap — realized uniformly as the Born probability.
pub fn verification_probability(p: &Projector, v: &StateVector) -> Result<f64> {
    p.born_probability(v)
}
