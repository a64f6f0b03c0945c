//! Synthesis and verification of split interpolants.
//!
//! For a classically valid inference `phi => psi` whose sides share atoms, a
//! *split interpolant* for a pair of standards `(std1, std2)` is a formula
//! `chi` over the shared atoms with `phi => chi` valid under `std1` and
//! `chi => psi` valid under `std2`.
//!
//! Synthesis works from *generator valuations*: valuations making the premise
//! fully true (for the premise-side aggregates [`AggregateKind::C`] and
//! [`AggregateKind::D`]) or the conclusion fully false (for the
//! conclusion-side aggregates [`AggregateKind::E`] and [`AggregateKind::F`]).
//! Each generator contributes a clause over the shared atoms it makes
//! classical; clauses are deduplicated, sorted, and folded into an aggregate
//! whose shape matches the scheme's strong-Kleene connective (conjunctive
//! shapes for strong-Kleene conjunction, disjunctive shapes translated through
//! negation otherwise).
//!
//! A generator that leaves *every* shared atom at `1/2` blocks one side: no
//! shared-atom formula can take a classical value there, because every
//! definable function fixes the all-`1/2` point. [`blocked`] detects these
//! witnesses, and [`split_interpolant`] turns them into machine-checked
//! no-interpolant certificates exactly when they defeat the requested
//! standards (a premise-side block defeats a strict premise standard, a
//! conclusion-side block defeats a tolerant conclusion standard).
//!
//! Every produced interpolant is re-verified exhaustively on both legs before
//! being returned; on verification failure the pipeline falls back to the
//! exact clone-based search.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::clones::{arity_cap, interpolant_exists, ArityCapExceeded, InterpolantSearch};
use crate::semantics::{
    bivaluations, classically_valid, eval, valid, valuations, Inference, Standard, Validity,
    Valuation,
};
use crate::syntax::{fold_conj, fold_disj, Atom, Formula, Literal};
use crate::truth::{ConnChoice, Scheme, TruthValue};

/// How a generator clause is assembled into a formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClauseShape {
    /// A conjunction of the literals.
    Conj,
    /// The negated disjunction of the negated literals (conjunction through
    /// negation, for schemes whose disjunction is strong Kleene).
    NegDisj,
    /// A disjunction of the literals.
    Disj,
    /// The negated conjunction of the negated literals (disjunction through
    /// negation, for schemes whose conjunction is strong Kleene).
    NegConj,
}

impl ClauseShape {
    /// Whether literal polarity follows the premise convention (positive
    /// literal where the generator assigns `1`) or the conclusion convention
    /// (positive where it assigns `0`).
    pub const fn premise_polarity(self) -> bool {
        matches!(self, ClauseShape::Conj | ClauseShape::NegDisj)
    }
}

/// A generator clause: literals over shared atoms, sorted canonically, plus
/// an assembly shape.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Clause {
    literals: Vec<Literal>,
    shape: ClauseShape,
}

// Ord piggybacks on the derived lexicographic order of `literals` (the shape
// is constant within one aggregate), which is the canonical clause order.
impl ClauseShape {
    const fn rank(self) -> u8 {
        match self {
            ClauseShape::Conj => 0,
            ClauseShape::NegDisj => 1,
            ClauseShape::Disj => 2,
            ClauseShape::NegConj => 3,
        }
    }
}

impl PartialOrd for ClauseShape {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ClauseShape {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

/// Error returned when a generator valuation yields no literals: every shared
/// atom sits at `1/2`, so the clause would be empty.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("generator valuation assigns 1/2 to every shared atom: {witness}")]
pub struct EmptyClause {
    /// The offending generator valuation.
    pub witness: Valuation,
}

impl Clause {
    /// Builds the clause contributed by `generator` over the shared atoms it
    /// makes classical, with polarity determined by `shape`.
    pub fn build(
        generator: &Valuation,
        shared: &[Atom],
        shape: ClauseShape,
    ) -> Result<Clause, EmptyClause> {
        let mut literals: Vec<Literal> = shared
            .iter()
            .filter_map(|a| {
                let value = generator.get(a)?;
                let positive = if shape.premise_polarity() {
                    value == TruthValue::T
                } else {
                    value == TruthValue::F
                };
                value.is_classical().then(|| Literal {
                    atom: a.clone(),
                    positive,
                })
            })
            .collect();
        if literals.is_empty() {
            return Err(EmptyClause {
                witness: generator.clone(),
            });
        }
        literals.sort();
        Ok(Clause { literals, shape })
    }

    /// The literals, in canonical order.
    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    /// The assembly shape.
    pub fn shape(&self) -> ClauseShape {
        self.shape
    }

    /// Assembles the clause into a formula.
    pub fn to_formula(&self) -> Formula {
        let direct = self.literals.iter().map(Literal::to_formula);
        let negated = self.literals.iter().map(|l| l.negated().to_formula());
        match self.shape {
            ClauseShape::Conj => fold_conj(direct).expect("clauses are non-empty"),
            ClauseShape::Disj => fold_disj(direct).expect("clauses are non-empty"),
            ClauseShape::NegDisj => {
                Formula::neg(fold_disj(negated).expect("clauses are non-empty"))
            }
            ClauseShape::NegConj => {
                Formula::neg(fold_conj(negated).expect("clauses are non-empty"))
            }
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

/// The four aggregate constructions.
///
/// [`C`](AggregateKind::C) and [`D`](AggregateKind::D) are generated by
/// premise-satisfying valuations (conjunctive clause content);
/// [`E`](AggregateKind::E) and [`F`](AggregateKind::F) by
/// conclusion-falsifying valuations (disjunctive clause content). `C or F`
/// suit schemes with strong-Kleene conjunction, `D or E` suit strong-Kleene
/// disjunction (and the all-weak scheme).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AggregateKind {
    /// Negated conjunction of negated premise clauses.
    C,
    /// Disjunction of negation-shaped premise clauses.
    D,
    /// Negated disjunction of negated conclusion clauses.
    E,
    /// Conjunction of negation-shaped conclusion clauses.
    F,
}

impl AggregateKind {
    /// Whether generators are premise-satisfying (otherwise
    /// conclusion-falsifying) valuations.
    pub const fn premise_generated(self) -> bool {
        matches!(self, AggregateKind::C | AggregateKind::D)
    }

    /// The clause shape this aggregate uses.
    pub const fn clause_shape(self) -> ClauseShape {
        match self {
            AggregateKind::C => ClauseShape::Conj,
            AggregateKind::D => ClauseShape::NegDisj,
            AggregateKind::E => ClauseShape::Disj,
            AggregateKind::F => ClauseShape::NegConj,
        }
    }

    /// The strategy tag reported when this aggregate is the interpolant.
    pub const fn strategy(self) -> Strategy {
        match self {
            AggregateKind::C => Strategy::C,
            AggregateKind::D => Strategy::D,
            AggregateKind::E => Strategy::E,
            AggregateKind::F => Strategy::F,
        }
    }
}

impl fmt::Display for AggregateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AggregateKind::C => "C",
            AggregateKind::D => "D",
            AggregateKind::E => "E",
            AggregateKind::F => "F",
        })
    }
}

/// Error produced by [`aggregate`].
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AggregateError {
    /// The two formulas have no atom in common.
    #[error("the formulas share no atoms")]
    NoSharedAtoms,
    /// Some generator valuation leaves every shared atom at `1/2`.
    #[error(transparent)]
    Blocked(#[from] EmptyClause),
}

/// Builds the `kind` aggregate for the pair `(phi, psi)` under `scheme`.
///
/// Limit defaults: with no premise-satisfying valuation, `C` and `D` are
/// `p & ~p` for the least shared atom `p`; with no conclusion-falsifying
/// valuation, `E` and `F` are `p | ~p`.
pub fn aggregate(
    kind: AggregateKind,
    scheme: Scheme,
    phi: &Formula,
    psi: &Formula,
) -> Result<Formula, AggregateError> {
    let shared = shared_atoms(phi, psi);
    if shared.is_empty() {
        return Err(AggregateError::NoSharedAtoms);
    }
    let side = if kind.premise_generated() { phi } else { psi };
    Ok(aggregate_over(kind, scheme, side, &shared)?.0)
}

/// Scans the generator side afresh and assembles the `kind` aggregate over
/// the given shared atoms. Returns the formula plus (clauses kept, duplicates
/// removed).
pub(crate) fn aggregate_over(
    kind: AggregateKind,
    scheme: Scheme,
    side: &Formula,
    shared: &[Atom],
) -> Result<(Formula, usize, usize), EmptyClause> {
    let target = if kind.premise_generated() {
        TruthValue::T
    } else {
        TruthValue::F
    };
    let scan = scan_side(scheme, side, shared, target);
    assemble(kind, shared, &scan.generators)
}

/// The sorted intersection of the two formulas' atom sets.
pub fn shared_atoms(phi: &Formula, psi: &Formula) -> Vec<Atom> {
    let psi_atoms = psi.atoms();
    phi.atoms()
        .into_iter()
        .filter(|a| psi_atoms.contains(a))
        .collect()
}

struct SideScan {
    generators: Vec<Valuation>,
    block_witness: Option<Valuation>,
    scanned: usize,
}

/// Scans all valuations of `formula`'s atoms, collecting those where the
/// formula takes `target`, and the first among them (if any) that assigns
/// `1/2` to every shared atom.
fn scan_side(scheme: Scheme, formula: &Formula, shared: &[Atom], target: TruthValue) -> SideScan {
    let atoms = formula.atoms();
    let mut generators = Vec::new();
    let mut block_witness = None;
    let mut scanned = 0;
    for v in valuations(&atoms) {
        scanned += 1;
        if eval(scheme, &v, formula).expect("all atoms assigned") == target {
            if block_witness.is_none()
                && shared.iter().all(|a| v.get(a) == Some(TruthValue::N))
            {
                block_witness = Some(v.clone());
            }
            generators.push(v);
        }
    }
    SideScan {
        generators,
        block_witness,
        scanned,
    }
}

/// Deduplicates, sorts, and folds generator clauses into the aggregate.
/// Returns the formula plus (clauses kept, duplicates removed).
fn assemble(
    kind: AggregateKind,
    shared: &[Atom],
    generators: &[Valuation],
) -> Result<(Formula, usize, usize), EmptyClause> {
    if generators.is_empty() {
        let least = Formula::Atom(shared[0].clone());
        let limit = if kind.premise_generated() {
            Formula::and(least.clone(), Formula::neg(least))
        } else {
            Formula::or(least.clone(), Formula::neg(least))
        };
        return Ok((limit, 0, 0));
    }
    let mut clauses = BTreeSet::new();
    for v in generators {
        clauses.insert(Clause::build(v, shared, kind.clause_shape())?);
    }
    let kept = clauses.len();
    let removed = generators.len() - kept;
    let formulas = clauses.into_iter().map(|c| c.to_formula());
    let chi = match kind {
        AggregateKind::C => {
            Formula::neg(fold_conj(formulas.map(Formula::neg)).expect("non-empty"))
        }
        AggregateKind::D => fold_disj(formulas).expect("non-empty"),
        AggregateKind::E => {
            Formula::neg(fold_disj(formulas.map(Formula::neg)).expect("non-empty"))
        }
        AggregateKind::F => fold_conj(formulas).expect("non-empty"),
    };
    Ok((chi, kept, removed))
}

/// Which side of an inference a blocking valuation lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockSide {
    /// The premise can be fully true with every shared atom at `1/2`; this
    /// defeats strict premise standards.
    Premise,
    /// The conclusion can be fully false with every shared atom at `1/2`;
    /// this defeats tolerant conclusion standards.
    Conclusion,
}

impl fmt::Display for BlockSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockSide::Premise => "premise-side",
            BlockSide::Conclusion => "conclusion-side",
        })
    }
}

/// Blocking analysis for a formula pair.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    /// First valuation making the premise true with all shared atoms `1/2`.
    pub premise_witness: Option<Valuation>,
    /// First valuation making the conclusion false with all shared atoms `1/2`.
    pub conclusion_witness: Option<Valuation>,
}

impl BlockReport {
    /// Whether neither side is blocked.
    pub fn is_unblocked(&self) -> bool {
        self.premise_witness.is_none() && self.conclusion_witness.is_none()
    }

    /// The reported block, premise side taking precedence.
    pub fn primary(&self) -> Option<(BlockSide, &Valuation)> {
        if let Some(w) = &self.premise_witness {
            Some((BlockSide::Premise, w))
        } else {
            self.conclusion_witness
                .as_ref()
                .map(|w| (BlockSide::Conclusion, w))
        }
    }
}

/// Scans both sides of the pair for blocking valuations.
///
/// Intended for pairs with at least one shared atom; with none, every
/// generator trivially counts as blocking.
pub fn blocked(scheme: Scheme, phi: &Formula, psi: &Formula) -> BlockReport {
    let shared = shared_atoms(phi, psi);
    BlockReport {
        premise_witness: scan_side(scheme, phi, &shared, TruthValue::T).block_witness,
        conclusion_witness: scan_side(scheme, psi, &shared, TruthValue::F).block_witness,
    }
}

/// A synthesis plan: which aggregate pair a scheme supports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyPlan {
    /// `C` in the main case, `F` in the premise-unsatisfiable limit case —
    /// for schemes with strong-Kleene conjunction.
    Cf,
    /// `D` in the main case, `E` in the limit case — for schemes with
    /// strong-Kleene disjunction, and for the all-weak scheme.
    De,
}

impl StrategyPlan {
    /// The aggregate used when some valuation satisfies the premise.
    pub const fn main_kind(self) -> AggregateKind {
        match self {
            StrategyPlan::Cf => AggregateKind::C,
            StrategyPlan::De => AggregateKind::D,
        }
    }

    /// The aggregate used when the premise is unsatisfiable (and as the
    /// second candidate generally).
    pub const fn limit_kind(self) -> AggregateKind {
        match self {
            StrategyPlan::Cf => AggregateKind::F,
            StrategyPlan::De => AggregateKind::E,
        }
    }
}

impl fmt::Display for StrategyPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrategyPlan::Cf => "CF",
            StrategyPlan::De => "DE",
        })
    }
}

/// The synthesis plan a scheme supports, if any.
///
/// Strong-Kleene conjunction selects [`StrategyPlan::Cf`] (also when the
/// disjunction is strong Kleene too); strong-Kleene disjunction otherwise
/// selects [`StrategyPlan::De`]; the all-weak scheme supports
/// [`StrategyPlan::De`]; the remaining eight schemes have no plan.
pub fn strategy_for(scheme: Scheme) -> Option<StrategyPlan> {
    if scheme.conj_choice() == ConnChoice::Sk {
        Some(StrategyPlan::Cf)
    } else if scheme.disj_choice() == ConnChoice::Sk
        || (scheme.conj_choice() == ConnChoice::Wk && scheme.disj_choice() == ConnChoice::Wk)
    {
        Some(StrategyPlan::De)
    } else {
        None
    }
}

/// How a returned interpolant was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Premise-generated, conjunctive clauses under double negation.
    C,
    /// Premise-generated, negation-shaped clauses disjoined.
    D,
    /// Conclusion-generated, disjunctive clauses under double negation.
    E,
    /// Conclusion-generated, negation-shaped clauses conjoined.
    F,
    /// Classical strongest interpolant over the shared atoms (sound when both
    /// standards are strict-to-tolerant).
    Classical,
    /// Exhaustive search over the definable shared-atom functions.
    CloneSearch,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::C => "C",
            Strategy::D => "D",
            Strategy::E => "E",
            Strategy::F => "F",
            Strategy::Classical => "classical",
            Strategy::CloneSearch => "clone-search",
        })
    }
}

impl Serialize for Strategy {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A machine-checkable reason why no interpolant exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A blocking valuation defeats one of the requested standards: every
    /// shared-atom formula takes `1/2` on the witness, so it cannot reach a
    /// strict premise target (premise side) and cannot stay out of a tolerant
    /// antecedent while the conclusion is false (conclusion side).
    Blocked {
        /// Which side is blocked.
        side: BlockSide,
        /// The blocking valuation.
        witness: Valuation,
        /// Clone elements exhausted in confirmation, when the shared-atom
        /// count is within the arity cap.
        clone_elements_checked: Option<usize>,
    },
    /// The clone of definable shared-atom functions was exhausted.
    CloneExhausted {
        /// Number of shared atoms.
        shared_arity: usize,
        /// Clone elements inspected.
        elements_checked: usize,
    },
}

/// The outcome of [`split_interpolant`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// A verified interpolant.
    Interpolant {
        /// The interpolant, over the shared atoms.
        chi: Formula,
        /// How it was obtained.
        strategy: Strategy,
    },
    /// Certified absence of an interpolant.
    NoInterpolant {
        /// The certificate.
        certificate: Certificate,
    },
    /// The inference is not classically valid, so interpolation is not asked.
    NotClassicallyValid {
        /// The first refuting bivaluation.
        counterexample: Valuation,
    },
    /// The formulas share no atoms.
    NoSharedAtoms,
}

/// Work counters for one [`split_interpolant`] run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    /// Valuations enumerated across all analysis phases (classical check,
    /// side scans, aggregate construction, verification, clone search).
    pub valuations_scanned: usize,
    /// Clauses in the synthesized aggregate after deduplication.
    pub clauses: usize,
    /// Duplicate clauses removed.
    pub dedup_count: usize,
}

/// Full result of a [`split_interpolant`] run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolationReport {
    /// What happened.
    pub outcome: Outcome,
    /// Verification verdict of `phi => chi` under `std1`, when an
    /// interpolant was produced.
    pub first_leg: Option<bool>,
    /// Verification verdict of `chi => psi` under `std2`, when an
    /// interpolant was produced.
    pub second_leg: Option<bool>,
    /// Blocking analysis, when it was reached.
    pub block: Option<BlockReport>,
    /// Work counters.
    pub stats: Stats,
}

/// Errors of [`split_interpolant`].
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InterpolationError {
    /// The standard pair is outside the supported combinations.
    #[error("unsupported standard pair ({std1}, {std2}): premises take ss or st, conclusions tt or st")]
    UnsupportedStandards {
        /// Requested premise-side standard.
        std1: Standard,
        /// Requested conclusion-side standard.
        std2: Standard,
    },
    /// Exhaustive search was needed but the shared-atom count exceeds the cap.
    #[error(transparent)]
    ArityCap(#[from] ArityCapExceeded),
}

/// Result of checking a candidate interpolant: atom containment plus both
/// leg validities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolantCheck {
    /// Whether the candidate's atoms all occur on both sides.
    pub atoms_contained: bool,
    /// Validity of `phi => chi` under `std1`.
    pub first_leg: Validity,
    /// Validity of `chi => psi` under `std2`.
    pub second_leg: Validity,
}

impl InterpolantCheck {
    /// Whether all three checks pass.
    pub fn all_pass(&self) -> bool {
        self.atoms_contained && self.first_leg.is_valid() && self.second_leg.is_valid()
    }
}

/// Exhaustively checks a candidate interpolant on atom containment and both
/// legs.
pub fn verify_split_interpolant(
    scheme: Scheme,
    std1: Standard,
    std2: Standard,
    phi: &Formula,
    psi: &Formula,
    chi: &Formula,
) -> InterpolantCheck {
    let shared = shared_atoms(phi, psi);
    let atoms_contained = chi.atoms().iter().all(|a| shared.contains(a));
    InterpolantCheck {
        atoms_contained,
        first_leg: valid(scheme, std1, &Inference::single(phi.clone(), chi.clone())),
        second_leg: valid(scheme, std2, &Inference::single(chi.clone(), psi.clone())),
    }
}

/// Classical strongest interpolant over the shared atoms: the disjunction of
/// the shared-atom minterms of the premise's satisfying bivaluations, or
/// `p & ~p` when there are none. Returns the formula plus (clauses kept,
/// duplicates removed, bivaluations scanned).
pub(crate) fn classical_interpolant(phi: &Formula, shared: &[Atom]) -> (Formula, usize, usize, usize) {
    let atoms = phi.atoms();
    let mut minterms: BTreeSet<Clause> = BTreeSet::new();
    let mut generated = 0;
    let mut scanned = 0;
    for b in bivaluations(&atoms) {
        scanned += 1;
        // Boolean normality: any scheme evaluates bivaluations classically.
        let value = eval(Scheme::all()[0], &b, phi).expect("all atoms assigned");
        if value == TruthValue::T {
            generated += 1;
            minterms.insert(
                Clause::build(&b, shared, ClauseShape::Conj)
                    .expect("bivaluations are classical on every shared atom"),
            );
        }
    }
    if minterms.is_empty() {
        let least = Formula::Atom(shared[0].clone());
        return (
            Formula::and(least.clone(), Formula::neg(least)),
            0,
            0,
            scanned,
        );
    }
    let kept = minterms.len();
    let chi = fold_disj(minterms.into_iter().map(|c| c.to_formula())).expect("non-empty");
    (chi, kept, generated - kept, scanned)
}

/// Synthesizes and verifies a split interpolant for `phi => psi` under
/// `(std1, std2)`, or certifies that none exists.
///
/// Premise standards must be `ss` or `st`; conclusion standards `tt` or `st`.
///
/// Pipeline: no shared atoms and classical invalidity short-circuit; schemes
/// without a synthesis plan use the classical strongest interpolant when both
/// standards are strict-to-tolerant, and the exact clone search otherwise;
/// schemes with a plan first return a blocking certificate when a block
/// defeats the requested standards, then try the plan's aggregates (main
/// kind, then limit kind, then — for strict-to-tolerant on both sides — the
/// classical interpolant), verifying each candidate exhaustively; if no
/// candidate verifies, the clone search decides.
pub fn split_interpolant(
    scheme: Scheme,
    std1: Standard,
    std2: Standard,
    phi: &Formula,
    psi: &Formula,
) -> Result<InterpolationReport, InterpolationError> {
    if !matches!(std1, Standard::Ss | Standard::St) || !matches!(std2, Standard::Tt | Standard::St)
    {
        return Err(InterpolationError::UnsupportedStandards { std1, std2 });
    }

    let mut stats = Stats::default();
    let shared = shared_atoms(phi, psi);
    if shared.is_empty() {
        return Ok(InterpolationReport {
            outcome: Outcome::NoSharedAtoms,
            first_leg: None,
            second_leg: None,
            block: None,
            stats,
        });
    }

    let inference = Inference::single(phi.clone(), psi.clone());
    stats.valuations_scanned += 1usize << inference.atoms().len();
    if let Validity::Invalid { counterexample } = classically_valid(&inference) {
        return Ok(InterpolationReport {
            outcome: Outcome::NotClassicallyValid { counterexample },
            first_leg: None,
            second_leg: None,
            block: None,
            stats,
        });
    }

    let premise_scan = scan_side(scheme, phi, &shared, TruthValue::T);
    let conclusion_scan = scan_side(scheme, psi, &shared, TruthValue::F);
    stats.valuations_scanned += premise_scan.scanned + conclusion_scan.scanned;
    let block = BlockReport {
        premise_witness: premise_scan.block_witness.clone(),
        conclusion_witness: conclusion_scan.block_witness.clone(),
    };

    let finish_interpolant =
        |chi: Formula, strategy: Strategy, block: BlockReport, mut stats: Stats| {
            let check = verify_split_interpolant(scheme, std1, std2, phi, psi, &chi);
            stats.valuations_scanned += 3usize.pow(phi.atoms().len() as u32)
                + 3usize.pow(psi.atoms().len() as u32);
            debug_assert!(check.all_pass(), "returned interpolant must verify");
            InterpolationReport {
                outcome: Outcome::Interpolant { chi, strategy },
                first_leg: Some(check.first_leg.is_valid()),
                second_leg: Some(check.second_leg.is_valid()),
                block: Some(block),
                stats,
            }
        };

    // Exact decision by clone search, shared by several paths below.
    let clone_decide = |mut stats: Stats,
                        block: BlockReport|
     -> Result<InterpolationReport, InterpolationError> {
        stats.valuations_scanned += premise_scan.scanned + conclusion_scan.scanned;
        match interpolant_exists(scheme, std1, std2, phi, psi)? {
            InterpolantSearch::Found { witness, .. } => {
                Ok(finish_interpolant(witness, Strategy::CloneSearch, block, stats))
            }
            InterpolantSearch::NoneExists { elements_checked } => Ok(InterpolationReport {
                outcome: Outcome::NoInterpolant {
                    certificate: Certificate::CloneExhausted {
                        shared_arity: shared.len(),
                        elements_checked,
                    },
                },
                first_leg: None,
                second_leg: None,
                block: Some(block),
                stats,
            }),
        }
    };

    let Some(plan) = strategy_for(scheme) else {
        if (std1, std2) == (Standard::St, Standard::St) {
            let (chi, kept, removed, scanned) = classical_interpolant(phi, &shared);
            stats.clauses = kept;
            stats.dedup_count = removed;
            stats.valuations_scanned += scanned;
            return Ok(finish_interpolant(chi, Strategy::Classical, block, stats));
        }
        return clone_decide(stats, block);
    };

    // A block defeats the request when the premise side blocks a strict
    // premise standard or the conclusion side blocks a tolerant conclusion
    // standard: every shared-atom candidate evaluates to 1/2 on the witness.
    let defeated = if std1 == Standard::Ss {
        block
            .premise_witness
            .clone()
            .map(|w| (BlockSide::Premise, w))
    } else {
        None
    }
    .or_else(|| {
        if std2 == Standard::Tt {
            block
                .conclusion_witness
                .clone()
                .map(|w| (BlockSide::Conclusion, w))
        } else {
            None
        }
    });
    if let Some((side, witness)) = defeated {
        let mut clone_elements_checked = None;
        if shared.len() <= arity_cap() {
            stats.valuations_scanned += premise_scan.scanned + conclusion_scan.scanned;
            match interpolant_exists(scheme, std1, std2, phi, psi)? {
                InterpolantSearch::NoneExists { elements_checked } => {
                    clone_elements_checked = Some(elements_checked);
                }
                // Cannot happen — the witness forces every candidate to 1/2 —
                // but if the exhaustive search ever disagreed, trust it.
                InterpolantSearch::Found { witness: chi, .. } => {
                    return Ok(finish_interpolant(chi, Strategy::CloneSearch, block, stats));
                }
            }
        }
        return Ok(InterpolationReport {
            outcome: Outcome::NoInterpolant {
                certificate: Certificate::Blocked {
                    side,
                    witness,
                    clone_elements_checked,
                },
            },
            first_leg: None,
            second_leg: None,
            block: Some(block),
            stats,
        });
    }

    // Candidate cascade. Aggregates whose generators are blocked are skipped
    // (their clause set is undefined); every surviving candidate is verified
    // exhaustively and the first to pass is returned.
    let main_first = !premise_scan.generators.is_empty();
    let kinds = if main_first {
        [plan.main_kind(), plan.limit_kind()]
    } else {
        [plan.limit_kind(), plan.main_kind()]
    };
    let mut candidates: Vec<(Formula, Strategy, usize, usize)> = Vec::new();
    for kind in kinds {
        let generators = if kind.premise_generated() {
            &premise_scan.generators
        } else {
            &conclusion_scan.generators
        };
        match assemble(kind, &shared, generators) {
            Ok((chi, kept, removed)) => candidates.push((chi, kind.strategy(), kept, removed)),
            Err(EmptyClause { .. }) => continue,
        }
    }
    if (std1, std2) == (Standard::St, Standard::St) {
        let (chi, kept, removed, scanned) = classical_interpolant(phi, &shared);
        stats.valuations_scanned += scanned;
        candidates.push((chi, Strategy::Classical, kept, removed));
    }

    for (chi, strategy, kept, removed) in candidates {
        let check = verify_split_interpolant(scheme, std1, std2, phi, psi, &chi);
        stats.valuations_scanned +=
            3usize.pow(phi.atoms().len() as u32) + 3usize.pow(psi.atoms().len() as u32);
        if check.all_pass() {
            stats.clauses = kept;
            stats.dedup_count = removed;
            return Ok(InterpolationReport {
                outcome: Outcome::Interpolant { chi, strategy },
                first_leg: Some(true),
                second_leg: Some(true),
                block: Some(block),
                stats,
            });
        }
    }

    clone_decide(stats, block)
}
