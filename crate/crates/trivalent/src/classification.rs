//! The complete verdict map for split interpolation: which combinations of a
//! connective scheme and a pair of consequence standards satisfy the property,
//! with machine-checked evidence on both sides of every verdict.
//!
//! A [`Cell`] fixes a scheme and a standard pair — the first standard governs
//! the premise-to-interpolant leg, the second the interpolant-to-conclusion
//! leg. [`classify_cell`] decides each of the 400 cells:
//!
//! * **Fails** — [`catalog_counterexample`] supplies a counterexample pair,
//!   which is then re-certified from scratch: the inference is classically
//!   valid, shares at least one atom, and admits no shared-atom interpolant
//!   (shown by exhaustive search over every definable shared-atom function,
//!   or by the emptiness of tolerant-premise/strict-conclusion consequence).
//! * **Holds** — an exhaustive sweep over a finite formula corpus
//!   ([`CorpusSpec`]) checks every classically valid shared-atom pair: an
//!   unblocked pair must synthesize an interpolant that verifies on both
//!   legs, and a blocked pair must be confirmed interpolant-free by clone
//!   search. The corpus is recorded in the verdict.
//!
//! [`render_table`] turns the verdicts into three summary grids — the
//! scheme-independent standards grid, the 4×4 scheme-support grid, and the
//! full standards grid — in text, Markdown, or CSV form.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;
use std::thread;

use serde::Serialize;

use crate::clones::{arity_cap, clone_closure, interpolant_exists, tuple_index, InterpolantSearch};
use crate::interpolation::{
    aggregate_over, classical_interpolant, shared_atoms, strategy_for, AggregateKind, StrategyPlan,
};
use crate::semantics::{
    bivaluations, classically_valid, eval, valuations, Inference, Standard, Valuation,
};
use crate::syntax::{enumerate_formulas, parse, Atom, Formula};
use crate::truth::{Scheme, TruthValue};

/// One entry of the verdict map: a scheme plus the standards for the two
/// interpolant legs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cell {
    /// The connective scheme.
    pub scheme: Scheme,
    /// Standard for the premise-to-interpolant leg.
    pub std1: Standard,
    /// Standard for the interpolant-to-conclusion leg.
    pub std2: Standard,
}

impl Cell {
    /// Bundles the three coordinates.
    pub fn new(scheme: Scheme, std1: Standard, std2: Standard) -> Cell {
        Cell { scheme, std1, std2 }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}, {})", self.scheme, self.std1, self.std2)
    }
}

/// Every cell, scheme-major, standards in canonical order — 400 in total.
pub fn all_cells() -> Vec<Cell> {
    let mut cells = Vec::with_capacity(400);
    for scheme in Scheme::all() {
        for std1 in Standard::ALL {
            for std2 in Standard::ALL {
                cells.push(Cell { scheme, std1, std2 });
            }
        }
    }
    cells
}

/// Error for a corpus request the exhaustive machinery cannot tabulate.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InvalidCorpus {
    /// The atom pool was empty.
    #[error("corpus atom pool is empty")]
    NoAtoms,
    /// The atom pool exceeds the tabulation limit.
    #[error("corpus atom pool has {count} atoms, above the limit of {MAX_POOL_ATOMS}")]
    TooManyAtoms {
        /// Requested pool size.
        count: usize,
    },
}

/// Upper bound on the corpus atom pool (keeps the per-formula truth and
/// classical tables in single machine words).
pub const MAX_POOL_ATOMS: usize = 3;

/// A finite, deterministic formula corpus: every formula over a fixed atom
/// pool up to a connective-depth bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSpec {
    atoms: Vec<Atom>,
    max_depth: usize,
}

impl CorpusSpec {
    /// A corpus over the given pool (sorted and deduplicated) up to
    /// `max_depth`.
    pub fn new(mut atoms: Vec<Atom>, max_depth: usize) -> Result<CorpusSpec, InvalidCorpus> {
        atoms.sort();
        atoms.dedup();
        if atoms.is_empty() {
            return Err(InvalidCorpus::NoAtoms);
        }
        if atoms.len() > MAX_POOL_ATOMS {
            return Err(InvalidCorpus::TooManyAtoms { count: atoms.len() });
        }
        Ok(CorpusSpec { atoms, max_depth })
    }

    /// The corpus used for classification verdicts: atoms `p, q, r`, depth 2.
    pub fn standard() -> CorpusSpec {
        let atoms = ["p", "q", "r"]
            .into_iter()
            .map(|name| Atom::new(name).expect("valid atom name"))
            .collect();
        CorpusSpec::new(atoms, 2).expect("standard corpus is valid")
    }

    /// The atom pool, sorted.
    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// The connective-depth bound.
    pub fn max_depth(&self) -> usize {
        self.max_depth
    }
}

/// Compact shape of an enumerated formula: its connective plus the corpus
/// indices of its children (children always precede their parent).
#[derive(Clone, Copy, Debug)]
enum Shape {
    Atom(u8),
    Neg(u32),
    And(u32, u32),
    Or(u32, u32),
}

/// A fully tabulated corpus: every formula of a [`CorpusSpec`] together with
/// per-point truth tables and per-bivaluation classical tables, computed
/// compositionally (children before parents) rather than by per-formula
/// recursion.
pub struct CorpusTable {
    spec: CorpusSpec,
    /// All three-valued valuations of the pool, in tuple order.
    points: Vec<Valuation>,
    formulas: Vec<Formula>,
    shapes: Vec<Shape>,
    /// Bit `k` set iff pool atom `k` occurs in the formula.
    atom_masks: Vec<u8>,
    /// Bit `b` set iff bivaluation `b` makes the formula true.
    cls: Vec<u8>,
    bival_mask: u8,
}

impl CorpusTable {
    /// Enumerates and tabulates the corpus.
    pub fn build(spec: &CorpusSpec) -> CorpusTable {
        let pool = spec.atoms.clone();
        let formulas = enumerate_formulas(&pool, spec.max_depth);
        let index: HashMap<&Formula, u32> = formulas
            .iter()
            .enumerate()
            .map(|(i, f)| (f, i as u32))
            .collect();
        let shapes: Vec<Shape> = formulas
            .iter()
            .map(|f| match f {
                Formula::Atom(a) => {
                    let k = pool.iter().position(|x| x == a).expect("atom from the pool");
                    Shape::Atom(k as u8)
                }
                Formula::Neg(c) => Shape::Neg(index[&**c]),
                Formula::And(l, r) => Shape::And(index[&**l], index[&**r]),
                Formula::Or(l, r) => Shape::Or(index[&**l], index[&**r]),
            })
            .collect();

        let mut atom_masks = vec![0u8; formulas.len()];
        for (i, shape) in shapes.iter().enumerate() {
            atom_masks[i] = match *shape {
                Shape::Atom(k) => 1 << k,
                Shape::Neg(c) => atom_masks[c as usize],
                Shape::And(l, r) | Shape::Or(l, r) => {
                    atom_masks[l as usize] | atom_masks[r as usize]
                }
            };
        }

        let bival_mask = ((1u16 << (1 << pool.len())) - 1) as u8;
        let mut atom_bits = vec![0u8; pool.len()];
        for (b, v) in bivaluations(&pool).enumerate() {
            for (k, a) in pool.iter().enumerate() {
                if v.get(a) == Some(TruthValue::T) {
                    atom_bits[k] |= 1 << b;
                }
            }
        }
        let mut cls = vec![0u8; formulas.len()];
        for (i, shape) in shapes.iter().enumerate() {
            cls[i] = match *shape {
                Shape::Atom(k) => atom_bits[k as usize],
                Shape::Neg(c) => !cls[c as usize] & bival_mask,
                Shape::And(l, r) => cls[l as usize] & cls[r as usize],
                Shape::Or(l, r) => cls[l as usize] | cls[r as usize],
            };
        }

        CorpusTable {
            points: valuations(&pool).collect(),
            spec: spec.clone(),
            formulas,
            shapes,
            atom_masks,
            cls,
            bival_mask,
        }
    }

    /// The generating corpus description.
    pub fn spec(&self) -> &CorpusSpec {
        &self.spec
    }

    /// Number of formulas.
    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    /// Whether the corpus is empty (it never is for a valid spec).
    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    /// The enumerated formulas, children always before parents.
    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    /// The formula at `index`.
    pub fn formula(&self, index: usize) -> &Formula {
        &self.formulas[index]
    }

    /// All three-valued valuations of the pool, in a fixed order.
    pub fn points(&self) -> &[Valuation] {
        &self.points
    }

    /// One-line human description, recorded inside verdicts.
    pub fn describe(&self) -> String {
        let atoms: Vec<String> = self.spec.atoms.iter().map(ToString::to_string).collect();
        format!(
            "{} formulas over {} up to depth {}",
            self.formulas.len(),
            atoms.join(", "),
            self.spec.max_depth
        )
    }

    /// Truth value of every formula at every point under `scheme`, as one
    /// flat vector: formula `i` at point `t` sits at `i * points().len() + t`.
    pub fn values(&self, scheme: Scheme) -> Vec<TruthValue> {
        let p = self.points.len();
        let atom_vals: Vec<Vec<TruthValue>> = self
            .spec
            .atoms
            .iter()
            .map(|a| {
                self.points
                    .iter()
                    .map(|v| v.get(a).expect("pool atom assigned"))
                    .collect()
            })
            .collect();
        let mut out = vec![TruthValue::F; self.formulas.len() * p];
        for (i, shape) in self.shapes.iter().enumerate() {
            for t in 0..p {
                out[i * p + t] = match *shape {
                    Shape::Atom(k) => atom_vals[k as usize][t],
                    Shape::Neg(c) => scheme.neg(out[c as usize * p + t]),
                    Shape::And(l, r) => {
                        scheme.conj(out[l as usize * p + t], out[r as usize * p + t])
                    }
                    Shape::Or(l, r) => scheme.disj(out[l as usize * p + t], out[r as usize * p + t]),
                };
            }
        }
        out
    }

    /// Whether premise `i` classically entails conclusion `j`.
    pub fn classically_valid_pair(&self, i: usize, j: usize) -> bool {
        self.cls[i] & !self.cls[j] & self.bival_mask == 0
    }

    /// Bitmask (over pool positions) of the atoms shared by formulas `i` and
    /// `j`.
    pub fn shared_atom_mask(&self, i: usize, j: usize) -> u8 {
        self.atom_masks[i] & self.atom_masks[j]
    }

    /// The sorted atom list selected by a pool bitmask.
    fn mask_atoms(&self, mask: u8) -> Vec<Atom> {
        self.spec
            .atoms
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, a)| a.clone())
            .collect()
    }
}

/// Evidence behind a Holds verdict: the corpus swept and how each classically
/// valid shared-atom pair was discharged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HoldsEvidence {
    /// Description of the corpus the sweep ranged over.
    pub corpus: String,
    /// Classically valid shared-atom pairs examined.
    pub pairs_checked: usize,
    /// Pairs discharged by synthesizing and verifying an interpolant.
    pub synthesized_verified: usize,
    /// Blocked pairs confirmed interpolant-free by clone search.
    pub blocked_confirmed: usize,
}

/// Machine-checked reason a counterexample pair admits no interpolant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FailureCertificate {
    /// Exhaustive search over every definable shared-atom function found no
    /// interpolant.
    CloneEmpty {
        /// Number of shared atoms searched over.
        shared_atoms: usize,
        /// Definable functions inspected.
        elements_checked: usize,
    },
    /// A tolerant-premise/strict-conclusion leg can never be valid: the
    /// everywhere-1/2 valuation tolerantly satisfies every premise while
    /// strictly satisfying nothing.
    TsEmpty {
        /// The refuting valuation (everywhere 1/2).
        witness: Valuation,
        /// Definable functions cross-checked, when within the search cap.
        elements_checked: Option<usize>,
    },
}

impl fmt::Display for FailureCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureCertificate::CloneEmpty {
                shared_atoms,
                elements_checked,
            } => write!(
                f,
                "no definable interpolant over {shared_atoms} shared atom(s); \
                 {elements_checked} functions checked"
            ),
            FailureCertificate::TsEmpty {
                witness,
                elements_checked,
            } => {
                write!(
                    f,
                    "tolerant-to-strict consequence is empty; refuted at {witness}"
                )?;
                if let Some(n) = elements_checked {
                    write!(f, "; {n} functions cross-checked")?;
                }
                Ok(())
            }
        }
    }
}

/// Evidence behind a Fails verdict: the certified counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailsEvidence {
    /// The premise of the counterexample pair.
    pub phi: Formula,
    /// The conclusion of the counterexample pair.
    pub psi: Formula,
    /// Why no interpolant exists.
    pub certificate: FailureCertificate,
}

/// A cell's verdict body.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    /// The property holds on the cell; corpus-sweep evidence attached.
    Holds(HoldsEvidence),
    /// The property fails on the cell; certified counterexample attached.
    Fails(FailsEvidence),
}

/// The decided verdict for one cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    /// The decided cell.
    pub cell: Cell,
    /// Holds or Fails, with evidence.
    #[serde(flatten)]
    pub status: Status,
}

impl Verdict {
    /// Whether the property holds on the cell.
    pub fn holds(&self) -> bool {
        matches!(self.status, Status::Holds(_))
    }
}

/// Classification failure: either a counterexample did not certify, or the
/// exhaustive sweep could not discharge a pair within its search budget.
/// Both are reported distinctly from an ordinary Fails verdict.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error, Serialize)]
pub enum ClassifyError {
    /// A cataloged counterexample failed its from-scratch certification.
    #[error("certification failed for {cell} on {phi} => {psi}: {reason}")]
    CertificationFailed {
        /// The cell under certification.
        cell: Cell,
        /// Premise of the pair that failed to certify.
        phi: Formula,
        /// Conclusion of the pair that failed to certify.
        psi: Formula,
        /// What went wrong.
        reason: String,
    },
    /// The positive sweep could not discharge a corpus pair.
    #[error("sweep budget exhausted for {cell} on {phi} => {psi}: {reason}")]
    BudgetExhausted {
        /// The cell under sweep.
        cell: Cell,
        /// Premise of the undischarged pair.
        phi: Formula,
        /// Conclusion of the undischarged pair.
        psi: Formula,
        /// What went wrong.
        reason: String,
    },
}

fn fixed(text: &str) -> Formula {
    parse(text).expect("well-formed catalog formula")
}

/// The counterexample families over a third, non-shared atom `r`, for cells
/// whose conclusion leg is tolerant-tolerant. The premise is always `p & q`;
/// the conclusion is picked by the first matching row. A scheme may match an
/// unsettled-disjunction row, an unsettled-conjunction row, or both.
fn tt_family_rows(scheme: Scheme) -> Vec<Formula> {
    use crate::truth::ConnChoice::{Lmk, Rmk};
    let mut rows = Vec::new();
    if scheme.disj_choice() == Lmk {
        rows.push(fixed("(r | q) & (~r | p)"));
    }
    if scheme.disj_choice() == Rmk {
        rows.push(fixed("(q | r) & (p | ~r)"));
    }
    if scheme.conj_choice() == Lmk {
        rows.push(fixed("(r & q) | (~r & p)"));
    }
    if scheme.conj_choice() == Rmk {
        rows.push(fixed("(q & r) | (p & ~r)"));
    }
    rows
}

/// Dual families for cells with a strict-strict premise leg and a
/// strict-tolerant conclusion leg: the conclusion is always `p | q` and the
/// premise is picked by the first matching row (conjunction rows first).
fn st_family_rows(scheme: Scheme) -> Vec<Formula> {
    use crate::truth::ConnChoice::{Lmk, Rmk};
    let mut rows = Vec::new();
    if scheme.conj_choice() == Rmk {
        rows.push(fixed("(q & r) | (p & ~r)"));
    }
    if scheme.conj_choice() == Lmk {
        rows.push(fixed("(r & q) | (~r & p)"));
    }
    if scheme.disj_choice() == Rmk {
        rows.push(fixed("(q | r) & (p | ~r)"));
    }
    if scheme.disj_choice() == Lmk {
        rows.push(fixed("(r | q) & (~r | p)"));
    }
    rows
}

/// Every applicable scheme-dependent counterexample pair for the cell —
/// empty unless the scheme lacks a synthesis plan and the standards match a
/// family. Each returned pair certifies independently; tests check them all.
pub fn family_counterexamples(cell: Cell) -> Vec<(Formula, Formula)> {
    use Standard::{Ss, St, Tt};
    if strategy_for(cell.scheme).is_some() {
        return Vec::new();
    }
    match (cell.std1, cell.std2) {
        (Ss, Tt) | (St, Tt) => tt_family_rows(cell.scheme)
            .into_iter()
            .map(|psi| (fixed("p & q"), psi))
            .collect(),
        (Ss, St) => st_family_rows(cell.scheme)
            .into_iter()
            .map(|phi| (phi, fixed("p | q")))
            .collect(),
        _ => Vec::new(),
    }
}

/// The counterexample pair recorded for a failing cell, or nothing for a
/// cell where the property holds.
///
/// Standard-driven rules come first: a tolerant premise standard is refuted
/// by `p | (q & ~q) => p`, a strict conclusion standard by
/// `p => p & (q | ~q)`, and any tolerant-to-strict leg by `p => p` (that
/// consequence relation is empty). Otherwise the scheme-dependent families
/// of [`family_counterexamples`] apply; their first row is returned.
pub fn catalog_counterexample(cell: Cell) -> Option<(Formula, Formula)> {
    use Standard::{Ss, SsTt, Ts, Tt};
    if matches!(cell.std1, Tt | SsTt) {
        return Some((fixed("p | (q & ~q)"), fixed("p")));
    }
    if matches!(cell.std2, Ss | SsTt) {
        return Some((fixed("p"), fixed("p & (q | ~q)")));
    }
    if cell.std1 == Ts || cell.std2 == Ts {
        return Some((fixed("p"), fixed("p")));
    }
    family_counterexamples(cell).into_iter().next()
}

/// Certifies from scratch that `phi => psi` is a counterexample on `cell`:
/// classically valid, sharing at least one atom, and admitting no
/// shared-atom interpolant.
pub fn certify_counterexample(
    cell: Cell,
    phi: &Formula,
    psi: &Formula,
) -> Result<FailureCertificate, ClassifyError> {
    let failed = |reason: String| ClassifyError::CertificationFailed {
        cell,
        phi: phi.clone(),
        psi: psi.clone(),
        reason,
    };
    let inference = Inference::single(phi.clone(), psi.clone());
    if !classically_valid(&inference).is_valid() {
        return Err(failed("the pair is not classically valid".to_owned()));
    }
    let shared = shared_atoms(phi, psi);
    if shared.is_empty() {
        return Err(failed("the pair shares no atoms".to_owned()));
    }

    let search = interpolant_exists(cell.scheme, cell.std1, cell.std2, phi, psi);
    if cell.std1 == Standard::Ts || cell.std2 == Standard::Ts {
        // Generic refutation: at the everywhere-1/2 valuation every formula
        // takes value 1/2, so a tolerant premise is satisfied while a strict
        // conclusion is not — no inference, hence no interpolant leg, can be
        // valid for a tolerant-to-strict standard.
        let all_half = Valuation::from_pairs(
            inference
                .atoms()
                .into_iter()
                .map(|a| (a, TruthValue::N)),
        );
        for side in [phi, psi] {
            let value = eval(cell.scheme, &all_half, side).expect("all atoms assigned");
            if value != TruthValue::N {
                return Err(failed(format!(
                    "{side} is not 1/2 under the everywhere-1/2 valuation"
                )));
            }
        }
        let elements_checked = match search {
            Ok(InterpolantSearch::NoneExists { elements_checked }) => Some(elements_checked),
            Ok(InterpolantSearch::Found { witness, .. }) => {
                return Err(failed(format!("a definable interpolant exists: {witness}")));
            }
            Err(_) => None,
        };
        return Ok(FailureCertificate::TsEmpty {
            witness: all_half,
            elements_checked,
        });
    }

    match search {
        Ok(InterpolantSearch::NoneExists { elements_checked }) => {
            Ok(FailureCertificate::CloneEmpty {
                shared_atoms: shared.len(),
                elements_checked,
            })
        }
        Ok(InterpolantSearch::Found { witness, .. }) => {
            Err(failed(format!("a definable interpolant exists: {witness}")))
        }
        Err(cap) => Err(ClassifyError::BudgetExhausted {
            cell,
            phi: phi.clone(),
            psi: psi.clone(),
            reason: cap.to_string(),
        }),
    }
}

/// A synthesized candidate interpolant, tabulated over the shared-atom
/// tuples.
struct Cand {
    formula: Formula,
    outputs: Vec<TruthValue>,
}

/// Per-shared-atom-set context: the atoms, the map from corpus points to
/// shared-tuple indices, and (on demand) the clone of definable functions.
struct MaskCtx {
    atoms: Vec<Atom>,
    m_idx: Vec<usize>,
    closure: Option<crate::clones::CloneClosure>,
}

/// The per-scheme sweep engine. Truth tables, candidate interpolants, and
/// per-standard clone qualifications are memoized so that the quadratic pair
/// loop touches only flat arrays.
struct SchemeSweep<'t> {
    table: &'t CorpusTable,
    scheme: Scheme,
    plan: Option<StrategyPlan>,
    stride: usize,
    values: Vec<TruthValue>,
    /// Bit `t` set iff the formula is true at point `t`.
    t_mask: Vec<u32>,
    /// Bit `t` set iff the formula is false at point `t`.
    f_mask: Vec<u32>,
    /// Per shared-atom bitmask: the points where every shared atom is 1/2.
    n_masks: Vec<u32>,
    ctxs: Vec<MaskCtx>,
    premise_cands: HashMap<(usize, u8), Option<Rc<Cand>>>,
    limit_cands: HashMap<(usize, u8), Option<Rc<Cand>>>,
    classical_cands: HashMap<(usize, u8), Rc<Cand>>,
    premise_quals: HashMap<(usize, u8, Standard), Rc<Vec<bool>>>,
    conclusion_quals: HashMap<(usize, u8, Standard), Rc<Vec<bool>>>,
}

impl<'t> SchemeSweep<'t> {
    fn new(table: &'t CorpusTable, scheme: Scheme) -> SchemeSweep<'t> {
        let stride = table.points.len();
        let values = table.values(scheme);
        let count = table.len();
        let mut t_mask = vec![0u32; count];
        let mut f_mask = vec![0u32; count];
        for i in 0..count {
            for t in 0..stride {
                match values[i * stride + t] {
                    TruthValue::T => t_mask[i] |= 1 << t,
                    TruthValue::F => f_mask[i] |= 1 << t,
                    TruthValue::N => {}
                }
            }
        }
        let pool = table.spec.atoms.clone();
        let mask_count = 1usize << pool.len();
        let mut n_masks = vec![0u32; mask_count];
        let mut ctxs = Vec::with_capacity(mask_count);
        for (mask, n_mask) in n_masks.iter_mut().enumerate() {
            let atoms = table.mask_atoms(mask as u8);
            for (t, point) in table.points.iter().enumerate() {
                let all_half = atoms
                    .iter()
                    .all(|a| point.get(a) == Some(TruthValue::N));
                if all_half {
                    *n_mask |= 1 << t;
                }
            }
            let m_idx = table
                .points
                .iter()
                .map(|point| {
                    let tuple: Vec<TruthValue> = atoms
                        .iter()
                        .map(|a| point.get(a).expect("pool atom assigned"))
                        .collect();
                    tuple_index(&tuple)
                })
                .collect();
            ctxs.push(MaskCtx {
                atoms,
                m_idx,
                closure: None,
            });
        }
        SchemeSweep {
            table,
            scheme,
            plan: strategy_for(scheme),
            stride,
            values,
            t_mask,
            f_mask,
            n_masks,
            ctxs,
            premise_cands: HashMap::new(),
            limit_cands: HashMap::new(),
            classical_cands: HashMap::new(),
            premise_quals: HashMap::new(),
            conclusion_quals: HashMap::new(),
        }
    }

    /// Tabulates a shared-atom formula over all shared tuples, in tuple
    /// order.
    fn tabulate(&self, formula: Formula, atoms: &[Atom]) -> Cand {
        let tuples = 3usize.pow(atoms.len() as u32);
        let outputs = (0..tuples)
            .map(|t| {
                let mut digits = t;
                let mut assignment = Vec::with_capacity(atoms.len());
                for k in (0..atoms.len()).rev() {
                    assignment.push((atoms[k].clone(), TruthValue::from_index(digits % 3)));
                    digits /= 3;
                }
                let v = Valuation::from_pairs(assignment);
                eval(self.scheme, &v, &formula).expect("shared atoms assigned")
            })
            .collect();
        Cand { formula, outputs }
    }

    fn aggregate_cand(&self, kind: AggregateKind, side: usize, mask: u8) -> Option<Cand> {
        let atoms = &self.ctxs[mask as usize].atoms;
        aggregate_over(kind, self.scheme, &self.table.formulas[side], atoms)
            .ok()
            .map(|(chi, _, _)| self.tabulate(chi, atoms))
    }

    fn premise_cand(&mut self, i: usize, mask: u8) -> Option<Rc<Cand>> {
        if let Some(hit) = self.premise_cands.get(&(i, mask)) {
            return hit.clone();
        }
        let kind = self.plan.expect("premise candidates need a plan").main_kind();
        let cand = self.aggregate_cand(kind, i, mask).map(Rc::new);
        self.premise_cands.insert((i, mask), cand.clone());
        cand
    }

    fn limit_cand(&mut self, j: usize, mask: u8) -> Option<Rc<Cand>> {
        if let Some(hit) = self.limit_cands.get(&(j, mask)) {
            return hit.clone();
        }
        let kind = self.plan.expect("limit candidates need a plan").limit_kind();
        let cand = self.aggregate_cand(kind, j, mask).map(Rc::new);
        self.limit_cands.insert((j, mask), cand.clone());
        cand
    }

    fn classical_cand(&mut self, i: usize, mask: u8) -> Rc<Cand> {
        if let Some(hit) = self.classical_cands.get(&(i, mask)) {
            return hit.clone();
        }
        let atoms = &self.ctxs[mask as usize].atoms;
        let (chi, _, _, _) = classical_interpolant(&self.table.formulas[i], atoms);
        let cand = Rc::new(self.tabulate(chi, atoms));
        self.classical_cands.insert((i, mask), cand.clone());
        cand
    }

    /// First leg: everywhere the premise value is designated for `std1`'s
    /// premise set, the candidate value is in the matching conclusion set.
    fn first_leg_ok(&self, i: usize, mask: u8, std1: Standard, outputs: &[TruthValue]) -> bool {
        let m_idx = &self.ctxs[mask as usize].m_idx;
        let row = &self.values[i * self.stride..(i + 1) * self.stride];
        std1.component_pairs().iter().all(|&(x, y)| {
            row.iter()
                .enumerate()
                .all(|(t, &v)| !x.contains(v) || y.contains(outputs[m_idx[t]]))
        })
    }

    /// Second leg: everywhere the candidate value is designated for `std2`'s
    /// premise set, the conclusion value is in the matching conclusion set.
    fn second_leg_ok(&self, j: usize, mask: u8, std2: Standard, outputs: &[TruthValue]) -> bool {
        let m_idx = &self.ctxs[mask as usize].m_idx;
        let row = &self.values[j * self.stride..(j + 1) * self.stride];
        std2.component_pairs().iter().all(|&(x, y)| {
            row.iter()
                .enumerate()
                .all(|(t, &v)| !x.contains(outputs[m_idx[t]]) || y.contains(v))
        })
    }

    fn ensure_closure(&mut self, mask: u8) {
        if self.ctxs[mask as usize].closure.is_none() {
            let atoms = self.ctxs[mask as usize].atoms.clone();
            self.ctxs[mask as usize].closure = Some(clone_closure(self.scheme, &atoms));
        }
    }

    fn premise_qual(&mut self, i: usize, mask: u8, std1: Standard) -> Rc<Vec<bool>> {
        if let Some(hit) = self.premise_quals.get(&(i, mask, std1)) {
            return hit.clone();
        }
        let closure = self.ctxs[mask as usize]
            .closure
            .as_ref()
            .expect("closure built before qualification");
        let qual: Vec<bool> = closure
            .elements()
            .iter()
            .map(|g| self.first_leg_ok(i, mask, std1, g.outputs()))
            .collect();
        let qual = Rc::new(qual);
        self.premise_quals.insert((i, mask, std1), qual.clone());
        qual
    }

    fn conclusion_qual(&mut self, j: usize, mask: u8, std2: Standard) -> Rc<Vec<bool>> {
        if let Some(hit) = self.conclusion_quals.get(&(j, mask, std2)) {
            return hit.clone();
        }
        let closure = self.ctxs[mask as usize]
            .closure
            .as_ref()
            .expect("closure built before qualification");
        let qual: Vec<bool> = closure
            .elements()
            .iter()
            .map(|g| self.second_leg_ok(j, mask, std2, g.outputs()))
            .collect();
        let qual = Rc::new(qual);
        self.conclusion_quals.insert((j, mask, std2), qual.clone());
        qual
    }

    fn budget_error(&self, i: usize, j: usize, std1: Standard, std2: Standard, reason: String) -> ClassifyError {
        ClassifyError::BudgetExhausted {
            cell: Cell::new(self.scheme, std1, std2),
            phi: self.table.formulas[i].clone(),
            psi: self.table.formulas[j].clone(),
            reason,
        }
    }

    /// Confirms a blocked pair admits no definable shared-atom interpolant.
    fn confirm_no_interpolant(
        &mut self,
        i: usize,
        j: usize,
        mask: u8,
        std1: Standard,
        std2: Standard,
    ) -> Result<(), ClassifyError> {
        let arity = self.ctxs[mask as usize].atoms.len();
        if arity > arity_cap() {
            return Err(self.budget_error(
                i,
                j,
                std1,
                std2,
                format!("blocked pair shares {arity} atoms, above the search cap"),
            ));
        }
        self.ensure_closure(mask);
        let q1 = self.premise_qual(i, mask, std1);
        let q2 = self.conclusion_qual(j, mask, std2);
        if let Some(k) = (0..q1.len()).find(|&k| q1[k] && q2[k]) {
            let witness = self.ctxs[mask as usize]
                .closure
                .as_ref()
                .expect("closure built")
                .elements()[k]
                .witness()
                .clone();
            return Err(self.budget_error(
                i,
                j,
                std1,
                std2,
                format!("blocked pair admits the definable interpolant {witness}"),
            ));
        }
        Ok(())
    }

    /// Synthesizes candidates in plan order and verifies both legs of the
    /// first that passes.
    fn synthesize_verified(
        &mut self,
        i: usize,
        j: usize,
        mask: u8,
        std1: Standard,
        std2: Standard,
    ) -> Result<(), ClassifyError> {
        let mut cascade: Vec<Rc<Cand>> = Vec::with_capacity(3);
        if self.plan.is_some() {
            let main = self.premise_cand(i, mask);
            let limit = self.limit_cand(j, mask);
            let (first, second) = if self.t_mask[i] != 0 {
                (main, limit)
            } else {
                (limit, main)
            };
            cascade.extend(first);
            cascade.extend(second);
        }
        if (std1, std2) == (Standard::St, Standard::St) {
            cascade.push(self.classical_cand(i, mask));
        }
        for cand in &cascade {
            if self.first_leg_ok(i, mask, std1, &cand.outputs)
                && self.second_leg_ok(j, mask, std2, &cand.outputs)
            {
                return Ok(());
            }
        }
        let tried: Vec<String> = cascade.iter().map(|c| c.formula.to_string()).collect();
        Err(self.budget_error(
            i,
            j,
            std1,
            std2,
            format!("no synthesized candidate verified both legs (tried: {})", tried.join("; ")),
        ))
    }

    /// Sweeps every classically valid shared-atom corpus pair for the cell.
    fn sweep(&mut self, std1: Standard, std2: Standard) -> Result<HoldsEvidence, ClassifyError> {
        let count = self.table.len();
        let mut evidence = HoldsEvidence {
            corpus: self.table.describe(),
            pairs_checked: 0,
            synthesized_verified: 0,
            blocked_confirmed: 0,
        };
        for i in 0..count {
            let am_i = self.table.atom_masks[i];
            for j in 0..count {
                let mask = am_i & self.table.atom_masks[j];
                if mask == 0 || !self.table.classically_valid_pair(i, j) {
                    continue;
                }
                evidence.pairs_checked += 1;
                let premise_blocked = self.t_mask[i] & self.n_masks[mask as usize] != 0;
                let conclusion_blocked = self.f_mask[j] & self.n_masks[mask as usize] != 0;
                let defeated = (std1 == Standard::Ss && premise_blocked)
                    || (std2 == Standard::Tt && conclusion_blocked);
                if defeated {
                    self.confirm_no_interpolant(i, j, mask, std1, std2)?;
                    evidence.blocked_confirmed += 1;
                } else {
                    self.synthesize_verified(i, j, mask, std1, std2)?;
                    evidence.synthesized_verified += 1;
                }
            }
        }
        Ok(evidence)
    }
}

fn classify_scheme(table: &CorpusTable, scheme: Scheme) -> Result<Vec<Verdict>, ClassifyError> {
    let mut sweep = SchemeSweep::new(table, scheme);
    let mut verdicts = Vec::with_capacity(25);
    for std1 in Standard::ALL {
        for std2 in Standard::ALL {
            let cell = Cell::new(scheme, std1, std2);
            let status = match catalog_counterexample(cell) {
                Some((phi, psi)) => {
                    let certificate = certify_counterexample(cell, &phi, &psi)?;
                    Status::Fails(FailsEvidence {
                        phi,
                        psi,
                        certificate,
                    })
                }
                None => Status::Holds(sweep.sweep(std1, std2)?),
            };
            verdicts.push(Verdict { cell, status });
        }
    }
    Ok(verdicts)
}

/// Decides one cell: certify the cataloged counterexample, or sweep the
/// corpus for Holds evidence.
pub fn classify_cell(cell: Cell, corpus: &CorpusSpec) -> Result<Verdict, ClassifyError> {
    if let Some((phi, psi)) = catalog_counterexample(cell) {
        let certificate = certify_counterexample(cell, &phi, &psi)?;
        return Ok(Verdict {
            cell,
            status: Status::Fails(FailsEvidence {
                phi,
                psi,
                certificate,
            }),
        });
    }
    let table = CorpusTable::build(corpus);
    let evidence = SchemeSweep::new(&table, cell.scheme).sweep(cell.std1, cell.std2)?;
    Ok(Verdict {
        cell,
        status: Status::Holds(evidence),
    })
}

/// Decides all 400 cells over a shared corpus, optionally in parallel by
/// scheme; verdict order matches [`all_cells`].
pub fn classify_all(corpus: &CorpusSpec, jobs: usize) -> Result<Vec<Verdict>, ClassifyError> {
    let table = CorpusTable::build(corpus);
    let schemes = Scheme::all();
    let per_scheme: Vec<Result<Vec<Verdict>, ClassifyError>> = if jobs <= 1 {
        schemes
            .iter()
            .map(|&scheme| classify_scheme(&table, scheme))
            .collect()
    } else {
        let chunk = schemes.len().div_ceil(jobs);
        thread::scope(|scope| {
            let handles: Vec<_> = schemes
                .chunks(chunk)
                .map(|group| {
                    let table = &table;
                    scope.spawn(move || {
                        group
                            .iter()
                            .map(|&scheme| classify_scheme(table, scheme))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("classification worker panicked"))
                .collect()
        })
    };
    let mut verdicts = Vec::with_capacity(400);
    for block in per_scheme {
        verdicts.extend(block?);
    }
    Ok(verdicts)
}

/// Which summary grid to render.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    /// The 5×5 standards grid with scheme-dependent cells marked `dep`.
    Independent,
    /// The 4×4 conjunction/disjunction grid of scheme support.
    Schemes,
    /// The 5×5 standards grid with mixed cells marked `✓/✗`.
    Full,
}

/// Error for an unrecognized table kind name.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid table kind {input:?}: expected independent, schemes, or full")]
pub struct ParseTableKindError {
    /// The rejected input.
    pub input: String,
}

impl FromStr for TableKind {
    type Err = ParseTableKindError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "independent" => Ok(TableKind::Independent),
            "schemes" => Ok(TableKind::Schemes),
            "full" => Ok(TableKind::Full),
            other => Err(ParseTableKindError {
                input: other.to_owned(),
            }),
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableKind::Independent => "independent",
            TableKind::Schemes => "schemes",
            TableKind::Full => "full",
        })
    }
}

impl Serialize for TableKind {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Output format for the summary grids.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    /// Aligned plain-text grid.
    Text,
    /// Markdown pipe table.
    Markdown,
    /// CSV with columns `scheme,std1,std2,status,phi,psi,certificate`.
    Csv,
}

/// Error for an unrecognized table format name.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid table format {input:?}: expected text, markdown, or csv")]
pub struct ParseTableFormatError {
    /// The rejected input.
    pub input: String,
}

impl FromStr for TableFormat {
    type Err = ParseTableFormatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "text" => Ok(TableFormat::Text),
            "markdown" | "md" => Ok(TableFormat::Markdown),
            "csv" => Ok(TableFormat::Csv),
            other => Err(ParseTableFormatError {
                input: other.to_owned(),
            }),
        }
    }
}

impl fmt::Display for TableFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableFormat::Text => "text",
            TableFormat::Markdown => "markdown",
            TableFormat::Csv => "csv",
        })
    }
}

impl Serialize for TableFormat {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Classifies all cells over the standard corpus and renders the requested
/// grid. Byte-deterministic.
pub fn render_table(kind: TableKind, format: TableFormat) -> Result<String, ClassifyError> {
    let jobs = thread::available_parallelism().map_or(1, |n| n.get());
    let verdicts = classify_all(&CorpusSpec::standard(), jobs)?;
    Ok(render_verdicts(&verdicts, kind, format))
}

/// Renders a grid from already-computed verdicts.
///
/// # Panics
///
/// Panics if `verdicts` is not the complete [`classify_all`] output in
/// [`all_cells`] order.
pub fn render_verdicts(verdicts: &[Verdict], kind: TableKind, format: TableFormat) -> String {
    let cells = all_cells();
    assert_eq!(
        verdicts.len(),
        cells.len(),
        "render needs the complete verdict map"
    );
    for (v, c) in verdicts.iter().zip(&cells) {
        assert_eq!(v.cell, *c, "verdicts must be in canonical cell order");
    }
    let schemes = Scheme::all();
    let standards = Standard::ALL;
    // holds[s][a][b] — scheme index s, std1 index a, std2 index b.
    let holds = |s: usize, a: usize, b: usize| verdicts[s * 25 + a * 5 + b].holds();
    let std_summary = |a: usize, b: usize| {
        let holding = (0..schemes.len()).filter(|&s| holds(s, a, b)).count();
        (holding, schemes.len())
    };
    let scheme_supported =
        |s: usize| holds(s, 0, 1) && holds(s, 0, 2) && holds(s, 2, 1) && holds(s, 2, 2);

    match format {
        TableFormat::Text | TableFormat::Markdown => {
            let (corner, col_labels, row_labels, marks) = match kind {
                TableKind::Independent | TableKind::Full => {
                    let labels: Vec<String> =
                        standards.iter().map(|s| s.pretty().to_owned()).collect();
                    let mut marks = Vec::new();
                    for a in 0..standards.len() {
                        let mut row = Vec::new();
                        for b in 0..standards.len() {
                            let (holding, total) = std_summary(a, b);
                            let mark = if holding == total {
                                "✓"
                            } else if holding == 0 {
                                "✗"
                            } else if kind == TableKind::Independent {
                                "dep"
                            } else {
                                "✓/✗"
                            };
                            row.push(mark.to_owned());
                        }
                        marks.push(row);
                    }
                    ("std1\\std2", labels.clone(), labels, marks)
                }
                TableKind::Schemes => {
                    let choices = crate::truth::ConnChoice::ALL;
                    let labels: Vec<String> = choices.iter().map(ToString::to_string).collect();
                    let marks = choices
                        .iter()
                        .map(|&conj| {
                            choices
                                .iter()
                                .map(|&disj| {
                                    let scheme = Scheme::new(conj, disj);
                                    let s = schemes
                                        .iter()
                                        .position(|&x| x == scheme)
                                        .expect("every scheme listed");
                                    if scheme_supported(s) { "✓" } else { "✗" }.to_owned()
                                })
                                .collect()
                        })
                        .collect();
                    ("∧\\∨", labels.clone(), labels, marks)
                }
            };
            match format {
                TableFormat::Text => grid_text(corner, &col_labels, &row_labels, &marks),
                _ => grid_markdown(corner, &col_labels, &row_labels, &marks),
            }
        }
        TableFormat::Csv => {
            let mut lines = vec!["scheme,std1,std2,status,phi,psi,certificate".to_owned()];
            match kind {
                TableKind::Full => {
                    for v in verdicts {
                        let (status, phi, psi, certificate) = match &v.status {
                            Status::Holds(_) => {
                                ("holds", String::new(), String::new(), String::new())
                            }
                            Status::Fails(e) => (
                                "fails",
                                e.phi.to_string(),
                                e.psi.to_string(),
                                e.certificate.to_string(),
                            ),
                        };
                        lines.push(csv_row(&[
                            &v.cell.scheme.to_string(),
                            &v.cell.std1.to_string(),
                            &v.cell.std2.to_string(),
                            status,
                            &phi,
                            &psi,
                            &certificate,
                        ]));
                    }
                }
                TableKind::Independent => {
                    for (a, &std1) in standards.iter().enumerate() {
                        for (b, &std2) in standards.iter().enumerate() {
                            let (holding, total) = std_summary(a, b);
                            let status = if holding == total {
                                "holds"
                            } else if holding == 0 {
                                "fails"
                            } else {
                                "depends"
                            };
                            let (mut phi, mut psi, mut certificate) =
                                (String::new(), String::new(), String::new());
                            if holding == 0 {
                                // Standard-driven counterexamples do not
                                // depend on the scheme; record the pair and
                                // the certification mechanism.
                                let probe = Cell::new(schemes[0], std1, std2);
                                if let Some((p, c)) = catalog_counterexample(probe) {
                                    phi = p.to_string();
                                    psi = c.to_string();
                                }
                                certificate = if std1 == Standard::Ts || std2 == Standard::Ts {
                                    "ts-empty".to_owned()
                                } else {
                                    "clone-empty".to_owned()
                                };
                            }
                            lines.push(csv_row(&[
                                "any",
                                &std1.to_string(),
                                &std2.to_string(),
                                status,
                                &phi,
                                &psi,
                                &certificate,
                            ]));
                        }
                    }
                }
                TableKind::Schemes => {
                    for (s, scheme) in schemes.iter().enumerate() {
                        let status = if scheme_supported(s) { "holds" } else { "fails" };
                        lines.push(csv_row(&[&scheme.to_string(), "", "", status, "", "", ""]));
                    }
                }
            }
            let mut out = lines.join("\n");
            out.push('\n');
            out
        }
    }
}

fn csv_field(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_owned()
    }
}

fn csv_row(fields: &[&str]) -> String {
    fields
        .iter()
        .map(|f| csv_field(f))
        .collect::<Vec<_>>()
        .join(",")
}

fn grid_text(corner: &str, cols: &[String], rows: &[String], marks: &[Vec<String>]) -> String {
    let char_len = |s: &str| s.chars().count();
    let mut widths = vec![char_len(corner).max(rows.iter().map(|r| char_len(r)).max().unwrap_or(0))];
    for (c, label) in cols.iter().enumerate() {
        let body = marks.iter().map(|row| char_len(&row[c])).max().unwrap_or(0);
        widths.push(char_len(label).max(body));
    }
    let render_row = |cells: Vec<&str>| -> String {
        let mut line = String::new();
        for (k, cell) in cells.iter().enumerate() {
            if k > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            let pad = widths[k] - char_len(cell);
            line.extend(std::iter::repeat_n(' ', pad));
        }
        line.trim_end().to_owned()
    };
    let mut out = String::new();
    let mut header = vec![corner];
    header.extend(cols.iter().map(String::as_str));
    out.push_str(&render_row(header));
    out.push('\n');
    for (r, label) in rows.iter().enumerate() {
        let mut cells = vec![label.as_str()];
        cells.extend(marks[r].iter().map(String::as_str));
        out.push_str(&render_row(cells));
        out.push('\n');
    }
    out
}

fn grid_markdown(corner: &str, cols: &[String], rows: &[String], marks: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&format!("| {} |", corner));
    for label in cols {
        out.push_str(&format!(" {} |", label));
    }
    out.push('\n');
    out.push_str("| --- |");
    for _ in cols {
        out.push_str(" --- |");
    }
    out.push('\n');
    for (r, label) in rows.iter().enumerate() {
        out.push_str(&format!("| {} |", label));
        for mark in &marks[r] {
            out.push_str(&format!(" {} |", mark));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interpolation::{split_interpolant, Outcome};

    fn scheme(name: &str) -> Scheme {
        name.parse().unwrap()
    }

    fn formula(text: &str) -> Formula {
        text.parse().unwrap()
    }

    fn two_atom_spec() -> CorpusSpec {
        CorpusSpec::new(vec![Atom::new("p").unwrap(), Atom::new("q").unwrap()], 2).unwrap()
    }

    #[test]
    fn cell_enumeration_and_display() {
        let cells = all_cells();
        assert_eq!(cells.len(), 400);
        assert_eq!(cells[0].to_string(), "SK/SK (ss, ss)");
        assert_eq!(cells[1].to_string(), "SK/SK (ss, tt)");
        assert_eq!(cells[25].to_string(), "SK/WK (ss, ss)");
        assert_eq!(cells[399].to_string(), "RMK/RMK (sstt, sstt)");
    }

    #[test]
    fn corpus_spec_validation() {
        assert!(CorpusSpec::new(Vec::new(), 2).is_err());
        let too_many: Vec<Atom> = ["a", "b", "c", "d"]
            .into_iter()
            .map(|n| Atom::new(n).unwrap())
            .collect();
        assert_eq!(
            CorpusSpec::new(too_many, 1),
            Err(InvalidCorpus::TooManyAtoms { count: 4 })
        );
        let spec = CorpusSpec::standard();
        assert_eq!(spec.atoms().len(), 3);
        assert_eq!(spec.max_depth(), 2);
    }

    #[test]
    fn corpus_table_counts_and_shapes() {
        let standard = CorpusTable::build(&CorpusSpec::standard());
        assert_eq!(standard.len(), 1179);
        assert_eq!(
            standard.describe(),
            "1179 formulas over p, q, r up to depth 2"
        );
        let small = CorpusTable::build(&two_atom_spec());
        assert_eq!(small.len(), 302);
        // The tabulated list is exactly the canonical enumeration.
        let expected = enumerate_formulas(small.spec().atoms(), 2);
        assert_eq!(small.formulas(), expected.as_slice());
        // Occurrence masks agree with the recursive atom collector.
        for (i, f) in small.formulas().iter().enumerate() {
            let mut mask = 0u8;
            for a in f.atoms() {
                let k = small.spec().atoms().iter().position(|x| *x == a).unwrap();
                mask |= 1 << k;
            }
            assert_eq!(small.atom_masks[i], mask, "formula {f}");
        }
    }

    #[test]
    fn corpus_table_truth_and_classical_tables_agree_with_eval() {
        let table = CorpusTable::build(&two_atom_spec());
        let sch = scheme("LMK/RMK");
        let values = table.values(sch);
        let p = table.points().len();
        for (i, f) in table.formulas().iter().enumerate() {
            for (t, point) in table.points().iter().enumerate() {
                assert_eq!(values[i * p + t], eval(sch, point, f).unwrap(), "{f} at {point}");
            }
        }
        // Pairwise classical validity agrees with the reference checker.
        for i in (0..table.len()).step_by(7) {
            for j in (0..table.len()).step_by(11) {
                let inference =
                    Inference::single(table.formula(i).clone(), table.formula(j).clone());
                assert_eq!(
                    table.classically_valid_pair(i, j),
                    classically_valid(&inference).is_valid(),
                    "{} => {}",
                    table.formula(i),
                    table.formula(j),
                );
            }
        }
    }

    #[test]
    fn catalog_standard_driven_rules() {
        let pair = |cell| catalog_counterexample(cell).map(|(a, b)| (a.to_string(), b.to_string()));
        // Tolerant premise standard.
        assert_eq!(
            pair(Cell::new(scheme("SK/SK"), Standard::Tt, Standard::St)),
            Some(("p | (q & ~q)".to_owned(), "p".to_owned()))
        );
        assert_eq!(
            pair(Cell::new(scheme("LMK/LMK"), Standard::SsTt, Standard::Tt)),
            Some(("p | (q & ~q)".to_owned(), "p".to_owned()))
        );
        // Strict conclusion standard.
        assert_eq!(
            pair(Cell::new(scheme("SK/SK"), Standard::St, Standard::Ss)),
            Some(("p".to_owned(), "p & (q | ~q)".to_owned()))
        );
        // Tolerant-to-strict legs.
        assert_eq!(
            pair(Cell::new(scheme("SK/SK"), Standard::Ss, Standard::Ts)),
            Some(("p".to_owned(), "p".to_owned()))
        );
        assert_eq!(
            pair(Cell::new(scheme("WK/WK"), Standard::Ts, Standard::Tt)),
            Some(("p".to_owned(), "p".to_owned()))
        );
        // Holds cells have no counterexample.
        assert_eq!(pair(Cell::new(scheme("SK/SK"), Standard::Ss, Standard::Tt)), None);
        assert_eq!(pair(Cell::new(scheme("RMK/SK"), Standard::Ss, Standard::St)), None);
        assert_eq!(pair(Cell::new(scheme("LMK/LMK"), Standard::St, Standard::St)), None);
    }

    #[test]
    fn catalog_family_rows() {
        let pair = |cell| catalog_counterexample(cell).map(|(a, b)| (a.to_string(), b.to_string()));
        // Unsettled-disjunction rows win over unsettled-conjunction rows.
        assert_eq!(
            pair(Cell::new(scheme("WK/LMK"), Standard::Ss, Standard::Tt)),
            Some(("p & q".to_owned(), "(r | q) & (~r | p)".to_owned()))
        );
        assert_eq!(
            pair(Cell::new(scheme("LMK/LMK"), Standard::St, Standard::Tt)),
            Some(("p & q".to_owned(), "(r | q) & (~r | p)".to_owned()))
        );
        assert_eq!(
            pair(Cell::new(scheme("WK/RMK"), Standard::Ss, Standard::Tt)),
            Some(("p & q".to_owned(), "(q | r) & (p | ~r)".to_owned()))
        );
        assert_eq!(
            pair(Cell::new(scheme("LMK/WK"), Standard::Ss, Standard::Tt)),
            Some(("p & q".to_owned(), "(r & q) | (~r & p)".to_owned()))
        );
        assert_eq!(
            pair(Cell::new(scheme("RMK/WK"), Standard::Ss, Standard::Tt)),
            Some(("p & q".to_owned(), "(q & r) | (p & ~r)".to_owned()))
        );
        // The dual families put unsettled-conjunction rows first.
        assert_eq!(
            pair(Cell::new(scheme("RMK/LMK"), Standard::Ss, Standard::St)),
            Some(("(q & r) | (p & ~r)".to_owned(), "p | q".to_owned()))
        );
        assert_eq!(
            pair(Cell::new(scheme("WK/LMK"), Standard::Ss, Standard::St)),
            Some(("(r | q) & (~r | p)".to_owned(), "p | q".to_owned()))
        );
        // Schemes with a synthesis plan have no family rows.
        assert!(family_counterexamples(Cell::new(
            scheme("SK/LMK"),
            Standard::Ss,
            Standard::Tt
        ))
        .is_empty());
    }

    #[test]
    fn every_applicable_family_row_certifies() {
        let unsupported: Vec<Scheme> = Scheme::all()
            .into_iter()
            .filter(|&s| strategy_for(s).is_none())
            .collect();
        assert_eq!(unsupported.len(), 8);
        for &sch in &unsupported {
            for (std1, std2) in [
                (Standard::Ss, Standard::Tt),
                (Standard::St, Standard::Tt),
                (Standard::Ss, Standard::St),
            ] {
                let cell = Cell::new(sch, std1, std2);
                let rows = family_counterexamples(cell);
                assert!(!rows.is_empty(), "{cell} must have a counterexample family");
                for (phi, psi) in rows {
                    let certificate = certify_counterexample(cell, &phi, &psi)
                        .unwrap_or_else(|e| panic!("{cell}: {phi} => {psi}: {e}"));
                    assert!(
                        matches!(certificate, FailureCertificate::CloneEmpty { shared_atoms: 2, .. }),
                        "{cell}: unexpected certificate {certificate}"
                    );
                }
            }
        }
    }

    #[test]
    fn certification_rejects_bad_counterexamples() {
        let cell = Cell::new(scheme("SK/SK"), Standard::Ss, Standard::Tt);
        // Not classically valid.
        let err = certify_counterexample(cell, &formula("p"), &formula("q & p")).unwrap_err();
        assert!(matches!(err, ClassifyError::CertificationFailed { .. }));
        // No shared atoms.
        let err = certify_counterexample(cell, &formula("p & ~p"), &formula("q")).unwrap_err();
        assert!(err.to_string().contains("shares no atoms"));
        // Classically valid with an interpolant available: certification must
        // refuse to bless it.
        let err = certify_counterexample(cell, &formula("p & q"), &formula("p | q")).unwrap_err();
        assert!(err.to_string().contains("definable interpolant exists"));
    }

    #[test]
    fn classify_cell_small_corpus_verdicts() {
        let spec = two_atom_spec();
        let holds = classify_cell(Cell::new(scheme("SK/SK"), Standard::Ss, Standard::Tt), &spec)
            .unwrap();
        match &holds.status {
            Status::Holds(ev) => {
                assert_eq!(ev.corpus, "302 formulas over p, q up to depth 2");
                assert!(ev.pairs_checked > 0);
                assert_eq!(
                    ev.pairs_checked,
                    ev.synthesized_verified + ev.blocked_confirmed
                );
                assert!(ev.blocked_confirmed > 0);
            }
            Status::Fails(_) => panic!("expected Holds"),
        }

        let fails = classify_cell(Cell::new(scheme("LMK/LMK"), Standard::Ss, Standard::Tt), &spec)
            .unwrap();
        match &fails.status {
            Status::Fails(ev) => {
                assert_eq!(ev.phi.to_string(), "p & q");
                assert_eq!(ev.psi.to_string(), "(r | q) & (~r | p)");
                assert!(matches!(
                    ev.certificate,
                    FailureCertificate::CloneEmpty { shared_atoms: 2, .. }
                ));
            }
            Status::Holds(_) => panic!("expected Fails"),
        }

        let st_st = classify_cell(Cell::new(scheme("LMK/RMK"), Standard::St, Standard::St), &spec)
            .unwrap();
        assert!(st_st.holds());

        let sstt = classify_cell(Cell::new(scheme("SK/SK"), Standard::SsTt, Standard::Tt), &spec)
            .unwrap();
        match &sstt.status {
            Status::Fails(ev) => assert_eq!(ev.phi.to_string(), "p | (q & ~q)"),
            Status::Holds(_) => panic!("expected Fails"),
        }

        let ts = classify_cell(Cell::new(scheme("WK/WK"), Standard::Ts, Standard::Ts), &spec)
            .unwrap();
        match &ts.status {
            Status::Fails(ev) => match &ev.certificate {
                FailureCertificate::TsEmpty {
                    witness,
                    elements_checked,
                } => {
                    assert_eq!(witness.to_string(), "p=1/2");
                    assert!(elements_checked.is_some());
                }
                other => panic!("expected ts-emptiness certificate, got {other}"),
            },
            Status::Holds(_) => panic!("expected Fails"),
        }
    }

    #[test]
    fn sweep_matches_general_pipeline_on_sampled_pairs() {
        let table = CorpusTable::build(&two_atom_spec());
        let sch = scheme("SK/SK");
        let (std1, std2) = (Standard::Ss, Standard::Tt);
        let mut sweep = SchemeSweep::new(&table, sch);
        let mut compared = 0usize;
        for i in (0..table.len()).step_by(7) {
            for j in (0..table.len()).step_by(11) {
                let mask = table.shared_atom_mask(i, j);
                if mask == 0 || !table.classically_valid_pair(i, j) {
                    continue;
                }
                let report =
                    split_interpolant(sch, std1, std2, table.formula(i), table.formula(j))
                        .unwrap();
                let premise_blocked = sweep.t_mask[i] & sweep.n_masks[mask as usize] != 0;
                let conclusion_blocked = sweep.f_mask[j] & sweep.n_masks[mask as usize] != 0;
                let defeated = premise_blocked || conclusion_blocked;
                match report.outcome {
                    Outcome::Interpolant { chi, .. } => {
                        assert!(!defeated, "pipeline found {chi} for a defeated pair");
                        // The engine replays the same cascade and must settle
                        // on the identical candidate.
                        let mut cascade = Vec::new();
                        let main = sweep.premise_cand(i, mask);
                        let limit = sweep.limit_cand(j, mask);
                        if sweep.t_mask[i] != 0 {
                            cascade.extend(main);
                            cascade.extend(limit);
                        } else {
                            cascade.extend(limit);
                            cascade.extend(main);
                        }
                        let winner = cascade
                            .iter()
                            .find(|c| {
                                sweep.first_leg_ok(i, mask, std1, &c.outputs)
                                    && sweep.second_leg_ok(j, mask, std2, &c.outputs)
                            })
                            .expect("engine cascade must also succeed");
                        assert_eq!(winner.formula, chi);
                    }
                    Outcome::NoInterpolant { .. } => {
                        assert!(defeated, "pipeline refuted an undefeated pair");
                    }
                    other => panic!("unexpected outcome {other:?}"),
                }
                compared += 1;
            }
        }
        assert!(compared > 100, "sample too small: {compared}");
    }

    #[test]
    fn classify_all_structure_and_grids() {
        let verdicts = classify_all(&two_atom_spec(), 2).unwrap();
        assert_eq!(verdicts.len(), 400);
        let cells = all_cells();
        for (v, c) in verdicts.iter().zip(&cells) {
            assert_eq!(v.cell, *c);
        }
        assert_eq!(verdicts.iter().filter(|v| v.holds()).count(), 40);
        // Exactly the planned schemes hold on the three mixed cells, and
        // every scheme holds on the strict-to-tolerant diagonal cell.
        for (s, &sch) in Scheme::all().iter().enumerate() {
            let holds = |a: usize, b: usize| verdicts[s * 25 + a * 5 + b].holds();
            let supported = strategy_for(sch).is_some();
            assert_eq!(holds(0, 1), supported, "{sch} (ss, tt)");
            assert_eq!(holds(0, 2), supported, "{sch} (ss, st)");
            assert_eq!(holds(2, 1), supported, "{sch} (st, tt)");
            assert!(holds(2, 2), "{sch} (st, st)");
            // Weakening either leg preserves the property.
            if holds(0, 1) {
                assert!(holds(0, 2) && holds(2, 1) && holds(2, 2), "{sch}");
            }
        }

        let text = render_verdicts(&verdicts, TableKind::Schemes, TableFormat::Text);
        assert_eq!(text.matches('✓').count(), 8);
        assert_eq!(text.matches('✗').count(), 8);
        assert_eq!(text.lines().count(), 5);

        let independent = render_verdicts(&verdicts, TableKind::Independent, TableFormat::Text);
        assert_eq!(independent.matches("dep").count(), 3);
        assert_eq!(independent.matches('✓').count(), 1);
        assert_eq!(independent.matches('✗').count(), 21);

        let full = render_verdicts(&verdicts, TableKind::Full, TableFormat::Text);
        assert_eq!(full.matches("✓/✗").count(), 3);
        assert_eq!(full.matches('✗').count(), 24);

        let csv = render_verdicts(&verdicts, TableKind::Full, TableFormat::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 401);
        assert_eq!(lines[0], "scheme,std1,std2,status,phi,psi,certificate");
        assert_eq!(lines[1].split(',').take(4).collect::<Vec<_>>(), [
            "SK/SK", "ss", "ss", "fails"
        ]);
        assert!(lines.iter().skip(1).all(|l| l.starts_with(|c: char| c.is_ascii_uppercase())));

        let independent_csv =
            render_verdicts(&verdicts, TableKind::Independent, TableFormat::Csv);
        assert_eq!(independent_csv.lines().count(), 26);
        assert!(independent_csv.contains("any,ss,tt,depends,,,"));
        assert!(independent_csv.contains("any,tt,st,fails,p | (q & ~q),p,clone-empty"));
        assert!(independent_csv.contains("any,ss,ts,fails,p,p,ts-empty"));

        let schemes_csv = render_verdicts(&verdicts, TableKind::Schemes, TableFormat::Csv);
        assert_eq!(schemes_csv.lines().count(), 17);
        assert!(schemes_csv.contains("SK/SK,,,holds,,,"));
        assert!(schemes_csv.contains("LMK/LMK,,,fails,,,"));

        let md = render_verdicts(&verdicts, TableKind::Schemes, TableFormat::Markdown);
        assert_eq!(md.lines().count(), 6);
        assert!(md.starts_with("| ∧\\∨ | SK | WK | LMK | RMK |"));
    }

    #[test]
    fn verdict_serialization_shape() {
        let spec = two_atom_spec();
        let holds = classify_cell(Cell::new(scheme("WK/WK"), Standard::St, Standard::St), &spec)
            .unwrap();
        let json = serde_json::to_value(&holds).unwrap();
        assert_eq!(json["status"], "holds");
        assert_eq!(json["cell"]["scheme"], "WK/WK");
        assert!(json["pairs_checked"].as_u64().unwrap() > 0);

        let fails = classify_cell(Cell::new(scheme("SK/SK"), Standard::Ts, Standard::Tt), &spec)
            .unwrap();
        let json = serde_json::to_value(&fails).unwrap();
        assert_eq!(json["status"], "fails");
        assert_eq!(json["certificate"]["kind"], "ts_empty");
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
