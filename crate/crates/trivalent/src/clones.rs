//! Clones of definable truth functions and an exact decision procedure for
//! split-interpolant existence over a fixed shared-atom set.
//!
//! The clone of a scheme at arity `n` is the set of `n`-ary truth functions
//! denoted by formulas over `n` fixed atoms, computed as a fixpoint from the
//! projections under the scheme's negation, conjunction, and disjunction. Each
//! element carries a *witness*: a defining formula with the smallest node
//! count the search encountered, ties broken by discovery order, so results
//! are deterministic.
//!
//! Because every admissible table maps all-`1/2` inputs to `1/2`, every clone
//! element fixes the all-`1/2` point; several no-interpolant certificates rest
//! on that fact.

use std::collections::{BinaryHeap, HashMap};
use std::fmt;

use crate::semantics::{eval, valuations, Standard};
use crate::syntax::{Atom, Formula};
use crate::truth::{Scheme, TruthValue};

/// Default bound on the shared-atom count for exhaustive interpolant search.
pub const DEFAULT_ARITY_CAP: usize = 2;

/// Environment variable that overrides [`DEFAULT_ARITY_CAP`].
pub const ARITY_CAP_VAR: &str = "TRIVALENT_ARITY_CAP";

/// The arity bound in effect: `TRIVALENT_ARITY_CAP` if set and parseable,
/// otherwise [`DEFAULT_ARITY_CAP`].
pub fn arity_cap() -> usize {
    std::env::var(ARITY_CAP_VAR)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_ARITY_CAP)
}

/// A truth function over fixed argument atoms, together with a defining formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefinableFn {
    outputs: Vec<TruthValue>,
    witness: Formula,
}

impl DefinableFn {
    /// The function's arity.
    pub fn arity(&self) -> usize {
        self.outputs.len().ilog(3) as usize
    }

    /// The function table: entry for an argument tuple sits at the index that
    /// reads the tuple as a base-3 numeral, first argument most significant,
    /// digits `0 → 0`, `1/2 → 1`, `1 → 2` (the order of
    /// [`valuations`](crate::semantics::valuations)).
    pub fn outputs(&self) -> &[TruthValue] {
        &self.outputs
    }

    /// A defining formula over the clone's argument atoms.
    pub fn witness(&self) -> &Formula {
        &self.witness
    }

    /// Applies the function to an argument tuple. Panics on arity mismatch.
    pub fn apply(&self, args: &[TruthValue]) -> TruthValue {
        self.outputs[tuple_index(args)]
    }
}

impl fmt::Display for DefinableFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.outputs.iter().map(TruthValue::to_string).collect();
        write!(f, "{} : [{}]", self.witness, cells.join(", "))
    }
}

/// Index of an argument tuple in table order (base 3, first argument most
/// significant).
pub fn tuple_index(args: &[TruthValue]) -> usize {
    args.iter().fold(0, |acc, v| acc * 3 + v.index())
}

/// The clone of functions definable from a scheme's connectives over fixed
/// argument atoms.
#[derive(Clone, Debug)]
pub struct CloneClosure {
    scheme: Scheme,
    atoms: Vec<Atom>,
    elements: Vec<DefinableFn>,
    index: HashMap<Vec<TruthValue>, usize>,
}

impl CloneClosure {
    /// The generating scheme.
    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    /// The argument atoms, in order.
    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// The elements in discovery order (projections first).
    pub fn elements(&self) -> &[DefinableFn] {
        &self.elements
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Whether the clone is empty (only possible with zero atoms).
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Looks up a table; returns the element index if definable.
    pub fn position_of(&self, outputs: &[TruthValue]) -> Option<usize> {
        self.index.get(outputs).copied()
    }
}

/// Heap entry for the closure search, ordered by (witness size, discovery
/// sequence) so the smallest witness for each table is committed first.
struct Candidate {
    cost: usize,
    seq: usize,
    outputs: Vec<TruthValue>,
    witness: Formula,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        (self.cost, self.seq) == (other.cost, other.seq)
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Reversed: BinaryHeap is a max-heap, we want the cheapest first.
        (other.cost, other.seq).cmp(&(self.cost, self.seq))
    }
}

/// Computes the clone of `scheme` over the given argument atoms.
///
/// Arity 0, 1, and 2 are fast; arity 3 explores a much larger table space and
/// can take considerably longer.
pub fn clone_closure(scheme: Scheme, atoms: &[Atom]) -> CloneClosure {
    let size = 3usize.pow(atoms.len() as u32);
    let mut heap = BinaryHeap::new();
    let mut seq = 0usize;
    let push = |heap: &mut BinaryHeap<Candidate>,
                    seq: &mut usize,
                    outputs: Vec<TruthValue>,
                    witness: Formula| {
        heap.push(Candidate {
            cost: witness.node_count(),
            seq: *seq,
            outputs,
            witness,
        });
        *seq += 1;
    };

    for (pos, atom) in atoms.iter().enumerate() {
        let outputs = (0..size)
            .map(|i| {
                let digit = i / 3usize.pow((atoms.len() - 1 - pos) as u32) % 3;
                TruthValue::from_index(digit)
            })
            .collect();
        push(&mut heap, &mut seq, outputs, Formula::Atom(atom.clone()));
    }

    let mut closure = CloneClosure {
        scheme,
        atoms: atoms.to_vec(),
        elements: Vec::new(),
        index: HashMap::new(),
    };

    while let Some(cand) = heap.pop() {
        if closure.index.contains_key(&cand.outputs) {
            continue;
        }
        let new_idx = closure.elements.len();
        closure.index.insert(cand.outputs.clone(), new_idx);
        closure.elements.push(DefinableFn {
            outputs: cand.outputs,
            witness: cand.witness,
        });

        let new = closure.elements[new_idx].clone();
        let neg_out: Vec<TruthValue> = new.outputs.iter().map(|&v| scheme.neg(v)).collect();
        push(
            &mut heap,
            &mut seq,
            neg_out,
            Formula::neg(new.witness.clone()),
        );
        type Build = fn(Formula, Formula) -> Formula;
        type Table = fn(Scheme, TruthValue, TruthValue) -> TruthValue;
        const OPS: [(Build, Table); 2] = [
            (Formula::and, |s, l, r| s.conj(l, r)),
            (Formula::or, |s, l, r| s.disj(l, r)),
        ];
        for j in 0..=new_idx {
            let other = closure.elements[j].clone();
            for (build, table) in OPS {
                for (l, r) in [(&new, &other), (&other, &new)] {
                    let outputs: Vec<TruthValue> = l
                        .outputs
                        .iter()
                        .zip(&r.outputs)
                        .map(|(&lv, &rv)| table(scheme, lv, rv))
                        .collect();
                    push(
                        &mut heap,
                        &mut seq,
                        outputs,
                        build(l.witness.clone(), r.witness.clone()),
                    );
                }
            }
        }
    }
    closure
}

/// Error raised when the shared-atom count exceeds the arity cap.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("shared-atom count {shared} exceeds the exhaustive-search arity cap {cap} (override with {ARITY_CAP_VAR})")]
pub struct ArityCapExceeded {
    /// Number of shared atoms.
    pub shared: usize,
    /// The cap in effect.
    pub cap: usize,
}

/// Result of the exact interpolant-existence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InterpolantSearch {
    /// A qualifying shared-atom formula exists; the first witness found.
    Found {
        /// The qualifying formula.
        witness: Formula,
        /// How many clone elements were inspected up to and including it.
        elements_checked: usize,
    },
    /// No definable shared-atom function qualifies.
    NoneExists {
        /// Total clone elements inspected.
        elements_checked: usize,
    },
}

impl InterpolantSearch {
    /// Whether a witness was found.
    pub fn exists(&self) -> bool {
        matches!(self, InterpolantSearch::Found { .. })
    }
}

/// Decides exactly whether some formula over the shared atoms of `phi` and
/// `psi` is a split interpolant for `(std1, std2)`: the first leg must be
/// valid from `phi` under `std1`, the second into `psi` under `std2`.
///
/// Every definable shared-atom function is tried in clone discovery order;
/// the first that qualifies is returned with its witness formula. A
/// [`InterpolantSearch::NoneExists`] result is an exhaustive certificate.
///
/// Fails with [`ArityCapExceeded`] when there are more shared atoms than the
/// cap allows (see [`arity_cap`]).
pub fn interpolant_exists(
    scheme: Scheme,
    std1: Standard,
    std2: Standard,
    phi: &Formula,
    psi: &Formula,
) -> Result<InterpolantSearch, ArityCapExceeded> {
    let phi_atoms = phi.atoms();
    let psi_atoms = psi.atoms();
    let shared: Vec<Atom> = phi_atoms
        .iter()
        .filter(|a| psi_atoms.contains(a))
        .cloned()
        .collect();
    let cap = arity_cap();
    if shared.len() > cap {
        return Err(ArityCapExceeded {
            shared: shared.len(),
            cap,
        });
    }

    let closure = clone_closure(scheme, &shared);

    // Precompute, for each valuation of each side's atoms, the side formula's
    // value and the index of the shared-atom tuple.
    let side_profile = |formula: &Formula, side_atoms: &[Atom]| -> Vec<(TruthValue, usize)> {
        valuations(side_atoms)
            .map(|v| {
                let value = eval(scheme, &v, formula).expect("all atoms assigned");
                let tuple: Vec<TruthValue> = shared
                    .iter()
                    .map(|a| v.get(a).expect("shared atoms occur on both sides"))
                    .collect();
                (value, tuple_index(&tuple))
            })
            .collect()
    };
    let phi_profile = side_profile(phi, &phi_atoms);
    let psi_profile = side_profile(psi, &psi_atoms);

    for (i, g) in closure.elements().iter().enumerate() {
        let first_leg = std1.component_pairs().iter().all(|&(x, y)| {
            phi_profile
                .iter()
                .all(|&(value, idx)| !x.contains(value) || y.contains(g.outputs()[idx]))
        });
        let second_leg = std2.component_pairs().iter().all(|&(x, y)| {
            psi_profile
                .iter()
                .all(|&(value, idx)| !x.contains(g.outputs()[idx]) || y.contains(value))
        });
        if first_leg && second_leg {
            return Ok(InterpolantSearch::Found {
                witness: g.witness().clone(),
                elements_checked: i + 1,
            });
        }
    }
    Ok(InterpolantSearch::NoneExists {
        elements_checked: closure.len(),
    })
}

/// Sanity check used in tests and certificates: evaluating an element's
/// witness reproduces its table.
pub fn witness_matches_table(scheme: Scheme, closure: &CloneClosure, g: &DefinableFn) -> bool {
    valuations(closure.atoms()).enumerate().all(|(i, v)| {
        let args: Vec<TruthValue> = closure
            .atoms()
            .iter()
            .map(|a| v.get(a).expect("assigned"))
            .collect();
        debug_assert_eq!(tuple_index(&args), i);
        eval(scheme, &v, g.witness()).expect("assigned") == g.outputs()[i]
    })
}
