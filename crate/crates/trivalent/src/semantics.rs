//! Valuations, satisfaction standards, inferences, and (in)validity.
//!
//! A *standard* fixes which values count for premises and which for
//! conclusions: the strict set `{1}` or the tolerant set `{1, 1/2}` on either
//! side. An inference is satisfied under a standard when, if every premise
//! lands in the premise set, some conclusion lands in the conclusion set; the
//! combined standard [`Standard::SsTt`] requires both the strict-strict and
//! tolerant-tolerant readings at once. Validity quantifies over every
//! valuation of the inference's atoms.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::syntax::{Atom, Formula, InvalidAtomName, ParseError};
use crate::truth::{ParseTruthValueError, Scheme, TruthValue};

/// A (partial) assignment of truth values to atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Valuation {
    map: BTreeMap<Atom, TruthValue>,
}

impl Valuation {
    /// The empty valuation.
    pub fn new() -> Valuation {
        Valuation::default()
    }

    /// Builds a valuation from (atom, value) pairs; later pairs win.
    pub fn from_pairs<I: IntoIterator<Item = (Atom, TruthValue)>>(pairs: I) -> Valuation {
        Valuation {
            map: pairs.into_iter().collect(),
        }
    }

    /// Assigns `value` to `atom`.
    pub fn set(&mut self, atom: Atom, value: TruthValue) {
        self.map.insert(atom, value);
    }

    /// The value assigned to `atom`, if any.
    pub fn get(&self, atom: &Atom) -> Option<TruthValue> {
        self.map.get(atom).copied()
    }

    /// Iterates over assignments in atom order.
    pub fn iter(&self) -> impl Iterator<Item = (&Atom, TruthValue)> {
        self.map.iter().map(|(a, &v)| (a, v))
    }

    /// Number of assigned atoms.
    pub fn len(&self) -> usize {
        self.map.len()
    }

    /// Whether no atom is assigned.
    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// The restriction of the valuation to the given atoms.
    pub fn restrict(&self, atoms: &[Atom]) -> Valuation {
        Valuation {
            map: self
                .map
                .iter()
                .filter(|(a, _)| atoms.contains(a))
                .map(|(a, &v)| (a.clone(), v))
                .collect(),
        }
    }

    /// Whether every listed atom gets a classical value (`0` or `1`).
    pub fn is_classical_on(&self, atoms: &[Atom]) -> Result<bool, EvalError> {
        atoms.iter().try_fold(true, |acc, a| {
            let v = self.get(a).ok_or_else(|| EvalError::MissingAtom {
                atom: a.clone(),
            })?;
            Ok(acc && v.is_classical())
        })
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (atom, value) in self.iter() {
            if !first {
                f.write_str(", ")?;
            }
            write!(f, "{atom}={value}")?;
            first = false;
        }
        Ok(())
    }
}

/// Error produced when parsing a valuation like `p=1,q=1/2` fails.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseValuationError {
    /// An item was not of the form `atom=value`.
    #[error("invalid valuation item {item:?}: expected atom=value")]
    BadItem {
        /// The offending comma-separated item.
        item: String,
    },
    /// The atom name was malformed.
    #[error(transparent)]
    BadAtom(#[from] InvalidAtomName),
    /// The value was not `0`, `1/2`, or `1`.
    #[error(transparent)]
    BadValue(#[from] ParseTruthValueError),
}

impl FromStr for Valuation {
    type Err = ParseValuationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut valuation = Valuation::new();
        for item in s.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| ParseValuationError::BadItem {
                    item: item.to_owned(),
                })?;
            let atom = Atom::new(name.trim())?;
            let value: TruthValue = value.parse()?;
            valuation.set(atom, value);
        }
        Ok(valuation)
    }
}

/// Iterator over all valuations of a fixed atom list.
///
/// The last atom varies fastest, and values ascend `0 < 1/2 < 1`, so the
/// first valuation is all-`0` and the last all-`1`.
pub fn valuations(atoms: &[Atom]) -> impl Iterator<Item = Valuation> + '_ {
    Assignments::new(atoms, &TruthValue::ALL)
}

/// Iterator over all *classical* valuations of a fixed atom list, in the same
/// order convention as [`valuations`] with values ascending `0 < 1`.
pub fn bivaluations(atoms: &[Atom]) -> impl Iterator<Item = Valuation> + '_ {
    const CLASSICAL: [TruthValue; 2] = [TruthValue::F, TruthValue::T];
    Assignments::new(atoms, &CLASSICAL)
}

struct Assignments<'a> {
    atoms: &'a [Atom],
    values: &'static [TruthValue],
    digits: Vec<usize>,
    done: bool,
}

impl<'a> Assignments<'a> {
    fn new(atoms: &'a [Atom], values: &'static [TruthValue]) -> Assignments<'a> {
        Assignments {
            atoms,
            values,
            digits: vec![0; atoms.len()],
            done: false,
        }
    }
}

impl Iterator for Assignments<'_> {
    type Item = Valuation;

    fn next(&mut self) -> Option<Valuation> {
        if self.done {
            return None;
        }
        let current = Valuation::from_pairs(
            self.atoms
                .iter()
                .zip(&self.digits)
                .map(|(a, &d)| (a.clone(), self.values[d])),
        );
        // Odometer increment, last digit fastest.
        self.done = true;
        for d in self.digits.iter_mut().rev() {
            if *d + 1 < self.values.len() {
                *d += 1;
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(current)
    }
}

/// Which truth values count on one side of a standard.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValueSet {
    /// `{1}`.
    Strict,
    /// `{1, 1/2}`.
    Tolerant,
}

impl ValueSet {
    /// Membership test.
    pub const fn contains(self, v: TruthValue) -> bool {
        match self {
            ValueSet::Strict => matches!(v, TruthValue::T),
            ValueSet::Tolerant => !matches!(v, TruthValue::F),
        }
    }
}

/// A satisfaction standard: value sets for premises and conclusions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Standard {
    /// Strict premises, strict conclusions.
    Ss,
    /// Tolerant premises, tolerant conclusions.
    Tt,
    /// Strict premises, tolerant conclusions.
    St,
    /// Tolerant premises, strict conclusions.
    Ts,
    /// Both [`Standard::Ss`] and [`Standard::Tt`] at once.
    SsTt,
}

impl Standard {
    /// All standards in the canonical order `ss < tt < st < ts < sstt`.
    pub const ALL: [Standard; 5] = [
        Standard::Ss,
        Standard::Tt,
        Standard::St,
        Standard::Ts,
        Standard::SsTt,
    ];

    /// The (premise set, conclusion set) components; two for [`Standard::SsTt`].
    pub const fn component_pairs(self) -> &'static [(ValueSet, ValueSet)] {
        use ValueSet::{Strict, Tolerant};
        match self {
            Standard::Ss => &[(Strict, Strict)],
            Standard::Tt => &[(Tolerant, Tolerant)],
            Standard::St => &[(Strict, Tolerant)],
            Standard::Ts => &[(Tolerant, Strict)],
            Standard::SsTt => &[(Strict, Strict), (Tolerant, Tolerant)],
        }
    }

    /// The display name with the intersection sign, e.g. `ss∩tt`.
    pub const fn pretty(self) -> &'static str {
        match self {
            Standard::Ss => "ss",
            Standard::Tt => "tt",
            Standard::St => "st",
            Standard::Ts => "ts",
            Standard::SsTt => "ss∩tt",
        }
    }
}

impl fmt::Display for Standard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Standard::Ss => "ss",
            Standard::Tt => "tt",
            Standard::St => "st",
            Standard::Ts => "ts",
            Standard::SsTt => "sstt",
        })
    }
}

/// Error returned when a string names no standard.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid standard {input:?}: expected ss, tt, st, ts, or sstt")]
pub struct ParseStandardError {
    /// The rejected input.
    pub input: String,
}

impl FromStr for Standard {
    type Err = ParseStandardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ss" => Ok(Standard::Ss),
            "tt" => Ok(Standard::Tt),
            "st" => Ok(Standard::St),
            "ts" => Ok(Standard::Ts),
            "sstt" | "ss∩tt" => Ok(Standard::SsTt),
            other => Err(ParseStandardError {
                input: other.to_owned(),
            }),
        }
    }
}

impl Serialize for Standard {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Standard {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An inference: finitely many premises and conclusions.
///
/// Text form: premises and conclusions joined by `;`, the two sides separated
/// by `=>`, either side possibly empty — `p ; q => r`, `=> p | ~p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Inference {
    /// The premises.
    pub premises: Vec<Formula>,
    /// The conclusions.
    pub conclusions: Vec<Formula>,
}

impl Inference {
    /// Builds an inference from premise and conclusion lists.
    pub fn new(premises: Vec<Formula>, conclusions: Vec<Formula>) -> Inference {
        Inference {
            premises,
            conclusions,
        }
    }

    /// The single-premise, single-conclusion inference `phi => psi`.
    pub fn single(phi: Formula, psi: Formula) -> Inference {
        Inference::new(vec![phi], vec![psi])
    }

    /// All atoms occurring in the inference, sorted and deduplicated.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut set = std::collections::BTreeSet::new();
        for f in self.premises.iter().chain(&self.conclusions) {
            set.extend(f.atoms());
        }
        set.into_iter().collect()
    }
}

impl fmt::Display for Inference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |fs: &[Formula]| {
            fs.iter()
                .map(Formula::to_string)
                .collect::<Vec<_>>()
                .join(" ; ")
        };
        match (self.premises.is_empty(), self.conclusions.is_empty()) {
            (true, true) => f.write_str("=>"),
            (true, false) => write!(f, "=> {}", join(&self.conclusions)),
            (false, true) => write!(f, "{} =>", join(&self.premises)),
            (false, false) => write!(f, "{} => {}", join(&self.premises), join(&self.conclusions)),
        }
    }
}

/// Error produced when parsing an inference fails.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseInferenceError {
    /// The `=>` separator was missing.
    #[error("invalid inference: missing \"=>\" between premises and conclusions")]
    MissingArrow,
    /// A premise or conclusion failed to parse.
    #[error("invalid {side} #{index}: {source}")]
    BadFormula {
        /// `"premise"` or `"conclusion"`.
        side: &'static str,
        /// 1-based position within its side.
        index: usize,
        /// The underlying formula parse error.
        source: ParseError,
    },
}

impl FromStr for Inference {
    type Err = ParseInferenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lhs, rhs) = s
            .split_once("=>")
            .ok_or(ParseInferenceError::MissingArrow)?;
        let parse_side = |side: &str, name: &'static str| {
            let mut formulas = Vec::new();
            if side.trim().is_empty() {
                return Ok(formulas);
            }
            for (i, chunk) in side.split(';').enumerate() {
                let formula =
                    chunk
                        .trim()
                        .parse()
                        .map_err(|source| ParseInferenceError::BadFormula {
                            side: name,
                            index: i + 1,
                            source,
                        })?;
                formulas.push(formula);
            }
            Ok(formulas)
        };
        Ok(Inference {
            premises: parse_side(lhs, "premise")?,
            conclusions: parse_side(rhs, "conclusion")?,
        })
    }
}

/// Error produced when evaluation meets an unassigned atom.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    /// The valuation does not assign the atom.
    #[error("valuation does not assign atom {atom}")]
    MissingAtom {
        /// The unassigned atom.
        atom: Atom,
    },
}

/// Evaluates `formula` under `valuation` using the scheme's tables.
pub fn eval(scheme: Scheme, valuation: &Valuation, formula: &Formula) -> Result<TruthValue, EvalError> {
    match formula {
        Formula::Atom(a) => valuation
            .get(a)
            .ok_or_else(|| EvalError::MissingAtom { atom: a.clone() }),
        Formula::Neg(f) => Ok(scheme.neg(eval(scheme, valuation, f)?)),
        Formula::And(l, r) => Ok(scheme.conj(
            eval(scheme, valuation, l)?,
            eval(scheme, valuation, r)?,
        )),
        Formula::Or(l, r) => Ok(scheme.disj(
            eval(scheme, valuation, l)?,
            eval(scheme, valuation, r)?,
        )),
    }
}

/// Whether `valuation` satisfies `inference` under `standard`.
///
/// For each component (x, y) of the standard: if every premise evaluates into
/// x, some conclusion must evaluate into y. With no premises the condition
/// triggers unconditionally; with no conclusions it can only hold when some
/// premise falls outside x.
pub fn satisfies(
    scheme: Scheme,
    standard: Standard,
    valuation: &Valuation,
    inference: &Inference,
) -> Result<bool, EvalError> {
    let premises: Vec<TruthValue> = inference
        .premises
        .iter()
        .map(|f| eval(scheme, valuation, f))
        .collect::<Result<_, _>>()?;
    let conclusions: Vec<TruthValue> = inference
        .conclusions
        .iter()
        .map(|f| eval(scheme, valuation, f))
        .collect::<Result<_, _>>()?;
    Ok(standard.component_pairs().iter().all(|&(x, y)| {
        let all_premises_in = premises.iter().all(|&v| x.contains(v));
        let some_conclusion_in = conclusions.iter().any(|&v| y.contains(v));
        !all_premises_in || some_conclusion_in
    }))
}

/// The outcome of a validity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    /// Every valuation satisfies the inference.
    Valid,
    /// Some valuation refutes it; the first one in enumeration order.
    Invalid {
        /// The refuting valuation.
        counterexample: Valuation,
    },
}

impl Validity {
    /// Whether the inference is valid.
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }

    /// The counterexample, if invalid.
    pub fn counterexample(&self) -> Option<&Valuation> {
        match self {
            Validity::Valid => None,
            Validity::Invalid { counterexample } => Some(counterexample),
        }
    }
}

/// Checks validity by exhausting all valuations of the inference's atoms.
///
/// Returns the first counterexample in the order of [`valuations`].
pub fn valid(scheme: Scheme, standard: Standard, inference: &Inference) -> Validity {
    for v in valuations(&inference.atoms()) {
        let ok = satisfies(scheme, standard, &v, inference)
            .expect("every atom of the inference is assigned");
        if !ok {
            return Validity::Invalid { counterexample: v };
        }
    }
    Validity::Valid
}

/// Checks classical validity by exhausting bivaluations, evaluating with the
/// two-valued connectives directly (no three-valued tables involved).
///
/// Returns the first counterexample in the order of [`bivaluations`].
pub fn classically_valid(inference: &Inference) -> Validity {
    fn eval_bool(valuation: &Valuation, formula: &Formula) -> bool {
        match formula {
            Formula::Atom(a) => valuation
                .get(a)
                .expect("every atom of the inference is assigned")
                .to_bool()
                .expect("bivaluations are classical"),
            Formula::Neg(f) => !eval_bool(valuation, f),
            Formula::And(l, r) => eval_bool(valuation, l) && eval_bool(valuation, r),
            Formula::Or(l, r) => eval_bool(valuation, l) || eval_bool(valuation, r),
        }
    }

    for v in bivaluations(&inference.atoms()) {
        let all_premises = inference.premises.iter().all(|f| eval_bool(&v, f));
        let some_conclusion = inference.conclusions.iter().any(|f| eval_bool(&v, f));
        if all_premises && !some_conclusion {
            return Validity::Invalid { counterexample: v };
        }
    }
    Validity::Valid
}

/// Whether `sharper` refines `base` on `atoms` in the information order:
/// wherever `base` already commits to `0` or `1`, `sharper` must agree.
///
/// When `sharper` is additionally classical on `atoms`, it is a full
/// sharpening of `base` there.
pub fn is_partial_sharpening(
    base: &Valuation,
    sharper: &Valuation,
    atoms: &[Atom],
) -> Result<bool, EvalError> {
    atoms.iter().try_fold(true, |acc, a| {
        let missing = || EvalError::MissingAtom { atom: a.clone() };
        let b = base.get(a).ok_or_else(missing)?;
        let s = sharper.get(a).ok_or_else(missing)?;
        Ok(acc && b.info_leq(s))
    })
}
