//! Truth values, connective truth tables, and connective schemes.
//!
//! The value space is `{F, N, T}` (printed `0`, `1/2`, `1`). Two orders matter:
//! the *truth order* `F < N < T` (the derived [`Ord`]) and the *information
//! order*, in which `N` sits strictly below both `F` and `T` while `F` and `T`
//! are incomparable (see [`TruthValue::info_leq`]).
//!
//! A table is *boolean normal* when it agrees with the corresponding classical
//! connective on classical inputs, and *monotonic* when it preserves the
//! information order pointwise. Exactly one unary table is boolean normal and
//! monotonic for negation, and exactly four binary tables qualify for each of
//! conjunction and disjunction; a [`Scheme`] picks one conjunction and one
//! disjunction, giving sixteen schemes in total.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A truth value of the three-valued logic.
///
/// The derived ordering is the truth order `F < N < T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TruthValue {
    /// False, printed `0`.
    F,
    /// Neither/undetermined, printed `1/2`.
    N,
    /// True, printed `1`.
    T,
}

impl TruthValue {
    /// All values in truth order.
    pub const ALL: [TruthValue; 3] = [TruthValue::F, TruthValue::N, TruthValue::T];

    /// Index in truth order: `F = 0`, `N = 1`, `T = 2`.
    pub const fn index(self) -> usize {
        self as usize
    }

    /// Inverse of [`TruthValue::index`]. Panics if `i > 2`.
    pub const fn from_index(i: usize) -> TruthValue {
        match i {
            0 => TruthValue::F,
            1 => TruthValue::N,
            2 => TruthValue::T,
            _ => panic!("truth value index out of range"),
        }
    }

    /// Information order: `a ≤ b` iff `a = b` or `a = N`.
    ///
    /// `N` carries the least information; `F` and `T` are incomparable.
    pub const fn info_leq(self, other: TruthValue) -> bool {
        matches!(self, TruthValue::N) || self as usize == other as usize
    }

    /// Whether the value is classical (`F` or `T`).
    pub const fn is_classical(self) -> bool {
        !matches!(self, TruthValue::N)
    }

    /// The classical value embedded into the three-valued space.
    pub const fn from_bool(b: bool) -> TruthValue {
        if b {
            TruthValue::T
        } else {
            TruthValue::F
        }
    }

    /// The classical projection: `Some(true)` for `T`, `Some(false)` for `F`, `None` for `N`.
    pub const fn to_bool(self) -> Option<bool> {
        match self {
            TruthValue::F => Some(false),
            TruthValue::N => None,
            TruthValue::T => Some(true),
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue::F => "0",
            TruthValue::N => "1/2",
            TruthValue::T => "1",
        })
    }
}

impl Serialize for TruthValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TruthValue {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Error returned when a string is not `0`, `1/2`, or `1`.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid truth value {input:?}: expected \"0\", \"1/2\", or \"1\"")]
pub struct ParseTruthValueError {
    /// The rejected input.
    pub input: String,
}

impl FromStr for TruthValue {
    type Err = ParseTruthValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "0" => Ok(TruthValue::F),
            "1/2" | "0.5" => Ok(TruthValue::N),
            "1" => Ok(TruthValue::T),
            other => Err(ParseTruthValueError {
                input: other.to_owned(),
            }),
        }
    }
}

/// The two classical binary connectives a table can be compared against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    /// Conjunction.
    And,
    /// Disjunction.
    Or,
}

impl BinaryOp {
    /// Classical semantics of the connective.
    pub const fn classical(self, l: bool, r: bool) -> bool {
        match self {
            BinaryOp::And => l && r,
            BinaryOp::Or => l || r,
        }
    }
}

/// A unary truth table, indexed by the input's truth-order index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnaryTable {
    out: [TruthValue; 3],
}

impl UnaryTable {
    /// Builds a table from its outputs at `F`, `N`, `T` (in that order).
    pub const fn new(out: [TruthValue; 3]) -> UnaryTable {
        UnaryTable { out }
    }

    /// Applies the table.
    pub const fn apply(self, v: TruthValue) -> TruthValue {
        self.out[v.index()]
    }

    /// Outputs at `F`, `N`, `T`, in that order.
    pub const fn outputs(self) -> [TruthValue; 3] {
        self.out
    }

    /// Agrees with classical negation on classical inputs.
    pub fn is_boolean_normal(self) -> bool {
        [false, true].into_iter().all(|b| {
            self.apply(TruthValue::from_bool(b)) == TruthValue::from_bool(!b)
        })
    }

    /// Preserves the information order: `a ≤ b` implies `t(a) ≤ t(b)`.
    pub fn is_monotonic(self) -> bool {
        TruthValue::ALL.into_iter().all(|a| {
            TruthValue::ALL
                .into_iter()
                .filter(|&b| a.info_leq(b))
                .all(|b| self.apply(a).info_leq(self.apply(b)))
        })
    }
}

/// A binary truth table, stored row-major: entry `(l, r)` at `3 * index(l) + index(r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BinaryTable {
    out: [TruthValue; 9],
}

impl BinaryTable {
    /// Builds a table from its nine outputs, rows `F`, `N`, `T` left to right.
    pub const fn new(out: [TruthValue; 9]) -> BinaryTable {
        BinaryTable { out }
    }

    /// Applies the table.
    pub const fn apply(self, l: TruthValue, r: TruthValue) -> TruthValue {
        self.out[3 * l.index() + r.index()]
    }

    /// The nine outputs in row-major order.
    pub const fn outputs(self) -> [TruthValue; 9] {
        self.out
    }

    /// Agrees with the classical `op` on classical inputs.
    pub fn is_boolean_normal(self, op: BinaryOp) -> bool {
        [false, true].into_iter().all(|l| {
            [false, true].into_iter().all(|r| {
                self.apply(TruthValue::from_bool(l), TruthValue::from_bool(r))
                    == TruthValue::from_bool(op.classical(l, r))
            })
        })
    }

    /// Preserves the information order in both arguments jointly.
    pub fn is_monotonic(self) -> bool {
        let pairs = || {
            TruthValue::ALL
                .into_iter()
                .flat_map(|l| TruthValue::ALL.into_iter().map(move |r| (l, r)))
        };
        pairs().all(|(l1, r1)| {
            pairs()
                .filter(|&(l2, r2)| l1.info_leq(l2) && r1.info_leq(r2))
                .all(|(l2, r2)| self.apply(l1, r1).info_leq(self.apply(l2, r2)))
        })
    }
}

/// Every boolean-normal monotonic unary table for negation.
///
/// There is exactly one: `1 → 0`, `1/2 → 1/2`, `0 → 1`.
pub fn bnm_unary_tables() -> Vec<UnaryTable> {
    let mut found = Vec::new();
    for a in TruthValue::ALL {
        for b in TruthValue::ALL {
            for c in TruthValue::ALL {
                let t = UnaryTable::new([a, b, c]);
                if t.is_boolean_normal() && t.is_monotonic() {
                    found.push(t);
                }
            }
        }
    }
    found
}

/// Every boolean-normal monotonic binary table for `op`, in lexicographic
/// order of the nine outputs under the truth order `F < N < T`.
///
/// There are exactly four for each of [`BinaryOp::And`] and [`BinaryOp::Or`].
pub fn bnm_binary_tables(op: BinaryOp) -> Vec<BinaryTable> {
    let mut found = Vec::new();
    // Counting up in base 3 with the first cell most significant yields
    // lexicographic order directly.
    for code in 0..3usize.pow(9) {
        let mut out = [TruthValue::F; 9];
        let mut rest = code;
        for slot in (0..9).rev() {
            out[slot] = TruthValue::from_index(rest % 3);
            rest /= 3;
        }
        let t = BinaryTable::new(out);
        if t.is_boolean_normal(op) && t.is_monotonic() {
            found.push(t);
        }
    }
    found
}

/// One of the four admissible ways to fill a connective's unsettled cells.
///
/// Each boolean-normal monotonic conjunction (resp. disjunction) is forced
/// everywhere except at `(0, 1/2)`/`(1/2, 0)` (resp. `(1, 1/2)`/`(1/2, 1)`):
///
/// * [`Sk`](ConnChoice::Sk) — the classical argument wins in both cells,
/// * [`Wk`](ConnChoice::Wk) — `1/2` wins in both cells,
/// * [`Lmk`](ConnChoice::Lmk) — the *left* argument wins in both cells,
/// * [`Rmk`](ConnChoice::Rmk) — the *right* argument wins in both cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConnChoice {
    /// Strong Kleene: the determinative classical value wins.
    Sk,
    /// Weak Kleene: `1/2` is infectious.
    Wk,
    /// Left-biased: the left argument's value wins in the unsettled cells.
    Lmk,
    /// Right-biased: the right argument's value wins in the unsettled cells.
    Rmk,
}

impl ConnChoice {
    /// All choices, in the canonical order `SK < WK < LMK < RMK`.
    pub const ALL: [ConnChoice; 4] = [
        ConnChoice::Sk,
        ConnChoice::Wk,
        ConnChoice::Lmk,
        ConnChoice::Rmk,
    ];

    /// The conjunction table selected by this choice.
    ///
    /// Unsettled cells are `(0, 1/2)` and `(1/2, 0)`; everything else is
    /// forced by normality and monotonicity.
    pub const fn conj_table(self) -> BinaryTable {
        use TruthValue::{F, N, T};
        let (f_n, n_f) = match self {
            ConnChoice::Sk => (F, F),
            ConnChoice::Wk => (N, N),
            ConnChoice::Lmk => (F, N),
            ConnChoice::Rmk => (N, F),
        };
        BinaryTable::new([
            F, f_n, F, // 0 ∧ _
            n_f, N, N, // 1/2 ∧ _
            F, N, T, // 1 ∧ _
        ])
    }

    /// The disjunction table selected by this choice.
    ///
    /// Unsettled cells are `(1, 1/2)` and `(1/2, 1)`.
    pub const fn disj_table(self) -> BinaryTable {
        use TruthValue::{F, N, T};
        let (t_n, n_t) = match self {
            ConnChoice::Sk => (T, T),
            ConnChoice::Wk => (N, N),
            ConnChoice::Lmk => (T, N),
            ConnChoice::Rmk => (N, T),
        };
        BinaryTable::new([
            F, N, T, // 0 ∨ _
            N, N, n_t, // 1/2 ∨ _
            T, t_n, T, // 1 ∨ _
        ])
    }
}

impl fmt::Display for ConnChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConnChoice::Sk => "SK",
            ConnChoice::Wk => "WK",
            ConnChoice::Lmk => "LMK",
            ConnChoice::Rmk => "RMK",
        })
    }
}

/// Error returned when a string names no connective choice.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid connective choice {input:?}: expected SK, WK, LMK, or RMK")]
pub struct ParseConnChoiceError {
    /// The rejected input.
    pub input: String,
}

impl FromStr for ConnChoice {
    type Err = ParseConnChoiceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "SK" => Ok(ConnChoice::Sk),
            "WK" => Ok(ConnChoice::Wk),
            "LMK" => Ok(ConnChoice::Lmk),
            "RMK" => Ok(ConnChoice::Rmk),
            other => Err(ParseConnChoiceError {
                input: other.to_owned(),
            }),
        }
    }
}

impl Serialize for ConnChoice {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ConnChoice {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A connective scheme: the negation table plus one conjunction and one
/// disjunction choice. Written `CONJ/DISJ`, e.g. `SK/WK`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scheme {
    conj_choice: ConnChoice,
    disj_choice: ConnChoice,
}

impl Scheme {
    /// Builds the scheme with the given conjunction and disjunction choices.
    pub const fn new(conj: ConnChoice, disj: ConnChoice) -> Scheme {
        Scheme {
            conj_choice: conj,
            disj_choice: disj,
        }
    }

    /// All sixteen schemes, conjunction-major, each axis ordered `SK < WK < LMK < RMK`.
    pub fn all() -> Vec<Scheme> {
        ConnChoice::ALL
            .into_iter()
            .flat_map(|c| ConnChoice::ALL.into_iter().map(move |d| Scheme::new(c, d)))
            .collect()
    }

    /// The conjunction choice.
    pub const fn conj_choice(self) -> ConnChoice {
        self.conj_choice
    }

    /// The disjunction choice.
    pub const fn disj_choice(self) -> ConnChoice {
        self.disj_choice
    }

    /// The (unique) negation table.
    pub const fn neg_table(self) -> UnaryTable {
        use TruthValue::{F, N, T};
        UnaryTable::new([T, N, F])
    }

    /// The conjunction table.
    pub const fn conj_table(self) -> BinaryTable {
        self.conj_choice.conj_table()
    }

    /// The disjunction table.
    pub const fn disj_table(self) -> BinaryTable {
        self.disj_choice.disj_table()
    }

    /// Applies negation.
    // Connective application, not an arithmetic negation of `self`.
    #[allow(clippy::should_implement_trait)]
    pub const fn neg(self, v: TruthValue) -> TruthValue {
        self.neg_table().apply(v)
    }

    /// Applies conjunction.
    pub const fn conj(self, l: TruthValue, r: TruthValue) -> TruthValue {
        self.conj_table().apply(l, r)
    }

    /// Applies disjunction.
    pub const fn disj(self, l: TruthValue, r: TruthValue) -> TruthValue {
        self.disj_table().apply(l, r)
    }

    /// The scheme's name, e.g. `"LMK/SK"`.
    pub fn name(self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.conj_choice, self.disj_choice)
    }
}

/// Error returned when a string names no scheme.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid scheme {input:?}: expected CONJ/DISJ with each side SK, WK, LMK, or RMK")]
pub struct ParseSchemeError {
    /// The rejected input.
    pub input: String,
}

impl FromStr for Scheme {
    type Err = ParseSchemeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseSchemeError {
            input: s.to_owned(),
        };
        let (c, d) = s.trim().split_once('/').ok_or_else(err)?;
        let conj = ConnChoice::from_str(c).map_err(|_| err())?;
        let disj = ConnChoice::from_str(d).map_err(|_| err())?;
        Ok(Scheme::new(conj, disj))
    }
}

impl Serialize for Scheme {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scheme {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
