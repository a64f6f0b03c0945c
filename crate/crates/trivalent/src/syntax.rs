//! Propositional formulas: atoms, abstract syntax, parsing, printing,
//! literals, and exhaustive enumeration by depth.
//!
//! Concrete syntax: `~`/`!` for negation, `&` for conjunction, `|` for
//! disjunction, with `&` binding tighter than `|`, both left-associative, and
//! parentheses for grouping. Atom names match `[a-z][a-zA-Z0-9_]*`.
//!
//! Printing is canonical and unambiguous: a nested binary connective is
//! parenthesized unless it is a left-nested chain of the *same* connective, so
//! `(p | q) | r` prints as `p | q | r` while `p | (q | r)` and `p | (q & q)`
//! keep their parentheses. `parse(&f.to_string())` reproduces `f` exactly.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A propositional atom. Names match `[a-z][a-zA-Z0-9_]*`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(String);

/// Error returned when a string is not a well-formed atom name.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid atom name {input:?}: expected a lowercase letter followed by letters, digits, or underscores")]
pub struct InvalidAtomName {
    /// The rejected input.
    pub input: String,
}

impl Atom {
    /// Builds an atom, validating the name shape.
    pub fn new(name: &str) -> Result<Atom, InvalidAtomName> {
        let mut chars = name.chars();
        let head_ok = chars.next().is_some_and(|c| c.is_ascii_lowercase());
        let tail_ok = chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if head_ok && tail_ok {
            Ok(Atom(name.to_owned()))
        } else {
            Err(InvalidAtomName {
                input: name.to_owned(),
            })
        }
    }

    /// The atom's name.
    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Atom {
    type Err = InvalidAtomName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Atom::new(s)
    }
}

impl Serialize for Atom {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Atom {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Atom::new(&s).map_err(serde::de::Error::custom)
    }
}

/// A propositional formula over negation, conjunction, and disjunction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    /// An atom.
    Atom(Atom),
    /// Negation.
    Neg(Box<Formula>),
    /// Conjunction.
    And(Box<Formula>, Box<Formula>),
    /// Disjunction.
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// Convenience constructor for an atom; panics on an invalid name.
    ///
    /// Use [`Atom::new`] for fallible construction.
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Atom::new(name).expect("valid atom name"))
    }

    /// Negation of `f`.
    // An associated constructor taking the subformula, not a negation of
    // `self`.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(f: Formula) -> Formula {
        Formula::Neg(Box::new(f))
    }

    /// Conjunction of `l` and `r`.
    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    /// Disjunction of `l` and `r`.
    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    /// The atoms occurring in the formula, sorted and deduplicated.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut set = BTreeSet::new();
        self.collect_atoms(&mut set);
        set.into_iter().collect()
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Neg(f) => f.collect_atoms(out),
            Formula::And(l, r) | Formula::Or(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Connective-nesting depth: atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Neg(f) => 1 + f.depth(),
            Formula::And(l, r) | Formula::Or(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Total number of syntax-tree nodes (atoms and connectives).
    pub fn node_count(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Neg(f) => 1 + f.node_count(),
            Formula::And(l, r) | Formula::Or(l, r) => 1 + l.node_count() + r.node_count(),
        }
    }

    fn binary_op(&self) -> Option<BinKind> {
        match self {
            Formula::And(..) => Some(BinKind::And),
            Formula::Or(..) => Some(BinKind::Or),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum BinKind {
    And,
    Or,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn write_child(
            f: &mut fmt::Formatter<'_>,
            child: &Formula,
            parent: BinKind,
            is_right: bool,
        ) -> fmt::Result {
            let needs_parens = match child.binary_op() {
                Some(op) => is_right || op != parent,
                None => false,
            };
            if needs_parens {
                write!(f, "({child})")
            } else {
                write!(f, "{child}")
            }
        }

        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Neg(inner) => {
                if inner.binary_op().is_some() {
                    write!(f, "~({inner})")
                } else {
                    write!(f, "~{inner}")
                }
            }
            Formula::And(l, r) => {
                write_child(f, l, BinKind::And, false)?;
                f.write_str(" & ")?;
                write_child(f, r, BinKind::And, true)
            }
            Formula::Or(l, r) => {
                write_child(f, l, BinKind::Or, false)?;
                f.write_str(" | ")?;
                write_child(f, r, BinKind::Or, true)
            }
        }
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Error produced when parsing a formula fails.
///
/// Carries the byte offset of the offending position, the tokens that would
/// have been accepted there, and what was actually found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input at which parsing failed.
    pub offset: usize,
    /// Human-readable descriptions of the tokens accepted at that position.
    pub expected: Vec<&'static str>,
    /// Description of what was found instead.
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at byte {}: expected {}, found {}",
            self.offset,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

/// Parses the concrete syntax described in the module docs.
pub fn parse(input: &str) -> Result<Formula, ParseError> {
    let mut cur = Cursor { src: input, pos: 0 };
    let formula = parse_disj(&mut cur)?;
    cur.skip_ws();
    if cur.pos < cur.src.len() {
        return Err(cur.error(&["'&'", "'|'", "end of input"]));
    }
    Ok(formula)
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..]
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    /// Consumes `c` if it is next (after whitespace); reports whether it did.
    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        let found = match self.peek() {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_owned(),
        };
        ParseError {
            offset: self.pos,
            expected: expected.to_vec(),
            found,
        }
    }
}

fn parse_disj(cur: &mut Cursor<'_>) -> Result<Formula, ParseError> {
    let mut formula = parse_conj(cur)?;
    while cur.eat('|') {
        formula = Formula::or(formula, parse_conj(cur)?);
    }
    Ok(formula)
}

fn parse_conj(cur: &mut Cursor<'_>) -> Result<Formula, ParseError> {
    let mut formula = parse_neg(cur)?;
    while cur.eat('&') {
        formula = Formula::and(formula, parse_neg(cur)?);
    }
    Ok(formula)
}

fn parse_neg(cur: &mut Cursor<'_>) -> Result<Formula, ParseError> {
    cur.skip_ws();
    match cur.peek() {
        Some('~') | Some('!') => {
            cur.pos += 1;
            Ok(Formula::neg(parse_neg(cur)?))
        }
        Some('(') => {
            cur.pos += 1;
            let inner = parse_disj(cur)?;
            if cur.eat(')') {
                Ok(inner)
            } else {
                cur.skip_ws();
                Err(cur.error(&["'&'", "'|'", "')'"]))
            }
        }
        Some(c) if c.is_ascii_lowercase() => {
            let start = cur.pos;
            while cur
                .peek()
                .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                cur.pos += 1;
            }
            let name = &cur.src[start..cur.pos];
            Ok(Formula::Atom(Atom::new(name).expect("lexed a valid atom")))
        }
        _ => Err(cur.error(&["'~'", "'!'", "'('", "an atom"])),
    }
}

/// An atom or its negation.
///
/// The ordering sorts by atom name ascending, with the positive literal
/// before the negative one for the same atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    /// The underlying atom.
    pub atom: Atom,
    /// `true` for the bare atom, `false` for its negation.
    pub positive: bool,
}

impl Literal {
    /// The positive literal on `atom`.
    pub fn positive(atom: Atom) -> Literal {
        Literal {
            atom,
            positive: true,
        }
    }

    /// The negative literal on `atom`.
    pub fn negative(atom: Atom) -> Literal {
        Literal {
            atom,
            positive: false,
        }
    }

    /// The literal as a formula: the atom, or its negation.
    pub fn to_formula(&self) -> Formula {
        let atom = Formula::Atom(self.atom.clone());
        if self.positive {
            atom
        } else {
            Formula::neg(atom)
        }
    }

    /// The literal with opposite polarity.
    pub fn negated(&self) -> Literal {
        Literal {
            atom: self.atom.clone(),
            positive: !self.positive,
        }
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Literal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Positive before negative: compare on !positive so `true` sorts first.
        (&self.atom, !self.positive).cmp(&(&other.atom, !other.positive))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("~")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// Error returned by [`fold_conj`] and [`fold_disj`] on empty input: the
/// language has no empty conjunction or disjunction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("cannot fold an empty sequence of formulas")]
pub struct EmptyFold;

/// Left-folds formulas into a conjunction: `[a, b, c]` becomes `(a & b) & c`.
pub fn fold_conj<I: IntoIterator<Item = Formula>>(items: I) -> Result<Formula, EmptyFold> {
    let mut iter = items.into_iter();
    let first = iter.next().ok_or(EmptyFold)?;
    Ok(iter.fold(first, Formula::and))
}

/// Left-folds formulas into a disjunction: `[a, b, c]` becomes `(a | b) | c`.
pub fn fold_disj<I: IntoIterator<Item = Formula>>(items: I) -> Result<Formula, EmptyFold> {
    let mut iter = items.into_iter();
    let first = iter.next().ok_or(EmptyFold)?;
    Ok(iter.fold(first, Formula::or))
}

/// Enumerates every formula over `pool` of depth at most `max_depth`, without
/// duplicates, in a fixed order.
///
/// Order: depth levels ascending; within the level of exact depth `d`, first
/// the negations of the previous level (in that level's order), then all
/// conjunctions, then all disjunctions, where the binary arguments range over
/// all earlier formulas with at least one argument of exact depth `d - 1`,
/// ordered by (left argument position, right argument position).
///
/// Sizes grow steeply: over two atoms the cumulative counts by depth are
/// 2, 12, 302, 182712; over three atoms depth 2 already gives 1179.
pub fn enumerate_formulas(pool: &[Atom], max_depth: usize) -> Vec<Formula> {
    let mut cumulative: Vec<Formula> = pool.iter().cloned().map(Formula::Atom).collect();
    // Index into `cumulative` where the previous exact-depth level starts.
    let mut prev_start = 0;
    for _ in 1..=max_depth {
        let prev_end = cumulative.len();
        let mut level = Vec::new();
        for f in &cumulative[prev_start..prev_end] {
            level.push(Formula::neg(f.clone()));
        }
        for build in [Formula::and, Formula::or] {
            for (i, l) in cumulative[..prev_end].iter().enumerate() {
                for (j, r) in cumulative[..prev_end].iter().enumerate() {
                    // At least one argument must come from the deepest level,
                    // otherwise the result was already produced earlier.
                    if i >= prev_start || j >= prev_start {
                        level.push(build(l.clone(), r.clone()));
                    }
                }
            }
        }
        prev_start = prev_end;
        cumulative.append(&mut level);
    }
    cumulative
}
