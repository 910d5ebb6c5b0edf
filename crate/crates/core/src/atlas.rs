//! Words in standard generators and the almost simple sporadic structures.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! word    := factor+
//! factor  := primary ('^' exponent)*
//! primary := ident | '(' word ')' | '[' word ',' word ']' | '[' word ']'
//! exponent:= ['-'] digits | ident | '(' word ')' | '{' word '}' | '{' ['-'] digits '}'
//! ident   := letter ['_'] digits*
//! ```
//!
//! Identifiers are one letter with optional digits, so `cd` is `c·d` and
//! `t1t2` is `t1·t2`. An integer exponent is a power; any other exponent
//! conjugates: `u^v = v⁻¹uv`. `[u,v] = u⁻¹v⁻¹uv`. A bracket without a comma
//! is read according to [`BracketMode`].

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;

use crate::element::Element;
use crate::group::Group;
use crate::perm::Permutation;
use crate::structure::{BeauvilleStructure, StronglyRealWitness, StructureType};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AtlasError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unbound identifier '{0}'")]
    Unbound(String),
    #[error("elements of different kinds or degrees in one word")]
    KindMismatch,
    #[error("generator file: {0}")]
    Generators(String),
    #[error("no table row for group '{0}'")]
    UnknownGroup(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Word {
    Atom(String),
    Product(Vec<Word>),
    Power(Box<Word>, i64),
    Conjugate(Box<Word>, Box<Word>),
    Commutator(Box<Word>, Box<Word>),
}

/// How `[w]` without a comma is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BracketMode {
    /// `[uv…]` is the commutator `[u, v…]` of the first factor with the rest.
    #[default]
    Commutator,
    /// `[w]` is plain grouping, like `(w)`.
    Grouping,
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    mode: BracketMode,
    _text: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or_else(|| self._text.len(), |&(p, _)| p)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, AtlasError> {
        Err(AtlasError::Syntax { pos: self.pos(), message: message.into() })
    }

    fn expect(&mut self, c: char) -> Result<(), AtlasError> {
        if self.peek() == Some(c) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn word(&mut self) -> Result<Word, AtlasError> {
        let mut factors = Vec::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphabetic() || c == '(' || c == '[' {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        match factors.len() {
            0 => self.err("expected a word"),
            1 => Ok(factors.pop().unwrap()),
            _ => Ok(Word::Product(factors)),
        }
    }

    fn ident(&mut self) -> Result<String, AtlasError> {
        let Some(c) = self.peek().filter(char::is_ascii_alphabetic) else {
            return self.err("expected an identifier");
        };
        self.at += 1;
        let mut name = c.to_string();
        if self.peek() == Some('_') {
            self.at += 1;
            if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                return self.err("expected digits after '_'");
            }
        }
        while let Some(d) = self.peek().filter(char::is_ascii_digit) {
            name.push(d);
            self.at += 1;
        }
        Ok(name)
    }

    fn integer(&mut self) -> Result<Option<i64>, AtlasError> {
        let start = self.at;
        let neg = self.peek() == Some('-');
        if neg {
            self.at += 1;
        }
        let mut digits = String::new();
        while let Some(d) = self.peek().filter(char::is_ascii_digit) {
            digits.push(d);
            self.at += 1;
        }
        if digits.is_empty() {
            self.at = start;
            if neg {
                return self.err("expected digits after '-'");
            }
            return Ok(None);
        }
        let v: i64 =
            digits.parse().map_err(|_| AtlasError::Syntax { pos: self.pos(), message: "exponent too large".into() })?;
        Ok(Some(if neg { -v } else { v }))
    }

    fn primary(&mut self) -> Result<Word, AtlasError> {
        match self.peek() {
            Some('(') => {
                self.at += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.at += 1;
                let u = self.word()?;
                if self.peek() == Some(',') {
                    self.at += 1;
                    let v = self.word()?;
                    self.expect(']')?;
                    return Ok(Word::Commutator(Box::new(u), Box::new(v)));
                }
                self.expect(']')?;
                match (self.mode, u) {
                    (BracketMode::Commutator, Word::Product(mut fs)) => {
                        let first = fs.remove(0);
                        let rest = if fs.len() == 1 { fs.pop().unwrap() } else { Word::Product(fs) };
                        Ok(Word::Commutator(Box::new(first), Box::new(rest)))
                    }
                    (BracketMode::Commutator, _) => self.err("a bracket without a comma needs at least two factors"),
                    (BracketMode::Grouping, u) => Ok(u),
                }
            }
            Some(c) if c.is_ascii_alphabetic() => Ok(Word::Atom(self.ident()?)),
            _ => self.err("expected an identifier, '(' or '['"),
        }
    }

    fn factor(&mut self) -> Result<Word, AtlasError> {
        let mut w = self.primary()?;
        while self.peek() == Some('^') {
            self.at += 1;
            w = match self.peek() {
                Some('{') => {
                    self.at += 1;
                    let w2 = match self.integer()? {
                        Some(k) => Word::Power(Box::new(w), k),
                        None => Word::Conjugate(Box::new(w), Box::new(self.word()?)),
                    };
                    self.expect('}')?;
                    w2
                }
                Some('(') => {
                    self.at += 1;
                    let v = self.word()?;
                    self.expect(')')?;
                    Word::Conjugate(Box::new(w), Box::new(v))
                }
                Some(c) if c.is_ascii_alphabetic() => Word::Conjugate(Box::new(w), Box::new(Word::Atom(self.ident()?))),
                _ => match self.integer()? {
                    Some(k) => Word::Power(Box::new(w), k),
                    None => return self.err("expected an exponent"),
                },
            };
        }
        Ok(w)
    }
}

pub fn parse_word(text: &str) -> Result<Word, AtlasError> {
    parse_word_with(text, BracketMode::default())
}

pub fn parse_word_with(text: &str, mode: BracketMode) -> Result<Word, AtlasError> {
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut p = Parser { chars, at: 0, mode, _text: text };
    let w = p.word()?;
    if p.at != p.chars.len() {
        return p.err("unexpected character");
    }
    Ok(w)
}

impl Word {
    fn fmt_primary(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Atom(_) | Word::Commutator(..) => write!(f, "{self}"),
            _ => write!(f, "({self})"),
        }
    }

    pub fn evaluate(&self, env: &HashMap<String, Element>) -> Result<Element, AtlasError> {
        Ok(match self {
            Word::Atom(name) => env.get(name).cloned().ok_or_else(|| AtlasError::Unbound(name.clone()))?,
            Word::Product(fs) => {
                let mut it = fs.iter();
                let mut acc = it.next().expect("products are nonempty").evaluate(env)?;
                for f in it {
                    let v = f.evaluate(env)?;
                    if v.kind() != acc.kind() {
                        return Err(AtlasError::KindMismatch);
                    }
                    acc = acc.op(&v);
                }
                acc
            }
            Word::Power(w, k) => w.evaluate(env)?.pow(*k),
            Word::Conjugate(u, v) => {
                let (u, v) = (u.evaluate(env)?, v.evaluate(env)?);
                if u.kind() != v.kind() {
                    return Err(AtlasError::KindMismatch);
                }
                u.conjugate_by(&v)
            }
            Word::Commutator(u, v) => {
                let (u, v) = (u.evaluate(env)?, v.evaluate(env)?);
                if u.kind() != v.kind() {
                    return Err(AtlasError::KindMismatch);
                }
                u.inverse().op(&v.inverse()).op(&u).op(&v)
            }
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Atom(name) => write!(f, "{name}"),
            Word::Product(fs) => fs.iter().try_for_each(|w| match w {
                Word::Product(_) => write!(f, "({w})"),
                _ => write!(f, "{w}"),
            }),
            Word::Power(w, k) => {
                w.fmt_primary(f)?;
                write!(f, "^{k}")
            }
            Word::Conjugate(u, v) => {
                u.fmt_primary(f)?;
                write!(f, "^{{{v}}}")
            }
            Word::Commutator(u, v) => write!(f, "[{u},{v}]"),
        }
    }
}

/// Reads two permutations, one per line, in cycle notation or as image
/// lists. Blank lines and lines starting with `#` are skipped; an optional
/// first line `degree N` fixes the degree.
pub fn load_generators(text: &str) -> Result<(Permutation, Permutation), AtlasError> {
    let gen_err = |m: String| AtlasError::Generators(m);
    let mut lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    let mut degree = None;
    if let Some(rest) = lines.first().and_then(|l| l.strip_prefix("degree")) {
        let d: usize = rest.trim().parse().map_err(|_| gen_err(format!("bad degree line '{}'", lines[0])))?;
        if d == 0 {
            return Err(gen_err("degree must be positive".into()));
        }
        degree = Some(d);
        lines.remove(0);
    }
    if lines.len() != 2 {
        return Err(gen_err(format!("expected exactly two permutations, found {}", lines.len())));
    }
    let is_cycles = |l: &str| l.starts_with('(');
    let cycle_degree = |l: &str| -> usize {
        l.split(|c: char| !c.is_ascii_digit()).filter_map(|s| s.parse::<usize>().ok()).max().unwrap_or(1)
    };
    let degree = match degree {
        Some(d) => d,
        None => {
            let ds: Vec<usize> = lines
                .iter()
                .map(|l| if is_cycles(l) { cycle_degree(l) } else { l.split_whitespace().count() })
                .collect();
            let image_lists: Vec<usize> =
                lines.iter().zip(&ds).filter(|(l, _)| !is_cycles(l)).map(|(_, &d)| d).collect();
            match image_lists.as_slice() {
                [a, b] if a != b => return Err(gen_err(format!("image lists of lengths {a} and {b}"))),
                [a, ..] => *a,
                [] => ds.into_iter().max().unwrap(),
            }
        }
    };
    let parse = |l: &str, i: usize| -> Result<Permutation, AtlasError> {
        if is_cycles(l) {
            return Permutation::parse(l, degree).map_err(|e| gen_err(format!("line {}: {e}", i + 1)));
        }
        let p = Permutation::parse_image_list(l).map_err(|e| gen_err(format!("line {}: {e}", i + 1)))?;
        if p.degree() != degree {
            return Err(gen_err(format!("line {}: degree {} conflicts with degree {degree}", i + 1, p.degree())));
        }
        Ok(p)
    };
    Ok((parse(lines[0], 0)?, parse(lines[1], 1)?))
}

/// One row of the word table, joined with its type and the group order.
#[derive(Debug, Clone, Copy)]
pub struct TableRow {
    pub group: &'static str,
    pub t1: &'static str,
    pub t2: &'static str,
    pub x1: &'static str,
    pub x2: &'static str,
    pub u1: &'static str,
    pub u2: &'static str,
    pub j1: i64,
    pub j2: i64,
    pub expected: [[u64; 3]; 2],
    pub order: &'static str,
}

pub const TABLE: [TableRow; 12] = [
    TableRow {
        group: "M12:2",
        t1: "c",
        t2: "(cd)^6",
        x1: "t1t2",
        x2: "t1t2^d",
        u1: "[c,(dc)^2d^2]^3",
        u2: "(dc)^2d[c,(dc)^2d]^2",
        j1: 1,
        j2: 1,
        expected: [[4, 4, 5], [6, 6, 3]],
        order: "190080",
    },
    TableRow {
        group: "M22:2",
        t1: "((cd)^2d)^5",
        t2: "d^2",
        x1: "t1t2",
        x2: "t1t2^c",
        u1: "cd^2cd[t1,cd^2cd]^5",
        u2: "[t1,c]^2",
        j1: 5,
        j2: 9,
        expected: [[12, 12, 4], [10, 10, 5]],
        order: "887040",
    },
    TableRow {
        group: "J2:2",
        t1: "c",
        t2: "(cd^2(cd)^2)^6",
        x1: "t1t2",
        x2: "t1t2^{d^4}",
        u1: "d[c,d]^3",
        u2: "d[c,d]^3",
        j1: 1,
        j2: 9,
        expected: [[24, 24, 15], [14, 14, 7]],
        order: "1209600",
    },
    TableRow {
        group: "HS:2",
        t1: "c",
        t2: "((cd)^3cd^2)^5",
        x1: "t1t2",
        x2: "t1t2^d",
        u1: "d[c,d]",
        u2: "d[c,d]",
        j1: 1,
        j2: 1,
        expected: [[8, 8, 8], [6, 6, 15]],
        order: "88704000",
    },
    TableRow {
        group: "J3:2",
        t1: "c",
        t2: "(cd)^12",
        x1: "t1t2",
        x2: "t1t2^d",
        u1: "d[c,d]^4",
        u2: "d[c,d]^4",
        j1: 21,
        j2: 1,
        expected: [[34, 34, 17], [24, 24, 4]],
        order: "100465920",
    },
    TableRow {
        group: "McL:2",
        t1: "c",
        t2: "((cd)^2(cd^2)^2(cd)^2d)^2",
        x1: "t1t2",
        x2: "t1t2^{(dcd)^2}",
        u1: "d^2[c,d^2]^7",
        u2: "dcd[c,dcd]^7",
        j1: 1,
        j2: 7,
        expected: [[8, 8, 3], [10, 10, 5]],
        order: "1796256000",
    },
    TableRow {
        group: "He:2",
        t1: "c",
        t2: "d^3",
        x1: "t1t2",
        x2: "t1t2^{cd(cd^2)^2c}",
        u1: "d[c,d]^7",
        u2: "d[c,d]^7",
        j1: 15,
        j2: 19,
        expected: [[16, 16, 7], [30, 30, 5]],
        order: "8060774400",
    },
    TableRow {
        group: "Suz:2",
        t1: "c",
        t2: "(cd)^14",
        x1: "t1t2",
        x2: "t1t2^{(dc)^2(d^2c)^2d^2}",
        u1: "d[c,d]^3",
        u2: "d[c,d]^3",
        j1: 9,
        j2: 3,
        expected: [[10, 10, 3], [8, 8, 13]],
        order: "896690995200",
    },
    TableRow {
        group: "ON:2",
        t1: "c",
        t2: "d^2",
        x1: "t1t2",
        x2: "t1t2^{cd}",
        u1: "[c,d]^5",
        u2: "[c,d]^5",
        j1: 7,
        j2: 1,
        expected: [[38, 38, 19], [56, 56, 28]],
        order: "921631011840",
    },
    TableRow {
        group: "Fi22:2",
        t1: "(cd^4)^10",
        t2: "(cd^3)^15",
        x1: "t1t2^{dcd^6}",
        x2: "t1t2^{dcd}",
        u1: "[t1,d^3]^3",
        u2: "[t1,d]^3",
        j1: 3,
        j2: 1,
        expected: [[10, 10, 11], [12, 12, 4]],
        order: "129123503308800",
    },
    TableRow {
        group: "HN:2",
        t1: "c",
        t2: "(cd^3(cd)^2)^12",
        x1: "t1t2^{(dcd)^2d^2}",
        x2: "t1t2^{dcd^4cd^2}",
        u1: "d^2[cd^2]^10",
        u2: "d[c,d]^4",
        j1: 1,
        j2: 39,
        expected: [[18, 18, 25], [44, 44, 22]],
        order: "546061824000000",
    },
    TableRow {
        group: "Fi24",
        t1: "d^4",
        t2: "((cd)^2d^3)^33",
        x1: "t1t2^{d^4c}",
        x2: "t1t2^{dcd^2c}",
        u1: "c[t1,c]",
        u2: "c[t1,c]",
        j1: 7,
        j2: 25,
        expected: [[66, 66, 33], [84, 84, 26]],
        order: "2510411418381323442585600",
    },
];

impl TableRow {
    pub fn words(&self) -> [&'static str; 6] {
        [self.t1, self.t2, self.x1, self.x2, self.u1, self.u2]
    }

    /// True when some word reads differently under the two bracket modes.
    pub fn bracket_ambiguous(&self) -> bool {
        self.words()
            .iter()
            .any(|w| parse_word_with(w, BracketMode::Commutator).ok() != parse_word_with(w, BracketMode::Grouping).ok())
    }
}

/// Accepts `M12:2`, `M12.2`, `m12:2`, `O'N:2` and similar spellings.
pub fn table_row(name: &str) -> Result<&'static TableRow, AtlasError> {
    let key = |s: &str| s.to_ascii_lowercase().replace(['.', '\'', ' '], ":").replace("::", ":").replace(':', "");
    let k = key(name);
    TABLE.iter().find(|r| key(r.group) == k).ok_or_else(|| AtlasError::UnknownGroup(name.to_string()))
}

#[derive(Debug, Clone)]
pub struct AtlasOutcome {
    pub row: &'static TableRow,
    pub structure: BeauvilleStructure,
    pub witness: StronglyRealWitness,
    pub expected: StructureType,
    pub computed: StructureType,
    /// o(t₁) = 2 and o(t₂) = 2.
    pub involutions: [bool; 2],
    /// u_i commutes with t₁.
    pub centralizes: [bool; 2],
    pub mode: BracketMode,
}

impl AtlasOutcome {
    pub fn type_matches(&self) -> bool {
        self.expected == self.computed
    }

    /// Recipe checks and the type comparison, as readable lines.
    pub fn discrepancies(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, ok) in self.involutions.iter().enumerate() {
            if !ok {
                out.push(format!("t{} does not have order 2", i + 1));
            }
        }
        for (i, ok) in self.centralizes.iter().enumerate() {
            if !ok {
                out.push(format!("u{} does not commute with t1", i + 1));
            }
        }
        if !self.type_matches() {
            out.push(format!("type {} differs from the tabulated {}", self.computed, self.expected));
        }
        out
    }
}

/// Evaluates a table row on standard generators `c`, `d`. The group handle
/// is ⟨c,d⟩ with the tabulated order attached; the witness is conjugation by t₁.
pub fn table_structure(
    row: &'static TableRow,
    c: &Element,
    d: &Element,
    mode: BracketMode,
) -> Result<AtlasOutcome, AtlasError> {
    if c.kind() != d.kind() {
        return Err(AtlasError::KindMismatch);
    }
    let mut env: HashMap<String, Element> = HashMap::new();
    env.insert("c".into(), c.clone());
    env.insert("d".into(), d.clone());
    let eval = |w: &str, env: &HashMap<String, Element>| parse_word_with(w, mode)?.evaluate(env);
    let t1 = eval(row.t1, &env)?;
    env.insert("t1".into(), t1.clone());
    let t2 = eval(row.t2, &env)?;
    env.insert("t2".into(), t2.clone());
    let (x1, x2) = (eval(row.x1, &env)?, eval(row.x2, &env)?);
    let (u1, u2) = (eval(row.u1, &env)?, eval(row.u2, &env)?);
    let y1 = x1.pow(row.j1).conjugate_by(&u1);
    let y2 = x2.pow(row.j2).conjugate_by(&u2);
    let order: BigUint = row.order.parse().expect("tabulated orders are integers");
    let group = Group::new(vec![c.clone(), d.clone()])
        .map_err(|_| AtlasError::KindMismatch)?
        .with_expected_order(order)
        .with_name(row.group);
    let structure = BeauvilleStructure::new(group, (x1, y1), (x2, y2));
    let computed = structure.structure_type();
    Ok(AtlasOutcome {
        row,
        witness: StronglyRealWitness::conjugation(t1.clone()),
        expected: StructureType(row.expected),
        computed,
        involutions: [t1.order() == 2, t2.order() == 2],
        centralizes: [u1.commutes_with(&t1), u2.commutes_with(&t1)],
        structure,
        mode,
    })
}
