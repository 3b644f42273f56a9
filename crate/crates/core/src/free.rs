//! The free quandle on a generating set.
//!
//! Elements are pairs `(a, w)` of a generator `a` and a free-group word `w`,
//! taken modulo absorption of leading powers of `a` into the base. The pair
//! stands for the conjugate `w⁻¹ a w`, so the two operations are
//!
//! ```text
//! (a, w) ▷ (b, z) = (a, w z⁻¹ b z)       (a, w) ◁ (b, z) = (a, w z⁻¹ b⁻¹ z)
//! ```
//!
//! Canonical form: the tail is freely reduced and does not begin with a
//! power of the base generator. Two elements are equal in the free quandle
//! iff their canonical forms are structurally equal.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quandle::FiniteQuandle;

/// A generator name: nonempty, over `[A-Za-z0-9_]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(String);

impl Symbol {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || !name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_') {
            return Err(Error::InvalidSymbol(name));
        }
        Ok(Symbol(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Symbol({})", self.0)
    }
}

impl FromStr for Symbol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Symbol::new(s)
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        Symbol::new(raw).map_err(D::Error::custom)
    }
}

/// One letter of a free-group word: a generator to the power ±1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub sym: Symbol,
    pub inverse: bool,
}

impl Letter {
    pub fn new(sym: Symbol, inverse: bool) -> Self {
        Letter { sym, inverse }
    }

    pub fn inverted(&self) -> Self {
        Letter {
            sym: self.sym.clone(),
            inverse: !self.inverse,
        }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.sym == other.sym && self.inverse != other.inverse
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.sym.as_str(), if self.inverse { -1i8 } else { 1i8 }).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (name, exp): (String, i8) = Deserialize::deserialize(d)?;
        let sym = Symbol::new(name).map_err(D::Error::custom)?;
        match exp {
            1 => Ok(Letter::new(sym, false)),
            -1 => Ok(Letter::new(sym, true)),
            other => Err(D::Error::custom(format!(
                "letter exponent must be 1 or -1, got {other}"
            ))),
        }
    }
}

/// A freely reduced word in the free group on symbols.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord(Vec::new())
    }

    /// Builds a word from letters, cancelling adjacent inverse pairs.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut word = FreeWord::empty();
        for l in letters {
            word.push(l);
        }
        word
    }

    /// Appends a letter, cancelling against the current last letter.
    pub fn push(&mut self, letter: Letter) {
        match self.0.last() {
            Some(last) if last.cancels(&letter) => {
                self.0.pop();
            }
            _ => self.0.push(letter),
        }
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        for l in &other.0 {
            out.push(l.clone());
        }
        out
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(Letter::inverted).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }
}

impl Serialize for FreeWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FreeWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let letters: Vec<Letter> = Deserialize::deserialize(d)?;
        Ok(FreeWord::from_letters(letters))
    }
}

/// A free quandle element in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FreeQuandleElement {
    base: Symbol,
    tail: FreeWord,
}

impl FreeQuandleElement {
    /// Canonicalizes `(base, word)`: freely reduces the word, then strips
    /// every leading power of `base`. Two inputs related by the absorption
    /// relation normalize identically.
    pub fn new(base: Symbol, word: FreeWord) -> Self {
        let strip = word
            .letters()
            .iter()
            .take_while(|l| l.sym == base)
            .count();
        let tail = FreeWord(word.letters()[strip..].to_vec());
        FreeQuandleElement { base, tail }
    }

    /// The element `(g, 1)` — the image of a generator.
    pub fn generator(base: Symbol) -> Self {
        FreeQuandleElement {
            base,
            tail: FreeWord::empty(),
        }
    }

    pub fn base(&self) -> &Symbol {
        &self.base
    }

    pub fn tail(&self) -> &FreeWord {
        &self.tail
    }

    pub fn is_bare_generator(&self) -> bool {
        self.tail.is_empty()
    }

    /// `x ▷ y`.
    pub fn op(&self, other: &FreeQuandleElement) -> FreeQuandleElement {
        self.conjugated(other, false)
    }

    /// `x ◁ y`.
    pub fn inv_op(&self, other: &FreeQuandleElement) -> FreeQuandleElement {
        self.conjugated(other, true)
    }

    fn conjugated(&self, other: &FreeQuandleElement, inverse: bool) -> FreeQuandleElement {
        // (a, w) ▷/◁ (b, z) = (a, w · z⁻¹ b^{±1} z)
        let mut word = self.tail.concat(&other.tail.inverse());
        word.push(Letter::new(other.base.clone(), inverse));
        for l in other.tail.letters() {
            word.push(l.clone());
        }
        FreeQuandleElement::new(self.base.clone(), word)
    }

    /// All symbols occurring in this element (base and tail letters).
    pub fn symbols(&self) -> BTreeSet<&Symbol> {
        let mut set: BTreeSet<&Symbol> = self.tail.letters().iter().map(|l| &l.sym).collect();
        set.insert(&self.base);
        set
    }

    pub fn contains(&self, sym: &Symbol) -> bool {
        self.base == *sym || self.tail.letters().iter().any(|l| l.sym == *sym)
    }

    /// Replaces every occurrence of `g` by `value`. A base occurrence
    /// `(g, w)` becomes `(value.base, value.tail · w')`; a letter `g^±1`
    /// becomes the word `value.tail⁻¹ value.base^±1 value.tail`.
    pub fn substituted(
        &self,
        g: &Symbol,
        value: &FreeQuandleElement,
    ) -> FreeQuandleElement {
        let mut word = FreeWord::empty();
        let rewrite = |word: &mut FreeWord, l: &Letter| {
            if l.sym == *g {
                for vl in value.tail.inverse().letters() {
                    word.push(vl.clone());
                }
                word.push(Letter::new(value.base.clone(), l.inverse));
                for vl in value.tail.letters() {
                    word.push(vl.clone());
                }
            } else {
                word.push(l.clone());
            }
        };
        if self.base == *g {
            for vl in value.tail.letters() {
                word.push(vl.clone());
            }
            for l in self.tail.letters() {
                rewrite(&mut word, l);
            }
            FreeQuandleElement::new(value.base.clone(), word)
        } else {
            for l in self.tail.letters() {
                rewrite(&mut word, l);
            }
            FreeQuandleElement::new(self.base.clone(), word)
        }
    }

    /// Evaluates under an assignment of generators to elements of a finite
    /// quandle: start at the image of the base, then apply ▷ (plain letter)
    /// or ◁ (inverted letter) left to right along the tail.
    pub fn evaluate<F>(&self, target: &FiniteQuandle, assign: F) -> Result<usize>
    where
        F: Fn(&Symbol) -> Option<usize>,
    {
        let lookup = |sym: &Symbol| {
            assign(sym).ok_or_else(|| Error::UnboundGenerator(sym.to_string()))
        };
        let mut acc = lookup(&self.base)?;
        for l in self.tail.letters() {
            let v = lookup(&l.sym)?;
            acc = if l.inverse {
                target.inv_op(acc, v)
            } else {
                target.op(acc, v)
            };
        }
        Ok(acc)
    }
}

impl fmt::Display for FreeQuandleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        if !self.tail.is_empty() {
            write!(f, " ^")?;
            for l in self.tail.letters() {
                write!(f, " {}{}", l.sym, if l.inverse { "'" } else { "" })?;
            }
        }
        Ok(())
    }
}

/// Parses the textual element syntax `base ^ l1 l2' ...` where a trailing
/// apostrophe marks an inverted letter. A bare `base` has an empty tail.
impl FromStr for FreeQuandleElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |msg: &str| Error::Domain(format!("bad element {s:?}: {msg}"));
        let mut parts = s.splitn(2, '^');
        let base_txt = parts.next().unwrap_or("").trim();
        if base_txt.is_empty() {
            return Err(err("missing base generator"));
        }
        let base = Symbol::new(base_txt)?;
        let mut word = FreeWord::empty();
        if let Some(tail_txt) = parts.next() {
            for tok in tail_txt.split_whitespace() {
                let (name, inverse) = match tok.strip_suffix('\'') {
                    Some(name) => (name, true),
                    None => (tok, false),
                };
                word.push(Letter::new(Symbol::new(name)?, inverse));
            }
        }
        Ok(FreeQuandleElement::new(base, word))
    }
}

impl Serialize for FreeQuandleElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            base: &'a Symbol,
            word: &'a FreeWord,
        }
        Repr {
            base: &self.base,
            word: &self.tail,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FreeQuandleElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Full { base: Symbol, word: FreeWord },
        }
        match Repr::deserialize(d)? {
            Repr::Text(t) => t.parse().map_err(D::Error::custom),
            Repr::Full { base, word } => Ok(FreeQuandleElement::new(base, word)),
        }
    }
}
