//! Sparse rational linear combinations of boxes, and small sparse tensors.
//!
//! Zero coefficients are never stored, so equality is support-wise exact.

use crate::rational::{show_rat, Rat};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<u32, Rat>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn basis(a: u32) -> Element {
        let mut e = Element::default();
        e.add_term(a, Rat::from_integer(1.into()));
        e
    }

    pub fn scaled_basis(a: u32, c: Rat) -> Element {
        let mut e = Element::default();
        e.add_term(a, c);
        e
    }

    pub fn add_term(&mut self, a: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(a).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&a);
        }
    }

    pub fn add(&mut self, other: &Element) {
        for (a, c) in &other.terms {
            self.add_term(*a, c.clone());
        }
    }

    pub fn sub(&mut self, other: &Element) {
        for (a, c) in &other.terms {
            self.add_term(*a, -c.clone());
        }
    }

    pub fn scale(&mut self, c: &Rat) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= c.clone();
        }
    }

    pub fn scaled(&self, c: &Rat) -> Element {
        let mut e = self.clone();
        e.scale(c);
        e
    }

    pub fn coeff(&self, a: u32) -> Rat {
        self.terms.get(&a).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Rat)> {
        self.terms.iter().map(|(a, c)| (*a, c))
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.keys().copied()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, c)| format!("{}*b{}", show_rat(c), a))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sparse element of the two-fold tensor square over the box basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor2 {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl Tensor2 {
    pub fn zero() -> Tensor2 {
        Tensor2::default()
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((a, b)).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn add(&mut self, other: &Tensor2) {
        for ((a, b), c) in &other.terms {
            self.add_term(*a, *b, c.clone());
        }
    }

    pub fn sub(&mut self, other: &Tensor2) {
        for ((a, b), c) in &other.terms {
            self.add_term(*a, *b, -c.clone());
        }
    }

    pub fn scale(&mut self, c: &Rat) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= c.clone();
        }
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rat {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), &Rat)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn from_pair(x: &Element, y: &Element) -> Tensor2 {
        let mut t = Tensor2::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                t.add_term(a, b, ca.clone() * cb.clone());
            }
        }
        t
    }
}

impl fmt::Display for Tensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| format!("{}*b{}(x)b{}", show_rat(c), a, b))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sparse element of the three-fold tensor power.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor3 {
    terms: BTreeMap<(u32, u32, u32), Rat>,
}

impl Tensor3 {
    pub fn zero() -> Tensor3 {
        Tensor3::default()
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: u32, v: Rat) {
        if v.is_zero() {
            return;
        }
        let entry = self.terms.entry((a, b, c)).or_insert_with(Rat::zero);
        *entry += v;
        if entry.is_zero() {
            self.terms.remove(&(a, b, c));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32, u32), &Rat)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn sub(&mut self, other: &Tensor3) {
        for ((a, b, c), v) in &other.terms {
            self.add_term(*a, *b, *c, -v.clone());
        }
    }
}

impl fmt::Display for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b, c), v)| format!("{}*b{}(x)b{}(x)b{}", show_rat(v), a, b, c))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
