//! Characters and virtual representations of a split torus.
//!
//! A [`Character`] is a Laurent monomial `λ_0^{p_0} ⋯ λ_n^{p_n}` stored as its
//! exponent vector. A [`VirtualRep`] is a formal integer combination of
//! characters, i.e. an element of the representation ring. Picking a
//! one-parameter subgroup ([`WeightVector`]) turns characters into integer
//! weights, and an honest representation into a [`WeightMultiset`] from which
//! Chern and Segre data at a fixpoint are read off.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

type Exponents = SmallVec<[i32; 10]>;

/// A one-dimensional representation, written as a Laurent monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character(Exponents);

impl Character {
    pub fn new(exponents: &[i32]) -> Self {
        Character(SmallVec::from_slice(exponents))
    }

    /// The trivial character on `var_count` variables.
    pub fn trivial(var_count: usize) -> Self {
        Character(SmallVec::from_elem(0, var_count))
    }

    /// The coordinate character `λ_index`.
    pub fn var(var_count: usize, index: usize) -> Self {
        let mut c = Self::trivial(var_count);
        c.0[index] = 1;
        c
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn var_count(&self) -> usize {
        self.0.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&p| p == 0)
    }

    pub fn mul(&self, other: &Character) -> Character {
        debug_assert_eq!(self.0.len(), other.0.len());
        Character(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn dual(&self) -> Character {
        Character(self.0.iter().map(|p| -p).collect())
    }

    pub fn pow(&self, k: i32) -> Character {
        Character(self.0.iter().map(|p| p * k).collect())
    }

    /// `Σ p_i w_i`.
    pub fn weight(&self, w: &WeightVector) -> i64 {
        debug_assert_eq!(self.0.len(), w.len());
        self.0
            .iter()
            .zip(w.as_slice())
            .map(|(&p, &wi)| p as i64 * wi)
            .sum()
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &p) in self.0.iter().enumerate() {
            if p == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if p == 1 {
                write!(f, "l{i}")?;
            } else {
                write!(f, "l{i}^{p}")?;
            }
        }
        Ok(())
    }
}

/// A formal integer combination of characters. Zero multiplicities are never
/// stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct VirtualRep {
    terms: BTreeMap<Character, i64>,
}

impl VirtualRep {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(var_count: usize) -> Self {
        Self::from_character(Character::trivial(var_count))
    }

    pub fn from_character(c: Character) -> Self {
        let mut rep = Self::zero();
        rep.add_term(c, 1);
        rep
    }

    pub fn from_characters<I: IntoIterator<Item = Character>>(chars: I) -> Self {
        let mut rep = Self::zero();
        for c in chars {
            rep.add_term(c, 1);
        }
        rep
    }

    /// Adds `mult · c`, dropping the entry if it cancels.
    pub fn add_term(&mut self, c: Character, mult: i64) {
        if mult == 0 {
            return;
        }
        match self.terms.entry(c) {
            Entry::Vacant(e) => {
                e.insert(mult);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += mult;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    /// Accumulates `coeff · a · b` into `self` without building the product.
    pub fn add_product(&mut self, a: &VirtualRep, b: &VirtualRep, coeff: i64) {
        for (ca, &ma) in &a.terms {
            for (cb, &mb) in &b.terms {
                self.add_term(ca.mul(cb), coeff * ma * mb);
            }
        }
    }

    pub fn add(&self, other: &VirtualRep) -> VirtualRep {
        let mut out = self.clone();
        for (c, &m) in &other.terms {
            out.add_term(c.clone(), m);
        }
        out
    }

    pub fn sub(&self, other: &VirtualRep) -> VirtualRep {
        let mut out = self.clone();
        for (c, &m) in &other.terms {
            out.add_term(c.clone(), -m);
        }
        out
    }

    pub fn mul(&self, other: &VirtualRep) -> VirtualRep {
        let mut out = VirtualRep::zero();
        out.add_product(self, other, 1);
        out
    }

    pub fn scale(&self, k: i64) -> VirtualRep {
        let mut out = VirtualRep::zero();
        for (c, &m) in &self.terms {
            out.add_term(c.clone(), k * m);
        }
        out
    }

    pub fn dual(&self) -> VirtualRep {
        VirtualRep {
            terms: self.terms.iter().map(|(c, &m)| (c.dual(), m)).collect(),
        }
    }

    /// `Hom(self, target) = self^∨ · target`.
    pub fn hom(&self, target: &VirtualRep) -> VirtualRep {
        self.dual().mul(target)
    }

    /// Applies `f` to every character, e.g. to relabel variables.
    pub fn map_characters<F: Fn(&Character) -> Character>(&self, f: F) -> VirtualRep {
        let mut out = VirtualRep::zero();
        for (c, &m) in &self.terms {
            out.add_term(f(c), m);
        }
        out
    }

    pub fn dimension(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn multiplicity(&self, c: &Character) -> i64 {
        self.terms.get(c).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct characters.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_honest(&self) -> bool {
        self.terms.values().all(|&m| m > 0)
    }

    pub fn has_trivial_character(&self) -> bool {
        self.terms.keys().any(Character::is_trivial)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Character, i64)> {
        self.terms.iter().map(|(c, &m)| (c, m))
    }
}

impl fmt::Debug for VirtualRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VirtualRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, &m)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m != 1 {
                write!(f, "{m}*")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Which ring operation [`rep_combine`] applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepOp {
    Add,
    Subtract,
    Multiply,
}

pub fn rep_combine(a: &VirtualRep, b: &VirtualRep, op: RepOp) -> VirtualRep {
    match op {
        RepOp::Add => a.add(b),
        RepOp::Subtract => a.sub(b),
        RepOp::Multiply => a.mul(b),
    }
}

pub fn rep_hom(a: &VirtualRep, b: &VirtualRep) -> VirtualRep {
    a.hom(b)
}

/// Integer weight of each torus variable under a one-parameter subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(weights: Vec<i64>) -> Self {
        WeightVector(weights)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<i64>> for WeightVector {
    fn from(v: Vec<i64>) -> Self {
        WeightVector(v)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Weights of an honest representation, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightMultiset(Vec<i64>);

impl WeightMultiset {
    pub fn new(mut weights: Vec<i64>) -> Self {
        weights.sort_unstable();
        WeightMultiset(weights)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains_zero(&self) -> bool {
        self.0.binary_search(&0).is_ok()
    }

    pub fn product(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &w| acc * w)
    }
}

/// Specializes an honest representation to the multiset of its weights.
pub fn specialize(rep: &VirtualRep, w: &WeightVector) -> Result<WeightMultiset> {
    let mut out = Vec::with_capacity(rep.dimension().max(0) as usize);
    for (c, m) in rep.iter() {
        if m < 0 {
            return Err(Error::NegativeMultiplicity {
                character: c.to_string(),
                multiplicity: m,
            });
        }
        let wt = c.weight(w);
        out.extend(std::iter::repeat_n(wt, m as usize));
    }
    Ok(WeightMultiset::new(out))
}

/// All elementary symmetric functions `σ_0, …, σ_len` of the multiset.
pub fn elementary_symmetric_all(ws: &WeightMultiset) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); ws.len() + 1];
    e[0] = BigInt::one();
    for (i, &w) in ws.as_slice().iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let t = &e[k - 1] * w;
            e[k] += t;
        }
    }
    e
}

/// `σ_k` of the multiset; zero for `k` beyond its size.
pub fn elementary_symmetric(ws: &WeightMultiset, k: usize) -> BigInt {
    if k > ws.len() {
        return BigInt::zero();
    }
    if k == ws.len() {
        return ws.product();
    }
    elementary_symmetric_all(ws).swap_remove(k)
}

/// Coefficients `s_0..=s_up_to` of `Π_i (1 + τ_i z)^{-1}`.
pub fn segre_coefficients(ws: &WeightMultiset, up_to: usize) -> Vec<BigInt> {
    // Multiply geometric series one weight at a time: s ← s · (1 + τz)^{-1},
    // i.e. s_k ← s_k − τ s_{k-1} in increasing k.
    let mut s = vec![BigInt::zero(); up_to + 1];
    s[0] = BigInt::one();
    for &t in ws.as_slice() {
        for k in 1..=up_to {
            let prev = &s[k - 1] * t;
            s[k] -= prev;
        }
    }
    s
}

/// Tensoring with a character of weight `t`.
pub fn twist(ws: &WeightMultiset, t: i64) -> WeightMultiset {
    WeightMultiset(ws.0.iter().map(|&w| w + t).collect())
}
