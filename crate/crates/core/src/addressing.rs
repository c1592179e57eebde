//! Vertex addresses of the perfect d-ary tree, the eating order and the
//! cyclic `±a` arithmetic within a level.
//!
//! An address is a digit string over `1..=d`; the empty string is the root.
//! The eating order is the reverse of the lexicographic order in which a
//! shorter string is padded with `0` digits. Equivalently, vertices are eaten
//! in reverse preorder (children visited `1..=d`), so every subtree occupies a
//! contiguous range of eating positions that ends at its root.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Branching factor of the underlying perfect tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arity(u8);

impl Arity {
    pub const BINARY: Arity = Arity(2);
    pub const TERNARY: Arity = Arity(3);

    pub fn new(d: u32) -> Result<Self> {
        if !(2..=9).contains(&d) {
            return Err(Error::InvalidArgument(format!("arity must be in 2..=9, got {d}")));
        }
        Ok(Arity(d as u8))
    }

    #[inline]
    pub fn get(self) -> u32 {
        u32::from(self.0)
    }

    #[inline]
    pub fn as_u64(self) -> u64 {
        u64::from(self.0)
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Number of vertices of the perfect d-ary tree of height `h`:
/// `(d^(h+1) - 1) / (d - 1)`. Height `-1` (the empty tree) is not represented;
/// callers use `0` vertices for it explicitly.
pub fn tree_size(h: u32, d: Arity) -> u64 {
    let d = d.as_u64();
    let mut total = 0u64;
    let mut level = 1u64;
    for _ in 0..=h {
        total += level;
        level *= d;
    }
    total
}

/// Number of vertices on level `level` (`d^level`).
pub fn level_width(level: u32, d: Arity) -> u64 {
    d.as_u64().pow(level)
}

/// A vertex of `V_{h,d}`, stored as its digit string.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Address {
    digits: Vec<u8>,
}

impl Address {
    pub fn root() -> Self {
        Address { digits: Vec::new() }
    }

    /// Builds an address from digits, checking the range `1..=d`.
    pub fn from_digits(digits: &[u8], d: Arity) -> Result<Self> {
        if let Some(&bad) = digits.iter().find(|&&x| x == 0 || u32::from(x) > d.get()) {
            return Err(Error::InvalidArgument(format!("digit {bad} outside 1..={d}")));
        }
        Ok(Address { digits: digits.to_vec() })
    }

    /// Parses the textual form: `e` for the root, otherwise a digit string.
    pub fn parse(s: &str, d: Arity) -> Result<Self> {
        let s = s.trim();
        if s == "e" {
            return Ok(Self::root());
        }
        let digits: Option<Vec<u8>> = s
            .chars()
            .map(|c| c.to_digit(10).map(|x| x as u8))
            .collect();
        match digits {
            Some(ds) if !ds.is_empty() => Self::from_digits(&ds, d),
            _ => Err(Error::Parse { line: 0, message: format!("bad address {s:?}") }),
        }
    }

    #[inline]
    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    #[inline]
    pub fn level(&self) -> u32 {
        self.digits.len() as u32
    }

    pub fn is_root(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn child(&self, digit: u8) -> Address {
        let mut digits = Vec::with_capacity(self.digits.len() + 1);
        digits.extend_from_slice(&self.digits);
        digits.push(digit);
        Address { digits }
    }

    pub fn parent(&self) -> Option<Address> {
        if self.digits.is_empty() {
            None
        } else {
            Some(Address { digits: self.digits[..self.digits.len() - 1].to_vec() })
        }
    }

    /// `true` when `self` is a strict prefix of `other`.
    pub fn is_ancestor_of(&self, other: &Address) -> bool {
        self.digits.len() < other.digits.len() && other.digits.starts_with(&self.digits)
    }

    /// Truncation to the first `level` digits.
    pub fn prefix(&self, level: u32) -> Address {
        Address { digits: self.digits[..level as usize].to_vec() }
    }

    /// Lexicographic rank within the level: the base-d value of `digits - 1`.
    pub fn rank_in_level(&self, d: Arity) -> u64 {
        self.digits
            .iter()
            .fold(0u64, |acc, &x| acc * d.as_u64() + u64::from(x - 1))
    }

    /// Inverse of [`Address::rank_in_level`].
    pub fn from_rank(level: u32, rank: u64, d: Arity) -> Address {
        let mut digits = vec![0u8; level as usize];
        let mut r = rank;
        for slot in digits.iter_mut().rev() {
            *slot = (r % d.as_u64()) as u8 + 1;
            r /= d.as_u64();
        }
        Address { digits }
    }

    /// The `a`-th cyclic successor (`a > 0`) or predecessor (`a < 0`) within
    /// the level. The root level has a single element, so the root is fixed.
    pub fn shift(&self, a: i64, d: Arity) -> Address {
        let width = level_width(self.level(), d) as i128;
        let rank = self.rank_in_level(d) as i128;
        let moved = (rank + i128::from(a)).rem_euclid(width);
        Address::from_rank(self.level(), moved as u64, d)
    }

    /// 0-based preorder rank inside `T_{h,d}` (children visited `1..=d`).
    /// This is the lexicographic rank with zero padding.
    pub fn preorder_rank(&self, d: Arity, h: u32) -> u64 {
        let mut rank = 0u64;
        for (depth, &x) in self.digits.iter().enumerate() {
            let below = tree_size(h - depth as u32 - 1, d);
            rank += 1 + u64::from(x - 1) * below;
        }
        rank
    }

    /// Inverse of [`Address::preorder_rank`].
    pub fn from_preorder_rank(mut rank: u64, d: Arity, h: u32) -> Address {
        let mut digits = Vec::new();
        let mut height = h;
        while rank > 0 {
            rank -= 1;
            let below = tree_size(height - 1, d);
            let digit = rank / below;
            digits.push(digit as u8 + 1);
            rank -= digit * below;
            height -= 1;
        }
        Address { digits }
    }

    pub fn children(&self, d: Arity, h: u32) -> Vec<Address> {
        if self.level() >= h {
            return Vec::new();
        }
        (1..=d.get() as u8).map(|x| self.child(x)).collect()
    }

    /// All strict descendants inside `V_{h,d}`, in preorder.
    pub fn descendants(&self, d: Arity, h: u32) -> Vec<Address> {
        let mut out = Vec::new();
        let mut stack: Vec<Address> = self.children(d, h).into_iter().rev().collect();
        while let Some(v) = stack.pop() {
            stack.extend(v.children(d, h).into_iter().rev());
            out.push(v);
        }
        out
    }

    pub fn is_valid(&self, d: Arity, h: u32) -> bool {
        self.level() <= h && self.digits.iter().all(|&x| x >= 1 && u32::from(x) <= d.get())
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            return f.write_str("e");
        }
        for &x in &self.digits {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Address({self})")
    }
}

/// 1-based position in the eating order of a fixed `T*_{h,d}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EatIndex(pub u64);

/// Relative eating order of two addresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EatOrder {
    Before,
    Equal,
    After,
}

/// Compares two addresses in the eating order: `x` is eaten before `y` iff
/// `x` is lexicographically larger once both are right-padded with `0`.
pub fn eat_cmp(x: &Address, y: &Address) -> EatOrder {
    let len = x.digits.len().max(y.digits.len());
    let pad = |a: &Address, i: usize| a.digits.get(i).copied().unwrap_or(0);
    for i in 0..len {
        match pad(x, i).cmp(&pad(y, i)) {
            Ordering::Greater => return EatOrder::Before,
            Ordering::Less => return EatOrder::After,
            Ordering::Equal => {}
        }
    }
    EatOrder::Equal
}

/// Eating position of `v` in `T*_{h,d}`.
pub fn eat_index(v: &Address, d: Arity, h: u32) -> EatIndex {
    EatIndex(tree_size(h, d) - v.preorder_rank(d, h))
}

/// The vertex at eating position `p`.
pub fn eat_at(p: EatIndex, d: Arity, h: u32) -> Result<Address> {
    let total = tree_size(h, d);
    if p.0 == 0 || p.0 > total {
        return Err(Error::IndexOutOfRange { index: p.0, len: total });
    }
    Ok(Address::from_preorder_rank(total - p.0, d, h))
}
