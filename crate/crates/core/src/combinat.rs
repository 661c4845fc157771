//! Subsets of `[r]`, tuples of subsets, partitions and the symmetric-group
//! action on tuples.
//!
//! A subset `J ⊂ [r]` of size `d` is identified with the strictly increasing
//! map `[d] → [r]`; all positions are 1-based. The canonical encoding is a
//! bit-mask with bit `j - 1` set iff `j ∈ J`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{HornError, Result};

/// Largest ambient size supported by the 64-bit mask encoding.
pub const MAX_AMBIENT: u32 = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset {
    mask: u64,
    ambient: u32,
}

impl Subset {
    pub fn new(ambient: u32, elements: &[u32]) -> Result<Self> {
        if ambient == 0 || ambient > MAX_AMBIENT {
            return Err(HornError::InvalidSubset(format!(
                "ambient {ambient} outside 1..={MAX_AMBIENT}"
            )));
        }
        if elements.is_empty() {
            return Err(HornError::InvalidSubset("empty subset".into()));
        }
        let mut mask = 0u64;
        let mut prev = 0u32;
        for &e in elements {
            if e <= prev || e > ambient {
                return Err(HornError::InvalidSubset(format!(
                    "{elements:?} is not strictly increasing inside [1..{ambient}]"
                )));
            }
            mask |= 1 << (e - 1);
            prev = e;
        }
        Ok(Subset { mask, ambient })
    }

    pub fn from_mask(ambient: u32, mask: u64) -> Result<Self> {
        if ambient == 0 || ambient > MAX_AMBIENT {
            return Err(HornError::InvalidSubset(format!(
                "ambient {ambient} outside 1..={MAX_AMBIENT}"
            )));
        }
        if mask == 0 || (ambient < 64 && mask >> ambient != 0) {
            return Err(HornError::InvalidSubset(format!(
                "mask {mask:#b} does not describe a nonempty subset of [1..{ambient}]"
            )));
        }
        Ok(Subset { mask, ambient })
    }

    /// The full subset `[n] ⊂ [n]`.
    pub fn full(n: u32) -> Self {
        assert!((1..=MAX_AMBIENT).contains(&n));
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Subset { mask, ambient: n }
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.mask
    }

    #[inline]
    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    #[inline]
    pub fn size(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn contains(&self, j: u32) -> bool {
        j >= 1 && j <= self.ambient && self.mask >> (j - 1) & 1 == 1
    }

    pub fn iter(&self) -> SubsetIter {
        SubsetIter { rest: self.mask }
    }

    pub fn elements(&self) -> Vec<u32> {
        self.iter().collect()
    }

    /// `J(k)` for `k ∈ [d]`.
    pub fn at(&self, k: u32) -> u32 {
        assert!(k >= 1 && k <= self.size(), "index {k} out of range for {self}");
        self.iter().nth(k as usize - 1).unwrap()
    }

    pub fn is_full(&self) -> bool {
        self.size() == self.ambient
    }

    /// All subsets of size `d` of `[r]`, in increasing mask order.
    pub fn all(d: u32, r: u32) -> Vec<Subset> {
        assert!(d >= 1 && d <= r && r <= MAX_AMBIENT);
        let mut out = Vec::new();
        let limit: u128 = 1u128 << r;
        let mut mask: u64 = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
        loop {
            out.push(Subset { mask, ambient: r });
            // Gosper's hack: next integer with the same popcount.
            let c = mask & mask.wrapping_neg();
            let ripple = mask as u128 + c as u128;
            if ripple >= limit {
                break;
            }
            let ripple = ripple as u64;
            mask = (((ripple ^ mask) >> 2) / c) | ripple;
        }
        out
    }

    /// Composition of maps `self ∘ inner`: `(IJ)(k) = I(J(k))`.
    pub fn compose(&self, inner: &Subset) -> Result<Subset> {
        if inner.ambient != self.size() {
            return Err(HornError::CompositionError(format!(
                "inner subset {inner} lives in [{}] but outer {self} has size {}",
                inner.ambient,
                self.size()
            )));
        }
        let outer = self.elements();
        let mut mask = 0u64;
        for j in inner.iter() {
            mask |= 1 << (outer[j as usize - 1] - 1);
        }
        Ok(Subset {
            mask,
            ambient: self.ambient,
        })
    }

    /// `I^J = { (IJ)(k) − J(k) + k }`, a subset of `[n − r + d]` where
    /// `n = ambient(I)`, `r = |I|` and `d = |J|`.
    pub fn quotient_position(&self, inner: &Subset) -> Result<Subset> {
        let composed = self.compose(inner)?;
        let ambient = self.ambient - self.size() + inner.size();
        let mut elements = Vec::with_capacity(inner.size() as usize);
        for (k, (ij, j)) in composed.iter().zip(inner.iter()).enumerate() {
            elements.push(ij - j + k as u32 + 1);
        }
        Subset::new(ambient, &elements)
    }

    /// Lexicographic comparison of the element sequences (`{1,5} < {2,3}`).
    pub fn cmp_lex(&self, other: &Subset) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: ambient, then bit-mask.
impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, self.mask).cmp(&(other.ambient, other.mask))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}⊂[{}]", self.ambient)
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.size() as usize))?;
        for e in self.iter() {
            seq.serialize_element(&e)?;
        }
        seq.end()
    }
}

pub struct SubsetIter {
    rest: u64,
}

impl Iterator for SubsetIter {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.rest == 0 {
            return None;
        }
        let tz = self.rest.trailing_zeros();
        self.rest &= self.rest - 1;
        Some(tz + 1)
    }
}

/// A weakly decreasing sequence of nonnegative integers.
///
/// Trailing zeros are kept as given but ignored by equality and hashing, so
/// `(3,0,0) == (3)`.
#[derive(Clone, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(HornError::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// All parts, trailing zeros included.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Parts with trailing zeros removed.
    pub fn nonzero(&self) -> &[u32] {
        let len = self.parts.iter().rposition(|&p| p > 0).map_or(0, |i| i + 1);
        &self.parts[..len]
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of nonzero rows.
    pub fn length(&self) -> usize {
        self.nonzero().len()
    }

    pub fn row(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn fits_box(&self, rows: usize, cols: u32) -> bool {
        self.length() <= rows && self.row(0) <= cols
    }

    pub fn contains(&self, other: &Partition) -> bool {
        let len = self.length().max(other.length());
        (0..len).all(|i| self.row(i) >= other.row(i))
    }

    /// Complement inside the `rows × cols` box, read from the bottom-right corner.
    pub fn complement(&self, rows: usize, cols: u32) -> Partition {
        debug_assert!(self.fits_box(rows, cols));
        Partition {
            parts: (0..rows).rev().map(|i| cols - self.row(i)).collect(),
        }
    }

    /// The full `rows × cols` rectangle.
    pub fn rectangle(rows: usize, cols: u32) -> Partition {
        Partition {
            parts: vec![cols; rows],
        }
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.nonzero() == other.nonzero()
    }
}

impl Eq for Partition {}

impl Hash for Partition {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.nonzero().hash(state)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nonzero().cmp(other.nonzero())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

/// Raw values `(k − J(k) + p)_{k ∈ [d]}`, possibly negative.
pub fn gamma_values(subset: &Subset, shift: i64) -> Vec<i64> {
    subset
        .iter()
        .enumerate()
        .map(|(k, j)| k as i64 + 1 - j as i64 + shift)
        .collect()
}

/// `γ_p(J) = (k − J(k) + p)_{k ∈ [d]}`.
pub fn gamma(subset: &Subset, shift: i64) -> Result<Partition> {
    let values = gamma_values(subset, shift);
    if values.iter().any(|&v| v < 0) {
        return Err(HornError::InvalidShift {
            subset: subset.to_string(),
            shift,
        });
    }
    Ok(Partition {
        parts: values.into_iter().map(|v| v as u32).collect(),
    })
}

/// A permutation of `[s]`, stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(s: usize) -> Self {
        Permutation {
            images: (0..s).collect(),
        }
    }

    /// Builds `σ` from 1-based images `σ(1), …, σ(s)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let s = images.len();
        let mut seen = vec![false; s];
        let mut zero_based = Vec::with_capacity(s);
        for &im in images {
            if im == 0 || im > s || seen[im - 1] {
                return Err(HornError::InvalidPermutation(format!(
                    "{images:?} is not a permutation of [1..{s}]"
                )));
            }
            seen[im - 1] = true;
            zero_based.push(im - 1);
        }
        Ok(Permutation { images: zero_based })
    }

    /// Builds a permutation of `[s]` from disjoint 1-based cycles.
    pub fn from_cycles(s: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=s).collect();
        let mut touched = vec![false; s];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a == 0 || a > s || touched[a - 1] {
                    return Err(HornError::InvalidPermutation(format!(
                        "cycles {cycles:?} are not disjoint inside [1..{s}]"
                    )));
                }
                touched[a - 1] = true;
                images[a - 1] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(&images)
    }

    pub fn arity(&self) -> usize {
        self.images.len()
    }

    /// `σ(l)` for 1-based `l`.
    pub fn apply(&self, l: usize) -> usize {
        self.images[l - 1] + 1
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            inv[im] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`, i.e. `l ↦ self(other(l))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.arity() != other.arity() {
            return Err(HornError::ArityMismatch {
                expected: self.arity(),
                got: other.arity(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im)
    }

    /// Left action on `X^s`: `(σ·x)_l = x_{σ⁻¹(l)}`.
    pub fn act<T: Clone>(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.arity() {
            return Err(HornError::ArityMismatch {
                expected: self.arity(),
                got: x.len(),
            });
        }
        let inv = self.inverse();
        Ok(inv.images.iter().map(|&i| x[i].clone()).collect())
    }

    /// Disjoint cycles, 1-based, fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.arity()];
        let mut out = Vec::new();
        for start in 0..self.arity() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::new(self.cycles().iter().map(Vec::len).collect())
            .expect("cycle lengths of a permutation are positive")
    }

    /// All permutations of `[s]` in lexicographic order of their images.
    pub fn all(s: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if prefix.len() == used.len() {
                out.push(Permutation {
                    images: prefix.clone(),
                });
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; s], &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "id");
        }
        for c in nontrivial {
            let body: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images())
    }
}

/// Conjugacy class of a permutation of `[s]`, as cycle lengths sorted
/// increasingly. Only the type matters for stability questions, so tables
/// are keyed by it and the canonical representative
/// `(1 … l₁)(l₁+1 … l₁+l₂)…` is used throughout.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CycleType {
    lengths: Vec<usize>,
}

impl CycleType {
    pub fn new(mut lengths: Vec<usize>) -> Result<Self> {
        if lengths.is_empty() || lengths.contains(&0) {
            return Err(HornError::InvalidPermutation(format!(
                "{lengths:?} is not a cycle type"
            )));
        }
        lengths.sort_unstable();
        Ok(CycleType { lengths })
    }

    pub fn identity(s: usize) -> Self {
        CycleType {
            lengths: vec![1; s],
        }
    }

    /// Parses `"3"`, `"1,2"` or `"1,1,1"`. A type whose lengths sum to less
    /// than `s` is padded with fixed points.
    pub fn parse(text: &str, s: usize) -> Result<Self> {
        let mut lengths = Vec::new();
        for piece in text.split(',') {
            let piece = piece.trim();
            let len: usize = piece.parse().map_err(|_| {
                HornError::InvalidPermutation(format!("cannot parse cycle type {text:?}"))
            })?;
            lengths.push(len);
        }
        let total: usize = lengths.iter().sum();
        if total > s {
            return Err(HornError::InvalidPermutation(format!(
                "cycle type {text:?} does not fit s = {s}"
            )));
        }
        lengths.extend(std::iter::repeat_n(1, s - total));
        CycleType::new(lengths)
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn arity(&self) -> usize {
        self.lengths.iter().sum()
    }

    pub fn is_identity(&self) -> bool {
        self.lengths.iter().all(|&l| l == 1)
    }

    /// Canonical cycles, 1-based, by increasing length.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut next = 1;
        self.lengths
            .iter()
            .map(|&len| {
                let c: Vec<usize> = (next..next + len).collect();
                next += len;
                c
            })
            .collect()
    }

    pub fn permutation(&self) -> Permutation {
        Permutation::from_cycles(self.arity(), &self.cycles())
            .expect("canonical cycles are disjoint")
    }

    /// For each position `l ∈ [s]` (0-based), the index of its cycle.
    pub fn orbit_of_position(&self) -> Vec<usize> {
        let mut out = vec![0; self.arity()];
        for (c, cycle) in self.cycles().iter().enumerate() {
            for &l in cycle {
                out[l - 1] = c;
            }
        }
        out
    }

    /// Compact label such as `"3"` or `"1,1,1"`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.lengths.iter().map(usize::to_string).collect();
        parts.join(",")
    }
}

impl Serialize for CycleType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.lengths.serialize(serializer)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// An `s`-tuple of subsets sharing size and ambient: an element of
/// `Subsets(d, r, s)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetTuple {
    parts: Vec<Subset>,
}

impl SubsetTuple {
    pub fn new(parts: Vec<Subset>) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(HornError::InvalidTuple("empty tuple".into()));
        };
        let (d, r) = (first.size(), first.ambient());
        if let Some(bad) = parts.iter().find(|p| p.size() != d || p.ambient() != r) {
            return Err(HornError::InvalidTuple(format!(
                "{bad:?} does not share size {d} and ambient {r} with the other parts"
            )));
        }
        Ok(SubsetTuple { parts })
    }

    /// Convenience constructor from element lists.
    pub fn from_elements(ambient: u32, parts: &[&[u32]]) -> Result<Self> {
        let parts = parts
            .iter()
            .map(|e| Subset::new(ambient, e))
            .collect::<Result<Vec<_>>>()?;
        SubsetTuple::new(parts)
    }

    /// `([n])_{l ∈ [s]}`.
    pub fn full(n: u32, s: usize) -> Self {
        SubsetTuple {
            parts: vec![Subset::full(n); s],
        }
    }

    pub fn parts(&self) -> &[Subset] {
        &self.parts
    }

    pub fn arity(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> u32 {
        self.parts[0].size()
    }

    pub fn ambient(&self) -> u32 {
        self.parts[0].ambient()
    }

    /// `Γ(JJ) = (γ_{r−d}(JJ_l))_l`.
    pub fn big_gamma(&self) -> Vec<Partition> {
        let shift = (self.ambient() - self.size()) as i64;
        self.parts
            .iter()
            .map(|p| gamma(p, shift).expect("γ_{r-d} of a subset of [r] is nonnegative"))
            .collect()
    }

    /// `Γ(JJ)` as signed integer rows, convenient as a weight `θ`.
    pub fn big_gamma_values(&self) -> Vec<Vec<i64>> {
        let shift = (self.ambient() - self.size()) as i64;
        self.parts.iter().map(|p| gamma_values(p, shift)).collect()
    }

    /// Componentwise composition `II JJ = (II_l JJ_l)_l`.
    pub fn compose(&self, inner: &SubsetTuple) -> Result<SubsetTuple> {
        self.check_arity(inner)?;
        let parts = self
            .parts
            .iter()
            .zip(&inner.parts)
            .map(|(i, j)| i.compose(j))
            .collect::<Result<Vec<_>>>()?;
        SubsetTuple::new(parts)
    }

    /// Componentwise `II^JJ = (II_l^{JJ_l})_l`.
    pub fn quotient(&self, inner: &SubsetTuple) -> Result<SubsetTuple> {
        self.check_arity(inner)?;
        let parts = self
            .parts
            .iter()
            .zip(&inner.parts)
            .map(|(i, j)| i.quotient_position(j))
            .collect::<Result<Vec<_>>>()?;
        SubsetTuple::new(parts)
    }

    /// Expected dimension `r(n−r) − T(Γ(II))` where `r = |II_l|` and `n`
    /// is the ambient. May be negative.
    pub fn edim(&self) -> i64 {
        let r = self.size() as i64;
        let n = self.ambient() as i64;
        let codim: i64 = self
            .big_gamma_values()
            .iter()
            .map(|row| row.iter().sum::<i64>())
            .sum();
        r * (n - r) - codim
    }

    /// Total codimension `T(Γ(II))` of the Schubert classes.
    pub fn codimension(&self) -> i64 {
        let r = self.size() as i64;
        let n = self.ambient() as i64;
        r * (n - r) - self.edim()
    }

    pub fn act(&self, sigma: &Permutation) -> Result<SubsetTuple> {
        Ok(SubsetTuple {
            parts: sigma.act(&self.parts)?,
        })
    }

    pub fn is_stable(&self, sigma: &Permutation) -> bool {
        matches!(self.act(sigma), Ok(moved) if moved == *self)
    }

    /// Stability under the canonical permutation of a cycle type.
    pub fn is_stable_under(&self, cycle_type: &CycleType) -> bool {
        cycle_type.arity() == self.arity() && self.is_stable(&cycle_type.permutation())
    }

    /// Lexicographic comparison of parts, each compared by elements.
    pub fn cmp_lex(&self, other: &SubsetTuple) -> Ordering {
        for (a, b) in self.parts.iter().zip(&other.parts) {
            match a.cmp_lex(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.arity().cmp(&other.arity())
    }

    /// The lexicographically least tuple among all coordinate permutations.
    pub fn orbit_representative(&self) -> SubsetTuple {
        let mut parts = self.parts.clone();
        parts.sort_by(|a, b| a.cmp_lex(b));
        SubsetTuple { parts }
    }

    /// Number of distinct tuples obtained by permuting coordinates.
    pub fn orbit_size(&self) -> usize {
        let mut parts = self.parts.clone();
        parts.sort();
        let mut size = factorial(parts.len());
        let mut i = 0;
        while i < parts.len() {
            let mut j = i;
            while j < parts.len() && parts[j] == parts[i] {
                j += 1;
            }
            size /= factorial(j - i);
            i = j;
        }
        size
    }

    fn check_arity(&self, other: &SubsetTuple) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(HornError::ArityMismatch {
                expected: self.arity(),
                got: other.arity(),
            });
        }
        Ok(())
    }
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

impl fmt::Display for SubsetTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for SubsetTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}⊂[{}]", self.ambient())
    }
}

impl Serialize for SubsetTuple {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

/// `Subsets(d, r, s)^σ` for the canonical permutation of `cycle_type`,
/// generated cycle by cycle and sorted by concatenated bit-masks.
pub fn stable_tuples(d: u32, r: u32, cycle_type: &CycleType) -> Vec<SubsetTuple> {
    let subsets = Subset::all(d, r);
    let cycles = cycle_type.cycles();
    let s = cycle_type.arity();
    let mut out = Vec::new();
    let mut choice = vec![0usize; cycles.len()];
    loop {
        let mut parts = vec![subsets[0]; s];
        for (c, cycle) in cycles.iter().enumerate() {
            for &l in cycle {
                parts[l - 1] = subsets[choice[c]];
            }
        }
        out.push(SubsetTuple { parts });
        let mut c = cycles.len();
        loop {
            if c == 0 {
                out.sort();
                return out;
            }
            c -= 1;
            choice[c] += 1;
            if choice[c] < subsets.len() {
                break;
            }
            choice[c] = 0;
        }
    }
}

/// `T_JJ(Λ) = Σ_l Σ_{j ∈ JJ_l} Λ_l(j)`.
pub fn t_functional<T>(tuple: &SubsetTuple, spectra: &[Vec<T>]) -> Result<T>
where
    T: Clone + Zero + for<'a> Add<&'a T, Output = T>,
{
    if spectra.len() != tuple.arity() {
        return Err(HornError::ArityMismatch {
            expected: tuple.arity(),
            got: spectra.len(),
        });
    }
    let r = tuple.ambient() as usize;
    let mut total = T::zero();
    for (part, row) in tuple.parts().iter().zip(spectra) {
        if row.len() != r {
            return Err(HornError::DimensionMismatch(format!(
                "spectrum of length {} for a tuple inside [{r}]",
                row.len()
            )));
        }
        for j in part.iter() {
            total = total + &row[j as usize - 1];
        }
    }
    Ok(total)
}

/// `slope_θ(JJ) = T_JJ(θ) / d`.
pub fn slope(theta: &[Vec<BigRational>], tuple: &SubsetTuple) -> Result<BigRational> {
    let total = t_functional(tuple, theta)?;
    Ok(total / BigRational::from_integer(BigInt::from(tuple.size())))
}

/// Converts integer rows to exact rationals, scaling by `factor`.
pub fn to_rational_rows<I>(rows: &[Vec<I>], factor: i64) -> Vec<Vec<BigRational>>
where
    I: Copy + Into<i64>,
{
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v.into()).mul(factor)))
                .collect()
        })
        .collect()
}
