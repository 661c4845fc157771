//! Littlewood–Richardson rule and products of Schubert classes in
//! `H*(Gr(r, n))`.
//!
//! The Schubert class `ω_I` of `I ∈ Subsets(r, n)` is the Schur class of the
//! partition `γ_{n−r}(I)`, whose weight is the codimension
//! `r(n−r) − dim I`. Products are computed by iterated LR expansion, with
//! every partition that leaves the `r × (n−r)` box discarded after each step.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinat::{gamma, Partition, Subset, SubsetTuple};

/// `γ_{n−r}(I)`, the partition indexing `ω_I`.
pub fn subset_to_schubert_partition(subset: &Subset) -> Partition {
    let shift = (subset.ambient() - subset.size()) as i64;
    gamma(subset, shift).expect("γ_{n-r} of a subset of [n] is nonnegative")
}

/// Number of LR skew tableaux of shape `ν/λ` with content `μ`.
///
/// Cells are filled in reverse reading order (rows top to bottom, each row
/// right to left); the lattice condition is checked on every prefix.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> BigUint {
    BigUint::from(lr_count(lambda, mu, nu))
}

fn lr_count(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if nu.weight() != lambda.weight() + mu.weight() || !nu.contains(lambda) || !nu.contains(mu) {
        return 0;
    }
    let mu = mu.nonzero().to_vec();
    if mu.is_empty() {
        return 1;
    }
    let rows = nu.length();
    let mut cells = Vec::with_capacity((nu.weight() - lambda.weight()) as usize);
    for i in 0..rows {
        for j in (lambda.row(i)..nu.row(i)).rev() {
            cells.push((i, j as usize));
        }
    }
    let width = nu.row(0) as usize;
    let mut grid = vec![0u32; rows * width];
    let mut used = vec![0u32; mu.len() + 1];
    let mut state = LrSearch {
        lambda,
        mu: &mu,
        cells: &cells,
        width,
        grid: &mut grid,
        used: &mut used,
    };
    state.count(0)
}

struct LrSearch<'a> {
    lambda: &'a Partition,
    mu: &'a [u32],
    cells: &'a [(usize, usize)],
    width: usize,
    grid: &'a mut [u32],
    used: &'a mut [u32],
}

impl LrSearch<'_> {
    fn count(&mut self, idx: usize) -> u64 {
        if idx == self.cells.len() {
            return 1;
        }
        let (i, j) = self.cells[idx];
        // Entry to the right in the same row bounds this one from above.
        let mut upper = self.mu.len() as u32;
        if idx > 0 {
            let (pi, pj) = self.cells[idx - 1];
            if pi == i && pj == j + 1 {
                upper = upper.min(self.grid[i * self.width + j + 1]);
            }
        }
        // Entry above (if it is a skew cell) bounds from below, strictly.
        let mut lower = 1;
        if i > 0 && (j as u32) >= self.lambda.row(i - 1) {
            lower = self.grid[(i - 1) * self.width + j] + 1;
        }
        // Lattice words never use a label larger than the row index + 1.
        upper = upper.min(i as u32 + 1);
        let mut total = 0;
        let mut k = lower;
        while k <= upper {
            let ku = k as usize;
            let fits = self.used[ku] < self.mu[ku - 1]
                && (ku == 1 || self.used[ku] < self.used[ku - 1]);
            if fits {
                self.used[ku] += 1;
                self.grid[i * self.width + j] = k;
                total += self.count(idx + 1);
                self.used[ku] -= 1;
            }
            k += 1;
        }
        total
    }
}

/// A class in `H*(Gr(r, n))` written in the Schubert basis.
#[derive(Clone, PartialEq, Eq)]
pub struct BoxedClassVector {
    rows: usize,
    cols: u32,
    coeffs: BTreeMap<Partition, BigUint>,
}

impl BoxedClassVector {
    pub fn zero(r: u32, n: u32) -> Self {
        BoxedClassVector {
            rows: r as usize,
            cols: n - r,
            coeffs: BTreeMap::new(),
        }
    }

    /// The fundamental class `[Gr(r,n)] = σ_∅`.
    pub fn one(r: u32, n: u32) -> Self {
        let mut v = Self::zero(r, n);
        v.coeffs.insert(Partition::empty(), BigUint::one());
        v
    }

    pub fn grassmannian(&self) -> (u32, u32) {
        (self.rows as u32, self.rows as u32 + self.cols)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, p: &Partition) -> BigUint {
        self.coeffs.get(p).cloned().unwrap_or_default()
    }

    /// Coefficient of the point class `[pt] = σ_{(n−r)^r}`.
    pub fn point_coefficient(&self) -> BigUint {
        self.coefficient(&Partition::rectangle(self.rows, self.cols))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigUint)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Debug for BoxedClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, n) = self.grassmannian();
        write!(f, "H*(Gr({r},{n})): ")?;
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·σ{p}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum IntersectionKind {
    NotIntersecting,
    Intersecting,
    Intersecting0,
    Intersecting00,
}

/// Outcome of [`SchubertCalculator::classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionClass {
    pub kind: IntersectionKind,
    /// Coefficient of the point class, set when `edim = 0`.
    pub point_coefficient: Option<BigUint>,
}

impl IntersectionClass {
    pub fn is_intersecting(&self) -> bool {
        self.kind != IntersectionKind::NotIntersecting
    }

    pub fn is_intersecting0(&self) -> bool {
        matches!(
            self.kind,
            IntersectionKind::Intersecting0 | IntersectionKind::Intersecting00
        )
    }

    pub fn is_intersecting00(&self) -> bool {
        self.kind == IntersectionKind::Intersecting00
    }
}

type PairKey = (usize, u32, Partition, Partition);
type Expansion = Arc<Vec<(Partition, u64)>>;

/// Schubert calculus with a memo of pairwise products.
///
/// The memo is shared behind a lock; a product is a pure function of its key,
/// so concurrent callers always observe the same values.
#[derive(Default)]
pub struct SchubertCalculator {
    products: RwLock<HashMap<PairKey, Expansion>>,
}

impl SchubertCalculator {
    pub fn new() -> Self {
        Self::default()
    }

    /// `σ_λ · σ_μ` in `H*(Gr(rows, rows + cols))`.
    fn pair_product(&self, rows: usize, cols: u32, a: &Partition, b: &Partition) -> Expansion {
        // Multiplication is commutative: key on the ordered pair.
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let key = (rows, cols, a.clone(), b.clone());
        if let Some(hit) = self.products.read().unwrap().get(&key) {
            return hit.clone();
        }
        let mut out = Vec::new();
        let target = a.weight() + b.weight();
        if target as usize <= rows * cols as usize {
            for nu in partitions_between(a, b, rows, cols, target) {
                let c = lr_count(a, b, &nu);
                if c > 0 {
                    out.push((nu, c));
                }
            }
        }
        let out = Arc::new(out);
        self.products.write().unwrap().insert(key, out.clone());
        out
    }

    /// Left-fold product of the classes, truncated to the `r × (n−r)` box.
    pub fn schubert_product(&self, classes: &[Partition], r: u32, n: u32) -> BoxedClassVector {
        let rows = r as usize;
        let cols = n - r;
        let mut acc = BoxedClassVector::one(r, n);
        for class in classes {
            if !class.fits_box(rows, cols) {
                return BoxedClassVector::zero(r, n);
            }
            let mut next: BTreeMap<Partition, BigUint> = BTreeMap::new();
            for (p, c) in &acc.coeffs {
                for (nu, k) in self.pair_product(rows, cols, p, class).iter() {
                    *next.entry(nu.clone()).or_default() += c * BigUint::from(*k);
                }
            }
            acc.coeffs = next;
            if acc.coeffs.is_empty() {
                break;
            }
        }
        acc
    }

    /// Product of the Schubert classes `ω_{II_l}` in `H*(Gr(r, n))`.
    pub fn tuple_product(&self, tuple: &SubsetTuple) -> BoxedClassVector {
        let classes: Vec<Partition> = tuple
            .parts()
            .iter()
            .map(subset_to_schubert_partition)
            .collect();
        self.schubert_product(&classes, tuple.size(), tuple.ambient())
    }

    /// Classifies `II ∈ Subsets(r, n, s)` by the product `Π ω_{II_l}`.
    pub fn classify(&self, tuple: &SubsetTuple) -> IntersectionClass {
        let edim = tuple.edim();
        if edim < 0 {
            return IntersectionClass {
                kind: IntersectionKind::NotIntersecting,
                point_coefficient: Some(BigUint::zero()),
            };
        }
        let product = self.tuple_product(tuple);
        if product.is_zero() {
            return IntersectionClass {
                kind: IntersectionKind::NotIntersecting,
                point_coefficient: (edim == 0).then(BigUint::zero),
            };
        }
        if edim > 0 {
            return IntersectionClass {
                kind: IntersectionKind::Intersecting,
                point_coefficient: None,
            };
        }
        let coefficient = product.point_coefficient();
        let kind = if coefficient.is_one() {
            IntersectionKind::Intersecting00
        } else {
            IntersectionKind::Intersecting0
        };
        IntersectionClass {
            kind,
            point_coefficient: Some(coefficient),
        }
    }

    /// The multi-LR coefficient of the point class for `II` with `edim = 0`;
    /// zero for any other tuple.
    pub fn point_coefficient(&self, tuple: &SubsetTuple) -> BigUint {
        if tuple.edim() != 0 {
            return BigUint::zero();
        }
        self.tuple_product(tuple).point_coefficient()
    }

    pub fn cached_products(&self) -> usize {
        self.products.read().unwrap().len()
    }
}

/// Partitions `ν` in the `rows × cols` box with `|ν| = weight` and
/// `ν ⊇ a`, `ν ⊇ b`.
fn partitions_between(
    a: &Partition,
    b: &Partition,
    rows: usize,
    cols: u32,
    weight: u32,
) -> Vec<Partition> {
    fn rec(
        i: usize,
        rows: usize,
        prev: u32,
        remaining: u32,
        floor: &[u32],
        current: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if i == rows {
            if remaining == 0 {
                out.push(Partition::new(current.clone()).expect("built decreasing"));
            }
            return;
        }
        let tail_floor: u32 = floor[i..].iter().sum();
        if tail_floor > remaining || (remaining as u64) > prev as u64 * (rows - i) as u64 {
            return;
        }
        let hi = prev.min(remaining);
        let lo = floor[i];
        if lo > hi {
            return;
        }
        for v in (lo..=hi).rev() {
            current.push(v);
            rec(i + 1, rows, v, remaining - v, floor, current, out);
            current.pop();
        }
    }
    let floor: Vec<u32> = (0..rows).map(|i| a.row(i).max(b.row(i))).collect();
    if a.length() > rows || b.length() > rows {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(0, rows, cols, weight, &floor, &mut Vec::new(), &mut out);
    out
}
