//! Finite posets, their down-set topology, and decision procedures for maps
//! between them.
//!
//! The open sets of the poset topology are exactly the down-closed subsets;
//! they are represented implicitly and never materialized except by
//! [`PosetTopology::open_sets`] on small posets.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest poset for which the full topology may be materialized.
pub const MATERIALIZE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation is not reflexive at element {0}")]
    NotReflexive(usize),
    #[error("relation is not antisymmetric: {0} ≤ {1} and {1} ≤ {0}")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive: {0} ≤ {1} ≤ {2} but not {0} ≤ {2}")]
    NotTransitive(usize, usize, usize),
    #[error("relation matrix has the wrong shape")]
    Shape,
    #[error("unknown element {0}")]
    UnknownElement(usize),
    #[error("map is not total: expected {expected} images, got {got}")]
    NotTotal { expected: usize, got: usize },
    #[error("topology over {0} elements is too large to materialize")]
    TooLarge(usize),
    #[error("search budget of {budget} nodes exceeded")]
    SearchBudgetExceeded { budget: u64 },
}

/// A finite partial order over elements `0..size()`.
pub trait PartialOrder {
    fn size(&self) -> usize;

    /// `a ≤ b`.
    fn le(&self, a: usize, b: usize) -> bool;

    /// `U_x = {y | y ≤ x}`.
    fn down_set(&self, x: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.size());
        for y in 0..self.size() {
            if self.le(y, x) {
                s.insert(y);
            }
        }
        s
    }

    /// `{y | x ≤ y}`.
    fn up_set(&self, x: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.size());
        for y in 0..self.size() {
            if self.le(x, y) {
                s.insert(y);
            }
        }
        s
    }

    fn label(&self, x: usize) -> String {
        format!("#{}", x + 1)
    }
}

/// A poset stored as an explicit relation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    /// `below[x]` is the down-set of `x`.
    below: Vec<FixedBitSet>,
}

impl FinitePoset {
    /// From a full relation matrix, `matrix[a][b]` meaning `a ≤ b`.
    pub fn from_matrix(labels: Vec<String>, matrix: &[Vec<bool>]) -> Result<FinitePoset, PosetError> {
        let n = labels.len();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(PosetError::Shape);
        }
        for (a, row) in matrix.iter().enumerate() {
            if !row[a] {
                return Err(PosetError::NotReflexive(a));
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if matrix[a][b] && matrix[b][a] {
                    return Err(PosetError::NotAntisymmetric(a, b));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !matrix[a][b] {
                    continue;
                }
                for c in 0..n {
                    if matrix[b][c] && !matrix[a][c] {
                        return Err(PosetError::NotTransitive(a, b, c));
                    }
                }
            }
        }
        let below = (0..n)
            .map(|x| {
                let mut s = FixedBitSet::with_capacity(n);
                for y in 0..n {
                    if matrix[y][x] {
                        s.insert(y);
                    }
                }
                s
            })
            .collect();
        Ok(FinitePoset { labels, below })
    }

    /// Reflexive-transitive closure of the given `(lower, upper)` pairs.
    ///
    /// Elements that appear in no pair are only related to themselves.
    pub fn from_relations<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        relations: &[(usize, usize)],
    ) -> Result<FinitePoset, PosetError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        let mut matrix = vec![vec![false; n]; n];
        for (a, row) in matrix.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in relations {
            if a >= n {
                return Err(PosetError::UnknownElement(a));
            }
            if b >= n {
                return Err(PosetError::UnknownElement(b));
            }
            matrix[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if matrix[i][k] {
                    for j in 0..n {
                        if matrix[k][j] {
                            matrix[i][j] = true;
                        }
                    }
                }
            }
        }
        FinitePoset::from_matrix(labels, &matrix)
    }

    /// Materializes any partial order into a matrix-backed poset.
    pub fn from_order<P: PartialOrder + ?Sized>(order: &P) -> FinitePoset {
        let n = order.size();
        FinitePoset {
            labels: (0..n).map(|x| order.label(x)).collect(),
            below: (0..n).map(|x| order.down_set(x)).collect(),
        }
    }

    /// Chain `c1 ≤ c2 ≤ ... ≤ cn`.
    pub fn chain(n: usize) -> FinitePoset {
        let rel: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FinitePoset::from_relations((1..=n).map(|i| format!("c{i}")), &rel).expect("chain")
    }

    /// `n` pairwise incomparable elements.
    pub fn antichain(n: usize) -> FinitePoset {
        FinitePoset::from_relations((1..=n).map(|i| format!("a{i}")), &[]).expect("antichain")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn matrix(&self) -> Vec<Vec<bool>> {
        let n = self.size();
        (0..n).map(|a| (0..n).map(|b| self.le(a, b)).collect()).collect()
    }
}

impl PartialOrder for FinitePoset {
    fn size(&self) -> usize {
        self.labels.len()
    }

    fn le(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    fn down_set(&self, x: usize) -> FixedBitSet {
        self.below[x].clone()
    }

    fn label(&self, x: usize) -> String {
        self.labels[x].clone()
    }
}

/// How two elements relate, phrased through their minimal open neighbourhoods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairCase {
    /// Case 1: `p = q`.
    Equal,
    /// Case 2: `p ≤ q`, `p ≠ q`.
    Below,
    /// Case 3: `q ≤ p`, `p ≠ q`.
    Above,
    /// Case 4: incomparable.
    Incomparable,
}

impl PairCase {
    pub fn number(self) -> u8 {
        match self {
            PairCase::Equal => 1,
            PairCase::Below => 2,
            PairCase::Above => 3,
            PairCase::Incomparable => 4,
        }
    }
}

/// The poset topology: open sets are unions of the basic down-sets `U_x`.
#[derive(Debug, Clone, Copy)]
pub struct PosetTopology<'a, P: PartialOrder + ?Sized> {
    order: &'a P,
}

impl<'a, P: PartialOrder + ?Sized> PosetTopology<'a, P> {
    pub fn new(order: &'a P) -> Self {
        PosetTopology { order }
    }

    pub fn order(&self) -> &'a P {
        self.order
    }

    fn check(&self, p: usize) -> Result<(), PosetError> {
        if p < self.order.size() {
            Ok(())
        } else {
            Err(PosetError::UnknownElement(p))
        }
    }

    /// Basic open set `U_x`.
    pub fn basis(&self, x: usize) -> FixedBitSet {
        self.order.down_set(x)
    }

    /// A subset is open iff it is down-closed.
    pub fn is_open(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|x| {
            (0..self.order.size()).all(|y| !self.order.le(y, x) || set.contains(y))
        })
    }

    pub fn is_closed(&self, set: &FixedBitSet) -> bool {
        let mut complement = set.clone();
        complement.toggle_range(..);
        self.is_open(&complement)
    }

    /// Smallest open set containing `p`, which is `U_p`.
    pub fn minimal_open_neighborhood(&self, p: usize) -> Result<FixedBitSet, PosetError> {
        self.check(p)?;
        Ok(self.basis(p))
    }

    /// Smallest closed set containing `set`: its up-closure.
    pub fn closure(&self, set: &FixedBitSet) -> FixedBitSet {
        let n = self.order.size();
        let mut out = FixedBitSet::with_capacity(n);
        for x in set.ones() {
            out.union_with(&self.order.up_set(x));
        }
        out
    }

    /// Decides the case from memberships in `U_p ∩ U_q`.
    pub fn classify_pair(&self, p: usize, q: usize) -> Result<PairCase, PosetError> {
        self.check(p)?;
        self.check(q)?;
        let mut both = self.basis(p);
        both.intersect_with(&self.basis(q));
        Ok(match (both.contains(p), both.contains(q)) {
            (true, true) => PairCase::Equal,
            (true, false) => PairCase::Below,
            (false, true) => PairCase::Above,
            (false, false) => PairCase::Incomparable,
        })
    }

    /// Rebuilds `≤` from containment of minimal open neighbourhoods.
    pub fn recover_order(&self) -> Vec<Vec<bool>> {
        let n = self.order.size();
        let nbhd: Vec<FixedBitSet> = (0..n).map(|x| self.basis(x)).collect();
        (0..n)
            .map(|a| (0..n).map(|b| nbhd[a].is_subset(&nbhd[b])).collect())
            .collect()
    }

    /// Every open set, for posets with at most [`MATERIALIZE_LIMIT`] elements.
    pub fn open_sets(&self) -> Result<Vec<FixedBitSet>, PosetError> {
        let n = self.order.size();
        if n > MATERIALIZE_LIMIT {
            return Err(PosetError::TooLarge(n));
        }
        let mut out = Vec::new();
        for mask in 0u32..(1u32 << n) {
            let mut s = FixedBitSet::with_capacity(n);
            for i in 0..n {
                if mask & (1 << i) != 0 {
                    s.insert(i);
                }
            }
            if self.is_open(&s) {
                out.push(s);
            }
        }
        Ok(out)
    }
}

/// Verdict of a monotonicity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Continuity {
    Continuous,
    /// `p ≤ q` but `f(p) ≰ f(q)`.
    Violated { p: usize, q: usize },
}

impl Continuity {
    pub fn holds(&self) -> bool {
        matches!(self, Continuity::Continuous)
    }
}

fn check_total<P: PartialOrder + ?Sized, Q: PartialOrder + ?Sized>(
    source: &P,
    target: &Q,
    map: &[usize],
) -> Result<(), PosetError> {
    if map.len() != source.size() {
        return Err(PosetError::NotTotal {
            expected: source.size(),
            got: map.len(),
        });
    }
    match map.iter().find(|&&y| y >= target.size()) {
        Some(&y) => Err(PosetError::UnknownElement(y)),
        None => Ok(()),
    }
}

/// Continuity decided through monotonicity, with a violating pair on failure.
pub fn is_continuous<P, Q>(source: &P, target: &Q, map: &[usize]) -> Result<Continuity, PosetError>
where
    P: PartialOrder + ?Sized,
    Q: PartialOrder + ?Sized,
{
    check_total(source, target, map)?;
    for q in 0..source.size() {
        for p in 0..source.size() {
            if p != q && source.le(p, q) && !target.le(map[p], map[q]) {
                return Ok(Continuity::Violated { p, q });
            }
        }
    }
    Ok(Continuity::Continuous)
}

/// Continuity decided from the definition: the preimage of every basic open
/// set `U_y` must be open.
pub fn is_continuous_by_preimages<P, Q>(source: &P, target: &Q, map: &[usize]) -> Result<bool, PosetError>
where
    P: PartialOrder + ?Sized,
    Q: PartialOrder + ?Sized,
{
    check_total(source, target, map)?;
    let topology = PosetTopology::new(source);
    for y in 0..target.size() {
        let open = target.down_set(y);
        let mut preimage = FixedBitSet::with_capacity(source.size());
        for (x, &fx) in map.iter().enumerate() {
            if open.contains(fx) {
                preimage.insert(x);
            }
        }
        if !topology.is_open(&preimage) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_injective(map: &[usize], target_size: usize) -> bool {
    let mut seen = vec![false; target_size];
    map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
}

/// Injective, monotone and order-reflecting.
pub fn is_embedding<P, Q>(source: &P, target: &Q, map: &[usize]) -> Result<bool, PosetError>
where
    P: PartialOrder + ?Sized,
    Q: PartialOrder + ?Sized,
{
    check_total(source, target, map)?;
    if !is_injective(map, target.size()) {
        return Ok(false);
    }
    for p in 0..source.size() {
        for q in 0..source.size() {
            if source.le(p, q) != target.le(map[p], map[q]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Bijective with a monotone inverse.
pub fn is_homeomorphism<P, Q>(source: &P, target: &Q, map: &[usize]) -> Result<bool, PosetError>
where
    P: PartialOrder + ?Sized,
    Q: PartialOrder + ?Sized,
{
    check_total(source, target, map)?;
    if source.size() != target.size() || !is_injective(map, target.size()) {
        return Ok(false);
    }
    if !is_continuous(source, target, map)?.holds() {
        return Ok(false);
    }
    let mut inverse = vec![0; target.size()];
    for (x, &y) in map.iter().enumerate() {
        inverse[y] = x;
    }
    Ok(is_continuous(target, source, &inverse)?.holds())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapMode {
    Any,
    Injective,
    Surjective,
    Embedding,
    Homeomorphism,
}

/// Options for [`find_poset_map`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetSearch {
    pub mode: MapMode,
    /// Reject maps whose image is a single element.
    pub nontrivial: bool,
    pub budget: u64,
}

impl PosetSearch {
    pub fn new(mode: MapMode, budget: u64) -> Self {
        PosetSearch {
            mode,
            nontrivial: false,
            budget,
        }
    }

    pub fn nontrivial(mut self) -> Self {
        self.nontrivial = true;
        self
    }
}

/// Complete backtracking search for a monotone map of the requested kind.
///
/// Source elements are assigned along a linear extension (down-set size,
/// then input order) so every predecessor is placed before its successors;
/// candidates are tried in target input order.
pub fn find_poset_map<P, Q>(source: &P, target: &Q, search: &PosetSearch) -> Result<Option<Vec<usize>>, PosetError>
where
    P: PartialOrder + ?Sized,
    Q: PartialOrder + ?Sized,
{
    let (n, m) = (source.size(), target.size());
    let injective = matches!(search.mode, MapMode::Injective | MapMode::Embedding | MapMode::Homeomorphism);
    let surjective = matches!(search.mode, MapMode::Surjective | MapMode::Homeomorphism);
    if (injective && n > m) || (surjective && n < m) || (search.mode == MapMode::Homeomorphism && n != m) {
        return Ok(None);
    }
    if n == 0 {
        return Ok((!surjective || m == 0).then(Vec::new));
    }
    let profile = |order: &dyn Fn(usize) -> (FixedBitSet, FixedBitSet), size: usize| -> Vec<(usize, usize)> {
        (0..size)
            .map(|x| {
                let (d, u) = order(x);
                (d.count_ones(..), u.count_ones(..))
            })
            .collect()
    };
    let src_profile = profile(&|x| (source.down_set(x), source.up_set(x)), n);
    let tgt_profile = profile(&|x| (target.down_set(x), target.up_set(x)), m);
    if search.mode == MapMode::Homeomorphism {
        let mut a = src_profile.clone();
        let mut b = tgt_profile.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(None);
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (src_profile[x].0, x));
    let mut ctx = PosetSearchState {
        source,
        target,
        search,
        injective,
        surjective,
        order,
        src_profile,
        tgt_profile,
        assignment: vec![usize::MAX; n],
        used: vec![0; m],
        nodes: 0,
    };
    if ctx.descend(0)? {
        Ok(Some(ctx.assignment))
    } else {
        Ok(None)
    }
}

struct PosetSearchState<'a, P: ?Sized, Q: ?Sized> {
    source: &'a P,
    target: &'a Q,
    search: &'a PosetSearch,
    injective: bool,
    surjective: bool,
    order: Vec<usize>,
    src_profile: Vec<(usize, usize)>,
    tgt_profile: Vec<(usize, usize)>,
    assignment: Vec<usize>,
    used: Vec<usize>,
    nodes: u64,
}

impl<P: PartialOrder + ?Sized, Q: PartialOrder + ?Sized> PosetSearchState<'_, P, Q> {
    fn descend(&mut self, depth: usize) -> Result<bool, PosetError> {
        self.nodes += 1;
        if self.nodes > self.search.budget {
            return Err(PosetError::SearchBudgetExceeded {
                budget: self.search.budget,
            });
        }
        let n = self.order.len();
        if self.surjective {
            let uncovered = self.used.iter().filter(|&&u| u == 0).count();
            if uncovered > n - depth {
                return Ok(false);
            }
        }
        if depth == n {
            if self.search.nontrivial {
                let first = self.assignment[0];
                if self.assignment.iter().all(|&y| y == first) {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        let x = self.order[depth];
        for y in 0..self.target.size() {
            if !self.admissible(x, y, depth) {
                continue;
            }
            self.assignment[x] = y;
            self.used[y] += 1;
            if self.descend(depth + 1)? {
                return Ok(true);
            }
            self.used[y] -= 1;
            self.assignment[x] = usize::MAX;
        }
        Ok(false)
    }

    fn admissible(&self, x: usize, y: usize, depth: usize) -> bool {
        if self.injective {
            if self.used[y] > 0 {
                return false;
            }
            let (sd, su) = self.src_profile[x];
            let (td, tu) = self.tgt_profile[y];
            if sd > td || su > tu {
                return false;
            }
            if self.search.mode == MapMode::Homeomorphism && (sd, su) != (td, tu) {
                return false;
            }
        }
        let reflect = matches!(self.search.mode, MapMode::Embedding | MapMode::Homeomorphism);
        for &z in &self.order[..depth] {
            let fz = self.assignment[z];
            if self.source.le(z, x) && !self.target.le(fz, y) {
                return false;
            }
            if self.source.le(x, z) && !self.target.le(y, fz) {
                return false;
            }
            if reflect && (self.target.le(fz, y) != self.source.le(z, x) || self.target.le(y, fz) != self.source.le(x, z)) {
                return false;
            }
        }
        true
    }
}

/// Cover relations `(lower, upper)` of a partial order, in index order.
pub fn cover_relations<P: PartialOrder + ?Sized>(order: &P) -> Vec<(usize, usize)> {
    let n = order.size();
    let mut covers = Vec::new();
    for b in 0..n {
        for a in 0..n {
            if a == b || !order.le(a, b) {
                continue;
            }
            let direct = (0..n).all(|c| c == a || c == b || !(order.le(a, c) && order.le(c, b)));
            if direct {
                covers.push((a, b));
            }
        }
    }
    covers.sort_unstable();
    covers
}

/// Elements grouped by height (length of the longest chain below them).
pub fn levels<P: PartialOrder + ?Sized>(order: &P) -> BTreeMap<usize, Vec<usize>> {
    let n = order.size();
    let mut sorted: Vec<usize> = (0..n).collect();
    sorted.sort_by_key(|&x| (order.down_set(x).count_ones(..), x));
    let mut height = vec![0usize; n];
    for (i, &x) in sorted.iter().enumerate() {
        for &y in &sorted[..i] {
            if y != x && order.le(y, x) {
                height[x] = height[x].max(height[y] + 1);
            }
        }
    }
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        out.entry(height[x]).or_default().push(x);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, items: &[usize]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(n);
        for &i in items {
            s.insert(i);
        }
        s
    }

    /// `C ≤ B ≤ A` listed as A, B, C.
    fn abc_chain() -> FinitePoset {
        FinitePoset::from_relations(["A", "B", "C"], &[(2, 1), (1, 0)]).unwrap()
    }

    #[test]
    fn axioms_are_checked() {
        let labels: Vec<String> = vec!["x".into(), "y".into()];
        assert_eq!(
            FinitePoset::from_matrix(labels.clone(), &[vec![false, false], vec![false, true]]),
            Err(PosetError::NotReflexive(0))
        );
        assert_eq!(
            FinitePoset::from_matrix(labels.clone(), &[vec![true, true], vec![true, true]]),
            Err(PosetError::NotAntisymmetric(0, 1))
        );
        assert_eq!(
            FinitePoset::from_relations(["x", "y"], &[(0, 1), (1, 0)]),
            Err(PosetError::NotAntisymmetric(0, 1))
        );
        let three: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
        let m = vec![vec![true, true, false], vec![false, true, true], vec![false, false, true]];
        assert_eq!(FinitePoset::from_matrix(three, &m), Err(PosetError::NotTransitive(0, 1, 2)));
    }

    #[test]
    fn minimal_neighbourhoods() {
        let chain = abc_chain();
        let t = PosetTopology::new(&chain);
        assert_eq!(t.minimal_open_neighborhood(1).unwrap(), set(3, &[1, 2]));
        assert_eq!(t.minimal_open_neighborhood(2).unwrap(), set(3, &[2]));
        assert_eq!(t.minimal_open_neighborhood(5), Err(PosetError::UnknownElement(5)));
        let anti = FinitePoset::antichain(3);
        let t = PosetTopology::new(&anti);
        for p in 0..3 {
            assert_eq!(t.minimal_open_neighborhood(p).unwrap(), set(3, &[p]));
        }
    }

    #[test]
    fn closure_is_up_closure() {
        let chain = abc_chain();
        let t = PosetTopology::new(&chain);
        assert_eq!(t.closure(&set(3, &[])), set(3, &[]));
        assert_eq!(t.closure(&set(3, &[2])), set(3, &[0, 1, 2]));
        assert_eq!(t.closure(&set(3, &[0, 1, 2])), set(3, &[0, 1, 2]));
        assert!(t.is_closed(&t.closure(&set(3, &[1]))));
    }

    #[test]
    fn four_cases() {
        let chain = abc_chain();
        let t = PosetTopology::new(&chain);
        assert_eq!(t.classify_pair(1, 1).unwrap(), PairCase::Equal);
        assert_eq!(t.classify_pair(2, 1).unwrap(), PairCase::Below);
        assert_eq!(t.classify_pair(1, 2).unwrap(), PairCase::Above);
        let anti = FinitePoset::antichain(2);
        assert_eq!(PosetTopology::new(&anti).classify_pair(0, 1).unwrap().number(), 4);
    }

    #[test]
    fn tree_onto_chain_is_continuous() {
        // a, b1, b2, c1..c4
        let tree = FinitePoset::from_relations(
            ["a", "b1", "b2", "c1", "c2", "c3", "c4"],
            &[(3, 1), (4, 1), (5, 2), (6, 2), (1, 0), (2, 0)],
        )
        .unwrap();
        let chain = abc_chain();
        let map = [0, 1, 1, 2, 2, 2, 2];
        assert!(is_continuous(&tree, &chain, &map).unwrap().holds());
        assert!(is_continuous_by_preimages(&tree, &chain, &map).unwrap());
        let point = FinitePoset::chain(1);
        assert!(is_continuous(&tree, &point, &[0; 7]).unwrap().holds());
    }

    #[test]
    fn violation_reports_a_pair() {
        let chain = FinitePoset::chain(2);
        let verdict = is_continuous(&chain, &chain, &[1, 0]).unwrap();
        assert_eq!(verdict, Continuity::Violated { p: 0, q: 1 });
    }

    #[test]
    fn embeddings_and_homeomorphisms() {
        let chain = FinitePoset::chain(3);
        let identity = [0, 1, 2];
        assert!(is_embedding(&chain, &chain, &identity).unwrap());
        assert!(is_homeomorphism(&chain, &chain, &identity).unwrap());
        let anti = FinitePoset::antichain(3);
        assert!(!is_homeomorphism(&chain, &anti, &identity).unwrap());
        assert!(is_continuous(&anti, &chain, &identity).unwrap().holds());
        assert!(!is_homeomorphism(&anti, &chain, &identity).unwrap());
    }

    #[test]
    fn map_search_examples() {
        let budget = 1_000_000;
        let point = FinitePoset::chain(1);
        let tree = FinitePoset::from_relations(["a", "b", "c"], &[(1, 0), (2, 0)]).unwrap();
        let found = find_poset_map(&tree, &point, &PosetSearch::new(MapMode::Any, budget)).unwrap();
        assert_eq!(found, Some(vec![0, 0, 0]));
        let none = find_poset_map(
            &FinitePoset::chain(2),
            &FinitePoset::antichain(2),
            &PosetSearch::new(MapMode::Embedding, budget),
        )
        .unwrap();
        assert_eq!(none, None);
        let some = find_poset_map(
            &FinitePoset::chain(2),
            &FinitePoset::chain(3),
            &PosetSearch::new(MapMode::Embedding, budget),
        )
        .unwrap()
        .unwrap();
        assert!(is_embedding(&FinitePoset::chain(2), &FinitePoset::chain(3), &some).unwrap());
        let err = find_poset_map(&FinitePoset::chain(6), &FinitePoset::chain(6), &PosetSearch::new(MapMode::Homeomorphism, 3));
        assert_eq!(err, Err(PosetError::SearchBudgetExceeded { budget: 3 }));
    }

    #[test]
    fn covers_and_levels() {
        let chain = abc_chain();
        assert_eq!(cover_relations(&chain), [(1, 0), (2, 1)]);
        let lv = levels(&chain);
        assert_eq!(lv[&0], [2]);
        assert_eq!(lv[&2], [0]);
    }
}
