//! Finite preorders: construction, the equivalence `x ~ y` (mutual
//! comparability), the quotient poset, intervals and their lengths, and
//! exhaustive enumeration.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

/// Enumeration refuses sizes above this unless the caller raises the bound.
pub const DEFAULT_ENUMERATION_BOUND: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreorderError {
    #[error("a preorder needs at least one element")]
    Empty,
    #[error("index {index} out of range for {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("relation is not transitive: {x} <= {y} and {y} <= {z} but not {x} <= {z}")]
    NotTransitive { x: usize, y: usize, z: usize },
    #[error("{x} and {y} are not comparable ({x} <= {y} fails)")]
    NotComparable { x: usize, y: usize },
    #[error("enumeration size {n} exceeds bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildMode {
    /// Accept the pairs only if they already form a transitive relation.
    Verify,
    /// Take the reflexive-transitive closure of the pairs.
    Closure,
}

/// A reflexive, transitive relation on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Preorder {
    n: usize,
    leq: Vec<bool>,
}

impl Preorder {
    /// Builds a preorder from generating pairs `(x, y)` meaning `x <= y`.
    /// The diagonal is always implied.
    pub fn build(n: usize, pairs: &[(usize, usize)], mode: BuildMode) -> Result<Self, PreorderError> {
        if n == 0 {
            return Err(PreorderError::Empty);
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(x, y) in pairs {
            for index in [x, y] {
                if index >= n {
                    return Err(PreorderError::IndexOutOfRange { index, n });
                }
            }
            leq[x * n + y] = true;
        }
        match mode {
            BuildMode::Closure => {
                for k in 0..n {
                    for i in 0..n {
                        if !leq[i * n + k] {
                            continue;
                        }
                        for j in 0..n {
                            if leq[k * n + j] {
                                leq[i * n + j] = true;
                            }
                        }
                    }
                }
                Ok(Preorder { n, leq })
            }
            BuildMode::Verify => {
                if let Some((x, y, z)) = transitivity_witness(n, &leq) {
                    return Err(PreorderError::NotTransitive { x, y, z });
                }
                Ok(Preorder { n, leq })
            }
        }
    }

    /// Wraps a full `n x n` relation, checking both axioms.
    pub fn from_relation(n: usize, leq: Vec<bool>) -> Result<Self, PreorderError> {
        if n == 0 {
            return Err(PreorderError::Empty);
        }
        assert_eq!(leq.len(), n * n, "relation must be n x n");
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| leq[x * n + y])
            .collect();
        Self::build(n, &pairs, BuildMode::Verify)
    }

    /// The discrete order: `x <= y` iff `x == y`.
    pub fn equality(n: usize) -> Self {
        Self::build(n, &[], BuildMode::Verify).expect("n >= 1")
    }

    /// Every pair comparable; one equivalence class.
    pub fn full(n: usize) -> Self {
        Preorder {
            n,
            leq: vec![true; n * n],
        }
    }

    /// `0 <= 1 <= ... <= n-1`.
    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::build(n, &pairs, BuildMode::Closure).expect("n >= 1")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    /// `x < y` in the quotient-strict sense: `x <= y` and not `y <= x`.
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) && !self.leq(y, x)
    }

    pub fn equivalent(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) && self.leq(y, x)
    }

    pub fn relation(&self) -> &[bool] {
        &self.leq
    }

    /// Comparable pairs `(x, y)` with `x <= y`, in lexicographic order.
    pub fn comparable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.leq(x, y))
    }

    pub fn comparable_count(&self) -> usize {
        self.leq.iter().filter(|&&b| b).count()
    }

    /// Opposite relation: `x <=' y` iff `y <= x`.
    pub fn transpose(&self) -> Preorder {
        let n = self.n;
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[y * n + x] = self.leq(x, y);
            }
        }
        Preorder { n, leq }
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| x == y || !self.equivalent(x, y)))
    }

    /// Re-closes the relation; a no-op on any valid preorder.
    pub fn closure(&self) -> Preorder {
        let pairs: Vec<_> = self.comparable_pairs().collect();
        Self::build(self.n, &pairs, BuildMode::Closure).expect("valid preorder")
    }

    fn check_index(&self, index: usize) -> Result<(), PreorderError> {
        if index < self.n {
            Ok(())
        } else {
            Err(PreorderError::IndexOutOfRange { index, n: self.n })
        }
    }

    fn check_comparable(&self, x: usize, y: usize) -> Result<(), PreorderError> {
        self.check_index(x)?;
        self.check_index(y)?;
        if self.leq(x, y) {
            Ok(())
        } else {
            Err(PreorderError::NotComparable { x, y })
        }
    }

    /// `[x, y] = {z : x <= z <= y}`.
    pub fn interval(&self, x: usize, y: usize) -> Result<Vec<usize>, PreorderError> {
        self.check_comparable(x, y)?;
        Ok((0..self.n)
            .filter(|&z| self.leq(x, z) && self.leq(z, y))
            .collect())
    }

    /// Length of the longest strict chain from `x` to `y`; zero iff `x ~ y`.
    pub fn interval_length(&self, x: usize, y: usize) -> Result<usize, PreorderError> {
        self.check_comparable(x, y)?;
        let q = self.quotient();
        let lengths = q.longest_from(q.classes.class_of[x]);
        Ok(lengths[q.classes.class_of[y]].expect("y is reachable from x"))
    }

    /// All interval lengths at once: entry `x * n + y` is `Some(len)` when
    /// `x <= y`.
    pub fn interval_lengths(&self) -> Vec<Option<usize>> {
        let q = self.quotient();
        let from_class: Vec<Vec<Option<usize>>> = (0..q.m()).map(|a| q.longest_from(a)).collect();
        let n = self.n;
        let mut out = vec![None; n * n];
        for (x, y) in self.comparable_pairs() {
            out[x * n + y] = from_class[q.classes.class_of[x]][q.classes.class_of[y]];
        }
        out
    }

    pub fn equivalence_classes(&self) -> EquivClasses {
        EquivClasses::from_components(self.n, tarjan_components(self))
    }

    pub fn quotient(&self) -> QuotientPoset {
        let classes = self.equivalence_classes();
        let m = classes.classes.len();
        let mut leq = vec![false; m * m];
        for a in 0..m {
            for b in 0..m {
                leq[a * m + b] = self.leq(classes.representative(a), classes.representative(b));
            }
        }
        QuotientPoset {
            poset: Preorder { n: m, leq },
            classes,
        }
    }
}

fn transitivity_witness(n: usize, leq: &[bool]) -> Option<(usize, usize, usize)> {
    for x in 0..n {
        for y in 0..n {
            if !leq[x * n + y] {
                continue;
            }
            for z in 0..n {
                if leq[y * n + z] && !leq[x * n + z] {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Strongly connected components of the relation digraph (edge `x -> y`
/// whenever `x <= y`), by Tarjan's algorithm with an explicit stack.
fn tarjan_components(p: &Preorder) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = p.n();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next_index = 0;

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        // (vertex, next successor to examine)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut succ)) = call.last_mut() {
            if *succ < n {
                let w = *succ;
                *succ += 1;
                if w == v || !p.leq(v, w) {
                    continue;
                }
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                components.push(component);
            }
        }
    }
    components
}

/// Classes of `~`, ordered by their least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivClasses {
    pub class_of: Vec<usize>,
    /// Each class sorted ascending, so `classes[i][0]` is its representative.
    pub classes: Vec<Vec<usize>>,
}

impl EquivClasses {
    fn from_components(n: usize, mut components: Vec<Vec<usize>>) -> Self {
        for c in components.iter_mut() {
            c.sort_unstable();
        }
        components.sort_unstable_by_key(|c| c[0]);
        let mut class_of = vec![0; n];
        for (i, c) in components.iter().enumerate() {
            for &x in c {
                class_of[x] = i;
            }
        }
        EquivClasses {
            class_of,
            classes: components,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Least element of class `i`.
    pub fn representative(&self, i: usize) -> usize {
        self.classes[i][0]
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// The condensation `X/~` with its induced (antisymmetric) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPoset {
    poset: Preorder,
    pub classes: EquivClasses,
}

impl QuotientPoset {
    pub fn m(&self) -> usize {
        self.poset.n
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn as_preorder(&self) -> &Preorder {
        &self.poset
    }

    pub fn into_preorder(self) -> Preorder {
        self.poset
    }

    /// A linear extension of the quotient order.
    fn topological_order(&self) -> Vec<usize> {
        let m = self.m();
        let mut order: Vec<usize> = (0..m).collect();
        // in a poset a < b implies the down-set of a is strictly smaller
        order.sort_by_key(|&a| (0..m).filter(|&b| self.leq(b, a)).count());
        order
    }

    /// Longest strict chain from class `source` to every class above it.
    fn longest_from(&self, source: usize) -> Vec<Option<usize>> {
        let m = self.m();
        let mut best = vec![None; m];
        best[source] = Some(0);
        for a in self.topological_order() {
            let Some(len) = best[a] else { continue };
            for b in 0..m {
                if b != a && self.leq(a, b) {
                    best[b] = Some(best[b].map_or(len + 1, |cur: usize| cur.max(len + 1)));
                }
            }
        }
        best
    }
}

/// Every preorder on `n` elements, exactly once each, in a fixed order.
pub fn enumerate_preorders(n: usize) -> Result<PreorderEnumerator, PreorderError> {
    enumerate_preorders_bounded(n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_preorders_bounded(n: usize, bound: usize) -> Result<PreorderEnumerator, PreorderError> {
    if n == 0 {
        return Err(PreorderError::Empty);
    }
    if n > bound {
        return Err(PreorderError::BoundExceeded { n, bound });
    }
    Ok(PreorderEnumerator::new(n))
}

/// Backtracking search over the off-diagonal pairs (lexicographic order,
/// `false` before `true`), pruning as soon as a fully decided triple breaks
/// transitivity.
#[derive(Debug, Clone)]
pub struct PreorderEnumerator {
    n: usize,
    pairs: Vec<(usize, usize)>,
    /// position of pair (x, y) in `pairs`; usize::MAX on the diagonal
    slot: Vec<usize>,
    leq: Vec<bool>,
    decided: usize,
    started: bool,
    finished: bool,
}

impl PreorderEnumerator {
    fn new(n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| x != y)
            .collect();
        let mut slot = vec![usize::MAX; n * n];
        for (i, &(x, y)) in pairs.iter().enumerate() {
            slot[x * n + y] = i;
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        PreorderEnumerator {
            n,
            pairs,
            slot,
            leq,
            decided: 0,
            started: false,
            finished: false,
        }
    }

    fn is_decided(&self, x: usize, y: usize) -> bool {
        x == y || self.slot[x * self.n + y] < self.decided
    }

    fn get(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    /// Whether giving the next undecided pair `value` keeps every fully
    /// decided triple transitive.
    fn consistent(&self, value: bool) -> bool {
        let (x, y) = self.pairs[self.decided];
        let n = self.n;
        let val = |a: usize, b: usize| if (a, b) == (x, y) { value } else { self.get(a, b) };
        let known = |a: usize, b: usize| (a, b) == (x, y) || self.is_decided(a, b);
        for z in 0..n {
            // triples (a, b, c) that use (x, y) in any of the three positions
            for (a, b, c) in [(x, y, z), (z, x, y), (x, z, y)] {
                if known(a, b) && known(b, c) && known(a, c) && val(a, b) && val(b, c) && !val(a, c) {
                    return false;
                }
            }
        }
        true
    }

    fn push(&mut self, value: bool) {
        let (x, y) = self.pairs[self.decided];
        self.leq[x * self.n + y] = value;
        self.decided += 1;
    }

    /// Pops decisions until one can be flipped from `false` to `true`.
    fn backtrack(&mut self) -> bool {
        while self.decided > 0 {
            self.decided -= 1;
            let (x, y) = self.pairs[self.decided];
            let was = self.get(x, y);
            self.leq[x * self.n + y] = false;
            if !was && self.consistent(true) {
                self.push(true);
                return true;
            }
        }
        false
    }
}

impl Iterator for PreorderEnumerator {
    type Item = Preorder;

    fn next(&mut self) -> Option<Preorder> {
        if self.finished {
            return None;
        }
        if self.started && !self.backtrack() {
            self.finished = true;
            return None;
        }
        self.started = true;
        while self.decided < self.pairs.len() {
            if self.consistent(false) {
                self.push(false);
            } else if self.consistent(true) {
                self.push(true);
            } else if !self.backtrack() {
                self.finished = true;
                return None;
            }
        }
        Some(Preorder {
            n: self.n,
            leq: self.leq.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mutual_reachability_classes(p: &Preorder) -> Vec<Vec<usize>> {
        // plain BFS reachability on the raw relation, independent of Tarjan
        let n = p.n();
        let reach = |s: usize| {
            let mut seen = vec![false; n];
            let mut queue = vec![s];
            seen[s] = true;
            while let Some(v) = queue.pop() {
                for w in 0..n {
                    if p.leq(v, w) && !seen[w] {
                        seen[w] = true;
                        queue.push(w);
                    }
                }
            }
            seen
        };
        let r: Vec<Vec<bool>> = (0..n).map(reach).collect();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if out.iter().any(|c| c.contains(&x)) {
                continue;
            }
            out.push((0..n).filter(|&y| r[x][y] && r[y][x]).collect());
        }
        out
    }

    #[test]
    fn closure_adds_transitive_pair() {
        let p = Preorder::build(3, &[(0, 1), (1, 2)], BuildMode::Closure).unwrap();
        assert!(p.leq(0, 2));
        assert!((0..3).all(|i| p.leq(i, i)));
        assert!(!p.leq(2, 0));
    }

    #[test]
    fn verify_reports_witness() {
        let err = Preorder::build(3, &[(0, 1), (1, 2)], BuildMode::Verify).unwrap_err();
        assert_eq!(err, PreorderError::NotTransitive { x: 0, y: 1, z: 2 });
    }

    #[test]
    fn verify_accepts_symmetric_pair() {
        let p = Preorder::build(2, &[(0, 1), (1, 0)], BuildMode::Verify).unwrap();
        assert_eq!(p.equivalence_classes().classes, vec![vec![0, 1]]);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(
            Preorder::build(0, &[], BuildMode::Closure),
            Err(PreorderError::Empty)
        );
        assert_eq!(
            Preorder::build(2, &[(0, 2)], BuildMode::Closure),
            Err(PreorderError::IndexOutOfRange { index: 2, n: 2 })
        );
    }

    #[test]
    fn closure_is_idempotent() {
        for p in enumerate_preorders(3).unwrap() {
            assert_eq!(p.closure(), p);
        }
    }

    #[test]
    fn classes_of_named_fixtures() {
        assert_eq!(
            Preorder::equality(3).equivalence_classes().classes,
            vec![vec![0], vec![1], vec![2]]
        );
        assert_eq!(
            Preorder::full(3).equivalence_classes().classes,
            vec![vec![0, 1, 2]]
        );
        let p = Preorder::build(3, &[(0, 1), (1, 0), (0, 2)], BuildMode::Closure).unwrap();
        let c = p.equivalence_classes();
        assert_eq!(c.classes, mutual_reachability_classes(&p));
        assert_eq!(c.classes, vec![vec![0, 1], vec![2]]);
        assert_eq!(c.representative(1), 2);
    }

    #[test]
    fn tarjan_matches_bfs_on_all_small_preorders() {
        for n in 1..=4 {
            for p in enumerate_preorders(n).unwrap() {
                assert_eq!(p.equivalence_classes().classes, mutual_reachability_classes(&p));
            }
        }
    }

    #[test]
    fn quotients() {
        let chain = Preorder::chain(3);
        assert_eq!(chain.quotient().as_preorder(), &chain);
        assert_eq!(Preorder::full(3).quotient().m(), 1);
        let p = Preorder::build(3, &[(0, 1), (1, 0), (0, 2)], BuildMode::Closure).unwrap();
        assert_eq!(p.quotient().into_preorder(), Preorder::chain(2));
    }

    #[test]
    fn intervals() {
        let chain = Preorder::chain(3);
        assert_eq!(chain.interval(0, 2).unwrap(), vec![0, 1, 2]);
        assert_eq!(
            chain.interval(2, 0),
            Err(PreorderError::NotComparable { x: 2, y: 0 })
        );
        let p = Preorder::build(3, &[(0, 1), (1, 0), (0, 2)], BuildMode::Closure).unwrap();
        assert_eq!(p.interval(0, 2).unwrap(), vec![0, 1, 2]);
        assert_eq!(p.interval(1, 1).unwrap(), vec![0, 1]);
    }

    #[test]
    fn interval_lengths() {
        let chain = Preorder::chain(3);
        assert_eq!(chain.interval_length(1, 1).unwrap(), 0);
        assert_eq!(chain.interval_length(0, 2).unwrap(), 2);
        let p = Preorder::build(3, &[(0, 1), (1, 0), (0, 2)], BuildMode::Closure).unwrap();
        assert_eq!(p.interval_length(0, 2).unwrap(), 1);
        assert_eq!(p.interval_length(0, 1).unwrap(), 0);
        assert!(p.interval_length(2, 0).is_err());
        // diamond 0 < 1,2 < 3 plus a shortcut chain: lengths take the longest route
        let d = Preorder::build(
            5,
            &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (0, 4)],
            BuildMode::Closure,
        )
        .unwrap();
        assert_eq!(d.interval_length(0, 4).unwrap(), 3);
    }

    #[test]
    fn zero_length_iff_equivalent() {
        for n in 1..=4 {
            for p in enumerate_preorders(n).unwrap() {
                let table = p.interval_lengths();
                for (x, y) in p.comparable_pairs() {
                    assert_eq!(table[x * n + y] == Some(0), p.equivalent(x, y));
                    assert_eq!(table[x * n + y], Some(p.interval_length(x, y).unwrap()));
                }
            }
        }
    }

    #[test]
    fn quotient_is_antisymmetric_and_compatible() {
        for n in 1..=4 {
            for p in enumerate_preorders(n).unwrap() {
                let q = p.quotient();
                assert!(q.as_preorder().is_antisymmetric());
                for x in 0..n {
                    for y in 0..n {
                        assert_eq!(q.leq(q.classes.class_of[x], q.classes.class_of[y]), p.leq(x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_bounds() {
        assert_eq!(enumerate_preorders(1).unwrap().count(), 1);
        assert_eq!(enumerate_preorders(2).unwrap().count(), 4);
        assert!(matches!(
            enumerate_preorders(5),
            Err(PreorderError::BoundExceeded { n: 5, bound: 4 })
        ));
        assert!(matches!(enumerate_preorders(0), Err(PreorderError::Empty)));
        assert_eq!(enumerate_preorders_bounded(5, 5).unwrap().count(), 6942);
    }
}
