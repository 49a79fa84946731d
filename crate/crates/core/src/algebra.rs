//! Structural matrix algebras `M(B, k)`: matrices supported on a preorder
//! pattern `B`, with the Frobenius decision and two decision-independent
//! oracles (Gram nondegeneracy of `λ(ab)`, and the trace-form radical).

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::coalgebra::{Coalgebra, CoalgebraError, Coideal, Elem, Functional, IncCoalgebra};
use crate::linalg::{self, LinalgError, Matrix, Rational, Subspace};
use crate::preorder::Preorder;
use crate::sparse::LinComb;

/// Algebra element as coefficients on matrix positions `(i, j)`.
pub type AlgebraElem = LinComb<(usize, usize)>;

/// Half-width of the integer range the Gram oracle samples from.
pub const ORACLE_SAMPLE_RADIUS: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("position ({i}, {j}) is outside the pattern")]
    PatternViolation { i: usize, j: usize },
    #[error("pattern is not a union of diagonal blocks; ({x}, {y}) is comparable one way only")]
    NotFrobenius { x: usize, y: usize },
    #[error("module is not local: its top has an endomorphism ring of dimension {endo_dim}")]
    NotLocal { endo_dim: usize },
    #[error("module is not spanned by the basis elements it contains")]
    NotBasisSupported,
    #[error("algebra and coalgebra come from different preorders")]
    PreorderMismatch,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Coalgebra(#[from] CoalgebraError),
}

/// `M(B, k)` with basis the matrix units `e_{ij}`, `(i, j) ∈ B`, in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructMatrixAlgebra {
    pattern: Preorder,
    basis: Vec<(usize, usize)>,
    index: Vec<Option<usize>>,
}

impl StructMatrixAlgebra {
    pub fn new(pattern: &Preorder) -> Self {
        let n = pattern.n();
        let basis: Vec<(usize, usize)> = pattern.comparable_pairs().collect();
        let mut index = vec![None; n * n];
        for (k, &(i, j)) in basis.iter().enumerate() {
            index[i * n + j] = Some(k);
        }
        let a = StructMatrixAlgebra {
            pattern: pattern.clone(),
            basis,
            index,
        };
        for &(i, j) in &a.basis {
            for &(k, l) in &a.basis {
                assert!(
                    j != k || a.index_of(i, l).is_some(),
                    "pattern not closed under products"
                );
            }
        }
        a
    }

    pub fn pattern(&self) -> &Preorder {
        &self.pattern
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(usize, usize)] {
        &self.basis
    }

    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        let n = self.pattern.n();
        if i >= n || j >= n {
            return None;
        }
        self.index[i * n + j]
    }

    /// `b_a · b_b` as a basis index, or `None` when the product is zero.
    pub fn basis_product(&self, a: usize, b: usize) -> Option<usize> {
        let (i, j) = self.basis[a];
        let (k, l) = self.basis[b];
        (j == k).then(|| self.index_of(i, l).expect("closed pattern"))
    }

    pub fn unit(&self) -> AlgebraElem {
        (0..self.pattern.n()).map(|i| ((i, i), Rational::one())).collect()
    }

    pub fn unit_matrix(&self, i: usize, j: usize) -> Result<AlgebraElem, AlgebraError> {
        self.index_of(i, j)
            .map(|_| AlgebraElem::single((i, j), Rational::one()))
            .ok_or(AlgebraError::PatternViolation { i, j })
    }

    fn check_support(&self, a: &AlgebraElem) -> Result<(), AlgebraError> {
        match a.keys().find(|&&(i, j)| self.index_of(i, j).is_none()) {
            Some(&(i, j)) => Err(AlgebraError::PatternViolation { i, j }),
            None => Ok(()),
        }
    }

    /// Matrix product, `e_{ij} e_{kl} = δ_{jk} e_{il}`.
    pub fn multiply(&self, a: &AlgebraElem, b: &AlgebraElem) -> Result<AlgebraElem, AlgebraError> {
        self.check_support(a)?;
        self.check_support(b)?;
        let mut out = AlgebraElem::zero();
        for (&(i, j), x) in a.iter() {
            for (&(k, l), y) in b.iter() {
                if j == k {
                    out.add_term((i, l), x * y);
                }
            }
        }
        Ok(out)
    }

    pub fn to_coords(&self, a: &AlgebraElem) -> Result<Vec<Rational>, AlgebraError> {
        self.check_support(a)?;
        let mut v = vec![Rational::zero(); self.dim()];
        for (&(i, j), c) in a.iter() {
            v[self.index_of(i, j).expect("checked support")] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coords(&self, v: &[Rational]) -> AlgebraElem {
        v.iter()
            .enumerate()
            .map(|(k, c)| (self.basis[k], c.clone()))
            .collect()
    }

    /// `G[a][b] = λ(b_a b_b)` for `λ` given by its values on the basis.
    pub fn gram_matrix(&self, lambda: &[Rational]) -> Result<Matrix, AlgebraError> {
        if lambda.len() != self.dim() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim(),
                found: lambda.len(),
            }
            .into());
        }
        let d = self.dim();
        let mut g = Matrix::zeros(d, d);
        for a in 0..d {
            for b in 0..d {
                if let Some(k) = self.basis_product(a, b) {
                    g.set(a, b, lambda[k].clone());
                }
            }
        }
        Ok(g)
    }

    /// Randomized Frobenius test: sample `λ` with integer values in
    /// `[-ORACLE_SAMPLE_RADIUS, ORACLE_SAMPLE_RADIUS]` and look for a
    /// nonsingular Gram matrix. A hit is a certificate; a miss after every
    /// trial is reported with its Schwartz-Zippel error bound.
    pub fn frobenius_oracle(&self, trials: usize, seed: u64) -> OracleVerdict {
        let d = self.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut performed = 0;
        let mut witness = None;
        while performed < trials.max(1) {
            performed += 1;
            let lambda: Vec<BigInt> = (0..d)
                .map(|_| BigInt::from(rng.gen_range(-ORACLE_SAMPLE_RADIUS..=ORACLE_SAMPLE_RADIUS)))
                .collect();
            let gram: Vec<Vec<BigInt>> = (0..d)
                .map(|a| {
                    (0..d)
                        .map(|b| match self.basis_product(a, b) {
                            Some(k) => lambda[k].clone(),
                            None => BigInt::zero(),
                        })
                        .collect()
                })
                .collect();
            let det = linalg::det_integer(&gram).expect("square gram matrix");
            if !det.is_zero() {
                witness = Some(lambda);
                break;
            }
        }
        let sample_size = BigInt::from(2 * ORACLE_SAMPLE_RADIUS + 1);
        let failure_bound: Rational = Pow::pow(Rational::new(BigInt::from(d), sample_size), performed);
        OracleVerdict {
            outcome: if witness.is_some() {
                OracleOutcome::Frobenius
            } else {
                OracleOutcome::ProbablyNotFrobenius
            },
            witness,
            trials: performed,
            failure_bound,
        }
    }

    /// Matrix of left multiplication by basis element `a` (column `b` holds
    /// the coordinates of `b_a b_b`).
    pub fn left_multiplication(&self, a: usize) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for b in 0..d {
            if let Some(k) = self.basis_product(a, b) {
                m.set(k, b, Rational::one());
            }
        }
        m
    }

    fn trace_of_left_multiplication(&self, a: usize) -> Rational {
        let m = self.left_multiplication(a);
        (0..self.dim()).fold(Rational::zero(), |acc, i| acc + m.get(i, i))
    }

    /// Jacobson radical via the trace form (characteristic zero):
    /// `{a : tr(L_{a b}) = 0 for every basis element b}`.
    pub fn radical_trace(&self) -> Subspace {
        let d = self.dim();
        let traces: Vec<Rational> = (0..d).map(|k| self.trace_of_left_multiplication(k)).collect();
        let mut form = Matrix::zeros(d, d);
        for a in 0..d {
            for b in 0..d {
                if let Some(k) = self.basis_product(a, b) {
                    form.set(b, a, traces[k].clone());
                }
            }
        }
        form.kernel()
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical_trace().is_zero()
    }

    fn check_same_preorder(&self, c: &IncCoalgebra) -> Result<(), AlgebraError> {
        if c.preorder() == &self.pattern {
            Ok(())
        } else {
            Err(AlgebraError::PreorderMismatch)
        }
    }

    /// The functional `Σ a_{ij} p_{i,j}` on `IC(X)` corresponding to `a`.
    pub fn as_functional(&self, c: &IncCoalgebra, coords: &[Rational]) -> Functional {
        let values = coords
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let (i, j) = self.basis[k];
                (c.index_of(i, j).expect("same pattern"), v.clone())
            })
            .collect();
        Functional::from_values(values)
    }

    fn act(&self, c: &IncCoalgebra, coords: &[Rational], v: &[Rational]) -> Vec<Rational> {
        c.to_dense(&c.left_action(&self.as_functional(c, coords), &Elem::from_dense(v)))
    }

    /// `J · M` for a right coideal `M` of `IC(X)`, viewed as a left module
    /// over `M(B, k) = IC(X)*`, with `J` the trace-form radical.
    pub fn module_radical(&self, c: &IncCoalgebra, m: &Coideal) -> Result<Subspace, AlgebraError> {
        self.check_same_preorder(c)?;
        let radical = self.radical_trace();
        let mut gens = Vec::new();
        for j in radical.basis() {
            for v in m.space().basis() {
                gens.push(self.act(c, j, v));
            }
        }
        Ok(Subspace::span(c.dim(), gens)?)
    }

    /// Dimension of `End_A(M / JM)`. Since `A / J` is split semisimple, the
    /// top `M / JM` is simple exactly when this is 1.
    fn top_endomorphism_dim(
        &self,
        c: &IncCoalgebra,
        m: &Subspace,
        jm: &Subspace,
    ) -> Result<usize, AlgebraError> {
        let dim = c.dim();
        // representatives of a basis of M/JM, taken among M's basis vectors
        let mut reps: Vec<Vec<Rational>> = Vec::new();
        let mut spanned = jm.clone();
        for v in m.basis() {
            if !spanned.contains(v)? {
                spanned = spanned.sum(&Subspace::span(dim, vec![v.clone()])?)?;
                reps.push(v.clone());
            }
        }
        let r = reps.len();
        if r == 0 {
            return Ok(0);
        }
        let columns: Vec<Vec<Rational>> = reps.iter().cloned().chain(jm.basis().iter().cloned()).collect();
        let solver = Matrix::from_rows(dim, columns)?.transpose();
        let mut equations: Vec<Vec<Rational>> = Vec::new();
        for a in 0..self.dim() {
            let coords = linalg::unit_vector(self.dim(), a);
            // action matrix of b_a on the top, column i = image of reps[i]
            let mut action = Matrix::zeros(r, r);
            for (i, rep) in reps.iter().enumerate() {
                let image = self.act(c, &coords, rep);
                let x = solver.solve(&image)?.expect("M is a submodule");
                for (k, value) in x.into_iter().take(r).enumerate() {
                    action.set(k, i, value);
                }
            }
            // T R - R T = 0, unknown T[i][k] at position i * r + k
            for i in 0..r {
                for j in 0..r {
                    let mut row = vec![Rational::zero(); r * r];
                    for k in 0..r {
                        row[i * r + k] += action.get(k, j);
                        row[k * r + j] -= action.get(i, k);
                    }
                    equations.push(row);
                }
            }
        }
        Ok(Matrix::from_rows(r * r, equations)?.kernel().dim())
    }

    /// Checks that a finite-dimensional, basis-supported, local right
    /// coideal `M` is generated by each of its basis elements outside
    /// `Jac(M) = J M`. Fails with [`AlgebraError::NotLocal`] when `M` has no
    /// unique maximal submodule.
    pub fn local_generation_check(&self, c: &IncCoalgebra, m: &Coideal) -> Result<bool, AlgebraError> {
        self.check_same_preorder(c)?;
        if !m.is_basis_supported() {
            return Err(AlgebraError::NotBasisSupported);
        }
        let jm = self.module_radical(c, m)?;
        let endo_dim = self.top_endomorphism_dim(c, m.space(), &jm)?;
        if endo_dim != 1 {
            return Err(AlgebraError::NotLocal { endo_dim });
        }
        for k in 0..c.dim() {
            let e = linalg::unit_vector(c.dim(), k);
            if !m.space().contains(&e)? || jm.contains(&e)? {
                continue;
            }
            let generated = c.generated_subcomodule(&Elem::single(k, Rational::one()));
            if generated.space() != m.space() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Convolution on `IC(X)*` agrees with the matrix-unit product under
    /// `p_{x,y} ↔ e_{x,y}`, and `ε` corresponds to the unit.
    pub fn dual_pairing_check(&self, c: &IncCoalgebra) -> bool {
        if self.check_same_preorder(c).is_err() {
            return false;
        }
        let to_functional = |a: &AlgebraElem| {
            Functional::from_values(a.map_keys(|&(i, j)| c.index_of(i, j).expect("same pattern")))
        };
        if to_functional(&self.unit()) != c.counit_functional() {
            return false;
        }
        self.basis.iter().all(|&(i, j)| {
            self.basis.iter().all(|&(k, l)| {
                let a = AlgebraElem::single((i, j), Rational::one());
                let b = AlgebraElem::single((k, l), Rational::one());
                let product = self.multiply(&a, &b).expect("basis elements");
                let conv = c.convolve(&to_functional(&a), &to_functional(&b));
                conv == to_functional(&product)
            })
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleOutcome {
    Frobenius,
    ProbablyNotFrobenius,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub outcome: OracleOutcome,
    /// Values of `λ` on the basis with `det G_λ ≠ 0`.
    pub witness: Option<Vec<BigInt>>,
    /// Number of samples drawn.
    pub trials: usize,
    /// `(dim A / sample size)^trials`.
    pub failure_bound: Rational,
}

impl OracleVerdict {
    pub fn is_frobenius(&self) -> bool {
        self.outcome == OracleOutcome::Frobenius
    }
}

/// Outcome of the structural Frobenius decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    /// The pattern is `(I_1 × I_1) ∪ … ∪ (I_r × I_r)`; blocks are the classes of `~`.
    Frobenius { blocks: Vec<Vec<usize>> },
    /// `x ≤ y` but not `y ≤ x` for this (lexicographically least) pair.
    NotFrobenius { counterexample: (usize, usize) },
}

impl Decision {
    pub fn is_frobenius(&self) -> bool {
        matches!(self, Decision::Frobenius { .. })
    }

    pub fn partition(&self) -> Option<&[Vec<usize>]> {
        match self {
            Decision::Frobenius { blocks } => Some(blocks),
            Decision::NotFrobenius { .. } => None,
        }
    }

    pub fn counterexample(&self) -> Option<(usize, usize)> {
        match self {
            Decision::Frobenius { .. } => None,
            Decision::NotFrobenius { counterexample } => Some(*counterexample),
        }
    }

    /// Sorted block sizes `n_1 ≤ … ≤ n_r`; empty when not Frobenius.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.partition().unwrap_or(&[]).iter().map(Vec::len).collect();
        sizes.sort_unstable();
        sizes
    }
}

/// `M(B, k)` is Frobenius iff every comparable pair is comparable both ways;
/// then it is `M_{n_1}(k) × … × M_{n_r}(k)` over the classes of `~`.
pub fn frobenius_decide(p: &Preorder) -> Decision {
    match p.comparable_pairs().find(|&(x, y)| !p.leq(y, x)) {
        Some(counterexample) => Decision::NotFrobenius { counterexample },
        None => Decision::Frobenius {
            blocks: p.equivalence_classes().classes,
        },
    }
}

/// Sorted block sizes of a Frobenius pattern, checked against `Σ n_i² = |B|`.
pub fn block_decomposition(p: &Preorder) -> Result<Vec<usize>, AlgebraError> {
    let decision = frobenius_decide(p);
    if let Some((x, y)) = decision.counterexample() {
        return Err(AlgebraError::NotFrobenius { x, y });
    }
    let sizes = decision.block_sizes();
    assert_eq!(
        sizes.iter().map(|s| s * s).sum::<usize>(),
        p.comparable_count(),
        "block sizes must account for the whole pattern"
    );
    Ok(sizes)
}

/// Permutation listing the elements class by class: `order[new] = old`.
pub fn block_order(p: &Preorder) -> Vec<usize> {
    p.equivalence_classes().classes.concat()
}

/// For a Frobenius pattern, relabels rows and columns class by class and
/// checks that the result is exactly the block-diagonal pattern with
/// contiguous full blocks, and that the relabeling preserves every product
/// of basis elements.
pub fn block_conjugation_check(p: &Preorder) -> Result<bool, AlgebraError> {
    let sizes_in_order: Vec<usize> = match frobenius_decide(p) {
        Decision::Frobenius { blocks } => blocks.iter().map(Vec::len).collect(),
        Decision::NotFrobenius {
            counterexample: (x, y),
        } => return Err(AlgebraError::NotFrobenius { x, y }),
    };
    let n = p.n();
    let order = block_order(p);
    let mut position = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let mut block_pairs = Vec::new();
    let mut start = 0;
    for size in sizes_in_order {
        for i in start..start + size {
            for j in start..start + size {
                block_pairs.push((i, j));
            }
        }
        start += size;
    }
    let block_pattern =
        Preorder::build(n, &block_pairs, crate::preorder::BuildMode::Verify).expect("blocks are transitive");
    let mut permuted_pairs: Vec<(usize, usize)> = p
        .comparable_pairs()
        .map(|(i, j)| (position[i], position[j]))
        .collect();
    permuted_pairs.sort_unstable();
    let target: Vec<(usize, usize)> = block_pattern.comparable_pairs().collect();
    if permuted_pairs != target {
        return Ok(false);
    }
    let source = StructMatrixAlgebra::new(p);
    let blocks = StructMatrixAlgebra::new(&block_pattern);
    let relabel = |a: &AlgebraElem| a.map_keys(|&(i, j)| (position[i], position[j]));
    for &(i, j) in source.basis() {
        for &(k, l) in source.basis() {
            let a = AlgebraElem::single((i, j), Rational::one());
            let b = AlgebraElem::single((k, l), Rational::one());
            let lhs = relabel(&source.multiply(&a, &b)?);
            let rhs = blocks.multiply(&relabel(&a), &relabel(&b))?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::preorder::{enumerate_preorders, BuildMode};

    fn blocks_01_2() -> Preorder {
        Preorder::build(3, &[(0, 1), (1, 0)], BuildMode::Verify).unwrap()
    }

    /// Leibniz expansion; independent of elimination.
    fn leibniz_det(m: &Matrix) -> Rational {
        fn perms(k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(k - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, k - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.rows();
        perms(n).into_iter().fold(Rational::zero(), |acc, p| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let term = (0..n).fold(Rational::one(), |t, i| t * m.get(i, p[i]));
            if inversions % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        })
    }

    #[test]
    fn construction() {
        assert_eq!(StructMatrixAlgebra::new(&Preorder::chain(3)).dim(), 6);
        assert_eq!(StructMatrixAlgebra::new(&Preorder::full(3)).dim(), 9);
        let diag = StructMatrixAlgebra::new(&Preorder::equality(3));
        assert_eq!(diag.basis(), &[(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn products() {
        let a = StructMatrixAlgebra::new(&Preorder::chain(3));
        let e01 = a.unit_matrix(0, 1).unwrap();
        let e12 = a.unit_matrix(1, 2).unwrap();
        assert_eq!(a.multiply(&e01, &e12).unwrap(), a.unit_matrix(0, 2).unwrap());
        assert!(a.multiply(&e01, &e01).unwrap().is_zero());
        let x: AlgebraElem = [((0, 1), rat(3)), ((1, 1), rat(-2)), ((0, 2), rat(5))]
            .into_iter()
            .collect();
        assert_eq!(a.multiply(&a.unit(), &x).unwrap(), x);
        assert_eq!(a.multiply(&x, &a.unit()).unwrap(), x);
        let outside = AlgebraElem::single((2, 0), rat(1));
        assert_eq!(
            a.multiply(&outside, &x),
            Err(AlgebraError::PatternViolation { i: 2, j: 0 })
        );
    }

    #[test]
    fn associativity_on_basis_triples() {
        for p in enumerate_preorders(3).unwrap() {
            let a = StructMatrixAlgebra::new(&p);
            for x in 0..a.dim() {
                for y in 0..a.dim() {
                    for z in 0..a.dim() {
                        let left = a.basis_product(x, y).and_then(|xy| a.basis_product(xy, z));
                        let right = a.basis_product(y, z).and_then(|yz| a.basis_product(x, yz));
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn gram_examples() {
        let full = StructMatrixAlgebra::new(&Preorder::full(2));
        let trace: Vec<Rational> = full.basis().iter().map(|&(i, j)| rat((i == j) as i64)).collect();
        let det = full.gram_matrix(&trace).unwrap().det().unwrap();
        assert!(det == rat(1) || det == rat(-1));

        let diag = StructMatrixAlgebra::new(&Preorder::equality(2));
        assert_eq!(diag.gram_matrix(&[rat(1), rat(1)]).unwrap(), Matrix::identity(2));

        // chain2: det G_λ has degree <= 1 in each variable, so vanishing on
        // the grid {0,1,2}^3 means it vanishes identically
        let chain = StructMatrixAlgebra::new(&Preorder::chain(2));
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let g = chain.gram_matrix(&[rat(a), rat(b), rat(c)]).unwrap();
                    assert_eq!(leibniz_det(&g), rat(0));
                    assert_eq!(g.det().unwrap(), rat(0));
                }
            }
        }
        assert!(chain.gram_matrix(&[rat(1)]).is_err());
    }

    #[test]
    fn gram_det_matches_leibniz() {
        let a = StructMatrixAlgebra::new(&blocks_01_2());
        let lambda: Vec<Rational> = (0..a.dim()).map(|k| rat(2 * k as i64 - 3)).collect();
        let g = a.gram_matrix(&lambda).unwrap();
        assert_eq!(g.det().unwrap(), leibniz_det(&g));
        assert_ne!(leibniz_det(&g), rat(0));
    }

    #[test]
    fn oracle_examples() {
        let full = StructMatrixAlgebra::new(&Preorder::full(2)).frobenius_oracle(20, 0);
        assert!(full.is_frobenius());
        assert_eq!(full.trials, 1);
        assert!(full.witness.is_some());

        let chain = StructMatrixAlgebra::new(&Preorder::chain(2)).frobenius_oracle(20, 7);
        assert_eq!(chain.outcome, OracleOutcome::ProbablyNotFrobenius);
        assert_eq!(chain.trials, 20);
        assert!(chain.witness.is_none());
        let expected: Rational = Pow::pow(Rational::new(BigInt::from(3), BigInt::from(2_000_001)), 20usize);
        assert_eq!(chain.failure_bound, expected);

        assert!(StructMatrixAlgebra::new(&Preorder::equality(3))
            .frobenius_oracle(20, 0)
            .is_frobenius());
        // same seed, same verdict
        let again = StructMatrixAlgebra::new(&Preorder::full(2)).frobenius_oracle(20, 0);
        assert_eq!(again, full);
    }

    #[test]
    fn radicals() {
        let chain = StructMatrixAlgebra::new(&Preorder::chain(2));
        let rad = chain.radical_trace();
        let e01 = chain.to_coords(&chain.unit_matrix(0, 1).unwrap()).unwrap();
        assert_eq!(rad, Subspace::span(3, vec![e01]).unwrap());
        assert!(!chain.is_semisimple());
        assert!(StructMatrixAlgebra::new(&Preorder::full(2)).is_semisimple());
        assert!(StructMatrixAlgebra::new(&Preorder::equality(3)).is_semisimple());
    }

    #[test]
    fn radical_is_two_sided_ideal() {
        for p in enumerate_preorders(3).unwrap() {
            let a = StructMatrixAlgebra::new(&p);
            let rad = a.radical_trace();
            for r in rad.basis() {
                let x = a.from_coords(r);
                for &(i, j) in a.basis() {
                    let b = a.unit_matrix(i, j).unwrap();
                    for prod in [a.multiply(&x, &b).unwrap(), a.multiply(&b, &x).unwrap()] {
                        assert!(rad.contains(&a.to_coords(&prod).unwrap()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn decisions() {
        let d = frobenius_decide(&blocks_01_2());
        assert!(d.is_frobenius());
        assert_eq!(d.partition().unwrap(), &[vec![0, 1], vec![2]]);
        assert_eq!(d.block_sizes(), vec![1, 2]);

        let d = frobenius_decide(&Preorder::chain(2));
        assert_eq!(
            d,
            Decision::NotFrobenius {
                counterexample: (0, 1)
            }
        );
        assert_eq!(d.block_sizes(), Vec::<usize>::new());

        assert_eq!(frobenius_decide(&Preorder::equality(4)).block_sizes(), vec![1; 4]);
    }

    #[test]
    fn block_decompositions() {
        assert_eq!(block_decomposition(&blocks_01_2()).unwrap(), vec![1, 2]);
        assert_eq!(
            block_decomposition(&Preorder::equality(4)).unwrap(),
            vec![1, 1, 1, 1]
        );
        assert_eq!(block_decomposition(&Preorder::full(3)).unwrap(), vec![3]);
        assert_eq!(
            block_decomposition(&Preorder::chain(3)),
            Err(AlgebraError::NotFrobenius { x: 0, y: 1 })
        );
        // blocks {0,2} and {1}: not contiguous until relabeled
        let p = Preorder::build(3, &[(0, 2), (2, 0)], BuildMode::Verify).unwrap();
        assert_eq!(block_order(&p), vec![0, 2, 1]);
        assert!(block_conjugation_check(&p).unwrap());
    }

    #[test]
    fn dual_pairing() {
        let p = Preorder::chain(3);
        let a = StructMatrixAlgebra::new(&p);
        let c = IncCoalgebra::new(&p);
        assert!(a.dual_pairing_check(&c));
        let p01 = c.p(0, 1).unwrap();
        assert_eq!(c.convolve(&p01, &c.p(1, 2).unwrap()), c.p(0, 2).unwrap());
        assert!(c.convolve(&p01, &p01).is_zero());
        assert!(!a.dual_pairing_check(&IncCoalgebra::new(&Preorder::chain(2))));
    }

    #[test]
    fn module_radical_and_local_generation() {
        let p = Preorder::chain(3);
        let a = StructMatrixAlgebra::new(&p);
        let c = IncCoalgebra::new(&p);
        let e0 = c.injective_envelope(0).unwrap();
        let jm = a.module_radical(&c, &e0).unwrap();
        let expected = Subspace::coordinate(c.dim(), [c.index_of(0, 0).unwrap(), c.index_of(0, 1).unwrap()]);
        assert_eq!(jm, expected);
        assert_eq!(a.local_generation_check(&c, &e0), Ok(true));
        let s1 = c.simple_comodule(1).unwrap();
        assert!(a.module_radical(&c, &s1).unwrap().is_zero());
        assert_eq!(a.local_generation_check(&c, &s1), Ok(true));

        let full = Preorder::full(2);
        let (a, c) = (StructMatrixAlgebra::new(&full), IncCoalgebra::new(&full));
        assert_eq!(
            a.local_generation_check(&c, &c.injective_envelope(0).unwrap()),
            Ok(true)
        );

        // 0 < 1, 0 < 2 with 1, 2 incomparable: E_0 has two maximal submodules
        let vee = Preorder::build(3, &[(0, 1), (0, 2)], BuildMode::Verify).unwrap();
        let (a, c) = (StructMatrixAlgebra::new(&vee), IncCoalgebra::new(&vee));
        assert_eq!(
            a.local_generation_check(&c, &c.injective_envelope(0).unwrap()),
            Err(AlgebraError::NotLocal { endo_dim: 2 })
        );
        // the whole coalgebra of the discrete order is a sum of non-isomorphic simples
        let eq = Preorder::equality(2);
        let (a, c) = (StructMatrixAlgebra::new(&eq), IncCoalgebra::new(&eq));
        assert!(matches!(
            a.local_generation_check(&c, &c.whole()),
            Err(AlgebraError::NotLocal { .. })
        ));
    }
}
