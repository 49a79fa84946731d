//! Reduction of `IC(X)` to the incidence coalgebra of the quotient poset
//! through a basic idempotent `m ∈ C*`, and the dual reduction `eAe` on the
//! algebra side.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;
use thiserror::Error;

use crate::algebra::{AlgebraElem, StructMatrixAlgebra};
use crate::coalgebra::{Coalgebra, Elem, Functional, IncCoalgebra, TensorElem};
use crate::linalg::Rational;
use crate::preorder::{EquivClasses, Preorder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoritaError {
    #[error("expected one representative per class ({expected} classes), got {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("representative {0} is out of range")]
    OutOfRange(usize),
    #[error("representatives {0} and {1} lie in the same class")]
    SameClass(usize, usize),
    #[error("m * m != m under convolution")]
    NotIdempotent,
}

/// `m(e_{u,u}) = 1` for `u` in the chosen representatives, zero elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicIdempotent {
    representatives: Vec<usize>,
    m: Functional,
}

impl BasicIdempotent {
    /// Sorted representatives, one per class.
    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn functional(&self) -> &Functional {
        &self.m
    }
}

/// Builds the basic idempotent for the given system of representatives
/// (least element of each class when `None`) and checks `m * m = m`.
pub fn basic_idempotent(c: &IncCoalgebra, reps: Option<&[usize]>) -> Result<BasicIdempotent, MoritaError> {
    let classes = c.preorder().equivalence_classes();
    let mut representatives = match reps {
        None => classes.representatives(),
        Some(given) => validate_representatives(c.preorder(), &classes, given)?,
    };
    representatives.sort_unstable();
    let m = Functional::from_values(
        representatives
            .iter()
            .map(|&s| (c.index_of(s, s).expect("diagonal"), Rational::one()))
            .collect(),
    );
    if c.convolve(&m, &m) != m {
        return Err(MoritaError::NotIdempotent);
    }
    Ok(BasicIdempotent { representatives, m })
}

fn validate_representatives(
    p: &Preorder,
    classes: &EquivClasses,
    given: &[usize],
) -> Result<Vec<usize>, MoritaError> {
    if given.len() != classes.len() {
        return Err(MoritaError::WrongCount {
            expected: classes.len(),
            found: given.len(),
        });
    }
    let mut seen: Vec<Option<usize>> = vec![None; classes.len()];
    for &s in given {
        if s >= p.n() {
            return Err(MoritaError::OutOfRange(s));
        }
        let class = classes.class_of[s];
        if let Some(prev) = seen[class] {
            return Err(MoritaError::SameClass(prev, s));
        }
        seen[class] = Some(s);
    }
    Ok(given.to_vec())
}

/// Every system of representatives (one element from each class).
pub fn representative_systems(p: &Preorder) -> Vec<Vec<usize>> {
    p.equivalence_classes()
        .classes
        .iter()
        .fold(vec![Vec::new()], |acc, class| {
            acc.iter()
                .flat_map(|prefix| {
                    class.iter().map(move |&x| {
                        let mut next = prefix.clone();
                        next.push(x);
                        next
                    })
                })
                .collect()
        })
}

/// The coalgebra `m ⇀ C ↼ m` on its surviving basis `{e_{u,v} : u, v ∈ S}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedCoalgebra {
    pairs: Vec<(usize, usize)>,
    deltas: Vec<TensorElem>,
    counits: Vec<Rational>,
    class_of: Vec<usize>,
    representatives: Vec<usize>,
}

impl Coalgebra for ReducedCoalgebra {
    fn dim(&self) -> usize {
        self.pairs.len()
    }

    fn delta_basis(&self, i: usize) -> TensorElem {
        self.deltas[i].clone()
    }

    fn counit_basis(&self, i: usize) -> Rational {
        self.counits[i].clone()
    }
}

impl ReducedCoalgebra {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn index_of(&self, u: usize, v: usize) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (u, v))
    }
}

fn sandwich(c: &IncCoalgebra, m: &Functional, x: &Elem) -> Elem {
    c.right_action(&c.left_action(m, x), m)
}

/// `m ⇀ C ↼ m` with `Δ'(m⇀c↼m) = Σ (m⇀c_(1)↼m) ⊗ (m⇀c_(2)↼m)` and the
/// restricted counit.
pub fn reduce(c: &IncCoalgebra, m: &BasicIdempotent) -> ReducedCoalgebra {
    let f = &m.m;
    // basis elements whose sandwich survives; they are fixed by it
    let mut position = vec![None; c.dim()];
    let mut survivors = Vec::new();
    for k in 0..c.dim() {
        let e = Elem::single(k, Rational::one());
        let image = sandwich(c, f, &e);
        if !image.is_zero() {
            assert_eq!(image, e, "m ⇀ e ↼ m is e or 0 on the incidence basis");
            position[k] = Some(survivors.len());
            survivors.push(k);
        }
    }
    let project = |k: usize| -> Elem { sandwich(c, f, &Elem::single(k, Rational::one())) };
    let deltas = survivors
        .iter()
        .map(|&k| {
            let mut out = TensorElem::zero();
            for ((a, b), coef) in c.delta_basis(k).iter() {
                for (ka, ca) in project(*a).iter() {
                    for (kb, cb) in project(*b).iter() {
                        let left = position[*ka].expect("projection lands in survivors");
                        let right = position[*kb].expect("projection lands in survivors");
                        out.add_term((left, right), coef * ca * cb);
                    }
                }
            }
            out
        })
        .collect();
    let counits = survivors
        .iter()
        .map(|&k| c.counit(&Elem::single(k, Rational::one())))
        .collect();
    ReducedCoalgebra {
        pairs: survivors.iter().map(|&k| c.pair(k)).collect(),
        deltas,
        counits,
        class_of: c.preorder().equivalence_classes().class_of,
        representatives: m.representatives.clone(),
    }
}

/// Checks that `f(e_{u,v}) = e_{[u],[v]}` is a bijection onto the basis of
/// `quotient` that intertwines the coproducts and preserves counits.
pub fn iso_to_quotient_check(r: &ReducedCoalgebra, quotient: &IncCoalgebra) -> bool {
    if r.dim() != quotient.dim() {
        return false;
    }
    let image: Option<Vec<usize>> = r
        .pairs
        .iter()
        .map(|&(u, v)| quotient.index_of(r.class_of[u], r.class_of[v]))
        .collect();
    let Some(image) = image else { return false };
    let mut hit = vec![false; quotient.dim()];
    for &k in &image {
        if hit[k] {
            return false;
        }
        hit[k] = true;
    }
    (0..r.dim()).all(|i| {
        let mapped = r.delta_basis(i).map_keys(|&(a, b)| (image[a], image[b]));
        mapped == quotient.delta_basis(image[i]) && r.counit_basis(i) == quotient.counit_basis(image[i])
    })
}

/// Algebra-side reduction with the least-index representatives.
pub fn algebra_reduction_check(p: &Preorder) -> bool {
    algebra_reduction_check_with(p, &p.equivalence_classes().representatives())
}

/// Forms `e = Σ_{s ∈ S} e_{ss}`, computes `eAe` by multiplication, and
/// compares its structure constants with the structural matrix algebra of
/// the quotient poset under `u ↦ [u]`.
pub fn algebra_reduction_check_with(p: &Preorder, reps: &[usize]) -> bool {
    let a = StructMatrixAlgebra::new(p);
    let q = p.quotient();
    let aq = StructMatrixAlgebra::new(q.as_preorder());
    let class_of = &q.classes.class_of;
    let e: AlgebraElem = reps.iter().map(|&s| ((s, s), Rational::one())).collect();
    if a.multiply(&e, &e).ok().as_ref() != Some(&e) {
        return false;
    }
    let mut corner = Vec::new();
    for &(i, j) in a.basis() {
        let b = AlgebraElem::single((i, j), Rational::one());
        let ebe = a
            .multiply(&e, &b)
            .and_then(|eb| a.multiply(&eb, &e))
            .expect("pattern elements");
        if !ebe.is_zero() {
            if ebe != b {
                return false;
            }
            corner.push((i, j));
        }
    }
    if corner.len() != q.as_preorder().comparable_count() || corner.len() != aq.dim() {
        return false;
    }
    let to_quotient = |x: &AlgebraElem| x.map_keys(|&(i, j)| (class_of[i], class_of[j]));
    corner.iter().all(|&x| {
        corner.iter().all(|&y| {
            let bx = AlgebraElem::single(x, Rational::one());
            let by = AlgebraElem::single(y, Rational::one());
            let prod = a.multiply(&bx, &by).expect("pattern elements");
            let in_corner = prod.keys().all(|k| corner.contains(k));
            let image = aq.multiply(&to_quotient(&bx), &to_quotient(&by));
            in_corner && image.ok() == Some(to_quotient(&prod))
        })
    })
}
