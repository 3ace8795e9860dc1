//! Public hom-space surfaces: orthonormal bases, braid and bend operators
//! as matrices between bases.

use super::{enumerate_chains, State, Word};
use crate::anyon::{AnyonModel, Label};
use num_complex::Complex64 as C64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HomError {
    #[error("label index {0} out of range")]
    UnknownLabel(usize),
    #[error("position {0} out of range for word of length {1}")]
    IndexOutOfRange(usize, usize),
    #[error("cap requires adjacent dual labels at position {0}")]
    NonDualPair(usize),
}

/// Whether a basis spans `hom(1, w)` (kets) or `hom(w, 1)` (bras). Both
/// are indexed by the same admissible charge chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    OutOfUnit,
    IntoUnit,
}

/// Deterministic orthonormal fusion-tree basis of a hom space.
#[derive(Debug, Clone)]
pub struct HomBasis {
    pub word: Word,
    pub direction: Direction,
    pub trees: Vec<Vec<Label>>,
}

impl HomBasis {
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn state(&self, model: &AnyonModel, index: usize) -> State {
        State::basis(model, self.word.clone(), &self.trees[index])
    }
}

/// Matrix of a linear map between two hom bases; `matrix[row][col]`.
#[derive(Debug, Clone)]
pub struct LinearMap {
    pub domain: HomBasis,
    pub codomain: HomBasis,
    pub matrix: Vec<Vec<C64>>,
}

impl LinearMap {
    pub fn apply(&self, amps: &[C64]) -> Vec<C64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(amps).map(|(m, a)| m * a).sum())
            .collect()
    }

    pub fn unitarity_residual(&self) -> f64 {
        let n = self.matrix.len();
        let k = self.domain.len();
        let mut worst = 0.0f64;
        for i in 0..k {
            for j in 0..k {
                let mut s = C64::new(0.0, 0.0);
                for r in 0..n {
                    s += self.matrix[r][i].conj() * self.matrix[r][j];
                }
                let t = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - t).norm());
            }
        }
        worst
    }
}

/// The canonical basis of `hom(1, w)` or `hom(w, 1)`.
pub fn hom_basis(
    model: &AnyonModel,
    word: &[Label],
    direction: Direction,
) -> Result<HomBasis, HomError> {
    for &x in word {
        if x >= model.n_labels() {
            return Err(HomError::UnknownLabel(x));
        }
    }
    Ok(HomBasis {
        word: word.to_vec(),
        direction,
        trees: enumerate_chains(model, word),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidSign {
    Over,
    Under,
}

/// Matrix of `1 ⊗ … ⊗ c^{±1} ⊗ … ⊗ 1` braiding positions `p, p+1` of
/// `hom(1, w)`.
pub fn braid_map(
    model: &AnyonModel,
    word: &[Label],
    position: usize,
    sign: BraidSign,
) -> Result<LinearMap, HomError> {
    if position + 1 >= word.len() {
        return Err(HomError::IndexOutOfRange(position, word.len()));
    }
    let domain = hom_basis(model, word, Direction::OutOfUnit)?;
    let mut target = word.to_vec();
    target.swap(position, position + 1);
    let codomain = hom_basis(model, &target, Direction::OutOfUnit)?;
    let mut matrix = vec![vec![C64::new(0.0, 0.0); domain.len()]; codomain.len()];
    for (col, tree) in domain.trees.iter().enumerate() {
        let s = State::basis(model, word.to_vec(), tree);
        let out = s.braid(model, position, sign == BraidSign::Over);
        for (row, t) in codomain.trees.iter().enumerate() {
            matrix[row][col] = out.amps[out.chain_index(t).unwrap()];
        }
    }
    Ok(LinearMap {
        domain,
        codomain,
        matrix,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BendKind {
    /// Insert the pair `(X, X̄)` at the position.
    Cup(Label),
    /// Annihilate the adjacent dual pair at the position.
    Cap,
}

/// Matrix of an unnormalized duality bend on `hom(1, w)`: a cup inserts
/// `(X, X̄)`, a cap removes an adjacent dual pair; closing a free loop
/// multiplies the scalar by `d(X)`.
pub fn bend_map(
    model: &AnyonModel,
    word: &[Label],
    position: usize,
    kind: BendKind,
) -> Result<LinearMap, HomError> {
    let domain = hom_basis(model, word, Direction::OutOfUnit)?;
    let (codomain, build): (HomBasis, Box<dyn Fn(&State) -> State>) = match kind {
        BendKind::Cup(x) => {
            if position > word.len() {
                return Err(HomError::IndexOutOfRange(position, word.len()));
            }
            if x >= model.n_labels() {
                return Err(HomError::UnknownLabel(x));
            }
            let mut target = word.to_vec();
            target.insert(position, x);
            target.insert(position + 1, model.dual(x));
            let m = model.clone();
            (
                hom_basis(model, &target, Direction::OutOfUnit)?,
                Box::new(move |s: &State| s.cup(&m, position, x, false)),
            )
        }
        BendKind::Cap => {
            if position + 1 >= word.len() {
                return Err(HomError::IndexOutOfRange(position, word.len()));
            }
            if model.dual(word[position]) != word[position + 1] {
                return Err(HomError::NonDualPair(position));
            }
            let mut target = word.to_vec();
            target.remove(position + 1);
            target.remove(position);
            let m = model.clone();
            (
                hom_basis(model, &target, Direction::OutOfUnit)?,
                Box::new(move |s: &State| s.cap(&m, position, false)),
            )
        }
    };
    let mut matrix = vec![vec![C64::new(0.0, 0.0); domain.len()]; codomain.len()];
    for (col, tree) in domain.trees.iter().enumerate() {
        let s = State::basis(model, word.to_vec(), tree);
        let out = build(&s);
        for (row, t) in codomain.trees.iter().enumerate() {
            matrix[row][col] = out.amps[out.chain_index(t).unwrap()];
        }
    }
    Ok(LinearMap {
        domain,
        codomain,
        matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anyon::load_model;
    use crate::hom::hom_dim;

    #[test]
    fn basis_dimensions_match_oracle() {
        let m = load_model("fibonacci").unwrap();
        let b = hom_basis(&m, &[1, 1], Direction::OutOfUnit).unwrap();
        assert_eq!(b.len(), 1);
        let b = hom_basis(&m, &[1, 1, 1, 1], Direction::OutOfUnit).unwrap();
        assert_eq!(b.len(), 2);
        let b = hom_basis(&m, &[0], Direction::OutOfUnit).unwrap();
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn gram_matrices_are_identity() {
        for name in ["fibonacci", "ising", "z3"] {
            let m = load_model(name).unwrap();
            let words: Vec<Vec<usize>> = vec![
                vec![0],
                (0..m.n_labels()).map(|a| vec![a, m.dual(a)]).collect::<Vec<_>>()[0].clone(),
            ];
            for w in words {
                let b = hom_basis(&m, &w, Direction::OutOfUnit).unwrap();
                for i in 0..b.len() {
                    for j in 0..b.len() {
                        let si = b.state(&m, i);
                        let sj = b.state(&m, j);
                        let want = if i == j { 1.0 } else { 0.0 };
                        assert!((si.ip(&sj) - want).norm() < 1e-12, "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn braid_maps_are_unitary() {
        for name in ["fibonacci", "ising"] {
            let m = load_model(name).unwrap();
            let w = vec![1, 1, 1];
            for p in 0..2 {
                let bm = braid_map(&m, &w, p, BraidSign::Over).unwrap();
                assert!(bm.unitarity_residual() < 1e-10, "{name} at {p}");
            }
        }
    }

    #[test]
    fn abelian_braiding_is_a_phase() {
        let m = load_model("z3").unwrap();
        let w = vec![1, 2, 1, 2];
        for p in 0..3 {
            let bm = braid_map(&m, &w, p, BraidSign::Over).unwrap();
            // One-dimensional hom spaces: the matrix is a single phase.
            assert_eq!(bm.matrix.len(), 1);
            assert!((bm.matrix[0][0].norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn circle_value_is_quantum_dimension() {
        let m = load_model("fibonacci").unwrap();
        let cup = bend_map(&m, &[], 0, BendKind::Cup(1)).unwrap();
        let cap = bend_map(&m, &[1, 1], 0, BendKind::Cap).unwrap();
        let v = cap.apply(&cup.apply(&[C64::new(1.0, 0.0)]));
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((v[0] - phi).norm() < 1e-12);
        // Circle labeled by the unit evaluates to 1.
        let cup = bend_map(&m, &[], 0, BendKind::Cup(0)).unwrap();
        let cap = bend_map(&m, &[0, 0], 0, BendKind::Cap).unwrap();
        let v = cap.apply(&cup.apply(&[C64::new(1.0, 0.0)]));
        assert!((v[0] - 1.0).norm() < 1e-12);
    }

    #[test]
    fn cap_rejects_non_dual_pair() {
        let m = load_model("ising").unwrap();
        // (σ, ψ) is not a dual pair.
        assert!(matches!(
            bend_map(&m, &[1, 2], 0, BendKind::Cap),
            Err(HomError::NonDualPair(0))
        ));
    }

    #[test]
    fn hom_dims_match_fusion_matrix_powers() {
        use rand::{Rng, SeedableRng};
        for name in ["fibonacci", "ising", "z5"] {
            let m = load_model(name).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
            for _ in 0..20 {
                let len = rng.gen_range(1..=5);
                let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..m.n_labels())).collect();
                let b = hom_basis(&m, &w, Direction::OutOfUnit).unwrap();
                assert_eq!(b.len(), hom_dim(&m, &w), "{name} {w:?}");
            }
        }
    }
}
