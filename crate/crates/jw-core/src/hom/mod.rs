//! Fusion-tree state calculus.
//!
//! A vector in `hom(1, w)` for a word `w = (X_1, …, X_k)` is stored as
//! amplitudes over admissible charge chains `(c_1, …, c_k)` with `c_0 = 1`,
//! `c_j ∈ channels(c_{j-1}, X_j)` and `c_k = 1` (the left-combed
//! orthonormal tree basis). All operations are generated by five local
//! moves — split, merge, braid, cup, cap — whose coefficients come from the
//! model's F/R tables. Duality bends carry explicit `√d` weights so a free
//! loop evaluates to `d(X)`; the per-label bend phase `κ(X)` keeps zig-zags
//! exactly the identity (it is −1 for labels with negative
//! Frobenius–Schur indicator, such as the semion).

mod dual;
mod ops;

pub use dual::{
    apply_hom_op, dual_structure, frobenius_lift, frobenius_unlift, resolution_of_identity,
    resolution_residual, rho_pi, rotate_back_to_front, rotate_front_to_back, star, theta_c,
    DualKind,
};
pub use ops::{
    bend_map, braid_map, hom_basis, BendKind, BraidSign, Direction, HomBasis, HomError, LinearMap,
};

use crate::anyon::{AnyonModel, Label};
use num_complex::Complex64 as C64;

pub type Word = Vec<Label>;

/// Reversed and dualized word, the boundary of `θ_C`-type reflections.
pub fn dual_reverse(model: &AnyonModel, w: &[Label]) -> Word {
    w.iter().rev().map(|&x| model.dual(x)).collect()
}

/// Enumerate admissible chains for `w`, lexicographically ordered.
/// Each chain lists the running charges `(c_1, …, c_k)`; the final charge
/// is required to be the unit.
pub fn enumerate_chains(model: &AnyonModel, w: &[Label]) -> Vec<Vec<Label>> {
    let mut out = Vec::new();
    let mut chain: Vec<Label> = Vec::with_capacity(w.len());
    fn rec(
        model: &AnyonModel,
        w: &[Label],
        pos: usize,
        prev: Label,
        chain: &mut Vec<Label>,
        out: &mut Vec<Vec<Label>>,
    ) {
        if pos == w.len() {
            if prev == model.unit() {
                out.push(chain.clone());
            }
            return;
        }
        for c in 0..model.n_labels() {
            if model.rules.admissible(prev, w[pos], c) {
                chain.push(c);
                rec(model, w, pos + 1, c, chain, out);
                chain.pop();
            }
        }
    }
    rec(model, w, 0, model.unit(), &mut chain, &mut out);
    out
}

/// `dim hom(1, w)` by dynamic programming, the counting oracle used by
/// basis tests.
pub fn hom_dim(model: &AnyonModel, w: &[Label]) -> usize {
    let mut cur = vec![0usize; model.n_labels()];
    cur[model.unit()] = 1;
    for &x in w {
        let mut next = vec![0usize; model.n_labels()];
        for a in 0..model.n_labels() {
            if cur[a] == 0 {
                continue;
            }
            for c in model.rules.channels(a, x) {
                next[c] += cur[a];
            }
        }
        cur = next;
    }
    cur[model.unit()]
}

/// A vector in `hom(1, word)` in the chain basis.
#[derive(Debug, Clone)]
pub struct State {
    pub word: Word,
    pub chains: Vec<Vec<Label>>,
    pub amps: Vec<C64>,
}

impl State {
    /// The zero-strand scalar state.
    pub fn scalar(value: C64) -> State {
        State {
            word: Vec::new(),
            chains: vec![Vec::new()],
            amps: vec![value],
        }
    }

    pub fn zero(model: &AnyonModel, word: Word) -> State {
        let chains = enumerate_chains(model, &word);
        let amps = vec![C64::new(0.0, 0.0); chains.len()];
        State { word, chains, amps }
    }

    /// Basis state for one chain.
    pub fn basis(model: &AnyonModel, word: Word, chain: &[Label]) -> State {
        let mut s = State::zero(model, word);
        let i = s.chain_index(chain).expect("chain must be admissible");
        s.amps[i] = C64::new(1.0, 0.0);
        s
    }

    pub fn dim(&self) -> usize {
        self.chains.len()
    }

    pub fn chain_index(&self, chain: &[Label]) -> Option<usize> {
        self.chains.binary_search_by(|c| c.as_slice().cmp(chain)).ok()
    }

    /// Scalar value; the word must be empty or all-unit.
    pub fn scalar_value(&self, model: &AnyonModel) -> C64 {
        assert!(
            self.word.iter().all(|&x| x == model.unit()),
            "state still has non-unit strands: {:?}",
            self.word
        );
        self.amps.iter().copied().sum()
    }

    /// Inner product, linear in `self`, conjugate-linear in `other`.
    pub fn ip(&self, other: &State) -> C64 {
        debug_assert_eq!(self.word, other.word);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.ip(self).re.sqrt()
    }

    pub fn scale(&mut self, z: C64) {
        for a in &mut self.amps {
            *a *= z;
        }
    }

    pub fn add_scaled(&mut self, other: &State, z: C64) {
        debug_assert_eq!(self.word, other.word);
        for (a, b) in self.amps.iter_mut().zip(&other.amps) {
            *a += z * b;
        }
    }

    pub fn conj_amps(&mut self) {
        for a in &mut self.amps {
            *a = a.conj();
        }
    }

    /// Tensor product; both factors end at the unit charge so chains
    /// concatenate directly.
    pub fn tensor(&self, model: &AnyonModel, other: &State) -> State {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        let mut out = State::zero(model, word);
        for (i, ci) in self.chains.iter().enumerate() {
            if self.amps[i].norm_sqr() == 0.0 {
                continue;
            }
            for (j, cj) in other.chains.iter().enumerate() {
                let amp = self.amps[i] * other.amps[j];
                if amp.norm_sqr() == 0.0 {
                    continue;
                }
                let mut chain = ci.clone();
                chain.extend_from_slice(cj);
                let k = out.chain_index(&chain).expect("concatenated chain");
                out.amps[k] += amp;
            }
        }
        out
    }

    fn charge_before(&self, chain: &[Label], p: usize, model: &AnyonModel) -> Label {
        if p == 0 {
            model.unit()
        } else {
            chain[p - 1]
        }
    }

    /// Split slot `p` (label `c`) into the pair `(a, b)` through the
    /// canonical vertex; requires `N(a,b;c) = 1`.
    pub fn split(&self, model: &AnyonModel, p: usize, a: Label, b: Label) -> State {
        let c = self.word[p];
        assert!(model.rules.admissible(a, b, c), "inadmissible split");
        let mut word = self.word.clone();
        word[p] = a;
        word.insert(p + 1, b);
        let mut out = State::zero(model, word);
        for (i, chain) in self.chains.iter().enumerate() {
            let amp = self.amps[i];
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            let prev = self.charge_before(chain, p, model);
            let after = chain[p];
            for x in model.rules.channels(prev, a) {
                let coeff = model.f(prev, a, b, after, x, c).conj();
                if coeff.norm_sqr() == 0.0 {
                    continue;
                }
                let mut nc = chain.clone();
                nc[p] = x;
                nc.insert(p + 1, after);
                if let Some(k) = out.chain_index(&nc) {
                    out.amps[k] += amp * coeff;
                }
            }
        }
        out
    }

    /// Merge the pair at `(p, p+1)` into label `c` through the canonical
    /// vertex (adjoint of [`State::split`]).
    pub fn merge(&self, model: &AnyonModel, p: usize, c: Label) -> State {
        let (a, b) = (self.word[p], self.word[p + 1]);
        assert!(model.rules.admissible(a, b, c), "inadmissible merge");
        let mut word = self.word.clone();
        word[p] = c;
        word.remove(p + 1);
        let mut out = State::zero(model, word);
        for (i, chain) in self.chains.iter().enumerate() {
            let amp = self.amps[i];
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            let prev = self.charge_before(chain, p, model);
            let x = chain[p];
            let after = chain[p + 1];
            let coeff = model.f(prev, a, b, after, x, c);
            if coeff.norm_sqr() == 0.0 {
                continue;
            }
            let mut nc = chain.clone();
            nc[p] = after;
            nc.remove(p + 1);
            if let Some(k) = out.chain_index(&nc) {
                out.amps[k] += amp * coeff;
            }
        }
        out
    }

    /// Braid adjacent slots `(p, p+1)`. `over` braids the left strand over
    /// the right one; `!over` is the inverse crossing.
    pub fn braid(&self, model: &AnyonModel, p: usize, over: bool) -> State {
        let (a, b) = (self.word[p], self.word[p + 1]);
        let mut word = self.word.clone();
        word.swap(p, p + 1);
        let mut out = State::zero(model, word);
        for (i, chain) in self.chains.iter().enumerate() {
            let amp = self.amps[i];
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            let prev = self.charge_before(chain, p, model);
            let after = chain[p + 1];
            let x = chain[p];
            // Channel decomposition, R-phase, channel recomposition.
            for g in model.rules.channels(a, b) {
                let to_channel = model.f(prev, a, b, after, x, g);
                if to_channel.norm_sqr() == 0.0 {
                    continue;
                }
                let phase = if over {
                    model.r(a, b, g)
                } else {
                    model.r(b, a, g).conj()
                };
                for y in model.rules.channels(prev, b) {
                    let back = model.f(prev, b, a, after, y, g).conj();
                    if back.norm_sqr() == 0.0 {
                        continue;
                    }
                    let mut nc = chain.clone();
                    nc[p] = y;
                    if let Some(k) = out.chain_index(&nc) {
                        out.amps[k] += amp * to_channel * phase * back;
                    }
                }
            }
        }
        out
    }

    /// Insert the duality pair `(A, Ā)` at positions `(p, p+1)` with weight
    /// `√d_A`; a `flagged` bend (strand rising on the right) additionally
    /// carries the bend phase κ.
    pub fn cup(&self, model: &AnyonModel, p: usize, a: Label, flagged: bool) -> State {
        let ad = model.dual(a);
        let mut word = self.word.clone();
        word.insert(p, a);
        word.insert(p + 1, ad);
        let mut out = State::zero(model, word);
        let weight = C64::new(model.d(a).sqrt(), 0.0)
            * if flagged {
                bend_phase(model, a)
            } else {
                C64::new(1.0, 0.0)
            };
        for (i, chain) in self.chains.iter().enumerate() {
            let amp = self.amps[i];
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            let c = self.charge_before(chain, p, model);
            for x in model.rules.channels(c, a) {
                let coeff = model.f(c, a, ad, c, x, model.unit()).conj();
                if coeff.norm_sqr() == 0.0 {
                    continue;
                }
                let mut nc = chain.clone();
                nc.insert(p, x);
                nc.insert(p + 1, c);
                if let Some(k) = out.chain_index(&nc) {
                    out.amps[k] += amp * weight * coeff;
                }
            }
        }
        out
    }

    /// Annihilate the duality pair at `(p, p+1)` (labels must be `(A, Ā)`),
    /// the adjoint of [`State::cup`]. Components where the ambient charge
    /// does not return are killed, as the duality morphism demands.
    pub fn cap(&self, model: &AnyonModel, p: usize, flagged: bool) -> State {
        let a = self.word[p];
        let ad = self.word[p + 1];
        assert_eq!(model.dual(a), ad, "cap requires adjacent dual labels");
        let mut word = self.word.clone();
        word.remove(p + 1);
        word.remove(p);
        let mut out = State::zero(model, word);
        let weight = C64::new(model.d(a).sqrt(), 0.0)
            * if flagged {
                bend_phase(model, a).conj()
            } else {
                C64::new(1.0, 0.0)
            };
        for (i, chain) in self.chains.iter().enumerate() {
            let amp = self.amps[i];
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            let c = self.charge_before(chain, p, model);
            if chain[p + 1] != c {
                continue;
            }
            let x = chain[p];
            let coeff = model.f(c, a, ad, c, x, model.unit());
            if coeff.norm_sqr() == 0.0 {
                continue;
            }
            let mut nc = chain.clone();
            nc.remove(p + 1);
            nc.remove(p);
            if let Some(k) = out.chain_index(&nc) {
                out.amps[k] += amp * weight * coeff;
            }
        }
        out
    }

    /// Insert a unit strand at `p` (pure reindexing).
    pub fn insert_unit(&self, model: &AnyonModel, p: usize) -> State {
        let mut word = self.word.clone();
        word.insert(p, model.unit());
        let mut out = State::zero(model, word);
        for (i, chain) in self.chains.iter().enumerate() {
            let c = self.charge_before(chain, p, model);
            let mut nc = chain.clone();
            nc.insert(p, c);
            let k = out.chain_index(&nc).expect("unit insertion");
            out.amps[k] += self.amps[i];
        }
        out
    }

    /// Remove a unit strand at `p`.
    pub fn remove_unit(&self, model: &AnyonModel, p: usize) -> State {
        assert_eq!(self.word[p], model.unit());
        let mut word = self.word.clone();
        word.remove(p);
        let mut out = State::zero(model, word);
        for (i, chain) in self.chains.iter().enumerate() {
            let mut nc = chain.clone();
            nc.remove(p);
            let k = out.chain_index(&nc).expect("unit removal");
            out.amps[k] += self.amps[i];
        }
        out
    }

    /// Insert the splitting cascade of a `hom(1, u)` vector at position `p`
    /// (the morphism `1 ⊗ v ⊗ 1`).
    pub fn apply_ket(&self, model: &AnyonModel, p: usize, v: &State) -> State {
        let mut sum: Option<State> = None;
        for (t, chain) in v.chains.iter().enumerate() {
            let lambda = v.amps[t];
            if lambda.norm_sqr() == 0.0 {
                continue;
            }
            // Build the chain's comb: insert a unit slot, then split off
            // letters left to right.
            let mut s = self.insert_unit(model, p);
            // The running charge slot sits at p + offset as letters peel off.
            let n = v.word.len();
            for j in (0..n).rev() {
                // Split the running slot (currently the chain charge c_{j+1})
                // into (c_j, u_{j+1}); after the loop the leading unit is
                // dropped.
                let cj = if j == 0 { model.unit() } else { chain[j - 1] };
                s = s.split(model, p, cj, v.word[j]);
            }
            s = s.remove_unit(model, p);
            let mut s = s;
            s.scale(lambda);
            match &mut sum {
                None => sum = Some(s),
                Some(acc) => acc.add_scaled(&s, C64::new(1.0, 0.0)),
            }
        }
        sum.unwrap_or_else(|| {
            let mut word = self.word.clone();
            for (off, &x) in v.word.iter().enumerate() {
                word.insert(p + off, x);
            }
            State::zero(model, word)
        })
    }

    /// Contract the sub-word `[p, p+len)` against the bra `v†` of a
    /// `hom(1, u)` vector (the morphism `1 ⊗ v† ⊗ 1`).
    pub fn apply_bra(&self, model: &AnyonModel, p: usize, v: &State) -> State {
        assert_eq!(&self.word[p..p + v.word.len()], v.word.as_slice());
        let mut sum: Option<State> = None;
        for (t, chain) in v.chains.iter().enumerate() {
            let lambda = v.amps[t].conj();
            if lambda.norm_sqr() == 0.0 {
                continue;
            }
            // Merge the letters left to right onto a unit seed, following
            // the chain's running charges.
            let mut s = self.insert_unit(model, p);
            for j in 0..v.word.len() {
                s = s.merge(model, p, chain[j]);
            }
            // The cascade leaves chain[n-1] = 1 in the slot.
            s = s.remove_unit(model, p);
            let mut s = s;
            s.scale(lambda);
            match &mut sum {
                None => sum = Some(s),
                Some(acc) => acc.add_scaled(&s, C64::new(1.0, 0.0)),
            }
        }
        sum.unwrap_or_else(|| {
            let mut word = self.word.clone();
            for _ in 0..v.word.len() {
                word.remove(p);
            }
            State::zero(model, word)
        })
    }
}

/// Bend phase κ(A): the unit scalar making mixed-handed zig-zags exactly
/// the identity. Equals the Frobenius–Schur indicator for self-dual labels.
pub fn bend_phase(model: &AnyonModel, a: Label) -> C64 {
    let ad = model.dual(a);
    let u = model.unit();
    let denom = model.f(ad, a, ad, ad, u, u).conj()
        * model.f(u, ad, a, u, ad, u)
        * model.d(ad);
    C64::new(1.0, 0.0) / denom
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anyon::{load_model, BUILTIN_NAMES};

    #[test]
    fn chain_counts_match_dp_oracle() {
        let m = load_model("fibonacci").unwrap();
        let tau = 1;
        assert_eq!(enumerate_chains(&m, &[tau, tau]).len(), 1);
        assert_eq!(enumerate_chains(&m, &[tau, tau, tau, tau]).len(), 2);
        assert_eq!(enumerate_chains(&m, &[0]).len(), 1);
        for w in [vec![tau], vec![tau, tau, tau], vec![0, tau, tau]] {
            assert_eq!(enumerate_chains(&m, &w).len(), hom_dim(&m, &w));
        }
    }

    #[test]
    fn split_then_merge_is_identity() {
        for name in BUILTIN_NAMES {
            let m = load_model(name).unwrap();
            for a in 0..m.n_labels() {
                for b in 0..m.n_labels() {
                    for c in m.rules.channels(a, b).collect::<Vec<_>>() {
                        // Pick a word containing c with a nonzero hom space.
                        let w = vec![c, m.dual(c)];
                        if hom_dim(&m, &w) == 0 {
                            continue;
                        }
                        for chain in enumerate_chains(&m, &w) {
                            let s = State::basis(&m, w.clone(), &chain);
                            let t = s.split(&m, 0, a, b).merge(&m, 0, c);
                            assert!(
                                (t.ip(&s) - C64::new(1.0, 0.0)).norm() < 1e-12,
                                "{name}: split/merge roundtrip"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn loops_evaluate_to_quantum_dimension() {
        for name in BUILTIN_NAMES {
            let m = load_model(name).unwrap();
            for a in 0..m.n_labels() {
                // Clockwise: plain cup then plain cap.
                let s = State::scalar(C64::new(1.0, 0.0));
                let v = s.cup(&m, 0, a, false).cap(&m, 0, false);
                let got = v.scalar_value(&m);
                assert!(
                    (got - C64::new(m.d(a), 0.0)).norm() < 1e-12,
                    "{name} label {a}: cw loop = {got}"
                );
                // Counterclockwise: flagged pair.
                let v = s.cup(&m, 0, a, true).cap(&m, 0, true);
                let got = v.scalar_value(&m);
                assert!(
                    (got - C64::new(m.d(a), 0.0)).norm() < 1e-12,
                    "{name} label {a}: ccw loop = {got}"
                );
            }
        }
    }

    #[test]
    fn zigzags_are_exactly_identity() {
        // Right zig-zag: strand A with a flagged cup on its right capped
        // plainly; checked at every ambient charge via hom(1, (c̄, A, …)).
        for name in BUILTIN_NAMES {
            let m = load_model(name).unwrap();
            for a in 0..m.n_labels() {
                let w = vec![a, m.dual(a)];
                for chain in enumerate_chains(&m, &w) {
                    let s = State::basis(&m, w.clone(), &chain);
                    // Right zig-zag on slot 0.
                    let mut z = s.cup(&m, 1, m.dual(a), true).cap(&m, 0, false);
                    z.add_scaled(&s, C64::new(-1.0, 0.0));
                    assert!(
                        z.norm() < 1e-12,
                        "{name} label {a}: right zig-zag, chain {chain:?}, defect {}",
                        z.norm()
                    );
                    // Left zig-zag on slot 0.
                    let mut z = s.cup(&m, 0, a, false).cap(&m, 1, true);
                    z.add_scaled(&s, C64::new(-1.0, 0.0));
                    assert!(
                        z.norm() < 1e-12,
                        "{name} label {a}: left zig-zag, chain {chain:?}, defect {}",
                        z.norm()
                    );
                }
            }
        }
    }

    #[test]
    fn braids_are_unitary_and_invertible() {
        for name in ["fibonacci", "ising", "semion", "z3"] {
            let m = load_model(name).unwrap();
            for a in 0..m.n_labels() {
                for b in 0..m.n_labels() {
                    let w = vec![a, b, m.dual(b), m.dual(a)];
                    let chains = enumerate_chains(&m, &w);
                    if chains.is_empty() {
                        continue;
                    }
                    for chain in &chains {
                        let s = State::basis(&m, w.clone(), chain);
                        let t = s.braid(&m, 0, true).braid(&m, 0, false);
                        assert!((t.ip(&s) - C64::new(1.0, 0.0)).norm() < 1e-12);
                        let n = s.braid(&m, 0, true).norm();
                        assert!((n - 1.0).abs() < 1e-12, "{name}: braid not unitary");
                    }
                }
            }
        }
    }

    #[test]
    fn yang_baxter_on_three_strands() {
        for name in ["fibonacci", "ising"] {
            let m = load_model(name).unwrap();
            let l = m.n_labels();
            let words: Vec<Vec<Label>> = (0..l)
                .flat_map(|a| (0..l).flat_map(move |b| (0..l).map(move |c| vec![a, b, c])))
                .collect();
            for w in words {
                let mut full = w.clone();
                full.extend(dual_reverse(&m, &w));
                let chains = enumerate_chains(&m, &full);
                for chain in &chains {
                    let s = State::basis(&m, full.clone(), chain);
                    // (1 2)(2 3)(1 2) = (2 3)(1 2)(2 3) as maps.
                    let lhs = s.braid(&m, 0, true).braid(&m, 1, true).braid(&m, 0, true);
                    let rhs = s.braid(&m, 1, true).braid(&m, 0, true).braid(&m, 1, true);
                    let mut diff = lhs.clone();
                    diff.add_scaled(&rhs, C64::new(-1.0, 0.0));
                    assert!(diff.norm() < 1e-10, "{name}: Yang-Baxter failed");
                }
            }
        }
    }

    #[test]
    fn apply_ket_and_bra_round_trip() {
        let m = load_model("ising").unwrap();
        let w = vec![1, 1];
        let chains = enumerate_chains(&m, &w);
        for chain in &chains {
            let v = State::basis(&m, w.clone(), chain);
            let s = State::scalar(C64::new(1.0, 0.0));
            let t = s.apply_ket(&m, 0, &v);
            assert_eq!(t.word, w);
            assert!((t.ip(&v) - C64::new(1.0, 0.0)).norm() < 1e-12);
            let back = t.apply_bra(&m, 0, &v);
            assert!((back.scalar_value(&m) - C64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }
}
