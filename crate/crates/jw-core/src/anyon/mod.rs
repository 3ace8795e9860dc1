//! Anyon-model data: fusion rules, F/R symbol tables, and derived
//! quantities (quantum dimensions, global dimension, twists, S-matrix).
//!
//! Models are multiplicity-free in this version: `N(a,b;c) ∈ {0,1}`, which
//! covers the whole built-in library. F-symbols follow the convention
//! `|((ab)e c) → d⟩ = Σ_f [F^{abc}_d]_{e f} |(a (bc)f) → d⟩` and R-symbols
//! `c_{a,b} |ab; c⟩ = R^{ab}_c |ba; c⟩`, both in unitary gauge.

mod builtin;
mod parse;
mod validate;

pub(crate) use parse::parse_model_file;
pub use validate::{validate_model, ValidationReport};

use num_complex::Complex64 as C64;
use thiserror::Error;

/// Index of a simple object within a model's label list.
pub type Label = usize;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing {kind} symbol for admissible index {index}")]
    MissingSymbol { kind: &'static str, index: String },
    #[error("inconsistent data: {0}")]
    InconsistentData(String),
    #[error("unknown model '{0}'")]
    UnknownModel(String),
    #[error("unknown label '{0}'")]
    UnknownLabel(String),
    #[error("twist of label {0} is not unit-modulus (|θ| = {1})")]
    NonUnitaryTwist(usize, f64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelInfo {
    pub name: String,
    pub dual: Label,
}

/// Fusion multiplicities `N(a,b;c) = dim hom(a ⊗ b, c)`, all 0 or 1.
#[derive(Debug, Clone)]
pub struct FusionRules {
    n_labels: usize,
    table: Vec<u8>,
}

impl FusionRules {
    pub fn new(n_labels: usize) -> Self {
        FusionRules {
            n_labels,
            table: vec![0; n_labels * n_labels * n_labels],
        }
    }

    #[inline]
    fn idx(&self, a: Label, b: Label, c: Label) -> usize {
        (a * self.n_labels + b) * self.n_labels + c
    }

    pub fn set(&mut self, a: Label, b: Label, c: Label) {
        let i = self.idx(a, b, c);
        self.table[i] = 1;
    }

    #[inline]
    pub fn n(&self, a: Label, b: Label, c: Label) -> u8 {
        self.table[self.idx(a, b, c)]
    }

    #[inline]
    pub fn admissible(&self, a: Label, b: Label, c: Label) -> bool {
        self.n(a, b, c) == 1
    }

    /// Fusion products of `a ⊗ b`.
    pub fn channels(&self, a: Label, b: Label) -> impl Iterator<Item = Label> + '_ {
        (0..self.n_labels).filter(move |&c| self.admissible(a, b, c))
    }
}

/// A unitary (pre-)modular tensor category presented by concrete data.
#[derive(Debug, Clone)]
pub struct AnyonModel {
    pub name: String,
    pub labels: Vec<LabelInfo>,
    pub rules: FusionRules,
    f_table: Vec<C64>,
    r_table: Vec<C64>,
    pub dims: Vec<f64>,
    pub twists: Vec<C64>,
    /// Global dimension Σ d(X)².
    pub mu: f64,
}

impl AnyonModel {
    pub fn n_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn unit(&self) -> Label {
        0
    }

    pub fn dual(&self, a: Label) -> Label {
        self.labels[a].dual
    }

    pub fn d(&self, a: Label) -> f64 {
        self.dims[a]
    }

    pub fn twist(&self, a: Label) -> C64 {
        self.twists[a]
    }

    pub fn label_index(&self, name: &str) -> Result<Label, ModelError> {
        self.labels
            .iter()
            .position(|l| l.name == name)
            .ok_or_else(|| ModelError::UnknownLabel(name.to_string()))
    }

    /// `δ = μ^{(m-1)/2}`, the loop constant at interval count `m`.
    pub fn delta(&self, m: usize) -> f64 {
        self.mu.powf((m as f64 - 1.0) / 2.0)
    }

    #[inline]
    fn f_idx(&self, a: Label, b: Label, c: Label, d: Label, e: Label, f: Label) -> usize {
        let l = self.n_labels();
        ((((a * l + b) * l + c) * l + d) * l + e) * l + f
    }

    /// `[F^{abc}_d]_{e f}`; zero for inadmissible indices.
    #[inline]
    pub fn f(&self, a: Label, b: Label, c: Label, d: Label, e: Label, f: Label) -> C64 {
        self.f_table[self.f_idx(a, b, c, d, e, f)]
    }

    /// `R^{ab}_c`; zero for inadmissible indices.
    #[inline]
    pub fn r(&self, a: Label, b: Label, c: Label) -> C64 {
        let l = self.n_labels();
        self.r_table[(a * l + b) * l + c]
    }

    pub fn f_admissible(&self, a: Label, b: Label, c: Label, d: Label, e: Label, f: Label) -> bool {
        self.rules.admissible(a, b, e)
            && self.rules.admissible(e, c, d)
            && self.rules.admissible(b, c, f)
            && self.rules.admissible(a, f, d)
    }

    /// Deterministic word for error messages.
    pub fn label_name(&self, a: Label) -> &str {
        &self.labels[a].name
    }
}

/// Raw ingredients before derived data is computed and checked.
pub(crate) struct ModelData {
    pub name: String,
    pub labels: Vec<LabelInfo>,
    pub rules: FusionRules,
    pub f_entries: Vec<(Label, Label, Label, Label, Label, Label, C64)>,
    pub r_entries: Vec<(Label, Label, Label, C64)>,
    pub given_dims: Option<Vec<f64>>,
    pub given_twists: Option<Vec<C64>>,
}

impl ModelData {
    /// Assemble an [`AnyonModel`]: store symbol tables densely, derive
    /// quantum dimensions (Frobenius–Perron), twists and μ, and check the
    /// schema completeness of F/R entries.
    pub fn build(self) -> Result<AnyonModel, ModelError> {
        let l = self.labels.len();
        let rules = self.rules;

        // Every admissible F index must be supplied exactly once.
        let mut f_table = vec![C64::new(0.0, 0.0); l * l * l * l * l * l];
        let mut f_seen = vec![false; f_table.len()];
        let fidx = |a: usize, b: usize, c: usize, d: usize, e: usize, f: usize| {
            ((((a * l + b) * l + c) * l + d) * l + e) * l + f
        };
        for &(a, b, c, d, e, f, v) in &self.f_entries {
            let i = fidx(a, b, c, d, e, f);
            f_table[i] = v;
            f_seen[i] = true;
        }
        let mut r_table = vec![C64::new(0.0, 0.0); l * l * l];
        let mut r_seen = vec![false; r_table.len()];
        for &(a, b, c, v) in &self.r_entries {
            let i = (a * l + b) * l + c;
            r_table[i] = v;
            r_seen[i] = true;
        }
        for a in 0..l {
            for b in 0..l {
                for c in 0..l {
                    if rules.admissible(a, b, c) && !r_seen[(a * l + b) * l + c] {
                        return Err(ModelError::MissingSymbol {
                            kind: "R",
                            index: format!(
                                "({} {} ; {})",
                                self.labels[a].name, self.labels[b].name, self.labels[c].name
                            ),
                        });
                    }
                    for d in 0..l {
                        for e in 0..l {
                            for f in 0..l {
                                let adm = rules.admissible(a, b, e)
                                    && rules.admissible(e, c, d)
                                    && rules.admissible(b, c, f)
                                    && rules.admissible(a, f, d);
                                if adm && !f_seen[fidx(a, b, c, d, e, f)] {
                                    return Err(ModelError::MissingSymbol {
                                        kind: "F",
                                        index: format!(
                                            "({} {} {} ; {} ; {} {})",
                                            self.labels[a].name,
                                            self.labels[b].name,
                                            self.labels[c].name,
                                            self.labels[d].name,
                                            self.labels[e].name,
                                            self.labels[f].name
                                        ),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }

        let dims = frobenius_perron_dims(&rules, l);
        if let Some(given) = &self.given_dims {
            for a in 0..l {
                if (given[a] - dims[a]).abs() > 1e-6 {
                    return Err(ModelError::InconsistentData(format!(
                        "dim({}) given as {} but Frobenius-Perron value is {:.12}",
                        self.labels[a].name, given[a], dims[a]
                    )));
                }
            }
        }
        let mu: f64 = dims.iter().map(|d| d * d).sum();

        let mut model = AnyonModel {
            name: self.name,
            labels: self.labels,
            rules,
            f_table,
            r_table,
            dims,
            twists: vec![C64::new(1.0, 0.0); l],
            mu,
        };
        let twists = derived_twists(&model)?;
        if let Some(given) = &self.given_twists {
            for a in 0..l {
                if (given[a] - twists[a]).norm() > 1e-6 {
                    return Err(ModelError::InconsistentData(format!(
                        "twist({}) given as {} but ribbon formula gives {}",
                        model.labels[a].name, given[a], twists[a]
                    )));
                }
            }
        }
        model.twists = twists;
        Ok(model)
    }
}

/// Quantum dimensions as Frobenius–Perron data of the fusion ring: the
/// dimension vector is the unique positive common eigenvector `N_a d = d(a) d`,
/// found by power iteration on the total fusion matrix `M = Σ_a N_a`
/// (strictly positive, so the iteration converges to the Perron vector).
fn frobenius_perron_dims(rules: &FusionRules, l: usize) -> Vec<f64> {
    let mut v = vec![1.0f64; l];
    for _ in 0..5000 {
        let mut w = vec![0.0f64; l];
        for a in 0..l {
            for b in 0..l {
                for c in 0..l {
                    if rules.admissible(a, b, c) {
                        w[c] += v[b];
                    }
                }
            }
        }
        let norm = w[0].max(1e-300);
        for c in 0..l {
            w[c] /= norm;
        }
        let delta: f64 = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).sum();
        v = w;
        if delta < 1e-16 {
            break;
        }
    }
    // d(a) = (N_a v)[a] / v[a]; the unit column of N_a at c = a is always
    // admissible so the denominator is positive.
    (0..l)
        .map(|a| {
            let num: f64 = (0..l)
                .filter(|&b| rules.admissible(a, b, a))
                .map(|b| v[b])
                .sum();
            num / v[a]
        })
        .collect()
}

/// Ribbon twists `θ_a = Σ_c (d_c / d_a) R^{aa}_c` for multiplicity-free
/// models; checks unit modulus.
fn derived_twists(model: &AnyonModel) -> Result<Vec<C64>, ModelError> {
    let l = model.n_labels();
    let mut out = Vec::with_capacity(l);
    for a in 0..l {
        let mut t = C64::new(0.0, 0.0);
        for c in model.rules.channels(a, a) {
            t += model.r(a, a, c) * (model.d(c) / model.d(a));
        }
        if (t.norm() - 1.0).abs() > 1e-6 {
            return Err(ModelError::NonUnitaryTwist(a, t.norm()));
        }
        out.push(t);
    }
    Ok(out)
}

/// Modular S-matrix with invariants checked by [`validate_model`].
#[derive(Debug, Clone)]
pub struct SMatrix {
    pub entries: Vec<Vec<C64>>,
}

impl SMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Max |S S† − I| entry; zero (to tolerance) exactly when modular.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut s = C64::new(0.0, 0.0);
                for k in 0..n {
                    s += self.entries[i][k] * self.entries[j][k].conj();
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - target).norm());
            }
        }
        worst
    }
}

/// Twist-based S-matrix, the module's oracle independent of diagram
/// evaluation: `S(a,b) = μ^{-1/2} Σ_c N(ā,b;c) (θ_c / θ_a θ_b) d(c)`.
pub fn s_matrix(model: &AnyonModel) -> SMatrix {
    let l = model.n_labels();
    let pref = 1.0 / model.mu.sqrt();
    let mut entries = vec![vec![C64::new(0.0, 0.0); l]; l];
    for a in 0..l {
        for b in 0..l {
            let mut s = C64::new(0.0, 0.0);
            for c in model.rules.channels(model.dual(a), b) {
                s += model.twist(c) / (model.twist(a) * model.twist(b)) * model.d(c);
            }
            entries[a][b] = s * pref;
        }
    }
    SMatrix { entries }
}

/// Quantum data (d map, μ, twist map) of a valid model.
pub fn quantum_data(model: &AnyonModel) -> (Vec<f64>, f64, Vec<C64>) {
    (model.dims.clone(), model.mu, model.twists.clone())
}

pub const BUILTIN_NAMES: [&str; 6] = ["fibonacci", "ising", "z3", "z5", "semion", "symmetric-z2"];

/// Load a model from a built-in name or from model-file text.
pub fn load_model(source: &str) -> Result<AnyonModel, ModelError> {
    match source {
        "fibonacci" => builtin::fibonacci(),
        "ising" => builtin::ising(),
        "z3" => builtin::cyclic(3, "z3"),
        "z5" => builtin::cyclic(5, "z5"),
        "semion" => builtin::semion(),
        "symmetric-z2" => builtin::symmetric_z2(),
        text if text.contains('\n') || text.contains("name ") => {
            parse_model_file(text)?.build()
        }
        other => Err(ModelError::UnknownModel(other.to_string())),
    }
}

/// Serialize a model in the model-file format (used for round-trip tests).
pub fn model_to_file(model: &AnyonModel) -> String {
    let mut out = String::new();
    out.push_str(&format!("name {}\n", model.name));
    out.push_str("labels");
    for l in &model.labels {
        out.push_str(&format!(" {}", l.name));
    }
    out.push('\n');
    for (a, l) in model.labels.iter().enumerate() {
        out.push_str(&format!(
            "dual {} {}\n",
            l.name,
            model.labels[l.dual].name
        ));
        out.push_str(&format!("dim {} {:.15}\n", l.name, model.dims[a]));
    }
    let n = model.n_labels();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if model.rules.admissible(a, b, c) {
                    out.push_str(&format!(
                        "fusion {} {} {}\n",
                        model.label_name(a),
                        model.label_name(b),
                        model.label_name(c)
                    ));
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for e in 0..n {
                        for f in 0..n {
                            if model.f_admissible(a, b, c, d, e, f) {
                                let v = model.f(a, b, c, d, e, f);
                                out.push_str(&format!(
                                    "F {} {} {} {} {} {} {:.17} {:.17}\n",
                                    model.label_name(a),
                                    model.label_name(b),
                                    model.label_name(c),
                                    model.label_name(d),
                                    model.label_name(e),
                                    model.label_name(f),
                                    v.re,
                                    v.im
                                ));
                            }
                        }
                    }
                }
                if model.rules.admissible(a, b, c) {
                    let v = model.r(a, b, c);
                    out.push_str(&format!(
                        "R {} {} {} {:.17} {:.17}\n",
                        model.label_name(a),
                        model.label_name(b),
                        model.label_name(c),
                        v.re,
                        v.im
                    ));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_dims_and_mu() {
        let m = load_model("fibonacci").unwrap();
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((m.d(1) - phi).abs() < 1e-12);
        assert!((m.mu - (1.0 + phi * phi)).abs() < 1e-12);
    }

    #[test]
    fn pointed_models_have_unit_dims() {
        let m = load_model("z3").unwrap();
        assert_eq!(m.n_labels(), 3);
        for a in 0..3 {
            assert!((m.d(a) - 1.0).abs() < 1e-12);
        }
        assert!((m.mu - 3.0).abs() < 1e-12);
    }

    #[test]
    fn ising_mu_is_four() {
        let m = load_model("ising").unwrap();
        assert!((m.mu - 4.0).abs() < 1e-12);
    }

    #[test]
    fn duals_are_involutions() {
        for name in BUILTIN_NAMES {
            let m = load_model(name).unwrap();
            assert_eq!(m.dual(m.unit()), m.unit(), "{name}");
            for a in 0..m.n_labels() {
                assert_eq!(m.dual(m.dual(a)), a, "{name}");
            }
        }
    }

    #[test]
    fn s_matrix_first_row_is_dims() {
        for name in BUILTIN_NAMES {
            let m = load_model(name).unwrap();
            let s = s_matrix(&m);
            for a in 0..m.n_labels() {
                let expect = m.d(a) / m.mu.sqrt();
                assert!(
                    (s.entries[0][a] - expect).norm() < 1e-12,
                    "{name} row-1 entry {a}"
                );
            }
        }
    }

    #[test]
    fn fibonacci_s_matrix_matches_closed_form() {
        let m = load_model("fibonacci").unwrap();
        let s = s_matrix(&m);
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        let c = 1.0 / (2.0 + phi).sqrt();
        let want = [[c, c * phi], [c * phi, -c]];
        for a in 0..2 {
            for b in 0..2 {
                assert!((s.entries[a][b] - want[a][b]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn ising_s_matrix_matches_closed_form() {
        let m = load_model("ising").unwrap();
        let s = s_matrix(&m);
        let r = 2.0f64.sqrt();
        let want = [[0.5, 0.5 * r, 0.5], [0.5 * r, 0.0, -0.5 * r], [0.5, -0.5 * r, 0.5]];
        for a in 0..3 {
            for b in 0..3 {
                assert!(
                    (s.entries[a][b] - want[a][b]).norm() < 1e-12,
                    "entry ({a},{b}) = {}",
                    s.entries[a][b]
                );
            }
        }
    }

    #[test]
    fn model_file_round_trip() {
        for name in BUILTIN_NAMES {
            let m = load_model(name).unwrap();
            let text = model_to_file(&m);
            let m2 = load_model(&text).unwrap();
            assert_eq!(m.n_labels(), m2.n_labels());
            for a in 0..m.n_labels() {
                assert!((m.d(a) - m2.d(a)).abs() < 1e-12);
                assert!((m.twist(a) - m2.twist(a)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn deleted_f_entry_is_missing_symbol() {
        let m = load_model("fibonacci").unwrap();
        let text = model_to_file(&m);
        // Drop the first F line.
        let mutilated: String = {
            let mut dropped = false;
            text.lines()
                .filter(|l| {
                    if !dropped && l.starts_with("F ") {
                        dropped = true;
                        false
                    } else {
                        true
                    }
                })
                .map(|l| format!("{l}\n"))
                .collect()
        };
        match load_model(&mutilated) {
            Err(ModelError::MissingSymbol { kind: "F", .. }) => {}
            other => panic!("expected MissingSymbol, got {other:?}"),
        }
    }

    #[test]
    fn unknown_model_is_rejected() {
        assert!(matches!(
            load_model("nosuchmodel"),
            Err(ModelError::UnknownModel(_))
        ));
    }
}
