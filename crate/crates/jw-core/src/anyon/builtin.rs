//! Built-in model library. All tables are in unitary gauge with the unit
//! label at index 0; F/R entries not listed explicitly default to 1 on
//! admissible indices.

use super::{AnyonModel, FusionRules, LabelInfo, ModelData, ModelError};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

fn polar(theta: f64) -> C64 {
    C64::new(theta.cos(), theta.sin())
}

/// Fill every admissible F and R index with 1, then apply overrides.
fn assemble(
    name: &str,
    labels: Vec<LabelInfo>,
    rules: FusionRules,
    f_overrides: &[(usize, usize, usize, usize, usize, usize, C64)],
    r_overrides: &[(usize, usize, usize, C64)],
) -> Result<AnyonModel, ModelError> {
    let l = labels.len();
    let mut f_entries = Vec::new();
    for a in 0..l {
        for b in 0..l {
            for c in 0..l {
                for d in 0..l {
                    for e in 0..l {
                        for f in 0..l {
                            let adm = rules.admissible(a, b, e)
                                && rules.admissible(e, c, d)
                                && rules.admissible(b, c, f)
                                && rules.admissible(a, f, d);
                            if adm {
                                f_entries.push((a, b, c, d, e, f, one()));
                            }
                        }
                    }
                }
            }
        }
    }
    for &(a, b, c, d, e, f, v) in f_overrides {
        let slot = f_entries
            .iter_mut()
            .find(|x| (x.0, x.1, x.2, x.3, x.4, x.5) == (a, b, c, d, e, f))
            .expect("override must be admissible");
        slot.6 = v;
    }
    let mut r_entries = Vec::new();
    for a in 0..l {
        for b in 0..l {
            for c in 0..l {
                if rules.admissible(a, b, c) {
                    r_entries.push((a, b, c, one()));
                }
            }
        }
    }
    for &(a, b, c, v) in r_overrides {
        let slot = r_entries
            .iter_mut()
            .find(|x| (x.0, x.1, x.2) == (a, b, c))
            .expect("override must be admissible");
        slot.3 = v;
    }
    ModelData {
        name: name.to_string(),
        labels,
        rules,
        f_entries,
        r_entries,
        given_dims: None,
        given_twists: None,
    }
    .build()
}

/// Fibonacci: labels {1, τ}, τ⊗τ = 1 ⊕ τ.
pub fn fibonacci() -> Result<AnyonModel, ModelError> {
    let labels = vec![
        LabelInfo { name: "1".into(), dual: 0 },
        LabelInfo { name: "tau".into(), dual: 1 },
    ];
    let mut rules = FusionRules::new(2);
    rules.set(0, 0, 0);
    rules.set(0, 1, 1);
    rules.set(1, 0, 1);
    rules.set(1, 1, 0);
    rules.set(1, 1, 1);
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let ip = 1.0 / phi;
    let is = 1.0 / phi.sqrt();
    let f = |x: f64| C64::new(x, 0.0);
    let f_overrides = [
        (1, 1, 1, 1, 0, 0, f(ip)),
        (1, 1, 1, 1, 0, 1, f(is)),
        (1, 1, 1, 1, 1, 0, f(is)),
        (1, 1, 1, 1, 1, 1, f(-ip)),
    ];
    let r_overrides = [
        (1, 1, 0, polar(-4.0 * PI / 5.0)),
        (1, 1, 1, polar(3.0 * PI / 5.0)),
    ];
    assemble("fibonacci", labels, rules, &f_overrides, &r_overrides)
}

/// Ising: labels {1, σ, ψ}, σ⊗σ = 1 ⊕ ψ, σ⊗ψ = σ, ψ⊗ψ = 1.
pub fn ising() -> Result<AnyonModel, ModelError> {
    let labels = vec![
        LabelInfo { name: "1".into(), dual: 0 },
        LabelInfo { name: "sigma".into(), dual: 1 },
        LabelInfo { name: "psi".into(), dual: 2 },
    ];
    let mut rules = FusionRules::new(3);
    rules.set(0, 0, 0);
    rules.set(0, 1, 1);
    rules.set(1, 0, 1);
    rules.set(0, 2, 2);
    rules.set(2, 0, 2);
    rules.set(1, 1, 0);
    rules.set(1, 1, 2);
    rules.set(1, 2, 1);
    rules.set(2, 1, 1);
    rules.set(2, 2, 0);
    let s = 1.0 / 2.0f64.sqrt();
    let f = |x: f64| C64::new(x, 0.0);
    // σσσ recoupling is the Hadamard-type matrix over channels {1, ψ};
    // the ψσψ / σψσ loops carry the fermion sign.
    let f_overrides = [
        (1, 1, 1, 1, 0, 0, f(s)),
        (1, 1, 1, 1, 0, 2, f(s)),
        (1, 1, 1, 1, 2, 0, f(s)),
        (1, 1, 1, 1, 2, 2, f(-s)),
        (2, 1, 2, 1, 1, 1, f(-1.0)),
        (1, 2, 1, 2, 1, 1, f(-1.0)),
    ];
    let r_overrides = [
        (1, 1, 0, polar(-PI / 8.0)),
        (1, 1, 2, polar(3.0 * PI / 8.0)),
        (2, 2, 0, f(-1.0)),
        (1, 2, 1, C64::new(0.0, -1.0)),
        (2, 1, 1, C64::new(0.0, -1.0)),
    ];
    assemble("ising", labels, rules, &f_overrides, &r_overrides)
}

/// Semion: labels {1, s}, s⊗s = 1, with the nontrivial associator sign.
pub fn semion() -> Result<AnyonModel, ModelError> {
    let labels = vec![
        LabelInfo { name: "1".into(), dual: 0 },
        LabelInfo { name: "s".into(), dual: 1 },
    ];
    let mut rules = FusionRules::new(2);
    rules.set(0, 0, 0);
    rules.set(0, 1, 1);
    rules.set(1, 0, 1);
    rules.set(1, 1, 0);
    let f_overrides = [(1, 1, 1, 1, 0, 0, C64::new(-1.0, 0.0))];
    let r_overrides = [(1, 1, 0, C64::new(0.0, 1.0))];
    assemble("semion", labels, rules, &f_overrides, &r_overrides)
}

/// Pointed Z_d model with quadratic form q(a) = exp(2πi a²/d); modular for
/// odd d.
pub fn cyclic(d: usize, name: &str) -> Result<AnyonModel, ModelError> {
    let labels = (0..d)
        .map(|a| LabelInfo {
            name: if a == 0 { "0".into() } else { format!("{a}") },
            dual: (d - a) % d,
        })
        .collect();
    let mut rules = FusionRules::new(d);
    for a in 0..d {
        for b in 0..d {
            rules.set(a, b, (a + b) % d);
        }
    }
    let mut r_overrides = Vec::new();
    for a in 0..d {
        for b in 0..d {
            let phase = 2.0 * PI * (a * b) as f64 / d as f64;
            r_overrides.push((a, b, (a + b) % d, polar(phase)));
        }
    }
    assemble(name, labels, rules, &[], &r_overrides)
}

/// Z_2 with fully symmetric braiding (R ≡ +1): passes pentagon/hexagon but
/// is not modular. Used as the negative control for self-duality.
pub fn symmetric_z2() -> Result<AnyonModel, ModelError> {
    let labels = vec![
        LabelInfo { name: "0".into(), dual: 0 },
        LabelInfo { name: "1".into(), dual: 1 },
    ];
    let mut rules = FusionRules::new(2);
    rules.set(0, 0, 0);
    rules.set(0, 1, 1);
    rules.set(1, 0, 1);
    rules.set(1, 1, 0);
    assemble("symmetric-z2", labels, rules, &[], &[])
}
