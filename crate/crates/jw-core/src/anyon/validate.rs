//! Consistency validation: pentagon, hexagon, F-unitarity, dimension
//! identities, and the modularity flag.

use super::{s_matrix, AnyonModel};
use num_complex::Complex64 as C64;

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub pentagon_residual: f64,
    pub hexagon_residual: f64,
    pub f_unitarity_residual: f64,
    pub dim_residual: f64,
    pub s_symmetry_residual: f64,
    pub s_unitarity_residual: f64,
    pub modular: bool,
    pub tol: f64,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.pentagon_residual < self.tol
            && self.hexagon_residual < self.tol
            && self.f_unitarity_residual < self.tol
            && self.dim_residual < self.tol
    }
}

/// Evaluate the consistency equations and report max absolute residuals.
pub fn validate_model(model: &AnyonModel, tol: f64) -> ValidationReport {
    let l = model.n_labels();
    let zero = C64::new(0.0, 0.0);

    // Pentagon: [F^{fcd}_e]_{gl'} [F^{abl'}_e]_{fk}
    //   = Σ_h [F^{abc}_g]_{fh} [F^{ahd}_e]_{gk} [F^{bcd}_k]_{hl'}.
    let mut pentagon = 0.0f64;
    for a in 0..l {
        for b in 0..l {
            for c in 0..l {
                for d in 0..l {
                    for e in 0..l {
                        for f in 0..l {
                            for g in 0..l {
                                for k in 0..l {
                                    for lp in 0..l {
                                        let lhs = model.f(f, c, d, e, g, lp)
                                            * model.f(a, b, lp, e, f, k);
                                        let mut rhs = zero;
                                        for h in 0..l {
                                            rhs += model.f(a, b, c, g, f, h)
                                                * model.f(a, h, d, e, g, k)
                                                * model.f(b, c, d, k, h, lp);
                                        }
                                        let any = lhs != zero || rhs != zero;
                                        if any {
                                            pentagon = pentagon.max((lhs - rhs).norm());
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // Hexagon, both chiralities:
    //   R^{ca}_e [F^{acb}_d]_{eg} R^{cb}_g = Σ_f [F^{cab}_d]_{ef} R^{cf}_d [F^{abc}_d]_{fg}
    // and the same with R replaced by R^{-1} (conjugate braiding).
    let mut hexagon = 0.0f64;
    for a in 0..l {
        for b in 0..l {
            for c in 0..l {
                for d in 0..l {
                    for e in 0..l {
                        for g in 0..l {
                            let adm_l = model.f_admissible(a, c, b, d, e, g);
                            if !adm_l {
                                continue;
                            }
                            let lhs1 =
                                model.r(c, a, e) * model.f(a, c, b, d, e, g) * model.r(c, b, g);
                            let inv = |x: C64| x.conj() / x.norm_sqr().max(1e-300);
                            let lhs2 = inv(model.r(a, c, e))
                                * model.f(a, c, b, d, e, g)
                                * inv(model.r(b, c, g));
                            let mut rhs1 = zero;
                            let mut rhs2 = zero;
                            for f in 0..l {
                                let t = model.f(c, a, b, d, e, f) * model.f(a, b, c, d, f, g);
                                rhs1 += t * model.r(c, f, d);
                                rhs2 += t * inv(model.r(f, c, d));
                            }
                            hexagon = hexagon.max((lhs1 - rhs1).norm()).max((lhs2 - rhs2).norm());
                        }
                    }
                }
            }
        }
    }

    // Unitarity of each F-matrix [F^{abc}_d].
    let mut f_unit = 0.0f64;
    for a in 0..l {
        for b in 0..l {
            for c in 0..l {
                for d in 0..l {
                    let es: Vec<usize> = (0..l)
                        .filter(|&e| {
                            model.rules.admissible(a, b, e) && model.rules.admissible(e, c, d)
                        })
                        .collect();
                    let fs: Vec<usize> = (0..l)
                        .filter(|&f| {
                            model.rules.admissible(b, c, f) && model.rules.admissible(a, f, d)
                        })
                        .collect();
                    if es.is_empty() {
                        continue;
                    }
                    debug_assert_eq!(es.len(), fs.len());
                    for &e1 in &es {
                        for &e2 in &es {
                            let mut s = zero;
                            for &f in &fs {
                                s += model.f(a, b, c, d, e1, f) * model.f(a, b, c, d, e2, f).conj();
                            }
                            let target = if e1 == e2 { 1.0 } else { 0.0 };
                            f_unit = f_unit.max((s - target).norm());
                        }
                    }
                }
            }
        }
    }

    // Σ_c N(a,b,c) d(c) = d(a) d(b), plus the structural fusion-ring
    // identities: associativity and N(a,b,c) = N(b̄,ā,c̄), folded into the
    // same residual channel.
    let mut dim_res = 0.0f64;
    for a in 0..l {
        for b in 0..l {
            let s: f64 = model.rules.channels(a, b).map(|c| model.d(c)).sum();
            dim_res = dim_res.max((s - model.d(a) * model.d(b)).abs());
            for c in 0..l {
                let lhs = model.rules.n(a, b, c);
                let rhs = model
                    .rules
                    .n(model.dual(b), model.dual(a), model.dual(c));
                dim_res = dim_res.max((lhs as f64 - rhs as f64).abs());
                for d in 0..l {
                    let assoc_l: u32 = (0..l)
                        .map(|e| (model.rules.n(a, b, e) * model.rules.n(e, c, d)) as u32)
                        .sum();
                    let assoc_r: u32 = (0..l)
                        .map(|f| (model.rules.n(b, c, f) * model.rules.n(a, f, d)) as u32)
                        .sum();
                    dim_res = dim_res.max((assoc_l as f64 - assoc_r as f64).abs());
                }
            }
        }
    }

    let s = s_matrix(model);
    let mut s_sym = 0.0f64;
    for i in 0..l {
        for j in 0..l {
            s_sym = s_sym.max((s.entries[i][j] - s.entries[j][i]).norm());
        }
    }
    let s_unit = s.unitarity_residual();

    ValidationReport {
        pentagon_residual: pentagon,
        hexagon_residual: hexagon,
        f_unitarity_residual: f_unit,
        dim_residual: dim_res,
        s_symmetry_residual: s_sym,
        s_unitarity_residual: s_unit,
        modular: s_unit < tol,
        tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anyon::{load_model, model_to_file, BUILTIN_NAMES};

    #[test]
    fn builtins_pass_validation() {
        for name in BUILTIN_NAMES {
            let m = load_model(name).unwrap();
            let r = validate_model(&m, 1e-9);
            assert!(r.pentagon_residual < 1e-12, "{name} pentagon {}", r.pentagon_residual);
            assert!(r.hexagon_residual < 1e-12, "{name} hexagon {}", r.hexagon_residual);
            assert!(r.f_unitarity_residual < 1e-12, "{name} F unitarity");
            assert!(r.dim_residual < 1e-12, "{name} dims");
            assert!(r.s_symmetry_residual < 1e-12, "{name} S symmetric");
        }
    }

    #[test]
    fn modular_flags() {
        for (name, want) in [
            ("fibonacci", true),
            ("ising", true),
            ("z3", true),
            ("z5", true),
            ("semion", true),
            ("symmetric-z2", false),
        ] {
            let m = load_model(name).unwrap();
            let r = validate_model(&m, 1e-9);
            assert_eq!(r.modular, want, "{name}");
        }
    }

    #[test]
    fn symmetric_z2_s_matrix_is_rank_one() {
        let m = load_model("symmetric-z2").unwrap();
        let s = s_matrix(&m);
        // All rows equal ⇒ singular.
        for j in 0..2 {
            assert!((s.entries[0][j] - s.entries[1][j]).norm() < 1e-12);
        }
        assert!(s.unitarity_residual() > 0.5);
    }

    #[test]
    fn perturbed_f_breaks_pentagon() {
        let m = load_model("fibonacci").unwrap();
        let mut text = model_to_file(&m);
        // Perturb the (τττ;τ;1 1) entry by 0.1.
        let needle = format!("F tau tau tau tau 1 1 ");
        let pos = text.find(&needle).unwrap();
        let line_end = text[pos..].find('\n').unwrap() + pos;
        let orig = &text[pos..line_end].to_string();
        let parts: Vec<&str> = orig.split_whitespace().collect();
        let re: f64 = parts[7].parse().unwrap();
        let new_line = format!(
            "F tau tau tau tau 1 1 {:.17} {}",
            re + 0.1,
            parts[8]
        );
        text = text.replace(orig.as_str(), &new_line);
        let m2 = load_model(&text).unwrap();
        let r = validate_model(&m2, 1e-9);
        assert!(r.pentagon_residual > 1e-2, "residual {}", r.pentagon_residual);
    }

    #[test]
    fn twists_are_unit_modulus_with_trivial_unit() {
        for name in BUILTIN_NAMES {
            let m = load_model(name).unwrap();
            assert!((m.twist(0) - C64::new(1.0, 0.0)).norm() < 1e-12);
            for a in 0..m.n_labels() {
                assert!((m.twist(a).norm() - 1.0).abs() < 1e-12);
            }
        }
    }
}
