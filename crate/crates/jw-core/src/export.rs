//! Structured-text export formats: complex matrices with a header, and the
//! check-report record format. Both are byte-deterministic for fixed inputs
//! so golden-file tests can diff raw output.

use num_complex::Complex64 as C64;

/// Render a complex number as a `[re, im]` decimal pair.
fn pair(z: C64) -> String {
    format!("[{:.12e}, {:.12e}]", fix_zero(z.re), fix_zero(z.im))
}

/// Normalize -0.0 to 0.0 so output bytes do not depend on rounding paths.
fn fix_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// Matrix export: header (model, n, m, basis order) followed by row-major
/// complex entries, one row per line.
pub fn matrix_text(
    title: &str,
    model: &str,
    n: usize,
    m: usize,
    basis: &[String],
    rows: &[Vec<C64>],
) -> String {
    let mut out = String::new();
    out.push_str(&format!("matrix {title}\n"));
    out.push_str(&format!("model {model}\n"));
    out.push_str(&format!("n {n}\n"));
    out.push_str(&format!("m {m}\n"));
    out.push_str(&format!("basis {}\n", basis.join(" ")));
    out.push_str(&format!("rows {}\n", rows.len()));
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&z| pair(z)).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_zero_is_normalized() {
        let t = matrix_text(
            "t",
            "m",
            1,
            1,
            &["b".into()],
            &[vec![C64::new(-0.0, 0.0)]],
        );
        assert!(!t.contains("-0.0"));
    }
}
