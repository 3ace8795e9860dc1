//! Line-oriented model-file format.
//!
//! ```text
//! name fibonacci
//! labels 1 tau
//! dual tau tau
//! fusion tau tau 1
//! F tau tau tau tau 1 1 0.618... 0
//! R tau tau 1 -0.809... -0.587...
//! dim tau 1.618...        # optional
//! twist tau -0.809 0.587  # optional
//! ```
//!
//! Numbers are decimal strings. Inadmissible F/R indices are implicitly
//! zero; admissible-but-unlisted entries are reported as missing symbols
//! when the model is built.

use super::{FusionRules, LabelInfo, ModelData, ModelError};
use num_complex::Complex64 as C64;
use std::collections::HashMap;

fn err(line: usize, msg: impl Into<String>) -> ModelError {
    ModelError::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_model_file(text: &str) -> Result<ModelData, ModelError> {
    let mut name = None;
    let mut label_names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut duals: HashMap<usize, usize> = HashMap::new();
    let mut fusion: Vec<(usize, usize, usize)> = Vec::new();
    let mut f_entries = Vec::new();
    let mut r_entries = Vec::new();
    let mut dims: HashMap<usize, f64> = HashMap::new();
    let mut twists: HashMap<usize, C64> = HashMap::new();

    let lookup = |index: &HashMap<String, usize>, tok: &str, ln: usize| {
        index
            .get(tok)
            .copied()
            .ok_or_else(|| err(ln, format!("unknown label '{tok}'")))
    };
    let number = |tok: &str, ln: usize| {
        tok.parse::<f64>()
            .map_err(|_| err(ln, format!("bad number '{tok}'")))
    };

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "name" => {
                if toks.len() != 2 {
                    return Err(err(ln, "expected: name <string>"));
                }
                name = Some(toks[1].to_string());
            }
            "labels" => {
                if toks.len() < 2 {
                    return Err(err(ln, "expected at least one label"));
                }
                for t in &toks[1..] {
                    if index.contains_key(*t) {
                        return Err(err(ln, format!("duplicate label '{t}'")));
                    }
                    index.insert(t.to_string(), label_names.len());
                    label_names.push(t.to_string());
                }
            }
            "dual" => {
                if toks.len() != 3 {
                    return Err(err(ln, "expected: dual <label> <label>"));
                }
                let a = lookup(&index, toks[1], ln)?;
                let b = lookup(&index, toks[2], ln)?;
                duals.insert(a, b);
            }
            "fusion" => {
                if toks.len() != 4 {
                    return Err(err(ln, "expected: fusion <a> <b> <c>"));
                }
                let a = lookup(&index, toks[1], ln)?;
                let b = lookup(&index, toks[2], ln)?;
                let c = lookup(&index, toks[3], ln)?;
                fusion.push((a, b, c));
            }
            "F" => {
                if toks.len() != 9 {
                    return Err(err(ln, "expected: F <a> <b> <c> <d> <e> <f> <re> <im>"));
                }
                let mut ix = [0usize; 6];
                for (k, slot) in ix.iter_mut().enumerate() {
                    *slot = lookup(&index, toks[k + 1], ln)?;
                }
                let re = number(toks[7], ln)?;
                let im = number(toks[8], ln)?;
                f_entries.push((ix[0], ix[1], ix[2], ix[3], ix[4], ix[5], C64::new(re, im)));
            }
            "R" => {
                if toks.len() != 6 {
                    return Err(err(ln, "expected: R <a> <b> <c> <re> <im>"));
                }
                let a = lookup(&index, toks[1], ln)?;
                let b = lookup(&index, toks[2], ln)?;
                let c = lookup(&index, toks[3], ln)?;
                let re = number(toks[4], ln)?;
                let im = number(toks[5], ln)?;
                r_entries.push((a, b, c, C64::new(re, im)));
            }
            "dim" => {
                if toks.len() != 3 {
                    return Err(err(ln, "expected: dim <label> <value>"));
                }
                let a = lookup(&index, toks[1], ln)?;
                dims.insert(a, number(toks[2], ln)?);
            }
            "twist" => {
                if toks.len() != 4 {
                    return Err(err(ln, "expected: twist <label> <re> <im>"));
                }
                let a = lookup(&index, toks[1], ln)?;
                let re = number(toks[2], ln)?;
                let im = number(toks[3], ln)?;
                twists.insert(a, C64::new(re, im));
            }
            other => return Err(err(ln, format!("unknown directive '{other}'"))),
        }
    }

    let name = name.ok_or_else(|| err(0, "missing 'name'"))?;
    if label_names.is_empty() {
        return Err(err(0, "missing 'labels'"));
    }
    let n = label_names.len();
    let labels: Vec<LabelInfo> = label_names
        .iter()
        .enumerate()
        .map(|(i, nm)| LabelInfo {
            name: nm.clone(),
            dual: duals.get(&i).copied().unwrap_or(i),
        })
        .collect();
    for (i, l) in labels.iter().enumerate() {
        if labels[l.dual].dual != i {
            return Err(ModelError::InconsistentData(format!(
                "dual map is not an involution at label '{}'",
                l.name
            )));
        }
    }
    if labels[0].dual != 0 {
        return Err(ModelError::InconsistentData(
            "dual of the unit must be the unit".into(),
        ));
    }
    let mut rules = FusionRules::new(n);
    for (a, b, c) in fusion {
        rules.set(a, b, c);
    }

    let given_dims = if dims.is_empty() {
        None
    } else {
        if dims.len() != n {
            return Err(ModelError::InconsistentData(
                "either list all dims or none".into(),
            ));
        }
        Some((0..n).map(|a| dims[&a]).collect())
    };
    let given_twists = if twists.is_empty() {
        None
    } else {
        if twists.len() != n {
            return Err(ModelError::InconsistentData(
                "either list all twists or none".into(),
            ));
        }
        Some((0..n).map(|a| twists[&a]).collect())
    };

    Ok(ModelData {
        name,
        labels,
        rules,
        f_entries,
        r_entries,
        given_dims,
        given_twists,
    })
}

#[cfg(test)]
mod tests {
    use crate::anyon::{load_model, ModelError};

    #[test]
    fn rejects_garbage() {
        match load_model("name x\nlabels a\nbogus directive\n") {
            Err(ModelError::Parse { line: 3, .. }) => {}
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_inconsistent_dims() {
        let m = crate::anyon::load_model("fibonacci").unwrap();
        let mut text = crate::anyon::model_to_file(&m);
        text = text.replace("dim tau 1.618", "dim tau 3.618");
        match load_model(&text) {
            Err(ModelError::InconsistentData(_)) => {}
            other => panic!("expected InconsistentData, got {other:?}"),
        }
    }
}
