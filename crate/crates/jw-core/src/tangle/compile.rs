//! Scene compilation: project along the height axis, expand box spines into
//! charge-labeled strands with unit anchors, run exact incidence checks,
//! and collect crossings with over/under resolved by height.

use super::{
    BoxKind, Color, DiagCrossing, DiagStrand, DiagVertex, Diagram, P2, P3, Scene,
};
use crate::anyon::AnyonModel;
use crate::rat::Rat;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CompileError {
    #[error("non-generic scene: {0}")]
    NonGenericScene(String),
    #[error("scene sizes are inconsistent")]
    SizeMismatch,
}

fn p2(p: &P3) -> P2 {
    P2 { x: p.x, v: p.v }
}

/// Unit-anchor length: boxes shrink toward their unit end by 3/4 of a cell,
/// so interior dual lines cross every primal line they span.
fn tail_len() -> Rat {
    Rat::new(3, 4)
}

/// Compile a scene to a planar diagram.
pub fn compile_scene(model: &AnyonModel, scene: &Scene) -> Result<Diagram, CompileError> {
    let unit = model.unit();
    let mut strands: Vec<DiagStrand> = Vec::new();
    let mut vertices: Vec<DiagVertex> = Vec::new();

    // Box expansion. Rows first, then columns, per color in scene order.
    // Remember segment ids so junctions can be wired.
    // Keyed by (box index): (tail id, spine segment ids).
    let mut row_segs: HashMap<usize, (usize, Vec<usize>)> = HashMap::new();
    let mut col_segs: HashMap<usize, (usize, Vec<usize>)> = HashMap::new();

    for (bi, b) in scene.boxes.iter().enumerate() {
        match b.kind {
            BoxKind::Row { .. } => {
                let start = b.spine[0];
                let v = start.v;
                let h = start.h;
                let x0 = start.x;
                let tail_id = strands.len();
                strands.push(DiagStrand {
                    label: unit,
                    color: b.color,
                    height: h,
                    a: P2 { x: x0 - tail_len(), v },
                    b: P2 { x: x0, v },
                    group: bi,
                    prev: None,
                    next: None,
                });
                let n = b.word.len();
                let mut spine = Vec::new();
                for k in 0..n.saturating_sub(1) {
                    let xa = x0 + Rat::int(k as i64);
                    let xb = x0 + Rat::int(k as i64 + 1);
                    spine.push(strands.len());
                    strands.push(DiagStrand {
                        label: b.chain[k],
                        color: b.color,
                        height: h,
                        a: P2 { x: xa, v },
                        b: P2 { x: xb, v },
                        group: bi,
                        prev: None,
                        next: None,
                    });
                }
                row_segs.insert(bi, (tail_id, spine));
            }
            BoxKind::Col { .. } => {
                let front = b.spine[0];
                let x = front.x;
                let h = front.h;
                let v0 = front.v;
                let m = b.word.len();
                if *b.chain.last().unwrap() != unit {
                    return Err(CompileError::SizeMismatch);
                }
                let mut segs = Vec::new();
                for j in 0..m.saturating_sub(1) {
                    let va = v0 - Rat::int(j as i64 + 1);
                    let vb = v0 - Rat::int(j as i64);
                    segs.push(strands.len());
                    strands.push(DiagStrand {
                        label: b.chain[j],
                        color: b.color,
                        height: h,
                        a: P2 { x, v: va },
                        b: P2 { x, v: vb },
                        group: bi,
                        prev: None,
                        next: None,
                    });
                }
                let vback = v0 - Rat::int(m as i64 - 1);
                let tail_id = strands.len();
                strands.push(DiagStrand {
                    label: unit,
                    color: b.color,
                    height: h,
                    a: P2 { x, v: vback - tail_len() },
                    b: P2 { x, v: vback },
                    group: bi,
                    prev: None,
                    next: None,
                });
                col_segs.insert(bi, (tail_id, segs));
            }
        }
    }

    // Junction vertices: pair every row box with every column box of the
    // same color through the shared site strand.
    for (ri, rb) in scene.boxes.iter().enumerate() {
        let BoxKind::Row { .. } = rb.kind else { continue };
        let n = rb.word.len();
        for (ci, cb) in scene.boxes.iter().enumerate() {
            let BoxKind::Col { i } = cb.kind else { continue };
            if cb.color != rb.color {
                continue;
            }
            // Column i meets this row at leg index i-1 of the row; find the
            // row index j of this row within the column's word via the
            // shared strut strand.
            let strut_id = rb.legs[i - 1];
            let Some(j) = cb.legs.iter().position(|&s| s == strut_id) else {
                continue;
            };
            let strut = scene.strands[strut_id].label;
            let at = p2(&scene.strands[strut_id].path[0]);
            let e_prev = if i == 1 { unit } else { rb.chain[i - 2] };
            let e_next = rb.chain[i - 1];
            let (rtail, rspine) = &row_segs[&ri];
            let (ctail, csegs) = &col_segs[&ci];
            let m = cb.word.len();
            let west = Some(if i == 1 { *rtail } else { rspine[i - 2] });
            let east = if i == n { None } else { Some(rspine[i - 1]) };
            let south = if j == m - 1 { *ctail } else { csegs[j] };
            let (north, col_vertex) = if j == 0 {
                (None, None)
            } else {
                (
                    Some(csegs[j - 1]),
                    Some((cb.chain[j - 1], strut, cb.chain[j])),
                )
            };
            vertices.push(DiagVertex {
                at,
                color: rb.color,
                row_vertex: (e_prev, strut, e_next),
                col_vertex,
                west,
                east,
                north,
                south,
            });
        }
    }

    // Bare loop strands: split polylines into projected segments, keeping
    // orientation links and dropping pure-height connectors.
    for (si, s) in scene.strands.iter().enumerate() {
        if s.path.len() == 2 && p2(&s.path[0]) == p2(&s.path[1]) {
            continue; // site strand, projects to the junction point
        }
        let group = scene.boxes.len() + si;
        let mut ids = Vec::new();
        let k = s.path.len();
        let pairs: Vec<(P3, P3)> = (0..if s.closed { k } else { k - 1 })
            .map(|t| (s.path[t], s.path[(t + 1) % k]))
            .collect();
        for (pa, pb) in &pairs {
            let (a, b) = (p2(pa), p2(pb));
            if a == b {
                continue; // vertical connector between layers
            }
            if a.x != b.x && a.v != b.v {
                return Err(CompileError::NonGenericScene(
                    "diagonal strand segment".into(),
                ));
            }
            if pa.h != pb.h {
                return Err(CompileError::NonGenericScene(
                    "slanted segment with planar extent".into(),
                ));
            }
            ids.push(strands.len());
            strands.push(DiagStrand {
                label: s.label,
                color: s.color,
                height: pa.h,
                a,
                b,
                group,
                prev: None,
                next: None,
            });
        }
        // Link consecutive segments (and close the loop).
        for t in 0..ids.len() {
            let nxt = if t + 1 < ids.len() {
                Some(ids[t + 1])
            } else if s.closed {
                Some(ids[0])
            } else {
                None
            };
            strands[ids[t]].next = nxt;
            if let Some(nn) = nxt {
                strands[nn].prev = Some(ids[t]);
            }
        }
    }

    // Allowed endpoint meetings: the four legs of each junction, and
    // consecutive loop segments.
    let mut allowed: HashMap<P2, Vec<usize>> = HashMap::new();
    for vx in &vertices {
        let mut legs = vec![vx.south];
        legs.extend(vx.north);
        legs.extend(vx.west);
        legs.extend(vx.east);
        allowed.entry(vx.at).or_default().extend(legs);
    }
    for (id, st) in strands.iter().enumerate() {
        if let Some(nn) = st.next {
            let corner = st.b;
            allowed.entry(corner).or_default().extend([id, nn]);
        }
    }

    let mut crossings = Vec::new();
    let n_str = strands.len();
    for p in 0..n_str {
        for q in (p + 1)..n_str {
            check_pair(&strands, p, q, &allowed, &mut crossings)?;
        }
    }
    crossings.sort_by(|a, b| (a.at.v, a.at.x).cmp(&(b.at.v, b.at.x)));

    Ok(Diagram {
        strands,
        vertices,
        crossings,
    })
}

fn span(a: Rat, b: Rat) -> (Rat, Rat) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn is_horizontal(s: &DiagStrand) -> bool {
    s.a.v == s.b.v
}

fn check_pair(
    strands: &[DiagStrand],
    p: usize,
    q: usize,
    allowed: &HashMap<P2, Vec<usize>>,
    crossings: &mut Vec<DiagCrossing>,
) -> Result<(), CompileError> {
    let (s, t) = (&strands[p], &strands[q]);
    let meeting_ok = |pt: P2| {
        allowed
            .get(&pt)
            .map(|v| v.contains(&p) && v.contains(&q))
            .unwrap_or(false)
    };
    match (is_horizontal(s), is_horizontal(t)) {
        (true, true) => {
            if s.a.v != t.a.v {
                return Ok(());
            }
            let (a1, b1) = span(s.a.x, s.b.x);
            let (a2, b2) = span(t.a.x, t.b.x);
            let lo = a1.max(a2);
            let hi = b1.min(b2);
            if lo > hi {
                return Ok(());
            }
            if lo < hi {
                return Err(CompileError::NonGenericScene(format!(
                    "collinear overlap between strands {p} and {q}"
                )));
            }
            let pt = P2 { x: lo, v: s.a.v };
            if meeting_ok(pt) {
                return Ok(());
            }
            Err(CompileError::NonGenericScene(format!(
                "tangent contact at {pt:?}"
            )))
        }
        (false, false) => {
            if s.a.x != t.a.x {
                return Ok(());
            }
            let (a1, b1) = span(s.a.v, s.b.v);
            let (a2, b2) = span(t.a.v, t.b.v);
            let lo = a1.max(a2);
            let hi = b1.min(b2);
            if lo > hi {
                return Ok(());
            }
            if lo < hi {
                return Err(CompileError::NonGenericScene(format!(
                    "collinear overlap between strands {p} and {q}"
                )));
            }
            let pt = P2 { x: s.a.x, v: lo };
            if meeting_ok(pt) {
                return Ok(());
            }
            Err(CompileError::NonGenericScene(format!(
                "tangent contact at {pt:?}"
            )))
        }
        (hs, _) => {
            let (h, v, hid, vid) = if hs { (s, t, p, q) } else { (t, s, q, p) };
            let (hx0, hx1) = span(h.a.x, h.b.x);
            let (vv0, vv1) = span(v.a.v, v.b.v);
            let ix = v.a.x;
            let iv = h.a.v;
            if ix < hx0 || ix > hx1 || iv < vv0 || iv > vv1 {
                return Ok(());
            }
            let interior = ix > hx0 && ix < hx1 && iv > vv0 && iv < vv1;
            let pt = P2 { x: ix, v: iv };
            if interior {
                if h.height == v.height {
                    return Err(CompileError::NonGenericScene(format!(
                        "equal-height crossing at {pt:?}"
                    )));
                }
                let (over, under) = if h.height > v.height {
                    (hid, vid)
                } else {
                    (vid, hid)
                };
                crossings.push(DiagCrossing { over, under, at: pt });
                return Ok(());
            }
            // Endpoint incidence: must be a registered meeting of both.
            let end_h = pt == h.a || pt == h.b;
            let end_v = pt == v.a || pt == v.b;
            if end_h && end_v && meeting_ok(pt) {
                return Ok(());
            }
            Err(CompileError::NonGenericScene(format!(
                "vertex-on-strand incidence at {pt:?}"
            )))
        }
    }
}

/// Structured-text debug export of a compiled diagram.
pub fn diagram_text(model: &AnyonModel, d: &Diagram) -> String {
    let mut out = String::new();
    let color = |c: Color| match c {
        Color::Blue => "blue",
        Color::Red => "red",
    };
    out.push_str(&format!(
        "diagram strands {} vertices {} crossings {}\n",
        d.strands.len(),
        d.vertices.len(),
        d.crossings.len()
    ));
    for (i, s) in d.strands.iter().enumerate() {
        out.push_str(&format!(
            "strand {i} {} {} h={:?} ({:?},{:?})->({:?},{:?})\n",
            color(s.color),
            model.label_name(s.label),
            s.height,
            s.a.x,
            s.a.v,
            s.b.x,
            s.b.v
        ));
    }
    for (i, v) in d.vertices.iter().enumerate() {
        out.push_str(&format!(
            "vertex {i} {} at ({:?},{:?}) row=({},{},{})",
            color(v.color),
            v.at.x,
            v.at.v,
            model.label_name(v.row_vertex.0),
            model.label_name(v.row_vertex.1),
            model.label_name(v.row_vertex.2),
        ));
        if let Some((a, b, c)) = v.col_vertex {
            out.push_str(&format!(
                " col=({},{},{})",
                model.label_name(a),
                model.label_name(b),
                model.label_name(c)
            ));
        }
        out.push('\n');
    }
    for c in &d.crossings {
        out.push_str(&format!(
            "crossing over={} under={} at ({:?},{:?})\n",
            c.over, c.under, c.at.x, c.at.v
        ));
    }
    out
}
