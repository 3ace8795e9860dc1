//! Canonical scene builders.
//!
//! Grid layout (all coordinates quarter-integers): blue sites at
//! `(i, -j)` for `i = 1..n`, `j = 0..m-1`; row spines along X at height 0,
//! column spines along the depth axis at height -1, site strands vertical
//! between the two layers. The red (dual lattice) copy is shifted by
//! `(+1/2, 0, +1/2)`. Each box is shrunk toward its unit anchor: the left
//! end of a row, the back end of a column; the emerging unit charge is a
//! real strand of length 3/4 so every projected incidence is
//! strand–strand.

use super::{BoxKind, Color, P3, Scene, SceneBox, SceneStrand};
use crate::anyon::{AnyonModel, Label};
use crate::rat::Rat;

/// Raw configuration data for one color of an LL scene: the Z-configuration
/// grid plus the chosen row and column fusion trees.
#[derive(Debug, Clone)]
pub struct GridConfig {
    /// `labels[i][j]` for `i = 0..n`, `j = 0..m` (site `(i+1, j)`).
    pub labels: Vec<Vec<Label>>,
    /// Per row `j`: the chain over `(X_{1,j}, …, X_{n,j})`.
    pub row_chains: Vec<Vec<Label>>,
    /// Per column `i`: the chain over `(X_{i,0}, …, X_{i,m-1})`.
    pub col_chains: Vec<Vec<Label>>,
}

impl GridConfig {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        if self.labels.is_empty() {
            0
        } else {
            self.labels[0].len()
        }
    }
}

fn p3(x: Rat, h: i64, v: Rat) -> P3 {
    P3 {
        x,
        h: Rat::int(h),
        v,
    }
}

fn add_color(scene: &mut Scene, config: &GridConfig, color: Color, n: usize, m: usize) {
    let (dx, dv) = match color {
        Color::Blue => (Rat::int(0), Rat::int(0)),
        Color::Red => (Rat::new(1, 2), Rat::new(1, 2)),
    };
    let strand_base = scene.strands.len();
    // Site strands, one per lattice site, vertical between the layers.
    for i in 1..=n {
        for j in 0..m {
            let x = Rat::int(i as i64) + dx;
            let v = Rat::int(-(j as i64)) + dv;
            scene.strands.push(SceneStrand {
                label: config.labels[i - 1][j],
                color,
                path: vec![p3(x, 0, v), p3(x, -1, v)],
                closed: false,
            });
        }
    }
    let strut = |i: usize, j: usize| strand_base + (i - 1) * m + j;
    // Row boxes along X at height 0.
    for j in 0..m {
        let v = Rat::int(-(j as i64)) + dv;
        scene.boxes.push(SceneBox {
            kind: BoxKind::Row { j },
            color,
            word: (1..=n).map(|i| config.labels[i - 1][j]).collect(),
            chain: config.row_chains[j].clone(),
            legs: (1..=n).map(|i| strut(i, j)).collect(),
            spine: vec![
                p3(Rat::int(1) + dx, 0, v),
                p3(Rat::int(n as i64) + dx, 0, v),
            ],
        });
    }
    // Column boxes along the depth axis at height -1.
    for i in 1..=n {
        let x = Rat::int(i as i64) + dx;
        scene.boxes.push(SceneBox {
            kind: BoxKind::Col { i },
            color,
            word: (0..m).map(|j| config.labels[i - 1][j]).collect(),
            chain: config.col_chains[i - 1].clone(),
            legs: (0..m).map(|j| strut(i, j)).collect(),
            spine: vec![
                p3(x, -1, dv),
                p3(x, -1, Rat::int(-(m as i64 - 1)) + dv),
            ],
        });
    }
}

/// The LL grid-link scene for a pair of configurations; `red = None` gives
/// the blue-only diagram of the `L` functional.
pub fn ll_scene(
    _model: &AnyonModel,
    n: usize,
    m: usize,
    blue: &GridConfig,
    red: Option<&GridConfig>,
) -> Scene {
    assert!(n >= 1 && m >= 1, "degenerate sizes are handled upstream");
    assert_eq!(blue.n(), n);
    assert_eq!(blue.m(), m);
    let mut scene = Scene {
        n,
        m,
        strands: Vec::new(),
        boxes: Vec::new(),
    };
    add_color(&mut scene, blue, Color::Blue, n, m);
    if let Some(red) = red {
        assert_eq!(red.n(), n);
        assert_eq!(red.m(), m);
        add_color(&mut scene, red, Color::Red, n, m);
    }
    scene
}

/// Two interlocked bare rectangles forming the Hopf link, colored `x`
/// (blue) and `y` (red). Both loops run counterclockwise in the
/// projection.
pub fn hopf_scene(x: Label, y: Label) -> Scene {
    let rect = |label, color, x0: Rat, v0: Rat| {
        let x1 = x0 + Rat::int(1);
        let v1 = v0 - Rat::int(1);
        SceneStrand {
            label,
            color,
            // X-running edges at height 0, depth-running edges at height -1,
            // joined by vertical corner connectors, exactly like the grid
            // layers; the loop runs clockwise in the projection.
            path: vec![
                p3(x0, 0, v0),
                p3(x1, 0, v0),
                p3(x1, -1, v0),
                p3(x1, -1, v1),
                p3(x1, 0, v1),
                p3(x0, 0, v1),
                p3(x0, -1, v1),
                p3(x0, -1, v0),
            ],
            closed: true,
        }
    };
    Scene {
        n: 2,
        m: 2,
        strands: vec![
            rect(x, Color::Blue, Rat::int(1), Rat::int(0)),
            rect(y, Color::Red, Rat::new(3, 2), Rat::new(1, 2)),
        ],
        boxes: Vec::new(),
    }
}
