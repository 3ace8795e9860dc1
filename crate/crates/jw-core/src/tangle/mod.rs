//! Grid-link scenes and planar diagram evaluation.
//!
//! A [`Scene`] is a 3D presentation: boxes (row and column morphisms) with
//! spines along lattice lines, one labeled site strand per lattice site per
//! color, and rational coordinates throughout. [`compile_scene`] projects
//! along the height axis, runs exact incidence checks, and produces a
//! [`Diagram`] whose crossings are all strand–strand with over/under
//! resolved by height. [`evaluate_diagram`] sweeps the projected plane
//! bottom-to-top, applying box events, bends and braid maps from the hom
//! calculus.

mod compile;
mod eval;
mod scene;

pub use compile::{compile_scene, diagram_text, CompileError};
pub use eval::{evaluate_diagram, hopf_value, EvalError, SweepDirection};
pub use scene::{hopf_scene, ll_scene, GridConfig};

use crate::anyon::Label;
use crate::rat::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Blue,
    Red,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct P3 {
    pub x: Rat,
    pub h: Rat,
    pub v: Rat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct P2 {
    pub x: Rat,
    pub v: Rat,
}

/// A labeled 3D polyline strand.
#[derive(Debug, Clone)]
pub struct SceneStrand {
    pub label: Label,
    pub color: Color,
    pub path: Vec<P3>,
    /// Closed loops repeat no point; the last point connects back to the
    /// first.
    pub closed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoxKind {
    /// Row morphism `a_j ∈ hom(1, X_{1,j} ⊗ … ⊗ X_{n,j})`.
    Row { j: usize },
    /// Column morphism `b_i ∈ hom(X_{i,0} ⊗ … ⊗ X_{i,m-1}, 1)`.
    Col { i: usize },
}

/// A box with its payload fusion tree, ordered legs (site-strand indices),
/// and spine geometry.
#[derive(Debug, Clone)]
pub struct SceneBox {
    pub kind: BoxKind,
    pub color: Color,
    pub word: Vec<Label>,
    pub chain: Vec<Label>,
    pub legs: Vec<usize>,
    pub spine: Vec<P3>,
}

#[derive(Debug, Clone)]
pub struct Scene {
    pub n: usize,
    pub m: usize,
    pub strands: Vec<SceneStrand>,
    pub boxes: Vec<SceneBox>,
}

/// One projected segment of the compiled diagram.
#[derive(Debug, Clone)]
pub struct DiagStrand {
    pub label: Label,
    pub color: Color,
    pub height: Rat,
    /// Endpoints in strand orientation order.
    pub a: P2,
    pub b: P2,
    /// Index of the originating loop for bare strands, or the box index.
    pub group: usize,
    /// Previous/next segment along a bare loop; `None` for box-structured
    /// segments, whose connectivity lives in the vertices.
    pub prev: Option<usize>,
    pub next: Option<usize>,
}

#[derive(Debug, Clone, Copy)]
pub struct DiagCrossing {
    pub over: usize,
    pub under: usize,
    pub at: P2,
}

/// Composite grid vertex: a row trivalent vertex stacked over a column
/// trivalent vertex, joined by the (projected-away) site strand.
#[derive(Debug, Clone)]
pub struct DiagVertex {
    pub at: P2,
    pub color: Color,
    /// (e_prev, strut, e_next) of the row tree; e_prev/e_next may be the
    /// unit at the row ends.
    pub row_vertex: (Label, Label, Label),
    /// (sigma_prev, strut, sigma_next) of the column tree; `None` at the
    /// front row where the column begins.
    pub col_vertex: Option<(Label, Label, Label)>,
    pub west: Option<usize>,
    pub east: Option<usize>,
    pub north: Option<usize>,
    pub south: usize,
}

#[derive(Debug, Clone)]
pub struct Diagram {
    pub strands: Vec<DiagStrand>,
    pub vertices: Vec<DiagVertex>,
    pub crossings: Vec<DiagCrossing>,
}

impl Diagram {
    pub fn monochromatic_crossings(&self) -> usize {
        self.crossings
            .iter()
            .filter(|c| self.strands[c.over].color == self.strands[c.under].color)
            .count()
    }
}
