//! Bumping bijections between one-inversion tableaux of a shape `λ` and
//! standard tableaux of the stair-step shapes of `λ`.
//!
//! The forward map starts from the larger entry `b` of the sole inversion
//! and bumps an increasing run of distinguished entries one column right
//! at a time, back-filling the box it vacated. The reverse map removes the
//! entry outside `λ` and bumps a decreasing run leftward until the carried
//! entry lands in the empty box, where a row flip recreates the inversion.
//!
//! Before bumping, the forward map swaps the two rows holding `a` and `b`
//! over columns `1..=k`. The reverse map ends with the same flip, so this
//! is what makes the two procedures mutually inverse when `k > 1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{Partition, StairStepMove};
use crate::tableau::{InvertedTableau, Tableau};

/// A box position `(row, col)`, both 0-based.
pub type Cell = (usize, usize);

/// One elementary change to the filling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum TraceEvent {
    /// Rows `upper` and `upper + 1` exchange their entries in columns `0..=last_col`.
    Flip { upper: usize, last_col: usize },
    /// `value` is lifted out of `cell`, leaving it empty.
    Take { cell: Cell, value: usize },
    /// `value` is written into the empty `cell`.
    Put { cell: Cell, value: usize },
    /// `incoming` replaces `outgoing`, which is carried on.
    Bump {
        cell: Cell,
        incoming: usize,
        outgoing: usize,
    },
    /// `value` slides from `from` into the empty box `to`.
    Slide { from: Cell, to: Cell, value: usize },
    /// The empty box `cell` cannot be back-filled and leaves the shape.
    Close { cell: Cell },
}

/// The distinguished entries of one run of a map, in the order they were
/// carried, and every change made to the filling.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BumpTrace {
    pub distinguished: Vec<usize>,
    pub events: Vec<TraceEvent>,
}

impl BumpTrace {
    /// Applies the events to `input`, reproducing the map's output.
    pub fn replay(&self, input: &Tableau) -> Result<Tableau> {
        let mut cells = cells_of(input);
        for ev in &self.events {
            apply(&mut cells, *ev)?;
        }
        tableau_of(&cells)
    }

    /// Undoes the events on `output`, recovering the map's input.
    pub fn rewind(&self, output: &Tableau) -> Result<Tableau> {
        let mut cells = cells_of(output);
        for ev in self.events.iter().rev() {
            apply(&mut cells, inverse(*ev))?;
        }
        tableau_of(&cells)
    }
}

fn inverse(ev: TraceEvent) -> TraceEvent {
    match ev {
        TraceEvent::Flip { .. } | TraceEvent::Close { .. } => ev,
        TraceEvent::Take { cell, value } => TraceEvent::Put { cell, value },
        TraceEvent::Put { cell, value } => TraceEvent::Take { cell, value },
        TraceEvent::Bump {
            cell,
            incoming,
            outgoing,
        } => TraceEvent::Bump {
            cell,
            incoming: outgoing,
            outgoing: incoming,
        },
        TraceEvent::Slide { from, to, value } => TraceEvent::Slide {
            from: to,
            to: from,
            value,
        },
    }
}

fn mismatch(ev: TraceEvent) -> Error {
    Error::BumpInvariant(format!("trace event {ev:?} does not match the filling"))
}

fn apply(cells: &mut BTreeMap<Cell, usize>, ev: TraceEvent) -> Result<()> {
    match ev {
        TraceEvent::Flip { upper, last_col } => {
            for c in 0..=last_col {
                let top = cells.remove(&(upper, c));
                let bottom = cells.remove(&(upper + 1, c));
                let (Some(top), Some(bottom)) = (top, bottom) else {
                    return Err(mismatch(ev));
                };
                cells.insert((upper, c), bottom);
                cells.insert((upper + 1, c), top);
            }
        }
        TraceEvent::Take { cell, value } => {
            if cells.remove(&cell) != Some(value) {
                return Err(mismatch(ev));
            }
        }
        TraceEvent::Put { cell, value } => {
            if cells.insert(cell, value).is_some() {
                return Err(mismatch(ev));
            }
        }
        TraceEvent::Bump {
            cell,
            incoming,
            outgoing,
        } => {
            if cells.insert(cell, incoming) != Some(outgoing) {
                return Err(mismatch(ev));
            }
        }
        TraceEvent::Slide { from, to, value } => {
            if cells.remove(&from) != Some(value) || cells.insert(to, value).is_some() {
                return Err(mismatch(ev));
            }
        }
        TraceEvent::Close { cell } => {
            if cells.contains_key(&cell) {
                return Err(mismatch(ev));
            }
        }
    }
    Ok(())
}

fn cells_of(t: &Tableau) -> BTreeMap<Cell, usize> {
    t.rows()
        .iter()
        .enumerate()
        .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| ((r, c), v)))
        .collect()
}

fn tableau_of(cells: &BTreeMap<Cell, usize>) -> Result<Tableau> {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for (&(r, c), &v) in cells {
        if r == rows.len() {
            rows.push(Vec::new());
        }
        if r + 1 != rows.len() || c != rows[r].len() {
            return Err(Error::BumpInvariant(format!(
                "filled boxes do not form a Young diagram near ({}, {})",
                r + 1,
                c + 1
            )));
        }
        rows[r].push(v);
    }
    Tableau::new(rows)
}

/// A partly filled diagram of shape `λ`, possibly with one box outside it,
/// that records each change as it is made.
struct Board {
    lam: Vec<usize>,
    cells: BTreeMap<Cell, usize>,
    trace: BumpTrace,
}

impl Board {
    fn new(t: &Tableau, lam: &Partition) -> Self {
        Board {
            lam: lam.parts().to_vec(),
            cells: cells_of(t),
            trace: BumpTrace::default(),
        }
    }

    fn in_shape(&self, (r, c): Cell) -> bool {
        r < self.lam.len() && c < self.lam[r]
    }

    fn filled(&self, cell: Cell) -> Option<usize> {
        self.cells.get(&cell).copied()
    }

    fn record(&mut self, ev: TraceEvent) {
        apply(&mut self.cells, ev).expect("board events match the board");
        self.trace.events.push(ev);
    }

    fn flip(&mut self, upper: usize, last_col: usize) {
        self.record(TraceEvent::Flip { upper, last_col });
    }

    fn take(&mut self, cell: Cell) -> usize {
        let value = self.cells[&cell];
        self.record(TraceEvent::Take { cell, value });
        value
    }

    fn put(&mut self, cell: Cell, value: usize) {
        self.record(TraceEvent::Put { cell, value });
    }

    fn bump(&mut self, cell: Cell, incoming: usize) -> usize {
        let outgoing = self.cells[&cell];
        self.record(TraceEvent::Bump {
            cell,
            incoming,
            outgoing,
        });
        outgoing
    }

    fn slide(&mut self, from: Cell, to: Cell) {
        let value = self.cells[&from];
        self.record(TraceEvent::Slide { from, to, value });
    }

    fn column(&self, col: usize) -> impl Iterator<Item = (Cell, usize)> + '_ {
        self.cells
            .iter()
            .filter(move |(&(_, c), _)| c == col)
            .map(|(&cell, &v)| (cell, v))
    }

    /// A neighbour of the empty box that may slide into it.
    fn movable(&self, cell: Cell) -> Option<(Cell, usize)> {
        if self.in_shape(cell) {
            self.filled(cell).map(|v| (cell, v))
        } else {
            None
        }
    }

    /// Back-fills the empty box from the right or below until it reaches
    /// column `stop_col` (`Ok`), or until it has nowhere to go and leaves
    /// the shape (`Err`).
    fn back_fill(&mut self, mut hole: Cell, stop_col: usize) -> std::result::Result<Cell, Cell> {
        loop {
            if hole.1 == stop_col {
                return Ok(hole);
            }
            let right = self.movable((hole.0, hole.1 + 1));
            let below = self.movable((hole.0 + 1, hole.1));
            let next = match (right, below) {
                (Some(r), Some(b)) => {
                    if r.1 < b.1 {
                        r.0
                    } else {
                        b.0
                    }
                }
                (Some(r), None) => r.0,
                (None, Some(b)) => b.0,
                (None, None) => {
                    self.record(TraceEvent::Close { cell: hole });
                    return Err(hole);
                }
            };
            self.slide(next, hole);
            hole = next;
        }
    }

    fn into_tableau(self) -> Result<(Tableau, BumpTrace)> {
        Ok((tableau_of(&self.cells)?, self.trace))
    }
}

struct Forward {
    added: Cell,
    vacated: Cell,
    tableau: Tableau,
    trace: BumpTrace,
}

fn forward(t: &InvertedTableau) -> Result<Forward> {
    let inversions = t.inversions();
    if inversions.len() != 1 {
        return Err(Error::WrongInversionCount {
            expected: 1,
            found: inversions.len(),
        });
    }
    let pair = inversions[0];
    let k = pair.column - 1;
    let (p, _) = t.position(pair.large).expect("entry present");
    let (q, _) = t.position(pair.small).expect("entry present");
    if q != p + 1 {
        return Err(Error::BumpInvariant(format!(
            "inversion ({},{}) is not vertically adjacent",
            pair.small, pair.large
        )));
    }

    let mut board = Board::new(t, t.shape());
    board.flip(p, k);
    let mut hole = Some((p + 1, k));
    let mut carry = board.take((p + 1, k));
    board.trace.distinguished.push(carry);
    let mut vacated = None;
    let mut col = k + 1;
    let added = loop {
        let target = board
            .column(col)
            .filter(|&(_, v)| v > carry)
            .min_by_key(|&(_, v)| v);
        if let Some((cell, _)) = target {
            carry = board.bump(cell, carry);
            board.trace.distinguished.push(carry);
            if let Some(h) = hole {
                match board.back_fill(h, col) {
                    Ok(next) => hole = Some(next),
                    Err(closed) => {
                        hole = None;
                        vacated = Some(closed);
                    }
                }
            }
            col += 1;
            continue;
        }
        let cell = (board.column(col).count(), col);
        if board.in_shape(cell) {
            return Err(Error::BumpInvariant(format!(
                "column {} has an unfilled box inside the shape",
                col + 1
            )));
        }
        board.put(cell, carry);
        if let Some(mut h) = hole {
            while let Some((below, _)) = board.movable((h.0 + 1, h.1)) {
                board.slide(below, h);
                h = below;
            }
            board.record(TraceEvent::Close { cell: h });
            vacated = Some(h);
        }
        break cell;
    };
    let vacated = vacated.expect("the empty box always leaves the shape");
    let (tableau, trace) = board.into_tableau()?;
    if !tableau.is_standard() {
        return Err(Error::BumpInvariant(format!(
            "forward bumping produced a non-standard tableau {tableau}"
        )));
    }
    Ok(Forward {
        added,
        vacated,
        tableau,
        trace,
    })
}

fn reverse(t: &Tableau, lam: &Partition, extra: Cell, vacated: Cell) -> Result<(InvertedTableau, BumpTrace)> {
    let mut board = Board::new(t, lam);
    let mut carry = board.take(extra);
    board.trace.distinguished.push(carry);
    let mut from_col = extra.1;
    let mut hole = vacated;

    let bump_left = |board: &mut Board, carry: usize, col: usize| -> Result<usize> {
        let target = board
            .column(col)
            .filter(|&(_, v)| v < carry)
            .max_by_key(|&(_, v)| v);
        let (cell, _) = target.ok_or_else(|| {
            Error::BumpInvariant(format!("no entry below {carry} in column {}", col + 1))
        })?;
        let out = board.bump(cell, carry);
        board.trace.distinguished.push(out);
        Ok(out)
    };

    loop {
        let (r, c) = hole;
        if c + 1 < from_col {
            from_col -= 1;
            carry = bump_left(&mut board, carry, from_col)?;
            continue;
        }
        if c + 1 != from_col {
            return Err(Error::BumpInvariant(format!(
                "empty box ({}, {}) lies right of the carried entry {carry}",
                r + 1,
                c + 1
            )));
        }
        let above = r.checked_sub(1).and_then(|u| board.filled((u, c)).map(|v| ((u, c), v)));
        let left = c.checked_sub(1).and_then(|l| board.filled((r, l)).map(|v| ((r, l), v)));
        let best = [above, left].into_iter().flatten().max_by_key(|&(_, v)| v);
        match best {
            Some((cell, v)) if v > carry => {
                board.slide(cell, hole);
                hole = cell;
                if cell.1 < c {
                    from_col = c;
                    carry = bump_left(&mut board, carry, c)?;
                }
            }
            _ => {
                board.put(hole, carry);
                if r == 0 {
                    return Err(Error::BumpInvariant(format!(
                        "{carry} settled in the top row, leaving nothing to flip"
                    )));
                }
                board.flip(r - 1, c);
                break;
            }
        }
    }
    let (tableau, trace) = board.into_tableau()?;
    let inverted = InvertedTableau::new(tableau).map_err(|e| Error::BumpInvariant(e.to_string()))?;
    if inverted.inversion_count() != 1 {
        return Err(Error::BumpInvariant(format!(
            "reverse bumping produced {} inversions in {inverted}",
            inverted.inversion_count()
        )));
    }
    Ok((inverted, trace))
}

/// Maps a one-inversion tableau of a rectangle `n^m` to a standard tableau
/// of shape `(n+1, n, …, n, n−1)`.
pub fn phi1_rect(t: &InvertedTableau) -> Result<(Tableau, BumpTrace)> {
    let shape = t.shape();
    if !shape.is_rectangular() {
        return Err(Error::WrongShape {
            expected: "a rectangle".into(),
            found: shape.to_string(),
        });
    }
    let out = forward(t)?;
    let expected = shape.rectangle_stair_step()?;
    if out.tableau.shape() != &expected {
        return Err(Error::BumpInvariant(format!(
            "rectangular bumping ended in shape {}",
            out.tableau.shape()
        )));
    }
    Ok((out.tableau, out.trace))
}

/// The rectangle whose stair-step shape is `shape`, if any.
fn rectangle_below(shape: &Partition) -> Option<Partition> {
    let n = shape.parts()[0].checked_sub(1).filter(|&n| n >= 1)?;
    let m = if n == 1 { shape.rows() + 1 } else { shape.rows() };
    let rect = Partition::rectangle(m, n).ok()?;
    (rect.rectangle_stair_step().ok()? == *shape).then_some(rect)
}

/// Inverse of [`phi1_rect`].
pub fn phi2_rect(t: &Tableau) -> Result<(InvertedTableau, BumpTrace)> {
    let rect = rectangle_below(t.shape()).ok_or_else(|| Error::WrongShape {
        expected: "(n+1, n, ..., n, n-1)".into(),
        found: t.shape().to_string(),
    })?;
    if !t.is_standard() {
        return Err(Error::NotStandard);
    }
    let mv = StairStepMove {
        target_row: 1,
        source_row: rect.rows(),
    };
    phi2_general(mv, t, &rect)
}

/// Maps a one-inversion tableau of any shape `λ` to a standard tableau of
/// one of its stair-step shapes, reported as the move producing it.
pub fn phi1_general(t: &InvertedTableau) -> Result<(StairStepMove, Tableau, BumpTrace)> {
    let out = forward(t)?;
    let lam = t.shape();
    if out.vacated.1 + 1 != lam.parts()[out.vacated.0] || out.added.1 != lam.parts().get(out.added.0).copied().unwrap_or(0) {
        return Err(Error::BumpInvariant(format!(
            "boxes ({}, {}) and ({}, {}) are not a corner pair of {lam}",
            out.added.0 + 1,
            out.added.1 + 1,
            out.vacated.0 + 1,
            out.vacated.1 + 1
        )));
    }
    let mv = StairStepMove {
        target_row: out.added.0 + 1,
        source_row: out.vacated.0 + 1,
    };
    if !lam.stair_step_shapes().iter().any(|(m, _)| *m == mv) {
        return Err(Error::BumpInvariant(format!(
            "move {}->{} is not a stair-step move of {lam}",
            mv.source_row, mv.target_row
        )));
    }
    Ok((mv, out.tableau, out.trace))
}

/// Inverse of [`phi1_general`]: `t` must be standard of shape `mv` applied to `lam`.
pub fn phi2_general(mv: StairStepMove, t: &Tableau, lam: &Partition) -> Result<(InvertedTableau, BumpTrace)> {
    let Some((_, target)) = lam.stair_step_shapes().into_iter().find(|(m, _)| *m == mv) else {
        return Err(Error::ShapeMismatch(format!(
            "move {}->{} is not a stair-step move of {lam}",
            mv.source_row, mv.target_row
        )));
    };
    if t.shape() != &target {
        return Err(Error::ShapeMismatch(format!(
            "tableau has shape {}, move {}->{} on {lam} gives {target}",
            t.shape(),
            mv.source_row,
            mv.target_row
        )));
    }
    if !t.is_standard() {
        return Err(Error::NotStandard);
    }
    let parts = lam.parts();
    let extra = (mv.target_row - 1, parts[mv.target_row - 1]);
    let vacated = (mv.source_row - 1, parts[mv.source_row - 1] - 1);
    reverse(t, lam, extra, vacated)
}
