//! Tilted checkerboard permutations and the lower-bound separator
//! constructions built from them.
//!
//! The `r × s` checkerboard has one element per grid cell `(a, b)` with
//! `a ≡ b (mod 2)`, columns `a` read left to right and rows `b` bottom to
//! top. Every element in column `a` sits to the right of everything in
//! earlier columns, and every element in row `b` above everything in lower
//! rows. The order *inside* a column or row is fixed by the tilt: each cell
//! gets an offset from its diagonal index `j = (b − a)/2`, positions sort by
//! `(a, offset)` and values by `(b, offset)`.
//!
//! * [`Tilt::Linear`] uses `offset = j`, i.e. positions in lexicographic
//!   order of `(a, b)` and values in lexicographic order of `(b, −a)`.
//! * [`Tilt::Wrapped(p)`](Tilt::Wrapped) uses `offset = j mod p`. On the
//!   `2m × 2m` board with `p = m` this is the lattice `y ≡ (2m+1)x (mod 2m²)`
//!   cut into `m × m` blocks, one point per dark block.
//!
//! Even square boards are only separators under the wrapped tilt (the
//! linear `4 × 4` board `26481537` repeats a 6-pattern), while full odd
//! square boards need the linear one, so each construction plan records
//! which tilt it uses.

use std::fmt;

use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{binomial, Permutation};
use crate::separator::is_k_separator;

/// Selector budget below which debug builds re-verify every construction.
const DEBUG_VERIFY_SELECTORS: u64 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridCell {
    /// Column, 1-based, left to right.
    pub a: usize,
    /// Row, 1-based, bottom to top.
    pub b: usize,
}

impl GridCell {
    pub fn new(a: usize, b: usize) -> Self {
        Self { a, b }
    }
}

impl fmt::Display for GridCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// How cells are ordered inside a column (for positions) and inside a row
/// (for values).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tilt {
    /// Offset is the diagonal index `(b − a)/2` itself.
    #[default]
    Linear,
    /// Offset is the diagonal index reduced modulo the period.
    Wrapped(usize),
}

impl Tilt {
    /// The tilt [`checkerboard`] uses: wrapped with period `m` on the
    /// `2m × 2m` board, linear everywhere else.
    pub fn default_for(r: usize, s: usize) -> Self {
        if r == s && r.is_multiple_of(2) {
            Tilt::Wrapped(r / 2)
        } else {
            Tilt::Linear
        }
    }

    fn offset(self, cell: GridCell) -> i64 {
        let j = (cell.b as i64 - cell.a as i64) / 2;
        match self {
            Tilt::Linear | Tilt::Wrapped(0) => j,
            Tilt::Wrapped(p) => j.rem_euclid(p as i64),
        }
    }
}

impl fmt::Display for Tilt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tilt::Linear => f.write_str("linear"),
            Tilt::Wrapped(p) => write!(f, "wrapped mod {p}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckerboardLayout {
    pub r: usize,
    pub s: usize,
    pub tilt: Tilt,
    /// Valid cells in position order.
    cells: Vec<GridCell>,
    /// `values[p]` is the value of `cells[p]`.
    values: Vec<u32>,
    /// Column-major lookup: `slot[(a-1)*s + (b-1)]` = position index + 1, or 0.
    slot: Vec<u32>,
}

impl CheckerboardLayout {
    /// The `r × s` board with its default tilt.
    pub fn new(r: usize, s: usize) -> Result<Self> {
        Self::with_tilt(r, s, Tilt::default_for(r, s))
    }

    pub fn with_tilt(r: usize, s: usize, tilt: Tilt) -> Result<Self> {
        if r == 0 || s == 0 {
            return Err(Error::NonPositiveDimensions(r, s));
        }
        let mut cells: Vec<GridCell> = (1..=r)
            .flat_map(|a| (1..=s).map(move |b| GridCell::new(a, b)))
            .filter(|c| c.a % 2 == c.b % 2)
            .collect();
        cells.sort_by_key(|&c| (c.a, tilt.offset(c), c.b));
        let mut by_value: Vec<usize> = (0..cells.len()).collect();
        by_value.sort_by_key(|&i| (cells[i].b, tilt.offset(cells[i]), cells[i].a));
        let mut values = vec![0u32; cells.len()];
        for (rank, &i) in by_value.iter().enumerate() {
            values[i] = rank as u32 + 1;
        }
        let mut slot = vec![0u32; r * s];
        for (p, c) in cells.iter().enumerate() {
            slot[(c.a - 1) * s + (c.b - 1)] = p as u32 + 1;
        }
        Ok(Self {
            r,
            s,
            tilt,
            cells,
            values,
            slot,
        })
    }

    /// `⌈rs/2⌉`.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[GridCell] {
        &self.cells
    }

    pub fn contains(&self, cell: GridCell) -> bool {
        self.position_of(cell).is_some()
    }

    /// 1-based position of `cell`, if it carries an element.
    pub fn position_of(&self, cell: GridCell) -> Option<usize> {
        if cell.a == 0 || cell.b == 0 || cell.a > self.r || cell.b > self.s {
            return None;
        }
        match self.slot[(cell.a - 1) * self.s + (cell.b - 1)] {
            0 => None,
            p => Some(p as usize),
        }
    }

    /// 1-based value of `cell`, if it carries an element.
    pub fn value_of(&self, cell: GridCell) -> Option<usize> {
        self.position_of(cell).map(|p| self.values[p - 1] as usize)
    }

    pub fn permutation(&self) -> Permutation {
        Permutation::from_values_unchecked(self.values.clone())
    }

    /// The checkerboard permutation with the `omitted` cells deleted and the
    /// rest standardized.
    pub fn restrict(&self, omitted: &[GridCell]) -> Result<Permutation> {
        let positions = omitted
            .iter()
            .map(|&c| self.position_of(c).ok_or(Error::CellNotInLayout(c.a, c.b)))
            .collect::<Result<Vec<_>>>()?;
        if positions.len() == self.len() {
            return Err(Error::EmptyInput);
        }
        self.permutation().delete_positions(&positions)
    }
}

/// The `r × s` checkerboard layout and its permutation, using
/// [`Tilt::default_for`].
pub fn checkerboard(r: usize, s: usize) -> Result<(CheckerboardLayout, Permutation)> {
    checkerboard_tilted(r, s, Tilt::default_for(r, s))
}

pub fn checkerboard_tilted(r: usize, s: usize, tilt: Tilt) -> Result<(CheckerboardLayout, Permutation)> {
    let layout = CheckerboardLayout::with_tilt(r, s, tilt)?;
    let perm = layout.permutation();
    Ok((layout, perm))
}

/// Restriction of a layout by omitting grid cells.
pub fn restrict(layout: &CheckerboardLayout, omitted: &[GridCell]) -> Result<Permutation> {
    layout.restrict(omitted)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subcase {
    #[serde(rename = "i.a")]
    IA,
    #[serde(rename = "i.b")]
    IB,
    #[serde(rename = "i.c")]
    IC,
    #[serde(rename = "ii.a")]
    IIA,
    #[serde(rename = "ii.b")]
    IIB,
    #[serde(rename = "ii.c")]
    IIC,
}

impl fmt::Display for Subcase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subcase::IA => "i.a",
            Subcase::IB => "i.b",
            Subcase::IC => "i.c",
            Subcase::IIA => "ii.a",
            Subcase::IIB => "ii.b",
            Subcase::IIC => "ii.c",
        })
    }
}

/// Which checkerboard to start from and which cells to drop for a given `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionPlan {
    pub k: usize,
    pub m: usize,
    pub subcase: Subcase,
    pub base: (usize, usize),
    /// Wrapped with period `m` for the `(i.*)` subcases, linear otherwise.
    pub tilt: Tilt,
    pub omitted: Vec<GridCell>,
    /// Length of the resulting permutation, `k + ⌊√(2k−3)⌋ − 1`.
    pub length: usize,
}

/// The scale `m` with `2m²−2m+2 ≤ k ≤ 2m²+2m+1`.
pub fn scale_for(k: usize) -> Result<usize> {
    if k < 2 {
        return Err(Error::KTooSmall(k));
    }
    Ok((2 * k - 3).sqrt().div_ceil(2))
}

/// `k + ⌊√(2k−3)⌋ − 1`, the length every construction reaches.
pub fn construction_length(k: usize) -> Result<usize> {
    if k < 2 {
        return Err(Error::KTooSmall(k));
    }
    Ok(k + (2 * k - 3).sqrt() - 1)
}

/// Cells of the `(2m+2) × (2m+2)` board outside the `(2m+1) × (2m+1)`
/// corner, in the order they are added back: last column bottom to top,
/// then top row right to left.
fn outer_ring(m: usize) -> Vec<GridCell> {
    let edge = 2 * m + 2;
    let column = (1..=m + 1).map(|t| GridCell::new(edge, 2 * t));
    let top_row = (1..=m).rev().map(|t| GridCell::new(2 * t, edge));
    column.chain(top_row).collect()
}

pub fn plan_for(k: usize) -> Result<ConstructionPlan> {
    let m = scale_for(k)?;
    let length = construction_length(k)?;
    let (mm, start1, start2) = (2 * m * m, 2 * m * m - 2 * m + 2, 2 * m * m + 2);
    debug_assert!(start1 <= k && k <= mm + 2 * m + 1);

    let (subcase, base, omitted) = if k == start1 {
        (Subcase::IA, (2 * m, 2 * m), vec![])
    } else if k <= mm - m + 2 {
        let i = k - start1;
        let omitted = (i + 1..=m).map(|t| GridCell::new(2 * m + 1, 2 * t - 1)).collect();
        (Subcase::IB, (2 * m + 1, 2 * m), omitted)
    } else if k < start2 {
        let j = k - (mm - m + 2);
        let omitted = (1..=m + 1 - j).map(|xi| GridCell::new(2 * xi - 1, 2 * m + 1)).collect();
        (Subcase::IC, (2 * m + 1, 2 * m + 1), omitted)
    } else if k == start2 {
        (Subcase::IIA, (2 * m + 1, 2 * m + 1), vec![])
    } else {
        let subcase = if k <= mm + m + 2 { Subcase::IIB } else { Subcase::IIC };
        let extra = k - start2;
        let omitted = outer_ring(m).split_off(extra);
        (subcase, (2 * m + 2, 2 * m + 2), omitted)
    };
    let tilt = match subcase {
        Subcase::IA | Subcase::IB | Subcase::IC => Tilt::Wrapped(m),
        _ => Tilt::Linear,
    };
    let plan = ConstructionPlan {
        k,
        m,
        subcase,
        base,
        tilt,
        omitted,
        length,
    };
    let cells = (base.0 * base.1).div_ceil(2);
    if cells - plan.omitted.len() != length {
        return Err(Error::ConstructionInvalid(format!(
            "plan for k = {k} yields length {} instead of {length}",
            cells - plan.omitted.len()
        )));
    }
    Ok(plan)
}

/// Builds the permutation a plan describes.
pub fn realize(plan: &ConstructionPlan) -> Result<Permutation> {
    let layout = CheckerboardLayout::with_tilt(plan.base.0, plan.base.1, plan.tilt)?;
    let sigma = layout.restrict(&plan.omitted)?;
    if sigma.len() != plan.length {
        return Err(Error::ConstructionInvalid(format!(
            "restriction has length {} instead of {}",
            sigma.len(),
            plan.length
        )));
    }
    Ok(sigma)
}

/// A k-separator of length `k + ⌊√(2k−3)⌋ − 1`.
///
/// Debug builds re-check the separator property when the instance is small.
pub fn construct_separator(k: usize) -> Result<Permutation> {
    let sigma = realize(&plan_for(k)?)?;
    if cfg!(debug_assertions) && binomial(sigma.len(), k) <= DEBUG_VERIFY_SELECTORS {
        ensure_separator(&sigma, k)?;
    }
    Ok(sigma)
}

/// [`construct_separator`] followed by an unconditional full verification.
pub fn construct_verified(k: usize) -> Result<Permutation> {
    let sigma = realize(&plan_for(k)?)?;
    ensure_separator(&sigma, k)?;
    Ok(sigma)
}

fn ensure_separator(sigma: &Permutation, k: usize) -> Result<()> {
    let report = is_k_separator(sigma, k)?;
    match report.witness {
        None => Ok(()),
        Some((a, b)) => Err(Error::ConstructionInvalid(format!(
            "construction for k = {k} repeats a pattern at {a} and {b}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn checkerboard_examples() {
        assert_eq!(checkerboard(2, 2).unwrap().1, p("12"));
        assert_eq!(checkerboard(3, 3).unwrap().1, p("25314"));
        assert_eq!(checkerboard(4, 4).unwrap().1, p("16385274"));
        assert_eq!(checkerboard_tilted(4, 4, Tilt::Linear).unwrap().1, p("26481537"));
        assert_eq!(checkerboard(3, 2).unwrap().1, p("231"));
        assert_eq!(checkerboard(1, 1).unwrap().1, p("1"));
        assert_eq!(checkerboard(0, 3).unwrap_err(), Error::NonPositiveDimensions(0, 3));
    }

    #[test]
    fn layout_invariants() {
        for r in 1..=7 {
            for s in 1..=7 {
                let layout = CheckerboardLayout::with_tilt(r, s, Tilt::Linear).unwrap();
                assert_eq!(layout.len(), (r * s).div_ceil(2));
                let mut by_pos = layout.cells().to_vec();
                by_pos.sort();
                assert_eq!(by_pos, layout.cells());
                let mut by_val = layout.cells().to_vec();
                by_val.sort_by_key(|c| (c.b, std::cmp::Reverse(c.a)));
                for (v, c) in by_val.iter().enumerate() {
                    assert_eq!(layout.value_of(*c), Some(v + 1));
                }
                for (p, c) in layout.cells().iter().enumerate() {
                    assert_eq!(layout.position_of(*c), Some(p + 1));
                    assert_eq!(c.a % 2, c.b % 2);
                }
                assert!(!layout.contains(GridCell::new(1, 2)));
                // Any tilt keeps columns and rows in grid order.
                for period in 1..=4 {
                    let wrapped = CheckerboardLayout::with_tilt(r, s, Tilt::Wrapped(period)).unwrap();
                    assert_eq!(wrapped.len(), layout.len());
                    for c in layout.cells() {
                        for d in layout.cells() {
                            let (pc, pd) = (wrapped.position_of(*c), wrapped.position_of(*d));
                            let (vc, vd) = (wrapped.value_of(*c), wrapped.value_of(*d));
                            if c.a < d.a {
                                assert!(pc < pd);
                            }
                            if c.b < d.b {
                                assert!(vc < vd);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn restrict_examples() {
        let (layout, full) = checkerboard(3, 3).unwrap();
        assert_eq!(layout.restrict(&[]).unwrap(), full);
        let top = [GridCell::new(1, 3), GridCell::new(3, 3)];
        assert_eq!(restrict(&layout, &top).unwrap(), p("231"));
        let (layout4, _) = checkerboard(4, 4).unwrap();
        assert_eq!(layout4.tilt, Tilt::Wrapped(2));
        let cut = restrict(&layout4, &[GridCell::new(4, 2), GridCell::new(4, 4)]).unwrap();
        assert_eq!(cut.len(), 6);
        assert_eq!(
            layout.restrict(&[GridCell::new(1, 2)]),
            Err(Error::CellNotInLayout(1, 2))
        );
    }

    #[test]
    fn plan_examples() {
        let plan = plan_for(2).unwrap();
        assert_eq!((plan.m, plan.subcase, plan.base), (1, Subcase::IA, (2, 2)));
        let plan = plan_for(4).unwrap();
        assert_eq!((plan.m, plan.subcase, plan.base), (1, Subcase::IIA, (3, 3)));
        let plan = plan_for(6).unwrap();
        assert_eq!((plan.m, plan.subcase, plan.base), (2, Subcase::IA, (4, 4)));
        assert_eq!(plan_for(1), Err(Error::KTooSmall(1)));
        assert_eq!(plan_for(3).unwrap().subcase, Subcase::IB);
        assert_eq!(plan_for(5).unwrap().subcase, Subcase::IIB);
        // m = 3 spans k in [14, 25].
        let subcases: Vec<Subcase> = (14..=25).map(|k| plan_for(k).unwrap().subcase).collect();
        use Subcase::*;
        assert_eq!(
            subcases,
            vec![IA, IB, IB, IB, IC, IC, IIA, IIB, IIB, IIB, IIC, IIC]
        );
    }

    #[test]
    fn plan_json_shape() {
        let json = serde_json::to_string(&plan_for(3).unwrap()).unwrap();
        assert_eq!(
            json,
            r#"{"k":3,"m":1,"subcase":"i.b","base":[3,2],"tilt":{"wrapped":1},"omitted":[],"length":3}"#
        );
    }

    #[test]
    fn scale_is_unique_up_to_a_million() {
        for k in 2..=1_000_000usize {
            let m = scale_for(k).unwrap();
            assert!(2 * m * m - 2 * m + 2 <= k && k <= 2 * m * m + 2 * m + 1, "k = {k}");
            // Neighbouring scales never contain k.
            let below = m - 1;
            assert!(below == 0 || k > 2 * below * below + 2 * below + 1);
            let above = m + 1;
            assert!(k < 2 * above * above - 2 * above + 2);
        }
    }

    #[test]
    fn construction_examples() {
        assert_eq!(construct_separator(2).unwrap(), p("12"));
        assert_eq!(construct_separator(4).unwrap(), p("25314"));
        assert_eq!(construct_separator(6).unwrap(), p("16385274"));
        assert_eq!(construct_separator(0), Err(Error::KTooSmall(0)));
    }

    #[test]
    fn length_law_to_200() {
        for k in 2..=200 {
            let sigma = construct_separator(k).unwrap();
            assert_eq!(sigma.len(), construction_length(k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn separator_law_small() {
        for k in 2..=26 {
            construct_verified(k).unwrap();
        }
    }

    #[test]
    fn boundary_consistency() {
        for m in 1..=4 {
            // (i.b) with i = m equals the (2m+1)x(2m+1) board minus its whole
            // top row, i.e. (i.c) with j = 0.
            let k_ib = 2 * m * m - m + 2;
            let ib = realize(&plan_for(k_ib).unwrap()).unwrap();
            let (big, _) = checkerboard_tilted(2 * m + 1, 2 * m + 1, Tilt::Wrapped(m)).unwrap();
            let top_row: Vec<GridCell> = (1..=m + 1).map(|x| GridCell::new(2 * x - 1, 2 * m + 1)).collect();
            assert_eq!(big.restrict(&top_row).unwrap(), ib);
            // (ii.b) with i = 0 is (ii.a).
            let (bigger, _) = checkerboard_tilted(2 * m + 2, 2 * m + 2, Tilt::Linear).unwrap();
            let iia = realize(&plan_for(2 * m * m + 2).unwrap()).unwrap();
            assert_eq!(bigger.restrict(&outer_ring(m)).unwrap(), iia);
        }
    }

    #[test]
    fn column_order_relation() {
        // value(2m+1, b) < value(e, f) < value(2m+1, d) for e < 2m+1, b <= f < d.
        for m in 1..=3 {
            let layout = CheckerboardLayout::with_tilt(2 * m + 1, 2 * m, Tilt::Linear).unwrap();
            let col = 2 * m + 1;
            for b in (1..=2 * m).filter(|b| b % 2 == 1) {
                for d in (b + 1..=2 * m).filter(|d| d % 2 == 1) {
                    let lo = layout.value_of(GridCell::new(col, b)).unwrap();
                    let hi = layout.value_of(GridCell::new(col, d)).unwrap();
                    for e in 1..col {
                        for f in b..d {
                            if let Some(v) = layout.value_of(GridCell::new(e, f)) {
                                assert!(lo < v && v < hi);
                            }
                        }
                    }
                }
            }
        }
    }
}
