//! Gap events of an eigenvalue configuration.
//!
//! Points are ordered by `≺`: imaginary part first, real part second. Every
//! point except the `≺`-maximal one emits an event pairing it with its
//! nearest `≺`-successor, with size rescaled by `n^{3/4}`. The `k` smallest
//! rescaled pairwise distances are extracted separately.
//!
//! Both searches run on a uniform grid and return exactly what the
//! quadratic enumeration returns, including tie-breaking.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ensembles::EnsembleSpec;
use crate::error::{Error, Result};
use crate::theory::{RegionSpec, SizeWindow};

/// `z1 ≺ z2`.
#[inline]
pub fn precedes(z1: Complex64, z2: Complex64) -> bool {
    z1.im < z2.im || (z1.im == z2.im && z1.re < z2.re)
}

/// Total order consistent with [`precedes`] on finite inputs.
#[inline]
pub fn order(z1: &Complex64, z2: &Complex64) -> Ordering {
    z1.im.total_cmp(&z2.im).then(z1.re.total_cmp(&z2.re))
}

/// Points sorted by `≺`, optionally tagged with the ensemble they came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSample {
    points: Vec<Complex64>,
    spec: Option<EnsembleSpec>,
}

impl PointSample {
    pub fn from_points(points: Vec<Complex64>) -> Result<Self> {
        Self::build(points, None)
    }

    pub fn with_spec(points: Vec<Complex64>, spec: EnsembleSpec) -> Result<Self> {
        Self::build(points, Some(spec))
    }

    fn build(mut points: Vec<Complex64>, spec: Option<EnsembleSpec>) -> Result<Self> {
        if let Some(z) = points.iter().find(|z| !z.is_finite()) {
            return Err(Error::arg(format!("non-finite point {z}")));
        }
        points.sort_by(order);
        Ok(Self { points, spec })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn spec(&self) -> Option<&EnsembleSpec> {
        self.spec.as_ref()
    }

    /// The same configuration shifted by `w`.
    pub fn translated(&self, w: Complex64) -> Result<Self> {
        Self::build(self.points.iter().map(|&z| z + w).collect(), self.spec)
    }

    fn rescaling(&self) -> f64 {
        (self.n() as f64).powf(0.75)
    }
}

/// One atom `(n^{3/4} |z_{i*} − z_i|, z_i)` of the gap process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapEvent {
    pub rescaled_size: f64,
    pub location: Complex64,
    pub i: usize,
    pub i_star: usize,
}

/// A pair `i < j` with its rescaled distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairGap {
    pub rescaled_size: f64,
    pub i: usize,
    pub j: usize,
}

impl PairGap {
    /// Midpoint of the pair in `sample`.
    pub fn midpoint(&self, sample: &PointSample) -> Complex64 {
        0.5 * (sample.points[self.i] + sample.points[self.j])
    }
}

/// Uniform grid with point indices bucketed per cell (compressed rows).
#[derive(Debug, Clone)]
pub struct GridIndex {
    origin: Complex64,
    cell_size: f64,
    nx: usize,
    ny: usize,
    starts: Vec<usize>,
    entries: Vec<usize>,
}

impl GridIndex {
    /// Buckets `points` into square cells of side at least `cell_size`.
    ///
    /// The side is doubled until the grid has at most `4n + 64` cells.
    pub fn build(points: &[Complex64], cell_size: f64) -> Self {
        let (mut lo, mut hi) =
            (Complex64::new(f64::INFINITY, f64::INFINITY), Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for z in points {
            lo.re = lo.re.min(z.re);
            lo.im = lo.im.min(z.im);
            hi.re = hi.re.max(z.re);
            hi.im = hi.im.max(z.im);
        }
        if points.is_empty() {
            lo = Complex64::new(0.0, 0.0);
            hi = lo;
        }
        let limit = 4 * points.len() + 64;
        let mut cs = if cell_size > 0.0 && cell_size.is_finite() { cell_size } else { 1.0 };
        let (mut nx, mut ny);
        loop {
            nx = ((hi.re - lo.re) / cs).floor() as usize + 1;
            ny = ((hi.im - lo.im) / cs).floor() as usize + 1;
            if nx.saturating_mul(ny) <= limit {
                break;
            }
            cs *= 2.0;
        }
        let mut grid =
            Self { origin: lo, cell_size: cs, nx, ny, starts: vec![0; nx * ny + 1], entries: vec![0; points.len()] };
        let cells: Vec<usize> = points.iter().map(|&z| grid.cell_id(z)).collect();
        for &c in &cells {
            grid.starts[c + 1] += 1;
        }
        for c in 0..nx * ny {
            grid.starts[c + 1] += grid.starts[c];
        }
        let mut fill = grid.starts.clone();
        for (idx, &c) in cells.iter().enumerate() {
            grid.entries[fill[c]] = idx;
            fill[c] += 1;
        }
        grid
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    /// Integer cell coordinates of `z`, clamped to the grid.
    pub fn cell_of(&self, z: Complex64) -> (usize, usize) {
        let fx = ((z.re - self.origin.re) / self.cell_size).floor();
        let fy = ((z.im - self.origin.im) / self.cell_size).floor();
        let cx = if fx > 0.0 { (fx as usize).min(self.nx - 1) } else { 0 };
        let cy = if fy > 0.0 { (fy as usize).min(self.ny - 1) } else { 0 };
        (cx, cy)
    }

    fn cell_id(&self, z: Complex64) -> usize {
        let (cx, cy) = self.cell_of(z);
        cy * self.nx + cx
    }

    /// Indices of the points in cell `(cx, cy)`, ascending.
    pub fn bucket(&self, cx: usize, cy: usize) -> &[usize] {
        let c = cy * self.nx + cx;
        &self.entries[self.starts[c]..self.starts[c + 1]]
    }
}

// Cell assignment is exact up to rounding in the floor; shrinking the
// certified radius by this factor keeps the search exact anyway.
const SAFETY: f64 = 1.0 - 1e-9;

fn initial_cell_size(points: &[Complex64]) -> f64 {
    let (mut w, mut h) = (0.0f64, 0.0f64);
    if let Some(first) = points.first() {
        let (mut lo, mut hi) = (*first, *first);
        for z in points {
            lo.re = lo.re.min(z.re);
            lo.im = lo.im.min(z.im);
            hi.re = hi.re.max(z.re);
            hi.im = hi.im.max(z.im);
        }
        w = hi.re - lo.re;
        h = hi.im - lo.im;
    }
    let extent = 0.5 * w.max(h);
    let scale = if extent > 0.0 { extent } else { 1.0 };
    scale / (points.len().max(1) as f64).sqrt()
}

/// Nearest-successor gap events, one for each point but the last.
pub fn nearest_successor_gaps(sample: &PointSample) -> Result<Vec<GapEvent>> {
    let n = sample.n();
    if n < 2 {
        return Err(Error::arg(format!("need at least two points, got {n}")));
    }
    let pts = &sample.points;
    let grid = GridIndex::build(pts, initial_cell_size(pts));
    let (nx, ny) = grid.dims();
    let cs = grid.cell_size();
    let scale = sample.rescaling();
    let mut events = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let z = pts[i];
        let (cx, cy) = grid.cell_of(z);
        let mut best = (f64::INFINITY, usize::MAX);
        let visit = |x: usize, y: usize, best: &mut (f64, usize)| {
            for &j in grid.bucket(x, y) {
                if j > i {
                    let d = (pts[j] - z).norm();
                    if d < best.0 || (d == best.0 && j < best.1) {
                        *best = (d, j);
                    }
                }
            }
        };
        let max_ring = nx.max(ny);
        for r in 0..=max_ring {
            // Successors never lie in lower rows, so only the upper half ring is scanned.
            let top = cy + r;
            if top < ny {
                for x in cx.saturating_sub(r)..=(cx + r).min(nx - 1) {
                    visit(x, top, &mut best);
                }
            }
            if r > 0 {
                for y in cy..top.min(ny) {
                    if cx >= r {
                        visit(cx - r, y, &mut best);
                    }
                    if cx + r < nx {
                        visit(cx + r, y, &mut best);
                    }
                }
            }
            if best.1 != usize::MAX && best.0 < r as f64 * cs * SAFETY {
                break;
            }
        }
        let (d, j) = best;
        debug_assert!(j != usize::MAX);
        events.push(GapEvent { rescaled_size: scale * d, location: z, i, i_star: j });
    }
    Ok(events)
}

#[derive(PartialEq)]
struct HeapPair(f64, usize, usize);

impl Eq for HeapPair {}

impl PartialOrd for HeapPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapPair {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1)).then(self.2.cmp(&other.2))
    }
}

/// The `k` closest pairs, ascending by distance (ties by index pair).
pub fn k_smallest_pairs(sample: &PointSample, k: usize) -> Result<Vec<PairGap>> {
    let n = sample.n();
    let total_pairs = n.saturating_mul(n.saturating_sub(1)) / 2;
    if k == 0 || k > total_pairs {
        return Err(Error::arg(format!("k = {k} outside 1..={total_pairs}")));
    }
    let pts = &sample.points;
    let mut cs = initial_cell_size(pts);
    loop {
        let grid = GridIndex::build(pts, cs);
        cs = grid.cell_size();
        let (nx, ny) = grid.dims();
        let mut heap: BinaryHeap<HeapPair> = BinaryHeap::with_capacity(k + 1);
        for (i, &z) in pts.iter().enumerate() {
            let (cx, cy) = grid.cell_of(z);
            for y in cy..=(cy + 1).min(ny - 1) {
                for x in cx.saturating_sub(1)..=(cx + 1).min(nx - 1) {
                    for &j in grid.bucket(x, y) {
                        if j <= i {
                            continue;
                        }
                        let cand = HeapPair((pts[j] - z).norm(), i, j);
                        if heap.len() < k {
                            heap.push(cand);
                        } else if cand < *heap.peek().expect("nonempty") {
                            heap.pop();
                            heap.push(cand);
                        }
                    }
                }
            }
        }
        let complete = nx <= 2 && ny <= 2;
        let certified = heap.len() == k && heap.peek().is_some_and(|p| p.0 <= cs * SAFETY);
        if complete || certified {
            let scale = sample.rescaling();
            return Ok(heap
                .into_sorted_vec()
                .into_iter()
                .map(|HeapPair(d, i, j)| PairGap { rescaled_size: scale * d, i, j })
                .collect());
        }
        cs *= 2.0;
    }
}

/// The `k` smallest rescaled pairwise distances `t₁ ≤ … ≤ t_k`.
pub fn k_smallest_pair_gaps(sample: &PointSample, k: usize) -> Result<Vec<f64>> {
    Ok(k_smallest_pairs(sample, k)?.into_iter().map(|p| p.rescaled_size).collect())
}

/// Number of events with size in `window` and location in `region`.
pub fn count_in_window(events: &[GapEvent], window: &SizeWindow, region: &RegionSpec) -> usize {
    events.iter().filter(|e| window.contains(e.rescaled_size) && region.contains(e.location)).count()
}
