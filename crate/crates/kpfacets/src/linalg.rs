//! Exact linear algebra over arbitrary-precision integers and rationals.
//!
//! Everything here is exact: ranks come from fraction-free (Bareiss-style)
//! integer elimination, and convex-combination weights come from a phase-one
//! simplex over rationals with Bland's anti-cycling rule. No floating point
//! anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// `entries` is row-major and must hold exactly `rows * cols` values.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                rows,
                cols,
                entries: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Matrix whose columns are the given points, each extended by a
    /// constant-1 coordinate. The rank of this matrix is the affine rank of
    /// the point set.
    pub fn homogenized_columns(points: &[Vec<BigInt>]) -> Result<Self> {
        if points.is_empty() {
            return Self::new(0, 0, Vec::new());
        }
        let d = points[0].len();
        for p in points {
            if p.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: p.len(),
                });
            }
        }
        let mut entries = Vec::with_capacity((d + 1) * points.len());
        for i in 0..d {
            for p in points {
                entries.push(p[i].clone());
            }
        }
        entries.extend(std::iter::repeat_with(BigInt::one).take(points.len()));
        Self::new(d + 1, points.len(), entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    /// Rank by fraction-free elimination. The pivot at each step is the
    /// largest-magnitude eligible entry; ties break to the lowest row, then
    /// the lowest column.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| self.entries[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect();
        let steps = self.rows.min(self.cols);
        let mut prev = BigInt::one();
        let mut rank = 0;
        for s in 0..steps {
            let mut pivot: Option<(usize, usize)> = None;
            let mut best = BigInt::zero();
            for (i, row) in m.iter().enumerate().skip(s) {
                for (j, v) in row.iter().enumerate().skip(s) {
                    let a = v.abs();
                    if a > best {
                        best = a;
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            m.swap(s, pi);
            if pj != s {
                for row in m.iter_mut() {
                    row.swap(s, pj);
                }
            }
            rank += 1;
            let (head, tail) = m.split_at_mut(s + 1);
            let prow = &head[s];
            for row in tail.iter_mut() {
                for j in (s + 1..self.cols).rev() {
                    let num = &prow[s] * &row[j] - &row[s] * &prow[j];
                    debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                    row[j] = num / &prev;
                }
                row[s] = BigInt::zero();
            }
            prev = m[s][s].clone();
        }
        rank
    }
}

/// Vector of exact rationals. Entries are always in lowest terms with a
/// positive denominator (the `BigRational` constructor canonicalizes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalVector {
    entries: Vec<BigRational>,
}

impl RationalVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        Self { entries }
    }

    pub fn from_integers(values: &[BigInt]) -> Self {
        Self {
            entries: values
                .iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }
}

/// Affine rank of a point set: 0 for the empty set, else the rank of the
/// matrix whose columns are the points homogenized with a 1 coordinate.
/// Equals dim(affine hull) + 1.
pub fn affine_rank(points: &[Vec<BigInt>]) -> Result<usize> {
    Ok(IntMatrix::homogenized_columns(points)?.rank())
}

fn content_reduce(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in row.iter() {
        if !v.is_zero() {
            g = g.gcd(v);
            if g.is_one() {
                return;
            }
        }
    }
    if g > BigInt::one() {
        for v in row.iter_mut() {
            if !v.is_zero() {
                *v = &*v / &g;
            }
        }
    }
}

/// Incremental affine-rank accumulator. Points are homogenized and reduced
/// fraction-free against the rows collected so far; a point is accepted
/// exactly when it enlarges the affine span. Rows are kept content-reduced to
/// bound entry growth.
#[derive(Debug, Clone)]
pub struct AffineBasis {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    owner: Vec<Option<usize>>, // pivot column -> row index
}

impl AffineBasis {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
            owner: vec![None; dim + 1],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Insert a point given as arbitrary integers. Returns whether the rank
    /// grew.
    pub fn insert(&mut self, point: &[BigInt]) -> Result<bool> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: point.len(),
            });
        }
        let mut row: Vec<BigInt> = Vec::with_capacity(self.dim + 1);
        row.extend(point.iter().cloned());
        row.push(BigInt::one());
        Ok(self.insert_row(row))
    }

    /// Insert a 0/1 point. Returns whether the rank grew.
    pub fn insert01(&mut self, point: &[u8]) -> Result<bool> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: point.len(),
            });
        }
        let mut row: Vec<BigInt> = Vec::with_capacity(self.dim + 1);
        row.extend(point.iter().map(|&b| BigInt::from(b)));
        row.push(BigInt::one());
        Ok(self.insert_row(row))
    }

    fn insert_row(&mut self, mut row: Vec<BigInt>) -> bool {
        loop {
            let Some(lead) = row.iter().position(|v| !v.is_zero()) else {
                return false;
            };
            match self.owner[lead] {
                None => {
                    content_reduce(&mut row);
                    self.owner[lead] = Some(self.rows.len());
                    self.rows.push(row);
                    return true;
                }
                Some(idx) => {
                    // Eliminate the leading entry against the owning row; the
                    // leading position strictly increases, so this terminates.
                    let a = self.rows[idx][lead].clone();
                    let b = row[lead].clone();
                    for (rv, bv) in row.iter_mut().zip(&self.rows[idx]) {
                        *rv = &a * &*rv - &b * bv;
                    }
                    debug_assert!(row[lead].is_zero());
                    content_reduce(&mut row);
                }
            }
        }
    }
}

/// Sparse column of the convexity system: the nonzero coordinate rows of one
/// candidate point plus the convexity row.
struct Column {
    entries: Vec<(usize, BigInt)>,
}

/// Exact convex-combination weights: finds rational `weights >= 0` with
/// `sum(weights) = 1` and `sum_j weights[j] * points[j] = target`, or `None`
/// when `target` is outside the convex hull. Phase-one simplex over
/// rationals. Pricing is steepest (most-negative reduced cost) while the
/// objective is moving; a long degenerate streak switches to Bland's
/// anti-cycling rule, which terminates from any basis, so the whole loop
/// terminates.
pub fn convex_weights(
    target: &RationalVector,
    points: &[Vec<BigInt>],
) -> Result<Option<Vec<BigRational>>> {
    let d = target.dim();
    for p in points {
        if p.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.len(),
            });
        }
    }
    let m = d + 1; // coordinate rows plus the convexity row
    let p = points.len();

    // Right-hand side (target, 1), with rows flipped so the rhs is nonnegative.
    let mut rhs: Vec<BigRational> = Vec::with_capacity(m);
    rhs.extend(target.entries().iter().cloned());
    rhs.push(BigRational::one());
    let flip: Vec<bool> = rhs.iter().map(|v| v.is_negative()).collect();
    for (v, &f) in rhs.iter_mut().zip(&flip) {
        if f {
            *v = -v.clone();
        }
    }

    let columns: Vec<Column> = points
        .iter()
        .map(|pt| {
            let mut entries: Vec<(usize, BigInt)> = Vec::new();
            for (i, v) in pt.iter().enumerate() {
                if !v.is_zero() {
                    entries.push((i, if flip[i] { -v.clone() } else { v.clone() }));
                }
            }
            entries.push((d, if flip[d] { -BigInt::one() } else { BigInt::one() }));
            Column { entries }
        })
        .collect();

    // Revised simplex state. Variables 0..p are the candidate weights,
    // p..p+m the artificials (one per row, cost 1).
    let mut binv: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row = vec![BigRational::zero(); m];
            row[i] = BigRational::one();
            row
        })
        .collect();
    let mut xb = rhs.clone();
    let mut basis: Vec<usize> = (p..p + m).collect();

    let price = |binv: &[Vec<BigRational>], basis: &[usize]| -> Vec<BigRational> {
        let mut y = vec![BigRational::zero(); m];
        for (i, &var) in basis.iter().enumerate() {
            if var >= p {
                for (yv, bv) in y.iter_mut().zip(&binv[i]) {
                    *yv += bv;
                }
            }
        }
        y
    };

    let neg_one = -BigInt::one();
    let mut degenerate_streak = 0usize;
    // Cycling needs an unbounded run of degenerate pivots, so a finite
    // trigger always fires on one; from there Bland's rule cannot cycle.
    const BLAND_TRIGGER: usize = 64;

    loop {
        let y = price(&binv, &basis);
        let bland = degenerate_streak >= BLAND_TRIGGER;

        // Entering variable. Structural j has cost 0 and reduced cost
        // -(y . A_j); artificial p+i has cost 1 and reduced cost 1 - y[i].
        // Steepest pricing takes the most negative, Bland the lowest index.
        let mut choice: Option<(usize, BigRational)> = None;
        for (j, col) in columns.iter().enumerate() {
            let mut dot = BigRational::zero();
            for (row, coeff) in &col.entries {
                let yv = &y[*row];
                if yv.is_zero() {
                    continue;
                }
                if coeff.is_one() {
                    dot += yv;
                } else if *coeff == neg_one {
                    dot -= yv;
                } else {
                    dot += yv * BigRational::from_integer(coeff.clone());
                }
            }
            if dot > BigRational::zero() {
                let better = match &choice {
                    None => true,
                    Some((_, best)) => dot > *best,
                };
                if better {
                    choice = Some((j, dot));
                }
                if bland {
                    break;
                }
            }
        }
        let mut entering: Option<(usize, Vec<BigRational>)> = None;
        if let Some((j, _)) = choice {
            // u = B^-1 A_j
            let mut u = vec![BigRational::zero(); m];
            for (row, coeff) in &columns[j].entries {
                let c = BigRational::from_integer(coeff.clone());
                for (uv, brow) in u.iter_mut().zip(binv.iter().map(|r| &r[*row])) {
                    *uv += &c * brow;
                }
            }
            entering = Some((j, u));
        } else {
            for (i, yv) in y.iter().enumerate() {
                if *yv > BigRational::one() {
                    let u: Vec<BigRational> = binv.iter().map(|r| r[i].clone()).collect();
                    entering = Some((p + i, u));
                    break;
                }
            }
        }

        let Some((j, u)) = entering else {
            // Optimal. Feasible iff no artificial carries positive value.
            let mut infeasibility = BigRational::zero();
            for (i, &var) in basis.iter().enumerate() {
                if var >= p {
                    infeasibility += &xb[i];
                }
            }
            if !infeasibility.is_zero() {
                return Ok(None);
            }
            let mut weights = vec![BigRational::zero(); p];
            for (i, &var) in basis.iter().enumerate() {
                if var < p {
                    weights[var] = xb[i].clone();
                }
            }
            debug_assert!(check_convex_weights(target, points, &weights));
            return Ok(Some(weights));
        };

        // Ratio test; ties break to the lowest basis variable index (Bland).
        let mut leave: Option<usize> = None;
        let mut best_ratio: Option<BigRational> = None;
        for (i, uv) in u.iter().enumerate() {
            if *uv > BigRational::zero() {
                let ratio = &xb[i] / uv;
                let better = match &best_ratio {
                    None => true,
                    Some(r) => ratio < *r || (ratio == *r && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best_ratio = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let r = leave.expect("phase-one objective is bounded, a leaving row exists");
        if xb[r].is_zero() {
            degenerate_streak += 1;
        } else {
            degenerate_streak = 0;
        }

        // Pivot.
        let pivot = u[r].clone();
        for v in binv[r].iter_mut() {
            *v /= &pivot;
        }
        xb[r] /= &pivot;
        for i in 0..m {
            if i != r && !u[i].is_zero() {
                let factor = u[i].clone();
                let (pr, xr) = (binv[r].clone(), xb[r].clone());
                for (v, pv) in binv[i].iter_mut().zip(&pr) {
                    *v -= &factor * pv;
                }
                xb[i] -= &factor * &xr;
            }
        }
        basis[r] = j;
    }
}

fn check_convex_weights(
    target: &RationalVector,
    points: &[Vec<BigInt>],
    weights: &[BigRational],
) -> bool {
    let mut sum = BigRational::zero();
    let mut combo = vec![BigRational::zero(); target.dim()];
    for (w, pt) in weights.iter().zip(points) {
        if w.is_negative() {
            return false;
        }
        sum += w;
        for (c, v) in combo.iter_mut().zip(pt) {
            *c += w * BigRational::from_integer(v.clone());
        }
    }
    sum.is_one() && combo == target.entries()
}
