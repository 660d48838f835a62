//! Brute-force ground truth for everything the fast paths compute.
//!
//! The oracle enumerates 0/1 points (or subsets, or covers) exhaustively and
//! exists to cross-check the recognizer and the instance generators on small
//! inputs. It refuses problems larger than its enumeration limit rather than
//! silently taking forever.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::knapsack::{Inequality, KnapsackInstance};
use crate::linalg::{affine_rank, convex_weights, RationalVector};

/// Largest dimension / item count the oracle will enumerate by default.
pub const DEFAULT_LIMIT: usize = 22;

/// Critical subset-sum data: weights `w` (all positive) and a target `t >= 1`.
/// The question it asks: is `t - 1` a reachable subset sum while `t` is not?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CssInstance {
    w: Vec<BigInt>,
    t: BigInt,
}

impl CssInstance {
    pub fn new(w: Vec<BigInt>, t: BigInt) -> Result<Self> {
        if w.iter().any(|v| v <= &BigInt::zero()) {
            return Err(Error::NonPositiveEntry {
                context: "subset-sum weight",
            });
        }
        if t < BigInt::from(1) {
            return Err(Error::NonPositiveEntry {
                context: "subset-sum target",
            });
        }
        Ok(Self { w, t })
    }

    pub fn w(&self) -> &[BigInt] {
        &self.w
    }

    pub fn t(&self) -> &BigInt {
        &self.t
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }
}

/// Vertex-cover data: does the graph admit a vertex cover of size exactly
/// `k`, where `k` never exceeds the vertex count? Edges are unordered pairs
/// of distinct 0-indexed vertices, stored with the smaller endpoint first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvcInstance {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
    k: usize,
}

impl EvcInstance {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>, k: usize) -> Result<Self> {
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph("loop edge"));
            }
            if u >= num_vertices || v >= num_vertices {
                return Err(Error::InvalidGraph("edge endpoint out of range"));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        let mut dedup = normalized.clone();
        dedup.sort_unstable();
        dedup.dedup();
        if dedup.len() != normalized.len() {
            return Err(Error::InvalidGraph("duplicate edge"));
        }
        if k > num_vertices {
            return Err(Error::InvalidGraph("cover size exceeds vertex count"));
        }
        Ok(Self {
            num_vertices,
            edges: normalized,
            k,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// Everything the brute-force analysis of one inequality yields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub valid: bool,
    /// Dimension of the tight face: affine rank of the tight points minus 1
    /// (so -1 for an empty face).
    pub face_dim: i64,
    /// `valid` and `face_dim == n - 1`. Meaningful for full-dimensional
    /// instances.
    pub is_facet: bool,
    /// All feasible points with `alpha . x = beta`, lexicographic.
    pub tight_points: Vec<Vec<u8>>,
}

/// Convex-combination witness for a membership query: `weights[j]` belongs
/// to the j-th feasible point in lexicographic order.
pub type MembershipWeights = Vec<BigRational>;

#[derive(Debug, Clone)]
pub struct Oracle {
    limit: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            limit: DEFAULT_LIMIT,
        }
    }
}

/// Depth-first walk over feasible 0/1 points in lexicographic order
/// (0 branches before 1), pruning when the running weight exceeds the
/// capacity. `values` carries a second accumulator (the inequality side).
fn walk<F: FnMut(&[u8], &BigInt)>(
    weights: &[BigInt],
    capacity: &BigInt,
    values: &[BigInt],
    i: usize,
    point: &mut Vec<u8>,
    load: &mut BigInt,
    value: &mut BigInt,
    visit: &mut F,
) {
    if i == weights.len() {
        visit(point, value);
        return;
    }
    walk(weights, capacity, values, i + 1, point, load, value, visit);
    *load += &weights[i];
    if &*load <= capacity {
        *value += &values[i];
        point[i] = 1;
        walk(weights, capacity, values, i + 1, point, load, value, visit);
        point[i] = 0;
        *value -= &values[i];
    }
    *load -= &weights[i];
}

impl Oracle {
    pub fn with_limit(limit: usize) -> Self {
        Self { limit }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    fn ensure(&self, size: usize) -> Result<()> {
        if size > self.limit {
            return Err(Error::TooLarge {
                size,
                limit: self.limit,
            });
        }
        Ok(())
    }

    /// All feasible 0/1 points, lexicographic.
    pub fn enumerate_feasible(&self, instance: &KnapsackInstance) -> Result<Vec<Vec<u8>>> {
        self.ensure(instance.n())?;
        let zeros = vec![BigInt::zero(); instance.n()];
        let mut out = Vec::new();
        let mut point = vec![0u8; instance.n()];
        let mut load = BigInt::zero();
        let mut value = BigInt::zero();
        walk(
            instance.weights(),
            instance.capacity(),
            &zeros,
            0,
            &mut point,
            &mut load,
            &mut value,
            &mut |p, _| out.push(p.to_vec()),
        );
        Ok(out)
    }

    /// Full analysis of one inequality by exhaustive enumeration.
    pub fn brute_analyze(
        &self,
        instance: &KnapsackInstance,
        ineq: &Inequality,
    ) -> Result<OracleReport> {
        self.ensure(instance.n())?;
        if ineq.n() != instance.n() {
            return Err(Error::DimensionMismatch {
                expected: instance.n(),
                got: ineq.n(),
            });
        }
        let mut max_value: Option<BigInt> = None;
        let mut tight: Vec<Vec<u8>> = Vec::new();
        let mut point = vec![0u8; instance.n()];
        let mut load = BigInt::zero();
        let mut value = BigInt::zero();
        walk(
            instance.weights(),
            instance.capacity(),
            ineq.coeffs(),
            0,
            &mut point,
            &mut load,
            &mut value,
            &mut |p, v| {
                if max_value.as_ref().is_none_or(|m| v > m) {
                    max_value = Some(v.clone());
                }
                if v == ineq.rhs() {
                    tight.push(p.to_vec());
                }
            },
        );
        let valid = match &max_value {
            Some(m) => m <= ineq.rhs(),
            None => unreachable!("the zero point is always feasible"),
        };
        let tight_big: Vec<Vec<BigInt>> = tight
            .iter()
            .map(|p| p.iter().map(|&b| BigInt::from(b)).collect())
            .collect();
        let face_dim = affine_rank(&tight_big)? as i64 - 1;
        Ok(OracleReport {
            valid,
            face_dim,
            is_facet: valid && face_dim == instance.n() as i64 - 1,
            tight_points: tight,
        })
    }

    /// First subset (by lexicographic 0/1 indicator) of `w` summing exactly
    /// to `target`, as 0-based indices. Weights must be nonnegative.
    pub fn subset_with_sum(&self, w: &[BigInt], target: &BigInt) -> Result<Option<Vec<usize>>> {
        self.ensure(w.len())?;
        if target < &BigInt::zero() {
            return Ok(None);
        }
        let mut suffix = vec![BigInt::zero(); w.len() + 1];
        for i in (0..w.len()).rev() {
            suffix[i] = &suffix[i + 1] + &w[i];
        }
        let mut chosen: Vec<usize> = Vec::new();
        let mut sum = BigInt::zero();
        fn rec(
            w: &[BigInt],
            suffix: &[BigInt],
            target: &BigInt,
            i: usize,
            sum: &mut BigInt,
            chosen: &mut Vec<usize>,
        ) -> bool {
            if sum == target {
                return true; // all-exclude completion is lexicographically first
            }
            if i == w.len() || &(&*sum + &suffix[i]) < target {
                return false;
            }
            if rec(w, suffix, target, i + 1, sum, chosen) {
                return true;
            }
            *sum += &w[i];
            if &*sum <= target {
                chosen.push(i);
                if rec(w, suffix, target, i + 1, sum, chosen) {
                    return true;
                }
                chosen.pop();
            }
            *sum -= &w[i];
            false
        }
        if rec(w, &suffix, target, 0, &mut sum, &mut chosen) {
            chosen.sort_unstable();
            Ok(Some(chosen))
        } else {
            Ok(None)
        }
    }

    /// Is `t - 1` reachable while `t` is not?
    pub fn solve_css(&self, css: &CssInstance) -> Result<bool> {
        let below = self.subset_with_sum(css.w(), &(css.t() - 1))?;
        if below.is_none() {
            return Ok(false);
        }
        Ok(self.subset_with_sum(css.w(), css.t())?.is_none())
    }

    /// Minimum vertex-cover size together with the lexicographically first
    /// (by 0/1 indicator) minimum cover.
    pub fn min_vertex_cover(&self, evc: &EvcInstance) -> Result<(usize, Vec<usize>)> {
        self.ensure(evc.num_vertices())?;
        let n = evc.num_vertices();
        let edge_masks: Vec<u32> = evc
            .edges()
            .iter()
            .map(|&(u, v)| (1u32 << u) | (1u32 << v))
            .collect();
        let mut best: Option<(u32, u32, u32)> = None; // (popcount, indicator order, mask)
        for mask in 0u32..(1u32 << n) {
            if edge_masks.iter().all(| &em| mask & em != 0) {
                let key = (
                    mask.count_ones(),
                    mask.reverse_bits() >> (32 - n.max(1)),
                    mask,
                );
                let key = if n == 0 { (0, 0, mask) } else { key };
                if best.is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                    best = Some(key);
                }
            }
        }
        let (_, _, mask) = best.expect("the full vertex set always covers");
        let cover: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        Ok((cover.len(), cover))
    }

    /// Does the graph have minimum vertex-cover size exactly `k`?
    pub fn solve_evc(&self, evc: &EvcInstance) -> Result<bool> {
        Ok(self.min_vertex_cover(evc)?.0 == evc.k())
    }

    /// Can `a` be split into two halves of equal sum? All entries must be
    /// positive.
    pub fn solve_partition(&self, a: &[BigInt]) -> Result<bool> {
        Ok(self.partition_witness(a)?.is_some())
    }

    /// One side of an equal-sum split (0-based indices), if any.
    pub fn partition_witness(&self, a: &[BigInt]) -> Result<Option<Vec<usize>>> {
        self.ensure(a.len())?;
        if a.iter().any(|v| v <= &BigInt::zero()) {
            return Err(Error::NonPositiveEntry {
                context: "partition weight",
            });
        }
        let total: BigInt = a.iter().sum();
        let (half, rem) = num_integer::Integer::div_rem(&total, &BigInt::from(2));
        if !rem.is_zero() {
            return Ok(None);
        }
        self.subset_with_sum(a, &half)
    }

    /// Maximum of `c . x` over the feasible points.
    pub fn knapsack_max(&self, c: &[BigInt], instance: &KnapsackInstance) -> Result<BigInt> {
        self.ensure(instance.n())?;
        if c.len() != instance.n() {
            return Err(Error::DimensionMismatch {
                expected: instance.n(),
                got: c.len(),
            });
        }
        let mut best: Option<BigInt> = None;
        let mut point = vec![0u8; instance.n()];
        let mut load = BigInt::zero();
        let mut value = BigInt::zero();
        walk(
            instance.weights(),
            instance.capacity(),
            c,
            0,
            &mut point,
            &mut load,
            &mut value,
            &mut |_, v| {
                if best.as_ref().is_none_or(|m| v > m) {
                    best = Some(v.clone());
                }
            },
        );
        Ok(best.expect("the zero point is always feasible"))
    }

    /// A feasible point attaining `knapsack_max`, lexicographically first.
    pub fn knapsack_argmax(&self, c: &[BigInt], instance: &KnapsackInstance) -> Result<Vec<u8>> {
        let best = self.knapsack_max(c, instance)?;
        let mut found: Option<Vec<u8>> = None;
        let mut point = vec![0u8; instance.n()];
        let mut load = BigInt::zero();
        let mut value = BigInt::zero();
        walk(
            instance.weights(),
            instance.capacity(),
            c,
            0,
            &mut point,
            &mut load,
            &mut value,
            &mut |p, v| {
                if found.is_none() && v == &best {
                    found = Some(p.to_vec());
                }
            },
        );
        Ok(found.expect("the maximum is attained"))
    }

    /// Does `max{ c . x : x feasible }` equal `l` exactly?
    pub fn verify_exact_knapsack(
        &self,
        c: &[BigInt],
        instance: &KnapsackInstance,
        l: &BigInt,
    ) -> Result<bool> {
        Ok(&self.knapsack_max(c, instance)? == l)
    }

    /// Exact membership of a rational point in the knapsack polytope. On
    /// success the weights line up with `enumerate_feasible` order and
    /// reconstruct the point exactly.
    pub fn check_membership(
        &self,
        point: &RationalVector,
        instance: &KnapsackInstance,
    ) -> Result<Option<MembershipWeights>> {
        self.ensure(instance.n())?;
        if point.dim() != instance.n() {
            return Err(Error::DimensionMismatch {
                expected: instance.n(),
                got: point.dim(),
            });
        }
        let feasible = self.enumerate_feasible(instance)?;
        let as_big: Vec<Vec<BigInt>> = feasible
            .iter()
            .map(|p| p.iter().map(|&b| BigInt::from(b)).collect())
            .collect();
        convex_weights(point, &as_big)
    }
}
