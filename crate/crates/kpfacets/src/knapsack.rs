//! Knapsack instances, inequalities, and the normalized block structure the
//! recognizer works on.
//!
//! `normalize` reorders the coordinates of an inequality `alpha . x <= beta`
//! so that equal positive coefficients sit in contiguous *blocks* sorted by
//! increasing coefficient value, weights nondecreasing inside each block, and
//! all zero-coefficient indices in a trailing *tail* (weights nondecreasing
//! there too). In that ordering the inequality reads
//! `sum_k gamma_k * sum_{i in I_k} x_i <= beta` with `gamma_1 < ... < gamma_K`.
//!
//! A *profile* `z` prescribes how many ones each block carries. The minimal
//! basic solution `x[z]` packs the ones into the cheapest (first) positions
//! of each block; block variants move a single one within one block. These
//! few points are enough to decide validity and facetness.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Dot product of integer coefficients with a 0/1 point.
pub fn dot01(coeffs: &[BigInt], point: &[u8]) -> BigInt {
    debug_assert_eq!(coeffs.len(), point.len());
    let mut sum = BigInt::zero();
    for (c, &x) in coeffs.iter().zip(point) {
        if x != 0 {
            sum += c;
        }
    }
    sum
}

/// A 0/1 knapsack polytope: `conv{ x in {0,1}^n : weights . x <= capacity }`.
/// Weights and capacity are nonnegative; the polytope is full-dimensional
/// exactly when every single weight fits the capacity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackInstance {
    weights: Vec<BigInt>,
    capacity: BigInt,
}

impl KnapsackInstance {
    pub fn new(weights: Vec<BigInt>, capacity: BigInt) -> Result<Self> {
        if weights.iter().any(|w| w.sign() == num_bigint::Sign::Minus) {
            return Err(Error::NegativeEntry {
                context: "item weight",
            });
        }
        if capacity.sign() == num_bigint::Sign::Minus {
            return Err(Error::NegativeEntry {
                context: "knapsack capacity",
            });
        }
        Ok(Self { weights, capacity })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    pub fn capacity(&self) -> &BigInt {
        &self.capacity
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.weights.iter().all(|w| w <= &self.capacity)
    }

    pub fn point_weight(&self, point: &[u8]) -> BigInt {
        dot01(&self.weights, point)
    }

    pub fn is_feasible(&self, point: &[u8]) -> bool {
        self.point_weight(point) <= self.capacity
    }
}

/// A candidate inequality `coeffs . x <= rhs` with nonnegative data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    coeffs: Vec<BigInt>,
    rhs: BigInt,
}

impl Inequality {
    pub fn new(coeffs: Vec<BigInt>, rhs: BigInt) -> Result<Self> {
        if coeffs.iter().any(|c| c.sign() == num_bigint::Sign::Minus) {
            return Err(Error::NegativeEntry {
                context: "inequality coefficient",
            });
        }
        if rhs.sign() == num_bigint::Sign::Minus {
            return Err(Error::NegativeEntry {
                context: "inequality right-hand side",
            });
        }
        Ok(Self { coeffs, rhs })
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn rhs(&self) -> &BigInt {
        &self.rhs
    }

    pub fn point_value(&self, point: &[u8]) -> BigInt {
        dot01(&self.coeffs, point)
    }

    pub fn is_tight(&self, point: &[u8]) -> bool {
        self.point_value(point) == self.rhs
    }
}

/// Block count per ones-assignment: `counts[k]` ones in block `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    counts: Vec<usize>,
}

impl Profile {
    pub fn new(counts: Vec<usize>) -> Self {
        Self { counts }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// How a basic solution was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasicKind {
    /// The minimal solution `x[z]` of its profile.
    Minimal,
    /// `x[z]` with one coordinate of `block` moved: position `swap_out`
    /// cleared, position `swap_in` set (both in the reordered space).
    BlockVariant {
        block: usize,
        swap_out: usize,
        swap_in: usize,
    },
}

/// A basic solution in the reordered coordinate space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicSolution {
    pub point: Vec<u8>,
    pub profile: Profile,
    pub kind: BasicKind,
}

/// The reordered view of an (instance, inequality) pair. Positions
/// `bounds[k]..bounds[k+1]` form block `k`; positions `support_len()..n` are
/// the zero-coefficient tail. `perm` maps reordered positions back to
/// original indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedProblem {
    n: usize,
    gamma: Vec<BigInt>,
    bounds: Vec<usize>,
    perm: Vec<usize>,
    a_sorted: Vec<BigInt>,
    prefix: Vec<Vec<BigInt>>, // prefix[k][j] = weight of the j cheapest items of block k
}

impl NormalizedProblem {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of distinct positive coefficient values.
    pub fn k(&self) -> usize {
        self.gamma.len()
    }

    /// Strictly increasing distinct positive coefficient values.
    pub fn gamma(&self) -> &[BigInt] {
        &self.gamma
    }

    /// Block boundaries: `bounds[0] = 0 <= bounds[1] <= ... <= bounds[K]`.
    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn block(&self, k: usize) -> std::ops::Range<usize> {
        self.bounds[k]..self.bounds[k + 1]
    }

    pub fn block_len(&self, k: usize) -> usize {
        self.bounds[k + 1] - self.bounds[k]
    }

    /// Total size of all blocks (`i_K`); the tail starts here.
    pub fn support_len(&self) -> usize {
        *self.bounds.last().expect("bounds always holds K+1 entries")
    }

    pub fn tail(&self) -> std::ops::Range<usize> {
        self.support_len()..self.n
    }

    pub fn has_tail(&self) -> bool {
        self.support_len() < self.n
    }

    /// Reordered position -> original index.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Weights in the reordered space.
    pub fn a_sorted(&self) -> &[BigInt] {
        &self.a_sorted
    }

    /// Left-hand value every point with profile `z` attains.
    pub fn profile_value(&self, z: &Profile) -> BigInt {
        let mut v = BigInt::zero();
        for (g, &c) in self.gamma.iter().zip(z.counts()) {
            v += g * BigInt::from(c);
        }
        v
    }

    /// Weight of the minimal basic solution of `z`.
    pub fn min_profile_weight(&self, z: &Profile) -> BigInt {
        let mut v = BigInt::zero();
        for (k, &c) in z.counts().iter().enumerate() {
            v += &self.prefix[k][c];
        }
        v
    }

    /// Map a point from the reordered space back to original indices.
    pub fn to_original(&self, reordered: &[u8]) -> Vec<u8> {
        debug_assert_eq!(reordered.len(), self.n);
        let mut out = vec![0u8; self.n];
        for (pos, &orig) in self.perm.iter().enumerate() {
            out[orig] = reordered[pos];
        }
        out
    }

    fn check_profile(&self, z: &Profile) -> Result<()> {
        if z.len() != self.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                got: z.len(),
            });
        }
        for (k, &c) in z.counts().iter().enumerate() {
            if c > self.block_len(k) {
                return Err(Error::ProfileOutOfRange {
                    block: k,
                    value: c,
                    size: self.block_len(k),
                });
            }
        }
        Ok(())
    }
}

/// Build the normalized view. Ties in the sort (equal weight within a block
/// or the tail) break by original index, which keeps every downstream answer
/// deterministic.
pub fn normalize(instance: &KnapsackInstance, ineq: &Inequality) -> Result<NormalizedProblem> {
    let n = instance.n();
    if ineq.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: ineq.n(),
        });
    }

    let mut gamma: Vec<BigInt> = ineq
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .cloned()
        .collect();
    gamma.sort();
    gamma.dedup();

    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut bounds = vec![0usize];
    for g in &gamma {
        let mut idx: Vec<usize> = (0..n).filter(|&i| &ineq.coeffs()[i] == g).collect();
        idx.sort_by(|&i, &j| instance.weights()[i].cmp(&instance.weights()[j]).then(i.cmp(&j)));
        perm.extend(&idx);
        bounds.push(perm.len());
    }
    let mut tail_idx: Vec<usize> = (0..n).filter(|&i| ineq.coeffs()[i].is_zero()).collect();
    tail_idx.sort_by(|&i, &j| instance.weights()[i].cmp(&instance.weights()[j]).then(i.cmp(&j)));
    perm.extend(&tail_idx);

    let a_sorted: Vec<BigInt> = perm.iter().map(|&i| instance.weights()[i].clone()).collect();
    let prefix: Vec<Vec<BigInt>> = (0..gamma.len())
        .map(|k| {
            let mut sums = Vec::with_capacity(bounds[k + 1] - bounds[k] + 1);
            let mut acc = BigInt::zero();
            sums.push(acc.clone());
            for pos in bounds[k]..bounds[k + 1] {
                acc += &a_sorted[pos];
                sums.push(acc.clone());
            }
            sums
        })
        .collect();

    Ok(NormalizedProblem {
        n,
        gamma,
        bounds,
        perm,
        a_sorted,
        prefix,
    })
}

/// The minimal basic solution of `z`: the first `z_k` positions of each block
/// set to one, everything else (including the whole tail) zero. Among all
/// 0/1 points with block counts `z` and zero tail it has the least weight.
pub fn minimal_basic(np: &NormalizedProblem, z: &Profile) -> Result<BasicSolution> {
    np.check_profile(z)?;
    let mut point = vec![0u8; np.n()];
    for (k, &c) in z.counts().iter().enumerate() {
        let start = np.bounds[k];
        for slot in point.iter_mut().skip(start).take(c) {
            *slot = 1;
        }
    }
    Ok(BasicSolution {
        point,
        profile: z.clone(),
        kind: BasicKind::Minimal,
    })
}

/// The block-`k` variants of `x[z]`: each moves exactly one `1` within block
/// `k`, keeping the profile. For an interior count (`1 <= z_k <= |I_k| - 1`)
/// there are exactly `|I_k| - 1` of them; for `z_k` in `{0, |I_k|}` the
/// index arithmetic would leave the block, so the list is empty.
pub fn block_variants(np: &NormalizedProblem, z: &Profile, k: usize) -> Result<Vec<BasicSolution>> {
    np.check_profile(z)?;
    if k >= np.k() {
        return Err(Error::BlockOutOfRange {
            block: k,
            blocks: np.k(),
        });
    }
    let size = np.block_len(k);
    let zk = z.counts()[k];
    if zk == 0 || zk == size {
        return Ok(Vec::new());
    }
    let base = minimal_basic(np, z)?;
    let start = np.bounds[k];
    let mut out = Vec::with_capacity(size - 1);
    // Clear one of the leading ones and set the first zero position.
    for i in 0..zk - 1 {
        let mut point = base.point.clone();
        point[start + i] = 0;
        point[start + zk] = 1;
        out.push(BasicSolution {
            point,
            profile: z.clone(),
            kind: BasicKind::BlockVariant {
                block: k,
                swap_out: start + i,
                swap_in: start + zk,
            },
        });
    }
    // Clear the last one and set one of the later zero positions.
    for i in zk..size {
        let mut point = base.point.clone();
        point[start + zk - 1] = 0;
        point[start + i] = 1;
        out.push(BasicSolution {
            point,
            profile: z.clone(),
            kind: BasicKind::BlockVariant {
                block: k,
                swap_out: start + zk - 1,
                swap_in: start + i,
            },
        });
    }
    Ok(out)
}

/// Cursor over all profiles in lexicographic order (last block fastest),
/// maintaining the left-hand value and minimal weight incrementally.
pub(crate) struct ProfileCursor<'a> {
    np: &'a NormalizedProblem,
    z: Vec<usize>,
    value: BigInt,
    weight: BigInt,
    fresh: bool,
    done: bool,
}

impl<'a> ProfileCursor<'a> {
    pub fn new(np: &'a NormalizedProblem) -> Self {
        Self {
            np,
            z: vec![0; np.k()],
            value: BigInt::zero(),
            weight: BigInt::zero(),
            fresh: true,
            done: false,
        }
    }

    /// Position the cursor on the profile with the given lexicographic index
    /// (mixed-radix, block 0 most significant).
    pub fn at_index(np: &'a NormalizedProblem, mut index: u64) -> Self {
        let kk = np.k();
        let mut z = vec![0usize; kk];
        for k in (0..kk).rev() {
            let radix = (np.block_len(k) + 1) as u64;
            z[k] = (index % radix) as usize;
            index /= radix;
        }
        debug_assert_eq!(index, 0);
        let profile = Profile::new(z.clone());
        let value = np.profile_value(&profile);
        let weight = np.min_profile_weight(&profile);
        Self {
            np,
            z,
            value,
            weight,
            fresh: true,
            done: false,
        }
    }

    /// Advance to the next profile; the first call yields the initial one.
    /// Returns false when exhausted.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if self.fresh {
            self.fresh = false;
            return true;
        }
        for k in (0..self.np.k()).rev() {
            if self.z[k] < self.np.block_len(k) {
                self.z[k] += 1;
                self.value += &self.np.gamma[k];
                self.weight += &self.np.a_sorted[self.np.bounds[k] + self.z[k] - 1];
                for j in k + 1..self.np.k() {
                    if self.z[j] > 0 {
                        self.value -= &self.np.gamma[j] * BigInt::from(self.z[j]);
                        self.weight -= &self.np.prefix[j][self.z[j]];
                        self.z[j] = 0;
                    }
                }
                return true;
            }
        }
        self.done = true;
        false
    }

    pub fn z(&self) -> &[usize] {
        &self.z
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn weight(&self) -> &BigInt {
        &self.weight
    }

    /// Total number of profiles, if it fits a u64.
    pub fn space_size(np: &NormalizedProblem) -> Option<u64> {
        let mut total: u64 = 1;
        for k in 0..np.k() {
            total = total.checked_mul((np.block_len(k) + 1) as u64)?;
        }
        Some(total)
    }
}

/// Every profile in lexicographic order; with `tight_to = Some(beta)`, only
/// those whose left-hand value is exactly `beta`.
pub fn enumerate_profiles(np: &NormalizedProblem, tight_to: Option<&BigInt>) -> Vec<Profile> {
    let mut out = Vec::new();
    let mut cur = ProfileCursor::new(np);
    while cur.advance() {
        if tight_to.is_none_or(|b| cur.value() == b) {
            out.push(Profile::new(cur.z().to_vec()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn biv(vs: &[i64]) -> Vec<BigInt> {
        vs.iter().map(|&v| bi(v)).collect()
    }

    fn problem(a: &[i64], b: i64, alpha: &[i64], beta: i64) -> (KnapsackInstance, Inequality) {
        (
            KnapsackInstance::new(biv(a), bi(b)).unwrap(),
            Inequality::new(biv(alpha), bi(beta)).unwrap(),
        )
    }

    #[test]
    fn rejects_negative_data() {
        assert!(KnapsackInstance::new(biv(&[1, -2]), bi(3)).is_err());
        assert!(KnapsackInstance::new(biv(&[1, 2]), bi(-1)).is_err());
        assert!(Inequality::new(biv(&[-1]), bi(0)).is_err());
    }

    #[test]
    fn normalize_single_block_with_tail() {
        let (inst, ineq) = problem(&[3, 1, 2], 4, &[0, 5, 5], 5);
        let np = normalize(&inst, &ineq).unwrap();
        assert_eq!(np.k(), 1);
        assert_eq!(np.gamma(), &[bi(5)]);
        assert_eq!(np.bounds(), &[0, 2]);
        assert_eq!(np.perm(), &[1, 2, 0]);
        assert_eq!(np.a_sorted(), &biv(&[1, 2, 3]));
        assert_eq!(np.tail(), 2..3);
    }

    #[test]
    fn normalize_two_blocks_no_tail() {
        let (inst, ineq) = problem(&[2, 2, 1], 3, &[1, 2, 1], 2);
        let np = normalize(&inst, &ineq).unwrap();
        assert_eq!(np.k(), 2);
        assert_eq!(np.gamma(), &[bi(1), bi(2)]);
        assert_eq!(np.bounds(), &[0, 2, 3]);
        // Value-1 block sorted by weight: original index 2 (weight 1) before
        // index 0 (weight 2); the value-2 block is original index 1.
        assert_eq!(np.perm(), &[2, 0, 1]);
        assert_eq!(np.a_sorted(), &biv(&[1, 2, 2]));
        assert!(!np.has_tail());
    }

    #[test]
    fn normalize_zero_inequality_is_all_tail() {
        let (inst, ineq) = problem(&[2, 1], 2, &[0, 0], 1);
        let np = normalize(&inst, &ineq).unwrap();
        assert_eq!(np.k(), 0);
        assert_eq!(np.support_len(), 0);
        assert_eq!(np.perm(), &[1, 0]);
    }

    #[test]
    fn normalize_ties_break_by_original_index() {
        let (inst, ineq) = problem(&[1, 1, 1], 3, &[2, 2, 2], 2);
        let np = normalize(&inst, &ineq).unwrap();
        assert_eq!(np.perm(), &[0, 1, 2]);
    }

    #[test]
    fn minimal_basic_packs_block_prefixes() {
        let (inst, ineq) = problem(&[1, 1, 2, 2], 6, &[1, 1, 2, 2], 4);
        let np = normalize(&inst, &ineq).unwrap();
        let x = minimal_basic(&np, &Profile::new(vec![2, 1])).unwrap();
        assert_eq!(x.point, vec![1, 1, 1, 0]);
        assert_eq!(x.kind, BasicKind::Minimal);
        let empty = minimal_basic(&np, &Profile::new(vec![0, 0])).unwrap();
        assert_eq!(empty.point, vec![0, 0, 0, 0]);
    }

    #[test]
    fn minimal_basic_rejects_oversized_profile() {
        let (inst, ineq) = problem(&[1, 1], 2, &[1, 1], 2);
        let np = normalize(&inst, &ineq).unwrap();
        assert!(matches!(
            minimal_basic(&np, &Profile::new(vec![3])),
            Err(Error::ProfileOutOfRange { .. })
        ));
    }

    #[test]
    fn block_variants_interior_count() {
        // One block of size 3. z = (1): both variants move the single one.
        let (inst, ineq) = problem(&[1, 1, 1], 3, &[1, 1, 1], 3);
        let np = normalize(&inst, &ineq).unwrap();
        let v1 = block_variants(&np, &Profile::new(vec![1]), 0).unwrap();
        let pts: Vec<_> = v1.iter().map(|s| s.point.clone()).collect();
        assert_eq!(pts, vec![vec![0, 1, 0], vec![0, 0, 1]]);

        // z = (2): one swap of each family.
        let v2 = block_variants(&np, &Profile::new(vec![2]), 0).unwrap();
        let pts: Vec<_> = v2.iter().map(|s| s.point.clone()).collect();
        assert_eq!(pts, vec![vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(
            v2[0].kind,
            BasicKind::BlockVariant {
                block: 0,
                swap_out: 0,
                swap_in: 2
            }
        );
    }

    #[test]
    fn block_variants_empty_at_extremes() {
        let (inst, ineq) = problem(&[1, 1, 1], 3, &[1, 1, 1], 3);
        let np = normalize(&inst, &ineq).unwrap();
        assert!(block_variants(&np, &Profile::new(vec![0]), 0).unwrap().is_empty());
        assert!(block_variants(&np, &Profile::new(vec![3]), 0).unwrap().is_empty());
        assert!(matches!(
            block_variants(&np, &Profile::new(vec![1]), 1),
            Err(Error::BlockOutOfRange { .. })
        ));
    }

    #[test]
    fn profiles_enumerate_lexicographically() {
        let (inst, ineq) = problem(&[1, 1, 1, 1], 4, &[1, 1, 2, 2], 4);
        let np = normalize(&inst, &ineq).unwrap();
        let all = enumerate_profiles(&np, None);
        let counts: Vec<_> = all.iter().map(|p| p.counts().to_vec()).collect();
        assert_eq!(
            counts,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 1],
                vec![1, 2],
                vec![2, 0],
                vec![2, 1],
                vec![2, 2],
            ]
        );
    }

    #[test]
    fn profiles_filtered_to_tight_value() {
        let (inst, ineq) = problem(&[1, 1, 1, 1], 4, &[1, 1, 2, 2], 4);
        let np = normalize(&inst, &ineq).unwrap();
        let tight = enumerate_profiles(&np, Some(&bi(4)));
        let counts: Vec<_> = tight.iter().map(|p| p.counts().to_vec()).collect();
        assert_eq!(counts, vec![vec![0, 2], vec![2, 1]]);

        // gamma = (2) over a block of 3: odd targets are unreachable.
        let (inst, ineq) = problem(&[1, 1, 1], 3, &[2, 2, 2], 3);
        let np = normalize(&inst, &ineq).unwrap();
        assert!(enumerate_profiles(&np, Some(&bi(3))).is_empty());
    }

    #[test]
    fn zero_inequality_has_one_empty_profile() {
        let (inst, ineq) = problem(&[1, 2], 2, &[0, 0], 0);
        let np = normalize(&inst, &ineq).unwrap();
        let all = enumerate_profiles(&np, None);
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
        assert_eq!(enumerate_profiles(&np, Some(&bi(0))).len(), 1);
        assert!(enumerate_profiles(&np, Some(&bi(1))).is_empty());
    }

    #[test]
    fn cursor_tracks_value_and_weight() {
        let (inst, ineq) = problem(&[2, 3, 1, 5], 11, &[1, 1, 4, 0], 6);
        let np = normalize(&inst, &ineq).unwrap();
        let mut cur = ProfileCursor::new(&np);
        let mut seen = 0u64;
        while cur.advance() {
            let p = Profile::new(cur.z().to_vec());
            assert_eq!(cur.value(), &np.profile_value(&p));
            assert_eq!(cur.weight(), &np.min_profile_weight(&p));
            seen += 1;
        }
        assert_eq!(Some(seen), ProfileCursor::space_size(&np));
    }

    #[test]
    fn cursor_seek_matches_linear_scan() {
        let (inst, ineq) = problem(&[2, 3, 1, 5, 4], 11, &[1, 1, 4, 4, 4], 6);
        let np = normalize(&inst, &ineq).unwrap();
        let all = enumerate_profiles(&np, None);
        for (i, expected) in all.iter().enumerate() {
            let mut cur = ProfileCursor::at_index(&np, i as u64);
            assert!(cur.advance());
            assert_eq!(cur.z(), expected.counts());
        }
    }
}
