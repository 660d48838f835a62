//! Instance generators: constructions that translate cover, subset-sum,
//! partition, and exact-optimum questions into knapsack-polytope questions
//! while preserving the yes/no answer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::knapsack::{Inequality, KnapsackInstance};
use crate::linalg::RationalVector;
use crate::oracle::{CssInstance, EvcInstance};

/// The doubled-Fibonacci-style sequence 1, 1, 1, 2, 3, 5, 8, … where each
/// term past the third is the sum of the previous two. Its prefix sums obey
/// f_j = f_1 + … + f_{j−2}, which is what makes greedy decomposition work.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuTable {
    terms: Vec<BigInt>,
    prefix: Vec<BigInt>,
}

impl GuTable {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    /// j-th term, 1-based.
    pub fn term(&self, j: usize) -> &BigInt {
        &self.terms[j - 1]
    }

    /// Sum of the first `j` terms (prefix_sum(0) = 0).
    pub fn prefix_sum(&self, j: usize) -> &BigInt {
        &self.prefix[j]
    }
}

/// First `m` terms of the sequence.
pub fn gu_sequence(m: usize) -> Result<GuTable> {
    if m == 0 {
        return Err(Error::InvalidArgument("sequence length must be positive"));
    }
    let mut terms = Vec::with_capacity(m);
    for i in 0..m {
        let next = if i < 3 {
            BigInt::one()
        } else {
            &terms[i - 2] + &terms[i - 1]
        };
        terms.push(next);
    }
    let mut prefix = Vec::with_capacity(m + 1);
    prefix.push(BigInt::zero());
    for t in &terms {
        let last = prefix.last().unwrap().clone();
        prefix.push(last + t);
    }
    Ok(GuTable { terms, prefix })
}

/// Indices S ⊆ {1, …, 2r+1} (descending) with Σ_{j∈S} f_j = tau, found
/// greedily from the largest index down. Works for every tau between 0 and
/// the full prefix sum because f_{j} never exceeds 1 + f_1 + … + f_{j−1}.
pub fn gu_decompose(r: usize, tau: &BigInt) -> Result<Vec<usize>> {
    if r == 0 {
        return Err(Error::InvalidArgument("decomposition needs r >= 1"));
    }
    let table = gu_sequence(2 * r + 1)?;
    let max = table.prefix_sum(2 * r + 1);
    if tau < &BigInt::zero() || tau > max {
        return Err(Error::TargetOutOfRange {
            target: tau.to_string(),
            max: max.to_string(),
        });
    }
    let mut rest = tau.clone();
    let mut out = Vec::new();
    for j in (1..=2 * r + 1).rev() {
        if table.term(j) <= &rest {
            rest -= table.term(j);
            out.push(j);
        }
    }
    debug_assert!(rest.is_zero());
    Ok(out)
}

/// Encode "does the minimum vertex cover have size exactly k" as a critical
/// subset-sum question. Vertex i (0-based input order) becomes weight
/// 1 + Σ_j (n+1)^j over the 1-based positions j of its incident edges; edge
/// j becomes weight (n+1)^j; the target is n − k + 1 + Σ_j (n+1)^j.
pub fn evc_to_css(evc: &EvcInstance) -> Result<CssInstance> {
    let n = evc.num_vertices();
    if n == 0 {
        return Err(Error::InvalidGraph("empty vertex set"));
    }
    let base = BigInt::from(n + 1);
    let powers: Vec<BigInt> = (1..=evc.edges().len())
        .map(|j| base.pow(j as u32))
        .collect();
    let mut w = Vec::with_capacity(n + evc.edges().len());
    for v in 0..n {
        let mut wv = BigInt::one();
        for (j, &(x, y)) in evc.edges().iter().enumerate() {
            if x == v || y == v {
                wv += &powers[j];
            }
        }
        w.push(wv);
    }
    w.extend(powers.iter().cloned());
    let all_edges: BigInt = powers.iter().sum();
    let t = BigInt::from(n) - BigInt::from(evc.k()) + 1 + all_edges;
    CssInstance::new(w, t)
}

/// Encode a critical subset-sum question as "is this inequality valid and
/// tight somewhere": the inequality w·x ≤ t−1 over the polytope of w·x ≤ t.
pub fn css_to_supporting(css: &CssInstance) -> (Inequality, KnapsackInstance) {
    let ineq = Inequality::new(css.w().to_vec(), css.t() - 1)
        .expect("positive weights and t >= 1 give a nonnegative inequality");
    let instance = KnapsackInstance::new(css.w().to_vec(), css.t().clone())
        .expect("positive weights give a valid instance");
    (ineq, instance)
}

/// Encode a critical subset-sum question as an exact-optimum question:
/// max{w·x : w·x ≤ t} equals t−1 iff t−1 is reachable and t is not.
pub fn css_to_ek(css: &CssInstance) -> (Vec<BigInt>, KnapsackInstance, BigInt) {
    let instance = KnapsackInstance::new(css.w().to_vec(), css.t().clone())
        .expect("positive weights give a valid instance");
    (css.w().to_vec(), instance, css.t() - 1)
}

/// Encode an equal-split question as polytope membership of the all-halves
/// point: a splits evenly iff (1/2, …, 1/2) lies in conv{x : 2a·x ≤ a([n])}.
pub fn partition_to_membership(a: &[BigInt]) -> Result<(RationalVector, KnapsackInstance)> {
    if a.is_empty() {
        return Err(Error::InvalidArgument("partition input must be nonempty"));
    }
    if a.iter().any(|v| v <= &BigInt::zero()) {
        return Err(Error::NonPositiveEntry {
            context: "partition weight",
        });
    }
    let total: BigInt = a.iter().sum();
    let doubled: Vec<BigInt> = a.iter().map(|v| v * 2).collect();
    let instance = KnapsackInstance::new(doubled, total).expect("doubled weights stay positive");
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let point = RationalVector::new(vec![half; a.len()]);
    Ok((point, instance))
}

/// Book-keeping constants of one facet-hardness construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetReductionParams {
    /// Total weight of the (repaired) subset-sum instance.
    pub l: BigInt,
    /// Sequence depth: 2r+1 sequence items appear in the output.
    pub r: usize,
    /// Output dimension 2r + n + 4.
    pub dimension: usize,
}

/// How the input was adjusted before the construction applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepairNote {
    /// Items heavier than the target can join no relevant subset; this many
    /// were removed.
    DroppedOversized { count: usize },
    /// An item's weight equaled the target, forcing the answer "no"; the
    /// canonical no-instance (w = (1,1), t = 2) was encoded instead.
    SubstitutedCanonicalNo,
    /// Repairs left no items and the answer is provably "yes"; the
    /// canonical yes-instance (w = (1,2), t = 4) was encoded instead.
    SubstitutedCanonicalYes,
}

/// A facet-recognition instance whose answer matches the subset-sum
/// question that produced it.
#[derive(Debug, Clone)]
pub struct FacetReduction {
    pub inequality: Inequality,
    pub instance: KnapsackInstance,
    pub params: FacetReductionParams,
    pub notes: Vec<RepairNote>,
}

fn ceil_log2(m: &BigInt) -> u64 {
    debug_assert!(m > &BigInt::zero());
    let bits = m.bits();
    let below = m - 1;
    if (m & &below).is_zero() {
        bits - 1 // exact power of two
    } else {
        bits
    }
}

/// Encode a critical subset-sum question as facet recognition. The output
/// inequality is facet-defining exactly when t−1 is a reachable subset sum
/// and t is not.
///
/// Inputs are first repaired to the construction's normal form (every
/// w_i ≤ t−1, t ≥ 2); when the repair already settles the answer, the
/// matching canonical instance is encoded and flagged in `notes`.
pub fn css_to_facets(css: &CssInstance) -> Result<FacetReduction> {
    let mut notes = Vec::new();

    let kept: Vec<BigInt> = css.w().iter().filter(|wi| *wi <= css.t()).cloned().collect();
    let dropped = css.w().len() - kept.len();
    if dropped > 0 {
        notes.push(RepairNote::DroppedOversized { count: dropped });
    }

    let (w, t): (Vec<BigInt>, BigInt) = if kept.iter().any(|wi| wi == css.t()) {
        // Some singleton already reaches t.
        notes.push(RepairNote::SubstitutedCanonicalNo);
        (vec![BigInt::one(), BigInt::one()], BigInt::from(2))
    } else if kept.is_empty() {
        if css.t().is_one() {
            // 0 = t−1 is reachable (empty subset) and nothing reaches 1.
            notes.push(RepairNote::SubstitutedCanonicalYes);
            (vec![BigInt::one(), BigInt::from(2)], BigInt::from(4))
        } else {
            // t−1 ≥ 1 is unreachable with no items at all.
            notes.push(RepairNote::SubstitutedCanonicalNo);
            (vec![BigInt::one(), BigInt::one()], BigInt::from(2))
        }
    } else {
        (kept, css.t().clone())
    };

    let n = w.len();
    let l: BigInt = w.iter().sum();
    let r = (ceil_log2(&(30 * &l + 20)) - 1) as usize;
    let f = gu_sequence(2 * r + 1)?;

    // The construction hinges on the sequence outgrowing the instance:
    // the first 2r terms must sum past 3L + 2.
    assert!(
        f.prefix_sum(2 * r) > &(3 * &l + 2),
        "sequence depth too small for the instance"
    );

    let dimension = 2 * r + n + 4;
    let two_l_plus = |c: i64| 2 * &l + c;

    let mut a = Vec::with_capacity(dimension);
    let mut alpha = Vec::with_capacity(dimension);
    for i in 1..=2 * r + 1 {
        a.push(&t * f.term(i));
        alpha.push(f.term(i).clone());
    }
    a.push(&t * two_l_plus(1) + 1);
    alpha.push(two_l_plus(2));
    for wi in &w {
        a.push((&t + 1) * wi);
        alpha.push(wi.clone());
    }
    a.push(&t * f.term(2 * r + 1) + &t * &t + &t * two_l_plus(2) + 1);
    alpha.push(f.term(2 * r + 1) + &t + two_l_plus(1));
    a.push(&t + 1);
    alpha.push(BigInt::zero());

    let b = &t * f.prefix_sum(2 * r + 1) + &t * &t + &t * two_l_plus(2) + 1;
    let beta = f.prefix_sum(2 * r + 1) + &t + two_l_plus(1);

    debug_assert_eq!(a.len(), dimension);
    Ok(FacetReduction {
        inequality: Inequality::new(alpha, beta).expect("construction is nonnegative"),
        instance: KnapsackInstance::new(a, b).expect("construction is nonnegative"),
        params: FacetReductionParams { l, r, dimension },
        notes,
    })
}
