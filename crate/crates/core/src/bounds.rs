//! Closed-form bounds on the vertex count of integer-distance polygons with a
//! side or diagonal of length `k`, the published claims for small `k`, and a
//! diagnostic on distance differences to the baseline.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{orientation, DiophantineSet, KernelError};
use crate::search::{HalfPlane, SearchMode, SearchReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("point index {0} out of range for a set of {1}")]
    Index(usize, usize),
    #[error("points {p} and {q} are not at distance {k}")]
    NotAtDistance { p: usize, q: usize, k: u64 },
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

fn positive(k: u64) -> Result<u64, BoundsError> {
    if k == 0 {
        Err(BoundsError::ZeroK)
    } else {
        Ok(k)
    }
}

/// `4k`, the overall upper bound.
pub fn n0_bound(k: u64) -> Result<u64, BoundsError> {
    Ok(4 * positive(k)?)
}

/// `2k + 1`, when the length-`k` pair is a side.
pub fn concave_side_bound(k: u64) -> Result<u64, BoundsError> {
    Ok(2 * positive(k)? + 1)
}

/// `2(2(k − 1) + 1) + 2 = 4k`, when the length-`k` pair is a diagonal.
pub fn concave_diagonal_bound(k: u64) -> Result<u64, BoundsError> {
    let k = positive(k)?;
    Ok(2 * (2 * (k - 1) + 1) + 2)
}

/// `2(k − 1) + 1 = 2k − 1` vertices at most in one open half-plane.
pub fn convex_halfplane_bound(k: u64) -> Result<u64, BoundsError> {
    Ok(2 * (positive(k)? - 1) + 1)
}

/// Published vertex counts for small `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimedRange {
    pub k: u64,
    pub convex: Vec<u64>,
    pub concave: Vec<u64>,
    /// Counts inside the claim for which no polygon is known.
    pub unconfirmed: Vec<u64>,
    pub note: String,
}

impl ClaimedRange {
    pub fn max_for(&self, mode: SearchMode) -> u64 {
        let pick = match mode {
            SearchMode::Convex => &self.convex,
            SearchMode::Concave => &self.concave,
            SearchMode::Sets => {
                return self
                    .convex
                    .iter()
                    .chain(&self.concave)
                    .copied()
                    .max()
                    .unwrap_or(0)
            }
        };
        pick.iter().copied().max().unwrap_or(0)
    }
}

pub fn claimed_n_range(k: u64) -> Option<ClaimedRange> {
    match k {
        1 => Some(ClaimedRange {
            k,
            convex: vec![3],
            concave: vec![],
            unconfirmed: vec![],
            note: "closed claim: only triangles".into(),
        }),
        2 => Some(ClaimedRange {
            k,
            convex: vec![3, 4, 5],
            concave: vec![3, 4, 5, 6],
            unconfirmed: vec![5, 6],
            note: "no convex pentagon and no concave pentagon or hexagon known; conjectured not to exist".into(),
        }),
        3 => Some(ClaimedRange {
            k,
            convex: (3..=7).collect(),
            concave: (3..=7).collect(),
            unconfirmed: vec![5, 6, 7],
            note: "printed as 1 <= n <= 7; n < 3 is not a polygon. No pentagon, hexagon or heptagon known".into(),
        }),
        _ => None,
    }
}

/// Baseline differences `δ(V) = |VP| − |VQ|` for one side of line `PQ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceGroup {
    /// `Plus` is the side to the left of `P → Q`.
    pub side: HalfPlane,
    /// Point indices in clockwise order about `P`.
    pub vertices: Vec<usize>,
    pub deltas: Vec<i64>,
    pub strictly_monotone: bool,
    pub distinct: bool,
}

impl DifferenceGroup {
    fn new(side: HalfPlane, vertices: Vec<usize>, deltas: Vec<i64>) -> Self {
        let increasing = deltas.windows(2).all(|w| w[0] < w[1]);
        let decreasing = deltas.windows(2).all(|w| w[0] > w[1]);
        let mut sorted = deltas.clone();
        sorted.sort_unstable();
        sorted.dedup();
        DifferenceGroup {
            side,
            distinct: sorted.len() == deltas.len(),
            strictly_monotone: increasing || decreasing,
            vertices,
            deltas,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceProfile {
    pub k: u64,
    pub p: usize,
    pub q: usize,
    pub upper: DifferenceGroup,
    pub lower: DifferenceGroup,
}

impl DifferenceProfile {
    pub fn deltas(&self) -> impl Iterator<Item = i64> + '_ {
        self.upper.deltas.iter().chain(&self.lower.deltas).copied()
    }

    /// Every `|δ| ≤ k − 1`.
    pub fn within_range(&self) -> bool {
        let limit = self.k as i64 - 1;
        self.deltas().all(|d| d.abs() <= limit)
    }
}

pub fn halfplane_difference_profile(
    set: &DiophantineSet,
    p: usize,
    q: usize,
    k: u64,
) -> Result<DifferenceProfile, BoundsError> {
    positive(k)?;
    let n = set.len();
    for i in [p, q] {
        if i >= n {
            return Err(BoundsError::Index(i, n));
        }
    }
    if p == q || *set.distance(p, q) != k.into() {
        return Err(BoundsError::NotAtDistance { p, q, k });
    }
    let pts = set.points();
    let (pp, qq) = (&pts[p], &pts[q]);
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for v in (0..n).filter(|&v| v != p && v != q) {
        match orientation(pp, qq, &pts[v])? {
            Ordering::Greater => upper.push(v),
            Ordering::Less => lower.push(v),
            Ordering::Equal => return Err(KernelError::CollinearTriple(p, q, v).into()),
        }
    }
    let group = |side, mut members: Vec<usize>| -> Result<DifferenceGroup, BoundsError> {
        let mut err = None;
        members.sort_by(|&u, &v| {
            orientation(pp, &pts[u], &pts[v]).unwrap_or_else(|e| {
                err.get_or_insert(e);
                Ordering::Equal
            })
        });
        if let Some(e) = err {
            return Err(e.into());
        }
        let deltas = members
            .iter()
            .map(|&v| {
                let d = BigInt::from(set.distance(v, p).clone())
                    - BigInt::from(set.distance(v, q).clone());
                d.to_i64().expect("bounded by k")
            })
            .collect();
        Ok(DifferenceGroup::new(side, members, deltas))
    };
    Ok(DifferenceProfile {
        k,
        p,
        q,
        upper: group(HalfPlane::Plus, upper)?,
        lower: group(HalfPlane::Minus, lower)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub k: u64,
    pub n0: u64,
    pub concave_side: u64,
    pub concave_diagonal: u64,
    pub convex_halfplane: u64,
    pub claimed_range: Option<ClaimedRange>,
    pub mode: Option<SearchMode>,
    pub search_max_n: Option<u64>,
    /// Found maximum at most the claimed maximum for the mode; absent without a claim or a search.
    pub within_claim: Option<bool>,
    pub consistent: bool,
}

impl BoundReport {
    /// Bounds alone, with no search outcome attached.
    pub fn for_k(k: u64) -> Result<Self, BoundsError> {
        Ok(BoundReport {
            k,
            n0: n0_bound(k)?,
            concave_side: concave_side_bound(k)?,
            concave_diagonal: concave_diagonal_bound(k)?,
            convex_halfplane: convex_halfplane_bound(k)?,
            claimed_range: claimed_n_range(k),
            mode: None,
            search_max_n: None,
            within_claim: None,
            consistent: true,
        })
    }

    pub fn table(&self) -> String {
        let opt = |v: Option<u64>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
        let mut s = String::new();
        let _ = writeln!(s, "k                  {}", self.k);
        let _ = writeln!(s, "n0 = 4k            {}", self.n0);
        let _ = writeln!(s, "side bound 2k+1    {}", self.concave_side);
        let _ = writeln!(s, "diagonal bound 4k  {}", self.concave_diagonal);
        let _ = writeln!(s, "half-plane 2k-1    {}", self.convex_halfplane);
        if let Some(c) = &self.claimed_range {
            let _ = writeln!(s, "claimed convex     {:?}", c.convex);
            let _ = writeln!(s, "claimed concave    {:?}", c.concave);
            let _ = writeln!(s, "unconfirmed        {:?}", c.unconfirmed);
        }
        if let Some(m) = self.mode {
            let _ = writeln!(s, "mode               {m}");
        }
        let _ = writeln!(s, "search max_n       {}", opt(self.search_max_n));
        let _ = writeln!(
            s,
            "within claim       {}",
            self.within_claim.map_or("-".into(), |b| b.to_string())
        );
        let _ = writeln!(s, "consistent         {}", self.consistent);
        s
    }
}

pub fn check_claims(report: &SearchReport) -> BoundReport {
    let k = report.k.max(1);
    let mut out = BoundReport::for_k(k).expect("k >= 1");
    let found = report.max_n_found as u64;
    out.mode = Some(report.mode);
    out.search_max_n = Some(found);
    out.within_claim = out
        .claimed_range
        .as_ref()
        .map(|c| found <= c.max_for(report.mode));
    out.consistent = found <= out.n0;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::QuadPoint;
    use crate::search::{SearchConfig, SearchMode};

    fn report(k: u64, max_n: usize, mode: SearchMode) -> SearchReport {
        let cfg = SearchConfig::new(k, k.max(1), mode).unwrap();
        SearchReport {
            k,
            max_dist: cfg.max_dist,
            mode,
            scope: cfg.scope(),
            apex_count: 0,
            edge_count: 0,
            max_n_found: max_n,
            bound_4k: 4 * k,
            exceeded: max_n as u64 > 4 * k,
            target_n: None,
            target_reached: None,
            witnesses: vec![],
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!([1, 2, 3].map(|k| n0_bound(k).unwrap()), [4, 8, 12]);
        assert_eq!([1, 2, 3].map(|k| concave_side_bound(k).unwrap()), [3, 5, 7]);
        assert_eq!(
            [1, 2, 5].map(|k| concave_diagonal_bound(k).unwrap()),
            [4, 8, 20]
        );
        assert_eq!(
            [1, 2, 3].map(|k| convex_halfplane_bound(k).unwrap()),
            [1, 3, 5]
        );
        assert_eq!(n0_bound(0), Err(BoundsError::ZeroK));
        assert_eq!(concave_side_bound(0), Err(BoundsError::ZeroK));
        assert_eq!(concave_diagonal_bound(0), Err(BoundsError::ZeroK));
        assert_eq!(convex_halfplane_bound(0), Err(BoundsError::ZeroK));
    }

    #[test]
    fn identities() {
        for k in 1..=100 {
            let n0 = n0_bound(k).unwrap();
            assert!(concave_side_bound(k).unwrap() <= concave_diagonal_bound(k).unwrap());
            assert_eq!(concave_diagonal_bound(k).unwrap(), n0);
            assert_eq!(convex_halfplane_bound(k).unwrap() * 2 + 2, n0);
        }
    }

    #[test]
    fn claims() {
        let c = claimed_n_range(1).unwrap();
        assert_eq!(c.convex, vec![3]);
        let c = claimed_n_range(2).unwrap();
        assert_eq!(
            (c.convex.clone(), c.concave.clone()),
            (vec![3, 4, 5], vec![3, 4, 5, 6])
        );
        assert_eq!(c.unconfirmed, vec![5, 6]);
        let c = claimed_n_range(3).unwrap();
        assert_eq!(c.convex, vec![3, 4, 5, 6, 7]);
        assert!(claimed_n_range(4).is_none());
    }

    #[test]
    fn rectangle_profile() {
        let pts = [(0, 0), (3, 0), (0, 4), (3, 4)]
            .map(|(x, y)| QuadPoint::from_ints(x, y))
            .to_vec();
        let set = DiophantineSet::certify(pts, None).unwrap();
        let prof = halfplane_difference_profile(&set, 0, 1, 3).unwrap();
        assert_eq!(prof.upper.deltas, vec![-1, 1]);
        assert_eq!(prof.upper.vertices, vec![2, 3]);
        assert!(prof.upper.distinct && prof.upper.strictly_monotone);
        assert!(prof.lower.deltas.is_empty());
        assert!(prof.within_range());
        assert!(matches!(
            halfplane_difference_profile(&set, 0, 1, 4),
            Err(BoundsError::NotAtDistance { .. })
        ));
        assert!(matches!(
            halfplane_difference_profile(&set, 0, 9, 3),
            Err(BoundsError::Index(9, 4))
        ));
    }

    #[test]
    fn isosceles_profile() {
        let w = crate::search::Witness::build(
            1,
            &[crate::search::ApexLabel {
                a: 7,
                b: 7,
                sign: HalfPlane::Minus,
            }],
        )
        .unwrap();
        let prof = halfplane_difference_profile(&w.set, 0, 1, 1).unwrap();
        assert_eq!(prof.lower.deltas, vec![0]);
        assert!(prof.upper.deltas.is_empty());
    }

    #[test]
    fn check_claims_examples() {
        let b = check_claims(&report(1, 3, SearchMode::Sets));
        assert!(b.consistent);
        assert_eq!(b.within_claim, Some(true));
        let b = check_claims(&report(3, 4, SearchMode::Convex));
        assert!(b.consistent && b.within_claim == Some(true));
        let b = check_claims(&report(3, 13, SearchMode::Sets));
        assert!(!b.consistent);
        assert_eq!(b.within_claim, Some(false));
        let b = check_claims(&report(5, 6, SearchMode::Sets));
        assert!(b.consistent && b.within_claim.is_none());
        assert!(b.table().contains("consistent         true"));
    }
}
