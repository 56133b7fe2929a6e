//! Bounded exhaustive search for the largest integer-distance set in general
//! position that contains a pair at distance `k`.
//!
//! The frame is fixed as `P = (0, 0)`, `Q = (k, 0)`. Every further vertex is
//! an apex determined by its integer distances `(a, b)` to `P` and `Q` and
//! a half-plane. Apexes with a natural mutual distance are joined in a
//! compatibility graph and candidate sets are read off its cliques.
//!
//! Completeness holds only inside the frame: every vertex within distance
//! `max_dist` of both `P` and `Q`. Reports say so in their `scope` field.

mod apex;
mod clique;
mod oracle;
mod polygon;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{interior_vertex, DiophantineSet, KernelError, QuadPoint, Rational};

pub use apex::{compatible, ApexCandidate, ApexLabel, HalfPlane};
pub use clique::{degeneracy_order, maximal_cliques};
pub use oracle::{brute_force_oracle, ORACLE_MAX_DIST};
pub use polygon::{assemble_polygon, classify_polygon, is_simple_polygon, PolygonShape};

use apex::{baseline_scaled, scaled_cross, scaled_distance};

/// Upper limit on `max_dist`; keeps scaled coordinates well inside `i128`.
pub const MAX_FRAME: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("no apex at distances ({a}, {b}) from a baseline of length {k}")]
    InvalidApex { k: u64, a: u64, b: u64 },
    #[error("apex {0:?} compared with itself")]
    SameApex(ApexLabel),
    #[error("apexes built for baselines {u} and {v}, expected {k}")]
    BaselineMismatch { k: u64, u: u64, v: u64 },
    #[error("frame too large for exact machine arithmetic")]
    Overflow,
    #[error("brute-force oracle limited to max_dist <= {limit}, got {max_dist}")]
    OracleLimit { max_dist: u64, limit: u64 },
    #[error("baseline endpoints coincide")]
    DegenerateBaseline,
    #[error("polygon is not simple")]
    NotSimple,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Sets,
    Convex,
    Concave,
}

impl SearchMode {
    fn accepts(self, shape: PolygonShape) -> bool {
        match self {
            SearchMode::Sets => true,
            SearchMode::Convex => shape == PolygonShape::Convex,
            SearchMode::Concave => shape == PolygonShape::Concave,
        }
    }
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Sets => "sets",
            SearchMode::Convex => "convex",
            SearchMode::Concave => "concave",
        })
    }
}

impl FromStr for SearchMode {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sets" => Ok(SearchMode::Sets),
            "convex" | "convex_polygons" => Ok(SearchMode::Convex),
            "concave" | "concave_polygons" => Ok(SearchMode::Concave),
            other => Err(SearchError::InvalidConfig(format!(
                "unknown mode {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub k: u64,
    pub max_dist: u64,
    pub target_n: Option<usize>,
    pub mode: SearchMode,
}

impl SearchConfig {
    pub fn new(k: u64, max_dist: u64, mode: SearchMode) -> Result<Self, SearchError> {
        let cfg = SearchConfig {
            k,
            max_dist,
            target_n: None,
            mode,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.k == 0 {
            return Err(SearchError::InvalidConfig("k must be at least 1".into()));
        }
        if self.max_dist < self.k {
            return Err(SearchError::InvalidConfig(format!(
                "max_dist ({}) must be at least k ({})",
                self.max_dist, self.k
            )));
        }
        if self.max_dist > MAX_FRAME {
            return Err(SearchError::InvalidConfig(format!(
                "max_dist above {MAX_FRAME} is not supported"
            )));
        }
        Ok(())
    }

    pub fn scope(&self) -> String {
        format!(
            "exhaustive over all vertices within distance {m} of both P=(0,0) and Q=({k},0); \
             sets with a vertex farther than {m} from P or Q are not covered",
            m = self.max_dist,
            k = self.k
        )
    }
}

/// Every apex with `a, b ≤ max_dist` and `|a − b| < k < a + b`, ordered by
/// `(a, b, sign)`.
pub fn enumerate_apexes(cfg: &SearchConfig) -> Result<Vec<ApexCandidate>, SearchError> {
    cfg.validate()?;
    let k = cfg.k;
    let mut out = Vec::new();
    for a in 1..=cfg.max_dist {
        let lo = (k + 1)
            .saturating_sub(a)
            .max(a.saturating_sub(k) + 1)
            .max(1);
        let hi = (a + k - 1).min(cfg.max_dist);
        for b in lo..=hi {
            for sign in [HalfPlane::Minus, HalfPlane::Plus] {
                out.push(ApexCandidate::new(k, a, b, sign)?);
            }
        }
    }
    Ok(out)
}

/// Apexes joined where their mutual distance is natural and neither
/// baseline endpoint is collinear with the pair.
#[derive(Debug, Clone)]
pub struct CompatibilityGraph {
    k: u64,
    vertices: Vec<ApexCandidate>,
    adjacency: Vec<Vec<usize>>,
    edges: BTreeMap<(usize, usize), u64>,
}

impl CompatibilityGraph {
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn vertices(&self) -> &[ApexCandidate] {
        &self.vertices
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn edges(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, u: usize, v: usize) -> Option<u64> {
        self.edges.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn index_of(&self, label: ApexLabel) -> Option<usize> {
        self.vertices.iter().position(|c| c.label() == label)
    }
}

fn baseline_collinear(k: u64, u: &ApexCandidate, v: &ApexCandidate) -> bool {
    baseline_scaled(k)
        .iter()
        .any(|&o| scaled_cross(o, u.scaled(), v.scaled()) == 0)
}

pub fn build_graph(cfg: &SearchConfig) -> Result<CompatibilityGraph, SearchError> {
    let vertices = enumerate_apexes(cfg)?;
    let k = cfg.k;
    // only equal radicands can pair up; bucket to skip the rest
    let mut by_radicand: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, c) in vertices.iter().enumerate() {
        by_radicand.entry(c.radicand).or_default().push(i);
    }
    let edges: BTreeMap<(usize, usize), u64> = by_radicand
        .values()
        .collect::<Vec<_>>()
        .par_iter()
        .flat_map_iter(|group| {
            let vertices = &vertices;
            group.iter().enumerate().flat_map(move |(gi, &i)| {
                group[gi + 1..].iter().filter_map(move |&j| {
                    let (u, v) = (&vertices[i], &vertices[j]);
                    let d = scaled_distance(u, v)?;
                    (!baseline_collinear(k, u, v)).then_some(((i, j), d))
                })
            })
        })
        .collect();
    let mut adjacency = vec![Vec::new(); vertices.len()];
    for &(i, j) in edges.keys() {
        adjacency[i].push(j);
        adjacency[j].push(i);
    }
    for a in &mut adjacency {
        a.sort_unstable();
    }
    Ok(CompatibilityGraph {
        k,
        vertices,
        adjacency,
        edges,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MaximalClique {
    pub members: Vec<usize>,
    /// No three of the members, `P` and `Q` are collinear.
    pub general_position: bool,
}

/// Maximal cliques with at least `min_size` members, each checked for
/// general position together with the baseline.
pub fn find_max_cliques(g: &CompatibilityGraph, min_size: usize) -> Vec<MaximalClique> {
    maximal_cliques(&g.adjacency)
        .into_iter()
        .filter(|c| c.len() >= min_size)
        .map(|members| {
            let cands: Vec<&ApexCandidate> = members.iter().map(|&i| &g.vertices[i]).collect();
            debug_assert!(members
                .iter()
                .enumerate()
                .all(|(x, &u)| members[x + 1..].iter().all(|&v| g.edge(u, v).is_some())));
            MaximalClique {
                general_position: in_general_position(g.k, &cands),
                members,
            }
        })
        .collect()
}

fn in_general_position(k: u64, members: &[&ApexCandidate]) -> bool {
    let mut pts: Vec<(i128, i128)> = baseline_scaled(k).to_vec();
    pts.extend(members.iter().map(|c| c.scaled()));
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                if scaled_cross(pts[i], pts[j], pts[l]) == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// A maximum set found by a search, with `P` and `Q` as points 0 and 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub apexes: Vec<ApexLabel>,
    pub shape: PolygonShape,
    /// Ray-sweep polygon through all points, as indices into `set`.
    pub polygon: Vec<usize>,
    pub set: DiophantineSet,
}

impl Witness {
    /// Certifies the set and polygonizes it; apexes are put in canonical
    /// order `(D, x, sign, a, b)`.
    pub fn build(k: u64, labels: &[ApexLabel]) -> Result<Self, SearchError> {
        let mut cands = labels
            .iter()
            .map(|l| ApexCandidate::new(k, l.a, l.b, l.sign))
            .collect::<Result<Vec<_>, _>>()?;
        cands.sort_by(|u, v| {
            (u.radicand, &u.x, u.sign, u.a, u.b).cmp(&(v.radicand, &v.x, v.sign, v.a, v.b))
        });
        let mut points = vec![
            QuadPoint::from_ints(0, 0),
            QuadPoint::rational(
                Rational::from_integer(k.into()),
                Rational::from_integer(0.into()),
            ),
        ];
        points.extend(cands.iter().map(ApexCandidate::point));
        let set = DiophantineSet::certify(points, None)?;
        let polygon = assemble_polygon(set.points(), 0, 1)?;
        let ordered: Vec<QuadPoint> = polygon.iter().map(|&i| set.points()[i].clone()).collect();
        let shape = classify_polygon(&ordered)?;
        // a concave polygon must have a vertex inside a triangle of others
        let has_interior = interior_vertex(set.points())?.is_some();
        if has_interior != (shape == PolygonShape::Concave) {
            return Err(SearchError::Inconsistent(format!(
                "polygon classified {shape:?} but interior-vertex test says {has_interior}"
            )));
        }
        Ok(Witness {
            apexes: cands.iter().map(ApexCandidate::label).collect(),
            shape,
            polygon,
            set,
        })
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub k: u64,
    pub max_dist: u64,
    pub mode: SearchMode,
    pub scope: String,
    pub apex_count: usize,
    pub edge_count: usize,
    /// Vertex count of the largest qualifying set, `P` and `Q` included;
    /// zero when no set qualifies in this mode.
    pub max_n_found: usize,
    pub bound_4k: u64,
    pub exceeded: bool,
    pub target_n: Option<usize>,
    pub target_reached: Option<bool>,
    pub witnesses: Vec<Witness>,
}

impl SearchReport {
    pub fn summary_line(&self) -> String {
        format!(
            "k={} M={} max_n={} bound={} consistent={}",
            self.k, self.max_dist, self.max_n_found, self.bound_4k, !self.exceeded
        )
    }
}

/// Assembles a report from the best apex sets, shared by the search and its oracle.
fn finish_report(
    cfg: &SearchConfig,
    apex_count: usize,
    edge_count: usize,
    best: BTreeSet<Vec<ApexLabel>>,
) -> Result<SearchReport, SearchError> {
    let mut witnesses = best
        .par_iter()
        .map(|labels| {
            let w = Witness::build(cfg.k, labels)?;
            let key = serde_json::to_string(&w).expect("witness serializes");
            Ok((key, w))
        })
        .collect::<Result<Vec<_>, SearchError>>()?;
    witnesses.sort_by(|a, b| a.0.cmp(&b.0));
    let witnesses: Vec<Witness> = witnesses.into_iter().map(|(_, w)| w).collect();
    for w in &witnesses {
        if !cfg.mode.accepts(w.shape) {
            return Err(SearchError::Inconsistent(format!(
                "{} witness in {} mode",
                match w.shape {
                    PolygonShape::Convex => "convex",
                    PolygonShape::Concave => "concave",
                },
                cfg.mode
            )));
        }
    }
    let max_n_found = witnesses.first().map_or(0, Witness::len);
    let bound_4k = 4 * cfg.k;
    Ok(SearchReport {
        k: cfg.k,
        max_dist: cfg.max_dist,
        mode: cfg.mode,
        scope: cfg.scope(),
        apex_count,
        edge_count,
        max_n_found,
        bound_4k,
        exceeded: max_n_found as u64 > bound_4k,
        target_n: cfg.target_n,
        target_reached: cfg.target_n.map(|t| max_n_found >= t),
        witnesses,
    })
}

/// Shape of the ray-sweep polygon through `P`, `Q` and the given apexes.
fn shape_of(k: u64, members: &[&ApexCandidate]) -> Result<PolygonShape, SearchError> {
    let mut points = vec![
        QuadPoint::from_ints(0, 0),
        QuadPoint::rational(
            Rational::from_integer(k.into()),
            Rational::from_integer(0.into()),
        ),
    ];
    points.extend(members.iter().map(|c| c.point()));
    let order = assemble_polygon(&points, 0, 1)?;
    let ordered: Vec<QuadPoint> = order.into_iter().map(|i| points[i].clone()).collect();
    classify_polygon(&ordered)
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..r).collect();
    if r > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = r;
        while i > 0 && idx[i - 1] == n - r + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Largest subsets of one clique that are in general position and match the mode.
fn best_subsets(
    g: &CompatibilityGraph,
    clique: &MaximalClique,
    mode: SearchMode,
) -> Result<(usize, Vec<Vec<usize>>), SearchError> {
    let c = clique.members.len();
    for size in (1..=c).rev() {
        let mut found = Vec::new();
        for combo in combinations(c, size) {
            let members: Vec<usize> = combo.iter().map(|&i| clique.members[i]).collect();
            let cands: Vec<&ApexCandidate> = members.iter().map(|&i| &g.vertices[i]).collect();
            if !(clique.general_position || in_general_position(g.k, &cands)) {
                continue;
            }
            if mode != SearchMode::Sets && !mode.accepts(shape_of(g.k, &cands)?) {
                continue;
            }
            found.push(members);
        }
        if !found.is_empty() {
            return Ok((size, found));
        }
    }
    Ok((0, Vec::new()))
}

/// Largest qualifying sets in the frame, found through the compatibility graph.
pub fn search(cfg: &SearchConfig) -> Result<SearchReport, SearchError> {
    let g = build_graph(cfg)?;
    let cliques = find_max_cliques(&g, 1);
    let per_clique = cliques
        .par_iter()
        .map(|c| best_subsets(&g, c, cfg.mode))
        .collect::<Result<Vec<_>, _>>()?;
    let top = per_clique.iter().map(|(s, _)| *s).max().unwrap_or(0);
    let best: BTreeSet<Vec<ApexLabel>> = if top == 0 {
        BTreeSet::new()
    } else {
        per_clique
            .into_iter()
            .filter(|(s, _)| *s == top)
            .flat_map(|(_, sets)| sets)
            .map(|members| {
                let mut labels: Vec<ApexLabel> =
                    members.iter().map(|&i| g.vertices[i].label()).collect();
                labels.sort();
                labels
            })
            .collect()
    };
    finish_report(cfg, g.vertices.len(), g.edge_count(), best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational;

    fn cfg(k: u64, m: u64) -> SearchConfig {
        SearchConfig::new(k, m, SearchMode::Sets).unwrap()
    }

    fn label(a: u64, b: u64, sign: HalfPlane) -> ApexLabel {
        ApexLabel { a, b, sign }
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig::new(0, 5, SearchMode::Sets).is_err());
        assert!(SearchConfig::new(3, 2, SearchMode::Sets).is_err());
        assert!(SearchConfig::new(3, 3, SearchMode::Sets).is_ok());
        assert_eq!("convex".parse::<SearchMode>().unwrap(), SearchMode::Convex);
        assert!("star".parse::<SearchMode>().is_err());
    }

    #[test]
    fn apex_enumeration() {
        let apexes = enumerate_apexes(&cfg(1, 3)).unwrap();
        let got: Vec<_> = apexes.iter().map(|c| (c.a, c.b, c.sign)).collect();
        use HalfPlane::*;
        assert_eq!(
            got,
            vec![
                (1, 1, Minus),
                (1, 1, Plus),
                (2, 2, Minus),
                (2, 2, Plus),
                (3, 3, Minus),
                (3, 3, Plus)
            ]
        );
        assert_eq!(apexes[1].x, rational(1, 2));
        assert_eq!(apexes[1].s, rational(3, 4));
        // brute-force count of the validity predicate
        for (k, m) in [(2, 7), (3, 10), (5, 9)] {
            let want = (1..=m)
                .flat_map(|a| (1..=m).map(move |b| (a, b)))
                .filter(|&(a, b): &(u64, u64)| a.abs_diff(b) < k && k < a + b)
                .count();
            assert_eq!(enumerate_apexes(&cfg(k, m)).unwrap().len(), 2 * want);
        }
    }

    #[test]
    fn small_graphs() {
        let g = build_graph(&cfg(1, 3)).unwrap();
        assert_eq!(g.edge_count(), 0);
        let radicands: BTreeSet<u64> = g.vertices().iter().map(|c| c.radicand).collect();
        assert_eq!(radicands, BTreeSet::from([3, 15, 35]));

        let g = build_graph(&cfg(3, 5)).unwrap();
        let u = g.index_of(label(4, 5, HalfPlane::Plus)).unwrap();
        let v = g.index_of(label(5, 4, HalfPlane::Plus)).unwrap();
        assert_eq!(g.edge(u, v), Some(3));

        let g = build_graph(&cfg(4, 4)).unwrap();
        assert_eq!(g.vertices().len(), 2 * 10);
    }

    #[test]
    fn radicand_law_on_edges() {
        let g = build_graph(&cfg(3, 20)).unwrap();
        for &(u, v) in g.edges().keys() {
            assert_eq!(g.vertices()[u].radicand, g.vertices()[v].radicand);
        }
    }

    #[test]
    fn cliques_contain_rectangle() {
        let g = build_graph(&cfg(3, 20)).unwrap();
        let u = g.index_of(label(4, 5, HalfPlane::Plus)).unwrap();
        let v = g.index_of(label(5, 4, HalfPlane::Plus)).unwrap();
        let cliques = find_max_cliques(&g, 2);
        assert!(cliques
            .iter()
            .any(|c| c.members.contains(&u) && c.members.contains(&v)));
        let empty = build_graph(&cfg(1, 3)).unwrap();
        assert_eq!(find_max_cliques(&empty, 1).len(), 6);
    }

    #[test]
    fn k1_only_triangles() {
        let r = search(&cfg(1, 20)).unwrap();
        assert_eq!(r.max_n_found, 3);
        assert_eq!(r.witnesses.len(), 40);
        for w in &r.witnesses {
            let t = &w.apexes[0];
            assert_eq!(t.a, t.b);
        }
    }

    #[test]
    fn k3_rectangle() {
        let r = search(&cfg(3, 20)).unwrap();
        assert!(r.max_n_found >= 4);
        let rect = vec![label(4, 5, HalfPlane::Plus), label(5, 4, HalfPlane::Plus)];
        if r.max_n_found == 4 {
            assert!(r.witnesses.iter().any(|w| {
                let mut a = w.apexes.clone();
                a.sort();
                a == rect
            }));
        }
        assert!(!r.exceeded);
    }

    #[test]
    fn witness_layout() {
        let w = Witness::build(
            3,
            &[label(5, 4, HalfPlane::Plus), label(4, 5, HalfPlane::Plus)],
        )
        .unwrap();
        assert_eq!(
            w.apexes,
            vec![label(4, 5, HalfPlane::Plus), label(5, 4, HalfPlane::Plus)]
        );
        assert_eq!(w.polygon, vec![0, 2, 3, 1]);
        assert_eq!(w.shape, PolygonShape::Convex);
        assert_eq!(w.set.distance(2, 3), &3u32.into());
    }

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(4, 1).len(), 4);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = serde_json::to_string(&search(&cfg(2, 15)).unwrap()).unwrap();
        let b = serde_json::to_string(&search(&cfg(2, 15)).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
