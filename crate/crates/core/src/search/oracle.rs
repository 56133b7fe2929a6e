//! Brute-force reference for tiny frames.
//!
//! Shares nothing with the graph search beyond the report format: apex
//! coordinates are recomputed here, integrality comes from exact rational
//! square roots, collinearity from the degenerate-triangle equality on
//! distances, and convexity from the kernel's point-in-triangle test.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::kernel::{convex_position, rational_sqrt, QuadPoint, QuadScalar, Rational};

use super::{finish_report, ApexLabel, HalfPlane, SearchConfig, SearchError, SearchMode};

pub const ORACLE_MAX_DIST: u64 = 12;

struct Vertex {
    label: ApexLabel,
    x: Rational,
    y_sq: Rational,
    sigma: i64,
}

impl Vertex {
    fn point(&self) -> QuadPoint {
        let (n, d) = (self.y_sq.numer().clone(), self.y_sq.denom().clone());
        // √(n/d) = √(n·d) / d
        let radicand = (&n * &d).to_u64().expect("oracle frame is tiny");
        let coeff = Rational::new(BigInt::from(self.sigma), d);
        let y = QuadScalar::surd(coeff, radicand).expect("positive radicand");
        QuadPoint::new(QuadScalar::rational(self.x.clone()), y).expect("single radicand")
    }
}

fn natural_sqrt(q: &Rational) -> Option<u64> {
    let r = rational_sqrt(q).ok()??;
    (r.is_integer() && r.is_positive()).then(|| r.to_integer().to_u64())?
}

fn pair_distance(u: &Vertex, v: &Vertex) -> Option<u64> {
    // |uv|² = (xᵤ − xᵥ)² + sᵤ + sᵥ − 2σᵤσᵥ√(sᵤsᵥ)
    let root = rational_sqrt(&(&u.y_sq * &v.y_sq)).ok()??;
    let dx = &u.x - &v.x;
    let cross = root * Rational::from_integer((2 * u.sigma * v.sigma).into());
    natural_sqrt(&(&dx * &dx + &u.y_sq + &v.y_sq - cross))
}

fn degenerate(d1: u64, d2: u64, d3: u64) -> bool {
    let mut d = [d1, d2, d3];
    d.sort_unstable();
    d[0] + d[1] == d[2]
}

pub fn brute_force_oracle(cfg: &SearchConfig) -> Result<super::SearchReport, SearchError> {
    cfg.validate()?;
    if cfg.max_dist > ORACLE_MAX_DIST {
        return Err(SearchError::OracleLimit {
            max_dist: cfg.max_dist,
            limit: ORACLE_MAX_DIST,
        });
    }
    let k = cfg.k;
    let kq = Rational::from_integer(k.into());
    let mut verts = Vec::new();
    for a in 1..=cfg.max_dist {
        for b in 1..=cfg.max_dist {
            let (aq, bq) = (
                Rational::from_integer(a.into()),
                Rational::from_integer(b.into()),
            );
            let x = (&aq * &aq - &bq * &bq + &kq * &kq) / (Rational::from_integer(2.into()) * &kq);
            let y_sq = &aq * &aq - &x * &x;
            if !y_sq.is_positive() {
                continue;
            }
            for (sign, sigma) in [(HalfPlane::Minus, -1), (HalfPlane::Plus, 1)] {
                verts.push(Vertex {
                    label: ApexLabel { a, b, sign },
                    x: x.clone(),
                    y_sq: y_sq.clone(),
                    sigma,
                });
            }
        }
    }
    let n = verts.len();
    let mut dist = vec![vec![None; n]; n];
    let mut edge_count = 0;
    for i in 0..n {
        for j in i + 1..n {
            let (u, v) = (&verts[i], &verts[j]);
            let Some(d) = pair_distance(u, v) else {
                continue;
            };
            if degenerate(u.label.a, v.label.a, d) || degenerate(u.label.b, v.label.b, d) {
                continue;
            }
            if d.is_zero() {
                continue;
            }
            dist[i][j] = Some(d);
            dist[j][i] = Some(d);
            edge_count += 1;
        }
    }

    let mut state = Search {
        verts: &verts,
        dist: &dist,
        k,
        mode: cfg.mode,
        best: 0,
        best_sets: BTreeSet::new(),
    };
    let mut chosen = Vec::new();
    state.extend(&mut chosen, 0)?;
    let best = state.best_sets;
    finish_report(cfg, n, edge_count, best)
}

struct Search<'a> {
    verts: &'a [Vertex],
    dist: &'a [Vec<Option<u64>>],
    k: u64,
    mode: SearchMode,
    best: usize,
    best_sets: BTreeSet<Vec<ApexLabel>>,
}

impl Search<'_> {
    fn fits(&self, chosen: &[usize], c: usize) -> bool {
        chosen.iter().enumerate().all(|(x, &u)| {
            let Some(duc) = self.dist[u][c] else {
                return false;
            };
            chosen[x + 1..].iter().all(|&v| {
                let dvc = self.dist[v][c].expect("checked earlier");
                let duv = self.dist[u][v].expect("chosen is a clique");
                !degenerate(duv, duc, dvc)
            })
        })
    }

    fn qualifies(&self, chosen: &[usize]) -> Result<bool, SearchError> {
        if self.mode == SearchMode::Sets {
            return Ok(true);
        }
        let mut pts = vec![
            QuadPoint::from_ints(0, 0),
            QuadPoint::from_ints(self.k as i64, 0),
        ];
        pts.extend(chosen.iter().map(|&i| self.verts[i].point()));
        let convex = convex_position(&pts)?;
        Ok(convex == (self.mode == SearchMode::Convex))
    }

    fn extend(&mut self, chosen: &mut Vec<usize>, start: usize) -> Result<(), SearchError> {
        if !chosen.is_empty() && self.qualifies(chosen)? {
            let size = chosen.len();
            if size > self.best {
                self.best = size;
                self.best_sets.clear();
            }
            if size == self.best {
                let mut labels: Vec<ApexLabel> =
                    chosen.iter().map(|&i| self.verts[i].label).collect();
                labels.sort();
                self.best_sets.insert(labels);
            }
        }
        for c in start..self.verts.len() {
            if self.fits(chosen, c) {
                chosen.push(c);
                self.extend(chosen, c + 1)?;
                chosen.pop();
            }
        }
        Ok(())
    }
}
