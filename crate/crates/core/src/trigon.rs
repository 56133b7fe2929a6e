//! Law-of-cosines comparisons on integer triangles.
//!
//! Angles are never evaluated. Every comparison is made on exact cosines,
//! with the order reversed because cosine is strictly decreasing on (0, π).

use std::cmp::Ordering;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::kernel::{
    distance_squared, rational, rational_int, segments_cross, sign_rat_plus_sqrt, KernelError,
    QuadPoint, Rational,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrigonError {
    #[error("sides ({0}, {1}, {2}) violate the strict triangle inequality")]
    NotATriangle(u64, u64, u64),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("segments A-C2 and B-C1 do not cross at an interior point")]
    NoCrossing,
    #[error("squared length is not rational")]
    IrrationalLength,
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

fn is_triangle(x: u64, y: u64, z: u64) -> bool {
    x > 0 && y > 0 && z > 0 && x + y > z && y + z > x && x + z > y
}

/// Cosine of the angle between sides `adj1` and `adj2`, opposite `opp`.
pub fn cos_angle(adj1: u64, adj2: u64, opp: u64) -> Result<Rational, TrigonError> {
    if !is_triangle(adj1, adj2, opp) {
        return Err(TrigonError::NotATriangle(adj1, adj2, opp));
    }
    let (x, y, z) = (adj1 as i64, adj2 as i64, opp as i64);
    Ok(rational(x * x + y * y - z * z, 2 * x * y))
}

/// Two triangles `(s, k, s + k − m)` for `s = a` and `s = b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TriangleCompareInstance {
    pub a: u64,
    pub b: u64,
    pub k: u64,
    pub m: u64,
}

impl TriangleCompareInstance {
    pub fn new(a: u64, b: u64, k: u64, m: u64) -> Result<Self, TrigonError> {
        if a == 0 || m == 0 {
            return Err(TrigonError::InvalidInstance(
                "a, b, k, m must be natural".into(),
            ));
        }
        if a >= b {
            return Err(TrigonError::InvalidInstance(format!(
                "a < b required, got a={a}, b={b}"
            )));
        }
        if m >= k {
            return Err(TrigonError::InvalidInstance(format!(
                "m < k required, got k={k}, m={m}"
            )));
        }
        for s in [a, b] {
            if !is_triangle(s, k, s + k - m) {
                return Err(TrigonError::NotATriangle(s, k, s + k - m));
            }
        }
        Ok(TriangleCompareInstance { a, b, k, m })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma1Cosines {
    pub cos_c1: Rational,
    pub cos_c2: Rational,
    pub cos_a1: Rational,
    pub cos_a2: Rational,
}

impl Lemma1Cosines {
    pub fn holds(&self) -> bool {
        self.cos_c1 > self.cos_c2 && self.cos_a1 > self.cos_a2
    }
}

/// `Ĉ` sits between sides `k` and `s + k − m`; `Â` between `s` and `k`.
pub fn lemma1_cosines(inst: &TriangleCompareInstance) -> Lemma1Cosines {
    let (k, m) = (inst.k, inst.m);
    let c = |s: u64| cos_angle(k, s + k - m, s).expect("validated instance");
    let a = |s: u64| cos_angle(s, k, s + k - m).expect("validated instance");
    Lemma1Cosines {
        cos_c1: c(inst.a),
        cos_c2: c(inst.b),
        cos_a1: a(inst.a),
        cos_a2: a(inst.b),
    }
}

/// Both angles grow strictly when `a` is replaced by the larger `b`.
pub fn lemma1_check(inst: &TriangleCompareInstance) -> bool {
    lemma1_cosines(inst).holds()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum AngleTask {
    /// `c ≤ b − 1`, compared against the angle opposite `2` in `(b, b − 1, 2)`.
    Task1,
    /// `c ≥ b + 1`, compared against the angle opposite `2` in `(b, b + 1, 2)`.
    Task2,
}

/// Triangle `(a, b, c)`; `α` is the angle opposite `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AngleCompareInstance {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub task: AngleTask,
}

impl AngleCompareInstance {
    pub fn task1(a: u64, b: u64, c: u64) -> Result<Self, TrigonError> {
        if !is_triangle(a, b, c) {
            return Err(TrigonError::NotATriangle(a, b, c));
        }
        if b < 3 || a < 2 || c + 1 > b {
            return Err(TrigonError::InvalidInstance(format!(
                "first comparison needs c <= b-1, a >= 2, b >= 3; got a={a}, b={b}, c={c}"
            )));
        }
        Ok(AngleCompareInstance {
            a,
            b,
            c,
            task: AngleTask::Task1,
        })
    }

    pub fn task2(a: u64, b: u64, c: u64) -> Result<Self, TrigonError> {
        if !is_triangle(a, b, c) {
            return Err(TrigonError::NotATriangle(a, b, c));
        }
        if c <= b || a < c - b + 1 {
            return Err(TrigonError::InvalidInstance(format!(
                "second comparison needs c >= b+1, a >= c-b+1; got a={a}, b={b}, c={c}"
            )));
        }
        Ok(AngleCompareInstance {
            a,
            b,
            c,
            task: AngleTask::Task2,
        })
    }

    pub fn cos_alpha(&self) -> Rational {
        cos_angle(self.b, self.c, self.a).expect("validated instance")
    }

    /// `cos β` for the reference triangle of this task.
    pub fn cos_beta(&self) -> Rational {
        let b = self.b as i64;
        match self.task {
            AngleTask::Task1 => rational(2 * b * b - 2 * b - 3, 2 * b * (b - 1)),
            AngleTask::Task2 => rational(2 * b * (b + 1) - 3, 2 * b * (b + 1)),
        }
    }

    /// `α ≥ β`, i.e. `cos α ≤ cos β`.
    pub fn holds(&self) -> bool {
        self.cos_alpha() <= self.cos_beta()
    }
}

pub fn task1_check(inst: &AngleCompareInstance) -> Result<bool, TrigonError> {
    if inst.task != AngleTask::Task1 {
        return Err(TrigonError::InvalidInstance(
            "expected a first-comparison instance".into(),
        ));
    }
    Ok(inst.holds())
}

pub fn task2_check(inst: &AngleCompareInstance) -> Result<bool, TrigonError> {
    if inst.task != AngleTask::Task2 {
        return Err(TrigonError::InvalidInstance(
            "expected a second-comparison instance".into(),
        ));
    }
    Ok(inst.holds())
}

/// Quadrilateral `A, B, C1, C2` whose diagonals `A–C2` and `B–C1` cross at
/// an interior point `O`, so that `A O C1` and `B O C2` are triangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingInstance {
    pub a: QuadPoint,
    pub b: QuadPoint,
    pub c1: QuadPoint,
    pub c2: QuadPoint,
}

impl CrossingInstance {
    pub fn new(
        a: QuadPoint,
        b: QuadPoint,
        c1: QuadPoint,
        c2: QuadPoint,
    ) -> Result<Self, TrigonError> {
        if !segments_cross(&a, &c2, &b, &c1)? {
            return Err(TrigonError::NoCrossing);
        }
        Ok(CrossingInstance { a, b, c1, c2 })
    }
}

/// Sign of `(|AC2| + |C1B|) − (|AC1| + |BC2|)`.
pub fn crossing_comparison(inst: &CrossingInstance) -> Result<Ordering, TrigonError> {
    let sq = |p: &QuadPoint, q: &QuadPoint| -> Result<Rational, TrigonError> {
        distance_squared(p, q)?
            .as_rational()
            .cloned()
            .ok_or(TrigonError::IrrationalLength)
    };
    let ac2 = sq(&inst.a, &inst.c2)?;
    let c1b = sq(&inst.c1, &inst.b)?;
    let ac1 = sq(&inst.a, &inst.c1)?;
    let bc2 = sq(&inst.b, &inst.c2)?;
    Ok(compare_sqrt_sums(&ac2, &c1b, &ac1, &bc2))
}

/// `|AC2| + |C1B| > |AC1| + |BC2|`, compared exactly.
pub fn crossing_inequality(inst: &CrossingInstance) -> Result<bool, TrigonError> {
    Ok(crossing_comparison(inst)? == Ordering::Greater)
}

/// Exact sign of `√p + √q − √r − √s` for nonnegative rationals.
pub fn compare_sqrt_sums(p: &Rational, q: &Rational, r: &Rational, s: &Rational) -> Ordering {
    // both sides are nonnegative, so comparing squares is enough
    let e = p + q - r - s;
    let lhs_prod = p * q;
    let rhs_prod = r * s;
    let two = rational_int(2);
    let four = rational_int(4);
    let head = sign_rat_plus_sqrt(&e, &two, &lhs_prod);
    if rhs_prod.is_zero() {
        return head;
    }
    if head != Ordering::Greater {
        return Ordering::Less;
    }
    // (e + 2√(pq))² against 4rs
    let rat = &e * &e + &four * &lhs_prod - &four * &rhs_prod;
    sign_rat_plus_sqrt(&rat, &(&four * &e), &lhs_prod)
}

/// Integer form of the crossing inequality with `|AC2| = b`, `|C1B| = a + m`,
/// `|AC1| = a`, `|BC2| = b + t`: the chord excess `m` beats `t`.
pub fn lemma2_integer_consequence(b: u64, a: u64, m: u64, t: u64) -> bool {
    b + (a + m) > a + (b + t)
}

/// One Lemma 1 grid instance with its four cosines, ready for CSV output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma1Row {
    pub instance: TriangleCompareInstance,
    pub cosines: Lemma1Cosines,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleRow {
    pub instance: AngleCompareInstance,
    pub cos_alpha: Rational,
    pub cos_beta: Rational,
    pub holds: bool,
}

/// Grid bounds for the lemma sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepGrid {
    pub a_max: u64,
    pub b_max: u64,
    pub k_max: u64,
    pub m_max: u64,
    pub b_max_tasks: u64,
    pub m_max_tasks: u64,
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid {
            a_max: 40,
            b_max: 40,
            k_max: 15,
            m_max: 15,
            b_max_tasks: 60,
            m_max_tasks: 30,
        }
    }
}

/// Every valid `(a, b, k, m)` with `a ≤ a_max`, `a < b ≤ b_max`, `m ≤ m_max`,
/// `m < k ≤ k_max`, in lexicographic order.
pub fn lemma1_sweep(grid: &SweepGrid) -> Vec<Lemma1Row> {
    let mut params = Vec::new();
    for a in 1..=grid.a_max.min(grid.b_max.saturating_sub(1)) {
        for b in a + 1..=grid.b_max {
            for k in 2..=grid.k_max {
                for m in 1..k.min(grid.m_max + 1) {
                    params.push((a, b, k, m));
                }
            }
        }
    }
    params
        .into_par_iter()
        .filter_map(|(a, b, k, m)| TriangleCompareInstance::new(a, b, k, m).ok())
        .map(|instance| {
            let cosines = lemma1_cosines(&instance);
            Lemma1Row {
                holds: cosines.holds(),
                instance,
                cosines,
            }
        })
        .collect()
}

fn angle_row(instance: AngleCompareInstance) -> AngleRow {
    let (cos_alpha, cos_beta) = (instance.cos_alpha(), instance.cos_beta());
    AngleRow {
        holds: cos_alpha <= cos_beta,
        instance,
        cos_alpha,
        cos_beta,
    }
}

/// Every valid first-comparison triangle with `b ≤ b_max`.
pub fn task1_sweep(b_max: u64) -> Vec<AngleRow> {
    let mut params = Vec::new();
    for b in 3..=b_max {
        for c in 1..b {
            for a in (b - c + 1).max(2)..b + c {
                params.push((a, b, c));
            }
        }
    }
    params
        .into_par_iter()
        .map(|(a, b, c)| angle_row(AngleCompareInstance::task1(a, b, c).expect("grid is valid")))
        .collect()
}

/// Every valid second-comparison triangle with `b ≤ b_max`, `1 ≤ m ≤ m_max`.
pub fn task2_sweep(b_max: u64, m_max: u64) -> Vec<AngleRow> {
    let mut params = Vec::new();
    for b in 1..=b_max {
        for m in 1..=m_max {
            let c = b + m;
            for a in m + 1..b + c {
                params.push((a, b, c));
            }
        }
    }
    params
        .into_par_iter()
        .map(|(a, b, c)| angle_row(AngleCompareInstance::task2(a, b, c).expect("grid is valid")))
        .collect()
}

/// `true` iff `x` is strictly inside `(−1, 1)`.
pub fn in_open_unit_interval(x: &Rational) -> bool {
    *x > -Rational::one() && *x < Rational::one()
}
