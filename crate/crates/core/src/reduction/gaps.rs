use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed, Zero};
use rayon::prelude::*;

use super::gadget::{gap_bound, GadgetInstance};
use crate::geometry::{format_rational, IntFrame, PNorm, APPROX_TOL};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapCheck {
    /// `a`, `b`, `c` or `d`.
    pub name: &'static str,
    pub passed: bool,
    /// Decided in exact arithmetic.
    pub exact: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub checks: Vec<GapCheck>,
    pub passed: bool,
}

/// Minimum over pairs of a key-or-float distance.
#[derive(Clone, Debug)]
enum MinDist {
    Key(BigInt),
    Float(f64),
}

impl MinDist {
    fn value(&self, norm: PNorm) -> f64 {
        match self {
            MinDist::Key(k) => norm.length_of_key(&BigRational::from_integer(k.clone())),
            MinDist::Float(v) => *v,
        }
    }
}

fn pair_min(frame: &IntFrame, a: &[usize], b: &[usize]) -> Option<MinDist> {
    if frame.norm().is_exact() {
        a.par_iter()
            .filter_map(|&i| b.iter().map(|&j| frame.key(i, j).unwrap()).min())
            .min()
            .map(MinDist::Key)
    } else {
        a.par_iter()
            .filter_map(|&i| b.iter().map(|&j| frame.dist(i, j)).min_by(f64::total_cmp))
            .min_by(f64::total_cmp)
            .map(MinDist::Float)
    }
}

/// `min ≥ len`, where `len = base · 2^(1/p)` if `times_bound`, else `base`.
fn at_least(min: &MinDist, norm: PNorm, base: i64, times_bound: bool) -> bool {
    match (min, norm.key_exponent()) {
        (MinDist::Key(k), Some(e)) => {
            // (base · bound)^e with bound^e = 2.
            let mut t = BigInt::from(base).pow(e);
            if times_bound {
                t *= 2;
            }
            *k >= t
        }
        _ => {
            let len = base as f64 * if times_bound { gap_bound(norm) } else { 1.0 };
            min.value(norm) >= len * (1.0 - APPROX_TOL)
        }
    }
}

/// `(bound − ε)(2n + 1) < 4n + 2`, decided exactly. For finite `p = a/b`
/// this is `2^b < (2 + ε)^a`; for the max norm the bound is 2 and the
/// inequality is `ε > 0`.
pub fn gap_inequality_holds(norm: PNorm, n: usize, epsilon: &BigRational) -> bool {
    let _ = n; // The factor 2n + 1 cancels: (4n + 2)/(2n + 1) = 2.
    if !epsilon.is_positive() {
        return false;
    }
    match norm {
        PNorm::Infinity => true,
        PNorm::Finite { num, den } => {
            let two = BigRational::from_integer(2.into());
            let lhs: BigRational = Pow::pow(&two, den);
            let rhs: BigRational = Pow::pow(&(two + epsilon), num);
            lhs < rhs
        }
    }
}

/// `0 < ε < bound`, exactly: `ε^p < 2` for integer `p`.
fn epsilon_in_range(norm: PNorm, epsilon: &BigRational) -> bool {
    if !epsilon.is_positive() {
        return false;
    }
    match norm {
        PNorm::Infinity => *epsilon < BigRational::from_integer(2.into()),
        PNorm::Finite { num, den } => {
            // ε < 2^(den/num)  ⟺  ε^num < 2^den.
            let lhs: BigRational = Pow::pow(epsilon, num);
            let rhs: BigRational = Pow::pow(&BigRational::from_integer(2.into()), den);
            lhs < rhs
        }
    }
}

/// Certifies the distance gaps the reduction relies on:
///
/// * (a) terminals of adjacent regions are at least `2 · 2^(1/p)` apart;
/// * (b) terminals of non-adjacent regions are at least `4n + 2` apart;
/// * (c) `(2^(1/p) − ε)(2n + 1) < 4n + 2`;
/// * (d) each W-terminal's nearest terminals are tips at distance exactly
///   2, and every other non-tip terminal is at least 3 away.
///
/// All comparisons are exact for integer `p` and the max norm.
pub fn verify_gaps(inst: &GadgetInstance, epsilon: &BigRational) -> GapReport {
    let norm = inst.norm;
    let exact = norm.is_exact();
    let frame = IntFrame::new(&inst.points(), norm);
    let clusters = inst.clusters();
    let n = inst.n();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, c) in clusters.iter().enumerate() {
        if let Some(c) = c {
            members[*c].push(i);
        }
    }
    let g = &inst.source.graph;
    let adjacent = |i: usize, j: usize| {
        let (ui, uj) = (inst.source.u[i], inst.source.u[j]);
        g.neighbors(ui).iter().any(|w| g.neighbors(uj).contains(w))
    };
    let mut adj_min: Option<MinDist> = None;
    let mut far_min: Option<MinDist> = None;
    let less = |a: &MinDist, b: &MinDist| match (a, b) {
        (MinDist::Key(x), MinDist::Key(y)) => x < y,
        _ => a.value(norm) < b.value(norm),
    };
    for i in 0..n {
        for j in i + 1..n {
            let Some(m) = pair_min(&frame, &members[i], &members[j]) else {
                continue;
            };
            let slot = if adjacent(i, j) { &mut adj_min } else { &mut far_min };
            if slot.as_ref().is_none_or(|cur| less(&m, cur)) {
                *slot = Some(m);
            }
        }
    }
    let mut checks = Vec::new();
    let fmt = |m: &MinDist| format!("{:.9}", m.value(norm));

    let (a_ok, a_detail) = match &adj_min {
        Some(m) => (
            at_least(m, norm, 2, true),
            format!(
                "min distance between adjacent regions {} (bound {:.9})",
                fmt(m),
                2.0 * gap_bound(norm)
            ),
        ),
        None => (true, "vacuous: no adjacent regions".into()),
    };
    checks.push(GapCheck {
        name: "a",
        passed: a_ok,
        exact,
        detail: a_detail,
    });

    let delta = inst.delta;
    let (b_ok, b_detail) = match &far_min {
        Some(m) => (
            at_least(m, norm, delta, false),
            format!("min distance between non-adjacent regions {} (Δ = {delta})", fmt(m)),
        ),
        None => (true, "vacuous: every two regions are adjacent".into()),
    };
    checks.push(GapCheck {
        name: "b",
        passed: b_ok,
        exact,
        detail: b_detail,
    });

    let in_range = epsilon_in_range(norm, epsilon);
    let c_ok = in_range && gap_inequality_holds(norm, n, epsilon);
    checks.push(GapCheck {
        name: "c",
        passed: c_ok,
        exact: true,
        detail: if in_range {
            format!(
                "(bound − {})·{} < {}",
                format_rational(epsilon),
                2 * n + 1,
                4 * n + 2
            )
        } else {
            format!("ε = {} is outside (0, bound)", format_rational(epsilon))
        },
    });

    let tips: Vec<bool> = inst.terminals.iter().map(|t| t.role.is_tip()).collect();
    let mut d_fail = Vec::new();
    let len_key = |l: i64| -> Option<BigInt> { norm.key_exponent().map(|e| BigInt::from(l).pow(e)) };
    for &wi in &inst.w_terminals() {
        let others: Vec<usize> = (0..inst.terminals.len()).filter(|&j| j != wi).collect();
        let id = &inst.terminals[wi].id;
        if exact {
            let keys: Vec<BigInt> = others.par_iter().map(|&j| frame.key(wi, j).unwrap()).collect();
            let nearest = keys.iter().min().cloned().unwrap_or_else(BigInt::zero);
            let two = len_key(2).unwrap();
            if nearest != two {
                d_fail.push(format!("{id}: nearest terminal is not at distance 2"));
            }
            let nearest_non_tip = others
                .iter()
                .zip(&keys)
                .filter(|(&j, k)| **k == nearest && !tips[j])
                .count();
            if nearest_non_tip > 0 {
                d_fail.push(format!("{id}: a non-tip terminal is nearest"));
            }
            let three = len_key(3).unwrap();
            if let Some(k) = others.iter().zip(&keys).filter(|(&j, _)| !tips[j]).map(|(_, k)| k).min() {
                if *k < three {
                    d_fail.push(format!("{id}: a non-tip terminal is closer than 3"));
                }
            }
        } else {
            let ds: Vec<f64> = others.iter().map(|&j| frame.dist(wi, j)).collect();
            let nearest = ds.iter().copied().fold(f64::INFINITY, f64::min);
            if (nearest - 2.0).abs() > APPROX_TOL * 2.0 {
                d_fail.push(format!("{id}: nearest terminal is not at distance 2"));
            }
            let non_tip = others
                .iter()
                .zip(&ds)
                .filter(|(&j, _)| !tips[j])
                .map(|(_, d)| *d)
                .fold(f64::INFINITY, f64::min);
            if non_tip < 3.0 * (1.0 - APPROX_TOL) {
                d_fail.push(format!("{id}: a non-tip terminal is closer than 3"));
            }
        }
    }
    checks.push(GapCheck {
        name: "d",
        passed: d_fail.is_empty(),
        exact,
        detail: if d_fail.is_empty() {
            format!(
                "each of {} W-terminals: nearest are tips at 2, other non-tips ≥ 3",
                inst.w_terminals().len()
            )
        } else {
            d_fail.join("; ")
        },
    });
    let passed = checks.iter().all(|c| c.passed);
    GapReport { checks, passed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rational, Point};
    use crate::reduction::fixtures::q3_fixture;
    use crate::reduction::gadget::{reduce, GadgetRole};

    #[test]
    fn q3_gaps_hold_for_l1_l2_linf() {
        let (g, d) = q3_fixture();
        for norm in [PNorm::L1, PNorm::L2, PNorm::Infinity] {
            let inst = reduce(&g, &d, norm).unwrap();
            let r = verify_gaps(&inst, &rational(1, 10));
            assert!(r.passed, "{norm}: {:?}", r.checks);
            assert!(r.checks[1].detail.starts_with("vacuous"));
        }
        let inst = reduce(&g, &d, PNorm::L2).unwrap();
        let r = verify_gaps(&inst, &rational(1, 10));
        // Perpendicular tips meet the bound 2√2 exactly.
        assert!(r.checks[0].detail.contains("2.828427125"), "{}", r.checks[0].detail);
        let inst = reduce(&g, &d, PNorm::L1).unwrap();
        let r = verify_gaps(&inst, &rational(1, 10));
        assert!(r.checks[0].detail.contains("4.000000000"), "{}", r.checks[0].detail);
    }

    #[test]
    fn moved_tip_fails_check_a() {
        let (g, d) = q3_fixture();
        let mut inst = reduce(&g, &d, PNorm::L2).unwrap();
        // Move one tip a unit towards its W-terminal.
        let (ti, wi) = {
            let ti = inst.terminals.iter().position(|t| t.role.is_tip()).unwrap();
            let GadgetRole::Tip { w, .. } = &inst.terminals[ti].role else { unreachable!() };
            let wi = inst.terminals.iter().position(|t| t.id == format!("w:{w}")).unwrap();
            (ti, wi)
        };
        let (t, w) = (inst.terminals[ti].pos.clone(), inst.terminals[wi].pos.clone());
        let half = rational(1, 2);
        inst.terminals[ti].pos = t.lerp(&w, &half);
        let r = verify_gaps(&inst, &rational(1, 10));
        assert!(!r.checks[0].passed);
        let _ = Point::origin();
    }

    #[test]
    fn epsilon_range_and_inequality() {
        for n in 1..=10 {
            for norm in [PNorm::L1, PNorm::L2, PNorm::new(3, 2).unwrap(), PNorm::Infinity] {
                assert!(gap_inequality_holds(norm, n, &rational(1, 1000)));
                assert!(!gap_inequality_holds(norm, n, &rational(0, 1)));
            }
        }
        assert!(epsilon_in_range(PNorm::L2, &rational(7, 5)));
        assert!(!epsilon_in_range(PNorm::L2, &rational(3, 2)));
    }
}
