//! Independent reference implementations shared by the integration and
//! acceptance tests. Nothing here calls into the code under test except to
//! build inputs.

#![allow(dead_code)]

use std::collections::BTreeMap;

use fuzzy_wsn::fuzzy::{
    FuzzyInferenceSystem, FuzzyRule, LinguisticVariable, MembershipFunction, Term, Universe,
};
use fuzzy_wsn::network::EncounterGraph;
use rand::Rng;

// ---------------------------------------------------------------- fuzzy

/// Piecewise-linear degree written out from the breakpoints.
pub fn oracle_degree(points: &[f64], x: f64) -> f64 {
    let (a, b, c, d) = match *points {
        [a, b, c] => (a, b, b, c),
        [a, b, c, d] => (a, b, c, d),
        _ => panic!("bad breakpoints {points:?}"),
    };
    if b <= x && x <= c {
        return 1.0;
    }
    if x <= a || x >= d {
        return 0.0;
    }
    if x < b {
        (x - a) / (b - a)
    } else {
        (d - x) / (d - c)
    }
}

struct OracleVar {
    lo: f64,
    hi: f64,
    terms: Vec<(String, Vec<f64>)>,
}

fn oracle_var(v: &LinguisticVariable) -> OracleVar {
    OracleVar {
        lo: v.universe().lo,
        hi: v.universe().hi,
        terms: v
            .terms()
            .iter()
            .map(|t| (t.name.clone(), t.membership.breakpoints()))
            .collect(),
    }
}

/// Mamdani MIN-MAX centroid of `fis` at `inputs`, integrated with
/// `samples` midpoint cells. An empty aggregate gives the midpoint.
pub fn oracle_centroid(fis: &FuzzyInferenceSystem, inputs: &[f64], samples: usize) -> f64 {
    let ins: Vec<OracleVar> = fis.inputs().iter().map(oracle_var).collect();
    let out = oracle_var(fis.output());
    let degree_of = |var: &OracleVar, term: &str, x: f64| {
        let x = x.clamp(var.lo, var.hi);
        let (_, pts) = var
            .terms
            .iter()
            .find(|(n, _)| n == term)
            .expect("term exists");
        oracle_degree(pts, x)
    };
    let fired: Vec<(f64, &Vec<f64>)> = fis
        .rules()
        .iter()
        .map(|r| {
            let strength = r
                .antecedent
                .iter()
                .map(|(var, term)| {
                    let i = fis.inputs().iter().position(|v| v.name() == var).unwrap();
                    degree_of(&ins[i], term, inputs[i])
                })
                .fold(1.0, f64::min);
            let (_, pts) = out
                .terms
                .iter()
                .find(|(n, _)| *n == r.consequent.1)
                .unwrap();
            (strength, pts)
        })
        .collect();
    let h = (out.hi - out.lo) / samples as f64;
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..samples {
        let x = out.lo + (i as f64 + 0.5) * h;
        let mu = fired
            .iter()
            .map(|(s, pts)| s.min(oracle_degree(pts, x)))
            .fold(0.0, f64::max);
        num += x * mu;
        den += mu;
    }
    if den == 0.0 {
        (out.lo + out.hi) / 2.0
    } else {
        num / den
    }
}

fn random_mf<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> MembershipFunction {
    let n = if rng.random_bool(0.5) { 3 } else { 4 };
    let mut pts: Vec<f64> = (0..n)
        .map(|_| lo + rng.random::<f64>() * (hi - lo))
        .collect();
    pts.sort_by(f64::total_cmp);
    // occasional shoulders at the universe ends
    if rng.random_bool(0.2) {
        pts[0] = lo;
        pts[1] = lo;
    }
    if rng.random_bool(0.2) {
        pts[n - 1] = hi;
        pts[n - 2] = hi;
        pts[..n - 2].iter_mut().for_each(|p| *p = p.min(hi));
    }
    pts.sort_by(f64::total_cmp);
    match n {
        3 => MembershipFunction::triangular(pts[0], pts[1], pts[2]).unwrap(),
        _ => MembershipFunction::trapezoidal(pts[0], pts[1], pts[2], pts[3]).unwrap(),
    }
}

fn random_var<R: Rng>(rng: &mut R, name: &str, terms: usize) -> LinguisticVariable {
    let lo = rng.random_range(-10.0..10.0);
    let hi = lo + rng.random_range(0.5..20.0);
    let terms = (0..terms)
        .map(|i| Term {
            name: format!("t{i}"),
            membership: random_mf(rng, lo, hi),
        })
        .collect();
    LinguisticVariable::new(name, Universe::new(lo, hi).unwrap(), terms).unwrap()
}

/// Two-input system with random universes, shapes and a full random rule
/// grid.
pub fn random_two_input_fis<R: Rng>(rng: &mut R) -> FuzzyInferenceSystem {
    let counts = [
        rng.random_range(2..=3),
        rng.random_range(2..=3),
        rng.random_range(2..=4),
    ];
    let a = random_var(rng, "a", counts[0]);
    let b = random_var(rng, "b", counts[1]);
    let out = random_var(rng, "y", counts[2]);
    let mut rules = Vec::new();
    for ta in a.terms() {
        for tb in b.terms() {
            let k = rng.random_range(0..out.terms().len());
            rules.push(FuzzyRule::new(
                &[("a", ta.name.as_str()), ("b", tb.name.as_str())],
                "y",
                &out.terms()[k].name,
            ));
        }
    }
    FuzzyInferenceSystem::new("random", vec![a, b], out, rules, 1001).unwrap()
}

/// Random input inside (or slightly past) each input universe.
pub fn random_inputs<R: Rng>(rng: &mut R, fis: &FuzzyInferenceSystem) -> Vec<f64> {
    fis.inputs()
        .iter()
        .map(|v| {
            let u = v.universe();
            u.lo + rng.random_range(-0.05..1.05) * (u.hi - u.lo)
        })
        .collect()
}

// ---------------------------------------------------------------- graphs

/// Adjacency-matrix metrics: (cc, pl, dr).
#[allow(clippy::needless_range_loop)]
pub fn brute_graph_metrics(n: usize, edges: &[(usize, usize)]) -> (f64, Option<f64>, f64) {
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in edges {
        if a != b {
            adj[a][b] = true;
            adj[b][a] = true;
        }
    }
    let mut cc_sum = 0.0;
    for v in 0..n {
        let nb: Vec<usize> = (0..n).filter(|&u| adj[v][u]).collect();
        let k = nb.len();
        if k < 2 {
            continue;
        }
        let mut links = 0usize;
        for i in 0..k {
            for j in i + 1..k {
                if adj[nb[i]][nb[j]] {
                    links += 1;
                }
            }
        }
        cc_sum += links as f64 / (k * (k - 1) / 2) as f64;
    }
    let cc = if n == 0 { 0.0 } else { cc_sum / n as f64 };

    // Floyd-Warshall
    const INF: usize = usize::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
        for j in 0..n {
            if adj[i][j] {
                row[j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    let (mut total, mut pairs, mut cut) = (0usize, 0usize, 0usize);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if d[i][j] < INF {
                total += d[i][j];
                pairs += 1;
            } else if i < j {
                cut += 1;
            }
        }
    }
    let pl = (pairs > 0).then(|| total as f64 / pairs as f64);
    let unordered = n * n.saturating_sub(1) / 2;
    let dr = if unordered == 0 {
        0.0
    } else {
        cut as f64 / unordered as f64
    };
    (cc, pl, dr)
}

pub fn metrics_match(n: usize, edges: &[(usize, usize)]) -> Result<(), String> {
    let m = EncounterGraph::from_edges(n, edges).metrics();
    let (cc, pl, dr) = brute_graph_metrics(n, edges);
    let close = |a: f64, b: f64| a == b;
    let pl_ok = match (m.pl, pl) {
        (None, None) => true,
        (Some(a), Some(b)) => close(a, b),
        _ => false,
    };
    if close(m.cc, cc) && close(m.dr, dr) && pl_ok {
        Ok(())
    } else {
        Err(format!(
            "n={n} edges={edges:?}: got cc={} pl={:?} dr={}, want cc={cc} pl={pl:?} dr={dr}",
            m.cc, m.pl, m.dr
        ))
    }
}

/// Edge list of labelled graph number `mask` on `n` vertices.
pub fn graph_from_mask(n: usize, mask: u32) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    edges
}

// ---------------------------------------------------------------- elections

/// Scores every node, sorts and keeps the quota; returns sorted ids.
pub fn sort_oracle<K: Ord + Copy>(
    scores: &BTreeMap<K, f64>,
    eligible: impl Fn(&K) -> bool,
    k: usize,
    lower_is_better: bool,
) -> Vec<K> {
    let mut all: Vec<(K, f64)> = scores.iter().map(|(k, v)| (*k, *v)).collect();
    let mut pool: Vec<(K, f64)> = all.iter().copied().filter(|(id, _)| eligible(id)).collect();
    if pool.is_empty() {
        pool = std::mem::take(&mut all);
    }
    pool.sort_by(|a, b| {
        let o = if lower_is_better {
            a.1.partial_cmp(&b.1).unwrap()
        } else {
            b.1.partial_cmp(&a.1).unwrap()
        };
        o.then(a.0.cmp(&b.0))
    });
    let mut winners: Vec<K> = pool.into_iter().take(k).map(|(id, _)| id).collect();
    winners.sort();
    winners
}
