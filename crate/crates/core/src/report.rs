//! Analysis reports: the full per-polytope computation bundle and its
//! two serializations (human-readable text and machine-readable
//! records).
//!
//! A record is a single JSON object per line with keys sorted
//! alphabetically, so records are byte-identical across runs for the
//! same inputs and flags. The grammar is versioned through the
//! `format_version` field.

use crate::cayley::{self, CayleyDecomposition, DetectOptions};
use crate::jets::{self, GenericOrder, JetReport};
use crate::linalg::Rat;
use crate::polytope::LatticePolytope;
use crate::seshadri::{self, EquivalenceVerdict, GenericEpsilon, SeshadriOptions};
use serde_json::{json, Value};

pub const FORMAT_VERSION: u64 = 1;

/// What to compute and how far to search.
#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    /// Bound for the generic jet order search; `None` uses the
    /// per-polytope default (longest edge + 1).
    pub max_k: Option<u64>,
    /// Cayley detection is run for every order in `1..=cayley_max_order`
    /// (default: longest edge + 1).
    pub cayley_max_order: Option<u64>,
    /// Include the five-way equivalence verdict at this order (smooth
    /// polytopes only).
    pub verify_order: Option<u64>,
    pub seshadri: SeshadriOptions,
    pub cayley: DetectOptions,
    /// Seed for the random rational evaluation points of the jet-rank
    /// cross-check.
    pub seed: u64,
    /// Number of random rational points in the cross-check (0 disables).
    pub oracle_samples: u32,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            max_k: None,
            cayley_max_order: None,
            verify_order: None,
            seshadri: SeshadriOptions::default(),
            cayley: DetectOptions::default(),
            seed: 0,
            oracle_samples: 5,
        }
    }
}

/// Everything the `analyze` command computes for one polytope.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub dim: usize,
    pub vertex_count: usize,
    pub facet_count: usize,
    pub lattice_point_count: usize,
    pub smooth: bool,
    pub smooth_failure: Option<String>,
    pub min_edge: u64,
    pub max_edge: u64,
    /// Present only for smooth polytopes.
    pub jet: Option<JetReport>,
    /// Rank of the all-ones jet matrix and of random rational
    /// evaluations, per order `1..=oracle cap`, when requested.
    pub rank_oracle_consistent: Option<bool>,
    pub cayley: Vec<(u64, Option<CayleyDecomposition>)>,
    pub epsilon: GenericEpsilon,
    pub fixpoint_epsilon: Option<Vec<u64>>,
    /// Present when a verification order was requested on a smooth
    /// polytope.
    pub verdict: Option<EquivalenceVerdict>,
}

pub fn analyze(p: &LatticePolytope, opts: &AnalysisOptions) -> Analysis {
    let smoothness = p.smoothness();
    let smooth = smoothness.is_ok();
    let jet = if smooth {
        Some(jets::jet_report(p, opts.max_k).expect("smooth checked"))
    } else {
        None
    };
    let cayley_cap = opts.cayley_max_order.unwrap_or_else(|| p.max_edge_length() + 1);
    let cayley: Vec<(u64, Option<CayleyDecomposition>)> = (1..=cayley_cap)
        .map(|s| (s, cayley::detect(p, s, &opts.cayley)))
        .collect();
    let epsilon = seshadri::generic_epsilon(p, &opts.seshadri);
    let fixpoint_epsilon = smooth.then(|| {
        (0..p.vertex_count())
            .map(|v| seshadri::fixpoint_epsilon(p, v).expect("smooth checked"))
            .collect()
    });
    let rank_oracle_consistent = (opts.oracle_samples > 0).then(|| {
        let cap = jet
            .as_ref()
            .map(|j| j.generic.lower() + 1)
            .unwrap_or(2)
            .min(4);
        (1..=cap).all(|k| {
            let all_ones = jets::jet_matrix(p, k, jets::EvalMode::AllOnes)
                .expect("all-ones mode is total")
                .rank();
            let (pow, _) = jets::power_matrix(p.lattice_points(), p.dim(), k);
            let random =
                jets::max_rank_at_random_points(p, k, opts.oracle_samples, opts.seed);
            all_ones == pow.rank() && all_ones == random
        })
    });
    let verdict = match opts.verify_order {
        Some(k) if smooth => {
            let vo = seshadri::VerifyOptions {
                seshadri: opts.seshadri.clone(),
                cayley: opts.cayley.clone(),
            };
            Some(seshadri::verify_equivalence(p, k, &vo).expect("smooth checked"))
        }
        _ => None,
    };
    Analysis {
        dim: p.dim(),
        vertex_count: p.vertex_count(),
        facet_count: p.facets().len(),
        lattice_point_count: p.lattice_point_count(),
        smooth,
        smooth_failure: smoothness.err().map(|e| e.to_string()),
        min_edge: p.min_edge_length(),
        max_edge: p.max_edge_length(),
        jet,
        rank_oracle_consistent,
        cayley,
        epsilon,
        fixpoint_epsilon,
        verdict,
    }
}

fn rat_value(r: &Rat) -> Value {
    Value::String(r.to_string())
}

fn generic_order_value(g: &GenericOrder) -> Value {
    match g {
        GenericOrder::Exactly(k) => json!({ "exact": k }),
        GenericOrder::AtLeast(k) => json!({ "at_least": k }),
    }
}

pub fn decomposition_value(d: &CayleyDecomposition) -> Value {
    let projection: Vec<Vec<String>> = (0..d.projection.rows())
        .map(|r| d.projection.row(r).iter().map(|c| c.to_string()).collect())
        .collect();
    let slices: Vec<Value> = d
        .slices
        .iter()
        .map(|s| {
            json!({
                "dim": s.dim(),
                "vertices": s.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "order": d.order,
        "length": d.length(),
        "projection": projection,
        "level_map": d.level_map,
        "slices": slices,
        "strict": d.strict,
        "strictness": d.strictness.to_string(),
    })
}

pub fn verdict_value(v: &EquivalenceVerdict) -> Value {
    let conditions: Vec<Value> = v
        .conditions
        .iter()
        .map(|c| {
            json!({
                "label": c.label,
                "statement": c.statement,
                "holds": c.holds,
                "witness": c.witness,
            })
        })
        .collect();
    json!({
        "order": v.order,
        "conditions": conditions,
        "consistent": v.consistent,
        "notes": v.notes,
    })
}

pub fn epsilon_value(e: &GenericEpsilon) -> Value {
    json!({
        "lower": rat_value(&e.lower),
        "upper": rat_value(&e.upper),
        "exact": e.exact.as_ref().map(rat_value),
        "width": e.width.width,
        "width_direction": e.width.direction.to_string(),
        "width_certified": e.width.certified,
        "width_bound": e.width.bound,
        "s1_lower": rat_value(&e.s1.value),
        "s1_bound": e.s1.bound,
        "s1_witness": e.s1.witness.to_string(),
    })
}

/// One record line (without trailing newline): a JSON object with sorted
/// keys.
pub fn analysis_record(name: &str, a: &Analysis) -> String {
    let jet = a.jet.as_ref().map(|j| {
        json!({
            "per_fixpoint": j.per_fixpoint,
            "generic": generic_order_value(&j.generic),
            "constant": j.constant,
        })
    });
    let cayley: Vec<Value> = a
        .cayley
        .iter()
        .map(|(s, d)| match d {
            Some(d) => json!({ "order": s, "found": true, "decomposition": decomposition_value(d) }),
            None => json!({ "order": s, "found": false }),
        })
        .collect();
    let value = json!({
        "format_version": FORMAT_VERSION,
        "kind": "analysis",
        "name": name,
        "dim": a.dim,
        "vertices": a.vertex_count,
        "facets": a.facet_count,
        "lattice_points": a.lattice_point_count,
        "smooth": a.smooth,
        "smooth_failure": a.smooth_failure,
        "min_edge": a.min_edge,
        "max_edge": a.max_edge,
        "jet": jet,
        "rank_oracle_consistent": a.rank_oracle_consistent,
        "cayley": cayley,
        "epsilon": epsilon_value(&a.epsilon),
        "fixpoint_epsilon": a.fixpoint_epsilon,
        "verdict": a.verdict.as_ref().map(verdict_value),
    });
    value.to_string()
}

pub fn verdict_record(name: &str, v: &EquivalenceVerdict) -> String {
    json!({
        "format_version": FORMAT_VERSION,
        "kind": "verdict",
        "name": name,
        "verdict": verdict_value(v),
    })
    .to_string()
}

/// Human-readable rendering of an analysis.
pub fn analysis_text(name: &str, a: &Analysis) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("polytope        {name}"));
    line(format!("dim             {}", a.dim));
    line(format!("vertices        {}", a.vertex_count));
    line(format!("facets          {}", a.facet_count));
    line(format!("lattice points  {}", a.lattice_point_count));
    match &a.smooth_failure {
        None => line("smooth          yes".into()),
        Some(reason) => line(format!("smooth          no ({reason})")),
    }
    line(format!("edge lengths    min {} max {}", a.min_edge, a.max_edge));
    if let Some(j) = &a.jet {
        line(format!("jet fixpoints   {:?}", j.per_fixpoint));
        line(format!("jet generic     {}", j.generic));
        match j.constant {
            Some(k) => line(format!("jet constant    {k}")),
            None => line("jet constant    no".into()),
        }
    }
    if let Some(ok) = a.rank_oracle_consistent {
        line(format!(
            "rank oracle     {}",
            if ok { "consistent" } else { "INCONSISTENT" }
        ));
    }
    for (s, d) in &a.cayley {
        match d {
            Some(d) => line(format!(
                "cayley order {s}  yes: altitude {}, {}",
                d.altitude().expect("length-2"),
                d.strictness
            )),
            None => line(format!("cayley order {s}  no")),
        }
    }
    line(format!(
        "width (s2)      {} along {} (bound {}, {})",
        a.epsilon.width.width,
        a.epsilon.width.direction,
        a.epsilon.width.bound,
        if a.epsilon.width.certified {
            "certified"
        } else {
            "not certified"
        }
    ));
    line(format!("s1 lower bound  {}", a.epsilon.s1.value));
    match &a.epsilon.exact {
        Some(e) => line(format!("epsilon generic {e} (exact)")),
        None => line(format!(
            "epsilon generic in [{}, {}]",
            a.epsilon.lower, a.epsilon.upper
        )),
    }
    if let Some(fe) = &a.fixpoint_epsilon {
        line(format!("epsilon fixed   {fe:?}"));
    }
    if let Some(v) = &a.verdict {
        out.push_str(&verdict_text(name, v));
    }
    out
}

pub fn verdict_text(name: &str, v: &EquivalenceVerdict) -> String {
    let mut out = String::new();
    out.push_str(&format!("polytope {name}: equivalence at order {}\n", v.order));
    for c in &v.conditions {
        let holds = match c.holds {
            Some(true) => "true ",
            Some(false) => "false",
            None => "?    ",
        };
        out.push_str(&format!("  ({:>3}) {holds}  {}  [{}]\n", c.label, c.statement, c.witness));
    }
    out.push_str(&format!(
        "  verdict: {}\n",
        if !v.consistent {
            "VIOLATION (decided conditions disagree)"
        } else if v.conditions.iter().all(|c| c.holds.is_some()) {
            "consistent, all conditions decided"
        } else {
            "consistent, some conditions undecided"
        }
    ));
    for n in &v.notes {
        out.push_str(&format!("  note: {n}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_are_stable() {
        let p = LatticePolytope::from_i64_vertices(&[&[0, 0], &[2, 0], &[0, 2]]).unwrap();
        let a1 = analysis_record("simplex", &analyze(&p, &AnalysisOptions::default()));
        let a2 = analysis_record("simplex", &analyze(&p, &AnalysisOptions::default()));
        assert_eq!(a1, a2);
        assert!(a1.starts_with("{\""));
        // keys sorted: "cayley" before "dim" before "epsilon"
        let ci = a1.find("\"cayley\"").unwrap();
        let di = a1.find("\"dim\"").unwrap();
        let ei = a1.find("\"epsilon\"").unwrap();
        assert!(ci < di && di < ei);
    }

    #[test]
    fn analysis_of_hexagon() {
        let p = crate::corpus::del_pezzo_hexagon().unwrap();
        let a = analyze(&p, &AnalysisOptions::default());
        assert!(a.smooth);
        assert_eq!(a.jet.as_ref().unwrap().per_fixpoint, vec![1; 6]);
        assert_eq!(a.rank_oracle_consistent, Some(true));
        assert!(a.cayley.iter().all(|(_, d)| d.is_none()));
        let text = analysis_text("hexagon", &a);
        assert!(text.contains("lattice points  7"));
    }
}
