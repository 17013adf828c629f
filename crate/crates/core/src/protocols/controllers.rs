//! Built-in fuzzy controllers and the monotone rule-grid generator.
//!
//! Every input term is scored by its position in the term set, scaled to
//! `[0, 1]` and flipped for inputs that push the output down. A rule's
//! consequent is the output term at `round(mean score * (terms - 1))`, so
//! the table is monotone in every input by construction.

use crate::fuzzy::{
    FuzzyError, FuzzyInferenceSystem, FuzzyRule, LinguisticVariable, MembershipFunction, Term,
    Universe, DEFAULT_DEFUZZ_SAMPLES,
};

/// How an input moves the controller output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Raises,
    Lowers,
}

pub const COST_TERMS: [&str; 6] = ["VL", "L", "LM", "HM", "H", "VH"];
pub const RATING_TERMS: [&str; 5] = ["VeryLow", "Low", "Medium", "High", "VeryHigh"];

/// Full-grid rule table for `inputs`, last input varying fastest.
pub fn generate_grid_rules(
    inputs: &[(LinguisticVariable, Polarity)],
    output: &LinguisticVariable,
) -> Vec<FuzzyRule> {
    let vars: Vec<LinguisticVariable> = inputs.iter().map(|(v, _)| v.clone()).collect();
    let top = (output.terms().len() - 1) as f64;
    crate::fuzzy::grid_cells(&vars)
        .into_iter()
        .map(|cell| {
            let score: f64 = cell
                .iter()
                .zip(inputs)
                .map(|(&t, (var, polarity))| {
                    let k = var.terms().len();
                    let s = if k == 1 {
                        0.0
                    } else {
                        t as f64 / (k - 1) as f64
                    };
                    match polarity {
                        Polarity::Raises => s,
                        Polarity::Lowers => 1.0 - s,
                    }
                })
                .sum::<f64>()
                / inputs.len() as f64;
            let consequent = (score * top).round() as usize;
            let antecedent: Vec<(String, String)> = cell
                .iter()
                .zip(&vars)
                .map(|(&t, v)| (v.name().to_string(), v.terms()[t].name.clone()))
                .collect();
            FuzzyRule {
                antecedent,
                consequent: (
                    output.name().to_string(),
                    output.terms()[consequent].name.clone(),
                ),
            }
        })
        .collect()
}

fn unit_var(name: &str, terms: &[&str]) -> LinguisticVariable {
    LinguisticVariable::uniform_partition(name, Universe::unit(), terms)
        .expect("static partition is valid")
        .with_unit("normalized")
}

/// Link cost over `[0, 1]`: VL is a left shoulder, the rest are triangles
/// (VH peaks at the upper end).
pub fn cost_variable() -> LinguisticVariable {
    let mf = |i: usize| -> Result<MembershipFunction, FuzzyError> {
        let peak = 0.2 * i as f64;
        match i {
            0 => MembershipFunction::trapezoidal(0.0, 0.0, 0.0, 0.2),
            5 => MembershipFunction::triangular(0.8, 1.0, 1.0),
            _ => MembershipFunction::triangular(peak - 0.2, peak, peak + 0.2),
        }
    };
    let terms = COST_TERMS
        .iter()
        .enumerate()
        .map(|(i, name)| Term {
            name: name.to_string(),
            membership: mf(i).expect("static breakpoints are ordered"),
        })
        .collect();
    LinguisticVariable::new("cost", Universe::unit(), terms)
        .expect("static cost variable is valid")
        .with_unit("normalized")
}

/// Six-input cost controller; lower output means a better cluster head.
/// Inputs in order: tr_energy, r_energy, e_rate, q_size, d_centroid, proximity.
pub fn eeds_global_controller() -> FuzzyInferenceSystem {
    let inputs = [
        (unit_var("tr_energy", &["Low", "High"]), Polarity::Raises),
        (
            unit_var("r_energy", &["Low", "Medium", "High"]),
            Polarity::Lowers,
        ),
        (
            unit_var("e_rate", &["Small", "Medium", "High"]),
            Polarity::Raises,
        ),
        (unit_var("q_size", &["Small", "Large"]), Polarity::Raises),
        (
            unit_var("d_centroid", &["Small", "Large"]),
            Polarity::Raises,
        ),
        (unit_var("proximity", &["Small", "Large"]), Polarity::Raises),
    ];
    build("eeds_global", &inputs, cost_variable())
}

fn qualification_inputs() -> [(LinguisticVariable, Polarity); 3] {
    [
        (
            unit_var("r_energy", &["Low", "Medium", "High"]),
            Polarity::Raises,
        ),
        (
            unit_var("neighbor_count", &["Low", "Medium", "High"]),
            Polarity::Raises,
        ),
        (
            unit_var("d_centroid", &["Small", "Medium", "Large"]),
            Polarity::Lowers,
        ),
    ]
}

/// Three-input local qualification controller; higher is better.
/// Inputs in order: r_energy, neighbor_count, d_centroid.
pub fn eeds_local_controller() -> FuzzyInferenceSystem {
    build(
        "eeds_local",
        &qualification_inputs(),
        unit_var("qualification", &RATING_TERMS),
    )
}

/// Three-input chance controller of the F3N baseline; higher is better.
/// Same inputs as [`eeds_local_controller`].
pub fn f3n_controller() -> FuzzyInferenceSystem {
    build(
        "f3n",
        &qualification_inputs(),
        unit_var("chance", &RATING_TERMS),
    )
}

fn build(
    name: &str,
    inputs: &[(LinguisticVariable, Polarity)],
    output: LinguisticVariable,
) -> FuzzyInferenceSystem {
    let rules = generate_grid_rules(inputs, &output);
    FuzzyInferenceSystem::new(
        name,
        inputs.iter().map(|(v, _)| v.clone()).collect(),
        output,
        rules,
        DEFAULT_DEFUZZ_SAMPLES,
    )
    .expect("generated controller is well formed")
}
