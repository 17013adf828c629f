use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{validate_rules, FuzzyError, LinguisticVariable, Universe, ValidationReport};

/// Default resolution of the sampled output universe.
pub const DEFAULT_DEFUZZ_SAMPLES: usize = 1001;
/// Coarsest sampling accepted for centroid defuzzification.
pub const MIN_DEFUZZ_SAMPLES: usize = 101;

/// `IF var1 IS term1 AND var2 IS term2 ... THEN output IS term`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzyRule {
    #[serde(rename = "if")]
    pub antecedent: Vec<(String, String)>,
    #[serde(rename = "then")]
    pub consequent: (String, String),
}

impl FuzzyRule {
    pub fn new<A, B>(antecedent: &[(A, B)], output: &str, term: &str) -> Self
    where
        A: AsRef<str>,
        B: AsRef<str>,
    {
        Self {
            antecedent: antecedent
                .iter()
                .map(|(v, t)| (v.as_ref().to_string(), t.as_ref().to_string()))
                .collect(),
            consequent: (output.to_string(), term.to_string()),
        }
    }
}

/// Serialized form of a [`FuzzyInferenceSystem`]. Parsing one only checks
/// the variables; rule references are checked by [`FisDocument::validate`]
/// or when building the system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FisDocument {
    pub name: String,
    pub inputs: Vec<LinguisticVariable>,
    pub output: LinguisticVariable,
    pub rules: Vec<FuzzyRule>,
    #[serde(default = "default_samples")]
    pub defuzz_samples: usize,
}

fn default_samples() -> usize {
    DEFAULT_DEFUZZ_SAMPLES
}

impl FisDocument {
    pub fn validate(&self) -> ValidationReport {
        validate_rules(&self.inputs, &self.output, &self.rules)
    }
}

/// Output fuzzy set sampled at uniform points over the output universe.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub universe: Universe,
    pub degrees: Vec<f64>,
}

impl Aggregate {
    pub fn centroid(&self) -> f64 {
        centroid(&self.degrees, self.universe)
    }
}

/// Rule resolved to variable and term indices.
#[derive(Debug, Clone)]
struct CompiledRule {
    antecedent: Vec<(usize, usize)>,
    consequent: usize,
}

/// A Mamdani controller: MIN for rule strength, clipping implication,
/// MAX aggregation and centroid defuzzification.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "FisDocument", into = "FisDocument")]
pub struct FuzzyInferenceSystem {
    name: String,
    inputs: Vec<LinguisticVariable>,
    output: LinguisticVariable,
    rules: Vec<FuzzyRule>,
    defuzz_samples: usize,
    compiled: Vec<CompiledRule>,
    // output_terms[t][i]: degree of output term t at sample i
    output_terms: Vec<Vec<f64>>,
}

impl PartialEq for FuzzyInferenceSystem {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.inputs == other.inputs
            && self.output == other.output
            && self.rules == other.rules
            && self.defuzz_samples == other.defuzz_samples
    }
}

impl FuzzyInferenceSystem {
    pub fn new(
        name: impl Into<String>,
        inputs: Vec<LinguisticVariable>,
        output: LinguisticVariable,
        rules: Vec<FuzzyRule>,
        defuzz_samples: usize,
    ) -> Result<Self, FuzzyError> {
        if defuzz_samples < MIN_DEFUZZ_SAMPLES {
            return Err(FuzzyError::TooFewSamples(defuzz_samples));
        }
        let mut names = HashSet::new();
        for var in inputs.iter().chain(std::iter::once(&output)) {
            if !names.insert(var.name()) {
                return Err(FuzzyError::DuplicateVariable(var.name().to_string()));
            }
        }
        let compiled = rules
            .iter()
            .enumerate()
            .map(|(i, rule)| compile_rule(i, rule, &inputs, &output))
            .collect::<Result<Vec<_>, _>>()?;
        let universe = output.universe();
        let output_terms = output
            .terms()
            .iter()
            .map(|t| {
                (0..defuzz_samples)
                    .map(|i| {
                        t.membership
                            .degree(universe.sample_point(i, defuzz_samples))
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            name: name.into(),
            inputs,
            output,
            rules,
            defuzz_samples,
            compiled,
            output_terms,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn inputs(&self) -> &[LinguisticVariable] {
        &self.inputs
    }

    pub fn output(&self) -> &LinguisticVariable {
        &self.output
    }

    pub fn rules(&self) -> &[FuzzyRule] {
        &self.rules
    }

    pub fn defuzz_samples(&self) -> usize {
        self.defuzz_samples
    }

    pub fn validate(&self) -> ValidationReport {
        validate_rules(&self.inputs, &self.output, &self.rules)
    }

    /// Aggregated output set for named crisp inputs. The map must hold
    /// exactly this system's input variables.
    pub fn infer(&self, inputs: &BTreeMap<String, f64>) -> Result<Aggregate, FuzzyError> {
        if let Some(extra) = inputs
            .keys()
            .find(|k| !self.inputs.iter().any(|v| v.name() == k.as_str()))
        {
            return Err(FuzzyError::UnexpectedInput(extra.clone()));
        }
        let values = self
            .inputs
            .iter()
            .map(|v| {
                inputs
                    .get(v.name())
                    .copied()
                    .ok_or_else(|| FuzzyError::MissingInput(v.name().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.infer_ordered(&values)
    }

    /// Same as [`infer`](Self::infer) with inputs given in declaration order.
    pub fn infer_ordered(&self, values: &[f64]) -> Result<Aggregate, FuzzyError> {
        let strengths = self.term_strengths(values)?;
        let mut degrees = vec![0.0_f64; self.defuzz_samples];
        for (strength, term) in strengths.iter().zip(&self.output_terms) {
            if *strength <= 0.0 {
                continue;
            }
            for (agg, mu) in degrees.iter_mut().zip(term) {
                *agg = agg.max(mu.min(*strength));
            }
        }
        Ok(Aggregate {
            universe: self.output.universe(),
            degrees,
        })
    }

    /// Crisp output for inputs in declaration order.
    pub fn evaluate(&self, values: &[f64]) -> Result<f64, FuzzyError> {
        Ok(self.infer_ordered(values)?.centroid())
    }

    /// Clip level of each output term: MAX over rules concluding that term
    /// of the rule's MIN antecedent degree. Clipping one membership function
    /// at several levels and taking the pointwise MAX equals clipping it
    /// once at the largest level, so this is exact MIN-MAX inference.
    fn term_strengths(&self, values: &[f64]) -> Result<Vec<f64>, FuzzyError> {
        if values.len() != self.inputs.len() {
            return Err(FuzzyError::InputCount {
                expected: self.inputs.len(),
                got: values.len(),
            });
        }
        let degrees = self
            .inputs
            .iter()
            .zip(values)
            .map(|(var, &x)| var.degrees(x))
            .collect::<Result<Vec<_>, _>>()?;
        let mut strengths = vec![0.0_f64; self.output.terms().len()];
        for rule in &self.compiled {
            let firing = rule
                .antecedent
                .iter()
                .map(|&(var, term)| degrees[var][term])
                .fold(1.0_f64, f64::min);
            let s = &mut strengths[rule.consequent];
            *s = s.max(firing);
        }
        Ok(strengths)
    }

    /// Every universe, breakpoint and sample point moved by `delta`.
    pub fn translated(&self, delta: f64) -> Result<Self, FuzzyError> {
        Self::new(
            self.name.clone(),
            self.inputs.iter().map(|v| v.translated(delta)).collect(),
            self.output.translated(delta),
            self.rules.clone(),
            self.defuzz_samples,
        )
    }
}

fn compile_rule(
    index: usize,
    rule: &FuzzyRule,
    inputs: &[LinguisticVariable],
    output: &LinguisticVariable,
) -> Result<CompiledRule, FuzzyError> {
    let bad = |reason: String| FuzzyError::BadRule {
        rule: index,
        reason,
    };
    if rule.antecedent.is_empty() {
        return Err(bad("empty antecedent".into()));
    }
    let mut used = HashSet::new();
    let mut antecedent = Vec::with_capacity(rule.antecedent.len());
    for (var_name, term_name) in &rule.antecedent {
        let var = inputs
            .iter()
            .position(|v| v.name() == var_name)
            .ok_or_else(|| bad(format!("unknown input `{var_name}`")))?;
        if !used.insert(var) {
            return Err(bad(format!("input `{var_name}` referenced twice")));
        }
        let term = inputs[var]
            .term_index(term_name)
            .ok_or_else(|| bad(format!("unknown term `{term_name}` of `{var_name}`")))?;
        antecedent.push((var, term));
    }
    let (out_name, out_term) = &rule.consequent;
    if out_name != output.name() {
        return Err(bad(format!(
            "consequent names `{out_name}`, not the output"
        )));
    }
    let consequent = output
        .term_index(out_term)
        .ok_or_else(|| bad(format!("unknown output term `{out_term}`")))?;
    Ok(CompiledRule {
        antecedent,
        consequent,
    })
}

impl TryFrom<FisDocument> for FuzzyInferenceSystem {
    type Error = FuzzyError;

    fn try_from(doc: FisDocument) -> Result<Self, Self::Error> {
        Self::new(
            doc.name,
            doc.inputs,
            doc.output,
            doc.rules,
            doc.defuzz_samples,
        )
    }
}

impl From<FuzzyInferenceSystem> for FisDocument {
    fn from(fis: FuzzyInferenceSystem) -> Self {
        FisDocument {
            name: fis.name,
            inputs: fis.inputs,
            output: fis.output,
            rules: fis.rules,
            defuzz_samples: fis.defuzz_samples,
        }
    }
}

/// Centroid of a sampled fuzzy set over `universe`.
///
/// The samples are taken as uniformly spaced with both endpoints included.
/// The set is read as the piecewise-linear curve through the samples and
/// its first moment and mass are integrated exactly, so a set whose kinks
/// fall on sample points has an exact centroid. An all-zero set
/// defuzzifies to the universe midpoint.
pub fn defuzzify_centroid(aggregate: &[f64], universe: Universe) -> Result<f64, FuzzyError> {
    if aggregate.len() < MIN_DEFUZZ_SAMPLES {
        return Err(FuzzyError::TooFewSamples(aggregate.len()));
    }
    Ok(centroid(aggregate, universe))
}

fn centroid(degrees: &[f64], universe: Universe) -> f64 {
    let n = degrees.len();
    // per segment, with the common factor h dropped:
    //   moment = (2 x0 m0 + x0 m1 + x1 m0 + 2 x1 m1) / 6, mass = (m0 + m1) / 2
    let mut moment = 0.0;
    let mut mass = 0.0;
    let mut x0 = universe.sample_point(0, n);
    for i in 1..n {
        let x1 = universe.sample_point(i, n);
        let (m0, m1) = (degrees[i - 1], degrees[i]);
        moment += (2.0 * x0 * m0 + x0 * m1 + x1 * m0 + 2.0 * x1 * m1) / 3.0;
        mass += m0 + m1;
        x0 = x1;
    }
    if mass <= 0.0 {
        return universe.midpoint();
    }
    universe.clamp(moment / mass)
}
