use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{FuzzyError, MembershipFunction};

/// Closed interval a linguistic variable is defined over.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Universe {
    pub lo: f64,
    pub hi: f64,
}

impl Universe {
    pub fn new(lo: f64, hi: f64) -> Result<Self, FuzzyError> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(FuzzyError::Universe { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn unit() -> Self {
        Self { lo: 0.0, hi: 1.0 }
    }

    pub fn span(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.lo, self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    /// The `i`-th of `n` uniformly spaced points, endpoints included.
    pub fn sample_point(&self, i: usize, n: usize) -> f64 {
        debug_assert!(n >= 2);
        if i + 1 == n {
            return self.hi;
        }
        self.lo + self.span() * (i as f64) / ((n - 1) as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub name: String,
    pub membership: MembershipFunction,
}

/// A named input or output variable with its ordered term set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "VariableDoc", into = "VariableDoc")]
pub struct LinguisticVariable {
    name: String,
    universe: Universe,
    unit: Option<String>,
    terms: Vec<Term>,
}

impl LinguisticVariable {
    pub fn new(
        name: impl Into<String>,
        universe: Universe,
        terms: Vec<Term>,
    ) -> Result<Self, FuzzyError> {
        let name = name.into();
        Universe::new(universe.lo, universe.hi)?;
        if terms.is_empty() {
            return Err(FuzzyError::NoTerms(name));
        }
        let mut seen = HashSet::new();
        for term in &terms {
            if !seen.insert(term.name.as_str()) {
                return Err(FuzzyError::DuplicateTerm {
                    variable: name,
                    term: term.name.clone(),
                });
            }
            let (lo, hi) = term.membership.support();
            if lo < universe.lo || hi > universe.hi {
                return Err(FuzzyError::SupportOutsideUniverse {
                    variable: name,
                    term: term.name.clone(),
                });
            }
        }
        Ok(Self {
            name,
            universe,
            unit: None,
            terms,
        })
    }

    /// Evenly spread, overlapping partition of `universe`.
    ///
    /// Term `i` of `k` peaks at `lo + span * i / (k - 1)` with its feet on the
    /// neighbouring peaks, so degrees sum to one everywhere. The outermost
    /// terms are shouldered trapezoids saturating at the universe ends.
    pub fn uniform_partition(
        name: impl Into<String>,
        universe: Universe,
        term_names: &[&str],
    ) -> Result<Self, FuzzyError> {
        let k = term_names.len();
        let peak = |i: usize| universe.sample_point(i, k);
        let (lo, hi) = (universe.lo, universe.hi);
        let mut terms = Vec::with_capacity(k);
        for (i, term) in term_names.iter().enumerate() {
            let membership = if k == 1 {
                MembershipFunction::trapezoidal(lo, lo, hi, hi)?
            } else if i == 0 {
                MembershipFunction::trapezoidal(lo, lo, lo, peak(1))?
            } else if i + 1 == k {
                MembershipFunction::trapezoidal(peak(i - 1), hi, hi, hi)?
            } else {
                MembershipFunction::triangular(peak(i - 1), peak(i), peak(i + 1))?
            };
            terms.push(Term {
                name: term.to_string(),
                membership,
            });
        }
        Self::new(name, universe, terms)
    }

    pub fn with_unit(mut self, unit: impl Into<String>) -> Self {
        self.unit = Some(unit.into());
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn unit(&self) -> Option<&str> {
        self.unit.as_deref()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn term_index(&self, term: &str) -> Option<usize> {
        self.terms.iter().position(|t| t.name == term)
    }

    /// Degrees of every term at `x`, in term order; `x` saturates at the
    /// universe bounds.
    pub fn degrees(&self, x: f64) -> Result<Vec<f64>, FuzzyError> {
        if !x.is_finite() {
            return Err(FuzzyError::NonFiniteInput {
                variable: self.name.clone(),
                value: x,
            });
        }
        let x = self.universe.clamp(x);
        Ok(self.terms.iter().map(|t| t.membership.degree(x)).collect())
    }

    /// `(term name, degree)` for every term.
    pub fn fuzzify(&self, x: f64) -> Result<Vec<(String, f64)>, FuzzyError> {
        let degrees = self.degrees(x)?;
        Ok(self
            .terms
            .iter()
            .zip(degrees)
            .map(|(t, d)| (t.name.clone(), d))
            .collect())
    }

    /// True when every one of `samples` uniform points has some term with a
    /// positive degree.
    pub fn covers_universe(&self, samples: usize) -> bool {
        (0..samples).all(|i| {
            let x = self.universe.sample_point(i, samples);
            self.terms.iter().any(|t| t.membership.degree(x) > 0.0)
        })
    }

    pub(crate) fn translated(&self, delta: f64) -> Self {
        Self {
            name: self.name.clone(),
            universe: Universe {
                lo: self.universe.lo + delta,
                hi: self.universe.hi + delta,
            },
            unit: self.unit.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    name: t.name.clone(),
                    membership: t.membership.translated(delta),
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VariableDoc {
    name: String,
    universe: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unit: Option<String>,
    terms: Vec<Term>,
}

impl TryFrom<VariableDoc> for LinguisticVariable {
    type Error = FuzzyError;

    fn try_from(doc: VariableDoc) -> Result<Self, Self::Error> {
        let universe = Universe::new(doc.universe[0], doc.universe[1])?;
        let mut var = Self::new(doc.name, universe, doc.terms)?;
        var.unit = doc.unit;
        Ok(var)
    }
}

impl From<LinguisticVariable> for VariableDoc {
    fn from(v: LinguisticVariable) -> Self {
        VariableDoc {
            name: v.name,
            universe: [v.universe.lo, v.universe.hi],
            unit: v.unit,
            terms: v.terms,
        }
    }
}
