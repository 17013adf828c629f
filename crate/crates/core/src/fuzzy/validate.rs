use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::{FuzzyRule, LinguisticVariable};

/// Antecedent as `(variable, term)` pairs.
pub type Antecedent = Vec<(String, String)>;

/// Structural findings about a rule base. Never an error by itself.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub rule_count: usize,
    /// Number of cells in the full input-term grid.
    pub grid_size: usize,
    /// Grid cells no rule covers, as `(variable, term)` lists.
    pub missing: Vec<Antecedent>,
    /// Antecedents that appear in more than one rule, with their rule indices.
    pub duplicates: Vec<(Antecedent, Vec<usize>)>,
    /// Rules that reference unknown variables or terms.
    pub dangling: Vec<(usize, String)>,
    /// Rules whose antecedent does not mention every input exactly once.
    pub partial: Vec<usize>,
}

impl ValidationReport {
    /// Every grid cell is covered by exactly one well-formed rule.
    pub fn is_complete(&self) -> bool {
        self.missing.is_empty() && self.dangling.is_empty() && self.partial.is_empty()
    }

    pub fn is_duplicate_free(&self) -> bool {
        self.duplicates.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.is_complete() && self.is_duplicate_free() && self.rule_count == self.grid_size
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "rules: {} / grid: {} ({})",
            self.rule_count,
            self.grid_size,
            if self.is_valid() {
                "complete"
            } else {
                "INVALID"
            }
        )?;
        let show = |cell: &[(String, String)]| {
            cell.iter()
                .map(|(v, t)| format!("{v}={t}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        for (rule, why) in &self.dangling {
            writeln!(f, "dangling: rule {rule}: {why}")?;
        }
        for rule in &self.partial {
            writeln!(f, "partial antecedent: rule {rule}")?;
        }
        for (cell, rules) in &self.duplicates {
            writeln!(f, "duplicate: {} (rules {:?})", show(cell), rules)?;
        }
        for cell in &self.missing {
            writeln!(f, "missing: {}", show(cell))?;
        }
        Ok(())
    }
}

/// Checks grid completeness, duplicate antecedents and dangling references.
pub fn validate_rules(
    inputs: &[LinguisticVariable],
    output: &LinguisticVariable,
    rules: &[FuzzyRule],
) -> ValidationReport {
    let mut report = ValidationReport {
        rule_count: rules.len(),
        grid_size: inputs.iter().map(|v| v.terms().len()).product(),
        ..Default::default()
    };

    // Grid cell key: term index per input, in input order.
    let mut cells: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (idx, rule) in rules.iter().enumerate() {
        let mut key = vec![usize::MAX; inputs.len()];
        let mut ok = true;
        for (var_name, term_name) in &rule.antecedent {
            let Some(var) = inputs.iter().position(|v| v.name() == var_name) else {
                report
                    .dangling
                    .push((idx, format!("unknown input `{var_name}`")));
                ok = false;
                continue;
            };
            let Some(term) = inputs[var].term_index(term_name) else {
                report
                    .dangling
                    .push((idx, format!("unknown term `{term_name}` of `{var_name}`")));
                ok = false;
                continue;
            };
            if key[var] != usize::MAX {
                report.partial.push(idx);
                ok = false;
                continue;
            }
            key[var] = term;
        }
        let (out_name, out_term) = &rule.consequent;
        if out_name != output.name() {
            report
                .dangling
                .push((idx, format!("consequent names unknown output `{out_name}`")));
            ok = false;
        } else if output.term_index(out_term).is_none() {
            report
                .dangling
                .push((idx, format!("unknown output term `{out_term}`")));
            ok = false;
        }
        if !ok {
            continue;
        }
        if key.contains(&usize::MAX) {
            report.partial.push(idx);
            continue;
        }
        cells.entry(key).or_default().push(idx);
    }
    report.partial.sort_unstable();
    report.partial.dedup();

    let describe = |key: &[usize]| -> Vec<(String, String)> {
        key.iter()
            .zip(inputs)
            .map(|(&t, v)| (v.name().to_string(), v.terms()[t].name.clone()))
            .collect()
    };
    for key in grid_cells(inputs) {
        match cells.get(&key) {
            None => report.missing.push(describe(&key)),
            Some(idx) if idx.len() > 1 => report.duplicates.push((describe(&key), idx.clone())),
            Some(_) => {}
        }
    }
    report
}

/// All term-index combinations, last input varying fastest.
pub(crate) fn grid_cells(inputs: &[LinguisticVariable]) -> Vec<Vec<usize>> {
    let mut cells = vec![Vec::new()];
    for var in inputs {
        cells = cells
            .into_iter()
            .flat_map(|prefix| {
                (0..var.terms().len()).map(move |t| {
                    let mut cell = prefix.clone();
                    cell.push(t);
                    cell
                })
            })
            .collect();
    }
    cells
}
