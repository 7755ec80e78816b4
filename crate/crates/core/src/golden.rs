//! Reference tables shipped under `tables/` and structured comparison against them.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::binform::BinaryForm;
use crate::bolza::{satisfies_presentation, Classification, CurveAction};
use crate::matgroup::{FiniteMatrixGroup, GL2Element, DEFAULT_BOUND};
use crate::{CycNum, Error, Result};

/// Reads a JSON reference file; malformed input is a usage error.
pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Usage(format!("malformed reference file {}: {e}", path.display())))
}

/// One expected extendable couple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendableRow {
    #[serde(rename = "K_label")]
    pub k_label: String,
    /// Group label, when the group is named.
    #[serde(rename = "G_label", default, skip_serializing_if = "Option::is_none")]
    pub g_label: Option<String>,
    /// Presentation in generators `T`, `U`, when the group is given by relations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<String>>,
    /// Coefficients of `x₀^k x₁^{6−k}`; absent for a generic sextic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendableTable {
    pub rows: Vec<ExtendableRow>,
}

/// One expected non-extendable couple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftingRow {
    #[serde(rename = "K_label")]
    pub k_label: String,
    #[serde(rename = "G_s")]
    pub g_s: String,
    /// Generators as rows of cyclotomic literals.
    pub generators: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftingTable {
    pub rows: Vec<LiftingRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffEntry {
    pub table: String,
    pub row: String,
    pub expected: String,
    pub computed: String,
}

fn parse_beta(coeffs: &[String]) -> Result<BinaryForm> {
    let c: Vec<CycNum> = coeffs.iter().map(|s| s.parse()).collect::<Result<_>>()?;
    if c.len() != 7 {
        return Err(Error::Usage(format!("expected 7 coefficients, got {}", c.len())));
    }
    Ok(BinaryForm::new(c))
}

fn describe_group(row: &ExtendableRow) -> String {
    match (&row.g_label, &row.relations) {
        (Some(l), _) => l.clone(),
        (None, Some(r)) => format!("<T,U | {}>", r.join(", ")),
        (None, None) => "?".into(),
    }
}

fn group_matches(row: &ExtendableRow, action: &CurveAction) -> Result<bool> {
    if let Some(label) = &row.g_label {
        if *label != action.group_label() {
            return Ok(false);
        }
    }
    if let Some(rels) = &row.relations {
        let rels: Vec<&str> = rels.iter().map(|s| s.as_str()).collect();
        if satisfies_presentation(&action.group, &rels)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compares the extendable couples with the reference, matching rows on `K` and `β` up to scale.
pub fn diff_extendable(computed: &[CurveAction], reference: &ExtendableTable) -> Result<Vec<DiffEntry>> {
    let mut diffs = Vec::new();
    let mut used = vec![false; computed.len()];
    for row in &reference.rows {
        let beta = row.beta.as_deref().map(parse_beta).transpose()?;
        let key = format!("{} | {}", row.k_label, beta.as_ref().map_or("generic".to_string(), |b| b.monic().to_string()));
        let found = computed
            .iter()
            .enumerate()
            .find(|(i, a)| !used[*i] && a.klein.label() == row.k_label && beta.as_ref().is_none_or(|b| b.ratio_to(&a.beta).is_some()));
        match found {
            Some((i, a)) => {
                used[i] = true;
                if !group_matches(row, a)? {
                    diffs.push(DiffEntry {
                        table: "extendable".into(),
                        row: key,
                        expected: describe_group(row),
                        computed: a.group_label(),
                    });
                }
            }
            None => diffs.push(DiffEntry {
                table: "extendable".into(),
                row: key,
                expected: describe_group(row),
                computed: "no couple with this K and β".into(),
            }),
        }
    }
    for (i, a) in computed.iter().enumerate() {
        if !used[i] {
            diffs.push(DiffEntry {
                table: "extendable".into(),
                row: format!("{} | {}", a.klein, a.beta.monic()),
                expected: "no row".into(),
                computed: a.group_label(),
            });
        }
    }
    Ok(diffs)
}

fn generator_group(row: &LiftingRow) -> Result<(Vec<GL2Element>, Option<FiniteMatrixGroup>)> {
    let gens: Vec<GL2Element> = row.generators.iter().map(|g| GL2Element::parse_rows(g)).collect::<Result<_>>()?;
    let group = FiniteMatrixGroup::closure(&gens, DEFAULT_BOUND).ok();
    Ok((gens, group))
}

/// Compares the non-extendable couples with the reference, matching on `K` and the generated subgroup.
pub fn diff_liftings(computed: &[CurveAction], reference: &LiftingTable) -> Result<Vec<DiffEntry>> {
    let mut diffs = Vec::new();
    let mut used = vec![false; computed.len()];
    for row in &reference.rows {
        let (gens, group) = generator_group(row)?;
        let key = format!("{} | {}", row.k_label, gens.iter().map(|g| format!("{g:?}")).collect::<Vec<_>>().join(", "));
        let found = computed
            .iter()
            .enumerate()
            .find(|(i, a)| !used[*i] && a.klein.label() == row.k_label && group.as_ref().is_some_and(|g| g.same_elements(&a.group)));
        match found {
            Some((i, a)) => {
                used[i] = true;
                let g_s = a.split_from.clone().unwrap_or_default();
                if g_s != row.g_s {
                    diffs.push(DiffEntry { table: "liftings".into(), row: key, expected: row.g_s.clone(), computed: g_s });
                }
            }
            None => {
                let shape = match &group {
                    Some(g) => format!("{} of order {}", g.identify(), g.order()),
                    None => "an infinite group".into(),
                };
                diffs.push(DiffEntry {
                    table: "liftings".into(),
                    row: key,
                    expected: format!("a lifting of {} inside {}", row.k_label, row.g_s),
                    computed: format!("no computed lifting; the generators span {shape}"),
                });
            }
        }
    }
    for (i, a) in computed.iter().enumerate() {
        if !used[i] {
            diffs.push(DiffEntry {
                table: "liftings".into(),
                row: format!("{} | {}", a.klein, a.generators.iter().map(|g| format!("{g:?}")).collect::<Vec<_>>().join(", ")),
                expected: "no row".into(),
                computed: format!("{} inside {}", a.group_label(), a.split_from.clone().unwrap_or_default()),
            });
        }
    }
    Ok(diffs)
}

/// Both comparisons for a full classification.
pub fn diff_classification(c: &Classification, extendable: &ExtendableTable, liftings: Option<&LiftingTable>) -> Result<Vec<DiffEntry>> {
    let mut d = diff_extendable(&c.extendable, extendable)?;
    if let Some(l) = liftings {
        d.extend(diff_liftings(&c.non_extendable, l)?);
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bolza::classify_all;

    fn row(k: &str, g: &str, beta: &[&str]) -> ExtendableRow {
        ExtendableRow {
            k_label: k.into(),
            g_label: Some(g.into()),
            relations: None,
            beta: Some(beta.iter().map(|s| s.to_string()).collect()),
        }
    }

    #[test]
    fn beta_needs_seven_coefficients() {
        assert!(parse_beta(&["1".into(), "0".into()]).is_err());
        assert!(parse_beta(&["1", "0", "0", "0", "0", "0", "-1"].map(String::from)).is_ok());
    }

    #[test]
    fn matches_up_to_scale_and_reports_label_changes() {
        let c = classify_all().unwrap();
        let z4: Vec<CurveAction> = c.extendable.into_iter().filter(|a| a.klein.label() == "Z4").collect();
        let good = ExtendableTable { rows: vec![row("Z4", "Z8", &["0", "-3", "0", "0", "0", "3", "0"])] };
        assert_eq!(diff_extendable(&z4, &good).unwrap(), vec![]);
        let wrong = ExtendableTable { rows: vec![row("Z4", "Z2xZ4", &["0", "1", "0", "0", "0", "-1", "0"])] };
        let d = diff_extendable(&z4, &wrong).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!((d[0].expected.as_str(), d[0].computed.as_str()), ("Z2xZ4", "Z8"));
    }

    #[test]
    fn unmatched_rows_on_both_sides() {
        let c = classify_all().unwrap();
        let z4: Vec<CurveAction> = c.extendable.into_iter().filter(|a| a.klein.label() == "Z4").collect();
        let other = ExtendableTable { rows: vec![row("Z4", "Z8", &["1", "0", "0", "0", "0", "0", "-1"])] };
        let d = diff_extendable(&z4, &other).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[1].expected, "no row");
    }

    #[test]
    fn relations_checked_by_presentation() {
        let c = classify_all().unwrap();
        let s4: Vec<CurveAction> = c.extendable.into_iter().filter(|a| a.klein.label() == "S4").collect();
        let mut r = row("S4", "", &["0", "-1", "0", "0", "0", "1", "0"]);
        r.g_label = None;
        r.relations = Some(vec!["T^3=U^8=(UT)^2=1".into(), "TU^4=U^4T".into()]);
        assert_eq!(diff_extendable(&s4, &ExtendableTable { rows: vec![r.clone()] }).unwrap(), vec![]);
        r.relations = Some(vec!["T^3=U^4=(UT)^2=1".into()]);
        assert_eq!(diff_extendable(&s4, &ExtendableTable { rows: vec![r] }).unwrap().len(), 1);
    }

    #[test]
    fn malformed_file_is_usage_error() {
        let dir = std::env::temp_dir().join(format!("genus2-golden-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("t.json");
        std::fs::write(&p, "{\"rows\": 1}").unwrap();
        assert!(matches!(load::<ExtendableTable>(&p), Err(Error::Usage(_))));
    }
}
