//! One pass/fail line per acceptance criterion. Run with `--nocapture` to see the lines.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use genus2::binform::{pullback, BinaryForm};
use genus2::bolza::{
    chevalley_weil_of, classify_all, quotient_genus_char, quotient_genus_rh, satisfies_presentation, splitting_type, Classification,
    CurveAction, KleinType, Splitting,
};
use genus2::covers::{AzioniReport, ORIENTATION};
use genus2::matgroup::{CharacterTable, GL2Element};
use genus2::surfaces::{gh_for_order, nodal_union_genus};
use genus2::CycNum;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use serde_json::Value;

const CLASSIFY_BUDGET: Duration = Duration::from_secs(30);
const FIELD_AXIOM_CASES: u32 = 1000;
const ANTI_ACTION_CASES: u32 = 200;
const GH_ORDERS: [usize; 8] = [2, 3, 4, 5, 6, 8, 10, 12];

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn genus2(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_genus2")).args(args).current_dir(root()).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"))
}

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn diff_lines(report: &Value) -> Vec<String> {
    report["diff"]
        .as_array()
        .map(|d| {
            d.iter()
                .map(|e| {
                    format!(
                        "[{}] {}: expected {}, computed {}",
                        e["table"].as_str().unwrap_or(""),
                        e["row"].as_str().unwrap_or(""),
                        e["expected"].as_str().unwrap_or(""),
                        e["computed"].as_str().unwrap_or("")
                    )
                })
                .collect()
        })
        .unwrap_or_default()
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let (code, out) = genus2(&["classify", "--golden", "tables/table3.json", "--golden", "tables/trefolds.json"]);
    let elapsed = start.elapsed();
    let report: Value = serde_json::from_str(&out).expect("classify emits JSON");
    let records = report["result"].as_array().expect("record array");
    let ext = records.iter().filter(|r| r["extendable"] == true).count();
    let genus0 = records.iter().all(|r| r["quotient_genus"] == 0);
    let diffs = diff_lines(&report);
    let pass = code == 0 && records.len() == 21 && ext == 15 && genus0 && diffs.is_empty() && elapsed < CLASSIFY_BUDGET;
    let mut detail = format!(
        "{} couples ({} extendable, {} non-extendable), all quotient genus 0: {}, {} diff entries, {:.2}s (budget {}s)",
        records.len(),
        ext,
        records.len() - ext,
        genus0,
        diffs.len(),
        elapsed.as_secs_f64(),
        CLASSIFY_BUDGET.as_secs()
    );
    for d in diffs {
        detail += &format!("\n      {d}");
    }
    verdict(pass, detail)
}

fn is_split(a: &CurveAction) -> bool {
    matches!(splitting_type(a), Splitting::Splitting(_))
}

fn with_klein<'a>(c: &'a Classification, l: &'a str) -> impl Iterator<Item = &'a CurveAction> + 'a {
    c.extendable.iter().filter(move |a| a.klein.label() == l)
}

fn criterion_2(c: &Classification) -> Verdict {
    let d3_split_beta = BinaryForm::from_ints(&[-2, 0, 0, 5, 0, 0, -2]);
    let mut checks: Vec<(String, bool, bool)> = Vec::new();
    for l in ["D2", "D4", "D6", "A4", "S4"] {
        for a in with_klein(c, l) {
            checks.push((format!("{l} ({})", a.group_label()), is_split(a), false));
        }
    }
    match with_klein(c, "D3").find(|a| d3_split_beta.ratio_to(&a.beta).is_some()) {
        Some(a) => checks.push((format!("D3 ({})", a.group_label()), is_split(a), true)),
        None => checks.push(("D3 (no couple with the split β)".into(), false, true)),
    }
    let pass = checks.iter().all(|(_, got, want)| got == want);
    let detail = checks
        .iter()
        .map(|(l, got, want)| {
            format!("{l}: {} (want {})", if *got { "split" } else { "non-split" }, if *want { "split" } else { "non-split" })
        })
        .collect::<Vec<_>>()
        .join("; ");
    verdict(pass, detail)
}

fn criterion_3(c: &Classification) -> Verdict {
    let relations = ["T^3=U^8=(UT)^2=1", "TU^4=U^4T"];
    let Some(s4) = c.extendable.iter().find(|a| a.klein == KleinType::Octahedral) else {
        return verdict(false, "no S4 couple");
    };
    let order = s4.group.order();
    let has8 = (0..order).any(|i| s4.group.elem_order(i) == 8);
    let sat = satisfies_presentation(&s4.group, &relations).expect("relations parse").is_some();
    let binary = KleinType::Octahedral.binary_group().expect("binary octahedral group");
    let binary_sat = satisfies_presentation(&binary, &relations).expect("relations parse").is_some();
    verdict(
        order == 48 && has8 && sat && !binary_sat,
        format!("order {order}, element of order 8: {has8}, relations hold: {sat}, binary octahedral satisfies them: {binary_sat}"),
    )
}

fn criterion_4(c: &Classification) -> Verdict {
    let mut bad = Vec::new();
    for a in c.couples().into_iter().chain(&c.elliptic_liftings) {
        let ch = quotient_genus_char(a);
        let rh = quotient_genus_rh(a).expect("Riemann-Hurwitz solves");
        if ch != rh {
            bad.push(format!("{} {}: char {ch}, RH {rh}", a.klein, a.group_label()));
        }
    }
    let elliptic: Vec<i64> = c.elliptic_liftings.iter().map(quotient_genus_char).collect();
    let pass = bad.is_empty() && c.couples().len() == 21 && elliptic == vec![1, 1];
    verdict(
        pass,
        format!("{} couples + {} elliptic liftings (genera {:?}), disagreements: {:?}", c.couples().len(), elliptic.len(), elliptic, bad),
    )
}

fn criterion_5() -> Verdict {
    let (code, out) = genus2(&["covers", "--golden", "tables/azioni.json"]);
    let report: Value = serde_json::from_str(&out).expect("covers emits JSON");
    let r: AzioniReport = serde_json::from_value(report["result"].clone()).expect("azioni report");
    let flagged = |row: &genus2::covers::AzioniRow| row.note.is_some();
    let unexpected_missing: Vec<_> = r.missing.iter().filter(|m| !flagged(m)).collect();
    let flagged_itemized = r.missing.iter().any(flagged) && diff_lines(&report).iter().any(|l| l.contains("listed twice"));
    // The computed class standing in for the flagged row is part of the same discrepancy.
    let flagged_groups: Vec<(u32, &str)> = r.missing.iter().filter(|m| flagged(m)).map(|m| (m.genus, m.group.as_str())).collect();
    let unexpected_extra: Vec<_> = r.extra.iter().filter(|e| !flagged_groups.contains(&(e.genus, e.group.as_str()))).collect();
    let pass = unexpected_missing.is_empty()
        && unexpected_extra.is_empty()
        && r.quaternion_genus5_covers == 0
        && r.d4_only_linear
        && flagged_itemized;
    let mut detail = format!(
        "exit {code}, {} realized classes, Q8 covers at g=5: {}, D4 only linear: {}, flagged typo row itemized: {flagged_itemized}, {} unflagged missing, {} unflagged extra",
        r.computed.len(),
        r.quaternion_genus5_covers,
        r.d4_only_linear,
        unexpected_missing.len(),
        unexpected_extra.len()
    );
    for d in diff_lines(&report) {
        detail += &format!("\n      {d}");
    }
    verdict(pass, detail)
}

fn criterion_6(c: &Classification) -> Verdict {
    let mut bad = Vec::new();
    let all: Vec<&CurveAction> = c.couples().into_iter().chain(&c.elliptic_liftings).collect();
    for a in &all {
        let cw = chevalley_weil_of(a, ORIENTATION).expect("Chevalley-Weil integral");
        if cw != a.char_decomp.multiplicities {
            bad.push(format!("{} {}", a.klein, a.group_label()));
        }
    }
    verdict(bad.is_empty() && all.len() >= 21, format!("{} actions, orientation {ORIENTATION}, mismatches: {bad:?}", all.len()))
}

fn criterion_7() -> Verdict {
    let (code, out) = genus2(&["surfaces", "search", "--pg", "2", "--q", "2"]);
    let report: Value = serde_json::from_str(&out).expect("search emits JSON");
    let accepted = report["result"]["accepted"].as_array().expect("accepted list");
    let rejected = report["result"]["rejected"].as_array().expect("rejected list");
    let shape = |o: &Value| {
        format!(
            "{} {}x{} pairing {} unique {}",
            o["pair"]["group"].as_str().unwrap_or(""),
            o["pair"]["left_genus"],
            o["pair"]["right_genus"],
            o["invariants"]["pairing_characters"],
            o["unique_pairing"]
        )
    };
    let found: Vec<String> = accepted.iter().map(shape).collect();
    let expected_family = |o: &Value, g: &str, genus: u64| {
        o["pair"]["group"] == g && o["pair"]["left_genus"] == genus && o["pair"]["right_genus"] == genus && o["unique_pairing"] == true
    };
    let families = accepted.len() == 2
        && accepted.iter().any(|o| expected_family(o, "Z2", 2))
        && accepted.iter().any(|o| expected_family(o, "Z2xZ2", 3));
    let nodal = (nodal_union_genus(2, 2, 2).ok(), nodal_union_genus(3, 3, 4).ok());
    let pass = code == 0 && families && nodal == (Some(5), Some(9));
    let mut detail = format!("{} accepted, {} rejected, nodal genera {:?}", accepted.len(), rejected.len(), nodal);
    for f in found {
        detail += &format!("\n      accepted: {f}");
    }
    verdict(pass, detail)
}

fn criterion_8() -> Verdict {
    let mut bad = Vec::new();
    let mut total = 0;
    for n in GH_ORDERS {
        let rows = gh_for_order(n).expect("some couple of this order");
        for r in rows {
            total += 1;
            let n = n as i64;
            let ok = r.invariants.p_g == 2 && r.invariants.q == 2 && r.g_c1 == n + 1 && r.q_y == n + 3 && r.chi_y == n;
            if !ok {
                bad.push(format!("n={n} {} {}", r.k_label, r.g_label));
            }
        }
    }
    verdict(bad.is_empty(), format!("orders {GH_ORDERS:?}, {total} couples, failures: {bad:?}"))
}

fn arb_cyc() -> impl Strategy<Value = CycNum> {
    (prop::sample::select(vec![1u32, 3, 4, 5, 8, 12, 24]), prop::collection::vec((0i64..24, -4i64..5, 1i64..4), 0..4)).prop_map(
        |(n, ts)| ts.into_iter().fold(CycNum::zero(), |acc, (k, a, b)| &acc + &(&CycNum::root_of_unity(n, k) * &CycNum::from_ratio(a, b))),
    )
}

fn arb_matrix() -> impl Strategy<Value = GL2Element> {
    let entry = (prop::sample::select(vec![1u32, 3, 4, 8]), 0i64..8, -3i64..4)
        .prop_map(|(n, k, c)| &CycNum::root_of_unity(n, k) * &CycNum::from_int(c));
    [entry.clone(), entry.clone(), entry.clone(), entry].prop_map(GL2Element)
}

fn criterion_9(c: &Classification) -> Verdict {
    let mut notes = Vec::new();

    let mut runner = TestRunner::new(Config { cases: FIELD_AXIOM_CASES, failure_persistence: None, ..Config::default() });
    let field = runner.run(&(arb_cyc(), arb_cyc(), arb_cyc()), |(a, b, x)| {
        prop_assert_eq!(&(&a * &b) * &x, &a * &(&b * &x));
        prop_assert_eq!(&(&a + &b) + &x, &a + &(&b + &x));
        prop_assert_eq!(&a * &(&b + &x), &(&a * &b) + &(&a * &x));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        Ok(())
    });
    notes.push(format!("field axioms ({FIELD_AXIOM_CASES}): {}", if field.is_ok() { "ok" } else { "FAILED" }));

    let mut orth_bad = Vec::new();
    for a in c.couples().into_iter().chain(&c.elliptic_liftings) {
        let t: &CharacterTable = &a.table;
        let irr = t.irreducibles();
        for i in 0..irr.len() {
            for j in 0..irr.len() {
                let want = if i == j { CycNum::one() } else { CycNum::zero() };
                if t.inner(&irr[i], &irr[j]) != want {
                    orth_bad.push(a.group_label());
                }
            }
        }
        if t.verify_columns().is_err() {
            orth_bad.push(a.group_label());
        }
    }
    orth_bad.dedup();
    notes.push(format!("orthogonality: {}", if orth_bad.is_empty() { "ok".to_string() } else { format!("FAILED {orth_bad:?}") }));

    let mut runner = TestRunner::new(Config { cases: ANTI_ACTION_CASES, failure_persistence: None, ..Config::default() });
    let sextic = prop::collection::vec(-3i64..4, 7).prop_map(|v| BinaryForm::from_ints(&v));
    let anti = runner.run(&(arb_matrix(), arb_matrix(), sextic), |(g, h, beta)| {
        prop_assert_eq!(pullback(&g, &pullback(&h, &beta)), pullback(&h.mul(&g), &beta));
        Ok(())
    });
    notes.push(format!("anti-action ({ANTI_ACTION_CASES}): {}", if anti.is_ok() { "ok" } else { "FAILED" }));

    let commands: [&[&str]; 9] = [
        &["classify"],
        &["classify", "--format", "table"],
        &["covers"],
        &["covers", "--group", "S3", "--format", "table"],
        &["surfaces", "search", "--pg", "2", "--q", "2"],
        &["surfaces", "gh", "--order", "12"],
        &["surfaces", "nodal-genus", "3", "3", "4"],
        &["classify", "--golden", "tables/table3.json", "--extendable-only"],
        &["covers", "--golden", "tables/azioni.json", "--format", "table"],
    ];
    let unstable: Vec<String> = commands.iter().filter(|a| genus2(a) != genus2(a)).map(|a| a.join(" ")).collect();
    notes.push(format!(
        "determinism ({} commands): {}",
        commands.len(),
        if unstable.is_empty() { "ok".to_string() } else { format!("FAILED {unstable:?}") }
    ));

    verdict(field.is_ok() && orth_bad.is_empty() && anti.is_ok() && unstable.is_empty(), notes.join(", "))
}

#[test]
fn acceptance() {
    let c = classify_all().expect("classification runs");
    let verdicts = [
        criterion_1(),
        criterion_2(&c),
        criterion_3(&c),
        criterion_4(&c),
        criterion_5(),
        criterion_6(&c),
        criterion_7(),
        criterion_8(),
        criterion_9(&c),
    ];
    let mut failed = Vec::new();
    for (i, v) in verdicts.iter().enumerate() {
        println!("criterion {}: {} | {}", i + 1, if v.pass { "PASS" } else { "FAIL" }, v.detail);
        if !v.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
