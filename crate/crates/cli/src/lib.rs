use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use genus2::bolza::{classify_all, CoupleRecord};
use genus2::covers::{realized_covers, reproduce_azioni, AzioniReport, AzioniTable, CoverClass};
use genus2::golden::{self, DiffEntry, ExtendableTable, LiftingTable};
use genus2::surfaces::{gh_for_order, nodal_union_genus, search_isotrivial, GhInvariants, SearchReport};
use genus2::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DIFF: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "GENUS2_THREADS";

#[derive(Parser, Debug)]
#[command(name = "genus2", version, about = "Group actions on genus-2 curves, covers of elliptic curves, and product-quotient invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify couples (C, G) with C of genus 2 and C/G rational.
    Classify {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Reference file to diff against; may be repeated.
        #[arg(long)]
        golden: Vec<PathBuf>,
        /// Only the extendable couples.
        #[arg(long)]
        extendable_only: bool,
        /// Also list liftings whose quotient is elliptic.
        #[arg(long)]
        include_elliptic: bool,
    },
    /// Galois covers of a rational or elliptic base.
    Covers {
        /// Group label; without it, the full elliptic-base table is reproduced.
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(0..=1))]
        base_genus: u32,
        #[arg(long, default_value_t = 2)]
        min_genus: u32,
        #[arg(long, default_value_t = 5)]
        max_genus: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Reference table for the full reproduction.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Product-quotient surface invariants.
    Surfaces {
        #[command(subcommand)]
        command: SurfacesCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum SurfacesCommand {
    /// Pairs of same-group covers of elliptic curves whose quotient has the given p_g and q.
    Search {
        #[arg(long, default_value_t = 2)]
        pg: i64,
        #[arg(long, default_value_t = 2)]
        q: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Étale cover of a genus-2 curve paired with each classified couple of the given order.
    Gh {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Genus of two curves meeting in delta nodes.
    NodalGenus {
        g1: i64,
        g2: i64,
        delta: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// Envelope of every JSON payload.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report<T> {
    pub command: String,
    pub arguments: BTreeMap<String, String>,
    pub result: T,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diff: Option<Vec<DiffEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoversResult {
    pub group: String,
    pub base_genus: u32,
    pub min_genus: u32,
    pub max_genus: u32,
    pub covers: Vec<CoverClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodalResult {
    pub g1: i64,
    pub g2: i64,
    pub delta: i64,
    pub genus: i64,
}

/// What a command prints and how the process exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub exit: i32,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Parse(_) | Error::UnsupportedGroup(_) => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

/// Runs a parsed command; errors become a message for stderr and a nonzero exit code.
pub fn run(cli: Cli) -> (Outcome, Option<String>) {
    match dispatch(cli.command) {
        Ok(o) => (o, None),
        Err(e) => (Outcome { stdout: String::new(), exit: exit_code(&e) }, Some(format!("error: {e}\n"))),
    }
}

/// Parses and runs a full argument list, the first item being the program name.
pub fn run_args<I, T>(args: I) -> (Outcome, Option<String>)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) if e.exit_code() == 0 => (Outcome { stdout: e.render().to_string(), exit: EXIT_OK }, None),
        Err(e) => (Outcome { stdout: String::new(), exit: EXIT_USAGE }, Some(e.render().to_string())),
    }
}

fn dispatch(cmd: Command) -> genus2::Result<Outcome> {
    match cmd {
        Command::Classify { format, golden, extendable_only, include_elliptic } => {
            cmd_classify(format, &golden, extendable_only, include_elliptic)
        }
        Command::Covers { group, base_genus, min_genus, max_genus, format, golden } => {
            if min_genus > max_genus {
                return Err(Error::Usage(format!("--min-genus {min_genus} exceeds --max-genus {max_genus}")));
            }
            match group {
                Some(g) => cmd_covers_group(&g, base_genus, min_genus, max_genus, format),
                None => cmd_azioni(golden.as_deref(), format),
            }
        }
        Command::Surfaces { command } => match command {
            SurfacesCommand::Search { pg, q, format } => cmd_search(pg, q, format),
            SurfacesCommand::Gh { order, format } => cmd_gh(order, format),
            SurfacesCommand::NodalGenus { g1, g2, delta, format } => cmd_nodal(g1, g2, delta, format),
        },
    }
}

fn to_json<T: Serialize>(r: &Report<T>) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
    s.push('\n');
    s
}

fn args(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Left-aligned plain-text table.
pub fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            width[i] = width[i].max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().enumerate().map(|(i, c)| format!("{c:<w$}", w = width[i])).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    out += &line(width.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(|s| s.as_str()).collect());
    for r in rows {
        out += &line(r.iter().map(|s| s.as_str()).collect());
    }
    out
}

fn render_diff(diff: &[DiffEntry]) -> String {
    if diff.is_empty() {
        return "diff: none\n".into();
    }
    let rows: Vec<Vec<String>> =
        diff.iter().map(|d| vec![d.table.clone(), d.row.clone(), d.expected.clone(), d.computed.clone()]).collect();
    format!("diff: {} entries\n{}", diff.len(), render_table(&["table", "row", "expected", "computed"], &rows))
}

enum Golden {
    Extendable(ExtendableTable),
    Liftings(LiftingTable),
}

fn load_golden(path: &std::path::Path) -> genus2::Result<Golden> {
    let value: serde_json::Value = golden::load(path)?;
    let is_lifting = value["rows"].as_array().and_then(|r| r.first()).is_some_and(|r| r.get("G_s").is_some());
    let parsed = if is_lifting {
        serde_json::from_value(value).map(Golden::Liftings)
    } else {
        serde_json::from_value(value).map(Golden::Extendable)
    };
    parsed.map_err(|e| Error::Usage(format!("malformed reference file {}: {e}", path.display())))
}

pub fn cmd_classify(format: Format, goldens: &[PathBuf], extendable_only: bool, include_elliptic: bool) -> genus2::Result<Outcome> {
    let c = classify_all()?;
    let mut diff: Option<Vec<DiffEntry>> = None;
    for path in goldens {
        let d = match load_golden(path)? {
            Golden::Extendable(t) => golden::diff_extendable(&c.extendable, &t)?,
            Golden::Liftings(t) if !extendable_only => golden::diff_liftings(&c.non_extendable, &t)?,
            Golden::Liftings(_) => return Err(Error::Usage("a lifting table cannot be checked with --extendable-only".into())),
        };
        diff.get_or_insert_with(Vec::new).extend(d);
    }
    let mut records: Vec<CoupleRecord> = c.extendable.iter().map(|a| a.record()).collect();
    if !extendable_only {
        records.extend(c.non_extendable.iter().map(|a| a.record()));
    }
    if include_elliptic {
        records.extend(c.elliptic_liftings.iter().map(|a| a.record()));
    }
    let exit = if diff.as_ref().is_some_and(|d| !d.is_empty()) { EXIT_DIFF } else { EXIT_OK };
    let stdout = match format {
        Format::Json => to_json(&Report {
            command: "classify".into(),
            arguments: args(&[
                ("extendable_only", extendable_only.to_string()),
                ("include_elliptic", include_elliptic.to_string()),
                ("golden", goldens.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(",")),
            ]),
            result: records,
            diff,
        }),
        Format::Table => {
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    vec![
                        r.k_label.clone(),
                        r.g_label.clone(),
                        if r.extendable { "extendable".into() } else { format!("lifting in {}", r.g_s.clone().unwrap_or_default()) },
                        r.quotient_genus.to_string(),
                        r.char_decomp.to_string(),
                        r.beta_text.clone(),
                    ]
                })
                .collect();
            let mut s = format!("{} couples\n", records.len());
            s += &render_table(&["K", "G", "type", "g(C/G)", "differentials", "beta"], &rows);
            if let Some(d) = &diff {
                s += &render_diff(d);
            }
            s
        }
    };
    Ok(Outcome { stdout, exit })
}

pub fn cmd_covers_group(group: &str, base_genus: u32, min_genus: u32, max_genus: u32, format: Format) -> genus2::Result<Outcome> {
    let covers = realized_covers(group, base_genus, min_genus, max_genus)?;
    let result = CoversResult { group: group.into(), base_genus, min_genus, max_genus, covers };
    let stdout = match format {
        Format::Json => to_json(&Report {
            command: "covers".into(),
            arguments: args(&[
                ("group", group.into()),
                ("base_genus", base_genus.to_string()),
                ("min_genus", min_genus.to_string()),
                ("max_genus", max_genus.to_string()),
            ]),
            result,
            diff: None,
        }),
        Format::Table => {
            let rows: Vec<Vec<String>> = result
                .covers
                .iter()
                .map(|c| vec![c.genus.to_string(), c.group.clone(), c.signature.to_string(), c.decomposition.to_string()])
                .collect();
            format!("{} covers\n{}", rows.len(), render_table(&["g", "G", "signature", "differentials"], &rows))
        }
    };
    Ok(Outcome { stdout, exit: EXIT_OK })
}

fn azioni_diff(report: &AzioniReport) -> Vec<DiffEntry> {
    let show = |r: &genus2::covers::AzioniRow| {
        let d: Vec<String> = r.decomposition.iter().map(|(l, m)| if *m == 1 { l.clone() } else { format!("{m}*{l}") }).collect();
        let mut s = format!("g={} {} | {}", r.genus, r.group, d.join(" + "));
        if let Some(n) = &r.note {
            s += &format!(" ({n})");
        }
        s
    };
    let mut out: Vec<DiffEntry> = report
        .missing
        .iter()
        .map(|r| DiffEntry { table: "covers".into(), row: show(r), expected: "realized".into(), computed: "not realized".into() })
        .collect();
    out.extend(report.extra.iter().map(|r| DiffEntry {
        table: "covers".into(),
        row: show(r),
        expected: "no row".into(),
        computed: "realized".into(),
    }));
    if report.quaternion_genus5_covers != 0 {
        out.push(DiffEntry {
            table: "covers".into(),
            row: "g=5 Q8".into(),
            expected: "0 covers".into(),
            computed: format!("{} covers", report.quaternion_genus5_covers),
        });
    }
    if !report.d4_only_linear {
        out.push(DiffEntry {
            table: "covers".into(),
            row: "D4 differentials".into(),
            expected: "only linear characters".into(),
            computed: "the 2-dimensional character occurs".into(),
        });
    }
    out
}

pub fn cmd_azioni(golden_path: Option<&std::path::Path>, format: Format) -> genus2::Result<Outcome> {
    let reference: AzioniTable = match golden_path {
        Some(p) => golden::load(p)?,
        None => AzioniTable { rows: Vec::new() },
    };
    let report = reproduce_azioni(&reference)?;
    let diff = golden_path.map(|_| azioni_diff(&report));
    let exit = if diff.as_ref().is_some_and(|d| !d.is_empty()) { EXIT_DIFF } else { EXIT_OK };
    let stdout = match format {
        Format::Json => to_json(&Report {
            command: "covers".into(),
            arguments: args(&[("golden", golden_path.map(|p| p.display().to_string()).unwrap_or_default())]),
            result: report,
            diff,
        }),
        Format::Table => {
            let rows: Vec<Vec<String>> = report
                .computed
                .iter()
                .map(|r| {
                    vec![r.genus.to_string(), r.group.clone(), {
                        let d: Vec<String> =
                            r.decomposition.iter().map(|(l, m)| if *m == 1 { l.clone() } else { format!("{m}*{l}") }).collect();
                        d.join(" + ")
                    }]
                })
                .collect();
            let mut s = format!("{} classes\n", rows.len());
            s += &render_table(&["g", "G", "nontrivial differentials"], &rows);
            s += &format!("Q8 covers at g=5: {}\nD4 only linear: {}\n", report.quaternion_genus5_covers, report.d4_only_linear);
            if let Some(d) = &diff {
                s += &render_diff(d);
            }
            s
        }
    };
    Ok(Outcome { stdout, exit })
}

pub fn cmd_search(pg: i64, q: i64, format: Format) -> genus2::Result<Outcome> {
    let report: SearchReport = search_isotrivial(pg, q)?;
    let stdout = match format {
        Format::Json => to_json(&Report {
            command: "surfaces search".into(),
            arguments: args(&[("pg", pg.to_string()), ("q", q.to_string())]),
            result: report,
            diff: None,
        }),
        Format::Table => {
            let row = |o: &genus2::surfaces::PairOutcome, status: &str| {
                vec![
                    status.to_string(),
                    o.pair.group.clone(),
                    format!("{}x{}", o.pair.left_genus, o.pair.right_genus),
                    o.pair.left.to_string(),
                    o.pair.right.to_string(),
                    o.invariants.p_g.to_string(),
                    o.invariants.q.to_string(),
                    o.invariants.pairing_characters.join(","),
                ]
            };
            let mut rows: Vec<Vec<String>> = report.accepted.iter().map(|o| row(o, "accepted")).collect();
            rows.extend(report.rejected.iter().map(|o| row(o, "rejected")));
            format!(
                "{} accepted, {} rejected\n{}",
                report.accepted.len(),
                report.rejected.len(),
                render_table(&["status", "G", "genera", "left", "right", "p_g", "q", "pairing"], &rows)
            )
        }
    };
    Ok(Outcome { stdout, exit: EXIT_OK })
}

pub fn cmd_gh(order: usize, format: Format) -> genus2::Result<Outcome> {
    let result: Vec<GhInvariants> = gh_for_order(order)?;
    let stdout = match format {
        Format::Json => {
            to_json(&Report { command: "surfaces gh".into(), arguments: args(&[("order", order.to_string())]), result, diff: None })
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = result
                .iter()
                .map(|r| {
                    vec![
                        r.k_label.clone(),
                        r.g_label.clone(),
                        r.invariants.p_g.to_string(),
                        r.invariants.q.to_string(),
                        r.g_c1.to_string(),
                        r.q_y.to_string(),
                        r.chi_y.to_string(),
                    ]
                })
                .collect();
            render_table(&["K", "G", "p_g", "q", "g(C1)", "q(Y)", "chi(Y)"], &rows)
        }
    };
    Ok(Outcome { stdout, exit: EXIT_OK })
}

pub fn cmd_nodal(g1: i64, g2: i64, delta: i64, format: Format) -> genus2::Result<Outcome> {
    let genus = nodal_union_genus(g1, g2, delta).map_err(|e| Error::Usage(e.to_string()))?;
    let result = NodalResult { g1, g2, delta, genus };
    let stdout = match format {
        Format::Json => to_json(&Report {
            command: "surfaces nodal-genus".into(),
            arguments: args(&[("g1", g1.to_string()), ("g2", g2.to_string()), ("delta", delta.to_string())]),
            result,
            diff: None,
        }),
        Format::Table => format!("{genus}\n"),
    };
    Ok(Outcome { stdout, exit: EXIT_OK })
}

/// Worker-thread cap from the value of [`THREADS_ENV`].
pub fn parse_threads(value: Option<&str>) -> Result<Option<usize>, String> {
    let Some(v) = value else { return Ok(None) };
    match v.parse::<usize>() {
        Ok(n) if n > 0 => Ok(Some(n)),
        _ => Err(format!("{THREADS_ENV} must be a positive integer, got '{v}'")),
    }
}

/// Caps the global worker pool from the environment, if set.
pub fn configure_threads() -> Result<(), String> {
    let value = std::env::var(THREADS_ENV).ok();
    if let Some(n) = parse_threads(value.as_deref())? {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use genus2::surfaces::GhInvariants;
    use serde::de::DeserializeOwned;

    const TABLES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../tables");

    fn call(args: &[&str]) -> Outcome {
        run_args(std::iter::once("genus2").chain(args.iter().copied())).0
    }

    /// Parses a report and checks that re-serializing reproduces the bytes.
    fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(json: &str) -> Report<T> {
        let r: Report<T> = serde_json::from_str(json).unwrap();
        assert_eq!(to_json(&r), json);
        let r2: Report<T> = serde_json::from_str(&to_json(&r)).unwrap();
        assert_eq!(r, r2);
        r
    }

    #[test]
    fn classify_json_round_trips() {
        let o = call(&["classify", "--format", "json"]);
        assert_eq!(o.exit, EXIT_OK);
        let r: Report<Vec<CoupleRecord>> = round_trip(&o.stdout);
        assert_eq!(r.result.len(), 21);
        assert_eq!(r.result.iter().filter(|c| c.extendable).count(), 15);
        assert!(r.diff.is_none());
    }

    #[test]
    fn classify_table_has_21_rows() {
        let o = call(&["classify", "--format", "table"]);
        assert!(o.stdout.starts_with("21 couples\n"));
        assert_eq!(o.stdout.lines().count(), 3 + 21);
    }

    #[test]
    fn classify_with_elliptic_liftings() {
        let r: Report<Vec<CoupleRecord>> = round_trip(&call(&["classify", "--include-elliptic"]).stdout);
        assert_eq!(r.result.len(), 23);
        assert_eq!(r.result.iter().filter(|c| c.quotient_genus == 1).count(), 2);
    }

    #[test]
    fn diff_sets_exit_code() {
        let o = call(&["classify", "--golden", &format!("{TABLES}/table3.json"), "--extendable-only"]);
        let r: Report<Vec<CoupleRecord>> = round_trip(&o.stdout);
        let diff = r.diff.unwrap();
        assert_eq!(o.exit, if diff.is_empty() { EXIT_OK } else { EXIT_DIFF });
        assert_eq!(r.result.len(), 15);
    }

    #[test]
    fn lifting_diffs_are_confined_to_dihedral_rows() {
        let o = call(&["classify", "--golden", &format!("{TABLES}/trefolds.json")]);
        let r: Report<Vec<CoupleRecord>> = round_trip(&o.stdout);
        let diff = r.diff.unwrap();
        assert!(diff.iter().all(|d| d.row.starts_with("D3")), "{diff:?}");
    }

    #[test]
    fn lifting_table_rejected_with_extendable_only() {
        let o = call(&["classify", "--golden", &format!("{TABLES}/trefolds.json"), "--extendable-only"]);
        assert_eq!(o.exit, EXIT_USAGE);
    }

    #[test]
    fn quaternion_has_no_genus_five_cover() {
        let o = call(&["covers", "--group", "Q8", "--base-genus", "1", "--min-genus", "5", "--max-genus", "5"]);
        assert_eq!(o.exit, EXIT_OK);
        assert!(round_trip::<CoversResult>(&o.stdout).result.covers.is_empty());
        let r: Report<CoversResult> = round_trip(&call(&["covers", "--group", "Q8", "--base-genus", "1", "--max-genus", "5"]).stdout);
        assert_eq!(r.result.covers.iter().map(|c| c.genus).collect::<Vec<_>>(), vec![3]);
    }

    #[test]
    fn cyclic_five_gives_genus_five() {
        let r: Report<CoversResult> = round_trip(&call(&["covers", "--group", "Z5", "--base-genus", "1"]).stdout);
        assert_eq!(r.result.covers.len(), 1);
        assert_eq!(r.result.covers[0].genus, 5);
        assert_eq!(r.result.covers[0].decomposition.multiplicities, vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn z2_genus_two_has_one_decomposition_class() {
        let r: Report<CoversResult> = round_trip(&call(&["covers", "--group", "Z2", "--base-genus", "1", "--max-genus", "2"]).stdout);
        assert_eq!(r.result.covers.len(), 1);
        assert_eq!(r.result.covers[0].decomposition.to_string(), "1 + chi");
    }

    #[test]
    fn rational_base_covers() {
        let r: Report<CoversResult> = round_trip(&call(&["covers", "--group", "Z2", "--base-genus", "0", "--max-genus", "3"]).stdout);
        assert_eq!(r.result.covers.iter().map(|c| c.genus).collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn azioni_report_round_trips() {
        let o = call(&["covers", "--golden", &format!("{TABLES}/azioni.json")]);
        let r: Report<AzioniReport> = round_trip(&o.stdout);
        assert_eq!(o.exit, if r.diff.as_ref().unwrap().is_empty() { EXIT_OK } else { EXIT_DIFF });
        assert_eq!(r.result.quaternion_genus5_covers, 0);
        let t = call(&["covers", "--format", "table"]);
        assert!(t.stdout.contains("Q8 covers at g=5: 0"));
    }

    #[test]
    fn surfaces_search_round_trips() {
        let o = call(&["surfaces", "search", "--pg", "2", "--q", "2"]);
        let r: Report<SearchReport> = round_trip(&o.stdout);
        let has = |g: &str, genus: u32| {
            r.result.accepted.iter().any(|o| o.pair.group == g && o.pair.left_genus == genus && o.pair.right_genus == genus)
        };
        assert!(has("Z2", 2) && has("Z2xZ2", 3));
        assert!(r.result.accepted.iter().chain(&r.result.rejected).all(|o| o.invariants.chi == 1 - o.invariants.q + o.invariants.p_g));
    }

    #[test]
    fn gh_order_two() {
        let r: Report<Vec<GhInvariants>> = round_trip(&call(&["surfaces", "gh", "--order", "2"]).stdout);
        assert_eq!(r.result.len(), 1);
        let g = &r.result[0];
        assert_eq!((g.invariants.p_g, g.invariants.q, g.g_c1, g.q_y, g.chi_y), (2, 2, 3, 5, 2));
    }

    #[test]
    fn nodal_genus_examples() {
        for (args, want) in [(["3", "3", "4"], 9), (["2", "2", "2"], 5), (["0", "0", "1"], 0)] {
            let mut a = vec!["surfaces", "nodal-genus"];
            a.extend(args);
            let r: Report<NodalResult> = round_trip(&call(&a).stdout);
            assert_eq!(r.result.genus, want);
        }
        assert_eq!(call(&["surfaces", "nodal-genus", "3", "3", "4", "--format", "table"]).stdout, "9\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["covers", "--group", "A7"]).exit, EXIT_USAGE);
        assert_eq!(call(&["covers", "--base-genus", "2"]).exit, EXIT_USAGE);
        assert_eq!(call(&["covers", "--group", "Z2", "--min-genus", "4", "--max-genus", "3"]).exit, EXIT_USAGE);
        assert_eq!(call(&["surfaces", "gh", "--order", "7"]).exit, EXIT_USAGE);
        assert_eq!(call(&["surfaces", "nodal-genus", "1", "1", "--", "-1"]).exit, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).exit, EXIT_USAGE);
        assert_eq!(call(&["classify", "--golden", "/nonexistent/table.json"]).exit, EXIT_USAGE);
        assert_eq!(call(&["--help"]).exit, EXIT_OK);
    }

    #[test]
    fn thread_values() {
        assert_eq!(parse_threads(None), Ok(None));
        assert_eq!(parse_threads(Some("3")), Ok(Some(3)));
        assert!(parse_threads(Some("0")).is_err());
        assert!(parse_threads(Some("many")).is_err());
    }

    #[test]
    fn table_alignment() {
        let t = render_table(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\n---  --\nxyz  1\n");
    }
}
