use std::path::Path;
use std::process::{Command, Output};

use bowtie::report::{Payload, Report};
use serde_json::Value;

fn bowtie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bowtie"))
        .args(args)
        .env_remove("BOWTIE_THREADS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn report(o: &Output) -> Report {
    let text = std::str::from_utf8(&o.stdout).unwrap();
    let r = Report::from_json(text).unwrap_or_else(|e| panic!("{e}: {text}"));
    assert_schema_valid(text);
    // full-fidelity round trip through the typed report
    let again: Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(again, serde_json::from_str::<Value>(text).unwrap());
    r
}

fn assert_schema_valid(text: &str) {
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report-schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let instance: Value = serde_json::from_str(text).unwrap();
    let errors: Vec<String> = validator.iter_errors(&instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn published_schema_is_current() {
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report-schema.json");
    assert_eq!(std::fs::read_to_string(schema_path).unwrap(), Report::schema_json());
}

#[test]
fn gen_detect_spectral_pspectral_exit_zero() {
    let o = bowtie(&["gen", "--family", "split_join", "--family-k", "2", "--s", "4"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let Payload::Graphs { graphs } = report(&o).result else { panic!() };
    assert_eq!((graphs[0].n, graphs[0].m), (6, 9));

    let o = bowtie(&["detect", "--family", "fan", "--family-k", "3", "--k", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let Payload::Graphs { graphs } = report(&o).result else { panic!() };
    let fan = graphs[0].fan.as_ref().unwrap();
    assert_eq!((fan.k, fan.witness.as_ref().unwrap().center), (3, 0));
    assert_eq!(graphs[0].bowties, Some(3));

    let o = bowtie(&["detect", "--family", "balanced_plus", "--n", "8"]);
    let Payload::Graphs { graphs } = report(&o).result else { panic!() };
    assert!(graphs[0].fan.as_ref().unwrap().witness.is_none());

    let o = bowtie(&["spectral", "--family", "balanced_plus", "--n", "7"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let Payload::Graphs { graphs } = report(&o).result else { panic!() };
    let b = graphs[0].lambda.unwrap();
    assert!(b.lower <= b.upper && b.upper - b.lower <= 1e-10);
    assert!((b.midpoint() - 3.848_217_08).abs() < 1e-7);

    let o = bowtie(&["pspectral", "--family", "turan", "--n", "3", "--r", "3", "--p", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let Payload::Graphs { graphs } = report(&o).result else { panic!() };
    assert!((graphs[0].p_spectral.as_ref().unwrap().value - 2.0).abs() < 1e-6);
}

#[test]
fn enumerate_and_search_exit_zero() {
    let o = bowtie(&["enumerate", "--m", "9", "--k", "2", "--threads", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let Payload::Enumeration(e) = report(&o).result else { panic!() };
    assert_eq!(e.argmax.len(), 1);
    assert!(e.unique_argmax_certified());

    let o = bowtie(&["search", "--m", "9", "--restarts", "3", "--seed", "5"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = report(&o);
    assert_eq!(r.seed, 5);
    let Payload::Search { results } = r.result else { panic!() };
    assert_eq!(results[0].m, 9);
}

#[test]
fn verify_exit_codes() {
    let o = bowtie(&["verify", "theorem-n", "--n", "7"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let Payload::Verification(v) = report(&o).result else { panic!() };
    assert!(v.confirmed);
    // the balanced K_{3,4}^+ with its edge in the smaller part
    let want = bowtie_core::canonical_key(&bowtie_core::families::make_balanced_plus(7).unwrap());
    assert_eq!(v.scans[0].argmax[0].canonical_key, want.as_str());

    let o = bowtie(&["verify", "theorem-m", "--m", "9"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));

    let o = bowtie(&["verify", "remark-n6"]);
    assert_eq!(code(&o), 1);
    let Payload::Verification(v) = report(&o).result else { panic!() };
    assert!(!v.confirmed);
    assert_eq!(v.graphs.len(), 2);
    assert!(stderr(&o).contains("contradicted"));

    let o = bowtie(&["verify", "theorem-m", "--m", "7"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn usage_errors_exit_two_and_name_the_flag() {
    for (args, flag) in [
        (&["enumerate", "--n", "40"][..], "--n"),
        (&["enumerate"][..], "--n"),
        (&["verify", "theorem-n"][..], "--n"),
        (&["verify", "no-such-target"][..], "no-such-target"),
        (&["spectral", "--family", "nope"][..], "--family"),
        (&["spectral", "--family", "fan"][..], "--family-k"),
        (&["pspectral", "--graph6", "B_", "--p", "0.5"][..], "--p"),
        (&["search", "--m", "9", "--steps", "0"][..], "--steps"),
        (&["gen", "--family", "fan", "--family-k", "2", "--threads", "0"][..], "--threads"),
        (&["detect", "--graph6", "!!"][..], "--graph6"),
        (&["gen", "--family", "efgg_odd", "--n", "10", "--family-k", "3"][..], "--family"),
    ] {
        let o = bowtie(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).contains(flag), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn budget_exhaustion_is_distinct() {
    let o = bowtie(&["enumerate", "--n", "9", "--k", "2", "--budget", "50"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert!(stderr(&o).contains("budget"));
}

#[test]
fn graph6_files_in_and_out() {
    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("classes.g6");
    let o = bowtie(&["enumerate", "--n", "5", "--format", "graph6", "--out", list.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = std::fs::read_to_string(&list).unwrap();
    assert_eq!(text.lines().count(), 34);

    let out = dir.path().join("detect.csv");
    let o = bowtie(&["detect", "--in", list.to_str().unwrap(), "--format", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let mut rdr = csv::Reader::from_path(&out).unwrap();
    let rows: Vec<bowtie::report::CsvRow> = rdr.deserialize().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 34);
    for (row, line) in rows.iter().zip(text.lines()) {
        let g = bowtie_core::graph6::decode(line).unwrap();
        assert_eq!(row.graph6, line);
        assert_eq!(row.note.starts_with("F2 at"), bowtie_core::detect::oracle_contains_fan(&g, 2));
    }

    let missing = dir.path().join("absent.g6");
    let o = bowtie(&["spectral", "--in", missing.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--in"));
}

#[test]
fn thread_count_does_not_change_results() {
    let strip = |o: &Output| {
        let mut r = report(o);
        r.runtime_ms = 0;
        r.command.args.clear();
        if let Payload::Enumeration(e) = &mut r.result {
            e.runtime_ms = 0;
        }
        r
    };
    let a = bowtie(&["enumerate", "--n", "7", "--k", "2", "--threads", "1"]);
    let b = Command::new(env!("CARGO_BIN_EXE_bowtie"))
        .args(["enumerate", "--n", "7", "--k", "2"])
        .env("BOWTIE_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(code(&b), 0);
    assert_eq!(strip(&a), strip(&b));

    let bad_env = Command::new(env!("CARGO_BIN_EXE_bowtie"))
        .args(["gen", "--family", "fan", "--family-k", "2", "--threads", "2"])
        .env("BOWTIE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&bad_env), 0, "--threads overrides the environment");
}
